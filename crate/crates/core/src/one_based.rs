//! Serde helpers that shift 0-based indices to the 1-based external form.

use serde::ser::SerializeSeq;
use serde::Serializer;

pub(crate) fn index<S: Serializer>(i: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*i as u64 + 1)
}

pub(crate) fn indices<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &i in v {
        seq.serialize_element(&(i + 1))?;
    }
    seq.end()
}

pub(crate) fn pair<S: Serializer>(p: &(usize, usize), s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&(p.0 + 1))?;
    seq.serialize_element(&(p.1 + 1))?;
    seq.end()
}
