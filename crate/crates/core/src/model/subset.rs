use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A sorted, duplicate-free subset of `{0, .., n-1}`.
///
/// Empty and full subsets are valid values; operations that need a proper
/// subset check that themselves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    n: usize,
    members: Vec<usize>,
}

impl IndexSubset {
    /// Builds a subset from 0-based members in any order.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!("index {} repeated", w[0] + 1)));
        }
        if let Some(&last) = members.last() {
            if last >= n {
                return Err(Error::InvalidSubset(format!("index {} outside 1..={n}", last + 1)));
            }
        }
        Ok(Self { n, members })
    }

    pub fn from_one_based(n: usize, members: &[usize]) -> Result<Self> {
        if members.contains(&0) {
            return Err(Error::InvalidSubset(format!("index 0 outside 1..={n}")));
        }
        Self::new(n, members.iter().map(|x| x - 1))
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: (0..n).collect(),
        }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Self {
            n: mask.len(),
            members: mask.iter().enumerate().filter_map(|(i, &m)| m.then_some(i)).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Nonempty and not the whole ground set.
    pub fn is_proper(&self) -> bool {
        !self.members.is_empty() && self.members.len() < self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &i in &self.members {
            mask[i] = true;
        }
        mask
    }

    /// Members of the ground set not in this subset, in increasing order.
    pub fn complement(&self) -> Self {
        let mask = self.mask();
        Self {
            n: self.n,
            members: (0..self.n).filter(|&i| !mask[i]).collect(),
        }
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.members.iter().map(|x| x + 1).collect()
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSubset(n={}, {})", self.n, self)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, x) in self.members.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::one_based::indices(&self.members, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_members() {
        assert!(IndexSubset::new(3, [0, 0]).is_err());
        assert!(IndexSubset::new(3, [3]).is_err());
        let s = IndexSubset::new(4, [2, 0]).unwrap();
        assert_eq!(s.members(), &[0, 2]);
        assert_eq!(s.complement().members(), &[1, 3]);
        assert!(s.is_proper());
        assert!(!IndexSubset::full(4).is_proper());
        assert!(!IndexSubset::new(4, []).unwrap().is_proper());
        assert_eq!(s.to_string(), "{1,3}");
    }
}
