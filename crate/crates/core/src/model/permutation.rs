use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection on `{0, .., n-1}`; `images[i]` is the image of `i`.
///
/// In a QAP objective `sum A[p(i)][p(j)] B[i][j]` the permutation maps the
/// *positions* of `B` to the *facilities* (rows/columns) of `A`. For the
/// feedback arc set QAP this means `p(i)` is the vertex placed at layout
/// position `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image {} outside 1..={n}", x + 1)));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {} repeated", x + 1)));
            }
        }
        Ok(Self { images })
    }

    /// Validates 1-based images, as written in documents and files.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&x| x == 0) {
            return Err(Error::InvalidPermutation(format!(
                "image {bad} outside 1..={}",
                images.len()
            )));
        }
        Self::new(images.iter().map(|x| x - 1).collect())
    }

    pub(crate) fn from_slice_unchecked(images: &[usize]) -> Self {
        Self {
            images: images.to_vec(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// The `k`-th cyclic shift: `p^[1](i) = p(i+1)` for `i < n-1` and
    /// `p^[1](n-1) = p(0)`; `p^[k]` applies that rotation `k` times.
    pub fn cyclic_shift(&self, k: usize) -> Result<Self> {
        let n = self.images.len();
        if k >= n {
            return Err(Error::Domain(format!("shift {k} outside 0..={}", n - 1)));
        }
        let mut images = self.images.clone();
        images.rotate_left(k);
        Ok(Self { images })
    }
}

impl std::ops::Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.images[i]
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, x) in self.images.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str(")")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::one_based::indices(&self.images, s)
    }
}
