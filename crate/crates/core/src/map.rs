//! Maps from a finite carrier `{0..n-1}` to itself.
//!
//! Composition follows the usual convention `(f ∘ g)(x) = f(g(x))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An arbitrary map `B -> B`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SelfMap {
    images: Vec<usize>,
}

impl SelfMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(pos) = images.iter().position(|&y| y >= n) {
            return Err(Error::input(format!(
                "map image {} at position {pos} is outside 0..{n}",
                images[pos]
            )));
        }
        Ok(SelfMap { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&y| y < images.len()));
        SelfMap { images }
    }

    pub fn identity(n: usize) -> Self {
        SelfMap {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        SelfMap {
            images: vec![value; n],
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_bijective(&self) -> bool {
        is_permutation(&self.images)
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&y| self.images[y] == y)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &SelfMap) -> Result<SelfMap> {
        if self.len() != other.len() {
            return Err(Error::input(format!(
                "cannot compose maps on {} and {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(SelfMap {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        self.is_bijective().then(|| Permutation(self.clone()))
    }
}

/// A bijective [`SelfMap`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(SelfMap);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let map = SelfMap::new(images)?;
        if !map.is_bijective() {
            return Err(Error::input(format!(
                "{:?} is not a permutation",
                map.images()
            )));
        }
        Ok(Permutation(map))
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&images));
        Permutation(SelfMap { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation(SelfMap::identity(n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.apply(x)
    }

    pub fn images(&self) -> &[usize] {
        self.0.images()
    }

    pub fn as_map(&self) -> &SelfMap {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.images().iter().enumerate() {
            inv[y] = x;
        }
        Permutation(SelfMap { images: inv })
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.0.compose(&other.0).map(Permutation)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0.images
    }
}

pub(crate) fn is_permutation(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    for &y in images {
        if y >= images.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// Inverse of a bijective image array.
pub(crate) fn invert(images: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; images.len()];
    for (x, &y) in images.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_left_unit() {
        let f = SelfMap::new(vec![2, 2, 0]).unwrap();
        assert_eq!(SelfMap::identity(3).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&SelfMap::identity(3)).unwrap(), f);
    }

    #[test]
    fn composition_applies_right_map_first() {
        let f = SelfMap::new(vec![1, 2, 0]).unwrap();
        let g = SelfMap::new(vec![0, 0, 1]).unwrap();
        // f(g(x)): g = [0,0,1] then f
        assert_eq!(f.compose(&g).unwrap().images(), &[1, 1, 2]);
    }

    #[test]
    fn size_mismatch_is_an_input_error() {
        let f = SelfMap::identity(2);
        let g = SelfMap::identity(3);
        assert!(matches!(f.compose(&g), Err(Error::Input(_))));
    }

    #[test]
    fn out_of_range_images_rejected() {
        assert!(SelfMap::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn permutation_inverse() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let id = p.compose(&p.inverse()).unwrap();
        assert_eq!(id, Permutation::identity(4));
    }
}
