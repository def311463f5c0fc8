//! Finite abstract simplicial complexes on vertex labels `0, 1, …`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

/// A set of nonempty simplices closed under taking faces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    simplices: BTreeSet<Simplex>,
}

fn normalize(s: &[usize]) -> Result<Simplex> {
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.is_empty() || v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::precondition(format!("{s:?} is not a simplex")));
    }
    Ok(v)
}

fn faces_into(s: &[usize], out: &mut BTreeSet<Simplex>) {
    if !out.insert(s.to_vec()) || s.len() == 1 {
        return;
    }
    for k in 0..s.len() {
        let mut f = s.to_vec();
        f.remove(k);
        faces_into(&f, out);
    }
}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The complex generated by the given simplices and all their faces.
    pub fn from_maximal<S: AsRef<[usize]>>(maximal: &[S]) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        for s in maximal {
            faces_into(&normalize(s.as_ref())?, &mut simplices);
        }
        Ok(Complex { simplices })
    }

    /// An explicit simplex list, which must already be closed under faces.
    pub fn from_simplices<S: AsRef<[usize]>>(list: &[S]) -> Result<Self> {
        let simplices: BTreeSet<Simplex> = list.iter().map(|s| normalize(s.as_ref())).collect::<Result<_>>()?;
        let closed = Self::from_maximal(&simplices.iter().cloned().collect::<Vec<_>>())?;
        if closed.simplices != simplices {
            let missing = closed.simplices.difference(&simplices).next().unwrap();
            return Err(Error::precondition(format!("face {missing:?} is missing")));
        }
        Ok(Complex { simplices })
    }

    pub fn point() -> Self {
        Self::from_maximal(&[[0]]).unwrap()
    }

    /// The full `n`-simplex on `0..=n`.
    pub fn simplex(n: usize) -> Self {
        Self::from_maximal(&[(0..=n).collect::<Vec<_>>()]).unwrap()
    }

    /// The boundary of the `n`-simplex, `n ≥ 1`.
    pub fn simplex_boundary(n: usize) -> Self {
        let top: Vec<usize> = (0..=n).collect();
        let faces: Vec<Vec<usize>> = (0..=n).map(|k| top.iter().copied().filter(|&v| v != k).collect()).collect();
        Self::from_maximal(&faces).unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    /// The `k`-simplices in lexicographic order.
    pub fn of_dim(&self, k: usize) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.len() == k + 1).cloned().collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.of_dim(0).into_iter().map(|s| s[0]).collect()
    }

    pub fn maximal(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| !self.simplices.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
            .cloned()
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    pub fn skeleton(&self, j: usize) -> Complex {
        Complex { simplices: self.simplices.iter().filter(|s| s.len() <= j + 1).cloned().collect() }
    }

    pub fn union(&self, other: &Complex) -> Complex {
        Complex { simplices: self.simplices.union(&other.simplices).cloned().collect() }
    }

    pub fn intersection(&self, other: &Complex) -> Complex {
        Complex { simplices: self.simplices.intersection(&other.simplices).cloned().collect() }
    }

    /// Euler characteristic `Σ (−1)^k #k-simplices`.
    pub fn euler(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faces_are_generated() {
        let t = Complex::simplex(2);
        assert_eq!(t.len(), 7);
        assert_eq!(t.dim(), Some(2));
        assert_eq!(Complex::simplex_boundary(2).len(), 6);
        assert_eq!(Complex::simplex_boundary(3).of_dim(2).len(), 4);
        assert_eq!(Complex::simplex_boundary(3).euler(), 2);
    }

    #[test]
    fn explicit_lists_must_be_closed() {
        assert!(Complex::from_simplices(&[vec![0], vec![1], vec![0, 1]]).is_ok());
        let e = Complex::from_simplices(&[vec![0], vec![0, 1]]).unwrap_err();
        assert!(e.to_string().contains("[1]"), "{e}");
        assert!(Complex::from_maximal(&[[0, 0]]).is_err());
    }

    #[test]
    fn lattice_operations() {
        let a = Complex::from_maximal(&[[0, 1]]).unwrap();
        let b = Complex::from_maximal(&[[1, 2]]).unwrap();
        assert_eq!(a.intersection(&b), Complex::from_maximal(&[[1]]).unwrap());
        assert_eq!(a.union(&b).maximal(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(Complex::simplex(2).skeleton(1), Complex::simplex_boundary(2));
    }
}
