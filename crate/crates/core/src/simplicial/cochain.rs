//! Bounded cochain complexes `C^0 → C^1 → …` over ℚ and their cohomology.

use crate::error::{Error, Result};
use crate::linalg::echelon::sparse_from_dense;
use crate::linalg::{Echelon, Matrix, Rational, Rationals, SubspaceBasis, Q};

/// `d[i] : C^i → C^{i+1}` has shape `dims[i+1] × dims[i]`; `d.len() + 1 == dims.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<Matrix<Rationals>>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, d: Vec<Matrix<Rationals>>) -> Result<Self> {
        if dims.is_empty() && d.is_empty() {
            return Ok(CochainComplex { dims, d });
        }
        if d.len() + 1 != dims.len() {
            return Err(Error::Dimension(format!("{} differentials for {} degrees", d.len(), dims.len())));
        }
        for (i, m) in d.iter().enumerate() {
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Dimension(format!(
                    "d^{i} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[i + 1], dims[i])
                )));
            }
        }
        Ok(CochainComplex { dims, d })
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    /// `d^i`, the zero map outside the stored range.
    pub fn differential(&self, i: usize) -> Matrix<Rationals> {
        self.d.get(i).cloned().unwrap_or_else(|| Matrix::zeros(Q, self.dim(i + 1), self.dim(i)))
    }

    /// `d^{i+1} d^i = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.d.windows(2).all(|w| w[1].mul(&w[0]).map(|m| m.is_zero()).unwrap_or(false))
    }

    pub fn cohomology(&self, i: usize) -> Result<Cohomology> {
        let cocycles = self.differential(i).kernel()?;
        let boundaries = match i.checked_sub(1) {
            Some(j) => self.differential(j).image()?,
            None => SubspaceBasis::span(Q, self.dim(0), Vec::new())?,
        };
        Cohomology::new(i, cocycles, boundaries)
    }

    pub fn betti(&self) -> Result<Vec<usize>> {
        (0..self.dims.len()).map(|i| self.cohomology(i).map(|h| h.dim())).collect()
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }
}

/// `H^i = Z^i / B^i` with representatives completing an echelon basis of `B^i` to one of `Z^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cohomology {
    pub degree: usize,
    pub cocycles: SubspaceBasis<Rationals>,
    pub boundaries: SubspaceBasis<Rationals>,
    pub reps: Vec<Vec<Rational>>,
    /// Columns: the representatives followed by the boundary basis.
    frame: Matrix<Rationals>,
}

impl Cohomology {
    fn new(degree: usize, cocycles: SubspaceBasis<Rationals>, boundaries: SubspaceBasis<Rationals>) -> Result<Self> {
        let n = cocycles.ambient_dim();
        let mut ech = Echelon::new(Q, n);
        for r in boundaries.rows() {
            ech.insert(r.clone())?;
        }
        let mut reps = Vec::new();
        for v in cocycles.vectors() {
            if ech.insert(sparse_from_dense(&Q, &v))? {
                reps.push(v);
            }
        }
        let cols: Vec<Vec<Rational>> = reps.iter().cloned().chain(boundaries.vectors()).collect();
        let frame = Matrix::from_fn(Q, n, cols.len(), |r, c| cols[c][r].clone());
        Ok(Cohomology { degree, cocycles, boundaries, reps, frame })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle in the basis of representatives.
    pub fn class_of(&self, z: &[Rational]) -> Result<Vec<Rational>> {
        if !self.cocycles.contains(z) {
            return Err(Error::consistency(format!("vector in degree {} is not a cocycle", self.degree)));
        }
        let x = self.frame.solve(z)?.ok_or_else(|| Error::consistency("cocycle outside the cohomology frame"))?;
        Ok(x[..self.dim()].to_vec())
    }
}

/// The map `H(src) → H(dst)` induced by a cochain map in one degree.
pub fn induced_map(src: &Cohomology, dst: &Cohomology, chain: &Matrix<Rationals>) -> Result<Matrix<Rationals>> {
    let mut out = Matrix::zeros(Q, dst.dim(), src.dim());
    for (c, z) in src.reps.iter().enumerate() {
        for (r, x) in dst.class_of(&chain.apply(z)?)?.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_complex() {
        // C^0 = Q^2 → C^1 = Q, d = [-1, 1]
        let c = CochainComplex::new(vec![2, 1], vec![Matrix::from_ints(&[&[-1, 1]])]).unwrap();
        assert!(c.is_complex());
        assert_eq!(c.betti().unwrap(), vec![1, 0]);
        assert_eq!(c.euler(), 1);
    }

    #[test]
    fn classes_modulo_boundaries() {
        let c =
            CochainComplex::new(vec![1, 2, 0], vec![Matrix::from_ints(&[&[1], &[1]]), Matrix::zeros(Q, 0, 2)]).unwrap();
        let h = c.cohomology(1).unwrap();
        assert_eq!(h.dim(), 1);
        let a = h.class_of(&[crate::linalg::field::rat(1), crate::linalg::field::rat(0)]).unwrap();
        let b = h.class_of(&[crate::linalg::field::rat(0), crate::linalg::field::rat(-1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shapes_are_checked() {
        assert!(CochainComplex::new(vec![2, 1], vec![Matrix::from_ints(&[&[1]])]).is_err());
    }
}
