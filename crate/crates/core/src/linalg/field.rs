//! Scalar fields: the rationals and simple extensions `Q[x]/(m)`.
//!
//! A [`Field`] value is a context object: it knows how to build and combine
//! its elements. For the rationals the context is a zero-sized marker; for
//! an extension it carries the minimal polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithmeticError;

pub type Rational = BigRational;

/// Arithmetic context for exact scalars.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithmeticError>;
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithmeticError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Human-readable rendering used in reports and error messages.
    fn render(&self, a: &Self::Elem) -> String;
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Shorthand for the rational field context.
pub const Q: Rationals = Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ArithmeticError> {
        if a.is_zero() {
            Err(ArithmeticError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn render(&self, a: &Rational) -> String {
        format_rational(a)
    }
}

/// `p/q` with `q` omitted when it is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Element of `Q[x]/(m)`: coefficients lowest degree first, always of length `deg m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem(pub Vec<Rational>);

/// The simple extension `Q[x]/(m)` for a monic polynomial `m` of degree at least one.
///
/// Irreducibility of `m` is not checked up front; inverting a zero divisor
/// reports the common factor that was found instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleExtension {
    modulus: Arc<Vec<Rational>>,
}

impl SimpleExtension {
    /// `coeffs` are lowest-degree first and must describe a monic polynomial.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, ArithmeticError> {
        let trimmed = poly::trim(coeffs);
        if trimmed.len() < 2 {
            return Err(ArithmeticError::BadModulus("degree must be at least 1".into()));
        }
        if !trimmed.last().is_some_and(One::is_one) {
            return Err(ArithmeticError::BadModulus("minimal polynomial must be monic".into()));
        }
        Ok(SimpleExtension { modulus: Arc::new(trimmed) })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, ArithmeticError> {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `Q(i)`, presented as `Q[x]/(x^2 + 1)`.
    pub fn gaussian() -> Self {
        Self::from_ints(&[1, 0, 1]).expect("x^2+1 is monic")
    }

    /// `Q(sqrt 2)`, presented as `Q[x]/(x^2 - 2)`.
    pub fn sqrt2() -> Self {
        Self::from_ints(&[-2, 0, 1]).expect("x^2-2 is monic")
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    /// The class of `x`.
    pub fn generator(&self) -> ExtElem {
        self.element(&[rat(0), rat(1)])
    }

    /// Reduce an arbitrary coefficient list modulo `m`.
    pub fn element(&self, coeffs: &[Rational]) -> ExtElem {
        let reduced = poly::rem(coeffs, &self.modulus);
        self.pad(reduced)
    }

    fn pad(&self, mut c: Vec<Rational>) -> ExtElem {
        c.resize(self.degree(), Rational::zero());
        ExtElem(c)
    }
}

impl Field for SimpleExtension {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![Rational::zero(); self.degree()])
    }
    fn one(&self) -> ExtElem {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = Rational::one();
        ExtElem(c)
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        self.element(&poly::mul(&a.0, &b.0))
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|x| -x).collect())
    }
    fn inv(&self, a: &ExtElem) -> Result<ExtElem, ArithmeticError> {
        if self.is_zero(a) {
            return Err(ArithmeticError::DivisionByZero);
        }
        // Extended Euclid: s*a + t*m = g.
        let (g, s, _) = poly::ext_gcd(&a.0, &self.modulus);
        if g.len() > 1 {
            return Err(ArithmeticError::ZeroDivisor { element: self.render(a), factor: poly::render(&g) });
        }
        let scale = g[0].recip();
        let s: Vec<Rational> = s.iter().map(|c| c * &scale).collect();
        Ok(self.element(&s))
    }
    fn from_rational(&self, q: &Rational) -> ExtElem {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = q.clone();
        ExtElem(c)
    }
    fn render(&self, a: &ExtElem) -> String {
        poly::render(&poly::trim(a.0.clone()))
    }
}

/// Dense univariate polynomials over `Q`, lowest degree first.
pub mod poly {
    use super::*;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(out)
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let zero = Rational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(a: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let d = trim(d.to_vec());
        assert!(!d.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        let lead = d.last().unwrap().clone();
        let dd = d.len() - 1;
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        while r.len() >= d.len() {
            let shift = r.len() - d.len();
            let c = r.last().unwrap() / &lead;
            for (i, dc) in d.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[Rational], d: &[Rational]) -> Vec<Rational> {
        div_rem(a, d).1
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`.
    pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    pub fn render(p: &[Rational]) -> String {
        let terms: Vec<String> = p
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let coeff = format_rational(c);
                match i {
                    0 => coeff,
                    _ => {
                        let var = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                        if c.is_one() {
                            var
                        } else if (-c).is_one() {
                            format!("-{var}")
                        } else if c.is_negative() || !c.denom().is_one() {
                            format!("({coeff})*{var}")
                        } else {
                            format!("{coeff}*{var}")
                        }
                    }
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
