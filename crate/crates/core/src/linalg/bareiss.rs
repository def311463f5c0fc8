//! Fraction-free rank over the rationals.
//!
//! This is deliberately a second, independent route to ranks: it clears
//! denominators and runs Bareiss elimination over the integers, sharing no code
//! with the echelon engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Rational;

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{rat, ratio};

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]), 1);
        assert_eq!(rank(&[vec![ratio(1, 2), rat(0)], vec![rat(0), ratio(1, 3)]]), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![rat(0), rat(0)]]), 0);
        assert_eq!(
            rank(&[vec![rat(0), rat(1), rat(1)], vec![rat(0), rat(1), rat(2)], vec![rat(0), rat(2), rat(3)]]),
            2
        );
    }
}
