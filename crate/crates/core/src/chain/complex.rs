use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::simplicial::TruncSimplicialSet;

/// Coefficient group: the integers or a cyclic group `ℤ/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Integers,
    Mod(u64),
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Z" {
            return Ok(Coefficients::Integers);
        }
        let m = s
            .strip_prefix("Zmod:")
            .and_then(|m| m.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("coefficients must be Z or Zmod:m, got {s:?}")))?;
        if m < 2 {
            return Err(Error::Parse(format!("Zmod:{m} needs m >= 2")));
        }
        Ok(Coefficients::Mod(m))
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Zmod:{m}"),
        }
    }
}

/// Free chain complex `C_0 ← C_1 ← … ← C_L` on the simplices of a truncated
/// simplicial set.
///
/// `boundaries[n]` is `∂_n: C_n → C_{n-1}` for `n ≥ 1`. `boundaries[0]` is the
/// augmentation `C_0 → ℤ` (one row of ones) when `reduced`, and a matrix with
/// no rows otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub level: usize,
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Unnormalized chains: every simplex is a generator.
    pub fn from_sset(s: &TruncSimplicialSet, coefficients: Coefficients, reduced: bool) -> Result<Self> {
        let l = s.level();
        let ranks = s.counts();
        let mut boundaries = vec![augmentation(ranks[0], reduced)];
        for n in 1..=l {
            let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for sigma in 0..ranks[n] {
                for i in 0..=n {
                    let f = s.face(n, i, sigma as u32) as usize;
                    d.add_at(f, sigma, &sign(i));
                }
            }
            boundaries.push(d);
        }
        let c = ChainComplex { level: l, coefficients, reduced, ranks, boundaries };
        c.check_boundary_squared()?;
        Ok(c)
    }

    /// Normalized chains: generators are the nondegenerate simplices and
    /// degenerate faces are dropped.
    pub fn normalized(s: &TruncSimplicialSet, coefficients: Coefficients, reduced: bool) -> Result<Self> {
        if !s.has_degeneracies() {
            return Err(Error::DegeneraciesMissing);
        }
        let l = s.level();
        let nd = s.nondegenerate();
        let pos: Vec<Vec<Option<usize>>> = (0..=l)
            .map(|n| {
                let mut p = vec![None; s.count(n)];
                for (k, &x) in nd[n].iter().enumerate() {
                    p[x as usize] = Some(k);
                }
                p
            })
            .collect();
        let ranks: Vec<usize> = nd.iter().map(Vec::len).collect();
        let mut boundaries = vec![augmentation(ranks[0], reduced)];
        for n in 1..=l {
            let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for (col, &sigma) in nd[n].iter().enumerate() {
                for i in 0..=n {
                    if let Some(row) = pos[n - 1][s.face(n, i, sigma) as usize] {
                        d.add_at(row, col, &sign(i));
                    }
                }
            }
            boundaries.push(d);
        }
        let c = ChainComplex { level: l, coefficients, reduced, ranks, boundaries };
        c.check_boundary_squared()?;
        Ok(c)
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    /// `∂_{n-1} ∂_n = 0` for every `n`, including the augmentation.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for n in 1..=self.level {
            if !self.boundaries[n - 1].mul(&self.boundaries[n])?.is_zero() {
                return Err(Error::Internal(format!("boundary squared is nonzero in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn with_coefficients(&self, coefficients: Coefficients) -> Self {
        ChainComplex { coefficients, ..self.clone() }
    }
}

fn augmentation(rank0: usize, reduced: bool) -> IntMatrix {
    if reduced {
        let mut a = IntMatrix::zeros(1, rank0);
        for j in 0..rank0 {
            a.set(0, j, BigInt::one());
        }
        a
    } else {
        IntMatrix::zeros(0, rank0)
    }
}

pub(crate) fn sign(i: usize) -> BigInt {
    if i.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_boundaries_alternate() {
        let p = TruncSimplicialSet::point(4);
        let c = ChainComplex::from_sset(&p, Coefficients::Integers, false).unwrap();
        let entries: Vec<BigInt> = (1..=4).map(|n| c.boundary(n).get(0, 0).clone()).collect();
        assert_eq!(entries, vec![0, 1, 0, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn circle_incidence() {
        let b = TruncSimplicialSet::boundary(2, 1);
        let c = ChainComplex::normalized(&b, Coefficients::Integers, false).unwrap();
        let d = c.boundary(1);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        for j in 0..3 {
            let col = d.column(j);
            assert_eq!(col.iter().filter(|x| **x == BigInt::one()).count(), 1);
            assert_eq!(col.iter().filter(|x| **x == -BigInt::one()).count(), 1);
        }
    }

    #[test]
    fn empty_complex() {
        let e = TruncSimplicialSet::empty(3);
        let c = ChainComplex::from_sset(&e, Coefficients::Integers, true).unwrap();
        assert!(c.ranks.iter().all(|&r| r == 0));
    }

    #[test]
    fn normalized_interval() {
        let d1 = TruncSimplicialSet::standard(1, 3);
        let c = ChainComplex::normalized(&d1, Coefficients::Integers, false).unwrap();
        assert_eq!(c.ranks, vec![2, 1, 0, 0]);
        assert_eq!(
            ChainComplex::normalized(&d1.without_degeneracies(), Coefficients::Integers, false),
            Err(Error::DegeneraciesMissing)
        );
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("Zmod:6".parse::<Coefficients>().unwrap(), Coefficients::Mod(6));
        assert!("Zmod:1".parse::<Coefficients>().is_err());
        assert!("Q".parse::<Coefficients>().is_err());
    }
}
