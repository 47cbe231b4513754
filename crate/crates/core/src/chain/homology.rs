use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::complex::{ChainComplex, Coefficients};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, TruncSimplicialSet};

/// `H_n ≅ ℤ^betti ⊕ ⊕ ℤ/t` (or the analogous decomposition over `ℤ/m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub degree: usize,
    pub coefficients: Coefficients,
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// False at the truncation edge, where boundaries are unknown and `betti`
    /// is only the rank of the cycle group (an upper bound).
    pub valid: bool,
    /// Cycle representatives: torsion generators first, then free ones.
    /// Empty for non-integer coefficients.
    pub generators: Vec<Vec<BigInt>>,
    coords: Option<Coordinates>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Coordinates {
    /// Kernel coordinates of a cycle: rows `r..` of `V_n⁻¹`.
    kernel: IntMatrix,
    /// `U'` from the Smith form of the boundary image inside the kernel.
    u: IntMatrix,
    /// Invariant factors of that image, ones included.
    factors: Vec<BigInt>,
    skip: usize,
}

impl HomologyPresentation {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the presentation.
    pub fn rank(&self) -> usize {
        self.torsion.len() + self.betti
    }

    /// Coordinates of the class of a cycle `z` in the generator basis;
    /// torsion coordinates are reduced to `0..t`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::Mismatch("coordinates need integer coefficients".into()))?;
        let w = c.kernel.mul_vec(z)?;
        let y = c.u.mul_vec(&w)?;
        Ok(y.into_iter()
            .enumerate()
            .skip(c.skip)
            .map(|(i, v)| match c.factors.get(i) {
                Some(d) => v.mod_floor(d),
                None => v,
            })
            .collect())
    }

    pub fn report(&self) -> Value {
        json!({
            "degree": self.degree,
            "betti": self.betti,
            "torsion": self.torsion.iter().map(big_json).collect::<Vec<_>>(),
            "valid": self.valid,
        })
    }
}

pub(crate) fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Homology in degree `n`. Degrees up to `L-1` are exact; degree `L` comes
/// back with `valid = false`.
pub fn homology(c: &ChainComplex, n: usize) -> Result<HomologyPresentation> {
    match c.coefficients {
        Coefficients::Integers => integral(c, n),
        Coefficients::Mod(m) => modular(c, n, m),
    }
}

/// All degrees `0..=L-1`.
pub fn homology_all(c: &ChainComplex) -> Result<Vec<HomologyPresentation>> {
    (0..c.level).map(|n| homology(c, n)).collect()
}

/// Basis of `Z_n` as columns.
pub fn cycle_basis(c: &ChainComplex, n: usize) -> Result<IntMatrix> {
    if n > c.level {
        return Err(Error::DegreeOutOfRange { degree: n, max: c.level });
    }
    let f = smith_normal_form(c.boundary(n));
    Ok(f.v.cols_from(f.rank()))
}

fn integral(c: &ChainComplex, n: usize) -> Result<HomologyPresentation> {
    if n > c.level {
        return Err(Error::DegreeOutOfRange { degree: n, max: c.level });
    }
    let f = smith_normal_form(c.boundary(n));
    let r = f.rank();
    let kernel_basis = f.v.cols_from(r);
    let kernel = f.v_inv.rows_from(r);
    let k = kernel_basis.cols();
    if n == c.level {
        return Ok(HomologyPresentation {
            degree: n,
            coefficients: c.coefficients,
            betti: k,
            torsion: Vec::new(),
            valid: false,
            generators: (0..k).map(|j| kernel_basis.column(j)).collect(),
            coords: Some(Coordinates { kernel, u: IntMatrix::identity(k), factors: Vec::new(), skip: 0 }),
        });
    }
    let image = kernel.mul(c.boundary(n + 1))?;
    let g = smith_normal_form(&image);
    let factors = g.diagonal.clone();
    let skip = factors.iter().take_while(|d| d.is_one()).count();
    let torsion: Vec<BigInt> = factors[skip..].to_vec();
    let reps = kernel_basis.mul(&g.u_inv)?;
    let generators = (skip..k).map(|j| reps.column(j)).collect();
    Ok(HomologyPresentation {
        degree: n,
        coefficients: c.coefficients,
        betti: k - factors.len(),
        torsion,
        valid: true,
        generators,
        coords: Some(Coordinates { kernel, u: g.u, factors, skip }),
    })
}

/// Universal coefficients: `H_n(C; ℤ/m) ≅ H_n(C) ⊗ ℤ/m ⊕ Tor(H_{n-1}(C), ℤ/m)`.
fn modular(c: &ChainComplex, n: usize, m: u64) -> Result<HomologyPresentation> {
    let zc = c.with_coefficients(Coefficients::Integers);
    let here = integral(&zc, n)?;
    let m = BigInt::from(m);
    let mut orders: Vec<BigInt> = Vec::new();
    orders.extend(here.torsion.iter().map(|t| t.gcd(&m)));
    orders.extend(std::iter::repeat_n(m.clone(), here.betti));
    if n > 0 {
        let below = integral(&zc, n - 1)?;
        orders.extend(below.torsion.iter().map(|t| t.gcd(&m)));
    }
    orders.retain(|d| !d.is_one());
    let k = orders.len();
    let factors = smith_normal_form(&IntMatrix::diagonal(k, k, &orders)).diagonal;
    let betti = factors.iter().filter(|d| **d == m).count();
    let torsion = factors.into_iter().filter(|d| !d.is_one() && *d != m).collect();
    Ok(HomologyPresentation {
        degree: n,
        coefficients: c.coefficients,
        betti,
        torsion,
        valid: here.valid,
        generators: Vec::new(),
        coords: None,
    })
}

/// A family of matrices `C_n(X) → C_n(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub matrices: Vec<IntMatrix>,
}

impl ChainMap {
    /// The chain map of a levelwise simplex map given as index tables.
    pub fn from_tables(target_ranks: &[usize], tables: &[Vec<u32>]) -> Self {
        let matrices = tables
            .iter()
            .enumerate()
            .map(|(n, t)| {
                let mut m = IntMatrix::zeros(target_ranks[n], t.len());
                for (j, &x) in t.iter().enumerate() {
                    m.set(x as usize, j, BigInt::one());
                }
                m
            })
            .collect();
        ChainMap { matrices }
    }

    pub fn degree(&self, n: usize) -> &IntMatrix {
        &self.matrices[n]
    }

    /// `G ∘ F`, degreewise.
    pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        let matrices = g.matrices.iter().zip(&f.matrices).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
        Ok(ChainMap { matrices })
    }

    /// The square `∂ F_n = F_{n-1} ∂` in every degree.
    pub fn commutes(&self, source: &ChainComplex, target: &ChainComplex) -> Result<bool> {
        for n in 1..self.matrices.len().min(source.level + 1) {
            let lhs = target.boundary(n).mul(&self.matrices[n])?;
            let rhs = self.matrices[n - 1].mul(source.boundary(n))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Chain(f)` for a simplicial map.
pub fn chain_map(f: &SimplicialMap) -> ChainMap {
    ChainMap::from_tables(&f.target().counts(), f.components())
}

/// Matrix of `H_n(f)` in the generator bases of the two presentations.
pub fn induced_homology_map(
    map: &ChainMap,
    target_complex: &ChainComplex,
    source: &HomologyPresentation,
    target: &HomologyPresentation,
) -> Result<IntMatrix> {
    let n = source.degree;
    if target.degree != n {
        return Err(Error::Mismatch(format!("degrees {n} and {}", target.degree)));
    }
    let mut columns = Vec::with_capacity(source.generators.len());
    for z in &source.generators {
        let y = map.degree(n).mul_vec(z)?;
        if target_complex.boundary(n).mul_vec(&y)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle(n));
        }
        columns.push(target.coordinates(&y)?);
    }
    IntMatrix::from_columns(target.rank(), &columns)
}

/// Outcome of an integer linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Vec<BigInt>),
    Unsolvable(String),
}

/// Finds an integer `x` with `∂x = b`, or explains why none exists.
pub fn solve_boundary(d: &IntMatrix, b: &[BigInt]) -> Result<Solve> {
    if b.len() != d.rows() {
        return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), d.rows())));
    }
    let f = smith_normal_form(d);
    let c = f.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); d.cols()];
    for (i, ci) in c.iter().enumerate() {
        match f.diagonal.get(i) {
            Some(di) => {
                let (q, r) = ci.div_rem(di);
                if !r.is_zero() {
                    return Ok(Solve::Unsolvable(format!(
                        "invariant factor {di} does not divide transformed coordinate {ci} (row {i})"
                    )));
                }
                y[i] = q;
            }
            None if !ci.is_zero() => {
                return Ok(Solve::Unsolvable(format!(
                    "transformed coordinate {ci} in zero row {i} (outside the image)"
                )));
            }
            None => {}
        }
    }
    let x = f.v.mul_vec(&y)?;
    debug_assert_eq!(d.mul_vec(&x)?, b.to_vec());
    Ok(Solve::Solution(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractReport {
    pub degree: usize,
    pub source_nonzero: bool,
    pub target_zero: bool,
    pub composite_is_identity: bool,
    /// `H_n(X) ≠ 0` and `H(g)∘H(f) ≠ id`: `(f, g)` is not a retraction.
    pub obstructed: bool,
    /// `H(g)∘H(f) = id` on a nonzero group that factors through zero.
    pub violation: bool,
}

/// Looks at `H_n(g)∘H_n(f)` for `f: X → Y`, `g: Y → X`.
pub fn check_retract_obstruction(
    f: &SimplicialMap,
    g: &SimplicialMap,
    n: usize,
    reduced: bool,
) -> Result<RetractReport> {
    let x: &TruncSimplicialSet = f.source();
    let y: &TruncSimplicialSet = f.target();
    let cx = ChainComplex::from_sset(x, Coefficients::Integers, reduced)?;
    let cy = ChainComplex::from_sset(y, Coefficients::Integers, reduced)?;
    let hx = homology(&cx, n)?;
    let hy = homology(&cy, n)?;
    let hf = induced_homology_map(&chain_map(f), &cy, &hx, &hy)?;
    let hg = induced_homology_map(&chain_map(g), &cx, &hy, &hx)?;
    let composite = hg.mul(&hf)?;
    let reduced_comp = reduce_rows(&composite, &hx);
    let composite_is_identity = reduced_comp == IntMatrix::identity(hx.rank());
    let source_nonzero = !hx.is_zero();
    let target_zero = hy.is_zero();
    Ok(RetractReport {
        degree: n,
        source_nonzero,
        target_zero,
        composite_is_identity,
        obstructed: source_nonzero && !composite_is_identity,
        violation: composite_is_identity && source_nonzero && target_zero,
    })
}

/// Reduces the torsion rows of a homology-map matrix modulo their orders.
pub fn reduce_rows(m: &IntMatrix, target: &HomologyPresentation) -> IntMatrix {
    let mut out = m.clone();
    for (i, t) in target.torsion.iter().enumerate() {
        for j in 0..out.cols() {
            let v = out.get(i, j).mod_floor(t);
            out.set(i, j, v);
        }
    }
    out
}

/// Integer homology of a simplicial set in degrees `0..L`.
pub fn sset_homology(s: &TruncSimplicialSet, coefficients: Coefficients, reduced: bool) -> Result<Vec<HomologyPresentation>> {
    homology_all(&ChainComplex::from_sset(s, coefficients, reduced)?)
}

pub fn bettis(h: &[HomologyPresentation]) -> Vec<usize> {
    h.iter().map(|p| p.betti).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn circle_homology() {
        let b = TruncSimplicialSet::boundary(2, 2);
        let h = sset_homology(&b, Coefficients::Integers, false).unwrap();
        assert_eq!(bettis(&h), vec![1, 1]);
        assert!(h.iter().all(|p| p.torsion.is_empty() && p.valid));
        let r = sset_homology(&b, Coefficients::Integers, true).unwrap();
        assert_eq!(bettis(&r), vec![0, 1]);
    }

    #[test]
    fn point_reduced_vanishes() {
        let p = TruncSimplicialSet::point(3);
        let h = sset_homology(&p, Coefficients::Integers, true).unwrap();
        assert!(h.iter().all(HomologyPresentation::is_zero));
    }

    #[test]
    fn edge_degree_is_flagged() {
        let p = TruncSimplicialSet::standard(1, 2);
        let c = ChainComplex::from_sset(&p, Coefficients::Integers, false).unwrap();
        assert!(!homology(&c, 2).unwrap().valid);
        assert!(matches!(homology(&c, 3), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn solve_examples() {
        let d1 = TruncSimplicialSet::standard(1, 1).without_degeneracies();
        let c = ChainComplex::from_sset(&d1, Coefficients::Integers, false).unwrap();
        // vertices "0","1"; edges "00","01","11"
        let b = z(&[-1, 1]);
        match solve_boundary(c.boundary(1), &b).unwrap() {
            Solve::Solution(x) => assert_eq!(c.boundary(1).mul_vec(&x).unwrap(), b),
            other => panic!("{other:?}"),
        }
        assert!(matches!(solve_boundary(c.boundary(1), &z(&[1, 0])).unwrap(), Solve::Unsolvable(_)));
        let two = IntMatrix::from_rows(&[vec![2i64]]).unwrap();
        assert!(matches!(solve_boundary(&two, &z(&[3])).unwrap(), Solve::Unsolvable(_)));
        assert!(solve_boundary(&two, &z(&[3, 1])).is_err());
    }

    #[test]
    fn identity_induces_identity() {
        let b = Arc::new(TruncSimplicialSet::boundary(2, 2));
        let c = ChainComplex::from_sset(&b, Coefficients::Integers, false).unwrap();
        let id = SimplicialMap::identity(b.clone());
        for n in 0..2 {
            let h = homology(&c, n).unwrap();
            let m = induced_homology_map(&chain_map(&id), &c, &h, &h).unwrap();
            assert_eq!(m, IntMatrix::identity(h.rank()));
        }
    }

    #[test]
    fn modular_coefficients() {
        let b = TruncSimplicialSet::boundary(2, 2);
        let c = ChainComplex::from_sset(&b, Coefficients::Mod(2), false).unwrap();
        assert_eq!(homology(&c, 1).unwrap().betti, 1);
    }
}
