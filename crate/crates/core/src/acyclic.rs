//! The natural chain homotopy `P` built by acyclic models on `F(n)×F(1)`, and
//! the homotopy invariance of homology it implies.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::chain::{chain_map, homology, induced_homology_map, reduce_rows, solve_boundary, ChainComplex, ChainMap};
use crate::chain::{Coefficients, HomologyPresentation, IntMatrix, Solve};
use crate::cosimplicial::{check_axiom_1_2, Cosimplicial};
use crate::error::{Error, Result};
use crate::fincat::{pairing, product_of_morphisms, to_terminal, Category, Product};
use crate::homotopy::{is_homotopy, lambda_maps, Homotopy};
use crate::nerve::{nerve, nerve_map, Nerve};

/// A sparse chain: `(simplex index, coefficient)`, sorted by index.
pub type Chain = Vec<(u32, BigInt)>;

fn sparse(v: &[BigInt]) -> Chain {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u32, c.clone())).collect()
}

fn dense(c: &Chain, len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    for (k, x) in c {
        v[*k as usize] += x;
    }
    v
}

/// The model data: for each `n ≤ N_max`, the product `F(n)×F(1)`, its nerve,
/// and `β_n ∈ Chain(F(n)×F(1))_{n+1}`.
pub struct PrismFamily<C: Category> {
    pub n_max: usize,
    pub models: Vec<Product<C::Obj, C::Mor>>,
    pub model_nerves: Vec<Nerve<C>>,
    pub betas: Vec<Chain>,
    /// `∂Q_n(Id) = 0`, checked before each solve (`None` in degree 0).
    pub q_cycle: Vec<Option<bool>>,
}

impl<C: Category> Clone for PrismFamily<C> {
    fn clone(&self) -> Self {
        PrismFamily {
            n_max: self.n_max,
            models: self.models.clone(),
            model_nerves: self.model_nerves.clone(),
            betas: self.betas.clone(),
            q_cycle: self.q_cycle.clone(),
        }
    }
}

/// `Chain(φ)` on a sparse chain of degree `n`, for `φ: A → B` and nerves of A, B.
fn push<C: Category>(c: &C, phi: &C::Mor, from: &Nerve<C>, to: &Nerve<C>, n: usize, chain: &Chain) -> Result<Chain> {
    let mut out = vec![BigInt::zero(); to.simplices[n].len()];
    for (k, x) in chain {
        let m = c.compose(phi, from.simplex(n, *k))?;
        let j = to
            .index_of(n, &m)
            .ok_or_else(|| Error::Internal(format!("{} missing from the target nerve", c.mor_label(&m))))?;
        out[j as usize] += x;
    }
    Ok(sparse(&out))
}

fn basis(k: u32, coeff: i64) -> Chain {
    vec![(k, BigInt::from(coeff))]
}

fn add_into(acc: &mut [BigInt], chain: &Chain, sign: i64) {
    for (k, x) in chain {
        acc[*k as usize] += x * sign;
    }
}

fn index<C: Category>(c: &C, nv: &Nerve<C>, n: usize, m: &C::Mor) -> Result<u32> {
    nv.index_of(n, m).ok_or_else(|| Error::Internal(format!("{} missing from level {n} of the nerve", c.mor_label(m))))
}

/// Builds `β_0, …, β_{N_max}` by induction:
/// `β_0 = −[⟨!, id⟩]`, and for `n ≥ 1`, `∂β_n = Q_n(Id)` with
/// `Q_n(Id) = λ_1 − λ_0 − Σ_i (−1)^i Chain(F(d_{n,i}) × Id)(β_{n−1})`.
pub fn build_p<C: Category>(c: &C, f: &Cosimplicial<C>, n_max: usize) -> Result<PrismFamily<C>> {
    let l = f.level();
    if l == 0 || n_max > l - 1 {
        return Err(Error::LevelMismatch(format!("N_max = {n_max} needs truncation level at least {}", n_max + 1)));
    }
    let (a1, a2) = check_axiom_1_2(c, f)?;
    for a in [&a1, &a2] {
        if !a.passed() {
            return Err(Error::AxiomPrecondition(format!("{}: {}", a.axiom, a.detail)));
        }
    }
    let mut models = Vec::new();
    let mut model_nerves: Vec<Nerve<C>> = Vec::new();
    let mut betas: Vec<Chain> = Vec::new();
    let mut q_cycle = Vec::new();
    let id1 = c.identity(f.cell(1));
    for n in 0..=n_max {
        let lam = lambda_maps(c, f, f.cell(n))?;
        let nv = nerve(c, f, &lam.product.apex)?;
        if n == 0 {
            let bang = to_terminal(c, f.cell(1), f.cell(0))?;
            let s = pairing(c, &lam.product, &bang, &id1)?;
            betas.push(basis(index(c, &nv, 1, &s)?, -1));
            q_cycle.push(None);
        } else {
            let mut q = vec![BigInt::zero(); nv.simplices[n].len()];
            add_into(&mut q, &basis(index(c, &nv, n, &lam.l1)?, 1), 1);
            add_into(&mut q, &basis(index(c, &nv, n, &lam.l0)?, 1), -1);
            for i in 0..=n {
                let cross = product_of_morphisms(c, &models[n - 1], &lam.product, f.face(n, i), &id1)?;
                let image = push(c, &cross, &model_nerves[n - 1], &nv, n, &betas[n - 1])?;
                add_into(&mut q, &image, if i % 2 == 0 { -1 } else { 1 });
            }
            let cx = ChainComplex::from_sset(&nv.sset, Coefficients::Integers, false)?;
            let is_cycle = cx.boundary(n).mul_vec(&q)?.iter().all(Zero::is_zero);
            q_cycle.push(Some(is_cycle));
            if !is_cycle {
                return Err(Error::Internal(format!("Q_{n}(Id) is not a cycle")));
            }
            match solve_boundary(cx.boundary(n + 1), &q)? {
                Solve::Solution(b) => betas.push(sparse(&b)),
                Solve::Unsolvable(reason) => return Err(Error::Unsolvable { degree: n, reason }),
            }
        }
        models.push(lam.product.clone());
        model_nerves.push(nv);
    }
    Ok(PrismFamily { n_max, models, model_nerves, betas, q_cycle })
}

impl<C: Category> PrismFamily<C> {
    /// `P^X_n(σ) = Chain(σ × Id)(β_n)` as a chain in the nerve of `X×F(1)`.
    pub fn apply(
        &self,
        c: &C,
        n: usize,
        sigma: &C::Mor,
        target: &Product<C::Obj, C::Mor>,
        target_nerve: &Nerve<C>,
    ) -> Result<Chain> {
        let id1 = c.identity(&self.models[n].b);
        let cross = product_of_morphisms(c, &self.models[n], target, sigma, &id1)?;
        push(c, &cross, &self.model_nerves[n], target_nerve, n + 1, &self.betas[n])
    }

    /// `P^X_n` as a matrix `Chain(X)_n → Chain(X×F(1))_{n+1}`.
    pub fn matrix(
        &self,
        c: &C,
        n: usize,
        nx: &Nerve<C>,
        target: &Product<C::Obj, C::Mor>,
        np: &Nerve<C>,
    ) -> Result<IntMatrix> {
        let rows = np.simplices[n + 1].len();
        let columns = nx.simplices[n]
            .iter()
            .map(|s| Ok(dense(&self.apply(c, n, s, target, np)?, rows)))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_columns(rows, &columns)
    }

    pub fn to_json(&self, c: &C) -> Value {
        let betas: Vec<Value> = self
            .betas
            .iter()
            .enumerate()
            .map(|(n, b)| {
                let nv = &self.model_nerves[n];
                let terms: Vec<Value> = b
                    .iter()
                    .map(|(k, x)| json!({ "simplex": nv.sset.name(n + 1, *k), "coefficient": x.to_string() }))
                    .collect();
                json!({ "degree": n, "model": c.obj_label(&self.models[n].apex), "beta": terms })
            })
            .collect();
        json!({ "n_max": self.n_max, "q_cycle": self.q_cycle, "betas": betas })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismDegree {
    pub degree: usize,
    /// `Chain(λ_1) − Chain(λ_0) = ∂P_n + P_{n−1}∂`.
    pub cross: bool,
    /// `P^X_n(σ∘ρ) = Chain(σ × Id) P^{F(n)}_n(ρ)` for all σ, ρ.
    pub natural: bool,
    pub generators: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismReport {
    pub object: String,
    pub degrees: Vec<PrismDegree>,
    pub passed: bool,
}

pub fn verify_prism<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    p: &PrismFamily<C>,
    x: &C::Obj,
    up_to: usize,
) -> Result<PrismReport> {
    let up_to = up_to.min(p.n_max);
    let lam = lambda_maps(c, f, x)?;
    let nx = nerve(c, f, x)?;
    let np = nerve(c, f, &lam.product.apex)?;
    let cx = ChainComplex::from_sset(&nx.sset, Coefficients::Integers, false)?;
    let cp = ChainComplex::from_sset(&np.sset, Coefficients::Integers, false)?;
    let l0 = chain_map(&nerve_map(c, &nx, &np, &lam.l0)?);
    let l1 = chain_map(&nerve_map(c, &nx, &np, &lam.l1)?);
    let budget = Budget::new(c.bound());
    let mut mats: Vec<IntMatrix> = Vec::new();
    let mut degrees = Vec::new();
    for n in 0..=up_to {
        mats.push(p.matrix(c, n, &nx, &lam.product, &np)?);
        let lhs = l1.degree(n).sub(l0.degree(n))?;
        let mut rhs = cp.boundary(n + 1).mul(&mats[n])?;
        if n > 0 {
            rhs = rhs.add(&mats[n - 1].mul(cx.boundary(n))?)?;
        }
        let cross = lhs == rhs;
        let mut witness = (!cross).then(|| format!("cross identity fails in degree {n}"));

        let lam_n = &p.models[n];
        let own = &p.model_nerves[n];
        let mut natural = true;
        let endos = c.hom(f.cell(n), f.cell(n))?;
        'outer: for sigma in &nx.simplices[n] {
            let id1 = c.identity(f.cell(1));
            let cross_sigma = product_of_morphisms(c, lam_n, &lam.product, sigma, &id1)?;
            for rho in &endos {
                budget.tick(1)?;
                let lhs = p.apply(c, n, &c.compose(sigma, rho)?, &lam.product, &np)?;
                let inner = p.apply(c, n, rho, lam_n, own)?;
                let rhs = push(c, &cross_sigma, own, &np, n + 1, &inner)?;
                if lhs != rhs {
                    natural = false;
                    witness.get_or_insert_with(|| {
                        format!("naturality fails at σ = {}, ρ = {}", c.mor_label(sigma), c.mor_label(rho))
                    });
                    break 'outer;
                }
            }
        }
        degrees.push(PrismDegree { degree: n, cross, natural, generators: nx.simplices[n].len(), witness });
    }
    let passed = degrees.iter().all(|d| d.cross && d.natural);
    Ok(PrismReport { object: c.obj_label(x), degrees, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceDegree {
    pub degree: usize,
    /// `Chain(g) − Chain(f) = ∂(Chain(H)P_n) + (Chain(H)P_{n−1})∂`.
    pub boundary_identity: bool,
    pub equal_induced_maps: bool,
    pub induced: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub f: String,
    pub g: String,
    pub h: String,
    /// `Chain(f) = Chain(H)∘Chain(λ_0)` and `Chain(g) = Chain(H)∘Chain(λ_1)`.
    pub factorizations: bool,
    pub degrees: Vec<InvarianceDegree>,
    pub passed: bool,
}

/// Everything in the invariance check that depends only on `X` and `Y`:
/// nerves, chain complexes, homology, `Chain(λ_j)` and the prism matrices on `X`.
pub struct InvarianceContext<C: Category> {
    pub source: C::Obj,
    pub target: C::Obj,
    nx: Nerve<C>,
    ny: Nerve<C>,
    np: Nerve<C>,
    cx: ChainComplex,
    cy: ChainComplex,
    l0: ChainMap,
    l1: ChainMap,
    prisms: Vec<IntMatrix>,
    homology: Vec<(HomologyPresentation, HomologyPresentation)>,
}

impl<C: Category> InvarianceContext<C> {
    /// Degrees `0..=min(N_max, L−1)`.
    pub fn new(c: &C, f: &Cosimplicial<C>, p: &PrismFamily<C>, x: &C::Obj, y: &C::Obj) -> Result<Self> {
        let lam = lambda_maps(c, f, x)?;
        let (nx, ny, np) = (nerve(c, f, x)?, nerve(c, f, y)?, nerve(c, f, &lam.product.apex)?);
        let cx = ChainComplex::from_sset(&nx.sset, Coefficients::Integers, false)?;
        let cy = ChainComplex::from_sset(&ny.sset, Coefficients::Integers, false)?;
        let l0 = chain_map(&nerve_map(c, &nx, &np, &lam.l0)?);
        let l1 = chain_map(&nerve_map(c, &nx, &np, &lam.l1)?);
        let top = p.n_max.min(f.level() - 1);
        let prisms = (0..=top).map(|n| p.matrix(c, n, &nx, &lam.product, &np)).collect::<Result<_>>()?;
        let homology = (0..=top).map(|n| Ok((homology(&cx, n)?, homology(&cy, n)?))).collect::<Result<_>>()?;
        Ok(InvarianceContext { source: x.clone(), target: y.clone(), nx, ny, np, cx, cy, l0, l1, prisms, homology })
    }

    /// Rough count of matrix entries touched by one [`check`](Self::check).
    pub fn cost(&self) -> u64 {
        (0..=self.prisms.len())
            .map(|n| (self.np.sset.count(n) * (self.nx.sset.count(n) + self.ny.sset.count(n))) as u64)
            .sum()
    }

    pub fn check(&self, c: &C, f: &Cosimplicial<C>, hom: &Homotopy<C::Obj, C::Mor>) -> Result<InvarianceReport> {
        let ok = is_homotopy(c, f, &hom.h, &hom.f, &hom.g).unwrap_or(false);
        if !ok {
            return Err(Error::PrerequisiteMissing(format!(
                "{} is not a homotopy {} ⇒ {}",
                c.mor_label(&hom.h),
                c.mor_label(&hom.f),
                c.mor_label(&hom.g)
            )));
        }
        if c.source(&hom.f) != self.source || c.target(&hom.f) != self.target {
            return Err(Error::Mismatch(format!(
                "homotopy between {} and {} checked against hom({}, {})",
                c.mor_label(&hom.f),
                c.mor_label(&hom.g),
                c.obj_label(&self.source),
                c.obj_label(&self.target)
            )));
        }
        let (nx, ny, np) = (&self.nx, &self.ny, &self.np);
        let ch = chain_map(&nerve_map(c, np, ny, &hom.h)?);
        let cf = chain_map(&nerve_map(c, nx, ny, &hom.f)?);
        let cg = chain_map(&nerve_map(c, nx, ny, &hom.g)?);
        let via0 = ChainMap::compose(&ch, &self.l0)?;
        let via1 = ChainMap::compose(&ch, &self.l1)?;
        let factorizations = via0 == cf && via1 == cg;
        let mut hp: Vec<IntMatrix> = Vec::new();
        let mut degrees = Vec::new();
        for (n, (hx, hy)) in self.homology.iter().enumerate() {
            hp.push(ch.degree(n + 1).mul(&self.prisms[n])?);
            let lhs = cg.degree(n).sub(cf.degree(n))?;
            let mut rhs = self.cy.boundary(n + 1).mul(&hp[n])?;
            if n > 0 {
                rhs = rhs.add(&hp[n - 1].mul(self.cx.boundary(n))?)?;
            }
            let mf = reduce_rows(&induced_homology_map(&cf, &self.cy, hx, hy)?, hy);
            let mg = reduce_rows(&induced_homology_map(&cg, &self.cy, hx, hy)?, hy);
            degrees.push(InvarianceDegree {
                degree: n,
                boundary_identity: lhs == rhs,
                equal_induced_maps: mf == mg,
                induced: mf.to_text(),
            });
        }
        let passed = factorizations && degrees.iter().all(|d| d.boundary_identity && d.equal_induced_maps);
        Ok(InvarianceReport {
            f: c.mor_label(&hom.f),
            g: c.mor_label(&hom.g),
            h: c.mor_label(&hom.h),
            factorizations,
            degrees,
            passed,
        })
    }
}

/// Homology maps of `f` and `g` agree in every degree up to `min(N_max, L−1)`.
pub fn verify_homotopy_invariance<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    p: &PrismFamily<C>,
    hom: &Homotopy<C::Obj, C::Mor>,
) -> Result<InvarianceReport> {
    if !is_homotopy(c, f, &hom.h, &hom.f, &hom.g).unwrap_or(false) {
        return Err(Error::PrerequisiteMissing(format!(
            "{} is not a homotopy {} ⇒ {}",
            c.mor_label(&hom.h),
            c.mor_label(&hom.f),
            c.mor_label(&hom.g)
        )));
    }
    InvarianceContext::new(c, f, p, &c.source(&hom.f), &c.target(&hom.f))?.check(c, f, hom)
}
