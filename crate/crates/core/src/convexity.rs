//! Cone families on nerves, their verification and search, the chain
//! homotopy they induce, and the convexity axiom.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::chain::homology::cycle_basis;
use crate::chain::{homology, ChainComplex, Coefficients, IntMatrix};
use crate::cosimplicial::{AxiomResult, AxiomStatus, Cosimplicial};
use crate::error::{Error, Result};
use crate::fincat::{pairing, Category, Product};
use crate::nerve::{nerve, Nerve};
use crate::simplicial::TruncSimplicialSet;

/// `Cone_n: X_n → X_{n+1}` for `0 ≤ n < L`, as index tables into the nerve,
/// plus the apex vertex used in degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeFamily {
    pub apex: Option<u32>,
    pub maps: Vec<Vec<u32>>,
}

impl ConeFamily {
    pub fn cone(&self, n: usize, sigma: u32) -> u32 {
        self.maps[n][sigma as usize]
    }

    pub fn to_file(&self, object: &str, x: &TruncSimplicialSet) -> ConeFile {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(n, t)| {
                let m = t
                    .iter()
                    .enumerate()
                    .map(|(s, &c)| (x.name(n, s as u32).to_string(), x.name(n + 1, c).to_string()))
                    .collect();
                (n.to_string(), m)
            })
            .collect();
        ConeFile { object: object.to_string(), maps }
    }

    pub fn from_file(file: &ConeFile, x: &TruncSimplicialSet) -> Result<Self> {
        let l = x.level();
        let mut maps = Vec::with_capacity(l);
        for n in 0..l {
            let m = file
                .maps
                .get(&n.to_string())
                .ok_or_else(|| Error::Parse(format!("field maps: no entry for level {n}")))?;
            let t: Vec<u32> = x
                .names(n)
                .iter()
                .map(|s| {
                    let v = m.get(s).ok_or_else(|| Error::Parse(format!("field maps.{n}: no value for {s}")))?;
                    x.index_of(n + 1, v).ok_or_else(|| Error::Parse(format!("field maps.{n}: unknown simplex {v}")))
                })
                .collect::<Result<_>>()?;
            maps.push(t);
        }
        let apex = match (l, x.count(0)) {
            (_, 0) => None,
            (0, _) => Some(0),
            _ => Some(x.face(1, 1, maps[0][0])),
        };
        Ok(ConeFamily { apex, maps })
    }
}

/// On-disk form of a cone family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub object: String,
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

/// Checks, for every simplex below the top level:
/// `d_0 Cone_n σ = σ`, `d_{i+1} Cone_n σ = Cone_{n-1} d_i σ`, and in degree 0
/// `d_1 Cone_0 σ = apex`.
pub fn verify_cone(x: &TruncSimplicialSet, cone: &ConeFamily) -> Result<ConeReport> {
    let l = x.level();
    if cone.maps.len() != l {
        return Err(Error::LevelMismatch(format!("cone has {} levels, nerve has {l}", cone.maps.len())));
    }
    for (n, t) in cone.maps.iter().enumerate() {
        if t.len() != x.count(n) || t.iter().any(|&c| c as usize >= x.count(n + 1)) {
            return Err(Error::Dimension(format!("cone map at level {n} does not fit the nerve")));
        }
    }
    let mut checked = 0;
    let fail = |checked, w: String| Ok(ConeReport { passed: false, checked, witness: Some(w) });
    for n in 0..l {
        for sigma in 0..x.count(n) as u32 {
            let c = cone.cone(n, sigma);
            checked += 1;
            if x.face(n + 1, 0, c) != sigma {
                return fail(checked, format!("d0 Cone({}) = {} ≠ {}", x.name(n, sigma), x.name(n, x.face(n + 1, 0, c)), x.name(n, sigma)));
            }
            if n == 0 {
                checked += 1;
                if Some(x.face(1, 1, c)) != cone.apex {
                    return fail(checked, format!("d1 Cone({}) is not the apex", x.name(0, sigma)));
                }
            }
            let faces = if n == 0 { 0 } else { n + 1 };
            for i in 0..faces {
                checked += 1;
                let lhs = x.face(n + 1, i + 1, c);
                let rhs = cone.cone(n - 1, x.face(n, i, sigma));
                if lhs != rhs {
                    return fail(
                        checked,
                        format!("d{} Cone({}) = {} ≠ Cone(d{i}) = {}", i + 1, x.name(n, sigma), x.name(n, lhs), x.name(n, rhs)),
                    );
                }
            }
        }
    }
    Ok(ConeReport { passed: true, checked, witness: None })
}

/// Prepends the first vertex: `Cone_n σ` is the unique simplex whose vertex
/// sequence is `(v_0, σ_0, …, σ_n)`. Works wherever simplices are determined by
/// their vertices (representables, their products, FinSet nerves).
pub fn first_vertex_cone(x: &TruncSimplicialSet) -> Result<ConeFamily> {
    let l = x.level();
    if x.count(0) == 0 {
        return Ok(ConeFamily { apex: None, maps: (0..l).map(|_| Vec::new()).collect() });
    }
    let by_vertices: Vec<HashMap<Vec<u32>, u32>> = (0..=l)
        .map(|n| {
            let mut m = HashMap::new();
            for s in 0..x.count(n) as u32 {
                if m.insert(x.vertices(n, s), s).is_some() {
                    return Err(Error::UnsupportedObject(format!(
                        "two {n}-simplices share the vertices of {}",
                        x.name(n, s)
                    )));
                }
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let apex = 0u32;
    let maps = (0..l)
        .map(|n| {
            (0..x.count(n) as u32)
                .map(|s| {
                    let mut v = vec![apex];
                    v.extend(x.vertices(n, s));
                    by_vertices[n + 1].get(&v).copied().ok_or_else(|| {
                        Error::UnsupportedObject(format!("no simplex with vertices {v:?} (cone of {})", x.name(n, s)))
                    })
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    Ok(ConeFamily { apex: Some(apex), maps })
}

/// `Cone^{X×Y}_n ⟨α, β⟩ = ⟨Cone^X_n α, Cone^Y_n β⟩`.
pub fn product_cone<C: Category>(
    c: &C,
    p: &Product<C::Obj, C::Mor>,
    (nx, cx): (&Nerve<C>, &ConeFamily),
    (ny, cy): (&Nerve<C>, &ConeFamily),
    np: &Nerve<C>,
) -> Result<ConeFamily> {
    if nx.object != p.a || ny.object != p.b || np.object != p.apex {
        return Err(Error::Mismatch("nerves do not match the product".into()));
    }
    let l = np.level();
    let find = |nv: &Nerve<C>, n: usize, m: &C::Mor| {
        nv.index_of(n, m).ok_or_else(|| Error::Internal(format!("{} not in nerve", c.mor_label(m))))
    };
    let mut maps = Vec::with_capacity(l);
    for n in 0..l {
        let mut t = Vec::with_capacity(np.simplices[n].len());
        for pi in &np.simplices[n] {
            let a = find(nx, n, &c.compose(&p.p1, pi)?)?;
            let b = find(ny, n, &c.compose(&p.p2, pi)?)?;
            let h = pairing(c, p, nx.simplex(n + 1, cx.cone(n, a)), ny.simplex(n + 1, cy.cone(n, b)))?;
            t.push(find(np, n + 1, &h)?);
        }
        maps.push(t);
    }
    let apex = match (cx.apex, cy.apex) {
        (Some(a), Some(b)) => {
            let h = pairing(c, p, nx.simplex(0, a), ny.simplex(0, b))?;
            Some(find(np, 0, &h)?)
        }
        _ => None,
    };
    Ok(ConeFamily { apex, maps })
}

/// Exhaustive search for a cone family, apex by apex, level by level.
pub fn cone_search(x: &TruncSimplicialSet, budget: &Budget) -> Result<Option<ConeFamily>> {
    let l = x.level();
    if x.count(0) == 0 {
        return Ok(Some(ConeFamily { apex: None, maps: (0..l).map(|_| Vec::new()).collect() }));
    }
    if l == 0 {
        return Ok(Some(ConeFamily { apex: Some(0), maps: Vec::new() }));
    }
    let slots: Vec<(usize, u32)> = (0..l).flat_map(|n| (0..x.count(n) as u32).map(move |s| (n, s))).collect();

    fn rec(
        x: &TruncSimplicialSet,
        apex: u32,
        slots: &[(usize, u32)],
        k: usize,
        maps: &mut Vec<Vec<u32>>,
        budget: &Budget,
    ) -> Result<bool> {
        if k == slots.len() {
            return Ok(true);
        }
        let (n, sigma) = slots[k];
        for c in 0..x.count(n + 1) as u32 {
            budget.tick(1)?;
            if x.face(n + 1, 0, c) != sigma {
                continue;
            }
            let ok = if n == 0 {
                x.face(1, 1, c) == apex
            } else {
                (0..=n).all(|i| x.face(n + 1, i + 1, c) == maps[n - 1][x.face(n, i, sigma) as usize])
            };
            if ok {
                maps[n][sigma as usize] = c;
                if rec(x, apex, slots, k + 1, maps, budget)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    for apex in 0..x.count(0) as u32 {
        let mut maps: Vec<Vec<u32>> = (0..l).map(|n| vec![0; x.count(n)]).collect();
        if rec(x, apex, &slots, 0, &mut maps, budget)? {
            return Ok(Some(ConeFamily { apex: Some(apex), maps }));
        }
    }
    Ok(None)
}

/// `K_n: C_n → C_{n+1}` from a cone family, with `K_{-1}: 1 ↦ apex`.
pub fn cone_operators(x: &TruncSimplicialSet, cone: &ConeFamily) -> Vec<IntMatrix> {
    let l = x.level();
    let mut k_minus = IntMatrix::zeros(x.count(0), 1);
    if let Some(a) = cone.apex {
        k_minus.set(a as usize, 0, BigInt::one());
    }
    let mut ops = vec![k_minus];
    for n in 0..l {
        let mut k = IntMatrix::zeros(x.count(n + 1), x.count(n));
        for s in 0..x.count(n) {
            k.set(cone.maps[n][s] as usize, s, BigInt::one());
        }
        ops.push(k);
    }
    ops
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainHomotopyReport {
    /// `holds[n]` for `∂_{n+1} K_n + K_{n-1} ∂_n = Id_n`, `n = 0..L-1`.
    pub holds: Vec<bool>,
    pub passed: bool,
}

/// The identity `∂K + K∂ = Id` on the augmented chains, degree by degree.
pub fn cone_chain_homotopy(x: &TruncSimplicialSet, cone: &ConeFamily) -> Result<ChainHomotopyReport> {
    let v = verify_cone(x, cone)?;
    if !v.passed {
        return Err(Error::ConeNotVerified(v.witness.unwrap_or_default()));
    }
    let c = ChainComplex::from_sset(x, Coefficients::Integers, true)?;
    let ops = cone_operators(x, cone);
    let mut holds = Vec::with_capacity(x.level());
    for n in 0..x.level() {
        // ops[n + 1] is K_n, ops[n] is K_{n-1}
        let lhs = c.boundary(n + 1).mul(&ops[n + 1])?.add(&ops[n].mul(c.boundary(n))?)?;
        holds.push(lhs == IntMatrix::identity(x.count(n)));
    }
    let passed = holds.iter().all(|&h| h);
    Ok(ChainHomotopyReport { holds, passed })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AcyclicReport {
    pub acyclic: bool,
    pub homology: Vec<Value>,
    /// `∂ Cone(z) = z` on a basis of cycles in every computable degree, when a
    /// verified cone was supplied.
    pub cone_witness: Option<bool>,
}

/// Reduced homology vanishes in degrees `0..L-1`.
pub fn check_acyclic(x: &TruncSimplicialSet, cone: Option<&ConeFamily>) -> Result<AcyclicReport> {
    let c = ChainComplex::from_sset(x, Coefficients::Integers, true)?;
    let mut reports = Vec::new();
    let mut acyclic = true;
    for n in 0..x.level() {
        let h = homology(&c, n)?;
        acyclic &= h.is_zero();
        reports.push(h.report());
    }
    let cone_witness = match cone {
        None => None,
        Some(cone) => {
            if !verify_cone(x, cone)?.passed {
                return Err(Error::ConeNotVerified("cone family fails its identities".into()));
            }
            let ops = cone_operators(x, cone);
            let mut ok = true;
            for n in 0..x.level() {
                let z = cycle_basis(&c, n)?;
                let back = c.boundary(n + 1).mul(&ops[n + 1].mul(&z)?)?;
                ok &= back == z;
            }
            Some(ok)
        }
    };
    Ok(AcyclicReport { acyclic, homology: reports, cone_witness })
}

/// How a cell was certified convex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeSource {
    FirstVertex,
    Search,
}

/// A verified cone for `X`: the first-vertex construction when it applies
/// and verifies, otherwise exhaustive search.
pub fn certify_convex(x: &TruncSimplicialSet, budget: &Budget) -> Result<Option<(ConeSource, ConeFamily)>> {
    if let Ok(cone) = first_vertex_cone(x) {
        if verify_cone(x, &cone)?.passed {
            return Ok(Some((ConeSource::FirstVertex, cone)));
        }
    }
    Ok(cone_search(x, budget)?.map(|cone| (ConeSource::Search, cone)))
}

/// A5: every cell `F(n)`, `n < L`, carries a verified cone family on its nerve.
pub fn check_axiom_convex<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<AxiomResult> {
    let l = f.level();
    if l == 0 {
        return Ok(AxiomResult {
            axiom: "A5".into(),
            status: AxiomStatus::NotCheckable,
            detail: "no cone maps below level 0".into(),
            witness: Value::Null,
        });
    }
    let budget = Budget::new(c.bound());
    let mut cells = Vec::new();
    for n in 0..l {
        let nv = nerve(c, f, f.cell(n))?;
        match certify_convex(&nv.sset, &budget)? {
            Some((source, cone)) => cells.push(json!({
                "cell": n,
                "object": c.obj_label(f.cell(n)),
                "method": source,
                "apex": cone.apex.map(|a| nv.sset.name(0, a).to_string()),
            })),
            None => {
                return Ok(AxiomResult {
                    axiom: "A5".into(),
                    status: AxiomStatus::Fail,
                    detail: format!("F({n}) = {} has no cone family", c.obj_label(f.cell(n))),
                    witness: json!({ "certified": cells, "failed_cell": n }),
                });
            }
        }
    }
    Ok(AxiomResult {
        axiom: "A5".into(),
        status: AxiomStatus::Pass,
        detail: format!("cells F(0)..F({}) carry verified cone families", l - 1),
        witness: json!({ "certified": cells }),
    })
}

pub fn is_convex(x: &TruncSimplicialSet, budget: &Budget) -> Result<bool> {
    Ok(certify_convex(x, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::{finset_standard, sset_hollow, sset_standard};
    use crate::fincat::{product, FinSet, SSetCategory};

    #[test]
    fn first_vertex_cone_on_triangle() {
        let c = SSetCategory::new(3);
        let f = sset_standard(&c, 3).unwrap();
        let nv = nerve(&c, &f, &c.standard(2)).unwrap();
        let x = &nv.sset;
        let cone = first_vertex_cone(x).unwrap();
        assert!(verify_cone(x, &cone).unwrap().passed);
        let v2 = x.index_of(0, "2").unwrap();
        assert_eq!(x.name(1, cone.cone(0, v2)), "02");
        assert!(cone_chain_homotopy(x, &cone).unwrap().passed);
        let a = check_acyclic(x, Some(&cone)).unwrap();
        assert!(a.acyclic);
        assert_eq!(a.cone_witness, Some(true));
    }

    #[test]
    fn cone_of_the_edge() {
        let c = SSetCategory::new(2);
        let f = sset_standard(&c, 2).unwrap();
        let nv = nerve(&c, &f, &c.standard(1)).unwrap();
        let cone = first_vertex_cone(&nv.sset).unwrap();
        let e = nv.sset.index_of(1, "01").unwrap();
        assert_eq!(nv.sset.name(2, cone.cone(1, e)), "001");
    }

    #[test]
    fn broken_cone_is_caught() {
        let c = SSetCategory::new(2);
        let f = sset_standard(&c, 2).unwrap();
        let nv = nerve(&c, &f, &c.standard(1)).unwrap();
        let mut cone = first_vertex_cone(&nv.sset).unwrap();
        let e = nv.sset.index_of(1, "01").unwrap() as usize;
        cone.maps[1][e] = nv.sset.index_of(2, "011").unwrap();
        let r = verify_cone(&nv.sset, &cone).unwrap();
        assert!(!r.passed);
        assert!(r.witness.unwrap().starts_with("d0"));
        assert!(matches!(cone_chain_homotopy(&nv.sset, &cone), Err(Error::ConeNotVerified(_))));
    }

    #[test]
    fn circle_has_no_cone() {
        let c = SSetCategory::new(2);
        let f = sset_standard(&c, 2).unwrap();
        let nv = nerve(&c, &f, &c.boundary(2)).unwrap();
        assert!(cone_search(&nv.sset, &Budget::new(1_000_000)).unwrap().is_none());
        assert!(!check_acyclic(&nv.sset, None).unwrap().acyclic);
    }

    #[test]
    fn prism_product_cone() {
        let c = SSetCategory::new(3);
        let f = sset_standard(&c, 3).unwrap();
        let (d2, d1) = (c.standard(2), c.standard(1));
        let p = product(&c, &d2, &d1).unwrap();
        let (n2, n1, np) = (nerve(&c, &f, &d2).unwrap(), nerve(&c, &f, &d1).unwrap(), nerve(&c, &f, &p.apex).unwrap());
        let (c2, c1) = (first_vertex_cone(&n2.sset).unwrap(), first_vertex_cone(&n1.sset).unwrap());
        let pc = product_cone(&c, &p, (&n2, &c2), (&n1, &c1), &np).unwrap();
        assert!(verify_cone(&np.sset, &pc).unwrap().passed);
        assert_eq!(pc, first_vertex_cone(&np.sset).unwrap());
    }

    #[test]
    fn convex_axiom() {
        let c = FinSet::new(3);
        assert!(check_axiom_convex(&c, &finset_standard(2)).unwrap().passed());
        let s = SSetCategory::new(3);
        assert!(check_axiom_convex(&s, &sset_standard(&s, 3).unwrap()).unwrap().passed());
        let hollow = sset_hollow(&s, 3, 2).unwrap();
        assert_eq!(check_axiom_convex(&s, &hollow).unwrap().status, AxiomStatus::Fail);
    }
}
