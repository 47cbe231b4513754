//! The nerve `X ↦ Hom(F(·), X)` and the Base transformation.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::cosimplicial::Cosimplicial;
use crate::error::{Error, Result};
use crate::fincat::{Category, SSetCategory};
use crate::simplicial::{SimplicialMap, TruncSimplicialSet};

/// `Nerve_F(X)`: the `n`-simplices are the morphisms `F(n) → X` in hom-set
/// order, faces act by precomposition with `F(d_{n,i})`.
#[derive(Debug)]
pub struct Nerve<C: Category> {
    pub object: C::Obj,
    pub simplices: Vec<Vec<C::Mor>>,
    index: Vec<HashMap<C::Mor, u32>>,
    pub sset: Arc<TruncSimplicialSet>,
}

impl<C: Category> Clone for Nerve<C> {
    fn clone(&self) -> Self {
        Nerve {
            object: self.object.clone(),
            simplices: self.simplices.clone(),
            index: self.index.clone(),
            sset: self.sset.clone(),
        }
    }
}

impl<C: Category> Nerve<C> {
    pub fn level(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn index_of(&self, n: usize, sigma: &C::Mor) -> Option<u32> {
        self.index.get(n)?.get(sigma).copied()
    }

    pub fn simplex(&self, n: usize, k: u32) -> &C::Mor {
        &self.simplices[n][k as usize]
    }

    fn lookup(&self, c: &C, n: usize, sigma: &C::Mor) -> Result<u32> {
        self.index_of(n, sigma).ok_or_else(|| {
            Error::Internal(format!("{} is missing from level {n} of the nerve", c.mor_label(sigma)))
        })
    }
}

pub fn nerve<C: Category>(c: &C, f: &Cosimplicial<C>, x: &C::Obj) -> Result<Nerve<C>> {
    let l = f.level();
    let budget = Budget::new(c.bound());
    let mut simplices = Vec::with_capacity(l + 1);
    for n in 0..=l {
        let h = c.hom(f.cell(n), x)?;
        budget.tick(h.len() as u64)?;
        simplices.push(h);
    }
    let index: Vec<HashMap<C::Mor, u32>> = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect())
        .collect();
    let mut nv = Nerve { object: x.clone(), simplices, index, sset: Arc::new(TruncSimplicialSet::empty(0)) };
    let mut faces = vec![Vec::new()];
    for n in 1..=l {
        let mut per_i = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let d = f.face(n, i);
            let table = nv.simplices[n]
                .iter()
                .map(|s| {
                    budget.tick(1)?;
                    nv.lookup(c, n - 1, &c.compose(s, d)?)
                })
                .collect::<Result<Vec<u32>>>()?;
            per_i.push(table);
        }
        faces.push(per_i);
    }
    let degens = if f.has_degeneracies() {
        let mut out = Vec::with_capacity(l);
        for n in 0..l {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let s = f.degeneracy(n, i).expect("degeneracies present");
                let table = nv.simplices[n]
                    .iter()
                    .map(|x| nv.lookup(c, n + 1, &c.compose(x, s)?))
                    .collect::<Result<Vec<u32>>>()?;
                per_i.push(table);
            }
            out.push(per_i);
        }
        Some(out)
    } else {
        None
    };
    let names = nv.simplices.iter().map(|level| unique_labels(level.iter().map(|m| c.nerve_label(m)))).collect();
    nv.sset = Arc::new(TruncSimplicialSet::new(names, faces, degens)?);
    Ok(nv)
}

fn unique_labels(labels: impl Iterator<Item = String>) -> Vec<String> {
    let mut seen = HashSet::new();
    labels
        .enumerate()
        .map(|(k, s)| {
            let name = if seen.contains(&s) { format!("{s}#{k}") } else { s };
            seen.insert(name.clone());
            name
        })
        .collect()
}

/// `Nerve_F(g)`: postcomposition with `g: X → Y`.
pub fn nerve_map<C: Category>(c: &C, nx: &Nerve<C>, ny: &Nerve<C>, g: &C::Mor) -> Result<SimplicialMap> {
    if c.source(g) != nx.object || c.target(g) != ny.object {
        return Err(Error::Mismatch(format!("{} does not run between the two nerves", c.mor_label(g))));
    }
    let components = nx
        .simplices
        .iter()
        .enumerate()
        .map(|(n, level)| level.iter().map(|s| ny.lookup(c, n, &c.compose(g, s)?)).collect::<Result<Vec<u32>>>())
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(nx.sset.clone(), ny.sset.clone(), components)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseReport {
    /// `maps[n]` is `Base_n: X_{n+1} → X_n`.
    pub maps: Vec<Vec<u32>>,
    pub checked: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

/// `Base_n(σ) = σ ∘ F(d_{n+1,0})` and its naturality squares
/// `Base_{n-1} ∘ d_{i+1} = d_i ∘ Base_n`.
pub fn base_transform<C: Category>(nv: &Nerve<C>) -> BaseReport {
    let s = &nv.sset;
    let l = s.level();
    let maps: Vec<Vec<u32>> = (0..l).map(|n| s.face_table(n + 1, 0).to_vec()).collect();
    let mut checked = 0;
    for n in 1..l {
        for i in 0..=n {
            for sigma in 0..s.count(n + 1) as u32 {
                checked += 1;
                let lhs = maps[n - 1][s.face(n + 1, i + 1, sigma) as usize];
                let rhs = s.face(n, i, maps[n][sigma as usize]);
                if lhs != rhs {
                    return BaseReport {
                        maps,
                        checked,
                        passed: false,
                        witness: Some(format!("square n={n}, i={i} fails at {}", s.name(n + 1, sigma))),
                    };
                }
            }
        }
    }
    BaseReport { maps, checked, passed: true, witness: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YonedaReport {
    pub passed: bool,
    pub levels: usize,
    pub witness: Option<String>,
}

/// For the simplicial-set instance with `F(n) = Δ[n]`: evaluating each
/// `σ: Δ[n] → X` at the top simplex is a face-compatible bijection onto `X_n`.
pub fn yoneda_check(nv: &Nerve<SSetCategory>, x: &TruncSimplicialSet) -> Result<YonedaReport> {
    let l = nv.level().min(x.level());
    let mut eval: Vec<Vec<u32>> = Vec::with_capacity(l + 1);
    for n in 0..=l {
        let mut level = Vec::with_capacity(nv.simplices[n].len());
        for sigma in &nv.simplices[n] {
            let src = sigma.source();
            let top: String = (0..=n).map(|v| v.to_string()).collect::<Vec<_>>().concat();
            let t = src
                .index_of(n, &top)
                .ok_or_else(|| Error::UnsupportedObject(format!("F({n}) is not the standard simplex")))?;
            level.push(sigma.apply(n, t));
        }
        let mut seen = vec![false; x.count(n)];
        for &v in &level {
            seen[v as usize] = true;
        }
        if level.len() != x.count(n) || seen.iter().any(|b| !b) {
            return Ok(YonedaReport {
                passed: false,
                levels: l + 1,
                witness: Some(format!("level {n}: {} maps against {} simplices", level.len(), x.count(n))),
            });
        }
        if n > 0 {
            for (k, &v) in level.iter().enumerate() {
                for i in 0..=n {
                    if eval[n - 1][nv.sset.face(n, i, k as u32) as usize] != x.face(n, i, v) {
                        return Ok(YonedaReport {
                            passed: false,
                            levels: l + 1,
                            witness: Some(format!("face ({n},{i}) disagrees at {}", x.name(n, v))),
                        });
                    }
                }
            }
        }
        eval.push(level);
    }
    Ok(YonedaReport { passed: true, levels: l + 1, witness: None })
}
