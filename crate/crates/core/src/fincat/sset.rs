use std::collections::HashMap;
use std::sync::Arc;

use super::finset::UnionFind;
use super::{Category, Cocone, Diagram, Product};
use crate::budget::{Budget, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, TruncSimplicialSet};

type Sset = Arc<TruncSimplicialSet>;

/// Simplicial sets truncated at a fixed level, with every levelwise map that
/// commutes with the structure maps. Hom-sets are enumerated by backtracking.
#[derive(Clone, Debug)]
pub struct SSetCategory {
    level: usize,
    test_objects: Vec<Sset>,
    bound: u64,
}

impl SSetCategory {
    /// Scan set: `∅`, `Δ[0]`, `Δ[1]`, `Δ[2]`, `∂Δ[2]`.
    pub fn new(level: usize) -> Self {
        let test_objects = vec![
            Arc::new(TruncSimplicialSet::empty(level)),
            Arc::new(TruncSimplicialSet::point(level)),
            Arc::new(TruncSimplicialSet::standard(1, level)),
            Arc::new(TruncSimplicialSet::standard(2, level)),
            Arc::new(TruncSimplicialSet::boundary(2, level)),
        ];
        SSetCategory { level, test_objects, bound: DEFAULT_BOUND }
    }

    pub fn with_test_objects(level: usize, test_objects: Vec<Sset>) -> Result<Self> {
        if let Some(x) = test_objects.iter().find(|x| x.level() != level) {
            return Err(Error::LevelMismatch(format!("test object at level {} in a level {level} category", x.level())));
        }
        Ok(SSetCategory { level, test_objects, bound: DEFAULT_BOUND })
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn standard(&self, n: usize) -> Sset {
        Arc::new(TruncSimplicialSet::standard(n, self.level))
    }

    pub fn boundary(&self, n: usize) -> Sset {
        Arc::new(TruncSimplicialSet::boundary(n, self.level))
    }

    fn check_level(&self, x: &TruncSimplicialSet) -> Result<()> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch(format!("object at level {}, category at level {}", x.level(), self.level)));
        }
        Ok(())
    }
}

/// Every simplicial map `a → b`, in lexicographic order of components taken
/// level by level.
pub(crate) fn enumerate_maps(a: &Sset, b: &Sset, budget: &Budget) -> Result<Vec<SimplicialMap>> {
    if a.level() != b.level() {
        return Err(Error::LevelMismatch(format!("{} vs {}", a.level(), b.level())));
    }
    let l = a.level();
    let forced = a.has_degeneracies() && b.has_degeneracies();
    let witnesses = if forced { a.degenerate_witnesses() } else { Vec::new() };
    // candidates in b, keyed by their face tuple
    let by_faces: Vec<HashMap<Vec<u32>, Vec<u32>>> = (0..=l)
        .map(|n| {
            let mut m: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            if n > 0 {
                for t in 0..b.count(n) as u32 {
                    let key = (0..=n).map(|i| b.face(n, i, t)).collect();
                    m.entry(key).or_default().push(t);
                }
            }
            m
        })
        .collect();
    let slots: Vec<(usize, u32)> = (0..=l).flat_map(|n| (0..a.count(n) as u32).map(move |s| (n, s))).collect();
    let mut comps: Vec<Vec<u32>> = (0..=l).map(|n| vec![u32::MAX; a.count(n)]).collect();
    let all_vertices: Vec<u32> = (0..b.count(0) as u32).collect();
    let mut out = Vec::new();

    struct Ctx<'a> {
        a: &'a TruncSimplicialSet,
        b: &'a TruncSimplicialSet,
        forced: bool,
        witnesses: &'a [Vec<Vec<(usize, u32)>>],
        by_faces: &'a [HashMap<Vec<u32>, Vec<u32>>],
        slots: &'a [(usize, u32)],
        all_vertices: &'a [u32],
        budget: &'a Budget,
    }

    fn faces_ok(cx: &Ctx, comps: &[Vec<u32>], n: usize, s: u32, t: u32) -> bool {
        n == 0 || (0..=n).all(|i| cx.b.face(n, i, t) == comps[n - 1][cx.a.face(n, i, s) as usize])
    }

    fn rec(cx: &Ctx, k: usize, comps: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) -> Result<()> {
        if k == cx.slots.len() {
            out.push(comps.clone());
            return Ok(());
        }
        let (n, s) = cx.slots[k];
        cx.budget.tick(1)?;
        if cx.forced && !cx.witnesses[n][s as usize].is_empty() {
            let ws = &cx.witnesses[n][s as usize];
            let (i0, r0) = ws[0];
            let t = cx.b.degeneracy(n - 1, i0, comps[n - 1][r0 as usize]).expect("both sides carry degeneracies");
            let consistent = ws[1..]
                .iter()
                .all(|&(i, r)| cx.b.degeneracy(n - 1, i, comps[n - 1][r as usize]) == Some(t));
            if consistent && faces_ok(cx, comps, n, s, t) {
                comps[n][s as usize] = t;
                rec(cx, k + 1, comps, out)?;
            }
            return Ok(());
        }
        let cands: &[u32] = if n == 0 {
            cx.all_vertices
        } else {
            let key: Vec<u32> = (0..=n).map(|i| comps[n - 1][cx.a.face(n, i, s) as usize]).collect();
            match cx.by_faces[n].get(&key) {
                Some(v) => v,
                None => return Ok(()),
            }
        };
        for &t in cands {
            cx.budget.tick(1)?;
            comps[n][s as usize] = t;
            rec(cx, k + 1, comps, out)?;
        }
        Ok(())
    }

    let cx = Ctx {
        a,
        b,
        forced,
        witnesses: &witnesses,
        by_faces: &by_faces,
        slots: &slots,
        all_vertices: &all_vertices,
        budget,
    };
    let mut raw = Vec::new();
    rec(&cx, 0, &mut comps, &mut raw)?;
    for c in raw {
        out.push(SimplicialMap::new_unchecked(a.clone(), b.clone(), c));
    }
    Ok(out)
}

impl Category for SSetCategory {
    type Obj = Sset;
    type Mor = SimplicialMap;

    fn name(&self) -> String {
        format!("sset(L={})", self.level)
    }

    fn objects(&self) -> Vec<Sset> {
        self.test_objects.clone()
    }

    fn bound(&self) -> u64 {
        self.bound
    }

    fn hom(&self, a: &Sset, b: &Sset) -> Result<Vec<SimplicialMap>> {
        self.check_level(a)?;
        self.check_level(b)?;
        enumerate_maps(a, b, &Budget::new(self.bound))
    }

    fn source(&self, f: &SimplicialMap) -> Sset {
        f.source().clone()
    }

    fn target(&self, f: &SimplicialMap) -> Sset {
        f.target().clone()
    }

    fn compose(&self, g: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
        SimplicialMap::compose(g, f)
    }

    fn identity(&self, a: &Sset) -> SimplicialMap {
        SimplicialMap::identity(a.clone())
    }

    fn obj_label(&self, a: &Sset) -> String {
        let counts: Vec<String> = a.nondegenerate().iter().map(|l| l.len().to_string()).collect();
        format!("sset[{}]", counts.join(","))
    }

    /// Images of the nondegenerate simplices.
    fn mor_label(&self, f: &SimplicialMap) -> String {
        let a = f.source();
        let parts: Vec<String> = a
            .nondegenerate()
            .iter()
            .enumerate()
            .flat_map(|(n, l)| {
                l.iter().map(move |&s| format!("{}↦{}", a.name(n, s), f.target().name(n, f.apply(n, s))))
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// A simplex `Δ[n] → X` is named by the image of the top simplex.
    fn nerve_label(&self, f: &SimplicialMap) -> String {
        let a = f.source();
        let top: String = (0..a.count(0)).map(|v| v.to_string()).collect();
        let n = a.count(0).saturating_sub(1);
        match (n <= a.level(), a.count(0) > 0) {
            (true, true) => match a.index_of(n, &top) {
                Some(s) => f.target().name(n, f.apply(n, s)).to_string(),
                None => self.mor_label(f),
            },
            _ => self.mor_label(f),
        }
    }

    fn product_candidate(&self, a: &Sset, b: &Sset) -> Option<Result<Product<Sset, SimplicialMap>>> {
        Some((|| {
            self.check_level(a)?;
            self.check_level(b)?;
            let apex = Arc::new(TruncSimplicialSet::product(a, b)?);
            let l = self.level;
            let p1 = (0..=l)
                .map(|n| {
                    let nb = b.count(n) as u32;
                    (0..apex.count(n) as u32).map(|x| x / nb).collect()
                })
                .collect();
            let p2 = (0..=l)
                .map(|n| {
                    let nb = b.count(n) as u32;
                    (0..apex.count(n) as u32).map(|x| x % nb).collect()
                })
                .collect();
            Ok(Product {
                a: a.clone(),
                b: b.clone(),
                p1: SimplicialMap::new_unchecked(apex.clone(), a.clone(), p1),
                p2: SimplicialMap::new_unchecked(apex.clone(), b.clone(), p2),
                apex,
            })
        })())
    }

    fn pair_candidate(
        &self,
        p: &Product<Sset, SimplicialMap>,
        f: &SimplicialMap,
        g: &SimplicialMap,
    ) -> Option<Result<SimplicialMap>> {
        let counts_match = (0..=self.level).all(|n| p.apex.count(n) == p.a.count(n) * p.b.count(n));
        if !counts_match {
            return None;
        }
        let comps = (0..=self.level)
            .map(|n| {
                let nb = p.b.count(n) as u32;
                f.components()[n].iter().zip(&g.components()[n]).map(|(&x, &y)| x * nb + y).collect()
            })
            .collect();
        Some(Ok(SimplicialMap::new_unchecked(f.source().clone(), p.apex.clone(), comps)))
    }

    /// Degreewise quotient of the disjoint union.
    fn colimit_candidate(&self, d: &Diagram<Sset, SimplicialMap>) -> Option<Result<Cocone<Sset, SimplicialMap>>> {
        Some(degreewise_colimit(self.level, d))
    }
}

fn degreewise_colimit(l: usize, d: &Diagram<Sset, SimplicialMap>) -> Result<Cocone<Sset, SimplicialMap>> {
    if let Some(x) = d.nodes.iter().find(|x| x.level() != l) {
        return Err(Error::LevelMismatch(format!("diagram node at level {}", x.level())));
    }
    let with_degens = d.nodes.iter().all(|x| x.has_degeneracies());
    let mut offsets = Vec::with_capacity(l + 1);
    let mut classes = Vec::with_capacity(l + 1);
    let mut reps: Vec<Vec<(usize, u32)>> = Vec::with_capacity(l + 1);
    for n in 0..=l {
        let mut off = Vec::with_capacity(d.nodes.len());
        let mut total = 0usize;
        for x in &d.nodes {
            off.push(total);
            total += x.count(n);
        }
        let mut uf = UnionFind::new(total);
        for (s, t, e) in &d.edges {
            for x in 0..d.nodes[*s].count(n) {
                uf.union(off[*s] + x, off[*t] + e.apply(n, x as u32) as usize);
            }
        }
        let mut class = vec![u32::MAX; total];
        let mut rep = Vec::new();
        for (k, x) in d.nodes.iter().enumerate() {
            for sigma in 0..x.count(n) {
                let r = uf.find(off[k] + sigma);
                if class[r] == u32::MAX {
                    class[r] = rep.len() as u32;
                    rep.push((k, sigma as u32));
                }
                class[off[k] + sigma] = class[r];
            }
        }
        offsets.push(off);
        classes.push(class);
        reps.push(rep);
    }
    let cls = |n: usize, k: usize, sigma: u32| classes[n][offsets[n][k] + sigma as usize];

    let mut names: Vec<Vec<String>> = Vec::with_capacity(l + 1);
    for (n, rep) in reps.iter().enumerate() {
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut level_names = Vec::with_capacity(rep.len());
        for &(k, sigma) in rep {
            let base = d.nodes[k].name(n, sigma).to_string();
            let mut name = base.clone();
            if seen.contains_key(&name) {
                name = format!("{k}.{base}");
            }
            let mut bump = 1;
            while seen.contains_key(&name) {
                name = format!("{k}.{base}#{bump}");
                bump += 1;
            }
            seen.insert(name.clone(), level_names.len());
            level_names.push(name);
        }
        names.push(level_names);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=l {
        faces.push(
            (0..=n)
                .map(|i| reps[n].iter().map(|&(k, s)| cls(n - 1, k, d.nodes[k].face(n, i, s))).collect())
                .collect(),
        );
    }
    let degens = with_degens.then(|| {
        (0..l)
            .map(|n| {
                (0..=n)
                    .map(|i| reps[n].iter().map(|&(k, s)| cls(n + 1, k, d.nodes[k].degeneracy(n, i, s).unwrap())).collect())
                    .collect()
            })
            .collect()
    });
    let apex = Arc::new(TruncSimplicialSet::new(names, faces, degens)?);
    let legs = d
        .nodes
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let comps = (0..=l).map(|n| (0..x.count(n) as u32).map(|s| cls(n, k, s)).collect()).collect();
            SimplicialMap::new_unchecked(x.clone(), apex.clone(), comps)
        })
        .collect();
    Ok(Cocone { apex, legs })
}
