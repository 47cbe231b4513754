//! Truncated cosimplicial objects `F: Δ → C` and the checkers for the first
//! four axioms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fincat::{
    automorphisms, colimit, find_isomorphism, find_terminal, is_terminal, product, Category, Cocone, Diagram, FinSet,
    Function, SSetCategory, TableCategory,
};
use crate::simplex::{
    degeneracy_map, epi_mono_factorize, face_map, simplicial_identities, Generator, IdentityReport, IdentityViolation,
    MonotoneMap, Word,
};
use crate::simplicial::{SimplicialMap, TruncSimplicialSet};

pub const COSIMPLICIAL_FORMAT: &str = "homcat.cosimplicial/1";

/// Cells `F(0), …, F(L)` with `F(d_{n,i})` for `1 ≤ n ≤ L` and, optionally,
/// `F(s_{n,i})` for `n < L`.
#[derive(Debug)]
pub struct Cosimplicial<C: Category> {
    level: usize,
    cells: Vec<C::Obj>,
    faces: Vec<Vec<C::Mor>>,
    degeneracies: Option<Vec<Vec<C::Mor>>>,
}

impl<C: Category> Clone for Cosimplicial<C> {
    fn clone(&self) -> Self {
        Cosimplicial {
            level: self.level,
            cells: self.cells.clone(),
            faces: self.faces.clone(),
            degeneracies: self.degeneracies.clone(),
        }
    }
}

impl<C: Category> Cosimplicial<C> {
    /// Checks that every structure morphism has the right source and target.
    /// Functoriality is a separate check.
    pub fn new(
        c: &C,
        cells: Vec<C::Obj>,
        faces: Vec<Vec<C::Mor>>,
        degeneracies: Option<Vec<Vec<C::Mor>>>,
    ) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Dimension("a cosimplicial object needs F(0)".into()));
        }
        let level = cells.len() - 1;
        if faces.len() != level + 1 || !faces[0].is_empty() {
            return Err(Error::Dimension(format!("face list must have entries for levels 1..={level}")));
        }
        for (n, per_i) in faces.iter().enumerate().skip(1) {
            if per_i.len() != n + 1 {
                return Err(Error::MissingMorphism(format!("level {n} needs {} faces", n + 1)));
            }
            for (i, m) in per_i.iter().enumerate() {
                if c.source(m) != cells[n - 1] || c.target(m) != cells[n] {
                    return Err(Error::Mismatch(format!("F(d({n},{i})) = {} is mistyped", c.mor_label(m))));
                }
            }
        }
        if let Some(d) = &degeneracies {
            if d.len() != level {
                return Err(Error::Dimension(format!("degeneracy list must have entries for levels 0..{level}")));
            }
            for (n, per_i) in d.iter().enumerate() {
                if per_i.len() != n + 1 {
                    return Err(Error::MissingMorphism(format!("level {n} needs {} degeneracies", n + 1)));
                }
                for (i, m) in per_i.iter().enumerate() {
                    if c.source(m) != cells[n + 1] || c.target(m) != cells[n] {
                        return Err(Error::Mismatch(format!("F(s({n},{i})) = {} is mistyped", c.mor_label(m))));
                    }
                }
            }
        }
        Ok(Cosimplicial { level, cells, faces, degeneracies })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cell(&self, n: usize) -> &C::Obj {
        &self.cells[n]
    }

    pub fn cells(&self) -> &[C::Obj] {
        &self.cells
    }

    pub fn face(&self, n: usize, i: usize) -> &C::Mor {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> Option<&C::Mor> {
        self.degeneracies.as_ref().map(|d| &d[n][i])
    }

    pub fn has_degeneracies(&self) -> bool {
        self.degeneracies.is_some()
    }

    pub fn without_degeneracies(&self) -> Self {
        Cosimplicial { degeneracies: None, ..self.clone() }
    }

    /// Replaces one face image; the result is not re-checked for
    /// functoriality.
    pub fn with_face(&self, n: usize, i: usize, m: C::Mor) -> Self {
        let mut out = self.clone();
        out.faces[n][i] = m;
        out
    }

    /// Truncates to a lower level.
    pub fn truncate(&self, level: usize) -> Self {
        let level = level.min(self.level);
        Cosimplicial {
            level,
            cells: self.cells[..=level].to_vec(),
            faces: self.faces[..=level].to_vec(),
            degeneracies: self.degeneracies.as_ref().map(|d| d[..level].to_vec()),
        }
    }

    pub fn generator(&self, g: Generator) -> Result<C::Mor> {
        match g {
            Generator::Face { n, i } if n >= 1 && n <= self.level && i <= n => Ok(self.faces[n][i].clone()),
            Generator::Degeneracy { n, i } if n < self.level && i <= n => self
                .degeneracy(n, i)
                .cloned()
                .ok_or_else(|| Error::MissingMorphism(format!("F({g}) is not supplied"))),
            _ => Err(Error::MissingMorphism(format!("F({g}) lies outside the truncation"))),
        }
    }

    pub fn word(&self, c: &C, w: &Word) -> Result<C::Mor> {
        w.evaluate(|n| Ok(c.identity(&self.cells[n])), |g| self.generator(g), |a, b| c.compose(a, b))
    }

    /// `F(φ)` for any monotone map, through its epi-mono normal form.
    pub fn image(&self, c: &C, phi: &MonotoneMap) -> Result<C::Mor> {
        let fact = epi_mono_factorize(phi);
        let w = Word { source: fact.source, target: fact.target, gens: fact.word() };
        self.word(c, &w)
    }
}

/// Every simplicial identity inside the truncation, instantiated in `C`.
pub fn verify_functoriality<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<IdentityReport> {
    let mut checked = 0;
    for inst in simplicial_identities(f.level, f.has_degeneracies()) {
        checked += 1;
        let lhs = f.word(c, &inst.lhs)?;
        let rhs = f.word(c, &inst.rhs)?;
        if lhs != rhs {
            return Ok(IdentityReport {
                passed: false,
                checked,
                counterexample: Some(IdentityViolation {
                    family: inst.family,
                    identity: format!("{} = {}", inst.lhs, inst.rhs),
                    lhs: c.mor_label(&lhs),
                    rhs: c.mor_label(&rhs),
                }),
            });
        }
    }
    Ok(IdentityReport { passed: true, checked, counterexample: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomStatus {
    Pass,
    Fail,
    NotCheckable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: AxiomStatus,
    pub detail: String,
    pub witness: Value,
}

impl AxiomResult {
    fn new(axiom: &str, status: AxiomStatus, detail: impl Into<String>, witness: Value) -> Self {
        AxiomResult { axiom: axiom.into(), status, detail: detail.into(), witness }
    }

    pub fn passed(&self) -> bool {
        self.status == AxiomStatus::Pass
    }
}

/// A1: a terminal object and products `F(n) × X` for every cell and scan
/// object. A2: `F(0)` is terminal.
pub fn check_axiom_1_2<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<(AxiomResult, AxiomResult)> {
    let terminal = find_terminal(c)?;
    let mut products = Vec::new();
    let mut missing = None;
    'outer: for n in 0..=f.level {
        for x in c.objects() {
            match product(c, &f.cells[n], &x) {
                Ok(p) => products.push(json!({
                    "cell": n,
                    "object": c.obj_label(&x),
                    "apex": c.obj_label(&p.apex),
                })),
                Err(Error::ProductNotFound(why)) => {
                    missing = Some(format!("F({n}) × {}: {why}", c.obj_label(&x)));
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
    }
    let a1 = match (&terminal, &missing) {
        (Some(t), None) => AxiomResult::new(
            "A1",
            AxiomStatus::Pass,
            format!("terminal object {}; {} products verified", c.obj_label(t), products.len()),
            json!({ "terminal": c.obj_label(t), "products": products }),
        ),
        (None, _) => AxiomResult::new("A1", AxiomStatus::Fail, "no terminal object in the scan set", Value::Null),
        (Some(t), Some(why)) => AxiomResult::new(
            "A1",
            AxiomStatus::Fail,
            format!("missing product {why}"),
            json!({ "terminal": c.obj_label(t) }),
        ),
    };
    let counts: Vec<Value> = c
        .objects()
        .iter()
        .map(|x| Ok(json!({ "object": c.obj_label(x), "maps": c.hom(x, &f.cells[0])?.len() })))
        .collect::<Result<_>>()?;
    let a2 = if is_terminal(c, &f.cells[0])? {
        AxiomResult::new("A2", AxiomStatus::Pass, "F(0) is terminal", json!({ "F(0)": c.obj_label(&f.cells[0]), "hom_counts": counts }))
    } else {
        AxiomResult::new(
            "A2",
            AxiomStatus::Fail,
            "F(0) is not terminal",
            json!({ "F(0)": c.obj_label(&f.cells[0]), "hom_counts": counts }),
        )
    };
    Ok((a1, a2))
}

/// An automorphism of `F(1)` exchanging the two ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Swap<M> {
    pub w: M,
    pub inverse: M,
    pub involution: bool,
}

/// First automorphism `w` of `F(1)` (hom-set order) with
/// `w ∘ F(d_{1,0}) = F(d_{1,1})` and `w ∘ F(d_{1,1}) = F(d_{1,0})`.
pub fn find_swap<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<Option<Swap<C::Mor>>> {
    if f.level < 1 {
        return Ok(None);
    }
    let (d0, d1) = (f.face(1, 0), f.face(1, 1));
    for (w, inverse) in automorphisms(c, &f.cells[1])? {
        if c.compose(&w, d0)? == *d1 && c.compose(&w, d1)? == *d0 {
            let involution = c.compose(&w, &w)? == c.identity(&f.cells[1]);
            return Ok(Some(Swap { w, inverse, involution }));
        }
    }
    Ok(None)
}

/// A3.
pub fn check_axiom_swap<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<AxiomResult> {
    if f.level < 1 {
        return Ok(AxiomResult::new("A3", AxiomStatus::NotCheckable, "level 0 has no F(1)", Value::Null));
    }
    let autos = automorphisms(c, &f.cells[1])?;
    Ok(match find_swap(c, f)? {
        Some(s) => AxiomResult::new(
            "A3",
            AxiomStatus::Pass,
            format!("swap {} exchanges the two ends", c.mor_label(&s.w)),
            json!({
                "swap": c.mor_label(&s.w),
                "inverse": c.mor_label(&s.inverse),
                "involution": s.involution,
            }),
        ),
        None => AxiomResult::new(
            "A3",
            AxiomStatus::Fail,
            format!("none of the {} automorphisms of F(1) exchanges the ends", autos.len()),
            json!({ "automorphisms": autos.iter().map(|(w, _)| c.mor_label(w)).collect::<Vec<_>>() }),
        ),
    })
}

/// The span `F(1) ←d11— F(0) —d10→ F(1)` along which two homotopies glue:
/// the `g`-end of the first is its `d_{1,1}` end, that of the second its
/// `d_{1,0}` end.
pub fn join_span<C: Category>(f: &Cosimplicial<C>) -> Diagram<C::Obj, C::Mor> {
    Diagram {
        nodes: vec![f.cells[1].clone(), f.cells[0].clone(), f.cells[1].clone()],
        edges: vec![(1, 0, f.face(1, 1).clone()), (1, 2, f.face(1, 0).clone())],
    }
}

/// Legs `left`, `center`, `right` of the join cocone, transported into `F(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinLegs<M> {
    pub left: M,
    pub center: M,
    pub right: M,
}

pub fn find_join<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<Option<JoinLegs<C::Mor>>> {
    if f.level < 1 {
        return Ok(None);
    }
    let cocone = match colimit(c, &join_span(f)) {
        Ok(k) => k,
        Err(Error::ColimitNotFound(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    transport(c, f, &cocone)
}

fn transport<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    cocone: &Cocone<C::Obj, C::Mor>,
) -> Result<Option<JoinLegs<C::Mor>>> {
    let Some((iso, _)) = find_isomorphism(c, &cocone.apex, &f.cells[1])? else {
        return Ok(None);
    };
    let leg = |k: usize| c.compose(&iso, &cocone.legs[k]);
    Ok(Some(JoinLegs { left: leg(0)?, center: leg(1)?, right: leg(2)? }))
}

/// A4.
pub fn check_axiom_join<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<AxiomResult> {
    if f.level < 1 {
        return Ok(AxiomResult::new("A4", AxiomStatus::NotCheckable, "level 0 has no F(1)", Value::Null));
    }
    let cocone = match colimit(c, &join_span(f)) {
        Ok(k) => k,
        Err(Error::ColimitNotFound(why)) => {
            return Ok(AxiomResult::new("A4", AxiomStatus::Fail, format!("no colimit of the span: {why}"), Value::Null));
        }
        Err(e) => return Err(e),
    };
    let legs = json!({
        "apex": c.obj_label(&cocone.apex),
        "left": c.mor_label(&cocone.legs[0]),
        "center": c.mor_label(&cocone.legs[1]),
        "right": c.mor_label(&cocone.legs[2]),
    });
    Ok(match transport(c, f, &cocone)? {
        Some(j) => AxiomResult::new(
            "A4",
            AxiomStatus::Pass,
            "the span's colimit is F(1)",
            json!({
                "colimit": legs,
                "left": c.mor_label(&j.left),
                "center": c.mor_label(&j.center),
                "right": c.mor_label(&j.right),
            }),
        ),
        None => AxiomResult::new(
            "A4",
            AxiomStatus::Fail,
            format!("colimit {} is not isomorphic to F(1) = {}", c.obj_label(&cocone.apex), c.obj_label(&f.cells[1])),
            json!({ "colimit": legs }),
        ),
    })
}

// ---- built-in cosimplicial objects ----------------------------------------

/// `F(n) = {0, …, n}` with the face and degeneracy formulas as functions.
pub fn finset_standard(level: usize) -> Cosimplicial<FinSet> {
    let as_fn = |m: MonotoneMap| Function::new(m.source().len(), m.target().len(), m.image().to_vec()).unwrap();
    let cells = (0..=level).map(|n| n + 1).collect();
    let faces = (0..=level).map(|n| (0..=n).filter(|_| n > 0).map(|i| as_fn(face_map(n, i).unwrap())).collect()).collect();
    let degens = (0..level).map(|n| (0..=n).map(|i| as_fn(degeneracy_map(n, i).unwrap())).collect()).collect();
    Cosimplicial { level, cells, faces, degeneracies: Some(degens) }
}

/// `F(n) = Δ[n]` inside the simplicial-set category at the same level.
pub fn sset_standard(c: &SSetCategory, level: usize) -> Result<Cosimplicial<SSetCategory>> {
    let cells: Vec<Arc<TruncSimplicialSet>> = (0..=level).map(|n| c.standard(n)).collect();
    let rep = |m: MonotoneMap| {
        let (s, t) = (m.source().0, m.target().0);
        SimplicialMap::representable(&m, cells[s].clone(), cells[t].clone())
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=level {
        faces.push((0..=n).map(|i| rep(face_map(n, i)?)).collect::<Result<_>>()?);
    }
    let degens = (0..level)
        .map(|n| (0..=n).map(|i| rep(degeneracy_map(n, i)?)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Cosimplicial::new(c, cells.clone(), faces, Some(degens))
}

/// The standard object with `F(k)` replaced by the hollow `∂Δ[k]` (faces
/// only). Its `k`-th cell is not convex.
pub fn sset_hollow(c: &SSetCategory, level: usize, k: usize) -> Result<Cosimplicial<SSetCategory>> {
    let std = sset_standard(c, level)?;
    if k == 0 || k > level {
        return Err(Error::IndexOutOfRange { index: k as i64, max: level as i64 });
    }
    let hollow = c.boundary(k);
    let incl = SimplicialMap::new(
        hollow.clone(),
        std.cells[k].clone(),
        (0..=level)
            .map(|n| (0..hollow.count(n) as u32).map(|s| std.cells[k].index_of(n, hollow.name(n, s)).unwrap()).collect())
            .collect(),
    )?;
    let mut cells = std.cells.clone();
    cells[k] = hollow.clone();
    let mut faces = std.faces.clone();
    faces[k] = (0..=k)
        .map(|i| SimplicialMap::representable(&face_map(k, i)?, cells[k - 1].clone(), hollow.clone()))
        .collect::<Result<_>>()?;
    if k < level {
        faces[k + 1] = std.faces[k + 1].iter().map(|d| SimplicialMap::compose(d, &incl)).collect::<Result<_>>()?;
    }
    Cosimplicial::new(c, cells, faces, None)
}

/// On-disk form of a cosimplicial object in a table category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosimplicialFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub level: usize,
    pub cells: Vec<String>,
    pub faces: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<BTreeMap<String, String>>,
}

impl Cosimplicial<TableCategory> {
    pub fn from_file(c: &TableCategory, file: &CosimplicialFile) -> Result<Self> {
        let l = file.level;
        if file.cells.len() != l + 1 {
            return Err(Error::Parse(format!("field cells: expected {} entries, found {}", l + 1, file.cells.len())));
        }
        let cells = file
            .cells
            .iter()
            .map(|o| c.object(o).ok_or_else(|| Error::Parse(format!("field cells: unknown object {o:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let lookup = |field: &str, map: &BTreeMap<String, String>, n: usize, i: usize| -> Result<usize> {
            let key = format!("({n},{i})");
            let id = map.get(&key).ok_or_else(|| Error::MissingMorphism(format!("{field} {key}")))?;
            c.morphism(id).ok_or_else(|| Error::Parse(format!("field {field}.{key}: unknown morphism {id:?}")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=l {
            faces.push((0..=n).map(|i| lookup("faces", &file.faces, n, i)).collect::<Result<_>>()?);
        }
        let degens = match &file.degeneracies {
            None => None,
            Some(d) => Some(
                (0..l)
                    .map(|n| (0..=n).map(|i| lookup("degeneracies", d, n, i)).collect::<Result<_>>())
                    .collect::<Result<_>>()?,
            ),
        };
        Cosimplicial::new(c, cells, faces, degens)
    }

    pub fn from_json(c: &TableCategory, text: &str) -> Result<Self> {
        let file: CosimplicialFile = serde_json::from_str(text)?;
        Self::from_file(c, &file)
    }
}
