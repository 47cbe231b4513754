//! Categories with finite, enumerable hom-sets, and universal properties
//! decided by exhaustive scans.

mod finset;
mod sset;
pub mod table;

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::budget::{Budget, DEFAULT_BOUND};
use crate::error::{Error, Result};

pub use finset::{FinSet, Function};
pub use sset::SSetCategory;
pub use table::{TableCategory, TableFile, TableMorphism};

/// A category whose hom-sets can be listed.
///
/// `objects()` is the scan set: universal properties are checked against
/// maps out of (or into) exactly these objects.
pub trait Category {
    type Obj: Clone + Eq + Hash + Debug;
    type Mor: Clone + Eq + Hash + Debug;

    fn name(&self) -> String;
    fn objects(&self) -> Vec<Self::Obj>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn obj_label(&self, a: &Self::Obj) -> String;
    fn mor_label(&self, f: &Self::Mor) -> String;

    fn bound(&self) -> u64 {
        DEFAULT_BOUND
    }

    /// Label used for a simplex `f: F(n) → X` of a nerve.
    fn nerve_label(&self, f: &Self::Mor) -> String {
        self.mor_label(f)
    }

    /// A canonical product to be verified, if the instance has one.
    fn product_candidate(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Result<Product<Self::Obj, Self::Mor>>> {
        None
    }

    /// A canonical `⟨f, g⟩` into a candidate product.
    fn pair_candidate(
        &self,
        _p: &Product<Self::Obj, Self::Mor>,
        _f: &Self::Mor,
        _g: &Self::Mor,
    ) -> Option<Result<Self::Mor>> {
        None
    }

    /// A canonical colimit to be verified, if the instance can build one.
    fn colimit_candidate(&self, _d: &Diagram<Self::Obj, Self::Mor>) -> Option<Result<Cocone<Self::Obj, Self::Mor>>> {
        None
    }
}

/// `a × b` with its projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product<O, M> {
    pub a: O,
    pub b: O,
    pub apex: O,
    pub p1: M,
    pub p2: M,
}

/// A finite diagram: nodes and edges `nodes[s] → nodes[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram<O, M> {
    pub nodes: Vec<O>,
    pub edges: Vec<(usize, usize, M)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocone<O, M> {
    pub apex: O,
    pub legs: Vec<M>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<String>,
}

/// Identity and associativity laws over every composable pair and triple
/// among the scan objects.
pub fn verify_category_laws<C: Category>(c: &C) -> Result<LawReport> {
    let budget = Budget::new(c.bound());
    let objs = c.objects();
    let homs: Vec<Vec<Vec<C::Mor>>> =
        objs.iter().map(|a| objs.iter().map(|b| c.hom(a, b)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let fail = |w: String| Ok(LawReport { passed: false, checked: budget.used(), witness: Some(w) });
    for (ia, a) in objs.iter().enumerate() {
        for (ib, b) in objs.iter().enumerate() {
            for f in &homs[ia][ib] {
                budget.tick(2)?;
                if c.source(f) != *a || c.target(f) != *b {
                    return fail(format!("{} listed in hom({}, {})", c.mor_label(f), c.obj_label(a), c.obj_label(b)));
                }
                let left = c.compose(&c.identity(b), f);
                let right = c.compose(f, &c.identity(a));
                if left.as_ref() != Ok(f) || right.as_ref() != Ok(f) {
                    return fail(format!("identity law fails at {}", c.mor_label(f)));
                }
            }
        }
    }
    for ia in 0..objs.len() {
        for ib in 0..objs.len() {
            for ic in 0..objs.len() {
                for f in &homs[ia][ib] {
                    for g in &homs[ib][ic] {
                        budget.tick(1)?;
                        let gf = match c.compose(g, f) {
                            Ok(x) => x,
                            Err(e) => return fail(format!("{} ∘ {}: {e}", c.mor_label(g), c.mor_label(f))),
                        };
                        for id in 0..objs.len() {
                            for h in &homs[ic][id] {
                                budget.tick(2)?;
                                let lhs = c.compose(h, &gf);
                                let rhs = c.compose(h, g).and_then(|hg| c.compose(&hg, f));
                                if lhs.is_err() || lhs != rhs {
                                    return fail(format!(
                                        "associativity fails on ({}, {}, {})",
                                        c.mor_label(h),
                                        c.mor_label(g),
                                        c.mor_label(f)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(LawReport { passed: true, checked: budget.used(), witness: None })
}

/// An object `t` with exactly one map from every scan object.
pub fn find_terminal<C: Category>(c: &C) -> Result<Option<C::Obj>> {
    let objs = c.objects();
    for t in &objs {
        if is_terminal(c, t)? {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}

pub fn is_terminal<C: Category>(c: &C, t: &C::Obj) -> Result<bool> {
    for a in c.objects() {
        if c.hom(&a, t)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique map `a → t` into a terminal object.
pub fn to_terminal<C: Category>(c: &C, a: &C::Obj, t: &C::Obj) -> Result<C::Mor> {
    let mut h = c.hom(a, t)?;
    if h.len() != 1 {
        return Err(Error::Mismatch(format!(
            "{} has {} maps into {}, expected exactly one",
            c.obj_label(a),
            h.len(),
            c.obj_label(t)
        )));
    }
    Ok(h.remove(0))
}

/// Universal property of a product, checked against every scan object `x`:
/// `hom(x, P) → hom(x, a) × hom(x, b)` must be a bijection.
pub fn verify_product<C: Category>(c: &C, p: &Product<C::Obj, C::Mor>, budget: &Budget) -> Result<bool> {
    if c.source(&p.p1) != p.apex || c.source(&p.p2) != p.apex || c.target(&p.p1) != p.a || c.target(&p.p2) != p.b {
        return Ok(false);
    }
    for x in c.objects() {
        let hp = c.hom(&x, &p.apex)?;
        let na = c.hom(&x, &p.a)?.len();
        let nb = c.hom(&x, &p.b)?.len();
        if hp.len() != na * nb {
            return Ok(false);
        }
        let mut seen = HashSet::with_capacity(hp.len());
        for h in &hp {
            budget.tick(2)?;
            if !seen.insert((c.compose(&p.p1, h)?, c.compose(&p.p2, h)?)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `a × b`: the instance's canonical candidate if it has one, otherwise the
/// first object and projection pair (in scan order) that passes.
pub fn product<C: Category>(c: &C, a: &C::Obj, b: &C::Obj) -> Result<Product<C::Obj, C::Mor>> {
    let budget = Budget::new(c.bound());
    if let Some(candidate) = c.product_candidate(a, b) {
        let p = candidate?;
        if verify_product(c, &p, &budget)? {
            return Ok(p);
        }
        return Err(Error::ProductNotFound(format!(
            "{} × {} (canonical candidate failed)",
            c.obj_label(a),
            c.obj_label(b)
        )));
    }
    for apex in c.objects() {
        let pa = c.hom(&apex, a)?;
        let pb = c.hom(&apex, b)?;
        for p1 in &pa {
            for p2 in &pb {
                let p = Product { a: a.clone(), b: b.clone(), apex: apex.clone(), p1: p1.clone(), p2: p2.clone() };
                if verify_product(c, &p, &budget)? {
                    return Ok(p);
                }
            }
        }
    }
    Err(Error::ProductNotFound(format!("{} × {}", c.obj_label(a), c.obj_label(b))))
}

/// `⟨f, g⟩: x → a × b`.
pub fn pairing<C: Category>(c: &C, p: &Product<C::Obj, C::Mor>, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
    let x = c.source(f);
    if c.source(g) != x || c.target(f) != p.a || c.target(g) != p.b {
        return Err(Error::Mismatch(format!("cannot pair {} and {}", c.mor_label(f), c.mor_label(g))));
    }
    if let Some(h) = c.pair_candidate(p, f, g) {
        let h = h?;
        if c.compose(&p.p1, &h)? == *f && c.compose(&p.p2, &h)? == *g {
            return Ok(h);
        }
        return Err(Error::Internal("canonical pairing fails its projection equations".into()));
    }
    for h in c.hom(&x, &p.apex)? {
        if c.compose(&p.p1, &h)? == *f && c.compose(&p.p2, &h)? == *g {
            return Ok(h);
        }
    }
    Err(Error::ProductNotFound(format!("no pairing of {} and {}", c.mor_label(f), c.mor_label(g))))
}

/// `f × g: a × b → c × d`.
pub fn product_of_morphisms<C: Category>(
    c: &C,
    source: &Product<C::Obj, C::Mor>,
    target: &Product<C::Obj, C::Mor>,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<C::Mor> {
    let left = c.compose(f, &source.p1)?;
    let right = c.compose(g, &source.p2)?;
    pairing(c, target, &left, &right)
}

/// Every cocone over `d` with apex `z`, in lexicographic order of legs.
pub fn cocones_into<C: Category>(
    c: &C,
    d: &Diagram<C::Obj, C::Mor>,
    z: &C::Obj,
    budget: &Budget,
) -> Result<Vec<Vec<C::Mor>>> {
    let options: Vec<Vec<C::Mor>> = d.nodes.iter().map(|n| c.hom(n, z)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut legs: Vec<C::Mor> = Vec::with_capacity(d.nodes.len());
    fn rec<C: Category>(
        c: &C,
        d: &Diagram<C::Obj, C::Mor>,
        options: &[Vec<C::Mor>],
        legs: &mut Vec<C::Mor>,
        out: &mut Vec<Vec<C::Mor>>,
        budget: &Budget,
    ) -> Result<()> {
        let k = legs.len();
        if k == options.len() {
            out.push(legs.clone());
            return Ok(());
        }
        'next: for m in &options[k] {
            legs.push(m.clone());
            for (s, t, e) in &d.edges {
                if (*s == k && *t <= k) || (*t == k && *s <= k) {
                    budget.tick(1)?;
                    if c.compose(&legs[*t], e)? != legs[*s] {
                        legs.pop();
                        continue 'next;
                    }
                }
            }
            rec(c, d, options, legs, out, budget)?;
            legs.pop();
        }
        Ok(())
    }
    rec(c, d, &options, &mut legs, &mut out, budget)?;
    Ok(out)
}

pub fn is_cocone<C: Category>(c: &C, d: &Diagram<C::Obj, C::Mor>, cocone: &Cocone<C::Obj, C::Mor>) -> Result<bool> {
    if cocone.legs.len() != d.nodes.len() {
        return Ok(false);
    }
    for (k, leg) in cocone.legs.iter().enumerate() {
        if c.source(leg) != d.nodes[k] || c.target(leg) != cocone.apex {
            return Ok(false);
        }
    }
    for (s, t, e) in &d.edges {
        if c.compose(&cocone.legs[*t], e)? != cocone.legs[*s] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Universal property of a colimit against every scan object `z`: precomposing
/// with the legs must biject `hom(apex, z)` onto the cocones with apex `z`.
pub fn verify_colimit<C: Category>(
    c: &C,
    d: &Diagram<C::Obj, C::Mor>,
    cocone: &Cocone<C::Obj, C::Mor>,
    budget: &Budget,
) -> Result<bool> {
    if !is_cocone(c, d, cocone)? {
        return Ok(false);
    }
    for z in c.objects() {
        let cocones = cocones_into(c, d, &z, budget)?;
        let homs = c.hom(&cocone.apex, &z)?;
        if homs.len() != cocones.len() {
            return Ok(false);
        }
        let mut seen = HashSet::with_capacity(homs.len());
        for h in &homs {
            budget.tick(cocone.legs.len() as u64)?;
            let image: Vec<C::Mor> = cocone.legs.iter().map(|l| c.compose(h, l)).collect::<Result<_>>()?;
            if !seen.insert(image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Colimit of a finite diagram.
pub fn colimit<C: Category>(c: &C, d: &Diagram<C::Obj, C::Mor>) -> Result<Cocone<C::Obj, C::Mor>> {
    let budget = Budget::new(c.bound());
    for (s, t, e) in &d.edges {
        if *s >= d.nodes.len() || *t >= d.nodes.len() || c.source(e) != d.nodes[*s] || c.target(e) != d.nodes[*t] {
            return Err(Error::InvalidDiagram(format!("edge {} is mistyped", c.mor_label(e))));
        }
    }
    if let Some(candidate) = c.colimit_candidate(d) {
        let cocone = candidate?;
        if verify_colimit(c, d, &cocone, &budget)? {
            return Ok(cocone);
        }
        return Err(Error::ColimitNotFound("canonical candidate fails the universal property".into()));
    }
    for z in c.objects() {
        for legs in cocones_into(c, d, &z, &budget)? {
            let cocone = Cocone { apex: z.clone(), legs };
            if verify_colimit(c, d, &cocone, &budget)? {
                return Ok(cocone);
            }
        }
    }
    Err(Error::ColimitNotFound(format!("no scan object is a colimit of {} nodes", d.nodes.len())))
}

/// The unique map out of a colimit that restricts to the given cocone.
pub fn factor_through<C: Category>(
    c: &C,
    colim: &Cocone<C::Obj, C::Mor>,
    target: &Cocone<C::Obj, C::Mor>,
) -> Result<C::Mor> {
    let mut found = Vec::new();
    for h in c.hom(&colim.apex, &target.apex)? {
        let ok = colim
            .legs
            .iter()
            .zip(&target.legs)
            .map(|(l, t)| c.compose(&h, l).map(|x| x == *t))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if ok {
            found.push(h);
        }
    }
    match found.len() {
        0 => Err(Error::FactorizationNotFound),
        1 => Ok(found.remove(0)),
        count => Err(Error::FactorizationNotUnique { count }),
    }
}

/// First `(f, f⁻¹)` with `f: a → b` an isomorphism.
pub fn find_isomorphism<C: Category>(c: &C, a: &C::Obj, b: &C::Obj) -> Result<Option<(C::Mor, C::Mor)>> {
    let back = c.hom(b, a)?;
    let (ida, idb) = (c.identity(a), c.identity(b));
    for f in c.hom(a, b)? {
        for g in &back {
            if c.compose(g, &f)? == ida && c.compose(&f, g)? == idb {
                return Ok(Some((f, g.clone())));
            }
        }
    }
    Ok(None)
}

/// Every automorphism of `a` with its inverse, in hom-set order.
pub fn automorphisms<C: Category>(c: &C, a: &C::Obj) -> Result<Vec<(C::Mor, C::Mor)>> {
    let homs = c.hom(a, a)?;
    let id = c.identity(a);
    let mut out = Vec::new();
    for f in &homs {
        for g in &homs {
            if c.compose(g, f)? == id && c.compose(f, g)? == id {
                out.push((f.clone(), g.clone()));
                break;
            }
        }
    }
    Ok(out)
}
