//! Homotopies `H: X×F(1) → Y`, their constructions, homotopy classes and the
//! homotopy category.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::budget::Budget;
use crate::cosimplicial::{find_join, find_swap, Cosimplicial};
use crate::error::{Error, Result};
use crate::fincat::{find_terminal, pairing, product, product_of_morphisms, to_terminal, Category, Product};
use crate::fincat::{TableCategory, TableFile, TableMorphism};

/// `λ_0, λ_1: X → X×F(1)`, `λ_j = ⟨id, F(d_{1,j})∘!⟩`.
///
/// `λ_0` is the `f` end and `λ_1` the `g` end of a homotopy `f ⇒ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPair<O, M> {
    pub product: Product<O, M>,
    pub l0: M,
    pub l1: M,
}

pub fn lambda_maps<C: Category>(c: &C, f: &Cosimplicial<C>, x: &C::Obj) -> Result<LambdaPair<C::Obj, C::Mor>> {
    if f.level() < 1 {
        return Err(Error::LevelMismatch("homotopies need F(1)".into()));
    }
    let p = product(c, x, f.cell(1))?;
    let bang = to_terminal(c, x, f.cell(0)).map_err(|e| Error::AxiomPrecondition(format!("F(0) is not terminal: {e}")))?;
    let id = c.identity(x);
    let l0 = pairing(c, &p, &id, &c.compose(f.face(1, 0), &bang)?)?;
    let l1 = pairing(c, &p, &id, &c.compose(f.face(1, 1), &bang)?)?;
    Ok(LambdaPair { product: p, l0, l1 })
}

/// `λ^X_j ∘ σ = (σ × Id_{F(1)}) ∘ λ^{F(n)}_j` for every `σ: F(n) → X`, `n ≤ L`.
pub fn check_lambda_naturality<C: Category>(c: &C, f: &Cosimplicial<C>, x: &C::Obj) -> Result<Option<String>> {
    let lx = lambda_maps(c, f, x)?;
    let id1 = c.identity(f.cell(1));
    for n in 0..=f.level() {
        let ln = lambda_maps(c, f, f.cell(n))?;
        for sigma in c.hom(f.cell(n), x)? {
            let cross = product_of_morphisms(c, &ln.product, &lx.product, &sigma, &id1)?;
            for (a, b, j) in [(&lx.l0, &ln.l0, 0), (&lx.l1, &ln.l1, 1)] {
                if c.compose(a, &sigma)? != c.compose(&cross, b)? {
                    return Ok(Some(format!("λ_{j} square fails at σ = {}", c.mor_label(&sigma))));
                }
            }
        }
    }
    Ok(None)
}

/// `h: X×F(1) → Y` with `h∘λ_0 = f` and `h∘λ_1 = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy<O, M> {
    pub f: M,
    pub g: M,
    pub h: M,
    pub product: Product<O, M>,
}

pub fn is_homotopy<C: Category>(c: &C, f: &Cosimplicial<C>, h: &C::Mor, a: &C::Mor, b: &C::Mor) -> Result<bool> {
    let x = c.source(a);
    if c.source(b) != x || c.target(a) != c.target(b) || c.target(h) != c.target(a) {
        return Err(Error::Mismatch(format!("{} and {} are not parallel to the homotopy", c.mor_label(a), c.mor_label(b))));
    }
    let lam = lambda_maps(c, f, &x)?;
    if c.source(h) != lam.product.apex {
        return Err(Error::Mismatch(format!("{} does not start at X×F(1)", c.mor_label(h))));
    }
    Ok(c.compose(h, &lam.l0)? == *a && c.compose(h, &lam.l1)? == *b)
}

fn checked<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    h: C::Mor,
    a: C::Mor,
    b: C::Mor,
    p: Product<C::Obj, C::Mor>,
    what: &str,
) -> Result<Homotopy<C::Obj, C::Mor>> {
    if !is_homotopy(c, f, &h, &a, &b)? {
        return Err(Error::Internal(format!("{what} does not have the expected endpoints")));
    }
    Ok(Homotopy { f: a, g: b, h, product: p })
}

/// `H = f ∘ proj_1`.
pub fn constant_homotopy<C: Category>(c: &C, f: &Cosimplicial<C>, m: &C::Mor) -> Result<Homotopy<C::Obj, C::Mor>> {
    let lam = lambda_maps(c, f, &c.source(m))?;
    let h = c.compose(m, &lam.product.p1)?;
    checked(c, f, h, m.clone(), m.clone(), lam.product, "constant homotopy")
}

/// `H ∘ (Id × w)` for the swap `w` of F(1).
pub fn reverse_homotopy<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    hom: &Homotopy<C::Obj, C::Mor>,
) -> Result<Homotopy<C::Obj, C::Mor>> {
    let swap = find_swap(c, f)?.ok_or(Error::Axiom3Unavailable)?;
    let p = &hom.product;
    let cross = product_of_morphisms(c, p, p, &c.identity(&p.a), &swap.w)?;
    let h = c.compose(&hom.h, &cross)?;
    checked(c, f, h, hom.g.clone(), hom.f.clone(), p.clone(), "reversed homotopy")
}

/// Glues `H: f ⇒ g` and `G: g ⇒ h` through the Axiom 4 colimit: the unique
/// `K: X×F(1) → Y` with `K∘(Id×left) = H`, `K∘(Id×center) = g∘proj_1` and
/// `K∘(Id×right) = G`.
pub fn concat_homotopy<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    first: &Homotopy<C::Obj, C::Mor>,
    second: &Homotopy<C::Obj, C::Mor>,
) -> Result<Homotopy<C::Obj, C::Mor>> {
    if first.g != second.f {
        return Err(Error::ConcatEndpoints(format!(
            "first ends at {}, second starts at {}",
            c.mor_label(&first.g),
            c.mor_label(&second.f)
        )));
    }
    let legs = find_join(c, f)?.ok_or(Error::Axiom4Unavailable)?;
    let p = &first.product;
    let x = p.a.clone();
    let p0 = product(c, &x, f.cell(0))?;
    let idx = c.identity(&x);
    let left = product_of_morphisms(c, p, p, &idx, &legs.left)?;
    let right = product_of_morphisms(c, p, p, &idx, &legs.right)?;
    let center = product_of_morphisms(c, &p0, p, &idx, &legs.center)?;
    let mid = c.compose(&first.g, &p0.p1)?;
    let budget = Budget::new(c.bound());
    let mut found = Vec::new();
    for k in c.hom(&p.apex, &c.target(&first.h))? {
        budget.tick(3)?;
        if c.compose(&k, &left)? == first.h && c.compose(&k, &right)? == second.h && c.compose(&k, &center)? == mid {
            found.push(k);
        }
    }
    let k = match found.len() {
        0 => return Err(Error::FactorizationNotFound),
        1 => found.remove(0),
        count => return Err(Error::FactorizationNotUnique { count }),
    };
    if !is_homotopy(c, f, &k, &first.f, &second.g)? {
        return Err(Error::ConcatEndpoints(format!(
            "glued map {} is not a homotopy {} ⇒ {}",
            c.mor_label(&k),
            c.mor_label(&first.f),
            c.mor_label(&second.g)
        )));
    }
    Ok(Homotopy { f: first.f.clone(), g: second.g.clone(), h: k, product: p.clone() })
}

/// `m ∘ H: m∘f ⇒ m∘g`.
pub fn post_compose<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    m: &C::Mor,
    hom: &Homotopy<C::Obj, C::Mor>,
) -> Result<Homotopy<C::Obj, C::Mor>> {
    let h = c.compose(m, &hom.h)?;
    checked(c, f, h, c.compose(m, &hom.f)?, c.compose(m, &hom.g)?, hom.product.clone(), "post-composed homotopy")
}

/// `H ∘ (m × Id): f∘m ⇒ g∘m` for `m: W → X`.
pub fn pre_compose<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    hom: &Homotopy<C::Obj, C::Mor>,
    m: &C::Mor,
) -> Result<Homotopy<C::Obj, C::Mor>> {
    let pw = product(c, &c.source(m), f.cell(1))?;
    let cross = product_of_morphisms(c, &pw, &hom.product, m, &c.identity(f.cell(1)))?;
    let h = c.compose(&hom.h, &cross)?;
    checked(c, f, h, c.compose(&hom.f, m)?, c.compose(&hom.g, m)?, pw, "pre-composed homotopy")
}

/// First `H` in hom-set order with `H: a ⇒ b`.
pub fn homotopic<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    a: &C::Mor,
    b: &C::Mor,
) -> Result<Option<Homotopy<C::Obj, C::Mor>>> {
    let x = c.source(a);
    if c.source(b) != x || c.target(a) != c.target(b) {
        return Err(Error::Mismatch(format!("{} and {} are not parallel", c.mor_label(a), c.mor_label(b))));
    }
    let lam = lambda_maps(c, f, &x)?;
    let budget = Budget::new(c.bound());
    for h in c.hom(&lam.product.apex, &c.target(a))? {
        budget.tick(2)?;
        if c.compose(&h, &lam.l0)? == *a && c.compose(&h, &lam.l1)? == *b {
            return Ok(Some(Homotopy { f: a.clone(), g: b.clone(), h, product: lam.product }));
        }
    }
    Ok(None)
}

/// Partition of `hom(X, Y)` under the equivalence relation generated by
/// "there is a homotopy".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyClasses<O, M> {
    pub morphisms: Vec<M>,
    /// Indices into `morphisms`, each class sorted, classes ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Raw relation: `(i, j)` when some `H: morphisms[i] ⇒ morphisms[j]`.
    pub raw: BTreeSet<(usize, usize)>,
    /// First `H` in hom-set order for each raw pair.
    pub witnesses: BTreeMap<(usize, usize), M>,
    /// `X×F(1)` with the projections the witnesses are defined on.
    pub product: Product<O, M>,
    pub raw_equals_closure: bool,
}

impl<O: Clone, M: Clone> HomotopyClasses<O, M> {
    pub fn witness(&self, i: usize, j: usize) -> Option<Homotopy<O, M>> {
        let h = self.witnesses.get(&(i, j))?;
        Some(Homotopy {
            f: self.morphisms[i].clone(),
            g: self.morphisms[j].clone(),
            h: h.clone(),
            product: self.product.clone(),
        })
    }

    pub fn raw_symmetric(&self) -> bool {
        self.raw.iter().all(|&(i, j)| self.raw.contains(&(j, i)))
    }

    pub fn raw_reflexive(&self) -> bool {
        (0..self.morphisms.len()).all(|i| self.raw.contains(&(i, i)))
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn homotopy_classes<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    x: &C::Obj,
    y: &C::Obj,
) -> Result<HomotopyClasses<C::Obj, C::Mor>> {
    let morphisms = c.hom(x, y)?;
    let index: HashMap<&C::Mor, usize> = morphisms.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let lam = lambda_maps(c, f, x)?;
    let budget = Budget::new(c.bound());
    let mut raw = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for h in c.hom(&lam.product.apex, y)? {
        budget.tick(2)?;
        let a = c.compose(&h, &lam.l0)?;
        let b = c.compose(&h, &lam.l1)?;
        match (index.get(&a), index.get(&b)) {
            (Some(&i), Some(&j)) => {
                if raw.insert((i, j)) {
                    witnesses.insert((i, j), h);
                }
            }
            _ => return Err(Error::Internal("restriction of a homotopy is not in hom(X, Y)".into())),
        }
    }
    let n = morphisms.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for &(i, j) in &raw {
        let (a, b) = (root(&mut parent, i), root(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        by_root.entry(r).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = by_root.into_values().collect();
    let mut class_of = vec![0; n];
    for (k, cl) in classes.iter().enumerate() {
        for &i in cl {
            class_of[i] = k;
        }
    }
    let closure_size: usize = classes.iter().map(|cl| cl.len() * cl.len()).sum();
    let raw_equals_closure = raw.len() == closure_size;
    Ok(HomotopyClasses { morphisms, classes, class_of, raw, witnesses, product: lam.product, raw_equals_closure })
}

/// The homotopy category as a finite table: classes as morphisms, composition
/// through representatives, checked on every pair of representatives.
#[derive(Clone, Debug)]
pub struct HomotopyCategory {
    pub table: TableCategory,
    /// Number of representative pairs whose composite class was compared.
    pub checked: usize,
}

pub fn homotopy_category<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<HomotopyCategory> {
    let objs = c.objects();
    let labels: Vec<String> = objs.iter().map(|o| c.obj_label(o)).collect();
    let mut classes = Vec::with_capacity(objs.len());
    for x in &objs {
        let mut row = Vec::with_capacity(objs.len());
        for y in &objs {
            row.push(homotopy_classes(c, f, x, y)?);
        }
        classes.push(row);
    }
    let id_of = |a: usize, b: usize, k: usize| format!("{}->{}#{}", labels[a], labels[b], k);
    let mut morphisms = Vec::new();
    for a in 0..objs.len() {
        for b in 0..objs.len() {
            for k in 0..classes[a][b].classes.len() {
                morphisms.push(TableMorphism { id: id_of(a, b, k), src: labels[a].clone(), dst: labels[b].clone() });
            }
        }
    }
    let budget = Budget::new(c.bound());
    let mut checked = 0;
    let mut compose = Vec::new();
    for a in 0..objs.len() {
        for b in 0..objs.len() {
            for cc in 0..objs.len() {
                let (ab, bc, ac) = (&classes[a][b], &classes[b][cc], &classes[a][cc]);
                let index: HashMap<&C::Mor, usize> = ac.morphisms.iter().enumerate().map(|(k, m)| (m, k)).collect();
                for (kf, fclass) in ab.classes.iter().enumerate() {
                    for (kg, gclass) in bc.classes.iter().enumerate() {
                        let mut result = None;
                        for &fi in fclass {
                            for &gi in gclass {
                                budget.tick(1)?;
                                checked += 1;
                                let gf = c.compose(&bc.morphisms[gi], &ab.morphisms[fi])?;
                                let k = ac.class_of[*index
                                    .get(&gf)
                                    .ok_or_else(|| Error::Internal("composite outside its hom-set".into()))?];
                                match result {
                                    None => result = Some(k),
                                    Some(r) if r != k => {
                                        return Err(Error::CompositionIllDefined(format!(
                                            "{} ∘ {} lands in class {k}, another representative pair in class {r}",
                                            c.mor_label(&bc.morphisms[gi]),
                                            c.mor_label(&ab.morphisms[fi])
                                        )));
                                    }
                                    _ => {}
                                }
                            }
                        }
                        if let Some(k) = result {
                            compose.push([id_of(b, cc, kg), id_of(a, b, kf), id_of(a, cc, k)]);
                        }
                    }
                }
            }
        }
    }
    let mut identities = BTreeMap::new();
    for (a, x) in objs.iter().enumerate() {
        let cl = &classes[a][a];
        let i = cl
            .morphisms
            .iter()
            .position(|m| *m == c.identity(x))
            .ok_or_else(|| Error::Internal("identity missing from its hom-set".into()))?;
        identities.insert(labels[a].clone(), id_of(a, a, cl.class_of[i]));
    }
    let file = TableFile {
        format: Some(crate::fincat::table::TABLE_FORMAT.to_string()),
        objects: labels,
        morphisms,
        compose,
        identities,
        test_objects: None,
    };
    Ok(HomotopyCategory { table: TableCategory::from_file(&file)?, checked })
}

/// Closure relation `a ∼ b` on `hom(X, Y)`.
fn related<C: Category>(c: &C, f: &Cosimplicial<C>, a: &C::Mor, b: &C::Mor) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    let cl = homotopy_classes(c, f, &c.source(a), &c.target(a))?;
    let pos = |m: &C::Mor| cl.morphisms.iter().position(|x| x == m);
    match (pos(a), pos(b)) {
        (Some(i), Some(j)) => Ok(cl.class_of[i] == cl.class_of[j]),
        _ => Err(Error::Internal("morphism missing from its hom-set".into())),
    }
}

/// A `g: B → A` with `f∘g ∼ Id_B` and `g∘f ∼ Id_A`, where `∼` is the
/// equivalence relation generated by homotopies.
pub fn is_homotopy_equivalence<C: Category>(c: &C, f: &Cosimplicial<C>, m: &C::Mor) -> Result<Option<C::Mor>> {
    let (a, b) = (c.source(m), c.target(m));
    let (ida, idb) = (c.identity(&a), c.identity(&b));
    for g in c.hom(&b, &a)? {
        if related(c, f, &c.compose(m, &g)?, &idb)? && related(c, f, &c.compose(&g, m)?, &ida)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// First `(f, g)` making `a` and `b` homotopy equivalent.
pub fn find_homotopy_equivalence<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    a: &C::Obj,
    b: &C::Obj,
) -> Result<Option<(C::Mor, C::Mor)>> {
    for m in c.hom(a, b)? {
        if let Some(g) = is_homotopy_equivalence(c, f, &m)? {
            return Ok(Some((m, g)));
        }
    }
    Ok(None)
}

/// `Id_X ∼ p∘!` for some point `p: 1 → X`; returns the point.
pub fn is_contractible<C: Category>(c: &C, f: &Cosimplicial<C>, x: &C::Obj) -> Result<Option<C::Mor>> {
    let one = find_terminal(c)?.ok_or_else(|| Error::AxiomPrecondition("no terminal object".into()))?;
    let bang = to_terminal(c, x, &one)?;
    let id = c.identity(x);
    for p in c.hom(&one, x)? {
        if related(c, f, &id, &c.compose(&p, &bang)?)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
