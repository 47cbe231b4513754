//! Truncated simplicial sets and the maps between them.

use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{all_monotone, simplicial_identities, Generator, MonotoneMap};

pub const SSET_FORMAT: &str = "homcat.sset/1";

/// Levelwise finite sets of simplices `X_0, …, X_L` with face maps and,
/// optionally, degeneracies.
///
/// `faces[n][i][σ]` is `d_i σ` for `σ ∈ X_n` (`1 ≤ n ≤ L`), and
/// `degeneracies[n][i][σ]` is `s_i σ` for `σ ∈ X_n` (`n < L`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSimplicialSet {
    level: usize,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<u32>>>,
    degeneracies: Option<Vec<Vec<Vec<u32>>>>,
}

impl TruncSimplicialSet {
    /// Builds and validates a simplicial set; every simplicial identity among
    /// the supplied structure maps is checked.
    pub fn new(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<u32>>>,
        degeneracies: Option<Vec<Vec<Vec<u32>>>>,
    ) -> Result<Self> {
        let set = Self::new_unchecked(names, faces, degeneracies)?;
        set.validate()?;
        Ok(set)
    }

    pub(crate) fn new_unchecked(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<u32>>>,
        degeneracies: Option<Vec<Vec<Vec<u32>>>>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Dimension("a simplicial set needs at least level 0".into()));
        }
        let level = names.len() - 1;
        if faces.len() != level + 1 {
            return Err(Error::Dimension(format!("{} face levels for level {level}", faces.len())));
        }
        if let Some(d) = &degeneracies {
            if d.len() != level {
                return Err(Error::Dimension(format!(
                    "{} degeneracy levels for level {level}",
                    d.len()
                )));
            }
        }
        Ok(TruncSimplicialSet { level, names, faces, degeneracies })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn count(&self, n: usize) -> usize {
        self.names[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn name(&self, n: usize, sigma: u32) -> &str {
        &self.names[n][sigma as usize]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.names[n]
    }

    pub fn index_of(&self, n: usize, name: &str) -> Option<u32> {
        self.names.get(n)?.iter().position(|s| s == name).map(|k| k as u32)
    }

    pub fn face(&self, n: usize, i: usize, sigma: u32) -> u32 {
        self.faces[n][i][sigma as usize]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[u32] {
        &self.faces[n][i]
    }

    pub fn has_degeneracies(&self) -> bool {
        self.degeneracies.is_some()
    }

    pub fn degeneracy(&self, n: usize, i: usize, sigma: u32) -> Option<u32> {
        self.degeneracies.as_ref().map(|d| d[n][i][sigma as usize])
    }

    /// Same structure, new simplex names (one list per level, same lengths).
    pub fn with_names(&self, names: Vec<Vec<String>>) -> Result<Self> {
        if names.len() != self.names.len() || names.iter().zip(&self.names).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::Dimension("renaming must keep every level's size".into()));
        }
        for (n, level) in names.iter().enumerate() {
            let distinct: std::collections::HashSet<&String> = level.iter().collect();
            if distinct.len() != level.len() {
                return Err(Error::Parse(format!("duplicate simplex name at level {n}")));
            }
        }
        Ok(TruncSimplicialSet { names, ..self.clone() })
    }

    /// Drops the degeneracy maps, leaving a semi-simplicial set.
    pub fn without_degeneracies(&self) -> Self {
        TruncSimplicialSet { degeneracies: None, ..self.clone() }
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(Vec::is_empty)
    }

    /// Vertices of an `n`-simplex, in order.
    pub fn vertices(&self, n: usize, sigma: u32) -> Vec<u32> {
        (0..=n)
            .map(|j| {
                let mut s = sigma;
                let mut k = n;
                // drop everything after j, then everything before it
                while k > j {
                    s = self.face(k, k, s);
                    k -= 1;
                }
                for _ in 0..j {
                    s = self.face(k, 0, s);
                    k -= 1;
                }
                s
            })
            .collect()
    }

    /// For each simplex, every way of writing it as `s_i ρ`.
    pub fn degenerate_witnesses(&self) -> Vec<Vec<Vec<(usize, u32)>>> {
        let mut out: Vec<Vec<Vec<(usize, u32)>>> =
            self.names.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        if let Some(d) = &self.degeneracies {
            for (n, per_i) in d.iter().enumerate() {
                for (i, table) in per_i.iter().enumerate() {
                    for (rho, &sigma) in table.iter().enumerate() {
                        out[n + 1][sigma as usize].push((i, rho as u32));
                    }
                }
            }
        }
        out
    }

    /// Indices of nondegenerate simplices at each level.
    pub fn nondegenerate(&self) -> Vec<Vec<u32>> {
        let w = self.degenerate_witnesses();
        w.iter()
            .map(|l| (0..l.len()).filter(|&k| l[k].is_empty()).map(|k| k as u32).collect())
            .collect()
    }

    /// Checks index ranges and all simplicial identities (contravariant form).
    pub fn validate(&self) -> Result<()> {
        let l = self.level;
        for n in 1..=l {
            if self.faces[n].len() != n + 1 {
                return Err(Error::Dimension(format!("level {n} needs {} face maps", n + 1)));
            }
            for (i, t) in self.faces[n].iter().enumerate() {
                if t.len() != self.count(n) {
                    return Err(Error::Dimension(format!("face ({n},{i}) has wrong length")));
                }
                if let Some(&bad) = t.iter().find(|&&x| x as usize >= self.count(n - 1)) {
                    return Err(Error::IndexOutOfRange {
                        index: bad as i64,
                        max: self.count(n - 1) as i64 - 1,
                    });
                }
            }
        }
        if !self.faces[0].is_empty() {
            return Err(Error::Dimension("level 0 carries no faces".into()));
        }
        if let Some(d) = &self.degeneracies {
            for (n, per_i) in d.iter().enumerate() {
                if per_i.len() != n + 1 {
                    return Err(Error::Dimension(format!("level {n} needs {} degeneracies", n + 1)));
                }
                for (i, t) in per_i.iter().enumerate() {
                    if t.len() != self.count(n) {
                        return Err(Error::Dimension(format!("degeneracy ({n},{i}) has wrong length")));
                    }
                    if let Some(&bad) = t.iter().find(|&&x| x as usize >= self.count(n + 1)) {
                        return Err(Error::IndexOutOfRange {
                            index: bad as i64,
                            max: self.count(n + 1) as i64 - 1,
                        });
                    }
                }
            }
        }
        for inst in simplicial_identities(l, self.has_degeneracies()) {
            for sigma in 0..self.count(inst.lhs.target) as u32 {
                let a = self.act(&inst.lhs.gens, sigma);
                let b = self.act(&inst.rhs.gens, sigma);
                if a != b {
                    return Err(Error::Mismatch(format!(
                        "simplicial identity {} = {} fails on {}",
                        inst.lhs,
                        inst.rhs,
                        self.name(inst.lhs.target, sigma)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Contravariant action of a generator word (outermost generator first).
    fn act(&self, gens: &[Generator], mut sigma: u32) -> u32 {
        for g in gens {
            sigma = match *g {
                Generator::Face { n, i } => self.face(n, i, sigma),
                Generator::Degeneracy { n, i } => {
                    self.degeneracy(n, i, sigma).expect("identity list only uses present maps")
                }
            };
        }
        sigma
    }

    // ---- standard objects -------------------------------------------------

    pub fn empty(level: usize) -> Self {
        Self::from_monotone(0, level, |_| false)
    }

    pub fn point(level: usize) -> Self {
        Self::standard(0, level)
    }

    /// The representable `Δ[n]`, truncated at `level`; `k`-simplices are the
    /// monotone maps `[k] → [n]` named by their image tuples.
    pub fn standard(n: usize, level: usize) -> Self {
        Self::from_monotone(n, level, |_| true)
    }

    /// `∂Δ[n]`: the non-surjective maps into `[n]`.
    pub fn boundary(n: usize, level: usize) -> Self {
        Self::from_monotone(n, level, |m| !m.is_surjective())
    }

    fn from_monotone(
        n: usize,
        level: usize,
        keep: impl Fn(&MonotoneMap) -> bool,
    ) -> Self {
        let maps: Vec<Vec<MonotoneMap>> =
            (0..=level).map(|k| all_monotone(k, n).into_iter().filter(|m| keep(m)).collect()).collect();
        let index: Vec<HashMap<Vec<usize>, u32>> = maps
            .iter()
            .map(|l| l.iter().enumerate().map(|(k, m)| (m.image().to_vec(), k as u32)).collect())
            .collect();
        let names = maps
            .iter()
            .map(|l| l.iter().map(|m| image_name(m.image(), n)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for k in 1..=level {
            let per_i = (0..=k)
                .map(|i| {
                    maps[k]
                        .iter()
                        .map(|m| {
                            let mut img = m.image().to_vec();
                            img.remove(i);
                            index[k - 1][&img]
                        })
                        .collect()
                })
                .collect();
            faces.push(per_i);
        }
        let degens = (0..level)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        maps[k]
                            .iter()
                            .map(|m| {
                                let mut img = m.image().to_vec();
                                img.insert(i, img[i]);
                                index[k + 1][&img]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TruncSimplicialSet { level, names, faces, degeneracies: Some(degens) }
    }

    /// Degreewise cartesian product; the pair `(α, β)` sits at index
    /// `α·|B_n| + β`.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        if a.level != b.level {
            return Err(Error::LevelMismatch(format!("{} vs {}", a.level, b.level)));
        }
        let l = a.level;
        let names = (0..=l)
            .map(|n| {
                let mut v = Vec::with_capacity(a.count(n) * b.count(n));
                for x in &a.names[n] {
                    for y in &b.names[n] {
                        v.push(format!("({x},{y})"));
                    }
                }
                v
            })
            .collect();
        let pair = |n: usize, x: u32, y: u32| x * b.count(n) as u32 + y;
        let mut faces = vec![Vec::new()];
        for n in 1..=l {
            let per_i = (0..=n)
                .map(|i| {
                    let mut t = Vec::with_capacity(a.count(n) * b.count(n));
                    for x in 0..a.count(n) as u32 {
                        for y in 0..b.count(n) as u32 {
                            t.push(pair(n - 1, a.face(n, i, x), b.face(n, i, y)));
                        }
                    }
                    t
                })
                .collect();
            faces.push(per_i);
        }
        let degens = match (&a.degeneracies, &b.degeneracies) {
            (Some(_), Some(_)) => Some(
                (0..l)
                    .map(|n| {
                        (0..=n)
                            .map(|i| {
                                let mut t = Vec::with_capacity(a.count(n) * b.count(n));
                                for x in 0..a.count(n) as u32 {
                                    for y in 0..b.count(n) as u32 {
                                        t.push(pair(
                                            n + 1,
                                            a.degeneracy(n, i, x).unwrap(),
                                            b.degeneracy(n, i, y).unwrap(),
                                        ));
                                    }
                                }
                                t
                            })
                            .collect()
                    })
                    .collect(),
            ),
            _ => None,
        };
        Ok(TruncSimplicialSet { level: l, names, faces, degeneracies: degens })
    }

    // ---- JSON ------------------------------------------------------------

    pub fn to_file(&self) -> SSetFile {
        let mut faces = BTreeMap::new();
        for n in 1..=self.level {
            for i in 0..=n {
                let m: BTreeMap<String, String> = (0..self.count(n))
                    .map(|k| (self.names[n][k].clone(), self.names[n - 1][self.faces[n][i][k] as usize].clone()))
                    .collect();
                faces.insert(format!("({n},{i})"), m);
            }
        }
        let degeneracies = self.degeneracies.as_ref().map(|d| {
            let mut out = BTreeMap::new();
            for (n, per_i) in d.iter().enumerate() {
                for (i, t) in per_i.iter().enumerate() {
                    let m: BTreeMap<String, String> = (0..self.count(n))
                        .map(|k| (self.names[n][k].clone(), self.names[n + 1][t[k] as usize].clone()))
                        .collect();
                    out.insert(format!("({n},{i})"), m);
                }
            }
            out
        });
        SSetFile {
            format: Some(SSET_FORMAT.to_string()),
            level: self.level,
            simplices: self.names.clone(),
            faces,
            degeneracies,
        }
    }

    pub fn from_file(file: &SSetFile) -> Result<Self> {
        let l = file.level;
        if file.simplices.len() != l + 1 {
            return Err(Error::Parse(format!(
                "field simplices: expected {} levels, found {}",
                l + 1,
                file.simplices.len()
            )));
        }
        let lookup: Vec<HashMap<&str, u32>> = file
            .simplices
            .iter()
            .enumerate()
            .map(|(n, l)| {
                let m: HashMap<&str, u32> =
                    l.iter().enumerate().map(|(k, s)| (s.as_str(), k as u32)).collect();
                if m.len() != l.len() {
                    return Err(Error::Parse(format!("field simplices[{n}]: duplicate simplex id")));
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        let table = |key: &str,
                     maps: &BTreeMap<String, BTreeMap<String, String>>,
                     from: usize,
                     to: usize|
         -> Result<Vec<u32>> {
            let m = maps.get(key).ok_or_else(|| Error::Parse(format!("missing map {key}")))?;
            file.simplices[from]
                .iter()
                .map(|s| {
                    let t = m
                        .get(s)
                        .ok_or_else(|| Error::Parse(format!("map {key}: no value for simplex {s}")))?;
                    lookup[to]
                        .get(t.as_str())
                        .copied()
                        .ok_or_else(|| Error::Parse(format!("map {key}: unknown simplex {t} at level {to}")))
                })
                .collect()
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=l {
            faces.push((0..=n).map(|i| table(&format!("({n},{i})"), &file.faces, n, n - 1)).collect::<Result<_>>()?);
        }
        let degens = match &file.degeneracies {
            None => None,
            Some(d) => Some(
                (0..l)
                    .map(|n| (0..=n).map(|i| table(&format!("({n},{i})"), d, n, n + 1)).collect::<Result<_>>())
                    .collect::<Result<_>>()?,
            ),
        };
        TruncSimplicialSet::new(file.simplices.clone(), faces, degens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SSetFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }
}

fn image_name(image: &[usize], n: usize) -> String {
    if n < 10 {
        image.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        image.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// On-disk form of a simplicial set.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub level: usize,
    pub simplices: Vec<Vec<String>>,
    pub faces: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

/// A levelwise map commuting with faces, and with degeneracies when both
/// ends carry them.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<TruncSimplicialSet>,
    target: Arc<TruncSimplicialSet>,
    components: Vec<Vec<u32>>,
}

fn same(a: &Arc<TruncSimplicialSet>, b: &Arc<TruncSimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && same(&self.source, &other.source) && same(&self.target, &other.target)
    }
}

impl Eq for SimplicialMap {}

impl Hash for SimplicialMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.components.hash(state);
    }
}

impl SimplicialMap {
    pub fn new(
        source: Arc<TruncSimplicialSet>,
        target: Arc<TruncSimplicialSet>,
        components: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, components);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<TruncSimplicialSet>,
        target: Arc<TruncSimplicialSet>,
        components: Vec<Vec<u32>>,
    ) -> Self {
        SimplicialMap { source, target, components }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = (&self.source, &self.target);
        if a.level() != b.level() {
            return Err(Error::LevelMismatch(format!("{} vs {}", a.level(), b.level())));
        }
        if self.components.len() != a.level() + 1 {
            return Err(Error::Dimension("one component per level is required".into()));
        }
        for (n, c) in self.components.iter().enumerate() {
            if c.len() != a.count(n) {
                return Err(Error::Dimension(format!("component {n} has wrong length")));
            }
            if c.iter().any(|&x| x as usize >= b.count(n)) {
                return Err(Error::IndexOutOfRange { index: n as i64, max: a.level() as i64 });
            }
        }
        for n in 1..=a.level() {
            for i in 0..=n {
                for s in 0..a.count(n) as u32 {
                    if self.apply(n - 1, a.face(n, i, s)) != b.face(n, i, self.apply(n, s)) {
                        return Err(Error::Mismatch(format!(
                            "map does not commute with face ({n},{i}) at {}",
                            a.name(n, s)
                        )));
                    }
                }
            }
        }
        if a.has_degeneracies() && b.has_degeneracies() {
            for n in 0..a.level() {
                for i in 0..=n {
                    for s in 0..a.count(n) as u32 {
                        if self.apply(n + 1, a.degeneracy(n, i, s).unwrap())
                            != b.degeneracy(n, i, self.apply(n, s)).unwrap()
                        {
                            return Err(Error::Mismatch(format!(
                                "map does not commute with degeneracy ({n},{i}) at {}",
                                a.name(n, s)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Postcomposition with a monotone map `f: [m] → [n]`, between objects
    /// whose simplices are named by image tuples (`Δ[m]`, `∂Δ[m]`, …).
    pub fn representable(
        f: &MonotoneMap,
        source: Arc<TruncSimplicialSet>,
        target: Arc<TruncSimplicialSet>,
    ) -> Result<Self> {
        let vertex = |x: &TruncSimplicialSet, v: u32| -> Result<usize> {
            x.name(0, v).parse().map_err(|_| Error::UnsupportedObject(format!("vertex {:?} is not a number", x.name(0, v))))
        };
        let n = f.target().0;
        let mut components = Vec::with_capacity(source.level() + 1);
        for k in 0..=source.level() {
            let mut c = Vec::with_capacity(source.count(k));
            for s in 0..source.count(k) as u32 {
                let image: Vec<usize> = source
                    .vertices(k, s)
                    .into_iter()
                    .map(|v| match vertex(&source, v)? {
                        j if j <= f.source().0 => Ok(f.apply(j)),
                        j => Err(Error::IndexOutOfRange { index: j as i64, max: f.source().0 as i64 }),
                    })
                    .collect::<Result<_>>()?;
                let name = image_name(&image, n);
                let t = target
                    .index_of(k, &name)
                    .ok_or_else(|| Error::UnsupportedObject(format!("no simplex {name} in the target")))?;
                c.push(t);
            }
            components.push(c);
        }
        Self::new(source, target, components)
    }

    pub fn identity(x: Arc<TruncSimplicialSet>) -> Self {
        let components = (0..=x.level()).map(|n| (0..x.count(n) as u32).collect()).collect();
        SimplicialMap { source: x.clone(), target: x, components }
    }

    /// `g ∘ f`.
    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        if !same(&f.target, &g.source) {
            return Err(Error::Mismatch("cannot compose simplicial maps: target != source".into()));
        }
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(n, c)| c.iter().map(|&s| g.components[n][s as usize]).collect())
            .collect();
        Ok(SimplicialMap { source: f.source.clone(), target: g.target.clone(), components })
    }

    pub fn apply(&self, n: usize, sigma: u32) -> u32 {
        self.components[n][sigma as usize]
    }

    pub fn source(&self) -> &Arc<TruncSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncSimplicialSet> {
        &self.target
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().enumerate().all(|(n, c)| {
            let mut seen = vec![false; self.target.count(n)];
            c.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
        })
    }
}
