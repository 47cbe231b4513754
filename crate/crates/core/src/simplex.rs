//! The simplex category: objects `[n] = {0,…,n}` and weakly increasing maps.
//!
//! Maps are stored as image tuples. Face and degeneracy generators follow the
//! usual conventions: `d(n, i): [n-1] → [n]` skips `i`, and
//! `s(n, i): [n+1] → [n]` hits `i` twice.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The object `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimplexObject(pub usize);

impl SimplexObject {
    pub fn len(self) -> usize {
        self.0 + 1
    }

    /// Never true: `[n]` has `n + 1` elements.
    pub fn is_empty(self) -> bool {
        false
    }
}

/// A morphism `[m] → [n]` of the simplex category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonotoneMap {
    source: SimplexObject,
    target: SimplexObject,
    image: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: usize, target: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() != source + 1 {
            return Err(Error::Dimension(format!(
                "image of length {} for source [{}]",
                image.len(),
                source
            )));
        }
        if image.iter().any(|&v| v > target) {
            return Err(Error::Mismatch(format!("image {image:?} leaves [{target}]")));
        }
        if image.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Mismatch(format!("image {image:?} is not monotone")));
        }
        Ok(MonotoneMap { source: SimplexObject(source), target: SimplexObject(target), image })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { source: SimplexObject(n), target: SimplexObject(n), image: (0..=n).collect() }
    }

    pub fn source(&self) -> SimplexObject {
        self.source
    }

    pub fn target(&self) -> SimplexObject {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn is_injective(&self) -> bool {
        self.image.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.image.first() == Some(&0)
            && self.image.last() == Some(&self.target.0)
            && self.image.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image.iter().enumerate().all(|(j, &v)| j == v)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:(", self.source.0, self.target.0)?;
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `d(n, i): [n-1] → [n]`, the injection missing `i`.
pub fn face_map(n: usize, i: usize) -> Result<MonotoneMap> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: -1 });
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i as i64, max: n as i64 });
    }
    let image = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
    Ok(MonotoneMap { source: SimplexObject(n - 1), target: SimplexObject(n), image })
}

/// `s(n, i): [n+1] → [n]`, the surjection hitting `i` twice.
pub fn degeneracy_map(n: usize, i: usize) -> Result<MonotoneMap> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i as i64, max: n as i64 });
    }
    let image = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
    Ok(MonotoneMap { source: SimplexObject(n + 1), target: SimplexObject(n), image })
}

/// `g ∘ f`.
pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.target != g.source {
        return Err(Error::Mismatch(format!(
            "cannot compose {g} after {f}: target [{}] != source [{}]",
            f.target.0, g.source.0
        )));
    }
    Ok(MonotoneMap {
        source: f.source,
        target: g.target,
        image: f.image.iter().map(|&j| g.image[j]).collect(),
    })
}

/// Every monotone map `[m] → [n]`, in lexicographic order of image tuples.
pub fn all_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut image = vec![0usize; m + 1];
    fn rec(pos: usize, lo: usize, n: usize, m: usize, image: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if pos == image.len() {
            out.push(MonotoneMap {
                source: SimplexObject(m),
                target: SimplexObject(n),
                image: image.clone(),
            });
            return;
        }
        for v in lo..=n {
            image[pos] = v;
            rec(pos + 1, v, n, m, image, out);
        }
    }
    rec(0, 0, n, m, &mut image, &mut out);
    out
}

/// A face or degeneracy generator, named by its codomain-level index pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    Face { n: usize, i: usize },
    Degeneracy { n: usize, i: usize },
}

impl Generator {
    pub fn source(self) -> usize {
        match self {
            Generator::Face { n, .. } => n - 1,
            Generator::Degeneracy { n, .. } => n + 1,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Generator::Face { n, .. } | Generator::Degeneracy { n, .. } => n,
        }
    }

    pub fn map(self) -> MonotoneMap {
        match self {
            Generator::Face { n, i } => face_map(n, i).expect("generator indices are valid"),
            Generator::Degeneracy { n, i } => degeneracy_map(n, i).expect("generator indices are valid"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Face { n, i } => write!(f, "d({n},{i})"),
            Generator::Degeneracy { n, i } => write!(f, "s({n},{i})"),
        }
    }
}

/// A composite of generators; `gens[0]` is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Word {
    pub source: usize,
    pub target: usize,
    pub gens: Vec<Generator>,
}

impl Word {
    pub fn new(gens: Vec<Generator>) -> Self {
        let source = gens.last().map(|g| g.source()).unwrap_or(0);
        let target = gens.first().map(|g| g.target()).unwrap_or(0);
        Word { source, target, gens }
    }

    pub fn identity(n: usize) -> Self {
        Word { source: n, target: n, gens: Vec::new() }
    }

    /// Evaluates the word with a caller-supplied interpretation of each
    /// generator and a composition law `(outer, inner) -> outer ∘ inner`.
    pub fn evaluate<T, E>(
        &self,
        identity: impl Fn(usize) -> std::result::Result<T, E>,
        interpret: impl Fn(Generator) -> std::result::Result<T, E>,
        compose: impl Fn(&T, &T) -> std::result::Result<T, E>,
    ) -> std::result::Result<T, E> {
        let mut acc = identity(self.source)?;
        for g in self.gens.iter().rev() {
            let step = interpret(*g)?;
            acc = compose(&step, &acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "id[{}]", self.source);
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("∘"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityFamily {
    FaceFace,
    FaceDegeneracyBelow,
    FaceDegeneracyCancel,
    FaceDegeneracyAbove,
    DegeneracyDegeneracy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityInstance {
    pub family: IdentityFamily,
    pub lhs: Word,
    pub rhs: Word,
}

/// All simplicial identity instances whose objects stay inside `[0..=n_max]`.
/// With `with_degeneracies == false` only the face-face family is produced.
pub fn simplicial_identities(n_max: usize, with_degeneracies: bool) -> Vec<IdentityInstance> {
    use Generator::{Degeneracy as S, Face as D};
    let mut out = Vec::new();
    // d(n+1,j) d(n,i) = d(n+1,i) d(n,j-1), i < j
    for n in 1..n_max {
        for j in 0..=n + 1 {
            for i in 0..j {
                out.push(IdentityInstance {
                    family: IdentityFamily::FaceFace,
                    lhs: Word::new(vec![D { n: n + 1, i: j }, D { n, i }]),
                    rhs: Word::new(vec![D { n: n + 1, i }, D { n, i: j - 1 }]),
                });
            }
        }
    }
    if !with_degeneracies {
        return out;
    }
    // s(n,j) d(n+1,i), three cases
    for n in 0..n_max {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = Word::new(vec![S { n, i: j }, D { n: n + 1, i }]);
                let (family, rhs) = if i < j {
                    (
                        IdentityFamily::FaceDegeneracyBelow,
                        Word::new(vec![D { n, i }, S { n: n - 1, i: j - 1 }]),
                    )
                } else if i == j || i == j + 1 {
                    (IdentityFamily::FaceDegeneracyCancel, Word::identity(n))
                } else {
                    (
                        IdentityFamily::FaceDegeneracyAbove,
                        Word::new(vec![D { n, i: i - 1 }, S { n: n - 1, i: j }]),
                    )
                };
                out.push(IdentityInstance { family, lhs, rhs });
            }
        }
    }
    // s(n,j) s(n+1,i) = s(n,i) s(n+1,j+1), i <= j
    for n in 0..n_max.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                out.push(IdentityInstance {
                    family: IdentityFamily::DegeneracyDegeneracy,
                    lhs: Word::new(vec![S { n, i: j }, S { n: n + 1, i }]),
                    rhs: Word::new(vec![S { n, i }, S { n: n + 1, i: j + 1 }]),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub family: IdentityFamily,
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<IdentityViolation>,
}

/// Exhaustively checks every simplicial identity up to `[n_max]` using the
/// standard face and degeneracy formulas.
pub fn verify_simplicial_identities(n_max: usize) -> IdentityReport {
    verify_simplicial_identities_with(n_max, |g| Ok(g.map()))
}

/// Same as [`verify_simplicial_identities`] with a caller-supplied generator
/// table, so that corrupted tables can be checked.
pub fn verify_simplicial_identities_with(
    n_max: usize,
    table: impl Fn(Generator) -> Result<MonotoneMap>,
) -> IdentityReport {
    let instances = simplicial_identities(n_max, true);
    let mut checked = 0;
    for inst in &instances {
        let eval = |w: &Word| w.evaluate(|n| Ok(MonotoneMap::identity(n)), &table, compose);
        checked += 1;
        let (l, r) = (eval(&inst.lhs), eval(&inst.rhs));
        let equal = matches!((&l, &r), (Ok(a), Ok(b)) if a == b);
        if !equal {
            let show = |x: &Result<MonotoneMap>| match x {
                Ok(m) => m.to_string(),
                Err(e) => format!("error: {e}"),
            };
            return IdentityReport {
                passed: false,
                checked,
                counterexample: Some(IdentityViolation {
                    family: inst.family,
                    identity: format!("{} = {}", inst.lhs, inst.rhs),
                    lhs: show(&l),
                    rhs: show(&r),
                }),
            };
        }
    }
    IdentityReport { passed: true, checked, counterexample: None }
}

/// Canonical epi-mono normal form `f = d(i_1)∘…∘d(i_r)∘s(j_1)∘…∘s(j_t)`
/// with `i_1 > … > i_r` and `j_1 < … < j_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub source: usize,
    pub middle: usize,
    pub target: usize,
    /// `j_1 < … < j_t`: positions `j` with `f(j) = f(j+1)`.
    pub degeneracies: Vec<usize>,
    /// `i_1 > … > i_r`: elements of the target missed by `f`.
    pub faces: Vec<usize>,
}

impl Factorization {
    /// The generator word, outermost first.
    pub fn word(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        // faces: the innermost face lands in [middle + 1]
        let r = self.faces.len();
        for (k, &i) in self.faces.iter().enumerate() {
            gens.push(Generator::Face { n: self.middle + r - k, i });
        }
        let t = self.degeneracies.len();
        for (k, &j) in self.degeneracies.iter().enumerate() {
            gens.push(Generator::Degeneracy { n: self.source - t + k, i: j });
        }
        gens
    }

    pub fn recompose(&self) -> MonotoneMap {
        let w = Word { source: self.source, target: self.target, gens: self.word() };
        w.evaluate::<_, Error>(|n| Ok(MonotoneMap::identity(n)), |g| Ok(g.map()), compose)
            .expect("normal form words are composable")
    }
}

pub fn epi_mono_factorize(f: &MonotoneMap) -> Factorization {
    let degeneracies: Vec<usize> =
        f.image.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(j, _)| j).collect();
    let mut faces: Vec<usize> = (0..=f.target.0).filter(|v| !f.image.contains(v)).collect();
    faces.reverse();
    Factorization {
        source: f.source.0,
        middle: f.source.0 - degeneracies.len(),
        target: f.target.0,
        degeneracies,
        faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(m: usize, n: usize, image: &[usize]) -> MonotoneMap {
        MonotoneMap::new(m, n, image.to_vec()).unwrap()
    }

    #[test]
    fn face_examples() {
        assert_eq!(face_map(1, 0).unwrap(), mm(0, 1, &[1]));
        assert_eq!(face_map(2, 1).unwrap(), mm(1, 2, &[0, 2]));
        assert_eq!(face_map(1, 1).unwrap(), mm(0, 1, &[0]));
        assert_eq!(face_map(2, 3), Err(Error::IndexOutOfRange { index: 3, max: 2 }));
        assert!(face_map(0, 0).is_err());
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_map(1, 0).unwrap(), mm(2, 1, &[0, 0, 1]));
        assert_eq!(degeneracy_map(0, 0).unwrap(), mm(1, 0, &[0, 0]));
        assert_eq!(degeneracy_map(2, 2).unwrap(), mm(3, 2, &[0, 1, 2, 2]));
        assert!(degeneracy_map(1, 2).is_err());
    }

    #[test]
    fn compose_examples() {
        let c = compose(&face_map(2, 0).unwrap(), &face_map(1, 0).unwrap()).unwrap();
        assert_eq!(c, mm(0, 2, &[2]));
        let c = compose(&degeneracy_map(0, 0).unwrap(), &face_map(1, 0).unwrap()).unwrap();
        assert!(c.is_identity());
        let a = compose(&face_map(2, 2).unwrap(), &face_map(1, 0).unwrap()).unwrap();
        let b = compose(&face_map(2, 0).unwrap(), &face_map(1, 1).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.image(), &[1]);
        assert!(compose(&face_map(2, 0).unwrap(), &face_map(2, 0).unwrap()).is_err());
    }

    #[test]
    fn identity_suite() {
        assert!(verify_simplicial_identities(4).passed);
        assert!(verify_simplicial_identities(1).passed);
    }

    #[test]
    fn corrupted_face_table_fails() {
        let report = verify_simplicial_identities_with(4, |g| match g {
            Generator::Face { n: 2, i: 1 } => face_map(2, 0),
            other => Ok(other.map()),
        });
        assert!(!report.passed);
        assert!(report.counterexample.unwrap().identity.contains("d(2,"));
    }

    #[test]
    fn factorization_examples() {
        let id = MonotoneMap::identity(2);
        let f = epi_mono_factorize(&id);
        assert!(f.degeneracies.is_empty() && f.faces.is_empty());
        let f = epi_mono_factorize(&face_map(2, 1).unwrap());
        assert!(f.degeneracies.is_empty());
        assert_eq!(f.faces, vec![1]);
        assert_eq!(f.word(), vec![Generator::Face { n: 2, i: 1 }]);
        let g = mm(2, 2, &[0, 0, 2]);
        let f = epi_mono_factorize(&g);
        assert_eq!(f.degeneracies, vec![0]);
        assert_eq!(f.faces, vec![1]);
        assert_eq!(f.word(), vec![Generator::Face { n: 2, i: 1 }, Generator::Degeneracy { n: 1, i: 0 }]);
        assert_eq!(f.recompose(), g);
    }

    #[test]
    fn monotone_counts_are_binomial() {
        // |Hom([m],[n])| = C(m+n+1, m+1)
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(all_monotone(m, n).len(), binom(m + n + 1, m + 1));
            }
        }
    }

    #[test]
    fn generators_have_the_right_shape() {
        for n in 1..=4 {
            for i in 0..=n {
                assert!(face_map(n, i).unwrap().is_injective());
                assert!(!face_map(n, i).unwrap().image().contains(&i));
            }
        }
        for n in 0..=4 {
            for i in 0..=n {
                let s = degeneracy_map(n, i).unwrap();
                assert!(s.is_surjective());
                assert_eq!(s.image().iter().filter(|&&v| v == i).count(), 2);
            }
        }
    }
}
