//! Cell-complex diagrams and their colimits, spheres as glued disks, handle
//! attachment and CW recipes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosimplicial::Cosimplicial;
use crate::error::{Error, Result};
use crate::fincat::{colimit, factor_through, Category, Cocone, Diagram, SSetCategory};
use crate::simplex::MonotoneMap;
use crate::simplicial::{SimplicialMap, TruncSimplicialSet};

pub const CW_FORMAT: &str = "homcat.cw/1";

/// Nodes carry a level `l` (labelled by the cell `F(l)`); an edge
/// `(s, t, j)` joins a level-`l` node to a level-`l+1` node and is labelled
/// by `F(d_{l+1,j})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexDiagram {
    pub levels: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl CellComplexDiagram {
    pub fn validate(&self, max_level: usize) -> Result<()> {
        if let Some(k) = self.levels.iter().position(|&l| l > max_level) {
            return Err(Error::InvalidDiagram(format!("node {k} sits above level {max_level}")));
        }
        for &(s, t, j) in &self.edges {
            let (ls, lt) = match (self.levels.get(s), self.levels.get(t)) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err(Error::InvalidDiagram(format!("edge ({s},{t}) names a missing node"))),
            };
            if lt != ls + 1 {
                return Err(Error::InvalidDiagram(format!("edge ({s},{t}) joins levels {ls} and {lt}")));
            }
            if j > lt {
                return Err(Error::InvalidDiagram(format!("edge ({s},{t}) uses face {j} of a level-{lt} cell")));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn to_diagram<C: Category>(&self, f: &Cosimplicial<C>) -> Result<Diagram<C::Obj, C::Mor>> {
        self.validate(f.level())?;
        Ok(Diagram {
            nodes: self.levels.iter().map(|&l| f.cell(l).clone()).collect(),
            edges: self.edges.iter().map(|&(s, t, j)| (s, t, f.face(self.levels[t], j).clone())).collect(),
        })
    }
}

/// `colim Φ` with its verified cocone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex<O, M> {
    pub diagram: Diagram<O, M>,
    pub colimit: Cocone<O, M>,
    pub dimension: usize,
}

pub fn colim_cell_complex<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    phi: &CellComplexDiagram,
) -> Result<CellComplex<C::Obj, C::Mor>> {
    let diagram = phi.to_diagram(f)?;
    let colimit = colimit(c, &diagram)?;
    Ok(CellComplex { diagram, colimit, dimension: phi.dimension() })
}

/// The face poset of `∂Δ[k+1]`: one node per proper face, top faces first.
/// Returns the diagram and each node's vertex set.
pub fn sphere_diagram(k: usize) -> (CellComplexDiagram, Vec<Vec<usize>>) {
    let n = k + 2;
    let mut faces: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
        .map(|mask| (0..n).filter(|v| mask & (1 << v) != 0).collect::<Vec<usize>>())
        .collect();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let levels = faces.iter().map(|s| s.len() - 1).collect();
    let mut edges = Vec::new();
    for (si, s) in faces.iter().enumerate() {
        for (ti, t) in faces.iter().enumerate() {
            if t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v)) {
                let j = t.iter().position(|v| !s.contains(v)).expect("one extra vertex");
                edges.push((si, ti, j));
            }
        }
    }
    (CellComplexDiagram { levels, edges }, faces)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sphere<O, M> {
    pub complex: CellComplex<O, M>,
    /// `⊂_k: S^k → F(k+1)`.
    pub inclusion: M,
}

/// `S^k` as the colimit of `k`-disks glued along their boundaries, with its
/// inclusion into `F(k+1)`.
pub fn boundary_sphere<C: Category>(c: &C, f: &Cosimplicial<C>, k: usize) -> Result<Sphere<C::Obj, C::Mor>> {
    if k + 1 > f.level() {
        return Err(Error::LevelMismatch(format!("S^{k} needs F({}) but the level is {}", k + 1, f.level())));
    }
    let (phi, faces) = sphere_diagram(k);
    let complex = colim_cell_complex(c, f, &phi)?;
    let legs = faces
        .iter()
        .map(|s| f.image(c, &MonotoneMap::new(s.len() - 1, k + 1, s.clone())?))
        .collect::<Result<Vec<_>>>()?;
    let disk = Cocone { apex: f.cell(k + 1).clone(), legs };
    let inclusion = factor_through(c, &complex.colimit, &disk)?;
    Ok(Sphere { complex, inclusion })
}

/// A simplicial map out of `source` fixed by the images of its nondegenerate
/// simplices; degenerate simplices follow through the degeneracies.
pub fn extend_from_nondegenerate(
    source: Arc<TruncSimplicialSet>,
    target: Arc<TruncSimplicialSet>,
    images: &BTreeMap<String, String>,
) -> Result<SimplicialMap> {
    let witnesses = source.degenerate_witnesses();
    let mut components: Vec<Vec<u32>> = Vec::with_capacity(source.level() + 1);
    for n in 0..=source.level() {
        let mut comp = Vec::with_capacity(source.count(n));
        for s in 0..source.count(n) as u32 {
            let v = match witnesses[n][s as usize].first() {
                Some(&(i, rho)) => target
                    .degeneracy(n - 1, i, components[n - 1][rho as usize])
                    .ok_or(Error::DegeneraciesMissing)?,
                None => {
                    let name = source.name(n, s);
                    let t = images
                        .get(name)
                        .ok_or_else(|| Error::Parse(format!("field alpha: no image for simplex {name}")))?;
                    target
                        .index_of(n, t)
                        .ok_or_else(|| Error::Parse(format!("field alpha: unknown target simplex {t} at level {n}")))?
                }
            };
            comp.push(v);
        }
        components.push(comp);
    }
    if let Some(extra) = images.keys().find(|k| (0..=source.level()).all(|n| source.index_of(n, k).is_none())) {
        return Err(Error::Parse(format!("field alpha: {extra} is not a simplex of the sphere")));
    }
    SimplicialMap::new(source, target, components)
}

/// `Δ[k]` with its interior simplices renamed after the new cell.
fn named_disk(c: &SSetCategory, k: usize, name: &str) -> Result<Arc<TruncSimplicialSet>> {
    let disk = c.standard(k);
    let boundary = c.boundary(k);
    let top: String = (0..=k).map(|v| v.to_string()).collect();
    let names = (0..=disk.level())
        .map(|n| {
            disk.names(n)
                .iter()
                .map(|s| {
                    if boundary.index_of(n, s).is_some() {
                        s.clone()
                    } else if *s == top {
                        name.to_string()
                    } else {
                        format!("{name}:{s}")
                    }
                })
                .collect()
        })
        .collect();
    Ok(Arc::new(disk.with_names(names)?))
}

/// `X ⊔_α Δ[k]` for `α: ∂Δ[k] → X`.
#[derive(Clone, Debug)]
pub struct Attachment {
    pub result: Arc<TruncSimplicialSet>,
    pub cocone: Cocone<Arc<TruncSimplicialSet>, SimplicialMap>,
}

pub fn attach_handle(
    c: &SSetCategory,
    x: &Arc<TruncSimplicialSet>,
    k: usize,
    alpha: &SimplicialMap,
    name: &str,
) -> Result<Attachment> {
    let sphere = c.boundary(k);
    if **alpha.source() != *sphere || alpha.target() != x {
        return Err(Error::Mismatch(format!("attaching map must run from ∂Δ[{k}] into the current complex")));
    }
    let disk = named_disk(c, k, name)?;
    let plain = c.standard(k);
    let incl = SimplicialMap::representable(&MonotoneMap::identity(k), sphere.clone(), plain)?;
    let incl = SimplicialMap::new(sphere.clone(), disk.clone(), incl.components().to_vec())?;
    let d = Diagram { nodes: vec![x.clone(), sphere, disk], edges: vec![(1, 0, alpha.clone()), (1, 2, incl)] };
    let cocone = colimit(c, &d)?;
    Ok(Attachment { result: cocone.apex.clone(), cocone })
}

/// One handle of a recipe: its dimension, a name for its top simplex, and
/// the images of the nondegenerate simplices of `∂Δ[k]` by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub alpha: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CwRecipe {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub level: usize,
    pub cells: Vec<CellSpec>,
}

impl CwRecipe {
    pub fn from_json(text: &str) -> Result<Self> {
        let r: CwRecipe = serde_json::from_str(text)?;
        if let Some(fmt) = &r.format {
            if fmt != CW_FORMAT {
                return Err(Error::Parse(format!("field format: expected {CW_FORMAT}, found {fmt}")));
            }
        }
        Ok(r)
    }
}

/// The skeleta after each attachment, last one the complex.
#[derive(Clone, Debug)]
pub struct CwBuild {
    pub stages: Vec<Arc<TruncSimplicialSet>>,
}

impl CwBuild {
    pub fn result(&self) -> &Arc<TruncSimplicialSet> {
        self.stages.last().expect("at least the starting object")
    }
}

pub fn build_cw(c: &SSetCategory, start: Arc<TruncSimplicialSet>, cells: &[CellSpec]) -> Result<CwBuild> {
    if start.level() != c.level() {
        return Err(Error::LevelMismatch(format!("start at level {}, category at {}", start.level(), c.level())));
    }
    let mut stages = vec![start];
    for (idx, cell) in cells.iter().enumerate() {
        if cell.k > c.level() {
            return Err(Error::LevelMismatch(format!("cell {idx} has dimension {} above the level", cell.k)));
        }
        let x = stages.last().expect("nonempty").clone();
        let alpha = extend_from_nondegenerate(c.boundary(cell.k), x.clone(), &cell.alpha)?;
        let name = cell.name.clone().unwrap_or_else(|| format!("e{idx}"));
        stages.push(attach_handle(c, &x, cell.k, &alpha, &name)?.result);
    }
    Ok(CwBuild { stages })
}

/// Builds a recipe from the empty complex.
pub fn build_recipe(recipe: &CwRecipe) -> Result<CwBuild> {
    let c = SSetCategory::new(recipe.level);
    build_cw(&c, Arc::new(TruncSimplicialSet::empty(recipe.level)), &recipe.cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{bettis, homology, sset_homology, ChainComplex, Coefficients};
    use crate::cosimplicial::sset_standard;
    use crate::fincat::find_isomorphism;
    use crate::nerve::nerve;
    use num_bigint::BigInt;

    fn betti(x: &TruncSimplicialSet) -> Vec<usize> {
        bettis(&sset_homology(x, Coefficients::Integers, false).unwrap())
    }

    #[test]
    fn spheres() {
        let c = SSetCategory::new(3);
        let f = sset_standard(&c, 3).unwrap();
        let s0 = boundary_sphere(&c, &f, 0).unwrap();
        assert_eq!(s0.complex.colimit.apex.counts()[0], 2);
        let s1 = boundary_sphere(&c, &f, 1).unwrap();
        assert_eq!(betti(&s1.complex.colimit.apex), vec![1, 1, 0]);
        assert!(find_isomorphism(&c, &s1.complex.colimit.apex, &c.boundary(2)).unwrap().is_some());
        let s2 = boundary_sphere(&c, &f, 2).unwrap();
        let h = sset_homology(&s2.complex.colimit.apex, Coefficients::Integers, false).unwrap();
        assert_eq!(bettis(&h), vec![1, 0, 1]);
    }

    #[test]
    fn sphere_inclusion_kills_the_class() {
        let c = SSetCategory::new(3);
        let f = sset_standard(&c, 3).unwrap();
        for k in 0..=1 {
            let s = boundary_sphere(&c, &f, k).unwrap();
            let src = ChainComplex::from_sset(&s.complex.colimit.apex, Coefficients::Integers, true).unwrap();
            let dst = ChainComplex::from_sset(f.cell(k + 1), Coefficients::Integers, true).unwrap();
            let hs = homology(&src, k).unwrap();
            let hd = homology(&dst, k).unwrap();
            assert!(!hs.is_zero() && hd.is_zero());
            let m = crate::chain::induced_homology_map(&crate::chain::chain_map(&s.inclusion), &dst, &hs, &hd).unwrap();
            assert!(m.is_zero());
        }
    }

    #[test]
    fn circle_from_a_handle() {
        let c = SSetCategory::new(2);
        let cells = vec![
            CellSpec { k: 0, name: Some("v".into()), alpha: BTreeMap::new() },
            CellSpec {
                k: 1,
                name: Some("a".into()),
                alpha: [("0", "v"), ("1", "v")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            },
        ];
        let b = build_cw(&c, Arc::new(TruncSimplicialSet::empty(2)), &cells).unwrap();
        assert_eq!(b.stages.len(), 3);
        assert_eq!(betti(b.result()), vec![1, 1]);
        assert!(b.result().index_of(1, "a").is_some());
    }

    #[test]
    fn disk_and_identity_attachments() {
        let c = SSetCategory::new(2);
        let x = c.boundary(2);
        let id = SimplicialMap::identity(x.clone());
        let disk = attach_handle(&c, &x, 2, &id, "D").unwrap();
        assert_eq!(betti(&disk.result)[..2], [1, 0]);
        assert!(find_isomorphism(&c, &disk.result, &c.standard(2)).unwrap().is_some());
        let none = build_cw(&c, c.standard(0), &[]).unwrap();
        assert_eq!(none.result().counts(), c.standard(0).counts());
    }

    #[test]
    fn torus_and_klein() {
        let cell = |k, name: &str, alpha: &[(&str, &str)]| CellSpec {
            k,
            name: Some(name.into()),
            alpha: alpha.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        };
        let loops = |names: [&str; 3]| -> Vec<CellSpec> {
            let mut v = vec![cell(0, "v", &[])];
            for n in names {
                v.push(cell(1, n, &[("0", "v"), ("1", "v")]));
            }
            v
        };
        let tri = |name: &str, e01, e02, e12| {
            cell(2, name, &[("0", "v"), ("1", "v"), ("2", "v"), ("01", e01), ("02", e02), ("12", e12)])
        };
        let mut torus = loops(["a", "b", "c"]);
        torus.push(tri("U", "a", "c", "b"));
        torus.push(tri("L", "b", "c", "a"));
        let t = build_recipe(&CwRecipe { format: None, level: 3, cells: torus }).unwrap();
        assert_eq!(betti(t.result()), vec![1, 2, 1]);

        let mut klein = loops(["a", "b", "c"]);
        klein.push(tri("U", "a", "c", "b"));
        klein.push(tri("L", "a", "b", "c"));
        let k = build_recipe(&CwRecipe { format: None, level: 3, cells: klein }).unwrap();
        let h = sset_homology(k.result(), Coefficients::Integers, false).unwrap();
        assert_eq!(h[1].betti, 1);
        assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[2].betti, 0);
    }

    #[test]
    fn two_points_and_an_edge() {
        let c = SSetCategory::new(2);
        let f = sset_standard(&c, 2).unwrap();
        let free = CellComplexDiagram { levels: vec![0, 0, 1], edges: vec![(0, 2, 0), (1, 2, 1)] };
        let x = colim_cell_complex(&c, &f, &free).unwrap();
        assert!(find_isomorphism(&c, &x.colimit.apex, &c.standard(1)).unwrap().is_some());
        let glued = CellComplexDiagram { levels: vec![0, 1], edges: vec![(0, 1, 0), (0, 1, 1)] };
        let y = colim_cell_complex(&c, &f, &glued).unwrap();
        assert_eq!(betti(&y.colimit.apex)[..2], [1, 1]);
        let bad = CellComplexDiagram { levels: vec![0, 2], edges: vec![(0, 1, 0)] };
        assert!(matches!(colim_cell_complex(&c, &f, &bad), Err(Error::InvalidDiagram(_))));
        let single = colim_cell_complex(&c, &f, &CellComplexDiagram { levels: vec![0], edges: vec![] }).unwrap();
        assert_eq!(nerve(&c, &f, &single.colimit.apex).unwrap().sset.counts(), vec![1, 1, 1]);
    }
}
