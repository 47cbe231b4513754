use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::Category;
use crate::budget::DEFAULT_BOUND;
use crate::error::{Error, Result};

pub const TABLE_FORMAT: &str = "homcat.table/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// On-disk form of a table category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<TableMorphism>,
    /// Triples `[g, f, g∘f]`.
    pub compose: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
    /// Optional scan set; defaults to every object.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_objects: Option<Vec<String>>,
}

/// A category given by explicit tables. Objects and morphisms are indices.
#[derive(Clone, Debug)]
pub struct TableCategory {
    objects: Vec<String>,
    morphisms: Vec<TableMorphism>,
    src: Vec<usize>,
    dst: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    identities: Vec<usize>,
    scan: Vec<usize>,
    homs: Vec<Vec<Vec<usize>>>,
    bound: u64,
}

impl TableCategory {
    pub fn from_file(file: &TableFile) -> Result<Self> {
        let obj_index: HashMap<&str, usize> =
            file.objects.iter().enumerate().map(|(k, o)| (o.as_str(), k)).collect();
        if obj_index.len() != file.objects.len() {
            return Err(Error::Parse("field objects: duplicate object id".into()));
        }
        let obj = |name: &str, field: &str| {
            obj_index.get(name).copied().ok_or_else(|| Error::Parse(format!("field {field}: unknown object {name:?}")))
        };
        let mut mor_index: HashMap<&str, usize> = HashMap::new();
        let (mut src, mut dst) = (Vec::new(), Vec::new());
        for (k, m) in file.morphisms.iter().enumerate() {
            if mor_index.insert(m.id.as_str(), k).is_some() {
                return Err(Error::Parse(format!("field morphisms[{k}]: duplicate id {:?}", m.id)));
            }
            src.push(obj(&m.src, &format!("morphisms[{k}].src"))?);
            dst.push(obj(&m.dst, &format!("morphisms[{k}].dst"))?);
        }
        let mor = |name: &str, field: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("field {field}: unknown morphism {name:?}")))
        };
        let mut compose = HashMap::new();
        for (k, [g, f, gf]) in file.compose.iter().enumerate() {
            let field = format!("compose[{k}]");
            let (g, f, gf) = (mor(g, &field)?, mor(f, &field)?, mor(gf, &field)?);
            if dst[f] != src[g] || src[gf] != src[f] || dst[gf] != dst[g] {
                return Err(Error::Parse(format!("field {field}: composite is mistyped")));
            }
            if compose.insert((g, f), gf).is_some() {
                return Err(Error::Parse(format!("field {field}: duplicate entry")));
            }
        }
        let mut identities = vec![usize::MAX; file.objects.len()];
        for (o, m) in &file.identities {
            let (o, m) = (obj(o, "identities")?, mor(m, "identities")?);
            if src[m] != o || dst[m] != o {
                return Err(Error::Parse(format!("field identities: {} is not an endomorphism", file.morphisms[m].id)));
            }
            identities[o] = m;
        }
        if let Some(k) = identities.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Parse(format!("field identities: no identity for {:?}", file.objects[k])));
        }
        let scan = match &file.test_objects {
            Some(list) => list.iter().map(|o| obj(o, "test_objects")).collect::<Result<_>>()?,
            None => (0..file.objects.len()).collect(),
        };
        let n = file.objects.len();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for k in 0..file.morphisms.len() {
            homs[src[k]][dst[k]].push(k);
        }
        Ok(TableCategory {
            objects: file.objects.clone(),
            morphisms: file.morphisms.clone(),
            src,
            dst,
            compose,
            identities,
            scan,
            homs,
            bound: DEFAULT_BOUND,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> TableFile {
        let mut compose: Vec<[String; 3]> = self
            .compose
            .iter()
            .map(|(&(g, f), &gf)| {
                [self.morphisms[g].id.clone(), self.morphisms[f].id.clone(), self.morphisms[gf].id.clone()]
            })
            .collect();
        compose.sort();
        TableFile {
            format: Some(TABLE_FORMAT.into()),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            compose,
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(o, &m)| (self.objects[o].clone(), self.morphisms[m].id.clone()))
                .collect(),
            test_objects: if self.scan.len() == self.objects.len() {
                None
            } else {
                Some(self.scan.iter().map(|&o| self.objects[o].clone()).collect())
            },
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    /// Overwrites one composition entry; used to build corrupted tables.
    pub fn set_composite(&mut self, g: usize, f: usize, gf: usize) {
        self.compose.insert((g, f), gf);
    }
}

impl Category for TableCategory {
    type Obj = usize;
    type Mor = usize;

    fn name(&self) -> String {
        format!("table({} objects, {} morphisms)", self.objects.len(), self.morphisms.len())
    }

    fn objects(&self) -> Vec<usize> {
        self.scan.clone()
    }

    fn bound(&self) -> u64 {
        self.bound
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<usize>> {
        self.homs
            .get(*a)
            .and_then(|r| r.get(*b))
            .cloned()
            .ok_or_else(|| Error::IndexOutOfRange { index: (*a).max(*b) as i64, max: self.objects.len() as i64 - 1 })
    }

    fn source(&self, f: &usize) -> usize {
        self.src[*f]
    }

    fn target(&self, f: &usize) -> usize {
        self.dst[*f]
    }

    fn compose(&self, g: &usize, f: &usize) -> Result<usize> {
        if self.dst[*f] != self.src[*g] {
            return Err(Error::Mismatch(format!(
                "cannot compose {} after {}",
                self.morphisms[*g].id, self.morphisms[*f].id
            )));
        }
        if let Some(&gf) = self.compose.get(&(*g, *f)) {
            return Ok(gf);
        }
        // identities compose without table entries
        if self.identities[self.src[*g]] == *g {
            return Ok(*f);
        }
        if self.identities[self.dst[*f]] == *f {
            return Ok(*g);
        }
        Err(Error::MissingMorphism(format!(
            "no composition entry for {} ∘ {}",
            self.morphisms[*g].id, self.morphisms[*f].id
        )))
    }

    fn identity(&self, a: &usize) -> usize {
        self.identities[*a]
    }

    fn obj_label(&self, a: &usize) -> String {
        self.objects[*a].clone()
    }

    fn mor_label(&self, f: &usize) -> String {
        self.morphisms[*f].id.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{find_terminal, verify_category_laws};

    fn walking_arrow() -> TableCategory {
        TableCategory::from_json(
            r#"{"objects":["a","b"],
                "morphisms":[{"id":"1a","src":"a","dst":"a"},{"id":"1b","src":"b","dst":"b"},{"id":"f","src":"a","dst":"b"}],
                "compose":[],
                "identities":{"a":"1a","b":"1b"}}"#,
        )
        .unwrap()
    }

    #[test]
    fn arrow_category() {
        let c = walking_arrow();
        assert!(verify_category_laws(&c).unwrap().passed);
        assert_eq!(find_terminal(&c).unwrap(), Some(1));
    }

    #[test]
    fn single_object() {
        let c = TableCategory::from_json(
            r#"{"objects":["x"],"morphisms":[{"id":"1","src":"x","dst":"x"}],"compose":[["1","1","1"]],"identities":{"x":"1"}}"#,
        )
        .unwrap();
        assert!(verify_category_laws(&c).unwrap().passed);
    }

    #[test]
    fn no_terminal_between_islands() {
        let c = TableCategory::from_json(
            r#"{"objects":["x","y"],"morphisms":[{"id":"1x","src":"x","dst":"x"},{"id":"1y","src":"y","dst":"y"}],"compose":[],"identities":{"x":"1x","y":"1y"}}"#,
        )
        .unwrap();
        assert_eq!(find_terminal(&c).unwrap(), None);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = TableCategory::from_json(r#"{"objects":["x"],"morphisms":[{"id":"1","src":"x","dst":"z"}],"compose":[],"identities":{"x":"1"}}"#)
            .unwrap_err();
        assert!(err.to_string().contains("morphisms[0].dst"), "{err}");
        let err = TableCategory::from_json("{\"objects\": [").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
