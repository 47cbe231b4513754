use std::fmt;

use super::{Category, Cocone, Diagram, Product};
use crate::budget::DEFAULT_BOUND;
use crate::error::{Error, Result};

/// Finite sets `{0, …, m-1}` and all functions between them. Objects of any
/// size may be used; the scan set is `0..=k`.
#[derive(Clone, Debug)]
pub struct FinSet {
    k: usize,
    bound: u64,
}

impl FinSet {
    pub fn new(k: usize) -> Self {
        FinSet { k, bound: DEFAULT_BOUND }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn cap(&self) -> usize {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Function {
    pub src: usize,
    pub dst: usize,
    pub map: Vec<usize>,
}

impl Function {
    pub fn new(src: usize, dst: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != src || map.iter().any(|&v| v >= dst) {
            return Err(Error::Mismatch(format!("{map:?} is not a function {src} → {dst}")));
        }
        Ok(Function { src, dst, map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
        write!(f, "{}→{}:[{}]", self.src, self.dst, parts.join(","))
    }
}

impl Category for FinSet {
    type Obj = usize;
    type Mor = Function;

    fn name(&self) -> String {
        format!("finset(k={})", self.k)
    }

    fn objects(&self) -> Vec<usize> {
        (0..=self.k).collect()
    }

    fn bound(&self) -> u64 {
        self.bound
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<Function>> {
        let (a, b) = (*a, *b);
        let count = (b as u128).checked_pow(a as u32).unwrap_or(u128::MAX);
        if count > self.bound as u128 {
            return Err(Error::ResourceLimit { bound: self.bound });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut map = vec![0usize; a];
        if a > 0 && b == 0 {
            return Ok(out);
        }
        loop {
            out.push(Function { src: a, dst: b, map: map.clone() });
            // odometer, last position fastest
            let mut pos = a;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                map[pos] += 1;
                if map[pos] < b {
                    break;
                }
                map[pos] = 0;
            }
        }
    }

    fn source(&self, f: &Function) -> usize {
        f.src
    }

    fn target(&self, f: &Function) -> usize {
        f.dst
    }

    fn compose(&self, g: &Function, f: &Function) -> Result<Function> {
        if f.dst != g.src {
            return Err(Error::Mismatch(format!("cannot compose {g} after {f}")));
        }
        Ok(Function { src: f.src, dst: g.dst, map: f.map.iter().map(|&x| g.map[x]).collect() })
    }

    fn identity(&self, a: &usize) -> Function {
        Function { src: *a, dst: *a, map: (0..*a).collect() }
    }

    fn obj_label(&self, a: &usize) -> String {
        a.to_string()
    }

    fn mor_label(&self, f: &Function) -> String {
        f.to_string()
    }

    fn nerve_label(&self, f: &Function) -> String {
        f.map.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Pairs `(i, j)` encoded as `i·b + j`.
    fn product_candidate(&self, a: &usize, b: &usize) -> Option<Result<Product<usize, Function>>> {
        let n = a * b;
        let p1 = Function { src: n, dst: *a, map: (0..n).map(|x| x / b).collect() };
        let p2 = Function { src: n, dst: *b, map: (0..n).map(|x| x % b).collect() };
        Some(Ok(Product { a: *a, b: *b, apex: n, p1, p2 }))
    }

    fn pair_candidate(&self, p: &Product<usize, Function>, f: &Function, g: &Function) -> Option<Result<Function>> {
        let map = f.map.iter().zip(&g.map).map(|(&x, &y)| x * p.b + y).collect();
        Some(Ok(Function { src: f.src, dst: p.apex, map }))
    }

    /// Disjoint union modulo the identifications along edges; classes are
    /// numbered by first appearance.
    fn colimit_candidate(&self, d: &Diagram<usize, Function>) -> Option<Result<Cocone<usize, Function>>> {
        let offsets: Vec<usize> = d
            .nodes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let total: usize = d.nodes.iter().sum();
        let mut uf = UnionFind::new(total);
        for (s, t, e) in &d.edges {
            for x in 0..d.nodes[*s] {
                uf.union(offsets[*s] + x, offsets[*t] + e.apply(x));
            }
        }
        let mut class = vec![usize::MAX; total];
        let mut next = 0;
        for x in 0..total {
            let r = uf.find(x);
            if class[r] == usize::MAX {
                class[r] = next;
                next += 1;
            }
        }
        let legs = d
            .nodes
            .iter()
            .enumerate()
            .map(|(k, &n)| Function { src: n, dst: next, map: (0..n).map(|x| class[uf.find(offsets[k] + x)]).collect() })
            .collect();
        Some(Ok(Cocone { apex: next, legs }))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Keeps the smaller root so that representatives are first occurrences.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{colimit, find_terminal, pairing, product, verify_category_laws};

    #[test]
    fn hom_counts() {
        let c = FinSet::new(3);
        assert_eq!(c.hom(&2, &3).unwrap().len(), 9);
        assert_eq!(c.hom(&0, &0).unwrap().len(), 1);
        assert_eq!(c.hom(&2, &0).unwrap().len(), 0);
        assert_eq!(c.hom(&2, &2).unwrap()[1].map, vec![0, 1]);
    }

    #[test]
    fn laws_and_terminal() {
        let c = FinSet::new(3);
        assert!(verify_category_laws(&c).unwrap().passed);
        assert_eq!(find_terminal(&c).unwrap(), Some(1));
    }

    #[test]
    fn products_and_pairs() {
        let c = FinSet::new(3);
        let p = product(&c, &2, &3).unwrap();
        assert_eq!(p.apex, 6);
        let f = Function::new(2, 2, vec![1, 0]).unwrap();
        let g = Function::new(2, 3, vec![2, 2]).unwrap();
        let h = pairing(&c, &p, &f, &g).unwrap();
        assert_eq!(h.map, vec![5, 2]);
    }

    #[test]
    fn gluing_two_intervals() {
        let c = FinSet::new(3);
        let end = Function::new(1, 2, vec![1]).unwrap();
        let start = Function::new(1, 2, vec![0]).unwrap();
        let d = Diagram { nodes: vec![2, 1, 2], edges: vec![(1, 0, end), (1, 2, start)] };
        let cocone = colimit(&c, &d).unwrap();
        assert_eq!(cocone.apex, 3);
    }

    #[test]
    fn oversized_hom_is_refused() {
        let c = FinSet::new(2).with_bound(100);
        assert_eq!(c.hom(&5, &3), Err(Error::ResourceLimit { bound: 100 }));
    }
}
