//! Finite posets presented by Hasse diagrams, with the constructions used
//! as exit-path categories: face posets, opposites, products, up-sets and
//! monotone maps.
//!
//! Everything iterates in declaration order. Strict chains are enumerated by
//! length, then lexicographically by element index; bar and cobar bases
//! downstream depend on this order.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// Covering pairs `(lower, upper)`, sorted.
    covers: Vec<(usize, usize)>,
    cover_ids: HashMap<(usize, usize), usize>,
    leq: Vec<Vec<bool>>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    linear: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    /// Validates a presentation and returns the poset together with the
    /// redundant relations that were dropped to restore Hasse minimality.
    pub fn build(
        name: &str,
        elements: Vec<String>,
        relations: &[(String, String)],
    ) -> Result<(Poset, Vec<(String, String)>)> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let lookup = |s: &String| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.clone()));
        let mut rel: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (a, b) in relations {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::Cycle(a.clone()));
            }
            rel.insert((i, j));
        }
        let n = elements.len();
        let mut succ = vec![Vec::new(); n];
        for &(i, j) in &rel {
            succ[i].push(j);
        }
        let leq = reachability(&succ);
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(elements[i].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        let mut removed = Vec::new();
        for &(i, j) in &rel {
            let implied = (0..n).any(|c| c != i && c != j && leq[i][c] && leq[c][j]);
            if implied {
                removed.push((elements[i].clone(), elements[j].clone()));
            } else {
                covers.push((i, j));
            }
        }
        Ok((Self::assemble(name.to_string(), elements, index, covers, leq), removed))
    }

    pub fn new(name: &str, elements: Vec<String>, relations: &[(String, String)]) -> Result<Poset> {
        Self::build(name, elements, relations).map(|(p, _)| p)
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(name: &str, elements: &[&str], relations: &[(&str, &str)]) -> Result<Poset> {
        let rel: Vec<(String, String)> = relations.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self::new(name, elements.iter().map(|s| s.to_string()).collect(), &rel)
    }

    fn assemble(
        name: String,
        elements: Vec<String>,
        index: HashMap<String, usize>,
        mut covers: Vec<(usize, usize)>,
        leq: Vec<Vec<bool>>,
    ) -> Poset {
        covers.sort();
        let n = elements.len();
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        let mut cover_ids = HashMap::new();
        for (k, &(a, b)) in covers.iter().enumerate() {
            up_covers[a].push(b);
            down_covers[b].push(a);
            cover_ids.insert((a, b), k);
        }
        for v in down_covers.iter_mut() {
            v.sort();
        }
        // Kahn's algorithm, always taking the smallest available index.
        let mut indeg: Vec<usize> = down_covers.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut linear = Vec::with_capacity(n);
        while let Some(i) = ready.pop_first() {
            linear.push(i);
            for &j in &up_covers[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        Poset { name, elements, index, covers, cover_ids, leq, up_covers, down_covers, linear }
    }

    /// The one-point poset.
    pub fn point(name: &str, element: &str) -> Poset {
        Self::from_strs(name, &[element], &[]).expect("a point is a poset")
    }

    /// The chain `e_0 < e_1 < ... < e_{n-1}`.
    pub fn chain(name: &str, elements: &[&str]) -> Poset {
        let rel: Vec<(&str, &str)> = elements.windows(2).map(|w| (w[0], w[1])).collect();
        Self::from_strs(name, elements, &rel).expect("a chain is a poset")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Poset {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_index(&self, lower: usize, upper: usize) -> Option<usize> {
        self.cover_ids.get(&(lower, upper)).copied()
    }

    pub fn up_covers(&self, p: usize) -> &[usize] {
        &self.up_covers[p]
    }

    pub fn down_covers(&self, p: usize) -> &[usize] {
        &self.down_covers[p]
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq[p][q]
    }

    /// A linear extension, deterministic in declaration order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// Every `P_{p/}` of a finite poset is finite.
    pub fn is_locally_finite(&self) -> bool {
        true
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.up_covers[p].is_empty()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.down_covers[p].is_empty()).collect()
    }

    /// All strict chains `p_0 < ... < p_n`, by length then lexicographically.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        self.chains_in(&vec![true; self.len()])
    }

    /// Strict chains whose elements all satisfy `member`.
    pub fn chains_in(&self, member: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn extend(p: &Poset, member: &[bool], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(stack.clone());
            let last = *stack.last().unwrap();
            for q in 0..p.len() {
                if member[q] && p.lt(last, q) {
                    stack.push(q);
                    extend(p, member, stack, out);
                    stack.pop();
                }
            }
        }
        for p0 in 0..n {
            if member[p0] {
                stack.push(p0);
                extend(self, member, &mut stack, &mut out);
                stack.pop();
            }
        }
        out.sort_by_key(|c| c.len());
        out
    }

    pub fn opposite(&self) -> Poset {
        let covers = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        let n = self.len();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        Self::assemble(name, self.elements.clone(), self.index.clone(), covers, leq)
    }

    /// Componentwise order on `P × Q`; element `(p, q)` has index `p * |Q| + q`.
    pub fn product(&self, other: &Poset) -> Poset {
        let (n, m) = (self.len(), other.len());
        let elements: Vec<String> = (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", self.elements[i], other.elements[j]))
            .collect();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut covers = Vec::new();
        for &(a, b) in &self.covers {
            for j in 0..m {
                covers.push((a * m + j, b * m + j));
            }
        }
        for i in 0..n {
            for &(a, b) in &other.covers {
                covers.push((i * m + a, i * m + b));
            }
        }
        let leq = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.leq[x / m][y / m] && other.leq[x % m][y % m]).collect())
            .collect();
        Self::assemble(format!("{}x{}", self.name, other.name), elements, index, covers, leq)
    }

    /// The induced sub-poset on `members` (kept in declaration order) and its embedding.
    pub fn induced(&self, name: &str, members: &[usize]) -> (Poset, Vec<usize>) {
        let mut emb: Vec<usize> = members.to_vec();
        emb.sort();
        emb.dedup();
        let elements: Vec<String> = emb.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let k = emb.len();
        let leq: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| self.leq[emb[a]][emb[b]]).collect()).collect();
        let mut covers = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a != b && leq[a][b] && !(0..k).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                    covers.push((a, b));
                }
            }
        }
        (Self::assemble(name.to_string(), elements, index, covers, leq), emb)
    }

    /// `P_{p/} = {q : p <= q}` with its embedding.
    pub fn up_set(&self, p: &str) -> Result<(Poset, Vec<usize>)> {
        let i = self.index_of(p)?;
        let members: Vec<usize> = (0..self.len()).filter(|&q| self.leq[i][q]).collect();
        Ok(self.induced(&format!("{}_{}/", self.name, p), &members))
    }
}

fn reachability(succ: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let n = succ.len();
    let mut leq = vec![vec![false; n]; n];
    for s in 0..n {
        let mut stack = vec![s];
        leq[s][s] = true;
        while let Some(v) = stack.pop() {
            for &w in &succ[v] {
                if !leq[s][w] {
                    leq[s][w] = true;
                    stack.push(w);
                }
            }
        }
    }
    leq
}

/// Face poset of the simplicial complex generated by `facets`: nonempty
/// simplices ordered by inclusion. Vertices are ordered by first appearance;
/// a simplex is named by its vertices joined with `-`.
pub fn face_poset(name: &str, facets: &[Vec<String>]) -> Result<Poset> {
    let mut vertex_order: Vec<String> = Vec::new();
    for facet in facets {
        for v in facet {
            if !vertex_order.contains(v) {
                vertex_order.push(v.clone());
            }
        }
    }
    if vertex_order.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let pos = |v: &String| vertex_order.iter().position(|x| x == v).unwrap();
    let mut simplices: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for facet in facets {
        let mut vs: Vec<usize> = facet.iter().map(pos).collect();
        vs.sort();
        vs.dedup();
        let k = vs.len();
        if k > 20 {
            return Err(Error::Unsupported(format!("facet with {k} vertices")));
        }
        for mask in 1u32..(1 << k) {
            let s: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| vs[b]).collect();
            simplices.insert((s.len(), s));
        }
    }
    let simplices: Vec<Vec<usize>> = simplices.into_iter().map(|(_, s)| s).collect();
    let label = |s: &[usize]| s.iter().map(|&v| vertex_order[v].as_str()).collect::<Vec<_>>().join("-");
    let elements: Vec<String> = simplices.iter().map(|s| label(s)).collect();
    let mut relations = Vec::new();
    for s in &simplices {
        if s.len() < 2 {
            continue;
        }
        for drop in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
            relations.push((label(&face), label(s)));
        }
    }
    Poset::new(name, elements, &relations)
}

/// Order-preserving map between finite posets.
#[derive(Clone, Debug)]
pub struct MonotoneMap {
    name: String,
    source: Arc<Poset>,
    target: Arc<Poset>,
    assignment: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(name: &str, source: Arc<Poset>, target: Arc<Poset>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::Shape(format!(
                "assignment covers {} of {} elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&q| q >= target.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        for &(a, b) in source.covers() {
            if !target.leq(assignment[a], assignment[b]) {
                return Err(Error::NotMonotone {
                    lower: source.element(a).to_string(),
                    upper: source.element(b).to_string(),
                    image_lower: target.element(assignment[a]).to_string(),
                    image_upper: target.element(assignment[b]).to_string(),
                });
            }
        }
        Ok(MonotoneMap { name: name.to_string(), source, target, assignment })
    }

    /// Builds a map from `(source id, target id)` pairs; every source element must be sent.
    pub fn from_pairs(name: &str, source: Arc<Poset>, target: Arc<Poset>, pairs: &[(String, String)]) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (p, q) in pairs {
            assignment[source.index_of(p)?] = Some(target.index_of(q)?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| Error::Shape(format!("element `{}` is not sent anywhere", source.element(i)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, source, target, assignment)
    }

    pub fn identity(p: Arc<Poset>) -> Self {
        let assignment = (0..p.len()).collect();
        MonotoneMap { name: format!("id_{}", p.name()), source: p.clone(), target: p, assignment }
    }

    /// The unique map to a one-point poset.
    pub fn collapse(p: Arc<Poset>, point: Arc<Poset>) -> Result<Self> {
        if point.len() != 1 {
            return Err(Error::Shape("collapse target must have exactly one element".into()));
        }
        let assignment = vec![0; p.len()];
        Self::new(&format!("collapse_{}", p.name()), p, point, assignment)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn apply(&self, p: usize) -> usize {
        self.assignment[p]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Poset {
        let facets: Vec<Vec<String>> = [["1", "2"], ["2", "3"], ["1", "3"]]
            .iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect();
        face_poset("circle", &facets).unwrap()
    }

    #[test]
    fn singleton_and_arrow() {
        let p = Poset::point("pt", "a");
        assert_eq!(p.len(), 1);
        assert!(p.covers().is_empty());
        let a = Poset::chain("arrow", &["a", "b"]);
        assert_eq!(a.covers(), &[(0, 1)]);
        assert!(a.leq(0, 1) && !a.leq(1, 0));
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::from_strs("bad", &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
        let err = Poset::from_strs("bad", &["a"], &[("a", "c")]).unwrap_err();
        assert_eq!(err, Error::UnknownElement("c".into()));
        let err = Poset::from_strs("bad", &["a", "a"], &[]).unwrap_err();
        assert_eq!(err, Error::DuplicateElement("a".into()));
    }

    #[test]
    fn redundant_covers_are_repaired_and_reported() {
        let rel: Vec<(String, String)> = [("a", "b"), ("b", "c"), ("a", "c")]
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        let (p, removed) = Poset::build("c3", vec!["a".into(), "b".into(), "c".into()], &rel).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(removed, vec![("a".to_string(), "c".to_string())]);
    }

    #[test]
    fn boundary_triangle_face_poset() {
        let c = circle();
        assert_eq!(c.len(), 6);
        assert_eq!(c.covers().len(), 6);
        assert_eq!(c.elements(), &["1", "2", "3", "1-2", "1-3", "2-3"]);
        let (up, emb) = c.up_set("1").unwrap();
        assert_eq!(up.elements(), &["1", "1-2", "1-3"]);
        assert_eq!(up.covers(), &[(0, 1), (0, 2)]);
        assert_eq!(emb, vec![0, 3, 4]);
    }

    #[test]
    fn point_face_poset_and_empty() {
        assert_eq!(face_poset("pt", &[vec!["1".to_string()]]).unwrap().len(), 1);
        assert_eq!(face_poset("e", &[]).unwrap_err(), Error::EmptyComplex);
    }

    #[test]
    fn octahedron_face_count_matches_subset_enumeration() {
        let mut facets = Vec::new();
        for a in ["x+", "x-"] {
            for b in ["y+", "y-"] {
                for c in ["z+", "z-"] {
                    facets.push(vec![a.to_string(), b.to_string(), c.to_string()]);
                }
            }
        }
        let p = face_poset("oct", &facets).unwrap();
        // Brute force: distinct nonempty subsets of facets.
        let mut subsets = BTreeSet::new();
        for f in &facets {
            for mask in 1..8u32 {
                let mut s: Vec<&String> = (0..3).filter(|b| mask & (1 << b) != 0).map(|b| &f[b]).collect();
                s.sort();
                subsets.insert(s);
            }
        }
        assert_eq!(p.len(), subsets.len());
        assert_eq!(p.len(), 26);
    }

    #[test]
    fn opposite_and_product() {
        let a = Poset::chain("arrow", &["a", "b"]);
        let op = a.opposite();
        assert_eq!(op.covers(), &[(1, 0)]);
        assert_eq!(op.opposite(), a);
        assert_eq!(op.opposite().name(), "arrow");
        let sq = a.product(&a);
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.covers().len(), 4);
        assert!(sq.leq(0, 3) && !sq.leq(1, 2));
    }

    #[test]
    fn chains_are_ordered_by_length_then_lex() {
        let c = circle();
        let chains = c.chains();
        assert_eq!(chains.len(), 12);
        assert_eq!(chains[0], vec![0]);
        assert_eq!(chains[6], vec![0, 3]);
        assert!(chains.windows(2).all(|w| (w[0].len(), &w[0]) < (w[1].len(), &w[1])));
    }

    #[test]
    fn monotone_maps() {
        let a = Arc::new(Poset::chain("arrow", &["a", "b"]));
        let pt = Arc::new(Poset::point("pt", "*"));
        assert!(MonotoneMap::new("id", a.clone(), a.clone(), vec![0, 1]).is_ok());
        assert!(MonotoneMap::collapse(a.clone(), pt).is_ok());
        let err = MonotoneMap::new("swap", a.clone(), a.clone(), vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { ref lower, .. } if lower == "a"));
    }
}
