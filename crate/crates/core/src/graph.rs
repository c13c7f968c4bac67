//! Simple undirected graphs, the named families and structural predicates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(min, max)` pairs in lexicographic order. That order
/// fixes the default edge labels used by every construction downstream.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.edges).cmp(&(other.n, &other.edges))
    }
}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Strict constructor: loops, out-of-range endpoints and repeated pairs are errors.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, pairs, true)
    }

    /// Like [`Graph::from_edges`] but silently drops repeated pairs.
    pub fn from_edges_lenient(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, pairs, false)
    }

    fn build(n: usize, pairs: &[(usize, usize)], strict: bool) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let e = normalize(u, v);
            if !set.insert(e) && strict {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_sorted_set(n, set))
    }

    fn from_sorted_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Graph of a symmetric 0/1 matrix with zero diagonal.
    pub fn from_adjacency(a: &IntMatrix) -> Result<Self> {
        let n = a.ensure_square()?;
        if !a.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut set = BTreeSet::new();
        for i in 0..n {
            if a[(i, i)] != 0 {
                return Err(Error::LoopEdge(i));
            }
            for j in i + 1..n {
                match a[(i, j)] {
                    0 => {}
                    1 => {
                        set.insert((i, j));
                    }
                    other => {
                        return Err(Error::InvalidParameter(format!("adjacency entry ({i}, {j}) = {other} is not 0/1")))
                    }
                }
            }
        }
        Ok(Self::from_sorted_set(n, set))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the edge `{u, v}` in the lexicographic edge order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        a
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let set = self.edges.iter().map(|&(u, v)| normalize(perm[u], perm[v])).collect();
        Self::from_sorted_set(self.n, set)
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let set = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| normalize(pos[u], pos[v]))
            .collect();
        Self::from_sorted_set(vertices.len(), set)
    }

    /// Component index for every vertex, components numbered by smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// The null graph (no vertices) counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Two-colouring with colour `false` on the smallest vertex of each component.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Connected, at least three vertices, every degree two.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.adj.iter().all(|a| a.len() == 2)
    }

    /// Connected tree with maximum degree at most two (includes `K_1` and `K_2`).
    pub fn is_path(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.m() + 1 == self.n && self.max_degree() <= 2
    }

    pub fn count_triangles(&self) -> u64 {
        let mut count = 0;
        for &(u, v) in &self.edges {
            // common neighbours w > v close a triangle u < v < w exactly once
            count += self.adj[u].iter().filter(|&&w| w > v && self.adj[v].binary_search(&w).is_ok()).count() as u64;
        }
        count
    }

    /// Edges whose removal disconnects their component.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut timer = 0;
        let mut out = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // iterative DFS frames: (vertex, parent, next neighbour position)
            let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(frame) = frames.last_mut() {
                let (v, parent, pos) = *frame;
                if pos < self.adj[v].len() {
                    frame.2 += 1;
                    let w = self.adj[v][pos];
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        frames.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(normalize(parent, v));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True if some vertex has three pairwise non-adjacent neighbours.
    pub fn has_induced_claw(&self) -> bool {
        for v in 0..self.n {
            let nb = &self.adj[v];
            for (i, &a) in nb.iter().enumerate() {
                for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    if nb[j + 1..].iter().any(|&c| !self.has_edge(a, c) && !self.has_edge(b, c)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn predicates(&self) -> Predicates {
        let degrees = self.degrees();
        let connected = self.is_connected();
        let regular = degrees.windows(2).all(|w| w[0] == w[1]);
        let semiregular_bipartite = self.bipartition().is_some_and(|side| {
            let deg_of = |s: bool| {
                let mut it = (0..self.n).filter(|&v| side[v] == s).map(|v| degrees[v]);
                let first = it.next();
                first.map_or(Some(None), |d| it.all(|x| x == d).then_some(Some(d)))
            };
            deg_of(false).is_some() && deg_of(true).is_some()
        });
        Predicates {
            is_connected: connected,
            is_bipartite: self.is_bipartite(),
            is_eulerian: connected && self.n > 0 && degrees.iter().all(|d| d % 2 == 0),
            is_claw_free: !self.has_induced_claw(),
            is_regular: regular,
            is_semiregular_bipartite: semiregular_bipartite,
            is_tree: connected && self.n > 0 && self.m() + 1 == self.n,
            is_unicyclic: connected && self.m() == self.n && self.n > 0,
        }
    }

    /// `self` followed by `other`, whose vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let set = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + off, v + off))).collect();
        Self::from_sorted_set(self.n + other.n, set)
    }
}

/// Structural predicates of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub is_connected: bool,
    pub is_bipartite: bool,
    /// Connected with every degree even. Disconnected graphs are never Eulerian.
    pub is_eulerian: bool,
    pub is_claw_free: bool,
    pub is_regular: bool,
    pub is_semiregular_bipartite: bool,
    pub is_tree: bool,
    pub is_unicyclic: bool,
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// `K_{1,k}`: centre 0, leaves `1..=k`.
    Star(usize),
    CompleteBipartite(usize, usize),
    /// `K_{k,k}` minus a perfect matching: `i ~ k + j` iff `i != j`.
    Crown(usize),
    /// `C_k x K_2`: outer cycle `0..k`, inner cycle `k..2k`, spokes `i ~ k + i`.
    Prism(usize),
}

impl Family {
    pub fn generate(self) -> Result<Graph> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        let mut pairs = Vec::new();
        let n = match self {
            Family::Cycle(k) => {
                if k < 3 {
                    return bad("cycle needs at least 3 vertices");
                }
                pairs.extend((0..k).map(|i| (i, (i + 1) % k)));
                k
            }
            Family::Path(k) => {
                if k < 1 {
                    return bad("path needs at least 1 vertex");
                }
                pairs.extend((1..k).map(|i| (i - 1, i)));
                k
            }
            Family::Complete(k) => {
                if k < 1 {
                    return bad("complete graph needs at least 1 vertex");
                }
                for i in 0..k {
                    pairs.extend((i + 1..k).map(|j| (i, j)));
                }
                k
            }
            Family::Star(k) => {
                if k < 1 {
                    return bad("star needs at least 1 leaf");
                }
                pairs.extend((1..=k).map(|i| (0, i)));
                k + 1
            }
            Family::CompleteBipartite(a, b) => {
                if a < 1 || b < 1 {
                    return bad("complete bipartite parts must be non-empty");
                }
                for i in 0..a {
                    pairs.extend((0..b).map(|j| (i, a + j)));
                }
                a + b
            }
            Family::Crown(k) => {
                if k < 1 {
                    return bad("crown needs k >= 1");
                }
                for i in 0..k {
                    pairs.extend((0..k).filter(|&j| j != i).map(|j| (i, k + j)));
                }
                2 * k
            }
            Family::Prism(k) => {
                if k < 3 {
                    return bad("prism needs k >= 3");
                }
                for i in 0..k {
                    pairs.push((i, (i + 1) % k));
                    pairs.push((k + i, k + (i + 1) % k));
                    pairs.push((i, k + i));
                }
                2 * k
            }
        };
        Graph::from_edges(n, &pairs)
    }

    /// Parses `name` plus its numeric parameters, e.g. `("complete_bipartite", [2, 3])`.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Self> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("family {name} takes {k} parameter(s)")))
            }
        };
        let fam = match name {
            "cycle" => arity(1).map(|_| Family::Cycle(params[0]))?,
            "path" => arity(1).map(|_| Family::Path(params[0]))?,
            "complete" => arity(1).map(|_| Family::Complete(params[0]))?,
            "star" => arity(1).map(|_| Family::Star(params[0]))?,
            "complete_bipartite" | "bipartite" => arity(2).map(|_| Family::CompleteBipartite(params[0], params[1]))?,
            "crown" => arity(1).map(|_| Family::Crown(params[0]))?,
            "prism" => arity(1).map(|_| Family::Prism(params[0]))?,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        };
        Ok(fam)
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `name:p1[,p2]`, e.g. `cycle:5` or `complete_bipartite:2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Family::from_name(name.trim(), &params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn net() -> Graph {
        g(6, &[(0, 1), (0, 2), (1, 2), (2, 5), (1, 3), (0, 4)])
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::LoopEdge(0)));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::from_edges_lenient(3, &[(0, 1), (1, 0)]).unwrap().m(), 1);
    }

    #[test]
    fn triangle_from_edges_equals_cycle_three() {
        let t = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(t, Family::Cycle(3).generate().unwrap());
        assert_eq!(t, Family::Complete(3).generate().unwrap());
    }

    #[test]
    fn degrees_examples() {
        assert_eq!(Family::Star(3).generate().unwrap().degrees(), vec![3, 1, 1, 1]);
        assert!(Family::Cycle(7).generate().unwrap().degrees().iter().all(|&d| d == 2));
        let mut d = net().degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 3, 3, 3]);
    }

    #[test]
    fn predicate_examples() {
        let star = Family::Star(3).generate().unwrap().predicates();
        assert!(star.is_bipartite && !star.is_claw_free && star.is_tree);
        let c6 = Family::Cycle(6).generate().unwrap().predicates();
        assert!(c6.is_eulerian && c6.is_bipartite && c6.is_unicyclic);
        let two_triangles = Family::Cycle(3).generate().unwrap().disjoint_union(&Family::Cycle(3).generate().unwrap());
        assert!(!two_triangles.predicates().is_eulerian);
        assert!(Family::CompleteBipartite(2, 3).generate().unwrap().predicates().is_semiregular_bipartite);
        assert!(!Family::Path(4).generate().unwrap().predicates().is_semiregular_bipartite);
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(Family::Cycle(3).generate().unwrap().count_triangles(), 1);
        assert_eq!(Family::Complete(4).generate().unwrap().count_triangles(), 4);
        assert_eq!(net().count_triangles(), 1);
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(Family::Path(3).generate().unwrap().bridges(), vec![(0, 1), (1, 2)]);
        assert!(Family::Cycle(5).generate().unwrap().bridges().is_empty());
        let paw = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert_eq!(paw.bridges(), vec![(2, 3)]);
    }

    #[test]
    fn union_examples() {
        let c3 = Family::Cycle(3).generate().unwrap();
        let u = c3.disjoint_union(&c3);
        assert_eq!((u.n(), u.m(), u.component_count()), (6, 6, 2));
        assert_eq!(c3.disjoint_union(&Graph::empty(0)), c3);
    }

    #[test]
    fn family_shapes() {
        let crown1 = Family::Crown(1).generate().unwrap();
        assert_eq!((crown1.n(), crown1.m()), (2, 0));
        let crown2 = Family::Crown(2).generate().unwrap();
        assert_eq!((crown2.n(), crown2.m(), crown2.component_count()), (4, 2, 2));
        let prism = Family::Prism(3).generate().unwrap();
        assert_eq!((prism.n(), prism.m()), (6, 9));
        assert!(prism.predicates().is_regular);
        assert!(Family::Cycle(2).generate().is_err());
        assert!(Family::Prism(2).generate().is_err());
        assert!(Family::Star(0).generate().is_err());
        assert_eq!("complete_bipartite:2,3".parse::<Family>().unwrap(), Family::CompleteBipartite(2, 3));
    }
}
