//! Orientations, the non-backtracking edge matrix and the graphs built from it:
//! the symmetric edge graph, the line graph and the Kronecker double cover.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;

/// Vertex bound for [`gamma_iterate`] when the caller does not pick one.
pub const DEFAULT_ITERATE_LIMIT: usize = 1 << 16;

/// One direction per edge. Arc `i` carries label `e_{i+1}`; index `m + i`
/// denotes its reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// Every edge directed from its smaller to its larger endpoint, in edge order.
    pub fn default_for(g: &Graph) -> Self {
        Orientation { arcs: g.edges().to_vec() }
    }

    /// Arbitrary arcs, labelled in the order given. They must cover `g`'s
    /// edges exactly once.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = vec![false; g.m()];
        for &(s, t) in arcs {
            if s == t {
                return Err(Error::OrientationMismatch);
            }
            match g.edge_index(s, t) {
                Some(k) if !seen[k] => seen[k] = true,
                _ => return Err(Error::OrientationMismatch),
            }
        }
        if arcs.len() != g.m() {
            return Err(Error::OrientationMismatch);
        }
        Ok(Orientation { arcs: arcs.to_vec() })
    }

    /// All edges directed from the colour-`false` side to the colour-`true`
    /// side of the canonical bipartition. `None` for non-bipartite graphs.
    pub fn bipartite(g: &Graph) -> Option<Self> {
        let side = g.bipartition()?;
        let arcs = g.edges().iter().map(|&(u, v)| if side[u] { (v, u) } else { (u, v) }).collect();
        Some(Orientation { arcs })
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Directed pair for index `i < 2m`; indices `m..2m` are the reverses.
    pub fn arc(&self, i: usize) -> (usize, usize) {
        let m = self.arcs.len();
        if i < m {
            self.arcs[i]
        } else {
            let (s, t) = self.arcs[i - m];
            (t, s)
        }
    }

    fn matches(&self, g: &Graph) -> bool {
        Orientation::from_arcs(g, &self.arcs).is_ok()
    }
}

/// The `2m x 2m` matrix `M` with `M[i][j] = 1` iff arc `j` may follow arc `i`
/// without reversing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAdjacencyMatrix {
    m: usize,
    matrix: IntMatrix,
}

/// `A0 = 𝔸 + 𝔻` and `B0 = 𝔹 + ℂ`, so that `M + Mᵀ = [[A0, B0], [B0, A0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBlocks {
    pub a0: IntMatrix,
    pub b0: IntMatrix,
}

pub fn edge_adjacency_matrix(g: &Graph, o: &Orientation) -> Result<EdgeAdjacencyMatrix> {
    if !o.matches(g) {
        return Err(Error::OrientationMismatch);
    }
    let m = o.m();
    let matrix = IntMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let (si, ti) = o.arc(i);
        let (sj, tj) = o.arc(j);
        i64::from(ti == sj && si != tj)
    });
    Ok(EdgeAdjacencyMatrix { m, matrix })
}

impl EdgeAdjacencyMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn a(&self) -> IntMatrix {
        self.matrix.block(0, 0, self.m, self.m)
    }

    pub fn b(&self) -> IntMatrix {
        self.matrix.block(0, self.m, self.m, self.m)
    }

    pub fn c(&self) -> IntMatrix {
        self.matrix.block(self.m, 0, self.m, self.m)
    }

    pub fn d(&self) -> IntMatrix {
        self.matrix.block(self.m, self.m, self.m, self.m)
    }

    /// `M + Mᵀ`, the adjacency matrix of the symmetric edge graph.
    pub fn symmetrized(&self) -> IntMatrix {
        &self.matrix + &self.matrix.transpose()
    }

    pub fn gamma_blocks(&self) -> GammaBlocks {
        GammaBlocks { a0: &self.a() + &self.d(), b0: &self.b() + &self.c() }
    }

    /// Checks the structural identities of `M` against the graph and
    /// orientation it came from. Returns a description of every identity
    /// that fails; an empty list means all hold.
    pub fn property_violations(&self, g: &Graph, o: &Orientation) -> Vec<String> {
        let mut bad = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                bad.push(what.to_string());
            }
        };
        let (a, b, c, d) = (self.a(), self.b(), self.c(), self.d());
        let m = self.m;
        let mm = &self.matrix;

        check(mm.is_binary(), "entries are 0/1");
        check(b == b.transpose(), "B symmetric");
        check(c == c.transpose(), "C symmetric");
        check(d == a.transpose(), "D equals A transposed");
        check(
            a.diagonal_is_zero() && b.diagonal_is_zero() && c.diagonal_is_zero() && d.diagonal_is_zero(),
            "block diagonals zero",
        );
        let j = IntMatrix::from_blocks(
            &IntMatrix::zeros(m, m),
            &IntMatrix::identity(m),
            &IntMatrix::identity(m),
            &IntMatrix::zeros(m, m),
        );
        check(mm.transpose() == &(&j * mm) * &j, "transpose equals JMJ");
        let rows_ok = (0..2 * m).all(|i| mm.row_sum(i) == g.degree(o.arc(i).1) as i64 - 1);
        check(rows_ok, "row sums equal head degree minus one");
        let sum = &(&(&a + &b) + &c) + &d;
        check(sum == line_adjacency_in_order(o), "block sum equals line graph adjacency");
        let disjoint =
            [(&a, &b), (&a, &c), (&a, &d), (&b, &c), (&b, &d), (&c, &d)].iter().all(|(x, y)| x.hadamard(y).is_zero());
        check(disjoint, "blocks pairwise disjoint");
        bad
    }
}

/// `A(L(X))` with vertices in the orientation's label order.
fn line_adjacency_in_order(o: &Orientation) -> IntMatrix {
    let m = o.m();
    IntMatrix::from_fn(m, m, |i, j| {
        let (a, b) = o.arcs[i];
        let (c, d) = o.arcs[j];
        let shared = usize::from(a == c || a == d) + usize::from(b == c || b == d);
        i64::from(i != j && shared == 1)
    })
}

/// γ(X) under the default orientation. Vertex `i < m` is `e_{i+1}`, vertex
/// `m + i` its reverse.
pub fn symmetric_edge_graph(g: &Graph) -> Graph {
    symmetric_edge_graph_with(g, &Orientation::default_for(g)).expect("default orientation matches")
}

/// γ(X) under an explicit orientation. Built from arc incidence directly so
/// that iterating stays sparse.
pub fn symmetric_edge_graph_with(g: &Graph, o: &Orientation) -> Result<Graph> {
    if !o.matches(g) {
        return Err(Error::OrientationMismatch);
    }
    let m = o.m();
    let mut out_arcs = vec![Vec::new(); g.n()];
    for i in 0..2 * m {
        out_arcs[o.arc(i).0].push(i);
    }
    let mut pairs = Vec::new();
    for i in 0..2 * m {
        let (s, t) = o.arc(i);
        for &j in &out_arcs[t] {
            if o.arc(j).1 != s {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_edges(2 * m, &pairs)
}

/// γ applied `k` times; fails before any step whose result would exceed `limit` vertices.
pub fn gamma_iterate(g: &Graph, k: usize, limit: usize) -> Result<Graph> {
    let mut cur = g.clone();
    for _ in 0..k {
        let next_n = 2 * cur.m();
        if next_n > limit {
            return Err(Error::SizeLimitExceeded { actual: next_n, limit });
        }
        cur = symmetric_edge_graph(&cur);
    }
    Ok(cur)
}

/// L(X), vertex `i` being edge `i` of `g`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut pairs = Vec::new();
    for v in 0..g.n() {
        let inc: Vec<usize> = g.neighbors(v).iter().map(|&w| g.edge_index(v, w).unwrap()).collect();
        for (x, &e) in inc.iter().enumerate() {
            for &f in &inc[x + 1..] {
                pairs.push((e, f));
            }
        }
    }
    // Two distinct edges of a simple graph share at most one endpoint.
    Graph::from_edges(g.m(), &pairs).expect("line graph pairs are unique")
}

/// Tensor product, vertex `(a, b)` at index `a * h.n() + b`.
pub fn kronecker_product(g: &Graph, h: &Graph) -> Graph {
    let hn = h.n();
    let mut pairs = Vec::new();
    for &(a, c) in g.edges() {
        for &(b, d) in h.edges() {
            pairs.push((a * hn + b, c * hn + d));
            pairs.push((a * hn + d, c * hn + b));
        }
    }
    Graph::from_edges(g.n() * hn, &pairs).expect("product pairs are unique")
}

/// Labelled edges of X × K₂. Vertices `0..n` form one side and `n..2n` the
/// other; every edge runs from the first side to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverLabeling {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelRecord {
    label: String,
    source: usize,
    target: usize,
}

impl CoverLabeling {
    /// Arc `a -> b` of the base becomes `e_k = (a, n+b)` and `e_{m+k} = (b, n+a)`.
    pub fn from_orientation(g: &Graph, o: &Orientation) -> Result<Self> {
        if !o.matches(g) {
            return Err(Error::OrientationMismatch);
        }
        let n = g.n();
        let m = o.m();
        let edges = (0..2 * m)
            .map(|i| {
                let (a, b) = o.arc(i);
                (a, n + b)
            })
            .collect();
        Ok(CoverLabeling { n, edges })
    }

    pub fn base_vertex_count(&self) -> usize {
        self.n
    }

    pub fn base_edge_count(&self) -> usize {
        self.edges.len() / 2
    }

    /// The `2m` labelled cover edges; index `m + k` is the partner of `k`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Confirms the pairing rule and that the edges are exactly those of X × K₂.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let m = g.m();
        if self.n != n || self.edges.len() != 2 * m {
            return Err(Error::LabelingMismatch(format!(
                "expected {} edges on {} base vertices, found {} on {}",
                2 * m,
                n,
                self.edges.len(),
                self.n
            )));
        }
        let mut seen = vec![false; 2 * m];
        for (k, &(s, t)) in self.edges.iter().enumerate() {
            if s >= n || t < n || t >= 2 * n {
                return Err(Error::LabelingMismatch(format!("edge {k} does not cross the bipartition")));
            }
            let (i, j) = (s, t - n);
            let Some(e) = g.edge_index(i, j) else {
                return Err(Error::LabelingMismatch(format!("edge {k} has no base edge")));
            };
            // Each base edge {i, j} lifts to exactly (i, n+j) and (j, n+i).
            let slot = if i < j { 2 * e } else { 2 * e + 1 };
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::LabelingMismatch(format!("edge {k} repeats a cover edge")));
            }
        }
        for k in 0..m {
            let (i, tj) = self.edges[k];
            let (j, ti) = self.edges[m + k];
            if i + n != ti || j + n != tj {
                return Err(Error::LabelingMismatch(format!("edges {k} and {} are not partners", m + k)));
            }
        }
        Ok(())
    }

    /// The unlabelled cover graph. Every constructor guarantees distinct
    /// edges crossing the bipartition.
    pub fn graph(&self) -> Graph {
        Graph::from_edges(2 * self.n, &self.edges).expect("labeling edges are distinct and cross the bipartition")
    }

    pub fn to_json(&self) -> String {
        let m = self.base_edge_count();
        let records: Vec<LabelRecord> = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, &(source, target))| LabelRecord { label: label_name(k, m), source, target })
            .collect();
        serde_json::to_string(&records).expect("plain records serialise")
    }

    /// Parses the JSON list form. Records may come in any order but the
    /// labels must be exactly `e_1..e_m, e_1^-1..e_m^-1`. Call
    /// [`CoverLabeling::validate`] before trusting the result against a graph.
    pub fn from_json(text: &str, base_vertex_count: usize) -> Result<Self> {
        let records: Vec<LabelRecord> =
            serde_json::from_str(text).map_err(|e| Error::LabelingMismatch(format!("bad JSON: {e}")))?;
        if records.len() % 2 != 0 {
            return Err(Error::LabelingMismatch("odd number of labelled edges".into()));
        }
        let m = records.len() / 2;
        let mut edges = vec![None; 2 * m];
        for r in records {
            let k = parse_label(&r.label, m)
                .ok_or_else(|| Error::LabelingMismatch(format!("unknown label {:?}", r.label)))?;
            if edges[k].replace((r.source, r.target)).is_some() {
                return Err(Error::LabelingMismatch(format!("label {:?} given twice", r.label)));
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|e| e.expect("all labels present")).collect();
        let n = base_vertex_count;
        if let Some(&(s, t)) = edges.iter().find(|&&(s, t)| s >= n || t < n || t >= 2 * n) {
            return Err(Error::LabelingMismatch(format!("edge ({s}, {t}) does not cross the bipartition")));
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::LabelingMismatch(format!("edge {:?} labelled twice", w[0])));
        }
        Ok(CoverLabeling { n, edges })
    }
}

fn label_name(k: usize, m: usize) -> String {
    if k < m {
        format!("e_{}", k + 1)
    } else {
        format!("e_{}^-1", k - m + 1)
    }
}

fn parse_label(s: &str, m: usize) -> Option<usize> {
    let body = s.strip_prefix("e_")?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let i: usize = digits.parse().ok()?;
    if i == 0 || i > m {
        return None;
    }
    Some(if inverse { m + i - 1 } else { i - 1 })
}

/// X″ together with the labeling induced by the default orientation.
pub fn kronecker_double_cover(g: &Graph) -> (Graph, CoverLabeling) {
    let lab = CoverLabeling::from_orientation(g, &Orientation::default_for(g)).expect("default orientation");
    (lab.graph(), lab)
}

/// `A(L(X″)) = [[P, Q], [Q, P]]` under a cover labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverBlocks {
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl CoverBlocks {
    pub fn full(&self) -> IntMatrix {
        IntMatrix::from_blocks(&self.p, &self.q, &self.q, &self.p)
    }
}

/// L(X″) with vertex `k` the labelled cover edge `k`.
pub fn line_of_cover(labeling: &CoverLabeling) -> Graph {
    let cover = Orientation { arcs: labeling.edges.clone() };
    let adj = line_adjacency_in_order(&cover);
    Graph::from_adjacency(&adj).expect("line adjacency is a simple graph")
}

pub fn cover_blocks(g: &Graph, labeling: &CoverLabeling) -> Result<CoverBlocks> {
    labeling.validate(g)?;
    let m = g.m();
    let full = line_of_cover(labeling).adjacency_matrix();
    let p = full.block(0, 0, m, m);
    let q = full.block(0, m, m, m);
    if full.block(m, m, m, m) != p {
        return Err(Error::LabelingMismatch("lower-right block differs from upper-left".into()));
    }
    if full.block(m, 0, m, m) != q.transpose() || q != q.transpose() {
        return Err(Error::LabelingMismatch("off-diagonal block is not symmetric".into()));
    }
    Ok(CoverBlocks { p, q })
}

/// True iff `fiber` is a 2-to-1 map from `y` onto `x` that carries every
/// neighbourhood of `y` bijectively onto the neighbourhood of its image.
pub fn is_double_cover(y: &Graph, x: &Graph, fiber: &[usize]) -> bool {
    if fiber.len() != y.n() || fiber.iter().any(|&v| v >= x.n()) {
        return false;
    }
    let mut count = vec![0usize; x.n()];
    for &v in fiber {
        count[v] += 1;
    }
    if count.iter().any(|&c| c != 2) {
        return false;
    }
    (0..y.n()).all(|v| {
        let mut image: Vec<usize> = y.neighbors(v).iter().map(|&w| fiber[w]).collect();
        image.sort_unstable();
        image.windows(2).all(|w| w[0] != w[1]) && image == x.neighbors(fiber[v])
    })
}

/// Fiber map `k, m + k -> k` shared by γ(X), L(X″) and L(X)″ onto L(X).
pub fn edge_fiber_map(m: usize) -> Vec<usize> {
    (0..2 * m).map(|i| i % m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::Family;

    fn net() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 5), (1, 3), (0, 4)]).unwrap()
    }

    #[test]
    fn cyclic_triangle_matrix() {
        let c3 = Family::Cycle(3).generate().unwrap();
        let o = Orientation::from_arcs(&c3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = edge_adjacency_matrix(&c3, &o).unwrap();
        let expected = IntMatrix::from_rows(&[
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
        ]);
        assert_eq!(m.matrix(), &expected);
        let blocks = m.gamma_blocks();
        assert_eq!(blocks.a0, c3.adjacency_matrix());
        assert!(blocks.b0.is_zero());
        assert!(m.property_violations(&c3, &o).is_empty());
    }

    #[test]
    fn star_gamma_matrix() {
        let star = Family::Star(3).generate().unwrap();
        let o = Orientation::from_arcs(&star, &[(1, 0), (0, 2), (3, 0)]).unwrap();
        let m = edge_adjacency_matrix(&star, &o).unwrap();
        let expected = IntMatrix::from_rows(&[
            [0, 1, 0, 0, 0, 1],
            [1, 0, 1, 0, 0, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [0, 0, 0, 1, 0, 1],
            [1, 0, 0, 0, 1, 0],
        ]);
        assert_eq!(m.symmetrized(), expected);
    }

    #[test]
    fn single_edge_has_zero_matrix() {
        let p2 = Family::Path(2).generate().unwrap();
        let m = edge_adjacency_matrix(&p2, &Orientation::default_for(&p2)).unwrap();
        assert!(m.matrix().is_zero() && m.m() == 1);
        let b = m.gamma_blocks();
        assert!(b.a0.is_zero() && b.b0.is_zero());
    }

    #[test]
    fn orientation_must_match() {
        let c3 = Family::Cycle(3).generate().unwrap();
        assert!(Orientation::from_arcs(&c3, &[(0, 1), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(&c3, &[(0, 1), (1, 0), (1, 2)]).is_err());
        let p3 = Family::Path(3).generate().unwrap();
        let o = Orientation::default_for(&p3);
        assert_eq!(edge_adjacency_matrix(&c3, &o), Err(Error::OrientationMismatch));
    }

    #[test]
    fn bipartite_orientation_kills_a0() {
        let g = Family::CompleteBipartite(2, 3).generate().unwrap();
        let o = Orientation::bipartite(&g).unwrap();
        let m = edge_adjacency_matrix(&g, &o).unwrap();
        assert!(m.a().is_zero() && m.d().is_zero());
        assert!(Orientation::bipartite(&Family::Cycle(5).generate().unwrap()).is_none());
    }

    #[test]
    fn gamma_examples() {
        let c3 = Family::Cycle(3).generate().unwrap();
        let two_c3 = c3.disjoint_union(&c3);
        assert!(are_isomorphic(&symmetric_edge_graph(&c3), &two_c3).unwrap());
        let star = Family::Star(3).generate().unwrap();
        assert!(are_isomorphic(&symmetric_edge_graph(&star), &Family::Cycle(6).generate().unwrap()).unwrap());
        let k23 = Family::CompleteBipartite(2, 3).generate().unwrap();
        assert!(are_isomorphic(&symmetric_edge_graph(&k23), &Family::Prism(6).generate().unwrap()).unwrap());
    }

    #[test]
    fn gamma_iterates() {
        let p4 = Family::Path(4).generate().unwrap();
        let g3 = gamma_iterate(&p4, 3, DEFAULT_ITERATE_LIMIT).unwrap();
        assert_eq!((g3.n(), g3.m()), (8, 0));
        assert_eq!(gamma_iterate(&p4, 0, 10).unwrap(), p4);
        let c4 = Family::Cycle(4).generate().unwrap();
        assert!(matches!(gamma_iterate(&c4, 3, 16), Err(Error::SizeLimitExceeded { actual: 32, limit: 16 })));
    }

    #[test]
    fn line_graph_examples() {
        let star = Family::Star(3).generate().unwrap();
        assert_eq!(line_graph(&star), Family::Cycle(3).generate().unwrap());
        let p5 = Family::Path(5).generate().unwrap();
        assert_eq!(line_graph(&p5), Family::Path(4).generate().unwrap());
    }

    #[test]
    fn kronecker_examples() {
        let k2 = Family::Path(2).generate().unwrap();
        let kk = kronecker_product(&k2, &k2);
        assert_eq!((kk.n(), kk.m(), kk.component_count()), (4, 2, 2));
        let k4 = Family::Complete(4).generate().unwrap();
        assert!(are_isomorphic(&kronecker_product(&k4, &k2), &Family::Crown(4).generate().unwrap()).unwrap());
        let (c3pp, _) = kronecker_double_cover(&Family::Cycle(3).generate().unwrap());
        assert!(are_isomorphic(&c3pp, &Family::Cycle(6).generate().unwrap()).unwrap());
        let (c4pp, _) = kronecker_double_cover(&Family::Cycle(4).generate().unwrap());
        assert_eq!(c4pp.component_count(), 2);
    }

    #[test]
    fn labelled_cover_of_net() {
        let g = net();
        let (cover, lab) = kronecker_double_cover(&g);
        // 1-indexed (source, target) pairs from the worked labeling.
        let expected =
            [(1, 8), (1, 9), (1, 11), (2, 9), (2, 10), (3, 12), (2, 7), (3, 7), (5, 7), (3, 8), (4, 8), (6, 9)];
        let got: Vec<_> = lab.edges().iter().map(|&(s, t)| (s + 1, t + 1)).collect();
        assert_eq!(got, expected);
        let biadj = cover.adjacency_matrix().block(0, 6, 6, 6);
        let expected_biadj = IntMatrix::from_rows(&[
            [0, 1, 1, 0, 1, 0],
            [1, 0, 1, 1, 0, 0],
            [1, 1, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
        ]);
        assert_eq!(biadj, expected_biadj);
    }

    #[test]
    fn net_cover_blocks() {
        let g = net();
        let (_, lab) = kronecker_double_cover(&g);
        let blocks = cover_blocks(&g, &lab).unwrap();
        let p = IntMatrix::from_rows(&[
            [0, 1, 1, 0, 0, 0],
            [1, 0, 1, 1, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [0, 1, 0, 0, 1, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0],
        ]);
        let q = IntMatrix::from_rows(&[
            [0, 0, 0, 1, 1, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 1, 0, 0],
        ]);
        assert_eq!(blocks.p, p);
        assert_eq!(blocks.q, q);
        let gb = edge_adjacency_matrix(&g, &Orientation::default_for(&g)).unwrap().gamma_blocks();
        assert_eq!(&gb.a0 - &gb.b0, -&(&p - &q));
    }

    #[test]
    fn labeling_json_round_trip() {
        let g = net();
        let (_, lab) = kronecker_double_cover(&g);
        let text = lab.to_json();
        assert!(text.starts_with(r#"[{"label":"e_1","source":0,"target":7}"#));
        let back = CoverLabeling::from_json(&text, g.n()).unwrap();
        assert_eq!(back, lab);
        back.validate(&g).unwrap();
    }

    #[test]
    fn broken_labelings_are_rejected() {
        let g = net();
        let (_, lab) = kronecker_double_cover(&g);
        // Swapping an edge with its own partner only reverses that base edge.
        let mut reversed = lab.clone();
        reversed.edges.swap(0, 6);
        reversed.validate(&g).unwrap();
        let mut swapped = lab.clone();
        swapped.edges.swap(0, 7);
        assert!(matches!(swapped.validate(&g), Err(Error::LabelingMismatch(_))));
        let mut reordered = lab.clone();
        reordered.edges.swap(0, 1);
        reordered.validate(&g).unwrap_err();
        let outside = r#"[{"label":"e_1","source":0,"target":1},{"label":"e_1^-1","source":1,"target":2}]"#;
        let twice = r#"[{"label":"e_1","source":0,"target":3},{"label":"e_1^-1","source":0,"target":3}]"#;
        assert!(CoverLabeling::from_json(outside, 2).is_err());
        assert!(CoverLabeling::from_json(twice, 2).is_err());
        for bad in ["[]x", r#"[{"label":"e_0","source":0,"target":7}]"#, r#"[{"label":"e_1","source":0,"target":7}]"#] {
            assert!(CoverLabeling::from_json(bad, 6).is_err(), "{bad}");
        }
    }

    #[test]
    fn cover_maps() {
        let g = net();
        let m = g.m();
        let l = line_graph(&g);
        let fiber = edge_fiber_map(m);
        assert!(is_double_cover(&symmetric_edge_graph(&g), &l, &fiber));
        let (_, lab) = kronecker_double_cover(&g);
        assert!(is_double_cover(&line_of_cover(&lab), &l, &fiber));
        let c6 = Family::Cycle(6).generate().unwrap();
        let c3 = Family::Cycle(3).generate().unwrap();
        assert!(!is_double_cover(&c6, &c3, &[0; 6]));
        assert!(is_double_cover(&c6, &c3, &[0, 1, 2, 0, 1, 2]));
    }
}
