//! Canonical labelling and isomorphism testing.
//!
//! Individualisation-refinement: colour refinement to an equitable ordered
//! partition, then branch on the first smallest non-singleton cell. Every
//! discrete leaf yields a relabelled adjacency bitmap and the smallest one is
//! the canonical form. Leaves that reproduce an already-seen bitmap give
//! automorphisms, which prune siblings lying in a common orbit of the
//! automorphisms fixing the current branch prefix.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex bound used by [`canonical_form`] and [`are_isomorphic`].
pub const DEFAULT_VERTEX_LIMIT: usize = 20;

/// Maximum number of automorphisms retained for pruning.
const MAX_STORED_AUTOMORPHISMS: usize = 512;

/// Canonical representative of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    edges: Vec<(usize, usize)>,
    certificate: String,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge list of the canonically relabelled graph, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Hex certificate; equal certificates iff isomorphic graphs.
    pub fn certificate(&self) -> &str {
        &self.certificate
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("canonical edges are valid")
    }
}

/// Canonical form and the labelling `v -> canonical position` that produced it.
pub fn canonical_labeling(g: &Graph, limit: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    if g.n() > limit {
        return Err(Error::SizeLimitExceeded { actual: g.n(), limit });
    }
    let mut search = Search::new(g);
    let mut colors = vec![0; g.n()];
    search.refine(&mut colors);
    search.descend(colors, &mut Vec::new());
    let (bits, lab) = search.best.expect("search visits at least one leaf");

    let mut edges: Vec<(usize, usize)> =
        g.edges().iter().map(|&(u, v)| (lab[u].min(lab[v]), lab[u].max(lab[v]))).collect();
    edges.sort_unstable();
    let mut certificate = format!("{}:", g.n());
    for w in &bits {
        write!(certificate, "{w:016x}").unwrap();
    }
    Ok((CanonicalForm { n: g.n(), edges, certificate }, lab))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_bounded(g, DEFAULT_VERTEX_LIMIT)
}

pub fn canonical_form_bounded(g: &Graph, limit: usize) -> Result<CanonicalForm> {
    canonical_labeling(g, limit).map(|(c, _)| c)
}

/// Returns an isomorphism `g -> h` as a vertex map, or `None`.
///
/// Any returned map has been re-verified edge by edge.
pub fn isomorphism(g: &Graph, h: &Graph, limit: usize) -> Result<Option<Vec<usize>>> {
    for x in [g, h] {
        if x.n() > limit {
            return Err(Error::SizeLimitExceeded { actual: x.n(), limit });
        }
    }
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(None);
    }
    let sorted_degrees = |x: &Graph| {
        let mut d = x.degrees();
        d.sort_unstable();
        d
    };
    if sorted_degrees(g) != sorted_degrees(h) {
        return Ok(None);
    }
    let (cg, lab_g) = canonical_labeling(g, limit)?;
    let (ch, lab_h) = canonical_labeling(h, limit)?;
    if cg.certificate != ch.certificate {
        return Ok(None);
    }
    let mut inv_h = vec![0; h.n()];
    for (v, &p) in lab_h.iter().enumerate() {
        inv_h[p] = v;
    }
    let map: Vec<usize> = lab_g.iter().map(|&p| inv_h[p]).collect();
    assert!(is_isomorphism(g, h, &map), "canonical labelling produced an invalid witness");
    Ok(Some(map))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    are_isomorphic_bounded(g, h, DEFAULT_VERTEX_LIMIT)
}

pub fn are_isomorphic_bounded(g: &Graph, h: &Graph, limit: usize) -> Result<bool> {
    isomorphism(g, h, limit).map(|w| w.is_some())
}

/// True iff `map` is a bijection `V(g) -> V(h)` carrying `E(g)` onto `E(h)`.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if g.n() != h.n() || g.m() != h.m() || map.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; h.n()];
    for &x in map {
        if x >= h.n() || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<Vec<u64>>,
    first_lab: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search { g, best: None, first: None, first_lab: Vec::new(), automorphisms: Vec::new() }
    }

    /// Colour refinement. Colours are cell offsets: the colour of `v` is the
    /// number of vertices in strictly earlier cells.
    fn refine(&self, colors: &mut [usize]) {
        let n = colors.len();
        let mut cells = count_cells(colors);
        loop {
            let mut keyed: Vec<(Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut key = Vec::with_capacity(self.g.degree(v) + 1);
                    key.push(colors[v]);
                    let start = key.len();
                    key.extend(self.g.neighbors(v).iter().map(|&w| colors[w]));
                    key[start..].sort_unstable();
                    (key, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut run_start = 0;
            let mut new_cells = 0;
            for i in 0..n {
                if i == 0 || keyed[i].0 != keyed[i - 1].0 {
                    run_start = i;
                    new_cells += 1;
                }
                colors[keyed[i].1] = run_start;
            }
            if new_cells == cells {
                return;
            }
            cells = new_cells;
        }
    }

    fn descend(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let Some(cell) = target_cell(&colors) else {
            self.leaf(colors);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.shares_orbit(prefix, &explored, w) {
                continue;
            }
            let mut child = colors.clone();
            let c = child[w];
            for x in child.iter_mut() {
                if *x == c {
                    *x = c + 1;
                }
            }
            child[w] = c;
            self.refine(&mut child);
            prefix.push(w);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(w);
        }
    }

    fn shares_orbit(&self, prefix: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for sigma in &self.automorphisms {
            if prefix.iter().any(|&v| sigma[v] != v) {
                continue;
            }
            any = true;
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, sigma[v]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&x| find(&mut parent, x) == rw)
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let bits = leaf_bits(self.g, &lab);
        let Some((best_bits, best_lab)) = &self.best else {
            self.first = Some(bits.clone());
            self.first_lab = lab.clone();
            self.best = Some((bits, lab));
            return;
        };
        match bits.cmp(best_bits) {
            Ordering::Less => self.best = Some((bits, lab)),
            Ordering::Equal => {
                let sigma = automorphism_between(&lab, best_lab);
                self.store(sigma);
            }
            Ordering::Greater => {
                if self.first.as_ref() == Some(&bits) {
                    let sigma = automorphism_between(&lab, &self.first_lab);
                    self.store(sigma);
                }
            }
        }
    }

    fn store(&mut self, sigma: Vec<usize>) {
        if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS && sigma.iter().enumerate().any(|(i, &s)| i != s) {
            debug_assert!(is_isomorphism(self.g, self.g, &sigma));
            self.automorphisms.push(sigma);
        }
    }
}

fn count_cells(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Vertices of the first smallest non-singleton cell, or `None` when discrete.
fn target_cell(colors: &[usize]) -> Option<Vec<usize>> {
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in colors {
        size[c] += 1;
    }
    let target = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c))?;
    Some((0..n).filter(|&v| colors[v] == target).collect())
}

/// Upper-triangle adjacency bitmap of `g` relabelled by the discrete colouring `lab`.
fn leaf_bits(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut bits = vec![0u64; (n * n).div_ceil(64).max(1)];
    for &(u, v) in g.edges() {
        let (a, b) = (lab[u].min(lab[v]), lab[u].max(lab[v]));
        let idx = a * n + b;
        // most significant bit first so that word order matches row-major order
        bits[idx / 64] |= 1u64 << (63 - idx % 64);
    }
    bits
}

/// `sigma = to^{-1} . from`, an automorphism when both labellings give the same graph.
fn automorphism_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; to.len()];
    for (v, &p) in to.iter().enumerate() {
        inv[p] = v;
    }
    from.iter().map(|&p| inv[p]).collect()
}
