//! Recovering X from a graph that claims to be γ(X).
//!
//! In γ(X) the arcs entering and leaving a vertex `v` of degree `d` induce a
//! crown on `2d` vertices, these crowns partition the edges, and each arc sits
//! in at most two of them. The search below looks for such a partition and
//! rebuilds a candidate X from it; the candidate is accepted only when its
//! symmetric edge graph is isomorphic to the input.

use crate::canon::{are_isomorphic_bounded, DEFAULT_VERTEX_LIMIT};
use crate::constructions::symmetric_edge_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CROWN_VERTEX_LIMIT: usize = 24;
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

/// Crown parts `(S, T)`: `S[i]` is adjacent to every `T[j]` with `j != i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrownPartition {
    pub parts: Vec<(Vec<usize>, Vec<usize>)>,
    /// Vertices lying in fewer than two parts.
    pub uncovered: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct CrownSearch {
    pub vertex_limit: usize,
    pub node_budget: u64,
}

impl Default for CrownSearch {
    fn default() -> Self {
        CrownSearch { vertex_limit: DEFAULT_CROWN_VERTEX_LIMIT, node_budget: DEFAULT_NODE_BUDGET }
    }
}

pub fn crown_recover(y: &Graph) -> Result<Option<(Graph, CrownPartition)>> {
    CrownSearch::default().run(y)
}

impl CrownSearch {
    pub fn run(&self, y: &Graph) -> Result<Option<(Graph, CrownPartition)>> {
        if y.n() > self.vertex_limit {
            return Err(Error::SizeLimitExceeded { actual: y.n(), limit: self.vertex_limit });
        }
        let n = y.n();
        let mut st = State {
            y,
            covered: vec![false; n * n],
            uncovered_deg: y.degrees(),
            count: vec![0; n],
            partner: vec![None; n],
            parts: Vec::new(),
            nodes: 0,
            budget: self.node_budget,
            found: None,
        };
        st.search()?;
        Ok(st.found)
    }
}

struct State<'a> {
    y: &'a Graph,
    covered: Vec<bool>,
    uncovered_deg: Vec<usize>,
    count: Vec<u8>,
    partner: Vec<Option<usize>>,
    parts: Vec<(Vec<usize>, Vec<usize>)>,
    nodes: u64,
    budget: u64,
    found: Option<(Graph, CrownPartition)>,
}

impl State<'_> {
    fn is_covered(&self, a: usize, b: usize) -> bool {
        self.covered[a * self.y.n() + b]
    }

    fn set_covered(&mut self, a: usize, b: usize, on: bool) {
        let n = self.y.n();
        self.covered[a * n + b] = on;
        self.covered[b * n + a] = on;
    }

    fn free_neighbors(&self, v: usize) -> Vec<usize> {
        self.y.neighbors(v).iter().copied().filter(|&w| !self.is_covered(v, w)).collect()
    }

    fn search(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let first = self.y.edges().iter().copied().find(|&(a, b)| !self.is_covered(a, b));
        let Some((a, b)) = first else {
            self.found = self.finish();
            return Ok(());
        };
        for (s, t) in self.candidates(a, b) {
            if let Some(undo) = self.apply(&s, &t) {
                self.parts.push((s.clone(), t.clone()));
                self.search()?;
                self.parts.pop();
                self.revert(&s, &t, undo);
                if self.found.is_some() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Every crown part with `a` on side `S` and `b` on side `T`, built from
    /// still-uncovered edges. `S[0] = a`, `T[0] = partner(a)`.
    fn candidates(&self, a: usize, b: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let y = self.y;
        let na: Vec<usize> = self.free_neighbors(a).into_iter().filter(|&x| x != b).collect();
        let nb: Vec<usize> = self.free_neighbors(b).into_iter().filter(|&x| x != a).collect();
        let mut out = Vec::new();
        // Ta = b plus a subset of na, Sb = a plus a subset of nb, equal sizes.
        for ta_mask in 0u32..(1 << na.len()) {
            let ta: Vec<usize> = bits(ta_mask, &na);
            for sb_mask in 0u32..(1 << nb.len()) {
                if sb_mask.count_ones() != ta_mask.count_ones() {
                    continue;
                }
                let sb: Vec<usize> = bits(sb_mask, &nb);
                // partner(a) is adjacent to all of Sb's extra members; same for partner(b).
                let t_star: Vec<usize> = self.common_free(&sb, a, b);
                let s_star: Vec<usize> = self.common_free(&ta, b, a);
                for &ts in &t_star {
                    if ts == b || ta.contains(&ts) || y.has_edge(a, ts) {
                        continue;
                    }
                    for &ss in &s_star {
                        if ss == a || sb.contains(&ss) || y.has_edge(b, ss) || ss == ts {
                            continue;
                        }
                        let mut s = vec![a];
                        s.extend(&sb);
                        s.push(ss);
                        let mut t = vec![ts];
                        t.extend(&ta);
                        t.push(b);
                        if let Some(pair) = self.as_crown(s, t) {
                            out.push(pair);
                        }
                    }
                }
            }
        }
        out
    }

    /// Vertices joined by uncovered edges to every member of `set`; when
    /// `set` is empty, every vertex with a free edge other than `skip` and `anchor`.
    fn common_free(&self, set: &[usize], skip: usize, anchor: usize) -> Vec<usize> {
        let pool = match set.first() {
            Some(&first) => self.free_neighbors(first),
            None => {
                // Crown of order 2: the far edge is any free edge away from {a, b}.
                return (0..self.y.n()).filter(|&v| v != skip && v != anchor && self.uncovered_deg[v] > 0).collect();
            }
        };
        pool.into_iter()
            .filter(|&v| v != skip && set.iter().all(|&w| w != v && self.y.has_edge(v, w) && !self.is_covered(v, w)))
            .collect()
    }

    /// Checks that `S ∪ T` induces a crown whose edges are all uncovered, and
    /// orders `T` so `T[i]` is the partner of `S[i]`.
    fn as_crown(&self, s: Vec<usize>, t: Vec<usize>) -> Option<(Vec<usize>, Vec<usize>)> {
        let y = self.y;
        let k = s.len();
        let mut all: Vec<usize> = s.iter().chain(&t).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        for (i, &x) in s.iter().enumerate() {
            if s[i + 1..].iter().any(|&z| y.has_edge(x, z)) {
                return None;
            }
        }
        for (i, &x) in t.iter().enumerate() {
            if t[i + 1..].iter().any(|&z| y.has_edge(x, z)) {
                return None;
            }
        }
        let mut ordered = Vec::with_capacity(k);
        for &x in &s {
            let missing: Vec<usize> = t.iter().copied().filter(|&z| !y.has_edge(x, z)).collect();
            if missing.len() != 1 {
                return None;
            }
            if t.iter().any(|&z| z != missing[0] && self.is_covered(x, z)) {
                return None;
            }
            ordered.push(missing[0]);
        }
        let mut check = ordered.clone();
        check.sort_unstable();
        check.dedup();
        if check.len() != k {
            return None;
        }
        Some((s, ordered))
    }

    /// Commits a part if the per-vertex constraints allow it. Returns the
    /// partner slots it filled, for [`State::revert`].
    fn apply(&mut self, s: &[usize], t: &[usize]) -> Option<Vec<usize>> {
        for (&x, &z) in s.iter().zip(t) {
            for (p, q) in [(x, z), (z, x)] {
                if self.count[p] >= 2 {
                    return None;
                }
                if self.partner[p].is_some_and(|r| r != q) {
                    return None;
                }
            }
        }
        let mut filled = Vec::new();
        for (&x, &z) in s.iter().zip(t) {
            for (p, q) in [(x, z), (z, x)] {
                if self.partner[p].is_none() {
                    self.partner[p] = Some(q);
                    filled.push(p);
                }
                self.count[p] += 1;
            }
        }
        for (i, &x) in s.iter().enumerate() {
            for (j, &z) in t.iter().enumerate() {
                if i != j {
                    self.set_covered(x, z, true);
                    self.uncovered_deg[x] -= 1;
                    self.uncovered_deg[z] -= 1;
                }
            }
        }
        // A vertex in two parts can never gain another edge.
        let saturated = s.iter().chain(t).all(|&v| self.count[v] < 2 || self.uncovered_deg[v] == 0);
        if !saturated {
            self.revert(s, t, filled);
            return None;
        }
        Some(filled)
    }

    fn revert(&mut self, s: &[usize], t: &[usize], filled: Vec<usize>) {
        for (i, &x) in s.iter().enumerate() {
            for (j, &z) in t.iter().enumerate() {
                if i != j {
                    self.set_covered(x, z, false);
                    self.uncovered_deg[x] += 1;
                    self.uncovered_deg[z] += 1;
                }
            }
        }
        for &v in s.iter().chain(t) {
            self.count[v] -= 1;
        }
        for p in filled {
            self.partner[p] = None;
        }
    }

    /// Rebuilds X from a complete partition and keeps it only if γ of it matches.
    fn finish(&self) -> Option<(Graph, CrownPartition)> {
        let y = self.y;
        let parts = &self.parts;
        let p = parts.len();
        let mut member: Vec<Vec<usize>> = vec![Vec::new(); y.n()];
        for (i, (s, t)) in parts.iter().enumerate() {
            for &v in s.iter().chain(t) {
                member[v].push(i);
            }
        }
        let mut pairs = Vec::new();
        for v in 0..y.n() {
            if let [i, j] = member[v][..] {
                pairs.push((i.min(j), i.max(j)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut next = p;
        let mut seen = vec![false; y.n()];
        let mut isolated = Vec::new();
        for v in 0..y.n() {
            if seen[v] || member[v].len() == 2 {
                continue;
            }
            match member[v][..] {
                [i] => {
                    // Pendant pair: v and its partner both live only in part i.
                    let w = self.partner[v]?;
                    if member[w][..] != [i] || seen[w] {
                        return None;
                    }
                    seen[v] = true;
                    seen[w] = true;
                    pairs.push((i, next));
                    next += 1;
                }
                _ => isolated.push(v),
            }
        }
        if isolated.len() % 2 != 0 {
            return None;
        }
        for _ in 0..isolated.len() / 2 {
            pairs.push((next, next + 1));
            next += 2;
        }
        let x = Graph::from_edges(next, &pairs).ok()?;
        let limit = y.n().max(DEFAULT_VERTEX_LIMIT);
        if !are_isomorphic_bounded(&symmetric_edge_graph(&x), y, limit).ok()? {
            return None;
        }
        let uncovered = (0..y.n()).filter(|&v| member[v].len() < 2).collect();
        Some((x, CrownPartition { parts: parts.clone(), uncovered }))
    }
}

fn bits(mask: u32, pool: &[usize]) -> Vec<usize> {
    pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}
