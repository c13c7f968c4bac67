//! The per-graph verification suite.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{are_isomorphic_bounded, canonical_form_bounded};
use crate::constructions::{
    cover_blocks, edge_adjacency_matrix, edge_fiber_map, is_double_cover, kronecker_double_cover, line_graph,
    line_of_cover, symmetric_edge_graph, symmetric_edge_graph_with, Orientation,
};
use crate::crown::CrownSearch;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;
use crate::spectral::{adjacency_char_poly, adjacency_spectrum, block_split_spectrum, energy, is_cospectral};
use crate::zeta::{
    bass_form, count_nb_closed_walks, cross_formula_holds, g_poly, hashimoto, nb_walk_trace, verify_factorizations,
};

use super::report::{CheckResult, VerificationReport};

/// Vertex bound for isomorphism tests inside the harness. Cover graphs of
/// 6-vertex bases reach 30 vertices.
pub const HARNESS_ISO_LIMIT: usize = 64;
pub const ENERGY_TOLERANCE: f64 = 1e-8;
pub const SPECTRUM_TOLERANCE: f64 = 1e-7;
/// Smallest edge count covered by the equal-energy comparison.
pub const EQUIENERGETIC_MIN_EDGES: usize = 5;
/// Longest walk length compared against brute-force enumeration.
pub const WALK_CHECK_MAX_LEN: u32 = 6;

pub const CHECK_NAMES: [&str; 28] = [
    "m_matrix_properties",
    "m_trace_walks",
    "gamma_edge_count",
    "gamma_trace_identity",
    "gamma_orientation_swap",
    "double_covers",
    "gamma_connectivity",
    "gamma_bridge",
    "gamma_bipartite",
    "gamma_unicyclic",
    "gamma_regular",
    "gamma_eulerian",
    "triangle_doubling",
    "nb_walk_triangles",
    "line_triangle_identity",
    "cover_disconnected_iff_bipartite",
    "cover_coincidences",
    "block_identity_signed",
    "cover_blocks_structure",
    "zeta_cross_formula",
    "zeta_constant_term",
    "zeta_factorizations",
    "zeta_divisibility",
    "spectrum_containment",
    "bipartite_spectrum_symmetry",
    "block_split_spectrum",
    "equienergetic",
    "crown_recovery",
];

/// `L(X)` and its three double covers, all on vertex set `0..2m` with the
/// fiber map `k, m + k -> k`.
#[derive(Clone, Debug)]
pub struct CoverTriple {
    pub base_line: Graph,
    pub gamma: Graph,
    pub line_of_cover: Graph,
    pub cover_of_line: Graph,
}

pub fn cover_triple(g: &Graph) -> Result<CoverTriple> {
    if g.m() == 0 {
        return Err(Error::PreconditionViolated("the graph has no edges".into()));
    }
    let base_line = line_graph(g);
    let (_, lab) = kronecker_double_cover(g);
    Ok(CoverTriple {
        gamma: symmetric_edge_graph(g),
        line_of_cover: line_of_cover(&lab),
        cover_of_line: kronecker_double_cover(&base_line).0,
        base_line,
    })
}

impl CoverTriple {
    fn members(&self) -> [(&'static str, &Graph); 3] {
        [("gamma", &self.gamma), ("line_of_cover", &self.line_of_cover), ("cover_of_line", &self.cover_of_line)]
    }

    /// Names of the members that fail to double cover the line graph.
    pub fn double_cover_failures(&self) -> Vec<&'static str> {
        let fiber = edge_fiber_map(self.base_line.n());
        self.members()
            .into_iter()
            .filter(|(_, y)| !is_double_cover(y, &self.base_line, &fiber))
            .map(|(name, _)| name)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Coincidences {
    pub gamma_eq_line_cover: bool,
    pub gamma_eq_cover_line: bool,
    pub line_cover_eq_cover_line: bool,
}

pub fn classify_cover_coincidences(g: &Graph) -> Result<Coincidences> {
    if !g.is_connected() {
        return Err(Error::PreconditionViolated("the graph is disconnected".into()));
    }
    let t = cover_triple(g)?;
    let iso = |a: &Graph, b: &Graph| are_isomorphic_bounded(a, b, HARNESS_ISO_LIMIT);
    Ok(Coincidences {
        gamma_eq_line_cover: iso(&t.gamma, &t.line_of_cover)?,
        gamma_eq_cover_line: iso(&t.gamma, &t.cover_of_line)?,
        line_cover_eq_cover_line: iso(&t.line_of_cover, &t.cover_of_line)?,
    })
}

/// The classification the coincidence theorem predicts for a connected graph.
pub fn predicted_coincidences(g: &Graph) -> Coincidences {
    Coincidences {
        gamma_eq_line_cover: is_line_cover_exception(g),
        gamma_eq_cover_line: g.is_bipartite(),
        line_cover_eq_cover_line: g.is_cycle() || g.is_path(),
    }
}

/// Paths, even cycles, K4, K4 minus an edge, and the triangle with a pendant
/// vertex (the only 4-vertex, 4-edge graph with degrees 3, 2, 2, 1).
pub fn is_line_cover_exception(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    if g.is_path() || (g.is_cycle() && g.n() % 2 == 0) {
        return true;
    }
    let mut d = g.degrees();
    d.sort_unstable();
    g.n() == 4 && (g.m() == 6 || g.m() == 5 || (g.m() == 4 && d == [1, 2, 2, 3]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquienergeticReport {
    pub order: usize,
    pub energy_gamma: f64,
    pub energy_line_cover: f64,
    pub energies_equal: bool,
    pub cospectral: bool,
}

pub fn equienergetic_report(g: &Graph) -> Result<EquienergeticReport> {
    equienergetic_report_with(g, ENERGY_TOLERANCE)
}

pub fn equienergetic_report_with(g: &Graph, tolerance: f64) -> Result<EquienergeticReport> {
    if !g.is_connected() || g.m() < EQUIENERGETIC_MIN_EDGES || is_line_cover_exception(g) {
        return Err(Error::PreconditionViolated(format!(
            "needs a connected graph with at least {EQUIENERGETIC_MIN_EDGES} edges outside the exceptional list"
        )));
    }
    let t = cover_triple(g)?;
    let energy_gamma = energy(&t.gamma);
    let energy_line_cover = energy(&t.line_of_cover);
    Ok(EquienergeticReport {
        order: 2 * g.m(),
        energy_gamma,
        energy_line_cover,
        energies_equal: (energy_gamma - energy_line_cover).abs() <= tolerance,
        cospectral: is_cospectral(&t.gamma, &t.line_of_cover),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub timings: bool,
    pub crown: CrownSearch,
    pub energy_tolerance: f64,
    pub spectrum_tolerance: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            timings: false,
            crown: CrownSearch::default(),
            energy_tolerance: ENERGY_TOLERANCE,
            spectrum_tolerance: SPECTRUM_TOLERANCE,
        }
    }
}

pub fn check_suite(g: &Graph) -> Result<VerificationReport> {
    check_suite_with(g, &SuiteOptions::default())
}

/// Runs every check on the canonical relabelling of `g`, so the report
/// depends only on the isomorphism class.
pub fn check_suite_with(g: &Graph, opts: &SuiteOptions) -> Result<VerificationReport> {
    let cf = canonical_form_bounded(g, HARNESS_ISO_LIMIT)?;
    let x = cf.graph();
    let ctx = Context::new(&x);
    let mut checks = Vec::with_capacity(CHECK_NAMES.len());
    for name in CHECK_NAMES {
        let start = opts.timings.then(Instant::now);
        let mut result = ctx.run(name, opts);
        result.timing_ms = start.map(|s| s.elapsed().as_secs_f64() * 1e3);
        checks.push(result);
    }
    Ok(VerificationReport {
        graph_id: cf.certificate().to_string(),
        n: x.n(),
        m: x.m(),
        edges: x.edges().to_vec(),
        checks,
    })
}

struct Context<'a> {
    x: &'a Graph,
    connected: bool,
    triple: Option<CoverTriple>,
}

const NO_EDGES: &str = "graph has no edges";
const DISCONNECTED: &str = "graph is disconnected";
const HYPOTHESIS: &str = "hypothesis not met";

fn choose3(d: usize) -> u64 {
    let d = d as u64;
    if d < 3 {
        0
    } else {
        d * (d - 1) * (d - 2) / 6
    }
}

impl<'a> Context<'a> {
    fn new(x: &'a Graph) -> Self {
        Context { x, connected: x.is_connected(), triple: cover_triple(x).ok() }
    }

    fn run(&self, name: &'static str, opts: &SuiteOptions) -> CheckResult {
        let x = self.x;
        let needs_edges = !matches!(name, "m_matrix_properties" | "zeta_cross_formula" | "zeta_constant_term");
        if needs_edges && x.m() == 0 {
            return CheckResult::skipped(name, NO_EDGES);
        }
        let connected_only = matches!(
            name,
            "gamma_connectivity"
                | "gamma_bridge"
                | "gamma_bipartite"
                | "gamma_unicyclic"
                | "cover_disconnected_iff_bipartite"
                | "cover_coincidences"
                | "zeta_factorizations"
                | "zeta_divisibility"
                | "equienergetic"
                | "crown_recovery"
        );
        if connected_only && !self.connected {
            return CheckResult::skipped(name, DISCONNECTED);
        }
        match self.check(name, opts) {
            Ok(r) => r,
            Err(e) => CheckResult::fail(name, json!({ "error": e.to_string() })),
        }
    }

    fn triple(&self) -> &CoverTriple {
        self.triple.as_ref().expect("graph has edges")
    }

    fn check(&self, name: &'static str, opts: &SuiteOptions) -> Result<CheckResult> {
        let x = self.x;
        let m = x.m();
        let o = Orientation::default_for(x);
        Ok(match name {
            "m_matrix_properties" => {
                let bad = edge_adjacency_matrix(x, &o)?.property_violations(x, &o);
                CheckResult::expect(name, bad.is_empty(), || json!(bad))
            }
            "m_trace_walks" => {
                let bad: Vec<Value> = (1..=WALK_CHECK_MAX_LEN)
                    .filter_map(|k| {
                        let (t, b) = (nb_walk_trace(x, k), count_nb_closed_walks(x, k as usize));
                        (t != b).then(|| json!({ "k": k, "trace": t, "walks": b }))
                    })
                    .collect();
                CheckResult::expect(name, bad.is_empty(), || json!(bad))
            }
            "gamma_edge_count" => {
                let predicted: usize = x.degrees().iter().map(|d| d * d).sum::<usize>() - 2 * m;
                let got = self.triple().gamma.m();
                CheckResult::expect(name, got == predicted, || json!({ "edges": got, "predicted": predicted }))
            }
            "gamma_trace_identity" => {
                let mtx = edge_adjacency_matrix(x, &o)?;
                let s = mtx.symmetrized();
                let tr = (&s * &s).trace();
                let e2 = 2 * self.triple().gamma.m() as i64;
                let walks = 2 * mtx.matrix().entry_sum();
                let j = swap_matrix(m);
                let commutes = &j * &s == &s * &j;
                CheckResult::expect(
                    name,
                    tr == e2 && e2 == walks && commutes,
                    || json!({ "trace_sq": tr, "twice_edges": e2, "twice_entry_sum": walks, "commutes_with_j": commutes }),
                )
            }
            "gamma_orientation_swap" => {
                // Flip every other edge: γ changes by the vertex swap k <-> m + k on flipped labels.
                let arcs: Vec<(usize, usize)> =
                    x.edges().iter().enumerate().map(|(k, &(u, v))| if k % 2 == 0 { (v, u) } else { (u, v) }).collect();
                let flipped = symmetric_edge_graph_with(x, &Orientation::from_arcs(x, &arcs)?)?;
                let perm: Vec<usize> =
                    (0..2 * m).map(|i| if (i % m) % 2 == 0 { (i + m) % (2 * m) } else { i }).collect();
                let ok = self.triple().gamma.relabel(&perm) == flipped;
                CheckResult::expect(name, ok, || json!("relabelled gamma differs"))
            }
            "double_covers" => {
                let bad = self.triple().double_cover_failures();
                CheckResult::expect(name, bad.is_empty(), || json!(bad))
            }
            "gamma_connectivity" => {
                let predicted = !(x.is_cycle() || x.is_path());
                let got = self.triple().gamma.is_connected();
                CheckResult::expect(name, got == predicted, || json!({ "connected": got, "predicted": predicted }))
            }
            "gamma_bridge" => {
                let gamma = &self.triple().gamma;
                if !gamma.is_connected() {
                    return Ok(CheckResult::skipped(name, "gamma is disconnected"));
                }
                let predicted = (0..x.n()).any(|v| x.degree(v) == 1 && x.degree(x.neighbors(v)[0]) == 2);
                let bridges = gamma.bridges();
                CheckResult::expect(
                    name,
                    bridges.is_empty() != predicted,
                    || json!({ "gamma_bridges": bridges, "predicted": predicted }),
                )
            }
            "gamma_bipartite" => {
                let got = self.triple().gamma.is_bipartite();
                CheckResult::expect(name, got == x.is_bipartite(), || json!({ "gamma_bipartite": got }))
            }
            "gamma_unicyclic" => {
                let p = x.predicates();
                let deg3 = x.degrees().iter().filter(|&&d| d == 3).count();
                let predicted = p.is_tree && x.max_degree() == 3 && deg3 == 1;
                let got = self.triple().gamma.predicates().is_unicyclic;
                CheckResult::expect(name, got == predicted, || json!({ "unicyclic": got, "predicted": predicted }))
            }
            "gamma_regular" => {
                if !x.predicates().is_regular {
                    return Ok(CheckResult::skipped(name, HYPOTHESIS));
                }
                let ok = self.triple().gamma.predicates().is_regular;
                CheckResult::expect(name, ok, || json!("gamma is not regular"))
            }
            "gamma_eulerian" => {
                let gamma = &self.triple().gamma;
                if !(x.predicates().is_eulerian && gamma.is_connected()) {
                    return Ok(CheckResult::skipped(name, HYPOTHESIS));
                }
                CheckResult::expect(name, gamma.predicates().is_eulerian, || json!("gamma is not Eulerian"))
            }
            "triangle_doubling" => {
                let gamma = &self.triple().gamma;
                let t = [x.count_triangles(), gamma.count_triangles(), symmetric_edge_graph(gamma).count_triangles()];
                CheckResult::expect(name, t[1] == 2 * t[0] && t[2] == 4 * t[0], || json!(t))
            }
            "nb_walk_triangles" => {
                let t1 = x.count_triangles();
                let (trace, walks) = (nb_walk_trace(x, 3), count_nb_closed_walks(x, 3));
                CheckResult::expect(
                    name,
                    trace == 6 * t1 && walks == trace,
                    || json!({ "triangles": t1, "trace": trace, "walks": walks }),
                )
            }
            "line_triangle_identity" => {
                let t = self.triple();
                let t1 = x.count_triangles();
                let stars: u64 = x.degrees().into_iter().map(choose3).sum();
                let (tp, t2, t3) =
                    (t.base_line.count_triangles(), t.gamma.count_triangles(), t.line_of_cover.count_triangles());
                let ok = tp == t1 + stars && t3 == 2 * stars && 2 * tp == t2 + t3;
                CheckResult::expect(name, ok, || json!({ "t1": t1, "t_line": tp, "t2": t2, "t3": t3, "stars": stars }))
            }
            "cover_disconnected_iff_bipartite" => {
                let (cover, _) = kronecker_double_cover(x);
                let disc = !cover.is_connected();
                CheckResult::expect(name, disc == x.is_bipartite(), || json!({ "cover_disconnected": disc }))
            }
            "cover_coincidences" => {
                let got = classify_cover_coincidences(x)?;
                let want = predicted_coincidences(x);
                CheckResult::expect(name, got == want, || json!({ "observed": got, "predicted": want }))
            }
            "block_identity_signed" => {
                let (_, lab) = kronecker_double_cover(x);
                let cb = cover_blocks(x, &lab)?;
                let gb = edge_adjacency_matrix(x, &o)?.gamma_blocks();
                let lhs = &gb.a0 - &gb.b0;
                let rhs = -&(&cb.p - &cb.q);
                CheckResult::expect(
                    name,
                    lhs == rhs,
                    || json!({ "a0_minus_b0": lhs.to_csv(), "q_minus_p": rhs.to_csv() }),
                )
            }
            "cover_blocks_structure" => {
                let (_, lab) = kronecker_double_cover(x);
                let cb = cover_blocks(x, &lab)?;
                let sum_ok = &cb.p + &cb.q == self.triple().base_line.adjacency_matrix();
                let disjoint = cb.p.hadamard(&cb.q).is_zero();
                CheckResult::expect(name, sum_ok && disjoint, || json!({ "sum_is_line": sum_ok, "disjoint": disjoint }))
            }
            "zeta_cross_formula" => CheckResult::expect(
                name,
                cross_formula_holds(x),
                || json!({ "hashimoto": hashimoto(x).poly.to_string() }),
            ),
            "zeta_constant_term" => {
                let h = hashimoto(x).poly.coeff(0);
                let b = bass_form(x).det.coeff(0);
                let one = num_bigint::BigInt::from(1);
                CheckResult::expect(
                    name,
                    h == one && b == one,
                    || json!({ "hashimoto": h.to_string(), "bass": b.to_string() }),
                )
            }
            "zeta_factorizations" => {
                let bad: Vec<_> = verify_factorizations(x).into_iter().filter(|c| !c.holds).collect();
                CheckResult::expect(name, bad.is_empty(), || json!(bad))
            }
            "zeta_divisibility" => {
                if x.min_degree() < 2 {
                    return Ok(CheckResult::skipped(name, HYPOTHESIS));
                }
                let t = self.triple();
                let zl = hashimoto(&t.base_line).poly;
                let mut bad = Vec::new();
                for (label, cover) in t.members() {
                    if !zl.divides(&hashimoto(cover).poly) {
                        bad.push(label);
                    }
                }
                let quotient = hashimoto(&t.gamma).poly.div_exact(&zl).ok();
                let g_ok = quotient.is_some() && quotient == g_poly(x).ok();
                if !g_ok {
                    bad.push("g_poly");
                }
                CheckResult::expect(name, bad.is_empty(), || json!(bad))
            }
            "spectrum_containment" => {
                let t = self.triple();
                let cl = adjacency_char_poly(&t.base_line);
                let bad: Vec<&str> = t
                    .members()
                    .into_iter()
                    .filter(|(_, y)| !cl.divides(&adjacency_char_poly(y)))
                    .map(|(label, _)| label)
                    .collect();
                CheckResult::expect(name, bad.is_empty(), || json!(bad))
            }
            "bipartite_spectrum_symmetry" => {
                if !x.is_bipartite() {
                    return Ok(CheckResult::skipped(name, HYPOTHESIS));
                }
                let t = self.triple();
                let cl = adjacency_char_poly(&t.base_line);
                let sign = IntPoly::from_i64s(&[if m % 2 == 0 { 1 } else { -1 }]);
                let predicted = &(&cl * &cl.negate_argument()) * &sign;
                let got = adjacency_char_poly(&t.gamma);
                CheckResult::expect(
                    name,
                    got == predicted,
                    || json!({ "gamma": got.to_string(), "predicted": predicted.to_string() }),
                )
            }
            "block_split_spectrum" => {
                let t = self.triple();
                let gb = edge_adjacency_matrix(x, &o)?.gamma_blocks();
                let (plus, minus) = block_split_spectrum(&gb.a0, &gb.b0)?;
                let whole = plus.union(&minus).max_deviation(&adjacency_spectrum(&t.gamma)).unwrap_or(f64::INFINITY);
                let line = plus.max_deviation(&adjacency_spectrum(&t.base_line)).unwrap_or(f64::INFINITY);
                CheckResult::expect(
                    name,
                    whole <= opts.spectrum_tolerance && line <= opts.spectrum_tolerance,
                    || json!({ "union_deviation": whole, "line_deviation": line }),
                )
            }
            "equienergetic" => match equienergetic_report_with(x, opts.energy_tolerance) {
                Err(Error::PreconditionViolated(_)) => CheckResult::skipped(name, HYPOTHESIS),
                Err(e) => return Err(e),
                Ok(r) => CheckResult::expect(name, r.energies_equal && !r.cospectral, || json!(r)),
            },
            "crown_recovery" => {
                if x.is_cycle() || x.is_path() {
                    return Ok(CheckResult::skipped(name, HYPOTHESIS));
                }
                let gamma = &self.triple().gamma;
                match opts.crown.run(gamma) {
                    Err(e @ (Error::SizeLimitExceeded { .. } | Error::SearchBudgetExceeded(_))) => {
                        CheckResult::skipped(name, &e.to_string())
                    }
                    Err(e) => return Err(e),
                    Ok(None) => CheckResult::fail(name, json!("no crown partition found")),
                    Ok(Some((rec, _))) => {
                        let ok = are_isomorphic_bounded(&rec, x, HARNESS_ISO_LIMIT)?;
                        CheckResult::expect(name, ok, || json!({ "recovered": rec.edges() }))
                    }
                }
            }
            other => unreachable!("unknown check {other}"),
        })
    }
}

/// `[[0, I], [I, 0]]` of order `2m`.
fn swap_matrix(m: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * m, 2 * m, |i, j| i64::from(i % m == j % m && i != j))
}
