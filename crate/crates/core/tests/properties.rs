use num_bigint::BigInt;
use proptest::prelude::*;

use dcover::canon::{are_isomorphic_bounded, canonical_form, canonical_form_bounded, is_isomorphism, isomorphism};
use dcover::charpoly::char_poly;
use dcover::constructions::{
    cover_blocks, edge_adjacency_matrix, kronecker_double_cover, kronecker_product, symmetric_edge_graph,
    symmetric_edge_graph_with, CoverLabeling, Orientation,
};
use dcover::io::{parse_edge_list, write_edge_list};
use dcover::spectral::{adjacency_char_poly, adjacency_spectrum, eigenvalues};
use dcover::theorems::{check_suite, Status, CHECK_NAMES};
use dcover::zeta::{
    bass_form, count_nb_closed_walks, cross_formula_holds, hashimoto, nb_walk_trace, poly_det, PolyMatrix,
};
use dcover::{Family, Graph, IntMatrix, IntPoly};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |mask| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(e, _)| e)
                .collect();
            Graph::from_edges(n, &pairs).unwrap()
        })
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn graph_with_flips(max_n: usize) -> impl Strategy<Value = (Graph, Vec<bool>)> {
    graph(max_n).prop_flat_map(|g| {
        let m = g.m();
        (Just(g), proptest::collection::vec(any::<bool>(), m))
    })
}

fn flipped(g: &Graph, flips: &[bool]) -> Orientation {
    let arcs: Vec<(usize, usize)> =
        g.edges().iter().zip(flips).map(|(&(u, v), &f)| if f { (v, u) } else { (u, v) }).collect();
    Orientation::from_arcs(g, &arcs).unwrap()
}

fn brute_triangles(g: &Graph) -> u64 {
    let n = g.n();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                t += u64::from(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));
            }
        }
    }
    t
}

/// Laplace expansion along the first row, polynomial entries.
fn cofactor_det(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut total = IntPoly::zero();
    for j in 0..n {
        let minor: Vec<Vec<IntPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

fn small_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| IntMatrix::from_fn(n, n, |i, j| v[i * n + j]))
    })
}

fn symmetric_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    small_matrix(max_dim).prop_map(|a| &a + &a.transpose())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_sum_is_twice_edges(g in graph(9)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
    }

    #[test]
    fn triangles_three_ways(g in graph(8)) {
        let a = g.adjacency_matrix();
        let t = g.count_triangles();
        prop_assert_eq!(t, brute_triangles(&g));
        prop_assert_eq!(a.pow(3).trace() as u64, 6 * t);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_with_perm(8)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        let map = isomorphism(&g, &h, 64).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(is_isomorphism(&g, &h, &map));
    }

    #[test]
    fn isomorphism_witnesses_verify(g in graph(6), h in graph(6)) {
        match isomorphism(&g, &h, 64).unwrap() {
            Some(map) => prop_assert!(is_isomorphism(&g, &h, &map)),
            None => prop_assert_ne!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap()),
        }
    }

    #[test]
    fn bridges_match_removal_oracle(g in graph(7)) {
        let base = g.component_count();
        let mut oracle = Vec::new();
        for (k, &e) in g.edges().iter().enumerate() {
            let rest: Vec<(usize, usize)> =
                g.edges().iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &p)| p).collect();
            if Graph::from_edges(g.n(), &rest).unwrap().component_count() > base {
                oracle.push(e);
            }
        }
        let mut got = g.bridges();
        got.sort_unstable();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn edge_list_round_trip(g in graph(9)) {
        let text = write_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text, false).unwrap(), g);
    }

    #[test]
    fn m_matrix_properties_any_orientation((g, flips) in graph_with_flips(7)) {
        let o = flipped(&g, &flips);
        let bad = edge_adjacency_matrix(&g, &o).unwrap().property_violations(&g, &o);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn gamma_edge_count_and_traces(g in graph(7)) {
        let m = g.m();
        let mtx = edge_adjacency_matrix(&g, &Orientation::default_for(&g)).unwrap();
        let s = mtx.symmetrized();
        let e = symmetric_edge_graph(&g).m() as i64;
        let squares: usize = g.degrees().iter().map(|d| d * d).sum();
        prop_assert_eq!(e as usize, squares - 2 * m);
        prop_assert_eq!((&s * &s).trace(), 2 * e);
        prop_assert_eq!(2 * mtx.matrix().entry_sum(), 2 * e);
        let j = IntMatrix::from_fn(2 * m, 2 * m, |a, b| i64::from(a != b && a % m == b % m));
        prop_assert_eq!(&j * &s, &s * &j);
    }

    #[test]
    fn reversing_edges_swaps_gamma_vertices((g, flips) in graph_with_flips(7)) {
        let m = g.m();
        let gamma = symmetric_edge_graph(&g);
        let other = symmetric_edge_graph_with(&g, &flipped(&g, &flips)).unwrap();
        let perm: Vec<usize> = (0..2 * m).map(|i| if flips[i % m] { (i + m) % (2 * m) } else { i }).collect();
        prop_assert_eq!(gamma.relabel(&perm), other);
    }

    #[test]
    fn signed_block_identity_any_orientation((g, flips) in graph_with_flips(7)) {
        prop_assume!(g.m() > 0);
        let o = flipped(&g, &flips);
        let lab = CoverLabeling::from_orientation(&g, &o).unwrap();
        lab.validate(&g).unwrap();
        let cb = cover_blocks(&g, &lab).unwrap();
        let gb = edge_adjacency_matrix(&g, &o).unwrap().gamma_blocks();
        prop_assert_eq!(&gb.a0 - &gb.b0, -&(&cb.p - &cb.q));
    }

    #[test]
    fn double_cover_is_product_with_k2(g in graph(7)) {
        let k2 = Family::Path(2).generate().unwrap();
        let (cover, _) = kronecker_double_cover(&g);
        prop_assert!(are_isomorphic_bounded(&cover, &kronecker_product(&g, &k2), 64).unwrap());
    }

    #[test]
    fn gamma_of_disjoint_union(g in graph(6), h in graph(6)) {
        prop_assume!(g.m() + h.m() <= 14);
        let lhs = symmetric_edge_graph(&g.disjoint_union(&h));
        let rhs = symmetric_edge_graph(&g).disjoint_union(&symmetric_edge_graph(&h));
        prop_assert!(are_isomorphic_bounded(&lhs, &rhs, 64).unwrap());
    }

    #[test]
    fn nb_walks_match_brute_force(g in graph(6), k in 1usize..=6) {
        prop_assert_eq!(nb_walk_trace(&g, k as u32), count_nb_closed_walks(&g, k));
        prop_assert_eq!(nb_walk_trace(&g, 3), 6 * g.count_triangles());
    }

    #[test]
    fn zeta_cross_formula_and_constant_term(g in graph(7)) {
        prop_assert!(cross_formula_holds(&g));
        prop_assert_eq!(hashimoto(&g).poly.coeff(0), BigInt::from(1));
        prop_assert_eq!(bass_form(&g).det.coeff(0), BigInt::from(1));
    }

    #[test]
    fn char_poly_matches_cofactor_expansion(a in small_matrix(6)) {
        let n = a.rows();
        let rows: Vec<Vec<IntPoly>> = (0..n)
            .map(|i| (0..n).map(|j| IntPoly::from_i64s(&[-a[(i, j)], i64::from(i == j)])).collect())
            .collect();
        prop_assert_eq!(char_poly(&a), cofactor_det(&rows));
    }

    #[test]
    fn char_poly_matches_eigenvalue_product(a in symmetric_matrix(12)) {
        let lambdas = eigenvalues(&a).unwrap().eigenvalues;
        let mut prod = vec![1.0f64];
        for l in lambdas {
            let mut next = vec![0.0; prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= l * c;
            }
            prod = next;
        }
        let exact = char_poly(&a);
        for (k, approx) in prod.iter().enumerate() {
            let c: f64 = exact.coeff(k).to_string().parse().unwrap();
            prop_assert!((c - approx).abs() <= 1e-6 * c.abs().max(1.0), "k = {}: {} vs {}", k, c, approx);
        }
    }

    #[test]
    fn poly_det_matches_cofactor_expansion(
        n in 0usize..=4,
        raw in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 16),
    ) {
        let rows: Vec<Vec<IntPoly>> =
            (0..n).map(|i| (0..n).map(|j| IntPoly::from_i64s(&raw[i * 4 + j])).collect()).collect();
        let pencil = PolyMatrix::from_fn(n, |i, j| rows[i][j].clone());
        prop_assert_eq!(poly_det(&pencil, pencil.degree_bound()).unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn energy_ignores_labels((g, perm) in graph_with_perm(8)) {
        let e = adjacency_spectrum(&g).energy();
        prop_assert!((e - adjacency_spectrum(&g.relabel(&perm)).energy()).abs() <= 1e-9);
    }

    #[test]
    fn poly_json_round_trip(c in proptest::collection::vec(any::<i64>(), 0..12), shift in 0u32..80) {
        let p = IntPoly::new(c.iter().map(|&x| BigInt::from(x) << shift).collect());
        prop_assert_eq!(IntPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn labeling_json_round_trip(g in graph(7)) {
        let (_, lab) = kronecker_double_cover(&g);
        let back = CoverLabeling::from_json(&lab.to_json(), g.n()).unwrap();
        prop_assert_eq!(&back, &lab);
        back.validate(&g).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn line_spectrum_divides_gamma_spectrum(g in graph(6)) {
        prop_assume!(g.m() > 0);
        let line = dcover::constructions::line_graph(&g);
        prop_assert!(adjacency_char_poly(&line).divides(&adjacency_char_poly(&symmetric_edge_graph(&g))));
    }

    #[test]
    fn suite_reports_are_well_formed(g in graph(6)) {
        let r = check_suite(&g).unwrap();
        let names: Vec<&str> = r.checks.iter().map(|c| c.name).collect();
        prop_assert_eq!(names, CHECK_NAMES.to_vec());
        for c in &r.checks {
            if c.status == Status::Fail {
                prop_assert!(c.witness.is_some());
            }
        }
        prop_assert_eq!(r.failures(), 0, "{}", r.to_json_line());
        let cf = canonical_form_bounded(&g, 64).unwrap();
        prop_assert_eq!(r.graph_id.as_str(), cf.certificate());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parsers_never_panic(text in "[0-9 #\\-\\n]{0,40}", json in "[\\[\\]{}\",:a-z_0-9\\-^ ]{0,60}", n in 0usize..8) {
        let _ = parse_edge_list(&text, false);
        let _ = parse_edge_list(&text, true);
        let _ = IntPoly::from_json(&json);
        let _ = CoverLabeling::from_json(&json, n);
    }
}
