//! Reciprocals of the Ihara zeta function.
//!
//! Two routes: `det(I - Mu)` from the non-backtracking edge matrix, and the
//! vertex form `(1-u²)^(m-n) det(I - Au + Qu²)`. They are computed by
//! unrelated code (characteristic polynomial reversal vs. determinant
//! interpolation), so agreement between them is a real check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::charpoly::char_poly;
use crate::constructions::{
    edge_adjacency_matrix, kronecker_double_cover, line_graph, line_of_cover, symmetric_edge_graph, Orientation,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;

/// Square matrix of polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> IntPoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    /// `I - A u + Q u²` with `Q = diag(q)`.
    pub fn quadratic_pencil(a: &IntMatrix, q: &[i64]) -> Self {
        assert!(a.is_square() && q.len() == a.rows());
        Self::from_fn(a.rows(), |i, j| {
            let c0 = i64::from(i == j);
            let c2 = if i == j { q[i] } else { 0 };
            IntPoly::from_i64s(&[c0, -a[(i, j)], c2])
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.n + j]
    }

    fn eval(&self, x: &BigInt) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).eval(x)).collect()).collect()
    }

    /// Sum of the row maxima of entry degrees: always an upper bound on the
    /// determinant's degree.
    pub fn degree_bound(&self) -> usize {
        (0..self.n).map(|i| (0..self.n).filter_map(|j| self.entry(i, j).degree()).max().unwrap_or(0)).sum()
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Evaluation points `0, 1, -1, 2, -2, ...`.
fn point(i: usize) -> BigInt {
    let k = i.div_ceil(2) as i64;
    BigInt::from(if i % 2 == 1 { k } else { -k })
}

/// Exact determinant of a polynomial matrix whose determinant has degree at
/// most `degree_bound`. Uses `degree_bound + 2` evaluation points; the extra
/// point is a sentinel that exposes an understated bound.
pub fn poly_det(pencil: &PolyMatrix, degree_bound: usize) -> Result<IntPoly> {
    let count = degree_bound + 2;
    let xs: Vec<BigInt> = (0..count).map(point).collect();
    let ys: Vec<BigInt> = xs.iter().map(|x| bareiss_det(pencil.eval(x))).collect();
    let p = interpolate(&xs, &ys)?;
    if p.degree().is_some_and(|d| d > degree_bound) {
        return Err(Error::DegreeBoundExceeded(degree_bound));
    }
    Ok(p)
}

/// Newton interpolation kept in the integers; a non-integral divided
/// difference means no integer polynomial of that degree fits.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<IntPoly> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::NonIntegerInterpolation);
            }
            dd[i] = q;
        }
    }
    let mut acc = IntPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = IntPoly::new(vec![-xs[i].clone(), BigInt::one()]);
        acc = &(&acc * &factor) + &IntPoly::constant(dd[i].clone());
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaMethod {
    Hashimoto,
    Bass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaReciprocal {
    pub poly: IntPoly,
    pub method: ZetaMethod,
    /// `|E| - |V|`.
    pub r_minus_1: i64,
    /// Set when the vertex form had a negative prefactor exponent and the
    /// polynomial was obtained by exact division.
    pub from_rational: bool,
}

/// `(1 - u²)^exponent · det`, where `exponent` may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefactorForm {
    pub det: IntPoly,
    pub exponent: i64,
}

impl PrefactorForm {
    /// The value as a polynomial, dividing out a negative prefactor exactly.
    pub fn polynomial(&self) -> Result<IntPoly> {
        let k = self.exponent.unsigned_abs() as usize;
        if self.exponent >= 0 {
            Ok(&IntPoly::one_minus_u2_pow(k) * &self.det)
        } else {
            self.det.div_exact(&IntPoly::one_minus_u2_pow(k))
        }
    }

    /// `self · (1-u²)^max(0, -e)`, cleared of any negative exponent.
    pub fn cleared(&self, extra: usize) -> IntPoly {
        let e = self.exponent + extra as i64;
        assert!(e >= 0, "cleared with too small an offset");
        &IntPoly::one_minus_u2_pow(e as usize) * &self.det
    }
}

pub fn hashimoto(g: &Graph) -> ZetaReciprocal {
    let m = g.m();
    let mtx = edge_adjacency_matrix(g, &Orientation::default_for(g)).expect("default orientation");
    let poly = char_poly(mtx.matrix()).reversed(2 * m);
    ZetaReciprocal { poly, method: ZetaMethod::Hashimoto, r_minus_1: m as i64 - g.n() as i64, from_rational: false }
}

/// `(1-u²)^(m-n)` and `det(I - Au + Qu²)` kept apart.
pub fn bass_form(g: &Graph) -> PrefactorForm {
    let q: Vec<i64> = g.degrees().iter().map(|&d| d as i64 - 1).collect();
    let pencil = PolyMatrix::quadratic_pencil(&g.adjacency_matrix(), &q);
    let det = poly_det(&pencil, 2 * g.n()).expect("pencil degree is at most 2n");
    PrefactorForm { det, exponent: g.m() as i64 - g.n() as i64 }
}

pub fn bass(g: &Graph) -> Result<ZetaReciprocal> {
    let form = bass_form(g);
    Ok(ZetaReciprocal {
        poly: form.polynomial()?,
        method: ZetaMethod::Bass,
        r_minus_1: form.exponent,
        from_rational: form.exponent < 0,
    })
}

/// `det(I - Mu) · (1-u²)^max(0, n-m) == (1-u²)^max(0, m-n) · det(I - Au + Qu²)`.
pub fn cross_formula_holds(g: &Graph) -> bool {
    let lhs = hashimoto(g).poly;
    let form = bass_form(g);
    let neg = (-form.exponent).max(0) as usize;
    &lhs * &IntPoly::one_minus_u2_pow(neg) == form.cleared(neg)
}

/// `trace(M^k)`: closed non-backtracking tailless walks of length `k`.
pub fn nb_walk_trace(g: &Graph, k: u32) -> u64 {
    let mtx = edge_adjacency_matrix(g, &Orientation::default_for(g)).expect("default orientation");
    mtx.matrix().pow(k).trace() as u64
}

/// Brute-force count of the walks [`nb_walk_trace`] counts, by depth-first
/// extension of arc sequences.
pub fn count_nb_closed_walks(g: &Graph, k: usize) -> u64 {
    if k == 0 {
        return 2 * g.m() as u64;
    }
    let o = Orientation::default_for(g);
    let arcs: Vec<(usize, usize)> = (0..2 * g.m()).map(|i| o.arc(i)).collect();
    let mut total = 0;
    for first in 0..arcs.len() {
        let mut stack = vec![(first, 1usize)];
        while let Some((cur, len)) = stack.pop() {
            let (s, t) = arcs[cur];
            if len == k {
                let (fs, ft) = arcs[first];
                if t == fs && ft != s {
                    total += 1;
                }
                continue;
            }
            for (next, &(ns, nt)) in arcs.iter().enumerate() {
                if ns == t && nt != s {
                    stack.push((next, len + 1));
                }
            }
        }
    }
    total
}

/// Shared ingredients of the cover factorizations: with `L = L(X)`,
/// `e = |E(L)| - |V(L)|` and `Q_L = diag(deg_L - 1)`,
/// `plus = det(I - A_L u + Q_L u²)` and `minus = det(I - (A0 - B0) u + Q_L u²)`.
#[derive(Clone, Debug)]
pub struct CoverFactors {
    pub exponent: i64,
    pub plus: IntPoly,
    pub minus: IntPoly,
}

pub fn cover_factors(g: &Graph) -> CoverFactors {
    let l = line_graph(g);
    let q: Vec<i64> = l.degrees().iter().map(|&d| d as i64 - 1).collect();
    let blocks = edge_adjacency_matrix(g, &Orientation::default_for(g)).expect("default orientation").gamma_blocks();
    let bound = 2 * g.m();
    let plus = poly_det(&PolyMatrix::quadratic_pencil(&l.adjacency_matrix(), &q), bound).expect("degree within 2m");
    let minus =
        poly_det(&PolyMatrix::quadratic_pencil(&(&blocks.a0 - &blocks.b0), &q), bound).expect("degree within 2m");
    CoverFactors { exponent: l.m() as i64 - l.n() as i64, plus, minus }
}

/// `g(u) = (1-u²)^(|E(L)|-|V(L)|) det(I - (A0-B0)u + Q(L)u²)`.
pub fn g_poly_form(g: &Graph) -> PrefactorForm {
    let f = cover_factors(g);
    PrefactorForm { det: f.minus, exponent: f.exponent }
}

pub fn g_poly(g: &Graph) -> Result<IntPoly> {
    g_poly_form(g).polynomial()
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Both sides after clearing negative prefactors, as display strings.
    pub lhs: String,
    pub rhs: String,
}

/// Each cover's zeta reciprocal, computed on the constructed cover, against
/// the product predicted from base-graph data.
pub fn verify_factorizations(g: &Graph) -> Vec<FactorizationCheck> {
    let f = cover_factors(g);
    let two_e = 2 * f.exponent;
    let neg = (-two_e).max(0) as usize;
    let prefactor = IntPoly::one_minus_u2_pow((two_e + neg as i64) as usize);
    let clear = IntPoly::one_minus_u2_pow(neg);

    let l = line_graph(g);
    let (_, lab) = kronecker_double_cover(g);
    let (cover_of_line, _) = kronecker_double_cover(&l);
    let cases: [(&'static str, Graph, IntPoly); 3] = [
        ("gamma", symmetric_edge_graph(g), &f.plus * &f.minus),
        ("line_of_cover", line_of_cover(&lab), &f.plus * &f.minus.negate_argument()),
        ("cover_of_line", cover_of_line, &f.plus * &f.plus.negate_argument()),
    ];
    cases
        .into_iter()
        .map(|(name, cover, product)| {
            let lhs = &hashimoto(&cover).poly * &clear;
            let rhs = &prefactor * &product;
            FactorizationCheck { name, holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
        })
        .collect()
}
