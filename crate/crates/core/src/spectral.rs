//! Adjacency spectra, energy and exact cospectrality.

use serde::Serialize;

use crate::charpoly::char_poly;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;

pub const MAX_EIGEN_DIM: usize = 256;
const EIGEN_MAX_ITER: usize = 100_000;

/// Real eigenvalues of a symmetric matrix, largest first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub dimension: usize,
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn energy(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x.abs()).sum()
    }

    /// Multiset union, re-sorted.
    pub fn union(&self, other: &Spectrum) -> Spectrum {
        let mut eigenvalues: Vec<f64> = self.eigenvalues.iter().chain(&other.eigenvalues).copied().collect();
        sort_desc(&mut eigenvalues);
        Spectrum { dimension: self.dimension + other.dimension, eigenvalues }
    }

    /// Largest pointwise gap to another spectrum of the same size.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        if self.dimension != other.dimension {
            return None;
        }
        Some(self.eigenvalues.iter().zip(&other.eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serialises")
    }
}

fn sort_desc(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}

pub fn eigenvalues(a: &IntMatrix) -> Result<Spectrum> {
    let n = a.ensure_square()?;
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::SizeLimitExceeded { actual: n, limit: MAX_EIGEN_DIM });
    }
    if n == 0 {
        return Ok(Spectrum { dimension: 0, eigenvalues: Vec::new() });
    }
    let eig = a.to_f64().try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER).ok_or(Error::EigenNotConverged)?;
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    sort_desc(&mut eigenvalues);
    Ok(Spectrum { dimension: n, eigenvalues })
}

pub fn adjacency_spectrum(g: &Graph) -> Spectrum {
    eigenvalues(&g.adjacency_matrix()).expect("adjacency matrices are symmetric and within bounds")
}

pub fn energy(g: &Graph) -> f64 {
    adjacency_spectrum(g).energy()
}

pub fn adjacency_char_poly(g: &Graph) -> IntPoly {
    char_poly(&g.adjacency_matrix())
}

/// Exact: compares integer characteristic polynomials.
pub fn is_cospectral(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && adjacency_char_poly(g) == adjacency_char_poly(h)
}

/// Spectra of `A' + B'` and `A' - B'`, which together make up the spectrum of
/// `[[A', B'], [B', A']]`.
pub fn block_split_spectrum(a: &IntMatrix, b: &IntMatrix) -> Result<(Spectrum, Spectrum)> {
    Ok((eigenvalues(&(a + b))?, eigenvalues(&(a - b))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{edge_adjacency_matrix, symmetric_edge_graph, Orientation};
    use crate::graph::Family;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn known_spectra() {
        let k2 = adjacency_spectrum(&Family::Path(2).generate().unwrap());
        assert!(close(&k2.eigenvalues, &[1.0, -1.0], 1e-12));
        let c3 = adjacency_spectrum(&Family::Cycle(3).generate().unwrap());
        assert!(close(&c3.eigenvalues, &[2.0, -1.0, -1.0], 1e-12));
        let crown = adjacency_spectrum(&Family::Crown(3).generate().unwrap());
        assert!(close(&crown.eigenvalues, &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0], 1e-12));
        assert!((energy(&Family::Cycle(3).generate().unwrap()) - 4.0).abs() < 1e-12);
        assert!((energy(&Family::Path(2).generate().unwrap()) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(eigenvalues(&IntMatrix::from_rows(&[[0, 1], [0, 0]])), Err(Error::NotSymmetric));
        assert!(matches!(eigenvalues(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn cospectrality_is_exact() {
        let c6 = Family::Cycle(6).generate().unwrap();
        let c3 = Family::Cycle(3).generate().unwrap();
        assert!(!is_cospectral(&c6, &c3.disjoint_union(&c3)));
        assert!(is_cospectral(&c6, &c6));
        // The smallest cospectral pair: K_{1,4} and C_4 plus an isolated vertex.
        let c4k1 = Family::Cycle(4).generate().unwrap().disjoint_union(&Graph::empty(1));
        assert!(is_cospectral(&Family::Star(4).generate().unwrap(), &c4k1));
    }

    #[test]
    fn split_reassembles_full_spectrum() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 5), (1, 3), (0, 4)]).unwrap();
        let blocks = edge_adjacency_matrix(&g, &Orientation::default_for(&g)).unwrap().gamma_blocks();
        let (plus, minus) = block_split_spectrum(&blocks.a0, &blocks.b0).unwrap();
        let full = adjacency_spectrum(&symmetric_edge_graph(&g));
        assert!(plus.union(&minus).max_deviation(&full).unwrap() < 1e-7);
    }

    #[test]
    fn json_shape() {
        let s = adjacency_spectrum(&Family::Path(2).generate().unwrap());
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 2);
    }
}
