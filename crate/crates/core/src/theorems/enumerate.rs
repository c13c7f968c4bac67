//! One representative per isomorphism class of small graphs.

use std::collections::BTreeMap;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ENUMERATION_ORDER: usize = 7;

/// All graphs on exactly `n` vertices up to isomorphism, each in canonical
/// labelling, ordered by edge count and then certificate.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::SizeLimitExceeded { actual: n, limit: MAX_ENUMERATION_ORDER });
    }
    let empty = canonical_form(&Graph::empty(n))?;
    let mut layer: BTreeMap<String, Graph> = BTreeMap::from([(empty.certificate().to_string(), empty.graph())]);
    let mut out: Vec<Graph> = layer.values().cloned().collect();
    for _ in 0..n * n.saturating_sub(1) / 2 {
        let mut next = BTreeMap::new();
        for g in layer.values() {
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut pairs = g.edges().to_vec();
                    pairs.push((u, v));
                    let h = Graph::from_edges(n, &pairs)?;
                    let cf = canonical_form(&h)?;
                    next.entry(cf.certificate().to_string()).or_insert_with(|| cf.graph());
                }
            }
        }
        out.extend(next.values().cloned());
        layer = next;
    }
    Ok(out)
}

/// Connected graphs on `1..=n_max` vertices, one per isomorphism class.
pub fn enumerate_connected(n_max: usize) -> Result<Vec<Graph>> {
    if n_max > MAX_ENUMERATION_ORDER {
        return Err(Error::SizeLimitExceeded { actual: n_max, limit: MAX_ENUMERATION_ORDER });
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_all(n)?.into_iter().filter(Graph::is_connected));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbit counting over edge subsets: every labelled graph is visited and
    /// its whole orbit under the symmetric group is marked at once.
    fn brute_force_counts(n: usize) -> (usize, usize) {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut index = vec![vec![0usize; n]; n];
        for (k, &(u, v)) in slots.iter().enumerate() {
            index[u][v] = k;
            index[v][u] = k;
        }
        let perms = permutations(n);
        let mut seen = vec![false; 1 << slots.len()];
        let (mut all, mut connected) = (0, 0);
        for mask in 0..seen.len() {
            if seen[mask] {
                continue;
            }
            all += 1;
            let pairs: Vec<(usize, usize)> =
                slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            if Graph::from_edges(n, &pairs).unwrap().is_connected() {
                connected += 1;
            }
            for p in &perms {
                let image = pairs.iter().fold(0usize, |acc, &(u, v)| acc | 1 << index[p[u]][p[v]]);
                seen[image] = true;
            }
        }
        (all, connected)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn counts_match_orbit_oracle() {
        for n in 1..=5 {
            let (all, connected) = brute_force_counts(n);
            let got = enumerate_all(n).unwrap();
            assert_eq!(got.len(), all, "n = {n}");
            assert_eq!(got.iter().filter(|g| g.is_connected()).count(), connected, "n = {n}");
        }
    }

    #[test]
    fn connected_totals() {
        assert_eq!(enumerate_connected(1).unwrap(), vec![Graph::empty(1)]);
        assert_eq!(enumerate_connected(4).unwrap().len(), 10);
        let six = enumerate_connected(6).unwrap();
        assert_eq!(six.len(), 143);
        assert_eq!(six.iter().filter(|g| g.n() == 6).count(), 112);
    }

    #[test]
    fn order_is_capped() {
        assert!(enumerate_connected(8).is_err());
    }
}
