//! Runs the suite over every connected graph up to a given order.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form_bounded;
use crate::constructions::symmetric_edge_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::enumerate::enumerate_connected;
use super::report::{Status, Summary, VerificationReport};
use super::suite::{check_suite_with, SuiteOptions, HARNESS_ISO_LIMIT};

#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub reports: Vec<VerificationReport>,
    pub gamma_injective: InjectivityCheck,
    pub summary: Summary,
}

/// Distinct connected bases with at least one edge must have non-isomorphic
/// symmetric edge graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityCheck {
    pub status: Status,
    pub collisions: Vec<(String, String)>,
}

pub fn run_corpus(n_max: usize, jobs: usize, opts: &SuiteOptions) -> Result<CorpusRun> {
    let graphs = enumerate_connected(n_max)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let reports: Vec<VerificationReport> =
        pool.install(|| graphs.par_iter().map(|g| check_suite_with(g, opts)).collect::<Result<_>>())?;
    let gamma_injective = pool.install(|| gamma_injectivity(&graphs))?;
    let mut summary = Summary::default();
    for r in &reports {
        summary.add(r);
    }
    summary.add_check("gamma_injective", gamma_injective.status);
    Ok(CorpusRun { reports, gamma_injective, summary })
}

pub fn gamma_injectivity(graphs: &[Graph]) -> Result<InjectivityCheck> {
    let keyed: Vec<(String, String)> = graphs
        .par_iter()
        .filter(|g| g.m() > 0 && g.is_connected())
        .map(|g| {
            let base = canonical_form_bounded(g, HARNESS_ISO_LIMIT)?.certificate().to_string();
            let image = canonical_form_bounded(&symmetric_edge_graph(g), HARNESS_ISO_LIMIT)?.certificate().to_string();
            Ok((image, base))
        })
        .collect::<Result<_>>()?;
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (image, base) in keyed {
        match seen.get(&image) {
            Some(other) if *other != base => collisions.push((other.clone(), base)),
            Some(_) => {}
            None => {
                seen.insert(image, base);
            }
        }
    }
    let status = if collisions.is_empty() { Status::Pass } else { Status::Fail };
    Ok(InjectivityCheck { status, collisions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn small_corpus_is_clean_and_ordered() {
        let run = run_corpus(4, 2, &SuiteOptions::default()).unwrap();
        assert_eq!(run.reports.len(), 10);
        assert_eq!(run.summary.failures(), 0, "{}", run.summary.table());
        assert_eq!(run.gamma_injective.status, Status::Pass);
        let serial = run_corpus(4, 1, &SuiteOptions::default()).unwrap();
        let lines = |r: &CorpusRun| r.reports.iter().map(|x| x.to_json_line()).collect::<Vec<_>>();
        assert_eq!(lines(&run), lines(&serial));
    }

    #[test]
    fn injectivity_detects_collisions() {
        // γ(C3) and γ(C4) both double the cycle, but as C3+C3 vs C4+C4; two
        // copies of the same base must not count as a collision.
        let c3 = Family::Cycle(3).generate().unwrap();
        let same = gamma_injectivity(&[c3.clone(), c3.relabel(&[2, 0, 1])]).unwrap();
        assert_eq!(same.status, Status::Pass);
    }
}
