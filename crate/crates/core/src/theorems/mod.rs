//! Graph enumeration and the verification harness.

pub mod corpus;
pub mod enumerate;
pub mod report;
pub mod suite;

pub use corpus::{gamma_injectivity, run_corpus, CorpusRun, InjectivityCheck};
pub use enumerate::{enumerate_all, enumerate_connected, MAX_ENUMERATION_ORDER};
pub use report::{CheckResult, Status, Summary, VerificationReport};
pub use suite::{
    check_suite, check_suite_with, classify_cover_coincidences, cover_triple, equienergetic_report,
    equienergetic_report_with, is_line_cover_exception, predicted_coincidences, Coincidences, CoverTriple,
    EquienergeticReport, SuiteOptions, CHECK_NAMES, ENERGY_TOLERANCE, HARNESS_ISO_LIMIT, SPECTRUM_TOLERANCE,
};
