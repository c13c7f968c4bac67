use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dcover::canon::are_isomorphic_bounded;
use dcover::constructions::{
    cover_blocks, edge_adjacency_matrix, gamma_iterate, kronecker_double_cover, line_graph, CoverLabeling, Orientation,
    DEFAULT_ITERATE_LIMIT,
};
use dcover::io::{parse_edge_list, write_edge_list};
use dcover::spectral::{eigenvalues, Spectrum};
use dcover::theorems::{check_suite_with, run_corpus, SuiteOptions, HARNESS_ISO_LIMIT};
use dcover::zeta::{bass, cover_factors, g_poly_form, hashimoto, verify_factorizations, ZetaReciprocal};
use dcover::{Error, Family, Graph, IntPoly};

#[derive(Parser)]
#[command(
    name = "dcover",
    version,
    about = "Symmetric edge graphs, double covers of line graphs, and their zeta functions"
)]
struct Cli {
    /// Accept self-loops and duplicate edges in input, dropping them.
    #[arg(long, global = true)]
    lenient: bool,
    /// Write output here instead of standard output.
    #[arg(short, long, global = true, default_value = "-")]
    output: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named family as an edge list, e.g. `gen cycle 5` or `gen complete_bipartite 2 3`.
    Gen { family: String, params: Vec<usize> },
    /// Map an edge list to another edge list.
    Transform {
        kind: TransformKind,
        #[arg(default_value = "-")]
        input: String,
        /// Apply the transformation this many times.
        #[arg(long, default_value_t = 1)]
        iterate: usize,
        /// Seed for `shuffle`.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit a matrix as CSV, rows in label order e_1..e_m, e_1^-1..e_m^-1.
    Matrix {
        kind: MatrixKind,
        #[arg(default_value = "-")]
        input: String,
        /// Cover labeling JSON for `PQ`; defaults to the one induced by the default orientation.
        #[arg(long)]
        labeling: Option<String>,
    },
    /// Reciprocal of the Ihara zeta function.
    Zeta {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Also print the factorizations over the three double covers of the line graph.
        #[arg(long)]
        factor: bool,
        #[arg(long)]
        json: bool,
    },
    /// Adjacency spectrum as JSON.
    Spectrum {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Graph energy as JSON.
    Energy {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Exit 0 if the two graphs are isomorphic, 1 otherwise.
    Iso { a: String, b: String },
    /// Run every check on one graph and print its JSON report.
    Verify {
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        suite: SuiteFlags,
    },
    /// Run every check on all connected graphs up to `--nmax` vertices.
    Corpus {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        suite: SuiteFlags,
    },
}

#[derive(clap::Args)]
struct SuiteFlags {
    /// Record per-check wall time in the report.
    #[arg(long)]
    timings: bool,
    /// Tolerance for floating-point spectral comparisons.
    #[arg(long)]
    tolerance: Option<f64>,
}

impl SuiteFlags {
    fn options(&self) -> SuiteOptions {
        let mut opts = SuiteOptions { timings: self.timings, ..SuiteOptions::default() };
        if let Some(t) = self.tolerance {
            opts.energy_tolerance = t;
            opts.spectrum_tolerance = t;
        }
        opts
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Gamma,
    Line,
    Kronecker2,
    Shuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    #[value(name = "M")]
    M,
    #[value(name = "gammaA")]
    GammaA,
    #[value(name = "PQ")]
    Pq,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hashimoto,
    Bass,
    Both,
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Negative(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = match run(&cli) {
        Ok(text) => (text, ExitCode::SUCCESS),
        Err(Failure::Negative(text)) => (text, ExitCode::from(1)),
        Err(Failure::Input(msg)) => {
            eprintln!("dcover: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli.output, &out) {
        eprintln!("dcover: {e}");
        return ExitCode::from(2);
    }
    code
}

fn emit(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()
    } else {
        fs::write(path, text)
    }
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn read_graph(path: &str, lenient: bool) -> Result<Graph, Failure> {
    parse_edge_list(&read_text(path)?, lenient).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn run(cli: &Cli) -> Outcome {
    let lenient = cli.lenient;
    match &cli.command {
        Command::Gen { family, params } => Ok(write_edge_list(&Family::from_name(family, params)?.generate()?)),
        Command::Transform { kind, input, iterate, seed } => {
            let g = read_graph(input, lenient)?;
            transform(&g, *kind, *iterate, *seed).map(|h| write_edge_list(&h))
        }
        Command::Matrix { kind, input, labeling } => {
            let g = read_graph(input, lenient)?;
            let o = Orientation::default_for(&g);
            let m = match kind {
                MatrixKind::M => edge_adjacency_matrix(&g, &o)?.matrix().clone(),
                MatrixKind::GammaA => edge_adjacency_matrix(&g, &o)?.symmetrized(),
                MatrixKind::Pq => {
                    let lab = match labeling {
                        Some(path) => CoverLabeling::from_json(&read_text(path)?, g.n())?,
                        None => kronecker_double_cover(&g).1,
                    };
                    cover_blocks(&g, &lab)?.full()
                }
            };
            Ok(m.to_csv())
        }
        Command::Zeta { input, method, factor, json } => zeta(&read_graph(input, lenient)?, *method, *factor, *json),
        Command::Spectrum { input } => Ok(spectrum(&read_graph(input, lenient)?)?.to_json() + "\n"),
        Command::Energy { input } => {
            let s = spectrum(&read_graph(input, lenient)?)?;
            Ok(serde_json::json!({ "dimension": s.dimension, "energy": s.energy() }).to_string() + "\n")
        }
        Command::Iso { a, b } => {
            let (g, h) = (read_graph(a, lenient)?, read_graph(b, lenient)?);
            if are_isomorphic_bounded(&g, &h, HARNESS_ISO_LIMIT)? {
                Ok("isomorphic\n".into())
            } else {
                Err(Failure::Negative("not isomorphic\n".into()))
            }
        }
        Command::Verify { input, suite } => {
            let report = check_suite_with(&read_graph(input, lenient)?, &suite.options())?;
            let line = report.to_json_line() + "\n";
            if report.failures() == 0 {
                Ok(line)
            } else {
                Err(Failure::Negative(line))
            }
        }
        Command::Corpus { nmax, jobs, suite } => {
            let run = run_corpus(*nmax, *jobs, &suite.options())?;
            let mut out = String::new();
            for r in &run.reports {
                out.push_str(&r.to_json_line());
                out.push('\n');
            }
            eprint!("{}", run.summary.table());
            for (a, b) in &run.gamma_injective.collisions {
                eprintln!("gamma_injective collision: {a} {b}");
            }
            if run.summary.failures() == 0 {
                Ok(out)
            } else {
                Err(Failure::Negative(out))
            }
        }
    }
}

fn transform(g: &Graph, kind: TransformKind, iterate: usize, seed: Option<u64>) -> Result<Graph, Failure> {
    if let TransformKind::Gamma = kind {
        return Ok(gamma_iterate(g, iterate, DEFAULT_ITERATE_LIMIT)?);
    }
    let mut rng = match (kind, seed) {
        (TransformKind::Shuffle, None) => return Err(Failure::Input("shuffle needs --seed".into())),
        (_, s) => ChaCha8Rng::seed_from_u64(s.unwrap_or(0)),
    };
    let mut h = g.clone();
    for _ in 0..iterate {
        h = match kind {
            TransformKind::Line => line_graph(&h),
            TransformKind::Kronecker2 => kronecker_double_cover(&h).0,
            TransformKind::Shuffle => {
                let mut perm: Vec<usize> = (0..h.n()).collect();
                perm.shuffle(&mut rng);
                h.relabel(&perm)
            }
            TransformKind::Gamma => unreachable!(),
        };
        if h.n() > DEFAULT_ITERATE_LIMIT {
            return Err(Error::SizeLimitExceeded { actual: h.n(), limit: DEFAULT_ITERATE_LIMIT }.into());
        }
    }
    Ok(h)
}

fn spectrum(g: &Graph) -> Result<Spectrum, Failure> {
    Ok(eigenvalues(&g.adjacency_matrix())?)
}

fn method_name(z: &ZetaReciprocal) -> &'static str {
    match z.method {
        dcover::zeta::ZetaMethod::Hashimoto => "hashimoto",
        dcover::zeta::ZetaMethod::Bass => "bass",
    }
}

fn poly_line(label: &str, p: &IntPoly, json: bool) -> String {
    if json {
        format!("{{\"name\":\"{label}\",{}\n", &p.to_json()[1..])
    } else {
        format!("{label}: {p}\n")
    }
}

fn zeta(g: &Graph, method: Method, factor: bool, json: bool) -> Outcome {
    let mut routes = Vec::new();
    if method != Method::Bass {
        routes.push(hashimoto(g));
    }
    if method != Method::Hashimoto {
        routes.push(bass(g)?);
    }
    let mut out: String = routes.iter().map(|z| poly_line(method_name(z), &z.poly, json)).collect();
    if routes.len() == 2 && routes[0].poly != routes[1].poly {
        return Err(Failure::Negative(out + "routes disagree\n"));
    }
    if !factor {
        return Ok(out);
    }
    if g.m() == 0 {
        return Err(Failure::Input("--factor needs at least one edge".into()));
    }
    let f = cover_factors(g);
    let e = f.exponent;
    out += &if json { format!("{{\"name\":\"exponent\",\"value\":{e}}}\n") } else { format!("exponent: {e}\n") };
    out += &poly_line("plus", &f.plus, json);
    out += &poly_line("minus", &f.minus, json);
    if let Ok(q) = g_poly_form(g).polynomial() {
        out += &poly_line("g", &q, json);
    }
    let mut ok = true;
    for c in verify_factorizations(g) {
        ok &= c.holds;
        out += &if json {
            serde_json::to_string(&c).expect("check serialises") + "\n"
        } else if c.holds {
            format!("{}: holds\n", c.name)
        } else {
            format!("{}: fails | {} != {}\n", c.name, c.lhs, c.rhs)
        };
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure::Negative(out))
    }
}
