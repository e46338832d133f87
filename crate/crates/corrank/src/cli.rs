//! Command-line front end: `analyze`, `factorize`, `decompose`, `degree` and
//! `catalog` over the JSON document formats.
//!
//! Exit codes: 0 genuine / success, 1 not genuine, 2 input error,
//! 3 capacity exceeded, 4 detection-method disagreement.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bipartition::Bipartition;
use crate::document::{
    CutProductEntry, CutRankEntry, DecompositionDocument, FactorDocument, NamedState,
    ReportDocument, StateDocument, TermDocument, CATALOG_NAMES,
};
use crate::error::{Error, Result};
use crate::mixed::{self, Method};
use crate::pure;
use crate::state::AnyState;
use crate::Tolerances;

#[derive(Parser)]
#[command(
    name = "corrank",
    version,
    about = "Detect and factorize genuine multipartite correlations of n-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a state has genuine multipartite correlations.
    Analyze {
        /// State document path, or - for stdin.
        input: PathBuf,
        /// Rank tolerance (relative singular-value cutoff).
        #[arg(long)]
        tol: Option<f64>,
        /// Detection route for mixed states; defaults to the rank scan for
        /// pure inputs and the marginal oracle for mixed ones.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Include the per-cut table (ranks for pure, marginals for mixed).
        #[arg(long)]
        emit_ranks: bool,
        /// Machine-readable JSON report on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Decompose a state into genuinely correlated components.
    Factorize {
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Expand a pure state as a minimal sum of products across one cut.
    Decompose {
        input: PathBuf,
        /// Row-side qubit labels of the cut, comma separated (e.g. 1,3).
        #[arg(long, value_delimiter = ',', required = true)]
        cut: Vec<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Compute the degree of correlations.
    Degree {
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// List or emit the named states.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List every available state name.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Emit a named state as an explicit JSON document.
    Emit {
        /// Catalog name (see `catalog list`).
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        ell_prime: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        x: Option<u8>,
        #[arg(long)]
        y: Option<u8>,
        /// Seed for the random_* entries.
        #[arg(long)]
        seed: Option<u64>,
        /// Factor sizes for random_product, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Theorem3,
    Oracle,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Theorem3 => Method::Theorem3,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Both => Method::Both,
        }
    }
}

/// Parse std::env args, run, and return the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Run against an explicit argument list (first entry is the binary name).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap handles --help/--version as "errors" with success status
            let code = if err.use_stderr() { 2 } else { 0 };
            err.print().ok();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

/// Exit code for a failed run.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => 3,
        Error::MethodDisagreement { .. } => 4,
        _ => 2,
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze {
            input,
            tol,
            method,
            emit_ranks,
            json,
        } => cmd_analyze(&input, tol, method.map(Into::into), emit_ranks, json),
        Command::Factorize { input, tol, json } => cmd_factorize(&input, tol, json),
        Command::Decompose {
            input,
            cut,
            tol,
            json,
        } => cmd_decompose(&input, &cut, tol, json),
        Command::Degree { input, tol, json } => cmd_degree(&input, tol, json),
        Command::Catalog { action } => match action {
            CatalogAction::List { json } => cmd_catalog_list(json),
            CatalogAction::Emit {
                name,
                n,
                ell,
                ell_prime,
                p,
                x,
                y,
                seed,
                sizes,
            } => cmd_catalog_emit(
                &name,
                &EmitParams {
                    n,
                    ell,
                    ell_prime,
                    p,
                    x,
                    y,
                    seed,
                    sizes,
                },
            ),
        },
    }
}

fn tolerances(tol: Option<f64>) -> Result<Tolerances> {
    match tol {
        None => Ok(Tolerances::default()),
        Some(t) if t > 0.0 => Ok(Tolerances::with_rank(t)),
        Some(t) => Err(Error::BadTolerance(t)),
    }
}

fn load_document(path: &PathBuf) -> Result<StateDocument> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn default_method(state: &AnyState) -> Method {
    if state.is_pure() {
        Method::Theorem3
    } else {
        Method::Oracle
    }
}

fn print_report(report: &ReportDocument, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print_human(report);
    }
    Ok(())
}

fn fmt_cut(labels: &[usize]) -> String {
    let inner: Vec<String> = labels.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn print_human(report: &ReportDocument) {
    if let Some(verdict) = &report.verdict {
        println!(
            "verdict: {}",
            if verdict == "genuine" {
                "genuine"
            } else {
                "not genuine"
            }
        );
    }
    if let Some(cut) = &report.witness_cut {
        println!("witness cut: {}", fmt_cut(cut));
    }
    if let Some(degree) = report.degree {
        println!("degree: {degree}");
    }
    if let Some(witness) = &report.degree_witness {
        println!("degree witness: {}", fmt_cut(witness));
    }
    if let Some(factors) = &report.factors {
        println!("factors:");
        for f in factors {
            let kind = match &f.state {
                StateDocument::Pure { .. } => "pure",
                StateDocument::Mixed { .. } => "mixed",
                _ => "state",
            };
            println!("  {} ({kind}, {} qubits)", fmt_cut(&f.qubits), f.qubits.len());
        }
    }
    if let Some(d) = &report.decomposition {
        println!("cut: {}", fmt_cut(&d.cut));
        println!("terms: {}", d.term_count);
        println!("max residual: {:.3e}", d.max_residual);
    }
    if let Some(ranks) = &report.cut_ranks {
        println!("cut ranks:");
        for entry in ranks {
            println!("  {:<12} {}", fmt_cut(&entry.cut), entry.rank);
        }
    }
    if let Some(products) = &report.cut_products {
        println!("cut marginal products:");
        for entry in products {
            println!(
                "  {:<12} {} (distance {:.3e})",
                fmt_cut(&entry.cut),
                if entry.product { "product" } else { "correlated" },
                entry.frobenius_distance
            );
        }
    }
    if let Some(delta) = report.renormalized {
        println!("note: input renormalized (adjustment {delta:.3e})");
    }
    println!("method: {}", report.method);
    println!(
        "tolerances: rank {:.1e}, frobenius {:.1e}, eigen-zero {:.1e}",
        report.tolerances.rank, report.tolerances.frobenius, report.tolerances.eigen_zero
    );
    println!("time: {:.3} ms", report.timing_ms);
}

fn cmd_analyze(
    input: &PathBuf,
    tol: Option<f64>,
    method: Option<Method>,
    emit_ranks: bool,
    json: bool,
) -> Result<i32> {
    let started = Instant::now();
    let tols = tolerances(tol)?;
    let doc = load_document(input)?;
    let (state, renormalized) = doc.ingest()?;
    let method = method.unwrap_or_else(|| default_method(&state));

    let outcome = mixed::is_genuine(&state, &tols, method)?;
    let mut report = ReportDocument::new(doc, method.to_string(), &tols);
    report.renormalized = renormalized;
    report.verdict = Some(verdict_str(outcome.genuine));
    report.witness_cut = outcome
        .witness_cut
        .map(|cut| cut.members().to_vec());
    if emit_ranks {
        attach_cut_table(&mut report, &state, &tols)?;
    }
    report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    print_report(&report, json)?;
    Ok(if outcome.genuine { 0 } else { 1 })
}

fn verdict_str(genuine: bool) -> String {
    if genuine { "genuine" } else { "not_genuine" }.to_string()
}

fn attach_cut_table(
    report: &mut ReportDocument,
    state: &AnyState,
    tols: &Tolerances,
) -> Result<()> {
    match state {
        AnyState::Pure(psi) => {
            let mut entries = Vec::new();
            for s in Bipartition::canonical_cuts(psi.n()) {
                entries.push(CutRankEntry {
                    cut: s.members().to_vec(),
                    rank: crate::coeff::cut_rank(psi, &s, tols.rank)?,
                });
            }
            report.cut_ranks = Some(entries);
        }
        AnyState::Mixed(rho) => {
            let mut entries = Vec::new();
            for s in Bipartition::canonical_cuts(rho.n()) {
                let left = rho.reduce(&s)?;
                let right = rho.reduce(&s.complement())?;
                let candidate = crate::state::MixedState::assemble(&s, &left, &right)?;
                let distance = rho.matrix().frobenius_distance(candidate.matrix());
                entries.push(CutProductEntry {
                    cut: s.members().to_vec(),
                    product: distance < tols.frobenius,
                    frobenius_distance: distance,
                });
            }
            report.cut_products = Some(entries);
        }
    }
    Ok(())
}

fn cmd_factorize(input: &PathBuf, tol: Option<f64>, json: bool) -> Result<i32> {
    let started = Instant::now();
    let tols = tolerances(tol)?;
    let doc = load_document(input)?;
    let (state, renormalized) = doc.ingest()?;

    let mut report = ReportDocument::new(doc, default_method(&state).to_string(), &tols);
    report.renormalized = renormalized;
    let (factor_docs, genuine) = match &state {
        AnyState::Pure(psi) => {
            let f = pure::factorize(psi, tols.rank)?;
            report.global_phase = Some([f.global_phase.re, f.global_phase.im]);
            let docs: Vec<FactorDocument> = f
                .factors
                .iter()
                .map(|fac| FactorDocument {
                    qubits: fac.qubits.clone(),
                    state: StateDocument::from_state(&fac.state.clone().into()),
                })
                .collect();
            let genuine = f.factors.len() == 1 && f.factors[0].qubits.len() >= 2;
            (docs, genuine)
        }
        AnyState::Mixed(rho) => {
            let factors = mixed::factorize_mixed(rho, &tols)?;
            let docs: Vec<FactorDocument> = factors
                .iter()
                .map(|fac| FactorDocument {
                    qubits: fac.qubits.clone(),
                    state: StateDocument::from_state(&fac.state.clone().into()),
                })
                .collect();
            let genuine = factors.len() == 1 && factors[0].qubits.len() >= 2;
            (docs, genuine)
        }
    };
    report.verdict = Some(verdict_str(genuine));
    report.factors = Some(factor_docs);
    report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    print_report(&report, json)?;
    Ok(if genuine { 0 } else { 1 })
}

fn cmd_decompose(input: &PathBuf, cut: &[usize], tol: Option<f64>, json: bool) -> Result<i32> {
    let started = Instant::now();
    let tols = tolerances(tol)?;
    let doc = load_document(input)?;
    let (state, renormalized) = doc.ingest()?;
    let psi = match &state {
        AnyState::Pure(psi) => psi,
        AnyState::Mixed(_) => {
            return Err(Error::Unsupported(
                "sum-of-products decomposition takes a pure state".into(),
            ))
        }
    };
    let s = Bipartition::new(psi.n(), cut.iter().copied())?;
    let sop = pure::sum_of_products(psi, &s, tols.rank)?;
    let rebuilt = sop.reconstruct_amplitudes();
    let max_residual = rebuilt
        .iter()
        .zip(psi.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let mut report = ReportDocument::new(doc, "rank_expansion".to_string(), &tols);
    report.renormalized = renormalized;
    report.decomposition = Some(DecompositionDocument {
        cut: s.members().to_vec(),
        term_count: sop.term_count(),
        terms: sop
            .terms
            .iter()
            .map(|t| TermDocument {
                left: t.left.iter().map(|z| [z.re, z.im]).collect(),
                right: t.right.iter().map(|z| [z.re, z.im]).collect(),
            })
            .collect(),
        max_residual,
    });
    report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    print_report(&report, json)?;
    Ok(0)
}

fn cmd_degree(input: &PathBuf, tol: Option<f64>, json: bool) -> Result<i32> {
    let started = Instant::now();
    let tols = tolerances(tol)?;
    let doc = load_document(input)?;
    let (state, renormalized) = doc.ingest()?;
    let (degree, witness) = mixed::degree_of_correlations(&state, &tols)?;

    let mut report = ReportDocument::new(doc, default_method(&state).to_string(), &tols);
    report.renormalized = renormalized;
    report.degree = Some(degree);
    report.degree_witness = witness;
    report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    print_report(&report, json)?;
    Ok(0)
}

fn cmd_catalog_list(json: bool) -> Result<i32> {
    if json {
        println!("{}", serde_json::to_string_pretty(CATALOG_NAMES)?);
    } else {
        for name in CATALOG_NAMES {
            println!("{name}");
        }
    }
    Ok(0)
}

struct EmitParams {
    n: Option<usize>,
    ell: Option<usize>,
    ell_prime: Option<usize>,
    p: Option<f64>,
    x: Option<u8>,
    y: Option<u8>,
    seed: Option<u64>,
    sizes: Option<Vec<usize>>,
}

fn cmd_catalog_emit(name: &str, params: &EmitParams) -> Result<i32> {
    let named = named_from_params(name, params)?;
    let state = named.build()?;
    let doc = StateDocument::from_state(&state);
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(0)
}

fn named_from_params(name: &str, params: &EmitParams) -> Result<NamedState> {
    let need_n = || {
        params
            .n
            .ok_or_else(|| Error::BadInput(format!("{name} requires --n")))
    };
    let need = |label: &str, value: Option<f64>| {
        value.ok_or_else(|| Error::BadInput(format!("{name} requires --{label}")))
    };
    Ok(match name {
        "dicke" => NamedState::Dicke {
            n: need_n()?,
            ell: params
                .ell
                .ok_or_else(|| Error::BadInput("dicke requires --ell".into()))?,
        },
        "ghz" => NamedState::Ghz { n: need_n()? },
        "w" => NamedState::W { n: need_n()? },
        "bell" => NamedState::Bell {
            x: params
                .x
                .ok_or_else(|| Error::BadInput("bell requires --x".into()))?,
            y: params
                .y
                .ok_or_else(|| Error::BadInput("bell requires --y".into()))?,
        },
        "swapping" => NamedState::Swapping {},
        "smolin" => NamedState::Smolin {},
        "ghz_w_mixture" => NamedState::GhzWMixture {
            n: params.n.unwrap_or(3),
            p: need("p", params.p)?,
        },
        "dicke_mixture" => NamedState::DickeMixture {
            n: need_n()?,
            ell: params
                .ell
                .ok_or_else(|| Error::BadInput("dicke_mixture requires --ell".into()))?,
            ell_prime: params
                .ell_prime
                .ok_or_else(|| Error::BadInput("dicke_mixture requires --ell-prime".into()))?,
            p: need("p", params.p)?,
        },
        "random_pure" => NamedState::RandomPure {
            n: need_n()?,
            seed: params
                .seed
                .ok_or_else(|| Error::BadInput("random_pure requires --seed".into()))?,
        },
        "random_product" => NamedState::RandomProduct {
            n: need_n()?,
            sizes: params
                .sizes
                .clone()
                .ok_or_else(|| Error::BadInput("random_product requires --sizes".into()))?,
            seed: params
                .seed
                .ok_or_else(|| Error::BadInput("random_product requires --seed".into()))?,
        },
        other => {
            return Err(Error::BadInput(format!(
                "unknown catalog name '{other}'; valid names: {}",
                CATALOG_NAMES.join(", ")
            )))
        }
    })
}
