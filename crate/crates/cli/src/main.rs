//! Command-line driver: solving for double shuffle series, running the
//! verification suites, and applying the four coproducts to serialized
//! elements.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 solver obstruction.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dmr_core::betti::{iso_m, iso_w};
use dmr_core::crossed::{delta_m_dr, delta_w_dr, w_decompose, MElem};
use dmr_core::cyclic::{CyclicElem, EmbeddingDatum};
use dmr_core::dmr::{dmr_check, dmr_solve, FreeVarPolicy, TorsorPoint};
use dmr_core::error::Error;
use dmr_core::harmonic::ModClassY;
use dmr_core::json as fmt;
use dmr_core::scalar::parse_q;
use dmr_core::transport::{BettiMRep, BettiTransport, BettiWRep};
use dmr_core::verify;

/// Degree cap guarding against accidental tensor-square blowups; override
/// with the DMR_DEGREE_CAP environment variable or --allow-large-degree.
const DEFAULT_DEGREE_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "dmr",
    about = "Exact cyclotomic double shuffle computations at truncated degree",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoproductKind {
    /// De Rham coproduct on W (input: crossed element in W)
    #[value(name = "w-dr")]
    WDr,
    /// De Rham coproduct on the module M (input: y-class)
    #[value(name = "m-dr")]
    MDr,
    /// Betti coproduct on W (input: group-algebra element)
    #[value(name = "w-b")]
    WB,
    /// Betti coproduct on M (input: group-algebra element, taken as class)
    #[value(name = "m-b")]
    MB,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for a double shuffle series degree by degree.
    Solve {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "D")]
        d: usize,
        /// Target lambda, e.g. "1", "0", "-3/2".
        #[arg(long)]
        lambda: String,
        /// Generator residue of the embedding (defaults to the reference).
        #[arg(long)]
        giota: Option<i64>,
        /// Free-variable policy: "all-zero" or "probe<k>".
        #[arg(long, default_value = "all-zero")]
        policy: String,
        /// Write {"psi": ..., "report": ...} here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the cost estimate and exit without solving.
        #[arg(long)]
        dry_run: bool,
        /// Permit degrees above the cap.
        #[arg(long)]
        allow_large_degree: bool,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: all, anchors, independence, reference, unit-class,
        /// stabilizer, torsor, hopf, betti-filtration, nielsen, comparison.
        #[arg(long)]
        suite: String,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long = "D")]
        d: Option<usize>,
        /// Filtration depth for betti-filtration.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dry_run: bool,
        #[arg(long)]
        allow_large_degree: bool,
    },
    /// Apply a coproduct to a serialized element.
    Coproduct {
        #[arg(long)]
        kind: CoproductKind,
        /// Input element file (format depends on the kind).
        #[arg(long)]
        input: PathBuf,
        /// Group order, required for the Betti kinds.
        #[arg(long = "N")]
        n: Option<u32>,
        /// Truncation degree, required for the Betti kinds.
        #[arg(long = "D")]
        d: Option<usize>,
        /// Lambda of the transporting point (Betti kinds; default 1).
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        giota: Option<i64>,
        #[arg(long, default_value = "all-zero")]
        policy: String,
        /// Optional pre-solved series for the transporting point.
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dry_run: bool,
        #[arg(long)]
        allow_large_degree: bool,
    },
}

fn parse_policy(s: &str) -> Result<FreeVarPolicy, Error> {
    if s == "all-zero" {
        return Ok(FreeVarPolicy::AllZero);
    }
    if let Some(k) = s.strip_prefix("probe") {
        let k = k.trim_start_matches([':', '-', ' ']);
        let k: usize = k
            .parse()
            .map_err(|_| Error::Param(format!("bad policy {s:?}")))?;
        return Ok(FreeVarPolicy::Probe(k));
    }
    Err(Error::Param(format!(
        "unknown policy {s:?} (expected \"all-zero\" or \"probe<k>\")"
    )))
}

fn degree_cap() -> usize {
    std::env::var("DMR_DEGREE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

fn check_degree(d: usize, allow: bool) -> Result<(), Error> {
    let cap = degree_cap();
    if d > cap && !allow {
        return Err(Error::Param(format!(
            "degree {d} exceeds the cap {cap}; pass --allow-large-degree or set DMR_DEGREE_CAP"
        )));
    }
    Ok(())
}

fn embedding(n: u32, giota: Option<i64>) -> Result<EmbeddingDatum, Error> {
    match giota {
        None => Ok(EmbeddingDatum::reference(n)),
        Some(k) => EmbeddingDatum::new(CyclicElem::new(n, k)),
    }
}

/// Spanning-set sizes driving the cost of a run at `(N, D)`.
fn cost_estimate(n: u32, d: usize) -> Value {
    let mut x_words = 0u64;
    let mut acc = 1u64;
    for _ in 0..=d {
        x_words += acc;
        acc = acc.saturating_mul(n as u64 + 1);
    }
    // y-word counts per degree
    let mut per_degree = vec![0u64; d + 1];
    per_degree[0] = 1;
    for deg in 1..=d {
        let mut count = 0u64;
        for first in 1..=deg {
            count += n as u64
                * if first == deg {
                    1
                } else {
                    per_degree[deg - first]
                };
        }
        per_degree[deg] = count;
    }
    let y_words: u64 = per_degree.iter().sum();
    let mut tensor_pairs = 0u64;
    for i in 0..=d {
        for j in 0..=(d - i) {
            tensor_pairs += per_degree[i] * per_degree[j];
        }
    }
    json!({
        "dry_run": true,
        "N": n,
        "D": d,
        "x_words": x_words,
        "y_spanning_words": y_words,
        "tensor_pairs": tensor_pairs,
    })
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| Error::Param(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Param(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    n: u32,
    d: usize,
    lambda: &str,
    giota: Option<i64>,
    policy: &str,
    out: &Option<PathBuf>,
    dry_run: bool,
    allow_large: bool,
) -> Result<(), Error> {
    if n < 1 {
        return Err(Error::Param("N must be at least 1".to_string()));
    }
    check_degree(d, allow_large)?;
    if dry_run {
        return emit(&cost_estimate(n, d), out);
    }
    let lambda = parse_q(lambda)?;
    let iota = embedding(n, giota)?;
    let policy = parse_policy(policy)?;
    let psi = dmr_solve(n, &iota, &lambda, d, policy)?;
    let report = dmr_check(&iota, &lambda, &psi)?;
    let payload = json!({
        "psi": fmt::series_x_to_json(&psi),
        "report": fmt::dmr_report_to_json(&report),
    });
    emit(&payload, out)?;
    if out.is_some() {
        println!(
            "{}",
            serde_json::to_string_pretty(&fmt::dmr_report_to_json(&report)).expect("serializable")
        );
    }
    Ok(())
}

fn results_to_json(suite: &str, results: &[verify::CriterionResult]) -> Value {
    let all = results.iter().all(|r| r.pass);
    json!({
        "suite": suite,
        "pass": all,
        "results": results
            .iter()
            .map(|r| json!({"id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail}))
            .collect::<Vec<_>>(),
    })
}

fn run_verify(
    suite: &str,
    n: Option<u32>,
    d: Option<usize>,
    m: Option<usize>,
    out: &Option<PathBuf>,
    dry_run: bool,
    allow_large: bool,
) -> Result<bool, Error> {
    if let Some(d) = d {
        check_degree(d, allow_large)?;
    }
    if dry_run {
        emit(&cost_estimate(n.unwrap_or(3), d.unwrap_or(4)), out)?;
        return Ok(true);
    }
    let results: Vec<verify::CriterionResult> = match suite {
        // parameterizable suites
        "hopf" => vec![verify::hopf_at(n.unwrap_or(2), d.unwrap_or(4))],
        "independence" => vec![verify::independence_at(n.unwrap_or(1), d.unwrap_or(4))],
        "betti-filtration" => vec![verify::filtration_ranks_at(n.unwrap_or(3), m.unwrap_or(3))],
        // run everything concurrently; aggregation is the only sync point
        "all" => {
            let handles: Vec<std::thread::JoinHandle<verify::CriterionResult>> = vec![
                std::thread::spawn(verify::criterion_anchors),
                std::thread::spawn(verify::criterion_independence),
                std::thread::spawn(verify::criterion_reference_formulas),
                std::thread::spawn(verify::criterion_unit_class),
                std::thread::spawn(verify::criterion_stabilizer_chain),
                std::thread::spawn(verify::criterion_torsor_closure),
                std::thread::spawn(verify::criterion_hopf_suite),
                std::thread::spawn(verify::criterion_filtration_ranks),
                std::thread::spawn(verify::criterion_nielsen_schreier),
                std::thread::spawn(verify::criterion_comparison_coherence),
            ];
            let mut results: Vec<verify::CriterionResult> = handles
                .into_iter()
                .map(|h| h.join().expect("criterion thread"))
                .collect();
            results.sort_by_key(|r| r.id);
            results
        }
        other => verify::run_suite(other)
            .ok_or_else(|| Error::Param(format!("unknown suite {other:?}")))?,
    };

    let mut payload = results_to_json(suite, &results);
    if suite == "independence" {
        // the independence verdict in its dedicated shape
        let obj = payload.as_object_mut().expect("object");
        obj.insert("theorem".to_string(), json!("Delta_B_N"));
        obj.insert(
            "points".to_string(),
            json!([
                {"lambda": "1", "policy": "all-zero"},
                {"lambda": "2", "policy": "probe0"},
            ]),
        );
        obj.insert("agree".to_string(), json!(results.iter().all(|r| r.pass)));
        obj.insert("degree".to_string(), json!(d.unwrap_or(4)));
        obj.insert("N".to_string(), json!(n.unwrap_or(1)));
    }
    emit(&payload, out)?;
    Ok(results.iter().all(|r| r.pass))
}

#[allow(clippy::too_many_arguments)]
fn run_coproduct(
    kind: CoproductKind,
    input: &PathBuf,
    n: Option<u32>,
    d: Option<usize>,
    lambda: Option<String>,
    giota: Option<i64>,
    policy: &str,
    psi: &Option<PathBuf>,
    out: &Option<PathBuf>,
    dry_run: bool,
    allow_large: bool,
) -> Result<(), Error> {
    let value = read_json(input)?;
    match kind {
        CoproductKind::WDr => {
            let elem = fmt::crossed_from_json(&value)?;
            check_degree(elem.degree_cap(), allow_large)?;
            if dry_run {
                return emit(&cost_estimate(elem.group_order(), elem.degree_cap()), out);
            }
            let w = w_decompose(&elem)?;
            let tensor = delta_w_dr(&w);
            emit(&fmt::tensor_y_to_json(&tensor.0, "tensor-w-dr"), out)
        }
        CoproductKind::MDr => {
            let class = fmt::series_y_from_json(&value)?;
            check_degree(class.degree_cap(), allow_large)?;
            if dry_run {
                return emit(&cost_estimate(class.group_order(), class.degree_cap()), out);
            }
            let tensor = delta_m_dr(&MElem(ModClassY(class)));
            emit(&fmt::tensor_y_to_json(&tensor.0, "tensor-m-dr"), out)
        }
        CoproductKind::WB | CoproductKind::MB => {
            let n = n.ok_or_else(|| Error::Param("--N is required for Betti kinds".into()))?;
            let d = d.ok_or_else(|| Error::Param("--D is required for Betti kinds".into()))?;
            check_degree(d, allow_large)?;
            if dry_run {
                return emit(&cost_estimate(n, d), out);
            }
            let a = fmt::ga_from_json(&value)?;
            let lambda = parse_q(lambda.as_deref().unwrap_or("1"))?;
            let iota = embedding(n, giota)?;
            let series = match psi {
                Some(path) => fmt::series_x_from_json(&read_json(path)?)?,
                None => dmr_solve(n, &iota, &lambda, d, parse_policy(policy)?)?,
            };
            let point = TorsorPoint::new(iota, lambda, series)?;
            let transport = BettiTransport::new(&point)?;
            match kind {
                CoproductKind::WB => {
                    let rep = BettiWRep(iso_w(&EmbeddingDatum::reference(n), &a, d)?);
                    let tensor = transport.betti_coproduct_w(&rep);
                    emit(&fmt::tensor_y_to_json(&tensor.0, "tensor-w-b"), out)
                }
                CoproductKind::MB => {
                    let rep = BettiMRep(iso_m(&EmbeddingDatum::reference(n), &a, d));
                    let tensor = transport.betti_coproduct_m(&rep);
                    emit(&fmt::tensor_y_to_json(&tensor.0, "tensor-m-b"), out)
                }
                _ => unreachable!(),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve {
            n,
            d,
            lambda,
            giota,
            policy,
            out,
            dry_run,
            allow_large_degree,
        } => run_solve(*n, *d, lambda, *giota, policy, out, *dry_run, *allow_large_degree)
            .map(|_| true),
        Command::Verify {
            suite,
            n,
            d,
            m,
            out,
            dry_run,
            allow_large_degree,
        } => run_verify(suite, *n, *d, *m, out, *dry_run, *allow_large_degree),
        Command::Coproduct {
            kind,
            input,
            n,
            d,
            lambda,
            giota,
            policy,
            psi,
            out,
            dry_run,
            allow_large_degree,
        } => run_coproduct(
            *kind,
            input,
            *n,
            *d,
            lambda.clone(),
            *giota,
            policy,
            psi,
            out,
            *dry_run,
            *allow_large_degree,
        )
        .map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::SolverObstruction { degree }) => {
            eprintln!("solver obstruction at degree {degree}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
