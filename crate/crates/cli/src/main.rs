mod report;
mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use sbflat::eliminate::{eliminate, Backend};
use sbflat::findiff::{verify_bracket_identities, verify_determinant_identities};
use sbflat::sbsystem::DesignParams;
use sbflat::solvefilter::{magnitude_response, solve, SolveConfig, MIN_CLASSIFY_SAMPLES};
use sbflat::Error;

use report::{design_report, DesignReport};
use table::{run_table, CellResult, TableSpec};

#[derive(Parser)]
#[command(name = "sbflat", version, about = "Exact solver for maximally flat reduced-delay FIR filters")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eliminate, solve and report all real solutions for (K, L, M).
    Design {
        #[arg(long = "K")]
        k: usize,
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 256)]
        precision_bits: u32,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        /// region1_linear, diag_q3, diag_q4 or dixon; chosen from M - 2L
        /// when absent.
        #[arg(long)]
        backend: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Stripped degrees over a grid of (M, L).
    DegreeTable {
        #[arg(long = "K", default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l_min: usize,
        #[arg(long, default_value_t = 4)]
        l_max: usize,
        #[arg(long, default_value_t = 5)]
        m_min: usize,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-cell time budget in seconds.
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the finite-difference determinant identities on a grid.
    VerifyFindiff {
        #[arg(long, default_value_t = 3)]
        s_max: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long = "k-max", default_value_t = 3)]
        k_max: usize,
        /// Largest l for the bracket identities.
        #[arg(long, default_value_t = 10)]
        l_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample F(w) = |H(e^iw)|^2 of one solution from a design report.
    Response {
        /// JSON report written by `design`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, default_value_t = 15)]
        digits: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One degree-table cell; used by `degree-table` workers.
    #[command(hide = true)]
    Cell {
        #[arg(long = "K")]
        k: usize,
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Error with an exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Param(_) => 2,
            Error::EliminationFailure(_) => 3,
            Error::VerificationFailure(_) | Error::SpuriousRoot(_) => 4,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn param(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn io_fail(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, msg: e.to_string() }
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, body).map_err(io_fail),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(io_fail),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(io_fail)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[String], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(header).map_err(io_fail)?;
    for r in rows {
        w.write_record(r).map_err(io_fail)?;
    }
    String::from_utf8(w.into_inner().map_err(io_fail)?).map_err(io_fail)
}

fn design_csv(r: &DesignReport) -> Result<String, Failure> {
    let n = r.solutions.first().map_or(0, |s| s.coeffs.len());
    let mut header: Vec<String> = ["index", "t", "partner", "response_class"].iter().map(|s| s.to_string()).collect();
    header.extend((0..n).map(|i| format!("h{i}")));
    let rows: Vec<Vec<String>> = r
        .solutions
        .iter()
        .zip(&r.roots)
        .enumerate()
        .map(|(i, (s, root))| {
            let mut row = vec![
                i.to_string(),
                root.t.clone(),
                root.partner.map_or(String::new(), |p| p.to_string()),
                s.response_class.clone(),
            ];
            row.extend(s.coeffs.iter().cloned());
            row
        })
        .collect();
    csv_string(&header, &rows)
}

fn cmd_design(
    p: DesignParams,
    seed: u64,
    precision_bits: u32,
    samples: usize,
    backend: Option<String>,
    out: &OutputArgs,
) -> Result<(), Failure> {
    if p.m <= p.l {
        return Err(param(format!("design needs M > L, got L={}, M={}", p.l, p.m)));
    }
    if !(32..=4096).contains(&precision_bits) {
        return Err(param(format!("precision bits must be in 32..=4096, got {precision_bits}")));
    }
    if samples < MIN_CLASSIFY_SAMPLES {
        return Err(param(format!("need at least {MIN_CLASSIFY_SAMPLES} samples, got {samples}")));
    }
    let backend = backend.map(|b| b.parse::<Backend>()).transpose()?;
    let elim = eliminate(p, backend, seed)?;
    let sols = solve(&elim, &SolveConfig { precision_bits, samples })?;
    let report = design_report(&elim, &sols, seed, precision_bits);
    let body = match out.format {
        Format::Json => to_json(&report)?,
        Format::Csv => design_csv(&report)?,
    };
    emit(out.output.as_ref(), &body)
}

fn worker_count() -> usize {
    std::env::var("SBFLAT_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn cmd_degree_table(spec: TableSpec, out: &OutputArgs) -> Result<(), Failure> {
    if spec.k < 1 || spec.l_range.0 > spec.l_range.1 || spec.m_range.0 > spec.m_range.1 {
        return Err(param("empty or invalid (K, L, M) ranges"));
    }
    let exe = std::env::current_exe().map_err(io_fail)?;
    let t = run_table(&exe, &spec);
    let body = match out.format {
        Format::Json => to_json(&t)?,
        Format::Csv => {
            let header: Vec<String> =
                ["M", "L", "region", "backend", "degree", "status"].iter().map(|s| s.to_string()).collect();
            let rows: Vec<Vec<String>> = t
                .cells
                .iter()
                .map(|c| {
                    vec![
                        c.m.to_string(),
                        c.l.to_string(),
                        c.region.clone(),
                        c.backend.clone().unwrap_or_default(),
                        c.degree.map_or(String::new(), |d| d.to_string()),
                        c.status.clone(),
                    ]
                })
                .collect();
            csv_string(&header, &rows)?
        }
    };
    emit(out.output.as_ref(), &body)
}

#[derive(serde::Serialize)]
struct Check {
    identity: &'static str,
    args: String,
    pass: bool,
}

fn cmd_verify_findiff(s_max: usize, m_max: usize, k_max: usize, l_max: usize, out: &OutputArgs) -> Result<(), Failure> {
    if s_max < 1 || k_max < 1 {
        return Err(param("need s_max >= 1 and k_max >= 1"));
    }
    let mut checks = Vec::new();
    for k in 1..=k_max {
        for l in 0..=l_max {
            for j in 0..=l {
                let tag = format!("j={j}, l={l}, K={k}");
                verify_bracket_identities(j, l, k)
                    .map_err(|e| Failure { code: 4, msg: format!("bracket identities at {tag}: {e}") })?;
                checks.push(Check { identity: "bracket_identities", args: tag, pass: true });
            }
        }
        for s in 1..=s_max {
            for m in 0..=m_max {
                let tag = format!("s={s}, m={m}, K={k}");
                verify_determinant_identities(s, m, k)
                    .map_err(|e| Failure { code: 4, msg: format!("determinant identities at {tag}: {e}") })?;
                checks.push(Check { identity: "determinant_identities", args: tag, pass: true });
            }
        }
    }
    let body = match out.format {
        Format::Json => to_json(&serde_json::json!({ "all_pass": true, "checks": checks }))?,
        Format::Csv => {
            let header = vec!["identity".to_string(), "args".to_string(), "pass".to_string()];
            let rows: Vec<Vec<String>> =
                checks.iter().map(|c| vec![c.identity.to_string(), c.args.clone(), c.pass.to_string()]).collect();
            csv_string(&header, &rows)?
        }
    };
    emit(out.output.as_ref(), &body)
}

fn cmd_response(
    input: &PathBuf,
    index: usize,
    samples: usize,
    digits: usize,
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let text = fs::read_to_string(input).map_err(|e| param(format!("cannot read {}: {e}", input.display())))?;
    let report: DesignReport =
        serde_json::from_str(&text).map_err(|e| param(format!("{} is not a design report: {e}", input.display())))?;
    let sol = report
        .solutions
        .get(index)
        .ok_or_else(|| param(format!("solution {index} out of range ({} solutions)", report.solutions.len())))?;
    let h: Vec<f64> = sol
        .coeffs
        .iter()
        .map(|c| c.parse::<f64>().map_err(|e| param(format!("bad coefficient {c}: {e}"))))
        .collect::<Result<_, _>>()?;
    let pts = magnitude_response(&h, samples)?;
    let header = vec!["omega".to_string(), "F".to_string()];
    let rows: Vec<Vec<String>> =
        pts.iter().map(|(w, f)| vec![format!("{w:.digits$}"), format!("{f:.digits$}")]).collect();
    emit(output, &csv_string(&header, &rows)?)
}

fn cmd_cell(p: DesignParams, seed: u64) -> Result<(), Failure> {
    let elim = eliminate(p, None, seed)?;
    let r = CellResult { backend: elim.backend.name().to_string(), degree: elim.degree() };
    emit(None, &format!("{}\n", serde_json::to_string(&r).map_err(io_fail)?))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Cmd::Design { k, l, m, seed, precision_bits, samples, backend, out } => {
            cmd_design(DesignParams::new(k, l, m)?, seed, precision_bits, samples, backend, &out)
        }
        Cmd::DegreeTable { k, l_min, l_max, m_min, m_max, seed, budget_secs, out } => cmd_degree_table(
            TableSpec {
                k,
                l_range: (l_min, l_max),
                m_range: (m_min, m_max),
                seed,
                budget: Duration::from_secs(budget_secs),
                workers: worker_count(),
            },
            &out,
        ),
        Cmd::VerifyFindiff { s_max, m_max, k_max, l_max, out } => cmd_verify_findiff(s_max, m_max, k_max, l_max, &out),
        Cmd::Response { input, index, samples, digits, output } => {
            cmd_response(&input, index, samples, digits, output.as_ref())
        }
        Cmd::Cell { k, l, m, seed } => cmd_cell(DesignParams::new(k, l, m)?, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
