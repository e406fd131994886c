//! Command-line front end: dimension tables, verification suites,
//! tabulation and dof-matrix export.
//!
//! Exit codes: 0 success, 1 verification failure or rejected data point,
//! 2 usage error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use feec4d::dofs::trace_dofs;
use feec4d::geometry::{CellKind, RefCell};
use feec4d::tabulate::{dof_matrix_file, parse_points, tabulate};
use feec4d::verify::{self, Check, Corruption, VerifyOptions};

/// Largest order run without `--allow-k4`.
const DEFAULT_MAX_K: i64 = 3;

#[derive(Parser)]
#[command(name = "feec4d", version, about = "Exact FEEC spaces on the 4D pentatope and tetrahedral prism")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print dim V^{k,s}, boundary and interior dof counts against the closed forms.
    Dims {
        #[arg(long, value_enum, default_value = "all")]
        cell: CellArg,
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        out: Output,
    },
    /// Run verification suites; exit 1 on any failure.
    Verify {
        /// Run every cell (same as --cell all).
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "all")]
        cell: CellArg,
        #[command(flatten)]
        order: Order,
        /// Comma-separated subset of dims,exactness,unisolvency,bubbles,traces,tensor-vs-nrt,pullback.
        #[arg(long)]
        checks: Option<String>,
        /// Test hook: cell:s:k:member adds x1^{k+1} to one basis member.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate every basis member of V^{k,s} at points.
    Tabulate {
        #[arg(long, value_enum)]
        cell: SingleCell,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: i64,
        /// Points file: JSON array of coordinate arrays, or one point per line.
        #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
        points: Option<PathBuf>,
        /// Barycentric lattice of order M (product lattice on the prism).
        #[arg(long)]
        lattice: Option<u32>,
        #[arg(long)]
        allow_k4: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Write the dof-by-basis matrix and its determinant.
    DofMatrix {
        #[arg(long, value_enum)]
        cell: SingleCell,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        allow_k4: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Order {
    #[arg(long, default_value_t = DEFAULT_MAX_K)]
    max_k: i64,
    /// Permit k = 4 (slow).
    #[arg(long)]
    allow_k4: bool,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum CellArg {
    Pentatope,
    Prism,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleCell {
    Pentatope,
    Prism,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl CellArg {
    fn cells(self) -> Vec<CellKind> {
        match self {
            CellArg::Pentatope => vec![CellKind::Pentatope],
            CellArg::Prism => vec![CellKind::TetPrism],
            CellArg::All => vec![CellKind::Pentatope, CellKind::TetPrism],
        }
    }
}

impl SingleCell {
    fn kind(self) -> CellKind {
        match self {
            SingleCell::Pentatope => CellKind::Pentatope,
            SingleCell::Prism => CellKind::TetPrism,
        }
    }
}

enum Failure {
    Usage(String),
    Data(String),
}

type Outcome = std::result::Result<bool, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn data(e: impl ToString) -> Failure {
    Failure::Data(e.to_string())
}

fn check_order(k: i64, allow_k4: bool, what: &str) -> std::result::Result<(), Failure> {
    if k < 1 {
        return Err(usage(format!("{what} must be at least 1")));
    }
    if k > 4 {
        return Err(usage(format!("{what} above 4 is not supported")));
    }
    if k == 4 {
        if !allow_k4 {
            return Err(usage(format!("{what} = 4 requires --allow-k4")));
        }
        eprintln!("warning: k = 4 builds exact systems of several hundred unknowns and may take minutes");
    }
    Ok(())
}

fn emit(out: &Output, text: &str) -> std::result::Result<(), Failure> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| data(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(data),
    }
}

#[derive(Serialize)]
struct DimsRow {
    cell: &'static str,
    k: i64,
    s: usize,
    constructed: usize,
    formula: usize,
    trace: usize,
    trace_formula: usize,
    volume: usize,
    status: &'static str,
}

fn dims(cells: Vec<CellKind>, order: &Order, out: &Output) -> Outcome {
    check_order(order.max_k, order.allow_k4, "max-k")?;
    let mut rows = Vec::new();
    for cell in cells {
        let rc = RefCell::new(cell);
        for k in 1..=order.max_k {
            for s in 0..=4 {
                let constructed = verify::canonical_space(cell, k, s).map_err(data)?.rank();
                let trace = if s < 4 { trace_dofs(&rc, s, k).map_err(data)?.len() } else { 0 };
                let formula = verify::dim_formula(cell, k, s);
                let trace_formula = verify::trace_dim_formula(cell, k, s);
                let ok = constructed == formula && trace == trace_formula;
                rows.push(DimsRow {
                    cell: cell.name(),
                    k,
                    s,
                    constructed,
                    formula,
                    trace,
                    trace_formula,
                    volume: verify::vol_dim_formula(cell, k, s),
                    status: if ok { "MATCH" } else { "MISMATCH" },
                });
            }
        }
    }
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(&rows).map_err(data)? + "\n",
        Format::Csv => {
            let mut t = String::from("cell,k,s,constructed,formula,trace,trace_formula,volume,status\n");
            for r in &rows {
                t += &format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.cell, r.k, r.s, r.constructed, r.formula, r.trace, r.trace_formula, r.volume, r.status
                );
            }
            t
        }
        Format::Text => {
            let mut t = format!(
                "{:<9} {:>2} {:>2} {:>11} {:>7} {:>6} {:>6} {:>6}  status\n",
                "cell", "k", "s", "constructed", "formula", "trace", "tr.f", "vol"
            );
            for r in &rows {
                t += &format!(
                    "{:<9} {:>2} {:>2} {:>11} {:>7} {:>6} {:>6} {:>6}  {}\n",
                    r.cell, r.k, r.s, r.constructed, r.formula, r.trace, r.trace_formula, r.volume, r.status
                );
            }
            t
        }
    };
    emit(out, &text)?;
    Ok(rows.iter().all(|r| r.status == "MATCH"))
}

fn run_verify(cells: Vec<CellKind>, order: &Order, checks: Option<&str>, corrupt: Option<&str>, out: &Output) -> Outcome {
    check_order(order.max_k, order.allow_k4, "max-k")?;
    let mut opts = VerifyOptions::new(cells, order.max_k);
    if let Some(c) = checks {
        opts.checks = verify::parse_checks(c).map_err(usage)?;
        if opts.checks.is_empty() {
            return Err(usage("empty check list"));
        }
    } else {
        opts.checks = Check::ALL.to_vec();
    }
    opts.corrupt = corrupt.map(str::parse::<Corruption>).transpose().map_err(usage)?;
    opts.threads = verify::threads_from_env();
    let report = verify::run(&opts).map_err(usage)?;
    let text = match out.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(out, &text)?;
    Ok(report.all_pass())
}

fn run_tabulate(cell: CellKind, s: usize, k: i64, points: Option<&PathBuf>, lattice: Option<u32>, allow_k4: bool, out: &Output) -> Outcome {
    check_order(k, allow_k4, "k")?;
    if s > 4 {
        return Err(usage("s must be in 0..=4"));
    }
    let pts = match (points, lattice) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            parse_points(&text).map_err(data)?
        }
        (None, Some(m)) if m >= 1 => RefCell::new(cell).lattice(m),
        _ => return Err(usage("lattice order must be at least 1")),
    };
    let t = tabulate(cell, s, k, &pts).map_err(data)?;
    let text = match out.format {
        Format::Json => t.to_json(),
        Format::Csv => t.to_csv(),
        Format::Text => t.to_text(),
    };
    emit(out, &text)?;
    for e in &t.errors {
        eprintln!("point {}: {}", e.point_index, e.message);
    }
    Ok(t.errors.is_empty())
}

fn run_dof_matrix(cell: CellKind, s: usize, k: i64, allow_k4: bool, out: &Output) -> Outcome {
    check_order(k, allow_k4, "k")?;
    if s > 4 {
        return Err(usage("s must be in 0..=4"));
    }
    let f = dof_matrix_file(cell, s, k).map_err(data)?;
    let text = match out.format {
        Format::Json => f.to_json(),
        Format::Csv => f.to_csv(),
        Format::Text => f.to_text(),
    };
    emit(out, &text)?;
    Ok(!f.det.is_zero())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Dims { cell, order, out } => dims(cell.cells(), order, out),
        Cmd::Verify { all, cell, order, checks, corrupt, out } => {
            let cells = if *all { CellArg::All.cells() } else { cell.cells() };
            run_verify(cells, order, checks.as_deref(), corrupt.as_deref(), out)
        }
        Cmd::Tabulate { cell, s, k, points, lattice, allow_k4, out } => {
            run_tabulate(cell.kind(), *s, *k, points.as_ref(), *lattice, *allow_k4, out)
        }
        Cmd::DofMatrix { cell, s, k, allow_k4, out } => run_dof_matrix(cell.kind(), *s, *k, *allow_k4, out),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
