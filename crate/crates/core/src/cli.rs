//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::harness::{self, CheckParams, FixtureSet, Payload};
use crate::macdonald::{self, nabla, to_polynomial};
use crate::negut::epsilon;
use crate::partition::{whittaker_index, Partition, TriangularPartition};
use crate::symfunc::{Coeff, SymExpr};
use crate::tensor::{self, bar_epsilon, decompose_qt, default_cap, stabilize, TensorExpr};
use crate::universal::{f_from_stable, EArrowExpr};
use crate::QTPoly;

#[derive(Parser, Debug)]
#[command(name = "triharm", version, about = "Symmetric functions attached to triangular partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Partition as comma-separated parts, e.g. 3,2,1.
    #[arg(long, global = true, value_parser = parse_partition)]
    pub tau: Option<Partition>,
    /// Number of x-variables; defaults to the stabilization threshold.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Exit with status 1 if any check fails.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Run every check.
    #[arg(long, global = true)]
    pub all: bool,
    /// Override the size bound of every check.
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// E_τ^(n) in tensor form.
    Epsilon,
    /// The alternant A_τ.
    Alternant,
    /// F_τ (its length-≤2 part when min(ℓ, ℓ') ≥ 3).
    Ftau,
    /// The stable form Ē_τ, or Ē_τ^(n) when --n is given.
    Stable,
    /// E_τ^(n) at t = 0 next to its Whittaker polynomial.
    Whittaker,
    /// ∇ s_τ in tensor form.
    Nabla,
    /// Run harness checks.
    Check { ids: Vec<String> },
    /// List fixtures, or show the given ones.
    Fixtures { ids: Vec<String> },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Latex,
}

fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

/// A failure with its exit status.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit(2, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Exit {
    Exit(2, msg.into())
}

fn tau_arg(cli: &Cli) -> std::result::Result<Partition, Exit> {
    cli.tau.clone().ok_or_else(|| usage("--tau is required"))
}

fn triangular(cli: &Cli) -> std::result::Result<TriangularPartition, Exit> {
    Ok(TriangularPartition::new(tau_arg(cli)?)?)
}

fn default_n(tau: &TriangularPartition) -> Result<usize> {
    Ok(stabilize(tau, default_cap(tau))?.threshold)
}

fn n_arg(cli: &Cli, tau: &TriangularPartition) -> Result<usize> {
    match cli.n {
        Some(n) => Ok(n),
        None => default_n(tau),
    }
}

fn render_sym<R: Coeff>(f: &SymExpr<R>, format: Format) -> String {
    match format {
        Format::Pretty => f.to_string(),
        Format::Json => f.to_json().to_string(),
        Format::Latex => f.to_latex(),
    }
}

fn render_tensor(t: &TensorExpr, format: Format) -> String {
    match format {
        Format::Pretty => t.to_string(),
        Format::Json => t.to_json().to_string(),
        Format::Latex => t.to_latex(),
    }
}

fn render_f(f: &EArrowExpr, format: Format) -> String {
    match format {
        Format::Json => json!({ "exact": f.is_exact(), "f": f.tensor().to_json() }).to_string(),
        _ if f.is_exact() => render_tensor(f.tensor(), format),
        _ => format!("{} + (length >= 3 terms)", render_tensor(f.tensor(), format)),
    }
}

fn raise_bound(n: usize) {
    if n > macdonald::size_bound() {
        macdonald::set_size_bound(n);
    }
}

fn run_command(cli: &Cli) -> std::result::Result<(String, i32), Exit> {
    let fmt = cli.format;
    let text = match &cli.command {
        Command::Epsilon => {
            let tau = triangular(cli)?;
            let n = n_arg(cli, &tau)?;
            raise_bound(n);
            render_tensor(&decompose_qt(&*epsilon(&tau, n)?)?, fmt)
        }
        Command::Alternant => {
            let tau = triangular(cli)?;
            let n = cli.n.unwrap_or(tau.len() + 1);
            raise_bound(n);
            render_sym(&tensor::alternant(&decompose_qt(&*epsilon(&tau, n)?)?, n), fmt)
        }
        Command::Ftau => {
            let tau = triangular(cli)?;
            let st = stabilize(&tau, default_cap(&tau))?;
            render_f(&f_from_stable(&st)?, fmt)
        }
        Command::Stable => {
            let tau = triangular(cli)?;
            match cli.n {
                Some(n) => {
                    raise_bound(n);
                    render_tensor(&bar_epsilon(&tau, n)?, fmt)
                }
                None => {
                    let st = stabilize(&tau, default_cap(&tau))?;
                    match fmt {
                        Format::Json => json!({ "threshold": st.threshold, "stable": st.stable.to_json() }).to_string(),
                        _ => render_tensor(&st.stable, fmt),
                    }
                }
            }
        }
        Command::Whittaker => {
            let tau = triangular(cli)?;
            let n = cli.n.unwrap_or_else(|| tensor::stabilization_start(&tau));
            raise_bound(n);
            let mu = whittaker_index(&tau, n)?;
            let at_t0 = epsilon(&tau, n)?.try_map_coeffs(|c| c.specialize(None, Some(0)))?;
            let w = macdonald::whittaker(&mu)?;
            let shift = tau.size() as i32 - mu.eta() as i32;
            match fmt {
                Format::Json => json!({
                    "mu": mu.parts(),
                    "shift": shift,
                    "whittaker": w.to_json(),
                    "epsilon_t0": at_t0.to_json(),
                    "agree": w.map_coeffs(|c| c.shift(shift, 0)) == at_t0,
                })
                .to_string(),
                _ => format!("mu = {mu}, q^{shift}\n{}", render_sym(&w, fmt)),
            }
        }
        Command::Nabla => {
            let lam = tau_arg(cli)?;
            raise_bound(lam.size());
            let f: SymExpr<QTPoly> = SymExpr::s(lam.parts());
            render_tensor(&decompose_qt(&to_polynomial(&nabla(&f)?)?)?, fmt)
        }
        Command::Check { ids } => return run_checks(cli, ids),
        Command::Fixtures { ids } => show_fixtures(ids, fmt)?,
    };
    Ok((text, 0))
}

fn run_checks(cli: &Cli, ids: &[String]) -> std::result::Result<(String, i32), Exit> {
    if ids.is_empty() && !cli.all {
        return Err(usage("name checks to run, or pass --all"));
    }
    let fixtures = FixtureSet::from_env()?;
    let mut params = CheckParams { max_size: cli.max_size, ..CheckParams::default() };
    if let Some(n) = cli.n {
        params.max_n = n;
    }
    let names: Vec<String> = ids.iter().map(|id| if id.starts_with("chk.") { id.clone() } else { format!("chk.{id}") }).collect();
    let names: Vec<&str> = if cli.all { Vec::new() } else { names.iter().map(String::as_str).collect() };
    let reports = harness::run_checks(&names, &params, &fixtures).map_err(|e| usage(e.to_string()))?;
    let text = match cli.format {
        Format::Pretty => harness::render_table(&reports).trim_end().to_string(),
        Format::Json => reports.iter().map(|r| r.to_json_line()).collect::<Vec<_>>().join("\n"),
        Format::Latex => {
            let mut rows = vec![r"\begin{tabular}{llrrr}".to_string(), r"check & status & cases & pass & skip \\".into()];
            for r in &reports {
                let id = r.id.replace('_', r"\_");
                rows.push(format!(r"\texttt{{{id}}} & {} & {} & {} & {} \\", r.status_word(), r.cases, r.passed, r.skipped));
            }
            rows.push(r"\end{tabular}".into());
            rows.join("\n")
        }
    };
    Ok((text, harness::exit_code(&reports, cli.strict)))
}

fn show_fixtures(ids: &[String], fmt: Format) -> std::result::Result<String, Exit> {
    let set = FixtureSet::from_env()?;
    if ids.is_empty() {
        return Ok(match fmt {
            Format::Json => serde_json::Value::Array(set.iter().map(|f| f.to_json()).collect()).to_string(),
            _ => set.iter().map(|f| format!("{:<16} {:<12} {}", f.id, f.kind, f.provenance)).collect::<Vec<_>>().join("\n"),
        });
    }
    let mut out = Vec::new();
    for id in ids {
        let f = set.get(id).ok_or_else(|| usage(format!("unknown fixture {id:?}")))?;
        let body = match (&f.payload, fmt) {
            (_, Format::Json) => f.to_json().to_string(),
            (Payload::Sym(s), _) => render_sym(s, fmt),
            (Payload::SymQT(s), _) => render_sym(s, fmt),
            (Payload::HookPoly(h), _) => h.to_string(),
            (Payload::KPoly(_), _) => f.raw["payload"].to_string(),
            _ => render_tensor(&set.tensor(id)?, fmt),
        };
        out.push(if fmt == Format::Pretty { format!("{id}: {body}") } else { body });
    }
    Ok(out.join("\n"))
}

/// Parses `args` (program name first), writes the result to `out` and errors
/// to `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(if code == 0 { &mut *out as &mut dyn Write } else { err }, "{e}");
            return code;
        }
    };
    match run_command(&cli) {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
