//! `cd2`: command-line front end for the verification pipelines.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! malformed input. Set `RAYON_NUM_THREADS` to limit worker threads.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cd2_core::blowup::{blowup, CIGermJson};
use cd2_core::cd2::{generate_with, validate, verify_e1_profile, CD2Model, GenerateOptions};
use cd2_core::graded_dim::{default_i_max, enumerate_ni, verify_recursion, DimensionTable};
use cd2_core::rational::parse_q;
use cd2_core::toric::{charts, QuotientType};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cd2", version, about = "Exact checks for divisorial contractions to cD/2 points")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice points of N_i, optionally of one parity.
    Ni {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        i: i64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        parity: Option<u8>,
    },
    /// Table of dim V_i^j for 0 <= i <= imax.
    Dims {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        imax: i64,
    },
    /// Decomposition, well-definedness and orbit-sum checks of the dimension recursion.
    VerifyDim {
        /// One or more values of r, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<i64>,
        /// Defaults to 6r.
        #[arg(long)]
        imax: Option<i64>,
    },
    /// Reid-Tai verdict for a cyclic quotient "1/n(a,b,c)".
    Terminal {
        #[arg(long = "type")]
        quotient: String,
    },
    /// Charts of the weighted blow-up of an ambient quotient.
    Charts {
        #[arg(long)]
        ambient: String,
        /// Comma-separated rationals, e.g. 4,3,2,1,7 or 1/2,1/2,1/2.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Blow up a model (r, p, q) or a complete-intersection germ file.
    Blowup {
        #[arg(long)]
        model: PathBuf,
    },
    /// Validate one or more model files.
    Validate {
        #[arg(long, required = true, num_args = 1..)]
        model: Vec<PathBuf>,
        /// Also require the residue-specific monomials.
        #[arg(long)]
        strict_remark: bool,
    },
    /// Write a random valid model.
    Generate {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        extra: u32,
        /// Leave out the residue-specific monomials.
        #[arg(long)]
        no_remark: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Rendered output and whether every check passed.
struct Outcome {
    json: Value,
    table: String,
    passed: bool,
}

impl Outcome {
    fn info(json: Value, table: String) -> Self {
        Outcome { json, table, passed: true }
    }
}

/// Malformed input: reported on stderr with exit code 2.
struct InputError(String);

impl From<cd2_core::Error> for InputError {
    fn from(e: cd2_core::Error) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Outcome, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
                Format::Table => out.table,
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Ni { r, i, parity } => ni(*r, *i, *parity),
        Command::Dims { r, imax } => {
            let t = DimensionTable::build(*r, *imax)?;
            Ok(Outcome::info(t.to_json(), t.to_table()))
        }
        Command::VerifyDim { r, imax } => verify_dim(r, *imax),
        Command::Terminal { quotient } => terminal(quotient),
        Command::Charts { ambient, weights } => chart_cmd(ambient, weights),
        Command::Blowup { model } => blowup_cmd(model),
        Command::Validate { model, strict_remark } => validate_cmd(model, *strict_remark),
        Command::Generate { r, seed, extra, no_remark, out } => {
            generate_cmd(*r, *seed, *extra, !no_remark, out)
        }
    }
}

fn ni(r: i64, i: i64, parity: Option<u8>) -> CmdResult {
    let points: Vec<_> = enumerate_ni(r, i)?
        .into_iter()
        .filter(|p| parity.is_none_or(|j| p.parity() == j))
        .collect();
    let json = json!({
        "r": r,
        "i": i,
        "parity": parity,
        "count": points.len(),
        "points": points
            .iter()
            .map(|p| json!({"l": p.exponents(), "parity": p.parity()}))
            .collect::<Vec<_>>(),
    });
    let mut table = format!("{:>20} {:>6}\n", "(l1,l2,l3,l4,l5)", "parity");
    for p in &points {
        table.push_str(&format!("{:>20} {:>6}\n", p.to_string(), p.parity()));
    }
    table.push_str(&format!("{} points\n", points.len()));
    Ok(Outcome::info(json, table))
}

fn verify_dim(rs: &[i64], imax: Option<i64>) -> CmdResult {
    let reports = rs
        .par_iter()
        .map(|&r| verify_recursion(r, imax.unwrap_or_else(|| default_i_max(r))))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let json = match reports.as_slice() {
        [one] => one.to_json(),
        many => json!({"passed": passed, "reports": many.iter().map(|r| r.to_json()).collect::<Vec<_>>()}),
    };
    let table = reports.iter().map(|r| r.to_table()).collect::<Vec<_>>().join("\n");
    Ok(Outcome { json, table, passed })
}

fn terminal(text: &str) -> CmdResult {
    let t: QuotientType = text.parse()?;
    let rt = t.reid_tai();
    let json = json!({
        "type": t,
        "normalized": t.normalize(),
        "terminal": rt.terminal,
        "canonical": rt.canonical,
    });
    let verdict = if rt.terminal {
        "terminal"
    } else if rt.canonical {
        "not terminal (canonical)"
    } else {
        "not terminal"
    };
    let table = format!("{t}  ~ {}\n{verdict}\n", t.normalize());
    Ok(Outcome { json, table, passed: rt.terminal })
}

fn chart_cmd(ambient: &str, weights: &[String]) -> CmdResult {
    let amb: QuotientType = ambient.parse()?;
    let v = weights.iter().map(|w| parse_q(w)).collect::<Result<Vec<_>, _>>()?;
    let report = charts(&amb, &v)?;
    let json = json!({
        "ambient": amb,
        "charts": report
            .charts
            .iter()
            .map(|c| json!({"chart": c.index + 1, "order": c.group_order(), "factors": c.factors}))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome::info(json, report.to_string()))
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn blowup_cmd(path: &Path) -> CmdResult {
    let value = read_json(path)?;
    if value.get("ambient").is_some() {
        let (germ, v) = CIGermJson::from_value(&value)?.build()?;
        let report = blowup(&germ, &v)?;
        return Ok(Outcome::info(report.to_json(), report.to_table()));
    }
    let model = CD2Model::from_json(&value)?;
    let validation = validate(&model, false);
    if !validation.passed() {
        return Ok(Outcome {
            json: json!({"passed": false, "validation": validation.to_json()}),
            table: validation.to_table(),
            passed: false,
        });
    }
    let profile = verify_e1_profile(model.r, &model)?;
    let mut json = profile.blowup.to_json();
    json["passed"] = json!(profile.passed());
    json["checks"] = json!(profile.checks.checks);
    Ok(Outcome {
        json,
        table: profile.to_table(),
        passed: profile.passed(),
    })
}

fn validate_cmd(paths: &[PathBuf], strict: bool) -> CmdResult {
    let results = paths
        .par_iter()
        .map(|p| {
            let model = CD2Model::from_json(&read_json(p)?)?;
            Ok((p, validate(&model, strict)))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    let passed = results.iter().all(|(_, r)| r.passed());
    let json = match results.as_slice() {
        [(_, one)] => one.to_json(),
        many => json!({
            "passed": passed,
            "models": many
                .iter()
                .map(|(p, r)| json!({"file": p.display().to_string(), "report": r.to_json()}))
                .collect::<Vec<_>>(),
        }),
    };
    let table = results
        .iter()
        .map(|(p, r)| format!("{}\n{}", p.display(), r.to_table()))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome { json, table, passed })
}

fn generate_cmd(r: i64, seed: u64, extra: u32, include_remark: bool, out: &Path) -> CmdResult {
    let model = generate_with(r, seed, extra, GenerateOptions { include_remark })?;
    let text = serde_json::to_string_pretty(&model.to_json()).expect("serializable");
    fs::write(out, text + "\n").map_err(|e| InputError(format!("{}: {e}", out.display())))?;
    let json = json!({"out": out.display().to_string(), "r": r, "seed": seed, "model": model.to_json()});
    let table = format!("r = {r}\np = {}\nq = {}\nwrote {}\n", model.p, model.q, out.display());
    Ok(Outcome::info(json, table))
}
