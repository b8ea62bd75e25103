use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sigcocycle::acceptance::{run_all, Config};
use sigcocycle::bundle::{bundle_report, signature_mod};
use sigcocycle::congruence::{
    enumerated_order, group_order_formula, in_k, in_principal_congruence, in_y, reduce_mod, OrderKind,
};
use sigcocycle::io::{read_json, CocycleJson, LagrangianJson, MatrixJson, MonodromyJson};
use sigcocycle::maslov::wall_maslov;
use sigcocycle::meyer::meyer_cocycle;
use sigcocycle::{Error, Result, SpMat};

const ENUMERATION_BUDGET: usize = 2_000_000;

#[derive(Parser)]
#[command(name = "sigcocycle", version, about = "Signature cocycles on symplectic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Meyer cocycle of two symplectic matrices.
    Meyer {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
    },
    /// Wall-Maslov index of three lagrangians.
    Maslov {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
        #[arg(long)]
        l3: PathBuf,
    },
    /// Signature of a surface bundle from its monodromy.
    Bundle {
        #[arg(long)]
        monodromy: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u32>,
        /// Allow a nontrivial relator (bundle over a bounded surface).
        #[arg(long)]
        open: bool,
    },
    /// Subgroup membership: gammaN, K or Y.
    Member {
        #[arg(long)]
        which: String,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        modulus: Option<u32>,
    },
    /// Closed-form (and optionally enumerated) group orders.
    Order {
        #[arg(long)]
        g: usize,
        #[arg(long, value_parser = |s: &str| s.parse::<OrderKind>().map_err(|e| e.to_string()))]
        which: OrderKind,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Covering number of a piecewise-constant circle cocycle.
    Covering {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Runs the acceptance criteria.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn matrix(path: &Path) -> Result<SpMat> {
    read_json::<MatrixJson>(path)?.to_sp()
}

fn member(which: &str, path: &Path, modulus: Option<u32>) -> Result<Value> {
    let m = matrix(path)?;
    let lower = which.to_ascii_lowercase();
    let (name, is_member) = match lower.as_str() {
        "k" => ("K".to_string(), in_k(&m)),
        "y" => ("Y".to_string(), in_y(&reduce_mod(&m, 4)?)?),
        _ => {
            let Some(rest) = lower.strip_prefix("gamma") else {
                return Err(Error::InvalidInput(format!("unknown subgroup {which:?}; expected gammaN, K or Y")));
            };
            let n = match (rest, modulus) {
                ("" | "n", Some(n)) => n,
                ("" | "n", None) => return Err(Error::InvalidInput("gammaN needs --modulus".into())),
                (digits, given) => {
                    let n = digits.parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad level in {which:?}")))?;
                    if given.is_some_and(|g| g != n) {
                        return Err(Error::InvalidInput(format!("{which} conflicts with --modulus {}", given.unwrap())));
                    }
                    n
                }
            };
            if n < 2 {
                return Err(Error::InvalidInput(format!("level must be at least 2, got {n}")));
            }
            (format!("gamma{n}"), in_principal_congruence(&m, n))
        }
    };
    Ok(json!({ "subgroup": name, "member": is_member }))
}

fn order(g: usize, which: OrderKind, enumerate: bool, format: Format) -> Result<String> {
    let formula = group_order_formula(g, which)?.to_string();
    let enumerated = if enumerate { Some(enumerated_order(g, which, ENUMERATION_BUDGET)?.to_string()) } else { None };
    Ok(match format {
        Format::Json => {
            let mut v = json!({ "order": formula });
            if let Some(e) = enumerated {
                v["enumerated"] = json!(e);
            }
            v.to_string()
        }
        Format::Csv => match enumerated {
            Some(e) => format!("g,which,order,enumerated\n{g},{which},{formula},{e}"),
            None => format!("g,which,order\n{g},{which},{formula}"),
        },
    })
}

fn bundle(path: &Path, modulus: Option<u32>, open: bool) -> Result<Value> {
    if let Some(n) = modulus {
        if !matches!(n, 2 | 4 | 8) {
            return Err(Error::Precondition(format!("--mod must be 2, 4 or 8, got {n}")));
        }
    }
    let m = read_json::<MonodromyJson>(path)?.to_monodromy()?;
    let report = bundle_report(&m, open)?;
    let mut v = serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?;
    if let Some(n) = modulus {
        let r = if report.closed {
            serde_json::to_value(signature_mod(&m, n)?).map_err(|e| Error::Io(e.to_string()))?
        } else {
            json!({ "modulus": n, "residue": report.sigma.rem_euclid(i64::from(n)) })
        };
        v["mod"] = r;
    }
    Ok(v)
}

fn run(cmd: Command) -> Result<(String, bool)> {
    let out = match cmd {
        Command::Meyer { alpha, beta } => json!({ "tau": meyer_cocycle(&matrix(&alpha)?, &matrix(&beta)?)? }).to_string(),
        Command::Maslov { l1, l2, l3 } => {
            let l = |p: &Path| read_json::<LagrangianJson>(p)?.to_lagrangian();
            json!({ "maslov": wall_maslov(&l(&l1)?, &l(&l2)?, &l(&l3)?)? }).to_string()
        }
        Command::Bundle { monodromy, modulus, open } => bundle(&monodromy, modulus, open)?.to_string(),
        Command::Member { which, matrix, modulus } => member(&which, &matrix, modulus)?.to_string(),
        Command::Order { g, which, enumerate, format } => order(g, which, enumerate, format)?,
        Command::Covering { cocycle } => {
            let t = read_json::<CocycleJson>(&cocycle)?.to_cocycle()?;
            json!({ "covering_number": t.covering_number()? }).to_string()
        }
        Command::Selftest { seed, quick } => {
            let reports = run_all(&Config { seed, quick });
            let passed = reports.iter().filter(|r| r.passed).count();
            let mut lines: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            lines.push(format!("{passed}/{} criteria passed", reports.len()));
            return Ok((lines.join("\n"), passed == reports.len()));
        }
    };
    Ok((out, true))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::InvalidInput(_) => 1,
        Error::Precondition(_) | Error::NotLagrangian(_) | Error::NotCocycle(_) | Error::Budget { .. } => 2,
        Error::ConstructionBug(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
