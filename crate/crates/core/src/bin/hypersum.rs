use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypersum::congruence::{scan, SUPERCONGRUENCES};
use hypersum::numeric::parse_rational;
use hypersum::registry::{catalog, parse_binding, sweep, verify, verify_all, VerificationReport};
use hypersum::report::{ConstantRecord, ReportRecord};
use hypersum::series::Bindings;
use hypersum::special::{constant, ConstantName};
use hypersum::Result;

#[derive(Parser)]
#[command(name = "hypersum", version, about = "Verify hypergeometric series identities to arbitrary precision")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List every registry entry with its anchor and constraints.
    List,
    /// Verify one identity.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        /// Parameter binding `name=num/den`; repeatable.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Verify every identity at its default parameters.
    VerifyAll {
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify one identity over a list of values for one parameter.
    Sweep {
        #[arg(long)]
        id: String,
        #[arg(long)]
        param: String,
        /// Comma-separated rationals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<String>,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print a named constant such as `pi`, `catalan`, `log(8/9)` or `polygamma(1,1/4)`.
    Constants {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Check the supercongruences mod p² for primes up to `pmax`.
    Congruence {
        /// Restrict to one congruence (1..4).
        #[arg(long)]
        which: Option<u8>,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the registry as JSON lines.
    ExportRegistry,
}

/// Writes one line to stdout; a closed pipe ends output quietly.
macro_rules! out {
    ($($t:tt)*) => {
        if writeln!(std::io::stdout().lock(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

fn print_report(r: &VerificationReport, json: bool) {
    let rec = ReportRecord::from(r);
    if json {
        out!("{}", rec.to_json());
        return;
    }
    let bindings: Vec<String> = rec.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out!("{} [{}] {} (digits {}, terms {}, {} ms)", rec.id, bindings.join(", "), rec.status.as_str(), rec.digits, rec.terms_used, rec.elapsed_ms);
    if let (Some(l), Some(r), Some(e)) = (&rec.lhs, &rec.rhs, &rec.abs_residual) {
        out!("  lhs      {l}\n  rhs      {r}\n  residual {e}");
    }
    if let Some(m) = &rec.message {
        out!("  {m}");
    }
}

fn summarize(reports: &[VerificationReport], json: bool) -> ExitCode {
    for r in reports {
        print_report(r, json);
    }
    if reports.iter().all(|r| r.is_ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::List => {
            for id in catalog() {
                let cs: Vec<String> = id.constraints.iter().map(|c| c.to_string()).collect();
                let cs = if cs.is_empty() { "-".to_string() } else { cs.join("; ") };
                out!("{:<18} {:<17} {}  [{}]", id.id, id.kind.to_string(), id.anchor, cs);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { id, digits, params, json } => {
            let b: Bindings = params.iter().map(|p| parse_binding(p)).collect::<Result<_>>()?;
            Ok(summarize(&[verify(&id, &b, digits)?], json))
        }
        Cmd::VerifyAll { digits, json } => Ok(summarize(&verify_all(digits), json)),
        Cmd::Sweep { id, param, values, digits, json } => {
            let vs = values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>()?;
            Ok(summarize(&sweep(&id, &param, &vs, digits)?, json))
        }
        Cmd::Constants { name, digits, json } => {
            let c: ConstantName = name.parse()?;
            let value = constant(&c, digits)?.to_decimal_string(digits as usize);
            if json {
                let rec = ConstantRecord { name: c.to_string(), digits, value };
                out!("{}", serde_json::to_string(&rec).expect("record serializes"));
            } else {
                out!("{value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Congruence { which, pmax, json } => {
            let out = scan(pmax, which)?;
            for c in &out {
                if json {
                    out!("{}", ReportRecord::from(c).to_json());
                } else {
                    let sc = &SUPERCONGRUENCES[c.which as usize - 1];
                    out!(
                        "({}) p={:<4} {:<6} lhs={} rhs={} factor={:+}  {}",
                        c.which,
                        c.p,
                        c.result.as_str(),
                        c.lhs.unwrap_or_default(),
                        c.rhs.unwrap_or_default(),
                        c.symbol.unwrap_or_default(),
                        sc
                    );
                }
            }
            let ok = out.iter().all(|c| c.result == hypersum::congruence::CheckResult::Holds);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::ExportRegistry => {
            for id in catalog() {
                out!("{}", serde_json::to_string(&id.record()).expect("record serializes"));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
