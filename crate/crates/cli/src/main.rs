//! `dcc`: command-line harness for double constacyclic codes.
//!
//! Every subcommand prints JSON (or CSV for `mc`) and exits with 0 on success,
//! 2 on a usage or parameter error and 3 when an enumeration or resampling
//! budget is exhausted.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dcc_core::chain_ring::{ChainRingCtx, ChainRingElement, Family};
use dcc_core::dcodes::{exact_tiny_oracle, sample_code, TwistParams};
use dcc_core::experiment::{
    lift_demo, mc_experiment, parse_lambda_str, parse_ring, search_n, ExperimentConfig,
};
use dcc_core::lift::RingPairConfig;
use dcc_core::polyring::factor_xn_minus_1;
use dcc_core::{Error, FieldCtx};

#[derive(Parser)]
#[command(name = "dcc", version, about = "Double constacyclic codes over finite fields and chain rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor X^n - 1 into irreducibles with their primitive idempotents.
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// List lengths n with gcd(n, qt) = 1 and μ(n) > log_q n.
    SearchN {
        #[command(flatten)]
        field: FieldArgs,
        /// Order of λ; taken from --lambda when omitted.
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, default_value = "0")]
        lambda: String,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample a generator pair from a seed and print the code.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample a code from a seed and report its minimum weight.
    Minwt {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monte Carlo over the ensemble: CSV rows plus a summary per (n, δ).
    Mc {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "0")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long)]
        alpha_prime: Option<usize>,
        /// One length or a comma-separated list.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma-separated δ values; defaults to the grid where the bound applies.
        #[arg(long, value_delimiter = ',')]
        delta: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        /// CSV destination; the summary JSON goes to the same path with a
        /// `.summary.json` suffix. Without it the CSV goes to stdout and the
        /// summary to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact enumeration of every generator pair for a tiny instance.
    Oracle {
        #[command(flatten)]
        code: CodeArgs,
        /// Single δ; defaults to every admissible δ on a 0.01 grid.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 1 << 16)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Lift a full-dimension code to a chain-ring pair.
    Lift {
        /// R, e.g. `Z8`, `Z2^3`, `F2[u]/u^3` or `F4`.
        #[arg(long)]
        ring: String,
        /// R', a quotient of R.
        #[arg(long)]
        ring_prime: String,
        /// Unit λ of R: an integer for Z rings; for F_q[u] rings either a
        /// generator exponent (lifted) or an array of digit coefficient arrays.
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long)]
        alpha_prime: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long, default_value_t = 1000)]
        max_tries: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Field order; alternative to --p/--r.
    #[arg(long, conflicts_with_all = ["p", "r"])]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    r: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldCtx, Error> {
        match (self.q, self.p) {
            (Some(q), _) => FieldCtx::from_order(q),
            (None, Some(p)) => FieldCtx::new(p, self.r.unwrap_or(1)),
            (None, None) => FieldCtx::new(2, 1),
        }
    }
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// λ as a generator exponent (`3`) or coefficient vector (`[1,1]`).
    #[arg(long, default_value = "0")]
    lambda: String,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    /// Defaults to --alpha.
    #[arg(long)]
    alpha_prime: Option<usize>,
    #[arg(long)]
    n: usize,
}

impl CodeArgs {
    fn params(&self) -> Result<TwistParams, Error> {
        let f = self.field.field()?;
        let lambda = parse_lambda_str(&f, &self.lambda)?;
        TwistParams::new(&f, lambda, self.alpha, self.alpha_prime.unwrap_or(self.alpha), self.n)
    }
}

#[derive(Args)]
struct OutArgs {
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Params(Error),
    Budget(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::ResampleCapExceeded { .. } => Failure::Budget(e),
            e => Failure::Params(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn emit(out: &OutArgs, v: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n";
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn ring_lambda(ring: &ChainRingCtx, s: &str) -> Result<ChainRingElement, Error> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Malformed(format!("λ = {s:?}: {e}")))?;
    match (ring.family(), &v) {
        (Family::FqU { .. }, serde_json::Value::Number(_)) => {
            let x = parse_lambda_str(ring.residue_field(), s)?;
            Ok(ring.lift(x))
        }
        _ => ring.element_from_json(&v),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Command::Factor { field, n, out } => {
            let f = field.field()?;
            let fac = factor_xn_minus_1(&f, n)?;
            emit(&out, &fac.to_json())
        }
        Command::SearchN { field, t, lambda, n_max, out } => {
            let f = field.field()?;
            let t = match t {
                Some(t) => t,
                None => f.mult_order(parse_lambda_str(&f, &lambda)?)?,
            };
            if n_max < 2 {
                return Err(Error::InvalidParams(format!("--n-max must be at least 2, got {n_max}")).into());
            }
            let rows = search_n(f.q() as u64, t, n_max);
            emit(&out, &serde_json::json!({ "q": f.q(), "t": t, "n_max": n_max, "lengths": rows }))
        }
        Command::Build { code, seed, out } => {
            let params = code.params()?;
            let c = sample_code(&params, seed);
            let mut j = c.to_json();
            j["seed"] = seed.into();
            j["is_full_dim"] = c.is_full_dim().into();
            emit(&out, &j)
        }
        Command::Minwt { code, seed, budget, out } => {
            let params = code.params()?;
            let c = sample_code(&params, seed);
            let mut j = c.min_weight(budget).to_json();
            j["seed"] = seed.into();
            emit(&out, &j)
        }
        Command::Mc { field, lambda, alpha, alpha_prime, n, delta, trials, seed, budget, out } => {
            let f = field.field()?;
            let cfg = ExperimentConfig {
                lambda: parse_lambda_str(&f, &lambda)?,
                field: f,
                alpha,
                alpha_prime: alpha_prime.unwrap_or(alpha),
                ns: n,
                deltas: delta,
                trials,
                seed,
                budget,
            };
            let res = mc_experiment(&cfg)?;
            let summary = serde_json::to_string_pretty(&res.summary_json()).expect("JSON values serialize") + "\n";
            match out {
                Some(path) => {
                    std::fs::write(&path, res.csv())?;
                    let mut sp = path.into_os_string();
                    sp.push(".summary.json");
                    std::fs::write(sp, summary)?;
                }
                None => {
                    print!("{}", res.csv());
                    eprint!("{summary}");
                }
            }
            Ok(())
        }
        Command::Oracle { code, delta, budget, out } => {
            let params = code.params()?;
            let j = match delta {
                Some(d) => serde_json::to_value(exact_tiny_oracle(&params, d, budget)?).expect("report serializes"),
                None => {
                    let top = 1.0 - 1.0 / params.field().q() as f64;
                    let reports = (1..100)
                        .map(|i| i as f64 / 100.0)
                        .take_while(|&d| d < top)
                        .map(|d| exact_tiny_oracle(&params, d, budget))
                        .collect::<Result<Vec<_>, _>>()?;
                    let all_pass = reports.iter().all(|r| r.checks.all_pass());
                    serde_json::json!({ "params": params.to_json(), "all_pass": all_pass, "reports": reports })
                }
            };
            emit(&out, &j)
        }
        Command::Lift { ring, ring_prime, lambda, alpha, alpha_prime, n, seed, budget, max_tries, out } => {
            let r = parse_ring(&ring)?;
            let rp = parse_ring(&ring_prime)?;
            let l = ring_lambda(&r, &lambda)?;
            let cfg = RingPairConfig::new(&r, &rp, &l)?;
            let demo = lift_demo(&cfg, alpha, alpha_prime.unwrap_or(alpha), n, seed, budget, max_tries)?;
            emit(&out, &demo.to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Params(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
