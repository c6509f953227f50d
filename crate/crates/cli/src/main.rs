//! `permpat`: detection, counting, reduction gadgets and self-checks from the
//! command line.
//!
//! Exit status is 0 on success, 1 when a verification or `--expect` check
//! fails, and 2 on usage or input errors.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use permpat::gap::{self, GapReducer, Rational};
use permpat::psi::{self, PsiInstance};
use permpat::selfcheck::{self, Scale};
use permpat::{matching, Permutation};
use serde::Serialize;
use serde_json::{json, Value};

const CAP_ENV: &str = "PERMPAT_MAX_TEXT_LEN";
const ENUMERATION_CAP: usize = 1_000_000;

#[derive(Parser)]
#[command(name = "permpat", version, about = "Permutation pattern matching and reduction gadgets")]
struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Yes,
    No,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Left,
    Inversions,
    Approx,
    Naive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Quick,
    Full,
}

/// Pattern and text, given as flags or positionally (`PATTERN [in] TEXT`).
/// Each may be a file path or an inline permutation.
#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    text: Option<String>,
    #[arg(value_name = "PERM")]
    positional: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Does the text contain the pattern?
    Detect {
        #[command(flatten)]
        pair: PairArgs,
        /// Only copies that use the first entry of the text.
        #[arg(long)]
        left_aligned: bool,
        /// Exit with status 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Count copies of the pattern in the text.
    Count {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Partitioned subgraph isomorphism gadget.
    Psi {
        #[command(subcommand)]
        command: PsiCommand,
    },
    /// Gap-producing inflation reduction.
    Gap {
        #[command(subcommand)]
        command: GapCommand,
    },
    /// Run the property suites.
    Selfcheck {
        #[arg(value_enum)]
        scale: ScaleArg,
    },
}

#[derive(Subcommand)]
enum PsiCommand {
    /// Dump the labeled point sets and both permutations.
    Build { file: String },
    /// Compare the gadget's answer against brute force.
    Verify { file: String },
}

#[derive(Subcommand)]
enum GapCommand {
    /// Full reduction for a given epsilon.
    Build {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        epsilon: String,
        /// Maximum constructed text length.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Inflation with an explicit alpha.
    Core {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exact check of the size and count inequalities for `n` and `k`.
    CheckBounds {
        n: String,
        k: u64,
        #[arg(long)]
        epsilon: String,
    },
    /// Yes-case and no-case properties of one inflated instance.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(permpat::Error),
}

impl From<permpat::Error> for Failure {
    fn from(e: permpat::Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

struct Outcome {
    inputs: Value,
    result: Value,
    /// Overrides the generic plain rendering.
    plain: Option<String>,
    ok: bool,
}

impl Outcome {
    fn new(inputs: Value, result: impl Serialize) -> Self {
        Outcome {
            inputs,
            result: serde_json::to_value(result).expect("serializable result"),
            plain: None,
            ok: true,
        }
    }

    fn ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    fn plain(mut self, text: String) -> Self {
        self.plain = Some(text);
        self
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    inputs: &'a Value,
    result: &'a Value,
    elapsed_ms: u128,
}

fn read_perm(arg: &str) -> Result<Permutation, Failure> {
    let path = Path::new(arg);
    let source = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(source.trim().parse()?)
}

fn read_instance(arg: &str) -> Result<PsiInstance, Failure> {
    let s = std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
    Ok(PsiInstance::from_json(&s)?)
}

impl PairArgs {
    fn values(&self) -> Vec<&str> {
        self.positional.iter().map(String::as_str).filter(|s| *s != "in").collect()
    }

    fn resolve(&self) -> Result<(Permutation, Permutation), Failure> {
        let mut rest = self.values().into_iter();
        let pattern = self.pattern.as_deref().or_else(|| rest.next());
        let text = self.text.as_deref().or_else(|| rest.next());
        if let Some(extra) = rest.next() {
            return Err(Failure::Usage(format!("unexpected argument '{extra}'")));
        }
        match (pattern, text) {
            (Some(p), Some(t)) => Ok((read_perm(p)?, read_perm(t)?)),
            _ => Err(Failure::Usage("a pattern and a text are required".into())),
        }
    }

    /// A single permutation, from `--text` or the only positional argument.
    fn resolve_text(&self) -> Result<Permutation, Failure> {
        let values = self.values();
        match (self.pattern.as_deref(), self.text.as_deref(), values.as_slice()) {
            (None, Some(t), []) => read_perm(t),
            (None, None, [t]) => read_perm(t),
            _ => self.resolve().map(|(_, t)| t),
        }
    }
}

fn pair_inputs(pi: &Permutation, tau: &Permutation) -> Value {
    json!({ "pattern": pi.to_string(), "text": tau.to_string() })
}

fn parse_epsilon(s: &str) -> Result<Rational, Failure> {
    let eps: Rational = s
        .parse()
        .map_err(|e| Failure::Usage(format!("epsilon '{s}' is not P/Q: {e}")))?;
    gap::alpha_for(eps)?;
    Ok(eps)
}

/// `--cap`, then the environment, then the library default.
fn text_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_ENV}='{v}' is not a nonnegative integer"))),
        Err(_) => Ok(gap::DEFAULT_MAX_TEXT_LEN),
    }
}

fn detect(pair: &PairArgs, left_aligned: bool, expect: Option<Expect>) -> CmdResult {
    let (pi, tau) = pair.resolve()?;
    let verdict = if left_aligned {
        matching::contains_left_aligned(&pi, &tau)?
    } else {
        matching::contains(&pi, &tau)?
    };
    let mut inputs = pair_inputs(&pi, &tau);
    inputs["left_aligned"] = json!(left_aligned);
    let ok = match expect {
        Some(Expect::Yes) => verdict,
        Some(Expect::No) => !verdict,
        None => true,
    };
    if let Some(e) = expect {
        inputs["expect"] = json!(if e == Expect::Yes { "yes" } else { "no" });
    }
    Ok(Outcome::new(inputs, json!({ "contains": verdict })).ok(ok))
}

fn count(pair: &PairArgs, mode: Mode) -> CmdResult {
    if mode == Mode::Inversions {
        let tau = pair.resolve_text()?;
        let inputs = json!({ "text": tau.to_string(), "mode": "inversions" });
        return Ok(Outcome::new(inputs, json!({ "count": matching::count_inversions(&tau) })));
    }
    let (pi, tau) = pair.resolve()?;
    let mut inputs = pair_inputs(&pi, &tau);
    let (name, outcome) = match mode {
        Mode::Exact => ("exact", json!({ "count": matching::count_copies(&pi, &tau)? })),
        Mode::Naive => ("naive", json!({ "count": matching::count_copies_naive(&pi, &tau)? })),
        Mode::Approx => ("approx", json!({ "estimate": matching::approx_count(&pi, &tau)? })),
        Mode::Left => {
            let counts = matching::left_aligned_counts(&pi, &tau)?;
            inputs["mode"] = json!("left");
            let agree = counts.agree();
            let result = json!({ "direct": counts.direct, "difference": counts.difference, "agree": agree });
            return Ok(Outcome::new(inputs, result).ok(agree));
        }
        Mode::Inversions => unreachable!(),
    };
    inputs["mode"] = json!(name);
    Ok(Outcome::new(inputs, outcome))
}

fn psi_command(cmd: &PsiCommand) -> CmdResult {
    match cmd {
        PsiCommand::Build { file } => {
            let inst = read_instance(file)?;
            let gadget = psi::reduce_psi(&inst)?;
            let plain = format!("pattern: {}\ntext: {}\n", gadget.pattern, gadget.text);
            Ok(Outcome::new(json!({ "file": file }), gadget).plain(plain))
        }
        PsiCommand::Verify { file } => {
            let inst = read_instance(file)?;
            let report = psi::verify_reduction(&inst)?;
            let ok = report.agreement;
            Ok(Outcome::new(json!({ "file": file }), report).ok(ok))
        }
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    holds: bool,
}

fn gap_verify(pair: &PairArgs, alpha: u64, cap: Option<usize>) -> CmdResult {
    let (pi, tau) = pair.resolve()?;
    let g = GapReducer::with_cap(text_cap(cap)?).inflated(&pi, &tau, alpha)?;
    let (k, n) = (pi.len(), tau.len());
    let left_aligned = matching::contains_left_aligned(&pi, &tau)?;
    let total = matching::count_copies(&g.pattern, &g.text)?;
    let touching = gap::copies_touching_initial_block(&g)?;

    let mut checks = Vec::new();
    let structural = gap::structural_bounds(&BigUint::from(n), k as u64, alpha);
    for c in structural.checks {
        checks.push(Check { name: c.name, holds: c.holds });
    }
    if left_aligned {
        let bound = BigUint::from(n).pow((alpha * alpha * k as u64) as u32);
        checks.push(Check {
            name: format!("count >= n^(alpha^2 k) = {bound}"),
            holds: *total.value() >= bound,
        });
    } else {
        checks.push(Check {
            name: "no copy touches the initial block".into(),
            holds: touching.is_zero(),
        });
        let bound = permpat::count::binomial(&BigUint::from(n - 1), g.k_prime as u64);
        checks.push(Check {
            name: format!("count <= binom(n-1, k') = {bound}"),
            holds: *total.value() <= bound,
        });
        if g.initial_block_pattern_len >= 2 {
            let en = matching::enumerate_embeddings(&g.pattern, &g.text, ENUMERATION_CAP, false)?;
            let most = en
                .embeddings
                .iter()
                .map(|e| e.indices().iter().filter(|&&i| i <= g.initial_block_text_len).count())
                .max()
                .unwrap_or(0);
            checks.push(Check {
                name: format!("every embedding uses at most alpha k = {} block positions", g.initial_block_pattern_len),
                holds: !en.truncated && most <= g.initial_block_pattern_len,
            });
        }
    }
    let ok = checks.iter().all(|c| c.holds);
    let mut inputs = pair_inputs(&pi, &tau);
    inputs["alpha"] = json!(alpha);
    let plain = format!(
        "left_aligned: {left_aligned}\nk_prime: {}\nn_prime: {}\ncount: {total}\ntouching_block_count: {touching}\n{}",
        g.k_prime,
        g.n_prime,
        checks
            .iter()
            .map(|c| format!("{} {}\n", if c.holds { "PASS" } else { "FAIL" }, c.name))
            .collect::<String>()
    );
    let result = json!({
        "left_aligned": left_aligned,
        "k_prime": g.k_prime,
        "n_prime": g.n_prime,
        "count": total,
        "touching_block_count": touching,
        "checks": checks,
    });
    Ok(Outcome::new(inputs, result).ok(ok).plain(plain))
}

fn gap_command(cmd: &GapCommand) -> CmdResult {
    match cmd {
        GapCommand::Build { pair, epsilon, cap } => {
            let (pi, tau) = pair.resolve()?;
            let eps = parse_epsilon(epsilon)?;
            let g = GapReducer::with_cap(text_cap(*cap)?).build(&pi, &tau, eps)?;
            let mut inputs = pair_inputs(&pi, &tau);
            inputs["epsilon"] = json!(eps.to_string());
            Ok(Outcome::new(inputs, g))
        }
        GapCommand::Core { pair, alpha, cap } => {
            let (pi, tau) = pair.resolve()?;
            let g = GapReducer::with_cap(text_cap(*cap)?).inflated(&pi, &tau, *alpha)?;
            let mut inputs = pair_inputs(&pi, &tau);
            inputs["alpha"] = json!(alpha);
            Ok(Outcome::new(inputs, g))
        }
        GapCommand::CheckBounds { n, k, epsilon } => {
            let n_big: BigUint = n
                .parse()
                .map_err(|_| Failure::Usage(format!("n '{n}' is not a positive integer")))?;
            let eps = parse_epsilon(epsilon)?;
            let report = gap::check_bounds(&n_big, *k, eps)?;
            let ok = report.all_hold();
            let plain = report.to_string();
            let inputs = json!({ "n": n_big.to_string(), "k": k, "epsilon": eps.to_string() });
            Ok(Outcome::new(inputs, report).ok(ok).plain(plain))
        }
        GapCommand::Verify { pair, alpha, cap } => gap_verify(pair, *alpha, *cap),
    }
}

fn selfcheck_command(scale: ScaleArg) -> CmdResult {
    let (scale, name) = match scale {
        ScaleArg::Quick => (Scale::Quick, "quick"),
        ScaleArg::Full => (Scale::Full, "full"),
    };
    let mut results = Vec::new();
    for (id, _) in selfcheck::SUITES {
        let r = selfcheck::run_suite(id, scale);
        eprintln!("{r}");
        results.push(r);
    }
    let ok = results.iter().all(|r| r.passed());
    let plain = results.iter().map(|r| format!("{r}\n")).collect();
    // Timings live in the report's elapsed field, not in the result.
    let suites: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures,
                "passed": r.passed(),
                "first_failure": r.first_failure,
            })
        })
        .collect();
    let result = json!({ "passed": ok, "suites": suites });
    Ok(Outcome::new(json!({ "scale": name }), result).ok(ok).plain(plain))
}

fn render_plain(value: &Value) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        Value::String(s) => format!("{s}\n"),
        other => format!("{other}\n"),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Detect { .. } => "detect",
        Command::Count { .. } => "count",
        Command::Psi { command: PsiCommand::Build { .. } } => "psi build",
        Command::Psi { command: PsiCommand::Verify { .. } } => "psi verify",
        Command::Gap { command } => match command {
            GapCommand::Build { .. } => "gap build",
            GapCommand::Core { .. } => "gap core",
            GapCommand::CheckBounds { .. } => "gap check-bounds",
            GapCommand::Verify { .. } => "gap verify",
        },
        Command::Selfcheck { .. } => "selfcheck",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Detect { pair, left_aligned, expect } => detect(pair, *left_aligned, *expect),
        Command::Count { pair, mode } => count(pair, *mode),
        Command::Psi { command } => psi_command(command),
        Command::Gap { command } => gap_command(command),
        Command::Selfcheck { scale } => selfcheck_command(*scale),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("permpat: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Input(e)) => {
            eprintln!("permpat: {e}");
            return ExitCode::from(2);
        }
    };
    let name = command_name(&cli.command);
    match cli.format {
        Format::Json => {
            let report = RunReport {
                command: name,
                inputs: &outcome.inputs,
                result: &outcome.result,
                elapsed_ms: start.elapsed().as_millis(),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
        }
        Format::Plain => {
            let body = outcome.plain.clone().unwrap_or_else(|| render_plain(&outcome.result));
            print!("{body}");
        }
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
