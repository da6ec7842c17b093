//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or validation error (including a failed
//! `verify`), 2 a precondition of the requested operation does not hold,
//! 3 internal invariant violation.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{GaussianRational, LaurentPolynomial, MonomialChange, PolySystem};
use crate::analysis::{bkk_bound, find_degenerate_directions, AnalysisError};
use crate::lifting::{
    auto_lift_with, facial_root_candidates, lift_bivariate_gcd, lift_division, lift_linear_dependent,
    lift_monomial, normalized_from_provenance, resubstitute_system, AutoOptions, LiftError, LiftResult,
    Strategy,
};
use crate::oracle::{count_torus_solutions_2d_seeded, relative_residual, OracleError, DEFAULT_TOL};
use crate::polytope::{mixed_volume, Direction};
use crate::sysio::json::to_json;
use crate::sysio::{parse_constant, parse_system_file, SystemFile};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "mvlift", version, about = "BKK bounds and mixed-volume-reducing liftings")]
pub struct Cli {
    /// Oracle residual tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Defaults as `key = value` lines (keys: oracle.tol, seed, json, threads).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for the randomized oracle.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Division,
    Lindep,
    Bigcd,
    Monomial,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the BKK bound (mixed volume of the Newton polytopes).
    Mv { file: PathBuf },
    /// Report degenerate directions and applicable liftings as JSON.
    Analyze { file: PathBuf },
    /// Write a lifted system with a provenance header.
    Lift {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// Facial direction, e.g. `0,1`.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        /// Facial root coordinates for the division lift, e.g. `1,1/2+i`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Number of new variables for the division lift without `--alpha`.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Polynomial indices (from 0) for the dependency lift, e.g. `0,1`.
        #[arg(long)]
        pair: Option<String>,
        /// Exponent vector of the monomial lift, e.g. `1,1`.
        #[arg(long)]
        monomial: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a lifted system resubstitutes to the original.
    Verify { original: PathBuf, lifted: PathBuf },
    /// Count torus solutions of a bivariate system numerically.
    Solve2 { file: PathBuf },
    /// Run the regression suite on the bundled example systems.
    Selftest,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Precondition { condition: String, message: String },
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Precondition { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Validation(m) | CliError::Internal(m) => m.clone(),
            CliError::Precondition { condition, message } => {
                format!("precondition failed [{condition}]: {message}")
            }
        }
    }
}

impl From<LiftError> for CliError {
    fn from(e: LiftError) -> Self {
        match e {
            LiftError::Algebra(_) | LiftError::Polytope(_) | LiftError::Saturation(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Precondition {
                condition: e.condition().to_string(),
                message: e.to_string(),
            },
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::NotSquare { .. } => CliError::Precondition {
                condition: "square_system".into(),
                message: e.to_string(),
            },
            AnalysisError::Polytope(p) => CliError::Internal(p.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let condition = match e {
            OracleError::NotBivariate { .. } => "bivariate",
            OracleError::NotSquare { .. } => "square_system",
            OracleError::ResultantVanishes => "finitely_many_solutions",
            OracleError::NonConvergence { .. } => "convergence",
            _ => return CliError::Internal(e.to_string()),
        };
        CliError::Precondition {
            condition: condition.into(),
            message: e.to_string(),
        }
    }
}

/// Effective settings after merging the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub seed: u64,
    pub json: bool,
    pub threads: Option<usize>,
}

fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Validation(format!("config line {}: expected key = value", n + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

pub fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let mut s = Settings {
        tol: DEFAULT_TOL,
        seed: DEFAULT_SEED,
        json: false,
        threads: None,
    };
    let bad = |k: &str, v: &str| CliError::Validation(format!("config: invalid value `{v}` for `{k}`"));
    if let Some(path) = &cli.config {
        for (k, v) in parse_config(&read(path)?)? {
            match k.as_str() {
                "oracle.tol" => s.tol = v.parse().map_err(|_| bad(&k, &v))?,
                "seed" => s.seed = v.parse().map_err(|_| bad(&k, &v))?,
                "json" => s.json = v.parse().map_err(|_| bad(&k, &v))?,
                "threads" => s.threads = Some(v.parse().map_err(|_| bad(&k, &v))?),
                _ => return Err(CliError::Validation(format!("config: unknown key `{k}`"))),
            }
        }
    }
    if let Ok(v) = std::env::var("MVLIFT_THREADS") {
        s.threads = Some(v.parse().map_err(|_| bad("MVLIFT_THREADS", &v))?);
    }
    if let Some(t) = cli.tol {
        s.tol = t;
    }
    if let Some(seed) = cli.seed {
        s.seed = seed;
    }
    s.json |= cli.json;
    if !(s.tol > 0.0 && s.tol < 1.0) {
        return Err(CliError::Validation(format!("tolerance {} must lie in (0, 1)", s.tol)));
    }
    Ok(s)
}

fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.12}{sign}{:.12}i", z.re, z.im.abs())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SystemFile, CliError> {
    parse_system_file(&read(path)?).map_err(|e| CliError::Validation(format!("{}:{e}", path.display())))
}

fn parse_ints(text: &str, what: &str) -> Result<Vec<i64>, CliError> {
    text.trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')')
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Validation(format!("invalid {what} `{text}`")))
}

fn parse_direction(text: &str, d: usize) -> Result<Direction, CliError> {
    let v = parse_ints(text, "direction")?;
    if v.len() != d {
        return Err(CliError::Validation(format!("direction has {} entries, system has {d} variables", v.len())));
    }
    Direction::new(v).map_err(|e| CliError::Validation(format!("direction: {e}")))
}

fn parse_alpha(text: &str) -> Result<Vec<GaussianRational>, CliError> {
    text.split(',')
        .map(|t| parse_constant(t.trim()).map_err(|e| CliError::Validation(format!("alpha `{t}`: {e}"))))
        .collect()
}

/// Runs a parsed command line, writing results to `out` and messages to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = settings(cli).and_then(|s| {
        if let Some(n) = s.threads {
            // the global pool can only be set once per process
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        dispatch(&cli.command, &s, out)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&cli, &mut stdout.lock(), &mut stderr.lock())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::Internal(format!("write failed: {e}")))
}

fn dispatch(cmd: &Command, s: &Settings, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Mv { file } => {
            let sys = load(file)?.system;
            let mv = bkk_bound(&sys)?;
            if s.json {
                emit(out, &to_json(&json!({ "bkk_bound": mv as u64 })))?;
            } else {
                emit(out, &mv.to_string())?;
            }
            Ok(0)
        }
        Command::Analyze { file } => {
            let sys = load(file)?.system;
            let report = find_degenerate_directions(&sys)?;
            emit(out, &to_json(&report))?;
            Ok(0)
        }
        Command::Lift {
            file,
            strategy,
            direction,
            alpha,
            k,
            pair,
            monomial,
            output,
        } => {
            let sys = load(file)?.system;
            let lift = do_lift(&sys, *strategy, direction.as_deref(), alpha.as_deref(), *k, pair.as_deref(), monomial.as_deref())?;
            let text = lift.to_file();
            if !crate::lifting::roundtrip_holds(&lift) {
                return Err(CliError::Internal("resubstitution does not reproduce the input".into()));
            }
            match output {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?,
                None => {
                    out.write_all(text.as_bytes())
                        .map_err(|e| CliError::Internal(e.to_string()))?;
                }
            }
            if output.is_some() {
                if s.json {
                    emit(out, &to_json(&lift.provenance()))?;
                } else {
                    emit(
                        out,
                        &format!(
                            "{}: mixed volume {} -> {} ({} new variable{})",
                            lift.strategy,
                            lift.mv_before,
                            lift.mv_after,
                            lift.new_variables(),
                            if lift.new_variables() == 1 { "" } else { "s" }
                        ),
                    )?;
                    for d in &lift.diagnostics {
                        emit(out, &format!("note: {d}"))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { original, lifted } => {
            let orig = load(original)?.system;
            let lifted = load(lifted)?;
            let v = verify(&orig, &lifted, s)?;
            if s.json {
                emit(out, &to_json(&v))?;
            } else {
                emit(out, &v.summary())?;
            }
            Ok(if v.ok() { 0 } else { 1 })
        }
        Command::Solve2 { file } => {
            let sys = load(file)?.system;
            let count = count_torus_solutions_2d_seeded(&sys, s.tol, s.seed)?;
            let bkk = bkk_bound(&sys)?;
            if s.json {
                let sols: Vec<_> = count
                    .solutions
                    .iter()
                    .map(|a| {
                        json!({
                            "point": a.point.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                            "residual": a.residual,
                        })
                    })
                    .collect();
                emit(
                    out,
                    &to_json(&json!({
                        "count": count.count,
                        "exact": count.exact,
                        "bkk_bound": bkk as u64,
                        "solutions": sols,
                    })),
                )?;
            } else {
                emit(out, &format!("{} torus solutions (BKK bound {bkk})", count.count))?;
                for a in &count.solutions {
                    let pt: Vec<String> = a.point.iter().map(|z| format_complex(*z)).collect();
                    emit(out, &format!("  ({})  residual {:.1e}", pt.join(", "), a.residual))?;
                }
            }
            Ok(0)
        }
        Command::Selftest => {
            let results = selftest(s);
            let mut failed = 0;
            for r in &results {
                if !r.pass {
                    failed += 1;
                }
            }
            if s.json {
                emit(out, &to_json(&results))?;
            } else {
                for r in &results {
                    emit(
                        out,
                        &format!("{} {} ({}) {} ms", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail, r.millis),
                    )?;
                }
            }
            Ok(if failed == 0 { 0 } else { 3 })
        }
    }
}

fn options_for(sys: &PolySystem, strategy: Strategy, direction: Option<&str>) -> Result<AutoOptions, CliError> {
    let mut opts = AutoOptions {
        strategies: vec![strategy],
        ..AutoOptions::default()
    };
    if let Some(t) = direction {
        opts.directions = Some(vec![parse_direction(t, sys.nvars())?]);
    }
    Ok(opts)
}

fn do_lift(
    sys: &PolySystem,
    strategy: StrategyArg,
    direction: Option<&str>,
    alpha: Option<&str>,
    k: usize,
    pair: Option<&str>,
    monomial: Option<&str>,
) -> Result<LiftResult, CliError> {
    let u = direction.map(|t| parse_direction(t, sys.nvars())).transpose()?;
    match strategy {
        StrategyArg::Auto => {
            let opts = AutoOptions {
                directions: u.map(|u| vec![u]),
                ..AutoOptions::default()
            };
            Ok(auto_lift_with(sys, &opts)?)
        }
        StrategyArg::Monomial => {
            let Some(m) = monomial else {
                return Err(CliError::Validation("--strategy monomial needs --monomial".into()));
            };
            Ok(lift_monomial(sys, &parse_ints(m, "monomial exponent")?)?)
        }
        StrategyArg::Bigcd => match u {
            Some(u) => Ok(lift_bivariate_gcd(sys, &u)?),
            None => {
                if sys.nvars() != 2 {
                    return Err(LiftError::NotBivariate { d: sys.nvars() }.into());
                }
                Ok(auto_lift_with(sys, &options_for(sys, Strategy::Bigcd, None)?)?)
            }
        },
        StrategyArg::Lindep => match (u, pair) {
            (Some(u), Some(p)) => {
                let p = parse_ints(p, "pair")?;
                let [i1, i2] = p[..] else {
                    return Err(CliError::Validation("--pair needs two indices".into()));
                };
                if i1 < 0 || i2 < 0 {
                    return Err(CliError::Validation("--pair indices must be non-negative".into()));
                }
                Ok(lift_linear_dependent(sys, &u, i1 as usize, i2 as usize)?)
            }
            (u, None) => {
                let mut opts = options_for(sys, Strategy::Lindep, None)?;
                opts.directions = u.map(|u| vec![u]);
                Ok(auto_lift_with(sys, &opts)?)
            }
            (None, Some(_)) => Err(CliError::Validation("--pair needs --direction".into())),
        },
        StrategyArg::Division => match (u, alpha) {
            (Some(u), Some(a)) => {
                let a = parse_alpha(a)?;
                let k = a.len();
                Ok(lift_division(sys, &u, &a, k)?)
            }
            (Some(u), None) => {
                let (normalized, _) = crate::algebra::normalize_to_direction(sys, u.as_slice())
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                let cands = facial_root_candidates(&normalized, k)?;
                let mut last = LiftError::NoRationalRoot { irrational: false };
                for a in cands {
                    match lift_division(sys, &u, &a, k) {
                        Ok(l) => return Ok(l),
                        Err(e) => last = e,
                    }
                }
                Err(last.into())
            }
            (None, Some(_)) => Err(CliError::Validation("--alpha needs --direction".into())),
            (None, None) => {
                let mut opts = options_for(sys, Strategy::Division, None)?;
                opts.max_k = k.max(1);
                Ok(auto_lift_with(sys, &opts)?)
            }
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub roundtrip: bool,
    pub mv_before: u128,
    pub mv_after: u128,
    pub recorded_mv_before: Option<u64>,
    pub recorded_mv_after: Option<u64>,
    /// Torus solutions of the original system and the largest relative
    /// residual of their images in the lifted system (bivariate inputs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_solutions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_lifted_residual: Option<f64>,
    #[serde(skip_serializing)]
    tol: f64,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.roundtrip
            && self.recorded_mv_before.is_none_or(|m| m as u128 == self.mv_before)
            && self.recorded_mv_after.is_none_or(|m| m as u128 == self.mv_after)
            && self.max_lifted_residual.is_none_or(|r| r <= self.tol.sqrt())
    }

    fn summary(&self) -> String {
        let mut s = format!(
            "{}: resubstitution {}, mixed volume {} -> {}",
            if self.ok() { "ok" } else { "FAILED" },
            if self.roundtrip { "matches" } else { "differs" },
            self.mv_before,
            self.mv_after
        );
        if let (Some(n), Some(r)) = (self.oracle_solutions, self.max_lifted_residual) {
            s.push_str(&format!("; {n} oracle solutions extend with residual <= {r:.1e}"));
        }
        s
    }
}

/// Extends a torus point of the original system through the transform and
/// the trailing definitions of the lifted system.
fn extend_point(t: &MonomialChange, lifted: &PolySystem, x: &[Complex64]) -> Vec<Complex64> {
    let d = t.nvars();
    let mut full = t.push_forward_point_complex(x);
    full.resize(lifted.nvars(), Complex64::new(0.0, 0.0));
    for (l, h) in lifted.polys()[d..].iter().enumerate() {
        full[d + l] = -h.eval_complex(&full);
    }
    full
}

pub fn verify(orig: &PolySystem, lifted: &SystemFile, s: &Settings) -> Result<Verification, CliError> {
    let d = orig.nvars();
    let prov: Option<serde_json::Value> = lifted
        .metadata("provenance")
        .map(|t| serde_json::from_str(t).map_err(|e| CliError::Validation(format!("provenance: {e}"))))
        .transpose()?;
    let (normalized, transform) = match &prov {
        Some(p) => {
            let t: MonomialChange = serde_json::from_value(p["transform"].clone())
                .map_err(|e| CliError::Validation(format!("provenance transform: {e}")))?;
            let n = normalized_from_provenance(orig, p).map_err(|e| CliError::Validation(e.to_string()))?;
            (n, t)
        }
        None => (orig.clone(), MonomialChange::identity(d, orig.len())),
    };
    let lsys = &lifted.system;
    let roundtrip = lsys.nvars() >= d
        && lsys.is_square()
        && resubstitute_system(lsys, d).is_ok_and(|r| {
            r.polys() == normalized.polys()
        });
    let mv = |p: &PolySystem| -> Result<u128, CliError> {
        if !p.is_square() {
            return Err(CliError::Precondition {
                condition: "square_system".into(),
                message: "system is not square".into(),
            });
        }
        mixed_volume(&p.newton_polytopes()).map_err(|e| CliError::Internal(e.to_string()))
    };
    let mut v = Verification {
        roundtrip,
        mv_before: mv(&normalized)?,
        mv_after: mv(lsys)?,
        recorded_mv_before: prov.as_ref().and_then(|p| p["mv_before"].as_u64()),
        recorded_mv_after: prov.as_ref().and_then(|p| p["mv_after"].as_u64()),
        oracle_solutions: None,
        max_lifted_residual: None,
        tol: s.tol,
    };
    if d == 2 && roundtrip {
        if let Ok(count) = count_torus_solutions_2d_seeded(orig, s.tol, s.seed) {
            let worst = count
                .solutions
                .iter()
                .map(|a| {
                    let z = extend_point(&transform, lsys, &a.point);
                    lsys.polys()
                        .iter()
                        .map(|f| relative_residual(f, &z))
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            v.oracle_solutions = Some(count.count);
            v.max_lifted_residual = Some(worst);
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

pub const EX1: &str = include_str!("../examples/ex1.sys");
pub const EX1_LIFT: &str = include_str!("../examples/ex1_lift.sys");
pub const SEC4: &str = include_str!("../examples/sec4.sys");
pub const DIVISION3: &str = include_str!("../examples/division3.sys");
pub const GENERIC2: &str = include_str!("../examples/generic2.sys");

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String), String>) -> SelftestResult {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, e),
    };
    SelftestResult {
        name,
        pass,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn sys_of(text: &str) -> Result<PolySystem, String> {
    parse_system_file(text).map(|f| f.system).map_err(|e| e.to_string())
}

fn mv_of(sys: &PolySystem) -> Result<u128, String> {
    mixed_volume(&sys.newton_polytopes()).map_err(|e| e.to_string())
}

pub fn selftest(s: &Settings) -> Vec<SelftestResult> {
    let lift_check = |text: &str, strategy: StrategyArg, before: u128, after: u128| {
        let sys = sys_of(text)?;
        let lift = do_lift(&sys, strategy, None, None, 1, None, None).map_err(|e| e.message())?;
        let round = crate::lifting::roundtrip_holds(&lift);
        Ok((
            lift.mv_before == before && lift.mv_after == after && round,
            format!("{} -> {}, roundtrip {round}", lift.mv_before, lift.mv_after),
        ))
    };
    vec![
        check("ex1_bkk_bound", || {
            let m = mv_of(&sys_of(EX1)?)?;
            Ok((m == 2, format!("mv = {m}")))
        }),
        check("ex1_lifted_mv", || {
            let m = mv_of(&sys_of(EX1_LIFT)?)?;
            Ok((m == 1, format!("mv = {m}")))
        }),
        check("ex1_bigcd_lift", || lift_check(EX1, StrategyArg::Bigcd, 2, 1)),
        check("ex1_division_lift", || lift_check(EX1, StrategyArg::Division, 2, 1)),
        check("ex1_oracle_count", || {
            let c = count_torus_solutions_2d_seeded(&sys_of(EX1)?, s.tol, s.seed).map_err(|e| e.to_string())?;
            Ok((c.count == 1, format!("{} solutions", c.count)))
        }),
        check("sec4_bkk_bound", || {
            let m = mv_of(&sys_of(SEC4)?)?;
            Ok((m == 16, format!("mv = {m}")))
        }),
        check("sec4_dependency_lift", || lift_check(SEC4, StrategyArg::Lindep, 16, 12)),
        check("division3_lift", || {
            let sys = sys_of(DIVISION3)?;
            let lift = do_lift(&sys, StrategyArg::Division, Some("0,0,-1"), Some("2"), 1, None, None)
                .map_err(|e| e.message())?;
            Ok((
                (lift.mv_before, lift.mv_after) == (9, 6) && crate::lifting::roundtrip_holds(&lift),
                format!("{} -> {}", lift.mv_before, lift.mv_after),
            ))
        }),
        check("generic2_attained", || {
            let sys = sys_of(GENERIC2)?;
            let rep = find_degenerate_directions(&sys).map_err(|e| e.to_string())?;
            let c = count_torus_solutions_2d_seeded(&sys, s.tol, s.seed).map_err(|e| e.to_string())?;
            Ok((
                rep.bound_attained() && c.count as u128 == rep.bkk_bound,
                format!("bkk {} count {}", rep.bkk_bound, c.count),
            ))
        }),
        check("monomial_lift_keeps_mv", || {
            let sys = sys_of(EX1)?;
            let lift = lift_monomial(&sys, &[1, 1]).map_err(|e| e.to_string())?;
            Ok((lift.mv_drop() == 0, format!("{} -> {}", lift.mv_before, lift.mv_after)))
        }),
        check("facial_root_is_exact", || {
            let sys = sys_of(EX1)?;
            let rep = find_degenerate_directions(&sys).map_err(|e| e.to_string())?;
            let u = Direction::new(vec![0, 1]).map_err(|e| e.to_string())?;
            let facial = sys.facial_system(u.as_slice());
            let ok = rep.solvable_directions().all(|r| {
                r.witness.as_ref().is_some_and(|w| {
                    facial
                        .polys()
                        .iter()
                        .all(|f: &LaurentPolynomial| num_traits::Zero::is_zero(&f.eval(w)))
                })
            });
            Ok((ok, format!("{} solvable directions", rep.solvable_directions().count())))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("mvlift").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&cli, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn example(name: &str) -> String {
        format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn mv_of_example_one() {
        let (code, out, _) = run_args(&["mv", &example("ex1.sys")]);
        assert_eq!((code, out.trim()), (0, "2"));
    }

    #[test]
    fn precondition_failures_exit_with_two() {
        let (code, _, err) = run_args(&[
            "lift",
            &example("ex1.sys"),
            "--strategy",
            "division",
            "--direction",
            "0,1",
            "--alpha",
            "2",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("alpha_facial_root"), "{err}");
    }

    #[test]
    fn parse_errors_exit_with_one() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.sys");
        std::fs::write(&p, "vars: x y\nx + * y\nx - y\n").unwrap();
        let (code, _, err) = run_args(&["mv", p.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains("bad.sys:"), "{err}");
    }

    #[test]
    fn config_keys_are_validated() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.conf");
        std::fs::write(&p, "oracle.tol = 1e-8\nseed = 5\n").unwrap();
        let cli = Cli::try_parse_from(["mvlift", "--config", p.to_str().unwrap(), "selftest"]).unwrap();
        let s = settings(&cli).unwrap();
        assert_eq!((s.tol, s.seed), (1e-8, 5));
        std::fs::write(&p, "colour = red\n").unwrap();
        let cli = Cli::try_parse_from(["mvlift", "--config", p.to_str().unwrap(), "selftest"]).unwrap();
        assert!(matches!(settings(&cli), Err(CliError::Validation(_))));
    }

    #[test]
    fn selftest_passes() {
        let (code, out, _) = run_args(&["selftest"]);
        assert_eq!(code, 0, "{out}");
    }
}
