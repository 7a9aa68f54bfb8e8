//! Command-line front end. [`execute`] maps an argument list to an exit
//! code and the text written to standard output and standard error, so the
//! binary is a thin wrapper and the behavior is testable in-process.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported with the error
//! type and variant name), 2 on a usage error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::collision::{
    collide, resolve_with_budget, CollisionClass, CollisionError, CollisionInput, CollisionOutcome,
    ResolutionTree, DEFAULT_DEPTH_BUDGET,
};
use crate::kodaira::{classify_from_orders, fiber_data, FiberType, JBehavior, KodairaError};
use crate::logsurface::{mmp_drive, MmpOutcome, MmpStatus, SurfaceError};
use crate::scenario::{Scenario, ScenarioError, ScenarioReport};
use crate::tables::{cor46_j_one, cor46_j_zero, miranda_table, CollisionTable};
use crate::weierstrass::{analyze, parse_poly, BaseResolution, BivariatePoly, WeierstrassError, DEFAULT_MAX_BLOWUPS};

#[derive(Debug, Parser)]
#[command(name = "miranda", version, about = "Singular fibers, collisions and log contractions of elliptic threefolds")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kodaira type from vanishing orders, or the table row of a named type.
    ClassifyFiber(ClassifyArgs),
    /// Blow up the crossing of two discriminant branches.
    Collide(CollideArgs),
    /// Blow up bad collisions until every collision is good.
    Resolve {
        left: FiberType,
        right: FiberType,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BUDGET)]
        max_depth: usize,
    },
    /// Regenerate collision tables from the collision calculus.
    Tables(TablesArgs),
    /// Resolve the discriminant of y^2 = x^3 + a x + b to normal crossings.
    Weierstrass {
        #[arg(long, value_parser = parse_poly_arg, allow_hyphen_values = true)]
        a: BivariatePoly,
        #[arg(long, value_parser = parse_poly_arg, allow_hyphen_values = true)]
        b: BivariatePoly,
        #[arg(long, default_value_t = DEFAULT_MAX_BLOWUPS)]
        max_blowups: usize,
    },
    /// Evaluate a JSON scenario file.
    Scenario { file: PathBuf },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ClassifyArgs {
    /// Vanishing orders of a, b and the discriminant, e.g. `2,3,6`.
    #[arg(long, value_parser = parse_orders)]
    pub orders: Option<[u32; 3]>,
    /// A fiber type such as `I0*`, `IV` or `m3:I0`.
    #[arg(long = "type")]
    pub fiber_type: Option<FiberType>,
}

#[derive(Debug, Args)]
pub struct CollideArgs {
    pub left: FiberType,
    pub right: FiberType,
    /// Multiplicity of the left branch's fiber.
    #[arg(long)]
    pub n1: Option<u32>,
    /// Multiplicity of the right branch's fiber.
    #[arg(long)]
    pub n2: Option<u32>,
    /// Multiplicity of the fiber over the exceptional curve.
    #[arg(long)]
    pub ngamma: Option<u32>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TablesArgs {
    /// Both family tables of beta and the type on Gamma.
    #[arg(long)]
    pub cor46: bool,
    /// The table of types on Gamma with good collisions marked.
    #[arg(long)]
    pub miranda3: bool,
}

fn parse_orders(text: &str) -> Result<[u32; 3], String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b, d] = parts[..] else {
        return Err("expected three comma-separated orders o_a,o_b,o_d".into());
    };
    let n = |x: &str| x.parse::<u32>().map_err(|e| format!("`{x}`: {e}"));
    Ok([n(a)?, n(b)?, n(d)?])
}

fn parse_poly_arg(text: &str) -> Result<BivariatePoly, String> {
    parse_poly(text).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    Collision(#[from] CollisionError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn variant(debug: String) -> String {
    debug
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_string()
}

impl CliError {
    /// `Type::Variant` of the underlying domain error.
    pub fn name(&self) -> String {
        match self {
            CliError::Kodaira(e) => format!("KodairaError::{}", variant(format!("{e:?}"))),
            CliError::Collision(e) => format!("CollisionError::{}", variant(format!("{e:?}"))),
            CliError::Weierstrass(e) => format!("WeierstrassError::{}", variant(format!("{e:?}"))),
            CliError::Scenario(e) => format!("ScenarioError::{}", variant(format!("{e:?}"))),
            CliError::Surface(e) => format!("SurfaceError::{}", variant(format!("{e:?}"))),
            CliError::Io { .. } => "IoError".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub fiber_type: FiberType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<[u32; 3]>,
    #[serde(with = "crate::rational::serde_str")]
    pub a_coeff: crate::rational::Rational,
    pub euler: u32,
    pub monodromy: crate::monodromy::SL2Matrix,
    pub j_behavior: JBehavior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollideReport {
    pub input: CollisionInput,
    pub outcome: CollisionOutcome,
    pub class: CollisionClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub tree: ResolutionTree,
    pub blowups: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassReport {
    #[serde(flatten)]
    pub resolution: BaseResolution,
    pub blowups: usize,
    /// Contraction of the exceptional tower, run once normal crossings hold.
    pub mmp: MmpOutcome,
}

/// Report of one invocation; JSON output is the inner value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Fiber(FiberReport),
    Collide(CollideReport),
    Resolve(ResolveReport),
    Tables(Vec<CollisionTable>),
    Weierstrass(Box<WeierstrassReport>),
    Scenario(ScenarioReport),
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    Ok(match command {
        Command::ClassifyFiber(args) => {
            let (fiber_type, orders) = match (args.orders, args.fiber_type) {
                (Some(o @ [a, b, d]), _) => (classify_from_orders(a, b, d)?, Some(o)),
                (None, Some(t)) => (t, None),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let data = fiber_data(fiber_type);
            Report::Fiber(FiberReport {
                fiber_type,
                orders,
                a_coeff: data.a_coeff,
                euler: data.euler,
                monodromy: data.monodromy,
                j_behavior: data.j_behavior,
            })
        }
        Command::Collide(args) => {
            let mut input = CollisionInput::from_types(args.left, args.right);
            if args.n1.is_some() || args.n2.is_some() || args.ngamma.is_some() {
                let (n1, n2) = (args.n1.unwrap_or(input.n_left), args.n2.unwrap_or(input.n_right));
                let ngamma = args.ngamma.or(input.n_gamma);
                input = input.with_multiplicities(n1, n2, ngamma);
            }
            let outcome = collide(&input)?;
            Report::Collide(CollideReport {
                class: outcome.class(),
                input,
                outcome,
            })
        }
        Command::Resolve {
            left,
            right,
            max_depth,
        } => {
            let tree = resolve_with_budget(&CollisionInput::section(*left, *right), *max_depth)?;
            Report::Resolve(ResolveReport {
                blowups: tree.blowup_count(),
                depth: tree.depth(),
                tree,
            })
        }
        Command::Tables(t) => Report::Tables(if t.cor46 {
            vec![cor46_j_one()?, cor46_j_zero()?]
        } else {
            vec![miranda_table()?]
        }),
        Command::Weierstrass { a, b, max_blowups } => {
            let resolution = analyze(a, b, *max_blowups)?;
            let (surface, lambda) = resolution.surface();
            let mmp = mmp_drive(&surface, &lambda)?;
            Report::Weierstrass(Box::new(WeierstrassReport {
                blowups: resolution.blowups(),
                resolution,
                mmp,
            }))
        }
        Command::Scenario { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| CliError::Io {
                path: file.display().to_string(),
                message: e.to_string(),
            })?;
            Report::Scenario(Scenario::from_json(&text)?.evaluate()?)
        }
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        match self {
            Report::Fiber(r) => {
                let _ = writeln!(o, "{}", r.fiber_type);
                if let Some([a, b, d]) = r.orders {
                    let _ = writeln!(o, "orders (a, b, Δ) = ({a}, {b}, {d})");
                }
                let _ = writeln!(
                    o,
                    "a = {}, χ = {}, monodromy {}, J: {}",
                    r.a_coeff,
                    r.euler,
                    r.monodromy,
                    j_text(r.j_behavior)
                );
            }
            Report::Collide(r) => {
                let x = &r.outcome;
                let _ = writeln!(
                    o,
                    "β = {}, Γ: {}, α = {}, δ = {}, verdict: {:?}",
                    x.beta, x.gamma_type, x.alpha, x.delta, r.class
                );
                let _ = writeln!(
                    o,
                    "a(Γ) = {}, pole order on Γ = {}, monodromy on Γ {}, multiplicities ({}, {}, {})",
                    x.a_gamma,
                    x.gamma_pole,
                    x.gamma_monodromy,
                    r.input.n_left,
                    r.input.n_right,
                    r.input.n_gamma.map_or("?".to_string(), |n| n.to_string())
                );
            }
            Report::Resolve(r) => {
                o.push_str(&r.tree.render());
                let _ = writeln!(o, "blow-ups: {}, depth: {}", r.blowups, r.depth);
            }
            Report::Tables(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        o.push('\n');
                    }
                    let _ = write!(o, "{t}");
                }
            }
            Report::Weierstrass(r) => weierstrass_text(&mut o, r),
            Report::Scenario(r) => {
                let _ = writeln!(o, "Λ = {}", r.lambda);
                for b in &r.blowdowns {
                    let _ = writeln!(
                        o,
                        "contract {}: (K+Λ)·Γ = {}, δ = {}, log-extremal: {}, verdict: {:?}",
                        b.class, b.log_canonical_degree, b.delta, b.log_extremal, b.verdict
                    );
                }
                mmp_text(&mut o, &r.mmp);
            }
        }
        o
    }
}

fn j_text(j: JBehavior) -> String {
    match j {
        JBehavior::Zero => "0".into(),
        JBehavior::One => "1".into(),
        JBehavior::Regular => "regular".into(),
        JBehavior::Pole(n) => format!("pole of order {n}"),
    }
}

fn weierstrass_text(o: &mut String, r: &WeierstrassReport) {
    let res = &r.resolution;
    let _ = writeln!(o, "a = {}, b = {}", res.a, res.b);
    let _ = writeln!(o, "Δ = {}", res.discriminant);
    let _ = writeln!(o, "divisors:");
    for d in &res.divisors {
        let eq = d.equation.as_ref().map_or("exceptional".to_string(), |e| format!("{e} = 0"));
        let _ = writeln!(
            o,
            "  {}: {}, orders (a, b, Δ) = ({}, {}, {}), type {}, λ = {}",
            d.name, eq, d.ord_a, d.ord_b, d.ord_delta, d.fiber_type, d.lambda_coefficient
        );
    }
    let _ = writeln!(o, "blow-ups: {}", r.blowups);
    for s in &res.steps {
        let through: Vec<String> = s.through.iter().map(|(k, m)| format!("{k}^{m}")).collect();
        let _ = writeln!(
            o,
            "  {} from {}, through [{}]: orders ({}, {}, {}), type {}, λ = {}, pulled-back Λ coefficient {} ({}), pulled-back J pole {} vs {} ({})",
            s.exceptional,
            s.center,
            through.join(" "),
            s.ord_a,
            s.ord_b,
            s.ord_delta,
            s.fiber_type,
            s.lambda_coefficient,
            s.pullback_lambda,
            if s.lambda_pullback_holds { "holds" } else { "fails" },
            s.pullback_pole,
            s.fiber_type.pole_order(),
            if s.pole_pullback_holds { "holds" } else { "fails" },
        );
    }
    let _ = writeln!(o, "collisions:");
    for c in &res.collisions {
        let head = format!(
            "  {} x {} ({} x {}) at {}, {} point(s)",
            c.left, c.right, c.left_type, c.right_type, c.location, c.points
        );
        match (&c.outcome, c.class, &c.error) {
            (Some(x), Some(class), _) => {
                let _ = writeln!(
                    o,
                    "{head}: β = {}, Γ: {}, α = {}, δ = {}, verdict: {class:?}",
                    x.beta, x.gamma_type, x.alpha, x.delta
                );
            }
            (_, _, Some(e)) => {
                let _ = writeln!(o, "{head}: {e}");
            }
            _ => {
                let _ = writeln!(o, "{head}");
            }
        }
    }
    let _ = writeln!(o, "SNC: {}", res.snc);
    mmp_text(o, &r.mmp);
}

fn mmp_text(o: &mut String, m: &MmpOutcome) {
    for s in &m.steps {
        let _ = writeln!(
            o,
            "contracted {}: (K+Λ)·Γ = {}, δ = {}",
            s.class, s.log_canonical_degree, s.delta
        );
    }
    for b in &m.blocked {
        let _ = writeln!(o, "kept {}: (K+Λ)·Γ = {}", b.class, b.log_canonical_degree);
    }
    match &m.status {
        MmpStatus::Minimal => {
            let _ = writeln!(o, "K+Λ nef: true");
        }
        MmpStatus::NotMinimal { negative_classes } => {
            let _ = writeln!(o, "K+Λ nef: false, negative on {}", negative_classes.join(", "));
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first), runs the command and renders the
/// report.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli.command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: if cli.json { report.to_json() } else { report.to_text() },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error[{}]: {e}\n", e.name()),
        },
    }
}
