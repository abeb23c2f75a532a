use std::fs;
use std::path::Path;

use lambda_commute::commutation::{classify_pair, solve_lambda_commutant, FactorStatus};
use lambda_commute::intertwiner::construct_intertwiner;
use lambda_commute::realizations::{RealizationSpec, UqGenerator};
use lambda_commute::resolvent::{stone_projection_with_tol, QuadratureRule, StoneQuadratureSpec};
use lambda_commute::suite::{run_suite, SuiteConfig};
use lambda_commute::{ComplexMatrix, Error, OperatorPair, C64};
use serde::Serialize;
use serde_json::json;

use crate::{parse, Cli, Command, GenerateArgs, Generator, Kind, Rule, StoneArgs};

pub const OK: u8 = 0;
pub const CONDITION: u8 = 1;
pub const INPUT: u8 = 2;
pub const VERIFICATION: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConditionFailed { .. } => CONDITION,
            Error::VerificationFailed(_) | Error::InternalInconsistency(_) | Error::ConvergenceFailure { .. } => {
                VERIFICATION
            }
            _ => INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::input(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Generate(args) => generate(cli, args),
        Command::Analyze { pair } => analyze(cli, pair),
        Command::Intertwine { pair } => intertwine(cli, pair),
        Command::Commutant { matrix, lambda } => commutant(cli, matrix, *lambda),
        Command::Stone(args) => stone(cli, args),
        Command::Suite { trials, max_dim } => suite(cli, *trials, *max_dim),
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string(value).map_err(|e| Failure::input(e.to_string()))?;
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::input(format!("--{flag} is required for --kind {kind}")))
}

fn spec_from(args: &GenerateArgs) -> Result<RealizationSpec, Failure> {
    let zero = C64::new(0.0, 0.0);
    Ok(match args.kind {
        Kind::ClockShift => RealizationSpec::ClockShift {
            n: need(args.n, "n", "clock-shift")?,
        },
        Kind::CyclicShiftDiag => RealizationSpec::CyclicShiftDiag {
            n: need(args.n, "n", "cyclic-shift-diag")?,
            lambda: need(args.lambda, "lambda", "cyclic-shift-diag")?,
        },
        Kind::NilpotentDiag => RealizationSpec::NilpotentDiag {
            betas: parse::complex_list(
                args.betas
                    .as_deref()
                    .ok_or_else(|| Failure::input("--betas is required for --kind nilpotent-diag"))?,
            )
            .map_err(|e| Failure::input(format!("--betas: {e}")))?,
            pivot: need(args.pivot, "pivot", "nilpotent-diag")?,
            lambda: need(args.lambda, "lambda", "nilpotent-diag")?,
            solve: args.solve,
        },
        Kind::Jordan2 => RealizationSpec::Jordan2 {
            x: need(args.x, "x", "jordan2")?,
            y: args.y.unwrap_or(zero),
            lambda: need(args.lambda, "lambda", "jordan2")?,
        },
        Kind::Jordan3 => RealizationSpec::Jordan3 {
            x: need(args.x, "x", "jordan3")?,
            y: args.y.unwrap_or(zero),
            z: args.z.unwrap_or(zero),
            lambda: need(args.lambda, "lambda", "jordan3")?,
        },
        Kind::PauliXy => RealizationSpec::PauliXy,
        Kind::PauliIntertwiner => RealizationSpec::PauliIntertwiner,
        Kind::UqSl2 => RealizationSpec::UqSl2 {
            n: need(args.n, "n", "uq-sl2")?,
            q: need(args.q, "q", "uq-sl2")?,
            eps: args.eps,
            generator: match args.generator {
                Generator::E => UqGenerator::E,
                Generator::F => UqGenerator::F,
            },
        },
    })
}

fn generate(cli: &Cli, args: &GenerateArgs) -> Outcome {
    let pair = spec_from(args)?.build()?;
    emit(cli, &pair)?;
    Ok(OK)
}

fn analyze(cli: &Cli, path: &Path) -> Outcome {
    let pair: OperatorPair = read_json(path)?;
    let report = classify_pair(&pair, cli.tol)?;
    match (report.factor.status, report.factor.lambda_hat) {
        (FactorStatus::Any, _) => eprintln!("λ = any"),
        (FactorStatus::None, _) => eprintln!("no factor"),
        (FactorStatus::Unique, Some(l)) => eprintln!("λ = {l}"),
        (FactorStatus::Unique, None) => {}
    }
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    emit(cli, &report)?;
    Ok(if report.consistent { OK } else { CONDITION })
}

fn intertwine(cli: &Cli, path: &Path) -> Outcome {
    let pair: OperatorPair = read_json(path)?;
    let w = construct_intertwiner(&pair, cli.tol)?;
    emit(cli, &w)?;
    Ok(OK)
}

fn commutant(cli: &Cli, path: &Path, lambda: C64) -> Outcome {
    let a: ComplexMatrix = read_json(path)?;
    let basis = solve_lambda_commutant(&a, lambda, cli.tol)?;
    eprintln!("dimension {}", basis.len());
    emit(
        cli,
        &json!({ "lambda": lambda, "dimension": basis.len(), "basis": basis }),
    )?;
    Ok(OK)
}

fn stone(cli: &Cli, args: &StoneArgs) -> Outcome {
    let a: ComplexMatrix = read_json(&args.matrix)?;
    let interval = (args.a, args.b);
    let spec = StoneQuadratureSpec {
        interval,
        epsilon: args.epsilon,
        nodes: args
            .nodes
            .unwrap_or_else(|| StoneQuadratureSpec::default_nodes(interval, args.epsilon)),
        rule: match args.rule {
            Rule::Trapezoid => QuadratureRule::Trapezoid,
            Rule::GaussLegendre => QuadratureRule::GaussLegendre,
        },
    };
    let result = stone_projection_with_tol(&a, &spec, cli.tol)?;
    emit(cli, &result)?;
    Ok(OK)
}

fn suite(cli: &Cli, trials: usize, max_dim: usize) -> Outcome {
    let config = SuiteConfig {
        seed: cli.seed,
        trials,
        tol: cli.tol,
        max_dim,
    };
    let outcome = run_suite(&config)?;
    eprintln!("passed {} failed {}", outcome.passed, outcome.failed);
    emit(cli, &outcome)?;
    Ok(if outcome.all_passed() { OK } else { CONDITION })
}
