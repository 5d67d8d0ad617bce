//! The `laf` command line: loads algebra, character and tower files, runs one
//! computation and emits a JSON report.
//!
//! Exit codes: 0 on success, 1 for input and validation errors, 2 when a
//! computation fails (clustering, consistency, minor budget, a failed check).

pub mod selftest;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use laf_core::algebra::{AlgebraError, AlgebraSpec, FiniteAlgebra, DEFAULT_MINOR_BUDGET};
use laf_core::fiber::{self, Character, CharacterSpec, FiberError, Mode};
use laf_core::hecke::{self, HeckeError, Preset, Rank1Datum};
use laf_core::towers::{self, TowerError, TowerSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "laf", version, about = "Discriminants, Jacobson strata and fibers of finite algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized discriminant and Gram matrix of an algebra.
    Disc { algebra: PathBuf },
    /// Determinantal ideals of the trace form, optionally with a stratum scan.
    Stratify {
        algebra: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MINOR_BUDGET)]
        max_minors: u128,
        /// JSON list of characters to classify by stratum index.
        #[arg(long)]
        chars: Option<PathBuf>,
    },
    /// Radical, Wedderburn blocks and trace vectors at one character.
    Fiber {
        algebra: PathBuf,
        #[arg(long = "char")]
        character: PathBuf,
        /// Overrides the character's tolerance (float mode only).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank-1 Iwahori-Hecke algebra over its center.
    Hecke {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        /// Compare with the published closed form.
        #[arg(long)]
        compare: bool,
        /// Decide irreducibility of the principal series at this character.
        #[arg(long = "char")]
        character: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks the discriminant and norm identities on a tower `A -> B -> C`.
    Tower { tower: PathBuf },
    /// Runs the built-in acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for the float-mode fibers of the suite.
        #[arg(long, default_value_t = fiber::DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: HeckeError| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Computation(_) => 2,
        }
    }
}

fn algebra_error(e: AlgebraError) -> CliError {
    match e {
        AlgebraError::MinorBudget { .. } | AlgebraError::Singular => CliError::Computation(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn fiber_error(e: FiberError) -> CliError {
    match e {
        FiberError::Algebra(e) => algebra_error(e),
        FiberError::Poly(_) | FiberError::ModeMismatch | FiberError::InvalidCharacter(_) => {
            CliError::Input(e.to_string())
        }
        _ => CliError::Computation(e.to_string()),
    }
}

fn tower_error(e: TowerError) -> CliError {
    match e {
        TowerError::Algebra(e) => algebra_error(e),
        _ => CliError::Input(e.to_string()),
    }
}

fn hecke_error(e: HeckeError) -> CliError {
    match e {
        HeckeError::Algebra(e) => algebra_error(e),
        HeckeError::Fiber(e) => fiber_error(e),
        HeckeError::Tower(e) => tower_error(e),
        HeckeError::Reduction(_) | HeckeError::NotInvariant { .. } => CliError::Computation(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    /// SHA-256 over the input files, each prefixed by its byte length.
    pub input_digest: String,
    pub results: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A finished run: the report plus the exit code it should produce.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Input files read up front, so every path is checked before any work starts.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn digest(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path, text: &str) -> Result<FiniteAlgebra, CliError> {
    let spec: AlgebraSpec = parse_json(path, text)?;
    let alg = spec.build().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    alg.validate().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(alg)
}

fn load_character(path: &Path, text: &str, tol: Option<f64>) -> Result<Character, CliError> {
    let mut spec: CharacterSpec = parse_json(path, text)?;
    if let Some(t) = tol {
        if spec.mode == Mode::Exact {
            return Err(CliError::Input("--tol applies to float-mode characters only".into()));
        }
        spec.tolerance = Some(t);
    }
    Character::from_spec(&spec).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Input errors raised while using a file's contents name that file.
fn in_file(e: CliError, path: &Path) -> CliError {
    match e {
        CliError::Input(m) if !m.starts_with(&path.display().to_string()) => {
            CliError::Input(format!("{}: {m}", path.display()))
        }
        other => other,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut inputs = Inputs::new();
    let mut exit_code = 0;
    let (name, seed, results) = match &cli.command {
        Command::Disc { algebra } => {
            let alg = load_algebra(algebra, &inputs.read(algebra)?)?;
            let raw = alg.raw_discriminant().map_err(algebra_error)?.clone();
            let results = json!({
                "base": alg.base().descriptor(),
                "rank": alg.rank(),
                "basis": alg.basis_names(),
                "gram": alg.gram_matrix().to_strings(),
                "raw_discriminant": raw.to_string(),
                "discriminant": raw.normalize_up_to_unit().to_string(),
            });
            ("disc", None, results)
        }
        Command::Stratify { algebra, max_minors, chars } => {
            let alg = load_algebra(algebra, &inputs.read(algebra)?)?;
            let characters: Option<Vec<Character>> = match chars {
                Some(p) => {
                    let specs: Vec<CharacterSpec> = parse_json(p, &inputs.read(p)?)?;
                    let parsed = specs
                        .iter()
                        .enumerate()
                        .map(|(i, s)| {
                            Character::from_spec(s).map_err(|e| CliError::Input(format!("{}[{i}]: {e}", p.display())))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(parsed)
                }
                None => None,
            };
            let mut ideals = Vec::new();
            for i in 1..=alg.rank() {
                let order = alg.rank() - i + 1;
                match alg.determinantal_ideal(i, *max_minors) {
                    Ok(gens) => ideals.push(json!({
                        "index": i,
                        "minor_order": order,
                        "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })),
                    Err(e @ AlgebraError::MinorBudget { .. }) => {
                        ideals.push(json!({ "index": i, "minor_order": order, "refused": e.to_string() }))
                    }
                    Err(e) => return Err(algebra_error(e)),
                }
            }
            let mut results = json!({
                "rank": alg.rank(),
                "discriminant": alg.discriminant().map_err(algebra_error)?.to_string(),
                "max_minors": max_minors.to_string(),
                "ideals": ideals,
            });
            if let Some(chars) = characters {
                results["scan"] = to_value(&fiber::stratum_scan(&alg, &chars));
            }
            ("stratify", None, results)
        }
        Command::Fiber { algebra, character, tol, seed } => {
            let alg = load_algebra(algebra, &inputs.read(algebra)?)?;
            let chi = load_character(character, &inputs.read(character)?, *tol)?;
            let report = fiber::fiber(&alg, &chi, *seed).map_err(|e| in_file(fiber_error(e), character))?;
            ("fiber", Some(*seed), to_value(&report))
        }
        Command::Hecke { preset, compare, character, seed } => {
            let chi = match character {
                Some(p) => Some(load_character(p, &inputs.read(p)?, None)?),
                None => None,
            };
            let rd = Rank1Datum::new(*preset);
            let alg = hecke::hecke_algebra(&rd).map_err(hecke_error)?;
            let disc = alg.discriminant().map_err(algebra_error)?;
            let mut results = json!({
                "preset": preset,
                "base": alg.base().descriptor(),
                "rank": alg.rank(),
                "basis": alg.basis_names(),
                "discriminant": disc.to_string(),
            });
            if *compare {
                let cmp = hecke::compare_closed_form(&rd).map_err(hecke_error)?;
                results["compare"] = json!(cmp.equal);
                results["comparison"] = to_value(&cmp);
            }
            if let (Some(chi), Some(path)) = (chi, character) {
                let verdict = hecke::verdict_for(&alg, &chi, *seed).map_err(|e| in_file(hecke_error(e), path))?;
                results["verdict"] = to_value(&verdict);
            }
            ("hecke", chi_seed(character, *seed), results)
        }
        Command::Tower { tower } => {
            let spec: TowerSpec = parse_json(tower, &inputs.read(tower)?)?;
            let t = spec.build().map_err(|e| CliError::Input(format!("{}: {e}", tower.display())))?;
            let (direct, composed) = towers::discriminant_sides(&t).map_err(tower_error)?;
            let holds = direct.equal_up_to_unit(&composed).map_err(|e| CliError::Computation(e.to_string()))?;
            let d_cb = t.discriminant_c_over_b();
            let norm = t.b().norm(&d_cb).map_err(algebra_error)?;
            if !holds {
                exit_code = 2;
            }
            let results = json!({
                "rank_B_over_A": t.b().rank(),
                "rank_C_over_B": t.degree(),
                "d_B_over_A": t.b().raw_discriminant().map_err(algebra_error)?.to_string(),
                "d_C_over_B": d_cb.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "norm_d_C_over_B": norm.to_string(),
                "d_C_over_A": direct.to_string(),
                "composed": composed.to_string(),
                "identity_holds": holds,
            });
            ("tower", None, results)
        }
        Command::Selftest { seed, tol } => {
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Input(format!("--tol must be a positive number, got {tol}")));
            }
            let report = selftest::run(&selftest::Options { seed: *seed, tolerance: *tol });
            if report.failed > 0 {
                exit_code = 2;
            }
            ("selftest", Some(*seed), to_value(&report))
        }
    };
    let report =
        Report { command: name.to_string(), version: VERSION.to_string(), seed, input_digest: inputs.digest(), results };
    Ok(Outcome { report, exit_code })
}

fn chi_seed(character: &Option<PathBuf>, seed: u64) -> Option<u64> {
    character.as_ref().map(|_| seed)
}
