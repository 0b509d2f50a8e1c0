//! Command-line front end: prune, vc, match, check, fuzz.
//!
//! Exit codes: 0 success, 1 input parse error, 2 configuration error or
//! refused universe, 3 a check failed, 4 a check was vacuous (the old
//! formula is satisfiable), 10 the pruned result is literally `false`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use vcprune::matcher::{build_substitution, substitution_text, SimilarityWeights};
use vcprune::oracle::{
    check_prune_correct, random_pair, report_line, GeneratorMode, GeneratorParams, OracleError,
    Universe, Verdict,
};
use vcprune::pruner::{prune, PruneOptions};
use vcprune::term::{Session, Term};
use vcprune::vcgen::{vc, DsaGraph};

const EXIT_PARSE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;
const EXIT_VACUOUS: u8 = 4;
const EXIT_PRUNED_FALSE: u8 = 10;

#[derive(Parser)]
#[command(
    name = "vcprune",
    version,
    about = "Prune a prover query using a previous query known to be unsatisfiable"
)]
struct Cli {
    /// Optional key=value configuration file. Keys: `commutative` (comma
    /// separated), `env-weight`, `lcs-weight`. Flags override the file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Treat SYMBOL as commutative in addition to `and` and `or`; repeatable.
    #[arg(long, global = true, value_name = "SYMBOL")]
    commutative: Vec<String>,

    /// Weight of the positional (environment) similarity component.
    #[arg(long, global = true, value_name = "N")]
    env_weight: Option<i64>,

    /// Weight of the name (longest common subsequence) similarity component.
    #[arg(long, global = true, value_name = "N")]
    lcs_weight: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prune NEW against OLD (assumed UNSAT) and print the residual formula.
    ///
    /// Exits 10 when the residual is literally `false`, so callers can skip
    /// the prover entirely.
    Prune {
        old: PathBuf,
        new: PathBuf,
        /// Skip constant renaming.
        #[arg(long)]
        no_match: bool,
        /// Write the constant renaming to PATH, one `old new` pair per line.
        #[arg(long, value_name = "PATH")]
        emit_substitution: Option<PathBuf>,
    },
    /// Print the verification condition of a DSA graph file.
    Vc { graph: PathBuf },
    /// Print the constant renaming that aligns OLD's constants with NEW's.
    Match { old: PathBuf, new: PathBuf },
    /// Exhaustively verify that pruning NEW against OLD preserves
    /// (un)satisfiability. Requires OLD to be UNSAT; exits 4 otherwise.
    Check {
        old: PathBuf,
        new: PathBuf,
        /// Integer range for integer-valued constants.
        #[arg(
            long,
            num_args = 2,
            value_names = ["LO", "HI"],
            allow_negative_numbers = true,
            default_values_t = [-4, 7]
        )]
        range: Vec<i64>,
        /// Refuse to enumerate more assignments than this.
        #[arg(long, value_name = "N", default_value_t = 1 << 20)]
        limit: u128,
    },
    /// Generate seeded random formula pairs and run the pruning check on
    /// each; print one report line per pair. Exits 0 iff no pair fails.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        max_atoms: usize,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = FuzzMode::Propositional)]
        mode: FuzzMode,
        #[arg(
            long,
            num_args = 2,
            value_names = ["LO", "HI"],
            allow_negative_numbers = true,
            default_values_t = [-4, 7]
        )]
        range: Vec<i64>,
        /// Refuse to enumerate more assignments than this per pair.
        #[arg(long, value_name = "N", default_value_t = 1 << 20)]
        limit: u128,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuzzMode {
    Propositional,
    Integer,
}

struct Settings {
    commutative: Vec<String>,
    weights: SimilarityWeights,
}

fn load_settings(cli: &Cli) -> Result<Settings, String> {
    let mut commutative: BTreeSet<String> = cli.commutative.iter().cloned().collect();
    let mut env_weight = None;
    let mut lcs_weight = None;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        for (number, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad_line = || format!("{}:{}: expected key=value", path.display(), number + 1);
            let (key, value) = line.split_once('=').ok_or_else(bad_line)?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "commutative" => {
                    commutative.extend(
                        value
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(str::to_owned),
                    );
                }
                "env-weight" => {
                    env_weight = Some(value.parse::<i64>().map_err(|e| {
                        format!("{}:{}: env-weight: {e}", path.display(), number + 1)
                    })?);
                }
                "lcs-weight" => {
                    lcs_weight = Some(value.parse::<i64>().map_err(|e| {
                        format!("{}:{}: lcs-weight: {e}", path.display(), number + 1)
                    })?);
                }
                other => {
                    return Err(format!(
                        "{}:{}: unknown key `{other}`",
                        path.display(),
                        number + 1
                    ));
                }
            }
        }
    }
    let defaults = SimilarityWeights::default();
    let weights = SimilarityWeights {
        environment: cli
            .env_weight
            .or(env_weight)
            .unwrap_or(defaults.environment),
        name_lcs: cli.lcs_weight.or(lcs_weight).unwrap_or(defaults.name_lcs),
    };
    if weights.environment <= weights.name_lcs {
        return Err(format!(
            "env-weight ({}) must exceed lcs-weight ({})",
            weights.environment, weights.name_lcs
        ));
    }
    for symbol in &commutative {
        let ok = symbol
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            || matches!(
                symbol.as_str(),
                ">" | ">=" | "<" | "<=" | "=" | "+" | "-" | "*"
            );
        if !ok {
            return Err(format!("`{symbol}` is not a valid symbol"));
        }
    }
    Ok(Settings {
        commutative: commutative.into_iter().collect(),
        weights,
    })
}

fn parse_universe(range: &[i64], limit: u128) -> Result<Universe, String> {
    let (low, high) = (range[0], range[1]);
    if low > high {
        return Err(format!("empty integer range {low}..{high}"));
    }
    Ok(Universe {
        int_low: low,
        int_high: high,
        max_assignments: limit,
    })
}

fn read_formula(session: &mut Session, path: &Path) -> Result<Term, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_CONFIG)
    })?;
    session.parse_term(&text).map_err(|e| {
        eprintln!("error: {}:{e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match load_settings(&cli) {
        Ok(settings) => settings,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let mut session = Session::new();
    for name in &settings.commutative {
        let symbol = session.symbol(name);
        session.set_commutative(symbol);
    }
    match run(cli.command, &mut session, &settings) {
        Ok(code) => code,
        Err(code) => code,
    }
}

fn run(command: Command, session: &mut Session, settings: &Settings) -> Result<ExitCode, ExitCode> {
    match command {
        Command::Prune {
            old,
            new,
            no_match,
            emit_substitution,
        } => {
            let old_term = read_formula(session, &old)?;
            let new_term = read_formula(session, &new)?;
            let options = PruneOptions {
                rename_constants: !no_match,
                weights: settings.weights,
            };
            let outcome = prune(session, old_term, new_term, &options);
            if let Some(path) = emit_substitution {
                let text = substitution_text(session, &outcome.substitution);
                std::fs::write(&path, text).map_err(|e| {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(EXIT_CONFIG)
                })?;
            }
            println!("{}", session.display(outcome.result));
            if outcome.result == session.truth(false) {
                Ok(ExitCode::from(EXIT_PRUNED_FALSE))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Vc { graph } => {
            let text = std::fs::read_to_string(&graph).map_err(|e| {
                eprintln!("error: cannot read {}: {e}", graph.display());
                ExitCode::from(EXIT_CONFIG)
            })?;
            let parsed = DsaGraph::parse(session, &text).map_err(|e| {
                eprintln!("error: {}: {e}", graph.display());
                ExitCode::from(EXIT_PARSE)
            })?;
            let condition = vc(session, &parsed);
            println!("{}", session.display(condition));
            Ok(ExitCode::SUCCESS)
        }
        Command::Match { old, new } => {
            let old_term = read_formula(session, &old)?;
            let new_term = read_formula(session, &new)?;
            let old_term = session.normalize(old_term);
            let new_term = session.normalize(new_term);
            let substitution = build_substitution(session, old_term, new_term, &settings.weights);
            print!("{}", substitution_text(session, &substitution));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            old,
            new,
            range,
            limit,
        } => {
            let universe = parse_universe(&range, limit).map_err(|message| {
                eprintln!("error: {message}");
                ExitCode::from(EXIT_CONFIG)
            })?;
            let old_term = read_formula(session, &old)?;
            let new_term = read_formula(session, &new)?;
            let report = check_prune_correct(session, old_term, new_term, &universe)
                .map_err(|e| exit_for_oracle_error(&e))?;
            println!("{}", report_line(session, None, &report));
            if let Some(detail) = &report.detail {
                eprintln!("note: {detail}");
            }
            Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(EXIT_CHECK_FAILED),
                Verdict::Vacuous => ExitCode::from(EXIT_VACUOUS),
            })
        }
        Command::Fuzz {
            seed,
            count,
            max_atoms,
            max_depth,
            mode,
            range,
            limit,
        } => {
            let universe = parse_universe(&range, limit).map_err(|message| {
                eprintln!("error: {message}");
                ExitCode::from(EXIT_CONFIG)
            })?;
            let mut failures = 0u64;
            for index in 0..count {
                let case_seed = seed.wrapping_add(index);
                let params = GeneratorParams {
                    seed: case_seed,
                    max_atoms,
                    max_depth,
                    mode: match mode {
                        FuzzMode::Propositional => GeneratorMode::Propositional,
                        FuzzMode::Integer => GeneratorMode::IntegerComparison,
                    },
                    ..GeneratorParams::default()
                };
                let (old_term, new_term) = random_pair(session, &params);
                let report = check_prune_correct(session, old_term, new_term, &universe)
                    .map_err(|e| exit_for_oracle_error(&e))?;
                println!("{}", report_line(session, Some(case_seed), &report));
                if report.verdict == Verdict::Fail {
                    failures += 1;
                }
            }
            if failures == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("error: {failures} failing cases");
                Ok(ExitCode::from(EXIT_CHECK_FAILED))
            }
        }
    }
}

fn exit_for_oracle_error(error: &OracleError) -> ExitCode {
    eprintln!("error: {error}");
    ExitCode::from(EXIT_CONFIG)
}
