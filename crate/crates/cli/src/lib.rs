//! Command-line surface for the `beatty-games` engine.

pub mod play;

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use beatty_games::classifier::{classify_alpha, enumerate_families, inverse_solve};
use beatty_games::export::{
    classification_to_json, families_to_csv, rules_from_json, rules_to_json, table_to_csv, table_to_json,
};
use beatty_games::games::{ConstraintSpec, GameError, GameFamily, RuleSet};
use beatty_games::quadfield::{BeattyPair, QuadraticNumber};
use beatty_games::solver::{
    beatty_table, compare_tables, recurrence_closed, retrograde_oracle, solve_rules, PTable, SolverError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};

/// Largest board the oracle will build unless overridden.
pub const DEFAULT_MAX_BOUND: u64 = 4096;
pub const MAX_BOUND_ENV: &str = "BEATTY_GAMES_MAX_BOUND";

#[derive(Parser, Debug)]
#[command(name = "beatty-games", version, about = "Two-pile subtraction games with Beatty P-positions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate P-positions with the recurrence for the chosen game.
    Gen {
        #[command(flatten)]
        rules: RulesArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// `game` follows the rules (double mex or relaxed); `closed` ignores them.
        #[arg(long, value_enum, default_value_t = Recurrence::Game)]
        recurrence: Recurrence,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve a bounded board by backward induction.
    Oracle {
        #[command(flatten)]
        rules: RulesArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the closed recurrence against the oracle; exit 1 on divergence.
    Verify {
        #[command(flatten)]
        rules: RulesArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        #[arg(long, value_enum, default_value_t = Recurrence::Closed)]
        recurrence: Recurrence,
    },
    /// Classify alpha into its compatibility family.
    Classify {
        #[arg(long, value_parser = parse_alpha)]
        alpha: QuadraticNumber,
        #[arg(long)]
        json: bool,
    },
    /// Build the game whose P-positions are the Beatty pairs of alpha.
    Inverse {
        #[arg(long, value_parser = parse_alpha)]
        alpha: QuadraticNumber,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Also write the rule set as JSON.
        #[arg(long)]
        rules_out: Option<PathBuf>,
    },
    /// Enumerate compatible alpha by family parameters.
    Families {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        p_max: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        q_max: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        t_max: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Play against the engine in the terminal.
    Play {
        #[command(flatten)]
        rules: RulesArgs,
        /// Use the inverse-problem game for this alpha instead of explicit rules.
        #[arg(long, value_parser = parse_alpha, conflicts_with_all = ["constant", "beatty", "target_beatty", "parity_half", "rules"])]
        alpha: Option<QuadraticNumber>,
        /// Starting piles as `A,B`; random under `--bound` when omitted.
        #[arg(long, value_parser = parse_piles)]
        start: Option<(u64, u64)>,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        engine_first: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RulesArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Modified)]
    pub family: FamilyArg,
    /// Constant constraint `f = t`.
    #[arg(long, group = "constraint")]
    pub constant: Option<i64>,
    /// Second-difference constraint of alpha, e.g. "(5+1*sqrt(5))/5".
    #[arg(long, group = "constraint", value_parser = parse_alpha)]
    pub beatty: Option<QuadraticNumber>,
    #[arg(long, group = "constraint", value_parser = parse_alpha)]
    pub target_beatty: Option<QuadraticNumber>,
    #[arg(long, group = "constraint")]
    pub parity_half: bool,
    /// Rule set JSON file; its family overrides `--family`.
    #[arg(long, group = "constraint")]
    pub rules: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    Modified,
    Relaxed,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    Game,
    Closed,
}

fn parse_alpha(s: &str) -> Result<QuadraticNumber, String> {
    let a: QuadraticNumber = s.parse().map_err(|e: beatty_games::quadfield::QuadError| e.to_string())?;
    BeattyPair::from_alpha(a).map_err(|e| e.to_string())?;
    Ok(a)
}

fn parse_piles(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

/// An error with the process exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self { code: 2, error: error.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = if error.chain().any(is_hypothesis_error) { 3 } else { 2 };
        Self { code, error }
    }
}

fn is_hypothesis_error(e: &(dyn std::error::Error + 'static)) -> bool {
    matches!(e.downcast_ref::<SolverError>(), Some(SolverError::Hypothesis(_)))
        || matches!(e.downcast_ref::<GameError>(), Some(GameError::RelaxedNeedsOriginConstraint(_)))
}

impl RulesArgs {
    pub fn build(&self) -> anyhow::Result<RuleSet> {
        if let Some(path) = &self.rules {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(rules_from_json(&text)?);
        }
        let spec = if let Some(t) = self.constant {
            ConstraintSpec::constant(t)?
        } else if let Some(a) = self.beatty {
            ConstraintSpec::beatty(a)?
        } else if let Some(a) = self.target_beatty {
            ConstraintSpec::target_beatty(a)?
        } else if self.parity_half {
            ConstraintSpec::ParityHalf
        } else {
            return Err(anyhow!("choose a constraint: --constant, --beatty, --target-beatty, --parity-half or --rules"));
        };
        let family = match self.family {
            FamilyArg::Modified => GameFamily::ModifiedTwoPile,
            FamilyArg::Relaxed => GameFamily::RelaxedWythoff,
        };
        Ok(RuleSet::new(family, spec)?)
    }
}

fn max_bound() -> Result<u64, Failure> {
    match std::env::var(MAX_BOUND_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::input(anyhow!("{MAX_BOUND_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_BOUND),
    }
}

fn check_bound(bound: u64) -> Result<(), Failure> {
    let cap = max_bound()?;
    if bound > cap {
        return Err(Failure::input(anyhow!("bound {bound} exceeds the board cap {cap} (set {MAX_BOUND_ENV} to raise it)")));
    }
    Ok(())
}

fn beatty_of(rules: &RuleSet) -> Option<BeattyPair> {
    match rules.constraint() {
        ConstraintSpec::BeattyDelta(p) | ConstraintSpec::TargetBeatty(p) => Some(*p),
        _ => None,
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn render(table: &PTable, pair: Option<&BeattyPair>, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Csv => table_to_csv(table, pair)?,
        Format::Json => table_to_json(table, pair)? + "\n",
    })
}

fn generate(rules: &RuleSet, count: usize, recurrence: Recurrence) -> anyhow::Result<PTable> {
    Ok(match recurrence {
        Recurrence::Game => solve_rules(rules, count)?,
        Recurrence::Closed => recurrence_closed(rules.constraint(), count)?,
    })
}

/// Runs one command; the returned value is the process exit status.
pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<u8, Failure> {
    match cli.command {
        Command::Gen { rules, count, recurrence, out: o } => {
            let rules = rules.build()?;
            let table = generate(&rules, count as usize, recurrence)?;
            emit(out, o.output.as_deref(), &render(&table, beatty_of(&rules).as_ref(), o.format)?)?;
            Ok(0)
        }
        Command::Oracle { rules, bound, out: o } => {
            check_bound(bound)?;
            let rules = rules.build()?;
            let table = retrograde_oracle(&rules, bound).map_err(anyhow::Error::from)?.to_table();
            emit(out, o.output.as_deref(), &render(&table, None, o.format)?)?;
            Ok(0)
        }
        Command::Verify { rules, count, bound, recurrence } => {
            check_bound(bound)?;
            let rules = rules.build()?;
            let rec = generate(&rules, count as usize, recurrence)?.restrict(bound);
            let oracle = retrograde_oracle(&rules, bound).map_err(anyhow::Error::from)?.to_table();
            match compare_tables(&rec, &oracle) {
                Some(n) => {
                    let (r, o) = (rec.pairs()[n], oracle.pairs()[n]);
                    writeln!(out, "divergence at n={n}: recurrence ({}, {}) vs oracle ({}, {})", r.0, r.1, o.0, o.1)
                        .map_err(anyhow::Error::from)?;
                    Ok(1)
                }
                None => {
                    let common = rec.len().min(oracle.len());
                    writeln!(out, "agree on {common} pairs with both piles <= {bound}").map_err(anyhow::Error::from)?;
                    Ok(0)
                }
            }
        }
        Command::Classify { alpha, json } => {
            let c = classify_alpha(alpha).map_err(anyhow::Error::from)?;
            let text = if json {
                classification_to_json(&c) + "\n"
            } else {
                let range: Vec<String> = c.delta2_range.iter().map(u64::to_string).collect();
                let mut s = format!("{}\n", c.family);
                for other in &c.also_matches {
                    s.push_str(&format!("also: {other}\n"));
                }
                s.push_str(&format!("beta = {}, [beta] = {}\n", c.beta, c.beta_floor));
                s.push_str(&format!("delta2 values: {{{}}}\n", range.join(", ")));
                s.push_str(&format!("compatible: {}\n", if c.is_compatible() { "yes" } else { "no" }));
                s
            };
            emit(out, None, &text)?;
            Ok(0)
        }
        Command::Inverse { alpha, count, rules_out } => {
            let (rules, _) = inverse_solve(alpha).map_err(anyhow::Error::from)?;
            let pair = BeattyPair::from_alpha(alpha).map_err(anyhow::Error::from)?;
            let table = solve_rules(&rules, count as usize).map_err(anyhow::Error::from)?;
            let beatty = beatty_table(&pair, count as usize);
            let json = rules_to_json(&rules);
            if let Some(p) = &rules_out {
                emit(out, Some(p), &(json.clone() + "\n"))?;
            }
            let mut s = format!("{json}\n n  a_n  b_n  floor_n_alpha  floor_n_beta\n");
            for (n, (&(a, b), &(fa, fb))) in table.pairs().iter().zip(beatty.pairs()).enumerate() {
                s.push_str(&format!("{n:>2} {a:>4} {b:>4} {fa:>14} {fb:>13}\n"));
            }
            let agree = compare_tables(&table, &beatty).is_none();
            s.push_str(&format!("matches Beatty pairs: {}\n", if agree { "yes" } else { "no" }));
            emit(out, None, &s)?;
            Ok(if agree { 0 } else { 1 })
        }
        Command::Families { p_max, q_max, t_max, output } => {
            let members = enumerate_families(p_max, q_max, t_max).map_err(anyhow::Error::from)?;
            emit(out, output.as_deref(), &families_to_csv(&members).map_err(anyhow::Error::from)?)?;
            Ok(0)
        }
        Command::Play { rules, alpha, start, bound, seed, engine_first } => {
            let rules = match alpha {
                Some(a) => inverse_solve(a).map_err(anyhow::Error::from)?.0,
                None => rules.build()?,
            };
            let start = match start {
                Some(s) => s,
                None => {
                    let mut rng = match seed {
                        Some(s) => rand::rngs::StdRng::seed_from_u64(s),
                        None => rand::rngs::StdRng::from_entropy(),
                    };
                    (rng.gen_range(0..=bound), rng.gen_range(1..=bound))
                }
            };
            check_bound(start.0.max(start.1))?;
            let mut writer = out;
            play::play_session(&rules, start, engine_first, input, &mut writer)?;
            Ok(0)
        }
    }
}
