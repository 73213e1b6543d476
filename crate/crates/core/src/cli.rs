//! Command-line front end.
//!
//! [`run`] parses arguments, does the work and hands back the exit code with
//! everything that should be printed, so the binary stays a thin wrapper and
//! tests can drive the CLI in-process. Output depends only on the arguments
//! and the seed.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 bad usage, 3 internal invariant
//! breach (for example a non-integral multiplicity).

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{identity_defects, ComplexRational, Surd};
use crate::greenberg_fock::{self, act_on_state, basis_state, FockWord};
use crate::involutions::{
    act, enumerate_x, enumerate_xm, involution_count, Involution, Permutation,
};
use crate::json_int;
use crate::level_table::{
    closed_form_table, cross_validate, level_table_recipe, table_diff, LevelMismatch, LevelTable,
    Source,
};
use crate::monomial_space::{
    self, act_on_monomial, inner_product, normalized_basis, Monomial, MonomialCombination,
};
use crate::partitions::{dimension_sum, CharacterTable, CharacterTableCache, DEFAULT_MAX_N};
use crate::representation::{
    decompose, decompose_all, homomorphism_failures, rep_character, verify_model,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable naming the character-table cache directory.
pub const CACHE_ENV: &str = "SCHWINGER_CACHE_DIR";

const DEFAULT_BASIS_LIMIT: usize = 1000;
const HOMOMORPHISM_SAMPLES: usize = 200;
const REDUCTION_SAMPLES: usize = 1000;
const UNITARITY_SAMPLES: usize = 20;
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "schwinger",
    version,
    about = "Involution model of the symmetric group S_n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Character-table cache directory; overrides $SCHWINGER_CACHE_DIR
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Compute character tables in memory and leave the cache alone
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Seed for the randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest n accepted
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N, value_parser = parse_max_n)]
    pub max_n: usize,
}

fn parse_max_n(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=DEFAULT_MAX_N).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must lie in 1..={DEFAULT_MAX_N}"))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List X or X_m with per-level counts
    Involutions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Irreducible content of span(X_m), one level or all
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Character table of S_n, or the character of span(X_m) with --m
    Character {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Every check at once
    Verify {
        #[arg(long)]
        n: usize,
        /// Skip carrier-space checks whose basis is larger than this
        #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
        basis_limit: usize,
    },
    /// Level table from the recipe next to the closed form
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_m: Option<usize>,
    },
    /// Gram matrix, equivariance and unitarity of the monomial basis
    MonomialCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
        basis_limit: usize,
    },
    /// Gram matrix, equivariance and word reduction of the Fock basis
    FockCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
        basis_limit: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Flag, then environment, then a per-user default.
pub fn resolve_cache_dir(flag: Option<&Path>, env: Option<OsString>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    if let Some(dir) = env.filter(|v| !v.is_empty()) {
        return PathBuf::from(dir);
    }
    default_cache_dir()
}

fn default_cache_dir() -> PathBuf {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
    match base {
        Some(dir) => dir.join("schwinger"),
        None => std::env::temp_dir().join("schwinger"),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegreeOutOfRange { .. }
        | Error::LevelOutOfRange { .. }
        | Error::InvalidPartition { .. }
        | Error::Parse { .. }
        | Error::BasisTooLarge { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Context<'a> {
    cli: &'a Cli,
}

impl Context<'_> {
    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.cli.max_n {
            return Err(Error::DegreeOutOfRange {
                n,
                max: self.cli.max_n,
            });
        }
        Ok(())
    }

    fn check_m(&self, n: usize, m: usize) -> Result<()> {
        if m > n / 2 {
            return Err(Error::LevelOutOfRange { n, m, max: n / 2 });
        }
        Ok(())
    }

    fn character_table(&self, n: usize) -> Result<CharacterTable> {
        if self.cli.no_cache {
            return CharacterTable::compute_capped(n, self.cli.max_n);
        }
        let dir = resolve_cache_dir(self.cli.cache_dir.as_deref(), std::env::var_os(CACHE_ENV));
        CharacterTableCache::new(dir)
            .with_max_n(self.cli.max_n)
            .load_or_compute(n)
    }

    fn emit<T: Serialize + fmt::Display>(&self, value: &T) -> Result<String> {
        match self.cli.format {
            Format::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
            Format::Text => Ok(format!("{value}\n")),
        }
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let ctx = Context { cli };
    match cli.command {
        Command::Involutions { n, m } => {
            ctx.check_n(n)?;
            if let Some(m) = m {
                ctx.check_m(n, m)?;
            }
            let listing = involution_listing(n, m)?;
            let code = if listing.identity_holds {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            };
            Ok((code, ctx.emit(&listing)?))
        }
        Command::Decompose { n, m } => {
            ctx.check_n(n)?;
            let table = ctx.character_table(n)?;
            match m {
                Some(m) => {
                    ctx.check_m(n, m)?;
                    Ok((EXIT_OK, ctx.emit(&decompose(&table, m)?)?))
                }
                None => {
                    let reports = Reports(decompose_all(&table)?);
                    Ok((EXIT_OK, ctx.emit(&reports)?))
                }
            }
        }
        Command::Character { n, m } => {
            ctx.check_n(n)?;
            match m {
                Some(m) => {
                    ctx.check_m(n, m)?;
                    let chi = rep_character(n, m)?;
                    let out = match cli.format {
                        Format::Json => serde_json::to_string_pretty(&chi)? + "\n",
                        Format::Text => {
                            let mut s = format!("character of span(X_{m}) for n={n}\n");
                            for (class, value) in &chi.values {
                                writeln!(s, "  {:<16} {value}", class.to_string()).unwrap();
                            }
                            s
                        }
                    };
                    Ok((EXIT_OK, out))
                }
                None => {
                    let table = ctx.character_table(n)?;
                    let out = match cli.format {
                        Format::Json => serde_json::to_string_pretty(&table)? + "\n",
                        Format::Text => render_character_table(&table),
                    };
                    Ok((EXIT_OK, out))
                }
            }
        }
        Command::Table { n, max_m } => {
            ctx.check_n(n)?;
            let max_m = max_m.unwrap_or(n / 2);
            ctx.check_m(n, max_m)?;
            let comparison = table_comparison(n, max_m)?;
            let code = if comparison.diff.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok((code, ctx.emit(&comparison)?))
        }
        Command::Verify { n, basis_limit } => {
            ctx.check_n(n)?;
            let table = ctx.character_table(n)?;
            let checks = vec![
                check_model(&table)?,
                check_level_content(&table)?,
                check_homomorphism(n, cli.seed)?,
                check_monomial_gram(n, basis_limit)?,
                check_fock_gram(n, basis_limit)?,
                check_equivariance(n, basis_limit, true, true)?,
            ];
            report(&ctx, "verify", n, checks)
        }
        Command::MonomialCheck { n, basis_limit } => {
            ctx.check_n(n)?;
            let checks = vec![
                check_monomial_gram(n, basis_limit)?,
                check_equivariance(n, basis_limit, true, false)?,
                check_unitarity(n, cli.seed)?,
            ];
            report(&ctx, "monomial-check", n, checks)
        }
        Command::FockCheck { n, basis_limit } => {
            ctx.check_n(n)?;
            let checks = vec![
                check_fock_gram(n, basis_limit)?,
                check_equivariance(n, basis_limit, false, true)?,
                check_reduction(n, cli.seed),
            ];
            report(&ctx, "fock-check", n, checks)
        }
    }
}

fn report(ctx: &Context<'_>, command: &str, n: usize, checks: Vec<Check>) -> Result<(i32, String)> {
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    let report = CheckReport {
        command: command.to_string(),
        n,
        seed: ctx.cli.seed,
        checks,
        passed,
    };
    let code = if passed { EXIT_OK } else { EXIT_FAILED };
    Ok((code, ctx.emit(&report)?))
}

struct Reports(Vec<crate::representation::DecompositionReport>);

impl Serialize for Reports {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl fmt::Display for Reports {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

fn render_character_table(table: &CharacterTable) -> String {
    let head = "irrep \\ class".to_string();
    let classes: Vec<String> = table.classes.iter().map(|c| c.to_string()).collect();
    let rows: Vec<(String, Vec<String>)> = table
        .irreps
        .iter()
        .zip(&table.table)
        .map(|(l, row)| (l.to_string(), row.iter().map(BigInt::to_string).collect()))
        .collect();
    let label = rows
        .iter()
        .map(|(l, _)| l.len())
        .chain([head.len()])
        .max()
        .unwrap_or(0);
    let widths: Vec<usize> = (0..classes.len())
        .map(|j| {
            rows.iter()
                .map(|(_, r)| r[j].len())
                .chain([classes[j].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = format!("{head:<label$}");
    for (c, w) in classes.iter().zip(&widths) {
        write!(out, "  {c:>w$}").unwrap();
    }
    out.push('\n');
    for (l, row) in &rows {
        write!(out, "{l:<label$}").unwrap();
        for (v, w) in row.iter().zip(&widths) {
            write!(out, "  {v:>w$}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// `involutions` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionListing {
    pub n: usize,
    pub levels: Vec<InvolutionLevel>,
    #[serde(with = "json_int::biguint")]
    pub total: BigUint,
    #[serde(with = "json_int::biguint")]
    pub dimension_sum: BigUint,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionLevel {
    pub m: usize,
    pub count: usize,
    pub elements: Vec<String>,
}

pub fn involution_listing(n: usize, m: Option<usize>) -> Result<InvolutionListing> {
    let levels = match m {
        Some(m) => vec![(m, enumerate_xm(n, m)?)],
        None => {
            let all = enumerate_x(n)?;
            (0..=n / 2)
                .map(|m| (m, all.iter().filter(|x| x.level() == m).cloned().collect()))
                .collect()
        }
    };
    let levels = levels
        .into_iter()
        .map(|(m, xs): (usize, Vec<Involution>)| InvolutionLevel {
            m,
            count: xs.len(),
            elements: xs.iter().map(Involution::to_string).collect(),
        })
        .collect();
    let total = involution_count(n);
    let dimension_sum = dimension_sum(n)?;
    Ok(InvolutionListing {
        n,
        levels,
        identity_holds: total == dimension_sum,
        total,
        dimension_sum,
    })
}

impl fmt::Display for InvolutionListing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for level in &self.levels {
            writeln!(f, "X_{} ({} elements)", level.m, level.count)?;
            for x in &level.elements {
                writeln!(f, "  {x}")?;
            }
        }
        let verdict = if self.identity_holds {
            "holds"
        } else {
            "FAILS"
        };
        write!(
            f,
            "|X| = {}, sum of irreducible dimensions = {} ({verdict})",
            self.total, self.dimension_sum
        )
    }
}

/// `table` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComparison {
    pub n: usize,
    pub max_m: usize,
    pub recipe: LevelTable,
    pub closed_form: LevelTable,
    pub diff: Vec<LevelMismatch>,
}

pub fn table_comparison(n: usize, max_m: usize) -> Result<TableComparison> {
    let recipe = level_table_recipe(n, max_m)?;
    let closed_form = closed_form_table(n, max_m)?;
    let diff = table_diff(&closed_form, &recipe, Source::Recipe);
    Ok(TableComparison {
        n,
        max_m,
        recipe,
        closed_form,
        diff,
    })
}

impl fmt::Display for TableComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left: Vec<String> = self.recipe.render().lines().map(str::to_string).collect();
        let right: Vec<String> = self
            .closed_form
            .render()
            .lines()
            .map(str::to_string)
            .collect();
        let width = left
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("recipe".len());
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "{:<width$}  |  closed form", "recipe")?;
        for i in 0..left.len().max(right.len()) {
            let l = left.get(i).map_or("", String::as_str);
            let r = right.get(i).map_or("", String::as_str);
            writeln!(f, "{}", format!("{l:<width$}  |  {r}").trim_end())?;
        }
        if self.diff.is_empty() {
            write!(f, "diff: none")
        } else {
            write!(f, "diff:")?;
            for d in &self.diff {
                write!(f, "\n  {d}")?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<String>,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, pass_detail: String, fail_detail: String) -> Check {
        let failed = !failures.is_empty();
        Check {
            name: name.to_string(),
            status: if failed { Status::Fail } else { Status::Pass },
            detail: if failed { fail_detail } else { pass_detail },
            counterexamples: failures.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
        }
    }

    fn skip(name: &str, detail: String) -> Check {
        Check {
            name: name.to_string(),
            status: Status::Skip,
            detail,
            counterexamples: Vec::new(),
        }
    }
}

/// Output of `verify`, `monomial-check` and `fock-check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub command: String,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} n={} seed={}", self.command, self.n, self.seed)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(f, "  {:<width$}  {}  {}", c.name, c.status, c.detail)?;
            for x in &c.counterexamples {
                writeln!(f, "  {:<width$}        {x}", "")?;
            }
        }
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn basis_too_large(n: usize, limit: usize) -> Option<String> {
    let size = involution_count(n);
    (size > BigUint::from(limit))
        .then(|| format!("basis of size {size} exceeds --basis-limit {limit}"))
}

pub fn check_model(table: &CharacterTable) -> Result<Check> {
    let r = verify_model(table)?;
    let mut failures: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
    if r.basis_size != r.dimension_sum {
        failures.push(format!(
            "|X| = {} but sum of dimensions = {}",
            r.basis_size, r.dimension_sum
        ));
    }
    Ok(Check::new(
        "model",
        failures,
        format!(
            "|X| = {}; each of {} irreducibles occurs exactly once",
            r.basis_size,
            table.irreps.len()
        ),
        "some irreducible is missing, repeated or shared between levels".to_string(),
    ))
}

pub fn check_level_content(table: &CharacterTable) -> Result<Check> {
    let r = cross_validate(table)?;
    Ok(Check::new(
        "level-content",
        r.mismatches.iter().map(|m| m.to_string()).collect(),
        format!(
            "closed form, recipe and decomposition agree on levels 0..={}",
            r.max_m
        ),
        "level contents disagree".to_string(),
    ))
}

pub fn check_homomorphism(n: usize, seed: u64) -> Result<Check> {
    let mut failures = Vec::new();
    for m in 0..=n / 2 {
        for (pi, sigma) in
            homomorphism_failures(n, m, HOMOMORPHISM_SAMPLES, seed.wrapping_add(m as u64))?
        {
            failures.push(format!("m={m} pi={pi} sigma={sigma}"));
        }
    }
    Ok(Check::new(
        "homomorphism",
        failures,
        format!(
            "rep(pi sigma) = rep(pi) rep(sigma) on {HOMOMORPHISM_SAMPLES} random pairs per level"
        ),
        "representation matrices do not multiply".to_string(),
    ))
}

fn gram_failures(gram: &[Vec<Surd>], labels: &[String]) -> Vec<String> {
    identity_defects(gram)
        .into_iter()
        .map(|(i, j)| match gram[i].get(j) {
            Some(v) => format!("<{}, {}> = {v}", labels[i], labels[j]),
            None => format!("row {i} has length {j}"),
        })
        .collect()
}

pub fn check_monomial_gram(n: usize, limit: usize) -> Result<Check> {
    if let Some(why) = basis_too_large(n, limit) {
        return Ok(Check::skip("monomial-gram", why));
    }
    let basis = normalized_basis(n)?;
    let labels: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    let gram = monomial_space::gram_matrix(&basis)?;
    Ok(Check::new(
        "monomial-gram",
        gram_failures(&gram, &labels),
        format!("{0}x{0} Gram matrix is the identity", basis.len()),
        "Gram matrix differs from the identity".to_string(),
    ))
}

pub fn check_fock_gram(n: usize, limit: usize) -> Result<Check> {
    if let Some(why) = basis_too_large(n, limit) {
        return Ok(Check::skip("fock-gram", why));
    }
    let xs = enumerate_x(n)?;
    let labels: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    let states: Vec<_> = xs.iter().map(basis_state).collect();
    let gram = greenberg_fock::gram_matrix(&states)?;
    Ok(Check::new(
        "fock-gram",
        gram_failures(&gram, &labels),
        format!("{0}x{0} Gram matrix is the identity", states.len()),
        "Gram matrix differs from the identity".to_string(),
    ))
}

/// Compares the signed action of each adjacent transposition on involutions
/// with the action on monomials and/or Fock states.
pub fn check_equivariance(n: usize, limit: usize, monomials: bool, fock: bool) -> Result<Check> {
    let name = match (monomials, fock) {
        (true, true) => "equivariance",
        (true, false) => "monomial-equivariance",
        _ => "fock-equivariance",
    };
    if let Some(why) = basis_too_large(n, limit) {
        return Ok(Check::skip(name, why));
    }
    let xs = enumerate_x(n)?;
    let generators = Permutation::adjacent_transpositions(n);
    let mut failures = Vec::new();
    for x in &xs {
        let state = fock.then(|| basis_state(x));
        for g in &generators {
            let image = act(g, x)?;
            if monomials {
                let (mono, sign) = act_on_monomial(g, &Monomial::from(x))?;
                if mono != Monomial::from(&image.element) || sign != image.sign {
                    failures.push(format!(
                        "{g} on {x}: monomial gives {sign}{mono}, involution gives {}{}",
                        image.sign, image.element
                    ));
                }
            }
            if let Some(state) = &state {
                let moved = act_on_state(g, &state.state)?;
                let expected = basis_state(&image.element)
                    .state
                    .scaled(&image.sign.to_rational());
                if moved != expected {
                    failures.push(format!(
                        "{g} on {x}: Fock state is not {}{}",
                        image.sign, image.element
                    ));
                }
            }
        }
    }
    Ok(Check::new(
        name,
        failures,
        format!(
            "{} generators on {} basis elements, signs included",
            generators.len(),
            xs.len()
        ),
        "actions disagree".to_string(),
    ))
}

fn random_combination(
    n: usize,
    basis: &[Monomial],
    rng: &mut ChaCha8Rng,
) -> Result<MonomialCombination> {
    let mut f = MonomialCombination::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let re = BigRational::new(
            rng.gen_range(-5i64..=5).into(),
            rng.gen_range(1i64..=4).into(),
        );
        let im = BigRational::new(
            rng.gen_range(-5i64..=5).into(),
            rng.gen_range(1i64..=4).into(),
        );
        f.add_term(m, ComplexRational::new(re, im))?;
    }
    Ok(f)
}

/// `⟨πf, πg⟩ = ⟨f, g⟩` for seeded random complex combinations.
pub fn check_unitarity(n: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis: Vec<Monomial> = enumerate_x(n)?.iter().map(Monomial::from).collect();
    let mut failures = Vec::new();
    for _ in 0..UNITARITY_SAMPLES {
        let f = random_combination(n, &basis, &mut rng)?;
        let g = random_combination(n, &basis, &mut rng)?;
        let pi = Permutation::random(n, &mut rng);
        let before = inner_product(&f, &g)?;
        let after = inner_product(&f.act(&pi)?, &g.act(&pi)?)?;
        if before != after {
            failures.push(format!("pi={pi} f={f} g={g}: {before} became {after}"));
        }
    }
    Ok(Check::new(
        "unitarity",
        failures,
        format!("{UNITARITY_SAMPLES} random pairs keep their inner product"),
        "the action does not preserve the inner product".to_string(),
    ))
}

/// Word products by operator reduction against direct comparison.
pub fn check_reduction(n: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |rng: &mut ChaCha8Rng| {
        FockWord(
            (0..rng.gen_range(0..=4))
                .map(|_| rng.gen_range(1..=n))
                .collect(),
        )
    };
    let mut failures = Vec::new();
    for _ in 0..REDUCTION_SAMPLES {
        let w1 = word(&mut rng);
        let w2 = if rng.gen_bool(0.3) {
            w1.clone()
        } else {
            word(&mut rng)
        };
        let slow = greenberg_fock::word_inner_product_by_reduction(&w1, &w2);
        let fast = greenberg_fock::word_inner_product(&w1, &w2);
        if slow != fast {
            failures.push(format!("<{w1}|{w2}>: reduction {slow}, comparison {fast}"));
        }
    }
    Check::new(
        "word-reduction",
        failures,
        format!("{REDUCTION_SAMPLES} random word pairs agree"),
        "reduction and sequence comparison disagree".to_string(),
    )
}
