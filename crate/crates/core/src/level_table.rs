//! Which irreducibles occur at which level.
//!
//! Level `m` carries exactly the `λ ⊢ n` whose conjugate has `n − 2m` odd
//! parts. Alongside that closed form there is a column-by-column recipe that
//! builds the same table from the previous level. The recipe works on
//! symbolic entries `(n−k, tail)` with `tail ⊢ k`, so one run serves every
//! `n`; a concrete table keeps the entries that are genuine partitions of `n`.
//!
//! Writing `λ = (n−k, tail)`, the conjugate of `λ` has `n − k − o` odd parts,
//! where `o` counts the odd parts of `conj(tail)`. The level of an entry is
//! therefore `(k + o) / 2` whatever `n` is, and the recipe can be checked
//! against the closed form once and for all at the symbolic level.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_partitions, exponent_list, partitions_unchecked, CharacterTable, Partition,
};
use crate::representation::decompose;

/// Level of `λ`, i.e. `(n − odd_part_count(conj λ)) / 2`.
pub fn level_of(lambda: &Partition) -> usize {
    (lambda.size() - lambda.conjugate().odd_part_count()) / 2
}

fn check_level(n: usize, m: usize) -> Result<()> {
    if m > n / 2 {
        return Err(Error::LevelOutOfRange { n, m, max: n / 2 });
    }
    Ok(())
}

/// `{ λ ⊢ n : conj(λ) has n − 2m odd parts }`.
pub fn level_content_closed_form(n: usize, m: usize) -> Result<BTreeSet<Partition>> {
    check_level(n, m)?;
    Ok(enumerate_partitions(n)?
        .into_iter()
        .filter(|p| p.conjugate().odd_part_count() + 2 * m == n)
        .collect())
}

/// `(n − offset, tail...)` with `tail ⊢ offset`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SymbolicEntry {
    offset: usize,
    tail: Partition,
}

impl SymbolicEntry {
    pub fn new(offset: usize, tail: Partition) -> Result<Self> {
        if tail.size() != offset {
            return Err(Error::InvalidPartition {
                parts: tail.parts().to_vec(),
                reason: "tail must be a partition of the offset",
            });
        }
        Ok(SymbolicEntry { offset, tail })
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn tail(&self) -> &Partition {
        &self.tail
    }

    /// Smallest `n` at which `(n − offset, tail)` is a partition.
    pub fn min_degree(&self) -> usize {
        self.offset + self.tail.first()
    }

    pub fn instantiate(&self, n: usize) -> Option<Partition> {
        if n < self.min_degree() || n == self.offset {
            return None;
        }
        let mut parts = vec![n - self.offset];
        parts.extend_from_slice(self.tail.parts());
        Partition::new(parts).ok()
    }

    /// The inverse of [`SymbolicEntry::instantiate`].
    pub fn from_partition(lambda: &Partition) -> Self {
        let tail = Partition::new(lambda.parts().iter().skip(1).copied().collect())
            .expect("suffix of a partition");
        SymbolicEntry {
            offset: tail.size(),
            tail,
        }
    }

    /// The closed-form level, valid at every `n ≥ min_degree()`.
    pub fn level(&self) -> usize {
        (self.offset + self.tail.conjugate().odd_part_count()) / 2
    }
}

impl fmt::Display for SymbolicEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            return f.write_str("(n)");
        }
        write!(
            f,
            "(n-{},{})",
            self.offset,
            exponent_list(&self.tail.multiplicities())
        )
    }
}

/// Parses `(n)`, `(n-4,2^2)` or `(n-5,2,1^3)`.
impl FromStr for SymbolicEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let mut tokens = body.split(',').map(str::trim);
        let head = tokens.next().unwrap_or_default();
        let offset = match head {
            "n" => 0,
            _ => head
                .strip_prefix("n-")
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| bad("first part must be n or n-k"))?,
        };
        let mut parts = Vec::new();
        for token in tokens {
            let (part, count) = match token.split_once('^') {
                Some((p, c)) => (p, c),
                None => (token, "1"),
            };
            let part = part.parse::<usize>().map_err(|_| bad("expected a part"))?;
            let count = count
                .parse::<usize>()
                .map_err(|_| bad("expected an exponent"))?;
            parts.extend(std::iter::repeat_n(part, count));
        }
        SymbolicEntry::new(offset, Partition::new(parts)?)
    }
}

/// One level of the symbolic recipe; column `c` holds entries with offset
/// `m + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicLevel {
    pub m: usize,
    pub columns: Vec<Vec<SymbolicEntry>>,
}

impl SymbolicLevel {
    pub fn entries(&self) -> impl Iterator<Item = &SymbolicEntry> {
        self.columns.iter().flatten()
    }
}

/// Tails obtained by adding one box to `tail` in every way that stays a
/// partition, a new part of size 1 included.
fn add_box(tail: &Partition) -> Vec<Partition> {
    let parts = tail.parts();
    let mut out: Vec<Partition> = (0..parts.len())
        .filter(|&i| i == 0 || parts[i - 1] > parts[i])
        .map(|i| {
            let mut p = parts.to_vec();
            p[i] += 1;
            Partition::new(p).expect("box added at a corner")
        })
        .collect();
    let mut grown = parts.to_vec();
    grown.push(1);
    out.push(Partition::new(grown).expect("new last part"));
    out
}

/// Partitions of `2m` in which every part occurs an even number of times.
fn even_multiplicity_tails(m: usize) -> Vec<Partition> {
    partitions_unchecked(m)
        .into_iter()
        .map(|p| Partition::new(p.parts().iter().flat_map(|&x| [x, x]).collect()).unwrap())
        .collect()
}

/// Levels `0..=max_m` built by the column recipe:
/// - the first column of level `m` is `(n−m, m)`;
/// - the last column is `(n−2m)` followed by a partition of `2m` whose
///   parts all have even multiplicity;
/// - column `c` in between comes from column `c` of level `m−1` by taking
///   one from the first part and adding a box to the tail in every way.
///
/// Every column keeps only candidates not produced earlier in the same
/// level or at any earlier level.
pub fn symbolic_recipe(max_m: usize) -> Vec<SymbolicLevel> {
    let mut seen: HashSet<SymbolicEntry> = HashSet::new();
    let mut levels: Vec<SymbolicLevel> = Vec::new();
    for m in 0..=max_m {
        let mut columns = Vec::with_capacity(m + 1);
        for c in 0..=m {
            let candidates: Vec<SymbolicEntry> = if c == 0 {
                let tail = if m == 0 {
                    Partition::empty()
                } else {
                    Partition::row(m)
                };
                vec![SymbolicEntry { offset: m, tail }]
            } else if c == m {
                even_multiplicity_tails(m)
                    .into_iter()
                    .map(|tail| SymbolicEntry {
                        offset: 2 * m,
                        tail,
                    })
                    .collect()
            } else {
                levels[m - 1].columns[c]
                    .iter()
                    .flat_map(|e| add_box(&e.tail))
                    .map(|tail| SymbolicEntry {
                        offset: m + c,
                        tail,
                    })
                    .collect()
            };
            let column: Vec<SymbolicEntry> = candidates
                .into_iter()
                .filter(|e| seen.insert(e.clone()))
                .collect();
            columns.push(column);
        }
        levels.push(SymbolicLevel { m, columns });
    }
    levels
}

/// Entries of the symbolic recipe whose closed-form level disagrees with
/// the level that produced them, plus closed-form entries it never produced.
pub fn symbolic_recipe_defects(max_m: usize) -> Vec<LevelMismatch> {
    let recipe = symbolic_recipe(max_m);
    let mut out = Vec::new();
    for level in &recipe {
        let m = level.m;
        let produced: BTreeSet<SymbolicEntry> = level.entries().cloned().collect();
        let expected: BTreeSet<SymbolicEntry> = (m..=2 * m)
            .flat_map(|k| {
                partitions_unchecked(k)
                    .into_iter()
                    .map(move |tail| SymbolicEntry { offset: k, tail })
            })
            .filter(|e| e.level() == m)
            .collect();
        let missing: Vec<String> = expected
            .difference(&produced)
            .map(|e| e.to_string())
            .collect();
        let extra: Vec<String> = produced
            .difference(&expected)
            .map(|e| e.to_string())
            .collect();
        if !missing.is_empty() || !extra.is_empty() {
            out.push(LevelMismatch {
                m,
                source: Source::Recipe,
                missing,
                extra,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub m: usize,
    pub partitions: BTreeSet<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTable {
    pub n: usize,
    pub levels: Vec<LevelRow>,
}

impl LevelTable {
    pub fn level(&self, m: usize) -> Option<&BTreeSet<Partition>> {
        self.levels.iter().find(|r| r.m == m).map(|r| &r.partitions)
    }

    /// Symbolic rendering with one column per first part, e.g.
    ///
    /// ```text
    /// Level 2  (n-2,2)  (n-3,2,1)  (n-4,2^2)
    ///                   (n-3,1^3)  (n-4,1^4)
    /// ```
    pub fn render(&self) -> String {
        let n = self.n;
        let grid: Vec<(usize, Vec<Vec<String>>)> = self
            .levels
            .iter()
            .map(|row| {
                let mut columns: BTreeMap<usize, Vec<String>> = BTreeMap::new();
                for p in &row.partitions {
                    columns
                        .entry(n - p.first() - row.m)
                        .or_default()
                        .push(p.symbolic(n));
                }
                let width = columns.keys().next_back().map_or(0, |&c| c + 1);
                let cols = (0..width)
                    .map(|c| columns.remove(&c).unwrap_or_default())
                    .collect();
                (row.m, cols)
            })
            .collect();
        let cell = grid
            .iter()
            .flat_map(|(_, cols)| cols.iter().flatten())
            .map(String::len)
            .max()
            .unwrap_or(0);
        let label = grid
            .iter()
            .map(|(m, _)| format!("Level {m}").len())
            .max()
            .unwrap_or(0);

        let mut out = String::new();
        for (m, cols) in &grid {
            let height = cols.iter().map(Vec::len).max().unwrap_or(0).max(1);
            for r in 0..height {
                let head = if r == 0 {
                    format!("Level {m}")
                } else {
                    String::new()
                };
                let mut line = format!("{head:label$}");
                for col in cols {
                    let entry = col.get(r).map_or("", String::as_str);
                    line.push_str(&format!("  {entry:cell$}"));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for LevelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Concrete table from the recipe: every symbolic entry that is a
/// partition of `n`.
pub fn level_table_recipe(n: usize, max_m: usize) -> Result<LevelTable> {
    check_level(n, max_m)?;
    let levels = symbolic_recipe(max_m)
        .into_iter()
        .map(|level| LevelRow {
            m: level.m,
            partitions: level.entries().filter_map(|e| e.instantiate(n)).collect(),
        })
        .collect();
    Ok(LevelTable { n, levels })
}

pub fn closed_form_table(n: usize, max_m: usize) -> Result<LevelTable> {
    check_level(n, max_m)?;
    let levels = (0..=max_m)
        .into_par_iter()
        .map(|m| {
            Ok(LevelRow {
                m,
                partitions: level_content_closed_form(n, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelTable { n, levels })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Recipe,
    Decomposition,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Recipe => "recipe",
            Source::Decomposition => "decomposition",
        })
    }
}

/// Disagreement with the closed form at one level. `missing` is in the
/// closed form only, `extra` in `source` only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMismatch {
    pub m: usize,
    pub source: Source,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

impl fmt::Display for LevelMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {} ({}): missing [{}] extra [{}]",
            self.m,
            self.source,
            self.missing.join(" "),
            self.extra.join(" ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub n: usize,
    pub max_m: usize,
    pub mismatches: Vec<LevelMismatch>,
    pub passed: bool,
}

fn compare(
    m: usize,
    source: Source,
    expected: &BTreeSet<Partition>,
    found: &BTreeSet<Partition>,
) -> Option<LevelMismatch> {
    let missing: Vec<String> = expected.difference(found).map(|p| p.to_string()).collect();
    let extra: Vec<String> = found.difference(expected).map(|p| p.to_string()).collect();
    (!missing.is_empty() || !extra.is_empty()).then_some(LevelMismatch {
        m,
        source,
        missing,
        extra,
    })
}

/// Level-by-level differences of `found` against `expected`.
pub fn table_diff(expected: &LevelTable, found: &LevelTable, source: Source) -> Vec<LevelMismatch> {
    let empty = BTreeSet::new();
    let levels: BTreeSet<usize> = expected
        .levels
        .iter()
        .chain(&found.levels)
        .map(|r| r.m)
        .collect();
    levels
        .into_iter()
        .filter_map(|m| {
            compare(
                m,
                source,
                expected.level(m).unwrap_or(&empty),
                found.level(m).unwrap_or(&empty),
            )
        })
        .collect()
}

/// Checks closed form, recipe and character decomposition against each
/// other at every level of `S_n`.
pub fn cross_validate(table: &CharacterTable) -> Result<CrossValidation> {
    let n = table.n;
    let max_m = n / 2;
    let closed = closed_form_table(n, max_m)?;
    let recipe = level_table_recipe(n, max_m)?;
    let decomposed = (0..=max_m)
        .into_par_iter()
        .map(|m| {
            Ok(LevelRow {
                m,
                partitions: decompose(table, m)?.support(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let decomposed = LevelTable {
        n,
        levels: decomposed,
    };
    let mut mismatches = table_diff(&closed, &recipe, Source::Recipe);
    mismatches.extend(table_diff(&closed, &decomposed, Source::Decomposition));
    Ok(CrossValidation {
        n,
        max_m,
        passed: mismatches.is_empty(),
        mismatches,
    })
}
