//! Integer partitions: the labels for both conjugacy classes and
//! irreducible representations of `S_n`.
//!
//! Everything here is exact. Dimensions and class sizes are `BigUint`
//! because they outgrow `u64` well inside the supported range.

mod character;
mod table;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use character::mn_character;
pub use table::{CharacterTable, CharacterTableCache, CharacterVector};

/// Default hard cap on `n` for anything that enumerates partitions.
pub const DEFAULT_MAX_N: usize = 30;

/// A weakly decreasing sequence of positive parts.
///
/// `Ord` is the canonical order used everywhere in the crate: descending
/// lexicographic, so `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`. Ordered
/// maps keyed by `Partition` therefore iterate in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting increasing or zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive",
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be weakly decreasing",
            });
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// `(1^n)`, the cycle type of the identity.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, `0` for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.first())
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Number of odd parts.
    pub fn odd_part_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// `(k, m_k)` pairs for every part value `k` that occurs, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((k, c)) if *k == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Hook lengths of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push((row - j) + (conj.parts[j] - i) - 1);
            }
        }
        hooks
    }

    /// Dimension of the irreducible labelled by this partition, by the hook
    /// length formula.
    pub fn dimension(&self) -> BigUint {
        let hooks = self
            .hook_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, h| acc * h);
        factorial(self.size()) / hooks
    }

    /// `z_μ = Π_k k^{m_k} m_k!`, the order of the centralizer of an element
    /// with this cycle type.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (k, mk)| {
                acc * BigUint::from(k).pow(mk as u32) * factorial(mk)
            })
    }

    /// Number of permutations with this cycle type, `n!/z_μ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.centralizer_order()
    }

    /// `(3,2^2,1^4)` style.
    pub fn exponent_notation(&self) -> String {
        format!("({})", exponent_list(&self.multiplicities()))
    }

    /// Renders relative to the symbol `n`, e.g. `(n-5,2,1^3)` for `(5,2,1,1,1)`
    /// with `n = 10`. Only meaningful when `self` is a partition of `n`.
    pub fn symbolic(&self, n: usize) -> String {
        let first = match n.checked_sub(self.first()) {
            Some(0) => "n".to_string(),
            Some(k) => format!("n-{k}"),
            None => return self.exponent_notation(),
        };
        let tail = Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        };
        if tail.is_empty() {
            format!("({first})")
        } else {
            format!("({first},{})", exponent_list(&tail.multiplicities()))
        }
    }
}

pub(crate) fn exponent_list(mults: &[(usize, usize)]) -> String {
    mults
        .iter()
        .map(|&(k, m)| {
            if m == 1 {
                k.to_string()
            } else {
                format!("{k}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// Accepts `(3,1,1)`, `3,1,1` or `3 1 1`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: "expected positive integers",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub(crate) fn check_degree(n: usize, max_n: usize) -> Result<()> {
    if n == 0 || n > max_n {
        return Err(Error::DegreeOutOfRange { n, max: max_n });
    }
    Ok(())
}

/// All partitions of `n` in canonical (descending lexicographic) order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_capped(n, DEFAULT_MAX_N)
}

/// As [`enumerate_partitions`] with an explicit cap on `n`.
pub fn enumerate_partitions_capped(n: usize, max_n: usize) -> Result<Vec<Partition>> {
    check_degree(n, max_n)?;
    Ok(partitions_unchecked(n))
}

/// Partitions of `n` (including `n = 0`) with no cap.
pub(crate) fn partitions_unchecked(n: usize) -> Vec<Partition> {
    fn fill(rest: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            prefix.push(p);
            fill(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, n, &mut Vec::new(), &mut out);
    out
}

/// Σ_λ dim(λ) over all partitions of `n`.
pub fn dimension_sum(n: usize) -> Result<BigUint> {
    Ok(enumerate_partitions(n)?
        .iter()
        .map(Partition::dimension)
        .sum())
}
