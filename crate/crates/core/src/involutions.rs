//! Standard-form involutions `X_m` and the signed action of `S_n` on them.
//!
//! An element of `X_m` is a product of `m` disjoint transpositions written
//! as pairs `(a_k, b_k)` with `a_k < b_k` and `a_1 < a_2 < ... < a_m`. A
//! permutation `π` relabels every entry; each pair that comes out reversed
//! is swapped back and contributes a factor `-1`. Reordering whole pairs is
//! free.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Sign;
use crate::partitions::{check_degree, factorial, Partition, DEFAULT_MAX_N};

/// Largest basis any enumeration will materialize.
pub const DEFAULT_MAX_BASIS: usize = 2_000_000;

/// A permutation of `{1..n}` in one-line notation: `images[i-1] = π(i)`.
///
/// Composition follows `(π∘σ)(i) = π(σ(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    images,
                    reason: "image outside 1..=n",
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation {
                    images,
                    reason: "repeated image",
                });
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::from_cycles(n, &[vec![a, b]])
    }

    /// Product of the given disjoint cycles; `[1,2,3]` sends 1→2→3→1.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (i, &from) in cycle.iter().enumerate() {
                let to = cycle[(i + 1) % cycle.len()];
                if from == 0 || from > n || to == 0 || to > n {
                    return Err(Error::InvalidPermutation {
                        images: cycle.clone(),
                        reason: "cycle entry outside 1..=n",
                    });
                }
                if std::mem::replace(&mut touched[from], true) {
                    return Err(Error::InvalidPermutation {
                        images: cycle.clone(),
                        reason: "cycles are not disjoint",
                    });
                }
                images[from - 1] = to;
            }
        }
        Ok(Permutation { images })
    }

    /// Canonical element of cycle type `mu`: consecutive blocks
    /// `(1..μ1)(μ1+1..μ1+μ2)...`.
    pub fn class_representative(mu: &Partition) -> Self {
        let mut images = Vec::with_capacity(mu.size());
        let mut start = 1;
        for &len in mu.parts() {
            images.extend(start + 1..start + len);
            images.push(start);
            start += len;
        }
        Permutation { images }
    }

    /// The `n - 1` generators `(i i+1)`.
    pub fn adjacent_transpositions(n: usize) -> Vec<Self> {
        (1..n)
            .map(|i| Permutation::transposition(n, i, i + 1).expect("valid transposition"))
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_same_degree(self.degree(), other.degree())?;
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// One-line notation: `[2,1,3]`, `2,1,3` or `2 1 3`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: "expected positive integers",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

fn check_same_degree(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(())
}

/// A product of disjoint transpositions in standard form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "InvolutionJson", into = "InvolutionJson")]
pub struct Involution {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct InvolutionJson {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<InvolutionJson> for Involution {
    type Error = Error;

    fn try_from(j: InvolutionJson) -> Result<Self> {
        Involution::new(j.n, j.pairs)
    }
}

impl From<Involution> for InvolutionJson {
    fn from(x: Involution) -> Self {
        InvolutionJson {
            n: x.n,
            pairs: x.pairs,
        }
    }
}

impl Involution {
    /// Accepts only pairs already in standard form.
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let bad = |reason| {
            Err(Error::NotStandardForm {
                n,
                pairs: pairs.clone(),
                reason,
            })
        };
        if 2 * pairs.len() > n {
            return bad("more than n/2 pairs");
        }
        let mut seen = vec![false; n + 1];
        for &(a, b) in &pairs {
            if a == 0 || b > n {
                return bad("entry outside 1..=n");
            }
            if a >= b {
                return bad("pair not increasing");
            }
            if std::mem::replace(&mut seen[a], true) || std::mem::replace(&mut seen[b], true) {
                return bad("entries not pairwise distinct");
            }
        }
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return bad("first entries not increasing");
        }
        Ok(Involution { n, pairs })
    }

    /// Brings arbitrary disjoint pairs into standard form, ignoring signs.
    pub fn from_disjoint_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> =
            pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Involution::new(n, pairs)
    }

    /// `X_0`.
    pub fn identity(n: usize) -> Self {
        Involution {
            n,
            pairs: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of transpositions.
    pub fn level(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.n).collect();
        for &(a, b) in &self.pairs {
            images[a - 1] = b;
            images[b - 1] = a;
        }
        Permutation { images }
    }

    /// Parses the text rendering: `e` or `(1 2)(3 4)`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Involution::identity(n));
        }
        let err = || Error::Parse {
            input: s.to_string(),
            reason: "expected `e` or `(a b)(c d)...`",
        };
        let mut pairs = Vec::new();
        for chunk in s.split(')').filter(|c| !c.trim().is_empty()) {
            let inner = chunk.trim().strip_prefix('(').ok_or_else(err)?;
            let nums: Vec<usize> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| err()))
                .collect::<Result<_>>()?;
            match nums[..] {
                [a, b] => pairs.push((a, b)),
                _ => return Err(err()),
            }
        }
        Involution::new(n, pairs)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("e");
        }
        for (a, b) in &self.pairs {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Involution[n={}]{self}", self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedInvolution {
    pub element: Involution,
    pub sign: Sign,
}

fn check_level(n: usize, m: usize) -> Result<()> {
    if m > n / 2 {
        return Err(Error::LevelOutOfRange { n, m, max: n / 2 });
    }
    Ok(())
}

/// Number of ways to choose `j` disjoint pairs from `s` points:
/// `s! / (2^j · j! · (s-2j)!)`.
fn matchings(s: usize, j: usize) -> u128 {
    if 2 * j > s {
        return 0;
    }
    // C(s, 2j) · (2j-1)!!
    let mut c: u128 = 1;
    for i in 0..2 * j {
        c = c * (s - i) as u128 / (i + 1) as u128;
    }
    (1..j).fold(c, |acc, i| acc * (2 * i + 1) as u128)
}

/// `|X_m| = n! / (2^m · m! · (n-2m)!)`.
pub fn level_size(n: usize, m: usize) -> Result<BigUint> {
    check_level(n, m)?;
    Ok(factorial(n) / (BigUint::from(2u8).pow(m as u32) * factorial(m) * factorial(n - 2 * m)))
}

/// `|X| = Σ_m |X_m|`.
pub fn involution_count(n: usize) -> BigUint {
    (0..=n / 2)
        .map(|m| level_size(n, m).expect("m in range"))
        .sum()
}

/// `X_m` in lexicographic order of the flattened pair sequence.
pub fn enumerate_xm(n: usize, m: usize) -> Result<Vec<Involution>> {
    enumerate_xm_capped(n, m, DEFAULT_MAX_N, DEFAULT_MAX_BASIS)
}

pub fn enumerate_xm_capped(
    n: usize,
    m: usize,
    max_n: usize,
    max_basis: usize,
) -> Result<Vec<Involution>> {
    check_degree(n, max_n)?;
    check_level(n, m)?;
    let size = level_size(n, m)?;
    if size > BigUint::from(max_basis) {
        return Err(Error::BasisTooLarge {
            size: size.to_string(),
            limit: max_basis,
        });
    }

    fn extend(
        n: usize,
        remaining: usize,
        lower: usize,
        used: &mut [bool],
        prefix: &mut Vec<(usize, usize)>,
        out: &mut Vec<Involution>,
    ) {
        if remaining == 0 {
            out.push(Involution {
                n,
                pairs: prefix.clone(),
            });
            return;
        }
        for a in lower..=n {
            if used[a] {
                continue;
            }
            let free_above = (a + 1..=n).filter(|&c| !used[c]).count();
            if free_above < 2 * remaining - 1 {
                break;
            }
            used[a] = true;
            for b in a + 1..=n {
                if used[b] {
                    continue;
                }
                used[b] = true;
                prefix.push((a, b));
                extend(n, remaining - 1, a + 1, used, prefix, out);
                prefix.pop();
                used[b] = false;
            }
            used[a] = false;
        }
    }

    let mut out = Vec::new();
    extend(n, m, 1, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    Ok(out)
}

/// `X = X_0 ∪ X_1 ∪ ... ∪ X_{⌊n/2⌋}`, level by level.
pub fn enumerate_x(n: usize) -> Result<Vec<Involution>> {
    enumerate_x_capped(n, DEFAULT_MAX_N, DEFAULT_MAX_BASIS)
}

pub fn enumerate_x_capped(n: usize, max_n: usize, max_basis: usize) -> Result<Vec<Involution>> {
    check_degree(n, max_n)?;
    let total = involution_count(n);
    if total > BigUint::from(max_basis) {
        return Err(Error::BasisTooLarge {
            size: total.to_string(),
            limit: max_basis,
        });
    }
    let mut out = Vec::new();
    for m in 0..=n / 2 {
        out.extend(enumerate_xm_capped(n, m, max_n, max_basis)?);
    }
    Ok(out)
}

/// Relabels by `π`, swaps reversed pairs back (one `-1` each), re-sorts.
pub fn act(pi: &Permutation, x: &Involution) -> Result<SignedInvolution> {
    check_same_degree(x.n, pi.degree())?;
    let mut descents = 0;
    let mut pairs: Vec<(usize, usize)> = x
        .pairs
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (pi.apply(a), pi.apply(b));
            if pa > pb {
                descents += 1;
                (pb, pa)
            } else {
                (pa, pb)
            }
        })
        .collect();
    pairs.sort_unstable_by_key(|p| p.0);
    Ok(SignedInvolution {
        element: Involution { n: x.n, pairs },
        sign: Sign::from_parity(descents),
    })
}

/// Position of `x` inside `enumerate_xm(x.degree(), x.level())`, computed by
/// counting the lexicographically smaller completions at each step.
pub fn involution_index(x: &Involution) -> usize {
    let n = x.n;
    let mut free = vec![true; n + 1];
    free[0] = false;
    let mut remaining = x.level();
    let mut lower = 1;
    let mut index: u128 = 0;
    let free_above = |free: &[bool], a: usize| (a + 1..=n).filter(|&c| free[c]).count();

    for &(a, b) in &x.pairs {
        for a2 in lower..a {
            if free[a2] {
                let s = free_above(&free, a2);
                index += s as u128 * matchings(s.saturating_sub(1), remaining - 1);
            }
        }
        let s = free_above(&free, a);
        let smaller_b = (a + 1..b).filter(|&c| free[c]).count();
        index += smaller_b as u128 * matchings(s - 1, remaining - 1);
        free[a] = false;
        free[b] = false;
        remaining -= 1;
        lower = a + 1;
    }
    usize::try_from(index).expect("index exceeds usize")
}
