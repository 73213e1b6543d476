//! Fock space of the Greenberg algebra `a(i) a†(j) = δ_ij` and the basis of
//! symmetrized commutator states.
//!
//! A word `[i1, i2, ..., ik]` stands for `a†(i1) a†(i2) ... a†(ik)|0⟩`. With
//! no relation other than `a(i) a†(j) = δ_ij`, two words have inner product
//! 1 exactly when they are the same sequence and 0 otherwise.
//!
//! The basis state for `(i1 i2)(i3 i4)...(i_{2m-1} i_{2m})` is the sum over
//! all `m!` orderings of the product of commutators `[a†(i_{2k-1}), a†(i_{2k})]`
//! applied to the vacuum, divided by `sqrt(m!·2^m)`. That prefactor gives
//! `1/sqrt(2)` for one pair and `1/sqrt(8)` for two.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Surd;
use crate::involutions::{Involution, Permutation};
use crate::partitions::factorial;

/// A sequence of creation operators; the empty word is the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FockWord(pub Vec<usize>);

impl FockWord {
    pub fn vacuum() -> Self {
        FockWord(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn relabel(&self, pi: &Permutation) -> FockWord {
        FockWord(self.0.iter().map(|&i| pi.apply(i)).collect())
    }
}

impl fmt::Display for FockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "a+({i}) ")?;
        }
        f.write_str("|0>")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Create(usize),
    Annihilate(usize),
}

/// `⟨0| ops |0⟩` by repeatedly contracting the leftmost `a(i) a†(j)` into
/// `δ_ij`. Once no such adjacent pair is left the string is
/// `a† ... a† a ... a`, which vanishes against the vacuum unless empty.
pub fn vacuum_expectation(ops: &[Operator]) -> u8 {
    let mut ops = ops.to_vec();
    loop {
        let contraction = ops
            .windows(2)
            .position(|w| matches!(w, [Operator::Annihilate(_), Operator::Create(_)]));
        match contraction {
            Some(pos) => {
                let (Operator::Annihilate(i), Operator::Create(j)) = (ops[pos], ops[pos + 1])
                else {
                    unreachable!()
                };
                if i != j {
                    return 0;
                }
                ops.drain(pos..pos + 2);
            }
            None => return u8::from(ops.is_empty()),
        }
    }
}

/// `⟨w1|w2⟩` by reduction: the bra of `a†(i1)...a†(ik)|0⟩` is
/// `⟨0|a(ik)...a(i1)`.
pub fn word_inner_product_by_reduction(w1: &FockWord, w2: &FockWord) -> u8 {
    let ops: Vec<Operator> =
        w1.0.iter()
            .rev()
            .map(|&i| Operator::Annihilate(i))
            .chain(w2.0.iter().map(|&i| Operator::Create(i)))
            .collect();
    vacuum_expectation(&ops)
}

/// `⟨w1|w2⟩`: 1 for identical sequences, else 0. Agrees with
/// [`word_inner_product_by_reduction`].
pub fn word_inner_product(w1: &FockWord, w2: &FockWord) -> u8 {
    u8::from(w1 == w2)
}

/// Finite rational combination of words. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    n: usize,
    terms: BTreeMap<FockWord, BigRational>,
}

impl FockState {
    pub fn zero(n: usize) -> Self {
        FockState {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(n: usize) -> Self {
        FockState::word(n, FockWord::vacuum())
    }

    pub fn word(n: usize, word: FockWord) -> Self {
        let mut s = FockState::zero(n);
        s.terms.insert(word, BigRational::one());
        s
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<FockWord, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, word: FockWord, coeff: BigRational) {
        let slot = self
            .terms
            .entry(word.clone())
            .or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add_state(&mut self, other: &FockState) -> Result<()> {
        check_degree(self.n, other.n)?;
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scaled(&self, q: &BigRational) -> FockState {
        let mut out = FockState::zero(self.n);
        if !q.is_zero() {
            out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect();
        }
        out
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            let sep = if k > 0 { " " } else { "" };
            if mag.is_one() {
                write!(
                    f,
                    "{sep}{sign}{}{w}",
                    if sign.is_empty() { "" } else { " " }
                )?;
            } else {
                write!(
                    f,
                    "{sep}{sign}{}{mag} {w}",
                    if sign.is_empty() { "" } else { " " }
                )?;
            }
        }
        Ok(())
    }
}

fn check_degree(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(())
}

/// Bilinear extension of [`word_inner_product`]; coefficients are real.
pub fn state_inner_product(s1: &FockState, s2: &FockState) -> Result<BigRational> {
    check_degree(s1.n, s2.n)?;
    let (small, large) = if s1.terms.len() <= s2.terms.len() {
        (s1, s2)
    } else {
        (s2, s1)
    };
    Ok(small
        .terms
        .iter()
        .filter_map(|(w, c)| large.terms.get(w).map(|d| c * d))
        .sum())
}

/// `C_{o(1)} C_{o(2)} ... C_{o(m)} |0⟩` with `C_k = [a†(a_k), a†(b_k)]`,
/// expanded into `2^m` words with coefficients `±1`.
pub fn commutator_product_state(
    n: usize,
    pairs: &[(usize, usize)],
    ordering: &Permutation,
) -> Result<FockState> {
    let mut seen = vec![false; n + 1];
    for &(a, b) in pairs {
        if a == 0
            || b > n
            || a >= b
            || std::mem::replace(&mut seen[a], true)
            || std::mem::replace(&mut seen[b], true)
        {
            return Err(Error::OverlappingPairs {
                pairs: pairs.to_vec(),
            });
        }
    }
    check_degree(pairs.len(), ordering.degree())?;

    // Leftmost commutator contributes the leftmost letters of every word.
    let mut words: Vec<(Vec<usize>, bool)> = vec![(Vec::new(), false)];
    for slot in 1..=pairs.len() {
        let (a, b) = pairs[ordering.apply(slot) - 1];
        words = words
            .into_iter()
            .flat_map(|(w, negative)| {
                let mut ab = w.clone();
                ab.extend([a, b]);
                let mut ba = w;
                ba.extend([b, a]);
                [(ab, negative), (ba, !negative)]
            })
            .collect();
    }
    let mut state = FockState::zero(n);
    for (w, negative) in words {
        let c = if negative {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        state.add_term(FockWord(w), c);
    }
    Ok(state)
}

/// A state divided by `sqrt(norm_sq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedFockState {
    pub state: FockState,
    pub norm_sq: BigRational,
}

impl NormalizedFockState {
    pub fn act(&self, pi: &Permutation) -> Result<NormalizedFockState> {
        Ok(NormalizedFockState {
            state: act_on_state(pi, &self.state)?,
            norm_sq: self.norm_sq.clone(),
        })
    }
}

impl fmt::Display for NormalizedFockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.norm_sq.is_one() {
            write!(f, "{}", self.state)
        } else {
            write!(f, "1/sqrt({}) * ( {} )", self.norm_sq, self.state)
        }
    }
}

/// All orderings of `1..=m` in lexicographic order.
fn orderings(m: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (1..=m).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::new(current.clone()).expect("valid ordering"));
        let Some(i) = (1..current.len())
            .rev()
            .find(|&i| current[i - 1] < current[i])
        else {
            return out;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// The normalized symmetrized commutator state labelled by `x`.
pub fn basis_state(x: &Involution) -> NormalizedFockState {
    let n = x.degree();
    let m = x.level();
    let mut state = FockState::zero(n);
    for ordering in orderings(m) {
        let term = commutator_product_state(n, x.pairs(), &ordering)
            .expect("standard-form pairs are disjoint");
        state.add_state(&term).expect("same degree");
    }
    let norm_sq = BigRational::from_integer(BigInt::from(factorial(m)) << m);
    NormalizedFockState { state, norm_sq }
}

/// `S[[a†(1),a†(3)]·[a†(2),a†(4)]]|0>` style label for a basis state.
pub fn symbolic_label(x: &Involution) -> String {
    if x.level() == 0 {
        return "|0>".to_string();
    }
    let body: String = x
        .pairs()
        .iter()
        .map(|(a, b)| format!("[a+({a}),a+({b})]"))
        .collect();
    let scale = BigInt::from(factorial(x.level())) << x.level();
    if x.level() == 1 {
        format!("1/sqrt({scale}) {body}|0>")
    } else {
        format!("1/sqrt({scale}) S{{{body}}}|0>")
    }
}

/// Relabels every index in every word by `π`.
pub fn act_on_state(pi: &Permutation, s: &FockState) -> Result<FockState> {
    check_degree(s.n, pi.degree())?;
    let mut out = FockState::zero(s.n);
    for (w, c) in &s.terms {
        out.add_term(w.relabel(pi), c.clone());
    }
    Ok(out)
}

/// `G_ij = ⟨s_i, s_j⟩ / sqrt(N_i N_j)`, exactly.
///
/// Words are orthonormal, so only states sharing a word pair nontrivially;
/// the products are accumulated word by word instead of state by state.
pub fn gram_matrix(states: &[NormalizedFockState]) -> Result<Vec<Vec<Surd>>> {
    if let Some(first) = states.first() {
        for s in states {
            check_degree(first.state.n, s.state.n)?;
        }
    }
    let mut by_word: HashMap<&FockWord, Vec<(usize, &BigRational)>> = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        for (w, c) in &s.state.terms {
            by_word.entry(w).or_default().push((i, c));
        }
    }
    let mut raw: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
    for holders in by_word.values() {
        for &(i, a) in holders {
            for &(j, b) in holders {
                *raw.entry((i, j)).or_insert_with(BigRational::zero) += a * b;
            }
        }
    }
    let mut gram = vec![vec![Surd::zero(); states.len()]; states.len()];
    for ((i, j), value) in raw {
        let scale = Surd::sqrt((&states[i].norm_sq * &states[j].norm_sq).recip());
        gram[i][j] = &Surd::from_rational(&value) * &scale;
    }
    Ok(gram)
}
