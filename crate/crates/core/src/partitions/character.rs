//! Murnaghan–Nakayama rule on beta-sets.
//!
//! A partition `λ` with `l` parts is encoded by the beta-set
//! `{λ_i + (l - 1 - i)}`. Removing a border strip of length `k` is moving a
//! bead from `b` to an empty position `b - k`; the strip's height is the
//! number of beads strictly between the two positions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Partition;
use crate::error::{Error, Result};

/// Memo keyed by (remaining shape, number of cycle parts already consumed).
pub(crate) type Memo = HashMap<(Vec<usize>, usize), BigInt>;

/// `χ_λ(μ)`: the irreducible character `λ` on the class of cycle type `μ`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::DegreeMismatch {
            expected: lambda.size(),
            found: mu.size(),
        });
    }
    Ok(character_memo(
        lambda.parts(),
        mu.parts(),
        0,
        &mut Memo::new(),
    ))
}

/// Strips are removed in the order of `cycles` (largest first when `cycles`
/// is a partition), starting at `depth`.
pub(crate) fn character_memo(
    shape: &[usize],
    cycles: &[usize],
    depth: usize,
    memo: &mut Memo,
) -> BigInt {
    if depth == cycles.len() {
        return if shape.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if shape.len() <= 1 {
        // A single row only admits horizontal strips: the trivial character.
        return BigInt::one();
    }
    let key = (shape.to_vec(), depth);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }

    let k = cycles[depth];
    let l = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i))
        .collect();

    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        let rest = from_beta(&mut next);
        let value = character_memo(&rest, cycles, depth + 1, memo);
        if height % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    memo.insert(key, total.clone());
    total
}

fn from_beta(beta: &mut [usize]) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (l - 1 - i))
        .filter(|&p| p > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn chi(l: &[usize], m: &[usize]) -> i64 {
        mn_character(&p(l), &p(m)).unwrap().try_into().unwrap()
    }

    #[test]
    fn named_values() {
        assert_eq!(chi(&[4], &[2, 1, 1]), 1);
        assert_eq!(chi(&[3, 1], &[2, 1, 1]), 1);
        assert_eq!(chi(&[1, 1, 1, 1], &[2, 1, 1]), -1);
        assert_eq!(chi(&[2, 2], &[1, 1, 1, 1]), 2);
        assert_eq!(chi(&[2, 2], &[2, 2]), 2);
        assert_eq!(chi(&[2, 2], &[3, 1]), -1);
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(
            mn_character(&p(&[3]), &p(&[2, 1, 1])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    /// Closed forms that do not go through border strips.
    #[test]
    fn standard_and_sign_characters() {
        for n in 2..=8 {
            let standard = Partition::new(vec![n - 1, 1]).unwrap();
            for mu in enumerate_partitions(n).unwrap() {
                let fixed = mu.parts().iter().filter(|&&c| c == 1).count() as i64;
                assert_eq!(
                    mn_character(&standard, &mu).unwrap(),
                    BigInt::from(fixed - 1),
                    "{standard} at {mu}"
                );
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    mn_character(&Partition::column(n), &mu).unwrap(),
                    BigInt::from(sign)
                );
            }
        }
    }

    #[test]
    fn identity_class_gives_dimension() {
        for n in 1..=9 {
            for lambda in enumerate_partitions(n).unwrap() {
                assert_eq!(
                    mn_character(&lambda, &Partition::column(n)).unwrap(),
                    BigInt::from(lambda.dimension())
                );
            }
        }
    }
}
