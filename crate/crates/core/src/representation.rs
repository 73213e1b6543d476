//! The signed permutation representation of `S_n` on `span(X_m)` and its
//! decomposition into irreducibles.
//!
//! Characters come from fixed points of the signed action; full matrices
//! are only built on request by [`rep_matrix`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Sign;
use crate::involutions::{act, enumerate_xm, involution_index, level_size, Permutation};
use crate::json_int;
use crate::partitions::{factorial, CharacterTable, CharacterVector, Partition};

/// A matrix with exactly one `±1` in every column, stored by column:
/// column `j` has `mapping[j].1` in row `mapping[j].0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutationMatrix {
    dim: usize,
    mapping: Vec<(usize, Sign)>,
}

impl SignedPermutationMatrix {
    pub fn new(mapping: Vec<(usize, Sign)>) -> Result<Self> {
        let dim = mapping.len();
        let mut hit = vec![false; dim];
        for &(row, _) in &mapping {
            if row >= dim || std::mem::replace(&mut hit[row], true) {
                return Err(Error::InvalidPermutation {
                    images: mapping.iter().map(|&(r, _)| r).collect(),
                    reason: "row indices are not a permutation of 0..dim",
                });
            }
        }
        Ok(SignedPermutationMatrix { dim, mapping })
    }

    pub fn identity(dim: usize) -> Self {
        SignedPermutationMatrix {
            dim,
            mapping: (0..dim).map(|j| (j, Sign::Plus)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mapping(&self) -> &[(usize, Sign)] {
        &self.mapping
    }

    /// Image of basis vector `j`.
    pub fn column(&self, j: usize) -> (usize, Sign) {
        self.mapping[j]
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &SignedPermutationMatrix) -> Result<SignedPermutationMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DegreeMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let mapping = rhs
            .mapping
            .iter()
            .map(|&(k, s)| {
                let (i, t) = self.mapping[k];
                (i, s * t)
            })
            .collect();
        Ok(SignedPermutationMatrix {
            dim: self.dim,
            mapping,
        })
    }

    pub fn transpose(&self) -> SignedPermutationMatrix {
        let mut mapping = vec![(0, Sign::Plus); self.dim];
        for (j, &(i, s)) in self.mapping.iter().enumerate() {
            mapping[i] = (j, s);
        }
        SignedPermutationMatrix {
            dim: self.dim,
            mapping,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping
            .iter()
            .enumerate()
            .all(|(j, &(i, s))| i == j && s == Sign::Plus)
    }

    pub fn trace(&self) -> i64 {
        self.mapping
            .iter()
            .enumerate()
            .filter(|(j, (i, _))| i == j)
            .map(|(_, (_, s))| i64::from(s.to_i8()))
            .sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i8>> {
        let mut rows = vec![vec![0; self.dim]; self.dim];
        for (j, &(i, s)) in self.mapping.iter().enumerate() {
            rows[i][j] = s.to_i8();
        }
        rows
    }
}

/// The matrix of `π` on the basis `enumerate_xm(n, m)`.
pub fn rep_matrix(pi: &Permutation, n: usize, m: usize) -> Result<SignedPermutationMatrix> {
    if pi.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: pi.degree(),
        });
    }
    let basis = enumerate_xm(n, m)?;
    let mapping = basis
        .iter()
        .map(|x| {
            let image = act(pi, x)?;
            Ok((involution_index(&image.element), image.sign))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignedPermutationMatrix {
        dim: basis.len(),
        mapping,
    })
}

/// Trace of `π` on `span(X_m)`: signed count of fixed basis elements.
pub fn rep_trace(pi: &Permutation, m: usize) -> Result<BigInt> {
    let basis = enumerate_xm(pi.degree(), m)?;
    let mut total = 0i64;
    for x in &basis {
        let image = act(pi, x)?;
        if image.element == *x {
            total += i64::from(image.sign.to_i8());
        }
    }
    Ok(total.into())
}

/// Character of `span(X_m)`, evaluated on the consecutive-block
/// representative of each class.
pub fn rep_character(n: usize, m: usize) -> Result<CharacterVector> {
    let classes = crate::partitions::enumerate_partitions(n)?;
    let values = classes
        .par_iter()
        .map(|mu| {
            Ok((
                mu.clone(),
                rep_trace(&Permutation::class_representative(mu), m)?,
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CharacterVector { n, values })
}

/// Multiplicities of every irreducible in `span(X_m)` together with the
/// structural flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DecompositionJson", try_from = "DecompositionJson")]
pub struct DecompositionReport {
    pub n: usize,
    pub m: usize,
    /// Every partition of `n`, zeros included.
    pub multiplicities: BTreeMap<Partition, u64>,
    pub multiplicity_free: bool,
    /// No irreducible here also occurs at a lower level.
    pub disjoint_from_lower_levels: bool,
}

impl DecompositionReport {
    /// Irreducibles with nonzero multiplicity.
    pub fn support(&self) -> BTreeSet<Partition> {
        self.multiplicities
            .iter()
            .filter(|(_, &k)| k > 0)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// `Σ mult(λ)·dim(λ)`, which must equal `|X_m|`.
    pub fn total_dimension(&self) -> BigUint {
        self.multiplicities
            .iter()
            .map(|(p, &k)| p.dimension() * k)
            .sum()
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} m={} |X_m|={}",
            self.n,
            self.m,
            self.total_dimension()
        )?;
        for (p, k) in self.multiplicities.iter().filter(|(_, &k)| k > 0) {
            writeln!(f, "  {:<16} x{}  dim {}", p.to_string(), k, p.dimension())?;
        }
        writeln!(f, "multiplicity-free: {}", yes_no(self.multiplicity_free))?;
        write!(
            f,
            "disjoint from lower levels: {}",
            yes_no(self.disjoint_from_lower_levels)
        )
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    n: usize,
    m: usize,
    multiplicities: Vec<MultiplicityEntry>,
    multiplicity_free: bool,
    disjoint: bool,
}

#[derive(Serialize, Deserialize)]
struct MultiplicityEntry {
    partition: Partition,
    mult: u64,
}

impl From<DecompositionReport> for DecompositionJson {
    fn from(r: DecompositionReport) -> Self {
        DecompositionJson {
            n: r.n,
            m: r.m,
            multiplicities: r
                .multiplicities
                .into_iter()
                .map(|(partition, mult)| MultiplicityEntry { partition, mult })
                .collect(),
            multiplicity_free: r.multiplicity_free,
            disjoint: r.disjoint_from_lower_levels,
        }
    }
}

impl TryFrom<DecompositionJson> for DecompositionReport {
    type Error = String;

    fn try_from(j: DecompositionJson) -> std::result::Result<Self, String> {
        let mut multiplicities = BTreeMap::new();
        for e in j.multiplicities {
            if e.partition.size() != j.n {
                return Err(format!("{} is not a partition of {}", e.partition, j.n));
            }
            multiplicities.insert(e.partition, e.mult);
        }
        Ok(DecompositionReport {
            n: j.n,
            m: j.m,
            multiplicities,
            multiplicity_free: j.multiplicity_free,
            disjoint_from_lower_levels: j.disjoint,
        })
    }
}

/// `mult(λ) = (1/n!) Σ_μ |C_μ| χ_λ(μ) χ_rep(μ)` for every `λ`, in exact
/// rationals. A non-integral or negative result is an error, never rounded.
pub fn level_multiplicities(table: &CharacterTable, m: usize) -> Result<BTreeMap<Partition, u64>> {
    let n = table.n;
    let rep = rep_character(n, m)?;
    let order = BigRational::from_integer(factorial(n).into());
    let weighted: Vec<BigInt> = table
        .classes
        .iter()
        .map(|mu| BigInt::from(mu.class_size()) * &rep.values[mu])
        .collect();
    table
        .irreps
        .iter()
        .zip(&table.table)
        .map(|(lambda, row)| {
            let sum: BigInt = row.iter().zip(&weighted).map(|(c, w)| c * w).sum();
            let mult = BigRational::from_integer(sum) / &order;
            let bad = || Error::NonIntegralMultiplicity {
                partition: lambda.to_string(),
                value: mult.to_string(),
            };
            if !mult.is_integer() || mult.is_negative() {
                return Err(bad());
            }
            let k = mult.to_integer().to_u64().ok_or_else(bad)?;
            Ok((lambda.clone(), k))
        })
        .collect()
}

fn report_from_levels(n: usize, levels: &[BTreeMap<Partition, u64>]) -> DecompositionReport {
    let (current, lower) = levels.split_last().expect("at least one level");
    let disjoint = current
        .iter()
        .filter(|(_, &k)| k > 0)
        .all(|(p, _)| lower.iter().all(|l| l.get(p).copied().unwrap_or(0) == 0));
    DecompositionReport {
        n,
        m: levels.len() - 1,
        multiplicity_free: current.values().all(|&k| k <= 1),
        multiplicities: current.clone(),
        disjoint_from_lower_levels: disjoint,
    }
}

/// Decomposes `span(X_m)` using the irreducible characters in `table`.
pub fn decompose(table: &CharacterTable, m: usize) -> Result<DecompositionReport> {
    let n = table.n;
    if m > n / 2 {
        return Err(Error::LevelOutOfRange { n, m, max: n / 2 });
    }
    let levels = (0..=m)
        .into_par_iter()
        .map(|k| level_multiplicities(table, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(report_from_levels(n, &levels))
}

/// Decompositions of every level `0..=⌊n/2⌋`.
pub fn decompose_all(table: &CharacterTable) -> Result<Vec<DecompositionReport>> {
    let n = table.n;
    let levels = (0..=n / 2)
        .into_par_iter()
        .map(|k| level_multiplicities(table, k))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..=levels.len())
        .map(|k| report_from_levels(n, &levels[..k]))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelViolation {
    /// An irreducible occurring more than once in one level.
    Repeated {
        m: usize,
        partition: Partition,
        mult: u64,
    },
    /// An irreducible occurring in more than one level.
    Shared {
        partition: Partition,
        levels: Vec<usize>,
    },
    /// An irreducible occurring in no level.
    Missing { partition: Partition },
    /// `Σ mult·dim` disagrees with `|X_m|`.
    SizeMismatch {
        m: usize,
        #[serde(with = "json_int::biguint")]
        expected: BigUint,
        #[serde(with = "json_int::biguint")]
        found: BigUint,
    },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::Repeated { m, partition, mult } => {
                write!(f, "{partition} occurs {mult} times at level {m}")
            }
            ModelViolation::Shared { partition, levels } => {
                write!(f, "{partition} occurs at levels {levels:?}")
            }
            ModelViolation::Missing { partition } => write!(f, "{partition} occurs at no level"),
            ModelViolation::SizeMismatch { m, expected, found } => {
                write!(
                    f,
                    "level {m}: |X_m| = {expected} but irreducibles sum to {found}"
                )
            }
        }
    }
}

/// Outcome of checking that `X` carries every irreducible exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub n: usize,
    pub levels: Vec<DecompositionReport>,
    #[serde(with = "json_int::biguint")]
    pub basis_size: BigUint,
    #[serde(with = "json_int::biguint")]
    pub dimension_sum: BigUint,
    pub multiplicity_free: bool,
    pub disjoint: bool,
    pub complete: bool,
    pub violations: Vec<ModelViolation>,
    pub passed: bool,
}

/// Checks multiplicity-freeness per level, disjointness across levels and
/// completeness of the union. Failures are returned as data.
pub fn verify_model(table: &CharacterTable) -> Result<ModelReport> {
    let n = table.n;
    let levels = decompose_all(table)?;
    let mut violations = Vec::new();

    for r in &levels {
        for (p, &k) in &r.multiplicities {
            if k > 1 {
                violations.push(ModelViolation::Repeated {
                    m: r.m,
                    partition: p.clone(),
                    mult: k,
                });
            }
        }
        let expected = level_size(n, r.m)?;
        let found = r.total_dimension();
        if expected != found {
            violations.push(ModelViolation::SizeMismatch {
                m: r.m,
                expected,
                found,
            });
        }
    }
    let multiplicity_free = violations.is_empty();

    let mut disjoint = true;
    let mut complete = true;
    for lambda in &table.irreps {
        let hits: Vec<usize> = levels
            .iter()
            .filter(|r| r.multiplicities.get(lambda).copied().unwrap_or(0) > 0)
            .map(|r| r.m)
            .collect();
        match hits.len() {
            0 => {
                complete = false;
                violations.push(ModelViolation::Missing {
                    partition: lambda.clone(),
                });
            }
            1 => {}
            _ => {
                disjoint = false;
                violations.push(ModelViolation::Shared {
                    partition: lambda.clone(),
                    levels: hits,
                });
            }
        }
    }

    let basis_size = (0..=n / 2)
        .map(|m| level_size(n, m))
        .sum::<Result<BigUint>>()?;
    let dimension_sum = table.irreps.iter().map(Partition::dimension).sum();
    let passed = violations.is_empty() && basis_size == dimension_sum;
    Ok(ModelReport {
        n,
        levels,
        basis_size,
        dimension_sum,
        multiplicity_free,
        disjoint,
        complete,
        violations,
        passed,
    })
}

/// Pairs `(π, σ)` with `rep(π∘σ) ≠ rep(π)·rep(σ)` among `samples` seeded
/// random draws.
pub fn homomorphism_failures(
    n: usize,
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<(Permutation, Permutation)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let pi = Permutation::random(n, &mut rng);
        let sigma = Permutation::random(n, &mut rng);
        let lhs = rep_matrix(&pi.compose(&sigma)?, n, m)?;
        let rhs = rep_matrix(&pi, n, m)?.mul(&rep_matrix(&sigma, n, m)?)?;
        if lhs != rhs {
            failures.push((pi, sigma));
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutions::Involution;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn support(r: &DecompositionReport) -> Vec<Partition> {
        r.support().into_iter().collect()
    }

    #[test]
    fn identity_matrix() {
        for m in 0..=2 {
            assert!(rep_matrix(&Permutation::identity(4), 4, m)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn transposition_on_level_one() {
        let mat = rep_matrix(&perm(&[2, 1, 3, 4]), 4, 1).unwrap();
        let i12 = involution_index(&Involution::new(4, vec![(1, 2)]).unwrap());
        let i34 = involution_index(&Involution::new(4, vec![(3, 4)]).unwrap());
        assert_eq!(mat.column(i12), (i12, Sign::Minus));
        assert_eq!(mat.column(i34), (i34, Sign::Plus));
        assert_eq!(mat.trace(), 0);
    }

    /// Hand application: (1 2) sends (1 2)(3 4) to itself with one reversed
    /// pair, and swaps (1 3)(2 4) <-> (1 4)(2 3) without reversals.
    #[test]
    fn transposition_on_level_two() {
        let mat = rep_matrix(&perm(&[2, 1, 3, 4]), 4, 2).unwrap();
        assert_eq!(
            mat.mapping(),
            &[(0, Sign::Minus), (2, Sign::Plus), (1, Sign::Plus)]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            rep_matrix(&Permutation::identity(3), 4, 1),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            rep_matrix(&Permutation::identity(4), 4, 3),
            Err(Error::LevelOutOfRange { .. })
        ));
        let t = CharacterTable::compute(4).unwrap();
        assert!(decompose(&t, 3).is_err());
        assert!(SignedPermutationMatrix::new(vec![(0, Sign::Plus), (0, Sign::Minus)]).is_err());
    }

    #[test]
    fn s4_characters() {
        let c1 = rep_character(4, 1).unwrap();
        assert_eq!(c1.degree(), Some(&BigInt::from(6)));
        assert_eq!(c1.get(&p(&[2, 1, 1])), Some(&BigInt::from(0)));
        let c0 = rep_character(4, 0).unwrap();
        assert!(c0.values.values().all(|v| *v == BigInt::from(1)));
    }

    #[test]
    fn s4_decompositions() {
        let t = CharacterTable::compute(4).unwrap();
        assert_eq!(support(&decompose(&t, 0).unwrap()), vec![p(&[4])]);
        assert_eq!(
            support(&decompose(&t, 1).unwrap()),
            vec![p(&[3, 1]), p(&[2, 1, 1])]
        );
        let r2 = decompose(&t, 2).unwrap();
        assert_eq!(support(&r2), vec![p(&[2, 2]), p(&[1, 1, 1, 1])]);
        assert!(r2.multiplicity_free && r2.disjoint_from_lower_levels);
        assert_eq!(r2.total_dimension(), BigUint::from(3u8));
        assert_eq!(r2.multiplicities.len(), 5);
    }

    #[test]
    fn report_json_schema() {
        let t = CharacterTable::compute(3).unwrap();
        let r = decompose(&t, 1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"m":1,"multiplicities":[{"partition":[3],"mult":0},{"partition":[2,1],"mult":1},{"partition":[1,1,1],"mult":1}],"multiplicity_free":true,"disjoint":true}"#
        );
        assert_eq!(serde_json::from_str::<DecompositionReport>(&s).unwrap(), r);
    }

    #[test]
    fn verify_small_models() {
        for n in 1..=6 {
            let t = CharacterTable::compute(n).unwrap();
            let report = verify_model(&t).unwrap();
            assert!(report.passed, "n={n}: {:?}", report.violations);
        }
        let r4 = verify_model(&CharacterTable::compute(4).unwrap()).unwrap();
        let sizes: Vec<BigUint> = r4.levels.iter().map(|l| l.total_dimension()).collect();
        assert_eq!(sizes, [1u8, 6, 3].map(BigUint::from));
        assert_eq!(r4.basis_size, BigUint::from(10u8));
    }

    #[test]
    fn characters_independent_of_representative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for m in 0..=n / 2 {
                let chi = rep_character(n, m).unwrap();
                for (mu, v) in &chi.values {
                    let base = Permutation::class_representative(mu);
                    for _ in 0..2 {
                        let g = Permutation::random(n, &mut rng);
                        let conj = g.compose(&base).unwrap().compose(&g.inverse()).unwrap();
                        assert_eq!(&rep_trace(&conj, m).unwrap(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn matrices_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            for m in 0..=n / 2 {
                for _ in 0..10 {
                    let pi = Permutation::random(n, &mut rng);
                    let a = rep_matrix(&pi, n, m).unwrap();
                    assert!(a.mul(&a.transpose()).unwrap().is_identity());
                    assert_eq!(rep_matrix(&pi.inverse(), n, m).unwrap(), a.transpose());
                }
            }
        }
    }

    #[test]
    fn dense_product_agrees_with_sparse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = rep_matrix(&Permutation::random(5, &mut rng), 5, 2).unwrap();
        let b = rep_matrix(&Permutation::random(5, &mut rng), 5, 2).unwrap();
        let (da, db) = (a.to_dense(), b.to_dense());
        let d = a.dim();
        let dense: Vec<Vec<i8>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| da[i][k] * db[k][j]).sum())
                    .collect()
            })
            .collect();
        assert_eq!(a.mul(&b).unwrap().to_dense(), dense);
    }

    #[test]
    fn homomorphism_small() {
        for n in 2..=5 {
            for m in 0..=n / 2 {
                assert!(homomorphism_failures(n, m, 30, 1).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn degree_sum_matches_dimension_sum() {
        for n in 1..=7 {
            let total: BigInt = (0..=n / 2)
                .map(|m| rep_character(n, m).unwrap().degree().unwrap().clone())
                .sum();
            assert_eq!(
                total,
                BigInt::from(crate::partitions::dimension_sum(n).unwrap())
            );
        }
    }
}
