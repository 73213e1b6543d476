//! Carrier space built from monomials in antisymmetric variables
//! `ξ_jk = -ξ_kj`.
//!
//! The inner product is the Gaussian expectation with per-variable weight
//! `e^{-ξ²}/√π`. Only its moments are ever used:
//!
//! | exponent | moment |
//! |----------|--------|
//! | 0        | 1      |
//! | 1        | 0      |
//! | 2        | 1/2    |
//!
//! so a monomial with `r` factors has squared norm `2^{-r}` and distinct
//! multilinear monomials are orthogonal. Nothing is integrated numerically.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Sign, Surd};
use crate::involutions::{enumerate_x, Involution, Permutation};

/// `ξ_{j1 k1} ξ_{j2 k2} ... ξ_{jr kr}` with the factors in standard form
/// (`j < k` inside each factor, first indices increasing, all indices
/// distinct).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    n: usize,
    factors: Vec<(usize, usize)>,
}

impl Monomial {
    pub fn new(n: usize, factors: Vec<(usize, usize)>) -> Result<Self> {
        // Same constraint set as an involution label.
        let label = Involution::new(n, factors)?;
        Ok(Monomial::from(&label))
    }

    /// The constant monomial `1`.
    pub fn one(n: usize) -> Self {
        Monomial {
            n,
            factors: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of factors `r`.
    pub fn order(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn to_involution(&self) -> Involution {
        Involution::new(self.n, self.factors.clone()).expect("monomials stay in standard form")
    }
}

impl From<&Involution> for Monomial {
    fn from(x: &Involution) -> Self {
        Monomial {
            n: x.degree(),
            factors: x.pairs().to_vec(),
        }
    }
}

/// `x12*x34`; the constant monomial is `1`. For `n ≥ 10` the two indices
/// are separated by `_` (`x3_12`) to stay unambiguous.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let sep = if self.n >= 10 { "_" } else { "" };
        let body: Vec<String> = self
            .factors
            .iter()
            .map(|(j, k)| format!("x{j}{sep}{k}"))
            .collect();
        f.write_str(&body.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial[n={}]({self})", self.n)
    }
}

fn check_degree(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(())
}

/// Relabels every variable by `π` and restores standard form, using
/// `ξ_ab = -ξ_ba` once per reversed factor.
pub fn act_on_monomial(pi: &Permutation, monomial: &Monomial) -> Result<(Monomial, Sign)> {
    check_degree(monomial.n, pi.degree())?;
    let mut sign = Sign::Plus;
    let mut factors = Vec::with_capacity(monomial.factors.len());
    for &(j, k) in &monomial.factors {
        let (a, b) = (pi.apply(j), pi.apply(k));
        if a < b {
            factors.push((a, b));
        } else {
            sign = -sign;
            factors.push((b, a));
        }
    }
    // Factors commute, so reordering them costs nothing.
    factors.sort_unstable();
    Ok((
        Monomial {
            n: monomial.n,
            factors,
        },
        sign,
    ))
}

/// `E[ξ^k]` for the weight `e^{-ξ²}/√π`: zero for odd `k`,
/// `(k-1)!! / 2^{k/2}` for even `k`.
pub fn gaussian_moment(k: usize) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let double_factorial: BigInt = (1..k).step_by(2).map(BigInt::from).product();
    BigRational::new(double_factorial, BigInt::one() << (k / 2))
}

/// `⟨M, M'⟩` as the product of per-variable moments.
pub fn monomial_pairing(left: &Monomial, right: &Monomial) -> Result<BigRational> {
    check_degree(left.n, right.n)?;
    let mut exponents: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &var in left.factors.iter().chain(&right.factors) {
        *exponents.entry(var).or_default() += 1;
    }
    let mut value = BigRational::one();
    for &e in exponents.values() {
        value *= gaussian_moment(e);
        if value.is_zero() {
            break;
        }
    }
    Ok(value)
}

/// A finite linear combination of monomials with complex rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCombination {
    n: usize,
    terms: BTreeMap<Monomial, ComplexRational>,
}

impl MonomialCombination {
    pub fn zero(n: usize) -> Self {
        MonomialCombination {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(monomial: Monomial) -> Self {
        let mut out = MonomialCombination::zero(monomial.n);
        out.terms.insert(monomial, ComplexRational::one());
        out
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, ComplexRational> {
        &self.terms
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: ComplexRational) -> Result<()> {
        check_degree(self.n, monomial.n)?;
        let slot = self
            .terms
            .entry(monomial)
            .or_insert_with(ComplexRational::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    /// `π · f`, extended linearly.
    pub fn act(&self, pi: &Permutation) -> Result<MonomialCombination> {
        let mut out = MonomialCombination::zero(self.n);
        for (monomial, coeff) in &self.terms {
            let (image, sign) = act_on_monomial(pi, monomial)?;
            let c = match sign {
                Sign::Plus => coeff.clone(),
                Sign::Minus => -coeff,
            };
            out.add_term(image, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for MonomialCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        f.write_str(&body.join(" + "))
    }
}

/// `⟨f1, f2⟩ = Σ conj(c1) c2 ⟨M1, M2⟩`, antilinear in the first slot.
pub fn inner_product(
    f1: &MonomialCombination,
    f2: &MonomialCombination,
) -> Result<ComplexRational> {
    check_degree(f1.n, f2.n)?;
    let mut total = ComplexRational::zero();
    for (m1, c1) in &f1.terms {
        for (m2, c2) in &f2.terms {
            let pairing = monomial_pairing(m1, m2)?;
            if !pairing.is_zero() {
                total = &total + &(&c1.conj() * c2).scale(&pairing);
            }
        }
    }
    Ok(total)
}

/// `2^{r/2} M_r`, kept as the monomial and the squared scale `2^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMonomial {
    pub monomial: Monomial,
    pub scale_sq: BigRational,
}

impl NormalizedMonomial {
    pub fn new(monomial: Monomial) -> Self {
        let scale_sq = BigRational::from_integer(BigInt::one() << monomial.order());
        NormalizedMonomial { monomial, scale_sq }
    }
}

impl fmt::Display for NormalizedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale_sq.is_one() {
            write!(f, "{}", self.monomial)
        } else {
            write!(f, "sqrt({})*{}", self.scale_sq, self.monomial)
        }
    }
}

/// One normalized monomial per element of `X`, in the same order.
pub fn normalized_basis(n: usize) -> Result<Vec<NormalizedMonomial>> {
    Ok(enumerate_x(n)?
        .iter()
        .map(|x| NormalizedMonomial::new(Monomial::from(x)))
        .collect())
}

/// `G_ij = s_i s_j ⟨M_i, M_j⟩` with `s_i = sqrt(scale_sq_i)`, exactly.
pub fn gram_matrix(basis: &[NormalizedMonomial]) -> Result<Vec<Vec<Surd>>> {
    basis
        .par_iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let pairing = monomial_pairing(&a.monomial, &b.monomial)?;
                    let scale = Surd::sqrt(&a.scale_sq * &b.scale_sq);
                    Ok(&Surd::from_rational(&pairing) * &scale)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{identity_defects, rational};
    use crate::involutions::{act, enumerate_xm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(n: usize, f: &[(usize, usize)]) -> Monomial {
        Monomial::new(n, f.to_vec()).unwrap()
    }

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn random_combination(n: usize, rng: &mut ChaCha8Rng) -> MonomialCombination {
        let basis = enumerate_x(n).unwrap();
        let mut f = MonomialCombination::zero(n);
        for _ in 0..rng.gen_range(1..6) {
            let x = &basis[rng.gen_range(0..basis.len())];
            let c = ComplexRational::new(
                rational(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
                rational(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
            );
            f.add_term(Monomial::from(x), c).unwrap();
        }
        f
    }

    #[test]
    fn moments() {
        assert_eq!(gaussian_moment(0), rational(1, 1));
        assert_eq!(gaussian_moment(1), rational(0, 1));
        assert_eq!(gaussian_moment(2), rational(1, 2));
        assert_eq!(gaussian_moment(4), rational(3, 4));
    }

    #[test]
    fn pairings() {
        let x12 = MonomialCombination::from_monomial(mono(4, &[(1, 2)]));
        let x13 = MonomialCombination::from_monomial(mono(4, &[(1, 3)]));
        let one = MonomialCombination::from_monomial(Monomial::one(4));
        assert_eq!(
            inner_product(&x12, &x12).unwrap(),
            ComplexRational::real(rational(1, 2))
        );
        assert_eq!(inner_product(&one, &one).unwrap(), ComplexRational::one());
        assert!(inner_product(&x12, &x13).unwrap().is_zero());
        let x12x34 = mono(4, &[(1, 2), (3, 4)]);
        assert_eq!(monomial_pairing(&x12x34, &x12x34).unwrap(), rational(1, 4));
        assert!(inner_product(&x12, &MonomialCombination::zero(5)).is_err());
    }

    /// A variable left with exponent 1 kills the pairing.
    #[test]
    fn odd_exponent_vanishes() {
        for n in 2..=6 {
            let xs = enumerate_x(n).unwrap();
            for a in &xs {
                for b in &xs {
                    if a != b {
                        let v = monomial_pairing(&Monomial::from(a), &Monomial::from(b)).unwrap();
                        assert!(v.is_zero(), "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn act_examples() {
        let x12 = mono(4, &[(1, 2)]);
        assert_eq!(
            act_on_monomial(&Permutation::identity(4), &x12).unwrap(),
            (x12.clone(), Sign::Plus)
        );
        assert_eq!(
            act_on_monomial(&perm(&[2, 1, 3, 4]), &x12).unwrap(),
            (x12.clone(), Sign::Minus)
        );
        assert_eq!(
            act_on_monomial(&perm(&[1, 3, 2, 4]), &x12).unwrap(),
            (mono(4, &[(1, 3)]), Sign::Plus)
        );
        assert!(act_on_monomial(&Permutation::identity(3), &x12).is_err());
    }

    #[test]
    fn agrees_with_involution_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=7 {
            let mut gens = Permutation::adjacent_transpositions(n);
            gens.extend((0..5).map(|_| Permutation::random(n, &mut rng)));
            for m in 0..=n / 2 {
                for x in enumerate_xm(n, m).unwrap() {
                    for g in &gens {
                        let expected = act(g, &x).unwrap();
                        let (image, sign) = act_on_monomial(g, &Monomial::from(&x)).unwrap();
                        assert_eq!(image.to_involution(), expected.element);
                        assert_eq!(sign, expected.sign);
                    }
                }
            }
        }
    }

    #[test]
    fn small_bases() {
        let b2 = normalized_basis(2).unwrap();
        let shown: Vec<String> = b2.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, ["1", "sqrt(2)*x12"]);
        assert!(identity_defects(&gram_matrix(&b2).unwrap()).is_empty());
        let g4 = gram_matrix(&normalized_basis(4).unwrap()).unwrap();
        assert_eq!(g4.len(), 10);
        assert!(identity_defects(&g4).is_empty());
    }

    #[test]
    fn rendering() {
        assert_eq!(mono(4, &[(1, 2), (3, 4)]).to_string(), "x12*x34");
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(mono(12, &[(3, 12)]).to_string(), "x3_12");
    }

    #[test]
    fn action_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=6 {
            for _ in 0..25 {
                let f1 = random_combination(n, &mut rng);
                let f2 = random_combination(n, &mut rng);
                let pi = Permutation::random(n, &mut rng);
                assert_eq!(
                    inner_product(&f1.act(&pi).unwrap(), &f2.act(&pi).unwrap()).unwrap(),
                    inner_product(&f1, &f2).unwrap()
                );
            }
        }
    }

    #[test]
    fn inner_product_is_hermitian_and_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 2..=6 {
            for _ in 0..20 {
                let f1 = random_combination(n, &mut rng);
                let f2 = random_combination(n, &mut rng);
                assert_eq!(
                    inner_product(&f1, &f2).unwrap(),
                    inner_product(&f2, &f1).unwrap().conj()
                );
                let norm = inner_product(&f1, &f1).unwrap();
                assert!(norm.is_real());
                assert!(norm.re > rational(0, 1) || f1.terms().is_empty());
            }
        }
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let mut f = MonomialCombination::from_monomial(mono(3, &[(1, 2)]));
        f.add_term(mono(3, &[(1, 2)]), ComplexRational::real(rational(-1, 1)))
            .unwrap();
        assert!(f.terms().is_empty());
        assert_eq!(f.to_string(), "0");
    }
}
