//! The first-sextant normal form `η*` and Spira's complex sum-of-divisors σ.
//!
//! For η = ε·Π πᵢ^{eᵢ} over canonical first-sextant primes, the normal form
//! is `η* = Π (πᵢ*)^{eᵢ}` with the unit discarded, and
//!
//! σ(η) = Σ_{δ*|η} δ* = Π_i (1 + πᵢ* + ⋯ + (πᵢ*)^{eᵢ}),
//!
//! the sum running over all products of canonical prime powers dividing η*.
//! The product form is what [`sigma`] computes; [`sigma_oracle`] evaluates
//! the defining sum directly by enumerating the divisors, and exists to
//! cross-check the product form.

use crate::eint::EInt;
use crate::error::{Error, Result};
use crate::primes::{factor, Factorization};

/// Cap on how many canonical divisors [`canonical_divisors`] will enumerate.
pub const MAX_DIVISOR_ENUMERATION: u64 = 1 << 20;

/// The canonical associate product `η* = Π (πᵢ*)^{eᵢ}`; units map to 1.
///
/// Idempotent: `star(star(η)) = star(η)`.
pub fn star(eta: &EInt) -> Result<EInt> {
    Ok(star_of(&factor(eta)?))
}

/// [`star`] from an existing factorization.
pub fn star_of(factorization: &Factorization) -> EInt {
    factorization
        .factors
        .iter()
        .fold(EInt::one(), |acc, (p, e)| &acc * &p.pow(*e))
}

/// The complex sum-of-divisors σ(η), by the product of geometric sums.
///
/// σ(unit) = 1 and σ(εη) = σ(η) for every unit ε, since associates share a
/// factorization up to the discarded unit.
pub fn sigma(eta: &EInt) -> Result<EInt> {
    Ok(sigma_of(&factor(eta)?))
}

/// [`sigma`] from an existing factorization.
pub fn sigma_of(factorization: &Factorization) -> EInt {
    factorization
        .factors
        .iter()
        .fold(EInt::one(), |acc, (p, e)| &acc * &geometric_sum(p, *e))
}

/// 1 + p + ⋯ + p^e, exactly.
pub(crate) fn geometric_sum(p: &EInt, e: u32) -> EInt {
    let mut sum = EInt::one();
    let mut power = EInt::one();
    for _ in 0..e {
        power = &power * p;
        sum = &sum + &power;
    }
    sum
}

/// All canonical divisors of η: products of canonical prime powers with
/// exponents bounded by the factorization of η. Contains 1 (the empty
/// product) and η* itself; cardinality is Π (eᵢ + 1).
///
/// Divisors need not lie in the first sextant themselves — e.g. the
/// canonical divisor (3+ω)(3+2ω) = 7+7ω sits in the second.
pub fn canonical_divisors(eta: &EInt) -> Result<Vec<EInt>> {
    let factorization = factor(eta)?;
    let mut count: u64 = 1;
    for (_, e) in &factorization.factors {
        count = count
            .checked_mul(u64::from(*e) + 1)
            .filter(|c| *c <= MAX_DIVISOR_ENUMERATION)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "divisor enumeration for {eta} exceeds {MAX_DIVISOR_ENUMERATION}"
                ))
            })?;
    }
    let mut divisors = vec![EInt::one()];
    for (p, e) in &factorization.factors {
        let mut extended = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut power = d.clone();
            extended.push(power.clone());
            for _ in 0..*e {
                power = &power * p;
                extended.push(power.clone());
            }
        }
        divisors = extended;
    }
    divisors.sort_by_cached_key(|d| (d.norm(), d.a().clone(), d.b().clone()));
    Ok(divisors)
}

/// σ(η) by direct summation over [`canonical_divisors`]; must agree with
/// [`sigma`] everywhere it is feasible to run.
pub fn sigma_oracle(eta: &EInt) -> Result<EInt> {
    let divisors = canonical_divisors(eta)?;
    Ok(divisors.iter().fold(EInt::zero(), |acc, d| &acc + d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eint::Unit;
    use num_bigint::BigUint;

    fn e(a: i64, b: i64) -> EInt {
        EInt::new(a, b)
    }

    #[test]
    fn star_examples() {
        // (1−ω)²(ω+3)⁷  ↦  (ω+2)²(ω+3)⁷
        let eta = &e(1, -1).pow(2) * &e(3, 1).pow(7);
        let expected = &e(2, 1).pow(2) * &e(3, 1).pow(7);
        assert_eq!(star(&eta).unwrap(), expected);

        assert_eq!(star(&EInt::one()).unwrap(), EInt::one());
        assert_eq!(star(&e(7, 0)).unwrap(), e(7, 7)); // (3+ω)(3+2ω)
    }

    #[test]
    fn star_is_idempotent() {
        for (a, b) in [(7, 0), (1, -1), (6, 4), (-9, 2), (12, -5)] {
            let once = star(&e(a, b)).unwrap();
            assert_eq!(star(&once).unwrap(), once);
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&e(2, 1)).unwrap(), e(3, 1)); // 1 + τ
        assert_eq!(sigma(&EInt::one()).unwrap(), EInt::one());
        assert_eq!(sigma(&e(7, 0)).unwrap(), e(14, 10));
    }

    #[test]
    fn divisor_set_examples() {
        let ds = canonical_divisors(&e(7, 0)).unwrap();
        assert_eq!(ds, vec![EInt::one(), e(3, 1), e(3, 2), e(7, 7)]);

        let ds = canonical_divisors(&e(4, 1)).unwrap(); // prime, norm 13
        assert_eq!(ds, vec![EInt::one(), e(4, 1)]);

        let ds = canonical_divisors(&EInt::one()).unwrap();
        assert_eq!(ds, vec![EInt::one()]);
    }

    #[test]
    fn divisor_set_shape() {
        let eta = &e(2, 1).pow(3) * &e(3, 2).pow(2); // exponents 3 and 2
        let ds = canonical_divisors(&eta).unwrap();
        assert_eq!(ds.len(), 4 * 3);
        assert!(ds.contains(&EInt::one()));
        assert!(ds.contains(&star(&eta).unwrap()));
    }

    #[test]
    fn divisor_enumeration_budget() {
        // seven primes at exponent 7 give 8^7 > 2^20 divisors
        let smooth = EInt::new(2i64 * 5 * 11 * 17 * 23 * 29 * 41, 0).pow(7);
        match canonical_divisors(&smooth) {
            Err(crate::error::Error::BudgetExceeded(_)) => {}
            other => panic!("expected budget failure, got {other:?}"),
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(sigma_oracle(&e(7, 0)).unwrap(), e(14, 10));
        assert_eq!(sigma_oracle(&e(2, 0)).unwrap(), e(3, 0));
        assert_eq!(sigma_oracle(&e(4, 0)).unwrap(), e(7, 0));
    }

    #[test]
    fn oracle_agrees_with_product_form_small() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let eta = e(a, b);
                if eta.is_zero() || eta.norm() > BigUint::from(150u32) {
                    continue;
                }
                assert_eq!(
                    sigma(&eta).unwrap(),
                    sigma_oracle(&eta).unwrap(),
                    "eta = {eta}"
                );
            }
        }
    }

    #[test]
    fn sigma_is_associate_invariant() {
        for (a, b) in [(7, 0), (5, 4), (6, 4), (-3, 8), (2, 1)] {
            let eta = e(a, b);
            let reference = sigma(&eta).unwrap();
            for unit in Unit::ALL {
                let assoc = &unit.to_eint() * &eta;
                assert_eq!(
                    sigma(&assoc).unwrap(),
                    reference,
                    "eta = {eta}, unit = {unit}"
                );
            }
        }
    }

    #[test]
    fn sigma_multiplicative_on_coprime_pairs() {
        let pairs = [
            (e(2, 1), e(3, 1)),
            (e(2, 0), e(7, 0)),
            (e(4, 1), e(2, 1)),
            (e(5, 0), e(3, 2)),
        ];
        for (x, y) in pairs {
            assert_eq!(x.gcd(&y), EInt::one(), "pair must be coprime");
            let prod = &x * &y;
            assert_eq!(
                sigma(&prod).unwrap(),
                &sigma(&x).unwrap() * &sigma(&y).unwrap(),
                "x = {x}, y = {y}"
            );
        }
    }

    #[test]
    fn sigma_prime_power_law() {
        // σ(π^k)·(π − 1) = π^{k+1} − 1 for canonical primes π
        for pi in [e(2, 1), e(3, 1), e(3, 2), e(2, 0), e(4, 1)] {
            for k in 1u32..=6 {
                let lhs = &sigma(&pi.pow(k)).unwrap() * &(&pi - &EInt::one());
                let rhs = &pi.pow(k + 1) - &EInt::one();
                assert_eq!(lhs, rhs, "pi = {pi}, k = {k}");
            }
        }
    }

    #[test]
    fn sigma_restricted_to_inert_products_is_rational() {
        // products of powers of rational primes ≡ 2 (mod 3) behave like the
        // rational sum-of-divisors
        let rational_sigma = |n: u64| -> u64 { (1..=n).filter(|d| n % d == 0).sum() };
        for n in [2u64, 4, 5, 8, 10, 11, 17, 20, 22, 40, 55, 88, 100] {
            assert_eq!(
                sigma(&EInt::new(n as i64, 0)).unwrap(),
                EInt::new(rational_sigma(n) as i64, 0),
                "n = {n}"
            );
        }
    }

    #[test]
    fn sigma_on_split_and_ramified_rationals_leaves_the_rationals() {
        // the rational-integer reading does not extend across split or
        // ramified primes: these values are genuinely complex
        assert_eq!(sigma(&e(7, 0)).unwrap(), e(14, 10)); // not 8
        assert_eq!(sigma(&e(3, 0)).unwrap(), e(6, 4)); // not 4
    }
}
