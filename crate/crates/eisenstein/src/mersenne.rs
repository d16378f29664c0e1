//! Mersenne analogues M_k = σ(τ^{k−1}) = (τ^k − 1)/(τ − 1) for an
//! Eisenstein prime τ, and their norms A_k = N(M_k).
//!
//! [`mersenne`] is generic in τ. The closed forms ([`closed_form`],
//! [`closed_form_norm`]) are hard-bound to τ = ω + 2, where τ has modulus
//! √3 and argument π/6, so τ^k cycles with period 12 and both M_k and A_k
//! collapse to twelve residue-indexed formulas in powers of 3.

use num_bigint::{BigInt, BigUint};

use crate::divisors::geometric_sum;
use crate::eint::{EInt, Sextant};
use crate::error::{Error, Result};
use crate::primes::{is_prime, rational_is_prime, Confidence, Primality};

/// The prime the closed forms are specialized to.
pub fn omega_plus_two() -> EInt {
    EInt::new(2, 1)
}

/// M_k together with its norm and primality status.
#[derive(Clone, Debug)]
pub struct MersenneRecord {
    pub tau: EInt,
    pub k: u32,
    /// M_k = 1 + τ + ⋯ + τ^{k−1}.
    pub m: EInt,
    /// A_k = N(M_k).
    pub a_k: BigUint,
    pub prime_status: Primality,
}

/// Compute M_k for a prime τ and k ≥ 1, with primality of the result.
pub fn mersenne(tau: &EInt, k: u32) -> Result<MersenneRecord> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "mersenne index k must be at least 1".into(),
        ));
    }
    if !is_prime(tau).is_prime {
        return Err(Error::NotPrime(tau.to_string()));
    }
    let m = geometric_sum(tau, k - 1);
    debug_assert_eq!(
        &m * &(tau - &EInt::one()),
        &tau.pow(k) - &EInt::one(),
        "geometric sum identity"
    );
    let a_k = m.norm();
    let prime_status = is_prime(&m);
    Ok(MersenneRecord {
        tau: tau.clone(),
        k,
        m,
        a_k,
        prime_status,
    })
}

fn pow3(e: u32) -> BigInt {
    BigInt::from(3u32).pow(e)
}

/// A_k for τ = ω + 2 by the k mod 12 closed form, in integer powers of 3.
pub fn closed_form_norm(k: u32) -> BigUint {
    assert!(k >= 1);
    let k3 = pow3(k);
    // h = k/2 for even k, m1 = (k+1)/2 for odd k
    let value: BigInt = match k % 12 {
        0 => k3 - 2 * pow3(k / 2) + 1,
        1 | 11 => k3 - pow3((k + 1) / 2) + 1,
        2 | 10 => k3 - pow3(k / 2) + 1,
        3 | 9 => k3 + 1,
        4 | 8 => k3 + pow3(k / 2) + 1,
        5 | 7 => k3 + pow3((k + 1) / 2) + 1,
        6 => k3 + 2 * pow3(k / 2) + 1,
        _ => unreachable!(),
    };
    value.to_biguint().expect("norms are non-negative")
}

/// M_k for τ = ω + 2 by the k mod 12 closed form.
///
/// The tabulated rectangular forms x + iy translate to (a, b) coefficients
/// through x = a − b/2 and y = b·√3/2.
pub fn closed_form(k: u32) -> EInt {
    assert!(k >= 1);
    let one = BigInt::from(1);
    // h = 3^{k/2} for even rows, m = 3^{(k−1)/2} for odd rows
    let (a, b): (BigInt, BigInt) = match k % 12 {
        0 => (BigInt::ZERO, &one - pow3(k / 2)),
        1 => (pow3((k - 1) / 2), &one - pow3((k - 1) / 2)),
        2 => (pow3(k / 2), one),
        3 => (2 * pow3((k - 1) / 2), &one + pow3((k - 1) / 2)),
        4 => (pow3(k / 2), &one + pow3(k / 2)),
        5 => (pow3((k - 1) / 2), &one + 2 * pow3((k - 1) / 2)),
        6 => (BigInt::ZERO, &one + pow3(k / 2)),
        7 => (-pow3((k - 1) / 2), &one + pow3((k - 1) / 2)),
        8 => (-pow3(k / 2), one),
        9 => (-2 * pow3((k - 1) / 2), &one - pow3((k - 1) / 2)),
        10 => (-pow3(k / 2), &one - pow3(k / 2)),
        11 => (-pow3((k - 1) / 2), &one - 2 * pow3((k - 1) / 2)),
        _ => unreachable!(),
    };
    EInt::new(a, b)
}

/// The sextant of M_k for τ = ω + 2.
///
/// For k ≥ 2 this lands in sextant 6 when k ≡ 1 (mod 12) and sextant 5 when
/// k ≡ 11 (mod 12); k = 1 gives M₁ = 1 in sextant 1.
pub fn mersenne_sextant(k: u32) -> Sextant {
    closed_form(k).sextant().expect("M_k is nonzero")
}

/// Result of sweeping "M_k prime ⇒ k prime" up to kmax for τ = ω + 2.
#[derive(Clone, Debug)]
pub struct ExponentCheck {
    pub kmax: u32,
    /// k ≤ kmax with M_k (probably) prime.
    pub mersenne_primes: Vec<u32>,
    /// Mersenne-prime indices k that are rationally composite; expected empty.
    pub counterexamples: Vec<u32>,
    pub confidence: Confidence,
}

/// For every k ≤ kmax with M_k prime, check that k itself is prime.
pub fn check_prime_exponents(kmax: u32) -> ExponentCheck {
    let tau = omega_plus_two();
    let mut mersenne_primes = Vec::new();
    let mut counterexamples = Vec::new();
    let mut confidence = Confidence::Deterministic;
    for k in 2..=kmax {
        let record = mersenne(&tau, k).expect("tau prime, k >= 2");
        confidence = confidence.and(record.prime_status.confidence);
        if record.prime_status.is_prime {
            mersenne_primes.push(k);
            if !rational_is_prime(&BigUint::from(k)).is_prime {
                counterexamples.push(k);
            }
        }
    }
    ExponentCheck {
        kmax,
        mersenne_primes,
        counterexamples,
        confidence,
    }
}
