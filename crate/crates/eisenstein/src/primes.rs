//! Rational and Eisenstein primality, prime splitting, and unique
//! factorization into canonical first-sextant primes.
//!
//! A rational prime p behaves in Z[ω] according to p mod 3: it ramifies
//! (p = 3, a unit times the square of one prime), splits (p ≡ 1, two
//! non-associate conjugate primes of norm p), or stays inert (p ≡ 2).
//! Factoring an Eisenstein integer therefore reduces to factoring its norm
//! and splitting each rational prime factor.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::eint::{EInt, Unit};
use crate::error::{Error, Result};

/// Whether a result was established exactly or by a randomized test with a
/// bounded error probability.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Confidence {
    Deterministic,
    Probabilistic,
}

impl Confidence {
    /// Combine: a chain of conclusions is only as certain as its weakest link.
    pub fn and(self, other: Confidence) -> Confidence {
        if self == Confidence::Deterministic && other == Confidence::Deterministic {
            Confidence::Deterministic
        } else {
            Confidence::Probabilistic
        }
    }

    pub fn is_deterministic(self) -> bool {
        self == Confidence::Deterministic
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Confidence::Deterministic => write!(f, "deterministic"),
            Confidence::Probabilistic => write!(f, "probabilistic"),
        }
    }
}

/// A primality answer together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primality {
    pub is_prime: bool,
    pub confidence: Confidence,
}

impl Primality {
    fn certain(is_prime: bool) -> Primality {
        Primality {
            is_prime,
            confidence: Confidence::Deterministic,
        }
    }
}

/// Default number of random Miller-Rabin rounds above the deterministic
/// range; 64 rounds bound the error by 4^−64 = 2^−128.
pub const DEFAULT_MR_ROUNDS: u32 = 64;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Strong-probable-prime bases that decide primality exactly below
/// [`deterministic_bound`].
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Largest n for which the twelve fixed bases are known decisive
/// (Sorenson & Webster): 318665857834031151167461 ≈ 3.2·10²³.
fn deterministic_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| "318665857834031151167461".parse().unwrap())
}

/// Primality of a rational integer with the default error bound.
pub fn rational_is_prime(n: &BigUint) -> Primality {
    rational_is_prime_with(n, DEFAULT_MR_ROUNDS)
}

/// Primality of a rational integer.
///
/// Below a fixed threshold (about 3.2·10²³) the answer is deterministic via
/// a fixed Miller-Rabin base set; above it, `rounds` random rounds are run
/// and a "prime" verdict is labeled probabilistic. "Composite" verdicts are
/// always deterministic: a Miller-Rabin witness is a proof.
pub fn rational_is_prime_with(n: &BigUint, rounds: u32) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::certain(false);
    }
    for p in SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return Primality::certain(true);
        }
        if (n % &p).is_zero() {
            return Primality::certain(false);
        }
    }
    if n < &BigUint::from(101u32 * 101) {
        // no prime factor ≤ 97 and below 101²
        return Primality::certain(true);
    }

    for base in MR_BASES {
        if !strong_probable_prime(n, &BigUint::from(base)) {
            return Primality::certain(false);
        }
    }
    if n < deterministic_bound() {
        return Primality::certain(true);
    }

    let mut rng = rng_for(n);
    let low = BigUint::from(2u32);
    let high = n - 2u32;
    for _ in 0..rounds {
        let base = rng.gen_biguint_range(&low, &high);
        if !strong_probable_prime(n, &base) {
            return Primality::certain(false);
        }
    }
    Primality {
        is_prime: true,
        confidence: Confidence::Probabilistic,
    }
}

/// Deterministically seeded generator so identical queries give identical
/// transcripts run to run.
fn rng_for(n: &BigUint) -> ChaCha20Rng {
    let mix = n
        .iter_u64_digits()
        .fold(0x9e37_79b9_7f4a_7c15u64, |acc, d| {
            acc.rotate_left(23) ^ d.wrapping_mul(0xff51_afd7_ed55_8ccd)
        });
    ChaCha20Rng::seed_from_u64(mix)
}

/// One strong-probable-prime round; `n` odd, ≥ 5.
fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().expect("n − 1 > 0");
    let d = &nm1 >> s;
    let b = base % n;
    if b.is_zero() {
        return true;
    }
    let mut x = b.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == nm1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Effort limits for [`rational_factor_with`].
#[derive(Clone, Debug)]
pub struct FactorConfig {
    /// Trial-divide by all candidates up to this bound first.
    pub trial_bound: u64,
    /// Total rho iterations allowed across all stubborn cofactors.
    pub rho_budget: u64,
    /// Random Miller-Rabin rounds for primality above the deterministic range.
    pub mr_rounds: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_budget: 8_000_000,
            mr_rounds: DEFAULT_MR_ROUNDS,
        }
    }
}

/// A complete rational factorization, ascending by prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactors {
    pub factors: Vec<(BigUint, u32)>,
    pub confidence: Confidence,
}

impl RationalFactors {
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Factor a positive rational integer with default effort limits.
pub fn rational_factor(n: &BigUint) -> Result<RationalFactors> {
    rational_factor_with(n, &FactorConfig::default())
}

/// Factor a positive rational integer: trial division up to the configured
/// bound, then Brent-cycle rho on whatever is left. Fails with
/// [`Error::FactorBudget`] if a cofactor resists within the budget.
pub fn rational_factor_with(n: &BigUint, config: &FactorConfig) -> Result<RationalFactors> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut confidence = Confidence::Deterministic;
    let mut m = n.clone();

    trial_divide(&mut m, config.trial_bound, &mut factors);

    if !m.is_one() {
        let mut budget = config.rho_budget;
        let mut rng = rng_for(&m);
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            let verdict = rational_is_prime_with(&c, config.mr_rounds);
            if verdict.is_prime {
                confidence = confidence.and(verdict.confidence);
                push_factor(&mut factors, c, 1);
                continue;
            }
            match pollard_brent(&c, &mut rng, &mut budget) {
                Some(d) => {
                    stack.push(&c / &d);
                    stack.push(d);
                }
                None => return Err(Error::FactorBudget(c.to_string())),
            }
        }
    }

    factors.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(RationalFactors {
        factors,
        confidence,
    })
}

fn push_factor(factors: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        factors.push((p, e));
    }
}

/// Strip every prime factor ≤ bound from `m`.
fn trial_divide(m: &mut BigUint, bound: u64, factors: &mut Vec<(BigUint, u32)>) {
    fn strip(p: u64, m: &mut BigUint, factors: &mut Vec<(BigUint, u32)>) {
        let big = BigUint::from(p);
        let mut e = 0u32;
        while (&*m % &big).is_zero() {
            *m /= &big;
            e += 1;
        }
        if e > 0 {
            push_factor(factors, big, e);
        }
    }
    for p in [2u64, 3] {
        if p > bound {
            return;
        }
        strip(p, m, factors);
    }
    // 6k±1 wheel; stop early once p² exceeds the remaining cofactor
    let mut p = 5u64;
    while p <= bound {
        if let Some(small) = m.to_u64() {
            if p.checked_mul(p).is_none_or(|sq| sq > small) {
                // remainder has no factor ≤ its square root: prime or 1
                if small > 1 {
                    strip(small, m, factors);
                }
                return;
            }
        }
        strip(p, m, factors);
        strip(p + 2, m, factors);
        p += 6;
    }
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
/// composite `n`, or `None` once the iteration budget is exhausted.
fn pollard_brent(n: &BigUint, rng: &mut ChaCha20Rng, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    while *budget > 0 {
        let c = rng.gen_biguint_range(&one, &(n - 2u32));
        let mut y = rng.gen_biguint_range(&one, n);
        let mut g = one.clone();
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut r: u64 = 1;
        let batch: u64 = 128;

        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let window = batch.min(r - k);
                for _ in 0..window {
                    y = (&y * &y + &c) % n;
                    q = if x > y { q * (&x - &y) } else { q * (&y - &x) } % n;
                }
                g = q.gcd(n);
                k += window;
                *budget = budget.saturating_sub(window);
                if *budget == 0 && g.is_one() {
                    return None;
                }
            }
            r *= 2;
        }
        if g == *n {
            // batched gcd overshot the collision; replay one step at a time
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        // unlucky parameters; retry with fresh (y, c)
    }
    None
}

/// How a rational prime sits inside Z[ω].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitClass {
    /// p = 3: a unit times the square of one prime.
    Ramified { prime: EInt },
    /// p ≡ 1 (mod 3): two non-associate conjugate primes of norm p.
    Split { primes: [EInt; 2] },
    /// p ≡ 2 (mod 3): p itself stays prime, with norm p².
    Inert { prime: EInt },
}

impl SplitClass {
    pub fn primes(&self) -> &[EInt] {
        match self {
            SplitClass::Ramified { prime } | SplitClass::Inert { prime } => {
                std::slice::from_ref(prime)
            }
            SplitClass::Split { primes } => primes,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SplitClass::Ramified { .. } => "ramified",
            SplitClass::Split { .. } => "split",
            SplitClass::Inert { .. } => "inert",
        }
    }
}

/// Split a rational prime into canonical Eisenstein primes.
///
/// Rejects composite input (probable primes above the deterministic range
/// are accepted).
pub fn split_prime(p: &BigUint) -> Result<SplitClass> {
    if !rational_is_prime(p).is_prime {
        return Err(Error::NotPrime(p.to_string()));
    }
    split_known_prime(p)
}

/// [`split_prime`] without the primality gate, for callers that already
/// hold a primality certificate for `p`.
pub(crate) fn split_known_prime(p: &BigUint) -> Result<SplitClass> {
    if *p == BigUint::from(3u32) {
        return Ok(SplitClass::Ramified {
            prime: EInt::new(2, 1),
        });
    }
    match (p % 3u32).to_u32().unwrap() {
        2 => Ok(SplitClass::Inert {
            prime: EInt::from(p.clone()),
        }),
        1 => {
            let first = if let Some(small) = p.to_u64().filter(|v| *v < (1 << 32)) {
                split_by_norm_equation(small)
            } else {
                split_by_modular_sqrt(p)?
            };
            debug_assert_eq!(first.norm(), *p);
            let second = first.conj().canonicalize().expect("prime is nonzero").1;
            let mut primes = [first, second];
            primes.sort();
            Ok(SplitClass::Split { primes })
        }
        _ => Err(Error::NotPrime(format!("{p} is divisible by 3"))),
    }
}

/// Solve a² − ab + b² = p by brute force over b; exact and plenty fast for
/// word-sized p. Only called for primes p ≡ 1 (mod 3).
fn split_by_norm_equation(p: u64) -> EInt {
    let mut b: u64 = 1;
    loop {
        let d = 4 * p - 3 * b * b;
        let s = d.isqrt();
        if s * s == d && (b + s) % 2 == 0 {
            let a = (b + s) / 2;
            let candidate = EInt::new(a as i64, b as i64);
            return candidate.canonicalize().expect("nonzero").1;
        }
        b += 1;
        debug_assert!(3 * b * b <= 4 * p, "norm equation must have a solution");
    }
}

/// Find a prime above p from a square root of −3 mod p: with c² ≡ −3, the
/// element (c − 1) − 2ω has norm c² + 3 ≡ 0 (mod p), so gcd(p, (c−1) − 2ω)
/// is a proper prime divisor of p.
fn split_by_modular_sqrt(p: &BigUint) -> Result<EInt> {
    let c = sqrt_mod(&(p - 3u32), p).ok_or_else(|| {
        Error::NotPrime(format!(
            "{p} admits no square root of -3; not a prime = 1 mod 3"
        ))
    })?;
    let z = EInt::new(BigInt::from(c) - 1, BigInt::from(-2));
    let pi = EInt::from(p.clone()).gcd(&z);
    if pi.norm() != *p {
        return Err(Error::NotPrime(format!(
            "{p} failed to split; composite input?"
        )));
    }
    Ok(pi)
}

/// Tonelli-Shanks square root mod an odd prime; `None` for non-residues.
fn sqrt_mod(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let a = a % p;
    if a.is_zero() {
        return Some(a);
    }
    let pm1 = p - &one;
    let legendre_exp = &pm1 >> 1;
    if a.modpow(&legendre_exp, p) != one {
        return None;
    }
    if (p % 4u32).to_u32() == Some(3) {
        return Some(a.modpow(&((p + 1u32) >> 2), p));
    }
    // p − 1 = q·2^s with q odd
    let s = pm1.trailing_zeros().expect("p > 1");
    let q = &pm1 >> s;
    let mut z = BigUint::from(2u32);
    while z.modpow(&legendre_exp, p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % p;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&(one.clone() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * &b % p;
    }
    Some(r)
}

/// Primality of an Eisenstein integer.
///
/// Units and zero are not prime; an element whose norm is a rational prime
/// is prime; the only other primes are associates of inert rational primes
/// q ≡ 2 (mod 3), recognizable by a square norm q².
pub fn is_prime(eta: &EInt) -> Primality {
    if eta.is_zero() || eta.is_unit() {
        return Primality::certain(false);
    }
    let n = eta.norm();
    let norm_verdict = rational_is_prime(&n);
    if norm_verdict.is_prime {
        return norm_verdict;
    }
    let s = n.sqrt();
    if &s * &s == n && (&s % 3u32).to_u32() == Some(2) {
        let s_verdict = rational_is_prime(&s);
        if s_verdict.is_prime {
            let canonical = eta.canonicalize().expect("nonzero").1;
            if canonical == EInt::from(s) {
                return s_verdict;
            }
        }
    }
    Primality::certain(false)
}

/// A unit together with canonical first-sextant primes and positive
/// exponents; `unit · Π primeᵉ` reproduces the factored value exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Unit,
    /// Sorted by (norm, a, b); primes are pairwise non-associate.
    pub factors: Vec<(EInt, u32)>,
    pub confidence: Confidence,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn value(&self) -> EInt {
        self.factors
            .iter()
            .fold(self.unit.to_eint(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// Factor a nonzero Eisenstein integer with default effort limits.
pub fn factor(eta: &EInt) -> Result<Factorization> {
    factor_with(eta, &FactorConfig::default())
}

/// Factor a nonzero Eisenstein integer: factor its norm, split each
/// rational prime, and read off exponents by repeated exact division.
pub fn factor_with(eta: &EInt, config: &FactorConfig) -> Result<Factorization> {
    if eta.is_zero() {
        return Err(Error::ZeroOperand("factor"));
    }
    let norm_factors = rational_factor_with(&eta.norm(), config)?;
    factor_with_norm_factorization(eta, &norm_factors)
}

/// Factor `eta` given a factorization of its norm (useful when the norm was
/// factored by other means, e.g. a sieve).
pub fn factor_with_norm_factorization(
    eta: &EInt,
    norm_factors: &RationalFactors,
) -> Result<Factorization> {
    if eta.is_zero() {
        return Err(Error::ZeroOperand("factor"));
    }
    let mut rest = eta.clone();
    let mut factors: Vec<(EInt, u32)> = Vec::new();
    for (q, norm_exp) in &norm_factors.factors {
        let split = split_known_prime(q)?;
        let weight: u32 = match split {
            SplitClass::Inert { .. } => 2,
            _ => 1,
        };
        let mut accounted = 0u32;
        for prime in split.primes() {
            let mut e = 0u32;
            while let Some(next) = rest.exact_div(prime)? {
                rest = next;
                e += 1;
            }
            if e > 0 {
                factors.push((prime.clone(), e));
                accounted += e * weight;
            }
        }
        if accounted != *norm_exp {
            return Err(Error::InvalidArgument(format!(
                "norm factor {q}^{norm_exp} inconsistent with element (accounted {accounted})"
            )));
        }
    }
    let unit = Unit::from_eint(&rest).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "non-unit cofactor {rest} left after stripping primes"
        ))
    })?;
    factors.sort_by_cached_key(|(p, _)| (p.norm(), p.a().clone(), p.b().clone()));
    Ok(Factorization {
        unit,
        factors,
        confidence: norm_factors.confidence,
    })
}

/// Smallest-prime-factor sieve for batch factorization of norms during
/// bounded searches. Built once, then read-only.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Sieve all integers up to `limit` (inclusive); `limit` must fit in u32.
    pub fn new(limit: u64) -> SpfSieve {
        assert!(limit < u32::MAX as u64, "sieve limit must fit in u32");
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2usize;
        while i <= n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Complete factorization of `1 ≤ n ≤ limit`; n = 1 gives the empty list.
    pub fn factor(&self, n: u64) -> RationalFactors {
        assert!(n >= 1 && n <= self.limit());
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((BigUint::from(p), e));
        }
        factors.sort_by(|x, y| x.0.cmp(&y.0));
        RationalFactors {
            factors,
            confidence: Confidence::Deterministic,
        }
    }
}
