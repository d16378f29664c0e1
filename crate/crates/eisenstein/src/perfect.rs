//! τ-perfect and τ-norm-perfect verification and search.
//!
//! An element η is τ-perfect when σ(η) = τη and τ-norm-perfect when
//! N(σ(η)) = N(τη); every τ-perfect number is norm-perfect. For τ = ω + 2
//! the norm-perfect numbers divisible by τ are exactly the unit multiples
//! of τ^{p−1}M_p (p ≡ 1 mod 12) and τ^{p−1}·conj(M_p) (p ≡ 11 mod 12) with
//! M_p prime; [`verify_euclid_euler`] checks the construction direction
//! exactly, and [`search_norm_perfect`] sweeps a norm ball for the converse.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::divisors::sigma_of;
use crate::eint::EInt;
use crate::error::{Error, Result};
use crate::mersenne::{mersenne, omega_plus_two};
use crate::primes::{factor_with, is_prime, Confidence, FactorConfig, Primality, SpfSieve};

/// Exact certificate for one (τ, η) verification.
#[derive(Clone, Debug)]
pub struct PerfectVerdict {
    pub eta: EInt,
    pub tau: EInt,
    pub sigma_eta: EInt,
    pub n_sigma: BigUint,
    pub n_tau_eta: BigUint,
    /// σ(η) = τη, for this specific associate of η.
    pub is_perfect: bool,
    /// N(σ(η)) = N(τη); invariant under replacing η by an associate.
    pub is_norm_perfect: bool,
    pub confidence: Confidence,
}

/// Verify Def-style perfection exactly: factor η, expand σ, and compare.
/// All equality checks are exact; only the primality of large factors can
/// be probabilistic, and that is what `confidence` reports.
pub fn verify(tau: &EInt, eta: &EInt) -> Result<PerfectVerdict> {
    verify_with(tau, eta, &FactorConfig::default())
}

/// [`verify`] with explicit factoring effort limits.
pub fn verify_with(tau: &EInt, eta: &EInt, config: &FactorConfig) -> Result<PerfectVerdict> {
    let tau_primality = is_prime(tau);
    if !tau_primality.is_prime {
        return Err(Error::NotPrime(tau.to_string()));
    }
    if eta.is_zero() {
        return Err(Error::ZeroOperand("verify"));
    }
    let factorization = factor_with(eta, config)?;
    let sigma_eta = sigma_of(&factorization);
    let tau_eta = tau * eta;
    let n_sigma = sigma_eta.norm();
    let n_tau_eta = tau_eta.norm();
    Ok(PerfectVerdict {
        eta: eta.clone(),
        tau: tau.clone(),
        is_perfect: sigma_eta == tau_eta,
        is_norm_perfect: n_sigma == n_tau_eta,
        sigma_eta,
        n_sigma,
        n_tau_eta,
        confidence: factorization.confidence.and(tau_primality.confidence),
    })
}

/// The Euclid-style candidate τ^{p−1}·M_p, or τ^{p−1}·conj(M_p) when
/// `use_conjugate` is set. The unit factor is fixed to 1; associates are
/// reachable through [`EInt::assoc_in_sextant`].
pub fn construct_candidate(tau: &EInt, p: u32, use_conjugate: bool) -> Result<EInt> {
    if p < 2 {
        return Err(Error::InvalidArgument(
            "candidate exponent p must be at least 2".into(),
        ));
    }
    let record = mersenne(tau, p)?;
    let m = if use_conjugate {
        record.m.conj()
    } else {
        record.m
    };
    Ok(&tau.pow(p - 1) * &m)
}

/// Per-exponent outcome of the Euclid-Euler sweep.
#[derive(Clone, Debug)]
pub enum EuclidEulerOutcome {
    /// p mod 12 is not ±1, so no candidate exists at this exponent.
    ResidueExcluded,
    /// A_p failed the primality oracle, so the construction does not apply.
    MersenneComposite,
    /// The candidate was built and checked.
    Checked {
        verdict: PerfectVerdict,
        expected_perfect: bool,
        ok: bool,
    },
}

#[derive(Clone, Debug)]
pub struct EuclidEulerEntry {
    pub p: u32,
    pub a_p: BigUint,
    pub a_p_primality: Primality,
    pub outcome: EuclidEulerOutcome,
}

#[derive(Clone, Debug)]
pub struct EuclidEulerReport {
    pub pmax: u32,
    pub entries: Vec<EuclidEulerEntry>,
}

impl EuclidEulerReport {
    /// Every checked candidate was norm-perfect, and perfect exactly when
    /// p ≡ 1 (mod 12).
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| match &e.outcome {
            EuclidEulerOutcome::Checked { ok, .. } => *ok,
            _ => true,
        })
    }

    pub fn checked_exponents(&self) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, EuclidEulerOutcome::Checked { .. }))
            .map(|e| e.p)
            .collect()
    }
}

/// For τ = ω + 2 and every rational prime p ≤ pmax: when p ≡ ±1 (mod 12)
/// and A_p passes the primality oracle, build the prescribed candidate
/// (M_p for p ≡ 1, conj(M_p) for p ≡ 11) and verify norm-perfection
/// exactly; additionally require σ(η) = τη exactly iff p ≡ 1 (mod 12).
pub fn verify_euclid_euler(pmax: u32) -> Result<EuclidEulerReport> {
    let tau = omega_plus_two();
    let mut entries = Vec::new();
    for p in 2..=pmax {
        if !crate::primes::rational_is_prime(&BigUint::from(p)).is_prime {
            continue;
        }
        let record = mersenne(&tau, p)?;
        let residue = p % 12;
        let outcome = if residue != 1 && residue != 11 {
            EuclidEulerOutcome::ResidueExcluded
        } else if !record.prime_status.is_prime {
            EuclidEulerOutcome::MersenneComposite
        } else {
            let use_conjugate = residue == 11;
            let candidate = construct_candidate(&tau, p, use_conjugate)?;
            let verdict = verify(&tau, &candidate)?;
            let expected_perfect = residue == 1;
            let ok = verdict.is_norm_perfect && verdict.is_perfect == expected_perfect;
            EuclidEulerOutcome::Checked {
                verdict,
                expected_perfect,
                ok,
            }
        };
        entries.push(EuclidEulerEntry {
            p,
            a_p: record.a_k,
            a_p_primality: record.prime_status,
            outcome,
        });
    }
    Ok(EuclidEulerReport { pmax, entries })
}

/// Default norm-ball ceiling for [`search_norm_perfect`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Result of a bounded exhaustive search.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub tau: EInt,
    pub norm_bound: u64,
    /// First-sextant multiples of τ with norm within the bound.
    pub candidates_checked: u64,
    /// Norm-perfect findings, re-verified independently, sorted by norm.
    pub hits: Vec<PerfectVerdict>,
}

/// Enumerate every first-sextant η divisible by τ with N(η) ≤ norm_bound
/// and report all τ-norm-perfect ones. Associates are covered implicitly:
/// both sides of the norm-perfect equation are associate-invariant.
pub fn search_norm_perfect(tau: &EInt, norm_bound: u64) -> Result<SearchReport> {
    search_norm_perfect_with(tau, norm_bound, DEFAULT_SEARCH_BUDGET)
}

/// [`search_norm_perfect`] with an explicit enumeration budget; bounds
/// beyond the budget are refused outright rather than silently truncated.
pub fn search_norm_perfect_with(tau: &EInt, norm_bound: u64, budget: u64) -> Result<SearchReport> {
    if !is_prime(tau).is_prime {
        return Err(Error::NotPrime(tau.to_string()));
    }
    if norm_bound > budget {
        return Err(Error::BudgetExceeded(format!(
            "norm bound {norm_bound} exceeds search budget {budget}"
        )));
    }
    let tau_norm = match tau.norm().to_u64() {
        Some(n) if n <= norm_bound => n,
        // no multiple of τ fits in the ball
        _ => {
            return Ok(SearchReport {
                tau: tau.clone(),
                norm_bound,
                candidates_checked: 0,
                hits: Vec::new(),
            })
        }
    };
    let tau_small = Small {
        a: tau.a().to_i64().expect("norm bounds the coefficients") as i128,
        b: tau.b().to_i64().expect("norm bounds the coefficients") as i128,
    };

    let sieve = SpfSieve::new(norm_bound);
    let b_max = ((4 * norm_bound) / 3).isqrt();

    // disjoint b-stripes, each with a thread-local split cache
    let stripes: Vec<(u64, Vec<(i64, i64)>)> = (0..=b_max)
        .into_par_iter()
        .map_init(HashMap::<u64, Vec<Small>>::new, |cache, b| {
            search_stripe(b, norm_bound, tau_small, tau_norm, &sieve, cache)
        })
        .collect();

    let candidates_checked = stripes.iter().map(|(count, _)| count).sum();
    let mut hits = Vec::new();
    for (_, stripe_hits) in stripes {
        for (a, b) in stripe_hits {
            // independent re-verification through the full factoring path
            let eta = EInt::new(a, b);
            let verdict = verify(tau, &eta)?;
            if !verdict.is_norm_perfect {
                return Err(Error::InvalidArgument(format!(
                    "search hit {eta} failed independent re-verification"
                )));
            }
            hits.push(verdict);
        }
    }
    hits.sort_by_cached_key(|v| (v.eta.norm(), v.eta.a().clone(), v.eta.b().clone()));
    Ok(SearchReport {
        tau: tau.clone(),
        norm_bound,
        candidates_checked,
        hits,
    })
}

/// One b = const stripe of the first sextant: a runs over b < a ≤
/// (b + √(4B − 3b²))/2, exactly the a with a² − ab + b² ≤ B.
fn search_stripe(
    b: u64,
    bound: u64,
    tau: Small,
    tau_norm: u64,
    sieve: &SpfSieve,
    cache: &mut HashMap<u64, Vec<Small>>,
) -> (u64, Vec<(i64, i64)>) {
    let mut checked = 0u64;
    let mut hits = Vec::new();
    let disc = 4 * bound - 3 * b * b;
    let a_hi = (b + disc.isqrt()) / 2;
    let tau_conj = tau.conj();
    for a in (b + 1)..=a_hi {
        let eta = Small {
            a: a as i128,
            b: b as i128,
        };
        // divisibility by τ: η·conj(τ) must be 0 mod N(τ) in both coordinates
        let prod = eta.mul(&tau_conj);
        let n = i128::from(tau_norm);
        if prod.a % n != 0 || prod.b % n != 0 {
            continue;
        }
        checked += 1;
        let norm = (eta.norm()) as u64;
        if small_is_norm_perfect(eta, norm, tau_norm, sieve, cache) {
            hits.push((a as i64, b as i64));
        }
    }
    (checked, hits)
}

/// Word-sized Eisenstein arithmetic for the search hot path. Coefficients
/// stay far below i128 range for any norm bound the budget admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Small {
    a: i128,
    b: i128,
}

impl Small {
    fn one() -> Small {
        Small { a: 1, b: 0 }
    }
    fn mul(&self, rhs: &Small) -> Small {
        let bd = self.b * rhs.b;
        Small {
            a: self.a * rhs.a - bd,
            b: self.a * rhs.b + self.b * rhs.a - bd,
        }
    }
    fn add(&self, rhs: &Small) -> Small {
        Small {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
    fn conj(&self) -> Small {
        Small {
            a: self.a - self.b,
            b: -self.b,
        }
    }
    fn norm(&self) -> i128 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }
    fn exact_div(&self, rhs: &Small) -> Option<Small> {
        let n = rhs.norm();
        let num = self.mul(&rhs.conj());
        if num.a % n != 0 || num.b % n != 0 {
            return None;
        }
        Some(Small {
            a: num.a / n,
            b: num.b / n,
        })
    }
}

/// σ-vs-τη norm comparison entirely in word arithmetic, factoring the norm
/// through the sieve.
fn small_is_norm_perfect(
    eta: Small,
    norm: u64,
    tau_norm: u64,
    sieve: &SpfSieve,
    cache: &mut HashMap<u64, Vec<Small>>,
) -> bool {
    let mut rest = eta;
    let mut sigma = Small::one();
    for (q, _) in &sieve.factor(norm).factors {
        let q = q.to_u64().expect("sieve primes are word-sized");
        let primes = cache.entry(q).or_insert_with(|| {
            let class =
                crate::primes::split_known_prime(&BigUint::from(q)).expect("sieve output is prime");
            class
                .primes()
                .iter()
                .map(|p| Small {
                    a: p.a()
                        .to_i64()
                        .expect("split primes of sieved norms are small")
                        as i128,
                    b: p.b()
                        .to_i64()
                        .expect("split primes of sieved norms are small")
                        as i128,
                })
                .collect()
        });
        for prime in primes.iter() {
            let mut power = Small::one();
            let mut geom = Small::one();
            while let Some(next) = rest.exact_div(prime) {
                rest = next;
                power = power.mul(prime);
                geom = geom.add(&power);
            }
            sigma = sigma.mul(&geom);
        }
    }
    debug_assert_eq!(rest.norm(), 1, "all prime factors stripped");
    sigma.norm() == i128::from(tau_norm) * i128::from(norm)
}

/// Report of the "2^k − 1 is never an Eisenstein prime" sweep.
#[derive(Clone, Debug)]
pub struct ObstructionCheck {
    pub kmax: u32,
    /// k with 2^k − 1 prime in Z[ω]; expected empty, since 2^k − 1 is
    /// ≡ 0 or 1 (mod 3) and its norm is a perfect square.
    pub counterexamples: Vec<u32>,
}

/// For 2 ≤ k ≤ kmax, confirm that the rational Mersenne number 2^k − 1 is
/// not prime in Z[ω].
pub fn check_two_mersenne_obstruction(kmax: u32) -> Result<ObstructionCheck> {
    if kmax < 2 {
        return Err(Error::InvalidArgument(
            "obstruction sweep needs kmax >= 2".into(),
        ));
    }
    let mut counterexamples = Vec::new();
    for k in 2..=kmax {
        let m = EInt::from((BigUint::from(1u32) << k) - 1u32);
        if is_prime(&m).is_prime {
            counterexamples.push(k);
        }
    }
    Ok(ObstructionCheck {
        kmax,
        counterexamples,
    })
}

/// N(σ(η)) against N(η): the ratio is at least 1, with equality exactly
/// for units. Compared through exact integers, no division.
#[derive(Clone, Debug)]
pub struct SigmaGrowth {
    pub eta: EInt,
    pub n_sigma: BigUint,
    pub n_eta: BigUint,
    pub holds: bool,
    pub is_equality: bool,
}

pub fn sigma_growth(eta: &EInt) -> Result<SigmaGrowth> {
    let sigma_eta = crate::divisors::sigma(eta)?;
    let n_sigma = sigma_eta.norm();
    let n_eta = eta.norm();
    Ok(SigmaGrowth {
        eta: eta.clone(),
        holds: n_sigma >= n_eta,
        is_equality: n_sigma == n_eta,
        n_sigma,
        n_eta,
    })
}
