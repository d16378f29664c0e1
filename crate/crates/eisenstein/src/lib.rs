//! Exact arithmetic and multiplicative number theory in the ring of
//! Eisenstein integers Z[ω].
//!
//! The crate provides, bottom to top:
//!
//! - [`eint`]: the value type [`EInt`] with ring operations, norms, units,
//!   sextant classification, Euclidean division and gcd — all exact.
//! - [`primes`]: rational and Eisenstein primality, splitting of rational
//!   primes, and unique factorization into canonical first-sextant primes.
//! - [`divisors`]: the first-sextant normal form `η*`, the complex
//!   sum-of-divisors function σ, and a brute-force divisor-sum oracle.
//! - [`mersenne`]: Mersenne analogues `M_k = σ(τ^{k−1})` for a prime τ,
//!   with closed forms for τ = ω+2 indexed by k mod 12.
//! - [`perfect`]: verification of σ(η) = τη (and its norm form),
//!   Euclid-style candidate construction, and bounded exhaustive search.
//! - [`bounds`]: exact rational verification of the geometric-sum norm
//!   inequalities used by the characterization arguments.
//!
//! ```
//! use eisenstein::divisors::sigma;
//! use eisenstein::eint::EInt;
//! use eisenstein::perfect::{construct_candidate, verify};
//!
//! // σ(7) = (1 + (3+ω))(1 + (3+2ω)) = 14 + 10ω
//! assert_eq!(sigma(&EInt::new(7, 0))?, EInt::new(14, 10));
//!
//! // the smallest norm-perfect witness for τ = ω + 2: τ^10 · conj(M_11)
//! let tau = EInt::new(2, 1);
//! let eta = construct_candidate(&tau, 11, true)?;
//! let verdict = verify(&tau, &eta)?;
//! assert!(verdict.is_norm_perfect && !verdict.is_perfect);
//! # Ok::<(), eisenstein::Error>(())
//! ```

pub mod bounds;
pub mod divisors;
pub mod eint;
pub mod error;
pub mod mersenne;
pub mod perfect;
pub mod primes;

pub use eint::{EInt, Sextant, Unit};
pub use error::{Error, Result};
pub use primes::{Confidence, Factorization, Primality, SplitClass};
