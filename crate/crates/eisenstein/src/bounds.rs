//! Exact verification of the geometric-sum norm bounds that drive the
//! perfect-number characterization.
//!
//! For z = x + iy with x ≥ 5/4 and k ≥ 1, writing N for the squared
//! modulus:
//!
//! - strict bound:  N(1 + z + ⋯ + z^k) >  N(z)^{k−1}·(N(z) + 2x − 1)
//! - weak bound:    N(1 + z + ⋯ + z^k) ≥  N(z)^{k−1}·(N(z) + 2x + 1)
//!   whenever |y| ≤ x − 1, with equality exactly at k = 1.
//!
//! Everything is evaluated in exact rational arithmetic. Two coefficient
//! fields cover the points of interest: x + iy with both parts rational,
//! and u + vω with rational u, v (so y is a rational multiple of √3); in
//! both, all the compared quantities stay rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// Exact complex arithmetic with rational real part and squared modulus.
trait ExactComplex: Clone {
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn re(&self) -> BigRational;
    fn norm(&self) -> BigRational;
}

/// z = x + iy with rational x, y.
#[derive(Clone, Debug)]
struct RationalPoint {
    x: BigRational,
    y: BigRational,
}

impl ExactComplex for RationalPoint {
    fn one() -> Self {
        RationalPoint {
            x: BigRational::one(),
            y: BigRational::zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        RationalPoint {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        RationalPoint {
            x: &self.x * &other.x - &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        }
    }
    fn re(&self) -> BigRational {
        self.x.clone()
    }
    fn norm(&self) -> BigRational {
        &self.x * &self.x + &self.y * &self.y
    }
}

/// z = u + vω with rational u, v; then x = u − v/2 and y = v·√3/2.
#[derive(Clone, Debug)]
struct OmegaPoint {
    u: BigRational,
    v: BigRational,
}

impl ExactComplex for OmegaPoint {
    fn one() -> Self {
        OmegaPoint {
            u: BigRational::one(),
            v: BigRational::zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        OmegaPoint {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let vv = &self.v * &other.v;
        OmegaPoint {
            u: &self.u * &other.u - &vv,
            v: &self.u * &other.v + &self.v * &other.u - &vv,
        }
    }
    fn re(&self) -> BigRational {
        &self.u - &self.v / BigRational::from_integer(2.into())
    }
    fn norm(&self) -> BigRational {
        &self.u * &self.u - &self.u * &self.v + &self.v * &self.v
    }
}

/// Outcome of one exact bound evaluation.
#[derive(Clone, Debug)]
pub struct GeomBoundCheck {
    pub k: u32,
    /// N(1 + z + ⋯ + z^k).
    pub lhs: BigRational,
    /// N(z)^{k−1}·(N(z) + 2x − 1).
    pub rhs_strict: BigRational,
    /// N(z)^{k−1}·(N(z) + 2x + 1); present only when |y| ≤ x − 1.
    pub rhs_weak: Option<BigRational>,
    pub strict_holds: bool,
    pub weak_holds: Option<bool>,
    pub weak_equality: Option<bool>,
}

impl GeomBoundCheck {
    /// Both applicable bounds hold, and equality appears only at k = 1.
    pub fn ok(&self) -> bool {
        self.strict_holds
            && self.weak_holds.unwrap_or(true)
            && (self.k == 1 || !self.weak_equality.unwrap_or(false))
    }
}

fn five_fourths() -> BigRational {
    BigRational::new(BigInt::from(5), BigInt::from(4))
}

fn check_generic<T: ExactComplex>(z: &T, k: u32) -> Result<GeomBoundCheck> {
    if k == 0 {
        return Err(Error::InvalidArgument("bound check needs k >= 1".into()));
    }
    let x = z.re();
    if x < five_fourths() {
        return Err(Error::InvalidArgument(format!(
            "bound check needs Re(z) >= 5/4, got {x}"
        )));
    }
    let n_z = z.norm();
    let y_squared = &n_z - &x * &x;

    // 1 + z + ... + z^k
    let mut sum = T::one();
    let mut power = T::one();
    for _ in 0..k {
        power = power.mul(z);
        sum = sum.add(&power);
    }
    let lhs = sum.norm();

    let n_z_pow = n_z.pow((k - 1) as i32);
    let two_x = &x + &x;
    let one = BigRational::one();
    let rhs_strict = &n_z_pow * (&n_z + &two_x - &one);

    let x_minus_one = &x - &one;
    let weak_applies = y_squared <= &x_minus_one * &x_minus_one;
    let (rhs_weak, weak_holds, weak_equality) = if weak_applies {
        let rhs = &n_z_pow * (&n_z + &two_x + &one);
        let holds = lhs >= rhs;
        let equal = lhs == rhs;
        (Some(rhs), Some(holds), Some(equal))
    } else {
        (None, None, None)
    };

    Ok(GeomBoundCheck {
        k,
        strict_holds: lhs > rhs_strict,
        lhs,
        rhs_strict,
        rhs_weak,
        weak_holds,
        weak_equality,
    })
}

/// Check the bounds at z = x + iy with exact rational coordinates.
pub fn check_geom_bound(x: &BigRational, y: &BigRational, k: u32) -> Result<GeomBoundCheck> {
    check_generic(
        &RationalPoint {
            x: x.clone(),
            y: y.clone(),
        },
        k,
    )
}

/// Check the bounds at z = u + vω with exact rational coefficients, which
/// covers every Eisenstein integer and keeps all compared quantities
/// rational even though y = v·√3/2 is not.
pub fn check_geom_bound_eisenstein(
    u: &BigRational,
    v: &BigRational,
    k: u32,
) -> Result<GeomBoundCheck> {
    check_generic(
        &OmegaPoint {
            u: u.clone(),
            v: v.clone(),
        },
        k,
    )
}

/// Aggregate of a randomized bound sweep.
#[derive(Clone, Debug, Default)]
pub struct GeomBoundReport {
    pub samples: u64,
    pub strict_violations: u64,
    /// Samples where the weak bound applied (|y| ≤ x − 1).
    pub weak_checked: u64,
    pub weak_violations: u64,
    /// k = 1 samples with the weak bound applicable; each must be an equality.
    pub k1_weak_cases: u64,
    pub k1_equalities: u64,
    /// Weak-bound equalities at k ≥ 2; expected zero.
    pub spurious_equalities: u64,
}

impl GeomBoundReport {
    pub fn ok(&self) -> bool {
        self.strict_violations == 0
            && self.weak_violations == 0
            && self.spurious_equalities == 0
            && self.k1_equalities == self.k1_weak_cases
    }
}

/// Run `samples` pseudorandom bound checks with x ≥ 5/4 and k ≤ 30, split
/// between rational and Eisenstein-rational points. Deterministic in `seed`.
pub fn sample_geom_bounds(samples: u64, seed: u64) -> GeomBoundReport {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut report = GeomBoundReport {
        samples,
        ..Default::default()
    };

    for i in 0..samples {
        // x = 5/4 + a/b ≥ 5/4
        let x = five_fourths()
            + BigRational::new(
                BigInt::from(rng.gen_range(0..=48i64)),
                BigInt::from(rng.gen_range(1..=8i64)),
            );
        // half the samples keep |y| ≤ x − 1 so the weak branch gets exercised
        let y_mag: BigRational = if rng.gen_bool(0.5) {
            let num = rng.gen_range(0..=16i64);
            (&x - BigRational::one()) * BigRational::new(num.into(), BigInt::from(16))
        } else {
            BigRational::new(
                BigInt::from(rng.gen_range(0..=64i64)),
                BigInt::from(rng.gen_range(1..=8i64)),
            )
        };
        let y = if rng.gen_bool(0.5) { -y_mag } else { y_mag };
        let k = if i % 8 == 0 {
            1
        } else {
            rng.gen_range(1..=30u32)
        };

        let check = if rng.gen_bool(0.5) {
            check_geom_bound(&x, &y, k)
        } else {
            // same x, with y interpreted as t·√3: u = x + t, v = 2t
            let t = y;
            let u = &x + &t;
            let v = &t + &t;
            check_geom_bound_eisenstein(&u, &v, k)
        }
        .expect("sampled points satisfy the preconditions");

        if !check.strict_holds {
            report.strict_violations += 1;
        }
        if let Some(holds) = check.weak_holds {
            report.weak_checked += 1;
            if !holds {
                report.weak_violations += 1;
            }
            let equal = check.weak_equality.unwrap_or(false);
            if k == 1 {
                report.k1_weak_cases += 1;
                if equal {
                    report.k1_equalities += 1;
                }
            } else if equal {
                report.spurious_equalities += 1;
            }
        }
    }
    report
}
