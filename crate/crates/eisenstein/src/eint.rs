//! Exact ring arithmetic in Z[ω], where ω = e^{2πi/3} satisfies ω² = −1 − ω.
//!
//! Elements are stored as coefficient pairs `a + bω` with arbitrary-precision
//! integers. Everything here is exact: no floating point is used anywhere,
//! including the angular (sextant) classification, which reduces to integer
//! sign tests.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An Eisenstein integer `a + bω`.
///
/// Equality is coefficient-wise; associates compare unequal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EInt {
    a: BigInt,
    b: BigInt,
}

impl EInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        EInt::new(0, 0)
    }

    pub fn one() -> Self {
        EInt::new(1, 0)
    }

    pub fn omega() -> Self {
        EInt::new(0, 1)
    }

    /// Coefficient of 1.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coefficient of ω.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// `a² − ab + b²`, the squared complex modulus. Zero only for zero.
    pub fn norm(&self) -> BigUint {
        let n = &self.a * &self.a - &self.a * &self.b + &self.b * &self.b;
        n.to_biguint().expect("norm is non-negative")
    }

    /// Complex conjugate: since ω̄ = −1 − ω, `conj(a + bω) = (a − b) − bω`.
    pub fn conj(&self) -> EInt {
        EInt {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// An element is a unit exactly when its norm is 1.
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Exponentiation by repeated squaring; `pow(_, 0)` is 1.
    pub fn pow(&self, e: u32) -> EInt {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = EInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True iff the argument of the element lies in [0, π/3).
    ///
    /// In coefficients this is `b ≥ 0 && a > b`: with x = a − b/2 and
    /// y = b·√3/2, the condition 0 ≤ Arg < π/3 unfolds to y ≥ 0 and
    /// y < √3·x, i.e. b ≥ 0 and b < a.
    pub fn is_first_sextant(&self) -> bool {
        !self.is_zero() && !self.b.is_negative() && self.a > self.b
    }

    /// The sextant (1..=6) containing this element.
    pub fn sextant(&self) -> Result<Sextant> {
        let (unit, _) = self.canonicalize()?;
        // rho^k * self lands in sextant 1  =>  self sits k sextants below it
        Ok(Sextant::new(1 + (6 - unit.power()) % 6).unwrap())
    }

    /// The unit ε and first-sextant associate εη, with εη uniquely determined.
    pub fn canonicalize(&self) -> Result<(Unit, EInt)> {
        if self.is_zero() {
            return Err(Error::ZeroOperand("canonicalize"));
        }
        for unit in Unit::ALL {
            let candidate = &unit.to_eint() * self;
            if candidate.is_first_sextant() {
                return Ok((unit, candidate));
            }
        }
        unreachable!("every nonzero element has a first-sextant associate")
    }

    /// The unique associate of `self` lying in sextant `s`.
    pub fn assoc_in_sextant(&self, s: Sextant) -> Result<EInt> {
        let (_, canonical) = self.canonicalize()?;
        Ok(&Unit::rho_power(s.index() - 1).to_eint() * &canonical)
    }

    /// Euclidean division: returns (q, r) with `self = q·rhs + r` and
    /// `N(r) < N(rhs)`.
    ///
    /// The quotient is self·conj(rhs)/N(rhs) over the rationals in the
    /// (1, ω) basis, each coordinate rounded to the nearest integer with
    /// ties toward −∞. Nearest rounding gives N(r) ≤ (3/4)·N(rhs); the tie
    /// rule only pins down determinism.
    pub fn divmod(&self, rhs: &EInt) -> Result<(EInt, EInt)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = BigInt::from(rhs.norm());
        let exact = self * &rhs.conj();
        let q = EInt {
            a: round_half_down(exact.a, &n),
            b: round_half_down(exact.b, &n),
        };
        let r = self - &(&q * rhs);
        debug_assert!(r.norm() < rhs.norm());
        Ok((q, r))
    }

    /// `self / rhs` when the division is exact, `None` otherwise.
    pub fn exact_div(&self, rhs: &EInt) -> Result<Option<EInt>> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = BigInt::from(rhs.norm());
        let num = self * &rhs.conj();
        let (qa, ra) = num.a.div_rem(&n);
        if !ra.is_zero() {
            return Ok(None);
        }
        let (qb, rb) = num.b.div_rem(&n);
        if !rb.is_zero() {
            return Ok(None);
        }
        Ok(Some(EInt { a: qa, b: qb }))
    }

    /// A greatest common divisor, canonicalized to the first sextant so the
    /// result is unique. `gcd(0, 0) = 0` by convention.
    pub fn gcd(&self, other: &EInt) -> EInt {
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let (_, r) = x.divmod(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            x.canonicalize().expect("nonzero").1
        }
    }
}

/// Nearest integer to `num/den` (den > 0), ties toward −∞.
fn round_half_down(num: BigInt, den: &BigInt) -> BigInt {
    // ceil((2num − den) / (2den)) = −floor((den − 2num) / (2den))
    let two_den = den * 2;
    let flipped: BigInt = den - num * 2;
    -flipped.div_floor(&two_den)
}

impl Add for &EInt {
    type Output = EInt;
    fn add(self, rhs: &EInt) -> EInt {
        EInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &EInt {
    type Output = EInt;
    fn sub(self, rhs: &EInt) -> EInt {
        EInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &EInt {
    type Output = EInt;
    // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω, using ω² = −1 − ω
    fn mul(self, rhs: &EInt) -> EInt {
        let bd = &self.b * &rhs.b;
        EInt {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        }
    }
}

impl Neg for &EInt {
    type Output = EInt;
    fn neg(self) -> EInt {
        EInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_value_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for EInt {
            type Output = EInt;
            fn $method(self, rhs: EInt) -> EInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&EInt> for EInt {
            type Output = EInt;
            fn $method(self, rhs: &EInt) -> EInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_value_binop!(Add, add);
forward_value_binop!(Sub, sub);
forward_value_binop!(Mul, mul);

impl Neg for EInt {
    type Output = EInt;
    fn neg(self) -> EInt {
        -&self
    }
}

impl From<i64> for EInt {
    fn from(v: i64) -> Self {
        EInt::new(v, 0)
    }
}

impl From<BigInt> for EInt {
    fn from(v: BigInt) -> Self {
        EInt {
            a: v,
            b: BigInt::zero(),
        }
    }
}

impl From<BigUint> for EInt {
    fn from(v: BigUint) -> Self {
        EInt {
            a: v.into(),
            b: BigInt::zero(),
        }
    }
}

/// One of the six units of Z[ω], stored as the exponent of ρ = 1 + ω,
/// the primitive sixth root of unity e^{iπ/3}.
///
/// Multiplying by ρ rotates by π/3, so ρ^k walks through all six sextants.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);

    /// All six units in rotation order: 1, 1+ω, ω, −1, −1−ω, −ω.
    pub const ALL: [Unit; 6] = [Unit(0), Unit(1), Unit(2), Unit(3), Unit(4), Unit(5)];

    /// ρ^k for any k.
    pub fn rho_power(k: u8) -> Unit {
        Unit(k % 6)
    }

    /// The exponent k with this unit equal to ρ^k, 0 ≤ k < 6.
    pub fn power(&self) -> u8 {
        self.0
    }

    pub fn to_eint(&self) -> EInt {
        // (a, b) coefficients of rho^k
        const TABLE: [(i64, i64); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];
        let (a, b) = TABLE[self.0 as usize];
        EInt::new(a, b)
    }

    /// Recognize a unit value; `None` if the element is not one of the six.
    pub fn from_eint(value: &EInt) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| u.to_eint() == *value)
    }

    pub fn mul(&self, other: Unit) -> Unit {
        Unit((self.0 + other.0) % 6)
    }

    pub fn inverse(&self) -> Unit {
        Unit((6 - self.0) % 6)
    }

    /// Conjugation maps ρ^k to ρ^{−k}.
    pub fn conj(&self) -> Unit {
        self.inverse()
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_eint())
    }
}

/// One of the six half-open angular regions of width π/3 that partition
/// the nonzero elements of Z[ω].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Sextant(u8);

impl Sextant {
    pub const FIRST: Sextant = Sextant(1);

    pub fn new(index: u8) -> Result<Sextant> {
        if (1..=6).contains(&index) {
            Ok(Sextant(index))
        } else {
            Err(Error::InvalidArgument(format!(
                "sextant index {index} out of 1..=6"
            )))
        }
    }

    pub fn index(&self) -> u8 {
        self.0
    }
}

impl fmt::Display for Sextant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EInt {
    /// Canonical literal form: `w` denotes ω, zero terms are omitted and a
    /// unit coefficient prints as `w`, not `1w`. Examples: `0`, `7`, `-3w`,
    /// `2+w`, `5-4w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.format_canonical(f)
    }
}

impl EInt {
    fn format_canonical(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mut omega_term = String::new();
        let mag = self.b.abs();
        if self.b.is_negative() {
            omega_term.push('-');
        }
        if !mag.is_one() {
            omega_term.push_str(&mag.to_string());
        }
        omega_term.push('w');
        if self.a.is_zero() {
            return write!(f, "{omega_term}");
        }
        if !self.b.is_negative() {
            write!(f, "{}+{omega_term}", self.a)
        } else {
            write!(f, "{}{omega_term}", self.a)
        }
    }
}

impl FromStr for EInt {
    type Err = Error;

    /// Parse an Eisenstein literal: `INT`, `[±]INTw`, `INT±INTw`,
    /// `±INTw±INT`, with optional spaces, `w` for ω and an optional
    /// coefficient on the ω term (`w` alone means 1ω).
    fn from_str(s: &str) -> Result<EInt> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::ParseLiteral(s.to_string()));
        }
        let err = || Error::ParseLiteral(s.to_string());

        // Cut into at most two signed terms.
        let mut terms: Vec<&str> = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        if terms.len() > 2 {
            return Err(err());
        }

        let mut a: Option<BigInt> = None;
        let mut b: Option<BigInt> = None;
        for term in terms {
            if let Some(coeff) = term.strip_suffix('w') {
                if b.is_some() {
                    return Err(err());
                }
                b = Some(match coeff {
                    "" | "+" => BigInt::one(),
                    "-" => -BigInt::one(),
                    digits => digits.parse().map_err(|_| err())?,
                });
            } else {
                if a.is_some() {
                    return Err(err());
                }
                a = Some(term.parse().map_err(|_| err())?);
            }
        }
        Ok(EInt {
            a: a.unwrap_or_else(BigInt::zero),
            b: b.unwrap_or_else(BigInt::zero),
        })
    }
}

impl fmt::Debug for EInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.format_canonical(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EInt {
        EInt::new(a, b)
    }

    #[test]
    fn multiplication_uses_omega_relation() {
        // (2+ω)(3+ω) = 6 + 5ω + ω² = 5 + 4ω
        assert_eq!(&e(2, 1) * &e(3, 1), e(5, 4));
        assert_eq!(e(0, 1).pow(2), e(-1, -1)); // ω² = −1−ω
        assert_eq!(e(0, 1).pow(3), e(1, 0)); // ω³ = 1
    }

    #[test]
    fn conjugation() {
        assert_eq!(e(3, 1).conj(), e(2, -1));
        assert_eq!(e(2, 1).conj().conj(), e(2, 1));
        let x = e(5, -3);
        let y = e(-2, 7);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn norms() {
        assert_eq!(e(2, 1).norm(), 3u32.into());
        assert_eq!(e(3, 1).norm(), 7u32.into());
        assert_eq!((&e(2, 1) * &e(3, 1)).norm(), 21u32.into());
        assert_eq!(e(0, 0).norm(), 0u32.into());
    }

    #[test]
    fn unit_powers_of_rho() {
        let rho = e(1, 1);
        assert_eq!(rho.pow(6), EInt::one());
        for unit in Unit::ALL {
            assert_eq!(unit.to_eint(), rho.pow(unit.power() as u32));
            assert!(unit.to_eint().is_unit());
            assert_eq!(unit.to_eint().conj(), unit.conj().to_eint());
        }
        // closed under multiplication
        for u in Unit::ALL {
            for v in Unit::ALL {
                let prod = &u.to_eint() * &v.to_eint();
                assert_eq!(Unit::from_eint(&prod), Some(u.mul(v)));
            }
        }
    }

    #[test]
    fn is_unit_by_norm() {
        assert!(e(1, 1).is_unit());
        assert!(!e(2, 1).is_unit());
        assert!(!EInt::zero().is_unit());
    }

    #[test]
    fn sextant_boundaries() {
        assert_eq!(e(1, 0).sextant().unwrap().index(), 1);
        assert_eq!(e(1, 1).sextant().unwrap().index(), 2); // Arg = π/3 belongs to sextant 2
        assert_eq!(e(-1, 0).sextant().unwrap().index(), 4); // Arg = π belongs to sextant 4
        assert_eq!(e(0, 1).sextant().unwrap().index(), 3); // ω at 2π/3
        assert_eq!(e(3, 1).sextant().unwrap().index(), 1);
        assert!(EInt::zero().sextant().is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let (u, c) = e(1, -1).canonicalize().unwrap();
        assert_eq!((u.to_eint(), c), (e(1, 1), e(2, 1)));
        let (u, c) = e(5, 0).canonicalize().unwrap();
        assert_eq!((u.to_eint(), c), (e(1, 0), e(5, 0)));
        let (u, c) = e(2, -1).canonicalize().unwrap();
        assert_eq!((u.to_eint(), c), (e(1, 1), e(3, 2)));
    }

    #[test]
    fn associates_by_sextant() {
        let s = |i| Sextant::new(i).unwrap();
        assert_eq!(e(1, 0).assoc_in_sextant(s(2)).unwrap(), e(1, 1));
        assert_eq!(e(2, 1).assoc_in_sextant(s(1)).unwrap(), e(2, 1));
        assert_eq!(e(7, 0).assoc_in_sextant(s(2)).unwrap(), e(7, 7));
        // consistency with canonicalize
        let eta = e(-4, 9);
        assert_eq!(
            eta.assoc_in_sextant(s(1)).unwrap(),
            eta.canonicalize().unwrap().1
        );
    }

    #[test]
    fn divmod_contract() {
        let (q, r) = e(7, 0).divmod(&e(3, 1)).unwrap();
        assert_eq!((q, r), (e(2, -1), EInt::zero()));

        let (q, r) = e(5, 0).divmod(&e(2, 0)).unwrap();
        assert_eq!(e(5, 0), &(&q * &e(2, 0)) + &r);
        assert!(r.norm() < 4u32.into());
        // 5/2 = 2.5 rounds to 2 under ties-toward-−∞
        assert_eq!(q, e(2, 0));

        let (q, r) = EInt::zero().divmod(&e(4, -7)).unwrap();
        assert_eq!((q, r), (EInt::zero(), EInt::zero()));

        assert!(e(1, 0).divmod(&EInt::zero()).is_err());
    }

    #[test]
    fn round_half_down_ties() {
        let r = |n: i64, d: i64| round_half_down(BigInt::from(n), &BigInt::from(d));
        assert_eq!(r(5, 2), BigInt::from(2)); // 2.5 -> 2
        assert_eq!(r(-5, 2), BigInt::from(-3)); // -2.5 -> -3
        assert_eq!(r(3, 4), BigInt::from(1)); // 0.75 -> 1
        assert_eq!(r(1, 4), BigInt::from(0)); // 0.25 -> 0
        assert_eq!(r(-1, 2), BigInt::from(-1)); // -0.5 -> -1
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(e(7, 0).gcd(&e(3, 1)), e(3, 1));
        assert_eq!(e(9, -2).gcd(&EInt::one()), EInt::one());
        assert_eq!(e(6, 4).gcd(&e(2, 0)), e(2, 0));
        assert_eq!(EInt::zero().gcd(&EInt::zero()), EInt::zero());
        // gcd(0, x) is the canonical associate of x
        assert_eq!(EInt::zero().gcd(&e(1, -1)), e(2, 1));
    }

    #[test]
    fn exact_division() {
        assert_eq!(e(7, 7).exact_div(&e(1, 1)).unwrap(), Some(e(7, 0)));
        assert_eq!(e(7, 0).exact_div(&e(2, 0)).unwrap(), None);
        let tau = e(2, 1);
        assert_eq!(tau.pow(2).exact_div(&tau).unwrap(), Some(tau.clone()));
        assert!(e(1, 0).exact_div(&EInt::zero()).is_err());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            (e(0, 0), "0"),
            (e(7, 0), "7"),
            (e(-3, 0), "-3"),
            (e(0, 1), "w"),
            (e(0, -1), "-w"),
            (e(0, -3), "-3w"),
            (e(2, 1), "2+w"),
            (e(5, -4), "5-4w"),
            (e(-1, 1), "-1+w"),
        ];
        for (value, text) in cases {
            assert_eq!(value.to_string(), text);
            assert_eq!(text.parse::<EInt>().unwrap(), value);
        }
        // parser also accepts the verbose and reordered spellings
        assert_eq!("2+1w".parse::<EInt>().unwrap(), e(2, 1));
        assert_eq!("+1w-2".parse::<EInt>().unwrap(), e(-2, 1));
        assert_eq!(" 2 + 3 w ".parse::<EInt>().unwrap(), e(2, 3));
        assert_eq!("-w+1".parse::<EInt>().unwrap(), e(1, -1));
        for bad in ["", "w+w", "2+3", "1+", "3x", "++2", "2w3"] {
            assert!(bad.parse::<EInt>().is_err(), "{bad:?} should not parse");
        }
    }
}
