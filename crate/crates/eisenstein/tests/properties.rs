//! Property tests for the ring axioms and the multiplicative structure:
//! norm multiplicativity, the unit group, sextant partitioning, the
//! Euclidean division contract, gcd laws, and σ's invariances.

use num_bigint::BigInt;
use proptest::prelude::*;

use eisenstein::divisors::{sigma, sigma_oracle};
use eisenstein::eint::{EInt, Sextant, Unit};
use eisenstein::primes::factor;

fn eint(range: i64) -> impl Strategy<Value = EInt> {
    (-range..=range, -range..=range).prop_map(|(a, b)| EInt::new(a, b))
}

fn nonzero_eint(range: i64) -> impl Strategy<Value = EInt> {
    eint(range).prop_filter("nonzero", |e| !e.is_zero())
}

/// Arbitrary-precision coefficients, up to ~1000 decimal digits.
fn huge_eint() -> impl Strategy<Value = EInt> {
    let coeff = prop::collection::vec(any::<u8>(), 1..=415)
        .prop_map(|bytes| BigInt::from_signed_bytes_le(&bytes));
    (coeff.clone(), coeff).prop_map(|(a, b)| EInt::new(a, b))
}

proptest! {
    #[test]
    fn norm_is_completely_multiplicative(x in huge_eint(), y in huge_eint()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn conjugation_is_an_involutive_ring_homomorphism(x in eint(1000), y in eint(1000)) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().norm(), x.norm());
    }

    #[test]
    fn euclidean_division_contract(x in eint(10_000), y in nonzero_eint(10_000)) {
        let (q, r) = x.divmod(&y).unwrap();
        prop_assert_eq!(&(&q * &y) + &r, x);
        prop_assert!(r.norm() < y.norm());
    }

    #[test]
    fn gcd_divides_both_and_is_divisible_by_common_divisors(
        d in nonzero_eint(30),
        x in nonzero_eint(30),
        y in nonzero_eint(30),
    ) {
        let alpha = &d * &x;
        let beta = &d * &y;
        let g = alpha.gcd(&beta);
        prop_assert!(alpha.exact_div(&g).unwrap().is_some());
        prop_assert!(beta.exact_div(&g).unwrap().is_some());
        prop_assert!(g.exact_div(&d).unwrap().is_some());
    }

    #[test]
    fn gcd_is_associate_stable_and_canonical(x in nonzero_eint(200), y in nonzero_eint(200)) {
        let g = x.gcd(&y);
        prop_assert!(g.is_first_sextant());
        for unit in Unit::ALL {
            prop_assert_eq!((&unit.to_eint() * &x).gcd(&y), g.clone());
        }
    }

    #[test]
    fn sextant_is_a_partition(x in nonzero_eint(1000)) {
        // exactly one rotated copy of x lands in the first sextant
        let in_first = Unit::ALL
            .iter()
            .filter(|u| (&u.to_eint() * &x).is_first_sextant())
            .count();
        prop_assert_eq!(in_first, 1);
        // and the six associates cover each sextant exactly once
        let mut seen: Vec<u8> = Unit::ALL
            .iter()
            .map(|u| (&u.to_eint() * &x).sextant().unwrap().index())
            .collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn associates_within_a_sextant_are_unique(x in nonzero_eint(100), s in 1u8..=6) {
        let s = Sextant::new(s).unwrap();
        let assoc = x.assoc_in_sextant(s).unwrap();
        prop_assert_eq!(assoc.sextant().unwrap(), s);
        prop_assert_eq!(assoc.norm(), x.norm());
    }

    #[test]
    fn factorization_round_trips(x in nonzero_eint(120)) {
        let f = factor(&x).unwrap();
        prop_assert_eq!(f.value(), x);
    }

    #[test]
    fn sigma_is_associate_invariant(x in nonzero_eint(40)) {
        let reference = sigma(&x).unwrap();
        for unit in Unit::ALL {
            prop_assert_eq!(sigma(&(&unit.to_eint() * &x)).unwrap(), reference.clone());
        }
    }

    #[test]
    fn sigma_is_multiplicative_on_coprime_pairs(x in nonzero_eint(25), y in nonzero_eint(25)) {
        prop_assume!(x.gcd(&y) == EInt::one());
        prop_assert_eq!(sigma(&(&x * &y)).unwrap(), &sigma(&x).unwrap() * &sigma(&y).unwrap());
    }

    #[test]
    fn sigma_matches_oracle(x in nonzero_eint(20)) {
        prop_assert_eq!(sigma(&x).unwrap(), sigma_oracle(&x).unwrap());
    }

    #[test]
    fn literal_round_trip(x in eint(1_000_000)) {
        let printed = x.to_string();
        prop_assert_eq!(printed.parse::<EInt>().unwrap(), x);
    }
}

#[test]
fn unit_group_is_exactly_six_elements() {
    let mut units = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            let x = EInt::new(a, b);
            if x.is_unit() {
                units.push(x);
            }
        }
    }
    assert_eq!(units.len(), 6);
    for unit in Unit::ALL {
        assert!(units.contains(&unit.to_eint()));
    }
}

#[test]
fn sextant_partition_exhaustive_small_disk() {
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            let x = EInt::new(a, b);
            if x.is_zero() {
                continue;
            }
            let hits = Unit::ALL
                .iter()
                .filter(|u| (&u.to_eint() * &x).is_first_sextant())
                .count();
            assert_eq!(hits, 1, "x = {x}");
        }
    }
}
