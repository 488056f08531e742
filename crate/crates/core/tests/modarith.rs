use proptest::prelude::*;
use x1_core::modarith::{crt, crt_join, crt_split, gcd, gl2_order, mod_inverse, Mat2ModN, Modulus};

proptest! {
    #[test]
    fn crt_roundtrip(e in prop::array::uniform4(0i64..1000), split in prop::sample::select(vec![(4u64, 9u64), (8, 5), (7, 11), (16, 27)])) {
        let n = split.0 * split.1;
        let m = Mat2ModN::<u32>::new(n, e).unwrap();
        let parts = crt_split(&m, &[split.0, split.1]).unwrap();
        prop_assert_eq!(crt_join(&parts).unwrap(), m);
    }

    #[test]
    fn det_is_multiplicative(a in prop::array::uniform4(-50i64..50), b in prop::array::uniform4(-50i64..50), n in 2u64..200) {
        let x = Mat2ModN::<u32>::new(n, a).unwrap();
        let y = Mat2ModN::<u32>::new(n, b).unwrap();
        prop_assert_eq!(x.try_mul(&y).unwrap().det(), x.det() * y.det() % n);
    }

    #[test]
    fn inverse_is_two_sided(a in prop::array::uniform4(0i64..10_000), n in 2u64..10_000) {
        let x = Mat2ModN::<u64>::new(n, a).unwrap();
        prop_assume!(gcd(x.det(), n) == 1);
        let inv = x.inverse().unwrap();
        prop_assert!(x.try_mul(&inv).unwrap().is_identity());
        prop_assert!(inv.try_mul(&x).unwrap().is_identity());
    }

    #[test]
    fn mod_inverse_matches_search(a in 0u64..300, n in 1u64..300) {
        let brute = (0..n).find(|&x| (a % n) * x % n == 1 % n);
        prop_assert_eq!(mod_inverse(a, n), brute);
    }

    #[test]
    fn crt_solves_each_congruence(r1 in 0u64..9, r2 in 0u64..16, r3 in 0u64..25) {
        let x = crt(&[r1, r2, r3], &[9, 16, 25]).unwrap();
        prop_assert!(x < 9 * 16 * 25);
        prop_assert_eq!((x % 9, x % 16, x % 25), (r1, r2, r3));
    }
}

#[test]
fn gl2_order_matches_enumeration() {
    for n in 1..=12u64 {
        let mut count = 0u128;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if gcd((a * d + n * n - b * c) % n, n) == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(gl2_order(n), count, "n = {n}");
    }
}

#[test]
fn divisors_and_factorization() {
    let m = Modulus::new(360).unwrap();
    assert_eq!(m.factorization(), &[(2, 3), (3, 2), (5, 1)]);
    let brute: Vec<u64> = (1..=360).filter(|d| 360 % d == 0).collect();
    assert_eq!(m.divisors(), brute);
    assert!(Modulus::new(0).is_err());
}
