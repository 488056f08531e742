//! Numerical invariants of X_1(N): index of Γ1(N) in PSL2(Z), genus, degrees
//! of the forgetful maps X_1(ab) -> X_1(a), gonality bounds and a small
//! table of known Q-gonalities.

use serde::Serialize;

use crate::modarith::{euler_phi, factorize, Modulus};
use crate::Rational;

/// `[PSL2(Z) : ±Γ1(N)]`, the degree of X_1(N) -> X(1).
pub fn psl2_index(n: u64) -> u64 {
    assert!(n >= 1, "N must be positive");
    match n {
        1 => 1,
        2 => 3,
        _ => {
            let mut num = n as u128 * n as u128;
            for (p, _) in factorize(n) {
                let p2 = (p * p) as u128;
                num = num / p2 * (p2 - 1);
            }
            (num / 2) as u64
        }
    }
}

/// The degree of the natural map X_1(ab) -> X_1(a).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapDegree {
    pub a: u64,
    pub b: u64,
    /// 1/2 exactly when `a <= 2 < ab`, where -1 stops acting trivially.
    #[serde(with = "crate::rational")]
    pub c_f: Rational,
    pub degree: u64,
}

pub fn map_degree(a: u64, b: u64) -> MapDegree {
    assert!(a >= 1 && b >= 1, "a and b must be positive");
    let mut deg = b as u128 * b as u128;
    for (p, _) in factorize(b) {
        if !a.is_multiple_of(p) {
            let p2 = (p * p) as u128;
            deg = deg / p2 * (p2 - 1);
        }
    }
    let half = a <= 2 && a * b > 2;
    if half {
        debug_assert!(deg.is_multiple_of(2));
        deg /= 2;
    }
    MapDegree {
        a,
        b,
        c_f: if half {
            Rational::new(1, 2)
        } else {
            Rational::from_integer(1)
        },
        degree: deg as u64,
    }
}

/// Number of cusps of X_1(N) for `N >= 5`: `(1/2) sum_{d|N} phi(d) phi(N/d)`.
pub fn cusp_count(n: u64) -> u64 {
    let total: u64 = Modulus::new(n)
        .expect("valid modulus")
        .divisors()
        .into_iter()
        .map(|d| euler_phi(d) * euler_phi(n / d))
        .sum();
    match n {
        1 => 1,
        2 => 2,
        3 => 2,
        4 => 3,
        _ => total / 2,
    }
}

/// Genus of X_1(N). For `N >= 5` the group ±Γ1(N) has no elliptic elements,
/// so `g = 1 + mu/12 - cusps/2`.
pub fn genus_x1(n: u64) -> u64 {
    if n <= 4 {
        return 0;
    }
    let twelve_g = 12 + psl2_index(n) as i128 - 6 * cusp_count(n) as i128;
    assert!(
        twelve_g >= 0 && twelve_g % 12 == 0,
        "genus bookkeeping for N={n}"
    );
    (twelve_g / 12) as u64
}

/// Lower bound `(7/800) mu(N)` for the gonality of X_1(N) over C.
pub fn gonality_lower_bound(n: u64) -> Rational {
    Rational::new(7 * psl2_index(n) as i128, 800)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KnownGonality {
    pub gonality: u64,
    pub source: &'static str,
}

const GENUS_0: &str = "genus 0 with a rational cusp";
const GENUS_1: &str = "genus 1 with a rational cusp";
const GENUS_2: &str = "genus 2, hyperelliptic over Q";
const LITERATURE: &str = "published Q-gonality computation";

const KNOWN_GONALITY: &[(u64, u64, &str)] = &[
    (1, 1, GENUS_0),
    (2, 1, GENUS_0),
    (3, 1, GENUS_0),
    (4, 1, GENUS_0),
    (5, 1, GENUS_0),
    (6, 1, GENUS_0),
    (7, 1, GENUS_0),
    (8, 1, GENUS_0),
    (9, 1, GENUS_0),
    (10, 1, GENUS_0),
    (11, 2, GENUS_1),
    (12, 1, GENUS_0),
    (13, 2, GENUS_2),
    (14, 2, GENUS_1),
    (15, 2, GENUS_1),
    (16, 2, GENUS_2),
    (17, 4, LITERATURE),
    (18, 2, GENUS_2),
    (25, 5, LITERATURE),
    (32, 8, LITERATURE),
    (37, 18, LITERATURE),
];

/// Table lookup of the Q-gonality of X_1(N).
pub fn known_gonality(n: u64) -> Option<KnownGonality> {
    KNOWN_GONALITY
        .iter()
        .find(|&&(m, _, _)| m == n)
        .map(|&(_, gonality, source)| KnownGonality { gonality, source })
}

/// Every `N` with a known gonality, in increasing order.
pub fn known_gonality_table() -> Vec<(u64, KnownGonality)> {
    KNOWN_GONALITY
        .iter()
        .map(|&(n, gonality, source)| (n, KnownGonality { gonality, source }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub n: u64,
    pub psl2_index: u64,
    pub genus: u64,
    pub cusps: u64,
    #[serde(with = "crate::rational")]
    pub gonality_lower: Rational,
    pub known_gonality: Option<KnownGonality>,
}

pub fn curve_invariants(n: u64) -> CurveInvariants {
    CurveInvariants {
        n,
        psl2_index: psl2_index(n),
        genus: genus_x1(n),
        cusps: cusp_count(n),
        gonality_lower: gonality_lower_bound(n),
        known_gonality: known_gonality(n),
    }
}

/// If a curve has infinitely many points of degree `<= d` then its
/// gonality is at most `2d`. Issued when `2d < gonality`: then X_1(N) has
/// only finitely many points of degree `<= d`, and any such point is sporadic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreyCertificate {
    pub n: u64,
    pub degree: u64,
    pub gonality: u64,
    pub issued: bool,
}

pub fn frey_gonality_cert(n: u64, d: u64, gonality: u64) -> FreyCertificate {
    FreyCertificate {
        n,
        degree: d,
        gonality,
        issued: 2 * d < gonality,
    }
}
