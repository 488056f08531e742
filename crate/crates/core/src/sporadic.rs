//! Sporadic-point certificates: the index criterion for a point and all of
//! its lifts, degree bookkeeping under pushforward, and the arithmetic of
//! the CM construction.

use serde::Serialize;

use crate::curveinv::{map_degree, psl2_index};
use crate::error::{Error, Result};
use crate::modarith::{is_prime, mod_pow};
use crate::orbits::DegreeSpectrum;
use crate::Rational;

/// Largest `m` for which the lift inequality is checked explicitly.
pub const LIFT_CHECK_LIMIT: u64 = 20;

/// `7/1600`, half the gonality constant.
pub fn lifting_constant() -> Rational {
    Rational::new(7, 1600)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SporadicVerdict {
    SporadicAllLiftsSporadic,
    Inconclusive,
}

/// One step of the lift chain: a point of degree `d` on X_1(N) lifts to
/// points of degree at most `d * deg(X_1(Nm) -> X_1(N))` on X_1(Nm).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftCheck {
    pub m: u64,
    pub lift_degree_bound: u64,
    #[serde(with = "crate::rational")]
    pub threshold: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SporadicCertificate {
    pub n: u64,
    pub degree: u64,
    pub index: u64,
    #[serde(with = "crate::rational")]
    pub threshold: Rational,
    /// `threshold - degree`.
    #[serde(with = "crate::rational")]
    pub margin: Rational,
    pub verdict: SporadicVerdict,
    pub chain: Vec<LiftCheck>,
}

impl SporadicCertificate {
    pub fn issued(&self) -> bool {
        self.verdict == SporadicVerdict::SporadicAllLiftsSporadic
    }
}

/// A point of degree `d` on X_1(N) with `d < (7/1600) mu(N)` is sporadic,
/// and so is every point above it on every X_1(Nm).
pub fn lifting_certificate(n: u64, d: u64) -> SporadicCertificate {
    let index = psl2_index(n);
    let threshold = lifting_constant() * Rational::from_integer(index as i128);
    let margin = threshold - Rational::from_integer(d as i128);
    let issued = n > 2 && margin > Rational::from_integer(0);
    let chain = if issued {
        (1..=LIFT_CHECK_LIMIT)
            .map(|m| {
                let bound = d * map_degree(n, m).degree;
                let t = lifting_constant() * Rational::from_integer(psl2_index(n * m) as i128);
                LiftCheck {
                    m,
                    lift_degree_bound: bound,
                    threshold: t,
                    holds: Rational::from_integer(bound as i128) < t,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    debug_assert!(chain.iter().all(|c| c.holds));
    SporadicCertificate {
        n,
        degree: d,
        index,
        threshold,
        margin,
        verdict: if issued {
            SporadicVerdict::SporadicAllLiftsSporadic
        } else {
            SporadicVerdict::Inconclusive
        },
        chain,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardRow {
    pub representative: [u64; 2],
    pub degree: u64,
    pub image: [u64; 2],
    pub image_degree: u64,
    /// `deg(x) = deg(f) deg(f(x))`; when it holds, sporadicity of `x`
    /// passes to `f(x)`.
    pub sporadicity_transfers: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub n: u64,
    pub a: u64,
    pub map_degree: u64,
    pub rows: Vec<PushforwardRow>,
}

/// Pairs each orbit of `upper` (mod n) with the orbit of its image in
/// `lower` (mod a) and compares degrees along X_1(n) -> X_1(a).
pub fn pushforward_degree_check(
    upper: &DegreeSpectrum,
    lower: &DegreeSpectrum,
) -> Result<PushforwardReport> {
    let (n, a) = (upper.modulus, lower.modulus);
    if n % a != 0 {
        return Err(Error::NotADivisor { m: a, n });
    }
    if upper.field_degree != lower.field_degree {
        return Err(Error::InvalidInput(format!(
            "field degrees differ: {} vs {}",
            upper.field_degree, lower.field_degree
        )));
    }
    let deg_f = map_degree(a, n / a).degree;
    let mut rows = Vec::with_capacity(upper.records.len());
    for r in &upper.records {
        let image = [r.representative[0] % a, r.representative[1] % a];
        let below = lower
            .record_of(image)
            .ok_or_else(|| Error::InvalidInput(format!("no orbit mod {a} contains {image:?}")))?;
        rows.push(PushforwardRow {
            representative: r.representative,
            degree: r.degree,
            image,
            image_degree: below.degree,
            sporadicity_transfers: r.degree == deg_f * below.degree,
        });
    }
    Ok(PushforwardReport {
        n,
        a,
        map_degree: deg_f,
        rows,
    })
}

/// An order in an imaginary quadratic field, described by its discriminant,
/// class number and number of units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CmOrder {
    pub discriminant: i64,
    pub class_number: u64,
    pub units: u64,
}

impl CmOrder {
    pub fn new(discriminant: i64, class_number: u64, units: u64) -> Result<Self> {
        if discriminant >= 0 || !matches!(discriminant.rem_euclid(4), 0 | 1) {
            return Err(Error::InvalidInput(format!(
                "{discriminant} is not a negative discriminant"
            )));
        }
        let expected_units = match discriminant {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        if units != expected_units {
            return Err(Error::InvalidInput(format!(
                "discriminant {discriminant} has {expected_units} units, not {units}"
            )));
        }
        if class_number == 0 {
            return Err(Error::InvalidInput("class number must be positive".into()));
        }
        Ok(Self {
            discriminant,
            class_number,
            units,
        })
    }

    /// Looks up `h` and `w` in the built-in table (`|D| <= 100`).
    pub fn from_table(discriminant: i64) -> Result<Self> {
        CLASS_NUMBERS
            .iter()
            .find(|&&(d, _, _)| d == discriminant)
            .map(|&(d, h, w)| Self::new(d, h, w))
            .unwrap_or_else(|| {
                Err(Error::InvalidInput(format!(
                    "discriminant {discriminant} not in the class number table; pass h and w"
                )))
            })
    }
}

/// `(D, h(D), w(D))` for every negative discriminant with `|D| <= 100`.
pub const CLASS_NUMBERS: &[(i64, u64, u64)] = &[
    (-3, 1, 6),
    (-4, 1, 4),
    (-7, 1, 2),
    (-8, 1, 2),
    (-11, 1, 2),
    (-12, 1, 2),
    (-15, 2, 2),
    (-16, 1, 2),
    (-19, 1, 2),
    (-20, 2, 2),
    (-23, 3, 2),
    (-24, 2, 2),
    (-27, 1, 2),
    (-28, 1, 2),
    (-31, 3, 2),
    (-32, 2, 2),
    (-35, 2, 2),
    (-36, 2, 2),
    (-39, 4, 2),
    (-40, 2, 2),
    (-43, 1, 2),
    (-44, 3, 2),
    (-47, 5, 2),
    (-48, 2, 2),
    (-51, 2, 2),
    (-52, 2, 2),
    (-55, 4, 2),
    (-56, 4, 2),
    (-59, 3, 2),
    (-60, 2, 2),
    (-63, 4, 2),
    (-64, 2, 2),
    (-67, 1, 2),
    (-68, 4, 2),
    (-71, 7, 2),
    (-72, 2, 2),
    (-75, 2, 2),
    (-76, 3, 2),
    (-79, 5, 2),
    (-80, 4, 2),
    (-83, 3, 2),
    (-84, 4, 2),
    (-87, 6, 2),
    (-88, 2, 2),
    (-91, 2, 2),
    (-92, 3, 2),
    (-95, 8, 2),
    (-96, 4, 2),
    (-99, 2, 2),
    (-100, 2, 2),
];

/// Kronecker symbol `(D / p)` for a prime `p`.
pub fn kronecker_prime(d: i64, p: u64) -> i32 {
    assert!(is_prime(p), "{p} is not prime");
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmThreshold {
    pub order: CmOrder,
    /// `(6400/7) h / w - 1`.
    #[serde(with = "crate::rational")]
    pub threshold: Rational,
    /// Smallest prime above the threshold that splits in the CM field.
    pub smallest_split_prime: u64,
}

fn threshold_value(o: &CmOrder) -> Rational {
    Rational::new(6400 * o.class_number as i128, 7 * o.units as i128) - Rational::from_integer(1)
}

fn is_admissible(o: &CmOrder, ell: u64) -> bool {
    is_prime(ell)
        && Rational::from_integer(ell as i128) > threshold_value(o)
        && kronecker_prime(o.discriminant, ell) == 1
}

pub fn cm_threshold(o: &CmOrder) -> CmThreshold {
    let threshold = threshold_value(o);
    let start = threshold.to_integer().max(1) as u64;
    let smallest_split_prime = (start..)
        .find(|&l| is_admissible(o, l))
        .expect("split primes are unbounded");
    CmThreshold {
        order: *o,
        threshold,
        smallest_split_prime,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmPoint {
    pub order: CmOrder,
    pub ell: u64,
    /// `2 h (ℓ - 1) / w`.
    pub degree: u64,
    /// `2 (ℓ - 1)(ℓ + 1) 7/6400`, equal to the lifting threshold at level ℓ.
    #[serde(with = "crate::rational")]
    pub prime_level_bound: Rational,
    pub certificate: SporadicCertificate,
}

/// The degree of the CM point on X_1(ℓ) and its lifting certificate.
pub fn cm_point_degree(o: &CmOrder, ell: u64) -> Result<CmPoint> {
    if !is_prime(ell) {
        return Err(Error::PreconditionFailed(format!("{ell} is not prime")));
    }
    if Rational::from_integer(ell as i128) <= threshold_value(o) {
        return Err(Error::PreconditionFailed(format!(
            "{ell} does not exceed the threshold for discriminant {}",
            o.discriminant
        )));
    }
    if kronecker_prime(o.discriminant, ell) != 1 {
        return Err(Error::PreconditionFailed(format!(
            "{ell} does not split for discriminant {}",
            o.discriminant
        )));
    }
    let num = 2 * o.class_number * (ell - 1);
    if !num.is_multiple_of(o.units) {
        return Err(Error::PreconditionFailed(format!(
            "{} units do not divide {}",
            o.units,
            ell - 1
        )));
    }
    let degree = num / o.units;
    let l = ell as i128;
    Ok(CmPoint {
        order: *o,
        ell,
        degree,
        prime_level_bound: Rational::new(2 * (l - 1) * (l + 1) * 7, 6400),
        certificate: lifting_certificate(ell, degree),
    })
}
