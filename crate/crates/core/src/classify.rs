//! Decision procedure for rational j-invariants of isolated points on
//! X_1(n), driven by a declared Galois-image profile, plus the built-in
//! level tables it relies on.

use serde::{Deserialize, Serialize};

use crate::curveinv::{map_degree, MapDegree};
use crate::error::{Error, Result};
use crate::levels::{classification_table, P_POWER_BOUND};
use crate::modarith::{gcd, is_prime, Modulus};

/// Single-prime levels `M_1({ℓ})`.
pub const M1_TABLE: [(u64, u64); 8] = [
    (2, 32),
    (3, 81),
    (5, 125),
    (7, 49),
    (11, 121),
    (13, 169),
    (17, 17),
    (37, 37),
];

/// Largest prime-power level of a modular curve with infinitely many
/// rational points.
pub const SZ_TABLE: [(u64, u64); 7] = [
    (3, 27),
    (5, 25),
    (7, 7),
    (11, 11),
    (13, 13),
    (17, 1),
    (37, 1),
];

/// Orders of the non-surjective mod-ℓ images at 17 and 37 that are not in a
/// non-split Cartan normalizer.
pub const SPECIAL_IMAGE_ORDERS: [(u64, u128); 2] = [(17, 64 * 17), (37, 16 * 27 * 37)];

/// The primes `p > 3` that head a column of the classification table.
pub const TABLE_PRIMES: [u64; 6] = [5, 7, 11, 13, 17, 37];

pub fn m1_table() -> &'static [(u64, u64)] {
    &M1_TABLE
}

pub fn m1_table_lookup(ell: u64) -> Option<u64> {
    M1_TABLE.iter().find(|&&(l, _)| l == ell).map(|&(_, m)| m)
}

pub fn sz_table() -> &'static [(u64, u64)] {
    &SZ_TABLE
}

pub fn sz_table_lookup(ell: u64) -> Option<u64> {
    SZ_TABLE.iter().find(|&&(l, _)| l == ell).map(|&(_, m)| m)
}

pub fn special_image_order(ell: u64) -> Option<u128> {
    SPECIAL_IMAGE_ORDERS
        .iter()
        .find(|&&(l, _)| l == ell)
        .map(|&(_, o)| o)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageType {
    Borel,
    NormalizerSplit,
    NormalizerNonsplit,
    Exceptional,
    Other,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonsurjectivePrime {
    pub prime: u64,
    #[serde(rename = "type")]
    pub image_type: ImageType,
    /// Level of the ℓ-adic image, when known.
    #[serde(default)]
    pub level: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFlags {
    /// Assume that no non-CM curve over Q has an unexpectedly small image at
    /// a prime above 37 or a non-split Cartan image at 17 or 37.
    #[serde(default)]
    pub assume_sz: bool,
}

fn one() -> u64 {
    1
}

/// Declared Galois-image data of an elliptic curve. Primes not listed are
/// treated as surjective with ℓ-adic level 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisProfile {
    #[serde(default = "one")]
    pub field_degree: u64,
    #[serde(default)]
    pub nonsurjective: Vec<NonsurjectivePrime>,
    #[serde(default)]
    pub flags: ProfileFlags,
}

impl GaloisProfile {
    pub fn new(nonsurjective: Vec<NonsurjectivePrime>, assume_sz: bool) -> Self {
        Self {
            field_degree: 1,
            nonsurjective,
            flags: ProfileFlags { assume_sz },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn entry(&self, ell: u64) -> Option<&NonsurjectivePrime> {
        self.nonsurjective.iter().find(|e| e.prime == ell)
    }

    fn has_type(&self, ell: u64, t: ImageType) -> bool {
        self.entry(ell).is_some_and(|e| e.image_type == t)
    }

    /// Declared ℓ-adic level; 1 for undeclared primes.
    pub fn ladic_level(&self, ell: u64) -> Option<u64> {
        match self.entry(ell) {
            None => Some(1),
            Some(e) => e.level,
        }
    }

    /// `{2, 3}` together with every declared non-surjective prime.
    pub fn s_set(&self) -> Vec<u64> {
        let mut s = vec![2, 3];
        s.extend(self.nonsurjective.iter().map(|e| e.prime));
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Rejects profiles that no elliptic curve over Q can have.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InconsistentProfile(m));
        if self.field_degree == 0 {
            return bad("field degree must be positive".into());
        }
        let mut seen = Vec::new();
        for e in &self.nonsurjective {
            let l = e.prime;
            if !is_prime(l) {
                return bad(format!("{l} is not prime"));
            }
            if seen.contains(&l) {
                return bad(format!("prime {l} listed twice"));
            }
            seen.push(l);
            if let Some(level) = e.level {
                if level == 0 || Modulus::new(level)?.primes().any(|q| q != l) {
                    return bad(format!("level {level} at {l} is not a power of {l}"));
                }
                if level == 1 && l >= 5 {
                    return bad(format!(
                        "level 1 at {l} means the image there is surjective"
                    ));
                }
            }
        }
        if self.field_degree == 1 {
            if self.has_type(17, ImageType::Borel) && self.has_type(37, ImageType::Borel) {
                return bad("Borel images at both 17 and 37".into());
            }
            for e in &self.nonsurjective {
                let l = e.prime;
                match e.image_type {
                    ImageType::Borel if !matches!(l, 2 | 3 | 5 | 7 | 11 | 13 | 17 | 37) => {
                        return bad(format!("no rational {l}-isogeny exists"));
                    }
                    ImageType::NormalizerSplit | ImageType::Exceptional if l > 13 => {
                        return bad(format!("{:?} image impossible at {l}", e.image_type));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Maybe,
}

impl Status {
    fn combine(items: impl IntoIterator<Item = Status>) -> Status {
        let mut out = Status::No;
        for s in items {
            match s {
                Status::Yes => return Status::Yes,
                Status::Maybe => out = Status::Maybe,
                Status::No => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseCheck {
    pub case: u8,
    pub status: Status,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenVerdict {
    NoSporadicAtPrimeLevel,
    NoSporadic,
    Only37Borel,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Screen {
    pub name: &'static str,
    pub verdict: ScreenVerdict,
    pub reason: String,
    pub conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationVerdict {
    pub n: u64,
    /// The first case that holds, when every earlier case is ruled out.
    pub case: Option<u8>,
    /// Cases that hold or cannot be ruled out, up to the first that holds.
    pub possible_cases: Vec<u8>,
    pub checks: Vec<CaseCheck>,
    pub s_set: Vec<u64>,
    /// Table columns used for the fourth case.
    pub p_values: Vec<u64>,
    /// Divisors of n of the form `2^a 3^b p^c` within the table bounds.
    pub candidates: Vec<u64>,
    pub screens: Vec<Screen>,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

fn case1(profile: &GaloisProfile, support: &[u64]) -> CaseCheck {
    let mut reasons = Vec::new();
    let status = Status::combine(support.iter().map(|&l| match profile.entry(l) {
        None => Status::No,
        Some(_) if l > 17 && l != 37 => {
            reasons.push(format!("non-surjective at {l} > 17"));
            Status::Yes
        }
        Some(e) if l == 17 || l == 37 => match e.image_type {
            ImageType::NormalizerNonsplit => {
                reasons.push(format!("non-split Cartan normalizer at {l}"));
                Status::Yes
            }
            ImageType::Unknown | ImageType::Other => {
                reasons.push(format!(
                    "image at {l} may lie in a non-split Cartan normalizer"
                ));
                Status::Maybe
            }
            _ => Status::No,
        },
        Some(_) => Status::No,
    }));
    CaseCheck {
        case: 1,
        status,
        reason: if reasons.is_empty() {
            "no large non-surjective prime divides n".into()
        } else {
            reasons.join("; ")
        },
    }
}

fn case2(profile: &GaloisProfile, support: &[u64]) -> CaseCheck {
    let hits: Vec<u64> = support
        .iter()
        .copied()
        .filter(|&l| l > 3 && profile.entry(l).is_some())
        .collect();
    CaseCheck {
        case: 2,
        status: if hits.len() >= 2 {
            Status::Yes
        } else {
            Status::No
        },
        reason: format!("non-surjective primes > 3 dividing n: {hits:?}"),
    }
}

fn case3(profile: &GaloisProfile, support: &[u64]) -> CaseCheck {
    let mut reasons = Vec::new();
    let status = Status::combine(support.iter().filter(|&&l| l > 2 && l <= 37).map(|&l| {
        match profile.ladic_level(l) {
            Some(level) if level > P_POWER_BOUND => {
                reasons.push(format!("{l}-adic level {level} > {P_POWER_BOUND}"));
                Status::Yes
            }
            Some(_) => Status::No,
            None => {
                reasons.push(format!("{l}-adic level unknown"));
                Status::Maybe
            }
        }
    }));
    CaseCheck {
        case: 3,
        status,
        reason: if reasons.is_empty() {
            format!("every ℓ-adic level for 2 < ℓ <= 37 dividing n is at most {P_POWER_BOUND}")
        } else {
            reasons.join("; ")
        },
    }
}

/// Divisors of `n` of the form `2^a 3^b p^c` with `a <= a_p`, `b <= b_p`
/// and `p^c <= 169`.
pub fn case4_candidates(n: u64, p: u64) -> Result<Vec<u64>> {
    let row = classification_table()?
        .into_iter()
        .find(|r| r.p == p)
        .ok_or_else(|| Error::InvalidInput(format!("{p} is not a column of the table")))?;
    let mut out: Vec<u64> = Modulus::new(n)?
        .divisors()
        .into_iter()
        .filter(|&d| {
            let m = Modulus::new(d).expect("divisor");
            m.factorization().iter().all(|&(q, e)| match q {
                2 => e <= row.a,
                3 => e <= row.b,
                _ => q == p && q.pow(e) <= P_POWER_BOUND,
            })
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

fn prime_level_screen(profile: &GaloisProfile, l: u64) -> Screen {
    let (verdict, reason) = match profile.entry(l) {
        _ if l <= 13 => (
            ScreenVerdict::NoSporadicAtPrimeLevel,
            format!("X_1({l}) has infinitely many rational points or gonality 2 with no non-cuspidal rational points"),
        ),
        None => (
            ScreenVerdict::NoSporadicAtPrimeLevel,
            format!("surjective mod {l}"),
        ),
        Some(e) => match e.image_type {
            ImageType::NormalizerNonsplit => (
                ScreenVerdict::NoSporadic,
                format!("points of order {l} have degree >= ({l}^2-1)/6, above the genus bound"),
            ),
            ImageType::Borel if l == 17 => (
                ScreenVerdict::NoSporadic,
                "points of order 17 have degree >= 4, the gonality of X_1(17)".into(),
            ),
            ImageType::Borel if l == 37 => (
                ScreenVerdict::Only37Borel,
                "only the degree 6 point over j = -7*11^3 is sporadic".into(),
            ),
            _ => (
                ScreenVerdict::Undetermined,
                format!("image type {:?} at {l} is not decided by the screen", e.image_type),
            ),
        },
    };
    Screen {
        name: "prime_level",
        verdict,
        reason,
        conditional: false,
    }
}

fn sz_screen(profile: &GaloisProfile, n: u64) -> Screen {
    let (verdict, reason) = if n.is_multiple_of(37) && profile.has_type(37, ImageType::Borel) {
        (
            ScreenVerdict::Only37Borel,
            "37 | n with a Borel image at 37: only j = -7*11^3 survives".to_string(),
        )
    } else {
        (
            ScreenVerdict::NoSporadic,
            "only 17 or 37 can carry the fourth case, and neither prime-level screen admits a sporadic point".into(),
        )
    };
    Screen {
        name: "large_support_under_sz",
        verdict,
        reason,
        conditional: true,
    }
}

/// Runs the four-case decision procedure on a profile and level `n`.
pub fn classify_profile(profile: &GaloisProfile, n: u64) -> Result<ClassificationVerdict> {
    profile.validate()?;
    if profile.field_degree != 1 {
        return Err(Error::PreconditionFailed(
            "the classification applies to curves over Q (field_degree 1)".into(),
        ));
    }
    let modulus = Modulus::new(n)?;
    let support: Vec<u64> = modulus.primes().collect();
    let mut notes = Vec::new();
    let mut assumptions = Vec::new();

    let mut checks = vec![
        case1(profile, &support),
        case2(profile, &support),
        case3(profile, &support),
    ];
    let earlier = Status::combine(checks.iter().map(|c| c.status));
    let status4 = match earlier {
        Status::Yes => Status::No,
        _ if checks.iter().all(|c| c.status == Status::No) => Status::Yes,
        _ => Status::Maybe,
    };

    // Column of the table for the fourth case.
    let large: Vec<u64> = profile
        .nonsurjective
        .iter()
        .map(|e| e.prime)
        .filter(|&l| l > 3)
        .collect();
    let on_support: Vec<u64> = large
        .iter()
        .copied()
        .filter(|l| n.is_multiple_of(*l))
        .collect();
    let mut p_values: Vec<u64> = if !on_support.is_empty() {
        on_support
            .iter()
            .copied()
            .filter(|l| TABLE_PRIMES.contains(l))
            .collect()
    } else {
        large
            .iter()
            .copied()
            .filter(|l| TABLE_PRIMES.contains(l))
            .collect()
    };
    for l in &large {
        if !TABLE_PRIMES.contains(l) && !n.is_multiple_of(*l) {
            notes.push(format!(
                "non-surjective prime {l} does not divide n and has no table column"
            ));
        }
    }
    if on_support.is_empty() && !p_values.is_empty() {
        notes.push(format!(
            "table column chosen from primes not dividing n: {p_values:?}"
        ));
    }
    if p_values.is_empty() {
        p_values.push(1);
    }
    p_values.sort_unstable();
    p_values.dedup();

    let mut candidates = Vec::new();
    if status4 != Status::No {
        for &p in &p_values {
            candidates.extend(case4_candidates(n, p)?);
        }
        candidates.sort_unstable();
        candidates.dedup();
    }
    checks.push(CaseCheck {
        case: 4,
        status: status4,
        reason: format!("candidate levels {candidates:?} for columns {p_values:?}"),
    });

    let mut possible_cases = Vec::new();
    let mut case = None;
    for c in &checks {
        match c.status {
            Status::No => {}
            Status::Maybe => possible_cases.push(c.case),
            Status::Yes => {
                possible_cases.push(c.case);
                if possible_cases.len() == 1 {
                    case = Some(c.case);
                }
                break;
            }
        }
    }

    let mut screens = Vec::new();
    if n > 1 && is_prime(n) {
        screens.push(prime_level_screen(profile, n));
    }
    if let Some((2, _)) = modulus.prime_power() {
        screens.push(Screen {
            name: "two_power",
            verdict: ScreenVerdict::NoSporadic,
            reason: "2-adic level divides 32 and X_1(2^s) for s <= 5 has no such point".into(),
            conditional: false,
        });
    }
    if profile.flags.assume_sz {
        assumptions.push("assume_sz".into());
        if n > 1 && support[0] >= 17 {
            screens.push(sz_screen(profile, n));
        }
        if checks[0].status != Status::No {
            notes.push("the first case contradicts the assumed conjecture".into());
        }
    }

    Ok(ClassificationVerdict {
        n,
        case,
        possible_cases,
        checks,
        s_set: profile.s_set(),
        p_values,
        candidates,
        screens,
        assumptions,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetLevel {
    pub n: u64,
    pub level: u64,
    pub target: u64,
    pub map: MapDegree,
}

/// `gcd(n, M)` and the degree of X_1(n) -> X_1(gcd(n, M)).
pub fn target_level(n: u64, level: u64) -> Result<TargetLevel> {
    Modulus::new(n)?;
    Modulus::new(level)?;
    let target = gcd(n, level);
    Ok(TargetLevel {
        n,
        level,
        target,
        map: map_degree(target, n / target),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(prime: u64, image_type: ImageType, level: Option<u64>) -> NonsurjectivePrime {
        NonsurjectivePrime {
            prime,
            image_type,
            level,
        }
    }

    #[test]
    fn tables() {
        assert_eq!(sz_table_lookup(3), Some(27));
        assert_eq!(sz_table_lookup(17), Some(1));
        assert_eq!(m1_table_lookup(2), Some(32));
        assert_eq!(m1_table_lookup(37), Some(37));
        assert_eq!(m1_table_lookup(19), None);
    }

    #[test]
    fn borel_37() {
        let p = GaloisProfile::new(vec![entry(37, ImageType::Borel, Some(37))], false);
        let v = classify_profile(&p, 37).unwrap();
        assert_eq!(v.case, Some(4));
        assert_eq!(v.candidates, vec![1, 37]);
        assert_eq!(v.p_values, vec![37]);
        assert_eq!(v.screens[0].verdict, ScreenVerdict::Only37Borel);
    }

    #[test]
    fn nonsplit_17() {
        let p = GaloisProfile::new(vec![entry(17, ImageType::NormalizerNonsplit, None)], false);
        let v = classify_profile(&p, 17).unwrap();
        assert_eq!(v.case, Some(1));
        assert_eq!(v.possible_cases, vec![1]);
        assert_eq!(v.screens[0].verdict, ScreenVerdict::NoSporadic);
    }

    #[test]
    fn five_and_seven() {
        let p = GaloisProfile::new(
            vec![
                entry(5, ImageType::Borel, None),
                entry(7, ImageType::Borel, None),
            ],
            false,
        );
        assert_eq!(classify_profile(&p, 35).unwrap().case, Some(2));
    }

    #[test]
    fn unknown_type_is_conservative() {
        let p = GaloisProfile::new(vec![entry(17, ImageType::Unknown, Some(17))], false);
        let v = classify_profile(&p, 17 * 8).unwrap();
        assert_eq!(v.case, None);
        assert_eq!(v.possible_cases, vec![1, 4]);
        assert_eq!(v.candidates, vec![1, 2, 4, 8, 17, 34, 68, 136]);
    }

    #[test]
    fn unknown_level_is_conservative() {
        let p = GaloisProfile::new(vec![entry(13, ImageType::Borel, None)], false);
        let v = classify_profile(&p, 13).unwrap();
        assert_eq!(v.possible_cases, vec![3, 4]);
        let p = GaloisProfile::new(vec![entry(13, ImageType::Borel, Some(169))], false);
        assert_eq!(classify_profile(&p, 13).unwrap().case, Some(4));
        let p = GaloisProfile::new(vec![entry(3, ImageType::Other, Some(243))], false);
        assert_eq!(classify_profile(&p, 9).unwrap().case, Some(3));
    }

    #[test]
    fn candidates_respect_bounds() {
        let n = 2u64.pow(12) * 3u64.pow(6) * 25;
        let c = case4_candidates(n, 1).unwrap();
        assert!(c.contains(&(512 * 243)));
        assert!(!c.contains(&1024));
        assert!(!c.contains(&729));
        assert!(!c.contains(&5));
        let c = case4_candidates(n, 5).unwrap();
        assert!(c.contains(&(4096 * 729 * 25)));
        assert!(case4_candidates(n, 19).is_err());
    }

    #[test]
    fn inconsistent_profiles() {
        let both = GaloisProfile::new(
            vec![
                entry(17, ImageType::Borel, None),
                entry(37, ImageType::Borel, None),
            ],
            false,
        );
        assert!(matches!(
            classify_profile(&both, 629),
            Err(Error::InconsistentProfile(_))
        ));
        let dup = GaloisProfile::new(
            vec![
                entry(5, ImageType::Borel, None),
                entry(5, ImageType::Other, None),
            ],
            false,
        );
        assert!(matches!(dup.validate(), Err(Error::InconsistentProfile(_))));
        let iso = GaloisProfile::new(vec![entry(19, ImageType::Borel, None)], false);
        assert!(matches!(iso.validate(), Err(Error::InconsistentProfile(_))));
        let lvl = GaloisProfile::new(vec![entry(5, ImageType::Borel, Some(35))], false);
        assert!(matches!(lvl.validate(), Err(Error::InconsistentProfile(_))));
    }

    #[test]
    fn screens() {
        let surj = GaloisProfile::new(vec![], false);
        let v = classify_profile(&surj, 11).unwrap();
        assert_eq!(v.screens[0].verdict, ScreenVerdict::NoSporadicAtPrimeLevel);
        let v = classify_profile(&surj, 41).unwrap();
        assert_eq!(v.screens[0].verdict, ScreenVerdict::NoSporadicAtPrimeLevel);
        let v = classify_profile(&surj, 32).unwrap();
        assert!(v.screens.iter().any(|s| s.name == "two_power"));
        let b17 = GaloisProfile::new(vec![entry(17, ImageType::Borel, Some(17))], false);
        assert_eq!(
            classify_profile(&b17, 17).unwrap().screens[0].verdict,
            ScreenVerdict::NoSporadic
        );
    }

    #[test]
    fn sz_screen_keeps_only_37_borel() {
        let b37 = GaloisProfile::new(vec![entry(37, ImageType::Borel, Some(37))], true);
        let v = classify_profile(&b37, 37 * 41).unwrap();
        let s = v
            .screens
            .iter()
            .find(|s| s.name == "large_support_under_sz")
            .unwrap();
        assert_eq!(s.verdict, ScreenVerdict::Only37Borel);
        assert!(s.conditional);
        let b17 = GaloisProfile::new(vec![entry(17, ImageType::Borel, Some(17))], true);
        let v = classify_profile(&b17, 17 * 37).unwrap();
        let s = v
            .screens
            .iter()
            .find(|s| s.name == "large_support_under_sz")
            .unwrap();
        assert_eq!(s.verdict, ScreenVerdict::NoSporadic);
        let v = classify_profile(&b37, 37 * 5).unwrap();
        assert!(v.screens.iter().all(|s| s.name != "large_support_under_sz"));
    }

    #[test]
    fn profile_json() {
        let p = GaloisProfile::from_json(
            r#"{"field_degree":1,"nonsurjective":[{"prime":37,"type":"borel","level":37}],"flags":{"assume_sz":true}}"#,
        )
        .unwrap();
        assert_eq!(p.entry(37).unwrap().image_type, ImageType::Borel);
        assert!(p.flags.assume_sz);
        assert!(GaloisProfile::from_json(r#"{"flags":{"assume_xx":true}}"#).is_err());
        assert!(
            GaloisProfile::from_json(r#"{"nonsurjective":[{"prime":5,"type":"weird"}]}"#).is_err()
        );
        assert_eq!(GaloisProfile::from_json("{}").unwrap().s_set(), vec![2, 3]);
    }

    #[test]
    fn target_level_examples() {
        assert_eq!(target_level(96, 24).unwrap().target, 24);
        assert_eq!(target_level(96, 24).unwrap().map.degree, 16);
        assert_eq!(target_level(25, 1).unwrap().target, 1);
        assert_eq!(target_level(5 * 37, 37).unwrap().target, 37);
    }
}
