//! Level certificates for groups given at finite level: detection of the
//! ℓ-adic level from one full congruence kernel, minimization over
//! divisors, composition across primes, and the valuation bound behind the
//! classification table.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::{m1_table_lookup, special_image_order};
use crate::error::{Error, Result};
use crate::matgroup::MatGroup;
use crate::modarith::{gl2_order, is_prime, valuation, Modulus, Residue};

/// Smallest stage from which one full congruence kernel propagates upward:
/// 2 for ℓ = 2, else 1.
pub fn s0(ell: u64) -> u32 {
    if ell == 2 {
        2
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadicDetection {
    pub prime: u64,
    pub stage: u32,
    /// `|G mod ℓ^(s+1)|`.
    pub order_upper: u128,
    /// `|G mod ℓ^s|`.
    pub order_lower: u128,
    pub kernel_order: u128,
    pub full_kernel: bool,
    /// `ℓ^s` when the kernel is full: the ℓ-adic level divides it.
    pub level_divides: Option<u64>,
}

/// Checks whether `ker(G mod ℓ^(s+1) -> G mod ℓ^s)` is all of
/// `I + ℓ^s M_2`, by comparing orders. `g` is given mod `ℓ^k` with
/// `k >= s + 1`.
pub fn detect_ladic_level<T: Residue>(
    g: &MatGroup<T>,
    s: u32,
    cap: usize,
) -> Result<LadicDetection> {
    let (ell, k) = g
        .modulus()
        .prime_power()
        .ok_or_else(|| Error::InvalidInput(format!("modulus {} is not a prime power", g.n())))?;
    let min = s0(ell);
    if s < min {
        return Err(Error::StageTooLow {
            prime: ell,
            stage: s,
            min,
        });
    }
    if k < s + 1 {
        return Err(Error::PreconditionFailed(format!(
            "stage {s} needs the group mod {ell}^{}, got mod {}",
            s + 1,
            g.n()
        )));
    }
    let upper = g.project(ell.pow(s + 1))?.order(cap)?;
    let lower = g.project(ell.pow(s))?.order(cap)?;
    let kernel = upper / lower;
    let full = kernel == (ell as u128).pow(4);
    Ok(LadicDetection {
        prime: ell,
        stage: s,
        order_upper: upper,
        order_lower: lower,
        kernel_order: kernel,
        full_kernel: full,
        level_divides: full.then(|| ell.pow(s)),
    })
}

/// Smallest divisor `M` of `m` such that `g` is the full preimage of its
/// reduction mod `M`, given that it is the full preimage of its reduction
/// mod `m`. The check runs on `g mod m`.
pub fn minimize_level<T: Residue>(g: &MatGroup<T>, m: u64, cap: usize) -> Result<u64> {
    let gm = g.project(m)?;
    for d in Modulus::new(m)?.divisors() {
        if gm.is_full_preimage(d, cap)? {
            return Ok(d);
        }
    }
    unreachable!("every group is the full preimage of itself")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    pub prime: u64,
    pub t: u32,
    /// `m_i ℓ^(t+1)`, with `m_i` the product of the other primes.
    pub checked_modulus: u64,
    /// `m_i ℓ^t`.
    pub base_modulus: u64,
    pub order_checked: u128,
    pub order_base: u128,
    /// Whether `t >= s0(ℓ)`, so the one-step check propagates to all stages.
    pub meets_s0: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCertificate {
    pub prime_powers: Vec<(u64, u32)>,
    pub level: u64,
    /// Modulus at which the composite check was made.
    pub stage_modulus: u64,
    pub order_at_stage: u128,
    pub order_at_level: u128,
    pub evidence: Vec<PrimeEvidence>,
}

/// Composes per-prime level data `(ℓ_i, t_i)` into a certificate that `g`
/// is the full preimage of its reduction mod `M = prod ℓ_i^t_i`.
///
/// `g` is given mod a multiple of `prod ℓ_i^(t_i + 1)` supported on the
/// `ℓ_i`. For each `i` the group mod `m_i ℓ_i^(t_i+1)` must be the full
/// preimage of the group mod `m_i ℓ_i^t_i`, where `m_i` is the product of
/// the other primes; otherwise `HypothesisFailed(ℓ_i)`.
pub fn compose_level<T: Residue>(
    data: &[(u64, u32)],
    g: &MatGroup<T>,
    cap: usize,
) -> Result<LevelCertificate> {
    let mut data = data.to_vec();
    data.sort_unstable();
    for w in data.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::InvalidInput(format!(
                "prime {} listed twice",
                w[0].0
            )));
        }
    }
    if let Some(&(p, _)) = data.iter().find(|(p, _)| !is_prime(*p)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let primes: Vec<u64> = data.iter().map(|&(p, _)| p).collect();
    let support: Vec<u64> = g.modulus().primes().collect();
    if support != primes {
        return Err(Error::InvalidInput(format!(
            "modulus {} has support {support:?}, level data names {primes:?}",
            g.n()
        )));
    }
    let stage: u64 = data.iter().map(|&(p, t)| p.pow(t + 1)).product();
    if !g.modulus().is_multiple_of(stage) {
        return Err(Error::NotADivisor { m: stage, n: g.n() });
    }
    let g = g.project(stage)?;
    let level: u64 = data.iter().map(|&(p, t)| p.pow(t)).product();

    let mut evidence = Vec::with_capacity(data.len());
    for &(ell, t) in &data {
        let others: u64 = primes.iter().filter(|&&q| q != ell).product();
        let checked = others * ell.pow(t + 1);
        let base = others * ell.pow(t);
        let gc = g.project(checked)?;
        if !gc.is_full_preimage(base, cap)? {
            return Err(Error::HypothesisFailed { prime: ell });
        }
        evidence.push(PrimeEvidence {
            prime: ell,
            t,
            checked_modulus: checked,
            base_modulus: base,
            order_checked: gc.order(cap)?,
            order_base: gc.project(base)?.order(cap)?,
            meets_s0: t >= s0(ell),
        });
    }
    if !g.is_full_preimage(level, cap)? {
        return Err(Error::PreconditionFailed(format!(
            "group mod {stage} is not the full preimage of its reduction mod {level}"
        )));
    }
    Ok(LevelCertificate {
        prime_powers: data,
        level,
        stage_modulus: stage,
        order_at_stage: g.order(cap)?,
        order_at_level: g.project(level)?.order(cap)?,
        evidence,
    })
}

/// Inputs to the valuation bound for the level of the `m_S`-adic image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInput {
    pub primes: Vec<u64>,
    /// Single-prime levels `M_1({ℓ})`.
    pub single_levels: BTreeMap<u64, u64>,
    /// Image orders mod ℓ overriding `#GL2(Z/ℓ)`.
    pub image_orders: BTreeMap<u64, u128>,
    /// Explicit τ values overriding the default.
    pub tau: BTreeMap<u64, u32>,
}

impl BoundInput {
    /// Prime set with single-prime levels from the built-in table and full
    /// GL2 image orders.
    pub fn new(primes: &[u64]) -> Result<Self> {
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        let mut single_levels = BTreeMap::new();
        for &p in &ps {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if let Some(m) = m1_table_lookup(p) {
                single_levels.insert(p, m);
            }
        }
        Ok(Self {
            primes: ps,
            single_levels,
            image_orders: BTreeMap::new(),
            tau: BTreeMap::new(),
        })
    }

    /// The input behind the classification table column for `p` (1 for the
    /// column with only 2 and 3): image orders at 17 and 37 are the orders
    /// of the non-surjective images there.
    pub fn for_table_column(p: u64) -> Result<Self> {
        let primes: Vec<u64> = if p == 1 { vec![2, 3] } else { vec![2, 3, p] };
        let mut input = Self::new(&primes)?;
        if let Some(order) = special_image_order(p) {
            input = input.with_image_order(p, order)?;
        }
        Ok(input)
    }

    pub fn with_single_level(mut self, ell: u64, level: u64) -> Result<Self> {
        self.require_member(ell)?;
        if Modulus::new(level)?.primes().any(|q| q != ell) {
            return Err(Error::InvalidInput(format!(
                "{level} is not a power of {ell}"
            )));
        }
        self.single_levels.insert(ell, level);
        Ok(self)
    }

    pub fn with_image_order(mut self, ell: u64, order: u128) -> Result<Self> {
        self.require_member(ell)?;
        if order == 0 || !gl2_order(ell).is_multiple_of(order) {
            return Err(Error::InvalidInput(format!(
                "image order {order} does not divide #GL2(Z/{ell})"
            )));
        }
        self.image_orders.insert(ell, order);
        Ok(self)
    }

    pub fn with_tau(mut self, ell: u64, tau: u32) -> Result<Self> {
        self.require_member(ell)?;
        let cap = self.tau_cap(ell)?;
        if tau > cap {
            return Err(Error::PreconditionFailed(format!(
                "tau {tau} exceeds v_{ell}(#GL2(Z/m)) = {cap} for the other primes"
            )));
        }
        self.tau.insert(ell, tau);
        Ok(self)
    }

    fn require_member(&self, ell: u64) -> Result<()> {
        if self.primes.contains(&ell) {
            Ok(())
        } else {
            Err(Error::PrimeNotInSet {
                prime: ell,
                set: self.primes.clone(),
            })
        }
    }

    fn others(&self, ell: u64) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied().filter(move |&q| q != ell)
    }

    pub fn image_order(&self, ell: u64) -> u128 {
        self.image_orders
            .get(&ell)
            .copied()
            .unwrap_or_else(|| gl2_order(ell))
    }

    /// `v_ℓ(#GL2(Z/m))` with `m` the product of the other primes.
    pub fn tau_cap(&self, ell: u64) -> Result<u32> {
        self.require_member(ell)?;
        Ok(self.others(ell).map(|q| valuation(gl2_order(q), ell)).sum())
    }

    /// `sum over the other primes q of v_ℓ(#image mod q)`.
    pub fn default_tau(&self, ell: u64) -> Result<u32> {
        self.require_member(ell)?;
        Ok(self
            .others(ell)
            .map(|q| valuation(self.image_order(q), ell))
            .sum())
    }

    pub fn tau_for(&self, ell: u64) -> Result<u32> {
        match self.tau.get(&ell) {
            Some(&t) => Ok(t),
            None => self.default_tau(ell),
        }
    }
}

/// `max(v_ℓ(M_1({ℓ})), v_ℓ(2ℓ)) + τ`, a bound on the ℓ-adic valuation of the
/// level of the `m_S`-adic image.
pub fn level_bound(input: &BoundInput, ell: u64) -> Result<u32> {
    input.require_member(ell)?;
    let m1 = *input
        .single_levels
        .get(&ell)
        .ok_or_else(|| Error::InvalidInput(format!("no single-prime level for {ell}")))?;
    let base = valuation(m1 as u128, ell).max(valuation(2 * ell as u128, ell));
    Ok(base + input.tau_for(ell)?)
}

/// Reference values of the classification table, `(p, a_p, b_p)`.
pub const CLASSIFICATION_TABLE: [(u64, u32, u32); 7] = [
    (1, 9, 5),
    (5, 14, 6),
    (7, 14, 7),
    (11, 13, 6),
    (13, 14, 7),
    (17, 15, 5),
    (37, 13, 8),
];

/// Bound on `p^c` in the classification table.
pub const P_POWER_BOUND: u64 = 169;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    /// `v_p` bound and `p^c` for `p > 1`.
    pub c: Option<u32>,
    pub p_power: Option<u64>,
    pub matches_reference: bool,
}

/// Computes every column of the classification table from the valuation
/// bound and compares with the reference values.
pub fn classification_table() -> Result<Vec<ClassificationRow>> {
    CLASSIFICATION_TABLE
        .iter()
        .map(|&(p, a_ref, b_ref)| {
            let input = BoundInput::for_table_column(p)?;
            let a = level_bound(&input, 2)?;
            let b = level_bound(&input, 3)?;
            let c = if p > 1 {
                Some(level_bound(&input, p)?)
            } else {
                None
            };
            let p_power = c.map(|c| p.pow(c));
            let within = p_power.is_none_or(|q| q <= P_POWER_BOUND);
            Ok(ClassificationRow {
                p,
                a,
                b,
                c,
                p_power,
                matches_reference: a == a_ref && b == b_ref && within,
            })
        })
        .collect()
}
