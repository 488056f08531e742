//! Orbits of a mod-n image on vectors of exact order n, and the degrees of
//! the closed points of X_1(n) they correspond to.

use serde::Serialize;

use crate::curveinv::map_degree;
use crate::error::{Error, Result};
use crate::matgroup::MatGroup;
use crate::modarith::{Modulus, Residue, Vec2ModN};

/// Every vector of `(Z/n)^2` of exact order `d`, in increasing coordinate
/// order.
pub fn exact_order_vectors<T: Residue>(n: u64, d: u64) -> Result<Vec<Vec2ModN<T>>> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { m: d, n });
    }
    Modulus::new(n)?;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let v = Vec2ModN::new(n, [x as i64, y as i64])?;
            if v.order() == d {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Number of vectors of exact order `n` in `(Z/n)^2`: `n^2 prod (1 - 1/p^2)`.
pub fn exact_order_count(n: u64) -> u64 {
    let mut c = n as u128 * n as u128;
    for (p, _) in crate::modarith::factorize(n) {
        let p2 = (p * p) as u128;
        c = c / p2 * (p2 - 1);
    }
    c as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    /// Smallest vector of the orbit, as `[x, y]`.
    pub representative: [u64; 2],
    pub size: u64,
    pub point_order: u64,
    pub minus_closed: bool,
    /// Whether the point degree is half the orbit size times the field degree.
    pub half: bool,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSpectrum {
    pub modulus: u64,
    pub field_degree: u64,
    pub records: Vec<OrbitRecord>,
    /// Orbit index of each vector code `x * n + y`; `u32::MAX` off the
    /// exact-order-n vectors.
    #[serde(skip)]
    index: Vec<u32>,
}

impl DegreeSpectrum {
    /// The record of the orbit containing `v`, which must have exact order n.
    pub fn record_of(&self, coords: [u64; 2]) -> Option<&OrbitRecord> {
        let n = self.modulus;
        if coords[0] >= n || coords[1] >= n {
            return None;
        }
        let i = self.index[(coords[0] * n + coords[1]) as usize];
        self.records.get(i as usize)
    }

    /// Sorted multiset of point degrees.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.records.iter().map(|r| r.degree).collect();
        d.sort_unstable();
        d
    }

    /// Sorted multiset of orbit sizes.
    pub fn sizes(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.records.iter().map(|r| r.size).collect();
        s.sort_unstable();
        s
    }

    /// Sum of `degree / field_degree` over all orbits; for the full GL2 image
    /// this is the degree of X_1(n) -> X(1).
    pub fn total_degree(&self) -> u64 {
        self.records.iter().map(|r| r.degree).sum::<u64>() / self.field_degree
    }
}

/// Partitions the vectors of exact order n into orbits of `g` and assigns
/// each the degree of the corresponding closed point of X_1(n), using only
/// the generators of `g`.
pub fn degree_spectrum<T: Residue>(g: &MatGroup<T>, field_degree: u64) -> Result<DegreeSpectrum> {
    if field_degree == 0 {
        return Err(Error::InvalidInput("field degree must be positive".into()));
    }
    let n = g.n();
    let nt = T::narrow(n);
    let cells = (n as usize)
        .checked_mul(n as usize)
        .ok_or_else(|| Error::InvalidInput(format!("modulus {n} too large for orbit tables")))?;
    let gens = g.generators();
    let mut index = vec![u32::MAX; cells];
    let mut records = Vec::new();
    let mut queue = Vec::new();

    for code in 0..cells {
        if index[code] != u32::MAX {
            continue;
        }
        let p = Vec2ModN::<T>::from_code(nt, code);
        if p.order() != n {
            continue;
        }
        let id = records.len() as u32;
        index[code] = id;
        queue.clear();
        queue.push(code);
        let mut size = 0u64;
        while let Some(c) = queue.pop() {
            size += 1;
            let v = Vec2ModN::<T>::from_code(nt, c);
            for m in gens {
                let w = m.apply_unchecked(&v).code();
                if index[w] == u32::MAX {
                    index[w] = id;
                    queue.push(w);
                }
            }
        }
        let minus_closed = index[p.neg().code()] == id;
        let half = minus_closed && n > 2;
        if half {
            assert!(
                size.is_multiple_of(2),
                "orbit closed under -1 must have even size"
            );
        }
        let degree = if half {
            field_degree * size / 2
        } else {
            field_degree * size
        };
        records.push(OrbitRecord {
            representative: p.coords(),
            size,
            point_order: n,
            minus_closed,
            half,
            degree,
        });
    }
    Ok(DegreeSpectrum {
        modulus: n,
        field_degree,
        records,
        index,
    })
}

/// `#{Q : bQ = bP, Q of exact order n}` for `P` of exact order `n`, where
/// `b | n`: the points `Q = P + (n/b)(s, t)` of exact order n.
pub fn fiber_count<T: Residue>(p: &Vec2ModN<T>, b: u64) -> Result<u64> {
    let n = p.modulus();
    if p.order() != n {
        return Err(Error::OrderMismatch {
            expected: n,
            actual: p.order(),
        });
    }
    if b == 0 || !n.is_multiple_of(b) {
        return Err(Error::NotADivisor { m: b, n });
    }
    let step = n / b;
    let mut count = 0;
    for s in 0..b {
        for t in 0..b {
            let shift = Vec2ModN::new(n, [(s * step) as i64, (t * step) as i64])?;
            if p.add(&shift)?.order() == n {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub representative: [u64; 2],
    pub orbit_size: u64,
    /// Coordinates of `bP` as a point of exact order `a`.
    pub image: [u64; 2],
    pub image_orbit_size: u64,
    /// `[k(P) : k(bP)]`.
    pub ratio: u64,
    pub fiber_count: u64,
    pub maximal: bool,
    pub degree: u64,
    pub image_degree: u64,
    /// `deg(x) = deg(f) deg(f(x))`.
    pub degree_multiplicative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub modulus: u64,
    pub a: u64,
    pub b: u64,
    pub map_degree: u64,
    pub rows: Vec<GrowthRow>,
}

impl GrowthReport {
    pub fn all_maximal(&self) -> bool {
        self.rows.iter().all(|r| r.maximal)
    }
}

/// Compares degree growth along X_1(ab) -> X_1(a) with the largest
/// possible growth, orbit by orbit. Here `ab` is the modulus of `g`.
pub fn max_growth_check<T: Residue>(g: &MatGroup<T>, b: u64) -> Result<GrowthReport> {
    let n = g.n();
    if b == 0 || !n.is_multiple_of(b) {
        return Err(Error::NotADivisor { m: b, n });
    }
    let a = n / b;
    let upper = degree_spectrum(g, 1)?;
    let lower = degree_spectrum(&g.project(a)?, 1)?;
    let deg_f = map_degree(a, b).degree;
    let nt = T::narrow(n);
    let mut rows = Vec::with_capacity(upper.records.len());
    for r in &upper.records {
        let p =
            Vec2ModN::<T>::from_code(nt, (r.representative[0] * n + r.representative[1]) as usize);
        let image = p.reduce(a)?.coords();
        let below = lower.record_of(image).expect("bP has exact order a");
        assert!(r.size % below.size == 0, "orbit map is equivariant");
        let ratio = r.size / below.size;
        let fibre = fiber_count(&p, b)?;
        rows.push(GrowthRow {
            representative: r.representative,
            orbit_size: r.size,
            image,
            image_orbit_size: below.size,
            ratio,
            fiber_count: fibre,
            maximal: ratio == fibre,
            degree: r.degree,
            image_degree: below.degree,
            degree_multiplicative: r.degree == deg_f * below.degree,
        });
    }
    Ok(GrowthReport {
        modulus: n,
        a,
        b,
        map_degree: deg_f,
        rows,
    })
}
