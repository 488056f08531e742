//! Subgroups of a direct product `GL2(Z/a) x GL2(Z/b)` as graphs of an
//! isomorphism between quotients.

use rustc_hash::{FxHashMap, FxHashSet};

use super::{close_with, MatGroup};
use crate::error::{Error, Result};
use crate::modarith::{crt_split, gcd, identity_key, mul_keys, Mat2ModN, Residue};

type PairKey<T> = ([T; 4], [T; 4]);

/// A subgroup of `GL2(Z/a) x GL2(Z/b)` given by generator pairs.
#[derive(Clone, Debug)]
pub struct PairGroup<T: Residue> {
    left_modulus: u64,
    right_modulus: u64,
    generators: Vec<(Mat2ModN<T>, Mat2ModN<T>)>,
}

impl<T: Residue> PairGroup<T> {
    pub fn new(a: u64, b: u64, generators: Vec<(Mat2ModN<T>, Mat2ModN<T>)>) -> Result<Self> {
        Mat2ModN::<T>::identity(a)?;
        Mat2ModN::<T>::identity(b)?;
        for (g, h) in &generators {
            for (x, m) in [(g, a), (h, b)] {
                if x.modulus() != m {
                    return Err(Error::ModulusMismatch {
                        left: m,
                        right: x.modulus(),
                    });
                }
                if !x.is_invertible() {
                    return Err(Error::NotInvertible { n: m, det: x.det() });
                }
            }
        }
        Ok(Self {
            left_modulus: a,
            right_modulus: b,
            generators,
        })
    }

    /// `{(g, g) : g in G}`, for two copies of the same modulus.
    pub fn diagonal(g: &MatGroup<T>) -> Result<Self> {
        let gens = g.generators().iter().map(|x| (*x, *x)).collect();
        Self::new(g.n(), g.n(), gens)
    }

    pub fn moduli(&self) -> (u64, u64) {
        (self.left_modulus, self.right_modulus)
    }

    pub fn generators(&self) -> &[(Mat2ModN<T>, Mat2ModN<T>)] {
        &self.generators
    }

    fn keys(&self) -> Vec<PairKey<T>> {
        self.generators
            .iter()
            .map(|(g, h)| (g.key(), h.key()))
            .collect()
    }

    /// Every element of the group.
    pub fn elements(&self, cap: usize) -> Result<FxHashSet<PairKey<T>>> {
        let (na, nb) = (T::narrow(self.left_modulus), T::narrow(self.right_modulus));
        let mut gens = self.keys();
        for (g, h) in &self.generators {
            gens.push((g.inverse()?.key(), h.inverse()?.key()));
        }
        close_with(
            (identity_key(na), identity_key(nb)),
            &gens,
            |x, y| (mul_keys(&x.0, &y.0, na), mul_keys(&x.1, &y.1, nb)),
            cap,
        )
    }
}

/// Goursat data of `H <= G x G'` with `G`, `G'` the two projections.
#[derive(Clone, Debug)]
pub struct GoursatData<T: Residue> {
    /// Projection of H to the left factor.
    pub left: MatGroup<T>,
    /// Projection of H to the right factor.
    pub right: MatGroup<T>,
    /// `N' = {g : (g, 1) in H}`, normal in `G`.
    pub left_kernel: MatGroup<T>,
    /// `N = {g' : (1, g') in H}`, normal in `G'`.
    pub right_kernel: MatGroup<T>,
    pub common_quotient_order: u128,
    pub order: u128,
    /// Canonical coset representatives paired by the isomorphism
    /// `G/N' -> G'/N`, sorted.
    pub graph_pairs: Vec<(Mat2ModN<T>, Mat2ModN<T>)>,
}

/// Goursat data of a group mod `a*b`, split along the coprime pair `(a, b)`.
pub fn goursat<T: Residue>(h: &MatGroup<T>, a: u64, b: u64, cap: usize) -> Result<GoursatData<T>> {
    if gcd(a, b) != 1 || a.checked_mul(b) != Some(h.n()) {
        return Err(Error::NonCoprimeModuli(vec![a, b]));
    }
    let mut gens = Vec::with_capacity(h.generators().len());
    for g in h.generators() {
        let parts = crt_split(g, &[a, b])?;
        gens.push((parts[0], parts[1]));
    }
    let data = goursat_pairs(&PairGroup::new(a, b, gens)?, cap)?;
    if data.order != h.order(cap)? {
        return Err(Error::PreconditionFailed(
            "CRT image of the group does not match its order".into(),
        ));
    }
    Ok(data)
}

/// Maps every element of `group` to the smallest key in its coset `g N`.
fn coset_canon<T: Residue>(
    group: &FxHashSet<[T; 4]>,
    normal: &FxHashSet<[T; 4]>,
    n: T,
) -> FxHashMap<[T; 4], [T; 4]> {
    let normal: Vec<[T; 4]> = normal.iter().copied().collect();
    let mut canon = FxHashMap::default();
    let mut sorted: Vec<[T; 4]> = group.iter().copied().collect();
    sorted.sort_unstable();
    for g in sorted {
        if canon.contains_key(&g) {
            continue;
        }
        // Traversing in sorted order makes `g` the minimum of its coset.
        for k in &normal {
            canon.insert(mul_keys(&g, k, n), g);
        }
    }
    canon
}

pub fn goursat_pairs<T: Residue>(h: &PairGroup<T>, cap: usize) -> Result<GoursatData<T>> {
    let (a, b) = h.moduli();
    let (na, nb) = (T::narrow(a), T::narrow(b));
    let elements = h.elements(cap)?;
    let (id_a, id_b) = (identity_key(na), identity_key(nb));

    let left = MatGroup::new(a, h.generators().iter().map(|p| p.0).collect())?;
    let right = MatGroup::new(b, h.generators().iter().map(|p| p.1).collect())?;
    let left_set = left.materialize(cap)?;
    let right_set = right.materialize(cap)?;

    let nl: FxHashSet<[T; 4]> = elements
        .iter()
        .filter(|p| p.1 == id_b)
        .map(|p| p.0)
        .collect();
    let nr: FxHashSet<[T; 4]> = elements
        .iter()
        .filter(|p| p.0 == id_a)
        .map(|p| p.1)
        .collect();

    let (gl, gr) = (left_set.len() as u128, right_set.len() as u128);
    let (kl, kr) = (nl.len() as u128, nr.len() as u128);
    if gl % kl != 0 || gr % kr != 0 || gl / kl != gr / kr {
        return Err(Error::PreconditionFailed(format!(
            "quotient orders differ: {gl}/{kl} vs {gr}/{kr}"
        )));
    }
    let q = gl / kl;

    let canon_l = coset_canon(left_set, &nl, na);
    let canon_r = coset_canon(right_set, &nr, nb);

    let mut forward: FxHashMap<[T; 4], [T; 4]> = FxHashMap::default();
    for (x, y) in &elements {
        let (cx, cy) = (canon_l[x], canon_r[y]);
        if *forward.entry(cx).or_insert(cy) != cy {
            return Err(Error::PreconditionFailed(
                "coset pairing is not well defined".into(),
            ));
        }
    }
    let image: FxHashSet<[T; 4]> = forward.values().copied().collect();
    if forward.len() as u128 != q || image.len() as u128 != q {
        return Err(Error::PreconditionFailed(
            "coset pairing is not a bijection".into(),
        ));
    }
    for (cx, cy) in &forward {
        for (s, t) in h.keys() {
            let lhs = canon_l[&mul_keys(cx, &s, na)];
            let rhs = canon_r[&mul_keys(cy, &t, nb)];
            if forward[&lhs] != rhs {
                return Err(Error::PreconditionFailed(
                    "coset pairing is not a homomorphism".into(),
                ));
            }
        }
    }

    let mut graph_pairs: Vec<(Mat2ModN<T>, Mat2ModN<T>)> = forward
        .iter()
        .map(|(x, y)| (Mat2ModN::from_key(na, *x), Mat2ModN::from_key(nb, *y)))
        .collect();
    graph_pairs.sort_unstable();

    let order = elements.len() as u128;
    let to_group = |n: u64, nt: T, set: FxHashSet<[T; 4]>| {
        MatGroup::from_elements(n, set.into_iter().map(|k| Mat2ModN::from_key(nt, k)))
    };
    Ok(GoursatData {
        left_kernel: to_group(a, na, nl)?,
        right_kernel: to_group(b, nb, nr)?,
        left,
        right,
        common_quotient_order: q,
        order,
        graph_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{gl2_elements, DEFAULT_CAP};
    use crate::modarith::gl2_order;

    type G = MatGroup<u32>;
    type M = Mat2ModN<u32>;
    const CAP: usize = DEFAULT_CAP;

    fn check_counts(d: &GoursatData<u32>) {
        let n = d.right_kernel.order(CAP).unwrap();
        let n2 = d.left_kernel.order(CAP).unwrap();
        assert_eq!(d.order, d.common_quotient_order * n * n2);
    }

    #[test]
    fn full_product_has_trivial_quotient() {
        let d = goursat(&G::gl2(6).unwrap(), 2, 3, CAP).unwrap();
        assert_eq!(d.common_quotient_order, 1);
        assert_eq!(d.left_kernel.order(CAP).unwrap(), gl2_order(2));
        assert_eq!(d.right_kernel.order(CAP).unwrap(), gl2_order(3));
        check_counts(&d);
    }

    #[test]
    fn diagonal_subgroup() {
        let d = goursat_pairs(&PairGroup::diagonal(&G::gl2(5).unwrap()).unwrap(), CAP).unwrap();
        assert_eq!(d.common_quotient_order, 480);
        assert_eq!(d.left_kernel.order(CAP).unwrap(), 1);
        assert_eq!(d.right_kernel.order(CAP).unwrap(), 1);
        assert_eq!(d.graph_pairs.len(), 480);
        assert!(d.graph_pairs.iter().all(|(x, y)| x == y));
        check_counts(&d);
    }

    /// Sign of a matrix in GL2(Z/2), viewed as a permutation of the three
    /// nonzero vectors of F_2^2.
    fn sign_mod2(g: &M) -> bool {
        let vs = [[1u64, 0], [0, 1], [1, 1]];
        let img: Vec<usize> = vs
            .iter()
            .map(|v| {
                let e = g.entries();
                let w = [
                    (e[0] * v[0] + e[1] * v[1]) % 2,
                    (e[2] * v[0] + e[3] * v[1]) % 2,
                ];
                vs.iter().position(|u| *u == w).unwrap()
            })
            .collect();
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if img[i] > img[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    #[test]
    fn sign_times_determinant_fibre_product() {
        // H = {(g, h) : sign(g) = [det h = 2]} in GL2(Z/2) x GL2(Z/3).
        let left = gl2_elements::<u32>(2).unwrap();
        let right = gl2_elements::<u32>(3).unwrap();
        let mut gens = Vec::new();
        let mut brute = 0u128;
        for g in &left {
            for h in &right {
                if sign_mod2(g) == (h.det() == 2) {
                    gens.push((*g, *h));
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 144);
        let d = goursat_pairs(&PairGroup::new(2, 3, gens).unwrap(), CAP).unwrap();
        assert_eq!(d.order, brute);
        assert_eq!(d.common_quotient_order, 2);
        assert_eq!(d.left_kernel.order(CAP).unwrap(), 3);
        assert_eq!(d.right_kernel.order(CAP).unwrap(), 24);
        check_counts(&d);
    }

    #[test]
    fn single_modulus_requires_coprime_split() {
        let g = G::gl2(12).unwrap();
        assert!(matches!(
            goursat(&g, 2, 6, CAP),
            Err(Error::NonCoprimeModuli(_))
        ));
        assert!(matches!(
            goursat(&g, 3, 5, CAP),
            Err(Error::NonCoprimeModuli(_))
        ));
    }

    #[test]
    fn counts_hold_on_assorted_groups() {
        let groups = [
            (G::borel(6).unwrap(), 2, 3),
            (G::split_cartan(15).unwrap(), 3, 5),
            (G::sl2(10).unwrap(), 2, 5),
            (G::borel(10).unwrap(), 5, 2),
        ];
        for (g, a, b) in groups {
            let d = goursat(&g, a, b, CAP).unwrap();
            check_counts(&d);
        }
    }
}
