//! Subgroups of GL2(Z/nZ) given by generators.
//!
//! The element set is materialized lazily by breadth-first closure with a
//! hash set and a hard cap on its size. There is no Schreier-Sims: any
//! membership or order question that needs more than the generators forces
//! materialization, and exceeding the cap is an error.

mod goursat;

pub use goursat::{goursat, goursat_pairs, GoursatData, PairGroup};

use std::hash::Hash;
use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{crt_join, gl2_order, identity_key, mul_keys, Mat2ModN, Modulus, Residue};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 1 << 24;

/// Environment variable read by [`cap_from_env`].
pub const CAP_ENV_VAR: &str = "X1_CLOSURE_CAP";

pub type ElementSet<T> = FxHashSet<[T; 4]>;

/// The closure cap, taken from `X1_CLOSURE_CAP` when set and valid.
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_CAP)
}

/// Closure of `gens` under multiplication, starting from `identity`.
///
/// Right-multiplies every newly found element by every generator; in a
/// finite group this yields the generated subgroup. The final set does not
/// depend on traversal order.
pub(crate) fn close_with<K, F>(identity: K, gens: &[K], mul: F, cap: usize) -> Result<FxHashSet<K>>
where
    K: Copy + Eq + Hash,
    F: Fn(&K, &K) -> K,
{
    let mut seen = FxHashSet::default();
    seen.insert(identity);
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: seen.len(),
                    });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

/// Enlarges a closed set `set = <gens>` to `<gens, new_gen>`.
fn extend_closure<T: Residue>(set: &mut ElementSet<T>, gens: &[[T; 4]], new_gen: [T; 4], n: T) {
    let mut frontier: Vec<[T; 4]> = Vec::new();
    let seeds: Vec<[T; 4]> = set.iter().map(|x| mul_keys(x, &new_gen, n)).collect();
    for y in seeds {
        if set.insert(y) {
            frontier.push(y);
        }
    }
    while let Some(x) = frontier.pop() {
        for g in gens.iter().chain(std::iter::once(&new_gen)) {
            let y = mul_keys(&x, g, n);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
}

/// JSON group file: `{"modulus": n, "generators": [[a,b,c,d], ...]}` with
/// row-major entries in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub modulus: u64,
    pub generators: Vec<[u64; 4]>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group file serializes")
    }
}

/// A subgroup of GL2(Z/nZ) given by generators, with a lazily materialized
/// element set.
#[derive(Clone, Debug)]
pub struct MatGroup<T: Residue> {
    modulus: Modulus,
    generators: Vec<Mat2ModN<T>>,
    elements: OnceLock<ElementSet<T>>,
}

impl<T: Residue> MatGroup<T> {
    /// A group from generators, all of which must be invertible mod `n`.
    pub fn new(n: u64, generators: Vec<Mat2ModN<T>>) -> Result<Self> {
        let modulus = Modulus::new(n)?;
        // Confirms that n fits the residue word.
        Mat2ModN::<T>::identity(n)?;
        for g in &generators {
            if g.modulus() != n {
                return Err(Error::ModulusMismatch {
                    left: n,
                    right: g.modulus(),
                });
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible { n, det: g.det() });
            }
        }
        let mut gens: Vec<Mat2ModN<T>> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Self {
            modulus,
            generators: gens,
            elements: OnceLock::new(),
        })
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        let n = file.modulus;
        let mut gens = Vec::with_capacity(file.generators.len());
        for e in &file.generators {
            if let Some(&bad) = e.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidInput(format!(
                    "generator entry {bad} is not reduced mod {n}"
                )));
            }
            gens.push(Mat2ModN::from_residues(n, *e)?);
        }
        Self::new(n, gens)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            modulus: self.modulus.value(),
            generators: self.generators.iter().map(Mat2ModN::entries).collect(),
        }
    }

    /// A group from a complete element set. Fails unless the set is a
    /// subgroup. A small generating set is extracted greedily.
    pub fn from_elements<I>(n: u64, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = Mat2ModN<T>>,
    {
        let id = Mat2ModN::<T>::identity(n)?;
        let nt = id.modulus_word();
        let mut keys: Vec<[T; 4]> = Vec::new();
        for g in elements {
            if g.modulus() != n {
                return Err(Error::ModulusMismatch {
                    left: n,
                    right: g.modulus(),
                });
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible { n, det: g.det() });
            }
            keys.push(g.key());
        }
        keys.sort_unstable();
        keys.dedup();
        let target: ElementSet<T> = keys.iter().copied().collect();

        let mut current: ElementSet<T> = FxHashSet::default();
        current.insert(id.key());
        let mut gens: Vec<[T; 4]> = Vec::new();
        for k in &keys {
            if !current.contains(k) {
                extend_closure(&mut current, &gens, *k, nt);
                gens.push(*k);
                if current.len() > target.len() {
                    break;
                }
            }
        }
        if current.len() != target.len() || !current.iter().all(|k| target.contains(k)) {
            return Err(Error::InvalidInput(format!(
                "element set of size {} is not a subgroup of GL2(Z/{n})",
                target.len()
            )));
        }
        let generators = gens
            .into_iter()
            .map(|k| Mat2ModN::from_key(nt, k))
            .collect();
        let group = Self::new(n, generators)?;
        let _ = group.elements.set(current);
        Ok(group)
    }

    /// The subgroup `{g in GL2(Z/n) : keep(g)}`, by enumerating all `n^4`
    /// matrices. Intended for small moduli.
    pub fn from_predicate<F>(n: u64, keep: F) -> Result<Self>
    where
        F: Fn(&Mat2ModN<T>) -> bool,
    {
        Self::from_elements(n, gl2_elements::<T>(n)?.into_iter().filter(|g| keep(g)))
    }

    pub fn trivial(n: u64) -> Result<Self> {
        Self::new(n, vec![])
    }

    /// SL2(Z/n), generated by `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
    pub fn sl2(n: u64) -> Result<Self> {
        Self::new(n, sl2_generators(n)?.to_vec())
    }

    /// GL2(Z/n): the SL2 generators plus `diag(u, 1)` for generators `u` of
    /// the unit group.
    pub fn gl2(n: u64) -> Result<Self> {
        let mut gens = sl2_generators(n)?.to_vec();
        for u in Modulus::new(n)?.unit_generators() {
            gens.push(Mat2ModN::from_residues(n, [u, 0, 0, 1])?);
        }
        Self::new(n, gens)
    }

    /// Upper-triangular Borel subgroup.
    pub fn borel(n: u64) -> Result<Self> {
        let mut gens = vec![Mat2ModN::new(n, [1, 1, 0, 1])?];
        for u in Modulus::new(n)?.unit_generators() {
            gens.push(Mat2ModN::from_residues(n, [u, 0, 0, 1])?);
            gens.push(Mat2ModN::from_residues(n, [1, 0, 0, u])?);
        }
        Self::new(n, gens)
    }

    /// Diagonal (split Cartan) subgroup.
    pub fn split_cartan(n: u64) -> Result<Self> {
        let mut gens = Vec::new();
        for u in Modulus::new(n)?.unit_generators() {
            gens.push(Mat2ModN::from_residues(n, [u, 0, 0, 1])?);
            gens.push(Mat2ModN::from_residues(n, [1, 0, 0, u])?);
        }
        Self::new(n, gens)
    }

    /// The full preimage in GL2(Z/big) of this group (mod `m`, `m | big`).
    ///
    /// Write `big = a * b` with `a` supported on the primes of `m` and `b`
    /// coprime to `m`. Generators are: lifts of our generators (identity
    /// mod `b`), `I + m E_ij` and `I + 2m E_ij` mod `a` (these generate the
    /// congruence kernel, the second family being needed only for 2-adic
    /// stage 1), and GL2 generators mod `b`.
    pub fn preimage(&self, big: u64) -> Result<Self> {
        let m = self.modulus.value();
        let big_mod = Modulus::new(big)?;
        if !big_mod.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: big });
        }
        let (a, b) = big_mod.split_along(m);
        let join = |part_a: Mat2ModN<T>, part_b: Mat2ModN<T>| -> Result<Mat2ModN<T>> {
            match (a, b) {
                (1, _) => Ok(part_b),
                (_, 1) => Ok(part_a),
                _ => crt_join(&[part_a, part_b]),
            }
        };
        let id_a = Mat2ModN::<T>::identity(a)?;
        let id_b = Mat2ModN::<T>::identity(b)?;
        let mut gens = Vec::new();
        if a > 1 {
            for g in &self.generators {
                gens.push(join(g.lift_naive(a)?, id_b)?);
            }
            for step in [m, 2 * m] {
                for pos in 0..4 {
                    let mut e = [1i64, 0, 0, 1];
                    e[pos] += step as i64;
                    let k = Mat2ModN::new(a, e)?;
                    if !k.is_identity() {
                        gens.push(join(k, id_b)?);
                    }
                }
            }
        }
        if b > 1 {
            for g in &MatGroup::<T>::gl2(b)?.generators {
                gens.push(join(id_a, *g)?);
            }
        }
        Self::new(big, gens)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.value()
    }

    pub fn generators(&self) -> &[Mat2ModN<T>] {
        &self.generators
    }

    fn word(&self) -> T {
        T::narrow(self.modulus.value())
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.get().is_some()
    }

    /// The element set, computing it on first use.
    pub fn materialize(&self, cap: usize) -> Result<&ElementSet<T>> {
        if let Some(set) = self.elements.get() {
            return Ok(set);
        }
        let n = self.word();
        let mut gens: Vec<[T; 4]> = Vec::with_capacity(2 * self.generators.len());
        for g in &self.generators {
            gens.push(g.key());
            let inv = g.inverse()?.key();
            if !gens.contains(&inv) {
                gens.push(inv);
            }
        }
        let set = close_with(identity_key(n), &gens, |x, y| mul_keys(x, y, n), cap)?;
        let _ = self.elements.set(set);
        Ok(self.elements.get().expect("just set"))
    }

    pub fn order(&self, cap: usize) -> Result<u128> {
        Ok(self.materialize(cap)?.len() as u128)
    }

    /// Elements in sorted order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Mat2ModN<T>>> {
        let n = self.word();
        let mut keys: Vec<[T; 4]> = self.materialize(cap)?.iter().copied().collect();
        keys.sort_unstable();
        Ok(keys.into_iter().map(|k| Mat2ModN::from_key(n, k)).collect())
    }

    /// Membership. The identity and the generators are recognized without
    /// materializing.
    pub fn contains(&self, g: &Mat2ModN<T>, cap: usize) -> Result<bool> {
        if g.modulus() != self.n() {
            return Err(Error::ModulusMismatch {
                left: self.n(),
                right: g.modulus(),
            });
        }
        if g.is_identity() || self.generators.contains(g) {
            return Ok(true);
        }
        Ok(self.materialize(cap)?.contains(&g.key()))
    }

    pub fn index_in_gl2(&self, cap: usize) -> Result<u128> {
        Ok(gl2_order(self.n()) / self.order(cap)?)
    }

    /// Image under reduction mod `m`, generated by the reduced generators.
    pub fn project(&self, m: u64) -> Result<Self> {
        if !self.modulus.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n() });
        }
        if m == self.n() {
            return Ok(self.clone());
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.reduce(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, gens)
    }

    /// Image of the materialized element set under reduction mod `m`.
    pub fn project_elements(&self, m: u64, cap: usize) -> Result<ElementSet<T>> {
        if !self.modulus.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n() });
        }
        let mw = T::narrow(m);
        Ok(self
            .materialize(cap)?
            .iter()
            .map(|k| k.map(|x| x % mw))
            .collect())
    }

    /// `{g in G : g = I mod m}`.
    pub fn kernel_of_projection(&self, m: u64, cap: usize) -> Result<Self> {
        if !self.modulus.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n() });
        }
        let n = self.word();
        let kernel: Vec<Mat2ModN<T>> = self
            .materialize(cap)?
            .iter()
            .map(|&k| Mat2ModN::from_key(n, k))
            .filter(|g| g.is_identity_mod(m))
            .collect();
        Self::from_elements(self.n(), kernel)
    }

    /// Whether G contains SL2(Z/n), tested on the two standard generators.
    pub fn contains_sl2(&self, cap: usize) -> Result<bool> {
        for g in sl2_generators::<T>(self.n())? {
            if !self.contains(&g, cap)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether G is the full preimage of its reduction mod `m`, by order
    /// bookkeeping: `|G| = |G mod m| * #GL2(Z/n) / #GL2(Z/m)`.
    pub fn is_full_preimage(&self, m: u64, cap: usize) -> Result<bool> {
        let small = self.project(m)?;
        let lhs = self.order(cap)?;
        let rhs = small.order(cap)? * (gl2_order(self.n()) / gl2_order(m));
        Ok(lhs == rhs)
    }

    /// `x G x^{-1}`.
    pub fn conjugate(&self, x: &Mat2ModN<T>) -> Result<Self> {
        let xi = x.inverse()?;
        let gens = self
            .generators
            .iter()
            .map(|g| x.try_mul(g)?.try_mul(&xi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n(), gens)
    }

    /// `<G, -I>`.
    pub fn with_minus_identity(&self) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(Mat2ModN::scalar(self.n(), -1)?);
        Self::new(self.n(), gens)
    }
}

/// `[[1,1],[0,1]]` and `[[1,0],[1,1]]`, which generate SL2(Z/n).
pub fn sl2_generators<T: Residue>(n: u64) -> Result<[Mat2ModN<T>; 2]> {
    Ok([
        Mat2ModN::new(n, [1, 1, 0, 1])?,
        Mat2ModN::new(n, [1, 0, 1, 1])?,
    ])
}

/// Every element of GL2(Z/n), by enumerating all `n^4` matrices.
pub fn gl2_elements<T: Residue>(n: u64) -> Result<Vec<Mat2ModN<T>>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let g = Mat2ModN::from_residues(n, [a, b, c, d])?;
                    if g.is_invertible() {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::{crt_join, sl2_order};

    type G = MatGroup<u32>;
    type M = Mat2ModN<u32>;
    const CAP: usize = DEFAULT_CAP;

    #[test]
    fn closure_examples() {
        assert_eq!(G::trivial(5).unwrap().order(CAP).unwrap(), 1);
        let gens = vec![
            M::new(5, [1, 1, 0, 1]).unwrap(),
            M::new(5, [1, 0, 1, 1]).unwrap(),
        ];
        assert_eq!(G::new(5, gens).unwrap().order(CAP).unwrap(), sl2_order(5));
        assert_eq!(G::gl2(8).unwrap().order(CAP).unwrap(), 1536);
        assert_eq!(G::gl2(8).unwrap().order(CAP).unwrap(), gl2_order(8));
    }

    #[test]
    fn standard_generators_produce_gl2_and_sl2() {
        for n in 1..=30 {
            assert_eq!(
                G::gl2(n).unwrap().order(CAP).unwrap(),
                gl2_order(n),
                "GL2 n={n}"
            );
            assert_eq!(
                G::sl2(n).unwrap().order(CAP).unwrap(),
                sl2_order(n),
                "SL2 n={n}"
            );
        }
    }

    #[test]
    fn cap_is_a_hard_error() {
        let err = G::gl2(7).unwrap().order(100).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                cap: 100,
                partial: 101
            }
        ));
    }

    #[test]
    fn non_invertible_generator_rejected() {
        let bad = M::new(4, [2, 0, 0, 1]).unwrap();
        assert!(matches!(
            G::new(4, vec![bad]),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let g35 = G::gl2(35).unwrap();
        let p7 = g35.project(7).unwrap();
        assert_eq!(p7.order(CAP).unwrap(), 2016);
        assert_eq!(p7.order(CAP).unwrap(), gl2_order(7));
        let b = G::borel(9).unwrap();
        assert_eq!(
            b.project(9).unwrap().order(CAP).unwrap(),
            b.order(CAP).unwrap()
        );
        assert_eq!(
            G::sl2(25).unwrap().project(5).unwrap().order(CAP).unwrap(),
            sl2_order(5)
        );
        assert!(matches!(
            g35.project(3),
            Err(Error::NotADivisor { m: 3, n: 35 })
        ));
    }

    #[test]
    fn projection_equals_image_of_elements() {
        for g in [
            G::borel(12).unwrap(),
            G::split_cartan(20).unwrap(),
            G::sl2(18).unwrap(),
        ] {
            for m in g.modulus().divisors() {
                let via_gens = g.project(m).unwrap();
                let image = g.project_elements(m, CAP).unwrap();
                assert_eq!(
                    via_gens.materialize(CAP).unwrap(),
                    &image,
                    "n={} m={m}",
                    g.n()
                );
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let k = G::gl2(15).unwrap().kernel_of_projection(3, CAP).unwrap();
        assert_eq!(k.order(CAP).unwrap(), 480);
        assert_eq!(k.order(CAP).unwrap(), gl2_order(15) / gl2_order(3));
        let b = G::borel(10).unwrap();
        assert_eq!(
            b.kernel_of_projection(10, CAP).unwrap().order(CAP).unwrap(),
            1
        );

        let k = G::sl2(35).unwrap().kernel_of_projection(7, CAP).unwrap();
        for g in sl2_generators::<u32>(5).unwrap() {
            let lifted = crt_join(&[g, M::identity(7).unwrap()]).unwrap();
            assert!(k.contains(&lifted, CAP).unwrap());
        }
    }

    #[test]
    fn orders_factor_through_projection() {
        let groups = [
            G::borel(12).unwrap(),
            G::split_cartan(15).unwrap(),
            G::sl2(20).unwrap(),
            G::gl2(18).unwrap(),
            G::borel(5).unwrap().preimage(25).unwrap(),
        ];
        for g in &groups {
            let order = g.order(CAP).unwrap();
            assert_eq!(gl2_order(g.n()) % order, 0, "Lagrange n={}", g.n());
            for m in g.modulus().divisors() {
                let k = g.kernel_of_projection(m, CAP).unwrap().order(CAP).unwrap();
                let p = g.project(m).unwrap().order(CAP).unwrap();
                assert_eq!(order, k * p, "n={} m={m}", g.n());
            }
        }
    }

    #[test]
    fn contains_sl2_examples() {
        assert!(G::gl2(7).unwrap().contains_sl2(CAP).unwrap());
        let b = G::borel(7).unwrap();
        assert_eq!(b.order(CAP).unwrap(), 252);
        assert!(b.order(CAP).unwrap() < sl2_order(7));
        assert!(!b.contains_sl2(CAP).unwrap());
        assert!(G::sl2(9).unwrap().contains_sl2(CAP).unwrap());
    }

    #[test]
    fn full_preimage_examples() {
        assert!(G::gl2(8).unwrap().is_full_preimage(2, CAP).unwrap());
        // |SL2(Z/4)| = 48 but a full preimage of SL2(Z/2) would have 6 * 16.
        let s = G::sl2(4).unwrap();
        assert_eq!(s.order(CAP).unwrap(), 48);
        assert!(!s.is_full_preimage(2, CAP).unwrap());
        let pre = G::borel(3).unwrap().preimage(9).unwrap();
        assert!(pre.is_full_preimage(3, CAP).unwrap());
    }

    #[test]
    fn preimage_has_expected_order() {
        let cases: [(G, u64); 6] = [
            (G::borel(2).unwrap(), 8),
            (G::borel(2).unwrap(), 32),
            (G::split_cartan(3).unwrap(), 27),
            (G::borel(6).unwrap(), 72),
            (G::trivial(4).unwrap(), 12),
            (G::sl2(5).unwrap(), 50),
        ];
        for (h, big) in cases {
            let pre = h.preimage(big).unwrap();
            let expected = h.order(CAP).unwrap() * gl2_order(big) / gl2_order(h.n());
            assert_eq!(pre.order(CAP).unwrap(), expected, "m={} N={big}", h.n());
            assert_eq!(
                pre.project(h.n()).unwrap().order(CAP).unwrap(),
                h.order(CAP).unwrap()
            );
        }
    }

    #[test]
    fn from_predicate_builds_det_subgroups() {
        let g = G::from_predicate(8, |g| [1, 3].contains(&g.det())).unwrap();
        assert_eq!(g.order(CAP).unwrap(), gl2_order(8) / 2);
        assert!(g.generators().len() <= 8);
        // Fresh closure from the extracted generators reproduces the set.
        let fresh = G::new(8, g.generators().to_vec()).unwrap();
        assert_eq!(fresh.order(CAP).unwrap(), gl2_order(8) / 2);
        assert!(matches!(
            G::from_predicate(5, |g| g.det() == 2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn group_file_round_trip_and_validation() {
        let f =
            GroupFile::from_json(r#"{"modulus": 5, "generators": [[1,1,0,1],[1,0,1,1]]}"#).unwrap();
        let g = G::from_file(&f).unwrap();
        assert_eq!(g.order(CAP).unwrap(), 120);
        assert_eq!(g.to_file(), f);
        let bad = GroupFile::from_json(r#"{"modulus": 5, "generators": [[5,1,0,1]]}"#).unwrap();
        assert!(matches!(G::from_file(&bad), Err(Error::InvalidInput(_))));
        assert!(GroupFile::from_json(r#"{"modulus": 5}"#).is_err());
        assert!(GroupFile::from_json(r#"{"modulus": 5, "generators": [], "x": 1}"#).is_err());
    }

    #[test]
    fn conjugation_and_minus_identity() {
        let b = G::borel(7).unwrap();
        let x = M::new(7, [0, 1, 1, 0]).unwrap();
        let c = b.conjugate(&x).unwrap();
        assert_eq!(c.order(CAP).unwrap(), 252);
        assert!(c.contains(&M::new(7, [1, 0, 1, 1]).unwrap(), CAP).unwrap());
        let s = G::split_cartan(5).unwrap();
        assert_eq!(s.with_minus_identity().unwrap().order(CAP).unwrap(), 16);
        let t = G::new(5, vec![M::new(5, [1, 1, 0, 1]).unwrap()]).unwrap();
        assert_eq!(t.with_minus_identity().unwrap().order(CAP).unwrap(), 10);
    }
}
