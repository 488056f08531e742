//! Exact arithmetic in Z/nZ: residues, 2x2 matrices and column vectors, and
//! the CRT decomposition of matrices along coprime moduli.
//!
//! Residues are stored in the canonical range `[0, n)`. Every constructor
//! reduces, so structural equality and hashing are bit-exact.

use std::fmt;
use std::hash::Hash;
use std::ops::Mul;

use num_traits::{PrimInt, Unsigned};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = i64::MAX as u64;

/// Unsigned machine word used to store residues.
///
/// Implemented for `u16`, `u32` and `u64`. Narrower words shrink the element
/// sets built during group closure; the modulus must fit the word.
pub trait Residue:
    PrimInt
    + Unsigned
    + Hash
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts a value already known to fit.
    fn narrow(v: u64) -> Self;
    fn widen(self) -> u64;
    /// `self * rhs mod n`, for `self, rhs < n`.
    fn mul_mod(self, rhs: Self, n: Self) -> Self;

    #[inline]
    fn add_mod(self, rhs: Self, n: Self) -> Self {
        if self >= n - rhs {
            self - (n - rhs)
        } else {
            self + rhs
        }
    }

    #[inline]
    fn sub_mod(self, rhs: Self, n: Self) -> Self {
        if self >= rhs {
            self - rhs
        } else {
            n - (rhs - self)
        }
    }

    /// Whether `n` can be used as a modulus with this word.
    fn fits(n: u64) -> bool {
        n <= Self::max_value().widen()
    }
}

macro_rules! impl_residue_via {
    ($t:ty, $wide:ty) => {
        impl Residue for $t {
            #[inline]
            fn narrow(v: u64) -> Self {
                v as $t
            }
            #[inline]
            fn widen(self) -> u64 {
                self as u64
            }
            #[inline]
            fn mul_mod(self, rhs: Self, n: Self) -> Self {
                ((self as $wide * rhs as $wide) % n as $wide) as $t
            }
        }
    };
}

impl_residue_via!(u16, u32);
impl_residue_via!(u32, u64);

impl Residue for u64 {
    #[inline]
    fn narrow(v: u64) -> Self {
        v
    }
    #[inline]
    fn widen(self) -> u64 {
        self
    }
    #[inline]
    fn mul_mod(self, rhs: Self, n: Self) -> Self {
        if n <= u32::MAX as u64 {
            (self * rhs) % n
        } else {
            ((self as u128 * rhs as u128) % n as u128) as u64
        }
    }
}

fn check_fits<T: Residue>(n: u64) -> Result<T> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::InvalidModulus(n));
    }
    if !T::fits(n) {
        return Err(Error::ResidueOverflow {
            n,
            bits: T::zero().count_zeros(),
        });
    }
    Ok(T::narrow(n))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mod_pow(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul_mod(b, n);
        }
        b = b.mul_mod(b, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if `a` is a unit.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

/// Solves `x = r_i mod m_i` for pairwise coprime moduli.
pub fn crt(residues: &[u64], moduli: &[u64]) -> Result<u64> {
    if residues.len() != moduli.len() {
        return Err(Error::InvalidInput(
            "crt: residue and modulus lists differ in length".into(),
        ));
    }
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for (&r, &mi) in residues.iter().zip(moduli) {
        if gcd(m as u64, mi) != 1 {
            return Err(Error::NonCoprimeModuli(moduli.to_vec()));
        }
        let mi = mi as u128;
        // x' = x + m * ((r - x) * m^{-1} mod mi)
        let inv = mod_inverse((m % mi) as u64, mi as u64).expect("coprime") as u128;
        let diff = ((r as u128 % mi) + mi - x % mi) % mi;
        let t = (diff * inv) % mi;
        x += m * t;
        m *= mi;
        if m > MAX_MODULUS as u128 {
            return Err(Error::InvalidModulus(u64::MAX));
        }
    }
    Ok(x as u64)
}

/// Trial-division factorization with primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// The `p`-adic valuation of a nonzero integer.
pub fn valuation(mut x: u128, p: u64) -> u32 {
    assert!(x != 0 && p >= 2);
    let p = p as u128;
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Order of GL2(Z/nZ). Multiplicative over prime powers, with
/// `#GL2(Z/l^k) = l^{4(k-1)} (l^2 - 1)(l^2 - l)`.
///
/// Panics if the order overflows `u128` (only for `n` beyond 2^31).
pub fn gl2_order(n: u64) -> u128 {
    factorize(n)
        .into_iter()
        .map(|(l, k)| {
            let l = l as u128;
            l.checked_pow(4 * (k - 1))
                .and_then(|x| x.checked_mul(l * l - 1))
                .and_then(|x| x.checked_mul(l * l - l))
                .expect("gl2 order overflows u128")
        })
        .fold(1u128, |acc, x| {
            acc.checked_mul(x).expect("gl2 order overflows u128")
        })
}

/// Order of SL2(Z/nZ), i.e. `gl2_order(n) / phi(n)`.
pub fn sl2_order(n: u64) -> u128 {
    gl2_order(n) / euler_phi(n) as u128
}

/// A modulus `n >= 1` together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus {
    n: u64,
    factorization: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > MAX_MODULUS {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Self {
            n,
            factorization: factorize(n),
        })
    }

    pub fn value(&self) -> u64 {
        self.n
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factorization.iter().map(|&(p, _)| p)
    }

    /// True when `m` divides `n`.
    pub fn is_multiple_of(&self, m: u64) -> bool {
        m != 0 && self.n.is_multiple_of(m)
    }

    /// The single prime `l` when `n = l^k` with `k >= 1`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.factorization.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// All positive divisors of `n` in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factorization {
            let current = divs.clone();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                divs.extend(current.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    /// The prime-power components `l^k` of `n`.
    pub fn prime_power_parts(&self) -> Vec<u64> {
        self.factorization.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn euler_phi(&self) -> u64 {
        self.factorization
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// Splits `n = a * b` where `a` is supported on the primes of `m` and
    /// `b` is coprime to `m`.
    pub fn split_along(&self, m: u64) -> (u64, u64) {
        let mut a = 1;
        for &(p, e) in &self.factorization {
            if m.is_multiple_of(p) {
                a *= p.pow(e);
            }
        }
        (a, self.n / a)
    }

    /// A generating set of the unit group (Z/nZ)^x, one CRT-lifted generator
    /// per cyclic factor.
    pub fn unit_generators(&self) -> Vec<u64> {
        let parts = self.prime_power_parts();
        let mut gens = Vec::new();
        for (i, &(p, e)) in self.factorization.iter().enumerate() {
            let q = parts[i];
            let local: Vec<u64> = if p == 2 {
                match e {
                    1 => vec![],
                    2 => vec![3],
                    _ => vec![q - 1, 5],
                }
            } else {
                vec![primitive_root_prime_power(p, e)]
            };
            for g in local {
                let residues: Vec<u64> = parts
                    .iter()
                    .enumerate()
                    .map(|(j, &qj)| if j == i { g } else { 1 % qj })
                    .collect();
                gens.push(crt(&residues, &parts).expect("prime-power parts are coprime"));
            }
        }
        gens
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let qs: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    let g = (2..p)
        .find(|&g| qs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .unwrap_or(1);
    if e == 1 {
        return g;
    }
    // A primitive root mod p lifts to one mod p^e unless g^(p-1) = 1 mod p^2.
    if mod_pow(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// A 2x2 matrix over Z/nZ, stored row-major as `[a, b, c, d]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2ModN<T> {
    modulus: T,
    entries: [T; 4],
}

#[inline]
pub(crate) fn mul_keys<T: Residue>(a: &[T; 4], b: &[T; 4], n: T) -> [T; 4] {
    [
        a[0].mul_mod(b[0], n).add_mod(a[1].mul_mod(b[2], n), n),
        a[0].mul_mod(b[1], n).add_mod(a[1].mul_mod(b[3], n), n),
        a[2].mul_mod(b[0], n).add_mod(a[3].mul_mod(b[2], n), n),
        a[2].mul_mod(b[1], n).add_mod(a[3].mul_mod(b[3], n), n),
    ]
}

#[inline]
pub(crate) fn identity_key<T: Residue>(n: T) -> [T; 4] {
    let one = if n == T::one() { T::zero() } else { T::one() };
    [one, T::zero(), T::zero(), one]
}

fn reduce_signed(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

impl<T: Residue> Mat2ModN<T> {
    /// Builds a matrix from arbitrary integers, reducing them mod `n`.
    pub fn new(n: u64, entries: [i64; 4]) -> Result<Self> {
        let nt = check_fits::<T>(n)?;
        Ok(Self {
            modulus: nt,
            entries: entries.map(|x| T::narrow(reduce_signed(x, n))),
        })
    }

    pub fn from_residues(n: u64, entries: [u64; 4]) -> Result<Self> {
        let nt = check_fits::<T>(n)?;
        Ok(Self {
            modulus: nt,
            entries: entries.map(|x| T::narrow(x % n)),
        })
    }

    pub(crate) fn from_key(n: T, entries: [T; 4]) -> Self {
        Self {
            modulus: n,
            entries,
        }
    }

    pub fn identity(n: u64) -> Result<Self> {
        Self::new(n, [1, 0, 0, 1])
    }

    pub fn scalar(n: u64, s: i64) -> Result<Self> {
        Self::new(n, [s, 0, 0, s])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.widen()
    }

    pub(crate) fn modulus_word(&self) -> T {
        self.modulus
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries.map(Residue::widen)
    }

    pub(crate) fn key(&self) -> [T; 4] {
        self.entries
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        a.mul_mod(d, n).sub_mod(b.mul_mod(c, n), n).widen()
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det(), self.modulus()) == 1
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.modulus;
        let det = self.det();
        let inv = mod_inverse(det, self.modulus()).ok_or(Error::NotInvertible {
            n: self.modulus(),
            det,
        })?;
        let inv = T::narrow(inv);
        let [a, b, c, d] = self.entries;
        let zero = T::zero();
        Ok(Self::from_key(
            n,
            [
                d.mul_mod(inv, n),
                zero.sub_mod(b, n).mul_mod(inv, n),
                zero.sub_mod(c, n).mul_mod(inv, n),
                a.mul_mod(inv, n),
            ],
        ))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: rhs.modulus(),
            });
        }
        Ok(Self::from_key(
            self.modulus,
            mul_keys(&self.entries, &rhs.entries, self.modulus),
        ))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::from_key(self.modulus, identity_key(self.modulus));
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.entries == identity_key(self.modulus)
    }

    /// Whether the matrix reduces to the identity mod `m` (`m | n`).
    pub fn is_identity_mod(&self, m: u64) -> bool {
        let [a, b, c, d] = self.entries();
        a % m == 1 % m && b % m == 0 && c % m == 0 && d % m == 1 % m
    }

    /// Entrywise reduction to a divisor `m` of `n`.
    pub fn reduce(&self, m: u64) -> Result<Self> {
        if m == 0 || !self.modulus().is_multiple_of(m) {
            return Err(Error::NotADivisor {
                m,
                n: self.modulus(),
            });
        }
        Self::from_residues(m, self.entries())
    }

    /// Lifts entries to a multiple `big` of `n` by taking the canonical
    /// representatives in `[0, n)`. The result need not be invertible.
    pub fn lift_naive(&self, big: u64) -> Result<Self> {
        if !big.is_multiple_of(self.modulus()) {
            return Err(Error::NotADivisor {
                m: self.modulus(),
                n: big,
            });
        }
        Self::from_residues(big, self.entries())
    }

    pub fn apply(&self, v: &Vec2ModN<T>) -> Result<Vec2ModN<T>> {
        if self.modulus != v.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: v.modulus(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, v: &Vec2ModN<T>) -> Vec2ModN<T> {
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        let [x, y] = v.coords;
        Vec2ModN {
            modulus: n,
            coords: [
                a.mul_mod(x, n).add_mod(b.mul_mod(y, n), n),
                c.mul_mod(x, n).add_mod(d.mul_mod(y, n), n),
            ],
        }
    }
}

impl<T: Residue> Mul for Mat2ModN<T> {
    type Output = Self;

    /// Panics on a modulus mismatch; use [`Mat2ModN::try_mul`] to get an error.
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("matrix modulus mismatch")
    }
}

impl<T: Residue> fmt::Debug for Mat2ModN<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]] mod {}", self.modulus)
    }
}

impl<T: Residue> fmt::Display for Mat2ModN<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn mat_mul<T: Residue>(a: &Mat2ModN<T>, b: &Mat2ModN<T>) -> Result<Mat2ModN<T>> {
    a.try_mul(b)
}

pub fn mat_det<T: Residue>(a: &Mat2ModN<T>) -> u64 {
    a.det()
}

pub fn mat_inv<T: Residue>(a: &Mat2ModN<T>) -> Result<Mat2ModN<T>> {
    a.inverse()
}

fn check_coprime_factorization(n: u64, factors: &[u64]) -> Result<()> {
    let product = factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .unwrap_or(0);
    let coprime = factors
        .iter()
        .enumerate()
        .all(|(i, &a)| factors[i + 1..].iter().all(|&b| gcd(a, b) == 1));
    if factors.contains(&0) || product != n || !coprime {
        return Err(Error::NonCoprimeModuli(factors.to_vec()));
    }
    Ok(())
}

/// Splits a matrix mod `n` into its reductions along pairwise coprime
/// factors whose product is `n`.
pub fn crt_split<T: Residue>(a: &Mat2ModN<T>, factors: &[u64]) -> Result<Vec<Mat2ModN<T>>> {
    check_coprime_factorization(a.modulus(), factors)?;
    factors.iter().map(|&m| a.reduce(m)).collect()
}

/// Inverse of [`crt_split`]: the unique matrix mod the product reducing to
/// each component.
pub fn crt_join<T: Residue>(parts: &[Mat2ModN<T>]) -> Result<Mat2ModN<T>> {
    let moduli: Vec<u64> = parts.iter().map(Mat2ModN::modulus).collect();
    let n = moduli
        .iter()
        .try_fold(1u64, |acc, &m| acc.checked_mul(m))
        .ok_or(Error::InvalidModulus(u64::MAX))?;
    check_coprime_factorization(n, &moduli)?;
    let mut entries = [0u64; 4];
    for (k, slot) in entries.iter_mut().enumerate() {
        let residues: Vec<u64> = parts.iter().map(|p| p.entries()[k]).collect();
        *slot = crt(&residues, &moduli)?;
    }
    Mat2ModN::from_residues(n, entries)
}

/// A column vector in (Z/nZ)^2, the model of a torsion point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vec2ModN<T> {
    modulus: T,
    coords: [T; 2],
}

impl<T: Residue> Vec2ModN<T> {
    pub fn new(n: u64, coords: [i64; 2]) -> Result<Self> {
        let nt = check_fits::<T>(n)?;
        Ok(Self {
            modulus: nt,
            coords: coords.map(|x| T::narrow(reduce_signed(x, n))),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.widen()
    }

    pub fn coords(&self) -> [u64; 2] {
        self.coords.map(Residue::widen)
    }

    pub fn is_zero(&self) -> bool {
        self.coords == [T::zero(); 2]
    }

    /// Exact additive order: `n / gcd(x, y, n)`.
    pub fn order(&self) -> u64 {
        let n = self.modulus();
        let [x, y] = self.coords();
        n / gcd(gcd(x, y), n)
    }

    pub fn neg(&self) -> Self {
        let n = self.modulus;
        Self {
            modulus: n,
            coords: self.coords.map(|x| T::zero().sub_mod(x, n)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: other.modulus(),
            });
        }
        let n = self.modulus;
        Ok(Self {
            modulus: n,
            coords: [
                self.coords[0].add_mod(other.coords[0], n),
                self.coords[1].add_mod(other.coords[1], n),
            ],
        })
    }

    pub fn scale(&self, k: u64) -> Self {
        let n = self.modulus;
        let k = T::narrow(k % self.modulus());
        Self {
            modulus: n,
            coords: self.coords.map(|x| x.mul_mod(k, n)),
        }
    }

    /// Entrywise reduction to a divisor `m` of `n`. Under the identification
    /// `E[m] = (n/m) E[n]`, this sends `P` to the coordinates of `(n/m) P`.
    pub fn reduce(&self, m: u64) -> Result<Self> {
        if m == 0 || !self.modulus().is_multiple_of(m) {
            return Err(Error::NotADivisor {
                m,
                n: self.modulus(),
            });
        }
        let [x, y] = self.coords();
        let nt = check_fits::<T>(m)?;
        Ok(Self {
            modulus: nt,
            coords: [T::narrow(x % m), T::narrow(y % m)],
        })
    }

    /// Index `x * n + y`, used for dense lookup tables.
    pub(crate) fn code(&self) -> usize {
        let [x, y] = self.coords();
        (x * self.modulus() + y) as usize
    }

    pub(crate) fn from_code(n: T, code: usize) -> Self {
        let nw = n.widen() as usize;
        Self {
            modulus: n,
            coords: [T::narrow((code / nw) as u64), T::narrow((code % nw) as u64)],
        }
    }
}

impl<T: Residue> fmt::Debug for Vec2ModN<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) mod {}",
            self.coords[0], self.coords[1], self.modulus
        )
    }
}

impl<T: Residue> fmt::Display for Vec2ModN<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = Mat2ModN<u32>;

    /// Scalar-loop product, independent of `mul_keys`.
    fn naive_mul(a: [u64; 4], b: [u64; 4], n: u64) -> [u64; 4] {
        let a = [[a[0], a[1]], [a[2], a[3]]];
        let b = [[b[0], b[1]], [b[2], b[3]]];
        let mut c = [[0u64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut s = 0;
                for k in 0..2 {
                    s += a[i][k] * b[k][j];
                }
                c[i][j] = s % n;
            }
        }
        [c[0][0], c[0][1], c[1][0], c[1][1]]
    }

    #[test]
    fn identity_squared() {
        let i = M::identity(9).unwrap();
        assert_eq!(i * i, i);
        assert!(M::identity(1).unwrap().is_identity());
    }

    #[test]
    fn upper_times_lower_mod_5() {
        let t = M::new(5, [1, 1, 0, 1]).unwrap();
        let l = M::new(5, [1, 0, 1, 1]).unwrap();
        let expected = naive_mul([1, 1, 0, 1], [1, 0, 1, 1], 5);
        assert_eq!(expected, [2, 1, 1, 1]);
        assert_eq!((t * l).entries(), expected);
    }

    #[test]
    fn every_invertible_matrix_mod_7_has_an_inverse() {
        for code in 0..7u64.pow(4) {
            let e = [code % 7, code / 7 % 7, code / 49 % 7, code / 343];
            let a = M::from_residues(7, e).unwrap();
            if a.is_invertible() {
                assert!((a * a.inverse().unwrap()).is_identity());
                assert!((a.inverse().unwrap() * a).is_identity());
            } else {
                assert!(matches!(a.inverse(), Err(Error::NotInvertible { .. })));
            }
        }
    }

    #[test]
    fn det_and_inverse_examples() {
        assert_eq!(M::new(7, [2, 0, 0, 3]).unwrap().det(), 6);
        let swap = M::new(11, [0, 1, 1, 0]).unwrap();
        assert_eq!(swap.inverse().unwrap(), swap);
        assert!(matches!(
            M::new(4, [2, 0, 0, 1]).unwrap().inverse(),
            Err(Error::NotInvertible { n: 4, det: 2 })
        ));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = M::identity(5).unwrap();
        let b = M::identity(7).unwrap();
        assert!(matches!(
            mat_mul(&a, &b),
            Err(Error::ModulusMismatch { left: 5, right: 7 })
        ));
    }

    #[test]
    fn reduce_examples() {
        let a = M::new(12, [6, 1, 0, 7]).unwrap();
        assert_eq!(a.reduce(4).unwrap().entries(), [2, 1, 0, 3]);
        assert!(matches!(
            a.reduce(5),
            Err(Error::NotADivisor { m: 5, n: 12 })
        ));
    }

    #[test]
    fn crt_examples() {
        let parts = crt_split(&M::identity(35).unwrap(), &[5, 7]).unwrap();
        assert_eq!(
            parts,
            vec![M::identity(5).unwrap(), M::identity(7).unwrap()]
        );
        let joined =
            crt_join(&[M::identity(5).unwrap(), M::new(7, [2, 0, 0, 1]).unwrap()]).unwrap();
        assert_eq!(joined.modulus(), 35);
        assert_eq!(joined.reduce(5).unwrap(), M::identity(5).unwrap());
        assert_eq!(joined.reduce(7).unwrap(), M::new(7, [2, 0, 0, 1]).unwrap());
        assert!(matches!(
            crt_split(&M::identity(12).unwrap(), &[2, 6]),
            Err(Error::NonCoprimeModuli(_))
        ));
        assert!(matches!(
            crt_join(&[M::identity(4).unwrap(), M::identity(6).unwrap()]),
            Err(Error::NonCoprimeModuli(_))
        ));
    }

    #[test]
    fn crt_round_trip_exhaustive_mod_30() {
        for code in 0..30u64.pow(4) {
            let e = [code % 30, code / 30 % 30, code / 900 % 30, code / 27000];
            let a = Mat2ModN::<u16>::from_residues(30, e).unwrap();
            let parts = crt_split(&a, &[2, 3, 5]).unwrap();
            assert_eq!(crt_join(&parts).unwrap(), a);
        }
    }

    #[test]
    fn gl2_orders() {
        assert_eq!(gl2_order(1), 1);
        assert_eq!(gl2_order(2), 6);
        assert_eq!(gl2_order(37), 1_822_176);
        assert_eq!(gl2_order(37), 2u128.pow(5) * 3u128.pow(4) * 19 * 37);
        assert_eq!(gl2_order(8), 1536);
        assert_eq!(sl2_order(5), 120);
        assert_eq!(sl2_order(7), 336);
    }

    #[test]
    fn gl2_order_is_multiplicative() {
        for n in 1..=200u64 {
            let parts: u128 = Modulus::new(n)
                .unwrap()
                .prime_power_parts()
                .into_iter()
                .map(gl2_order)
                .product();
            assert_eq!(gl2_order(n), parts, "n = {n}");
        }
    }

    #[test]
    fn gl2_order_matches_enumeration() {
        for n in 1..=12u64 {
            let count = (0..n.pow(4))
                .filter(|&c| {
                    let (a, b, cc, d) = (c % n, c / n % n, c / n / n % n, c / n / n / n);
                    gcd((a * d + n * n - b * cc) % n, n) == 1
                })
                .count() as u128;
            assert_eq!(gl2_order(n), count, "n = {n}");
        }
    }

    #[test]
    fn modulus_factorization_and_units() {
        let m = Modulus::new(360).unwrap();
        assert_eq!(m.factorization(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(m.divisors().len(), 24);
        assert!(matches!(Modulus::new(0), Err(Error::InvalidModulus(0))));
        for n in 1..=120u64 {
            let m = Modulus::new(n).unwrap();
            let gens = m.unit_generators();
            // Closure of the generators inside (Z/n)^x must be the whole group.
            let mut seen = std::collections::BTreeSet::from([1 % n]);
            let mut frontier = vec![1 % n];
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = x * g % n;
                    if seen.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u64, m.euler_phi().max(1), "n = {n}");
        }
    }

    #[test]
    fn vector_orders() {
        let v = Vec2ModN::<u32>::new(12, [4, 6]).unwrap();
        assert_eq!(v.order(), 6);
        assert_eq!(Vec2ModN::<u32>::new(1, [0, 0]).unwrap().order(), 1);
        assert_eq!(v.neg().coords(), [8, 6]);
    }

    #[test]
    fn residue_words_agree() {
        let a16 = Mat2ModN::<u16>::new(97, [3, 5, 7, 11]).unwrap();
        let a64 = Mat2ModN::<u64>::new(97, [3, 5, 7, 11]).unwrap();
        assert_eq!((a16 * a16).entries(), (a64 * a64).entries());
        assert!(matches!(
            Mat2ModN::<u16>::identity(70_000),
            Err(Error::ResidueOverflow {
                n: 70_000,
                bits: 16
            })
        ));
        // Large moduli take the 128-bit path.
        let big = (1u64 << 61) - 1;
        let b = Mat2ModN::<u64>::new(big, [big as i64 - 1, 0, 0, 1]).unwrap();
        assert!((b * b).is_identity());
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(n in 1u64..=997, a in any::<[u64; 4]>(), b in any::<[u64; 4]>()) {
            let a = M::from_residues(n, a).unwrap();
            let b = M::from_residues(n, b).unwrap();
            prop_assert_eq!((a * b).det(), (a.det() as u128 * b.det() as u128 % n as u128) as u64);
            prop_assert_eq!((a * b).entries(), naive_mul(a.entries(), b.entries(), n));
        }
    }
}
