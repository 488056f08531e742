#![allow(dead_code)]

use proptest::prelude::*;
use x1_core::modarith::{gcd, Mat2ModN};
use x1_core::Group;

/// Up to `k` random invertible matrices mod `n`.
pub fn generators(n: u64, k: usize) -> impl Strategy<Value = Vec<Mat2ModN<u32>>> {
    prop::collection::vec(prop::array::uniform4(0..n as i64), 0..=k).prop_map(move |raw| {
        raw.into_iter()
            .map(|e| Mat2ModN::new(n, e).unwrap())
            .filter(|m| gcd(m.det(), n) == 1)
            .collect()
    })
}

pub fn group(n: u64, k: usize) -> impl Strategy<Value = Group> {
    generators(n, k).prop_map(move |g| Group::new(n, g).unwrap())
}

pub fn group_mod_one_of(moduli: &'static [u64], k: usize) -> impl Strategy<Value = Group> {
    prop::sample::select(moduli).prop_flat_map(move |n| group(n, k))
}
