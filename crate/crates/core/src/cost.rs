//! Exact total order on edge sets.
//!
//! Every edge `e` gets the cost `len(e) * 2^m + 2^id(e)` where `m` is the edge
//! count. Sums of these costs compare first by length and then by the
//! descending-sorted edge id list, so two distinct edge sets never tie and
//! shortest paths are unique.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::graph::{EdgeId, WeightedGraph};

pub type Key = BigUint;

pub fn edge_key(g: &WeightedGraph, e: EdgeId) -> Key {
    let m = g.edge_count();
    (BigUint::from(g.len(e).max(0) as u64) << m) + (BigUint::one() << e.0)
}

pub fn edge_key_signed(g: &WeightedGraph, e: EdgeId) -> BigInt {
    BigInt::from(edge_key(g, e))
}

/// Key of an edge set (edges assumed distinct).
pub fn set_key(g: &WeightedGraph, edges: &[EdgeId]) -> Key {
    let mut k = Key::zero();
    for &e in edges {
        k += edge_key(g, e);
    }
    k
}

/// Key of a length plus `2*beta`-style offsets that carry no edge bits.
pub fn len_key(g: &WeightedGraph, len: i64) -> Key {
    BigUint::from(len.max(0) as u64) << g.edge_count()
}

/// Exact nonnegative ratio of two lengths. `0/0` counts as one.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        if num == 0 && den == 0 {
            Self { num: 1, den: 1 }
        } else {
            Self { num, den }
        }
    }

    pub fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    /// `num/den <= k`, exactly.
    pub fn at_most(&self, k: i64) -> bool {
        self.den != 0 && (self.num as i128) <= (k as i128) * (self.den as i128)
    }

    pub fn value(&self) -> f64 {
        if self.den == 0 {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.den == 0, other.den == 0) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => ((self.num as i128) * (other.den as i128)).cmp(&((other.num as i128) * (self.den as i128))),
        }
    }
}
