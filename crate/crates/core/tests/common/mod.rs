//! Helpers shared by integration tests: random rational weights and an
//! independently transcribed list of the twelve Yang-Baxter polynomials.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ybx_core::model::{PairTable, Tag};
use ybx_core::ybe::Boundary;
use ybx_core::{RSlot, RWeightSet, Scalar, WeightSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d).unwrap()
}

/// Nonzero rational with numerator in `[-30, 30]` and denominator in `[1, 12]`.
pub fn rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let p = rng.random_range(-30i64..=30);
        if p != 0 {
            return q(p, rng.random_range(1i64..=12));
        }
    }
}

/// Rational that may be zero.
pub fn rational_or_zero(rng: &mut ChaCha8Rng) -> Scalar {
    q(rng.random_range(-30i64..=30), rng.random_range(1i64..=12))
}

pub fn random_weights(n: usize, tag: Tag, rng: &mut ChaCha8Rng) -> WeightSet {
    let a = (0..n).map(|_| rational(rng)).collect();
    let b = PairTable::from_fn(n, |_, _| rational(rng));
    let c = PairTable::from_fn(n, |_, _| rational(rng));
    WeightSet::new(n, a, b, c, tag).unwrap()
}

pub fn random_r(n: usize, rng: &mut ChaCha8Rng) -> RWeightSet {
    let mut r = RWeightSet::zero(n);
    for slot in RSlot::all(n) {
        r.set(slot, rational_or_zero(rng));
    }
    r
}

fn two_color(a: [Scalar; 2], b: [Scalar; 2], c: [Scalar; 2], tag: Tag) -> Option<WeightSet> {
    let [a0, a1] = a;
    let [b01, b10] = b;
    let [c01, c10] = c;
    let b = PairTable::from_vec(2, vec![b01, b10]).ok()?;
    let c = PairTable::from_vec(2, vec![c01, c10]).ok()?;
    WeightSet::new(2, vec![a0, a1], b, c, tag).ok()
}

/// Random two-color weights with prescribed `Δ_01 = d01` and `Δ_10 = d10`.
///
/// `Δ_01 a_0 b_01 = Δ_10 a_1 b_10` fixes `b_10`, and the shared numerator
/// then fixes `c_01 c_10`.
pub fn weights_with_deltas(d01: &Scalar, d10: &Scalar, tag: Tag, rng: &mut ChaCha8Rng) -> WeightSet {
    loop {
        let a0 = rational(rng);
        let a1 = rational(rng);
        let b01 = rational(rng);
        let b10 = (&a0 * &b01 * d01).checked_div(&(&a1 * d10)).unwrap();
        let numerator = d01 * &a0 * &b01;
        let c01 = rational(rng);
        let c10 = (&a0 * &a1 + &b01 * &b10 - numerator).checked_div(&c01).unwrap();
        if let Some(w) = two_color([a0, a1], [b01, b10], [c01, c10], tag.clone()) {
            return w;
        }
    }
}

/// The twelve boundary patterns in canonical labels, as `(E, F)` digits.
pub const Y_PATTERNS: [([usize; 3], [usize; 3]); 12] = [
    ([0, 0, 1], [0, 1, 0]),
    ([0, 0, 1], [1, 0, 0]),
    ([0, 1, 0], [0, 0, 1]),
    ([0, 1, 0], [0, 1, 0]),
    ([0, 1, 0], [1, 0, 0]),
    ([0, 1, 1], [1, 0, 1]),
    ([0, 1, 1], [1, 1, 0]),
    ([0, 1, 2], [0, 2, 1]),
    ([0, 1, 2], [1, 0, 2]),
    ([0, 1, 2], [2, 0, 1]),
    ([0, 1, 2], [1, 2, 0]),
    ([0, 1, 2], [2, 1, 0]),
];

pub fn y_boundary(index: usize, labels: [usize; 3]) -> Boundary {
    let (e, f) = Y_PATTERNS[index - 1];
    Boundary {
        e: e.map(|x| labels[x]),
        f: f.map(|x| labels[x]),
    }
}

/// `Y_index` evaluated with canonical labels `0, 1, 2` replaced by `labels`.
pub fn y_polynomial(index: usize, labels: [usize; 3], r: &RWeightSet, s: &WeightSet, t: &WeightSet) -> Scalar {
    let [i, j, k] = labels;
    let l = |x: usize| [i, j, k][x];
    let ra = |x| r.a(l(x)).clone();
    let rb = |x, y| r.b(l(x), l(y)).clone();
    let rc = |x, y| r.c(l(x), l(y)).clone();
    let a = |w: &WeightSet, x| w.a(l(x)).clone();
    let b = |w: &WeightSet, x, y| w.b(l(x), l(y)).clone();
    let c = |w: &WeightSet, x, y| w.c(l(x), l(y)).clone();
    match index {
        1 => ra(0) * b(s, 0, 1) * c(t, 0, 1) - rb(0, 1) * a(s, 0) * c(t, 0, 1) - rc(1, 0) * b(t, 0, 1) * c(s, 0, 1),
        2 => ra(0) * a(t, 0) * c(s, 0, 1) - rb(1, 0) * b(t, 0, 1) * c(s, 0, 1) - rc(0, 1) * a(s, 0) * c(t, 0, 1),
        3 => rb(0, 1) * a(s, 0) * c(t, 1, 0) + rc(0, 1) * b(t, 0, 1) * c(s, 1, 0) - ra(0) * b(s, 0, 1) * c(t, 1, 0),
        4 => rc(0, 1) * c(t, 0, 1) * c(s, 1, 0) - rc(1, 0) * c(s, 0, 1) * c(t, 1, 0),
        5 => rc(0, 1) * a(t, 0) * b(s, 1, 0) - rb(1, 0) * c(s, 0, 1) * c(t, 1, 0) - rc(0, 1) * a(s, 0) * b(t, 1, 0),
        6 => rb(0, 1) * c(s, 0, 1) * c(t, 1, 0) + rc(0, 1) * a(s, 1) * b(t, 0, 1) - rc(0, 1) * a(t, 1) * b(s, 0, 1),
        7 => rb(0, 1) * b(t, 1, 0) * c(s, 0, 1) + rc(0, 1) * a(s, 1) * c(t, 0, 1) - ra(1) * a(t, 1) * c(s, 0, 1),
        8 => rb(0, 1) * b(s, 0, 2) * c(t, 1, 2) - rb(0, 2) * b(s, 0, 1) * c(t, 1, 2),
        9 => rc(0, 1) * b(s, 1, 2) * b(t, 0, 2) - rc(0, 1) * b(s, 0, 2) * b(t, 1, 2),
        10 => {
            rc(0, 1) * c(s, 1, 2) * b(t, 0, 1) + rb(0, 1) * c(s, 0, 2) * c(t, 1, 0) - rc(0, 2) * b(s, 0, 1) * c(t, 1, 2)
        }
        11 => {
            rc(0, 1) * b(s, 1, 2) * c(t, 0, 2) - rc(2, 1) * c(s, 0, 2) * b(t, 1, 2) - rb(1, 2) * c(s, 0, 1) * c(t, 1, 2)
        }
        12 => {
            rc(0, 1) * c(s, 1, 2) * c(t, 0, 1) + rb(0, 1) * c(s, 0, 2) * b(t, 1, 0)
                - rc(1, 2) * c(s, 0, 1) * c(t, 1, 2)
                - rb(2, 1) * c(s, 0, 2) * b(t, 1, 2)
        }
        _ => panic!("no polynomial Y{index}"),
    }
}

/// Whether `x` and `y` are nonzero multiples of each other.
pub fn proportional(x: &RWeightSet, y: &RWeightSet) -> bool {
    !x.is_zero() && !y.is_zero() && x.is_proportional_to(y)
}
