//! Cross-ratios of an `(S, T)` pair that drive every solvability check.
//!
//! With `x ∈ {S, T}`:
//!
//! ```text
//! Δ_ij(x) = (a_i a_j + b_ij b_ji - c_ij c_ji) / (a_i b_ij)
//! τ_ij    = c_ij(T) c_ji(S) / (c_ij(S) c_ji(T))
//! β_ij    = (a_j(T) b_ij(S) - a_j(S) b_ij(T)) / (c_ij(S) c_ji(T))
//! γ_ij    = b_ij(T) c_ji(S) / (b_ij(S) c_ji(T))
//! α_ij    = (β_ij a_i(S) c_ji(T) + b_ij(T) c_ji(S)) / (b_ij(S) c_ji(T))
//! ```
//!
//! with the diagonal convention `τ_ii = γ_ii = 1`.

use crate::error::{Error, Result};
use crate::model::{ensure_same_n, PairTable, WeightSet};
use crate::scalar::Scalar;

/// Baxter's quadric invariant `Δ_ij` of a single weight set.
pub fn delta(w: &WeightSet, i: usize, j: usize) -> Result<Scalar> {
    let n = w.n();
    crate::model::check_color(i, n)?;
    crate::model::check_color(j, n)?;
    if i == j {
        return Err(Error::RepeatedLabel(i));
    }
    let num = w.a(i) * w.a(j) + w.b(i, j) * w.b(j, i) - w.c(i, j) * w.c(j, i);
    num.checked_div(&(w.a(i) * w.b(i, j)))
}

/// Eagerly computed `Δ`, `τ`, `β`, `γ`, `α` for all ordered pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantCache {
    n: usize,
    delta_s: PairTable<Scalar>,
    delta_t: PairTable<Scalar>,
    tau: PairTable<Scalar>,
    beta: PairTable<Scalar>,
    gamma: PairTable<Scalar>,
    alpha: PairTable<Scalar>,
}

impl InvariantCache {
    pub fn new(s: &WeightSet, t: &WeightSet) -> Result<Self> {
        ensure_same_n(s.n(), t.n())?;
        let n = s.n();
        // WeightSet enforces nonzeroness, but a zero here would turn into a
        // silent division error further down, so check once more.
        for w in [s, t] {
            let any_zero = w.a_values().iter().any(Scalar::is_zero)
                || w.b_table().values().iter().any(Scalar::is_zero)
                || w.c_table().values().iter().any(Scalar::is_zero);
            if any_zero {
                return Err(Error::ZeroWeight(alloc::format!("in weight set {}", w.tag())));
            }
        }
        let delta_s = PairTable::try_from_fn(n, |i, j| delta(s, i, j))?;
        let delta_t = PairTable::try_from_fn(n, |i, j| delta(t, i, j))?;
        let tau = PairTable::try_from_fn(n, |i, j| (t.c(i, j) * s.c(j, i)).checked_div(&(s.c(i, j) * t.c(j, i))))?;
        let beta = PairTable::try_from_fn(n, |i, j| {
            (t.a(j) * s.b(i, j) - s.a(j) * t.b(i, j)).checked_div(&(s.c(i, j) * t.c(j, i)))
        })?;
        let gamma = PairTable::try_from_fn(n, |i, j| (t.b(i, j) * s.c(j, i)).checked_div(&(s.b(i, j) * t.c(j, i))))?;
        let alpha = PairTable::try_from_fn(n, |i, j| {
            (beta.get(i, j) * s.a(i) * t.c(j, i) + t.b(i, j) * s.c(j, i)).checked_div(&(s.b(i, j) * t.c(j, i)))
        })?;
        Ok(InvariantCache {
            n,
            delta_s,
            delta_t,
            tau,
            beta,
            gamma,
            alpha,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta_s(&self, i: usize, j: usize) -> &Scalar {
        self.delta_s.get(i, j)
    }

    pub fn delta_t(&self, i: usize, j: usize) -> &Scalar {
        self.delta_t.get(i, j)
    }

    /// `τ_ij`, with `τ_ii = 1`.
    pub fn tau(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            Scalar::one()
        } else {
            self.tau.get(i, j).clone()
        }
    }

    pub fn beta(&self, i: usize, j: usize) -> &Scalar {
        self.beta.get(i, j)
    }

    /// `γ_ij`, with `γ_ii = 1`.
    pub fn gamma(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            Scalar::one()
        } else {
            self.gamma.get(i, j).clone()
        }
    }

    pub fn alpha(&self, i: usize, j: usize) -> &Scalar {
        self.alpha.get(i, j)
    }

    /// Mutable access to `α`, for exercising consistency checks on tampered caches.
    pub fn alpha_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        self.alpha.get_mut(i, j)
    }
}
