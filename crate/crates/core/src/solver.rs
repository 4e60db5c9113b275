//! Solvability conditions, the closed-form R-matrix, and β-degeneracy analysis.
//!
//! For `n >= 3` a pair `(S, T)` admits a nonzero solution exactly when, for
//! every ordered pair `(i, j)` and ordered triple `(i, j, k)` of distinct
//! labels,
//!
//! ```text
//! Δ_ij(S) = Δ_ij(T)
//! β_ij / (γ_ij b_ij(S)) = β_ik / (γ_ik b_ik(S))
//! b_ik(S) / b_ik(T) = b_jk(S) / b_jk(T)
//! γ_ik c_jk(S) b_ij(T) + β_ij γ_ik c_ik(S) c_ji(T) = γ_ij b_ij(S) c_jk(T)
//! γ_jk b_jk(S) c_ik(T) = τ_ij τ_jk γ_ji c_ik(S) b_jk(T) + τ_ij β_jk γ_ji c_ij(S) c_jk(T)
//! γ_jk c_jk(S) c_ij(T) + β_ij γ_jk c_ik(S) b_ji(T)
//!     = τ_ij γ_ji c_ij(S) c_jk(T) + τ_ij τ_jk β_kj γ_ji c_ik(S) b_jk(T)
//! ```
//!
//! For `n = 2` only the Δ family applies. A solution is unique up to scale,
//! with `C_ij = γ_ik τ_ki / (γ_ij γ_ki)` for any `k` outside `{i, j}`,
//! `B_ij = β_ij C_ij` and `A_i = α_ij C_ij`. With two colors there is no
//! such `k`, and `C` is instead normalized by `C_01 = 1`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::invariants::InvariantCache;
use crate::model::{check_color, ordered_pairs, ordered_triples, RSlot, RWeightSet, WeightSet};
use crate::scalar::Scalar;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    DeltaEq,
    BetaGammaB,
    BRatio,
    Cond4,
    Cond5,
    Cond6,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::DeltaEq => "DeltaEq",
            Family::BetaGammaB => "BetaGammaB",
            Family::BRatio => "BRatio",
            Family::Cond4 => "Cond4",
            Family::Cond5 => "Cond5",
            Family::Cond6 => "Cond6",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Labels {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionInstance {
    pub family: Family,
    pub labels: Labels,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub holds: bool,
}

impl ConditionInstance {
    fn new(family: Family, labels: Labels, lhs: Scalar, rhs: Scalar) -> Self {
        let holds = lhs == rhs;
        ConditionInstance {
            family,
            labels,
            lhs,
            rhs,
            holds,
        }
    }

    /// Key identifying the equation up to swapping its two sides.
    ///
    /// `BetaGammaB(i,j,k)` and `BetaGammaB(i,k,j)` state the same equality,
    /// as do `BRatio(i,j,k)` and `BRatio(j,i,k)`.
    pub fn canonical_key(&self) -> (Family, Labels) {
        let labels = match (self.family, self.labels) {
            (Family::BetaGammaB, Labels::Triple(i, j, k)) => Labels::Triple(i, j.min(k), j.max(k)),
            (Family::BRatio, Labels::Triple(i, j, k)) => Labels::Triple(i.min(j), i.max(j), k),
            (_, l) => l,
        };
        (self.family, labels)
    }
}

impl fmt::Display for ConditionInstance {
    /// `family(i,j[,k]) lhs rhs HOLDS|FAILS`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "HOLDS" } else { "FAILS" };
        match self.labels {
            Labels::Pair(i, j) => write!(f, "{}({i},{j})", self.family.name())?,
            Labels::Triple(i, j, k) => write!(f, "{}({i},{j},{k})", self.family.name())?,
        }
        write!(f, " {} {} {verdict}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolvabilityReport {
    pub n: usize,
    pub instances: Vec<ConditionInstance>,
    pub solvable: bool,
    pub deduplicated_count: usize,
}

impl SolvabilityReport {
    fn assemble(n: usize, instances: Vec<ConditionInstance>) -> Self {
        let solvable = instances.iter().all(|c| c.holds);
        let deduplicated_count = instances
            .iter()
            .map(ConditionInstance::canonical_key)
            .collect::<BTreeSet<_>>()
            .len();
        SolvabilityReport {
            n,
            instances,
            solvable,
            deduplicated_count,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionInstance> {
        self.instances.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for SolvabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.instances {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "verdict {} instances={} distinct={} failed={}",
            if self.solvable { "SOLVABLE" } else { "NOT_SOLVABLE" },
            self.instances.len(),
            self.deduplicated_count,
            self.failures().count()
        )
    }
}

/// `4n³ - 11n² + 7n`, the number of distinct conditions for `n` colors.
pub fn condition_count_formula(n: usize) -> usize {
    let n = n as i128;
    (4 * n * n * n - 11 * n * n + 7 * n) as usize
}

fn require_two_colors(s: &WeightSet) -> Result<()> {
    if s.n() < 2 {
        Err(Error::InvalidColorCount { n: s.n(), min: 2 })
    } else {
        Ok(())
    }
}

fn delta_instances(cache: &InvariantCache) -> impl Iterator<Item = ConditionInstance> + '_ {
    ordered_pairs(cache.n()).map(move |(i, j)| {
        ConditionInstance::new(
            Family::DeltaEq,
            Labels::Pair(i, j),
            cache.delta_s(i, j).clone(),
            cache.delta_t(i, j).clone(),
        )
    })
}

fn beta_gamma_b(cache: &InvariantCache, s: &WeightSet, i: usize, j: usize) -> Result<Scalar> {
    cache.beta(i, j).checked_div(&(cache.gamma(i, j) * s.b(i, j)))
}

fn shared_triple_instances(
    cache: &InvariantCache,
    s: &WeightSet,
    t: &WeightSet,
    (i, j, k): (usize, usize, usize),
    out: &mut Vec<ConditionInstance>,
) -> Result<()> {
    let labels = Labels::Triple(i, j, k);
    out.push(ConditionInstance::new(
        Family::BetaGammaB,
        labels,
        beta_gamma_b(cache, s, i, j)?,
        beta_gamma_b(cache, s, i, k)?,
    ));
    out.push(ConditionInstance::new(
        Family::BRatio,
        labels,
        s.b(i, k).checked_div(t.b(i, k))?,
        s.b(j, k).checked_div(t.b(j, k))?,
    ));
    Ok(())
}

/// Evaluates every condition instance for the pair `(S, T)`.
pub fn check_conditions(s: &WeightSet, t: &WeightSet) -> Result<SolvabilityReport> {
    require_two_colors(s)?;
    let cache = InvariantCache::new(s, t)?;
    check_conditions_with(&cache, s, t)
}

pub fn check_conditions_with(cache: &InvariantCache, s: &WeightSet, t: &WeightSet) -> Result<SolvabilityReport> {
    require_two_colors(s)?;
    let mut out: Vec<ConditionInstance> = delta_instances(cache).collect();
    let tau = |i, j| cache.tau(i, j);
    let gam = |i, j| cache.gamma(i, j);
    let beta = |i, j| cache.beta(i, j).clone();
    for (i, j, k) in ordered_triples(s.n()) {
        shared_triple_instances(cache, s, t, (i, j, k), &mut out)?;
        let labels = Labels::Triple(i, j, k);
        out.push(ConditionInstance::new(
            Family::Cond4,
            labels,
            gam(i, k) * s.c(j, k) * t.b(i, j) + beta(i, j) * gam(i, k) * s.c(i, k) * t.c(j, i),
            gam(i, j) * s.b(i, j) * t.c(j, k),
        ));
        out.push(ConditionInstance::new(
            Family::Cond5,
            labels,
            gam(j, k) * s.b(j, k) * t.c(i, k),
            tau(i, j) * tau(j, k) * gam(j, i) * s.c(i, k) * t.b(j, k)
                + tau(i, j) * beta(j, k) * gam(j, i) * s.c(i, j) * t.c(j, k),
        ));
        out.push(ConditionInstance::new(
            Family::Cond6,
            labels,
            gam(j, k) * s.c(j, k) * t.c(i, j) + beta(i, j) * gam(j, k) * s.c(i, k) * t.b(j, i),
            tau(i, j) * gam(j, i) * s.c(i, j) * t.c(j, k)
                + tau(i, j) * tau(j, k) * beta(k, j) * gam(j, i) * s.c(i, k) * t.b(j, k),
        ));
    }
    Ok(SolvabilityReport::assemble(s.n(), out))
}

/// Same verdict as [`check_conditions`], with the last three families solved
/// for `β_ij` explicitly. The rewriting relies on the b-ratio family, so the
/// two checkers agree whenever that family holds.
pub fn check_conditions_alt(s: &WeightSet, t: &WeightSet) -> Result<SolvabilityReport> {
    require_two_colors(s)?;
    let cache = InvariantCache::new(s, t)?;
    let tau = |i, j| cache.tau(i, j);
    let gam = |i, j| cache.gamma(i, j);
    let beta = |i, j| cache.beta(i, j).clone();
    let mut out: Vec<ConditionInstance> = delta_instances(&cache).collect();
    for (i, j, k) in ordered_triples(s.n()) {
        shared_triple_instances(&cache, s, t, (i, j, k), &mut out)?;
        let labels = Labels::Triple(i, j, k);
        let rhs4 = (gam(i, j).checked_div(&gam(i, k))? - gam(k, j))
            * (s.b(i, j) * t.c(j, k)).checked_div(&(s.c(i, k) * t.c(j, i)))?;
        out.push(ConditionInstance::new(Family::Cond4, labels, beta(i, j), rhs4));

        let rhs5 = (tau(i, k) * gam(i, j).checked_div(&gam(i, k))? - gam(k, j) * tau(i, j).checked_div(&tau(k, j))?)
            * (s.b(i, j) * t.c(k, j)).checked_div(&(s.c(k, i) * t.c(i, j)))?;
        out.push(ConditionInstance::new(Family::Cond5, labels, beta(i, j), rhs5));

        let lhs6 = beta(i, j) * t.b(j, i) * tau(j, i).checked_div(&gam(j, i))?
            - beta(k, j) * t.b(j, k) * tau(j, k).checked_div(&gam(j, k))?;
        let rhs6 = (gam(j, k).inv()? - gam(k, j).checked_div(&(gam(i, j) * gam(j, i)))?)
            * (s.c(i, j) * t.c(j, k)).checked_div(s.c(i, k))?;
        out.push(ConditionInstance::new(Family::Cond6, labels, lhs6, rhs6));
    }
    Ok(SolvabilityReport::assemble(s.n(), out))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `C_ij = γ_ik τ_ki / (γ_ij γ_ki)` with one auxiliary label `k`.
    #[default]
    Aux,
    /// `C_01 = 1`.
    UnitC01,
}

/// Closed-form R-weights for a solvable pair, defined up to one global scalar.
///
/// With `Aux`, the global auxiliary label defaults to `0`. Components whose
/// pair contains it are computed with the smallest label outside the pair and
/// rescaled onto the global choice, so the whole tuple carries a single
/// scalar. For `n = 2` there is no third label and `UnitC01` is used; asking
/// for an explicit auxiliary label there is an error.
pub fn build_r(s: &WeightSet, t: &WeightSet, aux: Option<usize>, normalization: Normalization) -> Result<RWeightSet> {
    let report = check_conditions(s, t)?;
    if !report.solvable {
        return Err(Error::NotSolvable);
    }
    let cache = InvariantCache::new(s, t)?;
    build_r_from_cache(&cache, aux, normalization)
}

fn build_r_from_cache(cache: &InvariantCache, aux: Option<usize>, normalization: Normalization) -> Result<RWeightSet> {
    let n = cache.n();
    if let Some(k) = aux {
        check_color(k, n)?;
        if n < 3 {
            return Err(Error::AuxUnavailable(alloc::format!(
                "n = {n} has no label outside a pair"
            )));
        }
    }
    let c = match (normalization, n) {
        (Normalization::UnitC01, _) | (_, 2) => unit_c01(cache)?,
        (Normalization::Aux, _) => aux_c(cache, aux.unwrap_or(0))?,
    };
    let mut r = RWeightSet::zero(n);
    for (i, j) in ordered_pairs(n) {
        let cij = c.get(i, j).clone();
        r.set(RSlot::B(i, j), cache.beta(i, j) * &cij);
        r.set(RSlot::C(i, j), cij);
    }
    for i in 0..n {
        let j = if i == 0 { 1 } else { 0 };
        r.set(RSlot::A(i), cache.alpha(i, j) * r.c(i, j));
    }
    Ok(r)
}

/// `C_ij = τ_0i γ_01 γ_i0 / (γ_ij γ_0i)`.
fn unit_c01(cache: &InvariantCache) -> Result<crate::model::PairTable<Scalar>> {
    crate::model::PairTable::try_from_fn(cache.n(), |i, j| {
        (cache.tau(0, i) * cache.gamma(0, 1) * cache.gamma(i, 0)).checked_div(&(cache.gamma(i, j) * cache.gamma(0, i)))
    })
}

fn aux_c(cache: &InvariantCache, k: usize) -> Result<crate::model::PairTable<Scalar>> {
    // γ_ik τ_ki / γ_ki depends on k only through g(k) = γ_k0 τ_0k / γ_0k,
    // so a component computed with k' is moved onto k by g(k') / g(k).
    let g = |m: usize| -> Result<Scalar> { (cache.gamma(m, 0) * cache.tau(0, m)).checked_div(&cache.gamma(0, m)) };
    let g_k = g(k)?;
    crate::model::PairTable::try_from_fn(cache.n(), |i, j| {
        let kk = if k != i && k != j {
            k
        } else {
            (0..cache.n())
                .find(|&m| m != i && m != j)
                .ok_or_else(|| Error::AuxUnavailable(alloc::format!("no label outside ({i}, {j})")))?
        };
        let raw = (cache.gamma(i, kk) * cache.tau(kk, i)).checked_div(&(cache.gamma(i, j) * cache.gamma(kk, i)))?;
        if kk == k {
            Ok(raw)
        } else {
            Ok(raw * g(kk)?.checked_div(&g_k)?)
        }
    })
}

/// Whether `A_i = α_ij C_ij` holds for every `j != i`.
pub fn a_consistency(s: &WeightSet, t: &WeightSet, r: &RWeightSet) -> Result<bool> {
    let cache = InvariantCache::new(s, t)?;
    crate::model::ensure_same_n(cache.n(), r.n())?;
    Ok(a_consistency_with(&cache, r))
}

pub fn a_consistency_with(cache: &InvariantCache, r: &RWeightSet) -> bool {
    ordered_pairs(cache.n()).all(|(i, j)| *r.a(i) == cache.alpha(i, j) * r.c(i, j))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BetaStatus {
    AllZero,
    AllNonzero,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleDecomposition {
    pub labels: (usize, usize, usize),
    /// `γ_ij = γ_ik γ_kj`
    pub gamma_product: bool,
    /// `γ_ij / (γ_ik γ_kj) = τ_ij / (τ_ik τ_kj)`
    pub gamma_tau_ratio: bool,
    /// `τ_ij = τ_ik τ_kj`, only checked when every β vanishes.
    pub tau_product: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub beta: BetaStatus,
    pub triples: Vec<TripleDecomposition>,
    /// `γ_ij γ_ji = 1` per pair, only checked when every β vanishes.
    pub gamma_inverse: Option<Vec<((usize, usize), bool)>>,
}

impl DegeneracyReport {
    pub fn gamma_decomposition_holds(&self) -> bool {
        self.triples.iter().all(|t| t.gamma_product)
    }

    pub fn gamma_tau_ratio_holds(&self) -> bool {
        self.triples.iter().all(|t| t.gamma_tau_ratio)
    }

    /// Every identity that was checked holds.
    pub fn all_identities_hold(&self) -> bool {
        self.triples
            .iter()
            .all(|t| t.gamma_product && t.gamma_tau_ratio && t.tau_product != Some(false))
            && self.gamma_inverse.as_ref().is_none_or(|v| v.iter().all(|(_, ok)| *ok))
    }
}

/// Classifies the β-vanishing pattern of a solvable pair and checks the
/// accompanying γ/τ identities.
pub fn analyze_degeneracy(s: &WeightSet, t: &WeightSet) -> Result<DegeneracyReport> {
    if !check_conditions(s, t)?.solvable {
        return Err(Error::NotSolvable);
    }
    let cache = InvariantCache::new(s, t)?;
    Ok(degeneracy_from_cache(&cache))
}

fn degeneracy_from_cache(cache: &InvariantCache) -> DegeneracyReport {
    let n = cache.n();
    let zeros = ordered_pairs(n).filter(|&(i, j)| cache.beta(i, j).is_zero()).count();
    let beta = match zeros {
        0 => BetaStatus::AllNonzero,
        z if z == n * (n - 1) => BetaStatus::AllZero,
        _ => BetaStatus::Mixed,
    };
    let all_zero = beta == BetaStatus::AllZero;
    let tau = |i, j| cache.tau(i, j);
    let gam = |i, j| cache.gamma(i, j);
    let triples = ordered_triples(n)
        .map(|(i, j, k)| {
            let g_prod = gam(i, k) * gam(k, j);
            let t_prod = tau(i, k) * tau(k, j);
            TripleDecomposition {
                labels: (i, j, k),
                gamma_product: gam(i, j) == g_prod,
                // cross-multiplied to stay division-free
                gamma_tau_ratio: gam(i, j) * &t_prod == tau(i, j) * &g_prod,
                tau_product: all_zero.then(|| tau(i, j) == t_prod),
            }
        })
        .collect();
    let gamma_inverse = all_zero.then(|| {
        ordered_pairs(n)
            .map(|(i, j)| ((i, j), gam(i, j) * gam(j, i) == Scalar::one()))
            .collect()
    });
    DegeneracyReport {
        beta,
        triples,
        gamma_inverse,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_formula_values() {
        assert_eq!(condition_count_formula(2), 2);
        assert_eq!(condition_count_formula(3), 30);
        assert_eq!(condition_count_formula(4), 108);
    }

    #[test]
    fn canonical_keys_merge_symmetric_instances() {
        let mk = |family, labels| ConditionInstance::new(family, labels, Scalar::one(), Scalar::one());
        let a = mk(Family::BRatio, Labels::Triple(0, 1, 2));
        let b = mk(Family::BRatio, Labels::Triple(1, 0, 2));
        assert_eq!(a.canonical_key(), b.canonical_key());
        let a = mk(Family::BetaGammaB, Labels::Triple(0, 1, 2));
        let b = mk(Family::BetaGammaB, Labels::Triple(0, 2, 1));
        assert_eq!(a.canonical_key(), b.canonical_key());
        let a = mk(Family::Cond4, Labels::Triple(0, 1, 2));
        let b = mk(Family::Cond4, Labels::Triple(0, 2, 1));
        assert_ne!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn instance_line_format() {
        let c = ConditionInstance::new(
            Family::DeltaEq,
            Labels::Pair(0, 1),
            Scalar::ratio(5, 2).unwrap(),
            Scalar::ratio(5, 2).unwrap(),
        );
        assert_eq!(alloc::format!("{c}"), "DeltaEq(0,1) 5/2 5/2 HOLDS");
    }
}
