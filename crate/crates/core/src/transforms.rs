//! Solvability-preserving twists and generators for named weight families.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{ordered_pairs, ordered_triples, PairTable, Tag, WeightSet};
use crate::scalar::Scalar;
use crate::solver::check_conditions;

fn require_nonzero_table(table: &PairTable<Scalar>, name: &str) -> Result<()> {
    match table.iter().find(|(_, v)| v.is_zero()) {
        Some(((i, j), _)) => Err(Error::ZeroWeight(format!("{name}_{i}{j}"))),
        None => Ok(()),
    }
}

fn require_reciprocal(table: &PairTable<Scalar>, name: &str) -> Result<()> {
    for (i, j) in ordered_pairs(table.n()).filter(|(i, j)| i < j) {
        if table.get(i, j) * table.get(j, i) != Scalar::one() {
            return Err(Error::TwistInvariant(format!("{name}_{i}{j} * {name}_{j}{i} != 1")));
        }
    }
    Ok(())
}

/// Rescaling `b_ij ← ρ_ij b_ij` with `ρ_ij ρ_ji = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoTwist {
    rho: PairTable<Scalar>,
}

impl RhoTwist {
    pub fn new(rho: PairTable<Scalar>) -> Result<Self> {
        require_nonzero_table(&rho, "rho")?;
        require_reciprocal(&rho, "rho")?;
        Ok(RhoTwist { rho })
    }

    pub fn identity(n: usize) -> Self {
        RhoTwist {
            rho: PairTable::from_fn(n, |_, _| Scalar::one()),
        }
    }

    /// Builds the twist from its values above the diagonal.
    pub fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> Scalar) -> Result<Self> {
        let mut rho = PairTable::from_fn(n, |_, _| Scalar::one());
        for (i, j) in ordered_pairs(n).filter(|(i, j)| i < j) {
            let v = upper(i, j);
            *rho.get_mut(j, i) = v.inv()?;
            *rho.get_mut(i, j) = v;
        }
        RhoTwist::new(rho)
    }

    pub fn n(&self) -> usize {
        self.rho.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.rho.get(i, j)
    }

    pub fn table(&self) -> &PairTable<Scalar> {
        &self.rho
    }

    /// Pointwise product; applying the result equals applying both in turn.
    pub fn compose(&self, other: &RhoTwist) -> Result<RhoTwist> {
        crate::model::ensure_same_n(self.n(), other.n())?;
        RhoTwist::new(self.rho.map(|i, j, v| v * other.get(i, j)))
    }
}

/// Rescaling `c_ij ← ζ_ij c_ij` with `ζ_ij ζ_ji = 1` and `ζ_ij ζ_jk ζ_ki = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaTwist {
    zeta: PairTable<Scalar>,
}

impl ZetaTwist {
    pub fn new(zeta: PairTable<Scalar>) -> Result<Self> {
        require_nonzero_table(&zeta, "zeta")?;
        require_reciprocal(&zeta, "zeta")?;
        for (i, j, k) in ordered_triples(zeta.n()).filter(|&(i, j, k)| i < j && j < k) {
            if zeta.get(i, j) * zeta.get(j, k) * zeta.get(k, i) != Scalar::one() {
                return Err(Error::TwistInvariant(format!(
                    "zeta_{i}{j} * zeta_{j}{k} * zeta_{k}{i} != 1"
                )));
            }
        }
        Ok(ZetaTwist { zeta })
    }

    pub fn identity(n: usize) -> Self {
        ZetaTwist {
            zeta: PairTable::from_fn(n, |_, _| Scalar::one()),
        }
    }

    /// `ζ_ij = w_i / w_j`.
    pub fn coboundary(w: &[Scalar]) -> Result<Self> {
        let zeta = PairTable::try_from_fn(w.len(), |i, j| w[i].checked_div(&w[j]))?;
        ZetaTwist::new(zeta)
    }

    pub fn n(&self) -> usize {
        self.zeta.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.zeta.get(i, j)
    }

    pub fn table(&self) -> &PairTable<Scalar> {
        &self.zeta
    }
}

pub fn apply_rho(w: &WeightSet, twist: &RhoTwist) -> Result<WeightSet> {
    crate::model::ensure_same_n(w.n(), twist.n())?;
    let b = w.b_table().map(|i, j, b| b * twist.get(i, j));
    WeightSet::new(w.n(), w.a_values().to_vec(), b, w.c_table().clone(), w.tag().clone())
}

pub fn apply_zeta(w: &WeightSet, twist: &ZetaTwist) -> Result<WeightSet> {
    crate::model::ensure_same_n(w.n(), twist.n())?;
    let c = w.c_table().map(|i, j, c| c * twist.get(i, j));
    WeightSet::new(w.n(), w.a_values().to_vec(), w.b_table().clone(), c, w.tag().clone())
}

/// `a_i = q - z/q`, `b_ij = 1 - z`, `c_ij = q - 1/q` for `i > j` and
/// `z(q - 1/q)` for `i < j`.
pub fn gen_uq_gln(n: usize, q: &Scalar, z: &Scalar) -> Result<WeightSet> {
    if n < 1 {
        return Err(Error::InvalidColorCount { n, min: 1 });
    }
    if q.is_zero() {
        return Err(Error::ZeroWeight(format!("q = {q}")));
    }
    if z.is_zero() {
        return Err(Error::ZeroWeight(format!("z = {z}")));
    }
    let qinv = q.inv()?;
    let a = q - &(z * &qinv);
    let b = Scalar::one() - z;
    let c_low = q - &qinv;
    let c_high = z * &c_low;
    if a.is_zero() {
        return Err(Error::ZeroWeight(format!("a = q - z/q vanishes at q = {q}, z = {z}")));
    }
    if n >= 2 {
        if b.is_zero() {
            return Err(Error::ZeroWeight(format!("b = 1 - z vanishes at z = {z}")));
        }
        if c_low.is_zero() {
            return Err(Error::ZeroWeight(format!("c = q - 1/q vanishes at q = {q}")));
        }
    }
    let bt = PairTable::from_fn(n, |_, _| b.clone());
    let ct = PairTable::from_fn(n, |i, j| if i > j { c_low.clone() } else { c_high.clone() });
    WeightSet::new(
        n,
        (0..n).map(|_| a.clone()).collect(),
        bt,
        ct,
        Tag::Custom(format!("uq-gln q={q} z={z}")),
    )
}

pub fn gen_uq_gln_twisted(n: usize, q: &Scalar, z: &Scalar, twist: &RhoTwist) -> Result<WeightSet> {
    apply_rho(&gen_uq_gln(n, q, z)?, twist)
}

/// `a_i(x) = a0 z_i(x)`, `b_ij(x) = b0 z_i(x)`, `c_ij(x) = c0 z_i(x)`, with
/// `z_i(S)/z_i(T)` independent of `i`.
pub fn gen_scaled(
    n: usize,
    a0: &Scalar,
    b0: &Scalar,
    c0: &Scalar,
    z_s: &[Scalar],
    z_t: &[Scalar],
) -> Result<(WeightSet, WeightSet)> {
    for (what, v) in [("z_s", z_s), ("z_t", z_t)] {
        if v.len() != n {
            return Err(Error::WrongLength {
                what,
                expected: n,
                found: v.len(),
            });
        }
    }
    for (name, v) in [("a0", a0), ("b0", b0), ("c0", c0)] {
        if v.is_zero() {
            return Err(Error::ZeroWeight(name.into()));
        }
    }
    for (i, z) in z_s.iter().chain(z_t).enumerate() {
        if z.is_zero() {
            return Err(Error::ZeroWeight(format!("z parameter #{i}")));
        }
    }
    for i in 1..n {
        if &z_s[i] * &z_t[0] != &z_s[0] * &z_t[i] {
            return Err(Error::TwistInvariant(format!(
                "z_{i}(S)/z_{i}(T) differs from z_0(S)/z_0(T)"
            )));
        }
    }
    let build = |z: &[Scalar], tag: Tag| {
        WeightSet::new(
            n,
            z.iter().map(|zi| a0 * zi).collect(),
            PairTable::from_fn(n, |i, _| b0 * &z[i]),
            PairTable::from_fn(n, |i, _| c0 * &z[i]),
            tag,
        )
    };
    Ok((build(z_s, Tag::S)?, build(z_t, Tag::T)?))
}

const SAMPLE_RETRIES: usize = 64;

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let p: i64 = rng.random_range(-12..=12);
        let d: i64 = rng.random_range(1..=9);
        if p != 0 {
            return Scalar::from_big(BigInt::from(p), BigInt::from(d)).expect("nonzero denominator");
        }
    }
}

/// Deterministic solvable pair: the U_q family with random rational
/// parameters, followed by a random ρ-twist and a coboundary ζ-twist.
pub fn sample_solvable(n: usize, seed: u64) -> Result<(WeightSet, WeightSet)> {
    if n < 2 {
        return Err(Error::InvalidColorCount { n, min: 2 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRIES {
        if let Ok(pair) = sample_once(n, &mut rng) {
            return Ok(pair);
        }
    }
    Err(Error::Degenerate(format!("no nondegenerate sample for seed {seed}")))
}

fn sample_once(n: usize, rng: &mut ChaCha8Rng) -> Result<(WeightSet, WeightSet)> {
    let q = random_rational(rng);
    let z_s = random_rational(rng);
    let z_t = random_rational(rng);
    let rho_upper: Vec<Scalar> = (0..n * (n - 1) / 2).map(|_| random_rational(rng)).collect();
    let w: Vec<Scalar> = (0..n).map(|_| random_rational(rng)).collect();
    let mut upper = rho_upper.into_iter();
    let rho = RhoTwist::from_upper(n, |_, _| upper.next().expect("one value per pair"))?;
    let zeta = ZetaTwist::coboundary(&w)?;
    let twist = |base: WeightSet, tag: Tag| -> Result<WeightSet> {
        Ok(apply_zeta(&apply_rho(&base, &rho)?, &zeta)?.with_tag(tag))
    };
    let s = twist(gen_uq_gln(n, &q, &z_s)?, Tag::S)?;
    let t = twist(gen_uq_gln(n, &q, &z_t)?, Tag::T)?;
    if check_conditions(&s, &t)?.solvable {
        Ok((s, t))
    } else {
        Err(Error::NotSolvable)
    }
}
