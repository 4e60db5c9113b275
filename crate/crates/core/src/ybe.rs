//! Yang-Baxter diagrams, their polynomials, and the linear system they
//! impose on the R-weights.
//!
//! Both diagrams have inputs `E1, E2, E3` and outputs `F1, F2, F3`. In the
//! left diagram the R-vertex sits west of a column holding S (upper) and T
//! (lower): `E1` and `E2` enter R from the lower-left and upper-left, `E3`
//! enters S from above, `F1` and `F2` leave S and T to the east and `F3`
//! leaves T downwards. The right diagram mirrors this with T upper, S lower
//! and R to the east. Interior edges are indexed `(x, y, z)`:
//!
//! * left: `x` = R→S, `y` = R→T, `z` = S→T;
//! * right: `x` = T→R, `y` = S→R, `z` = T→S.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::model::{
    admissible_vertex_count, check_color, classify, ensure_same_n, ordered_pairs, ordered_triples, RSlot, RWeightSet,
    VertexKind, VertexWeights, WeightSet,
};
use crate::scalar::Scalar;

/// Boundary colors `(E1, E2, E3 / F1, F2, F3)` of one Yang-Baxter equation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Boundary {
    pub e: [usize; 3],
    pub f: [usize; 3],
}

impl Boundary {
    pub fn new(n: usize, e: [usize; 3], f: [usize; 3]) -> Result<Self> {
        for c in e.iter().chain(f.iter()) {
            check_color(*c, n)?;
        }
        Ok(Boundary { e, f })
    }

    pub fn from_digits(digits: [usize; 6]) -> Self {
        Boundary {
            e: [digits[0], digits[1], digits[2]],
            f: [digits[3], digits[4], digits[5]],
        }
    }

    pub fn colors(&self) -> [usize; 6] {
        [self.e[0], self.e[1], self.e[2], self.f[0], self.f[1], self.f[2]]
    }

    /// Whether the entry and exit colors agree as multisets.
    pub fn conserves_colors(&self) -> bool {
        let mut e = self.e;
        let mut f = self.f;
        e.sort_unstable();
        f.sort_unstable();
        e == f
    }

    fn max_color(&self) -> usize {
        self.colors().into_iter().max().unwrap_or(0)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.colors();
        write!(f, "({a},{b},{c} / {d},{e},{g})")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DiagramState {
    pub boundary: Boundary,
    pub side: Side,
    pub interior: [usize; 3],
}

impl DiagramState {
    /// Kinds of the (R, S, T) vertices of this state.
    pub fn vertex_kinds(&self) -> (VertexKind, VertexKind, VertexKind) {
        side_kinds(self.side, &self.boundary, self.interior)
    }
}

fn side_kinds(side: Side, b: &Boundary, [x, y, z]: [usize; 3]) -> (VertexKind, VertexKind, VertexKind) {
    let [e1, e2, e3] = b.e;
    let [f1, f2, f3] = b.f;
    match side {
        Side::Left => (classify(e1, e2, x, y), classify(x, e3, f1, z), classify(y, z, f2, f3)),
        Side::Right => (classify(y, x, f1, f2), classify(e1, z, y, f3), classify(e2, e3, x, z)),
    }
}

fn interiors(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| [x, y, z])))
}

/// All admissible interior assignments of one diagram, in lexicographic order.
pub fn enumerate_side_states(side: Side, boundary: &Boundary, n: usize) -> Vec<DiagramState> {
    interiors(n)
        .filter(|&interior| {
            let (r, s, t) = side_kinds(side, boundary, interior);
            r.is_admissible() && s.is_admissible() && t.is_admissible()
        })
        .map(|interior| DiagramState {
            boundary: *boundary,
            side,
            interior,
        })
        .collect()
}

/// The states of one diagram as `(R slot, S weight · T weight)` terms.
fn side_terms(side: Side, boundary: &Boundary, s: &WeightSet, t: &WeightSet) -> Vec<(RSlot, Scalar)> {
    let n = s.n();
    let mut out = Vec::new();
    for interior in interiors(n) {
        let (rk, sk, tk) = side_kinds(side, boundary, interior);
        let Some(slot) = RSlot::from_kind(rk) else { continue };
        if !sk.is_admissible() || !tk.is_admissible() {
            continue;
        }
        out.push((slot, s.vertex_weight(sk) * t.vertex_weight(tk)));
    }
    out
}

fn check_dims(r: &RWeightSet, s: &WeightSet, t: &WeightSet, boundary: &Boundary) -> Result<()> {
    ensure_same_n(r.n(), s.n())?;
    ensure_same_n(s.n(), t.n())?;
    check_color(boundary.max_color(), s.n())
}

/// Partition function of one Yang-Baxter diagram.
pub fn eval_side(side: Side, boundary: &Boundary, r: &RWeightSet, s: &WeightSet, t: &WeightSet) -> Result<Scalar> {
    check_dims(r, s, t, boundary)?;
    Ok(side_terms(side, boundary, s, t)
        .into_iter()
        .map(|(slot, st)| r.get(slot) * st)
        .sum())
}

/// `X^E_F = Z(left) - Z(right)`.
pub fn yb_polynomial(boundary: &Boundary, r: &RWeightSet, s: &WeightSet, t: &WeightSet) -> Result<Scalar> {
    Ok(eval_side(Side::Left, boundary, r, s, t)? - eval_side(Side::Right, boundary, r, s, t)?)
}

/// Coefficient of each R-slot in `X^E_F`, in canonical slot order.
pub fn polynomial_coefficients(boundary: &Boundary, s: &WeightSet, t: &WeightSet) -> Result<Vec<Scalar>> {
    ensure_same_n(s.n(), t.n())?;
    let n = s.n();
    check_color(boundary.max_color(), n)?;
    let mut row = vec![Scalar::zero(); admissible_vertex_count(n)];
    for (slot, st) in side_terms(Side::Left, boundary, s, t) {
        row[slot.index(n)] += st;
    }
    for (slot, st) in side_terms(Side::Right, boundary, s, t) {
        row[slot.index(n)] -= st;
    }
    Ok(row)
}

/// Boundaries of the twelve patterns that can give a nonzero polynomial,
/// sorted lexicographically. There are `5n³ - 8n² + 3n` of them.
pub fn enumerate_nonzero_boundaries(n: usize) -> Vec<Boundary> {
    const TWO: [[u8; 6]; 7] = [
        *b"iijiji", *b"iijjii", *b"ijiiij", *b"ijiiji", *b"ijijii", *b"ijjjij", *b"ijjjji",
    ];
    const THREE: [[u8; 6]; 5] = [*b"ijkikj", *b"ijkjik", *b"ijkkij", *b"ijkjki", *b"ijkkji"];
    let instantiate = |pattern: &[u8; 6], i: usize, j: usize, k: usize| {
        let mut d = [0; 6];
        for (slot, sym) in d.iter_mut().zip(pattern) {
            *slot = match sym {
                b'i' => i,
                b'j' => j,
                _ => k,
            };
        }
        Boundary::from_digits(d)
    };
    let mut out: Vec<Boundary> = ordered_pairs(n)
        .flat_map(|(i, j)| TWO.iter().map(move |p| instantiate(p, i, j, 0)))
        .chain(ordered_triples(n).flat_map(|(i, j, k)| THREE.iter().map(move |p| instantiate(p, i, j, k))))
        .collect();
    out.sort_unstable();
    out
}

/// Every boundary in `[0, n)^6`, lexicographically.
pub fn all_boundaries(n: usize) -> impl Iterator<Item = Boundary> {
    let total = n.pow(6);
    (0..total).map(move |mut code| {
        let mut d = [0; 6];
        for slot in d.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        Boundary::from_digits(d)
    })
}

/// Lexicographically least relabeling of `boundary` under color permutations.
///
/// Relabeling colors in order of first appearance is minimal: any
/// permutation must send the first color to something `>= 0`, the first new
/// color after it to something `>= 1`, and so on.
pub fn permutation_class(boundary: &Boundary) -> Boundary {
    let mut map: Vec<(usize, usize)> = Vec::new();
    let mut d = boundary.colors();
    for c in d.iter_mut() {
        let next = map.len();
        let label = match map.iter().find(|(from, _)| from == c) {
            Some(&(_, to)) => to,
            None => {
                map.push((*c, next));
                next
            }
        };
        *c = label;
    }
    Boundary::from_digits(d)
}

/// Coefficient matrix of the nonzero Yang-Baxter polynomials in the R-weights.
#[derive(Clone, Debug, PartialEq)]
pub struct YBLinearSystem {
    pub n: usize,
    pub rows: Vec<Boundary>,
    pub columns: Vec<RSlot>,
    pub matrix: Vec<Vec<Scalar>>,
}

impl YBLinearSystem {
    /// `matrix · R`, one entry per row boundary.
    pub fn apply(&self, r: &RWeightSet) -> Result<Vec<Scalar>> {
        ensure_same_n(self.n, r.n())?;
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(r.values()).map(|(a, x)| a * x).sum())
            .collect())
    }

    pub fn is_exact(&self) -> bool {
        self.matrix.iter().flatten().all(Scalar::is_exact)
    }
}

pub fn build_linear_system(s: &WeightSet, t: &WeightSet) -> Result<YBLinearSystem> {
    ensure_same_n(s.n(), t.n())?;
    let n = s.n();
    let rows = enumerate_nonzero_boundaries(n);
    let matrix = rows
        .iter()
        .map(|b| polynomial_coefficients(b, s, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(YBLinearSystem {
        n,
        rows,
        columns: RSlot::all(n).collect(),
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<Boundary>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `X^E_F` on all `n⁶` boundaries and lists those that do not vanish.
pub fn verify_ybe(r: &RWeightSet, s: &WeightSet, t: &WeightSet) -> Result<VerifyReport> {
    ensure_same_n(r.n(), s.n())?;
    ensure_same_n(s.n(), t.n())?;
    let n = s.n();
    let mut checked = 0;
    let mut failures = Vec::new();
    for b in all_boundaries(n) {
        checked += 1;
        if !yb_polynomial(&b, r, s, t)?.is_zero() {
            failures.push(b);
        }
    }
    Ok(VerifyReport { checked, failures })
}
