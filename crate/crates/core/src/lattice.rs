//! Rectangular grids, their admissible states and partition functions, and
//! the operator form of the Yang-Baxter equation.
//!
//! Rows are numbered from the top. The vertex in row `r`, column `c` sees
//! `W = horizontal[r][c]`, `N = vertical[r][c]`, `E = horizontal[r][c + 1]`,
//! `S = vertical[r + 1][c]`; column 0 of `horizontal` is the left boundary
//! and row 0 of `vertical` the top boundary.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{check_color, classify, ensure_same_n, RWeightSet, VertexKind, VertexWeights, WeightSet};
use crate::scalar::Scalar;

/// Default ceiling on candidate interior assignments for brute force.
pub const DEFAULT_STATE_LIMIT: u128 = 1 << 24;
/// Ceiling on the row-transfer width `n^cols`.
pub const TRANSFER_WIDTH_LIMIT: u128 = 1 << 14;

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    n: usize,
    row_weights: Vec<WeightSet>,
    top: Vec<usize>,
    bottom: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Grid {
    /// One weight set per row; `top`/`bottom` have one color per column and
    /// `left`/`right` one per row.
    pub fn new(
        row_weights: Vec<WeightSet>,
        top: Vec<usize>,
        bottom: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        let rows = row_weights.len();
        let cols = top.len();
        if rows == 0 || cols == 0 {
            return Err(Error::Degenerate(format!("grid must be nonempty, got {rows}x{cols}")));
        }
        let n = row_weights[0].n();
        for w in &row_weights {
            ensure_same_n(n, w.n())?;
        }
        for (what, v, expected) in [
            ("bottom boundary", &bottom, cols),
            ("left boundary", &left, rows),
            ("right boundary", &right, rows),
        ] {
            if v.len() != expected {
                return Err(Error::WrongLength {
                    what,
                    expected,
                    found: v.len(),
                });
            }
        }
        for &c in top.iter().chain(&bottom).chain(&left).chain(&right) {
            check_color(c, n)?;
        }
        Ok(Grid {
            n,
            row_weights,
            top,
            bottom,
            left,
            right,
        })
    }

    /// Same weights on every row.
    pub fn uniform(
        weights: WeightSet,
        rows: usize,
        top: Vec<usize>,
        bottom: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        Grid::new(vec![weights; rows], top, bottom, left, right)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.row_weights.len()
    }

    pub fn cols(&self) -> usize {
        self.top.len()
    }

    pub fn row_weights(&self) -> &[WeightSet] {
        &self.row_weights
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn interior_edge_count(&self) -> usize {
        let (r, c) = (self.rows(), self.cols());
        r * (c - 1) + (r - 1) * c
    }

    /// Whether the incoming colors (top, left) and outgoing colors (bottom,
    /// right) agree as multisets.
    pub fn conserves_colors(&self) -> bool {
        let mut balance = vec![0i64; self.n];
        for &c in self.top.iter().chain(&self.left) {
            balance[c] += 1;
        }
        for &c in self.bottom.iter().chain(&self.right) {
            balance[c] -= 1;
        }
        balance.iter().all(|&b| b == 0)
    }
}

/// Every edge color of a grid, boundary included.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridState {
    /// `rows` rows of `cols + 1` colors.
    pub horizontal: Vec<Vec<usize>>,
    /// `rows + 1` rows of `cols` colors.
    pub vertical: Vec<Vec<usize>>,
}

impl GridState {
    pub fn new(horizontal: Vec<Vec<usize>>, vertical: Vec<Vec<usize>>) -> Result<Self> {
        let rows = horizontal.len();
        let cols = vertical.first().map_or(0, Vec::len);
        if vertical.len() != rows + 1 {
            return Err(Error::WrongLength {
                what: "vertical edge rows",
                expected: rows + 1,
                found: vertical.len(),
            });
        }
        if let Some(h) = horizontal.iter().find(|h| h.len() != cols + 1) {
            return Err(Error::WrongLength {
                what: "horizontal edge row",
                expected: cols + 1,
                found: h.len(),
            });
        }
        if let Some(v) = vertical.iter().find(|v| v.len() != cols) {
            return Err(Error::WrongLength {
                what: "vertical edge row",
                expected: cols,
                found: v.len(),
            });
        }
        Ok(GridState { horizontal, vertical })
    }

    pub fn rows(&self) -> usize {
        self.horizontal.len()
    }

    pub fn cols(&self) -> usize {
        self.vertical[0].len()
    }

    pub fn vertex_kind(&self, r: usize, c: usize) -> VertexKind {
        classify(
            self.horizontal[r][c],
            self.vertical[r][c],
            self.horizontal[r][c + 1],
            self.vertical[r + 1][c],
        )
    }

    /// Vertex kinds in row-major order.
    pub fn vertex_kinds(&self) -> Vec<VertexKind> {
        (0..self.rows())
            .flat_map(|r| (0..self.cols()).map(move |c| (r, c)))
            .map(|(r, c)| self.vertex_kind(r, c))
            .collect()
    }

    /// First inadmissible vertex, if any.
    pub fn first_inadmissible(&self) -> Option<(usize, usize)> {
        (0..self.rows())
            .flat_map(|r| (0..self.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !self.vertex_kind(r, c).is_admissible())
    }

    pub fn is_admissible(&self) -> bool {
        self.first_inadmissible().is_none()
    }

    /// Whether the boundary edges of this state are those of `grid`.
    pub fn matches_boundary(&self, grid: &Grid) -> bool {
        self.rows() == grid.rows()
            && self.cols() == grid.cols()
            && self.vertical[0] == grid.top
            && self.vertical[grid.rows()] == grid.bottom
            && self.horizontal.iter().zip(&grid.left).all(|(h, &l)| h[0] == l)
            && self
                .horizontal
                .iter()
                .zip(&grid.right)
                .all(|(h, &r)| h[grid.cols()] == r)
    }

    /// Product of the vertex weights, each row using its own weight set.
    pub fn weight(&self, grid: &Grid) -> Result<Scalar> {
        if !self.matches_boundary(grid) {
            return Err(Error::Degenerate("state does not fit the grid boundary".into()));
        }
        let mut w = Scalar::one();
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                w *= grid.row_weights[r].vertex_weight(self.vertex_kind(r, c));
            }
        }
        Ok(w)
    }
}

fn brute_force_guard(grid: &Grid, limit: Option<u128>) -> Result<()> {
    let limit = limit.unwrap_or(DEFAULT_STATE_LIMIT);
    let needed = (grid.n as u128)
        .checked_pow(grid.interior_edge_count() as u32)
        .unwrap_or(u128::MAX);
    if needed > limit {
        Err(Error::GuardExceeded {
            what: "interior edge assignments",
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}

const UNSET: usize = usize::MAX;

fn blank_state(grid: &Grid) -> GridState {
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut horizontal = vec![vec![UNSET; cols + 1]; rows];
    let mut vertical = vec![vec![UNSET; cols]; rows + 1];
    for ((h, &l), &r) in horizontal.iter_mut().zip(&grid.left).zip(&grid.right) {
        h[0] = l;
        h[cols] = r;
    }
    vertical[0].clone_from(&grid.top);
    vertical[rows].clone_from(&grid.bottom);
    GridState { horizontal, vertical }
}

/// Visits every admissible state, vertex by vertex in row-major order.
///
/// Given the west and north colors, the only admissible completions are
/// `(E, S) = (W, N)` and `(N, W)`, so each step branches at most twice and
/// the boundary fixes the last column and row.
fn walk_states(grid: &Grid, state: &mut GridState, pos: usize, visit: &mut impl FnMut(&GridState)) {
    let (rows, cols) = (grid.rows(), grid.cols());
    if pos == rows * cols {
        visit(state);
        return;
    }
    let (r, c) = (pos / cols, pos % cols);
    let w = state.horizontal[r][c];
    let nn = state.vertical[r][c];
    let fixed_e = (c + 1 == cols).then(|| state.horizontal[r][c + 1]);
    let fixed_s = (r + 1 == rows).then(|| state.vertical[r + 1][c]);
    let options: &[(usize, usize)] = if w == nn { &[(w, nn)] } else { &[(w, nn), (nn, w)] };
    for &(e, s) in options {
        if fixed_e.is_some_and(|f| f != e) || fixed_s.is_some_and(|f| f != s) {
            continue;
        }
        state.horizontal[r][c + 1] = e;
        state.vertical[r + 1][c] = s;
        walk_states(grid, state, pos + 1, visit);
    }
    if fixed_e.is_none() {
        state.horizontal[r][c + 1] = UNSET;
    }
    if fixed_s.is_none() {
        state.vertical[r + 1][c] = UNSET;
    }
}

/// All admissible states, sorted lexicographically by `(horizontal, vertical)`.
///
/// `limit` bounds `n^(interior edges)`; `None` means [`DEFAULT_STATE_LIMIT`].
pub fn enumerate_grid_states(grid: &Grid, limit: Option<u128>) -> Result<Vec<GridState>> {
    brute_force_guard(grid, limit)?;
    let mut out = Vec::new();
    let mut state = blank_state(grid);
    walk_states(grid, &mut state, 0, &mut |s| out.push(s.clone()));
    out.sort_unstable();
    Ok(out)
}

/// Sum of state weights over all admissible states.
pub fn partition_function(grid: &Grid, limit: Option<u128>) -> Result<Scalar> {
    brute_force_guard(grid, limit)?;
    let mut z = Scalar::zero();
    let mut state = blank_state(grid);
    walk_states(grid, &mut state, 0, &mut |s| {
        let mut w = Scalar::one();
        for r in 0..s.rows() {
            for c in 0..s.cols() {
                w *= grid.row_weights[r].vertex_weight(s.vertex_kind(r, c));
            }
        }
        z += w;
    });
    Ok(z)
}

/// Row-transfer operator on vertical configurations, stored sparsely: entry
/// `x` lists the reachable output configurations with their weights.
///
/// Configurations are encoded base `n` with column 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct RowTransfer {
    pub width: usize,
    pub rows: Vec<Vec<(usize, Scalar)>>,
}

fn encode(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

fn decode(mut x: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = x % n;
        x /= n;
    }
    d
}

fn transfer_width(n: usize, cols: usize) -> Result<usize> {
    let needed = (n as u128).checked_pow(cols as u32).unwrap_or(u128::MAX);
    if needed > TRANSFER_WIDTH_LIMIT {
        return Err(Error::GuardExceeded {
            what: "transfer matrix width",
            needed,
            limit: TRANSFER_WIDTH_LIMIT,
        });
    }
    Ok(needed as usize)
}

impl RowTransfer {
    /// Operator of one row with fixed left and right colors.
    pub fn build(weights: &WeightSet, cols: usize, left: usize, right: usize) -> Result<Self> {
        let n = weights.n();
        check_color(left, n)?;
        check_color(right, n)?;
        let width = transfer_width(n, cols)?;
        let rows = (0..width)
            .map(|x| {
                let input = decode(x, n, cols);
                let mut out = Vec::new();
                let mut below = vec![0; cols];
                row_sweep(
                    weights,
                    &input,
                    &mut below,
                    0,
                    left,
                    right,
                    Scalar::one(),
                    &mut |y, w| out.push((encode(y, n), w)),
                );
                out.sort_by_key(|(y, _)| *y);
                out
            })
            .collect();
        Ok(RowTransfer { width, rows })
    }

    /// `v ↦ v·M`, propagating a row vector of top configurations downward.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.width];
        for (x, vx) in v.iter().enumerate().filter(|(_, vx)| !vx.is_zero()) {
            for (y, w) in &self.rows[x] {
                out[*y] += vx * w;
            }
        }
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn row_sweep(
    weights: &WeightSet,
    above: &[usize],
    below: &mut [usize],
    c: usize,
    west: usize,
    right: usize,
    acc: Scalar,
    emit: &mut impl FnMut(&[usize], Scalar),
) {
    if c == above.len() {
        if west == right {
            emit(below, acc);
        }
        return;
    }
    let north = above[c];
    let options: &[(usize, usize)] = if west == north {
        &[(west, north)]
    } else {
        &[(west, north), (north, west)]
    };
    for &(e, s) in options {
        below[c] = s;
        let w = &acc * &weights.vertex_weight(classify(west, north, e, s));
        row_sweep(weights, above, below, c + 1, e, right, w, emit);
    }
}

/// Partition function by contracting one row-transfer operator per row.
pub fn transfer_matrix_z(grid: &Grid) -> Result<Scalar> {
    let n = grid.n();
    let width = transfer_width(n, grid.cols())?;
    let mut v = vec![Scalar::zero(); width];
    v[encode(&grid.top, n)] = Scalar::one();
    for r in 0..grid.rows() {
        let op = RowTransfer::build(&grid.row_weights[r], grid.cols(), grid.left[r], grid.right[r])?;
        v = op.apply(&v);
    }
    Ok(v.swap_remove(encode(&grid.bottom, n)))
}

/// Dense `n² × n²` operator of a vertex: column = input pair `(u, v)`, row =
/// output pair `(u', v')`, both encoded as `first·n + second`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndomorphismMatrix {
    n: usize,
    entries: Vec<Vec<Scalar>>,
}

impl EndomorphismMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `u' ⊗ v'` in the image of `u ⊗ v`.
    pub fn entry(&self, input: (usize, usize), output: (usize, usize)) -> &Scalar {
        &self.entries[output.0 * self.n + output.1][input.0 * self.n + input.1]
    }

    /// Rows indexed by output pair, columns by input pair.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().flatten().filter(|x| !x.is_zero()).count()
    }
}

pub fn to_endomorphism<W: VertexWeights + ?Sized>(weights: &W) -> EndomorphismMatrix {
    let n = weights.n();
    let dim = n * n;
    let mut entries = vec![vec![Scalar::zero(); dim]; dim];
    for (col, input) in (0..dim).map(|x| (x, (x / n, x % n))) {
        for (row, output) in (0..dim).map(|y| (y, (y / n, y % n))) {
            let kind = classify(input.0, input.1, output.0, output.1);
            if kind.is_admissible() {
                entries[row][col] = weights.vertex_weight(kind);
            }
        }
    }
    EndomorphismMatrix { n, entries }
}

type Dense = Vec<Vec<Scalar>>;

/// Lifts `m` to `V ⊗ V ⊗ V`, acting on tensor factors `p < q`.
fn embed(m: &EndomorphismMatrix, p: usize, q: usize) -> Dense {
    let n = m.n;
    let dim = n * n * n;
    let other = 3 - p - q;
    let mut out = vec![vec![Scalar::zero(); dim]; dim];
    for (y, row) in out.iter_mut().enumerate() {
        let yi = decode(y, n, 3);
        for (x, slot) in row.iter_mut().enumerate() {
            let xi = decode(x, n, 3);
            if xi[other] == yi[other] {
                let e = m.entry((xi[p], xi[q]), (yi[p], yi[q]));
                if !e.is_zero() {
                    *slot = e.clone();
                }
            }
        }
    }
    out
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let dim = a.len();
    let mut out = vec![vec![Scalar::zero(); dim]; dim];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bkj) in b[k].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                out[i][j] += aik * bkj;
            }
        }
    }
    out
}

/// `R₁₂ S₁₃ T₂₃ = T₂₃ S₁₃ R₁₂` on `V ⊗ V ⊗ V`.
pub fn check_operator_ybe(r: &RWeightSet, s: &WeightSet, t: &WeightSet) -> Result<bool> {
    ensure_same_n(r.n(), s.n())?;
    ensure_same_n(s.n(), t.n())?;
    let r3 = embed(&to_endomorphism(r), 0, 1);
    let s3 = embed(&to_endomorphism(s), 0, 2);
    let t3 = embed(&to_endomorphism(t), 1, 2);
    let lhs = matmul(&matmul(&r3, &s3), &t3);
    let rhs = matmul(&matmul(&t3, &s3), &r3);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PairTable;
    use crate::model::Tag;

    fn weights(n: usize) -> WeightSet {
        let a = (0..n).map(|i| Scalar::from(i as i64 + 2)).collect();
        let b = PairTable::from_fn(n, |i, j| Scalar::from((3 * i + j + 5) as i64));
        let c = PairTable::from_fn(n, |i, j| Scalar::from((i + 7 * j + 11) as i64));
        WeightSet::new(n, a, b, c, Tag::S).unwrap()
    }

    #[test]
    fn single_vertex() {
        let w = weights(2);
        let g = Grid::uniform(w.clone(), 1, vec![1], vec![1], vec![1], vec![1]).unwrap();
        assert_eq!(partition_function(&g, None).unwrap(), *w.a(1));
        assert_eq!(transfer_matrix_z(&g).unwrap(), *w.a(1));
        // top = j, left = i, bottom = i, right = j
        let g = Grid::uniform(w.clone(), 1, vec![0], vec![1], vec![1], vec![0]).unwrap();
        let states = enumerate_grid_states(&g, None).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].vertex_kinds(), vec![VertexKind::C(1, 0)]);
        assert_eq!(partition_function(&g, None).unwrap(), *w.c(1, 0));
    }

    #[test]
    fn monochrome_grid() {
        let w = weights(3);
        let g = Grid::uniform(w.clone(), 2, vec![2; 3], vec![2; 3], vec![2; 2], vec![2; 2]).unwrap();
        let expected = w.a(2).pow(6);
        assert_eq!(partition_function(&g, None).unwrap(), expected);
        assert_eq!(transfer_matrix_z(&g).unwrap(), expected);
        assert_eq!(enumerate_grid_states(&g, None).unwrap().len(), 1);
    }

    #[test]
    fn guards() {
        let w = weights(4);
        let g = Grid::uniform(w, 4, vec![0; 8], vec![0; 8], vec![0; 4], vec![0; 4]).unwrap();
        assert!(matches!(partition_function(&g, None), Err(Error::GuardExceeded { .. })));
        assert!(matches!(transfer_matrix_z(&g), Err(Error::GuardExceeded { .. })));
        assert!(partition_function(&g, Some(u128::MAX)).is_ok());
    }

    #[test]
    fn six_vertex_operator() {
        let m = to_endomorphism(&weights(2));
        assert_eq!(m.nonzero_count(), 6);
        assert_eq!(*m.entry((0, 1), (1, 0)), Scalar::from(7 + 11));
    }

    #[test]
    fn trivial_r_is_flip() {
        let mut r = RWeightSet::zero(3);
        for slot in crate::model::RSlot::all(3) {
            if !matches!(slot, crate::model::RSlot::B(..)) {
                r.set(slot, Scalar::one());
            }
        }
        let m = to_endomorphism(&r);
        for u in 0..3 {
            for v in 0..3 {
                for u2 in 0..3 {
                    for v2 in 0..3 {
                        let flip = u2 == v && v2 == u;
                        assert_eq!(m.entry((u, v), (u2, v2)).is_zero(), !flip);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_r_satisfies_operator_form() {
        let w = weights(2);
        assert!(check_operator_ybe(&RWeightSet::zero(2), &w, &w).unwrap());
    }

    #[test]
    fn state_shape_validation() {
        assert!(GridState::new(vec![vec![0, 0]], vec![vec![0], vec![0]]).is_ok());
        assert!(GridState::new(vec![vec![0, 0, 0]], vec![vec![0], vec![0]]).is_err());
        assert!(GridState::new(vec![vec![0, 0]], vec![vec![0]]).is_err());
    }
}
