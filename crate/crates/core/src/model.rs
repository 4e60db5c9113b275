//! Colors, vertex classification and the S/T/R weight containers.
//!
//! Every vertex has two incoming edges and two outgoing edges. Writing the
//! incoming pair as `(u, v)` and the outgoing pair as `(u', v')`, where `u'`
//! lies on the continuation of the strand entering at `u`, the admissible
//! configurations are
//!
//! | kind      | edges                          |
//! |-----------|--------------------------------|
//! | `A(i)`    | `u = v = u' = v' = i`          |
//! | `B(i, j)` | `u = u' = i`, `v = v' = j`     |
//! | `C(i, j)` | `u = v' = i`, `v = u' = j`     |
//!
//! For a rectangular vertex `u` is the west edge, `v` the north edge, `u'`
//! the east edge and `v'` the south edge, so `b_ij` carries `i` straight
//! along the horizontal line and `j` along the vertical one, while in `c_ij`
//! the color `i` enters from the west and leaves to the south.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub usize);

impl Color {
    pub fn checked(index: usize, n: usize) -> Result<Color> {
        if index < n {
            Ok(Color(index))
        } else {
            Err(Error::ColorOutOfRange { color: index, n })
        }
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn check_color(color: usize, n: usize) -> Result<()> {
    Color::checked(color, n).map(|_| ())
}

/// Number of admissible vertices for `n` colors, `n(2n - 1)`.
pub fn admissible_vertex_count(n: usize) -> usize {
    n * (2 * n).saturating_sub(1)
}

/// Dense table indexed by ordered pairs `(i, j)` with `i != j`, stored in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct PairTable<T> {
    n: usize,
    data: Vec<T>,
}

/// Position of `(i, j)` in the lexicographic listing of ordered distinct pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j && i < n && j < n);
    i * (n - 1) + if j > i { j - 1 } else { j }
}

/// All ordered pairs `(i, j)`, `i != j`, in lexicographic order.
pub fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// All ordered triples of distinct labels in lexicographic order.
pub fn ordered_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    ordered_pairs(n).flat_map(move |(i, j)| (0..n).filter(move |&k| k != i && k != j).map(move |k| (i, j, k)))
}

impl<T> PairTable<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = ordered_pairs(n).map(|(i, j)| f(i, j)).collect();
        PairTable { n, data }
    }

    pub fn try_from_fn<E>(
        n: usize,
        mut f: impl FnMut(usize, usize) -> core::result::Result<T, E>,
    ) -> core::result::Result<Self, E> {
        let data = ordered_pairs(n)
            .map(|(i, j)| f(i, j))
            .collect::<core::result::Result<Vec<_>, E>>()?;
        Ok(PairTable { n, data })
    }

    /// Builds a table from values listed in lexicographic pair order.
    pub fn from_vec(n: usize, data: Vec<T>) -> Result<Self> {
        let expected = n * n.saturating_sub(1);
        if data.len() != expected {
            return Err(Error::WrongLength {
                what: "pair table",
                expected,
                found: data.len(),
            });
        }
        Ok(PairTable { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i != j, "pair table has no diagonal entry ({i}, {i})");
        &self.data[pair_index(self.n, i, j)]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        assert!(i != j, "pair table has no diagonal entry ({i}, {i})");
        let idx = pair_index(self.n, i, j);
        &mut self.data[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        ordered_pairs(self.n).zip(self.data.iter())
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, mut f: impl FnMut(usize, usize, &T) -> U) -> PairTable<U> {
        PairTable {
            n: self.n,
            data: self.iter().map(|((i, j), v)| f(i, j, v)).collect(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    A(usize),
    B(usize, usize),
    C(usize, usize),
    Inadmissible,
}

impl VertexKind {
    pub fn is_admissible(self) -> bool {
        self != VertexKind::Inadmissible
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::A(i) => write!(f, "a({i})"),
            VertexKind::B(i, j) => write!(f, "b({i},{j})"),
            VertexKind::C(i, j) => write!(f, "c({i},{j})"),
            VertexKind::Inadmissible => f.write_str("inadmissible"),
        }
    }
}

/// Classifies a vertex from its incoming pair `(u, v)` and outgoing pair
/// `(u2, v2)`, where `u2` continues the strand entering at `u`.
pub fn classify(u: usize, v: usize, u2: usize, v2: usize) -> VertexKind {
    if u == v {
        if u2 == u && v2 == u {
            VertexKind::A(u)
        } else {
            VertexKind::Inadmissible
        }
    } else if u2 == u && v2 == v {
        VertexKind::B(u, v)
    } else if u2 == v && v2 == u {
        VertexKind::C(u, v)
    } else {
        VertexKind::Inadmissible
    }
}

/// Classifies a rectangular vertex given its four edge colors.
pub fn classify_rect_vertex(n: usize, north: usize, west: usize, south: usize, east: usize) -> Result<VertexKind> {
    for c in [north, west, south, east] {
        check_color(c, n)?;
    }
    Ok(classify(west, north, east, south))
}

/// Anything that assigns a Boltzmann weight to each vertex kind.
pub trait VertexWeights {
    fn n(&self) -> usize;
    fn vertex_weight(&self, kind: VertexKind) -> Scalar;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tag {
    S,
    T,
    Custom(String),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::S => f.write_str("S"),
            Tag::T => f.write_str("T"),
            Tag::Custom(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Tag {
    fn from(s: &str) -> Self {
        match s {
            "S" => Tag::S,
            "T" => Tag::T,
            other => Tag::Custom(String::from(other)),
        }
    }
}

/// Rectangular-vertex weights `a_i`, `b_ij`, `c_ij`; all nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSet {
    n: usize,
    a: Vec<Scalar>,
    b: PairTable<Scalar>,
    c: PairTable<Scalar>,
    tag: Tag,
}

impl WeightSet {
    pub fn new(n: usize, a: Vec<Scalar>, b: PairTable<Scalar>, c: PairTable<Scalar>, tag: Tag) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidColorCount { n, min: 1 });
        }
        if a.len() != n {
            return Err(Error::WrongLength {
                what: "a",
                expected: n,
                found: a.len(),
            });
        }
        if b.n() != n || c.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: if b.n() != n { b.n() } else { c.n() },
            });
        }
        if let Some(i) = a.iter().position(Scalar::is_zero) {
            return Err(Error::ZeroWeight(format!("a_{i}")));
        }
        for (name, table) in [("b", &b), ("c", &c)] {
            if let Some(((i, j), _)) = table.iter().find(|(_, v)| v.is_zero()) {
                return Err(Error::ZeroWeight(format!("{name}_{i}{j}")));
            }
        }
        Ok(WeightSet { n, a, b, c, tag })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> &Tag {
        &self.tag
    }

    pub fn with_tag(mut self, tag: Tag) -> Self {
        self.tag = tag;
        self
    }

    pub fn a(&self, i: usize) -> &Scalar {
        &self.a[i]
    }

    pub fn b(&self, i: usize, j: usize) -> &Scalar {
        self.b.get(i, j)
    }

    pub fn c(&self, i: usize, j: usize) -> &Scalar {
        self.c.get(i, j)
    }

    pub fn a_values(&self) -> &[Scalar] {
        &self.a
    }

    pub fn b_table(&self) -> &PairTable<Scalar> {
        &self.b
    }

    pub fn c_table(&self) -> &PairTable<Scalar> {
        &self.c
    }

    pub fn is_exact(&self) -> bool {
        self.a.iter().all(Scalar::is_exact)
            && self.b.values().iter().all(Scalar::is_exact)
            && self.c.values().iter().all(Scalar::is_exact)
    }
}

impl VertexWeights for WeightSet {
    fn n(&self) -> usize {
        self.n
    }

    fn vertex_weight(&self, kind: VertexKind) -> Scalar {
        match kind {
            VertexKind::A(i) => self.a[i].clone(),
            VertexKind::B(i, j) => self.b.get(i, j).clone(),
            VertexKind::C(i, j) => self.c.get(i, j).clone(),
            VertexKind::Inadmissible => Scalar::zero(),
        }
    }
}

/// One of the `d = n(2n - 1)` R-vertex weights.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RSlot {
    A(usize),
    B(usize, usize),
    C(usize, usize),
}

impl RSlot {
    /// Canonical column: `A_0..A_{n-1}`, then `B` and `C` in lexicographic pair order.
    pub fn index(self, n: usize) -> usize {
        let pairs = n * (n - 1);
        match self {
            RSlot::A(i) => i,
            RSlot::B(i, j) => n + pair_index(n, i, j),
            RSlot::C(i, j) => n + pairs + pair_index(n, i, j),
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = RSlot> {
        (0..n)
            .map(RSlot::A)
            .chain(ordered_pairs(n).map(|(i, j)| RSlot::B(i, j)))
            .chain(ordered_pairs(n).map(|(i, j)| RSlot::C(i, j)))
    }

    pub fn from_kind(kind: VertexKind) -> Option<RSlot> {
        match kind {
            VertexKind::A(i) => Some(RSlot::A(i)),
            VertexKind::B(i, j) => Some(RSlot::B(i, j)),
            VertexKind::C(i, j) => Some(RSlot::C(i, j)),
            VertexKind::Inadmissible => None,
        }
    }
}

impl fmt::Display for RSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RSlot::A(i) => write!(f, "A({i})"),
            RSlot::B(i, j) => write!(f, "B({i},{j})"),
            RSlot::C(i, j) => write!(f, "C({i},{j})"),
        }
    }
}

/// Candidate R-vertex weights; zeros allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct RWeightSet {
    n: usize,
    values: Vec<Scalar>,
}

impl RWeightSet {
    pub fn zero(n: usize) -> Self {
        RWeightSet {
            n,
            values: (0..admissible_vertex_count(n)).map(|_| Scalar::zero()).collect(),
        }
    }

    /// Takes the `d` values in canonical slot order.
    pub fn from_vec(n: usize, values: Vec<Scalar>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidColorCount { n, min: 1 });
        }
        let d = admissible_vertex_count(n);
        if values.len() != d {
            return Err(Error::WrongLength {
                what: "R weights",
                expected: d,
                found: values.len(),
            });
        }
        Ok(RWeightSet { n, values })
    }

    pub fn from_parts(a: Vec<Scalar>, b: PairTable<Scalar>, c: PairTable<Scalar>) -> Result<Self> {
        let n = a.len();
        if b.n() != n || c.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: b.n().max(c.n()),
            });
        }
        let mut values = a;
        values.extend(b.values().iter().cloned());
        values.extend(c.values().iter().cloned());
        Self::from_vec(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, slot: RSlot) -> &Scalar {
        &self.values[slot.index(self.n)]
    }

    pub fn set(&mut self, slot: RSlot, value: Scalar) {
        let idx = slot.index(self.n);
        self.values[idx] = value;
    }

    pub fn a(&self, i: usize) -> &Scalar {
        self.get(RSlot::A(i))
    }

    pub fn b(&self, i: usize, j: usize) -> &Scalar {
        self.get(RSlot::B(i, j))
    }

    pub fn c(&self, i: usize, j: usize) -> &Scalar {
        self.get(RSlot::C(i, j))
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn slots(&self) -> impl Iterator<Item = (RSlot, &Scalar)> {
        RSlot::all(self.n).zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, factor: &Scalar) -> RWeightSet {
        RWeightSet {
            n: self.n,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn add(&self, other: &RWeightSet) -> Result<RWeightSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(RWeightSet {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(x, y)| x + y).collect(),
        })
    }

    /// True when `other = λ·self` for a single nonzero `λ` (both nonzero).
    pub fn is_proportional_to(&self, other: &RWeightSet) -> bool {
        if self.n != other.n || self.is_zero() || other.is_zero() {
            return false;
        }
        let Some(pivot) = self.values.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        if other.values[pivot].is_zero() {
            return false;
        }
        // cross-multiplication avoids dividing in float mode
        self.values
            .iter()
            .zip(&other.values)
            .all(|(x, y)| x * &other.values[pivot] == y * &self.values[pivot])
    }
}

impl VertexWeights for RWeightSet {
    fn n(&self) -> usize {
        self.n
    }

    fn vertex_weight(&self, kind: VertexKind) -> Scalar {
        match RSlot::from_kind(kind) {
            Some(slot) => self.get(slot).clone(),
            None => Scalar::zero(),
        }
    }
}

pub(crate) fn ensure_same_n(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
