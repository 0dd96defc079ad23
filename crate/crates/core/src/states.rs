//! Representation objects: a same-region relation on `n` intervals paired
//! with the value carried by each interval.
//!
//! A pair `(R, v)` is a valid state when `R` is a reflexive, symmetric,
//! idempotent Boolean matrix with the three planarity conditions and `v` is
//! fixed by the action of `R`. Interval indices in diagnostics are 1-based.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::boolmat::BitMatrix;
use crate::lomonoid::{act, LatticeMonoid};
use crate::operators::Representation;

/// One failed axiom, with a 1-based witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `r_{i,i} = 0`
    E1 { i: usize },
    /// `r_{i,j} ≠ r_{j,i}`
    E2 { i: usize, j: usize },
    /// `(R²)_{i,j} ≠ r_{i,j}`
    E3 { i: usize, j: usize },
    /// `r_{i,j} = 1` with `i - j` odd
    T1 { i: usize, j: usize },
    /// `r_{α,γ} r_{β,δ} = 1` but not all of `r_{α,β}, r_{β,γ}, r_{γ,δ}`
    T2 {
        alpha: usize,
        beta: usize,
        gamma: usize,
        delta: usize,
    },
    /// `r_{α,β} = 1` with neither `r_{α+1,β-1} = 1` nor an intermediate link
    T3 { alpha: usize, beta: usize },
    /// `(R * v)_i ≠ v_i`
    EC { i: usize },
}

impl Violation {
    pub fn property(&self) -> &'static str {
        match self {
            Violation::E1 { .. } => "E1",
            Violation::E2 { .. } => "E2",
            Violation::E3 { .. } => "E3",
            Violation::T1 { .. } => "T1",
            Violation::T2 { .. } => "T2",
            Violation::T3 { .. } => "T3",
            Violation::EC { .. } => "EC",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::E1 { i } | Violation::EC { i } => write!(f, "{} at ({i})", self.property()),
            Violation::E2 { i, j } | Violation::E3 { i, j } | Violation::T1 { i, j } => {
                write!(f, "{} at ({i},{j})", self.property())
            }
            Violation::T2 {
                alpha,
                beta,
                gamma,
                delta,
            } => write!(f, "T2 at ({alpha},{beta},{gamma},{delta})"),
            Violation::T3 { alpha, beta } => write!(f, "T3 at ({alpha},{beta})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("relation is {rows}x{cols} but there are {values} values")]
    Shape {
        rows: usize,
        cols: usize,
        values: usize,
    },
    #[error("invalid state: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    Violations(Vec<Violation>),
    #[error("width {0} is not reachable from the trivial state; widths are odd")]
    Unreachable(usize),
}

/// A validated state of width `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleState<V> {
    relation: BitMatrix,
    values: Vec<V>,
}

impl<V: Clone + Eq> TangleState<V> {
    /// Checks every axiom and reports all failures, one witness each.
    pub fn validate<M>(relation: BitMatrix, values: Vec<V>, m: &M) -> Result<Self, StateError>
    where
        M: LatticeMonoid<Value = V>,
    {
        if !relation.is_square() || relation.rows() != values.len() {
            return Err(StateError::Shape {
                rows: relation.rows(),
                cols: relation.cols(),
                values: values.len(),
            });
        }
        let violations = violations(&relation, &values, m);
        if violations.is_empty() {
            Ok(TangleState { relation, values })
        } else {
            Err(StateError::Violations(violations))
        }
    }

    /// `([1], (∅))`.
    pub fn trivial<M: LatticeMonoid<Value = V>>(m: &M) -> Self {
        TangleState {
            relation: BitMatrix::identity(1),
            values: vec![m.zero()],
        }
    }

    /// The identity relation on `width` intervals, every value `∅`.
    pub fn identity<M: LatticeMonoid<Value = V>>(width: usize, m: &M) -> Self {
        TangleState {
            relation: BitMatrix::identity(width),
            values: vec![m.zero(); width],
        }
    }

    pub(crate) fn from_parts(relation: BitMatrix, values: Vec<V>) -> Self {
        TangleState { relation, values }
    }

    pub fn width(&self) -> usize {
        self.values.len()
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.relation
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    /// 1-based entry `r_{i,j}`.
    pub fn linked(&self, i: usize, j: usize) -> bool {
        self.relation.get(i - 1, j - 1)
    }

    pub fn into_parts(self) -> (BitMatrix, Vec<V>) {
        (self.relation, self.values)
    }

    /// Membership in the subfamily whose outermost intervals share a
    /// region, `r_{1,n} = 1`.
    pub fn in_u(&self) -> bool {
        let n = self.width();
        n > 0 && self.relation.get(0, n - 1)
    }

    /// Linked intervals carry equal values. Returns the first 1-based pair
    /// that breaks this.
    pub fn region_constancy_witness(&self) -> Option<(usize, usize)> {
        let n = self.width();
        for i in 0..n {
            for j in 0..n {
                if self.relation.get(i, j) && self.values[i] != self.values[j] {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// The relation rows followed by the value tuple.
    pub fn dump<M: LatticeMonoid<Value = V>>(&self, m: &M) -> String {
        let vals: Vec<String> = self.values.iter().map(|v| m.render(v)).collect();
        format!("{}\n({})", self.relation, vals.join(","))
    }
}

fn violations<M: LatticeMonoid>(r: &BitMatrix, v: &[M::Value], m: &M) -> Vec<Violation> {
    let n = r.rows();
    let mut out = Vec::new();
    let first = |f: &dyn Fn(usize, usize) -> bool| -> Option<(usize, usize)> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| f(i, j))
            .map(|(i, j)| (i + 1, j + 1))
    };

    if let Some(i) = (0..n).find(|&i| !r.get(i, i)) {
        out.push(Violation::E1 { i: i + 1 });
    }
    if let Some((i, j)) = first(&|i, j| r.get(i, j) != r.get(j, i)) {
        out.push(Violation::E2 { i, j });
    }
    let sq = r * r;
    if let Some((i, j)) = first(&|i, j| sq.get(i, j) != r.get(i, j)) {
        out.push(Violation::E3 { i, j });
    }
    if let Some((i, j)) = first(&|i, j| r.get(i, j) && (i + j) % 2 == 1) {
        out.push(Violation::T1 { i, j });
    }
    if let Some(w) = t2_witness(r) {
        out.push(w);
    }
    if let Some(w) = t3_witness(r) {
        out.push(w);
    }
    match act(m, r, v) {
        Ok(moved) => {
            if let Some(i) = (0..n).find(|&i| moved[i] != v[i]) {
                out.push(Violation::EC { i: i + 1 });
            }
        }
        Err(_) => unreachable!("shape checked by the caller"),
    }
    out
}

fn t2_witness(r: &BitMatrix) -> Option<Violation> {
    let n = r.rows();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                if !r.get(a, c) {
                    continue;
                }
                for d in c..n {
                    if r.get(b, d) && !(r.get(a, b) && r.get(b, c) && r.get(c, d)) {
                        return Some(Violation::T2 {
                            alpha: a + 1,
                            beta: b + 1,
                            gamma: c + 1,
                            delta: d + 1,
                        });
                    }
                }
            }
        }
    }
    None
}

fn t3_witness(r: &BitMatrix) -> Option<Violation> {
    let n = r.rows();
    for a in 0..n {
        for b in a + 1..n {
            if !r.get(a, b) {
                continue;
            }
            let inner = b - a >= 2 && r.get(a + 1, b - 1);
            let between = (a + 1..b).any(|g| r.get(a, g));
            if !inner && !between {
                return Some(Violation::T3 {
                    alpha: a + 1,
                    beta: b + 1,
                });
            }
        }
    }
    None
}

/// A state of the given width reached by a seeded random walk of caps,
/// cups and region markings from the trivial state. Only odd widths are
/// reachable.
pub fn random_state<M: LatticeMonoid>(
    width: usize,
    seed: u64,
    m: &M,
) -> Result<TangleState<M::Value>, StateError> {
    if width % 2 == 0 {
        return Err(StateError::Unreachable(width));
    }
    let rep = Representation::new(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(s) = walk(&rep, width, &mut rng) {
            debug_assert!(TangleState::validate(s.relation.clone(), s.values.clone(), m).is_ok());
            return Ok(s);
        }
    }
}

fn walk<M: LatticeMonoid, R: Rng>(
    rep: &Representation<'_, M>,
    target: usize,
    rng: &mut R,
) -> Option<TangleState<M::Value>> {
    let m = rep.monoid();
    let mut s = TangleState::trivial(m);
    let steps = rng.gen_range(0..=target + 6);
    for _ in 0..steps {
        s = random_move(rep, s, target + 6, rng)?;
    }
    while s.width() != target {
        let w = s.width();
        s = if w < target {
            rep.cap(&s, rng.gen_range(2..=w + 1)).ok()?
        } else {
            rep.cup(&s, rng.gen_range(2..=w - 1)).ok()?
        };
        if rng.gen_bool(0.3) {
            s = rep.mark_first_region(&s, &m.random_value(rng));
        }
    }
    Some(s)
}

fn random_move<M: LatticeMonoid, R: Rng>(
    rep: &Representation<'_, M>,
    s: TangleState<M::Value>,
    max_width: usize,
    rng: &mut R,
) -> Option<TangleState<M::Value>> {
    let w = s.width();
    match rng.gen_range(0..5) {
        0 => Some(rep.mark_first_region(&s, &rep.monoid().random_value(rng))),
        1 | 2 if w + 2 <= max_width => rep.cap(&s, rng.gen_range(2..=w + 1)).ok(),
        _ if w >= 3 => rep.cup(&s, rng.gen_range(2..=w - 1)).ok(),
        _ => rep.cap(&s, rng.gen_range(2..=w + 1)).ok(),
    }
}
