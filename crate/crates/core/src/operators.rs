//! The operators attached to the generators, plus the mirror, region
//! marking and encirclement maps, and word evaluation.
//!
//! A word lists its generators bottom first, so evaluation applies the
//! rightmost generator first.

use std::fmt;

use thiserror::Error;

use crate::boolmat::structured::{
    cap_connectivity, corner_block, reversal, shift_embedding, unit_diagonal,
};
use crate::boolmat::MatrixError;
use crate::lomonoid::{act, oplus_arrays, LatticeMonoid, MonoidError};
use crate::states::TangleState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// A local maximum: two new strands joined above.
    Cap,
    /// A local minimum: two strands joined below.
    Cup,
}

/// A generator `t̂_{n,k}` (cap) or `ť_{n,k}` (cup), `2 ≤ k ≤ n+1`.
///
/// A cap maps width `n` to `n + 2`; a cup maps `n + 2` to `n`. Width is the
/// number of intervals, one more than the number of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{kind:?} needs n >= 1, got n = {n}")]
    Width { kind: Kind, n: usize },
    #[error("{kind:?} with n = {n} needs 2 <= k <= {}, got k = {k}", n + 1)]
    Position { kind: Kind, n: usize, k: usize },
}

impl Generator {
    pub fn new(kind: Kind, n: usize, k: usize) -> Result<Self, GeneratorError> {
        if n == 0 {
            return Err(GeneratorError::Width { kind, n });
        }
        if !(2..=n + 1).contains(&k) {
            return Err(GeneratorError::Position { kind, n, k });
        }
        Ok(Generator { kind, n, k })
    }

    pub fn cap(n: usize, k: usize) -> Result<Self, GeneratorError> {
        Self::new(Kind::Cap, n, k)
    }

    pub fn cup(n: usize, k: usize) -> Result<Self, GeneratorError> {
        Self::new(Kind::Cup, n, k)
    }

    /// Width of the state the operator consumes.
    pub fn input_width(&self) -> usize {
        match self.kind {
            Kind::Cap => self.n,
            Kind::Cup => self.n + 2,
        }
    }

    /// Width of the state the operator produces.
    pub fn output_width(&self) -> usize {
        match self.kind {
            Kind::Cap => self.n + 2,
            Kind::Cup => self.n,
        }
    }

    pub fn top_points(&self) -> usize {
        self.input_width() - 1
    }

    pub fn bottom_points(&self) -> usize {
        self.output_width() - 1
    }

    /// The same generator moved one position right inside an extra pair of
    /// strands.
    pub fn shifted(&self) -> Self {
        Generator {
            kind: self.kind,
            n: self.n + 2,
            k: self.k + 1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            Kind::Cap => 'H',
            Kind::Cup => 'U',
        };
        write!(f, "{tag}({},{})", self.n, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("position k = {k} is outside 2..={max} for a state of width {width}")]
    Position { k: usize, max: usize, width: usize },
    #[error("a cup needs a state of width at least 3, got {0}")]
    TooNarrow(usize),
    #[error("encirclement needs the outer intervals to share a region")]
    NotInU,
    #[error("generator {gen} expects width {expected}, got {got}")]
    Width {
        gen: Generator,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at generator {position}: {source}")]
pub struct EvalError {
    /// 1-based index into the word.
    pub position: usize,
    pub source: OpError,
}

/// The representation over a fixed lattice-ordered monoid.
pub struct Representation<'m, M> {
    monoid: &'m M,
}

type State<M> = TangleState<<M as LatticeMonoid>::Value>;

impl<'m, M: LatticeMonoid> Representation<'m, M> {
    pub fn new(monoid: &'m M) -> Self {
        Representation { monoid }
    }

    pub fn monoid(&self) -> &'m M {
        self.monoid
    }

    /// `T̂_{n,k}`: `R' = B R Bᵗ + D_k`, `v' = B * v`.
    pub fn cap(&self, s: &State<M>, k: usize) -> Result<State<M>, OpError> {
        let n = s.width();
        if !(2..=n + 1).contains(&k) {
            return Err(OpError::Position {
                k,
                max: n + 1,
                width: n,
            });
        }
        let b = cap_connectivity(n, k)?;
        let r = (&(&b * s.relation()) * &b.transpose()).add(&unit_diagonal(n + 2, k)?)?;
        let v = act(self.monoid, &b, s.values())?;
        Ok(self.checked(r, v))
    }

    /// The value a cup at `k` injects into the merged interval: `φ(v_k)`
    /// when intervals `k-1` and `k+1` already share a region, otherwise
    /// `v_{k-1} ∧ v_{k+1}`.
    pub fn cup_value(&self, s: &State<M>, k: usize) -> Result<M::Value, OpError> {
        let w = s.width();
        if w < 3 {
            return Err(OpError::TooNarrow(w));
        }
        if !(2..=w - 1).contains(&k) {
            return Err(OpError::Position {
                k,
                max: w - 1,
                width: w,
            });
        }
        let v = s.values();
        if s.linked(k - 1, k + 1) {
            Ok(self.monoid.phi(&v[k - 1])?)
        } else {
            Ok(self.monoid.meet(&v[k - 2], &v[k]))
        }
    }

    /// `Ť_{n,k}`: `R' = (Bᵗ R B)²`,
    /// `v' = R' * [(Bᵗ * v) ⊕ (e_{k-1} * x_k)]`.
    pub fn cup(&self, s: &State<M>, k: usize) -> Result<State<M>, OpError> {
        let x = self.cup_value(s, k)?;
        let n = s.width() - 2;
        let b = cap_connectivity(n, k)?;
        let bt = b.transpose();
        let inner = &(&bt * s.relation()) * &b;
        let r = &inner * &inner;
        let mut injected = vec![self.monoid.zero(); n];
        injected[k - 2] = x;
        let pulled = act(self.monoid, &bt, s.values())?;
        let v = act(self.monoid, &r, &oplus_arrays(self.monoid, &pulled, &injected))?;
        Ok(self.checked(r, v))
    }

    /// Reflection left to right: `(S R S, S * v)`.
    pub fn mirror(&self, s: &State<M>) -> State<M> {
        let sm = reversal(s.width());
        let r = &(&sm * s.relation()) * &sm;
        let v = s.values().iter().rev().cloned().collect();
        self.checked(r, v)
    }

    /// Adds `x` to the region of the first interval:
    /// `(R, R * (e_1 * x ⊕ v))`.
    pub fn mark_first_region(&self, s: &State<M>, x: &M::Value) -> State<M> {
        let mut v = s.values().to_vec();
        if let Some(first) = v.first_mut() {
            *first = self.monoid.oplus(x, first);
        }
        let v = act(self.monoid, s.relation(), &v).expect("square relation");
        self.checked(s.relation().clone(), v)
    }

    /// Surrounds the state with a new pair of outer intervals sharing one
    /// region: `(E R Eᵗ + F, E * v)`. Needs `r_{1,n} = 1`.
    pub fn encircle_state(&self, s: &State<M>) -> Result<State<M>, OpError> {
        if !s.in_u() {
            return Err(OpError::NotInU);
        }
        let n = s.width();
        let e = shift_embedding(n);
        let r = (&(&e * s.relation()) * &e.transpose()).add(&corner_block(n + 2)?)?;
        let v = act(self.monoid, &e, s.values())?;
        Ok(self.checked(r, v))
    }

    pub fn apply(&self, s: &State<M>, g: Generator) -> Result<State<M>, OpError> {
        if s.width() != g.input_width() {
            return Err(OpError::Width {
                gen: g,
                expected: g.input_width(),
                got: s.width(),
            });
        }
        match g.kind {
            Kind::Cap => self.cap(s, g.k),
            Kind::Cup => self.cup(s, g.k),
        }
    }

    /// Evaluates a word, applying its last generator first.
    pub fn eval_word(&self, word: &[Generator], start: &State<M>) -> Result<State<M>, EvalError> {
        let mut s = start.clone();
        for (i, g) in word.iter().enumerate().rev() {
            s = self.apply(&s, *g).map_err(|source| EvalError {
                position: i + 1,
                source,
            })?;
        }
        Ok(s)
    }

    /// Like [`eval_word`](Self::eval_word), returning every intermediate
    /// state tagged with the 1-based position of the generator that
    /// produced it.
    pub fn eval_steps(
        &self,
        word: &[Generator],
        start: &State<M>,
    ) -> Result<Vec<(usize, State<M>)>, EvalError> {
        let mut out = Vec::with_capacity(word.len());
        let mut s = start.clone();
        for (i, g) in word.iter().enumerate().rev() {
            s = self.apply(&s, *g).map_err(|source| EvalError {
                position: i + 1,
                source,
            })?;
            out.push((i + 1, s.clone()));
        }
        Ok(out)
    }

    fn checked(&self, r: crate::boolmat::BitMatrix, v: Vec<M::Value>) -> State<M> {
        debug_assert!(
            TangleState::validate(r.clone(), v.clone(), self.monoid).is_ok(),
            "operator produced an invalid state:\n{r}"
        );
        TangleState::from_parts(r, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolmat::BitMatrix;
    use crate::lomonoid::{CountMonoid, PrimeMonoid};
    use num_bigint::BigUint;

    fn m(s: &str) -> BitMatrix {
        s.parse().unwrap()
    }

    fn count_state(r: &str, v: Vec<u64>) -> TangleState<u64> {
        TangleState::validate(m(r), v, &CountMonoid).unwrap()
    }

    #[test]
    fn cap_on_trivial() {
        let rep = Representation::new(&CountMonoid);
        let s = rep.cap(&TangleState::trivial(&CountMonoid), 2).unwrap();
        assert_eq!(s.relation(), &m("101/010/101"));
        assert_eq!(s.values(), &[0, 0, 0]);
    }

    #[test]
    fn cap_on_identity() {
        let rep = Representation::new(&CountMonoid);
        let s = rep.cap(&count_state("100/010/001", vec![3, 5, 7]), 2).unwrap();
        assert_eq!(s.relation(), &m("10100/01000/10100/00010/00001"));
        assert_eq!(s.values(), &[3, 0, 3, 5, 7]);
    }

    #[test]
    fn cup_value_branches() {
        let rep = Representation::new(&CountMonoid);
        let circle = count_state("101/010/101", vec![0, 4, 0]);
        assert_eq!(rep.cup_value(&circle, 2).unwrap(), 5);
        let open = count_state("100/010/001", vec![3, 5, 7]);
        assert_eq!(rep.cup_value(&open, 2).unwrap(), 3);
        assert!(rep.cup_value(&open, 1).is_err());
        assert!(rep.cup_value(&open, 3).is_err());
    }

    #[test]
    fn cup_closes_a_circle() {
        let rep = Representation::new(&CountMonoid);
        let s = rep.cup(&count_state("101/010/101", vec![0, 4, 0]), 2).unwrap();
        assert_eq!(s.relation(), &m("1"));
        assert_eq!(s.values(), &[5]);
        let s = rep.cup(&count_state("100/010/001", vec![3, 5, 7]), 2).unwrap();
        assert_eq!(s.values(), &[10]);
    }

    #[test]
    fn cup_range() {
        let rep = Representation::new(&CountMonoid);
        assert!(matches!(
            rep.cup(&TangleState::trivial(&CountMonoid), 2),
            Err(OpError::TooNarrow(1))
        ));
        assert!(rep.cup(&TangleState::identity(5, &CountMonoid), 4).is_ok());
        assert!(rep.cup(&TangleState::identity(5, &CountMonoid), 5).is_err());
    }

    #[test]
    fn mirror_is_an_involution() {
        let rep = Representation::new(&CountMonoid);
        let s = count_state("10100/01000/10100/00010/00001", vec![3, 0, 3, 5, 7]);
        let once = rep.mirror(&s);
        assert_eq!(once.values(), &[7, 5, 3, 0, 3]);
        assert_eq!(rep.mirror(&once), s);
        let t = TangleState::trivial(&CountMonoid);
        assert_eq!(rep.mirror(&t), t);
    }

    #[test]
    fn marking_regions() {
        let rep = Representation::new(&CountMonoid);
        let t = TangleState::trivial(&CountMonoid);
        assert_eq!(rep.mark_first_region(&t, &4).values(), &[4]);
        let s = count_state("10100/01000/10100/00010/00001", vec![3, 0, 3, 5, 7]);
        assert_eq!(rep.mark_first_region(&s, &0), s);
        assert_eq!(rep.mark_first_region(&s, &2).values(), &[5, 0, 5, 5, 7]);
    }

    #[test]
    fn encircling() {
        let rep = Representation::new(&CountMonoid);
        let s = rep.encircle_state(&TangleState::trivial(&CountMonoid)).unwrap();
        assert_eq!(s.relation(), &m("101/010/101"));
        assert_eq!(s.values(), &[0, 0, 0]);
        let s = rep.encircle_state(&count_state("1", vec![6])).unwrap();
        assert_eq!(s.values(), &[0, 6, 0]);
        assert!(rep.encircle_state(&TangleState::identity(3, &CountMonoid)).is_err());
    }

    #[test]
    fn shift_keeps_kind() {
        let g = Generator::cap(1, 2).unwrap().shifted();
        assert_eq!(g, Generator::cap(3, 3).unwrap());
        let g = Generator::cup(3, 4).unwrap().shifted();
        assert_eq!(g, Generator::cup(5, 5).unwrap());
    }

    #[test]
    fn generator_ranges() {
        assert!(Generator::cap(0, 2).is_err());
        assert!(Generator::cap(3, 1).is_err());
        assert!(Generator::cap(3, 5).is_err());
        let g = Generator::cup(3, 4).unwrap();
        assert_eq!((g.input_width(), g.output_width()), (5, 3));
        assert_eq!((g.top_points(), g.bottom_points()), (4, 2));
        assert_eq!(g.to_string(), "U(3,4)");
    }

    #[test]
    fn circle_word() {
        let word = [Generator::cup(1, 2).unwrap(), Generator::cap(1, 2).unwrap()];
        let count = Representation::new(&CountMonoid)
            .eval_word(&word, &TangleState::trivial(&CountMonoid))
            .unwrap();
        assert_eq!(count.values(), &[1]);
        let prime = Representation::new(&PrimeMonoid)
            .eval_word(&word, &TangleState::trivial(&PrimeMonoid))
            .unwrap();
        assert_eq!(prime.values(), &[BigUint::from(2u32)]);
        let t = TangleState::trivial(&CountMonoid);
        assert_eq!(Representation::new(&CountMonoid).eval_word(&[], &t).unwrap(), t);
    }

    #[test]
    fn arity_errors_carry_positions() {
        let word = [Generator::cup(3, 2).unwrap(), Generator::cap(1, 2).unwrap()];
        let err = Representation::new(&CountMonoid)
            .eval_word(&word, &TangleState::trivial(&CountMonoid))
            .unwrap_err();
        assert_eq!(err.position, 1);
    }
}
