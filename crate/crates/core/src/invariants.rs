//! The value `v(t)` of a closed tangle, computed two independent ways.
//!
//! The operator route evaluates the word on the trivial state and reads
//! the single remaining value. The recursive route walks the nesting
//! forest: side by side systems add with `⊕`, and encircling applies `φ`.
//!
//! With [`PrimeMonoid`] the value is a complete invariant of systems of
//! circles; with [`CountMonoid`] it counts the circles.

use num_bigint::BigUint;
use thiserror::Error;

use crate::lomonoid::{CountMonoid, LatticeMonoid, MonoidError, PrimeMonoid};
use crate::normalize::{normalize, to_forest, Forest, ForestError, NormalizeError};
use crate::operators::{EvalError, OpError, Representation};
use crate::states::TangleState;
use crate::words::{decode, encode, GenWord, SymWord, Word, WordError};

pub use crate::primes::nth_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

impl InvariantError {
    /// The monoid could not represent a value, such as a prime index past
    /// the supported range.
    pub fn is_out_of_range(&self) -> bool {
        matches!(
            self,
            InvariantError::Monoid(_)
                | InvariantError::Eval(EvalError {
                    source: OpError::Monoid(_),
                    ..
                })
        )
    }

    /// A failure of the implementation rather than of the input.
    pub fn is_internal(&self) -> bool {
        match self {
            InvariantError::Normalize(e) => e.is_internal(),
            InvariantError::Forest(_) => true,
            _ => false,
        }
    }
}

/// Both forms of a closed word.
pub fn closed_forms(w: &Word) -> Result<(GenWord, SymWord), WordError> {
    match w {
        Word::Gen(g) => Ok((g.clone(), encode(g)?)),
        Word::Sym(s) => Ok((decode(s)?, s.clone())),
    }
}

/// `v(t)` by evaluating the word on `([1], (∅))`.
pub fn invariant_operator<M: LatticeMonoid>(
    w: &GenWord,
    m: &M,
) -> Result<M::Value, InvariantError> {
    if !w.is_closed() {
        return Err(WordError::Open.into());
    }
    let end = Representation::new(m).eval_word(w, &TangleState::trivial(m))?;
    Ok(end.values()[0].clone())
}

/// `v` of a forest: `⊕` over its trees of `φ` applied to the value of each
/// tree's children. The empty forest has value `∅`.
pub fn invariant_recursive<M: LatticeMonoid>(f: &Forest, m: &M) -> Result<M::Value, MonoidError> {
    f.trees.iter().try_fold(m.zero(), |acc, t| {
        let inner = invariant_recursive(&t.children, m)?;
        Ok(m.oplus(&acc, &m.phi(&inner)?))
    })
}

/// The forest of a symbol word, reached through normalization.
pub fn normal_forest(s: &SymWord, max_steps: usize) -> Result<Forest, InvariantError> {
    let (normal, _) = normalize(s, max_steps)?;
    Ok(to_forest(&normal)?)
}

/// `v(t)` by normalizing and recursing over the resulting forest.
pub fn invariant_normal_form<M: LatticeMonoid>(
    s: &SymWord,
    m: &M,
    max_steps: usize,
) -> Result<M::Value, InvariantError> {
    Ok(invariant_recursive(&normal_forest(s, max_steps)?, m)?)
}

/// Both methods on one word, rendered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub word: String,
    pub monoid: String,
    pub operator: String,
    pub recursive: String,
}

impl InvariantReport {
    pub fn agree(&self) -> bool {
        self.operator == self.recursive
    }
}

pub fn report<M: LatticeMonoid>(
    w: &Word,
    m: &M,
    max_steps: usize,
) -> Result<InvariantReport, InvariantError> {
    let (g, s) = closed_forms(w)?;
    let operator = invariant_operator(&g, m)?;
    let recursive = invariant_normal_form(&s, m, max_steps)?;
    Ok(InvariantReport {
        word: s.to_string(),
        monoid: m.name().to_string(),
        operator: m.render(&operator),
        recursive: m.render(&recursive),
    })
}

/// Whether two closed words describe isotopic systems, judged by the prime
/// invariant alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub left: BigUint,
    pub right: BigUint,
}

pub fn equivalent(a: &Word, b: &Word) -> Result<Equivalence, InvariantError> {
    let (ga, _) = closed_forms(a)?;
    let (gb, _) = closed_forms(b)?;
    let left = invariant_operator(&ga, &PrimeMonoid)?;
    let right = invariant_operator(&gb, &PrimeMonoid)?;
    let eq = left == right;
    #[cfg(debug_assertions)]
    {
        use crate::oracle::trace_diagram;
        let fa = trace_diagram(&ga).expect("closed word");
        let fb = trace_diagram(&gb).expect("closed word");
        debug_assert_eq!(
            eq,
            fa.canonical() == fb.canonical(),
            "prime invariant and forest disagree on {ga} and {gb}"
        );
    }
    Ok(Equivalence {
        equivalent: eq,
        left,
        right,
    })
}

/// Number of circles.
pub fn circle_count(w: &GenWord) -> Result<u64, InvariantError> {
    invariant_operator(w, &CountMonoid)
}
