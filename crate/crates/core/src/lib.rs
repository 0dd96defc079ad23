//! Non-singular planar tangles through Boolean connectivity matrices
//! acting on arrays of lattice-ordered monoid values.
//!
//! A closed tangle, a system of disjoint circles in the plane, is written
//! as a word of caps and cups. Evaluating the word with the prime-coded
//! monoid yields a complete invariant: two systems are isotopic exactly
//! when their values agree.
//!
//! ```
//! use planar_tangles::invariants::{equivalent, invariant_operator};
//! use planar_tangles::lomonoid::CountMonoid;
//! use planar_tangles::words::{GenWord, Word};
//!
//! let circle: GenWord = "U(1,2);H(1,2)".parse().unwrap();
//! assert_eq!(invariant_operator(&circle, &CountMonoid).unwrap(), 1);
//!
//! let nested: Word = "(-2,0)(-2,0)(2,0)(2,0)".parse().unwrap();
//! let apart: Word = "(-2,0)(2,0)(-2,0)(2,0)".parse().unwrap();
//! assert!(!equivalent(&nested, &apart).unwrap().equivalent);
//! ```

pub mod boolmat;
pub mod cli;
pub mod invariants;
pub mod lomonoid;
pub mod normalize;
pub mod operators;
pub mod oracle;
pub mod primes;
pub mod selftest;
pub mod states;
pub mod words;

pub use boolmat::BitMatrix;
pub use lomonoid::{CountMonoid, FiniteLattice, LatticeMonoid, PrimeMonoid};
pub use normalize::{Forest, Tree};
pub use operators::{Generator, Kind, Representation};
pub use states::TangleState;
pub use words::{GenWord, SymWord, Symbol, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    pub mod words {}
    #[doc = include_str!("../../../book/src/states.md")]
    pub mod states {}
    #[doc = include_str!("../../../book/src/monoids.md")]
    pub mod monoids {}
    #[doc = include_str!("../../../book/src/operators.md")]
    pub mod operators {}
    #[doc = include_str!("../../../book/src/normalization.md")]
    pub mod normalization {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    pub mod invariants {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
