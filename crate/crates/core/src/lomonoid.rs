//! Lattice-ordered additive monoids and the Boolean actions on them.
//!
//! A lattice-ordered monoid carries a commutative monoid `(⊕, ∅)` and a
//! distributive lattice `(∨, ∧)` with minimum `∅`, with `⊕` distributing
//! over both lattice operations. Each instance also fixes the function `φ`
//! applied to the value of a region when a cup seals it off.
//!
//! Three instances ship with the crate:
//!
//! | instance | values | `⊕` | `∨` | `∧` | `∅` | `φ` |
//! |---|---|---|---|---|---|---|
//! | [`CountMonoid`] | `0, 1, 2, …` | `+` | `max` | `min` | `0` | `n ↦ n + 1` |
//! | [`PrimeMonoid`] | `1, 2, 3, …` | `×` | `lcm` | `gcd` | `1` | `n ↦ p_n` |
//! | [`FiniteLattice`] | table elements | `∨` | `∨` | `∧` | bottom | table |
//!
//! The order is never stored: `a ≤ b` iff `a ∨ b = b`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use thiserror::Error;

use crate::boolmat::BitMatrix;
use crate::primes::{self, PrimeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error("phi overflowed at {0}")]
    Overflow(String),
    #[error("array of length {len} cannot be acted on by a {rows}x{cols} matrix")]
    Dimension { rows: usize, cols: usize, len: usize },
    #[error("cannot parse {input:?} as a {monoid} value")]
    Parse { monoid: String, input: String },
}

pub trait LatticeMonoid {
    type Value: Clone + Eq + Hash + Debug;

    fn name(&self) -> &str;
    fn zero(&self) -> Self::Value;
    fn oplus(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn join(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn meet(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    /// The region-closure function of the representation.
    fn phi(&self, a: &Self::Value) -> Result<Self::Value, MonoidError>;
    fn render(&self, a: &Self::Value) -> String;
    fn parse_value(&self, s: &str) -> Result<Self::Value, MonoidError>;

    /// Small values, suitable for marking regions of random states without
    /// pushing `φ` out of its supported range.
    fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Value;

    /// Values spread over the instance's law-testing range.
    fn random_law_value<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Value {
        self.random_value(rng)
    }

    fn leq(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.join(a, b) == *b
    }
}

/// Non-negative integers under `+`, `max`, `min`; `φ` is the successor.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountMonoid;

impl LatticeMonoid for CountMonoid {
    type Value = u64;

    fn name(&self) -> &str {
        "count"
    }
    fn zero(&self) -> u64 {
        0
    }
    fn oplus(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }
    fn join(&self, a: &u64, b: &u64) -> u64 {
        *a.max(b)
    }
    fn meet(&self, a: &u64, b: &u64) -> u64 {
        *a.min(b)
    }
    fn phi(&self, a: &u64) -> Result<u64, MonoidError> {
        a.checked_add(1)
            .ok_or_else(|| MonoidError::Overflow(a.to_string()))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_value(&self, s: &str) -> Result<u64, MonoidError> {
        s.trim().parse().map_err(|_| MonoidError::Parse {
            monoid: "count".into(),
            input: s.into(),
        })
    }
    fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..=6)
    }
    fn random_law_value<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..=1_000_000)
    }
}

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

/// Positive integers under `×`, `lcm`, `gcd`; `φ(n)` is the `n`-th prime.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrimeMonoid;

impl LatticeMonoid for PrimeMonoid {
    type Value = BigUint;

    fn name(&self) -> &str {
        "prime"
    }
    fn zero(&self) -> BigUint {
        BigUint::one()
    }
    fn oplus(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }
    fn join(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a.lcm(b)
    }
    fn meet(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a.gcd(b)
    }
    fn phi(&self, a: &BigUint) -> Result<BigUint, MonoidError> {
        let n = a
            .to_usize()
            .ok_or_else(|| PrimeError::OutOfRange(a.to_u128().unwrap_or(u128::MAX)))?;
        Ok(BigUint::from(primes::nth_prime(n)?))
    }
    fn render(&self, a: &BigUint) -> String {
        a.to_string()
    }
    fn parse_value(&self, s: &str) -> Result<BigUint, MonoidError> {
        match s.trim().parse::<BigUint>() {
            Ok(v) if v >= BigUint::one() => Ok(v),
            _ => Err(MonoidError::Parse {
                monoid: "prime".into(),
                input: s.into(),
            }),
        }
    }
    fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        let factors = rng.gen_range(0..=2);
        (0..factors).fold(BigUint::one(), |acc, _| {
            acc * SMALL_PRIMES[rng.gen_range(0..4)]
        })
    }
    fn random_law_value<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        let factors = rng.gen_range(0..=6);
        (0..factors).fold(BigUint::one(), |acc, _| {
            acc * SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())]
        })
    }
}

/// An element of a [`FiniteLattice`], indexing its element table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeElem(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the lattice needs at least one element")]
    Empty,
    #[error("order relation mentions element {0}, which does not exist")]
    UnknownElement(usize),
    #[error("order is not antisymmetric: {0} and {1} are mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("{0} and {1} have no least upper bound")]
    NoJoin(String, String),
    #[error("{0} and {1} have no greatest lower bound")]
    NoMeet(String, String),
    #[error("law {law} fails at ({a}, {b}, {c})")]
    Law {
        law: Law,
        a: String,
        b: String,
        c: String,
    },
    #[error("phi table has {got} entries, expected {expected}")]
    PhiTable { got: usize, expected: usize },
}

/// A user-supplied finite distributive lattice with `⊕ = ∨`.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    phi: Vec<usize>,
}

impl FiniteLattice {
    /// Builds the lattice generated by `below` pairs `(a, b)` meaning
    /// `a ≤ b`; the order is the reflexive-transitive closure of those
    /// pairs. The result is checked exhaustively against every law in
    /// [`check_laws`]. `φ` starts as the identity.
    pub fn new(names: Vec<String>, below: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut rel = BitMatrix::identity(n);
        for &(a, b) in below {
            for x in [a, b] {
                if x >= n {
                    return Err(LatticeError::UnknownElement(x));
                }
            }
            rel.set(a, b, true);
        }
        let le = rel.transitive_closure().expect("square by construction");
        for a in 0..n {
            for b in a + 1..n {
                if le.get(a, b) && le.get(b, a) {
                    return Err(LatticeError::NotAntisymmetric(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let upper: Vec<usize> = (0..n).filter(|&c| le.get(a, c) && le.get(b, c)).collect();
                let least = upper
                    .iter()
                    .copied()
                    .find(|&c| upper.iter().all(|&u| le.get(c, u)))
                    .ok_or_else(|| LatticeError::NoJoin(names[a].clone(), names[b].clone()))?;
                let lower: Vec<usize> = (0..n).filter(|&c| le.get(c, a) && le.get(c, b)).collect();
                let greatest = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&l| le.get(l, c)))
                    .ok_or_else(|| LatticeError::NoMeet(names[a].clone(), names[b].clone()))?;
                join[a][b] = least;
                meet[a][b] = greatest;
            }
        }
        // A finite lattice always has a minimum: the meet of everything.
        let bottom = (0..n).fold(0, |acc, x| meet[acc][x]);
        let lattice = FiniteLattice {
            names,
            join,
            meet,
            bottom,
            phi: (0..n).collect(),
        };
        let elems: Vec<LatticeElem> = (0..n).map(LatticeElem).collect();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    if let Err(law) = check_laws(&lattice, a, b, c) {
                        return Err(LatticeError::Law {
                            law,
                            a: lattice.render(a),
                            b: lattice.render(b),
                            c: lattice.render(c),
                        });
                    }
                }
            }
        }
        Ok(lattice)
    }

    /// The chain `0 < 1 < … < len-1`.
    pub fn chain(len: usize) -> Result<Self, LatticeError> {
        let names = (0..len).map(|i| i.to_string()).collect();
        let below: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Self::new(names, &below)
    }

    /// The four-element Boolean lattice `bot < a, b < top`.
    pub fn diamond() -> Self {
        Self::new(
            ["bot", "a", "b", "top"].map(String::from).to_vec(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .expect("the diamond is distributive")
    }

    /// Replaces `φ` by a lookup table indexed by element.
    pub fn with_phi(mut self, table: Vec<usize>) -> Result<Self, LatticeError> {
        let n = self.names.len();
        if table.len() != n {
            return Err(LatticeError::PhiTable {
                got: table.len(),
                expected: n,
            });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(LatticeError::UnknownElement(bad));
        }
        self.phi = table;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = LatticeElem> {
        (0..self.names.len()).map(LatticeElem)
    }

    pub fn element(&self, name: &str) -> Option<LatticeElem> {
        self.names.iter().position(|n| n == name).map(LatticeElem)
    }
}

impl LatticeMonoid for FiniteLattice {
    type Value = LatticeElem;

    fn name(&self) -> &str {
        "lattice"
    }
    fn zero(&self) -> LatticeElem {
        LatticeElem(self.bottom)
    }
    fn oplus(&self, a: &LatticeElem, b: &LatticeElem) -> LatticeElem {
        self.join(a, b)
    }
    fn join(&self, a: &LatticeElem, b: &LatticeElem) -> LatticeElem {
        LatticeElem(self.join[a.0][b.0])
    }
    fn meet(&self, a: &LatticeElem, b: &LatticeElem) -> LatticeElem {
        LatticeElem(self.meet[a.0][b.0])
    }
    fn phi(&self, a: &LatticeElem) -> Result<LatticeElem, MonoidError> {
        Ok(LatticeElem(self.phi[a.0]))
    }
    fn render(&self, a: &LatticeElem) -> String {
        self.names[a.0].clone()
    }
    fn parse_value(&self, s: &str) -> Result<LatticeElem, MonoidError> {
        self.element(s.trim()).ok_or_else(|| MonoidError::Parse {
            monoid: "lattice".into(),
            input: s.into(),
        })
    }
    fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> LatticeElem {
        LatticeElem(rng.gen_range(0..self.names.len()))
    }
}

/// Wraps an instance, replacing its `φ`. Intended for tests that need a
/// representation other than the built-in ones.
pub struct PhiOverride<M, F> {
    inner: M,
    phi: F,
}

impl<M, F> PhiOverride<M, F>
where
    M: LatticeMonoid,
    F: Fn(&M::Value) -> M::Value,
{
    pub fn new(inner: M, phi: F) -> Self {
        PhiOverride { inner, phi }
    }
}

impl<M, F> LatticeMonoid for PhiOverride<M, F>
where
    M: LatticeMonoid,
    F: Fn(&M::Value) -> M::Value,
{
    type Value = M::Value;

    fn name(&self) -> &str {
        self.inner.name()
    }
    fn zero(&self) -> M::Value {
        self.inner.zero()
    }
    fn oplus(&self, a: &M::Value, b: &M::Value) -> M::Value {
        self.inner.oplus(a, b)
    }
    fn join(&self, a: &M::Value, b: &M::Value) -> M::Value {
        self.inner.join(a, b)
    }
    fn meet(&self, a: &M::Value, b: &M::Value) -> M::Value {
        self.inner.meet(a, b)
    }
    fn phi(&self, a: &M::Value) -> Result<M::Value, MonoidError> {
        Ok((self.phi)(a))
    }
    fn render(&self, a: &M::Value) -> String {
        self.inner.render(a)
    }
    fn parse_value(&self, s: &str) -> Result<M::Value, MonoidError> {
        self.inner.parse_value(s)
    }
    fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> M::Value {
        self.inner.random_value(rng)
    }
    fn random_law_value<R: Rng + ?Sized>(&self, rng: &mut R) -> M::Value {
        self.inner.random_law_value(rng)
    }
}

/// The laws every instance must satisfy, plus the derived properties
/// `P1` and `P2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    /// `a ⊕ b = b ⊕ a`
    M1,
    /// `(a ⊕ b) ⊕ c = a ⊕ (b ⊕ c)`
    M2,
    /// `∅ ⊕ a = a`
    M3,
    /// `a ∨ a = a`, `a ∧ a = a`
    L1,
    /// `a ∨ b = b ∨ a`, `a ∧ b = b ∧ a`
    L2,
    /// associativity of `∨` and `∧`
    L3,
    /// `a ∧ (a ∨ b) = a`, `a ∨ (a ∧ b) = a`
    L4,
    /// distributivity of `∧` over `∨` and of `∨` over `∧`
    L5,
    /// `∅ ∨ a = a`, `∅ ∧ a = ∅`
    C1,
    /// `⊕` distributes over `∨` and `∧`
    C2,
    /// `a ≤ a ⊕ b`
    P1,
    /// `(a ∨ b) ⊕ (a ∧ b) = a ⊕ b`
    P2,
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Checks every law on the triple `(a, b, c)` and returns the first that
/// fails.
pub fn check_laws<M: LatticeMonoid>(
    m: &M,
    a: &M::Value,
    b: &M::Value,
    c: &M::Value,
) -> Result<(), Law> {
    let z = m.zero();
    let ok = |cond: bool, law: Law| if cond { Ok(()) } else { Err(law) };
    ok(m.oplus(a, b) == m.oplus(b, a), Law::M1)?;
    ok(
        m.oplus(&m.oplus(a, b), c) == m.oplus(a, &m.oplus(b, c)),
        Law::M2,
    )?;
    ok(m.oplus(&z, a) == *a, Law::M3)?;
    ok(m.join(a, a) == *a && m.meet(a, a) == *a, Law::L1)?;
    ok(m.join(a, b) == m.join(b, a) && m.meet(a, b) == m.meet(b, a), Law::L2)?;
    ok(
        m.join(&m.join(a, b), c) == m.join(a, &m.join(b, c))
            && m.meet(&m.meet(a, b), c) == m.meet(a, &m.meet(b, c)),
        Law::L3,
    )?;
    ok(
        m.meet(a, &m.join(a, b)) == *a && m.join(a, &m.meet(a, b)) == *a,
        Law::L4,
    )?;
    ok(
        m.meet(a, &m.join(b, c)) == m.join(&m.meet(a, b), &m.meet(a, c))
            && m.join(a, &m.meet(b, c)) == m.meet(&m.join(a, b), &m.join(a, c)),
        Law::L5,
    )?;
    ok(m.join(&z, a) == *a && m.meet(&z, a) == z, Law::C1)?;
    ok(
        m.oplus(a, &m.join(b, c)) == m.join(&m.oplus(a, b), &m.oplus(a, c))
            && m.oplus(a, &m.meet(b, c)) == m.meet(&m.oplus(a, b), &m.oplus(a, c)),
        Law::C2,
    )?;
    ok(m.leq(a, &m.oplus(a, b)), Law::P1)?;
    ok(
        m.oplus(&m.join(a, b), &m.meet(a, b)) == m.oplus(a, b),
        Law::P2,
    )?;
    Ok(())
}

/// `1 * m = m`, `0 * m = ∅`.
pub fn scalar_act<M: LatticeMonoid>(m: &M, bit: bool, value: &M::Value) -> M::Value {
    if bit {
        value.clone()
    } else {
        m.zero()
    }
}

/// The action of an `r×c` Boolean matrix on a length-`c` array:
/// `b_i = ⋁_j a_{i,j} * x_j`.
pub fn act<M: LatticeMonoid>(
    m: &M,
    a: &BitMatrix,
    x: &[M::Value],
) -> Result<Vec<M::Value>, MonoidError> {
    if a.cols() != x.len() {
        return Err(MonoidError::Dimension {
            rows: a.rows(),
            cols: a.cols(),
            len: x.len(),
        });
    }
    Ok((0..a.rows())
        .map(|i| {
            (0..a.cols())
                .filter(|&j| a.get(i, j))
                .fold(m.zero(), |acc, j| m.join(&acc, &x[j]))
        })
        .collect())
}

/// Coordinatewise `⊕`.
pub fn oplus_arrays<M: LatticeMonoid>(m: &M, x: &[M::Value], y: &[M::Value]) -> Vec<M::Value> {
    assert_eq!(x.len(), y.len(), "oplus of arrays with different lengths");
    x.iter().zip(y).map(|(a, b)| m.oplus(a, b)).collect()
}

/// Coordinatewise `∨`.
pub fn join_arrays<M: LatticeMonoid>(m: &M, x: &[M::Value], y: &[M::Value]) -> Vec<M::Value> {
    assert_eq!(x.len(), y.len(), "join of arrays with different lengths");
    x.iter().zip(y).map(|(a, b)| m.join(a, b)).collect()
}

/// Coordinatewise `≤`.
pub fn leq_arrays<M: LatticeMonoid>(m: &M, x: &[M::Value], y: &[M::Value]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| m.leq(a, b))
}
