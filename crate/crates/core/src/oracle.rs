//! Ground truth from geometry: tracing strands through a generator word,
//! canonical forest strings, and exhaustive forest enumeration.
//!
//! The trace sweeps the diagram from the top down. Caps open a pair of
//! strands, cups join two strands with a union-find, and a cup whose two
//! strands already belong to one component closes a curve. Curve `B` lies
//! inside curve `A` when an odd number of `A`'s strands pass to the left of
//! the point where `B` closes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::invariants::invariant_recursive;
use crate::lomonoid::{CountMonoid, MonoidError, PrimeMonoid};
use crate::normalize::{Forest, Tree};
use crate::operators::Kind;
use crate::words::GenWord;

pub const MAX_ENUMERATED_CIRCLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the word is not closed")]
    Open,
    #[error("generator {position} expects {expected} strands, found {found}")]
    Strands {
        position: usize,
        expected: usize,
        found: usize,
    },
    #[error("enumeration supports at most {MAX_ENUMERATED_CIRCLES} circles, got {0}")]
    Range(usize),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

struct Closure {
    strand: usize,
    left: Vec<usize>,
}

/// The nesting forest of a closed generator word.
pub fn trace_diagram(w: &GenWord) -> Result<Forest, OracleError> {
    if !w.is_closed() {
        return Err(OracleError::Open);
    }
    let mut uf = UnionFind(Vec::new());
    let mut live: Vec<usize> = Vec::new();
    let mut closures: Vec<Closure> = Vec::new();
    for (i, g) in w.iter().enumerate().rev() {
        if live.len() != g.top_points() {
            return Err(OracleError::Strands {
                position: i + 1,
                expected: g.top_points(),
                found: live.len(),
            });
        }
        let at = g.k - 2;
        match g.kind {
            Kind::Cap => {
                let (a, b) = (uf.add(), uf.add());
                uf.union(a, b);
                live.splice(at..at, [a, b]);
            }
            Kind::Cup => {
                let (a, b) = (live[at], live[at + 1]);
                if uf.find(a) == uf.find(b) {
                    closures.push(Closure {
                        strand: a,
                        left: live[..at].to_vec(),
                    });
                } else {
                    uf.union(a, b);
                }
                live.drain(at..at + 2);
            }
        }
    }

    let component: Vec<usize> = closures.iter().map(|c| uf.find(c.strand)).collect();
    let curve_of: BTreeMap<usize, usize> = component
        .iter()
        .enumerate()
        .map(|(curve, &comp)| (comp, curve))
        .collect();
    let n = closures.len();
    let mut containers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, c) in closures.iter().enumerate() {
        let mut crossings = vec![0usize; n];
        for &s in &c.left {
            crossings[curve_of[&uf.find(s)]] += 1;
        }
        containers[b] = (0..n).filter(|&a| crossings[a] % 2 == 1).collect();
    }
    let parent: Vec<Option<usize>> = containers
        .iter()
        .map(|cs| cs.iter().copied().max_by_key(|&a| containers[a].len()))
        .collect();
    fn build(node: Option<usize>, parent: &[Option<usize>]) -> Forest {
        Forest::new(
            (0..parent.len())
                .filter(|&c| parent[c] == node)
                .map(|c| Tree {
                    children: build(Some(c), parent),
                })
                .collect(),
        )
    }
    Ok(build(None, &parent))
}

/// Canonical string of a forest; equal strings mean isotopic systems.
pub fn canonical(f: &Forest) -> String {
    f.canonical()
}

/// All balanced parenthesis strings with `pairs` pairs, in lexicographic
/// order.
pub fn dyck_words(pairs: usize) -> Vec<String> {
    fn go(open: usize, close: usize, cur: &mut String, out: &mut Vec<String>) {
        if open == 0 && close == 0 {
            out.push(cur.clone());
            return;
        }
        if open > 0 {
            cur.push('(');
            go(open - 1, close + 1, cur, out);
            cur.pop();
        }
        if close > 0 {
            cur.push(')');
            go(open, close - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pairs, 0, &mut String::new(), &mut out);
    out
}

/// Every unordered forest with exactly `circles` nodes, once each, sorted
/// by canonical string.
pub fn enumerate_forests(circles: usize) -> Result<Vec<Forest>, OracleError> {
    if circles > MAX_ENUMERATED_CIRCLES {
        return Err(OracleError::Range(circles));
    }
    let mut seen = BTreeMap::new();
    for w in dyck_words(circles) {
        let f = Forest::from_parens(&w).expect("balanced").canonicalized();
        seen.entry(f.canonical()).or_insert(f);
    }
    Ok(seen.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub canonical: String,
    pub circles: usize,
    pub prime: BigUint,
    pub count: u64,
}

/// Prime and count invariants of every forest up to a size, with any pair
/// of distinct forests sharing a prime value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub rows: Vec<ReportRow>,
    pub collisions: Vec<(String, String)>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty()
    }
}

impl fmt::Display for CompletenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cw = self
            .rows
            .iter()
            .map(|r| r.canonical.len().max("(empty)".len()))
            .max()
            .unwrap_or(9)
            .max("canonical".len());
        let pw = self
            .rows
            .iter()
            .map(|r| r.prime.to_string().len())
            .max()
            .unwrap_or(0)
            .max("prime".len());
        writeln!(f, "{:<cw$}  {:>pw$}  count", "canonical", "prime")?;
        for r in &self.rows {
            let canon = if r.canonical.is_empty() {
                "(empty)"
            } else {
                &r.canonical
            };
            writeln!(f, "{canon:<cw$}  {:>pw$}  {:>5}", r.prime, r.count)?;
        }
        for (a, b) in &self.collisions {
            writeln!(f, "collision {a} {b}")?;
        }
        write!(
            f,
            "forests {} collisions {} {}",
            self.rows.len(),
            self.collisions.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Computes both invariants for every forest with at most `max_circles`
/// nodes and reports prime-value collisions.
pub fn completeness_report(max_circles: usize) -> Result<CompletenessReport, OracleError> {
    let mut rows = Vec::new();
    for n in 0..=max_circles {
        for forest in enumerate_forests(n)? {
            rows.push(ReportRow {
                canonical: forest.canonical(),
                circles: n,
                prime: invariant_recursive(&forest, &PrimeMonoid)?,
                count: invariant_recursive(&forest, &CountMonoid)?,
            });
        }
    }
    let mut by_value: BTreeMap<&BigUint, &str> = BTreeMap::new();
    let mut collisions = Vec::new();
    for r in &rows {
        if let Some(prev) = by_value.insert(&r.prime, &r.canonical) {
            collisions.push((prev.to_string(), r.canonical.clone()));
        }
    }
    Ok(CompletenessReport { rows, collisions })
}
