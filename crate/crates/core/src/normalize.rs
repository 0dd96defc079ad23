//! Rewriting closed symbol words to words of `(-2,0)` and `(2,0)` only,
//! and the passage between such words and nesting forests.
//!
//! The rewriting follows five steps, each firing at the leftmost match:
//!
//! 1. move every cup left of every cap, rewriting `(2,a)(-2,b)` by `R3.2`
//!    when `a ≤ b` and by `R3.1` backwards otherwise;
//! 2. sort each sign block into non-increasing `d` with `R2` and `R4`;
//! 3. delete a `(-2,k)(2,k+2)` with `R1` and return to step 1;
//! 4. rewrite a `(-2,k)(2,l)` with `k ≤ l-4` by `R3.1` and return to
//!    step 3;
//! 5. output.
//!
//! The normal form is not unique; compare words through their invariants
//! or forests, never by string.

use std::fmt;

use thiserror::Error;

use crate::words::{
    apply_relation, check_condition_c, ConditionCError, Direction, R1Form, Relation, Rewrite,
    RewriteError, Sign, SymWord, Symbol,
};

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// One circle and the circles immediately inside it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Tree {
    pub children: Forest,
}

/// The nesting structure of a system of disjoint circles. Sibling order
/// carries no meaning; compare with [`Forest::canonical`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Forest {
    pub trees: Vec<Tree>,
}

impl Tree {
    pub fn leaf() -> Self {
        Tree::default()
    }

    pub fn with_children(children: Vec<Tree>) -> Self {
        Tree {
            children: Forest { trees: children },
        }
    }

    pub fn canonical(&self) -> String {
        format!("({})", self.children.canonical())
    }
}

impl Forest {
    pub fn empty() -> Self {
        Forest::default()
    }

    pub fn new(trees: Vec<Tree>) -> Self {
        Forest { trees }
    }

    /// Number of circles.
    pub fn node_count(&self) -> usize {
        self.trees.iter().map(|t| 1 + t.children.node_count()).sum()
    }

    /// Number of outermost circles.
    pub fn root_count(&self) -> usize {
        self.trees.len()
    }

    /// Each tree is `(` + its children + `)`, siblings sorted shorter first
    /// and then lexicographically.
    pub fn canonical(&self) -> String {
        let mut parts: Vec<String> = self.trees.iter().map(Tree::canonical).collect();
        parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        parts.concat()
    }

    /// The same forest with siblings in canonical order at every level.
    pub fn canonicalized(&self) -> Forest {
        let mut trees: Vec<(String, Tree)> = self
            .trees
            .iter()
            .map(|t| {
                let t = Tree {
                    children: t.children.canonicalized(),
                };
                (t.canonical(), t)
            })
            .collect();
        trees.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Forest {
            trees: trees.into_iter().map(|(_, t)| t).collect(),
        }
    }

    /// Parses a balanced parenthesis string.
    pub fn from_parens(s: &str) -> Result<Forest, ForestError> {
        let mut stack: Vec<Vec<Tree>> = vec![Vec::new()];
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '(' => stack.push(Vec::new()),
                ')' => {
                    if stack.len() < 2 {
                        return Err(ForestError::Unbalanced(i + 1));
                    }
                    let children = stack.pop().expect("checked");
                    stack
                        .last_mut()
                        .expect("checked")
                        .push(Tree::with_children(children));
                }
                _ => return Err(ForestError::Unbalanced(i + 1)),
            }
        }
        if stack.len() != 1 {
            return Err(ForestError::Unbalanced(s.chars().count()));
        }
        Ok(Forest::new(stack.pop().expect("checked")))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("symbol {0} is not (-2,0) or (2,0)")]
    NotNormal(usize),
    #[error("unbalanced at position {0}")]
    Unbalanced(usize),
}

/// One rewrite of the normalization, with the word after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: u8,
    pub rewrite: Rewrite,
    pub word: SymWord,
    pub potential: (i64, i64),
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.word.is_empty() {
            "(empty)".to_string()
        } else {
            self.word.to_string()
        };
        write!(
            f,
            "step{} {} {} E=({},{})",
            self.step, self.rewrite, word, self.potential.0, self.potential.1
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace(pub Vec<TraceStep>);

impl Trace {
    /// Applies the recorded rewrites to `start` one by one.
    pub fn replay(&self, start: &SymWord) -> Result<SymWord, RewriteError> {
        self.0
            .iter()
            .try_fold(start.clone(), |w, s| apply_relation(&w, s.rewrite))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    ConditionC(#[from] ConditionCError),
    #[error("rewrite limit of {0} reached")]
    StepLimit(usize),
    #[error("potential did not decrease between visits to step 3: {before:?} then {after:?} at {word}")]
    Watchdog {
        before: (i64, i64),
        after: (i64, i64),
        word: SymWord,
    },
    #[error("internal rewrite failed: {0}")]
    Rewrite(#[from] RewriteError),
    #[error("output {0} still has a symbol with non-zero offset")]
    NotNormal(SymWord),
}

impl NormalizeError {
    /// True for failures of the algorithm itself rather than of its input.
    pub fn is_internal(&self) -> bool {
        !matches!(self, NormalizeError::ConditionC(_))
    }
}

struct Runner {
    word: SymWord,
    trace: Vec<TraceStep>,
    max_steps: usize,
}

impl Runner {
    fn fire(
        &mut self,
        step: u8,
        relation: Relation,
        position: usize,
        direction: Direction,
    ) -> Result<(), NormalizeError> {
        if self.trace.len() >= self.max_steps {
            return Err(NormalizeError::StepLimit(self.max_steps));
        }
        let rewrite = Rewrite {
            relation,
            position,
            direction,
        };
        self.word = apply_relation(&self.word, rewrite)?;
        self.trace.push(TraceStep {
            step,
            rewrite,
            word: self.word.clone(),
            potential: potential_e(&self.word),
        });
        Ok(())
    }

    /// 1-based position of the leftmost adjacent pair satisfying `f`.
    fn find(&self, f: impl Fn(Symbol, Symbol) -> bool) -> Option<usize> {
        self.word.windows(2).position(|w| f(w[0], w[1])).map(|i| i + 1)
    }
}

/// Rewrites a condition-C word into `(±2,0)` symbols, recording every
/// rewrite. Fails if more than `max_steps` rewrites are needed or the
/// termination potential stops decreasing.
pub fn normalize(s: &SymWord, max_steps: usize) -> Result<(SymWord, Trace), NormalizeError> {
    check_condition_c(s)?;
    let mut run = Runner {
        word: s.clone(),
        trace: Vec::new(),
        max_steps,
    };
    'restart: loop {
        while let Some(p) = run.find(|x, y| x.is_cap() && y.is_cup()) {
            let (a, b) = (run.word[p - 1].d(), run.word[p].d());
            if a <= b {
                run.fire(1, Relation::R32, p, Direction::Forward)?;
            } else {
                run.fire(1, Relation::R31, p, Direction::Backward)?;
            }
        }
        while let Some(p) = run.find(|x, y| x.sign() == y.sign() && x.d() < y.d()) {
            let relation = match run.word[p - 1].sign() {
                Sign::Plus => Relation::R2,
                Sign::Minus => Relation::R4,
            };
            run.fire(2, relation, p, Direction::Forward)?;
        }
        let mut last: Option<(i64, i64)> = None;
        loop {
            let e = potential_e(&run.word);
            if let Some(before) = last {
                if e >= before {
                    return Err(NormalizeError::Watchdog {
                        before,
                        after: e,
                        word: run.word.clone(),
                    });
                }
            }
            last = Some(e);
            if let Some(p) = run.find(|x, y| x.is_cup() && y.is_cap() && y.d() == x.d() + 2) {
                let k = run.word[p - 1].d();
                let relation = Relation::R1 {
                    form: R1Form::Rising,
                    k,
                };
                run.fire(3, relation, p, Direction::Forward)?;
                continue 'restart;
            }
            if let Some(p) = run.find(|x, y| x.is_cup() && y.is_cap() && x.d() <= y.d() - 4) {
                run.fire(4, Relation::R31, p, Direction::Forward)?;
                continue;
            }
            break 'restart;
        }
    }
    if !run.word.is_normal() {
        return Err(NormalizeError::NotNormal(run.word));
    }
    Ok((run.word, Trace(run.trace)))
}

/// `(Σ_{c_i=2} i, Σ_{c_i=-2} d_i - Σ_{c_i=2} d_i)`, ordered
/// lexicographically.
pub fn potential_e(s: &SymWord) -> (i64, i64) {
    let mut first = 0;
    let mut second = 0;
    for (i, sym) in s.iter().enumerate() {
        if sym.is_cap() {
            first += i as i64 + 1;
            second -= sym.d();
        } else {
            second += sym.d();
        }
    }
    (first, second)
}

/// The largest `d_next - d_prev - 2(gap - 1)` over consecutive symbols of
/// the same sign, where `gap` is their index distance. `None` when neither
/// sign occurs twice.
pub fn potential_e2(s: &SymWord) -> Option<i64> {
    let mut best: Option<i64> = None;
    for sign in [Sign::Plus, Sign::Minus] {
        let idx: Vec<usize> = (0..s.len()).filter(|&i| s[i].sign() == sign).collect();
        for w in idx.windows(2) {
            let (p, q) = (w[0], w[1]);
            let gap = s[q].d() - s[p].d() - 2 * (q as i64 - p as i64 - 1);
            best = Some(best.map_or(gap, |b| b.max(gap)));
        }
    }
    best
}

/// Splits a normal word at every point where the running sum returns to
/// zero.
pub fn factorize(s: &SymWord) -> Result<Vec<SymWord>, ForestError> {
    check_normal(s)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut depth = 0i64;
    for (i, sym) in s.iter().enumerate() {
        depth -= sym.c();
        if depth < 0 {
            return Err(ForestError::Unbalanced(i + 1));
        }
        current.push(*sym);
        if depth == 0 {
            out.push(SymWord::new(std::mem::take(&mut current)));
        }
    }
    if depth != 0 {
        return Err(ForestError::Unbalanced(s.len()));
    }
    Ok(out)
}

/// Prepends `(-2,0)` and appends `(2,0)`.
pub fn encircle(s: &SymWord) -> SymWord {
    let mut v = vec![Symbol::cup(0)];
    v.extend_from_slice(s);
    v.push(Symbol::cap(0));
    SymWord::new(v)
}

fn check_normal(s: &SymWord) -> Result<(), ForestError> {
    match s.iter().position(|x| x.d() != 0) {
        Some(i) => Err(ForestError::NotNormal(i + 1)),
        None => Ok(()),
    }
}

/// Reads `(-2,0)` as an opening and `(2,0)` as a closing parenthesis.
pub fn to_forest(s: &SymWord) -> Result<Forest, ForestError> {
    check_normal(s)?;
    let parens: String = s
        .iter()
        .map(|x| if x.is_cup() { '(' } else { ')' })
        .collect();
    Forest::from_parens(&parens)
}

/// The normal word of a forest, siblings in canonical order.
pub fn from_forest(f: &Forest) -> SymWord {
    SymWord::new(
        f.canonical()
            .chars()
            .map(|c| if c == '(' { Symbol::cup(0) } else { Symbol::cap(0) })
            .collect(),
    )
}
