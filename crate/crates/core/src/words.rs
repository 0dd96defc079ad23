//! Tangle words: generator sequences, the `(±2, d)` symbol codec for closed
//! tangles, condition C, and the local relations as positional rewrites.
//!
//! Both word forms list generators bottom first: symbol 1 is the lowest
//! piece of the diagram. Positions in errors and rewrites are 1-based.
//!
//! Two text syntaxes are accepted and told apart by their first character:
//!
//! * generator form, `U(1,2);H(1,2)`, where `U` is a cup and `H` a cap;
//! * symbol form, `(-2,0)(2,0)`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::operators::{Generator, GeneratorError, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// `c = -2`, a cup.
    Minus,
    /// `c = 2`, a cap.
    Plus,
}

/// One `(c, d)` pair: `c = ±2` and `d` even, the strand count to the left
/// of the generator minus the count to its right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    sign: Sign,
    d: i64,
}

impl Symbol {
    pub fn new(sign: Sign, d: i64) -> Result<Self, WordError> {
        if d % 2 != 0 {
            return Err(WordError::OddOffset(d));
        }
        Ok(Symbol { sign, d })
    }

    pub fn cap(d: i64) -> Self {
        Self::new(Sign::Plus, d).expect("even offset")
    }

    pub fn cup(d: i64) -> Self {
        Self::new(Sign::Minus, d).expect("even offset")
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn c(&self) -> i64 {
        match self.sign {
            Sign::Plus => 2,
            Sign::Minus => -2,
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_cap(&self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn is_cup(&self) -> bool {
        self.sign == Sign::Minus
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c(), self.d)
    }
}

/// A sequence of symbols. Condition C is not enforced on construction;
/// see [`check_condition_c`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymWord(Vec<Symbol>);

impl SymWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        SymWord(symbols)
    }

    pub fn empty() -> Self {
        SymWord(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    /// `self` below `other`.
    pub fn concat(&self, other: &SymWord) -> SymWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SymWord(v)
    }

    /// Only `(-2,0)` and `(2,0)` symbols.
    pub fn is_normal(&self) -> bool {
        self.0.iter().all(|s| s.d == 0)
    }

    /// Strand count below symbol `i` (1-based): `-Σ_{j<i} c_j`.
    pub fn points_below(&self, i: usize) -> i64 {
        -self.0[..i - 1].iter().map(Symbol::c).sum::<i64>()
    }

    /// Strand count above symbol `i` (1-based): `Σ_{j>i} c_j`.
    pub fn points_above(&self, i: usize) -> i64 {
        self.0[i..].iter().map(Symbol::c).sum()
    }
}

impl Deref for SymWord {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A generator sequence whose arities chain: each generator's top point
/// count equals the bottom point count of the generator after it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GenWord(Vec<Generator>);

impl GenWord {
    pub fn new(gens: Vec<Generator>) -> Result<Self, WordError> {
        for i in 1..gens.len() {
            if gens[i - 1].input_width() != gens[i].output_width() {
                return Err(WordError::Arity {
                    position: i + 1,
                    below: gens[i - 1],
                    above: gens[i],
                });
            }
        }
        Ok(GenWord(gens))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    /// Width consumed by the topmost generator, or `None` when empty.
    pub fn input_width(&self) -> Option<usize> {
        self.0.last().map(Generator::input_width)
    }

    /// Width produced by the bottom generator, or `None` when empty.
    pub fn output_width(&self) -> Option<usize> {
        self.0.first().map(Generator::output_width)
    }

    /// No free points at either end.
    pub fn is_closed(&self) -> bool {
        self.0.is_empty() || (self.input_width() == Some(1) && self.output_width() == Some(1))
    }

    pub fn shifted(&self) -> GenWord {
        GenWord(self.0.iter().map(Generator::shifted).collect())
    }

    /// `ť_{1,2} ∘ F(w) ∘ t̂_{1,2}`: the closed word surrounded by a circle.
    pub fn encircled(&self) -> Result<GenWord, WordError> {
        if !self.is_closed() {
            return Err(WordError::Open);
        }
        let mut v = vec![Generator::cup(1, 2).expect("in range")];
        v.extend(self.shifted().0);
        v.push(Generator::cap(1, 2).expect("in range"));
        GenWord::new(v)
    }
}

impl Deref for GenWord {
    type Target = [Generator];
    fn deref(&self) -> &[Generator] {
        &self.0
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("offset {0} is odd")]
    OddOffset(i64),
    #[error("generator {position} ({above}) does not fit on top of {below}")]
    Arity {
        position: usize,
        below: Generator,
        above: Generator,
    },
    #[error("the word is not closed")]
    Open,
    #[error(transparent)]
    ConditionC(#[from] ConditionCError),
}

/// The first index where condition C fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("condition C fails at symbol {index} {symbol}: {}", bound_text(*.bound))]
pub struct ConditionCError {
    pub index: usize,
    pub symbol: Symbol,
    pub bound: i64,
}

fn bound_text(bound: i64) -> String {
    if bound < 0 {
        "too few strands for a symbol at this height".into()
    } else {
        format!("|d| must be at most {bound}")
    }
}

/// Condition C: for a cap `|d| ≤ -(Σ_{j<i} c_j) - 2 = Σ_{j>i} c_j`, and for
/// a cup `|d| ≤ -Σ_{j<i} c_j = (Σ_{j>i} c_j) - 2`. Both forms are checked,
/// so a word passing the check is closed.
pub fn check_condition_c(s: &SymWord) -> Result<(), ConditionCError> {
    let total: i64 = s.iter().map(Symbol::c).sum();
    let mut before = 0i64;
    for (i, sym) in s.iter().enumerate() {
        let after = total - before - sym.c();
        let (prefix, suffix) = match sym.sign {
            Sign::Plus => (-before - 2, after),
            Sign::Minus => (-before, after - 2),
        };
        let bound = prefix.min(suffix);
        if sym.d.abs() > bound {
            return Err(ConditionCError {
                index: i + 1,
                symbol: *sym,
                bound,
            });
        }
        before += sym.c();
    }
    Ok(())
}

/// `t̂_{n,k} ↦ (2, 2k-n-3)`, `ť_{n,k} ↦ (-2, 2k-n-3)`.
pub fn encode(w: &GenWord) -> Result<SymWord, WordError> {
    if !w.is_closed() {
        return Err(WordError::Open);
    }
    Ok(SymWord(
        w.iter()
            .map(|g| {
                let d = 2 * g.k as i64 - g.n as i64 - 3;
                match g.kind {
                    Kind::Cap => Symbol::cap(d),
                    Kind::Cup => Symbol::cup(d),
                }
            })
            .collect(),
    ))
}

/// The unique generator word with the given symbols.
pub fn decode(s: &SymWord) -> Result<GenWord, ConditionCError> {
    check_condition_c(s)?;
    let mut above: i64 = 0;
    let mut gens = Vec::with_capacity(s.len());
    for sym in s.iter().rev() {
        let n = match sym.sign {
            Sign::Plus => above + 1,
            Sign::Minus => above - 1,
        };
        let k = (sym.d + n + 3) / 2;
        let kind = match sym.sign {
            Sign::Plus => Kind::Cap,
            Sign::Minus => Kind::Cup,
        };
        gens.push(Generator::new(kind, n as usize, k as usize).expect("condition C holds"));
        above += sym.c();
    }
    gens.reverse();
    Ok(GenWord::new(gens).expect("condition C words chain"))
}

/// A parsed word in whichever syntax it was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Gen(GenWord),
    Sym(SymWord),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {position}: {message}")]
pub struct ParseError {
    /// 1-based token index.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let text = text.trim();
        match text.chars().next() {
            None => Ok(Word::Sym(SymWord::empty())),
            Some('(') => parse_symbols(text).map(Word::Sym),
            Some(c) if c.is_ascii_alphabetic() => parse_generators(text).map(Word::Gen),
            Some(c) => Err(ParseError::at(1, format!("unexpected character {c:?}"))),
        }
    }
}

impl FromStr for SymWord {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse_symbols(text.trim())
    }
}

impl FromStr for GenWord {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse_generators(text.trim())
    }
}

fn parse_pair(body: &str, position: usize) -> Result<(i64, i64), ParseError> {
    let (a, b) = body
        .split_once(',')
        .ok_or_else(|| ParseError::at(position, "expected two comma-separated integers"))?;
    let num = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| ParseError::at(position, format!("{:?} is not an integer", s.trim())))
    };
    Ok((num(a)?, num(b)?))
}

fn parse_symbols(text: &str) -> Result<SymWord, ParseError> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut position = 0;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            return Ok(SymWord(out));
        }
        position += 1;
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| ParseError::at(position, "expected '('"))?;
        let close = body
            .find(')')
            .ok_or_else(|| ParseError::at(position, "missing ')'"))?;
        let (c, d) = parse_pair(&body[..close], position)?;
        let sign = match c {
            2 => Sign::Plus,
            -2 => Sign::Minus,
            _ => return Err(ParseError::at(position, format!("c must be 2 or -2, got {c}"))),
        };
        out.push(Symbol::new(sign, d).map_err(|e| ParseError::at(position, e.to_string()))?);
        rest = &body[close + 1..];
    }
}

fn parse_generators(text: &str) -> Result<GenWord, ParseError> {
    let mut gens = Vec::new();
    for (i, token) in text.split(';').enumerate() {
        let position = i + 1;
        let token = token.trim();
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('U') | Some('u') => Kind::Cup,
            Some('H') | Some('h') => Kind::Cap,
            _ => return Err(ParseError::at(position, "expected U(n,k) or H(n,k)")),
        };
        let body = chars
            .as_str()
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| ParseError::at(position, "expected U(n,k) or H(n,k)"))?;
        let (n, k) = parse_pair(body, position)?;
        if n < 0 || k < 0 {
            return Err(ParseError::at(position, "n and k must be non-negative"));
        }
        let g = Generator::new(kind, n as usize, k as usize)
            .map_err(|e: GeneratorError| ParseError::at(position, e.to_string()))?;
        gens.push(g);
    }
    GenWord::new(gens).map_err(|e| match e {
        WordError::Arity { position, .. } => ParseError::at(position, e.to_string()),
        other => ParseError::at(1, other.to_string()),
    })
}

/// Which side of the `R1` deletion pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum R1Form {
    /// `(-2,k)(2,k+2)`
    Rising,
    /// `(-2,k)(2,k-2)`
    Falling,
}

/// The local relations. Forward direction reads left to right:
///
/// * `R1`: `(-2,k)(2,k±2) = ∅`
/// * `R2`: `(2,k)(2,l) = (2,l+2)(2,k+2)` for `k ≤ l-2`
/// * `R31`: `(-2,k)(2,l) = (2,l-2)(-2,k+2)` for `k ≤ l-4`
/// * `R32`: `(2,k)(-2,l) = (-2,l+2)(2,k-2)` for `k ≤ l`
/// * `R4`: `(-2,k)(-2,l) = (-2,l-2)(-2,k-2)` for `k ≤ l-2`
///
/// `R1` carries the offset of its cup so the backward direction knows what
/// to insert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    R1 { form: R1Form, k: i64 },
    R2,
    R31,
    R32,
    R4,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::R1 {
                form: R1Form::Rising,
                ..
            } => "R1",
            Relation::R1 {
                form: R1Form::Falling,
                ..
            } => "R1'",
            Relation::R2 => "R2",
            Relation::R31 => "R3.1",
            Relation::R32 => "R3.2",
            Relation::R4 => "R4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// A relation applied at a 1-based position: the index of the first symbol
/// of the matched pattern, or for an `R1` insertion the index the inserted
/// cup will occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rewrite {
    pub relation: Relation,
    pub position: usize,
    pub direction: Direction,
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "fwd",
            Direction::Backward => "back",
        };
        write!(f, "{} {dir} @{}", self.relation, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("position {position} is outside a word of length {len}")]
    Position { position: usize, len: usize },
    #[error("{rewrite} does not match {found}")]
    Mismatch { rewrite: Rewrite, found: String },
    #[error("{rewrite} broke condition C: {source}")]
    ConditionC {
        rewrite: Rewrite,
        source: ConditionCError,
    },
}

/// Applies one relation. The result is checked against condition C when
/// the input satisfies it.
pub fn apply_relation(s: &SymWord, rw: Rewrite) -> Result<SymWord, RewriteError> {
    let len = s.len();
    let p = rw.position;
    let out = match (rw.relation, rw.direction) {
        (Relation::R1 { form, k }, Direction::Backward) => {
            if p == 0 || p > len + 1 {
                return Err(RewriteError::Position { position: p, len });
            }
            if k % 2 != 0 {
                return Err(RewriteError::Mismatch {
                    rewrite: rw,
                    found: format!("odd offset {k}"),
                });
            }
            let l = match form {
                R1Form::Rising => k + 2,
                R1Form::Falling => k - 2,
            };
            let mut v = s.0.clone();
            v.splice(p - 1..p - 1, [Symbol::cup(k), Symbol::cap(l)]);
            SymWord(v)
        }
        _ => {
            if p == 0 || p + 1 > len {
                return Err(RewriteError::Position { position: p, len });
            }
            let (x, y) = (s[p - 1], s[p]);
            let replacement = rewrite_pair(rw, x, y).ok_or_else(|| RewriteError::Mismatch {
                rewrite: rw,
                found: format!("{x}{y}"),
            })?;
            let mut v = s.0.clone();
            v.splice(p - 1..p + 1, replacement);
            SymWord(v)
        }
    };
    if check_condition_c(s).is_ok() {
        check_condition_c(&out).map_err(|source| RewriteError::ConditionC {
            rewrite: rw,
            source,
        })?;
    }
    Ok(out)
}

fn rewrite_pair(rw: Rewrite, x: Symbol, y: Symbol) -> Option<Vec<Symbol>> {
    use Direction::*;
    use Sign::*;
    let (a, b) = (x.d, y.d);
    let pair = (x.sign, y.sign);
    let out = match (rw.relation, rw.direction) {
        (Relation::R1 { form, k }, Forward) => {
            let l = match form {
                R1Form::Rising => k + 2,
                R1Form::Falling => k - 2,
            };
            (pair == (Minus, Plus) && a == k && b == l).then(Vec::new)?
        }
        (Relation::R2, Forward) if pair == (Plus, Plus) && a <= b - 2 => {
            vec![Symbol::cap(b + 2), Symbol::cap(a + 2)]
        }
        (Relation::R2, Backward) if pair == (Plus, Plus) && b <= a - 2 => {
            vec![Symbol::cap(b - 2), Symbol::cap(a - 2)]
        }
        (Relation::R31, Forward) if pair == (Minus, Plus) && a <= b - 4 => {
            vec![Symbol::cap(b - 2), Symbol::cup(a + 2)]
        }
        (Relation::R31, Backward) if pair == (Plus, Minus) && b <= a => {
            vec![Symbol::cup(b - 2), Symbol::cap(a + 2)]
        }
        (Relation::R32, Forward) if pair == (Plus, Minus) && a <= b => {
            vec![Symbol::cup(b + 2), Symbol::cap(a - 2)]
        }
        (Relation::R32, Backward) if pair == (Minus, Plus) && b <= a - 4 => {
            vec![Symbol::cap(b + 2), Symbol::cup(a - 2)]
        }
        (Relation::R4, Forward) if pair == (Minus, Minus) && a <= b - 2 => {
            vec![Symbol::cup(b - 2), Symbol::cup(a - 2)]
        }
        (Relation::R4, Backward) if pair == (Minus, Minus) && b <= a - 2 => {
            vec![Symbol::cup(b + 2), Symbol::cup(a + 2)]
        }
        _ => return None,
    };
    Some(out)
}

/// Every word satisfying condition C with at most `max_len` symbols,
/// shortest first and lexicographic within a length.
pub fn closed_words(max_len: usize) -> Vec<SymWord> {
    let mut out = Vec::new();
    for len in (0..=max_len).step_by(2) {
        let mut prefix = Vec::with_capacity(len);
        extend_closed(&mut prefix, 0, len, &mut out);
    }
    out
}

fn extend_closed(prefix: &mut Vec<Symbol>, below: i64, len: usize, out: &mut Vec<SymWord>) {
    let remaining = (len - prefix.len()) as i64;
    if remaining == 0 {
        out.push(SymWord(prefix.clone()));
        return;
    }
    for (sym_bound, next) in [(below, below + 2), (below - 2, below - 2)] {
        if sym_bound < 0 || next > 2 * (remaining - 1) {
            continue;
        }
        let cup = next > below;
        let mut d = -sym_bound;
        while d <= sym_bound {
            prefix.push(if cup { Symbol::cup(d) } else { Symbol::cap(d) });
            extend_closed(prefix, next, len, out);
            prefix.pop();
            d += 2;
        }
    }
}

/// A uniformly shaped random closed word with an even length of at most
/// `max_len` symbols.
pub fn random_closed_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> SymWord {
    let len = 2 * rng.gen_range(0..=max_len / 2);
    let mut below = 0i64;
    let mut v = Vec::with_capacity(len);
    for i in 0..len {
        let remaining = (len - i) as i64;
        let can_cup = below + 2 <= 2 * (remaining - 1);
        let can_cap = below >= 2;
        let cup = can_cup && (!can_cap || rng.gen_bool(0.5));
        if cup {
            let d = 2 * rng.gen_range(-(below / 2)..=below / 2);
            v.push(Symbol::cup(d));
            below += 2;
        } else {
            let b = (below - 2) / 2;
            v.push(Symbol::cap(2 * rng.gen_range(-b..=b)));
            below -= 2;
        }
    }
    SymWord(v)
}
