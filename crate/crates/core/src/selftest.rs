//! Seeded consistency suites run by `tangles selftest`.
//!
//! Every suite draws from one ChaCha stream derived from the seed and the
//! suite name, so output depends only on `(seed, trials)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::invariants::{invariant_normal_form, invariant_operator, normal_forest};
use crate::lomonoid::{check_laws, CountMonoid, FiniteLattice, LatticeMonoid, PrimeMonoid};
use crate::normalize::{encircle, normalize, DEFAULT_MAX_STEPS};
use crate::operators::Representation;
use crate::oracle::{completeness_report, trace_diagram};
use crate::states::{random_state, TangleState};
use crate::words::{decode, encode, random_closed_word, SymWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failure: Option<String>,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} checks {}", self.name, self.checks),
            Some(why) => write!(f, "FAIL {} {}", self.name, why),
        }
    }
}

type Check = Result<usize, String>;

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs every suite in a fixed order.
pub fn run_all(seed: u64, trials: usize) -> Vec<SuiteResult> {
    let suites: [(&'static str, fn(&mut ChaCha8Rng, usize) -> Check); 8] = [
        ("relations", relations),
        ("closure", closure),
        ("monoid-laws", monoid_laws),
        ("codec", codec),
        ("normalize", normalization),
        ("agreement", agreement),
        ("homomorphism", homomorphism),
        ("completeness", |_, _| completeness()),
    ];
    suites
        .into_iter()
        .map(|(name, f)| {
            let mut rng = rng_for(seed, name);
            let (checks, failure) = match f(&mut rng, trials) {
                Ok(n) => (n, None),
                Err(e) => (0, Some(e)),
            };
            SuiteResult {
                name,
                checks,
                failure,
            }
        })
        .collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn relations(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    let mut checks = relations_in(&CountMonoid, rng, trials)?;
    checks += relations_in(&PrimeMonoid, rng, trials)?;
    Ok(checks)
}

/// Checks every relation family at one random legal `(k, l)` per family on
/// `trials` random states.
pub fn relations_in<M: LatticeMonoid, R: Rng>(m: &M, rng: &mut R, trials: usize) -> Check {
    let rep = Representation::new(m);
    let mut checks = 0;
    for _ in 0..trials {
        let w = 2 * rng.gen_range(0..=4) + 1;
        let s = random_state(w, rng.gen(), m).map_err(|e| e.to_string())?;
        let k = rng.gen_range(2..=w + 1);
        let l = rng.gen_range(2..=w + 3);
        checks += check_relations_at(&rep, &s, k, l)?;
    }
    Ok(checks)
}

/// Checks every relation family that is legal for `(k, l)` on `s`. Returns
/// how many were checked.
pub fn check_relations_at<M: LatticeMonoid>(
    rep: &Representation<'_, M>,
    s: &TangleState<M::Value>,
    k: usize,
    l: usize,
) -> Check {
    let w = s.width();
    let e = |err: crate::operators::OpError| err.to_string();
    let mut checks = 0;
    let fail = |name: &str| format!("{name} k={k} l={l} width {w}");
    if (2..=w + 1).contains(&k) {
        let up = rep.cap(s, k).map_err(e)?;
        for back in [k + 1, k - 1] {
            if (2..=w + 1).contains(&back) {
                ensure(rep.cup(&up, back).map_err(e)? == *s, || fail("R1"))?;
                checks += 1;
            }
        }
    }
    if l >= k + 2 && k >= 2 {
        if l <= w + 3 {
            let lhs = rep.cap(&rep.cap(s, k).map_err(e)?, l).map_err(e)?;
            let rhs = rep.cap(&rep.cap(s, l - 2).map_err(e)?, k).map_err(e)?;
            ensure(lhs == rhs, || fail("R2"))?;
            checks += 1;
        }
        if l <= w + 1 && w >= 3 {
            let lhs = rep.cup(&rep.cap(s, l).map_err(e)?, k).map_err(e)?;
            let rhs = rep.cap(&rep.cup(s, k).map_err(e)?, l - 2).map_err(e)?;
            ensure(lhs == rhs, || fail("R3a"))?;
            let lhs = rep.cup(&rep.cap(s, k).map_err(e)?, l).map_err(e)?;
            let rhs = rep.cap(&rep.cup(s, l - 2).map_err(e)?, k).map_err(e)?;
            ensure(lhs == rhs, || fail("R3b"))?;
            checks += 2;
        }
        if l <= w - 1 && w >= 5 {
            let lhs = rep.cup(&rep.cup(s, l).map_err(e)?, k).map_err(e)?;
            let rhs = rep.cup(&rep.cup(s, k).map_err(e)?, l - 2).map_err(e)?;
            ensure(lhs == rhs, || fail("R4"))?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn closure(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    let m = &PrimeMonoid;
    let rep = Representation::new(m);
    for i in 0..trials {
        let w = 2 * rng.gen_range(0..=4) + 1;
        let s = random_state(w, rng.gen(), m).map_err(|e| e.to_string())?;
        let out = if w >= 3 && rng.gen_bool(0.5) {
            rep.cup(&s, rng.gen_range(2..=w - 1))
        } else {
            rep.cap(&s, rng.gen_range(2..=w + 1))
        };
        let out = match out {
            Ok(o) => o,
            Err(crate::operators::OpError::Monoid(_)) => continue,
            Err(e) => return Err(format!("trial {i}: {e}")),
        };
        let (r, v) = out.into_parts();
        let st = TangleState::validate(r, v, m).map_err(|e| format!("trial {i}: {e}"))?;
        ensure(st.region_constancy_witness().is_none(), || {
            format!("trial {i}: region values differ")
        })?;
    }
    Ok(trials)
}

fn laws_for<M: LatticeMonoid, R: Rng>(m: &M, rng: &mut R, trials: usize) -> Result<(), String> {
    for _ in 0..trials {
        let (a, b, c) = (
            m.random_law_value(rng),
            m.random_law_value(rng),
            m.random_law_value(rng),
        );
        check_laws(m, &a, &b, &c).map_err(|law| {
            format!(
                "{} {law} at ({}, {}, {})",
                m.name(),
                m.render(&a),
                m.render(&b),
                m.render(&c)
            )
        })?;
    }
    Ok(())
}

fn monoid_laws(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    laws_for(&CountMonoid, rng, trials)?;
    laws_for(&PrimeMonoid, rng, trials)?;
    let d = FiniteLattice::diamond();
    let elems: Vec<_> = d.elements().collect();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                check_laws(&d, a, b, c).map_err(|law| format!("diamond {law}"))?;
            }
        }
    }
    Ok(2 * trials + elems.len().pow(3))
}

fn codec(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    for _ in 0..trials {
        let w = random_closed_word(rng, 30);
        let g = decode(&w).map_err(|e| format!("{w}: {e}"))?;
        ensure(encode(&g).ok().as_ref() == Some(&w), || format!("{w} does not roundtrip"))?;
    }
    Ok(trials)
}

fn normalization(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    for _ in 0..trials {
        let w = random_closed_word(rng, 16);
        let (out, trace) = normalize(&w, DEFAULT_MAX_STEPS).map_err(|e| format!("{w}: {e}"))?;
        ensure(out.is_normal(), || format!("{w} -> {out}"))?;
        ensure(trace.replay(&w).ok().as_ref() == Some(&out), || {
            format!("{w}: trace does not replay")
        })?;
        let geometric = trace_diagram(&decode(&w).expect("condition C")).map_err(|e| e.to_string())?;
        let rewritten = normal_forest(&w, DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
        ensure(geometric.canonical() == rewritten.canonical(), || {
            format!("{w}: forest {} vs {}", geometric, rewritten)
        })?;
    }
    Ok(trials)
}

fn agree_on<M: LatticeMonoid>(m: &M, w: &SymWord) -> Result<bool, String> {
    let g = decode(w).expect("condition C");
    let a = invariant_operator(&g, m);
    let b = invariant_normal_form(w, m, DEFAULT_MAX_STEPS);
    match (a, b) {
        (Ok(a), Ok(b)) => ensure(a == b, || format!("{} {w}", m.name())).map(|_| true),
        (Err(a), Err(b)) if a.is_out_of_range() && b.is_out_of_range() => Ok(false),
        (a, b) => Err(format!("{} {w}: {a:?} vs {b:?}", m.name())),
    }
}

fn agreement(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    let mut checks = 0;
    for _ in 0..trials {
        let w = random_closed_word(rng, 24);
        checks += agree_on(&CountMonoid, &w)? as usize;
        checks += agree_on(&PrimeMonoid, &w)? as usize;
    }
    Ok(checks)
}

fn homomorphism(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    let m = &PrimeMonoid;
    let v = |w: &SymWord| invariant_operator(&decode(w).expect("condition C"), m);
    let mut checks = 0;
    for _ in 0..trials {
        let a = random_closed_word(rng, 10);
        let b = random_closed_word(rng, 10);
        let (Ok(va), Ok(vb), Ok(vab), Ok(vba), Ok(vca)) =
            (v(&a), v(&b), v(&a.concat(&b)), v(&b.concat(&a)), v(&encircle(&a)))
        else {
            continue;
        };
        ensure(vab == m.oplus(&va, &vb), || format!("{a} {b}: not additive"))?;
        ensure(vab == vba, || format!("{a} {b}: not commutative"))?;
        let phi = m.phi(&va).map_err(|e| e.to_string())?;
        ensure(vca == phi, || format!("{a}: encircling is not phi"))?;
        checks += 3;
    }
    Ok(checks)
}

fn completeness() -> Check {
    let r = completeness_report(5).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{} collisions", r.collisions.len()))?;
    Ok(r.rows.len())
}
