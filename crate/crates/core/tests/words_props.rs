//! Codec, local rewrites and normalization on random and exhaustive
//! closed words.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use planar_tangles::invariants::invariant_operator;
use planar_tangles::lomonoid::{CountMonoid, LatticeMonoid, PrimeMonoid};
use planar_tangles::normalize::{
    encircle, factorize, normalize, potential_e, potential_e2, to_forest, DEFAULT_MAX_STEPS,
};
use planar_tangles::oracle::trace_diagram;
use planar_tangles::words::{
    apply_relation, check_condition_c, closed_words, decode, encode, random_closed_word,
    Direction, R1Form, Relation, Rewrite, SymWord,
};

fn word(max_len: usize) -> impl Strategy<Value = SymWord> {
    any::<u64>().prop_map(move |seed| random_closed_word(&mut ChaCha8Rng::seed_from_u64(seed), max_len))
}

fn value<M: LatticeMonoid>(w: &SymWord, m: &M) -> M::Value {
    invariant_operator(&decode(w).expect("condition C"), m).expect("value in range")
}

fn forest(w: &SymWord) -> String {
    trace_diagram(&decode(w).expect("condition C")).unwrap().canonical()
}

/// Every rewrite that applies somewhere in `w`, including `R1` insertions
/// with small offsets.
fn applicable(w: &SymWord) -> Vec<(Rewrite, SymWord)> {
    let mut relations = vec![Relation::R2, Relation::R31, Relation::R32, Relation::R4];
    for k in (-4..=4).step_by(2) {
        for form in [R1Form::Rising, R1Form::Falling] {
            relations.push(Relation::R1 { form, k });
        }
    }
    let mut out = Vec::new();
    for relation in relations {
        for direction in [Direction::Forward, Direction::Backward] {
            for position in 1..=w.len() + 1 {
                let rw = Rewrite {
                    relation,
                    position,
                    direction,
                };
                if let Ok(next) = apply_relation(w, rw) {
                    out.push((rw, next));
                }
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn codec_roundtrip(w in word(30)) {
        let g = decode(&w).unwrap();
        prop_assert!(g.is_closed() || w.is_empty());
        prop_assert_eq!(encode(&g).unwrap(), w.clone());
        let caps = w.iter().filter(|s| s.is_cap()).count();
        prop_assert_eq!(2 * caps, w.len());
    }

    #[test]
    fn point_counts_match_arities(w in word(20)) {
        let g = decode(&w).unwrap();
        for (i, gen) in g.iter().enumerate() {
            prop_assert_eq!(w.points_below(i + 1), gen.bottom_points() as i64);
            prop_assert_eq!(w.points_above(i + 1), gen.top_points() as i64);
        }
    }

    #[test]
    fn rewrites_preserve_everything(w in word(10)) {
        let (count, prime, shape) = (value(&w, &CountMonoid), value(&w, &PrimeMonoid), forest(&w));
        for (rw, next) in applicable(&w) {
            prop_assert!(check_condition_c(&next).is_ok(), "{} on {}", rw, w);
            prop_assert_eq!(value(&next, &CountMonoid), count, "{} on {}", rw, w);
            prop_assert_eq!(&value(&next, &PrimeMonoid), &prime, "{} on {}", rw, w);
            prop_assert_eq!(&forest(&next), &shape, "{} on {}", rw, w);
        }
    }

    #[test]
    fn normalization_output(w in word(24)) {
        let (out, trace) = normalize(&w, DEFAULT_MAX_STEPS).unwrap();
        prop_assert!(out.is_normal());
        prop_assert_eq!(trace.replay(&w).unwrap(), out.clone());
        prop_assert_eq!(value(&out, &CountMonoid), value(&w, &CountMonoid));
        prop_assert_eq!(value(&out, &PrimeMonoid), value(&w, &PrimeMonoid));
        let f = to_forest(&out).unwrap();
        prop_assert_eq!(f.canonical(), forest(&w));
        prop_assert_eq!(factorize(&out).unwrap().len(), f.root_count());
    }

    #[test]
    fn second_potential_settles_after_bubbling(w in word(24)) {
        let (out, trace) = normalize(&w, DEFAULT_MAX_STEPS).unwrap();
        let mut before = w.clone();
        for s in &trace.0 {
            if s.step >= 3 {
                prop_assert!(potential_e2(&before).map_or(true, |e| e <= 0), "before {} in {}", s, w);
            }
            if s.step == 4 {
                prop_assert!(potential_e2(&s.word).map_or(true, |e| e <= 0), "after {} in {}", s, w);
            }
            before = s.word.clone();
        }
        prop_assert!(potential_e2(&out).map_or(true, |e| e <= 0));
    }

    #[test]
    fn potential_drops_through_steps_three_and_four(w in word(24)) {
        let (_, trace) = normalize(&w, DEFAULT_MAX_STEPS).unwrap();
        let mut prev = potential_e(&w);
        for s in &trace.0 {
            if s.step >= 3 {
                prop_assert!(s.potential < prev, "{} in {}", s, w);
            }
            prev = s.potential;
        }
    }

    #[test]
    fn encircling_keeps_condition_c(w in word(30)) {
        let e = encircle(&w);
        prop_assert!(check_condition_c(&e).is_ok());
        prop_assert_eq!(e.len(), w.len() + 2);
    }

    #[test]
    fn composition_commutes(a in word(10), b in word(10)) {
        let (ab, ba) = (a.concat(&b), b.concat(&a));
        prop_assert_eq!(value(&ab, &PrimeMonoid), value(&ba, &PrimeMonoid));
        prop_assert_eq!(forest(&ab), forest(&ba));
    }
}

#[test]
fn every_short_word_roundtrips_and_normalizes() {
    let words = closed_words(8);
    assert_eq!(words[0], SymWord::empty());
    for w in &words {
        assert!(check_condition_c(w).is_ok(), "{w}");
        assert_eq!(&encode(&decode(w).unwrap()).unwrap(), w);
        let (out, _) = normalize(w, DEFAULT_MAX_STEPS).unwrap();
        assert!(out.is_normal(), "{w} -> {out}");
    }
}

#[test]
fn documented_rewrites() {
    let sym = |s: &str| -> SymWord { s.parse().unwrap() };
    let r1 = Rewrite {
        relation: Relation::R1 {
            form: R1Form::Rising,
            k: 0,
        },
        position: 2,
        direction: Direction::Forward,
    };
    assert_eq!(
        apply_relation(&sym("(-2,0)(-2,0)(2,2)(2,0)"), r1).unwrap(),
        sym("(-2,0)(2,0)")
    );
    let r32 = Rewrite {
        relation: Relation::R32,
        position: 2,
        direction: Direction::Forward,
    };
    assert_eq!(
        apply_relation(&sym("(-2,0)(2,0)(-2,0)(2,0)"), r32).unwrap(),
        sym("(-2,0)(-2,2)(2,-2)(2,0)")
    );
    let r2 = Rewrite {
        relation: Relation::R2,
        position: 1,
        direction: Direction::Forward,
    };
    assert_eq!(
        apply_relation(&sym("(2,-2)(2,0)"), r2).unwrap(),
        sym("(2,2)(2,0)")
    );
}

#[test]
fn potentials_by_hand() {
    let sym = |s: &str| -> SymWord { s.parse().unwrap() };
    assert_eq!(potential_e(&sym("(-2,0)(2,0)")), (2, 0));
    assert_eq!(potential_e(&sym("(-2,0)(-2,0)(2,0)(2,0)")), (7, 0));
    assert_eq!(potential_e(&sym("(-2,0)(-2,0)(2,2)(2,0)")), (7, -2));
    assert_eq!(potential_e2(&sym("(-2,0)(-2,0)(2,0)(2,0)")), Some(0));
    assert_eq!(potential_e2(&sym("(-2,0)(-2,2)(2,0)(2,0)")), Some(2));
    assert_eq!(potential_e2(&sym("(-2,0)(2,0)")), None);
}

#[test]
fn factors_of_normal_words() {
    let sym = |s: &str| -> SymWord { s.parse().unwrap() };
    let two = factorize(&sym("(-2,0)(2,0)(-2,0)(2,0)")).unwrap();
    assert_eq!(two, vec![sym("(-2,0)(2,0)"), sym("(-2,0)(2,0)")]);
    assert_eq!(factorize(&sym("(-2,0)(-2,0)(2,0)(2,0)")).unwrap().len(), 1);
    assert!(factorize(&SymWord::empty()).unwrap().is_empty());
}
