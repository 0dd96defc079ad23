//! Operators on random reachable states: closure, the relations, and the
//! squares with region marking, encircling and mirroring.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_tangles::lomonoid::{CountMonoid, FiniteLattice, LatticeMonoid, PrimeMonoid};
use planar_tangles::normalize::encircle;
use planar_tangles::operators::{Generator, OpError, Representation};
use planar_tangles::selftest::check_relations_at;
use planar_tangles::states::{random_state, TangleState};
use planar_tangles::words::{decode, encode, random_closed_word, GenWord};

type State<M> = TangleState<<M as LatticeMonoid>::Value>;

fn revalidate<M: LatticeMonoid>(s: &State<M>, m: &M) -> Result<(), TestCaseError> {
    let (r, v) = s.clone().into_parts();
    let checked = TangleState::validate(r, v, m);
    prop_assert!(checked.is_ok(), "{:?}", checked.err());
    prop_assert!(checked.unwrap().region_constancy_witness().is_none());
    Ok(())
}

fn setup<M: LatticeMonoid>(m: &M, seed: u64) -> (ChaCha8Rng, State<M>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = 2 * rng.gen_range(0..=4) + 1;
    let s = random_state(w, rng.gen(), m).expect("odd width");
    (rng, s)
}

fn closure<M: LatticeMonoid>(m: &M, seed: u64) -> Result<(), TestCaseError> {
    let rep = Representation::new(m);
    let (mut rng, s) = setup(m, seed);
    let w = s.width();
    revalidate(&s, m)?;
    prop_assert!(s.in_u());
    let k = rng.gen_range(2..=w + 1);
    let up = rep.cap(&s, k).unwrap();
    revalidate(&up, m)?;
    prop_assert!(up.in_u());
    if w >= 3 {
        let down = rep.cup(&s, rng.gen_range(2..=w - 1)).unwrap();
        revalidate(&down, m)?;
        prop_assert!(down.in_u());
    }
    let marked = rep.mark_first_region(&s, &m.random_value(&mut rng));
    revalidate(&marked, m)?;
    revalidate(&rep.mirror(&s), m)?;
    let eps = rep.encircle_state(&s).unwrap();
    revalidate(&eps, m)?;
    prop_assert!(eps.in_u());
    Ok(())
}

fn relations<M: LatticeMonoid>(m: &M, seed: u64) -> Result<(), TestCaseError> {
    let rep = Representation::new(m);
    let (mut rng, s) = setup(m, seed);
    let w = s.width();
    let k = rng.gen_range(2..=w + 1);
    let l = rng.gen_range(k + 2..=w + 3);
    let checked = check_relations_at(&rep, &s, k, l);
    prop_assert!(checked.is_ok(), "{:?}", checked);
    Ok(())
}

fn squares<M: LatticeMonoid>(m: &M, seed: u64) -> Result<(), TestCaseError> {
    let rep = Representation::new(m);
    let (mut rng, s) = setup(m, seed);
    let w = s.width();
    let x = m.random_value(&mut rng);
    let psi = |t: &State<M>| rep.mark_first_region(t, &x);
    prop_assert_eq!(rep.mark_first_region(&s, &m.zero()), s.clone());
    prop_assert_eq!(rep.mirror(&rep.mirror(&s)), s.clone());
    let k = rng.gen_range(2..=w + 1);
    prop_assert_eq!(rep.cap(&psi(&s), k).unwrap(), psi(&rep.cap(&s, k).unwrap()));
    prop_assert_eq!(
        rep.mirror(&rep.cap(&s, k).unwrap()),
        rep.cap(&rep.mirror(&s), w + 3 - k).unwrap()
    );
    let eps = rep.encircle_state(&s).unwrap();
    prop_assert_eq!(
        rep.cap(&eps, k + 1).unwrap(),
        rep.encircle_state(&rep.cap(&s, k).unwrap()).unwrap()
    );
    if w >= 3 {
        let j = rng.gen_range(2..=w - 1);
        prop_assert_eq!(rep.cup(&psi(&s), j).unwrap(), psi(&rep.cup(&s, j).unwrap()));
        prop_assert_eq!(
            rep.mirror(&rep.cup(&s, j).unwrap()),
            rep.cup(&rep.mirror(&s), w + 1 - j).unwrap()
        );
        prop_assert_eq!(
            rep.cup(&eps, j + 1).unwrap(),
            rep.encircle_state(&rep.cup(&s, j).unwrap()).unwrap()
        );
    }
    Ok(())
}

/// A random open word starting at width `w`.
fn open_word(rng: &mut ChaCha8Rng, w: usize, len: usize) -> GenWord {
    let mut gens = Vec::new();
    let mut width = w;
    for _ in 0..len {
        let g = if width >= 3 && rng.gen_bool(0.5) {
            Generator::cup(width - 2, rng.gen_range(2..=width - 1)).unwrap()
        } else {
            Generator::cap(width, rng.gen_range(2..=width + 1)).unwrap()
        };
        width = g.output_width();
        gens.insert(0, g);
    }
    GenWord::new(gens).unwrap()
}

fn evaluation_composes<M: LatticeMonoid>(m: &M, seed: u64) -> Result<(), TestCaseError> {
    let rep = Representation::new(m);
    let (mut rng, s) = setup(m, seed);
    let (a, b) = (rng.gen_range(0..4), rng.gen_range(0..4));
    let first = open_word(&mut rng, s.width(), a);
    let mid = first.output_width().unwrap_or(s.width());
    let second = open_word(&mut rng, mid, b);
    let whole: Vec<Generator> = second.iter().chain(first.iter()).copied().collect();
    let stepwise = rep.eval_word(&second, &rep.eval_word(&first, &s).unwrap()).unwrap();
    prop_assert_eq!(rep.eval_word(&whole, &s).unwrap(), stepwise);
    prop_assert_eq!(rep.eval_word(&[], &s).unwrap(), s.clone());
    Ok(())
}

proptest! {
    #[test]
    fn count_states(seed in any::<u64>()) {
        closure(&CountMonoid, seed)?;
        relations(&CountMonoid, seed)?;
        squares(&CountMonoid, seed)?;
        evaluation_composes(&CountMonoid, seed)?;
    }

    #[test]
    fn prime_states(seed in any::<u64>()) {
        closure(&PrimeMonoid, seed)?;
        relations(&PrimeMonoid, seed)?;
        squares(&PrimeMonoid, seed)?;
        evaluation_composes(&PrimeMonoid, seed)?;
    }

    #[test]
    fn lattice_states(seed in any::<u64>()) {
        let d = FiniteLattice::diamond();
        closure(&d, seed)?;
        relations(&d, seed)?;
        squares(&d, seed)?;
    }

    #[test]
    fn shifting_keeps_the_symbol(seed in any::<u64>()) {
        let w = random_closed_word(&mut ChaCha8Rng::seed_from_u64(seed), 20);
        let g = decode(&w).unwrap();
        for gen in g.iter() {
            let s = gen.shifted();
            prop_assert_eq!((s.kind, s.n, s.k), (gen.kind, gen.n + 2, gen.k + 1));
        }
        prop_assert_eq!(encode(&g.encircled().unwrap()).unwrap(), encircle(&w));
    }
}

#[test]
fn encircling_needs_the_outer_corner() {
    let m = &CountMonoid;
    let rep = Representation::new(m);
    let s = TangleState::identity(3, m);
    assert!(!s.in_u());
    assert_eq!(rep.encircle_state(&s), Err(OpError::NotInU));
}

#[test]
fn operators_reject_bad_positions() {
    let m = &CountMonoid;
    let rep = Representation::new(m);
    let s = random_state(3, 1, m).unwrap();
    assert!(rep.cap(&s, 1).is_err());
    assert!(rep.cap(&s, 5).is_err());
    assert!(rep.cup(&s, 3).is_err());
    assert!(rep.cup(&TangleState::trivial(m), 2).is_err());
}
