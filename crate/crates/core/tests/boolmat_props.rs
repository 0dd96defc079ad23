//! Laws of Boolean matrices and their transitive closure, on random
//! matrices up to 12×12.

use proptest::prelude::*;

use planar_tangles::boolmat::BitMatrix;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<bool>(), rows * cols)
        .prop_map(move |bits| BitMatrix::from_fn(rows, cols, |i, j| bits[i * cols + j]))
}

fn square_triple() -> impl Strategy<Value = (BitMatrix, BitMatrix, BitMatrix)> {
    (1..=12usize).prop_flat_map(|n| (matrix(n, n), matrix(n, n), matrix(n, n)))
}

fn chain() -> impl Strategy<Value = (BitMatrix, BitMatrix, BitMatrix)> {
    (1..=12usize, 1..=12usize, 1..=12usize, 1..=12usize)
        .prop_flat_map(|(a, b, c, d)| (matrix(a, b), matrix(b, c), matrix(c, d)))
}

fn square() -> impl Strategy<Value = BitMatrix> {
    (1..=12usize).prop_flat_map(|n| matrix(n, n))
}

proptest! {
    #[test]
    fn sums((a, b, c) in square_triple()) {
        let n = a.rows();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &BitMatrix::zeros(n, n), a.clone());
        prop_assert_eq!(&a + &a, a.clone());
        prop_assert_eq!(a.leq(&b).unwrap(), &a + &b == b);
    }

    #[test]
    fn products((a, b, c) in chain()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
        prop_assert_eq!(&a * &BitMatrix::identity(a.cols()), a.clone());
        prop_assert_eq!(&BitMatrix::identity(a.rows()) * &a, a.clone());
        prop_assert!((&a * &BitMatrix::zeros(a.cols(), 3)).is_zero());
    }

    #[test]
    fn distributivity((a, b, c) in square_triple()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!((&a + &b).transpose(), &a.transpose() + &b.transpose());
    }

    #[test]
    fn order_is_compatible((a, b, c) in square_triple()) {
        let below = &a * &b;
        let above = &below + &a;
        prop_assert!(below.leq(&above).unwrap());
        prop_assert!((&below + &c).leq(&(&above + &c)).unwrap());
        prop_assert!((&c * &below).leq(&(&c * &above)).unwrap());
        prop_assert!((&below * &c).leq(&(&above * &c)).unwrap());
        prop_assert!(below.transpose().leq(&above.transpose()).unwrap());
    }

    #[test]
    fn minus_then_add((a, b, _) in square_triple()) {
        let back = &a.minus(&b).unwrap() + &b;
        prop_assert!(a.leq(&back).unwrap());
        let bigger = &a + &b;
        prop_assert_eq!(&bigger.minus(&b).unwrap() + &b, bigger);
    }

    #[test]
    fn closure_is_least_transitive_bound(a in square(), b in square()) {
        let n = a.rows();
        let b = if b.rows() == n { b } else { BitMatrix::identity(n) };
        let ca = a.transitive_closure().unwrap();
        prop_assert!(ca.is_transitive());
        prop_assert!(a.leq(&ca).unwrap());
        prop_assert_eq!(ca.transitive_closure().unwrap(), ca.clone());
        let above = &a + &b;
        prop_assert!(ca.leq(&above.transitive_closure().unwrap()).unwrap());
        let t = b.transitive_closure().unwrap();
        if a.leq(&t).unwrap() {
            prop_assert!(ca.leq(&t).unwrap());
        }
    }

    #[test]
    fn reflexive_closure_is_a_power(a in square()) {
        let n = a.rows();
        let r = &a + &BitMatrix::identity(n);
        let closure = r.transitive_closure().unwrap();
        prop_assert_eq!(r.pow(n as u32).unwrap(), closure);
    }
}

#[test]
fn mismatched_shapes_are_rejected() {
    let a = BitMatrix::zeros(2, 3);
    assert!(a.add(&BitMatrix::zeros(3, 2)).is_err());
    assert!(a.mul(&BitMatrix::zeros(2, 3)).is_err());
    assert!(a.minus(&BitMatrix::zeros(2, 2)).is_err());
    assert!(a.leq(&BitMatrix::zeros(3, 3)).is_err());
}

#[test]
fn documented_products() {
    let a: BitMatrix = "11/01".parse().unwrap();
    let b: BitMatrix = "10/11".parse().unwrap();
    assert_eq!((&a * &b).to_string(), "11\n11");
    let sum = &"10/00".parse::<BitMatrix>().unwrap() + &"00/01".parse::<BitMatrix>().unwrap();
    assert_eq!(sum, BitMatrix::identity(2));
}
