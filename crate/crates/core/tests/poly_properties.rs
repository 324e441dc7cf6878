mod common;

use common::{arb_poly, cofactor_det, cofactor_jacobian, p, q, random_poly, ring, rng};
use gaql_core::poly::{determinant, jacobian_det};
use gaql_core::{format_polynomial, parse_polynomial, Polynomial, Rational};
use proptest::prelude::*;
use rand::Rng;

fn xyz() -> gaql_core::Ring {
    ring(&["x", "y", "z"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(
        a in arb_poly(xyz(), 5, 3),
        b in arb_poly(xyz(), 5, 3),
        c in arb_poly(xyz(), 5, 3),
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&xyz()), a.clone());
    }

    #[test]
    fn partial_derivative_is_leibniz(
        a in arb_poly(xyz(), 5, 3),
        b in arb_poly(xyz(), 5, 3),
        i in 0usize..3,
    ) {
        let lhs = (&a * &b).partial_derivative(i).unwrap();
        let rhs = &(&a.partial_derivative(i).unwrap() * &b) + &(&a * &b.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_is_associative(
        f in arb_poly(xyz(), 4, 2),
        g in proptest::collection::vec(arb_poly(xyz(), 3, 2), 3),
        h in proptest::collection::vec(arb_poly(xyz(), 3, 2), 3),
    ) {
        let gh: Vec<Polynomial> = g.iter().map(|gi| gi.compose(&h).unwrap()).collect();
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&gh).unwrap());
    }

    #[test]
    fn evaluate_is_a_homomorphism(
        a in arb_poly(xyz(), 5, 3),
        b in arb_poly(xyz(), 5, 3),
        pt in proptest::collection::vec((-4i64..=4, 1i64..=3), 3),
    ) {
        let pt: Vec<Rational> = pt.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect();
        let ea = a.evaluate(&pt).unwrap();
        let eb = b.evaluate(&pt).unwrap();
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &ea * &eb);
        // Composition with constants agrees with evaluation.
        let consts: Vec<Polynomial> = pt.iter().map(|c| Polynomial::constant(&xyz(), c.clone())).collect();
        prop_assert_eq!(a.compose(&consts).unwrap().as_constant().unwrap(), ea);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(
        n in 1usize..=4,
        entries in proptest::collection::vec(arb_poly(ring(&["x", "y"]), 3, 2), 16),
    ) {
        let r = ring(&["x", "y"]);
        let m: Vec<Vec<Polynomial>> = (0..n).map(|i| entries[i * 4..i * 4 + n].to_vec()).collect();
        prop_assert_eq!(determinant(&r, &m).unwrap(), cofactor_det(&r, &m));
    }

    #[test]
    fn parse_format_round_trip(a in arb_poly(xyz(), 6, 4)) {
        let s = format_polynomial(&a);
        prop_assert_eq!(parse_polynomial(&s, &xyz()).unwrap(), a);
    }
}

#[test]
fn jacobian_alternation_and_oracle() {
    let mut r = rng(7);
    for trial in 0..50 {
        let n = 2 + trial % 3;
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ring = gaql_core::Ring::new(names).unwrap();
        let fs: Vec<Polynomial> = (0..n).map(|_| random_poly(&mut r, &ring, 4, 3)).collect();
        let det = jacobian_det(&ring, &fs).unwrap();
        assert_eq!(det, cofactor_jacobian(&ring, &fs));

        let i = r.gen_range(0..n);
        let j = (i + 1 + r.gen_range(0..n - 1)) % n;
        let mut repeated = fs.clone();
        repeated[j] = repeated[i].clone();
        assert!(jacobian_det(&ring, &repeated).unwrap().is_zero());

        let mut swapped = fs.clone();
        swapped.swap(i, j);
        assert_eq!(jacobian_det(&ring, &swapped).unwrap(), -&det);
    }
}

#[test]
fn jacobian_of_five_variables_against_oracle() {
    let mut r = rng(11);
    let ring = ring(&["a", "b", "c", "d", "e"]);
    for _ in 0..3 {
        let fs: Vec<Polynomial> = (0..5).map(|_| random_poly(&mut r, &ring, 3, 2)).collect();
        assert_eq!(jacobian_det(&ring, &fs).unwrap(), cofactor_jacobian(&ring, &fs));
    }
}

#[test]
fn round_trip_on_seeded_sample() {
    let mut r = rng(3);
    let ring = ring(&["x", "y", "u", "v"]);
    for _ in 0..500 {
        let a = random_poly(&mut r, &ring, 6, 5);
        assert_eq!(parse_polynomial(&format_polynomial(&a), &ring).unwrap(), a);
    }
}

#[test]
fn known_product() {
    let r = xyz();
    assert_eq!(
        &p(&r, "x + y") * &p(&r, "x - y"),
        p(&r, "x^2 - y^2")
    );
    assert_eq!(p(&r, "(x + 1)^3").evaluate(&[q(1), q(0), q(0)]).unwrap(), q(8));
}
