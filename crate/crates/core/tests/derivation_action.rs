mod common;

use common::{cofactor_jacobian, p, random_poly, ring, rng};
use gaql_core::quotient::jacobian_derivation;
use gaql_core::{exponentiate, Derivation, GaAction, PolyMap, Polynomial, Ring, TDegree};
use rand::Rng;

/// `D(x_i)` a random polynomial in `x_1, .., x_{i-1}`, so `D` is locally
/// nilpotent.
fn triangular(r: &mut impl Rng, ring: &Ring) -> Derivation {
    let n = ring.arity();
    let images = (0..n)
        .map(|i| {
            if i == 0 {
                return Polynomial::constant(ring, common::q(r.gen_range(-2..=2)));
            }
            let sub = Ring::new(ring.names()[..i].iter().cloned()).unwrap();
            let small = random_poly(r, &sub, 3, 2);
            small.embed(ring, &(0..i).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    Derivation::new(ring, images).unwrap()
}

fn action_of(d: &Derivation) -> GaAction {
    let cert = d.certify_locally_nilpotent(64);
    assert!(cert.is_certified(), "{d:?}");
    exponentiate(d, &cert).unwrap()
}

#[test]
fn leibniz_and_linearity_for_random_derivations() {
    let mut r = rng(31);
    let ring = ring(&["x", "y", "z"]);
    for _ in 0..200 {
        let images = (0..3).map(|_| random_poly(&mut r, &ring, 3, 2)).collect();
        let d = Derivation::new(&ring, images).unwrap();
        let a = random_poly(&mut r, &ring, 4, 3);
        let b = random_poly(&mut r, &ring, 4, 3);
        let da = d.apply(&a, 1).unwrap();
        let db = d.apply(&b, 1).unwrap();
        assert_eq!(d.apply(&(&a * &b), 1).unwrap(), &(&da * &b) + &(&a * &db));
        let c = common::q(r.gen_range(-3..=3));
        assert_eq!(d.apply(&(&a.scale(&c) + &b), 1).unwrap(), &da.scale(&c) + &db);
        assert!(d.apply(&Polynomial::constant(&ring, c), 1).unwrap().is_zero());
    }
}

#[test]
fn triangular_derivations_certify_and_respect_the_bound() {
    let mut r = rng(32);
    let ring = ring(&["x", "y", "z", "w"]);
    for _ in 0..50 {
        let d = triangular(&mut r, &ring);
        let cert = d.certify_locally_nilpotent(64);
        assert!(cert.is_certified());
        assert!(cert.recheck());
        let orders = cert.orders().unwrap();
        for (i, &k) in orders.iter().enumerate() {
            assert!(d.apply(&ring.var(i), k).unwrap().is_zero());
            assert!(!d.apply(&ring.var(i), k - 1).unwrap().is_zero());
        }
        let g = random_poly(&mut r, &ring, 3, 2);
        let bound = cert.nilpotency_bound_for(&g).unwrap();
        assert!(d.apply(&g, bound).unwrap().is_zero(), "{g} bound {bound}");
    }
}

#[test]
fn actions_satisfy_the_axioms_and_act_as_homomorphisms() {
    let mut r = rng(33);
    let ring = ring(&["x", "y", "z"]);
    for _ in 0..30 {
        let d = triangular(&mut r, &ring);
        let a = action_of(&d);
        assert!(a.check_identity().unwrap());
        assert!(a.check_group_law().unwrap());

        let f = random_poly(&mut r, &ring, 3, 2);
        let g = random_poly(&mut r, &ring, 3, 2);
        assert_eq!(a.act(&(&f * &g)).unwrap(), &a.act(&f).unwrap() * &a.act(&g).unwrap());
        assert_eq!(a.act(&(&f + &g)).unwrap(), &a.act(&f).unwrap() + &a.act(&g).unwrap());
        assert_eq!(
            a.deg_function(&(&f * &g)).unwrap(),
            a.deg_function(&f).unwrap() + a.deg_function(&g).unwrap()
        );
        // deg_t of the action on f is zero exactly when D kills f.
        let invariant = d.kernel_check(&f).unwrap();
        assert_eq!(a.is_invariant(&f).unwrap(), invariant);
        if !f.is_zero() {
            assert_eq!(invariant, a.deg_function(&f).unwrap() == TDegree::Finite(0));
        }
    }
}

#[test]
fn invariant_times_non_invariant_is_not_invariant() {
    let r = ring(&["x", "y", "u", "v"]);
    let d = Derivation::new(&r, vec![p(&r, "0"), p(&r, "0"), p(&r, "y"), p(&r, "-x")]).unwrap();
    let a = action_of(&d);
    let invariants = ["x", "y", "x*u + y*v", "x^2 - 3", "(x*u + y*v)^2 + y"];
    let others = ["u", "v", "u + x", "u*v", "u^2 + y"];
    for i in invariants {
        assert!(a.is_invariant(&p(&r, i)).unwrap());
        for o in others {
            assert!(!a.is_invariant(&p(&r, o)).unwrap());
            assert!(!a.is_invariant(&(&p(&r, i) * &p(&r, o))).unwrap());
        }
    }
}

#[test]
fn jacobian_derivation_matches_cofactor_oracle() {
    let mut r = rng(34);
    for trial in 0..50 {
        let n = 2 + trial % 3;
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ring = Ring::new(names).unwrap();
        let fs: Vec<Polynomial> = (0..n - 1).map(|_| random_poly(&mut r, &ring, 3, 2)).collect();
        let d = jacobian_derivation(&PolyMap::new(&ring, fs.clone()).unwrap()).unwrap();
        let g = random_poly(&mut r, &ring, 3, 2);
        let mut args = vec![g.clone()];
        args.extend(fs.iter().cloned());
        assert_eq!(d.apply(&g, 1).unwrap(), cofactor_jacobian(&ring, &args));
        for f in &fs {
            assert!(d.kernel_check(f).unwrap());
        }
    }
}

#[test]
fn zero_derivation_gives_the_trivial_action() {
    let r = ring(&["x", "y"]);
    let a = action_of(&Derivation::zero(&r));
    assert_eq!(a, GaAction::identity(&r));
    assert_eq!(a.component_strings(), ["x", "y"]);
}

#[test]
fn non_nilpotent_derivations_stay_inconclusive() {
    let r = ring(&["x", "y"]);
    for images in [["x", "0"], ["y", "x"], ["1", "y^2"]] {
        let d = Derivation::new(&r, images.iter().map(|s| p(&r, s)).collect()).unwrap();
        let cert = d.certify_locally_nilpotent(12);
        assert!(!cert.is_certified(), "{images:?}");
        assert!(exponentiate(&d, &cert).is_err());
    }
}
