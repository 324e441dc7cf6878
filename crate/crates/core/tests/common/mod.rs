#![allow(dead_code)]

use gaql_core::{parse_polynomial, Monomial, Polynomial, Rational, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ring(names: &[&str]) -> Ring {
    Ring::new(names.iter().copied()).unwrap()
}

pub fn p(ring: &Ring, src: &str) -> Polynomial {
    parse_polynomial(src, ring).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `terms` terms of total degree at most `deg`, small integer or
/// half-integer coefficients.
pub fn random_poly(rng: &mut impl Rng, ring: &Ring, terms: usize, deg: u32) -> Polynomial {
    let n = ring.arity();
    let count = rng.gen_range(0..=terms);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut left = rng.gen_range(0..=deg);
        let mut exps = vec![0u32; n];
        for e in exps.iter_mut() {
            if left == 0 {
                break;
            }
            let k = rng.gen_range(0..=left);
            *e = k;
            left -= k;
        }
        // Shuffle which variables get the degree.
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            exps.swap(i, j);
        }
        let num = rng.gen_range(-5i64..=5);
        let den = if rng.gen_bool(0.2) { 2 } else { 1 };
        out.push((
            Monomial::from_exponents(exps),
            Rational::new(BigInt::from(num), BigInt::from(den)),
        ));
    }
    Polynomial::from_terms(ring, out).unwrap()
}

/// Proptest strategy over polynomials in `ring`.
pub fn arb_poly(ring: Ring, terms: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.arity();
    let term = (
        proptest::collection::vec(0..=deg, n),
        -6i64..=6,
        prop_oneof![Just(1i64), Just(1), Just(1), Just(2), Just(3)],
    );
    proptest::collection::vec(term, 0..=terms).prop_map(move |ts| {
        let ts = ts.into_iter().map(|(mut e, a, b)| {
            // Keep total degree within `deg` by trimming from the back.
            let mut total: u32 = e.iter().sum();
            for x in e.iter_mut().rev() {
                if total <= deg {
                    break;
                }
                let cut = (*x).min(total - deg);
                *x -= cut;
                total -= cut;
            }
            (
                Monomial::from_exponents(e),
                Rational::new(BigInt::from(a), BigInt::from(b)),
            )
        });
        Polynomial::from_terms(&ring, ts).unwrap()
    })
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut acc = Polynomial::zero(ring);
    for j in 0..n {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(ring, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Jacobian determinant of `n` polynomials in `n` variables via cofactor
/// expansion of the matrix of partials.
pub fn cofactor_jacobian(ring: &Ring, fs: &[Polynomial]) -> Polynomial {
    let m: Vec<Vec<Polynomial>> = fs
        .iter()
        .map(|f| {
            (0..ring.arity())
                .map(|j| f.partial_derivative(j).unwrap())
                .collect()
        })
        .collect();
    cofactor_det(ring, &m)
}
