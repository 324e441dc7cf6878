//! Constructions attached to a quotient-type map `F = (f_1, .., f_{n-1})`.
//!
//! - the Jacobian derivation `D(R) = J(R, f_1, .., f_{n-1})`, which kills every
//!   `f_i`;
//! - local slices: `f` with `D(f) ≠ 0` and `D²(f) = 0`;
//! - the slice coefficient `c = D(f)` written as a polynomial in `F`;
//! - the localization identity `c^k R = T(f, f_1, .., f_m)`;
//! - per-candidate checks of claimed invariant generators.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::action::GaAction;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::groebner::subalgebra_membership_in;
use crate::poly::{jacobian_det, Monomial, PolyMap, Polynomial, Rational, Ring};

pub const DEFAULT_SLICE_DEGREE_BOUND: u32 = 3;
pub const DEFAULT_POWER_BOUND: u32 = 8;

/// `D(x_i) = J(x_i, f_1, .., f_{n-1})`.
pub fn jacobian_derivation(map: &PolyMap) -> Result<Derivation> {
    map.require_quotient_shape()?;
    let ring = map.ring();
    let images = (0..ring.arity())
        .map(|i| {
            let mut rows = Vec::with_capacity(ring.arity());
            rows.push(ring.var(i));
            rows.extend(map.components().iter().cloned());
            jacobian_det(ring, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(ring, images)
}

pub fn check_map_invariant(action: &GaAction, map: &PolyMap) -> Result<bool> {
    for f in map.components() {
        if !action.is_invariant(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSlice {
    pub f: Polynomial,
    /// `D(f)`, nonzero and in the kernel of `D`.
    pub c: Polynomial,
    /// `P` over the map's target ring with `P(F) = c`, once known.
    pub p: Option<Polynomial>,
}

/// Monomials of total degree `d` in `n` variables, in descending grevlex
/// order (so `x_1` comes before `x_2` in degree one).
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left);
            out.push(Monomial::from_exponents(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(n, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, d, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Basis of the null space of `matrix` (rows × cols), one vector per free
/// column, in column order.
fn null_space(mut matrix: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(r) = (row..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, r);
        let inv = matrix[row][col].recip();
        for v in matrix[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = matrix[row].clone();
        for (r, other) in matrix.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (v, p) in other.iter_mut().zip(&pivot_row).skip(col) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == matrix.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -matrix[r][free].clone();
            }
            v
        })
        .collect()
}

/// Searches polynomials of total degree ≤ `degree_bound` for a local slice,
/// lowest degree first.
///
/// `D²(f) = 0` is linear in the coefficients of `f`; its solution space is
/// scanned basis vector by basis vector for one with `D(f) ≠ 0`. If every
/// basis vector is killed by `D` so is the whole space, so the scan is
/// complete.
pub fn find_local_slice(d: &Derivation, degree_bound: u32) -> Result<Option<LocalSlice>> {
    if d.is_zero() {
        return Ok(None);
    }
    let ring = d.ring();
    let n = ring.arity();
    for deg in 1..=degree_bound {
        let monomials: Vec<Monomial> = (0..=deg).flat_map(|k| monomials_of_degree(n, k)).collect();
        let candidates: Vec<Polynomial> = monomials
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), Rational::one()))
            .collect();
        let second = candidates
            .iter()
            .map(|m| d.apply(m, 2))
            .collect::<Result<Vec<_>>>()?;

        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in &second {
            for (m, _) in p.terms() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        let mut matrix = vec![vec![Rational::zero(); candidates.len()]; rows.len()];
        for (j, p) in second.iter().enumerate() {
            for (m, c) in p.terms() {
                matrix[rows[m]][j] = c.clone();
            }
        }

        for v in null_space(matrix, candidates.len()) {
            let f = candidates
                .iter()
                .zip(&v)
                .filter(|(_, a)| !a.is_zero())
                .fold(Polynomial::zero(ring), |acc, (m, a)| &acc + &m.scale(a));
            let c = d.apply(&f, 1)?;
            if !c.is_zero() {
                debug_assert!(d.apply(&c, 1)?.is_zero());
                return Ok(Some(LocalSlice { f, c, p: None }));
            }
        }
    }
    Ok(None)
}

fn require_kernel(d: &Derivation, p: &Polynomial, what: &str) -> Result<()> {
    if d.kernel_check(p)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} `{p}` is not in the kernel of the derivation")))
    }
}

/// `P` with `P(f_1, .., f_m) = c`, over the map's target ring.
pub fn slice_coefficient_as_p(
    d: &Derivation,
    slice: &LocalSlice,
    map: &PolyMap,
) -> Result<Option<Polynomial>> {
    d.ring().check_same(map.ring())?;
    require_kernel(d, &slice.c, "slice coefficient")?;
    for f in map.components() {
        require_kernel(d, f, "map component")?;
    }
    subalgebra_membership_in(&slice.c, map.components(), map.target())
}

/// `c^k R = T(f, f_1, .., f_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationWitness {
    pub exponent: u32,
    /// Over [`LocalizationWitness::ring`]: the slice tag followed by the map's
    /// target variables.
    pub expression: Polynomial,
}

impl LocalizationWitness {
    pub fn ring(&self) -> &Ring {
        self.expression.ring()
    }
}

/// Smallest `k ≤ power_bound` with `c^k R ∈ Q[f, f_1, .., f_m]`, with the
/// expressing polynomial. The slice tag is named `s` unless that clashes with
/// a target name.
pub fn verify_localization_identity(
    d: &Derivation,
    slice: &LocalSlice,
    map: &PolyMap,
    r: &Polynomial,
    power_bound: u32,
) -> Result<Option<LocalizationWitness>> {
    if slice.p.is_none() {
        return Err(Error::Precondition(
            "slice coefficient has not been expressed through the map".into(),
        ));
    }
    d.ring().check_same(map.ring())?;
    d.ring().check_same(r.ring())?;
    let tag = map.target().fresh_name("s", &[]);
    let target = Ring::new(
        std::iter::once(tag).chain(map.target().names().iter().cloned()),
    )?;
    let mut gens = Vec::with_capacity(map.len() + 1);
    gens.push(slice.f.clone());
    gens.extend(map.components().iter().cloned());

    let mut scaled = r.clone();
    for k in 0..=power_bound {
        if k > 0 {
            scaled = scaled.checked_mul(&slice.c)?;
        }
        if let Some(expression) = subalgebra_membership_in(&scaled, &gens, &target)? {
            return Ok(Some(LocalizationWitness {
                exponent: k,
                expression,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub candidate: Polynomial,
    pub invariant: bool,
    /// Expression over the map's target ring, if the candidate lies in the
    /// subalgebra generated by the map's components.
    pub member: Option<Polynomial>,
}

/// Checks each candidate for invariance and for membership in `Q[F]`. This
/// does not decide whether `F` generates the whole ring of invariants.
pub fn verify_invariant_generators(
    action: &GaAction,
    map: &PolyMap,
    candidates: &[Polynomial],
) -> Result<Vec<GeneratorCheck>> {
    action.base_ring().check_same(map.ring())?;
    candidates
        .iter()
        .map(|r| {
            Ok(GeneratorCheck {
                candidate: r.clone(),
                invariant: action.is_invariant(r)?,
                member: subalgebra_membership_in(r, map.components(), map.target())?,
            })
        })
        .collect()
}
