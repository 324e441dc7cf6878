//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] always carries its [`Ring`] (the ordered list of variable
//! names). Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord`
//! is graded reverse lexicographic, so iteration order is canonical.
//!
//! Fallible operations (`checked_*`, [`Polynomial::compose`], ...) return
//! [`Error`] on ring mismatch or exponent overflow. The `std::ops` operator
//! impls panic on the same conditions and are meant for code that has already
//! established the operands share a ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field: arbitrary-precision rationals, always normalized
/// (positive denominator, coprime parts, zero as `0/1`).
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered, named set of polynomial variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Ring {
            names: names.into(),
        })
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, index: usize) -> Polynomial {
        Polynomial::var(self, index).expect("variable index in range")
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.arity()).map(|i| self.var(i)).collect()
    }

    /// A name not already used by this ring (nor listed in `avoid`), derived
    /// from `base`.
    pub fn fresh_name(&self, base: &str, avoid: &[String]) -> String {
        let taken = |s: &str| self.index_of(s).is_some() || avoid.iter().any(|a| a == s);
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|s| !taken(s))
            .expect("unbounded supply of names")
    }

    /// This ring with `extra` variables appended.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        Ring::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.names.join(", "),
                right: other.names.join(", "),
            })
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.names.join(", "))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

/// Exponent vector. `Ord` is graded reverse lexicographic with the first ring
/// variable largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        let m = Monomial(exps.into_boxed_slice());
        // total degree must also fit
        m.0.iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(Error::ExponentOverflow)?;
        Ok(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

pub(crate) fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Q[x_1, .., x_n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn var(ring: &Ring, index: usize) -> Result<Self> {
        if index >= ring.arity() {
            return Err(Error::VariableIndex {
                index,
                arity: ring.arity(),
            });
        }
        let mut p = Self::zero(ring);
        p.terms
            .insert(Monomial::var(ring.arity(), index), Rational::one());
        Ok(p)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.arity() != ring.arity() {
                return Err(Error::LengthMismatch {
                    what: "exponent vector length",
                    expected: ring.arity(),
                    found: m.arity(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one(self.ring.arity())))
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in one variable, `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[index]).max()
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.arity())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, mut k: u32) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = BTreeMap::new();
        for (n, a) in &self.terms {
            terms.insert(n.checked_mul(m)?, a * c);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Scales so that the leading (grevlex) coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.ring.arity() {
            return Err(Error::VariableIndex {
                index,
                arity: self.ring.arity(),
            });
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    /// Substitutes `images[i]` for the `i`-th variable. The images must share
    /// one ring, which becomes the ring of the result.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::LengthMismatch {
                what: "number of substitution images",
                expected: self.ring.arity(),
                found: images.len(),
            });
        }
        let target = images[0].ring.clone();
        for img in &images[1..] {
            target.check_same(&img.ring)?;
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(&target)])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.checked_mul(&powers[i][e])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.arity() {
            return Err(Error::LengthMismatch {
                what: "point dimension",
                expected: self.ring.arity(),
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable
    /// `var_map[i]` of the target ring.
    pub fn embed(&self, target: &Ring, var_map: &[usize]) -> Result<Polynomial> {
        if var_map.len() != self.ring.arity() {
            return Err(Error::LengthMismatch {
                what: "variable map length",
                expected: self.ring.arity(),
                found: var_map.len(),
            });
        }
        if let Some(&bad) = var_map.iter().find(|&&j| j >= target.arity()) {
            return Err(Error::VariableIndex {
                index: bad,
                arity: target.arity(),
            });
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.arity()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[var_map[i]] = exps[var_map[i]]
                    .checked_add(e)
                    .ok_or(Error::ExponentOverflow)?;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`embed`](Self::embed) for polynomials that only involve
    /// variables in the image of `var_map`; `None` if another variable occurs.
    pub fn restrict(&self, target: &Ring, var_map: &[usize]) -> Option<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let exps = m.exponents();
            let used: u32 = var_map.iter().map(|&j| exps[j]).sum();
            if used != m.degree() {
                return None;
            }
            let small: Vec<u32> = var_map.iter().map(|&j| exps[j]).collect();
            out.add_term(Monomial::from_exponents(small), c.clone());
        }
        Some(out)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.ring.check_same(&divisor.ring)?;
        let Some((lm, lc)) = divisor.leading_term() else {
            return Ok(None);
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = m.div(lm);
            let qc = c / lc;
            rem = rem.checked_sub(&divisor.mul_term(&qm, &qc)?)?;
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Largest absolute numerator or denominator among the coefficients; a
    /// rough size measure.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs().max(c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_polynomial(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_polynomial(self))
    }
}

/// Operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(p: &Polynomial, q: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Determinant of a square matrix of polynomials over a common ring, by
/// fraction-free (Bareiss) elimination.
pub fn determinant(ring: &Ring, matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                what: "matrix row length",
                expected: n,
                found: row.len(),
            });
        }
        for p in row {
            ring.check_same(p.ring())?;
        }
    }
    if n == 0 {
        return Ok(Polynomial::one(ring));
    }
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(ring)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(&m[k][k])?
                    .checked_sub(&m[i][k].checked_mul(&m[k][j])?)?;
                m[i][j] = num
                    .div_exact(&prev)?
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Matrix of partial derivatives: row `r` is the gradient of `fs[r]`, columns
/// in ring variable order.
pub fn jacobian_matrix(ring: &Ring, fs: &[Polynomial]) -> Result<Vec<Vec<Polynomial>>> {
    fs.iter()
        .map(|f| {
            ring.check_same(f.ring())?;
            (0..ring.arity())
                .map(|j| f.partial_derivative(j))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Jacobian determinant of `n` polynomials in `n` variables. Rows follow the
/// argument order, columns the ring's variable order.
pub fn jacobian_det(ring: &Ring, fs: &[Polynomial]) -> Result<Polynomial> {
    if fs.len() != ring.arity() {
        return Err(Error::LengthMismatch {
            what: "number of polynomials in a Jacobian determinant",
            expected: ring.arity(),
            found: fs.len(),
        });
    }
    determinant(ring, &jacobian_matrix(ring, fs)?)
}

/// Ordered tuple of polynomials over a common source ring, with names for the
/// target coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    ring: Ring,
    components: Vec<Polynomial>,
    target: Ring,
}

impl PolyMap {
    /// Target coordinates default to `t1, .., tm`.
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<Self> {
        let names: Vec<String> = (1..=components.len()).map(|i| format!("t{i}")).collect();
        Self::with_target_names(ring, components, names)
    }

    pub fn with_target_names(
        ring: &Ring,
        components: Vec<Polynomial>,
        target_names: Vec<String>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidRing("a map needs at least one component".into()));
        }
        if target_names.len() != components.len() {
            return Err(Error::LengthMismatch {
                what: "number of target names",
                expected: components.len(),
                found: target_names.len(),
            });
        }
        for c in &components {
            ring.check_same(c.ring())?;
        }
        Ok(PolyMap {
            ring: ring.clone(),
            components,
            target: Ring::new(target_names)?,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Ring of the target coordinates.
    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// Checks `m = n - 1`, the shape of a quotient map.
    pub fn require_quotient_shape(&self) -> Result<()> {
        let n = self.ring.arity();
        if n < 2 || self.components.len() != n - 1 {
            return Err(Error::LengthMismatch {
                what: "number of map components (arity - 1)",
                expected: n.saturating_sub(1),
                found: self.components.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }
}
