//! Polynomial actions of the additive group on affine space.
//!
//! An action is stored as its components `φ_i(t; x)`, polynomials over the
//! ring `x_1, .., x_n, t`. Construction always verifies `φ(0; x) = x` and the
//! group law `φ(a; φ(b; x)) = φ(a + b; x)` as polynomial identities.

use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::One;

use crate::derivation::{Derivation, NilpotencyCertificate};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational, Ring};
use crate::text::format_in_parameter;

#[derive(Clone, Debug)]
pub struct GaAction {
    base: Ring,
    ring: Ring,
    components: Vec<Polynomial>,
    certificate: Option<NilpotencyCertificate>,
}

/// `deg_t` of a polynomial, with `-∞` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TDegree {
    NegInfinity,
    Finite(u32),
}

impl Add for TDegree {
    type Output = TDegree;
    fn add(self, rhs: TDegree) -> TDegree {
        match (self, rhs) {
            (TDegree::Finite(a), TDegree::Finite(b)) => TDegree::Finite(a + b),
            _ => TDegree::NegInfinity,
        }
    }
}

impl fmt::Display for TDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TDegree::NegInfinity => f.write_str("-inf"),
            TDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `φ_i = Σ_k t^k D^k(x_i) / k!`, read off the certificate's chains.
pub fn exponentiate(d: &Derivation, cert: &NilpotencyCertificate) -> Result<GaAction> {
    if !cert.is_certified() || cert.derivation() != d {
        return Err(Error::Uncertified);
    }
    let base = d.ring();
    let t = base.fresh_name("t", &[]);
    let ring = base.extend(&[t])?;
    let n = base.arity();
    let inc: Vec<usize> = (0..n).collect();
    let tvar = ring.var(n);
    let mut components = Vec::with_capacity(n);
    for chain in cert.chains() {
        let mut phi = Polynomial::zero(&ring);
        let mut t_pow = Polynomial::one(&ring);
        let mut factorial = BigUint::one();
        for (k, dk) in chain.iter().enumerate() {
            if k > 0 {
                t_pow = &t_pow * &tvar;
                factorial *= BigUint::from(k);
            }
            let coef = Rational::from_integer(factorial.clone().into()).recip();
            phi = &phi + &(&t_pow * &dk.embed(&ring, &inc)?).scale(&coef);
        }
        components.push(phi);
    }
    let mut action = GaAction::from_components(base, ring, components)?;
    action.certificate = Some(cert.clone());
    Ok(action)
}

impl GaAction {
    /// Builds an action from explicit components over `ring`, which must be
    /// `base` followed by exactly one parameter variable. Fails unless both
    /// action axioms hold.
    pub fn from_components(base: &Ring, ring: Ring, components: Vec<Polynomial>) -> Result<Self> {
        let n = base.arity();
        if ring.arity() != n + 1 || ring.names()[..n] != base.names()[..] {
            return Err(Error::InvalidRing(format!(
                "action ring [{ring}] must be [{base}] plus one parameter"
            )));
        }
        if components.len() != n {
            return Err(Error::LengthMismatch {
                what: "number of action components",
                expected: n,
                found: components.len(),
            });
        }
        for c in &components {
            ring.check_same(c.ring())?;
        }
        let action = GaAction {
            base: base.clone(),
            ring,
            components,
            certificate: None,
        };
        if !action.check_identity()? {
            return Err(Error::ActionAxiom("φ(0; x) ≠ x".into()));
        }
        if !action.check_group_law()? {
            return Err(Error::ActionAxiom("φ(a; φ(b; x)) ≠ φ(a + b; x)".into()));
        }
        Ok(action)
    }

    /// The trivial action `φ(t; x) = x`.
    pub fn identity(base: &Ring) -> Self {
        let d = Derivation::zero(base);
        let cert = d.certify_locally_nilpotent(1);
        exponentiate(&d, &cert).expect("zero derivation is certified")
    }

    pub fn base_ring(&self) -> &Ring {
        &self.base
    }

    /// Ring `x_1, .., x_n, t` of the components.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn parameter_index(&self) -> usize {
        self.base.arity()
    }

    pub fn parameter(&self) -> Polynomial {
        self.ring.var(self.parameter_index())
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn certificate(&self) -> Option<&NilpotencyCertificate> {
        self.certificate.as_ref()
    }

    /// Components printed in ascending powers of `t`.
    pub fn component_strings(&self) -> Vec<String> {
        self.components
            .iter()
            .map(|c| format_in_parameter(c, self.parameter_index()))
            .collect()
    }

    fn include(&self, p: &Polynomial) -> Result<Polynomial> {
        self.base.check_same(p.ring())?;
        let inc: Vec<usize> = (0..self.base.arity()).collect();
        p.embed(&self.ring, &inc)
    }

    /// `p ∘ φ`, a polynomial in `x` and `t`.
    pub fn act(&self, p: &Polynomial) -> Result<Polynomial> {
        self.base.check_same(p.ring())?;
        p.compose(&self.components)
    }

    pub fn is_invariant(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.act(p)? == self.include(p)?)
    }

    /// `deg_t(p ∘ φ)`; zero exactly on nonzero invariants.
    pub fn deg_function(&self, p: &Polynomial) -> Result<TDegree> {
        Ok(match self.act(p)?.degree_in(self.parameter_index()) {
            Some(d) => TDegree::Finite(d),
            None => TDegree::NegInfinity,
        })
    }

    /// `φ(0; x) = x`.
    pub fn check_identity(&self) -> Result<bool> {
        let mut at_zero = self.base.vars();
        at_zero.push(Polynomial::zero(&self.base));
        for (i, c) in self.components.iter().enumerate() {
            if c.compose(&at_zero)? != self.base.var(i) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `φ(a; φ(b; x)) = φ(a + b; x)` in `Q[x, a, b]`.
    pub fn check_group_law(&self) -> Result<bool> {
        let n = self.base.arity();
        let a_name = self.base.fresh_name("a", &[]);
        let b_name = self.base.fresh_name("b", std::slice::from_ref(&a_name));
        let two = self.base.extend(&[a_name, b_name])?;
        let (a, b) = (two.var(n), two.var(n + 1));
        let xs: Vec<Polynomial> = (0..n).map(|i| two.var(i)).collect();

        let with_param = |param: &Polynomial, inner: &[Polynomial]| -> Result<Vec<Polynomial>> {
            let mut images = inner.to_vec();
            images.push(param.clone());
            self.components.iter().map(|c| c.compose(&images)).collect()
        };
        let phi_b = with_param(&b, &xs)?;
        let lhs = with_param(&a, &phi_b)?;
        let rhs = with_param(&(&a + &b), &xs)?;
        Ok(lhs == rhs)
    }
}

impl PartialEq for GaAction {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.components == other.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn derivation(names: &[&str], images: &[&str]) -> Derivation {
        let r = Ring::new(names.iter().copied()).unwrap();
        let imgs = images.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        Derivation::new(&r, imgs).unwrap()
    }

    fn exp(d: &Derivation) -> GaAction {
        exponentiate(d, &d.certify_locally_nilpotent(64)).unwrap()
    }

    #[test]
    fn translation() {
        let d = derivation(&["x1", "x2", "x3"], &["1", "0", "0"]);
        let a = exp(&d);
        assert_eq!(a.component_strings(), ["x1 + t", "x2", "x3"]);
        let x1 = d.ring().var(0);
        assert_eq!(a.act(&x1).unwrap(), parse_polynomial("x1 + t", a.ring()).unwrap());
        assert!(!a.is_invariant(&x1).unwrap());
        assert!(a.is_invariant(&Polynomial::one(d.ring())).unwrap());
    }

    #[test]
    fn rotation_like_action() {
        let d = derivation(&["x", "y", "u", "v"], &["0", "0", "y", "-x"]);
        let a = exp(&d);
        assert_eq!(a.component_strings(), ["x", "y", "u + t*y", "v - t*x"]);
        let r = d.ring();
        let inv = parse_polynomial("x*u + y*v", r).unwrap();
        assert_eq!(a.act(&inv).unwrap(), parse_polynomial("x*u + y*v", a.ring()).unwrap());
        assert!(a.is_invariant(&r.var(0)).unwrap());
        assert_eq!(a.deg_function(&inv).unwrap(), TDegree::Finite(0));
        assert_eq!(a.deg_function(&r.var(3)).unwrap(), TDegree::Finite(1));
        assert_eq!(a.deg_function(&Polynomial::zero(r)).unwrap(), TDegree::NegInfinity);
    }

    #[test]
    fn factorials_are_exact() {
        let d = derivation(&["x", "y", "z"], &["0", "x", "y"]);
        let a = exp(&d);
        assert_eq!(a.component_strings(), ["x", "y + t*x", "z + t*y + 1/2*t^2*x"]);
    }

    #[test]
    fn identity_action() {
        let r = Ring::new(["x", "y"]).unwrap();
        let a = GaAction::identity(&r);
        let p = parse_polynomial("x^2 - 3*y", &r).unwrap();
        assert!(a.is_invariant(&p).unwrap());
        assert_eq!(a.component_strings(), ["x", "y"]);
    }

    #[test]
    fn rejects_uncertified() {
        let e = derivation(&["x"], &["x"]);
        let cert = e.certify_locally_nilpotent(5);
        assert_eq!(exponentiate(&e, &cert).unwrap_err(), Error::Uncertified);
        let other = derivation(&["x"], &["1"]);
        let cert = other.certify_locally_nilpotent(5);
        let d = derivation(&["x"], &["0"]);
        assert_eq!(exponentiate(&d, &cert).unwrap_err(), Error::Uncertified);
    }

    #[test]
    fn rejects_non_actions() {
        let base = Ring::new(["x"]).unwrap();
        let ring = base.extend(&["t"]).unwrap();
        // x + t^2 violates the group law
        let bad = parse_polynomial("x + t^2", &ring).unwrap();
        assert!(matches!(
            GaAction::from_components(&base, ring.clone(), vec![bad]),
            Err(Error::ActionAxiom(_))
        ));
        let bad = parse_polynomial("x + 1 + t", &ring).unwrap();
        assert!(GaAction::from_components(&base, ring.clone(), vec![bad]).is_err());
        let good = parse_polynomial("x - 2*t", &ring).unwrap();
        assert!(GaAction::from_components(&base, ring, vec![good]).is_ok());
    }

    #[test]
    fn parameter_name_avoids_collisions() {
        let d = derivation(&["t", "x"], &["0", "t"]);
        let a = exp(&d);
        assert_eq!(a.ring().name(2), "t_1");
        assert_eq!(a.component_strings(), ["t", "x + t_1*t"]);
    }
}
