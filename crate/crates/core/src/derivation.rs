//! Derivations of `Q[x_1, .., x_n]` and certificates of local nilpotency.
//!
//! A derivation is determined by the images of the variables; on an arbitrary
//! polynomial it acts as `D(p) = Σ D(x_i) ∂p/∂x_i`.
//!
//! Local nilpotency is only ever certified, never refuted: the certificate
//! records the chains `x_i, D(x_i), D²(x_i), ..` down to zero. If every
//! generator is killed by some power of `D`, Leibniz's rule bounds the power
//! needed for any polynomial, so the derivation is locally nilpotent.

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::poly::{Polynomial, Ring};

pub const DEFAULT_NILPOTENCY_BOUND: usize = 64;
pub const DEFAULT_DEGREE_CAP: u32 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != ring.arity() {
            return Err(Error::LengthMismatch {
                what: "number of derivation images",
                expected: ring.arity(),
                found: images.len(),
            });
        }
        for p in &images {
            ring.check_same(p.ring())?;
        }
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![Polynomial::zero(ring); ring.arity()],
        }
    }

    /// `∂/∂x_index`.
    pub fn partial(ring: &Ring, index: usize) -> Result<Self> {
        let mut images = vec![Polynomial::zero(ring); ring.arity()];
        *images.get_mut(index).ok_or(Error::VariableIndex {
            index,
            arity: ring.arity(),
        })? = Polynomial::one(ring);
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    fn apply_once(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = p.partial_derivative(i)?;
            if !d.is_zero() {
                out = out.checked_add(&img.checked_mul(&d)?)?;
            }
        }
        Ok(out)
    }

    /// `D^k(p)` under the default degree cap.
    pub fn apply(&self, p: &Polynomial, k: usize) -> Result<Polynomial> {
        self.apply_with_cap(p, k, DEFAULT_DEGREE_CAP)
    }

    /// `D^k(p)`; fails with [`Error::DegreeExplosion`] as soon as an iterate
    /// exceeds total degree `cap`.
    pub fn apply_with_cap(&self, p: &Polynomial, k: usize, cap: u32) -> Result<Polynomial> {
        self.ring.check_same(p.ring())?;
        let mut cur = p.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_once(&cur)?;
            if let Some(degree) = cur.total_degree().filter(|&d| d > cap) {
                return Err(Error::DegreeExplosion { degree, cap });
            }
        }
        Ok(cur)
    }

    /// `D(p) == 0`.
    pub fn kernel_check(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.apply(p, 1)?.is_zero())
    }

    pub fn certify_locally_nilpotent(&self, bound: usize) -> NilpotencyCertificate {
        self.certify_with_cap(bound, DEFAULT_DEGREE_CAP)
    }

    /// Follows `D^k(x_i)` for `k ≤ bound`. Certified iff every chain reaches
    /// zero within the bound; a degree explosion is reported as inconclusive.
    pub fn certify_with_cap(&self, bound: usize, cap: u32) -> NilpotencyCertificate {
        let mut chains = Vec::with_capacity(self.ring.arity());
        let mut orders = Vec::with_capacity(self.ring.arity());
        let mut failure = None;
        for i in 0..self.ring.arity() {
            let mut chain = vec![self.ring.var(i)];
            let mut order = None;
            for k in 1..=bound {
                let next = match self.apply_with_cap(chain.last().unwrap(), 1, cap) {
                    Ok(p) => p,
                    Err(e) => {
                        failure = Some(e.to_string());
                        break;
                    }
                };
                if next.is_zero() {
                    order = Some(k);
                    break;
                }
                chain.push(next);
            }
            chains.push(chain);
            match order {
                Some(k) => orders.push(k),
                None => {
                    return NilpotencyCertificate {
                        derivation: self.clone(),
                        status: NilpotencyStatus::Inconclusive {
                            bound,
                            reason: failure.unwrap_or_else(|| {
                                format!("D^{bound}({}) is nonzero", self.ring.name(i))
                            }),
                        },
                        chains,
                    };
                }
            }
        }
        NilpotencyCertificate {
            derivation: self.clone(),
            status: NilpotencyStatus::Certified { orders },
            chains,
        }
    }

    /// The ideal `(D(x_1), .., D(x_n))`, whose zero set is the fixed locus of
    /// the associated action.
    pub fn fixed_locus(&self) -> Result<FixedLocus> {
        let basis = GroebnerBasis::new(&self.ring, &self.images, MonomialOrder::Grevlex)?;
        Ok(FixedLocus {
            ideal: self.images.clone(),
            dimension: basis.dimension(),
            fixed_point_free: basis.is_unit(),
            basis,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotencyStatus {
    /// `orders[i]` is the least `k` with `D^k(x_i) = 0`.
    Certified { orders: Vec<usize> },
    Inconclusive { bound: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    derivation: Derivation,
    status: NilpotencyStatus,
    /// `chains[i] = [x_i, D(x_i), .., D^{n_i - 1}(x_i)]`, all nonzero.
    chains: Vec<Vec<Polynomial>>,
}

impl NilpotencyCertificate {
    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn status(&self) -> &NilpotencyStatus {
        &self.status
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.status, NilpotencyStatus::Certified { .. })
    }

    pub fn orders(&self) -> Option<&[usize]> {
        match &self.status {
            NilpotencyStatus::Certified { orders } => Some(orders),
            NilpotencyStatus::Inconclusive { .. } => None,
        }
    }

    pub fn chains(&self) -> &[Vec<Polynomial>] {
        &self.chains
    }

    /// Re-checks the witness chains against the derivation.
    pub fn recheck(&self) -> bool {
        let Some(orders) = self.orders() else {
            return false;
        };
        let d = &self.derivation;
        self.chains.len() == orders.len()
            && self.chains.iter().zip(orders).enumerate().all(|(i, (chain, &n))| {
                chain.len() == n
                    && chain[0] == d.ring.var(i)
                    && chain.iter().all(|p| !p.is_zero())
                    && chain
                        .windows(2)
                        .all(|w| d.apply(&w[0], 1).is_ok_and(|q| q == w[1]))
                    && d.apply(chain.last().unwrap(), 1).is_ok_and(|q| q.is_zero())
            })
    }

    /// Upper bound on the least `k` with `D^k(p) = 0`:
    /// `Σ (n_i - 1) · deg(p) + 1`.
    pub fn nilpotency_bound_for(&self, p: &Polynomial) -> Option<usize> {
        let orders = self.orders()?;
        let deg = p.total_degree().unwrap_or(0) as usize;
        Some(orders.iter().map(|n| n - 1).sum::<usize>() * deg + 1)
    }
}

#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub ideal: Vec<Polynomial>,
    pub basis: GroebnerBasis,
    pub dimension: i64,
    pub fixed_point_free: bool,
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

    #[test]
    fn apply_examples() {
        let r = Ring::new(["x1", "x2"]).unwrap();
        let d = Derivation::partial(&r, 0).unwrap();
        let x1 = r.var(0);
        assert_eq!(d.apply(&(&x1 * &x1), 1).unwrap(), &x1 + &x1);

        let d = derivation(&["x", "y", "u", "v"], &["0", "0", "y", "-x"]);
        let inv = parse_polynomial("x*u + y*v", d.ring()).unwrap();
        assert!(d.apply(&inv, 1).unwrap().is_zero());

        let d = derivation(&["x", "y", "z"], &["0", "x", "y"]);
        let z = d.ring().var(2);
        assert_eq!(d.apply(&z, 2).unwrap(), d.ring().var(0));
        assert!(d.apply(&z, 3).unwrap().is_zero());
    }

    #[test]
    fn certify_examples() {
        let d = derivation(&["x1", "x2", "x3"], &["1", "0", "0"]);
        let cert = d.certify_locally_nilpotent(DEFAULT_NILPOTENCY_BOUND);
        assert_eq!(cert.orders(), Some(&[2, 1, 1][..]));
        assert!(cert.recheck());

        let d = derivation(&["x", "y", "u", "v"], &["0", "0", "y", "-x"]);
        let cert = d.certify_locally_nilpotent(DEFAULT_NILPOTENCY_BOUND);
        assert_eq!(cert.orders(), Some(&[1, 1, 2, 2][..]));
        assert!(cert.recheck());

        let e = derivation(&["x"], &["x"]);
        let cert = e.certify_locally_nilpotent(10);
        assert!(matches!(cert.status(), NilpotencyStatus::Inconclusive { bound: 10, .. }));
        assert!(!cert.recheck());
    }

    #[test]
    fn degree_explosion() {
        let d = derivation(&["x"], &["x^2"]);
        let x = d.ring().var(0);
        assert!(matches!(
            d.apply_with_cap(&x, 10, 5),
            Err(Error::DegreeExplosion { degree: 6, cap: 5 })
        ));
        let cert = d.certify_with_cap(100, 5);
        assert!(!cert.is_certified());
    }

    #[test]
    fn kernel_examples() {
        let d = derivation(&["x", "y", "u", "v"], &["0", "0", "y", "-x"]);
        let r = d.ring().clone();
        assert!(d.kernel_check(&r.var(0)).unwrap());
        assert!(!d.kernel_check(&r.var(2)).unwrap());
        assert!(d.kernel_check(&parse_polynomial("17/3", &r).unwrap()).unwrap());
    }

    #[test]
    fn fixed_locus_examples() {
        let d = derivation(&["x1", "x2", "x3"], &["1", "0", "0"]);
        let fl = d.fixed_locus().unwrap();
        assert!(fl.fixed_point_free);
        assert_eq!(fl.dimension, -1);

        let d = derivation(&["x", "y", "u", "v"], &["0", "0", "y", "-x"]);
        let fl = d.fixed_locus().unwrap();
        assert!(!fl.fixed_point_free);
        assert_eq!(fl.dimension, 2);
        let r = d.ring();
        assert_eq!(
            fl.basis,
            GroebnerBasis::new(r, &[r.var(0), r.var(1)], MonomialOrder::Grevlex).unwrap()
        );

        let d = derivation(&["x", "y", "z"], &["0", "x", "y"]);
        let fl = d.fixed_locus().unwrap();
        assert_eq!(fl.dimension, 1);
        assert!(!fl.fixed_point_free);
    }

    #[test]
    fn shape_errors() {
        let r = Ring::new(["x", "y"]).unwrap();
        assert!(Derivation::new(&r, vec![r.var(0)]).is_err());
        let other = Ring::new(["a", "b"]).unwrap();
        assert!(Derivation::new(&r, vec![other.var(0), other.var(1)]).is_err());
        assert!(Derivation::partial(&r, 2).is_err());
    }
}
