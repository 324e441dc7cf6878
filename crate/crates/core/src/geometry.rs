//! Pointwise geometric probes on polynomial maps.
//!
//! A fiber `F^{-1}(y)` is empty over the complex numbers exactly when the
//! ideal `(f_1 - y_1, .., f_m - y_m)` is the unit ideal, which a Gröbner basis
//! over the rationals decides. The singular locus of a map `Q^n → Q^{n-1}` is
//! cut out by the maximal minors of its Jacobian matrix.

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialOrder};
use crate::poly::{determinant, jacobian_matrix, PolyMap, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberStatus {
    Empty,
    Nonempty { dimension: i64 },
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub point: Vec<Rational>,
    pub status: FiberStatus,
    /// Reduced basis of the fiber ideal; `{1}` iff the fiber is empty.
    pub witness: GroebnerBasis,
}

impl FiberReport {
    pub fn is_empty(&self) -> bool {
        self.status == FiberStatus::Empty
    }
}

pub fn fiber_probe(map: &PolyMap, point: &[Rational]) -> Result<FiberReport> {
    fiber_probe_with_order(map, point, MonomialOrder::Grevlex)
}

/// As [`fiber_probe`], with the witness basis computed under `order`. The
/// status does not depend on the order.
pub fn fiber_probe_with_order(
    map: &PolyMap,
    point: &[Rational],
    order: MonomialOrder,
) -> Result<FiberReport> {
    if point.len() != map.len() {
        return Err(Error::LengthMismatch {
            what: "fiber point dimension",
            expected: map.len(),
            found: point.len(),
        });
    }
    let witness = GroebnerBasis::new(map.ring(), &fiber_ideal(map, point), order)?;
    let status = if witness.is_unit() {
        FiberStatus::Empty
    } else {
        FiberStatus::Nonempty {
            dimension: witness.dimension(),
        }
    };
    Ok(FiberReport {
        point: point.to_vec(),
        status,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    /// Maximal minors of the Jacobian matrix; the minor deleting column `j`
    /// comes `j`-th.
    pub minors: Vec<Polynomial>,
    pub basis: GroebnerBasis,
    /// Dimension of the singular locus, `-1` when it is empty.
    pub dimension: i64,
    /// `n - dimension`, or `n + 1` for an empty locus.
    pub codimension: i64,
    pub nonsingular_in_codim_1: bool,
}

pub fn singular_locus(map: &PolyMap) -> Result<SingularityReport> {
    singular_locus_with_order(map, MonomialOrder::Grevlex)
}

pub fn singular_locus_with_order(map: &PolyMap, order: MonomialOrder) -> Result<SingularityReport> {
    map.require_quotient_shape()?;
    let ring = map.ring();
    let n = ring.arity();
    let jac = jacobian_matrix(ring, map.components())?;
    let minors = (0..n)
        .map(|skip| {
            let sub: Vec<Vec<Polynomial>> = jac
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            determinant(ring, &sub)
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = GroebnerBasis::new(ring, &minors, order)?;
    let dimension = basis.dimension();
    let codimension = if basis.is_unit() {
        n as i64 + 1
    } else {
        n as i64 - dimension
    };
    Ok(SingularityReport {
        nonsingular_in_codim_1: basis.is_unit() || codimension >= 2,
        minors,
        basis,
        dimension,
        codimension,
    })
}

/// Axis-aligned box of rational points: `steps[i]` equally spaced values
/// from `lower[i]` to `upper[i]` inclusive on each axis (a single step means
/// `lower[i]` alone).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
    pub steps: Vec<usize>,
}

impl GridSpec {
    /// The same `[lower, upper]` range with `steps` points on every axis.
    pub fn cube(dim: usize, lower: Rational, upper: Rational, steps: usize) -> Self {
        GridSpec {
            lower: vec![lower; dim],
            upper: vec![upper; dim],
            steps: vec![steps; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    fn validate(&self) -> Result<()> {
        let d = self.lower.len();
        if d == 0 {
            return Err(Error::MalformedGrid("grid has no axes".into()));
        }
        if self.upper.len() != d || self.steps.len() != d {
            return Err(Error::MalformedGrid(format!(
                "axis counts disagree: {} lower, {} upper, {} steps",
                d,
                self.upper.len(),
                self.steps.len()
            )));
        }
        for i in 0..d {
            if self.steps[i] == 0 {
                return Err(Error::MalformedGrid(format!("axis {i} has zero steps")));
            }
            if self.lower[i] > self.upper[i] {
                return Err(Error::MalformedGrid(format!("axis {i} has lower > upper")));
            }
        }
        Ok(())
    }

    fn axis(&self, i: usize) -> Vec<Rational> {
        let n = self.steps[i];
        if n == 1 {
            return vec![self.lower[i].clone()];
        }
        let width = &self.upper[i] - &self.lower[i];
        let denom = Rational::from_integer((n - 1).into());
        (0..n)
            .map(|k| &self.lower[i] + &width * Rational::from_integer(k.into()) / &denom)
            .collect()
    }

    /// All grid points, last axis varying fastest.
    pub fn points(&self) -> Result<Vec<Vec<Rational>>> {
        self.validate()?;
        let axes: Vec<Vec<Rational>> = (0..self.dim()).map(|i| self.axis(i)).collect();
        let mut out = vec![Vec::new()];
        for axis in &axes {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rational>| {
                    axis.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub enum ScanPoints {
    List(Vec<Vec<Rational>>),
    Grid(GridSpec),
}

/// Probes every point and returns the empty fibers, in input order.
pub fn complement_scan(map: &PolyMap, points: &ScanPoints) -> Result<Vec<FiberReport>> {
    complement_scan_with_order(map, points, MonomialOrder::Grevlex)
}

pub fn complement_scan_with_order(
    map: &PolyMap,
    points: &ScanPoints,
    order: MonomialOrder,
) -> Result<Vec<FiberReport>> {
    let points = match points {
        ScanPoints::List(list) if list.is_empty() => {
            return Err(Error::MalformedGrid("empty point list".into()))
        }
        ScanPoints::List(list) => list.clone(),
        ScanPoints::Grid(grid) => grid.points()?,
    };
    let mut empty = Vec::new();
    for p in &points {
        let report = fiber_probe_with_order(map, p, order)?;
        if report.is_empty() {
            empty.push(report);
        }
    }
    Ok(empty)
}

/// Fiber ideal at `point`, for re-checking a report's witness.
pub fn fiber_ideal(map: &PolyMap, point: &[Rational]) -> Vec<Polynomial> {
    let ring = map.ring();
    map.components()
        .iter()
        .zip(point)
        .map(|(f, y)| f - &Polynomial::constant(ring, y.clone()))
        .collect()
}
