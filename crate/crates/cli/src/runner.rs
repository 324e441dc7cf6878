//! Executes a [`TaskFile`] and produces one [`OutputRecord`] per command.
//!
//! Polynomials are serialized as canonical strings and rationals as `a/b` or
//! integer strings. Everything except the `timing` key is a pure function of
//! the task, so two runs of the same task agree byte for byte once `timing` is
//! removed.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use gaql_core::action::{exponentiate, GaAction, TDegree};
use gaql_core::derivation::{Derivation, NilpotencyCertificate, NilpotencyStatus, DEFAULT_NILPOTENCY_BOUND};
use gaql_core::geometry::{self, FiberReport, FiberStatus, GridSpec, ScanPoints};
use gaql_core::groebner::{subalgebra_membership_in, MonomialOrder};
use gaql_core::quotient::{self, LocalSlice, DEFAULT_POWER_BOUND, DEFAULT_SLICE_DEGREE_BOUND};
use gaql_core::text::{format_in_parameter, format_polynomial, format_rational, parse_polynomial, parse_rational};
use gaql_core::{PolyMap, Polynomial, Rational, Ring};

use crate::task::{Command, Grid, TaskFile};

pub const BOUND_ENV_VAR: &str = "GAQL_DEFAULT_BOUND";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// Nilpotency bound used when a command does not give one.
    pub default_bound: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            default_bound: DEFAULT_NILPOTENCY_BOUND,
        }
    }
}

impl Options {
    /// Defaults, with the nilpotency bound overridden by `GAQL_DEFAULT_BOUND`
    /// when it holds a positive integer.
    pub fn from_env() -> Self {
        let mut opts = Options::default();
        if let Some(b) = std::env::var(BOUND_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&b| b > 0)
        {
            opts.default_bound = b;
        }
        opts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommandError {
    pub code: String,
    pub message: String,
}

impl CommandError {
    fn new(code: &str, message: impl Into<String>) -> Self {
        CommandError {
            code: code.to_string(),
            message: message.into(),
        }
    }
}

impl From<gaql_core::Error> for CommandError {
    fn from(e: gaql_core::Error) -> Self {
        CommandError::new(e.code(), e.to_string())
    }
}

impl From<gaql_core::ParseError> for CommandError {
    fn from(e: gaql_core::ParseError) -> Self {
        CommandError::new("parse_error", e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_us: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub line: usize,
    pub command: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<CommandError>,
    pub timing: Timing,
}

impl OutputRecord {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// `0` when every command succeeded, `1` otherwise.
pub fn exit_code(records: &[OutputRecord]) -> i32 {
    if records.iter().all(OutputRecord::is_ok) {
        0
    } else {
        1
    }
}

type CmdResult<T> = Result<T, CommandError>;

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(format_polynomial).collect()
}

fn tuple(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

fn rationals(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn certificate_json(cert: &NilpotencyCertificate) -> Value {
    let chains: Vec<Vec<String>> = cert.chains().iter().map(|c| strings(c)).collect();
    match cert.status() {
        NilpotencyStatus::Certified { orders } => json!({
            "status": "certified",
            "orders": orders,
            "chains": chains,
        }),
        NilpotencyStatus::Inconclusive { bound, reason } => json!({
            "status": "inconclusive",
            "bound": bound,
            "reason": reason,
            "chains": chains,
        }),
    }
}

fn fiber_json(r: &FiberReport) -> Value {
    let (status, dimension) = match r.status {
        FiberStatus::Empty => ("empty", Value::Null),
        FiberStatus::Nonempty { dimension } => ("nonempty", json!(dimension)),
    };
    json!({
        "point": rationals(&r.point),
        "status": status,
        "dimension": dimension,
        "basis": strings(r.witness.basis()),
        "order": r.witness.order().to_string(),
    })
}

fn slice_json(s: &LocalSlice) -> Value {
    json!({
        "f": format_polynomial(&s.f),
        "c": format_polynomial(&s.c),
        "p": s.p.as_ref().map(format_polynomial),
    })
}

fn parse_order(order: &Option<String>) -> CmdResult<MonomialOrder> {
    match order {
        None => Ok(MonomialOrder::Grevlex),
        Some(s) => s
            .parse()
            .map_err(|e: String| CommandError::new("bad_order", e)),
    }
}

fn parse_point(xs: &[String]) -> CmdResult<Vec<Rational>> {
    xs.iter()
        .map(|x| parse_rational(x).map_err(CommandError::from))
        .collect()
}

#[derive(Default)]
pub struct Runner {
    options: Options,
    ring: Option<Ring>,
    polys: HashMap<String, Polynomial>,
    maps: HashMap<String, PolyMap>,
    derivations: HashMap<String, Derivation>,
    actions: HashMap<String, GaAction>,
    slices: HashMap<String, LocalSlice>,
}

impl Runner {
    pub fn new(options: Options) -> Self {
        Runner {
            options,
            ..Runner::default()
        }
    }

    /// Runs every command in order; failures are recorded and execution
    /// continues.
    pub fn run(&mut self, task: &TaskFile) -> Vec<OutputRecord> {
        task.commands
            .iter()
            .map(|(line, cmd)| {
                let start = Instant::now();
                let result = self.execute(cmd);
                let elapsed_us = start.elapsed().as_micros();
                let command = serde_json::to_value(cmd).expect("commands serialize");
                let (status, payload, error) = match result {
                    Ok(p) => (Status::Ok, Some(p), None),
                    Err(e) => (Status::Error, None, Some(e)),
                };
                OutputRecord {
                    line: *line,
                    command,
                    status,
                    payload,
                    error,
                    timing: Timing { elapsed_us },
                }
            })
            .collect()
    }

    fn ring(&self) -> CmdResult<&Ring> {
        self.ring
            .as_ref()
            .ok_or_else(|| CommandError::new("no_ring", "no ring declared"))
    }

    /// A declared polynomial name, or else an expression over the ring.
    fn poly(&self, src: &str) -> CmdResult<Polynomial> {
        if let Some(p) = self.polys.get(src.trim()) {
            return Ok(p.clone());
        }
        Ok(parse_polynomial(src, self.ring()?)?)
    }

    fn polys_of(&self, srcs: &[String]) -> CmdResult<Vec<Polynomial>> {
        srcs.iter().map(|s| self.poly(s)).collect()
    }

    fn lookup<'a, T>(table: &'a HashMap<String, T>, kind: &str, name: &str) -> CmdResult<&'a T> {
        table
            .get(name)
            .ok_or_else(|| CommandError::new("unbound_name", format!("{kind} `{name}` is not bound")))
    }

    fn certified_action(&self, d: &Derivation, bound: Option<usize>) -> CmdResult<GaAction> {
        let bound = bound.unwrap_or(self.options.default_bound);
        let cert = d.certify_locally_nilpotent(bound);
        if let NilpotencyStatus::Inconclusive { bound, reason } = cert.status() {
            return Err(CommandError::new(
                "uncertified",
                format!("local nilpotency inconclusive at bound {bound}: {reason}"),
            ));
        }
        Ok(exponentiate(d, &cert)?)
    }

    fn execute(&mut self, cmd: &Command) -> CmdResult<Value> {
        match cmd {
            Command::Ring { vars } => {
                let ring = Ring::new(vars.iter().cloned())?;
                self.ring = Some(ring);
                Ok(json!({ "vars": vars }))
            }
            Command::Poly { name, expr } => {
                let p = parse_polynomial(expr, self.ring()?)?;
                let s = format_polynomial(&p);
                if let Some(n) = name {
                    self.polys.insert(n.clone(), p);
                }
                Ok(json!({ "poly": s }))
            }
            Command::Map {
                name,
                components,
                target,
            } => {
                let comps = self.polys_of(components)?;
                let ring = self.ring()?.clone();
                let map = match target {
                    Some(t) => PolyMap::with_target_names(&ring, comps, t.clone())?,
                    None => PolyMap::new(&ring, comps)?,
                };
                let out = json!({
                    "components": strings(map.components()),
                    "target": map.target().names(),
                });
                self.maps.insert(name.clone(), map);
                Ok(out)
            }
            Command::Derivation { name, images } => {
                let d = Derivation::new(self.ring()?, self.polys_of(images)?)?;
                let imgs = strings(d.images());
                self.derivations.insert(name.clone(), d);
                Ok(json!({ "images": imgs, "tuple": tuple(&imgs) }))
            }
            Command::Apply { derivation, poly, k } => {
                let d = Self::lookup(&self.derivations, "derivation", derivation)?;
                let k = k.unwrap_or(1);
                let r = d.apply(&self.poly(poly)?, k)?;
                Ok(json!({ "k": k, "result": format_polynomial(&r) }))
            }
            Command::Nilpotency { derivation, bound } => {
                let d = Self::lookup(&self.derivations, "derivation", derivation)?;
                let cert = d.certify_locally_nilpotent(bound.unwrap_or(self.options.default_bound));
                Ok(certificate_json(&cert))
            }
            Command::Exp {
                derivation,
                bound,
                name,
            } => {
                let d = Self::lookup(&self.derivations, "derivation", derivation)?;
                let action = self.certified_action(d, *bound)?;
                let comps = action.component_strings();
                let out = json!({
                    "action": tuple(&comps),
                    "components": comps,
                    "parameter": action.ring().name(action.parameter_index()),
                    "identity_checked": action.check_identity()?,
                    "group_law_checked": action.check_group_law()?,
                    "certificate": certificate_json(action.certificate().expect("from certificate")),
                });
                if let Some(n) = name {
                    self.actions.insert(n.clone(), action);
                }
                Ok(out)
            }
            Command::Act { action, poly } => {
                let a = Self::lookup(&self.actions, "action", action)?;
                let r = a.act(&self.poly(poly)?)?;
                Ok(json!({
                    "result": format_in_parameter(&r, a.parameter_index()),
                    "parameter": a.ring().name(a.parameter_index()),
                }))
            }
            Command::Invariant { action, poly } => {
                let a = Self::lookup(&self.actions, "action", action)?;
                let p = self.poly(poly)?;
                let deg = match a.deg_function(&p)? {
                    TDegree::Finite(d) => json!(d),
                    TDegree::NegInfinity => json!("-inf"),
                };
                Ok(json!({ "invariant": a.is_invariant(&p)?, "deg": deg }))
            }
            Command::FixedLocus { derivation } => {
                let d = Self::lookup(&self.derivations, "derivation", derivation)?;
                let fl = d.fixed_locus()?;
                Ok(json!({
                    "ideal": strings(&fl.ideal),
                    "basis": strings(fl.basis.basis()),
                    "dimension": fl.dimension,
                    "fixed_point_free": fl.fixed_point_free,
                }))
            }
            Command::JacobianDerivation { map, name } => {
                let m = Self::lookup(&self.maps, "map", map)?;
                let d = quotient::jacobian_derivation(m)?;
                let imgs = strings(d.images());
                if let Some(n) = name {
                    self.derivations.insert(n.clone(), d);
                }
                Ok(json!({ "images": imgs, "tuple": tuple(&imgs) }))
            }
            Command::Slice {
                derivation,
                degree_bound,
                map,
                name,
            } => {
                let d = Self::lookup(&self.derivations, "derivation", derivation)?;
                let bound = degree_bound.unwrap_or(DEFAULT_SLICE_DEGREE_BOUND);
                let Some(mut slice) = quotient::find_local_slice(d, bound)? else {
                    return Ok(json!({ "found": false, "degree_bound": bound }));
                };
                if let Some(m) = map {
                    let m = Self::lookup(&self.maps, "map", m)?;
                    slice.p = quotient::slice_coefficient_as_p(d, &slice, m)?;
                }
                let out = json!({ "found": true, "degree_bound": bound, "slice": slice_json(&slice) });
                if let Some(n) = name {
                    self.slices.insert(n.clone(), slice);
                }
                Ok(out)
            }
            Command::Localization {
                derivation,
                map,
                poly,
                slice,
                degree_bound,
                power_bound,
            } => {
                let d = Self::lookup(&self.derivations, "derivation", derivation)?;
                let m = Self::lookup(&self.maps, "map", map)?;
                let r = self.poly(poly)?;
                let mut s = match slice {
                    Some(name) => Self::lookup(&self.slices, "slice", name)?.clone(),
                    None => {
                        let bound = degree_bound.unwrap_or(DEFAULT_SLICE_DEGREE_BOUND);
                        quotient::find_local_slice(d, bound)?.ok_or_else(|| {
                            CommandError::new("no_slice", format!("no local slice of degree ≤ {bound}"))
                        })?
                    }
                };
                if s.p.is_none() {
                    s.p = quotient::slice_coefficient_as_p(d, &s, m)?;
                }
                if s.p.is_none() {
                    return Err(CommandError::new(
                        "no_slice_coefficient",
                        "slice coefficient is not a polynomial in the map components",
                    ));
                }
                let bound = power_bound.unwrap_or(DEFAULT_POWER_BOUND);
                let w = quotient::verify_localization_identity(d, &s, m, &r, bound)?;
                Ok(match w {
                    Some(w) => json!({
                        "found": true,
                        "slice": slice_json(&s),
                        "exponent": w.exponent,
                        "expression": format_polynomial(&w.expression),
                        "tags": w.ring().names(),
                    }),
                    None => json!({ "found": false, "slice": slice_json(&s), "power_bound": bound }),
                })
            }
            Command::Fiber { map, point, order } => {
                let m = Self::lookup(&self.maps, "map", map)?;
                let r = geometry::fiber_probe_with_order(m, &parse_point(point)?, parse_order(order)?)?;
                Ok(fiber_json(&r))
            }
            Command::SingularLocus { map, order } => {
                let m = Self::lookup(&self.maps, "map", map)?;
                let s = geometry::singular_locus_with_order(m, parse_order(order)?)?;
                Ok(json!({
                    "minors": strings(&s.minors),
                    "basis": strings(s.basis.basis()),
                    "dimension": s.dimension,
                    "codimension": s.codimension,
                    "nonsingular_in_codim_1": s.nonsingular_in_codim_1,
                }))
            }
            Command::Scan {
                map,
                points,
                grid,
                order,
            } => {
                let m = Self::lookup(&self.maps, "map", map)?;
                let spec = match (points, grid) {
                    (Some(pts), _) => ScanPoints::List(
                        pts.iter().map(|p| parse_point(p)).collect::<CmdResult<_>>()?,
                    ),
                    (None, Some(Grid { lower, upper, steps })) => ScanPoints::Grid(GridSpec {
                        lower: parse_point(lower)?,
                        upper: parse_point(upper)?,
                        steps: steps.clone(),
                    }),
                    (None, None) => unreachable!("rejected at load time"),
                };
                let probed = match &spec {
                    ScanPoints::List(l) => l.len(),
                    ScanPoints::Grid(g) => g.steps.iter().product(),
                };
                let empty = geometry::complement_scan_with_order(m, &spec, parse_order(order)?)?;
                Ok(json!({
                    "probed": probed,
                    "empty": empty.iter().map(fiber_json).collect::<Vec<_>>(),
                }))
            }
            Command::Subalgebra {
                poly,
                generators,
                map,
            } => {
                let g = self.poly(poly)?;
                let (fs, target) = match (generators, map) {
                    (Some(gens), _) => {
                        let fs = self.polys_of(gens)?;
                        let names: Vec<String> = (1..=fs.len()).map(|i| format!("y{i}")).collect();
                        let target = Ring::new(names)?;
                        (fs, target)
                    }
                    (None, Some(m)) => {
                        let m = Self::lookup(&self.maps, "map", m)?;
                        (m.components().to_vec(), m.target().clone())
                    }
                    (None, None) => unreachable!("rejected at load time"),
                };
                let s = subalgebra_membership_in(&g, &fs, &target)?;
                Ok(json!({
                    "member": s.is_some(),
                    "expression": s.as_ref().map(format_polynomial),
                    "tags": target.names(),
                }))
            }
        }
    }
}

pub fn run(task: &TaskFile, options: Options) -> Vec<OutputRecord> {
    Runner::new(options).run(task)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_src(src: &str) -> Vec<OutputRecord> {
        run(&TaskFile::parse(src).unwrap(), Options::default())
    }

    #[test]
    fn records_and_exit_codes() {
        let recs = run_src(
            r#"{"op": "ring", "vars": ["x", "y", "z"]}
{"op": "map", "name": "F", "components": ["1 + x*z", "y + z + x*y*z"]}
{"op": "fiber", "map": "F", "point": ["0", "0"]}
{"op": "fiber", "map": "F", "point": ["0"]}
{"op": "poly", "expr": "x +* y"}
{"op": "fiber", "map": "F", "point": ["1", "1"]}"#,
        );
        assert_eq!(recs.len(), 6);
        let fiber = recs[2].payload.as_ref().unwrap();
        assert_eq!(fiber["status"], "empty");
        assert_eq!(fiber["basis"], json!(["1"]));
        assert_eq!(recs[3].error.as_ref().unwrap().code, "length_mismatch");
        assert_eq!(recs[4].error.as_ref().unwrap().code, "parse_error");
        assert_eq!(recs[5].payload.as_ref().unwrap()["dimension"], 1);
        assert_eq!(exit_code(&recs), 1);
        assert_eq!(exit_code(&recs[..3]), 0);
    }

    #[test]
    fn unbound_names_from_failed_commands() {
        let recs = run_src(
            r#"{"op": "ring", "vars": ["x"]}
{"op": "derivation", "name": "E", "images": ["x"]}
{"op": "exp", "derivation": "E", "bound": 5, "name": "A"}
{"op": "act", "action": "A", "poly": "x"}"#,
        );
        assert_eq!(recs[2].error.as_ref().unwrap().code, "uncertified");
        assert_eq!(recs[3].error.as_ref().unwrap().code, "unbound_name");
    }

    #[test]
    fn named_polynomials_resolve() {
        let recs = run_src(
            r#"{"op": "ring", "vars": ["x", "y", "u", "v"]}
{"op": "poly", "name": "inv", "expr": "x*u + y*v"}
{"op": "subalgebra", "poly": "x^2*u + x*y*v", "generators": ["x", "y", "inv"]}"#,
        );
        let p = recs[2].payload.as_ref().unwrap();
        assert_eq!(p["expression"], "y1*y3");
    }

    #[test]
    fn bound_from_environment_shape() {
        assert_eq!(Options::default().default_bound, 64);
    }
}
