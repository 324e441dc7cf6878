//! Reduced Gröbner bases and the ideal-theoretic procedures built on them.
//!
//! Bases are computed with Buchberger's algorithm using the normal selection
//! strategy, the coprime-leading-monomial criterion and the chain criterion,
//! then minimized and inter-reduced. Output is monic and sorted by ascending
//! leading monomial, so identical inputs always give identical bases.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{cmp_grevlex, Monomial, Polynomial, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    /// Product order: grevlex on the first `n` variables, ties broken by
    /// grevlex on the rest. Any monomial involving the front block beats
    /// every monomial free of it with the same front part missing, which is
    /// what elimination needs.
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => cmp_grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                cmp_grevlex(&a[..k], &b[..k]).then_with(|| cmp_grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            other => other
                .strip_prefix("block(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.trim().parse().ok())
                .map(MonomialOrder::Block)
                .ok_or_else(|| format!("unknown monomial order `{other}`")),
        }
    }
}

/// Polynomial with terms sorted ascending under a fixed monomial order, so
/// the leading term is the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn new(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned()).expect("arity preserved")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero").1
    }

    fn is_constant(&self) -> bool {
        !self.is_zero() && self.lm().is_one()
    }

    fn monic(mut self) -> Self {
        if let Some((_, lc)) = self.terms.last() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in &mut self.terms {
                    *c *= &inv;
                }
            }
        }
        self
    }

    /// `self - coef * mono * other`.
    fn sub_mul(&self, coef: &Rational, mono: &Monomial, other: &Sorted, order: MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    m.checked_mul(mono).expect("exponent overflow in reduction"),
                    -(c * coef),
                )
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, c1) = a.next().unwrap().clone();
                        let (_, c2) = b.next().unwrap();
                        let c = c1 + c2;
                        if !c.is_zero() {
                            out.push((m, c));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }

    fn normal_form(&self, basis: &[Sorted], order: MonomialOrder) -> Sorted {
        let mut p = self.clone();
        let mut rem_desc = Vec::new();
        while let Some((m, c)) = p.terms.last() {
            match basis.iter().find(|g| g.lm().divides(m)) {
                Some(g) => {
                    let q = m.div(g.lm());
                    let coef = c / g.lc();
                    p = p.sub_mul(&coef, &q, g, order);
                }
                None => rem_desc.push(p.terms.pop().unwrap()),
            }
        }
        rem_desc.reverse();
        Sorted { terms: rem_desc }
    }

    fn s_poly(&self, other: &Sorted, order: MonomialOrder) -> Sorted {
        let l = self.lm().lcm(other.lm());
        let a = Sorted { terms: Vec::new() }.sub_mul(
            &-self.lc().recip(),
            &l.div(self.lm()),
            self,
            order,
        );
        a.sub_mul(&other.lc().recip(), &l.div(other.lm()), other, order)
    }
}

fn buchberger(gens: &[Sorted], order: MonomialOrder) -> Vec<Sorted> {
    let mut g: Vec<Sorted> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .map(Sorted::monic)
        .collect();
    if let Some(one) = g.iter().find(|p| p.is_constant()) {
        return vec![one.clone()];
    }
    let mut pairs: BTreeSet<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let pair_key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };

    while !pairs.is_empty() {
        // normal selection: smallest lcm first, ties by index
        let &(i, j) = pairs
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = g[a].lm().lcm(g[b].lm());
                let l2 = g[c].lm().lcm(g[d].lm());
                order.compare(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pairs.remove(&(i, j));

        if g[i].lm().is_coprime(g[j].lm()) {
            continue;
        }
        let l = g[i].lm().lcm(g[j].lm());
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].lm().divides(&l)
                && !pairs.contains(&pair_key(i, k))
                && !pairs.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }

        let h = g[i].s_poly(&g[j], order).normal_form(&g, order);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return vec![h];
        }
        let new = g.len();
        g.push(h);
        pairs.extend((0..new).map(|k| (k, new)));
    }

    // minimize
    g.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    let mut kept: Vec<Sorted> = Vec::new();
    for p in g {
        if !kept.iter().any(|q| q.lm().divides(p.lm())) {
            kept.push(p);
        }
    }
    // inter-reduce; leading monomials are unaffected
    let mut reduced = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Sorted> = kept
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (lead, tail) = kept[i].terms.split_last().unwrap();
        let tail_nf = Sorted {
            terms: tail.to_vec(),
        }
        .normal_form(&others, order);
        let mut terms = tail_nf.terms;
        terms.push(lead.clone());
        reduced.push(Sorted { terms });
    }
    reduced
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    sorted: Vec<Sorted>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.basis == other.basis
    }
}

impl GroebnerBasis {
    pub fn new(ring: &Ring, generators: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        for p in generators {
            ring.check_same(p.ring())?;
        }
        let input: Vec<Sorted> = generators.iter().map(|p| Sorted::new(p, order)).collect();
        let sorted = buchberger(&input, order);
        let basis = sorted.iter().map(|s| s.to_poly(ring)).collect();
        let gb = GroebnerBasis {
            ring: ring.clone(),
            order,
            generators: generators.to_vec(),
            basis,
            sorted,
        };
        debug_assert!(gb.satisfies_buchberger_criterion());
        debug_assert!(gb.is_reduced());
        Ok(gb)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Basis elements, monic, in ascending order of leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Normal form of `p` modulo the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(p.ring())?;
        Ok(Sorted::new(p, self.order)
            .normal_form(&self.sorted, self.order)
            .to_poly(&self.ring))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Krull dimension of the quotient ring, `-1` for the unit ideal: the
    /// size of a largest set of variables containing the support of no
    /// leading monomial.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.arity();
        let supports: Vec<u64> = self
            .sorted
            .iter()
            .map(|s| s.lm().support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        assert!(n < 64, "dimension supports at most 63 variables");
        (0u64..1 << n)
            .filter(|mask| supports.iter().all(|&s| s & !mask != 0))
            .map(|mask| mask.count_ones() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        (0..self.sorted.len()).all(|j| {
            (0..j).all(|i| {
                self.sorted[i]
                    .s_poly(&self.sorted[j], self.order)
                    .normal_form(&self.sorted, self.order)
                    .is_zero()
            })
        })
    }

    /// Monic, and no term of any element is divisible by the leading
    /// monomial of another.
    pub fn is_reduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, p)| {
            p.lc().is_one()
                && self.sorted.iter().enumerate().all(|(k, q)| {
                    k == i || p.terms.iter().all(|(m, _)| !q.lm().divides(m))
                })
        })
    }
}

/// Leading monomial of `p` under `order`.
pub fn leading_monomial(p: &Polynomial, order: MonomialOrder) -> Option<Monomial> {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| order.compare(a, b))
        .cloned()
}

/// Multivariate division of `p` by `basis` (any list, not necessarily a
/// Gröbner basis). Divisors are tried in list order.
pub fn reduce(p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    for g in basis {
        p.ring().check_same(g.ring())?;
    }
    let sorted: Vec<Sorted> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::new(g, order))
        .collect();
    Ok(Sorted::new(p, order)
        .normal_form(&sorted, order)
        .to_poly(p.ring()))
}

pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    GroebnerBasis::new(ring, gens, order)
}

pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    GroebnerBasis::new(p.ring(), gens, MonomialOrder::Grevlex)?.contains(p)
}

pub fn is_unit_ideal(ring: &Ring, gens: &[Polynomial]) -> Result<bool> {
    ideal_membership(&Polynomial::one(ring), gens)
}

pub fn dimension(ring: &Ring, gens: &[Polynomial]) -> Result<i64> {
    Ok(GroebnerBasis::new(ring, gens, MonomialOrder::Grevlex)?.dimension())
}

/// Generators of the elimination ideal `I ∩ Q[remaining variables]`,
/// returned as polynomials of the original ring that involve none of the
/// dropped variables.
pub fn eliminate(ring: &Ring, gens: &[Polynomial], drop: &[usize]) -> Result<Vec<Polynomial>> {
    let n = ring.arity();
    if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
        return Err(Error::VariableIndex {
            index: bad,
            arity: n,
        });
    }
    let dropped: BTreeSet<usize> = drop.iter().copied().collect();
    // permuted ring: dropped variables first
    let perm: Vec<usize> = dropped
        .iter()
        .copied()
        .chain((0..n).filter(|i| !dropped.contains(i)))
        .collect();
    let mut position = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        position[old] = new;
    }
    let permuted = Ring::new(perm.iter().map(|&i| ring.name(i).to_string()))?;
    let moved = gens
        .iter()
        .map(|g| {
            ring.check_same(g.ring())?;
            g.embed(&permuted, &position)
        })
        .collect::<Result<Vec<_>>>()?;
    let gb = GroebnerBasis::new(&permuted, &moved, MonomialOrder::Block(dropped.len()))?;
    let k = dropped.len();
    Ok(gb
        .basis()
        .iter()
        .filter(|p| p.variables().iter().all(|&v| v >= k))
        .map(|p| p.embed(ring, &perm).expect("permutation is total"))
        .collect())
}

/// Whether some power of `p` lies in the ideal, via the Rabinowitsch trick:
/// `1 ∈ gens + (1 - w*p)` for a fresh variable `w`.
pub fn radical_membership(p: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    let ring = p.ring();
    let w = ring.fresh_name("w", &[]);
    let ext = ring.extend(&[w])?;
    let inc: Vec<usize> = (0..ring.arity()).collect();
    let mut moved = gens
        .iter()
        .map(|g| {
            ring.check_same(g.ring())?;
            g.embed(&ext, &inc)
        })
        .collect::<Result<Vec<_>>>()?;
    let pw = &ext.var(ring.arity()) * &p.embed(&ext, &inc)?;
    moved.push(&Polynomial::one(&ext) - &pw);
    is_unit_ideal(&ext, &moved)
}

/// If `g ∈ Q[f_1, .., f_m]`, returns `S` over `y1, .., ym` with
/// `g = S(f_1, .., f_m)`.
pub fn subalgebra_membership(g: &Polynomial, fs: &[Polynomial]) -> Result<Option<Polynomial>> {
    let names: Vec<String> = (1..=fs.len()).map(|i| format!("y{i}")).collect();
    if fs.is_empty() {
        return Ok(g.as_constant().map(|c| {
            let r = Ring::new(["y1"]).expect("valid");
            Polynomial::constant(&r, c)
        }));
    }
    let target = Ring::new(names)?;
    subalgebra_membership_in(g, fs, &target)
}

/// As [`subalgebra_membership`], with the witness expressed over `target`,
/// whose `i`-th variable stands for `fs[i]`.
///
/// Adjoins tag variables `y_i`, computes a Gröbner basis of `(y_i - f_i)`
/// under a block order with the original variables first, and accepts iff
/// the normal form of `g` involves tag variables only.
pub fn subalgebra_membership_in(
    g: &Polynomial,
    fs: &[Polynomial],
    target: &Ring,
) -> Result<Option<Polynomial>> {
    if target.arity() != fs.len() {
        return Err(Error::LengthMismatch {
            what: "number of subalgebra generators",
            expected: target.arity(),
            found: fs.len(),
        });
    }
    let ring = g.ring();
    let n = ring.arity();
    let mut tags = Vec::with_capacity(fs.len());
    for i in 0..fs.len() {
        let name = ring.fresh_name(&format!("y{}", i + 1), &tags);
        tags.push(name);
    }
    let ext = ring.extend(&tags)?;
    let inc: Vec<usize> = (0..n).collect();
    let gens = fs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            ring.check_same(f.ring())?;
            Ok(&ext.var(n + i) - &f.embed(&ext, &inc)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let gb = GroebnerBasis::new(&ext, &gens, MonomialOrder::Block(n))?;
    let nf = gb.reduce(&g.embed(&ext, &inc)?)?;
    let tag_vars: Vec<usize> = (n..n + fs.len()).collect();
    Ok(nf.restrict(target, &tag_vars))
}
