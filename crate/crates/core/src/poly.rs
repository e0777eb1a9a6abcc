//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are small integers. Index 0 is the transcendental `t`, index 1
//! is `s`, and indices from [`PARAM_BASE`] on are cycle parameters. Terms are
//! kept in a graded lexicographic order with lower indices ranking higher.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_rational, Rational};

pub type Var = u16;

pub const VAR_T: Var = 0;
pub const VAR_S: Var = 1;
pub const PARAM_BASE: Var = 2;

pub fn param(i: usize) -> Var {
    PARAM_BASE + i as Var
}

pub fn is_param(v: Var) -> bool {
    v >= PARAM_BASE
}

pub fn var_name(v: Var) -> String {
    match v {
        VAR_T => "t".to_string(),
        VAR_S => "s".to_string(),
        _ => format!("p{}", v - PARAM_BASE),
    }
}

/// A monomial as a sorted list of `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Monomial with `v` removed, together with the removed exponent.
    pub fn split_var(&self, v: Var) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, f)| {
                if w == v {
                    e = f;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.degree_in(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    pub fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let td = self.total_degree().cmp(&other.total_degree());
        if td != Ordering::Equal {
            return td;
        }
        // Graded lex: the first variable (lowest index) where the exponents
        // differ decides, higher exponent wins.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
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
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn lead_coeff(&self) -> Rational {
        self.lead().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn has_params(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.pairs().iter().any(|&(v, _)| is_param(v)))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `v`, keyed by the power of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn coeff_of(&self, v: Var, e: u32) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (rest, f) = m.split_var(v);
            (f == e).then(|| (rest, c.clone()))
        }))
    }

    pub fn from_coeffs_in(v: Var, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (&e, p) in coeffs {
            let vm = Monomial::var(v, e);
            for (m, c) in &p.terms {
                out.add_term(m.mul(&vm), c.clone());
            }
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (rest, e) = m.split_var(v);
            (e > 0).then(|| {
                (
                    rest.mul(&Monomial::var(v, e - 1)),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            })
        }))
    }

    /// Substitute a constant for one variable.
    pub fn subs_const(&self, v: Var, value: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            let factor = pow_rational(value, e);
            out.add_term(rest, c * factor);
        }
        out
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.map_vars(&f), c.clone())),
        )
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.lead_coeff();
        self.scale(&lc.recip())
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.lead().map(|(m, c)| (m.clone(), c.clone()))?;
        if d.num_terms() == 1 {
            let inv = dc.recip();
            let mut out = Poly::zero();
            for (m, c) in &self.terms {
                out.add_term(m.div(&dm)?, c * &inv);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.lead().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let step = Poly::monomial(qm.clone(), qc.clone());
            rem = &rem - &(&step * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in `v`.
    pub fn prem(&self, d: &Poly, v: Var) -> Poly {
        let dd = d.degree_in(v);
        let lc = d.coeff_of(v, dd);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let rd = r.degree_in(v);
            let rlc = r.coeff_of(v, rd);
            let shift = Poly::monomial(Monomial::var(v, rd - dd), Rational::one());
            r = &(&r * &lc) - &(&(&rlc * &shift) * d);
        }
        r
    }

    /// Content with respect to `v`: the gcd of the coefficients in `v`.
    pub fn content_in(&self, v: Var) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v).values() {
            g = gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                return Poly::one();
            }
        }
        g
    }

    /// Smallest rational `c` with `self / c` having coprime integer coefficients and
    /// positive leading coefficient.
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut num_g = BigInt::zero();
        let mut den_l = BigInt::one();
        for c in self.terms.values() {
            num_g = num_g.gcd(c.numer());
            den_l = den_l.lcm(c.denom());
        }
        let mut content = Rational::new(num_g, den_l);
        if self.lead_coeff().is_negative() {
            content = -content;
        }
        content
    }

    pub fn eval(&self, values: &dyn Fn(Var) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                t *= pow_rational(&values(v), e);
            }
            acc += t;
        }
        acc
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = m
                .pairs()
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        names(v)
                    } else {
                        format!("{}^{}", names(v), e)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub fn pow_rational(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_name))
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// Greatest common divisor, normalized to leading coefficient one.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let (mono, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let mut g = mono.lead().map(|(m, _)| m.clone()).unwrap_or_default();
        for (m, _) in other.terms() {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        return Poly::monomial(g, Rational::one());
    }
    let va = a.vars();
    let vb = b.vars();
    let common: Vec<Var> = va.intersection(&vb).copied().collect();
    if common.is_empty() {
        // A common factor would live in the shared variables only.
        return Poly::one();
    }
    let v = *common.iter().min().unwrap();
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap_or_else(|| a.clone());
    let mut q = b.div_exact(&cb).unwrap_or_else(|| b.clone());
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree_in(v) > 0 {
        let r = p.prem(&q, v);
        p = q;
        if r.is_zero() {
            q = Poly::zero();
            break;
        }
        if r.degree_in(v) == 0 {
            q = r;
            break;
        }
        let cr = r.content_in(v);
        q = r.div_exact(&cr).unwrap_or(r);
    }
    let g = if !q.is_zero() {
        // Constant remainder in `v`: the primitive parts are coprime.
        Poly::one()
    } else {
        let cp = p.content_in(v);
        p.div_exact(&cp).unwrap_or(p)
    };
    (&c * &g).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn x() -> Poly {
        Poly::var(param(0))
    }
    fn y() -> Poly {
        Poly::var(param(1))
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = &(&x() - &Poly::from_int(1)) * &(&x() + &y());
        let b = &(&x() - &Poly::from_int(1)) * &(&y() - &Poly::from_int(2));
        let g = gcd(&a, &b);
        assert_eq!(g, &x() - &Poly::from_int(1));
        assert_eq!(a.div_exact(&g).unwrap(), &x() + &y());
        assert!(a.div_exact(&(&y() - &Poly::from_int(2))).is_none());
    }

    #[test]
    fn gcd_with_disjoint_variables() {
        let a = &Poly::var(VAR_T) * &(&x() + &Poly::from_int(1));
        let b = &Poly::var(VAR_T) * &y();
        assert_eq!(gcd(&a, &b), Poly::var(VAR_T));
        let c = &(&Poly::var(VAR_T) + &Poly::from_int(1)) * &x();
        let d = &(&Poly::var(VAR_T) + &Poly::from_int(1)) * &y();
        assert_eq!(gcd(&c, &d), &Poly::var(VAR_T) + &Poly::from_int(1));
    }

    #[test]
    fn gcd_of_squares() {
        let f = &x() - &Poly::var(VAR_T);
        let a = f.pow(2);
        let b = &f * &(&x() + &Poly::from_int(3));
        assert_eq!(gcd(&a, &b), f.monic());
        assert_eq!(gcd(&a, &a), a.monic());
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let a = Monomial::from_pairs(vec![(2, 1), (3, 1)]);
        let b = Monomial::from_pairs(vec![(2, 1), (4, 1)]);
        let c = Monomial::from_pairs(vec![(5, 2)]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }

    #[test]
    fn substitution_and_render() {
        let p = &(&x() * &x()) - &x().scale(&q(3));
        assert_eq!(p.subs_const(param(0), &q(2)), Poly::from_int(-2));
        assert_eq!(p.to_string(), "p0^2-3*p0");
        assert_eq!(p.derivative(param(0)).to_string(), "2*p0-3");
    }
}
