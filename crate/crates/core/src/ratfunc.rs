//! Multivariate rational functions over the rationals in reduced form.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{gcd, var_name, Poly, Var};
use crate::rational::{fmt_rational, Rational};

/// `num / den` with `gcd(num, den) = 1` and `den` of leading coefficient one.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(Poly::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lc = d.lead_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFunc { num: n, den: d })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn has_params(&self) -> bool {
        self.num.has_params() || self.den.has_params()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc::new(num, &self.den * &other.den).unwrap()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(&self.num * &other.num);
        }
        RatFunc::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn inv(&self) -> Option<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Option<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Some(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> RatFunc {
        RatFunc::one().sub(self)
    }

    /// Substitute the constant `value` for `v`; `None` when the denominator vanishes.
    pub fn subs_const(&self, v: Var, value: &Rational) -> Option<RatFunc> {
        if !self.contains_var(v) {
            return Some(self.clone());
        }
        RatFunc::new(self.num.subs_const(v, value), self.den.subs_const(v, value))
    }

    /// Substitute `h` for `v`; `None` when the result has a vanishing denominator.
    pub fn subs(&self, v: Var, h: &RatFunc) -> Option<RatFunc> {
        if !self.contains_var(v) {
            return Some(self.clone());
        }
        if let Some(c) = h.constant_value() {
            return self.subs_const(v, &c);
        }
        let dn = self.num.degree_in(v);
        let dd = self.den.degree_in(v);
        let n = compose_homogeneous(&self.num, v, dn, h);
        let d = compose_homogeneous(&self.den, v, dd, h);
        if dd >= dn {
            RatFunc::new(&n * &h.den.pow(dd - dn), d)
        } else {
            RatFunc::new(n, &d * &h.den.pow(dn - dd))
        }
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var + Copy) -> RatFunc {
        RatFunc::new(self.num.map_vars(f), self.den.map_vars(f)).unwrap()
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        RatFunc::new(n, self.den.pow(2)).unwrap()
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let wrap = |p: &Poly| {
            let s = p.render(names);
            if p.num_terms() > 1 || (p.is_monomial() && s.contains('*')) {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    /// Sort key used for canonical orderings: simpler functions first; among
    /// constants, smaller denominators and magnitudes first.
    pub fn complexity_key(&self) -> (u32, u32, usize, String) {
        (
            self.den.total_degree(),
            self.num.total_degree(),
            self.num.num_terms() + self.den.num_terms(),
            self.to_string(),
        )
    }
}

/// `Σ_k p_k h_num^k h_den^(deg - k)` for `p = Σ_k p_k v^k`.
fn compose_homogeneous(p: &Poly, v: Var, deg: u32, h: &RatFunc) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in p.coeffs_in(v) {
        let term = &(&c * &h.num.pow(k)) * &h.den.pow(deg - k);
        out = &out + &term;
    }
    out
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.constant_value() {
            return f.write_str(&fmt_rational(&c));
        }
        f.write_str(&self.render(&var_name))
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{param, VAR_T};
    use crate::rational::{rat, ratio};

    fn t() -> RatFunc {
        RatFunc::var(VAR_T)
    }

    #[test]
    fn normalization_cancels_common_factors() {
        let a = t().add(&RatFunc::from_int(1));
        let b = t().sub(&RatFunc::from_int(2));
        let f = a.mul(&b).div(&b.scale(&rat(3))).unwrap();
        assert_eq!(f, a.scale(&ratio(1, 3)));
        assert_eq!(f.to_string(), "1/3*t+1/3");
        let g = a.div(&b).unwrap();
        assert_eq!(g.to_string(), "(t+1)/(t-2)");
        assert_eq!(RatFunc::new(g.num().clone(), g.den().clone()).unwrap(), g);
    }

    #[test]
    fn substitution_composes() {
        let q = RatFunc::var(param(0));
        let f = q.sub(&RatFunc::from_int(3)).div(&q.sub(&RatFunc::constant(ratio(3, 2)))).unwrap();
        let h = RatFunc::one().div(&q).unwrap();
        let g = f.subs(param(0), &h).unwrap();
        let expect = RatFunc::one()
            .sub(&q.scale(&rat(3)))
            .div(&RatFunc::one().sub(&q.scale(&ratio(3, 2))))
            .unwrap();
        assert_eq!(g, expect);
        assert_eq!(f.subs_const(param(0), &ratio(3, 2)), None);
        assert_eq!(f.subs_const(param(0), &rat(3)), Some(RatFunc::zero()));
    }
}
