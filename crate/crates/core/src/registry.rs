//! The multiplicative lattice `F^× ⊗ Q` over a pairwise coprime basis.
//!
//! Field elements are rational functions in `t` and `s`. Their integer
//! content is split into primes, their polynomial part is refined against the
//! registered polynomials by gcd splitting.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{gcd, Poly};
use crate::ratfunc::RatFunc;
use crate::rational::{fmt_rational, Rational};

static NEXT_REGISTRY_ID: AtomicU64 = AtomicU64::new(1);

const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Prime(BigInt),
    Poly(Poly),
}

impl Symbol {
    pub fn value(&self) -> RatFunc {
        match self {
            Symbol::Prime(p) => RatFunc::constant(Rational::from_integer(p.clone())),
            Symbol::Poly(p) => RatFunc::from_poly(p.clone()),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Prime(p) => write!(f, "{p}"),
            Symbol::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Identifies a registry state; vectors from different stamps are not comparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Stamp {
    id: u64,
    generation: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExponentVector {
    pub stamp: Stamp,
    entries: BTreeMap<usize, Rational>,
}

impl ExponentVector {
    pub fn new(stamp: Stamp) -> Self {
        ExponentVector {
            stamp,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(stamp: Stamp, entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut v = ExponentVector::new(stamp);
        for (j, c) in entries {
            v.add_at(j, &c);
        }
        v
    }

    pub fn get(&self, j: usize) -> Rational {
        self.entries.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&j, c)| (j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_at(&mut self, j: usize, c: &Rational) {
        let e = self.entries.entry(j).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&j);
        }
    }

    pub fn add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        if self.stamp != other.stamp {
            return Err(Error::RegistryMismatch);
        }
        let mut out = self.clone();
        for (j, c) in other.entries() {
            out.add_at(j, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> ExponentVector {
        ExponentVector::from_entries(self.stamp, self.entries.iter().map(|(&j, e)| (j, e * c)))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(j, c)| format!("{j}:{}", fmt_rational(c)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// An element of `∧² F^× ⊗ Q` on basis pairs `(j, k)`, `j < k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Wedge2 {
    pub stamp: Stamp,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Wedge2 {
    pub fn new(stamp: Stamp) -> Self {
        Wedge2 {
            stamp,
            entries: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    pub fn get(&self, j: usize, k: usize) -> Rational {
        match j.cmp(&k) {
            std::cmp::Ordering::Equal => Rational::zero(),
            std::cmp::Ordering::Less => self.entries.get(&(j, k)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => -self.entries.get(&(k, j)).cloned().unwrap_or_default(),
        }
    }

    fn add_at(&mut self, key: (usize, usize), c: Rational) {
        let e = self.entries.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add(&self, other: &Wedge2) -> Result<Wedge2> {
        if self.stamp != other.stamp {
            return Err(Error::RegistryMismatch);
        }
        let mut out = self.clone();
        for (k, c) in other.entries() {
            out.add_at(k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Wedge2 {
        let mut out = Wedge2::new(self.stamp);
        for (k, e) in self.entries() {
            out.add_at(k, e * c);
        }
        out
    }
}

impl fmt::Display for Wedge2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((j, k), c)| format!("{}*z{j}^z{k}", fmt_rational(c)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ_{j<k} (a_j b_k − a_k b_j) z_j ∧ z_k`.
pub fn wedge_pair(a: &ExponentVector, b: &ExponentVector) -> Result<Wedge2> {
    if a.stamp != b.stamp {
        return Err(Error::RegistryMismatch);
    }
    let mut out = Wedge2::new(a.stamp);
    for (j, aj) in a.entries() {
        for (k, bk) in b.entries() {
            match j.cmp(&k) {
                std::cmp::Ordering::Less => out.add_at((j, k), aj * bk),
                std::cmp::Ordering::Greater => out.add_at((k, j), -(aj * bk)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    Ok(out)
}

/// Result of expanding a field element: `x = (−1)^negative · Π z_j^{c_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub vector: ExponentVector,
    pub negative: bool,
}

#[derive(Clone, Debug)]
pub struct MultBasisRegistry {
    id: u64,
    generation: u64,
    symbols: Vec<Symbol>,
}

impl Default for MultBasisRegistry {
    fn default() -> Self {
        MultBasisRegistry::new()
    }
}

impl MultBasisRegistry {
    pub fn new() -> Self {
        MultBasisRegistry {
            id: NEXT_REGISTRY_ID.fetch_add(1, Ordering::Relaxed),
            generation: 0,
            symbols: Vec::new(),
        }
    }

    /// A registry seeded with the given elements, refined in order.
    pub fn with_elements(elems: &[RatFunc]) -> Result<Self> {
        let mut reg = MultBasisRegistry::new();
        for e in elems {
            reg.register(e)?;
        }
        Ok(reg)
    }

    pub fn from_ints(elems: &[i64]) -> Self {
        let elems: Vec<RatFunc> = elems.iter().map(|&n| RatFunc::from_int(n)).collect();
        MultBasisRegistry::with_elements(&elems).expect("nonzero integers")
    }

    pub fn stamp(&self) -> Stamp {
        Stamp {
            id: self.id,
            generation: self.generation,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol_value(&self, j: usize) -> RatFunc {
        self.symbols[j].value()
    }

    /// Index of a symbol equal to `x`, if any.
    pub fn index_of(&self, x: &RatFunc) -> Option<usize> {
        self.symbols.iter().position(|s| &s.value() == x)
    }

    /// Refine the registry so that `x` factors over it.
    pub fn register(&mut self, x: &RatFunc) -> Result<()> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        for p in [x.num(), x.den()] {
            let content = p.rational_content();
            self.register_integer(content.numer());
            self.register_integer(content.denom());
            if !p.is_constant() {
                let prim = p.scale(&content.recip());
                self.register_poly(prim);
            }
        }
        Ok(())
    }

    fn register_integer(&mut self, n: &BigInt) {
        let mut n = n.abs();
        let mut p = BigInt::from(2u32);
        let mut steps = 0u64;
        while !n.is_one() && &p * &p <= n && steps < TRIAL_DIVISION_LIMIT {
            if n.is_multiple_of(&p) {
                self.insert_prime(p.clone());
                while n.is_multiple_of(&p) {
                    n /= &p;
                }
            }
            p += 1u32;
            steps += 1;
        }
        if n > BigInt::one() {
            self.insert_prime(n);
        }
    }

    fn insert_prime(&mut self, p: BigInt) {
        // Cofactors beyond the trial-division limit are refined by gcd like
        // polynomials so that the integer symbols stay coprime.
        let mut work = vec![p];
        while let Some(w) = work.pop() {
            if w.is_one() {
                continue;
            }
            let mut hit = None;
            for (i, s) in self.symbols.iter().enumerate() {
                if let Symbol::Prime(z) = s {
                    let h = z.gcd(&w);
                    if !h.is_one() {
                        hit = Some((i, z.clone(), h));
                        break;
                    }
                }
            }
            match hit {
                None => self.symbols.push(Symbol::Prime(w)),
                Some((_, z, _)) if z == w => {}
                Some((i, z, h)) => {
                    self.symbols.remove(i);
                    self.generation += 1;
                    work.push(&z / &h);
                    work.push(&w / &h);
                    work.push(h);
                }
            }
        }
    }

    fn register_poly(&mut self, p: Poly) {
        let mut work = vec![p];
        while let Some(w) = work.pop() {
            let w = primitive_positive(&w);
            if w.is_constant() {
                continue;
            }
            let mut hit = None;
            for (i, s) in self.symbols.iter().enumerate() {
                if let Symbol::Poly(z) = s {
                    let h = gcd(z, &w);
                    if !h.is_constant() {
                        hit = Some((i, z.clone(), primitive_positive(&h)));
                        break;
                    }
                }
            }
            match hit {
                None => self.symbols.push(Symbol::Poly(w)),
                Some((_, z, _)) if z == w => {}
                Some((i, z, h)) => {
                    self.symbols.remove(i);
                    self.generation += 1;
                    work.push(z.div_exact(&h).expect("gcd divides"));
                    work.push(w.div_exact(&h).expect("gcd divides"));
                    work.push(h);
                }
            }
        }
    }

    /// Expand `x` over the registry without refining it; `None` if some factor
    /// is not covered by the current symbols.
    pub fn try_expand(&self, x: &RatFunc) -> Result<Option<Expansion>> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut vector = ExponentVector::new(self.stamp());
        let mut negative = false;
        for (p, sign) in [(x.num(), 1i64), (x.den(), -1i64)] {
            let content = p.rational_content();
            if content.is_negative() {
                negative = !negative;
            }
            let content = content.abs();
            for (n, s) in [(content.numer().clone(), sign), (content.denom().clone(), -sign)] {
                let mut n = n;
                for (j, sym) in self.symbols.iter().enumerate() {
                    if let Symbol::Prime(z) = sym {
                        let mut e = 0i64;
                        while n.is_multiple_of(z) {
                            n /= z;
                            e += 1;
                        }
                        if e != 0 {
                            vector.add_at(j, &Rational::from_integer(BigInt::from(e * s)));
                        }
                    }
                }
                if !n.is_one() {
                    return Ok(None);
                }
            }
            let mut rest = p.scale(&p.rational_content().recip());
            for (j, sym) in self.symbols.iter().enumerate() {
                if rest.is_constant() {
                    break;
                }
                if let Symbol::Poly(z) = sym {
                    let mut e = 0i64;
                    while let Some(q) = rest.div_exact(z) {
                        rest = q;
                        e += 1;
                    }
                    if e != 0 {
                        vector.add_at(j, &Rational::from_integer(BigInt::from(e * sign)));
                    }
                }
            }
            match rest.constant_value() {
                Some(c) if c.is_one() => {}
                Some(c) if c == -Rational::one() => negative = !negative,
                _ => return Ok(None),
            }
        }
        Ok(Some(Expansion { vector, negative }))
    }

    /// Refine the registry as needed and expand `x`.
    pub fn expand(&mut self, x: &RatFunc) -> Result<Expansion> {
        self.register(x)?;
        Ok(self
            .try_expand(x)?
            .expect("registered elements factor over the registry"))
    }

    /// Rebuild `(−1)^negative · Π z_j^{c_j}`; `None` for non-integral exponents.
    pub fn reconstruct(&self, e: &Expansion) -> Option<RatFunc> {
        let mut acc = RatFunc::one();
        for (j, c) in e.vector.entries() {
            if !c.is_integer() {
                return None;
            }
            let k = c.to_integer().to_i64()?;
            acc = acc.mul(&self.symbol_value(j).pow(k)?);
        }
        if e.negative {
            acc = acc.neg();
        }
        Some(acc)
    }

    pub fn pairwise_coprime(&self) -> bool {
        for (i, a) in self.symbols.iter().enumerate() {
            for b in &self.symbols[i + 1..] {
                let coprime = match (a, b) {
                    (Symbol::Prime(x), Symbol::Prime(y)) => x.gcd(y).is_one(),
                    (Symbol::Poly(x), Symbol::Poly(y)) => gcd(x, y).is_constant(),
                    _ => true,
                };
                if !coprime {
                    return false;
                }
            }
        }
        true
    }
}

fn primitive_positive(p: &Poly) -> Poly {
    p.scale(&p.rational_content().recip())
}

/// Expand over a mutable registry, keeping only the exponent vector.
pub fn registry_expand(x: &RatFunc, reg: &mut MultBasisRegistry) -> Result<ExponentVector> {
    Ok(reg.expand(x)?.vector)
}

/// True iff `u` has neither a zero nor a pole at `t = 0` and `t = 1`.
pub fn c0_check(u: &RatFunc) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    for point in [Rational::zero(), Rational::one()] {
        let n = u.num().subs_const(crate::poly::VAR_T, &point);
        let d = u.den().subs_const(crate::poly::VAR_T, &point);
        if n.is_zero() || d.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluate `x` at `t = point`. In strict mode a zero value is an error.
pub fn specialize_field(x: &RatFunc, point: &Rational, strict: bool) -> Result<RatFunc> {
    let d = x.den().subs_const(crate::poly::VAR_T, point);
    if d.is_zero() {
        return Err(Error::PoleAtPoint(fmt_rational(point)));
    }
    let n = x.num().subs_const(crate::poly::VAR_T, point);
    if strict && n.is_zero() {
        return Err(Error::ZeroAtPoint(fmt_rational(point)));
    }
    Ok(RatFunc::new(n, d).expect("nonzero denominator"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VAR_T;
    use crate::rational::{rat, ratio};

    fn t() -> RatFunc {
        RatFunc::var(VAR_T)
    }

    #[test]
    fn expands_integers_over_primes() {
        let mut reg = MultBasisRegistry::from_ints(&[2, 3]);
        let v = registry_expand(&RatFunc::from_int(12), &mut reg).unwrap();
        assert_eq!(v.get(0), rat(2));
        assert_eq!(v.get(1), rat(1));
        let mut reg = MultBasisRegistry::from_ints(&[3, 5]);
        let e = reg.expand(&RatFunc::constant(ratio(-5, 9))).unwrap();
        assert_eq!(e.vector.get(1), rat(1));
        assert_eq!(e.vector.get(0), rat(-2));
        assert!(e.negative);
        assert!(registry_expand(&RatFunc::one(), &mut reg).unwrap().is_zero());
        assert_eq!(registry_expand(&RatFunc::zero(), &mut reg), Err(Error::ZeroElement));
    }

    #[test]
    fn splits_polynomials_by_gcd() {
        let mut reg = MultBasisRegistry::new();
        let a = t().sub(&RatFunc::from_int(1)).mul(&t().add(&RatFunc::from_int(2)));
        reg.register(&a).unwrap();
        assert_eq!(reg.len(), 1);
        let b = t().sub(&RatFunc::from_int(1)).scale(&rat(-6));
        let e = reg.expand(&b).unwrap();
        assert!(reg.pairwise_coprime());
        assert_eq!(reg.reconstruct(&e).unwrap(), b);
        let ea = reg.expand(&a).unwrap();
        assert_eq!(reg.reconstruct(&ea).unwrap(), a);
        assert_eq!(ea.vector.entries().count(), 2);
    }

    #[test]
    fn wedge_examples() {
        let reg = MultBasisRegistry::from_ints(&[2, 3]);
        let s = reg.stamp();
        let a = ExponentVector::from_entries(s, [(0, rat(1))]);
        let b = ExponentVector::from_entries(s, [(0, rat(3))]);
        assert!(wedge_pair(&a, &b).unwrap().is_zero());
        let c = ExponentVector::from_entries(s, [(1, rat(1))]);
        assert_eq!(wedge_pair(&a, &c).unwrap().get(0, 1), rat(1));
        let x = ExponentVector::from_entries(s, [(0, rat(1)), (1, rat(1))]);
        let y = ExponentVector::from_entries(s, [(0, rat(-1)), (1, rat(1))]);
        assert_eq!(wedge_pair(&x, &y).unwrap().get(0, 1), rat(2));
        let other = MultBasisRegistry::from_ints(&[2, 3]);
        let z = ExponentVector::from_entries(other.stamp(), [(0, rat(1))]);
        assert_eq!(wedge_pair(&a, &z), Err(Error::RegistryMismatch));
    }

    #[test]
    fn c0_and_specialization() {
        let one = RatFunc::from_int(1);
        let two = RatFunc::from_int(2);
        let u = t().add(&one).div(&t().sub(&two)).unwrap();
        assert!(c0_check(&u).unwrap());
        assert!(!c0_check(&t().div(&t().sub(&two)).unwrap()).unwrap());
        assert!(!c0_check(&t().sub(&one)).unwrap());
        assert_eq!(
            specialize_field(&u, &rat(0), true).unwrap(),
            RatFunc::constant(ratio(-1, 2))
        );
        assert_eq!(specialize_field(&RatFunc::from_int(7), &rat(1), true).unwrap(), RatFunc::from_int(7));
        assert_eq!(
            specialize_field(&one.div(&t()).unwrap(), &rat(0), true),
            Err(Error::PoleAtPoint("0".into()))
        );
        assert_eq!(specialize_field(&t(), &rat(0), true), Err(Error::ZeroAtPoint("0".into())));
    }
}
