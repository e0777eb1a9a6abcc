//! The DGA presented by generators: points, `ρ_k`, `r`, and user symbols
//! with declared differentials. Products are graded-commutative monomials.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::cycle::locus::SlotKey;
use crate::cycle::CycleSum;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ratfunc::RatFunc;
use crate::rational::{is_minus_one, Rational};
use crate::registry::MultBasisRegistry;

use super::concrete::ConcreteDga;
use super::{Dga, PolylogAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Point(RatFunc),
    Rho(usize, RatFunc),
    R(RatFunc),
    Sym(String),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Point(x) => write!(f, "(pt {})", render_field(x)),
            Gen::Rho(k, x) => write!(f, "(rho {k} {})", render_field(x)),
            Gen::R(x) => write!(f, "(r {})", render_field(x)),
            Gen::Sym(name) => f.write_str(name),
        }
    }
}

fn render_field(x: &RatFunc) -> String {
    if x.is_constant() {
        x.to_string()
    } else {
        format!("(poly \"{x}\")")
    }
}

/// A sorted product of generators; the empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub Vec<Gen>);

impl Mono {
    pub fn gen(g: Gen) -> Mono {
        Mono(vec![g])
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct SymDecl {
    pub weight: usize,
    pub degree: i64,
    pub differential: LinComb<Mono>,
}

pub type FormalElem = LinComb<Mono>;

pub struct FormalDga {
    reg: RefCell<MultBasisRegistry>,
    syms: RefCell<BTreeMap<String, SymDecl>>,
}

impl FormalDga {
    pub fn new(reg: MultBasisRegistry) -> Self {
        FormalDga {
            reg: RefCell::new(reg),
            syms: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn gen_degree(&self, g: &Gen) -> i64 {
        match g {
            Gen::Point(_) | Gen::Rho(..) => 1,
            Gen::R(_) => 0,
            Gen::Sym(name) => self.syms.borrow().get(name).map_or(0, |d| d.degree),
        }
    }

    pub fn gen_weight(&self, g: &Gen) -> usize {
        match g {
            Gen::Point(_) | Gen::R(_) => 1,
            Gen::Rho(k, _) => *k,
            Gen::Sym(name) => self.syms.borrow().get(name).map_or(0, |d| d.weight),
        }
    }

    fn odd(&self, g: &Gen) -> bool {
        self.gen_degree(g).rem_euclid(2) == 1
    }

    pub fn gen_elem(g: Gen) -> FormalElem {
        LinComb::single(Mono::gen(g))
    }

    /// Declare a symbol with its differential. Rejected unless the
    /// differential is homogeneous of the right degree and weight and is
    /// itself closed.
    pub fn declare(
        &self,
        name: &str,
        weight: usize,
        degree: i64,
        differential: FormalElem,
    ) -> Result<FormalElem> {
        for m in differential.basis() {
            let (dg, wt) = (self.basis_degree(m), self.basis_weight(m));
            if dg != degree + 1 || wt != weight {
                return Err(Error::DegreeMismatch(format!(
                    "d{name} has a term of degree {dg} and weight {wt}, expected {} and {weight}",
                    degree + 1
                )));
            }
        }
        let dd = self.d(&differential)?;
        if !dd.is_zero() {
            return Err(Error::NotACocycle(format!(
                "d(d{name}) = {}",
                self.render(&dd)
            )));
        }
        self.syms.borrow_mut().insert(
            name.to_string(),
            SymDecl {
                weight,
                degree,
                differential,
            },
        );
        Ok(Self::gen_elem(Gen::Sym(name.to_string())))
    }

    pub fn symbol(&self, name: &str) -> Result<FormalElem> {
        if self.syms.borrow().contains_key(name) {
            Ok(Self::gen_elem(Gen::Sym(name.to_string())))
        } else {
            Err(Error::ConfigError(format!("undeclared symbol {name}")))
        }
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.syms.borrow().contains_key(name)
    }

    /// Product of monomials with its Koszul sign; `None` if an odd generator
    /// would appear twice.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Option<(Rational, Mono)> {
        let mut v = a.0.clone();
        let mut negative = false;
        for g in &b.0 {
            let mut pos = v.len();
            while pos > 0 && &v[pos - 1] > g {
                if self.odd(&v[pos - 1]) && self.odd(g) {
                    negative = !negative;
                }
                pos -= 1;
            }
            v.insert(pos, g.clone());
        }
        for w in v.windows(2) {
            if w[0] == w[1] && self.odd(&w[0]) {
                return None;
            }
        }
        let sign = if negative { -Rational::one() } else { Rational::one() };
        Some((sign, Mono(v)))
    }

    fn d_gen(&self, g: &Gen) -> Result<FormalElem> {
        match g {
            Gen::Point(_) => Ok(LinComb::zero()),
            Gen::Rho(k, x) => {
                let lower = self.rho(k - 1, x)?;
                self.mul(&lower, &self.point(x)?)
            }
            Gen::R(x) => Ok(self.point(x)?.sub(&self.expansion(x)?)),
            Gen::Sym(name) => self
                .syms
                .borrow()
                .get(name)
                .map(|d| d.differential.clone())
                .ok_or_else(|| Error::ConfigError(format!("undeclared symbol {name}"))),
        }
    }

    /// Map to cycles: generators go to their cycle chains, products to
    /// cycle products. Symbols have no realization.
    pub fn realize(&self, conc: &ConcreteDga, x: &FormalElem) -> Result<CycleSum> {
        if self.reg.borrow().stamp() != conc.registry().borrow().stamp() {
            return Err(Error::RegistryMismatch);
        }
        x.map_linear(|m| {
            let mut factors = Vec::with_capacity(m.0.len());
            for g in &m.0 {
                factors.push(match g {
                    Gen::Point(x) => conc.point(x)?,
                    Gen::Rho(k, x) => conc.rho(*k, x)?,
                    Gen::R(x) => conc.r(x)?,
                    Gen::Sym(name) => {
                        return Err(Error::ConfigError(format!(
                            "symbol {name} has no cycle realization"
                        )))
                    }
                });
            }
            conc.product(&factors)
        })
    }
}

impl Dga for FormalDga {
    type Basis = Mono;

    fn basis_degree(&self, b: &Mono) -> i64 {
        b.0.iter().map(|g| self.gen_degree(g)).sum()
    }

    fn basis_weight(&self, b: &Mono) -> usize {
        b.0.iter().map(|g| self.gen_weight(g)).sum()
    }

    fn d_basis(&self, b: &Mono) -> Result<FormalElem> {
        let mut out = LinComb::zero();
        let mut sign = Rational::one();
        for i in 0..b.0.len() {
            let dg = self.d_gen(&b.0[i])?;
            if !dg.is_zero() {
                let prefix = LinComb::single(Mono(b.0[..i].to_vec()));
                let suffix = LinComb::single(Mono(b.0[i + 1..].to_vec()));
                let term = self.mul(&self.mul(&prefix, &dg)?, &suffix)?;
                out.add_scaled(&term, &sign);
            }
            if self.odd(&b.0[i]) {
                sign = -sign;
            }
        }
        Ok(out)
    }

    fn mul_basis(&self, a: &Mono, b: &Mono) -> Result<FormalElem> {
        Ok(match self.mul_mono(a, b) {
            Some((c, m)) => LinComb::term(m, c),
            None => LinComb::zero(),
        })
    }

    fn render_basis(&self, b: &Mono) -> String {
        match b.0.len() {
            0 => "1".to_string(),
            1 => b.0[0].to_string(),
            _ => format!(
                "(* {})",
                b.0.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
            ),
        }
    }
}

impl PolylogAlgebra for FormalDga {
    /// `(x)`, oriented like point classes: `(x) = −(1/x)`, `(±1) = 0`.
    fn point(&self, x: &RatFunc) -> Result<FormalElem> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if x.is_one() || x.constant_value().is_some_and(|c| is_minus_one(&c)) {
            return Ok(LinComb::zero());
        }
        let inv = x.inv().expect("nonzero");
        if SlotKey::of(&inv) < SlotKey::of(x) {
            Ok(LinComb::term(Mono::gen(Gen::Point(inv)), -Rational::one()))
        } else {
            Ok(Self::gen_elem(Gen::Point(x.clone())))
        }
    }

    fn rho(&self, k: usize, x: &RatFunc) -> Result<FormalElem> {
        if k == 0 {
            return Err(Error::DegreeMismatch("rho needs k >= 1".to_string()));
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if k == 1 {
            let y = x.one_minus();
            return if y.is_zero() {
                Ok(LinComb::zero())
            } else {
                self.point(&y)
            };
        }
        Ok(Self::gen_elem(Gen::Rho(k, x.clone())))
    }

    fn r(&self, x: &RatFunc) -> Result<FormalElem> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if x.is_one() {
            return Ok(LinComb::zero());
        }
        self.expand(x)?;
        if self.reg.borrow().index_of(x).is_some() {
            return Ok(LinComb::zero());
        }
        Ok(Self::gen_elem(Gen::R(x.clone())))
    }

    fn registry(&self) -> &RefCell<MultBasisRegistry> {
        &self.reg
    }
}
