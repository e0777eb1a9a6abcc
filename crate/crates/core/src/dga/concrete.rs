//! The cycle DGA itself: elements are sums of Alt-classes of loci.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use num_traits::One;

use crate::cycle::{param_var, CycleEngine, CycleSum, Locus};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::poly::VAR_T;
use crate::ratfunc::RatFunc;
use crate::rational::{ratio, Rational};
use crate::registry::MultBasisRegistry;

use super::{Dga, PolylogAlgebra};

/// Slots of `u(a, b) = (x, (x − a)/(x − a/b))`.
pub fn u_slots(a: &RatFunc, b: &RatFunc) -> Result<Vec<RatFunc>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let x = param_var(0);
    let ab = a.div(b).expect("b is nonzero");
    let den = x.sub(&ab);
    Ok(vec![x.clone(), x.sub(a).div(&den).expect("x - a/b is nonzero")])
}

/// Slots of the unsigned locus
/// `(u₁, …, u_{k−1}, 1 − u₁, 1 − u₂/u₁, …, 1 − a/u_{k−1})`.
pub fn rho_slots(k: usize, a: &RatFunc) -> Vec<RatFunc> {
    if k == 1 {
        return vec![a.one_minus()];
    }
    let us: Vec<RatFunc> = (0..k - 1).map(param_var).collect();
    let mut slots = us.clone();
    slots.push(us[0].one_minus());
    for i in 1..k {
        let num = if i < k - 1 { &us[i] } else { a };
        slots.push(RatFunc::one().sub(&num.div(&us[i - 1]).expect("parameter is nonzero")));
    }
    slots
}

pub struct ConcreteDga {
    engine: CycleEngine,
    reg: RefCell<MultBasisRegistry>,
    rho_signs: RefCell<HashMap<usize, i8>>,
    rho_checked: RefCell<HashSet<(usize, RatFunc)>>,
}

impl ConcreteDga {
    pub fn new(reg: MultBasisRegistry) -> Self {
        ConcreteDga {
            engine: CycleEngine::new(),
            reg: RefCell::new(reg),
            rho_signs: RefCell::new(HashMap::new()),
            rho_checked: RefCell::new(HashSet::new()),
        }
    }

    pub fn engine(&self) -> &CycleEngine {
        &self.engine
    }

    pub fn u(&self, a: &RatFunc, b: &RatFunc) -> Result<CycleSum> {
        self.engine.locus(&u_slots(a, b)?)
    }

    /// Sign `ε_k` with `d(ε_k L_k(a)) = ρ_{k−1}(a)·(a)`, where `L_k` is the
    /// unsigned locus, fixed once with a generic argument.
    pub fn rho_sign(&self, k: usize) -> Result<i8> {
        if k < 2 {
            return Ok(1);
        }
        if let Some(&s) = self.rho_signs.borrow().get(&k) {
            return Ok(s);
        }
        let a = RatFunc::var(VAR_T);
        let s = self.sign_against(k, &a)?.ok_or_else(|| Error::SignDeterminationFailed {
            k,
            arg: a.to_string(),
        })?;
        self.rho_signs.borrow_mut().insert(k, s);
        Ok(s)
    }

    /// `None` when both sides vanish and the sign is not visible.
    fn sign_against(&self, k: usize, a: &RatFunc) -> Result<Option<i8>> {
        let unsigned = self.engine.locus(&rho_slots(k, a))?;
        let d = self.engine.differential(&unsigned)?;
        let target = self.mul(&self.rho(k - 1, a)?, &self.point(a)?)?;
        if d.is_zero() && target.is_zero() {
            Ok(None)
        } else if d == target {
            Ok(Some(1))
        } else if d == target.neg() {
            Ok(Some(-1))
        } else {
            Err(Error::SignDeterminationFailed {
                k,
                arg: a.to_string(),
            })
        }
    }

    /// `r(x, z)` by peeling registry factors off `x` one at a time.
    pub fn r_chain(&self, x: &RatFunc) -> Result<CycleSum> {
        if x.is_one() || self.reg.borrow().index_of(x).is_some() {
            return Ok(CycleSum::zero());
        }
        let e = self.expand(x)?;
        let mut factors = Vec::new();
        for (j, c) in e.vector.entries() {
            if !c.is_integer() {
                return Err(Error::DegenerateArguments(format!(
                    "non-integral exponent for {x}"
                )));
            }
            let z = self.reg.borrow().symbol_value(j);
            factors.push((z, c.to_integer().try_into().map_err(|_| {
                Error::DegenerateArguments(format!("exponent too large for {x}"))
            })?));
        }
        self.peel(x, &factors)
    }

    /// A chain `c` with `d c = (x) − Σ e_j (z_j)` for `x = ±Π z_j^{e_j}`.
    pub fn peel(&self, x: &RatFunc, factors: &[(RatFunc, i64)]) -> Result<CycleSum> {
        let mut rem: Vec<(RatFunc, i64)> =
            factors.iter().filter(|(_, e)| *e != 0).cloned().collect();
        let mut x = x.clone();
        let mut out = CycleSum::zero();
        loop {
            if x.is_one() && rem.is_empty() {
                break;
            }
            if rem.is_empty() {
                if x == RatFunc::from_int(-1) {
                    out.add_scaled(&self.u(&RatFunc::one(), &x)?, &ratio(1, 2));
                    break;
                }
                return Err(Error::DegenerateArguments(format!(
                    "{x} is left over after peeling"
                )));
            }
            if rem.len() == 1 && rem[0].1 == 1 && rem[0].0 == x {
                break;
            }
            let (z, e) = rem[0].clone();
            if e > 0 {
                out.add_scaled(&self.u(&x, &z)?, &-Rational::one());
                x = x.div(&z).ok_or(Error::ZeroElement)?;
                rem[0].1 -= 1;
            } else {
                let xz = x.mul(&z);
                out.add_scaled(&self.u(&xz, &z)?, &Rational::one());
                x = xz;
                rem[0].1 += 1;
            }
            if rem[0].1 == 0 {
                rem.remove(0);
            }
        }
        Ok(out)
    }
}

impl Dga for ConcreteDga {
    type Basis = Locus;

    fn basis_degree(&self, b: &Locus) -> i64 {
        b.degree()
    }

    fn basis_weight(&self, b: &Locus) -> usize {
        b.weight()
    }

    fn d_basis(&self, b: &Locus) -> Result<CycleSum> {
        self.engine.differential_locus(b)
    }

    fn mul_basis(&self, a: &Locus, b: &Locus) -> Result<CycleSum> {
        self.engine.product_loci(a, b)
    }

    fn render_basis(&self, b: &Locus) -> String {
        b.render()
    }

    fn render_letter(&self, b: &Locus) -> String {
        b.render_compact()
    }

    fn d(&self, x: &CycleSum) -> Result<CycleSum> {
        self.engine.differential(x)
    }
}

impl PolylogAlgebra for ConcreteDga {
    fn point(&self, x: &RatFunc) -> Result<CycleSum> {
        self.engine.point(x)
    }

    fn rho(&self, k: usize, x: &RatFunc) -> Result<CycleSum> {
        if k == 0 {
            return Err(Error::DegreeMismatch("rho needs k >= 1".to_string()));
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if k == 1 {
            let y = x.one_minus();
            return if y.is_zero() {
                Ok(CycleSum::zero())
            } else {
                self.point(&y)
            };
        }
        let sign = self.rho_sign(k)?;
        let key = (k, x.clone());
        if !self.rho_checked.borrow().contains(&key) {
            if matches!(self.sign_against(k, x)?, Some(s) if s != sign) {
                return Err(Error::SignDeterminationFailed {
                    k,
                    arg: x.to_string(),
                });
            }
            self.rho_checked.borrow_mut().insert(key);
        }
        let unsigned = self.engine.locus(&rho_slots(k, x))?;
        Ok(unsigned.scale(&Rational::from_integer(sign.into())))
    }

    fn r(&self, x: &RatFunc) -> Result<CycleSum> {
        self.r_chain(x)
    }

    fn registry(&self) -> &RefCell<MultBasisRegistry> {
        &self.reg
    }
}

impl ConcreteDga {
    /// Is `c` a sum of Alt-classes of admissible loci?
    pub fn is_admissible(&self, c: &CycleSum) -> Result<bool> {
        self.engine.is_admissible(c, &[])
    }
}

pub type ConcreteElem = LinComb<Locus>;
