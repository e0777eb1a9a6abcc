//! Parametric cubical cycles: Alt-classes, faces, differential, products and
//! specialization.

pub mod canon;
pub mod face;
pub mod locus;

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::poly::{is_param, param, Var};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

pub use canon::{canonicalize_slots, Canon};
pub use face::{face_raw, FaceSpec, FaceValue};
pub use locus::Locus;

/// A rational combination of canonical Alt-class representatives.
pub type CycleSum = LinComb<Locus>;

/// Arity and parameter count shared by the loci of a sum, if any.
pub fn sum_shape(c: &CycleSum) -> Option<(usize, usize)> {
    c.basis().next().map(|l| (l.arity(), l.nparams()))
}

/// Canonicalization and differential with per-engine memo tables.
#[derive(Default)]
pub struct CycleEngine {
    canon_memo: RefCell<HashMap<Vec<RatFunc>, Canon>>,
    d_memo: RefCell<HashMap<Locus, CycleSum>>,
}

impl CycleEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonicalize(&self, slots: &[RatFunc]) -> Result<Canon> {
        if let Some(c) = self.canon_memo.borrow().get(slots) {
            return Ok(c.clone());
        }
        let c = canonicalize_slots(slots)?;
        self.canon_memo.borrow_mut().insert(slots.to_vec(), c.clone());
        Ok(c)
    }

    /// The Alt-class of the locus with these slots, as a cycle sum.
    pub fn locus(&self, slots: &[RatFunc]) -> Result<CycleSum> {
        Ok(match self.canonicalize(slots)? {
            Canon::Zero => CycleSum::zero(),
            Canon::Signed(s, l) => CycleSum::term(l, Rational::from_integer(s.into())),
        })
    }

    /// The point cycle `(x)` in `□¹`.
    pub fn point(&self, x: &RatFunc) -> Result<CycleSum> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        self.locus(std::slice::from_ref(x))
    }

    pub fn face(&self, l: &Locus, spec: FaceSpec) -> Result<CycleSum> {
        let mut out = CycleSum::zero();
        for (m, slots) in face_raw(l.slots(), spec)? {
            out.add_scaled(&self.locus(&slots)?, &Rational::from_integer(m.into()));
        }
        Ok(out)
    }

    /// `d = Σ_i (−1)^{i−1} (∂_0^i − ∂_∞^i)` on a canonical locus.
    pub fn differential_locus(&self, l: &Locus) -> Result<CycleSum> {
        if let Some(d) = self.d_memo.borrow().get(l) {
            return Ok(d.clone());
        }
        let mut out = CycleSum::zero();
        for i in 0..l.arity() {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            let z = self.face(l, FaceSpec { slot: i, value: FaceValue::Zero })?;
            let inf = self.face(l, FaceSpec { slot: i, value: FaceValue::Infinity })?;
            out.add_scaled(&z, &sign);
            out.add_scaled(&inf, &-sign);
        }
        self.d_memo.borrow_mut().insert(l.clone(), out.clone());
        Ok(out)
    }

    pub fn differential(&self, c: &CycleSum) -> Result<CycleSum> {
        c.map_linear(|l| self.differential_locus(l))
    }

    /// `Alt(l × m)`: slots concatenated, parameters of `m` shifted past those of `l`.
    pub fn product_loci(&self, l: &Locus, m: &Locus) -> Result<CycleSum> {
        let shift = l.nparams() as Var;
        let mut slots: Vec<RatFunc> = l.slots().to_vec();
        for f in m.slots() {
            slots.push(f.map_vars(|v| if is_param(v) { v + shift } else { v }));
        }
        self.locus(&slots)
    }

    pub fn product(&self, a: &CycleSum, b: &CycleSum) -> Result<CycleSum> {
        let mut out = CycleSum::zero();
        for (l, c) in a.iter() {
            for (m, e) in b.iter() {
                out.add_scaled(&self.product_loci(l, m)?, &(c * e));
            }
        }
        Ok(out)
    }

    /// Substitute a constant for a field variable (`t` or `s`) in every slot.
    pub fn specialize(&self, c: &CycleSum, var: Var, value: &Rational) -> Result<CycleSum> {
        c.map_linear(|l| {
            let vals: Vec<Option<RatFunc>> =
                l.slots().iter().map(|f| f.subs_const(var, value)).collect();
            if vals.iter().any(|v| v.as_ref().is_some_and(|g| g.is_one())) {
                return Ok(CycleSum::zero());
            }
            let mut slots = Vec::with_capacity(vals.len());
            for (f, v) in l.slots().iter().zip(vals) {
                match v {
                    Some(g) if !g.is_zero() => slots.push(g),
                    _ => {
                        return Err(Error::AdmissibilityError(format!(
                            "slot {f} degenerates at {}",
                            crate::rational::fmt_rational(value)
                        )))
                    }
                }
            }
            self.locus(&slots)
        })
    }

    /// Every iterated face is zero or of the expected dimension, also after
    /// specializing `var` to each marker.
    pub fn is_admissible(&self, c: &CycleSum, markers: &[(Var, Rational)]) -> Result<bool> {
        for l in c.basis() {
            if !self.locus_admissible(l)? {
                return Ok(false);
            }
        }
        for (var, value) in markers {
            let sp = match self.specialize(c, *var, value) {
                Ok(sp) => sp,
                Err(Error::AdmissibilityError(_)) => return Ok(false),
                Err(e) => return Err(e),
            };
            for l in sp.basis() {
                if !self.locus_admissible(l)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn locus_admissible(&self, l: &Locus) -> Result<bool> {
        for i in 0..l.arity() {
            for value in [FaceValue::Zero, FaceValue::Infinity] {
                match self.face(l, FaceSpec { slot: i, value }) {
                    Ok(f) => {
                        for m in f.basis() {
                            if !self.locus_admissible(m)? {
                                return Ok(false);
                            }
                        }
                    }
                    Err(Error::AdmissibilityError(_)) | Err(Error::DegenerateFace(_)) => {
                        return Ok(false)
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(true)
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.canon_memo.borrow().len(), self.d_memo.borrow().len())
    }
}

/// Rename parameters `p_i ↦ p_{i + shift}`.
pub fn shift_params(f: &RatFunc, shift: usize) -> RatFunc {
    f.map_vars(|v| if is_param(v) { v + shift as Var } else { v })
}

/// Parameter variable `p_i` as a field element.
pub fn param_var(i: usize) -> RatFunc {
    RatFunc::var(param(i))
}

/// Render a cycle sum as `(+ term ...)` with positive coefficients first.
pub fn render_sum(c: &CycleSum) -> String {
    render_terms(c.iter().map(|(l, q)| (l.render(), q.clone())).collect())
}

pub fn render_terms(terms: Vec<(String, Rational)>) -> String {
    use num_traits::Signed;
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    let positive = terms.iter().filter(|(_, q)| q.is_positive());
    let negative = terms.iter().filter(|(_, q)| q.is_negative());
    for (s, q) in positive.chain(negative) {
        let body = if q.abs().is_one() {
            s.clone()
        } else {
            format!("(* {} {})", crate::rational::fmt_rational(&q.abs()), s)
        };
        if q.is_negative() {
            parts.push(format!("(- {body})"));
        } else {
            parts.push(body);
        }
    }
    if parts.len() == 1 && !terms[0].1.is_zero() {
        return parts.pop().unwrap();
    }
    format!("(+ {})", parts.join(" "))
}
