//! Faces `u_i = 0` and `u_i = ∞` of parametric loci.

use crate::error::{Error, Result};
use crate::poly::{is_param, Poly, Var};
use crate::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceValue {
    Zero,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    /// Zero-based slot index.
    pub slot: usize,
    pub value: FaceValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlotVal {
    Fin(RatFunc),
    Inf,
}

/// Limit of `f` as `q → ∞`, by comparing degrees in `q`.
pub fn limit_at_infinity(f: &RatFunc, q: Var) -> SlotVal {
    let dn = f.num().degree_in(q);
    let dd = f.den().degree_in(q);
    if dn > dd {
        SlotVal::Inf
    } else if dn < dd {
        SlotVal::Fin(RatFunc::zero())
    } else if dn == 0 {
        SlotVal::Fin(f.clone())
    } else {
        let r = RatFunc::new(f.num().coeff_of(q, dn), f.den().coeff_of(q, dd))
            .expect("leading coefficient is nonzero");
        SlotVal::Fin(r)
    }
}

enum Component {
    Solve(Var, RatFunc),
    AtInfinity(Var),
}

fn params_of(p: &Poly) -> Vec<Var> {
    p.vars().into_iter().filter(|&v| is_param(v)).collect()
}

/// Square-free decomposition in `q` of a polynomial primitive in `q`.
fn squarefree_in(f: &Poly, q: Var) -> Vec<(Poly, u32)> {
    if f.degree_in(q) == 0 {
        return Vec::new();
    }
    let df = f.derivative(q);
    let a0 = crate::poly::gcd(f, &df);
    if a0.degree_in(q) == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(q);
    let mut i = 1;
    while b.degree_in(q) > 0 {
        let a = crate::poly::gcd(&b, &d);
        if a.degree_in(q) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative(q);
        i += 1;
    }
    out
}

/// Irreducible factors of `p` involving parameters, each of degree one in
/// some parameter, with multiplicities.
fn components(p: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    let ps = params_of(p);
    let Some(&q) = ps.first() else {
        return Ok(());
    };
    let content = p.content_in(q);
    if !content.is_constant() {
        components(&content, mult, out)?;
    }
    let prim = if content.is_constant() {
        p.clone()
    } else {
        p.div_exact(&content).expect("content divides")
    };
    for (s, k) in squarefree_in(&prim, q) {
        linear_factor(&s, mult * k, out)?;
    }
    Ok(())
}

fn linear_factor(s: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    for q in params_of(s) {
        if s.degree_in(q) == 1 {
            let content = s.content_in(q);
            if content.is_constant() {
                out.push((s.monic(), mult));
            } else {
                components(&content, mult, out)?;
                out.push((s.div_exact(&content).expect("content divides").monic(), mult));
            }
            return Ok(());
        }
    }
    if params_of(s).is_empty() {
        return Ok(());
    }
    Err(Error::UnsupportedLocus(format!(
        "face component {s} is not linear in any parameter"
    )))
}

/// Raw face: a list of multiplicities with the slot lists of the components.
/// An empty list is the zero cycle.
pub fn face_raw(slots: &[RatFunc], spec: FaceSpec) -> Result<Vec<(u32, Vec<RatFunc>)>> {
    let f = &slots[spec.slot];
    if f.is_zero() {
        return Err(Error::DegenerateFace(format!("slot {} is identically 0", spec.slot + 1)));
    }
    let params: Vec<Var> = {
        let mut v: Vec<Var> = slots
            .iter()
            .flat_map(|g| g.vars())
            .filter(|&v| is_param(v))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let target = match spec.value {
        FaceValue::Zero => f.num(),
        FaceValue::Infinity => f.den(),
    };
    let mut factors = Vec::new();
    components(target, 1, &mut factors)?;
    let mut comps: Vec<(u32, Component)> = Vec::new();
    for (fac, m) in factors {
        let q = params_of(&fac)
            .into_iter()
            .find(|&v| fac.degree_in(v) == 1)
            .expect("linear factor");
        let a = fac.coeff_of(q, 1);
        let b = fac.coeff_of(q, 0);
        let g = RatFunc::new(-&b, a).expect("leading coefficient is nonzero");
        comps.push((m, Component::Solve(q, g)));
    }
    for &q in &params {
        let dn = f.num().degree_in(q);
        let dd = f.den().degree_in(q);
        match spec.value {
            FaceValue::Zero if dd > dn => comps.push((dd - dn, Component::AtInfinity(q))),
            FaceValue::Infinity if dn > dd => comps.push((dn - dd, Component::AtInfinity(q))),
            _ => {}
        }
    }
    let mut out = Vec::new();
    for (m, comp) in comps {
        let mut vals = Vec::with_capacity(slots.len() - 1);
        for (j, h) in slots.iter().enumerate() {
            if j == spec.slot {
                continue;
            }
            let v = match &comp {
                Component::Solve(q, g) => match h.subs(*q, g) {
                    Some(r) => SlotVal::Fin(r),
                    None => SlotVal::Inf,
                },
                Component::AtInfinity(q) => limit_at_infinity(h, *q),
            };
            vals.push(v);
        }
        if vals.iter().any(|v| matches!(v, SlotVal::Fin(r) if r.is_one())) {
            continue;
        }
        let mut new_slots = Vec::with_capacity(vals.len());
        for v in vals {
            match v {
                SlotVal::Fin(r) if !r.is_zero() => new_slots.push(r),
                _ => {
                    return Err(Error::AdmissibilityError(format!(
                        "face u{} = {} lies in another face",
                        spec.slot + 1,
                        match spec.value {
                            FaceValue::Zero => "0",
                            FaceValue::Infinity => "oo",
                        }
                    )))
                }
            }
        }
        out.push((m, new_slots));
    }
    Ok(out)
}
