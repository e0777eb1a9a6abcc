//! Alt-class canonicalization of parametric loci.
//!
//! The orbit of a locus under slot permutations and per-slot inversion
//! `u ↦ 1/u` is explored through its graph parametrizations: for every set of
//! slots that can serve as parameters (solvable one Möbius step at a time),
//! every ordering of that set and every inversion pattern on it, the other
//! slots are rewritten in the new parameters, oriented, and sorted.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::{is_param, param, Poly, Var};
use crate::ratfunc::RatFunc;
use crate::rational::is_minus_one;

use super::locus::{Locus, SlotKey};

const TEMP_BASE: Var = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canon {
    Zero,
    Signed(i8, Locus),
}

/// Cheap rejections that make the Alt-class vanish outright, and the
/// admissibility guard for constant 0 slots.
fn prescreen(slots: &[RatFunc]) -> Result<bool> {
    for f in slots {
        if f.is_one() {
            return Ok(true);
        }
        if f.is_zero() {
            return Err(Error::AdmissibilityError(
                "slot identically 0".to_string(),
            ));
        }
        if f.constant_value().is_some_and(|c| is_minus_one(&c)) {
            return Ok(true);
        }
    }
    for (i, f) in slots.iter().enumerate() {
        for g in &slots[i + 1..] {
            if f == g {
                return Ok(true);
            }
            if f.mul(g).is_one() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn slot_params(slots: &[RatFunc]) -> Vec<Var> {
    let mut vars: Vec<Var> = slots
        .iter()
        .flat_map(|f| f.vars())
        .filter(|&v| is_param(v))
        .collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

/// Coefficients `(α, β, γ, δ)` with `f = (αq + β)/(γq + δ)` when `f` is
/// Möbius in `q`.
pub fn mobius_coeffs(f: &RatFunc, q: Var) -> Option<(Poly, Poly, Poly, Poly)> {
    if !f.contains_var(q) || f.num().degree_in(q) > 1 || f.den().degree_in(q) > 1 {
        return None;
    }
    Some((
        f.num().coeff_of(q, 1),
        f.num().coeff_of(q, 0),
        f.den().coeff_of(q, 1),
        f.den().coeff_of(q, 0),
    ))
}

/// Solve `f(q) = y` for `q` when `f` is Möbius in `q`.
pub fn mobius_inverse(f: &RatFunc, q: Var, y: &Poly) -> Option<RatFunc> {
    let (a, b, c, d) = mobius_coeffs(f, q)?;
    RatFunc::new(&b - &(&d * y), &(&c * y) - &a)
}

/// Express the slots outside `set` as functions of temporaries standing for
/// the slots in `set`. `None` when the set does not parametrize the locus by
/// successive Möbius solves.
fn solve_projection(slots: &[RatFunc], set: &[usize], params: &[Var]) -> Option<Vec<RatFunc>> {
    let mut pending: Vec<(usize, RatFunc)> = set.iter().map(|&i| (i, slots[i].clone())).collect();
    let mut remaining: Vec<Var> = params.to_vec();
    let mut subs: Vec<(Var, RatFunc)> = Vec::new();
    while !pending.is_empty() {
        let mut found = None;
        'search: for (k, (_, f)) in pending.iter().enumerate() {
            for &q in &remaining {
                if mobius_coeffs(f, q).is_some() {
                    found = Some((k, q));
                    break 'search;
                }
            }
        }
        let (k, q) = found?;
        let (slot, f) = pending.remove(k);
        let y = Poly::var(TEMP_BASE + slot as Var);
        let g = mobius_inverse(&f, q, &y)?;
        for (_, h) in pending.iter_mut() {
            *h = h.subs(q, &g)?;
        }
        remaining.retain(|&v| v != q);
        if pending
            .iter()
            .any(|(_, h)| !remaining.iter().any(|&v| h.contains_var(v)))
        {
            return None;
        }
        subs.push((q, g));
    }
    let mut out = Vec::new();
    for (i, f) in slots.iter().enumerate() {
        if set.contains(&i) {
            continue;
        }
        let mut h = f.clone();
        for (q, g) in &subs {
            h = h.subs(*q, g)?;
        }
        if h.vars().iter().any(|&v| is_param(v) && v < TEMP_BASE) {
            return None;
        }
        out.push(h);
    }
    Some(out)
}

fn permutation_sign(order: &[usize]) -> i8 {
    let mut sign = 1;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                sign = -sign;
            }
        }
    }
    sign
}

struct Best {
    key: Vec<SlotKey>,
    slots: Vec<RatFunc>,
    sign: i8,
    conflict: bool,
}

impl Best {
    fn offer(best: &mut Option<Best>, key: Vec<SlotKey>, slots: Vec<RatFunc>, sign: i8) {
        match best {
            None => {
                *best = Some(Best {
                    key,
                    slots,
                    sign,
                    conflict: false,
                })
            }
            Some(b) => match key.cmp(&b.key) {
                std::cmp::Ordering::Less => {
                    *b = Best {
                        key,
                        slots,
                        sign,
                        conflict: false,
                    }
                }
                std::cmp::Ordering::Equal => {
                    if sign != b.sign {
                        b.conflict = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

/// Orient each slot to the smaller of `f` and `1/f`, then sort. Returns the
/// sorted slots, their keys and the sign of the group element applied.
fn orient_and_sort(slots: Vec<RatFunc>) -> (Vec<RatFunc>, Vec<SlotKey>, i8) {
    let mut sign = 1i8;
    let mut keyed: Vec<(SlotKey, RatFunc, usize)> = Vec::with_capacity(slots.len());
    for (i, f) in slots.into_iter().enumerate() {
        if f.num().total_degree() == 1 && f.num().is_monomial() && f.den().is_one() {
            // A bare parameter is already minimal.
            keyed.push((SlotKey::of(&f), f, i));
            continue;
        }
        let inv = f.inv().expect("slot is nonzero");
        let (kf, ki) = (SlotKey::of(&f), SlotKey::of(&inv));
        if ki < kf {
            sign = -sign;
            keyed.push((ki, inv, i));
        } else {
            keyed.push((kf, f, i));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let order: Vec<usize> = keyed.iter().map(|k| k.2).collect();
    sign *= permutation_sign(&order);
    let mut out_slots = Vec::with_capacity(keyed.len());
    let mut keys = Vec::with_capacity(keyed.len());
    for (k, f, _) in keyed {
        keys.push(k);
        out_slots.push(f);
    }
    (out_slots, keys, sign)
}

/// Canonical Alt-class representative of the locus with the given slots.
/// Parameters may be any parameter variables; the result uses `p0, p1, ...`.
pub fn canonicalize_slots(slots: &[RatFunc]) -> Result<Canon> {
    if prescreen(slots)? {
        return Ok(Canon::Zero);
    }
    let params = slot_params(slots);
    let d = params.len();
    let n = slots.len();
    if d > n {
        return Err(Error::UnsupportedLocus(
            "more parameters than slots".to_string(),
        ));
    }
    let mut best: Option<Best> = None;
    for set in (0..n).combinations(d) {
        if set
            .iter()
            .any(|&i| !params.iter().any(|&v| slots[i].contains_var(v)))
        {
            continue;
        }
        let Some(rest) = solve_projection(slots, &set, &params) else {
            continue;
        };
        let rest_positions: Vec<usize> = (0..n).filter(|i| !set.contains(i)).collect();
        for mask in 0u32..(1 << d) {
            let mut inverted = rest.clone();
            let mut mask_sign = 1i8;
            for (m, &s) in set.iter().enumerate() {
                if mask & (1 << m) != 0 {
                    mask_sign = -mask_sign;
                    let y = TEMP_BASE + s as Var;
                    let inv = RatFunc::var(y).inv().expect("nonzero");
                    for h in inverted.iter_mut() {
                        *h = h.subs(y, &inv).expect("inversion keeps denominators nonzero");
                    }
                }
            }
            for ordering in set.iter().copied().permutations(d) {
                let rename = |v: Var| -> Var {
                    if v >= TEMP_BASE {
                        let s = (v - TEMP_BASE) as usize;
                        let m = ordering.iter().position(|&o| o == s).expect("temp in set");
                        param(m)
                    } else {
                        v
                    }
                };
                let mut full: Vec<RatFunc> = vec![RatFunc::zero(); n];
                for (m, &s) in ordering.iter().enumerate() {
                    full[s] = RatFunc::var(param(m));
                }
                for (h, &pos) in inverted.iter().zip(&rest_positions) {
                    full[pos] = h.map_vars(rename);
                }
                let (sorted, keys, sign) = orient_and_sort(full);
                Best::offer(&mut best, keys, sorted, sign * mask_sign);
            }
        }
    }
    match best {
        None => Err(Error::UnsupportedLocus(format!(
            "no Möbius parametrization for {}",
            slots.iter().map(|f| f.to_string()).join(", ")
        ))),
        Some(b) if b.conflict => Ok(Canon::Zero),
        Some(b) => Ok(Canon::Signed(b.sign, Locus::new(b.slots))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(i: usize) -> RatFunc {
        RatFunc::var(param(i))
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn two_free_parameters_vanish() {
        assert_eq!(canonicalize_slots(&[p(0), p(1)]).unwrap(), Canon::Zero);
    }

    #[test]
    fn points_are_oriented_and_sorted() {
        match canonicalize_slots(&[RatFunc::constant(ratio(1, 2))]).unwrap() {
            Canon::Signed(s, l) => {
                assert_eq!(s, -1);
                assert_eq!(l.render(), "(pt 2)");
            }
            Canon::Zero => panic!(),
        }
        match canonicalize_slots(&[c(3), c(2)]).unwrap() {
            Canon::Signed(s, l) => {
                assert_eq!(s, -1);
                assert_eq!(l.render(), "(pt 2 3)");
            }
            Canon::Zero => panic!(),
        }
        assert_eq!(canonicalize_slots(&[c(2), c(2)]).unwrap(), Canon::Zero);
        assert_eq!(canonicalize_slots(&[c(-1)]).unwrap(), Canon::Zero);
        assert_eq!(canonicalize_slots(&[c(1)]).unwrap(), Canon::Zero);
    }

    #[test]
    fn reparametrized_locus_has_same_class() {
        // (x, (x-3)/(x-3/2)) against its transpose written in the other parameter.
        let x = p(0);
        let f = x.sub(&c(3)).div(&x.sub(&RatFunc::constant(ratio(3, 2)))).unwrap();
        let a = canonicalize_slots(&[x.clone(), f.clone()]).unwrap();
        let y = p(3);
        let g = mobius_inverse(&f, param(0), &Poly::var(param(3))).unwrap();
        let b = canonicalize_slots(&[y, g]).unwrap();
        match (a, b) {
            (Canon::Signed(sa, la), Canon::Signed(sb, lb)) => {
                assert_eq!(la, lb);
                assert_eq!(sa, -sb);
            }
            _ => panic!("unexpected zero"),
        }
        let _ = rat(0);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let x = p(0);
        let rho2 = [x.clone(), x.one_minus(), RatFunc::one().sub(&c(5).div(&x).unwrap())];
        let Canon::Signed(_, l) = canonicalize_slots(&rho2).unwrap() else {
            panic!()
        };
        assert_eq!(
            canonicalize_slots(l.slots()).unwrap(),
            Canon::Signed(1, l.clone())
        );
    }
}
