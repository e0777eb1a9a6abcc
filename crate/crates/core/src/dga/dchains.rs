//! Families of bounding chains `D^{n−k}_{j₁…j_k}` for a combination
//! `X = Σ aᵢ{xᵢ}`, their defining equalities, the cochain `𝒫_n(X)`, and the
//! replay of a change of `r` by a coboundary.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

use super::formal::{FormalDga, FormalElem};
use super::{binomial, factorial, Dga, PolylogAlgebra};

/// Chains indexed by tuples `(j₁, …, j_k)` of registry indices; the chain
/// `D^{n−k}` sits at a tuple of length `k`. Missing tuples are zero.
#[derive(Clone, Debug)]
pub struct DFamily<B: Ord + Clone> {
    pub n: usize,
    pub chains: BTreeMap<Vec<usize>, LinComb<B>>,
}

impl<B: Ord + Clone> DFamily<B> {
    pub fn new(n: usize) -> Self {
        DFamily {
            n,
            chains: BTreeMap::new(),
        }
    }

    pub fn get(&self, tuple: &[usize]) -> LinComb<B> {
        self.chains.get(tuple).cloned().unwrap_or_default()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.chains.contains_key(tuple)
    }

    pub fn insert(&mut self, tuple: Vec<usize>, chain: LinComb<B>) {
        self.chains.insert(tuple, chain);
    }
}

/// The expansion matrix `c_{ij}` of the arguments over the registry, after
/// registering every `xᵢ` and `1 − xᵢ`.
pub struct Expansions {
    pub c: Vec<Vec<Rational>>,
    pub nsym: usize,
}

impl Expansions {
    pub fn of<A: PolylogAlgebra>(alg: &A, args: &[(Rational, RatFunc)]) -> Result<Expansions> {
        for (_, x) in args {
            alg.expand(x)?;
            let y = x.one_minus();
            if !y.is_zero() {
                alg.expand(&y)?;
            }
        }
        let nsym = alg.registry().borrow().len();
        let mut c = Vec::with_capacity(args.len());
        for (_, x) in args {
            let e = alg.expand(x)?;
            c.push((0..nsym).map(|j| e.vector.get(j)).collect());
        }
        Ok(Expansions { c, nsym })
    }

    /// `c_{i j₁ ⋯ j_k} = Π_t c_{i j_t}`.
    pub fn coeff(&self, i: usize, tuple: &[usize]) -> Rational {
        tuple.iter().map(|&j| self.c[i][j].clone()).product()
    }

    pub fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        (0..k).map(|_| 0..self.nsym).multi_cartesian_product().collect()
    }
}

/// Right-hand side of the equality for `dD^{n−k}_{tuple}`:
/// `Σ aᵢ c_{i,tuple} P_{n−k}(xᵢ) − Σ_j D^{n−k−1}_{tuple,j}·(z_j)`, the last sum
/// present only for `k ≤ n − 3`; `P₂` means `P̃₂`.
pub fn rhs<A: PolylogAlgebra>(
    alg: &A,
    args: &[(Rational, RatFunc)],
    exps: &Expansions,
    family: &DFamily<A::Basis>,
    tuple: &[usize],
    cochain: &dyn Fn(usize, usize) -> Result<LinComb<A::Basis>>,
) -> Result<LinComb<A::Basis>> {
    let n = family.n;
    let k = tuple.len();
    let mut out = LinComb::zero();
    for (i, (a, _)) in args.iter().enumerate() {
        let coef = a * exps.coeff(i, tuple);
        if !coef.is_zero() {
            out.add_scaled(&cochain(n - k, i)?, &coef);
        }
    }
    if k + 3 <= n {
        for j in 0..exps.nsym {
            let mut next = tuple.to_vec();
            next.push(j);
            let d = family.get(&next);
            if !d.is_zero() {
                let z = alg.registry().borrow().symbol_value(j);
                out = out.sub(&alg.mul(&d, &alg.point(&z)?)?);
            }
        }
    }
    Ok(out)
}

fn standard_cochain<'a, A: PolylogAlgebra>(
    alg: &'a A,
    args: &'a [(Rational, RatFunc)],
) -> impl Fn(usize, usize) -> Result<LinComb<A::Basis>> + 'a {
    move |m, i| alg.polylog_cochain(m, &args[i].1)
}

#[derive(Clone, Debug, Default)]
pub struct DChainReport {
    /// Tuples whose differential equality fails, with the rendered defect.
    pub property_i: Vec<(Vec<usize>, String)>,
    /// Tuples with some index unused by every `xᵢ` but a nonzero chain.
    pub vanishing: Vec<Vec<usize>>,
    /// Pairs of reorderings with different chains.
    pub symmetric_chain: Vec<(Vec<usize>, Vec<usize>)>,
    /// Pairs of reorderings with different differentials.
    pub symmetric_differential: Vec<(Vec<usize>, Vec<usize>)>,
    pub tuples_checked: usize,
}

impl DChainReport {
    pub fn passed(&self) -> bool {
        self.property_i.is_empty()
            && self.vanishing.is_empty()
            && self.symmetric_chain.is_empty()
            && self.symmetric_differential.is_empty()
    }
}

/// Check the differential equalities, the vanishing clause and the
/// ordering independence of a supplied family.
pub fn verify_d_chain_properties<A: PolylogAlgebra>(
    alg: &A,
    args: &[(Rational, RatFunc)],
    family: &DFamily<A::Basis>,
) -> Result<DChainReport> {
    let cochain = standard_cochain(alg, args);
    verify_with(alg, args, family, &cochain)
}

pub fn verify_with<A: PolylogAlgebra>(
    alg: &A,
    args: &[(Rational, RatFunc)],
    family: &DFamily<A::Basis>,
    cochain: &dyn Fn(usize, usize) -> Result<LinComb<A::Basis>>,
) -> Result<DChainReport> {
    let exps = Expansions::of(alg, args)?;
    let stamp = alg.registry().borrow().stamp();
    let n = family.n;
    let mut report = DChainReport::default();
    for k in 1..=n.saturating_sub(2) {
        for tuple in exps.tuples(k) {
            report.tuples_checked += 1;
            let chain = family.get(&tuple);
            let defect = alg.d(&chain)?.sub(&rhs(alg, args, &exps, family, &tuple, cochain)?);
            if !defect.is_zero() {
                report.property_i.push((tuple.clone(), alg.render(&defect)));
            }
            let unused = tuple
                .iter()
                .any(|&j| (0..args.len()).all(|i| exps.c[i][j].is_zero()));
            if unused && !chain.is_zero() {
                report.vanishing.push(tuple.clone());
            }
            if k >= 2 {
                for perm in tuple.iter().copied().permutations(k).unique() {
                    if perm <= tuple {
                        continue;
                    }
                    let other = family.get(&perm);
                    if other != chain {
                        report.symmetric_chain.push((tuple.clone(), perm.clone()));
                        if alg.d(&other)? != alg.d(&chain)? {
                            report.symmetric_differential.push((tuple.clone(), perm));
                        }
                    }
                }
            }
        }
    }
    if alg.registry().borrow().stamp() != stamp {
        return Err(Error::RegistryMismatch);
    }
    Ok(report)
}

/// `𝒫_n(X) = Σ aᵢ P_n(xᵢ) − Σ_j D^{n−1}_j·(z_j)`, or `Σ aᵢ P̃₂(xᵢ)` for `n = 2`.
pub fn assemble_script_p<A: PolylogAlgebra>(
    alg: &A,
    args: &[(Rational, RatFunc)],
    n: usize,
    family: Option<&DFamily<A::Basis>>,
) -> Result<LinComb<A::Basis>> {
    let mut out = LinComb::zero();
    if n == 2 {
        for (a, x) in args {
            out.add_scaled(&alg.tilde_p2(x)?, a);
        }
        return Ok(out);
    }
    let exps = Expansions::of(alg, args)?;
    let Some(family) = family else {
        if args.iter().all(|(a, _)| a.is_zero()) {
            return Ok(out);
        }
        return Err(Error::MissingChains(format!("no D-chains supplied for n = {n}")));
    };
    if family.n != n {
        return Err(Error::DegreeMismatch(format!(
            "family built for n = {}, asked for n = {n}",
            family.n
        )));
    }
    let report = verify_d_chain_properties(alg, args, family)?;
    if let Some((tuple, defect)) = report.property_i.first() {
        if !family.contains(tuple) {
            return Err(Error::MissingChains(format!("no chain for {tuple:?}")));
        }
        return Err(Error::PropertyIFailed(format!("{tuple:?}: {defect}")));
    }
    for (a, x) in args {
        out.add_scaled(&alg.big_p(n, x)?, a);
    }
    for j in 0..exps.nsym {
        let d = family.get(&[j]);
        if !d.is_zero() {
            let z = alg.registry().borrow().symbol_value(j);
            out = out.sub(&alg.mul(&d, &alg.point(&z)?)?);
        }
    }
    Ok(out)
}

/// Declare formal symbols `D{n−k}_{j₁}_…` whose differentials are the
/// right-hand sides of the defining equalities, deepest level first. One
/// symbol serves every reordering of a tuple; zero right-hand sides give zero
/// chains. Fails with `NotACocycle` when some right-hand side is not closed,
/// i.e. when `X` does not satisfy the kernel conditions.
pub fn declare_formal_family(
    alg: &FormalDga,
    args: &[(Rational, RatFunc)],
    n: usize,
) -> Result<DFamily<super::Mono>> {
    let exps = Expansions::of(alg, args)?;
    let cochain = standard_cochain(alg, args);
    let mut family = DFamily::new(n);
    for k in (1..=n.saturating_sub(2)).rev() {
        for tuple in (0..exps.nsym).combinations_with_replacement(k) {
            let r = rhs(alg, args, &exps, &family, &tuple, &cochain)?;
            if r.is_zero() {
                continue;
            }
            let name = format!(
                "D{}_{}",
                n - k,
                tuple.iter().map(|j| j.to_string()).join("_")
            );
            let sym = alg.declare(&name, n - k, 0, r)?;
            for perm in tuple.iter().copied().permutations(k).unique() {
                family.insert(perm, sym.clone());
            }
        }
    }
    Ok(family)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RChange {
    /// `r(x₁, z) ↦ r(x₁, z) + dE`.
    Argument,
    /// `r(ρ₁(x₁), z) ↦ r(ρ₁(x₁), z) + dE`.
    Rho1,
}

#[derive(Clone, Debug)]
pub struct RModReport {
    pub new_family: DFamily<super::Mono>,
    pub property_i: DChainReport,
    /// `𝒫_n` changes exactly by the displayed coboundary.
    pub coboundary_ok: bool,
    /// For [`RChange::Rho1`]: the level `n − 3` right-hand sides (for
    /// `n = 3`, `𝒫₃` itself) are unchanged.
    pub unchanged_lower: Option<bool>,
}

impl RModReport {
    pub fn passed(&self) -> bool {
        self.property_i.passed() && self.coboundary_ok && self.unchanged_lower != Some(false)
    }
}

/// `Σ_{s=1}^{m−1} Σ_{t=1}^{s} (1/s!) C(s,t) ρ_{m−s}(x₁) r^{s−t}·E·(dE)^{t−1}`.
fn correction(
    alg: &FormalDga,
    m: usize,
    x1: &RatFunc,
    r: &FormalElem,
    e: &FormalElem,
    de: &FormalElem,
) -> Result<FormalElem> {
    let mut out = LinComb::zero();
    for s in 1..m {
        for t in 1..=s {
            let mut factors = vec![alg.rho(m - s, x1)?];
            factors.extend(std::iter::repeat_n(r.clone(), s - t));
            factors.push(e.clone());
            factors.extend(std::iter::repeat_n(de.clone(), t - 1));
            let term = alg.product(&factors)?;
            out.add_scaled(&term, &(binomial(s, t) / factorial(s)));
        }
    }
    Ok(out)
}

/// Replay the change of `r` attached to the first argument by `dE` and check
/// that the corrected family satisfies the equalities for the primed
/// cochains and that `𝒫_n` moves by a coboundary.
pub fn replay_r_modification(
    alg: &FormalDga,
    args: &[(Rational, RatFunc)],
    e: &FormalElem,
    old: &DFamily<super::Mono>,
    change: RChange,
) -> Result<RModReport> {
    let n = old.n;
    if args.is_empty() {
        return Err(Error::DegenerateArguments("empty combination".to_string()));
    }
    if alg.degree(e) != Some(-1) || alg.weight(e) != Some(1) || !alg.is_homogeneous(e) {
        return Err(Error::DegreeMismatch(
            "E must be homogeneous of degree -1 and weight 1".to_string(),
        ));
    }
    let exps = Expansions::of(alg, args)?;
    let (a1, x1) = (&args[0].0, &args[0].1);
    let de = alg.d(e)?;
    let r = alg.r(x1)?;
    let r_new = r.add(&de);
    let primed = |m: usize, i: usize| -> Result<FormalElem> {
        if i != 0 {
            return alg.polylog_cochain(m, &args[i].1);
        }
        match (change, m) {
            (RChange::Argument, 2) => {
                let mut p = alg.rho(2, x1)?;
                p = p.add(&alg.mul(&alg.rho(1, x1)?, &r_new)?);
                Ok(p.sub(&alg.mul(&alg.r(&x1.one_minus())?, &alg.expansion(x1)?)?))
            }
            (RChange::Argument, _) => {
                let mut p = alg.rho(m, x1)?;
                for s in 1..m {
                    let mut factors = vec![alg.rho(m - s, x1)?];
                    factors.extend(std::iter::repeat_n(r_new.clone(), s));
                    p.add_scaled(&alg.product(&factors)?, &factorial(s).recip());
                }
                Ok(p)
            }
            (RChange::Rho1, 2) => {
                let r1 = alg.r(&x1.one_minus())?.add(&de);
                let mut p = alg.rho(2, x1)?;
                p = p.add(&alg.mul(&alg.rho(1, x1)?, &r)?);
                Ok(p.sub(&alg.mul(&r1, &alg.expansion(x1)?)?))
            }
            (RChange::Rho1, _) => alg.polylog_cochain(m, x1),
        }
    };

    let mut new_family = DFamily::new(n);
    for (tuple, chain) in &old.chains {
        new_family.insert(tuple.clone(), chain.clone());
    }
    for k in 1..=n.saturating_sub(2) {
        for tuple in exps.tuples(k) {
            let c = a1 * exps.coeff(0, &tuple);
            if c.is_zero() {
                continue;
            }
            let shift = match change {
                RChange::Argument => correction(alg, n - k, x1, &r, e, &de)?,
                RChange::Rho1 if k == n - 2 => alg.mul(e, &alg.expansion(x1)?)?,
                RChange::Rho1 => continue,
            };
            let mut chain = old.get(&tuple);
            chain.add_scaled(&shift, &-c);
            new_family.insert(tuple, chain);
        }
    }
    new_family.chains.retain(|_, c| !c.is_zero());

    let property_i = verify_with(alg, args, &new_family, &primed)?;

    let script = |fam: &DFamily<super::Mono>, cochain: &dyn Fn(usize, usize) -> Result<FormalElem>| -> Result<FormalElem> {
        let mut out = LinComb::zero();
        for (i, (a, _)) in args.iter().enumerate() {
            out.add_scaled(&cochain(n, i)?, a);
        }
        if n >= 3 {
            for j in 0..exps.nsym {
                let d = fam.get(&[j]);
                if !d.is_zero() {
                    let z = alg.registry().borrow().symbol_value(j);
                    out = out.sub(&alg.mul(&d, &alg.point(&z)?)?);
                }
            }
        }
        Ok(out)
    };
    let std_cochain = standard_cochain(alg, args);
    let old_p = script(old, &std_cochain)?;
    let new_p = script(&new_family, &primed)?;
    let (coboundary_ok, unchanged_lower) = match change {
        RChange::Argument => {
            let corr = correction(alg, n, x1, &r, e, &de)?;
            let moved = old_p.add(&alg.d(&corr.scale(&-a1))?);
            (moved == new_p, None)
        }
        RChange::Rho1 => {
            let same = if n <= 3 {
                old_p == new_p
            } else {
                let mut all = true;
                for tuple in exps.tuples(n - 3) {
                    let before = rhs(alg, args, &exps, old, &tuple, &std_cochain)?;
                    let after = rhs(alg, args, &exps, &new_family, &tuple, &primed)?;
                    all &= before == after;
                }
                all
            };
            let expected = if n == 2 {
                let shift = alg.d(&alg.mul(e, &alg.expansion(x1)?)?)?;
                old_p.sub(&shift.scale(a1))
            } else {
                old_p
            };
            (expected == new_p, (n >= 3).then_some(same))
        }
    };
    Ok(RModReport {
        new_family,
        property_i,
        coboundary_ok,
        unchanged_lower,
    })
}
