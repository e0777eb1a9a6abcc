//! The bar complex of a DGA: words of basis letters, the internal and
//! external differentials, shuffle product, deconcatenation coproduct, the
//! motivic polylogarithms, and membership in a span of shuffle products.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::dga::{Dga, PolylogAlgebra};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::linalg;
use crate::ratfunc::RatFunc;
use crate::rational::{fmt_rational, Rational};

pub type Word<B> = Vec<B>;
pub type BarElem<B> = LinComb<Word<B>>;
pub type BarTensor<B> = LinComb<(Word<B>, Word<B>)>;

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// The word `[x₁|…|x_s]` for DGA elements, expanded multilinearly.
pub fn word<A: Dga>(_alg: &A, letters: &[LinComb<A::Basis>]) -> BarElem<A::Basis> {
    let mut acc: BarElem<A::Basis> = LinComb::single(Vec::new());
    for x in letters {
        let mut next = LinComb::zero();
        for (w, c) in acc.iter() {
            for (b, e) in x.iter() {
                let mut w2 = w.clone();
                w2.push(b.clone());
                next.add_term(w2, c * e);
            }
        }
        acc = next;
    }
    acc
}

/// The one-letter word `[x]`.
pub fn letter<A: Dga>(alg: &A, x: &LinComb<A::Basis>) -> BarElem<A::Basis> {
    word(alg, std::slice::from_ref(x))
}

/// `Σ deg aᵢ − s`.
pub fn word_degree<A: Dga>(alg: &A, w: &[A::Basis]) -> i64 {
    w.iter().map(|b| alg.basis_degree(b)).sum::<i64>() - w.len() as i64
}

pub fn word_weight<A: Dga>(alg: &A, w: &[A::Basis]) -> usize {
    w.iter().map(|b| alg.basis_weight(b)).sum()
}

pub fn bar_degree<A: Dga>(alg: &A, x: &BarElem<A::Basis>) -> Option<i64> {
    x.basis().next().map(|w| word_degree(alg, w))
}

pub fn bar_weight<A: Dga>(alg: &A, x: &BarElem<A::Basis>) -> Option<usize> {
    x.basis().next().map(|w| word_weight(alg, w))
}

/// Replace position `i` of `w` (and the `drop` letters after it) by each term of `x`.
fn splice<B: Ord + Clone>(
    out: &mut BarElem<B>,
    w: &[B],
    i: usize,
    drop: usize,
    x: &LinComb<B>,
    coef: &Rational,
) {
    for (b, e) in x.iter() {
        let mut w2 = Vec::with_capacity(w.len());
        w2.extend_from_slice(&w[..i]);
        w2.push(b.clone());
        w2.extend_from_slice(&w[i + 1 + drop..]);
        out.add_term(w2, coef * e);
    }
}

/// `d_I[a₁|…|a_s] = Σᵢ (−1)^i [Ja₁|…|Ja_{i−1}|daᵢ|a_{i+1}|…|a_s]`.
pub fn d_internal<A: Dga>(alg: &A, x: &BarElem<A::Basis>) -> Result<BarElem<A::Basis>> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        let mut j_odd = false;
        for i in 0..w.len() {
            let da = alg.d_basis(&w[i])?;
            if !da.is_zero() {
                let coef = c * sign(((i + 1) % 2 == 1) ^ j_odd);
                splice(&mut out, w, i, 0, &da, &coef);
            }
            j_odd ^= is_odd(alg.basis_degree(&w[i]));
        }
    }
    Ok(out)
}

/// `d_E[a₁|…|a_s] = Σ_{i<s} (−1)^{i+1} [Ja₁|…|Ja_{i−1}|(Jaᵢ)a_{i+1}|…|a_s]`.
pub fn d_external<A: Dga>(alg: &A, x: &BarElem<A::Basis>) -> Result<BarElem<A::Basis>> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        let mut j_odd = false;
        for i in 0..w.len().saturating_sub(1) {
            j_odd ^= is_odd(alg.basis_degree(&w[i]));
            let prod = alg.mul_basis(&w[i], &w[i + 1])?;
            if !prod.is_zero() {
                let coef = c * sign(((i + 2) % 2 == 1) ^ j_odd);
                splice(&mut out, w, i, 1, &prod, &coef);
            }
        }
    }
    Ok(out)
}

/// Total differential `d_I + d_E`.
pub fn d_total<A: Dga>(alg: &A, x: &BarElem<A::Basis>) -> Result<BarElem<A::Basis>> {
    Ok(d_internal(alg, x)?.add(&d_external(alg, x)?))
}

fn shifted_odd<A: Dga>(alg: &A, b: &A::Basis) -> bool {
    is_odd(alg.basis_degree(b) - 1)
}

fn shuffle_words<A: Dga>(alg: &A, v: &[A::Basis], w: &[A::Basis], out: &mut Vec<(Word<A::Basis>, bool)>) {
    if v.is_empty() || w.is_empty() {
        let mut word = v.to_vec();
        word.extend_from_slice(w);
        out.push((word, false));
        return;
    }
    let mut rest = Vec::new();
    shuffle_words(alg, &v[1..], w, &mut rest);
    for (mut tail, neg) in rest.drain(..) {
        tail.insert(0, v[0].clone());
        out.push((tail, neg));
    }
    // w[0] moves past every letter of v.
    let v_odd = v.iter().filter(|b| shifted_odd(alg, b)).count() % 2 == 1;
    let flip = v_odd && shifted_odd(alg, &w[0]);
    shuffle_words(alg, v, &w[1..], &mut rest);
    for (mut tail, neg) in rest {
        tail.insert(0, w[0].clone());
        out.push((tail, neg ^ flip));
    }
}

/// Shuffle product with Koszul signs on the shifted degrees `deg a − 1`.
pub fn shuffle<A: Dga>(
    alg: &A,
    v: &BarElem<A::Basis>,
    w: &BarElem<A::Basis>,
) -> BarElem<A::Basis> {
    let mut out = LinComb::zero();
    for (a, c) in v.iter() {
        for (b, e) in w.iter() {
            let mut terms = Vec::new();
            shuffle_words(alg, a, b, &mut terms);
            let ce = c * e;
            for (word, neg) in terms {
                out.add_term(word, &ce * sign(neg));
            }
        }
    }
    out
}

/// Deconcatenation `Δ[a₁|…|a_s] = Σᵢ [a₁|…|aᵢ] ⊗ [a_{i+1}|…|a_s]`.
pub fn coproduct<B: Ord + Clone>(x: &BarElem<B>) -> BarTensor<B> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        for i in 0..=w.len() {
            out.add_term((w[..i].to_vec(), w[i..].to_vec()), c.clone());
        }
    }
    out
}

/// `(D ⊗ 1 + 1 ⊗ D)(v ⊗ w) = Dv ⊗ w + (−1)^{deg v} v ⊗ Dw`.
pub fn tensor_d<A: Dga>(alg: &A, t: &BarTensor<A::Basis>) -> Result<BarTensor<A::Basis>> {
    let mut out = LinComb::zero();
    for ((v, w), c) in t.iter() {
        let dv = d_total(alg, &LinComb::single(v.clone()))?;
        for (v2, e) in dv.iter() {
            out.add_term((v2.clone(), w.clone()), c * e);
        }
        let dw = d_total(alg, &LinComb::single(w.clone()))?;
        let s = sign(is_odd(word_degree(alg, v)));
        for (w2, e) in dw.iter() {
            out.add_term((v.clone(), w2.clone()), c * e * &s);
        }
    }
    Ok(out)
}

/// `(Δ ⊗ 1)Δ` and `(1 ⊗ Δ)Δ`, as sums of word triples.
pub fn coassociativity_sides<B: Ord + Clone>(
    x: &BarElem<B>,
) -> (LinComb<(Word<B>, Word<B>, Word<B>)>, LinComb<(Word<B>, Word<B>, Word<B>)>) {
    let mut left = LinComb::zero();
    let mut right = LinComb::zero();
    for ((v, w), c) in coproduct(x).iter() {
        for i in 0..=v.len() {
            left.add_term((v[..i].to_vec(), v[i..].to_vec(), w.clone()), c.clone());
        }
        for i in 0..=w.len() {
            right.add_term((v.clone(), w[..i].to_vec(), w[i..].to_vec()), c.clone());
        }
    }
    (left, right)
}

/// `𝕃_n(x) = Σ_{k=0}^{n−1} (−1)^k [ρ_{n−k}(x)|(x)|…|(x)]`.
pub fn motivic_polylog<A: PolylogAlgebra>(
    alg: &A,
    n: usize,
    x: &RatFunc,
) -> Result<BarElem<A::Basis>> {
    if n < 2 {
        return Err(Error::DegreeMismatch(format!("L_n needs n >= 2, got {n}")));
    }
    let pt = alg.point(x)?;
    let mut out = LinComb::zero();
    for k in 0..n {
        let mut letters = vec![alg.rho(n - k, x)?];
        letters.extend(std::iter::repeat_n(pt.clone(), k));
        out.add_scaled(&word(alg, &letters), &sign(k % 2 == 1));
    }
    Ok(out)
}

/// Render as `[a|b]+2*[c]-[d]`.
pub fn render<A: Dga>(alg: &A, x: &BarElem<A::Basis>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (w, c)) in x.iter().enumerate() {
        let body = format!("[{}]", w.iter().map(|b| alg.render_letter(b)).join("|"));
        let mag = c.abs();
        let neg = c.is_negative();
        if neg {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        if !mag.is_one() {
            s.push_str(&fmt_rational(&mag));
            s.push('*');
        }
        s.push_str(&body);
    }
    s
}

/// Generators whose shuffle products (two or more factors) span a subspace
/// of `(χ⁺)²`.
#[derive(Clone, Debug)]
pub struct ShuffleSpan<B: Ord + Clone> {
    pub generators: Vec<BarElem<B>>,
}

/// A shuffle monomial in the generators, by index, with its coefficient.
pub type ShuffleCertificate = Vec<(Vec<usize>, Rational)>;

impl<B: Ord + Clone> ShuffleSpan<B> {
    pub fn new(generators: Vec<BarElem<B>>) -> Self {
        ShuffleSpan { generators }
    }

    /// Every multiset of at least two generators of total weight `weight`,
    /// with its shuffle product.
    pub fn products<A: Dga<Basis = B>>(&self, alg: &A, weight: usize) -> Vec<(Vec<usize>, BarElem<B>)> {
        let weights: Vec<usize> = self
            .generators
            .iter()
            .map(|g| bar_weight(alg, g).unwrap_or(0))
            .collect();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize, BarElem<B>)> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(i, g)| weights[*i] > 0 && !g.is_zero())
            .map(|(i, g)| (vec![i], weights[i], g.clone()))
            .collect();
        while let Some((idx, w, prod)) = stack.pop() {
            if w == weight && idx.len() >= 2 {
                out.push((idx.clone(), prod.clone()));
            }
            let last = *idx.last().expect("non-empty");
            for j in last..self.generators.len() {
                if weights[j] > 0 && w + weights[j] <= weight {
                    let mut idx2 = idx.clone();
                    idx2.push(j);
                    stack.push((idx2, w + weights[j], shuffle(alg, &prod, &self.generators[j])));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Express `v` as a combination of shuffle products from the span. `None`
/// means "not found in this span", not "outside the ideal".
pub fn shuffle_ideal_member<A: Dga>(
    alg: &A,
    v: &BarElem<A::Basis>,
    span: &ShuffleSpan<A::Basis>,
) -> Option<ShuffleCertificate> {
    if v.is_zero() {
        return Some(Vec::new());
    }
    let weight = bar_weight(alg, v)?;
    let products = span.products(alg, weight);
    let words: Vec<Word<A::Basis>> = products
        .iter()
        .flat_map(|(_, p)| p.basis().cloned())
        .chain(v.basis().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let a: Vec<Vec<Rational>> = words
        .iter()
        .map(|w| products.iter().map(|(_, p)| p.coeff(w)).collect())
        .collect();
    let b: Vec<Rational> = words.iter().map(|w| v.coeff(w)).collect();
    let x = linalg::solve(&a, &b)?;
    Some(
        products
            .into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|((idx, _), c)| (idx, c))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct ReplayStep {
    pub chain: usize,
    pub residual_words: usize,
}

#[derive(Clone, Debug)]
pub struct ReplayLedger<B: Ord + Clone> {
    pub steps: Vec<ReplayStep>,
    pub residual: BarElem<B>,
    pub certificate: Option<ShuffleCertificate>,
}

impl<B: Ord + Clone> ReplayLedger<B> {
    pub fn holds(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Check `lhs − rhs − D(Σ chains)` lies in the shuffle span, recording the
/// residual after each chain.
pub fn replay_equiv<A: Dga>(
    alg: &A,
    lhs: &BarElem<A::Basis>,
    rhs: &BarElem<A::Basis>,
    chains: &[BarElem<A::Basis>],
    span: &ShuffleSpan<A::Basis>,
) -> Result<ReplayLedger<A::Basis>> {
    for (name, x) in [("lhs", lhs), ("rhs", rhs)] {
        if x.basis().any(|w| word_degree(alg, w) != 0) {
            return Err(Error::DegreeMismatch(format!("{name} is not of bar degree 0")));
        }
    }
    if let (Some(a), Some(b)) = (bar_weight(alg, lhs), bar_weight(alg, rhs)) {
        if a != b {
            return Err(Error::DegreeMismatch(format!("weights {a} and {b} differ")));
        }
    }
    let mut residual = lhs.sub(rhs);
    let mut steps = Vec::with_capacity(chains.len());
    for (i, ch) in chains.iter().enumerate() {
        if ch.basis().any(|w| word_degree(alg, w) != -1) {
            return Err(Error::DegreeMismatch(format!("chain {i} is not of bar degree -1")));
        }
        residual = residual.sub(&d_total(alg, ch)?);
        steps.push(ReplayStep {
            chain: i,
            residual_words: residual.len(),
        });
    }
    let certificate = shuffle_ideal_member(alg, &residual, span);
    Ok(ReplayLedger {
        steps,
        residual,
        certificate,
    })
}

/// Equality of co-Lie classes of two bar cocycles, certified by a replay.
pub fn colie_class_equal<A: Dga>(
    alg: &A,
    v: &BarElem<A::Basis>,
    w: &BarElem<A::Basis>,
    chains: &[BarElem<A::Basis>],
    span: &ShuffleSpan<A::Basis>,
) -> Result<bool> {
    for x in [v, w] {
        let dx = d_total(alg, x)?;
        if !dx.is_zero() {
            return Err(Error::NotACocycle(render(alg, &dx)));
        }
    }
    Ok(replay_equiv(alg, v, w, chains, span)?.holds())
}

/// The span generated by the one-letter words `[(z_j)]` of the registry.
pub fn point_span<A: PolylogAlgebra>(alg: &A) -> Result<ShuffleSpan<A::Basis>> {
    let n = alg.registry().borrow().len();
    let mut gens = Vec::with_capacity(n);
    for j in 0..n {
        let z = alg.registry().borrow().symbol_value(j);
        gens.push(letter(alg, &alg.point(&z)?));
    }
    Ok(ShuffleSpan::new(gens))
}

/// The chains bounding `[P̃₂(x)]` against `𝕃₂(x)`, scaled so that
/// `[P̃₂(x)] − 𝕃₂(x) − D(chains) = [ρ₁(x)[z]|x[z]]`.
pub fn tilde_p2_chains<A: PolylogAlgebra>(alg: &A, x: &RatFunc) -> Result<Vec<BarElem<A::Basis>>> {
    let a = word(alg, &[alg.rho(1, x)?, alg.r(x)?]);
    let b = word(alg, &[alg.r(&x.one_minus())?, alg.expansion(x)?]);
    Ok(vec![a.neg(), b.neg()])
}

/// `Σ aᵢ [ρ₁(xᵢ)[z]|xᵢ[z]^{⊗(n−1)}]`.
pub fn symmetric_residual<A: PolylogAlgebra>(
    alg: &A,
    args: &[(Rational, RatFunc)],
    n: usize,
) -> Result<BarElem<A::Basis>> {
    let mut out = LinComb::zero();
    for (a, x) in args {
        let y = x.one_minus();
        if y.is_zero() {
            continue;
        }
        let mut letters = vec![alg.expansion(&y)?];
        letters.extend(std::iter::repeat_n(alg.expansion(x)?, n - 1));
        out.add_scaled(&word(alg, &letters), a);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    /// Coefficient of `[z_{j₁}|…|z_{j_n}]` is invariant under reordering.
    pub symmetric: bool,
    pub certificate: Option<ShuffleCertificate>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.certificate.is_some()
    }
}

/// Symmetry of the residual `Σ aᵢ [ρ₁(xᵢ)[z]|xᵢ[z]^{⊗(n−1)}]` and its
/// membership in the span of shuffles of the `[(z_j)]`.
pub fn symmetry_residual_check<A: PolylogAlgebra>(
    alg: &A,
    args: &[(Rational, RatFunc)],
    n: usize,
) -> Result<SymmetryReport> {
    let exps = crate::dga::dchains::Expansions::of(alg, args)?;
    let mut coeff = std::collections::BTreeMap::new();
    for tuple in exps.tuples(n) {
        let mut total = Rational::zero();
        for (i, (a, x)) in args.iter().enumerate() {
            let y = x.one_minus();
            if y.is_zero() {
                continue;
            }
            let e1 = alg.expand(&y)?;
            let rest: Rational = tuple[1..].iter().map(|&j| exps.c[i][j].clone()).product();
            total += a * e1.vector.get(tuple[0]) * rest;
        }
        coeff.insert(tuple, total);
    }
    let symmetric = coeff.iter().all(|(tuple, c)| {
        tuple
            .iter()
            .copied()
            .permutations(n)
            .all(|p| coeff.get(&p) == Some(c))
    });
    let residual = symmetric_residual(alg, args, n)?;
    let span = point_span(alg)?;
    let certificate = shuffle_ideal_member(alg, &residual, &span);
    Ok(SymmetryReport {
        symmetric,
        certificate,
    })
}
