//! Formal sums in `Q[F^×]`, the maps `δ̃₂` and `δ'_n`, kernel solving at
//! weight two, and certificates for relations `α(1) − α(0)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::parse_ratfunc;
use crate::linalg;
use crate::ratfunc::RatFunc;
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::poly::{var_name, Var, VAR_S, VAR_T};
use crate::registry::{wedge_pair, MultBasisRegistry, Wedge2};

/// `Σ aᵢ {xᵢ}`; `{0}` is dropped on insertion. `{1}` is kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<RatFunc, Rational>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn single(x: RatFunc) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(x, Rational::one());
        s
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (RatFunc, Rational)>) -> Self {
        let mut s = FormalSum::zero();
        for (x, c) in iter {
            s.add_term(x, c);
        }
        s
    }

    pub fn add_term(&mut self, x: RatFunc, c: Rational) {
        if x.is_zero() || c.is_zero() {
            return;
        }
        let e = self.terms.entry(x.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        for (x, c) in other.iter() {
            s.add_term(x.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> FormalSum {
        FormalSum::from_terms(self.iter().map(|(x, e)| (x.clone(), e * c)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RatFunc, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &RatFunc) -> Rational {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    /// Keys equal to 1: nonzero in `Q[F^×]` but killed by `δ̃₂`.
    pub fn keys_at_one(&self) -> Vec<RatFunc> {
        self.terms.keys().filter(|x| x.is_one()).cloned().collect()
    }

    pub fn as_pairs(&self) -> Vec<(Rational, RatFunc)> {
        self.iter().map(|(x, c)| (c.clone(), x.clone())).collect()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.iter()
            .map(|(x, c)| TermJson {
                key: x.to_string(),
                coeff: fmt_rational(c),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<FormalSum> {
        let mut s = FormalSum::zero();
        for t in terms {
            let x = parse_ratfunc(&t.key).map_err(|e| Error::SchemaError(format!("key {}: {e}", t.key)))?;
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| Error::SchemaError(format!("coefficient {}", t.coeff)))?;
            s.add_term(x, c);
        }
        Ok(s)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (x, c)) in self.iter().enumerate() {
            if c.is_negative() {
                f.write_str(if i == 0 { "-" } else { " - " })?;
            } else if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.abs().is_one() {
                write!(f, "{}*", fmt_rational(&c.abs()))?;
            }
            write!(f, "{{{x}}}")?;
        }
        Ok(())
    }
}

/// Render a wedge with symbol values in place of indices.
pub fn render_wedge(w: &Wedge2, reg: &MultBasisRegistry) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    w.entries()
        .map(|((j, k), c)| {
            format!(
                "{}*({})^({})",
                fmt_rational(c),
                reg.symbol_value(j),
                reg.symbol_value(k)
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn register_sum(x: &FormalSum, reg: &mut MultBasisRegistry) -> Result<()> {
    for (key, _) in x.iter() {
        reg.register(key)?;
        let y = key.one_minus();
        if !y.is_zero() {
            reg.register(&y)?;
        }
    }
    Ok(())
}

/// `δ̃₂(Σ aᵢ{xᵢ}) = Σ aᵢ · (−(1−xᵢ)∧xᵢ)`, with `{1} ↦ 0`.
pub fn delta2_tilde(x: &FormalSum, reg: &mut MultBasisRegistry) -> Result<Wedge2> {
    register_sum(x, reg)?;
    let mut out = Wedge2::new(reg.stamp());
    for (key, a) in x.iter() {
        if key.is_one() {
            continue;
        }
        let u = reg.expand(&key.one_minus())?.vector;
        let v = reg.expand(key)?.vector;
        out = out.add(&wedge_pair(&u, &v)?.scale(&-a.clone()))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub key: String,
    pub coeff: String,
}

/// Values of `f` and `1 − f` at 0 and 1 in the certificate's variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C0Evidence {
    pub f: String,
    pub f_at_0: String,
    pub f_at_1: String,
    pub one_minus_f_at_0: String,
    pub one_minus_f_at_1: String,
}

/// One column `Σᵢ aᵢ c_{ij} {xᵢ}` of `δ'_n`, and its expression through the
/// relations: `column = Σ λ_k X_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnJson {
    pub symbol: String,
    pub column: Vec<TermJson>,
    pub reduction: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelEvidence {
    /// `δ̃₂(α)` over `Q(t)`, recorded as its rendering (always "0").
    Wedge2 { value: String },
    Columns {
        columns: Vec<ColumnJson>,
        relations: Vec<RelationCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub level: usize,
    /// The variable specialized at 0 and 1: "t", or "s" for relations whose
    /// element lives over `Q(t)`.
    #[serde(default = "default_variable")]
    pub variable: String,
    pub generator: Vec<TermJson>,
    pub c0: Vec<C0Evidence>,
    pub kernel: KernelEvidence,
    pub element: Vec<TermJson>,
}

fn default_variable() -> String {
    "t".to_string()
}

fn parse_variable(name: &str) -> Result<Var> {
    match name {
        "t" => Ok(VAR_T),
        "s" => Ok(VAR_S),
        _ => Err(Error::SchemaError(format!("unknown variable {name}"))),
    }
}

impl RelationCertificate {
    pub fn element_sum(&self) -> Result<FormalSum> {
        FormalSum::from_json(&self.element)
    }

    pub fn generator_sum(&self) -> Result<FormalSum> {
        FormalSum::from_json(&self.generator)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum KernelWitness {
    /// `Σ aᵢ (1−xᵢ)∧xᵢ` vanishes.
    Weight2,
    /// Column `j` (by symbol value) equals `Σ λ_k X_k`.
    Columns(Vec<(RatFunc, Vec<(usize, Rational)>)>),
}

#[derive(Clone, Debug)]
pub struct DeltaReduction {
    /// Nonzero reduced columns, keyed by symbol value.
    pub residual: Vec<(RatFunc, FormalSum)>,
    /// Every column before reduction, keyed by symbol value.
    pub columns: Vec<(RatFunc, FormalSum)>,
    pub witness: Option<KernelWitness>,
}

/// Reduce `c` modulo the span of `rels`: either an exact expression or the
/// normal form left after eliminating pivot keys.
fn reduce(c: &FormalSum, rels: &[FormalSum]) -> std::result::Result<Vec<(usize, Rational)>, FormalSum> {
    if c.is_zero() {
        return Ok(Vec::new());
    }
    let keys: Vec<RatFunc> = rels
        .iter()
        .flat_map(|r| r.iter().map(|(x, _)| x.clone()))
        .chain(c.iter().map(|(x, _)| x.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let a: Vec<Vec<Rational>> = keys
        .iter()
        .map(|x| rels.iter().map(|r| r.coeff(x)).collect())
        .collect();
    let b: Vec<Rational> = keys.iter().map(|x| c.coeff(x)).collect();
    if let Some(lambda) = linalg::solve(&a, &b) {
        return Ok(lambda
            .into_iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .collect());
    }
    let mut rows: Vec<Vec<Rational>> = rels
        .iter()
        .map(|r| keys.iter().map(|x| r.coeff(x)).collect())
        .collect();
    let pivots = linalg::rref(&mut rows);
    let mut v = b;
    for (r, &p) in pivots.iter().enumerate() {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (vk, rk) in v.iter_mut().zip(&rows[r]) {
                *vk -= &f * rk;
            }
        }
    }
    Err(FormalSum::from_terms(keys.into_iter().zip(v)))
}

/// `Σ aᵢ {xᵢ} ⊗ xᵢ[z]`, with each left factor reduced modulo the span of
/// the certified level-`(n−1)` relations.
pub fn deltan_prime_mod(
    x: &FormalSum,
    n: usize,
    relations: &[RelationCertificate],
    reg: &mut MultBasisRegistry,
) -> Result<DeltaReduction> {
    if n < 3 {
        return Err(Error::LevelMismatch { expected: 3, got: n });
    }
    let mut rels = Vec::with_capacity(relations.len());
    for r in relations {
        if r.level != n - 1 {
            return Err(Error::LevelMismatch {
                expected: n - 1,
                got: r.level,
            });
        }
        rels.push(r.element_sum()?);
    }
    for (key, _) in x.iter() {
        reg.register(key)?;
    }
    let mut cols: BTreeMap<usize, FormalSum> = BTreeMap::new();
    for (key, a) in x.iter() {
        let e = reg.expand(key)?.vector;
        for (j, c) in e.entries() {
            cols.entry(j)
                .or_default()
                .add_term(key.clone(), a * c);
        }
    }
    let mut residual = Vec::new();
    let mut columns = Vec::new();
    let mut witness = Vec::new();
    for (j, col) in cols {
        if col.is_zero() {
            continue;
        }
        let z = reg.symbol_value(j);
        match reduce(&col, &rels) {
            Ok(lambda) => witness.push((z.clone(), lambda)),
            Err(rest) => {
                if !rest.is_zero() {
                    residual.push((z.clone(), rest));
                }
            }
        }
        columns.push((z, col));
    }
    let witness = residual.is_empty().then_some(KernelWitness::Columns(witness));
    Ok(DeltaReduction {
        residual,
        columns,
        witness,
    })
}

pub fn render_residual(r: &[(RatFunc, FormalSum)]) -> String {
    if r.is_empty() {
        return "0".to_string();
    }
    r.iter()
        .map(|(z, s)| format!("({s}) ⊗ ({z})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A basis of `Ker δ̃₂` inside the span of `{c}` for the candidates.
pub fn kernel_solve_2(candidates: &[RatFunc], reg: &mut MultBasisRegistry) -> Result<Vec<FormalSum>> {
    let cands: Vec<RatFunc> = candidates
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for x in &cands {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        register_sum(&FormalSum::single(x.clone()), reg)?;
    }
    let mut images = Vec::with_capacity(cands.len());
    for x in &cands {
        images.push(delta2_tilde(&FormalSum::single(x.clone()), reg)?);
    }
    let pairs: Vec<(usize, usize)> = images
        .iter()
        .flat_map(|w| w.entries().map(|(k, _)| k))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let a: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(j, k)| images.iter().map(|w| w.get(j, k)).collect())
        .collect();
    Ok(linalg::nullspace(&a, cands.len())
        .into_iter()
        .map(|v| FormalSum::from_terms(cands.iter().cloned().zip(v)))
        .collect())
}

/// `{x} + {y} + {(1−x)/(1−xy)} + {1−xy} + {(1−y)/(1−xy)}`, checked to lie in
/// `Ker δ̃₂`.
pub fn five_term(x: &RatFunc, y: &RatFunc) -> Result<FormalSum> {
    let xy = x.mul(y);
    let w = xy.one_minus();
    for (name, v) in [
        ("x", x.clone()),
        ("y", y.clone()),
        ("1-x", x.one_minus()),
        ("1-y", y.one_minus()),
        ("1-xy", w.clone()),
    ] {
        if v.is_zero() {
            return Err(Error::DegenerateArguments(format!("{name} = 0")));
        }
    }
    let s = FormalSum::from_terms([
        (x.clone(), Rational::one()),
        (y.clone(), Rational::one()),
        (x.one_minus().div(&w).expect("nonzero"), Rational::one()),
        (w.clone(), Rational::one()),
        (y.one_minus().div(&w).expect("nonzero"), Rational::one()),
    ]);
    let mut reg = MultBasisRegistry::new();
    let d = delta2_tilde(&s, &mut reg)?;
    if !d.is_zero() {
        return Err(Error::KernelCheckFailed(render_wedge(&d, &reg)));
    }
    Ok(s)
}

fn eval_at(x: &RatFunc, var: Var, point: &Rational) -> Result<RatFunc> {
    let at = || format!("{} = {}", var_name(var), fmt_rational(point));
    let d = x.den().subs_const(var, point);
    if d.is_zero() {
        return Err(Error::PoleAtPoint(at()));
    }
    let n = x.num().subs_const(var, point);
    if n.is_zero() {
        return Err(Error::ZeroAtPoint(at()));
    }
    Ok(RatFunc::new(n, d).expect("nonzero denominator"))
}

/// `(α(0), α(1))`, evaluating keys at `t = 0` and `t = 1`.
pub fn specialize_sum(alpha: &FormalSum) -> Result<(FormalSum, FormalSum)> {
    specialize_sum_in(alpha, VAR_T)
}

/// `(α(0), α(1))` in the variable `var`.
pub fn specialize_sum_in(alpha: &FormalSum, var: Var) -> Result<(FormalSum, FormalSum)> {
    let mut at = [FormalSum::zero(), FormalSum::zero()];
    for (key, c) in alpha.iter() {
        for (i, p) in [Rational::zero(), Rational::one()].iter().enumerate() {
            at[i].add_term(eval_at(key, var, p)?, c.clone());
        }
    }
    let [a0, a1] = at;
    Ok((a0, a1))
}

fn c0_evidence(f: &RatFunc, var: Var) -> Result<C0Evidence> {
    let g = f.one_minus();
    let val = |x: &RatFunc, p: i64| -> Result<String> {
        eval_at(x, var, &Rational::from_integer(p.into()))
            .map(|v| v.to_string())
            .map_err(|_| Error::C0Violation(f.to_string()))
    };
    if g.is_zero() {
        return Err(Error::C0Violation(f.to_string()));
    }
    Ok(C0Evidence {
        f: f.to_string(),
        f_at_0: val(f, 0)?,
        f_at_1: val(f, 1)?,
        one_minus_f_at_0: val(&g, 0)?,
        one_minus_f_at_1: val(&g, 1)?,
    })
}

fn kernel_evidence(alpha: &FormalSum, n: usize, lower: &[RelationCertificate]) -> Result<KernelEvidence> {
    let mut reg = MultBasisRegistry::new();
    if n == 2 {
        let d = delta2_tilde(alpha, &mut reg)?;
        if !d.is_zero() {
            return Err(Error::KernelCheckFailed(render_wedge(&d, &reg)));
        }
        return Ok(KernelEvidence::Wedge2 { value: "0".into() });
    }
    let red = deltan_prime_mod(alpha, n, lower, &mut reg)?;
    let Some(KernelWitness::Columns(w)) = red.witness else {
        return Err(Error::KernelCheckFailed(render_residual(&red.residual)));
    };
    let columns = red
        .columns
        .iter()
        .zip(w)
        .map(|((z, col), (_, lambda))| ColumnJson {
            symbol: z.to_string(),
            column: col.to_json(),
            reduction: lambda.iter().map(|(k, l)| (*k, fmt_rational(l))).collect(),
        })
        .collect();
    Ok(KernelEvidence::Columns {
        columns,
        relations: lower.to_vec(),
    })
}

/// Certify `α(1) − α(0)` as a level-`n` relation, specializing in `t`.
pub fn certify_r_prime(
    alpha: &FormalSum,
    n: usize,
    lower: &[RelationCertificate],
) -> Result<RelationCertificate> {
    certify_r_prime_in(alpha, n, lower, VAR_T)
}

/// As `certify_r_prime`, specializing in `var` (`t` or `s`).
pub fn certify_r_prime_in(
    alpha: &FormalSum,
    n: usize,
    lower: &[RelationCertificate],
    var: Var,
) -> Result<RelationCertificate> {
    if n < 2 {
        return Err(Error::LevelMismatch { expected: 2, got: n });
    }
    if var != VAR_T && var != VAR_S {
        return Err(Error::ConfigError(format!("cannot specialize in {}", var_name(var))));
    }
    let c0 = alpha
        .iter()
        .map(|(f, _)| c0_evidence(f, var))
        .collect::<Result<Vec<_>>>()?;
    let kernel = kernel_evidence(alpha, n, lower)?;
    let (a0, a1) = specialize_sum_in(alpha, var)?;
    Ok(RelationCertificate {
        level: n,
        variable: var_name(var),
        generator: alpha.to_json(),
        c0,
        kernel,
        element: a1.sub(&a0).to_json(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertCheck {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Re-derive every part of a certificate from its generator.
pub fn verify_certificate(cert: &RelationCertificate) -> Result<CertCheck> {
    let mut failures = Vec::new();
    let alpha = cert.generator_sum()?;
    let var = parse_variable(&cert.variable)?;
    let lower: &[RelationCertificate] = match &cert.kernel {
        KernelEvidence::Columns { relations, .. } => relations,
        KernelEvidence::Wedge2 { .. } => &[],
    };
    for (i, r) in lower.iter().enumerate() {
        let sub = verify_certificate(r)?;
        for f in sub.failures {
            failures.push(format!("relation {i}: {f}"));
        }
    }
    let recorded: BTreeMap<&str, &C0Evidence> = cert.c0.iter().map(|e| (e.f.as_str(), e)).collect();
    for (f, _) in alpha.iter() {
        match c0_evidence(f, var) {
            Ok(e) => {
                if recorded.get(e.f.as_str()) != Some(&&e) {
                    failures.push(format!("C0 evidence for {f} does not match"));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    if cert.c0.len() != alpha.len() {
        failures.push("C0 evidence count does not match the generator".into());
    }
    match kernel_evidence(&alpha, cert.level, lower) {
        Ok(k) => {
            if k != cert.kernel {
                failures.push("kernel evidence does not match".into());
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    match specialize_sum_in(&alpha, var) {
        Ok((a0, a1)) => {
            let x = a1.sub(&a0);
            let recorded = cert.element_sum()?;
            if x != recorded {
                failures.push(format!("element residual {}", recorded.sub(&x)));
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    Ok(CertCheck {
        ok: failures.is_empty(),
        failures,
    })
}

pub fn certificate_to_json(cert: &RelationCertificate) -> String {
    serde_json::to_string_pretty(cert).expect("serializable")
}

pub fn certificate_from_json(text: &str) -> Result<RelationCertificate> {
    serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))
}
