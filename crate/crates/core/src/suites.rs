//! Named verification suites and their JSON reports.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bar::{self, BarElem};
use crate::cycle::{render_sum, CycleSum, Locus};
use crate::dga::dchains::{
    assemble_script_p, declare_formal_family, replay_r_modification, verify_d_chain_properties,
    RChange,
};
use crate::dga::formal::FormalElem;
use crate::dga::homotopy::{specialize_basis, HomotopyFamily, DEFAULT_TORSION_CAP};
use crate::dga::{
    eq2_defect, eq3_defect, leibniz_defect, registry_for, rho_defect, ConcreteDga, Dga,
    FormalDga, Mono, PolylogAlgebra,
};
use crate::error::{Error, Result};
use crate::goncharov::{
    certificate_from_json, certificate_to_json, certify_r_prime, delta2_tilde, five_term,
    render_wedge, verify_certificate, FormalSum,
};
use crate::lincomb::LinComb;
use crate::poly::{VAR_S, VAR_T};
use crate::ratfunc::RatFunc;
use crate::rational::{fmt_rational, rat, ratio, Rational};
use crate::registry::MultBasisRegistry;

pub const SUITES: &[&str] = &[
    "du-identity",
    "rho-signs",
    "dga-leibniz",
    "eq2-eq3",
    "bar-axioms",
    "polylog-cocycle",
    "kernel-to-cocycle",
    "colie-replay",
    "d-chain-verification",
    "homotopy-family",
    "certificates",
    "specialization",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSel {
    Concrete,
    Formal,
    Both,
}

impl ModeSel {
    pub fn parse(s: &str) -> Result<ModeSel> {
        match s {
            "concrete" => Ok(ModeSel::Concrete),
            "formal" => Ok(ModeSel::Formal),
            "both" => Ok(ModeSel::Both),
            _ => Err(Error::ConfigError(format!("unknown mode {s}"))),
        }
    }

    fn concrete(self) -> bool {
        self != ModeSel::Formal
    }

    fn formal(self) -> bool {
        self != ModeSel::Concrete
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub name: String,
    /// Upper level: `k` for rho-signs, `n` for the polylogarithm suites.
    pub n_max: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub mode: ModeSel,
}

impl SuiteConfig {
    pub fn new(name: &str) -> Self {
        SuiteConfig {
            name: name.to_string(),
            n_max: None,
            samples: None,
            seed: 7,
            mode: ModeSel::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    /// The identity being checked, stated mathematically.
    pub anchor: String,
    pub mode: String,
    pub status: Status,
    pub witness: String,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub wall_ms: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let n = |s| self.records.iter().filter(|r| r.status == s).count();
        (n(Status::Pass), n(Status::Fail), n(Status::Inconclusive))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Numerator and denominator uniform in `[−20, 20] ∖ {0}`.
pub fn sample_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-20..=20);
        let d: i64 = rng.gen_range(-20..=20);
        if n != 0 && d != 0 {
            return ratio(n, d);
        }
    }
}

/// A sample avoiding 0 and 1.
pub fn sample_generic(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = sample_rational(rng);
        if !q.is_one() {
            return q;
        }
    }
}

fn c(q: Rational) -> RatFunc {
    RatFunc::constant(q)
}

fn t_plus(k: i64) -> RatFunc {
    RatFunc::var(VAR_T).add(&RatFunc::from_int(k))
}

struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    /// Run one check; `Ok(None)` passes, `Ok(Some(w))` fails with witness `w`.
    fn check(&mut self, identity: String, anchor: &str, mode: &str, f: impl FnOnce() -> Result<Option<String>>) {
        let t0 = Instant::now();
        let (status, witness) = match f() {
            Ok(None) => (Status::Pass, String::new()),
            Ok(Some(w)) => (Status::Fail, w),
            Err(e @ (Error::UnsupportedLocus(_) | Error::TorsionOrderNotFound { .. })) => {
                (Status::Inconclusive, e.to_string())
            }
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.records.push(CheckRecord {
            identity,
            anchor: anchor.to_string(),
            mode: mode.to_string(),
            status,
            witness,
            wall_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
    }

    fn skipped(&mut self, identity: &str, mode: &str) {
        self.records.push(CheckRecord {
            identity: identity.to_string(),
            anchor: "plumbing".to_string(),
            mode: mode.to_string(),
            status: Status::Inconclusive,
            witness: "no checks in this mode".to_string(),
            wall_ms: 0.0,
        });
    }
}

fn zero_or<B: Ord + Clone>(x: &LinComb<B>, render: impl FnOnce(&LinComb<B>) -> String) -> Option<String> {
    if x.is_zero() {
        None
    } else {
        Some(render(x))
    }
}

fn cyc(x: &CycleSum) -> Option<String> {
    zero_or(x, render_sum)
}

/// Largest `n_max` accepted per suite; `None` means the suite ignores it.
fn n_max_cap(suite: &str) -> Option<usize> {
    match suite {
        "rho-signs" => Some(5),
        "eq2-eq3" => Some(6),
        "polylog-cocycle" => Some(8),
        "d-chain-verification" => Some(5),
        _ => None,
    }
}

pub const SAMPLES_CAP: usize = 10_000;

fn validate(cfg: &SuiteConfig) -> Result<()> {
    if !SUITES.contains(&cfg.name.as_str()) {
        return Err(Error::ConfigError(format!(
            "unknown suite {}; known: {}",
            cfg.name,
            SUITES.join(", ")
        )));
    }
    if let Some(n) = cfg.n_max {
        match n_max_cap(&cfg.name) {
            Some(cap) if (2..=cap).contains(&n) || (cfg.name == "rho-signs" && n == 1) => {}
            Some(cap) => {
                return Err(Error::ConfigError(format!("n-max {n} outside 2..={cap} for {}", cfg.name)))
            }
            None => return Err(Error::ConfigError(format!("{} takes no n-max", cfg.name))),
        }
    }
    if let Some(n) = cfg.samples {
        if n == 0 || n > SAMPLES_CAP {
            return Err(Error::ConfigError(format!("samples {n} outside 1..={SAMPLES_CAP}")));
        }
    }
    Ok(())
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    validate(cfg)?;
    let t0 = Instant::now();
    let mut rec = Recorder { records: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.name.as_str() {
        "du-identity" => du_identity(cfg, &mut rec, &mut rng),
        "rho-signs" => rho_signs(cfg, &mut rec),
        "dga-leibniz" => dga_leibniz(cfg, &mut rec, &mut rng),
        "eq2-eq3" => eq2_eq3(cfg, &mut rec),
        "bar-axioms" => bar_axioms(cfg, &mut rec, &mut rng),
        "polylog-cocycle" => polylog_cocycle(cfg, &mut rec),
        "kernel-to-cocycle" => kernel_to_cocycle(cfg, &mut rec),
        "colie-replay" => colie_replay(cfg, &mut rec),
        "d-chain-verification" => d_chain_verification(cfg, &mut rec),
        "homotopy-family" => homotopy_family(cfg, &mut rec),
        "certificates" => certificates(&mut rec),
        "specialization" => specialization(cfg, &mut rec),
        _ => unreachable!("validated"),
    }
    rec.records.sort_by(|a, b| a.identity.cmp(&b.identity));
    Ok(Report {
        suite: cfg.name.clone(),
        seed: cfg.seed,
        records: rec.records,
        wall_ms: t0.elapsed().as_secs_f64() * 1e3,
    })
}

fn du_identity(cfg: &SuiteConfig, rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    if !cfg.mode.concrete() {
        return rec.skipped("du-identity", "formal");
    }
    let alg = ConcreteDga::new(MultBasisRegistry::new());
    for i in 0..cfg.samples.unwrap_or(100) {
        let a = c(sample_rational(rng));
        let b = c(sample_rational(rng));
        rec.check(
            format!("du-identity/{i:03} a={a} b={b}"),
            "d u(a,b) = (b) + (a/b) - (a); u(a,1) = 0",
            "concrete",
            || {
                let du = alg.d(&alg.u(&a, &b)?)?;
                let rhs = alg
                    .point(&b)?
                    .add(&alg.point(&a.div(&b).expect("nonzero"))?)
                    .sub(&alg.point(&a)?);
                if let Some(w) = cyc(&du.sub(&rhs)) {
                    return Ok(Some(w));
                }
                Ok(cyc(&alg.u(&a, &RatFunc::one())?))
            },
        );
    }
}

fn rho_signs(cfg: &SuiteConfig, rec: &mut Recorder) {
    if !cfg.mode.concrete() {
        return rec.skipped("rho-signs", "formal");
    }
    let alg = ConcreteDga::new(MultBasisRegistry::new());
    for k in 1..=cfg.n_max.unwrap_or(4) {
        for a in [rat(2), rat(3), rat(-1), ratio(1, 2)] {
            let x = c(a.clone());
            rec.check(
                format!("rho-signs/k={k} a={}", fmt_rational(&a)),
                "d rho_k(a) = rho_{k-1}(a)(a); d^2 rho_k(a) = 0",
                "concrete",
                || {
                    alg.rho_sign(k)?;
                    if let Some(w) = cyc(&rho_defect(&alg, k, &x)?) {
                        return Ok(Some(w));
                    }
                    Ok(cyc(&alg.d(&alg.d(&alg.rho(k, &x)?)?)?))
                },
            );
        }
    }
}

/// Concrete generators: points, `u`, `ρ₂`, `ρ₃` and `r`.
fn random_concrete_gen(alg: &ConcreteDga, rng: &mut ChaCha8Rng) -> Result<(String, CycleSum)> {
    let a = c(sample_generic(rng));
    Ok(match rng.gen_range(0..5) {
        0 => (format!("(pt {a})"), alg.point(&a)?),
        1 => {
            let b = c(sample_generic(rng));
            (format!("(u {a} {b})"), alg.u(&a, &b)?)
        }
        2 => (format!("(rho 2 {a})"), alg.rho(2, &a)?),
        3 => (format!("(rho 3 {a})"), alg.rho(3, &a)?),
        _ => (format!("(r {a})"), alg.r(&a)?),
    })
}

/// Formal generators over the registry of `{t, 3}`.
fn random_formal_gen(alg: &FormalDga, rng: &mut ChaCha8Rng) -> Result<FormalElem> {
    let args = [RatFunc::var(VAR_T), c(rat(3)), c(rat(-2)), RatFunc::var(VAR_T).one_minus()];
    let x = args[rng.gen_range(0..args.len())].clone();
    Ok(match rng.gen_range(0..4) {
        0 => alg.point(&x)?,
        1 => alg.rho(rng.gen_range(2..=4), &x)?,
        2 => alg.r(&c(rat([6, 12, 18, -6][rng.gen_range(0..4)])))?,
        _ => alg.rho(1, &x)?,
    })
}

fn dga_leibniz(cfg: &SuiteConfig, rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    let n = cfg.samples.unwrap_or(50);
    if cfg.mode.concrete() {
        let alg = ConcreteDga::new(MultBasisRegistry::from_ints(&[2, 3, 5]));
        for i in 0..n {
            let pair = random_concrete_gen(&alg, rng).and_then(|z| Ok((z, random_concrete_gen(&alg, rng)?)));
            let name = match &pair {
                Ok(((a, _), (b, _))) => format!("{a}*{b}"),
                Err(_) => "generation failed".to_string(),
            };
            rec.check(
                format!("dga-leibniz/concrete/{i:03} {name}"),
                "d(zw) = dz w + (-1)^deg z z dw",
                "concrete",
                || {
                    let ((_, z), (_, w)) = pair?;
                    Ok(cyc(&leibniz_defect(&alg, &z, &w)?))
                },
            );
        }
    }
    if cfg.mode.formal() {
        let alg = FormalDga::new(registry_for(&[RatFunc::var(VAR_T), c(rat(3))]).expect("nonzero"));
        for i in 0..n {
            let gens: Result<Vec<FormalElem>> = (0..3).map(|_| random_formal_gen(&alg, rng)).collect();
            rec.check(
                format!("dga-leibniz/formal/{i:03}"),
                "d(zw) = dz w + (-1)^deg z z dw",
                "formal",
                || {
                    let g = gens?;
                    let z = alg.mul(&g[0], &g[1])?;
                    let d = leibniz_defect(&alg, &z, &g[2])?;
                    Ok(zero_or(&d, |x| alg.render(x)))
                },
            );
        }
    }
}

fn eq2_eq3(cfg: &SuiteConfig, rec: &mut Recorder) {
    let xs = [rat(3), ratio(1, 2), rat(-2), ratio(5, 3)];
    if cfg.mode.concrete() {
        let alg = ConcreteDga::new(MultBasisRegistry::from_ints(&[2, 3, 5]));
        for x in &xs {
            let xf = c(x.clone());
            rec.check(
                format!("eq2-eq3/P2/x={}", fmt_rational(x)),
                "d P~2(x) = rho_1(x)[z] x[z]",
                "concrete",
                || Ok(cyc(&eq2_defect(&alg, &xf)?)),
            );
            rec.check(
                format!("eq2-eq3/P3/x={}", fmt_rational(x)),
                "d P_n(x) = P_{n-1}(x) x[z]",
                "concrete",
                || Ok(cyc(&eq3_defect(&alg, 3, &xf)?)),
            );
        }
    }
    if cfg.mode.formal() {
        let t = RatFunc::var(VAR_T);
        let alg = FormalDga::new(registry_for(&[t.clone(), c(rat(3))]).expect("nonzero"));
        for n in 3..=cfg.n_max.unwrap_or(5) {
            for x in [t.clone(), c(rat(3))] {
                rec.check(
                    format!("eq2-eq3/P{n}/x={x}"),
                    "d P_n(x) = P_{n-1}(x) x[z]",
                    "formal",
                    || Ok(zero_or(&eq3_defect(&alg, n, &x)?, |d| alg.render(d))),
                );
            }
        }
    }
}

/// Formal letters for random bar elements, including products.
pub fn formal_bar_alphabet(alg: &FormalDga) -> Result<Vec<FormalElem>> {
    let t = RatFunc::var(VAR_T);
    let mut v = vec![
        alg.point(&t)?,
        alg.point(&t.one_minus())?,
        alg.point(&c(rat(2)))?,
        alg.point(&c(rat(3)))?,
        alg.rho(2, &t)?,
        alg.rho(3, &t)?,
        alg.rho(2, &c(rat(3)))?,
        alg.r(&c(rat(6)))?,
        alg.r(&c(rat(12)))?,
    ];
    let prods = [
        alg.mul(&v[0], &v[2])?,
        alg.mul(&v[7], &v[3])?,
        alg.mul(&v[4], &v[7])?,
    ];
    v.extend(prods);
    v.retain(|x| !x.is_zero());
    Ok(v)
}

fn concrete_bar_alphabet(alg: &ConcreteDga) -> Result<Vec<CycleSum>> {
    let mut v = vec![
        alg.point(&c(rat(2)))?,
        alg.point(&c(rat(3)))?,
        alg.point(&c(ratio(1, 5)))?,
        alg.rho(2, &c(rat(3)))?,
        alg.u(&c(rat(3)), &c(rat(2)))?,
        alg.r(&c(rat(6)))?,
    ];
    let prods = [alg.mul(&v[0], &v[1])?, alg.mul(&v[5], &v[2])?];
    v.extend(prods);
    v.retain(|x| !x.is_zero());
    Ok(v)
}

fn random_bar<A: Dga>(alg: &A, abc: &[LinComb<A::Basis>], rng: &mut ChaCha8Rng) -> BarElem<A::Basis> {
    let mut out = LinComb::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(1..=3);
        let letters: Vec<_> = (0..len).map(|_| abc[rng.gen_range(0..abc.len())].clone()).collect();
        out.add_scaled(&bar::word(alg, &letters), &rat(rng.gen_range(-3..=3)));
    }
    out
}

fn parity_sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// The bar axioms on three random elements; `Some(name)` names the first
/// failing axiom.
fn bar_axioms_at<A: Dga>(alg: &A, x: &BarElem<A::Basis>, y: &BarElem<A::Basis>, z: &BarElem<A::Basis>) -> Result<Option<String>> {
    let di = |v: &BarElem<A::Basis>| bar::d_internal(alg, v);
    let de = |v: &BarElem<A::Basis>| bar::d_external(alg, v);
    let dt = |v: &BarElem<A::Basis>| bar::d_total(alg, v);
    if !di(&de(x)?)?.add(&de(&di(x)?)?).is_zero() {
        return Ok(Some("d_I d_E + d_E d_I".into()));
    }
    if !dt(&dt(x)?)?.is_zero() {
        return Ok(Some("(d_I + d_E)^2".into()));
    }
    let mut comm = bar::shuffle(alg, x, y);
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let s = parity_sign(bar::word_degree(alg, a) * bar::word_degree(alg, b));
            let sw = bar::shuffle(alg, &LinComb::single(b.clone()), &LinComb::single(a.clone()));
            comm.add_scaled(&sw, &-(ca * cb * s));
        }
    }
    if !comm.is_zero() {
        return Ok(Some("shuffle graded commutativity".into()));
    }
    let l = bar::shuffle(alg, &bar::shuffle(alg, x, y), z);
    let r = bar::shuffle(alg, x, &bar::shuffle(alg, y, z));
    if !l.sub(&r).is_zero() {
        return Ok(Some("shuffle associativity".into()));
    }
    let mut leib = dt(&bar::shuffle(alg, x, y))?;
    for (a, ca) in x.iter() {
        let piece = LinComb::term(a.clone(), ca.clone());
        leib = leib.sub(&bar::shuffle(alg, &dt(&piece)?, y));
        let s = parity_sign(bar::word_degree(alg, a));
        leib = leib.sub(&bar::shuffle(alg, &piece, &dt(y)?).scale(&s));
    }
    if !leib.is_zero() {
        return Ok(Some("D is a shuffle derivation".into()));
    }
    let (cl, cr) = bar::coassociativity_sides(x);
    if !cl.sub(&cr).is_zero() {
        return Ok(Some("coassociativity".into()));
    }
    let lhs = bar::coproduct(&dt(x)?);
    let rhs = bar::tensor_d(alg, &bar::coproduct(x))?;
    if !lhs.sub(&rhs).is_zero() {
        return Ok(Some("coproduct chain map".into()));
    }
    Ok(None)
}

fn bar_axioms(cfg: &SuiteConfig, rec: &mut Recorder, rng: &mut ChaCha8Rng) {
    let n = cfg.samples.unwrap_or(100);
    const ANCHOR: &str = "d_I d_E + d_E d_I = 0; D^2 = 0; shuffle commutative, associative, D-derivation; coproduct coassociative chain map";
    if cfg.mode.formal() {
        let alg = FormalDga::new(registry_for(&[RatFunc::var(VAR_T), c(rat(3))]).expect("nonzero"));
        let abc = formal_bar_alphabet(&alg);
        for i in 0..n {
            let elems = abc.as_ref().map(|abc| {
                (random_bar(&alg, abc, rng), random_bar(&alg, abc, rng), random_bar(&alg, abc, rng))
            });
            rec.check(format!("bar-axioms/formal/{i:03}"), ANCHOR, "formal", || {
                let (x, y, z) = elems.map_err(|e| e.clone())?;
                bar_axioms_at(&alg, &x, &y, &z)
            });
        }
    }
    if cfg.mode.concrete() {
        let alg = ConcreteDga::new(MultBasisRegistry::from_ints(&[2, 3, 5]));
        let abc = concrete_bar_alphabet(&alg);
        for i in 0..n {
            let elems = abc.as_ref().map(|abc| {
                (random_bar(&alg, abc, rng), random_bar(&alg, abc, rng), random_bar(&alg, abc, rng))
            });
            rec.check(format!("bar-axioms/concrete/{i:03}"), ANCHOR, "concrete", || {
                let (x, y, z) = elems.map_err(|e| e.clone())?;
                bar_axioms_at(&alg, &x, &y, &z)
            });
        }
    }
}

/// Map a formal bar element letter by letter to cycles.
pub fn realize_bar(formal: &FormalDga, conc: &ConcreteDga, x: &BarElem<Mono>) -> Result<BarElem<Locus>> {
    let mut out = LinComb::zero();
    for (w, coef) in x.iter() {
        let letters = w
            .iter()
            .map(|m| formal.realize(conc, &LinComb::single(m.clone())))
            .collect::<Result<Vec<_>>>()?;
        out.add_scaled(&bar::word(conc, &letters), coef);
    }
    Ok(out)
}

fn polylog_cocycle(cfg: &SuiteConfig, rec: &mut Recorder) {
    let xs = [rat(2), rat(3), ratio(1, 2)];
    let reg = MultBasisRegistry::from_ints(&[2, 3]);
    let formal = FormalDga::new(reg.clone());
    let conc = ConcreteDga::new(reg);
    if cfg.mode.formal() {
        for n in 2..=cfg.n_max.unwrap_or(6) {
            for x in &xs {
                let xf = c(x.clone());
                rec.check(
                    format!("polylog-cocycle/formal/n={n} x={}", fmt_rational(x)),
                    "(d_I + d_E) L_n(x) = 0",
                    "formal",
                    || {
                        let l = bar::motivic_polylog(&formal, n, &xf)?;
                        Ok(zero_or(&bar::d_total(&formal, &l)?, |d| bar::render(&formal, d)))
                    },
                );
            }
        }
    }
    if cfg.mode.concrete() {
        for n in 2..=3 {
            for x in &xs {
                let xf = c(x.clone());
                rec.check(
                    format!("polylog-cocycle/concrete/n={n} x={}", fmt_rational(x)),
                    "(d_I + d_E) L_n(x) = 0",
                    "concrete",
                    || {
                        let l = bar::motivic_polylog(&conc, n, &xf)?;
                        Ok(zero_or(&bar::d_total(&conc, &l)?, |d| bar::render(&conc, d)))
                    },
                );
            }
        }
    }
    if cfg.mode == ModeSel::Both {
        for n in 2..=3 {
            for x in &xs {
                let xf = c(x.clone());
                rec.check(
                    format!("polylog-cocycle/agree/n={n} x={}", fmt_rational(x)),
                    "formal L_n(x) realizes to concrete L_n(x)",
                    "both",
                    || {
                        let f = bar::motivic_polylog(&formal, n, &xf)?;
                        let k = bar::motivic_polylog(&conc, n, &xf)?;
                        let diff = realize_bar(&formal, &conc, &f)?.sub(&k);
                        Ok(zero_or(&diff, |d| bar::render(&conc, d)))
                    },
                );
            }
        }
    }
}

/// The kernel elements used by the weight-two suites, and a non-kernel one.
pub fn weight2_inputs(x: &Rational) -> Vec<(String, FormalSum, bool)> {
    let xf = c(x.clone());
    let pair = FormalSum::from_terms([(xf.clone(), rat(1)), (xf.one_minus(), rat(1))]);
    let inv = FormalSum::from_terms([(xf.clone(), rat(1)), (xf.inv().expect("nonzero"), rat(1))]);
    let five = five_term(&c(rat(2)), &c(rat(3))).expect("admissible");
    vec![
        (format!("{{x}}+{{1-x}} x={}", fmt_rational(x)), pair, true),
        (format!("{{x}}+{{1/x}} x={}", fmt_rational(x)), inv, true),
        ("five_term(2,3)".to_string(), five, true),
        (format!("{{x}} x={}", fmt_rational(x)), FormalSum::single(xf), false),
    ]
}

fn script_p2<A: PolylogAlgebra>(alg: &A, x: &FormalSum) -> Result<LinComb<A::Basis>> {
    let mut p = LinComb::zero();
    for (k, a) in x.iter() {
        if !k.is_one() {
            p.add_scaled(&alg.tilde_p2(k)?, a);
        }
    }
    Ok(p)
}

fn kernel_to_cocycle(cfg: &SuiteConfig, rec: &mut Recorder) {
    if !cfg.mode.concrete() {
        return rec.skipped("kernel-to-cocycle", "formal");
    }
    let alg = ConcreteDga::new(MultBasisRegistry::new());
    for (name, x, kernel) in weight2_inputs(&rat(3)) {
        rec.check(
            format!("kernel-to-cocycle/{name}"),
            if kernel {
                "X in Ker delta2 and d P2(X) = 0"
            } else {
                "X not in Ker delta2 and d P2(X) != 0"
            },
            "concrete",
            || {
                let mut reg = MultBasisRegistry::new();
                let w = delta2_tilde(&x, &mut reg)?;
                if w.is_zero() != kernel {
                    return Ok(Some(format!("delta2 = {}", render_wedge(&w, &reg))));
                }
                let d = alg.d(&script_p2(&alg, &x)?)?;
                Ok(match (kernel, d.is_zero()) {
                    (true, false) => Some(render_sum(&d)),
                    (false, true) => Some("d P2(X) vanished".to_string()),
                    _ => None,
                })
            },
        );
    }
}

/// Replay `[𝒫₂(X)] ≡ Σ aᵢ 𝕃₂(xᵢ)` with the generated chains.
pub fn weight2_replay<A: PolylogAlgebra>(alg: &A, x: &FormalSum) -> Result<bar::ReplayLedger<A::Basis>> {
    let mut lhs = LinComb::zero();
    let mut rhs = LinComb::zero();
    let mut chains = Vec::new();
    for (k, a) in x.iter() {
        if k.is_one() {
            continue;
        }
        lhs.add_scaled(&bar::letter(alg, &alg.tilde_p2(k)?), a);
        rhs.add_scaled(&bar::motivic_polylog(alg, 2, k)?, a);
        for ch in bar::tilde_p2_chains(alg, k)? {
            chains.push(ch.scale(a));
        }
    }
    let span = bar::point_span(alg)?;
    bar::replay_equiv(alg, &lhs, &rhs, &chains, &span)
}

fn colie_replay(cfg: &SuiteConfig, rec: &mut Recorder) {
    let inputs: Vec<_> = weight2_inputs(&rat(3)).into_iter().filter(|i| i.2).collect();
    let run = |mode: &str, rec: &mut Recorder| {
        for (name, x, _) in &inputs {
            let fresh_formal = || FormalDga::new(MultBasisRegistry::new());
            let fresh_conc = || ConcreteDga::new(MultBasisRegistry::new());
            rec.check(
                format!("colie-replay/{mode}/replay {name}"),
                "[P2(X)] = sum a_i L2(x_i) modulo shuffle products",
                mode,
                || {
                    let ledger = if mode == "formal" {
                        let alg = fresh_formal();
                        let l = weight2_replay(&alg, x)?;
                        (l.holds(), bar::render(&alg, &l.residual), l.steps.len())
                    } else {
                        let alg = fresh_conc();
                        let l = weight2_replay(&alg, x)?;
                        (l.holds(), bar::render(&alg, &l.residual), l.steps.len())
                    };
                    Ok((!ledger.0).then(|| format!("residual {} after {} chains", ledger.1, ledger.2)))
                },
            );
            rec.check(
                format!("colie-replay/{mode}/symmetry {name}"),
                "sum a_i [rho_1(x_i)[z]|x_i[z]] symmetric, in the shuffle span",
                mode,
                || {
                    let args = x.as_pairs();
                    let rep = if mode == "formal" {
                        bar::symmetry_residual_check(&fresh_formal(), &args, 2)?
                    } else {
                        bar::symmetry_residual_check(&fresh_conc(), &args, 2)?
                    };
                    Ok((!rep.passed()).then(|| format!("symmetric = {}", rep.symmetric)))
                },
            );
        }
    };
    if cfg.mode.concrete() {
        run("concrete", rec);
    }
    if cfg.mode.formal() {
        run("formal", rec);
    }
}

fn d_chain_verification(cfg: &SuiteConfig, rec: &mut Recorder) {
    if !cfg.mode.formal() {
        return rec.skipped("d-chain-verification", "concrete");
    }
    let t = RatFunc::var(VAR_T);
    let inversion = |n: usize| {
        let alg = FormalDga::new(registry_for(std::slice::from_ref(&t)).expect("nonzero"));
        let sign = parity_sign(n as i64);
        let args = vec![(rat(1), t.clone()), (sign, t.inv().expect("nonzero"))];
        (alg, args)
    };
    let n = cfg.n_max.unwrap_or(4);
    rec.check(
        format!("d-chain-verification/family n={n}"),
        "D-chains satisfy properties (I) and (II); P_n(X) is a cocycle",
        "formal",
        || {
            let (alg, args) = inversion(n);
            let fam = declare_formal_family(&alg, &args, n)?;
            let report = verify_d_chain_properties(&alg, &args, &fam)?;
            if !report.passed() {
                return Ok(Some(format!("{report:?}")));
            }
            let p = assemble_script_p(&alg, &args, n, Some(&fam))?;
            if p.is_zero() {
                return Ok(Some("assembled cochain is zero".into()));
            }
            Ok(zero_or(&alg.d(&p)?, |d| alg.render(d)))
        },
    );
    for m in 2..=n {
        for change in [RChange::Argument, RChange::Rho1] {
            rec.check(
                format!("d-chain-verification/replay n={m} {change:?}"),
                "r -> r + dE changes P_n(X) by a coboundary",
                "formal",
                || {
                    let (alg, args) = inversion(m);
                    let fam = declare_formal_family(&alg, &args, m)?;
                    let de = alg.declare("e0", 1, 0, LinComb::zero())?;
                    let e = alg.declare("E", 1, -1, de)?;
                    let rep = replay_r_modification(&alg, &args, &e, &fam, change)?;
                    Ok((!rep.passed()).then(|| format!("{rep:?}")))
                },
            );
        }
    }
}

fn homotopy_family(cfg: &SuiteConfig, rec: &mut Recorder) {
    if !cfg.mode.concrete() {
        return rec.skipped("homotopy-family", "formal");
    }
    let alg = ConcreteDga::new(MultBasisRegistry::new());
    let x0 = rat(-2);
    let fam = specialize_basis(&[t_plus(2), t_plus(-3)])
        .and_then(|y0| HomotopyFamily::new(&alg, &y0, &[rat(2), rat(3)], DEFAULT_TORSION_CAP));
    let fam = match fam {
        Ok(f) => f,
        Err(e) => {
            rec.check("homotopy-family/setup".into(), "plumbing", "concrete", || Err(e));
            return;
        }
    };
    rec.check(
        "homotopy-family/dr".into(),
        "d r(x(0),y(0))(s) = (x(0)) - x(0)[y(0)](s)",
        "concrete",
        || Ok(cyc(&fam.dr_defect(&x0)?)),
    );
    rec.check(
        "homotopy-family/dps2".into(),
        "d P~2(x(0),y(0))(s) = rho_1(x(0))[y(0)](s) x(0)[y(0)](s)",
        "concrete",
        || Ok(cyc(&fam.dps2_defect(&x0)?)),
    );
    rec.check(
        "homotopy-family/dpsn n=3".into(),
        "d P_n(x(0),y(0))(s) = P_{n-1}(s) x(0)[y(0)](s)",
        "concrete",
        || Ok(cyc(&fam.dpsn_defect(3, &x0)?)),
    );
    rec.check(
        "homotopy-family/s=0".into(),
        "P~2(x(0),y(0))(0) equals the cochain built on the y(0)-basis",
        "concrete",
        || {
            let p = fam.tilde_p2_s(&x0)?;
            if !p.basis().any(|l| l.slots().iter().any(|f| f.contains_var(VAR_S))) {
                return Ok(Some("no s-dependence".into()));
            }
            let diff = fam.at(&p, &Rational::zero())?.sub(&fam.tilde_p2_fixed(&x0)?);
            Ok(cyc(&diff))
        },
    );
}

/// The weight-two certificate used by the certificate suite.
pub fn sample_certificate() -> Result<crate::goncharov::RelationCertificate> {
    certify_r_prime(&five_term(&t_plus(2), &c(rat(5)))?, 2, &[])
}

fn certificates(rec: &mut Recorder) {
    let cert = sample_certificate();
    rec.check(
        "certificates/emit".into(),
        "alpha = five_term(t+2, 5) in Ker delta2 over Q(t), C0 holds; X = alpha(1) - alpha(0)",
        "formal",
        || {
            let cert = cert.clone()?;
            let chk = verify_certificate(&cert)?;
            Ok((!chk.ok).then(|| chk.failures.join("; ")))
        },
    );
    rec.check(
        "certificates/round-trip".into(),
        "JSON round trip re-verifies",
        "formal",
        || {
            let cert = cert.clone()?;
            let back = certificate_from_json(&certificate_to_json(&cert))?;
            if back != cert {
                return Ok(Some("round trip changed the certificate".into()));
            }
            let chk = verify_certificate(&back)?;
            Ok((!chk.ok).then(|| chk.failures.join("; ")))
        },
    );
    rec.check(
        "certificates/perturbed".into(),
        "a perturbed certificate fails re-verification",
        "formal",
        || {
            let mut bad = cert.clone()?;
            bad.element[0].coeff = "2".into();
            let chk = verify_certificate(&bad)?;
            Ok(chk.ok.then(|| "perturbed certificate verified".to_string()))
        },
    );
}

fn specialization(cfg: &SuiteConfig, rec: &mut Recorder) {
    if !cfg.mode.concrete() {
        return rec.skipped("specialization", "formal");
    }
    let alg = ConcreteDga::new(MultBasisRegistry::new());
    let g = t_plus(2);
    for p in [Rational::zero(), Rational::one()] {
        for (name, gen) in [
            ("u(t+2,2)", alg.u(&g, &c(rat(2)))),
            ("rho_2(t+2)", alg.rho(2, &g)),
        ] {
            rec.check(
                format!("specialization/{name} p={}", fmt_rational(&p)),
                "d i_p^* = i_p^* d",
                "concrete",
                || {
                    let x = gen?;
                    let e = alg.engine();
                    let lhs = alg.d(&e.specialize(&x, VAR_T, &p)?)?;
                    let rhs = e.specialize(&alg.d(&x)?, VAR_T, &p)?;
                    Ok(cyc(&lhs.sub(&rhs)))
                },
            );
        }
    }
}

/// Re-verify a certificate file.
pub fn check_certificate_file(path: &std::path::Path) -> Result<Report> {
    let t0 = Instant::now();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::FileError(format!("{}: {e}", path.display())))?;
    let cert = certificate_from_json(&text)?;
    let mut rec = Recorder { records: Vec::new() };
    rec.check(
        format!("check-cert/{}", path.display()),
        "alpha satisfies C0, lies in the kernel, and X = alpha(1) - alpha(0)",
        "formal",
        || {
            let chk = verify_certificate(&cert)?;
            Ok((!chk.ok).then(|| chk.failures.join("; ")))
        },
    );
    Ok(Report {
        suite: "check-cert".into(),
        seed: 0,
        records: rec.records,
        wall_ms: t0.elapsed().as_secs_f64() * 1e3,
    })
}
