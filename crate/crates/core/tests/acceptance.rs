//! One line per acceptance criterion, each run under its time limit.

use std::time::{Duration, Instant};

use bkcycles::suites::{run_suite, ModeSel, Report, Status, SuiteConfig};

struct Criterion {
    n: usize,
    name: &'static str,
    suite: &'static str,
    limit: Duration,
    mode: ModeSel,
    n_max: Option<usize>,
    samples: Option<usize>,
}

const fn crit(
    n: usize,
    name: &'static str,
    suite: &'static str,
    secs: u64,
    mode: ModeSel,
    n_max: Option<usize>,
    samples: Option<usize>,
) -> Criterion {
    Criterion { n, name, suite, limit: Duration::from_secs(secs), mode, n_max, samples }
}

const CRITERIA: &[Criterion] = &[
    crit(1, "du identity on 100 random pairs", "du-identity", 5, ModeSel::Concrete, None, Some(100)),
    crit(2, "rho_k signs and d rho_k for k <= 4", "rho-signs", 120, ModeSel::Concrete, Some(4), None),
    crit(3, "Leibniz rule on 50 products, both modes", "dga-leibniz", 60, ModeSel::Both, None, Some(50)),
    crit(4, "d P~2 and d P_n, concrete and formal", "eq2-eq3", 180, ModeSel::Both, Some(5), None),
    crit(5, "bar complex axioms on 100 random elements", "bar-axioms", 60, ModeSel::Both, None, Some(100)),
    crit(6, "L_n cocycles and mode agreement", "polylog-cocycle", 120, ModeSel::Both, Some(6), None),
    crit(7, "kernel elements give cocycles", "kernel-to-cocycle", 60, ModeSel::Concrete, None, None),
    crit(8, "weight-two replay modulo shuffles", "colie-replay", 120, ModeSel::Both, None, None),
    crit(9, "D-chain properties and r-modification replay", "d-chain-verification", 60, ModeSel::Formal, Some(4), None),
    crit(10, "homotopy family identities and s = 0 fibre", "homotopy-family", 120, ModeSel::Concrete, None, None),
    crit(11, "relation certificates", "certificates", 30, ModeSel::Formal, None, None),
    crit(12, "specialization commutes with d", "specialization", 30, ModeSel::Concrete, None, None),
];

fn run(c: &Criterion) -> (bool, Duration, Report) {
    let mut cfg = SuiteConfig::new(c.suite);
    cfg.mode = c.mode;
    cfg.n_max = c.n_max;
    cfg.samples = c.samples;
    let t0 = Instant::now();
    let report = run_suite(&cfg).expect("known suite");
    let took = t0.elapsed();
    let has_pass = report.records.iter().any(|r| r.status == Status::Pass);
    (report.passed() && has_pass && took <= c.limit, took, report)
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let (ok, took, report) = run(c);
        let (p, f, i) = report.counts();
        println!(
            "criterion {:>2} {}: {} ({:.2}s / {}s limit; {p} pass, {f} fail, {i} inconclusive)",
            c.n,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            c.limit.as_secs(),
        );
        if !ok {
            for r in report.records.iter().filter(|r| r.status != Status::Pass) {
                println!("    {} [{:?}] {}", r.identity, r.status, r.witness);
            }
            failed.push(c.n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
