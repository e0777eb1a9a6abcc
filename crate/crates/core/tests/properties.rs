use bkcycles::dga::{ConcreteDga, Dga, PolylogAlgebra};
use bkcycles::expr::parse_ratfunc;
use bkcycles::poly::VAR_T;
use bkcycles::rational::ratio;
use bkcycles::registry::MultBasisRegistry;
use bkcycles::suites::{run_suite, SuiteConfig};
use bkcycles::RatFunc;
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-20i64..=-1, 1i64..=20]
}

fn rational() -> impl Strategy<Value = RatFunc> {
    (nonzero(), nonzero()).prop_map(|(n, d)| RatFunc::constant(ratio(n, d)))
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-5i64..=5, 1..4), prop::collection::vec(-5i64..=5, 1..3)).prop_filter_map(
        "zero denominator",
        |(num, den)| {
            let t = RatFunc::var(VAR_T);
            let poly = |cs: &[i64]| {
                cs.iter().rev().fold(RatFunc::zero(), |acc, c| acc.mul(&t).add(&RatFunc::from_int(*c)))
            };
            poly(&num).div(&poly(&den))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn du_identity(a in rational(), b in rational()) {
        let alg = ConcreteDga::new(MultBasisRegistry::new());
        let du = alg.d(&alg.u(&a, &b).unwrap()).unwrap();
        let rhs = alg.point(&b).unwrap()
            .add(&alg.point(&a.div(&b).unwrap()).unwrap())
            .sub(&alg.point(&a).unwrap());
        prop_assert!(du.sub(&rhs).is_zero());
    }

    #[test]
    fn ratfunc_display_parses_back(x in small_ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn reports_are_deterministic_under_a_seed() {
    let mut cfg = SuiteConfig::new("bar-axioms");
    cfg.samples = Some(5);
    cfg.seed = 11;
    let ids = |c: &SuiteConfig| -> Vec<String> {
        run_suite(c).unwrap().records.into_iter().map(|r| r.identity + &r.witness).collect()
    };
    assert_eq!(ids(&cfg), ids(&cfg));
    let mut cfg = SuiteConfig::new("du-identity");
    cfg.seed = 7;
    cfg.samples = Some(100);
    let a = run_suite(&cfg).unwrap();
    assert!(a.passed());
    assert_eq!(a.records.len(), 100);
    cfg.seed = 8;
    assert_ne!(ids(&cfg), a.records.iter().map(|r| r.identity.clone()).collect::<Vec<_>>());
}

#[test]
fn bad_configurations_are_rejected() {
    use bkcycles::error::Error;
    assert!(matches!(run_suite(&SuiteConfig::new("unknown-name")), Err(Error::ConfigError(_))));
    let mut cfg = SuiteConfig::new("du-identity");
    cfg.n_max = Some(3);
    assert!(matches!(run_suite(&cfg), Err(Error::ConfigError(_))));
    let mut cfg = SuiteConfig::new("rho-signs");
    cfg.n_max = Some(9);
    assert!(matches!(run_suite(&cfg), Err(Error::ConfigError(_))));
    cfg.n_max = Some(4);
    cfg.mode = bkcycles::suites::ModeSel::Formal;
    let r = run_suite(&cfg).unwrap();
    assert!(r.passed());
}
