use bkcycles::dga::{
    eq2_defect, eq3_defect, registry_for, rho_defect, ConcreteDga, Dga, FormalDga,
};
use bkcycles::poly::VAR_T;
use bkcycles::rational::{rat, ratio};
use bkcycles::registry::MultBasisRegistry;
use bkcycles::{RatFunc, Rational};

fn c(q: Rational) -> RatFunc {
    RatFunc::constant(q)
}

fn primes() -> MultBasisRegistry {
    MultBasisRegistry::from_ints(&[2, 3, 5])
}

#[test]
fn rho_signs_are_consistent() {
    let alg = ConcreteDga::new(primes());
    assert_eq!(alg.rho_sign(2).unwrap(), -1);
    for k in 2..=3 {
        for a in [rat(3), ratio(1, 2), rat(-2), ratio(5, 3)] {
            assert!(rho_defect(&alg, k, &c(a)).unwrap().is_zero());
        }
    }
}

#[test]
fn tilde_p2_differential_concrete() {
    let alg = ConcreteDga::new(primes());
    for a in [rat(3), ratio(1, 2), rat(-2), ratio(5, 3)] {
        let d = eq2_defect(&alg, &c(a.clone())).unwrap();
        assert!(d.is_zero(), "x = {a}: {}", alg.render(&d));
    }
}

#[test]
fn tilde_p2_differential_symbolic() {
    let t = RatFunc::var(VAR_T);
    let alg = ConcreteDga::new(registry_for(std::slice::from_ref(&t)).unwrap());
    let d = eq2_defect(&alg, &t).unwrap();
    assert!(d.is_zero(), "{}", alg.render(&d));
}

#[test]
fn p3_differential_concrete() {
    let alg = ConcreteDga::new(primes());
    let t0 = std::time::Instant::now();
    for a in [rat(3), ratio(1, 2)] {
        let d = eq3_defect(&alg, 3, &c(a.clone())).unwrap();
        assert!(d.is_zero(), "x = {a}: {}", alg.render(&d));
    }
    eprintln!("P3 concrete {:?}", t0.elapsed());
}

#[test]
fn formal_identities() {
    let t = RatFunc::var(VAR_T);
    let alg = FormalDga::new(registry_for(std::slice::from_ref(&t)).unwrap());
    for x in [t.clone(), c(rat(3))] {
        assert!(eq2_defect(&alg, &x).unwrap().is_zero());
        for n in 3..=5 {
            let d = eq3_defect(&alg, n, &x).unwrap();
            assert!(d.is_zero(), "n = {n}: {}", alg.render(&d));
        }
    }
}
