use bkcycles::dga::dchains::{
    assemble_script_p, declare_formal_family, replay_r_modification, verify_d_chain_properties,
    DFamily, RChange,
};
use bkcycles::dga::{registry_for, Dga, FormalDga};
use bkcycles::lincomb::LinComb;
use bkcycles::poly::VAR_T;
use bkcycles::rational::rat;
use bkcycles::{Error, RatFunc, Rational};

/// `{t} + (−1)^n {1/t}`, in the kernel at level `n`.
fn inversion_pair_at(n: usize) -> (FormalDga, Vec<(Rational, RatFunc)>) {
    let t = RatFunc::var(VAR_T);
    let alg = FormalDga::new(registry_for(std::slice::from_ref(&t)).unwrap());
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let args = vec![(rat(1), t.clone()), (sign, t.inv().unwrap())];
    (alg, args)
}

fn inversion_pair() -> (FormalDga, Vec<(Rational, RatFunc)>) {
    inversion_pair_at(4)
}

#[test]
fn n4_family_for_inversion_pair() {
    let (alg, args) = inversion_pair();
    let fam = declare_formal_family(&alg, &args, 4).unwrap();
    let report = verify_d_chain_properties(&alg, &args, &fam).unwrap();
    assert!(report.passed(), "{report:?}");
    let p = assemble_script_p(&alg, &args, 4, Some(&fam)).unwrap();
    assert!(!p.is_zero());
    assert!(alg.d(&p).unwrap().is_zero(), "{}", alg.render(&alg.d(&p).unwrap()));
}

#[test]
fn asymmetric_family_is_flagged() {
    let (alg, args) = inversion_pair();
    let fam = declare_formal_family(&alg, &args, 4).unwrap();
    let mut bad = fam.clone();
    let key = fam.chains.keys().find(|k| k.len() == 2 && k[0] != k[1]);
    let key = match key {
        Some(k) => k.clone(),
        None => vec![0, 1],
    };
    let extra = alg.declare("Junk", 2, 0, LinComb::zero()).unwrap();
    bad.insert(key, extra);
    let report = verify_d_chain_properties(&alg, &args, &bad).unwrap();
    assert!(!report.passed());
}

#[test]
fn missing_chains_are_reported() {
    let (alg, args) = inversion_pair();
    let empty = DFamily::new(4);
    assert!(matches!(
        assemble_script_p(&alg, &args, 4, Some(&empty)),
        Err(Error::MissingChains(_))
    ));
    assert!(matches!(
        assemble_script_p(&alg, &args, 4, None),
        Err(Error::MissingChains(_))
    ));
}

#[test]
fn non_kernel_input_has_no_family() {
    let t = RatFunc::var(VAR_T);
    let alg = FormalDga::new(registry_for(std::slice::from_ref(&t)).unwrap());
    let args = vec![(rat(1), t.clone())];
    assert!(matches!(
        declare_formal_family(&alg, &args, 3),
        Err(Error::NotACocycle(_))
    ));
}

fn declare_e(alg: &FormalDga, closed: bool) -> bkcycles::dga::formal::FormalElem {
    let de = if closed {
        LinComb::zero()
    } else {
        alg.declare("e0", 1, 0, LinComb::zero()).unwrap()
    };
    alg.declare(if closed { "Ec" } else { "E" }, 1, -1, de).unwrap()
}

#[test]
fn r_modification_replay() {
    for n in 2..=4 {
        let (alg, args) = inversion_pair_at(n);
        let fam = declare_formal_family(&alg, &args, n).unwrap();
        let e = declare_e(&alg, false);
        for change in [RChange::Argument, RChange::Rho1] {
            let rep = replay_r_modification(&alg, &args, &e, &fam, change).unwrap();
            assert!(rep.passed(), "n = {n} {change:?}: {rep:?}");
        }
    }
}

#[test]
fn r_modification_needs_degree_minus_one() {
    let (alg, args) = inversion_pair_at(3);
    let fam = declare_formal_family(&alg, &args, 3).unwrap();
    let e0 = alg.declare("e0", 1, 0, LinComb::zero()).unwrap();
    assert!(matches!(
        replay_r_modification(&alg, &args, &e0, &fam, RChange::Argument),
        Err(Error::DegreeMismatch(_))
    ));
}
