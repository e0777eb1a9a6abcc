use bkcycles::dga::homotopy::{
    solve_exponents, specialize_basis, torsion_order, HomotopyFamily, DEFAULT_TORSION_CAP,
};
use bkcycles::dga::{ConcreteDga, Dga};
use bkcycles::poly::VAR_T;
use bkcycles::rational::{rat, ratio};
use bkcycles::registry::MultBasisRegistry;
use bkcycles::{Error, RatFunc, Rational};

fn t_plus(c: i64) -> RatFunc {
    RatFunc::var(VAR_T).add(&RatFunc::from_int(c))
}

#[test]
fn torsion_orders() {
    let z = [rat(2)];
    let c = solve_exponents(&rat(4), &z).unwrap();
    assert_eq!(torsion_order(&rat(4), &z, &c, 8).unwrap(), 1);
    let c = solve_exponents(&rat(-2), &z).unwrap();
    assert_eq!(torsion_order(&rat(-2), &z, &c, 8).unwrap(), 2);
    assert!(matches!(
        torsion_order(&rat(-2), &z, &c, 1),
        Err(Error::TorsionOrderNotFound { .. })
    ));
}

#[test]
fn worked_instance() {
    let y0 = specialize_basis(&[t_plus(2), t_plus(-3)]).unwrap();
    assert_eq!(y0, vec![rat(2), rat(-3)]);
    let alg = ConcreteDga::new(MultBasisRegistry::new());
    let fam = HomotopyFamily::new(&alg, &y0, &[rat(2), rat(3)], DEFAULT_TORSION_CAP).unwrap();
    assert_eq!(fam.y.iter().map(|d| d.m).collect::<Vec<_>>(), vec![1, 2]);
    let x0 = rat(-2);
    for x in [x0.clone(), rat(3), ratio(-1, 2)] {
        assert!(fam.dr_defect(&x).unwrap().is_zero(), "dr at {x}");
    }
    let d = fam.dps2_defect(&x0).unwrap();
    assert!(d.is_zero(), "{}", alg.render(&d));
    let p = fam.tilde_p2_s(&x0).unwrap();
    assert!(p
        .basis()
        .any(|l| l.slots().iter().any(|f| f.contains_var(bkcycles::poly::VAR_S))));
    eprintln!("{} terms: {}", p.len(), alg.render(&p));
    let at0 = fam.at(&p, &rat(0)).unwrap();
    assert_eq!(at0, fam.tilde_p2_fixed(&x0).unwrap());
    let t0 = std::time::Instant::now();
    let d3 = fam.dpsn_defect(3, &x0).unwrap();
    assert!(d3.is_zero(), "{}", alg.render(&d3));
    eprintln!("dpsn n=3: {:?}", t0.elapsed());
    let _ = Rational::from_integer(0.into());
}
