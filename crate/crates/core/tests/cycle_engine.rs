use bkcycles::cycle::{render_sum, CycleEngine, CycleSum};
use bkcycles::cycle::{param_var};
use bkcycles::rational::{rat, ratio};
use bkcycles::RatFunc;

fn c(q: bkcycles::Rational) -> RatFunc {
    RatFunc::constant(q)
}

fn u_slots(a: &RatFunc, b: &RatFunc) -> Vec<RatFunc> {
    let x = param_var(0);
    let ab = a.div(b).unwrap();
    vec![x.clone(), x.sub(a).div(&x.sub(&ab)).unwrap()]
}

fn rho_slots(k: usize, a: &RatFunc) -> Vec<RatFunc> {
    let us: Vec<RatFunc> = (0..k - 1).map(param_var).collect();
    let mut slots = us.clone();
    slots.push(if k == 1 { a.one_minus() } else { us[0].one_minus() });
    for i in 1..k {
        let num = if i < k - 1 { us[i].clone() } else { a.clone() };
        if k > 1 {
            slots.push(RatFunc::one().sub(&num.div(&us[i - 1]).unwrap()));
        }
    }
    slots
}

#[test]
fn du_of_three_two() {
    let e = CycleEngine::new();
    let u = e.locus(&u_slots(&c(rat(3)), &c(rat(2)))).unwrap();
    let du = e.differential(&u).unwrap();
    assert_eq!(render_sum(&du), "(+ (pt 2) (pt 3/2) (- (pt 3)))");
}

#[test]
fn d_squared_vanishes_on_rho() {
    let e = CycleEngine::new();
    for k in 1..=3 {
        for a in [rat(2), rat(3), rat(-1), ratio(1, 2)] {
            let r = e.locus(&rho_slots(k, &c(a.clone()))).unwrap();
            let d = e.differential(&r).unwrap();
            let dd = e.differential(&d).unwrap();
            eprintln!("k={k} a={a} rho={} d={}", render_sum(&r), render_sum(&d));
            assert!(dd.is_zero(), "k={k} a={a}: {}", render_sum(&dd));
        }
    }
    let _ = CycleSum::zero();
}

#[test]
fn rho4_d_squared() {
    let e = CycleEngine::new();
    let t0 = std::time::Instant::now();
    for a in [rat(2), rat(3)] {
        let r = e.locus(&rho_slots(4, &c(a.clone()))).unwrap();
        let d = e.differential(&r).unwrap();
        let dd = e.differential(&d).unwrap();
        eprintln!("a={a} d={} {:?}", render_sum(&d), t0.elapsed());
        assert!(dd.is_zero());
    }
}
