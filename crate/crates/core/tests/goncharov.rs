use bkcycles::dga::{ConcreteDga, Dga, PolylogAlgebra};
use bkcycles::goncharov::{
    certificate_from_json, certificate_to_json, certify_r_prime, certify_r_prime_in, delta2_tilde, deltan_prime_mod,
    five_term, kernel_solve_2, specialize_sum, verify_certificate, FormalSum, RelationCertificate,
};

use bkcycles::poly::{VAR_S, VAR_T};
use bkcycles::rational::{rat, ratio};
use bkcycles::registry::MultBasisRegistry;
use bkcycles::{Error, RatFunc, Rational};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;


fn c(q: Rational) -> RatFunc {
    RatFunc::constant(q)
}

fn t() -> RatFunc {
    RatFunc::var(VAR_T)
}

fn sample(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-20..=20);
        let d: i64 = rng.gen_range(-20..=20);
        if n != 0 && d != 0 && n != d {
            return ratio(n, d);
        }
    }
}

fn d2(x: &FormalSum) -> bool {
    delta2_tilde(x, &mut MultBasisRegistry::new()).unwrap().is_zero()
}

#[test]
fn delta2_basic_relations() {
    assert!(d2(&FormalSum::single(RatFunc::one())));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let x = c(sample(&mut rng));
        let pair = FormalSum::from_terms([(x.clone(), rat(1)), (x.one_minus(), rat(1))]);
        assert!(d2(&pair), "{pair}");
        let inv = FormalSum::from_terms([(x.clone(), rat(1)), (x.inv().unwrap(), rat(1))]);
        assert!(d2(&inv), "{inv}");
    }
    assert!(!d2(&FormalSum::single(c(rat(3)))));
    let inv_t = FormalSum::from_terms([(t(), rat(1)), (t().inv().unwrap(), rat(1))]);
    assert!(d2(&inv_t));
}

#[test]
fn five_term_lies_in_the_kernel() {
    assert!(five_term(&c(rat(2)), &c(rat(3))).is_ok());
    assert!(five_term(&t(), &c(rat(2))).is_ok());
    assert!(matches!(
        five_term(&c(rat(2)), &RatFunc::one()),
        Err(Error::DegenerateArguments(_))
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let (x, y) = (sample(&mut rng), sample(&mut rng));
        if (&x * &y).is_one() {
            continue;
        }
        five_term(&c(x), &c(y)).unwrap();
        done += 1;
    }
    for _ in 0..10 {
        let (a, b) = (sample(&mut rng), sample(&mut rng));
        let x = t().scale(&a).add(&c(b));
        five_term(&x, &c(rat(rng.gen_range(2..=9)))).unwrap();
    }
}

#[test]
fn kernel_solver_examples() {
    let x = c(rat(5));
    let ker = kernel_solve_2(&[x.clone(), x.one_minus()], &mut MultBasisRegistry::new()).unwrap();
    assert_eq!(ker, vec![FormalSum::from_terms([(x.clone(), rat(1)), (x.one_minus(), rat(1))])]);
    let ker = kernel_solve_2(&[t(), t().inv().unwrap()], &mut MultBasisRegistry::new()).unwrap();
    assert_eq!(ker.len(), 1);
    assert_eq!(ker[0].coeff(&t()), ker[0].coeff(&t().inv().unwrap()));
    let ker = kernel_solve_2(&[c(rat(2))], &mut MultBasisRegistry::new()).unwrap();
    assert_eq!(ker, vec![FormalSum::single(c(rat(2)))]);
}

#[test]
fn kernel_elements_agree_with_the_cycle_level() {
    let cands: Vec<RatFunc> = [(2, 1), (3, 1), (-1, 1), (-2, 1), (4, 1), (1, 2), (3, 2), (-1, 2)]
        .into_iter()
        .map(|(n, d)| ratio_i(n, d))
        .collect();
    let ker = kernel_solve_2(&cands, &mut MultBasisRegistry::new()).unwrap();
    assert!(!ker.is_empty());
    let alg = ConcreteDga::new(MultBasisRegistry::from_ints(&[2, 3]));
    let d_p2 = |x: &FormalSum| {
        let mut p = bkcycles::lincomb::LinComb::zero();
        for (k, a) in x.iter() {
            if !k.is_one() {
                p.add_scaled(&alg.tilde_p2(k).unwrap(), a);
            }
        }
        alg.d(&p).unwrap()
    };
    for x in &ker {
        assert!(d_p2(x).is_zero(), "{x}");
    }
    assert!(!d_p2(&FormalSum::single(c(rat(3)))).is_zero());
}

fn ratio_i(n: i64, d: i64) -> RatFunc {
    c(ratio(n, d))
}

#[test]
fn specialization_of_sums() {
    let (a0, a1) = specialize_sum(&FormalSum::single(t().add(&c(rat(2))))).unwrap();
    assert_eq!(a0, FormalSum::single(c(rat(2))));
    assert_eq!(a1, FormalSum::single(c(rat(3))));
    let f = t().add(&RatFunc::one()).div(&t().sub(&c(rat(2)))).unwrap();
    let (a0, a1) = specialize_sum(&FormalSum::single(f)).unwrap();
    assert_eq!(a0, FormalSum::single(c(ratio(-1, 2))));
    assert_eq!(a1, FormalSum::single(c(rat(-2))));
    assert!(specialize_sum(&FormalSum::single(t())).is_err());
}

fn five_term_cert(a: i64, b: i64) -> RelationCertificate {
    let alpha = five_term(&t().add(&c(rat(a))), &c(rat(b))).unwrap();
    certify_r_prime(&alpha, 2, &[]).unwrap()
}

#[test]
fn weight_two_certificates_round_trip() {
    let cert = five_term_cert(2, 5);
    assert!(verify_certificate(&cert).unwrap().ok);
    let text = certificate_to_json(&cert);
    let back = certificate_from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert!(verify_certificate(&back).unwrap().ok);
    assert!(d2(&cert.element_sum().unwrap()));

    let mut bad = cert.clone();
    bad.generator[0].coeff = "2".into();
    let check = verify_certificate(&bad).unwrap();
    assert!(!check.ok);
    assert!(check.failures.iter().any(|f| f.contains("kernel")));

    assert!(matches!(
        certify_r_prime(&FormalSum::single(t()), 2, &[]),
        Err(Error::C0Violation(_))
    ));
    let zero = certify_r_prime(&FormalSum::zero(), 2, &[]).unwrap();
    assert!(zero.element.is_empty());
    assert!(matches!(
        certificate_from_json(&text[..text.len() / 2]),
        Err(Error::SchemaError(_))
    ));
}

#[test]
fn deltan_prime_examples() {
    let mut reg = MultBasisRegistry::new();
    let red = deltan_prime_mod(&FormalSum::zero(), 3, &[], &mut reg).unwrap();
    assert!(red.witness.is_some());
    let red = deltan_prime_mod(&FormalSum::single(c(rat(2))), 3, &[], &mut reg).unwrap();
    assert!(red.witness.is_none());
    assert_eq!(red.residual.len(), 1);
    let cert = five_term_cert(2, 5);
    assert!(matches!(
        deltan_prime_mod(&FormalSum::zero(), 4, &[cert], &mut reg),
        Err(Error::LevelMismatch { .. })
    ));
}

#[test]
fn columns_reduce_modulo_certified_relations() {
    // α = {f} + {1/f} with f(0) = −3, f(1) = 3 certifies
    // {3} + {1/3} − {−3} − {−1/3}.
    let f = t().scale(&rat(6)).sub(&c(rat(3)));
    let alpha = FormalSum::from_terms([(f.clone(), rat(1)), (f.inv().unwrap(), rat(1))]);
    let cert = certify_r_prime(&alpha, 2, &[]).unwrap();
    assert!(verify_certificate(&cert).unwrap().ok);
    let x = FormalSum::from_terms([
        (c(rat(3)), rat(1)),
        (c(ratio(1, 3)), rat(-1)),
        (c(rat(-3)), rat(-1)),
        (c(ratio(-1, 3)), rat(1)),
    ]);
    let red = deltan_prime_mod(&x, 3, std::slice::from_ref(&cert), &mut MultBasisRegistry::new()).unwrap();
    assert!(red.witness.is_some(), "{}", bkcycles::goncharov::render_residual(&red.residual));
    let red = deltan_prime_mod(&x, 3, &[], &mut MultBasisRegistry::new()).unwrap();
    assert!(red.witness.is_none());

    // The same element as a level-3 relation over Q(t): α₃ = {g} − {1/g} − {−g} + {−1/g}.
    let g = t().add(&c(rat(2)));
    let alpha3 = FormalSum::from_terms([
        (g.clone(), rat(1)),
        (g.inv().unwrap(), rat(-1)),
        (g.neg(), rat(-1)),
        (g.neg().inv().unwrap(), rat(1)),
    ]);
    // A constant relation cannot reduce columns with keys in Q(t).
    let lower_const = certify_r_prime(
        &FormalSum::from_terms([(f.clone(), rat(1)), (f.inv().unwrap(), rat(1))]),
        2,
        &[],
    )
    .unwrap();
    assert!(matches!(
        certify_r_prime(&alpha3, 3, &[lower_const]),
        Err(Error::KernelCheckFailed(_))
    ));
    // A relation over Q(t), from a family in s with f(0) = −g, f(1) = g.
    let s = RatFunc::var(VAR_S);
    let fs = g.mul(&s.scale(&rat(2)).sub(&RatFunc::one()));
    let lower = certify_r_prime_in(
        &FormalSum::from_terms([(fs.clone(), rat(1)), (fs.inv().unwrap(), rat(1))]),
        2,
        &[],
        VAR_S,
    )
    .unwrap();
    let cert3 = certify_r_prime(&alpha3, 3, &[lower]).unwrap();
    assert!(verify_certificate(&cert3).unwrap().ok);
    let text = certificate_to_json(&cert3);
    assert_eq!(certificate_from_json(&text).unwrap(), cert3);
    let expected = x.sub(&FormalSum::from_terms([
        (c(rat(2)), rat(1)),
        (c(ratio(1, 2)), rat(-1)),
        (c(rat(-2)), rat(-1)),
        (c(ratio(-1, 2)), rat(1)),
    ]));
    assert_eq!(cert3.element_sum().unwrap(), expected);
}
