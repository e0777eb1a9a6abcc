use bkcycles::bar::{
    coassociativity_sides, colie_class_equal, coproduct, d_external, d_internal, d_total, letter,
    motivic_polylog, point_span, render, replay_equiv, shuffle, shuffle_ideal_member,
    symmetry_residual_check, tensor_d, tilde_p2_chains, word, word_degree, BarElem, ShuffleSpan,
};
use bkcycles::dga::formal::FormalElem;
use bkcycles::dga::{registry_for, ConcreteDga, Dga, FormalDga, Mono, PolylogAlgebra};
use bkcycles::lincomb::LinComb;
use bkcycles::poly::VAR_T;
use bkcycles::rational::rat;
use bkcycles::registry::MultBasisRegistry;
use bkcycles::{RatFunc, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(n: i64) -> RatFunc {
    RatFunc::constant(rat(n))
}

fn formal() -> FormalDga {
    let t = RatFunc::var(VAR_T);
    FormalDga::new(registry_for(&[t, c(3)]).unwrap())
}

fn alphabet(alg: &FormalDga) -> Vec<FormalElem> {
    let t = RatFunc::var(VAR_T);
    let mut v = vec![
        alg.point(&t).unwrap(),
        alg.point(&t.one_minus()).unwrap(),
        alg.point(&c(2)).unwrap(),
        alg.point(&c(3)).unwrap(),
        alg.rho(2, &t).unwrap(),
        alg.rho(3, &t).unwrap(),
        alg.rho(2, &c(3)).unwrap(),
        alg.r(&c(6)).unwrap(),
        alg.r(&c(12)).unwrap(),
    ];
    let prods = [
        alg.mul(&v[0], &v[2]).unwrap(),
        alg.mul(&v[7], &v[3]).unwrap(),
        alg.mul(&v[4], &v[7]).unwrap(),
    ];
    v.extend(prods);
    v.retain(|x| !x.is_zero());
    v
}

fn random_elem(alg: &FormalDga, abc: &[FormalElem], rng: &mut ChaCha8Rng) -> BarElem<Mono> {
    let mut out = LinComb::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(1..=3);
        let letters: Vec<FormalElem> = (0..len).map(|_| abc[rng.gen_range(0..abc.len())].clone()).collect();
        out.add_scaled(&word(alg, &letters), &rat(rng.gen_range(-3..=3)));
    }
    out
}

#[test]
fn bar_differential_squares_to_zero() {
    let alg = formal();
    let abc = alphabet(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let x = random_elem(&alg, &abc, &mut rng);
        let di = |y: &BarElem<Mono>| d_internal(&alg, y).unwrap();
        let de = |y: &BarElem<Mono>| d_external(&alg, y).unwrap();
        assert!(di(&di(&x)).is_zero());
        assert!(de(&de(&x)).is_zero());
        let anti = di(&de(&x)).add(&de(&di(&x)));
        assert!(anti.is_zero(), "{}", render(&alg, &anti));
        assert!(d_total(&alg, &d_total(&alg, &x).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn shuffle_satisfies_leibniz_and_commutativity() {
    let alg = formal();
    let abc = alphabet(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let v = random_elem(&alg, &abc, &mut rng);
        let w = random_elem(&alg, &abc, &mut rng);
        // Split v into homogeneous bar-degree pieces for the sign.
        let mut lhs = d_total(&alg, &shuffle(&alg, &v, &w)).unwrap();
        for (word_v, cv) in v.iter() {
            let piece = LinComb::term(word_v.clone(), cv.clone());
            let s = if word_degree(&alg, word_v).rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
            lhs = lhs.sub(&shuffle(&alg, &d_total(&alg, &piece).unwrap(), &w));
            lhs = lhs.sub(&shuffle(&alg, &piece, &d_total(&alg, &w).unwrap()).scale(&s));
        }
        assert!(lhs.is_zero(), "{}", render(&alg, &lhs));
        // Graded commutativity on shifted degrees.
        let mut comm = shuffle(&alg, &v, &w);
        for (a, ca) in v.iter() {
            for (b, cb) in w.iter() {
                let s = (word_degree(&alg, a) * word_degree(&alg, b)).rem_euclid(2) == 1;
                let sw = shuffle(&alg, &LinComb::single(b.clone()), &LinComb::single(a.clone()));
                let f = ca * cb * if s { rat(-1) } else { rat(1) };
                comm = comm.sub(&sw.scale(&f));
            }
        }
        assert!(comm.is_zero());
    }
}

#[test]
fn coproduct_is_a_chain_map_and_coassociative() {
    let alg = formal();
    let abc = alphabet(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let x = random_elem(&alg, &abc, &mut rng);
        let lhs = coproduct(&d_total(&alg, &x).unwrap());
        let rhs = tensor_d(&alg, &coproduct(&x)).unwrap();
        assert!(lhs.sub(&rhs).is_zero());
        let (l, r) = coassociativity_sides(&x);
        assert!(l.sub(&r).is_zero());
    }
}

#[test]
fn motivic_polylogs_are_cocycles() {
    let alg = formal();
    let t = RatFunc::var(VAR_T);
    for n in 2..=6 {
        for x in [t.clone(), c(3)] {
            let l = motivic_polylog(&alg, n, &x).unwrap();
            assert!(d_total(&alg, &l).unwrap().is_zero(), "n = {n}");
            assert_eq!(l.len(), n);
        }
    }
    let conc = ConcreteDga::new(MultBasisRegistry::from_ints(&[2, 3]));
    for n in 2..=3 {
        let l = motivic_polylog(&conc, n, &c(3)).unwrap();
        assert!(d_total(&conc, &l).unwrap().is_zero(), "concrete n = {n}");
    }
}

#[test]
fn shuffle_render() {
    let conc = ConcreteDga::new(MultBasisRegistry::from_ints(&[2, 3]));
    let a = letter(&conc, &conc.point(&c(2)).unwrap());
    let b = letter(&conc, &conc.point(&c(3)).unwrap());
    assert_eq!(render(&conc, &shuffle(&conc, &a, &b)), "[2|3]+[3|2]");
}

#[test]
fn symmetrized_words_lie_in_the_shuffle_span() {
    let alg = formal();
    let zs: Vec<FormalElem> = [2, 3, 5].iter().map(|&z| alg.point(&c(z)).unwrap()).collect();
    let mut sym = LinComb::zero();
    for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        sym = sym.add(&word(&alg, &[zs[p[0]].clone(), zs[p[1]].clone(), zs[p[2]].clone()]));
    }
    let span = ShuffleSpan::new(zs.iter().map(|z| letter(&alg, z)).collect());
    assert!(shuffle_ideal_member(&alg, &sym, &span).is_some());
    let single = word(&alg, &[zs[0].clone(), zs[1].clone()]);
    assert!(shuffle_ideal_member(&alg, &single, &span).is_none());
}

fn weight2_replay<A: PolylogAlgebra>(alg: &A, args: &[(Rational, RatFunc)]) -> bool {
    let mut lhs = LinComb::zero();
    let mut rhs = LinComb::zero();
    let mut chains = Vec::new();
    for (a, x) in args {
        lhs.add_scaled(&letter(alg, &alg.tilde_p2(x).unwrap()), a);
        rhs.add_scaled(&motivic_polylog(alg, 2, x).unwrap(), a);
        for ch in tilde_p2_chains(alg, x).unwrap() {
            chains.push(ch.scale(a));
        }
    }
    let span = point_span(alg).unwrap();
    let ledger = replay_equiv(alg, &lhs, &rhs, &chains, &span).unwrap();
    assert_eq!(ledger.steps.len(), chains.len());
    ledger.holds()
}

#[test]
fn weight_two_replay_for_kernel_elements() {
    let pair = |x: RatFunc| vec![(rat(1), x.clone()), (rat(1), x.one_minus())];
    let conc = ConcreteDga::new(registry_for(&[c(3)]).unwrap());
    assert!(weight2_replay(&conc, &pair(c(3))));
    let t = RatFunc::var(VAR_T);
    let alg = FormalDga::new(registry_for(std::slice::from_ref(&t)).unwrap());
    assert!(weight2_replay(&alg, &pair(t.clone())));
    assert!(!weight2_replay(&alg, &[(rat(1), t.clone())]));
}

#[test]
fn colie_classes_of_the_reflection_pair_agree() {
    let alg = ConcreteDga::new(registry_for(&[c(3)]).unwrap());
    let x = c(3);
    let y = x.one_minus();
    let v = letter(&alg, &alg.tilde_p2(&x).unwrap()).add(&letter(&alg, &alg.tilde_p2(&y).unwrap()));
    let w = motivic_polylog(&alg, 2, &x).unwrap().add(&motivic_polylog(&alg, 2, &y).unwrap());
    let mut chains = tilde_p2_chains(&alg, &x).unwrap();
    chains.extend(tilde_p2_chains(&alg, &y).unwrap());
    let span = point_span(&alg).unwrap();
    // tilde_p2 of a pair is not closed on its own; the sum is.
    match colie_class_equal(&alg, &v, &w, &chains, &span) {
        Ok(b) => assert!(b),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn symmetry_check_separates_kernel_from_generic() {
    let t = RatFunc::var(VAR_T);
    let alg = FormalDga::new(registry_for(std::slice::from_ref(&t)).unwrap());
    let pair = vec![(rat(1), t.clone()), (rat(1), t.one_minus())];
    assert!(symmetry_residual_check(&alg, &pair, 2).unwrap().passed());
    let single = vec![(rat(1), t.clone())];
    let rep = symmetry_residual_check(&alg, &single, 2).unwrap();
    assert!(!rep.symmetric);
    assert!(!rep.passed());
}

#[test]
fn replay_rejects_wrong_degrees() {
    let alg = formal();
    let p = letter(&alg, &alg.point(&c(2)).unwrap());
    let span = ShuffleSpan::new(vec![]);
    let l2 = motivic_polylog(&alg, 2, &c(3)).unwrap();
    assert!(replay_equiv(&alg, &l2, &l2, &[p], &span).is_err());
}
