mod common;

use common::q;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultranorm::bstar::{check_bstar, selfadjoint_idempotent, trace_form};
use ultranorm::check::Verdict;
use ultranorm::field::{sample_extensions, Field};
use ultranorm::fixtures;
use ultranorm::ideal::{annihilator, is_closed, Side};
use ultranorm::idempotent::{maximal_orthogonal_idempotents, peirce};
use ultranorm::radical::{quasi_inverse, quasi_residual, quotient, radical, residual_bound};
use ultranorm::star::{psi_embedding, selfadjoint_decompose};
use ultranorm::{Algebra, AlgebraSpec, Norm, Scalar, UltraMatrix};

fn scalar(f: &Field, rng: &mut ChaCha8Rng) -> Scalar {
    f.random_integral(rng).shift(rng.gen_range(-3..=3))
}

fn matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> UltraMatrix {
    UltraMatrix::from_fn(f, n, n, |_, _| f.random_integral(rng))
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7), Just(11)]
}

fn random_algebra(p: u32, seed: u64) -> (AlgebraSpec, Algebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = fixtures::random_spec(p, 4, &mut rng);
    let a = spec.build(None).unwrap();
    (spec, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norm_is_multiplicative_and_ultrametric(p in prime(), seed in any::<u64>()) {
        let f = q(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..30 {
            let (x, y) = (scalar(&f, &mut rng), scalar(&f, &mut rng));
            prop_assert_eq!((&x * &y).norm(), x.norm().mul(y.norm()));
            let s = (&x + &y).norm();
            prop_assert!(s <= x.norm().max(y.norm()));
            if x.norm() != y.norm() {
                prop_assert_eq!(s, x.norm().max(y.norm()));
            }
        }
    }

    #[test]
    fn square_roots_are_accurate(p in prime(), seed in any::<u64>()) {
        let f = q(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = scalar(&f, &mut rng);
        prop_assume!(!r.is_zero());
        let a = &r * &r;
        let s = a.sqrt().unwrap();
        let bound = Norm::p_pow_neg(f.precision() as i64 - 2).mul(a.norm());
        prop_assert!((&(&s * &s) - &a).norm() <= bound);
    }

    #[test]
    fn extension_norm_extends_base_norm(p in prime(), n in -500i64..500) {
        let f = q(p);
        for ext in sample_extensions(p) {
            let g = f.extend(&ext).unwrap();
            prop_assert_eq!(g.from_i64(n).norm(), f.from_i64(n).norm());
        }
    }

    #[test]
    fn transposition_laws(seed in any::<u64>(), n in 1usize..5) {
        let f = q(7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (matrix(&f, n, &mut rng), matrix(&f, n, &mut rng));
        prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn kernel_vectors_are_annihilated(seed in any::<u64>()) {
        let f = q(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = matrix(&f, 3, &mut rng);
        // force a dependency between the rows
        let row = a.row(0).iter().zip(a.row(1)).map(|(x, y)| x + y).collect();
        let m = UltraMatrix::from_rows(&f, vec![a.row(0).to_vec(), a.row(1).to_vec(), row]).unwrap();
        let bound = Norm::p_pow_neg((f.precision() - f.guard()) as i64);
        for v in m.kernel().unwrap() {
            let image = m.mul_vec(&v);
            prop_assert!(image.iter().all(|c| c.norm() <= bound));
        }
    }

    #[test]
    fn random_algebras_are_associative_and_bounded(p in prime(), seed in any::<u64>()) {
        let (_, a) = random_algebra(p, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for _ in 0..10 {
            let (x, y, z) = (a.random_integral(&mut rng), a.random_integral(&mut rng), a.random_integral(&mut rng));
            prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
            prop_assert!(a.left_regular(&x).operator_norm() <= x.norm());
        }
    }

    #[test]
    fn left_annihilators_are_left_ideals(p in prime(), seed in any::<u64>()) {
        let (_, a) = random_algebra(p, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let s = vec![a.random_integral(&mut rng)];
        let j = annihilator(&a, &s, Side::Left).unwrap();
        prop_assert!(is_closed(&a, &j.space, Side::Left));
        let j = annihilator(&a, &s, Side::Right).unwrap();
        prop_assert!(is_closed(&a, &j.space, Side::Right));
    }

    #[test]
    fn quasi_inverses_have_small_residual(p in prime(), seed in any::<u64>()) {
        let (_, a) = random_algebra(p, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let x = a.random_integral(&mut rng).scale(&a.field().from_i64(p as i64));
        let y = quasi_inverse(&a, &x).unwrap();
        prop_assert!(quasi_residual(&a, &x, &y) <= residual_bound(a.field()));
    }

    #[test]
    fn radical_is_two_sided_and_quotient_semisimple(p in prime(), seed in any::<u64>()) {
        let (_, a) = random_algebra(p, seed);
        let r = radical(&a).unwrap();
        prop_assert!(is_closed(&a, &r.ideal.space, Side::TwoSided));
        if !r.is_zero() && r.quotient_dim > 0 {
            let b = quotient(&a, &r.ideal).unwrap();
            prop_assert!(radical(&b).unwrap().is_zero());
        }
    }

    #[test]
    fn idempotent_families_are_orthogonal(seed in any::<u64>(), sizes in prop::collection::vec(1usize..3, 1..3)) {
        let f = q(7);
        let a = fixtures::block_matrix_algebra(&f, &sizes).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = maximal_orthogonal_idempotents(&a, &mut rng).unwrap();
        prop_assert!(fam.maximal);
        prop_assert!(fam.is_orthogonal(&a));
        prop_assert_eq!(fam.len(), sizes.iter().sum::<usize>());
        prop_assert_eq!(peirce(&a, &fam.members).unwrap().total_dim(), a.dim());
    }

    #[test]
    fn transpose_is_isometric_and_decomposes(seed in any::<u64>()) {
        let f = q(7);
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let k = psi_embedding(&m2).unwrap();
        let alg = &k.algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = m2.random_integral(&mut rng);
        prop_assert_eq!(m2.star(&x).unwrap().norm(), x.norm());
        let a = alg.random_integral(&mut rng);
        let (a0, a1) = selfadjoint_decompose(&k, &a).unwrap();
        prop_assert_eq!(alg.star(&a0).unwrap(), a0.clone());
        prop_assert_eq!(alg.star(&a1).unwrap(), a1.clone());
        prop_assert_eq!(&a0 + &alg.mul(&a1, &k.i1()), a);
        prop_assert_eq!(alg.mul(&a1, &k.i1()), alg.mul(&k.i1(), &a1));
    }

    #[test]
    fn selfadjoint_idempotents_are_exact(seed in any::<u64>()) {
        let f = q(7);
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = matrix(&f, 2, &mut rng);
        let Some(gi) = g.inverse().unwrap() else { return Ok(()) };
        let e11 = UltraMatrix::from_i64(&f, &[&[1, 0], &[0, 0]]);
        let c = g.mul(&e11).mul(&gi);
        let w = m2.element(vec![c.get(0, 0).clone(), c.get(0, 1).clone(), c.get(1, 0).clone(), c.get(1, 1).clone()]);
        prop_assert_eq!(m2.mul(&w, &w), w.clone());
        let r = selfadjoint_idempotent(&m2, &w).unwrap();
        prop_assert_eq!(m2.star(&r.v).unwrap(), r.v.clone());
        prop_assert_eq!(m2.mul(&r.v, &r.v), r.v);
    }

    #[test]
    fn specs_round_trip(p in prime(), seed in any::<u64>()) {
        let (spec, _) = random_algebra(p, seed);
        prop_assert_eq!(AlgebraSpec::parse(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn nondegeneracy_matches_gram_kernel(sizes in prop::collection::vec(1usize..3, 1..3), seed in any::<u64>()) {
        let f = q(7);
        let a = fixtures::block_matrix_algebra(&f, &sizes).unwrap();
        let form = trace_form(&a, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = check_bstar(&a, &form, 5, &mut rng).unwrap();
        let empty = form.gram.kernel().unwrap().is_empty();
        prop_assert_eq!(r.axiom(4) == Verdict::Pass, empty);
    }
}
