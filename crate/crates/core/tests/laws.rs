use std::sync::Arc;

use proptest::prelude::*;
use sheaf_core::classify::{cell_bound, cellularize, check_kernel, generator_check, is_compact, is_proper};
use sheaf_core::format::{emit_kernel, emit_sheaf, parse_kernel, parse_sheaf, Sheaf};
use sheaf_core::funcat::{bar_resolution, counit_left, unit_right, yoneda_evaluation};
use sheaf_core::kernel::{associativity_comparison, convolve_unit_comparison};
use sheaf_core::localize::{check_bireflective, restrict, yoneda_image};
use sheaf_core::random::Generator;
use sheaf_core::{Complex, Field, MonotoneMap, PFunctor, Subject, TameFunctor};

fn field_for(k: u8) -> Field {
    match k % 3 {
        0 => Field::F2,
        1 => Field::prime(3).unwrap(),
        _ => Field::Rational,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn stalk_law(seed in any::<u64>(), fk in any::<u8>(), n in 1usize..=8) {
        let mut g = Generator::new(seed, field_for(fk));
        let p = Arc::new(g.poset(n, 0.35));
        let f = g.functor(&p, 6);
        let x = g.below(n);
        prop_assert!(yoneda_evaluation(x, &f).unwrap().is_quasi_iso());
    }

    #[test]
    fn unit_and_associativity(seed in any::<u64>(), fk in any::<u8>()) {
        let mut g = Generator::new(seed, field_for(fk));
        let (a, b, c) = (1 + g.below(4), 1 + g.below(4), 1 + g.below(4));
        let p = Arc::new(g.poset(a, 0.4));
        let q = Arc::new(g.poset(b, 0.4));
        let r = Arc::new(g.poset(c, 0.4));
        let f = g.functor(&p, 3);
        let k = g.kernel(&p, &q, 2);
        let l = g.kernel(&q, &r, 2);
        prop_assert!(convolve_unit_comparison(&f).unwrap().is_quasi_iso());
        prop_assert!(associativity_comparison(&f, &k, &l).unwrap().is_quasi_iso());
    }

    #[test]
    fn cellularization(seed in any::<u64>(), fk in any::<u8>(), n in 1usize..=6) {
        let mut g = Generator::new(seed, field_for(fk));
        let p = Arc::new(g.poset(n, 0.4));
        let f = g.functor(&p, 5);
        let raw = bar_resolution(&f).unwrap();
        prop_assert!(raw.is_exact().unwrap());
        let c = cellularize(Subject::Finite(&f)).unwrap();
        prop_assert!(c.is_exact().unwrap());
        prop_assert!(c.len() <= raw.len());
        prop_assert!(c.len() <= cell_bound(&f));
    }

    #[test]
    fn kernel_verdicts_agree(seed in any::<u64>(), fk in any::<u8>()) {
        let mut g = Generator::new(seed, field_for(fk));
        let (a, b) = (1 + g.below(5), 1 + g.below(5));
        let p = Arc::new(g.poset(a, 0.4));
        let q = Arc::new(g.poset(b, 0.4));
        let k = g.kernel(&p, &q, 3);
        let v = check_kernel(&k).unwrap();
        let gens = generator_check(&k).unwrap();
        prop_assert_eq!(v.preserves_compacts, gens.iter().all(|(_, v)| v.value));
        prop_assert!(v.preserves_compacts);
    }

    #[test]
    fn restriction_keeps_stalks(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=4) {
        let mut g = Generator::new(seed, Field::prime(5).unwrap());
        let src = Arc::new(g.poset(n, 0.3));
        let tgt = Arc::new(sheaf_core::Poset::chain("C", &["0", "1", "2", "3"][..m]));
        // Monotone by construction: positions along a linear extension, bucketed.
        let mut assignment = vec![0; n];
        for (rank, &x) in src.linear_extension().iter().enumerate() {
            assignment[x] = rank * m / n;
        }
        let q = MonotoneMap::new("bucket", src.clone(), tgt.clone(), assignment).unwrap();
        let h = g.functor(&tgt, 4);
        let r = restrict(&q, &h).unwrap();
        for x in 0..n {
            prop_assert_eq!(r.value(x).homology(), h.value(q.apply(x)).homology());
        }
        for x in 0..n {
            prop_assert!(yoneda_image(&q, x, g.field()).unwrap().is_quasi_iso());
        }
        let b = check_bireflective(&q, g.field()).unwrap();
        if b.is_verified() {
            prop_assert!(counit_left(&q, &h).unwrap().is_quasi_iso());
            prop_assert!(unit_right(&q, &h).unwrap().is_quasi_iso());
        }
    }

    #[test]
    fn format_round_trip(seed in any::<u64>(), fk in any::<u8>()) {
        let mut g = Generator::new(seed, field_for(fk));
        let p = Arc::new(g.poset(1 + (seed % 4) as usize, 0.5));
        let f = g.functor(&p, 4);
        let posets = [(p.name().to_string(), p.clone())].into_iter().collect();
        let sh = Sheaf { name: "s".into(), functor: TameFunctor::finite(f) };
        let e = emit_sheaf(&sh);
        let back = parse_sheaf("s.shf", &e, &posets, None).unwrap();
        prop_assert_eq!(emit_sheaf(&back), e);
        let k = g.kernel(&p, &p, 2);
        let e = emit_kernel(&k);
        let back = parse_kernel("k.ker", &e, &posets, None).unwrap();
        prop_assert_eq!(emit_kernel(&back), e);
    }

    #[test]
    fn acyclic_padding_changes_nothing(seed in any::<u64>()) {
        let mut g = Generator::new(seed, Field::Rational);
        let p = Arc::new(g.poset(4, 0.4));
        let f = g.functor(&p, 4);
        let padded = g.with_acyclic(&f);
        prop_assert_eq!(
            sheaf_core::funcat::holim(&f).unwrap().homology(),
            sheaf_core::funcat::holim(&padded).unwrap().homology()
        );
        prop_assert!(is_compact(Subject::Finite(&padded)).value);
        prop_assert!(is_proper(Subject::Finite(&padded)).value);
    }
}

#[test]
fn constant_on_two_chain_has_at_most_three_cells() {
    let p = Arc::new(sheaf_core::Poset::chain("I", &["a", "b"]));
    let f = PFunctor::constant(p, &Complex::unit(&Field::F2));
    let c = cellularize(Subject::Finite(&f)).unwrap();
    assert!(c.len() <= 3);
    assert!(c.is_exact().unwrap());
}
