mod common;

use std::sync::Arc;

use common::{betti_map, chains, closure, simplicial_cohomology, P};
use sheaf_core::funcat::{hocolim, holim, rhom};
use sheaf_core::kernel::{convolve_finite, identity_kernel};
use sheaf_core::random::{nat_trans_space, Generator};
use sheaf_core::witness::TailValue;
use sheaf_core::{face_poset, Complex, Field, PFunctor, Poset, Scalar};

fn named(facets: &[Vec<usize>]) -> Vec<Vec<String>> {
    facets.iter().map(|f| f.iter().map(|v| format!("v{v}")).collect()).collect()
}

fn surfaces() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    vec![
        ("triangle", vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
        ("hexagon", (0..6).map(|i| vec![i, (i + 1) % 6]).collect()),
        (
            "octahedron",
            vec![
                vec![0, 2, 4],
                vec![0, 2, 5],
                vec![0, 3, 4],
                vec![0, 3, 5],
                vec![1, 2, 4],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 3, 5],
            ],
        ),
    ]
}

#[test]
fn global_sections_match_simplicial_cochains() {
    for (name, facets) in surfaces() {
        let expected = simplicial_cohomology(&closure(&facets), P);
        let p = Arc::new(face_poset(name, &named(&facets)).unwrap());
        for field in [Field::F2, Field::prime(3).unwrap(), Field::Rational] {
            let k = PFunctor::constant(p.clone(), &Complex::unit(&field));
            let got = holim(&k).unwrap().homology();
            assert_eq!(betti_map(&got), expected, "{name} over {field}");
        }
    }
    let circle = simplicial_cohomology(&closure(&surfaces()[0].1), P);
    assert_eq!(circle, [(0, 1), (1, 1)].into_iter().collect());
    let sphere = simplicial_cohomology(&closure(&surfaces()[2].1), P);
    assert_eq!(sphere, [(0, 1), (2, 1)].into_iter().collect());
}

#[test]
fn constant_limits_and_colimits_see_the_order_complex() {
    let mut g = Generator::new(11, Field::prime(5).unwrap());
    for _ in 0..25 {
        let n = 2 + g.below(5);
        let p = Arc::new(g.poset(n, 0.45));
        let order = chains(p.len(), |a, b| p.leq(a, b));
        let mut order: Vec<Vec<usize>> = order;
        for c in order.iter_mut() {
            c.sort();
        }
        let expected = simplicial_cohomology(&order, P);
        let k = PFunctor::constant(p.clone(), &Complex::unit(g.field()));
        assert_eq!(betti_map(&holim(&k).unwrap().homology()), expected);
        let homological: std::collections::BTreeMap<i32, usize> =
            hocolim(&k).unwrap().homology().homological().iter().collect();
        assert_eq!(homological, expected);
    }
}

/// Naturality checked by multiplying F2 matrices stored as bit rows.
fn brute_force_count(f: &PFunctor, g: &PFunctor) -> usize {
    let base = f.base();
    let n = base.len();
    let bit = |s: Scalar| matches!(s, Scalar::Mod(1));
    let dims: Vec<(usize, usize)> = (0..n).map(|p| (g.value(p).dim(0), f.value(p).dim(0))).collect();
    let unknowns: usize = dims.iter().map(|(r, c)| r * c).sum();
    assert!(unknowns <= 14);
    let mut count = 0;
    for code in 0u32..(1 << unknowns) {
        let mut off = 0;
        let mut comps: Vec<Vec<Vec<bool>>> = Vec::new();
        for &(r, c) in &dims {
            comps.push((0..r).map(|i| (0..c).map(|j| code >> (off + i * c + j) & 1 == 1).collect()).collect());
            off += r * c;
        }
        let natural = base.covers().iter().all(|&(a, b)| {
            let fe = f.map(a, b).get(&0).cloned();
            let ge = g.map(a, b).get(&0).cloned();
            let (rb, ca) = (dims[b].0, dims[a].1);
            (0..rb).all(|i| {
                (0..ca).all(|j| {
                    // (G(a→b) ∘ α_a)_{ij} = (α_b ∘ F(a→b))_{ij}
                    let lhs = (0..dims[a].0)
                        .filter(|&k| ge.as_ref().is_some_and(|m| bit(m.get(i, k))) && comps[a][k][j])
                        .count();
                    let rhs = (0..dims[b].1)
                        .filter(|&k| comps[b][i][k] && fe.as_ref().is_some_and(|m| bit(m.get(k, j))))
                        .count();
                    lhs % 2 == rhs % 2
                })
            })
        });
        if natural {
            count += 1;
        }
    }
    count
}

#[test]
fn natural_transformations_by_enumeration() {
    let mut g = Generator::new(5, Field::F2);
    let mut tested = 0;
    while tested < 30 {
        let n = 1 + g.below(3);
        let p = Arc::new(g.poset(n, 0.6));
        let f = g.representation(&p, 2);
        let h = g.representation(&p, 2);
        let unknowns: usize = (0..p.len()).map(|x| f.value(x).dim(0) * h.value(x).dim(0)).sum();
        if unknowns > 14 {
            continue;
        }
        let count = brute_force_count(&f, &h);
        let hom = rhom(&f, &h).unwrap().homology().get(0);
        assert_eq!(count, 1 << hom);
        assert_eq!(count, 1 << nat_trans_space(&f, &h).cols());
        tested += 1;
    }
}

#[test]
fn convolution_euler_characteristic() {
    let mut g = Generator::new(21, Field::Rational);
    for _ in 0..20 {
        let n = 2 + g.below(3);
        let p = Arc::new(g.poset(n, 0.5));
        let n = 1 + g.below(3);
        let q = Arc::new(g.poset(n, 0.5));
        let f = g.functor(&p, 4);
        let k = g.kernel(&p, &q, 3);
        let conv = convolve_finite(&f, &k).unwrap();
        let carrier = k.carrier().finite_part();
        let all = chains(p.len(), |a, b| p.leq(a, b));
        for y in 0..q.len() {
            let expected: i64 = all
                .iter()
                .map(|s| {
                    let n = s.len() - 1;
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    sign * carrier.value(k.index(s[n], y)).euler_characteristic()
                        * f.value(s[0]).euler_characteristic()
                })
                .sum();
            assert_eq!(conv.value(y).euler_characteristic(), expected);
        }
    }
}

#[test]
fn identity_kernel_convolution_has_stalks_of_f() {
    let mut g = Generator::new(2, Field::prime(7).unwrap());
    for _ in 0..10 {
        let p = Arc::new(g.poset(4, 0.5));
        let f = g.functor(&p, 5);
        let conv = convolve_finite(&f, &identity_kernel(p.clone(), g.field())).unwrap();
        for x in 0..p.len() {
            assert_eq!(conv.value(x).homology(), f.value(x).homology());
        }
    }
}

#[test]
fn tail_truncation_matches_symbolic_betti() {
    let field = Field::Rational;
    let k = Complex::unit(&field);
    let t = TailValue::new(Complex::zero(&field), k.clone(), 0, 1).unwrap();
    let tb = t.betti();
    for d in 0..10 {
        assert_eq!(tb.get(d), 1);
    }
    assert_eq!(tb.get(-1), 0);
    assert!(!t.is_perfect());

    let a = TailValue::new(Complex::zero(&field), k.clone(), 0, 2).unwrap();
    let b = TailValue::new(Complex::concentrated(&field, 1, 2), k.clone(), 1, 2).unwrap();
    let s = a.sum(&b).unwrap();
    let brute = a.truncate(6).direct_sum(&b.truncate(6)).unwrap().homology();
    let stable = s.anchor() + 5 * s.stride() as i32;
    for d in -2..stable {
        assert_eq!(s.betti().get(d), brute.get(d), "degree {d}");
    }

    let acyc = Complex::new(
        field.clone(),
        [(0, 1), (1, 1)].into_iter().collect(),
        [(0, sheaf_core::Matrix::identity(&field, 1))].into_iter().collect(),
    )
    .unwrap();
    let p = TailValue::new(k.clone(), acyc, 3, 2).unwrap();
    assert!(p.is_perfect());
    assert!(p.betti().is_finite());
    assert!(!t.tensor(&p.base().clone()).unwrap().betti().family.iter().any(|(_, c)| c > 0));
    for copies in 3..6u32 {
        let tr = t.truncate(copies).homology();
        for d in 0..(t.anchor() + (copies as i32 - 1) * t.stride() as i32) {
            assert_eq!(tr.get(d), tb.get(d));
        }
    }
}

#[test]
fn chains_oracle_agrees_with_poset_enumeration() {
    let p = Poset::from_strs("V", &["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
    let mut mine = chains(3, |x, y| p.leq(x, y));
    mine.sort();
    let mut theirs = p.chains();
    theirs.sort();
    assert_eq!(mine, theirs);
}
