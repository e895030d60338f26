use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

use wreathkit::constructions::{
    one_point_suspension, reduced_join, verify_reduced_join_commutes, wreath_by_reduced_joins, wreath_f_vector_formula,
    wreath_facet_count, wreath_product,
};
use wreathkit::decompose::{
    find_morse_matching, find_shelling, lift_morse_matching, lift_shelling, project_shelling, verify_morse_matching,
    verify_shelling,
};
use wreathkit::io::{parse_facets, write_facets, NonMaximalPolicy};
use wreathkit::iso::is_isomorphic;
use wreathkit::symmetry::automorphism_group;
use wreathkit::topology::{is_pseudomanifold, neighborliness, reduced_homology, Pseudomanifold};
use wreathkit::{Certificate, FVector, Simplex, SimplicialComplex, VertexLabel};

fn build(sets: Vec<Vec<usize>>) -> SimplicialComplex {
    let faces = sets
        .into_iter()
        .map(|s| Simplex::new(s.into_iter().map(|i| VertexLabel::new((i + 1).to_string()).unwrap()).collect()).unwrap())
        .collect();
    SimplicialComplex::from_simplices_pruned(faces)
}

/// Complexes on at most `n` vertices generated by up to `m` random faces.
fn complexes(n: usize, m: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(4)), 1..=m)
        .prop_map(|faces| build(faces.into_iter().map(|s| s.into_iter().collect()).collect()))
}

/// Pure complexes: random `(k+1)`-subsets of `n` vertices.
fn pure_complexes(n: usize, m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=3usize).prop_flat_map(move |size| {
        prop::collection::vec(prop::collection::btree_set(0..n, size), 1..=m)
            .prop_map(|faces| build(faces.into_iter().map(|s| s.into_iter().collect()).collect()))
    })
}

fn with_f_minus_one(f: &FVector) -> Vec<BigUint> {
    std::iter::once(BigUint::one()).chain(f.counts().iter().cloned()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn join_f_vector_is_a_convolution(a in complexes(4, 3), b in complexes(4, 3)) {
        let (fa, fb) = (with_f_minus_one(&a.f_vector()), with_f_minus_one(&b.f_vector()));
        let mut want = vec![BigUint::zero(); fa.len() + fb.len() - 1];
        for (i, x) in fa.iter().enumerate() {
            for (j, y) in fb.iter().enumerate() {
                want[i + j] += x * y;
            }
        }
        let got = with_f_minus_one(&a.join(&b).f_vector());
        prop_assert_eq!(got, want);
    }

    #[test]
    fn wreath_f_vector_formula_matches(k in complexes(5, 4), d in 1..=2usize) {
        let formula = wreath_f_vector_formula(d, &k.f_vector(), k.num_vertices()).unwrap();
        let w = wreath_product(d, &k);
        prop_assert_eq!(formula, w.f_vector());
        prop_assert_eq!(wreath_facet_count(d, &k), BigUint::from(w.num_facets()));
    }

    #[test]
    fn suspension_shifts_homology(k in complexes(6, 5)) {
        let h = reduced_homology(&k);
        for v in k.vertices() {
            let s = one_point_suspension(&k, v).unwrap();
            prop_assert_eq!(reduced_homology(&s), h.shifted(1));
            prop_assert_eq!(s.reduced_euler_characteristic(), -k.reduced_euler_characteristic());
            prop_assert_eq!(s.num_vertices(), k.num_vertices() + 1);
        }
    }

    #[test]
    fn wreath_homology_is_shifted(k in complexes(4, 3), d in 1..=2usize) {
        let w = wreath_product(d, &k);
        let shift = (k.num_vertices() * d) as isize;
        prop_assert_eq!(reduced_homology(&w), reduced_homology(&k).shifted(shift));
    }

    #[test]
    fn neighborliness_transfers(k in pure_complexes(5, 5), d in 1..=2usize) {
        prop_assume!(!k.is_simplex());
        let (nk, nw) = (neighborliness(&k), neighborliness(&wreath_product(d, &k)));
        prop_assert_eq!(nw, nk * (d + 1) + d);
    }

    #[test]
    fn reduced_joins_commute(k in complexes(5, 4), d1 in 1..=2usize, d2 in 1..=2usize, a in 0..5usize, b in 0..5usize) {
        let n = k.num_vertices();
        prop_assume!(n >= 2 && a % n != b % n);
        let (v1, v2) = (k.vertices()[a % n].clone(), k.vertices()[b % n].clone());
        prop_assert!(verify_reduced_join_commutes(&k, &v1, &v2, d1, d2).unwrap());
    }

    #[test]
    fn wreath_is_iterated_reduced_join(k in complexes(4, 3), d in 1..=2usize) {
        let mut order = k.vertices().to_vec();
        order.reverse();
        let by_joins = wreath_by_reduced_joins(d, &k, &order).unwrap();
        prop_assert!(is_isomorphic(&by_joins, &wreath_product(d, &k)));
    }

    #[test]
    fn reduced_join_f_vector_grows_by_d_vertices(k in complexes(5, 4), d in 1..=3usize) {
        let v = k.vertices()[0].clone();
        let j = reduced_join(d, &k, &v).unwrap();
        prop_assert_eq!(j.num_vertices(), k.num_vertices() + d);
        prop_assert_eq!(j.dimension(), k.dimension() + d as isize);
    }

    #[test]
    fn facet_files_round_trip(k in complexes(7, 6)) {
        let text = write_facets(&k);
        let back = parse_facets(&text, NonMaximalPolicy::Reject).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(write_facets(&back), text);
    }

    #[test]
    fn pseudomanifolds_are_preserved(k in pure_complexes(5, 6), d in 1..=2usize) {
        let pk = is_pseudomanifold(&k).unwrap();
        let pw = is_pseudomanifold(&wreath_product(d, &k)).unwrap();
        prop_assert_eq!(pk == Pseudomanifold::Closed, pw == Pseudomanifold::Closed);
    }

    #[test]
    fn shellings_lift_and_project(k in pure_complexes(5, 5)) {
        if let Certificate::Shelling(order) = find_shelling(&k, 100_000).unwrap().certificate {
            for v in k.vertices() {
                let s = one_point_suspension(&k, v).unwrap();
                let up = lift_shelling(&k, &order, v).unwrap();
                prop_assert!(verify_shelling(&s, &up));
                prop_assert!(verify_shelling(&k, &project_shelling(&k, v, &up).unwrap()));
            }
        }
    }

    #[test]
    fn morse_matchings_lift(k in complexes(5, 4)) {
        if let Certificate::Matching(m) = find_morse_matching(&k, 100_000).certificate {
            prop_assert!(verify_morse_matching(&k, &m));
            for v in k.vertices() {
                let s = one_point_suspension(&k, v).unwrap();
                prop_assert!(verify_morse_matching(&s, &lift_morse_matching(&k, &m, v).unwrap()));
            }
        }
    }

    #[test]
    fn automorphism_order_ignores_labels(k in complexes(6, 4)) {
        let renamed = k.relabel(|l| l.suffixed("x")).unwrap();
        let (a, b) = (automorphism_group(&k, 1_000_000), automorphism_group(&renamed, 1_000_000));
        prop_assert!(a.complete && b.complete);
        prop_assert_eq!(a.order, b.order);
    }
}
