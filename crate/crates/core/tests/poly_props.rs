mod common;

use common::{homogeneous, point, polynomial, setting};
use monogenic::algebra::{AlgebraElement, AlgebraKind};
use monogenic::poly::{format_poly, gradient_norm_sq, parse_poly, HPolynomial, OperatorSpec};
use monogenic::spaces::{ck_extend, is_monogenic};
use monogenic::Setting;
use num_traits::Signed;
use proptest::prelude::*;

fn weyl(setting: Setting) -> (OperatorSpec, OperatorSpec) {
    let pairs = setting.vector_pairs();
    (OperatorSpec::Weyl { real: 0, pairs: pairs.clone() }, OperatorSpec::WeylConjugate { real: 0, pairs })
}

fn weyl_setting() -> impl Strategy<Value = Setting> {
    prop_oneof![Just(Setting::Quaternion), Just(Setting::Octonion)]
}

fn any_poly(s: Setting) -> impl Strategy<Value = HPolynomial> {
    polynomial(s.kind(), s.nvars(), (0..s.nvars()).collect(), 3, 5)
}

/// Monogenic polynomial: extension of a random hyperplane polynomial.
fn monogenic_poly(s: Setting, k: usize) -> impl Strategy<Value = HPolynomial> {
    homogeneous(s.kind(), s.nvars(), s.hyperplane_vars(), k, 4).prop_map(move |p| ck_extend(&p, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weyl_factors_laplacian((s, p) in weyl_setting().prop_flat_map(|s| (Just(s), any_poly(s)))) {
        let (w, wc) = weyl(s);
        let lap = p.differentiate(&OperatorSpec::laplacian_all(s.nvars())).unwrap();
        prop_assert_eq!(p.differentiate(&wc).unwrap().differentiate(&w).unwrap(), lap.clone());
        prop_assert_eq!(p.differentiate(&w).unwrap().differentiate(&wc).unwrap(), lap);
    }

    #[test]
    fn dirac_squares_to_minus_laplacian((s, p) in setting().prop_flat_map(|s| (Just(s), any_poly(s)))) {
        let d = s.hyperplane_operator();
        let lap = p.differentiate(&OperatorSpec::Laplacian(s.hyperplane_vars())).unwrap();
        prop_assert_eq!(p.differentiate(&d).unwrap().differentiate(&d).unwrap(), -&lap);
    }

    #[test]
    fn partials_commute((_, p, i, j) in setting().prop_flat_map(|s| (Just(s), any_poly(s), 0..s.nvars(), 0..s.nvars()))) {
        let ij = p.partial(i).unwrap().partial(j).unwrap();
        prop_assert_eq!(ij, p.partial(j).unwrap().partial(i).unwrap());
    }

    #[test]
    fn derivatives_of_monogenic_stay_monogenic(
        (s, f, beta) in setting().prop_flat_map(|s| (Just(s), monogenic_poly(s, 3), prop::collection::vec(0..s.nvars(), 0..=2)))
    ) {
        let op = s.ambient_operator();
        prop_assert!(is_monogenic(&f, &op).unwrap());
        let mut g = f.clone();
        for v in beta {
            g = g.partial(v).unwrap();
        }
        prop_assert!(is_monogenic(&g, &op).unwrap());
    }

    #[test]
    fn monogenic_components_are_harmonic((s, f) in setting().prop_flat_map(|s| (Just(s), monogenic_poly(s, 3)))) {
        prop_assert!(f.differentiate(&OperatorSpec::laplacian_all(s.nvars())).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip((s, p) in setting().prop_flat_map(|s| (Just(s), any_poly(s)))) {
        let text = format_poly(&p);
        prop_assert_eq!(parse_poly(&text, s.kind(), s.nvars()).unwrap(), p);
    }

    #[test]
    fn gradient_norm_is_nonnegative(
        (_, f, x, m) in setting().prop_flat_map(|s| (Just(s), any_poly(s), point(s.nvars()), 0usize..=2))
    ) {
        let u = gradient_norm_sq(&f, m);
        prop_assert!(u.is_scalar_valued());
        prop_assert!(!u.evaluate_scalar(&x).unwrap().is_negative());
    }

    #[test]
    fn product_rule(
        (p, q, v) in (polynomial(AlgebraKind::Quaternion, 4, vec![0, 1, 2, 3], 2, 3),
                      polynomial(AlgebraKind::Quaternion, 4, vec![0, 1, 2, 3], 2, 3), 0usize..4)
    ) {
        let lhs = p.mul(&q).unwrap().partial(v).unwrap();
        let rhs = &p.partial(v).unwrap().mul(&q).unwrap() + &p.mul(&q.partial(v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(
        (p, q, x) in (polynomial(AlgebraKind::Clifford(3), 3, vec![0, 1, 2], 2, 3),
                      polynomial(AlgebraKind::Clifford(3), 3, vec![0, 1, 2], 2, 3), point(3))
    ) {
        let pq = p.mul(&q).unwrap().evaluate(&x).unwrap();
        let product: AlgebraElement = &p.evaluate(&x).unwrap() * &q.evaluate(&x).unwrap();
        prop_assert_eq!(pq, product);
    }
}
