mod common;

use common::{point, setting};
use monogenic::extremal::{alpha0, closed_form_m, lambda_star, normalizer, piece_ratio};
use monogenic::gegenbauer::{closed_form_norm_ratio, gegenbauer, weighted_integral, UnivariatePoly};
use monogenic::rational::{int, rat, Rational};
use monogenic::subharmonic::{random_monogenic, sharpness_witness, GradientField};
use monogenic::Setting;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Three-dimensional-imaginary form `(2k+s+2)(k+s+2)s/(k+s+1)`.
fn quaternion_piece_form(s: i64, k: i64) -> Rational {
    rat((2 * k + s + 2) * (k + s + 2) * s, k + s + 1)
}

#[test]
fn constants_agree_with_setting_specific_forms() {
    for m in 0..=10i64 {
        let mu = m as usize;
        assert_eq!(closed_form_m(Setting::Quaternion, mu), rat(m + 3, 2 * (m + 2)));
        assert_eq!(closed_form_m(Setting::Octonion, mu), rat(m + 7, 2 * (m + 4)));
        assert_eq!(alpha0(Setting::Quaternion, mu), rat(2, m + 3));
        assert_eq!(alpha0(Setting::Octonion, mu), rat(6, 7 + m));
        for s in [Setting::Quaternion, Setting::Octonion, Setting::Clifford(3), Setting::Clifford(7)] {
            assert_eq!(alpha0(s, mu), int(2) - int(1) / closed_form_m(s, mu));
        }
    }
}

#[test]
fn quaternion_piece_ratio_forms_agree() {
    for m in 0..=6i64 {
        for s in 0..=m + 1 {
            let k = m + 1 - s;
            assert_eq!(piece_ratio(s as usize, k as usize, Setting::Quaternion), quaternion_piece_form(s, k));
        }
        let best = (0..=m + 1).map(|s| quaternion_piece_form(s, m + 1 - s)).max().unwrap();
        assert_eq!(best / int(2 * (m + 1) * (m + 3)), closed_form_m(Setting::Quaternion, m as usize));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn piece_ratios_increase_to_the_maximum((s, m) in (setting(), 0usize..=8)) {
        let ratios: Vec<Rational> = (0..=m + 1).map(|p| piece_ratio(p, m + 1 - p, s)).collect();
        prop_assert!(ratios.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(ratios[m + 1].clone() / normalizer(s, m), closed_form_m(s, m));
        prop_assert_eq!(ratios[m + 1].clone(), lambda_star(s, m));
    }

    #[test]
    fn gegenbauer_derivative_identity(s in 1usize..=8, mu in prop::sample::select(vec![rat(1, 1), rat(3, 2), rat(2, 1), rat(4, 1)])) {
        let c = gegenbauer(s, &mu);
        let one_minus_t2 = UnivariatePoly::new(vec![int(1), int(0), int(-1)]);
        let lhs = one_minus_t2.mul(&c.derivative()).add(&UnivariatePoly::t().mul(&c).scale(&int(s as i64)));
        let rhs = gegenbauer(s - 1, &mu).scale(&(int(s as i64) + &mu * int(2) - int(1)));
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn gegenbauer_norm_ratios(nu in 0usize..=5, nu2 in 0usize..=5, two_mu in prop::sample::select(vec![2i64, 3, 4, 5, 8])) {
        let mu = rat(two_mu, 2);
        let norm = |n: usize| {
            let c = gegenbauer(n, &mu);
            weighted_integral(&c.mul(&c), &mu)
        };
        prop_assert_eq!(norm(nu) / norm(nu2), closed_form_norm_ratio(nu, nu2, &mu));
    }
}

fn low_setting() -> impl Strategy<Value = Setting> {
    prop_oneof![Just(Setting::Quaternion), Just(Setting::Clifford(3)), Just(Setting::Clifford(4)), Just(Setting::Octonion)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rayleigh_bound_and_sign_consistency(
        (s, m, seed, x, alpha_num) in low_setting()
            .prop_flat_map(|s| (Just(s), 0usize..=1, any::<u64>(), point(s.nvars()), 1i64..=39))
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_monogenic(s, &[m, m + 1, m + 2], &mut rng).unwrap();
        let field = GradientField::new(&f, m).unwrap();
        let v = field.values(&x).unwrap();
        if let Some(r) = field.rayleigh(&x).unwrap() {
            prop_assert!(r <= closed_form_m(s, m), "R = {} exceeds M", r);
        }
        // affine increasing in α, and the sign matches R ≤ 1/(2−α) where uΔu > 0
        let alpha = rat(alpha_num, 20);
        let lower = field.sign_value(&alpha, &x).unwrap();
        let upper = field.sign_value(&(&alpha + rat(1, 20)), &x).unwrap();
        prop_assert!(lower <= upper);
        if v.u.is_positive() && v.laplacian.is_positive() {
            let r = field.rayleigh(&x).unwrap().unwrap();
            prop_assert_eq!(!lower.is_negative(), r <= int(1) / (int(2) - &alpha));
        }
    }

    #[test]
    fn witness_fails_below_threshold((s, m, delta) in (low_setting(), 0usize..=1, 1i64..=50)) {
        let (f, x) = sharpness_witness(s, m).unwrap();
        let field = GradientField::new(&f, m).unwrap();
        let a0 = alpha0(s, m);
        prop_assert!(field.sign_value(&a0, &x).unwrap().is_zero());
        let below = &a0 - rat(delta, 100) * &a0;
        prop_assert!(field.sign_value(&below, &x).unwrap().is_negative());
    }
}
