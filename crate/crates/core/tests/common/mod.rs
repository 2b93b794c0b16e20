//! Shared proptest strategies.
#![allow(dead_code)]

use monogenic::algebra::{AlgebraElement, AlgebraKind, Blade};
use monogenic::poly::{Exponent, HPolynomial};
use monogenic::rational::{rat, Rational};
use monogenic::Setting;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

pub fn element(kind: AlgebraKind) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(rational(), kind.dim())
        .prop_map(move |c| AlgebraElement::from_coeffs(kind, kind.blades().zip(c)))
}

pub fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![
        Just(AlgebraKind::Quaternion),
        Just(AlgebraKind::Octonion),
        (1u8..=5).prop_map(AlgebraKind::Clifford),
    ]
}

pub fn setting() -> impl Strategy<Value = Setting> {
    prop_oneof![
        Just(Setting::Quaternion),
        Just(Setting::Octonion),
        (3usize..=5).prop_map(Setting::Clifford),
    ]
}

/// Polynomial with up to `terms` monomials of degree at most `max_power`
/// per variable, restricted to `vars`.
pub fn polynomial(
    kind: AlgebraKind,
    nvars: usize,
    vars: Vec<usize>,
    max_power: u8,
    terms: usize,
) -> impl Strategy<Value = HPolynomial> {
    let term = (
        prop::collection::vec(0..=max_power, vars.len()),
        0..kind.dim() as u16,
        rational(),
    );
    prop::collection::vec(term, 1..=terms).prop_map(move |ts| {
        let mut p = HPolynomial::zero(kind, nvars);
        for (powers, blade, c) in ts {
            let mut full = vec![0u8; nvars];
            for (v, e) in vars.iter().zip(powers) {
                full[*v] = e;
            }
            let mono = HPolynomial::monomial(Exponent::from_slice(&full), AlgebraElement::term(kind, Blade(blade), c));
            p = &p + &mono;
        }
        p
    })
}

/// Homogeneous polynomial of degree `k` on `vars`.
pub fn homogeneous(kind: AlgebraKind, nvars: usize, vars: Vec<usize>, k: usize, terms: usize) -> impl Strategy<Value = HPolynomial> {
    let nv = vars.len();
    let term = (prop::collection::vec(0..nv, k), 0..kind.dim() as u16, rational());
    prop::collection::vec(term, 1..=terms).prop_map(move |ts| {
        let mut p = HPolynomial::zero(kind, nvars);
        for (picks, blade, c) in ts {
            let mut full = vec![0u8; nvars];
            for i in picks {
                full[vars[i]] += 1;
            }
            let mono = HPolynomial::monomial(Exponent::from_slice(&full), AlgebraElement::term(kind, Blade(blade), c));
            p = &p + &mono;
        }
        p
    })
}

pub fn point(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-8i64..=8, 1i64..=8).prop_map(|(p, q)| rat(p, q)), d)
}
