mod common;

use common::{brute_outside, hull_multiplicity_2d, primary_ideal};
use lech_core::multiplicity::{covolume_2d_doubled, hs_multiplicity, hs_multiplicity_with, newton_multiplicity, FitConfig};
use lech_core::parse::{default_names, parse_ideal};
use lech_core::{MonomialIdeal, RingSpec};
use proptest::prelude::*;

fn contained(i: &MonomialIdeal, j: &MonomialIdeal) -> bool {
    i.gens().iter().all(|g| j.contains(g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_round_trips(i in primary_ideal(3, 5)) {
        let names = default_names(3);
        let text = i.format_with(&names);
        prop_assert_eq!(parse_ideal(&text, &names).unwrap(), i);
    }

    #[test]
    fn colength_counts_outside_points(i in primary_ideal(3, 5)) {
        prop_assert_eq!(i.colength().unwrap(), brute_outside(&i).len() as u64);
    }

    #[test]
    fn colength_reverses_inclusion(i in primary_ideal(2, 6), j in primary_ideal(2, 6)) {
        let s = i.sum(&j).unwrap();
        let p = i.product(&j).unwrap();
        prop_assert!(s.colength().unwrap() <= i.colength().unwrap().min(j.colength().unwrap()));
        prop_assert!(p.colength().unwrap() >= i.colength().unwrap().max(j.colength().unwrap()));
        prop_assert!(contained(&p, &i) && contained(&i, &s));
    }

    #[test]
    fn closure_is_idempotent_and_matches_lp(i in primary_ideal(3, 4)) {
        let c = i.integral_closure().unwrap();
        prop_assert!(contained(&i, &c));
        prop_assert_eq!(c.integral_closure().unwrap(), c.clone());
        prop_assert_eq!(i.closure_by_lp().unwrap(), c);
    }

    #[test]
    fn closure_keeps_multiplicity(i in primary_ideal(2, 7)) {
        let c = i.integral_closure().unwrap();
        let spec = RingSpec::poly(2);
        let e = hs_multiplicity(&i, &spec).unwrap().multiplicity;
        prop_assert_eq!(e, hs_multiplicity(&c, &spec).unwrap().multiplicity);
        prop_assert!(c.colength().unwrap() <= i.colength().unwrap());
    }

    #[test]
    fn two_variable_multiplicity_is_hull_area(i in primary_ideal(2, 8)) {
        let want = hull_multiplicity_2d(&i);
        prop_assert_eq!(covolume_2d_doubled(&i).unwrap(), want);
        prop_assert_eq!(hs_multiplicity(&i, &RingSpec::poly(2)).unwrap().multiplicity, want);
    }

    #[test]
    fn newton_multiplicity_is_hull_area(i in primary_ideal(2, 8)) {
        prop_assert_eq!(newton_multiplicity(&i).unwrap(), hull_multiplicity_2d(&i));
    }

    #[test]
    fn newton_multiplicity_matches_long_window(i in primary_ideal(3, 3)) {
        let wide = FitConfig { window: 8, max_power: 40 };
        let fitted = hs_multiplicity_with(&i, &RingSpec::poly(3), wide).unwrap().multiplicity;
        prop_assert_eq!(newton_multiplicity(&i).unwrap(), fitted);
    }

    #[test]
    fn integer_rational_powers_are_closed_powers(i in primary_ideal(2, 5), b in 1u64..4) {
        let direct = i.power(b as u32).integral_closure().unwrap();
        prop_assert_eq!(i.rational_power(b, 1).unwrap(), direct.clone());
        prop_assert_eq!(i.rational_power(2 * b, 2).unwrap(), direct);
    }

    #[test]
    fn rational_powers_descend(i in primary_ideal(2, 5), b in 0u64..6, a in 1u64..4) {
        let lo = i.rational_power(b, a).unwrap();
        let hi = i.rational_power(b + 1, a).unwrap();
        prop_assert!(contained(&hi, &lo));
    }
}

#[test]
fn three_variable_multiplicities() {
    let spec = RingSpec::poly(3);
    for n in 1..=4 {
        let e = hs_multiplicity(&MonomialIdeal::maximal(3).power(n), &spec).unwrap().multiplicity;
        assert_eq!(e, (n * n * n) as u64);
    }
    let p = MonomialIdeal::parameter(&[2, 3, 4]);
    assert_eq!(hs_multiplicity(&p, &spec).unwrap().multiplicity, 24);
}

#[test]
fn slow_stabilizing_ideal() {
    // The second differences of l(R/I^n) read 35 for three steps before 36.
    let i = parse_ideal("x^6, x^4*y^3, x*y^5, y^6", &default_names(2)).unwrap();
    assert_eq!(hull_multiplicity_2d(&i), 36);
    assert_eq!(newton_multiplicity(&i).unwrap(), 36);
    assert_eq!(hs_multiplicity(&i, &RingSpec::poly(2)).unwrap().multiplicity, 36);
}

#[test]
fn printing_conventions() {
    let names = default_names(2);
    assert_eq!(MonomialIdeal::unit(2).format_with(&names), "1");
    assert_eq!(MonomialIdeal::zero(2).format_with(&names), "0");
    let i = parse_ideal("y^3, x*y, x^2, x^3*y", &names).unwrap();
    assert_eq!(i.format_with(&names), "x^2, x*y, y^3");
    assert_eq!(parse_ideal("x0^2, x1", &names).unwrap(), parse_ideal("x^2, y", &names).unwrap());
}
