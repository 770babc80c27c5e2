use fuseries_core::exactnum::rat;
use fuseries_core::polyring::{div_exact, gcd_cofactors, poly, poly_gcd, poly_gcd_prs, primitive_part};
use fuseries_core::{Mono, Poly, RatFun, Var};
use proptest::prelude::*;

fn poly_in(vars: &'static [Var], max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, vars.len()), -6i64..7), 1..=max_terms).prop_map(
        move |terms| {
            Poly::from_terms(terms.into_iter().map(|(es, c)| {
                let pairs: Vec<(Var, u32)> = vars.iter().copied().zip(es).collect();
                (Mono::from_pairs(&pairs), rat(c))
            }))
        },
    )
}

const SLF: &[Var] = &[Var::S, Var::L, Var::F];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modular_gcd_matches_prs(a in poly_in(SLF, 2, 4), b in poly_in(SLF, 2, 4), g in poly_in(SLF, 2, 3)) {
        prop_assume!(!g.is_zero());
        let (x, y) = (&a * &g, &b * &g);
        prop_assume!(!x.is_zero() || !y.is_zero());
        prop_assert_eq!(poly_gcd(&x, &y), poly_gcd_prs(&x, &y));
    }

    #[test]
    fn cofactors_are_exact(a in poly_in(SLF, 3, 5), b in poly_in(SLF, 3, 5), g in poly_in(SLF, 2, 3)) {
        prop_assume!(!g.is_zero());
        let (x, y) = (&a * &g, &b * &g);
        let (h, cx, cy) = gcd_cofactors(&x, &y);
        prop_assert_eq!(&h * &cx, x);
        prop_assert_eq!(&h * &cy, y);
        prop_assert!(div_exact(&h, &primitive_part(&g)).is_some());
    }

    #[test]
    fn exact_division_round_trips(a in poly_in(SLF, 3, 6), b in poly_in(SLF, 2, 4)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(div_exact(&(&a * &b), &b), Some(a));
    }

    #[test]
    fn ratfun_form_is_canonical(a in poly_in(SLF, 2, 3), b in poly_in(SLF, 2, 3), c in poly_in(SLF, 2, 3)) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let plain = &RatFun::from_poly(a.clone()) / &RatFun::from_poly(b.clone());
        let padded = &RatFun::from_poly(&a * &c) / &RatFun::from_poly(&b * &c);
        prop_assert_eq!(plain, padded);
    }
}

#[test]
fn gcd_of_tower_sized_inputs() {
    let g = poly("(256*l - 27)*(s*l + s + 1)^2");
    let a = &g * &poly("(3*s + 1)^3*l^4 - 7*s*f + 2");
    let b = &g * &poly("(s - 1)^2*l^5 + f^2*s - l");
    assert_eq!(poly_gcd(&a, &b), primitive_part(&g));
    assert_eq!(poly_gcd(&a, &b), poly_gcd_prs(&a, &b));
}

#[test]
fn rational_coefficients_are_normalized() {
    let a = poly("1/3*s^2 - 1/3");
    let b = poly("5/2*s + 5/2");
    assert_eq!(poly_gcd(&a, &b), poly("s + 1"));
    let (_, ca, cb) = gcd_cofactors(&a, &b);
    assert_eq!(ca, poly("1/3*s - 1/3"));
    assert_eq!(cb, poly("5/2"));
}
