use fuseries_core::exactnum::rat;
use fuseries_core::polyring::poly;
use fuseries_core::tutte::tau_closed_form;
use fuseries_core::verifier::{
    expected_hilbert, f_table, hilbert_check, iso_check, reports_json, run_suite, verify_closure, verify_flat,
    verify_vanishing, with_jobs, Params, Suite,
};
use fuseries_core::{Mono, Poly, Var};

fn truncate(p: &Poly, d: u32, l: u32) -> Poly {
    Poly::from_terms(
        p.terms()
            .filter(|(m, _)| m.exp(Var::T) + 2 * m.exp(Var::S) <= d && m.exp(Var::L) <= l)
            .map(|(m, c)| (*m, c.clone())),
    )
}

/// `log(1 + X)` by the Mercator series over plain polynomials, with
/// `X = t + s·Σ(-λs)^m + τ` and `τ` from its closed-form coefficients.
fn mercator_oracle(d: u32, l: u32) -> Poly {
    let s = Poly::var(Var::S);
    let ls = &Poly::var(Var::L) * &s;
    let geometric = (0..=l).fold(Poly::zero(), |acc, m| &acc + &(-&ls).pow(m));
    let tau = tau_closed_form(l);
    let tau_poly = Poly::from_terms((1..=l).map(|c| (Mono::var(Var::L, c), tau.coeff(0, 0, c))));
    let x = &(&Poly::var(Var::T) + &truncate(&(&s * &geometric), d, l)) + &tau_poly;
    let mut power = Poly::one();
    let mut out = Poly::zero();
    for j in 1..=d + l {
        power = truncate(&(&power * &x), d, l);
        let sign = if j % 2 == 1 { 1 } else { -1 };
        out = &out + &power.scale(&(rat(sign) / rat(j as i64)));
    }
    out
}

#[test]
fn f_table_matches_mercator_expansion() {
    let (k_max, i_max) = (6u32, 3u32);
    let table = f_table(k_max, i_max).unwrap();
    let full = mercator_oracle(k_max + 2 * i_max, i_max);
    for i in 0..=i_max {
        for k in -2 * i_max as i64..=k_max as i64 {
            let w = k + 2 * i as i64;
            let expected = Poly::from_terms(
                full.terms()
                    .filter(|(m, _)| m.exp(Var::L) == i && (m.exp(Var::T) + 2 * m.exp(Var::S)) as i64 == w)
                    .map(|(m, c)| (m.with_exp(Var::L, 0), c.clone())),
            );
            assert_eq!(table.get(k, i), expected, "f_{{{k},{i}}}");
        }
    }
    assert!(table.degree_report().passed());
}

#[test]
fn low_components_by_hand() {
    let table = f_table(4, 1).unwrap();
    assert_eq!(table.get(1, 0), poly("t"));
    assert_eq!(table.get(2, 0), poly("s - 1/2*t^2"));
    assert_eq!(table.get(-2, 1), poly("1"));
    assert_eq!(table.get(-1, 1), poly("-t"));
    assert_eq!(table.get(0, 1), poly("t^2 - s"));
}

#[test]
fn relations_vanish_through_eight() {
    let (n_max, i_max) = (8, 6);
    let table = f_table(n_max + 2, i_max).unwrap();
    let counts: Vec<u64> = (0..=n_max)
        .map(|n| {
            let r = verify_vanishing(&table, n, i_max).unwrap();
            assert!(r.passed(), "{}", r.summary_line());
            r.n_cases
        })
        .collect();
    assert_eq!(counts, [0, 1, 2, 4, 6, 9, 12, 16, 20]);
    for n in 0..=n_max {
        let r = verify_flat(n).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
    }
}

#[test]
fn higher_relations_vanish_too() {
    let table = f_table(9, 4).unwrap();
    for n in 0..=5 {
        let r = verify_closure(&table, n, 4).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
    }
    assert!(verify_closure(&table, 6, 4).is_err());
}

#[test]
fn hilbert_series_through_five() {
    for n in 0..=5 {
        let r = hilbert_check(n, 2 * n + 4).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
    }
    assert_eq!(expected_hilbert(3, 10), [1, 1, 2, 2, 2, 1, 1, 0, 0, 0, 0]);
}

#[test]
fn substitution_maps_invert() {
    let r = iso_check(10, 8).unwrap();
    assert!(r.passed(), "{}", r.summary_line());
    assert_eq!(r.n_cases, 4);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let p = Params { n_max: Some(6), i_max: Some(4), m_max: Some(3), ..Params::default() };
    let run = |jobs| {
        let mut all = Vec::new();
        for suite in [Suite::Conjecture, Suite::Hm, Suite::Hilbert] {
            all.extend(with_jobs(jobs, || run_suite(suite, &p)).unwrap().unwrap().reports);
        }
        reports_json(&all)
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert!(!one.contains("\"millis\":0"));
}
