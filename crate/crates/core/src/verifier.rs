//! Top-level checks: template vanishing of the relations `f_{n+1}^λ`,
//! `f_{n+2}^λ`, the Hilbert series of the flat quotient, the substitution
//! maps between the deformed and flat algebras, and the suites that bundle
//! every check into deterministic report lists.
//!
//! The isomorphism statement is checked through two finite shadows: every
//! degree-matched template integrates the relations to zero, and at `λ = 0`
//! the quotient has the Hilbert series of a regular sequence.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{domain, Error, Result};
use crate::exactnum::Rat;
use crate::holonomic::{self, BSeq, DependencyVector};
use crate::polyring::{poly, rank, Matrix, Mono, Poly, Var};
use crate::report::Report;
use crate::series::Series;
use crate::template::{self, template_value};
use crate::tutte::{self, tau_from_phi};

/// The components `f_{k,i}(t, s)` of `log(1 + t + s/(1+λs) + τ(λ))`,
/// where `f_{k,i}` has weighted degree `k + 2i` and multiplies `λ^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FTable {
    pub k_max: i64,
    pub i_max: u32,
    pub entries: BTreeMap<(i64, u32), Poly>,
}

impl FTable {
    pub fn get(&self, k: i64, i: u32) -> Poly {
        self.entries.get(&(k, i)).cloned().unwrap_or_else(Poly::zero)
    }

    /// Every stored `f_{k,i}` is homogeneous of weighted degree `k + 2i`.
    pub fn degree_report(&self) -> Report {
        let mut r = Report::new("ftable_degrees").param("k_max", self.k_max).param("i_max", self.i_max);
        for (&(k, i), p) in &self.entries {
            let bad = p.terms().find(|(m, _)| (m.exp(Var::T) + 2 * m.exp(Var::S)) as i64 != k + 2 * i as i64);
            r.case(bad.is_none(), || json!({ "k": k, "i": i, "f": p.to_string() }));
        }
        r
    }
}

/// Expand at caps `D = K + 2I`, `L = I` and regroup `t^a s^b λ^c` into
/// `(k, i) = (a + 2b - 2c, c)`.
pub fn f_table(k_max: u32, i_max: u32) -> Result<FTable> {
    let d = k_max + 2 * i_max;
    let l = i_max;
    let t = Series::var(Var::T, d, l)?;
    let s = Series::var(Var::S, d, l)?;
    let ls = &Series::var(Var::L, d, l)? * &s;
    let one = Series::one(d, l);
    let tau = tau_from_phi(l).lift_d(d)?;
    let arg = &(&(&one + &t) + &(&s * &(&one + &ls).inverse()?)) + &tau;
    let lg = arg.log()?;
    if !lg.p.is_zero() {
        return Err(Error::Invariant("log argument has constant term 1".into()));
    }
    let mut entries: BTreeMap<(i64, u32), Poly> = BTreeMap::new();
    for ((a, b, c), v) in lg.q.terms() {
        let k = (a + 2 * b) as i64 - 2 * c as i64;
        if k > k_max as i64 {
            continue;
        }
        let mono = Mono::from_pairs(&[(Var::T, a), (Var::S, b)]);
        entries.entry((k, c)).or_insert_with(Poly::zero).add_term(mono, v.clone());
    }
    entries.retain(|_, p| !p.is_zero());
    Ok(FTable { k_max: k_max as i64, i_max, entries })
}

/// `∫_{C^n} t^m s^l p`.
fn integrate_shifted(p: &Poly, m: u32, l: u32, n: u32) -> Rat {
    p.terms().map(|(mono, c)| c * template_value(mono.exp(Var::T) + m, mono.exp(Var::S) + l, n)).sum()
}

/// Degree-matched template triples `(m, l, i)` with `m + 2l + k + 2i = 2n`.
fn template_triples(n: u32, k: i64, i_max: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in 0..=i_max {
        let rest = 2 * n as i64 - k - 2 * i as i64;
        if rest < 0 {
            break;
        }
        for l in 0..=rest / 2 {
            out.push(((rest - 2 * l) as u32, l as u32, i));
        }
    }
    out
}

fn vanishing_for(table: &FTable, name: &str, n: u32, ks: &[i64], i_max: u32) -> Result<Report> {
    let mut r = Report::new(name).param("n", n).param("i_max", i_max);
    for &k in ks {
        if k > table.k_max || i_max > table.i_max {
            return Err(Error::CapTooSmall(format!("f_{k} with i <= {i_max} is outside the table")));
        }
        for (m, l, i) in template_triples(n, k, i_max) {
            let v = integrate_shifted(&table.get(k, i), m, l, n);
            r.case(v.is_zero(), || json!({ "k": k, "m": m, "l": l, "i": i, "value": v.to_string() }));
        }
    }
    Ok(r)
}

/// `∫_{C^n} t^m s^l f_{k,i} = 0` for `k ∈ {n+1, n+2}` and every
/// degree-matched `(m, l, i)` with `i <= i_max`.
pub fn verify_vanishing(table: &FTable, n: u32, i_max: u32) -> Result<Report> {
    vanishing_for(table, "vanishing", n, &[n as i64 + 1, n as i64 + 2], i_max)
}

/// The `λ = 0` column, from an independent expansion of `log(1 + t + s)`.
pub fn verify_flat(n: u32) -> Result<Report> {
    let table = f_table(n + 2, 0)?;
    vanishing_for(&table, "flat", n, &[n as i64 + 1, n as i64 + 2], 0)
}

/// The relations `f_{n+j}` with `j = 3, 4` vanish on `C^n` as well.
pub fn verify_closure(table: &FTable, n: u32, i_max: u32) -> Result<Report> {
    vanishing_for(table, "closure", n, &[n as i64 + 3, n as i64 + 4], i_max)
}

/// Coefficients of `(1-q^{n+1})(1-q^{n+2}) / ((1-q)(1-q²))` up to `q^kmax`.
pub fn expected_hilbert(n: u32, k_max: u32) -> Vec<i64> {
    let len = k_max as usize + 1;
    let mut num = vec![0i64; len];
    num[0] = 1;
    for e in [n + 1, n + 2] {
        for k in (e as usize..len).rev() {
            num[k] -= num[k - e as usize];
        }
    }
    for e in [1usize, 2] {
        for k in e..len {
            num[k] += num[k - e];
        }
    }
    num
}

/// Dimensions of the degree-`k` pieces of `Q[t, s] / (f_{n+1,0}, f_{n+2,0})`
/// (weights `t:1, s:2`) by exact rank, against the regular-sequence
/// Hilbert series, plus palindromicity of the nonzero part.
pub fn hilbert_check(n: u32, k_max: u32) -> Result<Report> {
    if k_max > 2 * n + 4 {
        return Err(domain(format!("hilbert check supports k <= 2n + 4 = {}", 2 * n + 4)));
    }
    let mut r = Report::new("hilbert").param("n", n).param("k_max", k_max);
    let table = f_table(n + 2, 0)?;
    let gens = [table.get(n as i64 + 1, 0), table.get(n as i64 + 2, 0)];
    let expected = expected_hilbert(n, k_max);
    let mut dims = Vec::new();
    for k in 0..=k_max {
        let basis: Vec<Mono> = (0..=k / 2).map(|b| Mono::from_pairs(&[(Var::T, k - 2 * b), (Var::S, b)])).collect();
        let mut rows: Matrix<Rat> = Vec::new();
        for (g, deg) in gens.iter().zip([n + 1, n + 2]) {
            let Some(rest) = k.checked_sub(deg) else { continue };
            for b in 0..=rest / 2 {
                let mult = g.mul_mono(&Mono::from_pairs(&[(Var::T, rest - 2 * b), (Var::S, b)]));
                rows.push(basis.iter().map(|m| mult.coeff(m)).collect());
            }
        }
        let dim = basis.len() - if rows.is_empty() { 0 } else { rank(&rows) };
        dims.push(dim as i64);
        r.case(dim as i64 == expected[k as usize], || json!({ "k": k, "quotient_dim": dim, "expected": expected[k as usize] }));
    }
    let top = dims.iter().rposition(|&d| d != 0).unwrap_or(0);
    let palindromic = (0..=top).all(|k| dims[k] == dims[top - k]);
    r.case(palindromic && (k_max < 2 * n || top == 2 * n as usize), || json!({ "dims": dims }));
    Ok(r.param("dims", dims))
}

/// The substitution maps between the flat and deformed algebras at caps
/// `(D, L)`: `t ↦ t/sqrt(1-λs), s ↦ s/(1-λs)` followed by
/// `t ↦ t sqrt(1-λs)` is `t ↦ t, s ↦ s/(1-λs)`, and that map is inverted by
/// `s ↦ s/(1+λs)`.
pub fn iso_check(d: u32, l: u32) -> Result<Report> {
    let mut r = Report::new("iso").param("d_cap", d).param("lambda_cap", l);
    let t = Series::var(Var::T, d, l)?;
    let s = Series::var(Var::S, d, l)?;
    let ls = &Series::var(Var::L, d, l)? * &s;
    let one = Series::one(d, l);
    let minus = &one - &ls;
    let root = minus.sqrt()?;
    // first map on generators
    let a_t = &t * &root.inverse()?;
    let a_s = &s * &minus.inverse()?;
    // second map: t ↦ t·sqrt(1 - λs), s fixed
    let b_t = &t * &root;
    let comp_t = a_t.substitute(Var::T, &b_t)?;
    let comp_s = a_s.substitute(Var::T, &b_t)?;
    r.case(comp_t == t, || json!({ "generator": "t", "image": comp_t.to_string() }));
    r.case(comp_s == a_s, || json!({ "generator": "s", "image": comp_s.to_string() }));
    // inverse pair s ↦ s/(1-λs), s ↦ s/(1+λs)
    let back = &s * &(&one + &ls).inverse()?;
    let round = a_s.substitute(Var::S, &back)?;
    r.case(round == s, || json!({ "generator": "s", "round_trip": round.to_string() }));
    let round2 = back.substitute(Var::S, &a_s)?;
    r.case(round2 == s, || json!({ "generator": "s", "round_trip_reversed": round2.to_string() }));
    Ok(r)
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tutte,
    Template,
    Hm,
    Holonomic,
    Conjecture,
    Hilbert,
    Iso,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Tutte, Suite::Template, Suite::Hm, Suite::Holonomic, Suite::Conjecture, Suite::Hilbert, Suite::Iso];
}

/// Run parameters; `None` picks the suite's default.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n_max: Option<u32>,
    pub i_max: Option<u32>,
    pub m_max: Option<u32>,
    pub order: Option<u32>,
    pub s_cap: Option<u32>,
    pub lambda_cap: Option<u32>,
    pub max_i: Option<u32>,
    pub tamari_max: Option<usize>,
    pub tower: Option<usize>,
    pub b_orders: Option<usize>,
    pub timings: bool,
}

/// Named text artifacts (normalized `R`, `R̂`, `b_l`, `κ_m`) for pinning.
pub type Artifacts = BTreeMap<String, String>;

/// Reports in a fixed order plus the artifacts produced along the way.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub reports: Vec<Report>,
    pub artifacts: Artifacts,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }
}

fn timed(timings: bool, f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    let start = Instant::now();
    let mut r = f()?;
    if timings {
        r.millis = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

/// Run `f` on a pool with `jobs` threads; results do not depend on `jobs`.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| domain(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

pub fn run_suite(suite: Suite, p: &Params) -> Result<Outcome> {
    let mut out = Outcome::default();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        let part = match s {
            Suite::Tutte => tutte_suite(p)?,
            Suite::Template => template_suite(p)?,
            Suite::Hm => hm_suite(p)?,
            Suite::Holonomic => holonomic_suite(p)?,
            Suite::Conjecture => conjecture_suite(p)?,
            Suite::Hilbert => hilbert_suite(p)?,
            Suite::Iso => Outcome { reports: vec![timed(p.timings, || iso_check(10, 8))?], ..Outcome::default() },
            Suite::All => unreachable!("expanded above"),
        };
        out.reports.extend(part.reports);
        out.artifacts.extend(part.artifacts);
    }
    Ok(out)
}

fn tutte_suite(p: &Params) -> Result<Outcome> {
    let max_i = p.max_i.unwrap_or(40);
    let tamari = p.tamari_max.unwrap_or(tutte::TAMARI_MAX);
    let reports = vec![
        timed(p.timings, || tutte::verify_tutte(max_i, tamari))?,
        timed(p.timings, || Ok(tutte::verify_phi_lagrange(max_i)))?,
    ];
    Ok(Outcome { reports, ..Outcome::default() })
}

fn template_suite(p: &Params) -> Result<Outcome> {
    let m_max = p.m_max.unwrap_or(8);
    let order = p.order.unwrap_or(30);
    let odes: Vec<Report> =
        (0..=m_max.max(12)).into_par_iter().map(|m| timed(p.timings, || Ok(template::verify_q2_ode(m)))).collect::<Result<_>>()?;
    let ids: Vec<Report> = (0..=m_max)
        .into_par_iter()
        .map(|m| timed(p.timings, || template::verify_series_identity(m, order)))
        .collect::<Result<_>>()?;
    let mut artifacts = Artifacts::new();
    for m in 0..=m_max {
        artifacts.insert(format!("kappa_{m}"), template::kappa(m)?.to_string());
    }
    Ok(Outcome { reports: odes.into_iter().chain(ids).collect(), artifacts })
}

fn hm_suite(p: &Params) -> Result<Outcome> {
    let m_max = p.m_max.unwrap_or(6);
    let (s_cap, l) = (p.s_cap.unwrap_or(12), p.lambda_cap.unwrap_or(8));
    let reports = (0..=m_max)
        .into_par_iter()
        .map(|m| timed(p.timings, || template::verify_h_m(m, s_cap, l)))
        .collect::<Result<_>>()?;
    Ok(Outcome { reports, ..Outcome::default() })
}

fn dependency_text(dv: &DependencyVector) -> String {
    dv.indices().map(|i| format!("{i}: {}\n", dv.entry(i))).collect()
}

fn bseq_text(b: &BSeq) -> String {
    b.b.iter().enumerate().map(|(l, p)| format!("{l}: {p}\n")).collect()
}

fn holonomic_suite(p: &Params) -> Result<Outcome> {
    let height = p.tower.unwrap_or(5);
    let orders = p.b_orders.unwrap_or(12);
    let s_cap = p.s_cap.unwrap_or(14);
    if height < 5 {
        return Err(domain("the dependencies need the tower up to Q_5"));
    }
    let mut reports = Vec::new();
    let mut artifacts = Artifacts::new();

    reports.push(timed(p.timings, || {
        let mut r = Report::new("p0");
        let (got, want) = (holonomic::compute_p0()?, holonomic::p0_expected());
        r.case(got == want, || json!({ "computed": format!("{got:?}") }));
        Ok(r)
    })?);
    let start = Instant::now();
    let tower = holonomic::q_tower(height)?;
    let tower_ms = start.elapsed().as_millis() as u64;
    reports.push(timed(p.timings, || holonomic::verify_tower_series(&tower, 3, 6, 5))?);

    let deps = [holonomic::DependencyKind::R, holonomic::DependencyKind::RHat];
    let found: Vec<Result<DependencyVector>> =
        deps.par_iter().map(|&k| holonomic::find_dependency(&tower, k)).collect();
    let mut dvs = Vec::new();
    for (kind, dv) in deps.iter().zip(found) {
        let name = format!("dependency_{}", kind.name());
        match dv {
            Ok(dv) => {
                reports.push(timed(p.timings, || Ok(holonomic::verify_dependency(&tower, &dv)))?);
                artifacts.insert(name, dependency_text(&dv));
                dvs.push(dv);
            }
            Err(e) => {
                let mut r = Report::new(name);
                r.fail(json!({ "error": e.to_string() }));
                reports.push(r);
            }
        }
    }
    if p.timings {
        if let Some(r) = reports.get_mut(1) {
            r.millis = r.millis.map(|m| m + tower_ms);
        }
    }

    let (direct, direct_report) = holonomic::b_direct(s_cap, orders as u32)?;
    reports.push(direct_report);
    let mut agree = Report::new("b_agreement").param("b_orders", orders as u64);
    agree.case(direct.b.first().is_some_and(Poly::is_one), || json!({ "b0": direct.b[0].to_string() }));
    agree.case(direct.b.get(1) == Some(&poly("3*s + 1")), || json!({ "b1": direct.b.get(1).map(ToString::to_string) }));
    for dv in &dvs {
        let (seq, rep) = holonomic::b_recursion(dv, orders);
        reports.push(rep);
        reports.push(seq.degree_report());
        agree.case(seq.b == direct.b, || {
            let l = seq.b.iter().zip(&direct.b).position(|(a, b)| a != b).unwrap_or(seq.b.len().min(direct.b.len()));
            json!({ "source": dv.kind.name(), "first_mismatch": l })
        });
        artifacts.insert(format!("b_{}", dv.kind.name()), bseq_text(&seq));
    }
    reports.push(direct.degree_report());
    reports.push(agree);
    reports.push(holonomic::verify_coprime_factors());
    Ok(Outcome { reports, artifacts })
}

fn conjecture_suite(p: &Params) -> Result<Outcome> {
    let n_max = p.n_max.unwrap_or(8);
    let i_max = p.i_max.unwrap_or(6);
    let closure_n = n_max.min(5);
    let k_max = (n_max + 2).max(closure_n + 4);
    let start = Instant::now();
    let table = f_table(k_max, i_max)?;
    let mut deg = table.degree_report();
    if p.timings {
        deg.millis = Some(start.elapsed().as_millis() as u64);
    }
    let mut reports = vec![deg];
    let vanish: Vec<Report> = (0..=n_max)
        .into_par_iter()
        .map(|n| timed(p.timings, || verify_vanishing(&table, n, i_max)))
        .collect::<Result<_>>()?;
    let flat: Vec<Report> =
        (0..=n_max).into_par_iter().map(|n| timed(p.timings, || verify_flat(n))).collect::<Result<_>>()?;
    let closure: Vec<Report> = (0..=closure_n)
        .into_par_iter()
        .map(|n| timed(p.timings, || verify_closure(&table, n, i_max)))
        .collect::<Result<_>>()?;
    reports.extend(vanish);
    reports.extend(flat);
    reports.extend(closure);
    Ok(Outcome { reports, ..Outcome::default() })
}

fn hilbert_suite(p: &Params) -> Result<Outcome> {
    let n_max = p.n_max.map_or(5, |n| n.min(8));
    let reports =
        (0..=n_max).into_par_iter().map(|n| timed(p.timings, || hilbert_check(n, 2 * n + 4))).collect::<Result<_>>()?;
    Ok(Outcome { reports, ..Outcome::default() })
}

/// Compare artifacts with `dir/<name>.txt`; files that do not exist yet are
/// written (pinned).
pub fn fixtures(dir: &Path, artifacts: &Artifacts) -> Result<Report> {
    let io = |e: std::io::Error| domain(format!("fixtures: {e}"));
    fs::create_dir_all(dir).map_err(io)?;
    let mut r = Report::new("fixtures").param("dir", dir.display().to_string());
    let mut pinned = 0u64;
    for (name, text) in artifacts {
        let path = dir.join(format!("{name}.txt"));
        if path.exists() {
            let old = fs::read_to_string(&path).map_err(io)?;
            r.case(&old == text, || json!({ "artifact": name, "pinned": old, "current": text }));
        } else {
            fs::write(&path, text).map_err(io)?;
            pinned += 1;
        }
    }
    Ok(r.param("newly_pinned", pinned))
}

/// One JSON array of reports, one object per line.
pub fn reports_json(reports: &[Report]) -> String {
    let mut out = String::from("[\n");
    for (k, r) in reports.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&r.to_json().to_string());
        out.push_str(if k + 1 < reports.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn low_f_components() {
        let t = f_table(3, 1).unwrap();
        assert_eq!(t.get(1, 0), poly("t"));
        assert_eq!(t.get(2, 0), poly("s - 1/2*t^2"));
        assert_eq!(t.get(3, 0), poly("1/3*t^3 - t*s"));
        assert!(t.degree_report().passed());
    }

    #[test]
    fn worked_template_integrals() {
        let t = f_table(4, 1).unwrap();
        assert_eq!(integrate_shifted(&t.get(2, 0), 0, 0, 1), rat(0));
        assert_eq!(integrate_shifted(&t.get(3, 0), 1, 0, 2), rat(0));
        assert_eq!(integrate_shifted(&t.get(4, 1), 0, 0, 3), rat(0));
        assert!(!t.get(4, 1).is_zero());
    }

    #[test]
    fn small_vanishing_and_flat() {
        let t = f_table(6, 2).unwrap();
        for n in 0..=4 {
            assert!(verify_vanishing(&t, n, 2).unwrap().passed());
            assert!(verify_flat(n).unwrap().passed());
        }
        assert_eq!(verify_flat(0).unwrap().n_cases, 0);
        assert_eq!(verify_flat(1).unwrap().n_cases, 1);
    }

    #[test]
    fn hilbert_series_coefficients() {
        assert_eq!(expected_hilbert(1, 4), [1, 1, 1, 0, 0]);
        assert_eq!(expected_hilbert(2, 6), [1, 1, 2, 1, 1, 0, 0]);
        let r = hilbert_check(2, 8).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
        assert!(hilbert_check(1, 7).is_err());
    }

    #[test]
    fn substitution_maps() {
        let r = iso_check(6, 4).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
    }

    #[test]
    fn triples_are_degree_matched() {
        for (m, l, i) in template_triples(4, 5, 3) {
            assert_eq!(m + 2 * l + 5 + 2 * i, 8);
        }
        assert!(template_triples(0, 1, 2).is_empty());
    }
}
