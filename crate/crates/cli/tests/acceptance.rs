//! End-to-end acceptance checks, one line per criterion. Runs without the
//! libtest harness so the lines are always visible.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuseries_core::exactnum::rat;
use fuseries_core::holonomic::{
    b_direct, b_recursion, compute_p0, find_dependency, p0_expected, q_tower, verify_dependency, DependencyKind,
};
use fuseries_core::polyring::{poly, PhiPoly, UPoly};
use fuseries_core::series::Log2Rat;
use fuseries_core::template::{kappa, verify_h_m, verify_q2_ode, verify_series_identity};
use fuseries_core::tutte::{phi_series, tamari_interval_count, tau_from_phi, tutte_coeff};
use fuseries_core::verifier::{expected_hilbert, f_table, hilbert_check, verify_vanishing, with_jobs};
use fuseries_core::{binomial, RatFun, Report, Var};

type Check = Result<String, String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn passed(r: &Report) -> Result<(), String> {
    ensure(r.passed(), || r.summary_line())
}

fn tutte() -> Check {
    let expected = [1, 3, 13, 68, 399, 2530];
    let tau = tau_from_phi(6);
    for (i, &want) in (1..=6).zip(&expected) {
        let closed = tutte_coeff(i).map_err(|e| e.to_string())?;
        let tamari = tamari_interval_count(i as usize).map_err(|e| e.to_string())?;
        ensure(closed == rat(want), || format!("closed form at i = {i}: {closed}"))?;
        ensure(tau.coeff(0, 0, i) == closed, || format!("quartic at i = {i}"))?;
        ensure(tamari == want as u64, || format!("Tamari at i = {i}: {tamari}"))?;
    }
    Ok("i <= 6, three sources".into())
}

fn phi_lagrange() -> Check {
    let phi = phi_series(40);
    for n in 1..=40u32 {
        let want = binomial(4 * n as i64, n as i64 - 1) / rat(n as i64);
        ensure(phi.coeff(0, 0, n) == want, || format!("[λ^{n}]φ"))?;
    }
    Ok("n <= 40".into())
}

fn p0() -> Check {
    let num = UPoly::from_poly(&poly("12*l*f^3 + 52*l*f^2 + 4*l*f - 36*l + 9*f"), Var::F);
    let den = RatFun::from_poly(poly("(256*l - 27)*l"));
    let coeffs: Vec<RatFun> = (0..4).map(|k| &num.coeff(k) / &den).collect();
    let displayed = PhiPoly::from_coeffs(coeffs.try_into().map_err(|_| "four coefficients".to_string())?);
    let got = compute_p0().map_err(|e| e.to_string())?;
    ensure(got == displayed && got == p0_expected(), || format!("P0 = {got:?}"))?;
    Ok("exact".into())
}

fn template_identities() -> Check {
    for m in 0..=12 {
        passed(&verify_q2_ode(m))?;
    }
    for m in 0..=8 {
        passed(&verify_series_identity(m, 30).map_err(|e| e.to_string())?)?;
    }
    let k0 = kappa(0).map_err(|e| e.to_string())?;
    ensure(k0 == Log2Rat::log2(), || format!("κ_0 = {k0}"))?;
    Ok("ODE m <= 12, series m <= 8 to x^30, κ_0 = log 2".into())
}

fn h_m() -> Check {
    for m in 0..=6 {
        passed(&verify_h_m(m, 12, 8).map_err(|e| e.to_string())?)?;
    }
    Ok("m <= 6 at (12, 8)".into())
}

fn dependencies() -> Check {
    let tower = q_tower(5).map_err(|e| e.to_string())?;
    for kind in [DependencyKind::R, DependencyKind::RHat] {
        let dv = find_dependency(&tower, kind).map_err(|e| format!("{}: {e}", kind.name()))?;
        passed(&verify_dependency(&tower, &dv))?;
        let lag = kind.lag();
        let signs: Vec<bool> = (lag..=*dv.indices().end())
            .map(|i| dv.structural_constant(i).is_some_and(|c| c > rat(0)))
            .collect();
        ensure(signs.iter().all(|&b| b), || format!("{}: structural signs {signs:?}", kind.name()))?;
    }
    Ok("R and R̂ kernels of dimension 1".into())
}

fn b_sequence() -> Check {
    let tower = q_tower(5).map_err(|e| e.to_string())?;
    let (direct, rep) = b_direct(14, 12).map_err(|e| e.to_string())?;
    passed(&rep)?;
    ensure(direct.b[0] == poly("1") && direct.b[1] == poly("3*s + 1"), || "b_0, b_1".into())?;
    for kind in [DependencyKind::R, DependencyKind::RHat] {
        let dv = find_dependency(&tower, kind).map_err(|e| e.to_string())?;
        let (seq, rep) = b_recursion(&dv, 12);
        passed(&rep)?;
        passed(&seq.degree_report())?;
        ensure(seq.b == direct.b, || format!("{} recursion disagrees", kind.name()))?;
    }
    Ok("l <= 12, three sources".into())
}

fn vanishing() -> Check {
    let run = |jobs: usize, bound: Duration| -> Result<u64, String> {
        let start = Instant::now();
        let total = with_jobs(jobs, || -> Result<u64, String> {
            let table = f_table(10, 6).map_err(|e| e.to_string())?;
            let mut total = 0;
            for n in 0..=8 {
                let r = verify_vanishing(&table, n, 6).map_err(|e| e.to_string())?;
                passed(&r)?;
                total += r.n_cases;
            }
            Ok(total)
        })
        .map_err(|e| e.to_string())??;
        let took = start.elapsed();
        ensure(took < bound, || format!("{jobs} jobs took {took:?}"))?;
        Ok(total)
    };
    let single = run(1, Duration::from_secs(600))?;
    let eight = run(8, Duration::from_secs(120))?;
    ensure(single == eight, || "case counts differ".into())?;
    Ok(format!("{single} identities, n <= 8, i <= 6"))
}

fn hilbert() -> Check {
    for n in 0..=5 {
        let r = hilbert_check(n, 2 * n + 4).map_err(|e| e.to_string())?;
        passed(&r)?;
        let want = expected_hilbert(n, 2 * n + 4);
        ensure(r.params["dims"] == serde_json::json!(want), || format!("dims at n = {n}"))?;
    }
    Ok("n <= 5, k <= 2n + 4".into())
}

fn determinism() -> Check {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("acceptance_all_{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_fuseries"))
            .args(["verify", "all", "--emit-json"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || format!("exit status {}", status.status))?;
        outputs.push(fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "reports differ between runs".into())?;
    Ok(format!("{} bytes identical", outputs[0].len()))
}

type Criterion = (&'static str, u64, fn() -> Check);

const CRITERIA: [Criterion; 10] = [
    ("Tutte three-way agreement", 10, tutte),
    ("φ-series by Lagrange inversion", 1, phi_lagrange),
    ("P0 closed form", 1, p0),
    ("Q2 ODE and combinatorial series identity", 30, template_identities),
    ("h_m equivalence and degree bound", 120, h_m),
    ("dependency structure", 120, dependencies),
    ("b-sequence from three sources", 120, b_sequence),
    ("relation vanishing", 600, vanishing),
    ("Hilbert series of the flat quotient", 60, hilbert),
    ("deterministic JSON reports", 600, determinism),
];

fn main() -> ExitCode {
    let mut failures = 0;
    for (k, (name, secs, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if took < Duration::from_secs(*secs) => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {secs} s bound")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} criterion {:>2}: {name} [{:.2} s < {secs} s] {detail}", k + 1, took.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
