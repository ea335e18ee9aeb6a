//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use kwl::config::load_sim;
use kwl_core::oracle::{blowup_time, hit_time};
use kwl_core::regimes::{self, bar, classify, critical_exponents, CriticalExponent, FIRED_GLOBAL, FIRED_INTERIOR};
use kwl_core::regimes::{FIRED_LINEAR, FIRED_TWO_SOURCES, FIRED_WELLPOSED};
use kwl_core::solver::{self, cfl_limit, MAX_CFL};
use kwl_core::{Conclusion, EnergyReport, InitialData, MeshSpec, ModelParams, OdeProblem, Profile, RadialShape};
use kwl_core::{SimConfig, Trigger};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn c1_exponents() -> Outcome {
    use CriticalExponent::{Finite, Infinite};
    let expected = [
        (2, Infinite, Infinite),
        (3, Finite(6.0), Infinite),
        (4, Finite(4.0), Finite(6.0)),
        (5, Finite(10.0 / 3.0), Finite(4.0)),
        (6, Finite(3.0), Finite(10.0 / 3.0)),
    ];
    for (n, r_omega, r_gamma) in expected {
        let e = critical_exponents(n).map_err(|e| e.to_string())?;
        ensure(e.r_omega == r_omega && e.r_gamma == r_gamma, || format!("N={n}: got {e:?}"))?;
    }
    for n in 2..=10 {
        let e = critical_exponents(n).unwrap();
        let ok = match e.r_omega {
            Infinite => e.r_gamma.is_infinite(),
            Finite(r) => e.r_gamma.ge_real(1.0 + r / 2.0),
        };
        ensure(ok, || format!("N={n}: r_Γ < 1 + r_Ω/2"))?;
    }
    Ok("N=2..6 exact, r_Γ ≥ 1 + r_Ω/2 for N=2..10".into())
}

struct Fixture {
    cell: &'static str,
    params: ModelParams,
    conclusion: Conclusion,
    fired: &'static str,
}

fn table_fixtures() -> Vec<Fixture> {
    use Conclusion::{BlowsUpForNegativeEnergy as Blow, GlobalForAllData as Global, Undetermined as Undet};
    let base = ModelParams { dim: 3, ..ModelParams::default() };
    let p = |f: &dyn Fn(&mut ModelParams)| {
        let mut x = base;
        f(&mut x);
        x.m_tilde = x.m;
        x.mu_tilde = x.mu;
        x
    };
    let undet_b = "none: class B with nonlinear damping is open";
    let undet_c = "none: (1.24) range, boundary damping too strong for (1.21)";
    let undet_d = "none: (1.15) and (1.24bis) both fail";
    let fx = |cell, params, conclusion, fired| Fixture { cell, params, conclusion, fired };
    vec![
        // model classes under linear damping
        fx("A sourceless", p(&|_| {}), Global, FIRED_GLOBAL),
        fx("A sourceless, nonlinear damping", p(&|x| (x.alpha, x.m) = (1.0, 3.0)), Global, FIRED_GLOBAL),
        fx("B q=2", p(&|x| x.delta = 1.0), Global, FIRED_GLOBAL),
        fx("B q>2", p(&|x| (x.delta, x.q) = (1.0, 3.0)), Blow, FIRED_LINEAR),
        fx("B q>2, linear boundary damping", p(&|x| (x.delta, x.q, x.beta) = (1.0, 3.0, 1.0)), Blow, FIRED_LINEAR),
        fx("B q>μ̄, nonlinear damping", p(&|x| (x.delta, x.q, x.beta, x.mu) = (1.0, 4.0, 1.0, 3.0)), Undet, undet_b),
        fx("C p=2", p(&|x| x.gamma = 1.0), Global, FIRED_GLOBAL),
        fx("C p>2", p(&|x| (x.gamma, x.p) = (1.0, 3.0)), Blow, FIRED_INTERIOR),
        fx("Da p=2 q=2", p(&|x| (x.gamma, x.delta) = (1.0, 1.0)), Global, FIRED_GLOBAL),
        fx("Da p>2 q>2", p(&|x| (x.gamma, x.delta, x.p, x.q) = (1.0, 1.0, 3.0, 3.0)), Blow, FIRED_TWO_SOURCES),
        fx("Da p>2 q=2", p(&|x| (x.gamma, x.delta, x.p) = (1.0, 1.0, 3.0)), Undet, undet_d),
        fx("Da p=2 q>2", p(&|x| (x.gamma, x.delta, x.q) = (1.0, 1.0, 3.0)), Undet, undet_d),
        // interior source only
        fx("Ca p=2", p(&|x| x.gamma = 1.0), Global, FIRED_GLOBAL),
        fx("Ca p>2", p(&|x| (x.gamma, x.p) = (1.0, 3.5)), Blow, FIRED_INTERIOR),
        fx("Cb p=2", p(&|x| (x.gamma, x.beta, x.mu) = (1.0, 1.0, 3.0)), Global, FIRED_GLOBAL),
        fx("Cb p>2, μ̄<1+p/2", p(&|x| (x.gamma, x.p, x.beta, x.mu) = (1.0, 4.0, 1.0, 2.5)), Blow, FIRED_INTERIOR),
        fx("Cb p>2, μ̄≥1+p/2", p(&|x| (x.gamma, x.p, x.beta, x.mu) = (1.0, 3.0, 1.0, 3.0)), Undet, undet_c),
        fx("Cc p≤m̄", p(&|x| (x.gamma, x.p, x.alpha, x.m) = (1.0, 4.0, 1.0, 4.0)), Global, FIRED_GLOBAL),
        fx("Cc p>m̄", p(&|x| (x.gamma, x.p, x.alpha, x.m) = (1.0, 4.0, 1.0, 3.0)), Blow, FIRED_INTERIOR),
        fx(
            "Cd p≤m̄",
            p(&|x| (x.gamma, x.p, x.alpha, x.m, x.beta, x.mu) = (1.0, 3.0, 1.0, 3.0, 1.0, 2.0)),
            Global,
            FIRED_GLOBAL,
        ),
        fx(
            "Cd p>m̄, μ̄<1+p/2",
            p(&|x| (x.gamma, x.p, x.alpha, x.m, x.beta, x.mu) = (1.0, 4.0, 1.0, 3.0, 1.0, 2.5)),
            Blow,
            FIRED_INTERIOR,
        ),
        fx(
            "Cd p>m̄, μ̄≥1+p/2",
            p(&|x| (x.gamma, x.p, x.alpha, x.m, x.beta, x.mu) = (1.0, 4.0, 1.0, 2.5, 1.0, 4.0)),
            Undet,
            undet_c,
        ),
        // two sources
        fx(
            "Db p=2, q≤μ̄",
            p(&|x| (x.gamma, x.delta, x.q, x.beta, x.mu) = (1.0, 1.0, 3.0, 1.0, 3.0)),
            Global,
            FIRED_GLOBAL,
        ),
        fx(
            "Db p>2, μ̄≥1+p/2, q>μ̄",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.beta, x.mu) = (1.0, 1.0, 3.0, 3.5, 1.0, 3.0)),
            Blow,
            FIRED_TWO_SOURCES,
        ),
        fx(
            "Db p>2, μ̄≥1+p/2, 2<q≤μ̄",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.beta, x.mu) = (1.0, 1.0, 3.0, 2.5, 1.0, 3.0)),
            Undet,
            undet_d,
        ),
        fx(
            "Db p>2, μ̄<1+p/2, q>2",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.beta, x.mu) = (1.0, 1.0, 3.0, 2.1, 1.0, 2.2)),
            Blow,
            FIRED_TWO_SOURCES,
        ),
        fx(
            "Dc p≤m̄, q=2",
            p(&|x| (x.gamma, x.delta, x.p, x.alpha, x.m) = (1.0, 1.0, 3.0, 1.0, 3.0)),
            Global,
            FIRED_GLOBAL,
        ),
        fx(
            "Dc p>m̄, q>2",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.alpha, x.m) = (1.0, 1.0, 4.0, 3.0, 1.0, 3.0)),
            Blow,
            FIRED_TWO_SOURCES,
        ),
        fx(
            "Dc p>m̄, q=2",
            p(&|x| (x.gamma, x.delta, x.p, x.alpha, x.m) = (1.0, 1.0, 4.0, 1.0, 3.0)),
            Undet,
            undet_d,
        ),
        fx(
            "Dc p≤m̄, q>2",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.alpha, x.m) = (1.0, 1.0, 3.0, 3.0, 1.0, 3.0)),
            Undet,
            undet_d,
        ),
        fx(
            "Dd p≤m̄, q≤μ̄",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.alpha, x.m, x.beta, x.mu) = (1.0, 1.0, 3.0, 3.0, 1.0, 3.0, 1.0, 3.0)),
            Global,
            FIRED_GLOBAL,
        ),
        fx(
            "Dd p>m̄, μ̄≥1+p/2, q>μ̄",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.alpha, x.m, x.beta, x.mu) = (1.0, 1.0, 4.0, 3.5, 1.0, 3.0, 1.0, 3.0)),
            Blow,
            FIRED_TWO_SOURCES,
        ),
        fx(
            "Dd p>m̄, μ̄≥1+p/2, 2<q≤μ̄",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.alpha, x.m, x.beta, x.mu) = (1.0, 1.0, 4.0, 2.5, 1.0, 3.0, 1.0, 3.0)),
            Undet,
            undet_d,
        ),
        fx(
            "Dd p>m̄, μ̄<1+p/2, q>2",
            p(&|x| (x.gamma, x.delta, x.p, x.q, x.alpha, x.m, x.beta, x.mu) = (1.0, 1.0, 4.0, 2.2, 1.0, 3.0, 1.0, 2.5)),
            Blow,
            FIRED_TWO_SOURCES,
        ),
        fx(
            "outside local theory",
            p(&|x| (x.gamma, x.p, x.alpha, x.m) = (1.0, 5.6, 1.0, 4.0)),
            Conclusion::OutsideLocalTheory,
            FIRED_WELLPOSED,
        ),
    ]
}

fn c2_tables() -> Outcome {
    let fixtures = table_fixtures();
    for f in &fixtures {
        let v = classify(&f.params).map_err(|e| format!("{}: {e}", f.cell))?;
        ensure(v.conclusion == f.conclusion && v.fired == f.fired, || {
            format!("{}: expected {} / {}, got {} / {}", f.cell, f.conclusion, f.fired, v.conclusion, v.fired)
        })?;
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn c3_oracle() -> Outcome {
    let cases = [(2.0, 0.0, 1.0, 1.0), (3.0, 0.0, 2.0, 0.125), (2.0, 1.0, 2.0, 0.5 * 3f64.ln())];
    let mut worst: f64 = 0.0;
    for (l, c, psi0, exact) in cases {
        let prob = OdeProblem::new(l, c, psi0).map_err(|e| e.to_string())?;
        let t = blowup_time(&prob, 1e-10).map_err(|e| e.to_string())?;
        ensure((t - exact).abs() <= 1e-8, || format!("T({l},{c},{psi0}) = {t}, expected {exact}"))?;
        let hit = hit_time(&prob, 1e6).map_err(|e| e.to_string())?;
        ensure((hit - t).abs() <= 2e-6, || format!("hit time {hit} vs T = {t} for ({l},{c},{psi0})"))?;
        worst = worst.max((hit - t).abs());
    }
    Ok(format!("max |t_hit - T_m| = {worst:.2e}"))
}

fn accumulated_residual(traj: &[EnergyReport]) -> f64 {
    traj.iter().skip(1).map(|r| r.identity_residual.abs()).sum()
}

fn c4_energy_identity() -> Outcome {
    let mesh = MeshSpec { r_inner: 1.0, r_outer: 2.0, n_r: 65, n_theta: 64 };
    let dt = 0.4 / MAX_CFL * cfl_limit(&mesh.build().unwrap());
    let data = InitialData::Scaled { profile: Profile { radial: RadialShape::QuarterSine, angular_mode: 1 }, scale: 1.0 };
    let run = |dt: f64| {
        let cfg = SimConfig::new(ModelParams::default(), mesh, dt, 10.0, data);
        solver::run(&cfg).map_err(|e| e.to_string())
    };
    let coarse = run(dt)?;
    let fine = run(0.5 * dt)?;
    let e0 = coarse.trajectory[0].e;
    let drift = coarse.trajectory.iter().map(|r| (r.e - e0).abs() / e0).fold(0.0, f64::max);
    let (rc, rf) = (accumulated_residual(&coarse.trajectory), accumulated_residual(&fine.trajectory));
    let ratio = rc / rf;
    ensure(drift <= 1e-3, || format!("relative drift {drift:.3e} > 1e-3"))?;
    ensure((3.2..=4.8).contains(&ratio), || format!("residual ratio {ratio:.3} outside [3.2, 4.8]"))?;
    Ok(format!("drift {drift:.2e}, residual {rc:.3e} -> {rf:.3e} (ratio {ratio:.2})"))
}

fn c5_dissipation() -> Outcome {
    let mesh = MeshSpec { r_inner: 1.0, r_outer: 1.5, n_r: 33, n_theta: 64 };
    let dt = 0.4 / MAX_CFL * cfl_limit(&mesh.build().unwrap());
    let mut checked = 0;
    for m in [2.0, 4.0] {
        let params = ModelParams { alpha: 1.0, m, m_tilde: m, ..ModelParams::default() };
        let data = InitialData::Scaled { profile: Profile { radial: RadialShape::QuarterSine, angular_mode: 2 }, scale: 2.0 };
        let sim = solver::run(&SimConfig::new(params, mesh, dt, 10.0, data)).map_err(|e| e.to_string())?;
        ensure(!sim.blowup.blew_up, || format!("m={m}: unexpected blow-up"))?;
        for pair in sim.trajectory.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            ensure(b.dissipation_rate >= 0.0, || format!("m={m}: dissipation rate {} at t={}", b.dissipation_rate, b.t))?;
            let slack = 10.0 * b.identity_residual.abs();
            ensure(b.e <= a.e + slack, || format!("m={m}: E rose by {:.3e} at t={} (slack {slack:.3e})", b.e - a.e, b.t))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} steps checked for m ∈ {{2, 4}}"))
}

fn c6_blowup_benchmark() -> Outcome {
    let cfg = load_sim(&config_path("bench_cc.json")).map_err(|e| e.to_string())?;
    let p = cfg.params;
    ensure(
        (p.gamma, p.p, p.alpha, p.m, p.a, p.b, p.beta, p.delta) == (1.0, 4.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.0),
        || format!("bench_cc.json has unexpected parameters {p:?}"),
    )?;
    ensure(matches!(cfg.initial_data, InitialData::AutoNegativeEnergy { margin, .. } if margin == 1.0), || {
        "bench_cc.json must use auto negative-energy data with margin 1".into()
    })?;
    let sim = solver::run(&cfg).map_err(|e| e.to_string())?;
    let b = &sim.blowup;
    let t = b.t_detect.unwrap_or(f64::INFINITY);
    ensure(b.blew_up && t < 100.0, || format!("blew_up={} t_detect={:?}", b.blew_up, b.t_detect))?;
    for pair in sim.trajectory.windows(2) {
        let (x, y) = (&pair[0], &pair[1]);
        let tol = 10.0 * y.identity_residual.abs();
        ensure(y.k >= x.k - tol, || format!("K decreased by {:.3e} at t={} (tol {tol:.3e})", x.k - y.k, y.t))?;
        ensure(y.k <= y.j + tol, || format!("K - J = {:.3e} at t={} (tol {tol:.3e})", y.k - y.j, y.t))?;
    }
    let f = &b.final_report;
    ensure(f.phase_norm() > 1e6 && f.lp_interior > 1e6, || {
        format!("at detection ‖U‖ = {:.3e}, ‖u‖_p^p = {:.3e}", f.phase_norm(), f.lp_interior)
    })?;
    Ok(format!(
        "t_detect = {t:.6}, trigger {}, ‖U‖ = {:.2e}, ‖u‖_p^p = {:.2e}",
        b.trigger.as_str(),
        f.phase_norm(),
        f.lp_interior
    ))
}

fn c7_contrast() -> Outcome {
    let cc = load_sim(&config_path("bench_cc.json")).map_err(|e| e.to_string())?;
    let mesh = cc.mesh.build().unwrap();
    let u0 = solver::initial_state(&mesh, &cc.params, &cc.initial_data).map_err(|e| e.to_string())?;
    let InitialData::AutoNegativeEnergy { profile, .. } = cc.initial_data else { unreachable!() };
    let phi = profile.field(&mesh);
    let o = mesh.outer_row();
    let lambda = u0.u.values[o] / phi.values[o];

    let contrast = load_sim(&config_path("bench_contrast.json")).map_err(|e| e.to_string())?;
    ensure(contrast.params == ModelParams { p: 2.0, ..cc.params }, || "contrast must differ from Cc only in p = 2".into())?;
    let InitialData::Scaled { profile: cp, scale } = contrast.initial_data else {
        return Err("contrast config must use scaled data".into());
    };
    ensure(cp == profile && (scale - lambda).abs() <= 1e-12 * lambda, || {
        format!("contrast data λ = {scale} differs from the Cc data λ = {lambda}")
    })?;
    ensure(contrast.t_end == 50.0, || "contrast must run to t_end = 50".into())?;
    ensure(regimes::global_existence_ok(&contrast.params), || "p ≤ m̄ must hold".into())?;

    let sim = solver::run(&contrast).map_err(|e| e.to_string())?;
    ensure(!sim.blowup.blew_up, || format!("blew up at {:?}", sim.blowup.t_detect))?;
    let initial = sim.trajectory[0].phase_norm();
    let peak = sim.trajectory.iter().map(EnergyReport::phase_norm).fold(0.0, f64::max);
    ensure(peak <= 10.0 * initial, || format!("phase norm peaked at {peak:.3e} > 10 × {initial:.3e}"))?;
    Ok(format!("no blow-up to t=50, max ‖U‖ / ‖U₀‖ = {:.3}", peak / initial))
}

fn c8_two_sources() -> Outcome {
    let cfg = load_sim(&config_path("bench_dd.json")).map_err(|e| e.to_string())?;
    let p = cfg.params;
    ensure(
        (p.gamma, p.delta, p.p, p.q, p.alpha, p.beta, p.m, p.mu) == (1.0, 1.0, 4.0, 4.0, 1.0, 1.0, 2.0, 2.0),
        || format!("bench_dd.json has unexpected parameters {p:?}"),
    )?;
    let v = classify(&p).map_err(|e| e.to_string())?;
    ensure(v.fired == FIRED_TWO_SOURCES, || format!("classifier fired `{}`", v.fired))?;
    let sim = solver::run(&cfg).map_err(|e| e.to_string())?;
    let b = &sim.blowup;
    ensure(b.blew_up && b.trigger != Trigger::None, || "no blow-up detected".into())?;
    Ok(format!("fired {}, t_detect = {:.6}", v.fired, b.t_detect.unwrap()))
}

fn random_params(rng: &mut StdRng) -> ModelParams {
    let weight = |rng: &mut StdRng| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.01..3.0) };
    let exponent = |rng: &mut StdRng| if rng.gen_bool(0.2) { 2.0 } else { rng.gen_range(1.05..8.0) };
    let source = |rng: &mut StdRng| if rng.gen_bool(0.2) { 2.0 } else { rng.gen_range(2.0..12.0) };
    let m = exponent(rng);
    let mu = exponent(rng);
    ModelParams {
        dim: rng.gen_range(2..=10),
        a: weight(rng),
        b: weight(rng),
        alpha: weight(rng),
        beta: weight(rng),
        gamma: weight(rng),
        delta: weight(rng),
        m_tilde: 1.0 + (m - 1.0) * rng.gen_range(0.01..=1.0),
        m,
        mu_tilde: 1.0 + (mu - 1.0) * rng.gen_range(0.01..=1.0),
        mu,
        p: source(rng),
        q: source(rng),
    }
}

fn remark_implications(p: &ModelParams) -> Result<(), String> {
    if !regimes::wellposed_ok(p) {
        return Ok(());
    }
    let crit = critical_exponents(p.dim).unwrap();
    let fail = |what: &str| Err(format!("{what} violated for {p:?}"));
    let interior_dominant = p.gamma > 0.0 && p.p > if p.alpha == 0.0 { 2.0 } else { bar(p.m) };
    if interior_dominant && (!crit.r_omega.gt_real(p.p) || (p.alpha > 0.0 && !crit.r_omega.gt_real(bar(p.m)))) {
        return fail("m̄, p < r_Ω");
    }
    let boundary_dominant = p.delta > 0.0 && p.q > if p.beta == 0.0 { 2.0 } else { bar(p.mu) };
    let boundary_bounded = crit.r_gamma.gt_real(p.q) && (p.beta == 0.0 || crit.r_gamma.gt_real(bar(p.mu)));
    if (boundary_dominant || regimes::blowup_two_sources_ok(p)) && !boundary_bounded {
        return fail("μ̄, q < r_Γ");
    }
    Ok(())
}

fn c9_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x6b776c);
    let mut blowups = 0;
    for _ in 0..100_000 {
        let p = random_params(&mut rng);
        let v = classify(&p).map_err(|e| format!("{p:?}: {e}"))?;
        let blowup = v.blowup_interior || v.blowup_two_sources || v.blowup_linear_damping;
        ensure(!(v.global_existence && blowup), || format!("Global ∧ BlowUp for {p:?}"))?;
        ensure((v.conclusion == Conclusion::OutsideLocalTheory) == !v.wellposed, || format!("{p:?}"))?;
        remark_implications(&p)?;
        blowups += (v.conclusion == Conclusion::BlowsUpForNegativeEnergy) as usize;
    }
    let tol = 1e-11;
    for _ in 0..1_000 {
        let l = rng.gen_range(1.2..5.0);
        let c = rng.gen_range(0.0..4.0);
        let psi0 = f64::powf(c, 1.0 / l) + rng.gen_range(0.01..3.0);
        let t = |l, c, psi0| blowup_time(&OdeProblem::new(l, c, psi0).unwrap(), tol).unwrap();
        let base = t(l, c, psi0);
        let later = t(l, c, psi0 + rng.gen_range(0.01..1.0));
        ensure(later < base, || format!("T not decreasing in ψ₀ at ({l}, {c}, {psi0})"))?;
        let start = f64::powf(c + 1.0, 1.0 / l) + rng.gen_range(0.01..3.0);
        let absorbed = t(l, c + rng.gen_range(0.01..1.0), start);
        ensure(absorbed > t(l, c, start), || format!("T not increasing in c at ({l}, {c}, {start})"))?;
    }
    Ok(format!("1e5 classifier draws ({blowups} blow-up verdicts), 1e3 oracle problems"))
}

fn scan_once(threads: usize, args: &[&str], out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_kwl"))
        .arg("scan")
        .args(args)
        .arg("--out")
        .arg(out)
        .env("KWL_THREADS", threads.to_string())
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("scan exited with {status}"))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let grids: [&[&str]; 2] = [
        &["--N", "3", "--gamma", "1", "--alpha", "1", "--axis1", "p:2:6:41", "--axis2", "m:2:6:41"],
        &["--N", "2", "--gamma", "1", "--alpha", "1", "--axis1", "p:2:5:4", "--axis2", "m:2:3:2", "--simulate"],
    ];
    let mut rows = 0;
    for (g, args) in grids.iter().enumerate() {
        let mut outputs = Vec::new();
        for (k, threads) in [1, 8, 1, 8].into_iter().enumerate() {
            outputs.push(scan_once(threads, args, &dir.path().join(format!("grid{g}_{k}.csv")))?);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("grid {g}: outputs differ across runs"))?;
        rows += outputs[0].iter().filter(|&&b| b == b'\n').count() - 1;
    }
    Ok(format!("{rows} rows byte-identical across KWL_THREADS ∈ {{1, 8}}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("critical exponents", c1_exponents),
        ("regime tables", c2_tables),
        ("comparison ODE oracle", c3_oracle),
        ("discrete energy identity", c4_energy_identity),
        ("dissipation sign", c5_dissipation),
        ("interior-source blow-up benchmark", c6_blowup_benchmark),
        ("global-existence contrast", c7_contrast),
        ("two-source blow-up benchmark", c8_two_sources),
        ("property suites", c9_properties),
        ("scan determinism", c10_determinism),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
