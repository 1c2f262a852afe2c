//! End-to-end acceptance checks. Each test prints one `[PASS]`/`[FAIL]` line.
//! Run with `cargo test -p iontrap-dfs --test acceptance -- --nocapture`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use iontrap_dfs::analysis::{analytic_leakage, analytic_total_population, fit_power_law};
use iontrap_dfs::codes::{dephasing_invariance_check, leakage, StandardCode};
use iontrap_dfs::dynamics::{
    alternation_schedule, dissipator, evolve_closed, fidelity, integrate_lindblad, run_alternation_experiment,
    sweep_alternation, ExperimentConfig, InitialState, LindbladModel, PulseSchedule, PulseSegment,
};
use iontrap_dfs::hamiltonians::{collective_sz, h_xx, h_xy, h_yy};
use iontrap_dfs::linalg::{expm_hermitian, ComplexMatrix};
use iontrap_dfs::universality::{all_pairs, check_encoded_universality};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(k: u32, pass: bool, detail: String) {
    println!("[{}] criterion {k}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {k} failed: {detail}");
}

fn rho_001() -> ComplexMatrix {
    InitialState::Basis("001".into()).density(3).unwrap()
}

fn random_code_state(rng: &mut impl Rng, code: &iontrap_dfs::codes::CodeSpace) -> ComplexMatrix {
    let d = code.dim();
    let a = ComplexMatrix::new(
        d,
        d,
        (0..d * d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap();
    let small = a.matmul(&a.adjoint());
    let small = small.scale_real(1.0 / small.trace().re);
    let mut rho = ComplexMatrix::zeros(code.hilbert_dim(), code.hilbert_dim());
    for (r, &ir) in code.indices().iter().enumerate() {
        for (s, &is) in code.indices().iter().enumerate() {
            rho[(ir, is)] = small[(r, s)];
        }
    }
    rho
}

#[test]
fn criterion_1_alternation_is_exact() {
    let start = Instant::now();
    let direct = expm_hermitian(&h_xy(0, 1, 1.0, 3).unwrap(), PI).unwrap();
    let mut worst: f64 = 0.0;
    for n in [1, 2, 8, 32] {
        let u = alternation_schedule(0, 1, 1.0, PI, n, 3).unwrap().unitary(8);
        worst = worst.max(u.max_abs_diff(&direct));
    }
    let elapsed = start.elapsed();
    report(
        1,
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("max |U_alt - exp(-i h_xy T)| = {worst:.3e} over n in {{1,2,8,32}} ({elapsed:.2?})"),
    );
}

#[test]
fn criterion_2_leakage_law() {
    let ci = StandardCode::CI.build();
    let rho0 = rho_001();

    // route 1: exact propagator at each sample time
    let h = h_xx(0, 1, 1.0, 3).unwrap();
    let times: Vec<f64> = (0..100).map(|k| PI * k as f64 / 99.0).collect();
    let mut worst_exact: f64 = 0.0;
    for &t in &times {
        let rho = rho0.conjugate_by(&expm_hermitian(&h, t).unwrap());
        worst_exact = worst_exact.max((leakage(&rho, &ci).unwrap() - analytic_leakage(t)).abs());
    }

    // route 2: RK4 trajectory on a grid containing the sample times
    let sub = 20;
    let model = LindbladModel::collective_dephasing(PulseSchedule::single(h.clone(), PI).unwrap(), 3, 0.0).unwrap();
    let traj = integrate_lindblad(&rho0, &model, PI / (99 * sub) as f64, &ci).unwrap();
    let mut worst_rk4: f64 = 0.0;
    for (k, &t) in times.iter().enumerate() {
        let idx = k * sub;
        assert!((traj.times[idx] - t).abs() <= 1e-12);
        worst_rk4 = worst_rk4.max((traj.leakage[idx] - analytic_leakage(t)).abs());
    }

    let mut worst_return: f64 = 0.0;
    for t in [0.3, 1.0, PI / 2.0, 2.5, PI] {
        let pair = PulseSchedule::new(
            vec![
                PulseSegment::new(h.clone(), t).unwrap(),
                PulseSegment::new(h_yy(0, 1, 1.0, 3).unwrap(), t).unwrap(),
            ],
            1,
        )
        .unwrap();
        let rho = evolve_closed(&rho0, &pair).unwrap();
        worst_return = worst_return.max(leakage(&rho, &ci).unwrap());
    }

    report(
        2,
        worst_exact <= 1e-8 && worst_rk4 <= 1e-8 && worst_return <= 1e-10,
        format!(
            "|leak - sin^2 t| exact {worst_exact:.3e}, rk4 {worst_rk4:.3e}; leakage after xx+yy pair {worst_return:.3e}"
        ),
    );
}

#[test]
fn criterion_3_integrated_population() {
    let start = Instant::now();
    let ci = StandardCode::CI.build();
    let base = ExperimentConfig {
        gamma: 0.0,
        ..Default::default()
    };
    let results = sweep_alternation(&base, &[1, 2, 4, 8, 16], &rho_001(), &ci, false).unwrap();
    let worst = results
        .iter()
        .map(|r| {
            let model = analytic_total_population(PI, r.n);
            (r.integrated_leakage - model).abs() / model
        })
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    report(
        3,
        worst <= 5e-3 && elapsed < Duration::from_secs(5),
        format!("max relative deviation from T - (n/2) sin(2T/n) = {worst:.3e} ({elapsed:.2?})"),
    );
}

#[test]
fn criterion_4_error_scaling_exponent() {
    let start = Instant::now();
    let ci = StandardCode::CI.build();
    let ns: Vec<usize> = (17..=64).collect();
    let results = sweep_alternation(&ExperimentConfig::default(), &ns, &rho_001(), &ci, false).unwrap();
    let points: Vec<(u32, f64)> = results.iter().map(|r| (r.n as u32, r.one_minus_f)).collect();
    let fit = fit_power_law(&points, 17).unwrap();
    let elapsed = start.elapsed();
    report(
        4,
        (fit.exponent + 2.0).abs() <= 0.1 && elapsed < Duration::from_secs(60),
        format!(
            "fitted exponent {:.4} (target -2.0 +/- 0.1), log-rms residual {:.3e}, n = 17..64 ({elapsed:.2?} single-threaded)",
            fit.exponent, fit.residual
        ),
    );
}

#[test]
fn criterion_5_su3_closure() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for code in [StandardCode::CI, StandardCode::CII] {
        let full = check_encoded_universality(&code.build(), &all_pairs(3)).unwrap();
        pass &= full.closure_dimension == 8;
        let singles: Vec<usize> = all_pairs(3)
            .into_iter()
            .map(|p| check_encoded_universality(&code.build(), &[p]).unwrap().closure_dimension)
            .collect();
        pass &= singles.iter().all(|&d| d < 8);
        lines.push(format!("{code}: all pairs {}, single pairs {singles:?}", full.closure_dimension));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(1);
    report(5, pass, format!("{} ({elapsed:.2?})", lines.join("; ")));
}

#[test]
fn criterion_6_dfs_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_phase: f64 = 0.0;
    for code in StandardCode::ALL {
        let c = code.build();
        for _ in 0..10 {
            let phi = rng.gen_range(-PI..PI);
            worst_phase = worst_phase.max(dephasing_invariance_check(&c, phi));
        }
    }
    let sz = collective_sz(3).unwrap();
    let mut worst_xy: f64 = 0.0;
    let mut least_xx = f64::INFINITY;
    for (i, j) in all_pairs(3) {
        worst_xy = worst_xy.max(h_xy(i, j, 1.0, 3).unwrap().commutator(&sz).max_abs());
        least_xx = least_xx.min(h_xx(i, j, 1.0, 3).unwrap().commutator(&sz).max_abs());
    }
    report(
        6,
        worst_phase <= 1e-12 && worst_xy <= 1e-13 && least_xx > 0.1,
        format!("phase deviation {worst_phase:.3e}, max |[h_xy,S_z]| {worst_xy:.3e}, min |[h_xx,S_z]| {least_xx:.3}"),
    );
}

#[test]
fn criterion_7_dark_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ci = StandardCode::CI.build();
    let sz = collective_sz(3).unwrap();
    let mut worst_d: f64 = 0.0;
    let mut worst_err: f64 = 0.0;
    for _ in 0..20 {
        let rho = random_code_state(&mut rng, &ci);
        let d = dissipator(&rho, std::slice::from_ref(&sz), &[10.0]).unwrap();
        worst_d = worst_d.max(d.max_abs());

        let segments: Vec<PulseSegment> = (0..rng.gen_range(1..=6))
            .map(|_| {
                let pairs = all_pairs(3);
                let (i, j) = pairs[rng.gen_range(0..pairs.len())];
                let g = rng.gen_range(0.2..2.0);
                PulseSegment::new(h_xy(i, j, g, 3).unwrap(), rng.gen_range(0.05..1.0)).unwrap()
            })
            .collect();
        let schedule = PulseSchedule::new(segments, 1).unwrap();
        let closed = evolve_closed(&rho, &schedule).unwrap();
        let model = LindbladModel::collective_dephasing(schedule, 3, 10.0).unwrap();
        let open = integrate_lindblad(&rho, &model, 1e-3, &ci).unwrap().final_rho;
        worst_err = worst_err.max(1.0 - fidelity(&closed, &open).unwrap());
    }
    report(
        7,
        worst_d <= 1e-13 && worst_err <= 1e-8,
        format!("max |D[rho]| {worst_d:.3e}, max 1-f(open, closed) at gamma=10 {worst_err:.3e}"),
    );
}

#[test]
fn criterion_8_numerical_hygiene() {
    let ci = StandardCode::CI.build();
    let mut worst_trace: f64 = 0.0;
    let mut worst_herm: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut worst_halving: f64 = 0.0;
    for state in [InitialState::Basis("001".into()), InitialState::Plus] {
        let rho0 = state.density(3).unwrap();
        for gamma in [0.0, 1.0, 10.0] {
            for n in [1, 4, 17, 64] {
                let cfg = ExperimentConfig {
                    n,
                    gamma,
                    ..Default::default()
                };
                let r = run_alternation_experiment(&cfg, &rho0, &ci).unwrap();
                worst_trace = worst_trace
                    .max(r.max_trace_drift)
                    .max((r.final_rho.trace().re - 1.0).abs());
                worst_herm = worst_herm.max(r.final_rho.hermiticity_error());
                min_eig = min_eig.min(r.final_rho.min_eigenvalue().unwrap());

                let fine = ExperimentConfig {
                    steps_per_segment: 2 * cfg.steps_per_segment,
                    ..cfg
                };
                let r2 = run_alternation_experiment(&fine, &rho0, &ci).unwrap();
                worst_halving = worst_halving.max((r.fidelity_vs_target - r2.fidelity_vs_target).abs());
            }
        }
    }
    report(
        8,
        worst_trace <= 1e-8 && worst_herm <= 1e-9 && min_eig >= -1e-7 && worst_halving <= 1e-6,
        format!(
            "trace drift {worst_trace:.3e}, hermiticity {worst_herm:.3e}, min eigenvalue {min_eig:.3e}, step-halving df {worst_halving:.3e}"
        ),
    );
}
