//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with the observed numbers at the stated tolerance.

use std::collections::BTreeSet;

use num_complex::Complex;
use qwalk::closed_forms::{
    classical_closed, classical_ray_limit, grover3_finite_closed, grover3_orbit_step,
    grover3_recurrences, grover3_semi_closed, reflection_inequality_suite,
    two_state_conservation, two_state_finite_closed, two_state_recurrences,
    two_state_semi_closed, AbsorptionQuery, WalkFamily,
};
use qwalk::genfun::{grover3_semi_probability, two_state_semi_probability};
use qwalk::grover2d::{
    conjecture61_probe, run_wall_2d, solve_momentum_system, system_residual, ProbeBudget,
    Wall2dConfig,
};
use qwalk::hadamard::ContourSpec;
use qwalk::walk_core::{
    absorb_measure, brute_force_amplitude, classical_absorption, classical_absorption_finite,
    run_absorbing, step, AbsorberSet, CoinSpec, RunSpec, WalkState,
};

type C64 = Complex<f64>;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

fn standard_coins() -> Vec<CoinSpec<f64>> {
    [0.2, 0.35, 0.5, 0.65, 0.8]
        .iter()
        .map(|&a2| CoinSpec::from_a_squared(a2).unwrap())
        .collect()
}

fn q10(coin: &CoinSpec<f64>, m: u32, n: u32) -> AbsorptionQuery<f64> {
    AbsorptionQuery::new(
        WalkFamily::TwoState,
        coin.clone(),
        m,
        Some(n),
        vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    )
    .unwrap()
}

fn simulate_left(coin: &CoinSpec<f64>, start_dir: u8, m: u32, n: u32, max_steps: u32) -> (f64, f64) {
    let dirs = coin.directions();
    let absorbers = AbsorberSet::points([0, n as i64]).unwrap();
    let tracked: BTreeSet<i64> = [0].into();
    let report = run_absorbing(
        &WalkState::point(vec![m as i64], start_dir),
        coin,
        &dirs,
        &absorbers,
        &tracked,
        RunSpec {
            max_steps,
            residual_tol: 1e-12,
        },
    )
    .unwrap();
    (report.probability, report.untracked_mass)
}

#[test]
fn criterion_01_hadamard_semi_infinite() {
    let coin = CoinSpec::<f64>::hadamard();
    let closed = two_state_semi_closed(&coin).unwrap().value;
    let two_over_pi = 2.0 / std::f64::consts::PI;
    let d_closed = (closed - two_over_pi).abs();

    let quad = two_state_semi_probability(1, &coin, &ContourSpec::semi_default(), 1e-6).unwrap();
    let d_quad = (quad.value - closed).abs();

    let dirs = coin.directions();
    let absorbers = AbsorberSet::points([0]).unwrap();
    let tracked: BTreeSet<i64> = [0].into();
    let sim = run_absorbing(
        &WalkState::point(vec![1], 0),
        &coin,
        &dirs,
        &absorbers,
        &tracked,
        RunSpec {
            max_steps: 2000,
            residual_tol: 1e-30,
        },
    )
    .unwrap();
    let d_sim = (sim.probability - closed).abs();

    verdict(
        "criterion 1 (Hadamard semi-infinite 2/pi)",
        d_closed < 1e-12 && d_quad < 1e-6 && d_sim < 1e-3,
        &format!("closed dev {d_closed:.2e}, quadrature dev {d_quad:.2e}, simulation dev {d_sim:.2e}"),
    );
}

#[test]
fn criterion_02_finite_limit_inverse_sqrt2() {
    let coin = CoinSpec::<f64>::hadamard();
    let p = two_state_finite_closed(&q10(&coin, 1, 4000)).unwrap().p10;
    let dev = (p - 1.0 / 2f64.sqrt()).abs();
    verdict(
        "criterion 2 (Thm 4.2 at n=4000 vs 1/sqrt2)",
        dev < 1e-4,
        &format!("P_4000^(1) = {p:.8}, dev {dev:.2e}"),
    );
}

#[test]
fn criterion_03_oracle_grid() {
    use rayon::prelude::*;
    let coins = standard_coins();
    let grid: Vec<(usize, u32, u32)> = (0..coins.len())
        .flat_map(|ci| (2..=12u32).flat_map(move |n| (1..n).map(move |m| (ci, m, n))))
        .collect();
    let worst_2s = grid
        .par_iter()
        .map(|&(ci, m, n)| {
            let closed = two_state_finite_closed(&q10(&coins[ci], m, n)).unwrap().p10;
            let (sim, _) = simulate_left(&coins[ci], 0, m, n, 60_000);
            (closed - sim).abs()
        })
        .reduce(|| 0.0, f64::max);

    let g_grid: Vec<(u32, u32)> = (2..=12u32)
        .flat_map(|n| (1..n).map(move |m| (m, n)))
        .collect();
    let worst_g3 = g_grid
        .par_iter()
        .map(|&(m, n)| {
            let closed = grover3_finite_closed::<f64>(m, n).unwrap();
            let (sim, _) = simulate_left(&CoinSpec::Grover3, 0, m, n, 12_000);
            (closed - sim).abs()
        })
        .reduce(|| 0.0, f64::max);

    verdict(
        "criterion 3 (closed vs simulation grid, m < n <= 12)",
        worst_2s < 1e-8 && worst_g3 < 1e-8,
        &format!("two-state worst {worst_2s:.2e}, grover3 worst {worst_g3:.2e}"),
    );
}

#[test]
fn criterion_04_conservation() {
    let coins = standard_coins();
    let mn_grid = [
        (1u32, 2u32),
        (1, 5),
        (2, 5),
        (3, 7),
        (4, 9),
        (5, 11),
        (2, 9),
        (1, 12),
        (6, 13),
        (3, 11),
    ];
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for (ci, coin) in coins.iter().enumerate() {
        for (k, &(m, n)) in mn_grid.iter().enumerate() {
            let t = 0.2 + 0.07 * (k as f64 + ci as f64 + 1.0);
            let alpha = C64::from_polar(t.cos(), 0.3 * k as f64 + ci as f64);
            let beta = C64::from_polar(t.sin(), -0.7 * k as f64);
            let q = AbsorptionQuery::new(
                WalkFamily::TwoState,
                coin.clone(),
                m,
                Some(n),
                vec![alpha, beta],
            )
            .unwrap();
            worst = worst.max((two_state_conservation(&q).unwrap().sum - 1.0).abs());
            cases += 1;
        }
    }
    let (left, untracked) = simulate_left(&CoinSpec::from_a_squared(0.65).unwrap(), 0, 3, 9, 60_000);
    let sim_total_dev = (left + untracked - 1.0).abs();
    verdict(
        "criterion 4 (Eq-42 conservation)",
        cases == 50 && worst < 1e-12 && sim_total_dev < 1e-6,
        &format!("{cases} closed-form cases worst {worst:.2e}, simulated total dev {sim_total_dev:.2e}"),
    );
}

#[test]
fn criterion_05_recurrences() {
    let coins = standard_coins();
    let mut worst_eq44: f64 = 0.0;
    let mut worst_corrected: f64 = 0.0;
    for coin in &coins {
        let rep = two_state_recurrences(coin, 50, 20, 16).unwrap();
        worst_eq44 = worst_eq44.max(rep.position);
        worst_corrected = worst_corrected.max(rep.corrected_lattice);
    }
    let g3 = grover3_recurrences::<f64>(40, 40, 30, 30).unwrap();

    // printed Eq-43 must fail at Hadamard n=3 (expected failure)
    let coin = CoinSpec::<f64>::hadamard();
    let x = 1.0 / 2f64.sqrt();
    let printed_p3 = (x + 0.5) / 1.5;
    let true_p3 = two_state_finite_closed(&q10(&coin, 1, 3)).unwrap().p10;
    let printed_fails = (printed_p3 - true_p3).abs() > 0.1;

    verdict(
        "criterion 5 (Eq-44/Eq-56 residuals, corrected Eq-43, printed Eq-43 fails)",
        worst_eq44 < 1e-8
            && g3.position < 1e-8
            && worst_corrected < 1e-12
            && printed_fails,
        &format!(
            "Eq-44 worst {worst_eq44:.2e}, Eq-56 worst {:.2e}, corrected Eq-43 worst {worst_corrected:.2e}, printed Eq-43 dev {:.3} (expected failure)",
            g3.position,
            (printed_p3 - true_p3).abs()
        ),
    );
}

#[test]
fn criterion_06_grover3_values() {
    let closed: f64 = grover3_semi_closed();
    let d_const = (closed - 0.6693).abs();

    let quad = grover3_semi_probability(1, &ContourSpec::semi_default(), 1e-6).unwrap();
    let d_quad = (quad.value - closed).abs();

    let dirs = CoinSpec::<f64>::Grover3.directions();
    let absorbers = AbsorberSet::points([0]).unwrap();
    let tracked: BTreeSet<i64> = [0].into();
    let sim = run_absorbing(
        &WalkState::point(vec![1], 0),
        &CoinSpec::Grover3,
        &dirs,
        &absorbers,
        &tracked,
        RunSpec {
            max_steps: 2000,
            residual_tol: 1e-30,
        },
    )
    .unwrap();
    let d_sim = (sim.probability - closed).abs();

    // orbit: 2/3avg, 12/17, ... matches Eq 53 to 1e-12
    let mut p = 0.0f64;
    let mut worst_orbit: f64 = 0.0;
    for n in 2..=40u32 {
        p = grover3_orbit_step(p);
        worst_orbit = worst_orbit.max((p - grover3_finite_closed::<f64>(1, n).unwrap()).abs());
    }
    let first_two_ok = (grover3_finite_closed::<f64>(1, 2).unwrap() - 2.0 / 3.0).abs() < 1e-12
        && (grover3_finite_closed::<f64>(1, 3).unwrap() - 12.0 / 17.0).abs() < 1e-12;

    let equiv = grover3_recurrences::<f64>(40, 40, 30, 30).unwrap().hadamard_equivalence;

    verdict(
        "criterion 6 (Grover3 values, orbit, b_n = a_{2n-1})",
        d_const < 5e-5
            && d_quad < 1e-4
            && d_sim < 1e-3
            && worst_orbit < 1e-12
            && first_two_ok
            && equiv < 1e-12,
        &format!(
            "const dev {d_const:.2e}, quad dev {d_quad:.2e}, sim dev {d_sim:.2e}, orbit worst {worst_orbit:.2e}, equivalence worst {equiv:.2e}"
        ),
    );
}

#[test]
fn criterion_07_reflection_inequality() {
    let coins = standard_coins();
    let mut n_grid: Vec<u32> = (4..=100).step_by(4).collect();
    n_grid.push(100);
    let report = reflection_inequality_suite(&coins, &n_grid, &[2, 3, 5]).unwrap();
    // the pointwise inequality is asserted on the provable range n >= 4;
    // the printed theorem's small-n overreach is a documented discrepancy
    verdict(
        "criterion 7 (reflection inequality and Grover3 strict margin)",
        report.worst_limit_gap >= -1e-12
            && report.worst_asserted_gap >= -1e-12
            && report.grover3_relative_margin > 0.05,
        &format!(
            "limit-form worst gap {:.3e}, pointwise (n >= 4) worst gap {:.3e}, grover3 relative margin {:.4}",
            report.worst_limit_gap, report.worst_asserted_gap, report.grover3_relative_margin
        ),
    );
}

#[test]
fn criterion_08_classical() {
    let mut worst: f64 = 0.0;
    for &p in &[0.3, 0.5, 0.7] {
        let q = 1.0 - p;
        // Thm 3.2 against the Markov solver on the full grid
        for n in 2..=30usize {
            for m in 1..n {
                let solver: f64 = classical_absorption_finite(p, q, m, n).unwrap();
                let closed = classical_closed(p, q, m, Some(n)).unwrap();
                worst = worst.max((solver - closed).abs());
            }
        }
        // Thm 3.1 against the truncated solver
        for m in 1..=6usize {
            let solver: f64 = classical_absorption(p, q, m, None).unwrap();
            let closed = classical_closed(p, q, m, None).unwrap();
            worst = worst.max((solver - closed).abs());
        }
        // Thm 3.4 ray limits against the solver at n=2000 (c n integral)
        for &c in &[0.25, 0.5, 0.75] {
            let n = 2000usize;
            let m = (c * n as f64) as usize;
            let solver = classical_absorption_finite(p, q, m, n).unwrap();
            let limit = classical_ray_limit(p, q, c).unwrap();
            worst = worst.max((solver - limit).abs());
        }
        // Thm 3.5 recurrences against the solver values
        for n in 5..=30usize {
            let p1 = classical_absorption_finite(p, q, 1, n).unwrap();
            let p1_next = classical_absorption_finite(p, q, 1, n + 1).unwrap();
            worst = worst.max((p1_next - q / (1.0 - p * p1)).abs());
        }
    }
    verdict(
        "criterion 8 (classical closed forms vs Markov solver)",
        worst < 1e-12,
        &format!("worst deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_09_path_integral_oracle() {
    let mut worst: f64 = 0.0;
    let cases: Vec<(CoinSpec<f64>, Vec<i64>, Vec<i64>, u32)> = vec![
        (CoinSpec::hadamard(), vec![2], vec![0], 10),
        (CoinSpec::from_a_squared(0.2).unwrap(), vec![2], vec![0], 10),
        (CoinSpec::from_a_squared(0.8).unwrap(), vec![3], vec![1], 10),
        (CoinSpec::Grover3, vec![2], vec![0], 10),
        (CoinSpec::grover_d(2).unwrap(), vec![1, 0], vec![0, 1], 10),
        (CoinSpec::grover_d(3).unwrap(), vec![1, 0, 0], vec![0, 1, 0], 8),
    ];
    for (coin, start, target, tmax) in cases {
        let dirs = coin.directions();
        let absorbers = if start.len() == 1 {
            AbsorberSet::points([0]).unwrap()
        } else {
            AbsorberSet::walls([0]).unwrap()
        };
        let arrival = (dirs.len() - 1) as u8;
        for t in 1..=tmax {
            let bf = brute_force_amplitude(
                (&start, 0),
                (&target, arrival),
                &coin,
                &dirs,
                Some(&absorbers),
                t,
            )
            .unwrap();
            let mut state = WalkState::point(start.clone(), 0);
            for k in 1..=t {
                state = step(&state, &coin, &dirs).unwrap();
                if k < t {
                    let (rest, _) = absorb_measure(&state, &absorbers);
                    state = rest;
                }
            }
            worst = worst.max((bf - state.amplitude(&target, arrival)).norm());
        }
    }
    verdict(
        "criterion 9 (path sums equal operator evolution)",
        worst < 1e-12,
        &format!("worst deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_10_grover2d() {
    // momentum estimate
    let contour = ContourSpec::new(1.0, 1 << 12, 3).unwrap();
    let est = qwalk::grover2d::wall_absorption_semi::<f64>(1, 256, &contour, 1e-4).unwrap();
    let in_range = est.value >= 0.636 && est.value <= 0.656;

    // direct simulation, width 121, 600 steps
    let sim = run_wall_2d::<f64>(&Wall2dConfig {
        m: 1,
        wall_right: None,
        steps: 600,
        half_width: 60,
        record_wall_amplitudes: false,
        prune_threshold: 1e-16,
    })
    .unwrap();
    let d_sim = (est.value - sim.absorbed_left).abs();

    // system residuals
    let mut worst_resid: f64 = 0.0;
    for i in 0..24 {
        let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / 24.0;
        for k in 0..24 {
            let r = 0.1 + 0.9 * ((k % 6) as f64 + 0.6) / 6.0;
            let z = C64::from_polar(r.min(1.0), 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / 24.0);
            let comp = solve_momentum_system(theta, z).unwrap();
            if !comp.perturbed {
                worst_resid = worst_resid.max(system_residual(theta, z, &comp));
            }
        }
    }

    // finite-wall recursion coefficients vs the two-wall simulation
    let n = 3u32;
    let tmax = 12u32;
    let cfg = Wall2dConfig {
        m: 1,
        wall_right: Some(n),
        steps: tmax,
        half_width: tmax + 1,
        record_wall_amplitudes: true,
        prune_threshold: 0.0,
    };
    let two_wall = run_wall_2d::<f64>(&cfg).unwrap();
    let mut worst_coeff: f64 = 0.0;
    for theta in [0.0, 0.7, 2.1, -1.3, 3.0] {
        let reference: Vec<C64> = two_wall
            .wall_amps
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let y = i as i64 - (cfg.half_width as i64);
                        a * C64::from_polar(1.0, y as f64 * theta)
                    })
                    .sum()
            })
            .collect();
        let tc = qwalk::hadamard::taylor_coefficients_n(
            |z| {
                qwalk::grover2d::wall_recursion_finite(n, theta, z)
                    .unwrap_or(C64::new(f64::NAN, f64::NAN))
            },
            tmax as usize + 1,
            0.6,
            512,
        )
        .unwrap();
        for (t, want) in reference.iter().enumerate() {
            worst_coeff = worst_coeff.max((tc.coeffs[t + 1] - want).norm());
        }
    }

    // conjecture probe: trend table only, never asserted
    let probe = conjecture61_probe::<f64>(
        &[2, 3, 4, 5, 6, 7, 8, 16, 32],
        &ProbeBudget {
            theta_nodes: 128,
            z_nodes: 1 << 11,
            simulate_up_to: 0,
            sim_steps: 0,
            sim_half_width: 0,
        },
    )
    .unwrap();
    println!("conjecture 6.1 trend (reported, not asserted):");
    println!("  P_inf^(1) = {:.6}", probe.semi_infinite);
    for row in &probe.rows {
        println!("  n={:>3}: P_n = {:.6}", row.n, row.momentum);
    }
    println!(
        "  Richardson limit {:.6} vs target 2/3 (distance {:.2e}); LF-fit residual {:.2e}",
        probe.richardson_limit, probe.distance_to_target, probe.lf_fit_residual
    );

    verdict(
        "criterion 10 (2D Grover wall)",
        in_range && d_sim < 1e-2 && worst_resid < 1e-10 && worst_coeff < 1e-8,
        &format!(
            "momentum {:.5} in [0.636, 0.656]: {in_range}; |momentum - sim| = {d_sim:.2e}; residuals {worst_resid:.2e}; recursion coeffs {worst_coeff:.2e}",
            est.value
        ),
    );
}
