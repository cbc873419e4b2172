//! Cross-validation suites: every closed form against the simulation
//! oracle, every recurrence against the closed forms, and the documented
//! discrepancy checks. The CLI `verify` subcommand prints these as
//! JSON lines; the acceptance tests assert them.

use std::collections::BTreeSet;

use num_complex::Complex;
use rayon::prelude::*;

use crate::closed_forms::{
    classical_closed, classical_ray_limit, classical_recurrence_residuals, grover3_finite_closed,
    grover3_recurrences, grover3_semi_closed, reflection_inequality_suite, two_state_conservation,
    two_state_finite_closed, two_state_recurrences, two_state_semi_closed, AbsorptionQuery,
    WalkFamily,
};
use crate::error::Result;
use crate::genfun::{
    grover3_finite_probability, grover3_semi_probability, two_state_finite_probability,
    two_state_semi_probability, Component, GenFunHandle,
};
use crate::grover2d::{
    conjecture61_probe, run_wall_2d, solve_momentum_system, system_residual,
    wall_recursion_finite, ProbeBudget, Wall2dConfig,
};
use crate::hadamard::{self, taylor_coefficients_n, ContourSpec};
use crate::walk_core::{
    absorb_measure, brute_force_amplitude, classical_absorption, run_absorbing, step, AbsorberSet,
    CoinSpec, RunSpec, WalkState,
};

type C64 = Complex<f64>;

/// How a check's observed value relates to its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Pass when `observed <= bound`.
    UpperBound,
    /// Pass when `observed >= bound`.
    LowerBound,
    /// Informational row; never affects the exit status.
    Report,
    /// Documented failure of a printed formula: passes when the deviation
    /// EXCEEDS the bound (the formula really is wrong as printed).
    ExpectedFailure,
}

/// One verification record.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub kind: CheckKind,
}

impl Check {
    pub fn passed(&self) -> Option<bool> {
        match self.kind {
            CheckKind::UpperBound => Some(self.observed <= self.bound),
            CheckKind::LowerBound => Some(self.observed >= self.bound),
            CheckKind::Report => None,
            CheckKind::ExpectedFailure => Some(self.observed > self.bound),
        }
    }

    fn upper(suite: &'static str, name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check {
            suite,
            name: name.into(),
            observed,
            bound,
            kind: CheckKind::UpperBound,
        }
    }

    fn lower(suite: &'static str, name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check {
            suite,
            name: name.into(),
            observed,
            bound,
            kind: CheckKind::LowerBound,
        }
    }

    fn report(suite: &'static str, name: impl Into<String>, observed: f64) -> Self {
        Check {
            suite,
            name: name.into(),
            observed,
            bound: f64::NAN,
            kind: CheckKind::Report,
        }
    }

    fn expected_failure(
        suite: &'static str,
        name: impl Into<String>,
        observed: f64,
        bound: f64,
    ) -> Self {
        Check {
            suite,
            name: name.into(),
            observed,
            bound,
            kind: CheckKind::ExpectedFailure,
        }
    }
}

/// The five standard two-state test coins, `|a|^2 in {0.2,...,0.8}`.
pub fn standard_coins() -> Vec<CoinSpec<f64>> {
    [0.2, 0.35, 0.5, 0.65, 0.8]
        .iter()
        .map(|&a2| CoinSpec::from_a_squared(a2).expect("valid a^2"))
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
    .expect("valid query")
}

/// Tracked, untracked, and residual mass from a finite 1D run.
fn simulate_finite_1d(
    coin: &CoinSpec<f64>,
    start_dir: u8,
    m: u32,
    n: u32,
    max_steps: u32,
) -> Result<(f64, f64, f64)> {
    let dirs = coin.directions();
    let absorbers = AbsorberSet::points([0, n as i64])?;
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
    )?;
    Ok((
        report.probability,
        report.untracked_mass,
        report.residual_mass,
    ))
}

/// Arrival-amplitude series at `(0, L)` for the coefficient oracles.
fn absorbed_series_1d(
    coin: &CoinSpec<f64>,
    start_dir: u8,
    m: u32,
    n: Option<u32>,
    tmax: usize,
) -> Result<Vec<C64>> {
    let dirs = coin.directions();
    let absorbers = match n {
        Some(n) => AbsorberSet::points([0, n as i64])?,
        None => AbsorberSet::points([0])?,
    };
    let arrival = (dirs.len() - 1) as u8;
    let mut state = WalkState::point(vec![m as i64], start_dir);
    let mut out = Vec::with_capacity(tmax);
    for _ in 0..tmax {
        state = step(&state, coin, &dirs)?;
        out.push(state.amplitude(&[0], arrival));
        let (rest, _) = absorb_measure(&state, &absorbers);
        state = rest;
    }
    Ok(out)
}

fn coeff_oracle_check(
    suite: &'static str,
    name: String,
    handle: &GenFunHandle<f64>,
    series: &[C64],
) -> Check {
    let got = taylor_coefficients_n(
        |z| handle.eval(z).unwrap_or(C64::new(f64::NAN, f64::NAN)),
        series.len() + 1,
        0.75,
        512,
    );
    let worst = match got {
        Ok(tc) => {
            let mut w = tc.coeffs[0].norm();
            for (t, want) in series.iter().enumerate() {
                w = w.max((tc.coeffs[t + 1] - want).norm());
            }
            w
        }
        Err(_) => f64::INFINITY,
    };
    Check::upper(suite, name, worst, 1e-9)
}

fn coin_label(coin: &CoinSpec<f64>) -> String {
    match coin {
        CoinSpec::TwoState { a, .. } => format!("|a|^2={:.2}", a.norm_sqr()),
        CoinSpec::Grover3 => "grover3".into(),
        CoinSpec::GroverD { d } => format!("grover_d({d})"),
    }
}

// ---------------------------------------------------------------- classical

pub fn suite_classical() -> Result<Vec<Check>> {
    let suite = "classical";
    let mut checks = Vec::new();

    let mut worst_grid: f64 = 0.0;
    for &p in &[0.3, 0.5, 0.7] {
        let q = 1.0 - p;
        for n in 2..=30usize {
            for m in 1..n {
                let solver: f64 = classical_absorption(p, q, m, Some(n))?;
                let closed = classical_closed(p, q, m, Some(n))?;
                worst_grid = worst_grid.max((solver - closed).abs());
            }
        }
        for m in 1..=6usize {
            let solver: f64 = classical_absorption(p, q, m, None)?;
            let closed = classical_closed(p, q, m, None)?;
            worst_grid = worst_grid.max((solver - closed).abs());
        }
    }
    checks.push(Check::upper(
        suite,
        "Markov solver vs closed forms, m < n <= 30 and semi-infinite",
        worst_grid,
        1e-12,
    ));

    let mut worst_ray: f64 = 0.0;
    for &p in &[0.3, 0.5, 0.7] {
        let q = 1.0 - p;
        for &c in &[0.25, 0.5, 0.75] {
            let n = 4000usize;
            let m = (c * n as f64).floor() as usize;
            let limit = classical_ray_limit(p, q, c)?;
            let at_n = classical_closed(p, q, m, Some(n))?;
            worst_ray = worst_ray.max((limit - at_n).abs());
        }
    }
    checks.push(Check::upper(
        suite,
        "ray limit vs closed form at n=4000 (floor rounding is O(1/n))",
        worst_ray,
        2e-3,
    ));

    for &p in &[0.3, 0.5, 0.7] {
        let rep = classical_recurrence_residuals(p, 1.0 - p, 30, 20)?;
        checks.push(Check::upper(
            suite,
            format!("lattice recurrence residual, p={p}"),
            rep.lattice_recurrence,
            1e-12,
        ));
        checks.push(Check::upper(
            suite,
            format!("product identity residual, p={p}"),
            rep.product_identity,
            1e-12,
        ));
        checks.push(Check::upper(
            suite,
            format!("position recurrence residual, p={p}"),
            rep.position_recurrence,
            1e-12,
        ));
    }

    checks.push(Check::upper(
        suite,
        "symmetric m=1 n=100 equals 0.99",
        (classical_closed(0.5f64, 0.5, 1, Some(100))? - 0.99).abs(),
        1e-15,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------- two-state

pub fn suite_two_state() -> Result<Vec<Check>> {
    let suite = "two-state";
    let mut checks = Vec::new();
    let coins = standard_coins();

    let worst_unitarity = coins
        .iter()
        .map(|c| c.matrix().unitarity_defect())
        .fold(0.0f64, f64::max);
    checks.push(Check::upper(
        suite,
        "coin unitarity defect",
        worst_unitarity,
        1e-12,
    ));

    // path-integral oracle (Prop 2.2 equivalence)
    let coin = CoinSpec::<f64>::from_a_squared(0.35).unwrap();
    let dirs = coin.directions();
    let absorbers = AbsorberSet::points([0])?;
    let mut worst_paths: f64 = 0.0;
    for t in 1..=10u32 {
        let bf = brute_force_amplitude((&[2], 0), (&[0], 1), &coin, &dirs, Some(&absorbers), t)?;
        let mut state = WalkState::point(vec![2], 0);
        for k in 1..=t {
            state = step(&state, &coin, &dirs)?;
            if k < t {
                let (rest, _) = absorb_measure(&state, &absorbers);
                state = rest;
            }
        }
        worst_paths = worst_paths.max((bf - state.amplitude(&[0], 1)).norm());
    }
    checks.push(Check::upper(
        suite,
        "path sum equals operator evolution, t <= 10",
        worst_paths,
        1e-12,
    ));

    let mut worst_semi_quad: f64 = 0.0;
    for coin in &coins {
        let closed = two_state_semi_closed(coin)?.value;
        let quad = two_state_semi_probability(
            1,
            coin,
            &ContourSpec::semi_default(),
            hadamard::semi_tol::<f64>(),
        )?;
        worst_semi_quad = worst_semi_quad.max((closed - quad.value).abs());
    }
    checks.push(Check::upper(
        suite,
        "semi-infinite closed vs Hadamard-product quadrature",
        worst_semi_quad,
        1e-5,
    ));
    let hadamard_closed = two_state_semi_closed(&CoinSpec::<f64>::hadamard())?.value;
    checks.push(Check::upper(
        suite,
        "Hadamard semi-infinite equals 2/pi",
        (hadamard_closed - 2.0 / std::f64::consts::PI).abs(),
        1e-12,
    ));

    // oracle grid: closed forms vs simulation, all 1 <= m < n <= 12
    let grid: Vec<(usize, u32, u32)> = (0..coins.len())
        .flat_map(|ci| (2..=12u32).flat_map(move |n| (1..n).map(move |m| (ci, m, n))))
        .collect();
    let devs: Vec<Result<f64>> = grid
        .par_iter()
        .map(|&(ci, m, n)| {
            let coin = &coins[ci];
            let closed = two_state_finite_closed(&q10(coin, m, n))?.p10;
            let (sim, _, _) = simulate_finite_1d(coin, 0, m, n, 60_000)?;
            Ok((closed - sim).abs())
        })
        .collect();
    let mut worst_oracle: f64 = 0.0;
    for d in devs {
        worst_oracle = worst_oracle.max(d?);
    }
    checks.push(Check::upper(
        suite,
        "closed forms vs simulation, 1 <= m < n <= 12, five coins",
        worst_oracle,
        1e-8,
    ));

    // conservation: 50-case closed-form grid plus one simulated total
    let mut worst_cons: f64 = 0.0;
    let mut cases = 0;
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
            )?;
            worst_cons = worst_cons.max((two_state_conservation(&q)?.sum - 1.0).abs());
            cases += 1;
        }
    }
    checks.push(Check::upper(
        suite,
        format!("Eq-42 conservation exact on {cases} closed-form cases"),
        worst_cons,
        1e-12,
    ));

    let (left, right, resid) = {
        let coin = CoinSpec::<f64>::from_a_squared(0.65).unwrap();
        simulate_finite_1d(&coin, 0, 3, 9, 60_000)?
    };
    checks.push(Check::upper(
        suite,
        "simulated total absorption (left + right) equals 1",
        (left + right - 1.0).abs().max(resid),
        1e-6,
    ));

    for coin in &coins {
        let rep = two_state_recurrences(coin, 50, 20, 16)?;
        checks.push(Check::upper(
            suite,
            format!("corrected lattice recurrence, {}", coin_label(coin)),
            rep.corrected_lattice,
            1e-12,
        ));
        checks.push(Check::upper(
            suite,
            format!("position recurrence (4/|a|^2 - 1), {}", coin_label(coin)),
            rep.position,
            1e-10,
        ));
        checks.push(Check::upper(
            suite,
            format!("Eq-39 linear relation, {}", coin_label(coin)),
            rep.linear_relation,
            1e-12,
        ));
    }

    let mut n_grid: Vec<u32> = vec![2, 3];
    n_grid.extend((4..=100).step_by(6));
    let refl = reflection_inequality_suite(&coins, &n_grid, &[2, 3, 5])?;
    checks.push(Check::lower(
        suite,
        "reflection inequality, limit form",
        refl.worst_limit_gap,
        -1e-12,
    ));
    checks.push(Check::lower(
        suite,
        "reflection inequality, pointwise n >= 4",
        refl.worst_asserted_gap,
        -1e-12,
    ));
    checks.push(Check::report(
        suite,
        "smallest small-n gap (printed theorem fails here)",
        refl.worst_small_n_gap,
    ));
    checks.push(Check::report(
        suite,
        "smallest m >= 2 gap (conjectured extension)",
        refl.worst_reported_gap,
    ));

    for coin in [CoinSpec::hadamard(), CoinSpec::from_a_squared(0.35).unwrap()] {
        for m in [1u32, 2] {
            let series = absorbed_series_1d(&coin, 0, m, None, 30)?;
            checks.push(coeff_oracle_check(
                suite,
                format!("semi r coefficients t<=30, m={m}, {}", coin_label(&coin)),
                &GenFunHandle::two_state_semi(Component::R, m, coin.clone()),
                &series,
            ));
        }
        let series = absorbed_series_1d(&coin, 0, 2, Some(7), 30)?;
        checks.push(coeff_oracle_check(
            suite,
            format!("finite r coefficients t<=30, m=2 n=7, {}", coin_label(&coin)),
            &GenFunHandle::two_state_finite(Component::R, 2, 7, coin.clone()),
            &series,
        ));
    }

    let mut worst_fin_quad: f64 = 0.0;
    for coin in &coins {
        for &(m, n) in &[(1u32, 3u32), (2, 6), (3, 9)] {
            let quad = two_state_finite_probability(
                m,
                n,
                coin,
                &ContourSpec::finite_default(),
                hadamard::finite_tol::<f64>(),
            )?;
            let closed = two_state_finite_closed(&q10(coin, m, n))?.p10;
            worst_fin_quad = worst_fin_quad.max((quad.value - closed).abs());
        }
    }
    checks.push(Check::upper(
        suite,
        "finite Hadamard product vs closed form",
        worst_fin_quad,
        1e-8,
    ));

    Ok(checks)
}

// ----------------------------------------------------------------- grover3

pub fn suite_grover3() -> Result<Vec<Check>> {
    let suite = "grover3";
    let mut checks = Vec::new();

    let closed: f64 = grover3_semi_closed();
    checks.push(Check::upper(
        suite,
        "Eq-46 constant equals 0.6693 to 4 dp",
        (closed - 0.6693).abs(),
        5e-5,
    ));
    let quad = grover3_semi_probability(
        1,
        &ContourSpec::semi_default(),
        hadamard::semi_tol::<f64>(),
    )?;
    checks.push(Check::upper(
        suite,
        "semi-infinite quadrature vs Eq-46",
        (quad.value - closed).abs(),
        1e-4,
    ));

    let dirs = CoinSpec::<f64>::Grover3.directions();
    let absorbers = AbsorberSet::points([0])?;
    let tracked: BTreeSet<i64> = [0].into();
    let report = run_absorbing(
        &WalkState::point(vec![1], 0),
        &CoinSpec::Grover3,
        &dirs,
        &absorbers,
        &tracked,
        RunSpec {
            max_steps: 2000,
            residual_tol: 1e-30,
        },
    )?;
    checks.push(Check::upper(
        suite,
        "semi-infinite simulation (2000 steps) vs Eq-46",
        (report.probability - closed).abs(),
        1e-3,
    ));

    let mut worst_paths: f64 = 0.0;
    for t in 1..=10u32 {
        let bf: C64 = brute_force_amplitude(
            (&[2], 0),
            (&[0], 2),
            &CoinSpec::Grover3,
            &dirs,
            Some(&absorbers),
            t,
        )?;
        let mut state = WalkState::point(vec![2], 0);
        for k in 1..=t {
            state = step(&state, &CoinSpec::Grover3, &dirs)?;
            if k < t {
                let (rest, _) = absorb_measure(&state, &absorbers);
                state = rest;
            }
        }
        worst_paths = worst_paths.max((bf - state.amplitude(&[0], 2)).norm());
    }
    checks.push(Check::upper(
        suite,
        "path sum equals operator evolution, t <= 10",
        worst_paths,
        1e-12,
    ));

    let rep = grover3_recurrences::<f64>(40, 40, 30, 30)?;
    checks.push(Check::upper(suite, "Eq-55 orbit vs Eq-53", rep.orbit, 1e-12));
    checks.push(Check::upper(
        suite,
        "Eq-56 sixth-order recurrence relative residual",
        rep.position,
        1e-8,
    ));
    checks.push(Check::upper(
        suite,
        "b_n = a_{2n-1} equivalence, n <= 30",
        rep.hadamard_equivalence,
        1e-12,
    ));

    // oracle grid vs simulation (localization: the residual plateaus while
    // the absorbed mass converges; run under a step budget)
    let grid: Vec<(u32, u32)> = (2..=12u32)
        .flat_map(|n| (1..n).map(move |m| (m, n)))
        .collect();
    let devs: Vec<Result<f64>> = grid
        .par_iter()
        .map(|&(m, n)| {
            let closed = grover3_finite_closed::<f64>(m, n)?;
            let (sim, _, _) = simulate_finite_1d(&CoinSpec::Grover3, 0, m, n, 12_000)?;
            Ok((closed - sim).abs())
        })
        .collect();
    let mut worst_oracle: f64 = 0.0;
    for d in devs {
        worst_oracle = worst_oracle.max(d?);
    }
    checks.push(Check::upper(
        suite,
        "Eq-53 vs simulation, 1 <= m < n <= 12",
        worst_oracle,
        1e-8,
    ));

    for m in [1u32, 2] {
        let series = absorbed_series_1d(&CoinSpec::Grover3, 0, m, None, 30)?;
        checks.push(coeff_oracle_check(
            suite,
            format!("semi r coefficients t<=30, m={m}"),
            &GenFunHandle::grover3_semi(Component::R, m),
            &series,
        ));
    }
    for &(m, n) in &[(1u32, 3u32), (2, 5), (3, 7)] {
        let series = absorbed_series_1d(&CoinSpec::Grover3, 0, m, Some(n), 30)?;
        checks.push(coeff_oracle_check(
            suite,
            format!("finite r coefficients t<=30, m={m} n={n}"),
            &GenFunHandle::grover3_finite(Component::R, m, n),
            &series,
        ));
    }

    let mut worst_quad: f64 = 0.0;
    for &(m, n) in &[(1u32, 3u32), (2, 5), (3, 7)] {
        let quad = grover3_finite_probability(
            m,
            n,
            &ContourSpec::finite_default(),
            hadamard::finite_tol::<f64>(),
        )?;
        worst_quad = worst_quad.max((quad.value - grover3_finite_closed::<f64>(m, n)?).abs());
    }
    checks.push(Check::upper(
        suite,
        "finite Hadamard product vs Eq-53",
        worst_quad,
        1e-8,
    ));

    // Fig-4 exploration: P_n^(m)(1,0,0) + P_n^(n-m)(0,0,1) <= 1 with
    // equality at m = 1 (the right term is simulation-only)
    let n = 20u32;
    let sums: Vec<Result<f64>> = (1..n)
        .collect::<Vec<u32>>()
        .par_iter()
        .map(|&m| {
            let left = grover3_finite_closed::<f64>(m, n)?;
            let (right, _, _) = simulate_finite_1d(&CoinSpec::Grover3, 2, n - m, n, 12_000)?;
            Ok(left + right)
        })
        .collect();
    let mut max_sum = f64::NEG_INFINITY;
    let mut sum_at_1 = f64::NAN;
    for (i, s) in sums.into_iter().enumerate() {
        let s = s?;
        if i == 0 {
            sum_at_1 = s;
        }
        max_sum = max_sum.max(s);
    }
    checks.push(Check::upper(
        suite,
        format!("Fig-4 property max over m at n={n}"),
        max_sum,
        1.0 + 1e-9,
    ));
    checks.push(Check::upper(
        suite,
        "Fig-4 equality at m=1",
        (sum_at_1 - 1.0).abs(),
        1e-6,
    ));

    Ok(checks)
}

// ----------------------------------------------------------------- grover2d

pub fn suite_grover2d() -> Result<Vec<Check>> {
    let suite = "grover2d";
    let mut checks = Vec::new();

    let mut worst_resid: f64 = 0.0;
    for i in 0..32 {
        let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / 32.0;
        for k in 0..32 {
            let r = 0.1 + 0.9 * ((k % 8) as f64 + 0.6) / 8.0;
            let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / 32.0;
            let z = C64::from_polar(r.min(1.0), phi);
            let comp = solve_momentum_system(theta, z)?;
            if !comp.perturbed {
                worst_resid = worst_resid.max(system_residual(theta, z, &comp));
            }
        }
    }
    checks.push(Check::upper(
        suite,
        "momentum system residuals on 32x32 grid",
        worst_resid,
        1e-10,
    ));

    let contour = ContourSpec::new(1.0, 1 << 13, 2)?;
    let est = crate::grover2d::wall_absorption_semi(1, 256, &contour, 1e-8)?;
    checks.push(Check::lower(
        suite,
        "P_inf^(1) momentum >= 0.636",
        est.value,
        0.636,
    ));
    checks.push(Check::upper(
        suite,
        "P_inf^(1) momentum <= 0.656",
        est.value,
        0.656,
    ));

    let sim = run_wall_2d::<f64>(&Wall2dConfig {
        m: 1,
        wall_right: None,
        steps: 600,
        half_width: 60,
        record_wall_amplitudes: false,
        prune_threshold: 1e-16,
    })?;
    checks.push(Check::upper(
        suite,
        "momentum vs direct simulation (width 121, 600 steps)",
        (est.value - sim.absorbed_left).abs(),
        1e-2,
    ));

    checks.push(momentum_coefficient_oracle(suite, 14)?);
    checks.push(finite_wall_coefficient_oracle(suite, 3, 12)?);
    checks.push(inverse_fourier_site_oracle(suite, 4, 14)?);

    // segmenting identity for F^(m) in momentum space
    let mut worst_seg: f64 = 0.0;
    for m in 2..=4u32 {
        for k in 0..24 {
            let theta = -2.9 + 0.27 * k as f64;
            let z = C64::from_polar(0.2 + 0.03 * (k % 8) as f64, 0.9 * k as f64);
            let c = solve_momentum_system(theta, z)?;
            let lhs = c.f_plus * c.f_minus.powu(m - 1);
            let mut rhs = c.f_plus;
            for _ in 1..m {
                rhs *= c.f_minus;
            }
            worst_seg = worst_seg.max((lhs - rhs).norm());
        }
    }
    checks.push(Check::upper(
        suite,
        "momentum segmenting identity, m <= 4",
        worst_seg,
        1e-10,
    ));

    let coin = CoinSpec::<f64>::grover_d(2)?;
    let dirs = coin.directions();
    let walls = AbsorberSet::walls([0])?;
    let mut worst_paths: f64 = 0.0;
    for t in 1..=8u32 {
        let bf =
            brute_force_amplitude((&[1, 0], 0), (&[0, 1], 1), &coin, &dirs, Some(&walls), t)?;
        let mut state = WalkState::point(vec![1, 0], 0);
        for k in 1..=t {
            state = step(&state, &coin, &dirs)?;
            if k < t {
                let (rest, _) = absorb_measure(&state, &walls);
                state = rest;
            }
        }
        worst_paths = worst_paths.max((bf - state.amplitude(&[0, 1], 1)).norm());
    }
    checks.push(Check::upper(
        suite,
        "path sum equals operator evolution, t <= 8",
        worst_paths,
        1e-12,
    ));

    let probe = conjecture61_probe::<f64>(
        &[2, 3, 4, 5, 6, 8, 16, 32],
        &ProbeBudget {
            theta_nodes: 128,
            z_nodes: 1 << 11,
            simulate_up_to: 4,
            sim_steps: 300,
            sim_half_width: 60,
        },
    )?;
    checks.push(Check::report(
        suite,
        "conjecture 6.1: Richardson-extrapolated limit",
        probe.richardson_limit,
    ));
    checks.push(Check::report(
        suite,
        "conjecture 6.1: distance to 2/3",
        probe.distance_to_target,
    ));
    checks.push(Check::report(
        suite,
        "conjecture 6.1: linear-fractional fit residual",
        probe.lf_fit_residual,
    ));
    checks.push(Check::report(
        suite,
        "P_inf below finite-n values (gap at n=32)",
        probe
            .rows
            .last()
            .map(|r| r.momentum - probe.semi_infinite)
            .unwrap_or(f64::NAN),
    ));

    Ok(checks)
}

/// Fourier-in-theta x Taylor-in-z coefficients of `F^(1)` vs the dense
/// simulator's wall-arrival amplitudes summed along the wall.
fn momentum_coefficient_oracle(suite: &'static str, tmax: u32) -> Result<Check> {
    let cfg = Wall2dConfig {
        m: 1,
        wall_right: None,
        steps: tmax,
        half_width: tmax + 1,
        record_wall_amplitudes: true,
        prune_threshold: 0.0,
    };
    let sim = run_wall_2d::<f64>(&cfg)?;
    let mut worst: f64 = 0.0;
    for theta in [0.0, 0.7, 2.1, -1.3, 3.0] {
        let reference: Vec<C64> = sim
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
        let tc = taylor_coefficients_n(
            |z| {
                solve_momentum_system(theta, z)
                    .map(|c| c.f_plus)
                    .unwrap_or(C64::new(f64::NAN, f64::NAN))
            },
            tmax as usize + 1,
            0.6,
            512,
        )?;
        for (t, want) in reference.iter().enumerate() {
            worst = worst.max((tc.coeffs[t + 1] - want).norm());
        }
    }
    Ok(Check::upper(
        suite,
        format!("momentum F^(1) coefficients vs 2D simulation, t <= {tmax}"),
        worst,
        1e-8,
    ))
}

/// Same oracle for the double-wall recursion at lattice size `n`.
fn finite_wall_coefficient_oracle(suite: &'static str, n: u32, tmax: u32) -> Result<Check> {
    let cfg = Wall2dConfig {
        m: 1,
        wall_right: Some(n),
        steps: tmax,
        half_width: tmax + 1,
        record_wall_amplitudes: true,
        prune_threshold: 0.0,
    };
    let sim = run_wall_2d::<f64>(&cfg)?;
    let mut worst: f64 = 0.0;
    for theta in [0.0, 0.7, 2.1, -1.3, 3.0] {
        let reference: Vec<C64> = sim
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
        let tc = taylor_coefficients_n(
            |z| wall_recursion_finite(n, theta, z).unwrap_or(C64::new(f64::NAN, f64::NAN)),
            tmax as usize + 1,
            0.6,
            512,
        )?;
        for (t, want) in reference.iter().enumerate() {
            worst = worst.max((tc.coeffs[t + 1] - want).norm());
        }
    }
    Ok(Check::upper(
        suite,
        format!("finite-wall recursion coefficients vs 2D simulation, n={n}, t <= {tmax}"),
        worst,
        1e-8,
    ))
}

/// Per-site `f_{S_+1, x}^(1)(z)` recovered by theta-quadrature vs the
/// simulator's per-site absorbed-amplitude series.
fn inverse_fourier_site_oracle(suite: &'static str, x_max: i32, tmax: u32) -> Result<Check> {
    let cfg = Wall2dConfig {
        m: 1,
        wall_right: None,
        steps: tmax,
        half_width: tmax + 1,
        record_wall_amplitudes: true,
        prune_threshold: 0.0,
    };
    let sim = run_wall_2d::<f64>(&cfg)?;
    let mut worst: f64 = 0.0;
    for x in -x_max..=x_max {
        let tc = taylor_coefficients_n(
            |z| {
                crate::grover2d::momentum_inverse_fourier(1, z, x_max, 256)
                    .map(|v| {
                        v.into_iter()
                            .find(|(xx, _)| *xx == x)
                            .map(|(_, val)| val)
                            .unwrap_or(C64::new(f64::NAN, f64::NAN))
                    })
                    .unwrap_or(C64::new(f64::NAN, f64::NAN))
            },
            tmax as usize + 1,
            0.6,
            128,
        )?;
        for t in 1..=tmax as usize {
            let want = sim.wall_amps[t - 1][(x + cfg.half_width as i32) as usize];
            worst = worst.max((tc.coeffs[t] - want).norm());
        }
    }
    Ok(Check::upper(
        suite,
        format!("inverse-Fourier site functions vs 2D simulation, |x| <= {x_max}, t <= {tmax}"),
        worst,
        1e-8,
    ))
}

// ------------------------------------------------------------ discrepancies

pub fn suite_discrepancies() -> Result<Vec<Check>> {
    let suite = "discrepancies";
    let mut checks = Vec::new();

    let coin = CoinSpec::<f64>::hadamard();
    let rep = two_state_recurrences(&coin, 50, 20, 16)?;
    checks.push(Check::expected_failure(
        suite,
        "printed lattice recurrence (|b| numerator) deviates",
        rep.printed_lattice,
        0.05,
    ));
    checks.push(Check::upper(
        suite,
        "corrected lattice recurrence (|b|^2 numerator) matches",
        rep.corrected_lattice,
        1e-12,
    ));
    let x = 1.0 / 2f64.sqrt();
    let printed_p3 = (x + 0.5) / 1.5;
    let true_p3 = two_state_finite_closed(&q10(&coin, 1, 3))?.p10;
    checks.push(Check::expected_failure(
        suite,
        "printed Eq-43 at Hadamard n=3 (0.80474 vs 2/3)",
        (printed_p3 - true_p3).abs(),
        0.1,
    ));

    // Eq-37 cross-term normalization kappa = 1/2, fixed by enumeration at
    // (m, n) = (1, 2)
    let alpha = C64::from_polar(0.6, 0.9);
    let beta = C64::from_polar(0.8, -0.4);
    let q = AbsorptionQuery::new(
        WalkFamily::TwoState,
        coin.clone(),
        1,
        Some(2),
        vec![alpha, beta],
    )?;
    let combo = two_state_finite_closed(&q)?;
    let (a, b) = (C64::new(x, 0.0), C64::new(x, 0.0));
    let direct = (-b.conj() * alpha + a.conj() * beta).norm_sqr();
    checks.push(Check::upper(
        suite,
        "H normalization kappa = 1/2 vs direct enumeration",
        (combo.p_left - direct).abs(),
        1e-12,
    ));
    let kappa_one = combo.p_left + 2.0 * (alpha * beta.conj() * combo.h).re;
    checks.push(Check::expected_failure(
        suite,
        "kappa = 1 reading deviates from the enumeration",
        (kappa_one - direct).abs(),
        1e-3,
    ));

    // Eq-32 trig form: printed sign fails away from Hadamard
    let coin2 = CoinSpec::<f64>::from_a_squared(0.2).unwrap();
    let eq31 = two_state_semi_closed(&coin2)?.value;
    let phi = 0.2f64.sqrt().acos();
    let pi = std::f64::consts::PI;
    let printed_trig = ((2.0 * phi).sin() + 2.0 * phi * (2.0 * phi).cos()) / (pi * phi.sin().powi(2));
    let corrected_trig = crate::closed_forms::two_state_semi_closed_trig(0.2f64.sqrt());
    checks.push(Check::expected_failure(
        suite,
        "printed Eq-32 sign at |a|^2=0.2 deviates from Eq-31",
        (printed_trig - eq31).abs(),
        0.1,
    ));
    checks.push(Check::upper(
        suite,
        "corrected Eq-32 sign matches Eq-31",
        (corrected_trig - eq31).abs(),
        1e-12,
    ));

    // Eq-45 first factor: the printed +2z variant equals 1 + the oracle-
    // locked generating function near z = 0 (spurious constant term)
    let z = C64::new(0.05, 0.0);
    let sq = (C64::new(9.0, 0.0) + z * 6.0 + z * z * 9.0).sqrt();
    let printed_r1 = (C64::new(3.0, 0.0) + z * 2.0 + z * z * 3.0 + (z - 1.0) * sq) / (z * 4.0);
    let corrected = crate::genfun::grover3_semi(Component::R, 1, z)?;
    checks.push(Check::upper(
        suite,
        "printed Eq-45 first factor equals 1 + corrected value near 0",
        (printed_r1 - corrected - C64::new(1.0, 0.0)).norm(),
        1e-3,
    ));
    checks.push(Check::expected_failure(
        suite,
        "printed Eq-45 first factor has a nonzero constant term",
        printed_r1.norm(),
        0.5,
    ));

    // unqualified reflection inequality fails at n = 2
    let refl = reflection_inequality_suite(&[coin.clone()], &[2], &[])?;
    checks.push(Check::expected_failure(
        suite,
        "unqualified reflection inequality fails at n=2 (2/pi > 1/2)",
        -refl.worst_small_n_gap,
        0.1,
    ));

    // printed 2D closed form is twice the oracle-locked solution
    let theta = 0.8f64;
    let zc = C64::from_polar(0.4, 0.5);
    let c = theta.cos();
    let num = (zc.powu(4) + (zc.powu(3) + zc) * c + 1.0) * 2.0;
    let rad = (zc * zc - 1.0).powu(2)
        * (zc * zc + zc * (c - 1.0) + 1.0)
        * (zc * zc + zc * (c + 1.0) + 1.0);
    let f_kernel = solve_momentum_system(theta, zc)?.f_plus;
    let s1 = (num - rad.sqrt() * 2.0) / (zc * (zc * zc + zc * (2.0 * c) + 1.0));
    let s2 = (num + rad.sqrt() * 2.0) / (zc * (zc * zc + zc * (2.0 * c) + 1.0));
    let printed = if (s1 - f_kernel * 2.0).norm() < (s2 - f_kernel * 2.0).norm() {
        s1
    } else {
        s2
    };
    checks.push(Check::upper(
        suite,
        "printed 2D closed form equals twice the system solution",
        (printed - f_kernel * 2.0).norm(),
        1e-10,
    ));

    Ok(checks)
}

/// Runs one named suite.
pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "classical" => suite_classical(),
        "two-state" => suite_two_state(),
        "grover3" => suite_grover3(),
        "grover2d" => suite_grover2d(),
        "discrepancies" => suite_discrepancies(),
        "all" => {
            let mut all = suite_classical()?;
            all.extend(suite_two_state()?);
            all.extend(suite_grover3()?);
            all.extend(suite_grover2d()?);
            all.extend(suite_discrepancies()?);
            Ok(all)
        }
        other => Err(crate::error::Error::Config(format!(
            "unknown suite '{other}' (expected all, two-state, grover3, classical, grover2d, discrepancies)"
        ))),
    }
}
