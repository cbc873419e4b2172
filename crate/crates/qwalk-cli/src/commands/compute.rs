//! `qwalk compute`: one absorption probability by the requested method(s).

use std::collections::BTreeSet;

use clap::Args;
use num_complex::Complex;

use qwalk::closed_forms::{
    eq39_probability, grover3_finite_closed, grover3_semi_closed, two_state_finite_closed,
    two_state_semi_closed, AbsorptionQuery, WalkFamily,
};
use qwalk::genfun::{cross_probability, self_probability, Component, GenFunHandle};
use qwalk::grover2d::{run_wall_2d, wall_absorption_finite, wall_absorption_semi, Wall2dConfig};
use qwalk::hadamard::ContourSpec;
use qwalk::walk_core::{classical_absorption, run_absorbing, AbsorberSet, RunSpec, WalkState};
use qwalk::{Error, Result};

use crate::config::{
    CoinConfig, CommandKind, MethodKind, OutputFormat, RunConfig, SizeOrInf, WalkKind,
};
use crate::output::{fmt_float, write_file, Table};

#[derive(Args)]
pub struct ComputeArgs {
    /// Walk family.
    #[arg(long, value_enum)]
    walk: WalkKind,
    /// Coin: hadamard | grover3 | a2:<x> | a:<re>,<im>;b:<re>,<im>.
    #[arg(long)]
    coin: Option<CoinConfig>,
    /// Initial position (strictly inside the boundaries).
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Lattice size, or 'inf' for the semi-infinite problem.
    #[arg(long, default_value = "inf")]
    n: SizeOrInf,
    /// Right-step probability (classical walk only).
    #[arg(long)]
    p: Option<f64>,
    /// Initial internal amplitudes, e.g. --amplitudes 0.6,0 0,0.8
    #[arg(long, num_args = 1.., value_parser = parse_amp)]
    amplitudes: Option<Vec<[f64; 2]>>,
    #[arg(long, value_enum, default_value_t = MethodKind::All)]
    method: MethodKind,
    #[arg(long)]
    max_steps: Option<u32>,
    #[arg(long)]
    residual_tol: Option<f64>,
    /// Contour quadrature nodes (power of two, >= 64).
    #[arg(long)]
    nodes: Option<usize>,
    /// Transverse momentum nodes (2D walk).
    #[arg(long)]
    theta_nodes: Option<usize>,
    /// Output file path.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

fn parse_amp(s: &str) -> std::result::Result<[f64; 2], String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im got '{s}'"))?;
    Ok([
        re.trim().parse().map_err(|e| format!("bad re: {e}"))?,
        im.trim().parse().map_err(|e| format!("bad im: {e}"))?,
    ])
}

impl ComputeArgs {
    pub fn into_config(self) -> RunConfig {
        RunConfig {
            command: CommandKind::Compute,
            walk: Some(self.walk),
            coin: self.coin,
            m: Some(self.m),
            n: Some(self.n),
            p: self.p,
            amplitudes: self.amplitudes,
            method: Some(self.method),
            max_steps: self.max_steps,
            residual_tol: self.residual_tol,
            nodes: self.nodes,
            theta_nodes: self.theta_nodes,
            suite: None,
            figure: None,
            param: None,
            from: None,
            to: None,
            steps: None,
            output: self.output,
            format: self.format,
        }
    }
}

/// One method's estimate.
pub struct MethodResult {
    pub method: &'static str,
    pub value: f64,
    pub residual: f64,
}

pub fn run(cfg: &RunConfig) -> Result<i32> {
    match cfg.command {
        CommandKind::Compute => {}
        CommandKind::Verify => {
            let suite = cfg.suite.clone().unwrap_or_else(|| "all".into());
            return super::verify::run_named(&suite, cfg.output.as_deref());
        }
        CommandKind::Sweep => return super::sweep::run_from_config(cfg),
        CommandKind::Figures => {
            let which = cfg
                .figure
                .clone()
                .ok_or_else(|| Error::Config("figures config needs a 'figure' key".into()))?;
            return super::figures::run_named(
                &which,
                cfg.output
                    .clone()
                    .unwrap_or_else(|| std::path::PathBuf::from("figures")),
            );
        }
    }

    let results = evaluate(cfg)?;
    if results.is_empty() {
        return Err(Error::Config(
            "no applicable method for this walk; pick one explicitly".into(),
        ));
    }

    let walk = cfg.walk()?;
    let coin_desc = match walk {
        WalkKind::Classical => format!("p={}", cfg.p.unwrap_or(0.5)),
        WalkKind::TwoState => cfg
            .coin
            .clone()
            .map(|c| c.0)
            .unwrap_or_else(|| "hadamard".into()),
        WalkKind::Grover3 => "grover3".into(),
        WalkKind::Grover2d => "grover-d2".into(),
    };
    let n_desc = match cfg.n_value() {
        Some(n) => n.to_string(),
        None => "inf".into(),
    };

    let mut table = Table::new(&["walk", "coin", "m", "n"]);
    for r in &results {
        table.push(
            vec![
                walk.label().to_string(),
                coin_desc.clone(),
                cfg.m_or_one().to_string(),
                n_desc.clone(),
            ],
            r.value,
            r.method,
            r.residual,
        );
    }
    print!("{}", table.render_text());
    if results.len() > 1 {
        let mut max_dev: f64 = 0.0;
        for i in 0..results.len() {
            for j in i + 1..results.len() {
                max_dev = max_dev.max((results[i].value - results[j].value).abs());
            }
        }
        println!("max pairwise deviation: {}", fmt_float(max_dev));
    }

    match (cfg.output.as_ref(), cfg.format.unwrap_or(OutputFormat::Csv)) {
        (None, _) => {}
        (Some(path), OutputFormat::Csv) => write_file(path, &table.to_csv())?,
        (Some(path), OutputFormat::JsonLines) => {
            let mut out = String::new();
            for r in &results {
                out.push_str(&format!(
                    "{{\"walk\":\"{}\",\"coin\":\"{coin_desc}\",\"m\":{},\"n\":\"{n_desc}\",\"method\":\"{}\",\"value\":{},\"residual\":{}}}\n",
                    walk.label(),
                    cfg.m_or_one(),
                    r.method,
                    fmt_float(r.value),
                    fmt_float(r.residual),
                ));
            }
            write_file(path, &out)?;
        }
        (Some(_), OutputFormat::Svg) => {
            return Err(Error::Config(
                "svg output applies to sweep and figures, not compute".into(),
            ))
        }
    }
    Ok(0)
}

/// Evaluates the requested method(s); `All` skips routes that do not exist
/// for the walk.
pub fn evaluate(cfg: &RunConfig) -> Result<Vec<MethodResult>> {
    let walk = cfg.walk()?;
    let requested = cfg.method_or_all();
    let mut out = Vec::new();
    let methods: &[MethodKind] = match requested {
        MethodKind::All => &[
            MethodKind::Simulation,
            MethodKind::Hadamard,
            MethodKind::ClosedForm,
        ],
        MethodKind::Simulation => &[MethodKind::Simulation],
        MethodKind::Hadamard => &[MethodKind::Hadamard],
        MethodKind::ClosedForm => &[MethodKind::ClosedForm],
    };
    for &method in methods {
        match evaluate_one(cfg, walk, method) {
            Ok(r) => out.push(r),
            Err(e) if requested == MethodKind::All && e.is_config() => {
                eprintln!("note: skipping {method:?}: {e}");
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn evaluate_one(cfg: &RunConfig, walk: WalkKind, method: MethodKind) -> Result<MethodResult> {
    match walk {
        WalkKind::Classical => classical(cfg, method),
        WalkKind::TwoState => two_state(cfg, method),
        WalkKind::Grover3 => grover3(cfg, method),
        WalkKind::Grover2d => grover2d(cfg, method),
    }
}

fn classical(cfg: &RunConfig, method: MethodKind) -> Result<MethodResult> {
    let p = cfg.p.unwrap_or(0.5);
    let q = 1.0 - p;
    let m = cfg.m_or_one() as usize;
    let n = cfg.n_value().map(|n| n as usize);
    match method {
        MethodKind::Simulation => Ok(MethodResult {
            method: "simulation",
            value: classical_absorption(p, q, m, n)?,
            residual: 0.0,
        }),
        MethodKind::ClosedForm => Ok(MethodResult {
            method: "closed-form",
            value: qwalk::closed_forms::classical_closed(p, q, m, n)?,
            residual: 0.0,
        }),
        MethodKind::Hadamard => Err(Error::Config(
            "the classical walk has no Hadamard-product route".into(),
        )),
        MethodKind::All => unreachable!(),
    }
}

fn default_contours(cfg: &RunConfig, semi: bool) -> Result<(ContourSpec<f64>, f64)> {
    if semi {
        let nodes = cfg.nodes.unwrap_or(1 << 18);
        Ok((ContourSpec::new(1.0, nodes, 3)?, 1e-6))
    } else {
        let nodes = cfg.nodes.unwrap_or(1 << 12);
        Ok((ContourSpec::new(1.0, nodes, 6)?, 1e-10))
    }
}

fn two_state(cfg: &RunConfig, method: MethodKind) -> Result<MethodResult> {
    let coin = cfg.coin_for_walk(WalkKind::TwoState)?;
    let m = cfg.m_or_one();
    let n = cfg.n_value();
    let amps = cfg.amplitudes_or_default(2)?;
    let (alpha, beta) = (amps[0], amps[1]);
    match method {
        MethodKind::Simulation => {
            let dirs = coin.directions();
            let absorbers = match n {
                Some(n) => AbsorberSet::points([0, n as i64])?,
                None => AbsorberSet::points([0])?,
            };
            let tracked: BTreeSet<i64> = [0].into();
            let report = run_absorbing(
                &WalkState::line_source(m as i64, &amps),
                &coin,
                &dirs,
                &absorbers,
                &tracked,
                RunSpec {
                    max_steps: cfg.max_steps.unwrap_or(if n.is_some() { 60_000 } else { 2000 }),
                    residual_tol: cfg.residual_tol.unwrap_or(1e-12),
                },
            )?;
            Ok(MethodResult {
                method: "simulation",
                value: report.probability,
                residual: report.residual_mass,
            })
        }
        MethodKind::Hadamard => {
            let (contour, tol) = default_contours(cfg, n.is_none())?;
            let (r, l) = match n {
                Some(n) => (
                    GenFunHandle::two_state_finite(Component::R, m, n, coin.clone()),
                    GenFunHandle::two_state_finite(Component::L, m, n, coin.clone()),
                ),
                None => (
                    GenFunHandle::two_state_semi(Component::R, m, coin.clone()),
                    GenFunHandle::two_state_semi(Component::L, m, coin.clone()),
                ),
            };
            let p10 = self_probability(&r, &contour, tol)?;
            let p01 = self_probability(&l, &contour, tol)?;
            let h = cross_probability(&r, &l, &contour, tol)?;
            let cross = (alpha * beta.conj() * h).re;
            Ok(MethodResult {
                method: "hadamard",
                value: alpha.norm_sqr() * p10.value + beta.norm_sqr() * p01.value + 2.0 * cross,
                residual: p10.error_estimate.max(p01.error_estimate),
            })
        }
        MethodKind::ClosedForm => match n {
            Some(n) => {
                let q = AbsorptionQuery::new(
                    WalkFamily::TwoState,
                    coin.clone(),
                    m,
                    Some(n),
                    amps.clone(),
                )?;
                Ok(MethodResult {
                    method: "closed-form",
                    value: two_state_finite_closed(&q)?.p_left,
                    residual: 0.0,
                })
            }
            None => {
                if m != 1 {
                    return Err(Error::Config(
                        "semi-infinite closed form covers m = 1 only; use hadamard or simulation"
                            .into(),
                    ));
                }
                let p10 = two_state_semi_closed(&coin)?.value;
                Ok(MethodResult {
                    method: "closed-form",
                    value: eq39_probability(&coin, alpha, beta, p10)?,
                    residual: 0.0,
                })
            }
        },
        MethodKind::All => unreachable!(),
    }
}

fn grover3(cfg: &RunConfig, method: MethodKind) -> Result<MethodResult> {
    let m = cfg.m_or_one();
    let n = cfg.n_value();
    let amps = cfg.amplitudes_or_default(3)?;
    let is_100 = (amps[0] - Complex::new(1.0, 0.0)).norm() < 1e-12
        && amps[1].norm() < 1e-12
        && amps[2].norm() < 1e-12;
    match method {
        MethodKind::Simulation => {
            let coin = qwalk::walk_core::CoinSpec::Grover3;
            let dirs = coin.directions();
            let absorbers = match n {
                Some(n) => AbsorberSet::points([0, n as i64])?,
                None => AbsorberSet::points([0])?,
            };
            let tracked: BTreeSet<i64> = [0].into();
            let report = run_absorbing(
                &WalkState::line_source(m as i64, &amps),
                &coin,
                &dirs,
                &absorbers,
                &tracked,
                RunSpec {
                    max_steps: cfg.max_steps.unwrap_or(if n.is_some() { 12_000 } else { 2000 }),
                    residual_tol: cfg.residual_tol.unwrap_or(1e-12),
                },
            )?;
            Ok(MethodResult {
                method: "simulation",
                value: report.probability,
                residual: report.residual_mass,
            })
        }
        MethodKind::Hadamard => {
            if !is_100 {
                return Err(Error::Config(
                    "the Grover3 generating-function route covers the (1,0,0) channel; \
                     use simulation for other internal states"
                        .into(),
                ));
            }
            let (contour, tol) = default_contours(cfg, n.is_none())?;
            let handle = match n {
                Some(n) => GenFunHandle::grover3_finite(Component::R, m, n),
                None => GenFunHandle::grover3_semi(Component::R, m),
            };
            let est = self_probability(&handle, &contour, tol)?;
            Ok(MethodResult {
                method: "hadamard",
                value: est.value,
                residual: est.error_estimate,
            })
        }
        MethodKind::ClosedForm => {
            if !is_100 {
                return Err(Error::Config(
                    "the published Grover3 closed forms cover the (1,0,0) channel only".into(),
                ));
            }
            match n {
                Some(n) => Ok(MethodResult {
                    method: "closed-form",
                    value: grover3_finite_closed::<f64>(m, n)?,
                    residual: 0.0,
                }),
                None => {
                    if m != 1 {
                        return Err(Error::Config(
                            "the semi-infinite Grover3 closed form covers m = 1 only".into(),
                        ));
                    }
                    Ok(MethodResult {
                        method: "closed-form",
                        value: grover3_semi_closed::<f64>(),
                        residual: 0.0,
                    })
                }
            }
        }
        MethodKind::All => unreachable!(),
    }
}

fn grover2d(cfg: &RunConfig, method: MethodKind) -> Result<MethodResult> {
    let m = cfg.m_or_one();
    let n = cfg.n_value();
    match method {
        MethodKind::Simulation => {
            let steps = cfg.max_steps.unwrap_or(600);
            let sim = run_wall_2d::<f64>(&Wall2dConfig {
                m,
                wall_right: n,
                steps,
                half_width: 60,
                record_wall_amplitudes: false,
                prune_threshold: 1e-16,
            })?;
            Ok(MethodResult {
                method: "simulation",
                value: sim.absorbed_left,
                residual: sim.residual + sim.truncated,
            })
        }
        MethodKind::Hadamard => {
            let theta_nodes = cfg.theta_nodes.unwrap_or(256);
            let contour = ContourSpec::new(1.0, cfg.nodes.unwrap_or(1 << 12), 3)?;
            let est = match n {
                None => wall_absorption_semi::<f64>(m, theta_nodes, &contour, 1e-4)?,
                Some(n) => {
                    if m != 1 {
                        return Err(Error::Config(
                            "the finite-wall momentum route covers m = 1".into(),
                        ));
                    }
                    wall_absorption_finite::<f64>(n, theta_nodes, &contour, 1e-6)?
                }
            };
            Ok(MethodResult {
                method: "hadamard",
                value: est.value,
                residual: est.max_inner_error,
            })
        }
        MethodKind::ClosedForm => Err(Error::Config(
            "no closed form is published for the 2D wall problem".into(),
        )),
        MethodKind::All => unreachable!(),
    }
}
