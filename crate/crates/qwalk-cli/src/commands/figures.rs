//! `qwalk figures`: deterministic CSV + SVG data files for the five plots.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex;
use rayon::prelude::*;

use qwalk::closed_forms::{
    classical_closed, grover3_finite_closed, two_state_finite_closed, two_state_limit_fixed_m,
    two_state_semi_closed, AbsorptionQuery, WalkFamily,
};
use qwalk::walk_core::{run_absorbing, AbsorberSet, CoinSpec, RunSpec, WalkState};
use qwalk::{Error, Result};

use crate::output::{render_svg, write_file, Series, Table};

type C64 = Complex<f64>;

#[derive(Args)]
pub struct FiguresArgs {
    /// Which figure: fig1 | fig2 | fig3 | fig4 | fig5 | all.
    #[arg(default_value = "all")]
    which: String,
    /// Output directory.
    #[arg(long, default_value = "figures")]
    out_dir: PathBuf,
}

pub fn run(args: &FiguresArgs) -> Result<i32> {
    run_named(&args.which, args.out_dir.clone())
}

pub fn run_named(which: &str, out_dir: PathBuf) -> Result<i32> {
    match which {
        "fig1" => fig1(&out_dir)?,
        "fig2" => fig2(&out_dir)?,
        "fig3" => fig3(&out_dir)?,
        "fig4" => fig4(&out_dir)?,
        "fig5" => fig5(&out_dir)?,
        "all" => {
            fig1(&out_dir)?;
            fig2(&out_dir)?;
            fig3(&out_dir)?;
            fig4(&out_dir)?;
            fig5(&out_dir)?;
        }
        other => {
            return Err(Error::Config(format!(
                "unknown figure '{other}' (expected fig1..fig5 or all)"
            )))
        }
    }
    Ok(0)
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

/// Classical left-absorption vs start position at n = 100.
fn fig1(dir: &Path) -> Result<()> {
    let n = 100usize;
    let mut table = Table::new(&["p", "m"]);
    let mut series = Vec::new();
    for &p in &[0.45, 0.5, 0.55] {
        let mut points = Vec::new();
        for m in 1..n {
            let v = classical_closed(p, 1.0 - p, m, Some(n))?;
            table.push(
                vec![format!("{p}"), m.to_string()],
                v,
                "closed-form",
                0.0,
            );
            points.push((m as f64, v));
        }
        series.push(Series {
            label: format!("p = {p}"),
            points,
        });
    }
    write_file(&dir.join("fig1.csv"), &table.to_csv())?;
    write_file(
        &dir.join("fig1.svg"),
        &render_svg("classical left absorption, n = 100", &series),
    )?;
    println!("wrote {}", dir.join("fig1.csv").display());
    Ok(())
}

/// Two-state `P_50^(m)(1,0)` vs m over the coin grid.
fn fig2(dir: &Path) -> Result<()> {
    let n = 50u32;
    let mut table = Table::new(&["a2", "m"]);
    let mut series = Vec::new();
    for &a2 in &[0.2, 0.35, 0.5, 0.65, 0.8] {
        let coin = CoinSpec::from_a_squared(a2)?;
        let mut points = Vec::new();
        for m in 1..n {
            let v = two_state_finite_closed(&q10(&coin, m, n))?.p10;
            table.push(vec![format!("{a2}"), m.to_string()], v, "closed-form", 0.0);
            points.push((m as f64, v));
        }
        series.push(Series {
            label: format!("|a|^2 = {a2}"),
            points,
        });
    }
    write_file(&dir.join("fig2.csv"), &table.to_csv())?;
    write_file(
        &dir.join("fig2.svg"),
        &render_svg("P_50^(m)(1,0) vs m", &series),
    )?;
    println!("wrote {}", dir.join("fig2.csv").display());
    Ok(())
}

/// Left panel: semi-infinite vs limiting finite probability across coins.
/// Right panel: cumulative absorbed mass vs time at the Hadamard point.
fn fig3(dir: &Path) -> Result<()> {
    let mut table = Table::new(&["panel", "series", "x"]);
    let mut left_semi = Vec::new();
    let mut left_lim = Vec::new();
    for k in 1..99 {
        let a2 = k as f64 / 99.0;
        let coin = CoinSpec::from_a_squared(a2)?;
        let semi = two_state_semi_closed(&coin)?.value;
        let lim = two_state_limit_fixed_m(&coin, 1)?;
        table.push(
            vec!["left".into(), "semi-infinite".into(), format!("{a2:.6}")],
            semi,
            "closed-form",
            0.0,
        );
        table.push(
            vec!["left".into(), "limit".into(), format!("{a2:.6}")],
            lim,
            "closed-form",
            0.0,
        );
        left_semi.push((a2, semi));
        left_lim.push((a2, lim));
    }

    // right panel: cumulative absorption vs t for n = 100 and semi-infinite
    let coin = CoinSpec::hadamard();
    let dirs = coin.directions();
    let tracked: BTreeSet<i64> = [0].into();
    for (label, absorbers) in [
        ("semi-infinite", AbsorberSet::points([0])?),
        ("n=100", AbsorberSet::points([0, 100])?),
    ] {
        let report = run_absorbing(
            &WalkState::point(vec![1], 0),
            &coin,
            &dirs,
            &absorbers,
            &tracked,
            RunSpec {
                max_steps: 400,
                residual_tol: 1e-30,
            },
        )?;
        let mut acc = 0.0;
        for (t, masses) in &report.per_step_mass {
            acc += masses.values().sum::<f64>();
            if t % 4 == 0 {
                table.push(
                    vec!["right".into(), label.into(), t.to_string()],
                    acc,
                    "simulation",
                    0.0,
                );
            }
        }
    }

    write_file(&dir.join("fig3.csv"), &table.to_csv())?;
    write_file(
        &dir.join("fig3.svg"),
        &render_svg(
            "semi-infinite vs limiting absorption",
            &[
                Series {
                    label: "P_inf^(1)(1,0)".into(),
                    points: left_semi,
                },
                Series {
                    label: "lim_n P_n^(1)(1,0)".into(),
                    points: left_lim,
                },
            ],
        ),
    )?;
    println!("wrote {}", dir.join("fig3.csv").display());
    Ok(())
}

/// `P_50^(m)(1,0,0) + P_50^(50-m)(0,0,1)` vs m; the right term is
/// simulation-only (the paper's closed forms cover the (1,0,0) channel).
fn fig4(dir: &Path) -> Result<()> {
    let n = 50u32;
    let rows: Vec<Result<(u32, f64)>> = (1..n)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| {
            let left = grover3_finite_closed::<f64>(m, n)?;
            let coin = CoinSpec::Grover3;
            let dirs = coin.directions();
            let absorbers = AbsorberSet::points([0, n as i64])?;
            let tracked: BTreeSet<i64> = [0].into();
            let report = run_absorbing(
                &WalkState::point(vec![(n - m) as i64], 2),
                &coin,
                &dirs,
                &absorbers,
                &tracked,
                RunSpec {
                    max_steps: 60_000,
                    residual_tol: 1e-13,
                },
            )?;
            Ok((m, left + report.probability))
        })
        .collect();
    let mut table = Table::new(&["m"]);
    let mut points = Vec::new();
    let mut max_sum = f64::NEG_INFINITY;
    for row in rows {
        let (m, sum) = row?;
        table.push(vec![m.to_string()], sum, "mixed", 0.0);
        points.push((m as f64, sum));
        max_sum = max_sum.max(sum);
    }
    if max_sum > 1.0 + 1e-9 {
        return Err(Error::Integrity {
            what: "fig4 sum exceeded 1".into(),
            value: max_sum,
        });
    }
    write_file(&dir.join("fig4.csv"), &table.to_csv())?;
    write_file(
        &dir.join("fig4.svg"),
        &render_svg(
            "P_50^(m)(1,0,0) + P_50^(50-m)(0,0,1)",
            &[Series {
                label: "sum".into(),
                points,
            }],
        ),
    )?;
    println!("wrote {}", dir.join("fig4.csv").display());
    Ok(())
}

/// Closed-form probability charts for the Hadamard two-state walk and the
/// Grover3 walk on small lattices.
fn fig5(dir: &Path) -> Result<()> {
    let mut table = Table::new(&["walk", "m", "n"]);
    let coin = CoinSpec::hadamard();
    let mut series = Vec::new();
    for n in [4u32, 6, 8, 10, 12] {
        let mut pts_h = Vec::new();
        let mut pts_g = Vec::new();
        for m in 1..n {
            let h = two_state_finite_closed(&q10(&coin, m, n))?.p10;
            table.push(
                vec!["two-state-hadamard".into(), m.to_string(), n.to_string()],
                h,
                "closed-form",
                0.0,
            );
            pts_h.push((m as f64, h));
            let g = grover3_finite_closed::<f64>(m, n)?;
            table.push(
                vec!["grover3".into(), m.to_string(), n.to_string()],
                g,
                "closed-form",
                0.0,
            );
            pts_g.push((m as f64, g));
        }
        if n == 12 {
            series.push(Series {
                label: "hadamard n=12".into(),
                points: pts_h,
            });
            series.push(Series {
                label: "grover3 n=12".into(),
                points: pts_g,
            });
        }
    }
    write_file(&dir.join("fig5.csv"), &table.to_csv())?;
    write_file(
        &dir.join("fig5.svg"),
        &render_svg("P_n^(m) closed forms", &series),
    )?;
    println!("wrote {}", dir.join("fig5.csv").display());
    Ok(())
}
