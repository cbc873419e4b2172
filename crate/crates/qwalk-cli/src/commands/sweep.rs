//! `qwalk sweep`: evaluate one parameter range and emit a CSV table
//! (optionally an SVG rendering).

use clap::Args;
use rayon::prelude::*;

use qwalk::{Error, Result};

use crate::config::{
    CoinConfig, CommandKind, MethodKind, OutputFormat, RunConfig, SizeOrInf, WalkKind,
};
use crate::output::{render_svg, write_file, Series, Table};

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    walk: WalkKind,
    /// Swept parameter: m | n | a2 | p.
    #[arg(long)]
    param: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    /// Number of grid points for continuous parameters (a2, p); integer
    /// parameters step by 1.
    #[arg(long, default_value_t = 25)]
    steps: u32,
    #[arg(long)]
    coin: Option<CoinConfig>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value = "inf")]
    n: SizeOrInf,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodKind::ClosedForm)]
    method: MethodKind,
    #[arg(long)]
    max_steps: Option<u32>,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

pub fn run(args: &SweepArgs) -> Result<i32> {
    let cfg = RunConfig {
        command: CommandKind::Sweep,
        walk: Some(args.walk),
        coin: args.coin.clone(),
        m: Some(args.m),
        n: Some(args.n),
        p: args.p,
        amplitudes: None,
        method: Some(args.method),
        max_steps: args.max_steps,
        residual_tol: None,
        nodes: None,
        theta_nodes: None,
        suite: None,
        figure: None,
        param: Some(args.param.clone()),
        from: Some(args.from),
        to: Some(args.to),
        steps: Some(args.steps),
        output: args.output.clone(),
        format: Some(args.format),
    };
    run_from_config(&cfg)
}

pub fn run_from_config(cfg: &RunConfig) -> Result<i32> {
    let param = cfg
        .param
        .clone()
        .ok_or_else(|| Error::Config("sweep needs a 'param'".into()))?;
    let from = cfg
        .from
        .ok_or_else(|| Error::Config("sweep needs 'from'".into()))?;
    let to = cfg
        .to
        .ok_or_else(|| Error::Config("sweep needs 'to'".into()))?;
    if to < from {
        return Err(Error::Config("sweep needs from <= to".into()));
    }

    let values: Vec<f64> = match param.as_str() {
        "m" | "n" => (from.round() as i64..=to.round() as i64)
            .map(|v| v as f64)
            .collect(),
        "a2" | "p" => {
            let k = cfg.steps.unwrap_or(25).max(2);
            (0..k)
                .map(|i| from + (to - from) * i as f64 / (k - 1) as f64)
                .collect()
        }
        other => {
            return Err(Error::Config(format!(
                "unknown sweep parameter '{other}' (expected m, n, a2, p)"
            )))
        }
    };

    // evaluate in parallel, collect in order for deterministic output
    let rows: Vec<Result<Vec<(f64, f64, String, f64)>>> = values
        .par_iter()
        .map(|&v| {
            let mut point = cfg.clone();
            point.command = CommandKind::Compute;
            match param.as_str() {
                "m" => point.m = Some(v as u32),
                "n" => point.n = Some(SizeOrInf(Some(v as u32))),
                "a2" => point.coin = Some(CoinConfig(format!("a2:{v}"))),
                "p" => point.p = Some(v),
                _ => unreachable!(),
            }
            let results = super::compute::evaluate(&point)?;
            Ok(results
                .into_iter()
                .map(|r| (v, r.value, r.method.to_string(), r.residual))
                .collect())
        })
        .collect();

    let mut table = Table::new(&["walk", &param]);
    let walk = cfg.walk()?;
    let walk_name = walk.label().to_string();
    for row in rows {
        for (v, value, method, residual) in row? {
            table.push(
                vec![walk_name.clone(), format_param(v)],
                value,
                &method,
                residual,
            );
        }
    }

    print!("{}", table.render_text());
    if let Some(path) = cfg.output.as_ref() {
        match cfg.format.unwrap_or(OutputFormat::Csv) {
            OutputFormat::Csv => write_file(path, &table.to_csv())?,
            OutputFormat::JsonLines => {
                let mut out = String::new();
                for r in &table.rows {
                    out.push_str(&format!(
                        "{{\"walk\":\"{walk_name}\",\"{param}\":{},\"value\":{},\"method\":\"{}\",\"residual\":{}}}\n",
                        r.params[1],
                        crate::output::fmt_float(r.value),
                        r.method,
                        crate::output::fmt_float(r.residual),
                    ));
                }
                write_file(path, &out)?;
            }
            OutputFormat::Svg => {
                // one series per method
                let mut by_method: std::collections::BTreeMap<String, Vec<(f64, f64)>> =
                    Default::default();
                for r in &table.rows {
                    by_method
                        .entry(r.method.clone())
                        .or_default()
                        .push((r.params[1].parse().unwrap_or(f64::NAN), r.value));
                }
                let series: Vec<Series> = by_method
                    .into_iter()
                    .map(|(label, points)| Series { label, points })
                    .collect();
                write_file(
                    path,
                    &render_svg(&format!("{walk_name}: sweep over {param}"), &series),
                )?;
            }
        }
    }
    Ok(0)
}

fn format_param(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e9 {
        format!("{}", v as i64)
    } else {
        crate::output::fmt_float(v)
    }
}
