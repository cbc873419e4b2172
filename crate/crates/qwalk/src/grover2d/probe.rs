//! Numeric probe of the conjectured double-wall limit
//! `lim_n P_n^(1) = 2/3` for `d = 2`.
//!
//! Everything in this module is reported, never asserted: the limit is
//! conjectural, and the absence of a linear-fractional recursion in `n` is
//! itself one of the observations being reproduced.

use crate::error::Result;
use crate::hadamard::ContourSpec;
use crate::scalar::{lit, WalkScalar};

use super::momentum::{wall_absorption_finite, wall_absorption_semi};
use super::sim::{run_wall_2d, Wall2dConfig};

/// Budgets for the probe.
#[derive(Debug, Clone, Copy)]
pub struct ProbeBudget {
    pub theta_nodes: usize,
    pub z_nodes: usize,
    /// Run the dense simulator alongside the momentum method for `n` up to
    /// this bound (0 disables simulation rows).
    pub simulate_up_to: u32,
    pub sim_steps: u32,
    pub sim_half_width: u32,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        ProbeBudget {
            theta_nodes: 128,
            z_nodes: 1 << 11,
            simulate_up_to: 6,
            sim_steps: 400,
            sim_half_width: 80,
        }
    }
}

/// One lattice size in the trend table.
#[derive(Debug, Clone, Copy)]
pub struct ProbeRow<T> {
    pub n: u32,
    pub momentum: T,
    pub simulation: Option<T>,
}

/// Trend report for the conjectured limit.
#[derive(Debug, Clone)]
pub struct ProbeReport<T> {
    pub rows: Vec<ProbeRow<T>>,
    /// Semi-infinite momentum value (the `~0.646` reference row).
    pub semi_infinite: T,
    /// Richardson extrapolation of the largest doubling pair, assuming
    /// second-order convergence in `1/n`.
    pub richardson_limit: T,
    /// The conjectured limit `2/3`.
    pub target: T,
    /// `|richardson_limit - 2/3|`.
    pub distance_to_target: T,
    /// Worst deviation of a least-squares linear-fractional fit
    /// `P_{n+1} = (alpha P_n + beta)/(gamma P_n + 1)` over consecutive rows;
    /// a large value reproduces the observation that no such recursion fits.
    pub lf_fit_residual: T,
}

/// Computes `P_n^(1)` along `n_list` (momentum method; simulation up to the
/// budget), extrapolates the limit, and fits a linear-fractional recursion
/// to the consecutive-`n` prefix.
pub fn conjecture61_probe<T: WalkScalar>(
    n_list: &[u32],
    budget: &ProbeBudget,
) -> Result<ProbeReport<T>> {
    let contour = ContourSpec::new(T::one(), budget.z_nodes.max(64), 2)?;
    let tol: T = lit(1e-8);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let momentum = wall_absorption_finite(n, budget.theta_nodes, &contour, tol)?.value;
        let simulation = if n <= budget.simulate_up_to && budget.simulate_up_to > 0 {
            let cfg = Wall2dConfig {
                m: 1,
                wall_right: Some(n),
                steps: budget.sim_steps,
                half_width: budget.sim_half_width,
                record_wall_amplitudes: false,
                prune_threshold: 0.0,
            };
            Some(run_wall_2d::<T>(&cfg)?.absorbed_left)
        } else {
            None
        };
        rows.push(ProbeRow {
            n,
            momentum,
            simulation,
        });
    }

    let semi = wall_absorption_semi(1, budget.theta_nodes, &contour, tol)?.value;

    // Richardson on the largest n, 2n pair available
    let mut richardson = rows.last().map(|r| r.momentum).unwrap_or_else(T::zero);
    for r in rows.iter().rev() {
        if let Some(half) = rows.iter().find(|s| s.n * 2 == r.n) {
            let four: T = lit(4.0);
            let three: T = lit(3.0);
            richardson = (four * r.momentum - half.momentum) / three;
            break;
        }
    }

    // least-squares LF fit over consecutive-n pairs:
    // alpha P_k + beta - gamma P_k P_{k+1} = P_{k+1}
    let mut pairs = Vec::new();
    for w in rows.windows(2) {
        if w[1].n == w[0].n + 1 {
            pairs.push((w[0].momentum, w[1].momentum));
        }
    }
    let lf_fit_residual = if pairs.len() >= 4 {
        lf_fit_residual(&pairs)
    } else {
        T::nan()
    };

    let target: T = lit(2.0 / 3.0);
    Ok(ProbeReport {
        rows,
        semi_infinite: semi,
        richardson_limit: richardson,
        target,
        distance_to_target: (richardson - target).abs(),
        lf_fit_residual,
    })
}

/// Solves the 3x3 normal equations of the linear-fractional least squares
/// and returns the worst prediction error.
fn lf_fit_residual<T: WalkScalar>(pairs: &[(T, T)]) -> T {
    // unknowns (alpha, beta, gamma); rows: [p, 1, -p q] . x = q
    let mut ata = [[T::zero(); 3]; 3];
    let mut atb = [T::zero(); 3];
    for &(p, q) in pairs {
        let row = [p, T::one(), -p * q];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] = ata[i][j] + row[i] * row[j];
            }
            atb[i] = atb[i] + row[i] * q;
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system
    let mut m = [
        [ata[0][0], ata[0][1], ata[0][2], atb[0]],
        [ata[1][0], ata[1][1], ata[1][2], atb[1]],
        [ata[2][0], ata[2][1], ata[2][2], atb[2]],
    ];
    for col in 0..3 {
        let mut piv = col;
        for r in col + 1..3 {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        m.swap(col, piv);
        if m[col][col].abs() < lit(1e-30) {
            return T::nan();
        }
        for r in 0..3 {
            if r != col {
                let w = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] = m[r][c] - w * m[col][c];
                }
            }
        }
    }
    let alpha = m[0][3] / m[0][0];
    let beta = m[1][3] / m[1][1];
    let gamma = m[2][3] / m[2][2];
    let mut worst = T::zero();
    for &(p, q) in pairs {
        let pred = (alpha * p + beta) / (gamma * p + T::one());
        worst = worst.max((pred - q).abs());
    }
    worst
}
