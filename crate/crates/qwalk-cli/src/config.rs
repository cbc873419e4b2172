//! Run configuration: every run is describable either by CLI flags or by a
//! single JSON file with the same vocabulary. Unknown keys are rejected.

use num_complex::Complex;
use serde::Deserialize;

use qwalk::walk_core::CoinSpec;
use qwalk::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Compute,
    Verify,
    Sweep,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum WalkKind {
    Classical,
    TwoState,
    Grover3,
    Grover2d,
}

impl WalkKind {
    pub fn label(&self) -> &'static str {
        match self {
            WalkKind::Classical => "classical",
            WalkKind::TwoState => "two-state",
            WalkKind::Grover3 => "grover3",
            WalkKind::Grover2d => "grover2d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Simulation,
    Hadamard,
    ClosedForm,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Svg,
    JsonLines,
}

/// Lattice size: a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeOrInf(pub Option<u32>);

impl<'de> Deserialize<'de> for SizeOrInf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(SizeOrInf(Some(n))),
            Raw::Text(s) if s == "inf" => Ok(SizeOrInf(None)),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "expected a lattice size or \"inf\", got \"{s}\""
            ))),
        }
    }
}

impl std::str::FromStr for SizeOrInf {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "inf" || s == "infinity" {
            Ok(SizeOrInf(None))
        } else {
            s.parse::<u32>()
                .map(|n| SizeOrInf(Some(n)))
                .map_err(|e| format!("expected a lattice size or 'inf': {e}"))
        }
    }
}

/// Coin selector: `hadamard`, `grover3`, `a2:<x>` (real two-state coin with
/// `|a|^2 = x`), or `a:<re>,<im>;b:<re>,<im>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinConfig(pub String);

impl<'de> Deserialize<'de> for CoinConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(CoinConfig(String::deserialize(d)?))
    }
}

impl std::str::FromStr for CoinConfig {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(CoinConfig(s.to_string()))
    }
}

impl CoinConfig {
    pub fn build(&self) -> Result<CoinSpec<f64>> {
        let s = self.0.as_str();
        match s {
            "hadamard" => return Ok(CoinSpec::hadamard()),
            "grover3" => return Ok(CoinSpec::Grover3),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("a2:") {
            let a2: f64 = rest
                .parse()
                .map_err(|e| Error::Config(format!("bad |a|^2 in coin spec: {e}")))?;
            return CoinSpec::from_a_squared(a2);
        }
        if let Some(rest) = s.strip_prefix("a:") {
            // a:<re>,<im>;b:<re>,<im>
            let (a_part, b_part) = rest
                .split_once(";b:")
                .ok_or_else(|| Error::Config("coin spec needs ';b:' part".into()))?;
            let parse_c = |t: &str| -> Result<Complex<f64>> {
                let (re, im) = t
                    .split_once(',')
                    .ok_or_else(|| Error::Config(format!("expected re,im in '{t}'")))?;
                Ok(Complex::new(
                    re.trim()
                        .parse()
                        .map_err(|e| Error::Config(format!("bad real part: {e}")))?,
                    im.trim()
                        .parse()
                        .map_err(|e| Error::Config(format!("bad imaginary part: {e}")))?,
                ))
            };
            return CoinSpec::two_state(parse_c(a_part)?, parse_c(b_part)?);
        }
        Err(Error::Config(format!(
            "unknown coin '{s}' (expected hadamard, grover3, a2:<x>, or a:<re>,<im>;b:<re>,<im>)"
        )))
    }
}

/// Full run description; the JSON schema of `--config`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: CommandKind,
    pub walk: Option<WalkKind>,
    pub coin: Option<CoinConfig>,
    pub m: Option<u32>,
    pub n: Option<SizeOrInf>,
    /// Classical right-step probability.
    pub p: Option<f64>,
    /// Initial internal amplitudes as `[re, im]` pairs.
    pub amplitudes: Option<Vec<[f64; 2]>>,
    pub method: Option<MethodKind>,
    pub max_steps: Option<u32>,
    pub residual_tol: Option<f64>,
    /// Contour quadrature nodes (power of two).
    pub nodes: Option<usize>,
    /// Transverse momentum nodes for the 2D walk.
    pub theta_nodes: Option<usize>,
    /// Verify suite name.
    pub suite: Option<String>,
    /// Figure id (fig1..fig5).
    pub figure: Option<String>,
    /// Sweep parameter (`m`, `n`, or `a2`), with range.
    pub param: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<u32>,
    pub output: Option<std::path::PathBuf>,
    pub format: Option<OutputFormat>,
}

impl RunConfig {
    pub fn walk(&self) -> Result<WalkKind> {
        self.walk
            .ok_or_else(|| Error::Config("missing walk family".into()))
    }

    pub fn coin_for_walk(&self, walk: WalkKind) -> Result<CoinSpec<f64>> {
        match walk {
            WalkKind::Grover3 => Ok(CoinSpec::Grover3),
            WalkKind::Grover2d => CoinSpec::grover_d(2),
            WalkKind::TwoState => match &self.coin {
                Some(c) => {
                    let coin = c.build()?;
                    match coin {
                        CoinSpec::TwoState { .. } => Ok(coin),
                        other => Err(Error::Config(format!(
                            "walk two-state needs a two-state coin, got {other:?}"
                        ))),
                    }
                }
                None => Ok(CoinSpec::hadamard()),
            },
            WalkKind::Classical => Err(Error::Config(
                "classical walks take --p, not a coin".into(),
            )),
        }
    }

    pub fn amplitudes_or_default(&self, dim: usize) -> Result<Vec<Complex<f64>>> {
        match &self.amplitudes {
            Some(list) => {
                let v: Vec<Complex<f64>> =
                    list.iter().map(|[re, im]| Complex::new(*re, *im)).collect();
                if v.len() != dim {
                    return Err(Error::Config(format!(
                        "expected {dim} internal amplitudes, got {}",
                        v.len()
                    )));
                }
                Ok(v)
            }
            None => {
                let mut v = vec![Complex::new(0.0, 0.0); dim];
                v[0] = Complex::new(1.0, 0.0);
                Ok(v)
            }
        }
    }

    pub fn m_or_one(&self) -> u32 {
        self.m.unwrap_or(1)
    }

    pub fn n_value(&self) -> Option<u32> {
        self.n.map(|s| s.0).unwrap_or(None)
    }

    pub fn method_or_all(&self) -> MethodKind {
        self.method.unwrap_or(MethodKind::All)
    }
}
