//! Coins and direction sets.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, WalkScalar};

/// The unitary coin of a walk.
///
/// Only the families used in this crate are representable: an arbitrary
/// two-state coin, the fixed 3x3 Grover matrix, and the `2d x 2d` Grover
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum CoinSpec<T: WalkScalar> {
    /// Realizes `[[a, b], [-conj(b), conj(a)]]` with `|a|^2 + |b|^2 = 1`.
    TwoState { a: Complex<T>, b: Complex<T> },
    /// The 3x3 Grover matrix `(1/3)[[-1,2,2],[2,-1,2],[2,2,-1]]`.
    Grover3,
    /// The `2d x 2d` Grover matrix `(1/d) J - I`.
    GroverD { d: usize },
}

impl<T: WalkScalar> CoinSpec<T> {
    /// Two-state coin, validating `|a|^2 + |b|^2 = 1` within `1e-12`.
    pub fn two_state(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        let defect = (a.norm_sqr() + b.norm_sqr() - T::one()).abs();
        if defect > lit(1e-12) {
            return Err(Error::Config(format!(
                "two-state coin is not normalized: | |a|^2 + |b|^2 - 1 | = {:e}",
                defect
            )));
        }
        Ok(CoinSpec::TwoState { a, b })
    }

    /// Two-state coin from real entries.
    pub fn two_state_real(a: T, b: T) -> Result<Self> {
        Self::two_state(Complex::new(a, T::zero()), Complex::new(b, T::zero()))
    }

    /// The Hadamard-like coin `a = b = 1/sqrt(2)`.
    pub fn hadamard() -> Self {
        let h = T::one() / lit::<T>(2.0).sqrt();
        CoinSpec::TwoState {
            a: Complex::new(h, T::zero()),
            b: Complex::new(h, T::zero()),
        }
    }

    /// Two-state coin with `|a|^2` given and both entries real positive.
    pub fn from_a_squared(a2: T) -> Result<Self> {
        if a2 <= T::zero() || a2 >= T::one() {
            return Err(Error::Config(format!(
                "|a|^2 must lie strictly between 0 and 1, got {a2}"
            )));
        }
        Self::two_state_real(a2.sqrt(), (T::one() - a2).sqrt())
    }

    /// The `2d x 2d` Grover coin.
    pub fn grover_d(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Config("GroverD needs d >= 1".into()));
        }
        Ok(CoinSpec::GroverD { d })
    }

    /// Dimension of the internal (direction) space.
    pub fn dimension(&self) -> usize {
        match self {
            CoinSpec::TwoState { .. } => 2,
            CoinSpec::Grover3 => 3,
            CoinSpec::GroverD { d } => 2 * d,
        }
    }

    /// The direction set this coin acts on.
    pub fn directions(&self) -> DirectionSet {
        match self {
            CoinSpec::TwoState { .. } => DirectionSet::line(),
            CoinSpec::Grover3 => DirectionSet::line_with_stay(),
            CoinSpec::GroverD { d } => DirectionSet::hypercubic(*d),
        }
    }

    /// Realized coin matrix.
    pub fn matrix(&self) -> CoinMatrix<T> {
        let dim = self.dimension();
        let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        match self {
            CoinSpec::TwoState { a, b } => {
                entries[0] = *a;
                entries[1] = *b;
                entries[2] = -b.conj();
                entries[3] = a.conj();
            }
            CoinSpec::Grover3 => {
                let third = lit::<T>(1.0 / 3.0);
                for row in 0..3 {
                    for col in 0..3 {
                        let v = if row == col { -third } else { third + third };
                        entries[row * 3 + col] = Complex::new(v, T::zero());
                    }
                }
            }
            CoinSpec::GroverD { d } => {
                let inv_d = T::one() / lit(*d as f64);
                for row in 0..dim {
                    for col in 0..dim {
                        let v = if row == col { inv_d - T::one() } else { inv_d };
                        entries[row * dim + col] = Complex::new(v, T::zero());
                    }
                }
            }
        }
        CoinMatrix { dim, entries }
    }
}

/// Dense coin matrix, row-major; `entry(to, from)` is the transition
/// amplitude picked up when the internal state changes `from -> to`.
#[derive(Debug, Clone)]
pub struct CoinMatrix<T: WalkScalar> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: WalkScalar> CoinMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, to: usize, from: usize) -> Complex<T> {
        self.entries[to * self.dim + from]
    }

    /// `max_row sum_col |(U^H U - I)[row][col]|`, the infinity-norm
    /// unitarity defect.
    pub fn unitarity_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for row in 0..n {
            let mut row_sum = T::zero();
            for col in 0..n {
                // (U^H U)[row][col] = sum_k conj(U[k][row]) U[k][col]
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc = acc + self.entry(k, row).conj() * self.entry(k, col);
                }
                if row == col {
                    acc = acc - Complex::new(T::one(), T::zero());
                }
                row_sum = row_sum + acc.norm();
            }
            if row_sum > worst {
                worst = row_sum;
            }
        }
        worst
    }
}

/// Ordered set of lattice translation vectors the internal states map to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    dims: usize,
    includes_stay: bool,
    directions: Vec<Vec<i64>>,
}

impl DirectionSet {
    /// One-dimensional `(R, L) = (+1, -1)`.
    pub fn line() -> Self {
        DirectionSet {
            dims: 1,
            includes_stay: false,
            directions: vec![vec![1], vec![-1]],
        }
    }

    /// One-dimensional with stay, `(R, S, L) = (+1, 0, -1)`.
    pub fn line_with_stay() -> Self {
        DirectionSet {
            dims: 1,
            includes_stay: true,
            directions: vec![vec![1], vec![0], vec![-1]],
        }
    }

    /// The `2d` unit vectors of `Z^d`, ordered
    /// `(S_{+1}, S_{-1}, ..., S_{+d}, S_{-d})`.
    pub fn hypercubic(d: usize) -> Self {
        let mut directions = Vec::with_capacity(2 * d);
        for axis in 0..d {
            for sign in [1i64, -1] {
                let mut v = vec![0i64; d];
                v[axis] = sign;
                directions.push(v);
            }
        }
        DirectionSet {
            dims: d,
            includes_stay: false,
            directions,
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn includes_stay(&self) -> bool {
        self.includes_stay
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn vector(&self, idx: usize) -> &[i64] {
        &self.directions[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.directions.iter()
    }
}
