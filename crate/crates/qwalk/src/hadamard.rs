//! Numerical Hadamard products of power series via contour integration.
//!
//! `(f (.) g)(1) = (1/2 pi i) \int_{|w|=R} f(w) g(1/w) dw / w`; with
//! `g(z) = conj(f(conj z))` the second evaluator becomes the
//! conjugate-reciprocal `w -> conj(f(1/conj w))`, and on the unit circle the
//! integrand reduces to `|f|^2`. The trapezoidal rule on the circle is
//! spectrally accurate for the rational finite-walk integrands and
//! algebraically accurate near the branch points the semi-infinite
//! integrands carry on `|z| = 1`.
//!
//! Nodes sit at half-offset angles `2 pi (j + 1/2) / N`, which keeps the
//! evaluation away from `z = +-1` where several of the walk generating
//! functions have removable `0/0` points.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, WalkScalar};

/// Circle contour with doubling refinement.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec<T> {
    pub radius: T,
    pub nodes: usize,
    pub max_refinements: u32,
}

impl<T: WalkScalar> ContourSpec<T> {
    /// Validates `radius > 0` and `nodes` a power of two, at least 64.
    pub fn new(radius: T, nodes: usize, max_refinements: u32) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::Config("contour radius must be positive".into()));
        }
        if nodes < 64 || !nodes.is_power_of_two() {
            return Err(Error::Config(format!(
                "contour nodes must be a power of two >= 64, got {nodes}"
            )));
        }
        Ok(ContourSpec {
            radius,
            nodes,
            max_refinements,
        })
    }

    /// Unit-circle contour sized for rational (finite-walk) integrands.
    pub fn finite_default() -> Self {
        ContourSpec {
            radius: T::one(),
            nodes: 1 << 12,
            max_refinements: 6,
        }
    }

    /// Unit-circle contour sized for the branch-point (semi-infinite)
    /// integrands.
    pub fn semi_default() -> Self {
        ContourSpec {
            radius: T::one(),
            nodes: 1 << 18,
            max_refinements: 3,
        }
    }
}

/// Default tolerance paired with [`ContourSpec::finite_default`].
pub fn finite_tol<T: WalkScalar>() -> T {
    lit(1e-10)
}

/// Default tolerance paired with [`ContourSpec::semi_default`].
pub fn semi_tol<T: WalkScalar>() -> T {
    lit(1e-6)
}

/// Result of a Hadamard-product quadrature.
#[derive(Debug, Clone, Copy)]
pub struct HadamardValue<T> {
    pub value: T,
    /// Difference between the last two refinement levels.
    pub error_estimate: T,
    pub converged: bool,
    pub nodes_used: usize,
}

fn circle_mean<T, F>(mut eval: F, radius: T, nodes: usize) -> Complex<T>
where
    T: WalkScalar,
    F: FnMut(Complex<T>) -> Complex<T>,
{
    let two_pi = T::PI() + T::PI();
    let nf = lit::<T>(nodes as f64);
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..nodes {
        let phi = two_pi * (lit::<T>(j as f64) + lit(0.5)) / nf;
        let w = Complex::from_polar(radius, phi);
        let mut v = eval(w);
        if v.re.is_nan() || v.im.is_nan() {
            // nudge off a branch point by half a node spacing
            let w2 = Complex::from_polar(radius, phi + two_pi / (nf + nf));
            v = eval(w2);
        }
        acc = acc + v;
    }
    acc / nf
}

/// `(f (.) conj g(conj .))(1)` by trapezoidal quadrature on the circle.
///
/// `g_conj_reciprocal` must evaluate `w -> conj(g(1/conj w))`; on the unit
/// circle that is just `conj(g(w))`. The imaginary part of the mean must
/// stay below `1e-8` (integrity check) and is discarded. Refinement doubles
/// the node count until two successive estimates agree to `tol`; running
/// out of refinements is reported via `converged`, not an error.
pub fn hadamard_at_one<T, F, G>(
    f: F,
    g_conj_reciprocal: G,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>>
where
    T: WalkScalar,
    F: Fn(Complex<T>) -> Complex<T>,
    G: Fn(Complex<T>) -> Complex<T>,
{
    let est = hadamard_at_one_complex(&f, &g_conj_reciprocal, contour, tol)?;
    let scale = T::one().max(est.value.norm());
    let bound = lit::<T>(1e-8).max(T::epsilon() * lit(1e2));
    if !est.value.re.is_finite() || est.value.im.abs() > bound * scale {
        return Err(Error::Integrity {
            what: "hadamard_at_one imaginary part".into(),
            value: est.value.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(HadamardValue {
        value: est.value.re,
        error_estimate: est.error_estimate,
        converged: est.converged,
        nodes_used: est.nodes_used,
    })
}

/// Complex-valued variant (no reality check); used for the cross products
/// `H = (r (.) conj l(conj .))(1)` whose value is genuinely complex.
pub fn hadamard_at_one_complex<T, F, G>(
    f: F,
    g_conj_reciprocal: G,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<ComplexHadamardValue<T>>
where
    T: WalkScalar,
    F: Fn(Complex<T>) -> Complex<T>,
    G: Fn(Complex<T>) -> Complex<T>,
{
    let mut nodes = contour.nodes;
    let mut value = circle_mean(|w| f(w) * g_conj_reciprocal(w), contour.radius, nodes);
    let mut err = T::infinity();
    let mut converged = false;
    for _ in 0..contour.max_refinements {
        let next_nodes = nodes * 2;
        let next = circle_mean(|w| f(w) * g_conj_reciprocal(w), contour.radius, next_nodes);
        err = (next - value).norm();
        value = next;
        nodes = next_nodes;
        if err < tol {
            converged = true;
            break;
        }
    }
    Ok(ComplexHadamardValue {
        value,
        error_estimate: err,
        converged,
        nodes_used: nodes,
    })
}

/// Complex analogue of [`HadamardValue`].
#[derive(Debug, Clone, Copy)]
pub struct ComplexHadamardValue<T> {
    pub value: Complex<T>,
    pub error_estimate: T,
    pub converged: bool,
    pub nodes_used: usize,
}

/// Taylor coefficients of an analytic function with a per-coefficient
/// geometric tail bound on the aliasing error.
#[derive(Debug, Clone)]
pub struct TaylorCoefficients<T: WalkScalar> {
    pub coeffs: Vec<Complex<T>>,
    pub tail_bound: Vec<T>,
    pub radius: T,
    pub nodes: usize,
}

/// First `count` Taylor coefficients of `f` around 0 by contour extraction
/// on a circle of the given radius (< 1 required; the walk generating
/// functions are only guaranteed analytic inside the unit disk).
pub fn taylor_coefficients<T, F>(f: F, count: usize, radius: T) -> Result<TaylorCoefficients<T>>
where
    T: WalkScalar,
    F: Fn(Complex<T>) -> Complex<T>,
{
    taylor_coefficients_n(f, count, radius, (4 * count.max(64)).next_power_of_two())
}

/// As [`taylor_coefficients`] with an explicit node count.
pub fn taylor_coefficients_n<T, F>(
    f: F,
    count: usize,
    radius: T,
    nodes: usize,
) -> Result<TaylorCoefficients<T>>
where
    T: WalkScalar,
    F: Fn(Complex<T>) -> Complex<T>,
{
    if !(radius > T::zero() && radius < T::one()) {
        return Err(Error::Config(format!(
            "taylor extraction radius must lie in (0,1), got {radius}"
        )));
    }
    if count == 0 || nodes < 2 * count {
        return Err(Error::Config(
            "need count >= 1 and nodes >= 2*count for coefficient extraction".into(),
        ));
    }
    let two_pi = T::PI() + T::PI();
    let nf = lit::<T>(nodes as f64);
    let mut vals = Vec::with_capacity(nodes);
    let mut sup = T::zero();
    for j in 0..nodes {
        let phi = two_pi * (lit::<T>(j as f64) + lit(0.5)) / nf;
        let w = Complex::from_polar(radius, phi);
        let v = f(w);
        sup = sup.max(v.norm());
        vals.push((v, phi));
    }
    let mut coeffs = Vec::with_capacity(count);
    let mut tail = Vec::with_capacity(count);
    // geometric aliasing bound: |a_{k+N} R^N + ...| <= M R^{N-k} / (1 - R^N)
    let rn = radius.powi(nodes as i32);
    for k in 0..count {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (v, phi) in &vals {
            let rot = Complex::from_polar(T::one(), -*phi * lit::<T>(k as f64));
            acc = acc + *v * rot;
        }
        let rk = radius.powi(k as i32);
        coeffs.push(acc / (nf * rk));
        tail.push(sup * rn / (rk * (T::one() - rn)));
    }
    Ok(TaylorCoefficients {
        coeffs,
        tail_bound: tail,
        radius,
        nodes,
    })
}

/// `(1/2 pi i) \int_{|w|=R} f(w) dw` on the circle — used to check the
/// vanishing-integral property of rational functions with
/// `deg q > deg p + 1` whose poles all sit inside the contour.
pub fn contour_integral<T, F>(f: F, radius: T, nodes: usize) -> Complex<T>
where
    T: WalkScalar,
    F: Fn(Complex<T>) -> Complex<T>,
{
    circle_mean(|w| f(w) * w, radius, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn geometric_self_product() {
        // f = 1/(1 - z/2): (f (.) f)(1) = sum 4^{-k} = 4/3.
        let f = |z: C| (C::new(1.0, 0.0) - z * 0.5).inv();
        let contour = ContourSpec::new(1.0, 256, 4).unwrap();
        let got = hadamard_at_one(f, |z| f(z).conj(), &contour, 1e-12).unwrap();
        assert!((got.value - 4.0 / 3.0).abs() < 1e-12, "{}", got.value);
        assert!(got.converged);
    }

    #[test]
    fn polynomial_exactness() {
        // random-ish fixed polynomials of degree 30: quadrature equals the
        // coefficient dot product once nodes > 2*degree.
        let coeff_a: Vec<f64> = (0..=30).map(|k| ((k * 37 + 11) % 19) as f64 / 19.0).collect();
        let coeff_b: Vec<f64> = (0..=30).map(|k| ((k * 53 + 7) % 23) as f64 / 23.0 - 0.4).collect();
        let eval = |c: &[f64], z: C| {
            let mut acc = C::new(0.0, 0.0);
            for &ck in c.iter().rev() {
                acc = acc * z + C::new(ck, 0.0);
            }
            acc
        };
        let exact: f64 = coeff_a.iter().zip(&coeff_b).map(|(x, y)| x * y).sum();
        let a = coeff_a.clone();
        let b = coeff_b.clone();
        let contour = ContourSpec::new(1.0, 64, 2).unwrap();
        let got = hadamard_at_one(
            move |z| eval(&a, z),
            move |z| eval(&b, z.inv().conj()).conj(),
            &contour,
            1e-12,
        )
        .unwrap();
        assert!((got.value - exact).abs() < 1e-12, "{} vs {exact}", got.value);
    }

    #[test]
    fn taylor_of_z_squared() {
        let got = taylor_coefficients(|z: C| z * z, 5, 0.5).unwrap();
        for (k, c) in got.coeffs.iter().enumerate() {
            let expect = if k == 2 { 1.0 } else { 0.0 };
            assert!((c - C::new(expect, 0.0)).norm() < 1e-12, "k={k}: {c}");
        }
    }

    #[test]
    fn taylor_linearity() {
        let f = |z: C| (C::new(1.0, 0.0) - z * 0.3).inv();
        let g = |z: C| (C::new(1.0, 0.0) + z * z * 0.4).inv();
        let cf = taylor_coefficients(f, 12, 0.6).unwrap();
        let cg = taylor_coefficients(g, 12, 0.6).unwrap();
        let cs = taylor_coefficients(|z| f(z) + g(z), 12, 0.6).unwrap();
        for k in 0..12 {
            let sum = cf.coeffs[k] + cg.coeffs[k];
            assert!((cs.coeffs[k] - sum).norm() < 1e-12);
        }
    }

    #[test]
    fn vanishing_integral_for_steep_rationals() {
        // poles inside the contour, deg q >= deg p + 2 => integral 0.
        let poles = [
            C::new(0.3, 0.1),
            C::new(-0.2, 0.4),
            C::new(0.1, -0.5),
            C::new(-0.4, -0.2),
        ];
        // numerator degree 2 < 4 - 1
        let f = move |z: C| {
            let p = z * z * C::new(0.7, 0.2) + z * C::new(-0.3, 0.5) + C::new(1.1, 0.0);
            let mut q = C::new(1.0, 0.0);
            for pole in poles {
                q *= z - pole;
            }
            p / q
        };
        let integral = contour_integral(f, 1.0, 1 << 12);
        assert!(integral.norm() < 1e-10, "{integral}");
    }

    #[test]
    fn nonconvergence_is_flagged_not_error() {
        // absurdly tight tolerance, one refinement: flagged non-converged.
        let f = |z: C| (C::new(1.0, 0.0) - z * 0.99).inv();
        let contour = ContourSpec::new(1.0, 64, 1).unwrap();
        let got = hadamard_at_one(f, |z| f(z).conj(), &contour, 1e-300).unwrap();
        assert!(!got.converged);
        assert!(got.value.is_finite());
    }

    #[test]
    fn bad_contours_rejected() {
        assert!(ContourSpec::new(1.0f64, 63, 1).is_err());
        assert!(ContourSpec::new(1.0f64, 96, 1).is_err());
        assert!(ContourSpec::new(-1.0f64, 64, 1).is_err());
        assert!(taylor_coefficients(|z: C| z, 4, 1.5).is_err());
    }
}
