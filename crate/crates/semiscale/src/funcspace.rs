//! Function representation, grids, and the norms and seminorms every other
//! module consumes.
//!
//! Elements of the base space are bounded continuous functions on the real
//! line, stored as closed-form evaluation rules rather than sampled arrays:
//! the translation semigroup needs exact values at arbitrary shifted points
//! and the quadratures need off-grid evaluation. All norm estimates are grid
//! maxima and therefore one-sided lower bounds for the true suprema.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Chunk size for the deterministic parallel max-reduction.
const PAR_CHUNK: usize = 2048;

/// An evaluable real-valued function on the line with bounded-range metadata.
#[derive(Clone)]
pub struct Function {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    bound_hint: Option<f64>,
    label: String,
}

impl fmt::Debug for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function")
            .field("label", &self.label)
            .field("bound_hint", &self.bound_hint)
            .finish()
    }
}

impl Function {
    pub fn new(
        label: impl Into<String>,
        bound_hint: Option<f64>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Function {
            eval: Arc::new(eval),
            bound_hint,
            label: label.into(),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Known bound for |f|, if any. Derived functions propagate it so the
    /// quadrature tail cutoffs stay certified without re-estimating norms.
    pub fn bound_hint(&self) -> Option<f64> {
        self.bound_hint
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &Function) -> Function {
        let f = self.clone();
        let g = other.clone();
        let hint = match (self.bound_hint, other.bound_hint) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Function::new(
            format!("({})-({})", self.label, other.label),
            hint,
            move |x| f.eval(x) - g.eval(x),
        )
    }

    /// Pointwise scaling `c * self`.
    pub fn scale(&self, c: f64) -> Function {
        let f = self.clone();
        Function::new(
            format!("{}*({})", c, self.label),
            self.bound_hint.map(|b| b * c.abs()),
            move |x| c * f.eval(x),
        )
    }

    /// Pointwise product with another function.
    pub fn mul(&self, other: &Function) -> Function {
        let f = self.clone();
        let g = other.clone();
        let hint = match (self.bound_hint, other.bound_hint) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        Function::new(
            format!("({})*({})", self.label, other.label),
            hint,
            move |x| f.eval(x) * g.eval(x),
        )
    }
}

/// Uniform grid on `[a, b]` with `n` points including both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("grid endpoints must satisfy a < b, got [{a}, {b}]")));
        }
        if n < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 points, got {n}")));
        }
        Ok(Grid { a, b, n })
    }

    /// Default estimation grid: [-40, 40] with 16001 points (h = 0.005).
    pub fn default_estimation() -> Self {
        Grid { a: -40.0, b: 40.0, n: 16001 }
    }

    /// Default grid with an overridden point count.
    pub fn default_with_n(n: usize) -> Result<Self> {
        Grid::new(-40.0, 40.0, n)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.a + self.step() * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }
}

/// A compact interval `[a, b]` indexing a compact-open seminorm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompactSet {
    pub a: f64,
    pub b: f64,
}

impl CompactSet {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a <= b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("compact set needs finite a <= b, got [{a}, {b}]")));
        }
        Ok(CompactSet { a, b })
    }
}

impl fmt::Display for CompactSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// Evaluate `f` at every grid point, in order. Errors on the first
/// non-finite value, naming the offending point.
pub fn sample(f: &Function, grid: &Grid) -> Result<Vec<f64>> {
    let values: Vec<f64> = grid.points().map(|x| f.eval(x)).collect();
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::Eval { label: f.label().to_string(), x: grid.point(i) });
        }
    }
    Ok(values)
}

/// Result of a grid sup-norm scan: the maximum of |f|, where it occurred and
/// whether the maximum is only attained next to the grid boundary.
#[derive(Debug, Clone, Copy)]
pub struct SupScan {
    pub value: f64,
    pub argmax: f64,
    /// True when the maximum is attained strictly within two grid steps of
    /// the boundary and nowhere in the interior. A pinned maximum signals
    /// that the finite estimation window truncates the feature of interest.
    pub pinned: bool,
}

/// Grid sup-norm of |f| with argmax and boundary-pinning diagnostics.
///
/// The reduction is deterministic regardless of thread count: chunks are
/// fixed-size, reduced independently, and folded in index order keeping the
/// earliest argmax among ties.
pub fn sup_scan(f: &Function, grid: &Grid) -> Result<SupScan> {
    let n = grid.n();
    let h = grid.step();
    let a = grid.a();

    let chunk_results: Vec<(f64, usize)> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(PAR_CHUNK)
        .map(|chunk| {
            let mut best = f64::NEG_INFINITY;
            let mut best_i = chunk[0];
            for &i in chunk {
                let v = f.eval(a + h * i as f64).abs();
                if v > best {
                    best = v;
                    best_i = i;
                }
            }
            (best, best_i)
        })
        .collect();

    let mut max_all = f64::NEG_INFINITY;
    let mut arg_all = 0usize;
    for (v, i) in &chunk_results {
        if *v > max_all {
            max_all = *v;
            arg_all = *i;
        }
    }
    if !max_all.is_finite() {
        return Err(Error::Eval { label: f.label().to_string(), x: grid.point(arg_all) });
    }

    // Interior maximum, excluding two grid steps at each boundary.
    let margin = 2usize.min(n / 4);
    let mut max_int = f64::NEG_INFINITY;
    for i in margin..n - margin {
        // Cheap second pass only when the global argmax sits at the edge.
        if arg_all >= margin && arg_all < n - margin {
            max_int = max_all;
            break;
        }
        let v = f.eval(a + h * i as f64).abs();
        if v > max_int {
            max_int = v;
        }
    }
    let pinned = max_all > 0.0 && max_all > max_int * (1.0 + 1e-12);

    Ok(SupScan { value: max_all, argmax: grid.point(arg_all), pinned })
}

/// Grid maximum of |f|: a lower bound for the true sup-norm, converging
/// under grid refinement.
pub fn sup_norm(f: &Function, grid: &Grid) -> Result<f64> {
    Ok(sup_scan(f, grid)?.value)
}

/// Compact-open seminorm p_K(f) = sup over K of |f| on a uniform sampling
/// of K with `density` points.
pub fn compact_seminorm(f: &Function, k: &CompactSet, density: usize) -> Result<f64> {
    if density < 2 || k.a == k.b {
        let v = f.eval(k.a).abs();
        if !v.is_finite() {
            return Err(Error::Eval { label: f.label().to_string(), x: k.a });
        }
        return Ok(v);
    }
    let grid = Grid::new(k.a, k.b, density)?;
    sup_norm(f, &grid)
}

/// Grid Hölder quotient: sup over grid-point pairs with index distance at
/// most `lag_max` of |f(x)-f(y)| / |x-y|^alpha.
pub fn holder_quotient(f: &Function, alpha: f64, grid: &Grid, lag_max: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("holder_quotient needs alpha in (0,1], got {alpha}")));
    }
    let values = sample(f, grid)?;
    let h = grid.step();
    let n = grid.n();
    let lag_max = lag_max.max(1).min(n - 1);

    let quot = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(PAR_CHUNK)
        .map(|chunk| {
            let mut best = 0.0f64;
            for &i in chunk {
                for lag in 1..=lag_max.min(n - 1 - i) {
                    let q = (values[i + lag] - values[i]).abs() / (h * lag as f64).powf(alpha);
                    if q > best {
                        best = q;
                    }
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0f64, f64::max);
    Ok(quot)
}

/// C1 cutoff supported in [-0.4, 0.4] with value 1 at the origin.
fn chirp_cutoff(u: f64) -> f64 {
    if u.abs() >= 0.4 {
        0.0
    } else {
        let c = (std::f64::consts::PI * u / 0.8).cos();
        c * c
    }
}

/// The built-in function library.
///
/// Labels use the syntax `name` or `name:param`, e.g. `holder_bump:0.5`.
pub fn parse_label(label: &str) -> Result<Function> {
    let (name, param) = match label.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (label, None),
    };
    let parse_param = |field: &str| -> Result<f64> {
        param
            .ok_or_else(|| Error::UnknownLabel { label: label.to_string(), field: field.to_string() })?
            .parse::<f64>()
            .map_err(|_| Error::UnknownLabel { label: label.to_string(), field: field.to_string() })
    };

    match name {
        "zero" => Ok(Function::new("zero", Some(0.0), |_| 0.0)),
        "const" => {
            let c = parse_param("functions")?;
            Ok(Function::new(format!("const:{c}"), Some(c.abs()), move |_| c))
        }
        "sin" => Ok(Function::new("sin", Some(1.0), f64::sin)),
        "cos" => Ok(Function::new("cos", Some(1.0), f64::cos)),
        "inv_quad" => {
            // x -> (1+x^2)^(-beta)
            let beta = parse_param("functions")?;
            if beta <= 0.0 {
                return Err(Error::Domain(format!("inv_quad needs beta > 0, got {beta}")));
            }
            Ok(Function::new(format!("inv_quad:{beta}"), Some(1.0), move |x| {
                (1.0 + x * x).powf(-beta)
            }))
        }
        "holder_bump" => {
            // x -> |sin x|^beta, exactly beta-Hölder at the kinks.
            let beta = parse_param("functions")?;
            if !(beta > 0.0 && beta <= 1.0) {
                return Err(Error::Domain(format!("holder_bump needs beta in (0,1], got {beta}")));
            }
            Ok(Function::new(format!("holder_bump:{beta}"), Some(1.0), move |x| {
                x.sin().abs().powf(beta)
            }))
        }
        "chirp_train" => {
            // Sum over n >= 2 of cutoff(x-n) * n^(-2a) * sin(n^2 (x-n)):
            // bump n has Hölder-a seminorm of order one, so the train is
            // uniformly a-Hölder but the little-Hölder quotient stays away
            // from zero along t = n^(-2) near x = n.
            let a = parse_param("functions")?;
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Domain(format!("chirp_train needs alpha in (0,1), got {a}")));
            }
            let hint = 2f64.powf(-2.0 * a);
            Ok(Function::new(format!("chirp_train:{a}"), Some(hint), move |x| {
                let n = x.round();
                if n < 2.0 {
                    return 0.0;
                }
                let u = x - n;
                if u.abs() >= 0.4 {
                    return 0.0;
                }
                chirp_cutoff(u) * n.powf(-2.0 * a) * (n * n * u).sin()
            }))
        }
        "neg_quad" => {
            // x -> -(1 + x^2); strictly negative multiplication symbol.
            Ok(Function::new("neg_quad", None, |x| -(1.0 + x * x)))
        }
        _ => Err(Error::UnknownLabel { label: label.to_string(), field: "functions".to_string() }),
    }
}

/// Catalog of label templates for the CLI.
pub fn function_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("zero", "the zero function"),
        ("const:c", "constant function with value c"),
        ("sin", "sine"),
        ("cos", "cosine"),
        ("inv_quad:beta", "(1+x^2)^(-beta)"),
        ("holder_bump:beta", "|sin x|^beta, exactly beta-Hölder at its kinks"),
        ("chirp_train:alpha", "train of shrinking high-frequency bumps, alpha-Hölder but not little-Hölder"),
        ("neg_quad", "-(1+x^2), a strictly negative multiplication symbol"),
    ]
}

/// Built-in probe set used by the property and acceptance sweeps.
pub fn builtin_probes() -> Vec<Function> {
    [
        "zero",
        "const:1",
        "sin",
        "cos",
        "inv_quad:0.5",
        "inv_quad:1",
        "holder_bump:0.3",
        "holder_bump:0.5",
        "holder_bump:0.7",
        "chirp_train:0.5",
    ]
    .iter()
    .map(|l| parse_label(l).expect("builtin label"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, n: usize) -> Grid {
        Grid::new(a, b, n).unwrap()
    }

    #[test]
    fn sample_zero_is_all_zero() {
        let f = parse_label("zero").unwrap();
        let g = grid(-3.0, 3.0, 7);
        assert_eq!(sample(&f, &g).unwrap(), vec![0.0; 7]);
    }

    #[test]
    fn sample_sine_on_half_period() {
        let f = parse_label("sin").unwrap();
        let g = grid(0.0, std::f64::consts::PI, 3);
        let v = sample(&f, &g).unwrap();
        assert!((v[0] - 0.0).abs() < 1e-15);
        assert!((v[1] - 1.0).abs() < 1e-15);
        assert!(v[2].abs() < 1e-15);
    }

    #[test]
    fn sample_inv_quad_direct_values() {
        let f = parse_label("inv_quad:1").unwrap();
        let g = grid(-1.0, 1.0, 3);
        let v = sample(&f, &g).unwrap();
        assert_eq!(v, vec![0.5, 1.0, 0.5]);
    }

    #[test]
    fn sample_reports_nonfinite_point() {
        let f = Function::new("pole", None, |x| 1.0 / x);
        let g = grid(-1.0, 1.0, 3);
        match sample(&f, &g) {
            Err(Error::Eval { x, .. }) => assert_eq!(x, 0.0),
            other => panic!("expected eval error, got {other:?}"),
        }
    }

    #[test]
    fn sup_norm_of_sine_near_one() {
        let f = parse_label("sin").unwrap();
        let g = grid(-10.0, 10.0, 10001);
        let s = sup_norm(&f, &g).unwrap();
        assert!((s - 1.0).abs() < 1e-6, "got {s}");
    }

    #[test]
    fn sup_norm_zero_and_peak_at_origin() {
        let g = grid(-10.0, 10.0, 10001);
        assert_eq!(sup_norm(&parse_label("zero").unwrap(), &g).unwrap(), 0.0);
        // (1+x^2)^(-1) attains its max 1 at the grid point x = 0.
        assert_eq!(sup_norm(&parse_label("inv_quad:1").unwrap(), &g).unwrap(), 1.0);
    }

    #[test]
    fn sup_norm_monotone_under_refinement() {
        let f = parse_label("holder_bump:0.5").unwrap();
        let coarse = grid(-40.0, 40.0, 2001);
        let fine = grid(-40.0, 40.0, 4001);
        assert!(sup_norm(&f, &fine).unwrap() >= sup_norm(&f, &coarse).unwrap());
    }

    #[test]
    fn compact_seminorm_examples() {
        let sin = parse_label("sin").unwrap();
        let k = CompactSet::new(0.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((compact_seminorm(&sin, &k, 1001).unwrap() - 1.0).abs() < 1e-12);

        let ident = Function::new("x", None, |x| x);
        let k = CompactSet::new(-2.0, 3.0).unwrap();
        assert_eq!(compact_seminorm(&ident, &k, 1001).unwrap(), 3.0);

        // e^{-x^2} is monotone decreasing on [1, 2]; max at the left endpoint.
        let gauss = Function::new("gauss", Some(1.0), |x| (-x * x).exp());
        let k = CompactSet::new(1.0, 2.0).unwrap();
        let expected = (-1.0f64).exp();
        assert!((compact_seminorm(&gauss, &k, 1001).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn compact_seminorm_bounded_by_sup_norm() {
        let f = parse_label("chirp_train:0.5").unwrap();
        let g = grid(-40.0, 40.0, 16001);
        let k = CompactSet::new(-5.0, 5.0).unwrap();
        // K-samples at the same spacing are a subset of the grid points.
        let pk = compact_seminorm(&f, &k, 2001).unwrap();
        assert!(pk <= sup_norm(&f, &g).unwrap() + 1e-15);
    }

    #[test]
    fn holder_quotient_constant_is_zero() {
        let f = parse_label("const:3.5").unwrap();
        let g = grid(-5.0, 5.0, 1001);
        for alpha in [0.3, 0.7, 1.0] {
            assert_eq!(holder_quotient(&f, alpha, &g, 50).unwrap(), 0.0);
        }
    }

    #[test]
    fn holder_quotient_sine_lipschitz_constant() {
        let f = parse_label("sin").unwrap();
        let g = grid(-2.0, 2.0, 40001);
        let q = holder_quotient(&f, 1.0, &g, 10).unwrap();
        assert!((q - 1.0).abs() < 1e-4, "got {q}");
    }

    #[test]
    fn holder_quotient_bump_half_near_kink() {
        // |sin t|^(1/2) / t^(1/2) -> 1 as t -> 0.
        let f = parse_label("holder_bump:0.5").unwrap();
        let g = grid(-0.01, 0.01, 20001);
        let q = holder_quotient(&f, 0.5, &g, 2000).unwrap();
        assert!((q - 1.0).abs() < 2e-3, "got {q}");
    }

    #[test]
    fn holder_quotient_monotone_in_alpha_and_homogeneous() {
        let f = parse_label("holder_bump:0.5").unwrap();
        // All pair distances <= 1: dividing by |x-y|^alpha grows with alpha.
        let g = grid(-1.0, 1.0, 2001);
        let q03 = holder_quotient(&f, 0.3, &g, 1000).unwrap();
        let q07 = holder_quotient(&f, 0.7, &g, 1000).unwrap();
        assert!(q07 >= q03 - 1e-12);

        // All pair distances >= 1: the direction flips.
        let wide = grid(-10.0, 10.0, 21);
        let w03 = holder_quotient(&f, 0.3, &wide, 20).unwrap();
        let w07 = holder_quotient(&f, 0.7, &wide, 20).unwrap();
        assert!(w07 <= w03 + 1e-12);

        let q = holder_quotient(&f, 0.5, &g, 1000).unwrap();
        let q3 = holder_quotient(&f.scale(-3.0), 0.5, &g, 1000).unwrap();
        assert!((q3 - 3.0 * q).abs() < 1e-12 * (1.0 + q));
    }

    #[test]
    fn bound_hints_hold_on_grid() {
        let g = grid(-40.0, 40.0, 16001);
        for f in builtin_probes() {
            if let Some(b) = f.bound_hint() {
                let s = sup_norm(&f, &g).unwrap();
                assert!(s <= b + 1e-12, "{} exceeded its bound hint: {s} > {b}", f.label());
            }
        }
    }

    #[test]
    fn chirp_cutoff_is_c1_at_support_edge() {
        assert_eq!(chirp_cutoff(0.4), 0.0);
        assert_eq!(chirp_cutoff(-0.4), 0.0);
        let eps = 1e-6;
        // Value and first derivative both vanish at the edge.
        assert!(chirp_cutoff(0.4 - eps) < 1e-10);
        assert!((chirp_cutoff(0.4 - eps) - chirp_cutoff(0.4 - 2.0 * eps)).abs() / eps < 1e-4);
    }

    #[test]
    fn unknown_label_is_rejected() {
        assert!(matches!(parse_label("wavelet"), Err(Error::UnknownLabel { .. })));
        assert!(matches!(parse_label("holder_bump"), Err(Error::UnknownLabel { .. })));
    }
}
