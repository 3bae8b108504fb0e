//! Composite Simpson quadrature and grid-tabulated functions with linear
//! interpolation, shared by the resolvent and extrapolation machinery.

use std::sync::Arc;

use rayon::prelude::*;

use crate::funcspace::Function;

/// Simpson nodes and weights on `[a, b]` with `panels` panels
/// (2*panels + 1 nodes).
pub fn simpson_nodes(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let panels = panels.max(1);
    let m = 2 * panels;
    let h = (b - a) / m as f64;
    (0..=m)
        .map(|j| {
            let c = if j == 0 || j == m {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (a + h * j as f64, c * h / 3.0)
        })
        .collect()
}

/// Composite Simpson integral of `f` over `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    simpson_nodes(a, b, panels)
        .into_iter()
        .map(|(x, w)| w * f(x))
        .sum()
}

/// A function tabulated on a uniform grid, evaluated by linear interpolation
/// and clamped to the boundary values outside the table.
///
/// Interpolation error is O(h^2 |f''|); callers that tabulate must size the
/// table so the clamped region carries negligible mass.
#[derive(Clone)]
pub struct GridFn {
    a: f64,
    h: f64,
    values: Arc<Vec<f64>>,
}

impl GridFn {
    pub fn from_values(a: f64, h: f64, values: Vec<f64>) -> Self {
        assert!(h > 0.0 && values.len() >= 2);
        GridFn { a, h, values: Arc::new(values) }
    }

    /// Tabulate `f` on `[a, b]` with spacing close to `h`, in parallel.
    pub fn tabulate(f: &Function, a: f64, b: f64, h: f64) -> Self {
        let n = ((b - a) / h).ceil() as usize + 1;
        let values: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| f.eval(a + h * i as f64))
            .collect();
        GridFn { a, h, values: Arc::new(values) }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let s = (x - self.a) / self.h;
        if s <= 0.0 {
            return self.values[0];
        }
        let i = s.floor() as usize;
        if i >= n - 1 {
            return self.values[n - 1];
        }
        let frac = s - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    pub fn into_function(self, label: impl Into<String>, bound_hint: Option<f64>) -> Function {
        let hint = bound_hint.or_else(|| {
            self.values
                .iter()
                .fold(Some(0.0f64), |acc, v| acc.map(|a| a.max(v.abs())))
        });
        Function::new(label, hint, move |x| self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        // Simpson is exact through cubics.
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 4);
        let exact = |x: f64| x.powi(4) / 4.0 - x * x + x;
        assert!((v - (exact(3.0) - exact(-1.0))).abs() < 1e-12);
    }

    #[test]
    fn simpson_exp_decay() {
        // Composite error (h^4/180) * int |f''''| with h = 0.05.
        let v = simpson(|s| (-s).exp(), 0.0, 20.0, 200);
        assert!((v - (1.0 - (-20.0f64).exp())).abs() < 1e-7);
    }

    #[test]
    fn gridfn_interpolates_and_clamps() {
        let g = GridFn::from_values(0.0, 0.5, vec![0.0, 1.0, 0.0]);
        assert_eq!(g.eval(0.25), 0.5);
        assert_eq!(g.eval(-3.0), 0.0);
        assert_eq!(g.eval(9.0), 0.0);
        assert_eq!(g.eval(0.5), 1.0);
    }
}
