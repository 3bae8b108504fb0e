//! The three concrete operator families — left translation, multiplication
//! by a strictly negative symbol, and the Gauss–Weierstrass heat family —
//! as evaluable actions on functions, together with their generators and
//! orbit integrals.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcspace::{sup_norm, Function, Grid};
use crate::quad::simpson_nodes;

/// Half-width of the heat-kernel window in units of kernel standard
/// deviations: truncating the Gaussian at 8 sigma leaves mass error
/// below 1e-14.
const HEAT_WINDOW_SIGMAS: f64 = 8.0;
/// Simpson node count for one heat-kernel convolution.
const HEAT_NODES: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemigroupKind {
    Translation,
    Multiplication,
    Heat,
}

impl SemigroupKind {
    pub fn name(&self) -> &'static str {
        match self {
            SemigroupKind::Translation => "translation",
            SemigroupKind::Multiplication => "multiplication",
            SemigroupKind::Heat => "heat",
        }
    }
}

/// One of the three operator families plus its type constants (M, omega)
/// and the internal rescale shift sigma.
///
/// The raw family T(t) has growth bound `omega`; the shifted family
/// e^(-sigma t) T(t) has effective growth bound `omega - sigma` and is the
/// one consumed by the scale and extrapolation machinery, which need an
/// invertible generator.
#[derive(Clone)]
pub struct SemigroupDescriptor {
    kind: SemigroupKind,
    q: Option<Function>,
    m_const: f64,
    omega: f64,
    sigma: f64,
    label: String,
}

impl std::fmt::Debug for SemigroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SemigroupDescriptor")
            .field("kind", &self.kind)
            .field("m_const", &self.m_const)
            .field("omega", &self.omega)
            .field("sigma", &self.sigma)
            .finish()
    }
}

impl SemigroupDescriptor {
    /// Left translation (T(t)f)(x) = f(x+t): contractive, omega = 0,
    /// default shift sigma = 1.
    pub fn translation() -> Self {
        SemigroupDescriptor {
            kind: SemigroupKind::Translation,
            q: None,
            m_const: 1.0,
            omega: 0.0,
            sigma: 1.0,
            label: "translation".to_string(),
        }
    }

    /// Gauss–Weierstrass family: Gaussian convolution with variance 2t,
    /// omega = 0, default shift sigma = 1.
    pub fn heat() -> Self {
        SemigroupDescriptor {
            kind: SemigroupKind::Heat,
            q: None,
            m_const: 1.0,
            omega: 0.0,
            sigma: 1.0,
            label: "heat".to_string(),
        }
    }

    /// Multiplication family (T_q(t)f)(x) = e^(t q(x)) f(x). The symbol must
    /// be strictly negative; its grid supremum becomes the growth bound, so
    /// no extra shift is needed (sigma = 0).
    ///
    /// Negativity is certified on the given estimation grid only.
    pub fn multiplication(q: Function, grid: &Grid) -> Result<Self> {
        let mut sup_q = f64::NEG_INFINITY;
        for x in grid.points() {
            let v = q.eval(x);
            if !v.is_finite() {
                return Err(Error::Eval { label: q.label().to_string(), x });
            }
            sup_q = sup_q.max(v);
        }
        if sup_q >= 0.0 {
            return Err(Error::Domain(format!(
                "multiplication symbol `{}` must be strictly negative; grid sup is {sup_q}",
                q.label()
            )));
        }
        let label = format!("multiplication:{}", q.label());
        Ok(SemigroupDescriptor {
            kind: SemigroupKind::Multiplication,
            q: Some(q),
            m_const: 1.0,
            omega: sup_q,
            sigma: 0.0,
            label,
        })
    }

    pub fn kind(&self) -> SemigroupKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn m_const(&self) -> f64 {
        self.m_const
    }

    /// Growth bound of the raw family T(t).
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Growth bound of the shifted family e^(-sigma t) T(t).
    pub fn omega_eff(&self) -> f64 {
        self.omega - self.sigma
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn q(&self) -> Option<&Function> {
        self.q.as_ref()
    }

    /// True when two descriptors denote the same shifted family; vectors in
    /// the extrapolation space may only be combined within one family.
    pub fn same_family(&self, other: &SemigroupDescriptor) -> bool {
        self.label == other.label && self.sigma == other.sigma
    }

    /// The raw action T(t)f as an evaluable function. T(0) is the identity.
    pub fn apply(&self, t: f64, f: &Function) -> Result<Function> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("apply needs t >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(f.clone());
        }
        match self.kind {
            SemigroupKind::Translation => {
                let g = f.clone();
                Ok(Function::new(
                    format!("T[{t}]({})", f.label()),
                    f.bound_hint(),
                    move |x| g.eval(x + t),
                ))
            }
            SemigroupKind::Multiplication => {
                let g = f.clone();
                let q = self.q.clone().expect("multiplication carries q");
                let hint = f.bound_hint().map(|b| b * (t * self.omega).exp());
                Ok(Function::new(
                    format!("T[{t}]({})", f.label()),
                    hint,
                    move |x| (t * q.eval(x)).exp() * g.eval(x),
                ))
            }
            SemigroupKind::Heat => {
                // Kernel substitution u = (y-x)/sqrt(4t) turns the
                // convolution into sum_j w_j f(x + 2 sqrt(t) u_j) with
                // t-independent nodes on |u| <= 8/sqrt(2).
                let g = f.clone();
                let half = HEAT_WINDOW_SIGMAS / std::f64::consts::SQRT_2;
                let scale = 2.0 * t.sqrt();
                let nodes: Arc<Vec<(f64, f64)>> = Arc::new(
                    simpson_nodes(-half, half, (HEAT_NODES - 1) / 2)
                        .into_iter()
                        .map(|(u, w)| {
                            (scale * u, w * (-u * u).exp() / std::f64::consts::PI.sqrt())
                        })
                        .collect(),
                );
                Ok(Function::new(
                    format!("T[{t}]({})", f.label()),
                    f.bound_hint(),
                    move |x| nodes.iter().map(|&(du, w)| w * g.eval(x + du)).sum(),
                ))
            }
        }
    }

    /// The shifted action e^(-sigma t) T(t) f.
    pub fn apply_shifted(&self, t: f64, f: &Function) -> Result<Function> {
        let raw = self.apply(t, f)?;
        if self.sigma == 0.0 || t == 0.0 {
            return Ok(raw);
        }
        Ok(raw.scale((-self.sigma * t).exp()))
    }

    /// The generator action: exact pointwise product for multiplication,
    /// finite-difference stencils otherwise. Non-smooth inputs yield large
    /// stencil values; detect them by recomputing at h/2 and comparing.
    pub fn generator_apply(&self, f: &Function, h: f64) -> Function {
        assert!(h > 0.0, "stencil width must be positive");
        match self.kind {
            SemigroupKind::Translation => {
                let g = f.clone();
                Function::new(format!("A({})", f.label()), None, move |x| {
                    (g.eval(x + h) - g.eval(x - h)) / (2.0 * h)
                })
            }
            SemigroupKind::Multiplication => {
                let q = self.q.clone().expect("multiplication carries q");
                f.mul(&q).with_label(format!("A({})", f.label()))
            }
            SemigroupKind::Heat => {
                let g = f.clone();
                Function::new(format!("A({})", f.label()), None, move |x| {
                    (g.eval(x + h) - 2.0 * g.eval(x) + g.eval(x - h)) / (h * h)
                })
            }
        }
    }

    /// Generator of the shifted family: (A - sigma) f.
    pub fn generator_apply_shifted(&self, f: &Function, h: f64) -> Function {
        let af = self.generator_apply(f, h);
        let g = f.clone();
        let sigma = self.sigma;
        Function::new(
            format!("(A-{sigma})({})", f.label()),
            None,
            move |x| af.eval(x) - sigma * g.eval(x),
        )
    }

    /// The orbit integral x -> int_0^t (T(s)f)(x) ds by composite Simpson
    /// with `panels` panels.
    pub fn orbit_integral(&self, t: f64, f: &Function, panels: usize) -> Result<Function> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("orbit_integral needs t > 0, got {t}")));
        }
        let nodes = simpson_nodes(0.0, t, panels.max(1));
        let mut terms = Vec::with_capacity(nodes.len());
        for (s, w) in nodes {
            terms.push((w, self.apply(s, f)?));
        }
        let hint = f.bound_hint().map(|b| b * t * self.m_const * (self.omega * t).exp().max(1.0));
        Ok(Function::new(
            format!("orbit[0,{t}]({})", f.label()),
            hint,
            move |x| terms.iter().map(|(w, g)| w * g.eval(x)).sum(),
        ))
    }
}

/// Truncation and node-count policy for the improper-integral quadratures.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    panels: usize,
    tol: f64,
}

impl QuadratureSpec {
    pub fn new(panels: usize, tol: f64) -> Result<Self> {
        if panels < 16 {
            return Err(Error::Domain(format!("quadrature needs at least 16 panels, got {panels}")));
        }
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("quadrature tolerance must be positive, got {tol}")));
        }
        Ok(QuadratureSpec { panels, tol })
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Certified tail cutoff: with gap = lambda - omega_eff > 0 the absolute
    /// tail of int e^(-lambda s) T(s) f ds beyond s_max is at most
    /// bound * e^(-gap * s_max) / gap, which equals `tol` at this cutoff.
    pub fn s_max(&self, bound: f64, gap: f64) -> f64 {
        let b = bound.max(self.tol);
        (b / (self.tol * gap)).ln().max(1e-3) / gap
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { panels: 64, tol: 1e-6 }
    }
}

/// Bound estimate used for tail cutoffs: the declared hint when present,
/// otherwise a grid supremum.
pub(crate) fn bound_estimate(f: &Function, grid: &Grid) -> Result<f64> {
    match f.bound_hint() {
        Some(b) => Ok(b),
        None => sup_norm(f, grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::{parse_label, sup_norm, Grid};

    fn grid() -> Grid {
        Grid::new(-10.0, 10.0, 4001).unwrap()
    }

    #[test]
    fn translation_is_exact_shift() {
        let sg = SemigroupDescriptor::translation();
        let f = parse_label("sin").unwrap();
        let tf = sg.apply(std::f64::consts::PI, &f).unwrap();
        assert!(tf.eval(0.0).abs() < 1e-15);
        assert!((tf.eval(std::f64::consts::FRAC_PI_2) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn multiplication_constant_symbol() {
        let g = Grid::default_estimation();
        let q = parse_label("const:-1").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &g).unwrap();
        assert_eq!(sg.omega(), -1.0);
        let one = parse_label("const:1").unwrap();
        let tf = sg.apply(1.0, &one).unwrap();
        let expected = (-1.0f64).exp(); // 0.36787944117144233
        assert!((tf.eval(3.7) - expected).abs() < 1e-15);
    }

    #[test]
    fn multiplication_rejects_nonnegative_symbol() {
        let g = Grid::default_estimation();
        let q = parse_label("sin").unwrap();
        assert!(SemigroupDescriptor::multiplication(q, &g).is_err());
    }

    #[test]
    fn heat_damps_sine_by_spectral_factor() {
        // sin is an eigenfunction of the Gaussian convolution with
        // eigenvalue e^(-t); oracle value at t = 0.5, x = pi/2.
        let sg = SemigroupDescriptor::heat();
        let f = parse_label("sin").unwrap();
        let tf = sg.apply(0.5, &f).unwrap();
        let expected = 0.6065306597126334; // e^(-0.5)
        assert!((tf.eval(std::f64::consts::FRAC_PI_2) - expected).abs() < 1e-10);
        let diff = tf.sub(&f.scale(expected));
        assert!(sup_norm(&diff, &grid()).unwrap() < 1e-9);
    }

    #[test]
    fn heat_preserves_constants_to_kernel_mass() {
        let sg = SemigroupDescriptor::heat();
        let one = parse_label("const:1").unwrap();
        let tf = sg.apply(2.0, &one).unwrap();
        assert!((tf.eval(0.3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn apply_rejects_negative_time_and_keeps_identity() {
        let sg = SemigroupDescriptor::translation();
        let f = parse_label("sin").unwrap();
        assert!(sg.apply(-0.1, &f).is_err());
        let id = sg.apply(0.0, &f).unwrap();
        assert_eq!(id.eval(1.234), f.eval(1.234));
    }

    #[test]
    fn generator_translation_is_derivative() {
        let sg = SemigroupDescriptor::translation();
        let f = parse_label("sin").unwrap();
        let af = sg.generator_apply(&f, 1e-4);
        let cos = parse_label("cos").unwrap();
        let err = sup_norm(&af.sub(&cos), &grid()).unwrap();
        assert!(err < 1e-8, "central difference error {err}");
    }

    #[test]
    fn generator_multiplication_is_exact_product() {
        let g = Grid::default_estimation();
        let q = parse_label("neg_quad").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &g).unwrap();
        let one = parse_label("const:1").unwrap();
        let af = sg.generator_apply(&one, 1e-4);
        assert_eq!(af.eval(2.0), -5.0);
        assert_eq!(af.eval(0.0), -1.0);
    }

    #[test]
    fn generator_heat_is_laplacian() {
        let sg = SemigroupDescriptor::heat();
        let f = parse_label("sin").unwrap();
        let af = sg.generator_apply(&f, 1e-3);
        let minus_sin = parse_label("sin").unwrap().scale(-1.0);
        let err = sup_norm(&af.sub(&minus_sin), &grid()).unwrap();
        assert!(err < 1e-6, "second difference error {err}");
    }

    #[test]
    fn orbit_integral_of_constant() {
        let sg = SemigroupDescriptor::translation();
        let c = parse_label("const:2.5").unwrap();
        let g = sg.orbit_integral(0.8, &c, 32).unwrap();
        assert!((g.eval(-3.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn orbit_integral_multiplication_closed_form() {
        let gr = Grid::default_estimation();
        let q = parse_label("const:-1").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &gr).unwrap();
        let one = parse_label("const:1").unwrap();
        let g = sg.orbit_integral(1.0, &one, 64).unwrap();
        let expected = 0.6321205588285577; // 1 - e^(-1)
        assert!((g.eval(0.0) - expected).abs() < 1e-10);
    }

    #[test]
    fn orbit_integral_translation_of_sine() {
        // int_0^pi sin(x+s) ds = cos x - cos(x+pi) = 2 cos x.
        let sg = SemigroupDescriptor::translation();
        let f = parse_label("sin").unwrap();
        let g = sg.orbit_integral(std::f64::consts::PI, &f, 64).unwrap();
        let two_cos = parse_label("cos").unwrap().scale(2.0);
        let err = sup_norm(&g.sub(&two_cos), &grid()).unwrap();
        assert!(err < 1e-8, "orbit error {err}");
    }

    #[test]
    fn orbit_integral_rejects_nonpositive_time() {
        let sg = SemigroupDescriptor::translation();
        let f = parse_label("sin").unwrap();
        assert!(sg.orbit_integral(0.0, &f, 16).is_err());
    }
}
