//! The extrapolation space realized through representative pairs: an element
//! of the space one step below the base space is stored by its preimage
//! under the (shifted) generator, so norms are exact and the extrapolated
//! action is the conjugated one from the extension theorem.
//!
//! All operations here consume the shifted family e^(-sigma t) T(t), whose
//! generator is invertible once omega - sigma < 0; the inverse is the
//! Laplace integral at rate sigma with a sign flip.

use crate::error::{Error, Result};
use crate::funcspace::{sup_norm, Function, Grid};
use crate::quad::GridFn;
use crate::resolvent::{resolve, ResolventRequest};
use crate::scales::{favard_sg_from_sweep, favard_sweep_sg, geometric, FavardEstimate, ProbeSchedule};
use crate::semigroups::{QuadratureSpec, SemigroupDescriptor, SemigroupKind};

/// Spatial margin used when tabulating heat-kind representatives, sized so
/// kernel windows up to t ~ 7 stay inside the table; beyond that the shift
/// factor e^(-sigma t) suppresses the clamped contribution.
const HEAT_REP_MARGIN: f64 = 30.0;

/// A representative pair encoding the element (A - sigma) rep of the
/// extrapolation space by its preimage rep in the base space.
#[derive(Debug, Clone)]
pub struct ExtrapolatedVector {
    rep: Function,
    family: String,
    sigma: f64,
    norm: f64,
    /// Set when the representative passes the strong-continuity modulus
    /// test, i.e. the vector lies in the closed subspace reached from the
    /// domain closure. Invariant under the extrapolated action.
    in_continuity_subspace: bool,
}

impl ExtrapolatedVector {
    pub fn rep(&self) -> &Function {
        &self.rep
    }

    /// The extrapolation norm ||x||_{-1} = ||A^{-1} x|| = ||rep||.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn in_continuity_subspace(&self) -> bool {
        self.in_continuity_subspace
    }
}

fn require_negative_growth(sg: &SemigroupDescriptor) -> Result<()> {
    if sg.omega_eff() >= 0.0 {
        return Err(Error::ShiftRequired { omega_eff: sg.omega_eff() });
    }
    Ok(())
}

/// Inverse of the shifted generator:
/// (A - sigma)^{-1} f = -int_0^inf e^(-sigma s) (T(s)f)(x) ds.
pub fn a_inverse(sg: &SemigroupDescriptor, f: &Function, quad: &QuadratureSpec) -> Result<Function> {
    require_negative_growth(sg)?;
    let r = resolve(sg, &ResolventRequest::with_quad(sg.sigma(), *quad), f)?;
    let out = r.scale(-1.0).with_label(format!("Ainv({})", f.label()));
    if sg.kind() == SemigroupKind::Heat {
        // Downstream sweeps convolve the representative repeatedly; tabulate
        // once so they interpolate instead of nesting quadratures.
        let grid = Grid::default_estimation();
        let hint = out.bound_hint();
        let tab = GridFn::tabulate(&out, grid.a() - HEAT_REP_MARGIN, grid.b() + HEAT_REP_MARGIN, grid.step());
        return Ok(tab.into_function(out.label().to_string(), hint));
    }
    Ok(out)
}

/// Strong-continuity modulus flag: does ||S(t)f - f|| decay with positive
/// slope at small t for the shifted family S?
fn continuity_flag(sg: &SemigroupDescriptor, f: &Function, grid: &Grid) -> Result<bool> {
    let mut points = Vec::new();
    for &t in &geometric(1e-6, 1e-1, 26) {
        let d = sg.apply_shifted(t, f)?.sub(f);
        points.push((t, sup_norm(&d, grid)?));
    }
    if points.iter().all(|&(_, v)| v <= 1e-300) {
        return Ok(true);
    }
    let logs: Vec<(f64, f64)> = points.iter().filter(|&&(_, v)| v > 0.0).map(|&(t, v)| (t.ln(), v.ln())).collect();
    if logs.len() < 3 {
        return Ok(false);
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(var > 0.0 && cov / var > 0.02)
}

/// View g in the extrapolation space: the vector (A - sigma)(A - sigma)^{-1} g
/// with representative rep = (A - sigma)^{-1} g and norm ||rep||.
pub fn embed(sg: &SemigroupDescriptor, g: &Function, quad: &QuadratureSpec) -> Result<ExtrapolatedVector> {
    let rep = a_inverse(sg, g, quad)?;
    let grid = Grid::default_estimation();
    let norm = sup_norm(&rep, &grid)?;
    let flag = continuity_flag(sg, &rep, &grid)?;
    Ok(ExtrapolatedVector {
        rep,
        family: sg.label().to_string(),
        sigma: sg.sigma(),
        norm,
        in_continuity_subspace: flag,
    })
}

/// The extrapolated action: the unique continuous extension acts on
/// representatives by the shifted family itself, covariantly with the
/// generator.
pub fn ext_apply(sg: &SemigroupDescriptor, t: f64, x: &ExtrapolatedVector) -> Result<ExtrapolatedVector> {
    if x.family != sg.label() || x.sigma != sg.sigma() {
        return Err(Error::ShiftMismatch {
            expected: format!("{} (sigma={})", x.family, x.sigma),
            found: format!("{} (sigma={})", sg.label(), sg.sigma()),
        });
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("ext_apply needs t >= 0, got {t}")));
    }
    let rep = sg.apply_shifted(t, &x.rep)?;
    let norm = sup_norm(&rep, &Grid::default_estimation())?;
    Ok(ExtrapolatedVector {
        rep,
        family: x.family.clone(),
        sigma: x.sigma,
        norm,
        // The strong-continuity subspace is invariant under the family.
        in_continuity_subspace: x.in_continuity_subspace,
    })
}

/// The extrapolated Favard norm of order zero: the Favard-1 estimate of the
/// representative (A - sigma)^{-1} g under the shifted family.
pub fn favard0_norm(
    sg: &SemigroupDescriptor,
    g: &Function,
    sched: &ProbeSchedule,
    quad: &QuadratureSpec,
) -> Result<FavardEstimate> {
    let rep = a_inverse(sg, g, quad)?;
    let sweep = favard_sweep_sg(sg, &rep, sched, true)?;
    favard_sg_from_sweep(&sweep, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::parse_label;
    use crate::scales::FavardVerdict;

    fn view() -> Grid {
        Grid::new(-10.0, 10.0, 4001).unwrap()
    }

    #[test]
    fn a_inverse_multiplication_closed_form() {
        let grid = Grid::default_estimation();
        let q = parse_label("const:-1").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &grid).unwrap();
        let one = parse_label("const:1").unwrap();
        let inv = a_inverse(&sg, &one, &QuadratureSpec::default()).unwrap();
        // A^{-1} 1 = q^{-1} = -1, matching -int_0^inf e^{-s} ds.
        assert!((inv.eval(0.0) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn a_inverse_zero_is_zero() {
        let sg = SemigroupDescriptor::translation();
        let z = parse_label("zero").unwrap();
        let inv = a_inverse(&sg, &z, &QuadratureSpec::default()).unwrap();
        assert_eq!(inv.eval(1.0), 0.0);
    }

    #[test]
    fn a_inverse_translation_matches_unshifted_resolvent() {
        // With sigma = 1 the inverse at rate sigma equals -R(1, A):
        // rep = -(sin x + cos x)/2.
        let sg = SemigroupDescriptor::translation();
        let sin = parse_label("sin").unwrap();
        let inv = a_inverse(&sg, &sin, &QuadratureSpec::default()).unwrap();
        let oracle = Function::new("oracle", Some(1.0), |x| -(x.sin() + x.cos()) / 2.0);
        let err = sup_norm(&inv.sub(&oracle), &view()).unwrap();
        assert!(err < 1e-5, "sup error {err}");
    }

    #[test]
    fn a_inverse_requires_negative_effective_bound() {
        let sg = SemigroupDescriptor::translation().with_sigma(0.0);
        let sin = parse_label("sin").unwrap();
        assert!(matches!(
            a_inverse(&sg, &sin, &QuadratureSpec::default()),
            Err(Error::ShiftRequired { .. })
        ));
    }

    #[test]
    fn embed_norms() {
        let grid = Grid::default_estimation();
        let q = parse_label("const:-1").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &grid).unwrap();
        let one = parse_label("const:1").unwrap();
        let v = embed(&sg, &one, &QuadratureSpec::default()).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-9, "|q^{{-1}} g| = 1, got {}", v.norm());

        let zero = parse_label("zero").unwrap();
        let v = embed(&sg, &zero, &QuadratureSpec::default()).unwrap();
        assert_eq!(v.norm(), 0.0);

        let sgt = SemigroupDescriptor::translation();
        let sin = parse_label("sin").unwrap();
        let v = embed(&sgt, &sin, &QuadratureSpec::default()).unwrap();
        let expected = 0.7071067811865476; // amplitude of (sin+cos)/2
        assert!((v.norm() - expected).abs() < 1e-4, "got {}", v.norm());
        assert!(v.in_continuity_subspace());
    }

    #[test]
    fn ext_apply_identity_and_closed_form() {
        let grid = Grid::default_estimation();
        let q = parse_label("const:-1").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &grid).unwrap();
        let one = parse_label("const:1").unwrap();
        let v = embed(&sg, &one, &QuadratureSpec::default()).unwrap();

        let v0 = ext_apply(&sg, 0.0, &v).unwrap();
        assert!((v0.norm() - v.norm()).abs() < 1e-12);

        let v1 = ext_apply(&sg, 1.0, &v).unwrap();
        let expected = -0.36787944117144233; // -e^{-1}
        assert!((v1.rep().eval(0.0) - expected).abs() < 1e-12);
    }

    #[test]
    fn ext_apply_rejects_family_mixing() {
        let grid = Grid::default_estimation();
        let q = parse_label("const:-1").unwrap();
        let sg_mult = SemigroupDescriptor::multiplication(q, &grid).unwrap();
        let sg_trans = SemigroupDescriptor::translation();
        let one = parse_label("const:1").unwrap();
        let v = embed(&sg_mult, &one, &QuadratureSpec::default()).unwrap();
        assert!(matches!(ext_apply(&sg_trans, 1.0, &v), Err(Error::ShiftMismatch { .. })));

        let resigma = SemigroupDescriptor::translation().with_sigma(2.0);
        let sin = parse_label("sin").unwrap();
        let w = embed(&SemigroupDescriptor::translation(), &sin, &QuadratureSpec::default()).unwrap();
        assert!(ext_apply(&resigma, 1.0, &w).is_err());
    }

    #[test]
    fn extension_property_commutes_with_the_action() {
        // a_inverse(T(t) g) = T_shifted(t) a_inverse(g) for embedded vectors.
        let sg = SemigroupDescriptor::translation();
        let sin = parse_label("sin").unwrap();
        let quad = QuadratureSpec::default();
        let t = 0.5;
        let lhs = a_inverse(&sg, &sg.apply(t, &sin).unwrap(), &quad).unwrap();
        // Note the raw action on the embedded element corresponds to the
        // shifted action on representatives divided by the shift factor.
        let rhs = sg.apply(t, &a_inverse(&sg, &sin, &quad).unwrap()).unwrap();
        let err = sup_norm(&lhs.sub(&rhs), &view()).unwrap();
        assert!(err < 1e-5, "commutation defect {err}");
    }

    #[test]
    fn favard0_of_smooth_function_is_finite() {
        let sg = SemigroupDescriptor::translation();
        let sin = parse_label("sin").unwrap();
        let est = favard0_norm(&sg, &sin, &ProbeSchedule::default(), &QuadratureSpec::default()).unwrap();
        assert_eq!(est.verdict, FavardVerdict::Finite);
        // rep = -(sin+cos)/2 is C^1 under the shifted translation family
        // with (A-1) rep = sin, so the Favard-1 value approaches ||sin|| = 1.
        assert!((est.value - 1.0).abs() < 0.02, "value {}", est.value);

        let zero = parse_label("zero").unwrap();
        let est = favard0_norm(&sg, &zero, &ProbeSchedule::default(), &QuadratureSpec::default()).unwrap();
        assert_eq!(est.value, 0.0);
    }
}
