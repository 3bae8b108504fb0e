//! Laplace-transform resolvents, resolvent powers, Hille–Yosida bound
//! probing, and the implicit-Euler approximation of the semigroup.
//!
//! The resolvent of the raw family is R(lambda)f = int_0^inf e^(-lambda s)
//! (T(s)f) ds, truncated at the certified cutoff from `QuadratureSpec` and
//! integrated by composite Simpson. Resolvent powers and the Euler iteration
//! tabulate each intermediate level on an extended estimation grid and
//! interpolate linearly off-grid (O(h^2) interpolation error); the extension
//! margins are sized so the clamped region carries mass below the quadrature
//! tolerance.

use crate::error::{Error, Result};
use crate::funcspace::{sup_norm, Function, Grid};
use crate::quad::{simpson_nodes, GridFn};
use crate::semigroups::{bound_estimate, QuadratureSpec, SemigroupDescriptor, SemigroupKind};

/// Node-spacing target (panels per unit of s) for the improper integrals;
/// resolves the oscillation scales of the built-in probe functions.
const PANELS_PER_UNIT: f64 = 4.0;
/// Cap on the effective panel count per resolvent quadrature.
const MAX_PANELS: usize = 2000;

/// Spectral parameter plus quadrature policy for one resolvent evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ResolventRequest {
    pub lambda: f64,
    pub quad: QuadratureSpec,
}

impl ResolventRequest {
    pub fn new(lambda: f64) -> Self {
        ResolventRequest { lambda, quad: QuadratureSpec::default() }
    }

    pub fn with_quad(lambda: f64, quad: QuadratureSpec) -> Self {
        ResolventRequest { lambda, quad }
    }
}

fn effective_panels(quad: &QuadratureSpec, s_max: f64) -> usize {
    quad.panels().max(((s_max * PANELS_PER_UNIT).ceil() as usize).min(MAX_PANELS))
}

/// Laplace quadrature of the raw family at decay rate `rate`:
/// x -> int_0^smax e^(-rate s) (T(s)f)(x) ds. Requires rate > omega.
pub(crate) fn laplace_at_rate(
    sg: &SemigroupDescriptor,
    rate: f64,
    f: &Function,
    quad: &QuadratureSpec,
) -> Result<Function> {
    let gap = rate - sg.omega();
    if !(gap > 0.0) {
        return Err(Error::Spectral { lambda: rate, omega: sg.omega() });
    }
    let bound = bound_estimate(f, &Grid::default_estimation())?;
    if bound == 0.0 {
        return Ok(Function::new(format!("R[{rate}](zero)"), Some(0.0), |_| 0.0));
    }
    let s_max = quad.s_max(bound, gap);
    let panels = effective_panels(quad, s_max);
    let hint = Some(bound * sg.m_const() / gap + quad.tol());
    let label = format!("R[{rate}]({})", f.label());

    match sg.kind() {
        SemigroupKind::Translation => {
            let g = f.clone();
            let nodes: Vec<(f64, f64)> = simpson_nodes(0.0, s_max, panels)
                .into_iter()
                .map(|(s, w)| (s, w * (-rate * s).exp()))
                .collect();
            Ok(Function::new(label, hint, move |x| {
                nodes.iter().map(|&(s, w)| w * g.eval(x + s)).sum()
            }))
        }
        _ => {
            let mut terms = Vec::with_capacity(2 * panels + 1);
            for (s, w) in simpson_nodes(0.0, s_max, panels) {
                terms.push((w * (-rate * s).exp(), sg.apply(s, f)?));
            }
            Ok(Function::new(label, hint, move |x| {
                terms.iter().map(|(w, g)| w * g.eval(x)).sum()
            }))
        }
    }
}

/// The resolvent R(lambda, A) f of the raw family.
///
/// For the multiplication family the closed form f / (lambda - q) is used;
/// `resolve_by_quadrature` keeps the Laplace path available as an
/// independent cross-check.
pub fn resolve(sg: &SemigroupDescriptor, req: &ResolventRequest, f: &Function) -> Result<Function> {
    let lambda = req.lambda;
    let gap = lambda - sg.omega();
    if !(gap > 0.0) {
        return Err(Error::Spectral { lambda, omega: sg.omega() });
    }
    match sg.kind() {
        SemigroupKind::Multiplication => {
            let q = sg.q().expect("multiplication carries q").clone();
            let g = f.clone();
            let hint = f.bound_hint().map(|b| b / gap);
            Ok(Function::new(
                format!("R[{lambda}]({})", f.label()),
                hint,
                move |x| g.eval(x) / (lambda - q.eval(x)),
            ))
        }
        _ => laplace_at_rate(sg, lambda, f, &req.quad),
    }
}

/// Resolvent by Laplace quadrature for every kind, including multiplication.
pub fn resolve_by_quadrature(
    sg: &SemigroupDescriptor,
    req: &ResolventRequest,
    f: &Function,
) -> Result<Function> {
    laplace_at_rate(sg, req.lambda, f, &req.quad)
}

/// Grid extension margins needed per resolvent level so that clamped
/// interpolation outside the table stays below the quadrature tolerance.
fn level_margins(sg: &SemigroupDescriptor, s_max: f64, gap: f64, tol: f64) -> (f64, f64) {
    match sg.kind() {
        SemigroupKind::Translation => (0.0, s_max),
        SemigroupKind::Multiplication => (0.0, 0.0),
        SemigroupKind::Heat => {
            // Kernel mass beyond distance E within time s_max is dominated by
            // exp(-gap*s - E^2/4s), maximal at s = E/(2 sqrt(gap)).
            let e = ((s_max / tol).ln().max(1.0)) / gap.sqrt();
            (e, e)
        }
    }
}

/// Memoized chain of `levels` resolvent applications at one lambda. Each
/// intermediate level is tabulated on an extended grid; `scale` multiplies
/// every level (1 for plain powers, lambda for the Euler iteration).
fn resolve_chain(
    sg: &SemigroupDescriptor,
    lambda: f64,
    levels: usize,
    f: &Function,
    quad: &QuadratureSpec,
    grid: &Grid,
    scale: f64,
) -> Result<Vec<Function>> {
    let gap = lambda - sg.omega();
    if !(gap > 0.0) {
        return Err(Error::Spectral { lambda, omega: sg.omega() });
    }
    let req = ResolventRequest::with_quad(lambda, *quad);
    if sg.kind() == SemigroupKind::Multiplication {
        // Closed form: each level multiplies by scale / (lambda - q).
        let mut out = Vec::with_capacity(levels);
        let mut current = f.clone();
        for _ in 0..levels {
            current = resolve(sg, &req, &current)?.scale(scale);
            out.push(current.clone());
        }
        return Ok(out);
    }

    let bound = bound_estimate(f, grid)?;
    let s_max = quad.s_max(bound.max(quad.tol()), gap);
    let (ml, mr) = level_margins(sg, s_max, gap, quad.tol());
    let h = grid.step();

    let mut out = Vec::with_capacity(levels);
    let mut current = f.clone();
    for level in 1..=levels {
        let r = resolve(sg, &req, &current)?.scale(scale);
        let remaining = (levels - level) as f64;
        let a = grid.a() - ml * remaining.max(0.0) - if level == levels { 0.0 } else { ml };
        let b = grid.b() + mr * remaining.max(0.0) + if level == levels { 0.0 } else { mr };
        let hint = r.bound_hint();
        let tab = GridFn::tabulate(&r, a.min(grid.a()), b.max(grid.b()), h)
            .into_function(r.label().to_string(), hint);
        out.push(tab.clone());
        current = tab;
    }
    Ok(out)
}

/// The k-fold resolvent power R(lambda, A)^k f.
pub fn resolve_power(
    sg: &SemigroupDescriptor,
    lambda: f64,
    k: usize,
    f: &Function,
    quad: &QuadratureSpec,
    grid: &Grid,
) -> Result<Function> {
    if k == 0 {
        return Err(Error::Argument("resolvent power needs k >= 1".to_string()));
    }
    if k == 1 {
        return resolve(sg, &ResolventRequest::with_quad(lambda, *quad), f);
    }
    let chain = resolve_chain(sg, lambda, k, f, quad, grid, 1.0)?;
    Ok(chain.into_iter().last().expect("nonempty chain"))
}

/// Lower bound for ||R(lambda,A)^k|| probed over a set of functions:
/// max over probes of ||R^k f|| / ||f|| on the given grid.
pub fn hy_probe(
    sg: &SemigroupDescriptor,
    lambda: f64,
    k: usize,
    probes: &[Function],
    quad: &QuadratureSpec,
    grid: &Grid,
) -> Result<f64> {
    Ok(hy_probe_profile(sg, lambda, &[k], probes, quad, grid)?[0])
}

/// `hy_probe` for several powers at once, sharing one memoized resolvent
/// chain per probe.
pub fn hy_probe_profile(
    sg: &SemigroupDescriptor,
    lambda: f64,
    ks: &[usize],
    probes: &[Function],
    quad: &QuadratureSpec,
    grid: &Grid,
) -> Result<Vec<f64>> {
    if probes.is_empty() {
        return Err(Error::Argument("hy_probe needs a nonempty probe list".to_string()));
    }
    if ks.iter().any(|&k| k == 0) {
        return Err(Error::Argument("resolvent power needs k >= 1".to_string()));
    }
    let k_max = *ks.iter().max().expect("nonempty ks");
    let mut best = vec![0.0f64; ks.len()];
    let mut usable = false;
    for f in probes {
        let nf = sup_norm(f, grid)?;
        if nf == 0.0 {
            continue;
        }
        usable = true;
        let chain = resolve_chain(sg, lambda, k_max, f, quad, grid, 1.0)?;
        for (slot, &k) in ks.iter().enumerate() {
            let nr = sup_norm(&chain[k - 1], grid)?;
            best[slot] = best[slot].max(nr / nf);
        }
    }
    if !usable {
        return Err(Error::Argument("hy_probe needs a probe with nonzero norm".to_string()));
    }
    Ok(best)
}

/// Implicit-Euler approximation ((m/t) R(m/t, A))^m f of T(t)f.
pub fn euler_approx(
    sg: &SemigroupDescriptor,
    t: f64,
    m: usize,
    f: &Function,
    quad: &QuadratureSpec,
    grid: &Grid,
) -> Result<Function> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("euler_approx needs t > 0, got {t}")));
    }
    if m == 0 {
        return Err(Error::Argument("euler_approx needs m >= 1".to_string()));
    }
    let lambda = m as f64 / t;
    let chain = resolve_chain(sg, lambda, m, f, quad, grid, lambda)?;
    Ok(chain
        .into_iter()
        .last()
        .expect("nonempty chain")
        .with_label(format!("euler[m={m},t={t}]({})", f.label())))
}
