//! Boundary-integral reproduction of harmonic forms and holomorphic pairs
//! from their traces on a closed surface, plus the constructive exterior
//! decomposition `u = d u1 + delta u2`.
//!
//! For a harmonic r-form `u` and a surface `S` with outward normal `N`, the
//! interior reproduction reads
//!
//! ```text
//! u(x) = -(1/c_n) [ delta_x U[N /\ u](x) + gamma_r d_x U[*(N /\ *u)](x) ]
//! ```
//!
//! where `U[g]` is the layer potential of the node density `g`,
//! `c_n = (n-2) |S^(n-1)|` and `gamma_r = (-1)^(nr+n+1)`. For a field
//! harmonic outside the surface and vanishing at infinity the same formula
//! holds with the opposite overall sign. The pair versions add one coupling
//! term per component:
//!
//! ```text
//! w_hi(x) = -(1/c_n) [ delta U[N/\w_hi] + gamma_(r+1) d U[*(N/\*w_hi)] + d U[N/\w_lo] ]
//! w_lo(x) = -(1/c_n) [ delta U[N/\w_lo] + gamma_(r-1) d U[*(N/\*w_lo)]
//!                      + gamma_(r+1) delta U[*(N/\*w_hi)] ]
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::Covector;
use crate::fields::{FormField, HolomorphicPair};
use crate::geometry::QuadratureSurface;
use crate::potentials::{
    d_layer, delta_layer, gamma_sign, newtonian_constant, nwedge_density, star_nwedge_star_density,
    LayerPotentialForm,
};

/// Residual threshold above which the precondition warning flag is set.
pub const PRECONDITION_TOL: f64 = 1e-6;

/// Orientation of the reproduction formula relative to the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Interior,
    Exterior,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Interior => -1.0,
            Side::Exterior => 1.0,
        }
    }

    fn check_position(self, surface: &QuadratureSurface, x: &[f64]) -> Result<()> {
        let inside = surface.contains(x);
        match self {
            Side::Interior if !inside => Err(Error::InvalidArgument(
                "reproduction point is not interior to the surface".into(),
            )),
            Side::Exterior if inside => Err(Error::InvalidArgument(
                "reproduction point is not exterior to the surface".into(),
            )),
            _ => surface.check_clearance(x),
        }
    }
}

/// A reproduced value together with input-quality diagnostics.
#[derive(Clone, Debug)]
pub struct Reproduction {
    pub value: Covector,
    /// Max of `|d u|`, `|delta u|` sampled on the surface nodes.
    pub harmonic_residual: f64,
    /// Far-sample norm relative to the surface trace (exterior side only;
    /// zero for interior reproduction).
    pub decay_residual: f64,
    /// Set when a sampled precondition residual exceeds [`PRECONDITION_TOL`].
    pub warning: bool,
}

/// Both components reproduced for a holomorphic pair.
#[derive(Clone, Debug)]
pub struct PairReproduction {
    pub hi: Covector,
    pub lo: Covector,
    /// Max pair-equation residual sampled on the surface nodes.
    pub pair_residual: f64,
    pub warning: bool,
}

fn sample_nodes(surface: &QuadratureSurface) -> Vec<Vec<f64>> {
    let stride = (surface.len() / 16).max(1);
    (0..surface.len())
        .step_by(stride)
        .map(|i| surface.node(i).to_vec())
        .collect()
}

fn sampled_harmonic_residual(u: &dyn FormField, surface: &QuadratureSurface) -> Result<f64> {
    let samples = sample_nodes(surface);
    let chk = crate::fields::is_harmonic(u, &samples, f64::INFINITY)?;
    Ok(chk.max_residual)
}

fn sampled_pair_residual(w: &HolomorphicPair, surface: &QuadratureSurface) -> Result<f64> {
    let samples = sample_nodes(surface);
    let chk = crate::fields::is_holomorphic_pair(w, &samples, f64::INFINITY)?;
    Ok(chk.max_residual())
}

/// Far-sample vanishing check: `|u(far)| / max_S |u|` at a point a thousand
/// surface scales out. An evaluation failure out there counts as a failed
/// check rather than an error.
fn decay_residual<F>(surface: &QuadratureSurface, sup_trace: f64, eval: F) -> f64
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let descriptor = surface.descriptor();
    let mut far = descriptor.center().to_vec();
    far[0] += 1e3 * descriptor.scale();
    match eval(&far) {
        Ok(norm) => norm / sup_trace.max(1e-300),
        Err(_) => f64::INFINITY,
    }
}

/// `delta U[density]` at `x`, or zero when the density degree overflows.
fn delta_term(
    surface: &QuadratureSurface,
    density: Option<&[Covector]>,
    x: &[f64],
    out_degree: usize,
) -> Result<Covector> {
    match density {
        Some(d) => delta_layer(surface, d, x),
        None => {
            surface.check_clearance(x)?;
            Ok(Covector::zero(surface.ambient(), out_degree))
        }
    }
}

/// `d U[density]` at `x`, or zero when the density degree is degenerate.
fn d_term(
    surface: &QuadratureSurface,
    density: Option<&[Covector]>,
    x: &[f64],
    out_degree: usize,
) -> Result<Covector> {
    match density {
        Some(d) => d_layer(surface, d, x),
        None => {
            surface.check_clearance(x)?;
            Ok(Covector::zero(surface.ambient(), out_degree))
        }
    }
}

/// `N /\ u` node density, or `None` when `deg u = n` (it vanishes identically).
fn nwedge_or_none(surface: &QuadratureSurface, u: &dyn FormField) -> Result<Option<Vec<Covector>>> {
    if u.degree() + 1 > surface.ambient() {
        return Ok(None);
    }
    Ok(Some(nwedge_density(surface, u)?))
}

/// `*(N /\ *u)` node density, or `None` when `deg u = 0`.
fn snss_or_none(surface: &QuadratureSurface, u: &dyn FormField) -> Result<Option<Vec<Covector>>> {
    if u.degree() == 0 {
        return Ok(None);
    }
    Ok(Some(star_nwedge_star_density(surface, u)?))
}

fn reproduce_form(
    u: &dyn FormField,
    surface: &QuadratureSurface,
    x: &[f64],
    side: Side,
) -> Result<Reproduction> {
    let n = surface.ambient();
    if u.ambient() != n {
        return Err(Error::DimensionMismatch {
            left: u.ambient(),
            right: n,
        });
    }
    side.check_position(surface, x)?;
    let r = u.degree();
    let c_n = newtonian_constant(n)?;

    let density_hi = nwedge_or_none(surface, u)?;
    let density_lo = snss_or_none(surface, u)?;

    let term1 = delta_term(surface, density_hi.as_deref(), x, r)?;
    let term2 = d_term(surface, density_lo.as_deref(), x, r)?;

    let mut value = term1;
    value.accumulate(&term2, gamma_sign(n, r));
    let value = value.scaled(side.sign() / c_n);

    let harmonic_residual = sampled_harmonic_residual(u, surface)?;
    let decay = if side == Side::Exterior {
        let sup_trace = sample_nodes(surface)
            .iter()
            .map(|y| u.eval(y).map(|c| c.norm()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        decay_residual(surface, sup_trace, |far| Ok(u.eval(far)?.norm()))
    } else {
        0.0
    };
    Ok(Reproduction {
        value,
        harmonic_residual,
        decay_residual: decay,
        warning: harmonic_residual > PRECONDITION_TOL || decay > 1e-2,
    })
}

/// Reproduce a field harmonic on a neighborhood of the closed surface at an
/// interior point. A sampled harmonicity residual above [`PRECONDITION_TOL`]
/// sets the warning flag on the result.
pub fn reproduce_interior(
    u: &dyn FormField,
    surface: &QuadratureSurface,
    x: &[f64],
) -> Result<Reproduction> {
    reproduce_form(u, surface, x, Side::Interior)
}

/// Reproduce a field harmonic outside the surface and vanishing at infinity
/// at an exterior point (the sign-flipped formula).
pub fn reproduce_exterior(
    u: &dyn FormField,
    surface: &QuadratureSurface,
    x: &[f64],
) -> Result<Reproduction> {
    reproduce_form(u, surface, x, Side::Exterior)
}

fn reproduce_pair(
    w: &HolomorphicPair,
    surface: &QuadratureSurface,
    x: &[f64],
    side: Side,
) -> Result<PairReproduction> {
    let n = surface.ambient();
    if w.ambient() != n {
        return Err(Error::DimensionMismatch {
            left: w.ambient(),
            right: n,
        });
    }
    side.check_position(surface, x)?;
    let r = w.central_degree();
    let c_n = newtonian_constant(n)?;

    let w_lo = w.w_lo().as_ref();
    let w_hi = w.w_hi().as_ref();

    let nw_hi = nwedge_or_none(surface, w_hi)?; // degree r+2 or None
    let ss_hi = snss_or_none(surface, w_hi)?; // degree r
    let nw_lo = nwedge_or_none(surface, w_lo)?; // degree r
    let ss_lo = snss_or_none(surface, w_lo)?; // degree r-2 or None

    // hi component.
    let mut hi = delta_term(surface, nw_hi.as_deref(), x, r + 1)?;
    hi.accumulate(
        &d_term(surface, ss_hi.as_deref(), x, r + 1)?,
        gamma_sign(n, r + 1),
    );
    hi.accumulate(&d_term(surface, nw_lo.as_deref(), x, r + 1)?, 1.0);
    let hi = hi.scaled(side.sign() / c_n);

    // lo component.
    let mut lo = delta_term(surface, nw_lo.as_deref(), x, r.saturating_sub(1))?;
    if r >= 2 {
        lo.accumulate(
            &d_term(surface, ss_lo.as_deref(), x, r - 1)?,
            gamma_sign(n, r - 1),
        );
    }
    lo.accumulate(
        &delta_term(surface, ss_hi.as_deref(), x, r.saturating_sub(1))?,
        gamma_sign(n, r + 1),
    );
    let lo = lo.scaled(side.sign() / c_n);

    let pair_residual = sampled_pair_residual(w, surface)?;
    Ok(PairReproduction {
        hi,
        lo,
        pair_residual,
        warning: pair_residual > PRECONDITION_TOL,
    })
}

/// Reproduce both components of a holomorphic pair at an interior point.
pub fn reproduce_pair_interior(
    w: &HolomorphicPair,
    surface: &QuadratureSurface,
    x: &[f64],
) -> Result<PairReproduction> {
    reproduce_pair(w, surface, x, Side::Interior)
}

/// Exterior analog for pairs vanishing at infinity.
pub fn reproduce_pair_exterior(
    w: &HolomorphicPair,
    surface: &QuadratureSurface,
    x: &[f64],
) -> Result<PairReproduction> {
    reproduce_pair(w, surface, x, Side::Exterior)
}

/// The constructive exterior decomposition: both parts are layer potentials
/// over the given surface, so they are weakly harmonic off it, vanish at
/// infinity, and satisfy `delta u1 = 0`, `d u2 = 0` up to quadrature error.
pub struct ExteriorDecomposition {
    /// Degree r-1 potential; `d u1` is the first summand.
    pub u1: LayerPotentialForm,
    /// Degree r+1 potential; `delta u2` is the second summand.
    pub u2: LayerPotentialForm,
}

/// Decompose a field harmonic outside the enclosed compact and vanishing at
/// infinity as `u = d u1 + delta u2` on the far side of the surface.
pub fn decompose_exterior(
    u: &dyn FormField,
    surface: &QuadratureSurface,
) -> Result<ExteriorDecomposition> {
    let n = surface.ambient();
    if u.ambient() != n {
        return Err(Error::DimensionMismatch {
            left: u.ambient(),
            right: n,
        });
    }
    let r = u.degree();
    if r < 1 || r > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "decomposition needs 1 <= degree <= n-1, got {r}"
        )));
    }
    let c_n = newtonian_constant(n)?;
    let surface = Arc::new(surface.clone());

    let density2 = nwedge_density(surface.as_ref(), u)?;
    let density1 = star_nwedge_star_density(surface.as_ref(), u)?;

    let u1 = LayerPotentialForm::new(surface.clone(), density1, gamma_sign(n, r) / c_n)?;
    let u2 = LayerPotentialForm::new(surface, density2, 1.0 / c_n)?;
    Ok(ExteriorDecomposition { u1, u2 })
}

/// Residuals of the decomposition constraints over a point set.
#[derive(Clone, Copy, Debug)]
pub struct DecompositionResiduals {
    /// `max |d u1 + delta u2 - u|`.
    pub reconstruction: f64,
    /// `max |delta u1|` (zero by convention when `deg u1 = 0`).
    pub delta_u1: f64,
    /// `max |d u2|`.
    pub d_u2: f64,
    /// `max |u|` over the same points, for relative scaling.
    pub u_scale: f64,
}

/// Evaluate the decomposition constraints at each point.
pub fn decomposition_residuals(
    u: &dyn FormField,
    parts: &ExteriorDecomposition,
    points: &[Vec<f64>],
) -> Result<DecompositionResiduals> {
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "residual evaluation requires at least one point".into(),
        ));
    }
    let mut reconstruction: f64 = 0.0;
    let mut delta_u1: f64 = 0.0;
    let mut d_u2: f64 = 0.0;
    let mut u_scale: f64 = 0.0;
    for x in points {
        let mut sum = parts.u1.d(x)?;
        sum.accumulate(&parts.u2.delta(x)?, 1.0);
        let target = u.eval(x)?;
        reconstruction = reconstruction.max(sum.max_coeff_diff(&target));
        u_scale = u_scale.max(target.norm());
        if parts.u1.degree() > 0 {
            delta_u1 = delta_u1.max(parts.u1.delta(x)?.norm());
        }
        d_u2 = d_u2.max(parts.u2.d(x)?.norm());
    }
    Ok(DecompositionResiduals {
        reconstruction,
        delta_u1,
        d_u2,
        u_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Covector;
    use crate::fields::{KernelForm, KernelTag, PolynomialForm};
    use crate::geometry::sphere_surface;
    use crate::polynomial::Polynomial;
    use crate::potentials::point_pair;

    fn harmonic_one_form_n3() -> PolynomialForm {
        // d(x1^2 - x2^2) = 2 x1 e^1 - 2 x2 e^2.
        let p = Polynomial::from_terms(3, vec![(vec![2, 0, 0], 1.0), (vec![0, 2, 0], -1.0)]);
        PolynomialForm::monomial_form(3, 0, p).unwrap().d_form()
    }

    fn kernel_gradient_field(center: &[f64]) -> KernelForm {
        KernelForm::single(center, Covector::scalar(center.len(), 1.0), KernelTag::D).unwrap()
    }

    #[test]
    fn interior_reproduction_polynomial() {
        let u = harmonic_one_form_n3();
        let s = sphere_surface(&[0.0; 3], 1.0, 32).unwrap();
        let x = [0.3, 0.1, -0.2];
        let rep = reproduce_interior(&u, &s, &x).unwrap();
        assert!(!rep.warning, "residual {}", rep.harmonic_residual);
        let exact = u.eval(&x).unwrap();
        assert!(
            rep.value.max_coeff_diff(&exact) <= 1e-7,
            "err {:.3e}",
            rep.value.max_coeff_diff(&exact)
        );
    }

    #[test]
    fn interior_reproduction_constant_form() {
        let u = PolynomialForm::constant(&Covector::basis(3, &[1]).unwrap());
        let s = sphere_surface(&[0.0; 3], 1.0, 24).unwrap();
        let x = [0.25, -0.3, 0.4];
        let rep = reproduce_interior(&u, &s, &x).unwrap();
        let exact = u.eval(&x).unwrap();
        assert!(rep.value.max_coeff_diff(&exact) <= 1e-8);
    }

    #[test]
    fn interior_reproduction_zero() {
        let u = PolynomialForm::zero(3, 1);
        let s = sphere_surface(&[0.0; 3], 1.0, 8).unwrap();
        let rep = reproduce_interior(&u, &s, &[0.1, 0.0, 0.0]).unwrap();
        assert_eq!(rep.value.norm(), 0.0);
    }

    #[test]
    fn interior_reproduction_degree_bounds() {
        // r = 0 and r = n exercise the degenerate-density branches.
        let s = sphere_surface(&[0.0; 3], 1.0, 24).unwrap();
        let x = [0.2, 0.3, -0.1];

        let f0 = PolynomialForm::constant(&Covector::scalar(3, 2.5));
        let rep0 = reproduce_interior(&f0, &s, &x).unwrap();
        assert!((rep0.value.scalar_part() - 2.5).abs() <= 1e-8);

        let fn_top = PolynomialForm::constant(&Covector::volume(3, -1.5));
        let rep_top = reproduce_interior(&fn_top, &s, &x).unwrap();
        assert!((rep_top.value.coeff_mask(0b111) + 1.5).abs() <= 1e-8);
    }

    #[test]
    fn exterior_reproduction_and_contour_independence() {
        let u = kernel_gradient_field(&[0.0; 3]);
        let x = [2.0, 1.0, 0.0];
        let exact = u.eval(&x).unwrap();

        let s1 = sphere_surface(&[0.0; 3], 1.0, 32).unwrap();
        let rep1 = reproduce_exterior(&u, &s1, &x).unwrap();
        assert!(rep1.value.max_coeff_diff(&exact) <= 1e-7);

        let s2 = sphere_surface(&[0.0; 3], 1.5, 32).unwrap();
        let rep2 = reproduce_exterior(&u, &s2, &x).unwrap();
        assert!(rep1.value.max_coeff_diff(&rep2.value) <= 1e-7);
    }

    #[test]
    fn reproduction_over_an_ellipsoid() {
        // Same reproduction through the pushed-forward rule: exercises the
        // transformed weights and normals, not just the total area.
        let u = harmonic_one_form_n3();
        let e = crate::geometry::ellipsoid_surface(&[0.0; 3], &[1.0, 1.3, 0.8], 40).unwrap();
        let x = [0.25, 0.1, -0.15];
        let rep = reproduce_interior(&u, &e, &x).unwrap();
        let exact = u.eval(&x).unwrap();
        assert!(
            rep.value.max_coeff_diff(&exact) <= 1e-7,
            "err {:.3e}",
            rep.value.max_coeff_diff(&exact)
        );

        let v = kernel_gradient_field(&[0.1, 0.0, 0.0]);
        let y = [2.0, 1.0, 0.5];
        let rep = reproduce_exterior(&v, &e, &y).unwrap();
        let exact = v.eval(&y).unwrap();
        assert!(rep.value.max_coeff_diff(&exact) <= 1e-7);
    }

    #[test]
    fn pair_reproduction_interior() {
        let xi = Covector::basis(3, &[1]).unwrap();
        let w = point_pair(&[3.0, 0.0, 0.0], &xi).unwrap();
        let s = sphere_surface(&[0.0; 3], 1.0, 32).unwrap();
        let x = [0.2, 0.0, 0.0];
        let rep = reproduce_pair_interior(&w, &s, &x).unwrap();
        assert!(!rep.warning);
        let hi_exact = w.w_hi().eval(&x).unwrap();
        let lo_exact = w.w_lo().eval(&x).unwrap();
        assert!(rep.hi.max_coeff_diff(&hi_exact) <= 1e-7);
        assert!(rep.lo.max_coeff_diff(&lo_exact) <= 1e-7);
    }

    #[test]
    fn pair_reproduction_constant_pair() {
        // (w_lo, w_hi) = (c, 0) reproduces to (0, c).
        let c = 1.75;
        let lo = PolynomialForm::constant(&Covector::scalar(3, c));
        let hi = PolynomialForm::zero(3, 2);
        let w = HolomorphicPair::new(1, Arc::new(lo), Arc::new(hi)).unwrap();
        let s = sphere_surface(&[0.0; 3], 1.0, 24).unwrap();
        let rep = reproduce_pair_interior(&w, &s, &[0.1, 0.2, 0.0]).unwrap();
        assert!(rep.hi.norm() <= 1e-8);
        assert!((rep.lo.scalar_part() - c).abs() <= 1e-8);
    }

    #[test]
    fn pair_reproduction_exterior() {
        let xi = Covector::basis(3, &[2]).unwrap();
        let w = point_pair(&[0.0; 3], &xi).unwrap();
        let x = [0.0, 2.0, 1.0];
        let hi_exact = w.w_hi().eval(&x).unwrap();
        let lo_exact = w.w_lo().eval(&x).unwrap();
        for radius in [1.0, 1.4] {
            let s = sphere_surface(&[0.0; 3], radius, 32).unwrap();
            let rep = reproduce_pair_exterior(&w, &s, &x).unwrap();
            assert!(rep.hi.max_coeff_diff(&hi_exact) <= 1e-7, "radius {radius}");
            assert!(rep.lo.max_coeff_diff(&lo_exact) <= 1e-7, "radius {radius}");
        }
    }

    #[test]
    fn pair_reproduction_zero() {
        let w = HolomorphicPair::zero(3, 2).unwrap();
        let s = sphere_surface(&[0.0; 3], 1.0, 8).unwrap();
        let rep = reproduce_pair_interior(&w, &s, &[0.0, 0.1, 0.0]).unwrap();
        assert_eq!(rep.hi.norm(), 0.0);
        assert_eq!(rep.lo.norm(), 0.0);
    }

    #[test]
    fn non_harmonic_input_is_flagged() {
        // u = x1 e^1 is not harmonic; the result carries a warning.
        let u = PolynomialForm::monomial_form(3, 0b001, Polynomial::coordinate(3, 0)).unwrap();
        let s = sphere_surface(&[0.0; 3], 1.0, 16).unwrap();
        let rep = reproduce_interior(&u, &s, &[0.2, 0.0, 0.0]).unwrap();
        assert!(rep.warning);
        assert!(rep.harmonic_residual > 0.5);
    }

    #[test]
    fn non_decaying_exterior_input_is_flagged() {
        // A constant form is harmonic but does not vanish at infinity; the
        // exterior reproduction flags it (and cannot equal the field).
        let u = PolynomialForm::constant(&Covector::basis(3, &[1]).unwrap());
        let s = sphere_surface(&[0.0; 3], 1.0, 16).unwrap();
        let rep = reproduce_exterior(&u, &s, &[2.0, 0.5, 0.0]).unwrap();
        assert!(rep.warning);
        assert!(rep.decay_residual > 1e-2);

        // A decaying field stays clean.
        let v = kernel_gradient_field(&[0.0; 3]);
        let rep = reproduce_exterior(&v, &s, &[2.0, 0.5, 0.0]).unwrap();
        assert!(!rep.warning, "{rep:?}");
        assert!(rep.decay_residual <= 1e-5);
    }

    #[test]
    fn proximity_and_side_errors() {
        let u = harmonic_one_form_n3();
        let s = sphere_surface(&[0.0; 3], 1.0, 16).unwrap();
        assert!(matches!(
            reproduce_interior(&u, &s, &[0.97, 0.0, 0.0]),
            Err(Error::Proximity { .. })
        ));
        assert!(matches!(
            reproduce_interior(&u, &s, &[2.0, 0.0, 0.0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn decompose_exterior_kernel_gradient() {
        let u = kernel_gradient_field(&[0.0; 3]);
        let s = sphere_surface(&[0.0; 3], 1.0, 32).unwrap();
        let parts = decompose_exterior(&u, &s).unwrap();

        let points: Vec<Vec<f64>> = vec![
            vec![2.0, 0.5, 0.0],
            vec![-1.5, 1.0, 1.0],
            vec![0.0, -2.5, 0.7],
        ];
        let res = decomposition_residuals(&u, &parts, &points).unwrap();
        assert!(res.reconstruction <= 1e-6 * res.u_scale.max(1.0), "{res:?}");
        assert!(res.delta_u1 <= 1e-6, "{res:?}");
        assert!(res.d_u2 <= 1e-6, "{res:?}");

        // Monopole flux makes the parts decay at the kernel rate 1/rho.
        let far = [100.0, 0.0, 0.0];
        let sup_u = (0..s.len())
            .map(|i| u.eval(s.node(i)).unwrap().norm())
            .fold(0.0, f64::max);
        assert!(parts.u1.eval(&far).unwrap().norm() <= 2e-2 * sup_u);
        assert!(parts.u2.eval(&far).unwrap().norm() <= 2e-2 * sup_u);
    }

    #[test]
    fn decompose_exterior_dipole_decay() {
        // Zero net flux: the parts decay one kernel order faster, meeting
        // the 1e-3 bound at range 100.
        let terms = vec![
            crate::fields::KernelTerm {
                center: vec![0.2, 0.0, 0.0],
                xi: Covector::scalar(3, 1.0),
                tag: KernelTag::D,
            },
            crate::fields::KernelTerm {
                center: vec![-0.2, 0.0, 0.0],
                xi: Covector::scalar(3, -1.0),
                tag: KernelTag::D,
            },
        ];
        let u = KernelForm::new(3, 1, terms).unwrap();
        let s = sphere_surface(&[0.0; 3], 1.0, 32).unwrap();
        let parts = decompose_exterior(&u, &s).unwrap();

        let far = [100.0, 0.0, 0.0];
        let sup_u = (0..s.len())
            .map(|i| u.eval(s.node(i)).unwrap().norm())
            .fold(0.0, f64::max);
        assert!(parts.u1.eval(&far).unwrap().norm() <= 1e-3 * sup_u);
        assert!(parts.u2.eval(&far).unwrap().norm() <= 1e-3 * sup_u);
    }

    #[test]
    fn reproduction_is_linear() {
        let u1 = harmonic_one_form_n3();
        let u2 = PolynomialForm::constant(&Covector::basis(3, &[3]).unwrap());
        let s = sphere_surface(&[0.0; 3], 1.0, 24).unwrap();
        let x = [0.3, -0.2, 0.1];

        let a = 2.25;
        let b = -0.75;
        let combo = crate::fields::LinearCombination::new(vec![
            (a, Arc::new(u1.clone()) as Arc<dyn FormField>),
            (b, Arc::new(u2.clone()) as Arc<dyn FormField>),
        ])
        .unwrap();

        let rep_combo = reproduce_interior(&combo, &s, &x).unwrap();
        let rep1 = reproduce_interior(&u1, &s, &x).unwrap();
        let rep2 = reproduce_interior(&u2, &s, &x).unwrap();
        let mut expected = rep1.value.scaled(a);
        expected.accumulate(&rep2.value, b);
        assert!(rep_combo.value.max_coeff_diff(&expected) <= 1e-12);
    }
}
