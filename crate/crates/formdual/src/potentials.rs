//! Newtonian kernel `k(x, y) = |x - y|^(2-n)`, point-measure potentials,
//! surface layer potentials and their analytic exterior derivative and
//! codifferential, and point-source holomorphic pairs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{basis_size, wedge, Covector};
use crate::fields::{FormField, HolomorphicPair, KernelForm, KernelTag};
use crate::geometry::{Compensated, QuadratureSurface};

/// `(n-1)`-dimensional measure of the unit sphere `S^(n-1)`, exactly
/// `2 pi^(n/2) / Gamma(n/2)` evaluated with half-integer Gamma values.
pub fn sphere_measure(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "sphere measure needs n >= 2",
        });
    }
    Ok(2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n))
}

/// `Gamma(twice/2)` for positive integer `twice`.
fn gamma_half(twice: usize) -> f64 {
    if twice.is_multiple_of(2) {
        factorial(twice / 2 - 1)
    } else {
        let m = twice / 2;
        factorial(2 * m) / (4.0f64.powi(m as i32) * factorial(m)) * std::f64::consts::PI.sqrt()
    }
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

/// The normalization constant of the reproduction formulas:
/// `(n-2)` times the measure of `S^(n-1)`. Equals `4 pi` for n = 3.
pub fn newtonian_constant(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "the Newtonian kernel requires n >= 3",
        });
    }
    Ok((n as f64 - 2.0) * sphere_measure(n)?)
}

/// Degree-dependent sign `(-1)^(n r + n + 1)` appearing throughout the
/// reproduction formulas (the same sign relates `delta` to `*d*`).
pub fn gamma_sign(n: usize, r: usize) -> f64 {
    if (n * r + n + 1).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the point-measure reciprocity relation, `(-1)^(n r + r)`.
pub fn reciprocity_sign(n: usize, r: usize) -> f64 {
    if (n * r + r).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn squared_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.iter().zip(y.iter()).map(|(a, b)| (a - b) * (a - b)).sum())
}

/// `k(x, y) = |x - y|^(2-n)`.
pub fn kernel(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as i32;
    let rho2 = squared_distance(x, y)?;
    if rho2 == 0.0 {
        return Err(Error::Singularity);
    }
    Ok(rho2.powf((2 - n) as f64 / 2.0))
}

/// `d_x k` as a 1-covector: component `i` is `(2-n) rho^(-n) (x-y)_i`.
/// Antisymmetric in its arguments: `d_x k(x,y) = -d_y k(x,y)`.
pub fn kernel_grad_x(x: &[f64], y: &[f64]) -> Result<Covector> {
    let n = x.len();
    let rho2 = squared_distance(x, y)?;
    if rho2 == 0.0 {
        return Err(Error::Singularity);
    }
    let factor = (2.0 - n as f64) * rho2.powf(-(n as f64) / 2.0);
    let coords: Vec<f64> = x
        .iter()
        .zip(y.iter())
        .map(|(a, b)| factor * (a - b))
        .collect();
    Ok(Covector::one_form(&coords))
}

/// Hessian `d^2 k / dx_i dx_j` as a dense row-major n x n matrix:
/// `(2-n) [ delta_ij rho^(-n) - n rho^(-n-2) (x-y)_i (x-y)_j ]`.
pub fn kernel_hessian_x(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    let rho2 = squared_distance(x, y)?;
    if rho2 == 0.0 {
        return Err(Error::Singularity);
    }
    let nf = n as f64;
    let rho_mn = rho2.powf(-nf / 2.0);
    let rho_mn2 = rho_mn / rho2;
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let diag = if i == j { rho_mn } else { 0.0 };
            h[i * n + j] = (2.0 - nf) * (diag - nf * rho_mn2 * (x[i] - y[i]) * (x[j] - y[j]));
        }
    }
    Ok(h)
}

/// Trace of the kernel Hessian; analytically zero off the diagonal `x = y`,
/// returned as computed to expose the floating-point residue.
pub fn kernel_hessian_trace(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len();
    let h = kernel_hessian_x(x, y)?;
    Ok((0..n).map(|i| h[i * n + i]).sum())
}

/// `sum_ij H_ij e^j /\ (e_i _| xi)` for a symmetric matrix `H`.
fn hessian_wedge_contract(n: usize, h: &[f64], xi: &Covector) -> Covector {
    let mut out = Covector::zero(n, xi.degree());
    for i in 0..n {
        let contracted = xi.contract_basis(i);
        if contracted.coeffs().iter().all(|c| *c == 0.0) {
            continue;
        }
        for j in 0..n {
            let hij = h[i * n + j];
            if hij == 0.0 {
                continue;
            }
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let wedged = wedge(&Covector::one_form(&e), &contracted).expect("consistent dims");
            out.accumulate(&wedged, hij);
        }
    }
    out
}

/// `d delta (k(x, y) xi)` evaluated at `x`, from the kernel Hessian.
pub fn kernel_d_delta(x: &[f64], y: &[f64], xi: &Covector) -> Result<Covector> {
    let n = x.len();
    let h = kernel_hessian_x(x, y)?;
    Ok(hessian_wedge_contract(n, &h, xi).scaled(-1.0))
}

/// `delta d (k(x, y) xi)` evaluated at `x`; equals
/// `-(trace H) xi + sum_ij H_ij e^j /\ (e_i _| xi)`.
pub fn kernel_delta_d(x: &[f64], y: &[f64], xi: &Covector) -> Result<Covector> {
    let n = x.len();
    let h = kernel_hessian_x(x, y)?;
    let tr: f64 = (0..n).map(|i| h[i * n + i]).sum();
    let mut out = hessian_wedge_contract(n, &h, xi);
    out.accumulate(xi, -tr);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Surface densities
// ---------------------------------------------------------------------------

/// Per-node density `N(y)^flat /\ u(y)` over the surface nodes.
pub fn nwedge_density(surface: &QuadratureSurface, u: &dyn FormField) -> Result<Vec<Covector>> {
    let mut out = Vec::with_capacity(surface.len());
    for i in 0..surface.len() {
        let y = surface.node(i);
        let n_flat = Covector::one_form(surface.normal(i));
        let v = u.eval(y).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        out.push(wedge(&n_flat, &v)?);
    }
    Ok(out)
}

/// Per-node density `*(N(y)^flat /\ *u(y))`, of degree `r - 1`.
pub fn star_nwedge_star_density(
    surface: &QuadratureSurface,
    u: &dyn FormField,
) -> Result<Vec<Covector>> {
    let mut out = Vec::with_capacity(surface.len());
    for i in 0..surface.len() {
        let y = surface.node(i);
        let n_flat = Covector::one_form(surface.normal(i));
        let v = u.eval(y).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        let inner = wedge(&n_flat, &crate::exterior::hodge(&v))?;
        if inner.degree() > surface.ambient() {
            // Degenerate degree: the starred density vanishes identically.
            out.push(Covector::zero(surface.ambient(), 0));
            continue;
        }
        out.push(crate::exterior::hodge(&inner));
    }
    Ok(out)
}

fn validate_density(surface: &QuadratureSurface, density: &[Covector]) -> Result<usize> {
    if density.len() != surface.len() {
        return Err(Error::InvalidArgument(format!(
            "density has {} entries for {} nodes",
            density.len(),
            surface.len()
        )));
    }
    let degree = density
        .first()
        .map(|c| c.degree())
        .ok_or_else(|| Error::InvalidArgument("empty surface".into()))?;
    for c in density {
        if c.ambient() != surface.ambient() {
            return Err(Error::DimensionMismatch {
                left: c.ambient(),
                right: surface.ambient(),
            });
        }
        if c.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: c.degree(),
                right: degree,
            });
        }
    }
    if degree > surface.ambient() {
        return Err(Error::InvalidArgument(
            "density degree exceeds the ambient dimension".into(),
        ));
    }
    Ok(degree)
}

fn layer_sum(
    surface: &QuadratureSurface,
    density: &[Covector],
    x: &[f64],
    out_degree: usize,
    mut term: impl FnMut(usize, &Covector) -> Result<Covector>,
) -> Result<Covector> {
    surface.check_clearance(x)?;
    let n = surface.ambient();
    let mut acc = vec![Compensated::default(); basis_size(n, out_degree)];
    for (i, dens) in density.iter().enumerate() {
        let t = term(i, dens)?;
        debug_assert_eq!(t.degree(), out_degree);
        let w = surface.weight(i);
        for (a, c) in acc.iter_mut().zip(t.coeffs().iter()) {
            a.add(w * c);
        }
    }
    Covector::from_dense(n, out_degree, acc.iter().map(|a| a.value()).collect())
}

/// `sum_i w_i k(x, y_i) density_i`: the layer potential of a covector-valued
/// surface density, evaluated away from the exclusion zone.
pub fn layer_potential(
    surface: &QuadratureSurface,
    density: &[Covector],
    x: &[f64],
) -> Result<Covector> {
    let degree = validate_density(surface, density)?;
    layer_sum(surface, density, x, degree, |i, dens| {
        Ok(dens.scaled(kernel(x, surface.node(i))?))
    })
}

/// `d_x` of [`layer_potential`]: the kernel gradient is wedged onto the
/// density under the sum.
pub fn d_layer(surface: &QuadratureSurface, density: &[Covector], x: &[f64]) -> Result<Covector> {
    let degree = validate_density(surface, density)?;
    layer_sum(surface, density, x, degree + 1, |i, dens| {
        wedge(&kernel_grad_x(x, surface.node(i))?, dens)
    })
}

/// `delta_x` of [`layer_potential`]: minus the kernel-gradient contraction
/// of the density under the sum.
pub fn delta_layer(
    surface: &QuadratureSurface,
    density: &[Covector],
    x: &[f64],
) -> Result<Covector> {
    let degree = validate_density(surface, density)?;
    if degree == 0 {
        return Err(Error::DegreeUnderflow);
    }
    layer_sum(surface, density, x, degree - 1, |i, dens| {
        let g = kernel_grad_x(x, surface.node(i))?;
        Ok(dens.contract(g.coeffs()).scaled(-1.0))
    })
}

/// A layer potential as a form field: value, `d`, `delta` and `laplacian`
/// all differentiate the kernel under the quadrature sum in closed form.
#[derive(Clone)]
pub struct LayerPotentialForm {
    surface: Arc<QuadratureSurface>,
    density: Vec<Covector>,
    scale: f64,
    degree: usize,
}

impl LayerPotentialForm {
    pub fn new(
        surface: Arc<QuadratureSurface>,
        density: Vec<Covector>,
        scale: f64,
    ) -> Result<Self> {
        let degree = validate_density(&surface, &density)?;
        Ok(Self {
            surface,
            density,
            scale,
            degree,
        })
    }

    pub fn surface(&self) -> &QuadratureSurface {
        &self.surface
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn guard(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.surface.ambient() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: self.surface.ambient(),
            });
        }
        self.surface.check_clearance(x)
    }
}

impl FormField for LayerPotentialForm {
    fn ambient(&self) -> usize {
        self.surface.ambient()
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        self.guard(x).is_ok()
    }

    fn eval(&self, x: &[f64]) -> Result<Covector> {
        self.guard(x)?;
        Ok(layer_potential(&self.surface, &self.density, x)?.scaled(self.scale))
    }

    fn d(&self, x: &[f64]) -> Result<Covector> {
        self.guard(x)?;
        Ok(d_layer(&self.surface, &self.density, x)?.scaled(self.scale))
    }

    fn delta(&self, x: &[f64]) -> Result<Covector> {
        self.guard(x)?;
        Ok(delta_layer(&self.surface, &self.density, x)?.scaled(self.scale))
    }

    fn laplacian(&self, x: &[f64]) -> Result<Covector> {
        self.guard(x)?;
        let degree = self.degree;
        layer_sum(&self.surface, &self.density, x, degree, |i, dens| {
            let tr = kernel_hessian_trace(x, self.surface.node(i))?;
            Ok(dens.scaled(tr * self.scale))
        })
    }
}

// ---------------------------------------------------------------------------
// Point-source pairs and reciprocity
// ---------------------------------------------------------------------------

/// The holomorphic pair of the point source `U(x) = k(x, x0) xi`:
/// `w_lo = delta U`, `w_hi = d U`. Valid on all of space minus the center
/// and vanishing at infinity.
pub fn point_pair(x0: &[f64], xi: &Covector) -> Result<HolomorphicPair> {
    let n = x0.len();
    if xi.ambient() != n {
        return Err(Error::DimensionMismatch {
            left: xi.ambient(),
            right: n,
        });
    }
    let r = xi.degree();
    if r < 1 || r > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "point pair needs 1 <= degree <= n-1, got {r}"
        )));
    }
    let lo = KernelForm::single(x0, xi.clone(), KernelTag::Delta)?;
    let hi = KernelForm::single(x0, xi.clone(), KernelTag::D)?;
    HolomorphicPair::new(r, Arc::new(lo), Arc::new(hi))
}

/// Both point-measure mutual-potential pairings:
///
/// `p1 = *(xi1 /\ U2(x1))` with `U2 = k(., x2) xi2`, and symmetrically `p2`.
/// They satisfy `p1 = reciprocity_sign(n, r) * p2` where `r = deg(xi1)`;
/// the degrees must be complementary (`deg(xi2) = n - r`).
pub fn reciprocity_check(mu1: (&[f64], &Covector), mu2: (&[f64], &Covector)) -> Result<(f64, f64)> {
    let (x1, xi1) = mu1;
    let (x2, xi2) = mu2;
    let n = x1.len();
    if x2.len() != n || xi1.ambient() != n || xi2.ambient() != n {
        return Err(Error::DimensionMismatch {
            left: x2.len(),
            right: n,
        });
    }
    if xi1.degree() + xi2.degree() != n {
        return Err(Error::DegreeMismatch {
            left: xi1.degree(),
            right: n - xi2.degree().min(n),
        });
    }
    let k12 = kernel(x1, x2)?;
    let vol_mask = (1u32 << n) - 1;
    let p1 = wedge(xi1, xi2)?.coeff_mask(vol_mask) * k12;
    let p2 = wedge(xi2, xi1)?.coeff_mask(vol_mask) * k12;
    Ok((p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{check, is_holomorphic_pair};
    use crate::geometry::sphere_surface;
    use std::f64::consts::PI;

    #[test]
    fn constants() {
        assert!((sphere_measure(3).unwrap() - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_measure(4).unwrap() - 2.0 * PI * PI).abs() < 1e-13);
        assert!((newtonian_constant(3).unwrap() - 4.0 * PI).abs() < 1e-14);
        assert!((newtonian_constant(4).unwrap() - 4.0 * PI * PI).abs() < 1e-12);
        assert_eq!(gamma_sign(3, 0), 1.0);
        assert_eq!(gamma_sign(3, 1), -1.0);
        assert!(newtonian_constant(2).is_err());
    }

    #[test]
    fn kernel_values_and_errors() {
        assert!((kernel(&[1.0, 0.0, 0.0], &[0.0; 3]).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            kernel(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]),
            Err(Error::Singularity)
        ));

        // Hand-differentiated: grad of 1/rho at x = (2,0,0), y = 0.
        let g = kernel_grad_x(&[2.0, 0.0, 0.0], &[0.0; 3]).unwrap();
        assert!((g.coeffs()[0] + 0.25).abs() < 1e-15);
        assert!(g.coeffs()[1] == 0.0 && g.coeffs()[2] == 0.0);
    }

    #[test]
    fn kernel_grad_antisymmetry() {
        let x = [0.3, -1.2, 0.7];
        let y = [1.0, 0.4, -0.2];
        let gx = kernel_grad_x(&x, &y).unwrap();
        let gy = kernel_grad_x(&y, &x).unwrap();
        for (a, b) in gx.coeffs().iter().zip(gy.coeffs().iter()) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn hessian_trace_vanishes() {
        for n in [3usize, 4] {
            let x: Vec<f64> = (0..n).map(|i| 0.9 + 0.3 * i as f64).collect();
            let y = vec![0.1; n];
            let tr = kernel_hessian_trace(&x, &y).unwrap();
            assert!(tr.abs() <= 1e-12, "n={n}, trace {tr:.3e}");
        }
    }

    #[test]
    fn uniform_sphere_mean_value() {
        let s = sphere_surface(&[0.0; 3], 1.0, 32).unwrap();
        let density: Vec<Covector> = (0..s.len()).map(|_| Covector::scalar(3, 1.0)).collect();

        // Exterior at |x| = 2: the shell acts as a point charge, 4 pi / 2.
        let v = layer_potential(&s, &density, &[2.0, 0.0, 0.0]).unwrap();
        assert!((v.scalar_part() - 2.0 * PI).abs() <= 1e-8);

        // Interior: constant 4 pi.
        let v0 = layer_potential(&s, &density, &[0.0, 0.1, 0.0]).unwrap();
        assert!((v0.scalar_part() - 4.0 * PI).abs() <= 1e-8);

        // Zero density gives zero.
        let zeros: Vec<Covector> = (0..s.len()).map(|_| Covector::scalar(3, 0.0)).collect();
        let z = layer_potential(&s, &zeros, &[2.0, 0.0, 0.0]).unwrap();
        assert_eq!(z.scalar_part(), 0.0);
    }

    #[test]
    fn layer_derivatives_match_finite_differences() {
        let s = Arc::new(sphere_surface(&[0.0; 3], 1.0, 24).unwrap());
        let e1 = Covector::basis(3, &[1]).unwrap();
        let density: Vec<Covector> = (0..s.len())
            .map(|i| {
                let p = s.node(i);
                e1.scaled(1.0 + 0.5 * p[1])
            })
            .collect();
        let f = LayerPotentialForm::new(s, density, 1.0).unwrap();
        let x = [1.8, 0.3, -0.6];
        let h = 1e-5;

        let d_an = f.d(&x).unwrap();
        let d_fd = check::fd_d(&f, &x, h).unwrap();
        assert!(d_an.max_coeff_diff(&d_fd) <= 1e-6 * (1.0 + d_an.norm()));

        let delta_an = f.delta(&x).unwrap();
        let delta_fd = check::fd_delta(&f, &x, h).unwrap();
        assert!(delta_an.max_coeff_diff(&delta_fd) <= 1e-6 * (1.0 + delta_an.norm()));

        // Laplacian residue off the surface.
        let lap = f.laplacian(&x).unwrap();
        assert!(lap.norm() <= 1e-8);
    }

    #[test]
    fn proximity_guard() {
        let s = sphere_surface(&[0.0; 3], 1.0, 8).unwrap();
        let density: Vec<Covector> = (0..s.len()).map(|_| Covector::scalar(3, 1.0)).collect();
        let err = layer_potential(&s, &density, &[1.01, 0.0, 0.0]);
        match err {
            Err(Error::Proximity { distance, required }) => {
                assert!(distance < required);
                assert!((required - 0.05).abs() < 1e-12);
            }
            other => panic!("expected proximity error, got {other:?}"),
        }
    }

    #[test]
    fn point_pair_is_holomorphic() {
        for n in [3usize, 4] {
            for r in 1..n {
                let x0 = vec![0.0; n];
                let mask_entries: Vec<usize> = (1..=r).collect();
                let xi = Covector::basis(n, &mask_entries).unwrap();
                let pair = point_pair(&x0, &xi).unwrap();
                let samples: Vec<Vec<f64>> = vec![
                    (0..n).map(|i| 1.0 + 0.2 * i as f64).collect(),
                    (0..n).map(|i| -0.8 + 0.5 * i as f64).collect(),
                ];
                let chk = is_holomorphic_pair(&pair, &samples, 1e-10).unwrap();
                assert!(chk.holds, "n={n} r={r} residual {:?}", chk);
            }
        }
    }

    #[test]
    fn point_pair_decays() {
        let xi = Covector::basis(3, &[1]).unwrap();
        let pair = point_pair(&[0.0; 3], &xi).unwrap();
        let far = [1.0e3, 0.0, 0.0];
        assert!(pair.w_hi().eval(&far).unwrap().norm() <= 1e-5);
        assert!(pair.w_lo().eval(&far).unwrap().norm() <= 1e-5);
    }

    #[test]
    fn zero_weight_pair() {
        let xi = Covector::zero(3, 1);
        let pair = point_pair(&[0.5, 0.0, 0.0], &xi).unwrap();
        let x = [2.0, 1.0, 0.0];
        assert_eq!(pair.w_lo().eval(&x).unwrap().norm(), 0.0);
        assert_eq!(pair.w_hi().eval(&x).unwrap().norm(), 0.0);
    }

    #[test]
    fn reciprocity_relation() {
        let n = 3;
        let xi1 = Covector::basis(n, &[1]).unwrap();
        let mut xi2 = Covector::basis(n, &[2, 3]).unwrap().scaled(2.0);
        xi2.accumulate(&Covector::basis(n, &[1, 2]).unwrap(), -0.5);
        let x1 = [0.0, 0.0, 0.0];
        let x2 = [1.0, 1.0, 0.5];
        let (p1, p2) = reciprocity_check((&x1, &xi1), (&x2, &xi2)).unwrap();
        let sign = reciprocity_sign(n, 1);
        assert!((p1 - sign * p2).abs() <= 1e-12 * (1.0 + p1.abs()));

        // Zero charge gives zero on both sides.
        let z = Covector::zero(n, 1);
        let (q1, q2) = reciprocity_check((&x1, &z), (&x2, &xi2)).unwrap();
        assert_eq!((q1, q2), (0.0, 0.0));

        // Coincident points are rejected.
        assert!(matches!(
            reciprocity_check((&x1, &xi1), (&x1, &xi2)),
            Err(Error::Singularity)
        ));
    }

    #[test]
    fn density_builders() {
        let s = sphere_surface(&[0.0; 3], 1.0, 8).unwrap();

        // Scalar 1 density: N /\ 1 = N^flat.
        let ones = crate::fields::PolynomialForm::constant(&Covector::scalar(3, 1.0));
        let d1 = nwedge_density(&s, &ones).unwrap();
        for (i, c) in d1.iter().enumerate() {
            let nf = Covector::one_form(s.normal(i));
            assert!(c.max_coeff_diff(&nf) <= 1e-15);
        }

        // N /\ N^flat = 0 at every node.
        let nf_field = NodeNormalField { s: s.clone() };
        let nn = nwedge_density(&s, &nf_field).unwrap();
        assert!(nn.iter().all(|c| c.norm() <= 1e-14));

        // *(N /\ *N^flat) = 1 at every node (sign pinned +1).
        let mut idx = 0usize;
        let d2 = star_nwedge_star_density(&s, &nf_field).unwrap();
        for c in &d2 {
            assert!((c.scalar_part() - 1.0).abs() <= 1e-12);
            idx += 1;
        }
        assert_eq!(idx, s.len());

        // A pointwise-tangential 1-form has vanishing *(N /\ *u) density.
        let tangential = TangentialField { s: s.clone() };
        let d3 = star_nwedge_star_density(&s, &tangential).unwrap();
        assert!(d3.iter().all(|c| c.norm() <= 1e-13));
    }

    /// Test-only tangential field on an origin-centered sphere:
    /// u = (-x2, x1, 0) is orthogonal to the radial normal everywhere.
    struct TangentialField {
        s: QuadratureSurface,
    }

    impl FormField for TangentialField {
        fn ambient(&self) -> usize {
            3
        }
        fn degree(&self) -> usize {
            1
        }
        fn in_domain(&self, _x: &[f64]) -> bool {
            true
        }
        fn eval(&self, x: &[f64]) -> Result<Covector> {
            let _ = &self.s;
            Ok(Covector::one_form(&[-x[1], x[0], 0.0]))
        }
        fn d(&self, _x: &[f64]) -> Result<Covector> {
            unimplemented!()
        }
        fn delta(&self, _x: &[f64]) -> Result<Covector> {
            unimplemented!()
        }
        fn laplacian(&self, _x: &[f64]) -> Result<Covector> {
            unimplemented!()
        }
    }

    /// Test-only field returning the outward normal as a 1-form; defined via
    /// the radial direction so it extends off the surface.
    struct NodeNormalField {
        s: QuadratureSurface,
    }

    impl FormField for NodeNormalField {
        fn ambient(&self) -> usize {
            3
        }
        fn degree(&self) -> usize {
            1
        }
        fn in_domain(&self, _x: &[f64]) -> bool {
            true
        }
        fn eval(&self, x: &[f64]) -> Result<Covector> {
            let (c, r) = match self.s.descriptor() {
                crate::geometry::SurfaceDescriptor::Sphere { center, radius, .. } => {
                    (center.clone(), *radius)
                }
                _ => unreachable!(),
            };
            let dir: Vec<f64> = x.iter().zip(c.iter()).map(|(a, b)| (a - b) / r).collect();
            Ok(Covector::one_form(&dir))
        }
        fn d(&self, _x: &[f64]) -> Result<Covector> {
            unimplemented!()
        }
        fn delta(&self, _x: &[f64]) -> Result<Covector> {
            unimplemented!()
        }
        fn laplacian(&self, _x: &[f64]) -> Result<Covector> {
            unimplemented!()
        }
    }
}
