//! Closed oriented hypersurfaces as quadrature objects, and closed-curve
//! cycles for period integrals.
//!
//! Spheres carry product rules (Gauss-Legendre in the polar direction(s),
//! trapezoid in azimuth); ellipsoids are affine pushforwards of the sphere
//! rules with transformed normals and Jacobian weights. Surface integration
//! uses Neumaier-compensated summation in a fixed node order, so results are
//! deterministic and stable under node permutation.

use crate::error::{Error, Result};
use crate::exterior::Covector;

/// Fraction of the surface scale that layer-potential evaluation points must
/// keep clear of the surface.
pub const EXCLUSION_FACTOR: f64 = 0.05;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            if m == 1 {
                p1 = x;
            }
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if m == 1 { x } else { p1 };
            dp = m as f64 * (x * p - p0) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Shape metadata of a quadrature surface.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceDescriptor {
    Sphere {
        center: Vec<f64>,
        radius: f64,
        order: usize,
    },
    Ellipsoid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        order: usize,
    },
}

impl SurfaceDescriptor {
    pub fn order(&self) -> usize {
        match self {
            SurfaceDescriptor::Sphere { order, .. } => *order,
            SurfaceDescriptor::Ellipsoid { order, .. } => *order,
        }
    }

    /// Characteristic length used for the exclusion zone.
    pub fn scale(&self) -> f64 {
        match self {
            SurfaceDescriptor::Sphere { radius, .. } => *radius,
            SurfaceDescriptor::Ellipsoid { semi_axes, .. } => {
                semi_axes.iter().copied().fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn center(&self) -> &[f64] {
        match self {
            SurfaceDescriptor::Sphere { center, .. } => center,
            SurfaceDescriptor::Ellipsoid { center, .. } => center,
        }
    }
}

/// A closed oriented hypersurface discretized as nodes, positive surface
/// weights and outward unit normals, stored flat with stride `n`.
#[derive(Clone, Debug)]
pub struct QuadratureSurface {
    n: usize,
    nodes: Vec<f64>,
    normals: Vec<f64>,
    weights: Vec<f64>,
    descriptor: SurfaceDescriptor,
}

impl QuadratureSurface {
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.n..(i + 1) * self.n]
    }

    pub fn normal(&self, i: usize) -> &[f64] {
        &self.normals[i * self.n..(i + 1) * self.n]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn descriptor(&self) -> &SurfaceDescriptor {
        &self.descriptor
    }

    /// Total quadrature weight (approximates the surface measure).
    pub fn total_weight(&self) -> f64 {
        let mut acc = Compensated::default();
        for w in &self.weights {
            acc.add(*w);
        }
        acc.value()
    }

    /// Distance from `x` to the surface (exact for spheres, node-based for
    /// ellipsoids).
    pub fn guard_distance(&self, x: &[f64]) -> f64 {
        match &self.descriptor {
            SurfaceDescriptor::Sphere { center, radius, .. } => {
                let rho = dist(x, center);
                (rho - radius).abs()
            }
            SurfaceDescriptor::Ellipsoid { .. } => (0..self.len())
                .map(|i| dist(x, self.node(i)))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Minimum stand-off distance for layer-potential evaluation.
    pub fn exclusion_distance(&self) -> f64 {
        EXCLUSION_FACTOR * self.descriptor.scale()
    }

    /// Whether `x` lies strictly inside the enclosed compact.
    pub fn contains(&self, x: &[f64]) -> bool {
        match &self.descriptor {
            SurfaceDescriptor::Sphere { center, radius, .. } => dist(x, center) < *radius,
            SurfaceDescriptor::Ellipsoid {
                center, semi_axes, ..
            } => {
                let s: f64 = x
                    .iter()
                    .zip(center.iter())
                    .zip(semi_axes.iter())
                    .map(|((xi, ci), ai)| ((xi - ci) / ai).powi(2))
                    .sum();
                s < 1.0
            }
        }
    }

    /// Fail unless `x` keeps the required clearance from the surface.
    pub fn check_clearance(&self, x: &[f64]) -> Result<()> {
        let distance = self.guard_distance(x);
        let required = self.exclusion_distance();
        if distance < required {
            return Err(Error::Proximity { distance, required });
        }
        Ok(())
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Unit-sphere product rule directions and weights for `S^(n-1)`, n in {3, 4}.
/// Directions come out in a fixed deterministic order.
fn unit_sphere_rule(n: usize, order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order < 4 {
        return Err(Error::InvalidArgument(format!(
            "surface quadrature order {order} < 4"
        )));
    }
    match n {
        3 => {
            // Gauss-Legendre in cos(theta), trapezoid in phi.
            let (t_nodes, t_weights) = gauss_legendre(order);
            let m_phi = 2 * order;
            let dphi = 2.0 * std::f64::consts::PI / m_phi as f64;
            let mut dirs = Vec::with_capacity(order * m_phi * n);
            let mut weights = Vec::with_capacity(order * m_phi);
            for (t, wt) in t_nodes.iter().zip(t_weights.iter()) {
                let sin_theta = (1.0 - t * t).max(0.0).sqrt();
                for k in 0..m_phi {
                    let phi = dphi * k as f64;
                    dirs.extend_from_slice(&[sin_theta * phi.cos(), sin_theta * phi.sin(), *t]);
                    weights.push(wt * dphi);
                }
            }
            Ok((dirs, weights))
        }
        4 => {
            // chi in [0, pi] with weight sin^2(chi) folded into the rule
            // (Gauss-Legendre in the angle; the integrand stays analytic),
            // Gauss-Legendre in cos(theta), trapezoid in phi.
            let (chi_nodes, chi_weights) = gauss_legendre(order);
            let (t_nodes, t_weights) = gauss_legendre(order);
            let m_phi = 2 * order;
            let dphi = 2.0 * std::f64::consts::PI / m_phi as f64;
            let half_pi = 0.5 * std::f64::consts::PI;
            let mut dirs = Vec::new();
            let mut weights = Vec::new();
            for (c, wc) in chi_nodes.iter().zip(chi_weights.iter()) {
                let chi = half_pi * (c + 1.0);
                let (schi, cchi) = chi.sin_cos();
                let w_chi = wc * half_pi * schi * schi;
                for (t, wt) in t_nodes.iter().zip(t_weights.iter()) {
                    let sin_theta = (1.0 - t * t).max(0.0).sqrt();
                    for k in 0..m_phi {
                        let phi = dphi * k as f64;
                        dirs.extend_from_slice(&[
                            cchi,
                            schi * t,
                            schi * sin_theta * phi.cos(),
                            schi * sin_theta * phi.sin(),
                        ]);
                        weights.push(w_chi * wt * dphi);
                    }
                }
            }
            Ok((dirs, weights))
        }
        _ => Err(Error::UnsupportedDimension {
            n,
            reason: "sphere quadrature is implemented for n in {3, 4}",
        }),
    }
}

/// Product quadrature on the sphere of the given center and radius.
///
/// Normals at node `p` are exactly `(p - center)/radius`; node count grows
/// as `order^(n-1)`.
pub fn sphere_surface(center: &[f64], radius: f64, order: usize) -> Result<QuadratureSurface> {
    let n = center.len();
    if radius <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "sphere radius {radius} must be positive"
        )));
    }
    let (dirs, unit_weights) = unit_sphere_rule(n, order)?;
    let count = unit_weights.len();
    let mut nodes = Vec::with_capacity(count * n);
    let mut normals = Vec::with_capacity(count * n);
    let mut weights = Vec::with_capacity(count);
    let r_pow = radius.powi(n as i32 - 1);
    for i in 0..count {
        let dir = &dirs[i * n..(i + 1) * n];
        for (j, d) in dir.iter().enumerate() {
            nodes.push(center[j] + radius * d);
            normals.push(*d);
        }
        weights.push(unit_weights[i] * r_pow);
    }
    Ok(QuadratureSurface {
        n,
        nodes,
        normals,
        weights,
        descriptor: SurfaceDescriptor::Sphere {
            center: center.to_vec(),
            radius,
            order,
        },
    })
}

/// Axis-aligned ellipsoid via affine pushforward of the unit-sphere rule:
/// node `c + A s`, normal `A^{-1} s` normalized, weight `|det A| |A^{-1} s| w`.
pub fn ellipsoid_surface(
    center: &[f64],
    semi_axes: &[f64],
    order: usize,
) -> Result<QuadratureSurface> {
    let n = center.len();
    if semi_axes.len() != n {
        return Err(Error::DimensionMismatch {
            left: semi_axes.len(),
            right: n,
        });
    }
    if semi_axes.iter().any(|a| *a <= 0.0) {
        return Err(Error::InvalidArgument("semi-axes must be positive".into()));
    }
    let (dirs, unit_weights) = unit_sphere_rule(n, order)?;
    let count = unit_weights.len();
    let det: f64 = semi_axes.iter().product();
    let mut nodes = Vec::with_capacity(count * n);
    let mut normals = Vec::with_capacity(count * n);
    let mut weights = Vec::with_capacity(count);
    for i in 0..count {
        let dir = &dirs[i * n..(i + 1) * n];
        let mut inv_img = Vec::with_capacity(n);
        for j in 0..n {
            nodes.push(center[j] + semi_axes[j] * dir[j]);
            inv_img.push(dir[j] / semi_axes[j]);
        }
        let norm = inv_img.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &inv_img {
            normals.push(v / norm);
        }
        weights.push(unit_weights[i] * det * norm);
    }
    Ok(QuadratureSurface {
        n,
        nodes,
        normals,
        weights,
        descriptor: SurfaceDescriptor::Ellipsoid {
            center: center.to_vec(),
            semi_axes: semi_axes.to_vec(),
            order,
        },
    })
}

/// `sum_i w_i f(node_i)` with compensated summation in fixed node order.
/// An evaluation failure propagates with the node index attached.
pub fn integrate_scalar<F>(surface: &QuadratureSurface, mut f: F) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let mut acc = Compensated::default();
    for i in 0..surface.len() {
        let v = f(surface.node(i)).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        acc.add(surface.weight(i) * v);
    }
    Ok(acc.value())
}

/// Componentwise [`integrate_scalar`] for covector-valued integrands.
pub fn integrate_covector<F>(
    surface: &QuadratureSurface,
    degree: usize,
    mut g: F,
) -> Result<Covector>
where
    F: FnMut(&[f64]) -> Result<Covector>,
{
    let n = surface.ambient();
    let size = crate::exterior::basis_size(n, degree);
    let mut acc = vec![Compensated::default(); size];
    for i in 0..surface.len() {
        let v = g(surface.node(i)).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        if v.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: v.degree(),
                right: degree,
            });
        }
        let w = surface.weight(i);
        for (a, c) in acc.iter_mut().zip(v.coeffs().iter()) {
            a.add(w * c);
        }
    }
    let values: Vec<f64> = acc.iter().map(|a| a.value()).collect();
    Covector::from_dense(n, degree, values)
}

/// A closed curve in R^3 with unit tangents and arclength weights.
#[derive(Clone, Debug)]
pub struct Cycle3 {
    nodes: Vec<[f64; 3]>,
    tangents: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

impl Cycle3 {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64; 3] {
        &self.nodes[i]
    }

    pub fn tangent(&self, i: usize) -> &[f64; 3] {
        &self.tangents[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// Total arclength weight.
    pub fn length(&self) -> f64 {
        let mut acc = Compensated::default();
        for w in &self.weights {
            acc.add(*w);
        }
        acc.value()
    }
}

/// Uniform-angle circle with exact tangents and trapezoid weights
/// (spectrally accurate for periodic integrands). n = 3 only.
pub fn circle_cycle(center: &[f64], radius: f64, axis: &[f64], order: usize) -> Result<Cycle3> {
    if center.len() != 3 || axis.len() != 3 {
        return Err(Error::UnsupportedDimension {
            n: center.len().max(axis.len()),
            reason: "cycles are implemented for n = 3",
        });
    }
    if radius <= 0.0 {
        return Err(Error::InvalidArgument(
            "circle radius must be positive".into(),
        ));
    }
    if order < 4 {
        return Err(Error::InvalidArgument(format!("cycle order {order} < 4")));
    }
    let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("zero axis vector".into()));
    }
    let a = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
    // Orthonormal in-plane frame.
    let helper = if a[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let mut e1 = cross(&a, &helper);
    let e1n = e1.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in e1.iter_mut() {
        *v /= e1n;
    }
    let e2 = cross(&a, &e1);

    let dt = 2.0 * std::f64::consts::PI / order as f64;
    let mut nodes = Vec::with_capacity(order);
    let mut tangents = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for k in 0..order {
        let (s, c) = (dt * k as f64).sin_cos();
        nodes.push([
            center[0] + radius * (c * e1[0] + s * e2[0]),
            center[1] + radius * (c * e1[1] + s * e2[1]),
            center[2] + radius * (c * e1[2] + s * e2[2]),
        ]);
        tangents.push([
            -s * e1[0] + c * e2[0],
            -s * e1[1] + c * e2[1],
            -s * e1[2] + c * e2[2],
        ]);
        weights.push(radius * dt);
    }
    Ok(Cycle3 {
        nodes,
        tangents,
        weights,
    })
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_exactness() {
        let (x, w) = gauss_legendre(8);
        // integral of x^k over [-1,1]
        for k in 0..=15usize {
            let approx: f64 = x
                .iter()
                .zip(w.iter())
                .map(|(xi, wi)| wi * xi.powi(k as i32))
                .sum();
            let exact = if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            };
            assert!((approx - exact).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn sphere_area_n3() {
        let s = sphere_surface(&[0.0, 0.0, 0.0], 1.0, 32).unwrap();
        assert!((s.total_weight() - 4.0 * PI).abs() <= 1e-10 * 4.0 * PI);
        let s2 = sphere_surface(&[1.0, -2.0, 0.5], 2.5, 16).unwrap();
        assert!((s2.total_weight() - 4.0 * PI * 2.5 * 2.5).abs() <= 1e-9 * s2.total_weight());
    }

    #[test]
    fn sphere_area_n4() {
        let s = sphere_surface(&[0.0; 4], 1.0, 24).unwrap();
        assert!((s.total_weight() - 2.0 * PI * PI).abs() <= 1e-8);
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(
            sphere_surface(&[0.0, 0.0], 1.0, 8),
            Err(Error::UnsupportedDimension { .. })
        ));
        assert!(matches!(
            sphere_surface(&[0.0; 5], 1.0, 8),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn normals_are_radial_and_unit() {
        let c = [0.3, -0.4, 1.0];
        let r = 1.7;
        let s = sphere_surface(&c, r, 8).unwrap();
        for i in 0..s.len() {
            let p = s.node(i);
            let nv = s.normal(i);
            let norm: f64 = nv.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
            for j in 0..3 {
                assert!((nv[j] - (p[j] - c[j]) / r).abs() < 1e-12);
            }
        }
        assert!(s.weights.iter().all(|w| *w > 0.0));

        // Weights stay strictly positive in every supported dimension.
        let s4 = sphere_surface(&[0.0; 4], 1.0, 8).unwrap();
        assert!(s4.weights.iter().all(|w| *w > 0.0));
        for i in 0..s4.len() {
            let norm: f64 = s4.normal(i).iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn scalar_integrals_on_unit_sphere() {
        let s = sphere_surface(&[0.0; 3], 1.0, 24).unwrap();
        let one = integrate_scalar(&s, |_| Ok(1.0)).unwrap();
        assert!((one - 4.0 * PI).abs() <= 1e-10 * one);

        let odd = integrate_scalar(&s, |p| Ok(p[0])).unwrap();
        assert!(odd.abs() <= 1e-12);

        // x1^2 integrates to area/3 by symmetry.
        let sq = integrate_scalar(&s, |p| Ok(p[0] * p[0])).unwrap();
        assert!((sq - 4.0 * PI / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn covector_integrals() {
        let s = sphere_surface(&[0.0; 3], 1.0, 16).unwrap();
        let e1 = Covector::basis(3, &[1]).unwrap();
        let c = integrate_covector(&s, 1, |_| Ok(e1.clone())).unwrap();
        assert!((c.coeffs()[0] - 4.0 * PI).abs() <= 1e-9);

        // Normal covector integrates to zero by symmetry.
        let mut idx = 0usize;
        let z = integrate_covector(&s, 1, |_| {
            let nv = s.normal(idx);
            idx += 1;
            Ok(Covector::one_form(nv))
        })
        .unwrap();
        assert!(z.norm() <= 1e-12);

        let odd = integrate_covector(&s, 2, |p| {
            Ok(Covector::basis(3, &[1, 2]).unwrap().scaled(p[0]))
        })
        .unwrap();
        assert!(odd.norm() <= 1e-12);
    }

    #[test]
    fn quadrature_convergence_exponential() {
        // f = exp(x1) on the unit sphere integrates to 4*pi*sinh(1).
        let exact = 4.0 * PI * 1.0f64.sinh();
        let mut last_err = f64::INFINITY;
        for order in [6usize, 12, 24] {
            let s = sphere_surface(&[0.0; 3], 1.0, order).unwrap();
            let v = integrate_scalar(&s, |p| Ok(p[0].exp())).unwrap();
            let err = (v - exact).abs();
            if last_err > 1e-13 {
                assert!(
                    err <= last_err / 10.0 || err <= 1e-13,
                    "order {order}: err {err:.3e} vs last {last_err:.3e}"
                );
            }
            last_err = err;
        }
    }

    #[test]
    fn integration_is_permutation_invariant() {
        let s = sphere_surface(&[0.0; 3], 1.0, 16).unwrap();
        let f = |p: &[f64]| Ok(p[0] * p[1].cos() + p[2].exp() * 0.25);
        let forward = integrate_scalar(&s, f).unwrap();

        // Reversed node order through a manual compensated sum.
        let mut acc = Compensated::default();
        for i in (0..s.len()).rev() {
            acc.add(s.weight(i) * (f(s.node(i)).unwrap()));
        }
        let reversed = acc.value();
        assert!((forward - reversed).abs() <= 1e-13 * (1.0 + forward.abs()));
    }

    #[test]
    fn ellipsoid_matches_sphere_when_round() {
        let e = ellipsoid_surface(&[0.0; 3], &[1.5, 1.5, 1.5], 16).unwrap();
        let s = sphere_surface(&[0.0; 3], 1.5, 16).unwrap();
        assert!((e.total_weight() - s.total_weight()).abs() <= 1e-10 * s.total_weight());
    }

    #[test]
    fn ellipsoid_area_converges() {
        let mut last = None;
        for order in [12usize, 24, 48] {
            let e = ellipsoid_surface(&[0.0; 3], &[1.0, 1.3, 0.8], order).unwrap();
            let a = e.total_weight();
            if let Some(prev) = last {
                let rel: f64 = (a - prev) / a;
                assert!(rel.abs() < 1e-6);
            }
            last = Some(a);
        }
    }

    #[test]
    fn circle_cycle_basics() {
        let r = 1.3;
        let c = circle_cycle(&[0.0, 0.0, 0.0], r, &[0.0, 0.0, 1.0], 64).unwrap();
        assert!((c.length() - 2.0 * PI * r).abs() <= 1e-12 * c.length());

        // Tangent integrates to zero around a closed curve.
        let mut sums = [0.0f64; 3];
        for i in 0..c.len() {
            for (s, t) in sums.iter_mut().zip(c.tangent(i).iter()) {
                *s += c.weight(i) * t;
            }
        }
        assert!(sums.iter().all(|v| v.abs() < 1e-12));

        // A constant covector field has zero period.
        let mut period = 0.0;
        for i in 0..c.len() {
            period += c.weight(i) * c.tangent(i)[0];
        }
        assert!(period.abs() < 1e-12);

        assert!(matches!(
            circle_cycle(&[0.0; 3], 1.0, &[0.0; 3], 16),
            Err(Error::InvalidArgument(_))
        ));
    }
}
