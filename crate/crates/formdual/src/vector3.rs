//! Vector-calculus view of the n = 3, degree-1 theory.
//!
//! A 1-form `u_1 e^1 + u_2 e^2 + u_3 e^3` is identified with the vector
//! field `(u_1, u_2, u_3)`; a holomorphic pair `w_0 + w_2` with the scalar
//! plus vector field `(f, v)` where `*w_2 = v^flat`. Under the pinned
//! conventions `delta` maps to `-div` and `*d` to `curl`, and the pair
//! equations become `grad f + curl v = 0`, `div v = 0`.
//!
//! Vector operators here are thin views over the form machinery; the surface
//! pairings are computed with explicit cross products so the equivalence
//! with the exterior-algebra route stays a two-sided check.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::hodge;
use crate::fields::{FormField, HolomorphicPair, LinearCombination, StarForm};
use crate::geometry::{Compensated, QuadratureSurface};
use crate::potentials::LayerPotentialForm;

fn require_n3_r1(form: &dyn FormField) -> Result<()> {
    if form.ambient() != 3 {
        return Err(Error::UnsupportedDimension {
            n: form.ambient(),
            reason: "vector fields are the n = 3 specialization",
        });
    }
    if form.degree() != 1 {
        return Err(Error::DegreeMismatch {
            left: form.degree(),
            right: 1,
        });
    }
    Ok(())
}

/// A vector field on R^3 backed by a degree-1 form field.
#[derive(Clone)]
pub struct VectorField3 {
    form: Arc<dyn FormField>,
}

impl VectorField3 {
    pub fn from_form(form: Arc<dyn FormField>) -> Result<Self> {
        require_n3_r1(form.as_ref())?;
        Ok(Self { form })
    }

    /// The underlying 1-form (the inverse identification).
    pub fn as_form(&self) -> Arc<dyn FormField> {
        self.form.clone()
    }

    pub fn in_domain(&self, x: &[f64]) -> bool {
        self.form.in_domain(x)
    }

    pub fn eval(&self, x: &[f64]) -> Result<[f64; 3]> {
        let c = self.form.eval(x)?;
        Ok([c.coeffs()[0], c.coeffs()[1], c.coeffs()[2]])
    }

    /// `div v = -delta(v^flat)`.
    pub fn divergence(&self, x: &[f64]) -> Result<f64> {
        Ok(-self.form.delta(x)?.scalar_part())
    }

    /// `curl v = (*d v^flat)^sharp`.
    pub fn curl(&self, x: &[f64]) -> Result<[f64; 3]> {
        let d = self.form.d(x)?;
        let starred = hodge(&d);
        Ok([
            starred.coeffs()[0],
            starred.coeffs()[1],
            starred.coeffs()[2],
        ])
    }

    /// Largest of `|curl|`, `|div|` over the samples.
    pub fn harmonic_residual(&self, samples: &[Vec<f64>]) -> Result<f64> {
        let mut res: f64 = 0.0;
        for x in samples {
            let c = self.curl(x)?;
            res = res.max(c.iter().map(|v| v * v).sum::<f64>().sqrt());
            res = res.max(self.divergence(x)?.abs());
        }
        Ok(res)
    }
}

/// Identify a degree-1 form field on R^3 with a vector field.
pub fn form_to_vector(form: Arc<dyn FormField>) -> Result<VectorField3> {
    VectorField3::from_form(form)
}

/// The inverse identification.
pub fn vector_to_form(v: &VectorField3) -> Arc<dyn FormField> {
    v.as_form()
}

/// A holomorphic vector pair `(f, v)`: the scalar part and the vector proxy
/// of the degree-2 component.
#[derive(Clone)]
pub struct HolomorphicVectorPair {
    f: Arc<dyn FormField>,
    v: VectorField3,
}

impl HolomorphicVectorPair {
    pub fn new(f: Arc<dyn FormField>, v: VectorField3) -> Result<Self> {
        if f.ambient() != 3 {
            return Err(Error::UnsupportedDimension {
                n: f.ambient(),
                reason: "vector pairs are the n = 3 specialization",
            });
        }
        if f.degree() != 0 {
            return Err(Error::DegreeMismatch {
                left: f.degree(),
                right: 0,
            });
        }
        Ok(Self { f, v })
    }

    /// Identify a degree-1 holomorphic pair with `(f, v)`, `v^flat = *w_hi`.
    pub fn from_pair(pair: &HolomorphicPair) -> Result<Self> {
        if pair.ambient() != 3 || pair.central_degree() != 1 {
            return Err(Error::InvalidArgument(
                "vector pairs require n = 3 and central degree 1".into(),
            ));
        }
        let star_hi = StarForm::new(pair.w_hi().clone())?;
        Self::new(
            pair.w_lo().clone(),
            VectorField3::from_form(Arc::new(star_hi))?,
        )
    }

    /// Back to the form-language pair (`w_hi = *(v^flat)`).
    pub fn to_pair(&self) -> Result<HolomorphicPair> {
        let w_hi = StarForm::new(self.v.as_form())?;
        HolomorphicPair::new(1, self.f.clone(), Arc::new(w_hi))
    }

    pub fn scalar_part(&self) -> &Arc<dyn FormField> {
        &self.f
    }

    pub fn vector_part(&self) -> &VectorField3 {
        &self.v
    }

    /// `(f, v + scale * grad h)` for a scalar polynomial field `h`; with `h`
    /// harmonic this moves within the gauge subspace that leaves the
    /// pairings fixed.
    pub fn with_gradient_gauge(
        &self,
        h: &crate::fields::PolynomialForm,
        scale: f64,
    ) -> Result<HolomorphicVectorPair> {
        if h.degree() != 0 {
            return Err(Error::DegreeMismatch {
                left: h.degree(),
                right: 0,
            });
        }
        let combined = LinearCombination::new(vec![
            (1.0, self.v.as_form()),
            (scale, Arc::new(h.d_form()) as Arc<dyn FormField>),
        ])?;
        Self::new(self.f.clone(), VectorField3::from_form(Arc::new(combined))?)
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn surface_pairing(
    u: &VectorField3,
    pair: &HolomorphicVectorPair,
    surface: &QuadratureSurface,
) -> Result<f64> {
    if surface.ambient() != 3 {
        return Err(Error::UnsupportedDimension {
            n: surface.ambient(),
            reason: "vector pairings are the n = 3 specialization",
        });
    }
    let inv_4pi = 1.0 / (4.0 * std::f64::consts::PI);
    let mut acc = Compensated::default();
    for i in 0..surface.len() {
        let y = surface.node(i);
        let normal = {
            let s = surface.normal(i);
            [s[0], s[1], s[2]]
        };
        let uv = u.eval(y).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        let vv = pair.v.eval(y).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        let fv = pair.f.eval(y).map_err(|e| Error::NodeEvaluation {
            index: i,
            source: Box::new(e),
        })?;
        let n_cross_u = cross(&normal, &uv);
        let integrand = -dot(&vv, &n_cross_u) + fv.scalar_part() * dot(&normal, &uv);
        acc.add(surface.weight(i) * integrand * inv_4pi);
    }
    Ok(acc.value())
}

/// Pairing of a vector field harmonic near the enclosed ball against an
/// exterior holomorphic vector pair, in cross-product form:
/// `-(1/4pi) int <v, N x u> dS + (1/4pi) int <N, f u> dS`.
pub fn pairing_vector_h(
    u: &VectorField3,
    pair: &HolomorphicVectorPair,
    surface: &QuadratureSurface,
) -> Result<f64> {
    surface_pairing(u, pair, surface)
}

/// Pairing of a holomorphic vector pair near the compact against a vector
/// field harmonic outside and vanishing at infinity. For n = 3, degree 1
/// the integral expression coincides with [`pairing_vector_h`]; the roles of
/// the arguments (and the point identities they satisfy) differ.
pub fn pairing_vector_p(
    pair: &HolomorphicVectorPair,
    u: &VectorField3,
    surface: &QuadratureSurface,
) -> Result<f64> {
    surface_pairing(u, pair, surface)
}

/// Helmholtz decomposition pieces: `u = grad f + curl v` with `f`, `v`
/// weakly harmonic off the surface, vanishing at infinity, `div v = 0`.
pub struct HelmholtzParts {
    pub f: LayerPotentialForm,
    pub v: VectorField3,
}

/// Decompose an exterior harmonic vector field through the form-language
/// exterior decomposition: `f` is the degree-0 potential and `v` the vector
/// proxy of the degree-2 potential.
pub fn helmholtz_decompose(
    u: &VectorField3,
    surface: &QuadratureSurface,
) -> Result<HelmholtzParts> {
    let parts = crate::cauchy_green::decompose_exterior(u.as_form().as_ref(), surface)?;
    let v_form = StarForm::new(Arc::new(parts.u2))?;
    Ok(HelmholtzParts {
        f: parts.u1,
        v: VectorField3::from_form(Arc::new(v_form))?,
    })
}

/// Constraint residuals of a Helmholtz decomposition over a point set.
#[derive(Clone, Copy, Debug)]
pub struct HelmholtzResiduals {
    /// `max |grad f + curl v - u|`.
    pub reconstruction: f64,
    /// `max |div v|`.
    pub div_v: f64,
    /// `max |Delta f|`.
    pub laplacian_f: f64,
    /// `max |Delta v|` componentwise.
    pub laplacian_v: f64,
    /// `max |u|`, for relative scaling.
    pub u_scale: f64,
}

pub fn helmholtz_residuals(
    u: &VectorField3,
    parts: &HelmholtzParts,
    points: &[Vec<f64>],
) -> Result<HelmholtzResiduals> {
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "residual evaluation requires at least one point".into(),
        ));
    }
    let mut reconstruction: f64 = 0.0;
    let mut div_v: f64 = 0.0;
    let mut laplacian_f: f64 = 0.0;
    let mut laplacian_v: f64 = 0.0;
    let mut u_scale: f64 = 0.0;
    for x in points {
        let grad_f = {
            let d = parts.f.d(x)?;
            [d.coeffs()[0], d.coeffs()[1], d.coeffs()[2]]
        };
        let curl_v = parts.v.curl(x)?;
        let target = u.eval(x)?;
        let err = (0..3)
            .map(|i| (grad_f[i] + curl_v[i] - target[i]).abs())
            .fold(0.0, f64::max);
        reconstruction = reconstruction.max(err);
        u_scale = u_scale.max(target.iter().map(|v| v * v).sum::<f64>().sqrt());
        div_v = div_v.max(parts.v.divergence(x)?.abs());
        laplacian_f = laplacian_f.max(parts.f.laplacian(x)?.norm());
        laplacian_v = laplacian_v.max(parts.v.as_form().laplacian(x)?.norm());
    }
    Ok(HelmholtzResiduals {
        reconstruction,
        div_v,
        laplacian_f,
        laplacian_v,
        u_scale,
    })
}
