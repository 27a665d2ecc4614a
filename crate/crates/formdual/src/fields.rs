//! Differential-form fields with analytic exterior derivative, codifferential
//! and Laplacian.
//!
//! The codifferential convention is pinned once, here: on degree-r fields
//!
//! ```text
//! delta u = (-1)^(n r + n + 1) * hodge(d(hodge(u)))
//! ```
//!
//! which coincides with the contraction form `delta = -sum_i e_i _| d/dx_i`
//! (both are formal adjoints of `d`; the equality is verified exhaustively in
//! the test suites). Under it `Delta := -(d delta + delta d)` acts on every
//! degree as the componentwise Laplacian `sum_i d^2/dx_i^2`; in particular
//! `Delta f = sum_i d^2 f/dx_i^2` on functions, with `Delta(x_1^2) = +2`.
//! Implementations below use the contraction form; the star composition is
//! exercised as an independent route in tests and verification suites.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{hodge, wedge, Covector};
use crate::polynomial::Polynomial;
use crate::potentials;

/// Default residual tolerance for analytically differentiated families.
pub const ANALYTIC_TOL: f64 = 1e-9;
/// Default residual tolerance for layer-potential-backed fields.
pub const LAYER_TOL: f64 = 1e-6;

/// Sign relating the codifferential to the star-derivative composition on
/// degree-r fields: `delta = codifferential_sign(n, r) * hodge . d . hodge`.
pub fn codifferential_sign(n: usize, degree: usize) -> f64 {
    if (n * degree + n + 1).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A differential-form field of fixed degree with analytic evaluation of
/// itself and its first and second exterior derivatives.
///
/// Evaluators are pure functions of the point; fields are immutable and can
/// be shared across threads freely.
pub trait FormField: Send + Sync {
    fn ambient(&self) -> usize;
    fn degree(&self) -> usize;

    /// Membership in the domain of definition.
    fn in_domain(&self, x: &[f64]) -> bool;

    /// The field value, a covector of degree `self.degree()`.
    fn eval(&self, x: &[f64]) -> Result<Covector>;

    /// Exterior derivative, degree `r + 1`.
    fn d(&self, x: &[f64]) -> Result<Covector>;

    /// Codifferential, degree `r - 1`; errors with `DegreeUnderflow` on
    /// degree-0 fields.
    fn delta(&self, x: &[f64]) -> Result<Covector>;

    /// `-(d delta + delta d)`, same degree; equals the componentwise
    /// Laplacian of the coefficients.
    fn laplacian(&self, x: &[f64]) -> Result<Covector>;
}

pub(crate) fn check_point(field: &dyn FormField, x: &[f64]) -> Result<()> {
    if x.len() != field.ambient() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: field.ambient(),
        });
    }
    if !field.in_domain(x) {
        return Err(Error::OutsideDomain);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Polynomial family
// ---------------------------------------------------------------------------

/// A form field with multivariate-polynomial coefficients; `d`, `delta` and
/// `laplacian` are closed within the family via exact symbolic differentiation.
#[derive(Clone, Debug)]
pub struct PolynomialForm {
    n: usize,
    degree: usize,
    comps: std::collections::BTreeMap<u32, Polynomial>,
}

impl PolynomialForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            comps: Default::default(),
        }
    }

    /// The constant field with the given covector value.
    pub fn constant(value: &Covector) -> Self {
        let mut comps = std::collections::BTreeMap::new();
        for (mask, c) in value.terms() {
            if c != 0.0 {
                comps.insert(mask, Polynomial::constant(value.ambient(), c));
            }
        }
        Self {
            n: value.ambient(),
            degree: value.degree(),
            comps,
        }
    }

    /// Build from per-multi-index coefficient polynomials (masks must have
    /// popcount equal to `degree`; polynomials must live in `n` variables).
    pub fn new(n: usize, degree: usize, comps: Vec<(u32, Polynomial)>) -> Result<Self> {
        let mut map: std::collections::BTreeMap<u32, Polynomial> = Default::default();
        for (mask, p) in comps {
            if p.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: p.ambient(),
                    right: n,
                });
            }
            if mask.count_ones() as usize != degree || mask >= (1 << n) {
                return Err(Error::InvalidArgument(format!(
                    "mask {mask:#b} is not a degree-{degree} index over n={n}"
                )));
            }
            let entry = map.entry(mask).or_insert_with(|| Polynomial::zero(n));
            *entry = entry.add(&p);
        }
        map.retain(|_, p| !p.is_zero());
        Ok(Self {
            n,
            degree,
            comps: map,
        })
    }

    /// `f * e^mask` for a scalar polynomial `f`.
    pub fn monomial_form(n: usize, mask: u32, f: Polynomial) -> Result<Self> {
        let degree = mask.count_ones() as usize;
        Self::new(n, degree, vec![(mask, f)])
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.comps.iter().map(|(m, p)| (*m, p))
    }

    fn add_term(&mut self, mask: u32, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let entry = self
            .comps
            .entry(mask)
            .or_insert_with(|| Polynomial::zero(self.n));
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.comps.remove(&mask);
        }
    }

    /// Exact symbolic exterior derivative.
    pub fn d_form(&self) -> PolynomialForm {
        let mut out = PolynomialForm::zero(self.n, self.degree + 1);
        if self.degree >= self.n {
            return out;
        }
        for (mask, p) in &self.comps {
            for axis in 0..self.n {
                let bit = 1u32 << axis;
                if mask & bit != 0 {
                    continue;
                }
                let dp = p.partial(axis);
                if dp.is_zero() {
                    continue;
                }
                let sign = crate::exterior::wedge_sign(bit, *mask);
                out.add_term(mask | bit, dp.scaled(sign));
            }
        }
        out
    }

    /// Exact symbolic codifferential via the contraction form.
    pub fn delta_form(&self) -> Result<PolynomialForm> {
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let mut out = PolynomialForm::zero(self.n, self.degree - 1);
        if self.degree > self.n {
            return Ok(out);
        }
        for (mask, p) in &self.comps {
            for axis in 0..self.n {
                let bit = 1u32 << axis;
                if mask & bit == 0 {
                    continue;
                }
                let dp = p.partial(axis);
                if dp.is_zero() {
                    continue;
                }
                let below = (mask & (bit - 1)).count_ones();
                let sign = if below.is_multiple_of(2) { -1.0 } else { 1.0 };
                out.add_term(mask & !bit, dp.scaled(sign));
            }
        }
        Ok(out)
    }

    /// Componentwise `sum_i d^2/dx_i^2`, which `-(d delta + delta d)` equals.
    pub fn laplacian_form(&self) -> PolynomialForm {
        let mut out = PolynomialForm::zero(self.n, self.degree);
        for (mask, p) in &self.comps {
            out.add_term(*mask, p.laplacian());
        }
        out
    }

    /// Apply the Hodge star symbolically (coefficients are unchanged up to
    /// basis permutation signs).
    pub fn hodge_form(&self) -> PolynomialForm {
        let mut out = PolynomialForm::zero(self.n, self.n - self.degree);
        let full = (1u32 << self.n) - 1;
        for (mask, p) in &self.comps {
            let comp = full & !mask;
            out.add_term(comp, p.scaled(crate::exterior::wedge_sign(*mask, comp)));
        }
        out
    }

    pub fn value_at(&self, x: &[f64]) -> Covector {
        let mut out = Covector::zero(self.n, self.degree);
        for (mask, p) in &self.comps {
            let v = p.eval(x);
            if v != 0.0 {
                out.set_coeff_mask(*mask, v);
            }
        }
        out
    }

    pub fn is_identically_zero(&self) -> bool {
        self.comps.is_empty()
    }
}

impl FormField for PolynomialForm {
    fn ambient(&self) -> usize {
        self.n
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn in_domain(&self, _x: &[f64]) -> bool {
        true
    }

    fn eval(&self, x: &[f64]) -> Result<Covector> {
        check_point(self, x)?;
        Ok(self.value_at(x))
    }

    fn d(&self, x: &[f64]) -> Result<Covector> {
        check_point(self, x)?;
        Ok(self.d_form().value_at(x))
    }

    fn delta(&self, x: &[f64]) -> Result<Covector> {
        check_point(self, x)?;
        Ok(self.delta_form()?.value_at(x))
    }

    fn laplacian(&self, x: &[f64]) -> Result<Covector> {
        check_point(self, x)?;
        Ok(self.laplacian_form().value_at(x))
    }
}

// ---------------------------------------------------------------------------
// Kernel family
// ---------------------------------------------------------------------------

/// Which derivative of the base potential `k(x, x0) * xi` a kernel term is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelTag {
    /// The potential itself, `k xi`.
    Value,
    /// Its exterior derivative `d(k xi) = dk /\ xi`.
    D,
    /// Its codifferential `delta(k xi) = -grad(k) _| xi`.
    Delta,
}

impl KernelTag {
    fn degree_shift(self) -> isize {
        match self {
            KernelTag::Value => 0,
            KernelTag::D => 1,
            KernelTag::Delta => -1,
        }
    }
}

/// One kernel term: a center, a constant covector weight and a derivative tag.
#[derive(Clone, Debug)]
pub struct KernelTerm {
    pub center: Vec<f64>,
    pub xi: Covector,
    pub tag: KernelTag,
}

/// Linear combinations of Newtonian-kernel terms `k(x, x0) = |x - x0|^(2-n)`
/// and their first derivatives. All derivatives are evaluated from the
/// closed-form kernel gradient and Hessian; the coefficient functions are
/// harmonic away from the centers, so `laplacian` vanishes identically there.
#[derive(Clone, Debug)]
pub struct KernelForm {
    n: usize,
    degree: usize,
    terms: Vec<KernelTerm>,
}

impl KernelForm {
    pub fn new(n: usize, degree: usize, terms: Vec<KernelTerm>) -> Result<Self> {
        if n < 3 {
            return Err(Error::UnsupportedDimension {
                n,
                reason: "the kernel |x-y|^(2-n) requires n >= 3",
            });
        }
        for t in &terms {
            if t.center.len() != n || t.xi.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: t.center.len().max(t.xi.ambient()),
                    right: n,
                });
            }
            let d = t.xi.degree() as isize + t.tag.degree_shift();
            if d < 0 || d != degree as isize {
                return Err(Error::DegreeMismatch {
                    left: d.max(0) as usize,
                    right: degree,
                });
            }
        }
        Ok(Self { n, degree, terms })
    }

    /// Single-term convenience constructor.
    pub fn single(center: &[f64], xi: Covector, tag: KernelTag) -> Result<Self> {
        let n = center.len();
        let degree = (xi.degree() as isize + tag.degree_shift()).max(0) as usize;
        Self::new(
            n,
            degree,
            vec![KernelTerm {
                center: center.to_vec(),
                xi,
                tag,
            }],
        )
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    fn accumulate<F>(&self, x: &[f64], out_degree: usize, mut per_term: F) -> Result<Covector>
    where
        F: FnMut(&KernelTerm, &mut Covector) -> Result<()>,
    {
        check_point(self, x)?;
        let mut out = Covector::zero(self.n, out_degree);
        for t in &self.terms {
            per_term(t, &mut out)?;
        }
        Ok(out)
    }
}

impl FormField for KernelForm {
    fn ambient(&self) -> usize {
        self.n
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        self.terms.iter().all(|t| {
            t.center
                .iter()
                .zip(x.iter())
                .map(|(c, xi)| (c - xi) * (c - xi))
                .sum::<f64>()
                > 0.0
        })
    }

    fn eval(&self, x: &[f64]) -> Result<Covector> {
        self.accumulate(x, self.degree, |t, out| {
            match t.tag {
                KernelTag::Value => {
                    let k = potentials::kernel(x, &t.center)?;
                    out.accumulate(&t.xi, k);
                }
                KernelTag::D => {
                    let g = potentials::kernel_grad_x(x, &t.center)?;
                    out.accumulate(&wedge(&g, &t.xi)?, 1.0);
                }
                KernelTag::Delta => {
                    let g = potentials::kernel_grad_x(x, &t.center)?;
                    out.accumulate(&t.xi.contract(g.coeffs()), -1.0);
                }
            }
            Ok(())
        })
    }

    fn d(&self, x: &[f64]) -> Result<Covector> {
        self.accumulate(x, self.degree + 1, |t, out| {
            match t.tag {
                KernelTag::Value => {
                    let g = potentials::kernel_grad_x(x, &t.center)?;
                    out.accumulate(&wedge(&g, &t.xi)?, 1.0);
                }
                // d d (k xi) = 0.
                KernelTag::D => {}
                // d delta (k xi), from the kernel Hessian.
                KernelTag::Delta => {
                    let dd = potentials::kernel_d_delta(x, &t.center, &t.xi)?;
                    out.accumulate(&dd, 1.0);
                }
            }
            Ok(())
        })
    }

    fn delta(&self, x: &[f64]) -> Result<Covector> {
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow);
        }
        self.accumulate(x, self.degree - 1, |t, out| {
            match t.tag {
                KernelTag::Value => {
                    let g = potentials::kernel_grad_x(x, &t.center)?;
                    out.accumulate(&t.xi.contract(g.coeffs()), -1.0);
                }
                // delta d (k xi) = -Delta(k xi) - d delta (k xi) = -d delta (k xi)
                // away from the center.
                KernelTag::D => {
                    let dd = potentials::kernel_delta_d(x, &t.center, &t.xi)?;
                    out.accumulate(&dd, 1.0);
                }
                // delta delta (k xi) = 0.
                KernelTag::Delta => {}
            }
            Ok(())
        })
    }

    fn laplacian(&self, x: &[f64]) -> Result<Covector> {
        self.accumulate(x, self.degree, |t, out| {
            match t.tag {
                KernelTag::Value => {
                    // Delta(k xi) = (trace Hessian) xi; the trace vanishes
                    // analytically off the center, so this reports only the
                    // floating-point cancellation residue.
                    let tr = potentials::kernel_hessian_trace(x, &t.center)?;
                    out.accumulate(&t.xi, tr);
                }
                // Coefficients of d(k xi) and delta(k xi) are first
                // derivatives of harmonic functions, hence harmonic.
                KernelTag::D | KernelTag::Delta => {}
            }
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

/// The Hodge star of another field, with the derivative bookkeeping
/// `d(*w) = s1 * delta(w)` and `delta(*w) = s2 * d(w)` carried by the
/// degree-dependent convention signs.
#[derive(Clone)]
pub struct StarForm {
    inner: Arc<dyn FormField>,
}

impl StarForm {
    pub fn new(inner: Arc<dyn FormField>) -> Result<Self> {
        if inner.degree() > inner.ambient() {
            return Err(Error::InvalidArgument(
                "cannot star a formal degree above n".into(),
            ));
        }
        Ok(Self { inner })
    }
}

impl FormField for StarForm {
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    fn degree(&self) -> usize {
        self.inner.ambient() - self.inner.degree()
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        self.inner.in_domain(x)
    }

    fn eval(&self, x: &[f64]) -> Result<Covector> {
        Ok(hodge(&self.inner.eval(x)?))
    }

    fn d(&self, x: &[f64]) -> Result<Covector> {
        let n = self.ambient();
        let s = self.inner.degree();
        if s == 0 {
            // *w is the top degree; d of it is the formal zero above n.
            check_point(self, x)?;
            return Ok(Covector::zero(n, n + 1));
        }
        // From delta w = gamma * (d * w): d(*w) = gamma (-1)^((n-s+1)(s-1)) *(delta w).
        let sign = codifferential_sign(n, s)
            * if ((n - s + 1) * (s - 1)).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
        Ok(hodge(&self.inner.delta(x)?).scaled(sign))
    }

    fn delta(&self, x: &[f64]) -> Result<Covector> {
        let n = self.ambient();
        let s = self.inner.degree();
        if s == n {
            return Err(Error::DegreeUnderflow);
        }
        // delta(*w) = gamma_{n-s} *(d * *w) = gamma_{n-s} (-1)^(s(n-s)) *(d w).
        let sign = codifferential_sign(n, n - s)
            * if (s * (n - s)).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
        Ok(hodge(&self.inner.d(x)?).scaled(sign))
    }

    fn laplacian(&self, x: &[f64]) -> Result<Covector> {
        Ok(hodge(&self.inner.laplacian(x)?))
    }
}

/// A finite linear combination of fields of matching dimension and degree.
#[derive(Clone)]
pub struct LinearCombination {
    n: usize,
    degree: usize,
    terms: Vec<(f64, Arc<dyn FormField>)>,
}

impl LinearCombination {
    pub fn new(terms: Vec<(f64, Arc<dyn FormField>)>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
        let (n, degree) = (first.1.ambient(), first.1.degree());
        for (_, f) in &terms {
            if f.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: f.ambient(),
                    right: n,
                });
            }
            if f.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: f.degree(),
                    right: degree,
                });
            }
        }
        Ok(Self { n, degree, terms })
    }

    fn combine<G>(&self, x: &[f64], out_degree: usize, g: G) -> Result<Covector>
    where
        G: Fn(&dyn FormField, &[f64]) -> Result<Covector>,
    {
        let mut out = Covector::zero(self.n, out_degree);
        for (c, f) in &self.terms {
            out.accumulate(&g(f.as_ref(), x)?, *c);
        }
        Ok(out)
    }
}

impl FormField for LinearCombination {
    fn ambient(&self) -> usize {
        self.n
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn in_domain(&self, x: &[f64]) -> bool {
        self.terms.iter().all(|(_, f)| f.in_domain(x))
    }

    fn eval(&self, x: &[f64]) -> Result<Covector> {
        self.combine(x, self.degree, |f, x| f.eval(x))
    }

    fn d(&self, x: &[f64]) -> Result<Covector> {
        self.combine(x, self.degree + 1, |f, x| f.d(x))
    }

    fn delta(&self, x: &[f64]) -> Result<Covector> {
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow);
        }
        self.combine(x, self.degree - 1, |f, x| f.delta(x))
    }

    fn laplacian(&self, x: &[f64]) -> Result<Covector> {
        self.combine(x, self.degree, |f, x| f.laplacian(x))
    }
}

// ---------------------------------------------------------------------------
// Harmonicity and holomorphic pairs
// ---------------------------------------------------------------------------

/// Result of a sampled harmonicity check.
#[derive(Clone, Copy, Debug)]
pub struct HarmonicCheck {
    pub harmonic: bool,
    pub max_residual: f64,
}

/// `true` iff `max(|d u|, |delta u|) <= tol` at every sample (the
/// codifferential condition is vacuous on degree-0 fields).
pub fn is_harmonic(field: &dyn FormField, samples: &[Vec<f64>], tol: f64) -> Result<HarmonicCheck> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument(
            "harmonicity check requires at least one sample point".into(),
        ));
    }
    let mut max_residual: f64 = 0.0;
    for x in samples {
        let r_d = field.d(x)?.norm();
        let r_delta = if field.degree() == 0 {
            0.0
        } else {
            field.delta(x)?.norm()
        };
        max_residual = max_residual.max(r_d).max(r_delta);
    }
    Ok(HarmonicCheck {
        harmonic: max_residual <= tol,
        max_residual,
    })
}

/// A non-homogeneous field `w_lo + w_hi` of degrees `r-1` and `r+1`,
/// nominally satisfying `d w_lo + delta w_hi = 0`, `d w_hi = 0`,
/// `delta w_lo = 0` on its domain.
#[derive(Clone)]
pub struct HolomorphicPair {
    r: usize,
    w_lo: Arc<dyn FormField>,
    w_hi: Arc<dyn FormField>,
}

impl HolomorphicPair {
    pub fn new(r: usize, w_lo: Arc<dyn FormField>, w_hi: Arc<dyn FormField>) -> Result<Self> {
        let n = w_lo.ambient();
        if w_hi.ambient() != n {
            return Err(Error::DimensionMismatch {
                left: w_hi.ambient(),
                right: n,
            });
        }
        if r < 1 || r > n - 1 {
            return Err(Error::InvalidArgument(format!(
                "pair central degree {r} outside 1..={}",
                n - 1
            )));
        }
        if w_lo.degree() != r - 1 {
            return Err(Error::DegreeMismatch {
                left: w_lo.degree(),
                right: r - 1,
            });
        }
        if w_hi.degree() != r + 1 {
            return Err(Error::DegreeMismatch {
                left: w_hi.degree(),
                right: r + 1,
            });
        }
        Ok(Self { r, w_lo, w_hi })
    }

    pub fn zero(n: usize, r: usize) -> Result<Self> {
        Self::new(
            r,
            Arc::new(PolynomialForm::zero(n, r - 1)),
            Arc::new(PolynomialForm::zero(n, r + 1)),
        )
    }

    pub fn ambient(&self) -> usize {
        self.w_lo.ambient()
    }

    /// Central degree r (the pair components are r-1 and r+1).
    pub fn central_degree(&self) -> usize {
        self.r
    }

    pub fn w_lo(&self) -> &Arc<dyn FormField> {
        &self.w_lo
    }

    pub fn w_hi(&self) -> &Arc<dyn FormField> {
        &self.w_hi
    }

    pub fn in_domain(&self, x: &[f64]) -> bool {
        self.w_lo.in_domain(x) && self.w_hi.in_domain(x)
    }

    /// Replace the pair by `(w_lo + a*f_lo, w_hi + b*f_hi)`; used for gauge
    /// perturbations in the duality tests.
    pub fn perturbed(
        &self,
        lo_extra: Option<(f64, Arc<dyn FormField>)>,
        hi_extra: Option<(f64, Arc<dyn FormField>)>,
    ) -> Result<Self> {
        let lo = match lo_extra {
            Some((c, f)) => Arc::new(LinearCombination::new(vec![
                (1.0, self.w_lo.clone()),
                (c, f),
            ])?) as Arc<dyn FormField>,
            None => self.w_lo.clone(),
        };
        let hi = match hi_extra {
            Some((c, f)) => Arc::new(LinearCombination::new(vec![
                (1.0, self.w_hi.clone()),
                (c, f),
            ])?) as Arc<dyn FormField>,
            None => self.w_hi.clone(),
        };
        Self::new(self.r, lo, hi)
    }
}

/// Residuals of the three pair equations over a sample set.
#[derive(Clone, Copy, Debug)]
pub struct PairCheck {
    pub holds: bool,
    /// `max |d w_lo + delta w_hi|`.
    pub residual_pair: f64,
    /// `max |d w_hi|`.
    pub residual_d_hi: f64,
    /// `max |delta w_lo|` (zero by convention when r = 1).
    pub residual_delta_lo: f64,
}

impl PairCheck {
    pub fn max_residual(&self) -> f64 {
        self.residual_pair
            .max(self.residual_d_hi)
            .max(self.residual_delta_lo)
    }
}

/// Check the three pair equations at every sample.
pub fn is_holomorphic_pair(
    pair: &HolomorphicPair,
    samples: &[Vec<f64>],
    tol: f64,
) -> Result<PairCheck> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument(
            "pair check requires at least one sample point".into(),
        ));
    }
    let mut residual_pair: f64 = 0.0;
    let mut residual_d_hi: f64 = 0.0;
    let mut residual_delta_lo: f64 = 0.0;
    for x in samples {
        let mut eq = pair.w_lo.d(x)?;
        eq.accumulate(&pair.w_hi.delta(x)?, 1.0);
        residual_pair = residual_pair.max(eq.norm());
        residual_d_hi = residual_d_hi.max(pair.w_hi.d(x)?.norm());
        if pair.r > 1 {
            residual_delta_lo = residual_delta_lo.max(pair.w_lo.delta(x)?.norm());
        }
    }
    let check = PairCheck {
        holds: false,
        residual_pair,
        residual_d_hi,
        residual_delta_lo,
    };
    Ok(PairCheck {
        holds: check.max_residual() <= tol,
        ..check
    })
}

// ---------------------------------------------------------------------------
// Cross-check routes (star composition, finite differences)
// ---------------------------------------------------------------------------

/// Independent evaluation routes used by the verification suites. The star
/// composition re-derives `delta` from `d` and `hodge` alone; the
/// finite-difference forms assemble `d` and `delta` from centrally
/// differenced field values plus the algebra.
pub mod check {
    use super::*;

    /// `delta u = sign * *(d(*u))` with `d(*u)` assembled from central
    /// differences of the starred field values: independent of any `delta`
    /// implementation.
    pub fn delta_star_route(field: &dyn FormField, x: &[f64], h: f64) -> Result<Covector> {
        if field.degree() == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let n = field.ambient();
        // d(*u) via central differences of *u.
        let mut d_star = Covector::zero(n, n - field.degree() + 1);
        for axis in 0..n {
            let part = fd_partial_of(&|y| Ok(hodge(&field.eval(y)?)), x, axis, h, n)?;
            let mut e = vec![0.0; n];
            e[axis] = 1.0;
            d_star.accumulate(&wedge(&Covector::one_form(&e), &part)?, 1.0);
        }
        let sign = codifferential_sign(n, field.degree());
        Ok(hodge(&d_star).scaled(sign))
    }

    /// Exact symbolic star route for polynomial fields:
    /// `sign * hodge_form(d_form(hodge_form(u)))`.
    pub fn polynomial_delta_star_route(form: &PolynomialForm) -> Result<PolynomialForm> {
        if form.degree() == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let sign = codifferential_sign(form.ambient(), form.degree());
        let starred = form.hodge_form();
        let d_starred = starred.d_form();
        let mut out = d_starred.hodge_form();
        out = PolynomialForm::new(
            out.ambient(),
            out.degree(),
            out.components().map(|(m, p)| (m, p.scaled(sign))).collect(),
        )?;
        Ok(out)
    }

    fn fd_partial_of(
        f: &dyn Fn(&[f64]) -> Result<Covector>,
        x: &[f64],
        axis: usize,
        h: f64,
        _n: usize,
    ) -> Result<Covector> {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[axis] += h;
        xm[axis] -= h;
        let mut out = f(&xp)?;
        out.accumulate(&f(&xm)?, -1.0);
        Ok(out.scaled(0.5 / h))
    }

    /// Central-difference partial derivative of the field value.
    pub fn fd_partial(field: &dyn FormField, x: &[f64], axis: usize, h: f64) -> Result<Covector> {
        fd_partial_of(&|y| field.eval(y), x, axis, h, field.ambient())
    }

    /// `d u` assembled from finite-difference partials: `sum_i e^i /\ du/dx_i`.
    pub fn fd_d(field: &dyn FormField, x: &[f64], h: f64) -> Result<Covector> {
        let n = field.ambient();
        let mut out = Covector::zero(n, field.degree() + 1);
        for axis in 0..n {
            let part = fd_partial(field, x, axis, h)?;
            let mut e = vec![0.0; n];
            e[axis] = 1.0;
            out.accumulate(&wedge(&Covector::one_form(&e), &part)?, 1.0);
        }
        Ok(out)
    }

    /// `delta u` assembled from finite-difference partials:
    /// `-sum_i e_i _| du/dx_i`.
    pub fn fd_delta(field: &dyn FormField, x: &[f64], h: f64) -> Result<Covector> {
        if field.degree() == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let n = field.ambient();
        let mut out = Covector::zero(n, field.degree() - 1);
        for axis in 0..n {
            let part = fd_partial(field, x, axis, h)?;
            out.accumulate(&part.contract_basis(axis), -1.0);
        }
        Ok(out)
    }

    /// `laplacian u` from second central differences of the field value.
    pub fn fd_laplacian(field: &dyn FormField, x: &[f64], h: f64) -> Result<Covector> {
        let n = field.ambient();
        let mut out = Covector::zero(n, field.degree());
        let center = field.eval(x)?;
        for axis in 0..n {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[axis] += h;
            xm[axis] -= h;
            out.accumulate(&field.eval(&xp)?, 1.0);
            out.accumulate(&field.eval(&xm)?, 1.0);
            out.accumulate(&center, -2.0);
        }
        Ok(out.scaled(1.0 / (h * h)))
    }
}
