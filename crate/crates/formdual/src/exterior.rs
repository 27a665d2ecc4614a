//! Exact exterior algebra of covectors on oriented Euclidean n-space.
//!
//! Basis r-covectors are indexed by strictly increasing multi-indices
//! `(a_1 < ... < a_r)` with entries in `1..=n`, encoded as n-bit masks
//! (bit `i` set means axis `i+1` participates). Coefficients are stored
//! densely over the `C(n, r)` masks in ascending numeric order, which
//! coincides with colexicographic order on the index sets.
//!
//! Sign conventions are pinned here once and everything downstream follows:
//!
//! - `wedge(e^a, e^b)` carries the parity of the shuffle sorting `(a, b)`.
//! - `hodge(e^a) = sgn(a, a^c) e^(a^c)` where `sgn` is the parity of the
//!   permutation `(a, a^c)` of `(1..n)`, so that `u /\ hodge(v) = <u,v> vol`
//!   with `vol = e^(1...n)` the positively oriented unit volume form.
//! - The increasing-multi-index basis is orthonormal for `inner`.

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the algebra (masks fit in `u32`;
/// quadrature-backed modules restrict further).
pub const MAX_DIMENSION: usize = 16;

/// Binomial coefficient as `usize`; saturates are unnecessary for n <= 16.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of basis covectors of the given degree, `C(n, r)` (0 when r > n).
pub fn basis_size(n: usize, degree: usize) -> usize {
    binomial(n, degree)
}

/// Rank of `mask` among the masks of equal popcount, in ascending numeric
/// order (colex rank of the bit set).
fn mask_rank(mask: u32) -> usize {
    let mut rank = 0usize;
    let mut seen = 0usize;
    let mut m = mask;
    while m != 0 {
        let bit = m.trailing_zeros() as usize;
        seen += 1;
        rank += binomial(bit, seen);
        m &= m - 1;
    }
    rank
}

/// Iterator over all masks of a given popcount in ascending numeric order.
struct MaskIter {
    next: Option<u32>,
    limit: u32,
}

impl MaskIter {
    fn new(n: usize, degree: usize) -> Self {
        if degree > n {
            return Self {
                next: None,
                limit: 0,
            };
        }
        let first = if degree == 0 { 0 } else { (1u32 << degree) - 1 };
        Self {
            next: Some(first),
            limit: 1u32 << n,
        }
    }
}

impl Iterator for MaskIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        // Gosper's hack: next mask with the same popcount.
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            Some(ripple | (((cur ^ ripple) / low) >> 2))
        };
        Some(cur)
    }
}

/// Masks of the given degree in basis order.
pub fn basis_masks(n: usize, degree: usize) -> Vec<u32> {
    MaskIter::new(n, degree).collect()
}

/// Parity sign of the shuffle merging two disjoint ascending index sets:
/// the number of pairs `(x in a, y in b)` with `y < x`, as a factor +-1.
/// This is the coefficient of `e^(a) /\ e^(b)` on `e^(a union b)`.
pub(crate) fn wedge_sign(a: u32, b: u32) -> f64 {
    shuffle_sign(a, b)
}

fn shuffle_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut sh = a >> 1;
    while sh != 0 {
        swaps += (sh & b).count_ones();
        sh >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Strictly increasing multi-index over `{1..n}` encoded as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndex {
    n: usize,
    mask: u32,
}

impl MultiIndex {
    /// Build from 1-based axis labels; they must be strictly increasing.
    pub fn new(n: usize, entries: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension {
                n,
                reason: "multi-indices support 1 <= n <= 16",
            });
        }
        let mut mask = 0u32;
        let mut prev = 0usize;
        for &e in entries {
            if e < 1 || e > n {
                return Err(Error::InvalidArgument(format!(
                    "multi-index entry {e} outside 1..={n}"
                )));
            }
            if e <= prev {
                return Err(Error::InvalidArgument(
                    "multi-index entries must be strictly increasing".into(),
                ));
            }
            mask |= 1 << (e - 1);
            prev = e;
        }
        Ok(Self { n, mask })
    }

    /// Build directly from a bit mask.
    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension {
                n,
                reason: "multi-indices support 1 <= n <= 16",
            });
        }
        if mask >= (1 << n) {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} has bits outside 1..={n}"
            )));
        }
        Ok(Self { n, mask })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Degree (number of entries).
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// 1-based axis labels in increasing order.
    pub fn entries(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|i| self.mask & (1 << i) != 0)
            .map(|i| i + 1)
            .collect()
    }

    /// Complementary multi-index within `{1..n}`.
    pub fn complement(&self) -> MultiIndex {
        MultiIndex {
            n: self.n,
            mask: !self.mask & ((1 << self.n) - 1),
        }
    }
}

/// A degree-r covector with real coefficients over the increasing basis.
///
/// Degrees above `n` are permitted as formal zeros (empty coefficient
/// vector); they arise from wedges that overflow the top degree and keep
/// the graded bookkeeping uniform.
#[derive(Clone, Debug)]
pub struct Covector {
    n: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl Covector {
    /// The zero covector of a given degree.
    pub fn zero(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            coeffs: vec![0.0; basis_size(n, degree)],
        }
    }

    /// A scalar (degree-0) covector.
    pub fn scalar(n: usize, value: f64) -> Self {
        Self {
            n,
            degree: 0,
            coeffs: vec![value],
        }
    }

    /// `value` times the unit volume form `e^(1...n)`.
    pub fn volume(n: usize, value: f64) -> Self {
        Self {
            n,
            degree: n,
            coeffs: vec![value],
        }
    }

    /// Basis covector from 1-based axis labels, e.g. `basis(3, &[1,3])` = e^13.
    pub fn basis(n: usize, entries: &[usize]) -> Result<Self> {
        let idx = MultiIndex::new(n, entries)?;
        let mut c = Self::zero(n, idx.len());
        c.coeffs[mask_rank(idx.mask())] = 1.0;
        Ok(c)
    }

    /// The 1-covector with the given coefficient vector (the flat of a vector).
    pub fn one_form(coords: &[f64]) -> Self {
        Self {
            n: coords.len(),
            degree: 1,
            coeffs: coords.to_vec(),
        }
    }

    /// Build from a dense coefficient vector in basis order.
    pub fn from_dense(n: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis_size(n, degree) {
            return Err(Error::InvalidArgument(format!(
                "dense coefficient vector has length {} but C({n},{degree}) = {}",
                coeffs.len(),
                basis_size(n, degree)
            )));
        }
        Ok(Self { n, degree, coeffs })
    }

    /// Assemble from (multi-index, coefficient) terms; all terms must share
    /// the same degree.
    pub fn from_terms(n: usize, degree: usize, terms: &[(MultiIndex, f64)]) -> Result<Self> {
        let mut c = Self::zero(n, degree);
        for (idx, v) in terms {
            if idx.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: idx.ambient(),
                    right: n,
                });
            }
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    left: idx.len(),
                    right: degree,
                });
            }
            c.coeffs[mask_rank(idx.mask())] += v;
        }
        Ok(c)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dense coefficients in basis order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of a basis mask (0 when the degree is a formal overflow).
    pub fn coeff_mask(&self, mask: u32) -> f64 {
        if mask.count_ones() as usize != self.degree {
            return 0.0;
        }
        self.coeffs.get(mask_rank(mask)).copied().unwrap_or(0.0)
    }

    pub fn coeff(&self, idx: &MultiIndex) -> f64 {
        self.coeff_mask(idx.mask())
    }

    /// Set the coefficient of a basis mask.
    pub fn set_coeff_mask(&mut self, mask: u32, value: f64) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let r = mask_rank(mask);
        self.coeffs[r] = value;
    }

    /// Iterate (mask, coefficient) pairs in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        MaskIter::new(self.n, self.degree).zip(self.coeffs.iter().copied())
    }

    /// The value of a degree-0 covector.
    pub fn scalar_part(&self) -> f64 {
        if self.degree == 0 {
            self.coeffs[0]
        } else {
            0.0
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }

    /// Largest absolute coefficient difference against another covector of
    /// the same shape.
    pub fn max_coeff_diff(&self, other: &Covector) -> f64 {
        assert_eq!(self.n, other.n, "covector ambient mismatch");
        assert_eq!(self.degree, other.degree, "covector degree mismatch");
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Covector {
        Covector {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// In-place `self += factor * other`.
    pub fn accumulate(&mut self, other: &Covector, factor: f64) {
        assert_eq!(self.n, other.n, "covector ambient mismatch");
        assert_eq!(self.degree, other.degree, "covector degree mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += factor * b;
        }
    }

    /// Interior product with a basis vector (0-based axis), lowering degree by one.
    pub fn contract_basis(&self, axis: usize) -> Covector {
        let mut out = Covector::zero(self.n, self.degree.saturating_sub(1));
        if self.degree == 0 || self.degree > self.n {
            return out;
        }
        let bit = 1u32 << axis;
        for (mask, c) in self.terms() {
            if mask & bit == 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let sign = if below & 1 == 0 { 1.0 } else { -1.0 };
            out.coeffs[mask_rank(mask & !bit)] += sign * c;
        }
        out
    }

    /// Interior product `X _| u` with the vector of coordinates `x`.
    pub fn contract(&self, x: &[f64]) -> Covector {
        assert_eq!(
            x.len(),
            self.n,
            "vector length must match ambient dimension"
        );
        let mut out = Covector::zero(self.n, self.degree.saturating_sub(1));
        if self.degree == 0 || self.degree > self.n {
            return out;
        }
        for (axis, xv) in x.iter().enumerate() {
            if *xv == 0.0 {
                continue;
            }
            let bit = 1u32 << axis;
            for (mask, c) in self.terms() {
                if mask & bit == 0 || c == 0.0 {
                    continue;
                }
                let below = (mask & (bit - 1)).count_ones();
                let sign = if below & 1 == 0 { 1.0 } else { -1.0 };
                out.coeffs[mask_rank(mask & !bit)] += sign * xv * c;
            }
        }
        out
    }
}

impl std::fmt::Display for Covector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (mask, c) in self.terms() {
            if c == 0.0 {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if mask == 0 {
                write!(f, "{c}")?;
            } else {
                let labels: String = (0..self.n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| (i + 1).to_string())
                    .collect();
                write!(f, "{c} e^{labels}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::ops::Add<&Covector> for &Covector {
    type Output = Covector;
    fn add(self, rhs: &Covector) -> Covector {
        let mut out = self.clone();
        out.accumulate(rhs, 1.0);
        out
    }
}

impl std::ops::Sub<&Covector> for &Covector {
    type Output = Covector;
    fn sub(self, rhs: &Covector) -> Covector {
        let mut out = self.clone();
        out.accumulate(rhs, -1.0);
        out
    }
}

impl std::ops::Neg for &Covector {
    type Output = Covector;
    fn neg(self) -> Covector {
        self.scaled(-1.0)
    }
}

impl std::ops::Mul<f64> for &Covector {
    type Output = Covector;
    fn mul(self, rhs: f64) -> Covector {
        self.scaled(rhs)
    }
}

/// Exterior product. Bilinear, associative, graded-anticommutative; a result
/// degree above `n` is returned as the formal zero of that degree.
pub fn wedge(u: &Covector, v: &Covector) -> Result<Covector> {
    if u.n != v.n {
        return Err(Error::DimensionMismatch {
            left: u.n,
            right: v.n,
        });
    }
    let degree = u.degree + v.degree;
    let mut out = Covector::zero(u.n, degree);
    if degree > u.n {
        return Ok(out);
    }
    for (ma, ca) in u.terms() {
        if ca == 0.0 {
            continue;
        }
        for (mb, cb) in v.terms() {
            if cb == 0.0 || ma & mb != 0 {
                continue;
            }
            let sign = shuffle_sign(ma, mb);
            out.coeffs[mask_rank(ma | mb)] += sign * ca * cb;
        }
    }
    Ok(out)
}

/// Hodge star. `hodge(e^a) = sgn(a, a^c) e^(a^c)`; satisfies
/// `wedge(u, hodge(v)) = inner(u, v) * vol` and
/// `hodge(hodge(u)) = (-1)^(r (n-r)) u`.
pub fn hodge(u: &Covector) -> Covector {
    assert!(
        u.degree <= u.n,
        "hodge star is undefined on formal degrees above n"
    );
    let full = (1u32 << u.n) - 1;
    let mut out = Covector::zero(u.n, u.n - u.degree);
    for (mask, c) in u.terms() {
        if c == 0.0 {
            continue;
        }
        let comp = full & !mask;
        out.coeffs[mask_rank(comp)] += shuffle_sign(mask, comp) * c;
    }
    out
}

/// Scalar product under which the increasing-multi-index basis is orthonormal.
pub fn inner(u: &Covector, v: &Covector) -> Result<f64> {
    if u.n != v.n {
        return Err(Error::DimensionMismatch {
            left: u.n,
            right: v.n,
        });
    }
    if u.degree != v.degree {
        return Err(Error::DegreeMismatch {
            left: u.degree,
            right: v.degree,
        });
    }
    Ok(u.coeffs
        .iter()
        .zip(v.coeffs.iter())
        .map(|(a, b)| a * b)
        .sum())
}

/// `sqrt(inner(u, u))`.
pub fn norm(u: &Covector) -> f64 {
    u.norm()
}

/// Graded mixed covector: one homogeneous part per degree.
#[derive(Clone, Debug)]
pub struct MixedCovector {
    n: usize,
    parts: std::collections::BTreeMap<usize, Covector>,
}

impl MixedCovector {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            parts: Default::default(),
        }
    }

    pub fn from_parts(n: usize, parts: Vec<Covector>) -> Result<Self> {
        let mut out = Self::zero(n);
        for p in parts {
            out.add_part(&p)?;
        }
        Ok(out)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Accumulate a homogeneous part into the matching grade.
    pub fn add_part(&mut self, part: &Covector) -> Result<()> {
        if part.ambient() != self.n {
            return Err(Error::DimensionMismatch {
                left: part.ambient(),
                right: self.n,
            });
        }
        match self.parts.entry(part.degree()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(part.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().accumulate(part, 1.0);
            }
        }
        Ok(())
    }

    /// The part of a given grade (zero if absent).
    pub fn part(&self, degree: usize) -> Covector {
        self.parts
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| Covector::zero(self.n, degree))
    }

    /// Grades with stored parts, ascending.
    pub fn grades(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn norm(&self) -> f64 {
        self.parts
            .values()
            .map(|p| p.norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Grade-wise bilinear extension of the wedge to mixed covectors.
pub fn mixed_wedge(u: &MixedCovector, v: &MixedCovector) -> Result<MixedCovector> {
    if u.n != v.n {
        return Err(Error::DimensionMismatch {
            left: u.n,
            right: v.n,
        });
    }
    let mut out = MixedCovector::zero(u.n);
    for a in u.parts.values() {
        for b in v.parts.values() {
            let w = wedge(a, b)?;
            if w.degree() <= u.n {
                out.add_part(&w)?;
            }
        }
    }
    Ok(out)
}
