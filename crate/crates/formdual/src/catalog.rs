//! Named analytic test fields shared by the CLI suites and the test
//! harnesses: interior-harmonic polynomial forms, exterior-harmonic decaying
//! kernel fields, gauge perturbations, and seeded random form generators.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{basis_masks, basis_size, Covector};
use crate::fields::{FormField, KernelForm, KernelTag, KernelTerm, PolynomialForm, StarForm};
use crate::polynomial::Polynomial;

/// Harmonic scalar polynomials in n variables (index cycles the catalog).
pub fn harmonic_polynomial(n: usize, index: usize) -> Polynomial {
    let x = |i: usize| Polynomial::coordinate(n, i);
    let mut entries: Vec<Polynomial> = vec![
        x(0).mul(&x(1)),
        x(0).mul(&x(0)).add(&x(1).mul(&x(1)).scaled(-1.0)),
        x(1).mul(&x(2 % n)),
        x(1).mul(&x(1)).add(&x(2 % n).mul(&x(2 % n)).scaled(-1.0)),
    ];
    if n >= 3 {
        // x1 x2 x3 and x1^3 - 3 x1 x2^2.
        entries.push(x(0).mul(&x(1)).mul(&x(2)));
        entries.push(
            x(0).mul(&x(0))
                .mul(&x(0))
                .add(&x(0).mul(&x(1)).mul(&x(1)).scaled(-3.0)),
        );
    }
    if n >= 4 {
        entries.push(x(2).mul(&x(3)));
        entries.push(x(0).mul(&x(0)).add(&x(3).mul(&x(3)).scaled(-1.0)));
    }
    entries[index % entries.len()].clone()
}

/// A 2-variable harmonic polynomial in axes `a`, `b` (0-based).
fn planar_harmonic(n: usize, a: usize, b: usize, index: usize) -> Polynomial {
    let xa = Polynomial::coordinate(n, a);
    let xb = Polynomial::coordinate(n, b);
    match index % 3 {
        0 => xa.mul(&xb),
        1 => xa.mul(&xa).add(&xb.mul(&xb).scaled(-1.0)),
        // Re[(x_a + i x_b)^3] = x_a^3 - 3 x_a x_b^2.
        _ => xa.mul(&xa).mul(&xa).add(&xa.mul(&xb).mul(&xb).scaled(-3.0)),
    }
}

/// An interior-harmonic analytic form field of the given dimension and
/// degree, entire on all of space. Index cycles a fixed family.
pub fn harmonic_form(n: usize, degree: usize, index: usize) -> Result<PolynomialForm> {
    if !(3..=6).contains(&n) {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "the analytic harmonic catalog covers 3 <= n <= 6",
        });
    }
    if degree > n {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: n,
        });
    }
    match degree {
        // Degree-0 harmonic forms are constants (d u = 0 forces it).
        0 => Ok(PolynomialForm::constant(&Covector::scalar(
            n,
            1.0 + index as f64,
        ))),
        n_deg if n_deg == n => {
            // Only constants are harmonic at the top degree.
            let c = 1.0 + index as f64;
            Ok(PolynomialForm::constant(&Covector::volume(n, c)))
        }
        _ => {
            // d(p e^alpha) with alpha a (degree-1)-index and p harmonic in
            // two axes outside alpha: closed by construction, co-closed
            // because p avoids the alpha axes and is harmonic.
            let variant = index % 4;
            if variant == 3 {
                // A constant form for variety.
                let masks = basis_masks(n, degree);
                let mask = masks[index % masks.len()];
                let mut c = Covector::zero(n, degree);
                c.set_coeff_mask(mask, 1.0);
                return Ok(PolynomialForm::constant(&c));
            }
            let alpha_masks = basis_masks(n, degree - 1);
            let alpha = alpha_masks[index % alpha_masks.len()];
            let mut free_axes = (0..n).filter(|i| alpha & (1 << i) == 0);
            let a = free_axes.next().ok_or_else(|| {
                Error::InvalidArgument("no free axis for the harmonic recipe".into())
            })?;
            let b = free_axes.next().ok_or_else(|| {
                Error::InvalidArgument("need two free axes for the harmonic recipe".into())
            })?;
            let p = planar_harmonic(n, a, b, variant);
            Ok(PolynomialForm::monomial_form(n, alpha, p)?.d_form())
        }
    }
}

/// Centers used by the exterior (decaying) catalog; all within 0.3 of the
/// origin so any surface of radius >= 0.6 encloses them.
fn charge_layout(n: usize, index: usize) -> Vec<(Vec<f64>, f64)> {
    let mut e1 = vec![0.0; n];
    e1[0] = 0.2;
    let mut e2 = vec![0.0; n];
    e2[1] = 0.15;
    match index % 3 {
        0 => vec![(vec![0.0; n], 1.0)],
        1 => vec![(e1.clone(), 1.0), (e1.iter().map(|v| -v).collect(), -1.0)],
        _ => vec![(vec![0.0; n], 0.5), (e2, 1.25)],
    }
}

/// A decaying field harmonic outside a ball of radius 0.3 at the origin.
/// Degree 1 entries are gradients of point-source potentials; degree n-1
/// entries are their Hodge stars.
pub fn exterior_harmonic(n: usize, degree: usize, index: usize) -> Result<Arc<dyn FormField>> {
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "exterior harmonic fields require n >= 3",
        });
    }
    let gradient_field = |idx: usize| -> Result<KernelForm> {
        let terms: Vec<KernelTerm> = charge_layout(n, idx)
            .into_iter()
            .map(|(center, q)| KernelTerm {
                center,
                xi: Covector::scalar(n, q),
                tag: KernelTag::D,
            })
            .collect();
        KernelForm::new(n, 1, terms)
    };
    if degree == 1 {
        Ok(Arc::new(gradient_field(index)?))
    } else if degree == n - 1 {
        Ok(Arc::new(StarForm::new(Arc::new(gradient_field(index)?))?))
    } else {
        Err(Error::InvalidArgument(format!(
            "exterior harmonic catalog covers degrees 1 and n-1, got {degree}"
        )))
    }
}

/// Entire gauge perturbations `(d h1, delta h2)` for a pair of central
/// degree r: `h1` is an (r-2)-form with `delta d h1 = 0`, `h2` an (r+2)-form
/// with `d delta h2 = 0`. Either side is `None` where the degree range
/// forces the gauge form to vanish (r = 1 lower, r = n-1 upper).
pub fn gauge_fields(
    n: usize,
    r: usize,
    index: usize,
) -> Result<(Option<PolynomialForm>, Option<PolynomialForm>)> {
    if r < 1 || r > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "gauge fields need 1 <= r <= n-1, got {r}"
        )));
    }
    // Lower gauge: h1 = p e^alpha with p harmonic in two axes outside alpha,
    // so delta h1 = 0 and Delta h1 = 0, hence delta d h1 = 0.
    let lo = if r >= 2 {
        let alpha_masks = basis_masks(n, r - 2);
        let alpha = alpha_masks[index % alpha_masks.len()];
        let mut free = (0..n).filter(|i| alpha & (1 << i) == 0);
        let a = free.next().unwrap();
        let b = free.next().unwrap();
        let h1 = PolynomialForm::monomial_form(n, alpha, planar_harmonic(n, a, b, index))?;
        Some(h1.d_form())
    } else {
        None
    };
    // Upper gauge: h2 = p e^beta with p harmonic in two axes inside beta,
    // so d h2 = 0 and Delta h2 = 0, hence d delta h2 = 0.
    let hi = if r + 2 <= n {
        let beta_masks = basis_masks(n, r + 2);
        let beta = beta_masks[index % beta_masks.len()];
        let mut inside = (0..n).filter(|i| beta & (1 << i) != 0);
        let a = inside.next().unwrap();
        let b = inside.next().unwrap();
        let h2 = PolynomialForm::monomial_form(n, beta, planar_harmonic(n, a, b, index))?;
        Some(h2.delta_form()?)
    } else {
        None
    };
    Ok((lo, hi))
}

/// Random polynomial form with dyadic-rational coefficients (multiples of
/// 1/16), so the symbolic differential identities cancel exactly in f64.
pub fn random_polynomial_form<R: Rng>(
    rng: &mut R,
    n: usize,
    degree: usize,
    max_total_degree: u32,
) -> PolynomialForm {
    let mut comps = Vec::new();
    for mask in basis_masks(n, degree) {
        let n_terms = rng.random_range(1..=3usize);
        let mut terms = Vec::with_capacity(n_terms);
        for _ in 0..n_terms {
            let mut exps = vec![0u32; n];
            let total = rng.random_range(0..=max_total_degree);
            for _ in 0..total {
                let axis = rng.random_range(0..n);
                exps[axis] += 1;
            }
            let numerator: i32 = rng.random_range(-8..=8);
            terms.push((exps, numerator as f64 / 16.0));
        }
        comps.push((mask, Polynomial::from_terms(n, terms)));
    }
    PolynomialForm::new(n, degree, comps).expect("catalog masks are valid")
}

/// Random covector with coefficients in [-1, 1].
pub fn random_covector<R: Rng>(rng: &mut R, n: usize, degree: usize) -> Covector {
    let coeffs: Vec<f64> = (0..basis_size(n, degree))
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    Covector::from_dense(n, degree, coeffs).expect("sizes match")
}

/// Random point in the spherical shell `lo <= |x - center| <= hi`.
pub fn random_shell_point<R: Rng>(rng: &mut R, center: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let n = center.len();
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(1e-3..=1.0).contains(&norm) {
            continue;
        }
        let radius = rng.random_range(lo..hi);
        return center
            .iter()
            .zip(v.iter())
            .map(|(c, x)| c + x / norm * radius)
            .collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::is_harmonic;
    use rand::SeedableRng;

    #[test]
    fn harmonic_polynomials_are_harmonic() {
        for n in 3..=4 {
            for index in 0..8 {
                let p = harmonic_polynomial(n, index);
                assert!(p.laplacian().is_zero(), "n={n} index={index}");
            }
        }
    }

    #[test]
    fn harmonic_forms_are_harmonic() {
        let samples: Vec<Vec<f64>> = vec![
            vec![0.3, -0.4, 0.8, 0.2, 0.1, -0.6],
            vec![1.1, 0.6, -0.9, -0.3, 0.5, 0.2],
        ];
        for n in 3..=4usize {
            for degree in 0..=n {
                for index in 0..6 {
                    let u = harmonic_form(n, degree, index).unwrap();
                    let pts: Vec<Vec<f64>> = samples.iter().map(|s| s[..n].to_vec()).collect();
                    let chk = is_harmonic(&u, &pts, 1e-12).unwrap();
                    assert!(
                        chk.harmonic,
                        "n={n} degree={degree} index={index}: residual {}",
                        chk.max_residual
                    );
                }
            }
        }
    }

    #[test]
    fn exterior_fields_are_harmonic_and_decay() {
        for n in [3usize, 4] {
            for degree in [1usize, n - 1] {
                for index in 0..3 {
                    let u = exterior_harmonic(n, degree, index).unwrap();
                    let pts: Vec<Vec<f64>> = vec![
                        (0..n).map(|i| 1.0 + 0.3 * i as f64).collect(),
                        (0..n).map(|i| -0.9 - 0.2 * i as f64).collect(),
                    ];
                    let chk = is_harmonic(u.as_ref(), &pts, 1e-10).unwrap();
                    assert!(chk.harmonic, "n={n} deg={degree} idx={index}");

                    let mut far = vec![0.0; n];
                    far[0] = 1e3;
                    assert!(u.eval(&far).unwrap().norm() <= 1e-5);
                }
            }
        }
    }

    #[test]
    fn gauge_fields_satisfy_their_constraints() {
        let samples: Vec<Vec<f64>> = vec![vec![0.4, -0.2, 0.7, 0.3], vec![-0.8, 0.5, 0.1, -0.4]];
        for n in [3usize, 4] {
            for r in 1..n {
                let (lo, hi) = gauge_fields(n, r, 1).unwrap();
                let pts: Vec<Vec<f64>> = samples.iter().map(|s| s[..n].to_vec()).collect();
                if let Some(g) = lo {
                    assert_eq!(g.degree(), r - 1);
                    for x in &pts {
                        // d of an exact form vanishes; delta d h1 = 0 means
                        // the gauge is co-closed.
                        assert_eq!(g.d(x).unwrap().norm(), 0.0);
                        if g.degree() > 0 {
                            assert!(g.delta(x).unwrap().norm() <= 1e-13);
                        }
                    }
                }
                if let Some(g) = hi {
                    assert_eq!(g.degree(), r + 1);
                    for x in &pts {
                        assert!(g.d(x).unwrap().norm() <= 1e-13, "n={n} r={r}");
                        assert_eq!(g.delta(x).unwrap().norm(), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn random_forms_have_exact_differential_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.random_range(3..=4usize);
            let degree = rng.random_range(0..=n);
            let form = random_polynomial_form(&mut rng, n, degree, 3);
            assert!(form.d_form().d_form().is_identically_zero());
            if degree >= 2 {
                assert!(form
                    .delta_form()
                    .unwrap()
                    .delta_form()
                    .unwrap()
                    .is_identically_zero());
            }
        }
    }
}
