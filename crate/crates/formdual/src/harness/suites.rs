//! Built-in verification suites runnable from the CLI (`identities` mode)
//! and from configs. Each suite is deterministic given the seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::cauchy_green;
use crate::duality;
use crate::error::{Error, Result};
use crate::exterior::{basis_masks, hodge, inner, wedge, Covector, MultiIndex};
use crate::fields::{check, FormField, KernelForm, KernelTag, PolynomialForm};
use crate::geometry::{circle_cycle, sphere_surface};
use crate::harness::report::CheckResult;
use crate::potentials;
use crate::vector3;

/// Name and one-line description of a built-in suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
}

const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        name: "algebra",
        description: "exhaustive wedge/hodge/inner basis identities for n in {3,4,5}",
    },
    SuiteInfo {
        name: "operators",
        description: "d^2 = 0, delta^2 = 0, star-route codifferential, laplacian composition, finite-difference cross-checks",
    },
    SuiteInfo {
        name: "cauchy-green-interior",
        description: "interior boundary-integral reproduction of analytic harmonic fields",
    },
    SuiteInfo {
        name: "cauchy-green-exterior",
        description: "exterior reproduction and holomorphic-pair reproduction formulas",
    },
    SuiteInfo {
        name: "lemma1",
        description: "vanishing of the pairing combination for both-regular inputs, with negative control",
    },
    SuiteInfo {
        name: "pairings",
        description: "point-measure identities, contour independence and gauge invariance of both duality pairings",
    },
    SuiteInfo {
        name: "decomposition",
        description: "exterior decomposition u = d u1 + delta u2 with constraint residuals and decay",
    },
    SuiteInfo {
        name: "vector3",
        description: "vector-language pairings against the exterior-algebra route; Helmholtz decomposition",
    },
    SuiteInfo {
        name: "reciprocity",
        description: "point-measure mutual-potential reciprocity sign relation",
    },
    SuiteInfo {
        name: "periods",
        description: "closed-curve periods of *w_hi against the pairing route",
    },
];

/// All built-in suites in stable order.
pub fn list_suites() -> &'static [SuiteInfo] {
    SUITES
}

/// Run one suite by name with the given seed.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<CheckResult>> {
    match name {
        "algebra" => algebra_suite(),
        "operators" => operators_suite(seed),
        "cauchy-green-interior" => cg_interior_suite(),
        "cauchy-green-exterior" => cg_exterior_suite(),
        "lemma1" => lemma1_suite(seed),
        "pairings" => pairings_suite(seed),
        "decomposition" => decomposition_suite(),
        "vector3" => vector3_suite(),
        "reciprocity" => reciprocity_suite(seed),
        "periods" => periods_suite(),
        other => Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
    }
}

fn indicator(label: &str, condition: bool, provenance: &str) -> CheckResult {
    CheckResult::compare(
        label,
        vec![if condition { 1.0 } else { 0.0 }],
        vec![1.0],
        provenance,
        0.0,
    )
}

fn brute_force_sign(a: &[usize], b: &[usize]) -> Option<f64> {
    let mut idx: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    let mut swaps = 0usize;
    for i in 0..idx.len() {
        for j in 0..idx.len().saturating_sub(i + 1) {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(if swaps.is_multiple_of(2) { 1.0 } else { -1.0 })
}

fn algebra_suite() -> Result<Vec<CheckResult>> {
    let mut wedge_dev: f64 = 0.0;
    let mut hodge_dev: f64 = 0.0;
    let mut star_inner_dev: f64 = 0.0;
    for n in 3..=5usize {
        for ra in 0..=n {
            for rb in 0..=n {
                for ma in basis_masks(n, ra) {
                    let ea_entries = MultiIndex::from_mask(n, ma)?.entries();
                    let ea = Covector::basis(n, &ea_entries)?;
                    for mb in basis_masks(n, rb) {
                        let eb_entries = MultiIndex::from_mask(n, mb)?.entries();
                        let eb = Covector::basis(n, &eb_entries)?;
                        let w = wedge(&ea, &eb)?;
                        match brute_force_sign(&ea_entries, &eb_entries) {
                            None => wedge_dev = wedge_dev.max(w.norm()),
                            Some(sign) => {
                                if ra + rb <= n {
                                    wedge_dev = wedge_dev.max((w.coeff_mask(ma | mb) - sign).abs());
                                } else {
                                    wedge_dev = wedge_dev.max(w.norm());
                                }
                            }
                        }
                        if ra == rb {
                            let lhs = wedge(&ea, &hodge(&eb))?.coeff_mask((1 << n) - 1);
                            let ip = inner(&ea, &eb)?;
                            star_inner_dev = star_inner_dev.max((lhs - ip).abs());
                        }
                    }
                    let twice = hodge(&hodge(&ea));
                    let sign = if (ra * (n - ra)) % 2 == 0 { 1.0 } else { -1.0 };
                    hodge_dev = hodge_dev.max((twice.coeff_mask(ma) - sign).abs());
                }
            }
        }
    }
    Ok(vec![
        CheckResult::compare(
            "wedge basis signs vs permutation parity",
            vec![wedge_dev],
            vec![0.0],
            "brute-force parity oracle",
            1e-13,
        ),
        CheckResult::compare(
            "hodge twice is (-1)^(r(n-r))",
            vec![hodge_dev],
            vec![0.0],
            "closed form",
            1e-13,
        ),
        CheckResult::compare(
            "u /\\ *v = <u,v> vol",
            vec![star_inner_dev],
            vec![0.0],
            "orthonormal basis",
            1e-13,
        ),
    ])
}

fn operators_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f70_7321);
    let mut dd_dev: f64 = 0.0;
    let mut deltadelta_dev: f64 = 0.0;
    let mut star_dev: f64 = 0.0;
    let mut lap_dev: f64 = 0.0;
    let mut fd_dev: f64 = 0.0;
    for _ in 0..60 {
        let n = rng.random_range(3..=4usize);
        let degree = rng.random_range(0..=n);
        let form = catalog::random_polynomial_form(&mut rng, n, degree, 3);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();

        dd_dev = dd_dev.max(form.d_form().d_form().value_at(&x).norm());
        if degree >= 2 {
            deltadelta_dev =
                deltadelta_dev.max(form.delta_form()?.delta_form()?.value_at(&x).norm());
        }
        if degree >= 1 {
            let direct = form.delta_form()?.value_at(&x);
            let starred = check::polynomial_delta_star_route(&form)?.value_at(&x);
            star_dev = star_dev.max(direct.max_coeff_diff(&starred));
        }
        // Laplacian against -(d delta + delta d) composed from the public
        // operator forms.
        let lap = form.laplacian_form().value_at(&x);
        let composed = {
            let mut acc = Covector::zero(n, degree);
            if degree >= 1 {
                acc.accumulate(&form.delta_form()?.d_form().value_at(&x), 1.0);
            }
            if degree < n {
                acc.accumulate(&form.d_form().delta_form()?.value_at(&x), 1.0);
            }
            acc.scaled(-1.0)
        };
        lap_dev = lap_dev.max(lap.max_coeff_diff(&composed));

        // Finite differences of the analytic paths.
        let h = 1e-5;
        let d_fd = check::fd_d(&form, &x, h)?;
        let d_an = form.d(&x)?;
        fd_dev = fd_dev.max(d_an.max_coeff_diff(&d_fd) / (1.0 + d_an.norm()));
        if degree >= 1 {
            let delta_fd = check::fd_delta(&form, &x, h)?;
            let delta_an = form.delta(&x)?;
            fd_dev = fd_dev.max(delta_an.max_coeff_diff(&delta_fd) / (1.0 + delta_an.norm()));
        }
    }
    Ok(vec![
        CheckResult::compare("d o d = 0", vec![dd_dev], vec![0.0], "symbolic", 1e-12),
        CheckResult::compare(
            "delta o delta = 0",
            vec![deltadelta_dev],
            vec![0.0],
            "symbolic",
            1e-12,
        ),
        CheckResult::compare(
            "delta equals signed *d* composition",
            vec![star_dev],
            vec![0.0],
            "star route",
            1e-12,
        ),
        CheckResult::compare(
            "laplacian equals -(d delta + delta d)",
            vec![lap_dev],
            vec![0.0],
            "operator composition",
            1e-12,
        ),
        CheckResult::compare(
            "analytic vs central differences",
            vec![fd_dev],
            vec![0.0],
            "finite differences",
            1e-6,
        ),
    ])
}

fn cg_interior_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    // n = 3 fields at order 32.
    let s3 = sphere_surface(&[0.0; 3], 1.0, 32)?;
    let points3 = [[0.3, 0.1, -0.2], [-0.4, 0.2, 0.3], [0.0, 0.55, 0.1]];
    for (degree, index) in [(1usize, 0usize), (1, 1), (2, 0)] {
        let u = catalog::harmonic_form(3, degree, index)?;
        let mut dev: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for x in &points3 {
            let rep = cauchy_green::reproduce_interior(&u, &s3, x)?;
            let exact = u.eval(x)?;
            dev = dev.max(rep.value.max_coeff_diff(&exact));
            scale = scale.max(exact.norm());
        }
        checks.push(CheckResult::compare(
            format!("interior reproduction n=3 deg={degree} idx={index}"),
            vec![dev / scale.max(1.0)],
            vec![0.0],
            "direct evaluation",
            1e-6,
        ));
    }
    // n = 4 at a lighter order.
    let s4 = sphere_surface(&[0.0; 4], 1.0, 16)?;
    let u4 = catalog::harmonic_form(4, 1, 0)?;
    let x4 = [0.25, -0.2, 0.3, 0.1];
    let rep = cauchy_green::reproduce_interior(&u4, &s4, &x4)?;
    let exact = u4.eval(&x4)?;
    checks.push(CheckResult::compare(
        "interior reproduction n=4 deg=1",
        vec![rep.value.max_coeff_diff(&exact) / exact.norm().max(1.0)],
        vec![0.0],
        "direct evaluation",
        1e-6,
    ));
    Ok(checks)
}

fn cg_exterior_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let u = catalog::exterior_harmonic(3, 1, 0)?;
    let x = [2.0, 1.0, 0.0];
    let exact = u.eval(&x)?;
    let mut values = Vec::new();
    for radius in [1.0, 1.5] {
        let s = sphere_surface(&[0.0; 3], radius, 32)?;
        let rep = cauchy_green::reproduce_exterior(u.as_ref(), &s, &x)?;
        values.push(rep.value.clone());
        checks.push(CheckResult::compare(
            format!("exterior reproduction radius {radius}"),
            vec![rep.value.max_coeff_diff(&exact) / exact.norm().max(1e-30)],
            vec![0.0],
            "closed form",
            1e-6,
        ));
    }
    checks.push(CheckResult::compare(
        "exterior contour independence",
        vec![values[0].max_coeff_diff(&values[1])],
        vec![0.0],
        "two surfaces",
        1e-7,
    ));

    // Pair reproduction, interior and exterior.
    let xi = Covector::basis(3, &[1])?;
    let s = sphere_surface(&[0.0; 3], 1.0, 32)?;
    let w_out = potentials::point_pair(&[3.0, 0.0, 0.0], &xi)?;
    let xin = [0.2, 0.0, 0.1];
    let rep = cauchy_green::reproduce_pair_interior(&w_out, &s, &xin)?;
    let hi_err = rep.hi.max_coeff_diff(&w_out.w_hi().eval(&xin)?);
    let lo_err = rep.lo.max_coeff_diff(&w_out.w_lo().eval(&xin)?);
    checks.push(CheckResult::compare(
        "pair interior reproduction",
        vec![hi_err, lo_err],
        vec![0.0, 0.0],
        "direct evaluation",
        1e-6,
    ));
    let w_in = potentials::point_pair(&[0.1, -0.2, 0.0], &xi)?;
    let xout = [0.0, 2.0, 1.0];
    let rep = cauchy_green::reproduce_pair_exterior(&w_in, &s, &xout)?;
    let hi_err = rep.hi.max_coeff_diff(&w_in.w_hi().eval(&xout)?);
    let lo_err = rep.lo.max_coeff_diff(&w_in.w_lo().eval(&xout)?);
    checks.push(CheckResult::compare(
        "pair exterior reproduction",
        vec![hi_err, lo_err],
        vec![0.0, 0.0],
        "direct evaluation",
        1e-6,
    ));
    Ok(checks)
}

fn lemma1_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c65_6d31);
    let s = sphere_surface(&[0.0; 3], 1.0, 32)?;
    let mut max_res: f64 = 0.0;
    for i in 0..4 {
        let u = catalog::harmonic_form(3, 1, i)?;
        let pole = catalog::random_shell_point(&mut rng, &[0.0; 3], 3.0, 5.0);
        let xi = catalog::random_covector(&mut rng, 3, 1);
        let w = potentials::point_pair(&pole, &xi)?;
        max_res = max_res.max(duality::lemma1_residual(&u, &w, &s)?);
    }
    let mut checks = vec![CheckResult::compare(
        "vanishing for both-regular inputs",
        vec![max_res],
        vec![0.0],
        "closed-surface cancellation",
        1e-8,
    )];

    // Negative control: pole inside the ball, at a point where the pairing
    // value is bounded away from zero.
    let u = catalog::harmonic_form(3, 1, 0)?;
    let xi = Covector::basis(3, &[1])?;
    let w_in = potentials::point_pair(&[0.3, 0.2, 0.5], &xi)?;
    let res = duality::lemma1_residual(&u, &w_in, &s)?;
    checks.push(indicator(
        "negative control exceeds 1e-3",
        res > 1e-3,
        "singular-inside configuration",
    ));
    Ok(checks)
}

fn pairings_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7061_6972);
    let mut checks = Vec::new();

    // First pairing: point identity over random configurations (n = 3).
    let s = sphere_surface(&[0.0; 3], 1.0, duality::DEFAULT_ORDER_N3)?;
    let mut dev1: f64 = 0.0;
    for i in 0..4 {
        let u = catalog::harmonic_form(3, 1, i)?;
        let x0 = catalog::random_shell_point(&mut rng, &[0.0; 3], 0.1, 0.5);
        let xi = catalog::random_covector(&mut rng, 3, 1);
        let w = potentials::point_pair(&x0, &xi)?;
        let report = duality::pairing_theorem1(&u, &w, &s)?;
        let expected = duality::convention::THEOREM1_POINT_CONSTANT * inner(&u.eval(&x0)?, &xi)?;
        dev1 = dev1.max((report.value - expected).abs() / (1.0 + expected.abs()));
    }
    checks.push(CheckResult::compare(
        "first pairing point identity",
        vec![dev1],
        vec![0.0],
        "calibrated point-measure identity",
        1e-6,
    ));

    // Second pairing point identity.
    let u_ext = catalog::exterior_harmonic(3, 1, 0)?;
    let mut dev2: f64 = 0.0;
    for _ in 0..3 {
        let x0 = catalog::random_shell_point(&mut rng, &[0.0; 3], 1.8, 3.0);
        let xi = catalog::random_covector(&mut rng, 3, 1);
        let w = potentials::point_pair(&x0, &xi)?;
        let report = duality::pairing_theorem2(&w, u_ext.as_ref(), &s)?;
        let expected =
            duality::convention::theorem2_point_sign(3, 1) * inner(&u_ext.eval(&x0)?, &xi)?;
        dev2 = dev2.max((report.value - expected).abs() / (1.0 + expected.abs()));
    }
    checks.push(CheckResult::compare(
        "second pairing point identity",
        vec![dev2],
        vec![0.0],
        "calibrated point-measure identity",
        1e-6,
    ));

    // Contour independence across two radii.
    let u = catalog::harmonic_form(3, 1, 2)?;
    let xi = Covector::basis(3, &[2])?;
    let w = potentials::point_pair(&[0.2, 0.3, -0.1], &xi)?;
    let sa = sphere_surface(&[0.0; 3], 1.2, duality::DEFAULT_ORDER_N3)?;
    let sb = sphere_surface(&[0.0; 3], 1.6, duality::DEFAULT_ORDER_N3)?;
    let va = duality::pairing_theorem1(&u, &w, &sa)?.value;
    let vb = duality::pairing_theorem1(&u, &w, &sb)?.value;
    checks.push(CheckResult::compare(
        "contour independence",
        vec![(va - vb).abs() / (1.0 + va.abs())],
        vec![0.0],
        "two surfaces",
        1e-7,
    ));

    // Gauge invariance of both pairings.
    let (gauge_lo, gauge_hi) = catalog::gauge_fields(3, 1, 1)?;
    assert!(gauge_lo.is_none());
    let gauge_hi = gauge_hi.expect("upper gauge exists for r=1, n=3");
    let w_gauged = w.perturbed(None, Some((0.7, Arc::new(gauge_hi) as Arc<dyn FormField>)))?;
    let v_gauged = duality::pairing_theorem1(&u, &w_gauged, &sa)?.value;
    checks.push(CheckResult::compare(
        "gauge invariance (first pairing)",
        vec![(va - v_gauged).abs() / (1.0 + va.abs())],
        vec![0.0],
        "entire gauge pair",
        1e-8,
    ));

    let w_near = potentials::point_pair(&[2.5, 0.0, 0.5], &xi)?;
    let (_, gh) = catalog::gauge_fields(3, 1, 0)?;
    let w_near_gauged = w_near.perturbed(
        None,
        Some((1.0, Arc::new(gh.unwrap()) as Arc<dyn FormField>)),
    )?;
    let p_base = duality::pairing_theorem2(&w_near, u_ext.as_ref(), &s)?.value;
    let p_gauged = duality::pairing_theorem2(&w_near_gauged, u_ext.as_ref(), &s)?.value;
    checks.push(CheckResult::compare(
        "gauge invariance (second pairing)",
        vec![(p_base - p_gauged).abs() / (1.0 + p_base.abs())],
        vec![0.0],
        "entire gauge pair",
        1e-8,
    ));
    Ok(checks)
}

fn decomposition_suite() -> Result<Vec<CheckResult>> {
    // Zero-net-flux entry so the decay check sees the dipole rate.
    let u = catalog::exterior_harmonic(3, 1, 1)?;
    let s = sphere_surface(&[0.0; 3], 1.0, 32)?;
    let parts = cauchy_green::decompose_exterior(u.as_ref(), &s)?;
    let points: Vec<Vec<f64>> = vec![
        vec![2.0, 0.5, 0.0],
        vec![-1.5, 1.0, 1.0],
        vec![0.3, -2.2, 0.8],
        vec![1.4, 1.4, -1.4],
    ];
    let res = cauchy_green::decomposition_residuals(u.as_ref(), &parts, &points)?;
    let scale = res.u_scale.max(1e-30);
    let mut checks = vec![
        CheckResult::compare(
            "reconstruction u = d u1 + delta u2",
            vec![res.reconstruction / scale],
            vec![0.0],
            "constraint",
            1e-5,
        ),
        CheckResult::compare(
            "delta u1 = 0",
            vec![res.delta_u1 / scale],
            vec![0.0],
            "constraint",
            1e-5,
        ),
        CheckResult::compare(
            "d u2 = 0",
            vec![res.d_u2 / scale],
            vec![0.0],
            "constraint",
            1e-5,
        ),
    ];
    let far = [100.0, 0.0, 0.0];
    let sup_u = (0..s.len())
        .map(|i| u.eval(s.node(i)).map(|c| c.norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let decay = parts.u1.eval(&far)?.norm().max(parts.u2.eval(&far)?.norm());
    checks.push(CheckResult::compare(
        "decay at range 100",
        vec![decay / sup_u.max(1e-30)],
        vec![0.0],
        "kernel decay",
        1e-3,
    ));
    Ok(checks)
}

fn vector3_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let u_form = catalog::harmonic_form(3, 1, 4)?;
    let u = vector3::VectorField3::from_form(Arc::new(u_form.clone()))?;
    let xi = Covector::basis(3, &[2])?;
    let pair = potentials::point_pair(&[0.25, -0.1, 0.3], &xi)?;
    let vp = vector3::HolomorphicVectorPair::from_pair(&pair)?;
    let s = sphere_surface(&[0.0; 3], 1.0, 32)?;

    let vec_route = vector3::pairing_vector_h(&u, &vp, &s)?;
    let form_route = duality::pairing_theorem1(&u_form, &pair, &s)?.value;
    checks.push(CheckResult::compare(
        "vector vs form pairing (first)",
        vec![(vec_route - form_route).abs() / (1.0 + form_route.abs())],
        vec![0.0],
        "two routes",
        1e-10,
    ));

    let u_ext_form = catalog::exterior_harmonic(3, 1, 0)?;
    let u_ext = vector3::VectorField3::from_form(u_ext_form.clone())?;
    let pair_out = potentials::point_pair(&[2.0, 0.5, -0.5], &xi)?;
    let vp_out = vector3::HolomorphicVectorPair::from_pair(&pair_out)?;
    let vec_route2 = vector3::pairing_vector_p(&vp_out, &u_ext, &s)?;
    let form_route2 = duality::pairing_theorem2(&pair_out, u_ext_form.as_ref(), &s)?.value;
    checks.push(CheckResult::compare(
        "vector vs form pairing (second)",
        vec![(vec_route2 - form_route2).abs() / (1.0 + form_route2.abs())],
        vec![0.0],
        "two routes",
        1e-10,
    ));

    // Gradient-gauge invariance.
    let h = PolynomialForm::monomial_form(3, 0, catalog::harmonic_polynomial(3, 0))?;
    let gauged = vp_out.with_gradient_gauge(&h, 0.6)?;
    let moved = vector3::pairing_vector_p(&gauged, &u_ext, &s)?;
    checks.push(CheckResult::compare(
        "gradient gauge invariance",
        vec![(vec_route2 - moved).abs() / (1.0 + vec_route2.abs())],
        vec![0.0],
        "harmonic gradient gauge",
        1e-8,
    ));

    // Helmholtz decomposition.
    let parts = vector3::helmholtz_decompose(&u_ext, &s)?;
    let points: Vec<Vec<f64>> = vec![
        vec![2.0, 1.0, 0.0],
        vec![-1.6, 0.4, 1.2],
        vec![0.0, 0.0, 2.4],
    ];
    let res = vector3::helmholtz_residuals(&u_ext, &parts, &points)?;
    let scale = res.u_scale.max(1e-30);
    checks.push(CheckResult::compare(
        "helmholtz constraints",
        vec![
            res.reconstruction / scale,
            res.div_v / scale,
            res.laplacian_f / scale,
            res.laplacian_v / scale,
        ],
        vec![0.0, 0.0, 0.0, 0.0],
        "constraint",
        1e-5,
    ));
    Ok(checks)
}

fn reciprocity_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265_6370);
    let mut dev: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.random_range(3..=4usize);
        let r = rng.random_range(1..n);
        let x1 = catalog::random_shell_point(&mut rng, &vec![0.0; n], 0.2, 1.0);
        let x2 = catalog::random_shell_point(&mut rng, &vec![0.0; n], 1.5, 3.0);
        let xi1 = catalog::random_covector(&mut rng, n, r);
        let xi2 = catalog::random_covector(&mut rng, n, n - r);
        let (p1, p2) = potentials::reciprocity_check((&x1, &xi1), (&x2, &xi2))?;
        let sign = potentials::reciprocity_sign(n, r);
        dev = dev.max((p1 - sign * p2).abs() / (1.0 + p1.abs()));
    }
    Ok(vec![CheckResult::compare(
        "reciprocity sign relation",
        vec![dev],
        vec![0.0],
        "closed form both sides",
        1e-12,
    )])
}

fn periods_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let xi = Covector::basis(3, &[1])?;
    let w = potentials::point_pair(&[0.2, -0.1, 0.3], &xi)?;
    let s = sphere_surface(&[0.0; 3], 1.0, duality::DEFAULT_ORDER_N3)?;
    let cycle = circle_cycle(&[0.0, 0.0, 0.5], 2.5, &[0.0, 0.0, 1.0], 256)?;
    let (lhs, rhs) = duality::period_identity(&cycle, &w, &s)?;
    checks.push(CheckResult::compare(
        "period identity",
        vec![lhs],
        vec![rhs],
        "pairing route",
        1e-7,
    ));

    // Exact *w_hi has vanishing periods.
    let k_grad = KernelForm::single(&[0.0; 3], Covector::scalar(3, 1.0), KernelTag::D)?;
    let hi = crate::fields::StarForm::new(Arc::new(k_grad))?;
    let w_exact =
        crate::fields::HolomorphicPair::new(1, Arc::new(PolynomialForm::zero(3, 0)), Arc::new(hi))?;
    let p = duality::period_star_whi(&cycle, &w_exact)?;
    checks.push(CheckResult::compare(
        "period of an exact field",
        vec![p],
        vec![0.0],
        "gradient field",
        1e-8,
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_registry_is_stable() {
        let names: Vec<&str> = list_suites().iter().map(|s| s.name).collect();
        assert!(names.len() >= 6);
        let mut sorted = names.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(run_suite("nonexistent", 0).is_err());
    }

    #[test]
    fn fast_suites_pass() {
        for name in ["algebra", "reciprocity"] {
            let checks = run_suite(name, 42).unwrap();
            assert!(checks.iter().all(|c| c.pass), "suite {name}: {checks:?}");
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite("operators", 7).unwrap();
        let b = run_suite("operators", 7).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.computed, y.computed);
        }
    }
}
