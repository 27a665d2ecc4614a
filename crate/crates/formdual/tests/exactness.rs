//! High-order exactness checks: the reproduction formulas and the
//! point-measure pairing identities are exact identities, so at dense
//! quadrature they must reach the floating-point floor, not just the
//! acceptance tolerances. Guards the sign conventions across degree and
//! dimension parities.
use formdual::catalog;
use formdual::cauchy_green::reproduce_pair_interior;
use formdual::duality::{convention, pairing_theorem1, pairing_theorem2};
use formdual::exterior::{inner, Covector};
use formdual::fields::FormField;
use formdual::geometry::sphere_surface;
use formdual::potentials::point_pair;

#[test]
fn identities_reach_the_quadrature_floor() {
    // Pair reproduction (incl. the lo-component third term) at order 96.
    let xi = Covector::basis(3, &[2]).unwrap();
    let w = point_pair(&[3.0, 1.0, 0.5], &xi).unwrap();
    let s = sphere_surface(&[0.0; 3], 1.0, 96).unwrap();
    let x = [0.2, -0.1, 0.15];
    let rep = reproduce_pair_interior(&w, &s, &x).unwrap();
    let hi_err = rep.hi.max_coeff_diff(&w.w_hi().eval(&x).unwrap());
    let lo_err = rep.lo.max_coeff_diff(&w.w_lo().eval(&x).unwrap());
    println!("pair hi err at order 96: {hi_err:.3e}");
    println!("pair lo err at order 96: {lo_err:.3e}");
    assert!(hi_err < 1e-12 && lo_err < 1e-12);

    // Theorem-1 and theorem-2 point identities at order 96 (n=3).
    let u = catalog::harmonic_form(3, 1, 0).unwrap();
    let x0 = [0.3, 0.2, 0.1];
    let w_in = point_pair(&x0, &xi).unwrap();
    let v = pairing_theorem1(&u, &w_in, &s).unwrap().value;
    let expect = inner(&u.eval(&x0).unwrap(), &xi).unwrap();
    println!("thm1 residual: {:.3e}", (v - expect).abs());
    assert!((v - expect).abs() < 1e-12);

    let u_ext = catalog::exterior_harmonic(3, 1, 0).unwrap();
    let x1 = [2.0, 1.0, 0.5];
    let w_out = point_pair(&x1, &xi).unwrap();
    let v2 = pairing_theorem2(&w_out, u_ext.as_ref(), &s).unwrap().value;
    let expect2 =
        convention::theorem2_point_sign(3, 1) * inner(&u_ext.eval(&x1).unwrap(), &xi).unwrap();
    println!("thm2 residual: {:.3e}", (v2 - expect2).abs());
    assert!((v2 - expect2).abs() < 1e-12);

    // n=4, r=2 (the parity case where the printed coefficient differs).
    let s4 = sphere_surface(&[0.0; 4], 1.0, 32).unwrap();
    let u4 = catalog::harmonic_form(4, 2, 0).unwrap();
    let xi4 = Covector::basis(4, &[1, 3]).unwrap();
    let x04 = [0.25, 0.2, 0.1, -0.15];
    let w4 = point_pair(&x04, &xi4).unwrap();
    let v4 = pairing_theorem1(&u4, &w4, &s4).unwrap().value;
    let e4 = inner(&u4.eval(&x04).unwrap(), &xi4).unwrap();
    println!(
        "thm1 n=4 r=2 residual: {:.3e} (value {v4:.6})",
        (v4 - e4).abs()
    );
    assert!((v4 - e4).abs() < 1e-10 * (1.0 + e4.abs()));

    let u4x = catalog::exterior_harmonic(4, 3, 0).unwrap();
    let x14 = [1.8, 0.9, 0.4, -0.6];
    let xi43 = Covector::basis(4, &[1, 2, 4]).unwrap();
    let w43 = point_pair(&x14, &xi43).unwrap();
    let v43 = pairing_theorem2(&w43, u4x.as_ref(), &s4).unwrap().value;
    let e43 =
        convention::theorem2_point_sign(4, 3) * inner(&u4x.eval(&x14).unwrap(), &xi43).unwrap();
    println!("thm2 n=4 r=3 residual: {:.3e}", (v43 - e43).abs());
    assert!((v43 - e43).abs() < 1e-10 * (1.0 + e43.abs()));
}
