//! Numerical exterior calculus on oriented Euclidean n-space, Newtonian layer
//! potentials over closed hypersurfaces, boundary-integral reproduction of
//! harmonic differential forms and holomorphic pairs, and the surface duality
//! pairings between interior harmonic forms and exterior holomorphic pairs.
//!
//! The crate is organized bottom-up:
//!
//! - [`exterior`]: exact algebra of covectors (wedge, Hodge star, inner product).
//! - [`polynomial`] / [`fields`]: differential-form fields with analytic
//!   `d`, `delta` and `laplacian` evaluation.
//! - [`geometry`]: spheres and ellipsoids as quadrature surfaces, closed-curve
//!   cycles, compensated surface integration.
//! - [`potentials`]: the Newtonian kernel `|x-y|^(2-n)`, layer potentials and
//!   their analytic derivatives, point-source holomorphic pairs, reciprocity.
//! - [`cauchy_green`]: interior/exterior reproduction formulas and the
//!   exterior decomposition `u = d u1 + delta u2`.
//! - [`duality`]: the two duality pairing functionals, vanishing lemma,
//!   point-measure identities, and period integrals.
//! - [`vector3`]: the n = 3, r = 1 specialization in vector-calculus language,
//!   including the Helmholtz decomposition of exterior harmonic vector fields.
//! - [`catalog`]: named analytic test fields shared by the CLI and test suites.
//! - [`harness`]: experiment configs, machine-readable reports, built-in
//!   verification suites; drives the `formdual` binary.

pub mod catalog;
pub mod cauchy_green;
pub mod duality;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod geometry;
pub mod harness;
pub mod polynomial;
pub mod potentials;
pub mod vector3;

pub use error::{Error, Result};

#[cfg(test)]
mod tests {
    /// Every value type is immutable after construction and shareable
    /// across threads.
    #[test]
    fn core_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<crate::exterior::Covector>();
        assert_send_sync::<crate::exterior::MixedCovector>();
        assert_send_sync::<crate::fields::PolynomialForm>();
        assert_send_sync::<crate::fields::KernelForm>();
        assert_send_sync::<crate::fields::HolomorphicPair>();
        assert_send_sync::<crate::geometry::QuadratureSurface>();
        assert_send_sync::<crate::geometry::Cycle3>();
        assert_send_sync::<crate::potentials::LayerPotentialForm>();
        assert_send_sync::<crate::vector3::VectorField3>();
        assert_send_sync::<crate::duality::PairingReport>();
    }
}
