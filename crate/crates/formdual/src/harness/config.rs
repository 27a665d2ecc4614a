//! Experiment configuration schema (JSON, versioned, unknown keys rejected).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Current config/report schema version.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub seed: u64,
    /// Default report path; the CLI `--out` flag overrides it.
    #[serde(default)]
    pub output: Option<String>,
    pub cases: Vec<CaseConfig>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        for case in &self.cases {
            case.validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub shape: SurfaceShape,
    pub center: Vec<f64>,
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default)]
    pub semi_axes: Option<Vec<f64>>,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceShape {
    Sphere,
    Ellipsoid,
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<crate::geometry::QuadratureSurface> {
        match self.shape {
            SurfaceShape::Sphere => {
                let radius = self.radius.ok_or_else(|| {
                    Error::InvalidArgument("sphere surface needs a radius".into())
                })?;
                crate::geometry::sphere_surface(&self.center, radius, self.order)
            }
            SurfaceShape::Ellipsoid => {
                let axes = self.semi_axes.as_ref().ok_or_else(|| {
                    Error::InvalidArgument("ellipsoid surface needs semi_axes".into())
                })?;
                crate::geometry::ellipsoid_surface(&self.center, axes, self.order)
            }
        }
    }

    fn validate(&self, dimension: usize) -> Result<()> {
        if self.center.len() != dimension {
            return Err(Error::DimensionMismatch {
                left: self.center.len(),
                right: dimension,
            });
        }
        Ok(())
    }
}

/// Analytic field family reference resolved against the catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "family", rename_all = "snake_case")]
pub enum FieldSpec {
    /// Interior-harmonic polynomial form from the catalog.
    HarmonicForm { degree: usize, index: usize },
    /// Decaying exterior-harmonic field from the catalog.
    ExteriorHarmonic { degree: usize, index: usize },
    /// Gradient of the point-source potential at `center`.
    KernelGradient { center: Vec<f64> },
}

impl FieldSpec {
    pub fn build(&self, n: usize) -> Result<std::sync::Arc<dyn crate::fields::FormField>> {
        use std::sync::Arc;
        match self {
            FieldSpec::HarmonicForm { degree, index } => {
                Ok(Arc::new(crate::catalog::harmonic_form(n, *degree, *index)?))
            }
            FieldSpec::ExteriorHarmonic { degree, index } => {
                crate::catalog::exterior_harmonic(n, *degree, *index)
            }
            FieldSpec::KernelGradient { center } => {
                if center.len() != n {
                    return Err(Error::DimensionMismatch {
                        left: center.len(),
                        right: n,
                    });
                }
                Ok(Arc::new(crate::fields::KernelForm::single(
                    center,
                    crate::exterior::Covector::scalar(n, 1.0),
                    crate::fields::KernelTag::D,
                )?))
            }
        }
    }
}

/// A point-source holomorphic pair: pole position and weight covector given
/// as a single increasing multi-index with a coefficient.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub center: Vec<f64>,
    pub xi_entries: Vec<usize>,
    pub xi_coeff: f64,
}

impl PairSpec {
    pub fn xi(&self, n: usize) -> Result<crate::exterior::Covector> {
        Ok(crate::exterior::Covector::basis(n, &self.xi_entries)?.scaled(self.xi_coeff))
    }

    pub fn build(&self, n: usize) -> Result<crate::fields::HolomorphicPair> {
        if self.center.len() != n {
            return Err(Error::DimensionMismatch {
                left: self.center.len(),
                right: n,
            });
        }
        crate::potentials::point_pair(&self.center, &self.xi(n)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleSpec {
    pub center: Vec<f64>,
    pub radius: f64,
    pub axis: Vec<f64>,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ReproductionSide {
    Interior,
    Exterior,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "mode", rename_all = "snake_case")]
pub enum CaseConfig {
    /// Reproduce a harmonic field from its boundary trace and compare with
    /// direct evaluation at the given points.
    Reproduce {
        name: String,
        dimension: usize,
        field: FieldSpec,
        surface: SurfaceSpec,
        side: ReproductionSide,
        points: Vec<Vec<f64>>,
        tolerance: f64,
    },
    /// First duality pairing against a point pair, checked against the
    /// point-measure identity (and contour independence when `surface_b`
    /// is present).
    Pair1 {
        name: String,
        dimension: usize,
        field: FieldSpec,
        pair: PairSpec,
        surface: SurfaceSpec,
        #[serde(default)]
        surface_b: Option<SurfaceSpec>,
        tolerance: f64,
    },
    /// Second duality pairing against a point pair.
    Pair2 {
        name: String,
        dimension: usize,
        pair: PairSpec,
        field: FieldSpec,
        surface: SurfaceSpec,
        tolerance: f64,
    },
    /// Exterior decomposition residuals at the given points.
    Decompose {
        name: String,
        dimension: usize,
        field: FieldSpec,
        surface: SurfaceSpec,
        points: Vec<Vec<f64>>,
        tolerance: f64,
    },
    /// Period identity for a closed curve (n = 3).
    Periods {
        name: String,
        pair: PairSpec,
        cycle: CycleSpec,
        surface: SurfaceSpec,
        tolerance: f64,
    },
    /// Built-in verification suites by name.
    Identities { name: String, suites: Vec<String> },
}

impl CaseConfig {
    pub fn name(&self) -> &str {
        match self {
            CaseConfig::Reproduce { name, .. } => name,
            CaseConfig::Pair1 { name, .. } => name,
            CaseConfig::Pair2 { name, .. } => name,
            CaseConfig::Decompose { name, .. } => name,
            CaseConfig::Periods { name, .. } => name,
            CaseConfig::Identities { name, .. } => name,
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            CaseConfig::Reproduce { .. } => "reproduce",
            CaseConfig::Pair1 { .. } => "pair1",
            CaseConfig::Pair2 { .. } => "pair2",
            CaseConfig::Decompose { .. } => "decompose",
            CaseConfig::Periods { .. } => "periods",
            CaseConfig::Identities { .. } => "identities",
        }
    }

    fn check_dimension(dimension: usize) -> Result<()> {
        if !(dimension == 3 || dimension == 4) {
            return Err(Error::UnsupportedDimension {
                n: dimension,
                reason: "quadrature-backed cases support n in {3, 4}",
            });
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CaseConfig::Reproduce {
                dimension,
                surface,
                points,
                ..
            } => {
                Self::check_dimension(*dimension)?;
                surface.validate(*dimension)?;
                for p in points {
                    if p.len() != *dimension {
                        return Err(Error::DimensionMismatch {
                            left: p.len(),
                            right: *dimension,
                        });
                    }
                }
                Ok(())
            }
            CaseConfig::Pair1 {
                dimension,
                surface,
                surface_b,
                ..
            } => {
                Self::check_dimension(*dimension)?;
                surface.validate(*dimension)?;
                if let Some(sb) = surface_b {
                    sb.validate(*dimension)?;
                }
                Ok(())
            }
            CaseConfig::Pair2 {
                dimension, surface, ..
            } => {
                Self::check_dimension(*dimension)?;
                surface.validate(*dimension)
            }
            CaseConfig::Decompose {
                dimension,
                surface,
                points,
                ..
            } => {
                Self::check_dimension(*dimension)?;
                surface.validate(*dimension)?;
                for p in points {
                    if p.len() != *dimension {
                        return Err(Error::DimensionMismatch {
                            left: p.len(),
                            right: *dimension,
                        });
                    }
                }
                Ok(())
            }
            CaseConfig::Periods { surface, .. } => surface.validate(3),
            CaseConfig::Identities { suites, .. } => {
                let known: Vec<&str> = crate::harness::suites::list_suites()
                    .iter()
                    .map(|s| s.name)
                    .collect();
                for s in suites {
                    if !known.contains(&s.as_str()) {
                        return Err(Error::InvalidArgument(format!("unknown suite '{s}'")));
                    }
                }
                Ok(())
            }
        }
    }
}
