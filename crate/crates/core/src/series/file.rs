//! JSON function files.
//!
//! ```json
//! {"kind":"qpoly","coeffs":[[0,1,0,0],[0,0,1,0]],"trust_radius":1.0}
//! {"kind":"rpoly","coeffs":[1.0,0.0,1.0],"trust_radius":1.0}
//! ```
//!
//! Coefficients are listed from `a₀` upwards.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::{QJet, RJet, DEFAULT_TRUST_RADIUS};

fn default_trust_radius() -> f64 {
    DEFAULT_TRUST_RADIUS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionFile {
    Qpoly {
        coeffs: Vec<Quaternion>,
        #[serde(default = "default_trust_radius")]
        trust_radius: f64,
    },
    Rpoly {
        coeffs: Vec<f64>,
        #[serde(default = "default_trust_radius")]
        trust_radius: f64,
    },
}

impl FunctionFile {
    pub fn from_qjet(f: &QJet) -> Self {
        FunctionFile::Qpoly { coeffs: f.coeffs().to_vec(), trust_radius: f.trust_radius }
    }

    pub fn from_rjet(f: &RJet) -> Self {
        FunctionFile::Rpoly { coeffs: f.coeffs().to_vec(), trust_radius: f.trust_radius }
    }

    pub fn trust_radius(&self) -> f64 {
        match self {
            FunctionFile::Qpoly { trust_radius, .. } | FunctionFile::Rpoly { trust_radius, .. } => {
                *trust_radius
            }
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, FunctionFile::Rpoly { .. })
    }

    /// Number of listed coefficients minus one.
    pub fn listed_degree(&self) -> usize {
        match self {
            FunctionFile::Qpoly { coeffs, .. } => coeffs.len().saturating_sub(1),
            FunctionFile::Rpoly { coeffs, .. } => coeffs.len().saturating_sub(1),
        }
    }

    fn check(&self) -> Result<()> {
        let r = self.trust_radius();
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Parse(format!("trust_radius must be positive, got {r}")));
        }
        let finite = match self {
            FunctionFile::Qpoly { coeffs, .. } => coeffs.iter().all(|q| q.is_finite()),
            FunctionFile::Rpoly { coeffs, .. } => coeffs.iter().all(|c| c.is_finite()),
        };
        if !finite {
            return Err(Error::Parse("non-finite coefficient".into()));
        }
        Ok(())
    }

    /// Quaternionic jet of the given order; an `rpoly` is embedded.
    pub fn to_qjet(&self, order: usize) -> QJet {
        match self {
            FunctionFile::Qpoly { coeffs, trust_radius } => {
                QJet::new(coeffs.clone(), order).with_trust_radius(*trust_radius)
            }
            FunctionFile::Rpoly { .. } => self.to_rjet(order).unwrap().to_qjet(),
        }
    }

    /// Real jet of the given order; a `qpoly` qualifies only if its coefficients are real.
    pub fn to_rjet(&self, order: usize) -> Result<RJet> {
        match self {
            FunctionFile::Rpoly { coeffs, trust_radius } => {
                Ok(RJet::new(coeffs.clone(), order).with_trust_radius(*trust_radius))
            }
            FunctionFile::Qpoly { coeffs, trust_radius } => {
                if coeffs.iter().any(|q| q.vector_norm() != 0.0) {
                    return Err(Error::Parse("expected a real-coefficient function".into()));
                }
                Ok(RJet::new(coeffs.iter().map(|q| q.w).collect(), order)
                    .with_trust_radius(*trust_radius))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: FunctionFile = serde_json::from_str(text)?;
        f.check()?;
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        FunctionFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function files always serialize")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
