use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::CalError;
use crate::model::RobotModel;

/// Which DH cell a small error offsets.
///
/// Serialized names follow the measurement-file convention: `dtheta`, `da`,
/// `dd`, `dalpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamKind {
    /// Joint zero-offset error, degrees. Joint `j` targets row `j`.
    #[serde(rename = "dtheta")]
    JointOffset,
    /// Link length error, millimetres. Link `a_j` lives in row `j + 1`.
    #[serde(rename = "da")]
    LinkLength,
    /// Link offset error along the joint axis, millimetres. Targets row `j`.
    #[serde(rename = "dd")]
    LinkOffset,
    /// Twist angle error, degrees. Twist `alpha_j` lives in row `j + 1`.
    #[serde(rename = "dalpha")]
    Twist,
}

impl ParamKind {
    pub fn is_angular(self) -> bool {
        matches!(self, ParamKind::JointOffset | ParamKind::Twist)
    }

    /// Unit string for reports.
    pub fn unit(self) -> &'static str {
        if self.is_angular() {
            "deg"
        } else {
            "mm"
        }
    }

    fn tag(self) -> &'static str {
        match self {
            ParamKind::JointOffset => "dtheta",
            ParamKind::LinkLength => "da",
            ParamKind::LinkOffset => "dd",
            ParamKind::Twist => "dalpha",
        }
    }
}

/// One identifiable error parameter: a DH cell plus the half-width of the
/// interval the identification searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorParam {
    pub kind: ParamKind,
    /// 1-based joint index.
    pub joint: usize,
    /// Search interval half-width, in the parameter's own unit.
    pub bound: f64,
}

impl ErrorParam {
    pub fn new(kind: ParamKind, joint: usize, bound: f64) -> Self {
        ErrorParam { kind, joint, bound }
    }

    /// 1-based DH row index this parameter writes to.
    pub fn target_row(&self) -> usize {
        match self.kind {
            ParamKind::JointOffset | ParamKind::LinkOffset => self.joint,
            ParamKind::LinkLength | ParamKind::Twist => self.joint + 1,
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.tag(), self.joint)
    }
}

impl fmt::Display for ErrorParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.tag(), self.joint)
    }
}

/// The ordered list of error parameters a calibration identifies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ErrorModel {
    pub params: Vec<ErrorParam>,
}

/// Parameter values paired positionally with an [`ErrorModel`].
pub type ErrorVector = Vec<f64>;

impl ErrorModel {
    pub fn new(params: Vec<ErrorParam>) -> Self {
        ErrorModel { params }
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn zeros(&self) -> ErrorVector {
        vec![0.0; self.params.len()]
    }

    pub fn names(&self) -> Vec<String> {
        self.params.iter().map(|p| p.name()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name() == name)
    }

    /// Check every parameter addresses a real, writable DH cell of `model`.
    pub fn validate(&self, model: &RobotModel) -> Result<(), CalError> {
        let n = model.joint_count();
        let mut seen = std::collections::HashSet::new();
        for p in &self.params {
            if p.joint == 0 || p.target_row() > n {
                return Err(CalError::BadAddress {
                    param: p.name(),
                    joints: n,
                });
            }
            if p.kind == ParamKind::Twist
                && model.continuity_protected_rows.contains(&p.target_row())
            {
                return Err(CalError::ProtectedTwist {
                    joint: p.joint,
                    row: p.target_row(),
                });
            }
            if !seen.insert((p.kind, p.joint)) {
                return Err(CalError::InvalidModel(format!(
                    "duplicate error parameter {}",
                    p.name()
                )));
            }
            if !(p.bound.is_finite() && p.bound > 0.0) {
                return Err(CalError::InvalidModel(format!(
                    "non-positive bound for {}",
                    p.name()
                )));
            }
        }
        Ok(())
    }

    /// Return a copy of `model` with the offsets in `values` folded into the
    /// DH table. Degrees add to degree cells, millimetres to length cells,
    /// exactly once each.
    pub fn apply(&self, model: &RobotModel, values: &[f64]) -> Result<RobotModel, CalError> {
        assert_eq!(
            values.len(),
            self.params.len(),
            "error vector length must match parameter count"
        );
        let n = model.joint_count();
        let mut out = model.clone();
        for (p, &v) in self.params.iter().zip(values) {
            if p.joint == 0 || p.target_row() > n {
                return Err(CalError::BadAddress {
                    param: p.name(),
                    joints: n,
                });
            }
            let row = &mut out.rows[p.target_row() - 1];
            match p.kind {
                ParamKind::JointOffset => row.theta_offset_deg += v,
                ParamKind::LinkOffset => row.d_mm += v,
                ParamKind::LinkLength => row.a_mm += v,
                ParamKind::Twist => {
                    if model.continuity_protected_rows.contains(&p.target_row()) {
                        return Err(CalError::ProtectedTwist {
                            joint: p.joint,
                            row: p.target_row(),
                        });
                    }
                    row.alpha_deg += v;
                }
            }
        }
        Ok(out)
    }
}
