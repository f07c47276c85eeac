//! File formats: JSON for models, error models, plans and reports, CSV for
//! measurement campaigns. All writes go through a temp-file rename so a
//! crash never leaves a half-written artifact behind.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::design::CalibrationPlan;
use crate::encoder::{CampaignLog, StepLog};
use crate::error::CalError;
use crate::model::RobotModel;
use crate::params::ErrorModel;

/// Write `bytes` to `path` atomically: the data lands under a temporary name
/// in the same directory and is renamed into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CalError> {
    let ctx = || path.display().to_string();
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| CalError::format("write", format!("{} has no file name", ctx())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(format!(".tmp-{}", std::process::id()));
    let tmp = match dir {
        Some(d) => d.join(&tmp_name),
        None => tmp_name.into(),
    };
    fs::write(&tmp, bytes).map_err(|e| CalError::io(ctx(), e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CalError::io(ctx(), e)
    })
}

/// Serialize `value` as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, CalError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CalError::format("json serialize", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Write any serializable value as pretty JSON, atomically.
pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CalError> {
    atomic_write(path, to_json_string(value)?.as_bytes())
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CalError> {
    let text = fs::read_to_string(path).map_err(|e| CalError::io(path.display().to_string(), e))?;
    serde_json::from_str(&text)
        .map_err(|e| CalError::format(path.display().to_string(), e.to_string()))
}

/// Load a robot model and check it is internally consistent.
pub fn load_model(path: &Path) -> Result<RobotModel, CalError> {
    let model: RobotModel = load_json(path)?;
    model.validate()?;
    Ok(model)
}

pub fn save_model(path: &Path, model: &RobotModel) -> Result<(), CalError> {
    save_json(path, model)
}

/// Load an error model. Addressing is only checkable against a robot model,
/// so call `ErrorModel::validate` with one afterwards.
pub fn load_error_model(path: &Path) -> Result<ErrorModel, CalError> {
    load_json(path)
}

pub fn save_error_model(path: &Path, errors: &ErrorModel) -> Result<(), CalError> {
    save_json(path, errors)
}

pub fn load_plan(path: &Path) -> Result<CalibrationPlan, CalError> {
    load_json(path)
}

pub fn save_plan(path: &Path, plan: &CalibrationPlan) -> Result<(), CalError> {
    save_json(path, plan)
}

fn csv_header(joints: usize) -> String {
    let mut h = String::from("step,param");
    for j in 1..=joints {
        h.push_str(&format!(",theta{j}"));
    }
    h.push_str(",measured_mm");
    h
}

/// Render a campaign as CSV: one row per measured configuration, joint values
/// in degrees. Float fields use the shortest exact decimal form, so the text
/// is deterministic and parses back bit-identically.
pub fn campaign_to_csv(log: &CampaignLog) -> Result<String, CalError> {
    let joints = log
        .steps
        .first()
        .and_then(|s| s.points_deg.first())
        .map(|p| p.len())
        .ok_or_else(|| CalError::format("campaign csv", "log holds no measurements"))?;
    let mut out = csv_header(joints);
    out.push('\n');
    for step in &log.steps {
        if step.points_deg.len() != step.measured_mm.len() {
            return Err(CalError::format(
                "campaign csv",
                format!(
                    "step {} has {} points but {} measurements",
                    step.step,
                    step.points_deg.len(),
                    step.measured_mm.len()
                ),
            ));
        }
        for (point, measured) in step.points_deg.iter().zip(&step.measured_mm) {
            if point.len() != joints {
                return Err(CalError::format(
                    "campaign csv",
                    format!("step {} mixes joint counts", step.step),
                ));
            }
            out.push_str(&format!("{},{}", step.step, step.param));
            for v in point {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(&format!(",{measured}\n"));
        }
    }
    Ok(out)
}

/// Parse campaign CSV back into step logs. Consecutive rows with the same
/// step number and parameter name form one step.
pub fn campaign_from_csv(text: &str) -> Result<Vec<StepLog>, CalError> {
    let ctx = "campaign csv";
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CalError::format(ctx, "empty file"))?;
    let cols: Vec<&str> = header.trim_end().split(',').collect();
    if cols.len() < 4 || cols[0] != "step" || cols[1] != "param" || *cols.last().unwrap() != "measured_mm" {
        return Err(CalError::format(ctx, format!("unexpected header: {header}")));
    }
    let joints = cols.len() - 3;
    for (j, col) in cols[2..2 + joints].iter().enumerate() {
        if *col != format!("theta{}", j + 1) {
            return Err(CalError::format(ctx, format!("unexpected header column {col}")));
        }
    }

    let mut steps: Vec<StepLog> = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != joints + 3 {
            return Err(CalError::format(
                ctx,
                format!("line {}: expected {} fields, got {}", lineno + 1, joints + 3, fields.len()),
            ));
        }
        let parse = |s: &str, what: &str| -> Result<f64, CalError> {
            s.parse::<f64>().map_err(|_| {
                CalError::format(ctx, format!("line {}: bad {what} value {s:?}", lineno + 1))
            })
        };
        let step = fields[0].parse::<usize>().map_err(|_| {
            CalError::format(ctx, format!("line {}: bad step {:?}", lineno + 1, fields[0]))
        })?;
        let param = fields[1].to_string();
        let mut point = Vec::with_capacity(joints);
        for (j, s) in fields[2..2 + joints].iter().enumerate() {
            point.push(parse(s, &format!("theta{}", j + 1))?);
        }
        let measured = parse(fields[joints + 2], "measured_mm")?;

        match steps.last_mut() {
            Some(last) if last.step == step && last.param == param => {
                last.points_deg.push(point);
                last.measured_mm.push(measured);
            }
            _ => steps.push(StepLog {
                step,
                param,
                points_deg: vec![point],
                measured_mm: vec![measured],
                anchor_recheck_mm: 0.0,
            }),
        }
    }
    if steps.is_empty() {
        return Err(CalError::format(ctx, "no measurement rows"));
    }
    Ok(steps)
}

pub fn write_campaign_csv(path: &Path, log: &CampaignLog) -> Result<(), CalError> {
    atomic_write(path, campaign_to_csv(log)?.as_bytes())
}

pub fn read_campaign_csv(path: &Path) -> Result<Vec<StepLog>, CalError> {
    let text = fs::read_to_string(path).map_err(|e| CalError::io(path.display().to_string(), e))?;
    campaign_from_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::robots::{viper_error_model, viper_s650};

    fn sample_log() -> CampaignLog {
        CampaignLog {
            seed: 7,
            sigma_mm: 0.02,
            resolution_mm: 0.025488,
            steps: vec![
                StepLog {
                    step: 1,
                    param: "dtheta6".into(),
                    points_deg: vec![vec![0.0, -90.0, 210.0, -90.0, 0.0, -35.5], vec![
                        0.0, -90.0, 210.0, -90.0, 10.25, -90.0,
                    ]],
                    measured_mm: vec![61.987456, 13.25],
                    anchor_recheck_mm: 0.0,
                },
                StepLog {
                    step: 2,
                    param: "dd6".into(),
                    points_deg: vec![vec![0.0, -90.0, 210.0, -90.0, 55.0, -90.0]],
                    measured_mm: vec![73.75],
                    anchor_recheck_mm: 0.0,
                },
            ],
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let log = sample_log();
        let text = campaign_to_csv(&log).unwrap();
        assert!(text.starts_with(
            "step,param,theta1,theta2,theta3,theta4,theta5,theta6,measured_mm\n"
        ));
        assert!(text.contains("1,dtheta6,0,-90,210,-90,0,-35.5,61.987456"));
        let steps = campaign_from_csv(&text).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].points_deg, log.steps[0].points_deg);
        assert_eq!(steps[0].measured_mm, log.steps[0].measured_mm);
        assert_eq!(steps[1].param, "dd6");
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(campaign_from_csv("").is_err());
        assert!(campaign_from_csv("nonsense,header\n").is_err());
        let good_header = "step,param,theta1,theta2,measured_mm\n";
        assert!(campaign_from_csv(good_header).is_err(), "no data rows");
        let short_row = format!("{good_header}1,dtheta1,3.0,55.0\n");
        assert!(campaign_from_csv(&short_row).is_err());
        let bad_float = format!("{good_header}1,dtheta1,3.0,x,55.0\n");
        assert!(campaign_from_csv(&bad_float).is_err());
    }

    #[test]
    fn json_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let model = viper_s650();
        let errors = viper_error_model();

        let mp = dir.path().join("model.json");
        save_model(&mp, &model).unwrap();
        assert_eq!(load_model(&mp).unwrap(), model);

        let ep = dir.path().join("errors.json");
        save_error_model(&ep, &errors).unwrap();
        assert_eq!(load_error_model(&ep).unwrap(), errors);
    }

    #[test]
    fn optional_model_fields_default() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let text = r#"{
            "name": "planar",
            "rows": [
                {"alpha_deg": 0.0, "a_mm": 0.0, "theta_offset_deg": 0.0, "d_mm": 0.0},
                {"alpha_deg": 0.0, "a_mm": 100.0, "theta_offset_deg": 0.0, "d_mm": 0.0}
            ],
            "joint_limits_deg": [[-180.0, 180.0], [-180.0, 180.0]]
        }"#;
        std::fs::write(&path, text).unwrap();
        let model = load_model(&path).unwrap();
        assert_eq!(model.tool_mm, [0.0, 0.0, 0.0]);
        assert!(model.continuity_protected_rows.is_empty());
    }

    #[test]
    fn invalid_model_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\"name\": \"x\", \"rows\": [], \"joint_limits_deg\": []}")
            .unwrap();
        assert!(load_model(&path).is_err());
    }

    #[test]
    fn atomic_write_replaces_and_cleans_up() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        atomic_write(&path, b"first").unwrap();
        atomic_write(&path, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().contains("tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }
}
