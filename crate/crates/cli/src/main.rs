//! Batch pipeline around the calibration library: sensitivity tables,
//! plan design, virtual campaigns, sequential identification and the two
//! validation procedures, all driven from one seed for reproducibility.

mod report;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nalgebra::Vector3;

use wirecal::robots::{
    viper_benchmark_offsets, viper_error_model, viper_plan, viper_s650, viper_search_options,
    VIPER_ANCHOR_DEG,
};
use wirecal::{
    atomic_write, branch_consistency, design_plan, fit_plane, run_calibration, run_campaign,
    simulate_probe_grid, validate_plan, CalError, CalibrationPlan, CampaignLog, EncoderSpec,
    ErrorModel, IdentificationOrder, IdentifyOptions, PlateSpec, RobotModel, SearchOptions,
};

use report::{
    histogram_csv, json_with_meta, meta_value, sha256_hex, summary_text, BranchValidation,
    PlateSide, PlateValidation, SummaryInputs,
};

/// External reference point for the branch-consistency check, base frame mm.
const VALIDATION_ANCHOR_MM: [f64; 3] = [800.0, 300.0, 200.0];
const BRANCH_POSES: usize = 50;
/// Minimum acceptable improvement of the two validation statistics.
const BRANCH_REDUCTION_MIN_PERCENT: f64 = 80.0;
const PLATE_REDUCTION_MIN_PERCENT: f64 = 70.0;

#[derive(Parser)]
#[command(
    name = "wirecal",
    version,
    about = "Kinematic calibration workbench around a single draw-wire encoder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the per-point sensitivity table of a plan as CSV
    PsiTable(PsiTableArgs),
    /// Run the pipeline: plan, campaign, identification, validations
    Calibrate(CalibrateArgs),
}

#[derive(Args)]
struct PsiTableArgs {
    /// Robot model JSON; defaults to the built-in Viper s650
    #[arg(long)]
    model: Option<PathBuf>,
    /// Error parameter set JSON; defaults to the built-in ten-parameter set
    #[arg(long)]
    errors: Option<PathBuf>,
    /// Calibration plan JSON; defaults to the built-in plan
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Robot model JSON; defaults to the built-in Viper s650
    #[arg(long)]
    model: Option<PathBuf>,
    /// Error parameter set JSON; defaults to the built-in ten-parameter set
    #[arg(long)]
    errors: Option<PathBuf>,
    /// Calibration plan JSON; defaults to the built-in plan
    #[arg(long, conflicts_with = "design")]
    plan: Option<PathBuf>,
    /// Search for a fresh plan instead of loading one, and save it
    #[arg(long)]
    design: bool,
    /// Anchor posture for --design, comma-separated degrees
    #[arg(long, requires = "design")]
    anchor: Option<String>,
    /// True offsets driving the virtual robot: "zero", "table4" for the
    /// built-in benchmark offset set, or a JSON file with one value per
    /// parameter
    #[arg(long, conflicts_with = "log")]
    truth: Option<String>,
    /// Recorded campaign CSV; replaces the virtual campaign, and skips the
    /// validations since the true offsets are unknown
    #[arg(long)]
    log: Option<PathBuf>,
    /// Encoder noise, one standard deviation in millimetres
    #[arg(long, default_value_t = 0.02)]
    sigma: f64,
    /// Encoder quantization step in millimetres
    #[arg(long, default_value_t = 0.025488)]
    resolution: f64,
    /// Seed for every random draw in the run
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra identification passes over the whole sequence
    #[arg(long, default_value_t = 0, value_name = "N")]
    refine: usize,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

/// A pipeline failure: which stage, what happened, which exit code.
struct StageError {
    stage: &'static str,
    message: String,
    code: u8,
}

/// Config and input problems exit 2; numerical and threshold failures exit 3.
fn code_for(err: &CalError) -> u8 {
    match err {
        CalError::DegenerateWire { .. }
        | CalError::WireRange { .. }
        | CalError::OrderingFailed { .. }
        | CalError::NonFinite { .. }
        | CalError::RankDeficient => 3,
        _ => 2,
    }
}

fn stage<T>(name: &'static str, r: Result<T, CalError>) -> Result<T, StageError> {
    r.map_err(|e| StageError {
        stage: name,
        message: e.to_string(),
        code: code_for(&e),
    })
}

fn config_error(stage: &'static str, message: impl Into<String>) -> StageError {
    StageError {
        stage,
        message: message.into(),
        code: 2,
    }
}

/// Output directory that tracks what it wrote, so a failing run can sweep
/// its partial artifacts into `failed/`.
struct OutDir {
    root: PathBuf,
    written: Vec<(String, String)>,
}

impl OutDir {
    fn create(root: &Path) -> Result<Self, StageError> {
        fs::create_dir_all(root).map_err(|e| {
            config_error("output", format!("cannot create {}: {e}", root.display()))
        })?;
        Ok(OutDir {
            root: root.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), StageError> {
        stage("output", atomic_write(&self.root.join(name), bytes))?;
        self.written.push((name.to_string(), sha256_hex(bytes)));
        Ok(())
    }

    /// Move everything written so far under `failed/`.
    fn quarantine(&self) {
        let failed = self.root.join("failed");
        if fs::create_dir_all(&failed).is_err() {
            return;
        }
        for (name, _) in &self.written {
            let _ = fs::rename(self.root.join(name), failed.join(name));
        }
    }

    fn digests(&self) -> BTreeMap<String, String> {
        self.written.iter().cloned().collect()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::PsiTable(args) => run_psi_table(&args),
        Command::Calibrate(args) => run_calibrate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("stage {} failed: {}", f.stage, f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Loaded-or-built-in inputs plus their content digests.
struct Inputs {
    model: RobotModel,
    errors: ErrorModel,
    builtin_model: bool,
    digests: BTreeMap<String, String>,
}

fn digest_of<T: serde::Serialize>(value: &T) -> Result<String, CalError> {
    Ok(sha256_hex(wirecal::io::to_json_string(value)?.as_bytes()))
}

fn load_inputs(model: &Option<PathBuf>, errors: &Option<PathBuf>) -> Result<Inputs, StageError> {
    let s = "load inputs";
    let mut digests = BTreeMap::new();
    let model_value = match model {
        Some(p) => stage(s, wirecal::load_model(p))?,
        None => viper_s650(),
    };
    digests.insert("model".to_string(), stage(s, digest_of(&model_value))?);
    let errors_value = match errors {
        Some(p) => stage(s, wirecal::load_error_model(p))?,
        None => viper_error_model(),
    };
    stage(s, errors_value.validate(&model_value))?;
    digests.insert("errors".to_string(), stage(s, digest_of(&errors_value))?);
    Ok(Inputs {
        model: model_value,
        errors: errors_value,
        builtin_model: model.is_none(),
        digests,
    })
}

fn run_psi_table(args: &PsiTableArgs) -> Result<(), StageError> {
    let s = "psi table";
    let mut inputs = load_inputs(&args.model, &args.errors)?;
    let plan = match &args.plan {
        Some(p) => stage(s, wirecal::load_plan(p))?,
        None if inputs.builtin_model && args.errors.is_none() => viper_plan(),
        None => {
            return Err(config_error(s, "custom model or errors need --plan"));
        }
    };
    inputs
        .digests
        .insert("plan".to_string(), stage(s, digest_of(&plan))?);

    let order = stage(s, IdentificationOrder::from_names(&inputs.errors, &plan.order))?;
    let anchor = plan.anchor_deg.clone();

    let mut csv = String::from("step,param");
    for j in 1..=inputs.model.joint_count() {
        let _ = write!(csv, ",theta{j}");
    }
    for name in order.names() {
        let _ = write!(csv, ",psi_{name}");
    }
    csv.push('\n');
    for set in &plan.sets {
        for point in &set.points_deg {
            let row = stage(
                s,
                wirecal::sensitivity_row(&inputs.model, point, &anchor, &inputs.errors),
            )?;
            let psi = order.permute(&row.values);
            let _ = write!(csv, "{},{}", set.step, set.param);
            for v in point {
                let _ = write!(csv, ",{v}");
            }
            for v in &psi {
                let _ = write!(csv, ",{v}");
            }
            csv.push('\n');
        }
    }

    let mut out = OutDir::create(&args.out)?;
    out.write("psi_table.csv", csv.as_bytes())?;
    let meta = meta_value(None, &inputs.digests);
    let mut meta_doc = serde_json::Map::new();
    meta_doc.insert("meta".into(), meta);
    meta_doc.insert(
        "outputs".into(),
        serde_json::to_value(out.digests()).expect("digest map serializes"),
    );
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(meta_doc))
        .expect("meta serializes");
    text.push('\n');
    out.write("meta.json", text.as_bytes())?;
    Ok(())
}

enum TruthSpec {
    Zero,
    Table4,
    File(PathBuf),
}

fn truth_values(spec: &TruthSpec, errors: &ErrorModel) -> Result<Vec<f64>, StageError> {
    let s = "truth";
    match spec {
        TruthSpec::Zero => Ok(vec![0.0; errors.len()]),
        TruthSpec::Table4 => {
            let values = viper_benchmark_offsets();
            if values.len() != errors.len() || *errors != viper_error_model() {
                return Err(config_error(
                    s,
                    "the built-in benchmark offsets go with the built-in parameter set",
                ));
            }
            Ok(values)
        }
        TruthSpec::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| config_error(s, format!("{}: {e}", path.display())))?;
            let values: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| config_error(s, format!("{}: {e}", path.display())))?;
            if values.len() != errors.len() {
                return Err(config_error(
                    s,
                    format!(
                        "{} holds {} values, parameter set has {}",
                        path.display(),
                        values.len(),
                        errors.len()
                    ),
                ));
            }
            Ok(values)
        }
    }
}

fn parse_anchor(text: &str, joints: usize) -> Result<Vec<f64>, StageError> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if v.len() == joints => Ok(v),
        Ok(v) => Err(config_error(
            "plan",
            format!("--anchor has {} values, model has {joints} joints", v.len()),
        )),
        Err(_) => Err(config_error("plan", format!("--anchor is not numeric: {text}"))),
    }
}

fn run_calibrate(args: &CalibrateArgs) -> Result<(), StageError> {
    let mut out = OutDir::create(&args.out)?;
    match calibrate_pipeline(args, &mut out) {
        Ok(()) => Ok(()),
        Err(e) => {
            out.quarantine();
            Err(e)
        }
    }
}

fn calibrate_pipeline(args: &CalibrateArgs, out: &mut OutDir) -> Result<(), StageError> {
    let mut inputs = load_inputs(&args.model, &args.errors)?;

    // Exactly one source of measurements.
    let truth_spec = match (&args.truth, &args.log) {
        (Some(t), None) => Some(match t.as_str() {
            "zero" => TruthSpec::Zero,
            "table4" => TruthSpec::Table4,
            other => TruthSpec::File(PathBuf::from(other)),
        }),
        (None, Some(_)) => None,
        (None, None) => {
            return Err(config_error(
                "load inputs",
                "pass --truth to simulate a campaign or --log to ingest one",
            ));
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --truth with --log"),
    };

    // Plan: load, design, or fall back to the built-in.
    let search_options = if inputs.builtin_model {
        viper_search_options()
    } else {
        SearchOptions::default()
    };
    let plan: CalibrationPlan = if let Some(path) = &args.plan {
        stage("plan", wirecal::load_plan(path))?
    } else if args.design {
        let anchor_deg = match &args.anchor {
            Some(text) => parse_anchor(text, inputs.model.joint_count())?,
            None if inputs.builtin_model => VIPER_ANCHOR_DEG.to_vec(),
            None => {
                return Err(config_error("plan", "--design with a custom model needs --anchor"));
            }
        };
        stage(
            "plan design",
            design_plan(&inputs.model, &anchor_deg, &inputs.errors, &search_options),
        )?
    } else if inputs.builtin_model && args.errors.is_none() {
        viper_plan()
    } else {
        return Err(config_error("plan", "custom model or errors need --plan or --design"));
    };
    inputs
        .digests
        .insert("plan".to_string(), stage("plan", digest_of(&plan))?);

    let check = stage(
        "plan validation",
        validate_plan(&inputs.model, &inputs.errors, &plan, &search_options),
    )?;
    for w in &check.warnings {
        eprintln!("plan warning: {w}");
    }
    if !check.is_ok() {
        return Err(config_error("plan validation", check.errors.join("; ")));
    }

    let meta_inputs_base = inputs.digests.clone();
    let meta = |digests: &BTreeMap<String, String>| meta_value(Some(args.seed), digests);
    if args.design {
        let text = stage(
            "plan design",
            json_with_meta(&plan, &meta(&meta_inputs_base)),
        )?;
        out.write("plan.json", text.as_bytes())?;
    }

    // Measurements: virtual campaign or recorded log.
    let spec = EncoderSpec {
        sigma_mm: args.sigma,
        resolution_mm: args.resolution,
        ..EncoderSpec::default()
    };
    let (log, truth) = match truth_spec {
        Some(ts) => {
            let truth = truth_values(&ts, &inputs.errors)?;
            inputs
                .digests
                .insert("truth".to_string(), stage("truth", digest_of(&truth))?);
            let log = stage(
                "campaign",
                run_campaign(&inputs.model, &inputs.errors, &truth, &plan, &spec, args.seed),
            )?;
            let csv = stage("campaign", wirecal::io::campaign_to_csv(&log))?;
            out.write("campaign.csv", csv.as_bytes())?;
            (log, Some(truth))
        }
        None => {
            let path = args.log.as_ref().expect("checked above");
            let bytes = fs::read(path)
                .map_err(|e| config_error("campaign", format!("{}: {e}", path.display())))?;
            inputs
                .digests
                .insert("log".to_string(), sha256_hex(&bytes));
            let text = String::from_utf8(bytes)
                .map_err(|_| config_error("campaign", format!("{} is not UTF-8", path.display())))?;
            let steps = stage("campaign", wirecal::io::campaign_from_csv(&text))?;
            let log = CampaignLog {
                seed: args.seed,
                sigma_mm: args.sigma,
                resolution_mm: args.resolution,
                steps,
            };
            (log, None)
        }
    };

    // Sequential identification.
    let identify_options = IdentifyOptions {
        refine_passes: args.refine,
        ..IdentifyOptions::default()
    };
    let report = stage(
        "identification",
        run_calibration(&inputs.model, &inputs.errors, &plan, &log, &identify_options),
    )?;
    let meta_now = meta(&inputs.digests);
    out.write(
        "report.json",
        stage("identification", json_with_meta(&report, &meta_now))?.as_bytes(),
    )?;
    let compensated = stage(
        "identification",
        inputs.errors.apply(&inputs.model, &report.values),
    )?;
    out.write(
        "compensated_model.json",
        stage("identification", json_with_meta(&compensated, &meta_now))?.as_bytes(),
    )?;

    // Validations need the true model, so a recorded log skips them.
    let mut branch_validation = None;
    let mut plate_validation = None;
    if let Some(truth) = &truth {
        let actual = stage("validation", inputs.errors.apply(&inputs.model, truth))?;
        let anchor = Vector3::from(VALIDATION_ANCHOR_MM);

        let before = stage(
            "validation",
            branch_consistency(&inputs.model, &actual, &anchor, BRANCH_POSES, args.seed),
        )?;
        let after = stage(
            "validation",
            branch_consistency(&compensated, &actual, &anchor, BRANCH_POSES, args.seed),
        )?;
        let branches =
            BranchValidation::new(BRANCH_POSES, before, after, BRANCH_REDUCTION_MIN_PERCENT);
        out.write(
            "validation_branches.json",
            stage("validation", json_with_meta(&branches, &meta_now))?.as_bytes(),
        )?;
        out.write(
            "branch_spread_hist.csv",
            histogram_csv(0.1, 1, &branches.before.spreads_mm, &branches.after.spreads_mm)
                .as_bytes(),
        )?;

        let plate = PlateSpec::default();
        let grid_before = stage(
            "validation",
            simulate_probe_grid(&inputs.model, &actual, &plate),
        )?;
        let fit_before = stage("validation", fit_plane(&grid_before.points_mm))?;
        let grid_after = stage(
            "validation",
            simulate_probe_grid(&compensated, &actual, &plate),
        )?;
        let fit_after = stage("validation", fit_plane(&grid_after.points_mm))?;
        let plates = PlateValidation::new(
            plate,
            PlateSide::new(grid_before, fit_before),
            PlateSide::new(grid_after, fit_after),
            PLATE_REDUCTION_MIN_PERCENT,
        );
        out.write(
            "validation_plate.json",
            stage("validation", json_with_meta(&plates, &meta_now))?.as_bytes(),
        )?;
        out.write(
            "plate_residual_hist.csv",
            histogram_csv(0.01, 2, &plates.before.residuals_mm, &plates.after.residuals_mm)
                .as_bytes(),
        )?;

        branch_validation = Some(branches);
        plate_validation = Some(plates);
    }

    // Human-readable summary plus the digest manifest.
    let units: Vec<&'static str> = inputs.errors.params.iter().map(|p| p.kind.unit()).collect();
    let summary = summary_text(&SummaryInputs {
        seed: args.seed,
        sigma_mm: args.sigma,
        resolution_mm: args.resolution,
        report: &report,
        truth: truth.as_deref(),
        units: &units,
        branch: branch_validation.as_ref(),
        plate: plate_validation.as_ref(),
        validations_skipped: args
            .log
            .is_some()
            .then_some("true offsets unknown for a recorded log"),
    });
    out.write("summary.txt", summary.as_bytes())?;

    let mut manifest = serde_json::Map::new();
    manifest.insert("meta".into(), meta(&inputs.digests));
    manifest.insert(
        "outputs".into(),
        serde_json::to_value(out.digests()).expect("digest map serializes"),
    );
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(manifest))
        .expect("manifest serializes");
    text.push('\n');
    out.write("meta.json", text.as_bytes())?;

    let branch_ok = branch_validation.as_ref().map_or(true, |b| b.passed);
    let plate_ok = plate_validation.as_ref().map_or(true, |p| p.passed);
    if !branch_ok || !plate_ok {
        let mut failing = Vec::new();
        if !branch_ok {
            failing.push("branch consistency");
        }
        if !plate_ok {
            failing.push("plate probing");
        }
        return Err(StageError {
            stage: "validation thresholds",
            message: format!("{} below the required reduction", failing.join(" and ")),
            code: 3,
        });
    }
    Ok(())
}
