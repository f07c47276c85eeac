//! Regenerates the JSON fixtures under `data/` from the built-in
//! definitions. Run after changing the built-ins:
//!
//! ```text
//! cargo run -p wirecal --example write_fixtures
//! ```

use std::path::Path;

use wirecal::{save_error_model, save_model, save_plan, viper_error_model, viper_plan, viper_s650};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    std::fs::create_dir_all(&dir).expect("create data dir");

    save_model(&dir.join("viper_s650.json"), &viper_s650()).expect("write model");
    save_error_model(&dir.join("viper_s650_errors.json"), &viper_error_model())
        .expect("write error model");
    save_plan(&dir.join("viper_s650_plan.json"), &viper_plan()).expect("write plan");

    println!("wrote viper_s650.json, viper_s650_errors.json, viper_s650_plan.json");
}
