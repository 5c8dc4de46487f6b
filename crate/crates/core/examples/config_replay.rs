//! Drive a subcommand from a `RunConfig`, then re-run it from the
//! `config.json` it echoed and confirm the data files are identical.
//!
//! ```bash
//! cargo run --release -p coupled-kg --example config_replay [OUT_DIR]
//! ```

use std::path::PathBuf;

use coupled_kg::io::commands::load_echoed_config;
use coupled_kg::io::{run, Command, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("coupled-kg-replay"));

    let mut cfg = RunConfig::defaults(Command::Simulate);
    cfg.u0 = 0.1;
    cfg.w0 = 0.9;
    cfg.plot = true;
    cfg.out = root.join("first");
    let first = run(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&first.summary)?);

    let mut replay = load_echoed_config(&cfg.out)?;
    replay.out = root.join("second");
    let second = run(&replay)?;

    for (a, b) in first.files.iter().zip(&second.files) {
        if a.file_name() == Some("config.json".as_ref()) {
            continue;
        }
        let same = std::fs::read(a)? == std::fs::read(b)?;
        println!(
            "{:<24} identical: {same}",
            a.file_name().unwrap().to_string_lossy()
        );
    }
    Ok(())
}
