//! One function per CLI subcommand. Each validates its config, writes the
//! config it ran with to `config.json` in the output directory, and then
//! writes its data files and figures there.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Command, Format, RunConfig};
use super::svg::{Layer, PlotKind, PlotSpec};
use super::table;
use crate::boundary::{compare_with_potential, map_boundary, scan_lines};
use crate::classify::{classify_one, sweep, Classification, Verdict};
use crate::dynamics::{integrate, State, Trajectory};
use crate::error::{Error, Result};
use crate::potential::{locate_minima, sample_grid};
use crate::stationary::stationary_points;

/// Files written by a command plus a machine-readable summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: Value,
}

struct Writer {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Writer {
    fn new(cfg: &RunConfig) -> Result<Self> {
        fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
        let mut w = Self {
            dir: cfg.out.clone(),
            files: Vec::new(),
        };
        w.text("config.json", &cfg.to_json())?;
        Ok(w)
    }

    fn text(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        self.files.push(path);
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value).expect("output types always serialize");
        text.push('\n');
        self.text(name, &text)
    }

    fn finish(self, summary: Value) -> Outcome {
        Outcome {
            files: self.files,
            summary,
        }
    }
}

/// Dispatch on `cfg.command`.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.command {
        Command::Simulate => cmd_simulate(cfg),
        Command::Classify => cmd_classify(cfg),
        Command::Stationary => cmd_stationary(cfg),
        Command::PotentialGrid => cmd_potential_grid(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Boundary => cmd_boundary(cfg),
    }
}

fn verdict_json(c: &Classification) -> Value {
    json!({
        "verdict": c.verdict,
        "escape_time": c.escape_time,
        "escape_quadrant": c.escape_quadrant,
        "max_amplitude": c.max_amplitude,
    })
}

fn orbit_plots(w: &mut Writer, tr: &Trajectory, cfg: &RunConfig) -> Result<()> {
    let pts: Vec<(f64, f64)> = tr.samples.iter().map(|s| (s.u, s.w)).collect();
    let title = format!("orbit from (u0, w0) = ({}, {})", cfg.u0, cfg.w0);
    let orbit = PlotSpec::new(PlotKind::PhasePlane, title, (-1.5, 1.5), (-1.5, 1.5))
        .layer(Layer::InvariantLines)
        .layer(Layer::Orbit {
            points: pts,
            color: "#444444".into(),
        });
    w.text("orbit.svg", &orbit.render())?;

    let t_end = tr.last().t.max(f64::MIN_POSITIVE);
    let amp = tr.max_amplitude.max(1.0) * 1.05;
    let series = PlotSpec::new(
        PlotKind::TimeSeries,
        "u(t), w(t)",
        (0.0, t_end),
        (-amp, amp),
    )
    .layer(Layer::Series {
        label: "u".into(),
        points: tr.samples.iter().map(|s| (s.t, s.u)).collect(),
        color: "#d62728".into(),
    })
    .layer(Layer::Series {
        label: "w".into(),
        points: tr.samples.iter().map(|s| (s.t, s.w)).collect(),
        color: "#1f77b4".into(),
    });
    w.text("series.svg", &series.render())
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let p = cfg.params();
    let tr = integrate(&State::at_rest(cfg.u0, cfg.w0), &p, cfg.effective_stride())?;
    let c = Classification::from_trajectory(&tr);

    let mut w = Writer::new(cfg)?;
    match cfg.format {
        Format::Csv => w.text("trajectory.csv", &table::trajectory_csv(&tr.samples))?,
        Format::Json => w.json("trajectory.json", &tr.samples)?,
    }
    let sidecar = json!({
        "params": p,
        "initial": tr.initial,
        "stride": tr.stride,
        "samples": tr.samples.len(),
        "classification": verdict_json(&c),
    });
    w.json("trajectory.meta.json", &sidecar)?;
    if cfg.plot {
        orbit_plots(&mut w, &tr, cfg)?;
    }
    Ok(w.finish(sidecar))
}

pub fn cmd_classify(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let p = cfg.params();
    let c = classify_one(cfg.u0, cfg.w0, &p)?;
    let mut w = Writer::new(cfg)?;
    let summary = json!({
        "u0": cfg.u0,
        "w0": cfg.w0,
        "params": p,
        "classification": verdict_json(&c),
    });
    match cfg.format {
        Format::Csv => w.text(
            "classification.csv",
            &table::classification_csv(cfg.u0, cfg.w0, &c),
        )?,
        Format::Json => w.json("classification.json", &summary)?,
    }
    if cfg.plot {
        let tr = integrate(&State::at_rest(cfg.u0, cfg.w0), &p, p.default_stride())?;
        orbit_plots(&mut w, &tr, cfg)?;
    }
    Ok(w.finish(summary))
}

pub fn cmd_stationary(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let p = cfg.params();
    let report = stationary_points(&p, cfg.search_box(), cfg.grid_n)?;
    let mut w = Writer::new(cfg)?;
    w.json("equilibria.json", &report)?;
    if cfg.format == Format::Csv {
        w.text("equilibria.csv", &table::equilibria_csv(&report.equilibria))?;
    }
    let mut spec = PlotSpec::new(
        PlotKind::PhasePlane,
        "fixed-point curves and equilibria",
        cfg.u_range(),
        cfg.w_range(),
    );
    if p.is_unit_symmetric() {
        spec = spec.layer(Layer::FixedPointCurves);
    }
    spec = spec.layer(Layer::Equilibria(report.equilibria.clone()));
    w.text("stationary.svg", &spec.render())?;
    let summary = json!({
        "equilibria": report.equilibria,
        "singular_seeds": report.singular_seeds.len(),
    });
    Ok(w.finish(summary))
}

fn require_unit_symmetric(cfg: &RunConfig) -> Result<()> {
    if cfg.params().is_unit_symmetric() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{} is only defined for unit coefficients",
            cfg.command.name()
        )))
    }
}

pub fn cmd_potential_grid(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    require_unit_symmetric(cfg)?;
    let grid = sample_grid(cfg.u_range(), cfg.w_range(), cfg.n_u, cfg.n_w)?;
    let minima = locate_minima(&grid);
    let mut w = Writer::new(cfg)?;
    match cfg.format {
        Format::Csv => w.text("potential.csv", &table::potential_csv(&grid))?,
        Format::Json => w.json("potential.json", &grid)?,
    }
    w.json("minima.json", &minima)?;
    let spec = PlotSpec::new(
        PlotKind::Contour,
        format!("P(u, w), 0 < P < {}", cfg.level),
        cfg.u_range(),
        cfg.w_range(),
    )
    .layer(Layer::PotentialField {
        grid,
        level: cfg.level,
    });
    w.text("potential.svg", &spec.render())?;
    Ok(w.finish(json!({ "minima": minima })))
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let p = cfg.params();
    let result = sweep(cfg.u_range(), cfg.w_range(), cfg.n_u, cfg.n_w, &p)?;
    let mut w = Writer::new(cfg)?;
    match cfg.format {
        Format::Csv => w.text("sweep.csv", &table::sweep_csv(&result))?,
        Format::Json => w.json("sweep.json", &result)?,
    }
    let count = |v: Option<Verdict>| result.cells.iter().filter(|c| c.verdict() == v).count();
    let summary = json!({
        "cells": result.cells.len(),
        "bounded": count(Some(Verdict::Bounded)),
        "divergent": count(Some(Verdict::Divergent)),
        "faults": count(None),
    });
    let spec = PlotSpec::new(
        PlotKind::PhasePlane,
        "bounded (blue) / divergent (sand)",
        cfg.u_range(),
        cfg.w_range(),
    )
    .layer(Layer::VerdictMap(result))
    .layer(Layer::Diagonal);
    w.text("sweep.svg", &spec.render())?;
    Ok(w.finish(summary))
}

pub fn cmd_boundary(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    require_unit_symmetric(cfg)?;
    let p = cfg.params();
    let lines = scan_lines(cfg.w0_min, cfg.w0_max, cfg.n_lines);
    let map = map_boundary(&lines, &cfg.scan_settings(), &p)?;
    let mut w = Writer::new(cfg)?;
    match cfg.format {
        Format::Csv => w.text("boundary.csv", &table::boundary_csv(&map.points))?,
        Format::Json => w.json("boundary.json", &map)?,
    }
    if map.points.is_empty() {
        return Err(Error::NoBracket { w0: cfg.w0_min });
    }
    let comparison = compare_with_potential(&map.points, cfg.level, cfg.band)?;
    w.json("comparison.json", &comparison)?;

    let grid = sample_grid(cfg.u_range(), cfg.w_range(), cfg.n_u.max(2), cfg.n_w.max(2))?;
    let spec = PlotSpec::new(
        PlotKind::BoundaryOverlay,
        "limits of bounded initial values over P",
        cfg.u_range(),
        cfg.w_range(),
    )
    .layer(Layer::PotentialField {
        grid,
        level: cfg.level,
    })
    .layer(Layer::Diagonal)
    .layer(Layer::BoundaryPoints(map.points.clone()));
    w.text("boundary.svg", &spec.render())?;

    let summary = json!({
        "points": map.points.len(),
        "fringe_brackets": map.fringe.len(),
        "failures": map.failures,
        "fraction_within_band": comparison.fraction_within_band,
    });
    Ok(w.finish(summary))
}

/// Load the `config.json` a previous run left in `dir`.
pub fn load_echoed_config(dir: &Path) -> Result<RunConfig> {
    RunConfig::from_file(&dir.join("config.json"), None)
}
