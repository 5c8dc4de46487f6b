use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coupled_kg::io::{self, Command, Format, RunConfig};
use coupled_kg::{Error, Params, Scheme};

#[derive(Parser)]
#[command(
    name = "coupled-kg",
    version,
    about = "Coupled cubic Klein-Gordon ODE laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Flat JSON config file (RunConfig fields); flags below override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// `symmetric` or a flat JSON file with any of the Params fields.
    #[arg(long, global = true)]
    params: Option<String>,
    #[arg(long, global = true)]
    step: Option<f64>,
    /// Final time (default 1024).
    #[arg(long, global = true)]
    horizon: Option<f64>,
    /// Divergence cutoff on max(|u|, |w|) (default 10).
    #[arg(long, global = true)]
    escape_radius: Option<f64>,
    #[arg(long, global = true)]
    scheme: Option<SchemeArg>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<FormatArg>,
    /// Also render orbit figures for simulate / classify.
    #[arg(long, global = true)]
    plot: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SchemeArg {
    Rk4,
    VelocityVerlet,
}

#[derive(Args, Default)]
struct Point {
    #[arg(long, allow_hyphen_values = true)]
    u0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    w0: Option<f64>,
}

#[derive(Args, Default)]
struct Window {
    #[arg(long, allow_hyphen_values = true)]
    u_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    u_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    w_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    w_max: Option<f64>,
    #[arg(long)]
    n_u: Option<usize>,
    #[arg(long)]
    n_w: Option<usize>,
}

#[derive(Subcommand)]
enum Sub {
    /// Integrate one trajectory and write it as CSV/JSON.
    Simulate {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        stride: Option<usize>,
    },
    /// Bounded / divergent verdict for one initial condition.
    Classify {
        #[command(flatten)]
        point: Point,
    },
    /// Equilibria by grid-seeded Newton iteration.
    Stationary {
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        grid_n: Option<usize>,
    },
    /// Sample the potential on a grid and render its contour plot.
    PotentialGrid {
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        level: Option<f64>,
    },
    /// Classify a lattice of initial conditions.
    Sweep {
        #[command(flatten)]
        window: Window,
    },
    /// Bisect the bounded-region limits on fixed-w0 scan lines.
    Boundary {
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        w0_min: Option<f64>,
        #[arg(long)]
        w0_max: Option<f64>,
        #[arg(long)]
        n_lines: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        scan_step: Option<f64>,
        #[arg(long)]
        level: Option<f64>,
        #[arg(long)]
        band: Option<f64>,
    },
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn apply_point(cfg: &mut RunConfig, p: Point) {
    set(&mut cfg.u0, p.u0);
    set(&mut cfg.w0, p.w0);
}

fn apply_window(cfg: &mut RunConfig, w: Window) {
    set(&mut cfg.u_min, w.u_min);
    set(&mut cfg.u_max, w.u_max);
    set(&mut cfg.w_min, w.w_min);
    set(&mut cfg.w_max, w.w_max);
    set(&mut cfg.n_u, w.n_u);
    set(&mut cfg.n_w, w.n_w);
}

fn build_config(cli: Cli) -> Result<RunConfig, Error> {
    let command = match &cli.command {
        Sub::Simulate { .. } => Command::Simulate,
        Sub::Classify { .. } => Command::Classify,
        Sub::Stationary { .. } => Command::Stationary,
        Sub::PotentialGrid { .. } => Command::PotentialGrid,
        Sub::Sweep { .. } => Command::Sweep,
        Sub::Boundary { .. } => Command::Boundary,
    };
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path, Some(command))?,
        None => RunConfig::defaults(command),
    };
    match cli.params.as_deref() {
        None => {}
        Some("symmetric") => {
            let keep = cfg.params();
            cfg.set_params(&Params {
                step: keep.step,
                horizon: keep.horizon,
                escape_radius: keep.escape_radius,
                scheme: keep.scheme,
                ..Params::symmetric()
            });
        }
        Some(path) => cfg = cfg.apply_params_file(path.as_ref())?,
    }
    set(&mut cfg.step, cli.step);
    set(&mut cfg.horizon, cli.horizon);
    set(&mut cfg.escape_radius, cli.escape_radius);
    set(
        &mut cfg.scheme,
        cli.scheme.map(|s| match s {
            SchemeArg::Rk4 => Scheme::Rk4,
            SchemeArg::VelocityVerlet => Scheme::VelocityVerlet,
        }),
    );
    set(&mut cfg.out, cli.out);
    set(
        &mut cfg.format,
        cli.format.map(|f| match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }),
    );
    cfg.plot |= cli.plot;

    match cli.command {
        Sub::Simulate { point, stride } => {
            apply_point(&mut cfg, point);
            set(&mut cfg.stride, stride);
        }
        Sub::Classify { point } => apply_point(&mut cfg, point),
        Sub::Stationary { window, grid_n } => {
            apply_window(&mut cfg, window);
            set(&mut cfg.grid_n, grid_n);
        }
        Sub::PotentialGrid { window, level } => {
            apply_window(&mut cfg, window);
            set(&mut cfg.level, level);
        }
        Sub::Sweep { window } => apply_window(&mut cfg, window),
        Sub::Boundary {
            window,
            w0_min,
            w0_max,
            n_lines,
            tol,
            scan_step,
            level,
            band,
        } => {
            apply_window(&mut cfg, window);
            set(&mut cfg.w0_min, w0_min);
            set(&mut cfg.w0_max, w0_max);
            set(&mut cfg.n_lines, n_lines);
            set(&mut cfg.tol, tol);
            set(&mut cfg.scan_step, scan_step);
            set(&mut cfg.level, level);
            set(&mut cfg.band, band);
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|cfg| io::run(&cfg));
    match result {
        Ok(outcome) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.summary).unwrap_or_default()
            );
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
