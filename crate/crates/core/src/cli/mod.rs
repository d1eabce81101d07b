//! The `bimodal` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical flag (an estimate
//! that did not converge, a flagged bone or vertex), 3 I/O error.

mod config;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use config::RunConfig;

use crate::bones::{self, render, Side};
use crate::entropy::{entropy, EntropyEstimate};
use crate::error::Error;
use crate::isentropes::{self, contours, contours_svg, grid_from_csv, grid_to_csv, grid_to_pgm};
use crate::maps::Family;
use crate::svg::Window;
use crate::symbolic::{order_types, OrderType};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable giving the default worker count.
pub const WORKERS_ENV: &str = "BIMODAL_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "bimodal", version, about = "Entropy, kneading data and bones of bimodal interval maps")]
pub struct Cli {
    /// Worker threads for scans and skeletons.
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    /// Replay a run from a config file instead of the command line.
    #[arg(long, global = true, value_name = "PATH")]
    pub seed_config: Option<PathBuf>,
    /// Write the config of this run to a file.
    #[arg(long, global = true, value_name = "PATH")]
    pub emit_config: Option<PathBuf>,
    /// Describe the input and output formats and exit.
    #[arg(long)]
    pub help_formats: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Growth number of one map.
    Entropy {
        #[arg(long, default_value = "cubic")]
        family: Family,
        /// Critical values `v1,v2` (cubic) or `v` (quadratic).
        #[arg(long, value_delimiter = ',', conflicts_with = "w")]
        v: Option<Vec<f64>>,
        /// Plateau heights `w1,w2` (sawtooth).
        #[arg(long, value_delimiter = ',')]
        w: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Print the estimate as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Entropy grid over the parameter triangle.
    Scan {
        #[arg(long, default_value = "cubic")]
        family: Family,
        #[arg(long, default_value_t = 128)]
        m: usize,
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
        /// Subwindow `x0,x1,y0,y1`.
        #[arg(long, value_delimiter = ',')]
        window: Option<Vec<f64>>,
        #[arg(long, default_value = "grid.csv")]
        out: PathBuf,
        #[arg(long)]
        pgm: Option<PathBuf>,
        /// Also write contours at this interval.
        #[arg(long)]
        ds: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Isentropes of a scanned grid.
    Contour {
        #[arg(long, default_value = "grid.csv")]
        grid: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        ds: f64,
        #[arg(long, default_value = "contours.svg")]
        svg: PathBuf,
        /// Also write the polylines as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Bones of one period on one side.
    Bone {
        #[arg(long, default_value = "cubic")]
        family: Family,
        #[arg(long)]
        period: usize,
        #[arg(long, default_value = "left")]
        side: Side,
        /// Restrict to one order type, e.g. `2,3,1`.
        #[arg(long)]
        order_type: Option<String>,
        /// JSON output; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The n-skeleton.
    Skeleton {
        #[arg(long, default_value = "cubic")]
        family: Family,
        #[arg(long)]
        n: usize,
        /// JSON output; standard output when absent.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Growth number of the quadratic family on a grid of `v`.
    QuadProfile {
        /// Number of grid points on `[0, 1]`.
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// CSV output; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub const FORMATS: &str = "\
Coordinates
  Parameter points are (v1, v2) critical values, or (w1, w2) plateau
  heights for the sawtooth family, in the triangle 1 >= v1 >= v2 >= 0.
  Figures put the origin at the lower left, v1 to the right, v2 upward.

Grid CSV (scan)
  line 1: # family=<f> m=<m> window=<x0>,<x1>,<y0>,<y1> tol=<t>
  line 2: v1,v2,s,h,err,converged
  then one row per node inside the triangle, v2-major, v1 increasing.
  Nodes are v1 = x0 + i(x1-x0)/m, v2 = y0 + j(y1-y0)/m. h = ln s.
  converged is 1 or 0.

PGM (scan --pgm)
  Plain P2, (m+1) x (m+1), top row is the largest v2. White is outside the
  triangle; grey runs from s = 1 (light) to s = 3 (black).

SVG
  640 x 640 px, 20 px margin, square scale over the window. Contours are
  black and each level is labelled once; left bones are blue, right bones
  red, skeleton vertices are dots (orange when flagged).

JSON
  bone: a list of records {family, side, period, order_type, polyline,
  segments, endpoints, center, flagged}. Sawtooth segments are exact
  rationals written as strings.
  skeleton: {family, n, bones, vertices, edges}; each vertex has point,
  kind (endpoint, crossing, center), label, flagged and bone indices.
  Labels are the shape followed by one '|'-separated sign line per step.

Quadratic profile CSV
  v,s,h,err,converged

Run configs (--emit-config / --seed-config)
  One key=value per line, '#' comments. Values are JSON literals; strings
  may be bare. The key 'command' names the subcommand.

Exit codes
  0 ok, 1 usage, 2 numerical flag, 3 I/O.
";

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numeric(_) => EXIT_NUMERIC,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence(_)
            | Error::StepCollapse { .. }
            | Error::OrderTypeChanged { .. }
            | Error::NoCenter
            | Error::NotFixed { .. }
            | Error::NotPeriodic(_) => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn describe(e: &EntropyEstimate) -> String {
    format!(
        "s = {:.6}\nh = {:.6}\nerr = {:.3e}\ndepth = {}\nconverged = {}\n{}",
        e.s,
        e.h,
        e.err,
        e.depth,
        e.converged,
        e.cross.map(|c| format!("cross = {c:.3e}\n")).unwrap_or_default()
    )
}

fn window_of(w: &[f64]) -> Window {
    Window {
        x0: w[0],
        x1: w[1],
        y0: w[2],
        y1: w[3],
    }
}

/// Runs `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Numeric(m) => eprintln!("numerical failure: {m}"),
                Failure::Io(m) => eprintln!("i/o error: {m}"),
            }
            f.code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    if cli.help_formats {
        print!("{FORMATS}");
        return Ok(EXIT_OK);
    }
    let command = match (&cli.seed_config, cli.command) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give a subcommand or --seed-config, not both".into())),
        (Some(path), None) => RunConfig::parse(&read_file(path)?)
            .and_then(|c| c.to_value::<Command>())
            .map_err(Failure::Usage)?,
        (None, Some(c)) => c,
        (None, None) => return Err(Failure::Usage("no subcommand given; see --help".into())),
    };
    if let Some(path) = &cli.emit_config {
        let cfg = RunConfig::from_value(&command).map_err(Failure::Usage)?;
        write_file(path, &cfg.to_text())?;
    }
    let workers = cli.workers.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::Usage(format!("worker pool: {e}")))?;
    pool.install(|| execute(command))
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Entropy {
            family,
            v,
            w,
            tol,
            json,
        } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(Failure::Usage("tolerance must lie in (0, 1)".into()));
            }
            let xs = match (family, v, w) {
                (Family::Saw, None, Some(w)) | (Family::Saw, Some(w), None) => w,
                (Family::Quad, Some(v), None) if v.len() == 1 => vec![v[0], 0.0],
                (Family::Cubic, Some(v), None) if v.len() == 2 => v,
                _ => {
                    return Err(Failure::Usage(
                        "expected --v v1,v2 (cubic), --w w1,w2 (saw) or --v v (quad)".into(),
                    ))
                }
            };
            if xs.len() != 2 {
                return Err(Failure::Usage("expected two parameters".into()));
            }
            let f = family.map_at(xs[0], xs[1])?;
            let e = entropy(&f, tol);
            if json {
                println!("{}", e.to_json());
            } else {
                print!("{}", describe(&e));
            }
            Ok(if e.converged { EXIT_OK } else { EXIT_NUMERIC })
        }
        Command::Scan {
            family,
            m,
            tol,
            window,
            out,
            pgm,
            ds,
            svg,
        } => {
            let win = match window.as_deref() {
                None => Window::UNIT,
                Some(w) if w.len() == 4 => window_of(w),
                Some(_) => return Err(Failure::Usage("--window needs x0,x1,y0,y1".into())),
            };
            if let Some(ds) = ds {
                if !(ds >= 2.0 * tol) {
                    return Err(Failure::Usage(format!("--ds must be at least twice --tol ({tol})")));
                }
            }
            let g = isentropes::scan_window(family, m, tol, win)?;
            write_file(&out, &grid_to_csv(&g))?;
            if let Some(p) = pgm {
                write_file(&p, &grid_to_pgm(&g))?;
            }
            if ds.is_some() || svg.is_some() {
                let c = contours(&g, ds.unwrap_or(0.1))?;
                write_file(&svg.unwrap_or_else(|| PathBuf::from("contours.svg")), &contours_svg(&c, win))?;
            }
            if g.flagged() > 0 {
                eprintln!("note: {} nodes did not reach the tolerance (converged = 0 in the grid)", g.flagged());
            }
            Ok(EXIT_OK)
        }
        Command::Contour { grid, ds, svg, json } => {
            let g = grid_from_csv(&read_file(&grid)?)?;
            let c = contours(&g, ds)?;
            write_file(&svg, &contours_svg(&c, g.window))?;
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&c).map_err(|e| Failure::Io(e.to_string()))?;
                write_file(&p, &text)?;
            }
            Ok(EXIT_OK)
        }
        Command::Bone {
            family,
            period,
            side,
            order_type,
            out,
            svg,
        } => {
            if period < 2 {
                return Err(Failure::Usage("bones need period p ≥ 2".into()));
            }
            let wanted: Vec<OrderType> = match order_type {
                Some(s) => {
                    let o = OrderType::parse(&s)?;
                    if o.period() != period {
                        return Err(Failure::Usage(format!("order type {o} does not have period {period}")));
                    }
                    vec![o]
                }
                None => order_types(period)?,
            };
            let found = bones_of(family, side, period, &wanted)?;
            if found.is_empty() {
                return Err(Failure::Usage("no bone with these data".into()));
            }
            let records: Vec<serde_json::Value> = found
                .iter()
                .map(|b| serde_json::from_str(&b.to_json()).expect("bone json parses"))
                .collect();
            let text = serde_json::to_string_pretty(&records).map_err(|e| Failure::Io(e.to_string()))? + "\n";
            emit(out.as_deref(), &text)?;
            if let Some(p) = svg {
                write_file(&p, &render::bones_svg(&found))?;
            }
            Ok(if found.iter().any(|b| b.flagged) { EXIT_NUMERIC } else { EXIT_OK })
        }
        Command::Skeleton { family, n, json, svg } => {
            let g = bones::skeleton(family, n)?;
            emit(json.as_deref(), &(g.to_json() + "\n"))?;
            if let Some(p) = svg {
                write_file(&p, &render::skeleton_svg(&g))?;
            }
            let flagged = g.vertices.iter().any(|v| v.flagged) || g.bones.iter().any(|b| b.flagged);
            Ok(if flagged { EXIT_NUMERIC } else { EXIT_OK })
        }
        Command::QuadProfile { grid, tol, out } => {
            if grid < 2 {
                return Err(Failure::Usage("--grid needs at least 2 points".into()));
            }
            let mut text = String::from("v,s,h,err,converged\n");
            let mut all = true;
            for k in 0..grid {
                let v = if k + 1 == grid { 1.0 } else { k as f64 / (grid - 1) as f64 };
                let e = entropy(&Family::Quad.map_at(v, 0.0)?, tol);
                all &= e.converged;
                text.push_str(&format!("{v},{},{},{},{}\n", e.s, e.h, e.err, e.converged as u8));
            }
            emit(out.as_deref(), &text)?;
            Ok(if all { EXIT_OK } else { EXIT_NUMERIC })
        }
    }
}

/// Bones of the given order types on one side; order types without a
/// bone in this family are skipped.
fn bones_of(family: Family, side: Side, period: usize, wanted: &[OrderType]) -> Result<Vec<bones::Bone>, Failure> {
    let mut out = Vec::new();
    match family {
        Family::Saw => {
            for o in wanted {
                match bones::sawtooth_bone(side, o) {
                    Ok(b) => out.push(b),
                    Err(Error::Empty) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Family::Cubic => {
            let ends = bones::edge_bone_endpoints(family, side.edge(), period)?;
            for o in wanted {
                let pts: Vec<_> = ends.iter().filter(|e| &e.order_type == o).map(|e| e.point).collect();
                if pts.is_empty() {
                    continue;
                }
                out.push(bones::trace_cubic_bone(pts[0], side, o, 1e-3)?);
            }
        }
        Family::Quad => return Err(Failure::Usage("bones are defined for bimodal families".into())),
    }
    Ok(out)
}
