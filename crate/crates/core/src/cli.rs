//! Command-line front end.
//!
//! Exit codes: 0 success, 1 scenario or I/O failure, 2 unknown protocol,
//! 3 degenerate region, 4 safety verdict failed.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::channel_optical::OpticalGeometry;
use crate::error::Error;
use crate::protocols::{Evaluator, OperatingPoint, ProtocolId};
use crate::region::{dominates, sweep_with, RateEnergyRegion, DEFAULT_GRID};
use crate::safety::safety_verdict;
use crate::scenario::{default_scenario, parse_scenario, render_scenario, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCENARIO: i32 = 1;
pub const EXIT_UNKNOWN_PROTOCOL: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_UNSAFE: i32 = 4;

pub const CSV_HEADER: &str = "protocol,alpha_nirl,tau_nirl,alpha_vl,tau_vl,rho_rf,rate_bps,harvested_w";

#[derive(Debug, Parser)]
#[command(name = "swipt", version, about = "Rate-energy regions of collaborative RF and lightwave power transfer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep one protocol and write its region and Pareto frontier as CSV
    Region {
        /// Scenario file
        scenario: PathBuf,
        /// One of rf, vl, nirl, a, b, c, d
        protocol: String,
        /// Grid points per free control axis
        #[arg(long, default_value_t = DEFAULT_GRID, value_parser = parse_grid)]
        grid: usize,
        /// Output CSV; the frontier goes next to it as <stem>.frontier.csv
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare all protocols against the single-technology baselines
    Compare {
        scenario: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID, value_parser = parse_grid)]
        grid: usize,
    },
    /// Check SAR, infrared irradiance and illuminance limits
    Safety {
        scenario: PathBuf,
        /// Dimmed room: illuminance is reported but does not fail the verdict
        #[arg(long)]
        dim: bool,
        /// Distance from the infrared element to the body (m) [default: device distance]
        #[arg(long)]
        body_distance: Option<f64>,
        /// Angle of the body off the element's axis (degrees) [default: device irradiance angle]
        #[arg(long)]
        body_irradiance_angle: Option<f64>,
        /// Incidence angle on the exposed skin (degrees) [default: device incidence angle]
        #[arg(long)]
        body_incidence_angle: Option<f64>,
    },
    /// Print the default scenario file
    Defaults,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateRegion(_) => EXIT_DEGENERATE,
            _ => EXIT_SCENARIO,
        };
        Failure::new(code, e.to_string())
    }
}

fn parse_grid(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("grid must be an integer >= 2, got `{s}`")),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Region {
            scenario,
            protocol,
            grid,
            out,
        } => {
            let s = load_scenario(&scenario)?;
            let protocol: ProtocolId = protocol
                .parse()
                .map_err(|m: String| Failure::new(EXIT_UNKNOWN_PROTOCOL, m))?;
            let out = out.unwrap_or_else(|| PathBuf::from(format!("region_{protocol}.csv")));
            cmd_region(&s, protocol, grid, &out)?;
            Ok(EXIT_OK)
        }
        Command::Compare { scenario, grid } => {
            let s = load_scenario(&scenario)?;
            print!("{}", cmd_compare(&s, grid)?);
            Ok(EXIT_OK)
        }
        Command::Safety {
            scenario,
            dim,
            body_distance,
            body_irradiance_angle,
            body_incidence_angle,
        } => {
            let s = load_scenario(&scenario)?;
            let device = s.nirl_geometry();
            let body = OpticalGeometry::new(
                body_distance.unwrap_or(device.distance),
                body_irradiance_angle.unwrap_or(device.irradiance_angle),
                body_incidence_angle.unwrap_or(device.incidence_angle),
                device.semi_angle,
            )
            .map_err(|e| Failure::new(EXIT_SCENARIO, format!("body geometry: {e}")))?;
            let (report, ok) = cmd_safety(&s, &body, dim);
            print!("{report}");
            Ok(if ok { EXIT_OK } else { EXIT_UNSAFE })
        }
        Command::Defaults => {
            print!("{}", render_scenario(&default_scenario()));
            Ok(EXIT_OK)
        }
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_SCENARIO, format!("cannot read scenario {}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| Failure::new(EXIT_SCENARIO, format!("{}: {e}", path.display())))
}

/// Companion frontier path: `out.csv` -> `out.frontier.csv`.
pub fn frontier_path(out: &Path) -> PathBuf {
    match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => out.with_extension("frontier.csv"),
        _ => {
            let mut s = out.as_os_str().to_owned();
            s.push(".frontier.csv");
            PathBuf::from(s)
        }
    }
}

fn csv_row(out: &mut String, p: &OperatingPoint) {
    let c = &p.controls;
    let _ = writeln!(
        out,
        "{},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e}",
        p.protocol,
        c.nirl_dc_fraction,
        c.nirl_id_time_fraction,
        c.vl_dc_fraction,
        c.vl_id_time_fraction,
        c.rf_eh_fraction,
        p.rate,
        p.harvested_power
    );
}

/// CSV text (header plus one row per point).
pub fn render_csv(points: &[OperatingPoint]) -> String {
    let mut out = String::with_capacity(96 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        csv_row(&mut out, p);
    }
    out
}

fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Sweeps `protocol` and writes the region CSV plus its frontier CSV.
pub fn cmd_region(scenario: &Scenario, protocol: ProtocolId, grid: usize, out: &Path) -> Result<RateEnergyRegion, Failure> {
    let evaluator = Evaluator::new(scenario)?;
    let region = sweep_with(&evaluator, protocol, grid)?;
    let io_err = |p: &Path, e: std::io::Error| Failure::new(EXIT_SCENARIO, format!("cannot write {}: {e}", p.display()));
    write_atomic(out, &render_csv(&region.points)).map_err(|e| io_err(out, e))?;
    let fpath = frontier_path(out);
    write_atomic(&fpath, &render_csv(&region.frontier)).map_err(|e| io_err(&fpath, e))?;
    Ok(region)
}

/// Comparison table of every protocol and baseline.
pub fn cmd_compare(scenario: &Scenario, grid: usize) -> Result<String, Failure> {
    let evaluator = Evaluator::new(scenario)?;
    let regions = ProtocolId::ALL
        .into_iter()
        .map(|p| sweep_with(&evaluator, p, grid))
        .collect::<Result<Vec<_>, _>>()?;
    let baselines: Vec<&RateEnergyRegion> = regions.iter().filter(|r| r.protocol.is_baseline()).collect();

    let mut out = String::new();
    let _ = write!(out, "{:<8} {:>15} {:>15}", "protocol", "max_rate_bps", "max_harvest_w");
    for b in &baselines {
        let _ = write!(out, " {:>8}", format!("dom_{}", b.protocol));
    }
    out.push('\n');
    for r in &regions {
        let _ = write!(
            out,
            "{:<8} {:>15.6e} {:>15.6e}",
            r.protocol.name(),
            r.max_rate()?,
            r.max_energy()?
        );
        for b in &baselines {
            let _ = write!(out, " {:>8}", if dominates(r, b) { "yes" } else { "no" });
        }
        out.push('\n');
    }
    Ok(out)
}

/// Safety report text and the overall verdict.
pub fn cmd_safety(scenario: &Scenario, body: &OpticalGeometry, dim: bool) -> (String, bool) {
    let v = safety_verdict(scenario, body, dim);
    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sar          {}  power {:.6} W  budget {} W over {} s  margin {:.6} W",
        verdict(v.sar.ok),
        scenario.rf_wpt_tx_power,
        scenario.safety.sar_power_budget,
        scenario.safety.sar_window,
        v.sar.margin
    );
    if v.irradiance.exempt {
        let _ = writeln!(
            out,
            "irradiance   {}  beams steered away from the body  limit {} W/m²",
            verdict(v.irradiance.ok),
            scenario.safety.nirl_irradiance_limit
        );
    } else {
        let _ = writeln!(
            out,
            "irradiance   {}  {:.6e} W/m²  limit {} W/m²  margin {:.6e} W/m²",
            verdict(v.irradiance.ok),
            v.irradiance.value,
            scenario.safety.nirl_irradiance_limit,
            v.irradiance.margin
        );
    }
    let _ = writeln!(
        out,
        "illuminance  {}  {:.2} lx ({} [{}, {}] lx){}",
        verdict(v.illuminance.ok()),
        v.illuminance.value,
        v.illuminance.class,
        scenario.safety.illuminance_min,
        scenario.safety.illuminance_max,
        if dim { " dimmed, not enforced" } else { "" }
    );
    let _ = writeln!(out, "overall      {}", verdict(v.overall_ok));
    (out, v.overall_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frontier_paths() {
        assert_eq!(frontier_path(Path::new("out/a.csv")), PathBuf::from("out/a.frontier.csv"));
        assert_eq!(frontier_path(Path::new("region")), PathBuf::from("region.frontier.csv"));
    }

    #[test]
    fn csv_formatting() {
        let p = OperatingPoint {
            rate: 1823838472.8194206,
            harvested_power: 0.009594037383028574,
            controls: crate::protocols::pinned_controls(ProtocolId::A),
            protocol: ProtocolId::A,
        };
        let csv = render_csv(&[p]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("a,0.00000000e0,1.00000000e0,1.00000000e0,0.00000000e0,0.00000000e0,1.82383847e9,9.59403738e-3")
        );
    }

    #[test]
    fn safety_report_default() {
        let s = default_scenario();
        let (text, ok) = cmd_safety(&s, &s.nirl_geometry(), false);
        assert!(!ok);
        assert!(text.contains("margin 4.760189 W"), "{text}");
        let (_, ok) = cmd_safety(&s, &s.nirl_geometry(), true);
        assert!(ok);
    }
}
