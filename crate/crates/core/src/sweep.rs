//! Receiver sweeps over polar angle, receiver offset and azimuth, written as
//! CSV.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coords::{CVec3, SphericalPoint};
use crate::error::{Error, Result};
use crate::field::{field_with, to_db, FieldSelector};
use crate::greens::{SphereModel, TruncationSpec};
use crate::scenario::{LoadedScenario, ScenarioFile};

pub const CSV_HEADER: &str =
    "theta_rad,phi_rad,offset_m,er_re,er_im,eth_re,eth_im,eph_re,eph_im,mag_eph_db,mag_total_db";

/// How a receiver offset moves the receiver away from `(range, theta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OffsetAxis {
    /// Radial distance becomes `range + offset`.
    #[default]
    Radial,
    /// The point is shifted by `offset` along `+z`.
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub theta_values: Vec<f64>,
    pub phi_start: f64,
    pub phi_end: f64,
    pub phi_step: f64,
    pub offsets_m: Vec<f64>,
    pub field: FieldSelector,
    pub truncation: TruncationSpec,
    pub offset_axis: OffsetAxis,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theta_values: vec![PI / 6.0, PI / 3.0, PI],
            phi_start: 0.0,
            phi_end: TAU,
            phi_step: PI / 180.0,
            offsets_m: (0..=5).map(|i| i as f64 * 0.02).collect(),
            field: FieldSelector::Scattered,
            truncation: TruncationSpec::default(),
            offset_axis: OffsetAxis::Radial,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_values.is_empty() {
            return Err(Error::invalid("theta", "at least one value required"));
        }
        if let Some(t) = self.theta_values.iter().find(|t| !(0.0..=PI).contains(*t)) {
            return Err(Error::invalid("theta", format!("{t} outside [0, pi]")));
        }
        if !(self.phi_step.is_finite() && self.phi_step > 0.0) {
            return Err(Error::invalid("phi_step", "must be > 0"));
        }
        if !(self.phi_start.is_finite() && self.phi_end.is_finite() && self.phi_end >= self.phi_start)
        {
            return Err(Error::invalid("phi_end", "must be finite and >= phi_start"));
        }
        if self.offsets_m.is_empty() {
            return Err(Error::invalid("offsets", "at least one value required"));
        }
        if let Some(o) = self.offsets_m.iter().find(|o| !(o.is_finite() && **o >= 0.0)) {
            return Err(Error::invalid("offsets", format!("{o} must be >= 0")));
        }
        self.truncation.validate()
    }

    /// `phi_start, phi_start + step, ...` up to and including `phi_end`
    /// when it falls on the grid.
    pub fn phi_values(&self) -> Vec<f64> {
        let count = ((self.phi_end - self.phi_start) / self.phi_step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.phi_start + i as f64 * self.phi_step).collect()
    }

    /// Grid in output order: theta outer, offset middle, phi inner.
    pub fn grid(&self) -> Vec<(f64, f64, f64)> {
        let phis = self.phi_values();
        let mut out = Vec::with_capacity(self.theta_values.len() * self.offsets_m.len() * phis.len());
        for &theta in &self.theta_values {
            for &offset in &self.offsets_m {
                for &phi in &phis {
                    out.push((theta, offset, phi));
                }
            }
        }
        out
    }
}

pub fn receiver_position(
    range: f64,
    theta: f64,
    phi: f64,
    offset: f64,
    axis: OffsetAxis,
) -> Result<SphericalPoint> {
    match axis {
        OffsetAxis::Radial => SphericalPoint::new(range + offset, theta, phi),
        OffsetAxis::Vertical => {
            let mut c = SphericalPoint::new(range, theta, phi)?.to_cartesian();
            c[2] += offset;
            Ok(SphericalPoint::from_cartesian(c))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub phi: f64,
    pub offset: f64,
    pub e: CVec3,
    pub mag_eph_db: f64,
    pub mag_total_db: f64,
}

impl SweepRow {
    fn write_csv(&self, out: &mut String) {
        let _ = write!(out, "{:.16e},{:.16e},{:.16e}", self.theta, self.phi, self.offset);
        for c in &self.e {
            let _ = write!(out, ",{:.16e},{:.16e}", c.re, c.im);
        }
        let _ = writeln!(out, ",{:.16e},{:.16e}", self.mag_eph_db, self.mag_total_db);
    }
}

/// Mean `|E_phi|` over azimuth for each offset at one polar angle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaTrend {
    pub theta: f64,
    pub mean_abs_eph: Vec<f64>,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub max_db: f64,
    pub min_db: f64,
    /// Every polar angle shows strictly decreasing mean `|E_phi|` with offset.
    pub monotone_trend: bool,
    pub trends: Vec<ThetaTrend>,
}

fn summarize(config: &SweepConfig, rows: &[SweepRow]) -> SweepSummary {
    let per_offset = config.phi_values().len();
    let per_theta = per_offset * config.offsets_m.len();
    let trends: Vec<ThetaTrend> = rows
        .chunks(per_theta)
        .map(|block| {
            let mean_abs_eph: Vec<f64> = block
                .chunks(per_offset)
                .map(|c| c.iter().map(|r| r.e[2].norm()).sum::<f64>() / c.len() as f64)
                .collect();
            let monotone = mean_abs_eph.windows(2).all(|w| w[1] < w[0]);
            ThetaTrend {
                theta: block[0].theta,
                mean_abs_eph,
                monotone,
            }
        })
        .collect();
    let dbs = rows.iter().map(|r| r.mag_eph_db);
    SweepSummary {
        rows: rows.len(),
        max_db: dbs.clone().fold(f64::NEG_INFINITY, f64::max),
        min_db: dbs.fold(f64::INFINITY, f64::min),
        monotone_trend: trends.iter().all(|t| t.monotone),
        trends,
    }
}

/// Evaluates the grid in parallel; rows come back in grid order.
pub fn compute_sweep(
    loaded: &LoadedScenario,
    config: &SweepConfig,
) -> Result<(Vec<SweepRow>, SweepSummary)> {
    config.validate()?;
    let model = SphereModel::for_truncation(&loaded.scenario, &config.truncation)?;
    let grid = config.grid();
    let results: Vec<Result<SweepRow>> = grid
        .par_iter()
        .map(|&(theta, offset, phi)| {
            let at = |e: Error| Error::AtGridPoint {
                theta,
                phi,
                offset,
                source: Box::new(e),
            };
            let x = receiver_position(loaded.receiver_range_m, theta, phi, offset, config.offset_axis)
                .map_err(at)?;
            let f = field_with(&model, config.field, &loaded.source, &x, &config.truncation)
                .map_err(at)?;
            Ok(SweepRow {
                theta,
                phi,
                offset,
                e: f.e,
                mag_eph_db: f.mag_phi_db,
                mag_total_db: to_db(crate::coords::cnorm(&f.e)),
            })
        })
        .collect();
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    let summary = summarize(config, &rows);
    Ok((rows, summary))
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 260 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        r.write_csv(&mut out);
    }
    out
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Loads the scenario, runs the sweep and writes the CSV.
pub fn run_sweep(scenario_path: &Path, config: &SweepConfig, out_path: &Path) -> Result<SweepSummary> {
    let loaded = ScenarioFile::load(scenario_path)?;
    run_loaded_sweep(&loaded, config, out_path)
}

pub fn run_loaded_sweep(
    loaded: &LoadedScenario,
    config: &SweepConfig,
    out_path: &Path,
) -> Result<SweepSummary> {
    let (rows, summary) = compute_sweep(loaded, config)?;
    std::fs::write(out_path, rows_to_csv(&rows)).map_err(|e| io_error(out_path, e))?;
    Ok(summary)
}

/// Gnuplot script plotting `mag_eph_db` against azimuth, one curve per
/// offset and one panel per polar angle.
pub fn plot_script(csv_name: &str, config: &SweepConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set xlabel 'phi (rad)'");
    let _ = writeln!(s, "set ylabel '|E_phi| (dB re 1 V/m)'");
    let _ = writeln!(s, "set key outside right");
    let _ = writeln!(
        s,
        "set multiplot layout {},1",
        config.theta_values.len()
    );
    for &theta in &config.theta_values {
        let _ = writeln!(s, "set title sprintf('theta = %.4f rad', {theta:.16e})");
        let curves: Vec<String> = config
            .offsets_m
            .iter()
            .map(|o| {
                format!(
                    "'{csv_name}' every ::1 using ((abs($1-{theta:.16e})<1e-12 && abs($3-{o:.16e})<1e-12) ? $2 : 1/0):10 with lines title 'offset {o} m'"
                )
            })
            .collect();
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    }
    let _ = writeln!(s, "unset multiplot");
    s
}
