//! `plot-data`: reshape a run directory into per-figure plot tables.
//!
//! Each table aggregates the raw per-seed rows into mean/std series in a
//! tidy layout, one file per figure analogue. Optional SVG renderings
//! are best-effort: a failed image prints a warning and never changes
//! the exit status.

use crate::cli::PlotDataArgs;
use crate::plot::{self, Series};
use crate::runner::{OpContext, RunOutcome};
use crate::table::{self, fmt_key, fmt_value};
use anyhow::{bail, Context, Result};
use qfm_core::fourier::OCCUPANCY_THRESHOLD;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Files a run directory may contribute plot data from.
pub const EXPECTED_INPUTS: [&str; 6] = [
    "redundancy.csv",
    "coefficients.csv",
    "expressibility.csv",
    "entanglement.csv",
    "training.csv",
    "coefficients_trace.csv",
];

/// Series cap for the optional images; beyond this a chart is skipped.
const MAX_IMAGE_SERIES: usize = 16;

#[derive(Serialize)]
struct PlotEcho {
    subcommand: &'static str,
    version: &'static str,
    input_dir: String,
    inputs: Vec<String>,
    images: bool,
}

/// A loaded CSV with header-name column lookup.
struct Frame {
    name: &'static str,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Frame {
    fn load(dir: &Path, name: &'static str) -> Result<Option<Self>> {
        let path = dir.join(name);
        if !path.exists() {
            return Ok(None);
        }
        let (header, rows) = table::read_csv(&path)?;
        Ok(Some(Self { name, header, rows }))
    }

    fn col(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .with_context(|| format!("{} has no `{name}` column", self.name))
    }

    fn num(&self, row: &[String], col: usize) -> Result<f64> {
        row[col]
            .parse::<f64>()
            .with_context(|| format!("{}: bad number `{}`", self.name, row[col]))
    }
}

/// Grouping key part with a deterministic total order (text first, then
/// numerics by value).
#[derive(Clone, Debug)]
enum Key {
    Text(String),
    Num(f64),
}

impl Key {
    fn render(&self) -> String {
        match self {
            Key::Text(t) => t.clone(),
            Key::Num(v) => fmt_key(*v),
        }
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Key::Text(a), Key::Text(b)) => a.cmp(b),
            (Key::Num(a), Key::Num(b)) => a.total_cmp(b),
            (Key::Text(_), Key::Num(_)) => Ordering::Less,
            (Key::Num(_), Key::Text(_)) => Ordering::Greater,
        }
    }
}

type Groups = BTreeMap<Vec<Key>, Vec<f64>>;

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn omega_keys(token: &str) -> Result<Vec<Key>> {
    token
        .split(';')
        .map(|c| {
            c.parse::<f64>()
                .map(Key::Num)
                .with_context(|| format!("bad frequency component `{c}`"))
        })
        .collect()
}

fn omega_is_canonical(keys: &[Key]) -> bool {
    for k in keys {
        if let Key::Num(v) = k {
            if *v > 0.0 {
                return true;
            }
            if *v < 0.0 {
                return false;
            }
        }
    }
    true
}

fn render_omega(keys: &[Key]) -> String {
    keys.iter()
        .map(Key::render)
        .collect::<Vec<_>>()
        .join(";")
}

fn first_component(keys: &[Key]) -> f64 {
    match keys.first() {
        Some(Key::Num(v)) => *v,
        _ => 0.0,
    }
}

/// One emitted figure table plus an optional chart description.
struct Fig {
    name: &'static str,
    header: &'static str,
    rows: Vec<String>,
    chart: Option<(String, String, String, Vec<Series>)>,
}

pub fn run(args: &PlotDataArgs) -> Result<RunOutcome> {
    let dir = &args.out;
    let inputs: Vec<String> = EXPECTED_INPUTS
        .iter()
        .filter(|n| dir.join(n).exists())
        .map(|n| n.to_string())
        .collect();
    if inputs.is_empty() {
        bail!(
            "no run outputs found in {}; expected at least one of: {}",
            dir.display(),
            EXPECTED_INPUTS.join(", ")
        );
    }

    let plots = dir.join("plots");
    let echo = PlotEcho {
        subcommand: "plot-data",
        version: env!("CARGO_PKG_VERSION"),
        input_dir: dir.display().to_string(),
        inputs: inputs.clone(),
        images: args.images,
    };
    let mut ctx = OpContext::start(&plots, &echo)?;

    let mut figs: Vec<Fig> = Vec::new();
    if let Some(f) = Frame::load(dir, "redundancy.csv")? {
        figs.push(fig02_redundancy(&f)?);
    }
    if let Some(f) = Frame::load(dir, "coefficients.csv")? {
        figs.extend(fig04_noiseless_coefficients(&f)?);
        figs.push(fig05_zero_frequency_real(&f)?);
        figs.push(fig06_coefficient_means(&f)?);
        figs.push(fig07_coefficient_rel_std(&f)?);
        figs.push(fig08_occupancy(&f)?);
    }
    if let Some(f) = Frame::load(dir, "expressibility.csv")? {
        figs.push(fig11_expressibility(&f)?);
    }
    if let Some(f) = Frame::load(dir, "entanglement.csv")? {
        figs.push(fig12_entanglement(&f)?);
        figs.extend(fig13_measure_compare(&f)?);
    }
    if let Some(f) = Frame::load(dir, "training.csv")? {
        figs.push(fig09_training_mse(&f)?);
        figs.extend(fig19_entangling_during_training(&f)?);
        if let Some(trace) = Frame::load(dir, "coefficients_trace.csv")? {
            figs.push(fig10_coefficient_gaps(&f, &trace)?);
        }
    }

    let mut emitted: Vec<PathBuf> = Vec::new();
    for fig in &figs {
        emitted.push(ctx.write_csv(fig.name, fig.header, &fig.rows)?);
    }
    if args.images {
        for fig in &figs {
            let Some((title, x_label, y_label, series)) = &fig.chart else {
                continue;
            };
            if series.is_empty() || series.len() > MAX_IMAGE_SERIES {
                eprintln!(
                    "warning: skipping image for {} ({} series)",
                    fig.name,
                    series.len()
                );
                continue;
            }
            let svg = plot::line_chart(title, x_label, y_label, series);
            let image_name = fig.name.replace(".csv", ".svg");
            if let Err(e) = ctx.write_text(&image_name, &svg) {
                eprintln!("warning: could not render {image_name}: {e}");
            }
        }
    }
    let _ = emitted;
    ctx.finish(&[], Vec::new())
}

fn fig02_redundancy(f: &Frame) -> Result<Fig> {
    let omega = f.col("omega")?;
    let red = f.col("redundancy")?;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for row in &f.rows {
        let keys = omega_keys(&row[omega])?;
        rows.push(format!("{},{}", row[omega], row[red]));
        points.push((first_component(&keys), f.num(row, red)?));
    }
    Ok(Fig {
        name: "fig02_redundancy.csv",
        header: "omega,redundancy",
        rows,
        chart: Some((
            "spectrum redundancy".into(),
            "omega".into(),
            "|R(omega)|".into(),
            vec![Series {
                label: "redundancy".into(),
                points,
            }],
        )),
    })
}

/// Rows of the noiseless arm only (level 0 of the first noise kind; all
/// kinds produce identical level-0 rows because the parameter streams
/// depend only on the seed).
fn noiseless_rows(f: &Frame, token_col: usize, level_col: usize) -> Result<Vec<&Vec<String>>> {
    let mut first_token: Option<&str> = None;
    let mut out = Vec::new();
    for row in &f.rows {
        if f.num(row, level_col)? != 0.0 {
            continue;
        }
        let token = first_token.get_or_insert(&row[token_col]);
        if row[token_col] == **token {
            out.push(row);
        }
    }
    Ok(out)
}

fn fig04_noiseless_coefficients(f: &Frame) -> Result<Option<Fig>> {
    let (tok, lvl) = (f.col("noise_type")?, f.col("noise_level")?);
    let (omega, absc) = (f.col("omega")?, f.col("abs_mean")?);
    let mut groups: Groups = BTreeMap::new();
    for row in noiseless_rows(f, tok, lvl)? {
        groups
            .entry(omega_keys(&row[omega])?)
            .or_default()
            .push(f.num(row, absc)?);
    }
    if groups.is_empty() {
        return Ok(None);
    }
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{}",
            render_omega(key),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        points.push((first_component(key), mean));
    }
    Ok(Some(Fig {
        name: "fig04_noiseless_coefficients.csv",
        header: "omega,abs_mean_mean,abs_mean_std,n_seeds",
        rows,
        chart: Some((
            "noiseless coefficient magnitudes".into(),
            "omega".into(),
            "mean |c|".into(),
            vec![Series {
                label: "noiseless".into(),
                points,
            }],
        )),
    }))
}

fn fig05_zero_frequency_real(f: &Frame) -> Result<Fig> {
    let (tok, lvl) = (f.col("noise_type")?, f.col("noise_level")?);
    let (omega, re) = (f.col("omega")?, f.col("re_mean")?);
    let mut groups: Groups = BTreeMap::new();
    for row in &f.rows {
        let keys = omega_keys(&row[omega])?;
        if keys.iter().any(|k| !matches!(k, Key::Num(v) if *v == 0.0)) {
            continue;
        }
        groups
            .entry(vec![
                Key::Text(row[tok].clone()),
                Key::Num(f.num(row, lvl)?),
            ])
            .or_default()
            .push(f.num(row, re)?);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let Key::Num(level) = key[1] {
            series.entry(key[0].render()).or_default().push((level, mean));
        }
    }
    Ok(Fig {
        name: "fig05_zero_frequency_real.csv",
        header: "noise_type,noise_level,re_mean_mean,re_mean_std,n_seeds",
        rows,
        chart: Some((
            "zero-frequency coefficient shift".into(),
            "noise level".into(),
            "mean Re c0".into(),
            to_series(series),
        )),
    })
}

fn grouped_by_level_and_omega(f: &Frame, value_col: usize) -> Result<Groups> {
    let (tok, lvl, omega) = (f.col("noise_type")?, f.col("noise_level")?, f.col("omega")?);
    let mut groups: Groups = BTreeMap::new();
    for row in &f.rows {
        let mut key = vec![
            Key::Text(row[tok].clone()),
            Key::Num(f.num(row, lvl)?),
        ];
        key.extend(omega_keys(&row[omega])?);
        groups.entry(key).or_default().push(f.num(row, value_col)?);
    }
    Ok(groups)
}

fn level_omega_fig(
    f: &Frame,
    value_col: usize,
    name: &'static str,
    header: &'static str,
    title: &str,
    y_label: &str,
) -> Result<Fig> {
    let groups = grouped_by_level_and_omega(f, value_col)?;
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            render_omega(&key[2..]),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let Key::Num(level) = key[1] {
            let label = format!("{} w={}", key[0].render(), render_omega(&key[2..]));
            series.entry(label).or_default().push((level, mean));
        }
    }
    Ok(Fig {
        name,
        header,
        rows,
        chart: Some((
            title.into(),
            "noise level".into(),
            y_label.into(),
            to_series(series),
        )),
    })
}

fn fig06_coefficient_means(f: &Frame) -> Result<Fig> {
    level_omega_fig(
        f,
        f.col("abs_mean")?,
        "fig06_coefficient_means.csv",
        "noise_type,noise_level,omega,abs_mean_mean,abs_mean_std,n_seeds",
        "coefficient magnitude vs noise",
        "mean |c|",
    )
}

fn fig07_coefficient_rel_std(f: &Frame) -> Result<Fig> {
    level_omega_fig(
        f,
        f.col("rel_std")?,
        "fig07_coefficient_rel_std.csv",
        "noise_type,noise_level,omega,rel_std_mean,rel_std_std,n_seeds",
        "relative coefficient spread vs noise",
        "mean rel std",
    )
}

fn fig08_occupancy(f: &Frame) -> Result<Fig> {
    let (tok, lvl) = (f.col("noise_type")?, f.col("noise_level")?);
    let (omega, absc, seed) = (f.col("omega")?, f.col("abs_mean")?, f.col("seed")?);
    // occupancy per (kind, level, seed), then stats over seeds
    let mut counts: BTreeMap<Vec<Key>, f64> = BTreeMap::new();
    for row in &f.rows {
        let keys = omega_keys(&row[omega])?;
        let cell = vec![
            Key::Text(row[tok].clone()),
            Key::Num(f.num(row, lvl)?),
            Key::Text(row[seed].clone()),
        ];
        let entry = counts.entry(cell).or_default();
        if omega_is_canonical(&keys) && f.num(row, absc)? > OCCUPANCY_THRESHOLD {
            *entry += 1.0;
        }
    }
    let mut groups: Groups = BTreeMap::new();
    for (cell, count) in counts {
        groups
            .entry(cell[..2].to_vec())
            .or_default()
            .push(count);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let Key::Num(level) = key[1] {
            series.entry(key[0].render()).or_default().push((level, mean));
        }
    }
    Ok(Fig {
        name: "fig08_spectrum_occupancy.csv",
        header: "noise_type,noise_level,occupancy_mean,occupancy_std,n_seeds",
        rows,
        chart: Some((
            "occupied frequencies vs noise".into(),
            "noise level".into(),
            "occupied bins".into(),
            to_series(series),
        )),
    })
}

fn fig09_training_mse(f: &Frame) -> Result<Fig> {
    let (tok, lvl, step, mse) = (
        f.col("noise_type")?,
        f.col("noise_level")?,
        f.col("step")?,
        f.col("mse")?,
    );
    let mut groups: Groups = BTreeMap::new();
    for row in &f.rows {
        groups
            .entry(vec![
                Key::Text(row[tok].clone()),
                Key::Num(f.num(row, lvl)?),
                Key::Num(f.num(row, step)?),
            ])
            .or_default()
            .push(f.num(row, mse)?);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            key[2].render(),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let (Key::Num(step), Key::Num(_)) = (&key[2], &key[1]) {
            let label = format!("{} {}", key[0].render(), key[1].render());
            series.entry(label).or_default().push((*step, mean));
        }
    }
    Ok(Fig {
        name: "fig09_training_mse.csv",
        header: "noise_type,noise_level,step,mse_mean,mse_std,n_runs",
        rows,
        chart: Some((
            "training loss".into(),
            "step".into(),
            "mean MSE".into(),
            to_series(series),
        )),
    })
}

fn fig10_coefficient_gaps(train: &Frame, trace: &Frame) -> Result<Fig> {
    let (tid, ttok, tlvl) = (
        train.col("run_id")?,
        train.col("noise_type")?,
        train.col("noise_level")?,
    );
    let mut arm_of: BTreeMap<&str, (&str, f64)> = BTreeMap::new();
    for row in &train.rows {
        arm_of
            .entry(&row[tid])
            .or_insert((&row[ttok], train.num(row, tlvl)?));
    }
    let (rid, step, omega, delta) = (
        trace.col("run_id")?,
        trace.col("step")?,
        trace.col("omega")?,
        trace.col("delta_c")?,
    );
    let mut groups: Groups = BTreeMap::new();
    for row in &trace.rows {
        let Some((token, level)) = arm_of.get(row[rid].as_str()) else {
            continue;
        };
        let mut key = vec![Key::Text(token.to_string()), Key::Num(*level)];
        key.push(Key::Num(trace.num(row, step)?));
        key.extend(omega_keys(&row[omega])?);
        groups.entry(key).or_default().push(trace.num(row, delta)?);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            key[2].render(),
            render_omega(&key[3..]),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let Key::Num(step) = key[2] {
            let label = format!(
                "{} {} w={}",
                key[0].render(),
                key[1].render(),
                render_omega(&key[3..])
            );
            series.entry(label).or_default().push((step, mean));
        }
    }
    Ok(Fig {
        name: "fig10_coefficient_gaps.csv",
        header: "noise_type,noise_level,step,omega,delta_c_mean,delta_c_std,n_runs",
        rows,
        chart: Some((
            "coefficient gap during training".into(),
            "step".into(),
            "mean |Δc|".into(),
            to_series(series),
        )),
    })
}

fn fig11_expressibility(f: &Frame) -> Result<Fig> {
    let (tok, lvl, kl) = (
        f.col("noise_type")?,
        f.col("noise_level")?,
        f.col("kl_divergence")?,
    );
    let mut groups: Groups = BTreeMap::new();
    for row in &f.rows {
        groups
            .entry(vec![
                Key::Text(row[tok].clone()),
                Key::Num(f.num(row, lvl)?),
            ])
            .or_default()
            .push(f.num(row, kl)?);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (kl_mean, kl_std) = mean_std(values);
        let inverses: Vec<f64> = values.iter().map(|v| 1.0 / v).collect();
        let (inv_mean, inv_std) = mean_std(&inverses);
        rows.push(format!(
            "{},{},{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            fmt_value(kl_mean),
            fmt_value(kl_std),
            fmt_value(inv_mean),
            fmt_value(inv_std),
            values.len()
        ));
        if let Key::Num(level) = key[1] {
            series
                .entry(key[0].render())
                .or_default()
                .push((level, kl_mean));
        }
    }
    Ok(Fig {
        name: "fig11_expressibility.csv",
        header: "noise_type,noise_level,kl_mean,kl_std,inv_kl_mean,inv_kl_std,n_seeds",
        rows,
        chart: Some((
            "expressibility vs noise".into(),
            "noise level".into(),
            "mean KL divergence".into(),
            to_series(series),
        )),
    })
}

fn fig12_entanglement(f: &Frame) -> Result<Fig> {
    let (tok, lvl, measure, q) = (
        f.col("noise_type")?,
        f.col("noise_level")?,
        f.col("measure")?,
        f.col("mean_q")?,
    );
    let mut groups: Groups = BTreeMap::new();
    for row in &f.rows {
        groups
            .entry(vec![
                Key::Text(row[tok].clone()),
                Key::Num(f.num(row, lvl)?),
                Key::Text(row[measure].clone()),
            ])
            .or_default()
            .push(f.num(row, q)?);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            key[2].render(),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let Key::Num(level) = key[1] {
            let label = format!("{} {}", key[0].render(), key[2].render());
            series.entry(label).or_default().push((level, mean));
        }
    }
    Ok(Fig {
        name: "fig12_entanglement.csv",
        header: "noise_type,noise_level,measure,q_mean,q_std,n_seeds",
        rows,
        chart: Some((
            "entangling capability vs noise".into(),
            "noise level".into(),
            "mean Q".into(),
            to_series(series),
        )),
    })
}

fn fig13_measure_compare(f: &Frame) -> Result<Option<Fig>> {
    let (tok, lvl, measure, q) = (
        f.col("noise_type")?,
        f.col("noise_level")?,
        f.col("measure")?,
        f.col("mean_q")?,
    );
    let mut groups: Groups = BTreeMap::new();
    for row in noiseless_rows(f, tok, lvl)? {
        groups
            .entry(vec![Key::Text(row[measure].clone())])
            .or_default()
            .push(f.num(row, q)?);
    }
    if groups.is_empty() {
        return Ok(None);
    }
    let rows = groups
        .iter()
        .map(|(key, values)| {
            let (mean, std) = mean_std(values);
            format!(
                "{},{},{},{}",
                key[0].render(),
                fmt_value(mean),
                fmt_value(std),
                values.len()
            )
        })
        .collect();
    Ok(Some(Fig {
        name: "fig13_measure_compare.csv",
        header: "measure,q_mean,q_std,n_seeds",
        rows,
        chart: None,
    }))
}

fn fig19_entangling_during_training(f: &Frame) -> Result<Option<Fig>> {
    let (tok, lvl, step, q) = (
        f.col("noise_type")?,
        f.col("noise_level")?,
        f.col("step")?,
        f.col("entangling_q")?,
    );
    let mut groups: Groups = BTreeMap::new();
    for row in &f.rows {
        if row[q].is_empty() {
            continue;
        }
        groups
            .entry(vec![
                Key::Text(row[tok].clone()),
                Key::Num(f.num(row, lvl)?),
                Key::Num(f.num(row, step)?),
            ])
            .or_default()
            .push(f.num(row, q)?);
    }
    if groups.is_empty() {
        return Ok(None);
    }
    let mut rows = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (key, values) in &groups {
        let (mean, std) = mean_std(values);
        rows.push(format!(
            "{},{},{},{},{},{}",
            key[0].render(),
            key[1].render(),
            key[2].render(),
            fmt_value(mean),
            fmt_value(std),
            values.len()
        ));
        if let Key::Num(step) = key[2] {
            let label = format!("{} {}", key[0].render(), key[1].render());
            series.entry(label).or_default().push((step, mean));
        }
    }
    Ok(Some(Fig {
        name: "fig19_entangling_during_training.csv",
        header: "noise_type,noise_level,step,q_mean,q_std,n_runs",
        rows,
        chart: Some((
            "entangling capability during training".into(),
            "step".into(),
            "mean Q".into(),
            to_series(series),
        )),
    }))
}

fn to_series(map: BTreeMap<String, Vec<(f64, f64)>>) -> Vec<Series> {
    map.into_iter()
        .map(|(label, points)| Series { label, points })
        .collect()
}
