//! Report emission: CSV files, the resolved-config manifest, the audit
//! sidecar of per-run colorings, and the SVG plots.
//!
//! Everything derivable is derived from runs.csv alone (via
//! [`crate::sweep::compute_stats`]), so a report can be regenerated from the
//! persisted run rows without re-executing anything.

use std::fs;
use std::path::{Path, PathBuf};

use crate::anneal::TimingConstants;
use crate::plot::{line_chart, stacked_chart, Series};
use crate::sweep::{
    BenchConfig, BenchError, GroupStats, RunRecord, SweepResult, GROUPS_CSV_HEADER,
    RUNS_CSV_HEADER, STATS_CSV_HEADER,
};

/// Paths written by [`emit_report`].
#[derive(Clone, Debug)]
pub struct ReportFiles {
    pub runs_csv: PathBuf,
    pub stats_csv: PathBuf,
    pub groups_csv: PathBuf,
    pub colorings_csv: Option<PathBuf>,
    pub manifest: PathBuf,
    pub plots: Vec<PathBuf>,
}

fn io_err(path: &Path, source: std::io::Error) -> BenchError {
    BenchError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), BenchError> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

// ============================================================================
// Emission
// ============================================================================

/// Writes the full report for a sweep into `dir` (created if needed).
pub fn emit_report(sweep: &SweepResult, dir: impl AsRef<Path>) -> Result<ReportFiles, BenchError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;

    let runs_csv = dir.join("runs.csv");
    let mut text = format!("{RUNS_CSV_HEADER}\n");
    for record in &sweep.records {
        text.push_str(&record.to_runs_row());
        text.push('\n');
    }
    write_file(&runs_csv, &text)?;

    let stats_csv = dir.join("stats.csv");
    let mut text = format!("{STATS_CSV_HEADER}\n");
    for cell in &sweep.cells {
        text.push_str(&cell.to_csv_row());
        text.push('\n');
    }
    write_file(&stats_csv, &text)?;

    let groups_csv = dir.join("groups.csv");
    let mut text = format!("{GROUPS_CSV_HEADER}\n");
    for group in &sweep.groups {
        text.push_str(&group.to_csv_row());
        text.push('\n');
    }
    write_file(&groups_csv, &text)?;

    // Audit sidecar: the coloring behind every success flag. Absent when the
    // records were reloaded from runs.csv, which does not carry assignments.
    let colorings_csv = if sweep.records.iter().any(|r| !r.assignment.is_empty()) {
        let path = dir.join("colorings.csv");
        let mut text = String::from("instance_id,sampler,s,run_index,assignment\n");
        for record in &sweep.records {
            let colors: Vec<String> = record.assignment.iter().map(|c| c.to_string()).collect();
            text.push_str(&format!(
                "{},{},{},{},{}\n",
                record.instance_id,
                record.sampler,
                record.s,
                record.run_index,
                colors.join(" ")
            ));
        }
        write_file(&path, &text)?;
        Some(path)
    } else {
        None
    };

    let manifest = dir.join("manifest.txt");
    write_file(&manifest, &manifest_string(sweep))?;

    let plots = emit_plots(sweep, dir)?;

    Ok(ReportFiles {
        runs_csv,
        stats_csv,
        groups_csv,
        colorings_csv,
        manifest,
        plots,
    })
}

fn manifest_string(sweep: &SweepResult) -> String {
    let config = &sweep.config;
    let samplers: Vec<&str> = config.samplers.iter().map(|k| k.name()).collect();
    let s_values: Vec<String> = config.s_values.iter().map(|s| s.to_string()).collect();
    format!(
        "kind = sweep\n\
         master_seed = {}\n\
         samplers = [{}]\n\
         s_values = [{}]\n\
         runs_per_setting = {}\n\
         p_target = {}\n\
         retry_cap = {}\n\
         alpha = {}\n\
         sa_sweeps = {}\n\
         sa_beta_initial = {}\n\
         sa_beta_final = {}\n\
         sa_restarts = {}\n\
         t_anneal_us = {}\n\
         t_readout_us = {}\n\
         t_delay_us = {}\n\
         t_program_us = {}\n\
         records = {}\n",
        config.master_seed,
        samplers.join(", "),
        s_values.join(", "),
        config.runs_per_setting,
        config.p_target,
        config.retry_cap,
        config.alpha,
        config.sa_schedule.sweeps,
        config.sa_schedule.beta_initial,
        config.sa_schedule.beta_final,
        config.sa_schedule.restarts,
        config.timing.t_anneal_us,
        config.timing.t_readout_us,
        config.timing.t_delay_us,
        config.timing.t_program_us,
        sweep.records.len(),
    )
}

/// Reads `p_target` back out of a sweep manifest, if present.
pub fn read_manifest_p_target(dir: impl AsRef<Path>) -> Option<f64> {
    let text = fs::read_to_string(dir.as_ref().join("manifest.txt")).ok()?;
    for line in text.lines() {
        if let Some((key, value)) = line.split_once('=') {
            if key.trim() == "p_target" {
                return value.trim().parse().ok();
            }
        }
    }
    None
}

// ============================================================================
// Plots
// ============================================================================

fn emit_plots(sweep: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let plot_dir = dir.join("plots");
    fs::create_dir_all(&plot_dir).map_err(|e| io_err(&plot_dir, e))?;
    let mut written = Vec::new();

    let mut emit = |name: &str, svg: String| -> Result<(), BenchError> {
        let path = plot_dir.join(name);
        write_file(&path, &svg)?;
        written.push(path);
        Ok(())
    };

    // vs sample count: one series per (n, sampler).
    emit(
        "success_vs_s.svg",
        metric_chart(
            &sweep.groups,
            "Success probability vs sample count",
            "sample count s",
            "median success probability",
            |g| {
                (
                    g.s as f64,
                    Some(g.success_median),
                    Some((g.success_p40, g.success_p60)),
                )
            },
            |g| format!("n={} {}", g.n, g.sampler),
        ),
    )?;
    emit(
        "wallclock_vs_s.svg",
        metric_chart(
            &sweep.groups,
            "Wallclock vs sample count",
            "sample count s",
            "median wallclock (us)",
            |g| {
                let half = g.wallclock_sigma_us / 2.0;
                (
                    g.s as f64,
                    Some(g.wallclock_median_us),
                    Some((
                        (g.wallclock_median_us - half).max(0.0),
                        g.wallclock_median_us + half,
                    )),
                )
            },
            |g| format!("n={} {}", g.n, g.sampler),
        ),
    )?;
    emit(
        "tts_vs_s.svg",
        metric_chart(
            &sweep.groups,
            "Time to solution vs sample count",
            "sample count s",
            "median TTS (us)",
            |g| (g.s as f64, g.tts_median_us, tts_band(g)),
            |g| format!("n={} {}", g.n, g.sampler),
        ),
    )?;

    // vs graph size: one series per (sampler, s).
    emit(
        "success_vs_n.svg",
        metric_chart(
            &sweep.groups,
            "Success probability vs graph size",
            "graph size n",
            "median success probability",
            |g| {
                (
                    g.n as f64,
                    Some(g.success_median),
                    Some((g.success_p40, g.success_p60)),
                )
            },
            |g| format!("{} s={}", g.sampler, g.s),
        ),
    )?;
    emit(
        "wallclock_vs_n.svg",
        metric_chart(
            &sweep.groups,
            "Wallclock vs graph size",
            "graph size n",
            "median wallclock (us)",
            |g| {
                let half = g.wallclock_sigma_us / 2.0;
                (
                    g.n as f64,
                    Some(g.wallclock_median_us),
                    Some((
                        (g.wallclock_median_us - half).max(0.0),
                        g.wallclock_median_us + half,
                    )),
                )
            },
            |g| format!("{} s={}", g.sampler, g.s),
        ),
    )?;
    emit(
        "tts_vs_n.svg",
        metric_chart(
            &sweep.groups,
            "Time to solution vs graph size",
            "graph size n",
            "median TTS (us)",
            |g| (g.n as f64, g.tts_median_us, tts_band(g)),
            |g| format!("{} s={}", g.sampler, g.s),
        ),
    )?;

    emit(
        "timing_breakdown.svg",
        timing_breakdown_chart(&sweep.records, &sweep.config.timing),
    )?;

    Ok(written)
}

fn tts_band(g: &GroupStats) -> Option<(f64, f64)> {
    match (g.tts_lo_us, g.tts_hi_us) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => None,
    }
}

/// Builds one chart from group stats. `value` yields (x, y, band); a `None` y
/// is an unbounded entry, plotted as an open marker capped above the largest
/// bounded value.
fn metric_chart(
    groups: &[GroupStats],
    title: &str,
    x_label: &str,
    y_label: &str,
    value: impl Fn(&GroupStats) -> (f64, Option<f64>, Option<(f64, f64)>),
    series_key: impl Fn(&GroupStats) -> String,
) -> String {
    let mut keys: Vec<String> = groups.iter().map(&series_key).collect();
    keys.sort();
    keys.dedup();

    let bounded_max = groups
        .iter()
        .filter_map(|g| value(g).1)
        .fold(0.0f64, f64::max);
    let cap = if bounded_max > 0.0 {
        bounded_max * 1.2
    } else {
        1.0
    };

    let mut series = Vec::new();
    for key in keys {
        let mut members: Vec<&GroupStats> =
            groups.iter().filter(|g| series_key(g) == key).collect();
        members.sort_by(|a, b| {
            value(a)
                .0
                .partial_cmp(&value(b).0)
                .expect("plot coordinates are finite")
        });
        let mut points = Vec::new();
        let mut bars = Vec::new();
        let mut capped = Vec::new();
        for g in members {
            let (x, y, band) = value(g);
            match y {
                Some(y) => {
                    points.push((x, y));
                    capped.push(false);
                    bars.push(band.unwrap_or((y, y)));
                }
                None => {
                    // Unbounded: clip to the plot ceiling, open marker.
                    points.push((x, cap));
                    capped.push(true);
                    bars.push((cap, cap));
                }
            }
        }
        let mut s = Series::new(key, points).with_bars(bars);
        s.capped = capped;
        series.push(s);
    }
    line_chart(title, x_label, y_label, &series)
}

/// Stacked mean-time-per-run breakdown vs graph size, for the hybrid sampler
/// at its smallest swept sample count. Categories from the bottom up:
/// classical loop, programming, anneal, readout, delay, and embedding,
/// which is identically zero here and labeled as out of scope.
fn timing_breakdown_chart(records: &[RunRecord], timing: &TimingConstants) -> String {
    let hybrid: Vec<&RunRecord> = records
        .iter()
        .filter(|r| r.qpu_modeled_us.is_some())
        .collect();
    let s_min = hybrid.iter().map(|r| r.s).min();
    let mut ns: Vec<usize> = hybrid.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();

    let mut classical = Vec::new();
    let mut programming = Vec::new();
    let mut anneal = Vec::new();
    let mut readout = Vec::new();
    let mut delay = Vec::new();
    let t_sample = timing.t_sample_us();

    for &n in &ns {
        let rows: Vec<&&RunRecord> = hybrid
            .iter()
            .filter(|r| r.n == n && Some(r.s) == s_min)
            .collect();
        if rows.is_empty() {
            continue;
        }
        let count = rows.len() as f64;
        let mean_classical = rows.iter().map(|r| r.wallclock_us).sum::<f64>() / count;
        // Reads per run recovered from the time model: s·(k + rejected).
        let mean_reads = rows
            .iter()
            .map(|r| (r.s * (r.k_iterations + r.rejected_rounds)) as f64)
            .sum::<f64>()
            / count;
        classical.push(mean_classical);
        programming.push(timing.t_program_us);
        if t_sample > 0.0 {
            anneal.push(mean_reads * timing.t_anneal_us);
            readout.push(mean_reads * timing.t_readout_us);
            delay.push(mean_reads * timing.t_delay_us);
        } else {
            anneal.push(0.0);
            readout.push(0.0);
            delay.push(0.0);
        }
    }

    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let zeros = vec![0.0; xs.len()];
    let categories = vec![
        ("classical".to_string(), classical),
        ("programming".to_string(), programming),
        ("anneal".to_string(), anneal),
        ("readout".to_string(), readout),
        ("delay".to_string(), delay),
        ("embed (out of scope, 0)".to_string(), zeros),
    ];
    let title = match s_min {
        Some(s) => format!("Mean time breakdown per hybrid run (s={s})"),
        None => "Mean time breakdown per hybrid run (no hybrid records)".to_string(),
    };
    stacked_chart(
        &title,
        "graph size n",
        "mean time per run (us)",
        &xs,
        &categories,
    )
}

// ============================================================================
// Regeneration
// ============================================================================

/// Rebuilds a full report from a persisted runs.csv alone.
pub fn report_from_runs_csv(
    runs_csv: &Path,
    p_target: f64,
    out_dir: impl AsRef<Path>,
) -> Result<ReportFiles, BenchError> {
    let records = crate::sweep::parse_runs_csv(runs_csv)?;
    let (cells, groups) = crate::sweep::compute_stats(&records, p_target);
    let sweep = SweepResult {
        records,
        cells,
        groups,
        config: BenchConfig {
            p_target,
            ..BenchConfig::default()
        },
    };
    emit_report(&sweep, out_dir)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anneal::SaSchedule;
    use crate::gen::generate_test_set;
    use crate::sweep::{run_sweep, SamplerKind};

    fn small_sweep() -> SweepResult {
        let set = generate_test_set(&[8, 10], 2, 3, 4.5, 11).unwrap();
        let config = BenchConfig {
            samplers: vec![SamplerKind::Classical, SamplerKind::Qubo],
            s_values: vec![1, 2],
            runs_per_setting: 2,
            master_seed: 11,
            sa_schedule: SaSchedule {
                sweeps: 50,
                ..SaSchedule::default()
            },
            ..BenchConfig::default()
        };
        run_sweep(&set.instances, &config).unwrap()
    }

    #[test]
    fn report_writes_all_files() {
        let sweep = small_sweep();
        let dir = tempfile::tempdir().unwrap();
        let files = emit_report(&sweep, dir.path()).unwrap();
        assert!(files.runs_csv.exists());
        assert!(files.stats_csv.exists());
        assert!(files.groups_csv.exists());
        assert!(files.colorings_csv.as_ref().unwrap().exists());
        assert!(files.manifest.exists());
        assert_eq!(files.plots.len(), 7);
        for plot in &files.plots {
            let svg = fs::read_to_string(plot).unwrap();
            assert!(svg.starts_with("<svg"), "{} is not SVG", plot.display());
        }

        // runs.csv: header + one line per record.
        let runs = fs::read_to_string(&files.runs_csv).unwrap();
        assert_eq!(runs.lines().count(), 1 + sweep.records.len());
        assert_eq!(runs.lines().next().unwrap(), RUNS_CSV_HEADER);

        assert_eq!(read_manifest_p_target(dir.path()), Some(0.99));
    }

    #[test]
    fn report_regenerates_from_runs_csv_alone() {
        let sweep = small_sweep();
        let dir = tempfile::tempdir().unwrap();
        let original = emit_report(&sweep, dir.path().join("first")).unwrap();

        let regen_dir = dir.path().join("second");
        report_from_runs_csv(&original.runs_csv, sweep.config.p_target, &regen_dir).unwrap();

        let stats_a = fs::read_to_string(&original.stats_csv).unwrap();
        let stats_b = fs::read_to_string(regen_dir.join("stats.csv")).unwrap();
        assert_eq!(stats_a, stats_b);

        let groups_a = fs::read_to_string(&original.groups_csv).unwrap();
        let groups_b = fs::read_to_string(regen_dir.join("groups.csv")).unwrap();
        assert_eq!(groups_a, groups_b);

        let runs_a = fs::read_to_string(&original.runs_csv).unwrap();
        let runs_b = fs::read_to_string(regen_dir.join("runs.csv")).unwrap();
        assert_eq!(runs_a, runs_b);

        // The regenerated report has no assignments to audit.
        assert!(!regen_dir.join("colorings.csv").exists());
    }

    #[test]
    fn unbounded_tts_cells_render_empty_in_csv() {
        let mut sweep = small_sweep();
        // Force one cell unbounded.
        sweep.cells[0].repetitions = None;
        sweep.cells[0].tts_us = None;
        let dir = tempfile::tempdir().unwrap();
        let files = emit_report(&sweep, dir.path()).unwrap();
        let stats = fs::read_to_string(&files.stats_csv).unwrap();
        let first_row = stats.lines().nth(1).unwrap();
        assert!(
            first_row.ends_with(",,"),
            "expected empty R and TTS columns: {first_row}"
        );
    }
}
