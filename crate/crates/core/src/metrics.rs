//! The three benchmark metrics (success probability, mean wallclock, and
//! time-to-solution) plus the order statistics the reports are built from.
//!
//! `R = ceil(ln(1−p_target) / ln(1−p_success))`, floored at 1, is the number
//! of repetitions needed to hit at least one success with probability
//! `p_target`; TTS is `R` times the mean wallclock. A success probability of
//! zero makes both unbounded, represented as `None` throughout.

use std::fmt;

use crate::color::RunResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricsError {
    EmptyResults,
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::EmptyResults => write!(f, "metrics need at least one run"),
        }
    }
}

impl std::error::Error for MetricsError {}

/// Fraction of runs that reached `k_target` colors or better.
pub fn success_probability(results: &[RunResult], k_target: usize) -> Result<f64, MetricsError> {
    if results.is_empty() {
        return Err(MetricsError::EmptyResults);
    }
    let successes = results
        .iter()
        .filter(|r| r.coloring.num_colors() <= k_target)
        .count();
    Ok(successes as f64 / results.len() as f64)
}

/// Mean per-run time in μs. Hybrid runs contribute their measured classical
/// loop plus their modeled processor time.
pub fn mean_wallclock_us(results: &[RunResult]) -> Result<f64, MetricsError> {
    if results.is_empty() {
        return Err(MetricsError::EmptyResults);
    }
    Ok(results.iter().map(RunResult::total_time_us).sum::<f64>() / results.len() as f64)
}

/// Repetitions needed to succeed at least once with probability `p_target`;
/// `None` when `p_success` is zero.
pub fn repetitions_r(p_success: f64, p_target: f64) -> Option<u64> {
    assert!(
        (0.0..=1.0).contains(&p_success),
        "p_success must be in [0, 1]"
    );
    assert!(
        (0.0..1.0).contains(&p_target) && p_target > 0.0,
        "p_target must be in (0, 1)"
    );
    if p_success == 0.0 {
        return None;
    }
    if p_success >= 1.0 {
        return Some(1);
    }
    let r = ((1.0 - p_target).ln() / (1.0 - p_success).ln()).ceil();
    Some((r as u64).max(1))
}

/// `R × t_wallclock`; unbounded propagates.
pub fn time_to_solution_us(p_success: f64, t_wallclock_us: f64, p_target: f64) -> Option<f64> {
    repetitions_r(p_success, p_target).map(|r| r as f64 * t_wallclock_us)
}

// ============================================================================
// Order statistics
// ============================================================================

pub fn mean(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation.
pub fn stddev(values: &[f64]) -> f64 {
    let mu = mean(values);
    (values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Linear-interpolation percentile, `q` in [0, 1]; input need not be sorted.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty());
    assert!((0.0..=1.0).contains(&q));
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in metric values"));
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

pub fn median(values: &[f64]) -> f64 {
    percentile(values, 0.5)
}

/// Median over values that may be unbounded (`None` = +∞). If at least half
/// the group is unbounded the median is unbounded; otherwise the unbounded
/// entries are excluded rather than assigned an invented magnitude.
pub fn median_with_unbounded(values: &[Option<f64>]) -> Option<f64> {
    assert!(!values.is_empty());
    let bounded: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    let unbounded = values.len() - bounded.len();
    if unbounded * 2 >= values.len() {
        return None;
    }
    Some(median(&bounded))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Coloring;
    use std::time::Duration;

    fn run_with(colors: usize, wallclock_us: f64, modeled_us: Option<f64>) -> RunResult {
        RunResult {
            coloring: Coloring::compacted(&(0..colors.max(1)).collect::<Vec<_>>()),
            k_used: colors,
            r_a: 0,
            wallclock: Duration::from_secs_f64(wallclock_us / 1e6),
            qpu_modeled_us: modeled_us,
            per_iteration: Vec::new(),
        }
    }

    #[test]
    fn success_probability_counts_k_or_better() {
        let runs: Vec<RunResult> = (0..10)
            .map(|i| run_with(if i < 7 { 3 } else { 4 }, 10.0, None))
            .collect();
        assert_eq!(success_probability(&runs, 3).unwrap(), 0.7);

        let all_good: Vec<RunResult> = (0..4).map(|_| run_with(2, 10.0, None)).collect();
        assert_eq!(success_probability(&all_good, 3).unwrap(), 1.0);

        let all_bad: Vec<RunResult> = (0..4).map(|_| run_with(5, 10.0, None)).collect();
        assert_eq!(success_probability(&all_bad, 3).unwrap(), 0.0);

        assert_eq!(success_probability(&[], 3), Err(MetricsError::EmptyResults));
    }

    #[test]
    fn mean_wallclock_examples() {
        let runs = vec![
            run_with(3, 10_000.0, None),
            run_with(3, 20_000.0, None),
            run_with(3, 30_000.0, None),
        ];
        assert_eq!(mean_wallclock_us(&runs).unwrap(), 20_000.0);

        let single = vec![run_with(3, 12_500.0, None)];
        assert!((mean_wallclock_us(&single).unwrap() - 12_500.0).abs() < 1e-9);

        // Hybrid runs add their modeled time: 5 ms classical + 33.3 ms modeled.
        let hybrid = vec![run_with(3, 5_000.0, Some(33_300.0))];
        assert!((mean_wallclock_us(&hybrid).unwrap() - 38_300.0).abs() < 1e-9);

        assert_eq!(mean_wallclock_us(&[]), Err(MetricsError::EmptyResults));
    }

    #[test]
    fn repetition_counts() {
        assert_eq!(repetitions_r(0.5, 0.99), Some(7));
        assert_eq!(repetitions_r(0.99, 0.99), Some(1));
        assert_eq!(repetitions_r(0.0, 0.99), None);
        assert_eq!(repetitions_r(1.0, 0.99), Some(1));
        // Floor of 1 even when a single run all but guarantees success.
        assert_eq!(repetitions_r(0.999999, 0.5), Some(1));
    }

    #[test]
    fn time_to_solution_examples() {
        assert_eq!(time_to_solution_us(0.5, 10_000.0, 0.99), Some(70_000.0));
        assert_eq!(time_to_solution_us(1.0, 10_000.0, 0.99), Some(10_000.0));
        assert_eq!(time_to_solution_us(0.0, 10_000.0, 0.99), None);
    }

    #[test]
    fn repetitions_monotone_in_success_probability() {
        let mut last = u64::MAX;
        for step in 1..=100 {
            let p = step as f64 / 100.0;
            let r = repetitions_r(p, 0.99).unwrap();
            assert!(r <= last, "R increased from {last} to {r} at p={p}");
            last = r;
        }
    }

    #[test]
    fn order_statistics() {
        let values = [4.0, 1.0, 3.0, 2.0];
        assert_eq!(mean(&values), 2.5);
        assert_eq!(median(&values), 2.5);
        assert_eq!(percentile(&values, 0.0), 1.0);
        assert_eq!(percentile(&values, 1.0), 4.0);
        assert!((percentile(&values, 0.4) - 2.2).abs() < 1e-12);
        assert!((stddev(&values) - (1.25f64).sqrt()).abs() < 1e-12);

        assert_eq!(median(&[7.0]), 7.0);
    }

    #[test]
    fn unbounded_median_rules() {
        // Fewer than half unbounded: excluded from the median.
        let mixed = [Some(1.0), Some(3.0), Some(2.0), None];
        assert_eq!(median_with_unbounded(&mixed), Some(2.0));

        // Half or more unbounded: the median itself is unbounded.
        let half = [Some(1.0), None];
        assert_eq!(median_with_unbounded(&half), None);
        let all = [None, None];
        assert_eq!(median_with_unbounded(&all), None);
    }
}
