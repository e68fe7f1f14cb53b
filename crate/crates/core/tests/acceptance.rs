//! Acceptance suite: every release gate as one test, each printing a
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). The gates are property-based plus trend reproduction;
//! expected values come from independent oracles computed here, never from
//! the code paths under test.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use peelcolor_core::anneal::{SaSchedule, TimingConstants};
use peelcolor_core::classical::{clique_removal, ramsey, sample_is, SamplerParams};
use peelcolor_core::color::{
    exact_chromatic_number, greedy_color, ClassicalSampler, IsSampler, QuboAnnealSampler,
};
use peelcolor_core::gen::{generate_planted, generate_test_set};
use peelcolor_core::graph::Graph;
use peelcolor_core::metrics::{repetitions_r, time_to_solution_us};
use peelcolor_core::qubo::{brute_force_minima, gc_qubo, gc_variable_index, mis_qubo};
use peelcolor_core::sweep::{run_sweep, BenchConfig, SamplerKind, SweepResult};

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Subset-enumeration MIS oracle, independent of the library's set
/// predicates: works directly off the edge list with bit masks.
fn mis_oracle(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<u64>) {
    let mut best = 0usize;
    let mut masks = Vec::new();
    for mask in 0u64..(1 << n) {
        if edges
            .iter()
            .any(|&(u, v)| (mask >> u) & 1 == 1 && (mask >> v) & 1 == 1)
        {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best {
            best = size;
            masks.clear();
            masks.push(mask);
        } else if size == best {
            masks.push(mask);
        }
    }
    (best, masks)
}

fn report(name: &str, elapsed: Duration) {
    println!("[acceptance] {name}: PASS ({:.2}s)", elapsed.as_secs_f64());
}

// ----------------------------------------------------------------------------
// 1. Proper-coloring invariant under fuzz, all samplers
// ----------------------------------------------------------------------------

#[test]
fn proper_coloring_invariant_fuzz() {
    let start = Instant::now();
    let s_values = [1usize, 10, 30];
    let failures: usize = (0..1000usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0001 + i as u64);
            let n = rng.random_range(0..=40);
            let p = rng.random_range(0.05..0.95);
            let g = random_graph(&mut rng, n, p);
            let s = s_values[(i / 3) % s_values.len()];
            let sampler: Box<dyn IsSampler> = match i % 3 {
                0 => Box::new(ClassicalSampler::default()),
                1 => Box::new(QuboAnnealSampler::sa(
                    2.0,
                    SaSchedule::default(),
                    TimingConstants::default(),
                )),
                _ => Box::new(QuboAnnealSampler::random(2.0, TimingConstants::default())),
            };
            let run = greedy_color(&g, sampler.as_ref(), s, 10, &mut rng);
            let proper = run.coloring.is_proper(&g).unwrap();
            let total = run.coloring.assignment().len() == g.n();
            let consistent = run.k_used == run.coloring.num_colors();
            usize::from(!(proper && total && consistent))
        })
        .sum();
    assert_eq!(
        failures, 0,
        "{failures}/1000 runs broke the coloring contract"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "took {elapsed:?}, budget 5 min"
    );
    report(
        "proper-coloring invariant (1000 fuzzed runs, 3 samplers)",
        elapsed,
    );
}

// ----------------------------------------------------------------------------
// 2. MIS QUBO equivalence against the enumeration oracle
// ----------------------------------------------------------------------------

#[test]
fn mis_qubo_matches_enumeration_oracle() {
    let start = Instant::now();
    let mismatches: usize = (0..200usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0002 + i as u64);
            let n = rng.random_range(1..=12);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let (mis_size, mis_masks) = mis_oracle(n, g.edges());
            let mut bad = 0usize;
            for alpha in [2.0, 3.0] {
                let (min_energy, argmins) =
                    brute_force_minima(&mis_qubo(&g, alpha).unwrap()).unwrap();
                let got_masks: Vec<u64> = argmins
                    .iter()
                    .map(|a| {
                        a.bits()
                            .iter()
                            .enumerate()
                            .fold(0u64, |m, (j, &b)| m | ((b as u64) << j))
                    })
                    .collect();
                if min_energy != -(mis_size as f64) || got_masks != mis_masks {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    assert_eq!(
        mismatches, 0,
        "{mismatches} (graph, alpha) cases disagreed with the oracle"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "took {elapsed:?}, budget 2 min"
    );
    report("MIS QUBO equivalence (200 graphs, alpha in {2,3})", elapsed);
}

// ----------------------------------------------------------------------------
// 3. Exact-coloring QUBO: zero energy exactly on one-hot proper colorings
// ----------------------------------------------------------------------------

#[test]
fn gc_qubo_zero_energy_characterization() {
    let start = Instant::now();
    let violations: usize = (0..50usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0003 + i as u64);
            let n = rng.random_range(1..=6);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let mut bad = 0usize;
            for k in [2usize, 3] {
                let q = gc_qubo(&g, k);
                for mask in 0u64..(1 << (n * k)) {
                    let x = peelcolor_core::qubo::Assignment::from_mask(mask, n * k);
                    let energy = q.energy(&x).unwrap();
                    // One-hot decode, independent of the builder.
                    let mut colors = Vec::with_capacity(n);
                    let mut one_hot = true;
                    for v in 0..n {
                        let lit: Vec<usize> = (0..k)
                            .filter(|&c| x.bit(gc_variable_index(v, k, c)))
                            .collect();
                        if lit.len() == 1 {
                            colors.push(lit[0]);
                        } else {
                            one_hot = false;
                            break;
                        }
                    }
                    let proper = one_hot && g.edges().iter().all(|&(u, v)| colors[u] != colors[v]);
                    let ok = if proper { energy == 0.0 } else { energy >= 1.0 };
                    if !ok {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    assert_eq!(
        violations, 0,
        "{violations} assignments broke the zero-energy characterization"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "took {elapsed:?}, budget 2 min"
    );
    report(
        "coloring QUBO zero-energy characterization (50 graphs, k in {2,3})",
        elapsed,
    );
}

// ----------------------------------------------------------------------------
// 4. Metric formulas
// ----------------------------------------------------------------------------

#[test]
fn metric_formula_table() {
    let start = Instant::now();
    assert_eq!(repetitions_r(0.5, 0.99), Some(7));
    assert_eq!(repetitions_r(0.99, 0.99), Some(1));
    assert_eq!(repetitions_r(0.0, 0.99), None);
    assert_eq!(repetitions_r(1.0, 0.99), Some(1));
    assert_eq!(repetitions_r(0.9, 0.99), Some(2));
    assert_eq!(repetitions_r(0.1, 0.99), Some(44)); // ceil(ln .01 / ln .9)

    assert_eq!(time_to_solution_us(0.5, 10_000.0, 0.99), Some(70_000.0));
    assert_eq!(time_to_solution_us(1.0, 10_000.0, 0.99), Some(10_000.0));
    assert_eq!(time_to_solution_us(0.0, 10_000.0, 0.99), None);
    assert_eq!(time_to_solution_us(0.9, 250.0, 0.99), Some(500.0));
    report("metric formulas (R and TTS table)", start.elapsed());
}

// ----------------------------------------------------------------------------
// 5. Classical sampler validity under fuzz
// ----------------------------------------------------------------------------

#[test]
fn classical_sampler_validity_fuzz() {
    let start = Instant::now();
    let params = SamplerParams::default();
    let failures: usize = (0..1000usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0_0005 + i as u64);
            let n = rng.random_range(0..=40);
            let p = rng.random_range(0.05..0.95);
            let g = random_graph(&mut rng, n, p);
            let mut bad = 0usize;

            let r = ramsey(&g, &mut rng);
            if !g.is_clique(&r.clique) || !g.is_independent(&r.independent_set) {
                bad += 1;
            }
            if n >= 1 && (r.clique.is_empty() || r.independent_set.is_empty()) {
                bad += 1;
            }

            let (iset, cliques) = clique_removal(&g, &mut rng);
            if !g.is_independent(&iset) {
                bad += 1;
            }
            let mut covered = vec![false; n];
            for c in &cliques {
                if !g.is_clique(c) {
                    bad += 1;
                }
                for v in c.iter() {
                    if covered[v] {
                        bad += 1; // overlap
                    }
                    covered[v] = true;
                }
            }
            if covered.iter().any(|&b| !b) {
                bad += 1; // not a cover
            }

            let set = sample_is(&g, &params, &mut rng);
            if !g.is_independent(&set) {
                bad += 1;
            }
            if n >= 1 && set.is_empty() {
                bad += 1;
            }
            bad
        })
        .sum();
    assert_eq!(failures, 0, "{failures} sampler contract violations");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(180),
        "took {elapsed:?}, budget 3 min"
    );
    report(
        "classical sampler validity (1000 fuzzed calls each)",
        elapsed,
    );
}

// ----------------------------------------------------------------------------
// 6. Generator contract
// ----------------------------------------------------------------------------

#[test]
fn generator_contract() {
    let start = Instant::now();
    let mut total_edges = 0usize;
    for seed in 0..1000u64 {
        let inst = generate_planted(20, 3, 4.5, 0xBEEF ^ seed).unwrap();
        assert!(
            inst.planted_coloring.is_proper(&inst.graph).unwrap(),
            "planted coloring is not proper (seed {seed})"
        );
        assert!(inst.planted_coloring.num_colors() <= 3);
        for &(u, v) in inst.graph.edges() {
            assert_ne!(
                inst.planted_coloring.color_of(u),
                inst.planted_coloring.color_of(v),
                "in-class edge ({u},{v}) at seed {seed}"
            );
        }
        total_edges += inst.graph.m();
    }
    let mean = total_edges as f64 / 1000.0;
    assert!(
        (mean - 90.0).abs() < 90.0 * 0.05,
        "mean edge count {mean} outside 5% of 90"
    );

    // Ground truth: the planted bound is real.
    for seed in 0..20u64 {
        let inst = generate_planted(12, 3, 4.5, seed).unwrap();
        let chi = exact_chromatic_number(&inst.graph).unwrap();
        assert!(
            chi <= 3,
            "chi = {chi} exceeds the planted bound at seed {seed}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(180),
        "took {elapsed:?}, budget 3 min"
    );
    report(
        "generator contract (1000 instances at n=20; oracle at n=12)",
        elapsed,
    );
}

// ----------------------------------------------------------------------------
// 7. Modeled processor time
// ----------------------------------------------------------------------------

#[test]
fn modeled_qpu_time_exactness() {
    let start = Instant::now();
    for (t_program, seed) in [(0.0, 21u64), (125.0, 22u64)] {
        let timing = TimingConstants {
            t_program_us: t_program,
            ..TimingConstants::default()
        };
        let inst = generate_planted(20, 3, 4.5, seed).unwrap();
        let s = 30;
        let sampler = QuboAnnealSampler::sa(2.0, SaSchedule::default(), timing);
        let run = greedy_color(
            &inst.graph,
            &sampler,
            s,
            10,
            &mut ChaCha8Rng::seed_from_u64(seed),
        );
        // The read-count identity presumes every iteration ended with a
        // productive sampling round (no single-vertex fallback fired).
        assert!(run.per_iteration.iter().all(|log| log.candidates > 0));
        let expected = (s * (run.k_used + run.r_a)) as f64 * 370.0 + t_program;
        assert_eq!(
            run.qpu_modeled_us,
            Some(expected),
            "modeled time off for s={s}, k={}, r_a={}, t_program={t_program}",
            run.k_used,
            run.r_a
        );
    }
    report(
        "modeled processor time = s·(k+r_a)·370us + t_program, exact",
        start.elapsed(),
    );
}

// ----------------------------------------------------------------------------
// 8 & 9. Trend reproduction and byte-level reproducibility
// ----------------------------------------------------------------------------

const TREND_SEED: u64 = 0xDECADE;

fn trend_config() -> BenchConfig {
    BenchConfig {
        samplers: vec![SamplerKind::Classical, SamplerKind::Qubo],
        s_values: vec![1, 30],
        runs_per_setting: 10,
        master_seed: TREND_SEED,
        ..BenchConfig::default()
    }
}

fn trend_sweep() -> &'static SweepResult {
    static SWEEP: OnceLock<SweepResult> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let set = generate_test_set(&[20, 40, 60], 10, 3, 4.5, TREND_SEED).unwrap();
        run_sweep(&set.instances, &trend_config()).unwrap()
    })
}

#[test]
fn trend_reproduction_across_graph_sizes() {
    let start = Instant::now();
    let sweep = trend_sweep();
    let sizes = [20usize, 40, 60];

    for sampler in ["classical", "qubo"] {
        for &s in &[1usize, 30] {
            let series: Vec<_> = sizes
                .iter()
                .map(|&n| {
                    sweep
                        .groups
                        .iter()
                        .find(|g| g.n == n && g.sampler == sampler && g.s == s)
                        .unwrap_or_else(|| panic!("missing group n={n} {sampler} s={s}"))
                })
                .collect();
            for pair in series.windows(2) {
                assert!(
                    pair[1].success_median <= pair[0].success_median + 1e-12,
                    "{sampler} s={s}: median success rose from n={} ({}) to n={} ({})",
                    pair[0].n,
                    pair[0].success_median,
                    pair[1].n,
                    pair[1].success_median
                );
                let non_decreasing = match (pair[0].tts_median_us, pair[1].tts_median_us) {
                    (_, None) => true,        // later is unbounded
                    (None, Some(_)) => false, // unbounded cannot shrink
                    (Some(a), Some(b)) => b >= a - 1e-9,
                };
                assert!(
                    non_decreasing,
                    "{sampler} s={s}: median TTS fell from n={} ({:?}) to n={} ({:?})",
                    pair[0].n, pair[0].tts_median_us, pair[1].n, pair[1].tts_median_us
                );
            }
        }
    }

    // Headline direction at n=20, s=1: hybrid modeled-inclusive wallclock
    // below the classical wallclock. This hinges on the annealing stand-in's
    // speed relative to real hardware constants, so it is reported, not
    // asserted.
    let medians = |sampler: &str| {
        sweep
            .groups
            .iter()
            .find(|g| g.n == 20 && g.sampler == sampler && g.s == 1)
            .map(|g| g.wallclock_median_us)
            .unwrap()
    };
    let hybrid = medians("qubo");
    let classical = medians("classical");
    let direction = if hybrid < classical { "PASS" } else { "FAIL" };
    println!(
        "[acceptance] headline wallclock comparison at n=20, s=1 (reported, non-gating): {direction} \
         (qubo modeled-inclusive {hybrid:.1}us vs classical {classical:.1}us)"
    );

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1800),
        "took {elapsed:?}, budget 30 min"
    );
    report(
        "trend reproduction (success non-increasing, TTS non-decreasing in n)",
        elapsed,
    );
}

#[test]
fn sweep_reproducibility_modulo_timing() {
    let start = Instant::now();
    let first = trend_sweep();
    let set = generate_test_set(&[20, 40, 60], 10, 3, 4.5, TREND_SEED).unwrap();
    let second = run_sweep(&set.instances, &trend_config()).unwrap();

    // runs.csv rows with the measured wallclock column (index 10) blanked.
    let strip = |sweep: &SweepResult| -> Vec<String> {
        sweep
            .records
            .iter()
            .map(|r| {
                let row = r.to_runs_row();
                let mut fields: Vec<&str> = row.split(',').collect();
                fields[10] = "";
                fields.join(",")
            })
            .collect()
    };
    assert_eq!(
        strip(first),
        strip(&second),
        "rerun with the same master seed changed non-timing columns"
    );
    report(
        "sweep reproducibility (byte-identical modulo timing columns)",
        start.elapsed(),
    );
}
