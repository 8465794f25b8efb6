//! Exact state-vector simulation of Grover search, and the randomized
//! schedule for an unknown number of marked items.
//!
//! Amplitudes stay real under the oracle phase flip and the inversion about
//! the mean, so the state is a plain `Vec<f64>`. Domains larger than the
//! configured cap are not simulated; measurement is then sampled from the
//! closed-form distribution, which is exact because the evolution never
//! leaves the span of the uniform marked and uniform unmarked states.

use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::InstrumentedOracle;

pub const DEFAULT_STATEVECTOR_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverConfig {
    /// Largest domain simulated with a dense state vector. Power of two.
    pub statevector_cap: usize,
    /// Growth factor of the iteration bound between rounds.
    pub growth: f64,
    /// A schedule stops once its Grover iterations reach
    /// `cutoff_factor * ceil(sqrt(N))`.
    pub cutoff_factor: f64,
}

impl Default for GroverConfig {
    fn default() -> Self {
        Self {
            statevector_cap: DEFAULT_STATEVECTOR_CAP,
            growth: 6.0 / 5.0,
            cutoff_factor: 9.0,
        }
    }
}

impl GroverConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.statevector_cap.is_power_of_two() {
            return Err(Error::Config(format!(
                "statevector cap {} is not a power of two",
                self.statevector_cap
            )));
        }
        if !(self.growth > 1.0 && self.growth.is_finite()) {
            return Err(Error::Config(format!("growth factor {} must exceed 1", self.growth)));
        }
        if !(self.cutoff_factor > 0.0 && self.cutoff_factor.is_finite()) {
            return Err(Error::Config(format!(
                "cutoff factor {} must be positive",
                self.cutoff_factor
            )));
        }
        Ok(())
    }

    /// Grover-iteration budget of one schedule over a domain of size `n`.
    pub fn cutoff(&self, domain_size: usize) -> u64 {
        let root = (domain_size as f64).sqrt().ceil();
        (self.cutoff_factor * root).ceil() as u64
    }
}

/// Search domain padded to a power of two. Indices at or beyond the logical
/// size are padding and never marked.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    logical_size: usize,
    domain_size: usize,
    marked: Vec<usize>,
}

impl SearchSpace {
    /// Evaluates `marker` once on every logical index.
    pub fn new(logical_size: usize, mut marker: impl FnMut(usize) -> bool) -> Self {
        let marked = (0..logical_size).filter(|&i| marker(i)).collect();
        Self::with_marked(logical_size, marked)
    }

    fn with_marked(logical_size: usize, marked: Vec<usize>) -> Self {
        Self {
            logical_size,
            domain_size: logical_size.next_power_of_two().max(2),
            marked,
        }
    }

    pub fn logical_size(&self) -> usize {
        self.logical_size
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn marked_count(&self) -> usize {
        self.marked.len()
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn is_marked(&self, i: usize) -> bool {
        self.marked.binary_search(&i).is_ok()
    }

    /// The `j`-th unmarked index of the full domain, in increasing order.
    fn nth_unmarked(&self, j: usize) -> usize {
        let mut idx = j;
        for &m in &self.marked {
            if m <= idx {
                idx += 1;
            } else {
                break;
            }
        }
        idx
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn uniform(n: usize) -> Self {
        let a = 1.0 / (n as f64).sqrt();
        Self { amplitudes: vec![a; n] }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Phase flip on the marked indices.
    pub fn apply_oracle(&mut self, marked: &[usize]) {
        for &i in marked {
            self.amplitudes[i] = -self.amplitudes[i];
        }
    }

    /// Inversion about the mean, `2|s><s| - I`.
    pub fn diffuse(&mut self) {
        let mean = self.amplitudes.iter().sum::<f64>() / self.amplitudes.len() as f64;
        for a in &mut self.amplitudes {
            *a = 2.0 * mean - *a;
        }
    }

    pub fn grover_iteration(&mut self, marked: &[usize]) {
        self.apply_oracle(marked);
        self.diffuse();
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// Probability of measuring one of `indices`.
    pub fn mass(&self, indices: &[usize]) -> f64 {
        indices.iter().map(|&i| self.amplitudes[i] * self.amplitudes[i]).sum()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let x: f64 = rng.gen::<f64>() * self.norm_sqr();
        let mut acc = 0.0;
        let mut last = 0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a * a;
            if p > 0.0 {
                acc += p;
                last = i;
                if x < acc {
                    return i;
                }
            }
        }
        last
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverRunStats {
    pub iterations: u64,
    pub oracle_applications: u64,
    pub measured_index: usize,
    pub success: bool,
    /// Measurement drawn from the closed form instead of a simulated state.
    pub analytic: bool,
}

/// `sin^2((2r + 1) * asin(sqrt(k / N)))`, the probability of measuring a
/// marked index after `r` iterations; zero when nothing is marked.
pub fn success_probability(n: usize, k: usize, r: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if k >= n {
        return 1.0;
    }
    let theta = (k as f64 / n as f64).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

/// `floor(pi/4 * sqrt(N / k))`.
pub fn optimal_iterations(n: usize, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::KZero);
    }
    if k >= n {
        return Ok(0);
    }
    Ok((FRAC_PI_4 * (n as f64 / k as f64).sqrt()).floor() as u64)
}

/// `r` Grover iterations from the uniform state, then one measurement.
pub fn run_grover<R: Rng + ?Sized>(s: &SearchSpace, r: u64, rng: &mut R, cap: usize) -> GroverRunStats {
    let n = s.domain_size();
    let (measured_index, analytic) = if n <= cap {
        let mut state = StateVector::uniform(n);
        for _ in 0..r {
            state.grover_iteration(s.marked());
        }
        (state.sample(rng), false)
    } else {
        let k = s.marked_count();
        let p = success_probability(n, k, r);
        let idx = if k > 0 && rng.gen::<f64>() < p {
            s.marked()[rng.gen_range(0..k)]
        } else if k < n {
            s.nth_unmarked(rng.gen_range(0..n - k))
        } else {
            s.marked()[rng.gen_range(0..k)]
        };
        (idx, true)
    };
    GroverRunStats {
        iterations: r,
        oracle_applications: r,
        measured_index,
        success: s.is_marked(measured_index),
        analytic,
    }
}

/// Seeded single run with the default state-vector cap.
pub fn grover_search(s: &SearchSpace, r: u64, rng_seed: u64) -> GroverRunStats {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    run_grover(s, r, &mut rng, DEFAULT_STATEVECTOR_CAP)
}

/// Result of one or more randomized search schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    pub found: Option<usize>,
    pub schedules: u32,
    pub rounds: u64,
    pub grover_iterations: u64,
    /// Classical marker evaluations on measured candidates, one per round.
    pub checks: u64,
    pub analytic_mode: bool,
}

impl SearchOutcome {
    pub fn oracle_applications(&self) -> u64 {
        self.grover_iterations + self.checks
    }

    fn absorb(&mut self, other: SearchOutcome) {
        self.found = other.found;
        self.schedules += other.schedules;
        self.rounds += other.rounds;
        self.grover_iterations += other.grover_iterations;
        self.checks += other.checks;
        self.analytic_mode |= other.analytic_mode;
    }
}

/// One schedule of the unknown-count search: round `i` draws an iteration
/// count uniformly below a bound that grows by `cfg.growth` (capped at
/// `sqrt(N)`), measures, and checks the candidate. Every Grover iteration and
/// every check is charged to the oracle's quantum counter.
pub fn bbht_with_rng<R: Rng + ?Sized>(
    s: &SearchSpace,
    rng: &mut R,
    o: &InstrumentedOracle<'_>,
    cfg: &GroverConfig,
) -> SearchOutcome {
    let n = s.domain_size();
    let root_n = (n as f64).sqrt();
    let cutoff = cfg.cutoff(n);
    let mut bound = 1.0f64;
    let mut out = SearchOutcome {
        schedules: 1,
        ..Default::default()
    };

    while out.grover_iterations < cutoff {
        let upper = (bound.ceil() as u64).max(1);
        let r = rng.gen_range(0..upper).min(cutoff - out.grover_iterations);
        let run = run_grover(s, r, rng, cfg.statevector_cap);
        out.rounds += 1;
        out.grover_iterations += r;
        out.checks += 1;
        out.analytic_mode |= run.analytic;
        o.record_quantum_applications(r + 1);
        if run.success {
            out.found = Some(run.measured_index);
            break;
        }
        bound = (bound * cfg.growth).min(root_n);
    }
    out
}

/// Seeded single schedule.
pub fn bbht_search(s: &SearchSpace, rng_seed: u64, o: &InstrumentedOracle<'_>, cfg: &GroverConfig) -> SearchOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    bbht_with_rng(s, &mut rng, o, cfg)
}

/// Number of schedules that drive the miss probability below `delta`,
/// `ceil(log2(1/delta))`.
pub fn restarts_for(delta: f64) -> u32 {
    (1.0 / delta).log2().ceil().max(1.0) as u32
}

/// Repeats the schedule up to `restarts` times, stopping at the first hit.
pub fn amplified_search<R: Rng + ?Sized>(
    s: &SearchSpace,
    restarts: u32,
    rng: &mut R,
    o: &InstrumentedOracle<'_>,
    cfg: &GroverConfig,
) -> SearchOutcome {
    let mut total = SearchOutcome::default();
    for _ in 0..restarts {
        total.absorb(bbht_with_rng(s, rng, o, cfg));
        if total.found.is_some() {
            break;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn space(n: usize, marked: &[usize]) -> SearchSpace {
        SearchSpace::new(n, |i| marked.contains(&i))
    }

    fn dummy_graph() -> Graph {
        Graph::new(1, Vec::new()).unwrap()
    }

    #[test]
    fn domain_padding() {
        let s = space(5, &[1, 4]);
        assert_eq!(s.domain_size(), 8);
        assert_eq!(s.marked_count(), 2);
        assert_eq!(space(0, &[]).domain_size(), 2);
        assert_eq!(space(1, &[]).domain_size(), 2);
        assert_eq!(space(16, &[]).domain_size(), 16);
        assert_eq!(s.nth_unmarked(0), 0);
        assert_eq!(s.nth_unmarked(1), 2);
        assert_eq!(s.nth_unmarked(3), 5);
    }

    #[test]
    fn four_items_one_marked_is_certain_after_one_iteration() {
        let s = space(4, &[2]);
        let mut state = StateVector::uniform(4);
        state.grover_iteration(s.marked());
        assert!((state.mass(s.marked()) - 1.0).abs() < 1e-12);
        for seed in 0..20 {
            let st = grover_search(&s, 1, seed);
            assert_eq!(st.measured_index, 2);
            assert!(st.success);
            assert_eq!(st.oracle_applications, 1);
        }
    }

    #[test]
    fn zero_iterations_is_uniform() {
        let s = space(8, &[3]);
        let state = StateVector::uniform(8);
        assert!((state.mass(s.marked()) - 1.0 / 8.0).abs() < 1e-15);
        assert!((success_probability(8, 1, 0) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn nothing_marked_leaves_state_unchanged() {
        let s = space(16, &[]);
        let mut state = StateVector::uniform(16);
        let before = state.clone();
        for _ in 0..5 {
            state.grover_iteration(s.marked());
        }
        for (a, b) in state.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).abs() < 1e-15);
        }
        for seed in 0..10 {
            assert!(!grover_search(&s, 3, seed).success);
        }
    }

    #[test]
    fn closed_form_values() {
        assert!((success_probability(4, 1, 1) - 1.0).abs() < 1e-15);
        assert_eq!(success_probability(16, 0, 3), 0.0);
        assert_eq!(success_probability(16, 16, 7), 1.0);
        assert!((success_probability(64, 5, 0) - 5.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn optimal_iteration_counts() {
        assert_eq!(optimal_iterations(4, 1), Ok(1));
        assert_eq!(optimal_iterations(1024, 1), Ok(25));
        assert_eq!(optimal_iterations(32, 32), Ok(0));
        assert_eq!(optimal_iterations(32, 0), Err(Error::KZero));
    }

    #[test]
    fn analytic_mode_matches_distribution() {
        // cap below the domain forces closed-form sampling
        let s = space(64, &[5, 9]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = 3;
        let trials = 20_000;
        let hits = (0..trials)
            .filter(|_| {
                let st = run_grover(&s, r, &mut rng, 32);
                assert!(st.analytic);
                st.success
            })
            .count();
        let p = success_probability(64, 2, r);
        let freq = hits as f64 / trials as f64;
        assert!((freq - p).abs() < 0.02, "freq {freq} vs p {p}");
    }

    #[test]
    fn padding_is_never_a_success() {
        let s = space(5, &[0, 1, 2, 3, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let st = run_grover(&s, 0, &mut rng, 1 << 10);
            assert_eq!(st.success, st.measured_index < 5);
        }
    }

    #[test]
    fn schedule_all_marked_succeeds_immediately() {
        let g = dummy_graph();
        let o = InstrumentedOracle::edge_list(&g);
        let s = space(16, &(0..16).collect::<Vec<_>>());
        let out = bbht_search(&s, 5, &o, &GroverConfig::default());
        assert!(out.found.is_some());
        assert_eq!(out.rounds, 1);
        assert!(out.oracle_applications() <= 2);
        assert_eq!(o.quantum_queries(), out.oracle_applications());
    }

    #[test]
    fn schedule_without_marks_stops_at_cutoff() {
        let g = dummy_graph();
        let o = InstrumentedOracle::edge_list(&g);
        let cfg = GroverConfig::default();
        for seed in 0..20 {
            o.reset();
            let s = space(100, &[]);
            let out = bbht_search(&s, seed, &o, &cfg);
            assert_eq!(out.found, None);
            assert_eq!(out.grover_iterations, cfg.cutoff(128));
            assert_eq!(cfg.cutoff(128), 9 * 12);
            assert_eq!(out.checks, out.rounds);
            assert_eq!(o.quantum_queries(), out.grover_iterations + out.checks);
        }
    }

    #[test]
    fn restarts() {
        assert_eq!(restarts_for(0.01), 7);
        assert_eq!(restarts_for(0.5), 1);
        assert_eq!(restarts_for(0.25), 2);
    }

    #[test]
    fn config_validation() {
        assert!(GroverConfig::default().validate().is_ok());
        let bad = GroverConfig {
            statevector_cap: 100,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
