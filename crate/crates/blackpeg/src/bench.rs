//! Repeated games over a list of sizes.

use blackpeg_core::Color;

use crate::error::RunError;
use crate::game::{run_game, CodewordSource, GameConfig, ModeArg, Strategy, ZeroFinderArg};
use crate::record::BenchRecord;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    /// Colors per game; `None` means `k = n`.
    pub k: Option<Color>,
    pub trials: usize,
    pub seed: u64,
    pub mode: ModeArg,
    pub zero_finder: ZeroFinderArg,
    pub strategy: Strategy,
    pub census_early_stop: bool,
    /// Fill the `millis` column with wall time.
    pub timing: bool,
}

impl BenchConfig {
    pub fn new(n_list: Vec<usize>, trials: usize, seed: u64) -> Self {
        BenchConfig {
            n_list,
            k: None,
            trials,
            seed,
            mode: ModeArg::Black,
            zero_finder: ZeroFinderArg::Det,
            strategy: Strategy::Main,
            census_early_stop: true,
            timing: false,
        }
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, trial: usize) -> u64 {
    mix64(master ^ trial as u64)
}

/// Runs every trial at every size, one record per game, in `(n, trial)`
/// order.
pub fn bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, RunError> {
    if config.trials == 0 {
        return Err(RunError::usage("trials must be at least 1"));
    }
    if config.n_list.is_empty() {
        return Err(RunError::usage("no sizes given"));
    }
    let mut out = Vec::with_capacity(config.n_list.len() * config.trials);
    for &n in &config.n_list {
        for trial in 0..config.trials {
            let game = GameConfig {
                n,
                k: config.k.unwrap_or(n as Color),
                mode: config.mode,
                seed: trial_seed(config.seed, trial),
                codeword: CodewordSource::Random,
                zero_finder: config.zero_finder,
                strategy: config.strategy,
                census_early_stop: config.census_early_stop,
                record_transcript: false,
            };
            let result = run_game(&game)?;
            debug_assert_eq!(result.solution.0, result.codeword);
            out.push(BenchRecord::new(&game, &result, config.timing));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_distinct_and_stable() {
        let seeds: Vec<u64> = (0..100).map(|t| trial_seed(42, t)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 100);
        assert_eq!(mix64(0), 0xe220_a839_7b1d_cdaf);
    }

    #[test]
    fn bench_records() {
        let cfg = BenchConfig::new(vec![4, 9], 3, 5);
        let records = bench(&cfg).unwrap();
        assert_eq!(records.len(), 6);
        assert!(records.iter().all(|r| r.total
            == r.phase_zero + r.phase_singles + r.phase_signed + r.phase_census + r.phase_final));
        assert_eq!(records[3].n, 9);
        assert_eq!(records[3].n_t, 16);
        assert_eq!(bench(&cfg).unwrap(), records);
    }

    #[test]
    fn baseline_is_superlinear() {
        let mut cfg = BenchConfig::new(vec![64], 3, 1);
        let main = bench(&cfg).unwrap();
        cfg.strategy = Strategy::Baseline;
        let scan = bench(&cfg).unwrap();
        let mean = |rs: &[BenchRecord]| rs.iter().map(|r| r.total).sum::<usize>() / rs.len();
        assert!(mean(&scan) > 2 * mean(&main));
    }

    #[test]
    fn rejects_empty() {
        assert!(bench(&BenchConfig::new(vec![4], 0, 1)).is_err());
        assert!(bench(&BenchConfig::new(vec![], 1, 1)).is_err());
    }
}
