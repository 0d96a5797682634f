//! Monte Carlo trials, sweeps over `m`, and threshold search.
//!
//! Trial `i` of a run with master seed `s` draws its instance from
//! `child_seed(s, i)`, and results are folded in trial order, so every
//! output is independent of the worker count.

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{bounds, census, AnalyticBounds, CPolicy, Exact, WitnessTag};
use crate::error::{Error, Result};
use crate::fsgraph::build;
use crate::instance::{check_sizes, gen_reduced};
use crate::rng::child_seed;
use crate::wellformed::solve_orientation;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialConfig {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub c: CPolicy,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl TrialConfig {
    pub fn new(n1: usize, n2: usize, m: usize, trials: usize, seed: u64) -> Self {
        TrialConfig {
            n1,
            n2,
            m,
            trials,
            seed,
            c: CPolicy::Auto,
            jobs: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameters("trials must be at least 1".into()));
        }
        check_sizes(self.n1, self.n2, self.m)
    }
}

/// What one random instance looked like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub feasible: bool,
    pub witness: WitnessTag,
    pub z: u64,
    pub has_cycle: bool,
}

pub fn run_trial(n1: usize, n2: usize, m: usize, seed: u64) -> Result<TrialOutcome> {
    let reduced = gen_reduced(n1, n2, m, seed)?;
    let graph = build(&reduced)?;
    let report = census(&reduced, &graph);
    Ok(TrialOutcome {
        feasible: solve_orientation(&graph).is_some(),
        witness: report.witness_kind,
        z: report.z_g1prime,
        has_cycle: report.has_cycle,
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("worker pool: {e}")))
}

/// Outcomes of every trial, in trial order.
pub fn trial_outcomes(config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    let TrialConfig { n1, n2, m, seed, .. } = *config;
    pool(config.jobs)?.install(|| {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|i| run_trial(n1, n2, m, child_seed(seed, i)))
            .collect()
    })
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson(successes: usize, trials: usize) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

/// Aggregate of one `(n1, n2, m)` point. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_z: f64,
    /// Unbiased sample variance; undefined for a single trial.
    pub var_z: Option<f64>,
    pub frac_cycle: f64,
    pub frac_witness_g1: f64,
    pub frac_witness_g2: f64,
    pub frac_witness_g3: f64,
    pub ez_low: Exact,
    pub ez_high: Exact,
    pub var_high: Exact,
    pub cheby_pr_z0: Option<Exact>,
    pub cycle_pr: Option<Exact>,
    pub path_pr: Option<Exact>,
}

pub const CSV_COLUMNS: [&str; 20] = [
    "n1",
    "n2",
    "m",
    "trials",
    "seed",
    "p_hat",
    "ci_low",
    "ci_high",
    "mean_z",
    "var_z",
    "frac_cycle",
    "frac_witness_g1",
    "frac_witness_g2",
    "frac_witness_g3",
    "ez_low",
    "ez_high",
    "var_high",
    "cheby_pr_z0",
    "cycle_pr",
    "path_pr",
];

pub fn summarize(config: &TrialConfig, outcomes: &[TrialOutcome], b: AnalyticBounds) -> SweepRecord {
    let t = outcomes.len();
    let tf = t as f64;
    let count = |pred: &dyn Fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| pred(o)).count();
    let feasible = count(&|o| o.feasible);
    let (ci_low, ci_high) = wilson(feasible, t);
    let sum: u128 = outcomes.iter().map(|o| o.z as u128).sum();
    let sum_sq: u128 = outcomes.iter().map(|o| (o.z as u128).pow(2)).sum();
    let mean_z = sum as f64 / tf;
    // t·Σz² − (Σz)² = t·Σ(z − mean)², exact in integers.
    let var_z = (t > 1).then(|| {
        let t = t as u128;
        (t * sum_sq - sum * sum) as f64 / (t * (t - 1)) as f64
    });
    SweepRecord {
        n1: config.n1,
        n2: config.n2,
        m: config.m,
        trials: t,
        seed: config.seed,
        p_hat: feasible as f64 / tf,
        ci_low,
        ci_high,
        mean_z,
        var_z,
        frac_cycle: count(&|o| o.has_cycle) as f64 / tf,
        frac_witness_g1: count(&|o| o.witness == WitnessTag::G1) as f64 / tf,
        frac_witness_g2: count(&|o| o.witness == WitnessTag::G2) as f64 / tf,
        frac_witness_g3: count(&|o| o.witness == WitnessTag::G3) as f64 / tf,
        ez_low: b.ez_low,
        ez_high: b.ez_high,
        var_high: b.var_high,
        cheby_pr_z0: b.cheby_pr_z0,
        cycle_pr: b.cycle_pr,
        path_pr: b.path_pr,
    }
}

pub fn run_trials(config: &TrialConfig) -> Result<SweepRecord> {
    config.validate()?;
    let b = bounds(config.n1 as u64, config.n2 as u64, config.m as u64, &config.c)?;
    let outcomes = trial_outcomes(config)?;
    Ok(summarize(config, &outcomes, b))
}

/// A sweep point: a record, or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SweepRow {
    Record(Box<SweepRecord>),
    Failed {
        n1: usize,
        n2: usize,
        m: usize,
        trials: usize,
        seed: u64,
        error: String,
    },
}

/// One row per entry of `m_list`, sorted by `m`; duplicates are kept.
pub fn sweep(m_list: &[usize], base: &TrialConfig) -> Vec<SweepRow> {
    let mut ms = m_list.to_vec();
    ms.sort_unstable();
    ms.into_iter()
        .map(|m| {
            let config = TrialConfig { m, ..base.clone() };
            match run_trials(&config) {
                Ok(r) => SweepRow::Record(Box::new(r)),
                Err(e) => SweepRow::Failed {
                    n1: config.n1,
                    n2: config.n2,
                    m,
                    trials: config.trials,
                    seed: config.seed,
                    error: e.to_string(),
                },
            }
        })
        .collect()
}

/// `%g`-style rendering with six significant digits.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (5 - exp) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_g).unwrap_or_default()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = match row {
            SweepRow::Record(r) => vec![
                r.n1.to_string(),
                r.n2.to_string(),
                r.m.to_string(),
                r.trials.to_string(),
                r.seed.to_string(),
                fmt_g(r.p_hat),
                fmt_g(r.ci_low),
                fmt_g(r.ci_high),
                fmt_g(r.mean_z),
                opt(r.var_z),
                fmt_g(r.frac_cycle),
                fmt_g(r.frac_witness_g1),
                fmt_g(r.frac_witness_g2),
                fmt_g(r.frac_witness_g3),
                fmt_g(r.ez_low.to_f64()),
                fmt_g(r.ez_high.to_f64()),
                fmt_g(r.var_high.to_f64()),
                opt(r.cheby_pr_z0.as_ref().map(Exact::to_f64)),
                opt(r.cycle_pr.as_ref().map(Exact::to_f64)),
                opt(r.path_pr.as_ref().map(Exact::to_f64)),
            ],
            SweepRow::Failed {
                n1,
                n2,
                m,
                trials,
                seed,
                ..
            } => {
                let mut f = vec![
                    n1.to_string(),
                    n2.to_string(),
                    m.to_string(),
                    trials.to_string(),
                    seed.to_string(),
                ];
                f.resize(CSV_COLUMNS.len(), String::new());
                f
            }
        };
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Bracket around the smallest `m` with `p_hat(m) >= target`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Threshold {
    pub m_star: usize,
    /// Largest measured `m` below target (equal to `hi` if the first point passed).
    pub lo: usize,
    pub hi: usize,
    pub p_lo: f64,
    pub p_hi: f64,
    pub evaluations: usize,
}

/// Doubling from `n + 1` up to the cap `n³`, then integer bisection until
/// the bracket is no wider than `max(1, hi/64)`.
pub fn threshold_search_with<F>(n: usize, target: f64, mut p_hat: F) -> Result<Threshold>
where
    F: FnMut(usize) -> Result<f64>,
{
    let cap = n.saturating_pow(3);
    let mut evaluations = 0;
    let mut eval = |m: usize| {
        evaluations += 1;
        p_hat(m)
    };
    let first = n + 1;
    let p_first = eval(first)?;
    if p_first >= target {
        return Ok(Threshold {
            m_star: first,
            lo: first,
            hi: first,
            p_lo: p_first,
            p_hi: p_first,
            evaluations: 1,
        });
    }
    let (mut lo, mut p_lo) = (first, p_first);
    let (mut hi, mut p_hi) = loop {
        if lo >= cap {
            return Err(Error::NotFound { cap, target });
        }
        let m = (lo * 2).min(cap);
        let p = eval(m)?;
        if p >= target {
            break (m, p);
        }
        (lo, p_lo) = (m, p);
    };
    while hi - lo > 1.max(hi / 64) {
        let mid = lo + (hi - lo) / 2;
        let p = eval(mid)?;
        if p >= target {
            (hi, p_hi) = (mid, p);
        } else {
            (lo, p_lo) = (mid, p);
        }
    }
    Ok(Threshold {
        m_star: hi,
        lo,
        hi,
        p_lo,
        p_hi,
        evaluations,
    })
}

/// [`threshold_search_with`] driven by Monte Carlo `p_hat` estimates, all
/// points sharing the master seed.
pub fn threshold_search(
    n1: usize,
    n2: usize,
    trials: usize,
    seed: u64,
    target: f64,
    jobs: usize,
) -> Result<Threshold> {
    if !(0.0..=1.0).contains(&target) {
        return Err(Error::InvalidParameters(format!("target {target} is outside [0, 1]")));
    }
    threshold_search_with(n1 + n2, target, |m| {
        let config = TrialConfig {
            jobs,
            ..TrialConfig::new(n1, n2, m, trials, seed)
        };
        let outcomes = trial_outcomes(&config)?;
        Ok(outcomes.iter().filter(|o| o.feasible).count() as f64 / trials as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        for (s, t) in [(0, 10), (10, 10), (3, 7), (1000, 2000), (1, 100_000)] {
            let (lo, hi) = wilson(s, t);
            let p = s as f64 / t as f64;
            assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
        }
        // Reference: 5 of 10 gives (0.2366, 0.7634).
        let (lo, hi) = wilson(5, 10);
        assert!((lo - 0.236_593).abs() < 1e-5 && (hi - 0.763_407).abs() < 1e-5);
    }

    #[test]
    fn fmt_g_matches_printf() {
        // Expected strings are what C's printf("%g") prints.
        let cases = [
            (0.0, "0"),
            (0.5, "0.5"),
            (1.0, "1"),
            (123456.0, "123456"),
            (1234567.0, "1.23457e+06"),
            (999999.5, "1e+06"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (1.0518e-4, "0.00010518"),
            (-2.5, "-2.5"),
            (0.333333333, "0.333333"),
        ];
        for (x, s) in cases {
            assert_eq!(fmt_g(x), s, "{x}");
        }
    }

    #[test]
    fn jobs_do_not_change_results() {
        let base = TrialConfig::new(8, 8, 40, 300, 7);
        let one = run_trials(&TrialConfig { jobs: 1, ..base.clone() }).unwrap();
        let many = run_trials(&TrialConfig { jobs: 8, ..base }).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn record_consistency() {
        let r = run_trials(&TrialConfig::new(6, 6, 30, 500, 3)).unwrap();
        let witnessed = r.frac_witness_g1 + r.frac_witness_g2 + r.frac_witness_g3;
        assert!((1.0 - r.p_hat - witnessed).abs() < 1e-12);
        assert!(r.frac_witness_g3 <= r.frac_cycle);
        assert!(r.ci_low <= r.p_hat && r.p_hat <= r.ci_high);
    }

    #[test]
    fn single_trial_on_g1_prime_shape() {
        // Search a seed whose instance is infeasible with a G1 witness.
        let seed = (0..10_000)
            .find(|&s| run_trial(2, 2, 5, child_seed(s, 0)).unwrap().witness == WitnessTag::G1)
            .unwrap();
        let r = run_trials(&TrialConfig::new(2, 2, 5, 1, seed)).unwrap();
        assert_eq!(r.p_hat, 0.0);
        assert_eq!(r.frac_witness_g1, 1.0);
        assert_eq!(r.var_z, None);
    }

    #[test]
    fn sweep_rows_and_errors() {
        let base = TrialConfig::new(2, 2, 0, 20, 1);
        assert_eq!(to_csv(&sweep(&[], &base)).lines().count(), 1);
        let rows = sweep(&[9, 5, 9, 3], &base);
        let ms: Vec<usize> = rows
            .iter()
            .map(|r| match r {
                SweepRow::Record(r) => r.m,
                SweepRow::Failed { m, .. } => *m,
            })
            .collect();
        assert_eq!(ms, vec![3, 5, 9, 9]);
        assert!(matches!(rows[0], SweepRow::Failed { .. }));
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "2,2,3,20,1,,,,,,,,,,,,,,,");
        assert!(lines.iter().all(|l| l.split(',').count() == CSV_COLUMNS.len()));
    }

    #[test]
    fn threshold_on_step_stub() {
        for m0 in [18, 100, 257, 1000, 4095] {
            let t = threshold_search_with(16, 0.5, |m| Ok(if m >= m0 { 1.0 } else { 0.0 })).unwrap();
            assert!(t.lo < m0 && m0 <= t.hi, "{m0}: {t:?}");
            assert!(t.hi - t.lo <= 1.max(t.hi / 64));
            assert_eq!((t.p_lo, t.p_hi), (0.0, 1.0));
        }
        let t = threshold_search_with(16, 0.0, |_| Ok(0.0)).unwrap();
        assert_eq!(t.m_star, 17);
        let err = threshold_search_with(4, 0.5, |_| Ok(0.0)).unwrap_err();
        assert!(matches!(err, Error::NotFound { cap: 64, .. }));
    }
}
