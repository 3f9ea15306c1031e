//! Trial loops, π estimators and the batch runner.
//!
//! Triangle method (side = spacing): the expected number of side/grid-line
//! crossings per cast is 12/π, so `π ≈ 12·trials/intersections`.
//!
//! Needle method (needle length ℓ ≤ plank width L): a needle crosses a seam
//! with probability `p = (2/π)(ℓ/L)`, so `π ≈ 2·(ℓ/L)/p̂`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{crossings_per_cast, make_triangle, GridSpec, Point};
use crate::sampling::{CastSource, NeedleDrop, NeedleSource, RngConfig};
use crate::scalar::Scalar;

/// Crossing totals over a run of triangle casts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialAggregate {
    pub trials: u64,
    pub count_x_total: u64,
    pub count_y_total: u64,
    /// Sum over casts of `(count_x + count_y)²`, when tracked.
    pub total_sq_sum: Option<u64>,
}

impl TrialAggregate {
    /// Aggregate from bare totals, without per-cast variance.
    pub fn from_counts(trials: u64, count_x_total: u64, count_y_total: u64) -> Self {
        TrialAggregate { trials, count_x_total, count_y_total, total_sq_sum: None }
    }

    pub fn intersections(&self) -> u64 {
        self.count_x_total + self.count_y_total
    }

    pub fn mean_crossings(&self) -> f64 {
        self.intersections() as f64 / self.trials as f64
    }

    /// Sample standard deviation of the per-cast crossing total.
    pub fn crossings_stddev(&self) -> Option<f64> {
        let sq = self.total_sq_sum?;
        if self.trials < 2 {
            return None;
        }
        let n = self.trials as f64;
        let mean = self.mean_crossings();
        let var = (sq as f64 - n * mean * mean) / (n - 1.0);
        Some(var.max(0.0).sqrt())
    }

    /// Standard error of [`mean_crossings`](Self::mean_crossings).
    pub fn crossings_standard_error(&self) -> Option<f64> {
        Some(self.crossings_stddev()? / (self.trials as f64).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeedleAggregate {
    pub trials: u64,
    pub hits: u64,
    /// ℓ/L, in `(0, 1]`.
    pub ratio: f64,
}

impl NeedleAggregate {
    pub fn hit_rate(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateSummary {
    pub pi_estimate: f64,
    pub trials: u64,
    /// Total crossings (triangle) or hits (needle).
    pub intersections: u64,
    /// `None` when the aggregate carries no variance information.
    pub standard_error: Option<f64>,
}

/// Casts a triangle of side `side`, centered at the origin, `n` times against
/// a grid of spacing `spacing` whose offsets and the triangle's rotation come
/// from `source`.
pub fn run_triangle_trials<T, S>(n: u64, source: &mut S, side: T, spacing: T) -> Result<TrialAggregate>
where
    T: Scalar,
    S: CastSource<T> + ?Sized,
{
    if n == 0 {
        return Err(Error::invalid("trial count must be at least 1"));
    }
    if !spacing.is_positive_finite() {
        return Err(Error::invalid(format!("grid spacing must be positive and finite, got {spacing}")));
    }
    if side != spacing {
        return Err(Error::UnsupportedConfiguration(format!(
            "the triangle estimator requires side == spacing (got side {side}, spacing {spacing})"
        )));
    }

    let center = Point::origin();
    let (mut cx, mut cy, mut sq) = (0u64, 0u64, 0u64);
    for _ in 0..n {
        let cast = source.next_cast(spacing)?;
        let vertices = make_triangle(center, side, cast.rotation)?;
        let grid = GridSpec::new(spacing, cast.offset_x, cast.offset_y)?;
        let tally = crossings_per_cast(&vertices, &grid);
        cx += u64::from(tally.count_x);
        cy += u64::from(tally.count_y);
        let t = u64::from(tally.total());
        sq += t * t;
    }
    Ok(TrialAggregate { trials: n, count_x_total: cx, count_y_total: cy, total_sq_sum: Some(sq) })
}

/// `π ≈ 12·trials/intersections`, with a delta-method standard error when the
/// aggregate tracks per-cast variance.
pub fn estimate_pi_triangle(agg: &TrialAggregate) -> Result<EstimateSummary> {
    let intersections = agg.intersections();
    if agg.trials == 0 {
        return Err(Error::invalid("aggregate has zero trials"));
    }
    if intersections == 0 {
        return Err(Error::DegenerateSample(format!("no crossings in {} trials", agg.trials)));
    }
    let pi_estimate = 12.0 * agg.trials as f64 / intersections as f64;
    let standard_error = agg
        .crossings_stddev()
        .map(|sd| pi_estimate * sd / (agg.mean_crossings() * (agg.trials as f64).sqrt()));
    Ok(EstimateSummary { pi_estimate, trials: agg.trials, intersections, standard_error })
}

/// Whether a needle of length `ratio` (in plank widths) crosses a seam.
#[inline]
pub fn needle_hits<T: Scalar>(ratio: T, drop: &NeedleDrop<T>) -> bool {
    ratio / T::lit(2.0) * drop.angle.sin() >= drop.distance
}

pub fn run_needle_trials<T, S>(n: u64, source: &mut S, ratio: T) -> Result<NeedleAggregate>
where
    T: Scalar,
    S: NeedleSource<T> + ?Sized,
{
    if n == 0 {
        return Err(Error::invalid("trial count must be at least 1"));
    }
    if !(ratio > T::zero() && ratio <= T::one()) {
        return Err(Error::invalid(format!("needle ratio must lie in (0, 1], got {ratio}")));
    }
    let hits = (0..n).filter(|_| needle_hits(ratio, &source.next_drop())).count() as u64;
    Ok(NeedleAggregate { trials: n, hits, ratio: ratio.to_f64_lossy() })
}

/// `π ≈ 2·ratio·trials/hits`; the binomial standard error of the hit rate is
/// carried through the reciprocal.
pub fn estimate_pi_needle(agg: &NeedleAggregate) -> Result<EstimateSummary> {
    if agg.trials == 0 {
        return Err(Error::invalid("aggregate has zero trials"));
    }
    if agg.hits == 0 {
        return Err(Error::DegenerateSample(format!("no needle hits in {} trials", agg.trials)));
    }
    let n = agg.trials as f64;
    let p = agg.hit_rate();
    let pi_estimate = 2.0 * agg.ratio * n / agg.hits as f64;
    let se_p = (p * (1.0 - p) / n).sqrt();
    Ok(EstimateSummary {
        pi_estimate,
        trials: agg.trials,
        intersections: agg.hits,
        standard_error: Some(pi_estimate * se_p / p),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method<T> {
    Triangle { side: T, spacing: T },
    Needle { ratio: T },
}

impl<T: Scalar> Method<T> {
    pub fn triangle() -> Self {
        Method::Triangle { side: T::one(), spacing: T::one() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Triangle { .. } => "triangle",
            Method::Needle { .. } => "needle",
        }
    }

    /// One full run on stream `config`.
    pub fn run(&self, trials: u64, config: RngConfig) -> Result<EstimateSummary> {
        let mut stream = config.stream();
        match *self {
            Method::Triangle { side, spacing } => {
                estimate_pi_triangle(&run_triangle_trials(trials, &mut stream, side, spacing)?)
            }
            Method::Needle { ratio } => estimate_pi_needle(&run_needle_trials(trials, &mut stream, ratio)?),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchOptions {
    pub bins: usize,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions { bins: 40, workers: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    pub low: f64,
    pub high: f64,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub stddev: f64,
    pub standard_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub runs: u64,
    pub trials_per_run: u64,
    pub seed: u64,
    /// Indexed by run.
    pub estimates: Vec<f64>,
    pub summary: Summary,
    pub histogram: Vec<HistogramBin>,
}

impl BatchResult {
    pub fn mean(&self) -> f64 {
        self.summary.mean
    }

    pub fn stddev(&self) -> f64 {
        self.summary.stddev
    }
}

/// Runs `runs` independent estimates of `trials` trials each. Run `k` draws
/// from stream `k` of `seed`, so the result does not depend on the worker
/// count or scheduling.
pub fn run_batch<T: Scalar>(
    runs: u64,
    trials: u64,
    seed: u64,
    method: Method<T>,
    options: &BatchOptions,
) -> Result<BatchResult> {
    if runs == 0 {
        return Err(Error::invalid("run count must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::invalid("trial count must be at least 1"));
    }
    if options.bins == 0 {
        return Err(Error::invalid("histogram needs at least one bin"));
    }
    if options.workers == Some(0) {
        return Err(Error::invalid("worker count must be at least 1"));
    }

    let one_run = |k: u64| {
        method
            .run(trials, RngConfig::new(seed, k))
            .map(|s| s.pi_estimate)
            .map_err(|e| Error::RunFailed { run: k, source: Box::new(e) })
    };
    let collected: Vec<Result<f64>> = match options.workers {
        Some(1) => (0..runs).map(one_run).collect(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {w} workers: {e}")))?
            .install(|| (0..runs).into_par_iter().map(one_run).collect()),
        None => (0..runs).into_par_iter().map(one_run).collect(),
    };
    let estimates = collected.into_iter().collect::<Result<Vec<f64>>>()?;

    let summary = summarize(&estimates)?;
    let histogram = histogram(&estimates, options.bins)?;
    Ok(BatchResult { runs, trials_per_run: trials, seed, estimates, summary, histogram })
}

/// Sample mean, unbiased standard deviation (0 for a single value), standard
/// error and the normal 95% interval `mean ± 1.96·stddev/√n`.
pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::invalid("cannot summarize an empty list"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stddev = if values.len() > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let standard_error = stddev / n.sqrt();
    Ok(Summary {
        count: values.len(),
        mean,
        stddev,
        standard_error,
        ci_low: mean - 1.96 * standard_error,
        ci_high: mean + 1.96 * standard_error,
    })
}

/// Equal-width bins spanning `[min, max]`; the last bin is closed on the
/// right. A constant sample gets a unit-wide range centered on its value.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<HistogramBin>> {
    if values.is_empty() {
        return Err(Error::invalid("cannot bin an empty list"));
    }
    if bins == 0 {
        return Err(Error::invalid("histogram needs at least one bin"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("cannot bin non-finite values"));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if max > min { (min, max) } else { (min - 0.5, min + 0.5) };
    let width = (hi - lo) / bins as f64;

    let mut counts = vec![0u64; bins];
    for &v in values {
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            low: lo + width * i as f64,
            high: if i + 1 == bins { hi } else { lo + width * (i + 1) as f64 },
            count,
        })
        .collect())
}
