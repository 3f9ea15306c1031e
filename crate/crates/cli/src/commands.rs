use std::fmt;
use std::fs;
use std::path::Path;

use buffon::{
    crossings_per_cast, estimate_pi_needle, estimate_pi_triangle, expected_crossings_closed_form,
    expected_crossings_quadrature, filename_for_cast, make_triangle, render_cast, render_histogram,
    run_batch, run_needle_trials, run_triangle_trials, BatchOptions, CastScene, GridSpec, HistogramScene,
    Method, Point, RngConfig, Viewport,
};
use serde::Serialize;

use crate::{BatchArgs, EstimateArgs, MethodArg, RenderArgs, ValidateArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations (exit 1).
    Usage(String),
    /// Simulation, I/O or validation failure (exit 2).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<buffon::Error> for CliError {
    fn from(e: buffon::Error) -> Self {
        match e {
            buffon::Error::InvalidArgument(_) | buffon::Error::UnsupportedConfiguration(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// The given seed, or a fresh one from the clock. Always echoed by the caller.
fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        // splitmix64 finaliser, so nearby timestamps give unrelated seeds
        let mut z = nanos.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    })
}

fn method(arg: MethodArg, ratio: f64) -> Result<Method<f64>> {
    match arg {
        MethodArg::Triangle => Ok(Method::triangle()),
        MethodArg::Needle => {
            if !(ratio > 0.0 && ratio <= 1.0) {
                return Err(CliError::Usage(format!("--ratio must lie in (0, 1], got {ratio}")));
            }
            Ok(Method::Needle { ratio })
        }
    }
}

#[derive(Debug, Serialize)]
struct EstimateReport {
    method: &'static str,
    trials: u64,
    seed: u64,
    count_x: Option<u64>,
    count_y: Option<u64>,
    hits: Option<u64>,
    ratio: Option<f64>,
    pi_estimate: f64,
    standard_error: Option<f64>,
}

pub fn estimate(args: &EstimateArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    let m = method(args.method, args.ratio)?;
    let mut stream = RngConfig::new(seed, 0).stream();
    let n = args.trials;
    println!("seed = {seed}");

    let report = match m {
        Method::Triangle { side, spacing } => {
            let agg = run_triangle_trials(n, &mut stream, side, spacing)?;
            println!(
                "count_x = {}\tcount_x/trials = {:.6}",
                agg.count_x_total,
                agg.count_x_total as f64 / n as f64
            );
            println!(
                "count_y = {}\tcount_y/trials = {:.6}",
                agg.count_y_total,
                agg.count_y_total as f64 / n as f64
            );
            let est = estimate_pi_triangle(&agg)?;
            EstimateReport {
                method: "triangle",
                trials: n,
                seed,
                count_x: Some(agg.count_x_total),
                count_y: Some(agg.count_y_total),
                hits: None,
                ratio: None,
                pi_estimate: est.pi_estimate,
                standard_error: est.standard_error,
            }
        }
        Method::Needle { ratio } => {
            let agg = run_needle_trials(n, &mut stream, ratio)?;
            println!("hits = {}\thits/trials = {:.6}", agg.hits, agg.hit_rate());
            let est = estimate_pi_needle(&agg)?;
            EstimateReport {
                method: "needle",
                trials: n,
                seed,
                count_x: None,
                count_y: None,
                hits: Some(agg.hits),
                ratio: Some(ratio),
                pi_estimate: est.pi_estimate,
                standard_error: est.standard_error,
            }
        }
    };
    println!("pi estimate = {:.6}", report.pi_estimate);
    if let Some(se) = report.standard_error {
        println!("standard error = {se:.6}");
    }
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
        write_file(path, &(text + "\n"))?;
    }
    Ok(())
}

pub fn batch(args: &BatchArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    let m = method(args.method, args.ratio)?;
    let options = BatchOptions { bins: args.bins as usize, workers: args.workers.map(|w| w as usize) };
    let result = run_batch(args.runs, args.trials, seed, m, &options)?;
    let s = &result.summary;
    println!(
        "method = {} seed = {seed} runs = {} trials = {} mean = {:.6} stddev = {:.6} stderr = {:.6} ci95 = [{:.6}, {:.6}]",
        m.name(),
        result.runs,
        result.trials_per_run,
        s.mean,
        s.stddev,
        s.standard_error,
        s.ci_low,
        s.ci_high
    );

    if let Some(path) = &args.csv {
        let mut csv = String::from("run,pi_estimate\n");
        for (k, e) in result.estimates.iter().enumerate() {
            csv.push_str(&format!("{k},{e}\n"));
        }
        write_file(path, &csv)?;
    }
    if let Some(path) = &args.svg {
        let svg = render_histogram(&HistogramScene::new(result.histogram.clone(), s.mean))?;
        write_file(path, &svg)?;
    }
    Ok(())
}

pub fn render(args: &RenderArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    println!("seed = {seed}");
    if args.images == 0 {
        return Ok(());
    }
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", args.out.display())))?;

    let spacing = 1.0_f64;
    let center = Point::origin();
    let mut stream = RngConfig::new(seed, 0).stream();
    for i in 0..args.images {
        let cast = stream.sample_cast(spacing)?;
        let vertices = make_triangle(center, spacing, cast.rotation)?;
        let grid = GridSpec::new(spacing, cast.offset_x, cast.offset_y)?;
        let tally = crossings_per_cast(&vertices, &grid);
        let scene = CastScene::new(vertices, &grid, Viewport::for_triangle(center, spacing))?;
        let name = filename_for_cast(i as i64)?;
        write_file(&args.out.join(&name), &render_cast(&scene)?)?;
        println!("{name}\tcount_x = {}\tcount_y = {}", tally.count_x, tally.count_y);
    }
    Ok(())
}

fn parse_resolution(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<usize> = text
        .split(['x', 'X', ','])
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad --resolution {text:?}")))?;
    match parts[..] {
        [n] => Ok((n, n)),
        [t, o] => Ok((t, o)),
        [t, ox, oy] if ox == oy => Ok((t, ox)),
        [_, _, _] => Err(CliError::Usage("--resolution needs equal offset counts for x and y".into())),
        _ => Err(CliError::Usage(format!("bad --resolution {text:?}"))),
    }
}

pub fn validate(args: &ValidateArgs) -> Result<()> {
    let (nt, no) = parse_resolution(&args.resolution)?;
    if args.tolerance.is_nan() || args.tolerance <= 0.0 {
        return Err(CliError::Usage("--tolerance must be positive".into()));
    }
    let quad: f64 = expected_crossings_quadrature(nt, no)?;
    let closed: f64 = expected_crossings_closed_form(1.0, 1.0)?;
    let gap = (quad - closed).abs();
    println!("quadrature ({nt} rotations x {no}x{no} offsets) = {quad:.7}");
    println!("closed form 12/pi = {closed:.7}");
    println!("gap = {gap:.3e} (tolerance {:.3e})", args.tolerance);
    let mut pass = gap < args.tolerance;

    if let Some(n) = args.mc_trials {
        let seed = resolve_seed(args.seed);
        let mut stream = RngConfig::new(seed, 0).stream();
        let agg = run_triangle_trials(n, &mut stream, 1.0, 1.0)?;
        let mean = agg.mean_crossings();
        match agg.crossings_standard_error() {
            Some(se) => {
                let z = (mean - closed) / se;
                println!("monte carlo (seed {seed}, {n} casts) = {mean:.7} +/- {se:.2e} (z = {z:.2})");
                pass &= z.abs() < 3.0;
            }
            None => println!("monte carlo (seed {seed}, {n} casts) = {mean:.7} (no standard error)"),
        }
    }

    if pass {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(CliError::Runtime("validation failed".into()))
    }
}
