//! Monte Carlo estimation of π by casting an equilateral triangle onto a
//! square tiling ("Buffon's triangle"), with the classical Buffon needle as a
//! baseline.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: triangle construction and grid-line crossing counts.
//! - [`sampling`]: seeded, stream-splittable random casts.
//! - [`estimators`]: trial loops, π estimators and the parallel batch runner.
//! - [`oracle`]: deterministic quadrature and closed-form checks of the
//!   expected number of crossings per cast (12/π when side = spacing).
//! - [`render`]: SVG snapshots of casts and histograms of batch estimates.
//!
//! All geometry is generic over the scalar type (see [`Scalar`]); the
//! aliases below fix it to `f64`, which is what the estimators and the CLI
//! use.
//!
//! ```
//! use buffon::{estimate_pi_triangle, run_triangle_trials, RngConfig};
//!
//! let mut stream = RngConfig::new(42, 0).stream();
//! let agg = run_triangle_trials(100_000, &mut stream, 1.0_f64, 1.0).unwrap();
//! let summary = estimate_pi_triangle(&agg).unwrap();
//! assert!((summary.pi_estimate - std::f64::consts::PI).abs() < 0.05);
//! ```

pub mod error;
pub mod estimators;
pub mod geometry;
pub mod oracle;
pub mod render;
pub mod sampling;
mod scalar;

pub use error::{Error, Result};
pub use estimators::{
    estimate_pi_needle, estimate_pi_triangle, histogram, run_batch, run_needle_trials, run_triangle_trials,
    summarize, BatchOptions, BatchResult, EstimateSummary, HistogramBin, Method, NeedleAggregate, Summary,
    TrialAggregate,
};
pub use geometry::{
    count_line_crossings_sorted, crossings_direct, crossings_per_cast, make_triangle, segment_crosses_line,
    sorted_axis_coords, Axis, CrossingTally, GridSpec, Point, TriangleSpec, Vertices,
};
pub use oracle::{
    average_projection_width, expected_crossings_closed_form, expected_crossings_quadrature,
    mean_width_identity, projection_width,
};
pub use render::{filename_for_cast, render_cast, render_histogram, CastScene, HistogramScene, Viewport};
pub use sampling::{CastSample, CastSource, FixedCasts, NeedleDrop, NeedleSource, RngConfig, SampleStream};
pub use scalar::Scalar;

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;
pub type Vertices64 = Vertices<f64>;
pub type Vertices32 = Vertices<f32>;
pub type TriangleSpec64 = TriangleSpec<f64>;
pub type TriangleSpec32 = TriangleSpec<f32>;
pub type GridSpec64 = GridSpec<f64>;
pub type GridSpec32 = GridSpec<f32>;
pub type CastSample64 = CastSample<f64>;
pub type CastSample32 = CastSample<f32>;
pub type Method64 = Method<f64>;
pub type CastScene64 = CastScene<f64>;
pub type Viewport64 = Viewport<f64>;
