//! Deterministic checks of the expected number of crossings per cast.
//!
//! Two routes to the same constant, neither stochastic:
//!
//! - midpoint quadrature of [`crossings_per_cast`] over rotation and grid
//!   offsets;
//! - the mean-width identity: a convex body of mean projection width `w`
//!   dropped on lines spaced `L` apart is hit with probability `w/L` and then
//!   crossed exactly twice. For the equilateral triangle `w = 3ℓ/π`
//!   (perimeter/π), so two line families give `4·3ℓ/(πL) = 12/π` at ℓ = L.

use crate::error::{Error, Result};
use crate::geometry::{crossings_per_cast, make_triangle, GridSpec, Point, Vertices};
use crate::scalar::Scalar;

/// Expected crossings per cast (ℓ = L = 1) by the midpoint rule on a lattice
/// of `theta_points` rotations over one period `[0, 2π/3)` and
/// `offset_points × offset_points` grid offsets over `[0, 1)²`.
pub fn expected_crossings_quadrature<T: Scalar>(theta_points: usize, offset_points: usize) -> Result<T> {
    quadrature_with_origin(theta_points, offset_points, T::zero())
}

/// As [`expected_crossings_quadrature`], with the rotation lattice starting
/// at `theta_origin` instead of 0.
pub fn quadrature_with_origin<T: Scalar>(
    theta_points: usize,
    offset_points: usize,
    theta_origin: T,
) -> Result<T> {
    if theta_points < 8 || offset_points < 8 {
        return Err(Error::invalid(format!(
            "quadrature lattice must be at least 8 points per axis, got {theta_points}×{offset_points}"
        )));
    }
    if !theta_origin.is_finite() {
        return Err(Error::invalid("theta origin must be finite"));
    }
    let period = T::third_turn();
    let half = T::lit(0.5);
    let n_off = T::lit(offset_points as f64);

    // count_x depends only on offset_x and count_y only on offset_y, so the sum
    // over the full offset square is n_off times the sum along its diagonal.
    let mut diagonal_sum = 0u64;
    for i in 0..theta_points {
        let theta = theta_origin + period * (T::lit(i as f64) + half) / T::lit(theta_points as f64);
        let v = make_triangle(Point::origin(), T::one(), theta)?;
        for j in 0..offset_points {
            let off = (T::lit(j as f64) + half) / n_off;
            let grid = GridSpec::new(T::one(), off, off)?;
            diagonal_sum += u64::from(crossings_per_cast(&v, &grid).total());
        }
    }
    Ok(T::lit(diagonal_sum as f64 / (theta_points as f64 * offset_points as f64)))
}

/// `3·side/π`, the rotational mean of the triangle's projection width
/// (equal to perimeter/π, as for any convex body).
pub fn mean_width_identity<T: Scalar>(side: T) -> Result<T> {
    if !side.is_positive_finite() {
        return Err(Error::invalid(format!("side must be positive and finite, got {side}")));
    }
    Ok(T::lit(3.0) * side / T::PI())
}

/// Length of the projection of the triangle onto the direction at `angle`.
pub fn projection_width<T: Scalar>(v: &Vertices<T>, angle: T) -> T {
    let (sin, cos) = angle.sin_cos();
    let proj = v.0.map(|p| p.x * cos + p.y * sin);
    let hi = proj[0].max(proj[1]).max(proj[2]);
    let lo = proj[0].min(proj[1]).min(proj[2]);
    hi - lo
}

/// Midpoint average of [`projection_width`] over `angles` directions in `[0, 2π)`.
pub fn average_projection_width<T: Scalar>(side: T, angles: usize) -> Result<T> {
    if angles == 0 {
        return Err(Error::invalid("need at least one angle"));
    }
    let v = make_triangle(Point::origin(), side, T::zero())?;
    let n = T::lit(angles as f64);
    let sum = (0..angles)
        .map(|i| projection_width(&v, T::TAU() * (T::lit(i as f64) + T::lit(0.5)) / n))
        .fold(T::zero(), |a, b| a + b);
    Ok(sum / n)
}

/// `2 families · 2 crossings · (mean width / L)`, i.e. 12/π at ℓ = L.
pub fn expected_crossings_closed_form<T: Scalar>(side: T, spacing: T) -> Result<T> {
    if side != spacing {
        return Err(Error::UnsupportedConfiguration(format!(
            "closed form is stated for side == spacing (got side {side}, spacing {spacing})"
        )));
    }
    let width = mean_width_identity(side)?;
    Ok(T::lit(2.0) * (width / spacing) * T::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    const TWELVE_OVER_PI: f64 = 12.0 / PI;

    // Reference values below come from an independent vectorised re-implementation
    // (closed-form line counting per lattice point, not this crate's code).
    // The midpoint rule integrates a step function in the offsets, so its error
    // is first order: at most 4/offset_points per rotation sample.

    #[test]
    fn quadrature_reference_values() {
        let q: f64 = expected_crossings_quadrature(360, 200).unwrap();
        assert_abs_diff_eq!(q, 3.818_666_666_666_667, epsilon = 1e-9);
        let q: f64 = expected_crossings_quadrature(720, 400).unwrap();
        assert_abs_diff_eq!(q, 3.819_722_222_222_222, epsilon = 1e-9);
        let q: f64 = expected_crossings_quadrature(360, 8000).unwrap();
        assert_abs_diff_eq!(q, 3.819_688_888_888_889, epsilon = 1e-9);
        assert!((q - TWELVE_OVER_PI).abs() < 1e-3);
    }

    #[test]
    fn quadrature_error_within_counting_bound() {
        for (nt, no) in [(16, 16), (64, 50), (360, 200), (720, 400), (360, 1000), (360, 8000)] {
            let q: f64 = expected_crossings_quadrature(nt, no).unwrap();
            let bound = 4.0 / no as f64 + 1e-4;
            assert!((q - TWELVE_OVER_PI).abs() <= bound, "{nt}x{no}: {q}");
        }
    }

    #[test]
    fn coarse_quadrature() {
        // Every 8-point offset lattice lands inside every projection window here.
        let q: f64 = expected_crossings_quadrature(8, 8).unwrap();
        assert_eq!(q, 4.0);
        assert!((q - TWELVE_OVER_PI).abs() <= 4.0 / 8.0);
        assert!(expected_crossings_quadrature::<f64>(7, 8).is_err());
        assert!(expected_crossings_quadrature::<f64>(8, 4).is_err());
    }

    #[test]
    fn quadrature_is_periodic_in_rotation() {
        let a: f64 = quadrature_with_origin(90, 512, 0.0).unwrap();
        let b: f64 = quadrature_with_origin(90, 512, 2.0 * PI / 3.0).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        let c: f64 = quadrature_with_origin(90, 512, 0.3).unwrap();
        assert_abs_diff_eq!(a, c, epsilon = 2.0 * 4.0 / 512.0);
    }

    #[test]
    fn works_in_f32() {
        let q: f32 = expected_crossings_quadrature(64, 64).unwrap();
        assert!((q - 12.0 / std::f32::consts::PI).abs() < 4.0 / 64.0 + 1e-3);
    }

    #[test]
    fn mean_width_values() {
        assert_abs_diff_eq!(mean_width_identity(1.0).unwrap(), 0.954930, epsilon = 1e-6);
        assert_abs_diff_eq!(mean_width_identity(2.0).unwrap(), 1.909859, epsilon = 1e-6);
        assert!(mean_width_identity(0.0f64).is_err());
    }

    #[test]
    fn numeric_mean_width() {
        let w: f64 = average_projection_width(1.0, 10_000).unwrap();
        assert_abs_diff_eq!(w, 3.0 / PI, epsilon = 1e-4);
    }

    #[test]
    fn closed_form() {
        assert_abs_diff_eq!(expected_crossings_closed_form(1.0, 1.0).unwrap(), 3.8197186, epsilon = 1e-7);
        assert!(matches!(expected_crossings_closed_form(1.0, 2.0), Err(Error::UnsupportedConfiguration(_))));
        let q: f64 = expected_crossings_quadrature(360, 8000).unwrap();
        assert_abs_diff_eq!(q, expected_crossings_closed_form(1.0, 1.0).unwrap(), epsilon = 1e-3);
    }

    #[test]
    fn projection_width_extremes() {
        let v = make_triangle(Point::origin(), 1.0, 0.0).unwrap();
        // Along y a side is parallel to the projection: full side length.
        assert_abs_diff_eq!(projection_width(&v, PI / 2.0), 1.0, epsilon = 1e-12);
        // Along x: the height.
        assert_abs_diff_eq!(projection_width(&v, 0.0), 3f64.sqrt() / 2.0, epsilon = 1e-12);
    }
}
