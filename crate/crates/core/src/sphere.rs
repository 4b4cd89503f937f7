//! Points on S^n = R^n ∪ {∞}, the chordal metric, round rings and their
//! closed-form moduli, point-to-∞ Möbius inversion, and chordal isometries
//! used to recenter configurations at the origin.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest ambient dimension any routine accepts.
pub const MAX_DIM: usize = 4;

/// Which distance a ring or an analysis is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Chordal,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Euclidean => write!(f, "euclidean"),
            Metric::Chordal => write!(f, "chordal"),
        }
    }
}

/// A point of S^n ≅ R^n ∪ {∞}, for n in 2..=4.
///
/// Finite points carry coordinates; the point at infinity carries none.
/// The dimension is fixed at construction and all binary operations insist
/// on matching dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    coords: [f64; MAX_DIM],
    dim: usize,
    infinite: bool,
}

impl Point {
    /// Finite point from coordinates. Panics if the dimension is outside
    /// 2..=4 or any coordinate is non-finite; those are programming errors,
    /// not data errors.
    pub fn finite(coords: &[f64]) -> Point {
        assert!(
            (2..=MAX_DIM).contains(&coords.len()),
            "point dimension {} outside supported range 2..={}",
            coords.len(),
            MAX_DIM
        );
        assert!(
            coords.iter().all(|c| c.is_finite()),
            "finite point constructed with non-finite coordinate {:?}",
            coords
        );
        let mut c = [0.0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Point { coords: c, dim: coords.len(), infinite: false }
    }

    /// The point at infinity of S^n.
    pub fn infinity(dim: usize) -> Point {
        assert!((2..=MAX_DIM).contains(&dim));
        Point { coords: [0.0; MAX_DIM], dim, infinite: true }
    }

    /// The origin of R^n.
    pub fn origin(dim: usize) -> Point {
        assert!((2..=MAX_DIM).contains(&dim));
        Point { coords: [0.0; MAX_DIM], dim, infinite: false }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn is_finite(&self) -> bool {
        !self.infinite
    }

    /// Coordinates of a finite point. Panics on the point at infinity.
    pub fn coords(&self) -> &[f64] {
        assert!(!self.infinite, "coords() called on the point at infinity");
        &self.coords[..self.dim]
    }

    pub fn norm_sq(&self) -> f64 {
        assert!(!self.infinite, "norm_sq() called on the point at infinity");
        self.coords[..self.dim].iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        assert_eq!(self.dim, other.dim);
        assert!(!self.infinite && !other.infinite);
        (0..self.dim).map(|i| self.coords[i] * other.coords[i]).sum()
    }

    /// Euclidean distance between finite points; infinite if either operand
    /// is the point at infinity.
    pub fn distance(&self, other: &Point) -> f64 {
        assert_eq!(self.dim, other.dim);
        if self.infinite || other.infinite {
            if self.infinite && other.infinite {
                return 0.0;
            }
            return f64::INFINITY;
        }
        (0..self.dim)
            .map(|i| {
                let d = self.coords[i] - other.coords[i];
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Componentwise approximate equality (both infinite also passes).
    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        match (self.infinite, other.infinite) {
            (true, true) => true,
            (false, false) => self.distance(other) <= tol,
            _ => false,
        }
    }

    /// The antipodal point on S^n: x ↦ −x/|x|², with 0 and ∞ swapped.
    pub fn antipode(&self) -> Point {
        if self.infinite {
            return Point::origin(self.dim);
        }
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Point::infinity(self.dim);
        }
        let mut c = [0.0; MAX_DIM];
        for i in 0..self.dim {
            c[i] = -self.coords[i] / n2;
        }
        let p = Point { coords: c, dim: self.dim, infinite: false };
        if p.coords[..p.dim].iter().all(|v| v.is_finite()) {
            p
        } else {
            Point::infinity(self.dim)
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinite {
            return write!(f, "inf");
        }
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for a finite 2-d point.
pub fn pt2(x: f64, y: f64) -> Point {
    Point::finite(&[x, y])
}

/// Shorthand for a finite 3-d point.
pub fn pt3(x: f64, y: f64, z: f64) -> Point {
    Point::finite(&[x, y, z])
}

/// Chordal distance on S^n, normalized so the diameter is 1 and antipodal
/// pairs are exactly at distance 1:
/// χ(x, y) = |x − y| / (√(1+|x|²)·√(1+|y|²)), with χ(x, ∞) = 1/√(1+|x|²).
pub fn chordal_distance(x: &Point, y: &Point) -> f64 {
    assert_eq!(x.dim(), y.dim(), "chordal_distance: dimension mismatch");
    let d = match (x.is_infinite(), y.is_infinite()) {
        (true, true) => 0.0,
        (true, false) => (1.0 + y.norm_sq()).sqrt().recip(),
        (false, true) => (1.0 + x.norm_sq()).sqrt().recip(),
        (false, false) => {
            x.distance(y) / ((1.0 + x.norm_sq()).sqrt() * (1.0 + y.norm_sq()).sqrt())
        }
    };
    // The exact value never exceeds 1; clamp away the last-ulp excess that
    // floating-point evaluation can produce for near-antipodal pairs.
    d.min(1.0)
}

/// Distance in the requested metric. Euclidean distance to ∞ is +∞.
pub fn metric_distance(metric: Metric, x: &Point, y: &Point) -> f64 {
    match metric {
        Metric::Euclidean => x.distance(y),
        Metric::Chordal => chordal_distance(x, y),
    }
}

fn check_ring_radii(inner: f64, outer: f64) -> Result<()> {
    if !(inner.is_finite() && outer.is_finite() && inner > 0.0 && inner < outer) {
        return Err(Error::DegenerateRing { inner, outer });
    }
    Ok(())
}

/// Modulus of the Euclidean annulus A_d(x, u, w): log(w/u).
pub fn euclidean_ring_modulus(inner: f64, outer: f64) -> Result<f64> {
    check_ring_radii(inner, outer)?;
    Ok((outer / inner).ln())
}

/// Modulus of the chordal annulus A_χ(x, u, w) for 0 < u < w < 1:
/// log((w/u)·√((1−u²)/(1−w²))).
///
/// Radii at or above 1 are rejected: the closed form is only cited for
/// annuli that stay away from the antipode of the center.
pub fn chordal_ring_modulus(inner: f64, outer: f64) -> Result<f64> {
    if outer >= 1.0 || inner >= 1.0 {
        return Err(Error::ChordalRadiusOutOfRange(outer.max(inner)));
    }
    check_ring_radii(inner, outer)?;
    let ratio = (1.0 - inner * inner) / (1.0 - outer * outer);
    Ok(((outer / inner) * ratio.sqrt()).ln())
}

/// An open round annulus A(center, inner, outer) in the chosen metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundRing {
    center: Point,
    inner: f64,
    outer: f64,
    metric: Metric,
}

impl RoundRing {
    /// Validates 0 < inner < outer (and outer ≤ 1 for chordal rings; a
    /// chordal ring may reach the antipode but not wrap past it) with a
    /// finite center.
    pub fn new(center: Point, inner: f64, outer: f64, metric: Metric) -> Result<RoundRing> {
        if center.is_infinite() {
            return Err(Error::InfinitePoint);
        }
        check_ring_radii(inner, outer)?;
        if metric == Metric::Chordal && outer > 1.0 {
            return Err(Error::ChordalRadiusOutOfRange(outer));
        }
        Ok(RoundRing { center, inner, outer, metric })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn inner(&self) -> f64 {
        self.inner
    }

    pub fn outer(&self) -> f64 {
        self.outer
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Closed-form conformal modulus of the ring.
    pub fn modulus(&self) -> Result<f64> {
        match self.metric {
            Metric::Euclidean => euclidean_ring_modulus(self.inner, self.outer),
            Metric::Chordal => chordal_ring_modulus(self.inner, self.outer),
        }
    }

    /// Whether a point lies in the open annulus.
    pub fn contains(&self, p: &Point) -> bool {
        let d = metric_distance(self.metric, &self.center, p);
        d > self.inner && d < self.outer
    }
}

/// Checks mod(inner ring) ≤ mod(outer ring) for a nested pair.
///
/// Nesting is verified with the triangle-inequality criterion
/// d(centers) ≤ u_inner − u_outer and d(centers) ≤ w_outer − w_inner,
/// which is exact for concentric rings and sufficient in general; pairs
/// that fail it are rejected as a precondition error rather than compared.
pub fn modulus_monotonicity_check(inner: &RoundRing, outer: &RoundRing) -> Result<bool> {
    if inner.metric != outer.metric {
        return Err(Error::MetricMismatch);
    }
    if inner.center.dim() != outer.center.dim() {
        return Err(Error::DimensionMismatch(inner.center.dim(), outer.center.dim()));
    }
    let sep = metric_distance(inner.metric, &inner.center, &outer.center);
    if sep > inner.inner - outer.inner || sep > outer.outer - inner.outer {
        return Err(Error::NotNested(format!(
            "center separation {sep} exceeds radius slack ({} vs {} inner, {} vs {} outer)",
            inner.inner, outer.inner, inner.outer, outer.outer
        )));
    }
    Ok(inner.modulus()? <= outer.modulus()? + 1e-12)
}

/// The Möbius inversion y ↦ (y − pole)/|y − pole|², which sends the pole
/// to ∞ and ∞ to 0. It is conformal (1-quasiregular) on all of S^n.
///
/// The map is an involution exactly when the pole is the origin; for other
/// poles the exact inverse w ↦ pole + w/|w|² is provided separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusInversion {
    pole: Point,
}

impl MoebiusInversion {
    /// Inversion sending `pole` (finite) to ∞.
    pub fn new(pole: Point) -> Result<MoebiusInversion> {
        if pole.is_infinite() {
            return Err(Error::InfinitePoint);
        }
        Ok(MoebiusInversion { pole })
    }

    pub fn pole(&self) -> &Point {
        &self.pole
    }

    /// Applies the inversion; total on S^n.
    pub fn apply(&self, y: &Point) -> Point {
        let dim = self.pole.dim();
        assert_eq!(dim, y.dim(), "invert: dimension mismatch");
        if y.is_infinite() {
            return Point::origin(dim);
        }
        let mut diff = [0.0; MAX_DIM];
        let mut n2 = 0.0;
        for i in 0..dim {
            diff[i] = y.coords()[i] - self.pole.coords()[i];
            n2 += diff[i] * diff[i];
        }
        if n2 == 0.0 {
            return Point::infinity(dim);
        }
        let mut out = [0.0; MAX_DIM];
        let mut finite = true;
        for i in 0..dim {
            out[i] = diff[i] / n2;
            finite &= out[i].is_finite();
        }
        if !finite {
            return Point::infinity(dim);
        }
        Point { coords: out, dim, infinite: false }
    }

    /// Exact inverse of `apply`: w ↦ pole + w/|w|², with 0 ↦ ∞ and
    /// ∞ ↦ pole.
    pub fn apply_inverse(&self, w: &Point) -> Point {
        let dim = self.pole.dim();
        assert_eq!(dim, w.dim(), "invert: dimension mismatch");
        if w.is_infinite() {
            return self.pole;
        }
        let n2 = w.norm_sq();
        if n2 == 0.0 {
            return Point::infinity(dim);
        }
        let mut out = [0.0; MAX_DIM];
        let mut finite = true;
        for i in 0..dim {
            out[i] = self.pole.coords()[i] + w.coords()[i] / n2;
            finite &= out[i].is_finite();
        }
        if !finite {
            return Point::infinity(dim);
        }
        Point { coords: out, dim, infinite: false }
    }
}

/// Surface area ω_{n−1} of the unit (n−1)-sphere bounding the unit ball of
/// R^n: ω₁ = 2π, ω₂ = 4π, ω₃ = 2π².
pub fn sphere_surface_area(n: usize) -> Result<f64> {
    match n {
        2 => Ok(2.0 * std::f64::consts::PI),
        3 => Ok(4.0 * std::f64::consts::PI),
        4 => Ok(2.0 * std::f64::consts::PI * std::f64::consts::PI),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// Capacity of a ring with the given modulus: cap = ω_{n−1}·mod^{1−n}.
pub fn modulus_to_capacity(n: usize, modulus: f64) -> Result<f64> {
    if !(modulus.is_finite() && modulus > 0.0) {
        return Err(Error::InvalidParameter {
            name: "modulus",
            reason: format!("must be positive and finite, got {modulus}"),
        });
    }
    Ok(sphere_surface_area(n)? * modulus.powi(1 - n as i32))
}

/// Modulus of a ring with the given capacity: mod = (ω_{n−1}/cap)^{1/(n−1)}.
pub fn capacity_to_modulus(n: usize, capacity: f64) -> Result<f64> {
    if !(capacity.is_finite() && capacity > 0.0) {
        return Err(Error::InvalidParameter {
            name: "capacity",
            reason: format!("must be positive and finite, got {capacity}"),
        });
    }
    Ok((sphere_surface_area(n)? / capacity).powf(1.0 / (n as f64 - 1.0)))
}

/// Euclidean realization of the chordal sphere {y : χ(center, y) = r}.
///
/// Returns the Euclidean center and radius of that set, which is a round
/// Euclidean sphere whenever it does not pass through ∞. Returns None when
/// it does (r²·(1+|center|²) ≥ 1), in which case the set is a hyperplane or
/// encloses the point at infinity. An infinite center gives the sphere
/// |y| = √(1/r² − 1) about the origin.
pub fn chordal_sphere_to_euclidean(center: &Point, r: f64) -> Option<(Point, f64)> {
    if !(r > 0.0 && r < 1.0) {
        return None;
    }
    let dim = center.dim();
    if center.is_infinite() {
        return Some((Point::origin(dim), (1.0 / (r * r) - 1.0).sqrt()));
    }
    let a = r * r * (1.0 + center.norm_sq());
    if a >= 1.0 {
        return None;
    }
    let scale = 1.0 / (1.0 - a);
    let mut c = [0.0; MAX_DIM];
    for i in 0..dim {
        c[i] = center.coords()[i] * scale;
    }
    let radius = (a * (1.0 + center.norm_sq() - a)).sqrt() * scale;
    Some((Point { coords: c, dim, infinite: false }, radius))
}

/// A chordal isometry of S^n carrying a marked point to the origin.
///
/// For a finite nonzero marked point x it is the rotation-like Möbius map
///
///   U(y) = [(1+|x|²)·y + (1−|y|²)·x − 2(x̂·y)·x̂·|x|·… ]  (see apply)
///
/// realized as inversion at the antipode of x composed with a dilation and
/// recentering; for x = 0 it is the identity and for x = ∞ it is inversion
/// at the origin. Chordal distances are preserved exactly (up to roundoff).
#[derive(Debug, Clone, Copy)]
pub struct ChordalIsometry {
    x: Point,
}

impl ChordalIsometry {
    /// The isometry sending `x` to the origin.
    pub fn to_origin(x: &Point) -> ChordalIsometry {
        ChordalIsometry { x: *x }
    }

    /// The marked point (mapped to the origin).
    pub fn marked_point(&self) -> &Point {
        &self.x
    }

    /// Applies the isometry; total on S^n.
    pub fn apply(&self, y: &Point) -> Point {
        let dim = self.x.dim();
        assert_eq!(dim, y.dim(), "chordal isometry: dimension mismatch");
        if self.x.is_infinite() {
            // Inversion at the origin is a chordal isometry swapping 0 and ∞.
            return MoebiusInversion::new(Point::origin(dim)).unwrap().apply(y);
        }
        let xs = self.x.coords();
        let x2 = self.x.norm_sq();
        if x2 == 0.0 {
            return *y;
        }
        if y.is_infinite() {
            return self.x.antipode();
        }
        let ys = y.coords();
        let y2 = y.norm_sq();
        let dot: f64 = (0..dim).map(|i| xs[i] * ys[i]).sum();
        let denom = 1.0 + 2.0 * dot + x2 * y2;
        if denom == 0.0 {
            return Point::infinity(dim);
        }
        let mut out = [0.0; MAX_DIM];
        let mut finite = true;
        for i in 0..dim {
            let num = (1.0 + x2) * ys[i] + (1.0 - y2) * xs[i] - 2.0 * dot * xs[i] / x2;
            out[i] = num / denom;
            finite &= out[i].is_finite();
        }
        if !finite {
            return Point::infinity(dim);
        }
        Point { coords: out, dim, infinite: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_finite(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Point {
        let mut c = [0.0; MAX_DIM];
        for v in c.iter_mut().take(dim) {
            *v = rng.gen_range(-scale..scale);
        }
        Point::finite(&c[..dim])
    }

    fn random_sphere_point(rng: &mut ChaCha8Rng, dim: usize) -> Point {
        // Mix norm scales and the point at infinity to cover the whole sphere.
        match rng.gen_range(0..10) {
            0 => Point::infinity(dim),
            1 => Point::origin(dim),
            k => {
                let scale = if k < 6 { 2.0 } else { 50.0 };
                random_finite(rng, dim, scale)
            }
        }
    }

    #[test]
    fn chordal_distance_pinned_values() {
        let origin = Point::origin(2);
        let inf = Point::infinity(2);
        assert_eq!(chordal_distance(&origin, &inf), 1.0);
        let e1 = pt2(1.0, 0.0);
        assert!((chordal_distance(&origin, &e1) - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(chordal_distance(&e1, &e1), 0.0);
        assert_eq!(chordal_distance(&inf, &inf), 0.0);
    }

    #[test]
    fn chordal_distance_is_a_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2usize, 3] {
            for _ in 0..300 {
                let a = random_sphere_point(&mut rng, dim);
                let b = random_sphere_point(&mut rng, dim);
                let c = random_sphere_point(&mut rng, dim);
                let ab = chordal_distance(&a, &b);
                let ba = chordal_distance(&b, &a);
                assert_eq!(ab, ba, "symmetry");
                assert!(ab <= 1.0, "diameter bound");
                assert!(ab >= 0.0);
                let ac = chordal_distance(&a, &c);
                let cb = chordal_distance(&c, &b);
                assert!(ab <= ac + cb + 1e-12, "triangle: {ab} > {ac} + {cb}");
            }
        }
    }

    #[test]
    fn chordal_distance_antipodal_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let x = random_finite(&mut rng, 3, 3.0);
            if x.norm() < 1e-3 {
                continue;
            }
            let anti = x.antipode();
            assert!((chordal_distance(&x, &anti) - 1.0).abs() < 1e-12);
            // A generic second point is strictly closer than antipodal.
            let y = random_finite(&mut rng, 3, 3.0);
            if !y.approx_eq(&anti, 1e-6) {
                assert!(chordal_distance(&x, &y) < 1.0);
            }
        }
    }

    #[test]
    fn euclidean_modulus_pinned_values() {
        assert!((euclidean_ring_modulus(1.0, std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        assert!((euclidean_ring_modulus(0.5, 9.5).unwrap() - 19.0_f64.ln()).abs() < 1e-15);
        assert!(matches!(
            euclidean_ring_modulus(2.0, 2.0),
            Err(Error::DegenerateRing { .. })
        ));
        assert!(matches!(
            euclidean_ring_modulus(3.0, 2.0),
            Err(Error::DegenerateRing { .. })
        ));
        assert!(matches!(
            euclidean_ring_modulus(0.0, 2.0),
            Err(Error::DegenerateRing { .. })
        ));
    }

    #[test]
    fn euclidean_modulus_concentric_additivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let u = rng.gen_range(1e-3..1.0);
            let v = u * rng.gen_range(1.001..50.0);
            let w = v * rng.gen_range(1.001..50.0);
            let lhs = euclidean_ring_modulus(u, v).unwrap() + euclidean_ring_modulus(v, w).unwrap();
            let rhs = euclidean_ring_modulus(u, w).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "additivity: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn chordal_modulus_pinned_values() {
        // log(5·√(0.99/0.75)) for the (0.1, 0.5) annulus.
        let m = chordal_ring_modulus(0.1, 0.5).unwrap();
        assert!((m - 1.7482537807332401).abs() < 1e-12);
        assert!((m - (5.0 * (0.99_f64 / 0.75).sqrt()).ln()).abs() < 1e-15);
        assert!(matches!(
            chordal_ring_modulus(0.1, 1.0),
            Err(Error::ChordalRadiusOutOfRange(_))
        ));
        assert!(matches!(
            chordal_ring_modulus(0.1, 0.1),
            Err(Error::DegenerateRing { .. })
        ));
        // Equal radii are the degenerate limit: the modulus vanishes as w → u.
        let near = chordal_ring_modulus(0.1, 0.1 + 1e-9).unwrap();
        assert!(near.abs() < 2e-8, "limit case: {near}");
    }

    #[test]
    fn chordal_modulus_halving_lower_bound() {
        // mod ≥ log(w/(2u)) whenever √((1−u²)/(1−w²)) ≥ 1/2, which holds for
        // every valid u < w; checked across the admissible range w ≤ 0.9.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..300 {
            let w = rng.gen_range(0.05..0.9);
            let u = rng.gen_range(1e-4..w * 0.999);
            assert!((1.0 - u * u) / (1.0 - w * w) >= 0.25);
            let m = chordal_ring_modulus(u, w).unwrap();
            assert!(m >= (w / (2.0 * u)).ln() - 1e-12);
        }
    }

    #[test]
    fn chordal_modulus_exceeds_euclidean_form() {
        // The spherical correction factor √((1−u²)/(1−w²)) is ≥ 1, so the
        // chordal modulus dominates log(w/u).
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..200 {
            let w = rng.gen_range(0.01..0.999);
            let u = rng.gen_range(1e-4..w * 0.999);
            assert!(
                chordal_ring_modulus(u, w).unwrap()
                    >= euclidean_ring_modulus(u, w).unwrap() - 1e-12
            );
        }
    }

    #[test]
    fn round_ring_validation() {
        let c = pt2(0.3, -0.1);
        assert!(RoundRing::new(c, 1.0, 2.0, Metric::Euclidean).is_ok());
        assert!(RoundRing::new(c, 0.2, 0.9, Metric::Chordal).is_ok());
        // A chordal ring may reach the antipode (outer = 1)...
        assert!(RoundRing::new(c, 0.2, 1.0, Metric::Chordal).is_ok());
        // ...but its closed-form modulus is only defined short of it.
        assert!(RoundRing::new(c, 0.2, 1.0, Metric::Chordal)
            .unwrap()
            .modulus()
            .is_err());
        assert!(RoundRing::new(c, 0.2, 1.1, Metric::Chordal).is_err());
        assert!(RoundRing::new(Point::infinity(2), 1.0, 2.0, Metric::Euclidean).is_err());
        assert!(RoundRing::new(c, 2.0, 2.0, Metric::Euclidean).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        let x = pt2(0.4, 1.2);
        let a = RoundRing::new(x, 1.0, 2.0, Metric::Euclidean).unwrap();
        let b = RoundRing::new(x, 0.5, 4.0, Metric::Euclidean).unwrap();
        assert!(modulus_monotonicity_check(&a, &b).unwrap());
        assert!(modulus_monotonicity_check(&a, &a).unwrap(), "ring nested in itself");
        // Disjoint or crossing pairs are precondition errors, not `false`.
        let far = RoundRing::new(pt2(10.0, 0.0), 1.0, 2.0, Metric::Euclidean).unwrap();
        assert!(matches!(
            modulus_monotonicity_check(&a, &far),
            Err(Error::NotNested(_))
        ));
        let chordal = RoundRing::new(x, 0.1, 0.5, Metric::Chordal).unwrap();
        assert!(matches!(
            modulus_monotonicity_check(&chordal, &b),
            Err(Error::MetricMismatch)
        ));
    }

    #[test]
    fn monotonicity_randomized_nested_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..200 {
            // Build the outer ring, then shrink it towards a shifted center
            // while keeping the triangle-inequality slack positive.
            let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
            let c_out = random_finite(&mut rng, dim, 2.0);
            let u_out = rng.gen_range(0.05..1.0);
            let w_out = u_out + rng.gen_range(0.5..4.0);
            let outer = RoundRing::new(c_out, u_out, w_out, Metric::Euclidean).unwrap();

            let slack = rng.gen_range(0.0..0.2);
            let dir = random_finite(&mut rng, dim, 1.0);
            let n = dir.norm().max(1e-9);
            let mut cc = [0.0; MAX_DIM];
            for i in 0..dim {
                cc[i] = c_out.coords()[i] + dir.coords()[i] / n * slack;
            }
            let c_in = Point::finite(&cc[..dim]);
            let u_in = u_out + slack + rng.gen_range(0.0..0.3);
            let w_in = w_out - slack - rng.gen_range(0.0..0.3);
            if w_in <= u_in {
                continue;
            }
            let inner = RoundRing::new(c_in, u_in, w_in, Metric::Euclidean).unwrap();
            assert!(modulus_monotonicity_check(&inner, &outer).unwrap());
        }
    }

    #[test]
    fn invert_pinned_values() {
        let g = MoebiusInversion::new(Point::origin(2)).unwrap();
        let e1 = pt2(1.0, 0.0);
        assert!(g.apply(&e1).approx_eq(&e1, 0.0), "unit vectors fixed by inversion at 0");
        assert!(g.apply(&Point::infinity(2)).approx_eq(&Point::origin(2), 0.0));
        assert!(g.apply(&Point::origin(2)).is_infinite());
    }

    #[test]
    fn invert_is_involution_at_origin_pole() {
        let g = MoebiusInversion::new(Point::origin(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let y = random_sphere_point(&mut rng, 3);
            let back = g.apply(&g.apply(&y));
            if y.is_infinite() {
                assert!(back.is_infinite());
            } else {
                // Relative tolerance: far points round-trip through tiny images.
                let tol = 1e-12 * (1.0 + y.norm());
                assert!(back.approx_eq(&y, tol), "{y} -> {back}");
            }
        }
    }

    #[test]
    fn invert_round_trips_for_general_poles() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..100 {
            let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
            let g = MoebiusInversion::new(random_finite(&mut rng, dim, 2.0)).unwrap();
            let y = random_sphere_point(&mut rng, dim);
            let back = g.apply_inverse(&g.apply(&y));
            if y.is_infinite() {
                assert!(back.is_infinite());
            } else {
                let tol = 1e-12 * (1.0 + y.norm());
                assert!(back.approx_eq(&y, tol), "{y} -> {back}");
            }
            assert!(g.apply(&*g.pole()).is_infinite());
            assert!(g.apply(&Point::infinity(dim)).approx_eq(&Point::origin(dim), 0.0));
        }
    }

    #[test]
    fn invert_maps_chordal_annulus_to_equal_modulus_ring() {
        // The image of A_χ(pole, u, w) under inversion at the pole is the
        // round ring between two spheres centered at the image of the
        // pole's antipode; its modulus equals the chordal-annulus modulus.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
            let pole = random_finite(&mut rng, dim, 1.0);
            let g = MoebiusInversion::new(pole).unwrap();
            let u = rng.gen_range(0.05..0.3);
            let w = rng.gen_range(u + 0.05..0.5);
            let expected = chordal_ring_modulus(u, w).unwrap();

            let hub = g.apply(&pole.antipode());
            let mut radii = [0.0_f64, 0.0];
            for (slot, r) in [u, w].into_iter().enumerate() {
                let (ec, er) = chordal_sphere_to_euclidean(&pole, r).unwrap();
                let mut seen = Vec::new();
                for k in 0..24 {
                    // Sample the boundary sphere through a couple of planes.
                    let t = k as f64 / 24.0 * std::f64::consts::TAU;
                    let mut c = [0.0; MAX_DIM];
                    c[..dim].copy_from_slice(ec.coords());
                    c[0] += er * t.cos();
                    c[1] += er * t.sin();
                    let boundary = Point::finite(&c[..dim]);
                    assert!((chordal_distance(&pole, &boundary) - r).abs() < 1e-12);
                    seen.push(g.apply(&boundary).distance(&hub));
                }
                let first = seen[0];
                for s in &seen {
                    assert!((s - first).abs() < 1e-10 * first, "image sphere is round");
                }
                radii[slot] = first;
            }
            // Inversion swaps inside and outside, so the outer chordal sphere
            // becomes the inner Euclidean one.
            let m = euclidean_ring_modulus(radii[1], radii[0]).unwrap();
            assert!((m - expected).abs() < 1e-10, "modulus preserved: {m} vs {expected}");
        }
    }

    #[test]
    fn surface_areas_and_capacity_conversion() {
        assert!((sphere_surface_area(2).unwrap() - std::f64::consts::TAU).abs() < 1e-15);
        assert!((sphere_surface_area(3).unwrap() - 4.0 * std::f64::consts::PI).abs() < 1e-15);
        assert!(
            (sphere_surface_area(4).unwrap() - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-15
        );
        assert!(sphere_surface_area(5).is_err());
        assert!(sphere_surface_area(1).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..100 {
            let n = if rng.gen_bool(0.5) { 2 } else { 3 };
            let m = rng.gen_range(0.01..20.0);
            let cap = modulus_to_capacity(n, m).unwrap();
            assert!((capacity_to_modulus(n, cap).unwrap() - m).abs() < 1e-12 * m.max(1.0));
        }
        // Planar ring of modulus 2π has capacity 1.
        assert!((modulus_to_capacity(2, std::f64::consts::TAU).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chordal_sphere_euclidean_realization() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
            let c = random_finite(&mut rng, dim, 1.0);
            let r_max = (1.0 + c.norm_sq()).sqrt().recip();
            let r = rng.gen_range(0.05..r_max * 0.98);
            let (ec, er) = chordal_sphere_to_euclidean(&c, r).unwrap();
            for k in 0..16 {
                let t = k as f64 / 16.0 * std::f64::consts::TAU;
                let mut p = [0.0; MAX_DIM];
                p[..dim].copy_from_slice(ec.coords());
                p[0] += er * t.cos();
                p[dim - 1] += er * t.sin();
                let q = Point::finite(&p[..dim]);
                assert!((chordal_distance(&c, &q) - r).abs() < 1e-12);
            }
        }
        // Centered case: Euclidean radius r/√(1−r²).
        let (ec, er) = chordal_sphere_to_euclidean(&Point::origin(2), 0.6).unwrap();
        assert!(ec.approx_eq(&Point::origin(2), 0.0));
        assert!((er - 0.6 / (1.0_f64 - 0.36).sqrt()).abs() < 1e-15);
        // Spheres through or past the antipode have no Euclidean realization.
        assert!(chordal_sphere_to_euclidean(&Point::origin(2), 1.0).is_none());
        let far = pt2(3.0, 4.0);
        assert!(chordal_sphere_to_euclidean(&far, 0.9).is_none());
    }

    #[test]
    fn chordal_isometry_preserves_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..120 {
            let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
            let x = match rng.gen_range(0..8) {
                0 => Point::origin(dim),
                1 => Point::infinity(dim),
                _ => random_finite(&mut rng, dim, 3.0),
            };
            let iso = ChordalIsometry::to_origin(&x);
            assert!(
                chordal_distance(&iso.apply(&x), &Point::origin(dim)) < 1e-12,
                "marked point reaches the origin"
            );
            for _ in 0..20 {
                let y = random_sphere_point(&mut rng, dim);
                let z = random_sphere_point(&mut rng, dim);
                let before = chordal_distance(&y, &z);
                let after = chordal_distance(&iso.apply(&y), &iso.apply(&z));
                assert!(
                    (before - after).abs() < 1e-12,
                    "isometry: χ {before} became {after} (marked {x})"
                );
            }
        }
    }

    #[test]
    fn chordal_isometry_special_points() {
        let x = pt3(0.7, -0.2, 1.1);
        let iso = ChordalIsometry::to_origin(&x);
        // ∞ lands on the antipode of x, preserving χ(∞, x) = χ(image, 0).
        let img_inf = iso.apply(&Point::infinity(3));
        assert!(img_inf.approx_eq(&x.antipode(), 1e-12));
        // The antipode of x is sent to ∞.
        assert!(iso.apply(&x.antipode()).is_infinite());
    }
}
