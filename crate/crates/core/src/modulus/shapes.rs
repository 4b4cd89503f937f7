//! Geometric condensers: plates described as balls, spheres, segment tubes,
//! polylines, and point clouds are rasterized onto a grid and handed to the
//! modulus solver. Also home of the point-cloud condenser `capac(x, E, r)`
//! and the chordal thickness functional, which recenters by a chordal
//! isometry and then works on an ordinary Euclidean grid (legitimate for
//! the conformal exponent p = n, where the modulus is a conformal
//! invariant).

use super::{solve_modulus, CapacityResult, GridCondenser, SolveOptions, SolveOutput};
use crate::error::{Error, Result};
use crate::grid::{AxisSpec, Grid};
use crate::sphere::{ChordalIsometry, Point, MAX_DIM};

/// A condenser plate as a geometric primitive in Euclidean coordinates.
#[derive(Debug, Clone)]
pub enum PlateSpec {
    /// Closed ball {|y − center| ≤ radius}.
    Ball { center: Point, radius: f64 },
    /// Closed complement {|y − center| ≥ radius}; rasterizes to the shell
    /// between the sphere and the bounding box.
    BallComplement { center: Point, radius: f64 },
    /// Thin spherical shell around {|y − center| = radius}.
    Sphere { center: Point, radius: f64 },
    /// Segment from a to b dilated by `radius` (zero means one grid cell).
    Segment { a: Point, b: Point, radius: f64 },
    /// Chain of segments through `points`, dilated by `radius`.
    Polyline { points: Vec<Point>, radius: f64 },
    /// Union of balls of radius `radius` about each point (zero means one
    /// grid cell).
    Cloud { points: Vec<Point>, radius: f64 },
}

impl PlateSpec {
    pub fn dim(&self) -> Result<usize> {
        let dims: Vec<usize> = match self {
            PlateSpec::Ball { center, .. }
            | PlateSpec::BallComplement { center, .. }
            | PlateSpec::Sphere { center, .. } => vec![center.dim()],
            PlateSpec::Segment { a, b, .. } => vec![a.dim(), b.dim()],
            PlateSpec::Polyline { points, .. } | PlateSpec::Cloud { points, .. } => {
                points.iter().map(|p| p.dim()).collect()
            }
        };
        let Some(&first) = dims.first() else {
            return Err(Error::InvalidParameter {
                name: "plate",
                reason: "plate primitive contains no points".into(),
            });
        };
        for &d in &dims {
            if d != first {
                return Err(Error::DimensionMismatch(first, d));
            }
        }
        self.each_point(|p| {
            if p.is_infinite() {
                Err(Error::InfinitePoint)
            } else {
                Ok(())
            }
        })?;
        Ok(first)
    }

    fn each_point(&self, mut f: impl FnMut(&Point) -> Result<()>) -> Result<()> {
        match self {
            PlateSpec::Ball { center, .. }
            | PlateSpec::BallComplement { center, .. }
            | PlateSpec::Sphere { center, .. } => f(center),
            PlateSpec::Segment { a, b, .. } => {
                f(a)?;
                f(b)
            }
            PlateSpec::Polyline { points, .. } | PlateSpec::Cloud { points, .. } => {
                for p in points {
                    f(p)?;
                }
                Ok(())
            }
        }
    }

    /// ∞-norm reach from the origin of the finite part of the plate; for a
    /// complement this is the reach of the bounding sphere itself.
    fn extent(&self) -> f64 {
        let reach = |p: &Point, r: f64| -> f64 {
            p.coords().iter().fold(0.0f64, |m, &c| m.max(c.abs())) + r
        };
        match self {
            PlateSpec::Ball { center, radius }
            | PlateSpec::BallComplement { center, radius }
            | PlateSpec::Sphere { center, radius } => reach(center, *radius),
            PlateSpec::Segment { a, b, radius } => reach(a, *radius).max(reach(b, *radius)),
            PlateSpec::Polyline { points, radius } | PlateSpec::Cloud { points, radius } => {
                points
                    .iter()
                    .map(|p| reach(p, *radius))
                    .fold(0.0, f64::max)
            }
        }
    }

    fn is_complement(&self) -> bool {
        matches!(self, PlateSpec::BallComplement { .. })
    }

    fn rasterize(&self, grid: &Grid) -> Vec<u32> {
        let h = grid.spacing();
        let thin = 0.87 * h; // ≥ h·√3/2: keeps one-cell tubes/shells connected
        let nodes: Vec<usize> = match self {
            PlateSpec::Ball { center, radius } => {
                let mut v = grid.ball_nodes(center, *radius);
                if v.is_empty() {
                    v = dilated_blocks(grid, std::slice::from_ref(center));
                }
                v
            }
            PlateSpec::BallComplement { center, radius } => {
                grid.outside_nodes(center, *radius)
            }
            PlateSpec::Sphere { center, radius } => {
                let c = center.coords().to_vec();
                grid.nodes_where(|x| {
                    let d: f64 = x
                        .iter()
                        .zip(&c)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    (d - radius).abs() <= thin
                })
            }
            PlateSpec::Segment { a, b, radius } => {
                grid.segment_tube_nodes(a, b, radius.max(thin))
            }
            PlateSpec::Polyline { points, radius } => {
                let mut v: Vec<usize> = Vec::new();
                for w in points.windows(2) {
                    v.extend(grid.segment_tube_nodes(&w[0], &w[1], radius.max(thin)));
                }
                if points.len() == 1 {
                    v.extend(dilated_blocks(grid, points));
                }
                v.sort_unstable();
                v.dedup();
                v
            }
            PlateSpec::Cloud { points, radius } => {
                if *radius <= 0.0 {
                    dilated_blocks(grid, points)
                } else {
                    let mut v: Vec<usize> = Vec::new();
                    for p in points {
                        v.extend(grid.ball_nodes(p, *radius));
                        if *radius < h {
                            v.extend(dilated_blocks(grid, std::slice::from_ref(p)));
                        }
                    }
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            }
        };
        nodes.into_iter().map(|i| i as u32).collect()
    }

    /// Whether the plate is a set of measure zero (a curve or a shell): the
    /// cell of a rasterized node then lies in the ring on both sides and
    /// its density belongs in the energy. Solid plates exclude theirs.
    fn is_thin(&self) -> bool {
        match self {
            PlateSpec::Sphere { .. } => true,
            PlateSpec::Segment { radius, .. } | PlateSpec::Polyline { radius, .. } => {
                *radius == 0.0
            }
            _ => false,
        }
    }

    /// Signed distance to the plate (negative inside), used by the solver
    /// to clip edge lengths at the true analytic surface instead of the
    /// rasterized one. Only round plates benefit; the rest return None.
    fn surface(&self, grid: &Grid) -> Option<Vec<f64>> {
        match self {
            PlateSpec::Ball { center, radius } => {
                let c = center.coords().to_vec();
                Some(signed_field(grid, |x| dist(x, &c) - radius))
            }
            PlateSpec::BallComplement { center, radius } => {
                let c = center.coords().to_vec();
                Some(signed_field(grid, |x| radius - dist(x, &c)))
            }
            _ => None,
        }
    }
}

/// Empty, or all points within pairwise distance 1e−12 of the first.
fn effectively_one_point(pts: &[Point]) -> bool {
    match pts.split_first() {
        None => true,
        Some((first, rest)) => rest.iter().all(|p| first.distance(p) <= 1e-12),
    }
}

fn dist(x: &[f64], c: &[f64]) -> f64 {
    x.iter()
        .zip(c)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn signed_field(grid: &Grid, f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; grid.node_count()];
    let mut iv = [0i64; MAX_DIM];
    let mut c = [0.0; MAX_DIM];
    for id in 0..grid.node_count() {
        grid.decode(id, &mut iv);
        grid.coords_of(&iv, &mut c);
        out[id] = f(&c[..grid.dim()]);
    }
    out
}

/// Nodes within one cell (∥·∥∞ ≤ h) of any of the given points.
fn dilated_blocks(grid: &Grid, points: &[Point]) -> Vec<usize> {
    let h = grid.spacing();
    let n = grid.dim();
    let mut out: Vec<usize> = Vec::new();
    let mut iv = [0i64; MAX_DIM];
    for p in points {
        let c = p.coords();
        let mut lo_idx = [0i64; MAX_DIM];
        let mut span = [0i64; MAX_DIM];
        for k in 0..n {
            let t = (c[k] - grid.axis_lo(k)) / h;
            lo_idx[k] = (t - 1.0).ceil() as i64;
            span[k] = ((t + 1.0).floor() as i64 - lo_idx[k]).max(0) + 1;
        }
        let total: i64 = span[..n].iter().product();
        for flat in 0..total {
            let mut rest = flat;
            for k in 0..n {
                iv[k] = lo_idx[k] + rest % span[k];
                rest /= span[k];
            }
            if let Some(id) = grid.encode(&iv) {
                out.push(id);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Gridding controls shared by the geometric front-ends. `resolution` is
/// cells per axis (None picks a default for the dimension); `box_half`
/// overrides the automatic bounding-box policy.
#[derive(Debug, Clone, Default)]
pub struct ShapeOptions {
    pub resolution: Option<usize>,
    pub box_half: Option<f64>,
    pub solve: SolveOptions,
}

impl ShapeOptions {
    pub fn with_resolution(res: usize) -> ShapeOptions {
        ShapeOptions { resolution: Some(res), ..ShapeOptions::default() }
    }
}

fn pick_resolution(opts: &ShapeOptions, n: usize, coarse: bool) -> usize {
    opts.resolution.unwrap_or(match (n, coarse) {
        (2, false) => 256,
        (2, true) => 128,
        (3, false) => 96,
        _ => 64,
    })
}

/// Bounding-box half-width: a complement plate pins the box just outside
/// its sphere (the plate becomes a few-cell shell, beyond which the grid
/// would be wasted); otherwise leave headroom for curves that wander.
fn auto_box(e: &PlateSpec, f: &PlateSpec, res: usize) -> f64 {
    let ext = e.extent().max(f.extent());
    if e.is_complement() || f.is_complement() {
        let denom = (res as f64 - 8.0).max(1.0);
        ext * res as f64 / denom
    } else {
        1.5 * ext
    }
}

/// Rasterizes two plate primitives and solves for the capacity and modulus
/// of the curve family joining them. The grid is centered at the origin;
/// with no complement plate the family is truncated at the bounding box,
/// which can only lose curves, so reported capacities err low.
pub fn ring_solve(e: &PlateSpec, f: &PlateSpec, opts: &ShapeOptions) -> Result<SolveOutput> {
    let n = e.dim()?;
    let nf = f.dim()?;
    if n != nf {
        return Err(Error::DimensionMismatch(n, nf));
    }
    let res = pick_resolution(opts, n, false);
    let half = opts.box_half.unwrap_or_else(|| auto_box(e, f, res));
    if !(half.is_finite() && half > 0.0) {
        return Err(Error::InvalidParameter {
            name: "box_half",
            reason: format!("bounding box must be positive and finite, got {half}"),
        });
    }
    let grid = Grid::cube(n, -half, half, res)?;
    let plate_e = e.rasterize(&grid);
    let plate_f = f.rasterize(&grid);
    let mut c = GridCondenser::new(grid.clone(), plate_e, plate_f);
    c.surface_e = e.surface(&grid);
    c.surface_f = f.surface(&grid);
    c.thin_plates = e.is_thin() && f.is_thin();
    solve_modulus(&c, &opts.solve)
}

pub fn ring_capacity(
    e: &PlateSpec,
    f: &PlateSpec,
    opts: &ShapeOptions,
) -> Result<CapacityResult> {
    ring_solve(e, f, opts).map(|o| o.result)
}

/// capac(x, E, r): the condenser of the part of the cloud within B̄(x, r)
/// against the sphere ∂B(x, 2r), curves confined to the ball B(x, 2r).
/// Returns capacity 0 when the cloud misses B̄(x, r) entirely.
pub fn condenser_capacity(
    x: &Point,
    cloud: &[Point],
    r: f64,
    opts: &ShapeOptions,
) -> Result<CapacityResult> {
    if x.is_infinite() {
        return Err(Error::InfinitePoint);
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: format!("radius must be positive and finite, got {r}"),
        });
    }
    let n = x.dim();
    let eps = 1e-12 * (1.0 + r);
    let near: Vec<Point> = cloud
        .iter()
        .filter(|p| {
            p.dim() == n && !p.is_infinite() && x.distance(p) <= r + eps
        })
        .cloned()
        .collect();
    // Points are polar for the n-modulus (n ≥ 2): a plate that is a single
    // point carries capacity 0, and solving its one-cell rasterization
    // would instead measure the grid scale.
    if effectively_one_point(&near) {
        return Ok(CapacityResult::zero(0));
    }
    let res = pick_resolution(opts, n, true);
    let denom = (res as f64 - 8.0).max(1.0);
    let half = opts.box_half.unwrap_or(2.0 * r * res as f64 / denom);
    let h = 2.0 * half / res as f64;
    let specs: Vec<AxisSpec> = (0..n)
        .map(|k| AxisSpec {
            lo: x.coords()[k] - half,
            count: res + 1,
            periodic: false,
        })
        .collect();
    let grid = Grid::with_axes(&specs, h)?;
    let plate_e: Vec<u32> = dilated_blocks(&grid, &near)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let plate_f: Vec<u32> = grid
        .outside_nodes(x, 2.0 * r)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let c = x.coords().to_vec();
    let mut cond = GridCondenser::new(grid.clone(), plate_e, plate_f);
    cond.surface_f = Some(signed_field(&grid, |y| 2.0 * r - dist(y, &c)));
    solve_modulus(&cond, &opts.solve).map(|o| o.result)
}

/// m_t(E, r, x): thickness of the cloud at x between chordal radii r < t.
/// The marked point is sent to the origin by a chordal isometry; chordal
/// balls about the origin are round Euclidean balls, so the solve runs on
/// an ordinary grid. Conformal invariance of the n-modulus makes the
/// answer independent of the isometry chosen.
pub fn thickness(
    cloud: &[Point],
    x: &Point,
    r: f64,
    t: f64,
    opts: &ShapeOptions,
) -> Result<CapacityResult> {
    if !(r > 0.0) || !(t < 1.0) || r >= t {
        return Err(Error::InvalidParameter {
            name: "radii",
            reason: format!("need 0 < r < t < 1, got r = {r}, t = {t}"),
        });
    }
    let n = x.dim();
    let iso = ChordalIsometry::to_origin(x);
    let re = r / (1.0 - r * r).sqrt();
    let te = t / (1.0 - t * t).sqrt();
    let eps = 1e-12 * (1.0 + re);
    let near: Vec<Point> = cloud
        .iter()
        .filter(|p| p.dim() == n)
        .map(|p| iso.apply(p))
        .filter(|q| !q.is_infinite() && q.norm() <= re + eps)
        .collect();
    if effectively_one_point(&near) {
        return Ok(CapacityResult::zero(0));
    }
    let res = pick_resolution(opts, n, true);
    let denom = (res as f64 - 8.0).max(1.0);
    let half = opts.box_half.unwrap_or(te * res as f64 / denom);
    let grid = Grid::cube(n, -half, half, res)?;
    let origin = Point::origin(n);
    let plate_e: Vec<u32> = dilated_blocks(&grid, &near)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let plate_f: Vec<u32> = grid
        .outside_nodes(&origin, te)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let zero = vec![0.0; n];
    let mut cond = GridCondenser::new(grid.clone(), plate_e, plate_f);
    cond.surface_f = Some(signed_field(&grid, |y| te - dist(y, &zero)));
    solve_modulus(&cond, &opts.solve).map(|o| o.result)
}
