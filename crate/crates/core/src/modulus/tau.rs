//! Teichmüller-ring capacity estimates τ̂_n(s): the capacity of the ring
//! whose complementary components are the segment [−e₁, 0] and the ray
//! [s·e₁, ∞].
//!
//! In the plane the ring is transported to a flat cylinder before solving.
//! Inversion at the segment midpoint −e₁/2 sends the two components to
//! {w real, |w| ≥ 2} ∪ {∞} and {w real, 0 ≤ w ≤ 1/(s+½)}; in log-polar
//! coordinates (u, θ) = (log|w|, arg w) — conformal in dimension 2 — they
//! become three axis-parallel rays on a periodic strip:
//!
//!   plate E: rows θ = 0 and θ = π, at u ≥ log 2
//!   plate F: row  θ = 0, at u ≤ −log(s+½)
//!
//! A u-truncation of the strip is exactly a spatial truncation of the ray
//! (|z + ½| = e^u), so the bounding-box policy for unbounded plates is
//! applied on the u-axis, where doubling the box costs only ~40 extra grid
//! rows no matter how large s is. The thin plates are clipped to their
//! analytic endpoints through the solver's signed-distance surfaces, and
//! since the whole transport is conformal the cylinder capacity *is*
//! τ̂₂(s). In dimension 3 no such flattening exists (the log map is not
//! conformal) and the ring is solved directly on a spatial grid, which is
//! honest but much coarser for large s.

use super::shapes::{ring_solve, PlateSpec, ShapeOptions};
use super::{solve_modulus, CapacityResult, GridCondenser, SolveOptions};
use crate::error::{Error, Result};
use crate::grid::{AxisSpec, Grid};
use crate::sphere::{pt3, Point, MAX_DIM};

/// The ring family parameter: dimension and the gap s > 0 between the unit
/// segment and the ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeichmullerQuery {
    pub n: usize,
    pub s: f64,
}

#[derive(Debug, Clone)]
pub struct TauOptions {
    /// Angular node count for the n = 2 cylinder (rounded up to even), or
    /// cells per axis for the direct n = 3 solve. None picks 192 / 96.
    pub resolution: Option<usize>,
    /// Truncation factor: the ray is kept out to ~factor·(s+½) in the
    /// plane, and the box half-width is (factor/2)·max(1, s) in space.
    /// The default 40 meets the policy half-width 20·max(1, s).
    pub box_factor: f64,
    pub solve: SolveOptions,
}

impl Default for TauOptions {
    fn default() -> TauOptions {
        TauOptions {
            resolution: None,
            box_factor: 40.0,
            solve: SolveOptions::default(),
        }
    }
}

pub fn tau_estimate(q: &TeichmullerQuery, opts: &TauOptions) -> Result<CapacityResult> {
    if !(q.s > 0.0 && q.s.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("ring gap must be positive and finite, got {}", q.s),
        });
    }
    if !(opts.box_factor >= 4.0 && opts.box_factor.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "box_factor",
            reason: format!("truncation factor must be ≥ 4, got {}", opts.box_factor),
        });
    }
    match q.n {
        2 => tau_cylinder(q.s, opts),
        3 => tau_spatial(q.s, opts),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// τ̂ together with its truncation sensitivity: the relative change in the
/// estimate when the box factor doubles. Small values certify that the
/// unbounded ray has been truncated far enough.
pub fn tau_with_sensitivity(
    q: &TeichmullerQuery,
    opts: &TauOptions,
) -> Result<(CapacityResult, f64)> {
    let base = tau_estimate(q, opts)?;
    let mut wide = opts.clone();
    wide.box_factor = 2.0 * opts.box_factor;
    let doubled = tau_estimate(q, &wide)?;
    let rel = (doubled.capacity - base.capacity).abs() / base.capacity.max(1e-300);
    Ok((base, rel))
}

fn tau_cylinder(s: f64, opts: &TauOptions) -> Result<CapacityResult> {
    let n_theta = {
        let r = opts.resolution.unwrap_or(192);
        r + r % 2 // θ = π must land on a node
    };
    let h = 2.0 * std::f64::consts::PI / n_theta as f64;
    let u_e = std::f64::consts::LN_2; // plate E starts here
    let u_f = -(s + 0.5).ln(); // plate F ends here
    // Truncation tails: around a single slit the field decays like
    // e^{−|u|/2} (half-integer harmonics fit the cut circle), so the
    // margin must be twice what the e^{−|u|} two-slit region needs.
    let margin = 2.0 * opts.box_factor.ln();
    let u_min = u_f - margin;
    let u_max = u_e + margin;
    let count_u = ((u_max - u_min) / h).ceil() as usize + 1;
    let specs = [
        AxisSpec { lo: u_min, count: count_u, periodic: false },
        AxisSpec { lo: 0.0, count: n_theta, periodic: true },
    ];
    let grid = Grid::with_axes(&specs, h)?;
    let half_theta = n_theta / 2;
    let tol = 1e-9;
    let mut plate_e: Vec<u32> = Vec::new();
    let mut plate_f: Vec<u32> = Vec::new();
    let mut iv = [0i64; MAX_DIM];
    let mut c = [0.0; MAX_DIM];
    for id in 0..grid.node_count() {
        grid.decode(id, &mut iv);
        grid.coords_of(&iv, &mut c);
        let on_zero = iv[1] == 0;
        let on_pi = iv[1] == half_theta as i64;
        if (on_zero || on_pi) && c[0] >= u_e - tol {
            plate_e.push(id as u32);
        } else if on_zero && c[0] <= u_f + tol {
            plate_f.push(id as u32);
        }
    }
    // The plates are zero-thickness slits along grid rows; there is no
    // analytic surface with an inside, so no signed-distance clipping —
    // the rows themselves are the best grid-scale description.
    let mut cond = GridCondenser::new(grid.clone(), plate_e, plate_f);
    cond.thin_plates = true;
    solve_modulus(&cond, &opts.solve).map(|o| o.result)
}

fn tau_spatial(s: f64, opts: &TauOptions) -> Result<CapacityResult> {
    let res = opts.resolution.unwrap_or(96);
    let half = 0.5 * opts.box_factor * s.max(1.0);
    let e = PlateSpec::Segment {
        a: pt3(-1.0, 0.0, 0.0),
        b: Point::origin(3),
        radius: 0.0,
    };
    let f = PlateSpec::Segment {
        a: pt3(s, 0.0, 0.0),
        b: pt3(half, 0.0, 0.0),
        radius: 0.0,
    };
    let shape_opts = ShapeOptions {
        resolution: Some(res),
        box_half: Some(half),
        solve: opts.solve.clone(),
    };
    ring_solve(&e, &f, &shape_opts).map(|o| o.result)
}
