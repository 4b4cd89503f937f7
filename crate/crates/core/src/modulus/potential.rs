//! Potential-flow seeding for the modulus solver.
//!
//! The extremal density of a condenser is ρ = |∇u| where u is the
//! p-harmonic potential (u = 0 on plate E, u = 1 on plate F, natural
//! boundary elsewhere). Solving that PDE by relaxation is dramatically
//! cheaper than discovering the same field one shortest path at a time,
//! and the result carries none of the lattice-direction bias that path
//! constraints imprint — finite differences see the true gradient. The
//! solver still owns correctness: the seed is handed over, measured by a
//! shortest-path search, scaled onto the admissibility line, and certified
//! exactly like any other density. If relaxation fails to settle, the
//! caller falls back to pure constraint generation.
//!
//! Scheme: conservative finite differences on the axis stencil with
//! conductances γ = (|∇u|² + ε²)^{(p−2)/2} refreshed periodically (lagged
//! diffusivity), successive over-relaxation in between, and
//! Shortley–Weller shortened edges where an edge crosses a plate surface
//! so the Dirichlet data sits on the true interface rather than the
//! nearest node.

use super::dijkstra::{EXCLUDED, PLATE_E, PLATE_F};
use crate::grid::Grid;
use crate::sphere::MAX_DIM;
use std::collections::VecDeque;

/// What a node sees along one axis direction: a potential value `val`
/// living at distance `dist` (in units of h), or nothing when the side is
/// blocked by the excluded region or the lattice boundary.
#[derive(Clone, Copy)]
struct Side {
    val: f64,
    dist: f64,
}

struct Lattice<'a> {
    grid: &'a Grid,
    status: &'a [u8],
    se: Option<&'a [f64]>,
    sf: Option<&'a [f64]>,
    counts: [usize; MAX_DIM],
    strides: [usize; MAX_DIM],
    periodic: [bool; MAX_DIM],
}

impl<'a> Lattice<'a> {
    fn new(
        grid: &'a Grid,
        status: &'a [u8],
        se: Option<&'a [f64]>,
        sf: Option<&'a [f64]>,
    ) -> Self {
        let dim = grid.dim();
        let mut counts = [1usize; MAX_DIM];
        let mut strides = [0usize; MAX_DIM];
        let mut periodic = [false; MAX_DIM];
        let mut acc = 1usize;
        for k in (0..dim).rev() {
            counts[k] = grid.nodes_per_axis(k);
            periodic[k] = grid.is_periodic(k);
            strides[k] = acc;
            acc *= counts[k];
        }
        Lattice { grid, status, se, sf, counts, strides, periodic }
    }

    /// Neighbor node id one step along `axis` (+1 or −1), or None at a
    /// non-periodic face.
    #[inline]
    fn neighbor(&self, id: usize, coord: usize, axis: usize, up: bool) -> Option<usize> {
        let n = self.counts[axis];
        let s = self.strides[axis];
        if up {
            if coord + 1 < n {
                Some(id + s)
            } else if self.periodic[axis] {
                Some(id - (n - 1) * s)
            } else {
                None
            }
        } else if coord > 0 {
            Some(id - s)
        } else if self.periodic[axis] {
            Some(id + (n - 1) * s)
        } else {
            None
        }
    }

    /// The sample seen from node `id` looking at neighbor `nb`: either the
    /// neighbor's potential at unit distance, or the plate's Dirichlet value
    /// at the fractional distance where the edge crosses the plate surface.
    #[inline]
    fn side(&self, id: usize, nb: usize, u: &[f64]) -> Option<Side> {
        match self.status[nb] {
            EXCLUDED => None,
            PLATE_E => Some(self.plate_side(id, nb, self.se, 0.0)),
            PLATE_F => Some(self.plate_side(id, nb, self.sf, 1.0)),
            _ => Some(Side { val: u[nb], dist: 1.0 }),
        }
    }

    #[inline]
    fn plate_side(&self, id: usize, nb: usize, surf: Option<&[f64]>, val: f64) -> Side {
        if let Some(d) = surf {
            let da = d[id];
            let db = d[nb];
            // Signed distances are negative inside the plate; a sign change
            // along the edge locates the interface at fraction da/(da−db).
            if da > 0.0 && db < 0.0 {
                let t = (da / (da - db)).clamp(0.05, 1.0);
                return Side { val, dist: t };
            }
        }
        Side { val, dist: 1.0 }
    }
}

/// Multi-source BFS step counts over the axis stencil; u32::MAX = unreached.
fn bfs_levels(lat: &Lattice<'_>, sources: u8, out: &mut [u32]) {
    let dim = lat.grid.dim();
    out.fill(u32::MAX);
    let mut queue = VecDeque::new();
    for (id, &s) in lat.status.iter().enumerate() {
        if s == sources {
            out[id] = 0;
            queue.push_back(id as u32);
        }
    }
    let mut iv = [0i64; MAX_DIM];
    while let Some(id) = queue.pop_front() {
        let idu = id as usize;
        let level = out[idu];
        lat.grid.decode(idu, &mut iv);
        for axis in 0..dim {
            for up in [false, true] {
                if let Some(nb) = lat.neighbor(idu, iv[axis] as usize, axis, up) {
                    if lat.status[nb] != EXCLUDED && out[nb] == u32::MAX {
                        out[nb] = level + 1;
                        queue.push_back(nb as u32);
                    }
                }
            }
        }
    }
}

/// Gradient magnitude at every node: central differences where both sides
/// are visible, one-sided otherwise, with Shortley–Weller distances at
/// plate crossings. Excluded nodes get 0.
///
/// On plate nodes the probe looks only toward the domain: a central
/// difference through the plate's flat interior would halve the density
/// exactly where the extremal ρ peaks, and paths priced with that value
/// would all undercut admissibility at the first step.
fn gradient_norms(lat: &Lattice<'_>, u: &[f64], h: f64, out: &mut [f64]) {
    let dim = lat.grid.dim();
    let mut iv = [0i64; MAX_DIM];
    for id in 0..u.len() {
        let own = lat.status[id];
        if own == EXCLUDED {
            out[id] = 0.0;
            continue;
        }
        lat.grid.decode(id, &mut iv);
        let on_plate = own == PLATE_E || own == PLATE_F;
        let own_surf = match own {
            PLATE_E => lat.se,
            PLATE_F => lat.sf,
            _ => None,
        };
        let mut sq = 0.0f64;
        for axis in 0..dim {
            let c = iv[axis] as usize;
            let pick = |up: bool| -> Option<Side> {
                let nb = lat.neighbor(id, c, axis, up)?;
                if lat.status[nb] == own && on_plate {
                    return None;
                }
                let mut s = lat.side(id, nb, u)?;
                // From a plate node, the Dirichlet value sits on the plate
                // surface between the node and its neighbor; the slope runs
                // from the interface, not the node center.
                if let Some(d) = own_surf {
                    let da = d[id];
                    let db = d[nb];
                    if da < 0.0 && db > 0.0 {
                        let t = da / (da - db);
                        let gap = s.dist - t;
                        if gap < 0.25 {
                            // The neighbor is a sliver away from the
                            // interface; a difference quotient over that
                            // gap is all noise. Let the backfill below
                            // supply this node from a measurable one.
                            return None;
                        }
                        s.dist = gap.min(1.0);
                    }
                }
                Some(s)
            };
            let der = match (pick(false), pick(true)) {
                (Some(a), Some(b)) => {
                    if on_plate {
                        // A one-node-thick plate sees the domain on both
                        // sides; a central difference across it would cancel
                        // the two slopes. Price paths with the steeper side.
                        let da = (a.val - u[id]).abs() / (a.dist * h);
                        let db = (b.val - u[id]).abs() / (b.dist * h);
                        da.max(db)
                    } else {
                        (b.val - a.val) / ((a.dist + b.dist) * h)
                    }
                }
                (None, Some(b)) => (b.val - u[id]) / (b.dist * h),
                (Some(a), None) => (u[id] - a.val) / (a.dist * h),
                (None, None) => 0.0,
            };
            sq += der * der;
        }
        out[id] = sq.sqrt();
    }
}

/// One SOR pass over the interior; returns the largest update magnitude.
fn sor_sweep(
    lat: &Lattice<'_>,
    interior: &[u32],
    gamma: Option<&[f64]>,
    u: &mut [f64],
    omega: f64,
    backward: bool,
) -> f64 {
    let dim = lat.grid.dim();
    let mut iv = [0i64; MAX_DIM];
    let mut worst = 0.0f64;
    let mut visit = |id: usize, u: &mut [f64]| {
        lat.grid.decode(id, &mut iv);
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for axis in 0..dim {
            let coord = iv[axis] as usize;
            for up in [false, true] {
                if let Some(nb) = lat.neighbor(id, coord, axis, up) {
                    if let Some(s) = lat.side(id, nb, u) {
                        let g = match gamma {
                            Some(g) => 0.5 * (g[id] + g[nb]),
                            None => 1.0,
                        };
                        let c = g / s.dist;
                        num += c * s.val;
                        den += c;
                    }
                }
            }
        }
        if den > 0.0 {
            let delta = omega * (num / den - u[id]);
            u[id] += delta;
            worst = worst.max(delta.abs());
        }
    };
    if backward {
        for &id in interior.iter().rev() {
            visit(id as usize, u);
        }
    } else {
        for &id in interior.iter() {
            visit(id as usize, u);
        }
    }
    worst
}

pub(crate) struct Seed {
    pub rho: Vec<f64>,
    pub sweeps: usize,
}

/// Relax the p-harmonic potential between the plates and return ρ = |∇u|,
/// or None when the relaxation fails to settle within its budget.
pub(crate) fn seed_density(
    grid: &Grid,
    status: &[u8],
    se: Option<&[f64]>,
    sf: Option<&[f64]>,
    p: f64,
) -> Option<Seed> {
    let lat = Lattice::new(grid, status, se, sf);
    let nodes = grid.node_count();
    let h = grid.spacing();
    let dim = grid.dim();

    // Harmonic-coordinate style start: normalized BFS depth ratio. This is
    // within O(1) of the converged potential almost everywhere and saves a
    // few hundred relaxation sweeps over a flat start.
    let mut de = vec![u32::MAX; nodes];
    let mut df = vec![u32::MAX; nodes];
    bfs_levels(&lat, PLATE_E, &mut de);
    bfs_levels(&lat, PLATE_F, &mut df);
    let mut u = vec![0.0f64; nodes];
    let mut interior: Vec<u32> = Vec::new();
    for id in 0..nodes {
        u[id] = match status[id] {
            PLATE_F => 1.0,
            PLATE_E | EXCLUDED => 0.0,
            _ => {
                interior.push(id as u32);
                match (de[id], df[id]) {
                    (u32::MAX, _) | (_, u32::MAX) => 0.5,
                    (a, b) => a as f64 / (a + b).max(1) as f64,
                }
            }
        };
    }
    if interior.is_empty() {
        return None;
    }

    let quadratic = (p - 2.0).abs() < 1e-12;
    let res_max = (0..dim).map(|k| grid.nodes_per_axis(k)).max().unwrap_or(2);
    // SOR at the model-problem optimal factor. The weighted Laplacian each
    // conductance refresh freezes is symmetric positive definite, so any
    // ω < 2 converges (Ostrowski); near-optimal ω is what makes the sweep
    // count scale like the axis resolution instead of its square.
    let omega = (2.0 / (1.0 + (std::f64::consts::PI / res_max as f64).sin())).min(1.95);
    let eps2 = {
        let eps = 1e-9 / h;
        eps * eps
    };
    let settle = 5e-6;
    let sweep_cap = 20 * res_max + 600;

    let mut sweeps = 0usize;
    let mut settled = false;
    if quadratic {
        while sweeps < sweep_cap {
            let worst = sor_sweep(&lat, &interior, None, &mut u, omega, sweeps % 2 == 1);
            sweeps += 1;
            if worst < settle {
                settled = true;
                break;
            }
        }
    } else {
        // Lagged diffusivity converges linearly per conductance refresh at a
        // mesh-independent rate, so the refresh cadence — not the sweep
        // count — is what the tail is made of: keep cycles short. The exit
        // test watches the energy, which is stationary at the minimizer and
        // therefore settles orders of magnitude sooner than the potential
        // itself; the admissibility certificate downstream does not care
        // about leftover pointwise slack.
        let trace = std::env::var_os("RINGKIT_SOLVER_TRACE").is_some();
        let mut gamma = vec![0.0f64; nodes];
        let mut gnorm = vec![0.0f64; nodes];
        let expo = 0.5 * (p - 2.0);
        let refresh_every = 8usize;
        let mut last_energy = f64::INFINITY;
        let mut cycles = 0usize;
        while sweeps < sweep_cap {
            gradient_norms(&lat, &u, h, &mut gnorm);
            let mut energy = 0.0f64;
            for id in 0..nodes {
                let g2 = gnorm[id] * gnorm[id];
                gamma[id] = (g2 + eps2).powf(expo);
                energy += g2.powf(0.5 * p);
            }
            if trace && cycles % 8 == 0 {
                eprintln!("relax cycle {cycles}: energy {energy:.8e}");
            }
            if cycles >= 3 && (energy - last_energy).abs() <= 1e-6 * energy.abs() {
                settled = true;
                break;
            }
            last_energy = energy;
            cycles += 1;
            let mut quiet = false;
            for _ in 0..refresh_every {
                let worst =
                    sor_sweep(&lat, &interior, Some(&gamma), &mut u, omega, sweeps % 2 == 1);
                sweeps += 1;
                if worst < settle {
                    quiet = true;
                    break;
                }
            }
            if quiet && cycles >= 3 {
                settled = true;
                break;
            }
        }
    }
    if !settled {
        return None;
    }

    let mut rho = vec![0.0f64; nodes];
    gradient_norms(&lat, &u, h, &mut rho);

    // Certificate paths may originate one stencil hop inside a plate, and
    // a diagonal hop can start from a plate node the axis probe never saw
    // (all its axis neighbors are plate too, so its ρ is 0). Such a node
    // would half-price the first or last edge of a path. Backfill those
    // values from the probed plate layer; the energy integral is immune
    // because deep plate cells carry zero ring-volume weight.
    let mut iv = [0i64; MAX_DIM];
    for _ in 0..3 {
        let mut changed = false;
        for id in 0..nodes {
            let s = status[id];
            if (s != PLATE_E && s != PLATE_F) || rho[id] != 0.0 {
                continue;
            }
            lat.grid.decode(id, &mut iv);
            let mut best = 0.0f64;
            for axis in 0..dim {
                for up in [false, true] {
                    if let Some(nb) = lat.neighbor(id, iv[axis] as usize, axis, up) {
                        if status[nb] != EXCLUDED {
                            best = best.max(rho[nb]);
                        }
                    }
                }
            }
            if best > 0.0 {
                rho[id] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Some(Seed { rho, sweeps })
}
