//! Discrete n-modulus of curve families between two plates on a lattice.
//!
//! The variational problem — minimize Σ ρ(x)ᵖ·hⁿ subject to every lattice
//! path from plate E to plate F having ρ-length at least 1 — is solved by
//! constraint generation: alternate between solving the restricted convex
//! program over the active path set (dual coordinate ascent with exact
//! per-constraint updates) and searching for a violated path (deterministic
//! Dijkstra over the current density). Path length uses the trapezoid
//! convention: an edge a→b contributes (ρ(a)+ρ(b))/2 × its Euclidean
//! length, so a straight axis chain reproduces Σ ρ·h exactly and plate
//! boundaries are sampled with second-order accuracy.

mod dijkstra;
mod potential;
pub mod qh;
pub mod shapes;
mod solver;
pub mod tau;

use crate::error::{Error, Result};
use crate::grid::{Grid, NeighborhoodScheme};
use crate::sphere;
use std::io::{Read, Write};

/// A two-plate condenser on a lattice: node sets E and F plus an optional
/// domain mask restricting where curves may travel.
#[derive(Debug, Clone)]
pub struct GridCondenser {
    pub grid: Grid,
    pub plate_e: Vec<u32>,
    pub plate_f: Vec<u32>,
    /// Nodes where curves may travel; None = the whole box. Plates must be
    /// contained in the mask.
    pub domain: Option<Vec<bool>>,
    /// Signed distance from each node to the analytic surface of plate E
    /// (negative inside the plate), used to clip the first edge of a path
    /// to the true plate boundary. Optional refinement; None = no clipping.
    pub surface_e: Option<Vec<f64>>,
    /// Same for plate F.
    pub surface_f: Option<Vec<f64>>,
    /// The plates have zero volume (slits, arcs): the cell of a plate node
    /// then lies in the ring on both sides and its density contributes to
    /// the energy in full. Solid plates (the default) keep plate cells out
    /// of the energy unless a surface field apportions them.
    pub thin_plates: bool,
}

impl GridCondenser {
    pub fn new(grid: Grid, plate_e: Vec<u32>, plate_f: Vec<u32>) -> GridCondenser {
        GridCondenser {
            grid,
            plate_e,
            plate_f,
            domain: None,
            surface_e: None,
            surface_f: None,
            thin_plates: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.grid.node_count();
        if self.plate_e.is_empty() {
            return Err(Error::EmptyPlate("E"));
        }
        if self.plate_f.is_empty() {
            return Err(Error::EmptyPlate("F"));
        }
        if let Some(mask) = &self.domain {
            if mask.len() != n {
                return Err(Error::InvalidParameter {
                    name: "domain mask",
                    reason: format!("length {} does not match node count {}", mask.len(), n),
                });
            }
        }
        let mut seen = vec![0u8; n];
        for &id in &self.plate_e {
            let id = id as usize;
            if id >= n {
                return Err(Error::InvalidParameter {
                    name: "plate_E",
                    reason: format!("node id {id} out of range"),
                });
            }
            seen[id] = 1;
            if let Some(mask) = &self.domain {
                if !mask[id] {
                    return Err(Error::InvalidParameter {
                        name: "plate_E",
                        reason: "plate node outside domain mask".into(),
                    });
                }
            }
        }
        for &id in &self.plate_f {
            let id = id as usize;
            if id >= n {
                return Err(Error::InvalidParameter {
                    name: "plate_F",
                    reason: format!("node id {id} out of range"),
                });
            }
            if seen[id] == 1 {
                return Err(Error::PlatesTouch(format!("plates share node {id}")));
            }
            if let Some(mask) = &self.domain {
                if !mask[id] {
                    return Err(Error::InvalidParameter {
                        name: "plate_F",
                        reason: "plate node outside domain mask".into(),
                    });
                }
            }
        }
        for s in [&self.surface_e, &self.surface_f].into_iter().flatten() {
            if s.len() != n {
                return Err(Error::InvalidParameter {
                    name: "surface distances",
                    reason: format!("length {} does not match node count {}", s.len(), n),
                });
            }
        }
        Ok(())
    }
}

/// Options for `solve_modulus`.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Energy exponent; the conformal case is p = n (the default when None).
    pub p: Option<f64>,
    /// Admissibility slack: solve stops once the shortest ρ-path is ≥ 1−tol.
    pub tol: f64,
    pub scheme: NeighborhoodScheme,
    /// Divide the reported capacity by the stencil's crystalline volume
    /// ratio (only applied in the conformal case p = n).
    pub calibrate: bool,
    /// Cap on constraint-generation rounds.
    pub max_rounds: usize,
    /// Cap on dual-ascent sweeps per round.
    pub inner_cap: usize,
    /// Most violated paths admitted per round.
    pub batch_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            p: None,
            tol: 1e-3,
            scheme: NeighborhoodScheme::Extended,
            calibrate: true,
            max_rounds: 600,
            inner_cap: 10_000,
            batch_cap: 16_384,
        }
    }
}

/// Result summary of a modulus solve.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CapacityResult {
    /// Discrete M(Γ) ≈ Σ ρᵖ hⁿ, divided by the stencil calibration ratio
    /// in the conformal case.
    pub capacity: f64,
    /// (capacity/ω_{n−1})^{1/(1−n)}; +∞ when the capacity is 0.
    pub modulus: f64,
    /// Total dual-ascent sweeps across all rounds.
    pub iterations: usize,
    /// Independently certified shortest ρ-path length minus 1.
    pub certified_slack: f64,
    /// Objective value before calibration.
    pub raw_capacity: f64,
    /// The crystalline ratio divided out of `raw_capacity`.
    pub calibration: f64,
    /// Nodes in the connected E–F corridor the solve worked on.
    pub active_nodes: usize,
    /// Path constraints in the final active set.
    pub constraints: usize,
}

impl CapacityResult {
    fn zero(active_nodes: usize) -> CapacityResult {
        CapacityResult {
            capacity: 0.0,
            modulus: f64::INFINITY,
            iterations: 0,
            certified_slack: f64::INFINITY,
            raw_capacity: 0.0,
            calibration: 1.0,
            active_nodes,
            constraints: 0,
        }
    }
}

/// A per-node density on a lattice.
#[derive(Debug, Clone)]
pub struct DensityField {
    pub grid: Grid,
    pub rho: Vec<f64>,
}

const DENSITY_MAGIC: u32 = 0x464b_4452; // "RDKF" little-endian bytes

impl DensityField {
    /// Writes the field as a flat binary grid: a 32-byte header (magic,
    /// dimension, cells per axis, reserved, box lo/hi as f64) followed by
    /// (res+1)^dim little-endian f64 node values. Only cubical
    /// non-periodic grids serialize.
    pub fn export_binary(&self, w: &mut impl Write) -> Result<()> {
        let g = &self.grid;
        let dim = g.dim();
        let npts = g.nodes_per_axis(0);
        for k in 0..dim {
            if g.is_periodic(k) || g.nodes_per_axis(k) != npts || g.axis_lo(k) != g.axis_lo(0) {
                return Err(Error::InvalidParameter {
                    name: "density grid",
                    reason: "binary export requires a cubical non-periodic grid".into(),
                });
            }
        }
        let res = (npts - 1) as u32;
        let lo = g.axis_lo(0);
        let hi = lo + (npts - 1) as f64 * g.spacing();
        w.write_all(&DENSITY_MAGIC.to_le_bytes())?;
        w.write_all(&(dim as u32).to_le_bytes())?;
        w.write_all(&res.to_le_bytes())?;
        w.write_all(&0u32.to_le_bytes())?;
        w.write_all(&lo.to_le_bytes())?;
        w.write_all(&hi.to_le_bytes())?;
        for v in &self.rho {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a field written by `export_binary`.
    pub fn import_binary(r: &mut impl Read) -> Result<DensityField> {
        let mut head = [0u8; 32];
        r.read_exact(&mut head)?;
        let word = |i: usize| u32::from_le_bytes(head[i..i + 4].try_into().unwrap());
        if word(0) != DENSITY_MAGIC {
            return Err(Error::InvalidData("bad density-field magic".into()));
        }
        let dim = word(4) as usize;
        let res = word(8) as usize;
        if !(2..=3).contains(&dim) || res < 2 || res > 4096 {
            return Err(Error::InvalidData(format!(
                "implausible density-field geometry: dim {dim}, res {res}"
            )));
        }
        let lo = f64::from_le_bytes(head[16..24].try_into().unwrap());
        let hi = f64::from_le_bytes(head[24..32].try_into().unwrap());
        if !(hi > lo) {
            return Err(Error::InvalidData(format!("bad density-field box [{lo}, {hi}]")));
        }
        let grid = Grid::cube(dim, lo, hi, res)?;
        let mut rho = vec![0.0; grid.node_count()];
        let mut buf = [0u8; 8];
        for v in rho.iter_mut() {
            r.read_exact(&mut buf)?;
            *v = f64::from_le_bytes(buf);
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::InvalidData("negative or non-finite density".into()));
            }
        }
        Ok(DensityField { grid, rho })
    }
}

/// The pair a successful solve returns; also carried by non-convergence
/// errors as the best iterate.
#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub result: CapacityResult,
    pub density: DensityField,
}

/// Minimizes Σ ρᵖ·hⁿ over densities making every lattice path between the
/// plates at least 1 long, by constraint generation. Deterministic for
/// fixed inputs. Returns capacity 0 with an all-zero density when the
/// plates are not connected; errors when the plates touch or when the
/// round cap passes without an admissibility certificate.
pub fn solve_modulus(c: &GridCondenser, opts: &SolveOptions) -> Result<SolveOutput> {
    c.validate()?;
    solver::run(c, opts)
}

pub use qh::{qh_distance, QhDomain, QhOptions};
pub use shapes::{
    condenser_capacity, ring_capacity, ring_solve, thickness, PlateSpec, ShapeOptions,
};
pub use tau::{tau_estimate, tau_with_sensitivity, TauOptions, TeichmullerQuery};

/// Convenience: the closed-form capacity of a round ring, for oracle
/// comparisons: ω_{n−1}·(log(R/r))^{1−n}.
pub fn analytic_ring_capacity(n: usize, inner: f64, outer: f64) -> Result<f64> {
    let m = sphere::euclidean_ring_modulus(inner, outer)?;
    sphere::modulus_to_capacity(n, m)
}
