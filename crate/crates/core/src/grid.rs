//! Uniform lattices over axis-aligned boxes (optionally periodic per axis),
//! neighborhood stencils with exact Euclidean step lengths, and the
//! anisotropy calibration constants that make lattice moduli converge to
//! their conformal values.
//!
//! Discrete path lengths over a finite direction set measure a crystalline
//! (Finsler) norm rather than the Euclidean one: the reachable-per-unit-cost
//! body is conv{unit step directions} = K instead of the round ball. In the
//! fine-grid limit the lattice modulus of a ring converges to the Finsler
//! modulus, which differs from the conformal one by exactly
//! B = vol(K)/vol(unit ball). Scaling all step lengths by B^{1/n} removes
//! the bias, since the n-modulus is (−n)-homogeneous in the length scale.

use crate::error::{Error, Result};
use crate::sphere::{Point, MAX_DIM};
use std::f64::consts::PI;

/// One lattice step direction: integer offset plus its Euclidean length in
/// units of the grid spacing.
#[derive(Debug, Clone, Copy)]
pub struct Offset {
    pub steps: [i32; MAX_DIM],
    pub len_units: f64,
}

/// Which stencil a discrete computation walks on.
///
/// `Axis` is the 2n-neighbor stencil. `Extended` adds diagonals (and knight
/// moves in the plane): 16 directions in 2-d, 26 in 3-d. Larger stencils
/// track Euclidean geometry much more closely; the remaining crystalline
/// bias is removed by `modulus_calibration`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborhoodScheme {
    Axis,
    Extended,
}

impl NeighborhoodScheme {
    /// Step directions for the given dimension (2 or 3).
    pub fn offsets(&self, dim: usize) -> Vec<Offset> {
        let mut out = Vec::new();
        let mut push = |steps: [i32; MAX_DIM]| {
            let len: f64 = steps
                .iter()
                .map(|&s| (s as f64) * (s as f64))
                .sum::<f64>()
                .sqrt();
            out.push(Offset { steps, len_units: len });
        };
        match (self, dim) {
            (NeighborhoodScheme::Axis, d) => {
                for axis in 0..d {
                    for sign in [-1, 1] {
                        let mut s = [0i32; MAX_DIM];
                        s[axis] = sign;
                        push(s);
                    }
                }
            }
            (NeighborhoodScheme::Extended, 2) => {
                // Axis, diagonal, and knight directions: 16 in total.
                for dx in -2i32..=2 {
                    for dy in -2i32..=2 {
                        if (dx, dy) == (0, 0) || dx.abs().max(dy.abs()) > 2 {
                            continue;
                        }
                        if dx.abs() == 2 && dy.abs() == 2 || dx.abs() == 2 && dy == 0
                            || dy.abs() == 2 && dx == 0
                        {
                            continue; // doubled axis/diagonal steps add no direction
                        }
                        push([dx, dy, 0, 0]);
                    }
                }
            }
            (NeighborhoodScheme::Extended, 3) => {
                for dx in -1i32..=1 {
                    for dy in -1i32..=1 {
                        for dz in -1i32..=1 {
                            if (dx, dy, dz) == (0, 0, 0) {
                                continue;
                            }
                            push([dx, dy, dz, 0]);
                        }
                    }
                }
            }
            _ => panic!("unsupported grid dimension {dim}"),
        }
        out
    }

    /// The crystalline volume ratio B = vol(conv directions)/vol(unit ball)
    /// for this stencil; lattice n-moduli converge to B × the conformal
    /// value, so calibrated solves divide it out.
    pub fn modulus_calibration(&self, dim: usize) -> f64 {
        match (self, dim) {
            // Cross-polytope: area 2 over π, volume 4/3 over 4π/3.
            (NeighborhoodScheme::Axis, 2) => 2.0 / PI,
            (NeighborhoodScheme::Axis, 3) => 1.0 / PI,
            // 16-gon of unit vertices at the axis/diagonal/knight angles:
            // area 4(1/√5 + 1/√10).
            (NeighborhoodScheme::Extended, 2) => 4.0 * (0.2_f64.sqrt() + 0.1_f64.sqrt()) / PI,
            // Hull of the 26 unit directions: volume 8/√6.
            (NeighborhoodScheme::Extended, 3) => 6.0 / (PI * 6.0_f64.sqrt()),
            _ => panic!("unsupported grid dimension {dim}"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NeighborhoodScheme::Axis => "axis",
            NeighborhoodScheme::Extended => "extended",
        }
    }
}

/// One axis of a lattice: first node coordinate, node count, periodicity.
/// Non-periodic axes place nodes at lo, lo+h, …, lo+(count−1)h; periodic
/// axes identify lo + count·h with lo.
#[derive(Debug, Clone, Copy)]
pub struct AxisSpec {
    pub lo: f64,
    pub count: usize,
    pub periodic: bool,
}

/// A uniform node lattice with equal spacing h on every axis.
#[derive(Debug, Clone)]
pub struct Grid {
    dim: usize,
    h: f64,
    lo: [f64; MAX_DIM],
    npts: [usize; MAX_DIM],
    periodic: [bool; MAX_DIM],
    strides: [usize; MAX_DIM],
}

impl Grid {
    /// Lattice over the cube [lo, hi]^dim with `res` cells (res+1 nodes)
    /// per axis.
    pub fn cube(dim: usize, lo: f64, hi: f64, res: usize) -> Result<Grid> {
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !(hi > lo) || res < 2 {
            return Err(Error::InvalidParameter {
                name: "grid box",
                reason: format!("need hi > lo and res ≥ 2, got [{lo}, {hi}] with {res} cells"),
            });
        }
        let h = (hi - lo) / res as f64;
        let specs: Vec<AxisSpec> = (0..dim)
            .map(|_| AxisSpec { lo, count: res + 1, periodic: false })
            .collect();
        Grid::with_axes(&specs, h)
    }

    /// General constructor from per-axis node layouts and a shared spacing.
    pub fn with_axes(specs: &[AxisSpec], h: f64) -> Result<Grid> {
        let dim = specs.len();
        if !(2..=3).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter {
                name: "grid spacing",
                reason: format!("must be positive, got {h}"),
            });
        }
        let mut lo = [0.0; MAX_DIM];
        let mut npts = [1usize; MAX_DIM];
        let mut periodic = [false; MAX_DIM];
        for (k, s) in specs.iter().enumerate() {
            if s.count < 2 {
                return Err(Error::InvalidParameter {
                    name: "grid axis",
                    reason: format!("axis {k} has {} nodes; need at least 2", s.count),
                });
            }
            lo[k] = s.lo;
            npts[k] = s.count;
            periodic[k] = s.periodic;
        }
        let mut strides = [0usize; MAX_DIM];
        let mut acc = 1usize;
        for k in (0..dim).rev() {
            strides[k] = acc;
            acc = acc.checked_mul(npts[k]).ok_or(Error::InvalidParameter {
                name: "grid size",
                reason: "node count overflows".into(),
            })?;
        }
        Ok(Grid { dim, h, lo, npts, periodic, strides })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn nodes_per_axis(&self, axis: usize) -> usize {
        self.npts[axis]
    }

    pub fn is_periodic(&self, axis: usize) -> bool {
        self.periodic[axis]
    }

    pub fn axis_lo(&self, axis: usize) -> f64 {
        self.lo[axis]
    }

    pub fn node_count(&self) -> usize {
        self.npts[..self.dim].iter().product()
    }

    /// Multi-index of a node id.
    pub fn decode(&self, id: usize, iv: &mut [i64; MAX_DIM]) {
        let mut rest = id;
        for k in 0..self.dim {
            iv[k] = (rest / self.strides[k]) as i64;
            rest %= self.strides[k];
        }
    }

    /// Node id of an in-range multi-index (periodic axes wrap).
    pub fn encode(&self, iv: &[i64; MAX_DIM]) -> Option<usize> {
        let mut id = 0usize;
        for k in 0..self.dim {
            let n = self.npts[k] as i64;
            let mut i = iv[k];
            if self.periodic[k] {
                i = i.rem_euclid(n);
            } else if i < 0 || i >= n {
                return None;
            }
            id += i as usize * self.strides[k];
        }
        Some(id)
    }

    /// Neighbor id after stepping by an offset; None when it leaves the
    /// lattice through a non-periodic face.
    pub fn step(&self, iv: &[i64; MAX_DIM], off: &Offset) -> Option<usize> {
        let mut id = 0usize;
        for k in 0..self.dim {
            let n = self.npts[k] as i64;
            let mut i = iv[k] + off.steps[k] as i64;
            if self.periodic[k] {
                i = i.rem_euclid(n);
            } else if i < 0 || i >= n {
                return None;
            }
            id += i as usize * self.strides[k];
        }
        Some(id)
    }

    /// For long offsets (a coordinate step of ±2), the node ids nearest the
    /// edge midpoint. Masked computations require these to stay inside the
    /// domain so edges cannot tunnel through one-cell walls.
    pub fn midpoint_witnesses(&self, iv: &[i64; MAX_DIM], off: &Offset) -> [Option<usize>; 2] {
        let long = (0..self.dim).any(|k| off.steps[k].abs() > 1);
        if !long {
            return [None, None];
        }
        let mut a = [0i64; MAX_DIM];
        let mut b = [0i64; MAX_DIM];
        for k in 0..self.dim {
            let two = 2 * iv[k] + off.steps[k] as i64; // twice the midpoint
            a[k] = two.div_euclid(2);
            b[k] = (two + 1).div_euclid(2);
        }
        [self.encode(&a), if a == b { None } else { self.encode(&b) }]
    }

    /// Physical coordinates of a node.
    pub fn coords_of(&self, iv: &[i64; MAX_DIM], out: &mut [f64; MAX_DIM]) {
        for k in 0..self.dim {
            out[k] = self.lo[k] + iv[k] as f64 * self.h;
        }
    }

    pub fn node_point(&self, id: usize) -> Point {
        let mut iv = [0i64; MAX_DIM];
        let mut c = [0.0; MAX_DIM];
        self.decode(id, &mut iv);
        self.coords_of(&iv, &mut c);
        Point::finite(&c[..self.dim])
    }

    /// Ids of all nodes whose coordinates satisfy the predicate.
    pub fn nodes_where(&self, mut f: impl FnMut(&[f64]) -> bool) -> Vec<usize> {
        let mut out = Vec::new();
        let mut iv = [0i64; MAX_DIM];
        let mut c = [0.0; MAX_DIM];
        for id in 0..self.node_count() {
            self.decode(id, &mut iv);
            self.coords_of(&iv, &mut c);
            if f(&c[..self.dim]) {
                out.push(id);
            }
        }
        out
    }

    /// Nodes on any non-periodic face of the box.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut iv = [0i64; MAX_DIM];
        for id in 0..self.node_count() {
            self.decode(id, &mut iv);
            let mut on = false;
            for k in 0..self.dim {
                if !self.periodic[k] && (iv[k] == 0 || iv[k] == self.npts[k] as i64 - 1) {
                    on = true;
                }
            }
            if on {
                out.push(id);
            }
        }
        out
    }

    /// Nodes with Euclidean distance ≤ r from a finite center.
    pub fn ball_nodes(&self, center: &Point, r: f64) -> Vec<usize> {
        let c = center.coords();
        self.nodes_where(|x| {
            x.iter()
                .zip(c)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                <= r
        })
    }

    /// Nodes with Euclidean distance ≥ r from a finite center.
    pub fn outside_nodes(&self, center: &Point, r: f64) -> Vec<usize> {
        let c = center.coords();
        self.nodes_where(|x| {
            x.iter()
                .zip(c)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                >= r
        })
    }

    /// Nodes within `thickness` of the segment [a, b].
    pub fn segment_tube_nodes(&self, a: &Point, b: &Point, thickness: f64) -> Vec<usize> {
        let pa = a.coords();
        let pb = b.coords();
        let mut ab = [0.0; MAX_DIM];
        let mut ab2 = 0.0;
        for k in 0..self.dim {
            ab[k] = pb[k] - pa[k];
            ab2 += ab[k] * ab[k];
        }
        self.nodes_where(|x| {
            let mut t = 0.0;
            for k in 0..x.len() {
                t += (x[k] - pa[k]) * ab[k];
            }
            let t = if ab2 > 0.0 { (t / ab2).clamp(0.0, 1.0) } else { 0.0 };
            let mut d2 = 0.0;
            for k in 0..x.len() {
                let d = x[k] - (pa[k] + t * ab[k]);
                d2 += d * d;
            }
            d2.sqrt() <= thickness
        })
    }
}
