//! Deterministic multi-source Dijkstra over node densities, with the
//! trapezoid edge weight (ρ(a)+ρ(b))/2 × edge length. Node status codes:
//! 0 = excluded, 1 = interior, 2 = plate E (sources), 3 = plate F
//! (terminals). Ties break on node id, so results are reproducible
//! bit-for-bit across runs.

use crate::grid::{Grid, Offset};
use crate::sphere::MAX_DIM;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub(crate) const NO_PRED: u32 = u32::MAX;

pub(crate) const EXCLUDED: u8 = 0;
pub(crate) const INTERIOR: u8 = 1;
pub(crate) const PLATE_E: u8 = 2;
pub(crate) const PLATE_F: u8 = 3;

pub(crate) struct EdgeContext<'a> {
    pub grid: &'a Grid,
    pub status: &'a [u8],
    pub surface_e: Option<&'a [f64]>,
    pub surface_f: Option<&'a [f64]>,
    offsets: Vec<(Offset, bool, f64)>, // offset, is-long, physical length
}

impl<'a> EdgeContext<'a> {
    pub fn new(
        grid: &'a Grid,
        offsets: &[Offset],
        status: &'a [u8],
        surface_e: Option<&'a [f64]>,
        surface_f: Option<&'a [f64]>,
    ) -> EdgeContext<'a> {
        let h = grid.spacing();
        let offsets = offsets
            .iter()
            .map(|o| {
                let long = o.steps.iter().any(|s| s.abs() > 1);
                (*o, long, o.len_units * h)
            })
            .collect();
        EdgeContext { grid, status, surface_e, surface_f, offsets }
    }

    /// Geometric length of the edge a→b, with the segment clipped to the
    /// analytic plate surfaces when signed distances are available: the
    /// portion of the segment inside plate E (at the a end) or plate F
    /// (at the b end) does not count toward path length.
    #[inline]
    fn clipped(&self, a: usize, b: usize, len: f64) -> f64 {
        let mut t0 = 0.0;
        let mut t1 = 1.0;
        if self.status[a] == PLATE_E {
            if let Some(se) = self.surface_e {
                let (da, db) = (se[a], se[b]);
                if da < 0.0 && db > 0.0 {
                    t0 = da / (da - db);
                }
            }
        }
        if self.status[b] == PLATE_F {
            if let Some(sf) = self.surface_f {
                let (da, db) = (sf[a], sf[b]);
                if da > 0.0 && db < 0.0 {
                    t1 = da / (da - db);
                }
            }
        }
        len * (t1 - t0).max(1e-9)
    }

    /// Calls `f(b, geometric_length)` for every admissible edge out of a
    /// non-excluded, non-F node `a`: the head must be interior or plate F,
    /// and long (knight) edges must not tunnel through excluded cells.
    #[inline]
    pub fn for_each_edge(
        &self,
        a: usize,
        iv: &[i64; MAX_DIM],
        mut f: impl FnMut(usize, f64),
    ) {
        for (off, long, len) in &self.offsets {
            let Some(b) = self.grid.step(iv, off) else { continue };
            let sb = self.status[b];
            if sb == EXCLUDED || sb == PLATE_E {
                continue;
            }
            if *long {
                let [w0, w1] = self.grid.midpoint_witnesses(iv, off);
                let blocked = |w: Option<usize>| match w {
                    Some(id) => self.status[id] == EXCLUDED,
                    None => true,
                };
                if blocked(w0) || (w1.is_some() && blocked(w1)) {
                    continue;
                }
            }
            f(b, self.clipped(a, b, *len));
        }
    }

    /// Recomputes the geometric length of a known edge (used when turning
    /// tree paths into constraints). Periodic axes take the wrapped step.
    pub fn edge_length(&self, a: usize, b: usize) -> f64 {
        let mut ia = [0i64; MAX_DIM];
        let mut ib = [0i64; MAX_DIM];
        self.grid.decode(a, &mut ia);
        self.grid.decode(b, &mut ib);
        let mut d2 = 0.0;
        for k in 0..self.grid.dim() {
            let mut d = ib[k] - ia[k];
            if self.grid.is_periodic(k) {
                let n = self.grid.nodes_per_axis(k) as i64;
                if d > n / 2 {
                    d -= n;
                } else if d < -n / 2 {
                    d += n;
                }
            }
            let d = d as f64;
            d2 += d * d;
        }
        self.clipped(a, b, d2.sqrt() * self.grid.spacing())
    }
}

pub(crate) struct PathFinder {
    pub dist: Vec<f64>,
    pub pred: Vec<u32>,
    heap: BinaryHeap<Reverse<(u64, u32)>>,
}

pub(crate) struct PathSearch {
    /// Plate-F nodes reached, sorted by (distance, id).
    pub contacts: Vec<u32>,
    /// Least distance among them; +∞ when none was reached under the cutoff.
    pub shortest: f64,
}

impl PathFinder {
    pub fn new(nodes: usize) -> PathFinder {
        PathFinder {
            dist: vec![f64::INFINITY; nodes],
            pred: vec![NO_PRED; nodes],
            heap: BinaryHeap::new(),
        }
    }

    /// Multi-source Dijkstra from the plate-E sources over the density
    /// `rho`. Expansion stops at plate-F nodes and skips distances at or
    /// above `cutoff` (pass +∞ for an exhaustive sweep).
    pub fn run(
        &mut self,
        ctx: &EdgeContext<'_>,
        sources: &[u32],
        rho: &[f64],
        cutoff: f64,
    ) -> PathSearch {
        self.dist.fill(f64::INFINITY);
        self.pred.fill(NO_PRED);
        self.heap.clear();
        for &s in sources {
            self.dist[s as usize] = 0.0;
            self.heap.push(Reverse((0u64, s)));
        }
        let mut iv = [0i64; MAX_DIM];
        let mut contacts: Vec<u32> = Vec::new();
        while let Some(Reverse((dbits, a))) = self.heap.pop() {
            let au = a as usize;
            let d = f64::from_bits(dbits);
            if d > self.dist[au] {
                continue; // stale heap entry
            }
            if ctx.status[au] == PLATE_F {
                contacts.push(a);
                continue; // terminal: paths end at first F contact
            }
            ctx.grid.decode(au, &mut iv);
            let dist = &mut self.dist;
            let pred = &mut self.pred;
            let heap = &mut self.heap;
            ctx.for_each_edge(au, &iv, |b, len| {
                let w = 0.5 * (rho[au] + rho[b]) * len;
                let nd = d + w;
                if nd < dist[b] && nd < cutoff {
                    dist[b] = nd;
                    pred[b] = a;
                    heap.push(Reverse((nd.to_bits(), b as u32)));
                }
            });
        }
        contacts.sort_by_key(|&c| (self.dist[c as usize].to_bits(), c));
        let shortest = contacts
            .first()
            .map(|&c| self.dist[c as usize])
            .unwrap_or(f64::INFINITY);
        PathSearch { contacts, shortest }
    }

    /// The tree path from a source to `contact`, in source→contact order.
    pub fn extract_path(&self, contact: u32) -> Vec<u32> {
        let mut path = vec![contact];
        let mut cur = contact;
        while self.pred[cur as usize] != NO_PRED {
            cur = self.pred[cur as usize];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Breadth-first reachability from `roots` over admissible edges, in the
/// forward (E→F) or reverse orientation. Used to restrict a solve to the
/// connected corridor between the plates.
pub(crate) fn reachable(
    ctx: &EdgeContext<'_>,
    roots: &[u32],
    reverse: bool,
    out: &mut [bool],
) {
    out.fill(false);
    let mut queue: std::collections::VecDeque<u32> = std::collections::VecDeque::new();
    for &r in roots {
        if !out[r as usize] {
            out[r as usize] = true;
            queue.push_back(r);
        }
    }
    let mut iv = [0i64; MAX_DIM];
    while let Some(a) = queue.pop_front() {
        let au = a as usize;
        // Terminals are never expanded: plate F forward, plate E reverse.
        if (!reverse && ctx.status[au] == PLATE_F)
            || (reverse && ctx.status[au] == PLATE_E)
        {
            continue;
        }
        ctx.grid.decode(au, &mut iv);
        if reverse {
            // Predecessor search: mark b whenever the edge b→a would be
            // admissible. The offset set is closed under negation, so
            // stepping forward from a enumerates every candidate b.
            for (off, long, _) in &ctx.offsets {
                let Some(b) = ctx.grid.step(&iv, off) else { continue };
                let sb = ctx.status[b];
                if sb == EXCLUDED || sb == PLATE_F {
                    continue;
                }
                if *long {
                    let [w0, w1] = ctx.grid.midpoint_witnesses(&iv, off);
                    let blocked = |w: Option<usize>| match w {
                        Some(id) => ctx.status[id] == EXCLUDED,
                        None => true,
                    };
                    if blocked(w0) || (w1.is_some() && blocked(w1)) {
                        continue;
                    }
                }
                if !out[b] {
                    out[b] = true;
                    queue.push_back(b as u32);
                }
            }
        } else {
            ctx.for_each_edge(au, &iv, |b, _| {
                if !out[b] {
                    out[b] = true;
                    queue.push_back(b as u32);
                }
            });
        }
    }
}
