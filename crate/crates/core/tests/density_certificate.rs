//! Re-checks a solve's admissibility certificate from the outside: the
//! returned density is serialized, re-read, and priced by an independent
//! shortest-path sweep that only ever steps along grid axes. Axis paths
//! are a subset of the paths the solver certifies against, so their
//! minimum can only sit at or above the certificate line.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use ringkit::grid::Grid;
use ringkit::modulus::{solve_modulus, DensityField, GridCondenser, SolveOptions};
use ringkit::sphere::Point;

struct Entry {
    dist: f64,
    node: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist && self.node == other.node
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance.
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Shortest ρ-weighted length from any source to any target, moving one
/// node along one axis per step, edge cost ½(ρ[a]+ρ[b])·h.
fn axis_shortest(field: &DensityField, sources: &[u32], targets: &[u32]) -> f64 {
    let grid = &field.grid;
    let rho = &field.rho;
    let h = grid.spacing();
    let n = grid.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s as usize] = 0.0;
        heap.push(Entry { dist: 0.0, node: s as usize });
    }
    let mut is_target = vec![false; n];
    for &t in targets {
        is_target[t as usize] = true;
    }
    let dim = grid.dim();
    let mut iv = [0i64; 4];
    while let Some(Entry { dist: d, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        if is_target[node] {
            return d;
        }
        grid.decode(node, &mut iv);
        for axis in 0..dim {
            for step in [-1i64, 1] {
                iv[axis] += step;
                if let Some(nb) = grid.encode(&iv) {
                    let w = 0.5 * (rho[node] + rho[nb]) * h;
                    if d + w < dist[nb] {
                        dist[nb] = d + w;
                        heap.push(Entry { dist: d + w, node: nb });
                    }
                }
                iv[axis] -= step;
            }
        }
    }
    f64::INFINITY
}

#[test]
fn exported_density_is_admissible_under_independent_pricing() {
    let grid = Grid::cube(2, -2.2, 2.2, 96).unwrap();
    let e: Vec<u32> = grid
        .ball_nodes(&Point::origin(2), 1.0)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let f: Vec<u32> = grid
        .outside_nodes(&Point::origin(2), 2.0)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let cond = GridCondenser::new(grid, e.clone(), f.clone());
    let out = solve_modulus(&cond, &SolveOptions::default()).expect("solve");
    assert!(out.result.certified_slack >= -1e-3);

    let mut buf = Vec::new();
    out.density.export_binary(&mut buf).expect("export");
    let field = DensityField::import_binary(&mut buf.as_slice()).expect("import");

    let shortest = axis_shortest(&field, &e, &f);
    assert!(
        shortest >= 1.0 - 1e-9,
        "independent axis-path pricing found a path of length {shortest} < 1"
    );
}

#[test]
fn certificate_survives_in_three_dimensions() {
    let grid = Grid::cube(3, -1.6, 1.6, 40).unwrap();
    let e: Vec<u32> = grid
        .ball_nodes(&Point::origin(3), 0.6)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let f: Vec<u32> = grid
        .outside_nodes(&Point::origin(3), 1.3)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    let cond = GridCondenser::new(grid, e.clone(), f.clone());
    let out = solve_modulus(&cond, &SolveOptions::default()).expect("solve");
    let shortest = axis_shortest(&out.density, &e, &f);
    assert!(
        shortest >= 1.0 - 1e-9,
        "independent axis-path pricing found a path of length {shortest} < 1"
    );
}
