//! Discrete p-modulus by constraint generation.
//!
//! The continuous problem — minimize ∫ρᵖ over densities admissible for the
//! curve family joining two plates — becomes a finite program on the grid:
//! minimize Σ ρ(x)ᵖ hⁿ subject to Σ_path ρ ds ≥ 1 for every lattice path
//! from plate E to plate F. Paths are uncountably many in spirit and merely
//! astronomically many here, so we generate them lazily: a deterministic
//! Dijkstra sweep under the current density finds the most-violated paths,
//! those join the working constraint set, and a dual coordinate-ascent pass
//! (Hildreth's method) re-solves the restricted program. The loop ends when
//! the shortest ρ-length between the plates is at least 1 − tol, which
//! certifies admissibility of ρ/(1−tol) and brackets the true capacity.

use super::dijkstra::{
    reachable, EdgeContext, PathFinder, EXCLUDED, INTERIOR, PLATE_E, PLATE_F,
};
use super::potential;
use super::{CapacityResult, DensityField, GridCondenser, SolveOptions, SolveOutput};
use crate::error::{Error, Result};
use crate::grid::Offset;
use crate::sphere::MAX_DIM;

struct Constraint {
    nodes: Vec<u32>,
    coef: Vec<f64>,
    sum_c2: f64,
    lambda: f64,
    /// Consecutive rounds this constraint has sat inactive (λ = 0).
    idle: u8,
}

/// Over-relaxation factor for the dual coordinate steps. Hildreth's method
/// stays convergent for factors in (0, 2), and values above 1 cut the sweep
/// count substantially on bundles of near-parallel path constraints.
const RELAX: f64 = 1.6;

#[inline]
fn ascend_one(
    c: &mut Constraint,
    score: &mut [f64],
    rho: &mut [f64],
    quadratic: bool,
    scale: f64,
    expo: f64,
    floor: f64,
    rhs: f64,
) -> f64 {
    let len: f64 = c
        .nodes
        .iter()
        .zip(&c.coef)
        .map(|(&x, &ck)| ck * rho[x as usize])
        .sum();
    if c.lambda == 0.0 && len >= rhs {
        return rhs - len;
    }
    let delta = if quadratic {
        // Quadratic case in closed form: ρ = score/(2hⁿ) is linear in λ.
        let denom = c.sum_c2 * scale;
        if denom <= 0.0 {
            return rhs - len;
        }
        (RELAX * (rhs - len) / denom).max(-c.lambda)
    } else {
        // The exact coordinate maximizer tolerates less over-relaxation
        // when the dual is not quadratic; stay conservative there.
        (1.25 * solve_delta(c, score, scale, expo, rhs)).max(-c.lambda)
    };
    if delta != 0.0 {
        c.lambda += delta;
        for (&x, &ck) in c.nodes.iter().zip(&c.coef) {
            let xi = x as usize;
            score[xi] = (score[xi] + delta * ck).max(0.0);
            let r = if expo == 1.0 {
                score[xi] * scale
            } else {
                (score[xi] * scale).powf(expo)
            };
            rho[xi] = r.max(floor);
        }
    }
    rhs - len
}

/// One dual coordinate-ascent pass over the working constraints.
/// `score[x] = Σ_j λ_j c_{j,x}` is kept incrementally; the primal density is
/// recovered from it by the stationarity rule ρ(x) = (score/(p hⁿ))^{1/(p−1)}.
/// Sweeps alternate direction (symmetric Gauss–Seidel) so updates propagate
/// both ways along bundles of overlapping paths. Returns the largest
/// constraint violation seen during the pass.
fn ascent_sweep(
    cons: &mut [Constraint],
    score: &mut [f64],
    rho: &mut [f64],
    p: f64,
    cell: f64, // hⁿ
    backward: bool,
    floor: f64,
    rhs: f64,
) -> f64 {
    let expo = 1.0 / (p - 1.0);
    let scale = 1.0 / (p * cell);
    let quadratic = (p - 2.0).abs() < 1e-12;
    let mut worst = 0.0f64;
    if backward {
        for c in cons.iter_mut().rev() {
            worst = worst.max(ascend_one(
                c, score, rho, quadratic, scale, expo, floor, rhs,
            ));
        }
    } else {
        for c in cons.iter_mut() {
            worst = worst.max(ascend_one(
                c, score, rho, quadratic, scale, expo, floor, rhs,
            ));
        }
    }
    worst
}

/// For p ≠ 2 the per-constraint dual step solves g(Δ) = rhs where
/// g(Δ) = Σ_x c_x ((score_x + Δ c_x)⁺ scale)^expo is continuous and
/// nondecreasing. Safeguarded Newton: keep a bracket, bisect when the
/// Newton iterate leaves it.
fn solve_delta(c: &Constraint, score: &[f64], scale: f64, expo: f64, rhs: f64) -> f64 {
    let eval = |delta: f64| -> (f64, f64) {
        let mut g = 0.0;
        let mut dg = 0.0;
        for (&x, &ck) in c.nodes.iter().zip(&c.coef) {
            let s = (score[x as usize] + delta * ck).max(0.0);
            if s > 0.0 {
                let r = (s * scale).powf(expo);
                g += ck * r;
                dg += ck * ck * expo * r / s;
            }
        }
        (g, dg)
    };
    let mut lo = -c.lambda;
    let (g_lo, _) = eval(lo);
    if g_lo >= rhs {
        // Even dropping the multiplier leaves the path long: deactivate.
        return lo;
    }
    let mut hi = if c.lambda > 0.0 { c.lambda.max(1.0) } else { 1.0 };
    let mut g_hi = eval(hi).0;
    let mut grow = 0;
    while g_hi < rhs && grow < 200 {
        hi *= 2.0;
        g_hi = eval(hi).0;
        grow += 1;
    }
    if g_hi < rhs {
        return hi; // pathological flat constraint; move on
    }
    let mut d = 0.5 * (lo + hi);
    for _ in 0..60 {
        let (g, dg) = eval(d);
        if (g - rhs).abs() < 1e-13 {
            break;
        }
        if g < rhs {
            lo = d;
        } else {
            hi = d;
        }
        let newton = if dg > 0.0 { d - (g - rhs) / dg } else { d };
        d = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-14 * (1.0 + hi.abs()) {
            break;
        }
    }
    d
}

pub(crate) fn run(c: &GridCondenser, opts: &SolveOptions) -> Result<SolveOutput> {
    let grid = &c.grid;
    let n = grid.dim();
    let p = opts.p.unwrap_or(n as f64);
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("exponent must be finite and exceed 1, got {p}"),
        });
    }
    if !(opts.tol > 0.0 && opts.tol < 0.1) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("tolerance must lie in (0, 0.1), got {}", opts.tol),
        });
    }
    let nodes = grid.node_count();
    let mut status = vec![INTERIOR; nodes];
    if let Some(mask) = &c.domain {
        for (s, &m) in status.iter_mut().zip(mask) {
            if !m {
                *s = EXCLUDED;
            }
        }
    }
    for &e in &c.plate_e {
        status[e as usize] = PLATE_E;
    }
    for &f in &c.plate_f {
        status[f as usize] = PLATE_F;
    }

    plates_touch_check(c, &status)?;

    let offsets = opts.scheme.offsets(n);
    let mut calibration = if opts.calibrate && (p - n as f64).abs() < 1e-9 {
        opts.scheme.modulus_calibration(n)
    } else {
        1.0
    };

    // Restrict the solve to the corridor of nodes that lie on some E→F
    // path: reachable from E forwards and from F backwards.
    {
        let ctx = EdgeContext::new(
            grid,
            &offsets,
            &status,
            c.surface_e.as_deref(),
            c.surface_f.as_deref(),
        );
        let mut fwd = vec![false; nodes];
        reachable(&ctx, &c.plate_e, false, &mut fwd);
        if !c.plate_f.iter().any(|&f| fwd[f as usize]) {
            // The plates are separated by the excluded region: no curves,
            // zero capacity, infinite modulus.
            let result = CapacityResult::zero(0);
            let density = DensityField { grid: grid.clone(), rho: vec![0.0; nodes] };
            return Ok(SolveOutput { result, density });
        }
        let mut bwd = vec![false; nodes];
        reachable(&ctx, &c.plate_f, true, &mut bwd);
        for x in 0..nodes {
            if status[x] == INTERIOR && !(fwd[x] && bwd[x]) {
                status[x] = EXCLUDED;
            }
        }
    }
    let active_nodes = status
        .iter()
        .filter(|&&s| s == INTERIOR || s == PLATE_E || s == PLATE_F)
        .count();

    let ctx = EdgeContext::new(
        grid,
        &offsets,
        &status,
        c.surface_e.as_deref(),
        c.surface_f.as_deref(),
    );
    let mut sources: Vec<u32> = c.plate_e.clone();
    sources.sort_unstable();
    sources.dedup();

    let cell = grid.spacing().powi(n as i32);
    // Floor density: a pure cutting-plane start from ρ ≡ 0 never leaves the
    // zero phase in 3-d — the supply of zero-cost dodging paths between the
    // raised ones grows combinatorially with the lateral dimension. A tiny
    // uniform floor prices every path by its geometric length, which both
    // ends that phase and makes the search prefer structured short paths.
    // Its energy cost is O(tolᵖ) of the result — far below grid error.
    let diameter: f64 = (0..n)
        .map(|k| (grid.nodes_per_axis(k) - 1) as f64 * grid.spacing())
        .fold(0.0, f64::max);
    let floor = 0.25 * opts.tol / diameter.max(grid.spacing());
    let mut rho = vec![floor; nodes];
    let mut score = vec![0.0f64; nodes];
    let mut cons: Vec<Constraint> = Vec::new();
    let mut finder = PathFinder::new(nodes);
    let mut used = vec![false; nodes];
    let mut sweeps_total: usize = 0;
    let mut certified: Option<f64> = None;

    // Potential-flow seeding: relax the p-harmonic potential between the
    // plates, take ρ = |∇u|, and scale it onto the admissibility line
    // measured by an exact shortest-path search. When this succeeds the
    // main loop certifies immediately and no lattice-direction calibration
    // applies — finite differences measure the true gradient, not a
    // crystalline path metric. When it fails (it can, for contrived
    // domains), the constraint-generation loop below takes over unseeded.
    let debug = std::env::var_os("RINGKIT_SOLVER_TRACE").is_some();
    if let Some(seed) = potential::seed_density(
        grid,
        &status,
        c.surface_e.as_deref(),
        c.surface_f.as_deref(),
        p,
    ) {
        let probe = finder.run(&ctx, &sources, &seed.rho, f64::INFINITY);
        if debug {
            eprintln!(
                "seed: {} relax sweeps, shortest {:.6}",
                seed.sweeps, probe.shortest
            );
        }
        if probe.shortest.is_finite() && probe.shortest > 0.0 {
            let inv = 1.0 / probe.shortest;
            for (r, &s) in rho.iter_mut().zip(&seed.rho) {
                *r = (s * inv).max(floor);
            }
            calibration = 1.0;
            sweeps_total += seed.sweeps;
        }
    } else if debug {
        eprintln!("seed: relaxation did not settle; falling back to cutting planes");
    }

    // The restricted solves aim slightly above unit length. Aiming at 1
    // exactly leaves every lateral dip between constrained paths just under
    // 1, and in 3-d the solver then crawls through thousands of marginal
    // violations; the small overshoot lifts those dips past the certificate
    // line in one stroke. The final normalization below cancels the bias.
    let rhs = 1.0 + 2.0 * opts.tol;
    for round in 0..opts.max_rounds {
        let search = finder.run(&ctx, &sources, &rho, 1.0);
        if search.shortest >= 1.0 - opts.tol {
            certified = Some(search.shortest);
            break;
        }
        // Bulk constraint acquisition: one violated tree path per plate-F
        // contact, shortest first. Narrow batches look thrifty but starve
        // the solver — a ring needs a constraint per boundary spoke, and
        // feeding them a few at a time costs hundreds of outer rounds.
        // Skip a path only when nearly all of it repeats already-claimed
        // nodes: pure trunk duplicates add work without new information,
        // but laterally shifted near-copies are exactly what pins ρ down.
        used.fill(false);
        let mut added = 0usize;
        for &contact in search.contacts.iter() {
            if added >= opts.batch_cap {
                break;
            }
            if finder.dist[contact as usize] >= 1.0 - opts.tol {
                break;
            }
            let path = finder.extract_path(contact);
            let overlap = path.iter().filter(|&&x| used[x as usize]).count();
            if added > 0 && overlap * 20 >= path.len() * 17 {
                continue;
            }
            for &x in &path {
                used[x as usize] = true;
            }
            cons.push(path_constraint(&ctx, &path));
            added += 1;
        }
        if added == 0 {
            if let Some(&contact) = search.contacts.first() {
                let path = finder.extract_path(contact);
                cons.push(path_constraint(&ctx, &path));
            }
        }

        // Re-solve the restricted program. Rebuild the score from scratch
        // each round so incremental float drift cannot accumulate.
        score.fill(0.0);
        for con in &cons {
            if con.lambda != 0.0 {
                for (&x, &ck) in con.nodes.iter().zip(&con.coef) {
                    score[x as usize] += con.lambda * ck;
                }
            }
        }
        let expo = 1.0 / (p - 1.0);
        let scale = 1.0 / (p * cell);
        for x in 0..nodes {
            rho[x] = if score[x] > 0.0 {
                (score[x] * scale).powf(expo).max(floor)
            } else {
                floor
            };
        }
        // Loose inner solves suffice while the iterate is far from
        // admissible; the tolerance tightens as the certificate nears.
        let inner_eps = (0.25 * (1.0 - search.shortest))
            .clamp(0.25 * opts.tol, 0.05);
        let mut sweeps = 0usize;
        loop {
            let worst = ascent_sweep(
                &mut cons,
                &mut score,
                &mut rho,
                p,
                cell,
                sweeps % 2 == 1,
                floor,
                rhs,
            );
            sweeps += 1;
            sweeps_total += 1;
            if worst < inner_eps || sweeps >= opts.inner_cap {
                break;
            }
        }

        if debug {
            eprintln!(
                "round {round}: shortest {:.5}, +{added} paths, {} cons, {sweeps} sweeps",
                search.shortest,
                cons.len(),
            );
        }
        // Retire constraints only after a few consecutive inactive rounds.
        // Pruning at the first λ = 0 looks thrifty but forces the path
        // search to re-derive thousands of near-binding paths every round
        // as the restricted optimum sloshes; a short grace period lets the
        // sweeps re-bind them at a fraction of a Dijkstra's cost.
        for con in cons.iter_mut() {
            con.idle = if con.lambda == 0.0 { con.idle.saturating_add(1) } else { 0 };
        }
        cons.retain(|con| con.idle <= 4);
    }

    let constraints = cons.len();
    // Each node represents a cell of volume hⁿ. Plate nodes carry ρ so that
    // paths are priced from their first step, but that mass prices
    // admissibility, not energy: with a signed surface field, a straddling
    // cell contributes the fraction lying in the ring; without one, plate
    // cells drop out entirely — the neighboring domain cells already reach
    // within h/2 of the interface.
    let h = grid.spacing();
    let plate_cell = if c.thin_plates { 1.0 } else { 0.0 };
    let cell_weight = |x: usize, s: u8| -> f64 {
        let mut w = 1.0;
        match c.surface_e.as_deref() {
            Some(d) => w *= (0.5 + d[x] / h).clamp(0.0, 1.0),
            None if s == PLATE_E => return plate_cell,
            None => {}
        }
        match c.surface_f.as_deref() {
            Some(d) => w *= (0.5 + d[x] / h).clamp(0.0, 1.0),
            None if s == PLATE_F => return plate_cell,
            None => {}
        }
        w
    };
    let build = |rho: &[f64], shortest: f64, sweeps_total: usize| -> SolveOutput {
        let raw_capacity: f64 = rho
            .iter()
            .zip(&status)
            .enumerate()
            .filter(|(_, (_, &s))| s != EXCLUDED)
            .map(|(x, (&r, &s))| r.powf(p) * cell * cell_weight(x, s))
            .sum();
        let cap = raw_capacity / calibration;
        let result = CapacityResult {
            capacity: cap,
            modulus: crate::sphere::capacity_to_modulus(n, cap).unwrap_or(f64::INFINITY),
            iterations: sweeps_total,
            certified_slack: shortest - 1.0,
            raw_capacity,
            calibration,
            active_nodes,
            constraints,
        };
        let density = DensityField { grid: grid.clone(), rho: rho.to_vec() };
        SolveOutput { result, density }
    };

    // The loop's searches were cut off at distance 1; measure the true
    // shortest admissible-length over the final field.
    let final_search = finder.run(&ctx, &sources, &rho, f64::INFINITY);
    let shortest = final_search.shortest;
    match certified {
        Some(_) => {
            // An infinite shortest length means no curve joins the plates at
            // all: the family is empty, its modulus is 0, and ρ ≡ 0 is
            // admissible and extremal.
            if shortest.is_infinite() {
                let zero = vec![0.0; rho.len()];
                return Ok(build(&zero, 1.0, sweeps_total));
            }
            // Normalize the witness to exact admissibility: path weights are
            // linear in ρ, so dividing by the measured shortest length makes
            // the minimum exactly 1 and removes the overshoot the inflated
            // inner target built in. Scaling an admissible field this way
            // only ever tightens the energy it reports.
            if shortest > 0.0 {
                let inv = 1.0 / shortest;
                for r in rho.iter_mut() {
                    *r *= inv;
                }
            }
            Ok(build(&rho, 1.0, sweeps_total))
        }
        None => Err(Error::NonConvergence {
            rounds: opts.max_rounds,
            shortest,
            best: Box::new(build(&rho, shortest, sweeps_total)),
        }),
    }
}

fn path_constraint(ctx: &EdgeContext<'_>, path: &[u32]) -> Constraint {
    let mut coef = vec![0.0f64; path.len()];
    for i in 0..path.len() - 1 {
        let l = ctx.edge_length(path[i] as usize, path[i + 1] as usize);
        coef[i] += 0.5 * l;
        coef[i + 1] += 0.5 * l;
    }
    let sum_c2 = coef.iter().map(|c| c * c).sum();
    Constraint { nodes: path.to_vec(), coef, sum_c2, lambda: 0.0, idle: 0 }
}

/// The condenser is degenerate when the plates meet or sit within one cell
/// of each other (∥Δ∥∞ ≤ 1): every connecting "path" would have zero length
/// and the discrete capacity blows up instead of approximating anything.
fn plates_touch_check(c: &GridCondenser, status: &[u8]) -> Result<()> {
    let grid = &c.grid;
    let n = grid.dim();
    let (small, small_is_e) = if c.plate_e.len() <= c.plate_f.len() {
        (&c.plate_e, true)
    } else {
        (&c.plate_f, false)
    };
    let other = if small_is_e { PLATE_F } else { PLATE_E };
    // All ∥Δ∥∞ ≤ 1 neighbors, i.e. the 3ⁿ−1 surrounding cells.
    let mut offs: Vec<Offset> = Vec::new();
    let mut steps = [0i32; MAX_DIM];
    build_box_offsets(n, 0, &mut steps, &mut offs);
    let mut iv = [0i64; MAX_DIM];
    for &s in small.iter() {
        grid.decode(s as usize, &mut iv);
        for off in &offs {
            if let Some(b) = grid.step(&iv, off) {
                if status[b] == other {
                    return Err(Error::PlatesTouch(format!(
                        "plate nodes {s} and {b} are within one grid cell"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn build_box_offsets(n: usize, k: usize, steps: &mut [i32; MAX_DIM], out: &mut Vec<Offset>) {
    if k == n {
        if steps[..n].iter().any(|&s| s != 0) {
            let len: f64 = steps[..n].iter().map(|&s| (s * s) as f64).sum::<f64>().sqrt();
            out.push(Offset { steps: *steps, len_units: len });
        }
        return;
    }
    for s in -1..=1 {
        steps[k] = s;
        build_box_offsets(n, k + 1, steps, out);
    }
    steps[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::modulus::{solve_modulus, GridCondenser, SolveOptions};
    use crate::sphere::{pt2, Point};

    fn ring(res: usize) -> GridCondenser {
        let grid = Grid::cube(2, -2.2, 2.2, res).unwrap();
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
        GridCondenser::new(grid, e, f)
    }

    #[test]
    fn repeated_solves_are_bit_identical() {
        let c = ring(48);
        let opts = SolveOptions::default();
        let a = solve_modulus(&c, &opts).expect("first solve");
        let b = solve_modulus(&c, &opts).expect("second solve");
        assert_eq!(
            a.result.capacity.to_bits(),
            b.result.capacity.to_bits(),
            "capacity must be deterministic"
        );
        let same = a
            .density
            .rho
            .iter()
            .zip(&b.density.rho)
            .all(|(x, y)| x.to_bits() == y.to_bits());
        assert!(same, "density fields must match bit for bit");
    }

    #[test]
    fn final_density_prices_every_path_at_least_one() {
        let c = ring(64);
        let out = solve_modulus(&c, &SolveOptions::default()).expect("solve");
        // Re-derive the shortest ρ-length between the plates from scratch;
        // the solver's normalization promises the minimum sits at 1.
        let grid = &c.grid;
        let mut status = vec![INTERIOR; grid.node_count()];
        for &e in &c.plate_e {
            status[e as usize] = PLATE_E;
        }
        for &f in &c.plate_f {
            status[f as usize] = PLATE_F;
        }
        let offsets = SolveOptions::default().scheme.offsets(2);
        let ctx = EdgeContext::new(grid, &offsets, &status, None, None);
        let mut finder = PathFinder::new(grid.node_count());
        let search = finder.run(&ctx, &c.plate_e, &out.density.rho, f64::INFINITY);
        assert!(
            (search.shortest - 1.0).abs() <= 1e-9,
            "re-measured shortest path length {} should sit at the certificate line",
            search.shortest
        );
    }

    #[test]
    fn disconnected_plates_have_zero_capacity() {
        let grid = Grid::cube(2, -1.0, 1.0, 32).unwrap();
        let a = pt2(-0.5, -0.5);
        let b = pt2(0.5, 0.5);
        let mask: Vec<bool> = (0..grid.node_count())
            .map(|id| {
                let y = grid.node_point(id);
                y.distance(&a) <= 0.3 || y.distance(&b) <= 0.3
            })
            .collect();
        let e: Vec<u32> = grid.ball_nodes(&a, 0.12).into_iter().map(|i| i as u32).collect();
        let f: Vec<u32> = grid.ball_nodes(&b, 0.12).into_iter().map(|i| i as u32).collect();
        let mut c = GridCondenser::new(grid, e, f);
        c.domain = Some(mask);
        let out = solve_modulus(&c, &SolveOptions::default()).expect("solve");
        assert_eq!(out.result.capacity, 0.0);
        assert!(out.result.modulus.is_infinite());
        assert!(out.density.rho.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn plates_sharing_a_node_are_rejected() {
        let grid = Grid::cube(2, -1.0, 1.0, 16).unwrap();
        let e: Vec<u32> = vec![0, 1, 2];
        let f: Vec<u32> = vec![2, 40, 41];
        let c = GridCondenser::new(grid, e, f);
        let err = solve_modulus(&c, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::PlatesTouch(_)), "got {err}");
    }

    #[test]
    fn adjacent_plates_with_no_gap_are_rejected() {
        // Two plate columns one cell apart: every connecting path has a
        // single zero-length step, so the problem is ill-posed.
        let grid = Grid::cube(2, -1.0, 1.0, 16).unwrap();
        let npts = 17u32;
        let e: Vec<u32> = (0..npts).map(|j| j * npts + 7).collect();
        let f: Vec<u32> = (0..npts).map(|j| j * npts + 8).collect();
        let c = GridCondenser::new(grid, e, f);
        let err = solve_modulus(&c, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::PlatesTouch(_)), "got {err}");
    }

    #[test]
    fn tolerance_domain_is_checked() {
        let c = ring(16);
        for tol in [0.0, -0.5, 0.1, 0.5, f64::NAN] {
            let opts = SolveOptions { tol, ..SolveOptions::default() };
            assert!(
                solve_modulus(&c, &opts).is_err(),
                "tolerance {tol} must be rejected"
            );
        }
    }
}
