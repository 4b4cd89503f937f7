//! Finite point samples of compact sets, with the provenance metadata the
//! analyzers and reports carry along.

use crate::error::{Error, Result};
use crate::sphere::{pt2, Point};

/// Matching points closer than this are the same sample.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

/// Where a cloud came from: enough to regenerate it and to pick honest
/// resolution floors downstream.
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CloudMetadata {
    /// Generator name, e.g. "cantor", "circle", "julia:power2".
    pub generator: String,
    /// Ordered key=value parameter pairs (ordered so emitted headers are
    /// deterministic).
    pub params: Vec<(String, String)>,
    /// Sample depth / refinement level, when the generator has one.
    pub depth: Option<u32>,
    /// RNG seed, when the generator is randomized.
    pub seed: Option<u64>,
    /// The smallest genuine feature size of the sample: structure below
    /// this scale is a sampling artifact, not the underlying set.
    pub sampling_scale: Option<f64>,
}

impl CloudMetadata {
    pub fn named(generator: &str) -> CloudMetadata {
        CloudMetadata { generator: generator.to_string(), ..CloudMetadata::default() }
    }

    pub fn with_param(mut self, key: &str, value: String) -> CloudMetadata {
        self.params.push((key.to_string(), value));
        self
    }
}

/// A finite sample of a compact set: at least two distinct finite points of
/// a common dimension, no two closer than `DUPLICATE_TOLERANCE`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Point>,
    dim: usize,
    pub metadata: CloudMetadata,
}

impl PointCloud {
    /// Validates and wraps a point list. Rejects duplicates; use
    /// [`PointCloud::from_unfiltered`] for raw generator output.
    pub fn new(points: Vec<Point>, metadata: CloudMetadata) -> Result<PointCloud> {
        let dim = check_points(&points)?;
        let sorted = sort_lexicographic(points.clone());
        for pair in sorted.windows(2) {
            if pair[0].distance(&pair[1]) <= DUPLICATE_TOLERANCE {
                return Err(Error::DegenerateCloud(format!(
                    "duplicate points at {:?}",
                    pair[0].coords()
                )));
            }
        }
        Ok(PointCloud { points, dim, metadata })
    }

    /// Sorts raw generator output, drops near-duplicates, and validates.
    /// The sort makes clouds canonical: the same sample set yields the
    /// same cloud regardless of generation order.
    pub fn from_unfiltered(points: Vec<Point>, metadata: CloudMetadata) -> Result<PointCloud> {
        check_points(&points)?;
        let sorted = sort_lexicographic(points);
        let mut kept: Vec<Point> = Vec::with_capacity(sorted.len());
        for p in sorted {
            // Only points with a nearby first coordinate can collide, and
            // they sit together in the sorted order.
            let dup = kept
                .iter()
                .rev()
                .take_while(|q| (q.coords()[0] - p.coords()[0]).abs() <= DUPLICATE_TOLERANCE)
                .any(|q| q.distance(&p) <= DUPLICATE_TOLERANCE);
            if !dup {
                kept.push(p);
            }
        }
        let dim = check_points(&kept)?;
        Ok(PointCloud { points: kept, dim, metadata })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor demands at least two points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest pairwise Euclidean distance (exact, O(m²)).
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                best = best.max(p.distance(q));
            }
        }
        best
    }

    /// Euclidean nearest-neighbor distance of each point.
    pub fn nearest_neighbor_distances(&self) -> Vec<f64> {
        let m = self.points.len();
        let mut out = vec![f64::INFINITY; m];
        for i in 0..m {
            for j in i + 1..m {
                let d = self.points[i].distance(&self.points[j]);
                out[i] = out[i].min(d);
                out[j] = out[j].min(d);
            }
        }
        out
    }

    /// The scale below which gaps are sampling artifacts: the declared
    /// generator scale when present, else the 1st percentile of
    /// nearest-neighbor distances.
    pub fn resolution_scale(&self) -> f64 {
        if let Some(s) = self.metadata.sampling_scale {
            return s;
        }
        let mut nn = self.nearest_neighbor_distances();
        nn.sort_by(|a, b| a.partial_cmp(b).unwrap());
        nn[(nn.len() - 1) / 100]
    }
}

fn check_points(points: &[Point]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateCloud("no points".into()));
    };
    let dim = first.dim();
    for p in points {
        if p.is_infinite() {
            return Err(Error::DegenerateCloud("cloud contains the point at infinity".into()));
        }
        if p.dim() != dim {
            return Err(Error::DimensionMismatch(dim, p.dim()));
        }
        if !p.coords().iter().all(|c| c.is_finite()) {
            return Err(Error::DegenerateCloud("non-finite coordinate".into()));
        }
    }
    if points.len() < 2 {
        return Err(Error::DegenerateCloud("need at least two distinct points".into()));
    }
    Ok(dim)
}

fn sort_lexicographic(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_by(|a, b| {
        a.coords()
            .iter()
            .zip(b.coords())
            .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    points
}

/// Endpoints of the depth-`depth` middle-λ Cantor construction on the unit
/// segment of the x-axis in the plane. Each interval keeps two end pieces
/// of fraction (1−λ)/2 and drops the middle λ.
pub fn cantor_middle(lambda: f64, depth: u32) -> Result<PointCloud> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            reason: format!("middle fraction must lie in (0,1), got {lambda}"),
        });
    }
    if depth > 24 {
        return Err(Error::InvalidParameter {
            name: "depth",
            reason: format!("2^{depth} intervals will not fit in memory"),
        });
    }
    let keep = (1.0 - lambda) / 2.0;
    let mut intervals = vec![(0.0f64, 1.0f64)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            let w = b - a;
            next.push((a, a + keep * w));
            next.push((b - keep * w, b));
        }
        intervals = next;
    }
    let mut points = Vec::with_capacity(intervals.len() * 2);
    for (a, b) in &intervals {
        points.push(pt2(*a, 0.0));
        points.push(pt2(*b, 0.0));
    }
    let scale = keep.powi(depth as i32);
    let meta = CloudMetadata {
        generator: "cantor".into(),
        params: vec![("lambda".into(), format!("{lambda}"))],
        depth: Some(depth),
        seed: None,
        sampling_scale: Some(scale),
    };
    PointCloud::from_unfiltered(points, meta)
}

/// m equispaced points on the unit circle.
pub fn unit_circle(m: usize) -> Result<PointCloud> {
    if m < 3 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("need at least 3 circle points, got {m}"),
        });
    }
    let points: Vec<Point> = (0..m)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            pt2(t.cos(), t.sin())
        })
        .collect();
    let meta = CloudMetadata {
        generator: "circle".into(),
        params: vec![("m".into(), format!("{m}"))],
        depth: None,
        seed: None,
        sampling_scale: Some(2.0 * std::f64::consts::PI / m as f64),
    };
    PointCloud::from_unfiltered(points, meta)
}

/// m equispaced points on the segment [a, b].
pub fn segment_cloud(a: &Point, b: &Point, m: usize) -> Result<PointCloud> {
    if m < 2 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("need at least 2 segment points, got {m}"),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let step = 1.0 / (m - 1) as f64;
    let points: Vec<Point> = (0..m)
        .map(|k| {
            let t = k as f64 * step;
            let coords: Vec<f64> = a
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| x + t * (y - x))
                .collect();
            Point::finite(&coords)
        })
        .collect();
    let meta = CloudMetadata {
        generator: "segment".into(),
        params: vec![("m".into(), format!("{m}"))],
        depth: None,
        seed: None,
        sampling_scale: Some(a.distance(b) * step),
    };
    PointCloud::from_unfiltered(points, meta)
}

/// Collinear points x·e₁ in the plane, for hand-built test configurations.
pub fn collinear(xs: &[f64]) -> Result<PointCloud> {
    let points: Vec<Point> = xs.iter().map(|&x| pt2(x, 0.0)).collect();
    PointCloud::new(points, CloudMetadata::named("collinear"))
}
