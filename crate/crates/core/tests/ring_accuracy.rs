use ringkit::modulus::{analytic_ring_capacity, ring_capacity, PlateSpec, ShapeOptions};
use ringkit::sphere::Point;

fn round_ring_error(n: usize, inner: f64, outer: f64, res: usize, box_half: f64) -> f64 {
    let e = PlateSpec::Ball { center: Point::origin(n), radius: inner };
    let f = PlateSpec::BallComplement { center: Point::origin(n), radius: outer };
    let opts = ShapeOptions {
        resolution: Some(res),
        box_half: Some(box_half),
        ..ShapeOptions::default()
    };
    let got = ring_capacity(&e, &f, &opts).expect("solve").capacity;
    let want = analytic_ring_capacity(n, inner, outer).expect("closed form");
    (got / want - 1.0).abs()
}

#[test]
fn plane_ring_in_wide_box_stays_within_five_percent() {
    let e = std::f64::consts::E;
    let err = round_ring_error(2, 1.0, e, 256, 3.0 * e);
    assert!(err < 0.05, "relative error {err:.4} exceeds 5%");
}

#[test]
fn space_ring_in_wide_box_stays_within_ten_percent() {
    let e = std::f64::consts::E;
    let err = round_ring_error(3, 1.0, e, 96, 3.0 * e);
    assert!(err < 0.10, "relative error {err:.4} exceeds 10%");
}

#[test]
fn plane_ring_error_decreases_with_resolution() {
    let e = std::f64::consts::E;
    let errs: Vec<f64> = [64usize, 128, 256]
        .iter()
        .map(|&res| {
            let inner = PlateSpec::Ball { center: Point::origin(2), radius: 1.0 };
            let outer = PlateSpec::BallComplement { center: Point::origin(2), radius: e };
            let opts = ShapeOptions { resolution: Some(res), ..ShapeOptions::default() };
            let got = ring_capacity(&inner, &outer, &opts).expect("solve").capacity;
            let want = analytic_ring_capacity(2, 1.0, e).expect("closed form");
            (got / want - 1.0).abs()
        })
        .collect();
    assert!(
        errs[0] > errs[1] && errs[1] > errs[2],
        "errors should fall as the grid refines, got {errs:?}"
    );
}
