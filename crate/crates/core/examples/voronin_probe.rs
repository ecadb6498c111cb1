use gzlab::complex::{ComplexHP, PrecisionConfig};
use gzlab::voronin::{density_trend, gamma_curve, nearest_approach, DEFAULT_STEP, DEFAULT_X};

fn main() {
    let cfg = PrecisionConfig::new(96);

    let target = vec![ComplexHP::from_f64(1.0, 0.0, 96)];
    let hit = nearest_approach(&target, (0.0, 100.0), DEFAULT_STEP, 0, DEFAULT_X, &cfg).unwrap();
    println!("closest to 1 on [0, 100]: y = {:.6}, distance {:.3e}", hit.best_y, hit.distance.to_f64());

    let trend = density_trend(&target, &[(0.0, 25.0), (0.0, 50.0), (0.0, 100.0)], 0.1, 0, DEFAULT_X, &cfg).unwrap();
    for r in &trend {
        println!("range {:?}: {:.3e} at y = {:.4}", r.range, r.distance.to_f64(), r.best_y);
    }

    // a point of the curve is found again
    let own = gamma_curve(42.5, 1, DEFAULT_X, &cfg).unwrap().values;
    let back = nearest_approach(&own, (40.0, 45.0), DEFAULT_STEP, 1, DEFAULT_X, &cfg).unwrap();
    println!("self target 42.5: y = {}, distance {:.1e}", back.best_y, back.distance.to_f64());
}
