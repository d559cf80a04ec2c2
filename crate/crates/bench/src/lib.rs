//! Fixtures shared by the criterion benches.

use std::f64::consts::PI;

use jfourier::neumann::{CoefficientSequence, Geometric, Kelvin, Lommel};
use jfourier::C64;

/// Orders and arguments of the bessel-j benchmark grid: seven orders
/// (one complex, one negative) times sixteen arguments at moduli 0.5, 1, 3
/// and 10 in the first quadrant.
pub fn bessel_grid() -> Vec<(C64, C64)> {
    let orders = [
        C64::new(0.0, 0.0),
        C64::new(0.3, 0.0),
        C64::new(0.5, 0.0),
        C64::new(1.0, 0.0),
        C64::new(2.5, 0.0),
        C64::new(1.7, 0.5),
        C64::new(-0.3, 0.0),
    ];
    let mut grid = Vec::new();
    for nu in orders {
        for r in [0.5, 1.0, 3.0, 10.0] {
            for k in 0..4 {
                grid.push((nu, C64::from_polar(r, k as f64 * PI / 8.0)));
            }
        }
    }
    grid
}

/// A few coefficient sequences with different decay rates.
pub fn sequences() -> Vec<Box<dyn CoefficientSequence>> {
    vec![
        Box::new(Geometric::new(C64::new(0.3, 0.0)).expect("|rho| < 1")),
        Box::new(Geometric::new(C64::new(0.9, 0.0)).expect("|rho| < 1")),
        Box::new(Lommel::from_ratio(C64::new(0.5, 0.0)).expect("|w/z| < 1")),
        Box::new(Kelvin::new(1.3).expect("finite x")),
    ]
}
