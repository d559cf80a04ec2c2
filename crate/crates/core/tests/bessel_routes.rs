use std::f64::consts::PI;

use jfourier::bessel::{
    bessel_i_classical, bessel_i_integral, bessel_j_classical, bessel_j_integral_eval,
    bessel_j_series,
};
use jfourier::{Diagnostics, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn orders() -> Vec<C64> {
    vec![
        c(0.0, 0.0),
        c(0.3, 0.0),
        c(0.5, 0.0),
        c(1.0, 0.0),
        c(2.5, 0.0),
        c(1.7, 0.5),
        c(-0.3, 0.0),
    ]
}

fn arguments() -> Vec<C64> {
    vec![
        c(0.5, 0.0),
        c(1.0, 0.0),
        c(2.0, 1.0),
        C64::from_polar(5.0, PI / 4.0),
        c(10.0, 0.0),
    ]
}

#[test]
fn integral_route_matches_series_on_grid() {
    let mut worst = 0.0f64;
    for nu in orders() {
        for z in arguments() {
            let e = bessel_j_integral_eval(nu, z).unwrap();
            let s = bessel_j_series(nu, z).unwrap();
            let err = (e.value - s).norm() / s.norm().max(1.0);
            if let Diagnostics::Quadrature {
                converged,
                nodes_used,
                ..
            } = e.diagnostics
            {
                assert!(converged, "nu = {nu}, z = {z}, nodes {nodes_used}");
            }
            assert!(err <= 1e-8, "nu = {nu}, z = {z}: {err:e}");
            worst = worst.max(err);
        }
    }
    println!("worst relative error {worst:e}");
}

#[test]
fn integer_orders_collapse() {
    for n in 0..=6i64 {
        for z in [c(1.0, 0.0), c(2.0, 1.0)] {
            let nu = c(n as f64, 0.0);
            let s = bessel_j_series(nu, z).unwrap();
            let i = bessel_j_integral_eval(nu, z).unwrap().value;
            let k = bessel_j_classical(n, z).unwrap();
            assert!((s - i).norm() <= 1e-10, "n = {n}, z = {z}");
            assert!((s - k).norm() <= 1e-10, "n = {n}, z = {z}");
            assert!((i - k).norm() <= 1e-10, "n = {n}, z = {z}");
        }
    }
    for m in 0..=4i64 {
        for z in [c(0.5, 0.0), c(1.3, 0.0)] {
            let a = bessel_i_integral(c(m as f64, 0.0), z).unwrap();
            let b = bessel_i_classical(m, z).unwrap();
            assert!((a - b).norm() <= 1e-10, "m = {m}, z = {z}");
        }
    }
}
