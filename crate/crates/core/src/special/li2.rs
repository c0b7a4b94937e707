//! The real dilogarithm `Li₂(x) = -∫₀ˣ log(1-t) dt/t` for `x ≤ 1`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const ZETA2: f64 = PI * PI / 6.0;

fn series(x: f64) -> f64 {
    // |x| ≤ 1/2
    let mut sum = 0.0;
    let mut pow = x;
    for k in 1..200 {
        let term = pow / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        pow *= x;
    }
    sum
}

pub fn li2(x: f64) -> Result<f64> {
    if x.is_nan() || x > 1.0 {
        return Err(Error::Domain(format!("Li2 requires x <= 1, got {x}")));
    }
    Ok(if x == 1.0 {
        ZETA2
    } else if x > 0.5 {
        ZETA2 - x.ln() * (-x).ln_1p() - series(1.0 - x)
    } else if x >= -0.5 {
        series(x)
    } else if x >= -1.0 {
        // Landen: Li₂(x) = -Li₂(x/(x-1)) - ½ log²(1-x)
        let l = (-x).ln_1p();
        -series(x / (x - 1.0)) - 0.5 * l * l
    } else {
        // inversion: Li₂(x) = -π²/6 - ½ log²(-x) - Li₂(1/x)
        let l = (-x).ln();
        -ZETA2 - 0.5 * l * l - li2(1.0 / x)?
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gauss_quad::legendre::GaussLegendre;

    fn by_quadrature(x: f64) -> f64 {
        let rule = GaussLegendre::new(64.try_into().unwrap());
        // split to keep the log singularity at t = 1 away from the nodes
        let f = |t: f64| -(-t).ln_1p() / t;
        let m = 8;
        (0..m)
            .map(|j| {
                let a = x * j as f64 / m as f64;
                let b = x * (j + 1) as f64 / m as f64;
                rule.integrate(a, b, f)
            })
            .sum()
    }

    #[test]
    fn special_values() {
        assert_eq!(li2(0.0).unwrap(), 0.0);
        assert!((li2(1.0).unwrap() - ZETA2).abs() < 1e-15);
        assert!((li2(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-14);
        let l2 = 2f64.ln();
        assert!((li2(0.5).unwrap() - (PI * PI / 12.0 - 0.5 * l2 * l2)).abs() < 1e-14);
        assert!(li2(1.5).is_err());
    }

    #[test]
    fn matches_defining_integral() {
        for x in [-20.0, -3.0, -1.3, -0.9, -0.4, 0.1, 0.45, 0.7, 0.95] {
            let a = li2(x).unwrap();
            let b = by_quadrature(x);
            assert!((a - b).abs() < 1e-10, "x={x}: {a} vs {b}");
        }
    }
}
