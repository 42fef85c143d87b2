//! Dormand-Prince 5(4) with embedded error control.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    /// Floor added to the error scale.
    pub atol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates `y' = f(x, y)` from `x0` to `x1 > x0`.
///
/// The error of each step is measured against
/// `atol + rtol * max(|y|_1, |y_new|_1)`, a single scale for all components.
/// `observe` is called after every accepted step.
pub fn integrate<const N: usize, F, O>(
    f: F,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    h0: f64,
    tol: Tolerance,
    mut observe: O,
) -> Result<([f64; N], IntegrationStats)>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    O: FnMut(f64, &[f64; N]),
{
    let mut x = x0;
    let mut y = y0;
    let mut h = h0.min(x1 - x0);
    let mut stats = IntegrationStats::default();
    let mut k = [[0.0; N]; 7];
    k[0] = f(x, &y);

    while x < x1 {
        if h <= 1e-14 * x.abs().max(1.0) {
            return Err(Error::StepUnderflow { at: x });
        }
        let last = x + h >= x1;
        if last {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        // row 6 of A holds the fifth-order weights; k[6] was evaluated at y_new
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for i in 0..N {
                y_new[i] += h * A[6][j] * kj[i];
            }
        }
        let mut err = 0.0f64;
        for i in 0..N {
            let e: f64 = (0..7).map(|s| E[s] * k[s][i]).sum::<f64>() * h;
            err += e.abs();
        }
        let size = y.iter().map(|v| v.abs()).sum::<f64>().max(y_new.iter().map(|v| v.abs()).sum());
        let ratio = err / (tol.atol + tol.rtol * size);

        if ratio <= 1.0 {
            x = if last { x1 } else { x + h };
            y = y_new;
            k[0] = k[6];
            stats.accepted += 1;
            observe(x, &y);
        } else {
            stats.rejected += 1;
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= if ratio > 1.0 { factor.min(1.0) } else { factor };
    }
    Ok((y, stats))
}
