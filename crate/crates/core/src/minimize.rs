//! Bounded scalar minimization: golden-section steps with successive
//! parabolic interpolation (the classic Brent bounded scheme). Every trial
//! point stays strictly inside the given interval.

use crate::error::CalError;

/// Result of a bounded scalar minimization.
#[derive(Debug, Clone, Copy)]
pub struct ScalarMin {
    pub x: f64,
    pub fx: f64,
    pub evaluations: usize,
    /// False when the evaluation budget ran out before the interval shrank
    /// below the tolerance.
    pub converged: bool,
}

const GOLDEN_MEAN: f64 = 0.381_966_011_250_105_1; // (3 - sqrt(5)) / 2
const SQRT_EPS: f64 = 1.490_116_119_384_765_6e-8; // sqrt(f64 machine epsilon)

/// Minimize `f` over `[lo, hi]` to absolute tolerance `xatol` in `x`, with at
/// most `max_evals` function evaluations. `f` is never called outside the
/// interval; a non-finite value from `f` aborts with an error naming the
/// offending candidate.
pub fn minimize_scalar<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    xatol: f64,
    max_evals: usize,
) -> Result<ScalarMin, CalError>
where
    F: FnMut(f64) -> f64,
{
    assert!(lo < hi, "empty search interval [{lo}, {hi}]");
    assert!(xatol > 0.0, "tolerance must be positive");

    let mut eval = |x: f64, n: &mut usize| -> Result<f64, CalError> {
        let v = f(x);
        *n += 1;
        if !v.is_finite() {
            return Err(CalError::NonFinite { candidate: x });
        }
        Ok(v)
    };

    let mut evals = 0usize;
    let (mut a, mut b) = (lo, hi);

    // x: best point so far; w: second best; v: previous w.
    let mut x = a + GOLDEN_MEAN * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = eval(x, &mut evals)?;
    let mut fw = fx;
    let mut fv = fx;

    // rat: last step taken; e: the step before that (bookkeeping for the
    // parabolic acceptance test).
    let mut rat = 0.0f64;
    let mut e = 0.0f64;

    let mut xm = 0.5 * (a + b);
    let mut tol1 = SQRT_EPS * x.abs() + xatol / 3.0;
    let mut tol2 = 2.0 * tol1;

    let mut converged = true;
    while (x - xm).abs() > tol2 - 0.5 * (b - a) {
        if evals >= max_evals {
            converged = false;
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            // Try a parabola through (x, w, v).
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = rat;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                use_golden = false;
                rat = p / q;
                let candidate = x + rat;
                // Stay clear of the interval ends.
                if candidate - a < tol2 || b - candidate < tol2 {
                    rat = if xm >= x { tol1 } else { -tol1 };
                }
            }
        }
        if use_golden {
            e = if x >= xm { a - x } else { b - x };
            rat = GOLDEN_MEAN * e;
        }

        let step = if rat.abs() >= tol1 {
            rat
        } else if rat >= 0.0 {
            tol1
        } else {
            -tol1
        };
        let u = x + step;
        debug_assert!(u >= a && u <= b, "trial point left the interval");
        let fu = eval(u, &mut evals)?;

        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
        xm = 0.5 * (a + b);
        tol1 = SQRT_EPS * x.abs() + xatol / 3.0;
        tol2 = 2.0 * tol1;
    }

    Ok(ScalarMin {
        x,
        fx,
        evaluations: evals,
        converged,
    })
}
