//! Bracketed scalar root finding: Brent's method with guaranteed bisection
//! fallback.

use crate::error::{Error, Result};

/// Find the root of `g` inside the bracket `[lo, hi]`.
///
/// Requires a sign change: `g(lo) * g(hi) < 0` (an exact zero at an endpoint
/// is returned directly). Convergence is superlinear on smooth functions via
/// inverse quadratic interpolation / secant steps, with bisection as the
/// fallback, so the bracket width shrinks to `tol` unconditionally. If `g`
/// vanishes identically on the final bracket, the midpoint is returned.
pub fn find_root<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(
            "root tolerance must be positive".into(),
        ));
    }
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "root bracket must satisfy lo < hi (got [{lo}, {hi}])"
        )));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = g(a);
    let mut fb = g(b);

    if fa == 0.0 && fb == 0.0 {
        return Ok(0.5 * (a + b));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::NoSignChange {
            lo,
            hi,
            g_lo: fa,
            g_hi: fb,
        });
    }

    // Brent: b is the current best iterate, a the previous one, c keeps the
    // bracket.
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = b - a;

    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            if fb == 0.0 && fc == 0.0 {
                return Ok(0.5 * (b + c));
            }
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // Secant step.
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // Inverse quadratic interpolation.
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = g(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = b - a;
        }
    }
    Ok(b)
}

/// Scan `g` on a geometric/linear grid over `(lo, hi)` and return the first
/// bracket with a sign change, if any.
pub fn scan_for_bracket<G: Fn(f64) -> f64>(
    g: &G,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Option<(f64, f64)> {
    let n = samples.max(2);
    let mut prev_x = lo;
    let mut prev_g = g(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let gx = g(x);
        if prev_g == 0.0 {
            return Some((prev_x, x));
        }
        if prev_g * gx < 0.0 || gx == 0.0 {
            return Some((prev_x, x));
        }
        prev_x = x;
        prev_g = gx;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent fixed-count bisection used as the oracle.
    fn bisect60<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn odd_function_root_at_zero() {
        let r = find_root(f64::tanh, -1.0, 1.0, 1e-12).unwrap();
        assert!(r.abs() < 1e-12, "root = {r}");
    }

    #[test]
    fn catenary_tangency_constant_matches_bisection() {
        // Positive zero of 1 - t tanh(t), near 1.1996786.
        let g = |t: f64| 1.0 - t * t.tanh();
        let r = find_root(g, 1.0, 2.0, 1e-12).unwrap();
        let oracle = bisect60(g, 1.0, 2.0);
        assert!(
            (r - oracle).abs() < 1e-10,
            "brent {r} vs bisection {oracle}"
        );
        assert!((r - 1.1996786).abs() < 1e-6);
    }

    #[test]
    fn no_sign_change_is_an_error() {
        let r = find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn endpoint_zero_returned_directly() {
        let r = find_root(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r, 0.0);
    }

    proptest::proptest! {
        /// Root invariant under positive rescaling of g.
        #[test]
        fn invariant_under_monotone_rescaling(c in 1e-3f64..1e3) {
            let g = |t: f64| 1.0 - t * t.tanh();
            let r1 = find_root(g, 1.0, 2.0, 1e-12).unwrap();
            let r2 = find_root(|t| c * g(t), 1.0, 2.0, 1e-12).unwrap();
            proptest::prop_assert!((r1 - r2).abs() <= 1e-11);
        }
    }
}
