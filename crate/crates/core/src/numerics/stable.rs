//! Cancellation-free elementary combinations used by the singular-endpoint
//! integrands: ratios that tend to 1 at the origin.

/// `sinh(x)/x`, equal to 1 at 0.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// `expm1(x)/x`, equal to 1 at 0.
pub fn expm1c(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + 0.5 * x
    } else {
        x.exp_m1() / x
    }
}

/// `ln(1+x)/x`, equal to 1 at 0.
pub fn ln1pc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - 0.5 * x
    } else {
        x.ln_1p() / x
    }
}

/// `(x^p - 1)/gap` evaluated stably for `x = 1 + gap`, `gap >= 0`.
pub fn pow_gap_quotient(p: f64, gap: f64) -> f64 {
    let l = gap.ln_1p();
    p * expm1c(p * l) * ln1pc(gap)
}

/// `(sinh^p(a + gap) - sinh^p(a))/gap` evaluated stably for `gap >= 0`.
pub fn sinh_pow_gap_quotient(p: f64, a: f64, gap: f64) -> f64 {
    // sinh(a+gap) - sinh(a) = 2 cosh(a + gap/2) sinh(gap/2)
    let z_over_gap = (a + 0.5 * gap).cosh() * sinhc(0.5 * gap) / a.sinh();
    let z = z_over_gap * gap;
    let l_over_gap = ln1pc(z) * z_over_gap;
    let pl = p * l_over_gap * gap;
    a.sinh().powf(p) * p * expm1c(pl) * l_over_gap
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_quotients_match_naive_forms_away_from_zero() {
        for &gap in &[0.5, 0.05, 1e-3] {
            let naive = ((1.0f64 + gap).powi(4) - 1.0) / gap;
            let stable = pow_gap_quotient(4.0, gap);
            assert!((naive - stable).abs() < 1e-9 * naive, "gap {gap}");

            let a = 0.8;
            let naive2 = ((a + gap).sinh().powi(4) - a.sinh().powi(4)) / gap;
            let stable2 = sinh_pow_gap_quotient(4.0, a, gap);
            assert!((naive2 - stable2).abs() < 1e-8 * naive2, "gap {gap}");
        }
    }

    #[test]
    fn gap_quotients_finite_at_zero() {
        assert!((pow_gap_quotient(4.0, 0.0) - 4.0).abs() < 1e-14);
        let a = 0.8f64;
        let expect = 4.0 * a.sinh().powi(3) * a.cosh();
        assert!((sinh_pow_gap_quotient(4.0, a, 0.0) - expect).abs() < 1e-12 * expect);
    }
}
