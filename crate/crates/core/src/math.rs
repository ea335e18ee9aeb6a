//! Thin wrappers over `libm` so the rest of the crate reads like std code.

/// `x^e`, by repeated squaring when `e` is a small integer.
#[inline]
pub(crate) fn powf(x: f64, e: f64) -> f64 {
    if e.abs() <= 32.0 && libm::trunc(e) == e {
        let n = e as i32;
        let r = powi(x, n.unsigned_abs());
        if n < 0 {
            1.0 / r
        } else {
            r
        }
    } else {
        libm::pow(x, e)
    }
}

#[inline]
fn powi(mut x: f64, mut n: u32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= x;
        }
        x *= x;
        n >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// `|v|^{e-2} v`, extended by continuity with the value 0 at `v = 0`.
#[inline]
pub(crate) fn signed_pow(v: f64, e: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        powf(v.abs(), e - 1.0).copysign(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_powers_match_libm() {
        for &x in &[0.0, 1e-3, 0.7, 1.0, 3.5, 1e5] {
            for e in -4..=12 {
                let (fast, slow) = (powf(x, e as f64), libm::pow(x, e as f64));
                assert!(fast == slow || ((fast - slow) / slow).abs() < 1e-14, "{x}^{e}: {fast} vs {slow}");
            }
        }
        assert_eq!(powf(0.0, 0.0), 1.0);
        assert_eq!(powf(0.0, -1.0), f64::INFINITY);
    }
}
