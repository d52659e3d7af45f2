//! Scalar root finding and sampling grids.

/// Brent's method on a bracket `[a, b]` with `fa * fb <= 0`.
///
/// Iterates until the bracket is within `xtol` plus a few ulps of the
/// current estimate, so `xtol = 0.0` runs to machine precision.
pub fn brent<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    xtol: f64,
) -> Result<f64, E> {
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    debug_assert!(fa.signum() != fb.signum(), "root not bracketed");
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when only two points differ
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Ok(b)
}

/// First-kind Chebyshev nodes on `(a, b)`, ascending. Endpoints are excluded.
pub fn chebyshev_nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..n)
        .rev()
        .map(|k| {
            let t = ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            mid + half * t
        })
        .collect()
}

/// Median of a non-empty slice; NaNs must be filtered by the caller.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cube_root() {
        let f = |x: f64| Ok::<_, ()>(x * x * x - 100.0);
        let r = brent(f, 0.0, 10.0, -100.0, 900.0, 0.0).unwrap();
        assert!((r - 100f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_counts_few_evaluations() {
        let mut calls = 0;
        let f = |x: f64| {
            calls += 1;
            Ok::<_, ()>(x.exp() - 2.0)
        };
        let r = brent(f, 0.0, 1.0, -1.0, std::f64::consts::E - 2.0, 0.0).unwrap();
        assert!((r - 2f64.ln()).abs() < 1e-15);
        assert!(calls < 15, "{calls} evaluations");
    }

    #[test]
    fn brent_propagates_errors() {
        let r = brent(|_| Err("boom"), 0.0, 1.0, -1.0, 1.0, 0.0);
        assert_eq!(r, Err("boom"));
    }

    #[test]
    fn chebyshev_nodes_are_interior_and_sorted() {
        let n = chebyshev_nodes(1.0, 10.0, 33);
        assert_eq!(n.len(), 33);
        assert!(n.windows(2).all(|w| w[0] < w[1]));
        assert!(n[0] > 1.0 && n[32] < 10.0);
        assert!((n[16] - 5.5).abs() < 1e-12);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
