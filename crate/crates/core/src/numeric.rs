//! Small numerical building blocks: bracketed root finding with Newton
//! polish, polynomial extrapolation, and fixed-panel quadrature.

/// Refine a root of `f` inside a bracket with a sign change.
///
/// Bisection guarantees progress; a secant/Newton step is attempted each
/// iteration and kept only when it stays inside the current bracket. Returns
/// the abscissa once the bracket width or the residual is below tolerance.
pub fn bisect_newton<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    ftol: f64,
) -> f64 {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(
        flo * fhi < 0.0,
        "bisect_newton requires a sign change: f({lo}) = {flo}, f({hi}) = {fhi}"
    );
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        // Secant proposal from the bracket endpoints.
        let xs = hi - fhi * (hi - lo) / (fhi - flo);
        x = if xs.is_finite() && xs > lo && xs < hi {
            xs
        } else {
            0.5 * (lo + hi)
        };
        let fx = f(x);
        if fx == 0.0 || (hi - lo).abs() <= xtol || fx.abs() <= ftol {
            return x;
        }
        if flo * fx < 0.0 {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        // Fall back to a plain bisection step when the secant stalls.
        let xm = 0.5 * (lo + hi);
        let fm = f(xm);
        if fm == 0.0 {
            return xm;
        }
        if flo * fm < 0.0 {
            hi = xm;
            fhi = fm;
        } else {
            lo = xm;
            flo = fm;
        }
    }
    x
}

/// Scan `f` over a geometric grid and return all sign-change brackets.
pub fn geometric_brackets<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let ratio = (hi / lo).powf(1.0 / (points as f64 - 1.0));
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..points {
        let x = lo * ratio.powi(i as i32);
        let fx = f(x);
        if f_prev.is_finite() && fx.is_finite() && f_prev * fx < 0.0 {
            out.push((x_prev, x));
        }
        if fx == 0.0 {
            out.push((x, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

/// Neville polynomial extrapolation of `(h_i, y_i)` samples to `h = 0`.
///
/// Exact for data lying on a polynomial of degree `samples.len() - 1`, which
/// covers both odd and even correction series on a geometric ladder.
pub fn neville_to_zero(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len();
    assert!(n >= 1);
    let mut tableau: Vec<f64> = samples.iter().map(|&(_, y)| y).collect();
    for level in 1..n {
        for i in 0..n - level {
            let h_i = samples[i].0;
            let h_ik = samples[i + level].0;
            tableau[i] = (h_i * tableau[i + 1] - h_ik * tableau[i]) / (h_i - h_ik);
        }
    }
    tableau[0]
}

/// Composite Simpson quadrature of `f` over `[a, b]` with `2 * panels` intervals.
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels.max(1);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Least-squares fit of `y ~ c1 * phi1(x) + c2 * phi2(x)` via the 2x2 normal
/// equations. Returns `(c1, c2, rms_residual)`.
pub fn fit2<F1, F2>(points: &[(f64, f64)], phi1: F1, phi2: F2) -> (f64, f64, f64)
where
    F1: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let p1 = phi1(x);
        let p2 = phi2(x);
        a11 += p1 * p1;
        a12 += p1 * p2;
        a22 += p2 * p2;
        b1 += p1 * y;
        b2 += p2 * y;
    }
    let det = a11 * a22 - a12 * a12;
    let c1 = (b1 * a22 - b2 * a12) / det;
    let c2 = (a11 * b2 - a12 * b1) / det;
    let mut ss = 0.0;
    for &(x, y) in points {
        let r = y - c1 * phi1(x) - c2 * phi2(x);
        ss += r * r;
    }
    (c1, c2, (ss / points.len() as f64).sqrt())
}

/// Slope of the least-squares line through `(x_i, y_i)`.
pub fn linear_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
