//! Adaptive Simpson quadrature for smooth one-dimensional integrands.

use crate::Real;

fn from_f64<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("scalar conversion")
}

struct Panel<R> {
    a: R,
    b: R,
    fa: R,
    fm: R,
    fb: R,
    whole: R,
    eps: R,
    depth: u32,
}

fn simpson<R: Real>(a: R, b: R, fa: R, fm: R, fb: R) -> R {
    let six = from_f64::<R>(6.0);
    (b - a) / six * (fa + from_f64::<R>(4.0) * fm + fb)
}

/// Integrates `f` over `[a, b]` to roughly `rel_tol` relative accuracy.
///
/// The tolerance is interpreted against the magnitude of the running whole
/// estimate, so integrands with a tiny absolute scale (e.g. Bessel tails)
/// still come out to full relative accuracy.
pub fn adaptive_simpson<R: Real>(f: impl Fn(R) -> R, a: R, b: R, rel_tol: R) -> R {
    let half = from_f64::<R>(0.5);
    let fifteen = from_f64::<R>(15.0);
    let m = (a + b) * half;
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    let scale = whole.abs().max(R::min_positive_value());
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        eps: rel_tol * scale,
        depth: 0,
    }];
    let mut total = R::zero();
    while let Some(p) = stack.pop() {
        let m = (p.a + p.b) * half;
        let lm = (p.a + m) * half;
        let rm = (m + p.b) * half;
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if p.depth >= 52 || delta.abs() <= fifteen * p.eps {
            total = total + left + right + delta / fifteen;
        } else {
            let eps = (p.eps * half).max(R::min_positive_value());
            stack.push(Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
                eps,
                depth: p.depth + 1,
            });
            stack.push(Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
                eps,
                depth: p.depth + 1,
            });
        }
    }
    total
}

/// Convenience wrapper integrating over a list of breakpoints, summing panel
/// results. Useful when the integrand has widely different scales.
pub fn adaptive_simpson_panels<R: Real>(
    f: impl Fn(R) -> R + Copy,
    breaks: &[R],
    rel_tol: R,
) -> R {
    let mut total = R::zero();
    for w in breaks.windows(2) {
        total = total + adaptive_simpson(f, w[0], w[1], rel_tol);
    }
    total
}
