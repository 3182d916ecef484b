// Floating-point quadrature of the exponential integral, kept apart from the
// exact code. Only used as a numeric cross-check in dimension <= 2.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalVector};
use crate::geometry::{facets, Polytope};

fn support_f64(verts: &[Vec<f64>], v: &[f64], z: &[f64]) -> f64 {
    verts
        .iter()
        .map(|y| {
            -y.iter()
                .zip(v)
                .zip(z)
                .map(|((yi, vi), zi)| vi * (yi - zi))
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Numeric value of `∫ exp(-h_P(v) - <v, z>) dv` for `z` inside `P`, `d <= 2`.
pub fn integral_estimate(p: &Polytope, z: &[Rational]) -> Result<f64> {
    let d = p.dim();
    if d > 2 {
        return Err(Error::DimensionTooLarge(d));
    }
    if z.len() != d {
        return Err(Error::Dimension(
            "evaluation point has the wrong length".into(),
        ));
    }
    let fs = facets(p)?;
    let inside = fs.iter().all(|f| {
        let s: Rational = f.normal.iter().zip(z).map(|(a, b)| a * b).sum::<Rational>() + &f.offset;
        s > Rational::from_integer(0.into())
    });
    if !inside {
        return Err(Error::InvalidInput(
            "z must lie in the interior of P".into(),
        ));
    }
    let to_f = |v: &RationalVector| {
        v.iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect::<Vec<f64>>()
    };
    let verts: Vec<Vec<f64>> = p.vertices().iter().map(to_f).collect();
    let zf: Vec<f64> = z.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let tol = 1e-12;
    if d == 1 {
        // ∫_0^∞ e^{-h t} dt on both half-lines, with t = u / (1 - u).
        let mut total = 0.0;
        for dir in [1.0, -1.0] {
            let h = support_f64(&verts, &[dir], &zf);
            let f = |u: f64| {
                if u >= 1.0 {
                    0.0
                } else {
                    let t = u / (1.0 - u);
                    (-h * t).exp() / ((1.0 - u) * (1.0 - u))
                }
            };
            total += simpson(&f, 0.0, 1.0, tol);
        }
        return Ok(total);
    }
    // Polar coordinates: ∫ h(θ)^{-2} dθ, split at the kinks of h.
    let mut breaks: Vec<f64> = fs
        .iter()
        .map(|f| {
            let v = to_f(&f.normal);
            let a = v[1].atan2(v[0]);
            if a < 0.0 {
                a + std::f64::consts::TAU
            } else {
                a
            }
        })
        .collect();
    breaks.push(0.0);
    breaks.push(std::f64::consts::TAU);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let f = |t: f64| {
        let h = support_f64(&verts, &[t.cos(), t.sin()], &zf);
        1.0 / (h * h)
    };
    Ok(breaks
        .windows(2)
        .map(|w| simpson(&f, w[0], w[1], tol))
        .sum())
}

/// Compares the quadrature with the exact dual volume function at `z`.
pub fn integral_check(p: &Polytope, z: &[Rational], tolerance: f64) -> Result<bool> {
    let numeric = integral_estimate(p, z)?;
    let exact = super::dual_volume_function(p)?.function.eval(z)?;
    let exact = exact.to_f64().unwrap_or(f64::NAN);
    Ok((numeric - exact).abs() <= tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rvec};

    #[test]
    fn segment_at_two() {
        let seg = Polytope::from_i64(&[&[1], &[3]]).unwrap();
        let v = integral_estimate(&seg, &rvec(&[2])).unwrap();
        assert!((v - 2.0).abs() < 1e-9, "{v}");
        assert!(integral_check(&seg, &rvec(&[2]), 1e-6).unwrap());
    }

    #[test]
    fn centred_square() {
        let sq = Polytope::from_i64(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]).unwrap();
        assert!(integral_check(&sq, &[rat(0), rat(0)], 1e-6).unwrap());
        let off = [rat(1), rat(0)];
        assert!(integral_estimate(&sq, &off).is_err());
    }
}
