//! Numeric root approximation, the one floating-point corner of the crate.
//! Everything else stays exact; callers that need a spectrum as complex
//! numbers go through here.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

const MAX_ITERATIONS: usize = 1000;

/// All complex roots of `p` by simultaneous (Aberth–Ehrlich) iteration,
/// refined until max |p(z)|/‖p‖(|z|) < tol, where ‖p‖(x) = Σ|c_k|·xᵏ is
/// the evaluation-scale norm at the iterate (the usual stopping rule for
/// simultaneous iteration; a plain coefficient norm would make the
/// criterion unreachable for roots far outside the unit circle, where
/// float evaluation noise grows like |z|^deg). Multiple roots come back
/// as repeated approximations. Zero roots are split off exactly first.
pub fn poly_roots(p: &IntPoly, tol: f64) -> Result<Vec<Complex64>> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidParams(
                "root finding needs degree ≥ 1".into(),
            ))
        }
    };
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }

    // λ^k factors out exactly.
    let zero_count = p
        .coeffs()
        .iter()
        .take_while(|c| num_traits::Zero::is_zero(*c))
        .count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_count];
    let d = deg - zero_count;
    if d == 0 {
        return Ok(roots);
    }

    // Scale by the sup-norm so the residual test reads max |p(z)| < tol.
    let raw: Vec<f64> = p.coeffs()[zero_count..]
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let norm = raw.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if !norm.is_finite() {
        return Err(Error::InvalidParams(
            "coefficients exceed floating-point range".into(),
        ));
    }
    let coeffs: Vec<f64> = raw.iter().map(|c| c / norm).collect();

    if d == 1 {
        roots.push(Complex64::new(-coeffs[0] / coeffs[1], 0.0));
        sort_roots(&mut roots);
        return Ok(roots);
    }

    // Derivative coefficients of the scaled polynomial.
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    // Initial guesses on a circle inside the Cauchy bound, angles offset
    // so no guess starts on the real axis.
    let lead = coeffs[d];
    let radius = 1.0 + coeffs[..d].iter().fold(0.0f64, |m, c| m.max((c / lead).abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / d as f64 + 0.4;
            Complex64::from_polar(0.9 * radius, theta)
        })
        .collect();

    let eval = |cs: &[f64], x: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in cs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    // ‖p‖(x) = Σ |c_k| xᵏ for x = |z|
    let eval_scale = |x: f64| {
        let mut acc = 0.0f64;
        for &c in coeffs.iter().rev() {
            acc = acc * x + c.abs();
        }
        acc.max(f64::MIN_POSITIVE)
    };

    let mut best_residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..d {
            let pv = eval(&coeffs, z[i]);
            let dv = eval(&deriv, z[i]);
            if dv.norm() == 0.0 {
                // sitting on a critical point: nudge off it
                z[i] += Complex64::new(1e-6 * radius, 1e-6 * radius);
                moved = f64::INFINITY;
                continue;
            }
            let newton = pv / dv;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        continue;
                    }
                    repulsion += diff.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        let residual = z.iter().fold(0.0f64, |m, &zi| {
            m.max(eval(&coeffs, zi).norm() / eval_scale(zi.norm()))
        });
        best_residual = best_residual.min(residual);
        if residual < tol {
            roots.extend(z);
            sort_roots(&mut roots);
            return Ok(roots);
        }
        if moved == 0.0 {
            break;
        }
    }
    Err(Error::NoConvergence {
        best_residual,
    })
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}
