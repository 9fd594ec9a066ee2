//! Newton solvers for trace equations: univariate continuation along the
//! real-trace branch of a Farey word (cusp → cone manifolds → knot group),
//! and multivariate polishing of parabolic-locus systems.
//!
//! Derivatives are always central finite differences — trace polynomials
//! are cheap to evaluate and one code path serves every word and family.

use num_complex::Complex64;

use crate::error::Error;
use crate::families::{compression_body, grandma, riley, CompressionBodyParams, GrandmaParams};
use crate::farey::{farey_word, Slope};
use crate::mobius::Mobius;
use crate::words::Word;

/// Samples taken around the circle |z| = R when hunting for the start of
/// the real-trace branch.
const CIRCLE_SCAN_SAMPLES: usize = 4096;

/// Solve f(z) = target by Newton's method from the given guess, with a
/// central-difference derivative (step 1e−7·max(1, |z|)) and at most 100
/// iterations.
///
/// Converged means |f(z) − target| ≤ 1e−12·max(1, |target|); the relative
/// scaling matters on trace branches far from the origin, where |target|
/// can reach 10⁶ and cancellation noise in f alone exceeds any absolute
/// 1e−12.
pub fn newton_solve_trace(
    f: impl Fn(Complex64) -> Complex64,
    target: Complex64,
    guess: Complex64,
) -> Result<Complex64, Error> {
    let tol = 1e-12 * target.norm().max(1.0);
    let mut z = guess;
    let mut residual = (f(z) - target).norm();
    for iters in 0..100 {
        if residual <= tol {
            return Ok(z);
        }
        let h = 1e-7 * z.norm().max(1.0);
        let df = (f(z + h) - f(z - h)) / (2.0 * h);
        if df.norm() < 1e-14 {
            return Err(Error::NewtonDiverged { iters, residual });
        }
        z -= (f(z) - target) / df;
        residual = (f(z) - target).norm();
    }
    if residual <= tol {
        Ok(z)
    } else {
        Err(Error::NewtonDiverged {
            iters: 100,
            residual,
        })
    }
}

/// Which leg of the continuation a step belongs to: trace descending the
/// hyperbolic scale −2e^t, or sweeping the elliptic range −2cos(θ/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStage {
    Hyperbolic,
    Elliptic,
}

impl std::fmt::Display for PathStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PathStage::Hyperbolic => "hyperbolic",
            PathStage::Elliptic => "elliptic",
        })
    }
}

/// One accepted continuation step.
#[derive(Debug, Clone, Copy)]
pub struct PathStep {
    pub stage: PathStage,
    /// log-scale coordinate t while hyperbolic, cone angle θ while elliptic
    pub parameter: f64,
    /// the real trace the step solved for
    pub target: f64,
    pub z: Complex64,
    /// |tr W(z) − target| / max(1, |target|)
    pub residual: f64,
}

/// The continued path of a Farey word's real-trace equation.
#[derive(Debug, Clone)]
pub struct PathTrace {
    pub slope: Slope,
    pub steps: Vec<PathStep>,
}

/// Trace the conjectural cone-manifold path of the slope: find the point
/// of real trace on the circle |z| = radius closest to R·e^{iπp/q}, then
/// Newton-continue the trace down the hyperbolic schedule −2e^t (t falling
/// from log(|x₀|/2) to 0 in n_hyp steps) and on through the elliptic
/// schedule −2cos(θ/2) (θ climbing 0 → 2π in n_ell steps), from the cusp
/// at trace −2 to the knot group at trace +2.
pub fn cone_path(s: Slope, radius: f64, n_hyp: usize, n_ell: usize) -> Result<PathTrace, Error> {
    if n_hyp == 0 || n_ell == 0 {
        return Err(Error::Invalid(
            "each continuation stage needs at least one step".into(),
        ));
    }
    if !(radius > 0.0) {
        return Err(Error::Invalid("scan radius must be positive".into()));
    }
    let word = farey_word(s);
    let f = |z: Complex64| {
        word.evaluate(&riley(z))
            .expect("parabolic generators are invertible")
            .trace()
    };
    let at_angle = |theta: f64| Complex64::from_polar(radius, theta);

    // stage 0: scan the circle for sign changes of Im tr and bisect each
    // to an angle window of 1e−12; the circle must stay outside |tr| ≤ 2
    // or it is not wholly in the region where the branch is defined
    let samples: Vec<Complex64> = (0..CIRCLE_SCAN_SAMPLES)
        .map(|i| f(at_angle(std::f64::consts::TAU * i as f64 / CIRCLE_SCAN_SAMPLES as f64)))
        .collect();
    if samples.iter().any(|v| v.norm() <= 2.0) {
        return Err(Error::NoCircleCrossing(radius));
    }
    let mut crossings: Vec<Complex64> = Vec::new();
    for i in 0..CIRCLE_SCAN_SAMPLES {
        let (vi, vj) = (samples[i], samples[(i + 1) % CIRCLE_SCAN_SAMPLES]);
        if vi.im == 0.0 {
            crossings.push(at_angle(std::f64::consts::TAU * i as f64 / CIRCLE_SCAN_SAMPLES as f64));
            continue;
        }
        if vi.im.signum() * vj.im.signum() < 0.0 {
            let mut lo = std::f64::consts::TAU * i as f64 / CIRCLE_SCAN_SAMPLES as f64;
            let mut hi = std::f64::consts::TAU * (i + 1) as f64 / CIRCLE_SCAN_SAMPLES as f64;
            let mut im_lo = vi.im;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let im_mid = f(at_angle(mid)).im;
                if im_mid == 0.0 || im_mid.signum() == im_lo.signum() {
                    lo = mid;
                    im_lo = im_mid;
                } else {
                    hi = mid;
                }
            }
            crossings.push(at_angle(0.5 * (lo + hi)));
        }
    }
    let anchor = Complex64::from_polar(
        radius,
        std::f64::consts::PI * s.p() as f64 / s.q() as f64,
    );
    let z0 = crossings
        .into_iter()
        .min_by(|a, b| (a - anchor).norm().total_cmp(&(b - anchor).norm()))
        .ok_or(Error::NoCircleCrossing(radius))?;

    let x0 = f(z0).re;
    let t0 = (x0.abs() / 2.0).ln();
    let rel = |z: Complex64, target: f64| (f(z) - target).norm() / target.abs().max(1.0);
    let mut steps = vec![PathStep {
        stage: PathStage::Hyperbolic,
        parameter: t0,
        target: x0,
        z: z0,
        residual: rel(z0, x0),
    }];

    let mut z = z0;
    for k in 1..=n_hyp {
        let t = t0 * (1.0 - k as f64 / n_hyp as f64);
        let target = -2.0 * t.exp();
        z = continue_step(&f, target, z, PathStage::Hyperbolic, k, n_hyp)?;
        steps.push(PathStep {
            stage: PathStage::Hyperbolic,
            parameter: t,
            target,
            z,
            residual: rel(z, target),
        });
    }
    for j in 1..=n_ell {
        let theta = std::f64::consts::TAU * j as f64 / n_ell as f64;
        let target = -2.0 * (theta / 2.0).cos();
        z = continue_step(&f, target, z, PathStage::Elliptic, j, n_ell)?;
        steps.push(PathStep {
            stage: PathStage::Elliptic,
            parameter: theta,
            target,
            z,
            residual: rel(z, target),
        });
    }
    Ok(PathTrace { slope: s, steps })
}

fn continue_step(
    f: impl Fn(Complex64) -> Complex64,
    target: f64,
    from: Complex64,
    stage: PathStage,
    k: usize,
    n: usize,
) -> Result<Complex64, Error> {
    newton_solve_trace(f, Complex64::new(target, 0.0), from).map_err(|e| {
        Error::Invalid(format!(
            "path stalled at {} step {k} of {n} (last good z = {from}): {e}",
            stage
        ))
    })
}

/// The two three-parameter matrix families a trace system can polish over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamFamily {
    /// G(α, β, λ) with generators P, Q, M
    CompressionBody,
    /// the grandma recipe from (tr X, tr Y, tr XY)
    Grandma,
}

impl ParamFamily {
    pub fn generators(&self, p: [Complex64; 3]) -> Vec<Mobius> {
        match self {
            ParamFamily::CompressionBody => compression_body(&CompressionBodyParams {
                alpha: p[0],
                beta: p[1],
                lambda: p[2],
            })
            .to_vec(),
            ParamFamily::Grandma => grandma(&GrandmaParams::new(p[0], p[1], p[2])).to_vec(),
        }
    }
}

/// Polish a parabolic-locus system: Newton on
/// F(params) = (tr²(wᵢ) − targetᵢ) with a finite-difference Jacobian,
/// until ‖F‖∞ < 1e−10.  Three words, three targets, three parameters.
pub fn polish_system(
    family: ParamFamily,
    words: &[Word],
    targets: &[Complex64],
    guess: [Complex64; 3],
) -> Result<[Complex64; 3], Error> {
    if words.len() != 3 || targets.len() != 3 {
        return Err(Error::Invalid(
            "the trace system needs exactly three words and three targets".into(),
        ));
    }
    let eval = |p: [Complex64; 3]| -> Result<[Complex64; 3], Error> {
        let gens = family.generators(p);
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, w) in words.iter().enumerate() {
            let tr = w.evaluate(&gens)?.trace();
            out[i] = tr * tr - targets[i];
        }
        Ok(out)
    };
    let worst = |v: &[Complex64; 3]| v.iter().map(|c| c.norm()).fold(0.0, f64::max);

    let mut p = guess;
    let mut fv = eval(p)?;
    let mut history = vec![worst(&fv)];
    for _ in 0..100 {
        if worst(&fv) < 1e-10 {
            return Ok(p);
        }
        let mut jac = [[Complex64::new(0.0, 0.0); 3]; 3];
        for j in 0..3 {
            let h = 1e-7 * p[j].norm().max(1.0);
            let mut fwd = p;
            fwd[j] += h;
            let mut bwd = p;
            bwd[j] -= h;
            let (fp, fm) = (eval(fwd)?, eval(bwd)?);
            for i in 0..3 {
                jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let delta = solve3(jac, fv).ok_or_else(|| {
            Error::Invalid(format!(
                "singular Jacobian while polishing the trace system; residuals so far: {}",
                render_history(&history)
            ))
        })?;
        for j in 0..3 {
            p[j] -= delta[j];
        }
        fv = eval(p)?;
        history.push(worst(&fv));
    }
    Err(Error::Invalid(format!(
        "trace system did not converge; residuals: {}",
        render_history(&history)
    )))
}

fn render_history(history: &[f64]) -> String {
    history
        .iter()
        .map(|r| format!("{:.3e}", r))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Solve a 3×3 complex linear system by Gaussian elimination with partial
/// pivoting; None when a pivot falls below 1e−14.
fn solve3(mut a: [[Complex64; 3]; 3], mut b: [Complex64; 3]) -> Option<[Complex64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() < 1e-14 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let m = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut sum = b[row];
        for k in row + 1..3 {
            sum -= a[row][k] * x[k];
        }
        x[row] = sum / a[row][row];
    }
    Some(x)
}
