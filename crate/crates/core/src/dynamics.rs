//! Double-precision numerics for polynomial vector fields: evaluation,
//! adaptive integration, Newton refinement of fixed points, steady-curve
//! sampling, and phase-portrait grids.
//!
//! Exactness lives upstream; this module fixes its tolerances once:
//! root polish `1e-12`, steady-state residual `1e-9`, fixed points `1e-10`,
//! boundary guard `1e-12`, blowup guard `1e12`.

use crate::algebra::{PolyVector, Polynomial};
use crate::error::{CrnError, Result};

/// Root polishing target for steady-curve samples.
pub const ROOT_POLISH_TOL: f64 = 1e-12;
/// Residual bound certifying a sampled point as a steady state.
pub const STEADY_RESIDUAL_TOL: f64 = 1e-9;
/// Default Newton fixed-point tolerance.
pub const FIXED_POINT_TOL: f64 = 1e-10;
/// Trajectories stop when a coordinate falls to this boundary guard.
pub const BOUNDARY_GUARD: f64 = 1e-12;
/// Trajectories stop when a coordinate exceeds this blowup guard.
pub const BLOWUP_GUARD: f64 = 1e12;

/// Evaluates the field at a point in double precision.
pub fn eval_field(f: &PolyVector, x: &[f64]) -> Vec<f64> {
    f.eval_f64(x)
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &c| m.max(c.abs()))
}

// ---------------------------------------------------------------------------
// Adaptive integration
// ---------------------------------------------------------------------------

/// Why an integration run ended.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Termination {
    /// Reached `t_end`.
    Completed,
    /// A coordinate fell to the boundary guard.
    BoundaryReached,
    /// A coordinate exceeded the blowup guard.
    Blowup,
}

/// An integrated orbit: strictly increasing times, the state at each time, and
/// the accepted step sizes.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub step_sizes: Vec<f64>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least the initial state")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Dormand-Prince 5(4) embedded pair.
const DP_C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `dx/dt = f(x)` from `x0` to `t_end` with an adaptive embedded
/// Runge-Kutta 5(4) pair, keeping the per-step error estimate at or below
/// `tol`. Stops early (flagged, not an error) at the boundary or blowup
/// guards; a vanishing step size is an error.
pub fn integrate(f: &PolyVector, x0: &[f64], t_end: f64, tol: f64) -> Result<Trajectory> {
    assert!(tol > 0.0, "tolerance must be positive");
    assert_eq!(x0.len(), f.dim(), "initial state dimension mismatch");

    let n = x0.len();
    let mut t = 0.0_f64;
    let mut x = x0.to_vec();
    let mut times = vec![t];
    let mut states = vec![x.clone()];
    let mut step_sizes: Vec<f64> = Vec::new();
    let mut h = (t_end / 100.0).min(1e-2).max(1e-6);
    let mut termination = Termination::Completed;

    'outer: while t < t_end {
        if h > t_end - t {
            h = t_end - t;
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(CrnError::StepSizeUnderflow { t });
        }
        // Seven stages (the seventh is the next step's first).
        let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
        k.push(f.eval_f64(&x));
        for s in 1..7 {
            let mut xs = x.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = if s < 7 { DP_A[s - 1][j] } else { 0.0 };
                if a != 0.0 {
                    for i in 0..n {
                        xs[i] += h * a * kj[i];
                    }
                }
            }
            let _ = DP_C;
            k.push(f.eval_f64(&xs));
        }
        let mut x5 = x.clone();
        let mut err = 0.0_f64;
        for i in 0..n {
            let mut hi5 = 0.0;
            let mut hi4 = 0.0;
            for s in 0..7 {
                hi5 += DP_B5[s] * k[s][i];
                hi4 += DP_B4[s] * k[s][i];
            }
            x5[i] += h * hi5;
            err = err.max((h * (hi5 - hi4)).abs());
        }
        if !err.is_finite() {
            h *= 0.25;
            continue 'outer;
        }
        if err <= tol {
            t += h;
            x = x5;
            times.push(t);
            states.push(x.clone());
            step_sizes.push(h);
            if x.iter().any(|&c| c.abs() >= BLOWUP_GUARD) {
                termination = Termination::Blowup;
                break 'outer;
            }
            if x.iter().any(|&c| c <= BOUNDARY_GUARD) {
                termination = Termination::BoundaryReached;
                break 'outer;
            }
        }
        let scale = if err == 0.0 { 5.0 } else { 0.9 * (tol / err).powf(0.2) };
        h *= scale.clamp(0.2, 5.0);
    }

    Ok(Trajectory { times, states, step_sizes, termination })
}

// ---------------------------------------------------------------------------
// Newton refinement
// ---------------------------------------------------------------------------

/// A refined fixed point.
#[derive(Clone, Debug)]
pub struct NewtonResult {
    pub point: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Evaluates the exact polynomial Jacobian at a point.
pub fn jacobian_at(f: &PolyVector, x: &[f64]) -> Vec<Vec<f64>> {
    f.jacobian()
        .iter()
        .map(|row| row.iter().map(|p| p.eval_f64(x)).collect())
        .collect()
}

/// Central-difference Jacobian, kept as an independent check on the exact one.
pub fn fd_jacobian(f: &PolyVector, x: &[f64]) -> Vec<Vec<f64>> {
    let n = f.dim();
    let mut out = vec![vec![0.0; n]; n];
    for j in 0..n {
        let h = 6e-6 * x[j].abs().max(1.0);
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += h;
        xm[j] -= h;
        let fp = f.eval_f64(&xp);
        let fm = f.eval_f64(&xm);
        for i in 0..n {
            out[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    out
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty");
        if a[pivot][col] == 0.0 || !a[pivot][col].is_finite() {
            return Err(CrnError::SingularJacobian);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}

const NEWTON_MAX_ITER: usize = 100;

/// Damped Newton iteration on `f(x) = 0` using the exact polynomial Jacobian.
/// Returns immediately when the start already satisfies the tolerance.
pub fn newton_fixed_point(f: &PolyVector, x0: &[f64], tol: f64) -> Result<NewtonResult> {
    assert_eq!(x0.len(), f.dim(), "seed dimension mismatch");
    let mut x = x0.to_vec();
    let mut residual = inf_norm(&f.eval_f64(&x));
    if residual <= tol {
        return Ok(NewtonResult { point: x, iterations: 0, residual });
    }
    for iter in 1..=NEWTON_MAX_ITER {
        let j = jacobian_at(f, &x);
        let rhs: Vec<f64> = f.eval_f64(&x).iter().map(|&v| -v).collect();
        let step = solve_linear(j, rhs)?;
        let mut alpha = 1.0;
        let mut improved = false;
        while alpha >= 1e-8 {
            let candidate: Vec<f64> =
                x.iter().zip(&step).map(|(&xi, &si)| xi + alpha * si).collect();
            let r = inf_norm(&f.eval_f64(&candidate));
            if r < residual {
                x = candidate;
                residual = r;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !improved {
            return Err(CrnError::NoConvergence { max_iter: NEWTON_MAX_ITER });
        }
        if residual <= tol {
            return Ok(NewtonResult { point: x, iterations: iter, residual });
        }
    }
    Err(CrnError::NoConvergence { max_iter: NEWTON_MAX_ITER })
}

// ---------------------------------------------------------------------------
// Steady-curve sampling
// ---------------------------------------------------------------------------

/// Positive zeros of a scalar polynomial sampled along scan lines, polished to
/// `|h| <= 1e-12`.
#[derive(Clone, Debug)]
pub struct SteadyCurveSample {
    pub points: Vec<Vec<f64>>,
    /// `|h(point)|` after polishing, one per point.
    pub scalar_abs: Vec<f64>,
}

impl SteadyCurveSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Infinity-norm residual of a field at every sampled point.
    pub fn residuals_against(&self, f: &PolyVector) -> Vec<f64> {
        self.points.iter().map(|p| inf_norm(&f.eval_f64(p))).collect()
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![(lo + hi) / 2.0];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|j| lo + j as f64 * step).collect()
}

/// Samples the vanishing set of `h` inside a positive box.
///
/// `lines` scan lines run along the last coordinate: in two dimensions one
/// line per grid value of the first coordinate, in three dimensions a
/// `ceil(sqrt(lines))` square grid over the first two. Roots are bracketed on
/// a fine subdivision, bisected, and Newton-polished; points that leave the
/// positive orthant are discarded. Finding no root is an empty sample, not an
/// error.
pub fn sample_steady_curve(
    h: &Polynomial,
    bounds: &[(f64, f64)],
    lines: usize,
) -> Result<SteadyCurveSample> {
    let n = h.dim();
    if bounds.len() != n {
        return Err(CrnError::DimensionMismatch { left: n, right: bounds.len() });
    }
    if n == 0 || n > 3 {
        return Err(CrnError::UnsupportedDimension { dim: n, max: 3 });
    }
    for &(lo, hi) in bounds {
        if !(lo > 0.0 && hi > lo) {
            return Err(CrnError::InvalidTransform(
                "sampling box must be inside the positive orthant".into(),
            ));
        }
    }
    assert!(lines >= 1, "at least one scan line");

    let prefixes: Vec<Vec<f64>> = match n {
        1 => vec![Vec::new()],
        2 => linspace(bounds[0].0, bounds[0].1, lines).into_iter().map(|x| vec![x]).collect(),
        3 => {
            let side = (lines as f64).sqrt().ceil() as usize;
            let xs = linspace(bounds[0].0, bounds[0].1, side);
            let ys = linspace(bounds[1].0, bounds[1].1, side);
            xs.iter()
                .flat_map(|&x| ys.iter().map(move |&y| vec![x, y]))
                .collect()
        }
        _ => unreachable!(),
    };

    let (lo, hi) = bounds[n - 1];
    let dh = h.partial_derivative(n - 1);
    let mut points = Vec::new();
    let mut scalar_abs = Vec::new();
    const BRACKETS: usize = 512;

    for prefix in prefixes {
        let eval = |t: f64| -> f64 {
            let mut p = prefix.clone();
            p.push(t);
            h.eval_f64(&p)
        };
        let grid = linspace(lo, hi, BRACKETS + 1);
        for w in grid.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (eval(a), eval(b));
            let root = if fa == 0.0 {
                Some(a)
            } else if fa * fb < 0.0 {
                Some(bisect_then_polish(&eval, |t| {
                    let mut p = prefix.clone();
                    p.push(t);
                    dh.eval_f64(&p)
                }, a, b))
            } else {
                None
            };
            if let Some(t) = root {
                if eval(t).abs() > ROOT_POLISH_TOL {
                    continue;
                }
                let mut p = prefix.clone();
                p.push(t);
                if p.iter().any(|&c| c <= 0.0) {
                    continue;
                }
                points.push(p.clone());
                scalar_abs.push(eval(t).abs());
            }
        }
    }
    Ok(SteadyCurveSample { points, scalar_abs })
}

fn bisect_then_polish(
    eval: &dyn Fn(f64) -> f64,
    deriv: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
) -> f64 {
    let mut fa = eval(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let mut t = 0.5 * (a + b);
    for _ in 0..40 {
        let ft = eval(t);
        if ft.abs() <= ROOT_POLISH_TOL * 1e-2 {
            break;
        }
        let dt = deriv(t);
        if dt == 0.0 || !dt.is_finite() {
            break;
        }
        let next = t - ft / dt;
        if !next.is_finite() || next < a - (b - a) || next > b + (b - a) {
            break;
        }
        t = next;
    }
    t
}

// ---------------------------------------------------------------------------
// Phase-portrait grids
// ---------------------------------------------------------------------------

/// Field directions on a regular grid: unit vectors, magnitudes, and the sign
/// of each raw component (the nullcline data).
#[derive(Clone, Debug)]
pub struct PortraitGrid {
    pub points: Vec<Vec<f64>>,
    pub unit_vectors: Vec<Vec<f64>>,
    pub magnitudes: Vec<f64>,
    pub component_signs: Vec<Vec<i8>>,
}

/// Evaluates the field on an inclusive `resolution`-per-axis grid over the
/// box. At resolution two the grid is exactly the box corners.
pub fn phase_portrait_grid(
    f: &PolyVector,
    bounds: &[(f64, f64)],
    resolution: usize,
) -> Result<PortraitGrid> {
    let n = f.dim();
    if bounds.len() != n {
        return Err(CrnError::DimensionMismatch { left: n, right: bounds.len() });
    }
    assert!(resolution >= 2, "grid resolution must be at least two");
    let axes: Vec<Vec<f64>> =
        bounds.iter().map(|&(lo, hi)| linspace(lo, hi, resolution)).collect();
    let mut points = Vec::new();
    let mut idx = vec![0usize; n];
    'grid: loop {
        points.push((0..n).map(|i| axes[i][idx[i]]).collect::<Vec<f64>>());
        let mut i = n;
        loop {
            if i == 0 {
                break 'grid;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < resolution {
                break;
            }
            idx[i] = 0;
        }
    }
    let mut unit_vectors = Vec::with_capacity(points.len());
    let mut magnitudes = Vec::with_capacity(points.len());
    let mut component_signs = Vec::with_capacity(points.len());
    for p in &points {
        let v = f.eval_f64(p);
        let mag = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        let unit: Vec<f64> = if mag > 0.0 { v.iter().map(|c| c / mag).collect() } else { vec![0.0; n] };
        component_signs.push(v.iter().map(|&c| if c > 0.0 { 1 } else if c < 0.0 { -1 } else { 0 }).collect());
        unit_vectors.push(unit);
        magnitudes.push(mag);
    }
    Ok(PortraitGrid { points, unit_vectors, magnitudes, component_signs })
}
