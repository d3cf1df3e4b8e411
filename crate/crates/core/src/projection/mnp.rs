// SPDX-License-Identifier: Apache-2.0

//! Conic min-norm-point.
//!
//! Keeps an active set of base-polytope vertices and the minimizer of `h`
//! over their conic hull. Each MAJOR loop adds the greedy vertex minimizing
//! `<grad_y h, q>`; MINOR loops step back toward the current iterate when the
//! affine minimizer over the enlarged set leaves the cone, dropping the
//! vertices whose coefficient hits zero.

use nalgebra::{DMatrix, DVector};

use super::{h_value, ProjectionOptions, ProjectionResult, ProjectionStatus};
use crate::submodular::SubmodularAtom;
use crate::vector::{wdot, wnorm_sq};

/// Coefficients at or below this are treated as zero when pruning.
const PRUNE_EPS: f64 = 1e-14;
/// Relative distance below which an augmented vertex counts as lying in the
/// span of the active set.
const DEPENDENCE_EPS: f64 = 1e-12;

/// Vertices `q_i` with coefficients `lambda_i >= 0`; the iterate is
/// `y = sum lambda_i q_i`, `phi = sum lambda_i`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ActiveSet {
    pub points: Vec<Vec<f64>>,
    pub coefficients: Vec<f64>,
}

impl ActiveSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn y(&self, dim: usize) -> Vec<f64> {
        let mut y = vec![0.0; dim];
        for (q, &l) in self.points.iter().zip(&self.coefficients) {
            for (yi, qi) in y.iter_mut().zip(q) {
                *yi += l * qi;
            }
        }
        y
    }

    pub fn phi(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    fn prune(&mut self) {
        let mut i = 0;
        while i < self.points.len() {
            if self.coefficients[i] <= PRUNE_EPS {
                self.points.remove(i);
                self.coefficients.remove(i);
            } else {
                i += 1;
            }
        }
    }
}

enum Affine {
    Solved(Vec<f64>),
    /// Column index (in active-set order) that lies in the span of the
    /// columns before it.
    Dependent(usize),
}

/// Least-squares solve of `[W~^1/2 Q; 1^T] alpha = [W~^1/2 a; 0]` by
/// Householder QR. `|R_jj|` is the distance of column `j` from the span of
/// the preceding columns, which doubles as the dependence test.
fn solve_affine(points: &[Vec<f64>], a: &[f64], w_tilde: &[f64]) -> Affine {
    let k = a.len();
    let m = points.len();
    if m == 0 {
        return Affine::Solved(Vec::new());
    }
    let sqrt_w: Vec<f64> = w_tilde.iter().map(|w| w.sqrt()).collect();
    let mat = DMatrix::from_fn(k + 1, m, |i, j| {
        if i < k {
            sqrt_w[i] * points[j][i]
        } else {
            1.0
        }
    });
    let col_norms: Vec<f64> = (0..m).map(|j| mat.column(j).norm()).collect();
    let mut rhs = DVector::from_fn(k + 1, |i, _| if i < k { sqrt_w[i] * a[i] } else { 0.0 });
    let qr = mat.qr();
    let r = qr.r();
    for j in 0..m {
        if r[(j, j)].abs() <= DEPENDENCE_EPS * col_norms[j].max(1.0) {
            return Affine::Dependent(j);
        }
    }
    qr.q_tr_mul(&mut rhs);
    let top = rhs.rows(0, m).into_owned();
    match r.solve_upper_triangular(&top) {
        Some(alpha) => Affine::Solved(alpha.iter().copied().collect()),
        None => Affine::Dependent(m - 1),
    }
}

/// Unconstrained minimizer of `||sum alpha_i q_i - a||_W~^2 + (sum alpha_i)^2`
/// over the points of `set`.
///
/// Points found linearly dependent on earlier ones (within `1e-12`) are
/// removed from `set`, newest first, and the system is re-solved; the
/// returned coefficients line up with the points left in `set`.
pub fn active_set_qp(set: &mut ActiveSet, a: &[f64], w_tilde: &[f64]) -> Vec<f64> {
    loop {
        match solve_affine(&set.points, a, w_tilde) {
            Affine::Solved(alpha) => return alpha,
            Affine::Dependent(j) => {
                set.points.remove(j);
                set.coefficients.remove(j);
            }
        }
    }
}

/// Projects `a` onto the cone of `atom`'s base polytope by conic MNP.
pub fn conic_mnp(
    atom: &SubmodularAtom,
    a: &[f64],
    w_tilde: &[f64],
    opts: &ProjectionOptions,
) -> ProjectionResult {
    let k = atom.len();
    let cap = opts.max_iterations.unwrap_or(100 * k);
    let mut history = Vec::new();

    let mut set = ActiveSet::default();
    let mut dir: Vec<f64> = a.iter().zip(w_tilde).map(|(ai, wi)| ai * wi).collect();
    let q1 = atom.greedy_lmo(&dir);
    let ip = wdot(a, &q1, w_tilde);
    if ip > 0.0 {
        set.points.push(q1.clone());
        set.coefficients.push(ip / (1.0 + wnorm_sq(&q1, w_tilde)));
    }
    let mut y = set.y(k);
    let mut phi = set.phi();
    let mut h = h_value(&y, phi, a, w_tilde);
    if opts.record_history {
        history.push(h);
    }

    let mut major = 0usize;
    let mut minor = 0usize;
    let status = loop {
        // greedy minimizer of <W~(y - a), q>
        for i in 0..k {
            dir[i] = w_tilde[i] * (a[i] - y[i]);
        }
        let q = atom.greedy_lmo(&dir);
        let slope: f64 = (0..k).map(|i| w_tilde[i] * (y[i] - a[i]) * q[i]).sum::<f64>() + phi;
        if slope >= -opts.delta {
            break ProjectionStatus::Converged;
        }
        if major >= cap {
            break ProjectionStatus::MaxIterations;
        }
        major += 1;

        set.points.push(q);
        set.coefficients.push(0.0);
        let newest = set.len() - 1;
        let mut first = match solve_affine(&set.points, a, w_tilde) {
            Affine::Solved(alpha) => Some(alpha),
            Affine::Dependent(j) if j == newest => {
                // the new vertex adds nothing in floating point
                set.points.pop();
                set.coefficients.pop();
                break ProjectionStatus::Converged;
            }
            Affine::Dependent(_) => None,
        };

        let mut stalled = false;
        loop {
            let alpha = match first.take() {
                Some(alpha) => alpha,
                None => active_set_qp(&mut set, a, w_tilde),
            };
            if alpha.iter().all(|&v| v >= 0.0) {
                set.coefficients = alpha;
                break;
            }
            minor += 1;
            let mut theta = f64::INFINITY;
            let mut hit = 0;
            for (i, (&l, &al)) in set.coefficients.iter().zip(&alpha).enumerate() {
                if al < 0.0 {
                    let t = l / (l - al);
                    if t < theta {
                        theta = t;
                        hit = i;
                    }
                }
            }
            if theta <= 0.0 && hit == set.len() - 1 {
                stalled = true;
            }
            for (l, al) in set.coefficients.iter_mut().zip(&alpha) {
                *l = theta * al + (1.0 - theta) * *l;
            }
            set.coefficients[hit] = 0.0;
            set.prune();
            if stalled || set.is_empty() {
                break;
            }
        }
        set.prune();

        let y_new = set.y(k);
        let phi_new = set.phi();
        let h_new = h_value(&y_new, phi_new, a, w_tilde);
        debug_assert!(
            h_new <= h + 1e-9 * h.abs().max(1.0),
            "conic MNP objective increased: {h} -> {h_new}"
        );
        y = y_new;
        phi = phi_new;
        h = h_new;
        if opts.record_history {
            history.push(h);
        }
        if stalled {
            break ProjectionStatus::Converged;
        }
    };

    ProjectionResult::finish(a, w_tilde, y, phi, status, major, minor, history)
}
