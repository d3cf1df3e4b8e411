// SPDX-License-Identifier: Apache-2.0

//! Slow brute-force reference computations for small inputs. Each routine
//! refuses inputs above its size bound.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::apps::Hypergraph;
use crate::error::{Error, Result};
use crate::projection::{check_kkt, h_value, ProjectionResult, ProjectionStatus};
use crate::submodular::{ProblemInstance, SubmodularAtom};

pub const MAX_ENUMERATION: usize = 8;
pub const MAX_PROJECTION: usize = 6;
pub const MAX_QDSFM_N: usize = 6;
pub const MAX_QDSFM_R: usize = 4;
pub const MAX_CONDUCTANCE_N: usize = 16;
pub const MAX_DENSE_PAGERANK_N: usize = 200;

fn refuse(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::TooLarge { what, got, limit })
    } else {
        Ok(())
    }
}

/// Distinct greedy vertices over all orderings of the members.
pub fn enumerate_base_vertices(atom: &SubmodularAtom) -> Result<Vec<Vec<f64>>> {
    let k = atom.len();
    refuse("atom size", k, MAX_ENUMERATION)?;
    let mut out: Vec<Vec<f64>> = Vec::new();
    for perm in (0..k).permutations(k) {
        // direction strictly decreasing along `perm`
        let mut dir = vec![0.0; k];
        for (rank, &i) in perm.iter().enumerate() {
            dir[i] = (k - rank) as f64;
        }
        let v = atom.greedy_lmo(&dir);
        let seen = out
            .iter()
            .any(|u| u.iter().zip(&v).all(|(a, b)| (a - b).abs() <= 1e-12));
        if !seen {
            out.push(v);
        }
    }
    Ok(out)
}

/// Projection onto the cone as a nonnegative least-squares problem over
/// the weights of all base polytope vertices, solved by the Lawson-Hanson
/// active-set method.
pub fn brute_projection(atom: &SubmodularAtom, a: &[f64], w_tilde: &[f64]) -> Result<ProjectionResult> {
    refuse("atom size", atom.len(), MAX_PROJECTION)?;
    let verts = enumerate_base_vertices(atom)?;
    let k = atom.len();
    let m = verts.len();
    // h(l) = ||A l - c||^2 with a trailing row of ones for phi
    let design = DMatrix::from_fn(k + 1, m, |r, j| if r < k { w_tilde[r].sqrt() * verts[j][r] } else { 1.0 });
    let target = DVector::from_fn(k + 1, |r, _| if r < k { w_tilde[r].sqrt() * a[r] } else { 0.0 });
    let (lam, iters) = nnls(&design, &target);

    let mut y = vec![0.0; k];
    for (l, v) in lam.iter().zip(&verts) {
        for (yj, vj) in y.iter_mut().zip(v) {
            *yj += l * vj;
        }
    }
    let phi = lam.sum();
    let kkt = check_kkt(atom, a, w_tilde, &y, phi);
    let status = if kkt <= 1e-8 {
        ProjectionStatus::Converged
    } else {
        ProjectionStatus::MaxIterations
    };
    Ok(ProjectionResult {
        h_value: h_value(&y, phi, a, w_tilde),
        y,
        phi,
        status,
        major_loops: iters,
        minor_loops: 0,
        history: Vec::new(),
    })
}

/// `argmin_{x >= 0} ||A x - c||`; returns the solution and the number of
/// outer iterations.
fn nnls(design: &DMatrix<f64>, target: &DVector<f64>) -> (DVector<f64>, usize) {
    let m = design.ncols();
    let tol = 1e-13 * design.norm().max(1.0) * target.norm().max(1.0);
    let mut x = DVector::zeros(m);
    let mut passive = vec![false; m];
    let solve_on = |passive: &[bool]| -> DVector<f64> {
        let cols: Vec<usize> = (0..m).filter(|&j| passive[j]).collect();
        let sub = design.select_columns(&cols);
        let sol = sub
            .svd(true, true)
            .solve(target, 1e-14)
            .unwrap_or_else(|_| DVector::zeros(cols.len()));
        let mut full = DVector::zeros(m);
        for (i, &j) in cols.iter().enumerate() {
            full[j] = sol[i];
        }
        full
    };
    let mut iters = 0;
    while iters < 10 * m {
        let grad = design.transpose() * (target - design * &x);
        let Some(enter) = (0..m)
            .filter(|&j| !passive[j] && grad[j] > tol)
            .max_by(|&i, &j| grad[i].total_cmp(&grad[j]))
        else {
            break;
        };
        iters += 1;
        passive[enter] = true;
        loop {
            let s = solve_on(&passive);
            let blocking: Vec<usize> = (0..m).filter(|&j| passive[j] && s[j] <= 0.0).collect();
            if blocking.is_empty() {
                x = s;
                break;
            }
            let step = blocking
                .iter()
                .map(|&j| x[j] / (x[j] - s[j]))
                .fold(f64::INFINITY, f64::min);
            x += (s - &x) * step;
            for j in 0..m {
                if passive[j] && x[j] <= 1e-15 {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
        }
    }
    (x, iters)
}

/// Exact QDSFM minimizer by enumerating ordered set partitions.
///
/// On the cone of vectors that are constant on blocks `B_1, ..., B_m` and
/// decrease from block to block, every Lovász extension is linear in the
/// block values, so the objective is a strictly convex quadratic there.
/// The global minimizer lies in the relative interior of one such cone and
/// is the unconstrained minimizer of that quadratic; taking the best
/// candidate over all cones recovers it.
pub fn brute_qdsfm(instance: &ProblemInstance) -> Result<Vec<f64>> {
    let n = instance.n();
    refuse("ground set size", n, MAX_QDSFM_N)?;
    refuse("number of atoms", instance.num_atoms(), MAX_QDSFM_R)?;
    let (a, w) = (instance.a(), instance.w());
    let mut best = a.to_vec();
    let mut best_val = instance.primal_objective(a);

    for m in 1..=n {
        for labels in (0..n).map(|_| 0..m).multi_cartesian_product() {
            let mut sizes = vec![0usize; m];
            for &l in &labels {
                sizes[l] += 1;
            }
            if sizes.contains(&0) {
                continue;
            }
            // block gains c_r[k] = F_r(U_k) - F_r(U_{k-1}), U_k = B_1 u ... u B_k
            let mut h = DMatrix::<f64>::zeros(m, m);
            let mut rhs = DVector::<f64>::zeros(m);
            for i in 0..n {
                h[(labels[i], labels[i])] += w[i];
                rhs[labels[i]] += w[i] * a[i];
            }
            for atom in instance.atoms() {
                let mut c = DVector::<f64>::zeros(m);
                let mut prev = 0.0;
                for k in 0..m {
                    let mask: Vec<bool> = atom.members().iter().map(|&v| labels[v] <= k).collect();
                    let val = atom.value_local(&mask);
                    c[k] = val - prev;
                    prev = val;
                }
                h += &c * c.transpose();
            }
            let Some(t) = h.cholesky().map(|ch| ch.solve(&rhs)) else {
                continue;
            };
            let x: Vec<f64> = labels.iter().map(|&l| t[l]).collect();
            let val = instance.primal_objective(&x);
            if val < best_val {
                best_val = val;
                best = x;
            }
        }
    }
    Ok(best)
}

/// Minimum conductance over all nonempty proper subsets.
pub fn brute_min_conductance(hg: &Hypergraph) -> Result<(Vec<usize>, f64)> {
    let n = hg.n();
    refuse("vertex count", n, MAX_CONDUCTANCE_N)?;
    if n < 2 {
        return Err(Error::Domain("conductance needs at least two vertices".to_string()));
    }
    let mut best = (Vec::new(), f64::INFINITY);
    for bits in 1u32..(1u32 << n) - 1 {
        let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        let phi = hg.conductance_mask(&mask);
        if phi < best.1 {
            best = ((0..n).filter(|&i| mask[i]).collect(), phi);
        }
    }
    Ok(best)
}

/// PageRank on an undirected graph by a dense solve of
/// `(beta D + L) x = beta p0`, `beta = alpha / (1 - alpha)`; returns `D x`.
pub fn dense_graph_pagerank(hg: &Hypergraph, alpha: f64, p0: &[f64]) -> Result<Vec<f64>> {
    let n = hg.n();
    refuse("vertex count", n, MAX_DENSE_PAGERANK_N)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if p0.len() != n {
        return Err(Error::Domain(format!("p0 has length {}, expected {n}", p0.len())));
    }
    if let Some(r) = hg.edges().iter().position(|e| e.members().len() != 2 || e.is_directed()) {
        return Err(Error::Domain(format!("edge {r} is not an undirected graph edge")));
    }
    let beta = alpha / (1.0 - alpha);
    let d = hg.degrees();
    let mut m = DMatrix::<f64>::from_diagonal(&DVector::from_iterator(n, d.iter().map(|d| beta * d)));
    for e in hg.edges() {
        let (i, j) = (e.members()[0], e.members()[1]);
        let w = e.weight();
        m[(i, i)] += w;
        m[(j, j)] += w;
        m[(i, j)] -= w;
        m[(j, i)] -= w;
    }
    let rhs = DVector::from_iterator(n, p0.iter().map(|p| beta * p));
    let x = m
        .cholesky()
        .ok_or_else(|| Error::Domain("PageRank system is not positive definite".to_string()))?
        .solve(&rhs);
    Ok(x.iter().zip(d).map(|(x, d)| x * d).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apps::Hyperedge;

    #[test]
    fn graph_edge_vertices() {
        let atom = SubmodularAtom::graph_edge(1.0, 0, 1).unwrap();
        let v = enumerate_base_vertices(&atom).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.contains(&vec![1.0, -1.0]) && v.contains(&vec![-1.0, 1.0]));
    }

    #[test]
    fn directed_edge_vertices() {
        let atom = SubmodularAtom::directed(1.0, vec![0, 1], vec![0], vec![1]).unwrap();
        let v = enumerate_base_vertices(&atom).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.contains(&vec![1.0, -1.0]) && v.contains(&vec![0.0, 0.0]));
    }

    #[test]
    fn size_refusals() {
        let big = SubmodularAtom::cardinality(1.0, (0..9).collect()).unwrap();
        assert!(matches!(enumerate_base_vertices(&big), Err(Error::TooLarge { .. })));
        let seven = SubmodularAtom::cardinality(1.0, (0..7).collect()).unwrap();
        assert!(brute_projection(&seven, &[0.0; 7], &[1.0; 7]).is_err());
        let inst = ProblemInstance::new(
            vec![0.0; 7],
            vec![1.0; 7],
            vec![SubmodularAtom::undirected(1.0, (0..7).collect()).unwrap()],
        )
        .unwrap();
        assert!(brute_qdsfm(&inst).is_err());
        let hg = Hypergraph::new(17, vec![Hyperedge::undirected(1.0, (0..17).collect()).unwrap()]).unwrap();
        assert!(brute_min_conductance(&hg).is_err());
    }

    #[test]
    fn projection_closed_form() {
        let atom = SubmodularAtom::graph_edge(1.0, 0, 1).unwrap();
        let r = brute_projection(&atom, &[1.0, -1.0], &[1.0, 1.0]).unwrap();
        assert!((r.h_value - 2.0 / 3.0).abs() <= 1e-10);
        let z = brute_projection(&atom, &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(z.h_value, 0.0);
    }

    #[test]
    fn qdsfm_closed_form_and_constant() {
        let edge = ProblemInstance::new(
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![SubmodularAtom::graph_edge(1.0, 0, 1).unwrap()],
        )
        .unwrap();
        let x = brute_qdsfm(&edge).unwrap();
        assert!((x[0] - 2.0 / 3.0).abs() < 1e-14 && (x[1] - 1.0 / 3.0).abs() < 1e-14);
        let flat = ProblemInstance::new(
            vec![0.4; 3],
            vec![1.0; 3],
            vec![SubmodularAtom::cardinality(0.5, vec![0, 1, 2]).unwrap()],
        )
        .unwrap();
        assert_eq!(brute_qdsfm(&flat).unwrap(), vec![0.4; 3]);
    }

    #[test]
    fn conductance_examples() {
        let single = Hypergraph::new(3, vec![Hyperedge::undirected(1.0, vec![0, 1, 2]).unwrap()]).unwrap();
        assert_eq!(brute_min_conductance(&single).unwrap().1, 1.0);
        let split = Hypergraph::new(
            4,
            vec![
                Hyperedge::undirected(1.0, vec![0, 1]).unwrap(),
                Hyperedge::undirected(1.0, vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let (set, phi) = brute_min_conductance(&split).unwrap();
        assert_eq!(phi, 0.0);
        assert_eq!(set, vec![0, 1]);
    }

    #[test]
    fn dense_pagerank_limits() {
        let hg = Hypergraph::new(
            3,
            vec![
                Hyperedge::undirected(1.0, vec![0, 1]).unwrap(),
                Hyperedge::undirected(2.0, vec![1, 2]).unwrap(),
            ],
        )
        .unwrap();
        let d = hg.degrees().to_vec();
        let p = dense_graph_pagerank(&hg, 0.2, &d).unwrap();
        for (a, b) in p.iter().zip(&d) {
            assert!((a - b).abs() < 1e-12);
        }
        let p0 = [1.0, 0.0, 0.0];
        let p = dense_graph_pagerank(&hg, 0.999, &p0).unwrap();
        for (a, b) in p.iter().zip(&p0) {
            assert!((a - b).abs() < 1e-2);
        }
        let hyper = Hypergraph::new(3, vec![Hyperedge::undirected(1.0, vec![0, 1, 2]).unwrap()]).unwrap();
        assert!(dense_graph_pagerank(&hyper, 0.5, &p0).is_err());
    }
}
