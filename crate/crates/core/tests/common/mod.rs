//! Independent reference computations. Nothing here calls into the crate's
//! spectral code: eigenvalues come from a plain cyclic Jacobi on the real
//! symmetric embedding of a Hermitian matrix.

#![allow(dead_code)]

use proptest::prelude::*;
use quasilp::{c64, ComplexMatrix, FaithfulState, C64};

/// Row-major complex entries.
pub type Dense = Vec<Vec<C64>>;

pub fn dense(m: &ComplexMatrix) -> Dense {
    let d = m.dim();
    (0..d).map(|i| (0..d).map(|j| m.get(i, j)).collect()).collect()
}

/// Eigenvalues (ascending) of a Hermitian matrix via `[[A, -B], [B, A]]`,
/// whose spectrum is that of `A + iB` with every value doubled.
pub fn hermitian_eigenvalues(h: &Dense) -> Vec<f64> {
    let n = h.len();
    let mut a = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = h[i][j];
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    let mut ev = symmetric_jacobi(a);
    ev.sort_by(f64::total_cmp);
    ev.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect()
}

fn symmetric_jacobi(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-32 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Singular values (descending) from the Hermitian dilation `[[0, X], [X*, 0]]`.
pub fn singular_values(x: &Dense) -> Vec<f64> {
    let n = x.len();
    let zero = c64(0.0, 0.0);
    let mut h = vec![vec![zero; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            h[i][j + n] = x[i][j];
            h[j + n][i] = x[i][j].conj();
        }
    }
    let ev = hermitian_eigenvalues(&h);
    ev.iter().rev().take(n).map(|&s| s.max(0.0)).collect()
}

pub fn schatten(x: &Dense, p: f64) -> f64 {
    let s = singular_values(x);
    if p.is_infinite() {
        s[0]
    } else {
        s.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Classical Rényi divergence of two probability vectors.
pub fn classical_renyi(r: &[f64], s: &[f64], p: f64) -> f64 {
    let q: f64 = r.iter().zip(s).map(|(a, b)| a.powf(p) * b.powf(1.0 - p)).sum();
    q.ln() / (p - 1.0)
}

pub fn matrix(dim: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let data: Vec<C64> = entries.iter().map(|&(re, im)| c64(re, im)).collect();
    ComplexMatrix::from_row_major(dim, &data).unwrap()
}

/// Square complex matrices with entries in the unit box.
pub fn arb_matrix(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ComplexMatrix> {
    dims.prop_flat_map(|d| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |e| matrix(d, &e))
    })
}

pub fn arb_pair(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (ComplexMatrix, ComplexMatrix)> {
    dims.prop_flat_map(|d| {
        let v = prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d);
        (v.clone(), v).prop_map(move |(a, b)| (matrix(d, &a), matrix(d, &b)))
    })
}

/// Faithful state `(g g* + εI) / tr`.
pub fn state_from(g: &ComplexMatrix, eps: f64) -> FaithfulState {
    let d = g.dim();
    let a = g * &g.adjoint() + ComplexMatrix::identity(d).scale_real(eps);
    FaithfulState::normalized(&a).unwrap()
}

/// Unitary from the Gram-Schmidt of the columns of `g`.
pub fn unitary_from(g: &ComplexMatrix) -> ComplexMatrix {
    let d = g.dim();
    let mut cols: Vec<Vec<C64>> = (0..d).map(|j| (0..d).map(|i| g.get(i, j)).collect()).collect();
    for j in 0..d {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let proj: C64 = done[k].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                *x -= proj * y;
            }
        }
        let n = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[j] {
            *x /= n;
        }
    }
    let rows: Vec<C64> = (0..d).flat_map(|i| cols.iter().map(move |c| c[i]).collect::<Vec<_>>()).collect();
    ComplexMatrix::from_row_major(d, &rows).unwrap()
}

pub fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1e-300)
}
