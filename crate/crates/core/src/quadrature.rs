//! Gauss rules from symmetric tridiagonal (Jacobi) matrices.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 60;

/// Nodes and positive weights of a one-dimensional quadrature rule.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Golub–Welsch: the nodes are the eigenvalues of the Jacobi matrix with
    /// diagonal `diag` and off-diagonal `offdiag` (length `n - 1`), and the
    /// weights are `mass` times the squared first eigenvector components.
    pub fn golub_welsch(diag: &[T], offdiag: &[T], mass: T) -> Result<Self> {
        assert_eq!(offdiag.len() + 1, diag.len(), "off-diagonal length must be n - 1");
        let (values, first) = tridiagonal_eigen(diag, offdiag)?;
        let mut pairs: Vec<(T, T)> = values.into_iter().zip(first).map(|(x, v)| (x, mass * v * v)).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self { nodes, weights })
    }
}

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix, by implicit QL with Wilkinson-type shifts.
pub(crate) fn tridiagonal_eigen<T: Real>(diag: &[T], offdiag: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(T::zero());
    // only the first row of the eigenvector matrix is tracked
    let mut z = vec![T::zero(); n];
    if n > 0 {
        z[0] = T::one();
    }
    let two = T::lit(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence { index: l, iterations: sweeps });
            }
            sweeps += 1;
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok((d, z))
}
