//! Dense complex matrices and the Hermitian eigendecomposition used by the
//! quantum modules.
//!
//! Matrices here are small (dimension at most a few dozen), so everything is
//! stored dense in row-major order and the eigensolver is a cyclic Jacobi
//! iteration, which is simple, deterministic, and accurate at this scale.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Zero;

use crate::C64;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows of `(re, im)` pairs. All rows must have the
    /// same length.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        let mut m = CMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &(re, im)) in row.iter().enumerate() {
                m[(i, j)] = C64::new(re, im);
            }
        }
        Some(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: C64) -> CMat {
        let data = self.data.iter().map(|a| a * k).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMat {
        let data = self.data.iter().map(|z| z.conj()).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &CMat) -> C64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = C64::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// Symmetrizes against rounding noise: `(A + A*)/2`.
    pub fn hermitize(&self) -> CMat {
        assert!(self.is_square());
        let adj = self.adjoint();
        self.add(&adj).scale(C64::new(0.5, 0.0))
    }

    /// Frobenius distance to the adjoint; zero for exactly Hermitian input.
    pub fn hermiticity_error(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    /// Frobenius norm of `A^2 - A`; zero for exact idempotents.
    pub fn idempotency_error(&self) -> f64 {
        self.matmul(self).sub(self).frobenius_norm()
    }

    /// Copies the selected columns into a new matrix, in the given order.
    pub fn columns(&self, cols: &[usize]) -> CMat {
        CMat::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    /// Kronecker product.
    pub fn kron(&self, other: &CMat) -> CMat {
        let (r1, c1) = (self.rows, self.cols);
        let (r2, c2) = (other.rows, other.cols);
        CMat::from_fn(r1 * r2, c1 * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    /// Rank-style sum of outer products `sum_j v_j v_j*` over the selected
    /// columns of `self`.
    pub fn projector_from_columns(&self, cols: &[usize]) -> CMat {
        let n = self.rows;
        let mut p = CMat::zeros(n, n);
        for &c in cols {
            for i in 0..n {
                let vi = self[(i, c)];
                for j in 0..n {
                    p[(i, j)] += vi * self[(j, c)].conj();
                }
            }
        }
        p
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// The input is hermitized first, so small asymmetry noise is tolerated.
    /// Returns eigenvalues in ascending order together with the unitary
    /// matrix whose columns are the corresponding eigenvectors.
    pub fn eigh(&self) -> (Vec<f64>, CMat) {
        assert!(self.is_square(), "eigh requires a square matrix");
        let n = self.rows;
        let mut a = self.hermitize();
        let mut v = CMat::identity(n);
        if n <= 1 {
            let vals = if n == 1 { vec![a[(0, 0)].re] } else { vec![] };
            return (vals, v);
        }

        let scale = a.frobenius_norm().max(1.0);
        let target = 1e-14 * scale;
        let pivot_floor = target / (n as f64);

        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += a[(i, j)].norm_sqr();
                }
            }
            if (2.0 * off).sqrt() <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q, pivot_floor);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
        let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let vecs = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
        (vals, vecs)
    }

    /// Projector onto the span of eigenvectors with eigenvalue above
    /// `cutoff`; the input is treated as Hermitian.
    pub fn support_projector(&self, cutoff: f64) -> CMat {
        let (vals, vecs) = self.eigh();
        let cols: Vec<usize> =
            (0..vals.len()).filter(|&i| vals[i] > cutoff).collect();
        vecs.projector_from_columns(&cols)
    }

    /// Projector onto the span of eigenvectors with eigenvalue below
    /// `cutoff`; the orthogonal complement of [`Self::support_projector`]
    /// at the same cutoff (up to eigenvalues exactly at the cutoff).
    pub fn kernel_projector(&self, cutoff: f64) -> CMat {
        let (vals, vecs) = self.eigh();
        let cols: Vec<usize> =
            (0..vals.len()).filter(|&i| vals[i] <= cutoff).collect();
        vecs.projector_from_columns(&cols)
    }
}

/// One Jacobi rotation zeroing the (p, q) entry of the Hermitian matrix `a`,
/// accumulated into `v`.
fn jacobi_rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize, floor: f64) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b <= floor {
        return;
    }
    let phase = apq / b; // e^{i phi} with apq = b e^{i phi}
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let tau = (gamma - alpha) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // 2x2 core of the unitary G (identity elsewhere):
    //   G[p][p] = c        G[p][q] = s
    //   G[q][p] = -s e^{-i phi}   G[q][q] = c e^{-i phi}
    let e_neg = phase.conj();
    let e_pos = phase;
    let n = a.nrows();

    // A <- A G (columns p and q change)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * (e_neg * s);
        a[(k, q)] = akp * s + akq * (e_neg * c);
    }
    // A <- G* A (rows p and q change)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * (e_pos * s);
        a[(q, k)] = apk * s + aqk * (e_pos * c);
    }
    // Clean the pivot and keep the diagonal real.
    a[(p, q)] = C64::zero();
    a[(q, p)] = C64::zero();
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * (e_neg * s);
        v[(k, q)] = vkp * s + vkq * (e_neg * c);
    }
}

/// Complex scalar shorthand.
pub fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

/// Real scalar as a complex number.
pub fn cr(re: f64) -> C64 {
    Complex64::new(re, 0.0)
}
