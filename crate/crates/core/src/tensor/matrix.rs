use std::ops::{Add, Index, IndexMut, Mul, Sub};

use faer::{Mat, Side};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, actual: data.len() });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real entries, mostly handy in tests.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: r.len() });
            }
            data.extend(r.iter().map(|&x| C64::new(x, 0.0)));
        }
        Ok(Self { dim, data })
    }

    /// |v><v|
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&x| x * c).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let dst = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let src = &other.data[k * n..(k + 1) * n];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "matvec dimension mismatch");
        let n = self.dim;
        (0..n).map(|i| self.data[i * n..(i + 1) * n].iter().zip(v).map(|(&a, &b)| a * b).sum()).collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |i, j| self[(i / b, j / b)] * other[(i % b, j % b)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest |M - M^dagger| entry.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut err: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                err = err.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    fn to_faer(&self) -> Mat<C64> {
        Mat::from_fn(self.dim, self.dim, |i, j| self[(i, j)])
    }

    /// Index sets of the connected components of the nonzero pattern. A
    /// Hermitian matrix is the direct sum of its restrictions to these.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                if self[(i, j)] != C64::new(0.0, 0.0) {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = root(&mut parent, i);
            groups[r].push(i);
        }
        groups.retain(|g| !g.is_empty());
        groups
    }

    fn dense_eigvalsh(&self) -> Result<Vec<f64>> {
        match self.dim {
            0 => Ok(Vec::new()),
            1 => Ok(vec![self.data[0].re]),
            _ => self.to_faer().self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::Eigensolver),
        }
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    ///
    /// Block-diagonal structure (up to a permutation) is detected from exact
    /// zeros and each block is diagonalized on its own.
    pub fn eigvalsh(&self) -> Result<Vec<f64>> {
        let blocks = self.blocks();
        let mut vals = if blocks.len() <= 1 {
            self.dense_eigvalsh()?
        } else {
            let mut vals = Vec::with_capacity(self.dim);
            for b in &blocks {
                let sub = CMatrix::from_fn(b.len(), |i, j| self[(b[i], b[j])]);
                vals.extend(sub.dense_eigvalsh()?);
            }
            vals
        };
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }

    /// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
    /// a matrix whose columns are the matching eigenvectors.
    pub fn eigh(&self) -> Result<(Vec<f64>, CMatrix)> {
        if self.dim == 0 {
            return Ok((Vec::new(), CMatrix::zeros(0)));
        }
        let evd = self.to_faer().self_adjoint_eigen(Side::Lower).map_err(|_| Error::Eigensolver)?;
        let s = evd.S().column_vector();
        let u = evd.U();
        let n = self.dim;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| s[a].re.total_cmp(&s[b].re));
        let vals = order.iter().map(|&k| s[k].re).collect();
        let vecs = CMatrix::from_fn(n, |i, j| u[(i, order[j])]);
        Ok((vals, vecs))
    }

    /// f(M) for Hermitian M, applied through the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
        let (vals, vecs) = self.eigh()?;
        let n = self.dim;
        let fv: Vec<f64> = vals.iter().map(|&x| f(x)).collect();
        Ok(CMatrix::from_fn(n, |i, j| (0..n).map(|k| vecs[(i, k)] * fv[k] * vecs[(j, k)].conj()).sum()))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        CMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        CMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}
