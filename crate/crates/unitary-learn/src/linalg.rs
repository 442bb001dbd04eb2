//! Dense complex matrices and vectors.
//!
//! Everything the rest of the crate needs from linear algebra lives here:
//! products, adjoints, LU solves, Frobenius norms, Kronecker products,
//! Householder QR, modified Gram-Schmidt, and Haar-random unitary sampling.
//! Matrices are stored dense, row-major, over `Complex64`. Sizes are
//! desk-scale (states of at most a few thousand amplitudes), so the kernels
//! are plain loops with deterministic summation order.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from nested row slices; rows must have equal length.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Standard matrix product. Errors if `self.cols != other.rows`.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(
                "matmul",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        // i-k-j order keeps the inner loop contiguous in both operands.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        debug_assert!(out.is_finite(), "matmul produced non-finite entries");
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Sum of diagonal entries. Errors on non-square input.
    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::dim(
                "trace",
                format!("{}x{} is not square", self.rows, self.cols),
            ));
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    /// Kronecker product in standard block ordering.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out[(i * other.rows + p, j * other.cols + q)] = a * other[(p, q)];
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.dim() {
            return Err(Error::dim(
                "matvec",
                format!("{}x{} times dim-{} vector", self.rows, self.cols, v.dim()),
            ));
        }
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            out[i] = row.iter().zip(v.entries()).map(|(a, x)| a * x).sum();
        }
        Ok(CVector::new(out))
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> CMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

// Entrywise operators for internal use; dimensions are asserted, the checked
// entry points are the named methods above.
impl std::ops::Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Dense complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex64>,
}

impl CVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        assert!(!data.is_empty(), "vector must be non-empty");
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    /// Computational basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = Self::zeros(dim);
        v.data[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> CVector {
        CVector::new(self.data.iter().map(|z| z * s).collect())
    }

    /// Inner product `self† · other`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Outer product `self · other†`.
    pub fn outer(&self, other: &CVector) -> CMatrix {
        CMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.data[i] * other.data[j].conj()
        })
    }
}

impl std::ops::Sub for &CVector {
    type Output = CVector;
    fn sub(self, other: &CVector) -> CVector {
        assert_eq!(self.dim(), other.dim());
        CVector::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl std::ops::Add for &CVector {
    type Output = CVector;
    fn add(self, other: &CVector) -> CVector {
        assert_eq!(self.dim(), other.dim());
        CVector::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Solves `a · X = b` by LU factorization with partial pivoting.
///
/// Never forms the inverse; the factorization is applied column by column to
/// `b`. Errors with the offending pivot magnitude when `a` is singular to
/// working precision.
pub fn solve_linear(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::dim(
            "solve_linear",
            format!("coefficient matrix is {}x{}", a.rows(), a.cols()),
        ));
    }
    if a.rows() != b.rows() {
        return Err(Error::dim(
            "solve_linear",
            format!("{}x{} vs rhs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        ));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let pivot_floor = f64::EPSILON * a.max_abs().max(f64::MIN_POSITIVE) * n as f64;

    for k in 0..n {
        // Partial pivot: largest modulus in column k at or below the diagonal.
        let (p, mag) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag <= pivot_floor {
            return Err(Error::Singular { pivot: mag });
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            perm.swap(k, p);
        }
        let pivot = lu[(k, k)];
        for i in (k + 1)..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in (k + 1)..n {
                let sub = factor * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }

    let mut x = CMatrix::zeros(n, b.cols());
    let mut col = vec![ZERO; n];
    for j in 0..b.cols() {
        // Forward substitution on the permuted right-hand side (L has unit diagonal).
        for i in 0..n {
            let mut s = b[(perm[i], j)];
            for k in 0..i {
                s -= lu[(i, k)] * col[k];
            }
            col[i] = s;
        }
        // Back substitution.
        for i in (0..n).rev() {
            let mut s = col[i];
            for k in (i + 1)..n {
                s -= lu[(i, k)] * col[k];
            }
            col[i] = s / lu[(i, i)];
        }
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    if !x.is_finite() {
        return Err(Error::Singular { pivot: pivot_floor });
    }
    Ok(x)
}

/// Orthonormalizes the columns of a square matrix by modified Gram-Schmidt.
///
/// Column k of the result spans the same flag as columns 0..=k of the input.
/// Errors when a column drops below norm 1e-12 after projection.
pub fn gram_schmidt(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::dim(
            "gram_schmidt",
            format!("{}x{} is not square", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let mut q = a.clone();
    for k in 0..n {
        // Project against each previous column using the running residual.
        for j in 0..k {
            let mut r = ZERO;
            for i in 0..n {
                r += q[(i, j)].conj() * q[(i, k)];
            }
            for i in 0..n {
                let sub = r * q[(i, j)];
                q[(i, k)] -= sub;
            }
        }
        let norm = (0..n).map(|i| q[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::RankDeficient { col: k, norm });
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        for i in 0..n {
            q[(i, k)] *= inv;
        }
    }
    Ok(q)
}

/// Householder QR of a square matrix. Returns `(Q, R)` with `A = Q·R`,
/// `Q` unitary and `R` upper triangular.
pub fn qr(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    if !a.is_square() {
        return Err(Error::dim(
            "qr",
            format!("{}x{} is not square", a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let mut r = a.clone();
    let mut q = CMatrix::identity(n);
    let mut v = vec![ZERO; n];

    for k in 0..n {
        let sigma = ((k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>()).sqrt();
        if sigma == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * sigma;
        // v = x - alpha·e_k, reflector H = I - (2/v†v)·v·v†
        let mut vnorm_sq = 0.0;
        for i in k..n {
            v[i] = r[(i, k)] - if i == k { alpha } else { ZERO };
            vnorm_sq += v[i].norm_sqr();
        }
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;
        // R <- H·R
        for j in k..n {
            let mut dot = ZERO;
            for i in k..n {
                dot += v[i].conj() * r[(i, j)];
            }
            dot *= tau;
            for i in k..n {
                let sub = dot * v[i];
                r[(i, j)] -= sub;
            }
        }
        // Q <- Q·H (H is Hermitian)
        for i in 0..n {
            let mut dot = ZERO;
            for j in k..n {
                dot += q[(i, j)] * v[j];
            }
            dot *= tau;
            for j in k..n {
                let sub = dot * v[j].conj();
                q[(i, j)] -= sub;
            }
        }
    }
    Ok((q, r))
}

/// Samples an n-by-n unitary from the Haar measure.
///
/// QR of a standard complex Gaussian matrix, with the R-diagonal phase
/// correction `Q <- Q · diag(r_kk / |r_kk|)` that makes the factorization
/// canonical. Deterministic per seed.
pub fn haar_unitary(n: usize, seed: u64) -> CMatrix {
    assert!(n >= 1, "haar_unitary requires n >= 1");
    let mut rng = rng::seeded(seed);
    let g = CMatrix::from_fn(n, n, |_, _| rng::complex_gaussian(&mut rng));
    let (q, r) = qr(&g).expect("square Gaussian matrix");
    let phases: Vec<Complex64> = (0..n)
        .map(|k| {
            let d = r[(k, k)];
            if d.norm() == 0.0 {
                ONE
            } else {
                d / d.norm()
            }
        })
        .collect();
    let mut out = q;
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] *= phases[j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_mat_close(a: &CMatrix, b: &CMatrix, tol: f64) {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        let d = (a - b).frobenius_norm_sq().sqrt();
        assert!(d <= tol, "matrices differ by {d:e} (tol {tol:e})");
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut rng = crate::rng::seeded(seed);
        CMatrix::from_fn(n, n, |_, _| crate::rng::complex_gaussian(&mut rng))
    }

    fn pauli_x() -> CMatrix {
        CMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
    }

    #[test]
    fn matmul_identity() {
        let i2 = CMatrix::identity(2);
        assert_mat_close(&i2.matmul(&i2).unwrap(), &i2, 0.0);
    }

    #[test]
    fn matmul_pauli_x_squares_to_identity() {
        let x = pauli_x();
        assert_mat_close(&x.matmul(&x).unwrap(), &CMatrix::identity(2), 0.0);
    }

    #[test]
    fn matmul_i_times_i_is_minus_identity() {
        let m = CMatrix::diag(&[I, I]);
        let expect = CMatrix::diag(&[c(-1.0, 0.0), c(-1.0, 0.0)]);
        assert_mat_close(&m.matmul(&m).unwrap(), &expect, 0.0);
    }

    #[test]
    fn matmul_dimension_mismatch_errors() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 2);
        assert!(matches!(
            a.matmul(&b),
            Err(Error::DimMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn matmul_associativity_on_random_triples() {
        for seed in 0..20u64 {
            let a = random_matrix(4, seed * 3 + 1);
            let b = random_matrix(4, seed * 3 + 2);
            let m = random_matrix(4, seed * 3 + 3);
            let left = a.matmul(&b).unwrap().matmul(&m).unwrap();
            let right = a.matmul(&b.matmul(&m).unwrap()).unwrap();
            let rel = (&left - &right).frobenius_norm_sq().sqrt()
                / left.frobenius_norm_sq().sqrt();
            assert!(rel <= 1e-10, "associativity violated: rel err {rel:e}");
        }
    }

    #[test]
    fn dagger_examples() {
        let m = CMatrix::from_rows(&[&[I]]);
        assert_eq!(m.dagger()[(0, 0)], c(0.0, -1.0));

        let i3 = CMatrix::identity(3);
        assert_mat_close(&i3.dagger(), &i3, 0.0);

        let m = CMatrix::from_rows(&[&[ZERO, ONE], &[ZERO, ZERO]]);
        let expect = CMatrix::from_rows(&[&[ZERO, ZERO], &[ONE, ZERO]]);
        assert_mat_close(&m.dagger(), &expect, 0.0);
    }

    #[test]
    fn dagger_is_an_exact_involution() {
        let a = random_matrix(5, 99);
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = random_matrix(4, 11);
        let x = solve_linear(&CMatrix::identity(4), &b).unwrap();
        assert_mat_close(&x, &b, 1e-14);
    }

    #[test]
    fn solve_scaled_identity() {
        let a = CMatrix::identity(2).scale_re(2.0);
        let x = solve_linear(&a, &CMatrix::identity(2)).unwrap();
        assert_mat_close(&x, &CMatrix::identity(2).scale_re(0.5), 1e-15);
    }

    #[test]
    fn solve_upper_triangular_hand_oracle() {
        // Back-substitution by hand: x2 = 1, x1 = 2 - 1 = 1.
        let a = CMatrix::from_rows(&[&[ONE, ONE], &[ZERO, ONE]]);
        let b = CMatrix::from_rows(&[&[c(2.0, 0.0)], &[ONE]]);
        let x = solve_linear(&a, &b).unwrap();
        let expect = CMatrix::from_rows(&[&[ONE], &[ONE]]);
        assert_mat_close(&x, &expect, 1e-14);
    }

    #[test]
    fn solve_roundtrip_residual_on_random_systems() {
        for seed in 0..20u64 {
            let a = random_matrix(6, 1000 + seed);
            let b = random_matrix(6, 2000 + seed);
            let x = solve_linear(&a, &b).unwrap();
            let resid = (&a.matmul(&x).unwrap() - &b).frobenius_norm_sq().sqrt();
            let scale = b.frobenius_norm_sq().sqrt();
            assert!(resid <= 1e-10 * scale, "residual {resid:e} vs scale {scale:e}");
        }
    }

    #[test]
    fn solve_singular_matrix_errors_with_pivot() {
        let a = CMatrix::from_rows(&[&[ONE, ONE], &[ONE, ONE]]);
        match solve_linear(&a, &CMatrix::identity(2)) {
            Err(Error::Singular { pivot }) => assert!(pivot < 1e-10),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn frobenius_norm_examples() {
        assert_eq!(CMatrix::identity(2).frobenius_norm_sq(), 2.0);
        assert_eq!(CMatrix::zeros(3, 3).frobenius_norm_sq(), 0.0);
        let m = CMatrix::from_rows(&[&[c(0.0, 3.0), ZERO], &[ZERO, c(4.0, 0.0)]]);
        assert_eq!(m.frobenius_norm_sq(), 25.0);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(CMatrix::identity(4).trace().unwrap(), c(4.0, 0.0));
        let m = CMatrix::diag(&[ONE, c(-1.0, 0.0)]);
        assert_eq!(m.trace().unwrap(), ZERO);
        let m = CMatrix::from_rows(&[&[I, c(9.0, 0.0)], &[c(9.0, 0.0), I]]);
        assert_eq!(m.trace().unwrap(), c(0.0, 2.0));
        assert!(CMatrix::zeros(2, 3).trace().is_err());
    }

    #[test]
    fn kron_examples() {
        let i2 = CMatrix::identity(2);
        assert_mat_close(&i2.kron(&i2), &CMatrix::identity(4), 0.0);

        let x = pauli_x();
        let expect = CMatrix::from_rows(&[
            &[ZERO, ZERO, ONE, ZERO],
            &[ZERO, ZERO, ZERO, ONE],
            &[ONE, ZERO, ZERO, ZERO],
            &[ZERO, ONE, ZERO, ZERO],
        ]);
        assert_mat_close(&x.kron(&i2), &expect, 0.0);

        let a = CMatrix::zeros(2, 2);
        let b = CMatrix::zeros(3, 3);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
    }

    #[test]
    fn kron_mixed_product_property() {
        for seed in 0..10u64 {
            let a = random_matrix(2, 4 * seed + 1);
            let b = random_matrix(2, 4 * seed + 2);
            let cm = random_matrix(2, 4 * seed + 3);
            let d = random_matrix(2, 4 * seed + 4);
            let left = a.kron(&b).matmul(&cm.kron(&d)).unwrap();
            let right = a.matmul(&cm).unwrap().kron(&b.matmul(&d).unwrap());
            assert_mat_close(&left, &right, 1e-10);
        }
    }

    #[test]
    fn gram_schmidt_fixes_unitary_input() {
        let u = haar_unitary(4, 5);
        let q = gram_schmidt(&u).unwrap();
        assert_mat_close(&q, &u, 1e-10);
    }

    #[test]
    fn gram_schmidt_rescales_diagonal() {
        let a = CMatrix::diag(&[c(2.0, 0.0), c(3.0, 0.0)]);
        assert_mat_close(&gram_schmidt(&a).unwrap(), &CMatrix::identity(2), 1e-15);
    }

    #[test]
    fn gram_schmidt_hand_oracle() {
        // Columns (1,0) and (1,1): second column minus its projection is (0,1).
        let a = CMatrix::from_rows(&[&[ONE, ONE], &[ZERO, ONE]]);
        assert_mat_close(&gram_schmidt(&a).unwrap(), &CMatrix::identity(2), 1e-15);
    }

    #[test]
    fn gram_schmidt_orthonormalizes_random_inputs() {
        for seed in 0..10u64 {
            let a = random_matrix(5, 300 + seed);
            let q = gram_schmidt(&a).unwrap();
            let gram = q.dagger().matmul(&q).unwrap();
            assert_mat_close(&gram, &CMatrix::identity(5), 1e-10);
        }
    }

    #[test]
    fn gram_schmidt_rank_deficient_errors() {
        let a = CMatrix::from_rows(&[&[ONE, ONE], &[ONE, ONE]]);
        assert!(matches!(
            gram_schmidt(&a),
            Err(Error::RankDeficient { col: 1, .. })
        ));
    }

    #[test]
    fn qr_reconstructs_input() {
        for seed in 0..5u64 {
            let a = random_matrix(6, 700 + seed);
            let (q, r) = qr(&a).unwrap();
            assert_mat_close(&q.matmul(&r).unwrap(), &a, 1e-12);
            let gram = q.dagger().matmul(&q).unwrap();
            assert_mat_close(&gram, &CMatrix::identity(6), 1e-13);
            for i in 0..6 {
                for j in 0..i {
                    assert!(r[(i, j)].norm() < 1e-13, "R not upper triangular");
                }
            }
        }
    }

    #[test]
    fn haar_unitary_is_unitary_across_sizes() {
        for &n in &[2usize, 4, 8, 16, 32] {
            let q = haar_unitary(n, 17);
            let gram = q.dagger().matmul(&q).unwrap();
            let err = (&gram - &CMatrix::identity(n)).frobenius_norm_sq().sqrt();
            assert!(err <= 1e-12, "n={n}: gram error {err:e}");
        }
    }

    #[test]
    fn haar_unitary_is_deterministic_per_seed() {
        let a = haar_unitary(4, 123);
        let b = haar_unitary(4, 123);
        assert_eq!(a, b);
        assert_ne!(haar_unitary(4, 124), a);
    }

    #[test]
    fn haar_unitary_scalar_has_unit_modulus() {
        let q = haar_unitary(1, 9);
        assert!((q[(0, 0)].norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn vector_basics() {
        let v = CVector::basis(4, 2);
        assert_eq!(v.dim(), 4);
        assert_eq!(v.norm(), 1.0);
        let w = CVector::new(vec![c(3.0, 0.0), c(0.0, 4.0)]);
        assert_eq!(w.norm_sq(), 25.0);
        assert_eq!(w.inner(&w), c(25.0, 0.0));
    }

    #[test]
    fn outer_product_matches_definition() {
        let u = CVector::new(vec![ONE, c(-1.0, 0.0)]);
        let v = CVector::new(vec![ONE, ZERO]);
        let m = u.outer(&v);
        let expect = CMatrix::from_rows(&[&[ONE, ZERO], &[c(-1.0, 0.0), ZERO]]);
        assert_mat_close(&m, &expect, 0.0);
    }
}
