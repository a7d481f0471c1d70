//! Dense complex matrices and the Hermitian eigensolver.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Runs a kernel compiled with AVX2 when the CPU has it. FMA stays off, so
/// every operation rounds exactly as in the baseline build and results are
/// bit-identical either way.
macro_rules! dispatch {
    ($f:ident($($arg:expr),*)) => {{
        #[cfg(target_arch = "x86_64")]
        {
            #[target_feature(enable = "avx2")]
            unsafe fn wide<T>(f: impl FnOnce() -> T) -> T {
                f()
            }
            if std::arch::is_x86_feature_detected!("avx2") {
                // SAFETY: the feature was detected at runtime.
                unsafe { wide(|| $f($($arg),*)) }
            } else {
                $f($($arg),*)
            }
        }
        #[cfg(not(target_arch = "x86_64"))]
        {
            $f($($arg),*)
        }
    }};
}

#[inline(always)]
fn gram_kernel(a: &CMatrix) -> CMatrix {
    let (n, t) = (a.rows, a.cols);
    // columns of A as split real/imaginary rows, so the inner loops are
    // plain axpys
    let mut yr = vec![0.0; t * n];
    let mut yi = vec![0.0; t * n];
    for i in 0..n {
        for k in 0..t {
            let z = a.data[i * t + k];
            yr[k * n + i] = z.re;
            yi[k * n + i] = z.im;
        }
    }
    let mut out = CMatrix::zeros(n, n);
    // rows i and i+1 together share the loads of column k
    let mut acc = vec![0.0; 4 * n];
    let mut i = 0;
    while i < n {
        let pair = i + 1 < n;
        let width = if pair { i + 2 } else { i + 1 };
        acc[..4 * width].fill(0.0);
        let (c0r, rest) = acc.split_at_mut(width);
        let (c0i, rest) = rest.split_at_mut(width);
        let (c1r, rest) = rest.split_at_mut(width);
        let c1i = &mut rest[..width];
        for k in 0..t {
            let (br, bi) = (&yr[k * n..k * n + width], &yi[k * n..k * n + width]);
            let (a0r, a0i) = (br[i], bi[i]);
            if pair {
                let (a1r, a1i) = (br[i + 1], bi[i + 1]);
                let accs = c0r.iter_mut().zip(c0i.iter_mut()).zip(c1r.iter_mut().zip(c1i.iter_mut()));
                for (((p0r, p0i), (p1r, p1i)), (&xr, &xi)) in accs.zip(br.iter().zip(bi)) {
                    *p0r += a0r * xr + a0i * xi;
                    *p0i += a0i * xr - a0r * xi;
                    *p1r += a1r * xr + a1i * xi;
                    *p1i += a1i * xr - a1r * xi;
                }
            } else {
                for ((p0r, p0i), (&xr, &xi)) in c0r.iter_mut().zip(c0i.iter_mut()).zip(br.iter().zip(bi)) {
                    *p0r += a0r * xr + a0i * xi;
                    *p0i += a0i * xr - a0r * xi;
                }
            }
        }
        let rows: &[(usize, &[f64], &[f64])] = if pair { &[(i, c0r, c0i), (i + 1, c1r, c1i)] } else { &[(i, c0r, c0i)] };
        for &(r, cr, ci) in rows {
            for j in 0..r {
                let v = Complex64::new(cr[j], ci[j]);
                out[(r, j)] = v;
                out[(j, r)] = v.conj();
            }
            out[(r, r)] = Complex64::new(cr[r], 0.0);
        }
        i += if pair { 2 } else { 1 };
    }
    out
}

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self[(i, k)];
                let b = &other.data[k * other.cols..(k + 1) * other.cols];
                for (r, x) in row.iter_mut().zip(b) {
                    *r += a * x;
                }
            }
        }
        out
    }

    /// `A A†`, exactly Hermitian.
    pub fn gram(&self) -> Self {
        dispatch!(gram_kernel(self))
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_hermitian(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Domain(format!("matrix is {}×{}, not square", self.rows, self.cols)));
        }
        let tol = 1e-12 * self.max_abs().max(1.0);
        for i in 0..self.rows {
            for j in 0..=i {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return Err(Error::Domain(format!("matrix is not Hermitian at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }
}

/// Reduces Hermitian `a` to real tridiagonal form `(d, e)` with
/// `e[i] = T[i+1, i]`; returns the unitary `Z` with `A = Z T Z†` if asked.
/// Works on the lower triangle, held as separate real and imaginary parts.
fn tridiagonalize(a: &CMatrix, want_vectors: bool) -> (Vec<f64>, Vec<f64>, Option<CMatrix>) {
    dispatch!(tridiagonalize_kernel(a, want_vectors))
}

#[inline(always)]
fn tridiagonalize_kernel(a: &CMatrix, want_vectors: bool) -> (Vec<f64>, Vec<f64>, Option<CMatrix>) {
    let n = a.rows;
    let zero = Complex64::new(0.0, 0.0);
    let mut q = want_vectors.then(|| CMatrix::identity(n));
    let mut ar: Vec<f64> = a.data.iter().map(|z| z.re).collect();
    let mut ai: Vec<f64> = a.data.iter().map(|z| z.im).collect();
    let mut sub = vec![zero; n];
    let mut v = vec![zero; n];
    let (mut vr, mut vi) = (vec![0.0; n], vec![0.0; n]);
    let (mut pr, mut pi) = (vec![0.0; n], vec![0.0; n]);
    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        let x: Vec<Complex64> = (k + 1..n).map(|i| Complex64::new(ar[i * n + k], ai[i * n + k])).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * norm;
        let v = &mut v[..m];
        v.copy_from_slice(&x);
        v[0] -= alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vn);
        let (vr, vi) = (&mut vr[..m], &mut vi[..m]);
        for (j, z) in v.iter().enumerate() {
            vr[j] = z.re;
            vi[j] = z.im;
        }
        // B ← B - v w† - w v†, w = 2p - 2(v†p)v, p = Bv
        let (pr, pi) = (&mut pr[..m], &mut pi[..m]);
        pr.fill(0.0);
        pi.fill(0.0);
        for i in 0..m {
            let off = (k + 1 + i) * n + k + 1;
            let (br, bi) = (&ar[off..off + i], &ai[off..off + i]);
            let (xr, xi) = (vr[i], vi[i]);
            let (mut sr, mut si) = (ar[off + i] * xr, ar[off + i] * xi);
            let (pr_lo, pi_lo) = (&mut pr[..i], &mut pi[..i]);
            let (ur, ui) = (&vr[..i], &vi[..i]);
            for ((((&b_r, &b_i), p_r), p_i), (&u_r, &u_i)) in
                br.iter().zip(bi).zip(pr_lo.iter_mut()).zip(pi_lo.iter_mut()).zip(ur.iter().zip(ui))
            {
                *p_r += b_r * xr + b_i * xi;
                *p_i += b_r * xi - b_i * xr;
                sr += b_r * u_r - b_i * u_i;
                si += b_r * u_i + b_i * u_r;
            }
            pr[i] += sr;
            pi[i] += si;
        }
        let s: f64 = (0..m).map(|j| vr[j] * pr[j] + vi[j] * pi[j]).sum();
        for j in 0..m {
            pr[j] = 2.0 * pr[j] - 2.0 * s * vr[j];
            pi[j] = 2.0 * pi[j] - 2.0 * s * vi[j];
        }
        for i in 0..m {
            let off = (k + 1 + i) * n + k + 1;
            let (xr, xi, wr, wi) = (vr[i], vi[i], pr[i], pi[i]);
            let (br, bi) = (&mut ar[off..off + i + 1], &mut ai[off..off + i + 1]);
            let (ur, ui, qr, qi) = (&vr[..=i], &vi[..=i], &pr[..=i], &pi[..=i]);
            for ((((b_r, b_i), (&u_r, &u_i)), &q_r), &q_i) in
                br.iter_mut().zip(bi.iter_mut()).zip(ur.iter().zip(ui)).zip(qr).zip(qi)
            {
                *b_r -= xr * q_r + xi * q_i + wr * u_r + wi * u_i;
                *b_i -= xi * q_r - xr * q_i + wi * u_r - wr * u_i;
            }
        }
        sub[k] = alpha;
        if let Some(q) = q.as_mut() {
            for r in 0..n {
                let row = &mut q.data[r * n + k + 1..(r + 1) * n];
                let t: Complex64 = row.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
                for (x, y) in row.iter_mut().zip(v.iter()) {
                    *x -= 2.0 * t * y.conj();
                }
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| ar[i * n + i]).collect();
    let e: Vec<f64> = sub.iter().map(|z| z.norm()).collect();
    // D† T D is real with D_{k+1} = D_k β_k / |β_k|.
    if let Some(q) = q.as_mut() {
        let mut phase = Complex64::new(1.0, 0.0);
        for k in 0..n {
            if k > 0 && e[k - 1] > 0.0 {
                phase *= sub[k - 1] / e[k - 1];
            }
            for r in 0..n {
                q[(r, k)] *= phase;
            }
        }
    }
    (d, e, q)
}

const MAX_QL_ITERATIONS: usize = 60;

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut CMatrix>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::Convergence(format!("QL iteration stalled at index {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..z.rows {
                        let f = z[(k, i + 1)];
                        z[(k, i + 1)] = s * z[(k, i)] + c * f;
                        z[(k, i)] = c * z[(k, i)] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigs(a: &CMatrix) -> Result<Vec<f64>> {
    a.check_hermitian()?;
    let (mut d, mut e, _) = tridiagonalize(a, false);
    tridiagonal_ql(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Ascending eigenvalues and the matching unit eigenvectors as columns.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    a.check_hermitian()?;
    let (mut d, mut e, z) = tridiagonalize(a, true);
    let mut z = z.expect("vectors requested");
    tridiagonal_ql(&mut d, &mut e, Some(&mut z))?;
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let mut sorted = CMatrix::zeros(z.rows, z.cols);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..z.rows {
            sorted[(r, new)] = z[(r, old)];
        }
    }
    Ok((order.iter().map(|&i| d[i]).collect(), sorted))
}

/// `max_j ‖A v_j - λ_j v_j‖ / ‖A‖_F` over the columns of `vectors`.
pub fn backward_error(a: &CMatrix, values: &[f64], vectors: &CMatrix) -> f64 {
    let n = a.rows;
    let scale = a.frobenius_sq().sqrt().max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for (j, &lam) in values.iter().enumerate() {
        let mut r2 = 0.0;
        for i in 0..n {
            let av: Complex64 = (0..n).map(|k| a[(i, k)] * vectors[(k, j)]).sum();
            r2 += (av - lam * vectors[(i, j)]).norm_sqr();
        }
        worst = worst.max(r2.sqrt() / scale);
    }
    worst
}

/// Largest `n` accepted by [`jacobi_eigs`].
pub const JACOBI_MAX_N: usize = 50;

/// Cyclic complex Jacobi; a slow independent check of [`hermitian_eigs`].
pub fn jacobi_eigs(a: &CMatrix) -> Result<Vec<f64>> {
    a.check_hermitian()?;
    let n = a.rows;
    if n > JACOBI_MAX_N {
        return Err(Error::Domain(format!("Jacobi oracle limited to n ≤ {JACOBI_MAX_N}")));
    }
    let mut a = a.clone();
    let total = a.frobenius_sq().sqrt();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|ij| a[ij].norm_sqr()).sum();
        if off.sqrt() <= 1e-15 * total {
            let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
            d.sort_by(f64::total_cmp);
            return Ok(d);
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)].norm();
                if g == 0.0 {
                    continue;
                }
                let ph = a[(p, q)] / g;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = 1.0f64.copysign(tau) / (tau.abs() + tau.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // A ← J† A J with J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                for k in 0..n {
                    let (ap, aq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * ap - s * ph.conj() * aq;
                    a[(k, q)] = s * ap + c * ph.conj() * aq;
                }
                for k in 0..n {
                    let (ap, aq) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * ap - s * ph * aq;
                    a[(q, k)] = s * ap + c * ph * aq;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    Err(Error::Convergence("Jacobi sweeps exhausted".into()))
}

/// Determinant by LU with partial pivoting.
pub fn determinant(a: &CMatrix) -> Result<Complex64> {
    if a.rows != a.cols {
        return Err(Error::Domain(format!("matrix is {}×{}, not square", a.rows, a.cols)));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| m[(i, k)].norm().total_cmp(&m[(j, k)].norm())).unwrap_or(k);
        if m[(piv, k)].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if piv != k {
            for j in 0..n {
                m.data.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = m[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            for j in k..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
        }
    }
    Ok(det)
}
