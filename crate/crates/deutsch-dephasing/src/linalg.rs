//! Dense complex matrix arithmetic sized for small multi-qubit Hilbert spaces.
//!
//! Everything is stored densely; the dimension cap keeps accidental blowups
//! (e.g. tensoring a large bath into a joint space) from allocating gigabytes.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on matrix dimension (2^12).
pub const DIM_CAP: usize = 4096;

/// Relative tolerance for Hermiticity checks.
pub const HERM_TOL: f64 = 1e-9;

/// Tolerance for unitarity checks on inputs.
pub const UNITARY_TOL: f64 = 1e-9;

pub(crate) const I0: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const I1: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, the carrier for states, gates and propagators.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    data: Array2<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from raw storage, checking squareness and finiteness.
    pub fn from_array(data: Array2<Complex64>) -> Result<Self> {
        let (r, c) = data.dim();
        if r != c || r == 0 {
            return Err(Error::validation(format!(
                "matrix must be square, got {r}x{c}"
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation("matrix contains non-finite entries"));
        }
        Ok(Self { data })
    }

    /// Builds a matrix from rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::validation(
                "rows must all have the same length as the row count",
            ));
        }
        let mut data = Array2::from_elem((n, n), I0);
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                data[(i, j)] = *z;
            }
        }
        Self::from_array(data)
    }

    /// Builds a matrix from real-valued rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|x| Complex64::new(*x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: Array2::from_elem((dim, dim), I0),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[(i, i)] = I1;
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, z) in entries.iter().enumerate() {
            m.data[(i, i)] = *z;
        }
        m
    }

    /// |k><k| on a `dim`-dimensional space.
    pub fn basis_projector(dim: usize, k: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[(k, k)] = I1;
        m
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(&[
            vec![I0, Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), I0],
        ])
        .unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.data.dim().0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[(i, j)] = z;
    }

    pub fn array(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            data: self.data.dot(&other.data),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            data: &self.data + &other.data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            data: &self.data - &other.data,
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            data: self.data.mapv(|x| x * z),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.t().mapv(|z| z.conj()),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.data[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// max |M - M†| relative to max |M| (absolute when M is near zero).
    pub fn hermiticity_error(&self) -> f64 {
        let scale = self.max_abs().max(1.0);
        self.max_abs_diff(&self.adjoint()) / scale
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// ||U†U - I||_max
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .max_abs_diff(&Self::identity(self.dim()))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }
}

/// Kronecker product, a-major: entry (i,j) of `a` scales a full copy of `b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_capped(a, b, DIM_CAP)
}

/// Kronecker product with an explicit dimension cap.
pub fn tensor_capped(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da.checked_mul(db).ok_or(Error::Capacity {
        requested: usize::MAX,
        cap,
    })?;
    if dim > cap {
        return Err(Error::Capacity {
            requested: dim,
            cap,
        });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij == I0 {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out.data[(i * db + k, j * db + l)] = aij * b.get(k, l);
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a sequence of factors, left to right.
pub fn tensor_all(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    let mut acc = factors
        .first()
        .ok_or_else(|| Error::validation("tensor_all needs at least one factor"))?
        .to_owned()
        .clone();
    for f in &factors[1..] {
        acc = tensor(&acc, f)?;
    }
    Ok(acc)
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the unitary of eigenvectors as
/// columns. Intended for the small dimensions this crate works with.
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_hermitian(HERM_TOL) {
        return Err(Error::validation(format!(
            "eigh requires a Hermitian matrix (error {:.3e})",
            m.hermiticity_error()
        )));
    }
    let n = m.dim();
    // Symmetrize to kill rounding noise before iterating.
    let mut a = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a.get(p, q).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let scale = a.max_abs().max(1.0);
    let target = 1e-14 * scale * (n as f64);
    for _sweep in 0..100 {
        if off(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phi = apq.arg();
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(e^{i phi/2}, e^{-i phi/2}) * [[c, s], [-s, c]]
                let e = Complex64::from_polar(1.0, phi / 2.0);
                let jpp = e * c;
                let jpq = e * s;
                let jqp = e.conj() * (-s);
                let jqq = e.conj() * c;
                // Column update A <- A J on columns p, q.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * jpp + akq * jqp);
                    a.set(k, q, akp * jpq + akq * jqq);
                }
                // Row update A <- J† A on rows p, q.
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, jpp.conj() * apk + jqp.conj() * aqk);
                    a.set(q, k, jpq.conj() * apk + jqq.conj() * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * jpp + vkq * jqp);
                    v.set(k, q, vkp * jpq + vkq * jqq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for k in 0..n {
            vecs.set(k, col, v.get(k, src));
        }
    }
    Ok((sorted, vecs))
}

/// e^{-i * scale * h} for Hermitian h (hbar = 1), via eigendecomposition.
pub fn herm_expm(h: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    if !h.is_hermitian(HERM_TOL) {
        return Err(Error::validation(format!(
            "herm_expm requires a Hermitian generator (error {:.3e})",
            h.hermiticity_error()
        )));
    }
    let (eigs, vecs) = eigh(h)?;
    let phases: Vec<Complex64> = eigs
        .iter()
        .map(|&lam| Complex64::from_polar(1.0, -scale * lam))
        .collect();
    let d = ComplexMatrix::diag(&phases);
    Ok(vecs.mul(&d).mul(&vecs.adjoint()))
}

/// Decomposes a flat index into per-factor indices for the given dims.
pub(crate) fn unravel(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims.iter()).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Trace over the factors not listed in `keep`; kept factors stay in
/// ascending index order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if total != m.dim() {
        return Err(Error::validation(format!(
            "factor dims {:?} give dimension {} but matrix has dimension {}",
            dims,
            total,
            m.dim()
        )));
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::validation(
            "keep must be a nonempty subset of factor indices",
        ));
    }
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();

    let encode = |factors: &[usize]| -> usize {
        keep.iter()
            .zip(kept_dims.iter())
            .fold(0, |acc, (&k, &d)| acc * d + factors[k])
    };

    let mut out = ComplexMatrix::zeros(out_dim);
    for i in 0..total {
        let fi = unravel(i, dims);
        for j in 0..total {
            let fj = unravel(j, dims);
            if traced.iter().all(|&t| fi[t] == fj[t]) {
                let (oi, oj) = (encode(&fi), encode(&fj));
                let z = out.get(oi, oj) + m.get(i, j);
                out.set(oi, oj, z);
            }
        }
    }
    Ok(out)
}

/// Embeds `u` acting on the listed target factors into the full space given
/// by `dims`, identity on all other factors. Target order defines the order
/// of the factors `u` acts on.
pub fn embed(u: &ComplexMatrix, dims: &[usize], targets: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if targets.is_empty() || targets.iter().any(|&t| t >= dims.len()) {
        return Err(Error::validation(
            "targets must be a nonempty subset of factor indices",
        ));
    }
    let mut seen = targets.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != targets.len() {
        return Err(Error::validation("targets must be distinct"));
    }
    let tdim: usize = targets.iter().map(|&t| dims[t]).product();
    if tdim != u.dim() {
        return Err(Error::validation(format!(
            "operator dimension {} does not match target factors of dimension {}",
            u.dim(),
            tdim
        )));
    }
    let rest: Vec<usize> = (0..dims.len()).filter(|i| !targets.contains(i)).collect();

    // Precompute per-index target subindex and rest key.
    let mut tkeys = vec![0usize; total];
    let mut rkeys = vec![0usize; total];
    for i in 0..total {
        let f = unravel(i, dims);
        tkeys[i] = targets.iter().fold(0, |acc, &t| acc * dims[t] + f[t]);
        rkeys[i] = rest.iter().fold(0, |acc, &t| acc * dims[t] + f[t]);
    }

    let mut out = ComplexMatrix::zeros(total);
    for i in 0..total {
        for j in 0..total {
            if rkeys[i] == rkeys[j] {
                out.set(i, j, u.get(tkeys[i], tkeys[j]));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let m = random_matrix(rng, dim);
        m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    // Independent entrywise Kronecker oracle.
    fn kron_oracle(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let (da, db) = (a.dim(), b.dim());
        let mut out = ComplexMatrix::zeros(da * db);
        for i in 0..da * db {
            for j in 0..da * db {
                out.set(i, j, a.get(i / db, j / db) * b.get(i % db, j % db));
            }
        }
        out
    }

    #[test]
    fn tensor_identity_case() {
        let i2 = ComplexMatrix::identity(2);
        let t = tensor(&i2, &i2).unwrap();
        assert_eq!(t.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn tensor_bit_flip_on_first_factor() {
        let u = tensor(&ComplexMatrix::pauli_x(), &ComplexMatrix::identity(2)).unwrap();
        // |00> is basis index 0; sigma_x on the first factor sends it to |10> (index 2).
        for k in 0..4 {
            let expected = if k == 2 { 1.0 } else { 0.0 };
            assert_eq!(u.get(k, 0).re, expected);
            assert_eq!(u.get(k, 0).im, 0.0);
        }
    }

    #[test]
    fn tensor_matches_entrywise_oracle_and_trace_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 2);
            let b = random_matrix(&mut rng, 2);
            let t = tensor(&a, &b).unwrap();
            assert!(t.max_abs_diff(&kron_oracle(&a, &b)) < 1e-15);
            let tr = a.trace() * b.trace();
            assert!((t.trace() - tr).norm() < 1e-13);
        }
    }

    #[test]
    fn tensor_respects_dimension_cap() {
        let a = ComplexMatrix::identity(64);
        let b = ComplexMatrix::identity(128);
        match tensor_capped(&a, &b, 4096) {
            Err(Error::Capacity { requested, cap }) => {
                assert_eq!(requested, 8192);
                assert_eq!(cap, 4096);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn tensor_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 2);
        let b = random_matrix(&mut rng, 3);
        let c = random_matrix(&mut rng, 2);
        let left = tensor(&tensor(&a, &b).unwrap(), &c).unwrap();
        let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
        assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn herm_expm_zero_generator() {
        let u = herm_expm(&ComplexMatrix::zeros(3), 2.5).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn herm_expm_diagonal_generator() {
        let h = ComplexMatrix::pauli_z().scale(Complex64::new(0.5, 0.0));
        let t = 0.7;
        let u = herm_expm(&h, t).unwrap();
        let expected = ComplexMatrix::diag(&[
            Complex64::from_polar(1.0, -t / 2.0),
            Complex64::from_polar(1.0, t / 2.0),
        ]);
        assert!(u.max_abs_diff(&expected) < 1e-12);
    }

    // Series oracle: sum_k (-i s H)^k / k!
    fn expm_series(h: &ComplexMatrix, scale: f64) -> ComplexMatrix {
        let n = h.dim();
        let gen = h.scale(Complex64::new(0.0, -scale));
        let mut term = ComplexMatrix::identity(n);
        let mut sum = ComplexMatrix::identity(n);
        for k in 1..60 {
            term = term.mul(&gen).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        sum
    }

    #[test]
    fn herm_expm_sigma_x_pi_is_minus_identity() {
        let u = herm_expm(&ComplexMatrix::pauli_x(), std::f64::consts::PI).unwrap();
        let minus_i = ComplexMatrix::identity(2).scale(Complex64::new(-1.0, 0.0));
        assert!(u.max_abs_diff(&minus_i) < 1e-12);
        assert!(
            u.max_abs_diff(&expm_series(
                &ComplexMatrix::pauli_x(),
                std::f64::consts::PI
            )) < 1e-12
        );
    }

    #[test]
    fn herm_expm_matches_series_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let h = random_hermitian(&mut rng, 4);
            let s = rng.gen_range(-2.0..2.0);
            let u = herm_expm(&h, s).unwrap();
            assert!(u.max_abs_diff(&expm_series(&h, s)) < 1e-11);
            assert!(u.unitarity_error() <= 1e-10);
        }
    }

    #[test]
    fn herm_expm_semigroup() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let h = random_hermitian(&mut rng, 3);
            let (s, t) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let lhs = herm_expm(&h, s).unwrap().mul(&herm_expm(&h, t).unwrap());
            let rhs = herm_expm(&h, s + t).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        }
    }

    #[test]
    fn herm_expm_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(herm_expm(&m, 1.0), Err(Error::Validation(_))));
    }

    #[test]
    fn eigh_reconstructs_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let h = random_hermitian(&mut rng, 6);
        let (eigs, v) = eigh(&h).unwrap();
        let d = ComplexMatrix::diag(
            &eigs
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        );
        let rec = v.mul(&d).mul(&v.adjoint());
        assert!(rec.max_abs_diff(&h) < 1e-12);
        assert!(v.unitarity_error() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = random_matrix(&mut rng, 2);
        let mut b = random_matrix(&mut rng, 3);
        // normalize trace(b) = 1
        let tb = b.trace();
        b = b.scale(Complex64::new(1.0, 0.0) / tb);
        let t = tensor(&a, &b).unwrap();
        let red = partial_trace(&t, &[2, 3], &[0]).unwrap();
        assert!(red.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        // (|00> + |11>)/sqrt(2)
        let mut rho = ComplexMatrix::zeros(4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                rho.set(i, j, Complex64::new(0.5, 0.0));
            }
        }
        for keep in [&[0usize][..], &[1usize][..]] {
            let red = partial_trace(&rho, &[2, 2], keep).unwrap();
            let half = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
            assert!(red.max_abs_diff(&half) < 1e-15);
        }
    }

    // Independent index-summation oracle for a 4x4 two-qubit trace over factor 1.
    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let rho = random_matrix(&mut rng, 4);
        let red = partial_trace(&rho, &[2, 2], &[0]).unwrap();
        let mut oracle = ComplexMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                let mut s = I0;
                for k in 0..2 {
                    s += rho.get(i * 2 + k, j * 2 + k);
                }
                oracle.set(i, j, s);
            }
        }
        assert!(red.max_abs_diff(&oracle) < 1e-15);
        assert!((red.trace() - rho.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_dims_mismatch() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn partial_trace_of_tensor_scales_by_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = random_matrix(&mut rng, 3);
        let b = random_matrix(&mut rng, 2);
        let t = tensor(&a, &b).unwrap();
        let red = partial_trace(&t, &[3, 2], &[0]).unwrap();
        assert!(red.max_abs_diff(&a.scale(b.trace())) < 1e-12);
    }

    #[test]
    fn embed_matches_explicit_tensor() {
        let x = ComplexMatrix::pauli_x();
        let dims = [2usize, 2, 3];
        let e = embed(&x, &dims, &[1]).unwrap();
        let explicit =
            tensor_all(&[&ComplexMatrix::identity(2), &x, &ComplexMatrix::identity(3)]).unwrap();
        assert!(e.max_abs_diff(&explicit) < 1e-15);
    }

    #[test]
    fn embed_two_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let u = random_matrix(&mut rng, 4);
        let dims = [2usize, 2, 2];
        let e = embed(&u, &dims, &[0, 1]).unwrap();
        let explicit = tensor(&u, &ComplexMatrix::identity(2)).unwrap();
        assert!(e.max_abs_diff(&explicit) < 1e-15);
    }
}
