//! Dense linear algebra helpers on top of nalgebra. Singular value
//! decompositions go through faer: nalgebra's SVD returns inaccurate factors
//! for some rank-deficient stacks of commutators.

use nalgebra::{DMatrix, DVector};

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Largest absolute entry.
pub fn sup<'a>(values: impl IntoIterator<Item = &'a f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_nan() {
            f64::NAN
        } else {
            acc.max(v.abs())
        }
    })
}

/// The bilinear form `xᵀ Ω y`.
pub fn form(omega: &Mat, x: &Vector, y: &Vector) -> f64 {
    x.dot(&(omega * y))
}

/// `[[0, I_m], [-I_m, 0]]`.
pub fn standard_omega(m: usize) -> Mat {
    let mut o = Mat::zeros(2 * m, 2 * m);
    for i in 0..m {
        o[(i, m + i)] = 1.0;
        o[(m + i, i)] = -1.0;
    }
    o
}

/// `diag(I_p, -I_q)`.
pub fn signature(p: usize, q: usize) -> Mat {
    Mat::from_diagonal(&Vector::from_iterator(
        p + q,
        (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }),
    ))
}

pub fn unit(d: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(d);
    v[i] = 1.0;
    v
}

pub fn commutator(x: &Mat, y: &Mat) -> Mat {
    x * y - y * x
}

/// `ᵗXΩ + ΩX`, zero exactly when `X ∈ sp(Ω)`.
pub fn sp_defect(omega: &Mat, x: &Mat) -> Mat {
    x.transpose() * omega + omega * x
}

/// `ᵗgΩg - Ω`, zero exactly when `g ∈ Sp(Ω)`.
pub fn symplectic_defect(omega: &Mat, g: &Mat) -> Mat {
    g.transpose() * omega * g - omega
}

fn to_faer(m: &Mat) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, f64>) -> Mat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// SVD `(σ, U, V)` with `σ` descending. The thin form keeps `min(rows, cols)`
/// columns in `U` and `V`.
fn svd(m: &Mat, thin: bool) -> (Vec<f64>, Mat, Mat) {
    let f = to_faer(m);
    let svd = if thin { f.thin_svd() } else { f.svd() }.expect("SVD of a finite matrix converges");
    let s = svd.S().column_vector().iter().copied().collect();
    (s, from_faer(svd.U()), from_faer(svd.V()))
}

fn cutoff(singular: &[f64], rel_tol: f64) -> f64 {
    let smax = singular.iter().copied().fold(0.0, f64::max);
    rel_tol * smax
}

/// Orthonormal basis (as columns) of the kernel of `m`. Singular values at or
/// below `rel_tol · σ_max` count as zero.
pub fn nullspace(m: &Mat, rel_tol: f64) -> Mat {
    let cols = m.ncols();
    if cols == 0 {
        return Mat::zeros(0, 0);
    }
    if m.nrows() == 0 || sup(m.iter()) == 0.0 {
        return Mat::identity(cols, cols);
    }
    let (s, _, v) = svd(m, m.nrows() >= cols);
    let thr = cutoff(&s, rel_tol);
    // Columns of V beyond the number of singular values span part of the kernel.
    let keep: Vec<usize> = (0..cols).filter(|&i| i >= s.len() || s[i] <= thr).collect();
    let mut out = Mat::zeros(cols, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &v.column(i));
    }
    out
}

/// Singular values of `m` in descending order.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    to_faer(m)
        .singular_values()
        .expect("SVD of a finite matrix converges")
}

/// Numerical rank with the relative cutoff.
pub fn rank(m: &Mat, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&smax) if smax > 0.0 => s.iter().filter(|&&v| v > rel_tol * smax).count(),
        _ => 0,
    }
}

/// Orthonormal basis (as columns) of the column span of `m`.
pub fn orthonormal_span(m: &Mat, rel_tol: f64) -> Mat {
    orthonormal_span_floor(m, rel_tol, 0.0)
}

/// As [`orthonormal_span`], also dropping singular values at or below `abs_floor`.
pub fn orthonormal_span_floor(m: &Mat, rel_tol: f64, abs_floor: f64) -> Mat {
    let rows = m.nrows();
    if m.ncols() == 0 || sup(m.iter()) == 0.0 {
        return Mat::zeros(rows, 0);
    }
    let (s, u, _) = svd(m, true);
    let thr = cutoff(&s, rel_tol).max(abs_floor);
    let keep: Vec<usize> = (0..s.len()).filter(|&i| s[i] > thr).collect();
    let mut out = Mat::zeros(rows, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &u.column(i));
    }
    out
}

/// Sup-norm distance from `v` to the span of the orthonormal columns `q`.
pub fn distance_to_span(q: &Mat, v: &Vector) -> f64 {
    if q.ncols() == 0 {
        return sup(v.iter());
    }
    let r = v - q * (q.transpose() * v);
    sup(r.iter())
}

/// Least-squares coefficients of `v` in the (not necessarily orthonormal)
/// columns of `basis`.
pub fn least_squares(basis: &Mat, v: &Vector) -> Vector {
    if basis.ncols() == 0 {
        return Vector::zeros(0);
    }
    let (s, u, w) = svd(basis, true);
    let thr = cutoff(&s, 1e-14);
    let mut out = Vector::zeros(basis.ncols());
    for (i, &si) in s.iter().enumerate().filter(|(_, &si)| si > thr) {
        out += w.column(i) * (u.column(i).dot(v) / si);
    }
    out
}

/// Column-major flattening.
pub fn flatten(m: &Mat) -> Vector {
    Vector::from_column_slice(m.as_slice())
}

pub fn unflatten(v: &Vector, rows: usize, cols: usize) -> Mat {
    Mat::from_column_slice(rows, cols, v.as_slice())
}

/// Stack flattened matrices as columns.
pub fn stack(mats: &[Mat]) -> Mat {
    match mats.first() {
        None => Mat::zeros(0, 0),
        Some(first) => {
            let len = first.len();
            let mut out = Mat::zeros(len, mats.len());
            for (j, m) in mats.iter().enumerate() {
                out.set_column(j, &flatten(m));
            }
            out
        }
    }
}

pub fn expm(m: &Mat) -> Mat {
    m.clone().exp()
}

/// Frobenius inner product.
pub fn frobenius(a: &Mat, b: &Mat) -> f64 {
    a.dot(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = Mat::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = nullspace(&m, 1e-9);
        assert_eq!(k.ncols(), 2);
        assert!(sup((&m * &k).iter()) < 1e-14);
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        assert_eq!(nullspace(&Mat::zeros(2, 4), 1e-9).ncols(), 4);
    }

    #[test]
    fn rank_and_span() {
        let m = Mat::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0]);
        assert_eq!(rank(&m, 1e-9), 2);
        let q = orthonormal_span(&m, 1e-9);
        assert_eq!(q.ncols(), 2);
        assert!(distance_to_span(&q, &Vector::from_vec(vec![1.0, 2.0, 0.0])) < 1e-12);
        assert!(distance_to_span(&q, &Vector::from_vec(vec![2.0, -1.0, 0.0])) > 0.1);
    }

    #[test]
    fn standard_omega_is_antisymmetric_and_squares_to_minus_one() {
        let o = standard_omega(3);
        assert_eq!(o.transpose(), -&o);
        assert_eq!(&o * &o, -Mat::identity(6, 6));
    }

    #[test]
    fn least_squares_recovers_coefficients() {
        let b = Mat::from_row_slice(3, 2, &[1.0, 0.0, 1.0, 1.0, 0.0, 2.0]);
        let v = &b * Vector::from_vec(vec![0.5, -1.5]);
        let c = least_squares(&b, &v);
        assert!((c[0] - 0.5).abs() < 1e-13 && (c[1] + 1.5).abs() < 1e-13);
    }
}
