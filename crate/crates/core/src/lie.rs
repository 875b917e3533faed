//! Matrix Lie algebra machinery: spans, brackets, centralizers, involution
//! eigenspaces and structural series.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, flatten, frobenius, nullspace, orthonormal_span, orthonormal_span_floor, stack,
    sup, unflatten, Mat, Vector,
};
use crate::model::{CharacteristicElement, SymplecticModel};
use crate::tol;

/// `XY - YX`.
pub fn bracket(x: &Mat, y: &Mat) -> Result<Mat> {
    if x.shape() != y.shape() || x.nrows() != x.ncols() {
        return Err(Error::Dimension {
            expected: x.nrows(),
            found: y.nrows(),
        });
    }
    Ok(commutator(x, y))
}

/// Singular values below this are treated as zero when spanning sets of
/// unit-scale matrices.
const SPAN_FLOOR: f64 = 1e-11;

/// A linear subspace of `gl(d)`, optionally taken modulo a set of central
/// directions (the quotient is realized on the Frobenius-orthogonal
/// complement of those directions).
#[derive(Clone, Debug)]
pub struct MatrixLieSubspace {
    pub ambient_dim: usize,
    pub basis: Vec<Mat>,
    /// Tolerance for span membership and closure.
    pub tol: f64,
    quotient: Vec<Mat>,
    ortho: Mat,
}

impl MatrixLieSubspace {
    /// Keep the given basis; fails if it is numerically dependent.
    pub fn from_basis(ambient_dim: usize, basis: Vec<Mat>, tol: f64) -> Result<Self> {
        Self::from_basis_mod(ambient_dim, basis, &[], tol)
    }

    /// Keep the given basis reduced modulo `quotient`.
    pub fn from_basis_mod(
        ambient_dim: usize,
        basis: Vec<Mat>,
        quotient: &[Mat],
        tol: f64,
    ) -> Result<Self> {
        for b in &basis {
            if b.nrows() != ambient_dim || b.ncols() != ambient_dim {
                return Err(Error::Dimension {
                    expected: ambient_dim,
                    found: b.nrows(),
                });
            }
        }
        let q = orthonormalize(ambient_dim, quotient);
        let reduced: Vec<Mat> = basis.iter().map(|b| reduce_by(&q, b)).collect();
        let ortho = orthonormal_span(&stack_or_empty(ambient_dim, &reduced), tol::RANK_REL);
        if ortho.ncols() != reduced.len() {
            return Err(Error::RankDeficient {
                what: "subspace basis".into(),
                expected: reduced.len(),
                found: ortho.ncols(),
            });
        }
        Ok(MatrixLieSubspace {
            ambient_dim,
            basis: reduced,
            tol,
            quotient: q,
            ortho,
        })
    }

    /// Orthonormal basis of the span of `mats`, dropping dependent directions.
    pub fn span_of(ambient_dim: usize, mats: &[Mat], tol: f64) -> Self {
        Self::span_of_mod(ambient_dim, mats, &[], tol)
    }

    pub fn span_of_mod(ambient_dim: usize, mats: &[Mat], quotient: &[Mat], tol: f64) -> Self {
        let q = orthonormalize(ambient_dim, quotient);
        let reduced: Vec<Mat> = mats.iter().map(|b| reduce_by(&q, b)).collect();
        // Brackets that vanish exactly in theory come back as rounding noise;
        // the absolute floor keeps them out of the span.
        let ortho = orthonormal_span_floor(
            &stack_or_empty(ambient_dim, &reduced),
            tol::RANK_REL,
            SPAN_FLOOR,
        );
        let basis = (0..ortho.ncols())
            .map(|j| unflatten(&ortho.column(j).into_owned(), ambient_dim, ambient_dim))
            .collect();
        MatrixLieSubspace {
            ambient_dim,
            basis,
            tol,
            quotient: q,
            ortho,
        }
    }

    pub fn zero(ambient_dim: usize, tol: f64) -> Self {
        Self::span_of(ambient_dim, &[], tol)
    }

    /// The same span taken modulo additional central directions.
    pub fn modulo(&self, quotient: &[Mat]) -> Self {
        let mut all = self.quotient.clone();
        all.extend(quotient.iter().cloned());
        Self::span_of_mod(self.ambient_dim, &self.basis, &all, self.tol)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn quotient(&self) -> &[Mat] {
        &self.quotient
    }

    /// Remove the quotient directions.
    pub fn reduce(&self, m: &Mat) -> Mat {
        reduce_by(&self.quotient, m)
    }

    /// Sup-norm distance of `m` (modulo the quotient) to the span.
    pub fn distance(&self, m: &Mat) -> f64 {
        let r = flatten(&self.reduce(m));
        if self.ortho.ncols() == 0 {
            return sup(r.iter());
        }
        let res = &r - &self.ortho * (self.ortho.transpose() * &r);
        sup(res.iter())
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.distance(m) <= self.tol * sup(m.iter()).max(1.0)
    }

    /// Coefficients of `m` (modulo the quotient) in `basis`.
    pub fn coords(&self, m: &Mat) -> Vector {
        crate::linalg::least_squares(
            &stack_or_empty(self.ambient_dim, &self.basis),
            &flatten(&self.reduce(m)),
        )
    }

    /// `Σ cᵢ bᵢ`.
    pub fn combine(&self, c: &Vector) -> Mat {
        let mut out = Mat::zeros(self.ambient_dim, self.ambient_dim);
        for (ci, b) in c.iter().zip(&self.basis) {
            out += b * *ci;
        }
        out
    }

    /// Whether every element of `other` lies in this span.
    pub fn contains_subspace(&self, other: &MatrixLieSubspace) -> f64 {
        other
            .basis
            .iter()
            .map(|b| self.distance(b))
            .fold(0.0, f64::max)
    }

    /// Span of the union of two subspaces (same quotient as `self`).
    pub fn sum(&self, other: &MatrixLieSubspace) -> Self {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span_of_mod(self.ambient_dim, &all, &self.quotient, self.tol)
    }
}

fn stack_or_empty(d: usize, mats: &[Mat]) -> Mat {
    if mats.is_empty() {
        Mat::zeros(d * d, 0)
    } else {
        stack(mats)
    }
}

fn orthonormalize(d: usize, mats: &[Mat]) -> Vec<Mat> {
    let q = orthonormal_span(&stack_or_empty(d, mats), tol::RANK_REL);
    (0..q.ncols())
        .map(|j| unflatten(&q.column(j).into_owned(), d, d))
        .collect()
}

fn reduce_by(q: &[Mat], m: &Mat) -> Mat {
    let mut r = m.clone();
    for e in q {
        r -= e * frobenius(e, m);
    }
    r
}

/// The centralizer `g₁ = {X ∈ sp(Ω) : XA = AX}` as the kernel of the linear
/// map `X ↦ (ᵗXΩ + ΩX, XA - AX)`.
pub fn centralizer_in_sp(model: &SymplecticModel, a: &CharacteristicElement) -> MatrixLieSubspace {
    let d = model.ambient_dim();
    let mut m = Mat::zeros(2 * d * d, d * d);
    for idx in 0..d * d {
        let mut e = Mat::zeros(d, d);
        e[(idx % d, idx / d)] = 1.0;
        let sp = e.transpose() * &model.omega + &model.omega * &e;
        let comm = &e * &a.a - &a.a * &e;
        let col = m.column_mut(idx);
        let mut col = col;
        col.rows_mut(0, d * d).copy_from(&flatten(&sp));
        col.rows_mut(d * d, d * d).copy_from(&flatten(&comm));
    }
    let kernel = nullspace(&m, tol::RANK_REL);
    let basis: Vec<Mat> = (0..kernel.ncols())
        .map(|j| unflatten(&kernel.column(j).into_owned(), d, d))
        .collect();
    MatrixLieSubspace::span_of(d, &basis, tol::ALGEBRAIC)
}

/// Largest distance of a pairwise bracket of basis elements from the span.
pub fn closure_residual(s: &MatrixLieSubspace) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..s.dim() {
        for j in i + 1..s.dim() {
            worst = worst.max(s.distance(&commutator(&s.basis[i], &s.basis[j])));
        }
    }
    worst
}

/// Matrix of a linear map of `s` into itself in the basis coordinates;
/// fails if the image leaves the span.
pub fn restricted_matrix(s: &MatrixLieSubspace, map: &dyn Fn(&Mat) -> Mat) -> Result<Mat> {
    let k = s.dim();
    let mut t = Mat::zeros(k, k);
    let mut worst: f64 = 0.0;
    for (j, b) in s.basis.iter().enumerate() {
        let img = map(b);
        worst = worst.max(s.distance(&img) / sup(b.iter()).max(1.0));
        t.set_column(j, &s.coords(&img));
    }
    if worst > s.tol.max(tol::ALGEBRAIC) {
        return Err(Error::NotClosed(worst));
    }
    Ok(t)
}

/// The `sign`-eigenspace of an involution `θ` of `s`.
pub fn involution_eigenspace(
    s: &MatrixLieSubspace,
    theta: &dyn Fn(&Mat) -> Mat,
    sign: f64,
) -> Result<MatrixLieSubspace> {
    let t = restricted_matrix(s, theta).map_err(|e| match e {
        Error::NotClosed(r) => Error::NotInvolutive(r),
        other => other,
    })?;
    let k = s.dim();
    let sq = sup((&t * &t - Mat::identity(k, k)).iter());
    if sq > 1e-8 {
        return Err(Error::NotInvolutive(sq));
    }
    let kernel = nullspace(&(t - Mat::identity(k, k) * sign), tol::RANK_REL);
    let mats: Vec<Mat> = (0..kernel.ncols())
        .map(|j| s.combine(&kernel.column(j).into_owned()))
        .collect();
    Ok(MatrixLieSubspace::span_of_mod(
        s.ambient_dim,
        &mats,
        s.quotient(),
        s.tol,
    ))
}

/// Span of all brackets `[X, Y]`, `X ∈ s1`, `Y ∈ s2`, modulo the quotient of `s1`.
pub fn bracket_span(s1: &MatrixLieSubspace, s2: &MatrixLieSubspace) -> Result<MatrixLieSubspace> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(Error::Dimension {
            expected: s1.ambient_dim,
            found: s2.ambient_dim,
        });
    }
    let mut br = Vec::with_capacity(s1.dim() * s2.dim());
    for x in &s1.basis {
        for y in &s2.basis {
            br.push(commutator(x, y));
        }
    }
    Ok(MatrixLieSubspace::span_of_mod(
        s1.ambient_dim,
        &br,
        s1.quotient(),
        s1.tol,
    ))
}

/// Derived and lower central series, center and structural flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCertificate {
    pub dimension: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub abelian: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub heisenberg: bool,
}

fn series(s: &MatrixLieSubspace, lower: bool) -> Result<(Vec<usize>, MatrixLieSubspace)> {
    let mut dims = vec![s.dim()];
    let mut cur = s.clone();
    loop {
        let next = if lower {
            bracket_span(s, &cur)?
        } else {
            bracket_span(&cur, &cur)?
        };
        if next.dim() == cur.dim() {
            return Ok((dims, cur));
        }
        dims.push(next.dim());
        if next.dim() == 0 {
            return Ok((dims, next));
        }
        cur = next;
    }
}

/// Center of a closed subspace, as the kernel of `c ↦ Σ cᵢ[bᵢ, b_j]`.
pub fn center(s: &MatrixLieSubspace) -> MatrixLieSubspace {
    let k = s.dim();
    let d = s.ambient_dim;
    let mut m = Mat::zeros(k * d * d, k);
    for i in 0..k {
        for j in 0..k {
            let c = flatten(&s.reduce(&commutator(&s.basis[i], &s.basis[j])));
            m.view_mut((j * d * d, i), (d * d, 1)).copy_from(&c);
        }
    }
    let kernel = nullspace(&m, tol::RANK_REL);
    let mats: Vec<Mat> = (0..kernel.ncols())
        .map(|j| s.combine(&kernel.column(j).into_owned()))
        .collect();
    MatrixLieSubspace::span_of_mod(d, &mats, s.quotient(), s.tol)
}

/// Structural certificate of a bracket-closed subspace.
pub fn series_certificate(s: &MatrixLieSubspace) -> Result<StructureCertificate> {
    let closure = closure_residual(s);
    if closure > s.tol.max(tol::CLOSURE) {
        return Err(Error::NotClosed(closure));
    }
    let (derived, _) = series(s, false)?;
    let (lower, _) = series(s, true)?;
    let z = center(s);
    let first_derived = bracket_span(s, s)?;
    let abelian = first_derived.dim() == 0;
    let solvable = derived.last() == Some(&0);
    let nilpotent = lower.last() == Some(&0);
    let heisenberg = z.dim() == 1
        && first_derived.dim() == 1
        && z.contains_subspace(&first_derived) <= s.tol.max(tol::ALGEBRAIC)
        && heisenberg_form_nondegenerate(s, &z);
    Ok(StructureCertificate {
        dimension: s.dim(),
        derived_series_dims: derived,
        lower_central_dims: lower,
        center_dim: z.dim(),
        abelian,
        solvable,
        nilpotent,
        heisenberg,
    })
}

/// The form `(X, Y) ↦ ⟨[X, Y], z⟩` on a complement of the one-dimensional
/// center must be nondegenerate.
fn heisenberg_form_nondegenerate(s: &MatrixLieSubspace, z: &MatrixLieSubspace) -> bool {
    let zed = &z.basis[0];
    let zz = frobenius(zed, zed);
    // Complement of the center inside s.
    let k = s.dim();
    let zc = s.coords(zed);
    let mut proj = Mat::zeros(1, k);
    proj.set_row(0, &zc.transpose());
    let comp = nullspace(&proj, tol::RANK_REL);
    let w: Vec<Mat> = (0..comp.ncols())
        .map(|j| s.combine(&comp.column(j).into_owned()))
        .collect();
    let m = w.len();
    let mut form = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            form[(i, j)] = frobenius(&s.reduce(&commutator(&w[i], &w[j])), zed) / zz;
        }
    }
    m > 0 && crate::linalg::rank(&form, tol::RANK_REL) == m
}

/// Matrix of `ad X` on `s`.
pub fn ad_matrix(s: &MatrixLieSubspace, x: &Mat) -> Result<Mat> {
    restricted_matrix(s, &|b: &Mat| commutator(x, b))
}

/// Eigenvalues of `ad X` on `s` (complex), sorted by real then imaginary part.
pub fn ad_spectrum(s: &MatrixLieSubspace, x: &Mat) -> Result<Vec<Complex<f64>>> {
    let t = ad_matrix(s, x)?;
    let mut ev = eigenvalues(&t)?;
    ev.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(ev)
}

/// Complex eigenvalues of a square matrix.
pub fn eigenvalues(t: &Mat) -> Result<Vec<Complex<f64>>> {
    let scale = sup(t.iter());
    if scale == 0.0 {
        return Ok(vec![Complex::new(0.0, 0.0); t.nrows()]);
    }
    let f = faer::Mat::from_fn(t.nrows(), t.ncols(), |i, j| t[(i, j)] / scale);
    let ev = f
        .eigenvalues()
        .map_err(|e| Error::Defective(format!("eigenvalue iteration failed: {e:?}")))?;
    Ok(ev
        .iter()
        .map(|z| Complex::new(z.re, z.im) * scale)
        .collect())
}

/// One real eigenvalue of `ad X` and its eigenspace.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub eigenvalue: f64,
    pub space: MatrixLieSubspace,
}

/// Real eigen-decomposition of `ad X` on `s`, grouped by eigenvalue.
pub fn ad_eigenspaces(s: &MatrixLieSubspace, x: &Mat) -> Result<Vec<Eigenspace>> {
    let t = ad_matrix(s, x)?;
    let k = s.dim();
    let ev = ad_spectrum(s, x)?;
    if let Some(bad) = ev.iter().find(|z| z.im.abs() > tol::CLUSTER) {
        return Err(Error::Defective(format!(
            "complex eigenvalue {} + {}i",
            bad.re, bad.im
        )));
    }
    let mut values: Vec<f64> = ev.iter().map(|z| z.re).collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match clusters.last_mut() {
            Some(c) if (v - c[c.len() - 1]).abs() <= tol::CLUSTER => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    let mut out = Vec::new();
    let mut total = 0;
    for c in clusters {
        let lambda = c.iter().sum::<f64>() / c.len() as f64;
        let kernel = nullspace(&(&t - Mat::identity(k, k) * lambda), 1e-6);
        if kernel.ncols() != c.len() {
            return Err(Error::Defective(format!(
                "eigenvalue {lambda} has algebraic multiplicity {} but geometric multiplicity {}",
                c.len(),
                kernel.ncols()
            )));
        }
        total += kernel.ncols();
        let mats: Vec<Mat> = (0..kernel.ncols())
            .map(|j| s.combine(&kernel.column(j).into_owned()))
            .collect();
        out.push(Eigenspace {
            eigenvalue: lambda,
            space: MatrixLieSubspace::span_of_mod(s.ambient_dim, &mats, s.quotient(), s.tol),
        });
    }
    if total != k {
        return Err(Error::Defective(format!(
            "eigenspaces span {total} of {k} dimensions"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(d, d);
        m[(i, j)] = 1.0;
        m
    }

    #[test]
    fn bracket_basics() {
        let x = Mat::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let y = Mat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 2.0]);
        assert_eq!(bracket(&x, &x).unwrap(), Mat::zeros(2, 2));
        assert_eq!(bracket(&x, &y).unwrap(), -bracket(&y, &x).unwrap());
        assert!(bracket(&x, &Mat::zeros(3, 3)).is_err());
    }

    #[test]
    fn closure_examples() {
        let line = MatrixLieSubspace::from_basis(2, vec![e(2, 0, 1)], 1e-9).unwrap();
        assert_eq!(closure_residual(&line), 0.0);
        let pair = MatrixLieSubspace::from_basis(2, vec![e(2, 0, 1), e(2, 1, 0)], 1e-9).unwrap();
        assert!(closure_residual(&pair) > 0.5);
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(
            MatrixLieSubspace::from_basis(2, vec![e(2, 0, 1), e(2, 0, 1) * 2.0], 1e-9).is_err()
        );
    }

    #[test]
    fn heisenberg_three() {
        let s = MatrixLieSubspace::from_basis(3, vec![e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)], 1e-9)
            .unwrap();
        let c = series_certificate(&s).unwrap();
        assert!(
            c.heisenberg && c.nilpotent && c.solvable && !c.abelian,
            "{c:?}"
        );
        assert_eq!(c.center_dim, 1);
        assert_eq!(c.derived_series_dims, vec![3, 1, 0]);
    }

    #[test]
    fn sl2_not_solvable() {
        let h = Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let s = MatrixLieSubspace::from_basis(2, vec![h, e(2, 0, 1), e(2, 1, 0)], 1e-9).unwrap();
        let c = series_certificate(&s).unwrap();
        assert!(!c.solvable && !c.heisenberg);
        assert_eq!(c.derived_series_dims, vec![3]);
        assert_eq!(c.center_dim, 0);
    }

    #[test]
    fn ad_of_central_element() {
        let s = MatrixLieSubspace::from_basis(3, vec![e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)], 1e-9)
            .unwrap();
        let spaces = ad_eigenspaces(&s, &e(3, 0, 2)).unwrap();
        assert_eq!(spaces.len(), 1);
        assert!(spaces[0].eigenvalue.abs() < 1e-12);
    }
}
