//! Iwasawa decomposition of `su(1, n)` inside the elliptic `p = 1` model and
//! the solvable subalgebras `h_φ = {X + φ(X)} ⊕ n` twisted by a torus of `m`.

use crate::error::{Error, Result};
use crate::lie::{
    ad_eigenspaces, ad_spectrum, closure_residual, series_certificate, MatrixLieSubspace,
};
use crate::linalg::{commutator, nullspace, signature, stack, sup, Mat};
use crate::model::{build_model, Case, CharacteristicElement, SymplecticModel};
use crate::report::CertificateReport;
use crate::tol;

/// A complex matrix as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMat {
    pub re: Mat,
    pub im: Mat,
}

impl ComplexMat {
    pub fn zeros(n: usize) -> Self {
        ComplexMat {
            re: Mat::zeros(n, n),
            im: Mat::zeros(n, n),
        }
    }
}

/// `M ↦ [[Re M, -Im M·I], [I·Im M, I·Re M·I]]` with `I = I_{p,q}`; a Lie
/// algebra map from `gl(N, ℂ)` into real `2N × 2N` matrices matching the
/// elliptic basis, where `i·Id` goes to `A / k`.
pub fn realify(m: &ComplexMat, p: usize) -> Result<Mat> {
    let big_n = m.re.nrows();
    if p > big_n || m.re.ncols() != big_n || m.im.shape() != m.re.shape() {
        return Err(Error::invalid(
            "realify needs square blocks of equal size and p <= N",
        ));
    }
    let s = signature(p, big_n - p);
    let mut out = Mat::zeros(2 * big_n, 2 * big_n);
    out.view_mut((0, 0), (big_n, big_n)).copy_from(&m.re);
    out.view_mut((0, big_n), (big_n, big_n))
        .copy_from(&(-&m.im * &s));
    out.view_mut((big_n, 0), (big_n, big_n))
        .copy_from(&(&s * &m.im));
    out.view_mut((big_n, big_n), (big_n, big_n))
        .copy_from(&(&s * &m.re * &s));
    Ok(out)
}

/// Basis of `su(1, n)`: the compact part `{diag(-tr D, D) : D ∈ u(n)}`
/// followed by the `2n` off-diagonal directions.
pub fn su1n_basis(n: usize) -> (Vec<ComplexMat>, Vec<ComplexMat>) {
    let big_n = n + 1;
    let mut compact = Vec::new();
    for j in 0..n {
        let mut m = ComplexMat::zeros(big_n);
        m.im[(j + 1, j + 1)] = 1.0;
        m.im[(0, 0)] = -1.0;
        compact.push(m);
    }
    for j in 0..n {
        for l in j + 1..n {
            let mut m = ComplexMat::zeros(big_n);
            m.re[(j + 1, l + 1)] = 1.0;
            m.re[(l + 1, j + 1)] = -1.0;
            compact.push(m);
            let mut m = ComplexMat::zeros(big_n);
            m.im[(j + 1, l + 1)] = 1.0;
            m.im[(l + 1, j + 1)] = 1.0;
            compact.push(m);
        }
    }
    let mut off = Vec::new();
    for j in 0..n {
        let mut m = ComplexMat::zeros(big_n);
        m.re[(0, j + 1)] = 1.0;
        m.re[(j + 1, 0)] = 1.0;
        off.push(m);
        let mut m = ComplexMat::zeros(big_n);
        m.im[(0, j + 1)] = -1.0;
        m.im[(j + 1, 0)] = 1.0;
        off.push(m);
    }
    (compact, off)
}

/// `su(1, n) = k ⊕ a ⊕ n` realified in the elliptic `p = 1` model.
#[derive(Clone, Debug)]
pub struct IwasawaData {
    pub model: SymplecticModel,
    pub a_elem: CharacteristicElement,
    pub su: MatrixLieSubspace,
    pub k: MatrixLieSubspace,
    /// Generator of the one-dimensional `a`.
    pub a_gen: Mat,
    /// Centralizer of `a` in `k`.
    pub m: MatrixLieSubspace,
    /// Sum of the positive eigenspaces of `ad(a_gen)`.
    pub n_plus: MatrixLieSubspace,
    /// Eigenvalues of `ad(a_gen)` with multiplicities.
    pub ad_a_eigenvalues: Vec<(f64, usize)>,
}

pub fn iwasawa_su1n(n: usize, k: f64) -> Result<IwasawaData> {
    let (model, a_elem) = build_model(Case::Elliptic { k, p: 1 }, n)?;
    let d = model.ambient_dim();
    let (compact, off) = su1n_basis(n);
    let real = |v: &[ComplexMat]| {
        v.iter()
            .map(|m| realify(m, 1))
            .collect::<Result<Vec<Mat>>>()
    };
    let k_mats = real(&compact)?;
    let off_mats = real(&off)?;
    let mut all = k_mats.clone();
    all.extend(off_mats.iter().cloned());
    let su = MatrixLieSubspace::from_basis(d, all, tol::ALGEBRAIC)?;
    let k_space = MatrixLieSubspace::from_basis(d, k_mats, tol::ALGEBRAIC)?;
    let a_gen = off_mats[0].clone();

    let spaces = ad_eigenspaces(&su, &a_gen)?;
    let mut ad_a_eigenvalues: Vec<(f64, usize)> = spaces
        .iter()
        .map(|s| (s.eigenvalue, s.space.dim()))
        .collect();
    ad_a_eigenvalues.sort_by(|x, y| x.0.total_cmp(&y.0));
    let pos: Vec<Mat> = spaces
        .iter()
        .filter(|s| s.eigenvalue > tol::CLUSTER)
        .flat_map(|s| s.space.basis.iter().cloned())
        .collect();
    let n_plus = MatrixLieSubspace::span_of(d, &pos, tol::ALGEBRAIC);

    let images: Vec<Mat> = k_space
        .basis
        .iter()
        .map(|b| commutator(&a_gen, b))
        .collect();
    let kernel = nullspace(&stack(&images), tol::RANK_REL);
    let m_mats: Vec<Mat> = (0..kernel.ncols())
        .map(|j| k_space.combine(&kernel.column(j).into_owned()))
        .collect();
    let m = MatrixLieSubspace::span_of(d, &m_mats, tol::ALGEBRAIC);
    Ok(IwasawaData {
        model,
        a_elem,
        su,
        k: k_space,
        a_gen,
        m,
        n_plus,
        ad_a_eigenvalues,
    })
}

/// `φ(a_gen) = realify(diag(-½Σθ, -½Σθ, iθ₁ … iθ_{n-1}))`, purely imaginary.
pub fn torus_generator(n: usize, theta: &[f64]) -> Result<Mat> {
    if theta.len() + 1 != n {
        return Err(Error::Dimension {
            expected: n - 1,
            found: theta.len(),
        });
    }
    let mut m = ComplexMat::zeros(n + 1);
    let half = -0.5 * theta.iter().sum::<f64>();
    m.im[(0, 0)] = half;
    m.im[(1, 1)] = half;
    for (j, t) in theta.iter().enumerate() {
        m.im[(j + 2, j + 2)] = *t;
    }
    realify(&m, 1)
}

/// The twisted solvable algebra and its checks.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    pub a_phi: Mat,
    pub h_phi: MatrixLieSubspace,
    pub report: CertificateReport,
}

fn sorted_spectrum(s: &MatrixLieSubspace, x: &Mat) -> Result<Vec<(f64, f64)>> {
    let mut v: Vec<(f64, f64)> = ad_spectrum(s, x)?.iter().map(|c| (c.re, c.im)).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(v)
}

/// `h_φ = ℝ(a_gen + φ) ⊕ n` for `φ = torus_generator(θ)`.
pub fn build_a_phi(data: &IwasawaData, theta: &[f64]) -> Result<TwistedAlgebra> {
    let n = data.model.n;
    let d = data.model.ambient_dim();
    let phi = torus_generator(n, theta)?;
    let mut rep = CertificateReport::new("iwasawa-twist");
    rep.set_config("theta", format!("{theta:?}"));
    rep.residual("phi_in_m", data.m.distance(&phi), tol::ALGEBRAIC);
    rep.residual(
        "phi_commutes_with_a",
        sup(commutator(&phi, &data.a_gen).iter()),
        tol::ALGEBRAIC,
    );
    let a_phi = &data.a_gen + &phi;
    let norm_worst = data
        .n_plus
        .basis
        .iter()
        .map(|b| data.n_plus.distance(&commutator(&a_phi, b)))
        .fold(0.0, f64::max);
    rep.residual("a_phi_normalizes_n", norm_worst, tol::ALGEBRAIC);
    let mut gens = vec![a_phi.clone()];
    gens.extend(data.n_plus.basis.iter().cloned());
    let h_phi = MatrixLieSubspace::from_basis(d, gens, tol::ALGEBRAIC)?;
    rep.dimension("dim_h_phi", h_phi.dim(), 2 * n);
    rep.residual("h_phi_closure", closure_residual(&h_phi), tol::CLOSURE);
    rep.flag("h_phi_solvable", series_certificate(&h_phi)?.solvable, true);
    let in_g1 = h_phi
        .basis
        .iter()
        .map(|b| crate::geometry::chart::algebra_centralizer_defect(&data.model, &data.a_elem, b))
        .fold(0.0, f64::max);
    rep.residual("h_phi_in_centralizer", in_g1, tol::ALGEBRAIC);

    let twisted = sorted_spectrum(&data.n_plus, &a_phi)?;
    let plain = sorted_spectrum(&data.n_plus, &data.a_gen)?;
    let gap = twisted
        .iter()
        .zip(&plain)
        .map(|(x, y)| (x.0 - y.0).abs().max((x.1 - y.1).abs()))
        .fold(0.0, f64::max);
    rep.note(format!(
        "ad(a_phi) spectrum on n: {}",
        twisted
            .iter()
            .map(|(r, i)| format!("{r:.4}{i:+.4}i"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if theta.iter().any(|t| t.abs() > tol::CLUSTER) {
        rep.exceeds("spectrum_differs_from_untwisted", gap, tol::CLUSTER);
    }
    Ok(TwistedAlgebra {
        a_phi,
        h_phi,
        report: rep,
    })
}

/// Dimension and spectrum checks of the decomposition.
pub fn iwasawa_report(data: &IwasawaData) -> CertificateReport {
    let n = data.model.n;
    let mut rep = CertificateReport::new("iwasawa");
    rep.set_config("n", n);
    rep.dimension("dim_su", data.su.dim(), n * n + 2 * n);
    rep.dimension("dim_k", data.k.dim(), n * n);
    rep.dimension("dim_m", data.m.dim(), (n - 1) * (n - 1));
    rep.dimension("dim_n", data.n_plus.dim(), 2 * n - 1);
    let su_in_g1 = data
        .su
        .basis
        .iter()
        .map(|b| crate::geometry::chart::algebra_centralizer_defect(&data.model, &data.a_elem, b))
        .fold(0.0, f64::max);
    rep.residual("su_in_centralizer", su_in_g1, tol::ALGEBRAIC);
    rep.residual("su_closure", closure_residual(&data.su), tol::CLOSURE);
    let expect: Vec<(f64, usize)> = [
        (-2.0, 1),
        (-1.0, 2 * n - 2),
        (0.0, n * n - 2 * n + 2),
        (1.0, 2 * n - 2),
        (2.0, 1),
    ]
    .into_iter()
    .filter(|(_, m)| *m > 0)
    .collect();
    let spectrum_ok = expect.len() == data.ad_a_eigenvalues.len()
        && expect
            .iter()
            .zip(&data.ad_a_eigenvalues)
            .all(|(e, g)| (e.0 - g.0).abs() <= tol::CLUSTER && e.1 == g.1);
    rep.flag("ad_a_spectrum", spectrum_ok, true);
    if let Ok(cert) = series_certificate(&data.n_plus) {
        rep.flag("n_heisenberg", cert.heisenberg, true);
    }
    rep
}
