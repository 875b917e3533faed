//! Quaternion matrices on `ℝ⁴ = ℍ` and orbit-rank evidence on `TS³` for the
//! subalgebras of `gl(4, ℝ)` built from `su(2)` and `η`.

use crate::error::{Error, Result};
use crate::geometry::act_tsn;
use crate::linalg::{expm, rank, singular_values, sup, unit, Mat, Vector};
use crate::report::CertificateReport;
use crate::tol;

fn cross_matrix(q: &[f64; 3]) -> Mat {
    Mat::from_row_slice(
        3,
        3,
        &[0.0, -q[2], q[1], q[2], 0.0, -q[0], -q[1], q[0], 0.0],
    )
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn block(corner: f64, row: [f64; 3], col: [f64; 3], rest: &Mat) -> Mat {
    let mut m = Mat::zeros(4, 4);
    m[(0, 0)] = corner;
    for i in 0..3 {
        m[(0, i + 1)] = row[i];
        m[(i + 1, 0)] = col[i];
    }
    m.view_mut((1, 1), (3, 3)).copy_from(rest);
    m
}

/// Left multiplication `x ↦ qx` for `q = (q0, q)`.
pub fn q_l(q0: f64, q: &[f64; 3]) -> Mat {
    let rest = Mat::identity(3, 3) * q0 + cross_matrix(q);
    block(q0, [-q[0], -q[1], -q[2]], *q, &rest)
}

/// `x ↦ x q̄`, which is right multiplication by `q⁻¹` for unit `q`.
pub fn q_r(q0: f64, q: &[f64; 3]) -> Mat {
    let rest = Mat::identity(3, 3) * q0 + cross_matrix(q);
    block(q0, *q, [-q[0], -q[1], -q[2]], &rest)
}

/// The rotation `x ↦ q x q⁻¹` of the imaginary quaternions (unit `q`).
pub fn rotation(q0: f64, q: &[f64; 3]) -> Mat {
    let qv = Vector::from_column_slice(q);
    Mat::identity(3, 3) * (q0 * q0 - dot(q, q))
        + cross_matrix(q) * (2.0 * q0)
        + &qv * qv.transpose() * 2.0
}

/// `η(x, y)`, symmetric, bilinear in `(x, y)`.
pub fn eta(x: &[f64; 3], y: &[f64; 3]) -> Mat {
    let yx = cross(y, x);
    let xv = Vector::from_column_slice(x);
    let yv = Vector::from_column_slice(y);
    let rest = &xv * yv.transpose() + &yv * xv.transpose() - Mat::identity(3, 3) * dot(x, y);
    block(dot(x, y), yx, yx, &rest)
}

fn apply3(m: &Mat, x: &[f64; 3]) -> [f64; 3] {
    let v = m * Vector::from_column_slice(x);
    [v[0], v[1], v[2]]
}

/// Largest of `|q_L η(x,y) q_L⁻¹ - η(Rx, y)|` and `|q_R η(x,y) q_R⁻¹ - η(x, Ry)|`
/// for a unit quaternion.
pub fn equivariance_residual(q0: f64, q: &[f64; 3], x: &[f64; 3], y: &[f64; 3]) -> Result<f64> {
    let norm = (q0 * q0 + dot(q, q)).sqrt();
    if (norm - 1.0).abs() > tol::ALGEBRAIC {
        return Err(Error::invalid(format!(
            "quaternion must have unit norm, got {norm}"
        )));
    }
    let r = rotation(q0, q);
    let l = q_l(q0, q);
    let rr = q_r(q0, q);
    let e = eta(x, y);
    // Unit quaternion matrices are orthogonal.
    let left = &l * &e * l.transpose() - eta(&apply3(&r, x), y);
    let right = &rr * &e * rr.transpose() - eta(x, &apply3(&r, y));
    Ok(sup(left.iter()).max(sup(right.iter())))
}

fn tsn_field(x: &Mat, u: &Vector, w: &Vector, h: f64) -> Result<Vector> {
    let (up, wp) = act_tsn(1.0, &expm(&(x * -h)), u, w)?;
    let (um, wm) = act_tsn(1.0, &expm(&(x * h)), u, w)?;
    let mut out = Vector::zeros(8);
    out.rows_mut(0, 4).copy_from(&((up - um) / (2.0 * h)));
    out.rows_mut(4, 4).copy_from(&((wp - wm) / (2.0 * h)));
    Ok(out)
}

fn field_matrix(gens: &[Mat], u: &Vector, w: &Vector, h: f64) -> Result<Mat> {
    let mut f = Mat::zeros(gens.len(), 8);
    for (i, g) in gens.iter().enumerate() {
        f.set_row(i, &tsn_field(g, u, w, h)?.transpose());
    }
    Ok(f)
}

/// Orbit rank at `(u, w) = (e₁, 0) ∈ TS³` of `su(2)_L ⊕ {η(x, w)}` for a
/// fixed `w ∈ ℝ³`: at most 5, so the six-dimensional candidate cannot act
/// with an open orbit there. The field of `η(w, w)` vanishes at that point.
pub fn orbit_rank_ts3_evidence(w: &[f64; 3], h: f64) -> Result<CertificateReport> {
    if dot(w, w) == 0.0 {
        return Err(Error::invalid("w must be nonzero"));
    }
    let mut rep = CertificateReport::new("quaternion-evidence");
    rep.set_config("w", format!("{} {} {}", w[0], w[1], w[2]));
    rep.set_config("fd_step", h);
    let e = |i: usize| {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        v
    };
    let su2: Vec<Mat> = (0..3).map(|i| q_l(0.0, &e(i))).collect();
    let mut gens = su2.clone();
    gens.extend((0..3).map(|i| eta(&e(i), w)));
    let u = unit(4, 0);
    let w0 = Vector::zeros(4);
    let f = field_matrix(&gens, &u, &w0, h)?;
    let sv = singular_values(&f);
    rep.rank_at_most("orbit_rank_at_base", rank(&f, tol::RANK_REL), 5);
    rep.note(format!(
        "singular values {:?}",
        sv.iter().map(|s| format!("{s:.3e}")).collect::<Vec<_>>()
    ));
    let f_su2 = field_matrix(&su2, &u, &w0, h)?;
    rep.rank("su2_left_orbit_rank", rank(&f_su2, tol::RANK_REL), 3);
    let ww = tsn_field(&eta(w, w), &u, &w0, h)?;
    rep.residual("eta_w_w_field_at_base", sup(ww.iter()), tol::FD_CHECK);
    Ok(rep)
}
