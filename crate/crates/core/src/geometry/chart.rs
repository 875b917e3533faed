use crate::error::{Error, Result};
use crate::linalg::{
    distance_to_span, nullspace, orthonormal_span, sp_defect, sup, symplectic_defect, Mat, Vector,
};
use crate::model::{Case, CharacteristicElement, SymplecticModel};
use crate::tol;

use super::frame::{horizontal_basis, retract};

/// Which coordinate system a model's quotient is described in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    /// `(u, w)` with `|u| = 1`, `⟨u, w⟩ = 0`: the tangent bundle of `Sⁿ`.
    TangentSphere,
    /// Inhomogeneous coordinates `w_j = z_{j+1}/z_1` in the unit ball of `ℂⁿ`,
    /// stored as `(Re w, Im w)`.
    Ball,
    /// `(x, X, x*)` with `Σεᵢxⁱx*ⁱ = 0` and `Σεᵢ(x*ⁱ)² = 1`.
    Embedded,
    /// `(y⁰, Y, γ)` on the component with positive first `e*` coordinate.
    Darboux,
}

impl ChartKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ChartKind::TangentSphere => "tangent-sphere",
            ChartKind::Ball => "ball",
            ChartKind::Embedded => "embedded",
            ChartKind::Darboux => "darboux",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "tangent-sphere" => Some(ChartKind::TangentSphere),
            "ball" => Some(ChartKind::Ball),
            "embedded" => Some(ChartKind::Embedded),
            "darboux" => Some(ChartKind::Darboux),
            _ => None,
        }
    }

    /// Intrinsic charts have exactly `2n` coordinates.
    pub fn is_intrinsic(&self) -> bool {
        matches!(self, ChartKind::Ball | ChartKind::Darboux)
    }
}

/// Coordinates of a point of `M_A`.
#[derive(Clone, Debug, PartialEq)]
pub enum ChartPoint {
    TangentSphere {
        u: Vector,
        w: Vector,
    },
    Ball {
        w: Vector,
    },
    Embedded {
        x: Vector,
        big_x: Vector,
        x_star: Vector,
    },
    Darboux {
        y0: f64,
        y: Vector,
        gamma: f64,
    },
}

impl ChartPoint {
    pub fn kind(&self) -> ChartKind {
        match self {
            ChartPoint::TangentSphere { .. } => ChartKind::TangentSphere,
            ChartPoint::Ball { .. } => ChartKind::Ball,
            ChartPoint::Embedded { .. } => ChartKind::Embedded,
            ChartPoint::Darboux { .. } => ChartKind::Darboux,
        }
    }

    /// Flat coordinate list.
    pub fn coords(&self) -> Vector {
        match self {
            ChartPoint::TangentSphere { u, w } => concat(&[u.as_slice(), w.as_slice()]),
            ChartPoint::Ball { w } => w.clone(),
            ChartPoint::Embedded { x, big_x, x_star } => {
                concat(&[x.as_slice(), big_x.as_slice(), x_star.as_slice()])
            }
            ChartPoint::Darboux { y0, y, gamma } => concat(&[&[*y0], y.as_slice(), &[*gamma]]),
        }
    }

    /// Rebuild from a flat coordinate list in the layout of `model`.
    pub fn from_coords(model: &SymplecticModel, kind: ChartKind, c: &[f64]) -> Result<Self> {
        let n = model.n;
        let expected = match kind {
            ChartKind::TangentSphere | ChartKind::Embedded => 2 * (n + 1),
            ChartKind::Ball | ChartKind::Darboux => 2 * n,
        };
        if c.len() != expected {
            return Err(Error::Dimension {
                expected,
                found: c.len(),
            });
        }
        let v = |r: std::ops::Range<usize>| Vector::from_column_slice(&c[r]);
        Ok(match kind {
            ChartKind::TangentSphere => ChartPoint::TangentSphere {
                u: v(0..n + 1),
                w: v(n + 1..2 * n + 2),
            },
            ChartKind::Ball => ChartPoint::Ball { w: v(0..2 * n) },
            ChartKind::Embedded => {
                let p = match model.case {
                    Case::Nilpotent { p, .. } => p,
                    _ => return Err(Error::NoChart("embedded chart is nilpotent only".into())),
                };
                ChartPoint::Embedded {
                    x: v(0..p),
                    big_x: v(p..2 * n + 2 - p),
                    x_star: v(2 * n + 2 - p..2 * n + 2),
                }
            }
            ChartKind::Darboux => ChartPoint::Darboux {
                y0: c[0],
                y: v(1..2 * n - 1),
                gamma: c[2 * n - 1],
            },
        })
    }

    /// Sup-norm distance between coordinate lists of the same chart.
    pub fn distance(&self, other: &ChartPoint) -> f64 {
        if self.kind() != other.kind() {
            return f64::INFINITY;
        }
        sup((self.coords() - other.coords()).iter())
    }
}

fn concat(parts: &[&[f64]]) -> Vector {
    Vector::from_vec(parts.iter().flat_map(|p| p.iter().copied()).collect())
}

/// The chart used for a model, if one exists.
pub fn chart_kind(model: &SymplecticModel) -> Result<ChartKind> {
    match model.case {
        Case::Hyperbolic { .. } => Ok(ChartKind::TangentSphere),
        Case::Elliptic { p: 1, .. } => Ok(ChartKind::Ball),
        Case::Elliptic { p, .. } => Err(Error::NoChart(format!(
            "elliptic p={p}: the quotient is a vector bundle over a complex projective space"
        ))),
        Case::Nilpotent { p: 2, q: 1 } => Ok(ChartKind::Darboux),
        Case::Nilpotent { .. } => Ok(ChartKind::Embedded),
        Case::RicciFrame { .. } => Err(Error::NoChart("ricci frame model".into())),
    }
}

fn nilpotent_parts(model: &SymplecticModel) -> Result<(usize, usize)> {
    match model.case {
        Case::Nilpotent { p, q } => Ok((p, q)),
        _ => Err(Error::NoChart("chart requires the nilpotent case".into())),
    }
}

/// `π(x)` in the model's default chart.
pub fn project(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
) -> Result<ChartPoint> {
    project_in(model, a, x, chart_kind(model)?)
}

/// `π(x)` in a given chart.
pub fn project_in(
    model: &SymplecticModel,
    _a: &CharacteristicElement,
    x: &Vector,
    kind: ChartKind,
) -> Result<ChartPoint> {
    let d = model.ambient_dim();
    if x.len() != d {
        return Err(Error::Dimension {
            expected: d,
            found: x.len(),
        });
    }
    let big_n = model.n + 1;
    match (kind, model.case) {
        (ChartKind::TangentSphere, Case::Hyperbolic { k }) => {
            let plus = x.rows(0, big_n).into_owned();
            let minus = x.rows(big_n, big_n).into_owned();
            let r = plus.norm();
            let u = &plus / r;
            let w = minus * r + &u / (2.0 * k);
            Ok(ChartPoint::TangentSphere { u, w })
        }
        (ChartKind::Ball, Case::Elliptic { p: 1, .. }) => {
            // z = u₁ + i·I_{1,n}·u₂, so Re z_j = x_j and Im z_j = ±x_{N+j}.
            let re = |j: usize| x[j];
            let im = |j: usize| if j == 0 { x[big_n] } else { -x[big_n + j] };
            let (z1r, z1i) = (re(0), im(0));
            let den = z1r * z1r + z1i * z1i;
            let n = model.n;
            let mut w = Vector::zeros(2 * n);
            for j in 0..n {
                let (zr, zi) = (re(j + 1), im(j + 1));
                w[j] = (zr * z1r + zi * z1i) / den;
                w[n + j] = (zi * z1r - zr * z1i) / den;
            }
            Ok(ChartPoint::Ball { w })
        }
        (ChartKind::Embedded, Case::Nilpotent { p, q }) => {
            let m2 = d - 2 * p;
            let xs = x.rows(d - p, p).into_owned();
            let xp = x.rows(0, p).into_owned();
            let pair: f64 = (0..p).map(|i| eps(i, q) * xp[i] * xs[i]).sum();
            Ok(ChartPoint::Embedded {
                x: xp - &xs * pair,
                big_x: x.rows(p, m2).into_owned(),
                x_star: xs,
            })
        }
        (ChartKind::Darboux, Case::Nilpotent { p: 2, q: 1 }) => {
            let (s1, s2) = (x[d - 2], x[d - 1]);
            if s1 <= 0.0 {
                return Err(Error::NoChart(
                    "point lies on the component with negative first e* coordinate".into(),
                ));
            }
            let alpha = s2.asinh();
            let (ch, sh) = (alpha.cosh(), alpha.sinh());
            Ok(ChartPoint::Darboux {
                y0: -x[0] * sh + x[1] * ch,
                y: x.rows(2, d - 4).into_owned(),
                gamma: alpha,
            })
        }
        (kind, case) => Err(Error::NoChart(format!(
            "chart {} does not apply to the {} case",
            kind.tag(),
            case.tag()
        ))),
    }
}

fn eps(i: usize, q: usize) -> f64 {
    if i < q {
        1.0
    } else {
        -1.0
    }
}

/// A point of Σ_A over the given chart point.
pub fn lift_point(
    model: &SymplecticModel,
    _a: &CharacteristicElement,
    cp: &ChartPoint,
) -> Result<Vector> {
    let d = model.ambient_dim();
    let big_n = model.n + 1;
    let n = model.n;
    let check = |c: &Vector, expected: usize| {
        if c.len() != expected {
            Err(Error::Dimension {
                expected,
                found: c.len(),
            })
        } else {
            Ok(())
        }
    };
    let x = match (cp, model.case) {
        (ChartPoint::TangentSphere { u, w }, Case::Hyperbolic { k }) => {
            check(u, big_n)?;
            check(w, big_n)?;
            let c1 = (u.norm_squared() - 1.0).abs();
            let c2 = u.dot(w).abs();
            if c1.max(c2) > tol::SIGMA_INPUT {
                return Err(Error::invalid(format!(
                    "tangent sphere constraints violated: {:e}",
                    c1.max(c2)
                )));
            }
            concat(&[u.as_slice(), (w - u / (2.0 * k)).as_slice()])
        }
        (ChartPoint::Ball { w }, Case::Elliptic { k, p: 1 }) => {
            check(w, 2 * n)?;
            let r2 = w.norm_squared();
            if r2 >= 1.0 {
                return Err(Error::invalid("ball coordinates must satisfy |w| < 1"));
            }
            let z1 = 1.0 / (k * (1.0 - r2)).sqrt();
            let mut x = Vector::zeros(d);
            x[0] = z1;
            for j in 0..n {
                x[j + 1] = w[j] * z1;
                // Im z_{j+1} = -u₂ component for the negative directions.
                x[big_n + j + 1] = -w[n + j] * z1;
            }
            x
        }
        (ChartPoint::Embedded { x, big_x, x_star }, Case::Nilpotent { p, q }) => {
            check(x, p)?;
            check(x_star, p)?;
            check(big_x, d - 2 * p)?;
            let pair: f64 = (0..p).map(|i| eps(i, q) * x[i] * x_star[i]).sum();
            let norm: f64 = (0..p).map(|i| eps(i, q) * x_star[i] * x_star[i]).sum();
            if pair.abs().max((norm - 1.0).abs()) > tol::SIGMA_INPUT {
                return Err(Error::invalid("embedded chart constraints violated"));
            }
            concat(&[x.as_slice(), big_x.as_slice(), x_star.as_slice()])
        }
        (ChartPoint::Darboux { y0, y, gamma }, Case::Nilpotent { p: 2, q: 1 }) => {
            check(y, d - 4)?;
            let (ch, sh) = (gamma.cosh(), gamma.sinh());
            concat(&[&[0.0, y0 / ch], y.as_slice(), &[ch, sh]])
        }
        (cp, case) => {
            return Err(Error::NoChart(format!(
                "chart {} does not apply to the {} case",
                cp.kind().tag(),
                case.tag()
            )))
        }
    };
    Ok(x)
}

/// Columns spanning the tangent space of the chart at `cp`, in chart
/// coordinates. Identity for intrinsic charts; an orthonormal basis of the
/// constraint kernel for the embedded ones.
pub fn tangent_basis(model: &SymplecticModel, cp: &ChartPoint) -> Result<Mat> {
    let n = model.n;
    match cp {
        ChartPoint::Ball { .. } | ChartPoint::Darboux { .. } => Ok(Mat::identity(2 * n, 2 * n)),
        ChartPoint::TangentSphere { u, w } => {
            let big_n = n + 1;
            let mut jac = Mat::zeros(2, 2 * big_n);
            for i in 0..big_n {
                jac[(0, i)] = 2.0 * u[i];
                jac[(1, i)] = w[i];
                jac[(1, big_n + i)] = u[i];
            }
            kernel_basis(&jac, 2 * n)
        }
        ChartPoint::Embedded { x, x_star, big_x } => {
            let (p, q) = nilpotent_parts(model)?;
            let m2 = big_x.len();
            let len = 2 * p + m2;
            let mut jac = Mat::zeros(2, len);
            for i in 0..p {
                let e = eps(i, q);
                jac[(0, i)] = e * x_star[i];
                jac[(0, p + m2 + i)] = e * x[i];
                jac[(1, p + m2 + i)] = 2.0 * e * x_star[i];
            }
            kernel_basis(&jac, 2 * n)
        }
    }
}

fn kernel_basis(jac: &Mat, expected: usize) -> Result<Mat> {
    let k = nullspace(jac, tol::RANK_REL);
    if k.ncols() != expected {
        return Err(Error::RankDeficient {
            what: "chart tangent space".into(),
            expected,
            found: k.ncols(),
        });
    }
    Ok(k)
}

/// Chart-tangent components of `π_*` applied to an ambient vector at `x`,
/// by central differences along the radially retracted line. The ball and
/// embedded charts are rational in `x` and are differentiated exactly
/// instead; difference quotients lose most of their digits far from the base point.
pub fn pushforward(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    v: &Vector,
    h: f64,
) -> Result<Vector> {
    pushforward_in(model, a, x, v, h, chart_kind(model)?)
}

pub fn pushforward_in(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    v: &Vector,
    h: f64,
    kind: ChartKind,
) -> Result<Vector> {
    check_step(h)?;
    if let (ChartKind::Ball, Case::Elliptic { p: 1, .. }) = (kind, model.case) {
        return Ok(ball_differential(model, x, v));
    }
    if let (ChartKind::Embedded, Case::Nilpotent { p, q }) = (kind, model.case) {
        let diff = embedded_differential(model, a, x, v, p, q);
        let basis = tangent_basis(model, &project_in(model, a, x, kind)?)?;
        return Ok(basis.transpose() * diff);
    }
    let plus = project_in(model, a, &retract(model, a, &(x + v * h)), kind)?.coords();
    let minus = project_in(model, a, &retract(model, a, &(x - v * h)), kind)?.coords();
    let diff = (plus - minus) / (2.0 * h);
    if kind.is_intrinsic() {
        Ok(diff)
    } else {
        let basis = tangent_basis(model, &project_in(model, a, x, kind)?)?;
        Ok(basis.transpose() * diff)
    }
}

/// `dw_j = (dz_j - w_j dz_1) / z_1` for `w_j = z_j / z_1`.
fn ball_differential(model: &SymplecticModel, x: &Vector, v: &Vector) -> Vector {
    let n = model.n;
    let big_n = n + 1;
    let z = |y: &Vector, j: usize| {
        let im = if j == 0 { y[big_n] } else { -y[big_n + j] };
        (y[j], im)
    };
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let (z1, dz1) = (z(x, 0), z(v, 0));
    let den = z1.0 * z1.0 + z1.1 * z1.1;
    let inv = (z1.0 / den, -z1.1 / den);
    let mut out = Vector::zeros(2 * n);
    for j in 0..n {
        let w = mul(z(x, j + 1), inv);
        let wd = mul(w, dz1);
        let dz = z(v, j + 1);
        let dw = mul((dz.0 - wd.0, dz.1 - wd.1), inv);
        out[j] = dw.0;
        out[n + j] = dw.1;
    }
    out
}

/// Differential of `x ↦ project(retract(x))` into the embedded coordinates.
fn embedded_differential(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    v: &Vector,
    p: usize,
    q: usize,
) -> Vector {
    let d = model.ambient_dim();
    let s = model.omega(x, &a.apply(x));
    let root = s.sqrt();
    let y = x / root;
    // A ∈ sp(Ω) makes the derivative of Ω(x, Ax) equal to 2Ω(x, Av).
    let dy = v / root - &y * (model.omega(x, &a.apply(v)) / s);
    let (yp, ys) = (y.rows(0, p), y.rows(d - p, p));
    let (dyp, dys) = (dy.rows(0, p), dy.rows(d - p, p));
    let pair: f64 = (0..p).map(|i| eps(i, q) * yp[i] * ys[i]).sum();
    let dpair: f64 = (0..p)
        .map(|i| eps(i, q) * (dyp[i] * ys[i] + yp[i] * dys[i]))
        .sum();
    let mut out = dy.clone();
    for i in 0..p {
        out[i] = dyp[i] - dys[i] * pair - ys[i] * dpair;
    }
    out
}

pub(crate) fn check_step(h: f64) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::invalid(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    Ok(())
}

/// Matrix of `π_*` on the frame: column `i` is the chart tangent of frame vector `i`.
pub fn pushforward_matrix(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    frame: &Mat,
    h: f64,
    kind: ChartKind,
) -> Result<Mat> {
    let mut j = Mat::zeros(2 * model.n, frame.ncols());
    for i in 0..frame.ncols() {
        let col = pushforward_in(model, a, x, &frame.column(i).into_owned(), h, kind)?;
        j.set_column(i, &col);
    }
    Ok(j)
}

/// Horizontal lift of a chart tangent vector at `x`.
///
/// The Darboux chart uses the closed-form lifts of the coordinate fields;
/// other charts invert the finite-difference pushforward of a horizontal frame.
pub fn lift_tangent(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    chart_tangent: &Vector,
    h: f64,
) -> Result<Vector> {
    let kind = chart_kind(model)?;
    if chart_tangent.len() != 2 * model.n {
        return Err(Error::Dimension {
            expected: 2 * model.n,
            found: chart_tangent.len(),
        });
    }
    if kind == ChartKind::Darboux {
        return Ok(darboux_lifts(model, x) * chart_tangent);
    }
    lift_tangent_numeric(model, a, x, chart_tangent, h, kind)
}

/// The finite-difference route of [`lift_tangent`], usable in every chart.
pub fn lift_tangent_numeric(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    chart_tangent: &Vector,
    h: f64,
    kind: ChartKind,
) -> Result<Vector> {
    let frame = horizontal_basis(model, a, x)?;
    let j = pushforward_matrix(model, a, x, &frame.vectors, h, kind)?;
    let c = j
        .lu()
        .solve(chart_tangent)
        .ok_or_else(|| Error::RankDeficient {
            what: "pushforward on the horizontal space".into(),
            expected: 2 * model.n,
            found: 0,
        })?;
    Ok(&frame.vectors * c)
}

/// Columns are the horizontal lifts of `∂_{y⁰}`, `∂_{y^a}`, `∂_γ` at `x`
/// (nilpotent `p = 2`, `q = 1`).
pub fn darboux_lifts(model: &SymplecticModel, x: &Vector) -> Mat {
    let d = model.ambient_dim();
    let m2 = d - 4;
    let o0 = model.omega0();
    let (x1, x2) = (x[0], x[1]);
    let big_x = x.rows(2, m2).into_owned();
    let alpha = x[d - 1].asinh();
    let (ch, sh) = (alpha.cosh(), alpha.sinh());
    let mut l = Mat::zeros(d, 2 + m2);
    l[(0, 0)] = sh;
    l[(1, 0)] = ch;
    let o0x = &o0 * &big_x;
    for a in 0..m2 {
        let col = 1 + a;
        l[(2 + a, col)] = 1.0;
        l[(0, col)] = o0x[a] * ch;
        l[(1, col)] = o0x[a] * sh;
    }
    let last = 1 + m2;
    let c2s2 = ch * ch + sh * sh;
    l[(d - 2, last)] = sh;
    l[(d - 1, last)] = ch;
    l[(0, last)] = 2.0 * x1 * sh * ch - x2 * c2s2;
    l[(1, last)] = x1 * c2s2 - 2.0 * x2 * sh * ch;
    l
}

/// Check that `g` is symplectic and commutes with `A`.
pub fn centralizer_defect(model: &SymplecticModel, a: &CharacteristicElement, g: &Mat) -> f64 {
    let sym = sup(symplectic_defect(&model.omega, g).iter());
    let comm = sup((g * &a.a - &a.a * g).iter());
    sym.max(comm)
}

/// The induced action `π(x) ↦ π(gx)` of an element of the centralizer of `A`.
pub fn act_chart(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    g: &Mat,
    cp: &ChartPoint,
) -> Result<ChartPoint> {
    let scale = sup(g.iter()).max(1.0);
    let defect = centralizer_defect(model, a, g);
    if defect > tol::ALGEBRAIC * scale * scale {
        return Err(Error::NotInCentralizer(defect));
    }
    let x = lift_point(model, a, cp)?;
    project_in(model, a, &(g * x), cp.kind())
}

/// The hyperbolic action of `B ∈ GL(n+1)` (acting as `diag(B, ᵗB⁻¹)`) on
/// `TSⁿ` in closed form.
pub fn act_tsn(k: f64, b: &Mat, u: &Vector, w: &Vector) -> Result<(Vector, Vector)> {
    let inv_t = b
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::invalid("B must be invertible"))?
        .transpose();
    let bu = b * u;
    let nb = bu.norm();
    let new_u = &bu / nb;
    let new_w = inv_t * (w - u / (2.0 * k)) * nb + &bu / (2.0 * k * nb);
    Ok((new_u, new_w))
}

/// `diag(B, ᵗB⁻¹)`, the embedding of `GL(n+1)` in the hyperbolic centralizer.
pub fn gl_embedding(b: &Mat) -> Result<Mat> {
    let m = b.nrows();
    let inv_t = b
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::invalid("B must be invertible"))?
        .transpose();
    let mut g = Mat::zeros(2 * m, 2 * m);
    g.view_mut((0, 0), (m, m)).copy_from(b);
    g.view_mut((m, m), (m, m)).copy_from(&inv_t);
    Ok(g)
}

/// `diag(X, -ᵗX)`, the Lie algebra version of [`gl_embedding`].
pub fn gl_algebra_embedding(x: &Mat) -> Mat {
    let m = x.nrows();
    let mut g = Mat::zeros(2 * m, 2 * m);
    g.view_mut((0, 0), (m, m)).copy_from(x);
    g.view_mut((m, m), (m, m)).copy_from(&(-x.transpose()));
    g
}

/// Chart-free test that `x` and `y` lie on the same `exp(tA)` orbit.
///
/// Every point of `span{x, Ax} ∩ Σ_A` is `αx + βAx` with `α² - μβ² = 1`;
/// the orbit is the branch with `α > 0` (the whole circle when `μ < 0`).
/// Returns the distance of `y` from that set, or infinity on the wrong branch.
pub fn fiber_residual(a: &CharacteristicElement, x: &Vector, y: &Vector) -> f64 {
    let ax = a.apply(x);
    let mut basis = Mat::zeros(x.len(), 2);
    basis.set_column(0, x);
    basis.set_column(1, &ax);
    let q = orthonormal_span(&basis, tol::RANK_REL);
    let dist = distance_to_span(&q, y);
    let coef = crate::linalg::least_squares(&basis, y);
    if a.mu >= 0.0 && coef[0] <= 0.0 {
        return f64::INFINITY;
    }
    dist
}

/// Whether `X` lies in `sp(Ω)` and commutes with `A`, as a residual.
pub fn algebra_centralizer_defect(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Mat,
) -> f64 {
    let sp = sup(sp_defect(&model.omega, x).iter());
    sp.max(sup((x * &a.a - &a.a * x).iter()))
}

/// Columns are the horizontal lifts at `x` of the chart tangent basis vectors.
pub fn lift_matrix(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    h: f64,
) -> Result<Mat> {
    let kind = chart_kind(model)?;
    if kind == ChartKind::Darboux {
        return Ok(darboux_lifts(model, x));
    }
    let frame = horizontal_basis(model, a, x)?;
    let j = pushforward_matrix(model, a, x, &frame.vectors, h, kind)?;
    let inv = j.try_inverse().ok_or_else(|| Error::RankDeficient {
        what: "pushforward on the horizontal space".into(),
        expected: 2 * model.n,
        found: 0,
    })?;
    Ok(&frame.vectors * inv)
}

/// Matrix of the reduced form `ω` on the chart tangent basis at `π(x)`.
pub fn chart_omega(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    h: f64,
) -> Result<Mat> {
    let l = lift_matrix(model, a, x, h)?;
    Ok(l.transpose() * &model.omega * l)
}

/// The constant matrix of `dy⁰∧dγ + ½ΣΩ⁰_{ab} dy^a∧dy^b` in `(y⁰, Y, γ)`.
pub fn darboux_matrix(model: &SymplecticModel) -> Mat {
    let m = 2 * model.n;
    let mut w = Mat::zeros(m, m);
    w[(0, m - 1)] = 1.0;
    w[(m - 1, 0)] = -1.0;
    w.view_mut((1, 1), (m - 2, m - 2))
        .copy_from(&model.omega0());
    w
}
