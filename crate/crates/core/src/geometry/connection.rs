use crate::error::{Error, Result};
use crate::linalg::{sup, Mat, Vector};
use crate::model::{CharacteristicElement, SymplecticModel};

use super::chart::check_step;
use super::frame::{horizontal_basis, horizontal_part, retract, HorizontalFrame};

/// A vector field on (a neighbourhood in) Σ_A.
pub type Field<'a> = dyn Fn(&Vector) -> Vector + 'a;

/// Directional derivative `d/ds F(x + sv)` along the retracted line.
pub fn directional_derivative(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    v: &Vector,
    field: &Field<'_>,
    h: f64,
) -> Result<Vector> {
    check_step(h)?;
    let plus = field(&retract(model, a, &(x + v * h)));
    let minus = field(&retract(model, a, &(x - v * h)));
    Ok((plus - minus) / (2.0 * h))
}

/// `∇̄_X̄ Ȳ = ∇⁰_X̄ Ȳ - Ω(AX̄, Ȳ)x + Ω(X̄, Ȳ)Ax` with the flat derivative taken
/// by central differences of step `h`.
pub fn connection_nabla(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    xbar: &Vector,
    yfield: &Field<'_>,
    h: f64,
) -> Result<Vector> {
    let flat = directional_derivative(model, a, x, xbar, yfield, h)?;
    let ybar = yfield(x);
    let ax = a.apply(x);
    let axbar = a.apply(xbar);
    Ok(flat - x * model.omega(&axbar, &ybar) + ax * model.omega(xbar, &ybar))
}

/// Horizontal field `x ↦ P_x(Zx)` induced by a matrix `Z`; for `Z` in the
/// centralizer of `A` this is the horizontal lift of a fundamental field.
pub fn basic_field<'a>(
    model: &'a SymplecticModel,
    a: &'a CharacteristicElement,
    z: Mat,
) -> impl Fn(&Vector) -> Vector + 'a {
    move |x: &Vector| horizontal_part(model, a, x, &(&z * x))
}

/// Horizontal projection of a constant ambient vector.
pub fn projected_constant_field<'a>(
    model: &'a SymplecticModel,
    a: &'a CharacteristicElement,
    v: Vector,
) -> impl Fn(&Vector) -> Vector + 'a {
    move |x: &Vector| horizontal_part(model, a, x, &v)
}

/// `∇_X Y - ∇_Y X - [X, Y]` with the bracket of the two fields on Σ_A
/// projected to the horizontal space.
pub fn torsion_residual(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    xfield: &Field<'_>,
    yfield: &Field<'_>,
    h: f64,
) -> Result<f64> {
    let xb = xfield(x);
    let yb = yfield(x);
    let nxy = connection_nabla(model, a, x, &xb, yfield, h)?;
    let nyx = connection_nabla(model, a, x, &yb, xfield, h)?;
    let dy = directional_derivative(model, a, x, &xb, yfield, h)?;
    let dx = directional_derivative(model, a, x, &yb, xfield, h)?;
    let bracket = horizontal_part(model, a, x, &(dy - dx));
    Ok(sup((nxy - nyx - bracket).iter()))
}

/// `X(ω(Y, Z)) - ω(∇_X Y, Z) - ω(Y, ∇_X Z)`.
pub fn nabla_omega_residual(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    xbar: &Vector,
    yfield: &Field<'_>,
    zfield: &Field<'_>,
    h: f64,
) -> Result<f64> {
    let pairing = |p: &Vector| Vector::from_element(1, model.omega(&yfield(p), &zfield(p)));
    let deriv = directional_derivative(model, a, x, xbar, &pairing, h)?[0];
    let ny = connection_nabla(model, a, x, xbar, yfield, h)?;
    let nz = connection_nabla(model, a, x, xbar, zfield, h)?;
    let y = yfield(x);
    let z = zfield(x);
    Ok((deriv - model.omega(&ny, &z) - model.omega(&y, &nz)).abs())
}

/// `R(X,Y)Z = -2Ω(X,Y)AZ - Ω(X,Z)AY + Ω(Y,Z)AX + Ω(AX,Z)Y - Ω(AY,Z)X`.
pub fn curvature(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    _x: &Vector,
    xb: &Vector,
    yb: &Vector,
    zb: &Vector,
) -> Vector {
    let o = |u: &Vector, v: &Vector| model.omega(u, v);
    let (ax, ay, az) = (a.apply(xb), a.apply(yb), a.apply(zb));
    &az * (-2.0 * o(xb, yb)) - &ay * o(xb, zb) + &ax * o(yb, zb) + yb * o(&ax, zb) - xb * o(&ay, zb)
}

/// Largest entry of `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y` over frame triples.
pub fn cyclic_residual(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    frame: &HorizontalFrame,
) -> f64 {
    let m = frame.len();
    let h: Vec<Vector> = (0..m).map(|i| frame.vector(i)).collect();
    let x = &frame.base;
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let s = curvature(model, a, x, &h[i], &h[j], &h[k])
                    + curvature(model, a, x, &h[j], &h[k], &h[i])
                    + curvature(model, a, x, &h[k], &h[i], &h[j]);
                worst = worst.max(sup(s.iter()));
            }
        }
    }
    worst
}

/// Matrix of `ρ = -2(n+1)·A|_{H_x}` in the frame.
pub fn ricci_endomorphism(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    frame: &HorizontalFrame,
) -> Result<Mat> {
    if sup((&frame.base - x).iter()) > 0.0 {
        return Err(Error::invalid("frame is based at a different point"));
    }
    let m = frame.len();
    let factor = -2.0 * (model.n as f64 + 1.0);
    let mut rho = Mat::zeros(m, m);
    for j in 0..m {
        let img = a.apply(&frame.vector(j)) * factor;
        rho.set_column(j, &frame.coords(model, &img));
    }
    Ok(rho)
}

/// Ricci tensor `r(X, Y) = Tr(Z ↦ R(X, Z)Y)` on the frame, by summing
/// frame coordinates of the curvature.
pub fn ricci_tensor(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    frame: &HorizontalFrame,
) -> Mat {
    let m = frame.len();
    let h: Vec<Vector> = (0..m).map(|i| frame.vector(i)).collect();
    let mut r = Mat::zeros(m, m);
    for p in 0..m {
        for q in 0..m {
            let mut tr = 0.0;
            for i in 0..m {
                let v = curvature(model, a, &frame.base, &h[p], &h[i], &h[q]);
                tr += frame.coords(model, &v)[i];
            }
            r[(p, q)] = tr;
        }
    }
    r
}

/// Largest `|R(X,Y,Z,T) - E(X,Y,Z,T)|` over frame 4-tuples, where
/// `R(X,Y,Z,T) = ω(R(X,Y)Z, T)` and `E` is assembled from `ω` and the
/// trace-computed Ricci tensor.
pub fn ricci_type_residual(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
) -> Result<f64> {
    let frame = horizontal_basis(model, a, x)?;
    Ok(ricci_type_residual_on(model, a, &frame))
}

pub fn ricci_type_residual_on(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    frame: &HorizontalFrame,
) -> f64 {
    let m = frame.len();
    let w = frame.gram(model);
    let r = ricci_tensor(model, a, frame);
    let h: Vec<Vector> = (0..m).map(|i| frame.vector(i)).collect();
    let c = -1.0 / (2.0 * (model.n as f64 + 1.0));
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let rz = curvature(model, a, &frame.base, &h[i], &h[j], &h[k]);
                let rz_omega = (&model.omega.transpose() * &rz).transpose();
                for l in 0..m {
                    let big_r = (&rz_omega * &h[l])[0];
                    let e = c
                        * (2.0 * w[(i, j)] * r[(k, l)]
                            + w[(i, k)] * r[(j, l)]
                            + w[(i, l)] * r[(j, k)]
                            - w[(j, k)] * r[(i, l)]
                            - w[(j, l)] * r[(i, k)]);
                    worst = worst.max((big_r - e).abs());
                }
            }
        }
    }
    worst
}
