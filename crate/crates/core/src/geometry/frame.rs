use crate::error::{Error, Result};
use crate::linalg::{nullspace, singular_values, Mat, Vector};
use crate::model::{CharacteristicElement, SymplecticModel};
use crate::tol;

/// A basis of the horizontal space `H_x = span{x, Ax}^⊥Ω` as columns.
#[derive(Clone, Debug)]
pub struct HorizontalFrame {
    pub base: Vector,
    pub vectors: Mat,
}

impl HorizontalFrame {
    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.ncols() == 0
    }

    pub fn vector(&self, i: usize) -> Vector {
        self.vectors.column(i).into_owned()
    }

    /// Gram matrix `Ω(hᵢ, hⱼ)`.
    pub fn gram(&self, model: &SymplecticModel) -> Mat {
        self.vectors.transpose() * &model.omega * &self.vectors
    }

    /// Coordinates of a horizontal vector in the frame, from `Ω(hᵢ, v)`.
    pub fn coords(&self, model: &SymplecticModel, v: &Vector) -> Vector {
        let g = self.gram(model);
        let rhs = self.vectors.transpose() * (&model.omega * v);
        g.lu()
            .solve(&rhs)
            .expect("horizontal Gram matrix is invertible")
    }
}

/// Orthonormal (Euclidean) basis of `H_x`.
pub fn horizontal_basis(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
) -> Result<HorizontalFrame> {
    let d = model.ambient_dim();
    if x.len() != d {
        return Err(Error::Dimension {
            expected: d,
            found: x.len(),
        });
    }
    let ax = a.apply(x);
    let mut rows = Mat::zeros(2, d);
    rows.set_row(0, &(&model.omega * x).transpose());
    rows.set_row(1, &(&model.omega * &ax).transpose());
    let h = nullspace(&rows, tol::RANK_REL);
    if h.ncols() != 2 * model.n {
        return Err(Error::RankDeficient {
            what: "horizontal space".into(),
            expected: 2 * model.n,
            found: h.ncols(),
        });
    }
    let frame = HorizontalFrame {
        base: x.clone(),
        vectors: h,
    };
    let s = singular_values(&frame.gram(model));
    let smallest = s.last().copied().unwrap_or(0.0);
    if smallest <= tol::RANK_REL * s.first().copied().unwrap_or(1.0) {
        return Err(Error::RankDeficient {
            what: "Ω restricted to the horizontal space".into(),
            expected: 2 * model.n,
            found: s.iter().filter(|v| **v > tol::RANK_REL * s[0]).count(),
        });
    }
    Ok(frame)
}

/// Horizontal part of an ambient vector at `x ∈ Σ_A`:
/// `v - Ω(v, Ax)·x + Ω(v, x)·Ax`.
pub fn horizontal_part(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    v: &Vector,
) -> Vector {
    let ax = a.apply(x);
    v - x * model.omega(v, &ax) + &ax * model.omega(v, x)
}

/// Largest of `|Ω(v, x)|` and `|Ω(v, Ax)|`.
pub fn horizontal_defect(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    v: &Vector,
) -> f64 {
    let ax = a.apply(x);
    model.omega(v, x).abs().max(model.omega(v, &ax).abs())
}

/// Radial retraction of a nearby point onto Σ_A.
pub fn retract(model: &SymplecticModel, a: &CharacteristicElement, y: &Vector) -> Vector {
    let s = model.omega(y, &a.apply(y));
    y / s.sqrt()
}
