//! The quotient `M_A = Σ_A / exp(tA)`: charts, horizontal lifts, the reduced
//! symplectic form, the connection and its curvature, and the symmetries.

pub mod chart;
pub mod connection;
pub mod frame;
pub mod symmetry;

pub use chart::{
    act_chart, act_tsn, chart_kind, chart_omega, darboux_matrix, lift_point, lift_tangent, project,
    ChartKind, ChartPoint,
};
pub use connection::{
    connection_nabla, curvature, ricci_endomorphism, ricci_tensor, ricci_type_residual,
};
pub use frame::{horizontal_basis, HorizontalFrame};
pub use symmetry::{ambient_symmetry, reduced_symmetry_check, symmetry_matrix};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::model::{CharacteristicElement, SymplecticModel};

/// `ω(X̄, Ȳ) = Ω(X̄, Ȳ)` for horizontal vectors at `x`.
pub fn reduced_omega(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    x: &Vector,
    xbar: &Vector,
    ybar: &Vector,
    tol: f64,
) -> Result<f64> {
    for v in [xbar, ybar] {
        let scale = v.norm().max(1.0) * x.norm().max(1.0);
        let defect = frame::horizontal_defect(model, a, x, v);
        if defect > tol * scale {
            return Err(Error::NotHorizontal(defect));
        }
    }
    Ok(model.omega(xbar, ybar))
}
