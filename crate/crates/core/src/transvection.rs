//! Transvection algebras: `g₁`, the symmetric decomposition at a base point
//! and `g = p₁ ⊕ [p₁, p₁]` (taken modulo `ℝA` when `A ∈ [p₁, p₁]`).

use crate::error::{Error, Result};
use crate::geometry::symmetry_matrix;
use crate::lie::{
    bracket_span, centralizer_in_sp, closure_residual, involution_eigenspace, series_certificate,
    MatrixLieSubspace, StructureCertificate,
};
use crate::linalg::{commutator, sup, Mat, Vector};
use crate::model::{Case, CharacteristicElement, SigmaPoint, SymplecticModel};
use crate::report::CertificateReport;
use crate::tol;

/// The standard base point of each normal form.
pub fn base_point(model: &SymplecticModel, a: &CharacteristicElement) -> Result<SigmaPoint> {
    let d = model.ambient_dim();
    let big_n = model.n + 1;
    let mut x = Vector::zeros(d);
    match model.case {
        Case::Hyperbolic { k } => {
            let c = 1.0 / (2.0 * k).sqrt();
            x[0] = -c;
            x[big_n] = c;
        }
        Case::Elliptic { k, .. } => x[0] = 1.0 / k.sqrt(),
        Case::Nilpotent { p, .. } => x[d - p] = 1.0,
        Case::RicciFrame { .. } => x[0] = 1.0,
    }
    SigmaPoint::new(model, a, x)
}

#[derive(Clone, Debug)]
pub struct TransvectionData {
    pub base_point: SigmaPoint,
    pub g1: MatrixLieSubspace,
    pub p1: MatrixLieSubspace,
    pub k1: MatrixLieSubspace,
    pub a_in_k1: bool,
    /// Distance of `A / |A|` from `k₁`.
    pub a_in_k1_residual: f64,
    /// `p₁ + k₁`, reduced modulo `A` when `a_in_k1`.
    pub g: MatrixLieSubspace,
    /// Largest `|σ₁²X - X|` on `g₁`.
    pub sigma_square_residual: f64,
    /// `|σ₁(A) - A|`.
    pub sigma_fixes_a_residual: f64,
    /// Closure residual of `g`.
    pub g_closure: f64,
}

/// Build `g₁`, `σ₁ = Ad(S_{x₀})`, `p₁`, `k₁` and the transvection algebra.
pub fn transvection_algebra(
    model: &SymplecticModel,
    a: &CharacteristicElement,
) -> Result<TransvectionData> {
    let x0 = base_point(model, a)?;
    let g1 = centralizer_in_sp(model, a);
    let s = symmetry_matrix(model, a, &x0.x);
    let sigma = |m: &Mat| &s * m * &s;
    let sigma_square_residual = g1
        .basis
        .iter()
        .map(|b| sup((sigma(&sigma(b)) - b).iter()))
        .fold(0.0, f64::max);
    let sigma_fixes_a_residual = sup((sigma(&a.a) - &a.a).iter());
    let p1 = involution_eigenspace(&g1, &sigma, -1.0)?;
    let k1 = bracket_span(&p1, &p1)?;
    let a_norm = sup(a.a.iter());
    let a_in_k1_residual = k1.distance(&a.a) / a_norm;
    let a_in_k1 = a_in_k1_residual <= tol::MEMBERSHIP;
    let sum = p1.sum(&k1);
    let g = if a_in_k1 {
        sum.modulo(std::slice::from_ref(&a.a))
    } else {
        sum
    };
    if p1.dim() != 2 * model.n {
        return Err(Error::RankDeficient {
            what: "-1 eigenspace of the symmetry at the base point".into(),
            expected: 2 * model.n,
            found: p1.dim(),
        });
    }
    let g_closure = closure_residual(&g);
    Ok(TransvectionData {
        base_point: x0,
        g1,
        p1,
        k1,
        a_in_k1,
        a_in_k1_residual,
        g,
        sigma_square_residual,
        sigma_fixes_a_residual,
        g_closure,
    })
}

/// Structural label of a transvection algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum TransvectionClass {
    /// `sl(n+1, ℝ)` acting block-diagonally.
    SpecialLinear,
    /// `su(p, q)` realified.
    SpecialUnitary { p: usize, q: usize },
    /// Abelian of dimension `2n`.
    Abelian,
    /// Solvable with a nilpotent ideal of codimension one.
    SolvableWithNilpotentIdeal { ideal_dim: usize },
    /// Nonzero Levi factor (derived series stabilizes above zero).
    NonSolvable,
    /// Expected structure not observed.
    Unclassified,
}

impl TransvectionClass {
    pub fn describe(&self) -> String {
        match self {
            TransvectionClass::SpecialLinear => "sl(n+1,R)".into(),
            TransvectionClass::SpecialUnitary { p, q } => format!("su({p},{q})"),
            TransvectionClass::Abelian => "abelian".into(),
            TransvectionClass::SolvableWithNilpotentIdeal { ideal_dim } => {
                format!("solvable, nilpotent ideal of dimension {ideal_dim}")
            }
            TransvectionClass::NonSolvable => "not solvable".into(),
            TransvectionClass::Unclassified => "unclassified".into(),
        }
    }
}

/// Result of [`classify_transvection`].
#[derive(Clone, Debug)]
pub struct Classification {
    pub certificate: StructureCertificate,
    pub class: TransvectionClass,
    pub report: CertificateReport,
}

/// A codimension-one ideal containing `[g, g]` that is nilpotent, if any.
pub fn codim_one_nilpotent_ideal(g: &MatrixLieSubspace) -> Result<Option<MatrixLieSubspace>> {
    let derived = bracket_span(g, g)?;
    if derived.dim() + 1 > g.dim() {
        return Ok(None);
    }
    // Any subspace containing [g, g] is an ideal. Extend [g, g] by elements of
    // g until the codimension is one, preferring nilpotent results.
    let mut candidates: Vec<MatrixLieSubspace> = vec![derived.clone()];
    while candidates[0].dim() + 1 < g.dim() {
        let mut next = Vec::new();
        for c in &candidates {
            for b in &g.basis {
                if c.distance(b) > tol::ALGEBRAIC {
                    let bigger = c.sum(&MatrixLieSubspace::span_of_mod(
                        g.ambient_dim,
                        std::slice::from_ref(b),
                        g.quotient(),
                        g.tol,
                    ));
                    next.push(bigger);
                }
            }
        }
        next.truncate(4 * g.dim());
        if next.is_empty() {
            return Ok(None);
        }
        candidates = next;
    }
    for c in candidates {
        if c.dim() + 1 == g.dim() && series_certificate(&c)?.nilpotent {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Structure certificate and case label per normal form.
pub fn classify_transvection(
    data: &TransvectionData,
    model: &SymplecticModel,
) -> Result<Classification> {
    let g = &data.g;
    let cert = series_certificate(g)?;
    let n = model.n;
    let mut rep = CertificateReport::new("transvection-classification");
    let dim_sl = (n + 1) * (n + 1) - 1;
    let class = match model.case {
        Case::Hyperbolic { .. } => {
            let big_n = n + 1;
            let (mut trace, mut shape): (f64, f64) = (0.0, 0.0);
            for x in &g.basis {
                let ul = x.view((0, 0), (big_n, big_n));
                trace = trace.max(ul.trace().abs());
                shape = shape.max(sup(x.view((0, big_n), (big_n, big_n)).iter()));
                shape = shape.max(sup(x.view((big_n, 0), (big_n, big_n)).iter()));
            }
            let ok = [
                rep.dimension("dim_g", g.dim(), dim_sl),
                rep.residual("upper_left_trace", trace, tol::ALGEBRAIC),
                rep.residual("block_diagonal_shape", shape, tol::ALGEBRAIC),
                rep.flag("solvable", cert.solvable, false),
            ];
            if ok.iter().all(|v| *v == crate::Verdict::Pass) {
                TransvectionClass::SpecialLinear
            } else {
                TransvectionClass::Unclassified
            }
        }
        Case::Elliptic { p, .. } => {
            let big_n = n + 1;
            let q = big_n - p;
            let sig = crate::linalg::signature(p, q);
            let (mut re, mut im): (f64, f64) = (0.0, 0.0);
            for x in &g.basis {
                re = re.max(x.view((0, 0), (big_n, big_n)).trace().abs());
                let tr = x.view((0, big_n), (big_n, big_n)).into_owned() * &sig;
                im = im.max(tr.trace().abs());
            }
            let ok = [
                rep.dimension("dim_g", g.dim(), dim_sl),
                rep.residual("complex_trace_real_part", re, tol::ALGEBRAIC),
                rep.residual("complex_trace_imaginary_part", im, tol::ALGEBRAIC),
                rep.flag("solvable", cert.solvable, false),
            ];
            if ok.iter().all(|v| *v == crate::Verdict::Pass) {
                TransvectionClass::SpecialUnitary { p, q }
            } else {
                TransvectionClass::Unclassified
            }
        }
        Case::Nilpotent { p: 1, .. } => {
            let ok = [
                rep.flag("abelian", cert.abelian, true),
                rep.dimension("dim_g", g.dim(), 2 * n),
            ];
            if ok.iter().all(|v| *v == crate::Verdict::Pass) {
                TransvectionClass::Abelian
            } else {
                TransvectionClass::Unclassified
            }
        }
        Case::Nilpotent { p: 2, .. } => {
            let solv = rep.flag("solvable", cert.solvable, true);
            let ideal = codim_one_nilpotent_ideal(g)?;
            let found = rep.flag("codim_one_nilpotent_ideal", ideal.is_some(), true);
            match ideal {
                Some(i) if solv == crate::Verdict::Pass && found == crate::Verdict::Pass => {
                    let lc = series_certificate(&i)?.lower_central_dims;
                    rep.note(format!("nilpotent ideal lower central series {lc:?}"));
                    TransvectionClass::SolvableWithNilpotentIdeal { ideal_dim: i.dim() }
                }
                _ => TransvectionClass::Unclassified,
            }
        }
        Case::Nilpotent { .. } => {
            if rep.flag("solvable", cert.solvable, false) == crate::Verdict::Pass {
                TransvectionClass::NonSolvable
            } else {
                TransvectionClass::Unclassified
            }
        }
        Case::RicciFrame { .. } => TransvectionClass::Unclassified,
    };
    Ok(Classification {
        certificate: cert,
        class,
        report: rep,
    })
}

/// Residual of `[A, X]` over a subspace; `A` is central in `g₁`.
pub fn a_central_residual(a: &CharacteristicElement, s: &MatrixLieSubspace) -> f64 {
    s.basis
        .iter()
        .map(|b| sup(commutator(&a.a, b).iter()))
        .fold(0.0, f64::max)
}
