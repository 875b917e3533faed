//! Search for subgroups of the centralizer of `A` acting simply transitively
//! on `M_A`, with rank certificates of their fundamental fields.

pub mod iwasawa;
pub mod nilpotent;
pub mod quaternion;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::chart::pushforward;
use crate::geometry::{darboux_matrix, project, ChartPoint};
use crate::linalg::{expm, rank, singular_values, standard_omega, sup, unit, Mat, Vector};
use crate::model::{sample_sigma, Case, CharacteristicElement, SigmaPoint, SymplecticModel};
use crate::report::{CertificateReport, Verdict};
use crate::tol;

pub use nilpotent::{build_h, closure_conditions, normalize_candidate, NilpotentCandidate};

/// Fundamental field `d/ds π(exp(-sX)x)` in chart coordinates, from the
/// exact ambient velocity `-Xx` and the finite-difference pushforward.
pub fn fundamental_field(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    gen: &Mat,
    x: &Vector,
    h: f64,
) -> Result<Vector> {
    pushforward(model, a, x, &(-(gen * x)), h)
}

/// Columns are the fundamental fields of `gens` at `x`.
pub fn field_matrix(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    gens: &[Mat],
    x: &Vector,
    h: f64,
) -> Result<Mat> {
    let mut f = Mat::zeros(2 * model.n, gens.len());
    for (i, g) in gens.iter().enumerate() {
        f.set_column(i, &fundamental_field(model, a, g, x, h)?);
    }
    Ok(f)
}

/// Worst orbit rank over sample points.
#[derive(Clone, Debug)]
pub struct RankSummary {
    pub min_rank: usize,
    /// Smallest `σ_min / σ_max` of the field matrix.
    pub min_ratio: f64,
    /// Point attaining `min_ratio`.
    pub worst_point: Vector,
}

pub fn orbit_rank_summary(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    gens: &[Mat],
    points: &[SigmaPoint],
    h: f64,
) -> Result<RankSummary> {
    let mut out = RankSummary {
        min_rank: usize::MAX,
        min_ratio: f64::INFINITY,
        worst_point: Vector::zeros(0),
    };
    for pt in points {
        let f = field_matrix(model, a, gens, &pt.x, h)?;
        let sv = singular_values(&f);
        let ratio = match (sv.first(), sv.last()) {
            (Some(&top), Some(&bottom)) if top > 0.0 => bottom / top,
            _ => 0.0,
        };
        out.min_rank = out.min_rank.min(rank(&f, tol::RANK_REL));
        if ratio < out.min_ratio {
            out.min_ratio = ratio;
            out.worst_point = pt.x.clone();
        }
    }
    Ok(out)
}

/// `dim = 2n` and full orbit rank at every sample point.
pub fn simply_transitive_certificate(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    gens: &[Mat],
    points: &[SigmaPoint],
    h: f64,
) -> Result<CertificateReport> {
    let mut rep = CertificateReport::new("simply-transitive");
    let two_n = 2 * model.n;
    rep.dimension("dim", gens.len(), two_n);
    let summary = orbit_rank_summary(model, a, gens, points, h)?;
    if rep.rank("min_orbit_rank", summary.min_rank, two_n) == Verdict::Fail {
        rep.witness(
            "min_orbit_rank",
            "ambient point with the smallest singular-value ratio",
            summary.worst_point.iter().copied().collect(),
        );
    }
    rep.note(format!(
        "smallest singular-value ratio of the field matrix over {} points: {:.3e}",
        points.len(),
        summary.min_ratio
    ));
    Ok(rep)
}

/// Outcome of the existence question for one model before any computation.
#[derive(Clone, Debug, PartialEq)]
pub enum Existence {
    /// Settled negatively by a known theorem.
    Never(&'static str),
    /// A candidate family exists and is checked numerically.
    Constructive,
    /// Not settled.
    Open(&'static str),
}

pub const HYPERBOLIC_NEVER: &str =
    "the hyperbolic quotient never admits a simply transitive subgroup of the centralizer of A";
pub const ELLIPTIC_ONLY_P1: &str =
    "the elliptic quotient admits a simply transitive subgroup if and only if p = 1";
pub const NILPOTENT_Q: &str =
    "the nilpotent quotient does not admit a simply transitive subgroup unless q is 1, 2 or 4";
pub const NILPOTENT_P2_Q1: &str =
    "for rank two only q = 1 admits a simply transitive subgroup; q = 2 does not";
pub const NILPOTENT_OPEN: &str = "rank p > 2 with q in {1, 2, 4}: no classification is known";

pub fn existence(model: &SymplecticModel) -> Existence {
    match model.case {
        Case::Hyperbolic { .. } => Existence::Never(HYPERBOLIC_NEVER),
        Case::Elliptic { p: 1, .. } => Existence::Constructive,
        Case::Elliptic { .. } => Existence::Never(ELLIPTIC_ONLY_P1),
        Case::Nilpotent { q, .. } if !matches!(q, 1 | 2 | 4) => Existence::Never(NILPOTENT_Q),
        Case::Nilpotent { p: 1, .. } => Existence::Constructive,
        Case::Nilpotent { p: 2, q: 1 } => Existence::Constructive,
        Case::Nilpotent { p: 2, .. } => Existence::Never(NILPOTENT_P2_Q1),
        Case::Nilpotent { .. } => Existence::Open(NILPOTENT_OPEN),
        Case::RicciFrame { .. } => Existence::Open("no normal form attached"),
    }
}

/// Options of [`find_transitive`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub samples: usize,
    pub seed: u64,
    pub fd_step: f64,
    /// Restrict the rank-two nilpotent sweep to one user candidate.
    pub candidate: Option<NilpotentCandidate>,
    /// Torus angles for the elliptic twist; default `θ_j = (j + 1)/2`.
    pub theta: Option<Vec<f64>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            samples: 100,
            seed: 0,
            fd_step: tol::FD_STEP,
            candidate: None,
            theta: None,
        }
    }
}

pub fn find_transitive(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    opts: &SearchOptions,
) -> Result<CertificateReport> {
    let mut rep = CertificateReport::new("find-transitive");
    rep.set_config("case", model.case.tag());
    rep.set_config("n", model.n);
    rep.set_config("samples", opts.samples);
    rep.set_config("seed", opts.seed);
    rep.set_config("fd_step", opts.fd_step);
    match existence(model) {
        Existence::Never(cite) => {
            rep.documented("existence", cite);
            if let Case::Nilpotent { p: 2, q: 2 } = model.case {
                epsilon_plus_evidence(model, &mut rep)?;
            }
        }
        Existence::Open(note) => {
            rep.open("existence", note);
        }
        Existence::Constructive => match model.case {
            Case::Elliptic { .. } => elliptic_search(model, a, opts, &mut rep)?,
            Case::Nilpotent { p: 1, .. } => abelian_search(model, a, opts, &mut rep)?,
            Case::Nilpotent { p: 2, q: 1 } => nilpotent_sweep(model, a, opts, &mut rep)?,
            _ => unreachable!("constructive cases are listed above"),
        },
    }
    Ok(rep)
}

fn elliptic_search(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    opts: &SearchOptions,
    rep: &mut CertificateReport,
) -> Result<()> {
    let k = a.k();
    let n = model.n;
    let data = iwasawa::iwasawa_su1n(n, k)?;
    rep.absorb("iwasawa", iwasawa::iwasawa_report(&data));
    let points = sample_sigma(model, a, opts.samples, opts.seed)?;
    let mut twists = vec![("untwisted".to_string(), vec![0.0; n - 1])];
    if n > 1 {
        match &opts.theta {
            Some(t) => twists.push(("twisted".into(), t.clone())),
            None => {
                for (i, t) in torus_grid(n, opts.seed).into_iter().enumerate() {
                    twists.push((format!("twisted{i}"), t));
                }
            }
        }
    }
    for (prefix, theta) in &twists {
        let tw = iwasawa::build_a_phi(&data, theta)?;
        rep.absorb(prefix, tw.report);
        let cert = simply_transitive_certificate(model, a, &tw.h_phi.basis, &points, opts.fd_step)?;
        rep.absorb(prefix, cert);
    }
    Ok(())
}

/// Two torus angle vectors: `θ_j = (j + 1)/2` and a seeded draw from `[-2, 2]^{n-1}`.
pub fn torus_grid(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x70_7275);
    let uniform = rand_distr::Uniform::new_inclusive(-2.0, 2.0);
    let fixed: Vec<f64> = (0..n - 1).map(|j| 0.5 * (j + 1) as f64).collect();
    let drawn: Vec<f64> = (0..n - 1).map(|_| uniform.sample(&mut rng)).collect();
    vec![fixed, drawn]
}

fn abelian_search(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    opts: &SearchOptions,
    rep: &mut CertificateReport,
) -> Result<()> {
    let t = crate::transvection::transvection_algebra(model, a)?;
    // [p₁, p₁] = ℝA, which acts trivially on the quotient.
    rep.flag("a_in_k1", t.a_in_k1, true);
    let cert = crate::lie::series_certificate(&t.g)?;
    rep.flag("transvection_algebra_abelian_mod_a", cert.abelian, true);
    let points = sample_sigma(model, a, opts.samples, opts.seed)?;
    rep.absorb(
        "transvections",
        simply_transitive_certificate(model, a, &t.p1.basis, &points, opts.fd_step)?,
    );
    Ok(())
}

/// Named candidate with the outcome expected of it.
struct Labeled {
    name: String,
    cand: NilpotentCandidate,
}

fn random_symplectic(m2: usize, rng: &mut ChaCha8Rng, scale: f64) -> Mat {
    let mut s = Mat::zeros(m2, m2);
    for i in 0..m2 {
        for j in i..m2 {
            let v: f64 = StandardNormal.sample(rng);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    expm(&(standard_omega(m2 / 2) * s * scale))
}

fn random_vector(m2: usize, rng: &mut ChaCha8Rng) -> Vector {
    Vector::from_fn(m2, |_, _| StandardNormal.sample(rng))
}

/// `diag(Id_m, -Id_m)`: `B - Id` has Lagrangian image.
pub fn split_involution(m2: usize) -> Mat {
    let m = m2 / 2;
    Mat::from_diagonal(&Vector::from_fn(m2, |i, _| if i < m { 1.0 } else { -1.0 }))
}

fn accepted_candidates(n: usize, seed: u64) -> Vec<Labeled> {
    let m2 = 2 * (n - 1);
    let id = Mat::identity(m2, m2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let split = split_involution(m2);
    let s = random_symplectic(m2, &mut rng, 0.3);
    let s_inv = s
        .clone()
        .try_inverse()
        .expect("symplectic matrices are invertible");
    let conj = &s * &split * &s_inv;
    let shift1 = random_vector(m2, &mut rng);
    let shift2 = random_vector(m2, &mut rng);
    vec![
        Labeled {
            name: "identity".into(),
            cand: NilpotentCandidate::normalized(id.clone(), 1.0),
        },
        Labeled {
            name: "minus_identity".into(),
            cand: NilpotentCandidate::normalized(-&id, -1.0),
        },
        Labeled {
            name: "split".into(),
            cand: NilpotentCandidate::normalized(split, 1.0),
        },
        Labeled {
            name: "identity_shifted".into(),
            cand: NilpotentCandidate::with_shift(id, shift1, 0.7, 1.0),
        },
        Labeled {
            name: "conjugated_split_shifted".into(),
            cand: NilpotentCandidate::with_shift(conj, shift2, -0.4, 1.0),
        },
    ]
}

/// Candidates that each break one closure condition (or, where that is
/// impossible, the fewest), built around `B = Id`, `c = 1`.
pub fn negative_controls(n: usize) -> Vec<(String, NilpotentCandidate)> {
    let m2 = 2 * (n - 1);
    let id = Mat::identity(m2, m2);
    let base = NilpotentCandidate::normalized(id.clone(), 1.0);
    let mut out = Vec::new();
    out.push((
        "c_tilde_nonzero".to_string(),
        NilpotentCandidate {
            c_tilde: unit(m2, 0),
            ..base.clone()
        },
    ));
    let mut unipotent = id.clone();
    unipotent[(0, 1)] = 1.0;
    out.push((
        "b_square_not_identity".to_string(),
        NilpotentCandidate::normalized(unipotent, 1.0),
    ));
    out.push((
        "epsilon_plus_one".to_string(),
        NilpotentCandidate {
            epsilon: 1.0,
            ..NilpotentCandidate::normalized(standard_omega(m2 / 2), 1.0)
        },
    ));
    out.push((
        "c_square_not_one".to_string(),
        NilpotentCandidate::normalized(id.clone(), 2.0),
    ));
    let mut wrong = NilpotentCandidate::with_shift(id.clone(), unit(m2, 0) * 0.5, 0.0, 1.0);
    wrong.b_tilde += unit(m2, 0);
    out.push(("reltildeb_violated".to_string(), wrong));
    out.push((
        "relstar_violated".to_string(),
        NilpotentCandidate::normalized(-&id, 1.0),
    ));
    if n >= 3 {
        // -1 on one symplectic pair only, so the image of B - Id is not isotropic.
        let m = m2 / 2;
        let mut pair = id.clone();
        pair[(0, 0)] = -1.0;
        pair[(m, m)] = -1.0;
        out.push((
            "relstar_symplectic_pair".to_string(),
            NilpotentCandidate::normalized(pair, 1.0),
        ));
    }
    out
}

/// Threshold a negative control's closure residual must exceed.
pub const NEGATIVE_CONTROL_GAP: f64 = 1e-3;

fn nilpotent_sweep(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    opts: &SearchOptions,
    rep: &mut CertificateReport,
) -> Result<()> {
    let n = model.n;
    let points = sample_sigma(model, a, opts.samples, opts.seed)?;
    let list = match &opts.candidate {
        Some(c) => vec![Labeled {
            name: "candidate".into(),
            cand: c.clone(),
        }],
        None => accepted_candidates(n, opts.seed),
    };
    for item in &list {
        if item.cand.n() != n {
            return Err(Error::Dimension {
                expected: 2 * (n - 1),
                found: item.cand.middle_dim(),
            });
        }
        let sub = check_candidate(model, a, &item.cand, &points, opts.fd_step)?;
        rep.absorb(&item.name, sub);
    }
    if opts.candidate.is_none() {
        for (name, cand) in negative_controls(n) {
            let closure = closure_conditions(&cand)?.residual();
            rep.exceeds(
                format!("negative.{name}.closure"),
                closure,
                NEGATIVE_CONTROL_GAP,
            );
        }
    }
    Ok(())
}

fn check_candidate(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    cand: &NilpotentCandidate,
    points: &[SigmaPoint],
    h: f64,
) -> Result<CertificateReport> {
    let mut rep = CertificateReport::new("candidate");
    let cc = closure_conditions(cand)?;
    rep.residual("closure_identities", cc.residual(), tol::CLOSURE);
    for (name, v) in cc.conditions() {
        rep.residual(format!("condition.{name}"), v, tol::ALGEBRAIC);
    }
    rep.residual(
        "matrix_closure",
        nilpotent::matrix_closure_residual(cand)?,
        tol::CLOSURE,
    );
    if rep.overall() == Verdict::Fail {
        return Ok(rep);
    }
    let gens = nilpotent::generators(cand)?;
    rep.absorb(
        "",
        simply_transitive_certificate(model, a, &gens, points, h)?,
    );

    let norm = normalize_candidate(cand)?;
    rep.residual("normalization.span", norm.span_residual, tol::ALGEBRAIC);
    rep.residual(
        "normalization.conjugators_in_centralizer",
        norm.centralizer_residual,
        tol::ALGEBRAIC,
    );
    rep.residual(
        "normalization.closure_after",
        norm.closure_after,
        tol::CLOSURE,
    );

    let nc = &norm.candidate;
    let m2 = nc.middle_dim();
    let ngens = nilpotent::generators(nc)?;
    let coords: Vec<(f64, Vector, f64)> = std::iter::once((1.0, Vector::zeros(m2), 0.0))
        .chain((0..m2).map(|i| (0.0, unit(m2, i), 0.0)))
        .chain(std::iter::once((0.0, Vector::zeros(m2), 1.0)))
        .collect();
    let w = darboux_matrix(model);
    let (mut field_err, mut moment_err, mut det_min): (f64, f64, f64) = (0.0, 0.0, f64::INFINITY);
    for pt in points {
        let cp = project(model, a, &pt.x)?;
        let ChartPoint::Darboux { gamma, .. } = cp else {
            return Err(Error::NoChart("expected the (y⁰, Y, γ) chart".into()));
        };
        let mix = Mat::identity(m2, m2) * gamma.cosh() + &nc.b * gamma.sinh();
        det_min = det_min.min(mix.determinant().abs());
        for (gen, (p, bp, pp)) in ngens.iter().zip(&coords) {
            let fd = fundamental_field(model, a, gen, &pt.x, h)?;
            let closed = nilpotent::fundamental_field_p2q1(&nc.b, nc.c, (*p, bp, *pp), &cp)?;
            let scale = closed.norm().max(1.0);
            field_err = field_err.max(sup((&fd - &closed).iter()) / scale);
            let grad = moment_gradient(model, nc, (*p, bp, *pp), &cp, h)?;
            let contraction = w.transpose() * &closed;
            moment_err = moment_err.max(sup((grad - contraction).iter()) / scale);
        }
    }
    rep.residual("closed_form_fields_vs_numeric", field_err, tol::FD_CHECK);
    rep.residual("moment_map_hamiltonian", moment_err, tol::FD_CHECK);
    rep.exceeds("min_abs_det_chB_shB", det_min, 0.0);
    let defect = nilpotent::strongly_hamiltonian_defect_max(&nc.b, nc.c);
    let scalar = sup((&nc.b - Mat::identity(m2, m2) * nc.c).iter());
    rep.note(format!(
        "strongly Hamiltonian defect (max over basis pairs): {defect:.3e}"
    ));
    rep.flag(
        "strongly_hamiltonian_iff_scalar",
        defect <= tol::ALGEBRAIC,
        scalar <= tol::ALGEBRAIC,
    );
    let after = simply_transitive_certificate(model, a, &ngens, points, h)?;
    rep.flag(
        "normalization.same_rank_verdict",
        after.overall() == Verdict::Pass,
        rep.entry("min_orbit_rank").map(|e| e.verdict) == Some(Verdict::Pass),
    );
    Ok(rep)
}

fn moment_gradient(
    model: &SymplecticModel,
    cand: &NilpotentCandidate,
    gen: (f64, &Vector, f64),
    cp: &ChartPoint,
    h: f64,
) -> Result<Vector> {
    let base = cp.coords();
    let mut g = Vector::zeros(base.len());
    for i in 0..base.len() {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[i] += h;
        minus[i] -= h;
        let fp = nilpotent::moment_map_f(
            &cand.b,
            cand.c,
            gen,
            &ChartPoint::from_coords(model, cp.kind(), plus.as_slice())?,
        )?;
        let fm = nilpotent::moment_map_f(
            &cand.b,
            cand.c,
            gen,
            &ChartPoint::from_coords(model, cp.kind(), minus.as_slice())?,
        )?;
        g[i] = (fp - fm) / (2.0 * h);
    }
    Ok(g)
}

/// For `q = 2` (`ε = +1`) the closure identities fail for the natural
/// candidates; recorded as supporting evidence next to the cited result.
fn epsilon_plus_evidence(model: &SymplecticModel, rep: &mut CertificateReport) -> Result<()> {
    let m2 = model.middle_dim();
    let o0 = standard_omega(m2 / 2);
    let id = Mat::identity(m2, m2);
    for (name, b, c) in [
        ("b_complex_structure", o0.clone(), 1.0),
        ("b_identity", id.clone(), 1.0),
        ("b_minus_complex_structure", -o0, -1.0),
    ] {
        let cand = NilpotentCandidate {
            epsilon: 1.0,
            ..NilpotentCandidate::normalized(b, c)
        };
        let closure = closure_conditions(&cand)?.residual();
        rep.exceeds(
            format!("evidence.{name}.closure"),
            closure,
            NEGATIVE_CONTROL_GAP,
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_model;

    #[test]
    fn existence_table() {
        let (m, _) = build_model(Case::Hyperbolic { k: 1.0 }, 2).unwrap();
        assert_eq!(existence(&m), Existence::Never(HYPERBOLIC_NEVER));
        let (m, _) = build_model(Case::Elliptic { k: 1.0, p: 2 }, 2).unwrap();
        assert_eq!(existence(&m), Existence::Never(ELLIPTIC_ONLY_P1));
        let (m, _) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
        assert_eq!(existence(&m), Existence::Constructive);
        let (m, _) = build_model(Case::Nilpotent { p: 3, q: 2 }, 3).unwrap();
        assert!(matches!(existence(&m), Existence::Open(_)));
    }

    #[test]
    fn split_involution_accepted() {
        let cand = NilpotentCandidate::normalized(split_involution(4), 1.0);
        assert!(closure_conditions(&cand)
            .unwrap()
            .all_conditions_hold(1e-12));
    }
}
