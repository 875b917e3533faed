//! The family `h_{B,ã,a,c}` of simply transitive subalgebras for the rank-2
//! nilpotent case (`μ = 0`, `p = 2`).
//!
//! Matrices use the basis `(e₁, e₂ | f₁ … f_{2(n-1)} | e*₁, e*₂)` of the
//! nilpotent model; `ε = -1` for `q = 1` and `+1` for `q = 2`.

use crate::error::{Error, Result};
use crate::geometry::ChartPoint;
use crate::lie::{
    ad_eigenspaces, bracket_span, closure_residual, series_certificate, MatrixLieSubspace,
    StructureCertificate,
};
use crate::linalg::{commutator, form, sup, unit, Mat, Vector};
use crate::model::{build_model, Case, CharacteristicElement, SymplecticModel};
use crate::report::CertificateReport;
use crate::tol;

/// Parameters of the matrices `K_{B,ã,b̃,c̃,a,c}(p, P, p′)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentCandidate {
    pub b: Mat,
    pub a_tilde: Vector,
    pub b_tilde: Vector,
    pub c_tilde: Vector,
    pub a: f64,
    pub c: f64,
    pub epsilon: f64,
}

impl NilpotentCandidate {
    /// `ã = b̃ = c̃ = 0`, `a = 0`, `ε = -1`.
    pub fn normalized(b: Mat, c: f64) -> Self {
        let m2 = b.nrows();
        NilpotentCandidate {
            b,
            a_tilde: Vector::zeros(m2),
            b_tilde: Vector::zeros(m2),
            c_tilde: Vector::zeros(m2),
            a: 0.0,
            c,
            epsilon: -1.0,
        }
    }

    /// `ε = -1` candidate with `b̃` solved from `Ω⁰(b̃, ·) = Ω⁰(ã, (Id - cB)·)`.
    pub fn with_shift(b: Mat, a_tilde: Vector, a: f64, c: f64) -> Self {
        let b_tilde = solve_b_tilde(&b, &a_tilde, c);
        NilpotentCandidate {
            c_tilde: Vector::zeros(b.nrows()),
            b,
            a_tilde,
            b_tilde,
            a,
            c,
            epsilon: -1.0,
        }
    }

    /// `2(n - 1)`.
    pub fn middle_dim(&self) -> usize {
        self.b.nrows()
    }

    /// `n` for which the candidate's blocks fit.
    pub fn n(&self) -> usize {
        self.middle_dim() / 2 + 1
    }

    fn check(&self) -> Result<()> {
        let m2 = self.middle_dim();
        if m2 == 0 || !m2.is_multiple_of(2) || self.b.ncols() != m2 {
            return Err(Error::invalid("B must be square of even size 2(n-1) >= 2"));
        }
        for v in [&self.a_tilde, &self.b_tilde, &self.c_tilde] {
            if v.len() != m2 {
                return Err(Error::Dimension {
                    expected: m2,
                    found: v.len(),
                });
            }
        }
        if self.epsilon != 1.0 && self.epsilon != -1.0 {
            return Err(Error::invalid("epsilon must be +1 or -1"));
        }
        Ok(())
    }

    /// The nilpotent model matching the candidate's size and `ε`.
    pub fn model(&self) -> Result<(SymplecticModel, CharacteristicElement)> {
        self.check()?;
        let q = if self.epsilon < 0.0 { 1 } else { 2 };
        build_model(Case::Nilpotent { p: 2, q }, self.n())
    }
}

fn omega0(m2: usize) -> Mat {
    crate::linalg::standard_omega(m2 / 2)
}

/// `b̃` from `Ω⁰ᵀ b̃ = ᵗ(ãᵀ Ω⁰ (Id - cB))`.
pub fn solve_b_tilde(b: &Mat, a_tilde: &Vector, c: f64) -> Vector {
    let m2 = b.nrows();
    let o0 = omega0(m2);
    let rhs = (a_tilde.transpose() * &o0 * (Mat::identity(m2, m2) - b * c)).transpose();
    o0.transpose().lu().solve(&rhs).expect("Ω⁰ is invertible")
}

/// Block assembly of `K(p, P, p′)` with `p″ = ap + Ω⁰(b̃, P) + cp′`.
pub fn candidate_matrix_k(
    cand: &NilpotentCandidate,
    p: f64,
    big_p: &Vector,
    p_prime: f64,
) -> Result<Mat> {
    cand.check()?;
    let m2 = cand.middle_dim();
    if big_p.len() != m2 {
        return Err(Error::Dimension {
            expected: m2,
            found: big_p.len(),
        });
    }
    let o0 = omega0(m2);
    let eps = cand.epsilon;
    let d = m2 + 4;
    let w = &cand.a_tilde * p + &cand.b * big_p + &cand.c_tilde * p_prime;
    let p2 = cand.a * p + form(&o0, &cand.b_tilde, big_p) + cand.c * p_prime;
    let mut k = Mat::zeros(d, d);
    for off in [0, d - 2] {
        k[(off, off + 1)] = -eps * p;
        k[(off + 1, off)] = p;
    }
    let row0 = -(big_p.transpose() * &o0);
    let row1 = -(w.transpose() * &o0) * eps;
    for j in 0..m2 {
        k[(0, 2 + j)] = row0[j];
        k[(1, 2 + j)] = row1[j];
        k[(2 + j, d - 2)] = big_p[j];
        k[(2 + j, d - 1)] = w[j];
    }
    k[(0, d - 2)] = -p2;
    k[(0, d - 1)] = eps * p_prime;
    k[(1, d - 2)] = p_prime;
    k[(1, d - 1)] = p2;
    Ok(k)
}

/// Generators `K(1,0,0)`, `K(0,e_a,0)`, `K(0,0,1)`.
pub fn generators(cand: &NilpotentCandidate) -> Result<Vec<Mat>> {
    let m2 = cand.middle_dim();
    let zero = Vector::zeros(m2);
    let mut out = vec![candidate_matrix_k(cand, 1.0, &zero, 0.0)?];
    for i in 0..m2 {
        out.push(candidate_matrix_k(cand, 0.0, &unit(m2, i), 0.0)?);
    }
    out.push(candidate_matrix_k(cand, 0.0, &zero, 1.0)?);
    Ok(out)
}

/// Residuals of the two closure identities and of each derived condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport {
    /// Vector identity `(*)`.
    pub star: f64,
    /// Scalar identity `(**)`.
    pub star_star: f64,
    pub c_tilde_zero: f64,
    /// `|B² + ε·Id|`.
    pub b_square: f64,
    /// `max(|c² - 1|, [ε = +1])`.
    pub eps_and_c: f64,
    /// `Ω⁰(b̃, ·) - Ω⁰(ã, (Id - cB)·)` on a basis.
    pub reltildeb: f64,
    /// `Ω⁰((B - c)X, (B - c)Y)` on basis pairs.
    pub relstar: f64,
}

impl ClosureReport {
    pub fn residual(&self) -> f64 {
        self.star.max(self.star_star)
    }

    pub fn conditions(&self) -> [(&'static str, f64); 5] {
        [
            ("c_tilde_zero", self.c_tilde_zero),
            ("b_square", self.b_square),
            ("eps_minus_one_and_c_square_one", self.eps_and_c),
            ("reltildeb", self.reltildeb),
            ("relstar", self.relstar),
        ]
    }

    pub fn all_conditions_hold(&self, tol: f64) -> bool {
        self.conditions().iter().all(|(_, v)| *v <= tol)
    }
}

/// The two identities equivalent to `span{K} + ℝA` being a subalgebra,
/// evaluated for `(p, P, p′), (q, Q, q′)` ranging over the unit generators
/// (enough by multilinearity).
fn star_pair(
    cand: &NilpotentCandidate,
    o0: &Mat,
    g1: (f64, &Vector, f64),
    g2: (f64, &Vector, f64),
) -> (f64, f64) {
    let (p, big_p, pp) = g1;
    let (q, big_q, qp) = g2;
    let eps = cand.epsilon;
    let c = cand.c;
    let om = |u: &Vector, v: &Vector| form(o0, u, v);
    let (b, at, bt, ct) = (&cand.b, &cand.a_tilde, &cand.b_tilde, &cand.c_tilde);
    let bb = b * b;
    let wp = at * p + b * big_p + ct * pp;
    let wq = at * q + b * big_q + ct * qp;
    let lhs = (big_q * p - big_p * q) * eps;
    let scalar = -2.0 * c * (p * qp - pp * q) - eps * om(&wp, big_q) + eps * om(&wq, big_p);
    let rhs = &bb * big_p * q - &bb * big_q * p
        + (b * ct) * (q * pp - p * qp)
        + ct * (-2.0 * p * om(bt, big_q) + 2.0 * q * om(bt, big_p))
        + ct * scalar;
    let l2 = 2.0 * eps * (p * qp - pp * q) + om(big_p, big_q) - eps * om(&wp, &wq);
    let inner = b * big_p * q - b * big_q * p + ct * (q * pp - p * qp);
    let r2 = om(bt, &inner) + c * (-2.0 * p * om(bt, big_q) + 2.0 * q * om(bt, big_p)) + c * scalar;
    (sup((lhs - rhs).iter()), (l2 - r2).abs())
}

pub fn closure_conditions(cand: &NilpotentCandidate) -> Result<ClosureReport> {
    cand.check()?;
    let m2 = cand.middle_dim();
    let o0 = omega0(m2);
    let zero = Vector::zeros(m2);
    let mut gens: Vec<(f64, Vector, f64)> = vec![(1.0, zero.clone(), 0.0)];
    for i in 0..m2 {
        gens.push((0.0, unit(m2, i), 0.0));
    }
    gens.push((0.0, zero, 1.0));
    let (mut s1, mut s2): (f64, f64) = (0.0, 0.0);
    for g in &gens {
        for h in &gens {
            let (a, b) = star_pair(cand, &o0, (g.0, &g.1, g.2), (h.0, &h.1, h.2));
            s1 = s1.max(a);
            s2 = s2.max(b);
        }
    }
    let id = Mat::identity(m2, m2);
    let b_square = sup((&cand.b * &cand.b + &id * cand.epsilon).iter());
    let eps_and_c = (cand.c * cand.c - 1.0)
        .abs()
        .max(if cand.epsilon > 0.0 { 1.0 } else { 0.0 });
    let shifted = &id - &cand.b * cand.c;
    let (mut reltildeb, mut relstar): (f64, f64) = (0.0, 0.0);
    let bmc = &cand.b - &id * cand.c;
    for i in 0..m2 {
        let ei = unit(m2, i);
        reltildeb = reltildeb.max(
            (form(&o0, &cand.b_tilde, &ei) - form(&o0, &cand.a_tilde, &(&shifted * &ei))).abs(),
        );
        for j in 0..m2 {
            let ej = unit(m2, j);
            relstar = relstar.max(form(&o0, &(&bmc * &ei), &(&bmc * &ej)).abs());
        }
    }
    Ok(ClosureReport {
        star: s1,
        star_star: s2,
        c_tilde_zero: sup(cand.c_tilde.iter()),
        b_square,
        eps_and_c,
        reltildeb,
        relstar,
    })
}

/// Closure of `span{generators} + ℝA` computed directly with matrices.
pub fn matrix_closure_residual(cand: &NilpotentCandidate) -> Result<f64> {
    let (model, a) = cand.model()?;
    let gens = generators(cand)?;
    let s = MatrixLieSubspace::span_of_mod(
        model.ambient_dim(),
        &gens,
        std::slice::from_ref(&a.a),
        tol::ALGEBRAIC,
    );
    Ok(closure_residual(&s))
}

/// `h_{B,ã,a,c}` without validating the preconditions; used for negative controls.
pub fn build_h_unchecked(cand: &NilpotentCandidate) -> Result<MatrixLieSubspace> {
    let (model, a) = cand.model()?;
    MatrixLieSubspace::from_basis_mod(
        model.ambient_dim(),
        generators(cand)?,
        std::slice::from_ref(&a.a),
        tol::ALGEBRAIC,
    )
}

/// `h_{B,ã,a,c}` modulo `ℝA`, with basis `K(1,0,0)`, `K(0,e_a,0)`, `K(0,0,1)`.
/// Requires `B² = Id`, `c² = 1` and `Ω⁰((B-c)X, (B-c)Y) = 0`.
pub fn build_h(b: &Mat, a_tilde: &Vector, a: f64, c: f64) -> Result<MatrixLieSubspace> {
    let cand = NilpotentCandidate::with_shift(b.clone(), a_tilde.clone(), a, c);
    cand.check()?;
    let report = closure_conditions(&cand)?;
    for (name, value) in report.conditions() {
        if value > tol::ALGEBRAIC {
            return Err(Error::Candidate {
                condition: name.to_string(),
                residual: value,
            });
        }
    }
    let h = build_h_unchecked(&cand)?;
    let closure = closure_residual(&h);
    if closure > tol::CLOSURE {
        return Err(Error::NotClosed(closure));
    }
    Ok(h)
}

/// Output of [`normalize_candidate`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub candidate: NilpotentCandidate,
    /// Conjugating elements in the order applied.
    pub conjugators: Vec<Mat>,
    /// Largest distance of `Ad(g)` of an old generator from the new algebra.
    pub span_residual: f64,
    /// Largest `|ᵗgΩg - Ω|` or `|gA - Ag|` over the conjugators.
    pub centralizer_residual: f64,
    pub closure_before: f64,
    pub closure_after: f64,
}

/// The unipotent element moving `ã` to `ã + u`.
pub fn shift_conjugator(u: &Vector) -> Mat {
    let m2 = u.len();
    let d = m2 + 4;
    let o0 = omega0(m2);
    let mut g = Mat::identity(d, d);
    let row = -(u.transpose() * &o0);
    for j in 0..m2 {
        g[(0, 2 + j)] = row[j];
        g[(2 + j, d - 2)] = u[j];
    }
    g
}

/// The shear moving `a` to `a + 2rc`.
pub fn shear_conjugator(m2: usize, r: f64) -> Mat {
    let d = m2 + 4;
    let mut g = Mat::identity(d, d);
    g[(0, d - 2)] = r;
    g[(1, d - 1)] = -r;
    g
}

fn conjugate_span_residual(g: &Mat, old: &MatrixLieSubspace, new: &MatrixLieSubspace) -> f64 {
    let inv = g
        .clone()
        .try_inverse()
        .expect("unipotent conjugator is invertible");
    old.basis
        .iter()
        .map(|k| new.distance(&(g * k * &inv)))
        .fold(0.0, f64::max)
}

/// Conjugate an accepted candidate to `ã = 0`, then `a = 0`.
pub fn normalize_candidate(cand: &NilpotentCandidate) -> Result<Normalization> {
    let (model, a_el) = cand.model()?;
    let m2 = cand.middle_dim();
    let o0 = omega0(m2);
    let h0 = build_h_unchecked(cand)?;
    let closure_before = closure_residual(&h0);
    let mut conjugators = Vec::new();
    let mut span_residual: f64 = 0.0;
    let mut cur = cand.clone();
    let mut cur_h = h0;

    if sup(cur.a_tilde.iter()) > 0.0 {
        let u = -&cur.a_tilde;
        let g = shift_conjugator(&u);
        let new_a = cur.a - cur.c * form(&o0, &u, &cur.a_tilde);
        let next = NilpotentCandidate {
            a_tilde: Vector::zeros(m2),
            b_tilde: solve_b_tilde(&cur.b, &Vector::zeros(m2), cur.c),
            a: new_a,
            ..cur.clone()
        };
        let next_h = build_h_unchecked(&next)?;
        span_residual = span_residual.max(conjugate_span_residual(&g, &cur_h, &next_h));
        conjugators.push(g);
        cur = next;
        cur_h = next_h;
    }
    if cur.a != 0.0 {
        let r = -cur.a / (2.0 * cur.c);
        let g = shear_conjugator(m2, r);
        let next = NilpotentCandidate {
            a: 0.0,
            ..cur.clone()
        };
        let next_h = build_h_unchecked(&next)?;
        span_residual = span_residual.max(conjugate_span_residual(&g, &cur_h, &next_h));
        conjugators.push(g);
        cur = next;
        cur_h = next_h;
    }
    let centralizer_residual = conjugators
        .iter()
        .map(|g| crate::geometry::chart::centralizer_defect(&model, &a_el, g))
        .fold(0.0, f64::max);
    Ok(Normalization {
        candidate: cur,
        conjugators,
        span_residual,
        centralizer_residual,
        closure_before,
        closure_after: closure_residual(&cur_h),
    })
}

fn darboux_parts(cp: &ChartPoint) -> Result<(f64, &Vector, f64)> {
    match cp {
        ChartPoint::Darboux { y0, y, gamma } => Ok((*y0, y, *gamma)),
        _ => Err(Error::NoChart(
            "closed forms use the (y⁰, Y, γ) chart".into(),
        )),
    }
}

/// Closed form of the fundamental field of `K(p, P, p′)` (convention
/// `d/ds π(exp(-sK)x)`), components ordered `(y⁰, Y, γ)`.
pub fn fundamental_field_p2q1(
    b: &Mat,
    c: f64,
    gen: (f64, &Vector, f64),
    cp: &ChartPoint,
) -> Result<Vector> {
    let (y0, y, gamma) = darboux_parts(cp)?;
    let _ = y0;
    let (p, big_p, pp) = gen;
    let m2 = b.nrows();
    if big_p.len() != m2 || y.len() != m2 {
        return Err(Error::Dimension {
            expected: m2,
            found: big_p.len().min(y.len()),
        });
    }
    let o0 = omega0(m2);
    let (ch, sh) = (gamma.cosh(), gamma.sinh());
    let bp = b * big_p;
    let mut out = Vector::zeros(m2 + 2);
    let t = sh + c * ch;
    out[0] = -(form(&o0, big_p, y) * sh + form(&o0, &bp, y) * ch + pp * t * t);
    let yc = -(big_p * ch + &bp * sh);
    out.rows_mut(1, m2).copy_from(&yc);
    out[m2 + 1] = -p;
    Ok(out)
}

/// `f = p y⁰ - (1/2c) p′ e^{2cγ} - Ω⁰(P, Y) ch γ - Ω⁰(BP, Y) sh γ`.
pub fn moment_map_f(b: &Mat, c: f64, gen: (f64, &Vector, f64), cp: &ChartPoint) -> Result<f64> {
    let (y0, y, gamma) = darboux_parts(cp)?;
    let (p, big_p, pp) = gen;
    let o0 = omega0(b.nrows());
    let bp = b * big_p;
    Ok(p * y0
        - pp / (2.0 * c) * (2.0 * c * gamma).exp()
        - form(&o0, big_p, y) * gamma.cosh()
        - form(&o0, &bp, y) * gamma.sinh())
}

/// `½(Ω⁰(BP, BQ) - Ω⁰(P, Q))`, the obstruction to a strongly Hamiltonian action.
pub fn strongly_hamiltonian_defect(b: &Mat, _c: f64, big_p: &Vector, big_q: &Vector) -> f64 {
    let o0 = omega0(b.nrows());
    0.5 * (form(&o0, &(b * big_p), &(b * big_q)) - form(&o0, big_p, big_q))
}

/// Largest defect over basis pairs.
pub fn strongly_hamiltonian_defect_max(b: &Mat, c: f64) -> f64 {
    let m2 = b.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..m2 {
        for j in 0..m2 {
            worst = worst.max(strongly_hamiltonian_defect(b, c, &unit(m2, i), &unit(m2, j)).abs());
        }
    }
    worst
}

/// Coordinates `(p, P, p′)` of a generator `K(p, P, p′)`.
pub type GeneratorCoords = (f64, Vector, f64);

/// `[K(p,P,p′), K(q,Q,q′)] = K(0, qBP - pBQ, -2c(pq′ - qp′) + Ω⁰(BP,Q) + Ω⁰(P,BQ))`
/// modulo `ℝA`, checked on random generator pairs of a normalized candidate.
pub fn bracket_formula_residual(
    cand: &NilpotentCandidate,
    pairs: &[(GeneratorCoords, GeneratorCoords)],
) -> Result<f64> {
    let (_, a) = cand.model()?;
    let o0 = omega0(cand.middle_dim());
    let d = a.a.nrows();
    let line = MatrixLieSubspace::zero(d, tol::ALGEBRAIC).modulo(std::slice::from_ref(&a.a));
    let mut worst: f64 = 0.0;
    for ((p, bp_, pp), (q, bq_, qp)) in pairs {
        let k1 = candidate_matrix_k(cand, *p, bp_, *pp)?;
        let k2 = candidate_matrix_k(cand, *q, bq_, *qp)?;
        let b = &cand.b;
        let big = b * bp_ * *q - b * bq_ * *p;
        let s = -2.0 * cand.c * (p * qp - q * pp)
            + form(&o0, &(b * bp_), bq_)
            + form(&o0, bp_, &(b * bq_));
        let rhs = candidate_matrix_k(cand, 0.0, &big, s)?;
        worst = worst.max(sup(line.reduce(&(commutator(&k1, &k2) - rhs)).iter()));
    }
    Ok(worst)
}

/// For `B = c·Id`: the derived algebra of `h` is Heisenberg of dimension
/// `2n - 1` and `D = K(1,0,0)` acts on it with eigenvalues `-c` (multiplicity
/// `2n - 2`) and `-2c` (multiplicity 1).
pub fn heisenberg_extension_check(
    n: usize,
    c: f64,
) -> Result<(StructureCertificate, CertificateReport)> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    let m2 = 2 * (n - 1);
    let b = Mat::identity(m2, m2) * c;
    let h = build_h(&b, &Vector::zeros(m2), 0.0, c)?;
    let derived = bracket_span(&h, &h)?;
    let cert = series_certificate(&derived)?;
    let mut rep = CertificateReport::new("heisenberg-extension");
    rep.set_config("n", n);
    rep.set_config("c", c);
    rep.dimension("dim_h", h.dim(), 2 * n);
    rep.dimension("dim_derived", derived.dim(), 2 * n - 1);
    rep.flag("derived_heisenberg", cert.heisenberg, true);
    rep.flag("h_solvable", series_certificate(&h)?.solvable, true);
    let dgen = candidate_matrix_k(
        &NilpotentCandidate::normalized(b, c),
        1.0,
        &Vector::zeros(m2),
        0.0,
    )?;
    let spaces = ad_eigenspaces(&derived, &dgen)?;
    let find = |target: f64| {
        spaces
            .iter()
            .find(|s| (s.eigenvalue - target).abs() <= 1e-6)
            .map(|s| s.space.dim())
            .unwrap_or(0)
    };
    rep.dimension("ad_d_multiplicity_minus_c", find(-c), 2 * n - 2);
    rep.dimension("ad_d_multiplicity_minus_2c", find(-2.0 * c), 1);
    rep.dimension("ad_d_distinct_eigenvalues", spaces.len(), 2);
    Ok((cert, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_generator_gives_zero() {
        let cand = NilpotentCandidate::normalized(Mat::identity(2, 2), 1.0);
        assert_eq!(
            candidate_matrix_k(&cand, 0.0, &Vector::zeros(2), 0.0).unwrap(),
            Mat::zeros(6, 6)
        );
    }

    #[test]
    fn p_only_matrix() {
        let cand = NilpotentCandidate::normalized(Mat::identity(2, 2), 1.0);
        let k = candidate_matrix_k(&cand, 1.0, &Vector::zeros(2), 0.0).unwrap();
        let nz: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .filter(|&(i, j)| k[(i, j)] != 0.0)
            .collect();
        assert_eq!(nz, vec![(0, 1), (1, 0), (4, 5), (5, 4)]);
    }

    #[test]
    fn defect_example() {
        let b = Mat::from_diagonal(&Vector::from_vec(vec![1.0, -1.0]));
        let d = strongly_hamiltonian_defect(&b, 1.0, &unit(2, 0), &unit(2, 1));
        assert!((d + 1.0).abs() < 1e-15);
    }

    #[test]
    fn field_examples() {
        let b = Mat::identity(2, 2);
        let cp = ChartPoint::Darboux {
            y0: 0.3,
            y: Vector::from_vec(vec![0.0, 0.0]),
            gamma: 0.0,
        };
        let v = fundamental_field_p2q1(&b, 1.0, (0.0, &Vector::zeros(2), 1.0), &cp).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-15);
        let pv = Vector::from_vec(vec![0.5, -2.0]);
        let v = fundamental_field_p2q1(&b, 1.0, (0.0, &pv, 0.0), &cp).unwrap();
        assert_eq!(v[0], 0.0);
        assert_eq!(v.rows(1, 2).into_owned(), -pv);
        assert!(
            (moment_map_f(&b, 1.0, (0.0, &Vector::zeros(2), 1.0), &cp).unwrap() + 0.5).abs()
                < 1e-15
        );
    }
}
