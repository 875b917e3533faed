//! Ambient symplectic space, characteristic elements and the quadric Σ_A.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{form, signature, sp_defect, standard_omega, sup, Mat, Vector};
use crate::tol;

/// Normal form of the characteristic element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Case {
    /// `μ = k² > 0`: `A = ±k` on two Lagrangian subspaces.
    Hyperbolic { k: f64 },
    /// `μ = -k² < 0`: `Ω(x, Ax)` has signature `(2p, 2q)` with `q = n + 1 - p`.
    Elliptic { k: f64, p: usize },
    /// `μ = 0`: `A` has rank `p` and `Ω(x, Ax)` has `q` positive directions.
    Nilpotent { p: usize, q: usize },
    /// Ambient space of [`build_a_from_ricci`]: basis `(e₀, e₀′, e₁ … e₂ₙ)`.
    RicciFrame { mu: f64 },
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::Hyperbolic { .. } => "hyperbolic",
            Case::Elliptic { .. } => "elliptic",
            Case::Nilpotent { .. } => "nilpotent",
            Case::RicciFrame { .. } => "ricci-frame",
        }
    }
}

/// The ambient symplectic vector space `(ℝ^{2(n+1)}, Ω)` in the basis
/// adapted to one normal form.
#[derive(Clone, Debug)]
pub struct SymplecticModel {
    pub n: usize,
    pub omega: Mat,
    pub case: Case,
    pub basis_labels: Vec<String>,
}

impl SymplecticModel {
    pub fn ambient_dim(&self) -> usize {
        2 * (self.n + 1)
    }

    pub fn omega(&self, x: &Vector, y: &Vector) -> f64 {
        form(&self.omega, x, y)
    }

    /// Number of `f`-basis vectors, `2(n + 1 - p)`, in the nilpotent case.
    pub fn middle_dim(&self) -> usize {
        match self.case {
            Case::Nilpotent { p, .. } => 2 * (self.n + 1 - p),
            _ => 0,
        }
    }

    /// The form `Ω⁰` on the middle block (nilpotent case); standard block form.
    pub fn omega0(&self) -> Mat {
        standard_omega(self.middle_dim() / 2)
    }

    /// `ε = -1` when `q = 1` and `+1` when `q = 2` for the rank-2 nilpotent case.
    pub fn epsilon(&self) -> Option<f64> {
        match self.case {
            Case::Nilpotent { p: 2, q: 1 } => Some(-1.0),
            Case::Nilpotent { p: 2, q: 2 } => Some(1.0),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> String {
        match self.case {
            Case::Hyperbolic { k } => format!("case=hyperbolic\nn={}\nk={}\n", self.n, k),
            Case::Elliptic { k, p } => format!(
                "case=elliptic\nn={}\nk={}\np={}\nq={}\n",
                self.n,
                k,
                p,
                self.n + 1 - p
            ),
            Case::Nilpotent { p, q } => format!("case=nilpotent\nn={}\np={}\nq={}\n", self.n, p, q),
            Case::RicciFrame { mu } => format!("case=ricci-frame\nn={}\nmu={}\n", self.n, mu),
        }
    }
}

/// A nonzero `A ∈ sp` with `A² = μ·Id`.
#[derive(Clone, Debug)]
pub struct CharacteristicElement {
    pub a: Mat,
    pub mu: f64,
}

impl CharacteristicElement {
    /// Validate membership in `sp(Ω)`, `A² = μ·Id` and `A ≠ 0`.
    pub fn new(omega: &Mat, a: Mat, mu: f64, tol: f64) -> Result<Self> {
        if a.nrows() != omega.nrows() || a.ncols() != omega.ncols() {
            return Err(Error::Dimension {
                expected: omega.nrows(),
                found: a.nrows(),
            });
        }
        let d = a.nrows();
        let sp = sup(sp_defect(omega, &a).iter());
        if sp > tol {
            return Err(Error::invalid(format!("A is not in sp: residual {sp:e}")));
        }
        let sq = sup((&a * &a - Mat::identity(d, d) * mu).iter());
        if sq > tol {
            return Err(Error::invalid(format!("A² ≠ μ·Id: residual {sq:e}")));
        }
        if sup(a.iter()) == 0.0 {
            return Err(Error::invalid("A must be nonzero"));
        }
        Ok(CharacteristicElement { a, mu })
    }

    /// `√|μ|`.
    pub fn k(&self) -> f64 {
        self.mu.abs().sqrt()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.a * x
    }
}

/// A point of Σ_A.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaPoint {
    pub x: Vector,
}

impl SigmaPoint {
    pub fn new(model: &SymplecticModel, a: &CharacteristicElement, x: Vector) -> Result<Self> {
        let s = sigma_value(model, a, &x)?;
        if (s - 1.0).abs() > tol::SIGMA_INPUT {
            return Err(Error::NotOnSigma((s - 1.0).abs()));
        }
        Ok(SigmaPoint { x })
    }
}

fn labels(prefix: &str, range: std::ops::Range<usize>) -> impl Iterator<Item = String> + '_ {
    range.map(move |i| format!("{prefix}{i}"))
}

/// Build the ambient model and characteristic element for one normal form.
pub fn build_model(case: Case, n: usize) -> Result<(SymplecticModel, CharacteristicElement)> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let big_n = n + 1;
    let d = 2 * big_n;
    let (omega, a, mu, basis_labels) = match case {
        Case::Hyperbolic { k } => {
            check_k(k)?;
            let omega = standard_omega(big_n);
            let mut a = Mat::zeros(d, d);
            for i in 0..big_n {
                a[(i, i)] = k;
                a[(big_n + i, big_n + i)] = -k;
            }
            let names = labels("e", 1..big_n + 1)
                .chain(labels("e'", 1..big_n + 1))
                .collect();
            (omega, a, k * k, names)
        }
        Case::Elliptic { k, p } => {
            check_k(k)?;
            if p < 1 || p > big_n {
                return Err(Error::invalid(format!(
                    "elliptic case needs 1 <= p <= n+1, got p={p}"
                )));
            }
            // ẽ-basis: Ω standard and A = k [[0, -I_pq], [I_pq, 0]].
            let omega = standard_omega(big_n);
            let s = signature(p, big_n - p);
            let mut a = Mat::zeros(d, d);
            a.view_mut((0, big_n), (big_n, big_n)).copy_from(&(-&s * k));
            a.view_mut((big_n, 0), (big_n, big_n)).copy_from(&(&s * k));
            let names = labels("ẽ", 1..d + 1).collect();
            (omega, a, -k * k, names)
        }
        Case::Nilpotent { p, q } => {
            if p < 1 || p > big_n || q < 1 || q > p {
                return Err(Error::invalid(format!(
                    "nilpotent case needs 1 <= q <= p <= n+1, got p={p}, q={q}"
                )));
            }
            let m = big_n - p;
            let j = signature(q, p - q);
            let mut omega = Mat::zeros(d, d);
            omega.view_mut((0, p + 2 * m), (p, p)).copy_from(&(-&j));
            omega.view_mut((p + 2 * m, 0), (p, p)).copy_from(&j);
            omega
                .view_mut((p, p), (2 * m, 2 * m))
                .copy_from(&standard_omega(m));
            let mut a = Mat::zeros(d, d);
            for i in 0..p {
                a[(i, p + 2 * m + i)] = 1.0;
            }
            let names = labels("e", 1..p + 1)
                .chain(labels("f", 1..2 * m + 1))
                .chain(labels("e*", 1..p + 1))
                .collect();
            (omega, a, 0.0, names)
        }
        Case::RicciFrame { .. } => {
            return Err(Error::invalid(
                "the Ricci frame is built by build_a_from_ricci",
            ));
        }
    };
    let model = SymplecticModel {
        n,
        omega,
        case,
        basis_labels,
    };
    let a = CharacteristicElement::new(&model.omega, a, mu, tol::SIGMA)?;
    Ok((model, a))
}

fn check_k(k: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::invalid(format!(
            "k must be a positive number, got {k}"
        )));
    }
    Ok(())
}

/// Build `A` from a Ricci endomorphism `ρ̌ ∈ sp(2n)` with `ρ̌² = μ·Id`.
///
/// The ambient basis is `(e₀, e₀′, e₁ … e₂ₙ)` with `Ω(e₀, e₀′) = 1` and the
/// standard form on the last `2n` vectors. The result squares to
/// `μ / (4(n+1)²) · Id`.
pub fn build_a_from_ricci(
    rho_check: &Mat,
    mu: f64,
    n: usize,
) -> Result<(SymplecticModel, CharacteristicElement)> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let m = 2 * n;
    if rho_check.nrows() != m || rho_check.ncols() != m {
        return Err(Error::Dimension {
            expected: m,
            found: rho_check.nrows(),
        });
    }
    let scale = sup(rho_check.iter()).max(mu.abs()).max(1.0);
    let sq = sup((rho_check * rho_check - Mat::identity(m, m) * mu).iter());
    if sq > tol::ALGEBRAIC * scale * scale {
        return Err(Error::invalid(format!("ρ̌² ≠ μ·Id: residual {sq:e}")));
    }
    let sp = sup(sp_defect(&standard_omega(n), rho_check).iter());
    if sp > tol::ALGEBRAIC * scale {
        return Err(Error::invalid(format!(
            "ρ̌ is not in sp(2n): residual {sp:e}"
        )));
    }
    let d = m + 2;
    let nn = (n + 1) as f64;
    let mut omega = Mat::zeros(d, d);
    omega[(0, 1)] = 1.0;
    omega[(1, 0)] = -1.0;
    omega.view_mut((2, 2), (m, m)).copy_from(&standard_omega(n));
    let mut a = Mat::zeros(d, d);
    a[(0, 1)] = mu / (4.0 * nn * nn);
    a[(1, 0)] = 1.0;
    a.view_mut((2, 2), (m, m))
        .copy_from(&(rho_check * (-1.0 / (2.0 * nn))));
    let mu_a = mu / (4.0 * nn * nn);
    let names = ["e0".to_string(), "e0'".to_string()]
        .into_iter()
        .chain(labels("e", 1..m + 1))
        .collect();
    let model = SymplecticModel {
        n,
        omega,
        case: Case::RicciFrame { mu: mu_a },
        basis_labels: names,
    };
    let a = CharacteristicElement::new(&model.omega, a, mu_a, tol::ALGEBRAIC * scale)?;
    Ok((model, a))
}

/// Closed form of `exp(tA)` by the sign of `μ`.
pub fn exp_ta(a: &CharacteristicElement, t: f64) -> Mat {
    let d = a.a.nrows();
    let id = Mat::identity(d, d);
    let k = a.k();
    if a.mu > 0.0 {
        id * (k * t).cosh() + &a.a * ((k * t).sinh() / k)
    } else if a.mu < 0.0 {
        id * (k * t).cos() + &a.a * ((k * t).sin() / k)
    } else {
        id + &a.a * t
    }
}

/// `Ω(x, Ax)`.
pub fn sigma_value(model: &SymplecticModel, a: &CharacteristicElement, x: &Vector) -> Result<f64> {
    if x.len() != model.ambient_dim() {
        return Err(Error::Dimension {
            expected: model.ambient_dim(),
            found: x.len(),
        });
    }
    Ok(model.omega(x, &a.apply(x)))
}

const SAMPLE_RETRIES: usize = 1000;

/// Seeded points of Σ_A. Free coordinates are standard normal; one
/// designated group of coordinates is solved for so that `Ω(x, Ax) = 1`.
/// When `q = 1` in the nilpotent case the points lie on the component with
/// positive first `e*` coordinate.
pub fn sample_sigma(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    count: usize,
    seed: u64,
) -> Result<Vec<SigmaPoint>> {
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut attempt = 0;
        loop {
            attempt += 1;
            if attempt > SAMPLE_RETRIES {
                return Err(Error::Sampling(SAMPLE_RETRIES));
            }
            if let Some(x) = draw(model, a, &mut rng) {
                let x = polish(model, a, x);
                let s = sigma_value(model, a, &x)?;
                if (s - 1.0).abs() <= tol::SIGMA {
                    out.push(SigmaPoint { x });
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn normal_vec(rng: &mut ChaCha8Rng, len: usize) -> Vector {
    Vector::from_iterator(len, (0..len).map(|_| StandardNormal.sample(rng)))
}

fn draw(
    model: &SymplecticModel,
    a: &CharacteristicElement,
    rng: &mut ChaCha8Rng,
) -> Option<Vector> {
    let big_n = model.n + 1;
    let d = model.ambient_dim();
    let mut x = normal_vec(rng, d);
    match model.case {
        Case::Hyperbolic { k } => {
            // Shift x₋ along x₊ until ⟨x₊, x₋⟩ = -1/2k.
            let plus = x.rows(0, big_n).into_owned();
            let nrm2 = plus.norm_squared();
            if nrm2 < 1e-2 {
                return None;
            }
            let minus = x.rows(big_n, big_n).into_owned();
            let lambda = (-0.5 / k - plus.dot(&minus)) / nrm2;
            x.rows_mut(big_n, big_n).copy_from(&(minus + plus * lambda));
            Some(x)
        }
        Case::Elliptic { k, p } => {
            // k(|a₊|² + |b₊|² - |a₋|² - |b₋|²) = 1: rescale the positive part.
            let pos = |i: usize| i % big_n < p;
            let (mut sp, mut sn) = (0.0, 0.0);
            for i in 0..d {
                if pos(i) {
                    sp += x[i] * x[i];
                } else {
                    sn += x[i] * x[i];
                }
            }
            if sp < 1e-2 {
                return None;
            }
            let scale = ((sn + 1.0 / k) / sp).sqrt();
            for i in (0..d).filter(|&i| pos(i)) {
                x[i] *= scale;
            }
            Some(x)
        }
        Case::Nilpotent { p, q } => {
            let off = p + 2 * (big_n - p);
            if p == 2 && q == 1 {
                let alpha: f64 = StandardNormal.sample(rng);
                x[off] = alpha.cosh();
                x[off + 1] = alpha.sinh();
                return Some(x);
            }
            // Σ_{i<q} (x*ⁱ)² - Σ_{i≥q} (x*ⁱ)² = 1: rescale the positive part.
            let (mut sp, mut sn) = (0.0, 0.0);
            for i in 0..p {
                let v = x[off + i] * x[off + i];
                if i < q {
                    sp += v;
                } else {
                    sn += v;
                }
            }
            if sp < 1e-2 {
                return None;
            }
            let scale = ((sn + 1.0) / sp).sqrt();
            for i in 0..q {
                x[off + i] *= scale;
            }
            if q == 1 {
                x[off] = x[off].abs();
            }
            Some(x)
        }
        Case::RicciFrame { .. } => {
            let s = model.omega(&x, &a.apply(&x));
            if s < 1e-2 {
                return None;
            }
            Some(x / s.sqrt())
        }
    }
}

/// One rescaling step that removes rounding drift from `Ω(x, Ax) = 1`.
fn polish(model: &SymplecticModel, a: &CharacteristicElement, x: Vector) -> Vector {
    let s = model.omega(&x, &a.apply(&x));
    if s > 0.0 {
        x / s.sqrt()
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_example_blocks() {
        let (m, a) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
        assert_eq!(a.a.nrows(), 6);
        assert_eq!(a.a[(0, 4)], 1.0);
        assert_eq!(a.a[(1, 5)], 1.0);
        assert_eq!(a.a.iter().filter(|v| **v != 0.0).count(), 2);
        assert_eq!(m.omega[(0, 4)], -1.0);
        assert_eq!(m.omega[(1, 5)], 1.0);
        assert_eq!(m.omega[(4, 0)], 1.0);
        assert_eq!(m.omega[(5, 1)], -1.0);
        assert_eq!(a.mu, 0.0);
    }

    #[test]
    fn hyperbolic_example() {
        let (_, a) = build_model(Case::Hyperbolic { k: 1.0 }, 2).unwrap();
        let expected = Mat::from_diagonal(&Vector::from_vec(vec![1., 1., 1., -1., -1., -1.]));
        assert_eq!(a.a, expected);
        assert_eq!(&a.a * &a.a, Mat::identity(6, 6));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_model(Case::Hyperbolic { k: 1.0 }, 1).is_err());
        assert!(build_model(Case::Hyperbolic { k: 0.0 }, 2).is_err());
        assert!(build_model(Case::Elliptic { k: 1.0, p: 0 }, 2).is_err());
        assert!(build_model(Case::Elliptic { k: 1.0, p: 4 }, 2).is_err());
        assert!(build_model(Case::Nilpotent { p: 1, q: 2 }, 2).is_err());
        assert!(build_model(Case::Nilpotent { p: 4, q: 1 }, 2).is_err());
    }

    #[test]
    fn exp_at_zero_and_nilpotent() {
        let (_, a) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
        assert_eq!(exp_ta(&a, 0.0), Mat::identity(6, 6));
        assert_eq!(exp_ta(&a, 3.0), Mat::identity(6, 6) + &a.a * 3.0);
    }

    #[test]
    fn sigma_base_values() {
        let (m, a) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
        let x = crate::linalg::unit(6, 4);
        assert_eq!(sigma_value(&m, &a, &x).unwrap(), 1.0);
        let (m, a) = build_model(Case::Elliptic { k: 1.0, p: 1 }, 2).unwrap();
        let x = crate::linalg::unit(6, 0);
        assert_eq!(sigma_value(&m, &a, &x).unwrap(), 1.0);
        assert!(sigma_value(&m, &a, &Vector::zeros(5)).is_err());
    }

    #[test]
    fn nilpotent_sample_on_positive_component() {
        let (m, a) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
        let pts = sample_sigma(&m, &a, 1, 0).unwrap();
        let x = &pts[0].x;
        assert!((x[4] * x[4] - x[5] * x[5] - 1.0).abs() < 1e-12);
        assert!(x[4] > 0.0);
    }

    #[test]
    fn hyperbolic_samples_satisfy_pairing() {
        let k = 1.0;
        let (m, a) = build_model(Case::Hyperbolic { k }, 2).unwrap();
        for pt in sample_sigma(&m, &a, 10, 1).unwrap() {
            let pairing = pt.x.rows(0, 3).dot(&pt.x.rows(3, 3));
            assert!((pairing + 0.5 / k).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let (m, a) = build_model(Case::Elliptic { k: 2.0, p: 2 }, 3).unwrap();
        assert_eq!(
            sample_sigma(&m, &a, 5, 9).unwrap(),
            sample_sigma(&m, &a, 5, 9).unwrap()
        );
    }

    #[test]
    fn ricci_zero_gives_rank_one_nilpotent() {
        let (_, a) = build_a_from_ricci(&Mat::zeros(4, 4), 0.0, 2).unwrap();
        assert_eq!(crate::linalg::rank(&a.a, 1e-12), 1);
        assert_eq!(sup((&a.a * &a.a).iter()), 0.0);
    }

    #[test]
    fn ricci_rejects_inconsistent_square() {
        let rho = Mat::identity(4, 4);
        assert!(build_a_from_ricci(&rho, -1.0, 2).is_err());
    }
}
