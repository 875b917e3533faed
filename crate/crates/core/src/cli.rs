//! Command implementations behind the `transvect` binary. Each command takes
//! a [`RunConfig`] and returns text or a [`CertificateReport`]; argument
//! parsing lives in the binary.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exact;
use crate::geometry::chart::{
    chart_kind, chart_omega, darboux_matrix, pushforward_matrix, ChartKind,
};
use crate::geometry::connection::{cyclic_residual, ricci_type_residual_on};
use crate::geometry::{
    horizontal_basis, project, reduced_symmetry_check, ricci_endomorphism, ricci_tensor,
};
use crate::io;
use crate::linalg::{sp_defect, sup, Mat};
use crate::model::{
    build_model, exp_ta, sample_sigma, Case, CharacteristicElement, SymplecticModel,
};
use crate::report::{CertificateReport, Verdict};
use crate::tol::{self, Tolerances};
use crate::transitive::{self, quaternion, NilpotentCandidate, SearchOptions};
use crate::transvection::{a_central_residual, classify_transvection, transvection_algebra};

/// Environment variable overriding the default algebraic tolerance.
pub const TOL_ENV: &str = "TRANSVECT_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseName {
    Hyperbolic,
    Elliptic,
    Nilpotent,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub case: CaseName,
    pub n: usize,
    pub k: f64,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub fd_step: f64,
    pub tol_algebraic: f64,
    pub tol_rank: f64,
    pub exact: bool,
    /// Perturb `Ω` after construction; a negative control for the geometry suite.
    pub corrupt_omega: bool,
}

impl RunConfig {
    pub fn new(case: CaseName, n: usize) -> Self {
        RunConfig {
            case,
            n,
            k: 1.0,
            p: None,
            q: None,
            seed: 0,
            samples: 50,
            fd_step: tol::FD_STEP,
            tol_algebraic: tol::ALGEBRAIC,
            tol_rank: tol::RANK_REL,
            exact: false,
            corrupt_omega: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::invalid("samples must be at least 1"));
        }
        for (name, v) in [
            ("fd-step", self.fd_step),
            ("tol", self.tol_algebraic),
            ("tol-rank", self.tol_rank),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn normal_form(&self) -> Result<Case> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| {
                Error::invalid(format!("--{name} is required for the {:?} case", self.case))
            })
        };
        Ok(match self.case {
            CaseName::Hyperbolic => Case::Hyperbolic { k: self.k },
            CaseName::Elliptic => Case::Elliptic {
                k: self.k,
                p: need(self.p, "p")?,
            },
            CaseName::Nilpotent => Case::Nilpotent {
                p: need(self.p, "p")?,
                q: need(self.q, "q")?,
            },
        })
    }

    pub fn model(&self) -> Result<(SymplecticModel, CharacteristicElement)> {
        self.validate()?;
        build_model(self.normal_form()?, self.n)
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            algebraic: self.tol_algebraic,
            rank: self.tol_rank,
            fd_step: self.fd_step,
            fd_check: tol::FD_CHECK,
        }
    }

    fn echo(&self, rep: &mut CertificateReport) {
        rep.set_config("case", format!("{:?}", self.case).to_lowercase());
        rep.set_config("n", self.n);
        if self.case != CaseName::Nilpotent {
            rep.set_config("k", self.k);
        }
        if let Some(p) = self.p {
            rep.set_config("p", p);
        }
        if let Some(q) = self.q {
            rep.set_config("q", q);
        }
        rep.set_config("seed", self.seed);
        rep.set_config("samples", self.samples);
        rep.set_config("fd_step", self.fd_step);
        rep.set_config("tol", self.tol_algebraic);
        rep.set_config("tol_rank", self.tol_rank);
        if self.exact {
            rep.set_config("exact", true);
        }
    }
}

/// Default algebraic tolerance, taken from [`TOL_ENV`] when set.
pub fn default_tolerance() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| {
                Error::invalid(format!("{TOL_ENV} must be a positive number, got {v:?}"))
            }),
        Err(_) => Ok(tol::ALGEBRAIC),
    }
}

/// 1 for FAIL, 0 for every other verdict.
pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Fail => 1,
        _ => 0,
    }
}

/// 2 for usage and configuration errors, 1 for failures met mid-verification.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::Dimension { .. }
        | Error::Parse { .. }
        | Error::Io(_)
        | Error::NoChart(_)
        | Error::Candidate { .. } => 2,
        _ => 1,
    }
}

pub fn cmd_construct(cfg: &RunConfig) -> Result<String> {
    let (model, a) = cfg.model()?;
    let points = sample_sigma(&model, &a, cfg.samples, cfg.seed)?;
    let base = crate::transvection::base_point(&model, &a)?;
    let mut out = model.descriptor();
    out.push_str(&format!("mu={}\n", a.mu));
    out.push_str(&format!("basis={}\n", model.basis_labels.join(" ")));
    out.push_str(&format!("Omega={}\n", io::format_matrix(&model.omega)));
    out.push_str(&format!("A={}\n", io::format_matrix(&a.a)));
    out.push_str(&format!("base_point={}\n", io::format_vector(&base.x)));
    out.push_str(&format!("sigma_samples={}\n", points.len()));
    let chart = match chart_kind(&model) {
        Ok(ChartKind::TangentSphere) => {
            format!("tangent-sphere (M_A is diffeomorphic to TS^{})", model.n)
        }
        Ok(ChartKind::Ball) => format!("ball (M_A is diffeomorphic to C^{})", model.n),
        Ok(ChartKind::Darboux) => "darboux (y0, Y, gamma)".to_string(),
        Ok(ChartKind::Embedded) => "embedded (x - <x,x*>x*, X, x*)".to_string(),
        Err(e) => format!("none ({e})"),
    };
    out.push_str(&format!("chart={chart}\n"));
    if let Ok(cp) = project(&model, &a, &base.x) {
        out.push_str(&format!(
            "base_chart_point={}\n",
            io::format_vector(&cp.coords())
        ));
    }
    Ok(out)
}

/// Perturb one entry of `Ω` so that `A` leaves `sp(Ω)`.
fn corrupt(model: &mut SymplecticModel) {
    let d = model.ambient_dim();
    for j in [1, d - 1] {
        model.omega[(0, j)] += 1e-3;
        model.omega[(j, 0)] -= 1e-3;
    }
}

pub fn cmd_verify_geometry(cfg: &RunConfig) -> Result<CertificateReport> {
    let (mut model, a) = cfg.model()?;
    if cfg.corrupt_omega {
        corrupt(&mut model);
    }
    let tols = cfg.tolerances();
    let mut rep = CertificateReport::new("verify-geometry");
    cfg.echo(&mut rep);
    if cfg.corrupt_omega {
        rep.set_config("corrupt_omega", true);
    }
    let d = model.ambient_dim();
    let n = model.n;
    rep.residual("a_in_sp", sup(sp_defect(&model.omega, &a.a).iter()), 1e-12);
    rep.residual(
        "a_squared",
        sup((&a.a * &a.a - Mat::identity(d, d) * a.mu).iter()),
        1e-12,
    );
    if cfg.exact {
        match exact::identities_hold(&model, &a) {
            Some(ok) => {
                rep.flag("exact_identities", ok, true);
            }
            None => rep.note("exact mode skipped: non-finite entries"),
        }
    }

    let points = sample_sigma(&model, &a, cfg.samples, cfg.seed)?;
    let mut sigma: f64 = 0.0;
    let (mut cyclic, mut ricci, mut rho_sq, mut trace_route): (f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0);
    let rho_target = 4.0 * ((n + 1) * (n + 1)) as f64 * a.mu;
    let rho_scale = rho_target.abs().max(1.0);
    for pt in &points {
        sigma = sigma.max((model.omega(&pt.x, &a.apply(&pt.x)) - 1.0).abs());
        let frame = match horizontal_basis(&model, &a, &pt.x) {
            Ok(f) => f,
            Err(e) => {
                rep.failure("horizontal_frame", e.to_string());
                return Ok(rep);
            }
        };
        cyclic = cyclic.max(cyclic_residual(&model, &a, &frame));
        ricci = ricci.max(ricci_type_residual_on(&model, &a, &frame));
        let rho = ricci_endomorphism(&model, &a, &pt.x, &frame)?;
        let m = rho.nrows();
        rho_sq =
            rho_sq.max(sup((&rho * &rho - Mat::identity(m, m) * rho_target).iter()) / rho_scale);
        let w = frame.gram(&model);
        let r = ricci_tensor(&model, &a, &frame);
        trace_route = trace_route.max(sup((&w * &rho - r).iter()) / rho_scale);
    }
    rep.residual("sigma_membership", sigma, tol::SIGMA_INPUT);
    rep.residual("curvature_cyclic", cyclic, 1e-9);
    rep.residual("ricci_type", ricci, 1e-8);
    rep.residual("rho_squared_relative", rho_sq, 1e-9);
    rep.residual("ricci_trace_route_relative", trace_route, 1e-9);

    if let Ok(kind) = chart_kind(&model) {
        let mut flow: f64 = 0.0;
        for pt in points.iter().take(20) {
            let base = project(&model, &a, &pt.x)?;
            for t in [-3.0, -1.5, -0.5, 0.5, 1.5, 3.0] {
                let moved = project(&model, &a, &(exp_ta(&a, t) * &pt.x))?;
                flow = flow.max(base.distance(&moved) / sup(base.coords().iter()).max(1.0));
            }
        }
        rep.residual("projection_flow_invariant", flow, 1e-9);
        if kind == ChartKind::Darboux {
            let target = darboux_matrix(&model);
            let (mut closed, mut numeric): (f64, f64) = (0.0, 0.0);
            for pt in &points {
                closed = closed.max(sup((chart_omega(&model, &a, &pt.x, cfg.fd_step)?
                    - &target)
                    .iter()));
                let frame = horizontal_basis(&model, &a, &pt.x)?;
                let j = pushforward_matrix(&model, &a, &pt.x, &frame.vectors, cfg.fd_step, kind)?;
                let inv = j.try_inverse().ok_or_else(|| Error::RankDeficient {
                    what: "pushforward on the horizontal space".into(),
                    expected: 2 * n,
                    found: 0,
                })?;
                let lifts = &frame.vectors * inv;
                let w = lifts.transpose() * &model.omega * &lifts;
                numeric = numeric.max(sup((w - &target).iter()));
            }
            rep.residual("darboux_closed_form_lifts", closed, 1e-8);
            rep.residual("darboux_numeric_lifts", numeric, tol::FD_CHECK);
        }
    }

    let base = &points[0];
    let others = &points[1..points.len().min(21)];
    match reduced_symmetry_check(&model, &a, &base.x, others, &tols) {
        Ok(sym) => rep.absorb("symmetry", sym),
        Err(e) => {
            rep.failure("symmetry", e.to_string());
        }
    }
    Ok(rep)
}

pub fn cmd_transvection(cfg: &RunConfig) -> Result<CertificateReport> {
    let (model, a) = cfg.model()?;
    let mut rep = CertificateReport::new("transvection");
    cfg.echo(&mut rep);
    let n = model.n;
    let data = match transvection_algebra(&model, &a) {
        Ok(d) => d,
        Err(e) => {
            rep.failure("transvection_algebra", e.to_string());
            return Ok(rep);
        }
    };
    rep.residual(
        "sigma_squared_identity",
        data.sigma_square_residual,
        cfg.tol_algebraic,
    );
    rep.residual(
        "sigma_fixes_a",
        data.sigma_fixes_a_residual,
        cfg.tol_algebraic,
    );
    rep.residual(
        "a_central_in_g1",
        a_central_residual(&a, &data.g1),
        cfg.tol_algebraic,
    );
    rep.dimension("dim_p1", data.p1.dim(), 2 * n);
    rep.residual("g_closure", data.g_closure, tol::CLOSURE);
    if cfg.exact {
        match exact::centralizer_dim(&model, &a) {
            Some(dim) => {
                rep.dimension("dim_g1_exact_agrees", data.g1.dim(), dim);
            }
            None => rep.note("exact mode skipped: non-finite entries"),
        }
    }
    rep.note(format!(
        "dim g1 = {}, dim p1 = {}, dim k1 = {}, dim g = {}, A in k1: {}",
        data.g1.dim(),
        data.p1.dim(),
        data.k1.dim(),
        data.g.dim(),
        data.a_in_k1
    ));
    let class = classify_transvection(&data, &model)?;
    rep.note(format!("classification: {}", class.class.describe()));
    rep.note(format!(
        "derived series {:?}, lower central series {:?}",
        class.certificate.derived_series_dims, class.certificate.lower_central_dims
    ));
    rep.absorb("classification", class.report);
    Ok(rep)
}

pub fn cmd_find_transitive(
    cfg: &RunConfig,
    candidate: Option<NilpotentCandidate>,
    theta: Option<Vec<f64>>,
) -> Result<CertificateReport> {
    let (model, a) = cfg.model()?;
    if let Some(c) = &candidate {
        if model.case != (Case::Nilpotent { p: 2, q: 1 })
            && model.case != (Case::Nilpotent { p: 2, q: 2 })
        {
            return Err(Error::invalid(
                "candidate files apply to the nilpotent p=2 case",
            ));
        }
        if c.n() != model.n || c.middle_dim() != model.middle_dim() {
            return Err(Error::Dimension {
                expected: model.middle_dim(),
                found: c.middle_dim(),
            });
        }
    }
    let opts = SearchOptions {
        samples: cfg.samples,
        seed: cfg.seed,
        fd_step: cfg.fd_step,
        candidate,
        theta,
    };
    let mut rep = transitive::find_transitive(&model, &a, &opts)?;
    cfg.echo(&mut rep);
    Ok(rep)
}

/// Equivariance of `η` on seeded random triples and the orbit rank on `TS³`.
pub fn cmd_quaternion_evidence(
    cfg: &RunConfig,
    w: [f64; 3],
    triples: usize,
) -> Result<CertificateReport> {
    cfg.validate()?;
    if w.iter().all(|v| *v == 0.0) {
        return Err(Error::invalid("w must be nonzero"));
    }
    if triples == 0 {
        return Err(Error::invalid("triples must be at least 1"));
    }
    let mut rep = CertificateReport::new("quaternion-evidence");
    rep.set_config("seed", cfg.seed);
    rep.set_config("triples", triples);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut normal = || -> f64 { StandardNormal.sample(&mut rng) };
    let mut worst: f64 = 0.0;
    for _ in 0..triples {
        let mut q = [normal(), normal(), normal(), normal()];
        let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        q.iter_mut().for_each(|v| *v /= norm);
        let x = [normal(), normal(), normal()];
        let y = [normal(), normal(), normal()];
        let res = quaternion::equivariance_residual(q[0], &[q[1], q[2], q[3]], &x, &y)?;
        worst = worst.max(res);
    }
    rep.residual("eta_equivariance", worst, 1e-10);
    rep.absorb("", quaternion::orbit_rank_ts3_evidence(&w, cfg.fd_step)?);
    Ok(rep)
}
