//! Phase-plane analysis of the travelling-wave reduction
//!
//! ```text
//! R' = Y
//! Y' = (E R - [D^2 + beta R^(nu+3)/(nu+2) + sigma (nu+1) R^(nu+1) Y^2]) / (sigma R^(nu+2))
//! ```
//!
//! with `E = D^2/R1 + beta R1^(nu+2)/(nu+2)`, so that `(R1, 0)` is a
//! critical point. The flow conserves
//! `H = 2 D^2 R^(nu+1)/(nu+1) + beta R^(2(nu+2))/(nu+2)^2 + sigma Y^2 R^(2(nu+1)) - 2 E R^(nu+2)/(nu+2)`.

mod explicit;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use explicit::{corrected_antiderivative, explicit_homoclinic, printed_antiderivative, ExplicitHomoclinic, PRINTED_OMEGA0};

use crate::ode::{self, Halt, Node};
use crate::symcore::rational::{self, to_f64};
use crate::symcore::{ParamPoly, Rational, Value};
use crate::{quad, roots};

/// Trajectories halt when `R` falls to this level.
pub const R_FLOOR: f64 = 1e-9;
/// Truncation of the homoclinic tail above `R1`.
pub const TAIL_DELTA: f64 = 1e-6;
const ROOT_TOL: f64 = 1e-15;
const QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HydroError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no second critical point: D^2 > beta*R1^(nu+3) is violated")]
    NoSecondRoot,
    #[error("no turning point beyond R2")]
    NoTurningPoint,
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("step size underflow at omega = {0}")]
    StiffnessFailure(f64),
    #[error("trajectory reached R <= {R_FLOOR} at omega = {0}")]
    BoundaryHit(f64),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HydroModel {
    nu: Rational,
    beta: Rational,
    sigma: Rational,
    d: Rational,
    r1: Rational,
    nu_int: Option<u32>,
    fl: Floats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Floats {
    nu: f64,
    beta: f64,
    sigma: f64,
    d: f64,
    r1: f64,
    e: f64,
    h1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub r: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Saddle,
    Center,
    Degenerate,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::Saddle => "saddle",
            PointKind::Center => "center",
            PointKind::Degenerate => "degenerate",
        }
    }
}

/// A critical point `(r, 0)`; the linearization has eigenvalues
/// `+-sqrt(lambda_sq)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub r: f64,
    pub kind: PointKind,
    pub lambda_sq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointReport {
    pub points: Vec<CriticalPoint>,
    pub r2: f64,
    /// `Psi = P/((R - R1)(R - R2))` is positive on the sampled grid.
    pub psi_positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub omega: f64,
    pub r: f64,
    pub y: f64,
    pub h: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<PhaseSample>,
    nodes: Vec<Node<2>>,
}

impl Trajectory {
    /// Interpolated `(R, Y)` at `omega` inside the integrated range.
    pub fn at(&self, omega: f64) -> Option<PhaseState> {
        ode::sample(&self.nodes, omega).map(|y| PhaseState { r: y[0], y: y[1] })
    }

    /// `max |H - H(start)| / max(1, |H(start)|)` over accepted steps.
    pub fn energy_drift(&self) -> f64 {
        let h0 = self.samples[0].h;
        let scale = h0.abs().max(1.0);
        self.samples.iter().fold(0.0f64, |m, s| m.max((s.h - h0).abs() / scale))
    }

    pub fn end(&self) -> PhaseSample {
        *self.samples.last().expect("trajectory has a start sample")
    }
}

/// A homoclinic orbit integrated from the saddle's unstable direction.
#[derive(Debug, Clone)]
pub struct HomoclinicFlow {
    pub trajectory: Trajectory,
    pub peak_omega: f64,
    pub peak_r: f64,
}

fn rat_f64(q: &Rational) -> f64 {
    to_f64(q)
}

impl HydroModel {
    pub fn new(nu: Rational, beta: Rational, sigma: Rational, d: Rational, r1: Rational) -> Result<Self, HydroError> {
        let bad = |m: &str| Err(HydroError::InvalidModel(m.into()));
        if nu <= rational::int(-2) {
            return bad("nu must exceed -2");
        }
        if nu == rational::int(-1) {
            return bad("nu = -1 is not supported");
        }
        if !beta.is_positive() {
            return bad("beta must be positive");
        }
        if !sigma.is_positive() {
            return bad("sigma must be positive");
        }
        if !r1.is_positive() {
            return bad("R1 must be positive");
        }
        let nu_int = if nu.is_integer() { nu.to_integer().to_u32() } else { None };
        let mut m = HydroModel {
            nu,
            beta,
            sigma,
            d,
            r1,
            nu_int,
            fl: Floats { nu: 0.0, beta: 0.0, sigma: 0.0, d: 0.0, r1: 0.0, e: 0.0, h1: 0.0 },
        };
        m.fl = Floats {
            nu: rat_f64(&m.nu),
            beta: rat_f64(&m.beta),
            sigma: rat_f64(&m.sigma),
            d: rat_f64(&m.d),
            r1: rat_f64(&m.r1),
            e: 0.0,
            h1: 0.0,
        };
        m.fl.e = m.e().to_f64();
        m.fl.h1 = m.h1().to_f64();
        Ok(m)
    }

    /// `D = R1 = sigma = 1`, `beta = 1/2`, `nu = 0`.
    pub fn reference_instance() -> Self {
        let one = rational::int(1);
        HydroModel::new(rational::int(0), rational::ratio(1, 2), one.clone(), one.clone(), one).expect("valid")
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }
    pub fn beta(&self) -> &Rational {
        &self.beta
    }
    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }
    pub fn r1(&self) -> &Rational {
        &self.r1
    }

    /// `C1 = D/R1`.
    pub fn c1(&self) -> Rational {
        &self.d / &self.r1
    }

    /// `R^(nu + k)` in floats.
    fn pw(&self, r: f64, k: i32) -> f64 {
        match self.nu_int {
            Some(n) => r.powi(n as i32 + k),
            None => r.powf(self.fl.nu + k as f64),
        }
    }

    /// `R1^(nu + k)`, exact for integer `nu`.
    fn r1_pow(&self, k: i32) -> Value {
        match self.nu_int {
            Some(n) => Value::Exact(rational::powi(&self.r1, n as i32 + k)),
            None => Value::Approx(self.pw(self.fl.r1, k)),
        }
    }

    fn nu_plus(&self, k: i64) -> Rational {
        &self.nu + rational::int(k)
    }

    /// `E = D^2/R1 + beta R1^(nu+2)/(nu+2)`.
    pub fn e(&self) -> Value {
        let d2 = Value::Exact(&self.d * &self.d / &self.r1);
        let t = Value::Exact(&self.beta / self.nu_plus(2)) * self.r1_pow(2);
        d2 + t
    }

    /// `D^2 > beta R1^(nu+3)`.
    pub fn theorem_holds(&self) -> bool {
        let lhs = Value::Exact(&self.d * &self.d);
        let rhs = Value::Exact(self.beta.clone()) * self.r1_pow(3);
        (lhs - rhs).signum() > 0
    }

    /// `P(R) = beta R^(nu+3)/(nu+2) - E R + D^2`.
    pub fn p(&self, r: f64) -> f64 {
        let f = &self.fl;
        f.beta * self.pw(r, 3) / (f.nu + 2.0) - f.e * r + f.d * f.d
    }

    pub fn p_prime(&self, r: f64) -> f64 {
        let f = &self.fl;
        f.beta * (f.nu + 3.0) * self.pw(r, 2) / (f.nu + 2.0) - f.e
    }

    pub fn hamiltonian(&self, s: PhaseState) -> f64 {
        let f = &self.fl;
        let (r, y) = (s.r, s.y);
        let r1 = self.pw(r, 1);
        let r2 = self.pw(r, 2);
        2.0 * f.d * f.d * r1 / (f.nu + 1.0) + f.beta * r2 * r2 / ((f.nu + 2.0) * (f.nu + 2.0)) + f.sigma * y * y * r1 * r1
            - 2.0 * f.e * r2 / (f.nu + 2.0)
    }

    /// `H1 = H(R1, 0)`, exact for integer `nu`.
    pub fn h1(&self) -> Value {
        match self.hamiltonian_exact(&self.r1, &Rational::zero()) {
            Some(q) => Value::Exact(q),
            None => Value::Approx(self.hamiltonian(PhaseState { r: self.fl.r1, y: 0.0 })),
        }
    }

    /// `P` as a polynomial in `R` (integer `nu >= 0` only).
    pub fn p_poly(&self) -> Option<ParamPoly> {
        let n = self.nu_int?;
        let e = self.e().as_exact()?.clone();
        let mono = |c: Rational, k: u32| ParamPoly::monomial(c, &[("R", k)]);
        Some(&(&mono(&self.beta / self.nu_plus(2), n + 3) - &mono(e, 1)) + &ParamPoly::constant(&self.d * &self.d))
    }

    /// `H` as a polynomial in `R`, `Y` (integer `nu >= 0` only).
    pub fn hamiltonian_poly(&self) -> Option<ParamPoly> {
        let n = self.nu_int?;
        let e = self.e().as_exact()?.clone();
        let mono = |c: Rational, k: u32, y: u32| ParamPoly::monomial(c, &[("R", k), ("Y", y)]);
        let two = rational::int(2);
        let terms = [
            mono(&two * &self.d * &self.d / self.nu_plus(1), n + 1, 0),
            mono(&self.beta / (self.nu_plus(2) * self.nu_plus(2)), 2 * n + 4, 0),
            mono(self.sigma.clone(), 2 * n + 2, 2),
            mono(-(&two * e / self.nu_plus(2)), n + 2, 0),
        ];
        Some(terms.iter().fold(ParamPoly::zero(), |acc, t| &acc + t))
    }

    /// `G = H1 - H(R, 0)` as a polynomial in `R` (integer `nu >= 0` only).
    pub fn g_poly(&self) -> Option<ParamPoly> {
        let h = self.hamiltonian_poly()?;
        let h1 = ParamPoly::constant(self.h1().as_exact()?.clone());
        let zero_y = [(String::from("Y"), Rational::zero())].into_iter().collect();
        Some(&h1 - &h.substitute(&zero_y))
    }

    /// Exact `H` at rational `(R, Y)` for integer `nu`.
    pub fn hamiltonian_exact(&self, r: &Rational, y: &Rational) -> Option<Rational> {
        let n = self.nu_int? as i32;
        let e = self.e().as_exact()?.clone();
        let two = rational::int(2);
        let rp = |k: i32| rational::powi(r, n + k);
        let r1 = rp(1);
        let r2 = rp(2);
        Some(
            &two * &self.d * &self.d * &r1 / self.nu_plus(1)
                + &self.beta * &r2 * &r2 / (self.nu_plus(2) * self.nu_plus(2))
                + &self.sigma * y * y * &r1 * &r1
                - &two * e * &r2 / self.nu_plus(2),
        )
    }

    /// `G(R) = H1 - H(R, 0)`. Close to `R1`, where `G` has a double zero,
    /// it is evaluated as `-2 * integral from R1 to R of s^nu P(s) ds`.
    pub fn g(&self, r: f64) -> f64 {
        let r1 = self.fl.r1;
        if (r - r1).abs() < 0.05 * r1 {
            let f = |s: f64| -2.0 * self.pw(s, 0) * self.p(s);
            let (v, _) = quad::gk15(&f, r1, r);
            v
        } else {
            self.fl.h1 - self.hamiltonian(PhaseState { r, y: 0.0 })
        }
    }

    /// Right-hand side of the travelling-wave system.
    pub fn vector_field(&self, s: PhaseState) -> (f64, f64) {
        let f = &self.fl;
        let (r, y) = (s.r, s.y);
        let bracket = f.d * f.d + f.beta * self.pw(r, 3) / (f.nu + 2.0) + f.sigma * (f.nu + 1.0) * self.pw(r, 1) * y * y;
        (y, (f.e * r - bracket) / (f.sigma * self.pw(r, 2)))
    }

    fn lambda_sq(&self, r: f64) -> f64 {
        -self.p_prime(r) / (self.fl.sigma * self.pw(r, 2))
    }

    /// Half the fastest linear timescale at the critical points.
    fn max_step(&self) -> f64 {
        let mut rate = self.lambda_sq(self.fl.r1).abs();
        if let Ok(r2) = self.r2() {
            rate = rate.max(self.lambda_sq(r2).abs());
        }
        if rate > 0.0 {
            0.5 / rate.sqrt()
        } else {
            f64::INFINITY
        }
    }

    fn kind(l: f64) -> PointKind {
        if l > 0.0 {
            PointKind::Saddle
        } else if l < 0.0 {
            PointKind::Center
        } else {
            PointKind::Degenerate
        }
    }

    /// Second critical point `R2 > R1`.
    pub fn r2(&self) -> Result<f64, HydroError> {
        if !self.theorem_holds() {
            return Err(HydroError::NoSecondRoot);
        }
        let r1 = self.fl.r1;
        let lo = r1 * (1.0 + 1e-9);
        roots::bracket_up(|r| self.p(r), lo, 2.0 * r1, ROOT_TOL).ok_or(HydroError::NoSecondRoot)
    }

    /// `Psi(R) = P(R)/((R - R1)(R - R2))`, continued through the roots.
    pub fn psi(&self, r: f64, r2: f64) -> f64 {
        let r1 = self.fl.r1;
        let near = |a: f64| (r - a).abs() <= 1e-7 * a;
        if near(r1) {
            self.p_prime(r1) / (r1 - r2)
        } else if near(r2) {
            self.p_prime(r2) / (r2 - r1)
        } else {
            self.p(r) / ((r - r1) * (r - r2))
        }
    }

    pub fn critical_points(&self) -> Result<CriticalPointReport, HydroError> {
        let r2 = self.r2()?;
        let r1 = self.fl.r1;
        let top = 10.0 * self.turning_point().unwrap_or(r2);
        let lo = 1e-3 * r1.min(top);
        let n = 400;
        let psi_positive = (0..n).all(|i| {
            let r = lo * (top / lo).powf(i as f64 / (n - 1) as f64);
            self.psi(r, r2) > 0.0
        });
        let points = [r1, r2]
            .iter()
            .map(|&r| {
                let l = self.lambda_sq(r);
                CriticalPoint { r, kind: Self::kind(l), lambda_sq: l }
            })
            .collect();
        Ok(CriticalPointReport { points, r2, psi_positive })
    }

    /// Angle between the outgoing separatrix and the `R` axis at `R1`.
    pub fn saddle_angle(&self) -> Result<f64, HydroError> {
        self.r2()?;
        Ok(self.lambda_sq(self.fl.r1).sqrt().atan())
    }

    /// First zero `R3 > R2` of `G`.
    pub fn turning_point(&self) -> Result<f64, HydroError> {
        let r2 = self.r2()?;
        let r1 = self.fl.r1;
        let r3 = roots::bracket_up(|r| self.g(r), r2, r2 + (r2 - r1), ROOT_TOL).ok_or(HydroError::NoTurningPoint)?;
        if r3 > r2 {
            Ok(r3)
        } else {
            Err(HydroError::NoTurningPoint)
        }
    }

    /// `Y+-(R) = +-sqrt(G(R)/(sigma R^(2(nu+1))))`.
    pub fn separatrix(&self, r: f64) -> Result<(f64, f64), HydroError> {
        if !(r > 0.0) {
            return Err(HydroError::OutOfDomain(format!("R = {r}")));
        }
        let g = self.g(r);
        let tol = 1e-12 * self.fl.h1.abs().max(1.0);
        if g < -tol {
            return Err(HydroError::OutOfDomain(format!("G({r}) = {g} < 0")));
        }
        let r1 = self.pw(r, 1);
        let y = (g.max(0.0) / (self.fl.sigma * r1 * r1)).sqrt();
        Ok((y, -y))
    }

    fn run(
        &self,
        start: PhaseState,
        span: (f64, f64),
        rel_tol: f64,
        mut extra: impl FnMut(&Node<2>) -> bool,
    ) -> Result<(Trajectory, bool), HydroError> {
        if !(rel_tol >= 1e-13) {
            return Err(HydroError::InvalidInput("rel_tol must be at least 1e-13".into()));
        }
        if !(start.r > 0.0) || !start.y.is_finite() {
            return Err(HydroError::InvalidInput("start needs R > 0".into()));
        }
        let mut floor = false;
        let rhs = |_: f64, y: &[f64; 2]| {
            let (a, b) = self.vector_field(PhaseState { r: y[0], y: y[1] });
            [a, b]
        };
        let sol = ode::integrate(rhs, span.0, [start.r, start.y], span.1, rel_tol, rel_tol, self.max_step(), |n| {
            if n.y[0] <= R_FLOOR {
                floor = true;
                return true;
            }
            extra(n)
        });
        let samples = sol
            .nodes
            .iter()
            .map(|n| {
                let s = PhaseState { r: n.y[0], y: n.y[1] };
                PhaseSample { omega: n.t, r: s.r, y: s.y, h: self.hamiltonian(s) }
            })
            .collect();
        let traj = Trajectory { samples, nodes: sol.nodes };
        match sol.halt {
            Some(Halt::Underflow(t)) => Err(HydroError::StiffnessFailure(t)),
            Some(Halt::Stopped(t)) if floor => Err(HydroError::BoundaryHit(t)),
            Some(Halt::Stopped(_)) => Ok((traj, true)),
            None => Ok((traj, false)),
        }
    }

    /// Adaptive Dormand-Prince trajectory over `span`, one sample per
    /// accepted step.
    pub fn flow(&self, start: PhaseState, span: (f64, f64), rel_tol: f64) -> Result<Trajectory, HydroError> {
        self.run(start, span, rel_tol, |_| false).map(|(t, _)| t)
    }

    /// Period and return point of the orbit through `(r0, 0)`, `R2 < r0 < R3`,
    /// on the section `Y = 0`, `R > R2`.
    pub fn return_map(&self, r0: f64, rel_tol: f64) -> Result<(f64, f64), HydroError> {
        let r2 = self.r2()?;
        if !(r0 > r2) {
            return Err(HydroError::InvalidInput("start must lie right of R2".into()));
        }
        let mut went_below = false;
        let (traj, stopped) = self.run(PhaseState { r: r0, y: 0.0 }, (0.0, 1e4), rel_tol, |n| {
            if n.y[1] > 0.0 && n.y[0] < r2 {
                went_below = true;
            }
            went_below && n.y[1] <= 0.0 && n.y[0] > r2
        })?;
        if !stopped {
            return Err(HydroError::OutOfDomain("orbit did not return to the section".into()));
        }
        let k = traj.nodes.len() - 1;
        let t = crossing(&traj.nodes[k - 1], &traj.nodes[k])?;
        let s = traj.at(t).expect("inside range");
        Ok((t, s.r))
    }

    /// `sqrt(sigma) R^(1+nu)/sqrt(G(R))`.
    pub fn quadrature_integrand(&self, r: f64) -> f64 {
        self.fl.sigma.sqrt() * self.pw(r, 1) / self.g(r).sqrt()
    }

    /// `integral` of the integrand over `[R3 - sb^2, R3 - sa^2]` in
    /// `s = sqrt(R3 - R)`.
    fn quad_s(&self, r3: f64, slope: f64, sa: f64, sb: f64) -> Result<f64, HydroError> {
        let f = |s: f64| {
            let r = r3 - s * s;
            let ratio = if s * s < 1e-10 * r3 { slope } else { self.g(r) / (s * s) };
            2.0 * self.fl.sigma.sqrt() * self.pw(r, 1) / ratio.sqrt()
        };
        quad::integrate(f, sa, sb, 1e-13, QUAD_TOL, 4000)
            .map_err(|e| HydroError::QuadratureFailure(format!("estimate {} with error {}", e.estimate, e.error)))
    }

    fn homoclinic_setup(&self) -> Result<(f64, f64), HydroError> {
        let r3 = self.turning_point()?;
        // -G'(R3) = 2 R3^nu P(R3)
        let slope = 2.0 * self.pw(r3, 0) * self.p(r3);
        Ok((r3, slope))
    }

    /// `omega(R) = integral from R to R3` of the quadrature integrand, so
    /// `omega(R3) = 0`.
    pub fn homoclinic_omega(&self, r: f64) -> Result<f64, HydroError> {
        let (r3, slope) = self.homoclinic_setup()?;
        let r1 = self.fl.r1;
        if !(r > r1 && r <= r3) {
            return Err(HydroError::OutOfDomain(format!("R = {r} outside (R1, R3]")));
        }
        self.quad_s(r3, slope, 0.0, (r3 - r).sqrt())
    }

    /// Samples `(omega, R)` of the homoclinic profile by quadrature, peak
    /// at `omega = 0`, mirrored to negative `omega`. `n` levels of `R`
    /// from `R3` down to `R1 + 1e-6`, geometric in `R - R1`; `2n - 1`
    /// samples in increasing `omega`.
    pub fn homoclinic_profile(&self, n: usize) -> Result<Vec<(f64, f64)>, HydroError> {
        if n < 2 {
            return Err(HydroError::InvalidInput("n must be at least 2".into()));
        }
        let (r3, slope) = self.homoclinic_setup()?;
        let r1 = self.fl.r1;
        let width = r3 - r1;
        let ratio = TAIL_DELTA / width;
        let mut half = Vec::with_capacity(n);
        half.push((0.0, r3));
        let mut omega = 0.0;
        let mut s_prev = 0.0;
        for k in 1..n {
            let r = if k == n - 1 {
                r1 + TAIL_DELTA
            } else {
                r1 + width * ratio.powf(k as f64 / (n - 1) as f64)
            };
            let s = (r3 - r).sqrt();
            omega += self.quad_s(r3, slope, s_prev, s)?;
            s_prev = s;
            half.push((omega, r));
        }
        let mut out: Vec<(f64, f64)> = half.iter().skip(1).rev().map(|&(w, r)| (-w, r)).collect();
        out.extend(half);
        Ok(out)
    }

    /// Integrates from `(R1 + eps, eps*tan(angle))` along the unstable
    /// direction until the orbit returns to within `eps` of `R1`.
    pub fn homoclinic_flow(&self, eps: f64, rel_tol: f64) -> Result<HomoclinicFlow, HydroError> {
        let slope = self.saddle_angle()?.tan();
        let r1 = self.fl.r1;
        let start = PhaseState { r: r1 + eps, y: eps * slope };
        let (traj, stopped) = self.run(start, (0.0, 1e4), rel_tol, |n| n.y[1] < 0.0 && n.y[0] - r1 < eps)?;
        if !stopped {
            return Err(HydroError::OutOfDomain("orbit did not return to the saddle".into()));
        }
        let k = traj
            .nodes
            .windows(2)
            .position(|w| w[0].y[1] > 0.0 && w[1].y[1] <= 0.0)
            .ok_or_else(|| HydroError::OutOfDomain("no turning point on the orbit".into()))?;
        let peak = crossing(&traj.nodes[k], &traj.nodes[k + 1])?;
        let peak_r = traj.at(peak).expect("inside range").r;
        Ok(HomoclinicFlow { trajectory: traj, peak_omega: peak, peak_r })
    }

    /// The model is the documented special case with a closed-form
    /// homoclinic.
    pub fn is_reference_instance(&self) -> bool {
        let one = Rational::one();
        self.nu.is_zero() && self.beta == rational::ratio(1, 2) && self.sigma == one && self.d == one && self.r1 == one
    }
}

/// `omega` where the interpolated `Y` vanishes between two nodes.
fn crossing(a: &Node<2>, b: &Node<2>) -> Result<f64, HydroError> {
    roots::brent(|t| ode::hermite(a, b, t)[1], a.t, b.t, 1e-15)
        .ok_or_else(|| HydroError::OutOfDomain("no section crossing".into()))
}

#[cfg(test)]
mod tests;
