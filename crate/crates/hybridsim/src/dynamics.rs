//! Two-mode exchange dynamics between the LC photon mode and the ion
//! motional mode.
//!
//! In the rotating frame the drive-activated interaction is
//!
//! ```text
//! H(t)/ħ = i·G·e^(−iΔt)·a·b† + H.c.,   Δ = ν − (ω_LC − ω_i),
//! ```
//!
//! with `a` the photon annihilator and `b†` the motional creator. The
//! Hamiltonian conserves total excitation number, so a single excitation
//! Rabi-flops between |1,0⟩ and |0,1⟩; on resonance a full swap takes
//! `t = π/2G`, and at detuning Δ the transfer probability follows the
//! closed form in [`analytic_transfer`], which doubles as the integration
//! oracle.
//!
//! States live on a truncated product Fock space, `(n_trunc+1)²` levels,
//! as either a pure amplitude vector or a density matrix. Integration is
//! fixed-step RK4; the density path adds zero-temperature Lindblad decay
//! `κ·D[a] + γ_ion·D[b]`. A truncation guard aborts the run if population
//! reaches the edge of the Fock space, and any non-finite amplitude aborts
//! immediately.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hilbert-space dimension for a per-mode truncation.
fn dim(n_trunc: usize) -> usize {
    (n_trunc + 1) * (n_trunc + 1)
}

/// Flat index of |n_lc, n_ion⟩.
fn idx(n_trunc: usize, n_lc: usize, n_ion: usize) -> usize {
    n_lc * (n_trunc + 1) + n_ion
}

/// Photon annihilator a ⊗ 1.
pub fn lc_annihilator(n_trunc: usize) -> Array2<C64> {
    let d = dim(n_trunc);
    let mut m = Array2::zeros((d, d));
    for nl in 1..=n_trunc {
        for ni in 0..=n_trunc {
            m[[idx(n_trunc, nl - 1, ni), idx(n_trunc, nl, ni)]] =
                C64::new((nl as f64).sqrt(), 0.0);
        }
    }
    m
}

/// Motional annihilator 1 ⊗ b.
pub fn ion_annihilator(n_trunc: usize) -> Array2<C64> {
    let d = dim(n_trunc);
    let mut m = Array2::zeros((d, d));
    for nl in 0..=n_trunc {
        for ni in 1..=n_trunc {
            m[[idx(n_trunc, nl, ni - 1), idx(n_trunc, nl, ni)]] =
                C64::new((ni as f64).sqrt(), 0.0);
        }
    }
    m
}

/// Exchange operator a·b†: moves one excitation from the photon mode to the
/// motional mode.
pub fn exchange_operator(n_trunc: usize) -> Array2<C64> {
    let d = dim(n_trunc);
    let mut m = Array2::zeros((d, d));
    for nl in 1..=n_trunc {
        for ni in 0..n_trunc {
            m[[idx(n_trunc, nl - 1, ni + 1), idx(n_trunc, nl, ni)]] =
                C64::new((nl as f64 * (ni + 1) as f64).sqrt(), 0.0);
        }
    }
    m
}

/// Interaction matrix H(t)/ħ (rad/s) on the truncated product space;
/// Hermitian at every t, ‖H‖ independent of t.
pub fn build_interaction(g_eff: f64, delta: f64, n_trunc: usize, t: f64) -> Array2<C64> {
    let m = exchange_operator(n_trunc);
    let phase = C64::from_polar(g_eff, -delta * t) * C64::i();
    let mut h: Array2<C64> = m.mapv(|v| v * phase);
    let ht = m.t().mapv(|v| v.conj() * phase.conj());
    h += &ht;
    h
}

/// State of the photon ⊗ motion system on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoModeState {
    Pure {
        n_trunc: usize,
        /// Flat amplitudes indexed by `n_lc·(n_trunc+1) + n_ion`.
        amplitudes: Array1<C64>,
    },
    Density {
        n_trunc: usize,
        matrix: Array2<C64>,
    },
}

impl TwoModeState {
    /// Pure Fock state |n_lc, n_ion⟩.
    pub fn fock(n_trunc: usize, n_lc: usize, n_ion: usize) -> Result<Self> {
        if n_trunc < 2 {
            return Err(Error::Domain(format!("n_trunc must be ≥ 2, got {n_trunc}")));
        }
        if n_lc > n_trunc || n_ion > n_trunc {
            return Err(Error::Domain(format!(
                "|{n_lc},{n_ion}⟩ outside truncation {n_trunc}"
            )));
        }
        let mut amplitudes = Array1::zeros(dim(n_trunc));
        amplitudes[idx(n_trunc, n_lc, n_ion)] = C64::new(1.0, 0.0);
        Ok(TwoModeState::Pure { n_trunc, amplitudes })
    }

    /// |n_lc, n_ion⟩⟨n_lc, n_ion| as a density matrix.
    pub fn fock_density(n_trunc: usize, n_lc: usize, n_ion: usize) -> Result<Self> {
        let pure = Self::fock(n_trunc, n_lc, n_ion)?;
        Ok(pure.to_density())
    }

    /// Pure state from raw amplitudes (length `(n_trunc+1)²`), taken as
    /// given; the evolution guards catch non-normalised or non-finite
    /// input.
    pub fn from_amplitudes(n_trunc: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != dim(n_trunc) {
            return Err(Error::Domain(format!(
                "expected {} amplitudes for n_trunc = {n_trunc}, got {}",
                dim(n_trunc),
                amplitudes.len()
            )));
        }
        Ok(TwoModeState::Pure { n_trunc, amplitudes: Array1::from(amplitudes) })
    }

    pub fn to_density(&self) -> TwoModeState {
        match self {
            TwoModeState::Pure { n_trunc, amplitudes } => {
                let d = amplitudes.len();
                let mut rho = Array2::zeros((d, d));
                for i in 0..d {
                    for j in 0..d {
                        rho[[i, j]] = amplitudes[i] * amplitudes[j].conj();
                    }
                }
                TwoModeState::Density { n_trunc: *n_trunc, matrix: rho }
            }
            dens => dens.clone(),
        }
    }

    pub fn n_trunc(&self) -> usize {
        match self {
            TwoModeState::Pure { n_trunc, .. } | TwoModeState::Density { n_trunc, .. } => *n_trunc,
        }
    }

    /// Σ|ψ|² (pure) or Re tr ρ (density); 1 for a physical state.
    pub fn norm(&self) -> f64 {
        match self {
            TwoModeState::Pure { amplitudes, .. } => {
                amplitudes.iter().map(|a| a.norm_sqr()).sum()
            }
            TwoModeState::Density { matrix, .. } => matrix.diag().iter().map(|d| d.re).sum(),
        }
    }

    /// Population of |n_lc, n_ion⟩.
    pub fn population(&self, n_lc: usize, n_ion: usize) -> f64 {
        let n = self.n_trunc();
        let i = idx(n, n_lc, n_ion);
        match self {
            TwoModeState::Pure { amplitudes, .. } => amplitudes[i].norm_sqr(),
            TwoModeState::Density { matrix, .. } => matrix[[i, i]].re,
        }
    }

    /// (⟨n_lc⟩, ⟨n_ion⟩).
    pub fn occupations(&self) -> (f64, f64) {
        let n = self.n_trunc();
        let mut n_lc = 0.0;
        let mut n_ion = 0.0;
        for nl in 0..=n {
            for ni in 0..=n {
                let p = self.population(nl, ni);
                n_lc += p * nl as f64;
                n_ion += p * ni as f64;
            }
        }
        (n_lc, n_ion)
    }

    /// Total population sitting on the truncation edge (either mode at
    /// n_trunc).
    pub fn boundary_population(&self) -> f64 {
        let n = self.n_trunc();
        let mut total = 0.0;
        for nl in 0..=n {
            for ni in 0..=n {
                if nl == n || ni == n {
                    total += self.population(nl, ni);
                }
            }
        }
        total
    }

    fn is_finite(&self) -> bool {
        match self {
            TwoModeState::Pure { amplitudes, .. } => {
                amplitudes.iter().all(|a| a.re.is_finite() && a.im.is_finite())
            }
            TwoModeState::Density { matrix, .. } => {
                matrix.iter().all(|a| a.re.is_finite() && a.im.is_finite())
            }
        }
    }
}

/// Fixed-step integration parameters. All rates angular (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsConfig {
    /// Effective exchange coupling G; the Hamiltonian-prefactor convention
    /// (2/3)·η·g₀ by default, the text convention η·g₀ if the caller says
    /// so.
    pub g_eff: f64,
    /// Drive detuning Δ.
    pub delta: f64,
    /// Photon decay rate κ (density path only).
    pub kappa: f64,
    /// Motional decoherence rate γ (density path only).
    pub gamma_ion: f64,
    /// Step size (s).
    pub dt: f64,
    /// End time (s).
    pub t_end: f64,
    /// Abort when boundary population exceeds this.
    pub truncation_tol: f64,
}

/// Steps per fastest cycle in [`DynamicsConfig::for_rates`].
const DEFAULT_STEPS_PER_CYCLE: f64 = 1000.0;
/// Hard ceiling: at most 1% of the fastest cycle per step.
const MAX_DT_FRACTION: f64 = 0.01;

impl DynamicsConfig {
    /// Fastest angular rate in the problem.
    fn max_rate(&self) -> f64 {
        self.g_eff
            .abs()
            .max(self.delta.abs())
            .max(self.kappa)
            .max(self.gamma_ion)
            .max(1e-300)
    }

    /// Config with dt chosen at 10⁻³ of the fastest cycle, running to
    /// `t_end`.
    pub fn for_rates(g_eff: f64, delta: f64, kappa: f64, gamma_ion: f64, t_end: f64) -> Self {
        let mut cfg = DynamicsConfig {
            g_eff,
            delta,
            kappa,
            gamma_ion,
            dt: 0.0,
            t_end,
            truncation_tol: 1e-6,
        };
        cfg.dt = 2.0 * std::f64::consts::PI / cfg.max_rate() / DEFAULT_STEPS_PER_CYCLE;
        cfg
    }

    /// Resonant lossless exchange, running one full swap `t = π/2G`.
    pub fn resonant_swap(g_eff: f64) -> Self {
        Self::for_rates(g_eff, 0.0, 0.0, 0.0, std::f64::consts::PI / (2.0 * g_eff))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dt <= 0.0 || self.t_end < 0.0 {
            return Err(Error::Domain(format!(
                "need dt > 0 and t_end ≥ 0 (dt={}, t_end={})",
                self.dt, self.t_end
            )));
        }
        if self.kappa < 0.0 || self.gamma_ion < 0.0 {
            return Err(Error::Domain("decay rates must be ≥ 0".into()));
        }
        if self.truncation_tol <= 0.0 {
            return Err(Error::Domain("truncation_tol must be positive".into()));
        }
        let dt_max = MAX_DT_FRACTION * 2.0 * std::f64::consts::PI / self.max_rate();
        if self.dt > dt_max {
            return Err(Error::Domain(format!(
                "dt = {} too coarse for the fastest rate; need ≤ {dt_max}",
                self.dt
            )));
        }
        Ok(())
    }
}

/// One recorded sample of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// ⟨n_lc⟩
    pub n_lc: f64,
    /// ⟨n_ion⟩
    pub n_ion: f64,
    /// Population of |0,1⟩, the swap target for a single photon.
    pub p_swap: f64,
    /// Σ|ψ|² or tr ρ.
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    pub final_state: TwoModeState,
}

/// Integrate the state under H(t) (plus Lindblad decay for density
/// states) with fixed-step RK4, recording observables at every step.
pub fn evolve(state: &TwoModeState, cfg: &DynamicsConfig) -> Result<Trajectory> {
    cfg.validate()?;
    match state {
        TwoModeState::Pure { .. } if cfg.kappa > 0.0 || cfg.gamma_ion > 0.0 => {
            Err(Error::Domain(
                "damping requires a density state; convert with to_density()".into(),
            ))
        }
        TwoModeState::Pure { n_trunc, amplitudes } => {
            evolve_pure(*n_trunc, amplitudes.clone(), cfg)
        }
        TwoModeState::Density { n_trunc, matrix } => {
            evolve_density(*n_trunc, matrix.clone(), cfg)
        }
    }
}

fn record(state: &TwoModeState, t: f64) -> TrajectoryPoint {
    let (n_lc, n_ion) = state.occupations();
    TrajectoryPoint { t, n_lc, n_ion, p_swap: state.population(0, 1), norm: state.norm() }
}

fn guard(state: &TwoModeState, t: f64, tol: f64) -> Result<()> {
    if !state.is_finite() {
        return Err(Error::Numerical(format!(
            "non-finite amplitude at t = {t}; step size too coarse or bad input"
        )));
    }
    let edge = state.boundary_population();
    if edge > tol {
        return Err(Error::Numerical(format!(
            "truncation guard: boundary population {edge:.3e} > {tol:.1e} at t = {t}; \
             raise n_trunc"
        )));
    }
    Ok(())
}

/// Time steps covering [0, t_end]: full steps of dt plus one short
/// remainder step to land exactly on t_end.
fn steps(t_end: f64, dt: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut t = 0.0;
    while t + dt < t_end - 1e-15 * t_end {
        out.push((t, dt));
        t += dt;
    }
    if t_end > t {
        out.push((t, t_end - t));
    }
    out
}

fn evolve_pure(n_trunc: usize, mut psi: Array1<C64>, cfg: &DynamicsConfig) -> Result<Trajectory> {
    let m = exchange_operator(n_trunc);
    let m_dag = m.t().mapv(|v| v.conj());
    let g = cfg.g_eff;
    let delta = cfg.delta;

    // dψ/dt = −i·H(t)·ψ = G·(e^{−iΔt}·Mψ − e^{iΔt}·M†ψ)
    let rhs = |t: f64, psi: &Array1<C64>| -> Array1<C64> {
        let e = C64::from_polar(1.0, -delta * t);
        let mut v: Array1<C64> = m.dot(psi);
        v.mapv_inplace(|x| x * e * g);
        let mut w: Array1<C64> = m_dag.dot(psi);
        w.mapv_inplace(|x| x * e.conj() * g);
        v - w
    };

    let wrap = |psi: Array1<C64>| TwoModeState::Pure { n_trunc, amplitudes: psi };
    let mut points = Vec::new();
    {
        let s = wrap(psi.clone());
        guard(&s, 0.0, cfg.truncation_tol)?;
        points.push(record(&s, 0.0));
    }
    for (t, h) in steps(cfg.t_end, cfg.dt) {
        let k1 = rhs(t, &psi);
        let k2 = rhs(t + 0.5 * h, &(&psi + &k1.mapv(|x| x * C64::from(0.5 * h))));
        let k3 = rhs(t + 0.5 * h, &(&psi + &k2.mapv(|x| x * C64::from(0.5 * h))));
        let k4 = rhs(t + h, &(&psi + &k3.mapv(|x| x * C64::from(h))));
        let incr = k1 + k2.mapv(|x| x * C64::from(2.0)) + k3.mapv(|x| x * C64::from(2.0)) + k4;
        psi = &psi + &incr.mapv(|x| x * C64::from(h / 6.0));

        let s = wrap(psi.clone());
        guard(&s, t + h, cfg.truncation_tol)?;
        points.push(record(&s, t + h));
    }
    Ok(Trajectory { points, final_state: wrap(psi) })
}

fn evolve_density(
    n_trunc: usize,
    mut rho: Array2<C64>,
    cfg: &DynamicsConfig,
) -> Result<Trajectory> {
    let m = exchange_operator(n_trunc);
    let m_dag = m.t().mapv(|v| v.conj());
    let a = lc_annihilator(n_trunc);
    let b = ion_annihilator(n_trunc);
    let a_dag = a.t().mapv(|v: C64| v.conj());
    let b_dag = b.t().mapv(|v: C64| v.conj());
    let n_a = a_dag.dot(&a);
    let n_b = b_dag.dot(&b);
    let g = cfg.g_eff;
    let delta = cfg.delta;
    let kappa = cfg.kappa;
    let gamma = cfg.gamma_ion;

    // dρ/dt = −i[H,ρ] + κ·D[a]ρ + γ·D[b]ρ
    let rhs = |t: f64, rho: &Array2<C64>| -> Array2<C64> {
        let e = C64::from_polar(1.0, -delta * t);
        // K = −iH/ħ·(1/G) scaled back below: use −i[H,ρ] =
        // G·([e·M, ρ] − [e*·M†, ρ])
        let em = m.mapv(|x| x * e);
        let emd = m_dag.mapv(|x| x * e.conj());
        let mut d = (em.dot(rho) - rho.dot(&em) - emd.dot(rho) + rho.dot(&emd))
            .mapv(|x| x * C64::from(g));
        if kappa > 0.0 {
            let term = a.dot(rho).dot(&a_dag).mapv(|x| x * C64::from(kappa));
            let anti = (n_a.dot(rho) + rho.dot(&n_a)).mapv(|x| x * C64::from(0.5 * kappa));
            d = d + term - anti;
        }
        if gamma > 0.0 {
            let term = b.dot(rho).dot(&b_dag).mapv(|x| x * C64::from(gamma));
            let anti = (n_b.dot(rho) + rho.dot(&n_b)).mapv(|x| x * C64::from(0.5 * gamma));
            d = d + term - anti;
        }
        d
    };

    let wrap = |rho: Array2<C64>| TwoModeState::Density { n_trunc, matrix: rho };
    let mut points = Vec::new();
    {
        let s = wrap(rho.clone());
        guard(&s, 0.0, cfg.truncation_tol)?;
        points.push(record(&s, 0.0));
    }
    for (t, h) in steps(cfg.t_end, cfg.dt) {
        let k1 = rhs(t, &rho);
        let k2 = rhs(t + 0.5 * h, &(&rho + &k1.mapv(|x| x * C64::from(0.5 * h))));
        let k3 = rhs(t + 0.5 * h, &(&rho + &k2.mapv(|x| x * C64::from(0.5 * h))));
        let k4 = rhs(t + h, &(&rho + &k3.mapv(|x| x * C64::from(h))));
        let incr = k1 + k2.mapv(|x| x * C64::from(2.0)) + k3.mapv(|x| x * C64::from(2.0)) + k4;
        rho = &rho + &incr.mapv(|x| x * C64::from(h / 6.0));

        let s = wrap(rho.clone());
        guard(&s, t + h, cfg.truncation_tol)?;
        points.push(record(&s, t + h));
    }
    Ok(Trajectory { points, final_state: wrap(rho) })
}

/// Closed-form transfer probability |1,0⟩ → |0,1⟩ in the single-excitation
/// subspace:
///
/// ```text
/// P(t) = G²/(G² + Δ²/4) · sin²(√(G² + Δ²/4)·t)
/// ```
pub fn analytic_transfer(g_eff: f64, delta: f64, t: f64) -> f64 {
    if g_eff == 0.0 {
        return 0.0;
    }
    let omega2 = g_eff * g_eff + 0.25 * delta * delta;
    let s = (omega2.sqrt() * t).sin();
    g_eff * g_eff / omega2 * s * s
}

/// Swap fidelity ⟨0,1|ρ|0,1⟩ after evolving ρ(0) = |1,0⟩⟨1,0| for one swap
/// time `π/2G` under Lindblad damping.
pub fn swap_fidelity_with_damping(cfg: &DynamicsConfig, n_trunc: usize) -> Result<f64> {
    if cfg.g_eff <= 0.0 {
        return Err(Error::Domain("swap time needs g_eff > 0".into()));
    }
    let run = DynamicsConfig {
        t_end: std::f64::consts::PI / (2.0 * cfg.g_eff),
        ..*cfg
    };
    let rho0 = TwoModeState::fock_density(n_trunc, 1, 0)?;
    let traj = evolve(&rho0, &run)?;
    Ok(traj.final_state.population(0, 1))
}

/// Smallest eigenvalue of the Hermitian part of a density matrix, for
/// positivity checks. Uses a cyclic Jacobi sweep on the real-symmetric
/// embedding [[X, −Y], [Y, X]] of H = X + iY.
pub fn density_min_eigenvalue(rho: &Array2<C64>) -> f64 {
    let n = rho.nrows();
    let mut m = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let h = 0.5 * (rho[[i, j]] + rho[[j, i]].conj());
            m[i][j] = h.re;
            m[i + n][j + n] = h.re;
            m[i][j + n] = -h.im;
            m[i + n][j] = h.im;
        }
    }
    jacobi_eigenvalues(&mut m).into_iter().fold(f64::INFINITY, f64::min)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
fn jacobi_eigenvalues(a: &mut [Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}
