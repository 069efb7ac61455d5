//! Mechanically modulated capacitance and its spectra.
//!
//! A flexural resonator moves a plate above the primary capacitor, so the
//! capacitance follows the exact reciprocal law
//!
//! ```text
//! single:  C(t) = C₀·α/(α + β·sin(νt))
//! paired:  C(t) = (C₀/2)·[α/(α + β·sin(νt)) + α/(α + β·cos(νt))]
//! ```
//!
//! with fixed gap α and stroke β (modulation depth η = β/α). The single
//! capacitor's waveform carries a harmonic ladder with amplitude ratio
//! ≈ η/2 per step; driving two capacitors in parallel a quarter period
//! apart cancels the harmonics with index ≡ 2 (mod 4) exactly, which is
//! why the paired scheme is used.
//!
//! Frequency-modulating the circuit distributes carrier power over
//! sidebands as squared Bessel functions J_n(m)²; `m ≈ 0.3` keeps >99% of
//! the power in the carrier and first sideband.
//!
//! The resonator itself is an Euler–Bernoulli beam; its flexural mode
//! frequencies are `f = (β_nL)²/(2πL²)·√(E·t²/(12ρ))`, and a mode-
//! separation check flags dimension ratios close to small rationals (which
//! would let the drive couple several mechanical modes at once).

use crate::error::{Error, Result};

/// Handbook PZT elastic modulus (Pa) used as the beam default.
pub const PZT_YOUNGS_MODULUS: f64 = 63e9;
/// Handbook PZT density (kg/m³) used as the beam default.
pub const PZT_DENSITY: f64 = 7500.0;

/// Capacitance modulation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulationScheme {
    Single,
    Paired,
}

/// Drive parameters of the modulated capacitor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationSpec {
    /// Static capacitance C₀ (F).
    pub c0: f64,
    /// Fixed plate separation α (m).
    pub alpha: f64,
    /// Modulation amplitude β (m); must stay below α.
    pub beta_amp: f64,
    /// Drive angular frequency ν (rad/s).
    pub nu: f64,
    pub scheme: ModulationScheme,
}

impl ModulationSpec {
    pub fn new(
        c0: f64,
        alpha: f64,
        beta_amp: f64,
        nu: f64,
        scheme: ModulationScheme,
    ) -> Result<Self> {
        if c0 <= 0.0 || alpha <= 0.0 || nu <= 0.0 {
            return Err(Error::Domain(format!(
                "c0, alpha and nu must be positive (c0={c0}, alpha={alpha}, nu={nu})"
            )));
        }
        if !(0.0..1.0).contains(&(beta_amp / alpha)) || beta_amp < 0.0 {
            return Err(Error::Domain(format!(
                "modulation depth β/α must lie in [0, 1), got {}",
                beta_amp / alpha
            )));
        }
        Ok(ModulationSpec { c0, alpha, beta_amp, nu, scheme })
    }

    /// Capacitance modulation depth η = β/α.
    pub fn eta(&self) -> f64 {
        self.beta_amp / self.alpha
    }

    /// The reciprocal waveform departs strongly from a sinusoid above
    /// η ≈ 0.5; callers should surface a warning.
    pub fn eta_is_large(&self) -> bool {
        self.eta() > 0.5
    }
}

/// Instantaneous capacitance (F) at time `t` (s).
pub fn capacitance_waveform(spec: &ModulationSpec, t: f64) -> f64 {
    let a = spec.alpha;
    let b = spec.beta_amp;
    let phase = spec.nu * t;
    match spec.scheme {
        ModulationScheme::Single => spec.c0 * a / (a + b * phase.sin()),
        ModulationScheme::Paired => {
            0.5 * spec.c0 * (a / (a + b * phase.sin()) + a / (a + b * phase.cos()))
        }
    }
}

/// Harmonic amplitudes of one waveform period, normalised by C₀.
///
/// Samples the period uniformly (`n_samples` a power of two, ≥ 256) and
/// returns `(k, amplitude)` for k = 0..=n_samples/2, with the usual
/// one-sided convention: `A₀ = |X₀|/N`, `A_k = 2|X_k|/N`.
pub fn harmonic_spectrum(spec: &ModulationSpec, n_samples: usize) -> Result<Vec<(usize, f64)>> {
    if n_samples < 256 || !n_samples.is_power_of_two() {
        return Err(Error::Domain(format!(
            "n_samples must be a power of two ≥ 256, got {n_samples}"
        )));
    }
    let period = 2.0 * std::f64::consts::PI / spec.nu;
    let samples: Vec<f64> = (0..n_samples)
        .map(|j| capacitance_waveform(spec, j as f64 * period / n_samples as f64) / spec.c0)
        .collect();

    let n = n_samples as f64;
    let mut out = Vec::with_capacity(n_samples / 2 + 1);
    for k in 0..=n_samples / 2 {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (j, s) in samples.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * (k * j) as f64 / n;
            re += s * angle.cos();
            im += s * angle.sin();
        }
        let mag = (re * re + im * im).sqrt() / n;
        out.push((k, if k == 0 { mag } else { 2.0 * mag }));
    }
    Ok(out)
}

/// Bessel function of the first kind J_n(x), by Miller's downward
/// recurrence normalised with `J₀ + 2·Σ J_{2k} = 1`.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ax = x.abs();
    let mut start = n.max(ax.ceil() as u32) + 20;
    if start % 2 == 1 {
        start += 1;
    }

    let mut j_above = 0.0f64; // J_{k+1}
    let mut j_k = 1e-30f64; // J_start, arbitrary scale
    let mut norm = 0.0f64;
    let mut target = 0.0f64;
    let mut k = start;
    loop {
        if k == n {
            target = j_k;
        }
        if k.is_multiple_of(2) {
            norm += if k == 0 { j_k } else { 2.0 * j_k };
        }
        if k == 0 {
            break;
        }
        let j_below = (2.0 * k as f64 / ax) * j_k - j_above;
        j_above = j_k;
        j_k = j_below;
        if j_k.abs() > 1e250 {
            j_k *= 1e-250;
            j_above *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
        k -= 1;
    }
    let val = target / norm;
    if x < 0.0 && n % 2 == 1 {
        -val
    } else {
        val
    }
}

/// Relative sideband powers of a sinusoidally frequency-modulated carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct SidebandPowers {
    /// `powers[0] = J₀(m)²`; `powers[n] = 2·J_n(m)²` counts both ±n
    /// sidebands. Σ → 1 as n_max → ∞.
    pub powers: Vec<f64>,
    /// powers[0] + powers[1].
    pub carrier_plus_first: f64,
}

/// Sideband power distribution for modulation index `m`, up to order
/// `n_max`.
pub fn fm_sideband_powers(index: f64, n_max: usize) -> Result<SidebandPowers> {
    if index < 0.0 {
        return Err(Error::Domain(format!("modulation index must be ≥ 0, got {index}")));
    }
    if n_max < 1 {
        return Err(Error::Domain("n_max must be ≥ 1".into()));
    }
    let powers: Vec<f64> = (0..=n_max)
        .map(|n| {
            let j = bessel_j(n as u32, index);
            if n == 0 {
                j * j
            } else {
                2.0 * j * j
            }
        })
        .collect();
    let carrier_plus_first = powers[0] + powers[1];
    Ok(SidebandPowers { powers, carrier_plus_first })
}

/// Largest modulation index (within [0, 6], bisected to 1e-4) whose
/// carrier-plus-first-sideband power fraction still reaches `threshold`.
pub fn max_index_for_power_fraction(threshold: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&threshold) || threshold == 0.0 {
        return Err(Error::Domain(format!(
            "threshold must lie in (0, 1), got {threshold}"
        )));
    }
    let f = |m: f64| {
        let j0 = bessel_j(0, m);
        let j1 = bessel_j(1, m);
        j0 * j0 + 2.0 * j1 * j1
    };
    const SCAN_END: f64 = 6.0;
    const SCAN_STEP: f64 = 0.01;
    let steps = (SCAN_END / SCAN_STEP) as usize;
    let mut last_ok = 0.0f64;
    for i in 0..=steps {
        let m = i as f64 * SCAN_STEP;
        if f(m) >= threshold {
            last_ok = m;
        }
    }
    let (mut lo, mut hi) = (last_ok, last_ok + SCAN_STEP);
    while hi - lo > 1e-4 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= threshold {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First-order FM index of a capacitively modulated resonator: ω ∝ 1/√C
/// gives a peak frequency deviation of η·f_carrier/2, so
/// `index = η·f_carrier/(2·f_mod)`.
pub fn fm_index_from_capacitance_modulation(eta: f64, f_carrier: f64, f_mod: f64) -> Result<f64> {
    if eta < 0.0 || f_carrier <= 0.0 || f_mod <= 0.0 {
        return Err(Error::Domain(format!(
            "need eta ≥ 0 and positive frequencies (eta={eta}, f_c={f_carrier}, f_m={f_mod})"
        )));
    }
    Ok(eta * f_carrier / (2.0 * f_mod))
}

/// Beam boundary conditions. Clamped-clamped and free-free share the same
/// flexural eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamBoundary {
    ClampedClamped,
    FreeFree,
}

/// A rectangular flexural resonator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BawBeam {
    /// m; must exceed the width.
    pub length: f64,
    /// m; must exceed the thickness.
    pub width: f64,
    /// m
    pub thickness: f64,
    /// Pa
    pub youngs_modulus: f64,
    /// kg/m³
    pub density: f64,
    pub boundary: BeamBoundary,
    /// Flexural mode number, 1-based.
    pub mode_number: u32,
}

/// β_nL eigenvalues shared by clamped-clamped and free-free beams.
const BETA_L: [f64; 5] = [4.7300, 7.8532, 10.9956, 14.1372, 17.2788];

fn beta_l(mode: u32) -> f64 {
    match mode {
        0 => unreachable!("mode numbers are 1-based"),
        1..=5 => BETA_L[(mode - 1) as usize],
        n => (2.0 * n as f64 + 1.0) * std::f64::consts::PI / 2.0,
    }
}

/// Euler–Bernoulli flexural frequency (Hz):
/// `f = (β_nL)²/(2πL²)·√(E·t²/(12ρ))`. Single-material approximation of
/// the real layer stack, good to order of magnitude.
pub fn flexural_mode_frequency(beam: &BawBeam) -> Result<f64> {
    if !(beam.length > beam.width && beam.width > beam.thickness && beam.thickness > 0.0) {
        return Err(Error::Domain(format!(
            "beam requires length > width > thickness > 0, got {} > {} > {}",
            beam.length, beam.width, beam.thickness
        )));
    }
    if beam.youngs_modulus <= 0.0 || beam.density <= 0.0 {
        return Err(Error::Domain("material constants must be positive".into()));
    }
    if beam.mode_number < 1 {
        return Err(Error::Domain("mode_number is 1-based".into()));
    }
    let bl = beta_l(beam.mode_number);
    let stiffness = (beam.youngs_modulus * beam.thickness * beam.thickness
        / (12.0 * beam.density))
        .sqrt();
    Ok(bl * bl / (2.0 * std::f64::consts::PI * beam.length * beam.length) * stiffness)
}

/// One dimension-ratio check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioCheck {
    pub pair: &'static str,
    /// Larger dimension over smaller.
    pub ratio: f64,
    /// The nearest rational p/q (p, q ≤ max_ratio_den) within tolerance,
    /// if any; `Some` means the pair is flagged.
    pub near_rational: Option<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSeparationReport {
    pub checks: Vec<RatioCheck>,
    /// True when no pair sits near a small rational.
    pub pass: bool,
}

/// Flag dimension pairs whose ratio falls within `tol` (relative) of a
/// rational p/q with p, q ≤ `max_ratio_den`. Near-rational dimension
/// ratios let several mechanical modes share harmonics of the drive.
pub fn mode_separation_check(
    length: f64,
    width: f64,
    thickness: f64,
    max_ratio_den: u32,
    tol: f64,
) -> Result<ModeSeparationReport> {
    if length <= 0.0 || width <= 0.0 || thickness <= 0.0 {
        return Err(Error::Domain("dimensions must be positive".into()));
    }
    let pairs = [
        ("length/width", length / width),
        ("length/thickness", length / thickness),
        ("width/thickness", width / thickness),
    ];
    let mut checks = Vec::new();
    for (pair, raw) in pairs {
        let ratio = if raw >= 1.0 { raw } else { 1.0 / raw };
        let mut near: Option<((u32, u32), f64)> = None;
        for p in 1..=max_ratio_den {
            for q in 1..=max_ratio_den {
                let r = f64::from(p) / f64::from(q);
                let rel = (ratio - r).abs() / r;
                if rel <= tol && near.is_none_or(|(_, best)| rel < best) {
                    near = Some(((p, q), rel));
                }
            }
        }
        checks.push(RatioCheck {
            pair,
            ratio,
            near_rational: near.map(|(pq, _)| pq),
        });
    }
    let pass = checks.iter().all(|c| c.near_rational.is_none());
    Ok(ModeSeparationReport { checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

    fn spec(eta: f64, scheme: ModulationScheme) -> ModulationSpec {
        ModulationSpec::new(46e-15, 2e-6, eta * 2e-6, TWO_PI * 1e6, scheme).unwrap()
    }

    fn assert_close(x: f64, y: f64, rel: f64) {
        assert!(
            (x - y).abs() <= rel * y.abs().max(x.abs()),
            "{x} vs {y} (rel {rel})"
        );
    }

    /// 50-term ascending power series, the independence oracle for
    /// `bessel_j`.
    fn bessel_series(n: u32, x: f64) -> f64 {
        let half = x / 2.0;
        let mut term = 1.0f64;
        for k in 1..=n {
            term *= half / k as f64;
        }
        let mut sum = term;
        let mut num = term;
        for k in 1..50 {
            num *= -(half * half) / (k as f64 * (k + n) as f64);
            sum += num;
        }
        sum
    }

    #[test]
    fn bessel_matches_series_oracle() {
        for n in 0..=10u32 {
            let mut x = 0.0;
            while x <= 3.01 {
                assert!(
                    (bessel_j(n, x) - bessel_series(n, x)).abs() < 1e-10,
                    "J_{n}({x})"
                );
                x += 0.25;
            }
        }
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
        // odd orders are odd functions
        assert_close(bessel_j(1, -0.7), -bessel_series(1, 0.7), 1e-10);
    }

    #[test]
    fn waveform_without_modulation_is_constant() {
        let s = spec(0.0, ModulationScheme::Single);
        for t in [0.0, 1e-7, 3.21e-6] {
            assert_eq!(capacitance_waveform(&s, t), s.c0);
        }
    }

    #[test]
    fn waveform_extremum() {
        // sin(νt) = 1 with β/α = 0.3 → C = C₀/1.3
        let s = spec(0.3, ModulationScheme::Single);
        let t = (std::f64::consts::PI / 2.0) / s.nu;
        assert_close(capacitance_waveform(&s, t), s.c0 / 1.3, 1e-12);
    }

    #[test]
    fn waveform_periodicity() {
        let s = spec(0.3, ModulationScheme::Paired);
        let period = TWO_PI / s.nu;
        for t in [0.0, 1.7e-7, 0.93e-6] {
            let c1 = capacitance_waveform(&s, t);
            let c2 = capacitance_waveform(&s, t + period);
            assert_close(c1, c2, 1e-12);
        }
    }

    #[test]
    fn paired_mean_matches_second_order_constant() {
        // quadrature over one period vs the series constant C₀(1 + η²/2);
        // the exact mean is C₀/√(1−η²), 0.33% above at η = 0.3
        let s = spec(0.3, ModulationScheme::Paired);
        let n = 1 << 14;
        let period = TWO_PI / s.nu;
        let mean: f64 = (0..n)
            .map(|j| capacitance_waveform(&s, j as f64 * period / n as f64))
            .sum::<f64>()
            / n as f64;
        assert_close(mean, 1.045 * s.c0, 5e-3);
        assert_close(mean, s.c0 / (1.0f64 - 0.09).sqrt(), 1e-9);
    }

    #[test]
    fn spectrum_of_unmodulated_waveform() {
        let s = spec(0.0, ModulationScheme::Single);
        let spec_out = harmonic_spectrum(&s, 256).unwrap();
        assert_close(spec_out[0].1, 1.0, 1e-12);
        for &(_, a) in &spec_out[1..] {
            assert!(a < 1e-12);
        }
    }

    #[test]
    fn single_scheme_harmonic_ladder() {
        // closed-form Fourier coefficients of 1/(1+η·sinθ): with
        // s = √(1−η²) and ρ = (1−s)/η the k-th amplitude is 2ρᵏ/s
        let eta = 0.3f64;
        let s_ = (1.0 - eta * eta).sqrt();
        let rho = (1.0 - s_) / eta;
        let spec_out = harmonic_spectrum(&spec(eta, ModulationScheme::Single), 1024).unwrap();
        assert_close(spec_out[1].1, 2.0 * rho / s_, 1e-9);
        assert_close(spec_out[2].1, 2.0 * rho * rho / s_, 1e-9);
        // ladder ratio ≈ η/2 at second order
        let ratio = spec_out[2].1 / spec_out[1].1;
        assert_close(ratio, rho, 1e-9);
        assert!((ratio - eta / 2.0).abs() / (eta / 2.0) < 0.05);
    }

    #[test]
    fn paired_scheme_cancels_second_harmonic() {
        let eta = 0.3f64;
        let single = harmonic_spectrum(&spec(eta, ModulationScheme::Single), 1024).unwrap();
        let paired = harmonic_spectrum(&spec(eta, ModulationScheme::Paired), 1024).unwrap();
        assert!(
            paired[2].1 <= 0.1 * single[2].1,
            "paired 2nd harmonic {} vs single {}",
            paired[2].1,
            single[2].1
        );
        // the fundamental drops by exactly √2 relative to the single scheme
        let s_ = (1.0 - eta * eta).sqrt();
        let rho = (1.0 - s_) / eta;
        assert_close(paired[1].1, 2f64.sqrt() * rho / s_, 1e-9);
        assert_close(paired[1].1, single[1].1 / 2f64.sqrt(), 1e-9);
        // harmonic 4 survives the pairing; harmonic 2 is gone entirely
        assert!(paired[4].1 > paired[2].1 * 1e6);
    }

    #[test]
    fn sideband_powers_examples() {
        let zero = fm_sideband_powers(0.0, 10).unwrap();
        assert_eq!(zero.powers[0], 1.0);
        assert!(zero.powers[1..].iter().all(|p| *p == 0.0));

        let p03 = fm_sideband_powers(0.3, 20).unwrap();
        assert_close(p03.carrier_plus_first, 0.9997500204418669, 1e-9);
        assert!(p03.carrier_plus_first >= 0.99);

        let p10 = fm_sideband_powers(1.0, 20).unwrap();
        assert_close(p10.carrier_plus_first, 0.9728165355425824, 1e-9);
        assert!(p10.carrier_plus_first < 0.99);

        assert!(fm_sideband_powers(-0.1, 10).is_err());
    }

    #[test]
    fn sideband_power_sums_to_one() {
        let mut index = 0.0;
        while index <= 3.01 {
            let p = fm_sideband_powers(index, 40).unwrap();
            let total: f64 = p.powers.iter().sum();
            assert!((total - 1.0).abs() < 1e-9, "Σ powers at m={index}: {total}");
            index += 0.5;
        }
    }

    #[test]
    fn max_index_examples() {
        // frozen from a bisection oracle over J₀² + 2J₁²
        let m99 = max_index_for_power_fraction(0.99).unwrap();
        assert!((m99 - 0.7677058478).abs() < 2e-4, "{m99}");
        let m50 = max_index_for_power_fraction(0.5).unwrap();
        assert!((m50 - 2.4922169796).abs() < 2e-4, "{m50}");
        // threshold → 1⁻ forces the index to zero
        let m_tight = max_index_for_power_fraction(0.999999).unwrap();
        assert!(m_tight < 0.1, "{m_tight}");
        let m_tighter = max_index_for_power_fraction(0.99999999).unwrap();
        assert!(m_tighter < m_tight, "{m_tighter} vs {m_tight}");
        assert!(max_index_for_power_fraction(0.0).is_err());
        assert!(max_index_for_power_fraction(1.0).is_err());
    }

    #[test]
    fn fm_index_conversion() {
        assert_eq!(
            fm_index_from_capacitance_modulation(0.0, 1e9, 1e6).unwrap(),
            0.0
        );
        assert_close(
            fm_index_from_capacitance_modulation(0.3, 1e9, 1e6).unwrap(),
            150.0,
            1e-12,
        );
        assert_close(
            fm_index_from_capacitance_modulation(2e-9, 1e9, 1e6).unwrap(),
            1e-6,
            1e-12,
        );
        assert!(fm_index_from_capacitance_modulation(0.3, 0.0, 1e6).is_err());
    }

    fn pzt_beam(mode: u32) -> BawBeam {
        BawBeam {
            length: 200e-6,
            width: 50e-6,
            thickness: 3e-6,
            youngs_modulus: PZT_YOUNGS_MODULUS,
            density: PZT_DENSITY,
            boundary: BeamBoundary::ClampedClamped,
            mode_number: mode,
        }
    }

    #[test]
    fn flexural_frequency_of_design_beam() {
        let f2 = flexural_mode_frequency(&pzt_beam(2)).unwrap();
        assert_close(f2, 615919.1834585941, 1e-12);
        assert!(f2 > 0.3e6 && f2 < 3e6, "order-of-magnitude window");
    }

    #[test]
    fn flexural_scaling() {
        let base = flexural_mode_frequency(&pzt_beam(2)).unwrap();
        let thick = flexural_mode_frequency(&BawBeam { thickness: 6e-6, ..pzt_beam(2) }).unwrap();
        assert_close(thick, 2.0 * base, 1e-12);
        let long = flexural_mode_frequency(&BawBeam { length: 400e-6, ..pzt_beam(2) }).unwrap();
        assert_close(long, base / 4.0, 1e-12);
    }

    #[test]
    fn flexural_mode_ratio_is_material_independent() {
        let expected = (7.8532f64 / 4.7300).powi(2);
        assert_close(expected, 2.756582751453767, 1e-12);
        for (e, rho) in [(63e9, 7500.0), (160e9, 2330.0)] {
            let beam1 = BawBeam { youngs_modulus: e, density: rho, ..pzt_beam(1) };
            let beam2 = BawBeam { youngs_modulus: e, density: rho, ..pzt_beam(2) };
            let ratio = flexural_mode_frequency(&beam2).unwrap()
                / flexural_mode_frequency(&beam1).unwrap();
            assert_close(ratio, expected, 1e-12);
        }
    }

    #[test]
    fn beam_validation() {
        assert!(flexural_mode_frequency(&BawBeam { width: 300e-6, ..pzt_beam(1) }).is_err());
        assert!(flexural_mode_frequency(&BawBeam { mode_number: 0, ..pzt_beam(1) }).is_err());
    }

    #[test]
    fn mode_separation_examples() {
        // 200/50 = 4 sits exactly on 4/1
        let r = mode_separation_check(200e-6, 50e-6, 3e-6, 5, 0.02).unwrap();
        assert_eq!(r.checks[0].near_rational, Some((4, 1)));
        assert!(!r.pass);

        // 199/50 = 3.98, within 2% of 4/1
        let r = mode_separation_check(199e-6, 50e-6, 3e-6, 5, 0.02).unwrap();
        assert_eq!(r.checks[0].near_rational, Some((4, 1)));

        // 200/61 ≈ 3.279 clears every p/q with p, q ≤ 5; oracle below
        // confirms by exhaustive scan
        let ratio = 200.0f64 / 61.0;
        let clear = !(1..=5u32).any(|p| {
            (1..=5u32).any(|q| {
                let r = f64::from(p) / f64::from(q);
                (ratio - r).abs() / r <= 0.02
            })
        });
        assert!(clear);
        let r = mode_separation_check(200e-6, 61e-6, 3.1e-6, 5, 0.02).unwrap();
        assert_eq!(r.checks[0].near_rational, None);
        assert!(r.pass);
    }

    #[test]
    fn modulation_spec_guards() {
        assert!(ModulationSpec::new(46e-15, 2e-6, 2e-6, 1.0, ModulationScheme::Single).is_err());
        assert!(ModulationSpec::new(46e-15, 2e-6, -0.1e-6, 1.0, ModulationScheme::Single).is_err());
        let s = ModulationSpec::new(46e-15, 2e-6, 1.4e-6, 1.0, ModulationScheme::Single).unwrap();
        assert!(s.eta_is_large());
    }
}
