//! Scalar special functions: log-gamma, digamma, harmonic numbers, log-beta.
//!
//! Self-contained so the closed-form modules carry no external
//! special-function dependency. Out-of-domain arguments return NaN, following
//! the convention of `f64::ln`; structured validation errors belong to the
//! parameter model and the CLI, not to this kernel.

/// Euler-Mascheroni constant.
pub const EULER_MASCHERONI: f64 = 0.5772156649015328606065120900824024;

const LN_TWO_PI: f64 = 1.8378770664093454835606594728112353;

/// Arguments below this are shifted up with the recurrence before applying
/// the asymptotic series.
const ASYMP_THRESHOLD: f64 = 10.0;

// Stirling series coefficients B_{2k} / (2k (2k - 1)), k = 1..8.
const LN_GAMMA_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1_260.0,
    -1.0 / 1_680.0,
    1.0 / 1_188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3_617.0 / 122_400.0,
];

// Digamma asymptotic series coefficients B_{2k} / (2k), k = 1..7.
const DIGAMMA_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Natural log of the gamma function, for x > 0.
///
/// Recurrence shift into `x >= 10` followed by the Stirling series. With the
/// truncation used here the series error is below 2e-19 relative, so accuracy
/// is rounding-limited (~1e-14 relative) across `[1e-6, 1e6]`.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < ASYMP_THRESHOLD {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut term = inv;
    for c in LN_GAMMA_COEFFS {
        series += c * term;
        term *= inv2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * LN_TWO_PI + series - shift
}

/// Gamma function via `exp(ln_gamma)`; overflows to infinity above x ~ 171.6.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// Digamma function psi(x) = d/dx ln Gamma(x), for x > 0.
pub fn digamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < ASYMP_THRESHOLD {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut term = inv2;
    for c in DIGAMMA_COEFFS {
        series += c * term;
        term *= inv2;
    }
    acc + y.ln() - 0.5 * inv - series
}

/// Generalized harmonic number H_x = psi(x + 1) + gamma, for x >= 0.
///
/// Agrees with the partial sums 1 + 1/2 + ... + 1/n at integer arguments and
/// interpolates smoothly between them.
pub fn harmonic(x: f64) -> f64 {
    if !(x >= 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    if x == 0.0 {
        // empty sum
        return 0.0;
    }
    digamma(x + 1.0) + EULER_MASCHERONI
}

/// Log of the beta function, ln B(a, b) for a, b > 0.
pub fn log_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Beta function via the log form.
pub fn beta(a: f64, b: f64) -> f64 {
    log_beta(a, b).exp()
}

/// Euler-Mascheroni constant.
pub fn euler_mascheroni() -> f64 {
    EULER_MASCHERONI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        assert_eq!(ln_gamma(1.0), 0.0);
        assert_eq!(ln_gamma(2.0), 0.0);
        // ln sqrt(pi)
        assert!((ln_gamma(0.5) - 0.5723649429247001).abs() < 5e-15);
        assert!((ln_gamma(1.5) - (-0.12078223763524522)).abs() < 5e-15);
        // ln 24
        assert!((ln_gamma(5.0) - 3.1780538303479458).abs() < 1e-14);
        assert!((ln_gamma(100.0) - 359.1342053695754).abs() / 359.134 < 1e-14);
        assert!((ln_gamma(1e-6) - 13.815509980749432).abs() < 1e-13);
        let big = ln_gamma(1e6);
        assert!((big - 1.2815504569147612e7).abs() / big < 1e-13);
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0).is_nan());
        assert!(ln_gamma(-1.5).is_nan());
        assert!(ln_gamma(f64::NAN).is_nan());
        assert!(ln_gamma(f64::INFINITY).is_nan());
    }

    #[test]
    fn ln_gamma_recurrence() {
        // ln Gamma(x + 1) = ln Gamma(x) + ln x
        let mut x = 0.5;
        while x <= 100.0 {
            let lhs = ln_gamma(x + 1.0);
            let rhs = ln_gamma(x) + x.ln();
            assert!(
                (lhs - rhs).abs() < 1e-12,
                "recurrence off at x = {x}: {lhs} vs {rhs}"
            );
            x *= 1.17;
        }
    }

    #[test]
    fn ln_gamma_reflection() {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        for i in 1..20 {
            let x = i as f64 / 20.0;
            let prod = (ln_gamma(x) + ln_gamma(1.0 - x)).exp();
            let expect = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
            assert!(
                ((prod - expect) / expect).abs() < 1e-10,
                "reflection off at x = {x}"
            );
        }
    }

    #[test]
    fn gamma_small_integers() {
        assert!((gamma(5.0) - 24.0).abs() < 1e-13);
        assert!((gamma(2.2) - 1.1018024908797127).abs() < 1e-14);
    }

    #[test]
    fn digamma_known_values() {
        // psi(1) = -gamma
        assert!((digamma(1.0) + EULER_MASCHERONI).abs() < 1e-15);
        // psi(0.5) = -gamma - 2 ln 2
        assert!((digamma(0.5) - (-1.9635100260214235)).abs() < 1e-14);
        assert!((digamma(2.0) - 0.42278433509846713).abs() < 1e-15);
        assert!((digamma(10.0) - 2.251752589066721).abs() < 1e-14);
        assert!((digamma(0.1) - (-10.423754940411077)).abs() < 1e-13);
        assert!(digamma(0.0).is_nan());
        assert!(digamma(-3.0).is_nan());
    }

    #[test]
    fn digamma_matches_finite_difference_of_ln_gamma() {
        let h = 1e-5;
        let mut x = 0.1;
        while x <= 50.0 {
            let fd = (ln_gamma(x + h) - ln_gamma(x - h)) / (2.0 * h);
            assert!(
                (digamma(x) - fd).abs() < 1e-6,
                "digamma vs fd off at x = {x}"
            );
            x *= 1.31;
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0.0), 0.0);
        assert!((harmonic(1.0) - 1.0).abs() < 1e-14);
        assert!((harmonic(3.0) - 11.0 / 6.0).abs() < 1e-14);
        assert!((harmonic(10.0) - 2.928968253968254).abs() < 1e-14);
        assert!((harmonic(1.5) - 1.2803723055467760).abs() < 1e-14);
        // H_{1/2} = 2 - 2 ln 2
        assert!((harmonic(0.5) - 0.6137056388801094).abs() < 1e-14);
        assert!(harmonic(-0.5).is_nan());
    }

    #[test]
    fn harmonic_difference_is_reciprocal() {
        for n in 1..=10_000u32 {
            let n = f64::from(n);
            let diff = harmonic(n) - harmonic(n - 1.0);
            assert!(
                (diff - 1.0 / n).abs() < 1e-13,
                "harmonic step off at n = {n}"
            );
        }
    }

    #[test]
    fn harmonic_approaches_ln_plus_gamma() {
        // H_p - ln p -> gamma; at p = 1000 the gap is about 1/(2p)
        let gap = harmonic(1000.0) - 1000f64.ln() - EULER_MASCHERONI;
        assert!(gap.abs() < 1e-3);
        assert!(gap > 0.0);
    }

    #[test]
    fn log_beta_values() {
        assert_eq!(log_beta(1.0, 1.0), 0.0);
        // B(1/2, 2) = 4/3
        assert!((log_beta(0.5, 2.0) - (4f64 / 3.0).ln()).abs() < 5e-15);
        assert!((beta(0.5, 2.0) - 4.0 / 3.0).abs() < 5e-15);
        assert!((log_beta(2.0, 3.0) - (1.0f64 / 12.0).ln()).abs() < 1e-14);
        assert!(log_beta(0.0, 1.0).is_nan());
        assert!(log_beta(1.0, -2.0).is_nan());
    }

    #[test]
    fn euler_mascheroni_digamma_consistency() {
        assert!((euler_mascheroni() + digamma(1.0)).abs() < 1e-15);
    }
}
