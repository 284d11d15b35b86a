//! Numerical cross-checks: adaptive quadrature and Monte Carlo estimators.
//!
//! Nothing here reuses the closed forms from `moments` or `entropy`; the
//! point is to confirm those formulas from the density and quantile alone.
//! Expectations integrate over the probability scale, `E[phi(X)] =
//! integral of phi(Q(u)) du over (0,1)`, which concentrates the panels where
//! the mass is. The normalization check deliberately avoids that substitution
//! (it would be trivially 1) and integrates the density over `x` directly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::density::{self, quantile_survival_unchecked, quantile_unchecked};
use crate::model::IfParams;
use crate::util::CompensatedSum;
use crate::{Error, Result};

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights, as tabulated in QUADPACK's qk15.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Tolerances and budgets for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub initial_panels: usize,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            initial_panels: 8,
            max_panels: 10_000,
        }
    }
}

impl QuadOptions {
    /// Options with both tolerances set to `tol`.
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions {
            abs_tol: tol,
            rel_tol: tol,
            ..QuadOptions::default()
        }
    }
}

/// Integral estimate with the accumulated error bound and panel count.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

// QUADPACK's error rescaling: trust the raw Kronrod-Gauss difference only
// when it is small relative to the deviation integral.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);

    let fc = f(centr);
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();

    for j in 0..3 {
        let jtw = 2 * j + 1;
        let absc = hlgth * XGK[jtw];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += WG[j] * (f1 + f2);
        resk += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let absc = hlgth * XGK[jtwm1];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }

    let value = resk * hlgth;
    resabs *= hlgth.abs();
    resasc *= hlgth.abs();
    let error = rescale_error((resk - resg) * hlgth, resabs, resasc);
    Panel { a, b, value, error }
}

/// Adaptive integration of `f` over the finite interval `[a, b]`, bisecting
/// the worst panel until the accumulated error bound meets the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut value = 0.0f64;
    let mut err = 0.0f64;
    let n0 = opts.initial_panels.max(1);
    for i in 0..n0 {
        let pa = a + (b - a) * i as f64 / n0 as f64;
        let pb = a + (b - a) * (i + 1) as f64 / n0 as f64;
        let panel = kronrod15(&f, pa, pb);
        value += panel.value;
        err += panel.error;
        heap.push(panel);
    }

    let mut panels = n0;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * value.abs());
        if err <= tol {
            break;
        }
        if panels >= opts.max_panels {
            return Err(Error::NonConvergence(format!(
                "quadrature stalled at error {err:.3e} (tolerance {tol:.3e}) after {panels} panels"
            )));
        }
        let worst = heap.pop().expect("heap cannot be empty");
        value -= worst.value;
        err -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        for (pa, pb) in [(worst.a, mid), (mid, worst.b)] {
            let panel = kronrod15(&f, pa, pb);
            value += panel.value;
            err += panel.error;
            heap.push(panel);
        }
        panels += 1;
    }

    // the incremental sums drift over many bisections; re-add once at the end
    let mut total = CompensatedSum::new();
    let mut total_err = CompensatedSum::new();
    for panel in heap.iter() {
        total.add(panel.value);
        total_err.add(panel.error);
    }
    Ok(QuadResult {
        value: total.total(),
        error: total_err.total(),
        panels,
    })
}

/// `E[phi(X)]` by integrating `phi(Q(u))` over the probability scale: the
/// lower half in `u` directly and the upper half in the survival probability
/// `v = 1 - u`. The split matters for heavy tails: near `u = 1` every
/// probability within one ulp of 1 collapses onto the same quantile, so a
/// u-scale integral simply cannot see tail mass beyond `Q(1 - 1e-16)`, while
/// `v` near 0 keeps full resolution arbitrarily deep. Points where `phi`
/// comes back non-finite (isolated endpoint singularities) contribute zero.
pub fn expectation<F: Fn(f64) -> f64>(params: &IfParams, phi: F, tol: f64) -> Result<f64> {
    let clamp = |y: f64| if y.is_finite() { y } else { 0.0 };
    let opts = QuadOptions::with_tol(0.5 * tol);
    let body = integrate(
        |u| clamp(phi(quantile_unchecked(params, u))),
        0.0,
        0.5,
        &opts,
    )?;
    let tail = integrate(
        |v| clamp(phi(quantile_survival_unchecked(params, v))),
        0.0,
        0.5,
        &opts,
    )?;
    Ok(body.value + tail.value)
}

/// Integral of the density over the whole support, computed from the pdf
/// alone (never through the quantile): `x = x0 + c s` over the body and
/// `x = x0 + c/w` over the tail. Both substitutions put the potentially
/// singular direction at 0, where adaptive bisection has unlimited
/// floating-point depth. Should be 1 for every valid parameter point.
pub fn normalization(params: &IfParams, tol: f64) -> Result<f64> {
    let c = params.c();
    let x0 = params.x0();
    let opts = QuadOptions::with_tol(0.5 * tol);
    let body = integrate(
        |s| {
            let v = c * density::pdf(params, x0 + c * s);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        &opts,
    )?;
    let tail = integrate(
        |w| {
            let f = density::pdf(params, x0 + c / w);
            // the pdf underflows to zero long before c/w^2 can overflow
            if f == 0.0 || !f.is_finite() {
                0.0
            } else {
                f * c / w / w
            }
        },
        0.0,
        1.0,
        &opts,
    )?;
    Ok(body.value + tail.value)
}

/// `E[X^r; X <= upper]`, the moment integral cut off at a finite point.
/// Integrated on the survival scale, `v = 1 - F(x)`, because at the cutoffs
/// used by the divergence witness `F(upper)` itself rounds to 1.
pub fn truncated_moment(params: &IfParams, r: u32, upper: f64, tol: f64) -> Result<f64> {
    let v_lo = density::survival(params, upper);
    let integrand = |v: f64| {
        let y = density::quantile_survival_unchecked(params, v).powi(r as i32);
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    integrate(integrand, v_lo, 1.0, &QuadOptions::with_tol(tol)).map(|r| r.value)
}

/// Successive ratios of the truncated r-th moment as the cutoff jumps from
/// `x0 + 100 c` to `x0 + 10^4 c` to `x0 + 10^6 c`. For a convergent moment
/// these settle toward 1; sustained growth is the divergence witness.
pub fn growth_ratios(params: &IfParams, r: u32) -> Result<[f64; 2]> {
    let mut vals = [0.0f64; 3];
    for (i, mult) in [1e2, 1e4, 1e6].iter().enumerate() {
        let upper = params.x0() + params.c() * mult;
        vals[i] = truncated_moment(params, r, upper, 1e-9)?;
    }
    Ok([vals[1] / vals[0], vals[2] / vals[1]])
}

/// True when the truncated r-th moment keeps growing by more than 50% across
/// each cutoff decade pair, i.e. the full moment integral diverges.
pub fn diverges(params: &IfParams, r: u32) -> Result<bool> {
    let ratios = growth_ratios(params, r)?;
    Ok(ratios.iter().all(|&g| g > 1.5))
}

/// Monte Carlo estimate with its standard error and the inputs that produced
/// it, so a check can be reported reproducibly.
#[derive(Debug, Clone, Copy)]
pub struct McResult {
    pub estimate: f64,
    pub std_error: f64,
    pub n: usize,
    pub seed: u64,
}

/// Plain Monte Carlo for `E[phi(X)]` with a seeded generator and Welford
/// accumulation of the variance.
pub fn mc_expectation<F: Fn(f64) -> f64>(
    params: &IfParams,
    phi: F,
    n: usize,
    seed: u64,
) -> McResult {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for i in 0..n {
        let x = quantile_unchecked(params, rng.gen::<f64>());
        let v = phi(x);
        let k = (i + 1) as f64;
        let delta = v - mean;
        mean += delta / k;
        m2 += delta * (v - mean);
    }
    let std_error = if n > 1 {
        (m2 / (n as f64 - 1.0) / n as f64).sqrt()
    } else {
        f64::NAN
    };
    McResult {
        estimate: mean,
        std_error,
        n,
        seed,
    }
}
