//! Raw integer moments: closed forms for the three subfamilies, exact
//! existence conditions, and a quadrature fallback for the general family.

use crate::model::{ExtendedP, IfParams, Subfamily};
use crate::oracle;
use crate::specfun::{ln_gamma, log_beta};
use crate::util::CompensatedSum;
use crate::Result;

/// How a finite moment value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

/// Outcome of a moment computation. Divergence is an answer, not an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentResult {
    Finite { value: f64, method: Method },
    Divergent,
    NoClosedForm,
}

impl MomentResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            MomentResult::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }
}

/// Whether `E[X^r]` is finite. For `b > 0` the upper tail decays like
/// `x^{-bq-1}` at every `p`, so the cutoff is `r < bq`. For `b < 0` the decay
/// softens to `x^{b(p+1)-1}` (the mixture factor contributes `t^{bp}`),
/// giving `r < -b(p+1)`; with `p` infinite every integer moment is finite.
pub fn exists(params: &IfParams, r: u32) -> bool {
    if r == 0 {
        return true;
    }
    let rf = r as f64;
    let b = params.b();
    let q = params.q();
    match params.p() {
        ExtendedP::Infinite => {
            if b > 0.0 {
                rf < b * q
            } else {
                true
            }
        }
        ExtendedP::Finite(p) => {
            if b > 0.0 {
                rf < b * q
            } else {
                rf < -b * (p + 1.0)
            }
        }
    }
}

// Exact binomial coefficient; integer arithmetic stays exact through r = 60,
// which covers every integer case the log-gamma route could not.
fn binomial(r: u32, i: u32) -> f64 {
    if r <= 60 {
        let k = i.min(r - i) as u128;
        let mut acc: u128 = 1;
        for j in 0..k {
            acc = acc * (r as u128 - j) / (j + 1);
        }
        acc as f64
    } else {
        (ln_gamma(r as f64 + 1.0) - ln_gamma(i as f64 + 1.0) - ln_gamma((r - i) as f64 + 1.0))
            .exp()
    }
}

// 0^0 = 1 so the i = 0 term survives when x0 = 0.
fn pow_or_one(x: f64, i: u32) -> f64 {
    if i == 0 {
        1.0
    } else {
        x.powi(i as i32)
    }
}

/// Moment of the pure power-law subfamily (`p = 0`):
/// `sum_i C(r,i) x0^i c^{r-i} Gamma(q - k/b) Gamma(1 + k/b) / Gamma(q)` with
/// `k = r - i`, each term assembled in log space.
pub fn moment_if1(params: &IfParams, r: u32) -> MomentResult {
    if !exists(params, r) {
        return MomentResult::Divergent;
    }
    if r == 0 {
        return MomentResult::Finite {
            value: 1.0,
            method: Method::ClosedForm,
        };
    }
    let b = params.b();
    let q = params.q();
    let lgq = ln_gamma(q);
    let mut sum = CompensatedSum::new();
    for i in 0..=r {
        let k = (r - i) as f64;
        let ln_ratio = ln_gamma(q - k / b) + ln_gamma(1.0 + k / b) - lgq;
        sum.add(binomial(r, i) * pow_or_one(params.x0(), i) * params.c().powf(k) * ln_ratio.exp());
    }
    MomentResult::Finite {
        value: sum.total(),
        method: Method::ClosedForm,
    }
}

/// Moment of the exponential-cutoff subfamily (`p` infinite):
/// `sum_i C(r,i) x0^i c^{r-i} Gamma(1 - (r-i)/(bq))`.
pub fn moment_if2(params: &IfParams, r: u32) -> MomentResult {
    if !exists(params, r) {
        return MomentResult::Divergent;
    }
    if r == 0 {
        return MomentResult::Finite {
            value: 1.0,
            method: Method::ClosedForm,
        };
    }
    let bq = params.b() * params.q();
    let mut sum = CompensatedSum::new();
    for i in 0..=r {
        let k = (r - i) as f64;
        sum.add(
            binomial(r, i)
                * pow_or_one(params.x0(), i)
                * params.c().powf(k)
                * ln_gamma(1.0 - k / bq).exp(),
        );
    }
    MomentResult::Finite {
        value: sum.total(),
        method: Method::ClosedForm,
    }
}

/// Moment of the `b = 1` subfamily, `r < q`:
/// `sum_i C(r,i) x0^i c^{r-i} (p+1)^{1-(r-i)/q}
///  sum_k C(r-i,k) (-1)^k B(1 - (r-i-k)/q, p+1)`.
///
/// The inner sum alternates; terms are tracked in log magnitude with explicit
/// signs and compensated summation, and if cancellation eats more than twelve
/// digits the result is recomputed by quadrature instead.
pub fn moment_if3(params: &IfParams, r: u32) -> Result<MomentResult> {
    let p = params.p().finite().expect("moment_if3 requires finite p");
    if (r as f64) >= params.q() {
        return Ok(MomentResult::Divergent);
    }
    if r == 0 {
        return Ok(MomentResult::Finite {
            value: 1.0,
            method: Method::ClosedForm,
        });
    }
    let q = params.q();
    let pp1 = p + 1.0;
    let mut sum = CompensatedSum::new();
    let mut abs_sum = CompensatedSum::new();
    for i in 0..=r {
        let n = r - i;
        let outer = binomial(r, i)
            * pow_or_one(params.x0(), i)
            * params.c().powf(n as f64)
            * ((1.0 - n as f64 / q) * pp1.ln()).exp();
        for k in 0..=n {
            let mag = outer
                * binomial(n, k)
                * log_beta(1.0 - (n - k) as f64 / q, pp1).exp();
            let term = if k % 2 == 0 { mag } else { -mag };
            sum.add(term);
            abs_sum.add(mag);
        }
    }
    let value = sum.total();
    if abs_sum.total() > 1e12 * value.abs() {
        let v = quadrature_moment(params, r)?;
        return Ok(MomentResult::Finite {
            value: v,
            method: Method::Quadrature,
        });
    }
    Ok(MomentResult::Finite {
        value,
        method: Method::ClosedForm,
    })
}

fn quadrature_moment(params: &IfParams, r: u32) -> Result<f64> {
    oracle::expectation(params, |x| x.powi(r as i32), 1e-9)
}

/// Moment dispatcher. The general family has no closed form; with `fallback`
/// it answers from the quadrature oracle (after the existence test), without
/// it the answer is `NoClosedForm`.
pub fn moment(params: &IfParams, r: u32, fallback: bool) -> Result<MomentResult> {
    match params.classify() {
        Subfamily::If1 => Ok(moment_if1(params, r)),
        Subfamily::If2 => Ok(moment_if2(params, r)),
        Subfamily::If3 => moment_if3(params, r),
        Subfamily::General => {
            if !fallback {
                return Ok(MomentResult::NoClosedForm);
            }
            if !exists(params, r) {
                return Ok(MomentResult::Divergent);
            }
            let value = quadrature_moment(params, r)?;
            Ok(MomentResult::Finite {
                value,
                method: Method::Quadrature,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ExtendedP::{Finite, Infinite};

    fn params(p: crate::model::ExtendedP, b: f64, c: f64, q: f64, x0: f64) -> IfParams {
        IfParams::new(p, b, c, q, x0).unwrap()
    }

    fn finite_value(m: MomentResult) -> f64 {
        m.value().expect("expected a finite moment")
    }

    #[test]
    fn zeroth_moment_is_one_everywhere() {
        let cases = [
            params(Finite(0.0), -3.0, 1.0, 2.0, 0.0),
            params(Finite(2.0), 1.0, 1.0, 0.5, 1.0),
            params(Infinite, 1.0, 1.0, 0.25, 0.0),
        ];
        for d in cases {
            assert_eq!(
                moment(&d, 0, false).unwrap(),
                MomentResult::Finite {
                    value: 1.0,
                    method: Method::ClosedForm
                },
                "{d}"
            );
        }
    }

    #[test]
    fn if1_reference_values() {
        // Gamma(2.5) Gamma(1.5) / Gamma(3)
        let d = params(Finite(0.0), 2.0, 1.0, 3.0, 0.0);
        let v = finite_value(moment_if1(&d, 1));
        assert!((v - 0.5890486225480862).abs() < 1e-13);
        // negative b: 3 pi / 4
        let d = params(Finite(0.0), -2.0, 1.0, 2.0, 0.0);
        let v = finite_value(moment_if1(&d, 1));
        assert!((v - 2.356194490192345).abs() < 1e-14);
        // Pareto I shape: q x0 / (q - 1)
        let d = params(Finite(0.0), 1.0, 1.0, 2.0, 1.0);
        let v = finite_value(moment_if1(&d, 1));
        assert!((v - 2.0).abs() < 1e-13);
        // second moment with a shift
        let d = params(Finite(0.0), 2.0, 1.5, 3.0, 0.5);
        let v = finite_value(moment_if1(&d, 2));
        assert!((v - 2.2585729338221293).abs() < 1e-13);
    }

    #[test]
    fn if1_divergence_boundary() {
        let d = params(Finite(0.0), 1.0, 1.0, 1.0, 0.0);
        assert_eq!(moment_if1(&d, 1), MomentResult::Divergent);
        let d = params(Finite(0.0), -2.0, 1.0, 5.0, 0.0);
        assert_eq!(moment_if1(&d, 2), MomentResult::Divergent);
        assert!(matches!(moment_if1(&d, 1), MomentResult::Finite { .. }));
    }

    #[test]
    fn if2_reference_values() {
        let d = params(Infinite, -1.0, 3.0, 1.0, 0.0);
        assert!((finite_value(moment_if2(&d, 1)) - 3.0).abs() < 1e-14);
        // Rayleigh mean: sqrt(pi) at c = 2
        let d = params(Infinite, -1.0, 2.0, 2.0, 0.0);
        let v = finite_value(moment_if2(&d, 1));
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        let d = params(Infinite, 1.0, 2.0, 3.0, 1.0);
        assert!((finite_value(moment_if2(&d, 2)) - 17.132225896536594).abs() < 1e-12);
        // b < 0 admits every order
        let d = params(Infinite, -2.0, 1.5, 1.25, 0.0);
        assert!((finite_value(moment_if2(&d, 3)) - 3.7185834067190305).abs() < 1e-13);
        assert!(matches!(moment_if2(&d, 12), MomentResult::Finite { .. }));
    }

    #[test]
    fn if2_divergence_boundary() {
        let d = params(Infinite, 1.0, 1.0, 1.0, 0.0);
        assert_eq!(moment_if2(&d, 1), MomentResult::Divergent);
    }

    #[test]
    fn if3_reference_values() {
        // sqrt(2) (B(1/2,2) - B(1,2)) = sqrt(2) * 5/6
        let d = params(Finite(1.0), 1.0, 1.0, 2.0, 0.0);
        let v = finite_value(moment_if3(&d, 1).unwrap());
        assert!((v - 1.1785113019775792).abs() < 1e-14, "{v}");
        let d = params(Finite(1.0), 1.0, 1.0, 3.0, 0.0);
        let v = finite_value(moment_if3(&d, 2).unwrap());
        assert!((v - 1.1969249974001295).abs() < 1e-13);
        let d = params(Finite(1.5), 1.0, 2.0, 2.5, 0.5);
        let v = finite_value(moment_if3(&d, 2).unwrap());
        assert!((v - 14.2333374719909978).abs() < 1e-12);
    }

    #[test]
    fn if3_divergence_boundary() {
        let d = params(Finite(2.0), 1.0, 1.0, 1.0, 0.0);
        assert_eq!(moment_if3(&d, 1).unwrap(), MomentResult::Divergent);
    }

    #[test]
    fn if1_and_if3_agree_where_they_overlap() {
        for (q, c, x0) in [(3.0, 1.0, 0.0), (2.5, 2.0, 1.0), (1.5, 0.5, 0.0)] {
            let d = params(Finite(0.0), 1.0, c, q, x0);
            for r in [1u32, 2] {
                if (r as f64) < q {
                    let a = finite_value(moment_if1(&d, r));
                    let b = finite_value(moment_if3(&d, r).unwrap());
                    assert!((a - b).abs() <= 1e-10 * a.abs(), "q={q} r={r}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn shift_matches_binomial_recombination() {
        let shifted = params(Finite(0.0), 2.0, 1.5, 3.0, 0.5);
        let origin = params(Finite(0.0), 2.0, 1.5, 3.0, 0.0);
        let r = 2u32;
        let direct = finite_value(moment_if1(&shifted, r));
        let mut recombined = 0.0;
        for i in 0..=r {
            let sub = finite_value(moment_if1(&origin, r - i));
            recombined += binomial(r, i) * 0.5f64.powi(i as i32) * sub;
        }
        assert!((direct - recombined).abs() <= 1e-10 * direct.abs());
    }

    #[test]
    fn general_family_dispatch() {
        let d = params(Finite(2.0), 3.0, 1.0, 2.0, 0.0);
        assert_eq!(moment(&d, 1, false).unwrap(), MomentResult::NoClosedForm);
        match moment(&d, 1, true).unwrap() {
            MomentResult::Finite { value, method } => {
                assert_eq!(method, Method::Quadrature);
                assert!((value - 0.9474894098882677).abs() < 1e-8, "{value}");
            }
            other => panic!("unexpected {other:?}"),
        }
        // divergent without any closed form: bq = 0.6 < 1
        let d = params(Finite(2.0), 3.0, 1.0, 0.2, 0.0);
        assert_eq!(moment(&d, 1, true).unwrap(), MomentResult::Divergent);
    }

    #[test]
    fn general_negative_b_existence_includes_the_mixture_factor() {
        // b = -1, p = 1: tail exponent b(p+1) = -2, so the mean is finite
        let d = params(Finite(1.0), -1.0, 1.0, 2.0, 0.0);
        assert!(exists(&d, 1));
        assert!(!exists(&d, 2));
        let v = crate::oracle::expectation(&d, |x| x, 1e-10).unwrap();
        match moment(&d, 1, true).unwrap() {
            MomentResult::Finite { value, .. } => {
                assert!((value - v).abs() < 1e-8 * v.abs().max(1.0))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn binomial_is_exact_for_small_arguments() {
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(60, 30), 118264581564861424.0);
        // beyond the integer range the log-gamma route takes over
        let approx = binomial(70, 35);
        let exact = 112186277816662845432.0f64;
        assert!((approx - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn dispatcher_routes_by_subfamily() {
        let d = params(Finite(0.0), 2.0, 1.0, 3.0, 0.0);
        assert_eq!(moment(&d, 1, false).unwrap(), moment_if1(&d, 1));
        let d = params(Infinite, -1.0, 2.0, 2.0, 0.0);
        assert_eq!(moment(&d, 1, false).unwrap(), moment_if2(&d, 1));
        let d = params(Finite(2.0), 1.0, 1.0, 4.0, 0.0);
        assert_eq!(moment(&d, 1, false).unwrap(), moment_if3(&d, 1).unwrap());
    }
}
