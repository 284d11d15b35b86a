//! Differential entropy in nats: specialized closed forms for the three
//! subfamilies and the five-parameter formula built around the one
//! dimensional integral F(p,q), plus the constraint pairs under which each
//! subfamily is the maximum-entropy distribution.

use crate::model::{ExtendedP, IfParams, Subfamily};
use crate::oracle::{integrate, QuadOptions};
use crate::specfun::{digamma, euler_mascheroni, harmonic};
use crate::util::ln1m_exp;
use crate::{Error, Result};

/// Whether the value came straight from a closed form or needed the numeric
/// F(p,q) primitive inside the general formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyMethod {
    ClosedForm,
    ClosedFormWithFIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub method: EntropyMethod,
}

/// `F(p,q) = (p+1) * integral of ln(t^{-1/q} - 1) (1-t)^p dt over (0,1)`.
///
/// Both endpoints carry log singularities, so the interval is split at 1/2
/// and each half is mapped exponentially (`t = e^{-s}` on the left,
/// `t = 1 - e^{-s}` on the right), which turns the singularities into smooth
/// exponentially-decaying tails. The tails are cut at s = 60, far below the
/// requested tolerances.
pub fn f_integral(p: f64, q: f64, tol: f64) -> Result<f64> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::Domain {
            context: "f_integral p",
            value: p,
            domain: "[0,inf)",
        });
    }
    if !(q > 0.0) {
        return Err(Error::Domain {
            context: "f_integral q",
            value: q,
            domain: "(0,inf)",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            context: "f_integral tol",
            value: tol,
            domain: "(0,inf)",
        });
    }
    let half_tol = 0.5 * tol / (p + 1.0);
    let opts = QuadOptions {
        abs_tol: half_tol,
        rel_tol: 0.0,
        ..QuadOptions::default()
    };
    let upper = 60.0f64;
    // t = e^{-s}: ln(t^{-1/q} - 1) = s/q + ln(1 - e^{-s/q})
    let left = integrate(
        |s| (s / q + ln1m_exp(-s / q)) * (p * (-(-s).exp()).ln_1p()).exp() * (-s).exp(),
        std::f64::consts::LN_2,
        upper,
        &opts,
    )?;
    // t = 1 - e^{-s}: t^{-1/q} - 1 = expm1(-ln(1 - e^{-s})/q)
    let right = integrate(
        |s| {
            let ln_t = (-(-s).exp()).ln_1p();
            (-ln_t / q).exp_m1().ln() * (-(p + 1.0) * s).exp()
        },
        std::f64::consts::LN_2,
        upper,
        &opts,
    )?;
    Ok((p + 1.0) * (left.value + right.value))
}

// H_{q-1} = digamma(q) + gamma, valid down through 0 < q < 1 where the
// harmonic index goes negative and specfun's harmonic() would balk.
fn harmonic_qm1(q: f64) -> f64 {
    digamma(q) + euler_mascheroni()
}

fn entropy_if1(params: &IfParams) -> f64 {
    let b = params.b();
    let q = params.q();
    -(b.abs() * q / params.c()).ln() + (b - 1.0) / b * harmonic_qm1(q) + (q + 1.0) / q
}

fn entropy_if2(params: &IfParams) -> f64 {
    let b = params.b();
    let q = params.q();
    -(b.abs() * q / params.c()).ln() + (b * q + 1.0) / (b * q) * euler_mascheroni() + 1.0
}

fn entropy_if3(params: &IfParams, p: f64) -> f64 {
    let q = params.q();
    let pp1 = p + 1.0;
    -(q / params.c()).ln() + (q + 1.0) / q * (harmonic(pp1) - pp1.ln()) + p / pp1
}

/// The five-parameter entropy formula, valid for any finite `p`. Exposed
/// separately from [`entropy`] so the specialized closed forms can be checked
/// against it on their own turf (`p = 0`, `b = 1`).
pub fn entropy_general(params: &IfParams) -> Result<f64> {
    let p = match params.p() {
        ExtendedP::Finite(p) => p,
        ExtendedP::Infinite => {
            return Err(Error::Unsupported(
                "the general entropy formula requires finite p".into(),
            ))
        }
    };
    let b = params.b();
    let q = params.q();
    let pp1 = p + 1.0;
    let f = f_integral(p, q, 1e-10)?;
    Ok(-(b.abs() * q / params.c()).ln() - (b - 1.0) / b * f
        - (b * q + 1.0) / (b * q) * pp1.ln()
        + (q + 1.0) / q * harmonic(pp1)
        + p / pp1)
}

/// Differential entropy, dispatched to the tightest available form.
pub fn entropy(params: &IfParams) -> Result<EntropyValue> {
    let value = match params.classify() {
        Subfamily::If1 => entropy_if1(params),
        Subfamily::If2 => entropy_if2(params),
        Subfamily::If3 => {
            let p = params.p().finite().expect("IF3 has finite p");
            entropy_if3(params, p)
        }
        Subfamily::General => {
            return Ok(EntropyValue {
                value: entropy_general(params)?,
                method: EntropyMethod::ClosedFormWithFIntegral,
            })
        }
    };
    Ok(EntropyValue {
        value,
        method: EntropyMethod::ClosedForm,
    })
}

/// One constraint functional from the maximum-entropy characterizations: the
/// expectation of `eval` under the distribution should equal `expected`.
pub struct Constraint {
    pub description: String,
    pub expected: f64,
    integrand: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Constraint {
    pub fn eval(&self, x: f64) -> f64 {
        (self.integrand)(x)
    }
}

impl std::fmt::Debug for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Constraint")
            .field("description", &self.description)
            .field("expected", &self.expected)
            .finish()
    }
}

/// The pair of expectations pinned down by the subfamily's maximum-entropy
/// characterization. The general family has no stated characterization.
pub fn maxent_constraints(params: &IfParams) -> Result<Vec<Constraint>> {
    let b = params.b();
    let q = params.q();
    let c = params.c();
    let x0 = params.x0();
    match params.classify() {
        Subfamily::If1 => Ok(vec![
            Constraint {
                description: "E[ln((x-x0)/c)]".into(),
                expected: -harmonic_qm1(q) / b,
                integrand: Box::new(move |x| ((x - x0) / c).ln()),
            },
            Constraint {
                description: "E[ln(1+((x-x0)/c)^b)]".into(),
                expected: 1.0 / q,
                integrand: Box::new(move |x| ((x - x0) / c).powf(b).ln_1p()),
            },
        ]),
        Subfamily::If2 => Ok(vec![
            Constraint {
                description: "E[ln((x-x0)/c)]".into(),
                expected: euler_mascheroni() / (b * q),
                integrand: Box::new(move |x| ((x - x0) / c).ln()),
            },
            Constraint {
                description: "E[((x-x0)/c)^(-bq)]".into(),
                expected: 1.0,
                integrand: Box::new(move |x| ((x - x0) / c).powf(-b * q)),
            },
        ]),
        Subfamily::If3 => {
            let p = params.p().finite().expect("IF3 has finite p");
            let pp1 = p + 1.0;
            let base = params.g_base();
            let scale = (pp1.ln() / q).exp();
            Ok(vec![
                Constraint {
                    description: "E[ln((p+1)^(-1/q)+(x-x0)/c)]".into(),
                    expected: (harmonic(pp1) - pp1.ln()) / q,
                    integrand: Box::new(move |x| (base + (x - x0) / c).ln()),
                },
                Constraint {
                    description: "E[ln(1-(1+(p+1)^(1/q)(x-x0)/c)^(-q))]".into(),
                    expected: -1.0 / pp1,
                    integrand: Box::new(move |x| ln1m_exp(-q * (scale * (x - x0) / c).ln_1p())),
                },
            ])
        }
        Subfamily::General => Err(Error::Unsupported(
            "maximum-entropy constraints are stated only for the IF1/IF2/IF3 subfamilies".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ExtendedP::{Finite, Infinite};

    fn params(p: crate::model::ExtendedP, b: f64, c: f64, q: f64, x0: f64) -> IfParams {
        IfParams::new(p, b, c, q, x0).unwrap()
    }

    #[test]
    fn f_integral_reference_values() {
        // antisymmetry of ln((1-t)/t) around 1/2
        assert!(f_integral(0.0, 1.0, 1e-11).unwrap().abs() < 1e-10);
        // F(0,q) = -H_{q-1}
        assert!((f_integral(0.0, 2.0, 1e-11).unwrap() + 1.0).abs() < 1e-10);
        assert!((f_integral(2.0, 2.0, 1e-11).unwrap() - 13.0 / 60.0).abs() < 1e-10);
        assert!((f_integral(3.0, 2.0, 1e-11).unwrap() - 0.4595238095238095).abs() < 1e-10);
    }

    #[test]
    fn f_integral_rejects_bad_arguments() {
        assert!(f_integral(-1.0, 1.0, 1e-10).is_err());
        assert!(f_integral(f64::INFINITY, 1.0, 1e-10).is_err());
        assert!(f_integral(1.0, 0.0, 1e-10).is_err());
        assert!(f_integral(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn subfamily_closed_forms() {
        let checks = [
            (params(Finite(0.0), 2.0, 1.0, 3.0, 0.0), 0.2915738641052783),
            (params(Finite(0.0), -2.0, 1.0, 2.0, 0.0), 1.6137056388801094),
            (params(Finite(0.0), 0.5, 2.0, 2.0, 0.0), 1.1931471805599453),
            (params(Finite(3.0), 1.0, 1.0, 2.0, 0.0), 1.1024112777602188),
            (params(Finite(2.0), 1.0, 1.0, 1.0, 0.0), 2.1361087559971140),
            (params(Infinite, 1.0, 1.0, 2.0, 0.0), 1.1726763167923540),
            (params(Infinite, -2.0, 1.0, 1.5, 0.0), 0.2861981545995789),
            (params(Infinite, 1.0, 1.0, 3.0, 0.0), 0.6710085978672675),
        ];
        for (d, expect) in checks {
            let h = entropy(&d).unwrap();
            assert_eq!(h.method, EntropyMethod::ClosedForm);
            assert!((h.value - expect).abs() < 1e-13, "{d}: {} vs {expect}", h.value);
        }
    }

    #[test]
    fn general_formula_reference_values() {
        let checks = [
            (params(Finite(2.0), 3.0, 1.0, 2.0, 0.0), 0.1987484162147059),
            (params(Finite(0.5), -1.5, 1.2, 2.0, 0.5), 1.8648665609695552),
            (params(Finite(1.0), 2.0, 1.5, 1.0, 0.0), 1.6725971567083018),
            (params(Finite(3.0), -0.5, 2.0, 3.0, 0.0), 3.8080154095099415),
        ];
        for (d, expect) in checks {
            let h = entropy(&d).unwrap();
            assert_eq!(h.method, EntropyMethod::ClosedFormWithFIntegral);
            assert!((h.value - expect).abs() < 1e-9, "{d}: {} vs {expect}", h.value);
        }
    }

    #[test]
    fn general_formula_collapses_to_special_cases() {
        // p = 0 against IF1, including fractional q below 1
        for (b, q) in [(2.0, 3.0), (-1.5, 0.7), (0.5, 2.0), (1.0, 1.0)] {
            let d = params(Finite(0.0), b, 1.0, q, 0.0);
            let general = entropy_general(&d).unwrap();
            let special = entropy(&d).unwrap().value;
            assert!((general - special).abs() < 1e-8, "b={b} q={q}");
        }
        // b = 1 against IF3
        for (p, q) in [(1.0, 2.0), (3.0, 0.5), (0.25, 1.0)] {
            let d = params(Finite(p), 1.0, 1.0, q, 0.0);
            let general = entropy_general(&d).unwrap();
            let special = entropy(&d).unwrap().value;
            assert!((general - special).abs() < 1e-8, "p={p} q={q}");
        }
    }

    #[test]
    fn entropy_is_location_invariant_and_log_scales() {
        let base = params(Finite(2.0), 3.0, 1.0, 2.0, 0.0);
        let shifted = params(Finite(2.0), 3.0, 1.0, 2.0, 5.0);
        assert_eq!(entropy(&base).unwrap().value, entropy(&shifted).unwrap().value);
        let scaled = params(Finite(2.0), 3.0, 7.0, 2.0, 0.0);
        let diff = entropy(&scaled).unwrap().value - entropy(&base).unwrap().value;
        assert!((diff - 7.0f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn limit_toward_the_exponential_cutoff_family() {
        let h_inf = entropy(&params(Infinite, 1.0, 1.0, 2.0, 0.0)).unwrap().value;
        let gaps: Vec<f64> = [1e2, 1e4, 1e6]
            .iter()
            .map(|&p| (entropy(&params(Finite(p), 1.0, 1.0, 2.0, 0.0)).unwrap().value - h_inf).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        assert!(gaps[2] <= 1e-3);
    }

    #[test]
    fn constraints_for_each_subfamily() {
        let d = params(Finite(0.0), 1.0, 1.0, 2.0, 0.0);
        let cons = maxent_constraints(&d).unwrap();
        assert_eq!(cons.len(), 2);
        // E[ln(1+x)] = 1/q
        assert!((cons[1].expected - 0.5).abs() < 1e-15);
        assert!((cons[1].eval(1.0) - 2.0f64.ln()).abs() < 1e-15);

        let d = params(Infinite, -1.0, 1.0, 1.0, 0.0);
        let cons = maxent_constraints(&d).unwrap();
        // E[x] = 1 written through the t^{-bq} functional
        assert!((cons[1].expected - 1.0).abs() < 1e-15);
        assert!((cons[1].eval(2.5) - 2.5).abs() < 1e-14);

        let d = params(Finite(1.0), 1.0, 1.0, 2.0, 0.0);
        let cons = maxent_constraints(&d).unwrap();
        assert!((cons[1].expected + 0.5).abs() < 1e-15);
        let x = 1.0;
        let direct = (1.0 - (1.0 + 2f64.sqrt() * x).powf(-2.0)).ln();
        assert!((cons[1].eval(x) - direct).abs() < 1e-14);

        let d = params(Finite(2.0), 3.0, 1.0, 2.0, 0.0);
        assert!(matches!(maxent_constraints(&d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn constraint_expectations_match_quadrature() {
        use crate::oracle::expectation;
        let cases = [
            params(Finite(0.0), 2.0, 1.0, 3.0, 0.0),
            params(Infinite, -1.0, 2.0, 2.0, 1.0),
            params(Finite(1.0), 1.0, 1.0, 2.0, 0.0),
        ];
        for d in cases {
            for con in maxent_constraints(&d).unwrap() {
                let est = expectation(&d, |x| con.eval(x), 1e-9).unwrap();
                assert!(
                    (est - con.expected).abs() < 1e-7,
                    "{d} {}: {est} vs {}",
                    con.description,
                    con.expected
                );
            }
        }
    }
}
