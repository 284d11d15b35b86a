//! Catalog of the sixteen named special cases: parameter mappings into the
//! family, mean and entropy expressions, and their constraint text.
//!
//! The mean/entropy expressions here are written out literally per case (via
//! `specfun` only), on purpose: the coherence checks against the `moments`
//! and `entropy` modules are then real cross-checks rather than the same
//! code evaluated twice.

use std::collections::BTreeMap;

use crate::model::{ExtendedP, IfParams};
use crate::moments::{Method, MomentResult};
use crate::specfun::{digamma, euler_mascheroni, harmonic, log_beta};
use crate::{Error, Result};

pub type ParamMap = BTreeMap<String, f64>;

/// Static description of one named case.
pub struct NamedCase {
    pub name: &'static str,
    pub title: &'static str,
    /// (symbol, domain) pairs the caller must supply.
    pub free_params: &'static [(&'static str, &'static str)],
    /// The (p, b, c, q, x0) mapping, as display text.
    pub mapping: &'static str,
    /// Condition under which the mean exists; `None` means always.
    pub mean_constraint: Option<&'static str>,
    /// Display text of the maximum-entropy constraint pair.
    pub constraints: &'static [&'static str],
}

static CASES: [NamedCase; 16] = [
    NamedCase {
        name: "pareto4",
        title: "Pareto IV",
        free_params: &[
            ("gamma", "gamma > 0"),
            ("c", "c > 0"),
            ("q", "q > 0"),
            ("x0", "x0 >= 0"),
        ],
        mapping: "(0, 1/gamma, c, q, x0)",
        mean_constraint: Some("q > gamma"),
        constraints: &[
            "E[ln((x-x0)/c)] = -gamma*H(q-1)",
            "E[ln(1+((x-x0)/c)^(1/gamma))] = 1/q",
        ],
    },
    NamedCase {
        name: "lindsay_burr3",
        title: "Lindsay-Burr III",
        free_params: &[
            ("b", "b < 0"),
            ("c", "c > 0"),
            ("q", "q > 0"),
            ("x0", "x0 >= 0"),
        ],
        mapping: "(0, b, c, q, x0)",
        mean_constraint: Some("b < -1"),
        constraints: &[
            "E[ln((x-x0)/c)] = -H(q-1)/b",
            "E[ln(1+((x-x0)/c)^b)] = 1/q",
        ],
    },
    NamedCase {
        name: "pareto2",
        title: "Pareto II",
        free_params: &[("c", "c > 0"), ("q", "q > 0"), ("x0", "x0 >= 0")],
        mapping: "(0, 1, c, q, x0)",
        mean_constraint: Some("q > 1"),
        constraints: &["E[ln((x-x0)/c)] = -H(q-1)", "E[ln(1+(x-x0)/c)] = 1/q"],
    },
    NamedCase {
        name: "pareto3",
        title: "Pareto III",
        free_params: &[("gamma", "gamma > 0"), ("c", "c > 0"), ("x0", "x0 >= 0")],
        mapping: "(0, 1/gamma, c, 1, x0)",
        mean_constraint: Some("gamma < 1"),
        constraints: &[
            "E[ln((x-x0)/c)] = 0",
            "E[ln(1+((x-x0)/c)^(1/gamma))] = 1",
        ],
    },
    NamedCase {
        name: "tadikamalla_burr12",
        title: "Tadikamalla-Burr XII",
        free_params: &[("b", "b > 0"), ("c", "c > 0"), ("q", "q > 0")],
        mapping: "(0, b, c, q, 0)",
        mean_constraint: Some("b*q > 1"),
        constraints: &["E[ln(x/c)] = -H(q-1)/b", "E[ln(1+(x/c)^b)] = 1/q"],
    },
    NamedCase {
        name: "fisk",
        title: "Fisk",
        free_params: &[("b", "b > 0"), ("c", "c > 0")],
        mapping: "(0, b, c, 1, 0)",
        mean_constraint: Some("b > 1"),
        constraints: &["E[ln(x/c)] = 0", "E[ln(1+(x/c)^b)] = 1"],
    },
    NamedCase {
        name: "lomax",
        title: "Lomax",
        free_params: &[("c", "c > 0"), ("q", "q > 0")],
        mapping: "(0, 1, c, q, 0)",
        mean_constraint: Some("q > 1"),
        constraints: &["E[ln(x/c)] = -H(q-1)", "E[ln(1+x/c)] = 1/q"],
    },
    NamedCase {
        name: "pareto1",
        title: "Pareto I",
        free_params: &[("q", "q > 0"), ("x0", "x0 > 0")],
        mapping: "(0, 1, x0, q, x0)",
        mean_constraint: Some("q > 1"),
        constraints: &["E[ln(x/x0-1)] = -H(q-1)", "E[ln(x/x0)] = 1/q"],
    },
    NamedCase {
        name: "burr12",
        title: "Burr XII",
        free_params: &[("b", "b > 0"), ("q", "q > 0")],
        mapping: "(0, b, 1, q, 0)",
        mean_constraint: Some("b*q > 1"),
        constraints: &["E[ln(x)] = -H(q-1)/b", "E[ln(1+x^b)] = 1/q"],
    },
    NamedCase {
        name: "weibull",
        title: "Weibull",
        free_params: &[("c", "c > 0"), ("q", "q > 0"), ("x0", "x0 >= 0")],
        mapping: "(inf, -1, c, q, x0)",
        mean_constraint: None,
        constraints: &["E[ln((x-x0)/c)] = -gamma_E/q", "E[((x-x0)/c)^q] = 1"],
    },
    NamedCase {
        name: "frechet",
        title: "Frechet",
        free_params: &[("c", "c > 0"), ("q", "q > 0"), ("x0", "x0 >= 0")],
        mapping: "(inf, 1, c, q, x0)",
        mean_constraint: Some("q > 1"),
        constraints: &["E[ln((x-x0)/c)] = gamma_E/q", "E[((x-x0)/c)^(-q)] = 1"],
    },
    NamedCase {
        name: "gumbel2",
        title: "Gumbel II",
        free_params: &[("c", "c > 0"), ("q", "q > 0")],
        mapping: "(inf, 1, c, q, 0)",
        mean_constraint: Some("q > 1"),
        constraints: &["E[ln(x/c)] = gamma_E/q", "E[(x/c)^(-q)] = 1"],
    },
    NamedCase {
        name: "rayleigh",
        title: "Rayleigh",
        free_params: &[("c", "c > 0")],
        mapping: "(inf, -1, c, 2, 0)",
        mean_constraint: None,
        constraints: &["E[ln(x/c)] = -gamma_E/2", "E[(x/c)^2] = 1"],
    },
    NamedCase {
        name: "exponential",
        title: "Exponential",
        free_params: &[("c", "c > 0")],
        mapping: "(inf, -1, c, 1, 0)",
        mean_constraint: None,
        constraints: &["E[x/c] = 1"],
    },
    NamedCase {
        name: "generalized_lomax",
        title: "Generalized Lomax",
        free_params: &[("m", "m >= 1"), ("c", "c > 0"), ("q", "q > 0")],
        mapping: "(m-1, 1, c, q, 0)",
        mean_constraint: Some("q > 1"),
        constraints: &[
            "E[ln(m^(-1/q)+x/c)] = (H(m)-ln(m))/q",
            "E[ln(1-(1+m^(1/q)x/c)^(-q))] = -1/m",
        ],
    },
    NamedCase {
        name: "stoppa",
        title: "Stoppa",
        free_params: &[("m", "m >= 1"), ("c", "c > 0"), ("q", "q > 0")],
        mapping: "(m-1, 1, c, q, c*m^(-1/q))",
        mean_constraint: Some("q > 1"),
        constraints: &[
            "E[ln(x/c)] = (H(m)-ln(m))/q",
            "E[ln(1-(x/c)^(-q)/m)] = -1/m",
        ],
    },
];

/// The case names, in catalog order.
pub fn list_cases() -> Vec<&'static str> {
    CASES.iter().map(|c| c.name).collect()
}

/// Looks a case up by its identifier.
pub fn case(name: &str) -> Result<&'static NamedCase> {
    CASES
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownCase(name.to_string()))
}

fn validated(case: &NamedCase, args: &ParamMap) -> Result<()> {
    for (sym, _) in case.free_params {
        if !args.contains_key(*sym) {
            return Err(Error::invalid(*sym, format!("missing for case {}", case.name)));
        }
    }
    for key in args.keys() {
        if !case.free_params.iter().any(|(sym, _)| sym == key) {
            return Err(Error::invalid(
                key,
                format!("not a parameter of case {}", case.name),
            ));
        }
    }
    Ok(())
}

fn require(ok: bool, case: &NamedCase, sym: &'static str, domain: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(sym, format!("case {} requires {domain}", case.name)))
    }
}

/// Maps a named case with its free parameters onto the five family
/// parameters, validating the case-specific domains.
pub fn resolve(name: &str, args: &ParamMap) -> Result<IfParams> {
    let case = case(name)?;
    validated(case, args)?;
    let g = |s: &str| args[s];
    let zero = ExtendedP::Finite(0.0);
    let inf = ExtendedP::Infinite;
    match case.name {
        "pareto4" => {
            require(g("gamma") > 0.0, case, "gamma", "gamma > 0")?;
            IfParams::new(zero, 1.0 / g("gamma"), g("c"), g("q"), g("x0"))
        }
        "lindsay_burr3" => {
            require(g("b") < 0.0, case, "b", "b < 0")?;
            IfParams::new(zero, g("b"), g("c"), g("q"), g("x0"))
        }
        "pareto2" => IfParams::new(zero, 1.0, g("c"), g("q"), g("x0")),
        "pareto3" => {
            require(g("gamma") > 0.0, case, "gamma", "gamma > 0")?;
            IfParams::new(zero, 1.0 / g("gamma"), g("c"), 1.0, g("x0"))
        }
        "tadikamalla_burr12" => {
            require(g("b") > 0.0, case, "b", "b > 0")?;
            IfParams::new(zero, g("b"), g("c"), g("q"), 0.0)
        }
        "fisk" => {
            require(g("b") > 0.0, case, "b", "b > 0")?;
            IfParams::new(zero, g("b"), g("c"), 1.0, 0.0)
        }
        "lomax" => IfParams::new(zero, 1.0, g("c"), g("q"), 0.0),
        "pareto1" => {
            require(g("x0") > 0.0, case, "x0", "x0 > 0")?;
            IfParams::new(zero, 1.0, g("x0"), g("q"), g("x0"))
        }
        "burr12" => {
            require(g("b") > 0.0, case, "b", "b > 0")?;
            IfParams::new(zero, g("b"), 1.0, g("q"), 0.0)
        }
        "weibull" => IfParams::new(inf, -1.0, g("c"), g("q"), g("x0")),
        "frechet" => IfParams::new(inf, 1.0, g("c"), g("q"), g("x0")),
        "gumbel2" => IfParams::new(inf, 1.0, g("c"), g("q"), 0.0),
        "rayleigh" => IfParams::new(inf, -1.0, g("c"), 2.0, 0.0),
        "exponential" => IfParams::new(inf, -1.0, g("c"), 1.0, 0.0),
        "generalized_lomax" => {
            require(g("m") >= 1.0, case, "m", "m >= 1")?;
            IfParams::new(ExtendedP::Finite(g("m") - 1.0), 1.0, g("c"), g("q"), 0.0)
        }
        "stoppa" => {
            require(g("m") >= 1.0, case, "m", "m >= 1")?;
            let x0 = g("c") * (-(g("m").ln()) / g("q")).exp();
            IfParams::new(ExtendedP::Finite(g("m") - 1.0), 1.0, g("c"), g("q"), x0)
        }
        _ => unreachable!("case table and resolver out of sync"),
    }
}

/// Same as [`resolve`] but starting from unparsed `key=value` pairs, as
/// produced by the constructor grammar.
pub fn resolve_pairs(name: &str, pairs: &[(String, String)]) -> Result<IfParams> {
    let mut args = ParamMap::new();
    for (key, value) in pairs {
        let v: f64 = value
            .parse()
            .map_err(|_| Error::parse(value, format!("invalid number for {key}")))?;
        if args.insert(key.clone(), v).is_some() {
            return Err(Error::invalid(key, "given more than once"));
        }
    }
    resolve(name, &args)
}

fn hq(q: f64) -> f64 {
    // H_{q-1} continued to real index
    digamma(q) + euler_mascheroni()
}

fn gamma_ratio(q: f64, inv_b: f64) -> f64 {
    use crate::specfun::ln_gamma;
    (ln_gamma(q - inv_b) + ln_gamma(1.0 + inv_b) - ln_gamma(q)).exp()
}

/// The tabulated mean expression for a case, or `Divergent` outside its
/// existence constraint.
pub fn table_mean(name: &str, args: &ParamMap) -> Result<MomentResult> {
    let case = case(name)?;
    resolve(name, args)?;
    let g = |s: &str| args[s];
    let finite = |value: f64| MomentResult::Finite {
        value,
        method: Method::ClosedForm,
    };
    let v = match case.name {
        "pareto4" => {
            if g("q") <= g("gamma") {
                return Ok(MomentResult::Divergent);
            }
            finite(g("x0") + g("c") * gamma_ratio(g("q"), g("gamma")))
        }
        "lindsay_burr3" => {
            if g("b") >= -1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("x0") + g("c") * gamma_ratio(g("q"), 1.0 / g("b")))
        }
        "pareto2" => {
            if g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("x0") + g("c") / (g("q") - 1.0))
        }
        "pareto3" => {
            if g("gamma") >= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("x0") + g("c") * gamma_ratio(1.0, g("gamma")))
        }
        "tadikamalla_burr12" => {
            if g("b") * g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("c") * gamma_ratio(g("q"), 1.0 / g("b")))
        }
        "fisk" => {
            if g("b") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("c") * gamma_ratio(1.0, 1.0 / g("b")))
        }
        "lomax" => {
            if g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("c") / (g("q") - 1.0))
        }
        "pareto1" => {
            if g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("q") / (g("q") - 1.0) * g("x0"))
        }
        "burr12" => {
            if g("b") * g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(gamma_ratio(g("q"), 1.0 / g("b")))
        }
        "weibull" => finite(g("x0") + g("c") * crate::specfun::gamma(1.0 + 1.0 / g("q"))),
        "frechet" => {
            if g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("x0") + g("c") * crate::specfun::gamma(1.0 - 1.0 / g("q")))
        }
        "gumbel2" => {
            if g("q") <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            finite(g("c") * crate::specfun::gamma(1.0 - 1.0 / g("q")))
        }
        "rayleigh" => finite(g("c") / 2f64.sqrt() * (std::f64::consts::PI / 2.0).sqrt()),
        "exponential" => finite(g("c")),
        "generalized_lomax" => {
            let (m, q) = (g("m"), g("q"));
            if q <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            // second beta term B(1, m) collapses to 1/m
            let diff = log_beta(1.0 - 1.0 / q, m).exp() - 1.0 / m;
            finite(g("c") * ((1.0 - 1.0 / q) * m.ln()).exp() * diff)
        }
        "stoppa" => {
            let (m, q) = (g("m"), g("q"));
            if q <= 1.0 {
                return Ok(MomentResult::Divergent);
            }
            let x0 = g("c") * (-(m.ln()) / q).exp();
            finite(x0 * m * log_beta(1.0 - 1.0 / q, m).exp())
        }
        _ => unreachable!(),
    };
    Ok(v)
}

/// The tabulated entropy expression for a case, in nats.
pub fn table_entropy(name: &str, args: &ParamMap) -> Result<f64> {
    let case = case(name)?;
    resolve(name, args)?;
    let g = |s: &str| args[s];
    let ge = euler_mascheroni();
    let v = match case.name {
        "pareto4" => {
            let (ga, q) = (g("gamma"), g("q"));
            (1.0 - ga) * hq(q) + (q + 1.0) / q - (q / (g("c") * ga)).ln()
        }
        "lindsay_burr3" => {
            let (b, q) = (g("b"), g("q"));
            (b - 1.0) / b * hq(q) + (q + 1.0) / q - (b.abs() * q / g("c")).ln()
        }
        "pareto2" => {
            let q = g("q");
            (q + 1.0) / q - (q / g("c")).ln()
        }
        "pareto3" => 2.0 + (g("c") * g("gamma")).ln(),
        "tadikamalla_burr12" => {
            let (b, q) = (g("b"), g("q"));
            (b - 1.0) / b * hq(q) + (q + 1.0) / q - (b * q / g("c")).ln()
        }
        "fisk" => 2.0 - (g("b") / g("c")).ln(),
        "lomax" => {
            let q = g("q");
            (q + 1.0) / q - (q / g("c")).ln()
        }
        "pareto1" => {
            let q = g("q");
            (q + 1.0) / q - (q / g("x0")).ln()
        }
        "burr12" => {
            let (b, q) = (g("b"), g("q"));
            (b - 1.0) / b * hq(q) + (q + 1.0) / q - (b * q).ln()
        }
        "weibull" => {
            let q = g("q");
            (q - 1.0) / q * ge + 1.0 - (q / g("c")).ln()
        }
        "frechet" | "gumbel2" => {
            let q = g("q");
            (q + 1.0) / q * ge + 1.0 - (q / g("c")).ln()
        }
        "rayleigh" => 0.5 * ge + (g("c") / 2.0).ln() + 1.0,
        "exponential" => g("c").ln() + 1.0,
        "generalized_lomax" | "stoppa" => {
            let (m, q) = (g("m"), g("q"));
            (q + 1.0) / q * (harmonic(m) - m.ln()) + (m - 1.0) / m - (q / g("c")).ln()
        }
        _ => unreachable!(),
    };
    Ok(v)
}
