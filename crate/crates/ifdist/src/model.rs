//! Parameter model: validation, subfamily classification, and the textual
//! `if(p=..,b=..,c=..,q=..,x0=..)` constructor grammar.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Shape parameter `p`, which may sit at the `p -> infinity` boundary.
///
/// Kept as an explicit tag rather than an `f64` sentinel so the limiting
/// subfamily can never be confused with a merely huge finite `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedP {
    Finite(f64),
    Infinite,
}

impl ExtendedP {
    /// The finite value, if there is one.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedP::Finite(v) => Some(v),
            ExtendedP::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedP::Infinite)
    }
}

impl fmt::Display for ExtendedP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedP::Finite(v) => write!(f, "{v}"),
            ExtendedP::Infinite => write!(f, "inf"),
        }
    }
}

/// Closed-form regime of a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subfamily {
    /// p = 0 (includes b = 1, which is also the Lomax corner of IF3).
    If1,
    /// p -> infinity.
    If2,
    /// b = 1 with finite p > 0.
    If3,
    /// Finite p > 0 with b != 1: no fully closed moment form.
    General,
}

impl fmt::Display for Subfamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subfamily::If1 => "IF1",
            Subfamily::If2 => "IF2",
            Subfamily::If3 => "IF3",
            Subfamily::General => "general",
        };
        f.write_str(s)
    }
}

/// A validated parameter set (p, b, c, q, x0).
///
/// Construction goes through [`IfParams::new`], so an instance always
/// satisfies: `p >= 0` or infinite, `b != 0`, `c > 0`, `q > 0`, `x0 >= 0`,
/// all finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfParams {
    p: ExtendedP,
    b: f64,
    c: f64,
    q: f64,
    x0: f64,
}

impl IfParams {
    pub fn new(p: ExtendedP, b: f64, c: f64, q: f64, x0: f64) -> Result<Self> {
        if let ExtendedP::Finite(v) = p {
            if !v.is_finite() {
                return Err(Error::invalid("p", "must be finite or the literal `inf`"));
            }
            if v < 0.0 {
                return Err(Error::invalid("p", format!("must be >= 0, got {v}")));
            }
        }
        if !b.is_finite() || b == 0.0 {
            return Err(Error::invalid("b", format!("must be finite and nonzero, got {b}")));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::invalid("c", format!("must be a positive real, got {c}")));
        }
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::invalid("q", format!("must be a positive real, got {q}")));
        }
        if !(x0 >= 0.0) || !x0.is_finite() {
            return Err(Error::invalid("x0", format!("must be >= 0, got {x0}")));
        }
        Ok(IfParams { p, b, c, q, x0 })
    }

    pub fn p(&self) -> ExtendedP {
        self.p
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Which closed-form regime this parameter set falls in.
    ///
    /// The regimes are checked in order: `p = 0` wins over `b = 1`, so the
    /// shared corner `p = 0, b = 1` classifies as IF1.
    pub fn classify(&self) -> Subfamily {
        match self.p {
            ExtendedP::Infinite => Subfamily::If2,
            ExtendedP::Finite(p) if p == 0.0 => Subfamily::If1,
            ExtendedP::Finite(_) if self.b == 1.0 => Subfamily::If3,
            ExtendedP::Finite(_) => Subfamily::General,
        }
    }

    /// `(p + 1)^{-1/q}`, the lower endpoint of the auxiliary function G.
    /// Zero in the IF2 limit.
    pub(crate) fn g_base(&self) -> f64 {
        match self.p {
            ExtendedP::Finite(p) => (-(p + 1.0).ln() / self.q).exp(),
            ExtendedP::Infinite => 0.0,
        }
    }
}

impl fmt::Display for IfParams {
    /// Renders in the constructor grammar; `parse` of the output round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "if(p={},b={},c={},q={},x0={})",
            self.p, self.b, self.c, self.q, self.x0
        )
    }
}

impl FromStr for IfParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, pairs) = parse_call(s)?;
        if name != "if" {
            return Err(Error::parse(s, "expected the form if(p=..,b=..,c=..,q=..,x0=..)"));
        }
        let mut p: Option<ExtendedP> = None;
        let mut b: Option<f64> = None;
        let mut c: Option<f64> = None;
        let mut q: Option<f64> = None;
        let mut x0: Option<f64> = None;
        for (key, value) in &pairs {
            let slot: &mut Option<f64> = match key.as_str() {
                "p" => {
                    if p.replace(parse_extended_p(s, value)?).is_some() {
                        return Err(Error::parse(s, "field `p` given twice"));
                    }
                    continue;
                }
                "b" => &mut b,
                "c" => &mut c,
                "q" => &mut q,
                "x0" => &mut x0,
                other => {
                    return Err(Error::parse(s, format!("unknown field `{other}`")));
                }
            };
            if slot.replace(parse_number(s, key, value)?).is_some() {
                return Err(Error::parse(s, format!("field `{key}` given twice")));
            }
        }
        let missing = |field: &str| Error::parse(s, format!("missing field `{field}`"));
        IfParams::new(
            p.ok_or_else(|| missing("p"))?,
            b.ok_or_else(|| missing("b"))?,
            c.ok_or_else(|| missing("c"))?,
            q.ok_or_else(|| missing("q"))?,
            x0.ok_or_else(|| missing("x0"))?,
        )
    }
}

fn parse_extended_p(input: &str, value: &str) -> Result<ExtendedP> {
    if value == "inf" {
        return Ok(ExtendedP::Infinite);
    }
    Ok(ExtendedP::Finite(parse_number(input, "p", value)?))
}

fn parse_number(input: &str, key: &str, value: &str) -> Result<f64> {
    // f64's parser accepts spellings like `infinity` and `nan`; only finite
    // literals count as numbers here (`p=inf` is handled before this).
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(
            input,
            format!("field `{key}`: `{value}` is not a number"),
        )),
    }
}

/// Splits `name(k1=v1,k2=v2,...)` into the name and its key/value pairs.
/// Whitespace is insignificant everywhere. Shared by the `if(...)` grammar
/// and the registry's named-case grammar.
pub(crate) fn parse_call(s: &str) -> Result<(String, Vec<(String, String)>)> {
    let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    let open = compact
        .find('(')
        .ok_or_else(|| Error::parse(s, "expected `name(field=value,...)`"))?;
    if !compact.ends_with(')') {
        return Err(Error::parse(s, "missing closing `)`"));
    }
    let name = compact[..open].to_string();
    if name.is_empty() {
        return Err(Error::parse(s, "missing name before `(`"));
    }
    let inner = &compact[open + 1..compact.len() - 1];
    let mut pairs = Vec::new();
    if inner.is_empty() {
        return Ok((name, pairs));
    }
    for field in inner.split(',') {
        let Some((key, value)) = field.split_once('=') else {
            return Err(Error::parse(s, format!("field `{field}` is not of the form key=value")));
        };
        if key.is_empty() || value.is_empty() {
            return Err(Error::parse(s, format!("field `{field}` is not of the form key=value")));
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok((name, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: ExtendedP, b: f64, c: f64, q: f64, x0: f64) -> IfParams {
        IfParams::new(p, b, c, q, x0).unwrap()
    }

    #[test]
    fn validation_accepts_interior_point() {
        let ok = params(ExtendedP::Finite(2.0), -1.5, 3.0, 0.5, 1.0);
        assert_eq!(ok.b(), -1.5);
        assert_eq!(ok.q(), 0.5);
    }

    #[test]
    fn validation_rejects_each_bad_field() {
        let bad = [
            IfParams::new(ExtendedP::Finite(-0.1), 1.0, 1.0, 1.0, 0.0),
            IfParams::new(ExtendedP::Finite(f64::NAN), 1.0, 1.0, 1.0, 0.0),
            IfParams::new(ExtendedP::Finite(0.0), 0.0, 1.0, 1.0, 0.0),
            IfParams::new(ExtendedP::Finite(0.0), 1.0, 0.0, 1.0, 0.0),
            IfParams::new(ExtendedP::Finite(0.0), 1.0, -2.0, 1.0, 0.0),
            IfParams::new(ExtendedP::Finite(0.0), 1.0, 1.0, 0.0, 0.0),
            IfParams::new(ExtendedP::Finite(0.0), 1.0, 1.0, 1.0, -0.5),
            IfParams::new(ExtendedP::Finite(0.0), f64::INFINITY, 1.0, 1.0, 0.0),
        ];
        for r in bad {
            assert!(matches!(r, Err(Error::InvalidParam { .. })), "{r:?}");
        }
    }

    #[test]
    fn classification_covers_all_regimes() {
        assert_eq!(params(ExtendedP::Finite(0.0), 2.0, 1.0, 1.0, 0.0).classify(), Subfamily::If1);
        // p = 0 wins over b = 1
        assert_eq!(params(ExtendedP::Finite(0.0), 1.0, 1.0, 1.0, 0.0).classify(), Subfamily::If1);
        assert_eq!(params(ExtendedP::Infinite, -1.0, 1.0, 1.0, 0.0).classify(), Subfamily::If2);
        assert_eq!(params(ExtendedP::Finite(3.0), 1.0, 1.0, 1.0, 0.0).classify(), Subfamily::If3);
        assert_eq!(params(ExtendedP::Finite(3.0), 1.5, 1.0, 1.0, 0.0).classify(), Subfamily::General);
        // huge finite p is still not IF2
        assert_eq!(params(ExtendedP::Finite(1e12), 2.0, 1.0, 1.0, 0.0).classify(), Subfamily::General);
    }

    #[test]
    fn display_string_round_trips() {
        let cases = [
            params(ExtendedP::Finite(0.0), 1.0, 1.0, 1.0, 0.0),
            params(ExtendedP::Infinite, -1.0, 2.0, 1.0, 0.0),
            params(ExtendedP::Finite(2.5), -0.75, 0.125, 3.0, 1.5),
            params(ExtendedP::Finite(0.1), 3.0, 10.0, 0.2, 7.25),
        ];
        for p in cases {
            let rendered = p.to_string();
            let back: IfParams = rendered.parse().unwrap();
            assert_eq!(back, p, "round trip failed for {rendered}");
        }
    }

    #[test]
    fn parse_accepts_whitespace_and_any_field_order() {
        let p: IfParams = " if( x0 = 0, q=2, c = 1.5, p = inf , b=-1 ) ".parse().unwrap();
        assert_eq!(p.p(), ExtendedP::Infinite);
        assert_eq!(p.b(), -1.0);
        assert_eq!(p.c(), 1.5);
        assert_eq!(p.q(), 2.0);
        assert_eq!(p.x0(), 0.0);
    }

    #[test]
    fn parse_rejects_malformed_strings() {
        let bad = [
            "if(p=0,b=1,c=1,q=1)",            // missing x0
            "if(p=0,b=1,c=1,q=1,x0=0,z=3)",   // unknown field
            "if(p=0,b=1,c=1,q=1,q=2,x0=0)",   // duplicate
            "if(p=infinity,b=1,c=1,q=1,x0=0)",// only `inf` is recognized
            "if(p=0,b=1,c=1,q=1,x0=0",        // missing paren
            "if p=0,b=1,c=1,q=1,x0=0)",       // missing paren
            "if(p=0;b=1;c=1;q=1;x0=0)",       // wrong separator
            "(p=0,b=1,c=1,q=1,x0=0)",         // missing name
        ];
        for s in bad {
            let r: Result<IfParams> = s.parse();
            assert!(matches!(r, Err(Error::Parse { .. })), "accepted {s}");
        }
        // parses but fails validation
        let r: Result<IfParams> = "if(p=0,b=0,c=1,q=1,x0=0)".parse();
        assert!(matches!(r, Err(Error::InvalidParam { .. })));
    }

    #[test]
    fn g_base_is_shifted_unit_for_finite_p_and_zero_for_inf() {
        let p0 = params(ExtendedP::Finite(0.0), 2.0, 1.0, 3.0, 0.0);
        assert_eq!(p0.g_base(), 1.0);
        let p1 = params(ExtendedP::Finite(1.0), 1.0, 1.0, 2.0, 0.0);
        assert!((p1.g_base() - 0.7071067811865476).abs() < 1e-15);
        let p2 = params(ExtendedP::Infinite, 1.0, 1.0, 2.0, 0.0);
        assert_eq!(p2.g_base(), 0.0);
    }
}
