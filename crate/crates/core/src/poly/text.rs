//! Text syntax for polynomials: `-2048*x^9*y + 22016*x^6*y^3 + z^3`.
//!
//! Coefficients use the Gaussian-rational syntax; a coefficient with both
//! a real and an imaginary part is parenthesized, e.g. `(1/2 - I)*x^2`.
//! Terms print in decreasing graded-lexicographic order, so printing is
//! deterministic and `parse(print(p)) == p`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::multi::{Monomial, MultiPoly};
use super::PolyError;
use crate::numeric::{parse_unsigned_rational, GaussianRational};

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v)?;
        } else {
            write!(f, "{}^{}", v, e)?;
        }
    }
    Ok(())
}

/// Splits a coefficient into a sign and a magnitude that prints without a
/// leading minus, when that is possible.
fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    if (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative()) {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let (neg, mag) = split_sign(c);
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let complex = !mag.re.is_zero() && !mag.im.is_zero();
            if m.is_one() {
                if complex {
                    write!(f, "({})", mag)?;
                } else {
                    write!(f, "{}", mag)?;
                }
                continue;
            }
            if !mag.is_one() {
                if complex {
                    write!(f, "({})*", mag)?;
                } else {
                    write!(f, "{}*", mag)?;
                }
            }
            write_monomial(f, self.vars(), m)?;
        }
        Ok(())
    }
}

fn is_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    s != "I" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Top-level split at `+`/`-` (outside parentheses, not right after `^`,
/// `*`, `/` or `(`).
fn split_terms(s: &str) -> Result<Vec<(bool, String)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for c in s.chars().filter(|c| !c.is_whitespace()) {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced `)`".into());
                }
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                let glued = matches!(cur.chars().last(), Some('^') | Some('*') | Some('/'));
                if glued {
                    return Err(format!("unexpected `{}`", c));
                }
                if cur.is_empty() {
                    if c == '-' {
                        negative = !negative;
                    }
                } else {
                    out.push((negative, std::mem::take(&mut cur)));
                    negative = c == '-';
                }
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced `(`".into());
    }
    if cur.is_empty() {
        return Err("dangling sign or empty input".into());
    }
    out.push((negative, cur));
    Ok(out)
}

/// Splits a term at top-level `*`.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

enum Factor {
    Number(GaussianRational),
    Power(String, u32),
}

fn parse_factor(s: &str) -> Result<Factor, String> {
    if s.is_empty() {
        return Err("empty factor".into());
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return inner
            .parse::<GaussianRational>()
            .map(Factor::Number)
            .map_err(|e| e.to_string());
    }
    if s == "I" {
        return Ok(Factor::Number(GaussianRational::i()));
    }
    if s.as_bytes()[0].is_ascii_digit() {
        return parse_unsigned_rational(s)
            .map(|q| Factor::Number(GaussianRational::from_rational(q)))
            .map_err(|e| e.to_string());
    }
    let (name, exp) = match s.split_once('^') {
        Some((n, e)) => {
            let e: u32 = e.parse().map_err(|_| format!("bad exponent in `{}`", s))?;
            (n, e)
        }
        None => (s, 1),
    };
    if !is_var_name(name) {
        return Err(format!("bad variable name `{}`", name));
    }
    Ok(Factor::Power(name.to_string(), exp))
}

fn parse_terms(s: &str) -> Result<Vec<(GaussianRational, Vec<(String, u32)>)>, PolyError> {
    let err = |reason: String| PolyError::Parse {
        input: s.to_string(),
        reason,
    };
    let mut out = Vec::new();
    for (negative, term) in split_terms(s).map_err(err)? {
        let mut coeff = GaussianRational::one();
        let mut powers = Vec::new();
        for f in split_factors(&term) {
            match parse_factor(f).map_err(err)? {
                Factor::Number(c) => coeff = &coeff * &c,
                Factor::Power(v, e) => powers.push((v, e)),
            }
        }
        if negative {
            coeff = -coeff;
        }
        out.push((coeff, powers));
    }
    Ok(out)
}

impl MultiPoly {
    /// Parses a polynomial, taking its variables in sorted order.
    pub fn parse(s: &str) -> Result<MultiPoly, PolyError> {
        let terms = parse_terms(s)?;
        let mut vars: Vec<String> = terms
            .iter()
            .flat_map(|(_, p)| p.iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort();
        vars.dedup();
        Self::build(s, &vars, terms)
    }

    /// Parses a polynomial over a fixed variable list.
    pub fn parse_with_vars<S: AsRef<str>>(s: &str, vars: &[S]) -> Result<MultiPoly, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Self::build(s, &vars, parse_terms(s)?)
    }

    fn build(
        s: &str,
        vars: &[String],
        terms: Vec<(GaussianRational, Vec<(String, u32)>)>,
    ) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::zero(vars);
        for (c, powers) in terms {
            let mut m = Monomial::one(vars.len());
            for (v, e) in powers {
                let idx = vars
                    .iter()
                    .position(|w| *w == v)
                    .ok_or_else(|| PolyError::Parse {
                        input: s.to_string(),
                        reason: format!("variable `{}` not in the variable list", v),
                    })?;
                m.0[idx] += e;
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }
}

/// Convenience for tests and catalog data: parse or panic.
pub fn poly(s: &str, vars: &[&str]) -> MultiPoly {
    MultiPoly::parse_with_vars(s, vars).unwrap_or_else(|e| panic!("{}", e))
}
