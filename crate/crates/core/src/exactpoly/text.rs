//! Text form `c0 + c1*x + c2*x^2` with exact rationals `p/q`; unit coefficients are omitted (`x^2`, `-x`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactPoly, Rational};
use crate::error::{Error, Result};

/// Renders a rational as `p` or `p/q`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub(super) fn render(p: &ExactPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = render_rational(&c.abs());
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = n > 0 && c.abs().is_one();
        if !unit {
            out.push_str(&mag);
        }
        let star = if unit { "" } else { "*" };
        match n {
            0 => {}
            1 => out.push_str(&format!("{star}x")),
            _ => out.push_str(&format!("{star}x^{n}")),
        }
    }
    out
}

pub(super) fn parse(input: &str) -> Result<ExactPoly> {
    let err = |reason: String| Error::Parse {
        input: input.to_string(),
        reason,
    };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input".into()));
    }
    // split into signed terms; a sign directly after '^' or '/' is part of the number
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('/') | Some('*')) {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = false;
            } else if prev.is_some() && !matches!(prev, Some('+') | Some('-')) {
                return Err(err("dangling operator".into()));
            }
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(err("trailing operator".into()));
    }
    terms.push((neg, cur));

    let mut acc = ExactPoly::zero();
    for (neg, term) in terms {
        let (coef, power) = parse_term(&term).map_err(|r| err(format!("term {term:?}: {r}")))?;
        let coef = if neg { -coef } else { coef };
        acc = &acc + &ExactPoly::monomial(coef, power);
    }
    Ok(acc)
}

fn parse_term(term: &str) -> std::result::Result<(Rational, usize), String> {
    let Some(xpos) = term.find('x') else {
        return parse_rational(term).map(|c| (c, 0)).map_err(|e| e.to_string());
    };
    let (coef_part, var_part) = term.split_at(xpos);
    let coef = match coef_part.strip_suffix('*') {
        Some(c) => parse_rational(c).map_err(|e| e.to_string())?,
        None if coef_part.is_empty() => Rational::one(),
        None => return Err("expected '*' between coefficient and x".into()),
    };
    let power = match &var_part[1..] {
        "" => 1,
        rest => rest
            .strip_prefix('^')
            .ok_or("expected '^' after x")?
            .parse::<usize>()
            .map_err(|_| "bad exponent".to_string())?,
    };
    Ok((coef, power))
}
