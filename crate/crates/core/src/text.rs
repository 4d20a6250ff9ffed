//! Text and JSON forms of ring elements and polynomials.
//!
//! Terms look like `c*x1^a1*...*xr^ar` and are joined by `+` (or `-`).
//! Variables are `x1, x2, ...`; `x, y, z, w` are accepted as aliases of the
//! first four. A coefficient is either an integer (reduced into the ring, with
//! the coordinate encoding of [`crate::ring`]) or a bracketed coordinate
//! vector such as `[1,3]`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{ChainRing, RingElem};

/// A parsed term: coefficient and `(variable index, exponent)` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTerm {
    pub coeff: RingElem,
    pub vars: Vec<(usize, usize)>,
}

/// JSON polynomial record `{"vars": r, "coeffs": [[[i1,...,ir], c], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub coeffs: Vec<(Vec<usize>, Value)>,
}

pub fn elem_to_json(x: &RingElem) -> Value {
    if x.coords().len() == 1 {
        Value::from(x.coords()[0])
    } else {
        Value::from(x.coords().to_vec())
    }
}

pub fn elem_from_json(v: &Value, ring: &ChainRing) -> Result<RingElem> {
    match v {
        Value::Number(n) => {
            let c = n.as_i64().ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?;
            Ok(int_elem(c, ring))
        }
        Value::Array(a) => {
            let coords: Option<Vec<u64>> = a.iter().map(|x| x.as_u64()).collect();
            let coords = coords.ok_or_else(|| Error::Parse("coordinates must be integers".into()))?;
            ring.from_coords(&coords).map_err(|_| Error::Parse(format!("{v} is not an element of the ring")))
        }
        _ => Err(Error::Parse(format!("bad coefficient {v}"))),
    }
}

fn int_elem(c: i64, ring: &ChainRing) -> RingElem {
    let size = ring.coord_size() as i64;
    let e = ring.from_encoded(c.unsigned_abs() % size as u64);
    if c < 0 {
        ring.neg(&e)
    } else {
        e
    }
}

pub(crate) fn format_coeff(c: &RingElem) -> String {
    c.to_string()
}

/// Renders `c * m1 * m2 ...`, omitting a unit coefficient and empty monomials.
pub(crate) fn format_term(c: &RingElem, ring: &ChainRing, monos: &[String]) -> String {
    let monos: Vec<&String> = monos.iter().filter(|m| !m.is_empty()).collect();
    if monos.is_empty() {
        return format_coeff(c);
    }
    let m = monos.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("*");
    if ring.is_one(c) {
        m
    } else {
        format!("{}*{m}", format_coeff(c))
    }
}

/// Splits on `sep` outside of brackets and parentheses.
pub fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

pub fn var_index(name: &str) -> Result<usize> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "x" => return Ok(0),
        "y" => return Ok(1),
        "z" => return Ok(2),
        "w" => return Ok(3),
        _ => {}
    }
    if let Some(rest) = lower.strip_prefix('x') {
        if let Ok(i) = rest.parse::<usize>() {
            if i >= 1 {
                return Ok(i - 1);
            }
        }
    }
    Err(Error::Parse(format!("unknown variable `{name}`")))
}

pub fn var_name(index: usize, nvars: usize) -> String {
    if nvars == 1 {
        "x".into()
    } else {
        format!("x{}", index + 1)
    }
}

/// Parses a sum of terms.
pub fn parse_terms(text: &str, ring: &ChainRing) -> Result<Vec<ParsedTerm>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // turn a-b into a+-b outside brackets
    let mut prepared = String::new();
    let mut depth = 0;
    for (i, ch) in cleaned.chars().enumerate() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '-' if depth == 0 && i > 0 && !prepared.ends_with('+') && !prepared.ends_with('^') => prepared.push('+'),
            _ => {}
        }
        prepared.push(ch);
    }
    let mut terms = Vec::new();
    for raw in split_top(&prepared, '+') {
        if raw.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let (negative, body) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, raw.as_str()),
        };
        let mut coeff = ring.one();
        let mut vars = Vec::new();
        for factor in split_top(body, '*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{raw}`")));
            }
            let first = factor.chars().next().unwrap();
            if first.is_ascii_digit() {
                let c: i64 = factor.parse().map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                coeff = ring.mul(&coeff, &int_elem(c, ring));
            } else if first == '[' {
                let v: Value =
                    serde_json::from_str(&factor).map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                coeff = ring.mul(&coeff, &elem_from_json(&v, ring)?);
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        (n, e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?)
                    }
                    None => (factor.as_str(), 1),
                };
                vars.push((var_index(name)?, exp));
            }
        }
        if negative {
            coeff = ring.neg(&coeff);
        }
        terms.push(ParsedTerm { coeff, vars });
    }
    Ok(terms)
}
