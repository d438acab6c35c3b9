//! Canonical text syntax for elements and field descriptors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Elem, Field, FieldError};

fn parse_err(input: &str, reason: impl Into<String>) -> FieldError {
    FieldError::Parse { input: input.to_string(), reason: reason.into() }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One term `c·u^k` for a nonzero base coefficient.
fn fmt_term(c: &Elem, k: usize) -> String {
    let (neg, mag, integral) = match c {
        Elem::Rat(r) => (r.is_negative(), fmt_rat(&r.abs()), r.is_integer()),
        Elem::Res(r) => (false, r.to_string(), true),
        _ => unreachable!("base coefficients are scalars"),
    };
    let sign = if neg { "-" } else { "" };
    if k == 0 {
        return format!("{sign}{mag}");
    }
    let var = if k == 1 { "u".to_string() } else { format!("u^{k}") };
    if mag == "1" {
        format!("{sign}{var}")
    } else if integral {
        format!("{sign}{mag}{var}")
    } else {
        format!("{sign}{mag}*{var}")
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

fn base_is_zero(c: &Elem) -> bool {
    match c {
        Elem::Rat(r) => r.is_zero(),
        Elem::Res(r) => *r == 0,
        _ => unreachable!("base coefficients are scalars"),
    }
}

/// Elements render in increasing powers of `u`, e.g. `3+2u`.
pub(super) fn format_elem(field: &Field, a: &Elem) -> String {
    match a {
        Elem::Rat(r) => fmt_rat(r),
        Elem::Res(r) => r.to_string(),
        _ => {
            let coords = field.coords(a);
            let terms =
                coords.iter().enumerate().filter(|(_, c)| !base_is_zero(c)).map(|(k, c)| fmt_term(c, k)).collect();
            join_terms(terms)
        }
    }
}

/// Polynomials over the base render in decreasing powers of `u`, e.g. `u^2+1`.
pub(super) fn format_base_poly(_base: &Field, coeffs: &[Elem]) -> String {
    let terms = coeffs.iter().enumerate().rev().filter(|(_, c)| !base_is_zero(c)).map(|(k, c)| fmt_term(c, k)).collect();
    join_terms(terms)
}

/// Parses a polynomial in `u` with rational coefficients into a dense coefficient list.
fn parse_u_poly(input: &str) -> Result<Vec<BigRational>, FieldError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).map(str::to_string).unwrap_or(s);
    if s.is_empty() {
        return Err(parse_err(input, "empty"));
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut out: Vec<BigRational> = Vec::new();
    let read_int = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| s[start..*pos].parse().unwrap())
    };
    let mut first = true;
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                negative = true;
                pos += 1
            }
            _ if first => {}
            other => return Err(parse_err(input, format!("unexpected {:?} at {}", other as char, pos))),
        }
        first = false;
        let mut coef: Option<BigRational> = None;
        if let Some(n) = read_int(&mut pos) {
            let mut c = BigRational::from_integer(n);
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                let d = read_int(&mut pos).ok_or_else(|| parse_err(input, "missing denominator"))?;
                if d.is_zero() {
                    return Err(parse_err(input, "zero denominator"));
                }
                c /= BigRational::from_integer(d);
            }
            coef = Some(c);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'u' {
                    return Err(parse_err(input, "expected u after *"));
                }
            }
        }
        let mut power = 0usize;
        if pos < bytes.len() && bytes[pos] == b'u' {
            pos += 1;
            power = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let e = read_int(&mut pos).ok_or_else(|| parse_err(input, "missing exponent"))?;
                power = usize::try_from(e).map_err(|_| parse_err(input, "exponent too large"))?;
            }
        } else if coef.is_none() {
            return Err(parse_err(input, format!("expected a term at {pos}")));
        }
        let mut c = coef.unwrap_or_else(BigRational::one);
        if negative {
            c = -c;
        }
        if out.len() <= power {
            out.resize(power + 1, BigRational::zero());
        }
        out[power] += c;
    }
    Ok(out)
}

pub(super) fn parse_elem(field: &Field, input: &str) -> Result<Elem, FieldError> {
    let coeffs = parse_u_poly(input)?;
    if coeffs.len() > 1 && !field.is_extension() && coeffs[1..].iter().any(|c| !c.is_zero()) {
        return Err(parse_err(input, format!("{field} has no generator u")));
    }
    let base = field.base();
    let coords: Vec<Elem> = coeffs.iter().map(|c| base.from_rational(c)).collect::<Result<_, _>>()?;
    Ok(field.from_coords(&coords))
}

/// Parses a field descriptor such as `Q`, `Q(i)`, `Q(sqrt(-3))`, `Q(zeta5)`,
/// `GF(7)`, `GF(3^2)`, `Q[u]/(u^2+1)` or `GF(3)[u]/(u^2+1)`.
pub fn parse_field_spec(input: &str) -> Result<Field, FieldError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((head, modulus)) = s.split_once("[u]/") {
        let base = parse_field_spec(head)?;
        if base.is_extension() {
            return Err(FieldError::NestedExtension);
        }
        let coeffs = parse_u_poly(modulus)?;
        let coords: Vec<Elem> = coeffs.iter().map(|c| base.from_rational(c)).collect::<Result<_, _>>()?;
        return Field::extension(&base, &coords);
    }
    match s.as_str() {
        "Q" | "QQ" => return Ok(Field::rationals()),
        "Q(i)" => return Field::cyclotomic(4),
        "Q(sqrt(-3))" | "Q(sqrt-3)" | "Q(√-3)" | "Q(√−3)" => {
            let q = Field::rationals();
            return Field::extension(&q, &[q.from_i64(3), q.zero(), q.one()]);
        }
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("Q(zeta").and_then(|t| t.strip_suffix(')')) {
        let m: u64 = rest.trim_start_matches('_').parse().map_err(|_| parse_err(input, "bad zeta index"))?;
        return Field::cyclotomic(m);
    }
    if let Some(rest) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
        let (p, f) = match rest.split_once('^') {
            Some((p, f)) => (p, f),
            None => (rest, "1"),
        };
        let p: u64 = p.parse().map_err(|_| parse_err(input, "bad characteristic"))?;
        let f: u32 = f.parse().map_err(|_| parse_err(input, "bad degree"))?;
        return Field::gf(p, f);
    }
    Err(parse_err(input, "unknown field"))
}
