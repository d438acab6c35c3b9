//! Rendering of polynomials and forms: `c_d*x^d + … + c_0` and a LaTeX variant.

use std::fmt;

use crate::field::{Elem, Field};

use super::{BinaryForm, Poly};

enum Coef {
    Atom { negative: bool, magnitude: String },
    Compound(String),
}

fn classify(field: &Field, c: &Elem) -> Coef {
    let s = field.format(c);
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s.clone()),
    };
    if body.contains(['+', '-']) {
        Coef::Compound(s)
    } else {
        Coef::Atom { negative, magnitude: body }
    }
}

/// Joins `(coefficient, monomial)` terms, highest first; an empty monomial marks the constant.
fn render(field: &Field, terms: &[(Elem, String)], latex: bool) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let (negative, body) = match classify(field, c) {
            Coef::Atom { negative, magnitude } => {
                let mag = if latex { latex_frac(&magnitude) } else { magnitude.clone() };
                let body = if mono.is_empty() {
                    mag
                } else if magnitude == "1" {
                    mono.clone()
                } else if latex {
                    format!("{mag} {mono}")
                } else {
                    format!("{mag}*{mono}")
                };
                (negative, body)
            }
            Coef::Compound(s) => {
                let s = if latex { format!("\\left({s}\\right)") } else { format!("({s})") };
                let body = if mono.is_empty() {
                    s
                } else if latex {
                    format!("{s} {mono}")
                } else {
                    format!("{s}*{mono}")
                };
                (false, body)
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn latex_frac(s: &str) -> String {
    match s.split_once('/') {
        Some((a, b)) => format!("\\frac{{{a}}}{{{b}}}"),
        None => s.to_string(),
    }
}

fn power(var: &str, k: usize, latex: bool) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ if latex => format!("{var}^{{{k}}}"),
        _ => format!("{var}^{k}"),
    }
}

impl Poly {
    fn terms(&self, var: &str, latex: bool) -> Vec<(Elem, String)> {
        let f = self.field();
        self.coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| (c.clone(), power(var, k, latex)))
            .collect()
    }

    /// Canonical text in the variable `var`.
    pub fn to_text(&self, var: &str) -> String {
        render(self.field(), &self.terms(var, false), false)
    }

    pub fn to_latex(&self, var: &str) -> String {
        render(self.field(), &self.terms(var, true), true)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        let d = self.degree();
        let terms: Vec<(Elem, String)> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| {
                let parts: Vec<String> =
                    [power("X", i, false), power("Z", d - i, false)].into_iter().filter(|s| !s.is_empty()).collect();
                (c.clone(), parts.join("*"))
            })
            .collect();
        f.write_str(&render(field, &terms, false))
    }
}
