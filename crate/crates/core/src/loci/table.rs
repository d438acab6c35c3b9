//! Loader for the case table: `key: value` records opened by `id:` lines.

use std::path::Path;

use crate::moebius::Family;

use super::expr::{Expr, ExprError, VARIABLES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

/// The embedded default table.
pub const EMBEDDED: &str = include_str!("../../data/cases.tbl");

/// One row of the signature/dimension tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRow {
    pub id: String,
    pub family: Family,
    pub table: u8,
    pub chars: Option<Expr>,
    pub bind: Vec<(&'static str, Expr)>,
    pub sig: Vec<Expr>,
    pub delta: Expr,
    pub constraints: Vec<Expr>,
    /// 1-based indices into the family's branch list.
    pub recipe: Vec<usize>,
    pub label: String,
    pub layout_ambiguous: bool,
    pub notes: String,
}

impl CaseRow {
    pub fn sig_text(&self) -> String {
        let mut parts: Vec<String> = self.sig.iter().map(|e| e.to_string()).collect();
        parts.push("n, ..., n".into());
        format!("({})", parts.join(", "))
    }

    /// Whether any formula of the row mentions `var`, ignoring bound names.
    pub fn uses(&self, var: &str) -> bool {
        if self.bind.iter().any(|(v, _)| *v == var) {
            return false;
        }
        self.sig.iter().chain(&self.constraints).chain(std::iter::once(&self.delta)).any(|e| e.uses(var))
            || self.bind.iter().any(|(_, e)| e.uses(var))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTable {
    pub rows: Vec<CaseRow>,
}

#[derive(Default)]
struct Draft {
    line: usize,
    id: Option<String>,
    family: Option<Family>,
    table: Option<u8>,
    chars: Option<Expr>,
    bind: Vec<(&'static str, Expr)>,
    sig: Option<Vec<Expr>>,
    delta: Option<Expr>,
    constraints: Vec<Expr>,
    recipe: Option<Vec<usize>>,
    label: String,
    layout_ambiguous: bool,
    notes: String,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> TableError {
    TableError::Parse { line, col, msg: msg.into() }
}

fn expr_at(src: &str, line: usize, col: usize) -> Result<Expr, TableError> {
    let lead = src.len() - src.trim_start().len();
    Expr::parse(src.trim()).map_err(|e| match e {
        ExprError::Parse { col: c, msg } => err(line, col + lead + c - 1, msg),
        other => err(line, col, other.to_string()),
    })
}

/// Splits `value` on `sep`, yielding each piece with its starting column.
fn pieces(value: &str, col: usize, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in value.char_indices() {
        if c == sep {
            out.push((&value[start..i], col + start));
            start = i + 1;
        }
    }
    out.push((&value[start..], col + start));
    out
}

impl Draft {
    fn finish(self) -> Result<CaseRow, TableError> {
        let line = self.line;
        let missing = |k: &str| err(line, 1, format!("record is missing `{k}`"));
        let sig = self.sig.ok_or_else(|| missing("sig"))?;
        let recipe = self.recipe.ok_or_else(|| missing("recipe"))?;
        if let Some(bad) = recipe.iter().find(|&&r| r == 0 || r > sig.len()) {
            return Err(err(line, 1, format!("recipe index {bad} out of range")));
        }
        Ok(CaseRow {
            id: self.id.ok_or_else(|| missing("id"))?,
            family: self.family.ok_or_else(|| missing("family"))?,
            table: self.table.ok_or_else(|| missing("table"))?,
            chars: self.chars,
            bind: self.bind,
            sig,
            delta: self.delta.ok_or_else(|| missing("delta"))?,
            constraints: self.constraints,
            recipe,
            label: self.label,
            layout_ambiguous: self.layout_ambiguous,
            notes: self.notes,
        })
    }
}

impl CaseTable {
    pub fn parse(text: &str) -> Result<CaseTable, TableError> {
        let mut rows: Vec<CaseRow> = Vec::new();
        let mut draft: Option<Draft> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some(colon) = raw.find(':') else {
                return Err(err(line, 1, "expected `key: value`"));
            };
            let key = raw[..colon].trim();
            let value = &raw[colon + 1..];
            let vcol = colon + 2;
            let tcol = vcol + value.len() - value.trim_start().len();
            if key == "id" {
                if let Some(d) = draft.take() {
                    rows.push(d.finish()?);
                }
                let id = value.trim().to_string();
                if id.is_empty() {
                    return Err(err(line, tcol, "empty id"));
                }
                if rows.iter().any(|r| r.id == id) {
                    return Err(err(line, tcol, format!("duplicate id {id}")));
                }
                draft = Some(Draft { line, id: Some(id), ..Draft::default() });
                continue;
            }
            let Some(d) = draft.as_mut() else {
                return Err(err(line, 1, "field before the first `id:`"));
            };
            match key {
                "family" => {
                    let f = value.trim().parse::<Family>().map_err(|e| err(line, tcol, e.to_string()))?;
                    d.family = Some(f);
                }
                "table" => {
                    let t = value.trim().parse::<u8>().ok().filter(|t| *t == 2 || *t == 3);
                    d.table = Some(t.ok_or_else(|| err(line, tcol, "table must be 2 or 3"))?);
                }
                "chars" => d.chars = Some(expr_at(value, line, vcol)?),
                "bind" => {
                    let Some(eq) = value.find('=') else {
                        return Err(err(line, tcol, "expected `name = expr`"));
                    };
                    let name = value[..eq].trim();
                    let var = VARIABLES
                        .iter()
                        .find(|v| **v == name)
                        .ok_or_else(|| err(line, tcol, format!("unknown variable {name:?}")))?;
                    d.bind.push((var, expr_at(&value[eq + 1..], line, vcol + eq + 1)?));
                }
                "sig" => {
                    let sig = pieces(value, vcol, ',')
                        .into_iter()
                        .map(|(s, c)| expr_at(s, line, c))
                        .collect::<Result<Vec<_>, _>>()?;
                    d.sig = Some(sig);
                }
                "delta" => d.delta = Some(expr_at(value, line, vcol)?),
                "constraints" => {
                    for (s, c) in pieces(value, vcol, ';') {
                        if !s.trim().is_empty() {
                            d.constraints.push(expr_at(s, line, c)?);
                        }
                    }
                }
                "recipe" => {
                    let v = value.trim();
                    let recipe = if v == "-" {
                        Vec::new()
                    } else {
                        pieces(value, vcol, ',')
                            .into_iter()
                            .map(|(s, c)| s.trim().parse::<usize>().map_err(|_| err(line, c, "expected a branch index")))
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    d.recipe = Some(recipe);
                }
                "label" => d.label = value.trim().to_string(),
                "layout" => {
                    if value.trim() != "ambiguous" {
                        return Err(err(line, tcol, "layout must be `ambiguous`"));
                    }
                    d.layout_ambiguous = true;
                }
                "notes" => d.notes = value.trim().to_string(),
                other => return Err(err(line, 1, format!("unknown key {other:?}"))),
            }
        }
        if let Some(d) = draft.take() {
            rows.push(d.finish()?);
        }
        Ok(CaseTable { rows })
    }

    pub fn embedded() -> CaseTable {
        CaseTable::parse(EMBEDDED).expect("embedded case table parses")
    }

    pub fn load(path: &Path) -> Result<CaseTable, TableError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TableError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        CaseTable::parse(&text)
    }

    pub fn get(&self, id: &str) -> Option<&CaseRow> {
        self.rows.iter().find(|r| r.id.eq_ignore_ascii_case(id))
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.id.eq_ignore_ascii_case(id))
    }
}
