//! Expression language for dimension formulas and constraints.
//!
//! Grammar, loosest binding first: `||`, `&&`, comparisons, `+ -`, `* /`,
//! unary `-`, `^` (right associative). Atoms are integers, variables,
//! parenthesized expressions and calls `gcd(a, b)`, `divides(a, b)`, `tame(a)`.
//! Arithmetic is exact over the rationals; integer results are demanded only
//! where a caller asks for one.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("variable {0} is not bound")]
    Unbound(String),
    #[error("{num}/{den} is not an integer")]
    NonIntegral { num: i128, den: i128 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("type error: {0}")]
    Type(String),
}

pub const VARIABLES: [&str; 10] = ["g", "n", "m", "p", "t", "q", "f", "alpha", "beta", "delta"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Num(Ratio<i128>),
    Bool(bool),
}

impl Value {
    pub fn num(self) -> Result<Ratio<i128>, ExprError> {
        match self {
            Value::Num(v) => Ok(v),
            Value::Bool(_) => Err(ExprError::Type("expected a number".into())),
        }
    }

    pub fn int(self) -> Result<i128, ExprError> {
        let v = self.num()?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(ExprError::NonIntegral { num: *v.numer(), den: *v.denom() })
        }
    }

    pub fn bool(self) -> Result<bool, ExprError> {
        match self {
            Value::Bool(b) => Ok(b),
            Value::Num(_) => Err(ExprError::Type("expected a condition".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Gcd,
    Divides,
    Tame,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i128),
    Var(&'static str),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Variable bindings.
pub type Env = BTreeMap<&'static str, i128>;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.or()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, env: &Env) -> Result<Value, ExprError> {
        let num = |v: Option<Ratio<i128>>| v.map(Value::Num).ok_or(ExprError::Overflow);
        match self {
            Expr::Int(v) => Ok(Value::Num(Ratio::from_integer(*v))),
            Expr::Var(v) => env
                .get(v)
                .map(|x| Value::Num(Ratio::from_integer(*x)))
                .ok_or_else(|| ExprError::Unbound((*v).into())),
            Expr::Neg(e) => num(Ratio::zero().checked_sub(&e.eval(env)?.num()?)),
            Expr::Bin(op, a, b) => {
                if matches!(op, BinOp::And | BinOp::Or) {
                    let l = a.eval(env)?.bool()?;
                    return match (op, l) {
                        (BinOp::And, false) => Ok(Value::Bool(false)),
                        (BinOp::Or, true) => Ok(Value::Bool(true)),
                        _ => Ok(Value::Bool(b.eval(env)?.bool()?)),
                    };
                }
                let (l, r) = (a.eval(env)?.num()?, b.eval(env)?.num()?);
                match op {
                    BinOp::Add => num(l.checked_add(&r)),
                    BinOp::Sub => num(l.checked_sub(&r)),
                    BinOp::Mul => num(l.checked_mul(&r)),
                    BinOp::Div => {
                        if r.is_zero() {
                            Err(ExprError::DivisionByZero)
                        } else {
                            num(l.checked_div(&r))
                        }
                    }
                    BinOp::Pow => {
                        let e = Value::Num(r).int()?;
                        let e = u32::try_from(e).map_err(|_| ExprError::Type("negative exponent".into()))?;
                        let mut acc = Ratio::one();
                        for _ in 0..e {
                            acc = acc.checked_mul(&l).ok_or(ExprError::Overflow)?;
                        }
                        Ok(Value::Num(acc))
                    }
                    BinOp::Eq => Ok(Value::Bool(l == r)),
                    BinOp::Ne => Ok(Value::Bool(l != r)),
                    BinOp::Lt => Ok(Value::Bool(l < r)),
                    BinOp::Le => Ok(Value::Bool(l <= r)),
                    BinOp::Gt => Ok(Value::Bool(l > r)),
                    BinOp::Ge => Ok(Value::Bool(l >= r)),
                    BinOp::And | BinOp::Or => unreachable!(),
                }
            }
            Expr::Call(f, args) => {
                let v: Vec<i128> = args.iter().map(|a| a.eval(env)?.int()).collect::<Result<_, _>>()?;
                match f {
                    Func::Gcd => Ok(Value::Num(Ratio::from_integer(gcd(v[0], v[1])))),
                    Func::Divides => Ok(Value::Bool(if v[0] == 0 { v[1] == 0 } else { v[1] % v[0] == 0 })),
                    Func::Tame => {
                        let p = env.get("p").copied().ok_or_else(|| ExprError::Unbound("p".into()))?;
                        Ok(Value::Bool(p == 0 || v[0] % p != 0))
                    }
                }
            }
        }
    }

    pub fn eval_int(&self, env: &Env) -> Result<i128, ExprError> {
        self.eval(env)?.int()
    }

    pub fn eval_bool(&self, env: &Env) -> Result<bool, ExprError> {
        self.eval(env)?.bool()
    }

    /// Whether the expression mentions `var`.
    pub fn uses(&self, var: &str) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Neg(e) => e.uses(var),
            Expr::Bin(_, a, b) => a.uses(var) || b.uses(var),
            Expr::Call(_, args) => args.iter().any(|a| a.uses(var)),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(op, _, _) => match op {
                BinOp::Or => 1,
                BinOp::And => 2,
                BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 3,
                BinOp::Add | BinOp::Sub => 4,
                BinOp::Mul | BinOp::Div => 5,
                BinOp::Pow => 7,
            },
            Expr::Neg(_) => 6,
            _ => 8,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                wrap(f, e, 7)
            }
            Expr::Bin(op, a, b) => {
                let p = self.prec();
                let (lmin, rmin) = if *op == BinOp::Pow { (p + 1, p) } else { (p, p + 1) };
                wrap(f, a, lmin)?;
                if matches!(op, BinOp::Mul | BinOp::Div | BinOp::Pow) {
                    write!(f, "{}", op.symbol())?;
                } else {
                    write!(f, " {} ", op.symbol())?;
                }
                wrap(f, b, rmin)
            }
            Expr::Call(func, args) => {
                let name = match func {
                    Func::Gcd => "gcd",
                    Func::Divides => "divides",
                    Func::Tame => "tame",
                };
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ExprError {
        ExprError::Parse { col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.and()?;
        while self.eat("||") {
            e = Expr::Bin(BinOp::Or, Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.cmp()?;
        while self.eat("&&") {
            e = Expr::Bin(BinOp::And, Box::new(e), Box::new(self.cmp()?));
        }
        Ok(e)
    }

    fn cmp(&mut self) -> Result<Expr, ExprError> {
        let e = self.sum()?;
        for (tok, op) in [
            ("==", BinOp::Eq),
            ("!=", BinOp::Ne),
            ("<=", BinOp::Le),
            (">=", BinOp::Ge),
            ("<", BinOp::Lt),
            (">", BinOp::Gt),
        ] {
            if self.eat(tok) {
                return Ok(Expr::Bin(op, Box::new(e), Box::new(self.sum()?)));
            }
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.prod()?;
        loop {
            let op = if self.eat("+") {
                BinOp::Add
            } else if self.eat("-") {
                BinOp::Sub
            } else {
                return Ok(e);
            };
            e = Expr::Bin(op, Box::new(e), Box::new(self.prod()?));
        }
    }

    fn prod(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.unary()?;
        loop {
            let op = if self.eat("*") {
                BinOp::Mul
            } else if self.eat("/") {
                BinOp::Div
            } else {
                return Ok(e);
            };
            e = Expr::Bin(op, Box::new(e), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat("^") {
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Err(self.error("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.or()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        if c.is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return text.parse().map(Expr::Int).map_err(|_| ExprError::Parse { col: start + 1, msg: "integer too large".into() });
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let func = match name {
                "gcd" => Some((Func::Gcd, 2)),
                "divides" => Some((Func::Divides, 2)),
                "tame" => Some((Func::Tame, 1)),
                _ => None,
            };
            if let Some((func, arity)) = func {
                if !self.eat("(") {
                    return Err(self.error("expected '(' after function name"));
                }
                let mut args = vec![self.or()?];
                while self.eat(",") {
                    args.push(self.or()?);
                }
                if !self.eat(")") {
                    return Err(self.error("expected ')'"));
                }
                if args.len() != arity {
                    return Err(ExprError::Parse { col: start + 1, msg: format!("{name} takes {arity} argument(s)") });
                }
                return Ok(Expr::Call(func, args));
            }
            return VARIABLES
                .iter()
                .find(|v| **v == name)
                .map(|v| Expr::Var(v))
                .ok_or_else(|| ExprError::Parse { col: start + 1, msg: format!("unknown variable {name:?}") });
        }
        Err(self.error(&format!("unexpected character {:?}", c as char)))
    }
}
