//! S-expression input for cycles, formal DGA elements, bar elements and
//! formal sums. Columns in errors are 0-based character offsets.
//!
//! ```text
//! (d (u 3 2))                      differential of u(3, 2)
//! (* (pt 2) (rho 2 (poly "t+2")))  product of cycles
//! (shuffle (w (pt 2)) (w (pt 3)))  bar words and their shuffle
//! (bar (w (rho 2 x)) (w -1 (rho 1 x) (pt x)))
//! (locus (params a b) (slots a (div (sub a 3) b) b))
//! (formal D2 (j 2 3) :d (* (pt 2) (pt 3)))
//! (+ (sym 2) (sym -1))             formal sum in Q[F^×]
//! ```
//!
//! `x` is an alias for the generic element `t`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::bar::{self, BarElem};
use crate::cycle::{param_var, render_sum, CycleSum};
use crate::dga::formal::FormalElem;
use crate::dga::{ConcreteDga, Dga, FormalDga, Mono, PolylogAlgebra};
use crate::error::{Error, Result};
use crate::expr::parse_ratfunc_at;
use crate::goncharov::{self, FormalSum};
use crate::poly::{VAR_S, VAR_T};
use crate::ratfunc::RatFunc;
use crate::rational::{parse_rational, Rational};
use crate::registry::MultBasisRegistry;

#[derive(Clone, Debug, PartialEq)]
pub enum Sexp {
    Atom(String, usize),
    Str(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    pub fn col(&self) -> usize {
        match self {
            Sexp::Atom(_, c) | Sexp::Str(_, c) | Sexp::List(_, c) => *c,
        }
    }

    fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            _ => None,
        }
    }
}

fn perr<T>(col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::ParseError {
        col,
        msg: msg.into(),
    })
}

struct Reader {
    chars: Vec<char>,
    pos: usize,
}

impl Reader {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() {
            match self.chars[self.pos] {
                c if c.is_whitespace() => self.pos += 1,
                ';' => {
                    while self.pos < self.chars.len() && self.chars[self.pos] != '\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            None => perr(self.pos, "unexpected end of input"),
            Some(')') => perr(self.pos, "unexpected ')'"),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.get(self.pos) {
                        None => return perr(self.pos, "unclosed '('"),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, start));
                        }
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some('"') => {
                self.pos += 1;
                let mut s = String::new();
                loop {
                    match self.chars.get(self.pos) {
                        None => return perr(self.pos, "unterminated string"),
                        Some('"') => {
                            self.pos += 1;
                            return Ok(Sexp::Str(s, start));
                        }
                        Some(&c) => {
                            s.push(c);
                            self.pos += 1;
                        }
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                        break;
                    }
                    s.push(c);
                    self.pos += 1;
                }
                Ok(Sexp::Atom(s, start))
            }
        }
    }
}

/// Parse exactly one s-expression.
pub fn parse(src: &str) -> Result<Sexp> {
    let mut r = Reader {
        chars: src.chars().collect(),
        pos: 0,
    };
    let e = r.read()?;
    r.skip_ws();
    if r.pos < r.chars.len() {
        return perr(r.pos, "trailing input");
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Concrete,
    Formal,
}

#[derive(Clone, Debug)]
pub enum Value {
    Field(RatFunc),
    Cycle(CycleSum),
    Formal(FormalElem),
    Bar(BarElem<crate::cycle::Locus>),
    FormalBar(BarElem<Mono>),
    Sum(FormalSum),
    Text(String),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Field(_) => "field element",
            Value::Cycle(_) => "cycle",
            Value::Formal(_) => "formal element",
            Value::Bar(_) | Value::FormalBar(_) => "bar element",
            Value::Sum(_) => "formal sum",
            Value::Text(_) => "text",
        }
    }
}

pub struct Evaluator {
    pub mode: Mode,
    pub conc: ConcreteDga,
    pub formal: FormalDga,
    env: BTreeMap<String, Value>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(Mode::Concrete)
    }
}

impl Evaluator {
    pub fn new(mode: Mode) -> Self {
        Evaluator {
            mode,
            conc: ConcreteDga::new(MultBasisRegistry::new()),
            formal: FormalDga::new(MultBasisRegistry::new()),
            env: BTreeMap::new(),
        }
    }

    pub fn eval_str(&mut self, src: &str) -> Result<Value> {
        let e = parse(src)?;
        self.eval(&e)
    }

    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Field(x) => x.to_string(),
            Value::Cycle(c) => render_sum(c),
            Value::Formal(f) => self.formal.render(f),
            Value::Bar(b) => bar::render(&self.conc, b),
            Value::FormalBar(b) => bar::render(&self.formal, b),
            Value::Sum(s) => s.to_string(),
            Value::Text(t) => t.clone(),
        }
    }

    pub fn eval(&mut self, e: &Sexp) -> Result<Value> {
        match e {
            Sexp::Str(s, col) => Ok(Value::Field(parse_ratfunc_at(s, col + 1)?)),
            Sexp::Atom(a, col) => self.eval_atom(a, *col),
            Sexp::List(items, col) => {
                let Some(head) = items.first() else {
                    return perr(*col, "empty form");
                };
                let Some(op) = head.atom() else {
                    return perr(head.col(), "expected an operator");
                };
                self.eval_form(op, &items[1..], *col)
            }
        }
    }

    fn eval_atom(&self, a: &str, col: usize) -> Result<Value> {
        if let Some(v) = self.env.get(a) {
            return Ok(v.clone());
        }
        if let Some(q) = parse_rational(a) {
            return Ok(Value::Field(RatFunc::constant(q)));
        }
        match a {
            "t" | "x" => Ok(Value::Field(RatFunc::var(VAR_T))),
            "s" => Ok(Value::Field(RatFunc::var(VAR_S))),
            _ => perr(col, format!("unknown symbol {a}")),
        }
    }

    fn field(&mut self, e: &Sexp) -> Result<RatFunc> {
        match self.eval(e)? {
            Value::Field(x) => Ok(x),
            v => perr(e.col(), format!("expected a field element, got a {}", v.kind())),
        }
    }

    fn nonzero(&mut self, e: &Sexp) -> Result<RatFunc> {
        let x = self.field(e)?;
        if x.is_zero() {
            return perr(e.col(), "expected a nonzero field element");
        }
        Ok(x)
    }

    fn constant(&mut self, e: &Sexp) -> Result<Rational> {
        match self.field(e)?.constant_value() {
            Some(q) => Ok(q),
            None => perr(e.col(), "expected a rational constant"),
        }
    }

    fn small(&mut self, e: &Sexp) -> Result<usize> {
        let q = self.constant(e)?;
        match (q.is_integer(), usize::try_from(q.to_integer())) {
            (true, Ok(n)) if n <= 64 => Ok(n),
            _ => perr(e.col(), "expected a small non-negative integer"),
        }
    }

    fn arity(args: &[Sexp], n: usize, col: usize, op: &str) -> Result<()> {
        if args.len() != n {
            return perr(col, format!("{op} takes {n} argument(s), got {}", args.len()));
        }
        Ok(())
    }

    /// Evaluate a generator in the current mode.
    fn generator(&mut self, op: &str, args: &[Sexp], col: usize) -> Result<Value> {
        let formal = self.mode == Mode::Formal;
        let v = match op {
            "pt" => {
                if args.is_empty() {
                    return perr(col, "pt needs at least one slot");
                }
                let xs = args.iter().map(|a| self.nonzero(a)).collect::<Result<Vec<_>>>()?;
                if xs.len() == 1 {
                    if formal {
                        Value::Formal(self.formal.point(&xs[0])?)
                    } else {
                        Value::Cycle(self.conc.point(&xs[0])?)
                    }
                } else if formal {
                    let mut acc = FormalElem::single(Mono::default());
                    for x in &xs {
                        acc = self.formal.mul(&acc, &self.formal.point(x)?)?;
                    }
                    Value::Formal(acc)
                } else {
                    Value::Cycle(self.conc.engine().locus(&xs)?)
                }
            }
            "rho" => {
                Self::arity(args, 2, col, op)?;
                let k = self.small(&args[0])?;
                let x = self.nonzero(&args[1])?;
                if formal {
                    Value::Formal(self.formal.rho(k, &x)?)
                } else {
                    Value::Cycle(self.conc.rho(k, &x)?)
                }
            }
            "r" => {
                Self::arity(args, 1, col, op)?;
                let x = self.nonzero(&args[0])?;
                if formal {
                    Value::Formal(self.formal.r(&x)?)
                } else {
                    Value::Cycle(self.conc.r(&x)?)
                }
            }
            "xz" => {
                Self::arity(args, 1, col, op)?;
                let x = self.nonzero(&args[0])?;
                if formal {
                    Value::Formal(self.formal.expansion(&x)?)
                } else {
                    Value::Cycle(self.conc.expansion(&x)?)
                }
            }
            "ptilde2" => {
                Self::arity(args, 1, col, op)?;
                let x = self.nonzero(&args[0])?;
                if formal {
                    Value::Formal(self.formal.tilde_p2(&x)?)
                } else {
                    Value::Cycle(self.conc.tilde_p2(&x)?)
                }
            }
            "P" => {
                Self::arity(args, 2, col, op)?;
                let n = self.small(&args[0])?;
                let x = self.nonzero(&args[1])?;
                if formal {
                    Value::Formal(self.formal.big_p(n, &x)?)
                } else {
                    Value::Cycle(self.conc.big_p(n, &x)?)
                }
            }
            "u" => {
                Self::arity(args, 2, col, op)?;
                if formal {
                    return perr(col, "u has no formal counterpart");
                }
                let a = self.nonzero(&args[0])?;
                let b = self.nonzero(&args[1])?;
                Value::Cycle(self.conc.u(&a, &b)?)
            }
            _ => unreachable!("dispatched by eval_form"),
        };
        Ok(v)
    }

    fn eval_form(&mut self, op: &str, args: &[Sexp], col: usize) -> Result<Value> {
        match op {
            "pt" | "rho" | "r" | "xz" | "ptilde2" | "P" | "u" => self.generator(op, args, col),
            "poly" => {
                Self::arity(args, 1, col, op)?;
                match &args[0] {
                    Sexp::Str(s, c) => Ok(Value::Field(parse_ratfunc_at(s, c + 1)?)),
                    other => perr(other.col(), "poly takes a quoted expression"),
                }
            }
            "+" => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>>>()?;
                let mut it = vals.into_iter();
                let Some(mut acc) = it.next() else {
                    return Ok(Value::Field(RatFunc::zero()));
                };
                for v in it {
                    acc = add(acc, v, col)?;
                }
                Ok(acc)
            }
            "-" => match args {
                [a] => {
                    let v = self.eval(a)?;
                    scale(v, &-Rational::one(), col)
                }
                [a, b] => {
                    let (x, y) = (self.eval(a)?, self.eval(b)?);
                    add(x, scale(y, &-Rational::one(), col)?, col)
                }
                _ => perr(col, "- takes one or two arguments"),
            },
            "*" => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>>>()?;
                let mut it = vals.into_iter();
                let Some(mut acc) = it.next() else {
                    return Ok(Value::Field(RatFunc::one()));
                };
                for v in it {
                    acc = self.mul(acc, v, col)?;
                }
                Ok(acc)
            }
            "/" => {
                Self::arity(args, 2, col, op)?;
                let a = self.field(&args[0])?;
                let b = self.field(&args[1])?;
                a.div(&b).map(Value::Field).ok_or_else(|| Error::ParseError {
                    col: args[1].col(),
                    msg: "division by zero".into(),
                })
            }
            "^" => {
                Self::arity(args, 2, col, op)?;
                let a = self.field(&args[0])?;
                let e = self.constant(&args[1])?;
                let e = if e.is_integer() { i64::try_from(e.to_integer()).ok() } else { None };
                match e.and_then(|e| a.pow(e)) {
                    Some(p) => Ok(Value::Field(p)),
                    None => perr(args[1].col(), "bad exponent"),
                }
            }
            "d" => {
                Self::arity(args, 1, col, op)?;
                match self.eval(&args[0])? {
                    Value::Cycle(c) => Ok(Value::Cycle(self.conc.d(&c)?)),
                    Value::Formal(f) => Ok(Value::Formal(self.formal.d(&f)?)),
                    Value::Bar(b) => Ok(Value::Bar(bar::d_total(&self.conc, &b)?)),
                    Value::FormalBar(b) => Ok(Value::FormalBar(bar::d_total(&self.formal, &b)?)),
                    v => perr(args[0].col(), format!("no differential on a {}", v.kind())),
                }
            }
            "specialize" => {
                Self::arity(args, 2, col, op)?;
                let v = self.eval(&args[0])?;
                let p = self.constant(&args[1])?;
                match v {
                    Value::Cycle(c) => Ok(Value::Cycle(self.conc.engine().specialize(&c, VAR_T, &p)?)),
                    Value::Field(x) => Ok(Value::Field(
                        x.subs_const(VAR_T, &p)
                            .ok_or_else(|| Error::PoleAtPoint(crate::rational::fmt_rational(&p)))?,
                    )),
                    v => perr(args[0].col(), format!("cannot specialize a {}", v.kind())),
                }
            }
            "locus" => self.locus(args, col),
            "formal" => self.declare(args, col),
            "let" => {
                let [Sexp::List(binds, _), body] = args else {
                    return perr(col, "let takes a binding list and a body");
                };
                let saved = self.env.clone();
                for b in binds {
                    let Sexp::List(pair, c) = b else {
                        return perr(b.col(), "expected (name value)");
                    };
                    let [name, val] = pair.as_slice() else {
                        return perr(*c, "expected (name value)");
                    };
                    let Some(name) = name.atom() else {
                        return perr(name.col(), "expected a name");
                    };
                    let v = self.eval(val)?;
                    self.env.insert(name.to_string(), v);
                }
                let out = self.eval(body);
                self.env = saved;
                out
            }
            "w" => self.word(args, col),
            "bar" => {
                let mut acc: Option<Value> = None;
                for a in args {
                    let v = self.eval(a)?;
                    if !matches!(v, Value::Bar(_) | Value::FormalBar(_)) {
                        return perr(a.col(), "bar takes words");
                    }
                    acc = Some(match acc {
                        None => v,
                        Some(x) => add(x, v, col)?,
                    });
                }
                match acc {
                    Some(v) => Ok(v),
                    None => Ok(self.empty_bar()),
                }
            }
            "shuffle" => {
                Self::arity(args, 2, col, op)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Value::Bar(a), Value::Bar(b)) => Ok(Value::Bar(bar::shuffle(&self.conc, &a, &b))),
                    (Value::FormalBar(a), Value::FormalBar(b)) => {
                        Ok(Value::FormalBar(bar::shuffle(&self.formal, &a, &b)))
                    }
                    _ => perr(col, "shuffle takes two bar elements of the same mode"),
                }
            }
            "polylog" => {
                Self::arity(args, 2, col, op)?;
                let n = self.small(&args[0])?;
                let x = self.nonzero(&args[1])?;
                Ok(match self.mode {
                    Mode::Concrete => Value::Bar(bar::motivic_polylog(&self.conc, n, &x)?),
                    Mode::Formal => Value::FormalBar(bar::motivic_polylog(&self.formal, n, &x)?),
                })
            }
            "sym" => {
                Self::arity(args, 1, col, op)?;
                Ok(Value::Sum(FormalSum::single(self.field(&args[0])?)))
            }
            "five-term" => {
                Self::arity(args, 2, col, op)?;
                let x = self.field(&args[0])?;
                let y = self.field(&args[1])?;
                Ok(Value::Sum(goncharov::five_term(&x, &y)?))
            }
            "delta2" => {
                Self::arity(args, 1, col, op)?;
                let Value::Sum(s) = self.eval(&args[0])? else {
                    return perr(args[0].col(), "delta2 takes a formal sum");
                };
                let mut reg = MultBasisRegistry::new();
                let w = goncharov::delta2_tilde(&s, &mut reg)?;
                Ok(Value::Text(goncharov::render_wedge(&w, &reg)))
            }
            _ => perr(col, format!("unknown form {op}")),
        }
    }

    fn empty_bar(&self) -> Value {
        match self.mode {
            Mode::Concrete => Value::Bar(BarElem::zero()),
            Mode::Formal => Value::FormalBar(BarElem::zero()),
        }
    }

    /// `(w [coef] letter ...)`: a leading constant is a coefficient.
    fn word(&mut self, args: &[Sexp], col: usize) -> Result<Value> {
        let mut coef = Rational::one();
        let mut rest = args;
        if let Some(first) = args.first() {
            if let Ok(Value::Field(x)) = self.eval(first) {
                if let Some(q) = x.constant_value() {
                    coef = q;
                    rest = &args[1..];
                }
            }
        }
        let vals = rest.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>>>()?;
        let any_formal = vals.iter().any(|v| matches!(v, Value::Formal(_)));
        let any_cycle = vals.iter().any(|v| matches!(v, Value::Cycle(_)));
        if any_formal && any_cycle {
            return perr(col, "word mixes formal and concrete letters");
        }
        if any_formal || (vals.is_empty() && self.mode == Mode::Formal) {
            let mut letters = Vec::new();
            for (v, a) in vals.into_iter().zip(rest) {
                match v {
                    Value::Formal(f) => letters.push(f),
                    v => return perr(a.col(), format!("a letter cannot be a {}", v.kind())),
                }
            }
            Ok(Value::FormalBar(bar::word(&self.formal, &letters).scale(&coef)))
        } else {
            let mut letters = Vec::new();
            for (v, a) in vals.into_iter().zip(rest) {
                match v {
                    Value::Cycle(c) => letters.push(c),
                    v => return perr(a.col(), format!("a letter cannot be a {}", v.kind())),
                }
            }
            Ok(Value::Bar(bar::word(&self.conc, &letters).scale(&coef)))
        }
    }

    /// `(locus "slot" ...)` over `p0, p1, …`, or
    /// `(locus (params a b) (slots e ...))` with `add sub mul div neg pow`.
    fn locus(&mut self, args: &[Sexp], col: usize) -> Result<Value> {
        let slots = match args {
            [Sexp::List(p, pc), Sexp::List(s, sc)]
                if p.first().and_then(|h| h.atom()) == Some("params")
                    && s.first().and_then(|h| h.atom()) == Some("slots") =>
            {
                let mut names = BTreeMap::new();
                for (i, n) in p[1..].iter().enumerate() {
                    match n.atom() {
                        Some(a) if parse_rational(a).is_none() => {
                            names.insert(a.to_string(), param_var(i));
                        }
                        _ => return perr(n.col(), "expected a parameter name"),
                    }
                }
                if p.len() < 2 {
                    return perr(*pc, "params needs at least one name");
                }
                if s.len() < 2 {
                    return perr(*sc, "slots needs at least one slot");
                }
                s[1..]
                    .iter()
                    .map(|e| slot_expr(e, &names))
                    .collect::<Result<Vec<_>>>()?
            }
            _ => args
                .iter()
                .map(|a| match a {
                    Sexp::Str(s, c) => parse_ratfunc_at(s, c + 1),
                    other => self.field(other),
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if slots.is_empty() {
            return perr(col, "locus needs slots");
        }
        if slots.iter().any(|s| s.is_zero()) {
            return perr(col, "a slot is identically zero");
        }
        if self.mode == Mode::Formal {
            return perr(col, "loci exist only in concrete mode");
        }
        Ok(Value::Cycle(self.conc.engine().locus(&slots)?))
    }

    /// `(formal NAME (j i₁ …) :d EXPR)` declares the symbol `NAME_i₁_…`.
    fn declare(&mut self, args: &[Sexp], col: usize) -> Result<Value> {
        let (name_e, rest) = args.split_first().ok_or(Error::ParseError {
            col,
            msg: "formal needs a name".into(),
        })?;
        let Some(base) = name_e.atom() else {
            return perr(name_e.col(), "expected a symbol name");
        };
        let mut name = base.to_string();
        let mut rest = rest;
        if let Some(Sexp::List(j, _)) = rest.first() {
            if j.first().and_then(|h| h.atom()) == Some("j") {
                for idx in &j[1..] {
                    match idx.atom() {
                        Some(a) => {
                            name.push('_');
                            name.push_str(a);
                        }
                        None => return perr(idx.col(), "expected an index"),
                    }
                }
                rest = &rest[1..];
            }
        }
        let [kw, body] = rest else {
            return perr(col, "expected :d EXPR");
        };
        if kw.atom() != Some(":d") {
            return perr(kw.col(), "expected :d");
        }
        let saved = self.mode;
        self.mode = Mode::Formal;
        let dv = self.eval(body);
        self.mode = saved;
        let Value::Formal(dv) = dv? else {
            return perr(body.col(), "the differential must be a formal element");
        };
        let Some(m) = dv.basis().next() else {
            return perr(body.col(), "the differential is zero; degree and weight are undetermined");
        };
        let (deg, wt) = (self.formal.basis_degree(m), self.formal.basis_weight(m));
        Ok(Value::Formal(self.formal.declare(&name, wt, deg - 1, dv)?))
    }

    fn mul(&mut self, a: Value, b: Value, col: usize) -> Result<Value> {
        match (a, b) {
            (Value::Field(x), Value::Field(y)) => Ok(Value::Field(x.mul(&y))),
            (Value::Field(x), v) | (v, Value::Field(x)) => match x.constant_value() {
                Some(q) => scale(v, &q, col),
                None => perr(col, "only constants scale elements"),
            },
            (Value::Cycle(x), Value::Cycle(y)) => Ok(Value::Cycle(self.conc.mul(&x, &y)?)),
            (Value::Formal(x), Value::Formal(y)) => Ok(Value::Formal(self.formal.mul(&x, &y)?)),
            (a, b) => perr(col, format!("cannot multiply a {} by a {}", a.kind(), b.kind())),
        }
    }
}

fn add(a: Value, b: Value, col: usize) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Field(x), Value::Field(y)) => Value::Field(x.add(&y)),
        (Value::Cycle(x), Value::Cycle(y)) => Value::Cycle(x.add(&y)),
        (Value::Formal(x), Value::Formal(y)) => Value::Formal(x.add(&y)),
        (Value::Bar(x), Value::Bar(y)) => Value::Bar(x.add(&y)),
        (Value::FormalBar(x), Value::FormalBar(y)) => Value::FormalBar(x.add(&y)),
        (Value::Sum(x), Value::Sum(y)) => Value::Sum(x.add(&y)),
        (a, b) => return perr(col, format!("cannot add a {} and a {}", a.kind(), b.kind())),
    })
}

fn scale(v: Value, q: &Rational, col: usize) -> Result<Value> {
    Ok(match v {
        Value::Field(x) => Value::Field(x.scale(q)),
        Value::Cycle(x) => Value::Cycle(x.scale(q)),
        Value::Formal(x) => Value::Formal(x.scale(q)),
        Value::Bar(x) => Value::Bar(x.scale(q)),
        Value::FormalBar(x) => Value::FormalBar(x.scale(q)),
        Value::Sum(x) => Value::Sum(x.scale(q)),
        Value::Text(_) => return perr(col, "cannot scale text"),
    })
}

/// Slot expressions in named parameters.
fn slot_expr(e: &Sexp, names: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
    match e {
        Sexp::Str(s, c) => parse_ratfunc_at(s, c + 1),
        Sexp::Atom(a, c) => {
            if let Some(v) = names.get(a) {
                return Ok(v.clone());
            }
            match (parse_rational(a), a.as_str()) {
                (Some(q), _) => Ok(RatFunc::constant(q)),
                (None, "t") => Ok(RatFunc::var(VAR_T)),
                (None, "s") => Ok(RatFunc::var(VAR_S)),
                _ => perr(*c, format!("unknown name {a}")),
            }
        }
        Sexp::List(items, c) => {
            let Some(op) = items.first().and_then(|h| h.atom()) else {
                return perr(*c, "expected an operator");
            };
            let xs = items[1..]
                .iter()
                .map(|x| slot_expr(x, names))
                .collect::<Result<Vec<_>>>()?;
            match (op, xs.as_slice()) {
                ("add", [a, rest @ ..]) => Ok(rest.iter().fold(a.clone(), |acc, x| acc.add(x))),
                ("mul", [a, rest @ ..]) => Ok(rest.iter().fold(a.clone(), |acc, x| acc.mul(x))),
                ("sub", [a, b]) => Ok(a.sub(b)),
                ("neg", [a]) => Ok(a.neg()),
                ("div", [a, b]) => a.div(b).ok_or(Error::ParseError {
                    col: items[2].col(),
                    msg: "division by zero".into(),
                }),
                ("pow", [a, b]) => {
                    let k = b.constant_value().filter(|q| q.is_integer()).and_then(|q| i64::try_from(q.to_integer()).ok());
                    match k.and_then(|k| a.pow(k)) {
                        Some(p) => Ok(p),
                        None => perr(items[2].col(), "bad exponent"),
                    }
                }
                _ => perr(*c, format!("bad slot form {op}")),
            }
        }
    }
}

/// Evaluate and print, the form used by `bkverify eval`.
pub fn eval_expr(src: &str, mode: Mode) -> Result<String> {
    let mut ev = Evaluator::new(mode);
    let v = ev.eval_str(src)?;
    Ok(ev.render(&v))
}

/// Evaluate text that must denote a formal sum.
pub fn eval_formal_sum(src: &str) -> Result<FormalSum> {
    let mut ev = Evaluator::new(Mode::Concrete);
    match ev.eval_str(src)? {
        Value::Sum(s) => Ok(s),
        Value::Field(x) if x.is_zero() => Ok(FormalSum::zero()),
        v => perr(0, format!("expected a formal sum, got a {}", v.kind())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reader_positions() {
        assert_eq!(
            parse("(d (u 3"),
            Err(Error::ParseError {
                col: 7,
                msg: "unclosed '('".into()
            })
        );
        assert!(matches!(parse("(a))"), Err(Error::ParseError { col: 3, .. })));
        let e = parse("(a \"b c\" (d))").unwrap();
        assert_eq!(e.col(), 0);
    }

    #[test]
    fn empty_formal_sum_is_zero() {
        assert!(eval_formal_sum("0").unwrap().is_zero());
        assert!(!FormalSum::single(RatFunc::one()).is_zero());
    }
}
