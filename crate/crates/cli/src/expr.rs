//! Expression language: lexer, LL(1) parser and static mode check.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | 'osh' | 'sh') unary)*
//! unary  := '-' unary | atom
//! atom   := number | word | '(' expr ')' | ident '(' args ')'
//! word   := '[' (int (',' int)*)? ']'
//! ```
//!
//! Numbers are integers or `p/q` with no spaces around the slash.

use std::fmt;

use nsymm_core::algebra::Alphabet;
use nsymm_core::rational::parse_exact;
use nsymm_core::{Composition, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Lexical,
    Syntax,
    Mode,
    Evaluation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub offset: usize,
    pub message: String,
}

impl Diagnostic {
    fn new(kind: DiagnosticKind, offset: usize, message: impl Into<String>) -> Self {
        Diagnostic { kind, offset, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagnosticKind::Lexical => "lexical error",
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Mode => "mode error",
            DiagnosticKind::Evaluation => "evaluation error",
        };
        write!(f, "{kind} at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q) => format!("number {q}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, Diagnostic> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text = &src[start..i];
            let q = parse_exact(text)
                .ok_or_else(|| Diagnostic::new(DiagnosticKind::Lexical, start, format!("bad number `{text}`")))?;
            out.push((Tok::Num(q), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return Err(Diagnostic::new(DiagnosticKind::Lexical, start, format!("unexpected character `{ch}`")));
        }
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    /// Concatenation in N-mode, overlapping shuffle in Q-mode.
    Mul,
    Osh,
    Sh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Bracket,
    Pair,
    Delta,
    VN,
    FN,
    VQ,
    FQ,
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    L,
    N,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Number(Rational),
    /// A QSymm basis word.
    Word(Composition),
    /// A single letter `Z_k`, `X_k`, `Y_k` or `U_k`.
    Letter(Alphabet, u32),
    /// `Z_α`.
    ZWord(Composition),
    P(u32),
    Pp(u32),
    Palpha(Composition),
    E(Composition),
    H(u32),
    El(u32),
    Table(Table, u32, u32),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    /// First argument of `vN`, `fN`, `vQ`, `fQ`.
    Index(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub offset: usize,
}

/// Static type of a subexpression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Scalar,
    N,
    Q,
    NTensor,
    QTensor,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Scalar => "scalar",
            Mode::N => "N",
            Mode::Q => "Q",
            Mode::NTensor => "N⊗N",
            Mode::QTensor => "Q⊗Q",
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, Diagnostic> {
        Err(Diagnostic::new(
            DiagnosticKind::Syntax,
            self.offset(),
            format!("expected {expected}, found {}", self.peek().describe()),
        ))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), Diagnostic> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let (_, offset) = self.bump();
            let rhs = self.term()?;
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), offset };
        }
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Ident(s) if s == "osh" => BinOp::Osh,
                Tok::Ident(s) if s == "sh" => BinOp::Sh,
                _ => return Ok(lhs),
            };
            let (_, offset) = self.bump();
            let rhs = self.unary()?;
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), offset };
        }
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if *self.peek() == Tok::Minus {
            let (_, offset) = self.bump();
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), offset });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Number(q), offset })
            }
            Tok::LBracket => Ok(Expr { kind: ExprKind::Word(self.word()?), offset }),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                self.call(&name, offset)
            }
            _ => self.error("a number, word, identifier or `(`"),
        }
    }

    fn word(&mut self) -> Result<Composition, Diagnostic> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut parts = Vec::new();
        if *self.peek() == Tok::RBracket {
            self.bump();
            return Ok(Composition::empty());
        }
        loop {
            parts.push(self.positive("a positive integer")?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBracket => {
                    self.bump();
                    return Ok(Composition::new(parts));
                }
                _ => return self.error("`,` or `]`"),
            }
        }
    }

    fn positive(&mut self, what: &str) -> Result<u32, Diagnostic> {
        if let Tok::Num(q) = self.peek() {
            if q.is_integer() {
                if let Ok(k) = u32::try_from(q.to_integer()) {
                    if k >= 1 {
                        self.bump();
                        return Ok(k);
                    }
                }
            }
        }
        self.error(what)
    }

    fn nonempty_word(&mut self) -> Result<Composition, Diagnostic> {
        let offset = self.offset();
        let w = self.word()?;
        if w.is_empty() {
            return Err(Diagnostic::new(DiagnosticKind::Syntax, offset, "expected a nonempty word"));
        }
        Ok(w)
    }

    fn call(&mut self, name: &str, offset: usize) -> Result<Expr, Diagnostic> {
        self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
        let kind = match name {
            "Z" if *self.peek() == Tok::LBracket => ExprKind::ZWord(self.word()?),
            "Z" | "Zn" => ExprKind::Letter(Alphabet::Z, self.positive("a positive index")?),
            "X" | "Y" | "U" => {
                let a = Alphabet::from_name(name).expect("letter name");
                ExprKind::Letter(a, self.positive("a positive index")?)
            }
            "P" => ExprKind::P(self.positive("a positive index")?),
            "Pp" => ExprKind::Pp(self.positive("a positive index")?),
            "Palpha" => ExprKind::Palpha(self.nonempty_word()?),
            "E" => ExprKind::E(self.nonempty_word()?),
            "h" => ExprKind::H(self.positive("a positive index")?),
            "e" => ExprKind::El(self.positive("a positive index")?),
            "L" | "N" => {
                let t = if name == "L" { Table::L } else { Table::N };
                let u = self.positive("a positive index")?;
                self.expect(Tok::Comma, "`,`")?;
                let v = self.positive("a positive index")?;
                ExprKind::Table(t, u, v)
            }
            "vN" | "fN" | "vQ" | "fQ" => {
                let f = match name {
                    "vN" => Func::VN,
                    "fN" => Func::FN,
                    "vQ" => Func::VQ,
                    _ => Func::FQ,
                };
                let at = self.offset();
                let n = self.positive("a positive integer")?;
                self.expect(Tok::Comma, "`,`")?;
                let x = self.expr()?;
                ExprKind::Call(f, vec![Expr { kind: ExprKind::Index(n), offset: at }, x])
            }
            "osh" | "sh" | "bracket" | "pair" => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                match name {
                    "osh" => ExprKind::Binary(BinOp::Osh, Box::new(a), Box::new(b)),
                    "sh" => ExprKind::Binary(BinOp::Sh, Box::new(a), Box::new(b)),
                    "bracket" => ExprKind::Call(Func::Bracket, vec![a, b]),
                    _ => ExprKind::Call(Func::Pair, vec![a, b]),
                }
            }
            "delta" | "pi" => {
                let f = if name == "delta" { Func::Delta } else { Func::Pi };
                ExprKind::Call(f, vec![self.expr()?])
            }
            _ => {
                return Err(Diagnostic::new(DiagnosticKind::Syntax, offset, format!("unknown function `{name}`")));
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(Expr { kind, offset })
    }
}

/// Parses and mode-checks `src`.
pub fn parse(src: &str) -> Result<Expr, Diagnostic> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error("an operator or end of input");
    }
    mode_of(&e)?;
    Ok(e)
}

fn mode_error<T>(offset: usize, msg: String) -> Result<T, Diagnostic> {
    Err(Diagnostic::new(DiagnosticKind::Mode, offset, msg))
}

fn require(e: &Expr, allowed: &[Mode], what: &str) -> Result<Mode, Diagnostic> {
    let m = mode_of(e)?;
    if allowed.contains(&m) {
        Ok(m)
    } else {
        mode_error(e.offset, format!("{what} expects {}, found {}", names(allowed), m.name()))
    }
}

fn names(ms: &[Mode]) -> String {
    ms.iter().map(|m| m.name()).collect::<Vec<_>>().join(" or ")
}

/// Static mode of an expression. N and Q meet only in `pair` and `pi`.
pub fn mode_of(e: &Expr) -> Result<Mode, Diagnostic> {
    use Mode::*;
    Ok(match &e.kind {
        ExprKind::Number(_) | ExprKind::Index(_) => Scalar,
        ExprKind::Word(_) | ExprKind::E(_) | ExprKind::H(_) | ExprKind::El(_) => Q,
        ExprKind::Letter(..)
        | ExprKind::ZWord(_)
        | ExprKind::P(_)
        | ExprKind::Pp(_)
        | ExprKind::Palpha(_)
        | ExprKind::Table(..) => N,
        ExprKind::Neg(x) => mode_of(x)?,
        ExprKind::Binary(op, a, b) => {
            let (ma, mb) = (mode_of(a)?, mode_of(b)?);
            let joined = match (ma, mb) {
                (Scalar, m) | (m, Scalar) => m,
                (x, y) if x == y => x,
                _ => return mode_error(e.offset, format!("cannot combine {} with {}", ma.name(), mb.name())),
            };
            match op {
                BinOp::Osh | BinOp::Sh if !matches!(joined, Q | Scalar) => {
                    return mode_error(e.offset, format!("shuffle products need Q operands, found {}", joined.name()));
                }
                BinOp::Mul if joined == QTensor && ma == mb => {
                    return mode_error(e.offset, "products of Q⊗Q tensors are not supported".into());
                }
                _ => joined,
            }
        }
        ExprKind::Call(f, args) => match f {
            Func::Bracket => {
                let ma = require(&args[0], &[Scalar, N, Q], "bracket")?;
                let mb = require(&args[1], &[Scalar, N, Q], "bracket")?;
                match (ma, mb) {
                    (Scalar, m) | (m, Scalar) => m,
                    (x, y) if x == y => x,
                    _ => return mode_error(e.offset, "bracket of N and Q".into()),
                }
            }
            Func::Pair => {
                require(&args[0], &[N], "pair (first argument)")?;
                require(&args[1], &[Q], "pair (second argument)")?;
                Scalar
            }
            Func::Delta => match require(&args[0], &[N, Q], "delta")? {
                N => NTensor,
                _ => QTensor,
            },
            Func::VN | Func::FN => {
                require(&args[1], &[N], if *f == Func::VN { "vN" } else { "fN" })?;
                N
            }
            Func::VQ | Func::FQ => {
                require(&args[1], &[Q], if *f == Func::VQ { "vQ" } else { "fQ" })?;
                Q
            }
            Func::Pi => {
                require(&args[0], &[N], "pi")?;
                Q
            }
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(src: &str) -> Diagnostic {
        parse(src).unwrap_err()
    }

    #[test]
    fn unbalanced_bracket() {
        let d = err("[1,2");
        assert_eq!((d.kind, d.offset), (DiagnosticKind::Syntax, 4));
    }

    #[test]
    fn lexical_errors() {
        let d = err("[1] + $");
        assert_eq!((d.kind, d.offset), (DiagnosticKind::Lexical, 6));
    }

    #[test]
    fn mode_errors() {
        let d = err("Zn(1) + [1]");
        assert_eq!((d.kind, d.offset), (DiagnosticKind::Mode, 6));
        let d = err("pair([1], Zn(1))");
        assert_eq!((d.kind, d.offset), (DiagnosticKind::Mode, 5));
        assert_eq!(err("Zn(1) osh Zn(2)").kind, DiagnosticKind::Mode);
        assert!(parse("pair(P(3), [1,1,1])").is_ok());
        assert!(parse("pi(2*Zn(2) - Zn(1)*Zn(1))").is_ok());
    }

    #[test]
    fn precedence() {
        let e = parse("[1] + [2] osh [3]").unwrap();
        let ExprKind::Binary(BinOp::Add, _, rhs) = e.kind else { panic!("{e:?}") };
        assert!(matches!(rhs.kind, ExprKind::Binary(BinOp::Osh, ..)));
        let e = parse("-3/2*Z([1,3])").unwrap();
        let ExprKind::Binary(BinOp::Mul, lhs, _) = e.kind else { panic!("{e:?}") };
        assert!(matches!(lhs.kind, ExprKind::Neg(_)));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(err("Q(1)").kind, DiagnosticKind::Syntax);
        assert_eq!(err("[0]").offset, 1);
        assert_eq!(err("P(2) P(3)").offset, 5);
        assert_eq!(err("Palpha([])").kind, DiagnosticKind::Syntax);
    }
}
