use super::ast::{BinOp, Func, Node};
use crate::error::{Error, Result};

pub const VARIABLES: [&str; 3] = ["x", "m", "t"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'0'..=b'9' | b'.' => self.number()?,
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                Tok::Ident(self.src[start..self.pos].to_string())
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                self.pos += 1;
                Tok::Op(c as char)
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b',' => {
                self.pos += 1;
                Tok::Comma
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self) -> Result<Tok> {
        let start = self.pos;
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.peek().is_some_and(|c| c.is_ascii_digit()) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(syntax(start, "malformed number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // `2e` is not an exponent; leave `e` for the identifier rule
                self.pos = save;
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>()
            .map(Tok::Num)
            .map_err(|_| syntax(start, format!("malformed number `{text}`")))
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

pub(crate) struct Parsed {
    pub ast: Node,
    pub var: Option<String>,
}

struct Parser<'b> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    bindings: &'b [(String, f64)],
    var: Option<String>,
}

pub(crate) fn parse(src: &str, bindings: &[(String, f64)]) -> Result<Parsed> {
    if src.trim().is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let toks = Lexer::tokens(src)?;
    let mut p = Parser { toks, i: 0, bindings, var: None };
    let ast = p.expr()?;
    let (tok, at) = p.peek_at();
    if tok != Tok::End {
        return Err(syntax(at, format!("unexpected {}", describe(&tok))));
    }
    Ok(Parsed { ast, var: p.var })
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Op(c) => format!("operator `{c}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

impl Parser<'_> {
    fn peek_at(&self) -> (Tok, usize) {
        self.toks[self.i].clone()
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if t.0 != Tok::End {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (tok, at) = self.bump();
        if tok == want {
            Ok(())
        } else {
            Err(syntax(at, format!("expected {}, found {}", describe(&want), describe(&tok))))
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let (Tok::Op(c @ ('+' | '-')), _) = self.peek_at() {
            self.bump();
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while let (Tok::Op(c @ ('*' | '/')), _) = self.peek_at() {
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    // unary := '-' unary | '+' unary | power
    fn unary(&mut self) -> Result<Node> {
        match self.peek_at() {
            (Tok::Op('-'), _) => {
                self.bump();
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            (Tok::Op('+'), _) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := primary ('^' unary)?   (right associative through unary)
    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if let (Tok::Op('^'), _) = self.peek_at() {
            self.bump();
            let exp = self.unary()?;
            return Ok(Node::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(v) => Ok(Node::Const(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let (Tok::LParen, _) = self.peek_at() {
                    let func = Func::from_name(&name)
                        .ok_or(Error::UnknownFunction { name: name.clone(), offset: at })?;
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while let (Tok::Comma, _) = self.peek_at() {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    if args.len() != func.arity() {
                        return Err(syntax(
                            at,
                            format!("`{name}` takes {} argument(s), got {}", func.arity(), args.len()),
                        ));
                    }
                    return Ok(Node::Call(func, args));
                }
                self.identifier(&name, at)
            }
            other => Err(syntax(at, format!("unexpected {}", describe(&other)))),
        }
    }

    fn identifier(&mut self, name: &str, at: usize) -> Result<Node> {
        match name {
            "pi" => return Ok(Node::Const(std::f64::consts::PI)),
            "e" => return Ok(Node::Const(std::f64::consts::E)),
            "inf" => return Ok(Node::Const(f64::INFINITY)),
            _ => {}
        }
        if let Some((_, v)) = self.bindings.iter().find(|(n, _)| n == name) {
            return Ok(Node::literal(*v));
        }
        if VARIABLES.contains(&name) {
            match &self.var {
                Some(v) if v != name => {
                    return Err(syntax(at, format!("expression mixes variables `{v}` and `{name}`")))
                }
                _ => self.var = Some(name.to_string()),
            }
            return Ok(Node::Var);
        }
        if Func::from_name(name).is_some() {
            return Err(syntax(at, format!("function `{name}` needs an argument list")));
        }
        Err(syntax(at, format!("unknown identifier `{name}`")))
    }
}
