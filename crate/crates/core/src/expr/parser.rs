use super::ast::{BinOp, Constant, Func, Node};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}{hint}")]
    UnknownIdentifier {
        offset: usize,
        name: String,
        hint: String,
    },
    #[error("function `{name}` at offset {offset} takes 1 argument, got {found}")]
    Arity {
        offset: usize,
        name: String,
        found: usize,
    },
    #[error("number at offset {offset} is out of range")]
    NumberOutOfRange { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::Arity { offset, .. }
            | ParseError::NumberOutOfRange { offset } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Op(c) => format!("`{c}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            // An exponent only when digits follow, so `2e` stays 2 times e.
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("malformed number `{text}`"),
            })?;
            if !v.is_finite() {
                return Err(ParseError::NumberOutOfRange { offset: start });
            }
            out.push((Tok::Num(v), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
            continue;
        }
        let tok = match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => Tok::Op(c as char),
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
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

    fn unexpected(&self) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: format!("unexpected {}", describe(self.peek())),
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Node::neg(self.unary()?))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // `^` is right associative and binds tighter than unary minus on its left.
    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exp = self.unary()?;
            return Ok(Node::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let (tok, offset) = self.bump();
        match tok {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => self.identifier(name, offset),
            Tok::End => Err(ParseError::Syntax {
                offset,
                message: "unexpected end of input".into(),
            }),
            other => Err(ParseError::Syntax {
                offset,
                message: format!("unexpected {}", describe(&other)),
            }),
        }
    }

    fn identifier(&mut self, name: String, offset: usize) -> Result<Node, ParseError> {
        match name.as_str() {
            "x" => return Ok(Node::Var),
            "pi" => return Ok(Node::Const(Constant::Pi)),
            "e" => return Ok(Node::Const(Constant::E)),
            _ => {}
        }
        let Some(func) = Func::from_name(&name) else {
            let hint = match name.as_str() {
                "log" => " (use `lg` for base 10 or `ln` for natural logarithm)",
                "PI" | "Pi" => " (use `pi`)",
                "arcsin" | "arccos" | "arctan" => " (use asin, acos, atan)",
                "phi" => " (the normal distribution function is `Phi`)",
                _ => "",
            };
            return Err(ParseError::UnknownIdentifier {
                offset,
                name,
                hint: hint.into(),
            });
        };
        if *self.peek() != Tok::LParen {
            return Err(ParseError::Arity {
                offset,
                name,
                found: 0,
            });
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            return Err(ParseError::Arity {
                offset,
                name,
                found: 0,
            });
        }
        let arg = self.expr()?;
        let mut found = 1;
        while *self.peek() == Tok::Comma {
            self.bump();
            self.expr()?;
            found += 1;
        }
        if *self.peek() != Tok::RParen {
            return Err(self.unexpected());
        }
        self.bump();
        if found != 1 {
            return Err(ParseError::Arity {
                offset,
                name,
                found,
            });
        }
        Ok(Node::call(func, arg))
    }
}

pub fn parse(src: &str) -> Result<Node, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(ParseError::Syntax {
            offset: p.offset(),
            message: "empty expression".into(),
        });
    }
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_operator_reports_end_offset() {
        let err = parse("x +").unwrap_err();
        assert_eq!(err.offset(), 3);
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse("-x^2").unwrap(), Node::neg(parse("x^2").unwrap()));
        assert_eq!(
            parse("2^3^2").unwrap(),
            Node::binary(BinOp::Pow, Node::Num(2.0), parse("3^2").unwrap())
        );
    }

    #[test]
    fn scientific_notation_needs_digits() {
        assert_eq!(parse("1e-3").unwrap(), Node::Num(1e-3));
        // a bare trailing e is the constant, and juxtaposition is not multiplication
        assert_eq!(parse("2e").unwrap_err().offset(), 1);
        assert_eq!(
            parse("2*e").unwrap(),
            Node::binary(BinOp::Mul, Node::Num(2.0), Node::Const(Constant::E))
        );
    }

    #[test]
    fn log_is_rejected_with_hint() {
        let err = parse("log(x)").unwrap_err();
        assert!(err.to_string().contains("lg"));
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(parse("sin(x, 2)"), Err(ParseError::Arity { found: 2, .. })));
        assert!(matches!(parse("sin x"), Err(ParseError::Arity { found: 0, .. })));
    }

    #[test]
    fn huge_literals_are_out_of_range() {
        assert!(matches!(parse("1e999"), Err(ParseError::NumberOutOfRange { offset: 0 })));
    }
}
