use super::{Atom, Formula, Node, Operand};
use crate::error::{Error, Result};
use crate::model::IndepSet;

/// Deepest nesting the parser accepts before giving up.
pub const MAX_NESTING: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Slash,
    Tilde,
    Eq,
    NotEq,
    Or,
    And,
    Implies,
    Iff,
    Num(usize),
    Name(String),
}

fn describe(tok: Option<&Tok>) -> String {
    match tok {
        None => "end of input".into(),
        Some(Tok::Name(n)) => format!("`{n}`"),
        Some(Tok::Num(n)) => format!("`{n}`"),
        Some(t) => format!(
            "`{}`",
            match t {
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::LBrace => "{",
                Tok::RBrace => "}",
                Tok::Comma => ",",
                Tok::Slash => "/",
                Tok::Tilde => "~",
                Tok::Eq => "=",
                Tok::NotEq => "!=",
                Tok::Or => "\\/",
                Tok::And => "/\\",
                Tok::Implies => "->",
                Tok::Iff => "<->",
                Tok::Num(_) | Tok::Name(_) => unreachable!(),
            }
        ),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = |s: &[u8]| bytes[i..].starts_with(s);
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b',' => Tok::Comma,
            b'~' => Tok::Tilde,
            b'=' => Tok::Eq,
            _ if two(b"!=") => Tok::NotEq,
            _ if two(b"\\/") => Tok::Or,
            _ if two(b"/\\") => Tok::And,
            _ if two(b"->") => Tok::Implies,
            _ if two(b"<->") => Tok::Iff,
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| Error::parse(start, "number too large"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(i, format!("unexpected character `{ch}`")));
            }
        };
        i += match tok {
            Tok::NotEq | Tok::Or | Tok::And | Tok::Implies => 2,
            Tok::Iff => 3,
            _ => 1,
        };
        out.push((start, tok));
    }
    Ok(out)
}

/// `v<digits>` as a variable index.
fn var_index(name: &str) -> Option<Result<usize>> {
    let digits = name.strip_prefix('v')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(
        digits
            .parse()
            .map_err(|_| Error::Invalid(format!("variable `{name}` is out of range"))),
    )
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.offset(), msg))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                describe(Some(&want)),
                describe(self.peek())
            ))
        }
    }

    fn formula(&mut self) -> Result<Node> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.error("formula nested too deeply");
        }
        let node = self.formula_inner();
        self.depth -= 1;
        node
    }

    fn formula_inner(&mut self) -> Result<Node> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(self.formula()?.neg())
            }
            Some(Tok::Name(q)) if (q == "E" || q == "A") && self.quantifier_follows() => {
                let universal = q == "A";
                self.pos += 1;
                let n = self.variable()?;
                let j = self.slash_set()?;
                let body = self.formula()?;
                Ok(if universal {
                    Node::forall(n, j, body)
                } else {
                    Node::exists(n, j, body)
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let lhs = self.formula()?;
                if self.peek() == Some(&Tok::RParen) {
                    self.pos += 1;
                    return Ok(lhs);
                }
                let op = match self.bump() {
                    Some(t @ (Tok::Or | Tok::And | Tok::Implies | Tok::Iff)) => t,
                    other => {
                        self.pos -= 1;
                        return self.error(format!(
                            "expected a connective or `)`, found {}",
                            describe(other.as_ref())
                        ));
                    }
                };
                let j = self.slash_set()?;
                let rhs = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(match op {
                    Tok::Or => lhs.or(rhs, j),
                    Tok::And => lhs.and(rhs, j),
                    Tok::Implies => lhs.implies(rhs, j),
                    _ => lhs.iff(rhs, j),
                })
            }
            _ => self.atom(),
        }
    }

    fn quantifier_follows(&self) -> bool {
        matches!(self.peek_at(1), Some(Tok::Name(n)) if var_index(n).is_some())
    }

    fn variable(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Name(n)) => match var_index(n) {
                Some(r) => {
                    let r = r.map_err(|e| Error::parse(self.offset(), e.to_string()))?;
                    self.pos += 1;
                    Ok(r)
                }
                None => self.error(format!("expected a variable, found `{n}`")),
            },
            other => self.error(format!("expected a variable, found {}", describe(other))),
        }
    }

    fn slash_set(&mut self) -> Result<IndepSet> {
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
        }
        self.expect(Tok::LBrace)?;
        let mut j = IndepSet::EMPTY;
        if self.peek() == Some(&Tok::RBrace) {
            self.pos += 1;
            return Ok(j);
        }
        loop {
            let at = self.offset();
            let i = match self.peek() {
                Some(Tok::Num(n)) => {
                    let n = *n;
                    self.pos += 1;
                    n
                }
                _ => self.variable()?,
            };
            j.insert(i).map_err(|e| Error::parse(at, e.to_string()))?;
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrace) => return Ok(j),
                other => {
                    self.pos -= 1;
                    return self.error(format!(
                        "expected `,` or `}}`, found {}",
                        describe(other.as_ref())
                    ));
                }
            }
        }
    }

    fn operand(&mut self) -> Result<Operand> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let op = match var_index(n) {
                    Some(r) => {
                        Operand::Var(r.map_err(|e| Error::parse(self.offset(), e.to_string()))?)
                    }
                    None => Operand::Const(n.clone()),
                };
                self.pos += 1;
                Ok(op)
            }
            other => self.error(format!("expected a term, found {}", describe(other))),
        }
    }

    fn atom(&mut self) -> Result<Node> {
        if let (Some(Tok::Name(r)), Some(Tok::LParen)) = (self.peek(), self.peek_at(1)) {
            if var_index(r).is_none() {
                let r = r.clone();
                self.pos += 2;
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::RParen) {
                    self.pos += 1;
                    return Ok(Node::Atom(Atom::Rel(r, args)));
                }
                loop {
                    args.push(self.operand()?);
                    match self.bump() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => return Ok(Node::Atom(Atom::Rel(r, args))),
                        other => {
                            self.pos -= 1;
                            return self.error(format!(
                                "expected `,` or `)`, found {}",
                                describe(other.as_ref())
                            ));
                        }
                    }
                }
            }
        }
        let lhs = self.operand()?;
        let negated = match self.bump() {
            Some(Tok::Eq) => false,
            Some(Tok::NotEq) => true,
            other => {
                self.pos -= 1;
                return self.error(format!(
                    "expected `=` or `!=`, found {}",
                    describe(other.as_ref())
                ));
            }
        };
        let rhs = self.operand()?;
        let eq = Node::eq(lhs, rhs);
        Ok(if negated { eq.neg() } else { eq })
    }
}

/// Parse a formula. With `vars = None` the variable count is the least one
/// that fits the formula; otherwise it is `vars`, which must be large
/// enough.
pub fn parse(text: &str, vars: Option<usize>) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let node = p.formula()?;
    if p.pos < p.toks.len() {
        let hint = match p.peek() {
            Some(Tok::Or | Tok::And | Tok::Implies | Tok::Iff) => {
                "; binary connectives must be parenthesized"
            }
            _ => "",
        };
        return p.error(format!(
            "unexpected {} after formula{hint}",
            describe(p.peek())
        ));
    }
    match vars {
        None => Ok(Formula::with_min_vars(node)),
        Some(n) => Formula::new(node, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn js(items: &[usize]) -> IndepSet {
        items.iter().copied().collect()
    }

    #[test]
    fn parses_matching_pennies() {
        let f = parse("A v0/{} E v1/{v0} v0 != v1", None).unwrap();
        assert_eq!(f.vars, 2);
        assert_eq!(
            f.node,
            Node::forall(
                0,
                IndepSet::EMPTY,
                Node::exists(
                    1,
                    js(&[0]),
                    Node::eq(Operand::Var(0), Operand::Var(1)).neg()
                )
            )
        );
    }

    #[test]
    fn parses_full_independence_disjunction() {
        let f = parse("(v0 = c0 \\/{0} v0 != c0)", Some(1)).unwrap();
        let c0 = || Operand::Const("c0".into());
        assert_eq!(
            f.node,
            Node::eq(Operand::Var(0), c0()).or(Node::eq(Operand::Var(0), c0()).neg(), js(&[0]))
        );
        // variable and index spellings agree, and the slash is optional
        assert_eq!(parse("(v0 = c0 \\//{v0} v0 != c0)", Some(1)).unwrap(), f);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(parse("E v2/{} v0=v0", Some(2)).is_err());
        assert!(parse("E v1/{v3} v0=v0", Some(2)).is_err());
        assert!(parse("(v0 = v0 \\/{v40} v0 = v0)", None).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("(v0 = v1 \\/{} v0 = )", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 19),
            other => panic!("{other:?}"),
        }
        match parse("v0 = v1 v2", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
        assert!(parse("v0 = v1 \\/{} v0 = v0", None).is_err());
        assert!(parse("", None).is_err());
        assert!(parse("E c0/{} v0 = v0", None).is_err());
        assert!(parse("v0 # v1", None).is_err());
    }

    #[test]
    fn relations_and_parenthesized_atoms() {
        let f = parse("~ (R(v0, c1) /\\{} P())", None).unwrap();
        assert_eq!(f.pretty(), "~ (R(v0, c1) /\\{} P())");
        assert_eq!(parse("((v0 = v1))", None).unwrap().pretty(), "v0 = v1");
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let text = format!("{}v0 = v0", "~".repeat(10_000));
        assert!(parse(&text, None).is_err());
    }

    #[test]
    fn pretty_round_trip_examples() {
        for text in [
            "A v0/{} E v1/{v0} ~ (v0 = v1)",
            "(E v1/{} v0 = v1 \\/{v0, v1} ~ ~ (v1 = c0))",
            "E v0/{} (v0 = v1 <->/{v1} (v1 = c2 ->/{} R(v0)))",
        ] {
            let f = parse(text, None).unwrap();
            assert_eq!(f.pretty(), text);
            assert_eq!(parse(&f.pretty(), Some(f.vars)).unwrap(), f);
        }
    }
}
