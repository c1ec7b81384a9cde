//! Expressions over a power algebra.
//!
//! ```text
//! expr  := prod ( '+' set prod )*
//! prod  := unary ( '*' set unary )*
//! unary := '~' unary | 'C' '(' n ',' set ')' unary | atom
//! atom  := '(' expr ')' | name | 'D' i j | '<' ... '>' | '[[' formula ']]'
//! set   := '{' ( n ( ',' n )* )? '}'      n := digits | 'v' digits
//! ```
//!
//! Names are the aliases of the space (`0`, `1`, `Omega`, and `A`, `B`, `C`
//! where defined). `[[φ]]` is the meaning of `φ` over the calculator's
//! structure.

use crate::algebra::{alias, Constant, Element};
use crate::error::{Error, Result};
use crate::model::{IndepSet, Space, Structure};
use crate::semantics::meaning;
use crate::syntax::{parse, MAX_NESTING};

/// Evaluates expressions in one space, optionally with a structure for
/// `[[formula]]` atoms.
#[derive(Clone, Debug)]
pub struct Calculator {
    space: Space,
    structure: Option<Structure>,
}

impl Calculator {
    pub fn new(space: Space) -> Self {
        Calculator {
            space,
            structure: None,
        }
    }

    pub fn with_structure(structure: Structure, vars: usize) -> Result<Self> {
        Ok(Calculator {
            space: Space::new(structure.universe(), vars)?,
            structure: Some(structure),
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn eval(&self, text: &str) -> Result<Element> {
        let mut p = Cursor {
            calc: self,
            text,
            pos: 0,
            depth: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(Error::parse(p.pos, "unexpected input after expression"));
        }
        Ok(e)
    }
}

struct Cursor<'a> {
    calc: &'a Calculator,
    text: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{s}`")))
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Error::parse(self.pos, "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.prod()?;
        while self.eat("+") {
            let j = self.set()?;
            let rhs = self.prod()?;
            acc = acc.plus(&rhs, j)?;
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<Element> {
        let mut acc = self.unary()?;
        while self.eat("*") {
            let j = self.set()?;
            let rhs = self.unary()?;
            acc = acc.times(&rhs, j)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Element> {
        self.enter()?;
        let out = if self.eat("~") {
            self.unary()?.neg()
        } else if self.eat("C(") {
            let n = self.index()?;
            self.expect(",")?;
            let j = self.set()?;
            self.expect(")")?;
            self.unary()?.cyl(n, j)?
        } else {
            self.atom()?
        };
        self.depth -= 1;
        Ok(out)
    }

    fn index(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let r = self.rest();
        let body = r.strip_prefix('v').unwrap_or(r);
        let digits = body.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(start, "expected a variable index"));
        }
        let skip = r.len() - body.len();
        let n = body[..digits]
            .parse()
            .map_err(|_| Error::parse(start, "variable index too large"))?;
        self.pos += skip + digits;
        let vars = self.calc.space.vars();
        if n >= vars {
            return Err(Error::OutOfRange {
                what: "variable",
                index: n,
                bound: vars,
            });
        }
        Ok(n)
    }

    fn set(&mut self) -> Result<IndepSet> {
        self.expect("{")?;
        let mut j = IndepSet::EMPTY;
        if self.eat("}") {
            return Ok(j);
        }
        loop {
            let n = self.index()?;
            j.insert(n)?;
            if self.eat("}") {
                return Ok(j);
            }
            self.expect(",")?;
        }
    }

    fn atom(&mut self) -> Result<Element> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("[[") {
            let close = self
                .rest()
                .find("]]")
                .ok_or_else(|| Error::parse(start, "unterminated `[[`"))?;
            let src = &self.rest()[..close];
            let body_at = self.pos;
            self.pos += close + 2;
            let a = self
                .calc
                .structure
                .as_ref()
                .ok_or_else(|| Error::Invalid("`[[formula]]` needs a structure".into()))?;
            let phi = parse(src, Some(self.calc.space.vars())).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + body_at,
                    msg,
                },
                other => other,
            })?;
            return meaning(a, &phi);
        }
        if self.rest().starts_with('<') {
            let close = self
                .rest()
                .find('>')
                .ok_or_else(|| Error::parse(start, "unterminated element literal"))?;
            let lit = &self.rest()[..=close];
            self.pos += close + 1;
            return Element::parse(lit, self.calc.space).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + start,
                    msg,
                },
                other => other,
            });
        }
        let name_len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        if name_len == 0 {
            return Err(Error::parse(start, "expected an element"));
        }
        let name = &self.rest()[..name_len];
        self.pos += name_len;
        if let Some(e) = alias(self.calc.space, name) {
            return Ok(e);
        }
        let ij = name.strip_prefix('D').filter(|d| d.len() == 2);
        if let Some(ij) = ij.filter(|d| d.bytes().all(|b| b.is_ascii_digit())) {
            let i = (ij.as_bytes()[0] - b'0') as usize;
            let k = (ij.as_bytes()[1] - b'0') as usize;
            return Element::constant(self.calc.space, Constant::Diagonal(i, k));
        }
        Err(Error::UnknownSymbol(format!(
            "`{name}` is not an element name over {}",
            self.calc.space
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::alias_of;

    fn calc(m: usize) -> Calculator {
        Calculator::with_structure(Structure::builtin(&m.to_string()).unwrap(), 1).unwrap()
    }

    fn name(c: &Calculator, text: &str) -> &'static str {
        alias_of(&c.eval(text).unwrap()).unwrap_or("?")
    }

    #[test]
    fn joins_from_the_tables() {
        let two = calc(2);
        assert_eq!(name(&two, "B +{} C"), "1");
        assert_eq!(name(&two, "B +{0} C"), "A");
        assert_eq!(name(&two, "~B +{} ~C"), "Omega");
        assert_eq!(name(&calc(3), "B +{} B"), "A");
        assert_eq!(name(&calc(3), "B +{v0} B"), "B");
    }

    #[test]
    fn negated_join_is_meet_of_negations() {
        let two = calc(2);
        let lhs = two.eval("~( ~A +{} ~A )").unwrap();
        assert_eq!(lhs, two.eval("A *{} A").unwrap());
        assert_eq!(alias_of(&lhs), Some("A"));
    }

    #[test]
    fn precedence_and_grouping() {
        let two = calc(2);
        assert_eq!(
            two.eval("B +{} C *{} Omega").unwrap(),
            two.eval("B +{} (C *{} Omega)").unwrap()
        );
        assert_eq!(name(&two, "C(0,{}) [[v0 = c0]]"), "1");
        assert_eq!(name(&two, "C(v0,{0}) ~C"), "Omega");
        assert_eq!(name(&two, "C(v0,{0}) B"), "1");
        assert_eq!(name(&two, "D00"), "1");
    }

    #[test]
    fn literals_and_meanings() {
        let two = calc(2);
        assert_eq!(name(&two, "<{{0}} | {{}}>"), "B");
        assert_eq!(
            two.eval("[[v0 = c0]]").unwrap(),
            Element::perfect(two.space(), crate::model::Team(0b01)).unwrap()
        );
    }

    #[test]
    fn errors() {
        let two = calc(2);
        assert!(matches!(two.eval("Q"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(
            two.eval("A + B"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            two.eval("A +{1} B"),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(two.eval("(A"), Err(Error::Parse { .. })));
        assert!(matches!(two.eval("A B"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(two.eval("[[v0 = ]]"), Err(Error::Parse { .. })));
        assert!(Calculator::new(two.space()).eval("[[v0 = c0]]").is_err());
        let deep = "~".repeat(10_000) + "A";
        assert!(two.eval(&deep).is_err());
    }
}
