use num_rational::BigRational;

use super::lexer::{tokenize, Tok, Token};
use super::{ProbDecl, TheoryFile};
use crate::error::{Error, Result};
use crate::logic::formula::{Atom, Formula, Term};
use crate::measure::decimal::parse_decimal;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// Parse one formula (without a terminating `.`).
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect(Tok::Eof, "end of formula")?;
    Ok(f)
}

pub fn parse_theory_file(text: &str) -> Result<TheoryFile> {
    let mut p = Parser::new(text)?;
    let mut file = TheoryFile::default();
    loop {
        let t = p.peek().clone();
        match &t.tok {
            Tok::Eof => break,
            Tok::Ident(k) if k == "domain" && p.peek_at(1) == &Tok::Colon => {
                if file.domain.is_some() {
                    return Err(duplicate(&t, "domain"));
                }
                p.pos += 2;
                file.domain = Some(p.ident_list()?);
            }
            Tok::Ident(k) if k == "forget" && p.peek_at(1) == &Tok::Colon => {
                if file.policy.is_some() {
                    return Err(duplicate(&t, "forget"));
                }
                p.pos += 2;
                file.policy = Some(p.policy_list()?);
            }
            Tok::Ident(k) if k == "theory" && p.peek_at(1) == &Tok::Colon => {
                p.pos += 2;
                loop {
                    file.formulas.push(p.formula()?);
                    p.expect(Tok::Dot, "`.` after formula")?;
                    if p.at_section_start() || p.peek().tok == Tok::Eof {
                        break;
                    }
                }
            }
            Tok::Ident(k) if k == "prob" && matches!(p.peek_at(1), Tok::Number(_)) => {
                p.pos += 1;
                file.probabilities.push(p.prob_decl(t.line)?);
            }
            _ => return Err(p.unexpected("a section (`domain:`, `prob`, `theory:` or `forget:`)")),
        }
    }
    Ok(file)
}

fn duplicate(t: &Token, section: &str) -> Error {
    Error::DuplicateSection {
        line: t.line,
        column: t.column,
        section: section.into(),
    }
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.into(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn at_section_start(&self) -> bool {
        match &self.peek().tok {
            Tok::Ident(k) if matches!(k.as_str(), "domain" | "forget" | "theory") => {
                self.peek_at(1) == &Tok::Colon
            }
            Tok::Ident(k) if k == "prob" => matches!(self.peek_at(1), Tok::Number(_)),
            _ => false,
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<String>> {
        let mut out = vec![self.ident("a constant")?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            out.push(self.ident("a constant")?);
        }
        self.expect(Tok::Dot, "`,` or `.`")?;
        Ok(out)
    }

    /// Policy entries: names, optionally with constant arguments for single ground atoms.
    fn policy_list(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        loop {
            let a = self.atom()?;
            if !a.is_ground() {
                return Err(self.unexpected("a ground atom or predicate name"));
            }
            out.push(a.name());
            if self.peek().tok != Tok::Comma {
                break;
            }
            self.bump();
        }
        self.expect(Tok::Dot, "`,` or `.`")?;
        Ok(out)
    }

    fn prob_decl(&mut self, line: usize) -> Result<ProbDecl> {
        let mut alternatives = Vec::new();
        loop {
            let num = self.bump();
            let weight: BigRational = match &num.tok {
                Tok::Number(s) => parse_decimal(s).ok_or_else(|| Error::Syntax {
                    line: num.line,
                    column: num.column,
                    expected: "a decimal number".into(),
                    found: num.tok.describe(),
                })?,
                other => {
                    return Err(Error::Syntax {
                        line: num.line,
                        column: num.column,
                        expected: "a probability".into(),
                        found: other.describe(),
                    })
                }
            };
            self.expect(Tok::ColonColon, "`::`")?;
            let at = self.peek().clone();
            let atom = self.atom()?;
            if !atom.is_ground() {
                return Err(Error::NonGroundProbability {
                    line: at.line,
                    column: at.column,
                    atom: atom.name(),
                });
            }
            alternatives.push((weight, atom));
            match self.peek().tok {
                Tok::Semi => {
                    self.bump();
                }
                Tok::Dot => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected("`;` or `.`")),
            }
        }
        Ok(ProbDecl { alternatives, line })
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.implication()?;
        if self.peek().tok == Tok::Equiv {
            self.bump();
            let rhs = self.implication()?;
            if self.peek().tok == Tok::Equiv {
                return Err(self.unexpected("parentheses (`<->` is non-associative)"));
            }
            return Ok(Formula::equiv(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek().tok == Tok::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conjunction()?];
        while self.peek().tok == Tok::Or {
            self.bump();
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while self.peek().tok == Tok::And {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::and(parts)
        })
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().tok.clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(k) if k == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(k) if k == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(k) if k == "forall" || k == "exists" => {
                self.bump();
                let v = match self.bump().tok {
                    Tok::Var(v) => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("a variable (uppercase identifier)"));
                    }
                };
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                let body = self.formula()?;
                Ok(if k == "forall" {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                })
            }
            Tok::Ident(_) => Ok(Formula::Atom(self.atom()?)),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = self.ident("a predicate or propositional variable")?;
        let mut args = Vec::new();
        if self.peek().tok == Tok::LParen {
            self.bump();
            loop {
                let t = self.bump();
                args.push(match t.tok {
                    Tok::Var(v) => Term::Var(v),
                    Tok::Ident(c) if !is_keyword(&c) => Term::Const(c),
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("a term"));
                    }
                });
                match self.bump().tok {
                    Tok::Comma => continue,
                    Tok::RParen => break,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("`,` or `)`"));
                    }
                }
            }
        }
        Ok(Atom::new(name, args))
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "true" | "false" | "forall" | "exists")
}
