//! Pratt parser for the expression grammar.
//!
//! ```text
//! expr    := expr ('+'|'-'|'*'|'/') expr | expr '^' int | '-' expr
//!          | integer | ident | jet | 'exp(' linear ')' | ident '(' args ')'
//!          | 'D[' ident (',' param)* ']' ( '(' args ')' )?
//! ```
//!
//! Jets are written `u_x`, `u_xt`, ... for a declared dependent `u`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Context, Expr, ExprError, JetCoord, LinearForm, Rational, SymbolKind};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer;

impl Lexer {
    fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
        let bytes: Vec<(usize, char)> = text.char_indices().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let (pos, ch) = bytes[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = bytes[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Num(digits.parse().expect("ascii digits")), pos));
            } else if ch.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && is_ident_char(bytes[i].1) {
                    i += 1;
                }
                // jet suffix: `_` followed by letters
                if i + 1 < bytes.len() && bytes[i].1 == '_' && bytes[i + 1].1.is_ascii_alphabetic()
                {
                    i += 1;
                    while i < bytes.len() && bytes[i].1.is_ascii_alphabetic() {
                        i += 1;
                    }
                }
                let word: String = bytes[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Ident(word), pos));
            } else if "+-*/^()[],".contains(ch) {
                out.push((Tok::Op(ch), pos));
                i += 1;
            } else {
                return Err(ExprError::Syntax {
                    pos,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        Ok(out)
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '\''
}

struct Parser<'a> {
    ctx: &'a Context,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

pub(super) fn parse(ctx: &Context, text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        ctx,
        toks: Lexer::lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr(0)?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn error(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ExprError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{op}`")))
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ExprError> {
        let mut lhs = self.prefix()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c)) if "+-*/^".contains(*c) => *c,
                _ => break,
            };
            let (l_bp, r_bp) = match op {
                '+' | '-' => (1, 2),
                '*' | '/' => (3, 4),
                _ => (7, 6),
            };
            if l_bp < min_bp {
                break;
            }
            self.pos += 1;
            let at = self.offset();
            let rhs = self.expr(r_bp)?;
            lhs = match op {
                '+' => lhs + rhs,
                '-' => lhs - rhs,
                '*' => lhs * rhs,
                '/' => lhs.div(&rhs)?,
                _ => {
                    let k = rhs.as_integer().ok_or_else(|| ExprError::Syntax {
                        pos: at,
                        msg: format!("exponent must be an integer, found `{rhs}`"),
                    })?;
                    lhs.pow(k)?
                }
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ExprError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::constant(Rational::from_integer(n))),
            Some(Tok::Op('-')) => Ok(-self.expr(5)?),
            Some(Tok::Op('(')) => {
                let e = self.expr(0)?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(word)) => self.ident(&word, at),
            Some(_) => Err(ExprError::Syntax {
                pos: at,
                msg: "unexpected token".into(),
            }),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>, ExprError> {
        self.expect('(')?;
        let mut args = vec![self.expr(0)?];
        while self.eat(',') {
            args.push(self.expr(0)?);
        }
        self.expect(')')?;
        Ok(args)
    }

    fn ident(&mut self, word: &str, at: usize) -> Result<Expr, ExprError> {
        if word == "exp" && self.peek() == Some(&Tok::Op('(')) {
            self.pos += 1;
            let arg = self.expr(0)?;
            self.expect(')')?;
            return Ok(Expr::exp(LinearForm::from_expr(&arg)?));
        }
        if word == "D" && self.peek() == Some(&Tok::Op('[')) {
            self.pos += 1;
            return self.derivative();
        }
        if let Some(sym) = self.ctx.get(word) {
            return match &sym.kind {
                SymbolKind::Function { params } => {
                    let args = self.args()?;
                    check_arity(word, params.len(), args.len())?;
                    let params: Vec<&str> = params.iter().map(|p| &**p).collect();
                    Ok(Expr::func(word, &params, args))
                }
                _ => Ok(Expr::sym(word)),
            };
        }
        if let Some((base, suffix)) = word.split_once('_') {
            if let Some(vars) = self.ctx.dependent_vars(base) {
                let mut counts = vec![0u32; vars.len()];
                for ch in suffix.chars() {
                    let slot = vars
                        .iter()
                        .position(|v| v.len() == 1 && v.starts_with(ch))
                        .ok_or_else(|| ExprError::Syntax {
                            pos: at,
                            msg: format!("`{base}` does not depend on `{ch}`"),
                        })?;
                    counts[slot] += 1;
                }
                let pairs: Vec<(&str, u32)> =
                    vars.iter().map(|v| &**v).zip(counts).collect();
                return Ok(Expr::jet(JetCoord::new(base, &pairs)));
            }
        }
        Err(ExprError::UnknownSymbol(word.to_string()))
    }

    fn derivative(&mut self) -> Result<Expr, ExprError> {
        let fname = match self.next() {
            Some(Tok::Ident(w)) => w,
            _ => return Err(self.error("expected function name after `D[`")),
        };
        let params = match self.ctx.get(&fname).map(|s| &s.kind) {
            Some(SymbolKind::Function { params }) => params.clone(),
            Some(_) => return Err(self.error(&format!("`{fname}` is not a function"))),
            None => return Err(ExprError::UnknownSymbol(fname)),
        };
        let mut derivs = vec![0u32; params.len()];
        while self.eat(',') {
            let at = self.offset();
            match self.next() {
                Some(Tok::Ident(p)) => {
                    let slot = params.iter().position(|q| **q == *p).ok_or_else(|| {
                        ExprError::Syntax {
                            pos: at,
                            msg: format!("`{fname}` has no parameter `{p}`"),
                        }
                    })?;
                    derivs[slot] += 1;
                }
                Some(Tok::Num(n)) if !n.is_zero() && n <= BigInt::from(params.len()) => {
                    let slot: usize = n.to_string().parse::<usize>().unwrap() - 1;
                    derivs[slot] += 1;
                }
                _ => return Err(self.error("expected parameter name")),
            }
        }
        self.expect(']')?;
        let args = if self.peek() == Some(&Tok::Op('(')) {
            let args = self.args()?;
            check_arity(&fname, params.len(), args.len())?;
            args
        } else {
            params.iter().map(|p| Expr::sym(p)).collect()
        };
        let params: Vec<&str> = params.iter().map(|p| &**p).collect();
        Ok(Expr::func_deriv(&fname, &params, derivs, args))
    }
}

fn check_arity(name: &str, expected: usize, found: usize) -> Result<(), ExprError> {
    if expected == found {
        Ok(())
    } else {
        Err(ExprError::Arity {
            name: name.to_string(),
            expected,
            found,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ratio, Atom};
    use super::*;

    fn ctx() -> Context {
        Context::new()
            .coordinate("x")
            .unwrap()
            .coordinate("t")
            .unwrap()
            .coordinate("u")
            .unwrap()
            .dependent("u", &["x", "t"])
            .unwrap()
            .function("f", &["x", "u"])
            .unwrap()
    }

    #[test]
    fn product_with_function_and_jet() {
        let e = ctx().parse("f(x,u)*u_x^2").unwrap();
        let (m, c) = e.as_monomial().unwrap();
        assert_eq!(*c, ratio(1, 1));
        let atoms: Vec<_> = m.factors().collect();
        assert_eq!(atoms.len(), 2);
        assert!(matches!(atoms[0].0, Atom::Func(_)));
        assert_eq!(atoms[1].1, 2);
        assert_eq!(e.to_string(), "f(x,u)*u_x^2");
    }

    #[test]
    fn zero_term_dropped() {
        let c = ctx();
        assert_eq!(c.parse("u*exp(-x) + 0*t").unwrap(), c.parse("u*exp(-x)").unwrap());
        assert_eq!(c.parse("u*exp(-x) + 0*t").unwrap().len(), 1);
    }

    #[test]
    fn lowest_terms() {
        let e = ctx().parse("2/4 * u_xx").unwrap();
        assert_eq!(*e.as_monomial().unwrap().1, ratio(1, 2));
        assert_eq!(e.to_string(), "1/2*u_xx");
    }

    #[test]
    fn mixed_jets_are_symmetric() {
        let c = ctx();
        assert_eq!(c.parse("u_tx").unwrap(), c.parse("u_xt").unwrap());
        assert_eq!(c.parse("u_tx").unwrap().to_string(), "u_xt");
    }

    #[test]
    fn precedence() {
        let c = ctx();
        assert_eq!(c.parse("-x^2").unwrap(), -c.parse("x*x").unwrap());
        assert_eq!(c.parse("2^3^2").unwrap(), Expr::int(512));
        assert_eq!(c.parse("u^-2*u^2").unwrap(), Expr::one());
        assert_eq!(c.parse("1 - x - t").unwrap(), c.parse("1 - (x + t)").unwrap());
    }

    #[test]
    fn errors() {
        let c = ctx();
        assert!(matches!(c.parse("x +"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(c.parse("y"), Err(ExprError::UnknownSymbol(_))));
        assert!(matches!(c.parse("f(x)"), Err(ExprError::Arity { .. })));
        assert!(matches!(c.parse("exp(x^2)"), Err(ExprError::NonLinearExponent(_))));
        assert!(matches!(c.parse("x^(1/2)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(c.parse("x # 2"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(c.parse("u_y"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn derivative_notation() {
        let c = ctx();
        let e = c.parse("D[f,x,u]").unwrap();
        assert_eq!(e, c.parse("D[f,u,x](x,u)").unwrap());
        assert_eq!(e.to_string(), "D[f,x,u]");
        assert_eq!(c.parse("D[f,x](t,u)").unwrap().to_string(), "D[f,x](t,u)");
    }
}
