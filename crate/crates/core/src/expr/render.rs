use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::{Atom, Expr, FuncApp, JetCoord, LinearForm, Monomial, Rational};

impl fmt::Display for JetCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_", self.dep)?;
        for (v, k) in &self.derivs {
            for _ in 0..*k {
                f.write_str(v)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FuncApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let implicit_args = self
            .args
            .iter()
            .zip(self.params.iter())
            .all(|(a, p)| *a == Expr::sym(p));
        if self.order() == 0 {
            f.write_str(&self.name)?;
        } else {
            write!(f, "D[{}", self.name)?;
            for (p, k) in self.params.iter().zip(&self.derivs) {
                for _ in 0..*k {
                    write!(f, ",{p}")?;
                }
            }
            f.write_char(']')?;
            if implicit_args {
                return Ok(());
            }
        }
        f.write_char('(')?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{a}")?;
        }
        f.write_char(')')
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Sym(n) => f.write_str(n),
            Atom::Jet(j) => write!(f, "{j}"),
            Atom::Func(fa) => write!(f, "{fa}"),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_char('1');
        }
        let mut first = true;
        for (a, k) in self.factors() {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "{a}")?;
            if k != 1 {
                write!(f, "^{k}")?;
            }
        }
        if !self.exp.is_zero() {
            if !first {
                f.write_char('*')?;
            }
            write!(f, "exp({})", self.exp)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rational) -> fmt::Result {
    if m.is_one() {
        return write!(f, "{c}");
    }
    if c.is_one() {
        write!(f, "{m}")
    } else if (-c).is_one() {
        write!(f, "-{m}")
    } else {
        write!(f, "{c}*{m}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i == 0 {
                write_term(f, m, c)?;
            } else if c.is_negative() {
                f.write_str(" - ")?;
                write_term(f, m, &-c)?;
            } else {
                f.write_str(" + ")?;
                write_term(f, m, c)?;
            }
        }
        Ok(())
    }
}
