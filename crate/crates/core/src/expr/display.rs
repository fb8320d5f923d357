//! Canonical text form. The output is valid input for the expression
//! grammar and parses back to the same normal form.

use core::fmt::{self, Display, Formatter, Write};

use num_traits::{One, Signed};

use super::{Atom, Expression, Jet, Monomial};

impl Display for Jet {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if *self == Jet::U {
            f.write_char('u')
        } else {
            write!(f, "u[{},{}]", self.shift, self.order)
        }
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("Dinv(")?;
        write_factors(f, self.core())?;
        f.write_char(')')
    }
}

fn power(f: &mut Formatter<'_>, e: u32) -> fmt::Result {
    if e != 1 {
        write!(f, "^{e}")?;
    }
    Ok(())
}

/// Writes the non-coefficient factors joined by `*`; returns whether anything was written.
fn write_factors(f: &mut Formatter<'_>, m: &Monomial) -> Result<bool, fmt::Error> {
    let mut first = true;
    let mut sep = |f: &mut Formatter<'_>| -> fmt::Result {
        if !first {
            f.write_char('*')?;
        }
        first = false;
        Ok(())
    };
    if m.xdeg() > 0 {
        sep(f)?;
        f.write_char('x')?;
        power(f, m.xdeg())?;
    }
    if m.ndeg() > 0 {
        sep(f)?;
        f.write_char('n')?;
        power(f, m.ndeg())?;
    }
    for (j, e) in m.jets() {
        sep(f)?;
        write!(f, "{j}")?;
        power(f, *e)?;
    }
    for (a, e) in m.atoms() {
        sep(f)?;
        write!(f, "{a}")?;
        power(f, *e)?;
    }
    Ok(!first)
}

/// Writes `|coeff| * factors`.
fn write_unsigned(f: &mut Formatter<'_>, m: &Monomial) -> fmt::Result {
    let c = m.coeff().abs();
    let has_factors = m.xdeg() > 0 || m.ndeg() > 0 || !m.is_scalar();
    if !c.is_one() || !has_factors {
        write!(f, "{c}")?;
        if has_factors {
            f.write_char('*')?;
        }
    }
    write_factors(f, m)?;
    Ok(())
}

impl Display for Monomial {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.coeff().is_negative() {
            f.write_char('-')?;
        }
        write_unsigned(f, self)
    }
}

impl Display for Expression {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let Some((head, tail)) = self.terms().split_first() else {
            return f.write_char('0');
        };
        write!(f, "{head}")?;
        for t in tail {
            f.write_str(if t.coeff().is_negative() {
                " - "
            } else {
                " + "
            })?;
            write_unsigned(f, t)?;
        }
        Ok(())
    }
}
