//! The equation, its first higher symmetry, the master symmetry and the
//! `sl(2)` triple.

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::dinv::theta;
use crate::error::Error;
use crate::expr::Expression;
use crate::rational::{int, ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BuiltinName {
    /// `u_xx + 2 u u_x + 2 Θ(u_x)`
    K,
    /// First higher symmetry of `K`.
    G3,
    /// Master symmetry.
    W,
    /// `M = K`
    M,
    /// `N = -x/2`
    N,
    /// `H = -x u_x - u`
    H,
    /// `N2 = W`
    N2,
    /// `u_x`
    UX,
}

impl BuiltinName {
    pub const ALL: [BuiltinName; 8] = [
        BuiltinName::K,
        BuiltinName::G3,
        BuiltinName::W,
        BuiltinName::M,
        BuiltinName::N,
        BuiltinName::H,
        BuiltinName::N2,
        BuiltinName::UX,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::K => "K",
            BuiltinName::G3 => "G3",
            BuiltinName::W => "W",
            BuiltinName::M => "M",
            BuiltinName::N => "N",
            BuiltinName::H => "H",
            BuiltinName::N2 => "N2",
            BuiltinName::UX => "UX",
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        BuiltinName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

fn th(e: &Expression) -> Expression {
    theta(e).expect("builtins are quasi-local")
}

pub fn builtin(name: BuiltinName) -> Expression {
    let u = Expression::u(0);
    let ux = Expression::u(1);
    let uxx = Expression::u(2);
    let uxxx = Expression::u(3);
    let x = Expression::x();
    let c = |v: i64, e: &Expression| e.scale(&int(v));
    match name {
        BuiltinName::K | BuiltinName::M => [uxx.clone(), c(2, &(&u * &ux)), c(2, &th(&ux))]
            .into_iter()
            .sum(),
        BuiltinName::G3 => [
            uxxx.clone(),
            c(3, &(&u * &uxx)),
            c(3, &ux.pow(2)),
            c(3, &(&u.pow(2) * &ux)),
            c(3, &th(&(&u * &ux))),
            c(3, &(&ux * &th(&u))),
            c(3, &(&u * &th(&ux))),
            c(3, &th(&th(&ux))),
            c(3, &th(&uxx)),
        ]
        .into_iter()
        .sum(),
        BuiltinName::W | BuiltinName::N2 => [
            &x * &uxx,
            c(2, &(&x * &(&u * &ux))),
            c(2, &(&x * &th(&ux))),
            &Expression::n() * &ux,
            u.pow(2),
            c(3, &th(&u)),
        ]
        .into_iter()
        .sum(),
        BuiltinName::N => x.scale(&ratio(-1, 2)),
        BuiltinName::H => -(&(&x * &ux) + &u),
        BuiltinName::UX => ux,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn names_round_trip() {
        for b in BuiltinName::ALL {
            assert_eq!(b.as_str().parse::<BuiltinName>().unwrap(), b);
        }
        assert!(matches!(
            "Q".parse::<BuiltinName>(),
            Err(Error::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(builtin(BuiltinName::N).to_string(), "-1/2*x");
        assert_eq!(
            builtin(BuiltinName::K).to_string(),
            "u[0,2] + 2*Dinv(u[0,2]) + 2*u*u[0,1]"
        );
        assert_eq!(builtin(BuiltinName::H).to_string(), "-u - x*u[0,1]");
        assert_eq!(builtin(BuiltinName::M), builtin(BuiltinName::K));
        assert_eq!(builtin(BuiltinName::N2), builtin(BuiltinName::W));
        assert_eq!(builtin(BuiltinName::G3).len(), 10);
    }
}
