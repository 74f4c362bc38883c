//! Canonical printer. `parse(print(e)) == e` for every canonical `e`.

use super::{Expr, Rat};
use num_traits::{One, Signed};
use std::fmt;

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    let (coeff, mono) = t.coefficient_split();
                    if coeff.is_negative() {
                        write!(f, "{}", if i == 0 { "-" } else { " - " })?;
                    } else if i > 0 {
                        write!(f, " + ")?;
                    }
                    write_term(f, &coeff.abs(), &mono)?;
                }
                Ok(())
            }
            other => {
                let (coeff, mono) = other.coefficient_split();
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                write_term(f, &coeff.abs(), &mono)
            }
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, coeff: &Rat, mono: &Expr) -> fmt::Result {
    if mono.is_one_expr() {
        return write_rat(f, coeff);
    }
    if !coeff.is_one() {
        write_rat(f, coeff)?;
        write!(f, "*")?;
    }
    match mono {
        Expr::Product(factors) => {
            for (i, x) in factors.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write_factor(f, x)?;
            }
            Ok(())
        }
        other => write_factor(f, other),
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Power(base, exp) => {
            write_base(f, base)?;
            if exp.is_integer() {
                write!(f, "^{}", exp.numer())
            } else {
                write!(f, "^({}/{})", exp.numer(), exp.denom())
            }
        }
        other => write_base(f, other),
    }
}

fn write_base(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Rational(r) => {
            if r.is_integer() && !r.is_negative() {
                write_rat(f, r)
            } else {
                write!(f, "(")?;
                write_rat(f, r)?;
                write!(f, ")")
            }
        }
        Expr::Symbol(s) => write!(f, "{s}"),
        Expr::LnAbs(arg) => write!(f, "lnabs({arg})"),
        Expr::Func(app) => {
            write!(f, "{}", app.name)?;
            if app.index.iter().any(|&k| k > 0) {
                write!(f, "[")?;
                for (i, k) in app.index.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, "]")?;
            }
            write!(f, "(")?;
            for (i, a) in app.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        }
        Expr::Sum(_) | Expr::Product(_) | Expr::Power(..) => write!(f, "({e})"),
    }
}
