//! Differentiation and substitution.

use super::{Expr, FuncApp, Rat};
use num_traits::One;
use std::collections::BTreeMap;
use thiserror::Error;

/// Concrete definition of a function symbol: a body over the formal
/// arguments `arg1 .. argN`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncDef {
    pub arity: usize,
    pub body: Expr,
}

impl FuncDef {
    pub fn new(arity: usize, body: Expr) -> Self {
        FuncDef { arity, body }
    }

    pub fn formal_arg(i: usize) -> String {
        format!("arg{}", i + 1)
    }

    /// The partial derivative of the body prescribed by a multi-index.
    pub fn derived_body(&self, index: &[u32]) -> Expr {
        let mut body = self.body.clone();
        for (i, &k) in index.iter().enumerate() {
            let formal = Self::formal_arg(i);
            for _ in 0..k {
                body = body.diff(&formal);
            }
        }
        body
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstError {
    #[error(
        "function '{name}' is defined with arity {expected} but applied to {found} argument(s)"
    )]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
}

/// Simultaneous replacement of symbols and function symbols.
#[derive(Debug, Clone, Default)]
pub struct SubstMap {
    pub symbols: BTreeMap<String, Expr>,
    pub functions: BTreeMap<String, FuncDef>,
}

impl SubstMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sym(mut self, name: &str, value: Expr) -> Self {
        self.symbols.insert(name.to_string(), value);
        self
    }

    pub fn func(mut self, name: &str, def: FuncDef) -> Self {
        self.functions.insert(name.to_string(), def);
        self
    }
}

impl Expr {
    /// Partial derivative with respect to a symbol. The chain rule through a
    /// function application increments the multi-index position of each
    /// argument; `d/ds ln|g| = g'/g`.
    pub fn diff(&self, var: &str) -> Expr {
        match self {
            Expr::Rational(_) => Expr::zero(),
            Expr::Symbol(s) => {
                if s == var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::LnAbs(g) => g.diff(var) * g.as_ref().clone().powi(-1),
            Expr::Func(app) => {
                let mut terms = Vec::new();
                for (i, arg) in app.args.iter().enumerate() {
                    let darg = arg.diff(var);
                    if darg.is_zero_expr() {
                        continue;
                    }
                    let mut index = app.index.clone();
                    index[i] += 1;
                    let partial = Expr::Func(FuncApp {
                        name: app.name.clone(),
                        index,
                        args: app.args.clone(),
                    });
                    terms.push(partial * darg);
                }
                Expr::add(terms)
            }
            Expr::Power(base, exp) => {
                let dbase = base.diff(var);
                if dbase.is_zero_expr() {
                    return Expr::zero();
                }
                let down = Expr::pow(base.as_ref().clone(), exp.clone() - Rat::one());
                Expr::Rational(exp.clone()) * down * dbase
            }
            Expr::Product(factors) => {
                let mut terms = Vec::new();
                for (i, fi) in factors.iter().enumerate() {
                    let dfi = fi.diff(var);
                    if dfi.is_zero_expr() {
                        continue;
                    }
                    let mut rest: Vec<Expr> = Vec::with_capacity(factors.len());
                    rest.push(dfi);
                    for (j, fj) in factors.iter().enumerate() {
                        if j != i {
                            rest.push(fj.clone());
                        }
                    }
                    terms.push(Expr::mul(rest));
                }
                Expr::add(terms)
            }
            Expr::Sum(terms) => Expr::add(terms.iter().map(|t| t.diff(var)).collect()),
        }
    }

    /// Derivative iterated `n` times.
    pub fn diff_n(&self, var: &str, n: u32) -> Expr {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.diff(var);
        }
        e
    }

    /// Simultaneous substitution followed by canonicalization.
    ///
    /// Replacing a function symbol by a concrete definition first takes the
    /// multi-index partials of the definition, then replaces the formal
    /// arguments by the (already substituted) actual arguments. Replacement
    /// expressions are not re-substituted.
    pub fn substitute(&self, map: &SubstMap) -> Result<Expr, SubstError> {
        match self {
            Expr::Rational(_) => Ok(self.clone()),
            Expr::Symbol(s) => Ok(map.symbols.get(s).cloned().unwrap_or_else(|| self.clone())),
            Expr::LnAbs(g) => Ok(Expr::lnabs(g.substitute(map)?)),
            Expr::Func(app) => {
                let args = app
                    .args
                    .iter()
                    .map(|a| a.substitute(map))
                    .collect::<Result<Vec<_>, _>>()?;
                match map.functions.get(&app.name) {
                    None => Ok(Expr::Func(FuncApp {
                        name: app.name.clone(),
                        index: app.index.clone(),
                        args,
                    })),
                    Some(def) => {
                        if def.arity != args.len() {
                            return Err(SubstError::ArityMismatch {
                                name: app.name.clone(),
                                expected: def.arity,
                                found: args.len(),
                            });
                        }
                        let body = def.derived_body(&app.index);
                        let mut formals = SubstMap::new();
                        for (i, a) in args.into_iter().enumerate() {
                            formals.symbols.insert(FuncDef::formal_arg(i), a);
                        }
                        body.substitute(&formals)
                    }
                }
            }
            Expr::Power(base, exp) => Ok(Expr::pow(base.substitute(map)?, exp.clone())),
            Expr::Product(fs) => Ok(Expr::mul(
                fs.iter()
                    .map(|f| f.substitute(map))
                    .collect::<Result<Vec<_>, _>>()?,
            )),
            Expr::Sum(ts) => Ok(Expr::add(
                ts.iter()
                    .map(|t| t.substitute(map))
                    .collect::<Result<Vec<_>, _>>()?,
            )),
        }
    }

    /// Substitution of plain symbols only (infallible).
    pub fn subst_symbols(&self, symbols: &BTreeMap<String, Expr>) -> Expr {
        let map = SubstMap {
            symbols: symbols.clone(),
            functions: BTreeMap::new(),
        };
        self.substitute(&map)
            .expect("symbol substitution cannot fail")
    }

    /// Replaces one symbol.
    pub fn subst_symbol(&self, name: &str, value: &Expr) -> Expr {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), value.clone());
        self.subst_symbols(&m)
    }
}
