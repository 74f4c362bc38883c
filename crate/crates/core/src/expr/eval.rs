//! Numeric evaluation under a binding of symbols and function symbols.

use super::{Expr, FuncDef, Rat, SubstMap};
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Exact rational where possible, float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rat),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Float(x) => *x == 0.0,
        }
    }

    fn add(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            (a, b) => Value::Float(a.to_f64() + b.to_f64()),
        }
    }

    fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            (a, b) => Value::Float(a.to_f64() * b.to_f64()),
        }
    }
}

impl From<Rat> for Value {
    fn from(r: Rat) -> Self {
        Value::Exact(r)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("unbound symbol '{0}'")]
    UnboundSymbol(String),
    #[error("unbound function symbol '{0}'")]
    UnboundFunction(String),
    #[error("function '{name}' arity mismatch: defined {expected}, applied to {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("lnabs of zero")]
    LnAbsZero,
    #[error("domain error: {0}")]
    Domain(String),
}

/// Values for scalar symbols plus concrete definitions for function symbols.
#[derive(Debug, Clone, Default)]
pub struct Binding {
    pub scalars: BTreeMap<String, Value>,
    pub functions: BTreeMap<String, FuncDef>,
}

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, name: &str, v: impl Into<Value>) -> Self {
        self.scalars.insert(name.to_string(), v.into());
        self
    }

    pub fn set_func(mut self, name: &str, def: FuncDef) -> Self {
        self.functions.insert(name.to_string(), def);
        self
    }
}

impl Expr {
    /// Evaluates the expression. The result is exact whenever every input is
    /// exact and no `ln|·|` node survives; floats appear otherwise.
    pub fn eval(&self, binding: &Binding) -> Result<Value, EvalError> {
        match self {
            Expr::Rational(r) => Ok(Value::Exact(r.clone())),
            Expr::Symbol(s) => binding
                .scalars
                .get(s)
                .cloned()
                .ok_or_else(|| EvalError::UnboundSymbol(s.clone())),
            Expr::LnAbs(g) => {
                let v = g.eval(binding)?;
                if v.is_zero() {
                    return Err(EvalError::LnAbsZero);
                }
                Ok(Value::Float(v.to_f64().abs().ln()))
            }
            Expr::Func(app) => {
                let def = binding
                    .functions
                    .get(&app.name)
                    .ok_or_else(|| EvalError::UnboundFunction(app.name.clone()))?;
                if def.arity != app.args.len() {
                    return Err(EvalError::ArityMismatch {
                        name: app.name.clone(),
                        expected: def.arity,
                        found: app.args.len(),
                    });
                }
                let body = def.derived_body(&app.index);
                let mut inner = binding.clone();
                for (i, a) in app.args.iter().enumerate() {
                    let v = a.eval(binding)?;
                    inner.scalars.insert(FuncDef::formal_arg(i), v);
                }
                body.eval(&inner)
            }
            Expr::Power(base, exp) => {
                let b = base.eval(binding)?;
                if exp.is_integer() {
                    let k = exp
                        .to_integer()
                        .to_i64()
                        .ok_or_else(|| EvalError::Domain("exponent overflow".into()))?;
                    match b {
                        Value::Exact(r) => {
                            if r.is_zero() && k < 0 {
                                return Err(EvalError::DivisionByZero);
                            }
                            Ok(Value::Exact(super::rat_pow(&r, k)))
                        }
                        Value::Float(x) => {
                            if x == 0.0 && k < 0 {
                                return Err(EvalError::DivisionByZero);
                            }
                            Ok(Value::Float(x.powi(k as i32)))
                        }
                    }
                } else {
                    let x = b.to_f64();
                    let e = exp.to_f64().unwrap();
                    if x < 0.0 {
                        return Err(EvalError::Domain(format!(
                            "negative base {x} under fractional exponent"
                        )));
                    }
                    if x == 0.0 && e < 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    Ok(Value::Float(x.powf(e)))
                }
            }
            Expr::Product(fs) => {
                let mut acc = Value::Exact(Rat::from_integer(1.into()));
                for f in fs {
                    acc = acc.mul(f.eval(binding)?);
                }
                Ok(acc)
            }
            Expr::Sum(ts) => {
                let mut acc = Value::Exact(Rat::zero());
                for t in ts {
                    acc = acc.add(t.eval(binding)?);
                }
                Ok(acc)
            }
        }
    }

    /// Evaluates to a float, binding symbols from an `f64` map.
    pub fn eval_f64(
        &self,
        scalars: &BTreeMap<String, f64>,
        funcs: &SubstMap,
    ) -> Result<f64, EvalError> {
        let mut b = Binding::new();
        for (k, v) in scalars {
            b.scalars.insert(k.clone(), Value::Float(*v));
        }
        b.functions = funcs.functions.clone();
        Ok(self.eval(&b)?.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn coplanarity_intercept_value() {
        // 1 - (3/5*1*1)/((4/5)*2) = 5/8, the Fig. 1 intercept.
        let e = parse("1 - (3/5*x0*z0)/(a*Phi0)").unwrap();
        let b = Binding::new()
            .set("x0", super::super::rat(1, 1))
            .set("z0", super::super::rat(1, 1))
            .set("a", super::super::rat(4, 5))
            .set("Phi0", super::super::rat(2, 1));
        assert_eq!(e.eval(&b).unwrap(), Value::Exact(super::super::rat(5, 8)));
    }

    #[test]
    fn zero_evaluates_anywhere() {
        assert_eq!(
            Expr::zero().eval(&Binding::new()).unwrap(),
            Value::Exact(Rat::zero())
        );
    }

    #[test]
    fn function_value_ratio() {
        // z0 / Phi(z0, y0) with z0 = 2, Phi = arg1 + arg2, y0 = 2 -> 1/2.
        let e = parse("z0 / Phi(z0, y0)").unwrap();
        let b = Binding::new()
            .set("z0", super::super::rat(2, 1))
            .set("y0", super::super::rat(2, 1))
            .set_func("Phi", FuncDef::new(2, parse("arg1 + arg2").unwrap()));
        assert_eq!(e.eval(&b).unwrap(), Value::Exact(super::super::rat(1, 2)));
    }

    #[test]
    fn errors() {
        let e = parse("1/x").unwrap();
        let b = Binding::new().set("x", super::super::rat(0, 1));
        assert_eq!(e.eval(&b), Err(EvalError::DivisionByZero));

        let e = parse("lnabs(x)").unwrap();
        assert_eq!(e.eval(&b), Err(EvalError::LnAbsZero));

        let e = parse("y").unwrap();
        assert_eq!(e.eval(&b), Err(EvalError::UnboundSymbol("y".into())));
    }

    #[test]
    fn lnabs_promotes_to_float() {
        let e = parse("lnabs(t)").unwrap();
        let b = Binding::new().set("t", super::super::rat(3, 1));
        match e.eval(&b).unwrap() {
            Value::Float(x) => assert!((x - 3f64.ln()).abs() < 1e-15),
            other => panic!("expected float, got {other:?}"),
        }
    }
}
