//! Minimal computer-algebra kernel.
//!
//! Expressions are immutable trees over exact rationals, symbols, abstract
//! function applications (with a derivative multi-index) and `ln|·|` nodes.
//! Every constructor canonicalizes, so two expressions are equal as values
//! iff they are equal as trees. The canonical form is expanded: products
//! distribute over sums and positive integer powers of sums are multiplied
//! out, while negative powers of non-atomic bases stay opaque.

mod calculus;
mod eval;
mod parse;
mod print;
mod zero;

pub use calculus::{FuncDef, SubstError, SubstMap};
pub use eval::{Binding, EvalError, Value};
pub use parse::{parse, parse_with, FuncDecls, ParseError};
pub use zero::{
    draw_rational, is_zero, is_zero_with, ParamSampler, Witness, ZeroKind, ZeroPolicy, ZeroVerdict,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub type Rat = BigRational;

/// Exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A symbolic expression in canonical form.
///
/// Variant declaration order fixes the total order used for term and factor
/// sorting: constants < symbols < ln-abs < function applications < powers <
/// products < sums.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Expr {
    Rational(Rat),
    Symbol(String),
    LnAbs(Box<Expr>),
    Func(FuncApp),
    Power(Box<Expr>, Rat),
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
}

/// Application of an abstract function symbol, possibly differentiated.
///
/// `index[i]` counts partial derivatives with respect to argument `i`;
/// mixed partials commute, so the multi-index alone identifies the
/// derivative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FuncApp {
    pub name: String,
    pub index: Vec<u32>,
    pub args: Vec<Expr>,
}

const MAX_SUM_EXPANSION: i64 = 64;

impl Expr {
    pub fn zero() -> Expr {
        Expr::Rational(Rat::zero())
    }

    pub fn one() -> Expr {
        Expr::Rational(Rat::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Rational(Rat::from(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Expr {
        Expr::Rational(rat(num, den))
    }

    pub fn rational(r: Rat) -> Expr {
        Expr::Rational(r)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Symbol(name.to_string())
    }

    pub fn lnabs(arg: Expr) -> Expr {
        // ln|1| = 0 is the only fold we apply; other constant arguments stay
        // symbolic so that exact pipelines never produce floats.
        if arg == Expr::one() {
            return Expr::zero();
        }
        Expr::LnAbs(Box::new(arg))
    }

    /// Undifferentiated application of a function symbol.
    pub fn func(name: &str, args: Vec<Expr>) -> Expr {
        let index = vec![0; args.len()];
        Expr::Func(FuncApp {
            name: name.to_string(),
            index,
            args,
        })
    }

    /// Application of a partial derivative of a function symbol.
    pub fn func_deriv(name: &str, index: Vec<u32>, args: Vec<Expr>) -> Expr {
        assert_eq!(
            index.len(),
            args.len(),
            "multi-index length must equal arity"
        );
        Expr::Func(FuncApp {
            name: name.to_string(),
            index,
            args,
        })
    }

    pub fn add(terms: Vec<Expr>) -> Expr {
        let mut acc: BTreeMap<Expr, Rat> = BTreeMap::new();
        let mut stack = terms;
        stack.reverse();
        while let Some(t) = stack.pop() {
            match t {
                Expr::Sum(inner) => {
                    for s in inner.into_iter().rev() {
                        stack.push(s);
                    }
                }
                other => {
                    let (coeff, mono) = split_coeff(other);
                    let slot = acc.entry(mono).or_insert_with(Rat::zero);
                    *slot += coeff;
                }
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(acc.len());
        for (mono, coeff) in acc {
            if coeff.is_zero() {
                continue;
            }
            out.push(attach_coeff(coeff, mono));
        }
        out.sort();
        match out.len() {
            0 => Expr::zero(),
            1 => out.into_iter().next().unwrap(),
            _ => Expr::Sum(out),
        }
    }

    pub fn mul(factors: Vec<Expr>) -> Expr {
        factors.into_iter().fold(Expr::one(), mul2)
    }

    pub fn neg(self) -> Expr {
        mul2(Expr::int(-1), self)
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::add(vec![self, rhs.neg()])
    }

    pub fn div(self, rhs: Expr) -> Expr {
        mul2(self, Expr::pow(rhs, rat(-1, 1)))
    }

    pub fn powi(self, exp: i64) -> Expr {
        Expr::pow(self, Rat::from(BigInt::from(exp)))
    }

    pub fn pow(base: Expr, exp: Rat) -> Expr {
        if exp.is_zero() {
            // 0^0 = 1 by convention; evaluation never reaches this case
            // because the node is folded away here.
            return Expr::one();
        }
        if exp.is_one() {
            return base;
        }
        match base {
            Expr::Rational(r) => {
                if exp.is_integer() {
                    if let Some(k) = exp.to_integer().to_i64() {
                        if r.is_zero() && k < 0 {
                            // Degenerate 1/0: keep the node; evaluation reports it.
                            return Expr::Power(Box::new(Expr::Rational(r)), exp);
                        }
                        return Expr::Rational(rat_pow(&r, k));
                    }
                }
                Expr::Power(Box::new(Expr::Rational(r)), exp)
            }
            Expr::Power(inner, inner_exp) => Expr::pow(*inner, inner_exp * exp),
            Expr::Product(factors) => {
                if exp.is_integer() {
                    Expr::mul(
                        factors
                            .into_iter()
                            .map(|f| Expr::pow(f, exp.clone()))
                            .collect(),
                    )
                } else {
                    Expr::Power(Box::new(Expr::Product(factors)), exp)
                }
            }
            Expr::Sum(terms) => {
                let n = if exp.is_integer() {
                    exp.to_integer().to_i64()
                } else {
                    None
                };
                match n {
                    Some(k) if k > 1 && k <= MAX_SUM_EXPANSION => {
                        // Multiply out term by term; sum terms are monomials,
                        // so the products below never re-enter this branch
                        // with the same base.
                        let mut acc = terms.clone();
                        for _ in 1..k {
                            let mut next = Vec::with_capacity(acc.len() * terms.len());
                            for t1 in &acc {
                                for t2 in &terms {
                                    next.push(mul2(t1.clone(), t2.clone()));
                                }
                            }
                            acc = vec![Expr::add(next)];
                        }
                        Expr::add(acc)
                    }
                    _ => Expr::Power(Box::new(Expr::Sum(terms)), exp),
                }
            }
            atom => Expr::Power(Box::new(atom), exp),
        }
    }

    /// Re-canonicalizes an expression. Constructors already keep every value
    /// canonical, so this is the identity; it exists as the public face of
    /// the canonical form and is used by tests as such.
    pub fn simplify(&self) -> Expr {
        self.clone()
    }

    pub fn is_zero_expr(&self) -> bool {
        matches!(self, Expr::Rational(r) if r.is_zero())
    }

    pub fn is_one_expr(&self) -> bool {
        matches!(self, Expr::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Expr::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// All free scalar symbols.
    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Symbol(s) = e {
                out.insert(s.clone());
            }
        });
        out
    }

    /// Names of function symbols applied anywhere in the tree.
    pub fn func_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Func(f) = e {
                out.insert(f.name.clone());
            }
        });
        out
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        let mut found = false;
        self.walk(&mut |e| {
            if let Expr::Symbol(s) = e {
                if s == name {
                    found = true;
                }
            }
        });
        found
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Rational(_) | Expr::Symbol(_) => {}
            Expr::LnAbs(a) => a.walk(f),
            Expr::Func(app) => {
                for a in &app.args {
                    a.walk(f);
                }
            }
            Expr::Power(b, _) => b.walk(f),
            Expr::Product(fs) => {
                for x in fs {
                    x.walk(f);
                }
            }
            Expr::Sum(ts) => {
                for t in ts {
                    t.walk(f);
                }
            }
        }
    }

    /// Terms of the expression viewed as a sum (a non-sum is one term).
    pub fn sum_terms(&self) -> Vec<Expr> {
        match self {
            Expr::Sum(ts) => ts.clone(),
            other => vec![other.clone()],
        }
    }

    /// Splits off the rational coefficient of a term.
    pub fn coefficient_split(&self) -> (Rat, Expr) {
        split_coeff(self.clone())
    }

    /// Multiplies every term through by enough positive powers of the bases
    /// appearing with negative exponents to remove them. The result vanishes
    /// identically only where the original does (away from poles), so a zero
    /// numerator is a sound symbolic-zero certificate.
    pub fn cleared_numerator(&self) -> Expr {
        let terms = self.sum_terms();
        let mut need: BTreeMap<Expr, BigInt> = BTreeMap::new();
        for t in &terms {
            for f in t.product_factors() {
                if let Expr::Power(base, exp) = &f {
                    if exp.is_integer() && exp.is_negative() {
                        let k = -exp.to_integer();
                        let slot = need.entry((**base).clone()).or_insert_with(BigInt::zero);
                        if *slot < k {
                            *slot = k;
                        }
                    }
                }
            }
        }
        if need.is_empty() {
            return self.clone();
        }
        let multiplier: Vec<Expr> = need
            .into_iter()
            .map(|(base, k)| Expr::pow(base, Rat::from(k)))
            .collect();
        let cleared: Vec<Expr> = terms
            .into_iter()
            .map(|t| {
                let mut fs = multiplier.clone();
                fs.push(t);
                Expr::mul(fs)
            })
            .collect();
        Expr::add(cleared)
    }

    /// Factors of the expression viewed as a product (a non-product is one
    /// factor).
    pub fn product_factors(&self) -> Vec<Expr> {
        match self {
            Expr::Product(fs) => fs.clone(),
            other => vec![other.clone()],
        }
    }
}

pub(crate) fn rat_pow(r: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mag = r.pow(k.unsigned_abs().try_into().expect("exponent fits u32"));
    if k < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// (coefficient, monomial) decomposition of a canonical term.
fn split_coeff(e: Expr) -> (Rat, Expr) {
    match e {
        Expr::Rational(r) => (r, Expr::one()),
        Expr::Product(fs) => {
            let mut coeff = Rat::one();
            let mut rest: Vec<Expr> = Vec::with_capacity(fs.len());
            for f in fs {
                match f {
                    Expr::Rational(r) => coeff *= r,
                    other => rest.push(other),
                }
            }
            let mono = match rest.len() {
                0 => Expr::one(),
                1 => rest.into_iter().next().unwrap(),
                _ => Expr::Product(rest),
            };
            (coeff, mono)
        }
        other => (Rat::one(), other),
    }
}

fn attach_coeff(coeff: Rat, mono: Expr) -> Expr {
    if mono.is_one_expr() {
        return Expr::Rational(coeff);
    }
    if coeff.is_one() {
        return mono;
    }
    let mut fs = vec![Expr::Rational(coeff)];
    match mono {
        Expr::Product(inner) => fs.extend(inner),
        other => fs.push(other),
    }
    Expr::Product(fs)
}

/// Base/exponent view of a canonical factor.
fn factor_parts(f: Expr) -> (Expr, Rat) {
    match f {
        Expr::Power(base, exp) => (*base, exp),
        atom => (atom, Rat::one()),
    }
}

fn mul2(a: Expr, b: Expr) -> Expr {
    if a.is_zero_expr() || b.is_zero_expr() {
        return Expr::zero();
    }
    if a.is_one_expr() {
        return b;
    }
    if b.is_one_expr() {
        return a;
    }
    match (a, b) {
        (Expr::Rational(x), Expr::Rational(y)) => Expr::Rational(x * y),
        (Expr::Sum(ts), other) | (other, Expr::Sum(ts)) => {
            // A sum multiplied by a monomial first cancels against matching
            // (inverse) powers of the whole sum, then distributes.
            let mut sum_exp = Rat::one();
            let mut residue: Vec<Expr> = Vec::new();
            let sum = Expr::Sum(ts);
            for part in other.product_factors() {
                let (base, exp) = factor_parts(part);
                if base == sum {
                    sum_exp += exp;
                } else {
                    residue.push(Expr::pow(base, exp));
                }
            }
            let rest = Expr::mul(residue);
            let lead = Expr::pow(sum.clone(), sum_exp.clone());
            match lead {
                Expr::Sum(terms) if sum_exp.is_one() => Expr::add(
                    terms
                        .into_iter()
                        .map(|t| mul2(t, rest.clone()))
                        .collect::<Vec<_>>(),
                ),
                other_lead => mul2(other_lead, rest),
            }
        }
        (x, y) => {
            let mut coeff = Rat::one();
            let mut powers: BTreeMap<Expr, Rat> = BTreeMap::new();
            for part in x.product_factors().into_iter().chain(y.product_factors()) {
                match part {
                    Expr::Rational(r) => coeff *= r,
                    other => {
                        let (base, exp) = factor_parts(other);
                        let slot = powers.entry(base).or_insert_with(Rat::zero);
                        *slot += exp;
                    }
                }
            }
            if coeff.is_zero() {
                return Expr::zero();
            }
            let mut sums: Vec<Expr> = Vec::new();
            let mut factors: Vec<Expr> = Vec::new();
            for (base, exp) in powers {
                if exp.is_zero() {
                    continue;
                }
                let f = Expr::pow(base, exp);
                match f {
                    Expr::Rational(r) => coeff *= r,
                    Expr::Sum(_) => sums.push(f),
                    Expr::Product(inner) => {
                        // Exponent distribution over a product may itself
                        // hand back a product; keep the factor list flat.
                        for g in inner {
                            match g {
                                Expr::Rational(r) => coeff *= r,
                                Expr::Sum(_) => sums.push(g),
                                o => factors.push(o),
                            }
                        }
                    }
                    other => factors.push(other),
                }
            }
            if coeff.is_zero() {
                return Expr::zero();
            }
            if !coeff.is_one() {
                factors.push(Expr::Rational(coeff));
            }
            factors.sort();
            let flat = match factors.len() {
                0 => Expr::one(),
                1 => factors.into_iter().next().unwrap(),
                _ => Expr::Product(factors),
            };
            sums.into_iter().fold(flat, mul2)
        }
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::add(vec![self, rhs])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sub(self, rhs)
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        mul2(self, rhs)
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::div(self, rhs)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}
