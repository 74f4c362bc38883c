//! Zero testing: canonical-form certificates plus randomized identity
//! testing over exact rationals.
//!
//! An expression that canonicalizes to the literal zero (possibly after
//! clearing denominators) is symbolically zero. Otherwise scalar symbols are
//! drawn at random rational points and every distinct `ln|·|` node, function
//! application and non-integer power is assigned an independent fresh
//! rational, i.e. treated as an algebraically free variable. This is sound
//! for the expressions of this crate, where function applications with equal
//! arguments share one canonical node; it is a documented limitation for
//! inputs whose vanishing relies on functional relations between distinct
//! argument lists (e.g. logarithm addition laws).

use super::{rat_pow, Expr, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroKind {
    SymbolicZero,
    ProbabilisticZero,
    NonZero,
}

/// A point at which the expression evaluated to a nonzero rational.
#[derive(Debug, Clone)]
pub struct Witness {
    pub scalars: BTreeMap<String, Rat>,
    /// Values assigned to opaque nodes (`ln|·|`, function applications).
    pub atoms: Vec<(Expr, Rat)>,
    pub value: Rat,
}

#[derive(Debug, Clone)]
pub struct ZeroVerdict {
    pub kind: ZeroKind,
    pub witness: Option<Witness>,
    pub samples_used: u32,
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(
            self.kind,
            ZeroKind::SymbolicZero | ZeroKind::ProbabilisticZero
        )
    }

    pub fn kind_str(&self) -> &'static str {
        match self.kind {
            ZeroKind::SymbolicZero => "symbolic-zero",
            ZeroKind::ProbabilisticZero => "probabilistic-zero",
            ZeroKind::NonZero => "nonzero",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ZeroPolicy {
    pub samples: u32,
    pub seed: u64,
    /// Retries per sample when a draw lands on a pole.
    pub max_draw_attempts: u32,
}

impl Default for ZeroPolicy {
    fn default() -> Self {
        ZeroPolicy {
            samples: 20,
            seed: 0,
            max_draw_attempts: 100,
        }
    }
}

impl ZeroPolicy {
    pub fn new(samples: u32, seed: u64) -> Self {
        ZeroPolicy {
            samples,
            seed,
            max_draw_attempts: 100,
        }
    }
}

/// Supplies exact values for constrained symbols (subalgebra parameters on
/// circles and spheres, discrete switches). Symbols it does not cover are
/// drawn independently.
pub type ParamSampler<'a> = &'a dyn Fn(&mut ChaCha8Rng) -> BTreeMap<String, Rat>;

pub fn is_zero(e: &Expr, policy: &ZeroPolicy) -> ZeroVerdict {
    is_zero_with(e, policy, None)
}

pub fn is_zero_with(e: &Expr, policy: &ZeroPolicy, params: Option<ParamSampler>) -> ZeroVerdict {
    if e.is_zero_expr() {
        return ZeroVerdict {
            kind: ZeroKind::SymbolicZero,
            witness: None,
            samples_used: 0,
        };
    }
    if e.cleared_numerator().is_zero_expr() {
        return ZeroVerdict {
            kind: ZeroKind::SymbolicZero,
            witness: None,
            samples_used: 0,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let free = e.free_symbols();
    let mut samples_used = 0u32;
    for _ in 0..policy.samples {
        let mut outcome = None;
        for _ in 0..policy.max_draw_attempts {
            let mut scalars: BTreeMap<String, Rat> = match params {
                Some(f) => f(&mut rng),
                None => BTreeMap::new(),
            };
            for s in &free {
                scalars
                    .entry(s.clone())
                    .or_insert_with(|| draw_rational(&mut rng));
            }
            let mut atoms: BTreeMap<Expr, Rat> = BTreeMap::new();
            match eval_sample(e, &scalars, &mut atoms, &mut rng) {
                Ok(v) => {
                    outcome = Some((v, scalars, atoms));
                    break;
                }
                Err(Pole) => continue,
            }
        }
        let Some((value, scalars, atoms)) = outcome else {
            // Every retry hit a pole; the draw is skipped. Real inputs in
            // this crate always admit pole-free points.
            continue;
        };
        samples_used += 1;
        if !value.is_zero() {
            return ZeroVerdict {
                kind: ZeroKind::NonZero,
                witness: Some(Witness {
                    scalars,
                    atoms: atoms.into_iter().collect(),
                    value,
                }),
                samples_used,
            };
        }
    }
    ZeroVerdict {
        kind: ZeroKind::ProbabilisticZero,
        witness: None,
        samples_used,
    }
}

/// Small random rational: numerator in [-40, 40] \ {0} over denominator in
/// [1, 4]. The population is large enough for Schwartz–Zippel bounds at the
/// degrees this crate produces, small enough to keep exact arithmetic cheap.
pub fn draw_rational(rng: &mut ChaCha8Rng) -> Rat {
    let num: i64 = loop {
        let n = rng.random_range(-40..=40);
        if n != 0 {
            break n;
        }
    };
    let den: i64 = rng.random_range(1..=4);
    Rat::new(BigInt::from(num), BigInt::from(den))
}

struct Pole;

fn eval_sample(
    e: &Expr,
    scalars: &BTreeMap<String, Rat>,
    atoms: &mut BTreeMap<Expr, Rat>,
    rng: &mut ChaCha8Rng,
) -> Result<Rat, Pole> {
    match e {
        Expr::Rational(r) => Ok(r.clone()),
        Expr::Symbol(s) => Ok(scalars
            .get(s)
            .expect("free symbols are populated before evaluation")
            .clone()),
        Expr::LnAbs(_) | Expr::Func(_) => Ok(fresh_atom(e, atoms, rng)),
        Expr::Power(base, exp) => {
            if !exp.is_integer() {
                return Ok(fresh_atom(e, atoms, rng));
            }
            let b = eval_sample(base, scalars, atoms, rng)?;
            let k = exp.to_integer().to_i64().ok_or(Pole)?;
            if b.is_zero() && k < 0 {
                return Err(Pole);
            }
            Ok(rat_pow(&b, k))
        }
        Expr::Product(fs) => {
            let mut acc = Rat::from_integer(1.into());
            for f in fs {
                acc *= eval_sample(f, scalars, atoms, rng)?;
            }
            Ok(acc)
        }
        Expr::Sum(ts) => {
            let mut acc = Rat::zero();
            for t in ts {
                acc += eval_sample(t, scalars, atoms, rng)?;
            }
            Ok(acc)
        }
    }
}

fn fresh_atom(e: &Expr, atoms: &mut BTreeMap<Expr, Rat>, rng: &mut ChaCha8Rng) -> Rat {
    if let Some(v) = atoms.get(e) {
        return v.clone();
    }
    let v = draw_rational(rng);
    atoms.insert(e.clone(), v.clone());
    v
}
