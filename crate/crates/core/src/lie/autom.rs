//! The adjoint (and one outer) automorphisms of the symmetry algebra, acting
//! linearly on coefficient vectors `(x^1 .. x^11, y)`, and the check that
//! they preserve the structure constants.

use super::{StructureTable, DIM};
use crate::expr::{draw_rational, Expr, Rat};
use num_traits::{One, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// One row of the automorphism table. Components a row does not mention are
/// fixed. Projections used below: `p1 = (x^1,x^2,x^3)` (translations),
/// `p2 = (x^4,x^5,x^6)` (Galilean translations), `p3 = (x^7,x^8,x^9)`
/// (rotations); `x^10` is the time translation, `x^11` the dilatation and
/// `y` the central pressure translation.
#[derive(Debug, Clone)]
pub enum AutomorphismSpec {
    /// `p1 += x^11 α − α × p3`.
    SpaceTranslation { alpha: [Expr; 3] },
    /// `p1 -= x^10 α`, `p2 -= α × p3`.
    GalileanBoost { alpha: [Expr; 3] },
    /// `p1, p2, p3` rotated by one orthogonal matrix.
    Rotation { matrix: [[Expr; 3]; 3] },
    /// `p1 += a p2`, `x^10 += a x^11`.
    TimeTranslation { a: Expr },
    /// `p1 *= a`, `x^10 *= a`, `a ≠ 0`.
    Dilatation { a: Expr },
    /// Discrete: `p1 -> -p1`, `p2 -> -p2`.
    SpaceReflection,
    /// Discrete: `p2 -> -p2`, `x^10 -> -x^10`.
    TimeReflection,
    /// Outer automorphism scaling the central component, `b ≠ 0`.
    PressureScaling { b: Expr },
}

pub const AUTOMORPHISM_FAMILIES: [&str; 8] = [
    "space-translation",
    "galilean-boost",
    "rotation",
    "time-translation",
    "dilatation",
    "space-reflection",
    "time-reflection",
    "pressure-scaling",
];

#[derive(Debug, Error, PartialEq)]
pub enum AutomorphismError {
    #[error("{family} parameter must be nonzero")]
    ZeroParameter { family: &'static str },
}

impl AutomorphismSpec {
    pub fn family(&self) -> &'static str {
        match self {
            AutomorphismSpec::SpaceTranslation { .. } => "space-translation",
            AutomorphismSpec::GalileanBoost { .. } => "galilean-boost",
            AutomorphismSpec::Rotation { .. } => "rotation",
            AutomorphismSpec::TimeTranslation { .. } => "time-translation",
            AutomorphismSpec::Dilatation { .. } => "dilatation",
            AutomorphismSpec::SpaceReflection => "space-reflection",
            AutomorphismSpec::TimeReflection => "time-reflection",
            AutomorphismSpec::PressureScaling { .. } => "pressure-scaling",
        }
    }

    pub fn validate(&self) -> Result<(), AutomorphismError> {
        match self {
            AutomorphismSpec::Dilatation { a } if a.is_zero_expr() => {
                Err(AutomorphismError::ZeroParameter {
                    family: "dilatation",
                })
            }
            AutomorphismSpec::PressureScaling { b } if b.is_zero_expr() => {
                Err(AutomorphismError::ZeroParameter {
                    family: "pressure-scaling",
                })
            }
            _ => Ok(()),
        }
    }

    /// A random exact-rational member of the family.
    pub fn sample(family: &str, rng: &mut ChaCha8Rng) -> AutomorphismSpec {
        let vec3 = |rng: &mut ChaCha8Rng| -> [Expr; 3] {
            std::array::from_fn(|_| Expr::rational(draw_rational(rng)))
        };
        let nonzero = |rng: &mut ChaCha8Rng| -> Expr {
            loop {
                let r = draw_rational(rng);
                if !r.is_zero() {
                    return Expr::rational(r);
                }
            }
        };
        match family {
            "space-translation" => AutomorphismSpec::SpaceTranslation { alpha: vec3(rng) },
            "galilean-boost" => AutomorphismSpec::GalileanBoost { alpha: vec3(rng) },
            "rotation" => AutomorphismSpec::Rotation {
                matrix: random_rotation(rng),
            },
            "time-translation" => AutomorphismSpec::TimeTranslation {
                a: Expr::rational(draw_rational(rng)),
            },
            "dilatation" => AutomorphismSpec::Dilatation { a: nonzero(rng) },
            "space-reflection" => AutomorphismSpec::SpaceReflection,
            "time-reflection" => AutomorphismSpec::TimeReflection,
            "pressure-scaling" => AutomorphismSpec::PressureScaling { b: nonzero(rng) },
            other => panic!("unknown automorphism family '{other}'"),
        }
    }
}

/// Exact rotation about one axis: `(c, s) = ((1-s²)/(1+s²), 2s/(1+s²))`
/// satisfies `c² + s² = 1` identically over the rationals.
pub fn rational_circle_point(s: &Rat) -> (Rat, Rat) {
    let one = Rat::one();
    let denom = one.clone() + s.clone() * s.clone();
    let c = (one - s.clone() * s.clone()) / denom.clone();
    let sn = (Rat::from_integer(2.into()) * s.clone()) / denom;
    (c, sn)
}

/// Composition of one exact rotation about each coordinate axis.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> [[Expr; 3]; 3] {
    let mut m = identity3();
    for axis in 0..3 {
        let (c, s) = rational_circle_point(&draw_rational(rng));
        m = mat_mul(&axis_rotation(axis, &c, &s), &m);
    }
    m
}

pub fn identity3() -> [[Expr; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { Expr::one() } else { Expr::zero() })
    })
}

pub fn axis_rotation(axis: usize, c: &Rat, s: &Rat) -> [[Expr; 3]; 3] {
    let c = Expr::rational(c.clone());
    let s = Expr::rational(s.clone());
    let mut m = identity3();
    let (p, q) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    m[p][p] = c.clone();
    m[q][q] = c;
    m[p][q] = s.clone().neg();
    m[q][p] = s;
    m
}

fn mat_mul(a: &[[Expr; 3]; 3], b: &[[Expr; 3]; 3]) -> [[Expr; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            Expr::add((0..3).map(|k| a[i][k].clone() * b[k][j].clone()).collect())
        })
    })
}

fn cross(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn mat_vec(m: &[[Expr; 3]; 3], v: &[Expr; 3]) -> [Expr; 3] {
    std::array::from_fn(|i| Expr::add((0..3).map(|k| m[i][k].clone() * v[k].clone()).collect()))
}

/// The table's linear action on a coefficient vector; components a row does
/// not mention pass through unchanged.
pub fn apply_automorphism(spec: &AutomorphismSpec, coeffs: &[Expr; DIM]) -> [Expr; DIM] {
    let mut out = coeffs.clone();
    let p1: [Expr; 3] = std::array::from_fn(|i| coeffs[i].clone());
    let p2: [Expr; 3] = std::array::from_fn(|i| coeffs[3 + i].clone());
    let p3: [Expr; 3] = std::array::from_fn(|i| coeffs[6 + i].clone());
    match spec {
        AutomorphismSpec::SpaceTranslation { alpha } => {
            let correction = cross(alpha, &p3);
            for i in 0..3 {
                out[i] =
                    p1[i].clone() + coeffs[10].clone() * alpha[i].clone() - correction[i].clone();
            }
        }
        AutomorphismSpec::GalileanBoost { alpha } => {
            let correction = cross(alpha, &p3);
            for i in 0..3 {
                out[i] = p1[i].clone() - coeffs[9].clone() * alpha[i].clone();
                out[3 + i] = p2[i].clone() - correction[i].clone();
            }
        }
        AutomorphismSpec::Rotation { matrix } => {
            let r1 = mat_vec(matrix, &p1);
            let r2 = mat_vec(matrix, &p2);
            let r3 = mat_vec(matrix, &p3);
            for i in 0..3 {
                out[i] = r1[i].clone();
                out[3 + i] = r2[i].clone();
                out[6 + i] = r3[i].clone();
            }
        }
        AutomorphismSpec::TimeTranslation { a } => {
            for i in 0..3 {
                out[i] = p1[i].clone() + a.clone() * p2[i].clone();
            }
            out[9] = coeffs[9].clone() + a.clone() * coeffs[10].clone();
        }
        AutomorphismSpec::Dilatation { a } => {
            for i in 0..3 {
                out[i] = a.clone() * p1[i].clone();
            }
            out[9] = a.clone() * coeffs[9].clone();
        }
        AutomorphismSpec::SpaceReflection => {
            for i in 0..6 {
                out[i] = coeffs[i].clone().neg();
            }
        }
        AutomorphismSpec::TimeReflection => {
            for i in 3..6 {
                out[i] = coeffs[i].clone().neg();
            }
            out[9] = coeffs[9].clone().neg();
        }
        AutomorphismSpec::PressureScaling { b } => {
            out[11] = b.clone() * coeffs[11].clone();
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct AutomorphismReport {
    pub family: String,
    pub draws: u32,
    /// `(draw, i, j)` of the first failing pair, if any.
    pub failure: Option<(u32, usize, usize)>,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Draws random exact parameters and checks `M[e_i, e_j] = [M e_i, M e_j]`
/// through the structure table for every basis pair.
pub fn verify_automorphism(
    family: &str,
    table: &StructureTable,
    draws: u32,
    seed: u64,
) -> AutomorphismReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 0..draws {
        let spec = AutomorphismSpec::sample(family, &mut rng);
        spec.validate().expect("sampled parameters are admissible");
        let images: Vec<[Expr; DIM]> = (0..DIM)
            .map(|i| {
                let mut e: [Expr; DIM] = std::array::from_fn(|_| Expr::zero());
                e[i] = Expr::one();
                apply_automorphism(&spec, &e)
            })
            .collect();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let mut lhs: [Expr; DIM] = std::array::from_fn(|_| Expr::zero());
                // M applied to [e_i, e_j] = column of structure constants.
                let col: [Expr; DIM] =
                    std::array::from_fn(|k| Expr::rational(table.c(i, j, k).clone()));
                let mapped = apply_automorphism(&spec, &col);
                lhs.clone_from(&mapped);
                let rhs = table.bracket_vec(&images[i], &images[j]);
                if lhs != rhs {
                    return AutomorphismReport {
                        family: family.to_string(),
                        draws: draw + 1,
                        failure: Some((draw, i, j)),
                    };
                }
            }
        }
    }
    AutomorphismReport {
        family: family.to_string(),
        draws,
        failure: None,
    }
}
