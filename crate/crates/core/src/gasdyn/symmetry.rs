//! The admitted point transformations, acting on solutions by pull-back.
//! Each maps a solution of the system to another solution.

use super::GasFields;
use crate::expr::{Expr, SubstMap};
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Clone)]
pub enum SymmetryTransformation {
    /// `x* = x + a`.
    SpaceTranslation { shift: [Expr; 3] },
    /// `t* = t + a0`.
    TimeTranslation { shift: Expr },
    /// `x* = O x`, `u* = O u` with `O` orthogonal, `det O = 1`.
    Rotation { matrix: [[Expr; 3]; 3] },
    /// `x* = x + t b`, `u* = u + b`.
    GalileanBoost { velocity: [Expr; 3] },
    /// `t* = c t`, `x* = c x` with `c > 0`.
    Dilatation { factor: Expr },
    /// `P* = P + P0`; the entropy shifts by the same amount so the state
    /// relation is preserved.
    PressureShift { shift: Expr },
}

#[derive(Debug, Error, PartialEq)]
pub enum SymmetryError {
    #[error("dilatation factor must be positive, got {0}")]
    NonPositiveDilatation(String),
}

impl SymmetryTransformation {
    pub fn validate(&self) -> Result<(), SymmetryError> {
        if let SymmetryTransformation::Dilatation { factor } = self {
            if let Some(r) = factor.as_rational() {
                if !r.is_positive() {
                    return Err(SymmetryError::NonPositiveDilatation(factor.to_string()));
                }
            }
        }
        Ok(())
    }
}

fn pull_back_positions(g: &GasFields, map: &SubstMap) -> GasFields {
    GasFields {
        u: g.u.substitute(map).expect("coordinate substitution"),
        v: g.v.substitute(map).expect("coordinate substitution"),
        w: g.w.substitute(map).expect("coordinate substitution"),
        rho: g.rho.substitute(map).expect("coordinate substitution"),
        p: g.p.substitute(map).expect("coordinate substitution"),
        s: g.s.substitute(map).expect("coordinate substitution"),
        f_anchor: g.f_anchor.clone(),
        f_def: g.f_def.clone(),
    }
}

/// The transformed solution, expressed again as fields of `(t, x, y, z)`.
pub fn apply_symmetry(g: &GasFields, tr: &SymmetryTransformation) -> GasFields {
    match tr {
        SymmetryTransformation::SpaceTranslation { shift } => {
            let map = SubstMap::new()
                .sym("x", Expr::sym("x") - shift[0].clone())
                .sym("y", Expr::sym("y") - shift[1].clone())
                .sym("z", Expr::sym("z") - shift[2].clone());
            pull_back_positions(g, &map)
        }
        SymmetryTransformation::TimeTranslation { shift } => {
            let map = SubstMap::new().sym("t", Expr::sym("t") - shift.clone());
            pull_back_positions(g, &map)
        }
        SymmetryTransformation::Rotation { matrix } => {
            // Positions pull back through the inverse rotation (the
            // transpose), velocity components push forward through O.
            let pos = [Expr::sym("x"), Expr::sym("y"), Expr::sym("z")];
            let inverse_image = |i: usize| -> Expr {
                Expr::add(
                    (0..3)
                        .map(|j| matrix[j][i].clone() * pos[j].clone())
                        .collect(),
                )
            };
            let map = SubstMap::new()
                .sym("x", inverse_image(0))
                .sym("y", inverse_image(1))
                .sym("z", inverse_image(2));
            let moved = pull_back_positions(g, &map);
            let vel = [moved.u.clone(), moved.v.clone(), moved.w.clone()];
            let rotated = |i: usize| -> Expr {
                Expr::add(
                    (0..3)
                        .map(|j| matrix[i][j].clone() * vel[j].clone())
                        .collect(),
                )
            };
            GasFields {
                u: rotated(0),
                v: rotated(1),
                w: rotated(2),
                ..moved
            }
        }
        SymmetryTransformation::GalileanBoost { velocity } => {
            let t = Expr::sym("t");
            let map = SubstMap::new()
                .sym("x", Expr::sym("x") - t.clone() * velocity[0].clone())
                .sym("y", Expr::sym("y") - t.clone() * velocity[1].clone())
                .sym("z", Expr::sym("z") - t * velocity[2].clone());
            let moved = pull_back_positions(g, &map);
            GasFields {
                u: moved.u.clone() + velocity[0].clone(),
                v: moved.v.clone() + velocity[1].clone(),
                w: moved.w.clone() + velocity[2].clone(),
                ..moved
            }
        }
        SymmetryTransformation::Dilatation { factor } => {
            let inv = factor.clone().powi(-1);
            let map = SubstMap::new()
                .sym("t", Expr::sym("t") * inv.clone())
                .sym("x", Expr::sym("x") * inv.clone())
                .sym("y", Expr::sym("y") * inv.clone())
                .sym("z", Expr::sym("z") * inv);
            pull_back_positions(g, &map)
        }
        SymmetryTransformation::PressureShift { shift } => GasFields {
            p: g.p.clone() + shift.clone(),
            s: g.s.clone() + shift.clone(),
            ..g.clone()
        },
    }
}
