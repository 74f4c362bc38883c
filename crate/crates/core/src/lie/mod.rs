//! Vector fields on the nine-dimensional space `(t, x, y, z, u, v, w, rho, P)`
//! and their Lie brackets. Entropy is excluded: the admitted generators do
//! not act on `S`, which is recovered through the state equation.

mod autom;
mod table;

pub use autom::{
    apply_automorphism, axis_rotation, identity3, random_rotation, rational_circle_point,
    verify_automorphism, AutomorphismSpec, AUTOMORPHISM_FAMILIES,
};
pub use table::{
    compute_structure_table, reference_table, verify_jacobi, JacobiReport, StructureTable,
    TableError,
};

use crate::expr::Expr;

/// Ordered coordinate names of the space the symmetry algebra acts on.
pub const COORDS: [&str; 9] = ["t", "x", "y", "z", "u", "v", "w", "rho", "P"];

pub const DIM: usize = 12;

/// A vector field `Σ ξ^i ∂_i` given by one coefficient expression per
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub coeffs: [Expr; 9],
}

impl VectorField {
    pub fn zero() -> Self {
        VectorField {
            coeffs: std::array::from_fn(|_| Expr::zero()),
        }
    }

    pub fn new(coeffs: [Expr; 9]) -> Self {
        VectorField { coeffs }
    }

    /// Builds a field from `(coordinate, coefficient)` pairs.
    pub fn from_pairs(pairs: &[(&str, Expr)]) -> Self {
        let mut f = VectorField::zero();
        for (name, coeff) in pairs {
            let idx = coord_index(name);
            f.coeffs[idx] = f.coeffs[idx].clone() + coeff.clone();
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_expr())
    }

    pub fn scale(&self, factor: &Expr) -> Self {
        VectorField {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * factor.clone()),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        VectorField {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() + other.coeffs[i].clone()),
        }
    }

    /// Directional derivative `X(e) = Σ ξ^i ∂e/∂x^i`.
    pub fn apply(&self, e: &Expr) -> Expr {
        let mut terms = Vec::new();
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero_expr() {
                continue;
            }
            let d = e.diff(COORDS[i]);
            if d.is_zero_expr() {
                continue;
            }
            terms.push(coeff.clone() * d);
        }
        Expr::add(terms)
    }

    /// Lie bracket `[X, Y]`, coefficient-wise `X(η^k) − Y(ξ^k)`.
    pub fn bracket(&self, other: &Self) -> Self {
        VectorField {
            coeffs: std::array::from_fn(|k| {
                self.apply(&other.coeffs[k]) - other.apply(&self.coeffs[k])
            }),
        }
    }

    /// Linear combination of the basis fields with expression coefficients.
    pub fn from_coeff_vector(coeffs: &[Expr; DIM], basis: &[VectorField; DIM]) -> Self {
        let mut acc = VectorField::zero();
        for (c, b) in coeffs.iter().zip(basis.iter()) {
            if !c.is_zero_expr() {
                acc = acc.plus(&b.scale(c));
            }
        }
        acc
    }
}

pub fn coord_index(name: &str) -> usize {
    COORDS
        .iter()
        .position(|&c| c == name)
        .unwrap_or_else(|| panic!("'{name}' is not a coordinate"))
}

/// The twelve basis generators: three space translations, three Galilean
/// translations, three rotations, the time translation, the uniform
/// dilatation, and the pressure translation (index 11, central).
pub fn basis() -> [VectorField; DIM] {
    let t = || Expr::sym("t");
    let x = || Expr::sym("x");
    let y = || Expr::sym("y");
    let z = || Expr::sym("z");
    let u = || Expr::sym("u");
    let v = || Expr::sym("v");
    let w = || Expr::sym("w");
    let one = Expr::one;

    [
        VectorField::from_pairs(&[("x", one())]),
        VectorField::from_pairs(&[("y", one())]),
        VectorField::from_pairs(&[("z", one())]),
        VectorField::from_pairs(&[("x", t()), ("u", one())]),
        VectorField::from_pairs(&[("y", t()), ("v", one())]),
        VectorField::from_pairs(&[("z", t()), ("w", one())]),
        VectorField::from_pairs(&[("z", y()), ("y", z().neg()), ("w", v()), ("v", w().neg())]),
        VectorField::from_pairs(&[("x", z()), ("z", x().neg()), ("u", w()), ("w", u().neg())]),
        VectorField::from_pairs(&[("y", x()), ("x", y().neg()), ("v", u()), ("u", v().neg())]),
        VectorField::from_pairs(&[("t", one())]),
        VectorField::from_pairs(&[("t", t()), ("x", x()), ("y", y()), ("z", z())]),
        VectorField::from_pairs(&[("P", one())]),
    ]
}

/// Human-readable generator names, index 11 being the central pressure
/// translation.
pub fn generator_name(i: usize) -> String {
    if i == 11 {
        "Y1".to_string()
    } else {
        format!("X{}", i + 1)
    }
}
