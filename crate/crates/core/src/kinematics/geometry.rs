//! Trajectory geometry: projection lines, parabola and cubic profiles,
//! coplanarity of trajectory pairs, and the distinguished planes, surfaces
//! and lines of the two families.

use super::{world_line, LagrangianLabel};
use crate::expr::{Expr, FuncDef, Rat};
use crate::gasdyn::FamilyParams;
use crate::linalg::det3;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("profile value Phi(z0, y0) must be known exactly; supply a concrete definition")]
    AbstractProfile,
    #[error("the projection line requires {0} ≠ 0 at this label")]
    DegenerateProjection(&'static str),
    #[error("parameters must be exact rationals here")]
    SymbolicParameters,
}

/// Projection of a trajectory onto the `(x, y)` plane, plus its profile in
/// the `(s, z)` plane where `s = t |q|` is arc length of the projection.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionShape {
    /// `y = slope · x + intercept`.
    Line { slope: Rat, intercept: Rat },
    /// The trajectory lies in the vertical plane `x = const`.
    PlaneXConst { x: Rat },
    /// Isochoric family with `Phi = b z0 = 0`: the trajectory is a ray.
    Ray,
    /// Blow-up family with `u0 = b z0 = 0`: the trajectory is a straight
    /// line.
    StraightLine,
}

#[derive(Debug, Clone)]
pub struct PathGeometry {
    pub shape: ProjectionShape,
    /// Direction of the projection line, `(Phi, (b/a) z0)` or
    /// `(u0, (b/a) z0)`.
    pub direction: (Rat, Rat),
    pub q_squared: Rat,
    /// `z = profile_coeff · s^degree + z0`.
    pub profile_coeff: f64,
    pub profile_degree: u32,
    pub z0: Rat,
}

fn exact(e: &Expr, err: GeometryError) -> Result<Rat, GeometryError> {
    e.as_rational().cloned().ok_or(err)
}

fn exact_params(params: &FamilyParams) -> Result<(Rat, Rat, Rat, Rat), GeometryError> {
    Ok((
        exact(&params.a, GeometryError::SymbolicParameters)?,
        exact(&params.b, GeometryError::SymbolicParameters)?,
        exact(&params.gamma, GeometryError::SymbolicParameters)?,
        exact(&params.rho0, GeometryError::SymbolicParameters)?,
    ))
}

/// Value of the transported profile at a label.
pub fn phi_at(label: &LagrangianLabel, phi: &FuncDef) -> Result<Rat, GeometryError> {
    let e = Expr::func(
        "Phi",
        vec![
            Expr::rational(label.z0().clone()),
            Expr::rational(label.y0().clone()),
        ],
    );
    let map = crate::expr::SubstMap::new().func("Phi", phi.clone());
    let val = e
        .substitute(&map)
        .map_err(|_| GeometryError::AbstractProfile)?;
    exact(&val, GeometryError::AbstractProfile)
}

pub fn path_geometry(
    label: &LagrangianLabel,
    params: &FamilyParams,
    phi: &FuncDef,
) -> Result<PathGeometry, GeometryError> {
    let (a, b, gamma, rho0) = exact_params(params)?;
    let phi_val = phi_at(label, phi)?;
    let z0 = label.z0().clone();
    let b_z0 = b.clone() * z0.clone();
    let transverse = b_z0.clone() / a.clone();

    let (axial, degree, denom_scale): (Rat, u32, Rat) = match label {
        LagrangianLabel::Isochoric { .. } => (phi_val.clone(), 2, Rat::from_integer(2.into())),
        LagrangianLabel::Blowup { u0, .. } => (u0.clone(), 3, Rat::from_integer(6.into())),
    };

    let q_squared = axial.clone() * axial.clone() + transverse.clone() * transverse.clone();
    let shape = if !axial.is_zero() {
        let slope = b_z0.clone() / (a.clone() * axial.clone());
        let intercept = match label {
            LagrangianLabel::Isochoric { x0, y0, .. } => {
                y0.clone() - b_z0.clone() * x0.clone() / (a.clone() * axial.clone())
            }
            LagrangianLabel::Blowup { y0, .. } => {
                y0.clone() + b_z0.clone() * phi_val.clone() / (a.clone() * axial.clone())
            }
        };
        ProjectionShape::Line { slope, intercept }
    } else if !b_z0.is_zero() {
        match label {
            LagrangianLabel::Isochoric { x0, .. } => ProjectionShape::PlaneXConst { x: x0.clone() },
            LagrangianLabel::Blowup { .. } => ProjectionShape::PlaneXConst {
                x: -phi_val.clone(),
            },
        }
    } else {
        match label {
            LagrangianLabel::Isochoric { .. } => ProjectionShape::Ray,
            LagrangianLabel::Blowup { .. } => ProjectionShape::StraightLine,
        }
    };

    // z = -gamma/(degree! scale · a rho0) (s/q)^degree + z0; the odd power
    // of |q| forces floats for the cubic profile.
    let q = q_squared.to_f64().unwrap_or(f64::NAN).sqrt();
    let base = -(gamma / (denom_scale * a * rho0))
        .to_f64()
        .unwrap_or(f64::NAN);
    let profile_coeff = if q == 0.0 {
        0.0
    } else {
        base / q.powi(degree as i32)
    };

    Ok(PathGeometry {
        shape,
        direction: (axial, transverse),
        q_squared,
        profile_coeff,
        profile_degree: degree,
        z0,
    })
}

#[derive(Debug, Clone)]
pub struct CoplanarityCheck {
    /// The two exact equalities: `(lhs, rhs)` of each condition.
    pub first_condition: (Rat, Rat),
    pub second_condition: (Rat, Rat),
    pub coplanar: bool,
    /// Normalized volume of a tetrahedron on two points per trajectory;
    /// below threshold confirms the exact verdict numerically.
    pub affine_volume: f64,
}

/// Decides whether two trajectories lie in one plane by the family's exact
/// conditions, then confirms with a four-point affine-rank test.
pub fn coplanar(
    label1: &LagrangianLabel,
    label2: &LagrangianLabel,
    params: &FamilyParams,
    phi: &FuncDef,
) -> Result<CoplanarityCheck, GeometryError> {
    assert_eq!(label1.family(), label2.family(), "labels from one family");
    let (a, b, _, _) = exact_params(params)?;

    let condition = |label: &LagrangianLabel| -> Result<(Rat, Rat), GeometryError> {
        let phi_val = phi_at(label, phi)?;
        let z0 = label.z0().clone();
        match label {
            LagrangianLabel::Isochoric { x0, y0, .. } => {
                if phi_val.is_zero() {
                    return Err(GeometryError::DegenerateProjection("Phi"));
                }
                let c1 = z0.clone() / phi_val.clone();
                let c2 = y0.clone() - b.clone() * z0 * x0.clone() / (a.clone() * phi_val);
                Ok((c1, c2))
            }
            LagrangianLabel::Blowup { u0, y0, .. } => {
                if u0.is_zero() {
                    return Err(GeometryError::DegenerateProjection("u0"));
                }
                let c1 = z0.clone() / u0.clone();
                let c2 = y0.clone() + b.clone() * z0 * phi_val / (a.clone() * u0.clone());
                Ok((c1, c2))
            }
        }
    };

    let (c1_first, c2_first) = condition(label1)?;
    let (c1_second, c2_second) = condition(label2)?;
    let coplanar = c1_first == c1_second && c2_first == c2_second;

    // Two points on each trajectory at fixed distinct times.
    let wl1 = world_line(label1, params, Some(phi));
    let wl2 = world_line(label2, params, Some(phi));
    let pts = [
        wl1.at_f64(1.0).expect("concrete world line"),
        wl1.at_f64(-1.0).expect("concrete world line"),
        wl2.at_f64(2.0).expect("concrete world line"),
        wl2.at_f64(-2.0).expect("concrete world line"),
    ];
    let d = |p: &[f64; 3], q: &[f64; 3]| [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
    let edges = [
        d(&pts[0], &pts[1]),
        d(&pts[0], &pts[2]),
        d(&pts[0], &pts[3]),
    ];
    let volume = det3(&[edges[0], edges[1], edges[2]]);
    let norm: f64 = edges
        .iter()
        .map(|e| (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt())
        .product();
    let affine_volume = if norm == 0.0 {
        0.0
    } else {
        (volume / norm).abs()
    };

    Ok(CoplanarityCheck {
        first_condition: (c1_first, c1_second),
        second_condition: (c2_first, c2_second),
        coplanar,
        affine_volume,
    })
}

/// A plane through `point` with the given normal.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneSpec {
    pub point: [Rat; 3],
    pub normal: [Rat; 3],
}

/// A line `point + s · direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSpec {
    pub point: [Rat; 3],
    pub direction: [Rat; 3],
}

/// The moving material plane of the isochoric family: particles starting on
/// `y = y0` stay on it; its normal is `(0, 1, -(b/a) t)`.
pub fn moving_plane(t: &Rat, y0: &Rat, params: &FamilyParams) -> Result<PlaneSpec, GeometryError> {
    let (a, b, gamma, rho0) = exact_params(params)?;
    let two = Rat::from_integer(2.into());
    // On z = 0 the plane equation gives y = y0 + gamma b t^3 / (2 a^2 rho0).
    let y_at_z0 = y0.clone()
        + gamma * b.clone() * t.clone() * t.clone() * t.clone()
            / (two * a.clone() * a.clone() * rho0);
    Ok(PlaneSpec {
        point: [Rat::zero(), y_at_z0, Rat::zero()],
        normal: [
            Rat::zero(),
            Rat::from_integer(1.into()),
            -(b / a) * t.clone(),
        ],
    })
}

/// The plane `z = -3 gamma t^2/(2 a rho0)` separating particles flying out
/// on opposite sides of the moving plane.
pub fn separating_plane(t: &Rat, params: &FamilyParams) -> Result<PlaneSpec, GeometryError> {
    let (a, _, gamma, rho0) = exact_params(params)?;
    let z = -(Rat::from_integer(3.into()) * gamma * t.clone() * t.clone())
        / (Rat::from_integer(2.into()) * a * rho0);
    Ok(PlaneSpec {
        point: [Rat::zero(), Rat::zero(), z],
        normal: [Rat::zero(), Rat::zero(), Rat::from_integer(1.into())],
    })
}

/// One point of the blow-up surface: `(-Phi(z0, y0), y0, z0)`.
pub fn blowup_surface_point(y0: &Rat, z0: &Rat, phi: &FuncDef) -> Result<[Rat; 3], GeometryError> {
    let label = LagrangianLabel::Blowup {
        u0: Rat::zero(),
        y0: y0.clone(),
        z0: z0.clone(),
    };
    let phi_val = phi_at(&label, phi)?;
    Ok([-phi_val, y0.clone(), z0.clone()])
}

/// Sampled grid of the blow-up surface over `[lo, hi]²` in `(y0, z0)`,
/// `n x n` points, rows `(y0, z0, x, y, z)`.
pub fn blowup_surface_grid(
    lo: &Rat,
    hi: &Rat,
    n: usize,
    phi: &FuncDef,
) -> Result<Vec<[Rat; 5]>, GeometryError> {
    let n = n.max(2);
    let steps = Rat::from_integer(((n - 1) as i64).into());
    let span = hi.clone() - lo.clone();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let y0 =
                lo.clone() + span.clone() * Rat::from_integer((i as i64).into()) / steps.clone();
            let z0 =
                lo.clone() + span.clone() * Rat::from_integer((j as i64).into()) / steps.clone();
            let p = blowup_surface_point(&y0, &z0, phi)?;
            rows.push([y0, z0, p[0].clone(), p[1].clone(), p[2].clone()]);
        }
    }
    Ok(rows)
}

/// The straight line, parallel to the axial direction, on which all
/// particles from one blow-up point sit at a fixed time `t ≠ 0`.
pub fn blowup_line(
    y0: &Rat,
    z0: &Rat,
    t: &Rat,
    params: &FamilyParams,
    phi: &FuncDef,
) -> Result<LineSpec, GeometryError> {
    let (a, b, gamma, rho0) = exact_params(params)?;
    let label = LagrangianLabel::Blowup {
        u0: Rat::zero(),
        y0: y0.clone(),
        z0: z0.clone(),
    };
    let phi_val = phi_at(&label, phi)?;
    let six = Rat::from_integer(6.into());
    let point = [
        -phi_val,
        (b / a.clone()) * z0.clone() * t.clone() + y0.clone(),
        -(gamma * t.clone() * t.clone() * t.clone()) / (six * a * rho0) + z0.clone(),
    ];
    Ok(LineSpec {
        point,
        direction: [t.clone(), Rat::zero(), Rat::zero()],
    })
}

/// Intersection line of two non-parallel planes.
pub fn plane_intersection_line(p1: &PlaneSpec, p2: &PlaneSpec) -> Option<LineSpec> {
    let n1 = &p1.normal;
    let n2 = &p2.normal;
    let direction = [
        n1[1].clone() * n2[2].clone() - n1[2].clone() * n2[1].clone(),
        n1[2].clone() * n2[0].clone() - n1[0].clone() * n2[2].clone(),
        n1[0].clone() * n2[1].clone() - n1[1].clone() * n2[0].clone(),
    ];
    if direction.iter().all(|d| d.is_zero()) {
        return None;
    }
    // Solve n1·p = n1·p1, n2·p = n2·p2 on the coordinate plane spanned by
    // the two components where the direction is largest.
    let dot = |n: &[Rat; 3], p: &[Rat; 3]| -> Rat {
        n[0].clone() * p[0].clone() + n[1].clone() * p[1].clone() + n[2].clone() * p[2].clone()
    };
    let d1 = dot(n1, &p1.point);
    let d2 = dot(n2, &p2.point);
    // Pick the axis k along which the direction has a nonzero component and
    // set p[k] = 0; the remaining 2x2 system is invertible.
    let k = (0..3)
        .max_by_key(|&k| {
            let v = &direction[k];
            (v.numer().clone().abs() * v.denom().clone().abs(), 3 - k)
        })
        .unwrap();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let det = n1[i].clone() * n2[j].clone() - n1[j].clone() * n2[i].clone();
    if det.is_zero() {
        return None;
    }
    let pi = (d1.clone() * n2[j].clone() - d2.clone() * n1[j].clone()) / det.clone();
    let pj = (n1[i].clone() * d2 - n2[i].clone() * d1) / det;
    let mut point = [Rat::zero(), Rat::zero(), Rat::zero()];
    point[i] = pi;
    point[j] = pj;
    Some(LineSpec { point, direction })
}

/// Signed distance-like residual of a point against a plane (zero iff the
/// point lies on it), exact.
pub fn plane_residual(plane: &PlaneSpec, point: &[Rat; 3]) -> Rat {
    (0..3)
        .map(|i| plane.normal[i].clone() * (point[i].clone() - plane.point[i].clone()))
        .sum()
}

/// Evaluates a point of a line at parameter `s`.
pub fn line_point(line: &LineSpec, s: &Rat) -> [Rat; 3] {
    std::array::from_fn(|i| line.point[i].clone() + s.clone() * line.direction[i].clone())
}
