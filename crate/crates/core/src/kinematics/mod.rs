//! Particle kinematics of the two exact solution families: closed-form
//! world lines, Jacobians of the Lagrangian-to-Euler map, vorticity, and
//! the gas-dynamic functions along particle paths.

mod figures;
mod geometry;
mod rk4;

pub use figures::{emit_figure_data, FigureError};
pub use geometry::{
    blowup_line, blowup_surface_grid, blowup_surface_point, coplanar, line_point, moving_plane,
    path_geometry, plane_intersection_line, plane_residual, separating_plane, CoplanarityCheck,
    GeometryError, LineSpec, PathGeometry, PlaneSpec, ProjectionShape,
};
pub use rk4::{
    integrate_trajectory, max_deviation as rk4_max_deviation, IntegrateError, SampleRow,
    TrajectorySamples,
};

use crate::expr::{Binding, EvalError, Expr, FuncDef, Rat, SubstMap};
use crate::gasdyn::{FamilyParams, GasFields};
use crate::linalg::rank_exact;
use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Isochoric,
    Blowup,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Isochoric => "isochoric",
            Family::Blowup => "blowup",
        }
    }
}

/// Particle label: initial position for the isochoric family; axial speed
/// plus initial transverse position for the blow-up family (whose particles
/// all sit on the blow-up surface at `t = 0`).
#[derive(Debug, Clone, PartialEq)]
pub enum LagrangianLabel {
    Isochoric { x0: Rat, y0: Rat, z0: Rat },
    Blowup { u0: Rat, y0: Rat, z0: Rat },
}

impl LagrangianLabel {
    pub fn new(family: Family, triple: [Rat; 3]) -> Self {
        let [first, y0, z0] = triple;
        match family {
            Family::Isochoric => LagrangianLabel::Isochoric { x0: first, y0, z0 },
            Family::Blowup => LagrangianLabel::Blowup { u0: first, y0, z0 },
        }
    }

    pub fn family(&self) -> Family {
        match self {
            LagrangianLabel::Isochoric { .. } => Family::Isochoric,
            LagrangianLabel::Blowup { .. } => Family::Blowup,
        }
    }

    pub fn y0(&self) -> &Rat {
        match self {
            LagrangianLabel::Isochoric { y0, .. } | LagrangianLabel::Blowup { y0, .. } => y0,
        }
    }

    pub fn z0(&self) -> &Rat {
        match self {
            LagrangianLabel::Isochoric { z0, .. } | LagrangianLabel::Blowup { z0, .. } => z0,
        }
    }
}

/// A particle path in space-time, three expressions in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldLine {
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
}

impl WorldLine {
    pub fn at(&self, t: &Rat) -> Result<[Rat; 3], EvalError> {
        let b = Binding::new().set("t", t.clone());
        let get = |e: &Expr| -> Result<Rat, EvalError> {
            e.eval(&b)?
                .as_exact()
                .cloned()
                .ok_or_else(|| EvalError::Domain("world line is not exact".into()))
        };
        Ok([get(&self.x)?, get(&self.y)?, get(&self.z)?])
    }

    pub fn at_f64(&self, t: f64) -> Result<[f64; 3], EvalError> {
        let b = Binding::new().set("t", t);
        Ok([
            self.x.eval(&b)?.to_f64(),
            self.y.eval(&b)?.to_f64(),
            self.z.eval(&b)?.to_f64(),
        ])
    }
}

/// Symbolic world lines over the label symbols `x0/u0, y0, z0`.
pub fn world_line_symbolic(
    family: Family,
    params: &FamilyParams,
    phi: Option<&FuncDef>,
) -> WorldLine {
    let subst = SubstMap::new()
        .sym("a", params.a.clone())
        .sym("b", params.b.clone())
        .sym("gamma", params.gamma.clone())
        .sym("rho0", params.rho0.clone());
    let phi_value = {
        let node = Expr::func("Phi", vec![Expr::sym("z0"), Expr::sym("y0")]);
        match phi {
            None => node,
            Some(def) => {
                let map = SubstMap::new().func("Phi", def.clone());
                node.substitute(&map).expect("binary definition applies")
            }
        }
    };
    let t = Expr::sym("t");
    let apply = |text: &str| -> Expr {
        crate::expr::parse(text)
            .expect("builtin template parses")
            .substitute(&subst)
            .expect("parameter substitution")
    };
    match family {
        Family::Isochoric => WorldLine {
            x: t.clone() * phi_value + Expr::sym("x0"),
            y: apply("(b/a)*z0*t + y0"),
            z: apply("-gamma*t^2/(2*a*rho0) + z0"),
        },
        Family::Blowup => WorldLine {
            x: Expr::sym("u0") * t - phi_value,
            y: apply("(b/a)*z0*t + y0"),
            z: apply("-gamma*t^3/(6*a*rho0) + z0"),
        },
    }
}

/// Closed-form world line of one labelled particle.
pub fn world_line(
    label: &LagrangianLabel,
    params: &FamilyParams,
    phi: Option<&FuncDef>,
) -> WorldLine {
    let symbolic = world_line_symbolic(label.family(), params, phi);
    let mut map: BTreeMap<String, Expr> = BTreeMap::new();
    match label {
        LagrangianLabel::Isochoric { x0, y0, z0 } => {
            map.insert("x0".into(), Expr::rational(x0.clone()));
            map.insert("y0".into(), Expr::rational(y0.clone()));
            map.insert("z0".into(), Expr::rational(z0.clone()));
        }
        LagrangianLabel::Blowup { u0, y0, z0 } => {
            map.insert("u0".into(), Expr::rational(u0.clone()));
            map.insert("y0".into(), Expr::rational(y0.clone()));
            map.insert("z0".into(), Expr::rational(z0.clone()));
        }
    }
    WorldLine {
        x: symbolic.x.subst_symbols(&map),
        y: symbolic.y.subst_symbols(&map),
        z: symbolic.z.subst_symbols(&map),
    }
}

#[derive(Debug, Clone)]
pub struct JacobianReport {
    /// Symbolic determinant of the label-to-position map.
    pub det: Expr,
    /// Rank of the Jacobian matrix on the degenerate locus `t = 0`
    /// (blow-up family only).
    pub rank_at_blowup: Option<usize>,
}

/// Determinant (and degenerate-locus rank) of the Lagrangian-to-Euler map.
pub fn jacobian_det(family: Family, params: &FamilyParams) -> JacobianReport {
    let wl = world_line_symbolic(family, params, None);
    let labels: [&str; 3] = match family {
        Family::Isochoric => ["x0", "y0", "z0"],
        Family::Blowup => ["u0", "y0", "z0"],
    };
    let coords = [&wl.x, &wl.y, &wl.z];
    let matrix: Vec<Vec<Expr>> = coords
        .iter()
        .map(|c| labels.iter().map(|l| c.diff(l)).collect())
        .collect();
    let det = det3_expr(&matrix);
    let rank_at_blowup = match family {
        Family::Isochoric => None,
        Family::Blowup => {
            let at_zero: Vec<Vec<Expr>> = matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.subst_symbol("t", &Expr::zero()))
                        .collect()
                })
                .collect();
            Some(generic_rank(&at_zero, 0xfeed))
        }
    };
    JacobianReport {
        det,
        rank_at_blowup,
    }
}

fn det3_expr(m: &[Vec<Expr>]) -> Expr {
    let minor = |r1: usize, c1: usize, r2: usize, c2: usize| -> Expr {
        m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
    };
    m[0][0].clone() * minor(1, 1, 2, 2) - m[0][1].clone() * minor(1, 0, 2, 2)
        + m[0][2].clone() * minor(1, 0, 2, 1)
}

/// Generic rank of a symbolic matrix: maximum exact rank over random
/// rational assignments of its free symbols and opaque nodes.
fn generic_rank(m: &[Vec<Expr>], seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..5 {
        let mut atoms: BTreeMap<Expr, Rat> = BTreeMap::new();
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m.len());
        let mut ok = true;
        'matrix: for row in m {
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                match eval_generic(e, &mut atoms, &mut rng) {
                    Some(v) => out.push(v),
                    None => {
                        ok = false;
                        break 'matrix;
                    }
                }
            }
            rows.push(out);
        }
        if ok {
            best = best.max(rank_exact(&rows));
        }
    }
    best
}

fn eval_generic(e: &Expr, atoms: &mut BTreeMap<Expr, Rat>, rng: &mut ChaCha8Rng) -> Option<Rat> {
    match e {
        Expr::Rational(r) => Some(r.clone()),
        Expr::Symbol(_) | Expr::LnAbs(_) | Expr::Func(_) => Some(
            atoms
                .entry(e.clone())
                .or_insert_with(|| crate::expr::draw_rational(rng))
                .clone(),
        ),
        Expr::Power(base, exp) => {
            if !exp.is_integer() {
                return None;
            }
            let b = eval_generic(base, atoms, rng)?;
            let k = num_traits::ToPrimitive::to_i64(&exp.to_integer())?;
            if b.is_zero() && k < 0 {
                return None;
            }
            Some(crate::expr::rat_pow(&b, k))
        }
        Expr::Product(fs) => {
            let mut acc = Rat::from_integer(1.into());
            for f in fs {
                acc *= eval_generic(f, atoms, rng)?;
            }
            Some(acc)
        }
        Expr::Sum(ts) => {
            let mut acc = Rat::zero();
            for t in ts {
                acc += eval_generic(t, atoms, rng)?;
            }
            Some(acc)
        }
    }
}

/// Curl of the velocity field, `(w_y - v_z, u_z - w_x, v_x - u_y)`.
pub fn vorticity(g: &GasFields) -> [Expr; 3] {
    [
        g.w.diff("y") - g.v.diff("z"),
        g.u.diff("z") - g.w.diff("x"),
        g.v.diff("x") - g.u.diff("y"),
    ]
}

/// The published closed form of the vorticity for each family, in terms of
/// the derivatives of the transported profile.
pub fn vorticity_closed_form(family: Family, params: &FamilyParams) -> [Expr; 3] {
    let g = match family {
        Family::Isochoric => crate::gasdyn::build_isochoric_family(params, None),
        Family::Blowup => crate::gasdyn::build_blowup_family(params, None, None),
    }
    .expect("symbolic parameters");
    // Recover the profile arguments from the velocity field itself: they
    // are the arguments of the single Phi node in u.
    let (arg1, arg2) = phi_arguments(&g.u).expect("family velocity contains Phi");
    let d1 = Expr::func_deriv("Phi", vec![1, 0], vec![arg1.clone(), arg2.clone()]);
    let d2 = Expr::func_deriv("Phi", vec![0, 1], vec![arg1, arg2]);
    let b_over_a = params.b.clone() / params.a.clone();
    let t = Expr::sym("t");
    match family {
        Family::Isochoric => [
            b_over_a.clone().neg(),
            d1.clone() - b_over_a * t * d2.clone(),
            d2.neg(),
        ],
        Family::Blowup => [
            b_over_a.clone().neg(),
            d1.clone() / t.clone() - b_over_a * d2.clone(),
            (d2 / t).neg(),
        ],
    }
}

fn phi_arguments(e: &Expr) -> Option<(Expr, Expr)> {
    match e {
        Expr::Func(app) if app.name == "Phi" => Some((app.args[0].clone(), app.args[1].clone())),
        Expr::Rational(_) | Expr::Symbol(_) => None,
        Expr::LnAbs(a) => phi_arguments(a),
        Expr::Func(app) => app.args.iter().find_map(phi_arguments),
        Expr::Power(b, _) => phi_arguments(b),
        Expr::Product(fs) => fs.iter().find_map(phi_arguments),
        Expr::Sum(ts) => ts.iter().find_map(phi_arguments),
    }
}

/// The gas-dynamic functions along a labelled world line, as expressions in
/// `t` (blow-up family: valid for `t ≠ 0`).
#[derive(Debug, Clone)]
pub struct LagrangianFields {
    pub u: Expr,
    pub v: Expr,
    pub w: Expr,
    pub rho: Expr,
    pub p: Expr,
    pub s: Expr,
}

impl LagrangianFields {
    pub fn named(&self) -> [(&'static str, &Expr); 6] {
        [
            ("u", &self.u),
            ("v", &self.v),
            ("w", &self.w),
            ("rho", &self.rho),
            ("P", &self.p),
            ("S", &self.s),
        ]
    }
}

pub fn lagrangian_fields(
    label: &LagrangianLabel,
    params: &FamilyParams,
    phi: Option<&FuncDef>,
    f: Option<&FuncDef>,
) -> LagrangianFields {
    let fields = lagrangian_fields_symbolic(label.family(), params, phi, f);
    let mut map: BTreeMap<String, Expr> = BTreeMap::new();
    match label {
        LagrangianLabel::Isochoric { x0, y0, z0 } => {
            map.insert("x0".into(), Expr::rational(x0.clone()));
            map.insert("y0".into(), Expr::rational(y0.clone()));
            map.insert("z0".into(), Expr::rational(z0.clone()));
        }
        LagrangianLabel::Blowup { u0, y0, z0 } => {
            map.insert("u0".into(), Expr::rational(u0.clone()));
            map.insert("y0".into(), Expr::rational(y0.clone()));
            map.insert("z0".into(), Expr::rational(z0.clone()));
        }
    }
    LagrangianFields {
        u: fields.u.subst_symbols(&map),
        v: fields.v.subst_symbols(&map),
        w: fields.w.subst_symbols(&map),
        rho: fields.rho.subst_symbols(&map),
        p: fields.p.subst_symbols(&map),
        s: fields.s.subst_symbols(&map),
    }
}

/// Same, over symbolic labels.
pub fn lagrangian_fields_symbolic(
    family: Family,
    params: &FamilyParams,
    phi: Option<&FuncDef>,
    f: Option<&FuncDef>,
) -> LagrangianFields {
    let subst = {
        let mut m = SubstMap::new()
            .sym("a", params.a.clone())
            .sym("b", params.b.clone())
            .sym("gamma", params.gamma.clone())
            .sym("rho0", params.rho0.clone());
        if let Some(def) = phi {
            m = m.func("Phi", def.clone());
        }
        if let Some(def) = f {
            m = m.func("f", def.clone());
        }
        m
    };
    let apply = |text: &str| -> Expr {
        crate::expr::parse(text)
            .expect("builtin template parses")
            .substitute(&subst)
            .expect("substitution applies")
    };
    match family {
        Family::Isochoric => LagrangianFields {
            u: apply("Phi(z0, y0)"),
            v: apply("(b/a)*z0"),
            w: apply("-gamma*t/(a*rho0)"),
            rho: apply("rho0"),
            p: apply("gamma*z0/a"),
            s: apply("gamma*z0/a"),
        },
        Family::Blowup => LagrangianFields {
            u: apply("u0"),
            v: apply("(b/a)*z0"),
            w: apply("-gamma*t^2/(2*a*rho0)"),
            rho: apply("rho0/t"),
            p: apply("gamma*z0/a + f(rho0/t)"),
            s: apply("gamma*z0/a"),
        },
    }
}

/// Substitutes a world line into an Eulerian field, giving the field's
/// value along the path as an expression in `t`.
pub fn along_world_line(field: &Expr, wl: &WorldLine) -> Expr {
    let mut map: BTreeMap<String, Expr> = BTreeMap::new();
    map.insert("x".into(), wl.x.clone());
    map.insert("y".into(), wl.y.clone());
    map.insert("z".into(), wl.z.clone());
    field.subst_symbols(&map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, rat};
    use crate::gasdyn::{build_blowup_family, build_isochoric_family};

    fn fig_params() -> FamilyParams {
        FamilyParams::new(
            Expr::ratio(4, 5),
            Expr::ratio(3, 5),
            Expr::one(),
            Expr::one(),
        )
        .unwrap()
    }

    fn phi_sum() -> FuncDef {
        FuncDef::new(2, parse("arg1 + arg2").unwrap())
    }

    #[test]
    fn world_line_fig1_values() {
        // Label (5, -2, 1) with Phi = y0 + z0: x = 5 - t, y = 3t/4 - 2,
        // z = 1 - 5t^2/8.
        let label = LagrangianLabel::Isochoric {
            x0: rat(5, 1),
            y0: rat(-2, 1),
            z0: rat(1, 1),
        };
        let wl = world_line(&label, &fig_params(), Some(&phi_sum()));
        assert_eq!(wl.x, parse("5 - t").unwrap());
        assert_eq!(wl.y, parse("3/4*t - 2").unwrap());
        assert_eq!(wl.z, parse("1 - 5/8*t^2").unwrap());
    }

    #[test]
    fn world_line_initial_conditions() {
        let label = LagrangianLabel::Isochoric {
            x0: rat(2, 3),
            y0: rat(-1, 2),
            z0: rat(7, 1),
        };
        let wl = world_line(&label, &fig_params(), Some(&phi_sum()));
        let p0 = wl.at(&rat(0, 1)).unwrap();
        assert_eq!(p0, [rat(2, 3), rat(-1, 2), rat(7, 1)]);

        // Blow-up family starts on the blow-up surface x = -Phi(z0, y0).
        let label = LagrangianLabel::Blowup {
            u0: rat(4, 1),
            y0: rat(1, 1),
            z0: rat(1, 1),
        };
        let phi = FuncDef::new(2, parse("0 - arg2^2 - arg1^2").unwrap());
        let wl = world_line(&label, &fig_params(), Some(&phi));
        let p0 = wl.at(&rat(0, 1)).unwrap();
        assert_eq!(p0, [rat(2, 1), rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn world_line_velocity_matches_eulerian_field() {
        let params = FamilyParams::symbolic();
        for family in [Family::Isochoric, Family::Blowup] {
            let g = match family {
                Family::Isochoric => build_isochoric_family(&params, None).unwrap(),
                Family::Blowup => build_blowup_family(&params, None, None).unwrap(),
            };
            let wl = world_line_symbolic(family, &params, None);
            for (pos, vel) in [(&wl.x, &g.u), (&wl.y, &g.v), (&wl.z, &g.w)] {
                let lhs = pos.diff("t");
                let rhs = along_world_line(vel, &wl);
                assert!(
                    (lhs.clone() - rhs.clone())
                        .cleared_numerator()
                        .is_zero_expr(),
                    "{family:?}: d/dt {lhs} != {rhs}"
                );
            }
        }
    }

    #[test]
    fn jacobians() {
        let params = FamilyParams::symbolic();
        let iso = jacobian_det(Family::Isochoric, &params);
        assert_eq!(iso.det, Expr::one());
        assert_eq!(iso.rank_at_blowup, None);

        let blow = jacobian_det(Family::Blowup, &params);
        assert_eq!(blow.det, Expr::sym("t"));
        assert_eq!(blow.rank_at_blowup, Some(2));
    }

    #[test]
    fn jacobian_cofactor_oracle() {
        // Determinant from the explicit triangular matrices, expanded by
        // hand: both are products of the diagonal.
        let params = FamilyParams::symbolic();
        let wl = world_line_symbolic(Family::Blowup, &params, None);
        let dx_du0 = wl.x.diff("u0");
        assert_eq!(dx_du0, Expr::sym("t"));
        assert_eq!(wl.y.diff("u0"), Expr::zero());
        assert_eq!(wl.z.diff("u0"), Expr::zero());
        assert_eq!(wl.y.diff("y0"), Expr::one());
        assert_eq!(wl.z.diff("y0"), Expr::zero());
        assert_eq!(wl.z.diff("z0"), Expr::one());
    }

    #[test]
    fn vorticity_matches_closed_forms() {
        let params = FamilyParams::symbolic();
        for family in [Family::Isochoric, Family::Blowup] {
            let g = match family {
                Family::Isochoric => build_isochoric_family(&params, None).unwrap(),
                Family::Blowup => build_blowup_family(&params, None, None).unwrap(),
            };
            let curl = vorticity(&g);
            let closed = vorticity_closed_form(family, &params);
            for (i, (got, want)) in curl.iter().zip(closed.iter()).enumerate() {
                assert!(
                    (got.clone() - want.clone())
                        .cleared_numerator()
                        .is_zero_expr(),
                    "{family:?} component {i}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn vorticity_degenerations_vanish() {
        // b = 0 and constant Phi: irrotational for both families.
        let params = FamilyParams::new(
            Expr::one(),
            Expr::zero(),
            Expr::sym("gamma"),
            Expr::sym("rho0"),
        )
        .unwrap();
        let constant_phi = FuncDef::new(2, Expr::sym("Phi0"));
        let iso = build_isochoric_family(&params, Some(&constant_phi)).unwrap();
        assert_eq!(vorticity(&iso), [Expr::zero(), Expr::zero(), Expr::zero()]);
        let blow = build_blowup_family(&params, Some(&constant_phi), None).unwrap();
        assert_eq!(vorticity(&blow), [Expr::zero(), Expr::zero(), Expr::zero()]);
    }

    #[test]
    fn divergence_of_velocity() {
        let params = FamilyParams::symbolic();
        let iso = build_isochoric_family(&params, None).unwrap();
        let div = iso.u.diff("x") + iso.v.diff("y") + iso.w.diff("z");
        assert_eq!(div, Expr::zero());
        let blow = build_blowup_family(&params, None, None).unwrap();
        let div = blow.u.diff("x") + blow.v.diff("y") + blow.w.diff("z");
        assert_eq!(div, Expr::sym("t").powi(-1));
    }

    #[test]
    fn lagrangian_fields_match_eulerian_on_path() {
        let params = FamilyParams::symbolic();
        for family in [Family::Isochoric, Family::Blowup] {
            let g = match family {
                Family::Isochoric => build_isochoric_family(&params, None).unwrap(),
                Family::Blowup => build_blowup_family(&params, None, None).unwrap(),
            };
            let wl = world_line_symbolic(family, &params, None);
            let lagr = lagrangian_fields_symbolic(family, &params, None, None);
            for (name, (eulerian, along)) in [
                ("u", (&g.u, &lagr.u)),
                ("v", (&g.v, &lagr.v)),
                ("w", (&g.w, &lagr.w)),
                ("rho", (&g.rho, &lagr.rho)),
                ("P", (&g.p, &lagr.p)),
                ("S", (&g.s, &lagr.s)),
            ] {
                let on_path = along_world_line(eulerian, &wl);
                assert!(
                    (on_path.clone() - along.clone())
                        .cleared_numerator()
                        .is_zero_expr(),
                    "{family:?} {name}: {on_path} vs {along}"
                );
            }
        }
    }

    #[test]
    fn entropy_constant_along_paths() {
        let params = FamilyParams::symbolic();
        for family in [Family::Isochoric, Family::Blowup] {
            let lagr = lagrangian_fields_symbolic(family, &params, None, None);
            assert_eq!(lagr.s.diff("t"), Expr::zero(), "{family:?}");
            // v is constant along paths too; only w (and rho, P for the
            // blow-up family) change.
            assert_eq!(lagr.v.diff("t"), Expr::zero());
        }
    }

    #[test]
    fn gamma_zero_freezes_transverse_motion() {
        let params = FamilyParams::new(
            Expr::sym("a"),
            Expr::sym("b"),
            Expr::zero(),
            Expr::sym("rho0"),
        )
        .unwrap();
        for family in [Family::Isochoric, Family::Blowup] {
            let lagr = lagrangian_fields_symbolic(family, &params, None, None);
            assert_eq!(lagr.w, Expr::zero(), "{family:?}");
        }
        // World lines become affine in t: the quadratic coefficient of z is 0.
        let wl = world_line_symbolic(Family::Isochoric, &params, None);
        assert_eq!(wl.z.diff_n("t", 2), Expr::zero());
    }

    #[test]
    fn blowup_degenerate_world_line_is_straight() {
        // u0 = 0 with b = 0: x and y freeze, only z moves (cubically), so
        // the path is a straight line; with gamma = 0 it degenerates to a
        // point.
        let params =
            FamilyParams::new(Expr::one(), Expr::zero(), Expr::sym("gamma"), Expr::one()).unwrap();
        let phi = FuncDef::new(2, parse("arg1 + 2*arg2").unwrap());
        let label = LagrangianLabel::Blowup {
            u0: rat(0, 1),
            y0: rat(3, 1),
            z0: rat(2, 1),
        };
        let wl = world_line(&label, &params, Some(&phi));
        assert_eq!(wl.x, Expr::int(-8));
        assert_eq!(wl.y, Expr::int(3));
        assert_eq!(wl.z, parse("2 - gamma*t^3/6").unwrap(),);
        let frozen = wl.z.subst_symbol("gamma", &Expr::zero());
        assert_eq!(frozen, Expr::int(2));
    }

    #[test]
    fn blowup_transverse_path_is_label_only() {
        // Particles sharing a blow-up point differ only in u0, so y(t) and
        // z(t) are u0-free expressions.
        let params = FamilyParams::symbolic();
        let wl = world_line_symbolic(Family::Blowup, &params, None);
        assert!(!wl.y.contains_symbol("u0"));
        assert!(!wl.z.contains_symbol("u0"));
        assert!(wl.x.contains_symbol("u0"));
    }
}
