//! Export of the trajectory and surface data behind the four figures:
//! CSV samples of world lines, plane meshes, the blow-up surface and the
//! straight lines collecting particles from one blow-up point.

use super::{
    blowup_line, lagrangian_fields, line_point, moving_plane, plane_intersection_line,
    separating_plane, world_line, Family, LagrangianLabel, LineSpec,
};
use crate::expr::{parse, rat, Binding, Expr, FuncDef, Rat};
use crate::gasdyn::FamilyParams;
use num_traits::ToPrimitive;
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("unknown figure id {0}; figures 1-4 are available")]
    UnknownId(u8),
    #[error("cannot write figure data: {0}")]
    Io(#[from] std::io::Error),
    #[error("field evaluation failed: {0}")]
    Eval(String),
}

/// Caption parameter set shared by all four figures.
fn figure_params() -> FamilyParams {
    FamilyParams::new(
        Expr::ratio(4, 5),
        Expr::ratio(3, 5),
        Expr::one(),
        Expr::one(),
    )
    .expect("a is nonzero")
}

fn phi_sum() -> FuncDef {
    FuncDef::new(2, parse("arg1 + arg2").unwrap())
}

fn phi_paraboloid() -> FuncDef {
    FuncDef::new(2, parse("-arg2^2 - arg1^2").unwrap())
}

fn f_zero() -> FuncDef {
    FuncDef::new(1, Expr::zero())
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_lines(path: &Path, header: &str, rows: &[String]) -> Result<(), FigureError> {
    let mut out = std::fs::File::create(path)?;
    out.write_all(header.as_bytes())?;
    out.write_all(b"\n")?;
    for r in rows {
        out.write_all(r.as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Uniform grid; when `midpoints` is set the samples sit at cell centers so
/// a singular time at an endpoint or at zero is never hit.
fn time_grid(t0: f64, t1: f64, n: usize, midpoints: bool) -> Vec<f64> {
    let n = n.max(2);
    if midpoints {
        let h = (t1 - t0) / n as f64;
        (0..n).map(|k| t0 + (k as f64 + 0.5) * h).collect()
    } else {
        (0..=n)
            .map(|k| t0 + (t1 - t0) * (k as f64) / (n as f64))
            .collect()
    }
}

fn trajectory_rows(
    label: &LagrangianLabel,
    params: &FamilyParams,
    phi: &FuncDef,
    f: &FuncDef,
    times: &[f64],
) -> Result<Vec<String>, FigureError> {
    let wl = world_line(label, params, Some(phi));
    let fields = lagrangian_fields(label, params, Some(phi), Some(f));
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let b = Binding::new().set("t", t);
        let ev = |e: &Expr| -> Result<f64, FigureError> {
            Ok(e.eval(&b)
                .map_err(|er| FigureError::Eval(er.to_string()))?
                .to_f64())
        };
        rows.push(
            [
                fmt17(t),
                fmt17(ev(&wl.x)?),
                fmt17(ev(&wl.y)?),
                fmt17(ev(&wl.z)?),
                fmt17(ev(&fields.u)?),
                fmt17(ev(&fields.v)?),
                fmt17(ev(&fields.w)?),
                fmt17(ev(&fields.rho)?),
                fmt17(ev(&fields.p)?),
                fmt17(ev(&fields.s)?),
            ]
            .join(","),
        );
    }
    Ok(rows)
}

const TRAJECTORY_HEADER: &str = "t,x,y,z,u,v,w,rho,P,S";
const MESH_HEADER: &str = "y0,z0,x,y,z";
const LINE_HEADER: &str = "s,x,y,z";

fn line_rows(line: &LineSpec, span: (f64, f64), n: usize) -> Vec<String> {
    (0..=n)
        .map(|k| {
            let s = span.0 + (span.1 - span.0) * (k as f64) / (n as f64);
            let sr = Rat::from_float(s).unwrap_or_else(|| rat(0, 1));
            let p = line_point(line, &sr);
            [
                fmt17(s),
                fmt17(p[0].to_f64().unwrap()),
                fmt17(p[1].to_f64().unwrap()),
                fmt17(p[2].to_f64().unwrap()),
            ]
            .join(",")
        })
        .collect()
}

/// Writes the CSV artifacts of one figure into `out_dir` and returns the
/// created paths (a manifest first, data files after).
pub fn emit_figure_data(figure: u8, out_dir: &Path) -> Result<Vec<PathBuf>, FigureError> {
    std::fs::create_dir_all(out_dir)?;
    let params = figure_params();
    let mut written = Vec::new();
    let mut files_meta = Vec::new();
    let mut write = |name: &str,
                     kind: &str,
                     label: &str,
                     header: &str,
                     rows: &[String],
                     written: &mut Vec<PathBuf>|
     -> Result<(), FigureError> {
        let path = out_dir.join(name);
        write_lines(&path, header, rows)?;
        files_meta.push(json!({"name": name, "kind": kind, "label": label}));
        written.push(path);
        Ok(())
    };

    let phi_text;
    match figure {
        1 => {
            phi_text = "arg1 + arg2";
            let phi = phi_sum();
            let labels = [
                ("traj_0.csv", [rat(5, 1), rat(-2, 1), rat(1, 1)]),
                ("traj_1.csv", [rat(1, 1), rat(1, 1), rat(1, 1)]),
                ("traj_2.csv", [rat(11, 3), rat(2, 1), rat(2, 1)]),
            ];
            let times = time_grid(-3.0, 3.0, 600, false);
            for (name, triple) in labels {
                let label = LagrangianLabel::new(Family::Isochoric, triple.clone());
                let rows = trajectory_rows(&label, &params, &phi, &f_zero(), &times)?;
                write(
                    name,
                    "trajectory",
                    &format!("(x0,y0,z0)=({},{},{})", triple[0], triple[1], triple[2]),
                    TRAJECTORY_HEADER,
                    &rows,
                    &mut written,
                )?;
            }
        }
        2 => {
            phi_text = "arg1 + arg2";
            let phi = phi_sum();
            let times = time_grid(0.0, 1.0, 200, false);
            for (name, triple) in [
                ("traj_0.csv", [rat(1, 1), rat(1, 1), rat(1, 1)]),
                ("traj_1.csv", [rat(1, 1), rat(1, 1), rat(-2, 1)]),
            ] {
                let label = LagrangianLabel::new(Family::Isochoric, triple.clone());
                let rows = trajectory_rows(&label, &params, &phi, &f_zero(), &times)?;
                write(
                    name,
                    "trajectory",
                    &format!("(x0,y0,z0)=({},{},{})", triple[0], triple[1], triple[2]),
                    TRAJECTORY_HEADER,
                    &rows,
                    &mut written,
                )?;
            }
            // The material plane of the particles that start on y = 1, at
            // the two caption times, sampled over an (x, z) window.
            for (name, label, t) in [
                ("plane_t0.csv", "moving plane at t=0", rat(0, 1)),
                ("plane_t1.csv", "moving plane at t=1", rat(1, 1)),
            ] {
                let plane =
                    moving_plane(&t, &rat(1, 1), &params).expect("figure parameters are rational");
                let mut rows = Vec::new();
                for i in 0..=20 {
                    for j in 0..=20 {
                        let x = -1.0 + 5.0 * (i as f64) / 20.0;
                        let z = -3.0 + 5.0 * (j as f64) / 20.0;
                        // y from the plane equation y = y_at_z0 - n_z z.
                        let y = plane.point[1].to_f64().unwrap()
                            - plane.normal[2].to_f64().unwrap() * z;
                        rows.push([fmt17(x), fmt17(z), fmt17(x), fmt17(y), fmt17(z)].join(","));
                    }
                }
                write(name, "mesh", label, MESH_HEADER, &rows, &mut written)?;
            }
            let t0 = rat(0, 1);
            let p1 = moving_plane(&t0, &rat(1, 1), &params).unwrap();
            let p2 = separating_plane(&t0, &params).unwrap();
            let line = plane_intersection_line(&p1, &p2).expect("planes are transverse at t=0");
            let rows = line_rows(&line, (-1.0, 4.0), 50);
            write(
                "separating_line.csv",
                "line",
                "intersection with the separating plane at t=0",
                LINE_HEADER,
                &rows,
                &mut written,
            )?;
        }
        3 => {
            phi_text = "-arg2^2 - arg1^2";
            let phi = phi_paraboloid();
            let labels = [
                ("traj_0.csv", [rat(3, 1), rat(-2, 1), rat(0, 1)]),
                ("traj_1.csv", [rat(1, 1), rat(1, 1), rat(1, 1)]),
                ("traj_2.csv", [rat(-1, 1), rat(1, 1), rat(-1, 1)]),
            ];
            // Midpoint sampling keeps the singular time t = 0 off the grid.
            let times = time_grid(-3.0, 3.0, 600, true);
            for (name, triple) in labels {
                let label = LagrangianLabel::new(Family::Blowup, triple.clone());
                let rows = trajectory_rows(&label, &params, &phi, &f_zero(), &times)?;
                write(
                    name,
                    "trajectory",
                    &format!("(u0,y0,z0)=({},{},{})", triple[0], triple[1], triple[2]),
                    TRAJECTORY_HEADER,
                    &rows,
                    &mut written,
                )?;
            }
        }
        4 => {
            phi_text = "-arg2^2 - arg1^2";
            let phi = phi_paraboloid();
            let times = time_grid(-2.0, 2.0, 400, true);
            for (name, triple) in [
                ("traj_0.csv", [rat(1, 1), rat(1, 1), rat(1, 1)]),
                ("traj_1.csv", [rat(-2, 1), rat(1, 1), rat(1, 1)]),
                ("traj_2.csv", [rat(0, 1), rat(1, 1), rat(1, 1)]),
            ] {
                let label = LagrangianLabel::new(Family::Blowup, triple.clone());
                let rows = trajectory_rows(&label, &params, &phi, &f_zero(), &times)?;
                write(
                    name,
                    "trajectory",
                    &format!("(u0,y0,z0)=({},{},{})", triple[0], triple[1], triple[2]),
                    TRAJECTORY_HEADER,
                    &rows,
                    &mut written,
                )?;
            }
            // The blow-up surface x = -Phi(z0, y0) over the default
            // 41 x 41 grid.
            let rows: Vec<String> = super::blowup_surface_grid(&rat(-2, 1), &rat(2, 1), 41, &phi)
                .expect("concrete profile")
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| fmt17(v.to_f64().unwrap()))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            write(
                "surface.csv",
                "mesh",
                "blow-up surface x=-Phi(z0,y0)",
                MESH_HEADER,
                &rows,
                &mut written,
            )?;
            for (name, t) in [("line_tneg.csv", rat(-2, 1)), ("line_tpos.csv", rat(2, 1))] {
                let line = blowup_line(&rat(1, 1), &rat(1, 1), &t, &params, &phi)
                    .expect("concrete profile");
                let rows = line_rows(&line, (-3.0, 3.0), 60);
                write(
                    name,
                    "line",
                    &format!("particles from the blow-up point at t={t}"),
                    LINE_HEADER,
                    &rows,
                    &mut written,
                )?;
            }
        }
        other => return Err(FigureError::UnknownId(other)),
    }

    let manifest = json!({
        "figure": figure,
        "parameters": {
            "a": "4/5",
            "b": "3/5",
            "gamma": "1",
            "rho0": "1",
            "phi": phi_text,
            "f": "0"
        },
        "files": files_meta,
    });
    let manifest_path = out_dir.join("manifest.json");
    std::fs::write(
        &manifest_path,
        format!("{}\n", serde_json::to_string_pretty(&manifest)?),
    )?;
    written.insert(0, manifest_path);
    Ok(written)
}

impl From<serde_json::Error> for FigureError {
    fn from(e: serde_json::Error) -> Self {
        FigureError::Io(std::io::Error::other(e))
    }
}
