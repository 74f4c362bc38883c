//! Classical fixed-step fourth-order Runge-Kutta integration of particle
//! paths, the independent numeric oracle for the closed-form world lines.

use crate::expr::{Binding, Expr, Value};
use crate::gasdyn::GasFields;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub rho: f64,
    pub p: f64,
    pub s: f64,
}

#[derive(Debug, Clone)]
pub struct TrajectorySamples {
    pub rows: Vec<SampleRow>,
    /// Actual step used; the requested step is rounded so the span divides
    /// evenly.
    pub step: f64,
    pub integrator: &'static str,
}

impl TrajectorySamples {
    pub fn monotone_time(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| (w[1].t - w[0].t).signum() == (self.step).signum())
    }
}

#[derive(Debug, Error)]
pub enum IntegrateError {
    #[error("velocity field is not finite at t = {t}: {detail}")]
    NonFinite { t: f64, detail: String },
    #[error("step must be positive and finite")]
    BadStep,
    #[error("empty integration span")]
    EmptySpan,
}

struct FieldEval<'a> {
    g: &'a GasFields,
    binding: Binding,
}

impl<'a> FieldEval<'a> {
    fn new(g: &'a GasFields) -> Self {
        FieldEval {
            g,
            binding: Binding::new(),
        }
    }

    fn place(&mut self, t: f64, pos: [f64; 3]) {
        self.binding.scalars.insert("t".into(), Value::Float(t));
        self.binding
            .scalars
            .insert("x".into(), Value::Float(pos[0]));
        self.binding
            .scalars
            .insert("y".into(), Value::Float(pos[1]));
        self.binding
            .scalars
            .insert("z".into(), Value::Float(pos[2]));
    }

    fn eval(&self, e: &Expr, t: f64) -> Result<f64, IntegrateError> {
        let v = e
            .eval(&self.binding)
            .map_err(|err| IntegrateError::NonFinite {
                t,
                detail: err.to_string(),
            })?
            .to_f64();
        if !v.is_finite() {
            return Err(IntegrateError::NonFinite {
                t,
                detail: "non-finite value".into(),
            });
        }
        Ok(v)
    }

    fn velocity(&mut self, t: f64, pos: [f64; 3]) -> Result<[f64; 3], IntegrateError> {
        self.place(t, pos);
        Ok([
            self.eval(&self.g.u, t)?,
            self.eval(&self.g.v, t)?,
            self.eval(&self.g.w, t)?,
        ])
    }

    fn row(&mut self, t: f64, pos: [f64; 3]) -> Result<SampleRow, IntegrateError> {
        self.place(t, pos);
        Ok(SampleRow {
            t,
            x: pos[0],
            y: pos[1],
            z: pos[2],
            u: self.eval(&self.g.u, t)?,
            v: self.eval(&self.g.v, t)?,
            w: self.eval(&self.g.w, t)?,
            rho: self.eval(&self.g.rho, t)?,
            p: self.eval(&self.g.p, t)?,
            s: self.eval(&self.g.s, t)?,
        })
    }
}

fn axpy(y: &[f64; 3], a: f64, x: &[f64; 3]) -> [f64; 3] {
    [y[0] + a * x[0], y[1] + a * x[1], y[2] + a * x[2]]
}

/// Integrates `dx/dt = u(t, x)` from `start` over `[t0, t1]` with a fixed
/// step close to `step` (adjusted so the span divides evenly), sampling the
/// six gas-dynamic functions along the path.
///
/// The span must avoid singular times of the field; solution fields with a
/// pole at `t = 0` reject spans containing it.
pub fn integrate_trajectory(
    g: &GasFields,
    start: [f64; 3],
    t0: f64,
    t1: f64,
    step: f64,
) -> Result<TrajectorySamples, IntegrateError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(IntegrateError::BadStep);
    }
    let span = t1 - t0;
    if span == 0.0 {
        return Err(IntegrateError::EmptySpan);
    }
    let n = (span.abs() / step).round().max(1.0) as usize;
    let h = span / n as f64;

    let mut eval = FieldEval::new(g);
    let mut rows = Vec::with_capacity(n + 1);
    let mut pos = start;
    rows.push(eval.row(t0, pos)?);
    for k in 0..n {
        let t = t0 + span * (k as f64) / (n as f64);
        let k1 = eval.velocity(t, pos)?;
        let k2 = eval.velocity(t + h / 2.0, axpy(&pos, h / 2.0, &k1))?;
        let k3 = eval.velocity(t + h / 2.0, axpy(&pos, h / 2.0, &k2))?;
        let k4 = eval.velocity(t + h, axpy(&pos, h, &k3))?;
        for i in 0..3 {
            pos[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t_next = t0 + span * ((k + 1) as f64) / (n as f64);
        rows.push(eval.row(t_next, pos)?);
    }
    Ok(TrajectorySamples {
        rows,
        step: h,
        integrator: "rk4",
    })
}

/// Largest positional deviation between integrated samples and a closed
/// form evaluated at the same times.
pub fn max_deviation(samples: &TrajectorySamples, reference: impl Fn(f64) -> [f64; 3]) -> f64 {
    samples
        .rows
        .iter()
        .map(|r| {
            let p = reference(r.t);
            (r.x - p[0])
                .abs()
                .max((r.y - p[1]).abs())
                .max((r.z - p[2]).abs())
        })
        .fold(0.0, f64::max)
}
