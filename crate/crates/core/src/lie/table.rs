//! Structure constants: recomputation from the basis fields, the shipped
//! reference datum, and the Jacobi identity check.

use super::{generator_name, VectorField, COORDS, DIM};
use crate::expr::{draw_rational, Binding, Expr, Rat};
use crate::linalg::{solve_rows, SolveOutcome};
use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

/// `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`, zero-based indices,
/// index 11 the central pressure translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    c: Vec<Vec<Vec<Rat>>>,
    /// Sparse `(i, j, k, c)` view of every nonzero entry.
    nonzeros: Vec<(usize, usize, usize, Rat)>,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("bracket [{}, {}] does not lie in the span of the basis; residual on {coord}: {residual}", generator_name(*i), generator_name(*j))]
    BracketNotInSpan {
        i: usize,
        j: usize,
        coord: String,
        residual: String,
    },
    #[error("evaluation points never reached full column rank")]
    DegenerateSampling,
    #[error("reference datum is malformed: {0}")]
    BadDatum(String),
}

impl StructureTable {
    pub fn from_entries(entries: &[(usize, usize, usize, Rat)]) -> Self {
        let mut c = vec![vec![vec![Rat::zero(); DIM]; DIM]; DIM];
        for (i, j, k, v) in entries {
            c[*i][*j][*k] = v.clone();
        }
        let mut t = StructureTable {
            c,
            nonzeros: Vec::new(),
        };
        t.rebuild_nonzeros();
        t
    }

    fn rebuild_nonzeros(&mut self) {
        self.nonzeros.clear();
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    if !self.c[i][j][k].is_zero() {
                        self.nonzeros.push((i, j, k, self.c[i][j][k].clone()));
                    }
                }
            }
        }
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    pub fn is_zero_entry(&self, i: usize, j: usize, k: usize) -> bool {
        self.c[i][j][k].is_zero()
    }

    pub fn nonzeros(&self) -> &[(usize, usize, usize, Rat)] {
        &self.nonzeros
    }

    /// `c[i][j][k] = -c[j][i][k]` and the central row/column vanish.
    pub fn check_invariants(&self) -> Result<(), String> {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(format!("antisymmetry fails at ({i},{j},{k})"));
                    }
                }
                if (i == DIM - 1 || j == DIM - 1) && self.c[i][j].iter().any(|v| !v.is_zero()) {
                    return Err(format!("central element appears in bracket ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    /// Bracket of two coefficient vectors through the structure constants.
    pub fn bracket_vec(&self, x: &[Expr; DIM], y: &[Expr; DIM]) -> [Expr; DIM] {
        let mut out: [Vec<Expr>; DIM] = std::array::from_fn(|_| Vec::new());
        for (i, j, k, c) in &self.nonzeros {
            if x[*i].is_zero_expr() || y[*j].is_zero_expr() {
                continue;
            }
            out[*k].push(Expr::rational(c.clone()) * x[*i].clone() * y[*j].clone());
        }
        std::array::from_fn(|k| Expr::add(std::mem::take(&mut out[k])))
    }

    /// Exact-rational fast path of [`Self::bracket_vec`].
    pub fn bracket_rat(&self, x: &[Rat; DIM], y: &[Rat; DIM]) -> [Rat; DIM] {
        let mut out: [Rat; DIM] = std::array::from_fn(|_| Rat::zero());
        for (i, j, k, c) in &self.nonzeros {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            out[*k] += c.clone() * x[*i].clone() * y[*j].clone();
        }
        out
    }
}

#[derive(Deserialize)]
struct DatumEntry {
    i: usize,
    j: usize,
    k: usize,
    c: i64,
}

const TABLE_DATUM: &str = include_str!("../../data/table1.json");

/// The shipped commutator-table datum (upper triangle of nonzero entries,
/// one-based indices; antisymmetric counterparts are derived).
pub fn reference_table() -> StructureTable {
    let entries: Vec<DatumEntry> =
        serde_json::from_str(TABLE_DATUM).expect("embedded table datum parses");
    let mut full = Vec::with_capacity(entries.len() * 2);
    for e in &entries {
        assert!(
            (1..=DIM).contains(&e.i) && (1..=DIM).contains(&e.j) && (1..=DIM).contains(&e.k),
            "datum index out of range"
        );
        assert!(e.i < e.j, "datum stores the upper triangle only");
        let c = Rat::from_integer(e.c.into());
        full.push((e.i - 1, e.j - 1, e.k - 1, c.clone()));
        full.push((e.j - 1, e.i - 1, e.k - 1, -c));
    }
    StructureTable::from_entries(&full)
}

/// Recomputes the structure constants of a basis whose pairwise brackets lie
/// in its span. Coefficients are found by exact solves on random evaluation
/// points and then confirmed symbolically; a pair whose bracket escapes the
/// span is reported together with the offending residual.
pub fn compute_structure_table(
    fields: &[VectorField; DIM],
    seed: u64,
) -> Result<StructureTable, TableError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Binding> = Vec::new();
    let grow = |rng: &mut ChaCha8Rng, points: &mut Vec<Binding>| {
        let mut b = Binding::new();
        for c in COORDS {
            b.scalars.insert(c.to_string(), draw_rational(rng).into());
        }
        points.push(b);
    };
    grow(&mut rng, &mut points);
    grow(&mut rng, &mut points);

    let eval_field = |f: &VectorField, points: &[Binding]| -> Vec<Rat> {
        points
            .iter()
            .flat_map(|b| {
                f.coeffs.iter().map(|c| {
                    c.eval(b)
                        .expect("polynomial coefficients evaluate exactly")
                        .as_exact()
                        .expect("exact binding stays exact")
                        .clone()
                })
            })
            .collect()
    };

    let mut entries: Vec<(usize, usize, usize, Rat)> = Vec::new();
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            let br = fields[i].bracket(&fields[j]);
            let mut solved = None;
            for _ in 0..6 {
                let columns: Vec<Vec<Rat>> =
                    fields.iter().map(|f| eval_field(f, &points)).collect();
                let rows = columns[0].len();
                let a: Vec<Vec<Rat>> = (0..rows)
                    .map(|r| columns.iter().map(|col| col[r].clone()).collect())
                    .collect();
                let rhs = eval_field(&br, &points);
                match solve_rows(&a, &rhs) {
                    // An inconsistent fit is still handed to the symbolic
                    // confirmation below, which reports the residual field.
                    SolveOutcome::Unique(x) | SolveOutcome::Inconsistent(x) => {
                        solved = Some(x);
                        break;
                    }
                    SolveOutcome::RankDeficient => grow(&mut rng, &mut points),
                }
            }
            let coeffs = solved.ok_or(TableError::DegenerateSampling)?;

            // Symbolic confirmation: the residual field must vanish
            // identically, not only at the sample points.
            let mut residual = br.clone();
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    residual = residual.plus(&fields[k].scale(&Expr::rational(-c.clone())));
                }
            }
            if let Some((idx, bad)) = residual
                .coeffs
                .iter()
                .enumerate()
                .find(|(_, e)| !e.is_zero_expr())
            {
                return Err(TableError::BracketNotInSpan {
                    i,
                    j,
                    coord: COORDS[idx].to_string(),
                    residual: bad.to_string(),
                });
            }
            for (k, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                    entries.push((j, i, k, -c));
                }
            }
        }
    }
    Ok(StructureTable::from_entries(&entries))
}

#[derive(Debug, Clone)]
pub struct JacobiReport {
    /// `(i, j, k)` triples (zero-based) that violate the identity, with the
    /// first offending target index.
    pub violations: Vec<(usize, usize, usize, usize)>,
    pub triples_checked: usize,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Σ_m c[i][j][m] c[m][k][l] + cyclic = 0` for all basis triples.
pub fn verify_jacobi(table: &StructureTable) -> JacobiReport {
    let mut violations = Vec::new();
    let mut triples = 0;
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for k in (j + 1)..DIM {
                triples += 1;
                'target: for l in 0..DIM {
                    let mut acc = Rat::zero();
                    for m in 0..DIM {
                        acc += table.c(i, j, m).clone() * table.c(m, k, l).clone();
                        acc += table.c(j, k, m).clone() * table.c(m, i, l).clone();
                        acc += table.c(k, i, m).clone() * table.c(m, j, l).clone();
                    }
                    if !acc.is_zero() {
                        violations.push((i, j, k, l));
                        break 'target;
                    }
                }
            }
        }
    }
    JacobiReport {
        violations,
        triples_checked: triples,
    }
}
