//! Verification of catalog entries: bracket closure, annihilation of the
//! published invariants, and functional independence.

use super::{sample_parameters, CatalogEntry, InvariantSet, SubalgebraSpec};
use crate::expr::{is_zero_with, Binding, Expr, Rat, ZeroPolicy, ZeroVerdict};
use crate::lie::{basis, generator_name, StructureTable, VectorField, COORDS, DIM};
use crate::linalg::{rank_exact, rank_f64};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy)]
pub struct CatalogPolicy {
    /// Parameter draws for closure checks and the zero-test fallback.
    pub draws: u32,
    pub seed: u64,
    /// Points for the Jacobian rank check (at least 3).
    pub independence_points: u32,
    /// Singular values above this threshold count toward the rank.
    pub rank_threshold: f64,
}

impl Default for CatalogPolicy {
    fn default() -> Self {
        CatalogPolicy {
            draws: 20,
            seed: 0,
            independence_points: 3,
            rank_threshold: 1e-8,
        }
    }
}

impl CatalogPolicy {
    /// Deterministic per-entry seed so suites parallelize without drift.
    pub fn entry_seed(&self, id: &str) -> u64 {
        let mut h = self.seed ^ 0x9e37_79b9_7f4a_7c15;
        for b in id.bytes() {
            h = h.rotate_left(5) ^ u64::from(b);
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        h
    }

    fn zero_policy(&self, seed: u64) -> ZeroPolicy {
        ZeroPolicy::new(self.draws, seed)
    }
}

/// Outcome of one entry's full verification.
#[derive(Debug, Clone)]
pub struct EntryCheck {
    pub id: String,
    pub closure: Result<(), String>,
    /// One verdict per (generator, invariant) pair, 4 x 5 including density.
    pub annihilation: Vec<(String, String, ZeroVerdict)>,
    pub independence: Result<Vec<usize>, String>,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.closure.is_ok()
            && self.annihilation.iter().all(|(_, _, v)| v.is_zero())
            && self.independence.is_ok()
    }

    pub fn run(entry: &CatalogEntry, table: &StructureTable, policy: &CatalogPolicy) -> Self {
        EntryCheck {
            id: entry.spec.id.clone(),
            closure: verify_closure(&entry.spec, table, policy),
            annihilation: verify_invariants(&entry.spec, &entry.invariants, policy),
            independence: verify_independence(entry, policy),
        }
    }
}

fn bind_params(values: &BTreeMap<String, Rat>) -> Binding {
    let mut b = Binding::new();
    for (k, v) in values {
        b.scalars.insert(k.clone(), v.clone().into());
    }
    b
}

fn eval_generator(gen: &[Expr; DIM], binding: &Binding) -> Result<[Rat; DIM], String> {
    let mut out: [Rat; DIM] = std::array::from_fn(|_| Rat::from_integer(0.into()));
    for (k, c) in gen.iter().enumerate() {
        let v = c
            .eval(binding)
            .map_err(|e| format!("generator component {k}: {e}"))?;
        out[k] = v
            .as_exact()
            .ok_or_else(|| format!("generator component {k} is not exact"))?
            .clone();
    }
    Ok(out)
}

/// For sampled admissible parameters, every pairwise bracket of the four
/// generators (through the structure constants) must stay inside their
/// span: the stacked 5 x 12 matrix has exact rank at most 4, while the
/// generators alone have rank exactly 4.
pub fn verify_closure(
    spec: &SubalgebraSpec,
    table: &StructureTable,
    policy: &CatalogPolicy,
) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.entry_seed(&spec.id) ^ 0x11);
    for draw in 0..policy.draws {
        let params = sample_parameters(&spec.params, &mut rng);
        let binding = bind_params(&params);
        let gens: Vec<[Rat; DIM]> = spec
            .generators
            .iter()
            .map(|g| eval_generator(g, &binding))
            .collect::<Result<_, _>>()?;

        let gen_rows: Vec<Vec<Rat>> = gens.iter().map(|g| g.to_vec()).collect();
        if rank_exact(&gen_rows) != 4 {
            return Err(format!(
                "generators are linearly dependent at draw {draw} with params {params:?}"
            ));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                let br = table.bracket_rat(&gens[i], &gens[j]);
                let mut stacked = gen_rows.clone();
                stacked.push(br.to_vec());
                if rank_exact(&stacked) > 4 {
                    return Err(format!(
                        "bracket of generators {} and {} leaves the span at draw {draw} \
                         (params {params:?}, residual vector {br:?})",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Applies each generator to each published invariant and to the density.
/// The symbolic route decides almost every pair; parameters fall back to
/// exact constrained sampling inside the zero test.
pub fn verify_invariants(
    spec: &SubalgebraSpec,
    inv: &InvariantSet,
    policy: &CatalogPolicy,
) -> Vec<(String, String, ZeroVerdict)> {
    let base = basis();
    let domain = spec.params.clone();
    let seed = policy.entry_seed(&spec.id) ^ 0x22;
    let mut out = Vec::with_capacity(20);
    for (gi, gen) in spec.generators.iter().enumerate() {
        let field = VectorField::from_coeff_vector(gen, &base);
        let gen_label = describe_generator(gen);
        let mut subjects: Vec<(String, Expr)> = inv
            .invariants
            .iter()
            .enumerate()
            .map(|(k, e)| (format!("I{}", k + 1), e.clone()))
            .collect();
        subjects.push(("rho".to_string(), Expr::sym("rho")));
        for (name, e) in subjects {
            let applied = field.apply(&e);
            let sampler = |rng: &mut ChaCha8Rng| sample_parameters(&domain, rng);
            let verdict = is_zero_with(
                &applied,
                &policy.zero_policy(seed ^ (gi as u64) << 8),
                Some(&sampler),
            );
            out.push((gen_label.clone(), name, verdict));
        }
    }
    out
}

fn describe_generator(gen: &[Expr; DIM]) -> String {
    let mut parts = Vec::new();
    for (k, c) in gen.iter().enumerate() {
        if c.is_zero_expr() {
            continue;
        }
        if c.is_one_expr() {
            parts.push(generator_name(k));
        } else {
            parts.push(format!("({c}){}", generator_name(k)));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// The numeric Jacobian of the four invariants plus the density with respect
/// to the nine coordinates must have rank five at several random admissible
/// points.
pub fn verify_independence(
    entry: &CatalogEntry,
    policy: &CatalogPolicy,
) -> Result<Vec<usize>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.entry_seed(&entry.spec.id) ^ 0x33);
    let mut ranks = Vec::new();
    for point in 0..policy.independence_points {
        let params = sample_parameters(&entry.spec.params, &mut rng);
        let param_exprs: BTreeMap<String, Expr> = params
            .iter()
            .map(|(k, v)| (k.clone(), Expr::rational(v.clone())))
            .collect();
        let mut rows: Vec<Expr> = entry
            .invariants
            .invariants
            .iter()
            .map(|e| e.subst_symbols(&param_exprs))
            .collect();
        rows.push(Expr::sym("rho"));

        let jacobian: Vec<Vec<Expr>> = rows
            .iter()
            .map(|r| COORDS.iter().map(|c| r.diff(c)).collect())
            .collect();

        let mut matrix: Option<Vec<Vec<f64>>> = None;
        'attempt: for _ in 0..100 {
            let mut binding = Binding::new();
            for c in COORDS {
                binding
                    .scalars
                    .insert(c.to_string(), crate::expr::draw_rational(&mut rng).into());
            }
            let mut m = Vec::with_capacity(5);
            for row in &jacobian {
                let mut vals = Vec::with_capacity(9);
                for e in row {
                    match e.eval(&binding) {
                        Ok(v) => vals.push(v.to_f64()),
                        Err(_) => continue 'attempt,
                    }
                }
                m.push(vals);
            }
            matrix = Some(m);
            break;
        }
        let m = matrix.ok_or_else(|| format!("no pole-free point found at point {point}"))?;
        let rank = rank_f64(&m, policy.rank_threshold);
        if rank != 5 {
            return Err(format!(
                "Jacobian rank {rank} (expected 5) at point {point} with params {params:?}"
            ));
        }
        ranks.push(rank);
    }
    Ok(ranks)
}
