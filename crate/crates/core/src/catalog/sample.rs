//! Exact sampling of admissible parameter values.
//!
//! Sum-of-squares constraints are satisfied identically through the rational
//! parametrization of the unit sphere: with `Q = Σ s_i²`, the point
//! `((1 - Q)/(1 + Q), 2 s_1/(1 + Q), ..., 2 s_k/(1 + Q))` has unit norm for
//! every rational choice of the `s_i`. Inequations are checked exactly and
//! violating draws are rejected.

use super::{ParameterDomain, SumSqTarget};
use crate::expr::{draw_rational, Rat};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

const MAX_ATTEMPTS: u32 = 200;

pub fn sample_parameters(domain: &ParameterDomain, rng: &mut ChaCha8Rng) -> BTreeMap<String, Rat> {
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut values: BTreeMap<String, Rat> = BTreeMap::new();

        for b in &domain.binary {
            let bit: u8 = rng.random_range(0..=1);
            values.insert(b.clone(), Rat::from_integer(bit.into()));
        }

        for (vars, target) in &domain.sum_squares {
            let radius_one = match target {
                SumSqTarget::One => true,
                SumSqTarget::Binary(name) => !values
                    .get(name)
                    .expect("binary targets are drawn before spheres")
                    .is_zero(),
            };
            if !radius_one {
                for v in vars {
                    values.insert(v.clone(), Rat::zero());
                }
                continue;
            }
            let free = vars.len() - 1;
            let s: Vec<Rat> = (0..free).map(|_| draw_rational(rng)).collect();
            let q: Rat = s.iter().map(|x| x.clone() * x.clone()).sum();
            let denom = Rat::one() + q.clone();
            values.insert(vars[0].clone(), (Rat::one() - q) / denom.clone());
            for (i, name) in vars.iter().skip(1).enumerate() {
                let two = Rat::from_integer(2.into());
                values.insert(name.clone(), two * s[i].clone() / denom.clone());
            }
        }

        for name in &domain.names {
            values
                .entry(name.clone())
                .or_insert_with(|| draw_rational(rng));
        }

        for name in &domain.nonzero {
            if values[name].is_zero() {
                continue 'attempt;
            }
        }
        for (name, forbidden) in &domain.not_equal {
            if &values[name] == forbidden {
                continue 'attempt;
            }
        }
        for group in &domain.not_all_zero {
            if group.iter().all(|n| values[n].is_zero()) {
                continue 'attempt;
            }
        }
        return values;
    }
    panic!("parameter domain admits no sample after {MAX_ATTEMPTS} attempts");
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    fn circle_domain() -> ParameterDomain {
        ParameterDomain {
            names: vec!["a".into(), "b".into()],
            sum_squares: vec![(vec!["a".into(), "b".into()], SumSqTarget::One)],
            nonzero: ["a".to_string()].into_iter().collect(),
            ..Default::default()
        }
    }

    #[test]
    fn circle_points_are_exactly_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let v = sample_parameters(&circle_domain(), &mut rng);
            let a = &v["a"];
            let b = &v["b"];
            assert_eq!(a.clone() * a.clone() + b.clone() * b.clone(), Rat::one());
            assert!(!a.is_zero());
        }
    }

    #[test]
    fn sphere_points_are_exactly_unit() {
        let domain = ParameterDomain {
            names: vec!["c".into(), "d".into(), "e".into()],
            sum_squares: vec![(vec!["c".into(), "d".into(), "e".into()], SumSqTarget::One)],
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let v = sample_parameters(&domain, &mut rng);
            let total: Rat = ["c", "d", "e"]
                .iter()
                .map(|n| v[*n].clone() * v[*n].clone())
                .sum();
            assert_eq!(total, Rat::one());
        }
    }

    #[test]
    fn binary_switch_controls_radius() {
        let domain = ParameterDomain {
            names: vec!["a".into(), "b".into(), "eps".into()],
            sum_squares: vec![(
                vec!["a".into(), "b".into()],
                SumSqTarget::Binary("eps".into()),
            )],
            binary: vec!["eps".into()],
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen_zero = false;
        let mut seen_one = false;
        for _ in 0..40 {
            let v = sample_parameters(&domain, &mut rng);
            let total = v["a"].clone() * v["a"].clone() + v["b"].clone() * v["b"].clone();
            assert_eq!(total, v["eps"]);
            seen_zero |= v["eps"].is_zero();
            seen_one |= v["eps"].is_one();
        }
        assert!(seen_zero && seen_one);
    }

    #[test]
    fn inequations_are_respected() {
        let domain = ParameterDomain {
            names: vec!["a".into()],
            not_equal: vec![("a".into(), crate::expr::rat(-1, 1))],
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let v = sample_parameters(&domain, &mut rng);
            assert_ne!(v["a"], crate::expr::rat(-1, 1));
        }
    }
}
