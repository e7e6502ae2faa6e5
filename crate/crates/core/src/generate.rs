//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a `(seed, options)` pair always yields the same
//! instance on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::inverse_linf::CaseKind;
use crate::model::{
    BinarySolution, CostWeights, FkpInstance, InverseInstance, Item, ModificationBounds, Norm,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    /// Profits and costs are drawn from `1..=max_value`.
    pub max_value: i64,
    /// Caps are drawn from `0..=max_bound`, then clamped so modified
    /// values stay positive.
    pub max_bound: i64,
    /// Draw cost caps too; otherwise `lambda_bar = mu_bar = 0`.
    pub cost_bounds: bool,
    /// Budget relation between `b` and the selected cost.
    pub case: CaseKind,
    /// Draw weights `k/d` with `k` in `0..=4`, `d` in `1..=2`; otherwise all 1.
    pub random_weights: bool,
    pub norm: Norm,
}

impl GenOptions {
    /// Profit-only l1 instances with `b` equal to the selected cost.
    pub fn fifkp(max_value: i64, max_bound: i64) -> Self {
        GenOptions {
            max_value,
            max_bound,
            cost_bounds: false,
            case: CaseKind::Equal,
            random_weights: true,
            norm: Norm::L1,
        }
    }

    /// l-infinity instances with cost caps and the given budget case.
    pub fn linf(max_value: i64, max_bound: i64, case: CaseKind) -> Self {
        GenOptions {
            max_value,
            max_bound,
            cost_bounds: true,
            case,
            random_weights: false,
            norm: Norm::LInf,
        }
    }
}

/// Profit-only l1 instance; shorthand for [`gen_with`] and [`GenOptions::fifkp`].
pub fn gen_random(n: usize, seed: u64, max_value: i64, max_bound: i64) -> InverseInstance {
    gen_with(n, seed, &GenOptions::fifkp(max_value, max_bound))
}

pub fn gen_with(n: usize, seed: u64, opts: &GenOptions) -> InverseInstance {
    assert!(n >= 1, "need at least one item");
    assert!(opts.max_value >= 1 && opts.max_bound >= 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<Item> = (0..n)
        .map(|_| Item {
            profit: rng.gen_range(1..=opts.max_value),
            cost: rng.gen_range(1..=opts.max_value),
        })
        .collect();

    let mut bounds = ModificationBounds::zeros(n);
    for (i, it) in items.iter().enumerate() {
        bounds.u_bar[i] = rng.gen_range(0..=opts.max_bound);
        bounds.v_bar[i] = rng.gen_range(0..=opts.max_bound).min(it.profit - 1);
        if opts.cost_bounds {
            bounds.lambda_bar[i] = rng.gen_range(0..=opts.max_bound);
            bounds.mu_bar[i] = rng.gen_range(0..=opts.max_bound).min(it.cost - 1);
        }
    }

    let weights = if opts.random_weights {
        let mut draw = || Rational::new(rng.gen_range(0..=4i64), rng.gen_range(1..=2i64));
        let w = (0..n).map(|_| draw()).collect();
        let w_cost = (0..n).map(|_| draw()).collect();
        CostWeights { w, w_cost }
    } else {
        CostWeights::uniform(n)
    };

    let mut x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    if !x.iter().any(|&b| b) {
        x[rng.gen_range(0..n)] = true;
    }
    let selected: i64 = (0..n).filter(|&i| x[i]).map(|i| items[i].cost).sum();
    let step = opts.max_bound.max(1);
    let budget = match opts.case {
        CaseKind::Equal => selected,
        CaseKind::Deficit => selected + rng.gen_range(1..=step),
        CaseKind::Surplus if selected > 1 => selected - rng.gen_range(1..=step.min(selected - 1)),
        CaseKind::Surplus => selected,
    };

    InverseInstance::new(
        FkpInstance::new(items, budget).expect("generated items are positive"),
        BinarySolution::from_bools(x),
        bounds,
        weights,
        opts.norm,
    )
    .expect("generated instances satisfy every invariant")
}

/// Large feasible instances for timing: wide caps (`v_bar = p - 1`,
/// `u_bar = c`) guarantee a ratio separation exists, and `b` equals the
/// selected cost.
pub fn gen_scaling(n: usize, seed: u64, norm: Norm) -> InverseInstance {
    assert!(n >= 1, "need at least one item");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_value = 1000;
    let items: Vec<Item> = (0..n)
        .map(|_| Item {
            profit: rng.gen_range(1..=max_value),
            cost: rng.gen_range(1..=max_value),
        })
        .collect();
    let mut bounds = ModificationBounds::zeros(n);
    for (i, it) in items.iter().enumerate() {
        bounds.u_bar[i] = it.cost;
        bounds.v_bar[i] = it.profit - 1;
    }
    let mut x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    x[0] = true;
    let budget = (0..n).filter(|&i| x[i]).map(|i| items[i].cost).sum();
    InverseInstance::new(
        FkpInstance::new(items, budget).expect("generated items are positive"),
        BinarySolution::from_bools(x),
        bounds,
        CostWeights::uniform(n),
        norm,
    )
    .expect("generated instances satisfy every invariant")
}

/// Random forward instance with `budget` in `1..=sum of costs`.
pub fn gen_fkp(n: usize, seed: u64, max_value: i64) -> FkpInstance {
    assert!(n >= 1 && max_value >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<Item> = (0..n)
        .map(|_| Item {
            profit: rng.gen_range(1..=max_value),
            cost: rng.gen_range(1..=max_value),
        })
        .collect();
    let total: i64 = items.iter().map(|it| it.cost).sum();
    let budget = rng.gen_range(1..=total);
    FkpInstance { items, budget }
}

/// Random positive values with an even sum, `a_i` in `1..=max_value`.
pub fn gen_partition_values(n: usize, seed: u64, max_value: i64) -> Vec<i64> {
    assert!(n >= 1 && max_value >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_value)).collect();
    if values.iter().sum::<i64>() % 2 != 0 {
        // flip parity of one entry without leaving the range
        let i = rng.gen_range(0..n);
        if values[i] > 1 {
            values[i] -= 1;
        } else if max_value > 1 {
            values[i] += 1;
        } else {
            values.push(1);
        }
    }
    values
}

/// Sizes and ranges of the oracle-checked corpora.
pub const CORPUS_MAX_N: usize = 5;
pub const CORPUS_MAX_VALUE: i64 = 10;
pub const CORPUS_MAX_BOUND: i64 = 3;

/// `count` profit-only l1 instances, `n` cycling through `1..=5`.
pub fn fifkp_corpus(count: usize, base_seed: u64) -> Vec<InverseInstance> {
    (0..count)
        .map(|k| {
            let n = 1 + k % CORPUS_MAX_N;
            gen_random(
                n,
                base_seed.wrapping_add(k as u64),
                CORPUS_MAX_VALUE,
                CORPUS_MAX_BOUND,
            )
        })
        .collect()
}

/// `count` l-infinity instances cycling through the three budget cases.
/// Draws whose exhaustive search space exceeds `max_space` are redrawn with
/// the next seed.
pub fn linf_corpus(count: usize, base_seed: u64, max_space: u128) -> Vec<InverseInstance> {
    const CASES: [CaseKind; 3] = [CaseKind::Equal, CaseKind::Deficit, CaseKind::Surplus];
    (0..count)
        .map(|k| {
            let opts = GenOptions::linf(CORPUS_MAX_VALUE, CORPUS_MAX_BOUND, CASES[k % 3]);
            let n = 1 + (k / 3) % CORPUS_MAX_N;
            let mut seed = base_seed.wrapping_add((k as u64) << 20);
            loop {
                let inv = gen_with(n, seed, &opts);
                if crate::oracle::search_space(&inv).is_some_and(|s| s <= max_space) {
                    return inv;
                }
                seed = seed.wrapping_add(1);
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse_linf::classify_case;

    #[test]
    fn deterministic() {
        assert_eq!(gen_random(5, 7, 10, 3), gen_random(5, 7, 10, 3));
        assert_ne!(gen_random(5, 7, 10, 3), gen_random(5, 8, 10, 3));
        let o = GenOptions::linf(10, 3, CaseKind::Deficit);
        assert_eq!(gen_with(4, 1, &o), gen_with(4, 1, &o));
    }

    #[test]
    fn cases_are_respected() {
        for seed in 0..200 {
            for case in [CaseKind::Equal, CaseKind::Deficit, CaseKind::Surplus] {
                let inv = gen_with(4, seed, &GenOptions::linf(10, 3, case));
                let got = classify_case(&inv).kind;
                if case == CaseKind::Surplus && inv.selected_cost() == 1 {
                    assert_eq!(got, CaseKind::Equal);
                } else {
                    assert_eq!(got, case);
                }
                assert!(inv.x_star.ones().next().is_some());
            }
        }
    }

    #[test]
    fn zero_caps() {
        let inv = gen_random(5, 3, 10, 0);
        assert_eq!(inv.bounds, ModificationBounds::zeros(5));
        assert_eq!(i128::from(inv.base.budget), inv.selected_cost());
    }

    #[test]
    fn partition_values_have_even_sum() {
        for seed in 0..500 {
            let v = gen_partition_values(1 + (seed % 8) as usize, seed, 6);
            assert_eq!(v.iter().sum::<i64>() % 2, 0);
            assert!(v.iter().all(|&a| (1..=6).contains(&a)));
        }
    }

    #[test]
    fn corpora() {
        let c = linf_corpus(30, 9, 100_000);
        assert_eq!(c.len(), 30);
        assert!(c
            .iter()
            .all(|inv| crate::oracle::search_space(inv).unwrap() <= 100_000));
        assert_eq!(c, linf_corpus(30, 9, 100_000));
        let f = fifkp_corpus(10, 1);
        assert_eq!(f[4].len(), 5);
        assert!(f
            .iter()
            .all(|inv| inv.bounds.lambda_bar.iter().all(|&x| x == 0)));
    }

    #[test]
    fn scaling_instances_validate() {
        let inv = gen_scaling(50, 1, Norm::LInf);
        assert!(inv.validate().is_ok());
    }
}
