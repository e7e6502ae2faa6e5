//! Exhaustive ground truth.
//!
//! [`brute_inverse`] enumerates every in-bound integer modification vector and
//! keeps the cheapest one that makes `x*` optimal. [`brute_fkp`] runs the
//! greedy fill under every item order. [`exact_l1`] solves the general l1
//! problem (profits and costs both variable) by enumerating per-item options,
//! the separating threshold, and a subset-sum table over the budget; it reaches
//! instances whose joint space is far too large to enumerate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fkp::greedy_in_order;
use crate::inverse_l1::l1_objective;
use crate::inverse_linf::linf_objective;
use crate::model::{
    cmp_ratio, FkpInstance, FractionalSolution, InverseInstance, InverseSolution,
    ModificationVector, Norm,
};
use crate::rational::Rational;

pub const DEFAULT_MAX_SPACE: u128 = 10_000_000;

/// Largest instance [`brute_fkp`] accepts.
pub const MAX_FKP_ITEMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Cap on the number of vectors (or table cells) examined.
    pub max_space: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_space: DEFAULT_MAX_SPACE,
        }
    }
}

/// Caps of the `4n` variables in `(u, v, lambda, mu)` order.
fn variable_caps(inv: &InverseInstance) -> Vec<i64> {
    let b = &inv.bounds;
    b.u_bar
        .iter()
        .chain(&b.v_bar)
        .chain(&b.lambda_bar)
        .chain(&b.mu_bar)
        .copied()
        .collect()
}

/// Number of in-bound modification vectors, or `None` on overflow.
pub fn search_space(inv: &InverseInstance) -> Option<u128> {
    variable_caps(inv).iter().try_fold(1u128, |acc, &c| {
        acc.checked_mul(u128::try_from(c).ok()? + 1)
    })
}

/// The optimality test on raw modified values, written independently of
/// [`crate::fkp::check_optimality`].
fn target_is_optimal(selected: &[bool], profits: &[i128], costs: &[i128], budget: i128) -> bool {
    let used: i128 = (0..selected.len())
        .filter(|&i| selected[i])
        .map(|i| costs[i])
        .sum();
    if used != budget {
        return false;
    }
    let mut worst_in: Option<usize> = None;
    let mut best_out: Option<usize> = None;
    for i in 0..selected.len() {
        let slot = if selected[i] {
            &mut worst_in
        } else {
            &mut best_out
        };
        *slot = match *slot {
            None => Some(i),
            Some(k) => {
                let ord = cmp_ratio(profits[i], costs[i], profits[k], costs[k]);
                let better = if selected[i] {
                    ord == Ordering::Less
                } else {
                    ord == Ordering::Greater
                };
                Some(if better { i } else { k })
            }
        };
    }
    match (worst_in, best_out) {
        (Some(i), Some(j)) => {
            cmp_ratio(profits[i], costs[i], profits[j], costs[j]) != Ordering::Less
        }
        _ => true,
    }
}

fn digits_to_mods(digits: &[i64], n: usize) -> ModificationVector {
    ModificationVector {
        u: digits[..n].to_vec(),
        v: digits[n..2 * n].to_vec(),
        lambda: digits[2 * n..3 * n].to_vec(),
        mu: digits[3 * n..].to_vec(),
    }
}

/// Scans linear indices `[start, end)` of the mixed-radix space (last
/// variable fastest, which is lexicographic order) and returns the first
/// feasible vector with the smallest key.
fn scan_block<K: Ord>(
    inv: &InverseInstance,
    caps: &[i64],
    start: u128,
    end: u128,
    key: &(dyn Fn(&[i64]) -> K + Sync),
) -> Option<(K, u128)> {
    let n = inv.len();
    let m = caps.len();
    let mut digits = vec![0i64; m];
    let mut rem = start;
    for v in (0..m).rev() {
        let radix = caps[v] as u128 + 1;
        digits[v] = (rem % radix) as i64;
        rem /= radix;
    }
    let selected = inv.x_star.as_bools();
    let base_p: Vec<i128> = inv.base.items.iter().map(|it| it.profit.into()).collect();
    let base_c: Vec<i128> = inv.base.items.iter().map(|it| it.cost.into()).collect();
    let budget = i128::from(inv.base.budget);
    let mut profits = vec![0i128; n];
    let mut costs = vec![0i128; n];
    let mut best: Option<(K, u128)> = None;

    for index in start..end {
        for i in 0..n {
            profits[i] = base_p[i] + i128::from(digits[i]) - i128::from(digits[n + i]);
            costs[i] = base_c[i] + i128::from(digits[2 * n + i]) - i128::from(digits[3 * n + i]);
        }
        if target_is_optimal(selected, &profits, &costs, budget) {
            let k = key(&digits);
            if best.as_ref().is_none_or(|(b, _)| k < *b) {
                best = Some((k, index));
            }
        }
        // odometer step
        for v in (0..m).rev() {
            if digits[v] < caps[v] {
                digits[v] += 1;
                break;
            }
            digits[v] = 0;
        }
    }
    best
}

fn enumerate<K: Ord + Send>(
    inv: &InverseInstance,
    space: u128,
    key: &(dyn Fn(&[i64]) -> K + Sync),
) -> Option<Vec<i64>> {
    let caps = variable_caps(inv);
    const BLOCK: u128 = 1 << 16;
    let blocks = space.div_ceil(BLOCK);
    let best = (0..blocks)
        .into_par_iter()
        .filter_map(|b| scan_block(inv, &caps, b * BLOCK, ((b + 1) * BLOCK).min(space), key))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))?;
    let mut rem = best.1;
    let mut digits = vec![0i64; caps.len()];
    for v in (0..caps.len()).rev() {
        let radix = caps[v] as u128 + 1;
        digits[v] = (rem % radix) as i64;
        rem /= radix;
    }
    Some(digits)
}

/// Weights over a common denominator, if they fit comfortably in `i128`.
fn scaled_weights(inv: &InverseInstance, n: usize) -> Option<Vec<i128>> {
    let w = &inv.weights;
    let denom =
        w.w.iter()
            .chain(&w.w_cost)
            .fold(BigInt::one(), |a, q| a.lcm(q.denom()));
    let scale = |q: &Rational| (q.numer() * (&denom / q.denom())).to_i128();
    let out: Option<Vec<i128>> = w.w.iter().chain(&w.w_cost).map(scale).collect();
    let out = out?;
    // Sums of 4n terms, each at most 2^63 units, must not overflow.
    let limit = i128::MAX / (4 * n as i128 + 1) / i128::from(i64::MAX);
    out.iter().all(|&x| x <= limit).then_some(out)
}

/// Exhaustive inverse solver under the instance's norm. Among optimal
/// vectors the lexicographically smallest `(u, v, lambda, mu)` is returned.
pub fn brute_inverse(inv: &InverseInstance, cfg: &OracleConfig) -> Result<InverseSolution> {
    let n = inv.len();
    let space = match search_space(inv) {
        Some(s) if s <= cfg.max_space => s,
        other => {
            return Err(Error::OracleLimitExceeded {
                space: other.unwrap_or(u128::MAX),
                limit: cfg.max_space,
            })
        }
    };
    let digits = match inv.norm {
        Norm::LInf => enumerate(inv, space, &|d: &[i64]| {
            d.iter().copied().max().unwrap_or(0)
        }),
        Norm::L1 => match scaled_weights(inv, n) {
            Some(sw) => enumerate(inv, space, &|d: &[i64]| {
                // sw is (w..., w_cost...); d is (u, v, lambda, mu)
                (0..n)
                    .map(|i| {
                        sw[i] * i128::from(d[i] + d[n + i])
                            + sw[n + i] * i128::from(d[2 * n + i] + d[3 * n + i])
                    })
                    .sum::<i128>()
            }),
            None => enumerate(inv, space, &|d: &[i64]| {
                l1_objective(&digits_to_mods(d, n), &inv.weights)
            }),
        },
    };
    Ok(match digits {
        None => InverseSolution::Infeasible,
        Some(d) => {
            let mods = digits_to_mods(&d, n);
            let objective = match inv.norm {
                Norm::L1 => l1_objective(&mods, &inv.weights),
                Norm::LInf => Rational::from(linf_objective(&mods)),
            };
            InverseSolution::Optimal { mods, objective }
        }
    })
}

/// Best greedy fill over all `n!` item orders. Accepts a zero budget.
pub fn brute_fkp(inst: &FkpInstance) -> Result<(FractionalSolution, Rational)> {
    let n = inst.items.len();
    if n > MAX_FKP_ITEMS {
        return Err(Error::TooLarge {
            n,
            max: MAX_FKP_ITEMS,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = greedy_in_order(inst, &order);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let candidate = greedy_in_order(inst, &order);
            if candidate.1 > best.1 {
                best = candidate;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// One way to modify a single item.
#[derive(Clone)]
struct ItemOption {
    profit: i128,
    cost: i128,
    price: Rational,
    moves: [i64; 4],
}

fn item_options(inv: &InverseInstance, i: usize) -> Vec<ItemOption> {
    let it = inv.base.items[i];
    let b = &inv.bounds;
    let (w, wc) = (&inv.weights.w[i], &inv.weights.w_cost[i]);
    let mut out = Vec::new();
    for u in 0..=b.u_bar[i] {
        for v in 0..=b.v_bar[i] {
            for l in 0..=b.lambda_bar[i] {
                for m in 0..=b.mu_bar[i] {
                    out.push(ItemOption {
                        profit: i128::from(it.profit) + i128::from(u) - i128::from(v),
                        cost: i128::from(it.cost) + i128::from(l) - i128::from(m),
                        price: w * &Rational::from(u + v) + wc * &Rational::from(l + m),
                        moves: [u, v, l, m],
                    });
                }
            }
        }
    }
    out
}

/// Exact minimum of the general l1 problem.
///
/// For every achievable largest `I0` ratio `T`: each `I0` item takes its
/// cheapest option with ratio at most `T`, and the `I1` items pick options
/// with ratio at least `T` whose costs sum to `b`, minimized by a table over
/// partial cost sums. The minimum over `T` is the optimum.
pub fn exact_l1(inv: &InverseInstance, cfg: &OracleConfig) -> Result<InverseSolution> {
    if inv.norm != Norm::L1 {
        return Err(Error::NotL1);
    }
    let n = inv.len();
    let per_item: Vec<u128> = (0..n)
        .map(|i| {
            let b = &inv.bounds;
            [b.u_bar[i], b.v_bar[i], b.lambda_bar[i], b.mu_bar[i]]
                .iter()
                .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
                .unwrap_or(u128::MAX)
        })
        .collect();
    let budget = inv.base.budget;
    let ones: Vec<usize> = inv.x_star.ones().collect();
    let zeros: Vec<usize> = inv.x_star.zeros().collect();
    let options_total = per_item.iter().fold(0u128, |a, &b| a.saturating_add(b));
    let thresholds_bound = zeros
        .iter()
        .fold(0u128, |a, &j| a.saturating_add(per_item[j]))
        .max(1);
    let ones_options = ones
        .iter()
        .fold(0u128, |a, &i| a.saturating_add(per_item[i]));
    let work = thresholds_bound
        .saturating_mul(budget as u128 + 1)
        .saturating_mul(ones_options)
        .saturating_add(options_total);
    if work > cfg.max_space {
        return Err(Error::OracleLimitExceeded {
            space: work,
            limit: cfg.max_space,
        });
    }

    let options: Vec<Vec<ItemOption>> = (0..n).map(|i| item_options(inv, i)).collect();
    let mut thresholds: Vec<Option<Rational>> = zeros
        .iter()
        .flat_map(|&j| {
            options[j]
                .iter()
                .map(|o| Some(Rational::new(o.profit, o.cost)))
        })
        .collect();
    thresholds.sort();
    thresholds.dedup();
    if thresholds.is_empty() {
        thresholds.push(None);
    }

    let mut best: Option<(Rational, Vec<usize>)> = None;
    for t in &thresholds {
        let Some((price, picks)) = solve_at_threshold(&options, &ones, &zeros, budget, t.as_ref())
        else {
            continue;
        };
        if best.as_ref().is_none_or(|(b, _)| price < *b) {
            best = Some((price, picks));
        }
    }
    Ok(match best {
        None => InverseSolution::Infeasible,
        Some((_, picks)) => {
            let mut mods = ModificationVector::zeros(n);
            for (i, &k) in picks.iter().enumerate() {
                let [u, v, l, m] = options[i][k].moves;
                mods.u[i] = u;
                mods.v[i] = v;
                mods.lambda[i] = l;
                mods.mu[i] = m;
            }
            let objective = l1_objective(&mods, &inv.weights);
            InverseSolution::Optimal { mods, objective }
        }
    })
}

fn solve_at_threshold(
    options: &[Vec<ItemOption>],
    ones: &[usize],
    zeros: &[usize],
    budget: i64,
    t: Option<&Rational>,
) -> Option<(Rational, Vec<usize>)> {
    let mut picks = vec![0usize; options.len()];
    let mut total = Rational::zero();
    let below = |o: &ItemOption, t: &Rational| Rational::new(o.profit, o.cost) <= *t;
    for &j in zeros {
        let t = t.expect("threshold exists when I0 is non-empty");
        let (k, o) = options[j]
            .iter()
            .enumerate()
            .filter(|(_, o)| below(o, t))
            .min_by(|a, b| a.1.price.cmp(&b.1.price).then(a.0.cmp(&b.0)))?;
        picks[j] = k;
        total = total + &o.price;
    }

    let cap = usize::try_from(budget).ok()?;
    // table[s] = cheapest price reaching selected cost sum s
    let mut table: Vec<Option<Rational>> = vec![None; cap + 1];
    table[0] = Some(Rational::zero());
    let mut choice: Vec<Vec<Option<(usize, usize)>>> = Vec::with_capacity(ones.len());
    for &i in ones {
        // cheapest admissible option per resulting cost
        let mut per_cost: Vec<Option<usize>> = vec![None; cap + 1];
        for (k, o) in options[i].iter().enumerate() {
            if o.cost as usize > cap || t.is_some_and(|t| Rational::new(o.profit, o.cost) < *t) {
                continue;
            }
            let c = o.cost as usize;
            if per_cost[c].is_none_or(|prev| o.price < options[i][prev].price) {
                per_cost[c] = Some(k);
            }
        }
        let mut next: Vec<Option<Rational>> = vec![None; cap + 1];
        let mut back: Vec<Option<(usize, usize)>> = vec![None; cap + 1];
        for (s, cur) in table.iter().enumerate() {
            let Some(cur) = cur else { continue };
            for (c, k) in per_cost.iter().enumerate() {
                let Some(k) = *k else { continue };
                if s + c > cap {
                    break;
                }
                let price = cur + &options[i][k].price;
                if next[s + c].as_ref().is_none_or(|p| price < *p) {
                    next[s + c] = Some(price);
                    back[s + c] = Some((s, k));
                }
            }
        }
        table = next;
        choice.push(back);
    }
    let price = table[cap].clone()?;
    let mut s = cap;
    for (pos, &i) in ones.iter().enumerate().rev() {
        let (prev, k) = choice[pos][s].expect("reachable state has a predecessor");
        picks[i] = k;
        s = prev;
    }
    Some((total + price, picks))
}

/// Orders two solutions by objective; `Infeasible` sorts last.
pub fn compare_objectives(a: &InverseSolution, b: &InverseSolution) -> Ordering {
    match (a.objective(), b.objective()) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table1;
    use crate::fkp::check_optimality;
    use crate::model::{
        apply_modifications, BinarySolution, CostWeights, Item, ModificationBounds,
    };

    #[test]
    fn table1_oracle() {
        let inv = table1();
        assert_eq!(search_space(&inv), Some(800));
        let sol = brute_inverse(&inv, &OracleConfig::default()).unwrap();
        assert_eq!(sol.objective(), Some(&Rational::new(5, 2)));
        let mods = sol.mods().unwrap();
        assert_eq!(mods.u, vec![0, 3, 0, 0, 0]);
        assert_eq!(mods.v, vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn already_optimal_costs_nothing() {
        let inv = InverseInstance::new(
            FkpInstance::new(vec![Item::new(4, 2).unwrap(), Item::new(1, 2).unwrap()], 2).unwrap(),
            BinarySolution::from_bits(&[1, 0]).unwrap(),
            ModificationBounds {
                u_bar: vec![2, 2],
                v_bar: vec![0, 0],
                lambda_bar: vec![1, 1],
                mu_bar: vec![1, 1],
            },
            CostWeights::uniform(2),
            Norm::L1,
        )
        .unwrap();
        for norm in [Norm::L1, Norm::LInf] {
            let sol =
                brute_inverse(&inv.clone().with_norm(norm), &OracleConfig::default()).unwrap();
            assert_eq!(sol.objective(), Some(&Rational::zero()));
        }
    }

    #[test]
    fn zero_bounds_and_non_optimal_target() {
        let mut inv = table1();
        inv.bounds = ModificationBounds::zeros(5);
        assert_eq!(
            brute_inverse(&inv, &OracleConfig::default()).unwrap(),
            InverseSolution::Infeasible
        );
        assert_eq!(
            exact_l1(&inv, &OracleConfig::default()).unwrap(),
            InverseSolution::Infeasible
        );
    }

    #[test]
    fn limit_is_enforced() {
        let cfg = OracleConfig { max_space: 799 };
        assert!(matches!(
            brute_inverse(&table1(), &cfg),
            Err(Error::OracleLimitExceeded {
                space: 800,
                limit: 799
            })
        ));
    }

    #[test]
    fn returned_vectors_are_certified() {
        let inv = table1();
        let sol = brute_inverse(&inv, &OracleConfig::default()).unwrap();
        let modified = apply_modifications(&inv, sol.mods().unwrap()).unwrap();
        assert!(check_optimality(&modified, &inv.x_star)
            .unwrap()
            .is_optimal());
    }

    #[test]
    fn brute_fkp_examples() {
        let inst =
            FkpInstance::new(vec![Item::new(6, 3).unwrap(), Item::new(4, 4).unwrap()], 5).unwrap();
        assert_eq!(brute_fkp(&inst).unwrap().1, Rational::from(8i64));

        let one = FkpInstance::new(vec![Item::new(5, 2).unwrap()], 3).unwrap();
        assert_eq!(brute_fkp(&one).unwrap().1, Rational::from(5i64));

        let empty_budget = FkpInstance {
            items: vec![Item { profit: 3, cost: 1 }, Item { profit: 1, cost: 1 }],
            budget: 0,
        };
        let (x, obj) = brute_fkp(&empty_budget).unwrap();
        assert_eq!(obj, Rational::zero());
        assert!(x.values.iter().all(Rational::is_zero));

        let big = FkpInstance {
            items: vec![Item { profit: 1, cost: 1 }; 9],
            budget: 1,
        };
        assert!(matches!(brute_fkp(&big), Err(Error::TooLarge { n: 9, .. })));
    }

    #[test]
    fn exact_l1_matches_table1() {
        let sol = exact_l1(&table1(), &OracleConfig::default()).unwrap();
        assert_eq!(sol.objective(), Some(&Rational::new(5, 2)));
    }
}
