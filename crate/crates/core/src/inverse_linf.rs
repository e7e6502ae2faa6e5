//! Inverse fractional knapsack under the uniform l-infinity norm.
//!
//! The objective is the largest single modification `K`. Feasibility at a
//! fixed `K` is decided exactly in linear time:
//!
//! * every `I0` item takes its largest allowed profit decrease and cost
//!   increase, which gives the threshold `T(K)` (the largest `I0` ratio);
//! * every `I1` item takes its largest allowed profit increase;
//! * each `I1` item's cost may then move by a net `d_i` inside a window
//!   bounded by its caps and by `p'_i / (c_i + d_i) >= T(K)`;
//! * the windows must admit a choice with `sum d_i = b - sum_{I1} c_i`.
//!
//! Feasibility is monotone in `K`, so the optimum is found by binary search.

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{cmp_ratio, InverseInstance, InverseSolution, ModificationVector, Norm};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseKind {
    /// `sum_{I1} c_i = b`.
    Equal,
    /// `sum_{I1} c_i < b`: selected costs must grow.
    Deficit,
    /// `sum_{I1} c_i > b`: selected costs must shrink.
    Surplus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetCase {
    pub kind: CaseKind,
    /// `|b - sum_{I1} c_i|`.
    pub gap: i128,
}

impl BudgetCase {
    /// Net change of the selected costs needed to hit the budget.
    pub fn signed_gap(&self) -> i128 {
        match self.kind {
            CaseKind::Surplus => -self.gap,
            _ => self.gap,
        }
    }
}

pub fn classify_case(inv: &InverseInstance) -> BudgetCase {
    let diff = i128::from(inv.base.budget) - inv.selected_cost();
    let kind = match diff.cmp(&0) {
        Ordering::Equal => CaseKind::Equal,
        Ordering::Greater => CaseKind::Deficit,
        Ordering::Less => CaseKind::Surplus,
    };
    BudgetCase {
        kind,
        gap: diff.abs(),
    }
}

/// Largest entry of the vector; 0 for the zero vector.
pub fn linf_objective(mods: &ModificationVector) -> i64 {
    mods.entries().max().unwrap_or(0).max(0)
}

/// `T(K)` as an unreduced `(num, den)` pair.
fn threshold_parts(inv: &InverseInstance, k: i64) -> Option<(i128, i128)> {
    let items = &inv.base.items;
    inv.x_star
        .zeros()
        .map(|j| {
            let p = i128::from(items[j].profit - k.min(inv.bounds.v_bar[j]));
            let c = i128::from(items[j].cost) + i128::from(k.min(inv.bounds.lambda_bar[j]));
            (p, c)
        })
        .reduce(|a, b| {
            if cmp_ratio(b.0, b.1, a.0, a.1) == Ordering::Greater {
                b
            } else {
                a
            }
        })
}

/// `T(K) = max_{j in I0} (p_j - min(K, v_bar_j)) / (c_j + min(K, lambda_bar_j))`,
/// or `None` when `I0` is empty.
pub fn threshold_at(inv: &InverseInstance, k: i64) -> Option<Rational> {
    threshold_parts(inv, k).map(|(p, c)| Rational::new(p, c))
}

/// Allowed net cost change `d = lambda - mu` of one selected item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostWindow {
    pub item: usize,
    pub min: i64,
    pub max: i64,
}

/// Cost windows of all `I1` items at budget `k`, or `None` if some item
/// cannot clear the threshold even at its smallest allowed cost.
pub fn cost_windows(inv: &InverseInstance, k: i64) -> Option<Vec<CostWindow>> {
    let items = &inv.base.items;
    let threshold = threshold_parts(inv, k);
    inv.x_star
        .ones()
        .map(|i| {
            let it = items[i];
            let boosted = i128::from(it.profit) + i128::from(k.min(inv.bounds.u_bar[i]));
            let up = k.min(inv.bounds.lambda_bar[i]);
            let down = k.min(inv.bounds.mu_bar[i]).min(it.cost - 1);
            let max = match threshold {
                None => up,
                Some((tn, td)) => {
                    // largest cost with boosted / cost >= tn / td
                    let largest_cost = (boosted * td).div_euclid(tn);
                    let slack = largest_cost - i128::from(it.cost);
                    slack
                        .min(i128::from(up))
                        .max(i128::from(i64::MIN))
                        .to_i64()?
                }
            };
            (max >= -down).then_some(CostWindow {
                item: i,
                min: -down,
                max,
            })
        })
        .collect()
}

/// True iff some modification vector with every entry at most `k` makes
/// `x*` optimal.
pub fn feasible_at(inv: &InverseInstance, k: i64) -> bool {
    let gap = classify_case(inv).signed_gap();
    match cost_windows(inv, k) {
        None => false,
        Some(ws) => {
            let lo: i128 = ws.iter().map(|w| i128::from(w.min)).sum();
            let hi: i128 = ws.iter().map(|w| i128::from(w.max)).sum();
            lo <= gap && gap <= hi
        }
    }
}

/// Smallest `K` with `p~_i / c_i >= p~_j / c~_j` when `i` gains
/// `min(K, u_bar_i)` profit and `j` loses `min(K, v_bar_j)` profit and gains
/// `min(K, lambda_bar_j)` cost. Pairs already in order give `Some(0)`;
/// `None` means the caps cannot resolve the pair.
pub fn pairwise_min_budget(inv: &InverseInstance, i: usize, j: usize) -> Result<Option<i64>> {
    let n = inv.len();
    if i >= n || j >= n || !inv.x_star.is_one(i) || inv.x_star.is_one(j) {
        return Err(Error::InvalidPair { i, j });
    }
    let (a, b) = (inv.base.items[i], inv.base.items[j]);
    let bounds = &inv.bounds;
    let holds = |k: i64| {
        let pi = i128::from(a.profit) + i128::from(k.min(bounds.u_bar[i]));
        let pj = i128::from(b.profit - k.min(bounds.v_bar[j]));
        let cj = i128::from(b.cost) + i128::from(k.min(bounds.lambda_bar[j]));
        pi * cj >= pj * i128::from(a.cost)
    };
    let top = bounds.u_bar[i]
        .max(bounds.v_bar[j])
        .max(bounds.lambda_bar[j]);
    Ok(smallest_true(0, top, holds))
}

/// Largest pairwise budget over all conflicting pairs, keeping the selected
/// costs fixed. `None` if some pair cannot be resolved.
pub fn equal_case_budget(inv: &InverseInstance) -> Option<i64> {
    let mut best = 0;
    for i in inv.x_star.ones() {
        for j in inv.x_star.zeros() {
            best = best.max(pairwise_min_budget(inv, i, j).expect("valid pair")?);
        }
    }
    Some(best)
}

/// Smallest `k` in `lo..=hi` with `pred(k)`, for monotone `pred`.
fn smallest_true(mut lo: i64, mut hi: i64, pred: impl Fn(i64) -> bool) -> Option<i64> {
    if lo > hi || !pred(hi) {
        return None;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// Min-max split of a total change over capped items.
///
/// Items in `full_set` take their whole cap (which is below `level`); of the
/// items in `level_set`, the first `n_at_level` take `level` and the others
/// `level - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairPlan {
    pub level: i64,
    pub full_set: Vec<usize>,
    pub level_set: Vec<usize>,
    pub n_at_level: i64,
    caps: Vec<(usize, i64)>,
}

impl RepairPlan {
    /// `(item, change)` for every item, in the order the caps were given.
    pub fn assignment(&self) -> Vec<(usize, i64)> {
        let mut at_level = 0;
        self.caps
            .iter()
            .map(|&(item, cap)| {
                if cap < self.level {
                    (item, cap)
                } else if at_level < self.n_at_level {
                    at_level += 1;
                    (item, self.level)
                } else {
                    (item, self.level - 1)
                }
            })
            .collect()
    }
}

/// Water-filling: the smallest level with `sum min(cap_i, level) >= gap`,
/// found by binary search on the level.
pub fn water_fill(caps: &[(usize, i64)], gap: i128) -> Result<RepairPlan> {
    let available: i128 = caps.iter().map(|&(_, c)| i128::from(c)).sum();
    if gap > available || gap < 0 {
        return Err(Error::InfeasibleRepair { gap, available });
    }
    let filled = |level: i64| -> i128 { caps.iter().map(|&(_, c)| i128::from(c.min(level))).sum() };
    let top = caps.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let level = smallest_true(0, top, |l| filled(l) >= gap).expect("caps cover the gap");
    let (full, rest): (Vec<_>, Vec<_>) = caps.iter().partition(|&&(_, c)| c < level);
    let below: i128 = full.iter().map(|&&(_, c)| i128::from(c)).sum();
    let n_at_level = gap - below - (rest.len() as i128) * i128::from(level - 1);
    Ok(RepairPlan {
        level,
        full_set: full.iter().map(|&&(i, _)| i).collect(),
        level_set: rest.iter().map(|&&(i, _)| i).collect(),
        n_at_level: n_at_level as i64,
        caps: caps.to_vec(),
    })
}

/// Min-max repair of the selected costs alone: cost increases (`lambda_bar`)
/// for a deficit, decreases (`mu_bar`) for a surplus.
pub fn repair_level(inv: &InverseInstance, case: BudgetCase) -> Result<RepairPlan> {
    let items = &inv.base.items;
    let caps: Vec<(usize, i64)> = inv
        .x_star
        .ones()
        .map(|i| {
            let cap = match case.kind {
                CaseKind::Equal => 0,
                CaseKind::Deficit => inv.bounds.lambda_bar[i],
                CaseKind::Surplus => inv.bounds.mu_bar[i].min(items[i].cost - 1),
            };
            (i, cap)
        })
        .collect();
    water_fill(&caps, case.gap)
}

/// Solves the inverse problem under the l-infinity norm.
pub fn solve_linf(inv: &InverseInstance) -> Result<InverseSolution> {
    if inv.norm != Norm::LInf {
        return Err(Error::NotLInf);
    }
    let case = classify_case(inv);
    // Any solution has to cover the budget gap on its own.
    let floor = match repair_level(inv, case) {
        Ok(plan) => plan.level,
        Err(Error::InfeasibleRepair { .. }) => return Ok(InverseSolution::Infeasible),
        Err(e) => return Err(e),
    };
    let top = inv.bounds.max_entry();
    let Some(k) = smallest_true(floor, top, |k| feasible_at(inv, k)) else {
        return Ok(InverseSolution::Infeasible);
    };
    let mods = extract(inv, k, case.signed_gap());
    debug_assert_eq!(linf_objective(&mods), k);
    Ok(InverseSolution::Optimal {
        objective: Rational::from(linf_objective(&mods)),
        mods,
    })
}

fn extract(inv: &InverseInstance, k: i64, gap: i128) -> ModificationVector {
    let mut mods = ModificationVector::zeros(inv.len());
    for i in inv.x_star.ones() {
        mods.u[i] = k.min(inv.bounds.u_bar[i]);
    }
    for j in inv.x_star.zeros() {
        mods.v[j] = k.min(inv.bounds.v_bar[j]);
        mods.lambda[j] = k.min(inv.bounds.lambda_bar[j]);
    }
    let windows = cost_windows(inv, k).expect("feasible budget");
    let mut d: Vec<i64> = windows.iter().map(|w| w.max.min(0)).collect();
    let mut rest = gap - d.iter().map(|&x| i128::from(x)).sum::<i128>();
    // Ascending index: raise towards the window tops or lower towards the bottoms.
    for (w, di) in windows.iter().zip(d.iter_mut()) {
        if rest == 0 {
            break;
        }
        let step = if rest > 0 {
            rest.min(i128::from(w.max - *di))
        } else {
            rest.max(i128::from(w.min - *di))
        };
        *di += step as i64;
        rest -= step;
    }
    debug_assert_eq!(rest, 0);
    for (w, di) in windows.iter().zip(d) {
        mods.lambda[w.item] = di.max(0);
        mods.mu[w.item] = (-di).max(0);
    }
    mods
}
