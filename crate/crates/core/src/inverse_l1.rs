//! Inverse fractional knapsack under the weighted l1 norm with fixed costs.
//!
//! Only profits move: selected items (`I1`) gain profit, unselected items
//! (`I0`) lose it. A target `x*` becomes optimal exactly when some threshold
//! `t` separates the two groups, so the solver
//!
//! 1. checks that the caps admit a threshold at all (`L <= U`),
//! 2. presolves the moves forced by `L` and `U`,
//! 3. scans the parametric cost `C(t)` over a finite candidate set.
//!
//! Each cost term is a ceiling of an affine function of `t`. The terms of
//! `I1` are left-continuous step functions, those of `I0` right-continuous,
//! so on every piece the minimum is reached at the piece's left end. The
//! [`CandidateMode::Refined`] set contains every such end point and is exact.
//! [`CandidateMode::Paper`] only evaluates the item ratios themselves and can
//! miss the optimum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{CostWeights, InverseInstance, InverseSolution, ModificationVector, Norm};
use crate::rational::{ceil_div_i128, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateMode {
    /// Item ratios inside the scan interval plus its two end points.
    Paper,
    /// Every threshold at which some ceiling term changes value.
    #[default]
    Refined,
}

impl std::fmt::Display for CandidateMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CandidateMode::Paper => "paper",
            CandidateMode::Refined => "refined",
        })
    }
}

/// `L` and `U`. `None` stands for an unbounded side: `-inf` for `lower` when
/// `I0` is empty, `+inf` for `upper` when `I1` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    pub feasible: bool,
}

/// Per-item profit moves: increases on `I1`, decreases on `I0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitModificationPlan {
    pub z: Vec<i64>,
    pub z_bar: Vec<i64>,
}

impl ProfitModificationPlan {
    pub fn into_mods(self, inv: &InverseInstance) -> ModificationVector {
        let n = self.z.len();
        let mut mods = ModificationVector::zeros(n);
        for (i, z) in self.z.into_iter().enumerate() {
            if inv.x_star.is_one(i) {
                mods.u[i] = z;
            } else {
                mods.v[i] = z;
            }
        }
        mods
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresolveResult {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    /// Forced moves, nonzero only on `forced`.
    pub z0: Vec<i64>,
    /// `sum w_i z0_i`.
    pub base_cost: Rational,
    pub adjusted_profits: Vec<i64>,
    /// Smallest adjusted ratio over `I1`.
    pub alpha: Option<Rational>,
    /// Largest adjusted ratio over `I0`.
    pub beta: Option<Rational>,
    pub forced: Vec<usize>,
    costs: Vec<i64>,
    selected: Vec<bool>,
    z_bar: Vec<i64>,
}

impl PresolveResult {
    pub fn costs(&self) -> &[i64] {
        &self.costs
    }

    pub fn z_bar(&self) -> &[i64] {
        &self.z_bar
    }

    pub fn is_selected(&self, i: usize) -> bool {
        self.selected[i]
    }

    fn adjusted_ratio(&self, i: usize) -> Rational {
        Rational::new(self.adjusted_profits[i], self.costs[i])
    }

    /// `[max(L, alpha), min(U, beta)]`, or `None` when one side of the
    /// target is empty or the interval is empty.
    pub fn scan_interval(&self) -> Option<(Rational, Rational)> {
        let (alpha, beta) = (self.alpha.clone()?, self.beta.clone()?);
        let lo = match &self.lower {
            Some(l) => alpha.max(l.clone()),
            None => alpha,
        };
        let hi = match &self.upper {
            Some(u) => beta.min(u.clone()),
            None => beta,
        };
        (lo <= hi).then_some((lo, hi))
    }

    fn in_bounds(&self, t: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= t) && self.upper.as_ref().is_none_or(|u| t <= u)
    }
}

fn require_l1_model(inv: &InverseInstance) -> Result<()> {
    let used = inv.selected_cost();
    if used != i128::from(inv.base.budget) {
        return Err(Error::BudgetMismatch {
            used,
            budget: inv.base.budget,
        });
    }
    Ok(())
}

/// Profit cap per item: `u_bar` on `I1`, `v_bar` on `I0`.
fn profit_caps(inv: &InverseInstance) -> Vec<i64> {
    (0..inv.len())
        .map(|i| {
            if inv.x_star.is_one(i) {
                inv.bounds.u_bar[i]
            } else {
                inv.bounds.v_bar[i]
            }
        })
        .collect()
}

/// `L = max_{I0} (p - z_bar)/c`, `U = min_{I1} (p + z_bar)/c`; feasible iff `L <= U`.
pub fn feasibility_bounds(inv: &InverseInstance) -> Result<FeasibilityBounds> {
    require_l1_model(inv)?;
    let items = &inv.base.items;
    let lower = inv
        .x_star
        .zeros()
        .map(|j| Rational::new(items[j].profit - inv.bounds.v_bar[j], items[j].cost))
        .max();
    let upper = inv
        .x_star
        .ones()
        .map(|i| {
            Rational::new(
                i128::from(items[i].profit) + i128::from(inv.bounds.u_bar[i]),
                items[i].cost,
            )
        })
        .min();
    let feasible = match (&lower, &upper) {
        (Some(l), Some(u)) => l <= u,
        _ => true,
    };
    Ok(FeasibilityBounds {
        lower,
        upper,
        feasible,
    })
}

/// Lifts `I1` ratios below `L` up to `L` and pushes `I0` ratios above `U`
/// down to `U` with the smallest integer moves.
pub fn presolve(inv: &InverseInstance) -> Result<PresolveResult> {
    let bounds = feasibility_bounds(inv)?;
    if !bounds.feasible {
        return Err(Error::InvariantViolation(
            "presolve needs a feasible instance (L <= U)".into(),
        ));
    }
    let n = inv.len();
    let items = &inv.base.items;
    let z_bar = profit_caps(inv);
    let mut z0 = vec![0i64; n];
    let mut forced = Vec::new();
    let mut adjusted_profits: Vec<i64> = items.iter().map(|it| it.profit).collect();

    for i in 0..n {
        let it = items[i];
        let ratio = it.ratio();
        let need = if inv.x_star.is_one(i) {
            match &bounds.lower {
                // ceil(c L - p)
                Some(l) if ratio < *l => {
                    Some((&Rational::from(it.cost) * l - Rational::from(it.profit)).ceil())
                }
                _ => None,
            }
        } else {
            match &bounds.upper {
                // ceil(p - c U)
                Some(u) if ratio > *u => {
                    Some((Rational::from(it.profit) - &Rational::from(it.cost) * u).ceil())
                }
                _ => None,
            }
        };
        if let Some(z) = need {
            let z = i64::try_from(z).expect("forced move is bounded by its cap");
            assert!(
                0 < z && z <= z_bar[i],
                "forced move {z} exceeds cap {} on item {i}",
                z_bar[i]
            );
            z0[i] = z;
            forced.push(i);
            adjusted_profits[i] += if inv.x_star.is_one(i) { z } else { -z };
        }
    }

    let base_cost = forced
        .iter()
        .map(|&i| &inv.weights.w[i] * &Rational::from(z0[i]))
        .sum();
    let costs: Vec<i64> = items.iter().map(|it| it.cost).collect();
    let alpha = inv
        .x_star
        .ones()
        .map(|i| Rational::new(adjusted_profits[i], costs[i]))
        .min();
    let beta = inv
        .x_star
        .zeros()
        .map(|j| Rational::new(adjusted_profits[j], costs[j]))
        .max();

    Ok(PresolveResult {
        lower: bounds.lower,
        upper: bounds.upper,
        z0,
        base_cost,
        adjusted_profits,
        alpha,
        beta,
        forced,
        costs,
        selected: inv.x_star.as_bools().to_vec(),
        z_bar,
    })
}

/// Residual move of item `i` at threshold `t`, over adjusted profits.
fn move_at(pre: &PresolveResult, i: usize, t: &Rational) -> i64 {
    let ratio = pre.adjusted_ratio(i);
    let c = Rational::from(pre.costs[i]);
    let p = Rational::from(pre.adjusted_profits[i]);
    let z = if pre.selected[i] {
        if ratio < *t {
            (&c * t - p).ceil()
        } else {
            BigInt::zero()
        }
    } else if ratio > *t {
        (p - &c * t).ceil()
    } else {
        BigInt::zero()
    };
    let z = i64::try_from(z).expect("residual move is bounded by its cap");
    assert!(
        pre.z0[i] + z <= pre.z_bar[i],
        "item {i}: move {} exceeds cap {} at t = {t}",
        pre.z0[i] + z,
        pre.z_bar[i]
    );
    z
}

/// Parametric cost `C(t)` over the adjusted profits, excluding `base_cost`.
pub fn cost_at(pre: &PresolveResult, weights: &CostWeights, t: &Rational) -> Result<Rational> {
    if !pre.in_bounds(t) {
        return Err(Error::OutOfRange { t: t.to_string() });
    }
    Ok((0..pre.costs.len())
        .map(|i| &weights.w[i] * &Rational::from(move_at(pre, i, t)))
        .sum())
}

/// Candidate thresholds in ascending order, deduplicated.
pub fn candidate_set(pre: &PresolveResult, mode: CandidateMode) -> Vec<Rational> {
    let Some((lo, hi)) = pre.scan_interval() else {
        return Vec::new();
    };
    let mut out = vec![lo.clone(), hi.clone()];
    for i in 0..pre.costs.len() {
        let r = pre.adjusted_ratio(i);
        if lo <= r && r <= hi {
            out.push(r);
        }
    }
    if mode == CandidateMode::Refined {
        for i in 0..pre.costs.len() {
            refined_thresholds(pre, i, &lo, &hi, &mut out);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every `t` in `[lo, hi]` at which item `i`'s ceiling term changes.
fn refined_thresholds(
    pre: &PresolveResult,
    i: usize,
    lo: &Rational,
    hi: &Rational,
    out: &mut Vec<Rational>,
) {
    let c = BigInt::from(pre.costs[i]);
    let p = BigInt::from(pre.adjusted_profits[i]);
    let ceil_of = |q: &Rational| q.ceil();
    let floor_of = |q: &Rational| q.floor();
    let c_q = Rational::from(c.clone());
    let p_q = Rational::from(p.clone());
    if pre.selected[i] {
        // t = (p + k) / c with k >= 0
        let first = ceil_of(&(&c_q * lo - p_q.clone())).max(BigInt::zero());
        let last = floor_of(&(&c_q * hi - p_q));
        let mut k = first;
        while k <= last {
            out.push(Rational::new(&p + &k, c.clone()));
            k += 1;
        }
    } else {
        // t = (p - k) / c with k >= 0
        let first = ceil_of(&(p_q.clone() - &c_q * hi)).max(BigInt::zero());
        let last = floor_of(&(p_q - &c_q * lo));
        let mut k = first;
        while k <= last {
            out.push(Rational::new(&p - &k, c.clone()));
            k += 1;
        }
    }
}

/// Integer-only evaluator for `C(t)` with weights scaled by a common
/// denominator. Valid for thresholds whose parts fit in 63 bits, which holds
/// for every candidate produced by [`candidate_set`].
struct Scanner {
    profits: Vec<i128>,
    costs: Vec<i128>,
    selected: Vec<bool>,
    scaled_w: Vec<BigInt>,
}

impl Scanner {
    fn new(pre: &PresolveResult, weights: &CostWeights) -> Self {
        let denom = weights
            .w
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled_w = weights
            .w
            .iter()
            .map(|w| w.numer() * (&denom / w.denom()))
            .collect();
        Scanner {
            profits: pre.adjusted_profits.iter().map(|&p| p.into()).collect(),
            costs: pre.costs.iter().map(|&c| c.into()).collect(),
            selected: pre.selected.clone(),
            scaled_w,
        }
    }

    fn fits(t: &Rational) -> Option<(i128, i128)> {
        let (n, d) = t.to_i128_parts()?;
        let limit = i128::from(i64::MAX);
        (n.abs() <= limit && d <= limit).then_some((n, d))
    }

    fn scaled_cost(&self, tn: i128, td: i128) -> BigInt {
        let mut total = BigInt::zero();
        for i in 0..self.costs.len() {
            let (p, c) = (self.profits[i], self.costs[i]);
            // sign of c t - p, scaled by td
            let gap = c * tn - p * td;
            let z = if self.selected[i] {
                if gap > 0 {
                    ceil_div_i128(gap, td)
                } else {
                    0
                }
            } else if gap < 0 {
                ceil_div_i128(-gap, td)
            } else {
                0
            };
            if z != 0 {
                total += &self.scaled_w[i] * BigInt::from(z);
            }
        }
        total
    }
}

/// `(t, C(t))` for every candidate, in ascending `t`.
pub fn cost_profile(
    pre: &PresolveResult,
    weights: &CostWeights,
    mode: CandidateMode,
) -> Result<Vec<(Rational, Rational)>> {
    candidate_set(pre, mode)
        .into_iter()
        .map(|t| cost_at(pre, weights, &t).map(|c| (t, c)))
        .collect()
}

fn minimizing_threshold(
    pre: &PresolveResult,
    weights: &CostWeights,
    candidates: &[Rational],
) -> Option<Rational> {
    let scanner = Scanner::new(pre, weights);
    let evaluate = |t: &Rational| -> Rational {
        match Scanner::fits(t) {
            Some((tn, td)) => Rational::from(scanner.scaled_cost(tn, td)),
            None => {
                // Scale to match the fast path; only reached for huge values.
                let denom = weights
                    .w
                    .iter()
                    .fold(BigInt::one(), |a, w| a.lcm(w.denom()));
                cost_at(pre, weights, t).expect("candidate within bounds") * Rational::from(denom)
            }
        }
    };
    candidates
        .par_iter()
        .enumerate()
        .map(|(k, t)| (evaluate(t), k))
        .min()
        .map(|(_, k)| candidates[k].clone())
}

/// Solves the fixed-cost inverse problem under l1. Cost modifications are
/// never used (`lambda = mu = 0`).
pub fn solve_fifkp(inv: &InverseInstance, mode: CandidateMode) -> Result<InverseSolution> {
    if inv.norm != Norm::L1 {
        return Err(Error::NotL1);
    }
    if !feasibility_bounds(inv)?.feasible {
        return Ok(InverseSolution::Infeasible);
    }
    let pre = presolve(inv)?;
    let candidates = candidate_set(&pre, mode);
    let mut z = pre.z0.clone();
    if let Some(t) = minimizing_threshold(&pre, &inv.weights, &candidates) {
        for (i, zi) in z.iter_mut().enumerate() {
            *zi += move_at(&pre, i, &t);
        }
    }
    let mods = ProfitModificationPlan {
        z,
        z_bar: pre.z_bar.clone(),
    }
    .into_mods(inv);
    let objective = l1_objective(&mods, &inv.weights);
    Ok(InverseSolution::Optimal { mods, objective })
}

/// `sum w_i (u_i + v_i) + w'_i (lambda_i + mu_i)`.
pub fn l1_objective(mods: &ModificationVector, weights: &CostWeights) -> Rational {
    (0..mods.len())
        .map(|i| {
            &weights.w[i] * &Rational::from(mods.u[i] + mods.v[i])
                + &weights.w_cost[i] * &Rational::from(mods.lambda[i] + mods.mu[i])
        })
        .sum()
}
