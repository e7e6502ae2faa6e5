//! Forward fractional knapsack: greedy solver and the optimality test for
//! 0/1 target vectors.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::Result;
use crate::model::{check_len, cmp_ratio, BinarySolution, FkpInstance, FractionalSolution, Item};
use crate::rational::Rational;

/// Greedy solution: items in decreasing ratio order (lower index first on
/// ties), the last item taken fractionally when the budget binds.
pub fn solve_greedy(inst: &FkpInstance) -> (FractionalSolution, Rational) {
    let mut order: Vec<usize> = (0..inst.items.len()).collect();
    order.sort_by(|&a, &b| ratio_desc(&inst.items[a], &inst.items[b]));
    greedy_in_order(inst, &order)
}

fn ratio_desc(a: &Item, b: &Item) -> Ordering {
    cmp_ratio(
        b.profit.into(),
        b.cost.into(),
        a.profit.into(),
        a.cost.into(),
    )
}

/// Runs the greedy fill along an explicit item order.
pub(crate) fn greedy_in_order(
    inst: &FkpInstance,
    order: &[usize],
) -> (FractionalSolution, Rational) {
    let mut values = vec![Rational::zero(); inst.items.len()];
    let mut objective = Rational::zero();
    let mut remaining = i128::from(inst.budget.max(0));
    for &i in order {
        if remaining == 0 {
            break;
        }
        let item = inst.items[i];
        let cost = i128::from(item.cost);
        if cost <= remaining {
            values[i] = Rational::one();
            objective = objective + Rational::from(item.profit);
            remaining -= cost;
        } else {
            let frac = Rational::new(remaining, cost);
            objective = objective + &frac * &Rational::from(item.profit);
            values[i] = frac;
            remaining = 0;
        }
    }
    (FractionalSolution { values }, objective)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Optimal,
    BudgetMismatch,
    RatioViolation,
}

/// Outcome of [`check_optimality`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalityReport {
    pub verdict: Verdict,
    /// `(i, j)` with `i` in `I1`, `j` in `I0` and `p_i/c_i < p_j/c_j`.
    pub witness: Option<(usize, usize)>,
    /// `sum c_i x*_i`.
    pub lhs_sum: i128,
}

impl OptimalityReport {
    pub fn is_optimal(&self) -> bool {
        self.verdict == Verdict::Optimal
    }
}

/// Tests whether a 0/1 vector is optimal: it must use the budget exactly and
/// every selected ratio must be at least every unselected ratio.
///
/// The budget condition is checked first. The witness pairs the smallest
/// selected ratio with the largest unselected one (lowest index on ties).
pub fn check_optimality(inst: &FkpInstance, x_star: &BinarySolution) -> Result<OptimalityReport> {
    check_len("x_star", inst.items.len(), x_star.len())?;
    let lhs_sum: i128 = x_star.ones().map(|i| i128::from(inst.items[i].cost)).sum();
    if lhs_sum != i128::from(inst.budget) {
        return Ok(OptimalityReport {
            verdict: Verdict::BudgetMismatch,
            witness: None,
            lhs_sum,
        });
    }
    let ratio_cmp = |a: usize, b: usize| {
        let (x, y) = (&inst.items[a], &inst.items[b]);
        cmp_ratio(
            x.profit.into(),
            x.cost.into(),
            y.profit.into(),
            y.cost.into(),
        )
    };
    let worst_in = x_star.ones().reduce(|best, i| {
        if ratio_cmp(i, best) == Ordering::Less {
            i
        } else {
            best
        }
    });
    let best_out = x_star.zeros().reduce(|best, j| {
        if ratio_cmp(j, best) == Ordering::Greater {
            j
        } else {
            best
        }
    });
    let witness = match (worst_in, best_out) {
        (Some(i), Some(j)) if ratio_cmp(i, j) == Ordering::Less => Some((i, j)),
        _ => None,
    };
    Ok(OptimalityReport {
        verdict: if witness.is_some() {
            Verdict::RatioViolation
        } else {
            Verdict::Optimal
        },
        witness,
        lhs_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table1;

    fn inst(items: &[(i64, i64)], budget: i64) -> FkpInstance {
        FkpInstance::new(
            items
                .iter()
                .map(|&(p, c)| Item::new(p, c).unwrap())
                .collect(),
            budget,
        )
        .unwrap()
    }

    #[test]
    fn greedy_takes_fraction_of_last_item() {
        let (x, obj) = solve_greedy(&inst(&[(6, 3), (4, 4)], 5));
        assert_eq!(x.values, vec![Rational::one(), Rational::new(1, 2)]);
        assert_eq!(obj, Rational::from(8i64));
    }

    #[test]
    fn greedy_forced_fraction() {
        let (x, obj) = solve_greedy(&inst(&[(5, 2)], 1));
        assert_eq!(x.values, vec![Rational::new(1, 2)]);
        assert_eq!(obj, Rational::new(5, 2));
    }

    #[test]
    fn greedy_slack_budget_takes_everything() {
        let i = inst(&[(1, 2), (3, 1), (2, 2)], 100);
        let (x, obj) = solve_greedy(&i);
        assert!(x.values.iter().all(|v| *v == Rational::one()));
        assert_eq!(obj, Rational::from(6i64));
        assert_eq!(x.used_budget(&i), Rational::from(5i64));
    }

    #[test]
    fn greedy_ties_prefer_lower_index() {
        let (x, _) = solve_greedy(&inst(&[(2, 2), (3, 3)], 2));
        assert_eq!(x.values, vec![Rational::one(), Rational::zero()]);
    }

    #[test]
    fn table1_violates_ratio_order() {
        let t = table1();
        let r = check_optimality(&t.base, &t.x_star).unwrap();
        assert_eq!(r.verdict, Verdict::RatioViolation);
        // items 2 and 5 in 1-based numbering: 7/10 < 11/10
        assert_eq!(r.witness, Some((1, 4)));
        assert_eq!(r.lhs_sum, 25);
    }

    #[test]
    fn optimal_and_budget_mismatch() {
        let x = BinarySolution::from_bits(&[1, 0]).unwrap();
        let r = check_optimality(&inst(&[(4, 2), (1, 2)], 2), &x).unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.witness, None);

        let r = check_optimality(&inst(&[(4, 2), (1, 2)], 3), &x).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetMismatch);
        assert_eq!(r.lhs_sum, 2);
    }

    #[test]
    fn budget_is_checked_before_ratios() {
        let x = BinarySolution::from_bits(&[1, 0]).unwrap();
        let r = check_optimality(&inst(&[(1, 2), (4, 2)], 3), &x).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetMismatch);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let x = BinarySolution::from_bits(&[1]).unwrap();
        assert!(check_optimality(&inst(&[(4, 2), (1, 2)], 2), &x).is_err());
    }
}
