//! Partition to inverse knapsack.
//!
//! Each value `a` becomes an item with profit `4a` and cost `2a`; a sentinel
//! item `(4, 1)` stays unselected. The budget is `3B` and the decision
//! threshold is `7B`, where `B` is half the total.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    BinarySolution, CostWeights, FkpInstance, InverseInstance, InverseSolution, Item,
    ModificationBounds, Norm,
};
use crate::oracle::{exact_l1, OracleConfig};
use crate::rational::Rational;

/// Largest set [`has_equal_split`] enumerates.
pub const MAX_SUBSET_ITEMS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionInstance {
    pub values: Vec<i64>,
    pub half_sum: i64,
}

impl PartitionInstance {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidPartition("no values".into()));
        }
        if let Some(a) = values.iter().find(|&&a| a < 1) {
            return Err(Error::InvalidPartition(format!(
                "value {a} is not positive"
            )));
        }
        let total = values
            .iter()
            .try_fold(0i64, |s, &a| s.checked_add(a))
            .ok_or_else(|| Error::InvalidPartition("sum overflows".into()))?;
        if total % 2 != 0 {
            return Err(Error::InvalidPartition(format!("sum {total} is odd")));
        }
        // 4a and 8B must stay representable
        if total > i64::MAX / 8 {
            return Err(Error::InvalidPartition("values too large".into()));
        }
        Ok(PartitionInstance {
            values,
            half_sum: total / 2,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetOutput {
    pub instance: InverseInstance,
    pub decision_budget: Rational,
}

pub fn build_gadget(pp: &PartitionInstance) -> Result<GadgetOutput> {
    let pp = PartitionInstance::new(pp.values.clone())?;
    let n = pp.values.len();
    let mut items: Vec<Item> = pp
        .values
        .iter()
        .map(|&a| Item {
            profit: 4 * a,
            cost: 2 * a,
        })
        .collect();
    items.push(Item { profit: 4, cost: 1 });

    let mut bounds = ModificationBounds::zeros(n + 1);
    for (i, &a) in pp.values.iter().enumerate() {
        bounds.u_bar[i] = 4 * a;
        bounds.mu_bar[i] = a;
    }
    let mut weights = CostWeights::uniform(n + 1);
    weights.w_cost = vec![Rational::from(3i64); n + 1];

    let mut x = vec![true; n + 1];
    x[n] = false;

    let instance = InverseInstance::new(
        FkpInstance::new(items, 3 * pp.half_sum)?,
        BinarySolution::from_bools(x),
        bounds,
        weights,
        Norm::L1,
    )?;
    Ok(GadgetOutput {
        instance,
        decision_budget: Rational::from(7 * pp.half_sum),
    })
}

/// Exact optimum of the gadget instance.
pub fn gadget_optimum(pp: &PartitionInstance, cfg: &OracleConfig) -> Result<InverseSolution> {
    exact_l1(&build_gadget(pp)?.instance, cfg)
}

/// Answers the decision problem on the gadget: is the optimum at most `7B`?
pub fn decide_partition_via_gadget(pp: &PartitionInstance, cfg: &OracleConfig) -> Result<bool> {
    let g = build_gadget(pp)?;
    Ok(match exact_l1(&g.instance, cfg)? {
        InverseSolution::Optimal { objective, .. } => objective <= g.decision_budget,
        InverseSolution::Infeasible => false,
    })
}

/// Does some subset of `values` sum to exactly half the total? Plain
/// enumeration of all subsets.
pub fn has_equal_split(values: &[i64]) -> Result<bool> {
    let n = values.len();
    if n > MAX_SUBSET_ITEMS {
        return Err(Error::TooLarge {
            n,
            max: MAX_SUBSET_ITEMS,
        });
    }
    let total: i128 = values.iter().map(|&a| i128::from(a)).sum();
    if total % 2 != 0 {
        return Ok(false);
    }
    Ok((0u64..1 << n).any(|mask| {
        let s: i128 = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i128::from(values[i]))
            .sum();
        2 * s == total
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fkp::check_optimality;
    use crate::fkp::Verdict;
    use crate::model::apply_modifications;

    #[test]
    fn construction() {
        let g = build_gadget(&PartitionInstance::new(vec![1, 1, 2]).unwrap()).unwrap();
        let inst = &g.instance;
        let p: Vec<i64> = inst.base.items.iter().map(|it| it.profit).collect();
        let c: Vec<i64> = inst.base.items.iter().map(|it| it.cost).collect();
        assert_eq!(p, vec![4, 4, 8, 4]);
        assert_eq!(c, vec![2, 2, 4, 1]);
        assert_eq!(inst.base.budget, 6);
        assert_eq!(g.decision_budget, Rational::from(14i64));
        assert_eq!(inst.x_star.to_bits(), vec![1, 1, 1, 0]);
        assert_eq!(inst.bounds.u_bar, vec![4, 4, 8, 0]);
        assert_eq!(inst.bounds.mu_bar, vec![1, 1, 2, 0]);
        assert!(inst
            .bounds
            .v_bar
            .iter()
            .chain(&inst.bounds.lambda_bar)
            .all(|&x| x == 0));

        let g = build_gadget(&PartitionInstance::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(g.instance.base.budget, 3);
        assert_eq!(g.decision_budget, Rational::from(7i64));
    }

    #[test]
    fn odd_or_nonpositive_values_rejected() {
        assert!(matches!(
            PartitionInstance::new(vec![1, 1, 1]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            PartitionInstance::new(vec![0, 2]),
            Err(Error::InvalidPartition(_))
        ));
        let bad = PartitionInstance {
            values: vec![1, 2],
            half_sum: 1,
        };
        assert!(build_gadget(&bad).is_err());
    }

    #[test]
    fn target_starts_non_optimal() {
        let g = build_gadget(&PartitionInstance::new(vec![2, 3, 1]).unwrap()).unwrap();
        let r = check_optimality(&g.instance.base, &g.instance.x_star).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetMismatch);
        assert_eq!(r.lhs_sum, 4 * 3);
    }

    #[test]
    fn yes_instance_costs_seven_b() {
        let cfg = OracleConfig::default();
        let pp = PartitionInstance::new(vec![1, 1, 2]).unwrap();
        let sol = gadget_optimum(&pp, &cfg).unwrap();
        assert_eq!(sol.objective(), Some(&Rational::from(14i64)));
        let g = build_gadget(&pp).unwrap();
        let modified = apply_modifications(&g.instance, sol.mods().unwrap()).unwrap();
        assert!(check_optimality(&modified, &g.instance.x_star)
            .unwrap()
            .is_optimal());
        assert!(decide_partition_via_gadget(&pp, &cfg).unwrap());
        assert!(
            decide_partition_via_gadget(&PartitionInstance::new(vec![2, 2]).unwrap(), &cfg)
                .unwrap()
        );
    }

    #[test]
    fn no_instance_still_reaches_seven_b() {
        // mu = (1, 1), u = (0, 8): costs 3 + 3 + 8 = 14 and makes x* optimal
        let pp = PartitionInstance::new(vec![1, 3]).unwrap();
        assert!(!has_equal_split(&pp.values).unwrap());
        let sol = gadget_optimum(&pp, &OracleConfig::default()).unwrap();
        assert_eq!(sol.objective(), Some(&Rational::from(14i64)));
    }

    #[test]
    fn subset_sum() {
        assert!(has_equal_split(&[1, 1, 2]).unwrap());
        assert!(has_equal_split(&[2, 2]).unwrap());
        assert!(!has_equal_split(&[1, 3]).unwrap());
        assert!(!has_equal_split(&[1, 2]).unwrap());
    }
}
