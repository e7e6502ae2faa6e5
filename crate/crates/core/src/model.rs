//! Domain types shared by every solver.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Compares `p1/c1` with `p2/c2` for positive denominators.
///
/// Operands are modified item values, which fit in `i64`, so the cross
/// products fit in `i128` without overflow.
pub(crate) fn cmp_ratio(p1: i128, c1: i128, p2: i128, c2: i128) -> Ordering {
    debug_assert!(c1 > 0 && c2 > 0);
    (p1 * c2).cmp(&(p2 * c1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item {
    pub profit: i64,
    pub cost: i64,
}

impl Item {
    pub fn new(profit: i64, cost: i64) -> Result<Self> {
        let item = Item { profit, cost };
        item.validate(0)?;
        Ok(item)
    }

    fn validate(&self, index: usize) -> Result<()> {
        if self.profit < 1 || self.cost < 1 {
            return Err(Error::InvariantViolation(format!(
                "item {index}: profit and cost must be >= 1 (got p = {}, c = {})",
                self.profit, self.cost
            )));
        }
        Ok(())
    }

    pub fn ratio(&self) -> Rational {
        ratio_of(self)
    }
}

/// Profit density `profit / cost` in canonical form.
pub fn ratio_of(item: &Item) -> Rational {
    Rational::new(item.profit, item.cost)
}

/// Items plus a budget: `max sum p_i x_i` s.t. `sum c_i x_i <= b`, `0 <= x_i <= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FkpInstance {
    pub items: Vec<Item>,
    pub budget: i64,
}

impl FkpInstance {
    pub fn new(items: Vec<Item>, budget: i64) -> Result<Self> {
        let inst = FkpInstance { items, budget };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.items.is_empty() {
            return Err(Error::InvariantViolation(
                "instance must contain at least one item".into(),
            ));
        }
        if self.budget < 1 {
            return Err(Error::InvariantViolation(format!(
                "budget must be >= 1 (got {})",
                self.budget
            )));
        }
        for (i, item) in self.items.iter().enumerate() {
            item.validate(i)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// A 0/1 target vector. `I1` are the indices set to one, `I0` the rest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinarySolution {
    values: Vec<bool>,
}

impl BinarySolution {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let values = bits
            .iter()
            .enumerate()
            .map(|(i, &b)| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::InvariantViolation(format!(
                    "x_star[{i}] must be 0 or 1 (got {other})"
                ))),
            })
            .collect::<Result<_>>()?;
        Ok(BinarySolution { values })
    }

    pub fn from_bools(values: Vec<bool>) -> Self {
        BinarySolution { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_one(&self, i: usize) -> bool {
        self.values[i]
    }

    pub fn as_bools(&self) -> &[bool] {
        &self.values
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.values.iter().map(|&b| u8::from(b)).collect()
    }

    /// Indices in `I1`.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    /// Indices in `I0`.
    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(i, _)| i)
    }
}

/// Solution of the continuous problem. At most one entry lies strictly
/// between 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution {
    pub values: Vec<Rational>,
}

impl FractionalSolution {
    pub fn fractional_count(&self) -> usize {
        self.values
            .iter()
            .filter(|v| !v.is_zero() && **v != Rational::one())
            .count()
    }

    pub fn objective(&self, inst: &FkpInstance) -> Rational {
        self.values
            .iter()
            .zip(&inst.items)
            .map(|(x, it)| x * &Rational::from(it.profit))
            .sum()
    }

    pub fn used_budget(&self, inst: &FkpInstance) -> Rational {
        self.values
            .iter()
            .zip(&inst.items)
            .map(|(x, it)| x * &Rational::from(it.cost))
            .sum()
    }
}

/// Per-item caps on the integer modifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModificationBounds {
    /// Max profit increase.
    pub u_bar: Vec<i64>,
    /// Max profit decrease.
    pub v_bar: Vec<i64>,
    /// Max cost increase.
    pub lambda_bar: Vec<i64>,
    /// Max cost decrease.
    pub mu_bar: Vec<i64>,
}

impl ModificationBounds {
    pub fn zeros(n: usize) -> Self {
        ModificationBounds {
            u_bar: vec![0; n],
            v_bar: vec![0; n],
            lambda_bar: vec![0; n],
            mu_bar: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.u_bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u_bar.is_empty()
    }

    /// Largest single cap over all four families.
    pub fn max_entry(&self) -> i64 {
        self.columns()
            .iter()
            .flat_map(|(_, c)| c.iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn columns(&self) -> [(&'static str, &Vec<i64>); 4] {
        [
            ("u_bar", &self.u_bar),
            ("v_bar", &self.v_bar),
            ("lambda_bar", &self.lambda_bar),
            ("mu_bar", &self.mu_bar),
        ]
    }

    /// Checks the caps against `items`. Modified profits and costs must stay
    /// in `1..=i64::MAX`.
    pub fn validate(&self, items: &[Item]) -> Result<()> {
        for (name, col) in self.columns() {
            check_len(name, items.len(), col.len())?;
            if let Some((i, v)) = col.iter().enumerate().find(|(_, &v)| v < 0) {
                return Err(Error::InvariantViolation(format!(
                    "item {i}: {name} must be >= 0 (got {v})"
                )));
            }
        }
        for (i, it) in items.iter().enumerate() {
            if self.v_bar[i] > it.profit - 1 {
                return Err(Error::InvariantViolation(format!(
                    "item {i}: v_bar ({}) must be <= profit - 1 ({})",
                    self.v_bar[i],
                    it.profit - 1
                )));
            }
            if self.mu_bar[i] > it.cost - 1 {
                return Err(Error::InvariantViolation(format!(
                    "item {i}: mu_bar ({}) must be <= cost - 1 ({})",
                    self.mu_bar[i],
                    it.cost - 1
                )));
            }
            if it.profit.checked_add(self.u_bar[i]).is_none() {
                return Err(Error::InvariantViolation(format!(
                    "item {i}: profit + u_bar overflows 63 bits"
                )));
            }
            if it.cost.checked_add(self.lambda_bar[i]).is_none() {
                return Err(Error::InvariantViolation(format!(
                    "item {i}: cost + lambda_bar overflows 63 bits"
                )));
            }
        }
        Ok(())
    }
}

/// Integer modifications: new profit `p + u - v`, new cost `c + lambda - mu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModificationVector {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
}

impl ModificationVector {
    pub fn zeros(n: usize) -> Self {
        ModificationVector {
            u: vec![0; n],
            v: vec![0; n],
            lambda: vec![0; n],
            mu: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|v| v == 0)
    }

    /// All `4n` entries in `(u, v, lambda, mu)` order.
    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.u
            .iter()
            .chain(&self.v)
            .chain(&self.lambda)
            .chain(&self.mu)
            .copied()
    }

    /// Checks every entry against `bounds`.
    pub fn check_within(&self, bounds: &ModificationBounds) -> Result<()> {
        let pairs = [
            ("u", &self.u, &bounds.u_bar),
            ("v", &self.v, &bounds.v_bar),
            ("lambda", &self.lambda, &bounds.lambda_bar),
            ("mu", &self.mu, &bounds.mu_bar),
        ];
        for (field, vals, caps) in pairs {
            check_len(field, caps.len(), vals.len())?;
            for (item, (&value, &bound)) in vals.iter().zip(caps).enumerate() {
                if value < 0 || value > bound {
                    return Err(Error::BoundViolation {
                        item,
                        field,
                        value,
                        bound,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Unit prices for the l1 objective: `w` per unit of profit change,
/// `w_cost` per unit of cost change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostWeights {
    pub w: Vec<Rational>,
    pub w_cost: Vec<Rational>,
}

impl CostWeights {
    pub fn uniform(n: usize) -> Self {
        CostWeights {
            w: vec![Rational::one(); n],
            w_cost: vec![Rational::one(); n],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        check_len("w", n, self.w.len())?;
        check_len("w_cost", n, self.w_cost.len())?;
        for (name, col) in [("w", &self.w), ("w_cost", &self.w_cost)] {
            if let Some((i, v)) = col.iter().enumerate().find(|(_, v)| v.is_negative()) {
                return Err(Error::InvariantViolation(format!(
                    "item {i}: {name} must be >= 0 (got {v})"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    #[default]
    L1,
    LInf,
}

impl std::fmt::Display for Norm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Norm::L1 => "l1",
            Norm::LInf => "linf",
        })
    }
}

/// A forward instance, a target 0/1 solution, modification caps, weights
/// and the norm measuring the modification cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseInstance {
    pub base: FkpInstance,
    pub x_star: BinarySolution,
    pub bounds: ModificationBounds,
    pub weights: CostWeights,
    pub norm: Norm,
}

impl InverseInstance {
    pub fn new(
        base: FkpInstance,
        x_star: BinarySolution,
        bounds: ModificationBounds,
        weights: CostWeights,
        norm: Norm,
    ) -> Result<Self> {
        let inv = InverseInstance {
            base,
            x_star,
            bounds,
            weights,
            norm,
        };
        inv.validate()?;
        Ok(inv)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let n = self.base.len();
        check_len("x_star", n, self.x_star.len())?;
        self.bounds.validate(&self.base.items)?;
        self.weights.validate(n)
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn with_norm(mut self, norm: Norm) -> Self {
        self.norm = norm;
        self
    }

    /// `sum_{i in I1} c_i`.
    pub fn selected_cost(&self) -> i128 {
        self.x_star
            .ones()
            .map(|i| i128::from(self.base.items[i].cost))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseSolution {
    Optimal {
        mods: ModificationVector,
        objective: Rational,
    },
    Infeasible,
}

impl InverseSolution {
    pub fn is_optimal(&self) -> bool {
        matches!(self, InverseSolution::Optimal { .. })
    }

    pub fn objective(&self) -> Option<&Rational> {
        match self {
            InverseSolution::Optimal { objective, .. } => Some(objective),
            InverseSolution::Infeasible => None,
        }
    }

    pub fn mods(&self) -> Option<&ModificationVector> {
        match self {
            InverseSolution::Optimal { mods, .. } => Some(mods),
            InverseSolution::Infeasible => None,
        }
    }
}

/// Applies `mods` to the base instance of `inv`. The budget is unchanged.
pub fn apply_modifications(
    inv: &InverseInstance,
    mods: &ModificationVector,
) -> Result<FkpInstance> {
    mods.check_within(&inv.bounds)?;
    let items = inv
        .base
        .items
        .iter()
        .enumerate()
        .map(|(i, it)| {
            let p = i128::from(it.profit) + i128::from(mods.u[i]) - i128::from(mods.v[i]);
            let c = i128::from(it.cost) + i128::from(mods.lambda[i]) - i128::from(mods.mu[i]);
            for (field, value) in [("profit", p), ("cost", c)] {
                if value < 1 {
                    return Err(Error::NonPositiveResult {
                        item: i,
                        field,
                        value,
                    });
                }
            }
            let fit = |v: i128| {
                i64::try_from(v).map_err(|_| {
                    Error::InvariantViolation(format!("item {i}: modified value overflows 63 bits"))
                })
            };
            Ok(Item {
                profit: fit(p)?,
                cost: fit(c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FkpInstance {
        items,
        budget: inv.base.budget,
    })
}

pub(crate) fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch {
            what,
            expected,
            found,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table1;
    use proptest::prelude::*;

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_of(&Item::new(8, 5).unwrap()), Rational::new(8, 5));
        assert_eq!(ratio_of(&Item::new(7, 7).unwrap()), Rational::one());
        assert_eq!(ratio_of(&Item::new(10, 10).unwrap()), Rational::one());
    }

    #[test]
    fn item_and_instance_validation() {
        assert!(Item::new(0, 3).is_err());
        assert!(Item::new(3, 0).is_err());
        assert!(FkpInstance::new(vec![], 3).is_err());
        assert!(FkpInstance::new(vec![Item::new(1, 1).unwrap()], 0).is_err());
        assert!(BinarySolution::from_bits(&[0, 2]).is_err());
    }

    #[test]
    fn bounds_reject_nonpositive_results() {
        let inv = table1();
        let mut bounds = inv.bounds.clone();
        bounds.v_bar[0] = 8;
        assert!(matches!(
            bounds.validate(&inv.base.items),
            Err(Error::InvariantViolation(_))
        ));
        let mut bounds = inv.bounds.clone();
        bounds.mu_bar[1] = 10;
        assert!(bounds.validate(&inv.base.items).is_err());
    }

    #[test]
    fn apply_identity() {
        let inv = table1();
        let out = apply_modifications(&inv, &ModificationVector::zeros(5)).unwrap();
        assert_eq!(out, inv.base);
    }

    #[test]
    fn apply_profit_increase() {
        let inv = table1();
        let mut mods = ModificationVector::zeros(5);
        mods.u[1] = 3;
        let out = apply_modifications(&inv, &mods).unwrap();
        assert_eq!(out.items[1].profit, 10);
        assert_eq!(out.budget, 25);
    }

    #[test]
    fn apply_rejects_out_of_bound_and_nonpositive() {
        let mut inv = table1();
        let mut mods = ModificationVector::zeros(5);
        mods.u[3] = 2;
        assert!(matches!(
            apply_modifications(&inv, &mods),
            Err(Error::BoundViolation {
                item: 3,
                field: "u",
                ..
            })
        ));

        // Bypass the bounds invariant to reach the application-time check.
        inv.bounds.v_bar[0] = 8;
        let mut mods = ModificationVector::zeros(5);
        mods.v[0] = 8;
        assert!(matches!(
            apply_modifications(&inv, &mods),
            Err(Error::NonPositiveResult {
                item: 0,
                field: "profit",
                ..
            })
        ));
    }

    proptest! {
        #[test]
        fn apply_preserves_shape(u in proptest::collection::vec(0i64..=3, 5), v in proptest::collection::vec(0i64..=3, 5)) {
            let mut inv = table1();
            inv.bounds.u_bar = vec![3; 5];
            inv.bounds.v_bar = vec![3; 5];
            // Opposite moves on one item cancel, so keep at most one direction per item.
            let v: Vec<i64> = v.iter().zip(&u).map(|(&v, &u)| if u > 0 { 0 } else { v }).collect();
            let mods = ModificationVector { u, v, lambda: vec![0; 5], mu: vec![0; 5] };
            let out = apply_modifications(&inv, &mods).unwrap();
            prop_assert_eq!(out.items.len(), 5);
            prop_assert_eq!(out.budget, inv.base.budget);
            prop_assert_eq!(out == inv.base, mods.is_zero());
        }
    }
}
