//! Built-in instances used by tests, docs and the CLI.

use crate::model::{
    BinarySolution, CostWeights, FkpInstance, InverseInstance, Item, ModificationBounds, Norm,
};
use crate::rational::Rational;

/// The five-item profit-modification instance with target `x* = (1,1,0,1,0)`.
///
/// Profit caps are `(3,4,3,1,4)`: increases on the selected items, decreases
/// on the others. The budget `b = 25` is the only value for which `x*` uses
/// the budget exactly. Cost modifications are disabled.
pub fn table1() -> InverseInstance {
    let items = [(8, 5), (7, 10), (9, 10), (10, 10), (11, 10)]
        .into_iter()
        .map(|(p, c)| Item { profit: p, cost: c })
        .collect();
    let half = Rational::new(1, 2);
    InverseInstance {
        base: FkpInstance { items, budget: 25 },
        x_star: BinarySolution::from_bools(vec![true, true, false, true, false]),
        bounds: ModificationBounds {
            u_bar: vec![3, 4, 0, 1, 0],
            v_bar: vec![0, 0, 3, 0, 4],
            lambda_bar: vec![0; 5],
            mu_bar: vec![0; 5],
        },
        weights: CostWeights {
            w: vec![
                Rational::from(3i64),
                half.clone(),
                half,
                Rational::one(),
                Rational::one(),
            ],
            w_cost: vec![Rational::one(); 5],
        },
        norm: Norm::L1,
    }
}
