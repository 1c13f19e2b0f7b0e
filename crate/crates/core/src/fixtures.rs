//! Small worked instances shared by tests, benches and documentation.

use crate::algebra::PathAlgebra;
use crate::coeff::Field;
use crate::order::AdmissibleOrder;
use crate::quiver::Quiver;

pub const BASIC_ORDER_ONE: &str = include_str!("../problems/basic-order1.alg");
pub const BASIC_ORDER_TWO: &str = include_str!("../problems/basic-order2.alg");
pub const POLYNOMIAL_XY: &str = include_str!("../problems/polynomial-xy.alg");

/// `a: v1→v2, b: v2→v4, c: v1→v3, d: v3→v4, e: v4→v5`.
pub fn example_quiver() -> Quiver {
    Quiver::new(
        &["v1", "v2", "v3", "v4", "v5"],
        &[
            ("a", "v1", "v2"),
            ("b", "v2", "v4"),
            ("c", "v1", "v3"),
            ("d", "v3", "v4"),
            ("e", "v4", "v5"),
        ],
    )
    .expect("valid quiver")
}

fn lenlex(quiver: &Quiver, vertices: &[&str], arrows: &[&str]) -> AdmissibleOrder {
    let vs: Vec<_> = vertices.iter().map(|v| quiver.vertex(v).expect("vertex")).collect();
    let arrs: Vec<_> = arrows.iter().map(|a| quiver.arrow_id(a).expect("arrow")).collect();
    AdmissibleOrder::length_lex(quiver, &vs, &arrs).expect("valid order")
}

/// `v5 < v4 < v3 < v2 < v1 < e < d < c < b < a`.
pub fn order_one(quiver: &Quiver) -> AdmissibleOrder {
    lenlex(quiver, &["v5", "v4", "v3", "v2", "v1"], &["e", "d", "c", "b", "a"])
}

/// `v5 < v4 < v3 < v2 < v1 < a < b < c < d < e`.
pub fn order_two(quiver: &Quiver) -> AdmissibleOrder {
    lenlex(quiver, &["v5", "v4", "v3", "v2", "v1"], &["a", "b", "c", "d", "e"])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderChoice {
    One,
    Two,
}

pub fn example_algebra(choice: OrderChoice) -> PathAlgebra {
    let q = example_quiver();
    let order = match choice {
        OrderChoice::One => order_one(&q),
        OrderChoice::Two => order_two(&q),
    };
    PathAlgebra::new(q, order, Field::Rationals)
}

/// Two vertices with `a, b: v1→v2` and `c, d: v2→v1`, ordered
/// `v1 < v2 < a < b < c < d`.
pub fn two_cycle_algebra() -> PathAlgebra {
    let q = Quiver::new(
        &["v1", "v2"],
        &[("a", "v1", "v2"), ("b", "v1", "v2"), ("c", "v2", "v1"), ("d", "v2", "v1")],
    )
    .expect("valid quiver");
    let order = lenlex(&q, &["v1", "v2"], &["a", "b", "c", "d"]);
    PathAlgebra::new(q, order, Field::Rationals)
}
