//! Named instances used by the example suite, tests and the CLI.

use crate::pl::{GraphPiece, PLMultiMap};
use crate::rational::q;
use crate::relation::RelationSystem;

fn finite(succ: &[&[usize]], labels: &[&str]) -> RelationSystem {
    let fibers = succ
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    RelationSystem::new(labels.iter().map(|s| s.to_string()).collect(), fibers).expect("valid builtin")
}

/// `0 → {0, 1}`, `1 → {0}`.
pub fn golden_mean() -> RelationSystem {
    finite(&[&[0, 1], &[0]], &["0", "1"])
}

/// Both states map onto both states.
pub fn full_two() -> RelationSystem {
    finite(&[&[0, 1], &[0, 1]], &["0", "1"])
}

pub fn two_cycle() -> RelationSystem {
    finite(&[&[1], &[0]], &["a", "b"])
}

/// `a → {a, b}`, `b → {b}`.
pub fn loops() -> RelationSystem {
    finite(&[&[0, 1], &[1]], &["a", "b"])
}

pub fn three_cycle() -> RelationSystem {
    finite(&[&[1], &[2], &[0]], &["a", "b", "c"])
}

/// `a → {b}`, `b → {c}`, `c → {c}`.
pub fn chain() -> RelationSystem {
    finite(&[&[1], &[2], &[2]], &["a", "b", "c"])
}

pub fn finite_names() -> &'static [&'static str] {
    &["golden-mean", "full-two", "two-cycle", "loops", "three-cycle", "chain"]
}

pub fn finite_by_name(name: &str) -> Option<RelationSystem> {
    Some(match name {
        "golden-mean" => golden_mean(),
        "full-two" => full_two(),
        "two-cycle" => two_cycle(),
        "loops" => loops(),
        "three-cycle" => three_cycle(),
        "chain" => chain(),
        _ => return None,
    })
}

fn seg(x0: (i64, i64), x1: (i64, i64), a: i64, b: i64) -> GraphPiece {
    GraphPiece::segment(q(x0.0, x0.1), q(x1.0, x1.1), q(a, 1), q(b, 1)).expect("valid builtin")
}

fn rect(x0: (i64, i64), x1: (i64, i64), y0: (i64, i64), y1: (i64, i64)) -> GraphPiece {
    GraphPiece::rect(q(x0.0, x0.1), q(x1.0, x1.1), q(y0.0, y0.1), q(y1.0, y1.1)).expect("valid builtin")
}

/// The tent map `x ↦ 1 - |1 - 2x|`.
pub fn tent() -> PLMultiMap {
    PLMultiMap::new(vec![seg((0, 1), (1, 2), 2, 0), seg((1, 2), (1, 1), -2, 2)]).expect("valid builtin")
}

/// The tent map with `0` added to every fiber.
pub fn tent_with_zero() -> PLMultiMap {
    PLMultiMap::new(vec![
        seg((0, 1), (1, 2), 2, 0),
        seg((1, 2), (1, 1), -2, 2),
        rect((0, 1), (1, 1), (0, 1), (0, 1)),
    ])
    .expect("valid builtin")
}

/// `F(x) = [0, 1]` everywhere.
pub fn full_square() -> PLMultiMap {
    PLMultiMap::new(vec![rect((0, 1), (1, 1), (0, 1), (1, 1))]).expect("valid builtin")
}

/// `{x}` below `1/2`, `[0, 1]` at `1/2` and `1`, `{0, x, 1}` in between.
pub fn identity_with_full_fibers() -> PLMultiMap {
    PLMultiMap::new(vec![
        seg((0, 1), (1, 1), 1, 0),
        rect((1, 2), (1, 2), (0, 1), (1, 1)),
        rect((1, 2), (1, 1), (0, 1), (0, 1)),
        rect((1, 2), (1, 1), (1, 1), (1, 1)),
        rect((1, 1), (1, 1), (0, 1), (1, 1)),
    ])
    .expect("valid builtin")
}

pub fn pl_names() -> &'static [&'static str] {
    &["tent", "tent-with-zero", "full-square", "identity-with-full-fibers", "identity"]
}

pub fn pl_by_name(name: &str) -> Option<PLMultiMap> {
    Some(match name {
        "tent" => tent(),
        "tent-with-zero" => tent_with_zero(),
        "full-square" => full_square(),
        "identity-with-full-fibers" => identity_with_full_fibers(),
        "identity" => PLMultiMap::identity(),
        _ => return None,
    })
}
