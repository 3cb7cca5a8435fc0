#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdml::formula::HybridFormula;
use sdml::gen::{random_formula, FormulaShape};
use sdml::kripke::ModelSpace;
use sdml::{KripkeModel, LdFormula};

pub const ATOMS: [&str; 2] = ["p", "q"];

/// Formulas over `p`, `q` built from the six core constructors.
pub fn ld(depth: u32, nodes: u32) -> impl Strategy<Value = LdFormula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(&ATOMS[..]).prop_map(LdFormula::atom),
        1 => Just(LdFormula::top()),
    ];
    leaf.prop_recursive(depth, nodes, 2, |inner| {
        prop_oneof![
            2 => inner.clone().prop_map(LdFormula::not),
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| LdFormula::and(a, b)),
            2 => inner.clone().prop_map(LdFormula::boxed),
            1 => (inner.clone(), inner).prop_map(|(g, b)| LdFormula::del(g, b)),
        ]
    })
}

/// Formulas of size drawn uniformly from `1..=max_size`, mixed with
/// shrinkable recursive ones.
pub fn sized_ld(max_size: usize, max_del: usize) -> impl Strategy<Value = LdFormula> {
    let sized = (1..=max_size, 0..=max_del, any::<u64>()).prop_map(|(size, dels, seed)| {
        random_formula(
            &mut ChaCha8Rng::seed_from_u64(seed),
            &FormulaShape::new(&ATOMS, size, dels),
        )
    });
    prop_oneof![3 => sized, 1 => ld(8, max_size as u32)]
}

/// Deletion-free formulas.
pub fn basic(depth: u32, nodes: u32) -> impl Strategy<Value = LdFormula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(&ATOMS[..]).prop_map(LdFormula::atom),
        1 => Just(LdFormula::top()),
    ];
    leaf.prop_recursive(depth, nodes, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(LdFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| LdFormula::and(a, b)),
            inner.prop_map(LdFormula::boxed),
        ]
    })
}

/// Hybrid formulas over `p`, `q` and nominals `x`, `y`; binders and `@`
/// may leave nominals free.
pub fn hybrid(depth: u32, nodes: u32) -> impl Strategy<Value = HybridFormula> {
    const NOMS: [&str; 2] = ["x", "y"];
    let leaf = prop_oneof![
        3 => prop::sample::select(&ATOMS[..]).prop_map(HybridFormula::atom),
        2 => prop::sample::select(&NOMS[..]).prop_map(HybridFormula::nom),
        1 => Just(HybridFormula::bot()),
    ];
    leaf.prop_recursive(depth, nodes, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(HybridFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| HybridFormula::and(a, b)),
            inner.clone().prop_map(HybridFormula::boxed),
            (inner.clone(), inner.clone()).prop_map(|(g, b)| HybridFormula::del(g, b)),
            (prop::sample::select(&NOMS[..]), inner.clone()).prop_map(|(x, f)| HybridFormula::at(x.into(), f)),
            (prop::sample::select(&NOMS[..]), inner).prop_map(|(x, f)| HybridFormula::down(x.into(), f)),
        ]
    })
}

/// A canonical model with between one and `max_worlds` worlds over `p`, `q`.
pub fn model(max_worlds: usize) -> impl Strategy<Value = Arc<KripkeModel>> {
    (1..=max_worlds).prop_flat_map(|n| {
        let space = ModelSpace::new(n, &ATOMS).unwrap();
        (0..space.count()).prop_map(move |i| Arc::new(space.decode(i)))
    })
}
