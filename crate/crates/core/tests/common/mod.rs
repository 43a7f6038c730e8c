//! Shared corpus builders for the integration suites.

use std::collections::BTreeMap;

use plonka_core::algebra::{FiniteAlgebra, Signature};
use plonka_core::enumerate::tuples;
use plonka_core::semilattice::SupSemilattice;
use plonka_core::system::InductiveSystem;

pub fn sig2() -> Signature {
    Signature::of(&[("s", 2)])
}

/// Every algebra with one binary symbol on the given carrier.
pub fn all_binary_algebras(n: usize) -> Vec<FiniteAlgebra> {
    tuples(n, n * n)
        .map(|table| FiniteAlgebra::new(sig2(), n, vec![table]).unwrap())
        .collect()
}

pub fn max_algebra() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(sig2(), 2, |_, args| args[0].max(args[1]))
}

pub fn const_algebra() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0)
}

pub fn proj_algebra() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(sig2(), 2, |_, args| args[0])
}

/// The worked two-chain example: A_0 = {a}, A_1 = {b,c} with s constant b.
pub fn two_chain_system() -> InductiveSystem {
    let a0 = FiniteAlgebra::from_fn(sig2(), 1, |_, _| 0);
    let a1 = const_algebra();
    let mut transitions = BTreeMap::new();
    transitions.insert((0, 1), vec![0]);
    InductiveSystem::new(sig2(), SupSemilattice::chain(2), vec![a0, a1], transitions).unwrap()
}

/// A constant system: the same fiber everywhere, one transition map reused
/// for every strictly comparable pair (it must be an idempotent endomap for
/// the composition law to hold).
pub fn uniform_system(
    index: &SupSemilattice,
    fiber: FiniteAlgebra,
    step: Vec<usize>,
) -> InductiveSystem {
    let mut transitions = BTreeMap::new();
    for (i, j) in index.comparable_pairs() {
        if i != j {
            transitions.insert((i, j), step.clone());
        }
    }
    InductiveSystem::new(fiber.signature().clone(), index.clone(), vec![fiber; index.size()], transitions).unwrap()
}

/// Singleton fibers over an arbitrary index.
pub fn point_system(index: &SupSemilattice) -> InductiveSystem {
    uniform_system(index, FiniteAlgebra::final_algebra(sig2()), vec![0])
}

/// The corpus for the adjunction criteria: at least ten systems with index
/// semilattices of at most three elements and nonempty fibers of at most two.
pub fn adjunction_corpus() -> Vec<InductiveSystem> {
    let two = SupSemilattice::chain(2);
    let three = SupSemilattice::chain(3);
    let vee = plonka_core::semilattice::free_ssl(2).0;

    let mut corpus = vec![
        two_chain_system(),
        InductiveSystem::single(max_algebra()),
        InductiveSystem::single(const_algebra()),
        point_system(&two),
        point_system(&three),
        point_system(&vee),
        uniform_system(&two, max_algebra(), vec![0, 1]),
        uniform_system(&two, max_algebra(), vec![1, 1]),
        uniform_system(&two, const_algebra(), vec![0, 0]),
        uniform_system(&three, max_algebra(), vec![0, 1]),
        uniform_system(&vee, proj_algebra(), vec![0, 1]),
    ];

    // mixed fiber sizes over the three-element join semilattice
    let mut transitions = BTreeMap::new();
    transitions.insert((0, 2), vec![0, 1]);
    transitions.insert((1, 2), vec![1]);
    corpus.push(
        InductiveSystem::new(
            sig2(),
            vee.clone(),
            vec![max_algebra(), FiniteAlgebra::final_algebra(sig2()), max_algebra()],
            transitions,
        )
        .unwrap(),
    );

    // three-chain with growing fibers; endomaps of the constant algebra must
    // fix 0, so the upper transition collapses to it
    let mut transitions = BTreeMap::new();
    transitions.insert((0, 1), vec![0]);
    transitions.insert((1, 2), vec![0, 0]);
    transitions.insert((0, 2), vec![0]);
    corpus.push(
        InductiveSystem::new(
            sig2(),
            three.clone(),
            vec![
                FiniteAlgebra::final_algebra(sig2()),
                const_algebra(),
                const_algebra(),
            ],
            transitions,
        )
        .unwrap(),
    );

    corpus
}
