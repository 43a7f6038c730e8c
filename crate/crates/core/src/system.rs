//! Inductive systems of algebras over a finite sup-semilattice: one algebra
//! per index, one transition homomorphism per comparable pair, satisfying the
//! identity and composition laws of a functor out of the index order.
//!
//! Morphisms pair a join morphism of indexes with a natural family of
//! homomorphisms into the reindexed target. The constant initial/final
//! systems, the comparison between them, and the transposition along a
//! residuated index morphism live here too.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{check_homomorphism, ConstantInSignature, FiniteAlgebra, Signature};
use crate::semilattice::{
    check_ssl_morphism, residual_left_adjoint, ResidualError, SslMorphism, SupSemilattice,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndSysError {
    #[error("expected one algebra per index element ({expected}), found {found}")]
    WrongAlgebraCount { expected: usize, found: usize },
    #[error("algebra at index {index} has a different signature")]
    SignatureMismatch { index: usize },
    #[error("transition for non-comparable pair ({i},{j})")]
    NotComparable { i: usize, j: usize },
    #[error("missing transition for pair ({i},{j})")]
    MissingTransition { i: usize, j: usize },
    #[error("transition ({i},{j}) is not a homomorphism: {reason}")]
    NotAHomomorphism { i: usize, j: usize, reason: String },
    #[error("transition ({i},{i}) is not the identity")]
    NotIdentity { i: usize },
    #[error("composition fails: f({j},{k}) o f({i},{j}) != f({i},{k})")]
    CompositionFails { i: usize, j: usize, k: usize },
}

/// A sup-semilattice inductive system of algebras over one signature.
///
/// Transitions are stored for every comparable pair, identities included,
/// and the functor laws are validated rather than derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveSystem {
    signature: Signature,
    index: SupSemilattice,
    algebras: Vec<FiniteAlgebra>,
    transitions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl InductiveSystem {
    /// Validate and build. The signature is explicit so that systems over
    /// the empty index still know it. `transitions` must contain a map for
    /// every strictly comparable pair `i < j`; identity transitions may be
    /// omitted (they are filled in) but are checked when present.
    pub fn new(
        signature: Signature,
        index: SupSemilattice,
        algebras: Vec<FiniteAlgebra>,
        mut transitions: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<InductiveSystem, IndSysError> {
        if algebras.len() != index.size() {
            return Err(IndSysError::WrongAlgebraCount {
                expected: index.size(),
                found: algebras.len(),
            });
        }
        for (i, a) in algebras.iter().enumerate() {
            if a.signature() != &signature {
                return Err(IndSysError::SignatureMismatch { index: i });
            }
        }
        for (i, a) in algebras.iter().enumerate() {
            transitions.entry((i, i)).or_insert_with(|| (0..a.carrier()).collect());
        }
        for (&(i, j), map) in &transitions {
            if i >= index.size() || j >= index.size() || !index.leq(i, j) {
                return Err(IndSysError::NotComparable { i, j });
            }
            check_homomorphism(map, &algebras[i], &algebras[j]).map_err(|e| {
                IndSysError::NotAHomomorphism { i, j, reason: e.to_string() }
            })?;
        }
        for (i, j) in index.comparable_pairs() {
            if !transitions.contains_key(&(i, j)) {
                return Err(IndSysError::MissingTransition { i, j });
            }
        }
        for i in 0..index.size() {
            let id: Vec<usize> = (0..algebras[i].carrier()).collect();
            if transitions[&(i, i)] != id {
                return Err(IndSysError::NotIdentity { i });
            }
        }
        for (i, j) in index.comparable_pairs() {
            for k in 0..index.size() {
                if !index.leq(j, k) {
                    continue;
                }
                let f_ij = &transitions[&(i, j)];
                let f_jk = &transitions[&(j, k)];
                let f_ik = &transitions[&(i, k)];
                let composed: Vec<usize> = f_ij.iter().map(|&x| f_jk[x]).collect();
                if composed != *f_ik {
                    return Err(IndSysError::CompositionFails { i, j, k });
                }
            }
        }
        Ok(InductiveSystem { signature, index, algebras, transitions })
    }

    /// System with a single index element.
    pub fn single(algebra: FiniteAlgebra) -> InductiveSystem {
        InductiveSystem::new(
            algebra.signature().clone(),
            SupSemilattice::chain(1),
            vec![algebra],
            BTreeMap::new(),
        )
        .expect("one-point systems are always valid")
    }

    pub fn index(&self) -> &SupSemilattice {
        &self.index
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn algebra(&self, i: usize) -> &FiniteAlgebra {
        &self.algebras[i]
    }

    pub fn algebras(&self) -> &[FiniteAlgebra] {
        &self.algebras
    }

    pub fn transition(&self, i: usize, j: usize) -> &[usize] {
        &self.transitions[&(i, j)]
    }

    pub fn transitions(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.transitions
    }

    /// Pull back along a join morphism into this system's index: the system
    /// with fibers `A_{xi(i)}` and transitions `f_{xi(i),xi(j)}`.
    pub fn reindex(&self, xi: &SslMorphism) -> Result<InductiveSystem, SystemError> {
        if xi.target() != &self.index {
            return Err(SystemError::IndexMismatch);
        }
        let new_index = xi.source().clone();
        let algebras: Vec<FiniteAlgebra> =
            (0..new_index.size()).map(|i| self.algebras[xi.apply(i)].clone()).collect();
        let mut transitions = BTreeMap::new();
        for (i, j) in new_index.comparable_pairs() {
            transitions
                .insert((i, j), self.transitions[&(xi.apply(i), xi.apply(j))].clone());
        }
        InductiveSystem::new(self.signature.clone(), new_index, algebras, transitions)
            .map_err(SystemError::InvalidSystem)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("index semilattices do not match")]
    IndexMismatch,
    #[error("systems are not composable")]
    CompositionMismatch,
    #[error("invalid system: {0}")]
    InvalidSystem(IndSysError),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(#[from] SystemMorphismError),
    #[error(transparent)]
    Constant(#[from] ConstantInSignature),
    #[error(transparent)]
    NotResiduated(#[from] ResidualError),
    #[error("transpose shape mismatch: {0}")]
    TransposeShape(String),
    #[error("transpose round trip failed to reproduce the input")]
    TransposeNotInverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemMorphismError {
    #[error("signatures of source and target differ")]
    SignatureMismatch,
    #[error("index map is not a join morphism: {0}")]
    IndexNotJoinMorphism(crate::semilattice::SslMorphismError),
    #[error("expected one component per source index ({expected}), found {found}")]
    WrongComponentCount { expected: usize, found: usize },
    #[error("component {i} is not a homomorphism into the fiber at xi({i}): {reason}")]
    ComponentNotHomomorphism { i: usize, reason: String },
    #[error("naturality fails on the pair ({i},{j})")]
    NaturalityFails { i: usize, j: usize },
}

/// A morphism of inductive systems: a join morphism `xi` of indexes and one
/// homomorphism `u_i : A_i -> B_{xi(i)}` per source index, natural in `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMorphism {
    source: InductiveSystem,
    target: InductiveSystem,
    xi: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl SystemMorphism {
    pub fn new(
        source: InductiveSystem,
        target: InductiveSystem,
        xi: Vec<usize>,
        components: Vec<Vec<usize>>,
    ) -> Result<SystemMorphism, SystemMorphismError> {
        if source.signature() != target.signature() {
            return Err(SystemMorphismError::SignatureMismatch);
        }
        check_ssl_morphism(&xi, source.index(), target.index())
            .map_err(SystemMorphismError::IndexNotJoinMorphism)?;
        if components.len() != source.index().size() {
            return Err(SystemMorphismError::WrongComponentCount {
                expected: source.index().size(),
                found: components.len(),
            });
        }
        for (i, u) in components.iter().enumerate() {
            check_homomorphism(u, source.algebra(i), target.algebra(xi[i])).map_err(|e| {
                SystemMorphismError::ComponentNotHomomorphism { i, reason: e.to_string() }
            })?;
        }
        // u_j o f_{i,j} = g_{xi(i),xi(j)} o u_i
        for (i, j) in source.index().comparable_pairs() {
            let f_ij = source.transition(i, j);
            let g = target.transition(xi[i], xi[j]);
            let via_j: Vec<usize> = f_ij.iter().map(|&x| components[j][x]).collect();
            let via_i: Vec<usize> = components[i].iter().map(|&x| g[x]).collect();
            if via_j != via_i {
                return Err(SystemMorphismError::NaturalityFails { i, j });
            }
        }
        Ok(SystemMorphism { source, target, xi, components })
    }

    pub fn identity(sys: &InductiveSystem) -> SystemMorphism {
        SystemMorphism {
            source: sys.clone(),
            target: sys.clone(),
            xi: (0..sys.index().size()).collect(),
            components: sys.algebras().iter().map(|a| (0..a.carrier()).collect()).collect(),
        }
    }

    pub fn source(&self) -> &InductiveSystem {
        &self.source
    }

    pub fn target(&self) -> &InductiveSystem {
        &self.target
    }

    pub fn index_map(&self) -> &[usize] {
        &self.xi
    }

    pub fn component(&self, i: usize) -> &[usize] {
        &self.components[i]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Grothendieck composition: indexes compose, and the component at `i`
    /// is the target component at `xi1(i)` after the source component.
    pub fn compose(
        m2: &SystemMorphism,
        m1: &SystemMorphism,
    ) -> Result<SystemMorphism, SystemError> {
        if m1.target != m2.source {
            return Err(SystemError::CompositionMismatch);
        }
        let xi: Vec<usize> = m1.xi.iter().map(|&i| m2.xi[i]).collect();
        let components: Vec<Vec<usize>> = m1
            .components
            .iter()
            .enumerate()
            .map(|(i, u1)| u1.iter().map(|&x| m2.components[m1.xi[i]][x]).collect())
            .collect();
        SystemMorphism::new(m1.source.clone(), m2.target.clone(), xi, components)
            .map_err(SystemError::InvalidMorphism)
    }
}

/// The constant system with the empty algebra in every fiber; the left
/// cylinder arm. Only available over constant-free signatures, where the
/// empty algebra is the initial one.
pub fn constant_initial_system(
    s: &SupSemilattice,
    sig: &Signature,
) -> Result<InductiveSystem, ConstantInSignature> {
    let empty = FiniteAlgebra::empty_algebra(sig.clone())?;
    let mut transitions = BTreeMap::new();
    for (i, j) in s.comparable_pairs() {
        transitions.insert((i, j), Vec::new());
    }
    Ok(InductiveSystem::new(sig.clone(), s.clone(), vec![empty; s.size()], transitions)
        .expect("empty fibers with empty transitions always satisfy the laws"))
}

/// The constant system with a one-element algebra in every fiber; the right
/// cylinder arm. Available over any signature.
pub fn constant_final_system(s: &SupSemilattice, sig: &Signature) -> InductiveSystem {
    let one = FiniteAlgebra::final_algebra(sig.clone());
    let mut transitions = BTreeMap::new();
    for (i, j) in s.comparable_pairs() {
        transitions.insert((i, j), vec![0]);
    }
    InductiveSystem::new(sig.clone(), s.clone(), vec![one; s.size()], transitions)
        .expect("one-point fibers with unique transitions always satisfy the laws")
}

/// Morphism part of the initial-system functor: `(xi, empty components)`.
pub fn initial_on_morphism(
    xi: &SslMorphism,
    sig: &Signature,
) -> Result<SystemMorphism, ConstantInSignature> {
    let src = constant_initial_system(xi.source(), sig)?;
    let tgt = constant_initial_system(xi.target(), sig)?;
    Ok(SystemMorphism::new(
        src,
        tgt,
        xi.map().to_vec(),
        vec![Vec::new(); xi.source().size()],
    )
    .expect("naturality is vacuous on empty fibers"))
}

/// Morphism part of the final-system functor: `(xi, unique components)`.
pub fn final_on_morphism(xi: &SslMorphism, sig: &Signature) -> SystemMorphism {
    let src = constant_final_system(xi.source(), sig);
    let tgt = constant_final_system(xi.target(), sig);
    SystemMorphism::new(src, tgt, xi.map().to_vec(), vec![vec![0]; xi.source().size()])
        .expect("maps into one-point fibers are unique and natural")
}

/// The canonical comparison from the initial to the final constant system
/// over the same index: identity on indexes, unique maps on fibers.
pub fn canonical_comparison(
    s: &SupSemilattice,
    sig: &Signature,
) -> Result<SystemMorphism, ConstantInSignature> {
    let src = constant_initial_system(s, sig)?;
    let tgt = constant_final_system(s, sig);
    Ok(SystemMorphism::new(
        src,
        tgt,
        (0..s.size()).collect(),
        vec![Vec::new(); s.size()],
    )
    .expect("empty maps into one-point fibers are natural"))
}

/// Transpose a fiber morphism `u : B_xi -> A` (over the identity of the
/// source index) along a residuated `xi : I -> P` into `phi(u) : B -> A_zeta`
/// with components `phi(u)_p = u_{zeta(p)} o g_{p, xi(zeta(p))}`.
///
/// The round trip through [`inverse_transpose`] is checked before returning.
pub fn residuated_transpose(
    xi: &SslMorphism,
    a_sys: &InductiveSystem,
    b_sys: &InductiveSystem,
    u: &SystemMorphism,
) -> Result<SystemMorphism, SystemError> {
    let zeta = residual_left_adjoint(xi)?;
    let result = transpose_forward(xi, &zeta, a_sys, b_sys, u)?;
    let back = transpose_backward(xi, &zeta, a_sys, b_sys, &result)?;
    if back != *u {
        return Err(SystemError::TransposeNotInverse);
    }
    Ok(result)
}

/// Transpose `v : B -> A_zeta` (over the identity of the target index) back
/// into `psi(v) : B_xi -> A` with components
/// `psi(v)_i = f_{zeta(xi(i)), i} o v_{xi(i)}`.
pub fn inverse_transpose(
    xi: &SslMorphism,
    a_sys: &InductiveSystem,
    b_sys: &InductiveSystem,
    v: &SystemMorphism,
) -> Result<SystemMorphism, SystemError> {
    let zeta = residual_left_adjoint(xi)?;
    let result = transpose_backward(xi, &zeta, a_sys, b_sys, v)?;
    let forward = transpose_forward(xi, &zeta, a_sys, b_sys, &result)?;
    if forward != *v {
        return Err(SystemError::TransposeNotInverse);
    }
    Ok(result)
}

fn transpose_forward(
    xi: &SslMorphism,
    zeta: &SslMorphism,
    a_sys: &InductiveSystem,
    b_sys: &InductiveSystem,
    u: &SystemMorphism,
) -> Result<SystemMorphism, SystemError> {
    if a_sys.index() != xi.source() || b_sys.index() != xi.target() {
        return Err(SystemError::TransposeShape(
            "xi must map the index of the first system to the index of the second".into(),
        ));
    }
    let b_xi = b_sys.reindex(xi)?;
    if u.source() != &b_xi || u.target() != a_sys {
        return Err(SystemError::TransposeShape(
            "morphism must go from the reindexed second system to the first".into(),
        ));
    }
    if u.index_map() != (0..xi.source().size()).collect::<Vec<_>>() {
        return Err(SystemError::TransposeShape("morphism must live over the identity".into()));
    }
    let components: Vec<Vec<usize>> = (0..b_sys.index().size())
        .map(|p| {
            let zp = zeta.apply(p);
            let g = b_sys.transition(p, xi.apply(zp));
            g.iter().map(|&x| u.component(zp)[x]).collect()
        })
        .collect();
    let a_zeta = a_sys.reindex(zeta)?;
    SystemMorphism::new(
        b_sys.clone(),
        a_zeta,
        (0..b_sys.index().size()).collect(),
        components,
    )
    .map_err(SystemError::InvalidMorphism)
}

fn transpose_backward(
    xi: &SslMorphism,
    zeta: &SslMorphism,
    a_sys: &InductiveSystem,
    b_sys: &InductiveSystem,
    v: &SystemMorphism,
) -> Result<SystemMorphism, SystemError> {
    if a_sys.index() != xi.source() || b_sys.index() != xi.target() {
        return Err(SystemError::TransposeShape(
            "xi must map the index of the first system to the index of the second".into(),
        ));
    }
    let a_zeta = a_sys.reindex(zeta)?;
    if v.source() != b_sys || v.target() != &a_zeta {
        return Err(SystemError::TransposeShape(
            "morphism must go from the second system to the reindexed first".into(),
        ));
    }
    if v.index_map() != (0..xi.target().size()).collect::<Vec<_>>() {
        return Err(SystemError::TransposeShape("morphism must live over the identity".into()));
    }
    let components: Vec<Vec<usize>> = (0..xi.source().size())
        .map(|i| {
            let xi_i = xi.apply(i);
            let f = a_sys.transition(zeta.apply(xi_i), i);
            v.component(xi_i).iter().map(|&x| f[x]).collect()
        })
        .collect();
    let b_xi = b_sys.reindex(xi)?;
    SystemMorphism::new(b_xi, a_sys.clone(), (0..xi.source().size()).collect(), components)
        .map_err(SystemError::InvalidMorphism)
}

/// All morphisms between two systems living over a fixed index map, found by
/// exhausting component candidates. Exponential; test-scale carriers only.
pub fn enumerate_morphisms_over(
    source: &InductiveSystem,
    target: &InductiveSystem,
    xi: &[usize],
) -> Vec<SystemMorphism> {
    let mut stacks: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for (i, &xi_i) in xi.iter().enumerate().take(source.index().size()) {
        let choices: Vec<Vec<usize>> = crate::enumerate::all_maps(
            source.algebra(i).carrier(),
            target.algebra(xi_i).carrier(),
        )
        .collect();
        let mut next = Vec::new();
        for prefix in &stacks {
            for choice in &choices {
                let mut ext = prefix.clone();
                ext.push(choice.clone());
                next.push(ext);
            }
        }
        stacks = next;
    }
    stacks
        .into_iter()
        .filter_map(|components| {
            SystemMorphism::new(source.clone(), target.clone(), xi.to_vec(), components).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::semilattice::free_ssl;

    fn sig2() -> Signature {
        Signature::of(&[("s", 2)])
    }

    /// The two-chain worked example: A_0 = {a}, A_1 = {b,c} with s constant
    /// b, f_01(a) = b.
    pub(crate) fn two_chain_system() -> InductiveSystem {
        let a0 = FiniteAlgebra::from_fn(sig2(), 1, |_, _| 0);
        let a1 = FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0);
        let mut transitions = BTreeMap::new();
        transitions.insert((0, 1), vec![0]);
        InductiveSystem::new(sig2(), SupSemilattice::chain(2), vec![a0, a1], transitions).unwrap()
    }

    #[test]
    fn single_index_system_is_valid() {
        let sys = InductiveSystem::single(FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0));
        assert_eq!(sys.index().size(), 1);
        assert_eq!(sys.transition(0, 0), &[0, 1]);
    }

    #[test]
    fn two_chain_example_is_valid() {
        let sys = two_chain_system();
        assert_eq!(sys.transition(0, 1), &[0]);
    }

    #[test]
    fn bad_transition_is_rejected() {
        // f_01(a) = c sends s(a,a) to c but s(c,c) = b
        let a0 = FiniteAlgebra::from_fn(sig2(), 1, |_, _| 0);
        let a1 = FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0);
        let mut transitions = BTreeMap::new();
        transitions.insert((0, 1), vec![1]);
        assert!(matches!(
            InductiveSystem::new(sig2(), SupSemilattice::chain(2), vec![a0, a1], transitions),
            Err(IndSysError::NotAHomomorphism { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn composition_law_is_checked() {
        // 3-chain where f_02 != f_12 o f_01
        let a = FiniteAlgebra::from_fn(sig2(), 2, |_, args| args[0].max(args[1]));
        let mut transitions = BTreeMap::new();
        transitions.insert((0, 1), vec![0, 1]);
        transitions.insert((1, 2), vec![0, 1]);
        transitions.insert((0, 2), vec![1, 1]);
        assert!(matches!(
            InductiveSystem::new(sig2(), SupSemilattice::chain(3), vec![a.clone(), a.clone(), a], transitions),
            Err(IndSysError::CompositionFails { i: 0, j: 1, k: 2 })
        ));
    }

    #[test]
    fn missing_transition_is_rejected() {
        let a = FiniteAlgebra::from_fn(sig2(), 1, |_, _| 0);
        assert!(matches!(
            InductiveSystem::new(sig2(), SupSemilattice::chain(2), vec![a.clone(), a], BTreeMap::new()),
            Err(IndSysError::MissingTransition { i: 0, j: 1 })
        ));
    }

    #[test]
    fn identity_morphism_validates() {
        let sys = two_chain_system();
        let id = SystemMorphism::identity(&sys);
        assert!(SystemMorphism::new(
            sys.clone(),
            sys,
            id.index_map().to_vec(),
            id.components().to_vec()
        )
        .is_ok());
    }

    #[test]
    fn collapse_to_top_is_a_morphism() {
        // xi constant top, u_i = f_{i,top}
        let sys = two_chain_system();
        let m = SystemMorphism::new(
            sys.clone(),
            sys.clone(),
            vec![1, 1],
            vec![sys.transition(0, 1).to_vec(), sys.transition(1, 1).to_vec()],
        );
        assert!(m.is_ok());
    }

    #[test]
    fn naturality_violation_is_caught() {
        // swap on the top fiber commutes with s? s is constant b, so the
        // swap is not a homomorphism; pick instead u_1 = const c with
        // u_0 = f_01, which breaks naturality... const c is not a hom either
        // (s(c,c)=b). Use the max algebra to get a genuine naturality break.
        let a = FiniteAlgebra::from_fn(sig2(), 2, |_, args| args[0].max(args[1]));
        let mut transitions = BTreeMap::new();
        transitions.insert((0, 1), vec![1, 1]);
        let sys = InductiveSystem::new(
            sig2(),
            SupSemilattice::chain(2),
            vec![a.clone(), a.clone()],
            transitions,
        )
        .unwrap();
        // u_0 = id, u_1 = const 0: u_1(f_01(x)) = 0 but f_01(u_0(x)) = 1
        let m = SystemMorphism::new(
            sys.clone(),
            sys.clone(),
            vec![0, 1],
            vec![vec![0, 1], vec![0, 0]],
        );
        assert!(matches!(m, Err(SystemMorphismError::NaturalityFails { i: 0, j: 1 })));
    }

    #[test]
    fn reindex_identity_and_constant() {
        let sys = two_chain_system();
        let id = SslMorphism::identity(sys.index());
        assert_eq!(sys.reindex(&id).unwrap(), sys);
        // constant at the top: both fibers become A_1 with identity maps
        let one = SupSemilattice::chain(1);
        let to_top = SslMorphism::new(one, sys.index().clone(), vec![1]).unwrap();
        let re = sys.reindex(&to_top).unwrap();
        assert_eq!(re.index().size(), 1);
        assert_eq!(re.algebra(0), sys.algebra(1));
    }

    #[test]
    fn reindex_is_functorial() {
        let sys = two_chain_system();
        let one = SupSemilattice::chain(1);
        let xi2 = SslMorphism::identity(sys.index());
        let xi1 = SslMorphism::new(one, sys.index().clone(), vec![1]).unwrap();
        let composed = SslMorphism::compose(&xi2, &xi1).unwrap();
        assert_eq!(
            sys.reindex(&composed).unwrap(),
            sys.reindex(&xi2).unwrap().reindex(&xi1).unwrap()
        );
    }

    #[test]
    fn composition_unital_and_associative() {
        let sys = two_chain_system();
        let id = SystemMorphism::identity(&sys);
        let collapse = SystemMorphism::new(
            sys.clone(),
            sys.clone(),
            vec![1, 1],
            vec![sys.transition(0, 1).to_vec(), sys.transition(1, 1).to_vec()],
        )
        .unwrap();
        assert_eq!(SystemMorphism::compose(&collapse, &id).unwrap(), collapse);
        assert_eq!(SystemMorphism::compose(&id, &collapse).unwrap(), collapse);
        let twice = SystemMorphism::compose(&collapse, &collapse).unwrap();
        let left = SystemMorphism::compose(&twice, &collapse).unwrap();
        let right = SystemMorphism::compose(&collapse, &twice).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn cylinder_arms_project_back() {
        let sig = sig2();
        for s in [SupSemilattice::chain(2), free_ssl(2).0, SupSemilattice::chain(0)] {
            let l = constant_initial_system(&s, &sig).unwrap();
            assert_eq!(l.index(), &s);
            let k = constant_final_system(&s, &sig);
            assert_eq!(k.index(), &s);
        }
    }

    #[test]
    fn initial_system_needs_constant_free_signature() {
        let bad = Signature::of(&[("c", 0)]);
        assert!(constant_initial_system(&SupSemilattice::chain(2), &bad).is_err());
        // the final system tolerates constants
        let k = constant_final_system(&SupSemilattice::chain(2), &bad);
        assert_eq!(k.algebra(0).carrier(), 1);
    }

    #[test]
    fn unique_morphism_from_initial_and_to_final() {
        let sig = sig2();
        let sys = two_chain_system();
        let l = constant_initial_system(sys.index(), &sig).unwrap();
        let k = constant_final_system(sys.index(), &sig);
        for xi in crate::enumerate::all_maps(2, 2) {
            if check_ssl_morphism(&xi, sys.index(), sys.index()).is_err() {
                continue;
            }
            assert_eq!(enumerate_morphisms_over(&l, &sys, &xi).len(), 1);
            assert_eq!(enumerate_morphisms_over(&sys, &k, &xi).len(), 1);
        }
    }

    #[test]
    fn comparison_is_natural() {
        let sig = sig2();
        let one = SupSemilattice::chain(1);
        let two = SupSemilattice::chain(2);
        let xi = SslMorphism::new(one.clone(), two.clone(), vec![1]).unwrap();
        let gamma_one = canonical_comparison(&one, &sig).unwrap();
        let gamma_two = canonical_comparison(&two, &sig).unwrap();
        let left = SystemMorphism::compose(&gamma_two, &initial_on_morphism(&xi, &sig).unwrap())
            .unwrap();
        let right = SystemMorphism::compose(&final_on_morphism(&xi, &sig), &gamma_one).unwrap();
        assert_eq!(left, right);
    }

    fn max_algebra() -> FiniteAlgebra {
        FiniteAlgebra::from_fn(sig2(), 2, |_, args| args[0].max(args[1]))
    }

    /// All-identity system with the max algebra in every fiber.
    pub(crate) fn constant_max_system(s: &SupSemilattice) -> InductiveSystem {
        let mut transitions = BTreeMap::new();
        for (i, j) in s.comparable_pairs() {
            transitions.insert((i, j), vec![0, 1]);
        }
        InductiveSystem::new(sig2(), s.clone(), vec![max_algebra(); s.size()], transitions).unwrap()
    }

    #[test]
    fn transpose_along_identity_is_identity() {
        let two = SupSemilattice::chain(2);
        let a_sys = constant_max_system(&two);
        let b_sys = constant_max_system(&two);
        let xi = SslMorphism::identity(&two);
        let u = SystemMorphism::identity(&a_sys);
        let v = residuated_transpose(&xi, &a_sys, &b_sys, &u).unwrap();
        assert_eq!(v.components(), u.components());
        let back = inverse_transpose(&xi, &a_sys, &b_sys, &v).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn transpose_bijects_hom_sets() {
        // xi : 1-chain -> 2-chain picking the top; hom sets on both sides
        // must correspond one-to-one through the transpose
        let one = SupSemilattice::chain(1);
        let two = SupSemilattice::chain(2);
        let xi = SslMorphism::new(one.clone(), two.clone(), vec![1]).unwrap();
        let a_sys = constant_max_system(&one);
        let b_sys = constant_max_system(&two);
        let b_xi = b_sys.reindex(&xi).unwrap();
        let zeta = residual_left_adjoint(&xi).unwrap();
        let a_zeta = a_sys.reindex(&zeta).unwrap();
        let upper = enumerate_morphisms_over(&b_xi, &a_sys, &[0]);
        let lower = enumerate_morphisms_over(&b_sys, &a_zeta, &[0, 1]);
        assert_eq!(upper.len(), lower.len());
        for u in &upper {
            let v = residuated_transpose(&xi, &a_sys, &b_sys, u).unwrap();
            assert!(lower.contains(&v));
            assert_eq!(inverse_transpose(&xi, &a_sys, &b_sys, &v).unwrap(), *u);
        }
    }
}
