//! Finite sup-semilattices presented by their join tables, join-preserving
//! maps, residuation, the free sup-semilattice, and the reflection of a
//! constant-free algebra into sup-semilattices.
//!
//! The order is derived: `x <= y` iff `join(x, y) = y`. Idempotence,
//! commutativity and associativity are checked exhaustively at construction,
//! which is exactly what makes the derived relation a partial order with all
//! binary joins.

use thiserror::Error;

use crate::algebra::{
    check_homomorphism, generated_congruence, quotient_algebra, ConstantInSignature,
    FiniteAlgebra, Homomorphism, Signature,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SslViolation {
    #[error("join table has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("join({x},{y}) = {value} is outside the carrier")]
    OutOfRange { x: usize, y: usize, value: usize },
    #[error("idempotence fails at {x}")]
    Idempotence { x: usize },
    #[error("commutativity fails at ({x},{y})")]
    Commutativity { x: usize, y: usize },
    #[error("associativity fails at ({x},{y},{z})")]
    Associativity { x: usize, y: usize, z: usize },
}

/// First law a candidate join table violates, if any.
pub fn validate_ssl(n: usize, join: &[usize]) -> Result<(), SslViolation> {
    let expected = n.checked_mul(n).unwrap_or(usize::MAX);
    if join.len() != expected {
        return Err(SslViolation::WrongLength { expected, found: join.len() });
    }
    let j = |x: usize, y: usize| join[x * n + y];
    for x in 0..n {
        for y in 0..n {
            if j(x, y) >= n {
                return Err(SslViolation::OutOfRange { x, y, value: j(x, y) });
            }
        }
    }
    for x in 0..n {
        if j(x, x) != x {
            return Err(SslViolation::Idempotence { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if j(x, y) != j(y, x) {
                return Err(SslViolation::Commutativity { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if j(x, j(y, z)) != j(j(x, y), z) {
                    return Err(SslViolation::Associativity { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// A finite sup-semilattice. Always law-checked, so the derived `leq` is a
/// partial order in which `join` computes least upper bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupSemilattice {
    n: usize,
    join: Vec<usize>,
}

impl SupSemilattice {
    pub fn new(n: usize, join: Vec<usize>) -> Result<SupSemilattice, SslViolation> {
        validate_ssl(n, &join)?;
        Ok(SupSemilattice { n, join })
    }

    /// The chain `0 < 1 < ... < n-1` (empty when `n = 0`).
    pub fn chain(n: usize) -> SupSemilattice {
        let join = (0..n).flat_map(|x| (0..n).map(move |y| x.max(y))).collect();
        SupSemilattice { n, join }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    /// Join of a nonempty sequence.
    pub fn join_all(&self, items: &[usize]) -> usize {
        let (&first, rest) = items.split_first().expect("join_all needs a nonempty sequence");
        rest.iter().fold(first, |acc, &x| self.join(acc, x))
    }

    /// Pairs `(i, j)` with `i <= j`, in lexicographic order.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.leq(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SslMorphismError {
    #[error("map has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("map sends {element} to {value}, outside the target")]
    OutOfRange { element: usize, value: usize },
    #[error("join preservation fails at ({x},{y})")]
    NotJoinPreserving { x: usize, y: usize },
}

/// Does `map` preserve all binary joins from `s` to `t`?
pub fn check_ssl_morphism(
    map: &[usize],
    s: &SupSemilattice,
    t: &SupSemilattice,
) -> Result<(), SslMorphismError> {
    if map.len() != s.size() {
        return Err(SslMorphismError::WrongLength { expected: s.size(), found: map.len() });
    }
    if let Some((element, &value)) = map.iter().enumerate().find(|&(_, &v)| v >= t.size()) {
        return Err(SslMorphismError::OutOfRange { element, value });
    }
    for x in 0..s.size() {
        for y in 0..s.size() {
            if map[s.join(x, y)] != t.join(map[x], map[y]) {
                return Err(SslMorphismError::NotJoinPreserving { x, y });
            }
        }
    }
    Ok(())
}

/// A validated join-preserving map with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SslMorphism {
    source: SupSemilattice,
    target: SupSemilattice,
    map: Vec<usize>,
}

impl SslMorphism {
    pub fn new(
        source: SupSemilattice,
        target: SupSemilattice,
        map: Vec<usize>,
    ) -> Result<SslMorphism, SslMorphismError> {
        check_ssl_morphism(&map, &source, &target)?;
        Ok(SslMorphism { source, target, map })
    }

    pub fn identity(s: &SupSemilattice) -> SslMorphism {
        SslMorphism { source: s.clone(), target: s.clone(), map: (0..s.size()).collect() }
    }

    pub fn compose(g: &SslMorphism, f: &SslMorphism) -> Result<SslMorphism, SslMorphismError> {
        if f.target != g.source {
            return Err(SslMorphismError::WrongLength {
                expected: g.source.size(),
                found: f.target.size(),
            });
        }
        let map = f.map.iter().map(|&x| g.map[x]).collect();
        SslMorphism::new(f.source.clone(), g.target.clone(), map)
    }

    pub fn source(&self) -> &SupSemilattice {
        &self.source
    }

    pub fn target(&self) -> &SupSemilattice {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidualError {
    #[error("no left adjoint: {{ i | {p} <= xi(i) }} has no least element")]
    NotResiduated { p: usize },
}

/// Left adjoint of a join morphism when it exists: `zeta(p)` is the least
/// `i` with `p <= xi(i)`. Unique when defined, and automatically a join
/// morphism satisfying `zeta(xi(i)) <= i` and `p <= xi(zeta(p))`.
pub fn residual_left_adjoint(xi: &SslMorphism) -> Result<SslMorphism, ResidualError> {
    let (s, t) = (xi.source(), xi.target());
    let mut map = Vec::with_capacity(t.size());
    for p in 0..t.size() {
        let candidates: Vec<usize> =
            (0..s.size()).filter(|&i| t.leq(p, xi.apply(i))).collect();
        let least = candidates
            .iter()
            .copied()
            .find(|&i| candidates.iter().all(|&j| s.leq(i, j)))
            .ok_or(ResidualError::NotResiduated { p })?;
        map.push(least);
    }
    // the adjunction inequalities hold by construction; re-check anyway
    for i in 0..s.size() {
        if !s.leq(map[xi.apply(i)], i) {
            return Err(ResidualError::NotResiduated { p: xi.apply(i) });
        }
    }
    for (p, &zp) in map.iter().enumerate() {
        if !t.leq(p, xi.apply(zp)) {
            return Err(ResidualError::NotResiduated { p });
        }
    }
    Ok(SslMorphism::new(t.clone(), s.clone(), map)
        .expect("a residual is always join-preserving"))
}

/// Free sup-semilattice on `m` generators: nonempty subsets of the generator
/// set in bitmask order (element `e` is the mask `e + 1`), join = union.
/// Returns the semilattice and the embedding `g -> {g}`.
pub fn free_ssl(m: usize) -> (SupSemilattice, Vec<usize>) {
    assert!(m < usize::BITS as usize, "free semilattice on {m} generators does not fit");
    let n = (1usize << m) - 1;
    let join = (0..n)
        .flat_map(|x| (0..n).map(move |y| ((x + 1) | (y + 1)) - 1))
        .collect();
    let ssl = SupSemilattice::new(n, join).expect("union of nonempty subsets is a join");
    let embedding = (0..m).map(|g| (1usize << g) - 1).collect();
    (ssl, embedding)
}

/// All sup-semilattice structures on the carrier `0..n`, by exhausting the
/// tables with an idempotent diagonal and filtering through the validator.
/// Order is lexicographic in the full table.
pub fn enumerate_ssls(n: usize) -> Vec<SupSemilattice> {
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y).collect();
    let mut out = Vec::new();
    for choice in crate::enumerate::tuples(n, free.len()) {
        let mut join: Vec<usize> = (0..n).flat_map(|x| std::iter::repeat_n(x, n)).collect();
        for (&(x, y), &v) in free.iter().zip(choice.iter()) {
            join[x * n + y] = v;
        }
        if let Ok(s) = SupSemilattice::new(n, join) {
            out.push(s);
        }
    }
    out
}

/// Interpret every symbol of a constant-free signature as the iterated join:
/// the algebra `W(s)` on the carrier of `s`.
pub fn join_algebra(
    s: &SupSemilattice,
    sig: &Signature,
) -> Result<FiniteAlgebra, ConstantInSignature> {
    sig.require_constant_free()?;
    Ok(FiniteAlgebra::from_fn(sig.clone(), s.size(), |_, args| s.join_all(args)))
}

/// The single-binary-symbol signature used to run congruence generation on a
/// semilattice viewed as an algebra.
fn join_signature() -> Signature {
    Signature::of(&[("join", 2)])
}

/// A semilattice congruence is exactly an algebra congruence of the join.
fn quotient_ssl(
    s: &SupSemilattice,
    pairs: &[(usize, usize)],
) -> (SupSemilattice, Vec<usize>) {
    let as_algebra = join_algebra(s, &join_signature()).expect("join signature has no constants");
    let phi = generated_congruence(&as_algebra, pairs);
    let (q, pr) = quotient_algebra(&as_algebra, &phi).expect("generated congruences are congruences");
    let ssl = SupSemilattice::new(q.carrier(), q.table(0).to_vec())
        .expect("a quotient of a sup-semilattice is a sup-semilattice");
    (ssl, pr.map().to_vec())
}

/// The reflection of a constant-free algebra into sup-semilattices, with its
/// unit: a homomorphism from `a` to the join algebra over the reflection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReflection {
    pub semilattice: SupSemilattice,
    pub unit: Homomorphism,
}

/// Reflect `a` into sup-semilattices: quotient the free sup-semilattice on
/// the carrier by the least congruence identifying `{F_σ(t)}` with the union
/// of the `{t_j}`, for every symbol and tuple.
pub fn ssl_reflection_of_algebra(
    a: &FiniteAlgebra,
) -> Result<AlgebraReflection, ConstantInSignature> {
    a.signature().require_constant_free()?;
    let (free, embed) = free_ssl(a.carrier());
    let mut pairs = Vec::new();
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for args in crate::enumerate::tuples(a.carrier(), arity) {
            let lhs = embed[a.op(sym, &args)];
            let rhs_items: Vec<usize> = args.iter().map(|&x| embed[x]).collect();
            let rhs = free.join_all(&rhs_items);
            pairs.push((lhs, rhs));
        }
    }
    let (semilattice, pr) = quotient_ssl(&free, &pairs);
    let unit_map: Vec<usize> = (0..a.carrier()).map(|x| pr[embed[x]]).collect();
    let target = join_algebra(&semilattice, a.signature())?;
    let unit = Homomorphism::new(a.clone(), target, unit_map)
        .expect("the reflection unit is a homomorphism");
    Ok(AlgebraReflection { semilattice, unit })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectionError {
    #[error("signature has a constant: {0}")]
    Constant(#[from] ConstantInSignature),
    #[error("candidate map is not a homomorphism into the join algebra: {0}")]
    NotAHomomorphism(crate::algebra::HomError),
}

/// Factor a homomorphism `f: a -> W(i)` through the reflection of `a`: the
/// unique join morphism `f♭` from the reflection to `i` with `f♭ ∘ unit = f`.
pub fn factor_through_reflection(
    a: &FiniteAlgebra,
    i: &SupSemilattice,
    f: &[usize],
) -> Result<SslMorphism, ReflectionError> {
    let w = join_algebra(i, a.signature())?;
    check_homomorphism(f, a, &w).map_err(ReflectionError::NotAHomomorphism)?;
    let reflection = ssl_reflection_of_algebra(a)?;
    let m = &reflection.semilattice;
    // lift f to the free semilattice (send a subset to the join of its
    // images), then read it off blockwise through the unit
    let mut map = vec![usize::MAX; m.size()];
    for mask in 1..=(if a.carrier() == 0 { 0 } else { (1usize << a.carrier()) - 1 }) {
        let members: Vec<usize> = (0..a.carrier()).filter(|&x| mask & (1 << x) != 0).collect();
        let value = i.join_all(&members.iter().map(|&x| f[x]).collect::<Vec<_>>());
        let block = block_of_free_element(&reflection, a, mask);
        if map[block] == usize::MAX {
            map[block] = value;
        } else {
            debug_assert_eq!(map[block], value, "factorization must be blockwise constant");
        }
    }
    Ok(SslMorphism::new(m.clone(), i.clone(), map)
        .expect("blockwise factorization preserves joins"))
}

/// Where a free-semilattice element (nonempty subset given as a bitmask)
/// lands in the reflection: the join of the unit images of its members.
fn block_of_free_element(reflection: &AlgebraReflection, a: &FiniteAlgebra, mask: usize) -> usize {
    let items: Vec<usize> = (0..a.carrier())
        .filter(|&x| mask & (1 << x) != 0)
        .map(|x| reflection.unit.apply(x))
        .collect();
    reflection.semilattice.join_all(&items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_maps;

    #[test]
    fn chain_is_valid() {
        let two = SupSemilattice::chain(2);
        assert!(validate_ssl(2, two.join_table()).is_ok());
        assert!(two.leq(0, 1));
        assert!(!two.leq(1, 0));
    }

    #[test]
    fn validate_reports_first_violation() {
        // the left-zero table has join(0,1) = 0 but join(1,0) = 1
        assert_eq!(
            validate_ssl(2, &[0, 0, 1, 1]),
            Err(SslViolation::Commutativity { x: 0, y: 1 })
        );
        assert_eq!(validate_ssl(2, &[1, 1, 1, 1]), Err(SslViolation::Idempotence { x: 0 }));
        assert_eq!(validate_ssl(1, &[0, 0]), Err(SslViolation::WrongLength { expected: 1, found: 2 }));
    }

    #[test]
    fn morphism_checks() {
        let two = SupSemilattice::chain(2);
        assert!(check_ssl_morphism(&[0, 1], &two, &two).is_ok());
        // constant to top
        assert!(check_ssl_morphism(&[1, 1], &two, &two).is_ok());
        // swap is not join-preserving: xi(0 v 1) = 0 but xi(0) v xi(1) = 1
        assert_eq!(
            check_ssl_morphism(&[1, 0], &two, &two),
            Err(SslMorphismError::NotJoinPreserving { x: 0, y: 1 })
        );
    }

    #[test]
    fn free_semilattice_shapes() {
        assert_eq!(free_ssl(0).0.size(), 0);
        assert_eq!(free_ssl(1).0.size(), 1);
        let (f2, embed) = free_ssl(2);
        assert_eq!(f2.size(), 3);
        // {0} v {1} = {0,1}
        assert_eq!(f2.join(embed[0], embed[1]), 2);
        assert_eq!(free_ssl(3).0.size(), 7);
    }

    #[test]
    fn free_semilattice_universal_property() {
        // every map from generators extends uniquely to a join morphism
        for m in 0..=3 {
            let (free, embed) = free_ssl(m);
            for target in [SupSemilattice::chain(1), SupSemilattice::chain(3), free_ssl(2).0] {
                for g in all_maps(m, target.size()) {
                    let extensions: Vec<Vec<usize>> = all_maps(free.size(), target.size())
                        .filter(|cand| {
                            check_ssl_morphism(cand, &free, &target).is_ok()
                                && (0..m).all(|j| cand[embed[j]] == g[j])
                        })
                        .collect();
                    assert_eq!(extensions.len(), 1, "m={m}, g={g:?}");
                }
            }
        }
    }

    #[test]
    fn residual_of_identity() {
        let two = SupSemilattice::chain(2);
        let id = SslMorphism::identity(&two);
        assert_eq!(residual_left_adjoint(&id).unwrap().map(), &[0, 1]);
    }

    #[test]
    fn residual_of_point_inclusions() {
        let one = SupSemilattice::chain(1);
        let two = SupSemilattice::chain(2);
        // * -> 1 has the constant residual
        let top = SslMorphism::new(one.clone(), two.clone(), vec![1]).unwrap();
        assert_eq!(residual_left_adjoint(&top).unwrap().map(), &[0, 0]);
        // * -> 0 is not residuated: 1 <= xi(zeta(1)) = 0 fails
        let bot = SslMorphism::new(one, two, vec![0]).unwrap();
        assert_eq!(
            residual_left_adjoint(&bot),
            Err(ResidualError::NotResiduated { p: 1 })
        );
    }

    #[test]
    fn residual_laws_hold_exhaustively() {
        // over all join morphisms between semilattices of size <= 3:
        // zeta preserves joins, and zeta.xi.zeta = zeta, xi.zeta.xi = xi
        let ssls = [SupSemilattice::chain(1), SupSemilattice::chain(2), SupSemilattice::chain(3), free_ssl(2).0];
        for s in &ssls {
            for t in &ssls {
                for map in all_maps(s.size(), t.size()) {
                    let Ok(xi) = SslMorphism::new(s.clone(), t.clone(), map) else {
                        continue;
                    };
                    let Ok(zeta) = residual_left_adjoint(&xi) else { continue };
                    for p in 0..t.size() {
                        for q in 0..t.size() {
                            assert_eq!(
                                zeta.apply(t.join(p, q)),
                                s.join(zeta.apply(p), zeta.apply(q))
                            );
                        }
                    }
                    for p in 0..t.size() {
                        assert_eq!(zeta.apply(xi.apply(zeta.apply(p))), zeta.apply(p));
                    }
                    for i in 0..s.size() {
                        assert_eq!(xi.apply(zeta.apply(xi.apply(i))), xi.apply(i));
                    }
                }
            }
        }
    }

    #[test]
    fn join_algebra_folds_join() {
        let two = SupSemilattice::chain(2);
        let sig = Signature::of(&[("s", 2)]);
        let w = join_algebra(&two, &sig).unwrap();
        assert_eq!(w.table(0), two.join_table());
        let sig3 = Signature::of(&[("t", 3)]);
        let w3 = join_algebra(&two, &sig3).unwrap();
        assert_eq!(w3.op(0, &[0, 1, 0]), 1);
        let one = join_algebra(&SupSemilattice::chain(1), &sig).unwrap();
        assert_eq!(one.carrier(), 1);
        assert!(join_algebra(&two, &Signature::of(&[("c", 0)])).is_err());
    }

    #[test]
    fn join_algebra_of_morphism_is_homomorphism() {
        let sig = Signature::of(&[("s", 2), ("t", 3)]);
        let ssls = [SupSemilattice::chain(2), SupSemilattice::chain(3), free_ssl(2).0];
        for s in &ssls {
            for t in &ssls {
                for map in all_maps(s.size(), t.size()) {
                    if check_ssl_morphism(&map, s, t).is_ok() {
                        let ws = join_algebra(s, &sig).unwrap();
                        let wt = join_algebra(t, &sig).unwrap();
                        assert!(check_homomorphism(&map, &ws, &wt).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_of_singleton() {
        let a = FiniteAlgebra::from_fn(Signature::of(&[("s", 2)]), 1, |_, _| 0);
        let r = ssl_reflection_of_algebra(&a).unwrap();
        assert_eq!(r.semilattice.size(), 1);
    }

    #[test]
    fn reflection_of_constant_operation_collapses() {
        // s constantly 0 forces {0} ~ {1} ~ {0,1}
        let a = FiniteAlgebra::from_fn(Signature::of(&[("s", 2)]), 2, |_, _| 0);
        let r = ssl_reflection_of_algebra(&a).unwrap();
        assert_eq!(r.semilattice.size(), 1);
        assert_eq!(r.unit.map(), &[0, 0]);
    }

    #[test]
    fn reflection_of_join_is_iso() {
        // s = max keeps {0} apart and identifies {0,1} with {1}
        let sig = Signature::of(&[("s", 2)]);
        let a = FiniteAlgebra::from_fn(sig, 2, |_, args| args[0].max(args[1]));
        let r = ssl_reflection_of_algebra(&a).unwrap();
        assert_eq!(r.semilattice, SupSemilattice::chain(2));
        assert_eq!(r.unit.map(), &[0, 1]);
    }

    #[test]
    fn reflection_of_empty_algebra() {
        let a = FiniteAlgebra::empty_algebra(Signature::of(&[("s", 2)])).unwrap();
        let r = ssl_reflection_of_algebra(&a).unwrap();
        assert_eq!(r.semilattice.size(), 0);
    }

    #[test]
    fn factorization_through_reflection() {
        let sig = Signature::of(&[("s", 2)]);
        // a = ({0,1}, max), f = identity map into the 2-chain
        let a = FiniteAlgebra::from_fn(sig.clone(), 2, |_, args| args[0].max(args[1]));
        let two = SupSemilattice::chain(2);
        let fb = factor_through_reflection(&a, &two, &[0, 1]).unwrap();
        assert_eq!(fb.map(), &[0, 1]);
        // a = ({0,1}, s const 0), f constant 0
        let a = FiniteAlgebra::from_fn(sig.clone(), 2, |_, _| 0);
        let fb = factor_through_reflection(&a, &two, &[0, 0]).unwrap();
        assert_eq!(fb.map(), &[0]);
        // the identity map out of the constant algebra is not a homomorphism
        assert!(matches!(
            factor_through_reflection(&a, &two, &[0, 1]),
            Err(ReflectionError::NotAHomomorphism(_))
        ));
    }

    #[test]
    fn reflection_universal_property_exhaustive() {
        // for every algebra on <= 2 elements with one binary symbol and every
        // hom into a join algebra over a small semilattice, the factorization
        // exists, commutes, and is the unique such join morphism
        let sig = Signature::of(&[("s", 2)]);
        let targets = [SupSemilattice::chain(1), SupSemilattice::chain(2), SupSemilattice::chain(3), free_ssl(2).0];
        for table in crate::enumerate::tuples(2, 4) {
            let a = FiniteAlgebra::new(sig.clone(), 2, vec![table]).unwrap();
            let r = ssl_reflection_of_algebra(&a).unwrap();
            for i in &targets {
                let w = join_algebra(i, &sig).unwrap();
                for f in all_maps(2, i.size()) {
                    if check_homomorphism(&f, &a, &w).is_err() {
                        continue;
                    }
                    let fb = factor_through_reflection(&a, i, &f).unwrap();
                    for (x, &fx) in f.iter().enumerate() {
                        assert_eq!(fb.apply(r.unit.apply(x)), fx);
                    }
                    let matching = all_maps(r.semilattice.size(), i.size())
                        .filter(|cand| {
                            check_ssl_morphism(cand, &r.semilattice, i).is_ok()
                                && (0..2).all(|x| cand[r.unit.apply(x)] == f[x])
                        })
                        .count();
                    assert_eq!(matching, 1);
                }
            }
        }
    }
}
