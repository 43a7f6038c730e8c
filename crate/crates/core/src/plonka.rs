//! Płonka operators over constant-free signatures: a left normal band
//! operation on the carrier of an algebra that additionally satisfies
//!
//! - D4: `d(F_σ(xs), y) = F_σ((d(x_j, y))_j)`
//! - D5: `d(y, F_σ(xs)) = d(y, D_n(xs))`
//!
//! together with the laws derived from D1-D5, the embedding into algebra/band
//! tensor triples, and brute-force enumeration of all operators of a given
//! algebra.

use std::fmt;

use thiserror::Error;

use crate::algebra::{
    check_homomorphism, power_algebra, ConstantInSignature, FiniteAlgebra, HomError,
};
use crate::band::{check_band_morphism, BandMorphismError, LeftNormalBand, LnbViolation};
use crate::enumerate::tuples;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlonkaViolation {
    #[error(transparent)]
    Constant(#[from] ConstantInSignature),
    #[error(transparent)]
    Band(#[from] LnbViolation),
    #[error("D4 at `{symbol}` {xs:?}, y={y}")]
    D4 { symbol: String, xs: Vec<usize>, y: usize },
    #[error("D5 at `{symbol}` {xs:?}, y={y}")]
    D5 { symbol: String, xs: Vec<usize>, y: usize },
}

/// First of D1-D5 a candidate operator table violates. D5 compares against
/// the iterate of the (already D1-D3-validated) band.
pub fn validate_plonka(a: &FiniteAlgebra, d: &[usize]) -> Result<(), PlonkaViolation> {
    a.signature().require_constant_free()?;
    let band = LeftNormalBand::new(a.carrier(), d.to_vec())?;
    check_d4_d5(a, &band)
}

fn check_d4_d5(a: &FiniteAlgebra, band: &LeftNormalBand) -> Result<(), PlonkaViolation> {
    let n = a.carrier();
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for xs in tuples(n, arity) {
            for y in 0..n {
                let mapped: Vec<usize> = xs.iter().map(|&x| band.d(x, y)).collect();
                if band.d(a.op(sym, &xs), y) != a.op(sym, &mapped) {
                    return Err(PlonkaViolation::D4 {
                        symbol: a.signature().name(sym).to_string(),
                        xs,
                        y,
                    });
                }
            }
        }
    }
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for xs in tuples(n, arity) {
            let dn = band.iterate(&xs).expect("iterates of a left normal band agree");
            for y in 0..n {
                if band.d(y, a.op(sym, &xs)) != band.d(y, dn) {
                    return Err(PlonkaViolation::D5 {
                        symbol: a.signature().name(sym).to_string(),
                        xs,
                        y,
                    });
                }
            }
        }
    }
    Ok(())
}

/// A constant-free algebra together with a Płonka operator for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlonkaAlgebra {
    algebra: FiniteAlgebra,
    band: LeftNormalBand,
}

impl PlonkaAlgebra {
    pub fn new(algebra: FiniteAlgebra, d: Vec<usize>) -> Result<PlonkaAlgebra, PlonkaViolation> {
        validate_plonka(&algebra, &d)?;
        let band = LeftNormalBand::new(algebra.carrier(), d).expect("validated above");
        Ok(PlonkaAlgebra { algebra, band })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn band(&self) -> &LeftNormalBand {
        &self.band
    }

    pub fn carrier(&self) -> usize {
        self.algebra.carrier()
    }

    pub fn d(&self, x: usize, y: usize) -> usize {
        self.band.d(x, y)
    }
}

/// One failed instance of a law that should follow from D1-D5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedLawViolation {
    pub law: &'static str,
    pub symbol: String,
    pub witness: String,
}

impl fmt::Display for DerivedLawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at `{}` {}", self.law, self.symbol, self.witness)
    }
}

/// Violations of the derived-law suite; empty on every valid Płonka algebra,
/// since each law is a consequence of D1-D5.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivedLawReport {
    pub violations: Vec<DerivedLawViolation>,
}

impl DerivedLawReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively check the laws derived from D1-D5:
///
/// 1. `d(F_σ(xs), x_k) = F_σ(xs)`
/// 2. `d(F_σ(xs), y) = F_σ(x_0, ..., d(x_k, y), ..., x_{n-1})`
/// 3. `d(F_σ(xs), F_σ(ys)) = F_σ((d(x_j, y_j))_j)` (the operator is a
///    homomorphism from the square)
/// 4. `d(F_σ(xs), D_m(xs o phi)) = F_σ(xs)` for every `phi: m -> n` with `m`
///    bounded by the largest arity plus one
/// 5. `d(F_σ(xs), F_σ((D_n(xs))_j)) = F_σ(xs)`
pub fn verify_derived_laws(p: &PlonkaAlgebra) -> DerivedLawReport {
    let a = p.algebra();
    let band = p.band();
    let n = a.carrier();
    let mut violations = Vec::new();
    let mut record = |law: &'static str, sym: usize, witness: String| {
        violations.push(DerivedLawViolation {
            law,
            symbol: a.signature().name(sym).to_string(),
            witness,
        });
    };
    let phi_bound = a.signature().max_arity() + 1;
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for xs in tuples(n, arity) {
            let fx = a.op(sym, &xs);
            for (k, &xk) in xs.iter().enumerate() {
                if band.d(fx, xk) != fx {
                    record("absorption of own argument", sym, format!("xs={xs:?}, k={k}"));
                }
            }
            for y in 0..n {
                for k in 0..arity {
                    let mut patched = xs.clone();
                    patched[k] = band.d(xs[k], y);
                    if band.d(fx, y) != a.op(sym, &patched) {
                        record(
                            "single-slot distribution",
                            sym,
                            format!("xs={xs:?}, y={y}, k={k}"),
                        );
                    }
                }
            }
            for ys in tuples(n, arity) {
                let pointwise: Vec<usize> =
                    xs.iter().zip(&ys).map(|(&x, &y)| band.d(x, y)).collect();
                if band.d(fx, a.op(sym, &ys)) != a.op(sym, &pointwise) {
                    record("operator is a homomorphism", sym, format!("xs={xs:?}, ys={ys:?}"));
                }
            }
            for m in 1..=phi_bound {
                for phi in crate::enumerate::all_maps(m, arity) {
                    let sub: Vec<usize> = phi.iter().map(|&k| xs[k]).collect();
                    let dm = band.iterate(&sub).expect("iterates agree");
                    if band.d(fx, dm) != fx {
                        record(
                            "absorption of reindexed iterates",
                            sym,
                            format!("xs={xs:?}, phi={phi:?}"),
                        );
                    }
                }
            }
            if arity >= 1 {
                let dn = band.iterate(&xs).expect("iterates agree");
                let constant = vec![dn; arity];
                if band.d(fx, a.op(sym, &constant)) != fx {
                    record("absorption of the diagonal", sym, format!("xs={xs:?}"));
                }
            }
        }
    }
    DerivedLawReport { violations }
}

/// An algebra/band pair whose operator is a homomorphism from the square of
/// the algebra; the image of a Płonka algebra under the tensor embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorObject {
    algebra: FiniteAlgebra,
    band: LeftNormalBand,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error(transparent)]
    Constant(#[from] ConstantInSignature),
    #[error(transparent)]
    Band(#[from] LnbViolation),
    #[error("operator is not a homomorphism from the square: {0}")]
    OperatorNotHomomorphism(HomError),
}

impl TensorObject {
    pub fn new(algebra: FiniteAlgebra, band: LeftNormalBand) -> Result<TensorObject, TensorError> {
        algebra.signature().require_constant_free()?;
        assert_eq!(algebra.carrier(), band.size(), "carrier mismatch");
        let square = power_algebra(&algebra, 2);
        check_homomorphism(band.table(), &square, &algebra)
            .map_err(TensorError::OperatorNotHomomorphism)?;
        Ok(TensorObject { algebra, band })
    }

    /// Forget the operator (the projection to algebras).
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    /// Forget the algebra structure (the projection to bands).
    pub fn band(&self) -> &LeftNormalBand {
        &self.band
    }
}

/// Embed a Płonka algebra as a tensor triple; the operator-is-homomorphism
/// invariant is a derived law, re-checked by the constructor.
pub fn tensor_embed(p: &PlonkaAlgebra) -> TensorObject {
    TensorObject::new(p.algebra().clone(), p.band().clone())
        .expect("a Płonka operator is a homomorphism from the square")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("carrier {carrier} exceeds the enumeration bound {bound}: {carrier}^{} candidate tables", .carrier * .carrier)]
pub struct CarrierTooLarge {
    pub carrier: usize,
    pub bound: usize,
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 3;

/// All Płonka operator tables for `a`, in lexicographic table order.
///
/// Only tables with an idempotent diagonal are materialized (D1 is necessary);
/// each survivor then passes the full D1-D5 validation. Refuses carriers
/// above `bound` since the candidate space grows as `n^(n^2)`.
pub fn enumerate_plonka_operators(
    a: &FiniteAlgebra,
    bound: usize,
) -> Result<Vec<Vec<usize>>, CarrierTooLarge> {
    let n = a.carrier();
    if n > bound {
        return Err(CarrierTooLarge { carrier: n, bound });
    }
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y).collect();
    let mut out = Vec::new();
    for choice in tuples(n, free.len()) {
        let mut d: Vec<usize> = (0..n).flat_map(|x| std::iter::repeat_n(x, n)).collect();
        for (&(x, y), &v) in free.iter().zip(choice.iter()) {
            d[x * n + y] = v;
        }
        if validate_plonka(a, &d).is_ok() {
            out.push(d);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlonkaMorphismError {
    #[error("algebra part: {0}")]
    Algebra(HomError),
    #[error("band part: {0}")]
    Band(BandMorphismError),
}

/// Pass iff `map` is simultaneously a homomorphism of the algebra parts and
/// a morphism of the band parts.
pub fn check_plonka_morphism(
    map: &[usize],
    p: &PlonkaAlgebra,
    q: &PlonkaAlgebra,
) -> Result<(), PlonkaMorphismError> {
    check_homomorphism(map, p.algebra(), q.algebra()).map_err(PlonkaMorphismError::Algebra)?;
    check_band_morphism(map, p.band(), q.band()).map_err(PlonkaMorphismError::Band)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlonkaMorphism {
    source: PlonkaAlgebra,
    target: PlonkaAlgebra,
    map: Vec<usize>,
}

impl PlonkaMorphism {
    pub fn new(
        source: PlonkaAlgebra,
        target: PlonkaAlgebra,
        map: Vec<usize>,
    ) -> Result<PlonkaMorphism, PlonkaMorphismError> {
        check_plonka_morphism(&map, &source, &target)?;
        Ok(PlonkaMorphism { source, target, map })
    }

    pub fn identity(p: &PlonkaAlgebra) -> PlonkaMorphism {
        PlonkaMorphism { source: p.clone(), target: p.clone(), map: (0..p.carrier()).collect() }
    }

    pub fn compose(g: &PlonkaMorphism, f: &PlonkaMorphism) -> Result<PlonkaMorphism, PlonkaMorphismError> {
        assert_eq!(f.target, g.source, "composition endpoints do not match");
        PlonkaMorphism::new(
            f.source.clone(),
            g.target.clone(),
            f.map.iter().map(|&x| g.map[x]).collect(),
        )
    }

    pub fn source(&self) -> &PlonkaAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PlonkaAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.carrier() != self.target.carrier() {
            return false;
        }
        let mut seen = vec![false; self.target.carrier()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// The inverse morphism of a bijective one, if the inverse map is again
    /// a Płonka morphism (it always is; re-checked by construction).
    pub fn inverse(&self) -> Option<PlonkaMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        PlonkaMorphism::new(self.target.clone(), self.source.clone(), inv).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::semilattice::{join_algebra, SupSemilattice};

    fn sig2() -> Signature {
        Signature::of(&[("s", 2)])
    }

    fn const_zero() -> FiniteAlgebra {
        FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0)
    }

    fn join_plonka() -> PlonkaAlgebra {
        let two = SupSemilattice::chain(2);
        let a = join_algebra(&two, &sig2()).unwrap();
        PlonkaAlgebra::new(a, two.join_table().to_vec()).unwrap()
    }

    #[test]
    fn left_zero_is_plonka_operator_for_constant_algebra() {
        assert!(validate_plonka(&const_zero(), LeftNormalBand::left_zero(2).table()).is_ok());
    }

    #[test]
    fn meet_fails_d5_on_constant_algebra() {
        // d = min: first failure at xs=(1,1), y=1
        assert_eq!(
            validate_plonka(&const_zero(), &[0, 0, 0, 1]),
            Err(PlonkaViolation::D5 { symbol: "s".into(), xs: vec![1, 1], y: 1 })
        );
    }

    #[test]
    fn join_operator_on_join_algebra_passes() {
        let two = SupSemilattice::chain(2);
        let a = join_algebra(&two, &sig2()).unwrap();
        assert!(validate_plonka(&a, two.join_table()).is_ok());
    }

    #[test]
    fn constants_are_rejected_at_the_door() {
        let sig = Signature::of(&[("c", 0)]);
        let a = FiniteAlgebra::new(sig, 2, vec![vec![0]]).unwrap();
        assert!(matches!(
            validate_plonka(&a, &[0, 0, 1, 1]),
            Err(PlonkaViolation::Constant(_))
        ));
    }

    #[test]
    fn derived_laws_hold_on_examples() {
        let one = PlonkaAlgebra::new(
            FiniteAlgebra::from_fn(sig2(), 1, |_, _| 0),
            vec![0],
        )
        .unwrap();
        assert!(verify_derived_laws(&one).is_empty());
        let leftzero = PlonkaAlgebra::new(const_zero(), LeftNormalBand::left_zero(2).table().to_vec())
            .unwrap();
        assert!(verify_derived_laws(&leftzero).is_empty());
        assert!(verify_derived_laws(&join_plonka()).is_empty());
    }

    #[test]
    fn tensor_embedding_reasserts_homomorphism_invariant() {
        let t = tensor_embed(&join_plonka());
        assert_eq!(t.algebra(), join_plonka().algebra());
        assert_eq!(t.band(), join_plonka().band());
        let t = tensor_embed(&PlonkaAlgebra::new(const_zero(), vec![0, 0, 1, 1]).unwrap());
        assert_eq!(t.band(), &LeftNormalBand::left_zero(2));
    }

    #[test]
    fn tensor_object_rejects_non_homomorphic_operator() {
        // meet over the max algebra: min(max(1,0), max(0,1)) = 1 but
        // max(min(1,0), min(0,1)) = 0
        let a = FiniteAlgebra::from_fn(sig2(), 2, |_, args| args[0].max(args[1]));
        let band = LeftNormalBand::new(2, vec![0, 0, 0, 1]).unwrap();
        assert!(matches!(
            TensorObject::new(a, band),
            Err(TensorError::OperatorNotHomomorphism(_))
        ));
    }

    #[test]
    fn tensor_objects_are_strictly_more_general() {
        // (constant algebra, join band) is a tensor object but fails D4:
        // d(s(xs), 1) = 1 while s(d(x0,1), d(x1,1)) = 0
        let band = LeftNormalBand::new(2, vec![0, 1, 1, 1]).unwrap();
        assert!(TensorObject::new(const_zero(), band.clone()).is_ok());
        assert!(matches!(
            validate_plonka(&const_zero(), band.table()),
            Err(PlonkaViolation::D4 { .. })
        ));
    }

    #[test]
    fn enumeration_on_singleton_and_constant_algebra() {
        let one = FiniteAlgebra::from_fn(sig2(), 1, |_, _| 0);
        assert_eq!(enumerate_plonka_operators(&one, 3).unwrap(), vec![vec![0]]);
        // exactly the left-zero operator survives on the constant algebra
        assert_eq!(
            enumerate_plonka_operators(&const_zero(), 3).unwrap(),
            vec![vec![0, 0, 1, 1]]
        );
    }

    #[test]
    fn enumeration_contains_join_for_join_algebra() {
        let two = SupSemilattice::chain(2);
        let a = join_algebra(&two, &sig2()).unwrap();
        let found = enumerate_plonka_operators(&a, 3).unwrap();
        assert!(found.contains(&two.join_table().to_vec()));
    }

    #[test]
    fn enumeration_respects_bound() {
        let a = FiniteAlgebra::from_fn(sig2(), 4, |_, _| 0);
        assert_eq!(
            enumerate_plonka_operators(&a, 3),
            Err(CarrierTooLarge { carrier: 4, bound: 3 })
        );
    }

    #[test]
    fn morphism_checks_on_left_zero_example() {
        let p = PlonkaAlgebra::new(const_zero(), vec![0, 0, 1, 1]).unwrap();
        let id: Vec<usize> = (0..2).collect();
        assert!(check_plonka_morphism(&id, &p, &p).is_ok());
        // constant 0 fixes the operations and the band
        assert!(check_plonka_morphism(&[0, 0], &p, &p).is_ok());
        // the swap breaks the algebra part: h(s(1,1)) = h(0) = 1 != 0
        assert!(matches!(
            check_plonka_morphism(&[1, 0], &p, &p),
            Err(PlonkaMorphismError::Algebra(_))
        ));
    }

    #[test]
    fn every_small_semilattice_gives_a_plonka_algebra() {
        let sig = Signature::of(&[("u", 1), ("s", 2), ("t", 3)]);
        for s in [
            SupSemilattice::chain(1),
            SupSemilattice::chain(2),
            SupSemilattice::chain(3),
            SupSemilattice::chain(4),
            crate::semilattice::free_ssl(2).0,
        ] {
            let a = join_algebra(&s, &sig).unwrap();
            assert!(validate_plonka(&a, s.join_table()).is_ok());
            let p = PlonkaAlgebra::new(a, s.join_table().to_vec()).unwrap();
            assert!(verify_derived_laws(&p).is_empty());
        }
    }

    #[test]
    fn tensor_embedding_is_full() {
        // a map between Płonka algebras is a Płonka morphism exactly when it
        // is a morphism of their tensor images: an algebra homomorphism that
        // also commutes with the operators
        let ps = [
            join_plonka(),
            PlonkaAlgebra::new(const_zero(), vec![0, 0, 1, 1]).unwrap(),
        ];
        for p in &ps {
            for q in &ps {
                let (tp, tq) = (tensor_embed(p), tensor_embed(q));
                for map in crate::enumerate::all_maps(p.carrier(), q.carrier()) {
                    let plonka_side = check_plonka_morphism(&map, p, q).is_ok();
                    let tensor_side = check_homomorphism(&map, tp.algebra(), tq.algebra())
                        .is_ok()
                        && (0..p.carrier()).all(|x| {
                            (0..p.carrier()).all(|y| {
                                map[tp.band().d(x, y)] == tq.band().d(map[x], map[y])
                            })
                        });
                    assert_eq!(plonka_side, tensor_side);
                }
            }
        }
    }

    #[test]
    fn induced_relation_is_congruence_on_the_algebra() {
        // blocks of the band relation are compatible with the operations
        for p in [
            join_plonka(),
            PlonkaAlgebra::new(const_zero(), vec![0, 0, 1, 1]).unwrap(),
        ] {
            let phi = p.band().induced_relation();
            assert!(crate::algebra::is_congruence(p.algebra(), &phi).is_ok());
        }
    }
}
