//! The sum of an inductive system of constant-free algebras, the inverse
//! decomposition of a Płonka algebra into such a system, and the adjunction
//! between the two constructions.
//!
//! The sum carrier is the disjoint union of the fibers in index-major order;
//! each operation pushes its arguments along the transitions to the join of
//! their indexes and applies the fiber operation there, and the operator is
//! `d((x,j),(y,k)) = (f_{j, j v k}(x), j v k)`. Decomposition recovers the
//! index semilattice as the block semilattice of the operator's induced
//! relation, the fibers as the blocks, and the transitions as `z -> d(z, y)`
//! for a representative `y` of the target block.
//!
//! ```
//! use std::collections::BTreeMap;
//! use plonka_core::algebra::{FiniteAlgebra, Signature};
//! use plonka_core::semilattice::SupSemilattice;
//! use plonka_core::system::InductiveSystem;
//! use plonka_core::adjunction::{decompose, plonka_sum, unit, verify_adjunction};
//!
//! // a one-point fiber under a two-point fiber, glued along a ↦ b
//! let sig = Signature::of(&[("s", 2)]);
//! let a0 = FiniteAlgebra::from_fn(sig.clone(), 1, |_, _| 0);
//! let a1 = FiniteAlgebra::from_fn(sig.clone(), 2, |_, _| 0);
//! let sys = InductiveSystem::new(
//!     sig,
//!     SupSemilattice::chain(2),
//!     vec![a0, a1],
//!     BTreeMap::from([((0, 1), vec![0])]),
//! )
//! .unwrap();
//!
//! let sum = plonka_sum(&sys).unwrap();
//! assert_eq!(sum.carrier(), 3);
//! assert_eq!(decompose(&sum).embedding(), &[vec![0], vec![1, 2]]);
//!
//! let eta = unit(&sys).unwrap();
//! assert!(verify_adjunction(&sys, &sum, &eta, 1 << 20).unwrap().passed());
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{ConstantInSignature, FiniteAlgebra};
use crate::band::sl_reflect;
use crate::enumerate::{all_maps, map_count};
use crate::plonka::{check_plonka_morphism, PlonkaAlgebra, PlonkaMorphism};

use crate::system::{InductiveSystem, SystemMorphism};

/// One point of a sum carrier: a fiber index and a position in that fiber.
/// Sum carriers are ordered index-major, so the element id of `(i, x)` is
/// `offset(i) + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumElement {
    pub index: usize,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctionError {
    #[error(transparent)]
    Constant(#[from] ConstantInSignature),
    #[error("fiber {index} is empty; the construction needs one point per fiber")]
    EmptyFiber { index: usize },
    #[error("morphism target is not the decomposition of the given algebra")]
    TargetMismatch,
    #[error("{candidates} candidate maps exceed the search bound {bound}")]
    SearchSpaceTooLarge { candidates: u64, bound: u64 },
}

/// Index-major layout of a sum carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumLayout {
    offsets: Vec<usize>,
    total: usize,
}

impl SumLayout {
    pub fn of(sys: &InductiveSystem) -> SumLayout {
        let mut offsets = Vec::with_capacity(sys.index().size());
        let mut total = 0;
        for i in 0..sys.index().size() {
            offsets.push(total);
            total += sys.algebra(i).carrier();
        }
        SumLayout { offsets, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn id_of(&self, e: SumElement) -> usize {
        self.offsets[e.index] + e.value
    }

    pub fn element_of(&self, id: usize) -> SumElement {
        debug_assert!(id < self.total);
        let index = match self.offsets.binary_search(&id) {
            Ok(mut i) => {
                // skip empty fibers sharing the same offset
                while i + 1 < self.offsets.len() && self.offsets[i + 1] == id {
                    i += 1;
                }
                i
            }
            Err(i) => i - 1,
        };
        SumElement { index, value: id - self.offsets[index] }
    }
}

/// The sum elements of a system in carrier order.
pub fn sum_elements(sys: &InductiveSystem) -> Vec<SumElement> {
    let layout = SumLayout::of(sys);
    (0..layout.total()).map(|id| layout.element_of(id)).collect()
}

/// The sum of an inductive system of constant-free algebras, as a Płonka
/// algebra. The defining laws D1-D5 are re-validated on the result.
pub fn plonka_sum(sys: &InductiveSystem) -> Result<PlonkaAlgebra, AdjunctionError> {
    let signature = sys.signature().clone();
    signature.require_constant_free()?;
    let layout = SumLayout::of(sys);
    let index = sys.index();
    let algebra = FiniteAlgebra::from_fn(signature, layout.total(), |sym, args| {
        let parts: Vec<SumElement> = args.iter().map(|&id| layout.element_of(id)).collect();
        let top = index.join_all(&parts.iter().map(|e| e.index).collect::<Vec<_>>());
        let pushed: Vec<usize> = parts
            .iter()
            .map(|e| sys.transition(e.index, top)[e.value])
            .collect();
        layout.id_of(SumElement { index: top, value: sys.algebra(top).op(sym, &pushed) })
    });
    let d: Vec<usize> = (0..layout.total())
        .flat_map(|xid| {
            let layout = &layout;
            let sys = &sys;
            (0..layout.total()).map(move |yid| {
                let x = layout.element_of(xid);
                let y = layout.element_of(yid);
                let top = index.join(x.index, y.index);
                layout.id_of(SumElement {
                    index: top,
                    value: sys.transition(x.index, top)[x.value],
                })
            })
        })
        .collect();
    Ok(PlonkaAlgebra::new(algebra, d).expect("the sum of a valid system satisfies D1-D5"))
}

/// A Płonka algebra split into its inductive system: the index semilattice
/// of operator blocks, one subalgebra per block, the transitions between
/// them, and the translation between block coordinates and the original
/// carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    system: InductiveSystem,
    /// `embedding[block][position]` = original carrier element.
    embedding: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    pos_of: Vec<usize>,
}

impl Decomposition {
    pub fn system(&self) -> &InductiveSystem {
        &self.system
    }

    pub fn embedding(&self) -> &[Vec<usize>] {
        &self.embedding
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn pos_of(&self, x: usize) -> usize {
        self.pos_of[x]
    }

    pub fn original(&self, block: usize, pos: usize) -> usize {
        self.embedding[block][pos]
    }
}

/// Decompose a Płonka algebra along the relation induced by its operator.
///
/// Each block is closed under the operations, the map `z -> d(z, y)` into a
/// higher block is independent of the representative `y`, and the bundle
/// satisfies the system laws; all three facts are re-checked here.
pub fn decompose(p: &PlonkaAlgebra) -> Decomposition {
    let reflection = sl_reflect(p.band());
    let phi = p.band().induced_relation();
    let index = reflection.semilattice.clone();
    let a = p.algebra();

    let embedding: Vec<Vec<usize>> = phi.blocks().to_vec();
    let mut block_of = vec![0; p.carrier()];
    let mut pos_of = vec![0; p.carrier()];
    for (b, members) in embedding.iter().enumerate() {
        for (pos, &x) in members.iter().enumerate() {
            block_of[x] = b;
            pos_of[x] = pos;
        }
    }

    // each block carries a subalgebra; closure is re-asserted by from_fn
    // panicking on out-of-block results only if translation fails, so check
    // membership explicitly first
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for (b, members) in embedding.iter().enumerate() {
            for args in crate::enumerate::tuples(members.len(), arity) {
                let actual: Vec<usize> = args.iter().map(|&k| members[k]).collect();
                let out = a.op(sym, &actual);
                assert_eq!(
                    block_of[out], b,
                    "operator blocks must be closed under the operations"
                );
            }
        }
    }
    let algebras: Vec<FiniteAlgebra> = embedding
        .iter()
        .map(|members| {
            FiniteAlgebra::from_fn(a.signature().clone(), members.len(), |sym, args| {
                let actual: Vec<usize> = args.iter().map(|&k| members[k]).collect();
                pos_of[a.op(sym, &actual)]
            })
        })
        .collect();

    let mut transitions = BTreeMap::new();
    for (bx, by) in index.comparable_pairs() {
        if bx == by {
            continue;
        }
        let rep = embedding[by][0];
        let map: Vec<usize> = embedding[bx]
            .iter()
            .map(|&z| {
                let out = p.d(z, rep);
                // independence of the representative of the target block
                for &other in &embedding[by] {
                    assert_eq!(p.d(z, other), out, "transition must not depend on the representative");
                }
                assert_eq!(block_of[out], by, "transition must land in the target block");
                pos_of[out]
            })
            .collect();
        transitions.insert((bx, by), map);
    }
    let system = InductiveSystem::new(a.signature().clone(), index, algebras, transitions)
        .expect("the decomposition of a Płonka algebra is a valid system");
    Decomposition { system, embedding, block_of, pos_of }
}

/// Functorial image of a Płonka morphism: the block map of the underlying
/// band morphism together with the restriction of the map to each block.
pub fn is_on_morphism(h: &PlonkaMorphism) -> SystemMorphism {
    let src = decompose(h.source());
    let tgt = decompose(h.target());
    let xi: Vec<usize> = src
        .embedding()
        .iter()
        .map(|members| tgt.block_of(h.apply(members[0])))
        .collect();
    let components: Vec<Vec<usize>> = src
        .embedding()
        .iter()
        .map(|members| members.iter().map(|&z| tgt.pos_of(h.apply(z))).collect())
        .collect();
    SystemMorphism::new(src.system().clone(), tgt.system().clone(), xi, components)
        .expect("the decomposition of a Płonka morphism is a system morphism")
}

/// The unit of the adjunction at a system: indexes go to the block of their
/// fiber in the decomposed sum, fiber points to their position in that
/// block. Undefined when a fiber is empty, since a block must be inhabited.
pub fn unit(sys: &InductiveSystem) -> Result<SystemMorphism, AdjunctionError> {
    for i in 0..sys.index().size() {
        if sys.algebra(i).carrier() == 0 {
            return Err(AdjunctionError::EmptyFiber { index: i });
        }
    }
    let sum = plonka_sum(sys)?;
    let dec = decompose(&sum);
    let layout = SumLayout::of(sys);
    let alpha: Vec<usize> = (0..sys.index().size())
        .map(|i| dec.block_of(layout.id_of(SumElement { index: i, value: 0 })))
        .collect();
    let components: Vec<Vec<usize>> = (0..sys.index().size())
        .map(|i| {
            (0..sys.algebra(i).carrier())
                .map(|z| dec.pos_of(layout.id_of(SumElement { index: i, value: z })))
                .collect()
        })
        .collect();
    SystemMorphism::new(sys.clone(), dec.system().clone(), alpha, components)
        .map_err(|e| panic!("the unit must be a system morphism: {e}"))
}

/// Extend a morphism `m : sys -> decompose(q)` to the Płonka morphism
/// `sum(sys) -> q` sending `(x, j)` to the image of `x` under the component
/// at `j`, embedded back into `q`.
pub fn universal_extension(
    m: &SystemMorphism,
    q: &PlonkaAlgebra,
) -> Result<PlonkaMorphism, AdjunctionError> {
    let dec = decompose(q);
    if m.target() != dec.system() {
        return Err(AdjunctionError::TargetMismatch);
    }
    let sys = m.source();
    let sum = plonka_sum(sys)?;
    let layout = SumLayout::of(sys);
    let map: Vec<usize> = (0..layout.total())
        .map(|id| {
            let e = layout.element_of(id);
            dec.original(m.index_map()[e.index], m.component(e.index)[e.value])
        })
        .collect();
    Ok(PlonkaMorphism::new(sum, q.clone(), map)
        .expect("the universal extension is a Płonka morphism"))
}

/// The counit at a Płonka algebra: the extension of the identity on its
/// decomposition, mapping (block, position) back to the original element.
pub fn counit(q: &PlonkaAlgebra) -> PlonkaMorphism {
    let dec = decompose(q);
    let id = SystemMorphism::identity(dec.system());
    let eps = universal_extension(&id, q)
        .expect("the identity morphism always targets the decomposition");
    debug_assert!(eps.is_bijective(), "the counit of a Płonka algebra is a bijection");
    eps
}

/// Functorial image of a system morphism between the sums:
/// `(x, i) -> (u_i(x), xi(i))`.
pub fn pl_on_morphism(m: &SystemMorphism) -> Result<PlonkaMorphism, AdjunctionError> {
    let src_sum = plonka_sum(m.source())?;
    let tgt_sum = plonka_sum(m.target())?;
    let src_layout = SumLayout::of(m.source());
    let tgt_layout = SumLayout::of(m.target());
    let map: Vec<usize> = (0..src_layout.total())
        .map(|id| {
            let e = src_layout.element_of(id);
            tgt_layout.id_of(SumElement {
                index: m.index_map()[e.index],
                value: m.component(e.index)[e.value],
            })
        })
        .collect();
    Ok(PlonkaMorphism::new(src_sum, tgt_sum, map)
        .expect("the sum of a system morphism is a Płonka morphism"))
}

/// Outcome of the full adjunction check at one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `m = Is(extension) o unit` holds.
    pub factorization: bool,
    /// Number of Płonka morphisms `h : sum(sys) -> q` with `Is(h) o unit = m`
    /// found by exhausting every map; must be exactly one.
    pub matching_morphisms: usize,
    /// The one matching morphism, when unique, equals the extension.
    pub unique_is_extension: bool,
    /// `Is(counit_q) o unit_{Is(q)} = id`.
    pub triangle_decomposition: bool,
    /// `counit_{sum(sys)} o sum(unit_sys) = id`.
    pub triangle_sum: bool,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.factorization
            && self.matching_morphisms == 1
            && self.unique_is_extension
            && self.triangle_decomposition
            && self.triangle_sum
    }

    pub fn lines(&self) -> Vec<String> {
        let mark = |b: bool| if b { "pass" } else { "fail" };
        vec![
            format!("factorization: {}", mark(self.factorization)),
            format!(
                "uniqueness: {} ({} matching morphism{})",
                mark(self.matching_morphisms == 1 && self.unique_is_extension),
                self.matching_morphisms,
                if self.matching_morphisms == 1 { "" } else { "s" }
            ),
            format!("triangle (decomposition side): {}", mark(self.triangle_decomposition)),
            format!("triangle (sum side): {}", mark(self.triangle_sum)),
        ]
    }
}

/// Check the universal property of the sum at `(sys, q, m)` by exhaustive
/// enumeration: factorization, uniqueness of the extension among all maps,
/// and both triangle identities. `max_candidates` bounds the search space
/// `|q|^|sum(sys)|`.
pub fn verify_adjunction(
    sys: &InductiveSystem,
    q: &PlonkaAlgebra,
    m: &SystemMorphism,
    max_candidates: u64,
) -> Result<AdjunctionReport, AdjunctionError> {
    let eta = unit(sys)?;
    let extension = universal_extension(m, q)?;
    let sum = plonka_sum(sys)?;

    let factored = SystemMorphism::compose(&is_on_morphism(&extension), &eta)
        .expect("composable by construction");
    let factorization = factored == *m;

    match map_count(sum.carrier(), q.carrier()) {
        Some(candidates) if candidates <= max_candidates => {}
        other => {
            return Err(AdjunctionError::SearchSpaceTooLarge {
                candidates: other.unwrap_or(u64::MAX),
                bound: max_candidates,
            })
        }
    }
    let mut matching = Vec::new();
    for map in all_maps(sum.carrier(), q.carrier()) {
        if check_plonka_morphism(&map, &sum, q).is_err() {
            continue;
        }
        let h = PlonkaMorphism::new(sum.clone(), q.clone(), map).expect("checked above");
        let through = SystemMorphism::compose(&is_on_morphism(&h), &eta)
            .expect("composable by construction");
        if through == *m {
            matching.push(h);
        }
    }
    let matching_morphisms = matching.len();
    let unique_is_extension = matching_morphisms == 1 && matching[0] == extension;

    let (triangle_decomposition, triangle_sum) = check_triangles(sys, q)?;

    Ok(AdjunctionReport {
        factorization,
        matching_morphisms,
        unique_is_extension,
        triangle_decomposition,
        triangle_sum,
    })
}

/// The two triangle identities, checked without any enumeration:
/// `Is(counit_q) o unit_{Is(q)} = id` on the decomposition of `q`, and
/// `counit_{sum(sys)} o sum(unit_sys) = id` on the sum of `sys`.
pub fn check_triangles(
    sys: &InductiveSystem,
    q: &PlonkaAlgebra,
) -> Result<(bool, bool), AdjunctionError> {
    let dec = decompose(q);
    let eta_dec = unit(dec.system()).expect("blocks are never empty");
    let tri1 = SystemMorphism::compose(&is_on_morphism(&counit(q)), &eta_dec)
        .expect("composable by construction");
    let triangle_decomposition = tri1 == SystemMorphism::identity(dec.system());

    let sum = plonka_sum(sys)?;
    let eta = unit(sys)?;
    let tri2 = PlonkaMorphism::compose(&counit(&sum), &pl_on_morphism(&eta)?)
        .expect("the sum triangle composes");
    let triangle_sum = tri2 == PlonkaMorphism::identity(&sum);
    Ok((triangle_decomposition, triangle_sum))
}

pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;
