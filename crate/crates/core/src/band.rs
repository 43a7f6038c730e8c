//! Left normal bands: a binary operation satisfying
//!
//! - D1: `d(x,x) = x`
//! - D2: `d(x,d(y,z)) = d(d(x,y),z)`
//! - D3: `d(x,d(y,z)) = d(x,d(z,y))`
//!
//! together with their iterates, the relation induced by the operation, and
//! the reflection into sup-semilattices whose blocks are the classes of that
//! relation and whose join of blocks is the block of `d`.

use thiserror::Error;

use crate::partition::Partition;
use crate::semilattice::{SslMorphism, SupSemilattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LnbViolation {
    #[error("operation table has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("d({x},{y}) = {value} is outside the carrier")]
    OutOfRange { x: usize, y: usize, value: usize },
    #[error("D1 at ({x})")]
    D1 { x: usize },
    #[error("D2 at ({x},{y},{z})")]
    D2 { x: usize, y: usize, z: usize },
    #[error("D3 at ({x},{y},{z})")]
    D3 { x: usize, y: usize, z: usize },
}

/// First axiom a candidate table violates, with its witness.
pub fn validate_lnb(n: usize, d: &[usize]) -> Result<(), LnbViolation> {
    let expected = n.checked_mul(n).unwrap_or(usize::MAX);
    if d.len() != expected {
        return Err(LnbViolation::WrongLength { expected, found: d.len() });
    }
    let dd = |x: usize, y: usize| d[x * n + y];
    for x in 0..n {
        for y in 0..n {
            if dd(x, y) >= n {
                return Err(LnbViolation::OutOfRange { x, y, value: dd(x, y) });
            }
        }
    }
    for x in 0..n {
        if dd(x, x) != x {
            return Err(LnbViolation::D1 { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if dd(x, dd(y, z)) != dd(dd(x, y), z) {
                    return Err(LnbViolation::D2 { x, y, z });
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if dd(x, dd(y, z)) != dd(x, dd(z, y)) {
                    return Err(LnbViolation::D3 { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// The two iterate folds disagreed, which cannot happen once D1-D3 hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("right and left iterates disagree on {xs:?}: {right} vs {left}")]
pub struct IterateMismatch {
    pub xs: Vec<usize>,
    pub right: usize,
    pub left: usize,
}

/// A carrier `0..n` with a validated left normal band operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftNormalBand {
    n: usize,
    d: Vec<usize>,
}

impl LeftNormalBand {
    pub fn new(n: usize, d: Vec<usize>) -> Result<LeftNormalBand, LnbViolation> {
        validate_lnb(n, &d)?;
        Ok(LeftNormalBand { n, d })
    }

    /// The left-zero band `d(x,y) = x`.
    pub fn left_zero(n: usize) -> LeftNormalBand {
        let d = (0..n).flat_map(|x| std::iter::repeat_n(x, n)).collect();
        LeftNormalBand { n, d }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn d(&self, x: usize, y: usize) -> usize {
        self.d[x * self.n + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.d
    }

    /// `D_n` applied to a nonempty tuple: the right fold
    /// `d(x_0, d(x_1, ... d(x_{n-2}, x_{n-1})))`, computed alongside the left
    /// fold and checked equal before returning.
    pub fn iterate(&self, xs: &[usize]) -> Result<usize, IterateMismatch> {
        assert!(!xs.is_empty(), "iterate needs a nonempty tuple");
        let right = xs.iter().rev().copied().reduce(|acc, x| self.d(x, acc)).unwrap();
        let left = xs.iter().copied().reduce(|acc, x| self.d(acc, x)).unwrap();
        if right != left {
            return Err(IterateMismatch { xs: xs.to_vec(), right, left });
        }
        Ok(right)
    }

    /// The relation `x ~ y` iff `d(x,y) = x` and `d(y,x) = y`. For a left
    /// normal band this is an equivalence compatible with `d`; both facts are
    /// re-checked here rather than assumed.
    pub fn induced_relation(&self) -> Partition {
        let n = self.n;
        let related =
            |x: usize, y: usize| self.d(x, y) == x && self.d(y, x) == y;
        // build blocks off the relation, then confirm it really is one
        let mut assign: Vec<usize> = (0..n).collect();
        for x in 0..n {
            for y in 0..x {
                if related(x, y) {
                    assign[x] = assign[y];
                    break;
                }
            }
        }
        let partition = Partition::from_assignment(&assign);
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    partition.related(x, y),
                    related(x, y),
                    "the relation induced by a left normal band must be an equivalence"
                );
            }
        }
        partition
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandMorphismError {
    #[error("map has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("map sends {element} to {value}, outside the target")]
    OutOfRange { element: usize, value: usize },
    #[error("band morphism condition fails at ({x},{y})")]
    NotAMorphism { x: usize, y: usize },
}

/// Does `map` satisfy `e(h(x), h(y)) = h(d(x, y))` everywhere?
pub fn check_band_morphism(
    map: &[usize],
    b: &LeftNormalBand,
    c: &LeftNormalBand,
) -> Result<(), BandMorphismError> {
    if map.len() != b.size() {
        return Err(BandMorphismError::WrongLength { expected: b.size(), found: map.len() });
    }
    if let Some((element, &value)) = map.iter().enumerate().find(|&(_, &v)| v >= c.size()) {
        return Err(BandMorphismError::OutOfRange { element, value });
    }
    for x in 0..b.size() {
        for y in 0..b.size() {
            if c.d(map[x], map[y]) != map[b.d(x, y)] {
                return Err(BandMorphismError::NotAMorphism { x, y });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandMorphism {
    source: LeftNormalBand,
    target: LeftNormalBand,
    map: Vec<usize>,
}

impl BandMorphism {
    pub fn new(
        source: LeftNormalBand,
        target: LeftNormalBand,
        map: Vec<usize>,
    ) -> Result<BandMorphism, BandMorphismError> {
        check_band_morphism(&map, &source, &target)?;
        Ok(BandMorphism { source, target, map })
    }

    pub fn identity(b: &LeftNormalBand) -> BandMorphism {
        BandMorphism { source: b.clone(), target: b.clone(), map: (0..b.size()).collect() }
    }

    pub fn compose(g: &BandMorphism, f: &BandMorphism) -> Result<BandMorphism, BandMorphismError> {
        if f.target != g.source {
            return Err(BandMorphismError::WrongLength {
                expected: g.source.size(),
                found: f.target.size(),
            });
        }
        BandMorphism::new(
            f.source.clone(),
            g.target.clone(),
            f.map.iter().map(|&x| g.map[x]).collect(),
        )
    }

    pub fn source(&self) -> &LeftNormalBand {
        &self.source
    }

    pub fn target(&self) -> &LeftNormalBand {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// Every sup-semilattice is a left normal band under its join.
pub fn ssl_to_band(s: &SupSemilattice) -> LeftNormalBand {
    LeftNormalBand::new(s.size(), s.join_table().to_vec())
        .expect("a join table satisfies D1-D3")
}

/// The semilattice of blocks of the induced relation, with the projection
/// onto it (a band morphism into the join band of the result).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandReflection {
    pub semilattice: SupSemilattice,
    pub projection: BandMorphism,
}

/// Reflect a left normal band into sup-semilattices: blocks of the induced
/// relation, join of blocks = block of `d` on representatives.
pub fn sl_reflect(b: &LeftNormalBand) -> BandReflection {
    let phi = b.induced_relation();
    let k = phi.num_blocks();
    let join: Vec<usize> = (0..k)
        .flat_map(|p| {
            let phi = &phi;
            (0..k).map(move |q| {
                phi.block_of(b.d(phi.representative(p), phi.representative(q)))
            })
        })
        .collect();
    let semilattice = SupSemilattice::new(k, join)
        .expect("blocks of the induced relation form a sup-semilattice");
    let map: Vec<usize> = (0..b.size()).map(|x| phi.block_of(x)).collect();
    let projection = BandMorphism::new(b.clone(), ssl_to_band(&semilattice), map)
        .expect("the projection onto blocks is a band morphism");
    BandReflection { semilattice, projection }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandFactorError {
    #[error("target of the morphism is not the join band of the given semilattice")]
    TargetNotASemilatticeBand,
}

/// Factor a band morphism `h: b -> join band of i` through the reflection:
/// the unique join morphism `h♭` with `h♭ ∘ projection = h`.
pub fn factor_through_sl(
    h: &BandMorphism,
    i: &SupSemilattice,
) -> Result<SslMorphism, BandFactorError> {
    if *h.target() != ssl_to_band(i) {
        return Err(BandFactorError::TargetNotASemilatticeBand);
    }
    let reflection = sl_reflect(h.source());
    let phi = h.source().induced_relation();
    let map: Vec<usize> = (0..phi.num_blocks())
        .map(|blk| {
            let value = h.apply(phi.representative(blk));
            // the induced relation is contained in the kernel of h
            for &member in phi.block(blk) {
                debug_assert_eq!(h.apply(member), value);
            }
            value
        })
        .collect();
    Ok(SslMorphism::new(reflection.semilattice, i.clone(), map)
        .expect("blockwise factorization preserves joins"))
}

/// Functorial image of a band morphism between the reflections:
/// `[x] -> [h(x)]`.
pub fn band_morphism_to_sl_morphism(h: &BandMorphism) -> SslMorphism {
    let src = sl_reflect(h.source());
    let tgt = sl_reflect(h.target());
    let phi = h.source().induced_relation();
    let psi = h.target().induced_relation();
    let map: Vec<usize> =
        (0..phi.num_blocks()).map(|blk| psi.block_of(h.apply(phi.representative(blk)))).collect();
    SslMorphism::new(src.semilattice, tgt.semilattice, map)
        .expect("the reflection of a band morphism preserves joins")
}

/// All left normal bands on the carrier `0..n`, by exhausting the tables
/// with an idempotent diagonal (a necessary condition for D1) and filtering
/// through the validator. Order is lexicographic in the full table.
pub fn enumerate_lnbs(n: usize) -> Vec<LeftNormalBand> {
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y).collect();
    let mut out = Vec::new();
    for choice in crate::enumerate::tuples(n, free.len()) {
        let mut d: Vec<usize> = (0..n).flat_map(|x| std::iter::repeat_n(x, n)).collect();
        for (&(x, y), &v) in free.iter().zip(choice.iter()) {
            d[x * n + y] = v;
        }
        if let Ok(b) = LeftNormalBand::new(n, d) {
            out.push(b);
        }
    }
    out
}
