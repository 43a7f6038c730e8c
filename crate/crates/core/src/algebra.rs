//! Signatures, finite algebras over them, homomorphisms, generated
//! subalgebras and congruences, quotients and finite powers.
//!
//! Carriers are always the index set `0..n`; element names are presentation
//! metadata handled by the I/O layer. Operation tables are flat vectors in
//! row-major argument order, so a `k`-ary table over `n` elements has `n^k`
//! entries and a nullary table is a single entry (the constant).

use std::fmt;

use thiserror::Error;

use crate::enumerate::{index_tuple, table_len, tuple_index, tuples};
use crate::partition::{Partition, UnionFind};

/// A family of operation symbols with finite arities. Symbol order is
/// significant: tables, enumeration and serialization all follow it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("empty operation symbol name")]
    EmptyName,
}

/// The signature has an operation symbol of arity zero where none is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("signature has constant symbol `{symbol}`; a constant-free signature is required")]
pub struct ConstantInSignature {
    pub symbol: String,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Signature, SignatureError> {
        for (i, (name, _)) in symbols.iter().enumerate() {
            if name.is_empty() {
                return Err(SignatureError::EmptyName);
            }
            if symbols[..i].iter().any(|(other, _)| other == name) {
                return Err(SignatureError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn empty() -> Signature {
        Signature { symbols: Vec::new() }
    }

    /// Shorthand for tests and builders: panics on duplicate names.
    pub fn of(symbols: &[(&str, usize)]) -> Signature {
        Signature::new(symbols.iter().map(|(n, a)| (n.to_string(), *a)).collect())
            .expect("invalid signature literal")
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, sym: usize) -> &str {
        &self.symbols[sym].0
    }

    pub fn arity(&self, sym: usize) -> usize {
        self.symbols[sym].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|&(_, a)| a).max().unwrap_or(0)
    }

    /// The subsignature with every arity-0 symbol removed, order preserved.
    pub fn restrict_nonzero(&self) -> Signature {
        Signature {
            symbols: self.symbols.iter().filter(|&&(_, a)| a != 0).cloned().collect(),
        }
    }

    pub fn is_constant_free(&self) -> bool {
        self.symbols.iter().all(|&(_, a)| a != 0)
    }

    /// Error with the first constant symbol, if any.
    pub fn require_constant_free(&self) -> Result<(), ConstantInSignature> {
        match self.symbols.iter().find(|&&(_, a)| a == 0) {
            Some((name, _)) => Err(ConstantInSignature { symbol: name.clone() }),
            None => Ok(()),
        }
    }
}

/// One defect found while validating an operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableIssue {
    /// No table at all was supplied for the symbol.
    MissingTable { symbol: String },
    /// The table has no entry for this argument tuple.
    MissingEntry { symbol: String, args: Vec<usize> },
    /// The table has more entries than argument tuples.
    ExcessEntries { symbol: String, expected: usize, found: usize },
    /// An entry falls outside the carrier; `args` is the offending tuple.
    OutOfRange { symbol: String, args: Vec<usize>, value: usize },
    /// A constant symbol over the empty carrier has no possible value.
    ConstantOnEmptyCarrier { symbol: String },
}

impl fmt::Display for TableIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableIssue::MissingTable { symbol } => write!(f, "no table for `{symbol}`"),
            TableIssue::MissingEntry { symbol, args } => {
                write!(f, "table for `{symbol}` has no entry at {args:?}")
            }
            TableIssue::ExcessEntries { symbol, expected, found } => {
                write!(f, "table for `{symbol}` has {found} entries, expected {expected}")
            }
            TableIssue::OutOfRange { symbol, args, value } => {
                write!(f, "`{symbol}`{args:?} = {value} is outside the carrier")
            }
            TableIssue::ConstantOnEmptyCarrier { symbol } => {
                write!(f, "constant `{symbol}` cannot be interpreted on an empty carrier")
            }
        }
    }
}

/// Everything wrong with a candidate algebra; empty iff the data is total
/// and lands in the carrier. Validation never aborts early.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<TableIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// Collect every defect of a candidate algebra: wrong table counts, missing
/// tuples, out-of-carrier entries, constants over the empty carrier.
pub fn validate_algebra(sig: &Signature, carrier: usize, tables: &[Vec<usize>]) -> ValidationReport {
    let mut issues = Vec::new();
    for (sym, (name, arity)) in sig.symbols().iter().enumerate() {
        let Some(table) = tables.get(sym) else {
            issues.push(TableIssue::MissingTable { symbol: name.clone() });
            continue;
        };
        if *arity == 0 && carrier == 0 {
            issues.push(TableIssue::ConstantOnEmptyCarrier { symbol: name.clone() });
            continue;
        }
        let expected = if carrier == 0 { 0 } else { table_len(carrier, *arity) };
        for (idx, &value) in table.iter().take(expected).enumerate() {
            if value >= carrier {
                issues.push(TableIssue::OutOfRange {
                    symbol: name.clone(),
                    args: index_tuple(carrier, *arity, idx),
                    value,
                });
            }
        }
        for idx in table.len()..expected {
            issues.push(TableIssue::MissingEntry {
                symbol: name.clone(),
                args: index_tuple(carrier, *arity, idx),
            });
        }
        if table.len() > expected {
            issues.push(TableIssue::ExcessEntries {
                symbol: name.clone(),
                expected,
                found: table.len(),
            });
        }
    }
    if tables.len() > sig.len() {
        issues.push(TableIssue::ExcessEntries {
            symbol: format!("<table #{}>", sig.len()),
            expected: sig.len(),
            found: tables.len(),
        });
    }
    ValidationReport { issues }
}

/// A finite algebra: a carrier `0..n` with one total operation table per
/// symbol of its signature. Construction validates totality and range, so a
/// value of this type is always well-formed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    signature: Signature,
    carrier: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(
        signature: Signature,
        carrier: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<FiniteAlgebra, ValidationReport> {
        let report = validate_algebra(&signature, carrier, &tables);
        if report.is_valid() {
            Ok(FiniteAlgebra { signature, carrier, tables })
        } else {
            Err(report)
        }
    }

    /// Build by evaluating `f` on every symbol and argument tuple.
    ///
    /// Panics if `f` returns a value outside the carrier, or if the signature
    /// has a constant but the carrier is empty.
    pub fn from_fn(
        signature: Signature,
        carrier: usize,
        f: impl Fn(usize, &[usize]) -> usize,
    ) -> FiniteAlgebra {
        let tables = (0..signature.len())
            .map(|sym| {
                tuples(carrier, signature.arity(sym))
                    .map(|args| f(sym, &args))
                    .collect::<Vec<_>>()
            })
            .collect();
        FiniteAlgebra::new(signature, carrier, tables).expect("from_fn produced an invalid table")
    }

    /// The one-element algebra over any signature.
    pub fn final_algebra(signature: Signature) -> FiniteAlgebra {
        FiniteAlgebra::from_fn(signature, 1, |_, _| 0)
    }

    /// The empty algebra, available exactly for constant-free signatures.
    pub fn empty_algebra(signature: Signature) -> Result<FiniteAlgebra, ConstantInSignature> {
        signature.require_constant_free()?;
        Ok(FiniteAlgebra {
            tables: vec![Vec::new(); signature.len()],
            signature,
            carrier: 0,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn table(&self, sym: usize) -> &[usize] {
        &self.tables[sym]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    /// Apply operation `sym` to `args`.
    pub fn op(&self, sym: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.signature.arity(sym));
        self.tables[sym][tuple_index(self.carrier, args)]
    }
}

/// Why a candidate map fails to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("source and target have different signatures")]
    SignatureMismatch,
    #[error("map has {found} entries, expected one per source element ({expected})")]
    WrongMapLength { expected: usize, found: usize },
    #[error("map sends {element} to {value}, outside the target carrier")]
    MapOutOfRange { element: usize, value: usize },
    #[error("homomorphism condition fails for `{symbol}` at {args:?}")]
    NotAHomomorphism { symbol: String, args: Vec<usize> },
}

/// Check the homomorphism condition `f(F_σ(args)) = G_σ(f(args))` for every
/// symbol and tuple; on failure reports the first counterexample.
pub fn check_homomorphism(
    map: &[usize],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<(), HomError> {
    if a.signature() != b.signature() {
        return Err(HomError::SignatureMismatch);
    }
    if map.len() != a.carrier() {
        return Err(HomError::WrongMapLength { expected: a.carrier(), found: map.len() });
    }
    if let Some((element, &value)) = map.iter().enumerate().find(|&(_, &v)| v >= b.carrier()) {
        return Err(HomError::MapOutOfRange { element, value });
    }
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for args in tuples(a.carrier(), arity) {
            let lhs = map[a.op(sym, &args)];
            let mapped: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            if lhs != b.op(sym, &mapped) {
                return Err(HomError::NotAHomomorphism {
                    symbol: a.signature().name(sym).to_string(),
                    args,
                });
            }
        }
    }
    Ok(())
}

/// A validated homomorphism bundled with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        map: Vec<usize>,
    ) -> Result<Homomorphism, HomError> {
        check_homomorphism(&map, &source, &target)?;
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(a: &FiniteAlgebra) -> Homomorphism {
        Homomorphism {
            source: a.clone(),
            target: a.clone(),
            map: (0..a.carrier()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
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
}

/// Least closed subset of the carrier containing `seed` (and every constant).
pub fn generated_subalgebra(a: &FiniteAlgebra, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; a.carrier()];
    for &x in seed {
        assert!(x < a.carrier(), "seed element {x} outside carrier");
        member[x] = true;
    }
    loop {
        let mut grew = false;
        for sym in 0..a.signature().len() {
            let arity = a.signature().arity(sym);
            let current: Vec<usize> = (0..a.carrier()).filter(|&x| member[x]).collect();
            for args in tuples(current.len(), arity) {
                let actual: Vec<usize> = args.iter().map(|&j| current[j]).collect();
                let out = a.op(sym, &actual);
                if !member[out] {
                    member[out] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    (0..a.carrier()).filter(|&x| member[x]).collect()
}

/// How a partition fails to be compatible with the operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceViolation {
    #[error("partition covers {found} elements, carrier has {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("`{symbol}` breaks compatibility: {args:?} ~ {brgs:?} but results differ")]
    Incompatible { symbol: String, args: Vec<usize>, brgs: Vec<usize> },
}

/// Check that blockwise-related tuples always yield related results.
pub fn is_congruence(a: &FiniteAlgebra, p: &Partition) -> Result<(), CongruenceViolation> {
    if p.size() != a.carrier() {
        return Err(CongruenceViolation::WrongSize { expected: a.carrier(), found: p.size() });
    }
    for sym in 0..a.signature().len() {
        let arity = a.signature().arity(sym);
        for args in tuples(a.carrier(), arity) {
            // compare against the canonical representative tuple only; the
            // general case follows blockwise by transitivity
            let brgs: Vec<usize> =
                args.iter().map(|&x| p.representative(p.block_of(x))).collect();
            if !p.related(a.op(sym, &args), a.op(sym, &brgs)) {
                return Err(CongruenceViolation::Incompatible {
                    symbol: a.signature().name(sym).to_string(),
                    args,
                    brgs,
                });
            }
        }
    }
    Ok(())
}

/// Least congruence containing `pairs`: union-find seeded with the pairs,
/// then operation-compatibility propagation run to fixpoint.
pub fn generated_congruence(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Partition {
    let n = a.carrier();
    let mut uf = UnionFind::new(n);
    for &(x, y) in pairs {
        assert!(x < n && y < n, "pair ({x},{y}) outside carrier 0..{n}");
        uf.union(x, y);
    }
    loop {
        let mut changed = false;
        for sym in 0..a.signature().len() {
            let arity = a.signature().arity(sym);
            // group tuples by their blockwise image; results within one
            // group must merge
            let mut by_class: std::collections::HashMap<Vec<usize>, usize> =
                std::collections::HashMap::new();
            for args in tuples(n, arity) {
                let class: Vec<usize> = args.iter().map(|&x| uf.find(x)).collect();
                let out = a.op(sym, &args);
                match by_class.get(&class) {
                    Some(&prev) => {
                        if uf.union(prev, out) {
                            changed = true;
                        }
                    }
                    None => {
                        by_class.insert(class, out);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    uf.into_partition()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("not a congruence: {0}")]
    NotACongruence(CongruenceViolation),
}

/// Quotient algebra `A/Φ` (carrier = block ids ordered by least member,
/// operations on representatives) with the canonical projection.
pub fn quotient_algebra(
    a: &FiniteAlgebra,
    phi: &Partition,
) -> Result<(FiniteAlgebra, Homomorphism), QuotientError> {
    is_congruence(a, phi).map_err(QuotientError::NotACongruence)?;
    let q = FiniteAlgebra::from_fn(a.signature().clone(), phi.num_blocks(), |sym, blocks| {
        let reps: Vec<usize> = blocks.iter().map(|&b| phi.representative(b)).collect();
        phi.block_of(a.op(sym, &reps))
    });
    let map: Vec<usize> = (0..a.carrier()).map(|x| phi.block_of(x)).collect();
    let projection = Homomorphism::new(a.clone(), q.clone(), map)
        .expect("canonical projection onto a quotient is a homomorphism");
    Ok((q, projection))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("first congruence does not refine the second")]
    NotRefinement,
    #[error("not a congruence: {0}")]
    NotACongruence(CongruenceViolation),
}

/// The unique map `A/Φ -> A/Ψ` commuting with both projections, for Φ ⊆ Ψ.
pub fn factor_map(
    a: &FiniteAlgebra,
    phi: &Partition,
    psi: &Partition,
) -> Result<Homomorphism, FactorError> {
    is_congruence(a, phi).map_err(FactorError::NotACongruence)?;
    is_congruence(a, psi).map_err(FactorError::NotACongruence)?;
    if !phi.refines(psi) {
        return Err(FactorError::NotRefinement);
    }
    let (qphi, _) = quotient_algebra(a, phi).expect("validated above");
    let (qpsi, _) = quotient_algebra(a, psi).expect("validated above");
    let map: Vec<usize> =
        (0..phi.num_blocks()).map(|b| psi.block_of(phi.representative(b))).collect();
    Homomorphism::new(qphi, qpsi, map)
        .map_err(|_| FactorError::NotRefinement)
}

/// The `k`-th direct power: carrier = `k`-tuples in row-major order,
/// operations computed coordinatewise.
pub fn power_algebra(a: &FiniteAlgebra, k: usize) -> FiniteAlgebra {
    assert!(k >= 1, "power_algebra requires k >= 1");
    let n = a.carrier();
    let size = if n == 0 { 0 } else { table_len(n, k) };
    FiniteAlgebra::from_fn(a.signature().clone(), size, |sym, args| {
        let decoded: Vec<Vec<usize>> = args.iter().map(|&t| index_tuple(n, k, t)).collect();
        let coord: Vec<usize> = (0..k)
            .map(|c| {
                let column: Vec<usize> = decoded.iter().map(|t| t[c]).collect();
                a.op(sym, &column)
            })
            .collect();
        tuple_index(n, &coord)
    })
}

/// Coordinate projection `A^k -> A` as a homomorphism.
pub fn power_projection(a: &FiniteAlgebra, k: usize, coord: usize) -> Homomorphism {
    assert!(coord < k);
    let p = power_algebra(a, k);
    let n = a.carrier();
    let map: Vec<usize> = (0..p.carrier()).map(|t| index_tuple(n, k, t)[coord]).collect();
    Homomorphism::new(p, a.clone(), map).expect("coordinate projections are homomorphisms")
}
