//! Python bindings: the main types and operations of the toolkit, exposed
//! as thin wrappers. Carriers are `0..n`, tables are flat row-major lists,
//! and every constructor validates, raising `ValueError` with the law and
//! witness on failure.

use std::collections::{BTreeMap, HashMap};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use plonka_core::plonka as plonka_alg;
use plonka_core::{adjunction, algebra, band, format, semilattice, system, term};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Signature {
    inner: algebra::Signature,
}

#[pymethods]
impl Signature {
    #[new]
    fn new(symbols: Vec<(String, usize)>) -> PyResult<Self> {
        Ok(Signature { inner: algebra::Signature::new(symbols).map_err(value_error)? })
    }

    fn symbols(&self) -> Vec<(String, usize)> {
        self.inner.symbols().to_vec()
    }

    fn restrict_nonzero(&self) -> Signature {
        Signature { inner: self.inner.restrict_nonzero() }
    }

    fn is_constant_free(&self) -> bool {
        self.inner.is_constant_free()
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self
            .inner
            .symbols()
            .iter()
            .map(|(n, a)| format!("{n}/{a}"))
            .collect();
        format!("Signature({})", parts.join(", "))
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct FiniteAlgebra {
    inner: algebra::FiniteAlgebra,
}

#[pymethods]
impl FiniteAlgebra {
    /// Build from flat row-major tables, one per symbol.
    #[new]
    fn new(signature: Signature, carrier: usize, tables: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = algebra::FiniteAlgebra::new(signature.inner, carrier, tables)
            .map_err(value_error)?;
        Ok(FiniteAlgebra { inner })
    }

    #[getter]
    fn carrier(&self) -> usize {
        self.inner.carrier()
    }

    #[getter]
    fn signature(&self) -> Signature {
        Signature { inner: self.inner.signature().clone() }
    }

    fn table(&self, symbol: usize) -> Vec<usize> {
        self.inner.table(symbol).to_vec()
    }

    fn op(&self, symbol: usize, args: Vec<usize>) -> usize {
        self.inner.op(symbol, &args)
    }

    fn generated_subalgebra(&self, seed: Vec<usize>) -> Vec<usize> {
        algebra::generated_subalgebra(&self.inner, &seed)
    }

    /// Blocks of the least congruence containing the given pairs.
    fn generated_congruence(&self, pairs: Vec<(usize, usize)>) -> Vec<Vec<usize>> {
        algebra::generated_congruence(&self.inner, &pairs).blocks().to_vec()
    }

    /// Quotient by the least congruence containing `pairs`; returns the
    /// quotient algebra and the projection map.
    fn quotient(&self, pairs: Vec<(usize, usize)>) -> PyResult<(FiniteAlgebra, Vec<usize>)> {
        let phi = algebra::generated_congruence(&self.inner, &pairs);
        let (q, pr) = algebra::quotient_algebra(&self.inner, &phi).map_err(value_error)?;
        Ok((FiniteAlgebra { inner: q }, pr.map().to_vec()))
    }

    fn power(&self, k: usize) -> PyResult<FiniteAlgebra> {
        if k == 0 {
            return Err(value_error("power requires k >= 1"));
        }
        let size = u32::try_from(k)
            .ok()
            .filter(|&k| k <= 16)
            .and_then(|k| (self.inner.carrier() as u64).checked_pow(k))
            .filter(|&s| s <= 1 << 20);
        if size.is_none() {
            return Err(value_error(format!(
                "carrier {}^{k} is too large",
                self.inner.carrier()
            )));
        }
        Ok(FiniteAlgebra { inner: algebra::power_algebra(&self.inner, k) })
    }

    /// Evaluate a prefix-notation term under an environment for the named
    /// variables.
    fn evaluate(&self, text: &str, variables: Vec<String>, env: Vec<usize>) -> PyResult<usize> {
        let parsed =
            term::parse_term(text, self.inner.signature(), &variables).map_err(value_error)?;
        term::evaluate_term(&parsed, &self.inner, &env).map_err(value_error)
    }

    /// All Płonka operator tables for this algebra (flat row-major), up to
    /// the carrier bound.
    #[pyo3(signature = (bound = 3))]
    fn plonka_operators(&self, bound: usize) -> PyResult<Vec<Vec<usize>>> {
        plonka_alg::enumerate_plonka_operators(&self.inner, bound).map_err(value_error)
    }

    /// The semilattice reflection and its unit map.
    fn semilattice_reflection(&self) -> PyResult<(SupSemilattice, Vec<usize>)> {
        let r = semilattice::ssl_reflection_of_algebra(&self.inner).map_err(value_error)?;
        Ok((SupSemilattice { inner: r.semilattice }, r.unit.map().to_vec()))
    }

    fn __repr__(&self) -> String {
        format!("FiniteAlgebra(carrier={})", self.inner.carrier())
    }

    fn __eq__(&self, other: &FiniteAlgebra) -> bool {
        self.inner == other.inner
    }
}

/// First counterexample of the homomorphism condition, or None when `map`
/// is a homomorphism.
#[pyfunction]
fn homomorphism_counterexample(
    map: Vec<usize>,
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
) -> Option<String> {
    algebra::check_homomorphism(&map, &source.inner, &target.inner)
        .err()
        .map(|e| e.to_string())
}

/// All terms of height at most `depth`, rendered in prefix notation.
#[pyfunction]
fn enumerate_terms(signature: &Signature, variables: usize, depth: usize) -> Vec<String> {
    let names: Vec<String> = (0..variables).map(|v| format!("x{v}")).collect();
    term::enumerate_terms(&signature.inner, variables, depth)
        .iter()
        .map(|t| t.display(&signature.inner, &names))
        .collect()
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct SupSemilattice {
    inner: semilattice::SupSemilattice,
}

#[pymethods]
impl SupSemilattice {
    /// Build from a flat row-major join table; rejects non-semilattices.
    #[new]
    fn new(carrier: usize, join: Vec<usize>) -> PyResult<Self> {
        Ok(SupSemilattice {
            inner: semilattice::SupSemilattice::new(carrier, join).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn chain(n: usize) -> SupSemilattice {
        SupSemilattice { inner: semilattice::SupSemilattice::chain(n) }
    }

    #[staticmethod]
    fn free(generators: usize) -> (SupSemilattice, Vec<usize>) {
        let (ssl, embedding) = semilattice::free_ssl(generators);
        (SupSemilattice { inner: ssl }, embedding)
    }

    #[getter]
    fn carrier(&self) -> usize {
        self.inner.size()
    }

    fn join(&self, x: usize, y: usize) -> usize {
        self.inner.join(x, y)
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.inner.leq(x, y)
    }

    fn join_table(&self) -> Vec<usize> {
        self.inner.join_table().to_vec()
    }

    /// Interpret every symbol of a constant-free signature as the join.
    fn join_algebra(&self, signature: &Signature) -> PyResult<FiniteAlgebra> {
        Ok(FiniteAlgebra {
            inner: semilattice::join_algebra(&self.inner, &signature.inner)
                .map_err(value_error)?,
        })
    }

    /// Left adjoint of a join morphism out of this semilattice, or None.
    fn residual_left_adjoint(&self, target: &SupSemilattice, map: Vec<usize>) -> PyResult<Option<Vec<usize>>> {
        let xi = semilattice::SslMorphism::new(self.inner.clone(), target.inner.clone(), map)
            .map_err(value_error)?;
        Ok(semilattice::residual_left_adjoint(&xi).ok().map(|z| z.map().to_vec()))
    }

    fn __repr__(&self) -> String {
        format!("SupSemilattice(carrier={})", self.inner.size())
    }

    fn __eq__(&self, other: &SupSemilattice) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct LeftNormalBand {
    inner: band::LeftNormalBand,
}

#[pymethods]
impl LeftNormalBand {
    /// Build from a flat row-major table; rejects D1-D3 violations with the
    /// axiom and witness.
    #[new]
    fn new(carrier: usize, d: Vec<usize>) -> PyResult<Self> {
        Ok(LeftNormalBand {
            inner: band::LeftNormalBand::new(carrier, d).map_err(value_error)?,
        })
    }

    #[getter]
    fn carrier(&self) -> usize {
        self.inner.size()
    }

    fn d(&self, x: usize, y: usize) -> usize {
        self.inner.d(x, y)
    }

    /// The iterate of the operation over a nonempty tuple.
    fn iterate(&self, xs: Vec<usize>) -> PyResult<usize> {
        if xs.is_empty() {
            return Err(value_error("iterate needs a nonempty tuple"));
        }
        self.inner.iterate(&xs).map_err(value_error)
    }

    /// Blocks of the relation induced by the operation.
    fn induced_relation(&self) -> Vec<Vec<usize>> {
        self.inner.induced_relation().blocks().to_vec()
    }

    /// The semilattice of blocks and the projection onto it.
    fn semilattice_reflection(&self) -> (SupSemilattice, Vec<usize>) {
        let r = band::sl_reflect(&self.inner);
        (SupSemilattice { inner: r.semilattice }, r.projection.map().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("LeftNormalBand(carrier={})", self.inner.size())
    }
}

/// First violated band axiom of a candidate table, or None when it is a
/// left normal band.
#[pyfunction]
fn lnb_counterexample(carrier: usize, d: Vec<usize>) -> Option<String> {
    band::validate_lnb(carrier, &d).err().map(|e| e.to_string())
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct PlonkaAlgebra {
    inner: plonka_alg::PlonkaAlgebra,
}

#[pymethods]
impl PlonkaAlgebra {
    /// Pair an algebra over a constant-free signature with an operator
    /// table; rejects D1-D5 violations with the law and witness.
    #[new]
    fn new(algebra: FiniteAlgebra, d: Vec<usize>) -> PyResult<Self> {
        Ok(PlonkaAlgebra {
            inner: plonka_alg::PlonkaAlgebra::new(algebra.inner, d).map_err(value_error)?,
        })
    }

    #[getter]
    fn carrier(&self) -> usize {
        self.inner.carrier()
    }

    #[getter]
    fn algebra(&self) -> FiniteAlgebra {
        FiniteAlgebra { inner: self.inner.algebra().clone() }
    }

    #[getter]
    fn band(&self) -> LeftNormalBand {
        LeftNormalBand { inner: self.inner.band().clone() }
    }

    /// Violations of the laws derived from D1-D5 (always empty).
    fn derived_law_violations(&self) -> Vec<String> {
        plonka_alg::verify_derived_laws(&self.inner)
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    /// Split into the inductive system over the block semilattice; returns
    /// the system and the blockwise embedding into the original carrier.
    fn decompose(&self) -> (InductiveSystem, Vec<Vec<usize>>) {
        let dec = adjunction::decompose(&self.inner);
        (
            InductiveSystem { inner: dec.system().clone() },
            dec.embedding().to_vec(),
        )
    }

    /// The counit map: (block, position) back to the original element, as a
    /// map from the sum of the decomposition onto this algebra.
    fn counit(&self) -> Vec<usize> {
        adjunction::counit(&self.inner).map().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("PlonkaAlgebra(carrier={})", self.inner.carrier())
    }

    fn __eq__(&self, other: &PlonkaAlgebra) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct InductiveSystem {
    inner: system::InductiveSystem,
}

#[pymethods]
impl InductiveSystem {
    /// Build from an index semilattice, one algebra per index, and the
    /// transition maps for strictly comparable pairs keyed by `(i, j)`.
    #[new]
    fn new(
        signature: Signature,
        index: SupSemilattice,
        algebras: Vec<FiniteAlgebra>,
        transitions: HashMap<(usize, usize), Vec<usize>>,
    ) -> PyResult<Self> {
        let algebras = algebras.into_iter().map(|a| a.inner).collect();
        let transitions: BTreeMap<(usize, usize), Vec<usize>> =
            transitions.into_iter().collect();
        Ok(InductiveSystem {
            inner: system::InductiveSystem::new(
                signature.inner,
                index.inner,
                algebras,
                transitions,
            )
            .map_err(value_error)?,
        })
    }

    #[getter]
    fn index(&self) -> SupSemilattice {
        SupSemilattice { inner: self.inner.index().clone() }
    }

    fn algebra(&self, i: usize) -> FiniteAlgebra {
        FiniteAlgebra { inner: self.inner.algebra(i).clone() }
    }

    fn transition(&self, i: usize, j: usize) -> Vec<usize> {
        self.inner.transition(i, j).to_vec()
    }

    /// The Płonka sum: operations act at the join index after pushing
    /// arguments along the transitions.
    fn plonka_sum(&self) -> PyResult<PlonkaAlgebra> {
        Ok(PlonkaAlgebra { inner: adjunction::plonka_sum(&self.inner).map_err(value_error)? })
    }

    /// Sum elements in carrier order, as (index, value) pairs.
    fn sum_elements(&self) -> Vec<(usize, usize)> {
        adjunction::sum_elements(&self.inner)
            .iter()
            .map(|e| (e.index, e.value))
            .collect()
    }

    /// The unit morphism into the decomposition of the sum, as
    /// (index_map, components).
    fn unit(&self) -> PyResult<(Vec<usize>, Vec<Vec<usize>>)> {
        let eta = adjunction::unit(&self.inner).map_err(value_error)?;
        Ok((eta.index_map().to_vec(), eta.components().to_vec()))
    }

    /// Check the universal property of the sum against its own unit:
    /// factorization, uniqueness by exhaustive search, and both triangle
    /// identities. Returns a dict-like report.
    #[pyo3(signature = (max_candidates = 1_000_000))]
    fn verify_adjunction(&self, max_candidates: u64) -> PyResult<AdjunctionReport> {
        let q = adjunction::plonka_sum(&self.inner).map_err(value_error)?;
        let m = adjunction::unit(&self.inner).map_err(value_error)?;
        let report = adjunction::verify_adjunction(&self.inner, &q, &m, max_candidates)
            .map_err(value_error)?;
        Ok(AdjunctionReport { inner: report })
    }

    fn __repr__(&self) -> String {
        format!("InductiveSystem(index={})", self.inner.index().size())
    }

    fn __eq__(&self, other: &InductiveSystem) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(frozen)]
struct AdjunctionReport {
    inner: adjunction::AdjunctionReport,
}

#[pymethods]
impl AdjunctionReport {
    #[getter]
    fn factorization(&self) -> bool {
        self.inner.factorization
    }

    #[getter]
    fn matching_morphisms(&self) -> usize {
        self.inner.matching_morphisms
    }

    #[getter]
    fn triangle_identities(&self) -> bool {
        self.inner.triangle_decomposition && self.inner.triangle_sum
    }

    fn passed(&self) -> bool {
        self.inner.passed()
    }

    fn __repr__(&self) -> String {
        self.inner
            .lines()
            .join("; ")
            .to_string()
    }
}

/// Parse a document and return `(kind, canonical_text)`.
#[pyfunction]
fn canonicalize_document(text: &str) -> PyResult<(String, String)> {
    let doc = format::parse_document(text).map_err(value_error)?;
    Ok((doc.kind().to_string(), format::serialize_document(&doc)))
}

/// Run the command-line interface in-process: returns (exit_code, output).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    plonka_core::cli::run_command(args)
}

#[pymodule]
fn plonka(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Signature>()?;
    m.add_class::<FiniteAlgebra>()?;
    m.add_class::<SupSemilattice>()?;
    m.add_class::<LeftNormalBand>()?;
    m.add_class::<PlonkaAlgebra>()?;
    m.add_class::<InductiveSystem>()?;
    m.add_class::<AdjunctionReport>()?;
    m.add_function(wrap_pyfunction!(homomorphism_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_terms, m)?)?;
    m.add_function(wrap_pyfunction!(lnb_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize_document, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
