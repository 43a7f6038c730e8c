//! The command-line surface: a dispatcher over the pure core.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the witness
//! is printed), 2 on parse or usage errors. All output goes to the returned
//! string; `--json` switches reports to a machine-readable form, and the
//! path `-` reads standard input.

use std::fmt::Write as _;

use serde::Serialize;

use crate::adjunction::{
    check_triangles, counit, decompose, plonka_sum, universal_extension, unit, verify_adjunction,
    AdjunctionError, SumElement, SumLayout,
};
use crate::algebra::FiniteAlgebra;
use crate::format::{
    document_out, parse_document, serialize_document, to_canonical, AlgebraDocument,
    BandDocument, Document, DocumentError, MorphismDocument, MorphismPayload, PlonkaDocument,
    SemilatticeDocument, SystemDocument,
};
use crate::plonka::enumerate_plonka_operators;
use crate::semilattice::{free_ssl, ssl_reflection_of_algebra, SslMorphism};
use crate::system::{inverse_transpose, residuated_transpose, InductiveSystem, SystemMorphism};

const USAGE: &str = "\
usage: plonka <command> [args] [--json] [--bound N]

commands:
  check (algebra|ssl|lnb|plonka|system) FILE
                               validate a document; witness printed on failure
  sl FILE                      semilattice reflection of a band document
  m-adjoint FILE               semilattice reflection of an algebra document
  free-ssl N                   free sup-semilattice on N generators
  sum FILE                     Płonka sum of a system document
  decompose FILE               inductive system of a Płonka document
  unit FILE                    unit morphism of a system document
  extend MORPH ALG             extension of MORPH (into decompose(ALG)) to the sum
  roundtrip FILE               sum, decompose, counit and triangle checks
  verify-adjunction SYS ALG MORPH
                               factorization, uniqueness, triangle identities
  enumerate-plonka FILE        all Płonka operators of an algebra document
  transpose [--inverse] MORPH SYSTEM XI
                               transpose along a residuated index morphism

flags:
  --json       machine-readable reports
  --bound N    cap exhaustive searches (default 3): enumerate-plonka refuses
               carriers above N; verify-adjunction refuses more than (2N)^(2N)
               candidate maps
  --inverse    transpose in the other direction
";

struct Args {
    positional: Vec<String>,
    json: bool,
    bound: usize,
    inverse: bool,
}

enum CmdError {
    Usage(String),
    Check(String),
}

impl From<DocumentError> for CmdError {
    fn from(e: DocumentError) -> CmdError {
        if e.is_parse() {
            CmdError::Usage(e.to_string())
        } else {
            CmdError::Check(e.message().to_string())
        }
    }
}

impl From<AdjunctionError> for CmdError {
    fn from(e: AdjunctionError) -> CmdError {
        match e {
            AdjunctionError::SearchSpaceTooLarge { .. } => CmdError::Usage(e.to_string()),
            _ => CmdError::Check(e.to_string()),
        }
    }
}

/// Run one invocation. Never panics on malformed input; the exit code and
/// the full standard output are returned.
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    match parse_args(&args) {
        Ok(args) => match dispatch(&args) {
            Ok(output) => (0, output),
            Err(CmdError::Check(message)) => (1, format!("fail: {message}\n")),
            Err(CmdError::Usage(message)) => (2, format!("error: {message}\n")),
        },
        Err(message) => (2, format!("error: {message}\n{USAGE}")),
    }
}

fn parse_args(args: &[String]) -> Result<Args, String> {
    let mut positional = Vec::new();
    let mut json = false;
    let mut bound = 3usize;
    let mut inverse = false;
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--inverse" => inverse = true,
            "--bound" => {
                let value = iter.next().ok_or("--bound needs a value")?;
                bound = value.parse().map_err(|_| format!("invalid bound `{value}`"))?;
            }
            "--help" | "-h" => return Err("help requested".into()),
            other if other.starts_with("--") => return Err(format!("unknown flag `{other}`")),
            other => positional.push(other.to_string()),
        }
    }
    if positional.is_empty() {
        return Err("no command given".into());
    }
    Ok(Args { positional, json, bound, inverse })
}

fn read_input(path: &str) -> Result<String, CmdError> {
    if path == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
            .map_err(|e| CmdError::Usage(format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| CmdError::Usage(format!("reading {path}: {e}")))
}

fn load(path: &str) -> Result<Document, CmdError> {
    Ok(parse_document(&read_input(path)?)?)
}

fn positional<'a>(args: &'a Args, n: usize, usage: &str) -> Result<&'a str, CmdError> {
    args.positional
        .get(n)
        .map(String::as_str)
        .ok_or_else(|| CmdError::Usage(format!("expected argument: {usage}")))
}

fn dispatch(args: &Args) -> Result<String, CmdError> {
    match positional(args, 0, "<command>")? {
        "check" => cmd_check(args),
        "sl" => cmd_sl(args),
        "m-adjoint" => cmd_m_adjoint(args),
        "free-ssl" => cmd_free_ssl(args),
        "sum" => cmd_sum(args),
        "decompose" => cmd_decompose(args),
        "unit" => cmd_unit(args),
        "extend" => cmd_extend(args),
        "roundtrip" => cmd_roundtrip(args),
        "verify-adjunction" => cmd_verify_adjunction(args),
        "enumerate-plonka" => cmd_enumerate_plonka(args),
        "transpose" => cmd_transpose(args),
        other => Err(CmdError::Usage(format!("unknown command `{other}`\n{USAGE}"))),
    }
}

#[derive(Serialize)]
struct CheckReport<'a> {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

fn cmd_check(args: &Args) -> Result<String, CmdError> {
    let kind = positional(args, 1, "check (algebra|ssl|lnb|plonka|system) FILE")?;
    let wanted = match kind {
        "algebra" => "algebra",
        "ssl" => "semilattice",
        "lnb" => "band",
        "plonka" => "plonka",
        "system" => "system",
        other => return Err(CmdError::Usage(format!("unknown check kind `{other}`"))),
    };
    let path = positional(args, 2, "check ... FILE")?;
    let text = read_input(path)?;
    match parse_document(&text) {
        Ok(doc) if doc.kind() == wanted => {
            if args.json {
                Ok(to_canonical(&CheckReport { ok: true, witness: None }) + "\n")
            } else {
                Ok("pass\n".to_string())
            }
        }
        Ok(doc) => Err(CmdError::Usage(format!(
            "{path} is a {} document, expected {wanted}",
            doc.kind()
        ))),
        Err(e) if e.is_parse() => Err(e.into()),
        Err(e) => {
            if args.json {
                let report = CheckReport { ok: false, witness: Some(e.message()) };
                Err(CmdError::Check(to_canonical(&report)))
            } else {
                Err(CmdError::Check(e.message().to_string()))
            }
        }
    }
}

fn expect_band(doc: Document, path: &str) -> Result<BandDocument, CmdError> {
    match doc {
        Document::Band(b) => Ok(b),
        other => Err(CmdError::Usage(format!("{path}: expected a band document, found {}", other.kind()))),
    }
}

fn expect_algebra(doc: Document, path: &str) -> Result<AlgebraDocument, CmdError> {
    match doc {
        Document::Algebra(a) => Ok(a),
        other => Err(CmdError::Usage(format!("{path}: expected an algebra document, found {}", other.kind()))),
    }
}

fn expect_plonka(doc: Document, path: &str) -> Result<PlonkaDocument, CmdError> {
    match doc {
        Document::Plonka(p) => Ok(p),
        other => Err(CmdError::Usage(format!("{path}: expected a plonka document, found {}", other.kind()))),
    }
}

fn expect_system(doc: Document, path: &str) -> Result<SystemDocument, CmdError> {
    match doc {
        Document::System(s) => Ok(s),
        other => Err(CmdError::Usage(format!("{path}: expected a system document, found {}", other.kind()))),
    }
}

fn expect_morphism(doc: Document, path: &str) -> Result<MorphismDocument, CmdError> {
    match doc {
        Document::Morphism(m) => Ok(m),
        other => Err(CmdError::Usage(format!("{path}: expected a morphism document, found {}", other.kind()))),
    }
}

fn cmd_sl(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "sl FILE")?;
    let band = expect_band(load(path)?, path)?;
    let reflection = crate::band::sl_reflect(&band.band);
    Ok(serialize_document(&Document::Semilattice(SemilatticeDocument {
        semilattice: reflection.semilattice,
        names: None,
    })))
}

#[derive(Serialize)]
struct MAdjointReport {
    semilattice: crate::format::DocumentOut,
    unit: Vec<usize>,
}

fn cmd_m_adjoint(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "m-adjoint FILE")?;
    let algebra = expect_algebra(load(path)?, path)?;
    let reflection =
        ssl_reflection_of_algebra(&algebra.algebra).map_err(|e| CmdError::Check(e.to_string()))?;
    let doc = Document::Semilattice(SemilatticeDocument {
        semilattice: reflection.semilattice,
        names: None,
    });
    if args.json {
        let report = MAdjointReport {
            semilattice: document_out(&doc),
            unit: reflection.unit.map().to_vec(),
        };
        Ok(to_canonical(&report) + "\n")
    } else {
        Ok(serialize_document(&doc))
    }
}

fn cmd_free_ssl(args: &Args) -> Result<String, CmdError> {
    let n_text = positional(args, 1, "free-ssl N")?;
    let n: usize = n_text
        .parse()
        .map_err(|_| CmdError::Usage(format!("invalid generator count `{n_text}`")))?;
    if n > 16 {
        return Err(CmdError::Usage(format!("free semilattice on {n} generators is too large")));
    }
    let (ssl, _) = free_ssl(n);
    // elements are the nonempty generator subsets in bitmask order
    let names: Vec<String> = (1..=ssl.size())
        .map(|mask| {
            let members: Vec<String> =
                (0..n).filter(|g| mask & (1 << g) != 0).map(|g| g.to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    Ok(serialize_document(&Document::Semilattice(SemilatticeDocument {
        semilattice: ssl,
        names: Some(names),
    })))
}

/// Names of the sum carrier, when every fiber is named.
fn sum_names(doc: &SystemDocument) -> Option<Vec<String>> {
    let mut names = Vec::new();
    for (i, fiber_names) in doc.names.iter().enumerate() {
        let fiber_names = fiber_names.as_ref()?;
        debug_assert_eq!(fiber_names.len(), doc.system.algebra(i).carrier());
        names.extend(fiber_names.iter().cloned());
    }
    Some(names)
}

fn cmd_sum(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "sum FILE")?;
    let sys = expect_system(load(path)?, path)?;
    let sum = plonka_sum(&sys.system)?;
    Ok(serialize_document(&Document::Plonka(PlonkaDocument {
        plonka: sum,
        names: sum_names(&sys),
    })))
}

/// Decompose with names carried blockwise from the original carrier.
fn decompose_document(doc: &PlonkaDocument) -> SystemDocument {
    let dec = decompose(&doc.plonka);
    let names: Vec<Option<Vec<String>>> = dec
        .embedding()
        .iter()
        .map(|members| {
            doc.names
                .as_ref()
                .map(|names| members.iter().map(|&x| names[x].clone()).collect())
        })
        .collect();
    SystemDocument { system: dec.system().clone(), names }
}

fn cmd_decompose(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "decompose FILE")?;
    let plonka = expect_plonka(load(path)?, path)?;
    Ok(serialize_document(&Document::System(decompose_document(&plonka))))
}

fn cmd_unit(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "unit FILE")?;
    let sys_doc = expect_system(load(path)?, path)?;
    let eta = unit(&sys_doc.system)?;
    let sum_doc = PlonkaDocument { plonka: plonka_sum(&sys_doc.system)?, names: sum_names(&sys_doc) };
    let target_doc = decompose_document(&sum_doc);
    Ok(serialize_document(&Document::Morphism(MorphismDocument {
        source: Box::new(Document::System(sys_doc)),
        target: Box::new(Document::System(target_doc)),
        payload: MorphismPayload::System(eta),
    })))
}

fn cmd_extend(args: &Args) -> Result<String, CmdError> {
    let morph_path = positional(args, 1, "extend MORPH ALG")?;
    let alg_path = positional(args, 2, "extend MORPH ALG")?;
    let morph = expect_morphism(load(morph_path)?, morph_path)?;
    let q_doc = expect_plonka(load(alg_path)?, alg_path)?;
    let MorphismPayload::System(m) = &morph.payload else {
        return Err(CmdError::Usage(format!("{morph_path}: expected a system morphism")));
    };
    let extension = universal_extension(m, &q_doc.plonka)?;
    let source_names = match morph.source.as_ref() {
        Document::System(s) => sum_names(s),
        _ => None,
    };
    let sum_doc = PlonkaDocument { plonka: extension.source().clone(), names: source_names };
    Ok(serialize_document(&Document::Morphism(MorphismDocument {
        source: Box::new(Document::Plonka(sum_doc)),
        target: Box::new(Document::Plonka(q_doc)),
        payload: MorphismPayload::Plonka(extension),
    })))
}

#[derive(Serialize)]
struct RoundTripReport {
    counit_isomorphism: bool,
    triangle_decomposition: bool,
    triangle_sum: bool,
    blocks_match_fibers: bool,
}

fn cmd_roundtrip(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "roundtrip FILE")?;
    let sys_doc = expect_system(load(path)?, path)?;
    let sys = &sys_doc.system;
    let sum = plonka_sum(sys)?;
    let eta = unit(sys)?;
    let eps = counit(&sum);
    let counit_isomorphism = eps.inverse().is_some();
    let (triangle_decomposition, triangle_sum) = check_triangles(sys, &sum)?;
    // blocks of the decomposed sum are exactly the index fibers, in order
    let dec = decompose(&sum);
    let layout = SumLayout::of(sys);
    let blocks_match_fibers = dec.system().index().join_table() == sys.index().join_table()
        && (0..sys.index().size()).all(|i| {
            (0..sys.algebra(i).carrier())
                .all(|z| dec.block_of(layout.id_of(SumElement { index: i, value: z })) == i)
        })
        && eta.index_map() == (0..sys.index().size()).collect::<Vec<_>>();
    let report = RoundTripReport {
        counit_isomorphism,
        triangle_decomposition,
        triangle_sum,
        blocks_match_fibers,
    };
    let ok = counit_isomorphism && triangle_decomposition && triangle_sum && blocks_match_fibers;
    if args.json {
        let line = to_canonical(&report) + "\n";
        if ok {
            Ok(line)
        } else {
            Err(CmdError::Check(line))
        }
    } else if ok {
        Ok("counit: isomorphism; triangles: pass\n".to_string())
    } else {
        Err(CmdError::Check(format!(
            "counit: {}; triangles: {}; blocks: {}",
            if counit_isomorphism { "isomorphism" } else { "not an isomorphism" },
            if triangle_decomposition && triangle_sum { "pass" } else { "fail" },
            if blocks_match_fibers { "match" } else { "mismatch" },
        )))
    }
}

#[derive(Serialize)]
struct AdjunctionJsonReport {
    factorization: bool,
    matching_morphisms: usize,
    unique_is_extension: bool,
    triangle_decomposition: bool,
    triangle_sum: bool,
}

fn cmd_verify_adjunction(args: &Args) -> Result<String, CmdError> {
    let sys_path = positional(args, 1, "verify-adjunction SYS ALG MORPH")?;
    let alg_path = positional(args, 2, "verify-adjunction SYS ALG MORPH")?;
    let morph_path = positional(args, 3, "verify-adjunction SYS ALG MORPH")?;
    let sys_doc = expect_system(load(sys_path)?, sys_path)?;
    let q_doc = expect_plonka(load(alg_path)?, alg_path)?;
    let morph = expect_morphism(load(morph_path)?, morph_path)?;
    let MorphismPayload::System(m) = &morph.payload else {
        return Err(CmdError::Usage(format!("{morph_path}: expected a system morphism")));
    };
    if m.source() != &sys_doc.system {
        return Err(CmdError::Check(format!(
            "{morph_path}: the morphism's source is not the system in {sys_path}"
        )));
    }
    let max_candidates = (2 * args.bound as u64)
        .checked_pow(2 * args.bound as u32)
        .unwrap_or(u64::MAX);
    let report = verify_adjunction(&sys_doc.system, &q_doc.plonka, m, max_candidates)?;
    let mut out = String::new();
    if args.json {
        let _ = writeln!(
            out,
            "{}",
            to_canonical(&AdjunctionJsonReport {
                factorization: report.factorization,
                matching_morphisms: report.matching_morphisms,
                unique_is_extension: report.unique_is_extension,
                triangle_decomposition: report.triangle_decomposition,
                triangle_sum: report.triangle_sum,
            })
        );
    } else {
        for line in report.lines() {
            let _ = writeln!(out, "{line}");
        }
    }
    if report.passed() {
        Ok(out)
    } else {
        Err(CmdError::Check(out.trim_end().to_string()))
    }
}

#[derive(Serialize)]
struct EnumerationReport {
    count: usize,
    operators: Vec<serde_json::Value>,
}

fn cmd_enumerate_plonka(args: &Args) -> Result<String, CmdError> {
    let path = positional(args, 1, "enumerate-plonka FILE")?;
    let algebra = expect_algebra(load(path)?, path)?;
    let found = enumerate_plonka_operators(&algebra.algebra, args.bound)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let n = algebra.algebra.carrier();
    let nested: Vec<serde_json::Value> = found
        .iter()
        .map(|d| {
            serde_json::Value::Array(
                (0..n)
                    .map(|x| serde_json::Value::from(d[x * n..(x + 1) * n].to_vec()))
                    .collect(),
            )
        })
        .collect();
    if args.json {
        return Ok(to_canonical(&EnumerationReport { count: found.len(), operators: nested }) + "\n");
    }
    let mut out = format!("{} operator(s)\n", found.len());
    for table in &nested {
        let _ = writeln!(out, "{}", to_canonical(table));
    }
    Ok(out)
}

fn cmd_transpose(args: &Args) -> Result<String, CmdError> {
    let morph_path = positional(args, 1, "transpose MORPH SYSTEM XI")?;
    let sys_path = positional(args, 2, "transpose MORPH SYSTEM XI")?;
    let xi_path = positional(args, 3, "transpose MORPH SYSTEM XI")?;
    let morph = expect_morphism(load(morph_path)?, morph_path)?;
    let other = expect_system(load(sys_path)?, sys_path)?;
    let xi_doc = expect_morphism(load(xi_path)?, xi_path)?;
    let MorphismPayload::System(m) = &morph.payload else {
        return Err(CmdError::Usage(format!("{morph_path}: expected a system morphism")));
    };
    let MorphismPayload::Semilattice(xi) = &xi_doc.payload else {
        return Err(CmdError::Usage(format!("{xi_path}: expected a semilattice morphism")));
    };
    let result = if args.inverse {
        // SYSTEM is the target-side system A; the morphism is v: B -> A_zeta
        transpose_inverse_dispatch(xi, &other.system, m)
    } else {
        // SYSTEM is the source-side system B; the morphism is u: B_xi -> A
        residuated_transpose(xi, m.target(), &other.system, m)
    }
    .map_err(|e| CmdError::Check(e.to_string()))?;
    Ok(serialize_document(&Document::Morphism(MorphismDocument {
        source: Box::new(Document::System(SystemDocument {
            system: result.source().clone(),
            names: vec![None; result.source().index().size()],
        })),
        target: Box::new(Document::System(SystemDocument {
            system: result.target().clone(),
            names: vec![None; result.target().index().size()],
        })),
        payload: MorphismPayload::System(result.clone()),
    })))
}

fn transpose_inverse_dispatch(
    xi: &SslMorphism,
    a_sys: &InductiveSystem,
    v: &SystemMorphism,
) -> Result<SystemMorphism, crate::system::SystemError> {
    inverse_transpose(xi, a_sys, v.source(), v)
}

/// Convenience wrapper: parse one algebra out of a document already known to
/// be an algebra (used by the Python bindings).
pub fn algebra_of_document(doc: &Document) -> Option<&FiniteAlgebra> {
    match doc {
        Document::Algebra(a) => Some(&a.algebra),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        run_command(args.iter().map(|s| s.to_string()))
    }

    fn write_temp(name: &str, text: &str) -> String {
        let dir = std::env::temp_dir().join("plonka-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&[]).0, 2);
        assert_eq!(run(&["bogus"]).0, 2);
        assert_eq!(run(&["check", "lnb"]).0, 2);
        assert_eq!(run(&["check", "nope", "x"]).0, 2);
        assert_eq!(run(&["check", "lnb", "/nonexistent/file"]).0, 2);
    }

    #[test]
    fn check_band_pass_and_fail() {
        let good = write_temp("leftzero.alg", r#"{"kind": "band", "carrier": 2, "d": [[0, 0], [1, 1]]}"#);
        let (code, out) = run(&["check", "lnb", &good]);
        assert_eq!((code, out.as_str()), (0, "pass\n"));
        let bad = write_temp("rightzero.alg", r#"{"kind": "band", "carrier": 2, "d": [[0, 1], [0, 1]]}"#);
        let (code, out) = run(&["check", "lnb", &bad]);
        assert_eq!(code, 1);
        assert!(out.contains("D3 at (0,0,1)"), "{out}");
    }

    #[test]
    fn check_rejects_wrong_kind() {
        let band = write_temp("band2.alg", r#"{"kind": "band", "carrier": 1, "d": [[0]]}"#);
        assert_eq!(run(&["check", "algebra", &band]).0, 2);
    }

    #[test]
    fn malformed_json_exits_two() {
        let bad = write_temp("broken.alg", "{\"kind\": ");
        let (code, out) = run(&["check", "lnb", &bad]);
        assert_eq!(code, 2);
        assert!(out.contains("parse error"), "{out}");
    }

    #[test]
    fn free_ssl_names_subsets() {
        let (code, out) = run(&["free-ssl", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"names\": [\"{0}\", \"{1}\", \"{0,1}\"]"), "{out}");
        assert_eq!(run(&["free-ssl", "x"]).0, 2);
    }

    #[test]
    fn sl_of_band_document() {
        let band = write_temp("meet.alg", r#"{"kind": "band", "carrier": 2, "d": [[0, 0], [0, 1]]}"#);
        let (code, out) = run(&["sl", &band]);
        assert_eq!(code, 0);
        assert!(out.contains("\"join\": [[0, 0], [0, 1]]"), "{out}");
    }

    #[test]
    fn enumerate_plonka_respects_bound_flag() {
        let alg = write_temp(
            "c4.alg",
            r#"{"kind": "algebra", "signature": {"symbols": [["s", 2]]}, "carrier": 2, "tables": [[[0, 0], [0, 0]]]}"#,
        );
        let (code, out) = run(&["enumerate-plonka", &alg]);
        assert_eq!(code, 0);
        assert!(out.starts_with("1 operator(s)\n"), "{out}");
        assert!(out.contains("[[0, 0], [1, 1]]"), "{out}");
        let (code, out) = run(&["enumerate-plonka", &alg, "--bound", "1"]);
        assert_eq!(code, 2, "{out}");
    }
}
