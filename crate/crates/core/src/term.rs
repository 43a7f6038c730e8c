//! Terms over a signature and a variable set, depth-bounded enumeration, and
//! the evaluation fold into a finite algebra.
//!
//! A term is a tree; a variable, a constant and a composite are mutually
//! exclusive shapes. Operation nodes reference symbols by index into the
//! signature, so printing and parsing are always relative to one.

use thiserror::Error;

use crate::algebra::{FiniteAlgebra, Signature};
use crate::enumerate::tuples;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// Index into the variable set.
    Var(usize),
    /// Symbol index into the signature; children match the symbol's arity.
    Op(usize, Vec<Term>),
}

impl Term {
    /// Height of the tree: leaves (variables and constants) have height 0.
    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(_, children) => {
                children.iter().map(Term::height).max().map_or(0, |h| h + 1)
            }
        }
    }

    /// Prefix-notation rendering: `name` for leaves, `name(t,...,t)` otherwise.
    pub fn display(&self, sig: &Signature, vars: &[String]) -> String {
        match self {
            Term::Var(v) => vars[*v].clone(),
            Term::Op(sym, children) => {
                let mut out = sig.name(*sym).to_string();
                if !children.is_empty() {
                    out.push('(');
                    for (i, child) in children.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        out.push_str(&child.display(sig, vars));
                    }
                    out.push(')');
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermParseError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("`{symbol}` expects {expected} arguments, found {found}")]
    Arity { symbol: String, expected: usize, found: usize },
    #[error("`{name}` is both a variable and an operation symbol")]
    AmbiguousName { name: String },
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

#[derive(Debug, PartialEq, Eq)]
enum Token {
    Name(String),
    Open,
    Close,
    Comma,
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn next(&mut self) -> Result<Token, TermParseError> {
        self.skip_ws();
        let Some(&b) = self.text.get(self.pos) else {
            return Ok(Token::End);
        };
        self.pos += 1;
        match b {
            b'(' => Ok(Token::Open),
            b')' => Ok(Token::Close),
            b',' => Ok(Token::Comma),
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = self.pos - 1;
                while self
                    .text
                    .get(self.pos)
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                Ok(Token::Name(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()))
            }
            other => Err(TermParseError::Parse {
                pos: self.pos - 1,
                message: format!("unexpected character `{}`", other as char),
            }),
        }
    }
}

/// Parse prefix notation relative to a signature and variable names.
///
/// A bare name is a variable or a constant; `name(t,...,t)` applies an
/// operation symbol, whose arity must match the argument count exactly.
pub fn parse_term(text: &str, sig: &Signature, vars: &[String]) -> Result<Term, TermParseError> {
    for name in vars {
        if sig.index_of(name).is_some() {
            return Err(TermParseError::AmbiguousName { name: name.clone() });
        }
    }
    let mut lexer = Lexer::new(text);
    let term = parse_inner(&mut lexer, sig, vars)?;
    let pos = lexer.peek_pos();
    match lexer.next()? {
        Token::End => Ok(term),
        _ => Err(TermParseError::Parse { pos, message: "trailing input after term".into() }),
    }
}

fn parse_inner(
    lexer: &mut Lexer,
    sig: &Signature,
    vars: &[String],
) -> Result<Term, TermParseError> {
    let start = lexer.peek_pos();
    let name = match lexer.next()? {
        Token::Name(name) => name,
        _ => {
            return Err(TermParseError::Parse { pos: start, message: "expected a name".into() })
        }
    };
    if let Some(v) = vars.iter().position(|n| *n == name) {
        return Ok(Term::Var(v));
    }
    let Some(sym) = sig.index_of(&name) else {
        return Err(TermParseError::Parse {
            pos: start,
            message: format!("unknown name `{name}`"),
        });
    };
    let arity = sig.arity(sym);
    // constants may be written bare
    let mark = lexer.pos;
    let next_pos = lexer.peek_pos();
    match lexer.next()? {
        Token::Open => {}
        Token::End if arity == 0 => return Ok(Term::Op(sym, Vec::new())),
        _ if arity == 0 => {
            lexer.pos = mark;
            return Ok(Term::Op(sym, Vec::new()));
        }
        _ => {
            return Err(TermParseError::Parse {
                pos: next_pos,
                message: format!("expected `(` after `{name}`"),
            })
        }
    }
    if arity == 0 {
        return match lexer.next()? {
            Token::Close => Ok(Term::Op(sym, Vec::new())),
            _ => Err(TermParseError::Arity { symbol: name, expected: 0, found: 1 }),
        };
    }
    let mut children = Vec::new();
    loop {
        children.push(parse_inner(lexer, sig, vars)?);
        let pos = lexer.peek_pos();
        match lexer.next()? {
            Token::Comma => {
                if children.len() == arity {
                    return Err(TermParseError::Arity {
                        symbol: name,
                        expected: arity,
                        found: arity + 1,
                    });
                }
            }
            Token::Close => {
                if children.len() != arity {
                    return Err(TermParseError::Arity {
                        symbol: name,
                        expected: arity,
                        found: children.len(),
                    });
                }
                return Ok(Term::Op(sym, children));
            }
            _ => {
                return Err(TermParseError::Parse {
                    pos,
                    message: "expected `,` or `)`".into(),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("term does not fit the algebra's signature")]
    SignatureMismatch,
    #[error("variable {index} has no value in the environment")]
    UnboundVariable { index: usize },
    #[error("environment value {value} is outside the carrier")]
    EnvOutOfRange { value: usize },
}

/// The fold: variables through `env`, operation nodes through the tables.
pub fn evaluate_term(t: &Term, a: &FiniteAlgebra, env: &[usize]) -> Result<usize, EvalError> {
    match t {
        Term::Var(v) => {
            let &value = env.get(*v).ok_or(EvalError::UnboundVariable { index: *v })?;
            if value >= a.carrier() {
                return Err(EvalError::EnvOutOfRange { value });
            }
            Ok(value)
        }
        Term::Op(sym, children) => {
            if *sym >= a.signature().len() || children.len() != a.signature().arity(*sym) {
                return Err(EvalError::SignatureMismatch);
            }
            let args = children
                .iter()
                .map(|c| evaluate_term(c, a, env))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(a.op(*sym, &args))
        }
    }
}

/// All terms of height at most `depth`, in a fixed order: lower heights
/// first; within height 0, variables then constant symbols; within a height,
/// symbols in signature order with child tuples lexicographic by the position
/// of each child in this same enumeration.
pub fn enumerate_terms(sig: &Signature, vars: usize, depth: usize) -> Vec<Term> {
    let mut terms: Vec<Term> = Vec::new();
    let mut heights: Vec<usize> = Vec::new();
    for v in 0..vars {
        terms.push(Term::Var(v));
        heights.push(0);
    }
    for sym in 0..sig.len() {
        if sig.arity(sym) == 0 {
            terms.push(Term::Op(sym, Vec::new()));
            heights.push(0);
        }
    }
    for h in 1..=depth {
        let pool = terms.len();
        let mut layer = Vec::new();
        for sym in 0..sig.len() {
            let arity = sig.arity(sym);
            if arity == 0 {
                continue;
            }
            for pick in tuples(pool, arity) {
                if pick.iter().map(|&i| heights[i]).max() != Some(h - 1) {
                    continue;
                }
                layer.push(Term::Op(sym, pick.iter().map(|&i| terms[i].clone()).collect()));
            }
        }
        for t in layer {
            terms.push(t);
            heights.push(h);
        }
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;

    fn sig2() -> Signature {
        Signature::of(&[("s", 2)])
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|n| n.to_string()).collect()
    }

    #[test]
    fn parse_variable_and_application() {
        let v = vars(&["x"]);
        assert_eq!(parse_term("x", &sig2(), &v).unwrap(), Term::Var(0));
        assert_eq!(
            parse_term("s(x, x)", &sig2(), &v).unwrap(),
            Term::Op(0, vec![Term::Var(0), Term::Var(0)])
        );
        assert_eq!(
            parse_term(" s ( x , x ) ", &sig2(), &v).unwrap(),
            Term::Op(0, vec![Term::Var(0), Term::Var(0)])
        );
    }

    #[test]
    fn parse_arity_violation() {
        let v = vars(&["x"]);
        assert_eq!(
            parse_term("s(x)", &sig2(), &v).unwrap_err(),
            TermParseError::Arity { symbol: "s".into(), expected: 2, found: 1 }
        );
        assert!(matches!(
            parse_term("s(x,x,x)", &sig2(), &v).unwrap_err(),
            TermParseError::Arity { .. }
        ));
    }

    #[test]
    fn parse_rejects_garbage_with_position() {
        let v = vars(&["x"]);
        match parse_term("s(x,?)", &sig2(), &v).unwrap_err() {
            TermParseError::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_term("s(x,x) x", &sig2(), &v).is_err());
        assert!(parse_term("", &sig2(), &v).is_err());
    }

    #[test]
    fn parse_constant_forms() {
        let sig = Signature::of(&[("s", 2), ("c", 0)]);
        let v = vars(&["x"]);
        let c = Term::Op(1, Vec::new());
        assert_eq!(parse_term("c", &sig, &v).unwrap(), c);
        assert_eq!(parse_term("c()", &sig, &v).unwrap(), c);
        assert_eq!(
            parse_term("s(c,x)", &sig, &v).unwrap(),
            Term::Op(0, vec![c, Term::Var(0)])
        );
    }

    #[test]
    fn parse_rejects_ambiguous_name() {
        let v = vars(&["s"]);
        assert_eq!(
            parse_term("s", &sig2(), &v).unwrap_err(),
            TermParseError::AmbiguousName { name: "s".into() }
        );
    }

    #[test]
    fn evaluation_fold() {
        let a = FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0);
        let v = vars(&["x"]);
        let x = parse_term("x", &sig2(), &v).unwrap();
        assert_eq!(evaluate_term(&x, &a, &[1]), Ok(1));
        let t = parse_term("s(x,x)", &sig2(), &v).unwrap();
        assert_eq!(evaluate_term(&t, &a, &[1]), Ok(0));
        let nested = parse_term("s(s(x,x),x)", &sig2(), &v).unwrap();
        assert_eq!(evaluate_term(&nested, &a, &[1]), Ok(0));
    }

    #[test]
    fn evaluation_errors() {
        let a = FiniteAlgebra::from_fn(sig2(), 2, |_, _| 0);
        assert_eq!(
            evaluate_term(&Term::Var(3), &a, &[1]),
            Err(EvalError::UnboundVariable { index: 3 })
        );
        assert_eq!(
            evaluate_term(&Term::Op(5, vec![]), &a, &[]),
            Err(EvalError::SignatureMismatch)
        );
        assert_eq!(
            evaluate_term(&Term::Op(0, vec![Term::Var(0)]), &a, &[0]),
            Err(EvalError::SignatureMismatch)
        );
    }

    #[test]
    fn enumeration_order_and_counts() {
        let sig = sig2();
        assert_eq!(enumerate_terms(&sig, 2, 0), vec![Term::Var(0), Term::Var(1)]);
        assert_eq!(
            enumerate_terms(&sig, 1, 1),
            vec![Term::Var(0), Term::Op(0, vec![Term::Var(0), Term::Var(0)])]
        );
        let depth1 = enumerate_terms(&sig, 2, 1);
        assert_eq!(depth1.len(), 6); // 2 variables + 2^2 composites
        assert_eq!(
            depth1[2..]
                .iter()
                .map(|t| t.display(&sig, &vars(&["x0", "x1"])))
                .collect::<Vec<_>>(),
            vec!["s(x0,x0)", "s(x0,x1)", "s(x1,x0)", "s(x1,x1)"]
        );
    }

    #[test]
    fn enumeration_heights_are_exact() {
        let sig = sig2();
        let all = enumerate_terms(&sig, 1, 3);
        for t in &all {
            assert!(t.height() <= 3);
        }
        // no duplicates
        for (i, t) in all.iter().enumerate() {
            assert!(!all[i + 1..].contains(t));
        }
    }

    #[test]
    fn print_parse_round_trip_on_enumerated_terms() {
        let sig = Signature::of(&[("s", 2), ("u", 1)]);
        let names = vars(&["x", "y"]);
        for t in enumerate_terms(&sig, 2, 2) {
            let text = t.display(&sig, &names);
            assert_eq!(parse_term(&text, &sig, &names).unwrap(), t);
        }
    }

    #[test]
    fn evaluation_is_compositional_on_enumeration() {
        // evaluate(s(t1,t2)) = F_s(evaluate(t1), evaluate(t2)) up to depth 3
        let sig = sig2();
        for table in crate::enumerate::tuples(2, 4) {
            let a = FiniteAlgebra::new(sig.clone(), 2, vec![table]).unwrap();
            for t in enumerate_terms(&sig, 2, 3) {
                if let Term::Op(sym, children) = &t {
                    let env = [1, 0];
                    let whole = evaluate_term(&t, &a, &env).unwrap();
                    let parts: Vec<usize> = children
                        .iter()
                        .map(|c| evaluate_term(c, &a, &env).unwrap())
                        .collect();
                    assert_eq!(whole, a.op(*sym, &parts));
                }
            }
        }
    }

    // Any assignment of carrier values to the enumerated terms that agrees
    // with the environment on variables and commutes with every operation
    // node must coincide with the evaluation fold.
    #[test]
    fn fold_is_unique_at_finite_depth() {
        let sig = sig2();
        let a = FiniteAlgebra::new(sig.clone(), 2, vec![vec![0, 1, 1, 0]]).unwrap();
        let terms = enumerate_terms(&sig, 1, 2);
        let env = [1];
        let expected: Vec<usize> =
            terms.iter().map(|t| evaluate_term(t, &a, &env).unwrap()).collect();
        let index_of = |t: &Term| terms.iter().position(|u| u == t).unwrap();
        let mut matching = 0;
        for assign in crate::enumerate::all_maps(terms.len(), a.carrier()) {
            let agrees = terms.iter().enumerate().all(|(i, t)| match t {
                Term::Var(v) => assign[i] == env[*v],
                Term::Op(sym, children) => {
                    let parts: Vec<usize> =
                        children.iter().map(|c| assign[index_of(c)]).collect();
                    assign[i] == a.op(*sym, &parts)
                }
            });
            if agrees {
                assert_eq!(assign, expected);
                matching += 1;
            }
        }
        assert_eq!(matching, 1);
    }
}
