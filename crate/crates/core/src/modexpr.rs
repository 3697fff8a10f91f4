//! Module expressions (`S1`, `P2`, `rad P3`, `top X`, sums with `+`, `reg`)
//! and the `.mod` file format with explicit action matrices.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{
    direct_sum, quotient_by, rad_rows, submodule_from_span, AlgRef, ModRef, Module,
};

/// Resolve a module expression over the given algebra.
///
/// Grammar: `expr := term ('+' term)*`, `term := ('rad '|'top ')* atom`,
/// `atom := S<label> | P<label> | reg`.
pub fn parse_module_expr<F: Field>(alg: &AlgRef<F>, text: &str) -> Result<ModRef<F>> {
    let mut parts = Vec::new();
    for term in text.split('+') {
        parts.push(parse_term(alg, term.trim())?);
    }
    if parts.len() == 1 {
        Ok(parts.pop().unwrap())
    } else {
        Ok(direct_sum(&parts).0)
    }
}

fn parse_term<F: Field>(alg: &AlgRef<F>, term: &str) -> Result<ModRef<F>> {
    let term = term.trim();
    if let Some(rest) = term.strip_prefix("rad ") {
        let inner = parse_term(alg, rest)?;
        let rows = rad_rows(&inner);
        let (m, _) = submodule_from_span(&inner, rows);
        return Ok(m);
    }
    if let Some(rest) = term.strip_prefix("top ") {
        let inner = parse_term(alg, rest)?;
        let rows = rad_rows(&inner);
        return Ok(quotient_by(&inner, &rows).0);
    }
    if term == "reg" {
        return Ok(Module::regular(alg));
    }
    if let Some(label) = term.strip_prefix('S') {
        let c = alg
            .class_by_label(label)
            .ok_or_else(|| Error::invalid(format!("no simple class labelled `{label}`")))?;
        return Ok(Module::simple(alg, c));
    }
    if let Some(label) = term.strip_prefix('P') {
        let c = alg
            .class_by_label(label)
            .ok_or_else(|| Error::invalid(format!("no projective class labelled `{label}`")))?;
        return Ok(Module::projective(alg, alg.class_rep(c)));
    }
    Err(Error::invalid(format!(
        "cannot parse module expression `{term}` (expected S<label>, P<label>, reg, rad ..., top ..., sums with +)"
    )))
}

/// Parse a `.mod` file: an `algebra <path>` line (informational), `dim <n>`,
/// then one `action <basis-label>` block per algebra basis element with `n`
/// rows of `n` scalars. The module axioms are fully verified.
pub fn parse_mod_file<F: Field>(alg: &AlgRef<F>, text: &str) -> Result<ModRef<F>> {
    let f = alg.field().clone();
    let mut dim: Option<usize> = None;
    let mut actions: Vec<Option<Matrix<F>>> = vec![None; alg.dim()];
    let mut lines = text.lines().enumerate().peekable();
    while let Some((lineno, raw)) = lines.next() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "algebra" => {} // informational reference
            "dim" => {
                dim = Some(
                    words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| Error::parse(line_no, 1, "usage: dim <n>"))?,
                );
            }
            "action" => {
                let label = words
                    .next()
                    .ok_or_else(|| Error::parse(line_no, 1, "usage: action <basis label>"))?;
                let k = (0..alg.dim())
                    .find(|&k| alg.label(k) == label)
                    .ok_or_else(|| {
                        Error::parse(line_no, 1, format!("unknown basis element `{label}`"))
                    })?;
                let n = dim.ok_or_else(|| Error::parse(line_no, 1, "dim must come before actions"))?;
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let Some((rno, rline)) = lines.next() else {
                        return Err(Error::parse(line_no, 1, "action block ended early"));
                    };
                    let body = rline.split('#').next().unwrap_or("").trim();
                    let mut row = Vec::with_capacity(n);
                    for w in body.split_whitespace() {
                        row.push(parse_scalar(&f, w, rno + 1)?);
                    }
                    if row.len() != n {
                        return Err(Error::parse(rno + 1, 1, format!("expected {n} entries")));
                    }
                    rows.push(row);
                }
                actions[k] = Some(Matrix::from_rows(f.clone(), rows));
            }
            other => return Err(Error::parse(line_no, 1, format!("unknown directive `{other}`"))),
        }
    }
    let n = dim.ok_or_else(|| Error::parse(1, 1, "missing `dim` line"))?;
    let mats: Vec<Matrix<F>> = actions
        .into_iter()
        .enumerate()
        .map(|(k, a)| match a {
            Some(m) => Ok(m),
            None => {
                // omitted actions are zero (only valid for radical elements)
                let _ = k;
                Ok(Matrix::zero(f.clone(), n, n))
            }
        })
        .collect::<Result<_>>()?;
    Module::from_action(alg, mats, true)
}

fn parse_scalar<F: Field>(f: &F, w: &str, line: usize) -> Result<F::Elem> {
    let parse_int = |t: &str| -> Result<i64> {
        t.parse().map_err(|_| Error::parse(line, 1, format!("bad scalar `{t}`")))
    };
    match w.split_once('/') {
        Some((a, b)) => f.from_ratio(parse_int(a)?, parse_int(b)?),
        None => Ok(f.from_i64(parse_int(w)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::presentation::{build_algebra, parse_presentation};
    use std::sync::Arc;

    fn kalck() -> AlgRef<Rationals> {
        let p = parse_presentation(crate::fixtures::KALCK).unwrap();
        Arc::new(build_algebra(Rationals, &p).unwrap())
    }

    #[test]
    fn expressions_resolve() {
        let k = kalck();
        assert_eq!(parse_module_expr(&k, "S1").unwrap().dim(), 1);
        assert_eq!(parse_module_expr(&k, "P3").unwrap().dim(), 3);
        assert_eq!(parse_module_expr(&k, "rad P3").unwrap().dim(), 2);
        assert_eq!(parse_module_expr(&k, "top P3").unwrap().dim(), 1);
        assert_eq!(parse_module_expr(&k, "S1 + P2").unwrap().dim(), 3);
        assert_eq!(parse_module_expr(&k, "reg").unwrap().dim(), 7);
        assert!(parse_module_expr(&k, "S9").is_err());
        assert!(parse_module_expr(&k, "garbage").is_err());
    }

    #[test]
    fn mod_file_roundtrip() {
        let k = kalck();
        // S3 by hand: one-dimensional at vertex 3, radical acts as zero.
        let text = "algebra kalck.alg\ndim 1\naction e1\n0\naction e2\n0\naction e3\n1\n";
        let m = parse_mod_file(&k, text).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.component_dims(), &[0, 0, 1]);
        // a non-module is rejected: e1 acting as identity with e3 too
        let bad = "dim 1\naction e1\n1\naction e3\n1\n";
        assert!(parse_mod_file(&k, bad).is_err());
    }
}
