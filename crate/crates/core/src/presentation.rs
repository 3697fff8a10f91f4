//! Quiver-with-relations presentations and the `.alg` file format.
//!
//! Path composition is left to right: `p*q` traverses `p` first, then `q`,
//! and modules are right modules throughout.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// One relation: a scalar combination of composable paths sharing source and
/// target, set to zero. Coefficients are exact integer ratios, mapped into
/// the base field when the algebra is built.
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<(i64, i64, Vec<usize>)>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub length_bound: usize,
}

/// A path in the quiver: a start vertex and a (possibly empty) list of
/// composable arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { src: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn tgt(&self, p: &Presentation) -> usize {
        self.arrows.last().map_or(self.src, |&a| p.arrows[a].tgt)
    }

    pub fn label(&self, p: &Presentation) -> String {
        if self.arrows.is_empty() {
            format!("e{}", p.vertices[self.src])
        } else {
            self.arrows.iter().map(|&a| p.arrows[a].label.clone()).collect::<Vec<_>>().join("*")
        }
    }
}

impl Presentation {
    /// All paths of length at most `max_len`, ordered by length, then
    /// lexicographically by arrow labels (trivial paths in vertex order).
    pub fn enumerate_paths(&self, max_len: usize) -> Result<Vec<Path>> {
        const PATH_CAP: usize = 100_000;
        let mut by_len: Vec<Vec<Path>> = vec![(0..self.vertices.len()).map(Path::trivial).collect()];
        for l in 1..=max_len {
            let mut next = Vec::new();
            for p in &by_len[l - 1] {
                let t = p.tgt(self);
                for (ai, arr) in self.arrows.iter().enumerate() {
                    if arr.src == t {
                        let mut q = p.clone();
                        q.arrows.push(ai);
                        next.push(q);
                    }
                }
            }
            next.sort_by(|a, b| {
                let la: Vec<&str> = a.arrows.iter().map(|&i| self.arrows[i].label.as_str()).collect();
                let lb: Vec<&str> = b.arrows.iter().map(|&i| self.arrows[i].label.as_str()).collect();
                la.cmp(&lb)
            });
            by_len.push(next);
            if by_len.iter().map(|v| v.len()).sum::<usize>() > PATH_CAP {
                return Err(Error::invalid(format!(
                    "path explosion: more than {PATH_CAP} paths of length <= {max_len}"
                )));
            }
        }
        Ok(by_len.into_iter().flatten().collect())
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::invalid(format!("duplicate vertex label `{v}`")));
            }
        }
        for r in &self.relations {
            let mut st: Option<(usize, usize)> = None;
            for (_, den, path) in &r.terms {
                if *den == 0 {
                    return Err(Error::parse(r.line, 1, "zero denominator in coefficient"));
                }
                if path.len() < 2 {
                    return Err(Error::parse(
                        r.line,
                        1,
                        "relations must involve paths of length >= 2",
                    ));
                }
                if path.len() > self.length_bound {
                    return Err(Error::parse(
                        r.line,
                        1,
                        format!(
                            "relation path of length {} exceeds lengthbound {}",
                            path.len(),
                            self.length_bound
                        ),
                    ));
                }
                for w in path.windows(2) {
                    let (a, b) = (&self.arrows[w[0]], &self.arrows[w[1]]);
                    if a.tgt != b.src {
                        return Err(Error::parse(
                            r.line,
                            1,
                            format!(
                                "non-composable path: `{}` ends at vertex {} but `{}` starts at vertex {}",
                                a.label, self.vertices[a.tgt], b.label, self.vertices[b.src]
                            ),
                        ));
                    }
                }
                let s = self.arrows[path[0]].src;
                let t = self.arrows[*path.last().unwrap()].tgt;
                match st {
                    None => st = Some((s, t)),
                    Some(prev) if prev != (s, t) => {
                        return Err(Error::parse(
                            r.line,
                            1,
                            "all paths in one relation must share source and target",
                        ));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Parse the line-oriented `.alg` DSL.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field: Option<FieldSpec> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut length_bound: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let col_of = |word: &str| raw.find(word).map(|c| c + 1).unwrap_or(1);
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "field" => {
                let arg = words.next().ok_or_else(|| Error::parse(line_no, col_of("field"), "missing field"))?;
                field = Some(
                    FieldSpec::parse(arg).map_err(|m| Error::parse(line_no, col_of(arg), m))?,
                );
            }
            "vertex" => {
                for v in words {
                    if vertex_index.contains_key(v) {
                        return Err(Error::parse(line_no, col_of(v), format!("duplicate vertex `{v}`")));
                    }
                    vertex_index.insert(v.to_string(), vertices.len());
                    vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let (label, s, t) = match (words.next(), words.next(), words.next()) {
                    (Some(l), Some(s), Some(t)) => (l, s, t),
                    _ => return Err(Error::parse(line_no, 1, "usage: arrow <label> <source> <target>")),
                };
                if arrow_index.contains_key(label) {
                    return Err(Error::parse(line_no, col_of(label), format!("duplicate arrow `{label}`")));
                }
                let src = *vertex_index
                    .get(s)
                    .ok_or_else(|| Error::parse(line_no, col_of(s), format!("unknown vertex `{s}`")))?;
                let tgt = *vertex_index
                    .get(t)
                    .ok_or_else(|| Error::parse(line_no, col_of(t), format!("unknown vertex `{t}`")))?;
                arrow_index.insert(label.to_string(), arrows.len());
                arrows.push(Arrow { label: label.to_string(), src, tgt });
            }
            "relation" => {
                let body = line.strip_prefix("relation").unwrap().trim();
                let terms = parse_relation(body, line_no, raw, &arrow_index)?;
                relations.push(Relation { terms, line: line_no });
            }
            "lengthbound" => {
                let arg = words
                    .next()
                    .ok_or_else(|| Error::parse(line_no, 1, "usage: lengthbound <n>"))?;
                let l: usize = arg
                    .parse()
                    .map_err(|_| Error::parse(line_no, col_of(arg), "lengthbound must be a positive integer"))?;
                if l == 0 {
                    return Err(Error::parse(line_no, col_of(arg), "lengthbound must be positive"));
                }
                length_bound = Some(l);
            }
            other => {
                return Err(Error::parse(line_no, col_of(other), format!("unknown directive `{other}`")));
            }
        }
    }

    let field = field.ok_or_else(|| Error::parse(1, 1, "missing `field` line"))?;
    if vertices.is_empty() {
        return Err(Error::parse(1, 1, "presentation needs at least one vertex"));
    }
    let length_bound = length_bound.unwrap_or(vertices.len() + 1);
    let p = Presentation { field, vertices, arrows, relations, length_bound };
    p.validate()?;
    Ok(p)
}

/// Relation body grammar: `term (+|- term)* = 0`,
/// `term := [int[/int] [*]] label (* label)+`.
fn parse_relation(
    body: &str,
    line: usize,
    raw: &str,
    arrow_index: &BTreeMap<String, usize>,
) -> Result<Vec<(i64, i64, Vec<usize>)>> {
    let col_of = |word: &str| raw.find(word).map(|c| c + 1).unwrap_or(1);
    let Some((lhs, rhs)) = body.split_once('=') else {
        return Err(Error::parse(line, 1, "relation needs `= 0`"));
    };
    if rhs.trim() != "0" {
        return Err(Error::parse(line, col_of(rhs.trim()), "right-hand side of a relation must be `0`"));
    }
    // Split the sum into signed terms.
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in lhs.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    terms.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(Error::parse(line, 1, "empty relation"));
    }

    let mut out = Vec::new();
    for (sign, term) in terms {
        let mut num = 1i64;
        let mut den = 1i64;
        let mut factors: Vec<&str> = term.split('*').map(|s| s.trim()).collect();
        // Allow a leading coefficient separated by whitespace: `2 a*b`.
        if let Some(first) = factors.first() {
            if let Some((coef, rest)) = first.split_once(char::is_whitespace) {
                if coef.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    factors[0] = rest.trim();
                    let (n, d) = parse_ratio(coef, line, col_of(coef))?;
                    num = n;
                    den = d;
                }
            } else if first.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let (n, d) = parse_ratio(first, line, col_of(first))?;
                num = n;
                den = d;
                factors.remove(0);
            }
        }
        let mut path = Vec::new();
        for f in factors {
            if f.is_empty() {
                return Err(Error::parse(line, 1, "empty factor in path"));
            }
            let ai = arrow_index
                .get(f)
                .ok_or_else(|| Error::parse(line, col_of(f), format!("unknown arrow `{f}`")))?;
            path.push(*ai);
        }
        out.push((sign * num, den, path));
    }
    Ok(out)
}

fn parse_ratio(text: &str, line: usize, col: usize) -> Result<(i64, i64)> {
    let parse_int = |t: &str| -> Result<i64> {
        t.parse().map_err(|_| Error::parse(line, col, format!("bad integer `{t}`")))
    };
    match text.split_once('/') {
        Some((n, d)) => Ok((parse_int(n)?, parse_int(d)?)),
        None => Ok((parse_int(text)?, 1)),
    }
}

/// Build the finite-dimensional algebra presented by `p` over the field `f`.
///
/// The basis consists of the path residues of length `< lengthbound` that
/// survive reduction modulo the relation ideal; paths of length
/// `> lengthbound` are treated as zero, and the construction fails unless
/// every path of length exactly `lengthbound` reduces to zero (so the
/// truncation is conservative).
pub fn build_algebra<F: Field>(f: F, p: &Presentation) -> Result<Algebra<F>> {
    if f.spec() != p.field {
        return Err(Error::invalid(format!(
            "field mismatch: presentation wants {}, got {}",
            p.field,
            f.spec()
        )));
    }
    let bound = p.length_bound;
    let paths = p.enumerate_paths(bound)?;
    let n_all = paths.len();
    let index: BTreeMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
    // Coordinates are reversed so that elimination pivots on the longest /
    // lexicographically largest paths and leaves short paths as residues.
    let coord = |pi: usize| n_all - 1 - pi;
    let path_of_coord = |c: usize| &paths[n_all - 1 - c];

    let mut ideal: Subspace<F> = Subspace::new(f.clone(), n_all);
    let mut worklist: Vec<Vec<F::Elem>> = Vec::new();
    for r in &p.relations {
        let mut v = vec![f.zero(); n_all];
        for (num, den, arrws) in &r.terms {
            let path = Path { src: p.arrows[arrws[0]].src, arrows: arrws.clone() };
            let pi = *index.get(&path).expect("validated relation path");
            let c = f.from_ratio(*num, *den)?;
            v[coord(pi)] = f.add(&v[coord(pi)], &c);
        }
        if ideal.insert(v.clone()) {
            worklist.push(v);
        }
    }
    // Close under truncated multiplication by arrows on both sides.
    while let Some(v) = worklist.pop() {
        for (ai, arr) in p.arrows.iter().enumerate() {
            for side in 0..2 {
                let mut w = vec![f.zero(); n_all];
                let mut any = false;
                for (c, x) in v.iter().enumerate() {
                    if f.is_zero(x) {
                        continue;
                    }
                    let q = path_of_coord(c);
                    let newq = if side == 0 {
                        // left multiply: arrow then q
                        if arr.tgt != q.src {
                            continue;
                        }
                        let mut arrows = vec![ai];
                        arrows.extend(&q.arrows);
                        Path { src: arr.src, arrows }
                    } else {
                        // right multiply: q then arrow
                        if q.tgt(p) != arr.src {
                            continue;
                        }
                        let mut arrows = q.arrows.clone();
                        arrows.push(ai);
                        Path { src: q.src, arrows }
                    };
                    if newq.len() > bound {
                        continue; // truncated: paths beyond the bound are zero
                    }
                    let pi = index[&newq];
                    w[coord(pi)] = f.add(&w[coord(pi)], x);
                    any = true;
                }
                if any && ideal.insert(w.clone()) {
                    worklist.push(w);
                }
            }
        }
    }

    // Admissibility witness: every path of full length must die.
    for (pi, q) in paths.iter().enumerate() {
        if q.len() == bound {
            let mut v = vec![f.zero(); n_all];
            v[coord(pi)] = f.one();
            if !ideal.contains(&v) {
                return Err(Error::invalid(format!(
                    "not admissible at lengthbound {}: path `{}` does not vanish modulo the relations",
                    bound,
                    q.label(p)
                )));
            }
        }
    }

    // Surviving path residues, in canonical order.
    let free = ideal.free_coords();
    let mut survivors: Vec<usize> = free.iter().map(|&c| n_all - 1 - c).collect();
    survivors.sort_unstable();
    let survivors: Vec<usize> = survivors.into_iter().filter(|&pi| paths[pi].len() < bound).collect();
    // Sanity: trivial paths and arrows always survive (the ideal sits in
    // paths of length >= 2).
    let n = survivors.len();
    let pos: BTreeMap<usize, usize> = survivors.iter().copied().enumerate().map(|(k, pi)| (pi, k)).collect();

    let reduce_to_basis = |pi: usize| -> Vec<F::Elem> {
        let mut v = vec![f.zero(); n_all];
        v[coord(pi)] = f.one();
        let r = ideal.reduce(v);
        let mut out = vec![f.zero(); n];
        for (c, x) in r.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let qi = n_all - 1 - c;
            let k = pos[&qi];
            out[k] = x.clone();
        }
        out
    };

    let mut labels = Vec::with_capacity(n);
    let mut src = Vec::with_capacity(n);
    let mut tgt = Vec::with_capacity(n);
    for &pi in &survivors {
        labels.push(paths[pi].label(p));
        src.push(paths[pi].src);
        tgt.push(paths[pi].tgt(p));
    }
    let mut mult = vec![vec![Vec::new(); n]; n];
    for (u, &pu) in survivors.iter().enumerate() {
        for (v, &pv) in survivors.iter().enumerate() {
            let a = &paths[pu];
            let b = &paths[pv];
            if a.tgt(p) != b.src {
                mult[u][v] = vec![f.zero(); n];
                continue;
            }
            let mut arrows = a.arrows.clone();
            arrows.extend(&b.arrows);
            let prod = Path { src: a.src, arrows };
            if prod.len() > bound {
                mult[u][v] = vec![f.zero(); n];
            } else {
                mult[u][v] = reduce_to_basis(index[&prod]);
            }
        }
    }

    let idempotents: Vec<usize> = (0..p.vertices.len()).collect();
    let gens: Vec<usize> = (0..n).filter(|&k| survivors[k] < p.vertices.len() + p.arrows.len()).collect();
    let radical_rows: Vec<usize> = (0..n).filter(|&k| !paths[survivors[k]].is_empty()).collect();

    let alg = Algebra::from_parts(
        f,
        labels,
        mult,
        idempotents,
        src,
        tgt,
        p.vertices.clone(),
        gens,
        crate::algebra::RadicalHint::SpannedByBasis(radical_rows),
    )?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "field Q\nvertex 1 2\narrow a 1 2\nlengthbound 3\n";

    #[test]
    fn parse_a2() {
        let p = parse_presentation(A2).unwrap();
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.arrows.len(), 1);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn parse_kalck() {
        let text = "field Q\nvertex 1 2 3\narrow a 1 3\narrow b 2 1\narrow c 3 2\n\
                    relation a*c = 0\nrelation b*a = 0\nlengthbound 4\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.arrows.len(), 3);
        assert_eq!(p.relations.len(), 2);
    }

    #[test]
    fn non_composable_relation_rejected() {
        let text = "field Q\nvertex 1 2\narrow a 1 2\nrelation a*a = 0\nlengthbound 3\n";
        let err = parse_presentation(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("non-composable"), "{msg}");
        assert!(msg.contains("line 4"), "{msg}");
    }

    #[test]
    fn mixed_endpoints_rejected() {
        let text = "field Q\nvertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 3\n\
                    arrow d 3 3\nrelation a*b + c*d = 0\nlengthbound 4\n";
        // a*b : 1 -> 3 and c*d : 1 -> 3 share endpoints; change one to differ
        assert!(parse_presentation(text).is_ok());
        let bad = "field Q\nvertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow d 3 3\n\
                   relation a*b + b*d = 0\nlengthbound 4\n";
        let err = parse_presentation(bad).unwrap_err();
        assert!(err.to_string().contains("share source and target"));
    }

    #[test]
    fn coefficient_syntax() {
        let text = "field Q\nvertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 2\n\
                    relation 2 a*b - 1/3 c*b = 0\nlengthbound 3\n";
        let p = parse_presentation(text).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!((r.terms[0].0, r.terms[0].1), (2, 1));
        assert_eq!((r.terms[1].0, r.terms[1].1), (-1, 3));
    }
}
