//! Raw structure-constant input (`.sc` files).
//!
//! The user supplies a basis, a multiplication table, and the list of basis
//! elements that form a complete set of orthogonal primitive idempotents.
//! Everything is verified, not assumed: idempotent axioms, associativity,
//! and primitivity. The basis is then re-coordinatised so that every basis
//! element lives in a single Peirce block `e_i A e_j`.



use crate::algebra::{Algebra, Ideal};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Clone, Debug)]
pub struct ScData {
    pub field: FieldSpec,
    pub dim: usize,
    pub labels: Vec<String>,
    /// 0-based basis indices of the idempotents.
    pub idempotents: Vec<usize>,
    /// `(i, j, product coefficients)` with exact rational entries.
    pub products: Vec<(usize, usize, Vec<(i64, i64)>)>,
}

/// Parse the line-oriented `.sc` format: `dim n`, `field Q|p`, optional
/// `labels ...`, `idempotents i1 i2 ...` (1-based), then `mult i j = c1 .. cn`
/// lines; omitted products are zero.
pub fn parse_sc(text: &str) -> Result<ScData> {
    let mut dim: Option<usize> = None;
    let mut field: Option<FieldSpec> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut idempotents: Option<Vec<usize>> = None;
    let mut products = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "dim" => {
                let d = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, 1, "usage: dim <n>"))?;
                dim = Some(d);
            }
            "field" => {
                let arg = words.next().ok_or_else(|| Error::parse(line_no, 1, "missing field"))?;
                field = Some(FieldSpec::parse(arg).map_err(|m| Error::parse(line_no, 1, m))?);
            }
            "labels" => {
                labels = Some(words.map(|s| s.to_string()).collect());
            }
            "idempotents" => {
                let mut idx = Vec::new();
                for w in words {
                    let i: usize = w
                        .parse()
                        .map_err(|_| Error::parse(line_no, 1, format!("bad index `{w}`")))?;
                    if i == 0 {
                        return Err(Error::parse(line_no, 1, "indices are 1-based"));
                    }
                    idx.push(i - 1);
                }
                idempotents = Some(idx);
            }
            "mult" => {
                let (i, j) = match (words.next(), words.next()) {
                    (Some(a), Some(b)) => {
                        let pi: usize = a
                            .parse()
                            .map_err(|_| Error::parse(line_no, 1, format!("bad index `{a}`")))?;
                        let pj: usize = b
                            .parse()
                            .map_err(|_| Error::parse(line_no, 1, format!("bad index `{b}`")))?;
                        if pi == 0 || pj == 0 {
                            return Err(Error::parse(line_no, 1, "indices are 1-based"));
                        }
                        (pi - 1, pj - 1)
                    }
                    _ => return Err(Error::parse(line_no, 1, "usage: mult <i> <j> = c1 .. cn")),
                };
                let eq = words.next();
                if eq != Some("=") {
                    return Err(Error::parse(line_no, 1, "usage: mult <i> <j> = c1 .. cn"));
                }
                let mut coeffs = Vec::new();
                for w in words {
                    let (n, d) = match w.split_once('/') {
                        Some((a, b)) => (
                            a.parse()
                                .map_err(|_| Error::parse(line_no, 1, format!("bad scalar `{w}`")))?,
                            b.parse()
                                .map_err(|_| Error::parse(line_no, 1, format!("bad scalar `{w}`")))?,
                        ),
                        None => (
                            w.parse()
                                .map_err(|_| Error::parse(line_no, 1, format!("bad scalar `{w}`")))?,
                            1,
                        ),
                    };
                    coeffs.push((n, d));
                }
                products.push((i, j, coeffs));
            }
            other => return Err(Error::parse(line_no, 1, format!("unknown directive `{other}`"))),
        }
    }

    let dim = dim.ok_or_else(|| Error::parse(1, 1, "missing `dim` line"))?;
    let field = field.ok_or_else(|| Error::parse(1, 1, "missing `field` line"))?;
    let idempotents = idempotents.ok_or_else(|| Error::parse(1, 1, "missing `idempotents` line"))?;
    let labels = labels.unwrap_or_else(|| (1..=dim).map(|i| format!("b{i}")).collect());
    if labels.len() != dim {
        return Err(Error::invalid("labels line has wrong length"));
    }
    for &(i, j, ref c) in &products {
        if i >= dim || j >= dim || c.len() != dim {
            return Err(Error::invalid(format!("mult {} {} line has wrong shape", i + 1, j + 1)));
        }
    }
    for &i in &idempotents {
        if i >= dim {
            return Err(Error::invalid("idempotent index out of range"));
        }
    }
    Ok(ScData { field, dim, labels, idempotents, products })
}

/// Build a verified, Peirce-adapted algebra from raw structure constants.
pub fn build_from_sc<F: Field>(f: F, sc: &ScData) -> Result<Algebra<F>> {
    if f.spec() != sc.field {
        return Err(Error::invalid(format!(
            "field mismatch: file wants {}, got {}",
            sc.field,
            f.spec()
        )));
    }
    let n = sc.dim;
    let zero_row = vec![f.zero(); n];
    let mut table = vec![vec![zero_row.clone(); n]; n];
    for (i, j, coeffs) in &sc.products {
        let mut v = Vec::with_capacity(n);
        for &(num, den) in coeffs {
            v.push(f.from_ratio(num, den)?);
        }
        table[*i][*j] = v;
    }
    let m = sc.idempotents.len();
    let idem_vectors: Vec<Vec<F::Elem>> = sc
        .idempotents
        .iter()
        .map(|&e| {
            let mut v = vec![f.zero(); n];
            v[e] = f.one();
            v
        })
        .collect();
    let (alg, _u) = Algebra::from_raw(
        f.clone(),
        &sc.labels,
        &table,
        &idem_vectors,
        (1..=m).map(|i| i.to_string()).collect(),
        None,
        true,
    )?;

    // Primitivity of each supplied idempotent: the corner e_i A e_i must be
    // local, i.e. its semisimple quotient is a division ring.
    for a in 0..m {
        let (corner, _) = alg.corner_algebra(&[a])?;
        let rad = Ideal { space: corner.radical().clone() };
        let (ss, _) = corner.quotient_algebra(&rad)?;
        match ss.is_division_ring() {
            crate::verdict::Verdict::True => {}
            crate::verdict::Verdict::False { .. } => {
                return Err(Error::invalid(format!(
                    "idempotent {} is not primitive",
                    sc.labels[sc.idempotents[a]]
                )));
            }
            crate::verdict::Verdict::Undetermined { reason } => {
                return Err(Error::undetermined(format!(
                    "cannot certify primitivity of idempotent {}: {reason}",
                    sc.labels[sc.idempotents[a]]
                )));
            }
        }
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    const DUAL: &str = "dim 2\nfield Q\nidempotents 1\nmult 1 1 = 1 0\nmult 1 2 = 0 1\nmult 2 1 = 0 1\nmult 2 2 = 0 0\n";

    #[test]
    fn dual_numbers_build() {
        let sc = parse_sc(DUAL).unwrap();
        let a = build_from_sc(Rationals, &sc).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.radical().dim(), 1);
        assert!(a.is_division_ring().is_false());
        a.verify_associativity().unwrap();
    }

    #[test]
    fn bad_associativity_rejected() {
        // b*b = e but b*e = 0 breaks associativity (b*b)*b vs b*(b*b)
        let text = "dim 2\nfield Q\nidempotents 1\nmult 1 1 = 1 0\nmult 1 2 = 0 1\nmult 2 1 = 0 0\nmult 2 2 = 1 0\n";
        let sc = parse_sc(text).unwrap();
        let err = build_from_sc(Rationals, &sc).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("associativity") || msg.contains("identity"), "{msg}");
    }

    #[test]
    fn non_primitive_idempotent_rejected() {
        // k x k with the identity declared as a single primitive idempotent;
        // over F_5 this is decided outright, over Q it stays undetermined.
        let text = "dim 2\nfield 5\nidempotents 1\nmult 1 1 = 1 0\nmult 1 2 = 0 1\nmult 2 1 = 0 1\nmult 2 2 = 0 1\n";
        let sc = parse_sc(text).unwrap();
        let err = build_from_sc(crate::field::PrimeField::new(5), &sc).unwrap_err();
        assert!(err.to_string().contains("not primitive"), "{err}");

        let text_q = text.replace("field 5", "field Q");
        let sc_q = parse_sc(&text_q).unwrap();
        let err_q = build_from_sc(Rationals, &sc_q).unwrap_err();
        assert!(matches!(err_q, crate::error::Error::Undetermined(_)), "{err_q}");
    }
}
