//! Deterministic pools of random admissible monomial quiver algebras, used
//! by the property and acceptance suites. Everything is seeded; the same
//! seed yields the same pool.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldSpec};
use crate::module::{AlgRef, ModRef, Module};
use crate::presentation::{build_algebra, Arrow, Presentation, Relation};

#[derive(Clone, Copy, Debug)]
pub struct PoolConfig {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_dim: usize,
}

impl Default for PoolConfig {
    fn default() -> Self {
        PoolConfig { max_vertices: 4, max_arrows: 5, max_dim: 12 }
    }
}

/// One random monomial presentation. Three flavours keep the pool varied:
/// acyclic quivers (no relations needed), radical-square-zero quotients, and
/// random monomial relation sets at length bound 3.
fn random_presentation(rng: &mut ChaCha8Rng, cfg: &PoolConfig, field: FieldSpec) -> Presentation {
    let nv = rng.gen_range(1..=cfg.max_vertices);
    let na = rng.gen_range(0..=cfg.max_arrows);
    let mode = rng.gen_range(0..3u8);
    let mut arrows = Vec::new();
    for k in 0..na {
        let (s, t) = if mode == 0 {
            // acyclic: arrows go strictly upwards
            if nv == 1 {
                break;
            }
            let s = rng.gen_range(0..nv - 1);
            let t = rng.gen_range(s + 1..nv);
            (s, t)
        } else {
            (rng.gen_range(0..nv), rng.gen_range(0..nv))
        };
        arrows.push(Arrow { label: format!("{}", (b'a' + k as u8) as char), src: s, tgt: t });
    }
    // composable length-2 paths
    let mut paths2 = Vec::new();
    for (i, x) in arrows.iter().enumerate() {
        for (j, y) in arrows.iter().enumerate() {
            if x.tgt == y.src {
                paths2.push(vec![i, j]);
            }
        }
    }
    let (relations, length_bound) = match mode {
        0 => (Vec::new(), nv + 1),
        1 => {
            let rels: Vec<Relation> = paths2
                .into_iter()
                .map(|p| Relation { terms: vec![(1, 1, p)], line: 0 })
                .collect();
            (rels, 3)
        }
        _ => {
            let rels: Vec<Relation> = paths2
                .into_iter()
                .filter(|_| rng.gen_bool(0.7))
                .map(|p| Relation { terms: vec![(1, 1, p)], line: 0 })
                .collect();
            (rels, 3)
        }
    };
    Presentation {
        field,
        vertices: (1..=nv).map(|v| v.to_string()).collect(),
        arrows,
        relations,
        length_bound,
    }
}

/// Build one random admissible algebra, retrying until the result is
/// admissible and within the dimension budget.
pub fn random_algebra<F: Field>(f: &F, rng: &mut ChaCha8Rng, cfg: &PoolConfig) -> AlgRef<F> {
    loop {
        let p = random_presentation(rng, cfg, f.spec());
        match build_algebra(f.clone(), &p) {
            Ok(a) if a.dim() <= cfg.max_dim => return Arc::new(a),
            _ => continue,
        }
    }
}

/// A deterministic pool of `count` algebras.
pub fn pool<F: Field>(f: &F, seed: u64, count: usize, cfg: &PoolConfig) -> Vec<AlgRef<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_algebra(f, &mut rng, cfg)).collect()
}

/// A small menagerie of canonical modules over an algebra: simples,
/// projectives, radicals of projectives, and tops of radicals.
pub fn module_menagerie<F: Field>(alg: &AlgRef<F>) -> Vec<(String, ModRef<F>)> {
    let mut out = Vec::new();
    for c in 0..alg.num_classes() {
        let label = alg.class_label(c).to_string();
        let s = Module::simple(alg, c);
        let p = Module::projective(alg, alg.class_rep(c));
        let rad_rows = crate::module::rad_rows(&p);
        let (radp, _) = crate::module::submodule_from_span(&p, rad_rows);
        if !radp.is_zero() && radp.dim() < p.dim() {
            out.push((format!("rad P{label}"), radp));
        }
        out.push((format!("S{label}"), s));
        out.push((format!("P{label}"), p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn pools_are_deterministic_and_admissible() {
        let cfg = PoolConfig::default();
        let a = pool(&Rationals, 7, 10, &cfg);
        let b = pool(&Rationals, 7, 10, &cfg);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.dim(), y.dim());
            assert_eq!(x.labels(), y.labels());
        }
        for alg in &a {
            assert!(alg.dim() <= cfg.max_dim);
            alg.verify_associativity().unwrap();
        }
        let f5 = PrimeField::new(5);
        for alg in pool(&f5, 11, 10, &cfg) {
            assert!(alg.dim() <= cfg.max_dim);
            alg.verify_associativity().unwrap();
        }
    }
}
