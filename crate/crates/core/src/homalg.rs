//! Minimal projective resolutions, Ext and Tor with explicit cocycles,
//! Yoneda realisation of degree-one classes, universal extensions, and
//! projective/global dimension.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, SpanSolver, Subspace};
use crate::module::{
    direct_sum, hom_space, kernel, projective_cover, AlgRef, ModRef, Module, ModuleMap, Ses,
};
use crate::tensor::{tensor_over, Bimodule};

/// A minimal projective resolution `... -> P_1 -> P_0 -> M -> 0`.
/// `maps[0]` is the cover `P_0 -> M`; `maps[k]` is `P_k -> P_{k-1}`.
pub struct Resolution<F: Field> {
    pub module: ModRef<F>,
    pub maps: Vec<ModuleMap<F>>,
    /// Class multiplicities of each term.
    pub mults: Vec<Vec<usize>>,
    pub terminated: bool,
    pub cap: usize,
}

impl<F: Field> Resolution<F> {
    /// Number of computed terms `P_0..P_{len-1}`.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn term(&self, k: usize) -> Option<&ModRef<F>> {
        self.maps.get(k).map(|d| &d.src)
    }

    /// Projective dimension, when the resolution terminated.
    pub fn pd(&self) -> Option<usize> {
        if !self.terminated {
            return None;
        }
        // minimal resolution: last term nonzero unless the module is zero
        Some(self.maps.len().saturating_sub(1))
    }
}

/// Compute the minimal projective resolution out to `cap` terms past the
/// cover, stopping early when a kernel vanishes.
pub fn min_resolution<F: Field>(m: &ModRef<F>, cap: usize) -> Resolution<F> {
    let mut maps: Vec<ModuleMap<F>> = Vec::new();
    let mut mults: Vec<Vec<usize>> = Vec::new();
    if m.is_zero() {
        return Resolution { module: m.clone(), maps, mults, terminated: true, cap };
    }
    let (cover, mult0) = projective_cover(m);
    let mut current_kernel = kernel(&cover);
    maps.push(cover);
    mults.push(mult0);
    let mut terminated = current_kernel.0.is_zero();
    while !terminated && maps.len() <= cap {
        let (ker, incl) = current_kernel;
        let (cover, mult) = projective_cover(&ker);
        let d = cover.then(&incl);
        current_kernel = kernel(&cover);
        // translate the kernel into the new projective term: kernel of the
        // composite equals kernel of the cover (incl is injective)
        maps.push(d);
        mults.push(mult);
        terminated = current_kernel.0.is_zero();
    }
    Resolution { module: m.clone(), maps, mults, terminated, cap }
}

/// Shared store of resolutions, keyed by module identity. Entries only ever
/// grow; a cached resolution is reused when it already reaches the requested
/// depth or has terminated.
pub struct ResCache<F: Field> {
    store: Mutex<HashMap<u64, Arc<Resolution<F>>>>,
}

impl<F: Field> Default for ResCache<F> {
    fn default() -> Self {
        ResCache { store: Mutex::new(HashMap::new()) }
    }
}

impl<F: Field> ResCache<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn resolution(&self, m: &ModRef<F>, cap: usize) -> Arc<Resolution<F>> {
        let mut store = self.store.lock().unwrap();
        if let Some(r) = store.get(&m.id()) {
            if r.terminated || r.len() > cap {
                return r.clone();
            }
        }
        let r = Arc::new(min_resolution(m, cap));
        store.insert(m.id(), r.clone());
        r
    }
}

/// One Ext class: coordinates in the computed basis and a representing
/// cocycle defined on the `p`-th term of the minimal resolution (equivalently
/// on the `p`-th syzygy, through which it factors).
pub struct ExtClass<F: Field> {
    pub degree: usize,
    pub coords: Vec<F::Elem>,
    pub cocycle: ModuleMap<F>,
}

/// `Ext^p(X, Y)` with a frozen basis of cocycles.
pub struct ExtGroup<F: Field> {
    pub degree: usize,
    pub dim: usize,
    pub classes: Vec<ExtClass<F>>,
    /// True when the resolution terminated, so vanishing beyond the cap is
    /// unconditional.
    pub certified: bool,
    pub resolution: Arc<Resolution<F>>,
    pub target: ModRef<F>,
    #[allow(dead_code)]
    hom_basis: Vec<ModuleMap<F>>,
    hom_solver: Option<SpanSolver<F>>,
    coboundaries: Subspace<F>,
    class_solver: Option<SpanSolver<F>>,
}

fn flatten<F: Field>(mat: &Matrix<F>) -> Vec<F::Elem> {
    let mut v = Vec::with_capacity(mat.nrows() * mat.ncols());
    for r in 0..mat.nrows() {
        v.extend(mat.row(r).iter().cloned());
    }
    v
}

impl<F: Field> ExtGroup<F> {
    /// Class coordinates of an arbitrary cocycle `P_p -> Y`; `None` when the
    /// map is not a cocycle of this group.
    pub fn coordinates_of(&self, cocycle: &ModuleMap<F>) -> Option<Vec<F::Elem>> {
        if self.dim == 0 {
            return Some(Vec::new());
        }
        let solver = self.hom_solver.as_ref()?;
        let c = solver.coords(&flatten(&cocycle.mat))?;
        let reduced = self.coboundaries.reduce(c);
        self.class_solver.as_ref()?.coords(&reduced)
    }
}

/// Compute `Ext^p(x, y)`. Fails with `Undetermined` when the resolution cap
/// is reached before degree `p + 1` without termination.
pub fn ext<F: Field>(
    cache: &ResCache<F>,
    x: &ModRef<F>,
    y: &ModRef<F>,
    p: usize,
    resolution_cap: usize,
) -> Result<ExtGroup<F>> {
    let res = cache.resolution(x, resolution_cap.max(p + 1));
    ext_with_resolution(&res, y, p)
}

pub fn ext_with_resolution<F: Field>(
    res: &Arc<Resolution<F>>,
    y: &ModRef<F>,
    p: usize,
) -> Result<ExtGroup<F>> {
    let f = y.field().clone();
    let empty = |certified: bool| ExtGroup {
        degree: p,
        dim: 0,
        classes: Vec::new(),
        certified,
        resolution: res.clone(),
        target: y.clone(),
        hom_basis: Vec::new(),
        hom_solver: None,
        coboundaries: Subspace::new(f.clone(), 0),
        class_solver: None,
    };
    if p >= res.len() {
        if res.terminated {
            return Ok(empty(true));
        }
        return Err(Error::undetermined(format!(
            "resolution cap {} reached before degree {}",
            res.cap, p
        )));
    }
    if !res.terminated && p + 1 >= res.len() {
        return Err(Error::undetermined(format!(
            "resolution cap {} reached before degree {}",
            res.cap,
            p + 1
        )));
    }
    let pp = res.term(p).unwrap().clone();
    let hom_p = hom_space(&pp, y);
    if hom_p.is_empty() {
        return Ok(empty(res.terminated));
    }
    let flats: Vec<Vec<F::Elem>> = hom_p.iter().map(|h| flatten(&h.mat)).collect();
    let solver = SpanSolver::new(f.clone(), pp.dim() * y.dim(), &flats);
    let dim_hp = hom_p.len();

    // Kernel of the outgoing differential Hom(P_p, y) -> Hom(P_{p+1}, y).
    let cocycles: Vec<Vec<F::Elem>> = if p + 1 < res.len() {
        let d_next = &res.maps[p + 1]; // P_{p+1} -> P_p
        let rows: Vec<Vec<F::Elem>> = hom_p
            .iter()
            .map(|h| flatten(&d_next.mat.mul(&h.mat)))
            .collect();
        Matrix::from_rows(f.clone(), rows).transpose().kernel_basis()
    } else {
        // terminated: everything is a cocycle
        (0..dim_hp)
            .map(|k| {
                let mut v = vec![f.zero(); dim_hp];
                v[k] = f.one();
                v
            })
            .collect()
    };

    // Image of the incoming differential Hom(P_{p-1}, y) -> Hom(P_p, y).
    let mut cob = Subspace::new(f.clone(), dim_hp);
    if p > 0 {
        let d_p = &res.maps[p]; // P_p -> P_{p-1}
        let prev = res.term(p - 1).unwrap().clone();
        for h in hom_space(&prev, y) {
            let comp = d_p.mat.mul(&h.mat);
            if let Some(c) = solver.coords(&flatten(&comp)) {
                cob.insert(c);
            }
        }
    }

    // Class representatives: cocycles independent modulo coboundaries.
    let mut reduced_reps: Vec<Vec<F::Elem>> = Vec::new();
    let mut classes = Vec::new();
    let mut grow = cob.clone();
    for z in cocycles {
        let red = grow.reduce(z.clone());
        if red.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        grow.insert(z.clone());
        reduced_reps.push(cob.reduce(z.clone()));
        let mut mat = Matrix::zero(f.clone(), pp.dim(), y.dim());
        for (k, c) in z.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            mat = mat.add(&hom_p[k].mat.scale(c));
        }
        classes.push(ExtClass {
            degree: p,
            coords: Vec::new(),
            cocycle: ModuleMap::new(pp.clone(), y.clone(), mat),
        });
    }
    let dim = classes.len();
    let class_solver = if dim > 0 {
        Some(SpanSolver::new(f.clone(), dim_hp, &reduced_reps))
    } else {
        None
    };
    // basis coordinates are unit vectors by construction
    for (i, cl) in classes.iter_mut().enumerate() {
        let mut e = vec![f.zero(); dim];
        e[i] = f.one();
        cl.coords = e;
    }
    Ok(ExtGroup {
        degree: p,
        dim,
        classes,
        certified: res.terminated,
        resolution: res.clone(),
        target: y.clone(),
        hom_basis: hom_p,
        hom_solver: Some(solver),
        coboundaries: cob,
        class_solver,
    })
}

/// `dim Tor_p(x, y)` where `y` carries the left-module structure of the
/// bimodule (its right structure is ignored). Resolves the right module `x`.
pub fn tor<F: Field>(
    cache: &ResCache<F>,
    x: &ModRef<F>,
    y: &Bimodule<F>,
    p: usize,
    resolution_cap: usize,
) -> Result<usize> {
    let res = cache.resolution(x, resolution_cap.max(p + 1));
    if p >= res.len() {
        if res.terminated {
            return Ok(0);
        }
        return Err(Error::undetermined(format!(
            "resolution cap {} reached before degree {}",
            res.cap, p
        )));
    }
    if !res.terminated && p + 1 >= res.len() {
        return Err(Error::undetermined(format!(
            "resolution cap {} reached before degree {}",
            res.cap,
            p + 1
        )));
    }
    // Tensor the terms and differentials.
    let mut tensors = Vec::new();
    let lo = p.saturating_sub(1);
    let hi = (p + 1).min(res.len() - 1);
    for k in lo..=hi {
        tensors.push((k, tensor_over(res.term(k).unwrap(), y)?));
    }
    let t_of = |k: usize| tensors.iter().find(|(kk, _)| *kk == k).map(|(_, t)| t);
    // differential T_k -> T_{k-1} induced by d_k (x) id
    let induced = |k: usize| -> Option<Matrix<F>> {
        let tk = t_of(k)?;
        let tk1 = t_of(k - 1)?;
        let d = &res.maps[k]; // P_k -> P_{k-1}
        let f = x.field().clone();
        let dv = y.total;
        let rows = tk.to_pairs.nrows();
        let amb_out = tk1.from_pairs.nrows();
        let mut amb_map = Matrix::zero(f.clone(), tk.to_pairs.ncols(), amb_out);
        // ambient pair map: (u, w) -> (d(u), w)
        let src_dim = d.src.dim();
        for u in 0..src_dim {
            for (v, c) in d.mat.row(u).iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                for w in 0..dv {
                    amb_map.set(u * dv + w, v * dv + w, c.clone());
                }
            }
        }
        let _ = rows;
        Some(tk.to_pairs.mul(&amb_map).mul(&tk1.from_pairs))
    };
    let dim_tp = t_of(p).unwrap().module.dim();
    let rank_in = if p + 1 < res.len() {
        induced(p + 1).map_or(0, |m| m.rank())
    } else {
        0
    };
    let rank_out = if p > 0 { induced(p).map_or(0, |m| m.rank()) } else { 0 };
    // dim ker(d_p (x) id) - rank(d_{p+1} (x) id)
    Ok(dim_tp - rank_out - rank_in)
}

/// Pushout of the start of the resolution of `x` along a cocycle
/// `P_1 -> t`: the extension `0 -> t -> E -> x -> 0` whose connecting class
/// is the cocycle's class.
fn pushout_extension<F: Field>(res: &Resolution<F>, cocycle: &ModuleMap<F>) -> Result<Ses<F>> {
    let f = cocycle.tgt.field().clone();
    let x = &res.module;
    let t = &cocycle.tgt;
    let d0 = &res.maps[0];
    let (omega, iota) = kernel(d0);
    // factor the cocycle through the syzygy: for each basis vector of omega,
    // solve back through d_1 and push with the cocycle
    let d1 = &res.maps[1];
    let phi_bar_rows: Vec<Vec<F::Elem>> = (0..omega.dim())
        .map(|r| {
            let w = iota.mat.row_vec(r);
            let u = d1
                .mat
                .solve_left(&Matrix::from_rows(f.clone(), vec![w]))
                .expect("syzygy lies in the image of d_1");
            cocycle.mat.apply_row(&u.row_vec(0))
        })
        .collect();
    let (sum, injs, _) = direct_sum(&[t.clone(), d0.src.clone()]);
    // relations (phi_bar(w), -iota(w))
    let rel_rows: Vec<Vec<F::Elem>> = (0..omega.dim())
        .map(|r| {
            let a = injs[0].mat.apply_row(&phi_bar_rows[r]);
            let b = injs[1].mat.apply_row(&iota.mat.row_vec(r));
            (0..sum.dim()).map(|j| f.sub(&a[j], &b[j])).collect()
        })
        .collect();
    let (e, proj) = crate::module::quotient_by(&sum, &rel_rows);
    let inj = ModuleMap::new(t.clone(), e.clone(), injs[0].mat.mul(&proj.mat));
    // induced surjection E -> x from (0, d_0) on the sum
    let mut sum_to_x = Matrix::zero(f.clone(), sum.dim(), x.dim());
    for r in 0..d0.src.dim() {
        let row = injs[1].mat.row_vec(r);
        let pr = row.iter().position(|c| !f.is_zero(c)).unwrap();
        for (cj, v) in d0.mat.row(r).iter().enumerate() {
            sum_to_x.set(pr, cj, v.clone());
        }
    }
    let e_to_x = proj
        .mat
        .solve_right(&sum_to_x)
        .ok_or_else(|| Error::invalid("extension surjection does not descend"))?;
    let surj = ModuleMap::new(e.clone(), x.clone(), e_to_x);
    let ses = Ses { inj, surj };
    ses.verify()?;
    Ok(ses)
}

/// Realise a degree-one Ext class as a short exact sequence
/// `0 -> Y -> E -> X -> 0`; the zero class gives the split sequence.
pub fn yoneda_extension<F: Field>(group: &ExtGroup<F>, coords: &[F::Elem]) -> Result<Ses<F>> {
    if group.degree != 1 {
        return Err(Error::invalid("yoneda_extension needs a degree-1 class"));
    }
    let f = group.target.field().clone();
    let res = &group.resolution;
    let x = &res.module;
    let y = &group.target;
    // cocycle = sum coords * class cocycles (the zero vector gives the split
    // extension through an identically zero cocycle)
    let p1 = res
        .term(1)
        .cloned()
        .unwrap_or_else(|| Module::zero_module(x.algebra()));
    let mut mat = Matrix::zero(f.clone(), p1.dim(), y.dim());
    for (k, c) in coords.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        mat = mat.add(&group.classes[k].cocycle.mat.scale(c));
    }
    if res.len() < 2 {
        // projective x: only the split extension exists
        let (sum, injs, prjs) = direct_sum(&[y.clone(), x.clone()]);
        let ses = Ses { inj: injs[0].clone(), surj: prjs[1].clone() };
        let _ = sum;
        return Ok(ses);
    }
    let cocycle = ModuleMap::new(p1, y.clone(), mat);
    pushout_extension(res, &cocycle)
}

/// Connecting class of a short exact sequence `0 -> Y -> E -> X -> 0` in the
/// coordinates of `Ext^1(X, Y)`; inverse to [`yoneda_extension`].
pub fn connecting_class<F: Field>(group: &ExtGroup<F>, ses: &Ses<F>) -> Result<Vec<F::Elem>> {
    if group.degree != 1 {
        return Err(Error::invalid("connecting_class needs a degree-1 group"));
    }
    let f = group.target.field().clone();
    let res = &group.resolution;
    let d0 = &res.maps[0];
    if res.len() < 2 {
        return Ok(vec![f.zero(); group.dim]);
    }
    // module-map lift of d_0 through E -> X
    let homs = hom_space(&d0.src, ses.b());
    if homs.is_empty() {
        return Err(Error::invalid("no maps from the cover to the middle term"));
    }
    let flats: Vec<Vec<F::Elem>> = homs
        .iter()
        .map(|h| flatten(&h.mat.mul(&ses.surj.mat)))
        .collect();
    let wanted = flatten(&d0.mat);
    let sol = Matrix::from_rows(f.clone(), flats)
        .solve_left(&Matrix::from_rows(f.clone(), vec![wanted]))
        .ok_or_else(|| Error::invalid("projective lift does not exist"))?;
    let mut lambda = Matrix::zero(f.clone(), d0.src.dim(), ses.b().dim());
    for (k, c) in sol.row(0).iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        lambda = lambda.add(&homs[k].mat.scale(c));
    }
    // nu = d_1 then lambda lands in the image of Y -> E; pull back
    let nu = res.maps[1].mat.mul(&lambda);
    let psi = ses
        .inj
        .mat
        .solve_left(&nu)
        .ok_or_else(|| Error::invalid("connecting map does not factor through Y"))?;
    let p1 = res.term(1).unwrap().clone();
    let cocycle = ModuleMap::new(p1, group.target.clone(), psi);
    group
        .coordinates_of(&cocycle)
        .ok_or_else(|| Error::invalid("connecting cocycle escapes the Ext basis"))
}

/// Universal extension `0 -> y^r -> E -> x -> 0` with `r = dim Ext^1(x, y)`.
pub struct UniversalExtension<F: Field> {
    pub ses: Ses<F>,
    pub rank: usize,
}

pub fn universal_extension<F: Field>(
    cache: &ResCache<F>,
    x: &ModRef<F>,
    y: &ModRef<F>,
    resolution_cap: usize,
) -> Result<UniversalExtension<F>> {
    let f = x.field().clone();
    if hom_space(y, y).len() != 1 {
        return Err(Error::undetermined(
            "universal extension needs a split endomorphism ring on the extending module",
        ));
    }
    let group = ext(cache, x, y, 1, resolution_cap)?;
    let r = group.dim;
    if r == 0 {
        let (sum, injs, prjs) = direct_sum(&[Module::zero_module(x.algebra()), x.clone()]);
        let _ = sum;
        return Ok(UniversalExtension { ses: Ses { inj: injs[0].clone(), surj: prjs[1].clone() }, rank: 0 });
    }
    let res = &group.resolution;
    let p1 = res.term(1).unwrap().clone();
    let copies: Vec<ModRef<F>> = (0..r).map(|_| y.clone()).collect();
    let (yr, injs, _) = direct_sum(&copies);
    // diagonal cocycle P_1 -> y^r stacking the basis cocycles
    let mut mat = Matrix::zero(f.clone(), p1.dim(), yr.dim());
    for (i, cl) in group.classes.iter().enumerate() {
        mat = mat.add(&cl.cocycle.mat.mul(&injs[i].mat));
    }
    let cocycle = ModuleMap::new(p1, yr.clone(), mat);
    let ses = pushout_extension(res, &cocycle)?;
    Ok(UniversalExtension { ses, rank: r })
}

/// Check that the universal extension kills `Ext^1(-, y)` and that the
/// induced map `Hom(y^r, y) -> Ext^1(x, y)` is surjective.
pub fn verify_universal_extension<F: Field>(
    cache: &ResCache<F>,
    ue: &UniversalExtension<F>,
    x: &ModRef<F>,
    y: &ModRef<F>,
    resolution_cap: usize,
) -> Result<()> {
    let f = x.field().clone();
    let e = ue.ses.b();
    let ext_e = ext(cache, e, y, 1, resolution_cap)?;
    if ext_e.dim != 0 {
        return Err(Error::invalid(format!(
            "universal extension leaves Ext^1(E, y) of dimension {}",
            ext_e.dim
        )));
    }
    if e.dim() != x.dim() + ue.rank * y.dim() {
        return Err(Error::invalid("universal extension has the wrong dimension"));
    }
    // surjectivity of Hom(y^r, y) -> Ext^1(x, y)
    let group = ext(cache, x, y, 1, resolution_cap)?;
    if group.dim != ue.rank {
        return Err(Error::invalid("rank drifted between computations"));
    }
    if ue.rank == 0 {
        return Ok(());
    }
    let yr = ue.ses.a();
    let mut span: Subspace<F> = Subspace::new(f.clone(), group.dim);
    // connecting class of the pushforward along xi: delta(xi) = [xi . Phi]
    // realised by pushing the sequence out; equivalently compose the
    // recovered connecting cocycle with xi.
    let d1 = &group.resolution.maps[1];
    let p1 = group.resolution.term(1).unwrap().clone();
    // recover Phi: P_1 -> y^r from the constructed sequence
    let lambda_basis = hom_space(&p1, yr);
    let _ = d1;
    let _ = lambda_basis;
    for xi in hom_space(yr, y) {
        // connecting class of xi_* (ses): pull the cocycle of ses back and
        // compose with xi. The cocycle of ses is recovered by connecting_class
        // against the identity coordinates, but we need it as a map, so
        // recompute: nu factorisation as in connecting_class.
        let homs = hom_space(&group.resolution.maps[0].src, ue.ses.b());
        let flats: Vec<Vec<F::Elem>> = homs
            .iter()
            .map(|h| flatten(&h.mat.mul(&ue.ses.surj.mat)))
            .collect();
        let wanted = flatten(&group.resolution.maps[0].mat);
        let sol = Matrix::from_rows(f.clone(), flats)
            .solve_left(&Matrix::from_rows(f.clone(), vec![wanted]))
            .ok_or_else(|| Error::invalid("projective lift does not exist"))?;
        let mut lambda = Matrix::zero(f.clone(), group.resolution.maps[0].src.dim(), ue.ses.b().dim());
        for (k, c) in sol.row(0).iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            lambda = lambda.add(&homs[k].mat.scale(c));
        }
        let nu = group.resolution.maps[1].mat.mul(&lambda);
        let phi = ue
            .ses
            .inj
            .mat
            .solve_left(&nu)
            .ok_or_else(|| Error::invalid("cocycle does not factor through y^r"))?;
        // xi . Phi : P_1 -> y
        let comp = phi.mul(&xi.mat);
        let cocycle = ModuleMap::new(p1.clone(), y.clone(), comp);
        let coords = group
            .coordinates_of(&cocycle)
            .ok_or_else(|| Error::invalid("pushforward class escapes the basis"))?;
        span.insert(coords);
    }
    if span.dim() != group.dim {
        return Err(Error::invalid(format!(
            "induced map Hom(y^r, y) -> Ext^1(x, y) has rank {} < {}",
            span.dim(),
            group.dim
        )));
    }
    Ok(())
}

/// Projective dimension to the cap (`None` = cap exhausted, undetermined).
pub fn projective_dimension<F: Field>(cache: &ResCache<F>, m: &ModRef<F>, cap: usize) -> Option<usize> {
    let res = cache.resolution(m, cap);
    res.pd()
}

/// Global dimension: the maximum over the simple modules.
pub fn global_dimension<F: Field>(cache: &ResCache<F>, alg: &AlgRef<F>, cap: usize) -> Option<usize> {
    let mut best = 0usize;
    for c in 0..alg.num_classes() {
        let s = Module::simple(alg, c);
        match projective_dimension(cache, &s, cap) {
            Some(pd) => best = best.max(pd),
            None => return None,
        }
    }
    Some(best)
}

/// Chain-map lift of `f: A -> B` along the minimal resolutions, out to
/// `depth` terms; used for induced maps on Ext.
pub fn lift_chain_map<F: Field>(
    res_a: &Resolution<F>,
    res_b: &Resolution<F>,
    f_map: &ModuleMap<F>,
    depth: usize,
) -> Result<Vec<ModuleMap<F>>> {
    let f = f_map.src.field().clone();
    let mut lifts: Vec<ModuleMap<F>> = Vec::new();
    for k in 0..=depth {
        let (pa, pb) = match (res_a.term(k), res_b.term(k)) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            (None, _) => break,
            (Some(a), None) => {
                // target resolution ended: lift is zero
                let zb = Module::zero_module(f_map.src.algebra());
                lifts.push(ModuleMap::zero(&a, &zb));
                continue;
            }
        };
        // want lambda_k : P^A_k -> P^B_k with lambda_k then d^B = d^A then prev
        let rhs = if k == 0 {
            res_a.maps[0].mat.mul(&f_map.mat)
        } else {
            res_a.maps[k].mat.mul(&lifts[k - 1].mat)
        };
        let post = if k == 0 { &res_b.maps[0] } else { &res_b.maps[k] };
        let homs = hom_space(&pa, &pb);
        let flats: Vec<Vec<F::Elem>> = homs.iter().map(|h| flatten(&h.mat.mul(&post.mat))).collect();
        if homs.is_empty() {
            if rhs.is_zero() {
                lifts.push(ModuleMap::zero(&pa, &pb));
                continue;
            }
            return Err(Error::invalid("chain lift does not exist"));
        }
        let sol = Matrix::from_rows(f.clone(), flats)
            .solve_left(&Matrix::from_rows(f.clone(), vec![flatten(&rhs)]))
            .ok_or_else(|| Error::invalid("chain lift does not exist"))?;
        let mut lam = Matrix::zero(f.clone(), pa.dim(), pb.dim());
        for (k2, c) in sol.row(0).iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            lam = lam.add(&homs[k2].mat.scale(c));
        }
        lifts.push(ModuleMap::new(pa, pb, lam));
    }
    Ok(lifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::presentation::{build_algebra, parse_presentation};

    fn kalck() -> AlgRef<Rationals> {
        let p = parse_presentation(crate::fixtures::KALCK).unwrap();
        Arc::new(build_algebra(Rationals, &p).unwrap())
    }

    fn a2() -> AlgRef<Rationals> {
        let p = parse_presentation(crate::fixtures::A2).unwrap();
        Arc::new(build_algebra(Rationals, &p).unwrap())
    }

    fn class(alg: &AlgRef<Rationals>, label: &str) -> usize {
        alg.class_by_label(label).unwrap()
    }

    #[test]
    fn resolution_of_s1_over_kalck() {
        let k = kalck();
        let s1 = Module::simple(&k, class(&k, "1"));
        let res = min_resolution(&s1, 8);
        assert!(res.terminated);
        assert_eq!(res.len(), 3); // P_1 <- P_3 <- P_2
        assert_eq!(res.mults[0], vec![1, 0, 0]);
        assert_eq!(res.mults[1], vec![0, 0, 1]);
        assert_eq!(res.mults[2], vec![0, 1, 0]);
    }

    #[test]
    fn resolution_of_projective_has_length_zero() {
        let k = kalck();
        let p2 = Module::projective(&k, class(&k, "2"));
        let res = min_resolution(&p2, 8);
        assert!(res.terminated);
        assert_eq!(res.pd(), Some(0));
    }

    #[test]
    fn resolution_of_s2_terminates_at_three() {
        let k = kalck();
        let s2 = Module::simple(&k, class(&k, "2"));
        let res = min_resolution(&s2, 8);
        assert!(res.terminated);
        assert_eq!(res.pd(), Some(3));
    }

    #[test]
    fn ext2_s1_p2_is_one_dimensional() {
        let k = kalck();
        let cache = ResCache::new();
        let s1 = Module::simple(&k, class(&k, "1"));
        let p2 = Module::projective(&k, class(&k, "2"));
        let g = ext(&cache, &s1, &p2, 2, 8).unwrap();
        assert_eq!(g.dim, 1);
        assert!(g.certified);
        // Ext^p(projective, anything) vanishes for p > 0
        for p in 1..4 {
            let gp = ext(&cache, &p2, &s1, p, 8).unwrap();
            assert_eq!(gp.dim, 0);
        }
    }

    #[test]
    fn ext0_agrees_with_hom() {
        let k = kalck();
        let cache = ResCache::new();
        for ci in 0..3 {
            for cj in 0..3 {
                let a = Module::projective(&k, ci);
                let b = Module::simple(&k, cj);
                let g = ext(&cache, &a, &b, 0, 8).unwrap();
                assert_eq!(g.dim, hom_space(&a, &b).len());
            }
        }
    }

    #[test]
    fn ext1_s1_s2_over_a2() {
        let a = a2();
        let cache = ResCache::new();
        let s1 = Module::simple(&a, class(&a, "1"));
        let s2 = Module::simple(&a, class(&a, "2"));
        let g = ext(&cache, &s1, &s2, 1, 8).unwrap();
        assert_eq!(g.dim, 1);
    }

    #[test]
    fn yoneda_roundtrip_on_a2() {
        let a = a2();
        let cache = ResCache::new();
        let s1 = Module::simple(&a, class(&a, "1"));
        let s2 = Module::simple(&a, class(&a, "2"));
        let g = ext(&cache, &s1, &s2, 1, 8).unwrap();
        assert_eq!(g.dim, 1);
        let one = vec![Rationals.from_i64(1)];
        let ses = yoneda_extension(&g, &one).unwrap();
        // E is the projective P_1 (the unique non-split extension)
        let p1 = Module::projective(&a, class(&a, "1"));
        assert!(crate::decompose::iso_test(ses.b(), &p1).is_true());
        let back = connecting_class(&g, &ses).unwrap();
        assert_eq!(back, one);
        // zero class gives the split extension
        let zero = vec![Rationals.from_i64(0)];
        let split = yoneda_extension(&g, &zero).unwrap();
        assert_eq!(split.b().dim(), 2);
        let back0 = connecting_class(&g, &split).unwrap();
        assert_eq!(back0, zero);
    }

    #[test]
    fn yoneda_on_kalck_syzygy_class() {
        // generator of Ext^1(S3, P_2-shaped module [2;1]) is realised by P_3
        let k = kalck();
        let cache = ResCache::new();
        let s3 = Module::simple(&k, class(&k, "3"));
        let p2 = Module::projective(&k, class(&k, "2"));
        let g = ext(&cache, &s3, &p2, 1, 8).unwrap();
        assert_eq!(g.dim, 1);
        let ses = yoneda_extension(&g, &[Rationals.from_i64(1)]).unwrap();
        let p3 = Module::projective(&k, class(&k, "3"));
        assert!(crate::decompose::iso_test(ses.b(), &p3).is_true());
        let back = connecting_class(&g, &ses).unwrap();
        assert_eq!(back, vec![Rationals.from_i64(1)]);
    }

    #[test]
    fn universal_extension_examples() {
        let k = kalck();
        let cache = ResCache::new();
        // Ext^1(x, y) = 0 -> E = x
        let p2 = Module::projective(&k, class(&k, "2"));
        let s3 = Module::simple(&k, class(&k, "3"));
        let ue = universal_extension(&cache, &p2, &s3, 8).unwrap();
        assert_eq!(ue.rank, 0);
        assert_eq!(ue.ses.b().dim(), p2.dim());
        // x = S1, y = S3: r = 1, E = P_1
        let s1 = Module::simple(&k, class(&k, "1"));
        let ue2 = universal_extension(&cache, &s1, &s3, 8).unwrap();
        assert_eq!(ue2.rank, 1);
        let p1 = Module::projective(&k, class(&k, "1"));
        assert!(crate::decompose::iso_test(ue2.ses.b(), &p1).is_true());
        verify_universal_extension(&cache, &ue2, &s1, &s3, 8).unwrap();
        // x = S3, y = [2;1] = P_2: r = 1, E = P_3
        let ue3 = universal_extension(&cache, &s3, &p2, 8).unwrap();
        assert_eq!(ue3.rank, 1);
        let p3 = Module::projective(&k, class(&k, "3"));
        assert!(crate::decompose::iso_test(ue3.ses.b(), &p3).is_true());
        verify_universal_extension(&cache, &ue3, &s3, &p2, 8).unwrap();
    }

    #[test]
    fn projective_and_global_dimension() {
        let k = kalck();
        let cache = ResCache::new();
        let s2 = Module::simple(&k, class(&k, "2"));
        assert_eq!(projective_dimension(&cache, &s2, 16), Some(3));
        let p1 = Module::projective(&k, class(&k, "1"));
        assert_eq!(projective_dimension(&cache, &p1, 16), Some(0));
        assert_eq!(global_dimension(&cache, &k, 16), Some(3));
    }

    #[test]
    fn tor_of_heredity_quotient_vanishes() {
        let k = kalck();
        let cache = ResCache::new();
        let e2 = class(&k, "2");
        let ideal = k.idempotent_ideal(&[k.class_rep(e2)]);
        assert_eq!(ideal.dim(), 4);
        let bim = Bimodule::quotient(&k, &ideal);
        // quotient as a right module
        let reg = Module::regular(&k);
        let perm: Vec<usize> = {
            let mut basis: Vec<usize> = Vec::new();
            for t in 0..k.num_idempotents() {
                for b in 0..k.dim() {
                    if k.tgt(b) == t {
                        basis.push(b);
                    }
                }
            }
            basis
        };
        let rows: Vec<Vec<_>> = ideal
            .space
            .basis()
            .iter()
            .map(|v| perm.iter().map(|&b| v[b].clone()).collect())
            .collect();
        let (quot, _) = crate::module::quotient_by(&reg, &rows);
        assert_eq!(tor(&cache, &quot, &bim, 0, 10).unwrap(), 3);
        for p in 1..=6 {
            assert_eq!(tor(&cache, &quot, &bim, p, 10).unwrap(), 0, "Tor_{p}");
        }
    }

    #[test]
    fn tor_2_of_non_heredity_quotient_is_two() {
        let k = kalck();
        let cache = ResCache::new();
        let e1 = class(&k, "1");
        let ideal = k.idempotent_ideal(&[k.class_rep(e1)]);
        assert_eq!(ideal.dim(), 4);
        let bim = Bimodule::quotient(&k, &ideal);
        let reg = Module::regular(&k);
        let perm: Vec<usize> = {
            let mut basis: Vec<usize> = Vec::new();
            for t in 0..k.num_idempotents() {
                for b in 0..k.dim() {
                    if k.tgt(b) == t {
                        basis.push(b);
                    }
                }
            }
            basis
        };
        let rows: Vec<Vec<_>> = ideal
            .space
            .basis()
            .iter()
            .map(|v| perm.iter().map(|&b| v[b].clone()).collect())
            .collect();
        let (quot, _) = crate::module::quotient_by(&reg, &rows);
        assert_eq!(quot.dim(), 3);
        assert_eq!(tor(&cache, &quot, &bim, 1, 10).unwrap(), 0);
        assert_eq!(tor(&cache, &quot, &bim, 2, 10).unwrap(), 2);
    }
}
