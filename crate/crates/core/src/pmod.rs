//! Persistence modules over finite posets: functors into vector spaces given
//! by dimensions and Hasse-edge matrices, free modules and presentations,
//! module morphisms along insertions, and the three scalar functions
//! (kernel, birth-death, rank) on interval posets.

use crate::error::{Error, Result};
use crate::galois::GaloisConnection;
use crate::linalg::{
    colimit, image_basis, intersect, kernel_basis, Colimit, Mat, PrimeField, Subspace,
};
use crate::mobius::IntFn;
use crate::poset::{
    adjoin_top, interval_poset_bar, interval_poset_hat, same_poset, Downset, IntervalPoset,
    PosetRef,
};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt::Write as _;

/// A functor from a finite poset to finite-dimensional vector spaces. Edge
/// matrices are given on Hasse covers; all composites are precomputed during
/// validation, which also checks path independence.
#[derive(Debug, Clone)]
pub struct PersistenceModule {
    base: PosetRef,
    field: PrimeField,
    dims: Vec<usize>,
    composites: HashMap<(usize, usize), Mat>,
}

/// Validate dimensions and Hasse-edge maps into a module. `edge_maps` must
/// give exactly one matrix per Hasse cover of the base, with shape
/// `dims[b] x dims[a]` for the cover `a < b`. Path independence is checked on
/// every element pair; a violation reports the two paths' meeting point.
pub fn validate_module(
    base: &PosetRef,
    field: PrimeField,
    dims: Vec<usize>,
    edge_maps: HashMap<(usize, usize), Mat>,
) -> Result<PersistenceModule> {
    let n = base.len();
    if dims.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{} dimensions for {} elements",
            dims.len(),
            n
        )));
    }
    let covers: std::collections::HashSet<(usize, usize)> =
        base.hasse_edges().iter().copied().collect();
    for key in edge_maps.keys() {
        if !covers.contains(key) {
            return Err(Error::ShapeMismatch(format!(
                "map given for non-cover pair ({:?}, {:?})",
                base.id(key.0),
                base.id(key.1)
            )));
        }
    }
    for &(a, b) in &covers {
        let Some(m) = edge_maps.get(&(a, b)) else {
            return Err(Error::ShapeMismatch(format!(
                "missing map for cover ({:?}, {:?})",
                base.id(a),
                base.id(b)
            )));
        };
        if m.rows() != dims[b] || m.cols() != dims[a] {
            return Err(Error::ShapeMismatch(format!(
                "map for cover ({:?}, {:?}) is {}x{}, expected {}x{}",
                base.id(a),
                base.id(b),
                m.rows(),
                m.cols(),
                dims[b],
                dims[a]
            )));
        }
        if m.field() != field {
            return Err(Error::ShapeMismatch(format!(
                "map for cover ({:?}, {:?}) uses modulus {}, expected {}",
                base.id(a),
                base.id(b),
                m.field().p(),
                field.p()
            )));
        }
    }
    // Composites by dynamic programming along the linear extension. For each
    // source a the composite into b is built from any incoming cover of b;
    // all incoming covers must agree or the functor laws fail.
    let mut composites: HashMap<(usize, usize), Mat> = HashMap::new();
    for a in 0..n {
        composites.insert((a, a), Mat::identity(dims[a], field));
    }
    for &b in base.linext() {
        for a in 0..n {
            if !base.lt(a, b) {
                continue;
            }
            let mut found: Option<(usize, Mat)> = None;
            for &(c, bb) in base.hasse_edges() {
                if bb != b || !base.leq(a, c) {
                    continue;
                }
                let candidate = edge_maps[&(c, b)].mul(&composites[&(a, c)]);
                match &found {
                    None => found = Some((c, candidate)),
                    Some((c0, prev)) => {
                        if *prev != candidate {
                            return Err(Error::NotFunctorial(
                                base.id(a).to_string(),
                                base.id(b).to_string(),
                                format!(
                                    "paths through {:?} and {:?} disagree",
                                    base.id(*c0),
                                    base.id(c)
                                ),
                            ));
                        }
                    }
                }
            }
            let (_, m) = found.expect("a < b implies an incoming cover above a");
            composites.insert((a, b), m);
        }
    }
    Ok(PersistenceModule {
        base: base.clone(),
        field,
        dims,
        composites,
    })
}

impl PersistenceModule {
    pub fn base(&self) -> &PosetRef {
        &self.base
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The structure map `M(a <= b)`.
    pub fn map(&self, a: usize, b: usize) -> &Mat {
        self.composites
            .get(&(a, b))
            .expect("map requested for a pair with a 'not <=' b")
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The zero module on a poset.
    pub fn zero(base: &PosetRef, field: PrimeField) -> PersistenceModule {
        let dims = vec![0; base.len()];
        let edge_maps = base
            .hasse_edges()
            .iter()
            .map(|&e| (e, Mat::zero(0, 0, field)))
            .collect();
        validate_module(base, field, dims, edge_maps).expect("zero module is valid")
    }
}

/// A formal direct sum of rank-one upset modules, one summand per generator.
/// The generator list is ordered; free coordinates follow it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    generators: Vec<usize>,
}

impl FreeModule {
    pub fn new(generators: Vec<usize>) -> FreeModule {
        FreeModule { generators }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Positions (into the generator list) active at `x`, in list order.
    fn active<'a>(&'a self, base: &'a PosetRef, x: usize) -> impl Iterator<Item = usize> + 'a {
        self.generators
            .iter()
            .enumerate()
            .filter(move |(_, &g)| base.leq(g, x))
            .map(|(i, _)| i)
    }
}

/// Realize a free module as a persistence module: dimension at `b` counts
/// generators below `b`, and edge maps are the evident coordinate inclusions.
pub fn free_to_module(
    free: &FreeModule,
    base: &PosetRef,
    field: PrimeField,
) -> Result<PersistenceModule> {
    if let Some(&g) = free.generators.iter().find(|&&g| g >= base.len()) {
        return Err(Error::UnknownElement(format!("generator #{g}")));
    }
    let active: Vec<Vec<usize>> = (0..base.len()).map(|x| free.active(base, x).collect()).collect();
    let dims: Vec<usize> = active.iter().map(|a| a.len()).collect();
    let mut edge_maps = HashMap::new();
    for &(a, b) in base.hasse_edges() {
        let pos_b: HashMap<usize, usize> =
            active[b].iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut m = Mat::zero(dims[b], dims[a], field);
        for (j, &g) in active[a].iter().enumerate() {
            m.set(pos_b[&g], j, 1);
        }
        edge_maps.insert((a, b), m);
    }
    validate_module(base, field, dims, edge_maps)
}

/// A surjective natural transformation from a free module onto `M`, stored as
/// one matrix `phi_x : F(x) -> M(x)` per element.
#[derive(Debug, Clone)]
pub struct FreePresentation {
    free: FreeModule,
    free_mod: PersistenceModule,
    phi: Vec<Mat>,
}

impl FreePresentation {
    pub fn free(&self) -> &FreeModule {
        &self.free
    }

    pub fn free_module(&self) -> &PersistenceModule {
        &self.free_mod
    }

    pub fn phi(&self, x: usize) -> &Mat {
        &self.phi[x]
    }
}

/// Check naturality on every Hasse edge and surjectivity at every element.
pub fn validate_presentation(
    m: &PersistenceModule,
    free: FreeModule,
    phi: Vec<Mat>,
) -> Result<FreePresentation> {
    let base = &m.base;
    let free_mod = free_to_module(&free, base, m.field)?;
    if phi.len() != base.len() {
        return Err(Error::PresentationMismatch(
            "phi".into(),
            format!("{} components for {} elements", phi.len(), base.len()),
        ));
    }
    for x in 0..base.len() {
        if phi[x].rows() != m.dims[x] || phi[x].cols() != free_mod.dims[x] {
            return Err(Error::PresentationMismatch(
                base.id(x).to_string(),
                format!(
                    "phi is {}x{}, expected {}x{}",
                    phi[x].rows(),
                    phi[x].cols(),
                    m.dims[x],
                    free_mod.dims[x]
                ),
            ));
        }
        if phi[x].rank() != m.dims[x] {
            return Err(Error::PresentationMismatch(
                base.id(x).to_string(),
                "phi is not surjective".into(),
            ));
        }
    }
    for &(a, b) in base.hasse_edges() {
        let lhs = phi[b].mul(free_mod.map(a, b));
        let rhs = m.map(a, b).mul(&phi[a]);
        if lhs != rhs {
            return Err(Error::PresentationMismatch(
                base.id(a).to_string(),
                format!("naturality fails on the cover into {:?}", base.id(b)),
            ));
        }
    }
    Ok(FreePresentation {
        free,
        free_mod,
        phi,
    })
}

/// The canonical presentation: one generator block of size `dim M(a)` at each
/// element `a`, mapped by the identity there and extended along the module's
/// own structure maps.
pub fn build_free_presentation(m: &PersistenceModule) -> FreePresentation {
    let base = &m.base;
    let mut generators = Vec::new();
    for a in 0..base.len() {
        for _ in 0..m.dims[a] {
            generators.push(a);
        }
    }
    let free = FreeModule::new(generators);
    let mut phi = Vec::with_capacity(base.len());
    for x in 0..base.len() {
        let active: Vec<usize> = free.active(base, x).collect();
        let mut mat = Mat::zero(m.dims[x], active.len(), m.field);
        // Column for the i-th copy of the generator at a is the i-th column
        // of M(a <= x).
        let mut copy_index: HashMap<usize, usize> = HashMap::new();
        for (col, &gpos) in active.iter().enumerate() {
            let a = free.generators[gpos];
            let i = *copy_index
                .entry(a)
                .and_modify(|v| *v += 1)
                .or_insert(0);
            let structure = m.map(a, x);
            for r in 0..m.dims[x] {
                mat.set(r, col, structure.get(r, i));
            }
        }
        phi.push(mat);
    }
    validate_presentation(m, free, phi).expect("canonical presentation is valid")
}

/// Extend a presentation with redundant generators: each extra `(a, v)` adds a
/// generator at `a` whose image is `v` at `a` and its pushforwards above. The
/// result presents the same module.
pub fn pad_presentation(
    m: &PersistenceModule,
    pres: &FreePresentation,
    extra: &[(usize, Vec<u64>)],
) -> Result<FreePresentation> {
    let base = &m.base;
    let mut generators = pres.free.generators.clone();
    for &(a, ref v) in extra {
        if a >= base.len() {
            return Err(Error::UnknownElement(format!("generator #{a}")));
        }
        if v.len() != m.dims[a] {
            return Err(Error::PresentationMismatch(
                base.id(a).to_string(),
                format!("padding vector has length {}, expected {}", v.len(), m.dims[a]),
            ));
        }
        generators.push(a);
    }
    let free = FreeModule::new(generators);
    let mut phi = Vec::with_capacity(base.len());
    for x in 0..base.len() {
        let mut mat = pres.phi[x].clone();
        for &(a, ref v) in extra {
            if base.leq(a, x) {
                let img = m.map(a, x).apply(v);
                let col = Mat::from_entries(m.dims[x], 1, m.field, &img)?;
                mat = mat.hstack(&col);
            }
        }
        phi.push(mat);
    }
    // The padded column order interleaves only at the tail: original
    // generators keep their positions because extras are appended after them
    // and activation preserves list order.
    validate_presentation(m, free, phi)
}

/// Restrict a module along the right adjoint of an insertion `P <-> Q`:
/// the result lives on `Q` with `N(q) = M(g(q))`.
pub fn pull_module(m: &PersistenceModule, ins: &GaloisConnection) -> Result<PersistenceModule> {
    if !ins.is_insertion() {
        return Err(Error::NotInsertion("module restriction".into(), String::new()));
    }
    if !same_poset(ins.source(), &m.base) {
        return Err(Error::BaseMismatch("insertion source differs from module base".into()));
    }
    let q = ins.target();
    let dims: Vec<usize> = (0..q.len()).map(|x| m.dims[ins.g(x)]).collect();
    let edge_maps: HashMap<(usize, usize), Mat> = q
        .hasse_edges()
        .iter()
        .map(|&(a, b)| ((a, b), m.map(ins.g(a), ins.g(b)).clone()))
        .collect();
    validate_module(q, m.field, dims, edge_maps)
}

/// Restrict a presentation along the same insertion: the pulled free module is
/// free on the images `f(a)` of the original generators, and phi components
/// are reused at `g(q)`.
pub fn pull_presentation(
    m: &PersistenceModule,
    pres: &FreePresentation,
    ins: &GaloisConnection,
) -> Result<(PersistenceModule, FreePresentation)> {
    let pulled = pull_module(m, ins)?;
    let generators: Vec<usize> = pres.free.generators.iter().map(|&a| ins.f(a)).collect();
    let free = FreeModule::new(generators);
    let phi: Vec<Mat> = (0..ins.target().len()).map(|q| pres.phi[ins.g(q)].clone()).collect();
    let pulled_pres = validate_presentation(&pulled, free, phi)?;
    Ok((pulled, pulled_pres))
}

/// Nullity of each structure map, as a function on the bar interval poset.
pub fn kernel_fn(m: &PersistenceModule) -> (IntervalPoset, IntFn) {
    let ip = interval_poset_bar(&m.base);
    let mut f = IntFn::zero(ip.poset.clone());
    for k in 0..ip.len() {
        let (a, b) = ip.pair(k);
        let mat = m.map(a, b);
        f.set(k, BigInt::from((mat.cols() - mat.rank()) as u64));
    }
    (ip, f)
}

/// Rank of each structure map, as a function on the hat interval poset.
pub fn rank_fn(m: &PersistenceModule) -> (IntervalPoset, IntFn) {
    let ip = interval_poset_hat(&m.base);
    let mut f = IntFn::zero(ip.poset.clone());
    for k in 0..ip.len() {
        let (a, b) = ip.pair(k);
        f.set(k, BigInt::from(m.map(a, b).rank() as u64));
    }
    (ip, f)
}

/// The birth-death function of a presentation: at `[a, b]`, the dimension of
/// the part of `F(a)` (pushed into `F(b)`) that `phi_b` kills.
pub fn birthdeath_fn(
    m: &PersistenceModule,
    pres: &FreePresentation,
) -> Result<(IntervalPoset, IntFn)> {
    if !same_poset(pres.free_mod.base(), &m.base) {
        return Err(Error::PresentationMismatch(
            "presentation".into(),
            "presentation base differs from module base".into(),
        ));
    }
    let ip = interval_poset_bar(&m.base);
    let mut f = IntFn::zero(ip.poset.clone());
    let kernels: Vec<Subspace> = (0..m.base.len()).map(|x| kernel_basis(&pres.phi[x])).collect();
    for k in 0..ip.len() {
        let (a, b) = ip.pair(k);
        let embedded = image_basis(pres.free_mod.map(a, b));
        let meet = intersect(&embedded, &kernels[b])?;
        f.set(k, BigInt::from(meet.dim() as u64));
    }
    Ok((ip, f))
}

/// A morphism `M -> N` of modules: an insertion `f : P <-> Q : g` together
/// with a natural isomorphism `M . g ~ N`, stored as one invertible witness
/// matrix per target element.
#[derive(Debug, Clone)]
pub struct ModuleMorphism {
    conn: GaloisConnection,
    source: PersistenceModule,
    target: PersistenceModule,
    witnesses: Vec<Mat>,
}

impl ModuleMorphism {
    pub fn conn(&self) -> &GaloisConnection {
        &self.conn
    }

    pub fn source(&self) -> &PersistenceModule {
        &self.source
    }

    pub fn target(&self) -> &PersistenceModule {
        &self.target
    }

    pub fn witness(&self, q: usize) -> &Mat {
        &self.witnesses[q]
    }
}

/// Validate a morphism with supplied witnesses: the connection must be an
/// insertion, each witness an isomorphism `M(g(q)) -> N(q)`, and the family
/// natural with respect to every Hasse edge of the target.
pub fn validate_morphism(
    conn: &GaloisConnection,
    source: &PersistenceModule,
    target: &PersistenceModule,
    witnesses: Vec<Mat>,
) -> Result<ModuleMorphism> {
    if !conn.is_insertion() {
        return Err(Error::NotInsertion("module morphism".into(), String::new()));
    }
    if !same_poset(conn.source(), source.base()) {
        return Err(Error::BaseMismatch("connection source differs from source module base".into()));
    }
    if !same_poset(conn.target(), target.base()) {
        return Err(Error::BaseMismatch("connection target differs from target module base".into()));
    }
    if source.field != target.field {
        return Err(Error::BaseMismatch("modules use different fields".into()));
    }
    let q_poset = conn.target();
    if witnesses.len() != q_poset.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} witnesses for {} elements",
            witnesses.len(),
            q_poset.len()
        )));
    }
    for q in 0..q_poset.len() {
        let w = &witnesses[q];
        let d_src = source.dims[conn.g(q)];
        let d_tgt = target.dims[q];
        if w.rows() != d_tgt || w.cols() != d_src {
            return Err(Error::ShapeMismatch(format!(
                "witness at {:?} is {}x{}, expected {}x{}",
                q_poset.id(q),
                w.rows(),
                w.cols(),
                d_tgt,
                d_src
            )));
        }
        if d_src != d_tgt || (d_src > 0 && w.inverse().is_none()) {
            return Err(Error::Validation(format!(
                "witness at {:?} is not an isomorphism",
                q_poset.id(q)
            )));
        }
    }
    for &(q1, q2) in q_poset.hasse_edges() {
        let lhs = witnesses[q2].mul(source.map(conn.g(q1), conn.g(q2)));
        let rhs = target.map(q1, q2).mul(&witnesses[q1]);
        if lhs != rhs {
            return Err(Error::Validation(format!(
                "witnesses are not natural on the cover ({:?}, {:?})",
                q_poset.id(q1),
                q_poset.id(q2)
            )));
        }
    }
    Ok(ModuleMorphism {
        conn: conn.clone(),
        source: source.clone(),
        target: target.clone(),
        witnesses,
    })
}

/// Search for witness isomorphisms making `M . g ~ N` natural: solve the
/// linear commuting system over all target covers, then look for a point of
/// the solution space that is invertible at every element (exhaustively for
/// small solution spaces, by sampling otherwise).
pub fn find_witnesses(
    conn: &GaloisConnection,
    source: &PersistenceModule,
    target: &PersistenceModule,
) -> Result<Vec<Mat>> {
    if !conn.is_insertion() {
        return Err(Error::NotInsertion("module morphism".into(), String::new()));
    }
    let q_poset = conn.target();
    let field = source.field;
    let nq = q_poset.len();
    let sizes: Vec<(usize, usize)> = (0..nq)
        .map(|q| (target.dims[q], source.dims[conn.g(q)]))
        .collect();
    if sizes.iter().any(|&(r, c)| r != c) {
        return Err(Error::Validation(
            "no natural isomorphism: dimensions differ".into(),
        ));
    }
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &(r, c)| {
            let o = *acc;
            *acc += r * c;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().map(|&(r, c)| r * c).sum();
    // One linear constraint row per entry of each cover's naturality square.
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &(q1, q2) in q_poset.hasse_edges() {
        let a = source.map(conn.g(q1), conn.g(q2));
        let b = target.map(q1, q2);
        let (r2, _) = sizes[q2];
        let (r1, c1) = sizes[q1];
        // (W2 * A - B * W1)[i][j] = 0 with A : c1-dim -> c2-dim columns.
        for i in 0..r2 {
            for j in 0..c1 {
                let mut row = vec![0u64; total];
                for k in 0..a.rows() {
                    // W2[i][k] * A[k][j]
                    row[offsets[q2] + i * sizes[q2].1 + k] =
                        field.add(row[offsets[q2] + i * sizes[q2].1 + k], a.get(k, j));
                }
                for k in 0..r1 {
                    let idx = offsets[q1] + k * c1 + j;
                    row[idx] = field.sub(row[idx], b.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    let constraint = if rows.is_empty() {
        Mat::zero(0, total, field)
    } else {
        let flat: Vec<u64> = rows.concat();
        Mat::from_entries(rows.len(), total, field, &flat)?
    };
    let null = kernel_basis(&constraint);
    let k = null.dim();
    let assemble = |coeffs: &[u64]| -> Vec<Mat> {
        let v = null.basis().apply(coeffs);
        (0..nq)
            .map(|q| {
                let (r, c) = sizes[q];
                Mat::from_fn(r, c, field, |i, j| v[offsets[q] + i * c + j])
            })
            .collect()
    };
    let all_invertible = |ws: &[Mat]| ws.iter().all(|w| w.rows() == 0 || w.inverse().is_some());
    let p = field.p();
    let budget: u128 = 200_000;
    if (p as u128).checked_pow(k as u32).map_or(false, |space| space <= budget) {
        let mut coeffs = vec![0u64; k];
        loop {
            let ws = assemble(&coeffs);
            if all_invertible(&ws) {
                return Ok(ws);
            }
            let mut carry = true;
            for c in coeffs.iter_mut() {
                if carry {
                    *c += 1;
                    if *c == p {
                        *c = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
        }
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..2000 {
            let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            let ws = assemble(&coeffs);
            if all_invertible(&ws) {
                return Ok(ws);
            }
        }
    }
    Err(Error::Validation(
        "no natural isomorphism found in the solution space".into(),
    ))
}

/// Adjoin a synthetic top element carrying the zero space. Structure maps into
/// the top are the unique maps to 0. Returns the extended module and the top's
/// index.
pub fn adjoin_zero_top(m: &PersistenceModule) -> (PersistenceModule, usize) {
    let (extended, top) = adjoin_top(&m.base);
    let mut dims = m.dims.clone();
    dims.push(0);
    let mut edge_maps = HashMap::new();
    for &(a, b) in extended.hasse_edges() {
        if b == top {
            edge_maps.insert((a, b), Mat::zero(0, m.dims[a], m.field));
        } else {
            edge_maps.insert((a, b), m.map(a, b).clone());
        }
    }
    let ext = validate_module(&extended, m.field, dims, edge_maps)
        .expect("adjoining a zero top preserves validity");
    (ext, top)
}

/// The colimit of a module restricted to a downset, with the canonical map
/// from each member element.
#[derive(Debug, Clone)]
pub struct DownsetColimit {
    pub elements: Vec<usize>,
    pub dim: usize,
    maps: Vec<Mat>,
}

impl DownsetColimit {
    /// The canonical map from `M(e)` for a member element `e`.
    pub fn map_from(&self, e: usize) -> &Mat {
        let pos = self
            .elements
            .iter()
            .position(|&x| x == e)
            .expect("element not in the downset");
        &self.maps[pos]
    }
}

/// Colimit over a nonempty downset: direct sum of member spaces modulo the
/// relations of the Hasse edges inside the downset. Covers of the restricted
/// poset are exactly the ambient covers between members, because downsets are
/// closed under going down.
pub fn colimit_over(m: &PersistenceModule, ds: &Downset) -> Result<DownsetColimit> {
    if ds.is_empty() {
        return Err(Error::EmptyDownset);
    }
    if !same_poset(ds.poset(), &m.base) {
        return Err(Error::BaseMismatch("downset lives on a different poset".into()));
    }
    let elements: Vec<usize> = ds.elements().to_vec();
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let dims: Vec<usize> = elements.iter().map(|&e| m.dims[e]).collect();
    let mut edges = Vec::new();
    for &(a, b) in m.base.hasse_edges() {
        if let (Some(&ia), Some(&ib)) = (pos.get(&a), pos.get(&b)) {
            edges.push((ia, ib, m.map(a, b).clone()));
        }
    }
    let Colimit { dim, maps } = colimit(m.field, &dims, &edges);
    Ok(DownsetColimit {
        elements,
        dim,
        maps,
    })
}

// ---------------------------------------------------------------------------
// Text format: `dim <elt> <n>` lines, then `map <a> <b> <entries...>` lines,
// one per Hasse cover, row-major. Elements without a `dim` line default to 0.
// ---------------------------------------------------------------------------

pub fn parse_module(text: &str, base: &PosetRef, field: PrimeField) -> Result<PersistenceModule> {
    let mut dims = vec![0usize; base.len()];
    let mut dim_seen = vec![false; base.len()];
    let mut raw_maps: Vec<(usize, usize, Vec<u64>, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "dim" => {
                if toks.len() != 3 {
                    return Err(Error::parse(lineno + 1, "expected `dim <elt> <n>`"));
                }
                let i = base
                    .idx(toks[1])
                    .map_err(|_| Error::parse(lineno + 1, format!("unknown element {:?}", toks[1])))?;
                if dim_seen[i] {
                    return Err(Error::parse(lineno + 1, format!("duplicate dim for {:?}", toks[1])));
                }
                dim_seen[i] = true;
                dims[i] = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad dimension {:?}", toks[2])))?;
            }
            "map" => {
                if toks.len() < 3 {
                    return Err(Error::parse(lineno + 1, "expected `map <a> <b> <entries...>`"));
                }
                let a = base
                    .idx(toks[1])
                    .map_err(|_| Error::parse(lineno + 1, format!("unknown element {:?}", toks[1])))?;
                let b = base
                    .idx(toks[2])
                    .map_err(|_| Error::parse(lineno + 1, format!("unknown element {:?}", toks[2])))?;
                let entries: Vec<u64> = toks[3..]
                    .iter()
                    .map(|t| {
                        t.parse::<u64>()
                            .map_err(|_| Error::parse(lineno + 1, format!("bad entry {:?}", t)))
                    })
                    .collect::<Result<_>>()?;
                raw_maps.push((a, b, entries, lineno + 1));
            }
            other => {
                return Err(Error::parse(lineno + 1, format!("unknown directive {other:?}")));
            }
        }
    }
    let mut edge_maps = HashMap::new();
    for (a, b, entries, lineno) in raw_maps {
        let mat = Mat::from_entries(dims[b], dims[a], field, &entries)
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
        if edge_maps.insert((a, b), mat).is_some() {
            return Err(Error::parse(
                lineno,
                format!("duplicate map for ({:?}, {:?})", base.id(a), base.id(b)),
            ));
        }
    }
    // Covers with no `map` line default to the zero matrix, which is only
    // unambiguous when a dimension is zero; otherwise demand explicitness.
    for &(a, b) in base.hasse_edges() {
        if !edge_maps.contains_key(&(a, b)) {
            if dims[a] == 0 || dims[b] == 0 {
                edge_maps.insert((a, b), Mat::zero(dims[b], dims[a], field));
            } else {
                return Err(Error::Validation(format!(
                    "missing map for cover ({:?}, {:?})",
                    base.id(a),
                    base.id(b)
                )));
            }
        }
    }
    validate_module(base, field, dims, edge_maps)
}

pub fn render_module(m: &PersistenceModule) -> String {
    let mut out = String::new();
    for i in 0..m.base.len() {
        let _ = writeln!(out, "dim {} {}", m.base.id(i), m.dims[i]);
    }
    for &(a, b) in m.base.hasse_edges() {
        let mat = m.map(a, b);
        if mat.rows() == 0 || mat.cols() == 0 {
            continue;
        }
        let mut line = format!("map {} {}", m.base.id(a), m.base.id(b));
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                let _ = write!(line, " {}", mat.get(i, j));
            }
        }
        let _ = writeln!(out, "{line}");
    }
    out
}
