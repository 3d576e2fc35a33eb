//! Galois connections between finite posets.
//!
//! A connection is a pair of monotone maps `f : P -> Q`, `g : Q -> P` with
//! `f(p) <= q` iff `p <= g(q)`. An insertion additionally satisfies
//! `f(g(q)) = q` for all `q`. Either adjoint determines the other when it
//! exists; the synthesis helpers recover the partner and validate the pair.

use crate::error::{Error, Result};
use crate::poset::{interval_poset_bar, same_poset, IntervalPoset, PosetRef};

#[derive(Debug, Clone)]
pub struct GaloisConnection {
    source: PosetRef,
    target: PosetRef,
    f: Vec<usize>, // source index -> target index, the left adjoint
    g: Vec<usize>, // target index -> source index, the right adjoint
    insertion: bool,
}

fn check_monotone(p: &PosetRef, q: &PosetRef, map: &[usize]) -> Result<()> {
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.leq(a, b) && !q.leq(map[a], map[b]) {
                return Err(Error::NotMonotone(p.id(a).to_string(), p.id(b).to_string()));
            }
        }
    }
    Ok(())
}

/// Validate a candidate pair of adjoints. Checks totality, monotonicity of
/// both maps, the adjunction on every pair, and that the two composites are
/// monotone idempotent (`g . f` is a closure operator on the source, `f . g`
/// a kernel operator on the target). Records whether the pair is an insertion.
pub fn validate_galois(
    source: &PosetRef,
    target: &PosetRef,
    f: Vec<usize>,
    g: Vec<usize>,
) -> Result<GaloisConnection> {
    if f.len() != source.len() {
        return Err(Error::DomainMismatch(format!(
            "left adjoint defined on {} of {} elements",
            f.len(),
            source.len()
        )));
    }
    if g.len() != target.len() {
        return Err(Error::DomainMismatch(format!(
            "right adjoint defined on {} of {} elements",
            g.len(),
            target.len()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&x| x >= target.len()) {
        return Err(Error::UnknownElement(format!("#{bad} in target")));
    }
    if let Some(&bad) = g.iter().find(|&&x| x >= source.len()) {
        return Err(Error::UnknownElement(format!("#{bad} in source")));
    }
    check_monotone(source, target, &f)?;
    check_monotone(target, source, &g)?;
    for p in 0..source.len() {
        for q in 0..target.len() {
            if target.leq(f[p], q) != source.leq(p, g[q]) {
                return Err(Error::AdjunctionFailure(
                    source.id(p).to_string(),
                    target.id(q).to_string(),
                ));
            }
        }
    }
    // Closure operator laws follow from the adjunction; verify anyway so a
    // bug here cannot propagate silently.
    for p in 0..source.len() {
        let c = g[f[p]];
        debug_assert!(source.leq(p, c));
        debug_assert_eq!(g[f[c]], c);
    }
    for q in 0..target.len() {
        let k = f[g[q]];
        debug_assert!(target.leq(k, q));
        debug_assert_eq!(f[g[k]], k);
    }
    let insertion = (0..target.len()).all(|q| f[g[q]] == q);
    Ok(GaloisConnection {
        source: source.clone(),
        target: target.clone(),
        f,
        g,
        insertion,
    })
}

/// Like [`validate_galois`] but additionally demands an insertion,
/// i.e. `f . g = id` on the target.
pub fn validate_insertion(
    source: &PosetRef,
    target: &PosetRef,
    f: Vec<usize>,
    g: Vec<usize>,
) -> Result<GaloisConnection> {
    let c = validate_galois(source, target, f, g)?;
    if !c.insertion {
        let q = (0..target.len()).find(|&q| c.f[c.g[q]] != q).unwrap();
        return Err(Error::NotInsertion(
            target.id(q).to_string(),
            target.id(c.f[c.g[q]]).to_string(),
        ));
    }
    Ok(c)
}

/// Synthesize the right adjoint `g(q) = max{p : f(p) <= q}` of a monotone map
/// and validate the resulting connection.
pub fn right_adjoint_of(source: &PosetRef, target: &PosetRef, f: Vec<usize>) -> Result<GaloisConnection> {
    if f.len() != source.len() {
        return Err(Error::DomainMismatch(format!(
            "map defined on {} of {} elements",
            f.len(),
            source.len()
        )));
    }
    let mut g = Vec::with_capacity(target.len());
    for q in 0..target.len() {
        let candidates: Vec<usize> = (0..source.len()).filter(|&p| target.leq(f[p], q)).collect();
        if candidates.is_empty() {
            return Err(Error::NoAdjoint(
                target.id(q).to_string(),
                "no element maps below it".into(),
            ));
        }
        let max = candidates
            .iter()
            .copied()
            .find(|&m| candidates.iter().all(|&p| source.leq(p, m)));
        match max {
            Some(m) => g.push(m),
            None => {
                return Err(Error::NoAdjoint(
                    target.id(q).to_string(),
                    "candidate set has no maximum".into(),
                ))
            }
        }
    }
    validate_galois(source, target, f, g)
}

/// Synthesize the left adjoint `f(p) = min{q : p <= g(q)}` of a monotone map
/// and validate the resulting connection.
pub fn left_adjoint_of(source: &PosetRef, target: &PosetRef, g: Vec<usize>) -> Result<GaloisConnection> {
    if g.len() != target.len() {
        return Err(Error::DomainMismatch(format!(
            "map defined on {} of {} elements",
            g.len(),
            target.len()
        )));
    }
    let mut f = Vec::with_capacity(source.len());
    for p in 0..source.len() {
        let candidates: Vec<usize> = (0..target.len()).filter(|&q| source.leq(p, g[q])).collect();
        if candidates.is_empty() {
            return Err(Error::NoAdjoint(
                source.id(p).to_string(),
                "no element maps above it".into(),
            ));
        }
        let min = candidates
            .iter()
            .copied()
            .find(|&m| candidates.iter().all(|&q| target.leq(m, q)));
        match min {
            Some(m) => f.push(m),
            None => {
                return Err(Error::NoAdjoint(
                    source.id(p).to_string(),
                    "candidate set has no minimum".into(),
                ))
            }
        }
    }
    validate_galois(source, target, f, g)
}

/// Compose two connections; insertions compose to insertions.
pub fn compose_galois(c1: &GaloisConnection, c2: &GaloisConnection) -> Result<GaloisConnection> {
    if !same_poset(&c1.target, &c2.source) {
        return Err(Error::DomainMismatch(
            "first target differs from second source".into(),
        ));
    }
    let f: Vec<usize> = c1.f.iter().map(|&x| c2.f[x]).collect();
    let g: Vec<usize> = c2.g.iter().map(|&x| c1.g[x]).collect();
    let c = validate_galois(&c1.source, &c2.target, f, g)?;
    debug_assert!(!(c1.insertion && c2.insertion) || c.insertion);
    Ok(c)
}

impl GaloisConnection {
    pub fn source(&self) -> &PosetRef {
        &self.source
    }

    pub fn target(&self) -> &PosetRef {
        &self.target
    }

    pub fn f(&self, p: usize) -> usize {
        self.f[p]
    }

    pub fn g(&self, q: usize) -> usize {
        self.g[q]
    }

    pub fn f_map(&self) -> &[usize] {
        &self.f
    }

    pub fn g_map(&self) -> &[usize] {
        &self.g
    }

    pub fn is_insertion(&self) -> bool {
        self.insertion
    }

    /// The identity connection on a poset.
    pub fn identity(p: &PosetRef) -> GaloisConnection {
        GaloisConnection {
            source: p.clone(),
            target: p.clone(),
            f: (0..p.len()).collect(),
            g: (0..p.len()).collect(),
            insertion: true,
        }
    }
}

/// Extend a connection to bar interval posets: `f([a,b]) = [f(a), f(b)]` and
/// likewise for `g`. Monotone maps send intervals to intervals, and the
/// extended pair is again a connection (an insertion if the original was).
pub fn extend_galois_bar(
    c: &GaloisConnection,
) -> Result<(IntervalPoset, IntervalPoset, GaloisConnection)> {
    let src = interval_poset_bar(&c.source);
    let tgt = interval_poset_bar(&c.target);
    let mut f = Vec::with_capacity(src.len());
    for k in 0..src.len() {
        let (a, b) = src.pair(k);
        f.push(tgt.find(c.f[a], c.f[b])?);
    }
    let mut g = Vec::with_capacity(tgt.len());
    for k in 0..tgt.len() {
        let (a, b) = tgt.pair(k);
        g.push(src.find(c.g[a], c.g[b])?);
    }
    let ext = validate_galois(&src.poset, &tgt.poset, f, g)?;
    Ok((src, tgt, ext))
}
