//! Integer functions on posets and exact Mobius inversion.
//!
//! The inversion `del m` of `m : P -> Z` is the unique function with
//! `m(b) = sum_{a <= b} del m(a)`. It is computed by back-substitution along
//! a linear extension in O(n^2) integer operations; the zeta/Mobius matrices
//! are also available (and cached per poset) for identities that want them.

use crate::error::{Error, Result};
use crate::galois::GaloisConnection;
use crate::poset::PosetRef;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Write as _;
use std::sync::Arc;

/// An integer-valued function on the elements of a poset. Values are
/// arbitrary-precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFn {
    domain: PosetRef,
    values: Vec<BigInt>,
}

impl IntFn {
    pub fn zero(domain: PosetRef) -> Self {
        let n = domain.len();
        IntFn {
            domain,
            values: vec![BigInt::zero(); n],
        }
    }

    pub fn from_values(domain: PosetRef, values: Vec<BigInt>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::DomainMismatch(format!(
                "{} values for {} elements",
                values.len(),
                domain.len()
            )));
        }
        Ok(IntFn { domain, values })
    }

    pub fn domain(&self) -> &PosetRef {
        &self.domain
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.values[i]
    }

    pub fn set(&mut self, i: usize, v: BigInt) {
        self.values[i] = v;
    }

    pub fn get_id(&self, id: &str) -> Result<&BigInt> {
        Ok(&self.values[self.domain.idx(id)?])
    }

    pub fn set_id(&mut self, id: &str, v: i64) -> Result<()> {
        let i = self.domain.idx(id)?;
        self.values[i] = BigInt::from(v);
        Ok(())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    pub fn total_mass(&self) -> BigInt {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &IntFn) -> Result<IntFn> {
        if !crate::poset::same_poset(&self.domain, &other.domain) {
            return Err(Error::BaseMismatch("adding functions on different posets".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntFn {
            domain: self.domain.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &IntFn) -> Result<IntFn> {
        if !crate::poset::same_poset(&self.domain, &other.domain) {
            return Err(Error::BaseMismatch("subtracting functions on different posets".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntFn {
            domain: self.domain.clone(),
            values,
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntFn {
        IntFn {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }
}

/// Zeta and Mobius matrices of a poset, in element-index space. Both are
/// integer matrices; under any linear extension they are unitriangular.
#[derive(Debug, Clone)]
pub struct ZetaData {
    n: usize,
    zeta: Vec<BigInt>,
    mu: Vec<BigInt>,
}

impl ZetaData {
    fn compute(p: &PosetRef) -> ZetaData {
        let n = p.len();
        let mut zeta = vec![BigInt::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) {
                    zeta[a * n + b] = BigInt::one();
                }
            }
        }
        // mu(a, a) = 1 and mu(a, b) = -sum_{a <= c < b} mu(a, c), filled in
        // linear-extension order so every needed value is ready.
        let mut mu = vec![BigInt::zero(); n * n];
        for &b in p.linext() {
            for a in 0..n {
                if a == b {
                    mu[a * n + b] = BigInt::one();
                } else if p.leq(a, b) {
                    let mut s = BigInt::zero();
                    for c in 0..n {
                        if p.leq(a, c) && p.lt(c, b) {
                            s += &mu[a * n + c];
                        }
                    }
                    mu[a * n + b] = -s;
                }
            }
        }
        ZetaData { n, zeta, mu }
    }

    pub fn zeta(&self, a: usize, b: usize) -> &BigInt {
        &self.zeta[a * self.n + b]
    }

    pub fn mu(&self, a: usize, b: usize) -> &BigInt {
        &self.mu[a * self.n + b]
    }

    /// Row-vector product `v * zeta`, i.e. `(v zeta)(b) = sum_a v(a) zeta(a, b)`.
    pub fn apply_zeta(&self, v: &IntFn) -> IntFn {
        self.apply(&self.zeta, v)
    }

    /// Row-vector product `v * mu`.
    pub fn apply_mu(&self, v: &IntFn) -> IntFn {
        self.apply(&self.mu, v)
    }

    fn apply(&self, mat: &[BigInt], v: &IntFn) -> IntFn {
        let n = self.n;
        assert_eq!(v.values.len(), n, "function and matrix sizes differ");
        let mut out = vec![BigInt::zero(); n];
        for a in 0..n {
            let va = &v.values[a];
            if va.is_zero() {
                continue;
            }
            for b in 0..n {
                let z = &mat[a * n + b];
                if !z.is_zero() {
                    out[b] += va * z;
                }
            }
        }
        IntFn {
            domain: v.domain.clone(),
            values: out,
        }
    }
}

/// Zeta/Mobius matrices for a poset, computed once and shared.
pub fn zeta_data(p: &PosetRef) -> Arc<ZetaData> {
    p.zeta_cache.get_or_init(|| Arc::new(ZetaData::compute(p))).clone()
}

/// Mobius inversion by back-substitution: `del m(b) = m(b) - sum_{a < b} del m(a)`.
pub fn mobius_invert(m: &IntFn) -> IntFn {
    let p = &m.domain;
    let n = p.len();
    let mut out = vec![BigInt::zero(); n];
    for &b in p.linext() {
        let mut v = m.values[b].clone();
        for a in 0..n {
            if p.lt(a, b) {
                v -= &out[a];
            }
        }
        out[b] = v;
    }
    IntFn {
        domain: p.clone(),
        values: out,
    }
}

/// The inverse transform: `m(b) = sum_{a <= b} dm(a)`.
pub fn zeta_transform(dm: &IntFn) -> IntFn {
    let p = &dm.domain;
    let n = p.len();
    let mut out = vec![BigInt::zero(); n];
    for b in 0..n {
        for a in 0..n {
            if p.leq(a, b) {
                out[b] += &dm.values[a];
            }
        }
    }
    IntFn {
        domain: p.clone(),
        values: out,
    }
}

/// Pushforward along any map of elements (monotonicity is not required):
/// `(map_# m)(q) = sum over the fiber of q`.
pub fn pushforward(m: &IntFn, map: &[usize], target: &PosetRef) -> Result<IntFn> {
    if map.len() != m.domain.len() {
        return Err(Error::DomainMismatch(format!(
            "map defined on {} of {} elements",
            map.len(),
            m.domain.len()
        )));
    }
    let mut out = vec![BigInt::zero(); target.len()];
    for (p, &q) in map.iter().enumerate() {
        if q >= target.len() {
            return Err(Error::UnknownElement(format!("#{q} in target")));
        }
        out[q] += &m.values[p];
    }
    Ok(IntFn {
        domain: target.clone(),
        values: out,
    })
}

/// Pullback along a map of elements: `(map^# n)(p) = n(map(p))`.
pub fn pullback(n: &IntFn, map: &[usize], domain: &PosetRef) -> Result<IntFn> {
    if map.len() != domain.len() {
        return Err(Error::DomainMismatch(format!(
            "map defined on {} of {} elements",
            map.len(),
            domain.len()
        )));
    }
    let mut out = Vec::with_capacity(domain.len());
    for &q in map {
        if q >= n.domain.len() {
            return Err(Error::UnknownElement(format!("#{q} in source of pullback")));
        }
        out.push(n.values[q].clone());
    }
    Ok(IntFn {
        domain: domain.clone(),
        values: out,
    })
}

/// The Galois-connection inversion identity: for a connection
/// `f : P <-> Q : g` and any `m : P -> Z`,
///
/// ```text
/// del_Q(m . g) = f_#(del_P m)
/// ```
///
/// Returns the first counterexample element on failure (which would indicate
/// a bug in one of the transforms, not bad input).
pub fn rgct_check(c: &GaloisConnection, m: &IntFn) -> Result<()> {
    if !crate::poset::same_poset(c.source(), m.domain()) {
        return Err(Error::BaseMismatch("function does not live on the source poset".into()));
    }
    let pulled = pullback(m, c.g_map(), c.target())?;
    let lhs = mobius_invert(&pulled);
    let rhs = pushforward(&mobius_invert(m), c.f_map(), c.target())?;
    for q in 0..c.target().len() {
        if lhs.values[q] != rhs.values[q] {
            return Err(Error::Validation(format!(
                "inversion identity fails at {:?}: {} vs {}",
                c.target().id(q),
                lhs.values[q],
                rhs.values[q]
            )));
        }
    }
    Ok(())
}

/// The classical formulation, as an identity of Mobius-function sums: for all
/// `p` in the source and `q` in the target,
///
/// ```text
/// sum_{v : g(v) = p} mu_Q(v, q)  =  sum_{u : f(u) = q} mu_P(p, u)
/// ```
pub fn classical_rota_check(c: &GaloisConnection) -> Result<()> {
    let zp = zeta_data(c.source());
    let zq = zeta_data(c.target());
    for p in 0..c.source().len() {
        for q in 0..c.target().len() {
            let mut lhs = BigInt::zero();
            for v in 0..c.target().len() {
                if c.g(v) == p {
                    lhs += zq.mu(v, q);
                }
            }
            let mut rhs = BigInt::zero();
            for u in 0..c.source().len() {
                if c.f(u) == q {
                    rhs += zp.mu(p, u);
                }
            }
            if lhs != rhs {
                return Err(Error::Validation(format!(
                    "Mobius sums differ at ({:?}, {:?}): {} vs {}",
                    c.source().id(p),
                    c.target().id(q),
                    lhs,
                    rhs
                )));
            }
        }
    }
    Ok(())
}

/// Inversion through a constructible presentation: given an insertion
/// `alpha : S <-> P` and `m' : S -> Z`, the inversion of `m' . beta` on `P` is
/// the pushforward `alpha_#(del_S m')`. This trades inversion over `P` for
/// inversion over the (typically simpler) `S`.
pub fn constructible_invert(ins: &GaloisConnection, mprime: &IntFn) -> Result<IntFn> {
    if !ins.is_insertion() {
        return Err(Error::NotInsertion(
            "constructible inversion needs an insertion".into(),
            String::new(),
        ));
    }
    if !crate::poset::same_poset(ins.source(), mprime.domain()) {
        return Err(Error::BaseMismatch("function does not live on the insertion source".into()));
    }
    pushforward(&mobius_invert(mprime), ins.f_map(), ins.target())
}

// ---------------------------------------------------------------------------
// Text format: one `<element-id> <integer>` per line; omitted elements are 0.
// ---------------------------------------------------------------------------

pub fn parse_intfn(text: &str, domain: &PosetRef) -> Result<IntFn> {
    let mut f = IntFn::zero(domain.clone());
    let mut seen = vec![false; domain.len()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(lineno + 1, "expected `<element-id> <integer>`"));
        }
        let i = domain
            .idx(toks[0])
            .map_err(|_| Error::parse(lineno + 1, format!("unknown element {:?}", toks[0])))?;
        if seen[i] {
            return Err(Error::parse(lineno + 1, format!("duplicate value for {:?}", toks[0])));
        }
        seen[i] = true;
        let v: BigInt = toks[1]
            .parse()
            .map_err(|_| Error::parse(lineno + 1, format!("bad integer {:?}", toks[1])))?;
        f.values[i] = v;
    }
    Ok(f)
}

pub fn render_intfn(f: &IntFn) -> String {
    let mut out = String::new();
    for i in 0..f.domain.len() {
        let _ = writeln!(out, "{} {}", f.domain.id(i), f.values[i]);
    }
    out
}
