//! Finite posets with optional metric embeddings.
//!
//! A poset is stored as a reflexive-transitive `leq` matrix over indexed
//! elements, together with its Hasse covers and a fixed linear extension.
//! Construction takes an arbitrary generating relation and closes it;
//! antisymmetry violations are rejected with a witness cycle. Preorders that
//! are not posets are out of scope.

use crate::error::{Error, Result};
use crate::rat::ExtRat;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

pub type PosetRef = Arc<FinitePoset>;

pub struct FinitePoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>, // row-major: leq[a * n + b] <=> a <= b
    hasse: Vec<(usize, usize)>,
    linext: Vec<usize>,
    coords: Option<Vec<Vec<ExtRat>>>,
    pub(crate) zeta_cache: OnceLock<Arc<crate::mobius::ZetaData>>,
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinitePoset")
            .field("ids", &self.ids)
            .field("hasse", &self.hasse)
            .finish()
    }
}

/// Structural equality: same elements in the same order, same order relation,
/// same coordinates. Derived data (covers, linear extension) follows.
impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.leq == other.leq && self.coords == other.coords
    }
}
impl Eq for FinitePoset {}

/// Build a poset from element declarations and a generating relation.
///
/// `elements` lists unique ids, optionally with coordinate vectors (all
/// present elements must then agree on dimension). `relations` contains pairs
/// `(a, b)` meaning `a <= b`; reflexivity and transitivity are added here.
pub fn build_poset(
    elements: &[(String, Option<Vec<ExtRat>>)],
    relations: &[(String, String)],
) -> Result<PosetRef> {
    let n = elements.len();
    let mut index = HashMap::new();
    let mut ids = Vec::with_capacity(n);
    for (i, (id, _)) in elements.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(Error::DuplicateElement(id.clone()));
        }
        ids.push(id.clone());
    }

    let coords = {
        let have: Vec<_> = elements.iter().filter(|(_, c)| c.is_some()).collect();
        if have.is_empty() {
            None
        } else if have.len() < n {
            let missing = elements.iter().find(|(_, c)| c.is_none()).unwrap();
            return Err(Error::MissingCoords(missing.0.clone()));
        } else {
            let dim = elements[0].1.as_ref().unwrap().len();
            for (id, c) in elements {
                let c = c.as_ref().unwrap();
                if c.len() != dim {
                    return Err(Error::DimensionMismatch(id.clone(), dim, c.len()));
                }
            }
            Some(elements.iter().map(|(_, c)| c.clone().unwrap()).collect())
        }
    };

    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (a, b) in relations {
        let ia = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
        let ib = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
        leq[ia * n + ib] = true;
    }
    // Warshall closure.
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if leq[i * n + j] && leq[j * n + i] {
                return Err(Error::Cycle(ids[j].clone(), ids[i].clone()));
            }
        }
    }

    Ok(Arc::new(FinitePoset::from_parts(ids, index, leq, coords)))
}

impl FinitePoset {
    fn from_parts(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        leq: Vec<bool>,
        coords: Option<Vec<Vec<ExtRat>>>,
    ) -> Self {
        let n = ids.len();
        let mut hasse = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] {
                    let mut cover = true;
                    for c in 0..n {
                        if c != a && c != b && leq[a * n + c] && leq[c * n + b] {
                            cover = false;
                            break;
                        }
                    }
                    if cover {
                        hasse.push((a, b));
                    }
                }
            }
        }
        // Kahn's algorithm; ties broken by declaration index so the extension
        // is deterministic.
        let mut indeg = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] {
                    indeg[b] += 1;
                }
            }
        }
        let mut linext = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for _ in 0..n {
            let next = (0..n)
                .find(|&i| !used[i] && indeg[i] == 0)
                .expect("acyclic by construction");
            used[next] = true;
            linext.push(next);
            for b in 0..n {
                if b != next && leq[next * n + b] {
                    indeg[b] -= 1;
                }
            }
        }
        FinitePoset {
            ids,
            index,
            leq,
            hasse,
            linext,
            coords,
            zeta_cache: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn idx(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Hasse covers `(a, b)` with `a` covered by `b`.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// A fixed linear extension: element indices in a total order refining `<=`.
    pub fn linext(&self) -> &[usize] {
        &self.linext
    }

    pub fn coords(&self, i: usize) -> Option<&[ExtRat]> {
        self.coords.as_ref().map(|c| c[i].as_slice())
    }

    pub fn has_coords(&self) -> bool {
        self.coords.is_some()
    }

    /// Total order check; returns a witness incomparable pair on failure.
    pub fn chain_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.len() {
            for b in 0..a {
                if !self.leq(a, b) && !self.leq(b, a) {
                    return Some((b, a));
                }
            }
        }
        None
    }

    pub fn is_chain(&self) -> bool {
        self.chain_witness().is_none()
    }

    /// The maximum element, if one exists.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|x| self.leq(x, m)))
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.lt(a, b)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.lt(b, a)))
            .collect()
    }

    /// Elements `<= p`, sorted by index.
    pub fn below(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq(x, p)).collect()
    }

    /// Elements `>= p`, sorted by index.
    pub fn above(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq(p, x)).collect()
    }
}

/// Pointer or structural equality of poset references.
pub fn same_poset(a: &PosetRef, b: &PosetRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A downward-closed subset, stored as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Downset {
    poset: PosetRef,
    elements: Vec<usize>,
}

impl Downset {
    /// Validates downward closure. The empty downset is allowed.
    pub fn new(poset: PosetRef, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        for &e in &elements {
            if e >= poset.len() {
                return Err(Error::UnknownElement(format!("#{e}")));
            }
            for x in 0..poset.len() {
                if poset.leq(x, e) && elements.binary_search(&x).is_err() {
                    return Err(Error::Validation(format!(
                        "set is not downward closed: {:?} <= {:?} but {:?} is missing",
                        poset.id(x),
                        poset.id(e),
                        poset.id(x)
                    )));
                }
            }
        }
        Ok(Downset { poset, elements })
    }

    /// The principal downset of `p`.
    pub fn principal(poset: PosetRef, p: usize) -> Self {
        let elements = poset.below(p);
        Downset { poset, elements }
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Interval flavor: `Bar` is the product order on pairs, `Hat` is reverse
/// containment. Both share the same element set `{(a, b) : a <= b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Bar,
    Hat,
}

/// The poset of intervals of a base poset, together with bookkeeping that maps
/// interval elements back to endpoint pairs.
#[derive(Debug, Clone)]
pub struct IntervalPoset {
    pub poset: PosetRef,
    pub base: PosetRef,
    pub pairs: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
    pub flavor: Flavor,
}

impl PartialEq for IntervalPoset {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor && same_poset(&self.base, &other.base)
    }
}
impl Eq for IntervalPoset {}

fn interval_poset(base: &PosetRef, flavor: Flavor) -> IntervalPoset {
    let n = base.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if base.leq(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let m = pairs.len();
    let mut index = HashMap::new();
    let mut ids = Vec::with_capacity(m);
    for (k, &(a, b)) in pairs.iter().enumerate() {
        index.insert((a, b), k);
        ids.push(format!("[{},{}]", base.id(a), base.id(b)));
    }
    let mut leq = vec![false; m * m];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            let le = match flavor {
                Flavor::Bar => base.leq(a, c) && base.leq(b, d),
                Flavor::Hat => base.leq(a, c) && base.leq(d, b),
            };
            if le {
                leq[i * m + j] = true;
            }
        }
    }
    let coords = base.coords.as_ref().map(|cs| {
        pairs
            .iter()
            .map(|&(a, b)| {
                let mut v = cs[a].clone();
                v.extend(cs[b].iter().cloned());
                v
            })
            .collect()
    });
    let mut index_map = HashMap::new();
    for (k, id) in ids.iter().enumerate() {
        index_map.insert(id.clone(), k);
    }
    let poset = Arc::new(FinitePoset::from_parts(ids, index_map, leq, coords));
    IntervalPoset {
        poset,
        base: base.clone(),
        pairs,
        index,
        flavor,
    }
}

/// Intervals under the product order: `[a,b] <= [c,d]` iff `a <= c` and `b <= d`.
/// Coordinates, when the base has them, are concatenated endpoint coordinates.
pub fn interval_poset_bar(base: &PosetRef) -> IntervalPoset {
    interval_poset(base, Flavor::Bar)
}

/// Intervals under reverse containment: `[a,b] <= [c,d]` iff `[c,d]` is inside
/// `[a,b]`, i.e. `a <= c` and `d <= b`.
pub fn interval_poset_hat(base: &PosetRef) -> IntervalPoset {
    interval_poset(base, Flavor::Hat)
}

impl IntervalPoset {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn find(&self, a: usize, b: usize) -> Result<usize> {
        self.index.get(&(a, b)).copied().ok_or_else(|| {
            Error::IntervalViolation(self.base.id(a).to_string(), self.base.id(b).to_string())
        })
    }

    pub fn is_diagonal(&self, k: usize) -> bool {
        let (a, b) = self.pairs[k];
        a == b
    }
}

/// An embedded chain: a totally ordered poset whose elements carry strictly
/// increasing one-dimensional coordinates. Ids default to the rendered values.
pub fn chain_poset(values: &[ExtRat]) -> Result<PosetRef> {
    for w in values.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Validation(format!(
                "chain values must strictly increase: {} then {}",
                w[0], w[1]
            )));
        }
    }
    let elements: Vec<_> = values
        .iter()
        .map(|v| (v.to_string(), Some(vec![v.clone()])))
        .collect();
    let relations: Vec<_> = values
        .windows(2)
        .map(|w| (w[0].to_string(), w[1].to_string()))
        .collect();
    build_poset(&elements, &relations)
}

/// Product-of-chains grid. Axis values must strictly increase. Element ids are
/// the axis values joined with commas; coordinates are the value vectors.
pub fn grid_poset(axes: &[Vec<ExtRat>]) -> Result<PosetRef> {
    if axes.is_empty() {
        return Err(Error::Validation("grid needs at least one axis".into()));
    }
    for axis in axes {
        if axis.is_empty() {
            return Err(Error::Validation("empty grid axis".into()));
        }
        for w in axis.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Validation(format!(
                    "grid axis values must strictly increase: {} then {}",
                    w[0], w[1]
                )));
            }
        }
    }
    let mut points: Vec<Vec<ExtRat>> = vec![vec![]];
    for axis in axes {
        let mut next = Vec::new();
        for p in &points {
            for v in axis {
                let mut q = p.clone();
                q.push(v.clone());
                next.push(q);
            }
        }
        points = next;
    }
    let elements: Vec<_> = points
        .iter()
        .map(|p| (grid_id(p), Some(p.clone())))
        .collect();
    let mut relations = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j && p.iter().zip(q).all(|(x, y)| x <= y) {
                relations.push((elements[i].0.clone(), elements[j].0.clone()));
            }
        }
    }
    build_poset(&elements, &relations)
}

pub fn grid_id(point: &[ExtRat]) -> String {
    point
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Adjoin a fresh maximum element above everything. Its id is `top` (with
/// underscores prefixed until unused) and its coordinates, when the poset is
/// embedded, are all-infinite. Returns the new poset and the top's index.
pub fn adjoin_top(poset: &PosetRef) -> (PosetRef, usize) {
    let mut top_id = String::from("top");
    while poset.index.contains_key(&top_id) {
        top_id.insert(0, '_');
    }
    let dim = poset.coords.as_ref().map(|c| c.first().map_or(0, |v| v.len()));
    let mut elements: Vec<(String, Option<Vec<ExtRat>>)> = poset
        .ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), poset.coords(i).map(|c| c.to_vec())))
        .collect();
    elements.push((top_id.clone(), dim.map(|d| vec![ExtRat::Infinity; d])));
    let mut relations: Vec<(String, String)> = poset
        .hasse
        .iter()
        .map(|&(a, b)| (poset.ids[a].clone(), poset.ids[b].clone()))
        .collect();
    for id in &poset.ids {
        relations.push((id.clone(), top_id.clone()));
    }
    let p = build_poset(&elements, &relations).expect("adjoining a top preserves the order");
    let t = p.idx(&top_id).unwrap();
    (p, t)
}

// ---------------------------------------------------------------------------
// Text format.
//
//   # comment
//   elt <id> [<coord> ...]
//   le <id1> <id2>
//
// Coordinates are optional but all-or-nothing across elements.
// ---------------------------------------------------------------------------

pub fn parse_poset(text: &str) -> Result<PosetRef> {
    let mut elements = Vec::new();
    let mut relations = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "elt" => {
                if toks.len() < 2 {
                    return Err(Error::parse(lineno + 1, "elt needs an id"));
                }
                let coords = if toks.len() > 2 {
                    let mut cs = Vec::new();
                    for t in &toks[2..] {
                        cs.push(t.parse::<ExtRat>().map_err(|e| {
                            Error::parse(lineno + 1, e.to_string())
                        })?);
                    }
                    Some(cs)
                } else {
                    None
                };
                elements.push((toks[1].to_string(), coords));
            }
            "le" => {
                if toks.len() != 3 {
                    return Err(Error::parse(lineno + 1, "le needs exactly two ids"));
                }
                relations.push((toks[1].to_string(), toks[2].to_string()));
            }
            other => {
                return Err(Error::parse(lineno + 1, format!("unknown directive {other:?}")));
            }
        }
    }
    if elements.is_empty() {
        return Err(Error::parse(0, "poset file declares no elements"));
    }
    build_poset(&elements, &relations)
}

pub fn render_poset(poset: &FinitePoset) -> String {
    let mut out = String::new();
    for (i, id) in poset.ids.iter().enumerate() {
        out.push_str("elt ");
        out.push_str(id);
        if let Some(cs) = poset.coords(i) {
            for c in cs {
                let _ = write!(out, " {c}");
            }
        }
        out.push('\n');
    }
    for &(a, b) in &poset.hasse {
        let _ = writeln!(out, "le {} {}", poset.ids[a], poset.ids[b]);
    }
    out
}

pub fn load_poset(path: &std::path::Path) -> Result<PosetRef> {
    parse_poset(&std::fs::read_to_string(path)?)
}

pub fn save_poset(poset: &FinitePoset, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, render_poset(poset))?;
    Ok(())
}
