//! Matchings between nonnegative bar diagrams: spans of multisets whose legs
//! hit intervals or diagonal points, their sup-cost, composition by gluing
//! along the shared middle, and exact bottleneck distance with a certificate.

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poset::Flavor;
use crate::rat::ExtRat;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::HashMap;
use std::fmt::Write as _;

/// One leg endpoint: an off-diagonal interval of the respective diagram, or a
/// point on the diagonal at coordinate `(t, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchTarget {
    Interval(usize),
    Diagonal(ExtRat),
}

/// A matching from `source` to `target`: rows `(left, right, mult)` with
/// positive multiplicities whose off-diagonal marginals reproduce the two
/// canonical representatives. Diagonal mass is unconstrained.
#[derive(Debug, Clone)]
pub struct Matching {
    source: Diagram,
    target: Diagram,
    rows: Vec<(MatchTarget, MatchTarget, BigInt)>,
}

impl Matching {
    pub fn source(&self) -> &Diagram {
        &self.source
    }

    pub fn target(&self) -> &Diagram {
        &self.target
    }

    pub fn rows(&self) -> &[(MatchTarget, MatchTarget, BigInt)] {
        &self.rows
    }
}

fn require_bar_nonneg(d: &Diagram, which: &str) -> Result<()> {
    if d.flavor() != Flavor::Bar {
        return Err(Error::Validation(format!("{which} diagram is not bar flavored")));
    }
    if let Some(k) = d.support().into_iter().find(|&k| d.mult(k).is_negative()) {
        let (a, b) = d.intervals().pair(k);
        return Err(Error::NegativeDiagram(
            format!("({}, {})", d.base().id(a), d.base().id(b)),
            d.mult(k).to_string(),
        ));
    }
    if !d.base().has_coords() {
        return Err(Error::MissingCoords(format!("{which} diagram base has no coordinates")));
    }
    Ok(())
}

fn endpoint_coords(d: &Diagram, k: usize) -> (Vec<ExtRat>, Vec<ExtRat>) {
    let (a, b) = d.intervals().pair(k);
    let lo = d.base().coords(a).expect("coordinates checked").to_vec();
    let hi = d.base().coords(b).expect("coordinates checked").to_vec();
    (lo, hi)
}

/// Midpoint of an interval, the closest diagonal coordinate.
pub fn interval_midpoint(d: &Diagram, k: usize) -> Result<ExtRat> {
    let (lo, hi) = endpoint_coords(d, k);
    if lo.len() != 1 {
        return Err(Error::MissingCoords(
            "diagonal points need scalar coordinates".into(),
        ));
    }
    Ok(ExtRat::midpoint(&lo[0], &hi[0]))
}

fn row_cost(m: &Matching, left: &MatchTarget, right: &MatchTarget) -> Result<ExtRat> {
    match (left, right) {
        (MatchTarget::Interval(k1), MatchTarget::Interval(k2)) => {
            let (lo1, hi1) = endpoint_coords(&m.source, *k1);
            let (lo2, hi2) = endpoint_coords(&m.target, *k2);
            if lo1.len() != lo2.len() {
                return Err(Error::MissingCoords(
                    "endpoint coordinate arities differ".into(),
                ));
            }
            let mut best = ExtRat::zero();
            for (x, y) in lo1.iter().zip(&lo2).chain(hi1.iter().zip(&hi2)) {
                best = best.max(ExtRat::dist(x, y));
            }
            Ok(best)
        }
        (MatchTarget::Interval(k), MatchTarget::Diagonal(t)) => {
            let (lo, hi) = endpoint_coords(&m.source, *k);
            if lo.len() != 1 {
                return Err(Error::MissingCoords(
                    "diagonal points need scalar coordinates".into(),
                ));
            }
            Ok(ExtRat::dist(&lo[0], t).max(ExtRat::dist(&hi[0], t)))
        }
        (MatchTarget::Diagonal(t), MatchTarget::Interval(k)) => {
            let (lo, hi) = endpoint_coords(&m.target, *k);
            if lo.len() != 1 {
                return Err(Error::MissingCoords(
                    "diagonal points need scalar coordinates".into(),
                ));
            }
            Ok(ExtRat::dist(&lo[0], t).max(ExtRat::dist(&hi[0], t)))
        }
        (MatchTarget::Diagonal(_), MatchTarget::Diagonal(_)) => Ok(ExtRat::zero()),
    }
}

/// Check marginals and build the matching.
pub fn validate_matching(
    source: &Diagram,
    target: &Diagram,
    rows: Vec<(MatchTarget, MatchTarget, BigInt)>,
) -> Result<Matching> {
    require_bar_nonneg(source, "source")?;
    require_bar_nonneg(target, "target")?;
    for (_, _, mult) in &rows {
        if !mult.is_positive() {
            return Err(Error::Validation("nonpositive row multiplicity".into()));
        }
    }
    let mut left_marginal: HashMap<usize, BigInt> = HashMap::new();
    let mut right_marginal: HashMap<usize, BigInt> = HashMap::new();
    for (l, r, mult) in &rows {
        if let MatchTarget::Interval(k) = l {
            *left_marginal.entry(*k).or_default() += mult;
        }
        if let MatchTarget::Interval(k) = r {
            *right_marginal.entry(*k).or_default() += mult;
        }
    }
    for (d, marg, side) in [
        (source, &left_marginal, "source"),
        (target, &right_marginal, "target"),
    ] {
        for k in 0..d.intervals().len() {
            let want = d.mult(k).clone();
            let got = marg.get(&k).cloned().unwrap_or_default();
            if want != got {
                let (a, b) = d.intervals().pair(k);
                return Err(Error::MassMismatch(
                    side.to_string(),
                    format!("[{},{}]", d.base().id(a), d.base().id(b)),
                    format!("carries {got}, diagram holds {want}"),
                ));
            }
        }
    }
    Ok(Matching {
        source: source.clone(),
        target: target.clone(),
        rows,
    })
}

/// Sup over rows of the leg distance.
pub fn matching_cost(m: &Matching) -> Result<ExtRat> {
    let mut best = ExtRat::zero();
    for (l, r, _) in &m.rows {
        best = best.max(row_cost(m, l, r)?);
    }
    Ok(best)
}

/// Collapse a diagram onto the diagonal: every interval to its midpoint. The
/// result matches `d` with the zero diagram over the same base.
pub fn match_to_point(d: &Diagram) -> Result<Matching> {
    require_bar_nonneg(d, "source")?;
    let zero = Diagram::empty(d.intervals().clone());
    let mut rows = Vec::new();
    for k in d.support() {
        let mid = interval_midpoint(d, k)?;
        rows.push((MatchTarget::Interval(k), MatchTarget::Diagonal(mid), d.mult(k).clone()));
    }
    validate_matching(d, &zero, rows)
}

/// Compose two matchings along their shared middle diagram. Interval mass in
/// the middle is split deterministically: middle intervals in linear-extension
/// order, rows on each side in their own order. Mass entering a middle
/// interval must exactly equal mass leaving it.
pub fn glue_matchings(m1: &Matching, m2: &Matching) -> Result<Matching> {
    if !crate::poset::same_poset(m1.target.base(), m2.source.base())
        || m1.target.canon() != m2.source.canon()
    {
        return Err(Error::BaseMismatch(
            "matchings do not share their middle diagram".into(),
        ));
    }
    let middle = &m1.target;
    let mut rows: Vec<(MatchTarget, MatchTarget, BigInt)> = Vec::new();
    for &k in middle.intervals().poset.linext() {
        // Incoming and outgoing rows touching middle interval k, in row order.
        let mut incoming: Vec<(MatchTarget, BigInt)> = m1
            .rows
            .iter()
            .filter(|(_, r, _)| *r == MatchTarget::Interval(k))
            .map(|(l, _, mult)| (l.clone(), mult.clone()))
            .collect();
        let mut outgoing: Vec<(MatchTarget, BigInt)> = m2
            .rows
            .iter()
            .filter(|(l, _, _)| *l == MatchTarget::Interval(k))
            .map(|(_, r, mult)| (r.clone(), mult.clone()))
            .collect();
        let mass_in: BigInt = incoming.iter().map(|(_, m)| m.clone()).sum();
        let mass_out: BigInt = outgoing.iter().map(|(_, m)| m.clone()).sum();
        if mass_in != mass_out {
            let (a, b) = middle.intervals().pair(k);
            return Err(Error::MassMismatch(
                "middle".to_string(),
                format!("[{},{}]", middle.base().id(a), middle.base().id(b)),
                format!("receives {mass_in}, emits {mass_out}"),
            ));
        }
        incoming.reverse();
        outgoing.reverse();
        while let (Some((l, lm)), Some((r, rm))) = (incoming.pop(), outgoing.pop()) {
            let take = lm.clone().min(rm.clone());
            rows.push((l.clone(), r.clone(), take.clone()));
            let lrest = lm - &take;
            let rrest = rm - &take;
            if lrest.is_positive() {
                incoming.push((l, lrest));
            }
            if rrest.is_positive() {
                outgoing.push((r, rrest));
            }
        }
    }
    // Mass parked on the middle diagonal passes through freely.
    for (l, r, mult) in &m1.rows {
        if let MatchTarget::Diagonal(_) = r {
            rows.push((l.clone(), r.clone(), mult.clone()));
        }
    }
    for (l, r, mult) in &m2.rows {
        if let MatchTarget::Diagonal(_) = l {
            rows.push((l.clone(), r.clone(), mult.clone()));
        }
    }
    // Merge duplicate (left, right) rows.
    let mut merged: Vec<(MatchTarget, MatchTarget, BigInt)> = Vec::new();
    for (l, r, mult) in rows {
        if let Some(row) = merged.iter_mut().find(|(a, b, _)| *a == l && *b == r) {
            row.2 += mult;
        } else {
            merged.push((l, r, mult));
        }
    }
    validate_matching(&m1.source, &m2.target, merged)
}

fn units(d: &Diagram) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for k in d.support() {
        let mult = usize::try_from(d.mult(k)).map_err(|_| {
            Error::Validation("diagram mass does not fit the matcher".into())
        })?;
        if out.len() + mult > 100_000 {
            return Err(Error::Validation("diagram mass too large for bottleneck".into()));
        }
        out.extend(std::iter::repeat(k).take(mult));
    }
    Ok(out)
}

struct BottleneckCosts {
    pair: Vec<Vec<ExtRat>>,
    diag1: Vec<ExtRat>,
    diag2: Vec<ExtRat>,
}

fn bottleneck_costs(d1: &Diagram, d2: &Diagram, u1: &[usize], u2: &[usize]) -> Result<BottleneckCosts> {
    let probe = validate_matching(&d1.clone(), &d2.clone(), match_all_rows(d1, d2))?;
    let pair: Vec<Vec<ExtRat>> = u1
        .iter()
        .map(|&k1| {
            u2.iter()
                .map(|&k2| {
                    row_cost(&probe, &MatchTarget::Interval(k1), &MatchTarget::Interval(k2))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let diag1 = u1
        .iter()
        .map(|&k| {
            let mid = interval_midpoint(d1, k)?;
            row_cost(&probe, &MatchTarget::Interval(k), &MatchTarget::Diagonal(mid))
        })
        .collect::<Result<Vec<_>>>()?;
    let diag2 = u2
        .iter()
        .map(|&k| {
            let mid = interval_midpoint(d2, k)?;
            row_cost(&probe, &MatchTarget::Diagonal(mid), &MatchTarget::Interval(k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BottleneckCosts { pair, diag1, diag2 })
}

/// Dummy full-mass rows used only to borrow `row_cost`'s diagram context.
fn match_all_rows(d1: &Diagram, d2: &Diagram) -> Vec<(MatchTarget, MatchTarget, BigInt)> {
    let mut rows = Vec::new();
    for k in d1.support() {
        let (a, b) = d1.intervals().pair(k);
        let lo = d1.base().coords(a).map(|c| c[0].clone()).unwrap_or_else(ExtRat::zero);
        let hi = d1.base().coords(b).map(|c| c[0].clone()).unwrap_or_else(ExtRat::zero);
        rows.push((
            MatchTarget::Interval(k),
            MatchTarget::Diagonal(ExtRat::midpoint(&lo, &hi)),
            d1.mult(k).clone(),
        ));
    }
    for k in d2.support() {
        let (a, b) = d2.intervals().pair(k);
        let lo = d2.base().coords(a).map(|c| c[0].clone()).unwrap_or_else(ExtRat::zero);
        let hi = d2.base().coords(b).map(|c| c[0].clone()).unwrap_or_else(ExtRat::zero);
        rows.push((
            MatchTarget::Diagonal(ExtRat::midpoint(&lo, &hi)),
            MatchTarget::Interval(k),
            d2.mult(k).clone(),
        ));
    }
    rows
}

/// Augmenting-path bipartite matching restricted to edges within threshold.
/// Left vertices: d1 units then one diagonal slot per d2 unit. Right
/// vertices: d2 units then one diagonal slot per d1 unit.
fn feasible(
    costs: &BottleneckCosts,
    n1: usize,
    n2: usize,
    t: &ExtRat,
) -> Option<Vec<Option<usize>>> {
    let left = n1 + n2;
    let right = n2 + n1;
    let edge = |l: usize, r: usize| -> bool {
        match (l < n1, r < n2) {
            (true, true) => &costs.pair[l][r] <= t,
            (true, false) => r - n2 == l && &costs.diag1[l] <= t,
            (false, true) => l - n1 == r && &costs.diag2[r] <= t,
            (false, false) => true,
        }
    };
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    fn augment(
        l: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        right: usize,
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for r in 0..right {
            if seen[r] || !edge(l, r) {
                continue;
            }
            seen[r] = true;
            if match_right[r].is_none()
                || augment(match_right[r].unwrap(), edge, right, seen, match_right)
            {
                match_right[r] = Some(l);
                return true;
            }
        }
        false
    }
    for l in 0..left {
        let mut seen = vec![false; right];
        if !augment(l, &edge, right, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut match_left: Vec<Option<usize>> = vec![None; left];
    for (r, l) in match_right.iter().enumerate() {
        if let Some(l) = l {
            match_left[*l] = Some(r);
        }
    }
    Some(match_left)
}

/// Exact bottleneck distance with a witnessing matching. The optimum is one
/// of the finitely many leg distances; binary search over the sorted
/// candidates with a feasibility matching at each probe.
pub fn bottleneck_distance(d1: &Diagram, d2: &Diagram) -> Result<(ExtRat, Matching)> {
    require_bar_nonneg(d1, "first")?;
    require_bar_nonneg(d2, "second")?;
    let u1 = units(d1)?;
    let u2 = units(d2)?;
    let (n1, n2) = (u1.len(), u2.len());
    let costs = bottleneck_costs(d1, d2, &u1, &u2)?;
    let mut candidates: Vec<ExtRat> = vec![ExtRat::zero()];
    for row in &costs.pair {
        candidates.extend(row.iter().cloned());
    }
    candidates.extend(costs.diag1.iter().cloned());
    candidates.extend(costs.diag2.iter().cloned());
    candidates.sort();
    candidates.dedup();
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    while feasible(&costs, n1, n2, &candidates[hi]).is_none() {
        // Even the largest finite candidate can fail when one side has
        // unmatched infinite intervals; the distance is then infinite.
        if candidates[hi] == ExtRat::Infinity {
            unreachable!("every pairing is within infinite cost");
        }
        candidates.push(ExtRat::Infinity);
        hi = candidates.len() - 1;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&costs, n1, n2, &candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = candidates[lo].clone();
    let assignment = feasible(&costs, n1, n2, &t).expect("threshold verified feasible");
    let mut rows: Vec<(MatchTarget, MatchTarget, BigInt)> = Vec::new();
    let mut push = |l: MatchTarget, r: MatchTarget| {
        if let Some(row) = rows.iter_mut().find(|(a, b, _)| *a == l && *b == r) {
            row.2 += BigInt::one();
        } else {
            rows.push((l, r, BigInt::one()));
        }
    };
    for (l, r) in assignment.iter().enumerate() {
        let r = r.expect("perfect matching");
        match (l < n1, r < n2) {
            (true, true) => push(MatchTarget::Interval(u1[l]), MatchTarget::Interval(u2[r])),
            (true, false) => {
                let mid = interval_midpoint(d1, u1[l])?;
                push(MatchTarget::Interval(u1[l]), MatchTarget::Diagonal(mid));
            }
            (false, true) => {
                let mid = interval_midpoint(d2, u2[r])?;
                push(MatchTarget::Diagonal(mid), MatchTarget::Interval(u2[r]));
            }
            (false, false) => {}
        }
    }
    let m = validate_matching(d1, d2, rows)?;
    let cost = matching_cost(&m)?;
    debug_assert!(cost == t, "witness cost disagrees with the threshold");
    Ok((t, m))
}

/// Reference bottleneck by brute-force enumeration of unit assignments.
/// Exponential; intended for cross-checking small instances.
pub fn bottleneck_exhaustive(d1: &Diagram, d2: &Diagram) -> Result<ExtRat> {
    require_bar_nonneg(d1, "first")?;
    require_bar_nonneg(d2, "second")?;
    let u1 = units(d1)?;
    let u2 = units(d2)?;
    if u1.len() + u2.len() > 12 {
        return Err(Error::Validation("instance too large for the reference matcher".into()));
    }
    let costs = bottleneck_costs(d1, d2, &u1, &u2)?;
    fn go(
        i: usize,
        used: &mut [bool],
        costs: &BottleneckCosts,
        acc: &ExtRat,
        best: &mut ExtRat,
    ) {
        if acc >= best {
            return;
        }
        if i == costs.diag1.len() {
            // Remaining unmatched right units go to the diagonal.
            let mut total = acc.clone();
            for (j, u) in used.iter().enumerate() {
                if !u {
                    total = total.max(costs.diag2[j].clone());
                }
            }
            if total < *best {
                *best = total;
            }
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, used, costs, &acc.clone().max(costs.pair[i][j].clone()), best);
                used[j] = false;
            }
        }
        go(i + 1, used, costs, &acc.clone().max(costs.diag1[i].clone()), best);
    }
    let mut best = ExtRat::Infinity;
    let mut used = vec![false; u2.len()];
    go(0, &mut used, &costs, &ExtRat::zero(), &mut best);
    if best == ExtRat::Infinity {
        // All assignments involve an infinite leg; that is the true value.
        return Ok(ExtRat::Infinity);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Certificate text format: `cost <q|inf>`, then rows
// `<lo1> <hi1> <lo2> <hi2> <mult>` where either side may collapse to the
// single token `DIAG`, anchored at the midpoint of the opposite interval.
// ---------------------------------------------------------------------------

pub fn render_matching(m: &Matching) -> Result<String> {
    let cost = matching_cost(m)?;
    let mut out = String::new();
    let _ = writeln!(out, "cost {cost}");
    for (l, r, mult) in &m.rows {
        let left = match l {
            MatchTarget::Interval(k) => {
                let (a, b) = m.source.intervals().pair(*k);
                format!("{} {}", m.source.base().id(a), m.source.base().id(b))
            }
            MatchTarget::Diagonal(_) => "DIAG".to_string(),
        };
        let right = match r {
            MatchTarget::Interval(k) => {
                let (a, b) = m.target.intervals().pair(*k);
                format!("{} {}", m.target.base().id(a), m.target.base().id(b))
            }
            MatchTarget::Diagonal(_) => "DIAG".to_string(),
        };
        let _ = writeln!(out, "{left} {right} {mult}");
    }
    Ok(out)
}

/// Parse a certificate against its two diagrams. Returns the validated
/// matching and the stated cost, which the caller should compare with the
/// recomputed [`matching_cost`].
pub fn parse_matching(text: &str, d1: &Diagram, d2: &Diagram) -> Result<(ExtRat, Matching)> {
    let mut stated: Option<ExtRat> = None;
    let mut rows: Vec<(MatchTarget, MatchTarget, BigInt)> = Vec::new();
    for (lineno, rawline) in text.lines().enumerate() {
        let line = rawline.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "cost" {
            if toks.len() != 2 {
                return Err(Error::parse(lineno + 1, "expected `cost <value>`"));
            }
            stated = Some(
                toks[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad cost {:?}", toks[1])))?,
            );
            continue;
        }
        let interval_of = |d: &Diagram, lo: &str, hi: &str| -> Result<usize> {
            let a = d
                .base()
                .idx(lo)
                .map_err(|_| Error::parse(lineno + 1, format!("unknown element {lo:?}")))?;
            let b = d
                .base()
                .idx(hi)
                .map_err(|_| Error::parse(lineno + 1, format!("unknown element {hi:?}")))?;
            d.intervals()
                .find(a, b)
                .map_err(|_| Error::parse(lineno + 1, format!("[{lo},{hi}] is not an interval")))
        };
        let (left_raw, rest) = if toks[0] == "DIAG" {
            (None, &toks[1..])
        } else if toks.len() >= 2 {
            (Some((toks[0], toks[1])), &toks[2..])
        } else {
            return Err(Error::parse(lineno + 1, "truncated row"));
        };
        let (right_raw, rest) = if rest.first() == Some(&"DIAG") {
            (None, &rest[1..])
        } else if rest.len() >= 2 {
            (Some((rest[0], rest[1])), &rest[2..])
        } else {
            return Err(Error::parse(lineno + 1, "truncated row"));
        };
        if rest.len() != 1 {
            return Err(Error::parse(lineno + 1, "expected a single multiplicity"));
        }
        let mult: BigInt = rest[0]
            .parse()
            .map_err(|_| Error::parse(lineno + 1, format!("bad multiplicity {:?}", rest[0])))?;
        let row = match (left_raw, right_raw) {
            (Some((a, b)), Some((c, d))) => (
                MatchTarget::Interval(interval_of(d1, a, b)?),
                MatchTarget::Interval(interval_of(d2, c, d)?),
            ),
            (Some((a, b)), None) => {
                let k = interval_of(d1, a, b)?;
                (MatchTarget::Interval(k), MatchTarget::Diagonal(interval_midpoint(d1, k)?))
            }
            (None, Some((c, d))) => {
                let k = interval_of(d2, c, d)?;
                (MatchTarget::Diagonal(interval_midpoint(d2, k)?), MatchTarget::Interval(k))
            }
            (None, None) => {
                return Err(Error::parse(
                    lineno + 1,
                    "row with two DIAG sides has nothing to anchor it",
                ))
            }
        };
        rows.push((row.0, row.1, mult));
    }
    let stated = stated.ok_or_else(|| Error::parse(0, "missing `cost` line"))?;
    let m = validate_matching(d1, d2, rows)?;
    Ok((stated, m))
}
