//! Interleavings as spans over a finite middle poset, exact interpolation
//! through the critical parameters, induced morphisms between neighboring
//! slices, and the constructive stability pipeline that turns an interleaving
//! of cost epsilon into a matching certificate of cost at most epsilon.

use crate::diagram::{diagram_of, Diagram, Route};
use crate::error::{Error, Result};
use crate::galois::{right_adjoint_of, validate_galois, GaloisConnection};
use crate::linalg::Mat;
use crate::matching::{glue_matchings, matching_cost, validate_matching, MatchTarget, Matching};
use crate::mobius::IntFn;
use crate::pmod::{
    colimit_over, parse_module, pull_module, render_module, validate_module, validate_morphism,
    DownsetColimit, ModuleMorphism, PersistenceModule,
};
use crate::poset::{chain_poset, same_poset, Downset, PosetRef};
use crate::rat::{ExtRat, Rat};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

/// A span interleaving: a module over a middle poset with two insertion legs
/// onto modules over embedded chains, together with the two trajectory maps
/// (values of the legs' left adjoints) and the sup distance between them.
#[derive(Debug, Clone)]
pub struct Interleaving {
    middle: PersistenceModule,
    leg0: ModuleMorphism,
    leg1: ModuleMorphism,
    f0: Vec<ExtRat>,
    f1: Vec<ExtRat>,
    cost: ExtRat,
}

impl Interleaving {
    pub fn middle(&self) -> &PersistenceModule {
        &self.middle
    }

    pub fn leg0(&self) -> &ModuleMorphism {
        &self.leg0
    }

    pub fn leg1(&self) -> &ModuleMorphism {
        &self.leg1
    }

    pub fn f0(&self) -> &[ExtRat] {
        &self.f0
    }

    pub fn f1(&self) -> &[ExtRat] {
        &self.f1
    }

    pub fn cost(&self) -> &ExtRat {
        &self.cost
    }

    /// Trajectory of middle element `r` at parameter `t`.
    pub fn trajectory(&self, r: usize, t: &Rat) -> ExtRat {
        ExtRat::convex(&self.f0[r], &self.f1[r], t)
    }
}

fn modules_equal(a: &PersistenceModule, b: &PersistenceModule) -> bool {
    same_poset(a.base(), b.base())
        && a.field() == b.field()
        && a.dims() == b.dims()
        && a
            .base()
            .hasse_edges()
            .iter()
            .all(|&(x, y)| a.map(x, y) == b.map(x, y))
}

fn require_embedded_chain(p: &PosetRef, which: &str) -> Result<()> {
    if let Some((a, b)) = p.chain_witness() {
        return Err(Error::NotTotalOrder(p.id(a).to_string(), p.id(b).to_string()));
    }
    if !p.has_coords() || p.len() > 0 && p.coords(0).map(|c| c.len()) != Some(1) {
        return Err(Error::MissingCoords(format!(
            "{which} chain needs scalar coordinates"
        )));
    }
    Ok(())
}

fn leg_trajectory(leg: &ModuleMorphism) -> Vec<ExtRat> {
    let conn = leg.conn();
    let target = conn.target();
    (0..conn.source().len())
        .map(|r| target.coords(conn.f(r)).expect("checked")[0].clone())
        .collect()
}

/// Validate the span: both legs are morphisms out of the middle module onto
/// modules over embedded chains, and no two middle elements ride identical
/// trajectories.
pub fn validate_interleaving(
    middle: PersistenceModule,
    leg0: ModuleMorphism,
    leg1: ModuleMorphism,
) -> Result<Interleaving> {
    if middle.base().len() == 0 {
        return Err(Error::Validation("empty middle poset".into()));
    }
    for (leg, name) in [(&leg0, "first"), (&leg1, "second")] {
        if !modules_equal(leg.source(), &middle) {
            return Err(Error::BaseMismatch(format!(
                "{name} leg does not start at the middle module"
            )));
        }
        require_embedded_chain(leg.conn().target(), name)?;
    }
    let f0 = leg_trajectory(&leg0);
    let f1 = leg_trajectory(&leg1);
    let n = middle.base().len();
    for r in 0..n {
        for s in (r + 1)..n {
            if f0[r] == f0[s] && f1[r] == f1[s] {
                return Err(Error::DuplicateTrajectory(
                    middle.base().id(r).to_string(),
                    middle.base().id(s).to_string(),
                ));
            }
        }
    }
    let mut cost = ExtRat::zero();
    for r in 0..n {
        cost = cost.max(ExtRat::dist(&f0[r], &f1[r]));
    }
    Ok(Interleaving {
        middle,
        leg0,
        leg1,
        f0,
        f1,
        cost,
    })
}

/// The sup distance between the two trajectory maps. Trajectories that sit at
/// infinity together are at distance zero; a finite value against an infinite
/// one puts the cost at infinity.
pub fn interleaving_cost(i: &Interleaving) -> ExtRat {
    i.cost.clone()
}

fn identity_witnesses(m: &PersistenceModule, conn: &GaloisConnection) -> Vec<Mat> {
    (0..conn.target().len())
        .map(|q| Mat::identity(m.dim(conn.g(q)), m.field()))
        .collect()
}

/// The classical shift interleaving: the middle is the module itself, one leg
/// is the identity, the other shifts the chain by epsilon. Cost is exactly
/// epsilon on any module with a finite element.
pub fn build_from_shift(m: &PersistenceModule, eps: &Rat) -> Result<Interleaving> {
    if eps < &Rat::zero() {
        return Err(Error::Validation("negative shift".into()));
    }
    require_embedded_chain(m.base(), "base")?;
    let base = m.base().clone();
    let shifted_vals: Vec<ExtRat> = (0..base.len())
        .map(|i| match &base.coords(i).expect("checked")[0] {
            ExtRat::Finite(v) => ExtRat::Finite(v + eps),
            ExtRat::Infinity => ExtRat::Infinity,
        })
        .collect();
    let shifted = chain_poset(&shifted_vals)?;
    let maps: HashMap<(usize, usize), Mat> = base
        .hasse_edges()
        .iter()
        .map(|&(a, b)| ((a, b), m.map(a, b).clone()))
        .collect();
    let n = validate_module(&shifted, m.field(), m.dims().to_vec(), maps)?;
    let id_conn = GaloisConnection::identity(&base);
    let leg0 = validate_morphism(&id_conn, m, m, identity_witnesses(m, &id_conn))?;
    let ids: Vec<usize> = (0..base.len()).collect();
    let shift_conn = validate_galois(&base, &shifted, ids.clone(), ids)?;
    let leg1 = validate_morphism(&shift_conn, m, &n, identity_witnesses(m, &shift_conn))?;
    validate_interleaving(m.clone(), leg0, leg1)
}

/// Re-validate, optionally precomposing with an insertion that shrinks the
/// middle. The insertion must keep every point the legs' right adjoints use;
/// the endpoint modules are untouched and the cost can only drop.
pub fn restrict_to_finite(
    i: &Interleaving,
    ins: Option<&GaloisConnection>,
) -> Result<Interleaving> {
    let Some(ins) = ins else {
        return validate_interleaving(i.middle.clone(), i.leg0.clone(), i.leg1.clone());
    };
    if !same_poset(ins.source(), i.middle.base()) {
        return Err(Error::BaseMismatch(
            "restriction insertion does not start at the middle poset".into(),
        ));
    }
    if !ins.is_insertion() {
        return Err(Error::NotInsertion("middle restriction".into(), String::new()));
    }
    let s_poset = ins.target().clone();
    let image: Vec<usize> = (0..s_poset.len()).map(|s| ins.g(s)).collect();
    let restricted = pull_module(&i.middle, ins)?;
    let mut legs = Vec::new();
    for leg in [&i.leg0, &i.leg1] {
        let conn = leg.conn();
        let c_poset = conn.target().clone();
        for c in 0..c_poset.len() {
            if !image.contains(&conn.g(c)) {
                return Err(Error::Validation(format!(
                    "restriction drops the leg image at {:?}",
                    c_poset.id(c)
                )));
            }
        }
        let f_new: Vec<usize> = (0..s_poset.len()).map(|s| conn.f(ins.g(s))).collect();
        let g_new: Vec<usize> = (0..c_poset.len()).map(|c| ins.f(conn.g(c))).collect();
        let new_conn = validate_galois(&s_poset, &c_poset, f_new, g_new)?;
        let witnesses: Vec<Mat> = (0..c_poset.len()).map(|c| leg.witness(c).clone()).collect();
        legs.push(validate_morphism(&new_conn, &restricted, leg.target(), witnesses)?);
    }
    let leg1 = legs.pop().expect("two legs");
    let leg0 = legs.pop().expect("two legs");
    validate_interleaving(restricted, leg0, leg1)
}

/// All parameters in `[0, 1]` where two distinct trajectories cross, plus the
/// endpoints. Trajectories `(1-t) f0(r) + t f1(r)` are linear, so each
/// non-parallel pair contributes at most one exact rational root; parallel
/// pairs (including coincident ones) contribute none, and pairs involving an
/// infinity never cross in the interior.
pub fn critical_points(f0: &[ExtRat], f1: &[ExtRat]) -> Vec<Rat> {
    assert_eq!(f0.len(), f1.len(), "trajectory tables differ in length");
    let mut out = vec![Rat::zero(), Rat::one()];
    for r in 0..f0.len() {
        for s in (r + 1)..f0.len() {
            let (Some(a0), Some(a1), Some(b0), Some(b1)) = (
                f0[r].as_finite(),
                f0[s].as_finite(),
                f1[r].as_finite(),
                f1[s].as_finite(),
            ) else {
                continue;
            };
            let a = a0 - a1;
            let b = b0 - b1;
            if a == b {
                continue;
            }
            let t = &a / (&a - &b);
            if t > Rat::zero() && t < Rat::one() {
                out.push(t);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// One interpolation slice: the embedded chain of trajectory values at
/// parameter `t`, the assignment of middle elements onto it, and the module
/// of downset colimits with its induced maps.
#[derive(Debug, Clone)]
pub struct Slice {
    pub t: Rat,
    pub chain: PosetRef,
    /// Middle element -> chain element carrying its trajectory value.
    pub assign: Vec<usize>,
    pub module: PersistenceModule,
    downsets: Vec<Downset>,
    colims: Vec<DownsetColimit>,
}

impl Slice {
    /// Elements of the middle poset at or below chain element `x`.
    pub fn downset(&self, x: usize) -> &Downset {
        &self.downsets[x]
    }

    pub fn colimit(&self, x: usize) -> &DownsetColimit {
        &self.colims[x]
    }
}

/// The interpolation family of an interleaving: slices at every critical
/// parameter and at the midpoint of every critical gap.
#[derive(Debug, Clone)]
pub struct Interpolation {
    parent: Interleaving,
    criticals: Vec<Rat>,
    samples: Vec<Rat>,
    slices: BTreeMap<Rat, Slice>,
}

impl Interpolation {
    pub fn parent(&self) -> &Interleaving {
        &self.parent
    }

    pub fn criticals(&self) -> &[Rat] {
        &self.criticals
    }

    pub fn samples(&self) -> &[Rat] {
        &self.samples
    }

    pub fn slice(&self, t: &Rat) -> Option<&Slice> {
        self.slices.get(t)
    }
}

/// The induced map between colimits over nested downsets: the unique matrix
/// commuting with the component injections.
fn colimit_induced(field: crate::linalg::PrimeField, small: &DownsetColimit, big: &DownsetColimit) -> Mat {
    if small.dim == 0 {
        return Mat::zero(big.dim, 0, field);
    }
    let mut proj: Option<Mat> = None;
    let mut lifted: Option<Mat> = None;
    for &e in &small.elements {
        let p = small.map_from(e).clone();
        let u = big.map_from(e).clone();
        proj = Some(match proj {
            None => p,
            Some(acc) => acc.hstack(&p),
        });
        lifted = Some(match lifted {
            None => u,
            Some(acc) => acc.hstack(&u),
        });
    }
    let proj = proj.expect("downsets are nonempty");
    let lifted = lifted.expect("downsets are nonempty");
    let xt = proj
        .transpose()
        .solve(&lifted.transpose())
        .expect("inclusions of downsets induce maps of colimits");
    xt.transpose()
}

fn build_slice(i: &Interleaving, t: &Rat) -> Result<Slice> {
    let r_poset = i.middle.base().clone();
    let n = r_poset.len();
    let values: Vec<ExtRat> = (0..n).map(|r| i.trajectory(r, t)).collect();
    let mut sorted = values.clone();
    sorted.sort();
    sorted.dedup();
    let chain = chain_poset(&sorted)?;
    let assign: Vec<usize> = values
        .iter()
        .map(|v| sorted.iter().position(|w| w == v).expect("own value"))
        .collect();
    let mut downsets = Vec::with_capacity(sorted.len());
    let mut colims = Vec::with_capacity(sorted.len());
    for v in &sorted {
        let members: Vec<usize> = (0..n).filter(|&r| &values[r] <= v).collect();
        let ds = Downset::new(r_poset.clone(), members)?;
        let colim = colimit_over(&i.middle, &ds)?;
        downsets.push(ds);
        colims.push(colim);
    }
    let dims: Vec<usize> = colims.iter().map(|c| c.dim).collect();
    let maps: HashMap<(usize, usize), Mat> = chain
        .hasse_edges()
        .iter()
        .map(|&(a, b)| ((a, b), colimit_induced(i.middle.field(), &colims[a], &colims[b])))
        .collect();
    let module = validate_module(&chain, i.middle.field(), dims, maps)?;
    Ok(Slice {
        t: t.clone(),
        chain,
        assign,
        module,
        downsets,
        colims,
    })
}

/// Build the whole interpolation family eagerly: one slice per critical
/// parameter and per gap midpoint.
pub fn interpolate(i: &Interleaving) -> Result<Interpolation> {
    if i.cost == ExtRat::Infinity {
        return Err(Error::InfiniteCost(
            "interleaving cost is infinite; trajectories mix finite and infinite values".into(),
        ));
    }
    let criticals = critical_points(&i.f0, &i.f1);
    let two = Rat::from_integer(2.into());
    let samples: Vec<Rat> = criticals
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / &two)
        .collect();
    let mut slices = BTreeMap::new();
    for t in criticals.iter().chain(samples.iter()) {
        slices.insert(t.clone(), build_slice(i, t)?);
    }
    Ok(Interpolation {
        parent: i.clone(),
        criticals,
        samples,
        slices,
    })
}

/// The morphism from the slice at a sample `t` to the slice at `c`: the
/// trajectory of each chain point is followed from `t` to `c`. Requires `t`
/// non-critical (each chain point then comes from a unique middle element)
/// and no critical parameter strictly between the two.
pub fn induced_morphism(interp: &Interpolation, t: &Rat, c: &Rat) -> Result<ModuleMorphism> {
    if interp.criticals.contains(t) {
        return Err(Error::NotUnique(format!(
            "parameter {t} is critical; trajectory points collide there"
        )));
    }
    let (lo, hi) = if t <= c { (t, c) } else { (c, t) };
    if let Some(x) = interp.criticals.iter().find(|x| *x > lo && *x < hi) {
        return Err(Error::CriticalBetween(t.to_string(), c.to_string(), x.to_string()));
    }
    let st = interp
        .slice(t)
        .ok_or_else(|| Error::Validation(format!("no slice at parameter {t}")))?;
    let sc = interp
        .slice(c)
        .ok_or_else(|| Error::Validation(format!("no slice at parameter {c}")))?;
    let n_chain = st.chain.len();
    let mut owner: Vec<usize> = vec![usize::MAX; n_chain];
    for (r, &x) in st.assign.iter().enumerate() {
        if owner[x] != usize::MAX {
            return Err(Error::NotUnique(format!(
                "parameter {t} identifies two trajectory points"
            )));
        }
        owner[x] = r;
    }
    let alpha: Vec<usize> = owner.iter().map(|&r| sc.assign[r]).collect();
    let conn = right_adjoint_of(&st.chain, &sc.chain, alpha)?;
    for y in 0..sc.chain.len() {
        if st.downsets[conn.g(y)].elements() != sc.downsets[y].elements() {
            return Err(Error::Validation(format!(
                "slice downsets at {t} and {c} disagree under the adjoint",
            )));
        }
    }
    let witnesses: Vec<Mat> = (0..sc.chain.len())
        .map(|y| Mat::identity(sc.module.dim(y), sc.module.field()))
        .collect();
    validate_morphism(&conn, &st.module, &sc.module, witnesses)
}

/// One step of the stability pipeline.
#[derive(Debug, Clone)]
pub struct StabilityStep {
    pub from: Rat,
    pub to: Rat,
    pub cost: ExtRat,
}

/// The certificate produced by [`stability_matching`]: per-step costs and the
/// glued matching between the diagrams at parameters 0 and 1.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub epsilon: ExtRat,
    pub steps: Vec<StabilityStep>,
    pub matching: Matching,
    pub cost: ExtRat,
}

fn push_target(
    dgm: &Diagram,
    slice: &Slice,
    alpha: &[usize],
    a: usize,
    b: usize,
) -> Result<MatchTarget> {
    let (fa, fb) = (alpha[a], alpha[b]);
    if fa == fb {
        let v = slice.chain.coords(fa).expect("chains carry coordinates")[0].clone();
        return Ok(MatchTarget::Diagonal(v));
    }
    Ok(MatchTarget::Interval(dgm.intervals().find(fa, fb)?))
}

/// Walk the critical chain 0 = c_0 < ... < c_k = 1. For each gap, the sample
/// diagram maps onto both neighboring critical diagrams along the induced
/// morphisms; interval images make matching rows and collapsed images land on
/// the diagonal at their trajectory value. Gluing the per-step matchings
/// yields a certificate between the endpoint diagrams of cost at most the
/// interleaving cost.
pub fn stability_matching(i: &Interleaving) -> Result<StabilityReport> {
    let interp = interpolate(i)?;
    let eps = i.cost.clone();
    let criticals = interp.criticals().to_vec();
    let crit_dgms: Vec<Diagram> = criticals
        .iter()
        .map(|c| {
            let slice = interp.slice(c).expect("critical slices exist");
            diagram_of(&slice.module, Route::Presentation)
        })
        .collect();
    let mut steps = Vec::new();
    let mut acc: Option<Matching> = None;
    for w in 0..criticals.len() - 1 {
        let t = &interp.samples()[w];
        let slice_t = interp.slice(t).expect("sample slices exist");
        let d_mid = diagram_of(&slice_t.module, Route::Presentation);
        let mor_lo = induced_morphism(&interp, t, &criticals[w])?;
        let mor_hi = induced_morphism(&interp, t, &criticals[w + 1])?;
        let slice_lo = interp.slice(&criticals[w]).expect("critical slices exist");
        let slice_hi = interp.slice(&criticals[w + 1]).expect("critical slices exist");
        let mut rows = Vec::new();
        for k in d_mid.support() {
            let (a, b) = d_mid.intervals().pair(k);
            let left = push_target(&crit_dgms[w], slice_lo, mor_lo.conn().f_map(), a, b)?;
            let right = push_target(&crit_dgms[w + 1], slice_hi, mor_hi.conn().f_map(), a, b)?;
            if matches!(
                (&left, &right),
                (MatchTarget::Diagonal(_), MatchTarget::Diagonal(_))
            ) {
                continue;
            }
            rows.push((left, right, d_mid.mult(k).clone()));
        }
        let step = validate_matching(&crit_dgms[w], &crit_dgms[w + 1], rows)?;
        let step_cost = matching_cost(&step)?;
        let gap = &criticals[w + 1] - &criticals[w];
        let bound = match &eps {
            ExtRat::Finite(e) => ExtRat::Finite(&gap * e),
            ExtRat::Infinity => ExtRat::Infinity,
        };
        if step_cost > bound {
            return Err(Error::Validation(format!(
                "step [{}, {}] costs {step_cost}, above its share {bound}",
                criticals[w],
                criticals[w + 1]
            )));
        }
        steps.push(StabilityStep {
            from: criticals[w].clone(),
            to: criticals[w + 1].clone(),
            cost: step_cost,
        });
        acc = Some(match acc {
            None => step,
            Some(prev) => glue_matchings(&prev, &step)?,
        });
    }
    let matching = acc.expect("at least one critical gap");
    let cost = matching_cost(&matching)?;
    if cost > eps {
        return Err(Error::Validation(format!(
            "certificate cost {cost} exceeds the interleaving cost {eps}"
        )));
    }
    Ok(StabilityReport {
        epsilon: eps,
        steps,
        matching,
        cost,
    })
}

// ---------------------------------------------------------------------------
// Text format: `poset <path>` and `module <path>` for the middle, then one
// `f0 <element> <value>` and one `f1 <element> <value>` line per element.
// The legs are reconstructed: each table must be a left adjoint onto the
// chain of its distinct values, and the endpoint modules are the pullbacks of
// the middle module along the synthesized insertions.
// ---------------------------------------------------------------------------

pub fn render_interleaving(i: &Interleaving, poset_ref: &str, module_ref: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "poset {poset_ref}");
    let _ = writeln!(out, "module {module_ref}");
    let base = i.middle.base();
    for r in 0..base.len() {
        let _ = writeln!(out, "f0 {} {}", base.id(r), i.f0[r]);
    }
    for r in 0..base.len() {
        let _ = writeln!(out, "f1 {} {}", base.id(r), i.f1[r]);
    }
    out
}

/// Build an interleaving leg from a value table: the table entries become a
/// chain, the middle maps onto it by position, and the leg's target module is
/// the restriction of `gamma` along the right adjoint, with identity
/// witnesses.
pub fn leg_from_table(gamma: &PersistenceModule, table: &[ExtRat]) -> Result<ModuleMorphism> {
    let base = gamma.base().clone();
    let mut sorted = table.to_vec();
    sorted.sort();
    sorted.dedup();
    let chain = chain_poset(&sorted)?;
    let f_map: Vec<usize> = table
        .iter()
        .map(|v| sorted.iter().position(|w| w == v).expect("own value"))
        .collect();
    let conn = right_adjoint_of(&base, &chain, f_map)?;
    let pulled = pull_module(gamma, &conn)?;
    validate_morphism(&conn, gamma, &pulled, identity_witnesses(gamma, &conn))
}

pub fn parse_interleaving(
    text: &str,
    dir: &std::path::Path,
    field: crate::linalg::PrimeField,
) -> Result<Interleaving> {
    let mut base: Option<PosetRef> = None;
    let mut module_path: Option<std::path::PathBuf> = None;
    let mut t0: Vec<(usize, String, ExtRat)> = Vec::new();
    let mut t1: Vec<(usize, String, ExtRat)> = Vec::new();
    for (lineno, rawline) in text.lines().enumerate() {
        let line = rawline.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "poset" if toks.len() == 2 => {
                base = Some(crate::poset::load_poset(&dir.join(toks[1]))?);
            }
            "module" if toks.len() == 2 => {
                module_path = Some(dir.join(toks[1]));
            }
            "f0" | "f1" if toks.len() == 3 => {
                let v: ExtRat = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad value {:?}", toks[2])))?;
                let entry = (lineno + 1, toks[1].to_string(), v);
                if toks[0] == "f0" {
                    t0.push(entry);
                } else {
                    t1.push(entry);
                }
            }
            _ => return Err(Error::parse(lineno + 1, format!("unrecognized line {line:?}"))),
        }
    }
    let base = base.ok_or_else(|| Error::parse(0, "missing `poset` line"))?;
    let module_path = module_path.ok_or_else(|| Error::parse(0, "missing `module` line"))?;
    let module_text = std::fs::read_to_string(&module_path).map_err(Error::from)?;
    let gamma = parse_module(&module_text, &base, field)?;
    let fill = |entries: &[(usize, String, ExtRat)], name: &str| -> Result<Vec<ExtRat>> {
        let mut out: Vec<Option<ExtRat>> = vec![None; base.len()];
        for (lineno, id, v) in entries {
            let r = base
                .idx(id)
                .map_err(|_| Error::parse(*lineno, format!("unknown element {id:?}")))?;
            if out[r].is_some() {
                return Err(Error::parse(*lineno, format!("duplicate {name} value for {id:?}")));
            }
            out[r] = Some(v.clone());
        }
        out.into_iter()
            .enumerate()
            .map(|(r, v)| {
                v.ok_or_else(|| {
                    Error::Validation(format!("element {:?} lacks an {name} value", base.id(r)))
                })
            })
            .collect()
    };
    let f0 = fill(&t0, "f0")?;
    let f1 = fill(&t1, "f1")?;
    let leg0 = leg_from_table(&gamma, &f0)?;
    let leg1 = leg_from_table(&gamma, &f1)?;
    validate_interleaving(gamma, leg0, leg1)
}

/// Write the spec file with sibling `<stem>.poset` and `<stem>.module` files.
pub fn save_interleaving(i: &Interleaving, path: &std::path::Path) -> Result<()> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::Io(format!("bad interleaving path {path:?}")))?;
    let poset_name = format!("{stem}.poset");
    let module_name = format!("{stem}.module");
    crate::poset::save_poset(i.middle.base(), &path.with_file_name(&poset_name))?;
    std::fs::write(
        path.with_file_name(&module_name),
        render_module(&i.middle),
    )?;
    std::fs::write(path, render_interleaving(i, &poset_name, &module_name))?;
    Ok(())
}

pub fn load_interleaving(path: &std::path::Path, field: crate::linalg::PrimeField) -> Result<Interleaving> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    let dir = path.parent().unwrap_or_else(|| std::path::Path::new("."));
    parse_interleaving(&text, dir, field)
}

/// Check that an integer function records the kernel pattern of a slice
/// module; used by tests comparing interpolation endpoints.
pub fn slice_kernel_fn(slice: &Slice) -> IntFn {
    crate::pmod::kernel_fn(&slice.module).1
}
