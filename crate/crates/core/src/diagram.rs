//! Persistence diagrams: Mobius inversions of the scalar functions of a
//! module, taken modulo diagonal values in the bar case. Includes the
//! diagram-of-module routes, pushforward along element maps, the rank-diagram
//! formula, and fibered barcodes of grid modules.

use crate::error::{Error, Result};
use crate::galois::{left_adjoint_of, GaloisConnection};
use crate::mobius::{mobius_invert, zeta_data, IntFn};
use crate::pmod::{
    adjoin_zero_top, birthdeath_fn, build_free_presentation, kernel_fn, pull_module, rank_fn,
    FreePresentation, PersistenceModule,
};
use crate::poset::{
    chain_poset, interval_poset_bar, interval_poset_hat, same_poset, Flavor, IntervalPoset,
    PosetRef,
};
use crate::rat::{ExtRat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt::Write as _;

/// A diagram is an equivalence class of integer functions on an interval
/// poset. For bar flavor the class forgets diagonal values and `canon` is the
/// representative with zero diagonal; hat flavor is not quotiented and `canon`
/// equals `raw`.
#[derive(Debug, Clone)]
pub struct Diagram {
    intervals: IntervalPoset,
    raw: IntFn,
    canon: IntFn,
}

impl Diagram {
    pub fn new(intervals: IntervalPoset, raw: IntFn) -> Diagram {
        assert!(
            same_poset(raw.domain(), &intervals.poset),
            "function does not live on the interval poset"
        );
        let canon = match intervals.flavor {
            Flavor::Bar => {
                let mut c = raw.clone();
                for k in 0..intervals.len() {
                    if intervals.is_diagonal(k) {
                        c.set(k, BigInt::zero());
                    }
                }
                c
            }
            Flavor::Hat => raw.clone(),
        };
        Diagram {
            intervals,
            raw,
            canon,
        }
    }

    pub fn empty(intervals: IntervalPoset) -> Diagram {
        let raw = IntFn::zero(intervals.poset.clone());
        Diagram::new(intervals, raw)
    }

    pub fn flavor(&self) -> Flavor {
        self.intervals.flavor
    }

    pub fn intervals(&self) -> &IntervalPoset {
        &self.intervals
    }

    pub fn base(&self) -> &PosetRef {
        &self.intervals.base
    }

    /// The representative produced by the route that built this diagram.
    pub fn raw(&self) -> &IntFn {
        &self.raw
    }

    /// The canonical representative of the class.
    pub fn canon(&self) -> &IntFn {
        &self.canon
    }

    pub fn mult(&self, k: usize) -> &BigInt {
        self.canon.get(k)
    }

    /// Support of the canonical representative.
    pub fn support(&self) -> Vec<usize> {
        self.canon.support()
    }

    pub fn is_empty(&self) -> bool {
        self.canon.is_zero()
    }

    /// Total mass of the canonical representative (off-diagonal for bar).
    pub fn total_mass(&self) -> BigInt {
        self.canon.total_mass()
    }
}

/// Which scalar function to invert when building a diagram from a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Kernel,
    Presentation,
}

/// The diagram of a module: Mobius inversion of its kernel function, or of
/// the birth-death function of its canonical presentation. The two routes
/// agree off the diagonal.
pub fn diagram_of(m: &PersistenceModule, route: Route) -> Diagram {
    match route {
        Route::Kernel => {
            let (ip, ker) = kernel_fn(m);
            let raw = mobius_invert(&ker);
            Diagram::new(ip, raw)
        }
        Route::Presentation => {
            let pres = build_free_presentation(m);
            diagram_of_presentation(m, &pres).expect("canonical presentation always matches")
        }
    }
}

/// The diagram through a specific presentation.
pub fn diagram_of_presentation(m: &PersistenceModule, pres: &FreePresentation) -> Result<Diagram> {
    let (ip, bd) = birthdeath_fn(m, pres)?;
    let raw = mobius_invert(&bd);
    Ok(Diagram::new(ip, raw))
}

/// Class equality: canonical representatives coincide.
pub fn equivalent(d1: &Diagram, d2: &Diagram) -> Result<bool> {
    if d1.flavor() != d2.flavor() {
        return Err(Error::BaseMismatch("diagram flavors differ".into()));
    }
    if !same_poset(d1.base(), d2.base()) {
        return Err(Error::BaseMismatch("diagrams live over different posets".into()));
    }
    Ok(d1.canon == d2.canon)
}

/// Nonnegativity of the full representative, meaningful for diagrams built by
/// the presentation route over a totally ordered base. Requesting it on a
/// non-chain base is an error since nothing guarantees the sign there.
pub fn positivity_check(d: &Diagram) -> Result<bool> {
    if let Some((a, b)) = d.base().chain_witness() {
        return Err(Error::NotTotalOrder(
            d.base().id(a).to_string(),
            d.base().id(b).to_string(),
        ));
    }
    Ok(d.raw.values().iter().all(|v| !v.is_negative()))
}

/// Push a diagram through a map of base elements. The interval extension
/// `[a, b] -> [f(a), f(b)]` must produce intervals on the canonical support;
/// mass landing on the diagonal vanishes in the bar quotient.
pub fn pushforward_diagram(f: &[usize], target_base: &PosetRef, d: &Diagram) -> Result<Diagram> {
    if f.len() != d.base().len() {
        return Err(Error::DomainMismatch(format!(
            "map defined on {} of {} elements",
            f.len(),
            d.base().len()
        )));
    }
    let target_ip = match d.flavor() {
        Flavor::Bar => interval_poset_bar(target_base),
        Flavor::Hat => interval_poset_hat(target_base),
    };
    let mut out = IntFn::zero(target_ip.poset.clone());
    for k in d.support() {
        let (a, b) = d.intervals.pair(k);
        let (fa, fb) = (f[a], f[b]);
        let Ok(tk) = target_ip.find(fa, fb) else {
            return Err(Error::IntervalViolation(
                format!("[{},{}]", d.base().id(a), d.base().id(b)),
                format!("({},{})", target_base.id(fa), target_base.id(fb)),
            ));
        };
        let v = out.get(tk) + d.canon.get(k);
        out.set(tk, v);
    }
    Ok(Diagram::new(target_ip, out))
}

/// A diagram morphism: an element map whose interval extension carries the
/// source class to the target class.
#[derive(Debug, Clone)]
pub struct DgmMorphism {
    pub f: Vec<usize>,
    pub source: Diagram,
    pub target: Diagram,
}

pub fn validate_dgm_morphism(f: Vec<usize>, source: &Diagram, target: &Diagram) -> Result<DgmMorphism> {
    let pushed = pushforward_diagram(&f, target.base(), source)?;
    if !equivalent(&pushed, target)? {
        return Err(Error::Validation(
            "pushforward of the source class is not the target class".into(),
        ));
    }
    Ok(DgmMorphism {
        f,
        source: source.clone(),
        target: target.clone(),
    })
}

/// The rank diagram by direct Mobius inversion over the hat order.
pub fn rank_diagram_direct(m: &PersistenceModule) -> Diagram {
    let (ip, rank) = rank_fn(m);
    let raw = mobius_invert(&rank);
    Diagram::new(ip, raw)
}

/// The rank diagram evaluated through the kernel function:
///
/// ```text
/// del_hat rank = (f_# del_bar ker) zeta_bar mu_hat - (del_bar ker) zeta_bar mu_hat
/// ```
///
/// with `f : [a,b] -> [a,a]` on intervals. The identity with the direct
/// inversion holds when the base has a maximum element carrying the zero
/// space (then `ker(a, top) = dim M(a)` counts every class as dying); use
/// [`rank_diagram_formula_zero_top`] to arrange that for any module.
pub fn rank_diagram_via_formula(m: &PersistenceModule) -> Result<Diagram> {
    let base = m.base();
    if base.maximum().is_none() {
        return Err(Error::NoTopElement);
    }
    let (bar, ker) = kernel_fn(m);
    let hat = interval_poset_hat(base);
    let dker = mobius_invert(&ker);
    let to_diag: Vec<usize> = (0..bar.len())
        .map(|k| {
            let (a, _) = bar.pair(k);
            bar.find(a, a).expect("diagonal intervals always exist")
        })
        .collect();
    let pushed = crate::mobius::pushforward(&dker, &to_diag, &bar.poset)?;
    let transform = |v: &IntFn| -> IntFn {
        let after_zeta = zeta_data(&bar.poset).apply_zeta(v);
        // Transplant onto the hat poset: interval enumerations agree.
        let on_hat = IntFn::from_values(hat.poset.clone(), after_zeta.values().to_vec())
            .expect("interval sets coincide");
        zeta_data(&hat.poset).apply_mu(&on_hat)
    };
    let raw = transform(&pushed).sub(&transform(&dker))?;
    Ok(Diagram::new(hat, raw))
}

/// Adjoin a zero-space top, evaluate the formula there, and restrict the
/// result to the original intervals. Total on every module, and equal to
/// [`rank_diagram_direct`] of the original.
pub fn rank_diagram_formula_zero_top(m: &PersistenceModule) -> Diagram {
    let (ext, top) = adjoin_zero_top(m);
    let d = rank_diagram_via_formula(&ext).expect("extension has a maximum");
    let hat = interval_poset_hat(m.base());
    let mut raw = IntFn::zero(hat.poset.clone());
    for k in 0..hat.len() {
        let (a, b) = hat.pair(k);
        debug_assert!(a < top && b < top);
        let ek = d.intervals.find(a, b).expect("original intervals persist");
        raw.set(k, d.raw.get(ek).clone());
    }
    Diagram::new(hat, raw)
}

/// A fibered-barcode slice: the restriction scaffold for one line through a
/// grid, and the slice diagram obtained by pushing the module's diagram
/// through the rounding map.
#[derive(Debug, Clone)]
pub struct FiberedSlice {
    /// Chain of line parameters, one per distinct rounded grid point, with a
    /// top parameter mapping to the grid maximum.
    pub slice: PosetRef,
    /// Insertion grid <-> slice: `f` rounds a grid point up to the first
    /// parameter whose floor dominates it, `g` embeds parameters as floors.
    pub insertion: GaloisConnection,
    /// The slice diagram `[pi_# (del m)]`.
    pub diagram: Diagram,
}

/// Restrict a grid module to a nonnegatively sloped line. The line is
/// `offset + s * direction`; its floor under the grid changes at finitely
/// many parameters, which become a chain. The slice diagram is the
/// pushforward of the module's diagram along the left adjoint of the floor
/// embedding; `pull_module` along the same insertion is the direct
/// restriction, and the two routes agree by functoriality.
pub fn fibered_barcode(
    m: &PersistenceModule,
    offset: &[Rat],
    direction: &[Rat],
) -> Result<FiberedSlice> {
    let base = m.base();
    if !base.has_coords() {
        return Err(Error::MissingCoords("grid poset without coordinates".into()));
    }
    let dims = base.coords(0).map(|c| c.len()).unwrap_or(0);
    if offset.len() != dims || direction.len() != dims {
        return Err(Error::BadDirection(format!(
            "line in {} coordinates over a {}-axis grid",
            direction.len(),
            dims
        )));
    }
    if direction.iter().any(|d| d < &Rat::zero()) {
        return Err(Error::BadDirection("negative direction component".into()));
    }
    if direction.iter().all(|d| d.is_zero()) {
        return Err(Error::BadDirection("zero direction".into()));
    }
    // Per-axis sorted finite values.
    let mut axis_vals: Vec<Vec<Rat>> = vec![Vec::new(); dims];
    for i in 0..base.len() {
        let c = base.coords(i).expect("grid elements carry coordinates");
        for (ax, v) in c.iter().enumerate() {
            if let Some(f) = v.as_finite() {
                if !axis_vals[ax].contains(f) {
                    axis_vals[ax].push(f.clone());
                }
            }
        }
    }
    for vals in axis_vals.iter_mut() {
        vals.sort();
    }
    // Entry parameter: where the line first clears every axis minimum.
    let mut s_enter: Option<Rat> = None;
    for ax in 0..dims {
        let Some(min_v) = axis_vals[ax].first() else {
            return Err(Error::EmptyIntersection(format!("axis {ax} has no finite grid values")));
        };
        if direction[ax].is_zero() {
            if &offset[ax] < min_v {
                return Err(Error::EmptyIntersection(format!(
                    "axis {ax} is pinned at {} below the grid minimum {}",
                    offset[ax], min_v
                )));
            }
        } else {
            let s = (min_v - &offset[ax]) / &direction[ax];
            s_enter = Some(match s_enter {
                None => s,
                Some(prev) => prev.max(s),
            });
        }
    }
    let s_enter = s_enter.expect("some direction component is positive");
    // Breakpoints: parameters where the line crosses a grid value.
    let mut params: Vec<Rat> = vec![s_enter.clone()];
    for ax in 0..dims {
        if direction[ax].is_zero() {
            continue;
        }
        for v in &axis_vals[ax] {
            let s = (v - &offset[ax]) / &direction[ax];
            if s >= s_enter && !params.contains(&s) {
                params.push(s);
            }
        }
    }
    params.sort();
    // Floor of the line at each parameter; keep the first parameter per
    // distinct floor.
    let floor_at = |s: &Rat| -> Option<usize> {
        let mut coords = Vec::with_capacity(dims);
        for ax in 0..dims {
            let pos = &offset[ax] + &(s * &direction[ax]);
            let v = axis_vals[ax].iter().rev().find(|&v| v <= &pos)?;
            coords.push(ExtRat::Finite(v.clone()));
        }
        let id = crate::poset::grid_id(&coords);
        base.idx(&id).ok()
    };
    let mut chain_params: Vec<ExtRat> = Vec::new();
    let mut g_map: Vec<usize> = Vec::new();
    for s in &params {
        let Some(e) = floor_at(s) else { continue };
        if g_map.last() != Some(&e) {
            chain_params.push(ExtRat::Finite(s.clone()));
            g_map.push(e);
        }
    }
    if g_map.is_empty() {
        return Err(Error::EmptyIntersection("line misses the grid entirely".into()));
    }
    // Top parameter onto the grid maximum so the left adjoint is total.
    let grid_max = base.maximum().ok_or(Error::NoTopElement)?;
    if *g_map.last().unwrap() != grid_max {
        chain_params.push(ExtRat::Infinity);
        g_map.push(grid_max);
    }
    let slice = chain_poset(&chain_params)?;
    let insertion = left_adjoint_of(base, &slice, g_map)?;
    let d = diagram_of(m, Route::Kernel);
    let diagram = pushforward_diagram(insertion.f_map(), &slice, &d)?;
    Ok(FiberedSlice {
        slice,
        insertion,
        diagram,
    })
}

/// The direct-restriction oracle for a slice: the diagram of the pulled
/// module.
pub fn slice_restriction_diagram(m: &PersistenceModule, fs: &FiberedSlice) -> Result<Diagram> {
    let pulled = pull_module(m, &fs.insertion)?;
    Ok(diagram_of(&pulled, Route::Kernel))
}

// ---------------------------------------------------------------------------
// Text format: `flavor bar|hat`, `poset <relative-path>`, then one
// `<lo-id> <hi-id> <multiplicity>` line per nonzero canonical entry.
// ---------------------------------------------------------------------------

pub fn render_diagram(d: &Diagram, poset_ref: &str) -> String {
    let mut out = String::new();
    let flavor = match d.flavor() {
        Flavor::Bar => "bar",
        Flavor::Hat => "hat",
    };
    let _ = writeln!(out, "flavor {flavor}");
    let _ = writeln!(out, "poset {poset_ref}");
    for k in 0..d.intervals.len() {
        let v = d.canon.get(k);
        if v.is_zero() {
            continue;
        }
        let (a, b) = d.intervals.pair(k);
        let _ = writeln!(out, "{} {} {}", d.base().id(a), d.base().id(b), v);
    }
    out
}

pub fn parse_diagram(text: &str, dir: &std::path::Path) -> Result<Diagram> {
    let mut flavor: Option<Flavor> = None;
    let mut base: Option<PosetRef> = None;
    let mut entries: Vec<(usize, String, String, BigInt)> = Vec::new();
    for (lineno, rawline) in text.lines().enumerate() {
        let line = rawline.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "flavor" => {
                if toks.len() != 2 {
                    return Err(Error::parse(lineno + 1, "expected `flavor bar|hat`"));
                }
                flavor = Some(match toks[1] {
                    "bar" => Flavor::Bar,
                    "hat" => Flavor::Hat,
                    other => {
                        return Err(Error::parse(lineno + 1, format!("unknown flavor {other:?}")))
                    }
                });
            }
            "poset" => {
                if toks.len() != 2 {
                    return Err(Error::parse(lineno + 1, "expected `poset <path>`"));
                }
                base = Some(crate::poset::load_poset(&dir.join(toks[1]))?);
            }
            _ => {
                if toks.len() != 3 {
                    return Err(Error::parse(lineno + 1, "expected `<lo> <hi> <mult>`"));
                }
                let mult: BigInt = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad multiplicity {:?}", toks[2])))?;
                entries.push((lineno + 1, toks[0].to_string(), toks[1].to_string(), mult));
            }
        }
    }
    let flavor = flavor.ok_or_else(|| Error::parse(0, "missing `flavor` line"))?;
    let base = base.ok_or_else(|| Error::parse(0, "missing `poset` line"))?;
    let ip = match flavor {
        Flavor::Bar => interval_poset_bar(&base),
        Flavor::Hat => interval_poset_hat(&base),
    };
    let mut raw = IntFn::zero(ip.poset.clone());
    for (lineno, lo, hi, mult) in entries {
        let a = base
            .idx(&lo)
            .map_err(|_| Error::parse(lineno, format!("unknown element {lo:?}")))?;
        let b = base
            .idx(&hi)
            .map_err(|_| Error::parse(lineno, format!("unknown element {hi:?}")))?;
        let k = ip
            .find(a, b)
            .map_err(|_| Error::parse(lineno, format!("[{lo},{hi}] is not an interval")))?;
        if !raw.get(k).is_zero() {
            return Err(Error::parse(lineno, format!("duplicate entry for [{lo},{hi}]")));
        }
        raw.set(k, mult);
    }
    Ok(Diagram::new(ip, raw))
}

/// Write a diagram next to a sibling poset file (`<stem>.poset`) that the
/// diagram file references by name.
pub fn save_diagram(d: &Diagram, path: &std::path::Path) -> Result<()> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::Io(format!("bad diagram path {path:?}")))?;
    let poset_name = format!("{stem}.poset");
    let poset_path = path.with_file_name(&poset_name);
    crate::poset::save_poset(d.base(), &poset_path)?;
    std::fs::write(path, render_diagram(d, &poset_name))?;
    Ok(())
}

pub fn load_diagram(path: &std::path::Path) -> Result<Diagram> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    let dir = path.parent().unwrap_or_else(|| std::path::Path::new("."));
    parse_diagram(&text, dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::right_adjoint_of;
    use crate::linalg::{Mat, PrimeField};
    use crate::pmod::{free_to_module, validate_module, FreeModule};
    use crate::poset::grid_poset;
    use std::collections::HashMap;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn example_module() -> PersistenceModule {
        crate::pmod::tests::example_module()
    }

    fn val(d: &Diagram, a: &str, b: &str) -> i64 {
        let base = d.base();
        let k = d
            .intervals()
            .find(base.idx(a).unwrap(), base.idx(b).unwrap())
            .unwrap();
        i64::try_from(d.canon().get(k)).unwrap()
    }

    fn raw_val(d: &Diagram, a: &str, b: &str) -> i64 {
        let base = d.base();
        let k = d
            .intervals()
            .find(base.idx(a).unwrap(), base.idx(b).unwrap())
            .unwrap();
        i64::try_from(d.raw().get(k)).unwrap()
    }

    #[test]
    fn kernel_route_golden() {
        let m = example_module();
        let d = diagram_of(&m, Route::Kernel);
        for (a, b, v) in [
            ("a", "a", 0),
            ("a", "b", 1),
            ("a", "c", 2),
            ("a", "d", 3),
            ("b", "b", -1),
            ("c", "c", -2),
            ("d", "d", -3),
            ("b", "c", 0),
            ("b", "d", 0),
        ] {
            assert_eq!(raw_val(&d, a, b), v, "del ker [{a},{b}]");
        }
        // Canonical representative zeroes the diagonal.
        assert_eq!(val(&d, "b", "b"), 0);
        assert_eq!(val(&d, "a", "b"), 1);
    }

    #[test]
    fn presentation_route_golden() {
        // The five-generators-at-a presentation reproduces the published
        // inversion including its diagonal.
        let m = example_module();
        let base = m.base().clone();
        let a = base.idx("a").unwrap();
        let free = FreeModule::new(vec![a; 5]);
        let phi_a = Mat::from_fn(4, 5, m.field(), |i, j| u64::from(i == j));
        let phi: Vec<Mat> = (0..base.len()).map(|x| m.map(a, x).mul(&phi_a)).collect();
        let pres = crate::pmod::validate_presentation(&m, free, phi).unwrap();
        let d = diagram_of_presentation(&m, &pres).unwrap();
        for (x, y, v) in [
            ("a", "a", 1),
            ("a", "b", 1),
            ("a", "c", 2),
            ("a", "d", 3),
            ("b", "b", 0),
            ("c", "c", 0),
            ("d", "d", 0),
        ] {
            assert_eq!(raw_val(&d, x, y), v, "del m_phi [{x},{y}]");
        }
    }

    #[test]
    fn routes_agree_off_diagonal() {
        let m = example_module();
        let k = diagram_of(&m, Route::Kernel);
        let p = diagram_of(&m, Route::Presentation);
        assert!(equivalent(&k, &p).unwrap());
        // Tampering off-diagonal breaks equivalence; diagonal does not.
        let mut raw = p.raw().clone();
        let base = p.base();
        let idx = p
            .intervals()
            .find(base.idx("a").unwrap(), base.idx("b").unwrap())
            .unwrap();
        raw.set(idx, BigInt::from(99));
        let tampered = Diagram::new(p.intervals().clone(), raw);
        assert!(!equivalent(&k, &tampered).unwrap());
        let mut raw2 = k.raw().clone();
        let diag = k
            .intervals()
            .find(base.idx("b").unwrap(), base.idx("b").unwrap())
            .unwrap();
        raw2.set(diag, BigInt::from(42));
        let shifted = Diagram::new(k.intervals().clone(), raw2);
        assert!(equivalent(&k, &shifted).unwrap());
    }

    #[test]
    fn zero_module_zero_diagram() {
        let base = crate::poset::tests::example_poset();
        let z = PersistenceModule::zero(&base, f2());
        let d = diagram_of(&z, Route::Kernel);
        assert!(d.is_empty());
        let p = diagram_of(&z, Route::Presentation);
        assert!(p.is_empty());
    }

    #[test]
    fn positivity_on_chains_only() {
        let m = example_module();
        let d = diagram_of(&m, Route::Presentation);
        assert!(matches!(positivity_check(&d), Err(Error::NotTotalOrder(_, _))));
        // A chain module via the presentation route is nonnegative.
        let chain = chain_poset(&[ExtRat::from_int(0), ExtRat::from_int(1), ExtRat::from_int(2)]).unwrap();
        let field = f2();
        let up = Mat::from_entries(2, 1, field, &[1, 0]).unwrap();
        let down = Mat::from_entries(1, 2, field, &[0, 1]).unwrap();
        let mut maps = HashMap::new();
        maps.insert((0, 1), up);
        maps.insert((1, 2), down);
        let cm = validate_module(&chain, field, vec![1, 2, 1], maps).unwrap();
        let cd = diagram_of(&cm, Route::Presentation);
        assert!(positivity_check(&cd).unwrap());
    }

    #[test]
    fn functoriality_square() {
        let p = chain_poset(&[
            ExtRat::from_int(0),
            ExtRat::from_int(1),
            ExtRat::from_int(2),
            ExtRat::from_int(3),
        ])
        .unwrap();
        let q = chain_poset(&[ExtRat::from_int(1), ExtRat::from_int(3)]).unwrap();
        let ins = right_adjoint_of(&p, &q, vec![0, 0, 1, 1]).unwrap();
        let free = FreeModule::new(vec![0, 1, 2]);
        let m = free_to_module(&free, &p, f2()).unwrap();
        let lhs = diagram_of(&pull_module(&m, &ins).unwrap(), Route::Kernel);
        let rhs = pushforward_diagram(ins.f_map(), &q, &diagram_of(&m, Route::Kernel)).unwrap();
        assert!(equivalent(&lhs, &rhs).unwrap());
        validate_dgm_morphism(ins.f_map().to_vec(), &diagram_of(&m, Route::Kernel), &lhs).unwrap();
    }

    #[test]
    fn pushforward_identity_and_collapse() {
        let m = example_module();
        let d = diagram_of(&m, Route::Kernel);
        let idmap: Vec<usize> = (0..m.base().len()).collect();
        let same = pushforward_diagram(&idmap, m.base(), &d).unwrap();
        assert!(equivalent(&d, &same).unwrap());
        // Collapse everything to one point: all mass lands on the diagonal
        // and vanishes.
        let point = chain_poset(&[ExtRat::from_int(0)]).unwrap();
        let collapse = vec![0; m.base().len()];
        let c = pushforward_diagram(&collapse, &point, &d).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn rank_direct_golden() {
        let m = example_module();
        let d = rank_diagram_direct(&m);
        for (a, b, v) in [
            ("a", "a", 1),
            ("a", "b", 2),
            ("a", "c", 1),
            ("a", "d", 0),
            ("b", "b", 0),
            ("b", "c", 0),
            ("b", "d", 0),
            ("c", "c", 0),
            ("d", "d", 0),
        ] {
            assert_eq!(val(&d, a, b), v, "del rank [{a},{b}]");
        }
    }

    #[test]
    fn rank_formula_matches_direct() {
        let m = example_module();
        assert!(matches!(rank_diagram_via_formula(&m), Err(Error::NoTopElement)));
        let (ext, _) = adjoin_zero_top(&m);
        let via = rank_diagram_via_formula(&ext).unwrap();
        let direct = rank_diagram_direct(&ext);
        assert!(equivalent(&via, &direct).unwrap());
        // Restriction to the original intervals equals the original direct
        // inversion.
        let restricted = rank_diagram_formula_zero_top(&m);
        let plain = rank_diagram_direct(&m);
        assert!(equivalent(&restricted, &plain).unwrap());
    }

    #[test]
    fn rank_formula_identity_module_on_chain() {
        let chain = chain_poset(&[ExtRat::from_int(0), ExtRat::from_int(1)]).unwrap();
        let m = free_to_module(&FreeModule::new(vec![0]), &chain, f2()).unwrap();
        let d = rank_diagram_direct(&m);
        assert_eq!(val(&d, "0", "1"), 1);
        assert_eq!(val(&d, "0", "0"), 0);
        assert_eq!(val(&d, "1", "1"), 0);
        let r = rank_diagram_formula_zero_top(&m);
        assert!(equivalent(&r, &d).unwrap());
        let z = PersistenceModule::zero(&chain, f2());
        assert!(rank_diagram_formula_zero_top(&z).is_empty());
    }

    fn grid_2x2_with_inf() -> PosetRef {
        let axis = vec![ExtRat::from_int(0), ExtRat::from_int(1), ExtRat::Infinity];
        grid_poset(&[axis.clone(), axis]).unwrap()
    }

    fn segment_module(base: &PosetRef, lo: &str, hi: &str) -> PersistenceModule {
        // k on the order interval [lo, hi], identity maps inside.
        let field = f2();
        let l = base.idx(lo).unwrap();
        let h = base.idx(hi).unwrap();
        let dims: Vec<usize> = (0..base.len())
            .map(|x| usize::from(base.leq(l, x) && base.leq(x, h)))
            .collect();
        let maps: HashMap<(usize, usize), Mat> = base
            .hasse_edges()
            .iter()
            .map(|&(a, b)| {
                let m = if dims[a] == 1 && dims[b] == 1 {
                    Mat::identity(1, field)
                } else {
                    Mat::zero(dims[b], dims[a], field)
                };
                ((a, b), m)
            })
            .collect();
        validate_module(base, field, dims, maps).unwrap()
    }

    #[test]
    fn fibered_barcode_routes_agree() {
        let base = grid_2x2_with_inf();
        let m = segment_module(&base, "0,0", "1,1");
        let zero = Rat::zero();
        let one = Rat::from_integer(1.into());
        // Diagonal line through the grid.
        let fs = fibered_barcode(&m, &[zero.clone(), zero.clone()], &[one.clone(), one.clone()]).unwrap();
        let direct = slice_restriction_diagram(&m, &fs).unwrap();
        assert!(equivalent(&fs.diagram, &direct).unwrap());
        // The segment dies entering the infinite corner: born at the entry
        // parameter 0, dead at the top parameter.
        assert_eq!(fs.diagram.total_mass(), BigInt::from(1));
        // Bottom-row line.
        let fs2 = fibered_barcode(&m, &[zero.clone(), zero.clone()], &[one.clone(), zero.clone()]).unwrap();
        let direct2 = slice_restriction_diagram(&m, &fs2).unwrap();
        assert!(equivalent(&fs2.diagram, &direct2).unwrap());
    }

    #[test]
    fn fibered_barcode_rejects_bad_lines() {
        let base = grid_2x2_with_inf();
        let m = segment_module(&base, "0,0", "1,1");
        let zero = Rat::zero();
        let one = Rat::from_integer(1.into());
        let neg = -one.clone();
        assert!(matches!(
            fibered_barcode(&m, &[zero.clone(), zero.clone()], &[one.clone(), neg]),
            Err(Error::BadDirection(_))
        ));
        assert!(matches!(
            fibered_barcode(&m, &[zero.clone(), zero.clone()], &[zero.clone(), zero.clone()]),
            Err(Error::BadDirection(_))
        ));
        // A horizontal line pinned below the grid never meets it.
        assert!(matches!(
            fibered_barcode(&m, &[zero.clone(), -one.clone()], &[one.clone(), zero.clone()]),
            Err(Error::EmptyIntersection(_))
        ));
    }

    #[test]
    fn diagram_text_roundtrip() {
        let m = example_module();
        let d = diagram_of(&m, Route::Kernel);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("example.dgm");
        save_diagram(&d, &path).unwrap();
        let back = load_diagram(&path).unwrap();
        assert!(equivalent(&d, &back).unwrap());
        // Hat diagrams carry negative and diagonal values faithfully.
        let r = rank_diagram_direct(&m);
        let rpath = dir.path().join("rank.dgm");
        save_diagram(&r, &rpath).unwrap();
        let rback = load_diagram(&rpath).unwrap();
        assert!(equivalent(&r, &rback).unwrap());
        assert_eq!(raw_val(&rback, "a", "a"), 1);
    }
}
