// Acceptance checks. Each test covers one numbered criterion, prints its own
// "criterion N: pass" / "criterion N: fail" line, and enforces the iteration
// counts and wall-clock budgets the criterion carries.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use galoisph::diagram::{
    diagram_of, diagram_of_presentation, equivalent, fibered_barcode, positivity_check,
    pushforward_diagram, rank_diagram_direct, rank_diagram_via_formula, slice_restriction_diagram,
    Diagram, Route,
};
use galoisph::gen::Gen;
use galoisph::homology::{parse_filtration, persistence_module, Filtration};
use galoisph::interleave::{interleaving_cost, stability_matching};
use galoisph::linalg::{Mat, PrimeField};
use galoisph::matching::{
    bottleneck_distance, bottleneck_exhaustive, glue_matchings, matching_cost, validate_matching,
    MatchTarget,
};
use galoisph::mobius::{classical_rota_check, mobius_invert, rgct_check, IntFn, zeta_transform};
use galoisph::pmod::{
    birthdeath_fn, build_free_presentation, kernel_fn, pad_presentation, pull_module, rank_fn,
    validate_module, validate_presentation, FreeModule, PersistenceModule,
};
use galoisph::poset::{build_poset, chain_poset, interval_poset_bar, IntervalPoset, PosetRef};
use galoisph::rat::{ExtRat, Rat};

fn criterion(n: u32, limit: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let timely = limit.map_or(true, |l| elapsed <= l);
    if outcome.is_ok() && timely {
        println!("criterion {n}: pass");
    } else {
        println!("criterion {n}: fail");
    }
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
    if let Some(l) = limit {
        assert!(elapsed <= l, "exceeded the {l:?} budget: took {elapsed:?}");
    }
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn named(ids: &[&str], relations: &[(&str, &str)]) -> PosetRef {
    let elements: Vec<(String, Option<Vec<ExtRat>>)> =
        ids.iter().map(|s| (s.to_string(), None)).collect();
    let rels: Vec<(String, String)> = relations
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    build_poset(&elements, &rels).unwrap()
}

/// The running four-element example: a below b, with c and d above b, carrying
/// spaces of dimensions 4, 3, 1, 0 and coordinate-projection maps.
fn example_module() -> PersistenceModule {
    let base = named(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("b", "d")]);
    let f = f2();
    let a = base.idx("a").unwrap();
    let b = base.idx("b").unwrap();
    let c = base.idx("c").unwrap();
    let d = base.idx("d").unwrap();
    let mut maps = HashMap::new();
    maps.insert(
        (a, b),
        Mat::from_entries(3, 4, f, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0]).unwrap(),
    );
    maps.insert((b, c), Mat::from_entries(1, 3, f, &[1, 0, 0]).unwrap());
    maps.insert((b, d), Mat::zero(0, 3, f));
    let mut dims = vec![0; 4];
    dims[a] = 4;
    dims[b] = 3;
    dims[c] = 1;
    dims[d] = 0;
    validate_module(&base, f, dims, maps).unwrap()
}

fn check_table(
    ip: &IntervalPoset,
    f: &IntFn,
    base: &PosetRef,
    label: &str,
    expected: &[(&str, &str, i64)],
) {
    let mut want: HashMap<usize, BigInt> = HashMap::new();
    for &(a, b, v) in expected {
        let k = ip
            .find(base.idx(a).unwrap(), base.idx(b).unwrap())
            .unwrap();
        want.insert(k, BigInt::from(v));
    }
    for k in 0..ip.len() {
        let (a, b) = ip.pair(k);
        let expect = want.get(&k).cloned().unwrap_or_default();
        assert_eq!(
            f.get(k),
            &expect,
            "{label} at [{}, {}]",
            base.id(a),
            base.id(b)
        );
    }
}

#[test]
fn criterion_01_golden_example() {
    criterion(1, Some(Duration::from_secs(1)), || {
        let m = example_module();
        let base = m.base().clone();

        let (hat, rank) = rank_fn(&m);
        check_table(
            &hat,
            &rank,
            &base,
            "rank",
            &[
                ("a", "a", 4),
                ("a", "b", 3),
                ("a", "c", 1),
                ("b", "b", 3),
                ("b", "c", 1),
                ("c", "c", 1),
            ],
        );

        let (bar, ker) = kernel_fn(&m);
        let dker = mobius_invert(&ker);
        check_table(
            &bar,
            &dker,
            &base,
            "del ker",
            &[
                ("a", "b", 1),
                ("a", "c", 2),
                ("a", "d", 3),
                ("b", "b", -1),
                ("c", "c", -2),
                ("d", "d", -3),
            ],
        );

        // Five generators at the bottom element; the projection drops the
        // extra coordinate. The redundant generator is what puts mass on the
        // diagonal of the inverted birth-death function.
        let f = f2();
        let a = base.idx("a").unwrap();
        let mut phi = vec![Mat::zero(0, 0, f); 4];
        phi[a] = Mat::from_entries(
            4,
            5,
            f,
            &[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0],
        )
        .unwrap();
        phi[base.idx("b").unwrap()] =
            Mat::from_entries(3, 5, f, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0]).unwrap();
        phi[base.idx("c").unwrap()] = Mat::from_entries(1, 5, f, &[1, 0, 0, 0, 0]).unwrap();
        phi[base.idx("d").unwrap()] = Mat::zero(0, 5, f);
        let pres = validate_presentation(&m, FreeModule::new(vec![a; 5]), phi).unwrap();
        let (bar2, bd) = birthdeath_fn(&m, &pres).unwrap();
        let dbd = mobius_invert(&bd);
        check_table(
            &bar2,
            &dbd,
            &base,
            "del birth-death",
            &[("a", "a", 1), ("a", "b", 1), ("a", "c", 2), ("a", "d", 3)],
        );

        let drank = rank_diagram_direct(&m);
        check_table(
            drank.intervals(),
            drank.raw(),
            &base,
            "del rank",
            &[("a", "a", 1), ("a", "b", 2), ("a", "c", 1)],
        );
    });
}

#[test]
fn criterion_02_inversion_transport() {
    criterion(2, Some(Duration::from_secs(30)), || {
        let mut g = Gen::new(102);
        let mut conforming = 0usize;
        let mut draws = 0usize;
        while conforming < 500 {
            draws += 1;
            assert!(draws < 5000, "connection generator starved the count");
            let c = g.connection(7);
            let m = g.intfn(c.source(), -3, 3);
            rgct_check(&c, &m).unwrap();
            if c.source().len() <= 8 && c.target().len() <= 8 {
                conforming += 1;
            }
        }
        for _ in 0..50 {
            let c = g.connection(6);
            classical_rota_check(&c).unwrap();
        }
    });
}

#[test]
fn criterion_03_inversion_roundtrip() {
    criterion(3, None, || {
        let mut g = Gen::new(103);
        for _ in 0..500 {
            let p = g.poset(7);
            let m = g.intfn(&p, -5, 5);
            let dm = mobius_invert(&m);
            assert_eq!(zeta_transform(&dm).values(), m.values());
            let z = zeta_transform(&m);
            assert_eq!(mobius_invert(&z).values(), m.values());

            let n = g.intfn(&p, -5, 5);
            let alpha = BigInt::from(g.int(-4, 4));
            let beta = BigInt::from(g.int(-4, 4));
            let combined = m.scale(&alpha).add(&n.scale(&beta)).unwrap();
            let split = mobius_invert(&m)
                .scale(&alpha)
                .add(&mobius_invert(&n).scale(&beta))
                .unwrap();
            assert_eq!(mobius_invert(&combined).values(), split.values());
        }
    });
}

#[test]
fn criterion_04_route_equivalence() {
    criterion(4, None, || {
        let mut g = Gen::new(104);
        let f = f2();
        for _ in 0..100 {
            let p = g.poset(6);
            let m = g.module(&p, f, 4);
            let dk = diagram_of(&m, Route::Kernel);
            let dp = diagram_of(&m, Route::Presentation);
            assert!(equivalent(&dk, &dp).unwrap());

            let pres = build_free_presentation(&m);
            let extras: Vec<(usize, Vec<u64>)> = (0..=g.int(0, 1))
                .map(|_| {
                    let a = g.int(0, p.len() as i64 - 1) as usize;
                    let v: Vec<u64> = (0..m.dim(a)).map(|_| g.int(0, 1) as u64).collect();
                    (a, v)
                })
                .collect();
            let padded = pad_presentation(&m, &pres, &extras).unwrap();
            let dpad = diagram_of_presentation(&m, &padded).unwrap();
            assert!(equivalent(&dk, &dpad).unwrap());
        }
    });
}

#[test]
fn criterion_05_chain_positivity() {
    criterion(5, None, || {
        let mut g = Gen::new(105);
        let f = f2();
        for _ in 0..200 {
            let m = g.chain_module(8, f, 3);
            let d = diagram_of(&m, Route::Presentation);
            assert!(positivity_check(&d).unwrap());
        }
    });
}

#[test]
fn criterion_06_functoriality() {
    criterion(6, None, || {
        let mut g = Gen::new(106);
        let f = f2();
        for _ in 0..100 {
            let (m, ins) = loop {
                let p = g.poset(6);
                if let Some(ins) = g.insertion(&p) {
                    break (g.module(&p, f, 3), ins);
                }
            };
            let pulled = pull_module(&m, &ins).unwrap();
            let dm = diagram_of(&m, Route::Kernel);
            let dn = diagram_of(&pulled, Route::Kernel);
            let pushed = pushforward_diagram(ins.f_map(), ins.target(), &dm).unwrap();
            assert!(equivalent(&pushed, &dn).unwrap());
        }
    });
}

#[test]
fn criterion_07_stability_certificates() {
    criterion(7, Some(Duration::from_secs(120)), || {
        let mut g = Gen::new(107);
        let f = f2();
        let pool: [Rat; 4] = [
            Rat::zero(),
            Rat::new(BigInt::one(), BigInt::from(2)),
            Rat::one(),
            Rat::new(BigInt::from(3), BigInt::from(2)),
        ];
        for t in 0..50 {
            let eps = pool[t % 4].clone();
            let bound = ExtRat::Finite(eps.clone());
            let iv = g.interleaving(&eps, f, 6, 2);
            assert!(interleaving_cost(&iv) <= bound);

            let report = stability_matching(&iv).unwrap();
            assert_eq!(matching_cost(&report.matching).unwrap(), report.cost);
            assert!(report.cost <= report.epsilon, "certificate beats its interleaving");
            assert!(report.cost <= bound);

            let d0 = diagram_of(iv.leg0().target(), Route::Kernel);
            let d1 = diagram_of(iv.leg1().target(), Route::Kernel);
            let (dist, _) = bottleneck_distance(&d0, &d1).unwrap();
            assert!(dist <= bound);
        }
    });
}

#[test]
fn criterion_08_triangle_inequality() {
    criterion(8, None, || {
        let mut g = Gen::new(108);
        for _ in 0..200 {
            let (nu, eta) = g.matching_pair();
            let gamma = glue_matchings(&nu, &eta).unwrap();
            let lhs = matching_cost(&gamma).unwrap();
            let rhs = matching_cost(&nu).unwrap().add(&matching_cost(&eta).unwrap());
            assert!(lhs <= rhs);
        }

        // The composing fixture: one bar pushed right twice, one step each time.
        let chain = chain_poset(&[
            ExtRat::from_int(0),
            ExtRat::from_int(1),
            ExtRat::from_int(2),
            ExtRat::from_int(5),
        ])
        .unwrap();
        let five = chain.idx("5").unwrap();
        let dgm = |lo: &str| {
            let bar = interval_poset_bar(&chain);
            let k = bar.find(chain.idx(lo).unwrap(), five).unwrap();
            let mut raw = IntFn::zero(bar.poset.clone());
            raw.set(k, BigInt::one());
            Diagram::new(bar, raw)
        };
        let (d1, d2, d3) = (dgm("0"), dgm("1"), dgm("2"));
        let row = |d: &Diagram, lo: &str, e: &Diagram, lo2: &str| {
            let k1 = d
                .intervals()
                .find(chain.idx(lo).unwrap(), five)
                .unwrap();
            let k2 = e
                .intervals()
                .find(chain.idx(lo2).unwrap(), five)
                .unwrap();
            vec![(MatchTarget::Interval(k1), MatchTarget::Interval(k2), BigInt::one())]
        };
        let nu = validate_matching(&d1, &d2, row(&d1, "0", &d2, "1")).unwrap();
        let eta = validate_matching(&d2, &d3, row(&d2, "1", &d3, "2")).unwrap();
        let glued = glue_matchings(&nu, &eta).unwrap();
        assert!(matching_cost(&glued).unwrap() <= ExtRat::from_int(2));
    });
}

#[test]
fn criterion_09_bottleneck_oracle() {
    criterion(9, None, || {
        let mut g = Gen::new(109);
        for _ in 0..100 {
            let chain = g.chain(4);
            let d1 = g.diagram_on(&chain, 5);
            let d2 = g.diagram_on(&chain, 5);
            assert!(d1.total_mass() <= BigInt::from(5));
            assert!(d2.total_mass() <= BigInt::from(5));
            let (dist, witness) = bottleneck_distance(&d1, &d2).unwrap();
            assert_eq!(matching_cost(&witness).unwrap(), dist);
            assert_eq!(bottleneck_exhaustive(&d1, &d2).unwrap(), dist);
        }
    });
}

#[test]
fn criterion_10_rank_formula() {
    criterion(10, None, || {
        let mut g = Gen::new(110);
        let f = f2();
        for _ in 0..100 {
            let m = g.module_with_top(6, f, 3);
            let direct = rank_diagram_direct(&m);
            let formula = rank_diagram_via_formula(&m).unwrap();
            assert!(equivalent(&direct, &formula).unwrap());
        }
    });
}

#[test]
fn criterion_11_fibered_barcode() {
    criterion(11, None, || {
        let mut g = Gen::new(111);
        let f = f2();
        for _ in 0..50 {
            let m = g.grid_module(5, f, 2);
            for _ in 0..5 {
                let (offset, dir) = g.line_through(m.base());
                let fs = fibered_barcode(&m, &offset, &dir).unwrap();
                let direct = slice_restriction_diagram(&m, &fs).unwrap();
                assert!(equivalent(&fs.diagram, &direct).unwrap());
            }
        }
    });
}

const FILLED_SQUARE: &str = "params 1\n\
    grid 0 0 1 2 3 4 5\n\
    s 1 @ 0\n\
    s 2 @ 0\n\
    s 3 @ 1\n\
    s 4 @ 1\n\
    s 1 2 @ 2\n\
    s 2 3 @ 2\n\
    s 3 4 @ 2\n\
    s 1 4 @ 2\n\
    s 1 3 @ 5\n\
    s 1 2 3 @ 5\n\
    s 1 3 4 @ 5\n";

type Barcode = BTreeMap<(usize, ExtRat, ExtRat), BigInt>;

/// Classical single-parameter reduction: order simplices by grade, then
/// dimension, then declaration; clear each column against earlier columns
/// sharing its lowest row; read bars off the surviving pivots.
fn reduction_barcode(f: &Filtration, field: PrimeField) -> Barcode {
    let simplices = f.simplices();
    let mut order: Vec<usize> = (0..simplices.len()).collect();
    order.sort_by(|&i, &j| {
        let (si, sj) = (&simplices[i], &simplices[j]);
        si.grade()[0]
            .cmp(&sj.grade()[0])
            .then(si.dim().cmp(&sj.dim()))
            .then(i.cmp(&j))
    });
    let pos: HashMap<&[String], usize> = order
        .iter()
        .enumerate()
        .map(|(p, &i)| (simplices[i].vertices(), p))
        .collect();

    let n = order.len();
    let mut cols: Vec<BTreeMap<usize, u64>> = Vec::with_capacity(n);
    for &i in &order {
        let s = &simplices[i];
        let mut col = BTreeMap::new();
        if s.dim() > 0 {
            for drop in 0..s.vertices().len() {
                let mut face = s.vertices().to_vec();
                face.remove(drop);
                let sign = if drop % 2 == 0 { 1 } else { field.neg(1) };
                col.insert(pos[face.as_slice()], sign);
            }
        }
        cols.push(col);
    }

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        loop {
            let Some((&low, &lead)) = cols[j].iter().next_back() else {
                break;
            };
            match owner[low] {
                None => {
                    owner[low] = Some(j);
                    break;
                }
                Some(j2) => {
                    let lead2 = *cols[j2].iter().next_back().unwrap().1;
                    let scale = field.mul(lead, field.inv(lead2));
                    let other: Vec<(usize, u64)> =
                        cols[j2].iter().map(|(&r, &v)| (r, v)).collect();
                    for (r, v) in other {
                        let cur = cols[j].get(&r).copied().unwrap_or(0);
                        let next = field.sub(cur, field.mul(scale, v));
                        if next == 0 {
                            cols[j].remove(&r);
                        } else {
                            cols[j].insert(r, next);
                        }
                    }
                }
            }
        }
    }

    let grade_at = |p: usize| simplices[order[p]].grade()[0].clone();
    let dim_at = |p: usize| simplices[order[p]].dim();
    let mut bars = Barcode::new();
    for (row, own) in owner.iter().enumerate() {
        if let Some(j) = own {
            let (b, d) = (grade_at(row), grade_at(*j));
            if b != d {
                *bars.entry((dim_at(row), b, d)).or_default() += 1;
            }
        }
    }
    for j in 0..n {
        if cols[j].is_empty() && owner[j].is_none() {
            *bars
                .entry((dim_at(j), grade_at(j), ExtRat::Infinity))
                .or_default() += 1;
        }
    }
    bars
}

fn pipeline_barcode(f: &Filtration, field: PrimeField, max_dim: usize) -> Barcode {
    let mut bars = Barcode::new();
    for dg in 0..=max_dim {
        let m = persistence_module(f, dg, field).unwrap();
        let d = diagram_of(&m, Route::Kernel);
        for k in d.support() {
            let (a, b) = d.intervals().pair(k);
            assert!(d.mult(k).is_positive(), "barcode multiplicities are counts");
            let lo = m.base().coords(a).unwrap()[0].clone();
            let hi = m.base().coords(b).unwrap()[0].clone();
            *bars.entry((dg, lo, hi)).or_default() += d.mult(k);
        }
    }
    bars
}

#[test]
fn criterion_12_homology_pipeline() {
    criterion(12, None, || {
        let f = f2();
        let fig = parse_filtration(FILLED_SQUARE).unwrap();
        let m = persistence_module(&fig, 1, f).unwrap();
        let d = diagram_of(&m, Route::Kernel);
        assert_eq!(d.total_mass(), BigInt::one());
        let k = d
            .intervals()
            .find(m.base().idx("2").unwrap(), m.base().idx("5").unwrap())
            .unwrap();
        assert_eq!(d.mult(k), &BigInt::one());

        let mut g = Gen::new(112);
        for _ in 0..50 {
            let filt = g.filtration(30);
            let top = filt
                .simplices()
                .iter()
                .map(|s| s.dim())
                .max()
                .unwrap_or(0);
            assert_eq!(
                pipeline_barcode(&filt, f, top),
                reduction_barcode(&filt, f)
            );
        }
    });
}
