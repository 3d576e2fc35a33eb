//! Seeded random generators for posets, Galois connections, modules,
//! diagrams, matchings, interleavings, and filtrations. Every generated
//! object is validated on construction, and a fixed seed reproduces the same
//! sequence of objects.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::Diagram;
use crate::galois::{compose_galois, extend_galois_bar, left_adjoint_of, GaloisConnection};
use crate::homology::{build_filtration, Filtration, Simplex};
use crate::interleave::{
    build_from_shift, leg_from_table, validate_interleaving, Interleaving,
};
use crate::linalg::{Mat, PrimeField};
use crate::matching::{validate_matching, MatchTarget, Matching};
use crate::mobius::IntFn;
use crate::pmod::{validate_module, PersistenceModule};
use crate::poset::{
    adjoin_top, build_poset, chain_poset, grid_poset, interval_poset_bar, IntervalPoset, PosetRef,
};
use crate::rat::{ExtRat, Rat};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_range(0..den) < num
    }

    fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.rng.gen_range(0..xs.len())]
    }

    /// Random poset with 1..=max_n elements: random edges oriented along a
    /// shuffled total order, closed transitively.
    pub fn poset(&mut self, max_n: usize) -> PosetRef {
        let n = self.rng.gen_range(1..=max_n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let elements: Vec<(String, Option<Vec<ExtRat>>)> =
            (0..n).map(|i| (format!("p{}", i), None)).collect();
        let density = self.int(0, 60);
        let mut relations = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.int(0, 99) < density {
                    relations.push((format!("p{}", order[i]), format!("p{}", order[j])));
                }
            }
        }
        build_poset(&elements, &relations).expect("acyclic by construction")
    }

    /// Strictly increasing finite chain values drawn from half-integers.
    pub fn chain_values(&mut self, max_len: usize) -> Vec<ExtRat> {
        let len = self.rng.gen_range(1..=max_len);
        let mut pool: Vec<i64> = (0..=(2 * max_len as i64 + 4)).collect();
        pool.shuffle(&mut self.rng);
        let mut picked: Vec<i64> = pool.into_iter().take(len).collect();
        picked.sort_unstable();
        picked.into_iter().map(|v| ExtRat::from_frac(v, 2)).collect()
    }

    pub fn chain(&mut self, max_len: usize) -> PosetRef {
        chain_poset(&self.chain_values(max_len)).expect("strictly increasing values")
    }

    pub fn intfn(&mut self, p: &PosetRef, lo: i64, hi: i64) -> IntFn {
        let values = (0..p.len()).map(|_| BigInt::from(self.int(lo, hi))).collect();
        IntFn::from_values(p.clone(), values).expect("one value per element")
    }

    fn subposet(&self, base: &PosetRef, keep: &[usize]) -> PosetRef {
        let elements: Vec<(String, Option<Vec<ExtRat>>)> = keep
            .iter()
            .map(|&i| (base.id(i).to_string(), base.coords(i).map(|c| c.to_vec())))
            .collect();
        let mut relations = Vec::new();
        for &a in keep {
            for &b in keep {
                if a != b && base.leq(a, b) {
                    relations.push((base.id(a).to_string(), base.id(b).to_string()));
                }
            }
        }
        build_poset(&elements, &relations).expect("induced subposet")
    }

    /// Insertion onto a random induced subposet, when the inclusion admits a
    /// left adjoint.
    pub fn insertion(&mut self, base: &PosetRef) -> Option<GaloisConnection> {
        let n = base.len();
        for _ in 0..30 {
            let mut keep: Vec<usize> = (0..n).filter(|_| self.chance(1, 2)).collect();
            if keep.is_empty() {
                keep.push(self.int(0, n as i64 - 1) as usize);
            }
            let sub = self.subposet(base, &keep);
            if let Ok(c) = left_adjoint_of(base, &sub, keep) {
                return Some(c);
            }
        }
        None
    }

    fn connection_basic(&mut self, max_n: usize) -> GaloisConnection {
        loop {
            if self.chance(1, 2) {
                let p = self.poset(max_n);
                if let Some(c) = self.insertion(&p) {
                    return c;
                }
            } else {
                let p0 = self.poset(max_n.saturating_sub(1).max(1));
                let (p, top) = adjoin_top(&p0);
                let qlen = self.int(1, 4) as usize;
                let qvals: Vec<ExtRat> = (0..qlen as i64).map(ExtRat::from_int).collect();
                let q = chain_poset(&qvals).expect("increasing integers");
                let mut g = vec![0usize; qlen];
                g[qlen - 1] = top;
                for i in (0..qlen.saturating_sub(1)).rev() {
                    let below = p.below(g[i + 1]);
                    g[i] = *self.pick(&below);
                }
                return left_adjoint_of(&p, &q, g)
                    .expect("total because the chain tops out at the adjoined maximum");
            }
        }
    }

    /// Random Galois connection: a subposet insertion or a connection into a
    /// chain, sometimes composed with a further insertion or extended to the
    /// interval posets.
    pub fn connection(&mut self, max_n: usize) -> GaloisConnection {
        let mut c = self.connection_basic(max_n);
        if self.chance(1, 4) {
            if let Some(c2) = self.insertion(c.target()) {
                c = compose_galois(&c, &c2).expect("targets line up");
            }
        }
        if self.chance(1, 4) {
            let (_, _, ext) = extend_galois_bar(&c).expect("interval extension");
            c = ext;
        }
        c
    }

    fn downset_marks(&mut self, p: &PosetRef) -> Vec<bool> {
        let n = p.len();
        let marks: Vec<bool> = (0..n).map(|_| self.chance(2, 5)).collect();
        (0..n)
            .map(|a| (0..n).any(|b| marks[b] && p.leq(a, b)))
            .collect()
    }

    fn upset_marks(&mut self, p: &PosetRef) -> Vec<bool> {
        let n = p.len();
        let marks: Vec<bool> = (0..n).map(|_| self.chance(2, 5)).collect();
        (0..n)
            .map(|a| (0..n).any(|b| marks[b] && p.leq(b, a)))
            .collect()
    }

    pub fn invertible(&mut self, field: PrimeField, n: usize) -> Mat {
        if n == 0 {
            return Mat::zero(0, 0, field);
        }
        loop {
            let p = field.p();
            let m = Mat::from_fn(n, n, field, |_, _| self.rng.gen_range(0..p));
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    /// Random module: a direct sum of convex-region interval modules
    /// conjugated by a random base change at every element.
    pub fn module(&mut self, base: &PosetRef, field: PrimeField, max_dim: usize) -> PersistenceModule {
        let n = base.len();
        let summands = self.int(0, max_dim as i64) as usize;
        let mut regions: Vec<Vec<bool>> = Vec::new();
        for _ in 0..summands {
            let d = self.downset_marks(base);
            let u = self.upset_marks(base);
            regions.push((0..n).map(|i| d[i] && u[i]).collect());
        }
        let present: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..summands)
                    .filter(|&s| regions[s][i])
                    .collect::<Vec<usize>>()
            })
            .collect();
        let dims: Vec<usize> = present.iter().map(|p| p.len()).collect();
        let change: Vec<Mat> = dims.iter().map(|&d| self.invertible(field, d)).collect();
        let inverse: Vec<Mat> = change
            .iter()
            .map(|c| c.inverse().expect("invertible"))
            .collect();
        let mut maps = HashMap::new();
        for &(a, b) in base.hasse_edges() {
            let mut raw = Mat::zero(dims[b], dims[a], field);
            for (cj, &s) in present[a].iter().enumerate() {
                if let Some(ri) = present[b].iter().position(|&t| t == s) {
                    raw.set(ri, cj, 1);
                }
            }
            maps.insert((a, b), change[b].mul(&raw).mul(&inverse[a]));
        }
        validate_module(base, field, dims, maps).expect("convex interval sums are functorial")
    }

    pub fn chain_module(
        &mut self,
        max_len: usize,
        field: PrimeField,
        max_dim: usize,
    ) -> PersistenceModule {
        let chain = self.chain(max_len);
        self.module(&chain, field, max_dim)
    }

    /// Random module over a poset with a maximum element, vanishing there.
    pub fn module_with_top(
        &mut self,
        max_n: usize,
        field: PrimeField,
        max_dim: usize,
    ) -> PersistenceModule {
        let p0 = self.poset(max_n.saturating_sub(1).max(1));
        let (base, top) = adjoin_top(&p0);
        let m = self.module(&base, field, max_dim);
        let mut dims = m.dims().to_vec();
        dims[top] = 0;
        let mut maps = HashMap::new();
        for &(a, b) in base.hasse_edges() {
            let mat = if b == top {
                Mat::zero(0, dims[a], field)
            } else {
                m.map(a, b).clone()
            };
            maps.insert((a, b), mat);
        }
        validate_module(&base, field, dims, maps).expect("zeroing the maximum stays functorial")
    }

    pub fn grid_module(
        &mut self,
        max_axis: usize,
        field: PrimeField,
        max_dim: usize,
    ) -> PersistenceModule {
        let axes: Vec<Vec<ExtRat>> = (0..2).map(|_| self.chain_values(max_axis)).collect();
        let base = grid_poset(&axes).expect("strictly increasing axes");
        self.module(&base, field, max_dim)
    }

    /// A line through a random finite grid point: nonnegative direction with
    /// at least one positive component, offset chosen so the point is hit at
    /// a nonnegative parameter.
    pub fn line_through(&mut self, base: &PosetRef) -> (Vec<Rat>, Vec<Rat>) {
        let finite: Vec<usize> = (0..base.len())
            .filter(|&i| {
                base.coords(i)
                    .map_or(false, |c| c.iter().all(|v| v.is_finite()))
            })
            .collect();
        let i = *self.pick(&finite);
        let coords = base.coords(i).expect("picked a coordinatized point");
        let arity = coords.len();
        let mut dir: Vec<Rat> = (0..arity)
            .map(|_| Rat::from_integer(self.int(0, 2).into()))
            .collect();
        if dir.iter().all(|d| d.is_zero()) {
            let j = self.int(0, arity as i64 - 1) as usize;
            dir[j] = Rat::one();
        }
        let t = Rat::new(self.int(0, 4).into(), 2.into());
        let offset: Vec<Rat> = coords
            .iter()
            .zip(&dir)
            .map(|(c, d)| c.as_finite().expect("finite point").clone() - d.clone() * t.clone())
            .collect();
        (offset, dir)
    }

    fn bar_midpoint(bar: &IntervalPoset, k: usize) -> ExtRat {
        let (a, b) = bar.pair(k);
        let ca = &bar.base.coords(a).expect("chain coords")[0];
        let cb = &bar.base.coords(b).expect("chain coords")[0];
        ca.midpoint(cb)
    }

    /// Random nonnegative diagram over the chain's interval poset.
    pub fn diagram_on(&mut self, chain: &PosetRef, max_mass: usize) -> Diagram {
        let bar = interval_poset_bar(chain);
        let offdiag: Vec<usize> = (0..bar.len()).filter(|&k| !bar.is_diagonal(k)).collect();
        let mut raw = IntFn::zero(bar.poset.clone());
        if !offdiag.is_empty() {
            let mass = self.int(0, max_mass as i64);
            for _ in 0..mass {
                let k = *self.pick(&offdiag);
                let v = raw.get(k) + BigInt::one();
                raw.set(k, v);
            }
        }
        Diagram::new(bar, raw)
    }

    /// Random matching from a fresh diagram over `source_chain` onto `d2`:
    /// every unit of `d2` is covered from an interval or from the diagonal,
    /// and the source diagram is read off the row marginals.
    pub fn matching_onto(&mut self, source_chain: &PosetRef, d2: &Diagram) -> Matching {
        let bar1 = interval_poset_bar(source_chain);
        let offdiag1: Vec<usize> = (0..bar1.len()).filter(|&k| !bar1.is_diagonal(k)).collect();
        let mut rows: Vec<(MatchTarget, MatchTarget, BigInt)> = Vec::new();
        let mut left = vec![0i64; bar1.len()];
        for k in d2.support() {
            let mult = d2.mult(k).to_i64().expect("desk-scale mass");
            for _ in 0..mult {
                if !offdiag1.is_empty() && self.chance(2, 3) {
                    let j = *self.pick(&offdiag1);
                    left[j] += 1;
                    rows.push((
                        MatchTarget::Interval(j),
                        MatchTarget::Interval(k),
                        BigInt::one(),
                    ));
                } else {
                    let anchor = Self::bar_midpoint(d2.intervals(), k);
                    rows.push((
                        MatchTarget::Diagonal(anchor),
                        MatchTarget::Interval(k),
                        BigInt::one(),
                    ));
                }
            }
        }
        for _ in 0..self.int(0, 2) {
            if offdiag1.is_empty() {
                break;
            }
            let j = *self.pick(&offdiag1);
            left[j] += 1;
            let anchor = Self::bar_midpoint(&bar1, j);
            rows.push((
                MatchTarget::Interval(j),
                MatchTarget::Diagonal(anchor),
                BigInt::one(),
            ));
        }
        let raw = IntFn::from_values(bar1.poset.clone(), left.into_iter().map(BigInt::from).collect())
            .expect("one value per interval");
        let d1 = Diagram::new(bar1, raw);
        validate_matching(&d1, d2, rows).expect("marginals agree by construction")
    }

    /// Random matching from `d2` onto a fresh diagram over `target_chain`.
    pub fn matching_from(&mut self, d2: &Diagram, target_chain: &PosetRef) -> Matching {
        let bar3 = interval_poset_bar(target_chain);
        let offdiag3: Vec<usize> = (0..bar3.len()).filter(|&k| !bar3.is_diagonal(k)).collect();
        let mut rows: Vec<(MatchTarget, MatchTarget, BigInt)> = Vec::new();
        let mut right = vec![0i64; bar3.len()];
        for k in d2.support() {
            let mult = d2.mult(k).to_i64().expect("desk-scale mass");
            for _ in 0..mult {
                if !offdiag3.is_empty() && self.chance(2, 3) {
                    let j = *self.pick(&offdiag3);
                    right[j] += 1;
                    rows.push((
                        MatchTarget::Interval(k),
                        MatchTarget::Interval(j),
                        BigInt::one(),
                    ));
                } else {
                    let anchor = Self::bar_midpoint(d2.intervals(), k);
                    rows.push((
                        MatchTarget::Interval(k),
                        MatchTarget::Diagonal(anchor),
                        BigInt::one(),
                    ));
                }
            }
        }
        for _ in 0..self.int(0, 2) {
            if offdiag3.is_empty() {
                break;
            }
            let j = *self.pick(&offdiag3);
            right[j] += 1;
            let anchor = Self::bar_midpoint(&bar3, j);
            rows.push((
                MatchTarget::Diagonal(anchor),
                MatchTarget::Interval(j),
                BigInt::one(),
            ));
        }
        let raw = IntFn::from_values(bar3.poset.clone(), right.into_iter().map(BigInt::from).collect())
            .expect("one value per interval");
        let d3 = Diagram::new(bar3, raw);
        validate_matching(d2, &d3, rows).expect("marginals agree by construction")
    }

    /// Two composable validated matchings sharing their middle diagram.
    pub fn matching_pair(&mut self) -> (Matching, Matching) {
        let c1 = self.chain(4);
        let c2 = self.chain(4);
        let c3 = self.chain(4);
        let d2 = self.diagram_on(&c2, 4);
        let nu = self.matching_onto(&c1, &d2);
        let eta = self.matching_from(&d2, &c3);
        (nu, eta)
    }

    /// Random validated interleaving with cost at most `eps`: either the
    /// shift construction on a random chain module, or a random chain middle
    /// with an identity leg and a rounding-up retract leg whose gaps stay
    /// within `eps`.
    pub fn interleaving(
        &mut self,
        eps: &Rat,
        field: PrimeField,
        max_len: usize,
        max_dim: usize,
    ) -> Interleaving {
        if self.chance(1, 2) {
            let m = self.chain_module(max_len, field, max_dim);
            return build_from_shift(&m, eps).expect("shift interleavings validate");
        }
        let bound = ExtRat::Finite(eps.clone());
        loop {
            let gamma = self.chain_module(max_len, field, max_dim);
            let base = gamma.base().clone();
            let values: Vec<ExtRat> = (0..base.len())
                .map(|i| base.coords(i).expect("chain coords")[0].clone())
                .collect();
            let n = values.len();
            let mut f1 = values.clone();
            let mut next_kept = values[n - 1].clone();
            for i in (0..n.saturating_sub(1)).rev() {
                let gap = values[i].dist(&next_kept);
                if gap <= bound && self.chance(1, 2) {
                    f1[i] = next_kept.clone();
                } else {
                    next_kept = values[i].clone();
                }
            }
            let leg0 = leg_from_table(&gamma, &values).expect("identity leg");
            let leg1 = leg_from_table(&gamma, &f1).expect("round-up leg");
            match validate_interleaving(gamma, leg0, leg1) {
                Ok(i) => return i,
                Err(_) => continue,
            }
        }
    }

    /// Random closed 1-parameter filtration over the integer grid 0..=6.
    pub fn filtration(&mut self, max_simplices: usize) -> Filtration {
        let gmax = 6i64;
        let axis: Vec<ExtRat> = (0..=gmax).map(ExtRat::from_int).collect();
        let nv = self.int(1, 5).min(max_simplices as i64).max(1) as usize;
        let mut simplices: Vec<Simplex> = Vec::new();
        let mut grades: HashMap<Vec<String>, i64> = HashMap::new();
        for v in 0..nv {
            let g = self.int(0, gmax / 2);
            let vs = vec![format!("v{}", v)];
            grades.insert(vs.clone(), g);
            simplices.push(Simplex::new(vs, vec![ExtRat::from_int(g)]).expect("a vertex"));
        }
        for _ in 0..(max_simplices * 3) {
            if simplices.len() >= max_simplices {
                break;
            }
            let size = if self.chance(2, 3) { 2 } else { 3 };
            if nv < size {
                continue;
            }
            let mut verts: Vec<usize> = (0..nv).collect();
            verts.shuffle(&mut self.rng);
            let mut vs: Vec<String> = verts[..size].iter().map(|v| format!("v{}", v)).collect();
            vs.sort();
            if grades.contains_key(&vs) {
                continue;
            }
            let mut floor = 0i64;
            let mut all_faces = true;
            for i in 0..size {
                let mut f = vs.clone();
                f.remove(i);
                match grades.get(&f) {
                    Some(&g) => floor = floor.max(g),
                    None => {
                        all_faces = false;
                        break;
                    }
                }
            }
            if !all_faces || floor > gmax {
                continue;
            }
            let g = self.int(floor, gmax);
            grades.insert(vs.clone(), g);
            simplices.push(Simplex::new(vs, vec![ExtRat::from_int(g)]).expect("distinct vertices"));
        }
        build_filtration(1, vec![axis], simplices).expect("faces enter no later than cofaces")
    }
}
