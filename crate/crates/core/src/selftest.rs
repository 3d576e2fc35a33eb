//! Randomized identity suites over the generators, with deterministic
//! reports: inversion against a Galois connection, inversion roundtrips,
//! diagram route equivalence, the rank formula, and matching gluing costs.

use crate::diagram::{
    diagram_of, equivalent, rank_diagram_direct, rank_diagram_formula_zero_top, Route,
};
use crate::gen::Gen;
use crate::linalg::PrimeField;
use crate::matching::{glue_matchings, matching_cost};
use crate::mobius::{mobius_invert, rgct_check, zeta_transform};

pub struct Report {
    pub seed: u64,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for f in &self.failures {
            out.push_str(f);
            out.push('\n');
        }
        if self.passed() {
            out.push_str("selftest: PASS\n");
        } else {
            out.push_str(&format!(
                "selftest: FAIL (reproduce with --seed {})\n",
                self.seed
            ));
        }
        out
    }
}

/// Run all suites for `iters` iterations each. Each suite draws from its own
/// seeded stream, so a fixed seed reproduces the identical report.
pub fn run(seed: u64, iters: usize, field: PrimeField) -> Report {
    let mut lines = Vec::new();
    let mut failures = Vec::new();

    {
        let mut g = Gen::new(seed.wrapping_add(1));
        let mut ok = 0;
        for i in 0..iters {
            let c = g.connection(6);
            let m = g.intfn(c.source(), -3, 3);
            match rgct_check(&c, &m) {
                Ok(()) => ok += 1,
                Err(e) => failures.push(format!("inversion-transport iteration {}: {}", i, e)),
            }
        }
        lines.push(format!("inversion-transport: {}/{} pass", ok, iters));
    }

    {
        let mut g = Gen::new(seed.wrapping_add(2));
        let mut ok = 0;
        for i in 0..iters {
            let p = g.poset(7);
            let m = g.intfn(&p, -5, 5);
            let there = zeta_transform(&mobius_invert(&m));
            let back = mobius_invert(&zeta_transform(&m));
            if there.values() == m.values() && back.values() == m.values() {
                ok += 1;
            } else {
                failures.push(format!("roundtrip iteration {}: inversion is not inverse", i));
            }
        }
        lines.push(format!("roundtrip: {}/{} pass", ok, iters));
    }

    {
        let mut g = Gen::new(seed.wrapping_add(3));
        let mut ok = 0;
        for i in 0..iters {
            let p = g.poset(5);
            let m = g.module(&p, field, 3);
            let kernel = diagram_of(&m, Route::Kernel);
            let pres = diagram_of(&m, Route::Presentation);
            match equivalent(&kernel, &pres) {
                Ok(true) => ok += 1,
                Ok(false) => failures.push(format!("routes iteration {}: diagrams differ", i)),
                Err(e) => failures.push(format!("routes iteration {}: {}", i, e)),
            }
        }
        lines.push(format!("routes: {}/{} pass", ok, iters));
    }

    {
        let mut g = Gen::new(seed.wrapping_add(4));
        let mut ok = 0;
        for i in 0..iters {
            let m = g.module_with_top(5, field, 3);
            let direct = rank_diagram_direct(&m);
            let formula = rank_diagram_formula_zero_top(&m);
            match equivalent(&direct, &formula) {
                Ok(true) => ok += 1,
                Ok(false) => failures.push(format!("rank iteration {}: formula differs", i)),
                Err(e) => failures.push(format!("rank iteration {}: {}", i, e)),
            }
        }
        lines.push(format!("rank: {}/{} pass", ok, iters));
    }

    {
        let mut g = Gen::new(seed.wrapping_add(5));
        let mut ok = 0;
        for i in 0..iters {
            let (nu, eta) = g.matching_pair();
            let check = glue_matchings(&nu, &eta).and_then(|glued| {
                let lhs = matching_cost(&glued)?;
                let rhs = matching_cost(&nu)?.add(&matching_cost(&eta)?);
                Ok(lhs <= rhs)
            });
            match check {
                Ok(true) => ok += 1,
                Ok(false) => failures.push(format!("glue iteration {}: cost exceeds the sum", i)),
                Err(e) => failures.push(format!("glue iteration {}: {}", i, e)),
            }
        }
        lines.push(format!("glue: {}/{} pass", ok, iters));
    }

    Report {
        seed,
        lines,
        failures,
    }
}
