//! Simplicial filtrations graded over finite parameter grids, and the
//! persistence modules of their homology over a prime field.
//!
//! Each simplex carries a grade vector with one or two finite rational
//! parameters. The grid of declared grade values is extended with a synthetic
//! top value `inf` on every axis, and the module is zero at every grid point
//! with an infinite coordinate; classes that survive the whole filtration
//! therefore die at the top, and the diagram records them against `inf`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, Mat, PrimeField, Subspace};
use crate::pmod::{validate_module, PersistenceModule};
use crate::poset::{grid_id, grid_poset, PosetRef};
use crate::rat::ExtRat;

/// A simplex with sorted distinct vertex ids and one grade value per
/// filtration parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<String>,
    grade: Vec<ExtRat>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<String>, grade: Vec<ExtRat>) -> Result<Simplex> {
        if vertices.is_empty() {
            return Err(Error::Validation(
                "a simplex needs at least one vertex".into(),
            ));
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "simplex repeats vertex \"{}\"",
                w[0]
            )));
        }
        if let Some(g) = grade.iter().find(|g| !g.is_finite()) {
            return Err(Error::Validation(format!(
                "simplex \"{}\" has grade {}; grades must be finite",
                vertices.join(" "),
                g
            )));
        }
        Ok(Simplex { vertices, grade })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn grade(&self) -> &[ExtRat] {
        &self.grade
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn label(&self) -> String {
        self.vertices.join(" ")
    }

    fn facets(&self) -> Vec<Vec<String>> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| {
                let mut f = self.vertices.clone();
                f.remove(i);
                f
            })
            .collect()
    }
}

/// A closed simplicial filtration: every face of a simplex is present with a
/// coordinatewise smaller-or-equal grade, and all grades lie on the declared
/// grid axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    params: usize,
    axes: Vec<Vec<ExtRat>>,
    simplices: Vec<Simplex>,
}

pub fn build_filtration(
    params: usize,
    axes: Vec<Vec<ExtRat>>,
    simplices: Vec<Simplex>,
) -> Result<Filtration> {
    if params == 0 || params > 2 {
        return Err(Error::Validation(format!(
            "parameter count must be 1 or 2, got {}",
            params
        )));
    }
    if axes.len() != params {
        return Err(Error::Validation(format!(
            "expected {} grid axes, got {}",
            params,
            axes.len()
        )));
    }
    for (ai, axis) in axes.iter().enumerate() {
        if let Some(v) = axis.iter().find(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "grid axis {} holds {}; declared values must be finite",
                ai, v
            )));
        }
        if let Some(w) = axis.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "grid axis {} values must strictly increase: {} then {}",
                ai, w[0], w[1]
            )));
        }
    }
    let mut seen: HashMap<Vec<String>, usize> = HashMap::new();
    for (i, s) in simplices.iter().enumerate() {
        if s.grade.len() != params {
            return Err(Error::Validation(format!(
                "simplex \"{}\" carries {} grade values, expected {}",
                s.label(),
                s.grade.len(),
                params
            )));
        }
        for (ai, g) in s.grade.iter().enumerate() {
            if !axes[ai].contains(g) {
                return Err(Error::Validation(format!(
                    "grade {} of simplex \"{}\" is not on grid axis {}",
                    g,
                    s.label(),
                    ai
                )));
            }
        }
        if seen.insert(s.vertices.clone(), i).is_some() {
            return Err(Error::Validation(format!(
                "simplex \"{}\" declared twice",
                s.label()
            )));
        }
    }
    for s in &simplices {
        for facet in s.facets() {
            match seen.get(&facet) {
                None => {
                    return Err(Error::Validation(format!(
                        "face \"{}\" of simplex \"{}\" is missing",
                        facet.join(" "),
                        s.label()
                    )));
                }
                Some(&fi) => {
                    let f = &simplices[fi];
                    if !f.grade.iter().zip(&s.grade).all(|(fg, sg)| fg <= sg) {
                        return Err(Error::Validation(format!(
                            "face \"{}\" enters at {} after simplex \"{}\" at {}",
                            f.label(),
                            grid_id(&f.grade),
                            s.label(),
                            grid_id(&s.grade)
                        )));
                    }
                }
            }
        }
    }
    Ok(Filtration {
        params,
        axes,
        simplices,
    })
}

impl Filtration {
    pub fn params(&self) -> usize {
        self.params
    }

    pub fn axes(&self) -> &[Vec<ExtRat>] {
        &self.axes
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Declared axes with the synthetic top value appended to each.
    pub fn extended_axes(&self) -> Vec<Vec<ExtRat>> {
        self.axes
            .iter()
            .map(|a| {
                let mut e = a.clone();
                e.push(ExtRat::Infinity);
                e
            })
            .collect()
    }

    /// Grid poset over the extended axes; coordinates are the grade vectors.
    pub fn base_poset(&self) -> Result<PosetRef> {
        grid_poset(&self.extended_axes())
    }

    /// Indices of the simplices present at the given grade, in declaration
    /// order.
    pub fn complex_at(&self, grade: &[ExtRat]) -> Vec<usize> {
        debug_assert_eq!(grade.len(), self.params);
        self.simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.grade.iter().zip(grade).all(|(g, t)| g <= t))
            .map(|(i, _)| i)
            .collect()
    }
}

fn boundary_matrix(f: &Filtration, rows: &[usize], cols: &[usize], field: PrimeField) -> Mat {
    let row_pos: HashMap<&[String], usize> = rows
        .iter()
        .enumerate()
        .map(|(i, &s)| (f.simplices[s].vertices(), i))
        .collect();
    let mut mat = Mat::zero(rows.len(), cols.len(), field);
    for (cj, &si) in cols.iter().enumerate() {
        let s = &f.simplices[si];
        for (i, facet) in s.facets().into_iter().enumerate() {
            let ri = row_pos[facet.as_slice()];
            let sign = if i % 2 == 0 { 1 } else { field.neg(1) };
            mat.set(ri, cj, sign);
        }
    }
    mat
}

struct PointData {
    /// Representative cycles, one column per homology basis class.
    reps: Mat,
    /// The d-simplices present at this point, in declaration order.
    simplex_cols: Vec<usize>,
    /// Boundary matrix of the (d+1)-simplices present at this point.
    bnd_up: Mat,
}

fn homology_at(f: &Filtration, point: &[ExtRat], d: usize, field: PrimeField) -> PointData {
    let present = f.complex_at(point);
    let sd: Vec<usize> = present
        .iter()
        .copied()
        .filter(|&s| f.simplices[s].dim() == d)
        .collect();
    let sdm: Vec<usize> = if d == 0 {
        Vec::new()
    } else {
        present
            .iter()
            .copied()
            .filter(|&s| f.simplices[s].dim() == d - 1)
            .collect()
    };
    let sdp: Vec<usize> = present
        .iter()
        .copied()
        .filter(|&s| f.simplices[s].dim() == d + 1)
        .collect();
    let bnd_down = boundary_matrix(f, &sdm, &sd, field);
    let bnd_up = boundary_matrix(f, &sd, &sdp, field);
    let cycles = kernel_basis(&bnd_down);
    let bounds = image_basis(&bnd_up);
    debug_assert!(cycles.contains(&bounds), "boundaries must be cycles");
    let mut span = bounds;
    let mut rep_cols: Vec<Vec<u64>> = Vec::new();
    for j in 0..cycles.dim() {
        let v = cycles.basis().column(j);
        if !span.contains_vec(&v) {
            let col = Mat::from_fn(v.len(), 1, field, |i, _| v[i]);
            span = span
                .sum(&Subspace::from_columns(&col))
                .expect("same ambient space");
            rep_cols.push(v);
        }
    }
    let reps = Mat::from_fn(sd.len(), rep_cols.len(), field, |i, j| rep_cols[j][i]);
    PointData {
        reps,
        simplex_cols: sd,
        bnd_up,
    }
}

fn induced_map(field: PrimeField, from: &PointData, to: &PointData) -> Mat {
    let h_from = from.reps.cols();
    let h_to = to.reps.cols();
    if h_from == 0 || h_to == 0 {
        return Mat::zero(h_to, h_from, field);
    }
    let pos_to: HashMap<usize, usize> = to
        .simplex_cols
        .iter()
        .enumerate()
        .map(|(j, &s)| (s, j))
        .collect();
    let mut lifted = Mat::zero(to.simplex_cols.len(), h_from, field);
    for (i_from, &s) in from.simplex_cols.iter().enumerate() {
        let i_to = pos_to[&s];
        for j in 0..h_from {
            lifted.set(i_to, j, from.reps.get(i_from, j));
        }
    }
    let system = to.reps.hstack(&to.bnd_up);
    let sol = system
        .solve(&lifted)
        .expect("an included cycle stays a cycle and lifts through the chosen basis");
    Mat::from_fn(h_to, h_from, field, |i, j| sol.get(i, j))
}

/// Homology of the filtration in dimension `d` at every grid point, assembled
/// into a persistence module over the extended grid poset. Hasse-edge maps are
/// induced by chain-level inclusion followed by projection to the chosen
/// homology basis; path independence is machine-checked on construction.
pub fn persistence_module(
    f: &Filtration,
    d: usize,
    field: PrimeField,
) -> Result<PersistenceModule> {
    let base = f.base_poset()?;
    let n = base.len();
    let mut data: Vec<Option<PointData>> = Vec::with_capacity(n);
    for i in 0..n {
        let coords = base.coords(i).expect("grid posets carry coordinates");
        if coords.iter().all(|c| c.is_finite()) {
            data.push(Some(homology_at(f, coords, d, field)));
        } else {
            data.push(None);
        }
    }
    let dims: Vec<usize> = data
        .iter()
        .map(|p| p.as_ref().map_or(0, |p| p.reps.cols()))
        .collect();
    let mut edge_maps = HashMap::new();
    for &(a, b) in base.hasse_edges() {
        let map = match (&data[a], &data[b]) {
            (Some(pa), Some(pb)) => induced_map(field, pa, pb),
            _ => Mat::zero(dims[b], dims[a], field),
        };
        edge_maps.insert((a, b), map);
    }
    validate_module(&base, field, dims, edge_maps)
}

/// Parse a filtration from its text form: `params <1|2>` (optional, default
/// 1, before any other line), `grid <axis> <q1> <q2> ...` per axis, and one
/// `s <v1> <v2> ... @ <g1> [<g2>]` line per simplex. `#` starts a comment.
pub fn parse_filtration(text: &str) -> Result<Filtration> {
    let mut params_decl: Option<usize> = None;
    let mut axis_decl: Vec<(usize, Vec<ExtRat>)> = Vec::new();
    let mut simplices: Vec<Simplex> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "params" => {
                if params_decl.is_some() {
                    return Err(Error::parse(line_no, "params declared twice"));
                }
                if !axis_decl.is_empty() || !simplices.is_empty() {
                    return Err(Error::parse(
                        line_no,
                        "params must come before grid and simplex lines",
                    ));
                }
                if tokens.len() != 2 {
                    return Err(Error::parse(line_no, "expected: params <1|2>"));
                }
                let p: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad parameter count \"{}\"", tokens[1])))?;
                if p == 0 || p > 2 {
                    return Err(Error::parse(
                        line_no,
                        format!("parameter count must be 1 or 2, got {}", p),
                    ));
                }
                params_decl = Some(p);
            }
            "grid" => {
                if tokens.len() < 2 {
                    return Err(Error::parse(line_no, "expected: grid <axis> <values...>"));
                }
                let axis: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad axis index \"{}\"", tokens[1])))?;
                let params = params_decl.unwrap_or(1);
                if axis >= params {
                    return Err(Error::parse(
                        line_no,
                        format!("grid axis {} out of range for {} parameter(s)", axis, params),
                    ));
                }
                if axis_decl.iter().any(|(a, _)| *a == axis) {
                    return Err(Error::parse(
                        line_no,
                        format!("grid axis {} declared twice", axis),
                    ));
                }
                let mut values = Vec::new();
                for t in &tokens[2..] {
                    let v: ExtRat = t
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad grid value \"{}\"", t)))?;
                    values.push(v);
                }
                axis_decl.push((axis, values));
            }
            "s" => {
                let at = match tokens.iter().position(|t| *t == "@") {
                    Some(p) => p,
                    None => {
                        return Err(Error::parse(
                            line_no,
                            "expected '@' between vertices and grade",
                        ));
                    }
                };
                if at < 2 {
                    return Err(Error::parse(line_no, "simplex needs at least one vertex"));
                }
                let vertices: Vec<String> = tokens[1..at].iter().map(|t| t.to_string()).collect();
                let params = params_decl.unwrap_or(1);
                let grade_tokens = &tokens[at + 1..];
                if grade_tokens.len() != params {
                    return Err(Error::parse(
                        line_no,
                        format!(
                            "expected {} grade value(s), got {}",
                            params,
                            grade_tokens.len()
                        ),
                    ));
                }
                let mut grade = Vec::new();
                for t in grade_tokens {
                    let v: ExtRat = t
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad grade value \"{}\"", t)))?;
                    grade.push(v);
                }
                simplices.push(Simplex::new(vertices, grade)?);
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive \"{}\"", other),
                ));
            }
        }
    }
    let params = params_decl.unwrap_or(1);
    let mut axes = vec![Vec::new(); params];
    for (axis, values) in axis_decl {
        axes[axis] = values;
    }
    build_filtration(params, axes, simplices)
}

pub fn render_filtration(f: &Filtration) -> String {
    let mut out = String::new();
    writeln!(out, "params {}", f.params).unwrap();
    for (i, axis) in f.axes.iter().enumerate() {
        if axis.is_empty() {
            continue;
        }
        let vals: Vec<String> = axis.iter().map(|v| v.to_string()).collect();
        writeln!(out, "grid {} {}", i, vals.join(" ")).unwrap();
    }
    for s in &f.simplices {
        let gr: Vec<String> = s.grade.iter().map(|v| v.to_string()).collect();
        writeln!(out, "s {} @ {}", s.vertices.join(" "), gr.join(" ")).unwrap();
    }
    out
}
