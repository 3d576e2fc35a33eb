//! Exact linear algebra over a prime field: rank, kernel, image, subspace
//! intersection, quotients, and finite colimits of vector-space diagrams.
//!
//! Subspaces are kept in reduced column echelon form, which is canonical, so
//! subspace equality is plain equality of basis matrices. Zero-dimensional
//! spaces are first-class: a matrix may have zero rows or zero columns.

use crate::error::{Error, Result};

/// The field F_p for a prime modulus p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for 64-bit integers with the bases above.
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn reduce_signed(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        powmod(a, self.p - 2, self.p)
    }
}

/// A dense matrix over F_p, row-major. Arithmetic asserts shape and field
/// agreement; validated entry points upstream are responsible for turning
/// user data into well-shaped matrices first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: PrimeField,
    entries: Vec<u64>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, field: PrimeField) -> Mat {
        Mat {
            rows,
            cols,
            field,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, field: PrimeField) -> Mat {
        let mut m = Mat::zero(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, field: PrimeField, entries: &[u64]) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            field,
            entries: entries.iter().map(|&e| field.reduce(e)).collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, field: PrimeField, mut f: impl FnMut(usize, usize) -> u64) -> Mat {
        let mut m = Mat::zero(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                m.entries[i * cols + j] = field.reduce(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zero(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = self.field.add(out.get(i, j), self.field.mul(a, other.get(k, j)));
                    out.entries[i * out.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn add_mat(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    pub fn sub_mat(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Mat::zero(self.rows, self.cols + other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * out.cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                out.entries[i * out.cols + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    /// Vertical concatenation, `self` above `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn select_columns(&self, js: &[usize]) -> Mat {
        let mut out = Mat::zero(self.rows, js.len(), self.field);
        for (jj, &j) in js.iter().enumerate() {
            for i in 0..self.rows {
                out.entries[i * out.cols + jj] = self.get(i, j);
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..self.cols {
                    s = self.field.add(s, self.field.mul(self.get(i, j), v[j]));
                }
                s
            })
            .collect()
    }

    /// Row-reduce in place to reduced row echelon form; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.entries.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.entries[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.entries[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve `self * X = B` for one solution (free variables set to zero), or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.field, b.field, "field mismatch");
        assert_eq!(self.rows, b.rows, "row mismatch in solve");
        let aug = self.hstack(b);
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.cols, b.cols, self.field);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.entries[c * b.cols + j] = red.get(i, self.cols + j);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Mat::identity(self.rows, self.field))?;
        if self.mul(&x) == Mat::identity(self.rows, self.field) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }
}

/// A subspace of F_p^n, stored as a canonical basis: the transpose of the
/// reduced row echelon form of any spanning set. Equal subspaces have equal
/// basis matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat, // ambient x dim, reduced column echelon
}

impl Subspace {
    pub fn zero(ambient: usize, field: PrimeField) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zero(ambient, 0, field),
        }
    }

    pub fn full(ambient: usize, field: PrimeField) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(ambient, field),
        }
    }

    /// Span of the columns of `cols`, canonicalized.
    pub fn from_columns(cols: &Mat) -> Subspace {
        let (red, pivots) = cols.transpose().rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let mut basis = Mat::zero(cols.rows, pivots.len(), cols.field);
        for (jj, &i) in keep.iter().enumerate() {
            for a in 0..cols.rows {
                basis.entries[a * basis.cols + jj] = red.get(i, a);
            }
        }
        Subspace {
            ambient: cols.rows,
            basis,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    /// The canonical basis, one column per basis vector.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let b = Mat::from_entries(self.ambient, 1, self.field(), v).unwrap();
        self.basis.solve(&b).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        self.basis.solve(&other.basis).is_some()
    }

    /// Sum of subspaces, canonical.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(
                "subspace sum".into(),
                self.ambient,
                other.ambient,
            ));
        }
        Ok(Subspace::from_columns(&self.basis.hstack(&other.basis)))
    }
}

/// Column space of a matrix, canonical.
pub fn image_basis(a: &Mat) -> Subspace {
    Subspace::from_columns(a)
}

/// Canonical basis of the null space `{x : Ax = 0}`.
pub fn kernel_basis(a: &Mat) -> Subspace {
    let (red, pivots) = a.rref();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_set.contains(c)).collect();
    let f = a.field;
    let mut cols = Mat::zero(a.cols, free.len(), f);
    for (jj, &fc) in free.iter().enumerate() {
        cols.set(fc, jj, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            cols.set(pc, jj, f.neg(red.get(i, fc)));
        }
    }
    Subspace::from_columns(&cols)
}

/// Intersection `U ∩ V`, via the kernel of the stacked system `[U | -V]`.
pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    if u.ambient != v.ambient {
        return Err(Error::DimensionMismatch(
            "subspace intersection".into(),
            u.ambient,
            v.ambient,
        ));
    }
    let f = u.field();
    let neg_v = Mat::from_fn(v.ambient, v.dim(), f, |i, j| f.neg(v.basis.get(i, j)));
    let stacked = u.basis.hstack(&neg_v);
    let null = kernel_basis(&stacked);
    // First dim(U) coordinates of each null vector are U-coefficients.
    let coeffs = Mat::from_fn(u.dim(), null.dim(), f, |i, j| null.basis.get(i, j));
    Ok(Subspace::from_columns(&u.basis.mul(&coeffs)))
}

/// A surjection `F_p^ambient -> F_p^(ambient - dim W)` whose kernel is exactly
/// `W`: complete W's basis with standard vectors on its non-pivot rows, invert,
/// and keep the rows beyond dim W.
pub fn quotient_map(ambient: usize, w: &Subspace) -> Result<Mat> {
    if w.ambient != ambient {
        return Err(Error::NotSubspace(format!(
            "subspace of dimension-{} space used in dimension {}",
            w.ambient, ambient
        )));
    }
    let f = w.field();
    let d = w.dim();
    // Pivot rows of the canonical column-echelon basis.
    let (_, pivots) = w.basis.transpose().rref();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free_rows: Vec<usize> = (0..ambient).filter(|r| !pivot_set.contains(r)).collect();
    let mut ext = Mat::zero(ambient, ambient - d, f);
    for (jj, &r) in free_rows.iter().enumerate() {
        ext.set(r, jj, 1);
    }
    let b = w.basis.hstack(&ext);
    let binv = b.inverse().expect("completed basis must be invertible");
    let rows: Vec<usize> = (d..ambient).collect();
    let mut q = Mat::zero(ambient - d, ambient, f);
    for (ii, &r) in rows.iter().enumerate() {
        for j in 0..ambient {
            q.set(ii, j, binv.get(r, j));
        }
    }
    Ok(q)
}

/// The colimit of a finite diagram of vector spaces: `(⊕_i V_i) / ⟨x − A(x)⟩`
/// over the given edges `(src, dst, A : V_src -> V_dst)`.
#[derive(Debug, Clone)]
pub struct Colimit {
    pub dim: usize,
    /// Canonical map from each node's space into the colimit.
    pub maps: Vec<Mat>,
}

pub fn colimit(field: PrimeField, dims: &[usize], edges: &[(usize, usize, Mat)]) -> Colimit {
    let total: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut rel_cols = Mat::zero(total, 0, field);
    for (src, dst, a) in edges {
        assert_eq!(a.rows(), dims[*dst], "edge map row mismatch");
        assert_eq!(a.cols(), dims[*src], "edge map column mismatch");
        let mut block = Mat::zero(total, dims[*src], field);
        for k in 0..dims[*src] {
            block.set(offsets[*src] + k, k, 1);
            for i in 0..dims[*dst] {
                block.set(offsets[*dst] + i, k, field.neg(a.get(i, k)));
            }
        }
        rel_cols = rel_cols.hstack(&block);
    }
    let rel_space = image_basis(&rel_cols);
    let q = quotient_map(total, &rel_space).expect("relations live in the sum");
    let maps = (0..dims.len())
        .map(|i| q.select_columns(&(offsets[i]..offsets[i] + dims[i]).collect::<Vec<_>>()))
        .collect();
    Colimit {
        dim: total - rel_space.dim(),
        maps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn primality_gate() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(matches!(PrimeField::new(6).unwrap_err(), crate::error::Error::NotPrime(6)));
    }

    #[test]
    fn field_inverses() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    fn drop_last() -> Mat {
        // k^4 -> k^3, delete the final coordinate.
        Mat::from_fn(3, 4, f2(), |i, j| u64::from(i == j))
    }

    fn first_coord_of_three() -> Mat {
        Mat::from_fn(1, 3, f2(), |_, j| u64::from(j == 0))
    }

    #[test]
    fn ranks() {
        assert_eq!(Mat::identity(3, f2()).rank(), 3);
        assert_eq!(drop_last().rank(), 3);
        let theta_pi = first_coord_of_three().mul(&drop_last());
        assert_eq!(theta_pi.rank(), 1);
        assert_eq!(Mat::zero(0, 3, f2()).rank(), 0);
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_basis(&Mat::identity(3, f2())).dim(), 0);
        assert_eq!(kernel_basis(&drop_last()).dim(), 1);
        assert_eq!(kernel_basis(&Mat::zero(0, 3, f2())).dim(), 3);
    }

    #[test]
    fn rank_nullity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = *[2u64, 3, 5].iter().nth(rng.gen_range(0..3)).unwrap();
            let f = PrimeField::new(p).unwrap();
            let rows = rng.gen_range(0..5);
            let cols = rng.gen_range(0..5);
            let a = Mat::from_fn(rows, cols, f, |_, _| rng.gen_range(0..p));
            assert_eq!(a.rank() + kernel_basis(&a).dim(), cols);
        }
    }

    #[test]
    fn intersection_examples() {
        let f = f5();
        let u = Subspace::from_columns(&Mat::from_entries(3, 2, f, &[1, 0, 0, 1, 0, 0]).unwrap());
        let v = Subspace::from_columns(&Mat::from_entries(3, 2, f, &[0, 0, 1, 0, 0, 1]).unwrap());
        let w = intersect(&u, &v).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.contains_vec(&[0, 1, 0]));
        assert_eq!(intersect(&u, &u).unwrap(), u);
        let z = Subspace::zero(3, f);
        assert_eq!(intersect(&u, &z).unwrap(), z);
    }

    #[test]
    fn intersection_dimension_formula_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let f = f5();
            let n = rng.gen_range(1..5);
            let a = Mat::from_fn(n, rng.gen_range(0..4), f, |_, _| rng.gen_range(0..5));
            let b = Mat::from_fn(n, rng.gen_range(0..4), f, |_, _| rng.gen_range(0..5));
            let u = Subspace::from_columns(&a);
            let v = Subspace::from_columns(&b);
            let meet = intersect(&u, &v).unwrap();
            let join = u.sum(&v).unwrap();
            assert_eq!(meet.dim() + join.dim(), u.dim() + v.dim());
            assert!(u.contains(&meet) && v.contains(&meet));
        }
    }

    #[test]
    fn canonical_basis_is_span_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let f = f5();
            let n = rng.gen_range(1..5);
            let k = rng.gen_range(1..4);
            let a = Mat::from_fn(n, k, f, |_, _| rng.gen_range(0..5));
            let u = Subspace::from_columns(&a);
            // Respan by an invertible coefficient matrix.
            let c = loop {
                let c = Mat::from_fn(u.dim(), u.dim(), f, |_, _| rng.gen_range(0..5));
                if c.inverse().is_some() {
                    break c;
                }
            };
            let v = Subspace::from_columns(&u.basis().mul(&c));
            assert_eq!(u, v);
        }
    }

    #[test]
    fn quotients() {
        let f = f2();
        assert_eq!(quotient_map(3, &Subspace::zero(3, f)).unwrap().rank(), 3);
        let to_zero = quotient_map(3, &Subspace::full(3, f)).unwrap();
        assert_eq!(to_zero.rows(), 0);
        let e5 = Subspace::from_columns(&Mat::from_entries(5, 1, f, &[0, 0, 0, 0, 1]).unwrap());
        let q = quotient_map(5, &e5).unwrap();
        assert_eq!((q.rows(), q.cols()), (4, 5));
        assert!(q.is_surjective());
        assert_eq!(kernel_basis(&q), e5);
        assert!(quotient_map(4, &e5).is_err());
    }

    #[test]
    fn quotient_kernel_is_exact_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let f = f5();
            let n = rng.gen_range(1..6);
            let a = Mat::from_fn(n, rng.gen_range(0..=n), f, |_, _| rng.gen_range(0..5));
            let w = Subspace::from_columns(&a);
            let q = quotient_map(n, &w).unwrap();
            assert!(q.is_surjective());
            assert_eq!(kernel_basis(&q), w);
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = f5();
        let a = Mat::from_entries(2, 2, f, &[1, 2, 3, 4]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2, f));
        let b = Mat::from_entries(2, 1, f, &[1, 0]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        // Inconsistent system: 0x = 1.
        let z = Mat::zero(1, 1, f);
        let one = Mat::from_entries(1, 1, f, &[1]).unwrap();
        assert!(z.solve(&one).is_none());
    }

    #[test]
    fn colimit_singleton_and_cospan() {
        let f = f2();
        let c = colimit(f, &[3], &[]);
        assert_eq!(c.dim, 3);
        assert!(c.maps[0].inverse().is_some());
        // a -> b, a -> c with identity maps on k: pushout of isomorphisms.
        let id1 = Mat::identity(1, f);
        let c = colimit(f, &[1, 1, 1], &[(0, 1, id1.clone()), (0, 2, id1)]);
        assert_eq!(c.dim, 1);
        for m in &c.maps {
            assert_eq!(m.rank(), 1);
        }
    }

    #[test]
    fn colimit_coequalizes() {
        // Two parallel arrows k^2 -> k^2: identity and a swap; the colimit
        // glues the two coordinates of the target.
        let f = f5();
        let id = Mat::identity(2, f);
        let swap = Mat::from_entries(2, 2, f, &[0, 1, 1, 0]).unwrap();
        let c = colimit(f, &[2, 2], &[(0, 1, id), (0, 1, swap)]);
        assert_eq!(c.dim, 1);
        let x = c.maps[1].apply(&[1, 0]);
        let y = c.maps[1].apply(&[0, 1]);
        assert_eq!(x, y);
    }

    #[test]
    fn zero_dimensional_edges() {
        let f = f2();
        let a = Mat::zero(0, 2, f);
        let c = colimit(f, &[2, 0], &[(0, 1, a)]);
        assert_eq!(c.dim, 0);
        assert_eq!(c.maps[0].rows(), 0);
    }
}
