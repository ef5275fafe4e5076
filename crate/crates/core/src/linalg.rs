//! Dense matrices and subspaces over a [`Field`] with sup ultranorms.
//!
//! Elimination picks, in each column, the row whose entry has the largest
//! norm (lowest valuation), first index on ties. Subspaces are kept in
//! reduced row echelon form with unit pivots, which is unique, so two
//! subspaces are equal exactly when their bases agree entry by entry.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Norm, Scalar};

pub type UltraVector = Vec<Scalar>;

pub fn zero_vector(field: &Field, n: usize) -> UltraVector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: &Field, n: usize, i: usize) -> UltraVector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn sup_norm(v: &[Scalar]) -> Norm {
    v.iter().map(Scalar::norm).max().unwrap_or(Norm::ZERO)
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> UltraVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> UltraVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> UltraVector {
    a.iter().map(|x| x * s).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

fn check_pivot(s: &Scalar) -> Result<()> {
    s.check_guard()
}

#[derive(Clone, Debug)]
pub struct UltraMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: UltraMatrix,
    pub pivots: Vec<usize>,
    /// Row permutation parity, for determinants.
    swaps: usize,
    /// Product of the pivots before normalisation.
    pivot_product: Scalar,
}

impl UltraMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> UltraMatrix {
        UltraMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> UltraMatrix {
        let mut m = UltraMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> UltraMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        UltraMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, rows: Vec<UltraVector>) -> Result<UltraMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadDimension("ragged rows".into()));
        }
        Ok(UltraMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &Field, rows: usize, cols: &[UltraVector]) -> UltraMatrix {
        UltraMatrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> UltraMatrix {
        let r: Vec<UltraVector> = rows
            .iter()
            .map(|row| row.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        UltraMatrix::from_rows(field, r).expect("rectangular literal")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> UltraVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<UltraVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> UltraMatrix {
        UltraMatrix::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, other: &UltraMatrix) -> UltraMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = UltraMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> UltraVector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &UltraMatrix) -> UltraMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        UltraMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &UltraMatrix) -> UltraMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        UltraMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &other.data),
        }
    }

    pub fn scale(&self, s: &Scalar) -> UltraMatrix {
        UltraMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: vec_scale(&self.data, s),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &UltraMatrix) -> UltraMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        UltraMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Operator norm on sup-normed spaces: the largest entry norm.
    pub fn operator_norm(&self) -> Norm {
        sup_norm(&self.data)
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::BadDimension(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        Ok(t)
    }

    pub fn rref(&self) -> Result<Rref> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut pivot_product = self.field.one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // maximal norm in the column, first index on ties
            let mut best: Option<(usize, Norm)> = None;
            for i in r..m.rows {
                let n = m.get(i, c).norm();
                if !n.is_zero() && best.is_none_or(|(_, b)| n > b) {
                    best = Some((i, n));
                }
            }
            let Some((pr, _)) = best else { continue };
            if pr != r {
                m.swap_rows(pr, r);
                swaps += 1;
            }
            let piv = m.get(r, c).clone();
            check_pivot(&piv)?;
            pivot_product = &pivot_product * &piv;
            let inv = piv.inv()?;
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = m.get(r, j);
                    if !t.is_zero() {
                        let v = m.get(i, j) - &(&f * t);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Rref {
            matrix: m,
            pivots,
            swaps,
            pivot_product,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.pivots.len())
    }

    /// Basis of `{v : Av = 0}`, one vector per free column with a 1 there.
    pub fn kernel(&self) -> Result<Vec<UltraVector>> {
        let rr = self.rref()?;
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !rr.pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = zero_vector(&self.field, n);
                v[f] = self.field.one();
                for (i, &pc) in rr.pivots.iter().enumerate() {
                    v[pc] = -rr.matrix.get(i, f);
                }
                v
            })
            .collect())
    }

    /// The null space as a canonical subspace.
    pub fn kernel_space(&self) -> Result<Subspace> {
        Subspace::span(&self.field, self.cols, self.kernel()?)
    }

    /// Some solution of `Ax = b`, free variables set to zero; `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<UltraVector>> {
        if b.len() != self.rows {
            return Err(Error::BadDimension("right-hand side length".into()));
        }
        let aug = UltraMatrix::from_fn(&self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let rr = aug.rref()?;
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(&self.field, self.cols);
        for (i, &pc) in rr.pivots.iter().enumerate() {
            x[pc] = rr.matrix.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::BadDimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let rr = self.rref()?;
        if rr.pivots.len() < self.rows {
            return Ok(self.field.zero());
        }
        Ok(if rr.swaps % 2 == 0 {
            rr.pivot_product
        } else {
            -rr.pivot_product
        })
    }

    pub fn inverse(&self) -> Result<Option<UltraMatrix>> {
        if !self.is_square() {
            return Err(Error::BadDimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = UltraMatrix::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let rr = aug.rref()?;
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(UltraMatrix::from_fn(&self.field, n, n, |i, j| {
            rr.matrix.get(i, n + j).clone()
        })))
    }
}

impl PartialEq for UltraMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl fmt::Display for UltraMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `F^n` in canonical reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<UltraVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: vec![],
            pivots: vec![],
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient)
                .map(|i| unit_vector(field, ambient, i))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &Field, ambient: usize, vectors: Vec<UltraVector>) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::BadDimension(
                "vector length differs from ambient".into(),
            ));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient));
        }
        let m = UltraMatrix::from_rows(field, vectors)?;
        let rr = m.rref()?;
        let basis = (0..rr.pivots.len())
            .map(|i| rr.matrix.row(i).to_vec())
            .collect();
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots: rr.pivots,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[UltraVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// `v` minus its component along the pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> UltraVector {
        let mut r = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, read off the pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<UltraVector> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Scalar]) -> UltraVector {
        let mut v = zero_vector(&self.field, self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = vec_add(&v, &vec_scale(b, c));
            }
        }
        v
    }

    /// Adds `v` to the span, keeping the echelon form; returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        check_pivot(&r[lead])?;
        let inv = r[lead].inv()?;
        r = vec_scale(&r, &inv);
        r[lead] = self.field.one();
        for b in self.basis.iter_mut() {
            let c = b[lead].clone();
            if !c.is_zero() {
                *b = vec_sub(b, &vec_scale(&r, &c));
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.basis.insert(at, r);
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Vectors `k` with `b·k = 0` for every basis vector `b`; the subspace is
    /// exactly the common zero set of these functionals.
    pub fn equations(&self) -> Result<Vec<UltraVector>> {
        if self.basis.is_empty() {
            return Ok((0..self.ambient)
                .map(|i| unit_vector(&self.field, self.ambient, i))
                .collect());
        }
        UltraMatrix::from_rows(&self.field, self.basis.clone())?.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        let eqs = other.equations()?;
        if eqs.is_empty() {
            return Ok(self.clone());
        }
        if self.basis.is_empty() {
            return Ok(self.clone());
        }
        // x = Σ c_i b_i with eq·x = 0 for every equation of `other`
        let m = UltraMatrix::from_fn(&self.field, eqs.len(), self.dim(), |i, j| {
            dot(&eqs[i], &self.basis[j])
        });
        let coeffs = m.kernel()?;
        Subspace::span(
            &self.field,
            self.ambient,
            coeffs.iter().map(|c| self.combine(c)).collect(),
        )
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.basis == other.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q7() -> Field {
        Field::qp(7).unwrap()
    }

    fn random(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> UltraMatrix {
        UltraMatrix::from_fn(f, r, c, |_, _| f.random_integral(rng))
    }

    #[test]
    fn operator_norm_examples() {
        let f = Field::qp(5).unwrap();
        assert!(UltraMatrix::identity(&f, 3).operator_norm().is_one());
        let m = UltraMatrix::from_i64(&f, &[&[5, 1], &[0, 5]]);
        assert!(m.operator_norm().is_one());
        assert_eq!(m.operator_norm(), m.transpose().operator_norm());
    }

    #[test]
    fn kernel_examples() {
        let f = q7();
        let z = UltraMatrix::zeros(&f, 2, 2);
        assert_eq!(z.kernel().unwrap().len(), 2);
        assert!(UltraMatrix::identity(&f, 2).kernel().unwrap().is_empty());
        let a = UltraMatrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        let k = a.kernel().unwrap();
        assert_eq!(k, vec![vec![f.from_i64(-2), f.one()]]);
        assert!(is_zero_vector(&a.mul_vec(&k[0])));
    }

    #[test]
    fn trace_examples() {
        let f = q7();
        assert_eq!(UltraMatrix::identity(&f, 4).trace().unwrap(), f.from_i64(4));
        let e12 = UltraMatrix::from_i64(&f, &[&[0, 1], &[0, 0]]);
        assert!(e12.trace().unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random(&f, 3, 3, &mut rng);
        let b = random(&f, 3, 3, &mut rng);
        assert_eq!(a.mul(&b).trace().unwrap(), b.mul(&a).trace().unwrap());
    }

    #[test]
    fn det_and_inverse() {
        let f = q7();
        let a = UltraMatrix::from_i64(&f, &[&[2, 1], &[7, 3]]);
        assert_eq!(a.det().unwrap(), f.from_i64(-1));
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv), UltraMatrix::identity(&f, 2));
        let s = UltraMatrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().unwrap().is_none());
        let p = UltraMatrix::from_i64(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(p.det().unwrap(), f.from_i64(-1));
    }

    #[test]
    fn solve_consistency() {
        let f = q7();
        let a = UltraMatrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        assert!(a.solve(&[f.one(), f.one()]).unwrap().is_none());
        let x = a.solve(&[f.one(), f.from_i64(2)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![f.one(), f.from_i64(2)]);
    }

    #[test]
    fn subspaces_are_canonical() {
        let f = q7();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let vs: Vec<UltraVector> = (0..3)
            .map(|_| (0..5).map(|_| f.random_integral(&mut rng)).collect())
            .collect();
        let s1 = Subspace::span(&f, 5, vs.clone()).unwrap();
        let mut s2 = Subspace::zero(&f, 5);
        for v in vs.iter().rev() {
            s2.insert(&vec_scale(v, &f.from_i64(49))).unwrap();
        }
        assert_eq!(s1, s2);
        let sum = vec_add(&vs[0], &vs[2]);
        assert!(s1.contains(&sum));
        let c = s1.coordinates(&sum).unwrap();
        assert_eq!(s1.combine(&c), sum);
    }

    #[test]
    fn intersection_of_planes() {
        let f = q7();
        let e = |i| unit_vector(&f, 3, i);
        let a = Subspace::span(&f, 3, vec![e(0), e(1)]).unwrap();
        let b = Subspace::span(&f, 3, vec![e(1), e(2)]).unwrap();
        assert_eq!(
            a.intersect(&b).unwrap(),
            Subspace::span(&f, 3, vec![e(1)]).unwrap()
        );
        assert!(a.sum(&b).unwrap().is_full());
    }
}
