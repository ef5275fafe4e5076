//! Finite-dimensional associative algebras given by structure constants.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Norm, Scalar};
use crate::linalg::{
    is_zero_vector, sup_norm, unit_vector, vec_add, vec_scale, vec_sub, zero_vector, Subspace,
    UltraMatrix, UltraVector,
};

/// Coordinates of an algebra element on the basis `e_0, ..., e_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element(pub UltraVector);

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn field(&self) -> &Field {
        self.0[0].field()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.0)
    }

    /// Sup norm of the coordinates.
    pub fn norm(&self) -> Norm {
        sup_norm(&self.0)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element(vec_scale(&self.0, s))
    }

    pub fn truncate_abs(&self, k: i64) -> Element {
        Element(self.0.iter().map(|x| x.truncate_abs(k)).collect())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element(vec_add(&self.0, &rhs.0))
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element(vec_sub(&self.0, &rhs.0))
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Raw description of an algebra before validation.
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub name: String,
    pub dim: usize,
    /// `(i, j, k, c)`: `e_i e_j` has `c` on `e_k`. Repeated keys add up.
    pub products: Vec<(usize, usize, usize, Scalar)>,
    pub unit: Option<UltraVector>,
    /// Column `i` holds the coordinates of `e_i*`.
    pub involution: Option<UltraMatrix>,
    /// Generator `S` of the trace form `(x, y) = Tr(x* S y)`.
    pub form: Option<UltraMatrix>,
    /// Matrices representing the basis; defaults to the left regular
    /// representation.
    pub realization: Option<Vec<UltraMatrix>>,
}

impl AlgebraParts {
    pub fn new(name: impl Into<String>, dim: usize) -> AlgebraParts {
        AlgebraParts {
            name: name.into(),
            dim,
            products: vec![],
            unit: None,
            involution: None,
            form: None,
            realization: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Option<Element>,
    involution: Option<UltraMatrix>,
    form: Option<UltraMatrix>,
    realization: Option<Vec<UltraMatrix>>,
    rescale: i64,
}

impl Algebra {
    /// Validates and normalises a description.
    ///
    /// If some structure constant has norm above 1 the basis is replaced by
    /// `p^s e_i` for the least `s` making every constant integral; the shift
    /// is available from [`Algebra::rescale`]. Unit coordinates and the
    /// realization are transported to the new basis.
    pub fn build(field: &Field, parts: AlgebraParts) -> Result<Algebra> {
        let n = parts.dim;
        if n == 0 {
            return Err(Error::BadDimension("dimension must be positive".into()));
        }
        let mut dense: Vec<Vec<Scalar>> = vec![zero_vector(field, n); n * n];
        for (i, j, k, c) in parts.products {
            if i >= n || j >= n || k >= n {
                return Err(Error::BadDimension(format!(
                    "product index ({}, {}, {}) out of range for dimension {n}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            dense[i * n + j][k] = &dense[i * n + j][k] + &c;
        }
        let min_val = dense
            .iter()
            .flatten()
            .filter_map(Scalar::valuation)
            .min()
            .unwrap_or_else(num_rational::Ratio::zero);
        let s = if min_val < num_rational::Ratio::zero() {
            (-min_val).ceil().to_integer()
        } else {
            0
        };
        let ps = field.p_pow(s);
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, if s == 0 { c } else { &c * &ps }))
                    .collect()
            })
            .collect();
        let mut alg = Algebra {
            name: parts.name,
            field: field.clone(),
            dim: n,
            table,
            unit: None,
            involution: None,
            form: None,
            realization: None,
            rescale: s,
        };
        alg.check_associative()?;
        let pinv = field.p_pow(-s);
        match parts.unit {
            Some(u) => {
                if u.len() != n {
                    return Err(Error::BadDimension("unit coordinates".into()));
                }
                let u = Element(vec_scale(&u, &pinv));
                if !alg.is_unit(&u) {
                    return Err(Error::Validation(
                        "declared unit is not a two-sided unit".into(),
                    ));
                }
                alg.unit = Some(u);
            }
            None => alg.unit = alg.find_unit()?,
        }
        if let Some(inv) = parts.involution {
            if inv.rows() != n || inv.cols() != n {
                return Err(Error::BadDimension("involution matrix".into()));
            }
            alg.involution = Some(inv);
        }
        if let Some(r) = parts.realization {
            if r.len() != n {
                return Err(Error::BadDimension(
                    "one realization matrix per basis vector".into(),
                ));
            }
            let m = r[0].rows();
            if r.iter().any(|x| x.rows() != m || x.cols() != m) {
                return Err(Error::BadDimension(
                    "realization matrices must share a square shape".into(),
                ));
            }
            let r: Vec<UltraMatrix> = r.into_iter().map(|x| x.scale(&ps)).collect();
            alg.realization = Some(r);
            alg.check_realization()?;
        }
        if let Some(sm) = parts.form {
            let m = alg.realization_dim();
            if sm.rows() != m || sm.cols() != m {
                return Err(Error::BadDimension(format!(
                    "form generator must be {m}x{m}"
                )));
            }
            alg.form = Some(sm);
        }
        Ok(alg)
    }

    /// Trusted constructor for tables that are already integral and
    /// associative (derived algebras).
    pub(crate) fn from_table(
        name: String,
        field: &Field,
        dim: usize,
        table: Vec<Vec<(usize, Scalar)>>,
    ) -> Algebra {
        Algebra {
            name,
            field: field.clone(),
            dim,
            table,
            unit: None,
            involution: None,
            form: None,
            realization: None,
            rescale: 0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The exponent `s` of the basis rescaling `e_i -> p^s e_i` applied at
    /// build time.
    pub fn rescale(&self) -> i64 {
        self.rescale
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn involution(&self) -> Option<&UltraMatrix> {
        self.involution.as_ref()
    }

    pub fn form_generator(&self) -> Option<&UltraMatrix> {
        self.form.as_ref()
    }

    pub fn has_realization(&self) -> bool {
        self.realization.is_some()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = name.into();
        self
    }

    pub fn with_involution(mut self, inv: Option<UltraMatrix>) -> Algebra {
        self.involution = inv;
        self
    }

    pub fn with_form(mut self, s: Option<UltraMatrix>) -> Algebra {
        self.form = s;
        self
    }

    pub fn with_realization(mut self, r: Option<Vec<UltraMatrix>>) -> Algebra {
        self.realization = r;
        self
    }

    pub(crate) fn with_unit(mut self, u: Option<Element>) -> Algebra {
        self.unit = u;
        self
    }

    /// Nonzero structure constants `(k, c)` of `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn zero(&self) -> Element {
        Element(zero_vector(&self.field, self.dim))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element(unit_vector(&self.field, self.dim, i))
    }

    pub fn element(&self, coords: UltraVector) -> Element {
        assert_eq!(coords.len(), self.dim, "coordinate count");
        Element(coords)
    }

    pub fn from_i64(&self, coords: &[i64]) -> Element {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn scalar(&self, s: &Scalar) -> Option<Element> {
        self.unit.as_ref().map(|u| u.scale(s))
    }

    pub fn random_integral<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        Element(
            (0..self.dim)
                .map(|_| self.field.random_integral(rng))
                .collect(),
        )
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.dim;
        let mut out = zero_vector(&self.field, n);
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let terms = &self.table[i * n + j];
                if terms.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in terms {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        Element(out)
    }

    /// Left-to-right product of a nonempty list.
    pub fn mul_all(&self, xs: &[&Element]) -> Element {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn pow(&self, a: &Element, k: u32) -> Option<Element> {
        if k == 0 {
            return self.unit.clone();
        }
        let mut acc = a.clone();
        for _ in 1..k {
            acc = self.mul(&acc, a);
        }
        Some(acc)
    }

    fn is_unit(&self, u: &Element) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_element(i);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }

    fn find_unit(&self) -> Result<Option<Element>> {
        let n = self.dim;
        // rows indexed by (side, i, m): Σ_k u_k c_{k i}^m = δ_{im} and Σ_k u_k c_{i k}^m = δ_{im}
        let mut m = UltraMatrix::zeros(&self.field, 2 * n * n, n);
        let mut rhs = zero_vector(&self.field, 2 * n * n);
        for i in 0..n {
            for k in 0..n {
                for (mm, c) in self.product_terms(k, i) {
                    let row = i * n + mm;
                    m.set(row, k, m.get(row, k) + c);
                }
                for (mm, c) in self.product_terms(i, k) {
                    let row = n * n + i * n + mm;
                    m.set(row, k, m.get(row, k) + c);
                }
            }
            rhs[i * n + i] = self.field.one();
            rhs[n * n + i * n + i] = self.field.one();
        }
        Ok(m.solve(&rhs)?.map(Element))
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let eij = Element(self.row_vector(i, j));
                for k in 0..n {
                    let left = self.mul(&eij, &self.basis_element(k));
                    let ejk = Element(self.row_vector(j, k));
                    let right = self.mul(&self.basis_element(i), &ejk);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn row_vector(&self, i: usize, j: usize) -> UltraVector {
        let mut v = zero_vector(&self.field, self.dim);
        for (k, c) in self.product_terms(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Matrix of `y -> a y`.
    pub fn left_regular(&self, a: &Element) -> UltraMatrix {
        let n = self.dim;
        let mut m = UltraMatrix::zeros(&self.field, n, n);
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.product_terms(i, j) {
                    m.set(*k, j, m.get(*k, j) + &(x * c));
                }
            }
        }
        m
    }

    /// Matrix of `y -> y a`.
    pub fn right_regular(&self, a: &Element) -> UltraMatrix {
        let n = self.dim;
        let mut m = UltraMatrix::zeros(&self.field, n, n);
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.product_terms(j, i) {
                    m.set(*k, j, m.get(*k, j) + &(x * c));
                }
            }
        }
        m
    }

    /// `Tr(L_{e_k})` for every basis vector.
    pub fn regular_traces(&self) -> UltraVector {
        (0..self.dim)
            .map(|k| {
                let mut t = self.field.zero();
                for m in 0..self.dim {
                    for (kk, c) in self.product_terms(k, m) {
                        if *kk == m {
                            t = &t + c;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Gram matrix `Tr(L_{e_i} L_{e_j}) = Tr(L_{e_i e_j})`.
    pub fn trace_gram(&self) -> UltraMatrix {
        let tr = self.regular_traces();
        UltraMatrix::from_fn(&self.field, self.dim, self.dim, |i, j| {
            let mut t = self.field.zero();
            for (k, c) in self.product_terms(i, j) {
                t = &t + &(c * &tr[*k]);
            }
            t
        })
    }

    /// Size of the realization matrices.
    pub fn realization_dim(&self) -> usize {
        match &self.realization {
            Some(r) => r[0].rows(),
            None => self.dim,
        }
    }

    /// Matrix of `a` in the realization (left regular if none was given).
    pub fn realize(&self, a: &Element) -> UltraMatrix {
        match &self.realization {
            None => self.left_regular(a),
            Some(r) => {
                let m = r[0].rows();
                let mut out = UltraMatrix::zeros(&self.field, m, m);
                for (x, ri) in a.0.iter().zip(r) {
                    if !x.is_zero() {
                        out = out.add(&ri.scale(x));
                    }
                }
                out
            }
        }
    }

    pub fn realization_matrices(&self) -> Vec<UltraMatrix> {
        (0..self.dim)
            .map(|i| self.realize(&self.basis_element(i)))
            .collect()
    }

    fn check_realization(&self) -> Result<()> {
        let r = self.realization_matrices();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = r[i].mul(&r[j]);
                let rhs = self.realize(&Element(self.row_vector(i, j)));
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "realization is not multiplicative on (e{}, e{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let all = UltraMatrix::from_fn(&self.field, self.dim, r[0].rows() * r[0].cols(), |i, k| {
            let c = r[0].cols();
            r[i].get(k / c, k % c).clone()
        });
        if all.rank()? < self.dim {
            return Err(Error::Validation("realization is not injective".into()));
        }
        Ok(())
    }

    /// `a*`, when an involution is present.
    pub fn star(&self, a: &Element) -> Result<Element> {
        let inv = self.involution.as_ref().ok_or(Error::NoInvolution)?;
        Ok(Element(inv.mul_vec(&a.0)))
    }

    /// `A ⊕ F·1` with the adjoined unit as the last basis vector, or `A`
    /// itself if it is already unital.
    pub fn unital_hull(&self) -> Algebra {
        if self.unit.is_some() {
            return self.clone();
        }
        let n = self.dim;
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![vec![]; (n + 1) * (n + 1)];
        for i in 0..n {
            for j in 0..n {
                table[i * (n + 1) + j] = self.product_terms(i, j).to_vec();
            }
        }
        let one = self.field.one();
        for j in 0..=n {
            table[n * (n + 1) + j] = vec![(j, one.clone())];
            table[j * (n + 1) + n] = vec![(j, one.clone())];
        }
        let unit = Element(unit_vector(&self.field, n + 1, n));
        let involution = self.involution.as_ref().map(|inv| {
            UltraMatrix::from_fn(&self.field, n + 1, n + 1, |i, j| {
                if i < n && j < n {
                    inv.get(i, j).clone()
                } else if i == j {
                    one.clone()
                } else {
                    self.field.zero()
                }
            })
        });
        Algebra::from_table(format!("{} + F1", self.name), &self.field, n + 1, table)
            .with_unit(Some(unit))
            .with_involution(involution)
    }

    /// The same structure constants over an extension of the base field.
    pub fn base_change(&self, target: &Field) -> Result<Algebra> {
        if !self.field.is_base() || target.prime() != self.field.prime() {
            return Err(Error::NotBaseRational);
        }
        if target.is_base() {
            return Ok(self.clone());
        }
        let lift = |s: &Scalar| target.from_padic(s.components()[0].clone());
        let lift_m = |m: &UltraMatrix| {
            UltraMatrix::from_fn(target, m.rows(), m.cols(), |i, j| lift(m.get(i, j)))
        };
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|(k, c)| (*k, lift(c))).collect())
            .collect();
        Ok(Algebra {
            name: format!("{} over {}", self.name, target.label()),
            field: target.clone(),
            dim: self.dim,
            table,
            unit: self
                .unit
                .as_ref()
                .map(|u| Element(u.0.iter().map(lift).collect())),
            involution: self.involution.as_ref().map(lift_m),
            form: self.form.as_ref().map(lift_m),
            realization: self
                .realization
                .as_ref()
                .map(|r| r.iter().map(lift_m).collect()),
            rescale: self.rescale,
        })
    }

    /// `{z : z e_i = e_i z for all i}`.
    pub fn center(&self) -> Result<Subspace> {
        let mut stacked: Option<UltraMatrix> = None;
        for i in 0..self.dim {
            let e = self.basis_element(i);
            let d = self.right_regular(&e).sub(&self.left_regular(&e));
            stacked = Some(match stacked {
                None => d,
                Some(m) => m.vstack(&d),
            });
        }
        stacked.expect("positive dimension").kernel_space()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim)
            .all(|i| (i + 1..self.dim).all(|j| self.row_vector(i, j) == self.row_vector(j, i)))
    }

    pub fn span(&self, xs: &[Element]) -> Result<Subspace> {
        Subspace::span(
            &self.field,
            self.dim,
            xs.iter().map(|x| x.0.clone()).collect(),
        )
    }

    /// Spanning set of `x A y` (`None` stands for the unit, so `x A` or
    /// `A y` when the algebra is not unital).
    pub fn sandwich(&self, x: Option<&Element>, y: Option<&Element>) -> Result<Subspace> {
        let mut s = Subspace::zero(&self.field, self.dim);
        for i in 0..self.dim {
            let mut v = self.basis_element(i);
            if let Some(x) = x {
                v = self.mul(x, &v);
            }
            if let Some(y) = y {
                v = self.mul(&v, y);
            }
            s.insert(&v.0)?;
        }
        Ok(s)
    }
}

/// A subalgebra presented by the echelon basis of a multiplicatively closed
/// subspace, as an algebra in its own right.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: Algebra,
    pub space: Subspace,
    scale: Scalar,
}

impl Subalgebra {
    /// `unit` is an element of the parent acting as the subalgebra's unit
    /// (for example a corner idempotent); it is detected otherwise.
    pub fn new(
        parent: &Algebra,
        space: Subspace,
        unit: Option<&Element>,
        name: impl Into<String>,
    ) -> Result<Subalgebra> {
        let field = parent.field();
        let d = space.dim();
        if d == 0 {
            return Err(Error::BadDimension("empty subalgebra".into()));
        }
        let basis: Vec<Element> = space.basis().iter().map(|b| Element(b.clone())).collect();
        let mut parts = AlgebraParts::new(name, d);
        for i in 0..d {
            for j in 0..d {
                let prod = parent.mul(&basis[i], &basis[j]);
                let c = space.coordinates(&prod.0).ok_or_else(|| {
                    Error::Validation("subspace is not closed under multiplication".into())
                })?;
                for (k, ck) in c.into_iter().enumerate() {
                    if !ck.is_zero() {
                        parts.products.push((i, j, k, ck));
                    }
                }
            }
        }
        if let Some(u) = unit {
            parts.unit = Some(
                space
                    .coordinates(&u.0)
                    .ok_or_else(|| Error::Validation("unit lies outside the subspace".into()))?,
            );
        }
        if let Some(inv) = parent.involution() {
            let star_coords: Option<Vec<UltraVector>> = basis
                .iter()
                .map(|b| space.coordinates(&inv.mul_vec(&b.0)))
                .collect();
            if let Some(cols) = star_coords {
                parts.involution = Some(UltraMatrix::from_columns(field, d, &cols));
            }
        }
        if parent.has_realization() {
            parts.realization = Some(basis.iter().map(|b| parent.realize(b)).collect());
            parts.form = parent.form_generator().cloned();
        }
        let algebra = Algebra::build(field, parts)?;
        let scale = field.p_pow(algebra.rescale());
        Ok(Subalgebra {
            algebra,
            space,
            scale,
        })
    }

    /// The parent element with the given subalgebra coordinates.
    pub fn lift(&self, x: &Element) -> Element {
        Element(self.space.combine(&vec_scale(&x.0, &self.scale)))
    }

    /// Subalgebra coordinates of a parent element, if it lies inside.
    pub fn restrict(&self, x: &Element) -> Option<Element> {
        let inv = self.scale.inv().ok()?;
        self.space
            .coordinates(&x.0)
            .map(|c| Element(vec_scale(&c, &inv)))
    }
}
