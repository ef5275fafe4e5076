//! Involutions, the algebra `B_2 = F[i_1]/(i_1^2 + 1)` and the doubling
//! `ψ` that lets `B_2` act centrally on a transpose-closed matrix algebra.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraParts, Element};
use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{UltraMatrix, UltraVector};

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    pub verdict: Verdict,
    /// First basis pair `(i, j)` with `(e_i e_j)* != e_j* e_i*`.
    pub anti_multiplicative: Option<(usize, usize)>,
    /// First basis vector with `e_i** != e_i`.
    pub involutive: Option<usize>,
    /// Adjointness for the coordinate pairing: `R(a*) = R(a)^t` on the
    /// realization. Not applicable without an explicit realization.
    pub adjoint: Verdict,
}

/// Checks `inv` (columns are the images of basis vectors) as an involution.
pub fn check_involution(a: &Algebra, inv: &UltraMatrix) -> InvolutionReport {
    let n = a.dim();
    let star = |x: &Element| Element(inv.mul_vec(&x.0));
    let mut anti = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis_element(i), a.basis_element(j));
            if star(&a.mul(&ei, &ej)) != a.mul(&star(&ej), &star(&ei)) {
                anti = Some((i, j));
                break 'outer;
            }
        }
    }
    let involutive = (0..n).find(|&i| {
        let e = a.basis_element(i);
        star(&star(&e)) != e
    });
    let adjoint = if a.has_realization() {
        let ok = (0..n).all(|i| {
            let e = a.basis_element(i);
            a.realize(&star(&e)) == a.realize(&e).transpose()
        });
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else {
        Verdict::NotApplicable
    };
    let core = if anti.is_none() && involutive.is_none() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    InvolutionReport {
        verdict: core.and(adjoint),
        anti_multiplicative: anti,
        involutive,
        adjoint,
    }
}

/// `s + t i_1` with `i_1^2 = -1` and `i_1* = -i_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct B2Element {
    pub s: Scalar,
    pub t: Scalar,
}

impl B2Element {
    pub fn new(s: Scalar, t: Scalar) -> B2Element {
        B2Element { s, t }
    }

    pub fn i1(field: &Field) -> B2Element {
        B2Element::new(field.zero(), field.one())
    }

    pub fn mul(&self, o: &B2Element) -> B2Element {
        B2Element::new(
            &(&self.s * &o.s) - &(&self.t * &o.t),
            &(&self.s * &o.t) + &(&self.t * &o.s),
        )
    }

    pub fn conj(&self) -> B2Element {
        B2Element::new(self.s.clone(), -&self.t)
    }
}

/// `K = ψ(A) + ψ(A i_1)` on the basis `ψ(e_1), ..., ψ(e_n), ψ(e_1 i_1),
/// ..., ψ(e_n i_1)`, realised by `2m x 2m` block matrices.
#[derive(Clone, Debug)]
pub struct PsiAlgebra {
    pub algebra: Algebra,
    /// Dimension of the (unital) algebra that was doubled.
    pub half: usize,
}

impl PsiAlgebra {
    /// `ψ(a)` for `a` given in the coordinates of the doubled algebra.
    pub fn embed(&self, a: &Element) -> Element {
        let mut v = a.0.clone();
        v.extend((0..self.half).map(|_| a.field().zero()));
        Element(v)
    }

    /// `ψ(a i_1)`.
    pub fn embed_i1(&self, a: &Element) -> Element {
        let mut v: UltraVector = (0..self.half).map(|_| a.field().zero()).collect();
        v.extend(a.0.iter().cloned());
        Element(v)
    }

    pub fn i1(&self) -> Element {
        let unit = self.algebra.unit().expect("doubled algebra is unital");
        let half: UltraVector = unit.0[..self.half].to_vec();
        self.embed_i1(&Element(half))
    }

    /// Multiplication by `ψ(i_1)`: `(a, b) -> (-b, a)`.
    pub fn times_i1(&self, x: &Element) -> Element {
        let h = self.half;
        let mut v: UltraVector = x.0[h..].iter().map(|c| -c).collect();
        v.extend(x.0[..h].iter().cloned());
        Element(v)
    }
}

fn block(
    field: &Field,
    a: &UltraMatrix,
    b: &UltraMatrix,
    c: &UltraMatrix,
    d: &UltraMatrix,
) -> UltraMatrix {
    let m = a.rows();
    UltraMatrix::from_fn(field, 2 * m, 2 * m, |i, j| {
        let src = match (i < m, j < m) {
            (true, true) => a,
            (true, false) => b,
            (false, true) => c,
            (false, false) => d,
        };
        src.get(i % m, j % m).clone()
    })
}

/// The doubling of a transpose-closed realization (of the unital hull when
/// `A` has no unit), with the blockwise transpose as involution.
pub fn psi_embedding(a: &Algebra) -> Result<PsiAlgebra> {
    let field = a.field().clone();
    let base = if a.unit().is_some() {
        a.clone()
    } else {
        let m = a.realization_dim();
        let mut r = a.realization_matrices();
        r.push(UltraMatrix::identity(&field, m));
        a.unital_hull().with_realization(Some(r))
    };
    let n = base.dim();
    let r = base.realization_matrices();
    let m = r[0].rows();
    // coordinates of the transpose of each basis matrix
    let flat = UltraMatrix::from_fn(&field, m * m, n, |k, i| r[i].get(k / m, k % m).clone());
    let mut transpose_cols = Vec::with_capacity(n);
    for ri in &r {
        let t = ri.transpose();
        let v: UltraVector = (0..m * m).map(|k| t.get(k / m, k % m).clone()).collect();
        let c = flat.solve(&v)?.ok_or(Error::NotTransposeClosed)?;
        transpose_cols.push(c);
    }
    let mut parts = AlgebraParts::new(format!("psi({})", a.name()), 2 * n);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in base.product_terms(i, j) {
                parts.products.push((i, j, *k, c.clone()));
                parts.products.push((i, n + j, n + k, c.clone()));
                parts.products.push((n + i, j, n + k, c.clone()));
                parts.products.push((n + i, n + j, *k, -c));
            }
        }
    }
    let unit = base.unit().expect("unital").clone();
    let mut u = unit.0.clone();
    u.extend((0..n).map(|_| field.zero()));
    parts.unit = Some(u);
    // ψ(a)* = ψ(a^t), ψ(a i_1)* = -ψ(a^t i_1)
    let inv = UltraMatrix::from_fn(&field, 2 * n, 2 * n, |row, col| {
        let (src, neg) = if col < n {
            (col, false)
        } else {
            (col - n, true)
        };
        let same_half = (row < n) == (col < n);
        if !same_half {
            return field.zero();
        }
        let v = transpose_cols[src][row % n].clone();
        if neg {
            -&v
        } else {
            v
        }
    });
    parts.involution = Some(inv);
    let zero = UltraMatrix::zeros(&field, m, m);
    let mut real = Vec::with_capacity(2 * n);
    for ri in &r {
        real.push(block(&field, ri, &zero, &zero, ri));
    }
    for ri in &r {
        real.push(block(
            &field,
            &zero,
            ri,
            &ri.scale(&field.from_i64(-1)),
            &zero,
        ));
    }
    parts.realization = Some(real);
    let k = Algebra::build(&field, parts)?;
    let psi = PsiAlgebra {
        algebra: k,
        half: n,
    };
    let i1 = psi.i1();
    let minus_one = -psi.algebra.unit().expect("unital");
    if psi.algebra.mul(&i1, &i1) != minus_one {
        return Err(Error::Validation("psi(i1)^2 != -1".into()));
    }
    for i in 0..2 * n {
        let e = psi.algebra.basis_element(i);
        if psi.algebra.mul(&i1, &e) != psi.algebra.mul(&e, &i1) {
            return Err(Error::Validation("psi(i1) is not central".into()));
        }
    }
    Ok(psi)
}

/// `a = a0 + a1 i_1` with `a0 = (a + a*)/2` and `a1 = (a i_1* + i_1 a*)/2`,
/// both self-adjoint.
pub fn selfadjoint_decompose(k: &PsiAlgebra, a: &Element) -> Result<(Element, Element)> {
    let alg = &k.algebra;
    let half = alg.field().from_i64(2).inv()?;
    let astar = alg.star(a)?;
    let a0 = (a + &astar).scale(&half);
    // a i_1* = -a i_1 and i_1 is central
    let a1 = (&k.times_i1(&astar) - &k.times_i1(a)).scale(&half);
    Ok((a0, a1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q7() -> Field {
        Field::qp(7).unwrap()
    }

    #[test]
    fn involution_examples() {
        let m2 = fixtures::matrix_algebra(&q7(), 2).unwrap();
        let t = m2.involution().unwrap().clone();
        let r = check_involution(&m2, &t);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.adjoint, Verdict::Pass);
        let id = UltraMatrix::identity(&q7(), 4);
        let r = check_involution(&m2, &id);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.anti_multiplicative.is_some());
        let d = fixtures::dual_numbers(&q7()).unwrap();
        let r = check_involution(&d, &UltraMatrix::identity(&q7(), 2));
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.adjoint, Verdict::NotApplicable);
    }

    #[test]
    fn b2_arithmetic() {
        let f = q7();
        let i = B2Element::i1(&f);
        assert_eq!(i.mul(&i), B2Element::new(f.from_i64(-1), f.zero()));
        assert_eq!(i.conj(), B2Element::new(f.zero(), f.from_i64(-1)));
    }

    #[test]
    fn psi_of_m2() {
        let f = q7();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let k = psi_embedding(&m2).unwrap();
        assert_eq!(k.algebra.dim(), 8);
        let one = k.algebra.unit().unwrap();
        assert_eq!(k.algebra.realize(one), UltraMatrix::identity(&f, 4));
        assert_eq!(
            check_involution(&k.algebra, k.algebra.involution().unwrap()).verdict,
            Verdict::Pass
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let (x, y) = (m2.random_integral(&mut rng), m2.random_integral(&mut rng));
            assert_eq!(
                k.embed(&m2.mul(&x, &y)),
                k.algebra.mul(&k.embed(&x), &k.embed(&y))
            );
        }
    }

    #[test]
    fn decomposition_examples() {
        let f = q7();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let k = psi_embedding(&m2).unwrap();
        let alg = &k.algebra;
        let i1 = k.i1();
        let (a0, a1) = selfadjoint_decompose(&k, &i1).unwrap();
        assert!(a0.is_zero());
        assert_eq!(&a1, alg.unit().unwrap());
        let s = k.embed(&m2.from_i64(&[1, 2, 2, 5]));
        let (a0, a1) = selfadjoint_decompose(&k, &s).unwrap();
        assert_eq!(a0, s);
        assert!(a1.is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = alg.random_integral(&mut rng);
            let (a0, a1) = selfadjoint_decompose(&k, &a).unwrap();
            assert_eq!(alg.star(&a0).unwrap(), a0);
            assert_eq!(alg.star(&a1).unwrap(), a1);
            assert_eq!(&a0 + &alg.mul(&a1, &i1), a);
            assert_eq!(alg.mul(&a1, &i1), alg.mul(&i1, &a1));
        }
    }

    #[test]
    fn non_closed_realization_is_rejected() {
        let f = q7();
        let t2 = fixtures::upper_triangular(&f, 2).unwrap();
        assert_eq!(psi_embedding(&t2).unwrap_err(), Error::NotTransposeClosed);
    }
}
