//! Quasi-inverses, the Jacobson radical and the core radical.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraParts, Element};
use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::field::{sample_extensions, Field, Norm};
use crate::ideal::{is_closed, Ideal, Side};
use crate::linalg::{vec_scale, Subspace, UltraMatrix, UltraVector};

/// `y` with `x + y + yx = 0`.
///
/// Small elements go through the Neumann series, everything else through
/// the linear system `y (1 + x) = -x`.
pub fn quasi_inverse(a: &Algebra, x: &Element) -> Result<Element> {
    if x.norm() < Norm::one() {
        quasi_inverse_neumann(a, x)
    } else {
        quasi_inverse_solve(a, x)
    }
}

/// `y = -x + x^2 - x^3 + ...` for `|x| < 1`, stopped once a term has norm
/// at most `p^-N`.
pub fn quasi_inverse_neumann(a: &Algebra, x: &Element) -> Result<Element> {
    if x.norm() >= Norm::one() {
        return Err(Error::NoConvergence);
    }
    let field = a.field();
    let tiny = Norm::p_pow_neg(field.precision() as i64);
    let neg = -x;
    let mut term = neg.clone();
    let mut y = a.zero();
    // |x| <= p^(-1/e), so e*N + 1 terms always suffice
    let limit = field.degree() * field.precision() as usize + 2;
    for _ in 0..limit {
        if term.is_zero() || term.norm() <= tiny {
            return Ok(y.truncate_abs(field.precision() as i64));
        }
        y = &y + &term;
        term = a.mul(&term, &neg);
    }
    Err(Error::NoConvergence)
}

/// Solves `(I + R_x) y = -x` and checks the other side `x + y + xy = 0`.
/// When `1 + x` is singular the error carries `z != 0` with `z + zx = 0`.
pub fn quasi_inverse_solve(a: &Algebra, x: &Element) -> Result<Element> {
    let m = UltraMatrix::identity(a.field(), a.dim()).add(&a.right_regular(x));
    let rhs: UltraVector = (-x).0;
    match m.solve(&rhs)? {
        Some(y) => {
            let y = Element(y);
            let other = &(x + &y) + &a.mul(x, &y);
            if !other.is_zero() && other.norm() > residual_bound(a.field()) {
                return Err(Error::NotQuasiInvertible {
                    witness: y.0.iter().map(|c| c.to_string()).collect(),
                });
            }
            Ok(y)
        }
        None => {
            let z = m.kernel()?.into_iter().next().unwrap_or_default();
            Err(Error::NotQuasiInvertible {
                witness: z.iter().map(|c| c.to_string()).collect(),
            })
        }
    }
}

/// `|x + y + yx|`.
pub fn quasi_residual(a: &Algebra, x: &Element, y: &Element) -> Norm {
    (&(x + y) + &a.mul(y, x)).norm()
}

/// Tolerance `p^(guard - N)` for identities computed at working precision.
pub fn residual_bound(field: &Field) -> Norm {
    Norm::p_pow_neg(field.precision() as i64 - field.guard() as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalMethod {
    TraceForm,
    CoreIntersection,
}

/// Radical computed over one field.
#[derive(Clone, Debug, Serialize)]
pub struct FieldRadical {
    pub field: String,
    /// Dimension of `R(A ⊗ G)` over `G`.
    pub dim: usize,
    /// Dimension of its intersection with `A`.
    pub rational_dim: usize,
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub ideal: Ideal,
    pub method: RadicalMethod,
    pub quotient_dim: usize,
    /// Per-field radicals, base field first (core radical only).
    pub per_field: Vec<FieldRadical>,
    /// Whether every field gave the same rational radical.
    pub agree: bool,
}

impl RadicalReport {
    pub fn dim(&self) -> usize {
        self.ideal.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.ideal.is_zero()
    }
}

/// `{x : Tr(L_x L_y) = 0 for all y}` in the unital hull, which lies inside
/// `A` and is its radical in characteristic zero.
fn trace_radical_space(a: &Algebra) -> Result<Subspace> {
    let n = a.dim();
    let hull = a.unital_hull();
    let kernel = hull.trace_gram().kernel()?;
    let vectors = kernel
        .into_iter()
        .map(|mut v| {
            if hull.dim() > n {
                let last = v.pop().expect("hull coordinate");
                if !last.is_zero() {
                    return Err(Error::PrecisionExhausted(
                        "radical vector with a unit component".into(),
                    ));
                }
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(a.field(), n, vectors)
}

/// The Jacobson radical via the trace form, checked to be a two-sided ideal.
pub fn radical(a: &Algebra) -> Result<RadicalReport> {
    let space = trace_radical_space(a)?;
    if !is_closed(a, &space, Side::TwoSided) {
        return Err(Error::PrecisionExhausted(
            "trace-form radical is not an ideal at this precision".into(),
        ));
    }
    let field = a.field().label();
    let dim = space.dim();
    Ok(RadicalReport {
        quotient_dim: a.dim() - dim,
        ideal: Ideal {
            side: Side::TwoSided,
            space,
        },
        method: RadicalMethod::TraceForm,
        per_field: vec![FieldRadical {
            field,
            dim,
            rational_dim: dim,
        }],
        agree: true,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Member,
    /// `1 + yx` is singular for this `y`.
    NonMember(Element),
    Inconclusive,
}

fn hull_embed(a: &Algebra, hull: &Algebra, x: &Element) -> Element {
    if hull.dim() == a.dim() {
        return x.clone();
    }
    let mut v = x.0.clone();
    v.push(a.field().zero());
    Element(v)
}

/// Invertibility of `1 + yx` in the unital hull for `y = ±e_i` and
/// `samples` random integral `y`.
pub fn verify_radical_membership<R: Rng + ?Sized>(
    a: &Algebra,
    x: &Element,
    samples: usize,
    rng: &mut R,
) -> Membership {
    if x.is_zero() {
        return Membership::Member;
    }
    let hull = a.unital_hull();
    let one = hull.unit().expect("hull is unital").clone();
    let hx = hull_embed(a, &hull, x);
    let mut ys: Vec<Element> = Vec::new();
    for i in 0..a.dim() {
        let e = a.basis_element(i);
        ys.push(-&e);
        ys.push(e);
    }
    ys.extend((0..samples).map(|_| a.random_integral(rng)));
    let mut unsure = false;
    for y in ys {
        let hy = hull_embed(a, &hull, &y);
        let t = &one + &hull.mul(&hy, &hx);
        match hull.left_regular(&t).det() {
            Ok(d) if d.is_zero() => return Membership::NonMember(y),
            Ok(_) => {}
            Err(_) => unsure = true,
        }
    }
    if unsure {
        Membership::Inconclusive
    } else {
        Membership::Member
    }
}

/// Runs the membership test on every basis vector of a radical.
pub fn verify_radical<R: Rng + ?Sized>(
    a: &Algebra,
    report: &RadicalReport,
    samples: usize,
    rng: &mut R,
) -> Verdict {
    let mut v = Verdict::Pass;
    for b in report.ideal.basis_elements() {
        match verify_radical_membership(a, &b, samples, rng) {
            Membership::Member => {}
            Membership::NonMember(_) => return Verdict::Fail,
            Membership::Inconclusive => v = Verdict::Inconclusive,
        }
    }
    v
}

/// `A/J` on the images of the non-pivot basis vectors of `J`.
pub fn quotient(a: &Algebra, j: &Ideal) -> Result<Algebra> {
    let n = a.dim();
    let keep: Vec<usize> = (0..n).filter(|i| !j.space.pivots().contains(i)).collect();
    if keep.is_empty() {
        return Err(Error::BadDimension("quotient by the whole algebra".into()));
    }
    let project = |v: &[crate::field::Scalar]| -> UltraVector {
        let r = j.space.reduce(v);
        keep.iter().map(|&i| r[i].clone()).collect()
    };
    let mut parts = AlgebraParts::new(format!("{}/J", a.name()), keep.len());
    for (x, &i) in keep.iter().enumerate() {
        for (y, &k) in keep.iter().enumerate() {
            let prod = a.mul(&a.basis_element(i), &a.basis_element(k));
            for (z, c) in project(&prod.0).into_iter().enumerate() {
                if !c.is_zero() {
                    parts.products.push((x, y, z, c));
                }
            }
        }
    }
    parts.unit = a.unit().map(|u| project(&u.0));
    Algebra::build(a.field(), parts)
}

/// `{v in F^n : v in S}` for a subspace `S` of `G^n`: each equation of `S`
/// splits into one equation per power-basis component.
pub fn rational_part(space: &Subspace, base: &Field) -> Result<Subspace> {
    let n = space.ambient();
    if space.field().is_base() {
        return Ok(space.clone());
    }
    let d = space.field().degree();
    let mut rows: Vec<UltraVector> = Vec::new();
    for eq in space.equations()? {
        for k in 0..d {
            rows.push(
                eq.iter()
                    .map(|c| base.from_padic(c.components()[k].clone()))
                    .collect(),
            );
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(base, n));
    }
    UltraMatrix::from_rows(base, rows)?.kernel_space()
}

/// `R(A ⊗ G) ∩ A` over the base field and the sampled extensions, together
/// with the intersection of all of them.
pub fn core_radical(a: &Algebra) -> Result<RadicalReport> {
    let base = a.field().clone();
    if !base.is_base() {
        return Err(Error::NotBaseRational);
    }
    let mut fields = vec![base.clone()];
    for ext in sample_extensions(base.prime()) {
        fields.push(base.extend(&ext)?);
    }
    let mut per_field = Vec::new();
    let mut spaces: Vec<Subspace> = Vec::new();
    for g in &fields {
        let ag = a.base_change(g)?;
        let r = trace_radical_space(&ag)?;
        let rat = rational_part(&r, &base)?;
        per_field.push(FieldRadical {
            field: g.label(),
            dim: r.dim(),
            rational_dim: rat.dim(),
        });
        spaces.push(rat);
    }
    let agree = spaces.iter().all(|s| s == &spaces[0]);
    let mut core = spaces[0].clone();
    for s in &spaces[1..] {
        core = core.intersect(s)?;
    }
    if !is_closed(a, &core, Side::TwoSided) {
        return Err(Error::PrecisionExhausted(
            "core radical is not an ideal at this precision".into(),
        ));
    }
    Ok(RadicalReport {
        quotient_dim: a.dim() - core.dim(),
        ideal: Ideal {
            side: Side::TwoSided,
            space: core,
        },
        method: RadicalMethod::CoreIntersection,
        per_field,
        agree,
    })
}

/// Nonzero `x` with `ex = x`, when `-e` is not quasi-invertible.
pub fn fixed_vector(a: &Algebra, e: &Element) -> Result<Option<Element>> {
    let m = a
        .left_regular(e)
        .sub(&UltraMatrix::identity(a.field(), a.dim()));
    Ok(m.kernel()?.into_iter().next().map(Element))
}

/// `x` scaled so its coordinates are integral with one of them a unit.
pub fn normalize(x: &Element) -> Element {
    match x.norm().valuation() {
        None => x.clone(),
        Some(v) => {
            let k = v.floor().to_integer();
            Element(vec_scale(&x.0, &x.field().p_pow(-k)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spec::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(p: u32) -> Field {
        Field::qp(p).unwrap()
    }

    #[test]
    fn quasi_inverse_examples() {
        let f = q(5);
        let one_dim = fixtures::truncated_poly_spec(5, &[Rat::int(-1)], "Q_5")
            .build_in(&f)
            .unwrap();
        let x = one_dim.from_i64(&[5]);
        let y = quasi_inverse(&one_dim, &x).unwrap();
        let expected = f.from_rational(&num_rational::BigRational::new((-5).into(), 6.into()));
        assert_eq!(y.0[0], expected);
        assert_eq!(
            quasi_inverse(&one_dim, &one_dim.zero()).unwrap(),
            one_dim.zero()
        );
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let e12 = m2.basis_element(1);
        assert_eq!(quasi_inverse(&m2, &e12).unwrap(), -&e12);
        let y = quasi_inverse_solve(&one_dim, &x).unwrap();
        assert_eq!(y.0[0], expected);
    }

    #[test]
    fn singular_one_plus_x_gives_witness() {
        let f = q(7);
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let x = m2.from_i64(&[-1, 0, 0, 0]);
        match quasi_inverse(&m2, &x) {
            Err(Error::NotQuasiInvertible { witness }) => assert_eq!(witness.len(), 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn radical_examples() {
        let m2 = fixtures::matrix_algebra(&q(5), 2).unwrap();
        assert!(radical(&m2).unwrap().is_zero());
        let t2 = fixtures::upper_triangular(&q(5), 2).unwrap();
        let r = radical(&t2).unwrap();
        assert_eq!(r.ideal.space, t2.span(&[t2.basis_element(1)]).unwrap());
        let d = fixtures::dual_numbers(&q(7)).unwrap();
        let r = radical(&d).unwrap();
        assert_eq!(r.ideal.space, d.span(&[d.basis_element(1)]).unwrap());
        let z = fixtures::zero_algebra(&q(7), 2).unwrap();
        assert_eq!(radical(&z).unwrap().dim(), 2);
    }

    #[test]
    fn membership_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t2 = fixtures::upper_triangular(&q(5), 2).unwrap();
        let e12 = t2.basis_element(1);
        assert_eq!(
            verify_radical_membership(&t2, &e12, 10, &mut rng),
            Membership::Member
        );
        let m2 = fixtures::matrix_algebra(&q(7), 2).unwrap();
        let e11 = m2.basis_element(0);
        assert_eq!(
            verify_radical_membership(&m2, &e11, 10, &mut rng),
            Membership::NonMember(-&e11)
        );
        assert_eq!(
            verify_radical_membership(&m2, &m2.zero(), 0, &mut rng),
            Membership::Member
        );
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let t2 = fixtures::upper_triangular(&q(5), 2).unwrap();
        let r = radical(&t2).unwrap();
        let qa = quotient(&t2, &r.ideal).unwrap();
        assert_eq!(qa.dim(), 2);
        assert!(radical(&qa).unwrap().is_zero());
    }

    #[test]
    fn core_radical_examples() {
        let m2 = fixtures::matrix_algebra(&q(5), 2).unwrap();
        let c = core_radical(&m2).unwrap();
        assert!(c.is_zero() && c.agree && c.per_field.len() == 4);
        let t2 = fixtures::upper_triangular(&q(5), 2).unwrap();
        let c = core_radical(&t2).unwrap();
        assert!(c.agree);
        assert_eq!(c.ideal.space, t2.span(&[t2.basis_element(1)]).unwrap());
        let f = q(7);
        let field =
            fixtures::truncated_poly_spec(7, &[Rat::int(-3), Rat::int(0)], "Q_7[x]/(x^2-3)")
                .build_in(&f)
                .unwrap();
        let c = core_radical(&field).unwrap();
        assert!(c.is_zero() && c.agree);
    }

    #[test]
    fn fixed_vector_when_minus_e_is_singular() {
        let m2 = fixtures::matrix_algebra(&q(7), 2).unwrap();
        let e = m2.basis_element(0);
        assert!(quasi_inverse(&m2, &-&e).is_err());
        let x = fixed_vector(&m2, &e).unwrap().unwrap();
        assert_eq!(m2.mul(&e, &x), x);
    }
}
