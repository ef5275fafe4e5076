//! Annihilators, generated ideals and the annihilator, dual and finely
//! regular predicates.
//!
//! Every subspace of a finite-dimensional normed space is closed, so the
//! closed ideals quantified over below are just ideals.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::linalg::{Subspace, UltraMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
    Subspace,
}

impl Side {
    fn left_closed(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    fn right_closed(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            s => s,
        }
    }
}

/// An ideal in echelon form; equal ideals have equal bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    pub side: Side,
    pub space: Subspace,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        self.space
            .basis()
            .iter()
            .map(|b| Element(b.clone()))
            .collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(&x.0)
    }
}

/// Whether `space` absorbs products with basis vectors on the given side(s).
pub fn is_closed(a: &Algebra, space: &Subspace, side: Side) -> bool {
    space.basis().iter().all(|v| {
        let v = Element(v.clone());
        (0..a.dim()).all(|i| {
            let e = a.basis_element(i);
            (!side.left_closed() || space.contains(&a.mul(&e, &v).0))
                && (!side.right_closed() || space.contains(&a.mul(&v, &e).0))
        })
    })
}

/// `{x : xs = 0}` (left) or `{x : sx = 0}` (right) for all `s` in `set`.
pub fn annihilator(a: &Algebra, set: &[Element], side: Side) -> Result<Ideal> {
    let n = a.dim();
    let mut stacked = UltraMatrix::zeros(a.field(), 0, n);
    for s in set {
        let m = match side {
            Side::Left => a.right_regular(s),
            Side::Right => a.left_regular(s),
            _ => a.right_regular(s).vstack(&a.left_regular(s)),
        };
        stacked = stacked.vstack(&m);
    }
    let space = if stacked.rows() == 0 {
        Subspace::full(a.field(), n)
    } else {
        stacked.kernel_space()?
    };
    debug_assert!(is_closed(a, &space, side));
    Ok(Ideal { side, space })
}

/// `A_l(J)` or `A_r(J)` of an ideal, through its basis.
pub fn annihilator_of(a: &Algebra, j: &Ideal, side: Side) -> Result<Ideal> {
    if j.is_zero() {
        return Ok(Ideal {
            side,
            space: Subspace::full(a.field(), a.dim()),
        });
    }
    annihilator(a, &j.basis_elements(), side)
}

/// Smallest subspace containing `gens` and closed on the given side(s).
pub fn ideal_generated(a: &Algebra, gens: &[Element], side: Side) -> Result<Ideal> {
    let mut space = Subspace::zero(a.field(), a.dim());
    let mut queue: Vec<Element> = Vec::new();
    for g in gens {
        if space.insert(&g.0)? {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..a.dim() {
            let e = a.basis_element(i);
            let mut new = Vec::new();
            if side.left_closed() {
                new.push(a.mul(&e, &v));
            }
            if side.right_closed() {
                new.push(a.mul(&v, &e));
            }
            for w in new {
                if space.insert(&w.0)? {
                    queue.push(w);
                }
            }
            if space.is_full() {
                return Ok(Ideal { side, space });
            }
        }
    }
    Ok(Ideal { side, space })
}

/// Basis-generated one-sided ideals, their pairwise sums and `budget`
/// ideals generated by random integral multiples of basis vectors,
/// deduplicated in order of discovery.
pub fn sample_ideals<R: Rng + ?Sized>(
    a: &Algebra,
    side: Side,
    budget: usize,
    rng: &mut R,
) -> Result<Vec<Ideal>> {
    let n = a.dim();
    let mut out: Vec<Ideal> = Vec::new();
    let push = |j: Ideal, out: &mut Vec<Ideal>| {
        if !out.contains(&j) {
            out.push(j);
        }
    };
    let singles: Vec<Ideal> = (0..n)
        .map(|i| ideal_generated(a, &[a.basis_element(i)], side))
        .collect::<Result<_>>()?;
    for j in &singles {
        push(j.clone(), &mut out);
    }
    for i in 0..n {
        for k in i + 1..n {
            let space = singles[i].space.sum(&singles[k].space)?;
            push(Ideal { side, space }, &mut out);
        }
    }
    for _ in 0..budget {
        let r = a.random_integral(rng);
        let e = a.basis_element(rng.gen_range(0..n));
        let g = match side {
            Side::Right => a.mul(&e, &r),
            _ => a.mul(&r, &e),
        };
        push(ideal_generated(a, &[g], side)?, &mut out);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealFailure {
    pub side: Side,
    /// Echelon basis of the offending ideal, as strings.
    pub ideal: Vec<Vec<String>>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub verdict: Verdict,
    pub left_annihilator_dim: usize,
    pub right_annihilator_dim: usize,
    pub ideals_checked: usize,
    pub failures: Vec<IdealFailure>,
}

fn describe(space: &Subspace) -> Vec<Vec<String>> {
    space
        .basis()
        .iter()
        .map(|v| v.iter().map(|c| c.to_string()).collect())
        .collect()
}

/// Conditions (1)-(3): trivial full annihilators, and a nonzero opposite
/// annihilator for every sampled proper one-sided ideal.
pub fn is_annihilator_algebra<R: Rng + ?Sized>(
    a: &Algebra,
    budget: usize,
    rng: &mut R,
) -> Result<IdealReport> {
    let basis: Vec<Element> = (0..a.dim()).map(|i| a.basis_element(i)).collect();
    let al = annihilator(a, &basis, Side::Left)?;
    let ar = annihilator(a, &basis, Side::Right)?;
    let mut failures = Vec::new();
    if !al.is_zero() {
        failures.push(IdealFailure {
            side: Side::Left,
            ideal: describe(&al.space),
            reason: "left annihilator of the algebra is nonzero".into(),
        });
    }
    if !ar.is_zero() {
        failures.push(IdealFailure {
            side: Side::Right,
            ideal: describe(&ar.space),
            reason: "right annihilator of the algebra is nonzero".into(),
        });
    }
    let mut checked = 0;
    for side in [Side::Right, Side::Left] {
        for j in sample_ideals(a, side, budget, rng)? {
            if j.space.is_full() {
                continue;
            }
            checked += 1;
            // A_l(J_r) and A_r(J_l)
            let ann = annihilator_of(a, &j, side.opposite())?;
            if ann.is_zero() {
                failures.push(IdealFailure {
                    side,
                    ideal: describe(&j.space),
                    reason: "proper ideal with zero opposite annihilator".into(),
                });
            }
        }
    }
    Ok(IdealReport {
        verdict: if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        left_annihilator_dim: al.dim(),
        right_annihilator_dim: ar.dim(),
        ideals_checked: checked,
        failures,
    })
}

/// Outcome of double annihilation on one ideal.
#[derive(Clone, Debug)]
pub struct DualityWitness {
    pub ideal: Ideal,
    pub opposite: Ideal,
    pub double: Ideal,
}

/// `A_l(A_r(J))` for a left ideal, `A_r(A_l(J))` for a right one.
pub fn double_annihilator(a: &Algebra, j: &Ideal) -> Result<DualityWitness> {
    let opposite = annihilator_of(a, j, j.side.opposite())?;
    let double = annihilator_of(a, &opposite, j.side)?;
    Ok(DualityWitness {
        ideal: j.clone(),
        opposite,
        double,
    })
}

/// Conditions (4)-(5) on the sampled ideal family.
pub fn is_dual<R: Rng + ?Sized>(a: &Algebra, budget: usize, rng: &mut R) -> Result<IdealReport> {
    let basis: Vec<Element> = (0..a.dim()).map(|i| a.basis_element(i)).collect();
    let al = annihilator(a, &basis, Side::Left)?;
    let ar = annihilator(a, &basis, Side::Right)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for side in [Side::Left, Side::Right] {
        let mut family = sample_ideals(a, side, budget, rng)?;
        family.push(Ideal {
            side,
            space: Subspace::full(a.field(), a.dim()),
        });
        for j in family {
            checked += 1;
            let w = double_annihilator(a, &j)?;
            if w.double.space != j.space {
                failures.push(IdealFailure {
                    side,
                    ideal: describe(&j.space),
                    reason: format!(
                        "double annihilator has dimension {} instead of {}",
                        w.double.dim(),
                        j.dim()
                    ),
                });
            }
        }
    }
    Ok(IdealReport {
        verdict: if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        left_annihilator_dim: al.dim(),
        right_annihilator_dim: ar.dim(),
        ideals_checked: checked,
        failures,
    })
}

/// Searches for `a, a1` with `|a x x* a1*| = |x|^2` and `|a| |a1*| <= 1`
/// among basis vectors, the unit and random integral elements, trying at
/// most `budget` pairs.
pub fn finely_regular_witness<R: Rng + ?Sized>(
    a: &Algebra,
    x: &Element,
    budget: usize,
    rng: &mut R,
) -> Result<Option<(Element, Element)>> {
    let xs = a.star(x)?;
    let mut cands: Vec<Element> = (0..a.dim()).map(|i| a.basis_element(i)).collect();
    if let Some(u) = a.unit() {
        cands.insert(0, u.clone());
    }
    if x.is_zero() {
        return Ok(Some((cands[0].clone(), cands[0].clone())));
    }
    let target = x.norm().pow(2);
    let xxs = a.mul(x, &xs);
    let side = (budget as f64).sqrt().ceil() as usize;
    while cands.len() < side {
        cands.push(a.random_integral(rng));
    }
    let stars: Vec<Element> = cands.iter().map(|c| a.star(c)).collect::<Result<_>>()?;
    let mut tried = 0;
    for ai in &cands {
        let left = a.mul(ai, &xxs);
        for (j, a1s) in stars.iter().enumerate() {
            if tried == budget {
                return Ok(None);
            }
            tried += 1;
            if ai.norm().mul(a1s.norm()) > crate::field::Norm::one() {
                continue;
            }
            if a.mul(&left, a1s).norm() == target {
                return Ok(Some((ai.clone(), cands[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Finely regular on every basis vector within the budget.
pub fn finely_regular_on_basis<R: Rng + ?Sized>(
    a: &Algebra,
    budget: usize,
    rng: &mut R,
) -> Result<Verdict> {
    if a.involution().is_none() {
        return Err(Error::NoInvolution);
    }
    for i in 0..a.dim() {
        if finely_regular_witness(a, &a.basis_element(i), budget, rng)?.is_none() {
            return Ok(Verdict::Inconclusive);
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn span(a: &Algebra, idx: &[usize]) -> Subspace {
        a.span(&idx.iter().map(|&i| a.basis_element(i)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn annihilator_examples() {
        let f = Field::qp(7).unwrap();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let e11 = m2.basis_element(0);
        let l = annihilator(&m2, &[e11], Side::Left).unwrap();
        assert_eq!(l.space, span(&m2, &[1, 3]));
        assert!(annihilator(&m2, &[m2.zero()], Side::Left)
            .unwrap()
            .space
            .is_full());
        let basis: Vec<Element> = (0..4).map(|i| m2.basis_element(i)).collect();
        assert!(annihilator(&m2, &basis, Side::Left).unwrap().is_zero());
    }

    #[test]
    fn generated_examples() {
        let f = Field::qp(7).unwrap();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let r = ideal_generated(&m2, &[m2.basis_element(0)], Side::Right).unwrap();
        assert_eq!(r.space, span(&m2, &[0, 1]));
        let u = m2.unit().unwrap().clone();
        assert!(ideal_generated(&m2, &[u], Side::Left)
            .unwrap()
            .space
            .is_full());
        let t2 = fixtures::upper_triangular(&f, 2).unwrap();
        let j = ideal_generated(&t2, &[t2.basis_element(1)], Side::TwoSided).unwrap();
        assert_eq!(j.space, span(&t2, &[1]));
    }

    #[test]
    fn annihilator_algebra_examples() {
        let f = Field::qp(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        assert_eq!(
            is_annihilator_algebra(&m2, 10, &mut rng).unwrap().verdict,
            Verdict::Pass
        );
        let z = fixtures::zero_algebra(&f, 1).unwrap();
        let r = is_annihilator_algebra(&z, 2, &mut rng).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.left_annihilator_dim, 1);
    }

    #[test]
    fn triangular_is_not_dual() {
        let f = Field::qp(5).unwrap();
        let t2 = fixtures::upper_triangular(&f, 2).unwrap();
        // basis E11, E12, E22
        let j = Ideal {
            side: Side::Left,
            space: span(&t2, &[1]),
        };
        assert!(is_closed(&t2, &j.space, Side::Left));
        let w = double_annihilator(&t2, &j).unwrap();
        assert_eq!(w.opposite.space, span(&t2, &[0, 1]));
        assert_eq!(w.double.space, span(&t2, &[1, 2]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(is_dual(&t2, 5, &mut rng).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn matrix_algebra_is_dual() {
        let f = Field::qp(7).unwrap();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = is_dual(&m2, 20, &mut rng).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);
    }

    #[test]
    fn fine_regularity_witnesses() {
        let f = Field::qp(7).unwrap();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in [0, 1] {
            let x = m2.basis_element(i);
            let (a, a1) = finely_regular_witness(&m2, &x, 500, &mut rng)
                .unwrap()
                .unwrap();
            let prod = m2.mul_all(&[&a, &x, &m2.star(&x).unwrap(), &m2.star(&a1).unwrap()]);
            assert_eq!(prod.norm(), x.norm().pow(2));
        }
        assert!(finely_regular_witness(&m2, &m2.zero(), 1, &mut rng)
            .unwrap()
            .is_some());
        assert_eq!(
            finely_regular_on_basis(&m2, 500, &mut rng).unwrap(),
            Verdict::Pass
        );
    }
}
