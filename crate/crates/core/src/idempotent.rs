//! Idempotents: lifting, splitting, Peirce blocks, matrix units and the
//! decomposition of a semisimple algebra into simple blocks.
//!
//! Idempotents are found inside the commutative subalgebra `Q_p[z]` of a
//! corner `eAe` generated by a probe `z`. The Newton polygon of the minimal
//! polynomial of `z` gives a normalised power `w = z^b / p^a` whose
//! eigenvalues are integral with at least one unit among them; a coprime
//! factorisation of the reduction of its minimal polynomial yields an
//! idempotent modulo `p`, which the iteration `e <- 3e^2 - 2e^3` lifts.

use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Subalgebra};
use crate::error::{Error, Result};
use crate::field::{Norm, Scalar};
use crate::ideal::{ideal_generated, Side};
use crate::linalg::{Subspace, UltraMatrix};
use crate::radical::{radical, residual_bound};
use crate::residue;

/// Random probes tried per corner after the basis probes.
pub const RANDOM_PROBES: usize = 30;
const MAX_SHIFT_DEPTH: usize = 8;
const MAX_NEWTON_STEPS: usize = 200;

/// `e <- 3e^2 - 2e^3` from an element that is idempotent modulo `p`.
pub fn lift_idempotent(a: &Algebra, e0: &Element) -> Result<Element> {
    let d = &a.mul(e0, e0) - e0;
    if !d.is_zero() && d.norm() >= Norm::one() {
        return Err(Error::NotResidueIdempotent);
    }
    refine(a, e0)
}

fn refine(a: &Algebra, e0: &Element) -> Result<Element> {
    let n = a.field().precision() as i64;
    let bound = residual_bound(a.field());
    let mut e = e0.truncate_abs(n);
    let mut last: Option<Norm> = None;
    let three = a.field().from_i64(3);
    let two = a.field().from_i64(2);
    for _ in 0..MAX_NEWTON_STEPS {
        let e2 = a.mul(&e, &e);
        let d = &e2 - &e;
        if d.is_zero() {
            return Ok(e);
        }
        let dn = d.norm();
        if dn <= bound && last.as_ref().is_some_and(|l| dn >= *l) {
            return Ok(e);
        }
        last = Some(dn);
        let e3 = a.mul(&e2, &e);
        e = (&e2.scale(&three) - &e3.scale(&two)).truncate_abs(n);
    }
    Err(Error::NoConvergence)
}

/// Monic minimal polynomial of `z` in the corner with unit `e`, from the
/// constant term up.
pub fn min_poly(a: &Algebra, e: &Element, z: &Element) -> Result<Vec<Scalar>> {
    let field = a.field();
    let mut powers = vec![e.clone()];
    let mut space = a.span(std::slice::from_ref(e))?;
    loop {
        let next = a.mul(powers.last().expect("nonempty"), z);
        if space.contains(&next.0) {
            let cols: Vec<_> = powers.iter().map(|p| p.0.clone()).collect();
            let m = UltraMatrix::from_columns(field, a.dim(), &cols);
            let c = m.solve(&next.0)?.ok_or_else(|| {
                Error::PrecisionExhausted("power dependency is inconsistent".into())
            })?;
            let mut poly: Vec<Scalar> = c.iter().map(|x| -x).collect();
            poly.push(field.one());
            return Ok(poly);
        }
        space.insert(&next.0)?;
        powers.push(next);
    }
}

fn poly_eval(a: &Algebra, e: &Element, w: &Element, coeffs: &[Scalar]) -> Element {
    // Horner
    let mut acc = a.zero();
    for c in coeffs.iter().rev() {
        acc = &a.mul(&acc, w) + &e.scale(c);
    }
    acc
}

fn residues(poly: &[Scalar]) -> Option<Vec<u64>> {
    poly.iter()
        .map(|c| {
            if c.is_zero() {
                Some(0)
            } else if c.valuation()? < num_rational::Ratio::from_integer(0) {
                None
            } else {
                c.residue()
            }
        })
        .collect()
}

fn corner_pow(a: &Algebra, e: &Element, z: &Element, k: i64) -> Element {
    let mut acc = e.clone();
    for _ in 0..k {
        acc = a.mul(&acc, z);
    }
    acc
}

/// A nontrivial idempotent of `Q_p[z]` inside the corner with unit `e`.
fn probe_split(a: &Algebra, e: &Element, z: &Element, depth: usize) -> Result<Option<Element>> {
    if depth > MAX_SHIFT_DEPTH {
        return Ok(None);
    }
    let field = a.field();
    let p = field.prime() as u64;
    let mu = min_poly(a, e, z)?;
    let deg = mu.len() - 1;
    if deg <= 1 {
        return Ok(None);
    }
    // smallest root valuation, from the last segment of the Newton polygon
    let lambda = (0..deg)
        .filter_map(|i| mu[i].valuation().map(|v| v / (deg - i) as i64))
        .min();
    let Some(lambda) = lambda else {
        return Ok(None);
    };
    let (num, den) = (*lambda.numer(), *lambda.denom());
    let w = corner_pow(a, e, z, den).scale(&field.p_pow(-num));
    let mu_w = min_poly(a, e, &w)?;
    let Some(f) = residues(&mu_w) else {
        return Ok(None);
    };
    if let Some(ebar) = residue::split_idempotent(&f, p) {
        let coeffs: Vec<Scalar> = ebar.iter().map(|&c| field.from_i64(c as i64)).collect();
        let e0 = poly_eval(a, e, &w, &coeffs);
        let Ok(idem) = refine(a, &e0) else {
            return Ok(None);
        };
        if idem.is_zero() || &idem == e {
            return Ok(None);
        }
        return Ok(Some(idem));
    }
    // one distinct residue factor: a linear one allows a shift and retry
    let deg_w = mu_w.len() - 1;
    if den as usize == deg_w || p > 100_000 {
        return Ok(None);
    }
    let root = (0..p).find(|&c| {
        f.iter().rev().fold(0u64, |acc, &x| {
            ((acc as u128 * c as u128 + x as u128) % p as u128) as u64
        }) == 0
    });
    match root {
        Some(c) => {
            let shifted = &w - &e.scale(&field.from_i64(c as i64));
            probe_split(a, e, &shifted, depth + 1)
        }
        None => Ok(None),
    }
}

/// Exact analysis of a 2-dimensional commutative corner: a nontrivial
/// idempotent if one exists.
fn split_dim2(a: &Algebra, e: &Element, space: &Subspace) -> Result<Option<Element>> {
    let z = space
        .basis()
        .iter()
        .map(|b| Element(b.clone()))
        .find(|b| min_poly(a, e, b).map(|m| m.len() == 3).unwrap_or(false));
    let Some(z) = z else {
        return Ok(None);
    };
    let mu = min_poly(a, e, &z)?;
    let (c, b) = (&mu[0], &mu[1]);
    let disc = &(b * b) - &(&a.field().from_i64(4) * c);
    if disc.is_zero() {
        return Ok(None);
    }
    let Ok(s) = disc.sqrt() else {
        return Ok(None);
    };
    let half = a.field().from_i64(2).inv()?;
    let r1 = &(&(-b) + &s) * &half;
    let r2 = &(&(-b) - &s) * &half;
    // (z - r2) / (r1 - r2) is the idempotent at the root r1
    let num = &z - &e.scale(&r2);
    let idem = num.scale(&(&r1 - &r2).inv()?);
    Ok(Some(refine(a, &idem)?))
}

/// Probe vectors for a corner: its echelon basis, then random integral
/// combinations.
fn probes<R: Rng + ?Sized>(a: &Algebra, space: &Subspace, rng: &mut R) -> Vec<Element> {
    let mut out: Vec<Element> = space.basis().iter().map(|b| Element(b.clone())).collect();
    for _ in 0..RANDOM_PROBES {
        let c: Vec<Scalar> = (0..space.dim())
            .map(|_| a.field().random_integral(rng))
            .collect();
        out.push(Element(space.combine(&c)));
    }
    out
}

/// One splitting attempt of `e` with probes drawn from `space`.
fn split_once<R: Rng + ?Sized>(
    a: &Algebra,
    e: &Element,
    space: &Subspace,
    rng: &mut R,
) -> Result<Option<Element>> {
    if space.dim() <= 1 {
        return Ok(None);
    }
    if space.dim() == 2 {
        return split_dim2(a, e, space);
    }
    for z in probes(a, space, rng) {
        if let Some(f) = probe_split(a, e, &z, 0)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Which subalgebra of `eAe` the probes come from.
#[derive(Clone, Copy, PartialEq, Eq)]
enum ProbeSpace {
    Corner,
    Center,
}

fn probe_space(a: &Algebra, e: &Element, kind: ProbeSpace, center: &Subspace) -> Result<Subspace> {
    match kind {
        ProbeSpace::Corner => a.sandwich(Some(e), Some(e)),
        ProbeSpace::Center => {
            let v: Vec<Element> = center
                .basis()
                .iter()
                .map(|c| a.mul(e, &Element(c.clone())))
                .collect();
            a.span(&v)
        }
    }
}

/// Splits `e` recursively; leaves come with an exactness flag for their
/// indecomposability (probe space of dimension at most 2).
fn split_all<R: Rng + ?Sized>(
    a: &Algebra,
    e: &Element,
    kind: ProbeSpace,
    center: &Subspace,
    rng: &mut R,
    out: &mut Vec<(Element, bool)>,
) -> Result<()> {
    let space = probe_space(a, e, kind, center)?;
    match split_once(a, e, &space, rng)? {
        Some(f) => {
            let g = e - &f;
            split_all(a, &f, kind, center, rng, out)?;
            split_all(a, &g, kind, center, rng, out)
        }
        None => {
            out.push((e.clone(), space.dim() <= 2));
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Irreducibility {
    /// `certified` is set when the corner has dimension at most 2, where
    /// the test is exact.
    Irreducible { certified: bool },
    Reducible {
        #[serde(skip)]
        witness: Option<Element>,
    },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// Whether the corner `eAe` contains an idempotent other than `0` and `e`.
pub fn is_irreducible<R: Rng + ?Sized>(
    a: &Algebra,
    e: &Element,
    rng: &mut R,
) -> Result<Irreducibility> {
    if e.is_zero() {
        return Err(Error::ZeroIdempotent);
    }
    let space = a.sandwich(Some(e), Some(e))?;
    match split_once(a, e, &space, rng)? {
        Some(f) => Ok(Irreducibility::Reducible { witness: Some(f) }),
        None => Ok(Irreducibility::Irreducible {
            certified: space.dim() <= 2,
        }),
    }
}

#[derive(Clone, Debug)]
pub struct IdempotentFamily {
    pub members: Vec<Element>,
    /// Per member: irreducibility decided exactly rather than by probes.
    pub certified: Vec<bool>,
    /// The members sum to the unit.
    pub maximal: bool,
}

impl IdempotentFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `w_i^2 = w_i` and `w_i w_j = 0` for `i != j`, exactly.
    pub fn is_orthogonal(&self, a: &Algebra) -> bool {
        self.members.iter().enumerate().all(|(i, x)| {
            self.members.iter().enumerate().all(|(j, y)| {
                let prod = a.mul(x, y);
                if i == j {
                    &prod == x
                } else {
                    prod.is_zero()
                }
            })
        })
    }
}

fn require_semisimple(a: &Algebra) -> Result<Element> {
    let r = radical(a)?;
    if !r.is_zero() {
        return Err(Error::NotSemisimple(r.dim()));
    }
    a.unit().cloned().ok_or(Error::NoUnit)
}

/// Primitive central idempotents of a semisimple algebra.
pub fn central_idempotents<R: Rng + ?Sized>(a: &Algebra, rng: &mut R) -> Result<Vec<Element>> {
    let one = require_semisimple(a)?;
    let center = a.center()?;
    let mut out = Vec::new();
    split_all(a, &one, ProbeSpace::Center, &center, rng, &mut out)?;
    Ok(out.into_iter().map(|(e, _)| e).collect())
}

/// Pairwise orthogonal irreducible idempotents summing to the unit, block
/// by block.
pub fn maximal_orthogonal_idempotents<R: Rng + ?Sized>(
    a: &Algebra,
    rng: &mut R,
) -> Result<IdempotentFamily> {
    let one = require_semisimple(a)?;
    let mut members = Vec::new();
    let mut certified = Vec::new();
    for z in central_idempotents(a, rng)? {
        let fam = block_family(a, &z, rng)?;
        members.extend(fam.members);
        certified.extend(fam.certified);
    }
    let sum = members.iter().fold(a.zero(), |acc, m| &acc + m);
    Ok(IdempotentFamily {
        maximal: sum == one,
        members,
        certified,
    })
}

/// Irreducible idempotents splitting a (central) idempotent `z`.
pub fn block_family<R: Rng + ?Sized>(
    a: &Algebra,
    z: &Element,
    rng: &mut R,
) -> Result<IdempotentFamily> {
    let center = a.center()?;
    let mut out = Vec::new();
    split_all(a, z, ProbeSpace::Corner, &center, rng, &mut out)?;
    let sum = out.iter().fold(a.zero(), |acc, (m, _)| &acc + m);
    Ok(IdempotentFamily {
        maximal: &sum == z,
        certified: out.iter().map(|(_, c)| *c).collect(),
        members: out.into_iter().map(|(m, _)| m).collect(),
    })
}

/// The blocks `w_i A w_j`.
#[derive(Clone, Debug)]
pub struct Peirce {
    pub blocks: Vec<Vec<Subspace>>,
}

impl Peirce {
    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|row| row.iter().map(Subspace::dim).collect())
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().flatten().sum()
    }

    pub fn nonzero_blocks(&self) -> usize {
        self.dims().iter().flatten().filter(|&&d| d > 0).count()
    }
}

pub fn peirce(a: &Algebra, family: &[Element]) -> Result<Peirce> {
    let blocks = family
        .iter()
        .map(|wi| {
            family
                .iter()
                .map(|wj| a.sandwich(Some(wi), Some(wj)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Peirce { blocks })
}

/// `units[j][k] = w_{j,k}` with `w_{j,k} w_{l,m} = δ_{kl} w_{j,m}` and
/// `w_{j,j} = w_j`.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    pub base: usize,
    pub units: Vec<Vec<Element>>,
}

impl MatrixUnits {
    pub fn size(&self) -> usize {
        self.units.len()
    }

    pub fn get(&self, j: usize, k: usize) -> &Element {
        &self.units[j][k]
    }

    /// Checks every relation exactly; returns the first failing index
    /// quadruple.
    pub fn check(&self, a: &Algebra) -> Option<(usize, usize, usize, usize)> {
        let n = self.size();
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let prod = a.mul(&self.units[j][k], &self.units[l][m]);
                        let ok = if k == l {
                            prod == self.units[j][m]
                        } else {
                            prod.is_zero()
                        };
                        if !ok {
                            return Some((j, k, l, m));
                        }
                    }
                }
            }
        }
        None
    }
}

/// `y` in the subspace with `x y = target` and `y x = other`, if any.
pub(crate) fn solve_in(
    a: &Algebra,
    space: &Subspace,
    x: &Element,
    target: &Element,
    other: &Element,
) -> Result<Option<Element>> {
    if space.is_zero() {
        return Ok(None);
    }
    let cols: Vec<_> = space
        .basis()
        .iter()
        .map(|b| a.mul(x, &Element(b.clone())).0)
        .collect();
    let m = UltraMatrix::from_columns(a.field(), a.dim(), &cols);
    let Some(c) = m.solve(&target.0)? else {
        return Ok(None);
    };
    let y = Element(space.combine(&c));
    Ok((a.mul(&y, x) == *other).then_some(y))
}

/// Matrix units for a maximal orthogonal irreducible family of a simple
/// algebra, with the lowest index as base.
pub fn matrix_units(a: &Algebra, family: &[Element]) -> Result<MatrixUnits> {
    let n = family.len();
    if n == 0 {
        return Err(Error::ZeroIdempotent);
    }
    let base = 0;
    let w0 = &family[base];
    let mut down = vec![w0.clone()];
    let mut up = vec![w0.clone()];
    for (j, wj) in family.iter().enumerate().skip(1) {
        let block = a.sandwich(Some(wj), Some(w0))?;
        let Some(first) = block.basis().first() else {
            return Err(Error::BlockDegenerate(j, base));
        };
        let x = Element(first.clone());
        let back = a.sandwich(Some(w0), Some(wj))?;
        let y = solve_in(a, &back, &x, wj, w0)?.ok_or_else(|| Error::NonInvertibleWitness {
            witness: x.0.iter().map(|c| c.to_string()).collect(),
        })?;
        down.push(x);
        up.push(y);
    }
    let units = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if j == k {
                        family[j].clone()
                    } else {
                        a.mul(&down[j], &up[k])
                    }
                })
                .collect()
        })
        .collect();
    Ok(MatrixUnits { base, units })
}

#[derive(Clone, Debug)]
pub struct CornerDivision {
    pub corner: Subalgebra,
    pub dim: usize,
    pub probes: usize,
    /// Exact for corners of dimension at most 2.
    pub certified: bool,
    pub commutative: bool,
}

/// `wAw` as an algebra with unit `w`, with every probed nonzero element
/// checked to be invertible in it.
pub fn corner_division_algebra<R: Rng + ?Sized>(
    a: &Algebra,
    w: &Element,
    budget: usize,
    rng: &mut R,
) -> Result<CornerDivision> {
    if w.is_zero() {
        return Err(Error::ZeroIdempotent);
    }
    let space = a.sandwich(Some(w), Some(w))?;
    let corner = Subalgebra::new(a, space.clone(), Some(w), "corner")?;
    let mut probes: Vec<Element> = space.basis().iter().map(|b| Element(b.clone())).collect();
    for _ in 0..budget {
        let c: Vec<Scalar> = (0..space.dim())
            .map(|_| a.field().random_integral(rng))
            .collect();
        probes.push(Element(space.combine(&c)));
    }
    let mut count = 0;
    for x in probes.iter().filter(|x| !x.is_zero()) {
        count += 1;
        if solve_in(a, &space, x, w, w)?.is_none() {
            return Err(Error::NonInvertibleWitness {
                witness: x.0.iter().map(|c| c.to_string()).collect(),
            });
        }
    }
    let certified = match space.dim() {
        1 => true,
        2 => split_dim2(a, w, &space)?.is_none(),
        _ => false,
    };
    Ok(CornerDivision {
        dim: space.dim(),
        commutative: corner.algebra.is_commutative(),
        corner,
        probes: count,
        certified,
    })
}

/// A minimal two-sided ideal `zA` with its central idempotent.
#[derive(Clone, Debug)]
pub struct Block {
    pub central_idempotent: Element,
    pub space: Subspace,
    /// Every basis vector generates the whole block as a two-sided ideal.
    pub simple_probe: bool,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Idempotents and corner data of one simple block.
#[derive(Clone, Debug)]
pub struct BlockStructure {
    pub family: IdempotentFamily,
    pub units: MatrixUnits,
    pub corner_dim: usize,
    pub corner_commutative: bool,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub radical_dim: usize,
    pub blocks: Vec<Block>,
    /// Filled by [`structure`], empty from [`minimal_two_sided_ideals`].
    pub details: Vec<BlockStructure>,
}

impl StructureReport {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::dim).collect()
    }
}

/// The decomposition into minimal two-sided ideals `z_k A`.
pub fn minimal_two_sided_ideals<R: Rng + ?Sized>(
    a: &Algebra,
    rng: &mut R,
) -> Result<StructureReport> {
    let zs = central_idempotents(a, rng)?;
    let mut blocks = Vec::new();
    for z in zs {
        let space = a.sandwich(Some(&z), None)?;
        let simple_probe = space.basis().iter().all(|b| {
            ideal_generated(a, &[Element(b.clone())], Side::TwoSided)
                .map(|j| j.space == space)
                .unwrap_or(false)
        });
        blocks.push(Block {
            central_idempotent: z,
            space,
            simple_probe,
        });
    }
    Ok(StructureReport {
        radical_dim: 0,
        blocks,
        details: vec![],
    })
}

/// Blocks together with their idempotent families, matrix units and
/// corner dimensions.
pub fn structure<R: Rng + ?Sized>(a: &Algebra, rng: &mut R) -> Result<StructureReport> {
    let mut report = minimal_two_sided_ideals(a, rng)?;
    for b in &report.blocks {
        let family = block_family(a, &b.central_idempotent, rng)?;
        let units = matrix_units(a, &family.members)?;
        let w = &family.members[0];
        let corner = a.sandwich(Some(w), Some(w))?;
        let sub = Subalgebra::new(a, corner.clone(), Some(w), "corner")?;
        report.details.push(BlockStructure {
            corner_dim: corner.dim(),
            corner_commutative: sub.algebra.is_commutative(),
            family,
            units,
        });
    }
    Ok(report)
}

/// `n` with `block_dim = n^2 corner_dim`.
pub fn matrix_degree(block_dim: usize, corner_dim: usize) -> Option<usize> {
    let (q, r) = block_dim.div_rem(&corner_dim);
    if r != 0 {
        return None;
    }
    let n = (q as f64).sqrt().round() as usize;
    (n * n == q).then_some(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;
    use crate::spec::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(p: u32) -> Field {
        Field::qp(p).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn lifting_examples() {
        let f = q(7);
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        let e11 = m2.basis_element(0);
        assert_eq!(lift_idempotent(&m2, &e11).unwrap(), e11);
        assert_eq!(lift_idempotent(&m2, &m2.zero()).unwrap(), m2.zero());
        // u^2 = u + 5 on the basis 1, u
        let a = fixtures::truncated_poly_spec(5, &[Rat::int(-5), Rat::int(-1)], "u")
            .build_in(&q(5))
            .unwrap();
        let u = a.basis_element(1);
        let e = lift_idempotent(&a, &u).unwrap();
        assert_eq!(a.mul(&e, &e), e);
        assert!((&e - &u).norm() < Norm::one());
        assert_eq!(
            lift_idempotent(&m2, &m2.from_i64(&[2, 0, 0, 0])),
            Err(Error::NotResidueIdempotent)
        );
    }

    #[test]
    fn families_of_matrix_algebras() {
        let f = q(7);
        let mut r = rng();
        for n in 1..=3 {
            let a = fixtures::matrix_algebra(&f, n).unwrap();
            let fam = maximal_orthogonal_idempotents(&a, &mut r).unwrap();
            assert_eq!(fam.len(), n);
            assert!(fam.maximal && fam.is_orthogonal(&a));
            let p = peirce(&a, &fam.members).unwrap();
            assert_eq!(p.total_dim(), n * n);
            let mu = matrix_units(&a, &fam.members).unwrap();
            assert_eq!(mu.check(&a), None);
        }
        let s = fixtures::block_matrix_algebra(&f, &[2, 3]).unwrap();
        let fam = maximal_orthogonal_idempotents(&s, &mut r).unwrap();
        assert_eq!(fam.len(), 5);
        let p = peirce(&s, &fam.members).unwrap();
        assert_eq!(p.nonzero_blocks(), 13);
        assert_eq!(p.total_dim(), 13);
    }

    #[test]
    fn irreducibility_examples() {
        let f = q(7);
        let mut r = rng();
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        assert!(is_irreducible(&m2, &m2.basis_element(0), &mut r)
            .unwrap()
            .is_irreducible());
        let one = m2.unit().unwrap().clone();
        assert!(!is_irreducible(&m2, &one, &mut r).unwrap().is_irreducible());
        assert_eq!(
            is_irreducible(&m2, &m2.zero(), &mut r),
            Err(Error::ZeroIdempotent)
        );
    }

    #[test]
    fn quaternion_corner_is_division() {
        let f = q(7);
        let h = fixtures::quaternion_algebra(&f, 3, 7).unwrap();
        let one = h.unit().unwrap().clone();
        let mut r = rng();
        let c = corner_division_algebra(&h, &one, 50, &mut r).unwrap();
        assert_eq!(c.dim, 4);
        assert!(!c.commutative);
        let fam = maximal_orthogonal_idempotents(&h, &mut r).unwrap();
        assert_eq!(fam.len(), 1);
    }

    #[test]
    fn split_quaternions_have_two_idempotents() {
        // (1, 1) is M_2
        let h = fixtures::quaternion_algebra(&q(7), 1, 1).unwrap();
        let fam = maximal_orthogonal_idempotents(&h, &mut rng()).unwrap();
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn two_sided_blocks() {
        let f = q(7);
        let mut r = rng();
        let s = fixtures::block_matrix_algebra(&f, &[2, 3]).unwrap();
        let rep = minimal_two_sided_ideals(&s, &mut r).unwrap();
        let mut dims = rep.block_dims();
        dims.sort();
        assert_eq!(dims, vec![4, 9]);
        assert!(rep.blocks.iter().all(|b| b.simple_probe));
        let m2 = fixtures::matrix_algebra(&f, 2).unwrap();
        assert_eq!(
            minimal_two_sided_ideals(&m2, &mut r).unwrap().block_dims(),
            vec![4]
        );
        let pair = fixtures::split_pair_spec(7).build_in(&f).unwrap();
        assert_eq!(
            minimal_two_sided_ideals(&pair, &mut r)
                .unwrap()
                .block_dims(),
            vec![1, 1]
        );
        let t2 = fixtures::upper_triangular(&f, 2).unwrap();
        assert_eq!(
            minimal_two_sided_ideals(&t2, &mut r).unwrap_err(),
            Error::NotSemisimple(1)
        );
    }

    #[test]
    fn structure_of_sum() {
        let f = q(7);
        let s = fixtures::block_matrix_algebra(&f, &[2, 3]).unwrap();
        let rep = structure(&s, &mut rng()).unwrap();
        for (b, d) in rep.blocks.iter().zip(&rep.details) {
            assert_eq!(d.corner_dim, 1);
            assert_eq!(matrix_degree(b.dim(), d.corner_dim), Some(d.family.len()));
            assert_eq!(d.units.check(&s), None);
        }
    }
}
