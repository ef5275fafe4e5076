//! Trace forms, the B*-axioms, self-adjoint idempotents and matrix
//! representations of simple blocks.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Subalgebra};
use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::field::{Norm, Scalar};
use crate::idempotent::{
    block_family, matrix_units, minimal_two_sided_ideals, solve_in, IdempotentFamily, MatrixUnits,
    StructureReport,
};
use crate::linalg::UltraMatrix;
use crate::residue::pow_mod;
use crate::star::check_involution;

/// `(x, y) = Tr(R(x*) S R(y))` on the realization.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub gram: UltraMatrix,
    pub generator: UltraMatrix,
    /// `max |(e_i, e_j)|`.
    pub q: Norm,
}

impl BilinearForm {
    pub fn eval(&self, x: &Element, y: &Element) -> Scalar {
        let gy = self.gram.mul_vec(&y.0);
        crate::linalg::dot(&x.0, &gy)
    }
}

/// The trace form for `s`, or for the algebra's own generator (identity if
/// none is set).
pub fn trace_form(a: &Algebra, s: Option<&UltraMatrix>) -> Result<BilinearForm> {
    a.involution().ok_or(Error::NoInvolution)?;
    let m = a.realization_dim();
    let s = match s.or(a.form_generator()) {
        Some(s) => s.clone(),
        None => UltraMatrix::identity(a.field(), m),
    };
    if s.rows() != m || s.cols() != m {
        return Err(Error::BadDimension(format!(
            "form generator is {}x{}, realization is {m}x{m}",
            s.rows(),
            s.cols()
        )));
    }
    if s.transpose() != s {
        return Err(Error::NotSymmetricS);
    }
    let n = a.dim();
    let r = a.realization_matrices();
    let mut rs = Vec::with_capacity(n);
    for i in 0..n {
        rs.push(a.realize(&a.star(&a.basis_element(i))?).mul(&s));
    }
    let mut gram = UltraMatrix::zeros(a.field(), n, n);
    let mut q = Norm::ZERO;
    for i in 0..n {
        for j in 0..n {
            let g = rs[i].mul(&r[j]).trace()?;
            q = q.max(g.norm());
            gram.set(i, j, g);
        }
    }
    Ok(BilinearForm {
        gram,
        generator: s,
        q,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: u8,
    pub verdict: Verdict,
    pub detail: String,
}

/// How axiom (6), `x x* = 0 ⇒ x = 0`, was decided.
#[derive(Clone, Debug, Serialize)]
pub struct Positivity {
    pub verdict: Verdict,
    /// Anisotropy of a diagonal cover of `x x*` proves the axiom outright.
    pub certified: bool,
    /// Nonzero `x` with `x x* = 0`, as coordinate strings.
    pub witness: Option<Vec<String>>,
    #[serde(skip)]
    pub element: Option<Element>,
    pub probes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BstarReport {
    pub axioms: Vec<AxiomResult>,
    pub q: Norm,
    pub positivity: Positivity,
}

impl BstarReport {
    pub fn verdict(&self) -> Verdict {
        self.axioms
            .iter()
            .fold(Verdict::NotApplicable, |v, r| v.and(r.verdict))
    }

    pub fn axiom(&self, k: u8) -> Verdict {
        self.axioms
            .iter()
            .find(|r| r.axiom == k)
            .map_or(Verdict::NotApplicable, |r| r.verdict)
    }

    /// The first failing axiom among (2) to (5).
    pub fn structural_failure(&self) -> Option<u8> {
        (2..=5).find(|&k| self.axiom(k) == Verdict::Fail)
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Checks the six axioms for `form`: involution, `q > 0`, symmetry and
/// `*`-invariance of the form, nondegeneracy, associativity
/// `(xy, z) = (x, z y*)`, and `x x* = 0 ⇒ x = 0`.
pub fn check_bstar<R: Rng + ?Sized>(
    a: &Algebra,
    form: &BilinearForm,
    budget: usize,
    rng: &mut R,
) -> Result<BstarReport> {
    let inv = a.involution().ok_or(Error::NoInvolution)?;
    let n = a.dim();
    let mut axioms = Vec::new();

    let ir = check_involution(a, inv);
    let core = ir.anti_multiplicative.is_none() && ir.involutive.is_none();
    let detail = match (ir.anti_multiplicative, ir.involutive) {
        (Some((i, j)), _) => format!("(e{} e{})* != e{}* e{}*", i + 1, j + 1, j + 1, i + 1),
        (None, Some(i)) => format!("e{}** != e{}", i + 1, i + 1),
        (None, None) => "anti-multiplicative and involutive".into(),
    };
    axioms.push(AxiomResult {
        axiom: 1,
        verdict: pass_if(core),
        detail,
    });

    axioms.push(AxiomResult {
        axiom: 2,
        verdict: pass_if(!form.q.is_zero()),
        detail: format!("q = {}", form.q),
    });

    let g = &form.gram;
    let symmetric = g.transpose() == *g;
    let invariant = inv.transpose().mul(g).mul(inv) == *g;
    axioms.push(AxiomResult {
        axiom: 3,
        verdict: pass_if(symmetric && invariant),
        detail: format!("symmetric: {symmetric}, star-invariant: {invariant}"),
    });

    let null = g.kernel()?.len();
    axioms.push(AxiomResult {
        axiom: 4,
        verdict: pass_if(null == 0),
        detail: format!("kernel dimension {null}"),
    });

    let assoc = associativity_failure(a, form)?;
    axioms.push(AxiomResult {
        axiom: 5,
        verdict: pass_if(assoc.is_none()),
        detail: match assoc {
            Some((i, j, k)) => format!("(e{} e{}, e{}) differs", i + 1, j + 1, k + 1),
            None => format!("{} basis triples", n * n * n),
        },
    });

    let positivity = positivity(a, budget, rng)?;
    axioms.push(AxiomResult {
        axiom: 6,
        verdict: positivity.verdict,
        detail: match (&positivity.witness, positivity.certified) {
            (Some(w), _) => format!("x x* = 0 for x = ({})", w.join(", ")),
            (None, true) => "certified by anisotropy".into(),
            (None, false) => format!("no witness in {} probes", positivity.probes),
        },
    });

    Ok(BstarReport {
        axioms,
        q: form.q,
        positivity,
    })
}

fn associativity_failure(
    a: &Algebra,
    form: &BilinearForm,
) -> Result<Option<(usize, usize, usize)>> {
    let n = a.dim();
    let basis: Vec<Element> = (0..n).map(|i| a.basis_element(i)).collect();
    let stars: Vec<Element> = basis.iter().map(|e| a.star(e)).collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            let lhs = a.mul(&basis[i], &basis[j]);
            for k in 0..n {
                let rhs = a.mul(&basis[k], &stars[j]);
                if form.eval(&lhs, &basis[k]) != form.eval(&basis[i], &rhs) {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// Legendre symbol of a residue.
fn legendre(u: u64, p: u64) -> i8 {
    match pow_mod(u % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn split_unit(x: &Scalar) -> Result<(i64, u64)> {
    let pa = x.to_base().ok_or(Error::NotBaseRational)?;
    let v = pa.valuation().ok_or(Error::DivisionByZero)?;
    let p = x.prime() as u64;
    let u = (pa.unit_part() % p).to_u64().unwrap_or(0);
    Ok((v, u))
}

/// The Hilbert symbol `(a, b)_p` of nonzero base-field scalars, `p` odd.
pub fn hilbert_symbol(a: &Scalar, b: &Scalar) -> Result<i8> {
    let p = a.prime() as u64;
    let (alpha, u) = split_unit(a)?;
    let (beta, v) = split_unit(b)?;
    let mut s = if (alpha * beta).is_odd() && ((p - 1) / 2).is_odd() {
        -1
    } else {
        1
    };
    if beta.is_odd() {
        s *= legendre(u, p);
    }
    if alpha.is_odd() {
        s *= legendre(v, p);
    }
    Ok(s)
}

/// Whether a nonzero base-field scalar is a square.
pub fn is_square(x: &Scalar) -> bool {
    x.sqrt().is_ok()
}

/// Whether `Σ a_i x_i^2` has only the trivial zero. Coefficients must be
/// nonzero base-field scalars.
pub fn is_anisotropic(diag: &[Scalar]) -> Result<bool> {
    let neg = |x: &Scalar| -x;
    Ok(match diag {
        [] | [_] => true,
        [a, b] => !is_square(&neg(&(a * b))),
        [a, b, c] => hilbert_symbol(&neg(&(a * c)), &neg(&(b * c)))? == -1,
        [_, _, _, _] => {
            let d = diag.iter().skip(1).fold(diag[0].clone(), |acc, x| &acc * x);
            let mut eps = 1;
            for i in 0..4 {
                for j in i + 1..4 {
                    eps *= hilbert_symbol(&diag[i], &diag[j])?;
                }
            }
            is_square(&d) && eps == -1
        }
        _ => false,
    })
}

/// Coordinates of `x x*` as quadratic forms: `forms[c][i][j]` is the
/// symmetrised coefficient of `x_i x_j`.
fn quadratic_forms(a: &Algebra) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let n = a.dim();
    let f = a.field();
    let half = f.from_i64(2).inv()?;
    let basis: Vec<Element> = (0..n).map(|i| a.basis_element(i)).collect();
    let stars: Vec<Element> = basis.iter().map(|e| a.star(e)).collect::<Result<_>>()?;
    let prods: Vec<Vec<Element>> = (0..n)
        .map(|i| (0..n).map(|j| a.mul(&basis[i], &stars[j])).collect())
        .collect();
    Ok((0..n)
        .map(|c| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| &(&prods[i][j].0[c] + &prods[j][i].0[c]) * &half)
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// Support and coefficients of a diagonal form, `None` if not diagonal.
fn diagonal(m: &[Vec<Scalar>]) -> Option<(Vec<usize>, Vec<Scalar>)> {
    let n = m.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && !m[i][j].is_zero() {
                return None;
            }
        }
    }
    let support: Vec<usize> = (0..n).filter(|&i| !m[i][i].is_zero()).collect();
    let coeffs = support.iter().map(|&i| m[i][i].clone()).collect();
    Some((support, coeffs))
}

const WITNESS_TUPLES: u64 = 4096;

/// A zero of an isotropic diagonal form: small residues in all but the
/// last coordinate, the last solved by a square root.
fn diagonal_zero(coeffs: &[Scalar], p: u64) -> Option<Vec<Scalar>> {
    let k = coeffs.len();
    if k < 2 {
        return None;
    }
    let f = coeffs[0].field().clone();
    let free = (k - 1) as u32;
    let total = p.checked_pow(free).unwrap_or(u64::MAX).min(WITNESS_TUPLES);
    for code in 1..total {
        let mut digits = vec![0u64; k - 1];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c % p;
            c /= p;
        }
        let xs: Vec<Scalar> = digits.iter().map(|&d| f.from_i64(d as i64)).collect();
        let partial = xs
            .iter()
            .zip(coeffs)
            .fold(f.zero(), |acc, (x, a)| &acc + &(&(x * x) * a));
        let r = (-&partial).div(&coeffs[k - 1]).ok()?;
        let last = if r.is_zero() {
            f.zero()
        } else {
            match r.sqrt() {
                Ok(s) => s,
                Err(_) => continue,
            }
        };
        let mut out = xs;
        out.push(last);
        return Some(out);
    }
    None
}

fn positivity<R: Rng + ?Sized>(a: &Algebra, budget: usize, rng: &mut R) -> Result<Positivity> {
    let n = a.dim();
    let f = a.field();
    let vanishes = |x: &Element| -> Result<bool> { Ok(a.mul(x, &a.star(x)?).is_zero()) };
    let found = |x: &Element, certified: bool, probes: usize| Positivity {
        verdict: Verdict::Fail,
        certified,
        witness: Some(x.coords().iter().map(ToString::to_string).collect()),
        element: Some(x.clone()),
        probes,
    };
    for i in 0..n {
        let e = a.basis_element(i);
        if vanishes(&e)? {
            return Ok(found(&e, true, i + 1));
        }
    }
    let forms = if f.is_base() {
        quadratic_forms(a)?
    } else {
        vec![]
    };
    let mut covered = vec![false; n];
    let mut cover_anisotropic = !forms.is_empty();
    let p = f.prime() as u64;
    for m in &forms {
        let Some((support, coeffs)) = diagonal(m) else {
            continue;
        };
        if support.is_empty() {
            continue;
        }
        let aniso = is_anisotropic(&coeffs)?;
        if !aniso {
            if let Some(z) = diagonal_zero(&coeffs, p) {
                let mut coords = vec![f.zero(); n];
                for (&i, zi) in support.iter().zip(z) {
                    coords[i] = zi;
                }
                let x = a.element(coords);
                if vanishes(&x)? {
                    return Ok(found(&x, true, n));
                }
            }
        }
        if support.iter().all(|&i| !covered[i]) {
            for &i in &support {
                covered[i] = true;
            }
            cover_anisotropic &= aniso;
        }
    }
    let certified = cover_anisotropic && covered.iter().all(|&c| c);
    for k in 0..budget {
        let x = a.random_integral(rng);
        if !x.is_zero() && vanishes(&x)? {
            return Ok(found(&x, true, n + k + 1));
        }
    }
    Ok(Positivity {
        verdict: if certified {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        },
        certified,
        witness: None,
        element: None,
        probes: n + budget,
    })
}

/// `w* w w* = s w*` when that holds for a scalar `s`.
fn scalar_ratio(x: &Element, base: &Element) -> Option<Scalar> {
    let i = base.coords().iter().position(|c| !c.is_zero())?;
    let s = x.coords()[i].div(&base.coords()[i]).ok()?;
    (base.scale(&s) == *x).then_some(s)
}

#[derive(Clone, Debug)]
pub struct SelfAdjointIdempotent {
    pub v: Element,
    /// The scalar `s` with `w* w w* = s w*`, when there is one; then
    /// `v = s^{-1} w* w`.
    pub s: Option<Scalar>,
}

/// A self-adjoint idempotent `v` with `A v = A w`, for an idempotent `w` of
/// a B*-algebra: `v = w* y` where `y` inverts `w w* w` in `wAw`.
pub fn selfadjoint_idempotent(a: &Algebra, w: &Element) -> Result<SelfAdjointIdempotent> {
    let ws = a.star(w)?;
    let x = a.mul_all(&[w, &ws, w]);
    if x.is_zero() {
        return Err(Error::DegenerateCorner);
    }
    let corner = a.sandwich(Some(w), Some(w))?;
    let y = solve_in(a, &corner, &x, w, w)?.ok_or_else(|| Error::NonInvertibleWitness {
        witness: x.coords().iter().map(ToString::to_string).collect(),
    })?;
    let v = a.mul(&ws, &y);
    if a.star(&v)? != v || a.mul(&v, &v) != v {
        return Err(Error::Validation(
            "self-adjoint idempotent failed exact verification".into(),
        ));
    }
    let s = scalar_ratio(&a.mul_all(&[&ws, w, &ws]), &ws);
    Ok(SelfAdjointIdempotent { v, s })
}

/// Orthogonal self-adjoint irreducible idempotents summing to `z`.
pub fn selfadjoint_family<R: Rng + ?Sized>(
    a: &Algebra,
    z: &Element,
    rng: &mut R,
) -> Result<IdempotentFamily> {
    let mut rest = z.clone();
    let mut members = Vec::new();
    let mut certified = Vec::new();
    while !rest.is_zero() {
        let fam = block_family(a, &rest, rng)?;
        let w = fam.members.first().ok_or(Error::ZeroIdempotent)?;
        let v = selfadjoint_idempotent(a, w)?.v;
        rest = &rest - &v;
        members.push(v);
        certified.push(fam.certified[0]);
    }
    let sum = members.iter().fold(a.zero(), |acc, m| &acc + m);
    Ok(IdempotentFamily {
        maximal: sum == *z,
        members,
        certified,
    })
}

/// Rescales matrix units over self-adjoint idempotents so that
/// `w_{j,k}* = w_{k,j}`.
pub fn normalize_units(a: &Algebra, units: &MatrixUnits) -> Result<MatrixUnits> {
    let n = units.size();
    let w0 = units.get(0, 0);
    let mut up = vec![w0.clone()];
    let mut down = vec![w0.clone()];
    for k in 1..n {
        let u = units.get(0, k);
        let us = a.star(u)?;
        let b = scalar_ratio(&a.mul(u, &us), w0).ok_or_else(|| {
            Error::SqrtObstruction(format!("w_(1,{}) w_(1,{})* is not scalar", k + 1, k + 1))
        })?;
        let r = b
            .sqrt()
            .map_err(|_| Error::SqrtObstruction(b.to_string()))?;
        let u = u.scale(&r.inv()?);
        down.push(a.star(&u)?);
        up.push(u);
    }
    let table: Vec<Vec<Element>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if j == k {
                        units.get(j, j).clone()
                    } else {
                        a.mul(&down[j], &up[k])
                    }
                })
                .collect()
        })
        .collect();
    let out = MatrixUnits {
        base: 0,
        units: table,
    };
    if out.check(a).is_some() {
        return Err(Error::Validation(
            "normalised units break the relations".into(),
        ));
    }
    for j in 0..n {
        for k in 0..n {
            if a.star(out.get(j, k))? != *out.get(k, j) {
                return Err(Error::Validation(
                    "normalised units are not star-compatible".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Star-compatible matrix units over a self-adjoint family.
pub fn selfadjoint_matrix_units(a: &Algebra, family: &[Element]) -> Result<MatrixUnits> {
    for v in family {
        if a.star(v)? != *v {
            return Err(Error::Validation("family is not self-adjoint".into()));
        }
    }
    normalize_units(a, &matrix_units(a, family)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockBstar {
    pub dim: usize,
    pub star_closed: bool,
    pub report: BstarReport,
}

#[derive(Clone, Debug)]
pub struct BstarStructure {
    pub report: BstarReport,
    pub structure: StructureReport,
    pub blocks: Vec<BlockBstar>,
    /// `(a x, a y) = 0` for `x`, `y` in different blocks and sampled `a`.
    pub cross_orthogonal: bool,
}

/// Splits a semisimple B*-algebra into star-closed, mutually orthogonal
/// simple blocks and re-checks the axioms on each.
pub fn bstar_decompose<R: Rng + ?Sized>(
    a: &Algebra,
    budget: usize,
    rng: &mut R,
) -> Result<BstarStructure> {
    let form = trace_form(a, None)?;
    let report = check_bstar(a, &form, budget, rng)?;
    if let Some(k) = report.structural_failure() {
        return Err(Error::NotBstar(k));
    }
    let structure = minimal_two_sided_ideals(a, rng)?;
    let n = a.dim();
    let mut samples: Vec<Element> = (0..n).map(|i| a.basis_element(i)).collect();
    if let Some(u) = a.unit() {
        samples.push(u.clone());
    }
    for _ in 0..budget.min(8) {
        samples.push(a.random_integral(rng));
    }
    let mut cross_orthogonal = true;
    for (bi, x_block) in structure.blocks.iter().enumerate() {
        for y_block in &structure.blocks[bi + 1..] {
            for x in x_block.space.basis() {
                for y in y_block.space.basis() {
                    let (x, y) = (Element(x.clone()), Element(y.clone()));
                    cross_orthogonal &= samples
                        .iter()
                        .all(|s| form.eval(&a.mul(s, &x), &a.mul(s, &y)).is_zero());
                }
            }
        }
    }
    let mut blocks = Vec::new();
    for (k, b) in structure.blocks.iter().enumerate() {
        let star_closed = b
            .space
            .basis()
            .iter()
            .map(|v| a.star(&Element(v.clone())))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|s| b.space.contains(&s.0));
        let sub = Subalgebra::new(
            a,
            b.space.clone(),
            Some(&b.central_idempotent),
            format!("block{}", k + 1),
        )?;
        let block_form = trace_form(&sub.algebra, None)?;
        let block_report = check_bstar(&sub.algebra, &block_form, budget, rng)?;
        blocks.push(BlockBstar {
            dim: b.dim(),
            star_closed,
            report: block_report,
        });
    }
    Ok(BstarStructure {
        report,
        structure,
        blocks,
        cross_orthogonal,
    })
}

/// `x ↦ (w_{0,j} x w_{k,0})_{j,k}`, an algebra map from a simple block into
/// `n x n` matrices over the corner `w_0 A w_0`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub units: MatrixUnits,
    pub corner: Subalgebra,
}

pub fn represent(a: &Algebra, units: &MatrixUnits) -> Result<Representation> {
    let w0 = units.get(0, 0);
    let space = a.sandwich(Some(w0), Some(w0))?;
    let corner = Subalgebra::new(a, space, Some(w0), "corner")?;
    Ok(Representation {
        units: units.clone(),
        corner,
    })
}

impl Representation {
    pub fn degree(&self) -> usize {
        self.units.size()
    }

    pub fn corner_dim(&self) -> usize {
        self.corner.algebra.dim()
    }

    /// The corner element in position `(j, k)`.
    pub fn entry(&self, a: &Algebra, x: &Element, j: usize, k: usize) -> Result<Element> {
        let e = a.mul_all(&[self.units.get(0, j), x, self.units.get(k, 0)]);
        self.corner
            .restrict(&e)
            .ok_or_else(|| Error::Validation("entry left the corner".into()))
    }

    /// The `nd x nd` matrix with corner elements replaced by their left
    /// regular matrices; scalars when the corner is one-dimensional.
    pub fn matrix(&self, a: &Algebra, x: &Element) -> Result<UltraMatrix> {
        let n = self.degree();
        let d = self.corner_dim();
        let mut out = UltraMatrix::zeros(a.field(), n * d, n * d);
        for j in 0..n {
            for k in 0..n {
                let block = self.corner.algebra.left_regular(&self.entry(a, x, j, k)?);
                for r in 0..d {
                    for c in 0..d {
                        out.set(j * d + r, k * d + c, block.get(r, c).clone());
                    }
                }
            }
        }
        Ok(out)
    }
}
