//! Scalars: `Q_p` for odd `p` and the small extensions of [`extension`].

mod extension;
mod norm;
mod padic;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use rand::Rng;

pub use extension::{least_nonresidue, sample_extensions, ExtensionField, ExtensionKind};
pub use norm::Norm;
pub use padic::{residue_sqrt, Padic};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 32;
pub const DEFAULT_GUARD: u32 = 8;

#[derive(Debug)]
struct FieldInner {
    prime: u32,
    precision: u32,
    guard: u32,
    ext: Option<ExtensionField>,
}

/// Shared handle describing where scalars live: the prime, the working
/// precision, the guard below which results are rejected, and optionally an
/// extension of `Q_p`.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.prime == other.0.prime
                && self.0.precision == other.0.precision
                && self.0.ext == other.0.ext)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl Field {
    /// `Q_p` at the default precision of 32 digits with a guard of 8.
    pub fn qp(prime: u32) -> Result<Field> {
        Field::with_precision(prime, DEFAULT_PRECISION, DEFAULT_GUARD)
    }

    pub fn with_precision(prime: u32, precision: u32, guard: u32) -> Result<Field> {
        if prime == 2 {
            return Err(Error::EvenPrime(prime));
        }
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if precision <= guard {
            return Err(Error::PrecisionExhausted(format!(
                "precision {precision} does not exceed guard {guard}"
            )));
        }
        Ok(Field(Arc::new(FieldInner {
            prime,
            precision,
            guard,
            ext: None,
        })))
    }

    /// The same prime and precision, adjoining a root of `ext`'s polynomial.
    pub fn extend(&self, ext: &ExtensionField) -> Result<Field> {
        if ext.prime() != self.prime() {
            return Err(Error::FieldMismatch);
        }
        if self.0.ext.is_some() {
            return Err(Error::NotBaseRational);
        }
        Ok(self.with_ext(Some(ext.clone())))
    }

    /// The underlying `Q_p`.
    pub fn base(&self) -> Field {
        if self.0.ext.is_none() {
            return self.clone();
        }
        self.with_ext(None)
    }

    fn with_ext(&self, ext: Option<ExtensionField>) -> Field {
        Field(Arc::new(FieldInner {
            prime: self.0.prime,
            precision: self.0.precision,
            guard: self.0.guard,
            ext,
        }))
    }

    pub fn prime(&self) -> u32 {
        self.0.prime
    }

    pub fn precision(&self) -> u32 {
        self.0.precision
    }

    pub fn guard(&self) -> u32 {
        self.0.guard
    }

    pub fn extension(&self) -> Option<&ExtensionField> {
        self.0.ext.as_ref()
    }

    pub fn is_base(&self) -> bool {
        self.0.ext.is_none()
    }

    /// Degree over `Q_p`.
    pub fn degree(&self) -> usize {
        self.0.ext.as_ref().map_or(1, |e| e.degree())
    }

    pub fn label(&self) -> String {
        match &self.0.ext {
            None => format!("Q_{}", self.prime()),
            Some(e) => e.to_string(),
        }
    }

    fn lift(&self, x: Padic) -> Scalar {
        let mut c = vec![Padic::zero(self.prime()); self.degree()];
        c[0] = x;
        Scalar {
            field: self.clone(),
            c,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.lift(Padic::zero(self.prime()))
    }

    pub fn one(&self) -> Scalar {
        self.lift(Padic::one(self.prime(), self.precision()))
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.lift(Padic::from_i64(self.prime(), self.precision(), n))
    }

    pub fn from_rational(&self, q: &BigRational) -> Scalar {
        self.lift(Padic::from_rational(self.prime(), self.precision(), q))
    }

    pub fn from_padic(&self, x: Padic) -> Scalar {
        self.lift(x)
    }

    /// `p^k` as a scalar.
    pub fn p_pow(&self, k: i64) -> Scalar {
        self.one().shift(k)
    }

    /// The adjoined root `θ` of the extension polynomial.
    pub fn generator(&self) -> Option<Scalar> {
        self.0.ext.as_ref()?;
        Some(
            self.from_components(
                (0..self.degree())
                    .map(|i| {
                        if i == 1 {
                            Padic::one(self.prime(), self.precision())
                        } else {
                            Padic::zero(self.prime())
                        }
                    })
                    .collect(),
            ),
        )
    }

    /// Builds `Σ c_i θ^i`.
    pub fn from_components(&self, c: Vec<Padic>) -> Scalar {
        assert_eq!(c.len(), self.degree());
        Scalar {
            field: self.clone(),
            c,
        }
    }

    /// Uniform random element of the ring of integers at working precision.
    pub fn random_integral<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let c = (0..self.degree())
            .map(|_| Padic::random_integral(self.prime(), self.precision(), rng))
            .collect();
        self.from_components(c)
    }

    fn modulus(&self) -> Vec<Padic> {
        let e = self.0.ext.as_ref().expect("extension field");
        e.modulus()[..e.degree()]
            .iter()
            .map(|&c| Padic::from_i64(self.prime(), self.precision(), c))
            .collect()
    }
}

/// An element of a [`Field`], stored as coordinates on `1, θ, θ^2, ...`.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    c: Vec<Padic>,
}

/// Arithmetic selector for [`field_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: fails on division by zero and when the result keeps
/// fewer significant digits than the field's guard.
pub fn field_op(x: &Scalar, y: &Scalar, op: Op) -> Result<Scalar> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let r = match op {
        Op::Add => x + y,
        Op::Sub => x - y,
        Op::Mul => x * y,
        Op::Div => x.div(y)?,
    };
    r.check_guard()?;
    Ok(r)
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.prime()
    }

    pub fn components(&self) -> &[Padic] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Padic::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Padic::is_zero)
    }

    /// Valuation normalised so that `v(p) = 1`; `None` for zero.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        let kind = self.field.extension().map(|e| e.kind());
        self.c
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let v = Ratio::from_integer(a.valuation()?);
                Some(match kind {
                    Some(ExtensionKind::RamifiedQuadratic) => v + Ratio::new(i as i64, 2),
                    _ => v,
                })
            })
            .min()
    }

    pub fn norm(&self) -> Norm {
        match self.valuation() {
            None => Norm::ZERO,
            Some(v) => Norm::from_valuation(v),
        }
    }

    /// Smallest relative precision among nonzero coordinates.
    pub fn precision(&self) -> u32 {
        self.c
            .iter()
            .filter(|a| !a.is_zero())
            .map(Padic::precision)
            .min()
            .unwrap_or(self.field.precision())
    }

    /// Rejects nonzero values that kept fewer digits than the guard.
    pub fn check_guard(&self) -> Result<()> {
        if !self.is_zero() && self.precision() < self.field.guard() {
            return Err(Error::PrecisionExhausted(format!(
                "{} significant digits left, guard is {}",
                self.precision(),
                self.field.guard()
            )));
        }
        Ok(())
    }

    /// The value as an element of `Q_p` when it has no `θ` part.
    pub fn to_base(&self) -> Option<&Padic> {
        self.c[1..].iter().all(Padic::is_zero).then_some(&self.c[0])
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.to_base()?.to_rational()
    }

    /// Residue modulo `p` of an integral base-field scalar.
    pub fn residue(&self) -> Option<u64> {
        self.to_base()?.residue()
    }

    pub fn shift(&self, k: i64) -> Scalar {
        self.map(|a| a.shift(k))
    }

    /// Forgets digits at `p^k` and beyond in each coordinate.
    pub fn truncate_abs(&self, k: i64) -> Scalar {
        self.map(|a| a.truncate_abs(k))
    }

    fn map(&self, f: impl Fn(&Padic) -> Padic) -> Scalar {
        Scalar {
            field: self.field.clone(),
            c: self.c.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Scalar, f: impl Fn(&Padic, &Padic) -> Padic) -> Scalar {
        debug_assert!(self.field == other.field, "mixed fields");
        Scalar {
            field: self.field.clone(),
            c: self.c.iter().zip(&other.c).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        let d = self.c.len();
        if d == 1 {
            return Scalar {
                field: self.field.clone(),
                c: vec![self.c[0].mul(&other.c[0])],
            };
        }
        let p = self.prime();
        let mut prod = vec![Padic::zero(p); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = prod[i + j].add(&a.mul(b));
                }
            }
        }
        let f = self.field.modulus();
        for k in (d..2 * d - 1).rev() {
            let t = std::mem::replace(&mut prod[k], Padic::zero(p));
            if t.is_zero() {
                continue;
            }
            for (i, fi) in f.iter().enumerate() {
                if !fi.is_zero() {
                    prod[k - d + i] = prod[k - d + i].sub(&t.mul(fi));
                }
            }
        }
        prod.truncate(d);
        Scalar {
            field: self.field.clone(),
            c: prod,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() == 1 {
            return Ok(Scalar {
                field: self.field.clone(),
                c: vec![self.c[0].inv()?],
            });
        }
        // solve (multiplication by self) * y = 1 over Q_p
        let d = self.c.len();
        let basis: Vec<Scalar> = (0..d)
            .map(|i| {
                let mut c = vec![Padic::zero(self.prime()); d];
                c[i] = Padic::one(self.prime(), self.field.precision());
                self.field.from_components(c)
            })
            .collect();
        let cols: Vec<Scalar> = basis.iter().map(|b| self.mul_impl(b)).collect();
        let m: Vec<Vec<Padic>> = (0..d)
            .map(|r| cols.iter().map(|col| col.c[r].clone()).collect())
            .collect();
        let mut rhs = vec![Padic::zero(self.prime()); d];
        rhs[0] = Padic::one(self.prime(), self.field.precision());
        let y = solve_small(m, rhs).ok_or(Error::DivisionByZero)?;
        Ok(self.field.from_components(y))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root in the base field, by Hensel lifting.
    pub fn sqrt(&self) -> Result<Scalar> {
        let a = self.to_base().ok_or(Error::NotBaseRational)?;
        if !self.field.is_base() {
            return Err(Error::NotBaseRational);
        }
        Ok(self.field.from_padic(a.sqrt()?))
    }
}

/// Gaussian elimination over `Q_p` with maximal-norm pivots, for the tiny
/// systems of extension arithmetic.
fn solve_small(mut m: Vec<Vec<Padic>>, mut rhs: Vec<Padic>) -> Option<Vec<Padic>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].valuation())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].inv().ok()?;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let t = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
            rhs[r] = rhs[r].sub(&f.mul(&rhs[col]));
        }
    }
    (0..n).map(|i| rhs[i].checked_div(&m[i][i]).ok()).collect()
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = self.to_base() {
            return write!(f, "{a}");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})*t")?,
                _ => write!(f, "({a})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.zip(rhs, Padic::add)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.zip(rhs, Padic::sub)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.map(Padic::neg)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(f: &Field, n: i64, d: i64) -> Scalar {
        f.from_rational(&BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(Field::qp(2).unwrap_err(), Error::EvenPrime(2));
        assert_eq!(Field::qp(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn base_norms() {
        let f = Field::qp(5).unwrap();
        assert_eq!(f.from_i64(5).norm(), Norm::p_pow_neg(1));
        assert_eq!(f.zero().norm(), Norm::ZERO);
        assert_eq!(q(&f, 1, 25).norm(), Norm::from_int_valuation(-2));
        assert_eq!(q(&f, 1, 25).norm().to_f64(5), 25.0);
    }

    #[test]
    fn ramified_norm_has_half_exponents() {
        let f = Field::qp(7).unwrap();
        let g = f.extend(&sample_extensions(7)[1]).unwrap();
        let pi = g.generator().unwrap();
        assert_eq!(pi.valuation(), Some(Ratio::new(1, 2)));
        assert_eq!(&pi * &pi, g.from_i64(7));
        assert_eq!(pi.inv().unwrap().valuation(), Some(Ratio::new(-1, 2)));
    }

    #[test]
    fn extension_arithmetic_is_a_field() {
        let f = Field::qp(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ext in sample_extensions(7) {
            let g = f.extend(&ext).unwrap();
            for _ in 0..20 {
                let x = g.random_integral(&mut rng);
                let y = g.random_integral(&mut rng);
                if x.is_zero() {
                    continue;
                }
                let xi = x.inv().unwrap();
                assert!((&x * &xi).is_one(), "{ext}: {x}");
                assert_eq!(x.norm().mul(y.norm()), (&x * &y).norm());
                assert!((&x + &y).norm() <= x.norm().max(y.norm()));
            }
        }
    }

    #[test]
    fn guard_is_enforced() {
        let f = Field::with_precision(7, 12, 8).unwrap();
        let a = f.one();
        let b = &a + &f.p_pow(6);
        let d = field_op(&b, &a, Op::Sub);
        assert!(matches!(d, Err(Error::PrecisionExhausted(_))));
        assert_eq!(field_op(&a, &f.zero(), Op::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("-3/6"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(
            parse_rational("12"),
            Some(BigRational::from_integer(12.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
