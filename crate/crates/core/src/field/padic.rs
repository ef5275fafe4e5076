//! Capped-relative p-adic numbers.
//!
//! An element is `p^val * unit` where `unit` is known modulo `p^prec` and is
//! coprime to `p`. Addition tracks cancellation: the absolute precision of a
//! sum is the smaller of the two summands', so digits that cancel are
//! dropped from the relative precision instead of being invented. A sum that
//! cancels every known digit is zero.

use std::cell::RefCell;
use std::cmp::min;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::norm::Norm;
use crate::error::{Error, Result};

const ZERO_VAL: i64 = i64::MAX;

thread_local! {
    static POWERS: RefCell<HashMap<(u32, u32), Rc<BigUint>>> = RefCell::new(HashMap::new());
}

/// `p^k`, memoised per thread.
pub(crate) fn ppow(p: u32, k: u32) -> Rc<BigUint> {
    POWERS.with(|cache| {
        cache
            .borrow_mut()
            .entry((p, k))
            .or_insert_with(|| Rc::new(BigUint::from(p).pow(k)))
            .clone()
    })
}

#[derive(Clone, Debug)]
pub struct Padic {
    prime: u32,
    val: i64,
    unit: BigUint,
    prec: u32,
}

impl Padic {
    pub fn zero(prime: u32) -> Padic {
        Padic {
            prime,
            val: ZERO_VAL,
            unit: BigUint::zero(),
            prec: 0,
        }
    }

    pub fn one(prime: u32, prec: u32) -> Padic {
        Padic {
            prime,
            val: 0,
            unit: BigUint::one(),
            prec,
        }
    }

    /// Builds `p^val * unit` with `unit` reduced modulo `p^prec`; the unit is
    /// normalised if `p` divides it.
    pub fn from_parts(prime: u32, val: i64, unit: BigUint, prec: u32) -> Padic {
        let m = ppow(prime, prec);
        Self::normalize(prime, val, unit % &*m, prec)
    }

    fn normalize(prime: u32, val: i64, mut s: BigUint, width: u32) -> Padic {
        if s.is_zero() || width == 0 {
            return Padic::zero(prime);
        }
        let pb = BigUint::from(prime);
        let mut shift = 0u32;
        loop {
            let (q, r) = s.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            s = q;
            shift += 1;
        }
        Padic {
            prime,
            val: val + shift as i64,
            unit: s,
            prec: width - shift,
        }
    }

    pub fn from_bigint(prime: u32, prec: u32, n: &BigInt) -> Padic {
        if n.is_zero() {
            return Padic::zero(prime);
        }
        let pb = BigInt::from(prime);
        let mut m = n.clone();
        let mut v = 0i64;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            v += 1;
        }
        let modulus = BigInt::from((*ppow(prime, prec)).clone());
        let u = m.mod_floor(&modulus);
        Padic {
            prime,
            val: v,
            unit: u.to_biguint().expect("mod_floor is non-negative"),
            prec,
        }
    }

    pub fn from_i64(prime: u32, prec: u32, n: i64) -> Padic {
        Self::from_bigint(prime, prec, &BigInt::from(n))
    }

    pub fn from_rational(prime: u32, prec: u32, q: &BigRational) -> Padic {
        let num = Self::from_bigint(prime, prec, q.numer());
        let den = Self::from_bigint(prime, prec, q.denom());
        num.checked_div(&den)
            .expect("rational denominators are nonzero")
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.val == ZERO_VAL
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Relative precision: number of known significant digits.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Absolute precision `val + prec`, `None` for the exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val + self.prec as i64)
    }

    pub fn unit_part(&self) -> &BigUint {
        &self.unit
    }

    pub fn norm(&self) -> Norm {
        match self.valuation() {
            None => Norm::ZERO,
            Some(v) => Norm::from_valuation(Ratio::from_integer(v)),
        }
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.unit.is_one()
    }

    /// Drops digits beyond `prec` significant ones.
    pub fn truncate(&self, prec: u32) -> Padic {
        if self.is_zero() || prec >= self.prec {
            return self.clone();
        }
        Self::from_parts(self.prime, self.val, self.unit.clone(), prec)
    }

    /// Caps the absolute precision at `k`: digits at `p^k` and beyond are
    /// forgotten.
    pub fn truncate_abs(&self, k: i64) -> Padic {
        match self.valuation() {
            None => self.clone(),
            Some(v) if v >= k => Padic::zero(self.prime),
            Some(v) => self.truncate(min(self.prec as i64, k - v) as u32),
        }
    }

    pub fn neg(&self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.prime, self.prec);
        Padic {
            prime: self.prime,
            val: self.val,
            unit: &*m - &self.unit,
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Padic) -> Padic {
        debug_assert_eq!(self.prime, other.prime);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = if self.val <= other.val {
            (self, other)
        } else {
            (other, self)
        };
        let abs = min(a.val + a.prec as i64, b.val + b.prec as i64);
        if b.val >= abs {
            return a.clone();
        }
        let width = (abs - a.val) as u32;
        let m = ppow(a.prime, width);
        let shift = (b.val - a.val) as u32;
        let s = (&a.unit + &b.unit * &*ppow(a.prime, shift)) % &*m;
        Self::normalize(a.prime, a.val, s, width)
    }

    pub fn sub(&self, other: &Padic) -> Padic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Padic) -> Padic {
        debug_assert_eq!(self.prime, other.prime);
        if self.is_zero() || other.is_zero() {
            return Padic::zero(self.prime);
        }
        let prec = min(self.prec, other.prec);
        let m = ppow(self.prime, prec);
        Padic {
            prime: self.prime,
            val: self.val + other.val,
            unit: (&self.unit * &other.unit) % &*m,
            prec,
        }
    }

    pub fn inv(&self) -> Result<Padic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = ppow(self.prime, self.prec);
        let unit = self
            .unit
            .modinv(&m)
            .expect("units are invertible modulo p^k");
        Ok(Padic {
            prime: self.prime,
            val: -self.val,
            unit,
            prec: self.prec,
        })
    }

    pub fn checked_div(&self, other: &Padic) -> Result<Padic> {
        Ok(self.mul(&other.inv()?))
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        Padic {
            val: self.val + k,
            ..self.clone()
        }
    }

    /// Residue class modulo `p` of an integral element.
    pub fn residue(&self) -> Option<u64> {
        match self.valuation() {
            None => Some(0),
            Some(v) if v > 0 => Some(0),
            Some(0) => (&self.unit % BigUint::from(self.prime)).to_u64(),
            Some(_) => None,
        }
    }

    /// The integer `p^val * unit` for integral elements (`unit` taken as its
    /// least non-negative representative).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self.valuation() {
            None => Some(BigInt::zero()),
            Some(v) if v >= 0 => Some(BigInt::from(&self.unit * &*ppow(self.prime, v as u32))),
            Some(_) => None,
        }
    }

    /// Smallest-height rational agreeing with `self` to its precision, if one
    /// with numerator and denominator below `sqrt(p^prec / 2)` exists.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let m = BigInt::from((*ppow(self.prime, self.prec)).clone());
        let bound = (&m / BigInt::from(2)).sqrt();
        let (mut r0, mut r1) = (m.clone(), BigInt::from(self.unit.clone()));
        let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
        while r1 > bound {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            let t2 = &t0 - &q * &t1;
            r0 = std::mem::replace(&mut r1, r2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if t1.is_zero() || t1.abs() > bound || !t1.gcd(&m).is_one() {
            return None;
        }
        let unit = BigRational::new(r1, t1);
        let pw = BigRational::from_integer(BigInt::from(
            (*ppow(self.prime, self.val.unsigned_abs() as u32)).clone(),
        ));
        Some(if self.val >= 0 { unit * pw } else { unit / pw })
    }

    /// Uniformly random element of `Z_p` modulo `p^prec`.
    pub fn random_integral<R: Rng + ?Sized>(prime: u32, prec: u32, rng: &mut R) -> Padic {
        let mut n = BigUint::zero();
        for _ in 0..prec {
            n = n * BigUint::from(prime) + BigUint::from(rng.gen_range(0..prime));
        }
        Self::from_parts(prime, 0, n, prec)
    }

    /// Random unit of `Z_p`.
    pub fn random_unit<R: Rng + ?Sized>(prime: u32, prec: u32, rng: &mut R) -> Padic {
        loop {
            let x = Self::random_integral(prime, prec, rng);
            if x.valuation() == Some(0) {
                return x;
            }
        }
    }

    /// Square root by Newton iteration on the unit part.
    ///
    /// The returned root has unit part congruent to the smaller of the two
    /// residue roots modulo `p`.
    pub fn sqrt(&self) -> Result<Padic> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.val % 2 != 0 {
            return Err(Error::OddValuation(self.val));
        }
        let p = self.prime;
        let u0 = (&self.unit % BigUint::from(p)).to_u64().unwrap();
        let r0 = residue_sqrt(u0, p as u64).ok_or(Error::NonResidue(p))?;
        let m = ppow(p, self.prec);
        let m = &*m;
        let two_inv = BigUint::from(2u32).modinv(m).unwrap();
        let mut r = BigUint::from(r0);
        // quadratic convergence: 2^k >= prec after ~log2(prec) steps
        let mut steps = 0;
        let mut correct = 1u32;
        while correct < self.prec {
            let rinv = r.modinv(m).unwrap();
            r = ((&r + &self.unit * rinv) % m * &two_inv) % m;
            correct *= 2;
            steps += 1;
            debug_assert!(steps < 64);
        }
        debug_assert!((&r * &r % m) == self.unit);
        Ok(Padic {
            prime: p,
            val: self.val / 2,
            unit: r,
            prec: self.prec,
        })
    }

    /// Whether `self` is a square in `Q_p`.
    pub fn is_square(&self) -> bool {
        self.sqrt().is_ok()
    }
}

/// Smaller square root of `a` modulo the odd prime `p`, if `a` is a nonzero
/// quadratic residue.
pub fn residue_sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    if p < 1 << 16 {
        return (1..=p / 2).find(|r| r * r % p == a);
    }
    // Tonelli-Shanks for large primes
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u128;
        let mut base = b as u128 % p as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u128;
            }
            base = base * base % p as u128;
            e >>= 1;
        }
        b = acc as u64;
        b
    };
    if pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow(z, (p - 1) / 2) == p - 1)?;
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut m, mut c, mut t, mut r) = (s, pow(z, q), pow(a, q), pow(a, q.div_ceil(2)));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = pow(c, 1 << (m - i - 1));
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r.min(p - r))
}

impl PartialEq for Padic {
    /// Equality at the precision both operands share.
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", q);
        }
        write!(
            f,
            "{}*{}^{} + O({}^{})",
            self.unit,
            self.prime,
            self.val,
            self.prime,
            self.val + self.prec as i64
        )
    }
}
