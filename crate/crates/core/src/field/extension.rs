use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    UnramifiedQuadratic,
    RamifiedQuadratic,
    UnramifiedCubic,
}

/// A simple extension `Q_p[x]/(f)` with `f` monic, integral, of degree at
/// most 3 and without a root in `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    prime: u32,
    /// Coefficients of `f` from the constant term up; the last entry is 1.
    modulus: Vec<i64>,
    kind: ExtensionKind,
}

impl ExtensionField {
    pub fn new(prime: u32, modulus: Vec<i64>, kind: ExtensionKind) -> ExtensionField {
        assert_eq!(
            modulus.last(),
            Some(&1),
            "defining polynomial must be monic"
        );
        ExtensionField {
            prime,
            modulus,
            kind,
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    pub fn ramification_index(&self) -> u32 {
        match self.kind {
            ExtensionKind::RamifiedQuadratic => 2,
            _ => 1,
        }
    }

    pub fn residue_degree(&self) -> u32 {
        self.degree() as u32 / self.ramification_index()
    }

    /// Whether `f` has a root in `Z_p` (equivalently `Q_p`, as `f` is monic
    /// and integral).
    pub fn has_base_root(&self) -> bool {
        let f: Vec<BigInt> = self.modulus.iter().map(|&c| BigInt::from(c)).collect();
        has_padic_root(&f, self.prime, 24)
    }

    /// Human-readable defining polynomial, e.g. `x^2 - 3`.
    pub fn label(&self) -> String {
        poly_label(&self.modulus)
    }
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}[x]/({})", self.prime, self.label())
    }
}

fn poly_label(c: &[i64]) -> String {
    let mut out = String::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mag = a.unsigned_abs();
        if out.is_empty() {
            if a < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if a < 0 { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if mono.is_empty() || mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    out
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// `f(r + p*y)` as a polynomial in `y`.
fn shift_scale(f: &[BigInt], r: &BigInt, p: &BigInt) -> Vec<BigInt> {
    // Horner in the polynomial ring: g = ((c_d)(r + p y) + c_{d-1})(r + p y) + ...
    let mut g: Vec<BigInt> = vec![];
    for c in f.iter().rev() {
        let mut next = vec![BigInt::zero(); g.len() + 1];
        for (i, gi) in g.iter().enumerate() {
            next[i] += gi * r;
            next[i + 1] += gi * p;
        }
        next[0] += c;
        g = next;
    }
    g
}

/// Root search in `Z_p`: residue roots that are simple lift by Hensel's
/// lemma; multiple residue roots are refined by substituting `x = r + p*y`.
fn has_padic_root(f: &[BigInt], p: u32, depth: u32) -> bool {
    let pb = BigInt::from(p);
    if f.iter().all(|c| c.is_zero()) {
        return true;
    }
    let df = derivative(f);
    for r in 0..p {
        let rb = BigInt::from(r);
        if !eval_mod(f, &rb, &pb).is_zero() {
            continue;
        }
        if !eval_mod(&df, &rb, &pb).is_zero() {
            return true;
        }
        if depth == 0 {
            // undecided after many refinements; treat as a root
            return true;
        }
        let mut g = shift_scale(f, &rb, &pb);
        let content = g
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut v = 0;
                let mut c = c.clone();
                while c.is_multiple_of(&pb) {
                    c /= &pb;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(0);
        let scale = pb.pow(content);
        for c in g.iter_mut() {
            *c = &*c / &scale;
        }
        if has_padic_root(&g, p, depth - 1) {
            return true;
        }
    }
    false
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut base) = (1u128, b as u128 % m as u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Least quadratic non-residue modulo the odd prime `p`.
pub fn least_nonresidue(p: u32) -> u32 {
    let p64 = p as u64;
    (2..p)
        .find(|&u| pow_mod(u as u64, (p64 - 1) / 2, p64) == p64 - 1)
        .expect("odd primes have non-residues")
}

/// The deterministic extension sample used for core radicals: `x^2 - u`
/// with `u` the least non-residue, `x^2 - p`, and the first `x^3 + a x + b`
/// (ordered by `a`, then `b`) without a root modulo `p`.
pub fn sample_extensions(prime: u32) -> Vec<ExtensionField> {
    let u = least_nonresidue(prime) as i64;
    let p = prime as i64;
    let cubic = (0..p)
        .flat_map(|a| (1..p).map(move |b| (a, b)))
        .find(|&(a, b)| (0..p).all(|x| (x * x % p * x + a * x + b).rem_euclid(p) != 0))
        .expect("an irreducible cubic exists over every prime field");
    vec![
        ExtensionField::new(prime, vec![-u, 0, 1], ExtensionKind::UnramifiedQuadratic),
        ExtensionField::new(prime, vec![-p, 0, 1], ExtensionKind::RamifiedQuadratic),
        ExtensionField::new(
            prime,
            vec![cubic.1, cubic.0, 0, 1],
            ExtensionKind::UnramifiedCubic,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_for_seven_and_five() {
        let s7 = sample_extensions(7);
        let labels: Vec<_> = s7.iter().map(|e| e.label()).collect();
        assert_eq!(labels, ["x^2 - 3", "x^2 - 7", "x^3 + 2"]);
        let s5 = sample_extensions(5);
        let labels: Vec<_> = s5.iter().map(|e| e.label()).collect();
        assert_eq!(labels, ["x^2 - 2", "x^2 - 5", "x^3 + x + 1"]);
    }

    #[test]
    fn sampled_polynomials_are_rootless() {
        for p in [3, 5, 7, 11, 13] {
            for e in sample_extensions(p) {
                assert!(!e.has_base_root(), "{e}");
                assert_eq!(
                    e.ramification_index() * e.residue_degree(),
                    e.degree() as u32
                );
            }
        }
    }

    #[test]
    fn root_search_sees_lifts() {
        // x^2 - 2 has a root in Q_7, x^2 - 49*3 does not, x^2 - 49 does
        let has = |c: Vec<i64>| {
            ExtensionField::new(7, c, ExtensionKind::UnramifiedQuadratic).has_base_root()
        };
        assert!(has(vec![-2, 0, 1]));
        assert!(!has(vec![-147, 0, 1]));
        assert!(has(vec![-49, 0, 1]));
    }
}
