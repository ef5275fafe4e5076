//! Polynomials and linear algebra over `F_p`.
//!
//! Polynomials are coefficient vectors from the constant term up, with no
//! trailing zeros (the zero polynomial is empty).

pub type FpPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `f`.
pub fn rem(a: &[u64], f: &[u64], p: u64) -> FpPoly {
    let df = degree(f).expect("nonzero modulus");
    let lead_inv = inv_mod(f[df], p);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        for (i, &fi) in f.iter().enumerate().take(df + 1) {
            let k = dr - df + i;
            r[k] = (r[k] + p - mulmod(c, fi, p)) % p;
        }
        r = trim(r);
    }
    r
}

pub fn pow_rem(base: &[u64], mut e: u64, f: &[u64], p: u64) -> FpPoly {
    let mut r = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), f, p);
        }
        b = rem(&mul(&b, &b, p), f, p);
        e >>= 1;
    }
    r
}

/// Null space of a matrix over `F_p`, one vector per free column.
pub fn kernel(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % p).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][free]) % p;
            }
            v
        })
        .collect()
}

/// Basis of `{h : h^p = h mod f}`; its size is the number of distinct
/// irreducible factors of `f`.
pub fn berlekamp_basis(f: &[u64], p: u64) -> Vec<FpPoly> {
    let d = degree(f).expect("nonzero modulus");
    if d == 0 {
        return vec![];
    }
    // column i holds t^(ip) mod f, minus the identity
    let cols: Vec<FpPoly> = (0..d)
        .map(|i| {
            let mut t = vec![0u64; i + 1];
            t[i] = 1;
            pow_rem(&t, p, f, p)
        })
        .collect();
    let rows: Vec<Vec<u64>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let v = cols[c].get(r).copied().unwrap_or(0);
                    (v + p - (r == c) as u64) % p
                })
                .collect()
        })
        .collect();
    let mut basis: Vec<FpPoly> = kernel(&rows, d, p).into_iter().map(trim).collect();
    basis.sort_by_key(|h| degree(h));
    basis
}

/// A nontrivial idempotent of `F_p[t]/(f)`, if `f` has two distinct
/// irreducible factors.
pub fn split_idempotent(f: &[u64], p: u64) -> Option<FpPoly> {
    let basis = berlekamp_basis(f, p);
    let b = basis.iter().find(|h| degree(h).is_some_and(|d| d > 0))?;
    let one = rem(&[1], f, p);
    for c in 0..p {
        let shifted = sub(b, &[c], p);
        let e = sub(&one, &pow_rem(&shifted, p - 1, f, p), p);
        if !e.is_empty() && e != one {
            return Some(e);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_counts() {
        // (t-1)(t-2) over F_7
        assert_eq!(berlekamp_basis(&[2, 4, 1], 7).len(), 2);
        // t^2 - 3 is irreducible over F_7
        assert_eq!(berlekamp_basis(&[4, 0, 1], 7).len(), 1);
        // (t-1)^2 has one distinct factor
        assert_eq!(berlekamp_basis(&[1, 5, 1], 7).len(), 1);
    }

    #[test]
    fn split_gives_idempotent() {
        let f = [2u64, 4, 1];
        let e = split_idempotent(&f, 7).unwrap();
        assert_eq!(rem(&mul(&e, &e, 7), &f, 7), e);
        assert!(split_idempotent(&[4, 0, 1], 7).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&[vec![1, 2, 3]], 3, 5);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 5, 0);
        }
    }
}
