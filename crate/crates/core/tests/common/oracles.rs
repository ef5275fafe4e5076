//! Brute-force reference computations, independent of the main algorithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ultranorm::{Algebra, AlgebraSpec, Error};

pub type Q = BigRational;

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Structure constants over the rationals, read straight from a spec.
pub struct RatAlgebra {
    pub dim: usize,
    table: Vec<Vec<Vec<Q>>>,
}

impl RatAlgebra {
    pub fn from_spec(spec: &AlgebraSpec) -> RatAlgebra {
        let n = spec.dim;
        let mut table = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, j, k, c) in &spec.table {
            table[*i][*j][*k] += &c.0;
        }
        let mut a = RatAlgebra { dim: n, table };
        if spec.unit.is_none() {
            // adjoin 1 as the last basis vector
            let m = n + 1;
            let mut t = vec![vec![vec![Q::zero(); m]; m]; m];
            for i in 0..n {
                for j in 0..n {
                    t[i][j][..n].clone_from_slice(&a.table[i][j]);
                }
            }
            for i in 0..m {
                t[i][n][i] = Q::one();
                t[n][i][i] = Q::one();
            }
            a = RatAlgebra { dim: m, table: t };
        }
        a
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &c * t;
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    /// Column `j` is `x e_j`.
    fn left_regular(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let cols: Vec<Vec<Q>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| cols[c][r].clone()).collect())
            .collect()
    }
}

pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

/// Reduced row echelon basis of the row space.
pub fn rref(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Null space `{x : rows · x = 0}`.
pub fn kernel(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let e = rref(rows);
    let pivots: Vec<usize> = e
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (row, &pc) in e.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

fn combine(basis: &[Vec<Q>], c: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (b, ci) in basis.iter().zip(c) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += ci * x;
        }
    }
    out
}

/// Coefficient of `t` in `det(I + t M)`, by interpolation at `t = 0..=n`.
fn linear_coefficient(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let values: Vec<Q> = (0..=n)
        .map(|t| {
            let tq = qi(t as i64);
            let shifted = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let id = if i == j { Q::one() } else { Q::zero() };
                            id + &tq * &m[i][j]
                        })
                        .collect()
                })
                .collect();
            det(shifted)
        })
        .collect();
    // Vandermonde solve for the coefficients
    let rows: Vec<Vec<Q>> = (0..=n)
        .map(|t| {
            let mut row: Vec<Q> = (0..=n).map(|k| qi(t as i64).pow(k as i32)).collect();
            row.push(values[t].clone());
            row
        })
        .collect();
    let e = rref(&rows);
    e[1][n + 1].clone()
}

fn nilpotent(m: &[Vec<Q>]) -> bool {
    let n = m.len();
    let mut p = m.to_vec();
    for _ in 0..n {
        if p.iter().flatten().all(Zero::is_zero) {
            return true;
        }
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |acc, k| acc + &p[i][k] * &m[k][j]))
                    .collect()
            })
            .collect();
    }
    p.iter().flatten().all(Zero::is_zero)
}

/// The radical as `{x : 1 + y x invertible for all y}`, computed in exact
/// rationals. Each probe `y` contributes the linear condition that the
/// `t`-coefficient of `det(I + t L_{yx})` vanish; the joint kernel is cut
/// down to a two-sided ideal and checked for nilpotency of every `L_{yx}`.
pub fn brute_radical(spec: &AlgebraSpec) -> Vec<Vec<Q>> {
    let n = spec.dim;
    assert!(n <= 4, "oracle is for dimension at most 4");
    let h = RatAlgebra::from_spec(spec);
    let m = h.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5);
    let mut probes: Vec<Vec<Q>> = (0..m).map(|i| h.basis(i)).collect();
    for _ in 0..m + 4 {
        probes.push((0..m).map(|_| qi(rng.gen_range(-5..=5))).collect());
    }
    let rows: Vec<Vec<Q>> = probes
        .iter()
        .map(|y| {
            (0..n)
                .map(|i| linear_coefficient(&h.left_regular(&h.mul(y, &h.basis(i)))))
                .collect()
        })
        .collect();
    let mut space = rref(&kernel(&rows, n));
    let lift = |v: &[Q]| {
        let mut w = v.to_vec();
        w.resize(m, Q::zero());
        w
    };
    loop {
        // x in space with e_i x and x e_i in space for every i
        let k = space.len();
        if k == 0 {
            break;
        }
        let eq = kernel(&space, n);
        let mut cond = Vec::new();
        for i in 0..n {
            let e = lift(&h.basis(i)[..n]);
            for side in 0..2 {
                let images: Vec<Vec<Q>> = space
                    .iter()
                    .map(|b| {
                        let b = lift(b);
                        let p = if side == 0 {
                            h.mul(&e, &b)
                        } else {
                            h.mul(&b, &e)
                        };
                        p[..n].to_vec()
                    })
                    .collect();
                for f in &eq {
                    cond.push(
                        images
                            .iter()
                            .map(|im| im.iter().zip(f).fold(Q::zero(), |a, (x, y)| a + x * y))
                            .collect(),
                    );
                }
            }
        }
        let keep = kernel(&cond, k);
        if keep.len() == k {
            break;
        }
        space = rref(
            &keep
                .iter()
                .map(|c| combine(&space, c, n))
                .collect::<Vec<_>>(),
        );
    }
    for x in &space {
        for y in &probes {
            assert!(
                nilpotent(&h.left_regular(&h.mul(y, &lift(x)))),
                "oracle candidate is not quasi-regular"
            );
        }
    }
    space
}

pub const RESIDUE_BUDGET: u64 = 20_000;

/// All solutions of `e^2 = e` in the residue algebra, by enumerating every
/// vector over `F_p`. Needs integral structure constants.
pub fn brute_residue_idempotents(a: &Algebra) -> Result<Vec<Vec<u64>>, Error> {
    let p = a.field().prime() as u64;
    let n = a.dim();
    let total = p.checked_pow(n as u32).filter(|&t| t <= RESIDUE_BUDGET);
    let total = total.ok_or(Error::BudgetExceeded)?;
    let mut table = vec![vec![vec![0u64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.product_terms(i, j) {
                table[i][j][*k] = c.residue().ok_or(Error::NotResidueIdempotent)?;
            }
        }
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut e = vec![0u64; n];
        let mut c = code;
        for x in e.iter_mut() {
            *x = c % p;
            c /= p;
        }
        let mut sq = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let f = e[i] * e[j] % p;
                if f == 0 {
                    continue;
                }
                for k in 0..n {
                    sq[k] = (sq[k] + f * table[i][j][k]) % p;
                }
            }
        }
        if sq == e {
            out.push(e);
        }
    }
    Ok(out)
}
