//! Standard algebras, as exact specs and as built algebras.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::field::Field;
use crate::spec::{AlgebraSpec, Rat, RatMatrix};

fn rat_identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| Rat::int((i == j) as i64)).collect())
        .collect()
}

fn unit_matrix(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = vec![vec![Rat::int(0); n]; n];
    m[i][j] = Rat::int(1);
    m
}

fn empty(name: &str, prime: u32, dim: usize) -> AlgebraSpec {
    AlgebraSpec {
        name: name.to_string(),
        prime,
        precision: None,
        dim,
        basis: vec![],
        table: vec![],
        unit: None,
        involution: None,
        form: None,
        realization: None,
    }
}

/// `M_n(Q_p)` on the basis `E_ij` (row-major), with transpose and `S = I`.
pub fn matrix_spec(prime: u32, n: usize) -> AlgebraSpec {
    let idx = |i: usize, j: usize| i * n + j;
    let mut s = empty(&format!("M_{n}(Q_{prime})"), prime, n * n);
    s.basis = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                s.table.push((idx(i, j), idx(j, l), idx(i, l), Rat::int(1)));
            }
        }
    }
    s.unit = Some(
        (0..n * n)
            .map(|k| Rat::int((k / n == k % n) as i64))
            .collect(),
    );
    s.involution = Some(
        (0..n * n)
            .map(|k| {
                let t = idx(k % n, k / n);
                (0..n * n).map(|m| Rat::int((m == t) as i64)).collect()
            })
            .collect(),
    );
    s.realization = Some((0..n * n).map(|k| unit_matrix(n, k / n, k % n)).collect());
    s.form = Some(rat_identity(n));
    s
}

/// Upper triangular `n x n` matrices on the basis `E_ij`, `i <= j`.
pub fn upper_triangular_spec(prime: u32, n: usize) -> AlgebraSpec {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    pattern_spec(&format!("T_{n}(Q_{prime})"), prime, n, &pairs, true)
}

/// Span of the matrix units `E_ij` for the given pairs, which must be
/// closed under `(i, j), (j, l) -> (i, l)`.
fn pattern_spec(
    name: &str,
    prime: u32,
    n: usize,
    pairs: &[(usize, usize)],
    with_unit: bool,
) -> AlgebraSpec {
    let mut s = empty(name, prime, pairs.len());
    s.basis = pairs
        .iter()
        .map(|(i, j)| format!("E{}{}", i + 1, j + 1))
        .collect();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(j2, l)) in pairs.iter().enumerate() {
            if j == j2 {
                let c = pairs
                    .iter()
                    .position(|&q| q == (i, l))
                    .expect("closed pattern");
                s.table.push((a, b, c, Rat::int(1)));
            }
        }
    }
    if with_unit {
        s.unit = Some(
            pairs
                .iter()
                .map(|(i, j)| Rat::int((i == j) as i64))
                .collect(),
        );
    }
    s.realization = Some(pairs.iter().map(|&(i, j)| unit_matrix(n, i, j)).collect());
    s
}

/// `Q_p[x]/(f)` on the basis `1, x, ..., x^{d-1}`, where `f` is monic and
/// given by its coefficients from the constant term up (leading 1 omitted).
pub fn truncated_poly_spec(prime: u32, lower: &[Rat], name: &str) -> AlgebraSpec {
    let d = lower.len();
    let mut s = empty(name, prime, d);
    s.basis = (0..d)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    // reduce x^m, m < 2d - 1, to the basis
    let mut powers: Vec<Vec<BigRational>> = Vec::new();
    for m in 0..2 * d.max(1) - 1 {
        let v = if m < d {
            let mut v = vec![BigRational::zero(); d];
            v[m] = BigRational::one();
            v
        } else {
            // x^m = x * x^{m-1}
            let prev = &powers[m - 1];
            let mut v = vec![BigRational::zero(); d];
            for k in 0..d - 1 {
                v[k + 1] = prev[k].clone();
            }
            let top = prev[d - 1].clone();
            for k in 0..d {
                v[k] -= &top * &lower[k].0;
            }
            v
        };
        powers.push(v);
    }
    for i in 0..d {
        for j in 0..d {
            for (k, c) in powers[i + j].iter().enumerate() {
                if !c.is_zero() {
                    s.table.push((i, j, k, Rat(c.clone())));
                }
            }
        }
    }
    let mut u = vec![Rat::int(0); d];
    u[0] = Rat::int(1);
    s.unit = Some(u);
    s.involution = Some(rat_identity(d));
    s
}

/// `Q_p[x]/(x^2)`.
pub fn dual_numbers_spec(prime: u32) -> AlgebraSpec {
    truncated_poly_spec(
        prime,
        &[Rat::int(0), Rat::int(0)],
        &format!("Q_{prime}[x]/(x^2)"),
    )
}

/// The quaternion algebra `(a, b)` on `1, i, j, ij` with `i^2 = a`,
/// `j^2 = b`, `ji = -ij`, conjugation as involution and `S = I` on the left
/// regular representation.
pub fn quaternion_spec(prime: u32, a: i64, b: i64) -> AlgebraSpec {
    let mut s = empty(&format!("({a},{b})/Q_{prime}"), prime, 4);
    s.basis = vec!["1".into(), "i".into(), "j".into(), "ij".into()];
    let mut put = |x: usize, y: usize, k: usize, c: i64| s.table.push((x, y, k, Rat::int(c)));
    for x in 0..4 {
        put(0, x, x, 1);
        if x > 0 {
            put(x, 0, x, 1);
        }
    }
    put(1, 1, 0, a);
    put(2, 2, 0, b);
    put(3, 3, 0, -a * b);
    put(1, 2, 3, 1);
    put(2, 1, 3, -1);
    put(1, 3, 2, a);
    put(3, 1, 2, -a);
    put(2, 3, 1, -b);
    put(3, 2, 1, b);
    s.unit = Some(vec![Rat::int(1), Rat::int(0), Rat::int(0), Rat::int(0)]);
    s.involution = Some(
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        Rat::int(if i != j {
                            0
                        } else if i == 0 {
                            1
                        } else {
                            -1
                        })
                    })
                    .collect()
            })
            .collect(),
    );
    s.form = Some(rat_identity(4));
    s
}

/// All products zero.
pub fn zero_spec(prime: u32, dim: usize) -> AlgebraSpec {
    empty(&format!("zero algebra of dimension {dim}"), prime, dim)
}

fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m) = (a.len(), b.len());
    (0..n + m)
        .map(|i| {
            (0..n + m)
                .map(|j| {
                    if i < n && j < n {
                        a[i][j].clone()
                    } else if i >= n && j >= n {
                        b[i - n][j - n].clone()
                    } else {
                        Rat::int(0)
                    }
                })
                .collect()
        })
        .collect()
}

/// `A ⊕ B` with blockwise products, involution, realization and form
/// (each extra structure kept only when both summands carry it).
pub fn direct_sum_spec(a: &AlgebraSpec, b: &AlgebraSpec) -> AlgebraSpec {
    assert_eq!(a.prime, b.prime, "summands over different primes");
    let n = a.dim;
    let mut s = empty(&format!("{} + {}", a.name, b.name), a.prime, a.dim + b.dim);
    if !a.basis.is_empty() || !b.basis.is_empty() {
        s.basis = (0..a.dim)
            .map(|i| format!("a.{}", a.label(i)))
            .chain((0..b.dim).map(|i| format!("b.{}", b.label(i))))
            .collect();
    }
    s.table = a.table.clone();
    s.table.extend(
        b.table
            .iter()
            .map(|(i, j, k, c)| (i + n, j + n, k + n, c.clone())),
    );
    if let (Some(x), Some(y)) = (&a.unit, &b.unit) {
        s.unit = Some(x.iter().chain(y).cloned().collect());
    }
    if let (Some(x), Some(y)) = (&a.involution, &b.involution) {
        s.involution = Some(block_diag(x, y));
    }
    let real = |x: &AlgebraSpec| -> Vec<RatMatrix> {
        match &x.realization {
            Some(r) => r.clone(),
            None => left_regular_rat(x),
        }
    };
    let (ra, rb) = (real(a), real(b));
    let (ma, mb) = (ra[0].len(), rb[0].len());
    let zero = |m: usize| vec![vec![Rat::int(0); m]; m];
    let mut r: Vec<RatMatrix> = ra.iter().map(|x| block_diag(x, &zero(mb))).collect();
    r.extend(rb.iter().map(|y| block_diag(&zero(ma), y)));
    s.realization = Some(r);
    if let (Some(x), Some(y)) = (&a.form, &b.form) {
        s.form = Some(block_diag(x, y));
    }
    s
}

fn left_regular_rat(a: &AlgebraSpec) -> Vec<RatMatrix> {
    let n = a.dim;
    let mut r = vec![vec![vec![BigRational::zero(); n]; n]; n];
    for (i, j, k, c) in &a.table {
        r[*i][*k][*j] += &c.0;
    }
    r.into_iter()
        .map(|m| {
            m.into_iter()
                .map(|row| row.into_iter().map(Rat).collect())
                .collect()
        })
        .collect()
}

fn rat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The same algebra on the basis `f_a = Σ_i T[i][a] e_i`.
pub fn change_basis(a: &AlgebraSpec, t: &[Vec<BigRational>]) -> Option<AlgebraSpec> {
    let n = a.dim;
    let tinv = rat_inverse(t)?;
    // structure constants in dense form
    let mut c = vec![vec![vec![BigRational::zero(); n]; n]; n];
    for (i, j, k, v) in &a.table {
        c[*i][*j][*k] += &v.0;
    }
    let mut s = a.clone();
    s.name = format!("{} (basis changed)", a.name);
    s.basis = vec![];
    s.table = vec![];
    // e_i e_j in the new basis: coordinates T^{-1} applied to c_ij
    let mut cnew = vec![vec![BigRational::zero(); n]; n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if c[i][j][k].is_zero() {
                    continue;
                }
                for cc in 0..n {
                    if !tinv[cc][k].is_zero() {
                        let add = &c[i][j][k] * &tinv[cc][k];
                        cnew[i * n + j][cc] += add;
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let mut acc = vec![BigRational::zero(); n];
            for i in 0..n {
                if t[i][x].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if t[j][y].is_zero() {
                        continue;
                    }
                    let w = &t[i][x] * &t[j][y];
                    for (z, v) in cnew[i * n + j].iter().enumerate() {
                        if !v.is_zero() {
                            acc[z] += &w * v;
                        }
                    }
                }
            }
            for (z, v) in acc.into_iter().enumerate() {
                if !v.is_zero() {
                    s.table.push((x, y, z, Rat(v)));
                }
            }
        }
    }
    let apply_inv = |v: &[BigRational]| -> Vec<BigRational> {
        (0..n)
            .map(|r| (0..n).fold(BigRational::zero(), |acc, k| acc + &tinv[r][k] * &v[k]))
            .collect()
    };
    s.unit = a.unit.as_ref().map(|u| {
        let v: Vec<BigRational> = u.iter().map(|x| x.0.clone()).collect();
        apply_inv(&v).into_iter().map(Rat).collect()
    });
    s.involution = a.involution.as_ref().map(|rows| {
        // rows[i] = coordinates of e_i*; f_a* = Σ_i T[i][a] e_i*
        (0..n)
            .map(|x| {
                let mut v = vec![BigRational::zero(); n];
                for i in 0..n {
                    for k in 0..n {
                        v[k] += &t[i][x] * &rows[i][k].0;
                    }
                }
                apply_inv(&v).into_iter().map(Rat).collect()
            })
            .collect()
    });
    s.realization = a.realization.as_ref().map(|r| {
        let m = r[0].len();
        (0..n)
            .map(|x| {
                (0..m)
                    .map(|p| {
                        (0..m)
                            .map(|q| {
                                Rat((0..n).fold(BigRational::zero(), |acc, i| {
                                    acc + &t[i][x] * &r[i][p][q].0
                                }))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });
    Some(s)
}

/// Seeded random associative algebra of dimension at most `max_dim`, built
/// from matrix-unit patterns, truncated polynomial rings, nilpotent chains
/// and direct sums, then moved to a random integral basis.
pub fn random_spec<R: Rng + ?Sized>(prime: u32, max_dim: usize, rng: &mut R) -> AlgebraSpec {
    let base = loop {
        let s = random_building_block(prime, max_dim, rng);
        if s.dim <= max_dim {
            break s;
        }
    };
    loop {
        let n = base.dim;
        let t: Vec<Vec<BigRational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
                    .collect()
            })
            .collect();
        if let Some(s) = change_basis(&base, &t) {
            return s;
        }
    }
}

fn random_building_block<R: Rng + ?Sized>(prime: u32, max_dim: usize, rng: &mut R) -> AlgebraSpec {
    match rng.gen_range(0..5) {
        0 => {
            // closed pattern of matrix units in the upper triangle of 3x3
            let all: Vec<(usize, usize)> =
                (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).collect();
            loop {
                let k = rng.gen_range(1..=max_dim.min(4));
                let mut pick: Vec<(usize, usize)> = all.choose_multiple(rng, k).cloned().collect();
                loop {
                    let mut grew = false;
                    for a in pick.clone() {
                        for b in pick.clone() {
                            if a.1 == b.0 && !pick.contains(&(a.0, b.1)) {
                                pick.push((a.0, b.1));
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                if pick.len() <= max_dim {
                    pick.sort();
                    return pattern_spec("pattern", prime, 3, &pick, false);
                }
            }
        }
        1 => {
            // product of (x - a)^m and possibly an irreducible-looking quadratic
            let d = rng.gen_range(1..=max_dim.min(4));
            let mut f: Vec<BigRational> = vec![BigRational::one()];
            while f.len() - 1 < d {
                let room = d - (f.len() - 1);
                let factor: Vec<BigRational> = if room >= 2 && rng.gen_bool(0.3) {
                    let u = rng.gen_range(1i64..20);
                    vec![
                        BigRational::from_integer((-u).into()),
                        BigRational::zero(),
                        BigRational::one(),
                    ]
                } else {
                    let a = rng.gen_range(-2i64..=2);
                    vec![BigRational::from_integer((-a).into()), BigRational::one()]
                };
                let mut g = vec![BigRational::zero(); f.len() + factor.len() - 1];
                for (i, x) in f.iter().enumerate() {
                    for (j, y) in factor.iter().enumerate() {
                        g[i + j] += x * y;
                    }
                }
                f = g;
            }
            let lower: Vec<Rat> = f[..d].iter().cloned().map(Rat).collect();
            truncated_poly_spec(prime, &lower, "poly")
        }
        2 => {
            // nilpotent chain x, x^2, ..., x^d without unit
            let d = rng.gen_range(1..=max_dim.min(3));
            let mut s = empty("chain", prime, d);
            for i in 0..d {
                for j in 0..d {
                    if i + j + 1 < d {
                        s.table.push((i, j, i + j + 1, Rat::int(1)));
                    }
                }
            }
            s
        }
        3 if max_dim >= 4 => matrix_spec(prime, 2),
        _ => {
            if max_dim < 2 {
                return zero_spec(prime, 1);
            }
            let d1 = rng.gen_range(1..max_dim);
            let a = random_building_block(prime, d1, rng);
            let b = random_building_block(prime, max_dim - a.dim.min(max_dim - 1), rng);
            let mut s = direct_sum_spec(&a, &b);
            s.realization = None;
            s
        }
    }
}

pub fn matrix_algebra(field: &Field, n: usize) -> Result<Algebra> {
    matrix_spec(field.prime(), n).build_in(field)
}

pub fn upper_triangular(field: &Field, n: usize) -> Result<Algebra> {
    upper_triangular_spec(field.prime(), n).build_in(field)
}

pub fn quaternion_algebra(field: &Field, a: i64, b: i64) -> Result<Algebra> {
    quaternion_spec(field.prime(), a, b).build_in(field)
}

pub fn zero_algebra(field: &Field, dim: usize) -> Result<Algebra> {
    zero_spec(field.prime(), dim).build_in(field)
}

pub fn dual_numbers(field: &Field) -> Result<Algebra> {
    dual_numbers_spec(field.prime()).build_in(field)
}

/// Block-diagonal sum of matrix algebras `M_{n_1} ⊕ M_{n_2} ⊕ ...`.
pub fn block_matrix_spec(prime: u32, sizes: &[usize]) -> AlgebraSpec {
    let mut s = matrix_spec(prime, sizes[0]);
    for &n in &sizes[1..] {
        s = direct_sum_spec(&s, &matrix_spec(prime, n));
    }
    s.name = sizes
        .iter()
        .map(|n| format!("M_{n}"))
        .collect::<Vec<_>>()
        .join(" + ")
        + &format!(" over Q_{prime}");
    s
}

pub fn block_matrix_algebra(field: &Field, sizes: &[usize]) -> Result<Algebra> {
    block_matrix_spec(field.prime(), sizes).build_in(field)
}

/// `Q_p × Q_p`.
pub fn split_pair_spec(prime: u32) -> AlgebraSpec {
    let mut s = empty(&format!("Q_{prime} x Q_{prime}"), prime, 2);
    s.table = vec![(0, 0, 0, Rat::int(1)), (1, 1, 1, Rat::int(1))];
    s.involution = Some(rat_identity(2));
    s
}
