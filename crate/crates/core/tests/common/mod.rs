#![allow(dead_code)]

pub mod oracles;

use ultranorm::field::Field;
use ultranorm::linalg::Subspace;
use ultranorm::Scalar;

pub fn q(p: u32) -> Field {
    Field::qp(p).unwrap()
}

/// A rational subspace moved into `Q_p`.
pub fn to_padic(field: &Field, ambient: usize, basis: &[Vec<oracles::Q>]) -> Subspace {
    let vecs = basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| field.from_rational(c))
                .collect::<Vec<Scalar>>()
        })
        .collect();
    Subspace::span(field, ambient, vecs).unwrap()
}
