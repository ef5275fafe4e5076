use std::path::PathBuf;

use ultranorm::fixtures;
use ultranorm::AlgebraSpec;

fn corpus() -> Vec<(&'static str, AlgebraSpec)> {
    vec![
        ("m2_q7", fixtures::matrix_spec(7, 2)),
        ("m3_q7", fixtures::matrix_spec(7, 3)),
        ("m2m3_q7", fixtures::block_matrix_spec(7, &[2, 3])),
        ("triangular2_q5", fixtures::upper_triangular_spec(5, 2)),
        ("dual_numbers_q7", fixtures::dual_numbers_spec(7)),
        ("quaternion_3_7", fixtures::quaternion_spec(7, 3, 7)),
        ("m2_q5", fixtures::matrix_spec(5, 2)),
    ]
}

/// Set `UPDATE_CORPUS=1` to regenerate the files.
#[test]
fn bundled_corpus_matches_fixtures() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for (name, spec) in corpus() {
        let path = dir.join(format!("{name}.alg"));
        if std::env::var_os("UPDATE_CORPUS").is_some() {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, spec.to_json()).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, spec.to_json(), "{name}");
        assert_eq!(AlgebraSpec::parse(&text).unwrap(), spec);
    }
}
