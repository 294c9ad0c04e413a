//! Fixed inputs shared by the benchmarks.

use braidfree::families;
use braidfree::MultiBraid;

/// Multiplicities of increasing size: constants, the five-vertex cycle pair,
/// and a balanced instance on `n` vertices built from vertex weights.
pub fn fixtures() -> Vec<(String, MultiBraid)> {
    let mut out = vec![
        ("cycle_pair_2_3".to_string(), families::cycle_pair(2, 3).expect("valid")),
        ("boundary_a4".to_string(), families::boundary_a4()),
    ];
    for n in [6usize, 10, 14] {
        out.push((format!("constant_{n}"), MultiBraid::constant(n, 3).expect("valid")));
        out.push((format!("weighted_{n}"), weighted(n)));
    }
    out
}

/// `m_ij = w_i + w_j` with small alternating weights: balanced and ANN.
pub fn weighted(n: usize) -> MultiBraid {
    let w = |i: usize| (i % 3) as i64 + 1;
    MultiBraid::from_fn(n, |i, j| w(i) + w(j)).expect("valid")
}
