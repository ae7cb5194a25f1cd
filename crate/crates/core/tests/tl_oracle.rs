//! Temperley–Lieb quotient dimensions against a lattice-path count.
//!
//! At `q = e^{2πi/ℓ}` the quotient of `TL_n` by the trace annihilator is
//! semisimple with blocks indexed by the vertices of the path graph
//! `A_{ℓ-1}`, of size the number of walks of length `n` from the end vertex.
//! The oracle counts those walks by brute force over all `±1` step sequences.

use braidloc::fixtures::path_fusion;
use braidloc::{hom_dims, tl_quotient_dims};

fn walks_by_endpoint(vertices: i64, n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; vertices as usize];
    for steps in 0u32..(1 << n) {
        let mut pos = 0i64;
        let inside = (0..n).all(|s| {
            pos += if steps >> s & 1 == 1 { 1 } else { -1 };
            (0..vertices).contains(&pos)
        });
        if inside {
            counts[pos as usize] += 1;
        }
    }
    counts
}

fn oracle_dim(ell: usize, n: usize) -> usize {
    walks_by_endpoint(ell as i64 - 1, n).iter().map(|c| (c * c) as usize).sum()
}

#[test]
fn ell_six_matches_walk_counts() {
    let oracle: Vec<usize> = (1..=6).map(|n| oracle_dim(6, n)).collect();
    assert_eq!(oracle, vec![1, 2, 5, 14, 41, 122]);
    assert_eq!(tl_quotient_dims(6, 6).unwrap(), oracle);
}

#[test]
fn other_levels_match_walk_counts() {
    for ell in 3..=9 {
        let oracle: Vec<usize> = (1..=5).map(|n| oracle_dim(ell, n)).collect();
        assert_eq!(tl_quotient_dims(ell, 5).unwrap(), oracle, "ell={ell}");
    }
}

#[test]
fn walk_counts_are_hom_dimensions() {
    let a5 = path_fusion(6);
    for n in 0..=10 {
        let walks: Vec<i64> = walks_by_endpoint(5, n).into_iter().map(|c| c as i64).collect();
        assert_eq!(hom_dims(&a5, n), walks, "n={n}");
    }
    assert_eq!(hom_dims(&a5, 4), vec![2, 0, 3, 0, 1]);
}
