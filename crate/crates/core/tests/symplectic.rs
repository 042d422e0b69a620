mod common;

use common::*;
use surface_braids::symplectic::{symp_dims, symp_graded_dim, symp_relations, Grading, DEFAULT_WORD_CAP};
use surface_braids::{Error, SurfaceParams};

fn params(g: usize, p: usize, n: usize) -> SurfaceParams {
    SurfaceParams { genus: g, boundary: p, strands: n }
}

#[test]
fn dimensions_match_dense_oracle_beyond_small_cases() {
    for (g, p, n, top) in [(2, 0, 1, 3), (1, 2, 1, 3), (0, 2, 2, 4), (1, 1, 3, 2)] {
        let dims = symp_dims(&params(g, p, n), top, Grading::default(), DEFAULT_WORD_CAP).unwrap();
        let want: Vec<usize> = (0..=top).map(|d| symp_dim_oracle(g, p, n, d)).collect();
        assert_eq!(dims, want, "g={g} p={p} n={n}");
    }
}

#[test]
fn genus_zero_regraded_is_infinitesimal_braid_algebra() {
    for n in 1..=4 {
        for d in 0..=2 {
            let got = symp_graded_dim(&params(0, 1, n), d, Grading::regraded(), DEFAULT_WORD_CAP).unwrap();
            assert_eq!(got, infinitesimal_braid_dim(n, d), "n={n} d={d}");
        }
    }
}

#[test]
fn relations_are_homogeneous() {
    let gr = Grading::default();
    for (g, p, n) in [(1, 0, 2), (1, 1, 2), (2, 1, 1)] {
        for r in symp_relations(&params(g, p, n), 4, gr) {
            assert!(!r.is_zero());
            assert!(r.degree(gr).is_some(), "{r}");
        }
    }
}

#[test]
fn word_cap_is_a_resource_error() {
    let e = symp_graded_dim(&params(2, 1, 3), 3, Grading::default(), 50).unwrap_err();
    assert!(matches!(e, Error::Resource(_)));
}

#[test]
fn regrading_needs_genus_zero() {
    let e = symp_graded_dim(&params(1, 0, 2), 1, Grading::regraded(), DEFAULT_WORD_CAP).unwrap_err();
    assert!(matches!(e, Error::Parameter(_)));
}
