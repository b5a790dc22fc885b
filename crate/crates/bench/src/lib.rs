//! Shared inputs for the benchmarks.

use poissonkit::bialgebra::chevalley_r_matrix;
use poissonkit::kernel::parse::parse_poly;
use poissonkit::lie::chevalley_sl;
use poissonkit::polyfield::{sample_polys, PolyField, Variance};
use poissonkit::{LieAlgebra, Multivector, Poly, Scalar, Vars};

/// The Dubrovin bivector on `R³`.
pub fn dubrovin() -> PolyField {
    let chart = Vars::new(&["x", "y", "z"]);
    let entry = |a: usize, b: usize, s: &str| (a, b, parse_poly(s, &chart, false).unwrap());
    PolyField::bivector_from_brackets(
        &chart,
        &[
            entry(0, 1, "x*y - 2*z"),
            entry(1, 2, "y*z - 2*x"),
            entry(2, 0, "z*x - 2*y"),
        ],
    )
    .unwrap()
}

/// `sl_n` with its Chevalley r-matrix.
pub fn sl_with_r(n: usize) -> (LieAlgebra, Multivector<Scalar>) {
    let (lie, data, _) = chevalley_sl(n).unwrap();
    let r = chevalley_r_matrix(&lie, &data).unwrap();
    (lie, r)
}

/// A dense multivector field on `R^dim` with coefficients of degree at most 2.
pub fn dense_field(dim: usize, grade: usize, seed: u64) -> PolyField {
    let chart = Vars::new(&(0..dim).map(|i| format!("x{i}")).collect::<Vec<_>>());
    let idx = subsets(dim, grade);
    let coeffs: Vec<Poly> = sample_polys(dim, idx.len(), 2, seed);
    PolyField::from_terms(
        &chart,
        Variance::Multivector,
        grade,
        idx.into_iter().zip(coeffs),
    )
    .unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    subsets(n, k - 1)
        .into_iter()
        .flat_map(|s| {
            let start = s.last().map_or(0, |&l| l + 1);
            (start..n).map(move |i| {
                let mut t = s.clone();
                t.push(i);
                t
            })
        })
        .collect()
}
