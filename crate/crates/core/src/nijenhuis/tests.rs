use proptest::prelude::*;

use super::*;
use crate::kernel::parse::parse_poly;
use crate::kernel::Scalar;
use crate::polyfield::sample_polys;

fn p(chart: &Vars, s: &str) -> Poly {
    parse_poly(s, chart, false).unwrap()
}

fn xy() -> Vars {
    Vars::new(&["x", "y"])
}

fn std_pi(c: &Vars) -> PolyField {
    let one = Poly::one(c.len());
    let mut entries = Vec::new();
    for k in 0..c.len() / 2 {
        entries.push((2 * k, 2 * k + 1, one.clone()));
    }
    PolyField::bivector_from_brackets(c, &entries).unwrap()
}

fn matrix(c: &Vars, rows: &[&[&str]]) -> TensorN {
    TensorN::new(
        c,
        rows.iter()
            .map(|r| r.iter().map(|s| p(c, s)).collect())
            .collect(),
    )
    .unwrap()
}

/// `T^k_{ij} = N^l_i ∂_l N^k_j − N^l_j ∂_l N^k_i − N^k_l (∂_i N^l_j − ∂_j N^l_i)`, with `N^k_j = N[k][j]`.
fn torsion_oracle(n: &TensorN, i: usize, j: usize) -> Vec<Poly> {
    let m = n.matrix();
    let d = n.dim();
    (0..d)
        .map(|k| {
            let mut s = Poly::zero(d);
            for l in 0..d {
                s = &s + &(&m[l][i] * &m[k][j].derivative(l));
                s = &s - &(&m[l][j] * &m[k][i].derivative(l));
                let inner = &m[l][j].derivative(i) - &m[l][i].derivative(j);
                s = &s - &(&m[k][l] * &inner);
            }
            s
        })
        .collect()
}

#[test]
fn torsion_examples() {
    let c = xy();
    assert!(TensorN::scalar(&c, Poly::constant(2, Scalar::from_int(3)))
        .unwrap()
        .torsion()
        .unwrap()
        .is_zero());
    assert!(TensorN::scalar(&c, p(&c, "x"))
        .unwrap()
        .torsion()
        .unwrap()
        .is_zero());
    let n = matrix(&c, &[&["0", "x"], &["0", "0"]]);
    let t = n.torsion().unwrap();
    assert_eq!(t.at(0, 1).components(), torsion_oracle(&n, 0, 1));
    let n = matrix(&c, &[&["y", "x^2"], &["x*y", "0"]]);
    let t = n.torsion().unwrap();
    assert_eq!(t.at(0, 1).components(), torsion_oracle(&n, 0, 1));
    assert!(!t.is_zero());
}

#[test]
fn diagonal_torsion_rule() {
    let c = Vars::new(&["x", "y", "z"]);
    let free = TensorN::diagonal(&c, vec![p(&c, "x"), p(&c, "y"), p(&c, "z")]).unwrap();
    assert!(free.torsion().unwrap().is_zero());
    let bent = TensorN::diagonal(&c, vec![p(&c, "y"), p(&c, "x"), p(&c, "1")]).unwrap();
    assert!(!bent.torsion().unwrap().is_zero());
    let equal = TensorN::diagonal(&c, vec![p(&c, "x*y"), p(&c, "x*y"), p(&c, "z")]).unwrap();
    assert!(equal.torsion().unwrap().is_zero());
}

#[test]
fn compatibility_examples() {
    let c = xy();
    let pi = std_pi(&c);
    assert!(check_compatible(
        &pi,
        &TensorN::scalar(&c, Poly::constant(2, Scalar::from_int(5))).unwrap()
    )
    .unwrap()
    .passed());
    // [dx,dy]_{xπ} = dx and [x dx, dy]_π + [dx, x dy]_π = dx + 0.
    assert!(
        check_compatible(&pi, &TensorN::scalar(&c, p(&c, "x")).unwrap())
            .unwrap()
            .passed()
    );
    // N π♯ dx = y∂y while π♯ N* dx = x∂y.
    let r = check_compatible(
        &pi,
        &TensorN::diagonal(&c, vec![p(&c, "x"), p(&c, "y")]).unwrap(),
    )
    .unwrap();
    assert!(r.child("commutes").unwrap().failed());
}

#[test]
fn pi_n_examples() {
    let c = xy();
    let pi = std_pi(&c);
    let three = Scalar::from_int(3);
    assert_eq!(
        pi_n(
            &pi,
            &TensorN::scalar(&c, Poly::constant(2, three.clone())).unwrap()
        )
        .unwrap(),
        pi.scale(&three)
    );
    assert_eq!(
        pi_n(&pi, &TensorN::scalar(&c, p(&c, "x")).unwrap()).unwrap(),
        pi.mul_fn(&p(&c, "x"))
    );
    assert!(pi_n(&pi, &TensorN::zero(&c)).unwrap().is_zero());
    assert!(pi_n(
        &pi,
        &TensorN::diagonal(&c, vec![p(&c, "x"), p(&c, "y")]).unwrap()
    )
    .is_err());
}

#[test]
fn i_n_and_d_n_examples() {
    let c = xy();
    let n = TensorN::scalar(&c, p(&c, "x")).unwrap();
    let f = PolyField::function(&c, Variance::Form, p(&c, "x^2 + y"));
    assert!(i_n(&n, &f).unwrap().is_zero());
    let dy = PolyField::coordinate_form(&c, 1);
    assert_eq!(i_n(&n, &dy).unwrap(), dy.mul_fn(&p(&c, "x")));
    let vol = PolyField::coordinate_form(&c, 0).wedge(&dy).unwrap();
    assert_eq!(i_n(&n, &vol).unwrap(), vol.mul_fn(&p(&c, "2*x")));
    let x = PolyField::function(&c, Variance::Form, p(&c, "x"));
    assert_eq!(
        d_n(&n, &x).unwrap(),
        PolyField::coordinate_form(&c, 0).mul_fn(&p(&c, "x"))
    );
    assert!(
        d_n(&n, &PolyField::function(&c, Variance::Form, Poly::one(2)))
            .unwrap()
            .is_zero()
    );
}

#[test]
fn d_n_squares_to_zero_without_torsion() {
    let c = Vars::new(&["x", "y", "z"]);
    for n in [
        TensorN::scalar(&c, p(&c, "x")).unwrap(),
        TensorN::diagonal(&c, vec![p(&c, "x"), p(&c, "y"), p(&c, "z")]).unwrap(),
    ] {
        assert!(d_n_square_witness(&n, 2).unwrap().is_none());
    }
    let bent = TensorN::diagonal(&c, vec![p(&c, "y"), p(&c, "x"), p(&c, "1")]).unwrap();
    assert!(d_n_square_witness(&bent, 2).unwrap().is_some());
}

#[test]
fn derivation_form_of_d_n_agrees() {
    let c = Vars::new(&["x", "y", "z"]);
    let n = matrix(
        &c,
        &[&["y", "x^2", "0"], &["x*y", "0", "z"], &["1", "0", "x"]],
    );
    let delta = d_n_derivation(&n).unwrap();
    for f in sample_polys(3, 4, 2, 9) {
        let g = PolyField::function(&c, Variance::Form, f.clone());
        assert_eq!(delta.apply(&g).unwrap(), d_n(&n, &g).unwrap());
        let alpha =
            PolyField::one_form(&c, vec![f.clone(), Poly::var(3, 2), Poly::zero(3)]).unwrap();
        assert_eq!(delta.apply(&alpha).unwrap(), d_n(&n, &alpha).unwrap());
    }
}

#[test]
fn pn_examples() {
    let c = xy();
    let pi = std_pi(&c);
    assert!(check_pn(
        &pi,
        &TensorN::scalar(&c, Poly::constant(2, Scalar::from_int(2))).unwrap()
    )
    .unwrap()
    .passed());
    let r = check_pn(&pi, &TensorN::scalar(&c, p(&c, "x")).unwrap()).unwrap();
    assert!(r.passed());
    assert!(r.child("bi_hamiltonian").unwrap().passed());
    let c4 = Vars::new(&["x1", "x2", "x3", "x4"]);
    let n = TensorN::diagonal(
        &c4,
        vec![p(&c4, "x1"), p(&c4, "x1"), p(&c4, "x3"), p(&c4, "x3")],
    )
    .unwrap();
    let r = check_pn(&std_pi(&c4), &n).unwrap();
    assert!(r.child("torsion_free").unwrap().passed());
    assert!(r
        .child("compatible")
        .unwrap()
        .child("commutes")
        .unwrap()
        .passed());
    // [dx1, dx2]_{π_N} = dx1 while [x1 dx1, dx2]_π + [dx1, x1 dx2]_π − 0 = dx1 + 0.
    assert!(r.passed(), "{r:?}");
}

#[test]
fn pqn_reduces_to_pn() {
    let c = xy();
    let pi = std_pi(&c);
    let n = TensorN::scalar(&c, p(&c, "x")).unwrap();
    let zero = PolyField::zero(&c, Variance::Form, 3);
    assert!(check_pqn(&pi, &n, &zero).unwrap().passed());
    let bent = TensorN::diagonal(&c, vec![p(&c, "y"), p(&c, "x")]).unwrap();
    assert_eq!(
        check_pqn(&pi, &bent, &zero).unwrap().passed(),
        check_pn(&pi, &bent).unwrap().passed()
    );
}

#[test]
fn constructed_instance() {
    let (pi, n, phi) = constructed_pqn().unwrap();
    assert!(!n.torsion().unwrap().is_zero());
    let c = pi.chart();
    assert_eq!(
        phi,
        PolyField::from_terms(c, Variance::Form, 3, [(vec![0, 1, 2], Poly::var(4, 2))]).unwrap()
    );
    let r = check_pqn(&pi, &n, &phi).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = check_pqn_brackets(&pi, &n, &phi).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.child("pi_n_pi_n").unwrap().notes[0].contains("π(·, ξ)"));
    let r = check_qn_coherence(&pi, &n, &phi, &sample_polys(4, 4, 2, 1)).unwrap();
    assert!(r.passed(), "{r:?}");
    let (f, w) = d_n_square_witness(&n, 2).unwrap().unwrap();
    assert!(!f.is_zero() && !w.is_zero());
}

#[test]
fn wrong_phi_breaks_pqn() {
    let (pi, n, phi) = constructed_pqn().unwrap();
    let bad = phi.scale(&Scalar::from_int(2));
    assert!(check_pqn(&pi, &n, &bad).unwrap().failed());
    assert!(check_pqn_brackets(&pi, &n, &bad).unwrap().failed());
    assert!(check_qn_coherence(&pi, &n, &bad, &[]).unwrap().failed());
}

#[test]
fn lemma_pnij_examples() {
    let c = xy();
    let samples = sample_polys(2, 4, 2, 4);
    assert!(check_lemma_pnij(&SectionDerivation::de_rham(&c), &samples)
        .unwrap()
        .passed());
    let n = TensorN::scalar(&c, p(&c, "x")).unwrap();
    assert!(check_lemma_pnij(&d_n_derivation(&n).unwrap(), &samples)
        .unwrap()
        .passed());
    let (_, n, _) = constructed_pqn().unwrap();
    assert!(
        check_lemma_pnij(&d_n_derivation(&n).unwrap(), &sample_polys(4, 4, 2, 4))
            .unwrap()
            .passed()
    );
}

fn random_tensor(c: &Vars, seed: u64) -> TensorN {
    let d = c.len();
    let polys = sample_polys(d, d * d, 2, seed);
    TensorN::new(c, polys.chunks(d).map(|r| r.to_vec()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn torsion_matches_oracle_and_is_tensorial(seed in any::<u64>()) {
        let c = Vars::new(&["x", "y", "z"]);
        let n = random_tensor(&c, seed);
        let t = n.torsion().unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            prop_assert_eq!(t.at(i, j).components(), torsion_oracle(&n, i, j));
            prop_assert_eq!(t.at(j, i), &t.at(i, j).neg());
        }
        let fs = sample_polys(3, 3, 1, seed ^ 0x55);
        let x = PolyField::vector_field(&c, vec![fs[1].clone(), Poly::one(3), fs[2].clone()]).unwrap();
        let y = PolyField::coordinate_field(&c, 2);
        let lhs = n.torsion_on(&x.mul_fn(&fs[0]), &y).unwrap();
        prop_assert_eq!(lhs, n.torsion_on(&x, &y).unwrap().mul_fn(&fs[0]));
    }

    #[test]
    fn i_n_is_a_derivation(seed in any::<u64>()) {
        let c = Vars::new(&["x", "y", "z"]);
        let n = random_tensor(&c, seed);
        let fs = sample_polys(3, 6, 1, seed.wrapping_add(1));
        let a = PolyField::one_form(&c, fs[..3].to_vec()).unwrap();
        let b = PolyField::one_form(&c, fs[3..].to_vec()).unwrap();
        let lhs = i_n(&n, &a.wedge(&b).unwrap()).unwrap();
        let rhs = i_n(&n, &a).unwrap().wedge(&b).unwrap().try_add(&a.wedge(&i_n(&n, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_n_is_a_derivation(seed in any::<u64>()) {
        let c = Vars::new(&["x", "y", "z"]);
        let n = random_tensor(&c, seed);
        let fs = sample_polys(3, 4, 2, seed.wrapping_add(2));
        let f = PolyField::function(&c, Variance::Form, fs[0].clone());
        let a = PolyField::one_form(&c, fs[1..].to_vec()).unwrap();
        let lhs = d_n(&n, &a.mul_fn(&fs[0])).unwrap();
        let rhs = d_n(&n, &f).unwrap().wedge(&a).unwrap().try_add(&d_n(&n, &a).unwrap().mul_fn(&fs[0])).unwrap();
        prop_assert_eq!(lhs, rhs);
        let d = SectionDerivation::de_rham(&c);
        let anti = de_rham(&d_n(&n, &a).unwrap()).unwrap().try_add(&d_n(&n, &d.apply(&a).unwrap()).unwrap()).unwrap();
        prop_assert!(anti.is_zero());
    }
}
