use proptest::prelude::*;

use super::*;
use crate::bialgebra::Cobracket;
use crate::kernel::parse::parse_poly;
use crate::lie::{chevalley_sl, LieAlgebra};

fn p(chart: &Vars, s: &str) -> Poly {
    parse_poly(s, chart, true).unwrap()
}

fn bivector(chart: &Vars, entries: &[(&str, &str, &str)]) -> PolyField {
    let b: Vec<(usize, usize, Poly)> = entries
        .iter()
        .map(|(a, b, c)| {
            (
                chart.index_of(a).unwrap(),
                chart.index_of(b).unwrap(),
                p(chart, c),
            )
        })
        .collect();
    PolyField::bivector_from_brackets(chart, &b).unwrap()
}

fn func(chart: &Vars, f: Poly) -> PolyField {
    PolyField::function(chart, Variance::Multivector, f)
}

fn dubrovin() -> PolyField {
    let c = Vars::new(&["x", "y", "z"]);
    bivector(
        &c,
        &[
            ("x", "y", "x*y - 2*z"),
            ("y", "z", "y*z - 2*x"),
            ("z", "x", "z*x - 2*y"),
        ],
    )
}

fn xy() -> Vars {
    Vars::new(&["x", "y"])
}

#[test]
fn coordinate_lie_bracket() {
    let c = xy();
    let dx = PolyField::coordinate_field(&c, 0);
    let xdy = PolyField::coordinate_field(&c, 1).mul_fn(&p(&c, "x"));
    assert_eq!(
        sn_bracket(&dx, &xdy).unwrap(),
        PolyField::coordinate_field(&c, 1)
    );
}

#[test]
fn bracket_with_function_is_derivative() {
    let c = xy();
    let x = PolyField::vector_field(&c, vec![p(&c, "y"), p(&c, "x^2")]).unwrap();
    let f = p(&c, "x^2*y + y^3");
    let got = sn_bracket(&x, &func(&c, f)).unwrap();
    assert_eq!(got.as_function(), p(&c, "2*x*y^2 + x^4 + 3*x^2*y^2"));
}

#[test]
fn constant_and_dubrovin_are_poisson() {
    let c = xy();
    assert!(is_poisson(&bivector(&c, &[("x", "y", "1")]))
        .unwrap()
        .passed());
    assert!(is_poisson(&dubrovin()).unwrap().passed());
    let mut pert = dubrovin();
    pert = pert
        .try_add(&bivector(pert.chart(), &[("x", "y", "x")]))
        .unwrap();
    assert!(is_poisson(&pert).unwrap().failed());
}

#[test]
fn sb2_table_fails_and_bruhat_is_poisson() {
    let c = Vars::laurent(&["a", "b", "c"]);
    let sb2 = bivector(
        &c,
        &[
            ("b", "c", "a^2 - a^-2"),
            ("a", "b", "a*b"),
            ("a", "c", "a*c"),
        ],
    );
    assert!(is_poisson(&sb2).unwrap().failed());
    let c = Vars::new(&["al", "alb", "be", "beb"]);
    let bruhat = bivector(
        &c,
        &[
            ("al", "alb", "2*i*be*beb"),
            ("al", "be", "-i*al*be"),
            ("al", "beb", "-i*al*beb"),
            ("alb", "beb", "i*alb*beb"),
            ("alb", "be", "i*alb*be"),
        ],
    );
    assert!(is_poisson(&bruhat).unwrap().passed());
}

/// With `{a,b} = kab`, `{a,c} = kac`, `{b,c} = F(a)` the Jacobiator on `(a,b,c)` is `−2kaF`.
#[test]
fn sb2_jacobiator_by_hand() {
    let c = Vars::laurent(&["a", "b", "c"]);
    let sb2 = bivector(
        &c,
        &[
            ("b", "c", "a^2 - a^-2"),
            ("a", "b", "a*b"),
            ("a", "c", "a*c"),
        ],
    );
    let x = |i: usize| Poly::var(3, i);
    let b = |u: &Poly, v: &Poly| poisson_bracket(&sb2, u, v).unwrap();
    let jac =
        &(&b(&x(0), &b(&x(1), &x(2))) + &b(&x(1), &b(&x(2), &x(0)))) + &b(&x(2), &b(&x(0), &x(1)));
    let expected = p(&c, "-2*a*(a^2 - a^-2)");
    assert_eq!(jac, expected);
    let rr = sn_bracket(&sb2, &sb2).unwrap();
    assert_eq!(rr.coeff(&[0, 1, 2]), expected.scale(&Scalar::from_int(2)));
}

#[test]
fn de_rham_examples() {
    let c = xy();
    let xdy = PolyField::one_form(&c, vec![Poly::zero(2), p(&c, "x")]).unwrap();
    let d = de_rham(&xdy).unwrap();
    assert_eq!(d.coeff(&[0, 1]), Poly::one(2));
    assert!(de_rham(&PolyField::coordinate_form(&c, 0))
        .unwrap()
        .is_zero());
    let l = Vars::laurent(&["a", "b"]);
    let form = PolyField::one_form(&l, vec![Poly::zero(2), p(&l, "a^-1")]).unwrap();
    assert_eq!(de_rham(&form).unwrap().coeff(&[0, 1]), p(&l, "-a^-2"));
}

#[test]
fn sharp_convention() {
    let c = xy();
    let pi = bivector(&c, &[("x", "y", "1")]);
    assert_eq!(
        sharp(&pi, &PolyField::coordinate_form(&c, 0)).unwrap(),
        PolyField::coordinate_field(&c, 1)
    );
    let ham = sharp(&pi, &PolyField::differential(&c, &p(&c, "x"))).unwrap();
    assert_eq!(ham, PolyField::coordinate_field(&c, 1));
    let zero = PolyField::zero(&c, Variance::Multivector, 2);
    assert!(sharp(&zero, &PolyField::coordinate_form(&c, 0))
        .unwrap()
        .is_zero());
}

#[test]
fn koszul_examples() {
    let c = xy();
    let (dx, dy) = (
        PolyField::coordinate_form(&c, 0),
        PolyField::coordinate_form(&c, 1),
    );
    assert!(koszul_bracket(&bivector(&c, &[("x", "y", "1")]), &dx, &dy)
        .unwrap()
        .is_zero());
    assert_eq!(
        koszul_bracket(&bivector(&c, &[("x", "y", "x")]), &dx, &dy).unwrap(),
        dx
    );
}

#[test]
fn koszul_of_exact_forms_is_exact_bracket() {
    let pi = dubrovin();
    let c = pi.chart().clone();
    let fs = sample_polys(3, 6, 2, 11);
    for w in fs.chunks(2) {
        let (f, g) = (&w[0], &w[1]);
        let lhs = koszul_bracket(
            &pi,
            &PolyField::differential(&c, f),
            &PolyField::differential(&c, g),
        )
        .unwrap();
        let rhs = PolyField::differential(&c, &poisson_bracket(&pi, f, g).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn lichnerowicz_on_functions() {
    let c = xy();
    let pi = bivector(&c, &[("x", "y", "1")]);
    let d = lichnerowicz(&pi, &func(&c, p(&c, "x"))).unwrap();
    assert_eq!(d, PolyField::coordinate_field(&c, 1).neg());
    assert!(lichnerowicz(&pi, &func(&c, Poly::one(2)))
        .unwrap()
        .is_zero());
    let pi = dubrovin();
    for f in sample_polys(3, 10, 3, 5) {
        let once = lichnerowicz(&pi, &func(pi.chart(), f)).unwrap();
        assert!(lichnerowicz(&pi, &once).unwrap().is_zero());
    }
}

fn bracket_operators_agree(pi: &PolyField) {
    let c = pi.chart().clone();
    let delta = SectionDerivation::coboundary(pi).unwrap();
    let n = c.len();
    for i in 0..n {
        let xi = PolyField::coordinate_form(&c, i);
        assert_eq!(dual_anchor(&delta, &xi).unwrap(), sharp(pi, &xi).unwrap());
        for j in 0..n {
            let eta = PolyField::coordinate_form(&c, j);
            let got = dual_algebroid_bracket(&delta, &xi, &eta, BracketSign::Cochain).unwrap();
            assert_eq!(got, koszul_bracket(pi, &xi, &eta).unwrap(), "({i},{j})");
        }
    }
}

#[test]
fn dual_bracket_of_lichnerowicz_is_koszul() {
    let c = xy();
    bracket_operators_agree(&bivector(&c, &[("x", "y", "x")]));
    bracket_operators_agree(&dubrovin());
}

#[test]
fn displayed_sign_negates_tensorial_part() {
    let c = xy();
    let pi = bivector(&c, &[("x", "y", "x")]);
    let delta = SectionDerivation::coboundary(&pi).unwrap();
    let (dx, dy) = (
        PolyField::coordinate_form(&c, 0),
        PolyField::coordinate_form(&c, 1),
    );
    let shown = dual_algebroid_bracket(&delta, &dx, &dy, BracketSign::Displayed).unwrap();
    assert_ne!(shown, koszul_bracket(&pi, &dx, &dy).unwrap());
}

#[test]
fn zero_differential_gives_zero_bracket() {
    let c = xy();
    let zero = PolyField::zero(&c, Variance::Multivector, 2);
    let delta = SectionDerivation::coboundary(&zero).unwrap();
    let (dx, dy) = (
        PolyField::coordinate_form(&c, 0),
        PolyField::coordinate_form(&c, 1),
    );
    assert!(dual_anchor(&delta, &dx).unwrap().is_zero());
    assert!(
        dual_algebroid_bracket(&delta, &dx, &dy, BracketSign::Cochain)
            .unwrap()
            .is_zero()
    );
}

#[test]
fn twisted_rank_two() {
    let c = Vars::new(&["x", "y", "z"]);
    let pi = bivector(&c, &[("x", "y", "1")]);
    let phi =
        PolyField::from_terms(&c, Variance::Form, 3, [(vec![0, 1, 2], Poly::one(3))]).unwrap();
    assert!(check_twisted(&pi, &phi).unwrap().passed());
    let zero = PolyField::zero(&c, Variance::Form, 3);
    assert!(check_twisted(
        &dubrovin(),
        &PolyField::zero(dubrovin().chart(), Variance::Form, 3)
    )
    .unwrap()
    .passed());
    assert!(check_twisted(&pi, &zero).unwrap().passed());
}

/// Chart `(u, y, z, w)` with `u = 1 + x₁`: `ω = du∧dy + u dz∧dw`, `π = ω⁻¹`, `φ = ε dω`.
pub(crate) fn twisted_chart_example(eps: i64) -> (PolyField, PolyField) {
    let c = Vars::laurent(&["u", "y", "z", "w"]);
    let pi = bivector(&c, &[("u", "y", "1"), ("z", "w", "u^-1")]);
    let phi = PolyField::from_terms(
        &c,
        Variance::Form,
        3,
        [(vec![0, 2, 3], Poly::constant(4, Scalar::from_int(eps)))],
    )
    .unwrap();
    (pi, phi)
}

/// `[π,π] = 2u⁻² ∂y∧∂z∧∂w` while `(∧³π♯)(ε dω) = −ε u⁻² ∂y∧∂z∧∂w`.
#[test]
fn twisted_identity_scale_on_chart() {
    let passing: Vec<i64> = [1, -1, 2, -2]
        .into_iter()
        .filter(|&e| {
            let (pi, phi) = twisted_chart_example(e);
            check_twisted(&pi, &phi).unwrap().passed()
        })
        .collect();
    assert_eq!(passing, vec![-2]);
    let (pi, _) = twisted_chart_example(1);
    assert_eq!(
        sn_bracket(&pi, &pi).unwrap().coeff(&[1, 2, 3]),
        p(pi.chart(), "2*u^-2")
    );
}

/// The sign of `φ = ε dω` for which the twisted cotangent bracket is a Lie algebroid.
pub(crate) const TWISTED_EPSILON: i64 = 1;

#[test]
fn twisted_algebroid_sign_selection() {
    let passing: Vec<i64> = [1, -1]
        .into_iter()
        .filter(|&e| {
            let (pi, phi) = twisted_chart_example(e);
            Algebroid::twisted_cotangent(&pi, Some(&phi))
                .unwrap()
                .validate()
                .unwrap()
                .passed()
        })
        .collect();
    assert_eq!(passing, vec![TWISTED_EPSILON]);
}

#[test]
fn twisted_structures_form_quasi_bialgebroid() {
    let (pi, phi) = twisted_chart_example(TWISTED_EPSILON);
    let s = twisted_cotangent_structures(&pi, &phi).unwrap();
    let samples = sample_polys(4, 5, 2, 3);
    let report = check_quasi_algebroid(&s.algebroid, &s.delta, &phi, &samples).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(s.algebroid.validate().unwrap().passed());
    let c = pi.chart();
    for f in &samples {
        let twice = s
            .delta(
                &s.delta(&PolyField::function(c, Variance::Form, f.clone()))
                    .unwrap(),
            )
            .unwrap();
        let rhs = s
            .bracket(&phi, &PolyField::function(c, Variance::Form, f.clone()))
            .unwrap();
        assert_eq!(twice, rhs);
    }
    for i in 0..4 {
        let xi = PolyField::coordinate_form(c, i);
        assert_eq!(s.anchor(&xi).unwrap(), sharp(&pi, &xi).unwrap());
    }
}

#[test]
fn twisted_with_zero_phi_reduces() {
    let pi = dubrovin();
    let c = pi.chart().clone();
    let zero = PolyField::zero(&c, Variance::Form, 3);
    let s = twisted_cotangent_structures(&pi, &zero).unwrap();
    for i in 0..3 {
        let xi = PolyField::coordinate_form(&c, i);
        let eta = PolyField::one_form(&c, vec![p(&c, "y"), p(&c, "x*z"), Poly::zero(3)]).unwrap();
        assert_eq!(
            s.bracket(&xi, &eta).unwrap(),
            koszul_bracket(&pi, &xi, &eta).unwrap()
        );
        assert_eq!(s.delta(&eta).unwrap(), de_rham(&eta).unwrap());
    }
}

#[test]
fn wrong_sign_breaks_quasi_axioms() {
    let (pi, phi) = twisted_chart_example(-TWISTED_EPSILON);
    let s = twisted_cotangent_structures(&pi, &phi).unwrap();
    let report = check_quasi_algebroid(&s.algebroid, &s.delta, &phi, &[]).unwrap();
    assert!(!report.passed());
}

#[test]
fn cotangent_algebroid_of_poisson_is_lie() {
    assert!(Algebroid::cotangent(&dubrovin())
        .unwrap()
        .validate()
        .unwrap()
        .passed());
}

#[test]
fn poisson_action_abelian() {
    let c = xy();
    let lie = LieAlgebra::abelian(vec!["X".to_string()]);
    let rho = vec![PolyField::coordinate_field(&c, 0)];
    let pi = bivector(&c, &[("x", "y", "1")]);
    let r = poisson_action_check(&lie, &rho, &Cobracket::zero(1), &pi).unwrap();
    assert!(r.passed());
    let r = poisson_action_check(
        &lie,
        &rho,
        &Cobracket::zero(1),
        &pi.scale(&Scalar::from_int(3)),
    )
    .unwrap();
    assert!(r.passed());
}

#[test]
fn poisson_action_sl2_projective_line() {
    let (lie, data, _) = chevalley_sl(2).unwrap();
    let c = Vars::new(&["u"]);
    let idx = |n: &str| lie.index_of(n).unwrap();
    let mut rho = vec![PolyField::zero(&c, Variance::Multivector, 1); 3];
    rho[idx("E12")] = PolyField::vector_field(&c, vec![p(&c, "1")]).unwrap();
    rho[idx("H1")] = PolyField::vector_field(&c, vec![p(&c, "2*u")]).unwrap();
    rho[idx("E21")] = PolyField::vector_field(&c, vec![p(&c, "-u^2")]).unwrap();
    let r = crate::bialgebra::chevalley_r_matrix(&lie, &data).unwrap();
    let delta = Cobracket::coboundary(&lie, &r).unwrap();
    let pi = PolyField::zero(&c, Variance::Multivector, 2);
    let report = poisson_action_check(&lie, &rho, &delta, &pi).unwrap();
    let action = report.child("action").unwrap();
    assert!(
        action.failed(),
        "ρ(e)=∂u, ρ(h)=2u∂u gives [ρh, ρe] = −2ρe: an anti-action"
    );
    assert_eq!(
        report.child("diagram").unwrap().status,
        crate::report::Status::Skipped
    );

    let anti: Vec<PolyField> = rho.iter().map(|x| x.neg()).collect();
    let report = poisson_action_check(&lie, &anti, &delta, &pi).unwrap();
    assert!(report.child("action").unwrap().passed());
    assert!(
        report.child("diagram").unwrap().passed(),
        "bivectors on a line vanish"
    );
}

fn grade_strategy(n: usize, max_grade: usize) -> impl Strategy<Value = (usize, u64)> {
    (0..=max_grade.min(n), any::<u64>())
}

fn random_field(chart: &Vars, variance: Variance, grade: usize, seed: u64) -> PolyField {
    let n = chart.len();
    let idx: Vec<Vec<usize>> = subsets(n, grade);
    let polys = sample_polys(n, idx.len(), 2, seed);
    PolyField::from_terms(chart, variance, grade, idx.into_iter().zip(polys)).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for s in subsets(n, k - 1) {
        let start = s.last().map_or(0, |&l| l + 1);
        for i in start..n {
            let mut t = s.clone();
            t.push(i);
            out.push(t);
        }
    }
    out
}

fn chart(n: usize) -> Vars {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Vars::new(&names)
}

/// Equality where zero fields of any grade agree.
fn same(a: &PolyField, b: &PolyField) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

fn add(a: &PolyField, b: &PolyField) -> PolyField {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a.try_add(b).unwrap()
    }
}

fn sign(e: usize) -> Scalar {
    Scalar::from_int(if e.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schouten_graded_antisymmetry(n in 2usize..=4, a in grade_strategy(4, 3), b in grade_strategy(4, 3)) {
        let c = chart(n);
        let (pg, qg) = (a.0.min(n), b.0.min(n));
        let (pp, qq) = (random_field(&c, Variance::Multivector, pg, a.1), random_field(&c, Variance::Multivector, qg, b.1));
        let l = sn_bracket(&pp, &qq).unwrap();
        // [P,Q] = −(−1)^{(p−1)(q−1)}[Q,P]; (p−1)(q−1) ≡ pq + p + q + 1.
        let e = (pg * qg + pg + qg + 1) % 2;
        prop_assert!(same(&l, &sn_bracket(&qq, &pp).unwrap().scale(&sign(e)).neg()));
    }

    #[test]
    fn schouten_leibniz(n in 2usize..=4, a in grade_strategy(4, 2), b in grade_strategy(4, 2), s in grade_strategy(4, 2)) {
        let c = chart(n);
        let (pg, qg, rg) = (a.0.min(n), b.0.min(n), s.0.min(n));
        prop_assume!(qg + rg <= n);
        let pp = random_field(&c, Variance::Multivector, pg, a.1);
        let qq = random_field(&c, Variance::Multivector, qg, b.1);
        let rr = random_field(&c, Variance::Multivector, rg, s.1);
        // [P, Q∧R] = [P,Q]∧R + (−1)^{(p−1)q} Q∧[P,R]
        let lhs = sn_bracket(&pp, &qq.wedge(&rr).unwrap()).unwrap();
        let t1 = sn_bracket(&pp, &qq).unwrap().wedge(&rr).unwrap();
        let t2 = qq.wedge(&sn_bracket(&pp, &rr).unwrap()).unwrap();
        let e = ((pg as i64 - 1) * qg as i64).rem_euclid(2) as usize;
        prop_assert!(same(&lhs, &add(&t1, &t2.scale(&sign(e)))));
    }

    #[test]
    fn schouten_jacobi(n in 2usize..=4, a in grade_strategy(4, 2), b in grade_strategy(4, 2), s in grade_strategy(4, 2)) {
        let c = chart(n);
        let (pg, qg, rg) = (a.0.min(n), b.0.min(n), s.0.min(n));
        let pp = random_field(&c, Variance::Multivector, pg, a.1);
        let qq = random_field(&c, Variance::Multivector, qg, b.1);
        let rr = random_field(&c, Variance::Multivector, rg, s.1);
        // [P,[Q,R]] = [[P,Q],R] + (−1)^{(p−1)(q−1)}[Q,[P,R]]
        let lhs = sn_bracket(&pp, &sn_bracket(&qq, &rr).unwrap()).unwrap();
        let t1 = sn_bracket(&sn_bracket(&pp, &qq).unwrap(), &rr).unwrap();
        let t2 = sn_bracket(&qq, &sn_bracket(&pp, &rr).unwrap()).unwrap();
        let e = ((pg as i64 - 1) * (qg as i64 - 1)).rem_euclid(2) as usize;
        prop_assert!(same(&lhs, &add(&t1, &t2.scale(&sign(e)))));
    }

    #[test]
    fn frame_bracket_matches_schouten(n in 1usize..=4, a in grade_strategy(4, 3), b in grade_strategy(4, 3)) {
        let c = chart(n);
        let (pg, qg) = (a.0.min(n), b.0.min(n));
        let pp = random_field(&c, Variance::Multivector, pg, a.1);
        let qq = random_field(&c, Variance::Multivector, qg, b.1);
        let tangent = Algebroid::tangent(&c);
        prop_assert_eq!(tangent.bracket(&pp, &qq).unwrap(), sn_bracket(&pp, &qq).unwrap());
    }

    #[test]
    fn de_rham_squares_to_zero(n in 1usize..=4, a in grade_strategy(4, 3)) {
        let c = chart(n);
        let f = random_field(&c, Variance::Form, a.0.min(n), a.1);
        prop_assert!(de_rham(&de_rham(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn poisson_bracket_leibniz(seed in any::<u64>()) {
        let pi = dubrovin();
        let fs = sample_polys(3, 3, 2, seed);
        let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
        let lhs = poisson_bracket(&pi, f, &(g * h)).unwrap();
        let rhs = &(&poisson_bracket(&pi, f, g).unwrap() * h) + &(g * &poisson_bracket(&pi, f, h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_iff_poisson(seed in any::<u64>()) {
        let good = dubrovin();
        let bad = good.try_add(&bivector(good.chart(), &[("x", "y", "x")])).unwrap();
        let fs = sample_polys(3, 3, 2, seed);
        let jac = |pi: &PolyField| {
            let b = |u: &Poly, v: &Poly| poisson_bracket(pi, u, v).unwrap();
            let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
            &(&b(f, &b(g, h)) + &b(g, &b(h, f))) + &b(h, &b(f, g))
        };
        prop_assert!(jac(&good).is_zero());
        let x = |i: usize| Poly::var(3, i);
        let coord = poisson_bracket(&bad, &x(0), &poisson_bracket(&bad, &x(1), &x(2)).unwrap()).unwrap();
        let coord = &(&coord + &poisson_bracket(&bad, &x(1), &poisson_bracket(&bad, &x(2), &x(0)).unwrap()).unwrap())
            + &poisson_bracket(&bad, &x(2), &poisson_bracket(&bad, &x(0), &x(1)).unwrap()).unwrap();
        prop_assert!(!coord.is_zero());
    }

    #[test]
    fn lichnerowicz_squares_to_zero(a in grade_strategy(3, 2)) {
        let pi = dubrovin();
        let f = random_field(pi.chart(), Variance::Multivector, a.0, a.1);
        let once = lichnerowicz(&pi, &f).unwrap();
        prop_assert!(lichnerowicz(&pi, &once).unwrap().is_zero());
    }
}
