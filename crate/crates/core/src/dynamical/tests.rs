use proptest::prelude::*;

use super::*;
use crate::lie::chevalley_sl;

fn sl2() -> (LieAlgebra, ChevalleyData) {
    let (lie, data, _) = chevalley_sl(2).unwrap();
    (lie, data)
}

fn sl2_with(c: RatFunc) -> DynamicalR {
    let (lie, data) = sl2();
    let r = Multivector::from_terms(3, 2, [(vec![data.e[0], data.f[0]], c)]).unwrap();
    DynamicalR::new(&lie, data.h.clone(), r).unwrap()
}

fn lam() -> Poly {
    Poly::var(1, 0)
}

fn a_over_lambda(a: Scalar) -> RatFunc {
    RatFunc::new(Poly::constant(1, a), lam()).unwrap()
}

/// Hand expansion for `r = c(λ) e∧f` in `sl_2` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`:
/// `h∧c′ e∧f = c′ e∧f∧h` and `½[c e∧f, c e∧f] = c² e∧f∧h`.
fn sl2_oracle(c: &RatFunc) -> RatFunc {
    &c.derivative(0) + &(c * c)
}

fn efh_coeff(m: &Multivector<RatFunc>) -> RatFunc {
    m.component(&[0, 1, 2]).unwrap_or_else(|| RatFunc::zero(1))
}

#[test]
fn sl2_residual_matches_hand_expansion() {
    for c in [
        RatFunc::constant(1, Scalar::one()),
        RatFunc::from_poly(lam()),
        a_over_lambda(Scalar::from_int(3)),
        RatFunc::new(&lam() * &lam(), &lam() + &Poly::one(1)).unwrap(),
    ] {
        let res = cdybe_residual(&sl2_with(c.clone())).unwrap();
        assert!(res.num_terms() <= 1);
        assert_eq!(efh_coeff(&res), sl2_oracle(&c), "c = {c:?}");
    }
}

#[test]
fn sl2_rational_normalization_is_unique() {
    let mut passing = Vec::new();
    for num in -4..=4 {
        for den in [1, 2, 3] {
            let a = Scalar::ratio(num, den);
            if check_dynamical(&sl2_with(a_over_lambda(a.clone())))
                .unwrap()
                .passed()
            {
                passing.push(a);
            }
        }
    }
    passing.dedup();
    // a = 0 gives the zero r-matrix whose residual vanishes trivially.
    assert_eq!(passing, vec![Scalar::zero(), Scalar::one()]);
    let res = cdybe_residual(&sl2_with(a_over_lambda(Scalar::one()))).unwrap();
    assert!(res.is_zero());
}

#[test]
fn sl2_rational_constructor_matches_frozen_constant() {
    let (lie, data) = sl2();
    assert_eq!(data.lambdas().unwrap(), vec![Scalar::one()]);
    let r = DynamicalR::rational(&lie, &data, &Scalar::one()).unwrap();
    assert_eq!(r.r().component(&[0, 1]), Some(a_over_lambda(Scalar::one())));
    assert!(cdybe_residual(&r).unwrap().is_zero());
    let report = check_dynamical(&r).unwrap();
    assert!(report.passed(), "{}", report.to_json_pretty());
}

#[test]
fn constant_control_passes() {
    let report = check_dynamical(&sl2_with(RatFunc::constant(1, Scalar::one()))).unwrap();
    assert!(report.passed(), "{}", report.to_json_pretty());
    let res = cdybe_residual(&sl2_with(RatFunc::constant(1, Scalar::one()))).unwrap();
    assert_eq!(efh_coeff(&res), RatFunc::constant(1, Scalar::one()));
}

#[test]
fn linear_control_fails_with_witness() {
    let report = check_dynamical(&sl2_with(RatFunc::from_poly(lam()))).unwrap();
    assert!(report.failed());
    let constant = report.child("constant").unwrap();
    assert!(constant.failed());
    assert!(report
        .child("invariant")
        .is_none_or(|c| !c.passed() && !c.failed()));
}

#[test]
fn abelian_constant_has_zero_residual() {
    let lie = LieAlgebra::abelian(vec!["a".into(), "b".into(), "c".into()]);
    let r = Multivector::from_terms(
        3,
        2,
        [(vec![0, 1], RatFunc::constant(0, Scalar::from_int(5)))],
    )
    .unwrap();
    let d = DynamicalR::new(&lie, Vec::new(), r).unwrap();
    assert!(cdybe_residual(&d).unwrap().is_zero());
}

#[test]
fn non_abelian_cartan_is_rejected() {
    let (lie, data) = sl2();
    let r = Multivector::zero(3, 2);
    assert!(DynamicalR::new(&lie, vec![data.e[0], data.f[0]], r).is_err());
}

#[test]
fn scaling_is_homogeneous() {
    let d = sl2_with(a_over_lambda(Scalar::from_int(2)));
    let t = Scalar::from_int(3);
    let lhs = efh_coeff(&cdybe_residual(&d.scale(&t)).unwrap());
    let c = a_over_lambda(Scalar::from_int(2));
    let expected = &c.derivative(0).scale(&t) + &(&c * &c).scale(&Scalar::from_int(9));
    assert_eq!(lhs, expected);
}

#[test]
fn sl3_rational_solution_passes() {
    let (lie, data, _) = chevalley_sl(3).unwrap();
    let r = DynamicalR::rational(&lie, &data, &Scalar::one()).unwrap();
    let report = check_dynamical(&r).unwrap();
    assert!(report.passed(), "{}", report.to_json_pretty());
    let wrong = DynamicalR::rational(&lie, &data, &Scalar::from_int(2)).unwrap();
    assert!(check_dynamical(&wrong).unwrap().failed());
}

#[test]
fn coth_family_numeric_spot_check() {
    let (lie, data) = sl2();
    let pts = vec![vec![0.3], vec![0.7], vec![1.9]];
    let report = coth_spot_check(&lie, &data, &pts, 1e-9).unwrap();
    assert!(report.passed(), "{}", report.to_json_pretty());
    assert!(report.to_json().contains("non-certifying"));
    let (lie3, data3, _) = chevalley_sl(3).unwrap();
    let pts = vec![vec![0.3, 0.5], vec![1.1, -0.4], vec![0.9, 2.0]];
    assert!(coth_spot_check(&lie3, &data3, &pts, 1e-9).unwrap().passed());
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (-3i64..=3, -3i64..=3, 0i32..=2, -2i64..=2).prop_map(|(a, b, p, s)| {
        let num = &Poly::constant(1, Scalar::from_int(a))
            + &Poly::monomial(
                1,
                Scalar::from_int(b),
                crate::kernel::poly::Exponents(vec![p]),
            );
        let den = &lam() + &Poly::constant(1, Scalar::from_int(s));
        RatFunc::new(num, den).unwrap()
    })
}

fn sl2_random() -> impl Strategy<Value = DynamicalR> {
    proptest::collection::vec(small_ratfunc(), 3).prop_map(|cs| {
        let (lie, data) = sl2();
        let r = Multivector::from_terms(
            3,
            2,
            [
                (vec![0, 1], cs[0].clone()),
                (vec![0, 2], cs[1].clone()),
                (vec![1, 2], cs[2].clone()),
            ],
        )
        .unwrap();
        DynamicalR::new(&lie, data.h.clone(), r).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residual_is_quadratic_affine(r1 in sl2_random(), r2 in sl2_random()) {
        let sum = r1.try_add(&r2).unwrap();
        let zero = r1.scale(&Scalar::zero());
        let lhs = cdybe_residual(&sum).unwrap()
            .try_sub(&cdybe_residual(&r1).unwrap()).unwrap()
            .try_sub(&cdybe_residual(&r2).unwrap()).unwrap()
            .try_add(&cdybe_residual(&zero).unwrap()).unwrap();
        let cross = schouten(r1.lie(), r1.r(), r2.r()).unwrap();
        prop_assert_eq!(lhs, cross);
    }

    #[test]
    fn constancy_is_reduction_robust(a in -3i64..=3, s in 1i64..=4) {
        let c = a_over_lambda(Scalar::from_int(a));
        let common = &lam() + &Poly::constant(1, Scalar::from_int(s));
        let padded = RatFunc::new(c.num() * &common, c.den() * &common).unwrap();
        let v1 = check_dynamical(&sl2_with(c)).unwrap().passed();
        let v2 = check_dynamical(&sl2_with(padded)).unwrap().passed();
        prop_assert_eq!(v1, v2);
    }
}
