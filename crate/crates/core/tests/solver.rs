use rug::{Float, Rational};

use ramanujan_jet::expansions::{extract_signature, extract_signature_cut, verify_expansion, ExpansionData};
use ramanujan_jet::hyperseries::{SeriesFamily, TAIL_SLACK_BITS};
use ramanujan_jet::modular::closed_form_3f2_half;
use ramanujan_jet::numerics::PrecisionContext;
use ramanujan_jet::solver::{solve, solve_3f2, solve_5f4, RamanujanSolution};
use ramanujan_jet::Error;

fn r(p: i64, q: i64) -> Rational {
    Rational::from((p, q))
}

fn half_half() -> SeriesFamily {
    SeriesFamily::f54(r(1, 2), r(1, 2)).unwrap()
}

fn data_of(sol: &RamanujanSolution) -> ExpansionData {
    let mut coeffs = vec![sol.a.value.clone(), sol.b.value.clone()];
    coeffs.extend(sol.c.as_ref().map(|c| c.value.clone()));
    ExpansionData::new(sol.family.clone(), sol.z.value.clone(), sol.u, coeffs).unwrap()
}

#[test]
fn solved_values_satisfy_the_expansion() {
    let ctx = PrecisionContext::default();
    let sol = solve_5f4(&r(1, 2), &r(1, 2), &r(5, 1), -1, &ctx).unwrap();
    let res = verify_expansion(&data_of(&sol), &[r(5, 1), r(305, 1)], &ctx).unwrap();
    assert!(res.iter().all(|x| *x < 1e-50), "{res:?}");
    let gap = sol.newton_bisection_gap.expect("cross-check ran");
    assert!(gap < 1e-60, "Newton and bisection disagree by {gap}");
    assert_eq!(sol.bracket_count, 1);
}

#[test]
fn recognized_values_satisfy_the_expansion_exactly() {
    let ctx = PrecisionContext::default();
    let sol = solve_3f2(&r(1, 2), &r(2, 1), 1, &ctx).unwrap();
    let exact: Vec<Rational> =
        [&sol.z, &sol.a, &sol.b].iter().map(|s| s.exact.as_rational().expect("recognized").clone()).collect();
    let data = ExpansionData::exact(sol.family.clone(), &exact[0], &exact[1..], &ctx).unwrap();
    let res = verify_expansion(&data, &[r(2, 1)], &ctx).unwrap();
    assert!(res.iter().all(|x| *x < 1e-70), "{res:?}");
}

#[test]
fn signature_round_trip_from_solver_instances() {
    let ctx = PrecisionContext::default();
    for (k, j) in [(1i64, 25i64), (5, 305)] {
        let sol = solve_5f4(&r(1, 2), &r(1, 2), &r(k, 1), -1, &ctx).unwrap();
        let sig = extract_signature(&data_of(&sol), 1_000_000, &ctx).unwrap();
        for (name, want) in [("k", k), ("j", j)] {
            let v = &sig.get(name).unwrap().value;
            assert!(Float::with_val(v.prec(), v - want).abs() < 1e-40, "k={k}: {name} = {v}");
        }
        assert!(sig.odd_residuals.iter().all(|x| *x < 1e-40), "odd components {:?}", sig.odd_residuals);
    }
}

#[test]
fn odd_components_vanish_for_solved_3f2() {
    let ctx = PrecisionContext::default();
    for k in 1..=3 {
        let sol = solve_3f2(&r(1, 2), &r(k, 1), 1, &ctx).unwrap();
        let sig = extract_signature(&data_of(&sol), 1_000_000, &ctx).unwrap();
        assert_eq!(sig.odd_residuals.len(), 1);
        assert!(sig.odd_residuals[0] < 1e-50, "k={k}: {}", sig.odd_residuals[0]);
        assert_eq!(sig.get("k").unwrap().exact.as_rational(), Some(&r(k, 1)));
    }
}

#[test]
fn tail_cut_slack_does_not_move_the_signature() {
    let ctx = PrecisionContext::default();
    let data = ExpansionData::exact(half_half(), &r(-1, 4), &[r(1, 8), r(1, 1), r(5, 2)], &ctx).unwrap();
    let a = extract_signature_cut(&data, 1_000_000, TAIL_SLACK_BITS, &ctx).unwrap();
    let b = extract_signature_cut(&data, 1_000_000, TAIL_SLACK_BITS - 1, &ctx).unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert_eq!(x.exact.kind, y.exact.kind);
        assert!(Float::with_val(ctx.prec(), &x.value - &y.value).abs() < 1e-70);
    }
}

#[test]
fn doubling_precision_keeps_recognized_outputs() {
    let low = PrecisionContext::default();
    let high = low.doubled();
    assert_eq!(high.working_bits(), 512);
    let a = solve(&half_half(), &r(1, 1), -1, &low).unwrap();
    let b = solve(&half_half(), &r(1, 1), -1, &high).unwrap();
    assert!(a.fully_recognized() && b.fully_recognized());
    for (x, y) in [(&a.z, &b.z), (&a.a, &b.a), (&a.b, &b.b), (&a.tau, &b.tau)] {
        assert_eq!(x.exact.kind, y.exact.kind);
    }
    assert_eq!(a.j.as_ref().unwrap().exact.kind, b.j.as_ref().unwrap().exact.kind);
    assert!(b.max_residual() < 1e-140, "{}", b.max_residual());
}

#[test]
fn b_matches_the_lambda_form_up_to_branch_sign() {
    let ctx = PrecisionContext::default();
    for k in 1..=3 {
        let k = r(k, 1);
        let sol = solve_3f2(&r(1, 2), &k, 1, &ctx).unwrap();
        let closed = closed_form_3f2_half(&k, &ctx).unwrap();
        let sum = Float::with_val(ctx.prec(), &sol.b.value + &closed.b).abs();
        assert!(sum < 1e-50, "k={k}: b = {} against {}", sol.b.value, closed.b);
        let da = Float::with_val(ctx.prec(), &sol.a.value - &closed.a).abs();
        assert!(da < 1e-50, "k={k}: a");
        assert!(closed.dz_residual < 1e-50);
    }
}

#[test]
fn positive_branch_at_k1_is_consistent_but_unrecognized() {
    let ctx = PrecisionContext::default();
    let sol = solve(&half_half(), &r(1, 1), 1, &ctx).unwrap();
    assert!(sol.max_residual() < 1e-50);
    assert!(!sol.fully_recognized());
}

#[test]
fn refusals() {
    let ctx = PrecisionContext::default();
    assert!(matches!(solve_3f2(&r(1, 2), &r(0, 1), 1, &ctx), Err(Error::Divergence(_))));
    assert!(matches!(solve_3f2(&r(1, 2), &r(-9, 10), 1, &ctx), Err(Error::OutOfRegion(_))));
    assert!(matches!(solve(&SeriesFamily::f76(), &r(1, 1), 1, &ctx), Err(Error::Unsupported(_))));
    assert!(matches!(solve(&half_half(), &r(1, 1), 2, &ctx), Err(Error::Domain(_))));
}
