//! Randomized properties across the crate's public surface.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;
use seqring::algebra::{rat, ratio};
use seqring::json::ZeroReport;
use seqring::orbit::{membership_on_trace, orbit_membership_set, rebase};
use seqring::recurrence::guess_recurrence;
use seqring::sequence::{
    constant_transition, fundamental_matrix, fundamental_matrix_at, indicator_sequence,
    solve_equation,
};
use seqring::zeros::{decompose_zero_set, zero_set, DecomposeParams};
use seqring::*;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        ..ProptestConfig::default()
    }
}

fn nonzero_poly(rng: &mut rand_chacha::ChaCha8Rng, deg: usize) -> Poly {
    loop {
        let p = common::int_poly(rng, deg, 4);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Equation of order `1..=3` whose coefficients are integer polynomials of
/// degree at most 2.
fn poly_equation(rng: &mut rand_chacha::ChaCha8Rng) -> Equation {
    let order = rng.gen_range(1..=3);
    let mut coeffs = vec![RatFunc::from(nonzero_poly(rng, 2))];
    for _ in 1..order {
        coeffs.push(RatFunc::from(common::int_poly(rng, 2, 4)));
    }
    Equation::new(coeffs).unwrap()
}

fn nonzero_init(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..n).map(|_| common::small_rat(rng)).collect();
        if v.iter().any(|x| *x != 0) {
            return v;
        }
    }
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn ratfunc_canonical_form(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let num = common::int_poly(&mut rng, 3, 6);
        let den = nonzero_poly(&mut rng, 2);
        let a = nonzero_poly(&mut rng, 2);
        let h = RatFunc::new(num.clone(), den.clone()).unwrap();
        prop_assert_eq!(RatFunc::new(&a * &num, &a * &den).unwrap(), h.clone());
        prop_assert!(h.den().leading().is_some_and(|c| *c == 1));
        if h.is_zero() {
            prop_assert!(h.den().is_one());
        }
        prop_assert_eq!(h.to_string().parse::<RatFunc>().unwrap(), h);
    }

    #[test]
    fn ratfunc_shift_is_a_ring_action(seed in any::<u64>(), t in -6i64..6, i in -20i64..20) {
        let mut rng = common::rng(seed);
        let h1 = RatFunc::new(common::int_poly(&mut rng, 2, 5), nonzero_poly(&mut rng, 2)).unwrap();
        let h2 = RatFunc::new(common::int_poly(&mut rng, 2, 5), nonzero_poly(&mut rng, 1)).unwrap();
        prop_assert_eq!((&h1 * &h2).shift(t), &h1.shift(t) * &h2.shift(t));
        prop_assert_eq!((&h1 + &h2).shift(t), &h1.shift(t) + &h2.shift(t));
        prop_assert_eq!(h1.shift(t).shift(-t), h1.clone());
        if let (Ok(a), Ok(b)) = (h1.shift(1).eval(i), h1.eval(i + 1)) {
            prop_assert_eq!(a, b);
        }
        prop_assert_eq!(h1.shift(1).eval(i).is_ok(), h1.eval(i + 1).is_ok());
    }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn guessing_recovers_generated_solutions(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let eq = poly_equation(&mut rng);
        let init = nonzero_init(&mut rng, eq.order());
        let f = solve_equation(&eq, &init, 0, 79).unwrap();
        let rel = guess_recurrence(0, f.values(), eq.order(), 2).unwrap();
        prop_assert!(rel.is_some(), "no relation for {}", eq);
        let rel = rel.unwrap();
        prop_assert!(rel.order() <= eq.order());
        prop_assert!(rel.holds_on(0, f.values()));
        // substitution, index by index, including the held-out tail
        let r = rel.order();
        for p in 0..f.len() - r {
            let x = Rat::from(p as i64);
            let s: Rat = rel.polys.iter().enumerate().map(|(j, c)| c.eval(&x) * &f.values()[p + j]).sum();
            prop_assert_eq!(s, rat(0));
        }
    }

    #[test]
    fn companion_correspondence(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let eq = poly_equation(&mut rng);
        let n = eq.order();
        let f = solve_equation(&eq, &nonzero_init(&mut rng, n), 0, 60).unwrap();
        let sys = eq.companion_matrix();
        for i in 0..=(60 - n as u64) {
            let window: Vec<Rat> = (i..=i + n as u64).filter_map(|k| f.get(k).cloned()).collect();
            if window.len() == n + 1 {
                prop_assert_eq!(eq.residual(i as i64, &window).unwrap(), rat(0));
                let next = sys.step_matrix(i as i64).map(|a| a.mul_vec(&window[..n]));
                if let Some(next) = next {
                    prop_assert_eq!(&next[..], &window[1..]);
                }
            }
        }
        // a stacked vector that breaks the step is not a solution
        let mut broken = f.values().to_vec();
        broken[n] += rat(1);
        let window = &broken[..=n];
        prop_assert_ne!(eq.residual(0, window).unwrap(), rat(0));
    }

    #[test]
    fn fundamental_matrix_laws(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sys = common::rational_system(&mut rng, 3);
        let n = sys.dim();
        let y = fundamental_matrix(&sys, 80, None).unwrap();
        let det = y.det();
        for i in y.start()..80 {
            let lhs = det.get(i + 1).unwrap().clone();
            let rhs = sys.det().eval(i as i64).unwrap() * det.get(i).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_ne!(det.get(i).unwrap().clone(), rat(0));
        }
        let seed_mat = common::invertible_matrix(&mut rng, n);
        let later = rng.gen_range(y.start()..y.start() + 10);
        let y2 = fundamental_matrix_at(&sys, later, 80, Some(seed_mat)).unwrap();
        let c = constant_transition(&y, &y2).unwrap();
        prop_assert_ne!(c.det(), rat(0));
    }

    #[test]
    fn companion_columns_solve_the_equation(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = rng.gen_range(1..=3);
        let eq = common::bell_equation(&mut rng, order, 2);
        let n = eq.order();
        let y = fundamental_matrix(&eq.companion_matrix(), 60, None).unwrap();
        for j in 0..n {
            let col = y.entry(0, j);
            for i in col.start()..=(60 - n as u64) {
                let w: Vec<Rat> = (i..=i + n as u64).map(|k| col.get(k).unwrap().clone()).collect();
                prop_assert_eq!(eq.residual(i as i64, &w).unwrap(), rat(0));
            }
        }
    }

    #[test]
    fn idempotents_and_vanishing_products(j in 0u64..12, l in 1u64..12, seed in any::<u64>()) {
        let j = j % l;
        let h = 200;
        let e = indicator_sequence(&ApSet::progression(j, l), 0, h);
        prop_assert_eq!(e.mul(&e).unwrap(), e.clone());
        let other = indicator_sequence(&ApSet::progression((j + 1) % l, l), 0, h);
        if l > 1 {
            prop_assert!(e.mul(&other).unwrap().is_zero());
        }
        let mut sum = e.clone();
        for t in 1..l {
            sum = sum.add(&e.shift(t).unwrap()).unwrap();
        }
        prop_assert!(sum.values().iter().all(|v| *v == 1));

        // g vanishes on j + lN, so g * σg * ... * σ^{l-1}g vanishes everywhere
        let mut rng = common::rng(seed);
        let mask = indicator_sequence(&ApSet::progression(j, l).complement(), 0, h);
        let noise = ExactSeq::new(0, (0..=h).map(|_| common::small_rat(&mut rng) + rat(10)).collect(), "noise");
        let g = noise.mul(&mask).unwrap();
        let mut prod = g.clone();
        for t in 1..l {
            prod = prod.mul(&g.shift(t).unwrap()).unwrap();
        }
        prop_assert!(prod.is_zero());
        prop_assert_eq!(prod.window(), (0, h - (l - 1)));
    }

    #[test]
    fn decomposition_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::apset(&mut rng, 12, 50);
        let params = DecomposeParams::default();
        let f = indicator_sequence(&s.complement(), 0, 2000);
        let d = decompose_zero_set(&f, params).unwrap();
        prop_assert!(d.apset.equal_mod_finite(&s), "{} vs {}", d.apset, s);
        prop_assert_eq!(&d.apset, &s);
        prop_assert_ne!(d.status, Status::Inconclusive);
        // soundness on the whole stored range
        let zeros = zero_set(&f);
        for i in 0..=2000 {
            prop_assert_eq!(d.apset.contains(i), zeros.contains(&i));
        }
        // minimality: nothing shorter fits the verification window
        let p = d.period.unwrap_or(1);
        if p > 1 {
            let shorter = DecomposeParams { max_period: p - 1, ..params };
            let again = decompose_zero_set(&f, shorter).unwrap();
            prop_assert_eq!(again.status, Status::Inconclusive);
        }
        // the report's set survives a JSON round trip unchanged
        let report = serde_json::to_value(ZeroReport::new(&d, vec![])).unwrap();
        let back: ApSet = serde_json::from_value(report["apset"].clone()).unwrap();
        prop_assert_eq!(back.canonicalize(), d.apset.clone());
    }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn orbit_agrees_with_fundamental_matrix(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sys = common::bell_system(&mut rng, 3, 2);
        let n = sys.dim();
        let y = fundamental_matrix(&sys, 120, None).unwrap();
        let trace = OrbitTrace::compute(&sys, &OrbitState::identity(y.start() as i64, n), 120).unwrap();
        for j in 0..n {
            let psi = trace.evaluate(&RegularFunction::entry(n, 0, j)).unwrap();
            prop_assert_eq!(psi, y.entry(0, j));
        }
        prop_assert_eq!(trace.evaluate(&RegularFunction::det(n)).unwrap(), y.det());
    }

    #[test]
    fn psi_commutes_with_sigma(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sys = common::rational_system(&mut rng, 3);
        let n = sys.dim();
        let f = common::regular_function(&mut rng, n, 2, 1);
        let b = rng.gen_range(0..=4);
        let x = OrbitState::new(b, common::invertible_matrix(&mut rng, n)).unwrap();
        let trace = OrbitTrace::compute(&sys, &x, 60).unwrap();
        let psi_f = trace.evaluate(&f).unwrap();
        let psi_sf = trace.evaluate(&f.sigma_action(&sys).unwrap()).unwrap();
        let (ok, window) = psi_sf.agrees_with(&psi_f.shift(1).unwrap()).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(window, (b as u64, 59));
    }

    #[test]
    fn det_is_multiplicative_under_sigma(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sys = common::rational_system(&mut rng, 3);
        let n = sys.dim();
        let det = RegularFunction::det(n);
        let expected = det.mul(&RegularFunction::from_ratfunc(n, sys.det().clone())).unwrap();
        prop_assert_eq!(det.sigma_action(&sys).unwrap(), expected);
        let inv = RegularFunction::inverse_det_power(n, 1);
        let inv_expected = inv.mul(&RegularFunction::from_ratfunc(n, RatFunc::one().checked_div(sys.det()).unwrap())).unwrap();
        prop_assert_eq!(inv.sigma_action(&sys).unwrap(), inv_expected);
    }

    #[test]
    fn hypersurfaces_and_rebasing(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sys = common::bell_system(&mut rng, 2, 1);
        let n = sys.dim();
        let b = rng.gen_range(0..=5i64);
        let x = OrbitState::new(b, common::invertible_matrix(&mut rng, n)).unwrap();
        let h = 80;
        let trace = OrbitTrace::compute(&sys, &x, h).unwrap();
        // generators f - psi(f)(k) are guaranteed to vanish at k
        let k = rng.gen_range(b as u64..=b as u64 + 3);
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let f = common::regular_function(&mut rng, n, 1, 1);
            let c = trace.evaluate(&f).unwrap().get(k).unwrap().clone();
            gens.push(f.sub(&RegularFunction::from_ratfunc(n, RatFunc::constant(c))).unwrap());
        }
        let y = Subvariety::new(gens.clone()).unwrap();
        let joint = membership_on_trace(&trace, &y).unwrap();
        let mut meet: Option<ApSet> = None;
        for g in &gens {
            let single = Subvariety::new(vec![g.clone()]).unwrap();
            let set = ApSet::finite(orbit_membership_set(&sys, &x, &single, h).unwrap());
            meet = Some(match meet {
                None => set,
                Some(m) => m.intersect(&set),
            });
        }
        let meet: BTreeSet<u64> = meet.unwrap().members_in(b as u64, h).collect();
        prop_assert_eq!(&joint, &meet);
        prop_assert!(joint.contains(&k));

        let reb = orbit_membership_set(&rebase(&sys, b), &x.rebased(), &y.shift_z(b), h - b as u64).unwrap();
        let moved: BTreeSet<u64> = reb.iter().map(|i| i + b as u64).collect();
        prop_assert_eq!(joint, moved);
    }

    #[test]
    fn regular_function_json_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=3);
        let f = common::regular_function(&mut rng, n, 2, 2);
        let j = serde_json::to_string(&seqring::json::RegularFunctionJson::from(&f)).unwrap();
        let back: seqring::json::RegularFunctionJson = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back.to_function(n).unwrap(), f.clone());
        prop_assert_eq!(RegularFunction::parse(&f.to_string(), n).unwrap(), f);
    }
}

#[test]
fn rational_matrix_evaluation_is_exact() {
    let f = RegularFunction::parse("Z[1][2]*detZ^-1", 2).unwrap();
    let m = seqring::json::rat_matrix_from_strings(&[vec!["1/3", "2/7"], vec!["5", "1/2"]]).unwrap();
    let det = ratio(1, 6) - ratio(10, 7);
    assert_eq!(f.evaluate(0, &m).unwrap(), ratio(2, 7) / det);
}
