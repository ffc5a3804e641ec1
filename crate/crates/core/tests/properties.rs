use std::sync::Arc;

use artin_schreier::bounds::{compare_report, floor_two_sqrt, main_bound, zero_count_within};
use artin_schreier::codes::{build_trace_code, fp_spanning_set, min_distance_exhaustive, weight_distribution};
use artin_schreier::counting::{
    count_curve_points, count_trace_zeros, distribution_via_shifts, reduce_trace_form, trace_value_distribution,
    CurveInstance,
};
use artin_schreier::field::{Elem, FieldSpec, FiniteField};
use artin_schreier::newton::{build_polygon, root_valuations};
use artin_schreier::poly::Poly;
use artin_schreier::walsh::{nonlinearity, walsh_spectrum};
use artin_schreier::zeta::{compute_l_polynomial, l_polynomial_from_counts, verify_weil_structure};
use artin_schreier::Limits;
use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn field(p: u64, n: u32) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::with_default_modulus(p, n).unwrap())
}

fn small_field() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
}

/// Random polynomial over `F_{p^n}` with up to six terms of degree below 30.
fn curve() -> impl Strategy<Value = CurveInstance> {
    small_field().prop_flat_map(|(p, n)| {
        let q = p.pow(n);
        prop::collection::vec((0u64..30, 0..q), 1..6).prop_map(move |terms| {
            let k = field(p, n);
            let f = Poly::from_terms(k.as_ref(), terms).unwrap();
            CurveInstance::new(k, f).unwrap()
        })
    })
}

fn lower_hull_by_wrapping(points: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut hull = vec![points[0]];
    let mut cur = points[0];
    while cur != *points.last().unwrap() {
        let next = points
            .iter()
            .filter(|pt| pt.0 > cur.0)
            .copied()
            .reduce(|b, pt| {
                let lhs = (pt.1 as i128 - cur.1 as i128) * (b.0 - cur.0) as i128;
                let rhs = (b.1 as i128 - cur.1 as i128) * (pt.0 - cur.0) as i128;
                if lhs < rhs || (lhs == rhs && pt.0 > b.0) { pt } else { b }
            })
            .unwrap();
        hull.push(next);
        cur = next;
    }
    hull
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_preserves_traces(c in curve()) {
        let k = c.field();
        let r = reduce_trace_form(k, c.original());
        let p = k.p();
        prop_assert!(r.terms().iter().all(|&(e, _)| e == 0 || e % p != 0));
        for x in 0..k.q() {
            prop_assert_eq!(k.abs_trace(c.original().eval(k.as_ref(), x)), k.abs_trace(r.eval(k.as_ref(), x)));
        }
    }

    #[test]
    fn point_counts_are_consistent(c in curve()) {
        let lim = Limits::default();
        let p = c.field().p();
        let z = count_trace_zeros(&c, &lim).unwrap();
        let n1 = count_curve_points(&c, 1, &lim).unwrap();
        prop_assert_eq!(n1 % p, 1);
        prop_assert_eq!(z, (n1 - 1) / p);
        let dist = trace_value_distribution(&c, 1, &lim).unwrap();
        prop_assert_eq!(dist.total(), c.field().q());
        prop_assert_eq!(dist.counts[0], z);
    }

    #[test]
    fn counts_do_not_depend_on_partitioning(c in curve(), threads in 2usize..6) {
        let one = Limits::default().with_threads(1);
        let many = Limits::default().with_threads(threads);
        prop_assert_eq!(count_curve_points(&c, 2, &one).unwrap(), count_curve_points(&c, 2, &many).unwrap());
    }

    #[test]
    fn shifted_distributions_agree(c in curve(), seed in any::<u64>()) {
        let lim = Limits::default();
        let beta = 1 + seed % (c.field().q() - 1);
        prop_assert_eq!(
            trace_value_distribution(&c, beta, &lim).unwrap(),
            distribution_via_shifts(&c, beta, &lim).unwrap()
        );
    }

    #[test]
    fn l_polynomial_round_trips(c in curve()) {
        let lim = Limits::default();
        prop_assume!(c.genus().is_some_and(|g| g > 0 && g <= 4));
        prop_assume!(c.field().q().pow(c.genus().unwrap() as u32 + 1) <= 1 << 16);
        let (l, counts) = compute_l_polynomial(&c, 1, &lim).unwrap();
        prop_assert!(verify_weil_structure(&l).pass());
        let predicted = l.predicted_counts(counts.len());
        let counts: Vec<BigInt> = counts.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(&predicted, &counts);
        let again = l_polynomial_from_counts(l.q().clone(), l.genus(), &counts).unwrap();
        prop_assert_eq!(again, l);
    }

    #[test]
    fn improved_bound_holds(p in prop::sample::select(vec![2u64, 3, 5]),
                            n in prop::sample::select(vec![3u32, 5]),
                            terms in prop::collection::vec((1u64..12, 1u64..u64::MAX), 1..4)) {
        let k = field(p, n);
        prop_assume!(k.q() <= 1 << 12);
        let f = Poly::from_terms(k.as_ref(), terms.into_iter().map(|(e, c)| (e, c % k.q()))).unwrap();
        let c = CurveInstance::new(k.clone(), f).unwrap();
        let m = c.degree();
        prop_assume!(m >= 2 && !m.is_multiple_of(p));
        let z = count_trace_zeros(&c, &Limits::default()).unwrap();
        let bound = main_bound(p, n, m).unwrap();
        prop_assert!(zero_count_within(z, k.q(), p, &bound), "|Z| = {} for {} with bound {}", z, c.poly(), bound);
    }

    #[test]
    fn floor_two_sqrt_brackets(q in 2u64..u64::MAX) {
        let s = floor_two_sqrt(&BigUint::from(q));
        let four_q = BigUint::from(q) * 4u32;
        prop_assert!(&s * &s <= four_q);
        prop_assert!((&s + 1u32) * (&s + 1u32) > four_q);
    }

    #[test]
    fn bound_chain_is_ordered(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
                              half in 1u32..12, m in 2u64..200) {
        prop_assume!(m % p != 0);
        let r = compare_report(p, 2 * half + 1, m).unwrap();
        prop_assert!(r.main_Z <= r.weil_serre_Z);
    }

    #[test]
    fn hull_matches_gift_wrapping(p in prop::sample::select(vec![2u64, 3, 5]),
                                  coeffs in prop::collection::vec((-50i64..50, 0u32..6), 2..16)) {
        let mut u: Vec<BigInt> = coeffs.iter().map(|&(c, e)| BigInt::from(c) * BigInt::from(p).pow(e)).collect();
        let last = u.len() - 1;
        for i in [0, last] {
            if u[i].is_zero() {
                u[i] = BigInt::one();
            }
        }
        let np = build_polygon(&u, p).unwrap();
        prop_assert_eq!(&np.vertices, &lower_hull_by_wrapping(&np.points));
        let mult: u64 = root_valuations(&np).iter().map(|r| r.1).sum();
        prop_assert_eq!(mult, last as u64);
    }

    #[test]
    fn factored_polynomial_root_valuations(p in prop::sample::select(vec![2u64, 3, 5, 7]),
                                           linear in prop::collection::vec((0u32..5, 1i64..40), 0..4),
                                           quadratic in prop::collection::vec((0u32..5, 1i64..40), 0..3)) {
        prop_assume!(!linear.is_empty() || !quadratic.is_empty());
        let unit = |u: i64| if u % p as i64 == 0 { u + 1 } else { u };
        let mut product = vec![BigInt::one()];
        let mut expected: Vec<Ratio<i64>> = Vec::new();
        for &(k, u) in &linear {
            let root = BigInt::from(p).pow(k) * unit(u);
            product = poly_mul(&product, &[-root, BigInt::one()]);
            expected.push(Ratio::from_integer(k as i64));
        }
        for &(k, u) in &quadratic {
            // T^2 + c has both roots of valuation v(c) / 2
            let c = BigInt::from(p).pow(k) * unit(u);
            product = poly_mul(&product, &[c, BigInt::zero(), BigInt::one()]);
            expected.extend([Ratio::new(k as i64, 2); 2]);
        }
        expected.sort();
        let np = build_polygon(&product, p).unwrap();
        let mut got: Vec<Ratio<i64>> = root_valuations(&np)
            .into_iter()
            .flat_map(|(v, mult)| std::iter::repeat_n(v, mult as usize))
            .collect();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn walsh_parseval_and_direct_values(n in 2u32..7, coeffs in prop::collection::vec(any::<u64>(), 6)) {
        let k = field(2, n);
        let q = k.q();
        let f = Poly::from_terms(k.as_ref(), coeffs.iter().enumerate().map(|(e, &c)| (e as u64, c % q))).unwrap();
        let s = walsh_spectrum(&k, &f, &Limits::default()).unwrap();
        prop_assert!(s.parseval);
        for a in 1..q {
            for b in 0..q {
                let direct: i32 = (0..q)
                    .map(|x| if k.abs_trace(k.add(k.mul(a, f.eval(k.as_ref(), x)), k.mul(b, x))) == 0 { 1 } else { -1 })
                    .sum();
                prop_assert_eq!(s.get(a, b), Some(direct));
            }
        }
        prop_assert_eq!(nonlinearity(&s), (q - s.max_abs) / 2);
    }

    #[test]
    fn single_generator_code_weight_is_q_minus_zero_count(c in curve()) {
        let k = c.field();
        let points: Vec<Elem> = (0..k.q()).collect();
        let code = build_trace_code(k, &points, std::slice::from_ref(c.original()), false).unwrap();
        let z = count_trace_zeros(&c, &Limits::default()).unwrap();
        let hist = weight_distribution(&code, &Limits::default()).unwrap();
        let weight = (k.q() - z) as usize;
        if weight == 0 {
            prop_assert_eq!(code.dimension(), 0);
        } else {
            let mut want = vec![0u64; k.q() as usize + 1];
            want[weight] = k.p() - 1;
            prop_assert_eq!(hist, want);
        }
    }
}

/// The same dual BCH construction under two different defining moduli gives
/// codes with identical dimension and weight distribution.
#[test]
fn distance_does_not_depend_on_modulus() {
    let lim = Limits::default();
    for (p, n, other, exps) in [
        (2u64, 5u32, vec![1u64, 0, 0, 1, 0, 1], vec![1u64, 3, 5, 7]),
        (3, 3, vec![1, 0, 2, 1], vec![1, 2, 4, 5]),
        (5, 2, vec![2, 1, 1], vec![1, 2, 3, 4, 6]),
    ] {
        let hist = |k: FieldSpec| {
            let points: Vec<Elem> = (1..k.q()).collect();
            let code = build_trace_code(&k, &points, &fp_spanning_set(&k, &exps, None), true).unwrap();
            (code.dimension(), weight_distribution(&code, &lim).unwrap(), min_distance_exhaustive(&code, &lim).unwrap())
        };
        let default = FieldSpec::with_default_modulus(p, n).unwrap();
        assert_ne!(default.modulus(), other.as_slice());
        assert_eq!(hist(default), hist(FieldSpec::new(p, n, other).unwrap()), "p = {p}, n = {n}");
    }
}
