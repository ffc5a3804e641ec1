//! Reproduction table for the published numerical claims: each row names a
//! claim, the value expected, the value computed, and whether they agree.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{compare_report, floor_two_sqrt, main_bound, main_bound_for_genus, weil_bounds, weil_serre_bounds};
use crate::codes::{
    build_trace_code, distance_bound_dual_bch, distance_bound_via_zero_counts, dual_bch_with_allone, fp_spanning_set,
    goppa_dual, min_distance_exhaustive,
};
use crate::counting::{
    count_curve_points, count_trace_zeros, distribution_via_shifts, reduce_trace_form, trace_value_distribution,
    CurveInstance,
};
use crate::error::Result;
use crate::field::{Elem, FieldSpec, FiniteField};
use crate::limits::Limits;
use crate::newton::{build_polygon, root_valuations, NewtonPolygon};
use crate::poly::Poly;
use crate::walsh::{nl_lower_bound_from_theorem, nl_upper_bound, nonlinearity, walsh_spectrum, WalshTransform};
use crate::zeta::{
    compute_l_polynomial, hasse_witt_invariant, l_polynomial, predicted_hasse_witt_artin_schreier, verify_weil_structure,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The published figure does not follow from the stated formulas or
    /// from exact computation; recorded, not counted as a failure.
    NotReproduced,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub key: String,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn row(key: &str, claim: &str, expected: impl ToString, observed: impl ToString) -> CheckRow {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    let status = if expected == observed { Status::Pass } else { Status::Fail };
    CheckRow { key: key.into(), claim: claim.into(), expected, observed, status, note: None }
}

fn flag(key: &str, claim: &str, ok: bool, observed: impl ToString) -> CheckRow {
    CheckRow {
        key: key.into(),
        claim: claim.into(),
        expected: "holds".into(),
        observed: observed.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        note: None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub number: u32,
    pub title: &'static str,
    pub pass: bool,
    pub seconds: f64,
    pub rows: Vec<CheckRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

type Criterion = fn(&Limits) -> Result<Vec<CheckRow>>;

pub const CRITERIA: [(u32, &str, Criterion); 10] = [
    (1, "bound arithmetic", bound_arithmetic),
    (2, "genus-4 example at q = 3^5", divergent_bound_example),
    (3, "improved bound on a quintic family over F_32", quintic_family),
    (4, "L-polynomial pipeline", l_polynomial_pipeline),
    (5, "Newton polygons", newton_polygons),
    (6, "binary [128, 22] trace code", binary_trace_code),
    (7, "dual BCH codes with the all-one word", dual_bch_codes),
    (8, "dual Goppa code [125, 7]", goppa_dual_code),
    (9, "Walsh spectra and nonlinearity", walsh_suite),
    (10, "cross-operation consistency", consistency),
];

/// Runs one criterion; errors become a failing row.
pub fn run_criterion(number: u32, limits: &Limits) -> Option<CriterionResult> {
    let &(number, title, check) = CRITERIA.iter().find(|c| c.0 == number)?;
    let start = Instant::now();
    let rows = check(limits).unwrap_or_else(|e| {
        vec![CheckRow {
            key: "error".into(),
            claim: title.into(),
            expected: "completes".into(),
            observed: format!("{} ({})", e, e.code()),
            status: Status::Fail,
            note: None,
        }]
    });
    let pass = rows.iter().all(|r| r.status != Status::Fail);
    Some(CriterionResult { number, title, pass, seconds: start.elapsed().as_secs_f64(), rows })
}

pub fn run_all(limits: &Limits) -> VerifyReport {
    let criteria: Vec<_> = CRITERIA.iter().filter_map(|c| run_criterion(c.0, limits)).collect();
    VerifyReport { pass: criteria.iter().all(|c| c.pass), criteria }
}

fn field(p: u64, n: u32) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::with_default_modulus(p, n)?))
}

pub fn bound_arithmetic(_: &Limits) -> Result<Vec<CheckRow>> {
    let r = compare_report(2, 7, 5)?;
    let r21 = compare_report(2, 21, 5)?;
    let (_, weil_n) = weil_bounds(2, 5, 2001)?;
    let (ws_n, _) = weil_serre_bounds(2, 5, 2001)?;
    Ok(vec![
        row("weil_serre_Z.q2^7.m5", "||Z_f| - 64| <= 22 by Weil-Serre", 22, r.weil_serre_Z),
        row("main_Z.q2^7.m5", "||Z_f| - 64| <= 16 by the improved bound", 16, r.main_Z),
        row("weil_serre_Z.q2^21.m5", "||Z_f| - 2^20| <= 2896 by Weil-Serre", 2896, r21.weil_serre_Z),
        row("main_Z.q2^21.m5", "||Z_f| - 2^20| <= 2048 by the improved bound", 2048, r21.main_Z),
        row("weil_N.q32.m2001", "|N_f - q - 1| <= 11313 by Weil", 11313, weil_n.floor()),
        row("weil_serre_N.q32.m2001", "|N_f - q - 1| <= 11000 by Weil-Serre", 11000, ws_n),
    ])
}

pub fn divergent_bound_example(_: &Limits) -> Result<Vec<CheckRow>> {
    let r = compare_report(3, 5, 5)?;
    let q = BigUint::from(243u32);
    let ws_g2 = floor_two_sqrt(&q) * 2u32 / 3u32;
    let main_g2 = main_bound_for_genus(3, 5, 2);
    let mut published = row(
        "published_pair.q3^5.m5",
        "Weil-Serre 20 and improved 18 for q = 3^5, m = 5",
        "20/18",
        format!("{}/{}", r.weil_serre_Z, r.main_Z),
    );
    if published.status == Status::Fail {
        published.status = Status::NotReproduced;
        published.note = Some(format!(
            "the formulas with g = (m-1)(p-1)/2 = {} give {}/{}; g = 2 gives {}/{}, and no m prime to 3 yields g = 2 at p = 3",
            r.g, r.weil_serre_Z, r.main_Z, ws_g2, main_g2
        ));
    }
    Ok(vec![
        row("weil_serre_Z.q3^5.m5", "formula value at g = 4", 41, r.weil_serre_Z),
        row("main_Z.q3^5.m5", "formula value at g = 4", 39, r.main_Z),
        published,
    ])
}

pub fn quintic_family(limits: &Limits) -> Result<Vec<CheckRow>> {
    let k = field(2, 5)?;
    let bound = main_bound(2, 5, 5)?;
    let mut worst = 0u64;
    let mut divisible = true;
    for a in 0..32 {
        for b in 0..32 {
            let f = Poly::from_terms(k.as_ref(), vec![(5, 1), (3, a), (1, b)])?;
            let c = CurveInstance::new(k.clone(), f)?;
            let z = count_trace_zeros(&c, limits)?;
            worst = worst.max(z.abs_diff(16));
            let n1 = 1 + 2 * z as i64;
            divisible &= (n1 - 33) % 8 == 0;
        }
    }
    Ok(vec![
        row("main_Z.q2^5.m5", "improved bound for quintics over F_32", 8, &bound),
        flag(
            "family.x5+ax3+bx.deviation",
            "||Z_f| - 16| <= 8 for all 1024 (a, b)",
            BigUint::from(worst) <= bound,
            format!("max deviation {worst}"),
        ),
        flag("family.x5+ax3+bx.divisibility", "8 divides N_f - 33 for all 1024 (a, b)", divisible, divisible),
    ])
}

pub fn l_polynomial_pipeline(limits: &Limits) -> Result<Vec<CheckRow>> {
    let e = CurveInstance::parse(field(2, 1)?, "x^3")?;
    let n1 = count_curve_points(&e, 1, limits)?;
    let n2 = count_curve_points(&e, 2, limits)?;
    let le = l_polynomial(&e, &[n1, n2])?;
    let c = CurveInstance::parse(field(2, 5)?, "x^5")?;
    let (l, _) = compute_l_polynomial(&c, 0, limits)?;
    let weil = verify_weil_structure(&l);
    let a1 = crate::newton::check_a1_valuation(&l, 5)?;
    let hw = hasse_witt_invariant(&l, 2);
    Ok(vec![
        row("elliptic.N1", "y^2 + y = x^3 over F_2 has 3 points", 3, n1),
        row("elliptic.N2", "and 9 points over F_4", 9, n2),
        row("elliptic.lpoly", "L(T) = 1 + 2T^2", "1 + 2T^2", format_l(le.coeffs())),
        row("x5.q32.lpoly", "L(T) for y^2 + y = x^5 over F_32", "1 + 1024T^4", format_l(l.coeffs())),
        flag("x5.q32.weil", "Weil structure of L(T)", weil.pass(), serde_json::to_string(&weil).unwrap()),
        row("x5.q32.hasse_witt", "Hasse-Witt invariant is 0", predicted_hasse_witt_artin_schreier(), hw),
        flag("x5.q32.a1_valuation", "v_2(a_1) >= 3", a1.pass, serde_json::to_string(&a1).unwrap()),
    ])
}

/// `1 - 8T + 32T^2` style rendering of integer coefficients.
pub fn format_l(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| c.sign() != Sign::NoSign) {
        let mag = c.magnitude();
        let var = match i {
            0 => String::new(),
            1 => "T".into(),
            _ => format!("T^{i}"),
        };
        let body = if i > 0 && mag == &BigUint::from(1u8) { var } else { format!("{mag}{var}") };
        let neg = c.sign() == Sign::Minus;
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// True when every point lies on or above each segment and slopes strictly
/// increase.
pub fn hull_invariants_hold(np: &NewtonPolygon) -> bool {
    let increasing = np.segments.windows(2).all(|w| w[0].slope < w[1].slope);
    let above = np.vertices.windows(2).all(|w| {
        let (x0, y0) = (w[0].0 as i128, w[0].1 as i128);
        let (x1, y1) = (w[1].0 as i128, w[1].1 as i128);
        np.points.iter().all(|&(x, y)| (y as i128 - y0) * (x1 - x0) >= (y1 - y0) * (x as i128 - x0))
    });
    increasing && above
}

pub fn newton_polygons(_: &Limits) -> Result<Vec<CheckRow>> {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let slopes = |np: &NewtonPolygon| {
        np.segments.iter().map(|s| format!("{}/{}x{}", s.slope.numer(), s.slope.denom(), s.length)).collect::<Vec<_>>().join(",")
    };
    let flat = build_polygon(&ints(&[3, 5, 1]), 2)?;
    let surd = build_polygon(&ints(&[2, 0, 1]), 2)?;
    let split = build_polygon(&ints(&[3, -4, 1]), 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ok = 0;
    for _ in 0..1000 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let deg = rng.gen_range(1..16);
        let mut u: Vec<BigInt> = (0..=deg)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    return BigInt::from(0);
                }
                BigInt::from(rng.gen_range(1..50i64)) * BigInt::from(p).pow(rng.gen_range(0..6))
            })
            .collect();
        u[0] += 1;
        *u.last_mut().unwrap() += 1;
        if u[0] == BigInt::from(0) || u[deg] == BigInt::from(0) {
            u[0] = BigInt::from(1);
            u[deg] = BigInt::from(1);
        }
        let np = build_polygon(&u, p)?;
        let mult: u64 = root_valuations(&np).iter().map(|r| r.1).sum();
        if hull_invariants_hold(&np) && mult == deg as u64 {
            ok += 1;
        }
    }
    Ok(vec![
        row("unit_coefficients", "unit coefficients give one slope-0 segment", "0/1x2", slopes(&flat)),
        row("T^2+2.p2", "T^2 + 2 at p = 2: slope -1/2, length 2", "-1/2x2", slopes(&surd)),
        row("(T-3)(T-1).p3", "(T - p)(T - 1): slopes -1 and 0", "-1/1x1,0/1x1", slopes(&split)),
        row("random.hull_and_multiplicity", "hull and multiplicity invariants on 1000 polynomials", 1000, ok),
        row(
            "T^2+2.valuations",
            "both roots of T^2 + 2 have valuation 1/2",
            "1/2x2",
            root_valuations(&surd).iter().map(|(k, m)| format!("{k}x{m}")).collect::<Vec<_>>().join(","),
        ),
    ])
}

pub fn binary_trace_code(limits: &Limits) -> Result<Vec<CheckRow>> {
    let k = field(2, 7)?;
    let points: Vec<Elem> = (0..128).collect();
    let code = build_trace_code(&k, &points, &fp_spanning_set(&k, &[1, 3, 5], None), true)?;
    let d = min_distance_exhaustive(&code, limits)?.unwrap_or(0);
    let bound = distance_bound_via_zero_counts(2, 7, 5, 128)?;
    Ok(vec![
        row("dimension", "Tr_P(deg <= 5) over F_128 has dimension 22", 22, code.dimension()),
        row("bound", "d >= 128 - (64 + 16) = 48", 48, &bound),
        row("min_distance", "minimum distance is exactly 48", 48, d),
    ])
}

pub fn dual_bch_codes(limits: &Limits) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (p, t, n, len, dim, bound) in [(2u64, 4u64, 5u32, 31usize, 11usize, 11i64), (3, 3, 3, 26, 7, 14)] {
        let c = dual_bch_with_allone(p, t, n)?;
        let b = distance_bound_dual_bch(p, t, n)?;
        let d = min_distance_exhaustive(&c.code, limits)?.unwrap_or(0);
        let key = format!("C_{p}({t},{n})");
        rows.push(row(&format!("{key}.parameters"), "length and dimension", format!("[{len},{dim}]"), format!("[{},{}]", c.code.length(), c.code.dimension())));
        rows.push(row(&format!("{key}.bound"), "distance bound", bound, &b));
        rows.push(flag(&format!("{key}.distance"), "exact distance meets the bound", BigInt::from(d) >= b, format!("d = {d}")));
    }
    Ok(rows)
}

pub fn goppa_dual_code(limits: &Limits) -> Result<Vec<CheckRow>> {
    let c = goppa_dual(5, 3, 2, None)?;
    let d = min_distance_exhaustive(&c.code, limits)?.unwrap_or(0);
    let derived = distance_bound_via_zero_counts(5, 3, 3, 125)?;
    let mut claimed = flag("claimed_bound_95", "d >= 95", d >= 95, format!("d = {d}"));
    if d < 95 {
        claimed.status = Status::NotReproduced;
        claimed.note = Some(
            "the Goppa-dual genus rule gives g = 0 at t = 2; 95 matches the improved bound with g = 2, \
             and the exact distance of this construction falls below it"
                .into(),
        );
    }
    Ok(vec![
        row("dimension", "dimension 7", 7, c.code.dimension()),
        row("derived_bound", "bound from zero counts with twisted degree 3", 83, &derived),
        flag("derived_bound_holds", "d >= 83", BigInt::from(d) >= derived, format!("d = {d}")),
        claimed,
    ])
}

pub fn walsh_suite(limits: &Limits) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for n in [5u32, 7] {
        let k = field(2, n)?;
        let s = walsh_spectrum(&k, &Poly::parse("x^3", k.as_ref())?, limits)?;
        rows.push(row(&format!("x3.q2^{n}.nl"), "NL(x^3) = 2^(n-1) - 2^((n-1)/2)", nl_upper_bound(n)?, nonlinearity(&s)));
    }
    let k = field(2, 7)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a15);
    let (mut max_w, mut min_nl, mut max_nl) = (0u64, u64::MAX, 0u64);
    for _ in 0..100 {
        let mut terms: Vec<(u64, Elem)> = (0..5).map(|e| (e, rng.gen_range(0..128))).collect();
        terms.push((5, rng.gen_range(1..128)));
        let f = Poly::from_terms(k.as_ref(), terms)?;
        let s = walsh_spectrum(&k, &f, limits)?;
        max_w = max_w.max(s.max_abs);
        let nl = nonlinearity(&s);
        min_nl = min_nl.min(nl);
        max_nl = max_nl.max(nl);
    }
    rows.push(flag("quintic.q2^7.max_walsh", "max |W| <= 32 for 100 random quintics", max_w <= 32, format!("max |W| = {max_w}")));
    let lower = nl_lower_bound_from_theorem(7, 5)?;
    rows.push(flag("quintic.q2^7.nl_lower", "NL >= 48", min_nl as i64 >= lower, format!("min NL = {min_nl}")));
    rows.push(flag("quintic.q2^7.nl_upper", "NL <= 56", max_nl <= nl_upper_bound(7)?, format!("max NL = {max_nl}")));
    let (count, agree) = fast_matches_direct_on_f8(limits)?;
    rows.push(flag("fast_vs_direct.q8", "fast transform equals direct summation over F_8", agree, format!("{count} functions")));
    Ok(rows)
}

/// Compares the fast spectrum with direct summation for every one of the
/// `8^8` functions `F_8 -> F_8`.
pub fn fast_matches_direct_on_f8(limits: &Limits) -> Result<(u64, bool)> {
    let k = FieldSpec::with_default_modulus(2, 3)?;
    let transform = WalshTransform::new(&k)?;
    // tr_mul[a][y] = Tr(a y)
    let tr_mul: Vec<[i32; 8]> = (0..8).map(|a| std::array::from_fn(|y| k.abs_trace(k.mul(a, y as u64)) as i32)).collect();
    // bit x of linear[b] is Tr(b x)
    let linear: Vec<u32> = (0..8).map(|b| (0..8).map(|x| (tr_mul[b][x] as u32) << x).sum()).collect();
    let total = 1u64 << 24;
    let parts = crate::limits::map_partitions(0..total, limits.threads, |range| {
        let mut fx = [0u64; 8];
        let (mut buf, mut row) = ([0i32; 8], [0i32; 8]);
        for code in range {
            for (x, v) in fx.iter_mut().enumerate() {
                *v = code >> (3 * x) & 7;
            }
            for (a, tr_a) in tr_mul.iter().enumerate().skip(1) {
                transform.component(a as u64, &fx, &mut buf, &mut row);
                // bit x of `g` is Tr(a f(x)); the direct sum over x is 8 - 2 wt(g + l_b)
                let g: u32 = (0..8).map(|x| (tr_a[fx[x] as usize] as u32) << x).sum();
                for (b, &w) in row.iter().enumerate() {
                    if w != 8 - 2 * (g ^ linear[b]).count_ones() as i32 {
                        return false;
                    }
                }
            }
        }
        true
    });
    Ok((total, parts.into_iter().all(|ok| ok)))
}

pub fn consistency(limits: &Limits) -> Result<Vec<CheckRow>> {
    let mut counted = 0;
    let mut zero_relation = true;
    for (p, n, f) in [(2, 5, "x^5 + 3*x^3 + 7*x"), (2, 7, "x^5 + x^2"), (3, 3, "x^4 + 2*x"), (5, 2, "x^3 + 4*x^2"), (7, 2, "x^2")] {
        let c = CurveInstance::parse(field(p, n)?, f)?;
        let z = count_trace_zeros(&c, limits)?;
        let n1 = count_curve_points(&c, 1, limits)?;
        zero_relation &= z == (n1 - 1) / p && (n1 - 1) % p == 0;
        counted += 1;
    }
    let mut reduction = true;
    for (p, n, f) in [(2, 16, "5*x^12 + 9*x^8 + x^6 + 77*x^4 + x^2 + 3"), (3, 10, "2*x^18 + 4*x^9 + x^6 + 7*x^3"), (5, 6, "x^25 + 3*x^10 + 11*x^5"), (7, 5, "2*x^49 + x^14 + x^7 + 5*x")] {
        let k = field(p, n)?;
        let g = Poly::parse(f, k.as_ref())?;
        let r = reduce_trace_form(&k, &g);
        reduction &= (0..k.q()).all(|x| k.abs_trace(g.eval(k.as_ref(), x)) == k.abs_trace(r.eval(k.as_ref(), x)));
    }
    let c = CurveInstance::parse(field(2, 5)?, "x^5 + 3*x^3 + 7*x")?;
    let mut shifts = true;
    for beta in 1..32 {
        shifts &= trace_value_distribution(&c, beta, limits)? == distribution_via_shifts(&c, beta, limits)?;
    }
    Ok(vec![
        flag("zero_count_relation", "|Z_f| = (N_f - 1)/p", zero_relation, format!("{counted} curves")),
        flag("reduction_preserves_traces", "reduced form has the same traces, exhaustively up to 2^16 elements", reduction, reduction),
        flag("distribution_via_shifts.q32", "M(a) = |Z_(beta f - gamma_a)| for all beta", shifts, shifts),
    ])
}
