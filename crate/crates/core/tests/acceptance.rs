//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion whose only failing checks compare against a printed
//! closed form that is itself inconsistent (the check is kept as stated)
//! is reported as FAIL with the reason, and does not fail the run; every
//! other failure does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codebounds::algebra::poly::ExactPoly;
use codebounds::algebra::scalar::{self, int, rat, Scalar};
use codebounds::diagnostics::testfn::{direct_value, power_sum_value, power_sums};
use codebounds::diagnostics::{distance_distribution, improving_polynomial, refine_polynomials, scan_test_functions, RefineOptions, Verdict};
use codebounds::energy::{energy_lower_bound, energy_lower_bound_at_k, energy_upper_bound, Potential};
use codebounds::krawtchouk::HammingSpace;
use codebounds::levenshtein::closed_forms::{
    binary_ell, binary_l2, binary_l4_coefficients, binary_l4_derived, binary_l4_printed, hkl_bound, in_binary_l2_window, in_binary_l4_window,
    ovoid_params,
};
use codebounds::diagnostics::distribution::{two_weight_a_s_quoted, two_weight_params};
use codebounds::levenshtein::{LevenshteinInstance, ProblemParams};
use codebounds::oracle::{design_strength, exhaustive_energy_extrema, exhaustive_max_code, Code, Limits, DEFAULT_BUDGET};

const PREC: u32 = 128;
const BITS: u32 = PREC + 32;

struct Outcome {
    pass: bool,
    /// Every failing check compares against an inconsistent printed formula.
    printed_formula_only: bool,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { pass: true, printed_formula_only: false, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome { pass: false, printed_formula_only: false, detail: detail.into() }
    }
}

fn bound_value(n: u32, q: u32, ell: Scalar, s: Scalar, k: usize) -> Result<Scalar, String> {
    let space = HammingSpace::new(n, q).map_err(|e| e.to_string())?;
    let params = ProblemParams::from_inner(space, ell, s, k).map_err(|e| e.to_string())?;
    LevenshteinInstance::with_precision(&params, PREC).map(|i| i.value()).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- 1

fn criterion_1() -> Outcome {
    let mut cases: Vec<(String, u32, u32, Scalar, Scalar, usize, Scalar)> = vec![
        ("L_2(6,-1/3,1/3)".into(), 6, 2, rat(-1, 3), rat(1, 3), 1, int(16)),
        ("L_2(5,-3/5,1/5)".into(), 5, 2, rat(-3, 5), rat(1, 5), 1, int(16)),
        ("L_2(56,-17/28,-2/7)".into(), 56, 3, rat(-17, 28), rat(-2, 7), 1, int(729)),
        ("L_4(23,-9/23,7/23)".into(), 23, 2, rat(-9, 23), rat(7, 23), 2, int(2048)),
        ("L_4(22,-5/11,3/11)".into(), 22, 2, rat(-5, 11), rat(3, 11), 2, int(1024)),
    ];
    for q in 2..=5u32 {
        let (n, ell, s) = ovoid_params(q);
        cases.push((format!("ovoid q={q}"), n, q, ell, s, 1, int((q as i64).pow(4))));
    }
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, n, q, ell, s, k, want) in &cases {
        let start = Instant::now();
        let got = bound_value(*n, *q, ell.clone(), s.clone(), *k);
        let took = start.elapsed();
        slowest = slowest.max(took);
        match got {
            Ok(v) if &v == want && took < Duration::from_secs(1) => {}
            Ok(v) => failures.push(format!("{name}: got {v} in {took:?}, want {want}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Outcome::pass(format!("{} exact values, slowest {slowest:?}", cases.len()))
    } else {
        Outcome::fail(failures.join("; "))
    }
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    // HKL: every valid k = 1 instance for q ∈ {2, 3}, n ≤ 16.
    let mut hkl_checked = 0;
    let mut hkl_bad = Vec::new();
    for q in 2..=3u32 {
        for n in 3..=16u32 {
            for dmax in 2..=n {
                for d in 1..dmax {
                    let Ok(params) = ProblemParams::from_distances(n, q, d, dmax, 1) else { continue };
                    let Ok(inst) = LevenshteinInstance::with_precision(&params, PREC) else { continue };
                    hkl_checked += 1;
                    if hkl_bound(&params.space, &params.ell, &params.s).as_ref() != Some(&inst.value()) {
                        hkl_bad.push(format!("(q={q},n={n},d={d},D={dmax})"));
                    }
                }
            }
        }
    }
    // Binary ℓ = (2-n)/n, n ∈ 5..30: L_2 and L_4 on their windows.
    let (mut l2_checked, mut l4_checked, mut l4_derived_ok, mut l4_poles) = (0, 0, 0, 0);
    let mut l2_bad = Vec::new();
    let mut l4_printed_bad = Vec::new();
    let mut coeff_bad = Vec::new();
    for n in 5..=30u32 {
        let nn = int(n as i64);
        let a = &nn * &nn * &nn - int(9) * &nn * &nn + int(25) * &nn - int(18);
        if binary_l4_coefficients(n)[0] != a {
            coeff_bad.push(n);
        }
        let space = HammingSpace::new(n, 2).unwrap();
        let ell = binary_ell(n);
        for s in space.grid().iter().filter(|s| **s > ell) {
            let value = |k: usize| -> Option<Scalar> {
                let params = ProblemParams::from_inner(space.clone(), ell.clone(), s.clone(), k).ok()?;
                LevenshteinInstance::with_precision(&params, PREC).ok().map(|i| i.value())
            };
            if in_binary_l2_window(n, s) {
                l2_checked += 1;
                if value(1).is_none() || value(1) != binary_l2(n, s) {
                    l2_bad.push(format!("(n={n},s={s})"));
                }
            }
            if in_binary_l4_window(n, s) {
                l4_checked += 1;
                let computed = value(2);
                let derived = binary_l4_derived(n, s);
                // A pole of the derived form (right window end for n = 6)
                // is a point where no k = 2 bound exists.
                if computed == derived {
                    l4_derived_ok += 1;
                    if computed.is_none() {
                        l4_poles += 1;
                    }
                }
                if computed.is_none() || computed != binary_l4_printed(n, s) {
                    l4_printed_bad.push(format!("(n={n},s={s}: computed {}, printed {})", opt(&computed), opt(&binary_l4_printed(n, s))));
                }
            }
        }
    }
    let detail = format!(
        "HKL {}/{hkl_checked} equal; L_2 {}/{l2_checked} equal; L_4 printed {}/{l4_checked} equal (derived form {l4_derived_ok}/{l4_checked}, {l4_poles} at a pole where no bound exists); A,B,C,D cubic mismatches {}",
        hkl_checked - hkl_bad.len(),
        l2_checked - l2_bad.len(),
        l4_checked - l4_printed_bad.len(),
        coeff_bad.len()
    );
    let others_ok = hkl_bad.is_empty() && l2_bad.is_empty() && coeff_bad.is_empty() && hkl_checked > 0 && l2_checked > 0 && l4_checked > 0;
    if others_ok && l4_printed_bad.is_empty() {
        return Outcome::pass(detail);
    }
    let mut why = Vec::new();
    if !l4_printed_bad.is_empty() {
        why.push(format!(
            "printed L_4 formula disagrees with 1/ρ_(k+1), first {}",
            l4_printed_bad.first().unwrap()
        ));
    }
    why.extend(hkl_bad.first().map(|x| format!("HKL mismatch {x}")));
    why.extend(l2_bad.first().map(|x| format!("L_2 mismatch {x}")));
    Outcome {
        pass: false,
        printed_formula_only: others_ok && l4_derived_ok == l4_checked,
        detail: format!("{detail}; {}", why.join("; ")),
    }
}

fn opt(x: &Option<Scalar>) -> String {
    x.as_ref().map_or("undefined".into(), ToString::to_string)
}

// ---------------------------------------------------------------- 3

fn counts_by_distance(n: u32, q: u32, d: u32, dmax: u32, k: usize) -> Result<Vec<(u32, BigInt)>, String> {
    let params = ProblemParams::from_distances(n, q, d, dmax, k).map_err(|e| e.to_string())?;
    let dist = distance_distribution(&params, PREC).map_err(|e| e.to_string())?;
    dist.by_distance().ok_or_else(|| "not attainable".to_string())
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let mut others_ok = true;
    // Ovoid, q = 3: n = 10, distances 6 and 9.
    match counts_by_distance(10, 3, 6, 9, 1) {
        Ok(c) if c.contains(&(9, BigInt::from(20))) && c.contains(&(6, BigInt::from(60))) => notes.push("ovoid q=3: A_ℓ=20, A_s=60".to_string()),
        other => {
            others_ok = false;
            notes.push(format!("ovoid q=3: {other:?}"));
        }
    }
    // Even-weight code of length 5 against the oracle.
    let code = Code::even_weight(5).unwrap();
    let oracle: Vec<(u32, BigInt)> = code
        .distance_distribution()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, b)| !b.is_zero())
        .map(|(i, b)| (i as u32, b.to_integer()))
        .collect();
    match counts_by_distance(5, 2, 2, 4, 1) {
        Ok(mut c) => {
            c.sort();
            if c == oracle {
                notes.push(format!("even-weight n=5 matches oracle {c:?}"));
            } else {
                others_ok = false;
                notes.push(format!("even-weight n=5: computed {c:?}, oracle {oracle:?}"));
            }
        }
        Err(e) => {
            others_ok = false;
            notes.push(format!("even-weight n=5: {e}"));
        }
    }
    // Two-weight codes: compare with the printed A_s = q(q^m-1)N/(q-1).
    let mut printed_bad = Vec::new();
    for (q, m, big_n) in [(2u32, 2u32, 3u32), (3, 2, 5)] {
        let (n, ell, s, size) = two_weight_params(q, m, big_n);
        let space = HammingSpace::new(n, q).unwrap();
        let (d, dmax) = (space.distance_of_inner(&s).unwrap(), space.distance_of_inner(&ell).unwrap());
        let printed = two_weight_a_s_quoted(q, m, big_n);
        match counts_by_distance(n, q, d, dmax, 1) {
            Ok(c) => {
                let a_s = c.iter().find(|(dist, _)| *dist == d).map(|(_, a)| a.clone());
                let total: BigInt = c.iter().map(|(_, a)| a.clone()).sum();
                if total + 1 != size.to_integer() {
                    others_ok = false;
                }
                if a_s.as_ref() != Some(&printed) {
                    printed_bad.push(format!("(q,m,N)=({q},{m},{big_n}): computed A_s={}, printed {printed}", a_s.map_or("none".into(), |a| a.to_string())));
                }
            }
            Err(e) => {
                others_ok = false;
                printed_bad.push(format!("(q,m,N)=({q},{m},{big_n}): {e}"));
            }
        }
    }
    if others_ok && printed_bad.is_empty() {
        return Outcome::pass(notes.join("; "));
    }
    Outcome {
        pass: false,
        printed_formula_only: others_ok,
        detail: format!("{}; printed two-weight A_s disagrees: {}", notes.join("; "), printed_bad.join("; ")),
    }
}

// ---------------------------------------------------------------- shared corpus

/// 50 random valid instances, q ∈ {2, 3}, n ≤ 20, k ≤ 3.
fn random_instances() -> Vec<LevenshteinInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut out: Vec<LevenshteinInstance> = Vec::new();
    let mut attempts = 0;
    while out.len() < 50 && attempts < 200_000 {
        attempts += 1;
        let q = rng.gen_range(2..=3u32);
        let k = rng.gen_range(1..=3usize);
        let n = rng.gen_range((2 * k as u32 + 2).max(4)..=20);
        let dmax = rng.gen_range(2..=n);
        let d = rng.gen_range(1..dmax);
        let Ok(params) = ProblemParams::from_distances(n, q, d, dmax, k) else { continue };
        if out.iter().any(|i| i.params == params) {
            continue;
        }
        if let Ok(inst) = LevenshteinInstance::with_precision(&params, PREC) {
            out.push(inst);
        }
    }
    out
}

fn describe(p: &ProblemParams) -> String {
    format!("(q={},n={},d={},D={},k={})", p.q(), p.n(), p.d, p.dmax, p.k)
}

// ---------------------------------------------------------------- 4

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> ExactPoly {
    ExactPoly::new((0..=deg).map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=20))).collect())
}

fn criterion_4(instances: &[LevenshteinInstance]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0044);
    let width_limit = Scalar::new(BigInt::one(), BigInt::one() << 64);
    let mut failures = Vec::new();
    let mut checks = 0;
    for inst in instances {
        let k = inst.params.k;
        for _ in 0..50 {
            let deg = rng.gen_range(0..=2 * k);
            let p = random_poly(&mut rng, deg);
            let exact = inst.params.space.integrate(&p);
            let got = inst.rule.apply(&p, BITS);
            checks += 1;
            if !got.contains(&exact) || got.width() > width_limit {
                failures.push(format!("{} deg {deg}: {got} vs {exact}", describe(&inst.params)));
            }
        }
    }
    let took = start.elapsed();
    let ks: Vec<usize> = (1..=3).map(|k| instances.iter().filter(|i| i.params.k == k).count()).collect();
    let detail = format!("{} instances (k=1,2,3: {ks:?}), {checks} polynomials, {took:?}", instances.len());
    if instances.len() == 50 && failures.is_empty() && took < Duration::from_secs(300) {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.into_iter().take(3).collect::<Vec<_>>().join("; ")))
    }
}

// ---------------------------------------------------------------- 5

fn criterion_5(instances: &[LevenshteinInstance]) -> Outcome {
    let mut failures = Vec::new();
    let (mut zero_checks, mut route_checks) = (0, 0);
    for inst in instances {
        let space = &inst.params.space;
        let k = inst.params.k;
        let top = (2 * k + 6).min(space.n() as usize);
        let polys = space.krawtchouk_polys(top);
        let sums = power_sums(&inst.rule, top, BITS);
        for (j, qj) in polys.iter().enumerate() {
            let direct = direct_value(&inst.rule, qj, BITS);
            let via_sums = power_sum_value(space, qj, j, k, &sums, BITS);
            route_checks += 1;
            if !direct.intersects(&via_sums) {
                failures.push(format!("{} j={j}: routes disjoint ({direct} vs {via_sums})", describe(&inst.params)));
            }
            if (1..=2 * k).contains(&j) {
                zero_checks += 1;
                if !direct.contains_zero() {
                    failures.push(format!("{} j={j}: R_j = {direct} excludes 0", describe(&inst.params)));
                }
            }
        }
    }
    let detail = format!("{zero_checks} vanishing checks (1 ≤ j ≤ 2k), {route_checks} two-route checks (j ≤ 2k+6, j ≤ n)");
    if failures.is_empty() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.into_iter().take(3).collect::<Vec<_>>().join("; ")))
    }
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut size_checks = 0;
    for n in 2..=6u32 {
        let space = HammingSpace::new(n, 2).unwrap();
        for dmax in 2..=n {
            for d in 1..dmax {
                let mut oracle_size = None;
                for k in 1..=(n as usize / 2) {
                    let Ok(params) = ProblemParams::with_space_distances(space.clone(), d, dmax, k) else { continue };
                    let Ok(inst) = LevenshteinInstance::with_precision(&params, PREC) else { continue };
                    if !inst.flags.krein {
                        continue;
                    }
                    let size = *oracle_size.get_or_insert_with(|| exhaustive_max_code(&space, d, dmax, DEFAULT_BUDGET).unwrap().size);
                    size_checks += 1;
                    let floor = scalar::floor(&inst.value());
                    if BigInt::from(size) > floor {
                        failures.push(format!("{}: A = {size} > ⌊L⌋ = {floor}", describe(&params)));
                    }
                }
            }
        }
    }
    let potentials = [Potential::exponential(int(1)).unwrap(), Potential::inverse_power(int(2)).unwrap()];
    let (mut ulb_checks, mut uub_checks, mut uub_skipped) = (0, 0, 0);
    for n in 2..=5u32 {
        let space = HammingSpace::new(n, 2).unwrap();
        for dmax in 2..=n {
            for d in 1..dmax {
                let ell = space.inner_of_distance(dmax);
                let valid_k: Vec<usize> = (1..=(n as usize / 2))
                    .filter(|&k| {
                        ProblemParams::with_space_distances(space.clone(), d, dmax, k)
                            .ok()
                            .is_some_and(|p| LevenshteinInstance::with_precision(&p, PREC).is_ok())
                    })
                    .collect();
                for m in 2..=8usize {
                    for h in &potentials {
                        let Some(ext) = exhaustive_energy_extrema(&space, m, d, dmax, h, Limits::default(), BITS).unwrap() else { continue };
                        let mm = int(m as i64);
                        if let Ok(lower) = energy_lower_bound(&space, &ell, &mm, h, (n as usize / 2).max(1), PREC) {
                            let l = lower.lower.unwrap();
                            ulb_checks += 1;
                            if l.lo > ext.min.hi {
                                failures.push(format!("n={n},d={d},D={dmax},M={m},{h}: ULB {l} > min {}", ext.min));
                            }
                        }
                        for &k in &valid_k {
                            match energy_upper_bound(&space, &mm, &ell, &space.inner_of_distance(d), k, h, PREC) {
                                Ok(r) => {
                                    let u = r.upper.unwrap();
                                    uub_checks += 1;
                                    if ext.max.lo > u.hi {
                                        failures.push(format!("n={n},d={d},D={dmax},M={m},k={k},{h}: max {} > UUB {u}", ext.max));
                                    }
                                }
                                Err(_) => uub_skipped += 1,
                            }
                        }
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    let detail = format!(
        "{size_checks} size checks, {ulb_checks} ULB checks, {uub_checks} UUB checks ({uub_skipped} (M,k) without an admissible upper polynomial), {took:?}"
    );
    if failures.is_empty() && size_checks > 0 && ulb_checks > 0 && uub_checks > 0 && took < Duration::from_secs(1800) {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.into_iter().take(3).collect::<Vec<_>>().join("; ")))
    }
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (m, n) in [(2u32, 5u32), (3, 7)] {
        let k = (m - 1) as usize;
        let nn = n as i64;
        let (ell, s) = (rat(2 - nn, nn), rat(nn - 4, nn));
        let code = Code::even_weight(n).unwrap();
        let bound = bound_value(n, 2, ell.clone(), s.clone(), k);
        let want = int(1 << (2 * m));
        let strength = design_strength(&code, DEFAULT_BUDGET).unwrap();
        let oracle: Vec<(u32, BigInt)> = code
            .distance_distribution()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, b)| !b.is_zero())
            .map(|(i, b)| (i as u32, b.to_integer()))
            .collect();
        let space = HammingSpace::new(n, 2).unwrap();
        let d = space.distance_of_inner(&s).unwrap();
        let dmax = space.distance_of_inner(&ell).unwrap();
        let computed = counts_by_distance(n, 2, d, dmax, k).map(|mut c| {
            c.sort();
            c
        });
        let this_ok = bound.as_ref() == Ok(&want)
            && BigInt::from(code.len()) == want.to_integer()
            && code.within(d as usize, dmax as usize)
            && strength >= 2 * k
            && computed.as_ref() == Ok(&oracle);
        ok &= this_ok;
        notes.push(format!(
            "n={n}: L = {}, |C| = {}, strength {strength}, distribution {}",
            bound.as_ref().map_or_else(Clone::clone, ToString::to_string),
            code.len(),
            if computed.as_ref() == Ok(&oracle) { "matches oracle" } else { "differs from oracle" }
        ));
    }
    if ok {
        Outcome::pass(notes.join("; "))
    } else {
        Outcome::fail(notes.join("; "))
    }
}

// ---------------------------------------------------------------- 8

fn criterion_8(instances: &[LevenshteinInstance]) -> Outcome {
    let h = Potential::exponential(int(1)).unwrap();
    let mut failures = Vec::new();
    let mut checks = 0;
    for inst in instances {
        let p = &inst.params;
        let m = inst.value();
        let lower = energy_lower_bound_at_k(&p.space, &p.ell, &m, &h, p.k, PREC);
        let upper = energy_upper_bound(&p.space, &m, &p.ell, &p.s, p.k, &h, PREC);
        match (lower, upper) {
            (Ok(l), Ok(u)) => {
                checks += 1;
                let (l, u) = (l.lower.unwrap(), u.upper.unwrap());
                if !l.intersects(&u) {
                    failures.push(format!("{}: lower {l} vs upper {u}", describe(p)));
                }
            }
            (l, u) => failures.push(format!("{}: lower {:?}, upper {:?}", describe(p), l.err().map(|e| e.to_string()), u.err().map(|e| e.to_string()))),
        }
    }
    let detail = format!("{checks}/{} instances collapse at M = L_2k", instances.len());
    if failures.is_empty() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.into_iter().take(3).collect::<Vec<_>>().join("; ")))
    }
}

// ---------------------------------------------------------------- 9

fn criterion_9(instances: &[LevenshteinInstance]) -> Outcome {
    let mut failures = Vec::new();
    let (mut k2, mut feasible) = (0, 0);
    for inst in instances.iter().filter(|i| i.params.k == 2) {
        k2 += 1;
        let p = &inst.params;
        let report = match refine_polynomials(p, None, &RefineOptions::default(), PREC) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{}: {e}", describe(p)));
                continue;
            }
        };
        let l = inst.value();
        for c in report.candidates.iter().filter(|c| c.feasible) {
            feasible += 1;
            // Independent exact checks of the stored polynomial.
            let coeffs = p.space.to_krawtchouk(&c.f_ref);
            let value = c.f_ref.at_one() / &coeffs[0];
            let grid_ok = p.space.grid().iter().filter(|t| **t >= p.ell && **t <= p.s).all(|t| !c.f_ref.eval(t).is_positive());
            if value > l || !grid_ok || c.bound.as_ref() != Some(&value) {
                failures.push(format!("{}: refined {value} vs L {l}, grid {grid_ok}", describe(p)));
            }
        }
    }
    let detail = format!("{k2} instances with k = 2, {feasible} feasible refinements");
    if failures.is_empty() && k2 > 0 {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.into_iter().take(3).collect::<Vec<_>>().join("; ")))
    }
}

// ---------------------------------------------------------------- 10

fn criterion_10(instances: &[LevenshteinInstance]) -> Outcome {
    let mut corpus: Vec<ProblemParams> = instances.iter().map(|i| i.params.clone()).collect();
    for n in 4..=14u32 {
        for dmax in 2..=n {
            for d in 1..dmax {
                if let Ok(p) = ProblemParams::from_distances(n, 2, d, dmax, 1) {
                    if LevenshteinInstance::with_precision(&p, PREC).is_ok() && !corpus.contains(&p) {
                        corpus.push(p);
                    }
                }
            }
        }
    }
    let mut failures = Vec::new();
    let (mut optimal, mut improvable, mut undecided) = (0, 0, 0);
    for p in &corpus {
        let report = match scan_test_functions(p, 2 * p.k + 10, PREC) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{}: scan failed: {e}", describe(p)));
                continue;
            }
        };
        match report.verdict {
            Verdict::OptimalUpTo { .. } => optimal += 1,
            Verdict::Indeterminate => undecided += 1,
            Verdict::Improvable { j } => {
                improvable += 1;
                let v = match improving_polynomial(p, j, PREC) {
                    Ok(v) => v,
                    Err(e) => {
                        failures.push(format!("{} j={j}: {e}", describe(p)));
                        continue;
                    }
                };
                let coeffs = p.space.to_krawtchouk(&v.v);
                let in_cone = coeffs[0].is_positive() && coeffs[1..].iter().all(|c| !c.is_negative());
                let grid_ok = p.space.grid().iter().filter(|t| **t >= p.ell && **t <= p.s).all(|t| !v.v.eval(t).is_positive());
                let value = v.v.at_one() / &coeffs[0];
                let l = LevenshteinInstance::with_precision(p, PREC).unwrap().value();
                if !(in_cone && grid_ok && value < l) {
                    failures.push(format!("{} j={j}: cone {in_cone}, grid {grid_ok}, {value} vs {l}", describe(p)));
                }
            }
        }
    }
    let detail = format!(
        "{} scanned instances: {improvable} improvable (all improving polynomials verified), {optimal} optimal up to j_max = 2k+10, {undecided} undecided",
        corpus.len()
    );
    if failures.is_empty() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.into_iter().take(3).collect::<Vec<_>>().join("; ")))
    }
}

fn main() -> ExitCode {
    let instances = random_instances();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("known-value regressions", Box::new(criterion_1)),
        ("closed-form agreement", Box::new(criterion_2)),
        ("distance-distribution regressions", Box::new(criterion_3)),
        ("quadrature exactness", Box::new(|| criterion_4(&instances))),
        ("test-function sanity", Box::new(|| criterion_5(&instances))),
        ("oracle dominance", Box::new(criterion_6)),
        ("attainment consistency", Box::new(criterion_7)),
        ("collapse identity", Box::new(|| criterion_8(&instances))),
        ("refinement soundness", Box::new(|| criterion_9(&instances))),
        ("improving-polynomial contract", Box::new(|| criterion_10(&instances))),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {} ({name}) [{:.1?}]: {}", i + 1, start.elapsed(), outcome.detail);
        if !outcome.pass && !outcome.printed_formula_only {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed for reasons other than an inconsistent printed formula");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
