//! Acceptance suite: one PASS/FAIL line per criterion, with its time budget.
//! Expected values are computed here from the closed forms, independently of
//! the library's own formula module.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_regular, random_signs};
use tcurve_core::analysis::analyze;
use tcurve_core::census::{census, CensusParams};
use tcurve_core::curve::{affine_model, midlines};
use tcurve_core::formulas::critical_counts;
use tcurve_core::lattice::harnack_triangulation;
use tcurve_core::oracle::{
    combinatorial_summary, patch_polynomial, sample_box, trace_affine, verify_patchwork, TraceParams, VerifyParams,
};
use tcurve_core::orientation::CurveType;
use tcurve_core::regularity::{find_convexifier, is_convexifying, Lift, RegularTriangulation};
use tcurve_core::signs::SignDistribution;
use tcurve_core::square::build_square;

type Verdict = Result<String, String>;
/// Number, name, time budget in seconds, check.
type Criterion = (&'static str, &'static str, u64, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn harnack(m: u32) -> (RegularTriangulation, SignDistribution) {
    (RegularTriangulation::standard(m).unwrap(), SignDistribution::harnack(m).unwrap())
}

fn expected_code(m: u32) -> String {
    let k = m / 2;
    if m % 2 == 1 {
        let n = k * (2 * k).saturating_sub(1);
        return if n == 0 { "⟨J⟩".into() } else { format!("⟨J ⊔ {n}⟩") };
    }
    let inner = (k - 1) * (k.saturating_sub(2)) / 2;
    let outer = 3 * k * (k - 1) / 2;
    if inner == 0 {
        format!("⟨{}⟩", outer + 1)
    } else {
        format!("⟨1⟨{inner}⟩ ⊔ {outer}⟩")
    }
}

fn genus(m: u32) -> usize {
    ((m - 1) * m.saturating_sub(2) / 2) as usize
}

fn c1_harnack_schemes() -> Verdict {
    let mut slowest = Duration::ZERO;
    for m in 1..=10 {
        let start = Instant::now();
        let (t, d) = harnack(m);
        let code = analyze(&t, &d).map_err(|e| format!("m={m}: {e}"))?.scheme.code();
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(code == expected_code(m), || format!("m={m}: got {code}, expected {}", expected_code(m)))?;
        ensure(took < Duration::from_secs(1), || format!("m={m} took {took:?}"))?;
    }
    Ok(format!("m=1..10 exact; slowest degree {slowest:?}"))
}

fn c2_m_curve_bound() -> Verdict {
    for m in 1..=10 {
        let (t, d) = harnack(m);
        let n = analyze(&t, &d).map_err(|e| e.to_string())?.projective.components().len();
        ensure(n == genus(m) + 1, || format!("m={m}: {n} components, expected {}", genus(m) + 1))?;
    }
    Ok("components = (m-1)(m-2)/2 + 1 for m=1..10".into())
}

fn c3_boundary_points() -> Verdict {
    for m in 1..=10 {
        let (t, d) = harnack(m);
        let b = analyze(&t, &d).map_err(|e| e.to_string())?.boundary_points;
        ensure(b == m as usize, || format!("m={m}: {b} boundary points"))?;
    }
    Ok("m points on the line at infinity for m=1..10".into())
}

fn c4_morse_identities() -> Verdict {
    for m in 2..=50u32 {
        let c = critical_counts(m).map_err(|e| e.to_string())?;
        let k = (m / 2) as i64;
        let even = m % 2 == 0;
        let (c0, c1, c2) = (c.c0 as i64, c.c1 as i64, c.c2 as i64);
        let want = if even {
            ((k - 1) * (k - 2) / 2, k * (2 * k - 1), 3 * k * (k - 1) / 2, k * (3 * k - 1) / 2, k * (k - 1) / 2, k - 1)
        } else {
            (k * (k - 1) / 2, k * (2 * k + 1), k * (3 * k - 1) / 2, k * (3 * k + 3) / 2, k * (k - 1) / 2, 0)
        };
        let got = (c0, c1, c2, c.c1_minus as i64, c.c1_plus as i64, c.c1_prime as i64);
        ensure(got == want, || format!("m={m}: got {got:?}, expected {want:?}"))?;
        let m = m as i64;
        ensure(c0 + c1 + c2 == (m - 1) * (m - 1), || format!("m={m}: c0+c1+c2"))?;
        ensure(c0 - c1 + c2 == 1 - m, || format!("m={m}: c0-c1+c2"))?;
        ensure(got.3 + got.4 == c1, || format!("m={m}: c1- + c1+"))?;
    }
    Ok("m=2..50: sums, alternating sums, index-one split and c1' exact".into())
}

fn c5_arnold_surfaces() -> Verdict {
    let mut seen = Vec::new();
    for k in 1..=5i64 {
        let m = 2 * k as u32;
        let (t, d) = harnack(m);
        let a = analyze(&t, &d).map_err(|e| e.to_string())?.arnold.ok_or("no Arnold data for even degree")?;
        let p = (k - 1) * (k - 2) / 2;
        let (q_plus, q_minus) = (p, k * (5 * k - 3) / 2);
        let want = (2 - (p + q_plus), 2 - (p + q_minus));
        let got = (a.chi_plus, a.chi_minus);
        ensure(got == want, || format!("k={k}: χ(A±) = {got:?}, expected {want:?}"))?;
        seen.push(format!("{got:?}"));
    }
    Ok(format!("χ(A+), χ(A-) for k=1..5: {}", seen.join(" ")))
}

fn c6_type_facts() -> Verdict {
    for m in 1..=8 {
        let (t, d) = harnack(m);
        let v = analyze(&t, &d).map_err(|e| e.to_string())?.verdict.ok_or("no type verdict")?.value;
        ensure(v == CurveType::TypeI, || format!("Harnack m={m} is {v:?}"))?;
    }
    let start = Instant::now();
    let r = census(&RegularTriangulation::standard(4).unwrap(), &CensusParams::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(r.total == 1 << 15, || format!("census covered {} distributions", r.total))?;
    let (mut four, mut three) = (0, 0);
    for (code, c) in &r.schemes {
        let n = tcurve_core::scheme::RealScheme::parse(code)?.component_count();
        if n == 4 {
            ensure(c.type_i == c.count, || format!("{code}: {} of {} are type I", c.type_i, c.count))?;
            four += c.count;
        }
        if n == 3 {
            ensure(c.type_ii == c.count, || format!("{code}: {} of {} are type II", c.type_ii, c.count))?;
            three += c.count;
        }
    }
    ensure(four > 0 && three > 0, || "census found no 4- or 3-component curves".into())?;
    ensure(took < Duration::from_secs(10), || format!("census took {took:?}"))?;
    Ok(format!("Harnack m=1..8 type I; census 2^15 in {took:?}: {four} M-curves all I, {three} (M-1)-curves all II"))
}

fn c7_cubic_census() -> Verdict {
    let start = Instant::now();
    let r = census(&RegularTriangulation::standard(3).unwrap(), &CensusParams::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let got: BTreeSet<&str> = r.schemes.keys().map(String::as_str).collect();
    let want: BTreeSet<&str> = ["⟨J⟩", "⟨J ⊔ 1⟩"].into();
    ensure(r.total == 1024, || format!("covered {} distributions", r.total))?;
    ensure(got == want, || format!("realized {got:?}"))?;
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("1024 distributions realize exactly {{⟨J⟩, ⟨J ⊔ 1⟩}} in {took:?}"))
}

fn c8_oracle() -> Verdict {
    let params = VerifyParams { trace: TraceParams { grid: 128, ..TraceParams::default() }, s_start: 1, s_max: 32 };
    let mut cases: Vec<(String, SignDistribution, u32)> =
        (1..=4).map(|m| (format!("Harnack m={m}"), SignDistribution::harnack(m).unwrap(), m)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for k in 0..50 {
        cases.push((format!("random #{k}"), random_signs(4, &mut rng), 4));
    }
    let mut max_s = 0;
    for (name, d, m) in &cases {
        let t = RegularTriangulation::standard(*m).unwrap();
        let sq = build_square(&t, d).map_err(|e| e.to_string())?;
        let expected = combinatorial_summary(&affine_model(&midlines(&sq).unwrap()).unwrap()).unwrap();
        let r = verify_patchwork(d, t.lift(), &expected, &params).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.matched, || format!("{name}: oracle {:?} vs combinatorial {:?}", r.oracle, r.combinatorial))?;
        ensure(r.s <= 32, || format!("{name}: stabilized at s={}", r.s))?;
        max_s = max_s.max(r.s);
        if name.starts_with("Harnack") {
            // Spot check well past the stabilization point.
            let p = patch_polynomial(d, t.lift(), r.s + 3).map_err(|e| e.to_string())?;
            let window = sample_box(t.lift(), params.trace.delta).map_err(|e| e.to_string())?;
            let later = trace_affine(&p, &window, &params.trace).map_err(|e| format!("{name} at s+3: {e}"))?;
            ensure(later.summary == expected, || format!("{name}: summary changes at s={}", r.s + 3))?;
        }
    }
    Ok(format!("{} cases match, grid 128, stabilized by s={max_s}", cases.len()))
}

fn c9_regularity() -> Verdict {
    for m in 1..=10 {
        let rt = RegularTriangulation::standard(m).map_err(|e| format!("m={m}: {e}"))?;
        ensure(rt.is_certified() && is_convexifying(rt.triangulation(), &Lift::standard(m)), || format!("m={m}"))?;
    }
    for m in 2..=10 {
        ensure(!is_convexifying(&harnack_triangulation(m), &Lift::zero(m)), || format!("zero lift accepted at m={m}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for k in 0..100 {
        let m = 2 + k % 5;
        let t = random_regular(m, &mut rng);
        let lift = find_convexifier(t.triangulation()).map_err(|e| format!("refinement #{k} (m={m}): {e}"))?;
        ensure(is_convexifying(t.triangulation(), &lift), || format!("refinement #{k}: lift not convexifying"))?;
        ensure(lift.is_nonnegative(), || format!("refinement #{k}: negative lift"))?;
    }
    Ok("standard lift certified m=1..10; zero lift rejected m=2..10; 100 LP round trips on m=2..6".into())
}

fn c10_manifold_fuzz() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let pool: Vec<Vec<RegularTriangulation>> = (1..=6)
        .map(|m| {
            let mut v = vec![RegularTriangulation::standard(m).unwrap()];
            v.extend((0..7).map(|_| random_regular(m, &mut rng)));
            v
        })
        .collect();
    for k in 0..1000usize {
        let m = 1 + (k % 6) as u32;
        let choices = &pool[m as usize - 1];
        let t = &choices[(k / 6) % choices.len()];
        let d = random_signs(m, &mut rng);
        let a = analyze(t, &d).map_err(|e| format!("case {k} (m={m}): {e}"))?;
        let degrees = a.projective.vertex_degrees();
        ensure(degrees.iter().all(|&x| x == 2), || format!("case {k} (m={m}): vertex degrees {degrees:?}"))?;
        let n = a.projective.components().len();
        ensure(n <= genus(m) + 1, || format!("case {k} (m={m}): {n} components"))?;
    }
    Ok("1000 distributions at m=1..6 on standard and random regular triangulations".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1", "Harnack schemes", 10, c1_harnack_schemes),
        ("2", "M-curve bound", 10, c2_m_curve_bound),
        ("3", "boundary intersections", 10, c3_boundary_points),
        ("4", "Morse-Petrovskii identities", 1, c4_morse_identities),
        ("5", "Arnold surfaces", 5, c5_arnold_surfaces),
        ("6", "type facts", 30, c6_type_facts),
        ("7", "cubic census", 1, c7_cubic_census),
        ("8", "numeric oracle", 300, c8_oracle),
        ("9", "regularity", 30, c9_regularity),
        ("10", "manifold fuzz", 30, c10_manifold_fuzz),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(budget) => Err(format!("over budget: {took:?} > {budget} s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} ({name}): {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} ({name}): {why} [{took:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
