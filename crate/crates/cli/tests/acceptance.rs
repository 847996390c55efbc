//! Acceptance suite. Prints one PASS/FAIL line per criterion with its pinned
//! tolerance and elapsed time; exits nonzero when any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use groupoid_homology::corpus::{standard_corpus, standard_covers};
use groupoid_homology::mv::SesDegreeReport;
use groupoid_homology::sft::all_ones;
use groupoid_homology::uct::discrete_inverse_trials;
use groupoid_homology::{
    cantor_obstruction, chain_ses, classify, collision_search, family_integral, family_mod, full_shift_homology,
    sft_matrix_homology, uct_assemble, uct_verify, Coefficients, FamilySpec, FinAbGroup, FiniteGroupoid,
    DEFAULT_NERVE_BUDGET,
};
use num_bigint::BigInt;

#[path = "../../core/tests/support/enumeration.rs"]
mod enumeration;

const ENUMERATION_LIMIT: f64 = 1e6;
const SEED: u64 = 2024;

type Check = Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn orders(xs: &[u64]) -> FinAbGroup {
    FinAbGroup::from_cyclic_orders(xs.iter().map(|&x| BigInt::from(x)))
}

fn unit_groupoid() -> Check {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let path = dir.path().join("unit1.json");
    let bin = env!("CARGO_BIN_EXE_ghom");
    let gen = Command::new(bin).args(["gen", "units:1", "-o", path.to_str().unwrap()]).output().map_err(|e| e.to_string())?;
    ensure(gen.status.success(), || "gen failed".into())?;
    let out = Command::new(bin)
        .args(["homology", "-i", path.to_str().unwrap(), "-N", "5"])
        .env_remove("GH_BUDGET")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("H_")).collect();
    let expected = ["H_0 = Z", "H_1 = 0", "H_2 = 0", "H_3 = 0", "H_4 = 0"];
    ensure(lines == expected, || format!("got {lines:?}"))?;
    Ok("H_0 = Z, H_1..H_4 = 0 via ghom".into())
}

/// `H_n(Z/m)` from the periodic resolution `Z <-0- Z <-m- Z <-0- Z <-m- ...`.
fn periodic(m: u64, n: usize) -> FinAbGroup {
    match n {
        0 => FinAbGroup::integers(),
        n if n % 2 == 1 => FinAbGroup::cyclic(m),
        _ => FinAbGroup::trivial(),
    }
}

fn cyclic_groups() -> Check {
    for m in [2u64, 3, 4, 6] {
        let g = FiniteGroupoid::one_object_cyclic(m as usize).map_err(|e| e.to_string())?;
        let c = g.moore_complex(4, Coefficients::Integers, DEFAULT_NERVE_BUDGET).map_err(|e| e.to_string())?;
        for n in 0..4 {
            let h = c.homology_int(n).map_err(|e| e.to_string())?.group;
            ensure(h == periodic(m, n), || format!("m={m} n={n}: {h} vs {}", periodic(m, n)))?;
        }
    }
    Ok("m in {2,3,4,6}, degrees 0..3 match Z, Z/m, 0, Z/m".into())
}

fn uct_sweep() -> Check {
    let mut count = 0;
    for (name, g) in standard_corpus() {
        for q in 1..=12u64 {
            let reports = uct_verify(&g, &FinAbGroup::cyclic(q), 3, DEFAULT_NERVE_BUDGET).map_err(|e| format!("{name}: {e}"))?;
            for r in reports {
                ensure(r.matches, || format!("{name} q={q} n={}: direct {} vs {}", r.degree, r.direct, r.assembled))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (groupoid, q, degree) instances, 0 failures"))
}

fn enumeration_oracle() -> Check {
    let mut count = 0;
    for (name, g) in standard_corpus() {
        let c = g.moore_complex(3, Coefficients::Integers, DEFAULT_NERVE_BUDGET).map_err(|e| e.to_string())?;
        for q in 2..=12u64 {
            for n in 0..3 {
                if (q as f64).powi(c.dim(n) as i32) > ENUMERATION_LIMIT {
                    continue;
                }
                let fast = c.homology_mod(q, n).map_err(|e| e.to_string())?.group;
                let slow = enumeration::enumerate_mod_homology(&c, q, n);
                ensure(fast == slow, || format!("{name} q={q} n={n}: {fast} vs {slow}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances with q^dim <= 10^6"))
}

fn mv_degreewise() -> Check {
    let covers = standard_covers();
    ensure(covers.len() >= 6, || "fewer than 6 covers".into())?;
    for (name, d) in &covers {
        let ses = chain_ses(d, 3, DEFAULT_NERVE_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        ensure(ses.reports().len() == 4, || format!("{name}: degrees {}", ses.reports().len()))?;
        if let Some(r) = ses.reports().iter().find(|r| !r.passed()) {
            return Err(format!("{name}: {r:?}"));
        }
    }
    Ok(format!("{} covers, degrees 0..3", covers.len()))
}

fn mv_les() -> Check {
    let mut connecting = 0;
    for (i, (name, d)) in standard_covers().iter().enumerate() {
        let ses = chain_ses(d, 3, DEFAULT_NERVE_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        let les = ses.long_exact_sequence(SEED + i as u64).map_err(|e| format!("{name}: {e}"))?;
        ensure(les.is_exact(), || format!("{name}: exactness {:?}", les.exact))?;
        ensure(les.connecting_verified(), || format!("{name}: connecting {:?}", les.connecting))?;
        ensure(!les.connecting.is_empty(), || format!("{name}: no connecting generators checked"))?;
        ensure(ses.reports().iter().all(SesDegreeReport::passed), || name.clone())?;
        connecting += les.connecting.len();
    }
    Ok(format!("all nodes exact, {connecting} connecting classes checked with alternative lifts"))
}

fn family_tables() -> Check {
    for n in 2..=7u64 {
        for m in 2..=7u64 {
            let spec = FamilySpec::new(n, m).map_err(|e| e.to_string())?;
            let integral = family_integral(spec, 3);
            let expected = [orders(&[0, n - 1, m - 1]), FinAbGroup::trivial(), FinAbGroup::trivial()];
            ensure(integral == expected, || format!("{spec}: integral {integral:?}"))?;
            for q in 1..=12u64 {
                let row = family_mod(spec, q).map_err(|e| e.to_string())?;
                let (a, b) = (gcd(n - 1, q), gcd(m - 1, q));
                ensure(row.h0 == orders(&[q, a, b]) && row.h1 == orders(&[a, b]), || format!("{spec} q={q}: {row:?}"))?;
                let zq = FinAbGroup::cyclic(q);
                let h0 = uct_assemble(&integral[0], &FinAbGroup::trivial(), &zq).2;
                let h1 = uct_assemble(&integral[1], &integral[0], &zq).2;
                ensure(h0 == row.h0 && h1 == row.h1, || format!("{spec} q={q}: UCT route {h0}, {h1}"))?;
            }
        }
    }
    Ok("36 ordered pairs x 12 moduli, closed form and UCT route agree".into())
}

fn full_shift() -> Check {
    for n in 2..=12u64 {
        let closed = full_shift_homology(n, 2).map_err(|e| e.to_string())?;
        let (h0, h1) = sft_matrix_homology(&all_ones(n as usize)).map_err(|e| e.to_string())?;
        ensure(closed == [h0.clone(), h1.clone()], || format!("n={n}: {closed:?} vs ({h0}, {h1})"))?;
        ensure(h0 == FinAbGroup::cyclic(n - 1) && h1.is_trivial(), || format!("n={n}: {h0}, {h1}"))?;
    }
    Ok("n = 2..12".into())
}

fn classification() -> Check {
    for n in 2..=9u64 {
        for m in n..=9 {
            let spec = FamilySpec::new(n, m).map_err(|e| e.to_string())?;
            let r = classify(|q| family_mod(spec, q).expect("q >= 1").h1, 9).map_err(|e| format!("{spec}: {e}"))?;
            ensure(r.candidates.contains(&spec), || format!("{spec} missing from {:?}", r.candidates))?;
        }
    }
    let collisions = collision_search(9, 2520);
    let listed: Vec<String> = collisions.iter().map(|c| format!("{} ~ {}", c.left, c.right)).collect();
    let watched = (FamilySpec::new(3, 4).unwrap(), FamilySpec::new(7, 2).unwrap());
    let flagged = collisions
        .iter()
        .any(|c| (c.left, c.right) == watched || (c.right, c.left) == watched);
    let flag = if flagged { "present, flagged for manual review" } else { "absent" };
    Ok(format!("classify sound for all n <= m <= 9; collisions(B=9, qmax=2520) = [{}]; {{3,4}} ~ {{7,2}} {flag}", listed.join(", ")))
}

fn cantor() -> Check {
    for k in 1..=10u32 {
        let r = cantor_obstruction(k).map_err(|e| e.to_string())?;
        let width = format!("1/{}", 1u64 << k);
        ensure(r.cylinders.len() == 1 << k, || format!("k={k}: {} cylinders", r.cylinders.len()))?;
        ensure(r.widths_exact && r.nowhere_constant, || format!("k={k}: flags"))?;
        if let Some(c) = r.cylinders.iter().find(|c| c.width != width) {
            return Err(format!("k={k}: cylinder {} has width {}", c.prefix, c.width));
        }
        let ok = discrete_inverse_trials(k, 6, 100, SEED + k as u64);
        ensure(ok == 100, || format!("k={k}: {ok}/100 step functions inverted"))?;
    }
    Ok("widths 2^-k exact for k = 1..10; 100/100 step functions inverted at each level".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "unit groupoid homology", limit: Some(Duration::from_secs(1)), run: unit_groupoid },
        Criterion { id: 2, title: "cyclic groups vs periodic resolution", limit: Some(Duration::from_secs(30)), run: cyclic_groups },
        Criterion { id: 3, title: "universal coefficient sweep", limit: Some(Duration::from_secs(300)), run: uct_sweep },
        Criterion { id: 4, title: "mod-q homology vs enumeration", limit: None, run: enumeration_oracle },
        Criterion { id: 5, title: "Mayer-Vietoris chain-level exactness", limit: None, run: mv_degreewise },
        Criterion { id: 6, title: "Mayer-Vietoris long exact sequence", limit: None, run: mv_les },
        Criterion { id: 7, title: "family tables", limit: Some(Duration::from_secs(10)), run: family_tables },
        Criterion { id: 8, title: "full shift consistency", limit: None, run: full_shift },
        Criterion { id: 9, title: "classification experiment", limit: Some(Duration::from_secs(120)), run: classification },
        Criterion { id: 10, title: "non-discrete obstruction", limit: None, run: cantor },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let budget = c.limit.map_or("exact".to_string(), |l| format!("exact, < {}s", l.as_secs()));
        let (status, detail) = match result {
            Ok(d) if c.limit.is_none_or(|l| elapsed < l) => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} AC{:<2} {} [{budget}; {:.2}s]: {detail}", c.id, c.title, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
