//! The acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use berge_hamilton::combinatorics::binomial;
use berge_hamilton::conditions::{
    conjecture_r_uniform, posa_nonuniform, posa_r_uniform, ConditionTag,
};
use berge_hamilton::constructions::{self, Family};
use berge_hamilton::harness::{
    oracle_campaign, run_campaign, sample_hypergraph, sharpness_campaign, verify_theorem_campaign,
    CampaignConfig, GridPoint, Profile, Uniformity,
};
use berge_hamilton::solver::{
    hamiltonian_path_bruteforce, hamiltonian_path_starts, rotate_defining, rotate_double,
    rotate_nondefining, rotation_closure, RotationState,
};
use berge_hamilton::{verify_berge_path, BergePath, DegreeSequence, Hypergraph, Theorem};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Every family member with n <= 12: predicted sequence, exactly the
/// designated violated condition, and no Hamiltonian Berge cycle.
fn sharpness() -> Outcome {
    let report = sharpness_campaign(&CampaignConfig::sharpness(None, 12, None, None)).unwrap();
    let mut problems: Vec<String> = report
        .trials
        .iter()
        .filter(|t| t.verdict != berge_hamilton::harness::Verdict::Pass)
        .map(|t| t.to_string())
        .collect();
    // H1 degree shape: V1 entries equal k, V2 entries at least C(n-k-1, r-1)
    for (n, r, k) in constructions::parameter_grid(Family::H1, 12) {
        let k = k.unwrap();
        let (h, spec) = constructions::example1(n, r, k).unwrap();
        let floor = binomial((n - k - 1) as u64, r as u64 - 1);
        for v in 0..n {
            let d = h.degree(v).unwrap() as u64;
            let ok = if spec.part(0).contains(v) {
                d == k as u64
            } else {
                BigUint::from(d) >= floor
            };
            if !ok {
                problems.push(format!("H1({n},{r},{k}) vertex {v} has degree {d}"));
            }
        }
    }
    let per_family =
        Family::all().map(|f| report.trials.iter().filter(|t| t.family == Some(f)).count());
    outcome(
        problems.is_empty() && report.counts.pass == report.trials.len(),
        format!(
            "{} members (h1 {}, h2 {}, h3 {}), {} passed{}",
            report.trials.len(),
            per_family[0],
            per_family[1],
            per_family[2],
            report.counts.pass,
            if problems.is_empty() {
                String::new()
            } else {
                format!("; {}", problems.join(" | "))
            }
        ),
    )
}

/// 200 random hypergraphs, n in 4..=7, r in {2, 3}: exact solver = oracle.
fn oracle_equivalence() -> Outcome {
    let grid = (4..=7)
        .flat_map(|n| [2, 3].map(|r| GridPoint { n, r: Some(r) }))
        .collect();
    let report = oracle_campaign(&CampaignConfig::oracle(grid, 200, 2024)).unwrap();
    let hamiltonian = report
        .trials
        .iter()
        .filter(|t| t.solver.as_deref() == Some("cycle"))
        .count();
    outcome(
        report.counts.pass == 200,
        format!(
            "{}/200 agree ({hamiltonian} Hamiltonian, {} not)",
            report.counts.pass,
            200 - hamiltonian
        ),
    )
}

/// At least 500 condition-satisfying samples per point, none proven non-Hamiltonian.
fn theorem_uniform() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (n, r)) in [(7, 3), (9, 3), (9, 4), (11, 3)].into_iter().enumerate() {
        let cfg = CampaignConfig::verify(Theorem::RUniform, n, Some(r), 500, 100 + i as u64);
        let report = verify_theorem_campaign(&cfg).unwrap();
        let c = report.counts;
        let satisfied = c.pass + c.fail + c.unknown;
        pass &= satisfied >= 500 && c.fail == 0 && report.counterexamples.is_empty();
        parts.push(format!(
            "({n},{r}): {satisfied} satisfying, {} cycles, {} unknown, {} refuted",
            c.pass, c.unknown, c.fail
        ));
    }
    outcome(pass, parts.join("; "))
}

/// The non-uniform checker table at n = 42, then a forced smoke test at
/// n in {8, 10}. Small n lies outside the theorem's range, so the smoke test
/// is evidence about the implementation, not about the theorem.
fn theorem_nonuniform() -> Outcome {
    let mut problems = Vec::new();
    let pow = |i: u32| 1u64 << i;
    let all = DegreeSequence::new((1..=42u32).map(|i| pow(i.min(30)) + 2).collect()).unwrap();
    if !posa_nonuniform(&all, false).unwrap().satisfied {
        problems.push("d_i = 2^i + 2 should pass".to_string());
    }
    let mut low = vec![u64::MAX / 2; 42];
    low[0] = 2;
    let r = posa_nonuniform(&DegreeSequence::new(low).unwrap(), false).unwrap();
    let at: Vec<(ConditionTag, usize)> = r
        .violations
        .iter()
        .map(|v| (v.condition, v.index))
        .collect();
    if at != [(ConditionTag::Condition4, 1)] {
        problems.push(format!("d_1 = 2 gave {at:?}"));
    }
    let mut edge: Vec<u64> = (1..=42u32).map(|i| pow(i.min(30)) + 2).collect();
    edge[19] = pow(20) + 1;
    for v in edge.iter_mut().take(19) {
        *v = (*v).min(pow(20) + 1);
    }
    let r = posa_nonuniform(&DegreeSequence::new(edge).unwrap(), false).unwrap();
    let at: Vec<(ConditionTag, usize)> = r
        .violations
        .iter()
        .map(|v| (v.condition, v.index))
        .collect();
    if at != [(ConditionTag::Condition5, 20)] {
        problems.push(format!("d_20 = 2^20 + 1 gave {at:?}"));
    }
    if posa_nonuniform(&all_small(), false).is_ok() {
        problems.push("n <= 40 accepted without force".into());
    }

    let mut parts = Vec::new();
    for (i, n) in [8, 10].into_iter().enumerate() {
        let cfg = CampaignConfig::verify(Theorem::NonUniform, n, None, 100, 7 + i as u64);
        let report = verify_theorem_campaign(&cfg).unwrap();
        let c = report.counts;
        let satisfied = c.pass + c.fail + c.unknown;
        if satisfied < 100 || c.fail > 0 {
            problems.push(format!(
                "n = {n}: {satisfied} satisfying, {} refuted",
                c.fail
            ));
        }
        parts.push(format!(
            "n={n}: {} of {satisfied} forced samples Hamiltonian",
            c.pass
        ));
    }
    outcome(
        problems.is_empty(),
        format!(
            "table ok={}; {}{}",
            problems.is_empty(),
            parts.join(", "),
            tail(&problems)
        ),
    )
}

fn all_small() -> DegreeSequence {
    DegreeSequence::new(vec![100; 12]).unwrap()
}

fn tail(problems: &[String]) -> String {
    if problems.is_empty() {
        String::new()
    } else {
        format!("; {}", problems.join(" | "))
    }
}

fn same_shape(before: &BergePath, after: &BergePath) -> bool {
    after.vertex_set() == before.vertex_set() && after.end() == before.end()
}

/// Every applicable rotation of `state.path`, found by trying all parameters.
fn all_rotations(h: &Hypergraph, state: &RotationState) -> Vec<RotationState> {
    let t = state.path.edges.len();
    let m = h.edge_count();
    let mut out = Vec::new();
    for i in 1..=t {
        out.extend(rotate_defining(h, state, i).ok());
        for f in 0..m {
            out.extend(rotate_nondefining(h, state, i, f).ok());
            for j in 1..i {
                out.extend(rotate_double(h, state, i, j, f).ok());
            }
        }
    }
    out
}

/// 100 (hypergraph, Hamiltonian path) instances with n in 5..=8.
fn rotations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances = 0;
    let mut moves = 0usize;
    let mut problems = Vec::new();
    let mut attempt = 0u64;
    while instances < 100 {
        attempt += 1;
        let n = rng.gen_range(5..=8);
        let r = if rng.gen_bool(0.5) { 2 } else { 3 };
        let p = [0.25, 0.4, 0.6][rng.gen_range(0..3)];
        let h = sample_hypergraph(
            n,
            Uniformity::Uniform(r),
            &Profile::Bernoulli { p },
            attempt,
        )
        .unwrap();
        let Some(path) = hamiltonian_path_bruteforce(&h).unwrap() else {
            continue;
        };
        instances += 1;
        let start = RotationState::new(&h, path.clone()).unwrap();
        for next in all_rotations(&h, &start) {
            moves += 1;
            if verify_berge_path(&h, &next.path).is_err() || !same_shape(&path, &next.path) {
                problems.push(format!("bad rotation of {path} to {}", next.path));
            }
        }
        let closure = rotation_closure(&h, &path).unwrap();
        for (v, w) in closure.witnesses() {
            if w.start() != v || verify_berge_path(&h, w).is_err() || !same_shape(&path, w) {
                problems.push(format!("bad witness {w} for {v}"));
            }
        }
        let truth = hamiltonian_path_starts(&h, path.end()).unwrap();
        if !closure.reachable_ends.is_subset(truth) {
            problems.push(format!(
                "reachable {} not within {truth}",
                closure.reachable_ends
            ));
        }
        if !closure.claim_one_holds(&h) {
            problems.push(format!(
                "claim fails on {path}: {} not within {}",
                closure.claim_one_set(&h),
                closure.reachable_ends
            ));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{instances} instances, {moves} single rotations checked{}",
            tail(&problems)
        ),
    )
}

/// Half the draws are uniform above a random floor; the rest sit within a
/// few units of the per-index bounds, where verdicts actually flip.
fn random_sequence(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Vec<u64> {
    let max = berge_hamilton::combinatorics::binomial_u64(n as u64 - 1, r as u64 - 1);
    let mut d: Vec<u64> = if rng.gen_bool(0.5) {
        let floor = rng.gen_range(0..=max);
        (0..n).map(|_| rng.gen_range(floor..=max)).collect()
    } else {
        let c = |a: usize| berge_hamilton::combinatorics::binomial_u64(a as u64, r as u64 - 1);
        (1..=n)
            .map(|i| {
                let base = if i < r {
                    i as u64
                } else if 2 * i < n {
                    c(i)
                } else {
                    c((n - i).saturating_sub(1))
                };
                (base + rng.gen_range(0..=5)).saturating_sub(2).min(max)
            })
            .collect()
    };
    d.sort_unstable();
    d
}

/// Monotonicity of both uniform checkers and the implication from
/// conditions (1)-(3) to the conjectured condition.
fn checker_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for (n, r) in [(9, 3), (12, 4)] {
        let mut satisfied = 0;
        for _ in 0..10_000 {
            let d = random_sequence(&mut rng, n, r);
            let mut up = d.clone();
            let bump = rng.gen_range(0..n);
            up[bump] += rng.gen_range(1..=3);
            up.sort_unstable();
            let (ds, us) = (
                DegreeSequence::new(d).unwrap(),
                DegreeSequence::new(up).unwrap(),
            );
            let posa = posa_r_uniform(&ds, r).unwrap().satisfied;
            let conj = conjecture_r_uniform(&ds, r).unwrap().satisfied;
            satisfied += posa as usize;
            if posa && !posa_r_uniform(&us, r).unwrap().satisfied {
                problems.push(format!("posa not monotone: {ds} -> {us}"));
            }
            if conj && !conjecture_r_uniform(&us, r).unwrap().satisfied {
                problems.push(format!("conjecture not monotone: {ds} -> {us}"));
            }
            if posa && !conj {
                problems.push(format!("posa without conjecture: {ds}"));
            }
        }
        parts.push(format!(
            "({n},{r}): 10000 sequences, {satisfied} satisfying"
        ));
    }
    problems.truncate(5);
    outcome(
        problems.is_empty(),
        format!("{}{}", parts.join("; "), tail(&problems)),
    )
}

/// Same config and seed, same bytes, regardless of thread count.
fn determinism() -> Outcome {
    let mut configs = [
        CampaignConfig::verify(Theorem::RUniform, 9, Some(3), 40, 77),
        CampaignConfig::conjecture(7, 3, 200, 78),
        CampaignConfig::verify(Theorem::NonUniform, 8, None, 20, 79),
        CampaignConfig::oracle(vec![GridPoint { n: 6, r: Some(3) }], 30, 80),
        CampaignConfig::sharpness(Some(Family::H2), 10, Some(3), None),
    ];
    let mut problems = Vec::new();
    for cfg in configs.iter_mut() {
        let first = run_campaign(cfg).unwrap();
        let again = run_campaign(cfg).unwrap();
        cfg.threads = 4;
        let parallel = run_campaign(cfg).unwrap();
        let text = first.to_string();
        if text != again.to_string() || text != parallel.to_string() {
            problems.push(format!("{} text differs", cfg.kind));
        }
        if first.to_json().unwrap() != parallel.to_json().unwrap() {
            problems.push(format!("{} json differs", cfg.kind));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} campaigns repeated serially and on 4 threads{}",
            configs.len(),
            tail(&problems)
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 sharpness of conditions (1)-(3)", sharpness),
        ("2 exact solver vs brute-force oracle", oracle_equivalence),
        (
            "3 r-uniform theorem on sampled hypergraphs",
            theorem_uniform,
        ),
        (
            "4 non-uniform checker table and forced smoke test",
            theorem_nonuniform,
        ),
        ("5 rotation invariants", rotations),
        ("6 checker algebra", checker_algebra),
        ("7 campaign determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let secs = t.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag} ({secs:.1}s) {}", o.detail);
        failed += !o.pass as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
