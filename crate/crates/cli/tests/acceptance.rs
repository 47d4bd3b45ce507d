//! Acceptance suite. Every criterion prints one `[PASS]` or `[FAIL]` line;
//! the test fails if any criterion does. Run with `--nocapture` to see the
//! report.

use std::process::Command;
use std::time::{Duration, Instant};

use tame_orders::enumerate::sample_configs;
use tame_orders::{
    all_labeled_posets, check_claim_inequalities, cummings_blocks, d_comparable, embeds_r22,
    find_embedding, is_tame, pattern_r22, r_lambda, random_poset, realize, reduce, tame_rank,
    u_comparable, CheckKind, Poset, VerificationReport, VerifyOptions,
};

const TEMPLATE_MAX: usize = 8;
const TEMPLATE_BOUND: Duration = Duration::from_secs(1);
const PATTERN_BOUND: Duration = Duration::from_secs(5);
const EXHAUSTIVE_MAX: usize = 5;
const LEMMA_BOUND: Duration = Duration::from_secs(60);
const CLAIM_TEMPLATE_MAX: usize = 6;
const RANDOM_TAME_SAMPLES: usize = 200;
const RANDOM_MAX_N: usize = 12;
const RANDOM_SEED: u64 = 0x7a3e_2022;
const RANDOM_DRAW_CAP: usize = 20_000;
const REALIZE_BOUND: Duration = Duration::from_secs(120);
const CUMMINGS_MAX: usize = 5;

type Outcome = Result<String, String>;

struct Corpus {
    posets: Vec<Poset>,
    reports: Vec<VerificationReport>,
    elapsed: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn within(elapsed: Duration, bound: Duration, detail: String) -> Outcome {
    if elapsed <= bound {
        Ok(format!("{detail} in {elapsed:.2?}"))
    } else {
        Err(format!("{detail} but took {elapsed:.2?} (bound {bound:?})"))
    }
}

fn template_ranks() -> Outcome {
    let (res, elapsed) = timed(|| {
        for lambda in 0..=TEMPLATE_MAX {
            let r = r_lambda(lambda).map_err(|e| e.to_string())?;
            let size = lambda * (lambda + 1) / 2;
            if r.len() != size {
                return Err(format!("|R_{lambda}| = {} != {size}", r.len()));
            }
            let rank = tame_rank(&r).map_err(|e| e.to_string())?;
            if rank != lambda {
                return Err(format!("tame rank of R_{lambda} is {rank}"));
            }
        }
        Ok(())
    });
    res?;
    within(
        elapsed,
        TEMPLATE_BOUND,
        format!("lambda 0..={TEMPLATE_MAX}"),
    )
}

fn forbidden_pattern() -> Outcome {
    let r22 = pattern_r22();
    let (res, elapsed) = timed(|| {
        for lambda in 0..=TEMPLATE_MAX {
            let r = r_lambda(lambda).map_err(|e| e.to_string())?;
            if let Some(e) = find_embedding(&r22, &r) {
                return Err(format!("R22 embeds in R_{lambda}: {:?}", e.map()));
            }
        }
        Ok(())
    });
    res?;
    within(
        elapsed,
        PATTERN_BOUND,
        format!("no embedding for lambda 0..={TEMPLATE_MAX}"),
    )
}

fn build_corpus() -> Result<Corpus, String> {
    let opts = VerifyOptions {
        jobs: 1,
        budget: None,
        extended: false,
    };
    let start = Instant::now();
    let mut posets = Vec::new();
    let mut reports = Vec::new();
    for n in 0..=EXHAUSTIVE_MAX {
        posets.extend(all_labeled_posets(n).map_err(|e| e.to_string())?);
        reports.push(tame_orders::verify_proposition(n, &opts).map_err(|e| e.to_string())?);
    }
    Ok(Corpus {
        posets,
        reports,
        elapsed: start.elapsed(),
    })
}

fn lemma_equivalence(c: &Corpus) -> Outcome {
    let (bad, elapsed) = timed(|| {
        c.posets
            .iter()
            .filter(|p| {
                let free = embeds_r22(p).is_none();
                free != u_comparable(p) || free != d_comparable(p)
            })
            .count()
    });
    let harness: usize = c
        .reports
        .iter()
        .map(|r| failures(r, CheckKind::LemmaEquivalence))
        .sum();
    if bad + harness > 0 {
        return Err(format!("{bad} direct and {harness} harness exceptions"));
    }
    within(
        elapsed + c.elapsed,
        LEMMA_BOUND,
        format!("{} posets, zero exceptions", c.posets.len()),
    )
}

fn failures(r: &VerificationReport, kind: CheckKind) -> usize {
    r.counterexamples.iter().filter(|c| c.check == kind).count()
}

fn proposition(c: &Corpus) -> Outcome {
    let mut summary = Vec::new();
    for r in &c.reports {
        if let Some(first) = r.first_counterexample() {
            return Err(format!(
                "n = {}: {} counterexamples, first #{} {:?}: {}",
                r.n,
                r.counterexamples.len(),
                first.index,
                first.check,
                first.detail
            ));
        }
        summary.push(format!("{}:{}", r.n, r.total));
    }
    Ok(format!(
        "zero counterexamples (n:posets {})",
        summary.join(" ")
    ))
}

fn minimality(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for r in &c.reports {
        if r.minimality_checked != r.reduced_tame_count || failures(r, CheckKind::Minimality) > 0 {
            return Err(format!(
                "n = {}: {} of {} reduced tame orders confirmed",
                r.n,
                r.minimality_checked - failures(r, CheckKind::Minimality),
                r.reduced_tame_count
            ));
        }
        checked += r.minimality_checked;
    }
    Ok(format!(
        "{checked} reduced tame orders, brute-force rank = tame rank"
    ))
}

fn claims(c: &Corpus) -> Outcome {
    let mut tame = 0;
    for p in &c.posets {
        if is_tame(p).map_err(|e| e.to_string())?.tame {
            tame += 1;
            if !check_claim_inequalities(p).map_err(|e| e.to_string())? {
                return Err(format!("claims fail on\n{p}"));
            }
        }
    }
    for lambda in 0..=CLAIM_TEMPLATE_MAX {
        let r = r_lambda(lambda).map_err(|e| e.to_string())?;
        if !check_claim_inequalities(&r).map_err(|e| e.to_string())? {
            return Err(format!("claims fail on R_{lambda}"));
        }
    }
    Ok(format!(
        "{tame} tame posets and R_0..R_{CLAIM_TEMPLATE_MAX}"
    ))
}

fn realize_round_trip(c: &Corpus) -> Outcome {
    let check = |p: &Poset| -> Result<(), String> {
        let r = realize(p).map_err(|e| format!("{e} on\n{p}"))?;
        let iso = &r.iso;
        if !iso.verified() || iso.source() != p || iso.target().len() != p.len() {
            return Err(format!("bad isomorphism for\n{p}"));
        }
        let window = r
            .inflated
            .poset
            .restrict(&r.window)
            .map_err(|e| e.to_string())?;
        if iso.target() != &window {
            return Err(format!("target is not the window restriction for\n{p}"));
        }
        Ok(())
    };
    let (res, elapsed) = timed(|| {
        let mut random = 0;
        let mut draws = 0;
        for (i, mut cfg) in sample_configs(RANDOM_MAX_N, RANDOM_DRAW_CAP, RANDOM_SEED)
            .into_iter()
            .enumerate()
        {
            if random == RANDOM_TAME_SAMPLES {
                break;
            }
            cfg.n = 1 + i % RANDOM_MAX_N;
            draws += 1;
            let p = random_poset(&cfg).map_err(|e| e.to_string())?;
            if is_tame(&p).map_err(|e| e.to_string())?.tame {
                check(&p)?;
                random += 1;
            }
        }
        if random < RANDOM_TAME_SAMPLES {
            return Err(format!("only {random} tame draws in {draws}"));
        }
        let mut exhaustive = 0;
        for p in &c.posets {
            if is_tame(p).map_err(|e| e.to_string())?.tame {
                check(p)?;
                exhaustive += 1;
            }
        }
        Ok((draws, exhaustive))
    });
    let (draws, exhaustive) = res?;
    within(
        elapsed,
        REALIZE_BOUND,
        format!("{RANDOM_TAME_SAMPLES} random tame ({draws} draws) and {exhaustive} exhaustive"),
    )
}

fn rank_bounds(c: &Corpus) -> Outcome {
    let mut tame = 0;
    for p in &c.posets {
        let Ok(rank) = tame_rank(p) else { continue };
        tame += 1;
        let quotient_rank = tame_rank(&reduce(p).quotient).map_err(|e| e.to_string())?;
        if p.well_founded_rank() > rank || rank > p.len() || quotient_rank != rank {
            return Err(format!(
                "rank {} / tame rank {rank} / quotient {quotient_rank} on\n{p}",
                p.well_founded_rank()
            ));
        }
    }
    let harness: usize = c
        .reports
        .iter()
        .map(|r| failures(r, CheckKind::RankBounds) + failures(r, CheckKind::ReductionInvariance))
        .sum();
    if harness > 0 {
        return Err(format!("{harness} harness exceptions"));
    }
    Ok(format!("{tame} tame posets"))
}

fn cummings() -> Outcome {
    for o in 1..=CUMMINGS_MAX {
        let p = cummings_blocks(o).map_err(|e| e.to_string())?;
        if !is_tame(&p).map_err(|e| e.to_string())?.tame {
            return Err(format!("cummings_blocks({o}) is not tame"));
        }
    }
    let p = cummings_blocks(2).map_err(|e| e.to_string())?;
    let relations: Vec<(&str, &str)> = p
        .relations()
        .map(|(a, b)| (p.label(a), p.label(b)))
        .collect();
    if p.labels() != ["0,1", "0,inf", "1,inf"] || relations != [("0,1", "1,inf")] {
        return Err(format!("cummings_blocks(2) is\n{p}"));
    }
    Ok(format!(
        "o = 1..={CUMMINGS_MAX} tame; o = 2 has the single relation (0,1) < (1,inf)"
    ))
}

fn cli_determinism() -> Outcome {
    let run = |args: &[&str], stdin: Option<&str>| -> Result<Vec<u8>, String> {
        use std::io::Write;
        use std::process::Stdio;
        let mut child = Command::new(env!("CARGO_BIN_EXE_tame"))
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| e.to_string())?;
        let mut input = child.stdin.take().unwrap();
        input
            .write_all(stdin.unwrap_or("").as_bytes())
            .map_err(|e| e.to_string())?;
        drop(input);
        Ok(child.wait_with_output().map_err(|e| e.to_string())?.stdout)
    };
    let text = |args: &[&str]| -> Result<String, String> {
        String::from_utf8(run(args, None)?).map_err(|e| e.to_string())
    };
    let wild = text(&["gen", "--random", "10", "0.35", "2024"])?;
    let dense = text(&["gen", "--random", "10", "0.9", "1"])?;
    let quotient =
        String::from_utf8(run(&["reduce", "-"], Some(&dense))?).map_err(|e| e.to_string())?;
    let invocations: [(&[&str], Option<&str>); 7] = [
        (
            &[
                "--json",
                "verify",
                "--n",
                "7",
                "--samples",
                "40",
                "--seed",
                "11",
            ],
            None,
        ),
        (&["--json", "verify", "--n", "4"], None),
        (&["--json", "check", "-"], Some(&wild)),
        (&["--json", "check", "-"], Some(&dense)),
        (&["--json", "reduce", "-"], Some(&wild)),
        (&["--json", "embed", "-"], Some(&quotient)),
        (&["--json", "realize", "-"], Some(&dense)),
    ];
    for (args, stdin) in invocations {
        let first = run(args, stdin)?;
        let second = run(args, stdin)?;
        if first.is_empty() {
            return Err(format!("no output for {args:?}"));
        }
        if first != second {
            return Err(format!("outputs differ for {args:?}"));
        }
        serde_json::from_slice::<serde_json::Value>(&first)
            .map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!("{} invocations byte-identical", invocations.len()))
}

#[test]
fn acceptance() {
    let corpus = build_corpus().expect("exhaustive corpus");
    let results: Vec<(&str, Outcome)> = vec![
        ("AC-1 template ranks", template_ranks()),
        ("AC-2 forbidden pattern", forbidden_pattern()),
        ("AC-3 lemma equivalence", lemma_equivalence(&corpus)),
        ("AC-4 exhaustive proposition", proposition(&corpus)),
        ("AC-5 minimality", minimality(&corpus)),
        ("AC-6 claim inequalities", claims(&corpus)),
        ("AC-7 realization round-trip", realize_round_trip(&corpus)),
        ("AC-8 rank bounds and reduction", rank_bounds(&corpus)),
        ("AC-9 cummings blocks", cummings()),
        ("AC-10 cli determinism", cli_determinism()),
    ];
    let mut failed = Vec::new();
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                println!("[FAIL] {name}: {detail}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
