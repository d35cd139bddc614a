//! Acceptance suite. One test per criterion; each prints a single
//! PASS/FAIL line (run with `--nocapture` to see them alongside the
//! harness output).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nosp::model::{
    is_occurrence, non_overlapping, GapConstraint, LengthConstraint, Pattern, Sequence,
    SequenceDatabase,
};
use nosp::nettree::{db_support, netgap_support};
use nosp::oracle::{enumerate_occurrences, exhaustive_topk, max_nonoverlapping, OracleLimits};
use nosp::{heuristic_mine, precision, tnosp_mine};

const LETTERS: [char; 4] = ['A', 'C', 'G', 'T'];

fn seq(text: &str) -> Sequence {
    Sequence::parse("s", text).unwrap()
}

fn pat(text: &str) -> Pattern {
    text.parse().unwrap()
}

fn gap(min: usize, max: usize) -> GapConstraint {
    GapConstraint::new(min, max).unwrap()
}

fn len(min: usize, max: usize) -> LengthConstraint {
    LengthConstraint::new(min, max).unwrap()
}

fn sample_db() -> SequenceDatabase {
    SequenceDatabase::new(vec![
        Sequence::parse("s1", "AGGAT").unwrap(),
        Sequence::parse("s2", "ATGG").unwrap(),
        Sequence::parse("s3", "CCTATA").unwrap(),
        Sequence::parse("s4", "GCGCGT").unwrap(),
    ])
    .unwrap()
}

fn random_sequence(rng: &mut ChaCha8Rng, alpha: usize, max_len: usize) -> Sequence {
    let n = rng.random_range(0..=max_len);
    let text: String = (0..n)
        .map(|_| LETTERS[rng.random_range(0..alpha)])
        .collect();
    Sequence::parse("s", &text).unwrap()
}

fn random_db(rng: &mut ChaCha8Rng, max_seqs: usize, total_len: usize) -> SequenceDatabase {
    let alpha = rng.random_range(2..=4usize);
    let nseq = rng.random_range(1..=max_seqs);
    let mut budget = total_len;
    let sequences = (0..nseq)
        .map(|i| {
            let n = rng.random_range(0..=budget.min(total_len / nseq + 4));
            budget -= n;
            let text: String = (0..n)
                .map(|_| LETTERS[rng.random_range(0..alpha)])
                .collect();
            Sequence::parse(format!("s{}", i + 1), &text).unwrap()
        })
        .collect();
    SequenceDatabase::new(sequences).unwrap()
}

fn random_pattern(rng: &mut ChaCha8Rng, alpha: usize, max_len: usize) -> Pattern {
    let m = rng.random_range(1..=max_len);
    Pattern::new(
        (0..m)
            .map(|_| nosp::Item::new(LETTERS[rng.random_range(0..alpha)]).unwrap())
            .collect(),
    )
    .unwrap()
}

#[test]
fn criterion_1_golden_examples() {
    // four-letter pattern over the thirteen-letter sequence
    let s = seq("GACTACGGCTCAT");
    let p = pat("GCTA");
    netgap_support(&s, &p, gap(0, 2), len(1, 6)); // warm up before timing
    let t = Instant::now();
    let r = netgap_support(&s, &p, gap(0, 2), len(1, 6));
    let elapsed = t.elapsed();
    assert_eq!(r.support, 2);
    let got: Vec<&[usize]> = r.occurrences.iter().map(|o| o.positions()).collect();
    assert_eq!(got, vec![&[1, 3, 4, 5][..], &[7, 9, 10, 12][..]]);
    assert!(
        elapsed.as_micros() < 1000,
        "support call took {elapsed:?}, expected under 1 ms"
    );

    // occurrence enumeration and the exact maximum set size
    let occs = enumerate_occurrences(
        &seq("GCGCGT"),
        &pat("GCG"),
        gap(0, 2),
        len(0, 5),
        &OracleLimits::default(),
    )
    .unwrap();
    let got: Vec<&[usize]> = occs.iter().map(|o| o.positions()).collect();
    assert_eq!(
        got,
        vec![
            &[1, 2, 3][..],
            &[1, 2, 5][..],
            &[1, 4, 5][..],
            &[3, 4, 5][..]
        ]
    );
    assert_eq!(max_nonoverlapping(&occs, &OracleLimits::default()), Ok(2));

    // the full support vector for the nine-letter walkthrough sequence
    let walk = SequenceDatabase::new(vec![Sequence::parse("w", "AGTCAGCAC").unwrap()]).unwrap();
    let expected: &[(&str, u64)] = &[
        ("A", 3),
        ("C", 3),
        ("G", 2),
        ("T", 1),
        ("AA", 2),
        ("AC", 3),
        ("AG", 2),
        ("AT", 1),
        ("CA", 2),
        ("CC", 2),
        ("CG", 1),
        ("CT", 0),
        ("GA", 2),
        ("GC", 2),
        ("GG", 1),
        ("GT", 1),
        ("TA", 1),
        ("TC", 1),
        ("TG", 1),
        ("TT", 0),
    ];
    for &(name, want) in expected {
        let got = db_support(&walk, &pat(name), gap(0, 3), len(1, 9)).support;
        assert_eq!(got, want, "support of {name}");
    }

    // the top-3 run on that sequence, with G admitted then evicted
    let report = tnosp_mine(&walk, 3, gap(0, 3), len(1, 9), true).unwrap();
    let ranked: Vec<(String, u64)> = report
        .ranked
        .iter()
        .map(|(p, s)| (p.to_string(), *s))
        .collect();
    assert_eq!(
        ranked,
        vec![
            ("A".to_string(), 3),
            ("C".to_string(), 3),
            ("AC".to_string(), 3)
        ]
    );
    assert!(!report.contains(&pat("G")));

    // database-level supports on the four-sequence sample
    let db = sample_db();
    for (name, want) in [("A", 5u64), ("C", 4), ("G", 7), ("T", 5), ("AT", 3)] {
        let got = db_support(&db, &pat(name), gap(0, 2), len(1, 6)).support;
        assert_eq!(got, want, "support of {name}");
    }

    println!("criterion 1: PASS - golden examples reproduced exactly (timed call {elapsed:?})");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let started = Instant::now();
    let limits = OracleLimits {
        max_sequence_length: 15,
        max_pattern_length: 4,
        max_total_patterns: 100_000,
        max_occurrences: 100_000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let instances = 1200;
    for i in 0..instances {
        let alpha = rng.random_range(1..=4usize);
        let s = random_sequence(&mut rng, alpha, 15);
        let p = random_pattern(&mut rng, alpha, 4);
        let mingap = rng.random_range(0..=3usize);
        let g = gap(mingap, mingap + rng.random_range(0..=3usize));
        let minlen = rng.random_range(0..=4usize);
        let l = len(minlen, (minlen + rng.random_range(0..=12usize)).max(1));

        let occs = enumerate_occurrences(&s, &p, g, l, &limits).unwrap();
        let exact = max_nonoverlapping(&occs, &limits).unwrap();
        let engine = netgap_support(&s, &p, g, l);
        assert_eq!(
            engine.support,
            exact,
            "instance {i}: pattern {p} in {:?} with gap [{},{}] len [{},{}]",
            s.items().iter().map(|c| c.as_char()).collect::<String>(),
            g.mingap(),
            g.maxgap(),
            l.minlen(),
            l.maxlen()
        );
        for occ in &engine.occurrences {
            assert_eq!(is_occurrence(&s, &p, occ.positions(), g, l), Ok(true));
        }
        for (a_idx, a) in engine.occurrences.iter().enumerate() {
            for b in &engine.occurrences[a_idx + 1..] {
                assert_eq!(non_overlapping(a, b), Ok(true));
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "oracle-equivalence fuzz took {elapsed:?}, budget is 60 s"
    );
    println!(
        "criterion 2: PASS - engine support equals the oracle on {instances} random instances in {elapsed:?}"
    );
}

#[test]
fn criterion_3_topk_exactness() {
    let limits = OracleLimits {
        max_sequence_length: 40,
        max_pattern_length: 6,
        max_total_patterns: 100_000,
        max_occurrences: 100_000,
    };

    // the four-sequence sample at k=4 agrees with the exhaustive oracle
    let db = sample_db();
    let mined = tnosp_mine(&db, 4, gap(0, 2), len(1, 6), true).unwrap();
    let oracle = exhaustive_topk(&db, 4, gap(0, 2), len(1, 6), &limits).unwrap();
    assert_eq!(mined.ranked, oracle.ranked);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let instances = 220;
    for i in 0..instances {
        let db = random_db(&mut rng, 3, 40);
        let k = rng.random_range(1..=10usize);
        let mingap = rng.random_range(0..=2usize);
        let g = gap(mingap, mingap + rng.random_range(0..=3usize));
        let l = len(rng.random_range(0..=1usize), rng.random_range(2..=5usize));

        let mined = tnosp_mine(&db, k, g, l, true).unwrap();
        let oracle = exhaustive_topk(&db, k, g, l, &limits).unwrap();
        assert_eq!(
            mined.ranked,
            oracle.ranked,
            "instance {i}: k={k} gap [{},{}] len [{},{}]",
            g.mingap(),
            g.maxgap(),
            l.minlen(),
            l.maxlen()
        );
    }
    println!(
        "criterion 3: PASS - exact miner equals exhaustive top-k on {instances} random databases"
    );
}

#[test]
fn criterion_4_qmsp_losslessness_and_economy() {
    let mut strict_reductions = 0usize;
    let mut total_visited_with = 0u64;
    let mut total_visited_without = 0u64;

    let mut check = |db: &SequenceDatabase, k: usize, g: GapConstraint, l: LengthConstraint| {
        let with = tnosp_mine(db, k, g, l, true).unwrap();
        let without = tnosp_mine(db, k, g, l, false).unwrap();
        assert_eq!(with.ranked, without.ranked, "QMSP changed the result set");
        let a = &with.metrics.candidates_per_length;
        let b = &without.metrics.candidates_per_length;
        assert!(
            a.len() <= b.len(),
            "QMSP explored more lengths: {a:?} vs {b:?}"
        );
        for (x, y) in a.iter().zip(b.iter()) {
            assert!(x <= y, "QMSP generated more candidates: {a:?} vs {b:?}");
        }
        if a.iter().sum::<usize>() < b.iter().sum::<usize>() {
            strict_reductions += 1;
        }
        total_visited_with += with.metrics.visited_nodes;
        total_visited_without += without.metrics.visited_nodes;
    };

    // bundled instances
    let walk = SequenceDatabase::new(vec![Sequence::parse("w", "AGTCAGCAC").unwrap()]).unwrap();
    check(&walk, 3, gap(0, 3), len(1, 9));
    check(&sample_db(), 4, gap(0, 2), len(1, 6));
    // the pruning demo: A is admitted early, minsup rises to 5, QMSP
    // drops A before growth (4 candidates of length 2 instead of 9)
    let demo = SequenceDatabase::new(vec![Sequence::parse("d", "AABBBBBCCCCCC").unwrap()]).unwrap();
    check(&demo, 2, gap(0, 5), len(1, 13));

    // the criterion-3 instance family
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..220 {
        let db = random_db(&mut rng, 3, 40);
        let k = rng.random_range(1..=10usize);
        let mingap = rng.random_range(0..=2usize);
        let g = gap(mingap, mingap + rng.random_range(0..=3usize));
        let l = len(rng.random_range(0..=1usize), rng.random_range(2..=5usize));
        check(&db, k, g, l);
    }

    assert!(
        strict_reductions >= 1,
        "expected at least one instance where QMSP strictly reduces candidates"
    );
    println!(
        "criterion 4: PASS - identical results, no more candidates, {strict_reductions} strict reductions; visited nodes {total_visited_with} with QMSP vs {total_visited_without} without (reported, not asserted)"
    );
}

#[test]
fn criterion_5_anti_monotonicity_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let triples = 1200;
    for i in 0..triples {
        let db = random_db(&mut rng, 3, 50);
        let alpha = rng.random_range(2..=4usize);
        let p = random_pattern(&mut rng, alpha, 3);
        let x = nosp::Item::new(LETTERS[rng.random_range(0..alpha)]).unwrap();
        let mingap = rng.random_range(0..=3usize);
        let g = gap(mingap, mingap + rng.random_range(0..=3usize));
        let l = len(
            rng.random_range(0..=1usize),
            rng.random_range(1..=16usize).max(1),
        );

        let base = db_support(&db, &p, g, l).support;
        let appended = p.extended_with(x);
        let mut items = vec![x];
        items.extend_from_slice(p.items());
        let prepended = Pattern::new(items).unwrap();
        let app = db_support(&db, &appended, g, l).support;
        let pre = db_support(&db, &prepended, g, l).support;
        assert!(
            app <= base,
            "instance {i}: sup({appended}) = {app} > sup({p}) = {base}"
        );
        assert!(
            pre <= base,
            "instance {i}: sup({prepended}) = {pre} > sup({p}) = {base}"
        );
    }
    println!("criterion 5: PASS - no Apriori violation over {triples} random extension triples");
}

#[test]
fn criterion_6_precision_harness() {
    // exact-vs-exact precision is always 100%
    let walk = SequenceDatabase::new(vec![Sequence::parse("w", "AGTCAGCAC").unwrap()]).unwrap();
    let fixtures: Vec<(SequenceDatabase, usize, GapConstraint, LengthConstraint)> = vec![
        (walk, 3, gap(0, 3), len(1, 9)),
        (sample_db(), 4, gap(0, 2), len(1, 6)),
    ];
    for (db, k, g, l) in &fixtures {
        let exact = tnosp_mine(db, *k, *g, *l, true).unwrap();
        assert_eq!(precision(&exact, &exact), Ok(1.0));
    }

    // a pinned database where the heuristic misses: sup(A) == sup(B), the
    // k=1 beam keeps B, the exact top-1 is A
    let tied = SequenceDatabase::new(vec![Sequence::parse("t", "AB").unwrap()]).unwrap();
    let exact = tnosp_mine(&tied, 1, gap(0, 1), len(1, 2), true).unwrap();
    let heur = heuristic_mine(&tied, 1, exact.l_max, gap(0, 1), len(1, 2)).unwrap();
    let pinned = precision(&exact, &heur).unwrap();
    assert!(pinned < 1.0, "pinned adversarial database must show a miss");

    // and the miss also arises organically in a random search
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut found = None;
    let mut all_at_most_one = true;
    for attempt in 0..5000 {
        let db = random_db(&mut rng, 2, 30);
        let k = rng.random_range(1..=8usize);
        let mingap = rng.random_range(0..=2usize);
        let g = gap(mingap, mingap + rng.random_range(0..=3usize));
        let l = len(rng.random_range(0..=1usize), rng.random_range(2..=8usize));
        let exact = tnosp_mine(&db, k, g, l, true).unwrap();
        if exact.l_max == 0 {
            continue;
        }
        let heur = heuristic_mine(&db, k, exact.l_max, g, l).unwrap();
        let p = precision(&exact, &heur).unwrap();
        all_at_most_one &= p <= 1.0;
        if p < 1.0 && found.is_none() {
            found = Some((attempt, p));
            break;
        }
    }
    assert!(all_at_most_one);
    let (attempt, p) = found.expect("no random database showed heuristic precision < 100%");
    println!(
        "criterion 6: PASS - exact precision always 1.0; heuristic misses on the pinned database (precision {pinned:.3}) and on random attempt {attempt} (precision {p:.3})"
    );
}
