//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Each criterion has a runtime limit; exceeding it is a failure unless
//! `TRANSYNC_SKIP_TIMING=1` is set.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use transync::automata;
use transync::drat::game::{check_pending_output, check_uniformizer, delay_bound, drat_uniformize_checked, DratOutcome};
use transync::drat::{
    is_consistent, lout_automaton, profile, profile_mul, reduce_seq, rho_of_word, traversals, Profile,
    Tag, Transformation,
};
use transync::game::{solve_safety, Owner, SafetyGame};
use transync::library;
use transync::monoid::{self, sigma, DEFAULT_MONOID_CAP};
use transync::random;
use transync::resync::{build_dk, build_dk_literal, image_of_word, inclusion_bound_formula, inclusion_bound_k, k_equivalent, min_lag_to, Resynchronizer};
use transync::transducer::{SequentialTransducer, Transducer};
use transync::uniformize::{seq_s_uniformizable, synthesize, verify_uniformizer, BurstPolicy};
use transync::words::{self, aligned_lag, del, lag, parse_sync_word, project, Alphabet, Color, Lag, SyncLetter, SyncWord};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn sw(s: &str) -> SyncWord {
    parse_sync_word(s).expect("sync word")
}

fn alphabet_of(t: &Transducer<char>) -> Alphabet {
    Alphabet::new(t.alphabet().iter().copied()).expect("alphabet")
}

fn criterion_1() -> Outcome {
    let (t1, t2) = (library::t1(), library::t2());
    ensure(t1.relation_equal_bounded(&t2, 8).map_err(|e| e.to_string())?, || "relations differ up to 8".into())?;
    for k in 0..=4 {
        let eq = k_equivalent(&t1, &t2, k).map_err(|e| e.to_string())?;
        ensure(!eq.holds(), || format!("k={k}: reported k-equivalent"))?;
        let mut witness = Vec::new();
        for _ in 0..=k {
            witness.extend(sw("i.a o.a o.a"));
        }
        witness.extend(std::iter::repeat_n(SyncLetter::input('a'), k + 1));
        ensure(project(&witness, Color::In).len() == 2 * k + 2, || "witness input length".into())?;
        ensure(automata::accepts(&t1.underlying_automaton(), &witness), || format!("k={k}: witness not in T1"))?;
        let img = build_dk(&alphabet_of(&t2), k).apply(&t2.underlying_automaton()).map_err(|e| e.to_string())?;
        ensure(!automata::accepts(&img, &witness), || format!("k={k}: witness inside D_k(T2)"))?;
        let got = min_lag_to(&t2, &witness);
        ensure(got == Lag::Finite(2 * k + 2), || format!("k={k}: lag {got}, expected {}", 2 * k + 2))?;
    }
    Ok("bounded equality at 8; not k-equivalent and witness lag 2k+2 for k=0..4".into())
}

fn criterion_2() -> Outcome {
    let t = library::marked();
    let u = SequentialTransducer::new(library::marked_uniformizer()).map_err(|e| e.to_string())?;
    let mut outside = Vec::new();
    for n in 0..=6 {
        for alpha in ['A', 'B'] {
            let mut input = vec!['a'; n];
            input.push(alpha);
            let out = u.apply(&input).ok_or_else(|| format!("U undefined on a^{n}{alpha}"))?;
            ensure(out == vec!['a'; n], || format!("U(a^{n}{alpha}) = {out:?}"))?;
            let in_domain = !t.enumerate_outputs(&input, 2 * n + 2).is_empty();
            if in_domain {
                ensure(t.evaluate_pair(&input, &out), || format!("U(a^{n}{alpha}) not in R_T"))?;
            } else {
                outside.push(format!("a^{n}{alpha}"));
            }
        }
    }
    ensure(outside == ["a^0B"], || format!("unexpected inputs outside dom(T): {outside:?}"))?;
    let sigma = alphabet_of(&t);
    for k in 0..=2 {
        let r = seq_s_uniformizable(&t, &build_dk(&sigma, k)).map_err(|e| e.to_string())?;
        ensure(r.is_none(), || format!("k={k}: uniformizer found"))?;
    }
    Ok("U(a^n α) = a^n in R_T for n ≤ 6 (B at n=0 is outside dom(T)); no D_k uniformizer for k=0,1,2".into())
}

fn criterion_3() -> Outcome {
    let lit = build_dk_literal(&Alphabet::new(['a']).unwrap(), 1);
    let copies = lit.edges().iter().filter(|e| e.input.len() == 1 && e.input[0].is_input()).count();
    ensure(lit.num_states() == 3, || format!("{} states", lit.num_states()))?;
    ensure(lit.edges().len() - copies == 9, || format!("{} non-copy transitions", lit.edges().len() - copies))?;
    let sigma = Alphabet::new(['a', 'b']).unwrap();
    let letters = ['a', 'b'];
    let dks: Vec<Resynchronizer> = (0..=2).map(|k| build_dk(&sigma, k)).collect();
    let mut rng = random::rng(3);
    let mut positives = 0;
    for _ in 0..200 {
        let w1 = random::sync_word(&mut rng, &letters, 6);
        let w2 = if rng.gen_bool(0.6) {
            random::shuffle(&mut rng, &project(&w1, Color::In), &project(&w1, Color::Out))
        } else {
            random::sync_word(&mut rng, &letters, 6)
        };
        for (k, s) in dks.iter().enumerate() {
            let img = image_of_word(s, &sigma, &w1).map_err(|e| e.to_string())?;
            let member = automata::accepts(&img, &w2);
            let expected = words::equivalent(&w1, &w2) && lag(&w1, &w2).at_most(k);
            positives += usize::from(expected);
            ensure(member == expected, || {
                format!("k={k}: {} vs {}", words::format_sync_word(&w1), words::format_sync_word(&w2))
            })?;
        }
    }
    Ok(format!("3 states, 9 transitions; 200 pairs × k=0..2 agree ({positives} members)"))
}

fn criterion_4() -> Outcome {
    let t = library::r1_transducer(&['a', 'b']).map_err(|e| e.to_string())?;
    let outcome = drat_uniformize_checked(&t, 1, 6).map_err(|e| e.to_string())?;
    let DratOutcome::Yes { uniformizer, delay_bound: bound } = outcome else {
        return Err("game lost at K=1".into());
    };
    check_uniformizer(&t, &uniformizer, 6).map_err(|e| e.to_string())?;
    let expected = delay_bound(&t, 1).map_err(|e| e.to_string())?;
    ensure(bound == expected, || format!("bound {bound} vs {expected}"))?;
    check_pending_output(&t, &uniformizer, bound, 6).map_err(|e| e.to_string())?;
    ensure(uniformizer.transducer().is_sequential(), || "not sequential".into())?;
    Ok(format!("Yes at K=1, {} states, pending output ≤ {bound}", uniformizer.transducer().num_states()))
}

fn eps_targets(p: &Profile, from: usize) -> Vec<usize> {
    (0..p.size()).filter(|&q| p.get(from, q) == Some(Tag::Eps)).collect()
}

fn criterion_5() -> Outcome {
    let mut rng = random::rng(5);
    let mut checked = 0;
    for _ in 0..100 {
        let t = random::det_transducer(&mut rng, &['a', 'b'], 4).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let r1 = random::transformation_seq(&mut rng, &t, 4);
            let r2 = random::transformation_seq(&mut rng, &t, 4);
            let joined: Vec<Transformation> = r1.iter().chain(&r2).cloned().collect();
            let whole = profile(&t, &joined);
            ensure(whole == profile_mul(&profile(&t, &r1), &profile(&t, &r2)), || "multiplicativity".into())?;
            for p in [profile(&t, &r1), whole] {
                for q in 0..t.num_states() {
                    ensure(eps_targets(&p, q).len() <= 1, || format!("two ε-targets from {q}"))?;
                }
            }
            if !r1.is_empty() {
                let reduced = profile(&t, &[reduce_seq(&t, &r1).map_err(|e| e.to_string())?]);
                let full = profile(&t, &r1);
                for p in 0..t.num_states() {
                    ensure(eps_targets(&reduced, p) == eps_targets(&full, p), || "ε-traversal changed".into())?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} sequence pairs over 100 transducers"))
}

fn criterion_6() -> Outcome {
    let mut rng = random::rng(6);
    let mut triples = 0;
    let mut attempts = 0;
    while triples < 100 {
        attempts += 1;
        ensure(attempts < 10_000, || format!("only {triples} triples sampled"))?;
        let t = random::det_transducer(&mut rng, &['a', 'b'], 4).map_err(|e| e.to_string())?;
        let mut u = random::word(&mut rng, &['a', 'b'], 4);
        if rng.gen_bool(0.3) {
            u.push(transync::ENDMARKER);
        }
        let rho = rho_of_word(&t, &u).map_err(|e| e.to_string())?;
        ensure(is_consistent(&t, &rho, &u).map_err(|e| e.to_string())?, || "ρ_u inconsistent with u".into())?;
        let p = rng.gen_range(0..t.num_states());
        let targets: Vec<usize> = (0..t.num_states()).filter(|&q| traversals(&t, p, &rho)[q].is_some()).collect();
        if targets.is_empty() {
            continue;
        }
        let q = targets[rng.gen_range(0..targets.len())];
        let outs: Vec<Vec<char>> = automata::accepted_words(&lout_automaton(&t, p, &rho, q), 4).into_iter().collect();
        if outs.is_empty() {
            continue;
        }
        let v = &outs[rng.gen_range(0..outs.len())];
        let (r, rest_u, rest_v) = t.delta_star(p, &u, v).map_err(|e| e.to_string())?;
        ensure(r == q && rest_u.is_empty() && rest_v.is_empty(), || {
            format!("δ*({}, {:?}, {:?}) = {} ≠ {}", t.name(p), u, v, t.name(r), t.name(q))
        })?;
        triples += 1;
    }
    Ok(format!("{triples} triples"))
}

fn criterion_7() -> Outcome {
    let mut rng = random::rng(7);
    let mut idempotents = 0;
    for _ in 0..20 {
        let t = random::union_of_unambiguous(&mut rng, &['a', 'b'], 2, 3, 1);
        if t.num_states() == 0 {
            continue;
        }
        let m = monoid::generate_monoid(&t, DEFAULT_MONOID_CAP).map_err(|e| e.to_string())?;
        for e in &m {
            ensure(!monoid::is_s_form(e), || format!("s-form {e}"))?;
            if e.is_idempotent() {
                idempotents += 1;
                for (q1, q2) in e.pairs() {
                    ensure(monoid::z_form_witness(e, q1, q2).is_some(), || format!("no z-form in {e} for ({q1},{q2})"))?;
                }
            }
        }
    }
    let mut words = 0;
    while words < 100 {
        let t = random::union_of_unambiguous(&mut rng, &['a', 'b'], 2, 3, 1);
        if t.num_states() == 0 {
            continue;
        }
        for _ in 0..10 {
            let v = random::word(&mut rng, &['a', 'b'], 6);
            let s = sigma(&t, &v).map_err(|e| e.to_string())?;
            let phi = monoid::phi(&t, &v, 1).map_err(|e| e.to_string())?;
            let rho = monoid::rho_pump(&t, &v, 1).map_err(|e| e.to_string())?;
            ensure(sigma(&t, &phi).map_err(|e| e.to_string())? == s, || format!("σ(φ({v:?})) ≠ σ(v)"))?;
            ensure(sigma(&t, &rho).map_err(|e| e.to_string())? == s, || format!("σ(ρ({v:?})) ≠ σ(v)"))?;
            words += 1;
        }
    }
    Ok(format!("no s-forms; {idempotents} idempotents with z-forms; φ and ρ preserve σ on 100 words"))
}

fn criterion_8() -> Outcome {
    let mut rng = random::rng(8);
    let ab = ['a', 'b'];
    for _ in 0..500 {
        let [u1, u2, u3, v1, v2, v3] = std::array::from_fn(|_| random::word(&mut rng, &ab, 3));
        let lhs = del(&[u1.clone(), u2.clone(), u3.clone()].concat(), &[v1.clone(), v2.clone(), v3.clone()].concat());
        let rhs = del(&[u1, u2].concat(), &[v1, v2].concat()).len() + u3.len() + v3.len();
        ensure(lhs.len() <= rhs, || "triangle bound".into())?;
    }
    let mut folk = 0;
    while folk < 500 {
        let [v1, w1, v2, w2] = std::array::from_fn(|_| random::word(&mut rng, &ab, 3));
        if del(&v1, &w1) == del(&[v1.clone(), v2.clone()].concat(), &[w1.clone(), w2.clone()].concat()) {
            continue;
        }
        let ds: Vec<_> = (0..=5).map(|i| del(&[v1.clone(), v2.repeat(i)].concat(), &[w1.clone(), w2.repeat(i)].concat())).collect();
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                ensure(ds[i] != ds[j], || format!("iterates {i} and {j} coincide"))?;
            }
        }
        folk += 1;
    }
    let mut stable = 0;
    let mut tries = 0;
    while stable < 500 {
        tries += 1;
        ensure(tries < 100_000, || "too few stable instances".into())?;
        let n = rng.gen_range(1..=3);
        let (x1, y1, x2, y2) = if rng.gen_bool(0.5) {
            let y1 = random::word(&mut rng, &ab, 2);
            let s = random::word(&mut rng, &ab, n);
            let tw = random::word(&mut rng, &ab, 2);
            ([y1.clone(), s.clone()].concat(), y1, [tw.clone(), s.clone()].concat(), [s, tw].concat())
        } else {
            let [a, b, c, d] = std::array::from_fn(|_| random::word(&mut rng, &ab, 2));
            (a, b, c, d)
        };
        let [x3, y3] = std::array::from_fn(|_| random::word(&mut rng, &ab, 2));
        let pumped = |tail_x: &[char], tail_y: &[char]| {
            del(&[x1.clone(), x2.repeat(3 * n), tail_x.to_vec()].concat(), &[y1.clone(), y2.repeat(3 * n), tail_y.to_vec()].concat())
        };
        if del(&x1, &y1).len() > n || pumped(&[], &[]).len() > n {
            continue;
        }
        let plain = del(&[x1.clone(), x3.clone()].concat(), &[y1.clone(), y3.clone()].concat());
        ensure(pumped(&x3, &y3) == plain, || "loop changed the delay".into())?;
        stable += 1;
    }
    let mut rec = 0;
    while rec < 500 {
        let input = random::word(&mut rng, &ab, 3);
        let blocks = |rng: &mut rand_chacha::ChaCha8Rng| -> SyncWord {
            let mut out = Vec::new();
            for &a in &input {
                out.extend(random::word(rng, &ab, 2).into_iter().map(SyncLetter::output));
                out.push(SyncLetter::input(a));
            }
            out.extend(random::word(rng, &ab, 2).into_iter().map(SyncLetter::output));
            out
        };
        let (u, v) = (blocks(&mut rng), blocks(&mut rng));
        let letter = ab[rng.gen_range(0..2)];
        let (u2, v2) = (random::word(&mut rng, &ab, 2), random::word(&mut rng, &ab, 2));
        let extend = |x: &SyncWord, tail: &[char]| -> SyncWord {
            let mut y = x.clone();
            y.push(SyncLetter::input(letter));
            y.extend(tail.iter().map(|&c| SyncLetter::output(c)));
            y
        };
        let (ue, ve) = (extend(&u, &u2), extend(&v, &v2));
        let tail = del(&[project(&u, Color::Out), u2.clone()].concat(), &[project(&v, Color::Out), v2.clone()].concat()).len();
        let expected = aligned_lag(&u, &v).expect("same input").max(tail);
        ensure(aligned_lag(&ue, &ve) == Some(expected), || "lag recursion".into())?;
        if words::equivalent(&ue, &ve) {
            ensure(lag(&ue, &ve) == Lag::Finite(expected), || "lag recursion on equivalent words".into())?;
        }
        rec += 1;
    }
    Ok("500 instances each of the triangle bound, iterated delays, loop stability and the lag recursion".into())
}

fn brute_force_winning(g: &SafetyGame) -> Vec<bool> {
    let mut win: Vec<bool> = g.bad.iter().map(|b| !b).collect();
    loop {
        let mut changed = false;
        for v in 0..g.num_vertices() {
            if !win[v] {
                continue;
            }
            let keep = match g.owner[v] {
                Owner::Output => g.edges[v].iter().any(|e| win[e.target]),
                Owner::Input => g.edges[v].iter().all(|e| win[e.target]),
            };
            if !keep {
                win[v] = false;
                changed = true;
            }
        }
        if !changed {
            return win;
        }
    }
}

fn criterion_9() -> Outcome {
    let mut rng = random::rng(9);
    for i in 0..50 {
        let g = random::safety_game(&mut rng, 20, 3);
        ensure(solve_safety(&g).winning == brute_force_winning(&g), || format!("game {i}: regions differ"))?;
    }
    let mut synthesized = 0;
    for _ in 0..20 {
        let t = random::transducer(&mut rng, &['a', 'b'], 2, 4, 1);
        let sigma = alphabet_of(&t);
        for s in [Resynchronizer::identity(&sigma), build_dk(&sigma, 1)] {
            let syn = synthesize(&t, &s, BurstPolicy::LoopFree).map_err(|e| e.to_string())?;
            if let Some(u) = syn.uniformizer {
                ensure(verify_uniformizer(u.transducer(), &t, &s).map_err(|e| e.to_string())?, || "verify failed".into())?;
                synthesized += 1;
            }
        }
    }
    Ok(format!("50 games match the fixpoint; {synthesized} uniformizers verified"))
}

fn criterion_10() -> Outcome {
    let mut one = Transducer::new(['a']);
    let q = one.add_state("q");
    one.set_initial(q);
    one.set_final(q, vec![]);
    one.add_transition(q, w("a"), w("a"), q);
    let k = inclusion_bound_k(&one, &one, 1).map_err(|e| e.to_string())?;
    ensure(k == 12u32.into(), || format!("inclusion bound {k}"))?;
    let n = monoid::nt_bound(&one, DEFAULT_MONOID_CAP).map_err(|e| e.to_string())?;
    ensure(n == 16u32.into(), || format!("N_T {n}"))?;
    ensure(inclusion_bound_k(&one, &one, 2).unwrap() >= k, || "not monotone in m".into())?;
    ensure(inclusion_bound_formula(2, 2, 2, 3, 1) < inclusion_bound_formula(2, 2, 2, 3, 2), || "not increasing in m".into())?;
    ensure(n >= (2 * one.num_states()).into(), || "N_T below 2|Q|".into())?;
    Ok("inclusion bound 12, N_T 16".into())
}

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let enforce = !std::env::var("TRANSYNC_SKIP_TIMING").is_ok_and(|v| v == "1");
    let criteria: [Criterion; 10] = [
        (1, "t1 vs t2 equivalence", 10, criterion_1),
        (2, "marked uniformization", 30, criterion_2),
        (3, "D_k correctness", 20, criterion_3),
        (4, "DRat synthesis", 60, criterion_4),
        (5, "profile algebra", 30, criterion_5),
        (6, "input/output language soundness", 30, criterion_6),
        (7, "monoid and pumping invariants", 60, criterion_7),
        (8, "delay identities", 30, criterion_8),
        (9, "game solver oracle", 30, criterion_9),
        (10, "bound formulas", 1, criterion_10),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        let ok = result.is_ok() && !(enforce && slow);
        let detail = match &result {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        let timing = format!("{:.2}s, limit {limit}s{}", elapsed.as_secs_f64(), if slow { ", over" } else { "" });
        println!("{} criterion {n}: {name}: {detail} ({timing})", if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
