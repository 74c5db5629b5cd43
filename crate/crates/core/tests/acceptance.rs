//! Acceptance suite: one PASS/FAIL line per criterion, checked against
//! independent oracles (u64 Fibonacci tables, brute-force enumeration,
//! symbol-string splicing, AST-level substitution).

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zeckgodel::cli::dispatch;
use zeckgodel::logic::{check_proof, godel_sentence, justify, prov_bounded, prov_bounded_formula, TheoryConfig};
use zeckgodel::numeric::{cantor_pair, max_fib_index_le, Nat};
use zeckgodel::oracle::{mp_witness, oracle_check, oracle_solve, OracleTriple};
use zeckgodel::primecode::{code_p, compare_sizes};
use zeckgodel::seqcode::{self, concat, is_code, seq_decode, seq_encode, symbol_at, SeqCode};
use zeckgodel::substitution::{diag, fixed_point, sub_z, SubRequest};
use zeckgodel::syntax::random::{formula_of_size, term_of_size, GenConfig};
use zeckgodel::syntax::text::parse_formula_text;
use zeckgodel::syntax::{
    decode_formula, decode_proof, encode_formula, encode_proof, encode_symbols, encode_term, is_wff_code, numeral,
    Alphabet, Formula, Symbol, Term,
};
use zeckgodel::zeckendorf::{z_decode, z_encode};

// Pinned tolerances.
const AC1_LIMIT: Duration = Duration::from_secs(10);
const AC2_LIMIT: Duration = Duration::from_secs(10);
const AC3_LIMIT: Duration = Duration::from_secs(30);
const AC4_LIMIT: Duration = Duration::from_secs(30);
const AC5_LIMIT: Duration = Duration::from_secs(300);
const AC6_LIMIT: Duration = Duration::from_secs(10);
const AC7_LIMIT: Duration = Duration::from_secs(5);
const AC8_LIMIT: Duration = Duration::from_secs(30);
const AC9_LIMIT: Duration = Duration::from_secs(300);
const ZECK_BITS_BOUND: u64 = 15_000;
/// Quadratic growth under doubling gives ratio 4; a factor-of-2 band.
const GROWTH_RATIO_BAND: (f64, f64) = (2.0, 8.0);
const SEED: u64 = 0x5eed;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `F_1 = 1, F_2 = 2, …` by plain iteration, independent of the library.
fn fib_table_u64(count: usize) -> Vec<u64> {
    let mut out = vec![0u64, 1, 2];
    while out.len() <= count {
        let k = out.len();
        out.push(out[k - 1] + out[k - 2]);
    }
    out
}

fn fib_table_big(count: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::from(0u32), BigUint::from(1u32), BigUint::from(2u32)];
    while out.len() <= count {
        let k = out.len();
        let next = &out[k - 1] + &out[k - 2];
        out.push(next);
    }
    out
}

fn run_cli(args: &[&str]) -> String {
    dispatch(std::iter::once("zeckgodel").chain(args.iter().copied())).stdout
}

fn ac1() -> Check {
    let out = run_cli(&["zeck", "decode", "32"]);
    ensure(out == "Z[7,5,3]\n", || format!("zeck decode 32 printed {out:?}"))?;

    for n in 0..=100_000u64 {
        let s = z_decode(&Nat::from(n));
        ensure(z_encode(&s).ok() == Some(Nat::from(n)), || format!("roundtrip failed at {n}"))?;
    }

    // every non-consecutive subset of {1..16} with sum <= 2000
    let f = fib_table_u64(20);
    let mut counts = vec![0u32; 2001];
    let mut stack: Vec<(usize, u64)> = vec![(1, 0)];
    while let Some((next, sum)) = stack.pop() {
        counts[sum as usize] += 1;
        for (e, fe) in f.iter().enumerate().take(17).skip(next) {
            let s = sum + fe;
            if s <= 2000 {
                stack.push((e + 2, s));
            }
        }
    }
    let bad: Vec<usize> = (0..=2000).filter(|&n| counts[n] != 1).collect();
    ensure(bad.is_empty(), || format!("representation counts != 1 at {:?}", &bad[..bad.len().min(5)]))?;
    Ok("Z(32)=[7,5,3]; roundtrip n<=1e5; unique support n<=2000".into())
}

fn ac2() -> Check {
    let n = |v: u64| Nat::from(v);
    ensure(cantor_pair(&n(0), &n(1)) == n(1), || "<0,1> != 1".into())?;
    ensure(cantor_pair(&n(0), &n(2)) == n(3), || "<0,2> != 3".into())?;
    let c = seq_encode(&[n(0), n(0)]);
    let idx: Vec<u64> = c.support().indices().iter().map(|e| e.to_u64().unwrap()).collect();
    ensure(idx == vec![7, 3], || format!("[0,0] indices {idx:?}"))?;

    let mut seen: HashMap<Nat, Vec<u64>> = HashMap::new();
    let mut total = 0;
    for len in 0..=4u32 {
        for k in 0..3u64.pow(len) {
            let items: Vec<u64> = (0..len).map(|j| (k / 3u64.pow(j)) % 3).collect();
            let code = seqcode::seq_encode_u64(&items).to_number().map_err(|e| e.to_string())?;
            if let Some(prev) = seen.insert(code.clone(), items.clone()) {
                return Err(format!("collision {prev:?} / {items:?} -> {code}"));
            }
            total += 1;
        }
    }
    ensure(total == 121, || format!("enumerated {total} sequences"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut via_number = 0;
    for _ in 0..1000 {
        let len = rng.random_range(0..=30);
        let items: Vec<Nat> = (0..len).map(|_| n(rng.random_range(0..=10_000))).collect();
        let code = seq_encode(&items);
        ensure(seq_decode(&code).ok().as_ref() == Some(&items), || format!("support roundtrip {items:?}"))?;
        if code.is_materializable(1 << 20) {
            let back = SeqCode::from_number(code.to_number().map_err(|e| e.to_string())?);
            ensure(seq_decode(&back).ok().as_ref() == Some(&items), || format!("number roundtrip {items:?}"))?;
            via_number += 1;
        }
    }
    Ok(format!("pairing examples; 121 sequences injective; 1000 random roundtrips ({via_number} also via the number)"))
}

fn ac3() -> Check {
    const N: u64 = 100_000;
    let f = fib_table_u64(30);
    let emax = (1..f.len()).take_while(|&e| f[e] <= N).last().unwrap() as u64;
    let pair = |a: u64, i: u64| (a + i) * (a + i + 1) / 2 + a;
    // brute force: all sequences whose code is <= N
    let mut oracle: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut stack: Vec<(Vec<u64>, u64)> = vec![(Vec::new(), 0)];
    while let Some((items, sum)) = stack.pop() {
        if sum <= N {
            oracle.insert(sum, items.clone());
        }
        let i = items.len() as u64 + 1;
        for a in 0.. {
            let e = 2 * pair(a, i) + 1;
            if e > emax {
                break;
            }
            let s = sum + f[e as usize];
            if s <= N {
                let mut next = items.clone();
                next.push(a);
                stack.push((next, s));
            }
        }
    }
    for n in 0..=N {
        let c = SeqCode::from_number(Nat::from(n));
        let want = oracle.get(&n);
        ensure(is_code(&c) == want.is_some(), || format!("is_code disagrees at {n}"))?;
        let len = want.map_or(0, Vec::len);
        ensure(seqcode::len(&c) == len, || format!("len disagrees at {n}"))?;
        for i in 0..=len as u64 + 1 {
            let expect = match want {
                Some(items) if i >= 1 && i as usize <= items.len() => items[i as usize - 1],
                _ => 0,
            };
            ensure(symbol_at(&c, &Nat::from(i)) == Nat::from(expect), || format!("symbol_at({n},{i})"))?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let empty = SeqCode::from_number(Nat::from(0u32));
    for _ in 0..500 {
        let gen = |rng: &mut ChaCha8Rng| {
            let len = rng.random_range(0..=12);
            (0..len).map(|_| Nat::from(rng.random_range(0..=50u64))).collect::<Vec<_>>()
        };
        let (x, y) = (gen(&mut rng), gen(&mut rng));
        let (cx, cy) = (seq_encode(&x), seq_encode(&y));
        ensure(concat(&cx, &empty).ok().as_ref() == Some(&cx), || "concat(x, 0) != x".into())?;
        ensure(concat(&empty, &cx).ok().as_ref() == Some(&cx), || "concat(0, x) != x".into())?;
        let xy = concat(&cx, &cy).map_err(|e| e.to_string())?;
        ensure(seqcode::len(&xy) == x.len() + y.len(), || "length not additive".into())?;
        let mut joined = x.clone();
        joined.extend(y);
        ensure(seq_decode(&xy).ok() == Some(joined), || "concat contents".into())?;
    }
    Ok(format!("{} codes <= 1e5 match brute force; 500 concat pairs", oracle.len()))
}

fn binds(f: &Formula, v: u64) -> bool {
    f.subformulas().iter().any(|g| matches!(g, Formula::Forall(x, _) | Formula::Exists(x, _) if *x == v))
}

fn ac4() -> Check {
    let a = Alphabet::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let cfg = GenConfig::default();
    let mut done = 0;
    let mut rejected = 0;
    while done < 500 {
        let size = rng.random_range(3..=30);
        let phi = formula_of_size(&mut rng, size, &cfg);
        if binds(&phi, 0) {
            // symbol-level splicing into a binder slot is not a wff
            rejected += 1;
            continue;
        }
        let tsize = rng.random_range(1..=8);
        let t = term_of_size(&mut rng, tsize, &cfg);
        let req = SubRequest::new(encode_formula(&phi, &a), encode_term(&t, &a));
        let out = sub_z(&req, &a).map_err(|e| e.to_string())?;
        ensure(is_code(&out), || format!("not a code: {phi} [{t}]"))?;
        ensure(is_wff_code(&out, &a), || format!("not a wff: {phi} [{t}]"))?;
        let mut spliced = Vec::new();
        for s in phi.symbols() {
            if s == Symbol::Var(0) {
                spliced.extend(t.symbols());
            } else {
                spliced.push(s);
            }
        }
        ensure(out == encode_symbols(&spliced, &a), || format!("splice oracle: {phi} [{t}]"))?;
        ensure(out == encode_formula(&phi.substitute_free(0, &t), &a), || format!("AST oracle: {phi} [{t}]"))?;
        done += 1;
    }
    Ok(format!("500 substitutions valid and equal to both oracles ({rejected} formulas binding v0 skipped)"))
}

fn ac5() -> Check {
    let a = Alphabet::default();
    let mut notes = Vec::new();
    for text in ["(= v0 v0)", "(not (Prov v0))"] {
        let phi = parse_formula_text(text).map_err(|e| e.to_string())?;
        let fp = fixed_point(&encode_formula(&phi, &a), &a).map_err(|e| e.to_string())?;
        let d = diag(&fp.m, &a).map_err(|e| e.to_string())?;
        ensure(fp.psi.support().indices() == d.support().indices(), || format!("{text}: psi != diag(m)"))?;
        // independent: psi = phi[v0 := diagfn(numeral m)] built on the tree
        let m = fp.m.to_number().map_err(|e| e.to_string())?;
        let tree = phi.substitute_free(0, &Term::diag(numeral(&m)));
        ensure(encode_formula(&tree, &a) == fp.psi, || format!("{text}: AST oracle disagrees"))?;
        let top = fp.psi.max_index().cloned().unwrap_or_default();
        notes.push(format!("{text}: {} support entries, max index {top}", fp.psi.support().len()));
    }
    Ok(notes.join("; "))
}

fn ac6() -> Check {
    let a = Alphabet::default();
    let t = TheoryConfig::default();
    let p = |s: &str| parse_formula_text(s).map_err(|e| e.to_string());
    let x = p("(-> (= 0 0) (-> (= (S 0) (S 0)) (= 0 0)))")?;
    let c = p("(Prov (S 0))")?;
    let target = Formula::imp(c.clone(), x.clone());
    let steps = vec![x.clone(), Formula::imp(x.clone(), target.clone()), target.clone()];
    let code = encode_proof(&steps, &a).map_err(|e| e.to_string())?;
    ensure(check_proof(&code, &t, &a), || "hand-built proof rejected".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let items = seq_decode(&code).map_err(|e| e.to_string())?;
    let mut decode_errors = 0;
    for k in 0..100 {
        let step = rng.random_range(0..items.len());
        let mut syms = seq_decode(&SeqCode::from_number(items[step].clone())).map_err(|e| e.to_string())?;
        let pos = rng.random_range(0..syms.len());
        let old = syms[pos].clone();
        let new = loop {
            let v = Nat::from(rng.random_range(1..=a.offset() + 4));
            if v != old {
                break v;
            }
        };
        syms[pos] = new;
        let mut mutated = items.clone();
        mutated[step] = seq_encode(&syms).to_number().map_err(|e| e.to_string())?;
        let mc = seq_encode(&mutated);
        if decode_proof(&mc, &a).is_err() {
            decode_errors += 1;
        } else {
            ensure(!check_proof(&mc, &t, &a), || format!("mutation {k} accepted"))?;
        }
    }

    let target_code = encode_formula(&target, &a);
    let found = prov_bounded(&target_code, 3, &t, &a).map_err(|e| e.to_string())?.ok_or("no proof at bound 3")?;
    ensure(check_proof(&found, &t, &a), || "witness does not re-validate".into())?;
    let found_steps = decode_proof(&found, &a).map_err(|e| e.to_string())?;
    ensure(found_steps.len() == 3 && found_steps[2] == target, || "witness is not a 3-step chain".into())?;
    let proof = justify(&found_steps, &t).ok_or("witness has no justification")?;
    ensure(
        proof.steps.iter().enumerate().all(|(i, s)| match s.justification {
            zeckgodel::logic::Justification::ModusPonens { minor, major } => minor < i && major < i,
            _ => true,
        }),
        || "premise index not earlier".into(),
    )?;
    ensure(prov_bounded_formula(&target, 2, &t, &a).is_none(), || "proof below bound 3".into())?;
    for b in 3..=6 {
        ensure(prov_bounded_formula(&target, b, &t, &a).is_some(), || format!("not monotone at {b}"))?;
    }
    Ok(format!("3-step MP proof valid; 100 mutations rejected ({decode_errors} at decode); search finds it at bound 3"))
}

fn ac7() -> Check {
    for n in 2..=1000u64 {
        let w = mp_witness(n).map_err(|e| e.to_string())?;
        ensure(oracle_check(&w), || format!("identity fails at {n}"))?;
    }
    let table = fib_table_big(1100);
    let index_of: HashMap<&BigUint, u64> = table.iter().enumerate().skip(1).map(|(i, v)| (v, i as u64)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut hits = 0;
    for _ in 0..1000 {
        let (n, m) = (rng.random_range(1..=500u64), rng.random_range(1..=500u64));
        let sum = &table[n as usize] + (&table[m as usize] << 1u32);
        let want = index_of.get(&sum).copied();
        let got = oracle_solve(n, m).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("solve({n},{m}) = {got:?}, oracle {want:?}"))?;
        let bound = max_fib_index_le(&sum).map_err(|e| e.to_string())? + 1;
        let sat: Vec<u64> =
            (1..=bound).filter(|&k| oracle_check(&OracleTriple::new(n, m, k).unwrap())).collect();
        ensure(sat.len() <= 1, || format!("multiple k for ({n},{m})"))?;
        ensure(sat.first().copied() == got, || format!("solver and checker disagree at ({n},{m})"))?;
        hits += got.is_some() as u32;
    }
    Ok(format!("identity n in 2..=1000; 1000 random solves sound and unique ({hits} solvable)"))
}

fn ac8() -> Check {
    let a = Alphabet::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let sentence = formula_of_size(&mut rng, 50, &GenConfig::default());
    ensure(sentence.symbol_len() == 50, || "generator size".into())?;
    let seq = a.codes(&sentence.symbols());
    ensure(seq.iter().all(|v| *v <= Nat::from(20u32)), || "symbol values above 20".into())?;
    let report = compare_sizes(&seq, &a).map_err(|e| e.to_string())?;
    ensure(report.zeck_bits < ZECK_BITS_BOUND, || format!("zeck_bits {}", report.zeck_bits))?;
    let prime_bits = code_p(&seq).map_err(|e| e.to_string())?.bits();
    ensure(prime_bits == report.prime_bits, || "prime bits".into())?;

    // ¬…¬(0 = 0) with m symbols: values stay in 1..8 as m grows
    let mut bits = Vec::new();
    for m in [10usize, 20, 40, 80] {
        let mut f = parse_formula_text("(= 0 0)").unwrap();
        for _ in 0..m - 3 {
            f = Formula::not(f);
        }
        let c = encode_formula(&f, &a);
        bits.push(c.to_number().map_err(|e| e.to_string())?.bits());
    }
    let ratios: Vec<f64> = bits.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    ensure(ratios.iter().all(|r| (GROWTH_RATIO_BAND.0..=GROWTH_RATIO_BAND.1).contains(r)), || {
        format!("growth ratios {ratios:?} outside {GROWTH_RATIO_BAND:?}")
    })?;
    Ok(format!(
        "50-symbol sentence: zeck {} bits (< {ZECK_BITS_BOUND}), prime {} bits (not bounded); \
         growth bits {bits:?}, ratios {:.2?}",
        report.zeck_bits, report.prime_bits, ratios
    ))
}

fn ac9(ac5_ok: bool, ac6_ok: bool) -> Check {
    let a = Alphabet::default();
    let fp = godel_sentence(&TheoryConfig::default(), &a).map_err(|e| e.to_string())?;
    ensure(fp.psi == diag(&fp.m, &a).map_err(|e| e.to_string())?, || "G != diag(m)".into())?;
    let g = decode_formula(&fp.psi, &a).map_err(|e| e.to_string())?;
    let m = fp.m.to_number().map_err(|e| e.to_string())?;
    ensure(g == Formula::not(Formula::prov(Term::diag(numeral(&m)))), || "G has the wrong shape".into())?;
    ensure(ac5_ok && ac6_ok, || "depends on criteria 5 and 6".into())?;
    Ok(format!(
        "metatheorem not executable; substituted by 5 + 6: G built ({} symbols), code identity holds",
        seqcode::len(&fp.psi)
    ))
}

fn report(id: u32, name: &str, limit: Duration, start: Instant, result: Check) -> bool {
    let elapsed = start.elapsed();
    let result = result.and_then(|msg| {
        if elapsed <= limit {
            Ok(msg)
        } else {
            Err(format!("took {elapsed:.2?}, limit {limit:?}"))
        }
    });
    match result {
        Ok(msg) => {
            println!("[PASS] AC{id} {name} ({elapsed:.2?} / {limit:?}): {msg}");
            true
        }
        Err(msg) => {
            println!("[FAIL] AC{id} {name} ({elapsed:.2?} / {limit:?}): {msg}");
            false
        }
    }
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Duration, fn() -> Check);
    let criteria: [Criterion; 8] = [
        (1, "Zeckendorf correctness", AC1_LIMIT, ac1),
        (2, "pairing and sequence coding", AC2_LIMIT, ac2),
        (3, "predicate suite", AC3_LIMIT, ac3),
        (4, "substitution validity", AC4_LIMIT, ac4),
        (5, "fixed point", AC5_LIMIT, ac5),
        (6, "proof checking", AC6_LIMIT, ac6),
        (7, "verification oracle", AC7_LIMIT, ac7),
        (8, "size comparison", AC8_LIMIT, ac8),
    ];
    let mut passed: HashSet<u32> = HashSet::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        if report(id, name, limit, start, f()) {
            passed.insert(id);
        }
    }
    let start = Instant::now();
    let ac9_result = ac9(passed.contains(&5), passed.contains(&6));
    if report(9, "incompleteness at desk scale", AC9_LIMIT, start, ac9_result) {
        passed.insert(9);
    }
    let failures = 9 - passed.len();
    if failures == 0 {
        println!("acceptance: 9/9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
