//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness and exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qforms::arith::{self, Place};
use qforms::classfield::{self, GUARD_DIGITS};
use qforms::classgroup::{self, ClassGroup};
use qforms::forms::{class_number, enumerate_reduced};
use qforms::isotropy::{self, HasseCertificate, Isotropy};
use qforms::represent::{self, MultipleSearch};
use qforms::{cli, Error, Form};

use common::*;

type Outcome = Result<String, String>;

/// Criterion number, check, time limit in seconds.
type Criterion = (u32, fn() -> Outcome, Option<u64>);

/// Residues mod `p^n` taken by a form, keyed by `(form, p, n)`.
type ResidueCache = HashMap<((i64, i64, i64), i64, u32), Vec<bool>>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: qforms::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli_forms(v: i64) -> Result<BTreeSet<(i64, i64, i64)>, String> {
    let d = v.to_string();
    let r = cli::run(["qf", "forms", "--disc", d.as_str()]);
    ensure(r.exit_code() == 0, format!("exit code {}", r.exit_code()))?;
    r.human
        .lines()
        .map(|l| {
            let c: Vec<i64> = l.split(',').map(|s| s.trim().parse().unwrap()).collect();
            Ok((c[0], c[1], c[2]))
        })
        .collect()
}

fn criterion1() -> Outcome {
    let got47 = cli_forms(-47)?;
    let want47: BTreeSet<_> = [(1, 1, 12), (2, 1, 6), (2, -1, 6), (3, 1, 4), (3, -1, 4)].into();
    ensure(got47 == want47, format!("-47 gave {got47:?}"))?;
    let got23 = cli_forms(-23)?;
    let want23: BTreeSet<_> = [(1, 1, 6), (2, 1, 3), (2, -1, 3)].into();
    ensure(got23 == want23, format!("-23 gave {got23:?}"))?;
    Ok("5 forms at -47, 3 at -23".into())
}

fn product(fs: &[&Form]) -> Result<Form, String> {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = lib(classgroup::compose(&acc, f))?;
    }
    Ok(acc)
}

fn criterion2() -> Outcome {
    let (q6, q7, q8) = (form(1, 1, 6), form(2, 1, 3), form(2, -1, 3));
    let rel23 = [
        (product(&[&q7, &q8])?, &q6),
        (product(&[&q8, &q8])?, &q7),
        (product(&[&q7, &q7])?, &q8),
    ];
    for (i, (got, want)) in rel23.iter().enumerate() {
        ensure(got == *want, format!("-23 relation {} gave {got}", i + 1))?;
    }
    let q1 = form(1, 1, 12);
    let q2 = form(2, 1, 6);
    let q3 = form(2, -1, 6);
    let q4 = form(3, 1, 4);
    let q5 = form(3, -1, 4);
    let rel47 = [
        (product(&[&q2, &q3, &q4, &q5])?, &q1),
        (product(&[&q2, &q3, &q4, &q4])?, &q2),
        (product(&[&q2, &q3, &q5, &q5])?, &q3),
        (product(&[&q4, &q5, &q3, &q3])?, &q4),
        (product(&[&q4, &q5, &q2, &q2])?, &q5),
    ];
    for (i, (got, want)) in rel47.iter().enumerate() {
        ensure(got == *want, format!("-47 relation {} gave {got}", i + 1))?;
    }
    Ok("3 relations at -23, 5 at -47".into())
}

fn witness_for(f: &Form, m: &BigInt) -> Result<(BigInt, BigInt), String> {
    let (x, y) = represent::represents(f, m).ok_or(format!("{f} does not represent {m}"))?;
    ensure(f.eval(&x, &y) == *m, format!("bad witness for {f}"))?;
    Ok((x, y))
}

fn criterion3() -> Outcome {
    let mut all = Vec::new();
    for (v, want) in [(-23, 6), (-47, 144)] {
        let w = lib(classgroup::odd_witness(&disc(v)))?;
        ensure(w == big(want), format!("odd_witness({v}) = {w}"))?;
        let forms = enumerate_reduced(&disc(v));
        for f in &forms {
            witness_for(f, &w)?;
            // independent of the library's search
            ensure(
                naive_represents(coeffs(f), want),
                format!("oracle: {f} misses {want}"),
            )?;
        }
        all.extend(forms);
    }
    let m = big(36 * 144 * 144);
    for f in &all {
        witness_for(f, &m)?;
    }
    Ok(format!(
        "6 and 144 verified; {m} represented by all {} forms",
        all.len()
    ))
}

fn criterion4() -> Outcome {
    let d = disc(-20);
    let v = lib(isotropy::trivial_intersection(&d))?;
    ensure(v.trivial, "trivial_intersection(-20) is not trivial")?;
    let cert = v.certificate.ok_or("no certificate")?;
    let group = lib(ClassGroup::new(&d))?;
    let [i, j] = cert.pair;
    let q = lib(isotropy::difference_form(
        &group.elements()[i],
        &group.elements()[j],
    ))?;
    let p = cert.prime.ok_or("certificate without prime")?;
    let hasse = lib(HasseCertificate::compute(&q, p))?;
    ensure(hasse.recheck(&q), "certificate does not recheck")?;
    ensure(cert.epsilon == Some(hasse.epsilon), "epsilon mismatch")?;
    let forms = [form(1, 0, 5), form(2, 2, 3)];
    let r = lib(represent::rep_set(&forms, 1_000_000))?;
    ensure(
        r.is_empty(),
        format!("rep_set not empty: {:?}", r.values.first()),
    )?;
    Ok(format!("anisotropic at p = {p}; rep_set to 10^6 empty"))
}

fn criterion5() -> Outcome {
    for (v, want) in [(-88, vec![2u64]), (-87, vec![6]), (-84, vec![2, 2])] {
        let g = lib(classgroup::group_structure(&disc(v)))?;
        ensure(
            g.invariant_factors() == want.as_slice(),
            format!("{v}: {:?}", g.invariant_factors()),
        )?;
    }
    Ok("[2], [6], [2,2]".into())
}

fn criterion6() -> Outcome {
    let p = lib(cli::capstone_prime(10_000))?.ok_or("no prime below 10^4")?;
    ensure(p == 659, format!("smallest prime is {p}"))?;
    // independent residue check of every smaller prime
    let residues = |p: i64| {
        ![2, 3, 7, 11, 29].contains(&p)
            && arith::kronecker_i64(p, 11) == -1
            && arith::kronecker_i64(p, 7) == 1
            && p % 8 == 3
            && p % 3 == 2
    };
    let d87 = disc(-87);
    for q in primes_below(659).into_iter().filter(|&q| residues(q)) {
        match classfield::splitting_count(q as u64, &d87) {
            Ok(r) => ensure(r.total != 2, format!("{q} already has total 2"))?,
            Err(Error::NonGenericPrime(..)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(residues(659), "659 fails the residue conditions")?;
    let mut parts = Vec::new();
    for b in [0, 1, -1, 2] {
        let f = form(2, b, 11);
        let (x, y) = witness_for(&f, &big(659))?;
        parts.push(format!("b={b}:({x},{y})"));
    }
    Ok(format!("659; {}", parts.join(" ")))
}

fn fundamental(lo: i64) -> Vec<i64> {
    discriminants(lo, -3)
        .into_iter()
        .filter(|&v| disc(v).is_fundamental())
        .collect()
}

fn criterion7() -> Outcome {
    let mut count = 0;
    for v in fundamental(-200).into_iter().rev() {
        let d = disc(v);
        let h = lib(classfield::hilbert_class_polynomial(&d))?;
        ensure(
            h.degree() == class_number(&d),
            format!("degree of H_{v} is {}", h.degree()),
        )?;
        ensure(
            h.coefficients.last() == Some(&big(1)),
            format!("H_{v} not monic"),
        )?;
        let fine = lib(classfield::hilbert_class_polynomial_with_guard(
            &d,
            GUARD_DIGITS + 20,
        ))?;
        ensure(
            fine.coefficients == h.coefficients,
            format!("H_{v} moved at +20 digits"),
        )?;
        if let Some(p) = &h.precision {
            ensure(p.residual < 1e-5, format!("H_{v} residual {}", p.residual))?;
        }
        count += 1;
    }
    let h4 = lib(classfield::hilbert_class_polynomial(&disc(-4)))?;
    ensure(
        h4.coefficients == vec![big(-1728), big(1)],
        "H_-4 != X - 1728",
    )?;
    Ok(format!(
        "{count} fundamental discriminants; H_-4 = X - 1728"
    ))
}

fn criterion8() -> Outcome {
    let mut parts = Vec::new();
    for v in [-23, -47, -87] {
        let poly = lib(classfield::hilbert_class_polynomial(&disc(v)))?;
        let (mut checked, mut excluded) = (0, 0);
        for p in arith::primes_in(2, 2000) {
            if ((-v) as u64).is_multiple_of(p) {
                continue;
            }
            match classfield::verify_theorem8_with(&poly, p) {
                Ok(c) if !c.report.generic => excluded += 1,
                Ok(c) => {
                    ensure(
                        c.holds,
                        format!("fails at p = {p}, Δ = {v}: {:?}", c.report),
                    )?;
                    if c.report.kronecker == 1 {
                        let r = &c.report;
                        ensure(r.f * r.g == r.class_number, format!("f*g != h at {p}"))?;
                    }
                    checked += 1;
                }
                Err(Error::NonGenericPrime(..)) => excluded += 1,
                Err(e) => return Err(format!("p = {p}, Δ = {v}: {e}")),
            }
        }
        parts.push(format!(
            "{v}: {checked} primes ({excluded} dividing disc H)"
        ));
    }
    Ok(parts.join("; "))
}

fn hilbert_suite() -> Result<usize, String> {
    let mut n = 0;
    for p in [2, 3, 5, 7] {
        for a in (-20..=20).filter(|&a| a != 0) {
            for b in (-20..=20).filter(|&b| b != 0) {
                let got = lib(arith::hilbert_symbol_int(
                    &big(a),
                    &big(b),
                    Place::Prime(p as u64),
                ))?;
                let want = hilbert_oracle(a, b, p);
                ensure(
                    got == want,
                    format!("({a},{b})_{p}: {got} vs oracle {want}"),
                )?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn isotropy_suite() -> Result<(usize, usize), String> {
    let (mut pairs, mut aniso) = (0, 0);
    for v in discriminants(-200, -15) {
        let group = lib(ClassGroup::new(&disc(v)))?;
        let forms = group.elements();
        let values: Vec<BTreeSet<i64>> = forms
            .iter()
            .map(|f| naive_values(coeffs(f), 10_000))
            .collect();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let q = lib(isotropy::difference_form(&forms[i], &forms[j]))?;
                let common = values[i].intersection(&values[j]).next().copied();
                match lib(isotropy::is_anisotropic(&q))? {
                    Isotropy::Anisotropic(cert) => {
                        aniso += 1;
                        ensure(
                            cert.recheck(&q),
                            format!("{v} ({i},{j}): certificate does not recheck"),
                        )?;
                        ensure(
                            common.is_none(),
                            format!("{v} ({i},{j}): anisotropic but both represent {common:?}"),
                        )?;
                    }
                    Isotropy::Isotropic([x, y, z, w]) => {
                        let (f, g) = (coeffs(&forms[i]), coeffs(&forms[j]));
                        let (l, r) = (eval(f, x, y), eval(g, z, w));
                        ensure(l == r && l != 0, format!("{v} ({i},{j}): bad witness"))?;
                    }
                }
                pairs += 1;
            }
        }
    }
    Ok((pairs, aniso))
}

/// Residues mod `q` taken by `f`, scanning every `(x, y)`.
fn residue_table(f: (i64, i64, i64), q: u64) -> Vec<bool> {
    let r = |c: i64| c.rem_euclid(q as i64) as u64;
    let (a, b, c) = (r(f.0), r(f.1), r(f.2));
    let sq: Vec<u64> = (0..q).map(|x| x * x % q).collect();
    let mut hit = vec![false; q as usize];
    for x in 0..q {
        let ax = a * sq[x as usize] % q;
        let bx = b * x % q;
        for y in 0..q {
            hit[((ax + bx * y + c * sq[y as usize]) % q) as usize] = true;
        }
    }
    hit
}

fn local_suite() -> Result<(usize, usize, usize), String> {
    const BUDGET: i64 = 1 << 24;
    let mut residues = ResidueCache::new();
    let (mut by_genus, mut by_modulus, mut skipped) = (0, 0, 0);
    for v in discriminants(-100, -3) {
        let group = lib(ClassGroup::new(&disc(v)))?;
        for f in group.elements() {
            let fc = coeffs(f);
            for m in 1..=300i64 {
                let report = lib(represent::locally_represented(f, &big(m)))?;
                let genus = genus_local_oracle(&group, f, m);
                ensure(
                    report.represented == genus,
                    format!(
                        "{f}, m = {m}: local {} vs genus {genus}",
                        report.represented
                    ),
                )?;
                by_genus += 1;
                for place in &report.places {
                    let Place::Prime(p) = place.place else {
                        continue;
                    };
                    let p = p as i64;
                    // solution mod p^n with n = v(m) + 2v(Δ) + 1 lifts to Z_p
                    let n = valuation(m, p) + 2 * valuation(v, p) + 1;
                    let q = match p.checked_pow(n) {
                        Some(q) if q * q <= BUDGET => q,
                        _ => {
                            skipped += 1;
                            continue;
                        }
                    };
                    let table = residues
                        .entry((fc, p, n))
                        .or_insert_with(|| residue_table(fc, q as u64));
                    let want = table[m.rem_euclid(q) as usize];
                    ensure(
                        place.represented == want,
                        format!(
                            "{f}, m = {m}, p = {p}: {} vs mod {q} {want}",
                            place.represented
                        ),
                    )?;
                    by_modulus += 1;
                }
            }
        }
    }
    Ok((by_genus, by_modulus, skipped))
}

fn criterion9() -> Outcome {
    let h = hilbert_suite()?;
    let (pairs, aniso) = isotropy_suite()?;
    let (genus, modular, skipped) = local_suite()?;
    Ok(format!(
        "{h} Hilbert symbols; {pairs} class pairs ({aniso} anisotropic); \
         {genus} local cases vs genus, {modular} places vs modular search ({skipped} over budget)"
    ))
}

fn fdt_agreement() -> Result<usize, String> {
    let mut n = 0;
    for v in fundamental(-500) {
        let d = disc(v);
        if class_number(&d) % 2 == 1 {
            continue;
        }
        let a = lib(isotropy::trivial_intersection(&d))?;
        let b = lib(isotropy::trivial_intersection_pairwise(&d))?;
        ensure(
            a.trivial && b.trivial,
            format!("{v}: branches {} / {}", a.trivial, b.trivial),
        )?;
        n += 1;
    }
    Ok(n)
}

fn np_propagation() -> Result<usize, String> {
    let sample: Vec<i64> = discriminants(-400, -3)
        .into_iter()
        .rev()
        .filter(|&v| {
            let h = class_number(&disc(v));
            h % 2 == 1 && h > 1
        })
        .take(20)
        .collect();
    let mut n = 0;
    for v in sample {
        let forms: Vec<_> = naive_reduced(v);
        let sets: Vec<_> = forms.iter().map(|&f| naive_values(f, 100 * 200)).collect();
        let int: Vec<i64> = (1..=100)
            .filter(|m| sets.iter().all(|s| s.contains(m)))
            .collect();
        for p in primes_below(200)
            .into_iter()
            .filter(|&p| p != 2 && v % p != 0)
        {
            if !lib(represent::prime_represented_by_some_form(
                &disc(v),
                p as u64,
            ))? {
                continue;
            }
            for &m in &int {
                let np = m * p;
                ensure(
                    sets.iter().all(|s| s.contains(&np)),
                    format!("{v}: {m}*{p} missed"),
                )?;
                n += 1;
            }
        }
    }
    ensure(n > 0, "no (n, p) pairs sampled")?;
    Ok(n)
}

fn odd_h_suites() -> Result<(usize, usize), String> {
    let mut bijections = 0;
    for v in discriminants(-400, -3) {
        let group = lib(ClassGroup::new(&disc(v)))?;
        let h = group.class_number();
        if h % 2 == 0 {
            continue;
        }
        let squares: BTreeSet<usize> = (0..h).map(|i| group.mul(i, i)).collect();
        ensure(squares.len() == h, format!("{v}: squaring is not onto"))?;
        bijections += 1;
    }
    let mut witnessed = 0;
    for v in fundamental(-500) {
        let d = disc(v);
        if class_number(&d).is_multiple_of(2) {
            continue;
        }
        let w = lib(classgroup::odd_witness(&d))?;
        // witnesses are checked by evaluation, so large values need no search oracle
        for f in enumerate_reduced(&d) {
            for t in [1u32, 2, 3] {
                witness_for(&f, &(&w * t * t))?;
            }
        }
        witnessed += 1;
    }
    Ok((bijections, witnessed))
}

fn is_square(n: i64) -> bool {
    isqrt(n) * isqrt(n) == n
}

fn check_multiple(forms: &[&Form], m: i64, s: MultipleSearch) -> Result<(), String> {
    match s {
        MultipleSearch::Found {
            k,
            value,
            witnesses,
        } => {
            let k = k as i64;
            ensure(
                !is_square(k) && !is_square(m * k),
                format!("m = {m}: k = {k} not admissible"),
            )?;
            ensure(value == big(m * k), "value != m*k")?;
            for (f, (x, y)) in forms.iter().zip(&witnesses) {
                ensure(f.eval(x, y) == value, format!("{f}: bad witness"))?;
            }
            Ok(())
        }
        MultipleSearch::BoundExhausted { .. } => Err(format!(
            "{:?}, m = {m}: no nonsquare multiple within 100",
            forms
        )),
    }
}

fn nonsquare_multiples() -> Result<(usize, usize), String> {
    let (mut single, mut joint) = (0, 0);
    for v in discriminants(-100, -3) {
        let forms = enumerate_reduced(&disc(v));
        for m in 1..=60i64 {
            let mb = big(m);
            let local: Vec<bool> = forms
                .iter()
                .map(|f| represent::locally_represented(f, &mb).map(|r| r.represented))
                .collect::<qforms::Result<_>>()
                .map_err(|e| e.to_string())?;
            for (i, f) in forms.iter().enumerate() {
                if !local[i] {
                    continue;
                }
                check_multiple(&[f], m, lib(represent::nonsquare_multiple(f, &mb, 100))?)?;
                single += 1;
                for (j, g) in forms.iter().enumerate().skip(i + 1) {
                    if local[j] {
                        let s = lib(represent::joint_nonsquare_multiple(f, g, &mb, 100))?;
                        check_multiple(&[f, g], m, s)?;
                        joint += 1;
                    }
                }
            }
        }
    }
    Ok((single, joint))
}

fn criterion10() -> Outcome {
    let fdt = fdt_agreement()?;
    let np = np_propagation()?;
    let (bij, wit) = odd_h_suites()?;
    let (single, joint) = nonsquare_multiples()?;
    Ok(format!(
        "FDT {fdt} discriminants; np {np} samples; squaring bijective on {bij} groups; \
         odd witnesses {wit}; multiples {single} single, {joint} joint"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, criterion1, Some(1)),
        (2, criterion2, Some(1)),
        (3, criterion3, Some(5)),
        (4, criterion4, Some(30)),
        (5, criterion5, None),
        (6, criterion6, Some(60)),
        (7, criterion7, None),
        (8, criterion8, Some(120)),
        (9, criterion9, None),
        (10, criterion10, None),
    ];
    let mut failed = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let late = limit.is_some_and(|s| elapsed > Duration::from_secs(s));
        let line = match (&outcome, late) {
            (Ok(d), false) => format!("PASS {d}"),
            (Ok(d), true) => format!("FAIL over {}s limit: {d}", limit.unwrap()),
            (Err(e), _) => format!("FAIL {e}"),
        };
        if outcome.is_err() || late {
            failed += 1;
        }
        println!("criterion {n}: {line} [{:.2}s]", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
