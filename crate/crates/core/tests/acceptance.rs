//! Acceptance run: one line per criterion. A criterion whose literal
//! statement cannot hold is printed as a known discrepancy; the corrected
//! content is still checked, and only an unexpected failure makes the run
//! exit nonzero.

use galois_span::character::{verify_eq3, CharacterTable};
use galois_span::cover::{Cover, VoltageAssignment};
use galois_span::family::{
    family_kappa, kappa_degree_in_t, lemma_matrix_check, nonexistence_certificate, FamilySpec,
};
use galois_span::group::{parse_group, FiniteGroup, Subgroup};
use galois_span::lfunction::{verify_factorization, verify_inter_rel, verify_prop_formula};
use galois_span::poset::{mobius_inversion_check, summations, Poset};
use galois_span::report::Status;
use galois_span::theorems::{
    brauer_exponents, check_table1, kuroda_exponents, random_covers, table1_fixture, verify_brauer_kuroda,
    verify_euler_zero, verify_hmsv, verify_kuroda, RowStatus,
};
use galois_span::SerreGraph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

enum Outcome {
    Pass(String),
    Fail(String),
    /// The literal statement is false; the corrected statement holds.
    Known(String),
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn k(n: u64) -> BigInt {
    BigInt::from(n)
}

fn sub(g: &FiniteGroup, labels: &[&str]) -> Subgroup {
    let e: Vec<usize> = labels.iter().map(|l| g.element_by_label(l).unwrap()).collect();
    g.generated_subgroup(&e).unwrap()
}

fn kappa_of(c: &Cover, h: &Subgroup) -> Result<BigInt, String> {
    c.intermediate_graph(h).and_then(|x| x.kappa()).map_err(err)
}

fn passes(r: &galois_span::VerificationReport) -> bool {
    r.passed && matches!(r.status, Status::Pass | Status::TriviallyTrue)
}

fn c1_figure2() -> Check {
    let g = parse_group("C2xC6").map_err(err)?;
    let c = VoltageAssignment::from_labels(SerreGraph::bouquet(2), g.clone(), &["(1,0)", "(0,1)"])
        .map_err(err)?
        .derive();
    let hs = [
        sub(&g, &["(1,0)"]),
        sub(&g, &["(1,3)"]),
        sub(&g, &["(0,3)"]),
        sub(&g, &["(1,0)", "(0,3)"]),
    ];
    let ks: Vec<BigInt> = hs.iter().map(|h| kappa_of(&c, h)).collect::<Result<_, _>>()?;
    let ky = c.kappa().map_err(err)?;
    ensure(ks == [k(6), k(300), k(294), k(3)], || format!("kappas {ks:?}"))?;
    ensure(ky == k(117600), || format!("kappa(Y) = {ky}"))?;
    let reduced = BigRational::new(BigInt::from(2) * &ks[0] * &ks[1] * &ks[2], &ks[3] * &ks[3]);
    ensure(reduced == BigRational::from_integer(ky.clone()), || format!("reduced formula gives {reduced}"))?;
    let r = verify_kuroda(&c).map_err(err)?;
    ensure(r.passed && r.status == Status::Pass, || format!("kuroda: {} vs {}", r.left, r.right))?;
    Ok("kappa = 6, 300, 294, 3; kappa(Y) = 117600 = 2*6*300*294/3^2; kuroda passes".into())
}

fn c2_s3() -> Outcome {
    let run = || -> Result<(BigInt, BigInt), String> {
        let g = parse_group("S3").map_err(err)?;
        let c = VoltageAssignment::from_labels(SerreGraph::bouquet(2), g.clone(), &["(1,2)", "(1,2,3)"])
            .map_err(err)?
            .derive();
        let k2 = kappa_of(&c, &sub(&g, &["(1,2)"]))?;
        let k5 = kappa_of(&c, &sub(&g, &["(1,2,3)"]))?;
        let kx = c.base().spanning_tree_count().map_err(err)?;
        let ky = c.kappa().map_err(err)?;
        ensure(kx == k(1) && ky == k(294), || format!("kappa(X) = {kx}, kappa(Y) = {ky}"))?;
        let r = verify_brauer_kuroda(&c).map_err(err)?;
        ensure(r.passed, || format!("brauer-kuroda: {} vs {}", r.left, r.right))?;
        // Solving the cyclic-subgroup formula for kappa(Y) gives 3 k2^2 k5 / kx^2.
        let solved = BigRational::new(BigInt::from(3) * &k2 * &k2 * &k5, &kx * &kx);
        ensure(solved == BigRational::from_integer(ky), || format!("3 k2^2 k5 / k^2 = {solved}"))?;
        Ok((k2, k5))
    };
    match run() {
        Err(e) => Outcome::Fail(e),
        Ok((k2, k5)) if k2 == k(2) && k5 == k(7) => Outcome::Pass("kappa(X2)=2, kappa(X5)=7, 3*2*49 = 294".into()),
        Ok((k2, k5)) => {
            let printed = BigInt::from(3) * &k2 * &k5 * &k5;
            Outcome::Known(format!(
                "computed kappa(X2)={k2}, kappa(X5)={k5} (X5 has 2 vertices and 4 edges, so kappa <= 4); \
                 printed form 3*k2*k5^2 gives {printed}; corrected 3*k2^2*k5/k^2 = 294 and kappa(X)=1, \
                 kappa(Y)=294, brauer-kuroda pass"
            ))
        }
    }
}

fn c3_q8() -> Check {
    let g = FiniteGroup::quaternion();
    let bases: Vec<SerreGraph> = (2..=4).map(SerreGraph::bouquet).collect();
    let covers = random_covers(3, 20, std::slice::from_ref(&g), &bases).map_err(err)?;
    let (c2, c3, c4, c5) = (sub(&g, &["-1"]), sub(&g, &["i"]), sub(&g, &["j"]), sub(&g, &["k"]));
    ensure(
        brauer_exponents(&g).iter().all(|(c, _)| c.order() > 1),
        || "trivial subgroup has nonzero exponent".into(),
    )?;
    for c in &covers {
        let kx = c.base().spanning_tree_count().map_err(err)?;
        let left = kappa_of(c, &c2)? * &kx * &kx;
        let right = BigInt::from(2) * kappa_of(c, &c3)? * kappa_of(c, &c4)? * kappa_of(c, &c5)?;
        ensure(left == right, || format!("{left} != {right}"))?;
        let r = verify_brauer_kuroda(c).map_err(err)?;
        ensure(r.passed, || "brauer-kuroda failed".into())?;
    }
    Ok(format!("{} covers, kappa(Y) absent from the product", covers.len()))
}

fn corpus() -> Result<Vec<Cover>, String> {
    let groups: Vec<FiniteGroup> = ["C2xC2", "C2xC4", "C2xC6", "C3xC3", "S3", "D4", "Q8", "A4", "Dic3"]
        .iter()
        .map(|s| parse_group(s))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let bases = vec![SerreGraph::bouquet(2), SerreGraph::bouquet(3)];
    random_covers(2024, 50, &groups, &bases).map_err(err)
}

fn c4_main1(covers: &[Cover]) -> Check {
    let mut trivial = 0;
    for c in covers {
        let r = verify_kuroda(c).map_err(err)?;
        ensure(passes(&r), || format!("{}: {} != {}", c.group().name(), r.left, r.right))?;
        trivial += usize::from(r.status == Status::TriviallyTrue);
    }
    Ok(format!("{}/{} pass ({trivial} trivially)", covers.len(), covers.len()))
}

fn c5_main2(covers: &[Cover]) -> Check {
    for c in covers {
        let r = verify_brauer_kuroda(c).map_err(err)?;
        ensure(passes(&r), || format!("{}: {} != {}", c.group().name(), r.left, r.right))?;
    }
    Ok(format!("{}/{} pass", covers.len(), covers.len()))
}

/// `κ(Y)` solved from the kernel formula and from the cyclic formula.
fn solved_kappa_y(c: &Cover) -> Result<(BigRational, BigRational), String> {
    let g = c.group();
    let order = BigRational::from_integer(BigInt::from(g.order()));
    let base = |h: &Subgroup| -> Result<BigRational, String> {
        Ok(BigRational::from_integer(BigInt::from(g.index(h)) * kappa_of(c, h)?))
    };
    let ct = CharacterTable::new(g).map_err(err)?;
    let mut main1 = BigRational::one() / &order;
    for (h, e) in kuroda_exponents(&ct) {
        let b = base(&h)?;
        let e = e.to_integer();
        let p: i32 = e.try_into().map_err(|_| "exponent".to_string())?;
        main1 *= num_traits::Pow::pow(&b, p);
    }
    // (|G| κ(Y))^{-e_1 |G|} = ∏_{C ≠ 1} base^{e_C |G|} / κ(X)^{|G|}
    let kx = BigRational::from_integer(c.base().spanning_tree_count().map_err(err)?);
    let n = g.order() as i32;
    let mut rhs = num_traits::Pow::pow(&kx, -n);
    let mut root = 0i32;
    for (h, e) in brauer_exponents(g) {
        let scaled: i32 = (e * BigRational::from_integer(n.into())).to_integer().try_into().unwrap();
        if h.order() == 1 {
            root = -scaled;
        } else {
            rhs *= num_traits::Pow::pow(&base(&h)?, scaled);
        }
    }
    ensure(root > 0, || "kappa(Y) does not appear".into())?;
    let num = rhs.numer().nth_root(root as u32);
    let den = rhs.denom().nth_root(root as u32);
    let exact = num_traits::pow(num.clone(), root as usize) == *rhs.numer()
        && num_traits::pow(den.clone(), root as usize) == *rhs.denom();
    ensure(exact, || format!("{rhs} is not a {root}-th power"))?;
    Ok((main1, BigRational::new(num, den) / order))
}

fn c6_hmsv() -> Check {
    let bases = vec![SerreGraph::bouquet(2), SerreGraph::bouquet(3)];
    for (m, seed) in [(2u32, 6u64), (3, 7)] {
        let g = parse_group(&format!("C2^{m}")).map_err(err)?;
        let covers = random_covers(seed, 10, std::slice::from_ref(&g), &bases).map_err(err)?;
        for c in &covers {
            let r = verify_hmsv(c).map_err(err)?;
            ensure(r.passed && r.status == Status::Pass, || format!("hmsv m={m}: {} != {}", r.left, r.right))?;
            let ky = BigRational::from_integer(c.kappa().map_err(err)?);
            let (a, b) = solved_kappa_y(c)?;
            ensure(a == ky && b == ky, || format!("m={m}: main1 gives {a}, main2 gives {b}, kappa(Y) = {ky}"))?;
        }
    }
    Ok("m = 2, 3: 10 covers each; hmsv, kernel and cyclic routes all give kappa(Y)".into())
}

const TABLE1_MINIMUM: &[&str] = &[
    "C2^2", "C2^3", "C2xC4", "C2xC6", "C3^2", "C4^2", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12", "Q8",
    "Q16", "Dic3", "Dic5", "Dic6", "S3", "S4", "A4", "C2xA4", "C3xS3",
];

fn c7_table1() -> Outcome {
    let rows = check_table1();
    let matched = rows.iter().filter(|r| r.status == RowStatus::Match).count();
    let unsupported = rows.iter().filter(|r| r.status == RowStatus::Unsupported).count();
    let mismatched: Vec<_> = rows.iter().filter(|r| r.status == RowStatus::Mismatch).collect();
    let names: Vec<&str> = rows.iter().map(|r| r.entry.name.as_str()).collect();
    let missing: Vec<&&str> = TABLE1_MINIMUM.iter().filter(|n| !names.contains(n)).collect();
    let cyclic = (1..=24).all(|n| names.contains(&format!("C{n}").as_str()));
    if !missing.is_empty() || !cyclic {
        return Outcome::Fail(format!("fixture lacks {missing:?}"));
    }
    let summary = format!("{matched}/{} rows match, {unsupported} unsupported", rows.len());
    match mismatched.as_slice() {
        [] => Outcome::Pass(summary),
        [only] if only.entry.name == "C1" => Outcome::Known(format!(
            "{summary}; C1: table lists it as exceptional, but for the trivial group mu({{1}},inf) = -1 != 0"
        )),
        _ => Outcome::Fail(format!(
            "{summary}; mismatches: {:?}",
            mismatched.iter().map(|r| &r.entry.name).collect::<Vec<_>>()
        )),
    }
}

fn c8_eq3() -> Check {
    let specs: Vec<String> = table1_fixture().into_iter().filter_map(|e| e.spec).collect();
    let mut irreducibles = 0;
    for s in &specs {
        let g = parse_group(s).map_err(err)?;
        let ct = CharacterTable::new(&g).map_err(err)?;
        irreducibles += ct.characters().len() - 1;
        let r = verify_eq3(&ct).map_err(err)?;
        ensure(r.passed, || format!("{s}: {:?}", r.notes))?;
    }
    Ok(format!("{} groups, {irreducibles} nontrivial irreducibles", specs.len()))
}

fn c9_degree() -> Check {
    let cases: [(&[u64], &[u32], &[u32]); 4] = [
        (&[2], &[2], &[1]),
        (&[2], &[3], &[2]),
        (&[3], &[2], &[1]),
        (&[2, 3], &[1, 1], &[0, 1]),
    ];
    let mut checked = 0;
    for (p, s, b) in cases {
        let f = FamilySpec::new(p.to_vec(), s.to_vec(), b.to_vec()).map_err(err)?;
        for a in galois_span::family::index_grid(s).into_iter().filter(|a| a.iter().any(|&x| x > 0)) {
            let d = kappa_degree_in_t(&f, &a).map_err(err)?;
            ensure(d as u64 == f.degree_formula(&a).map_err(err)?, || format!("{p:?} {s:?} {b:?} a={a:?}"))?;
            checked += 1;
        }
    }
    let f = FamilySpec::new(vec![2], vec![2], vec![1]).map_err(err)?;
    for t in 0..=5u64 {
        let kt = family_kappa(&f, t as usize).map_err(err)?;
        ensure(kt == k((2 + 4 * t) * (2 + 4 * t)), || format!("t={t}: {kt}"))?;
    }
    Ok(format!("{checked} (family, a) degrees match; (2+4t)^2 for t <= 5"))
}

fn c10_lemma_matrix() -> Check {
    let cases: [(&[u64], &[u32]); 5] = [(&[2], &[1]), (&[2], &[2]), (&[3], &[1]), (&[2, 3], &[1, 1]), (&[2], &[3])];
    let mut signs = Vec::new();
    for (p, s) in cases {
        let c = lemma_matrix_check(p, s).map_err(err)?;
        ensure(c.nonzero && c.magnitude_matches && c.report.passed, || format!("{p:?} {s:?}: det {}", c.det))?;
        if !c.sign_matches_paper {
            signs.push(format!("p={p:?} s={s:?}: det {} vs printed {}", c.det, c.stated));
        }
    }
    ensure(
        signs.iter().any(|s| s.starts_with("p=[2] s=[2]: det -1/4 vs printed 1/4")),
        || "expected sign discrepancy at (2),(2) not seen".into(),
    )?;
    Ok(format!("det != 0 and |det| exact for all 5; sign differs: {}", signs.join("; ")))
}

fn c11_certificates() -> Check {
    let mut dims = Vec::new();
    for n in [2u64, 3, 4, 6, 12, 30] {
        let c = nonexistence_certificate(n).map_err(err)?;
        ensure(c.passed(), || format!("n={n}: rank {}", c.rank))?;
        dims.push(format!("{n}:{}", c.rank));
    }
    Ok(format!("full rank ({}), only the trivial relation survives", dims.join(" ")))
}

fn c12_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    // (a)
    for i in 0..200 {
        let v = rng.gen_range(1..=6);
        let e = rng.gen_range(v - 1..=9);
        let x = SerreGraph::random_connected(i, v, e).map_err(err)?;
        let fast = x.spanning_tree_count().map_err(err)?;
        let slow = x.brute_force_spanning_trees().map_err(err)?;
        ensure(fast == BigInt::from(slow), || format!("graph {i}: {fast} vs {slow}"))?;
    }
    // (b)
    for i in 0..100 {
        let v = rng.gen_range(1..=7);
        let e = rng.gen_range(v.max(2) - 1..=12);
        let x = SerreGraph::random_connected(1000 + i, v, e).map_err(err)?;
        ensure(x.hashimoto_check().map_err(err)?.passed, || format!("hashimoto on graph {i}"))?;
    }
    // (c)
    for i in 0..100 {
        let n = rng.gen_range(1..=7);
        let p = Poset::random(i, n, 0.4);
        let f: Vec<BigRational> = (0..n).map(|_| BigRational::from_integer(rng.gen_range(-9..=9).into())).collect();
        let (up, down) = summations(&p, &f);
        ensure(
            mobius_inversion_check(&p, &f, &up) && mobius_inversion_check(&p, &f, &down),
            || format!("poset {i}"),
        )?;
    }
    // (d), (e)
    let groups: Vec<FiniteGroup> = ["C2", "C3", "C4", "C2xC2", "C5", "C6", "C2xC4", "C3xC3", "C2xC6", "C12", "C2^3", "C10"]
        .iter()
        .map(|s| parse_group(s))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let bases = vec![
        SerreGraph::bouquet(2),
        SerreGraph::build(2, &[(0, 1), (0, 1), (0, 1)]).map_err(err)?,
        SerreGraph::build(2, &[(0, 0), (0, 1), (1, 1)]).map_err(err)?,
        SerreGraph::bouquet(3),
    ];
    let covers = random_covers(1212, 20, &groups, &bases).map_err(err)?;
    let mut inter = 0;
    for c in &covers {
        ensure(verify_factorization(c).map_err(err)?.passed, || format!("factorization {}", c.group().name()))?;
        ensure(verify_prop_formula(c).map_err(err)?.passed, || format!("prop formula {}", c.group().name()))?;
        for h in c.group().all_subgroups().map_err(err)? {
            ensure(verify_inter_rel(c, &h).map_err(err)?.passed, || format!("inter-rel {}", c.group().name()))?;
            inter += 1;
        }
    }
    // (f)
    let mut zero = 0;
    for n in 1..=6usize {
        for order in 1..=6usize {
            let g = FiniteGroup::cyclic(order).map_err(err)?;
            let mut values = vec![0; n];
            values[0] = 1 % order;
            let c = VoltageAssignment::on_default_orientation(SerreGraph::cycle(n), g, &values)
                .map_err(err)?
                .derive();
            ensure(verify_euler_zero(&c).map_err(err)?.passed, || format!("cycle({n}) over C{order}"))?;
            zero += 1;
        }
    }
    Ok(format!(
        "200 matrix-tree, 100 hashimoto, 100 mobius, {} abelian covers ({inter} inter-rel), {zero} euler-zero",
        covers.len()
    ))
}

fn main() {
    let mut unexpected = 0;
    let mut line = |n: usize, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        let timing = if t <= limit {
            format!("{:.2}s", t.as_secs_f64())
        } else {
            format!("{:.2}s over the {}s limit", t.as_secs_f64(), limit.as_secs())
        };
        let (tag, msg) = match outcome {
            Outcome::Pass(m) if t <= limit => ("PASS", m),
            Outcome::Pass(m) => {
                unexpected += 1;
                ("FAIL", m)
            }
            Outcome::Fail(m) => {
                unexpected += 1;
                ("FAIL", m)
            }
            Outcome::Known(m) => ("FAIL (known discrepancy)", m),
        };
        println!("criterion {n:>2} [{tag}] {name} ({timing}): {msg}");
    };
    let check = |c: Check| match c {
        Ok(m) => Outcome::Pass(m),
        Err(m) => Outcome::Fail(m),
    };
    let secs = Duration::from_secs;
    line(1, "Z/2xZ/6 example", secs(5), &mut || check(c1_figure2()));
    line(2, "S3 example", secs(5), &mut c2_s3);
    line(3, "Q8 example", secs(60), &mut || check(c3_q8()));
    let covers = corpus();
    line(4, "kernel formula", secs(300), &mut || check(covers.clone().and_then(|c| c4_main1(&c))));
    line(5, "cyclic-subgroup formula", secs(300), &mut || {
        check(covers.clone().and_then(|c| c5_main2(&c)))
    });
    line(6, "(Z/2)^m special case", secs(120), &mut || check(c6_hmsv()));
    line(7, "Table 1 flags", secs(120), &mut c7_table1);
    line(8, "cyclic-subgroup identities", secs(120), &mut || check(c8_eq3()));
    line(9, "degree in t", secs(180), &mut || check(c9_degree()));
    line(10, "determinant of M", secs(30), &mut || check(c10_lemma_matrix()));
    line(11, "non-existence certificates", secs(60), &mut || check(c11_certificates()));
    line(12, "property suites", secs(300), &mut || check(c12_properties()));
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
