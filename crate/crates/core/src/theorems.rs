//! End-to-end checks of the spanning-tree product formulas. Every check
//! compares two big integers after negative and fractional exponents have
//! been cleared; nothing is evaluated approximately.

use crate::character::{is_exceptional, CharacterTable, ClassFunction};
use crate::cover::{conjugate_kappa_check, random_connected_voltage, Cover};
use crate::error::{Error, Result};
use crate::graph::SerreGraph;
use crate::group::{parse_group, FiniteGroup, Subgroup};
use crate::poset::{cyclic_poset, kernel_poset};
use crate::report::{FormulaTerm, VerificationReport};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A factor `base^exponent` with `base = [G:H]·κ(X_H)`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub subgroup: Subgroup,
    pub base: BigInt,
    pub kappa: BigInt,
    pub exponent: BigRational,
}

fn factors(cover: &Cover, weighted: Vec<(Subgroup, BigRational)>) -> Result<Vec<Factor>> {
    let g = cover.group();
    let subs: Vec<Subgroup> = weighted.iter().map(|(h, _)| h.clone()).collect();
    let kappas = cover.intermediate_kappas(&subs)?;
    Ok(weighted
        .into_iter()
        .zip(kappas)
        .map(|((h, e), k)| Factor {
            base: BigInt::from(g.index(&h)) * &k,
            subgroup: h,
            kappa: k,
            exponent: e,
        })
        .collect())
}

fn terms(g: &FiniteGroup, fs: &[Factor]) -> Vec<FormulaTerm> {
    fs.iter()
        .map(|f| FormulaTerm {
            subgroup: g.subgroup_labels(&f.subgroup),
            order: f.subgroup.order(),
            index: g.index(&f.subgroup),
            kappa: f.kappa.to_string(),
            exponent: f.exponent.to_string(),
        })
        .collect()
}

fn pow_big(b: &BigInt, e: &BigInt) -> Result<BigInt> {
    let e = e.to_u32().ok_or_else(|| Error::Internal(format!("exponent {e} out of range")))?;
    Ok(num_traits::pow(b.clone(), e as usize))
}

/// Compares `a^n = ∏ base^(n·exponent)` with negative powers moved across.
/// Returns the two cleared sides.
pub fn clear_exponents(a: &BigInt, fs: &[Factor], n: &BigInt) -> Result<(BigInt, BigInt)> {
    let mut left = pow_big(a, n)?;
    let mut right = BigInt::one();
    for f in fs {
        let e = &f.exponent * BigRational::from_integer(n.clone());
        if !e.is_integer() {
            return Err(Error::Internal(format!("multiplier {n} does not clear exponent {}", f.exponent)));
        }
        let e = e.to_integer();
        if e.is_negative() {
            left *= pow_big(&f.base, &-e)?;
        } else {
            right *= pow_big(&f.base, &e)?;
        }
    }
    Ok((left, right))
}

fn require_galois(cover: &Cover) -> Result<()> {
    if cover.is_galois() {
        Ok(())
    } else {
        Err(Error::NotGalois)
    }
}

/// `(H, -μ(∅,H))` over the kernels of irreducible characters.
pub fn kuroda_exponents(ct: &CharacterTable) -> Vec<(Subgroup, BigRational)> {
    let kp = kernel_poset(ct.group(), ct);
    kp.subgroups()
        .map(|(i, h)| (h.clone(), BigRational::from_integer(-kp.mu_extra(i).clone())))
        .filter(|(_, e)| !e.is_zero())
        .collect()
}

/// `(C, -μ(C,∞)/[G:C])` over the cyclic subgroups.
pub fn brauer_exponents(g: &FiniteGroup) -> Vec<(Subgroup, BigRational)> {
    let cp = cyclic_poset(g);
    cp.subgroups()
        .map(|(i, c)| {
            let e = BigRational::new(-cp.mu_extra(i).clone(), BigInt::from(g.index(c)));
            (c.clone(), e)
        })
        .filter(|(_, e)| !e.is_zero())
        .collect()
}

/// `κ(Y) = |G|⁻¹ ∏_{H ∈ ℋ_G} ([G:H] κ(X_H))^{-μ(∅,H)}`, checked as
/// `|G| κ(Y) ∏_{μ>0} (…)^μ = ∏_{μ<0} (…)^{-μ}`.
pub fn verify_kuroda(cover: &Cover) -> Result<VerificationReport> {
    require_galois(cover)?;
    let g = cover.group();
    let ct = CharacterTable::new(g)?;
    let kappa_y = cover.kappa()?;
    let claim = "kappa(Y) = |G|^-1 prod ([G:H] kappa(X_H))^-mu(0,H)";
    if ct.is_irreducibly_represented() {
        return Ok(VerificationReport::compare(claim, g.name(), &kappa_y, &kappa_y)
            .trivially_true()
            .with_note("group has a faithful irreducible character"));
    }
    let fs = factors(cover, kuroda_exponents(&ct))?;
    let a = BigInt::from(g.order()) * &kappa_y;
    let (left, right) = clear_exponents(&a, &fs, &BigInt::one())?;
    Ok(VerificationReport::compare(claim, g.name(), left, right)
        .with_terms(terms(g, &fs))
        .with_note(format!("kappa(Y) = {kappa_y}")))
}

/// `κ(X) = ∏_{C ∈ 𝒞_G} ([G:C] κ(X_C))^{-μ(C,∞)/[G:C]}`, raised to the power
/// `|G|` and, separately, to the lcm of the indices; both must agree.
pub fn verify_brauer_kuroda(cover: &Cover) -> Result<VerificationReport> {
    require_galois(cover)?;
    let g = cover.group();
    let kappa_x = cover.base().spanning_tree_count()?;
    let claim = "kappa(X) = prod ([G:C] kappa(X_C))^(-mu(C,inf)/[G:C])";
    if g.is_cyclic() {
        return Ok(VerificationReport::compare(claim, g.name(), &kappa_x, &kappa_x)
            .trivially_true()
            .with_note("cyclic group: the formula reads kappa(X) = kappa(X)"));
    }
    let fs = factors(cover, brauer_exponents(g))?;
    let order = BigInt::from(g.order());
    let lcm = fs
        .iter()
        .fold(BigInt::one(), |acc, f| acc.lcm(f.exponent.denom()));
    let (left, right) = clear_exponents(&kappa_x, &fs, &order)?;
    let (l2, r2) = clear_exponents(&kappa_x, &fs, &lcm)?;
    let mut report = VerificationReport::compare(format!("{claim}, to the power |G|"), g.name(), left, right)
        .with_terms(terms(g, &fs));
    if l2 != r2 {
        report = VerificationReport::compare(format!("{claim}, to the power {lcm}"), g.name(), l2, r2)
            .with_terms(terms(g, &fs));
    }
    if is_exceptional(g) {
        report = report.with_note("exceptional group: kappa(Y) does not appear");
    }
    Ok(report)
}

fn elementary_two_rank(g: &FiniteGroup) -> Option<u32> {
    let n = g.order();
    let ok = n > 1 && n.is_power_of_two() && g.is_abelian() && g.exponent() <= 2;
    ok.then(|| n.trailing_zeros())
}

/// `κ(Y) κ(X)^{2^m-2} = 2^{2^m-m-1} ∏ κ(X_i)` over the index-two subgroups
/// of `G = (Z/2)^m`.
pub fn verify_hmsv(cover: &Cover) -> Result<VerificationReport> {
    require_galois(cover)?;
    let g = cover.group();
    let m = elementary_two_rank(g).ok_or_else(|| Error::WrongGroup(format!("{} is not (Z/2)^m", g.name())))?;
    let hs: Vec<Subgroup> = g.all_subgroups()?.into_iter().filter(|h| g.index(h) == 2).collect();
    let kappas = cover.intermediate_kappas(&hs)?;
    let kx = cover.base().spanning_tree_count()?;
    let ky = cover.kappa()?;
    let big = 1usize << m;
    let left = &ky * num_traits::pow(kx, big - 2);
    let right = kappas.iter().fold(num_traits::pow(BigInt::from(2), big - m as usize - 1), |acc, k| acc * k);
    let report = VerificationReport::compare(
        "kappa(Y) kappa(X)^(2^m-2) = 2^(2^m-m-1) prod kappa(X_i)",
        format!("{} (m = {m})", g.name()),
        left,
        right,
    );
    Ok(if m == 1 {
        report.trivially_true().with_note("m = 1: the only index-two subgroup is trivial")
    } else {
        report
    })
}

/// Checks `Σ n_H Ind_H^G(1) = 0` exactly.
pub fn is_brauer_relation(ct: &CharacterTable, coeffs: &[(Subgroup, BigInt)]) -> bool {
    let zero = ClassFunction::new(vec![BigRational::zero(); ct.classes().len()]);
    let sum = coeffs.iter().fold(zero, |acc, (h, n)| {
        acc.add(&ct.induced_trivial_character(h).scale(&BigRational::from_integer(n.clone())))
    });
    sum.values().iter().all(Zero::is_zero)
}

/// `∏ ([G:H] κ(X_H))^{n_H} = 1` for a Brauer relation `(n_H)`.
pub fn verify_custom_relation(cover: &Cover, coeffs: &[(Subgroup, BigInt)]) -> Result<VerificationReport> {
    require_galois(cover)?;
    let g = cover.group();
    let ct = CharacterTable::new(g)?;
    if !is_brauer_relation(&ct, coeffs) {
        return Err(Error::NotABrauerRelation);
    }
    let claim = "prod ([G:H] kappa(X_H))^n_H = 1";
    let weighted: Vec<(Subgroup, BigRational)> = coeffs
        .iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(h, n)| (h.clone(), BigRational::from_integer(n.clone())))
        .collect();
    if weighted.is_empty() {
        return Ok(VerificationReport::compare(claim, g.name(), 1, 1).trivially_true());
    }
    let fs = factors(cover, weighted)?;
    let (left, right) = clear_exponents(&BigInt::one(), &fs, &BigInt::one())?;
    Ok(VerificationReport::compare(claim, g.name(), left, right).with_terms(terms(g, &fs)))
}

fn merge(mut coeffs: Vec<(Subgroup, BigInt)>) -> Vec<(Subgroup, BigInt)> {
    coeffs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Subgroup, BigInt)> = Vec::new();
    for (h, n) in coeffs {
        match out.last_mut() {
            Some((k, m)) if *k == h => *m += n,
            _ => out.push((h, n)),
        }
    }
    out.retain(|(_, n)| !n.is_zero());
    out
}

/// The relation `Σ_C -μ(C,∞)|C| Ind_C(1) - |G| Ind_G(1) = 0` behind the
/// cyclic-subgroup formula.
pub fn mobius_brauer_relation(g: &FiniteGroup) -> Vec<(Subgroup, BigInt)> {
    let cp = cyclic_poset(g);
    let mut coeffs: Vec<(Subgroup, BigInt)> = cp
        .subgroups()
        .map(|(i, c)| (c.clone(), -cp.mu_extra(i).clone() * BigInt::from(c.order())))
        .collect();
    coeffs.push((g.whole(), -BigInt::from(g.order())));
    merge(coeffs)
}

/// Artin's expression of the trivial character through cyclic subgroups,
/// scaled to integers, minus the matching multiple of `Ind_G(1)`.
pub fn artin_brauer_relation(ct: &CharacterTable) -> Result<Vec<(Subgroup, BigInt)>> {
    let coeffs = ct.artin_coefficients(&ct.trivial_class_function())?;
    let d = coeffs.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = BigRational::from_integer(d.clone());
    let mut out: Vec<(Subgroup, BigInt)> =
        coeffs.into_iter().map(|(h, c)| (h, (c * &scale).to_integer())).collect();
    out.push((ct.group().whole(), -d));
    Ok(merge(out))
}

/// `κ(Y) = |G| κ(X)` when `χ(X) = 0`, where `G` must be cyclic.
pub fn verify_euler_zero(cover: &Cover) -> Result<VerificationReport> {
    if cover.base().euler_characteristic() != 0 {
        return Err(Error::InvalidGraph("Euler characteristic is not zero".into()));
    }
    require_galois(cover)?;
    let g = cover.group();
    if !g.is_cyclic() {
        return Err(Error::NonCyclicOnEulerZero);
    }
    let left = cover.kappa()?;
    let right = BigInt::from(g.order()) * cover.base().spanning_tree_count()?;
    Ok(VerificationReport::compare("kappa(Y) = |G| kappa(X)", g.name(), left, right))
}

/// A row of the order ≤ 24 reference table. The printed table has columns
/// "not irreducibly represented" and "not exceptional"; the fixture stores
/// the positive flags, so a printed ✓ becomes `false` here.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Entry {
    pub order: usize,
    pub name: String,
    /// `None` when the group has no constructible specification.
    pub spec: Option<String>,
    /// The two printed marks, kept verbatim.
    pub printed: String,
    pub irreducibly_represented: bool,
    pub exceptional: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub irreducibly_represented: bool,
    pub exceptional: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    Mismatch,
    Unsupported,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Comparison {
    pub entry: Table1Entry,
    pub computed: Option<Table1Row>,
    pub computed_order: Option<usize>,
    pub status: RowStatus,
}

const TABLE1: &str = include_str!("../data/table1.json");

pub fn table1_fixture() -> Vec<Table1Entry> {
    serde_json::from_str(TABLE1).expect("bundled table is valid JSON")
}

/// Both flags computed from scratch.
pub fn table1_row(spec: &str) -> Result<Table1Row> {
    let g = parse_group(spec)?;
    table1_row_of(&g)
}

pub fn table1_row_of(g: &FiniteGroup) -> Result<Table1Row> {
    Ok(Table1Row {
        irreducibly_represented: CharacterTable::new(g)?.is_irreducibly_represented(),
        exceptional: is_exceptional(g),
    })
}

/// Compares every fixture row with a fresh computation.
pub fn check_table1() -> Vec<Table1Comparison> {
    table1_fixture()
        .into_par_iter()
        .map(|entry| {
            let Some(spec) = entry.spec.as_deref() else {
                return Table1Comparison {
                    entry,
                    computed: None,
                    computed_order: None,
                    status: RowStatus::Unsupported,
                };
            };
            let (computed, order) = match parse_group(spec) {
                Ok(g) => (table1_row_of(&g).ok(), Some(g.order())),
                Err(_) => (None, None),
            };
            let status = match computed {
                None => RowStatus::Unsupported,
                Some(r)
                    if order == Some(entry.order)
                        && r.irreducibly_represented == entry.irreducibly_represented
                        && r.exceptional == entry.exceptional =>
                {
                    RowStatus::Match
                }
                Some(_) => RowStatus::Mismatch,
            };
            Table1Comparison {
                entry,
                computed,
                computed_order: order,
                status,
            }
        })
        .collect()
}

/// Seed for iteration `i` of a run seeded with `seed`.
pub fn iteration_seed(seed: u64, i: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng.gen()
}

/// `count` seeded random connected covers; iteration `i` picks its group,
/// base and voltages from [`iteration_seed`].
pub fn random_covers(seed: u64, count: usize, groups: &[FiniteGroup], bases: &[SerreGraph]) -> Result<Vec<Cover>> {
    if groups.is_empty() || bases.is_empty() {
        return Ok(Vec::new());
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(iteration_seed(seed, i));
            let g = &groups[rng.gen_range(0..groups.len())];
            let start = rng.gen_range(0..bases.len());
            let vseed: u64 = rng.gen();
            // A base of too small a rank cannot carry a connected cover of
            // `g`; fall through to the next base in that case.
            let mut last = None;
            for j in 0..bases.len() {
                match random_connected_voltage(&bases[(start + j) % bases.len()], g, vseed) {
                    Ok(v) => return Ok(v.derive()),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("at least one base"))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub iterations: usize,
    pub checks: usize,
    pub failures: usize,
    pub reports: Vec<VerificationReport>,
}

fn run_checks(cover: &Cover) -> Vec<VerificationReport> {
    let inputs = format!("{} on {} vertices", cover.group().name(), cover.base().vertex_count());
    let as_report = |claim: &str, r: Result<VerificationReport>| {
        r.unwrap_or_else(|e| VerificationReport::boolean(claim, inputs.clone(), false).with_note(e.to_string()))
    };
    vec![
        as_report("kuroda", verify_kuroda(cover)),
        as_report("brauer-kuroda", verify_brauer_kuroda(cover)),
        as_report("conjugate kappas", conjugate_kappa_check(cover)),
        as_report("hashimoto", cover.derived().hashimoto_check()),
    ]
}

/// Runs the main checks on seeded random covers. Failures, including
/// errors, are recorded as failing reports rather than returned.
pub fn random_suite(seed: u64, iterations: usize, groups: &[FiniteGroup], bases: &[SerreGraph]) -> SuiteSummary {
    let covers = random_covers(seed, iterations, groups, bases);
    let reports: Vec<VerificationReport> = match covers {
        Ok(cs) => cs.par_iter().flat_map_iter(run_checks).collect(),
        Err(e) => vec![VerificationReport::boolean("build covers", format!("seed {seed}"), false).with_note(e.to_string())],
    };
    SuiteSummary {
        seed,
        iterations: if groups.is_empty() || bases.is_empty() { 0 } else { iterations },
        checks: reports.len(),
        failures: reports.iter().filter(|r| !r.passed).count(),
        reports,
    }
}
