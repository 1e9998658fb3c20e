//! `galois-span`: command-line front end for the exact cover computations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use galois_span::cover::random_connected_voltage;
use galois_span::family::{
    factor, index_grid, kappa_polynomial, lemma_matrix_check, nonexistence_certificate, FamilySpec,
};
use galois_span::group::parse_group;
use galois_span::lfunction::{abelian_reps, h_at_one, h_poly, verify_factorization, verify_prop_formula, MatrixRep};
use galois_span::poset::{cyclic_poset, describe_subgroup, kernel_poset, subgroup_lattice};
use galois_span::theorems::{
    artin_brauer_relation, check_table1, mobius_brauer_relation, random_suite, verify_brauer_kuroda,
    verify_custom_relation, verify_euler_zero, verify_hmsv, verify_kuroda, RowStatus,
};
use galois_span::{CharacterTable, Cover, FiniteGroup, Poset, SerreGraph, Subgroup, VerificationReport, VoltageAssignment};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "galois-span", version, about = "Exact spanning-tree formulas for Galois covers of graphs")]
struct Cli {
    /// Worker threads for independent subtasks (output order is unaffected).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Poset(PosetCmd),
    #[command(subcommand)]
    Cover(CoverCmd),
    #[command(subcommand)]
    Lfun(LfunCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Runs the main identities on seeded random covers.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        iters: usize,
    },
}

#[derive(Args)]
struct BaseArg {
    /// Graph file, or one of `bouquet:N`, `cycle:N`, `path:N`, `complete:N`.
    #[arg(long)]
    base: String,
}

#[derive(Args)]
struct CoverArgs {
    #[command(flatten)]
    base: BaseArg,
    /// Group specification; checked against the voltage file when both are given.
    #[arg(long)]
    group: Option<String>,
    /// Voltage file. Without it, voltages are sampled from `--seed`.
    #[arg(long)]
    voltage: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Vertex and edge counts, Euler characteristic and κ.
    Kappa(BaseArg),
    /// The Ihara polynomial h_X(u) and the Hashimoto identity.
    Zeta(BaseArg),
    Dot {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Character table and the two Table 1 flags.
    Info { spec: String },
    /// Recomputes every row of the bundled table.
    Table1,
    Subgroups { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetKind {
    /// Kernels of irreducible characters with a bottom adjoined.
    Kernel,
    /// Cyclic subgroups with a top adjoined.
    Cyclic,
    /// Full subgroup lattice.
    All,
}

#[derive(Args)]
struct PosetArgs {
    spec: String,
    #[arg(long, value_enum, default_value = "cyclic")]
    kind: PosetKind,
}

#[derive(Subcommand)]
enum PosetCmd {
    Hasse {
        #[command(flatten)]
        args: PosetArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Mobius(PosetArgs),
}

#[derive(Subcommand)]
enum CoverCmd {
    Build {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    Kappa(CoverArgs),
    /// κ(X_H) for every subgroup, or for `--subgroup` only.
    Intermediates {
        #[command(flatten)]
        cover: CoverArgs,
        /// Generators separated by `;`, e.g. `(1,2);(1,2,3)`.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// DOT of the cover, or of X_H with `--subgroup`.
    Dot {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LfunCmd {
    /// h(u, ρ) for a representation file, or for every linear character.
    H {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    VerifyProp(CoverArgs),
    VerifyFactor(CoverArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    Kuroda(CoverArgs),
    BrauerKuroda(CoverArgs),
    Hmsv(CoverArgs),
    /// A Brauer relation from `--relation`, or the built-in ones.
    Relation {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        relation: Option<PathBuf>,
    },
    EulerZero(CoverArgs),
}

#[derive(Args)]
struct PrimeArgs {
    /// Distinct primes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<u32>,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Degree in t of κ for every quotient of the family.
    Degree {
        #[command(flatten)]
        ps: PrimeArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
    },
    DetM(PrimeArgs),
    Nonexistence {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Deserialize)]
struct RelationEntry {
    subgroup: Vec<String>,
    coeff: i64,
}

/// What a command produced: JSON to print and whether its check held.
struct Outcome {
    value: Value,
    passed: bool,
}

impl Outcome {
    fn info(value: Value) -> Self {
        Outcome { value, passed: true }
    }

    fn report(r: &VerificationReport) -> Result<Self> {
        Ok(Outcome {
            value: serde_json::to_value(r)?,
            passed: r.passed,
        })
    }
}

fn load_base(arg: &BaseArg) -> Result<SerreGraph> {
    let builtin = |s: &str| -> Option<Result<SerreGraph>> {
        let (kind, n) = s.split_once(':')?;
        let n: usize = n.parse().ok()?;
        Some(match kind {
            "bouquet" => Ok(SerreGraph::bouquet(n)),
            "cycle" => Ok(SerreGraph::cycle(n)),
            "path" => Ok(SerreGraph::path(n)),
            "complete" => Ok(SerreGraph::complete(n)),
            _ => return None,
        })
    };
    if !Path::new(&arg.base).exists() {
        if let Some(g) = builtin(&arg.base) {
            return g;
        }
    }
    SerreGraph::load(&arg.base).with_context(|| format!("reading graph {}", arg.base))
}

fn build_cover(args: &CoverArgs) -> Result<Cover> {
    let base = load_base(&args.base)?;
    let alpha = match &args.voltage {
        Some(path) => {
            let a = VoltageAssignment::load(base, path).with_context(|| format!("reading voltages {}", path.display()))?;
            if let Some(spec) = &args.group {
                let g = parse_group(spec)?;
                if g.order() != a.group().order() || g.cayley_table() != a.group().cayley_table() {
                    bail!("--group {spec} does not match the voltage file group {}", a.group().name());
                }
            }
            a
        }
        None => {
            let spec = args.group.as_deref().ok_or_else(|| anyhow!("need --voltage or --group"))?;
            random_connected_voltage(&base, &parse_group(spec)?, args.seed)?
        }
    };
    Ok(alpha.derive())
}

fn parse_subgroup(g: &FiniteGroup, gens: &str) -> Result<Subgroup> {
    let ids = gens
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| g.element_by_label(s))
        .collect::<galois_span::Result<Vec<_>>>()?;
    Ok(g.generated_subgroup(&ids)?)
}

fn subgroup_json(g: &FiniteGroup, h: &Subgroup) -> Value {
    json!({
        "subgroup": describe_subgroup(g, h),
        "order": h.order(),
        "index": h.index(),
        "normal": g.is_normal(h),
        "elements": g.subgroup_labels(h),
    })
}

fn poset_of(args: &PosetArgs) -> Result<Poset> {
    let g = parse_group(&args.spec)?;
    Ok(match args.kind {
        PosetKind::Kernel => kernel_poset(&g, &CharacterTable::new(&g)?).poset().clone(),
        PosetKind::Cyclic => cyclic_poset(&g).poset().clone(),
        PosetKind::All => subgroup_lattice(&g, &g.all_subgroups()?),
    })
}

fn emit_dot(text: &str, path: Option<&Path>) -> Result<Option<String>> {
    match path {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(text.to_string())),
    }
}

fn graph_summary(x: &SerreGraph) -> Result<Value> {
    Ok(json!({
        "vertices": x.vertex_count(),
        "edges": x.edge_count() / 2,
        "euler_characteristic": x.euler_characteristic().to_string(),
        "kappa": x.spanning_tree_count()?.to_string(),
    }))
}

fn run_graph(cmd: GraphCmd) -> Result<Outcome> {
    match cmd {
        GraphCmd::Kappa(b) => Ok(Outcome::info(graph_summary(&load_base(&b)?)?)),
        GraphCmd::Zeta(b) => {
            let x = load_base(&b)?;
            let h = x.ihara_h_poly()?;
            let r = x.hashimoto_check()?;
            Ok(Outcome {
                value: json!({
                    "h": h.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    "hashimoto": r,
                }),
                passed: r.passed,
            })
        }
        GraphCmd::Dot { base, dot } => {
            let x = load_base(&base)?;
            let text = x.to_dot("X");
            Ok(Outcome::info(json!({ "dot": emit_dot(&text, dot.as_deref())? })))
        }
    }
}

fn run_group(cmd: GroupCmd) -> Result<Outcome> {
    match cmd {
        GroupCmd::Info { spec } => {
            let g = parse_group(&spec)?;
            let ct = CharacterTable::new(&g)?;
            let row = galois_span::theorems::table1_row_of(&g)?;
            Ok(Outcome::info(json!({
                "name": g.name(),
                "order": g.order(),
                "abelian": g.is_abelian(),
                "cyclic": g.is_cyclic(),
                "irreducibly_represented": row.irreducibly_represented,
                "exceptional": row.exceptional,
                "character_table": ct.to_json(),
            })))
        }
        GroupCmd::Table1 => {
            let rows = check_table1();
            let mismatches: Vec<&str> = rows
                .iter()
                .filter(|r| r.status == RowStatus::Mismatch)
                .map(|r| r.entry.name.as_str())
                .collect();
            Ok(Outcome {
                passed: mismatches.is_empty(),
                value: json!({ "mismatches": mismatches, "rows": rows }),
            })
        }
        GroupCmd::Subgroups { spec } => {
            let g = parse_group(&spec)?;
            let subs = g.all_subgroups()?;
            let cyclic = g.cyclic_subgroups();
            let list: Vec<Value> = subs
                .iter()
                .map(|h| {
                    let mut v = subgroup_json(&g, h);
                    v["cyclic"] = json!(cyclic.contains(h));
                    v
                })
                .collect();
            Ok(Outcome::info(json!({ "group": g.name(), "subgroups": list })))
        }
    }
}

fn run_poset(cmd: PosetCmd) -> Result<Outcome> {
    match cmd {
        PosetCmd::Hasse { args, dot } => {
            let p = poset_of(&args)?;
            let covers: Vec<[&str; 2]> = p.covers().iter().map(|&(x, y)| [p.label(x), p.label(y)]).collect();
            let text = p.hasse_dot(&args.spec);
            Ok(Outcome::info(json!({
                "elements": p.labels(),
                "covers": covers,
                "dot": emit_dot(&text, dot.as_deref())?,
            })))
        }
        PosetCmd::Mobius(args) => {
            let p = poset_of(&args)?;
            Ok(Outcome::info(json!({ "elements": p.labels(), "mobius": p.mobius().entries(&p) })))
        }
    }
}

fn run_cover(cmd: CoverCmd) -> Result<Outcome> {
    match cmd {
        CoverCmd::Build { cover, dot } => {
            let c = build_cover(&cover)?;
            let mut v = c.to_json();
            if let Some(path) = dot {
                emit_dot(&c.derived().to_dot("Y"), Some(&path))?;
            }
            v["galois"] = json!(c.is_galois());
            Ok(Outcome::info(v))
        }
        CoverCmd::Kappa(cover) => {
            let c = build_cover(&cover)?;
            Ok(Outcome::info(json!({
                "group": c.group().name(),
                "kappa_x": c.base().spanning_tree_count()?.to_string(),
                "kappa_y": c.kappa()?.to_string(),
            })))
        }
        CoverCmd::Intermediates { cover, subgroup } => {
            let c = build_cover(&cover)?;
            let g = c.group();
            let subs = match subgroup {
                Some(s) => vec![parse_subgroup(g, &s)?],
                None => g.all_subgroups()?,
            };
            let kappas = c.intermediate_kappas(&subs)?;
            let list: Vec<Value> = subs
                .iter()
                .zip(kappas)
                .map(|(h, k)| {
                    let mut v = subgroup_json(g, h);
                    v["kappa"] = json!(k.to_string());
                    v
                })
                .collect();
            Ok(Outcome::info(json!({ "group": g.name(), "intermediates": list })))
        }
        CoverCmd::Dot { cover, subgroup, dot } => {
            let c = build_cover(&cover)?;
            let text = match subgroup {
                Some(s) => {
                    let h = parse_subgroup(c.group(), &s)?;
                    c.intermediate_graph(&h)?.graph().to_dot("X_H")
                }
                None => c.derived().to_dot("Y"),
            };
            Ok(Outcome::info(json!({ "dot": emit_dot(&text, dot.as_deref())? })))
        }
    }
}

fn h_json(c: &Cover, rho: &MatrixRep) -> Result<Value> {
    let h = h_poly(c, rho)?;
    Ok(json!({
        "degree": rho.degree(),
        "h": h.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "h_at_1": h_at_one(c, rho)?.to_string(),
    }))
}

fn run_lfun(cmd: LfunCmd) -> Result<Outcome> {
    match cmd {
        LfunCmd::H { cover, rep } => {
            let c = build_cover(&cover)?;
            let reps = match rep {
                Some(path) => vec![MatrixRep::load(&path).with_context(|| format!("reading {}", path.display()))?],
                None => abelian_reps(c.group())?,
            };
            let list = reps.iter().map(|r| h_json(&c, r)).collect::<Result<Vec<_>>>()?;
            Ok(Outcome::info(json!({ "group": c.group().name(), "representations": list })))
        }
        LfunCmd::VerifyProp(cover) => Outcome::report(&verify_prop_formula(&build_cover(&cover)?)?),
        LfunCmd::VerifyFactor(cover) => Outcome::report(&verify_factorization(&build_cover(&cover)?)?),
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<Outcome> {
    match cmd {
        VerifyCmd::Kuroda(c) => Outcome::report(&verify_kuroda(&build_cover(&c)?)?),
        VerifyCmd::BrauerKuroda(c) => Outcome::report(&verify_brauer_kuroda(&build_cover(&c)?)?),
        VerifyCmd::Hmsv(c) => Outcome::report(&verify_hmsv(&build_cover(&c)?)?),
        VerifyCmd::EulerZero(c) => Outcome::report(&verify_euler_zero(&build_cover(&c)?)?),
        VerifyCmd::Relation { cover, relation } => {
            let c = build_cover(&cover)?;
            let g = c.group();
            let relations = match relation {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let entries: Vec<RelationEntry> = serde_json::from_str(&text)?;
                    let rel = entries
                        .iter()
                        .map(|e| Ok((parse_subgroup(g, &e.subgroup.join(";"))?, BigInt::from(e.coeff))))
                        .collect::<Result<Vec<_>>>()?;
                    vec![("file", rel)]
                }
                None => vec![
                    ("mobius", mobius_brauer_relation(g)),
                    ("artin", artin_brauer_relation(&CharacterTable::new(g)?)?),
                ],
            };
            let reports = relations
                .into_iter()
                .map(|(name, rel)| {
                    let r = verify_custom_relation(&c, &rel)?;
                    Ok(json!({
                        "relation": name,
                        "coefficients": rel.iter().map(|(h, n)| json!({
                            "subgroup": describe_subgroup(g, h),
                            "coeff": n.to_string(),
                        })).collect::<Vec<_>>(),
                        "report": r,
                    }))
                })
                .collect::<Result<Vec<Value>>>()?;
            let passed = reports.iter().all(|r| r["report"]["passed"] == json!(true));
            Ok(Outcome {
                value: json!({ "group": g.name(), "relations": reports }),
                passed,
            })
        }
    }
}

fn run_family(cmd: FamilyCmd) -> Result<Outcome> {
    match cmd {
        FamilyCmd::Degree { ps, b } => {
            let f = FamilySpec::new(ps.p, ps.s.clone(), b)?;
            let mut rows = Vec::new();
            let mut passed = true;
            for a in index_grid(&ps.s).into_iter().filter(|a| a.iter().any(|&x| x > 0)) {
                let expected = f.degree_formula(&a)?;
                let poly = kappa_polynomial(&f, &a)?;
                let found = poly.degree().unwrap_or(0) as u64;
                passed &= found == expected;
                rows.push(json!({
                    "a": a,
                    "formula": expected.to_string(),
                    "interpolated": found.to_string(),
                    "kappa": poly.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                }));
            }
            Ok(Outcome {
                value: json!({ "family": f, "degrees": rows, "passed": passed }),
                passed,
            })
        }
        FamilyCmd::DetM(ps) => {
            let c = lemma_matrix_check(&ps.p, &ps.s)?;
            Ok(Outcome {
                passed: c.nonzero && c.magnitude_matches,
                value: serde_json::to_value(&c)?,
            })
        }
        FamilyCmd::Nonexistence { n } => {
            let cert = nonexistence_certificate(n)?;
            let (p, s) = factor(n);
            Ok(Outcome {
                passed: cert.passed(),
                value: json!({ "primes": p, "exponents": s, "certificate": cert }),
            })
        }
    }
}

fn selftest(seed: u64, iters: usize) -> Result<Outcome> {
    let groups = ["C2xC2", "C2xC4", "C6", "S3", "D4", "Q8", "A4", "Dic3", "C3xC3"]
        .iter()
        .map(|s| parse_group(s))
        .collect::<galois_span::Result<Vec<_>>>()?;
    let bases = [SerreGraph::bouquet(2), SerreGraph::bouquet(3)];
    let summary = random_suite(seed, iters, &groups, &bases);
    Ok(Outcome {
        passed: summary.failures == 0,
        value: serde_json::to_value(&summary)?,
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Graph(c) => run_graph(c),
        Command::Group(c) => run_group(c),
        Command::Poset(c) => run_poset(c),
        Command::Cover(c) => run_cover(c),
        Command::Lfun(c) => run_lfun(c),
        Command::Verify(c) => run_verify(c),
        Command::Family(c) => run_family(c),
        Command::Selftest { seed, iters } => selftest(seed, iters),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&outcome.value).expect("values serialize") + "\n";
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text) {
                eprintln!("error: writing {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
