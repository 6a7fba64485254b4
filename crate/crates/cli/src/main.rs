use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use equivar::boxnorm::norm_mackey;
use equivar::burnside::{BElem, BurnsideSystem};
use equivar::groups::{dihedral_inclusion, reflection_inclusion, FiniteGroup, GroupHom, SubId, DEFAULT_GROUP_BUDGET};
use equivar::gsets::{coinduce_orbits, table_of_marks, GSet, DEFAULT_COINDUCTION_BUDGET};
use equivar::hr::{burnside_quotient, DiscreteEsigmaRing, HrComplex, MAX_BAR_DEGREE};
use equivar::mackey::{group_json, mackey_iso, Mackey, MackeyMorphism};
use equivar::suite::{self, Check, SuiteConfig};
use equivar::tambara::{verify_reciprocity, Reciprocity};
use equivar::witt::{self, GhostOracle, WittTower};

#[derive(Parser)]
#[command(name = "equivar", version, about = "Exact computations with Burnside rings, Mackey and Tambara functors")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Worker threads for the parallel suites.
    #[arg(long, global = true, env = "EQUIVAR_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Largest group order whose subgroup lattice may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_BUDGET)]
    max_order: usize,
    /// Largest coinduced G-set that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_COINDUCTION_BUDGET)]
    budget: u128,
    /// Largest bar degree of the dihedral bar complex.
    #[arg(long, global = true, default_value_t = MAX_BAR_DEGREE)]
    max_degree: usize,
    /// Output format; each verb has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table of marks over subgroup class representatives.
    Marks {
        #[arg(long)]
        group: String,
    },
    /// Burnside ring arithmetic.
    Burnside {
        #[command(subcommand)]
        op: BurnsideOp,
    },
    /// Orbit decomposition of Map^H(G, T).
    Coinduce {
        #[arg(long)]
        group: String,
        #[arg(long)]
        sub: String,
        /// Points of a trivial H-set.
        #[arg(long, value_delimiter = ',', conflicts_with = "cosets")]
        labels: Vec<String>,
        /// Use the H-set H/K instead, for a subgroup K of H.
        #[arg(long)]
        cosets: Option<String>,
    },
    /// Norm of a Mackey functor from a reflection subgroup D2.
    Norm {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "D2")]
        from: String,
        #[arg(long, default_value = "constZ")]
        functor: String,
        #[arg(long, value_enum)]
        compare: Option<Compare>,
    },
    /// The reciprocity formula for N_H^G(a + b).
    Reciprocity {
        #[arg(long)]
        group: String,
        #[arg(long)]
        sub: String,
        #[arg(long, conflicts_with = "json")]
        latex: bool,
        #[arg(long)]
        json: bool,
        /// Compare against direct norms on random pairs.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
    /// HR_0 of a discrete ring over D_2m.
    Hr0 {
        #[arg(long, default_value = "constZ")]
        ring: String,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        compare: Option<Compare>,
    },
    /// Homology of the dihedral bar complex.
    Hr {
        #[command(subcommand)]
        op: HrOp,
    },
    /// The p-typical dihedral Witt tower.
    Witt {
        #[arg(long, default_value = "constZ")]
        ring: String,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        #[arg(long)]
        coinvariants: bool,
        /// Also check the ghost formulas.
        #[arg(long)]
        ghost: bool,
    },
    /// Run a regression suite.
    Check {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Run only checks with these ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
}

#[derive(Subcommand)]
enum BurnsideOp {
    /// Product of two elements at one level.
    Mul {
        #[arg(long)]
        group: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "G")]
        level: String,
    },
    /// Restriction from one level to a smaller one.
    Res {
        #[arg(long)]
        group: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        x: String,
    },
    /// Additive transfer to a larger level.
    Tr {
        #[arg(long)]
        group: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        x: String,
    },
    /// Multiplicative transfer to a larger level.
    Norm {
        #[arg(long)]
        group: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        x: String,
        /// Recompute by enumerating the coinduced set.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum HrOp {
    Homology {
        #[arg(long, default_value = "constZ")]
        ring: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Compare {
    BurnsideQuotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    PaperSuite,
    Criteria,
    Regressions,
}

/// Bad input, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// Turns library parse errors into usage errors.
fn parsed<T>(r: equivar::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        equivar::Error::Parse(m) => usage(m),
        e => e.into(),
    })
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { json, text, ok: true }
    }
}

fn parse_group(text: &str, opts: &Opts) -> anyhow::Result<Arc<FiniteGroup>> {
    let (kind, n) = text.split_once(':').ok_or_else(|| usage(format!("group '{text}' should look like dihedral:<order>")))?;
    let n: u32 = n.trim().parse().map_err(|_| usage(format!("bad group size in '{text}'")))?;
    let g = match kind.trim() {
        "dihedral" | "D" => {
            if n < 2 || !n.is_multiple_of(2) {
                return Err(usage(format!("dihedral groups have even order, got {n}")));
            }
            FiniteGroup::dihedral(n / 2)
        }
        "cyclic" | "C" if n >= 1 => FiniteGroup::cyclic(n),
        "symmetric" | "S" if (1..=5).contains(&n) => FiniteGroup::symmetric(n as usize),
        "alternating" | "A" if (1..=5).contains(&n) => FiniteGroup::alternating(n as usize),
        _ => return Err(usage(format!("unknown group '{text}'; expected dihedral:<order>, cyclic:<n>, symmetric:<k> or alternating:<k>"))),
    };
    g.try_lattice(opts.max_order)?;
    Ok(Arc::new(g))
}

fn sub(g: &FiniteGroup, name: &str) -> anyhow::Result<SubId> {
    parsed(g.parse_sub(name))
}

fn ring(name: &str) -> anyhow::Result<DiscreteEsigmaRing> {
    parsed(DiscreteEsigmaRing::parse(name))
}

fn odd_m(m: u32) -> anyhow::Result<u32> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(usage(format!("--m must be odd, got {m}")));
    }
    Ok(m)
}

fn belem_json(sys: &BurnsideSystem, k: SubId, x: &BElem) -> Value {
    let g = &sys.group;
    let b = sys.level(k);
    let terms: Vec<Value> = b.classes.iter().zip(x).map(|(&j, &c)| json!({"orbit": g.sub_name(j), "coefficient": c.to_string()})).collect();
    json!({"level": g.sub_name(k), "terms": terms, "text": sys.format(k, x)})
}

fn marks(group: &str, opts: &Opts) -> anyhow::Result<Report> {
    let g = parse_group(group, opts)?;
    let reps = g.class_reps();
    let names: Vec<String> = reps.iter().map(|&h| g.sub_name(h)).collect();
    let table = table_of_marks(&g);
    let width = names.iter().map(|s| s.len()).max().unwrap_or(1).max(4);
    let mut text = format!("{:width$} {}\n", "", names.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join(" "));
    for (name, row) in names.iter().zip(&table) {
        text.push_str(&format!("{name:width$} {}\n", row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" ")));
    }
    let json = json!({"schema": "equivar.marks/1", "group": group_json(&g), "subgroups": names, "marks": table});
    Ok(Report::ok(json, text))
}

fn burnside(op: &BurnsideOp, opts: &Opts) -> anyhow::Result<Report> {
    let (group, op_name) = match op {
        BurnsideOp::Mul { group, .. } => (group, "mul"),
        BurnsideOp::Res { group, .. } => (group, "res"),
        BurnsideOp::Tr { group, .. } => (group, "tr"),
        BurnsideOp::Norm { group, .. } => (group, "norm"),
    };
    let g = parse_group(group, opts)?;
    let sys = BurnsideSystem::new(&g);
    let below = |l: SubId, k: SubId| -> anyhow::Result<()> {
        if !g.le(l, k) {
            return Err(usage(format!("{} is not contained in {}", g.sub_name(l), g.sub_name(k))));
        }
        Ok(())
    };
    let mut checked = None;
    let (inputs, level, out) = match op {
        BurnsideOp::Mul { a, b, level, .. } => {
            let k = sub(&g, level)?;
            let x = parsed(sys.parse(k, a))?;
            let y = parsed(sys.parse(k, b))?;
            let z = sys.level(k).mul(&x, &y);
            (vec![belem_json(&sys, k, &x), belem_json(&sys, k, &y)], k, z)
        }
        BurnsideOp::Res { from, to, x, .. } => {
            let (k, l) = (sub(&g, from)?, sub(&g, to)?);
            below(l, k)?;
            let x = parsed(sys.parse(k, x))?;
            (vec![belem_json(&sys, k, &x)], l, sys.res(k, l, &x))
        }
        BurnsideOp::Tr { from, to, x, .. } => {
            let (l, k) = (sub(&g, from)?, sub(&g, to)?);
            below(l, k)?;
            let x = parsed(sys.parse(l, x))?;
            (vec![belem_json(&sys, l, &x)], k, sys.tr(l, k, &x))
        }
        BurnsideOp::Norm { from, to, x, check, .. } => {
            let (l, k) = (sub(&g, from)?, sub(&g, to)?);
            below(l, k)?;
            let x = parsed(sys.parse(l, x))?;
            let n = sys.norm_marks(l, k, &x);
            if *check {
                checked = Some(sys.norm_coinduction(l, k, &x, opts.budget)? == n);
            }
            (vec![belem_json(&sys, l, &x)], k, n)
        }
    };
    let result = belem_json(&sys, level, &out);
    let mut text = sys.format(level, &out) + "\n";
    if let Some(c) = checked {
        text.push_str(if c { "coinduction check: agrees\n" } else { "coinduction check: DISAGREES\n" });
    }
    let json = json!({
        "schema": "equivar.burnside/1",
        "op": op_name,
        "group": group_json(&g),
        "inputs": inputs,
        "result": result,
        "coinduction_check": checked,
    });
    Ok(Report { json, text, ok: checked != Some(false) })
}

fn coinduce(group: &str, sub_name: &str, labels: &[String], cosets: Option<&str>, opts: &Opts) -> anyhow::Result<Report> {
    let g = parse_group(group, opts)?;
    let h = sub(&g, sub_name)?;
    let incl = g.subgroup_as_group(h);
    let t = match cosets {
        Some(k) => {
            let k = sub(&g, k)?;
            if !g.le(k, h) {
                return Err(usage(format!("{} is not contained in {}", g.sub_name(k), g.sub_name(h))));
            }
            GSet::cosets(&incl.src, incl.preimage_sub(k))
        }
        None => {
            if labels.is_empty() {
                return Err(usage("give --labels or --cosets"));
            }
            GSet::trivial(&incl.src, labels.len())
        }
    };
    let orbits = coinduce_orbits(&incl, &t, opts.budget)?;
    let mut counts = std::collections::BTreeMap::new();
    let mut size = 0;
    let mut fixed = 0;
    for o in &orbits {
        let stab = g.class_rep(o.stabilizer);
        let len = g.index(o.stabilizer, g.whole());
        size += len;
        if len == 1 {
            fixed += 1;
        }
        *counts.entry((g.sub_order(stab), stab)).or_insert(0usize) += 1;
    }
    let orbit_json: Vec<Value> = counts.iter().rev().map(|(&(_, s), &c)| json!({"stabilizer": g.sub_name(s), "count": c})).collect();
    let text = counts.iter().rev().map(|(&(_, s), &c)| format!("{c} x G/{}", g.sub_name(s))).collect::<Vec<_>>().join(" + ");
    let json = json!({
        "schema": "equivar.coinduce/1",
        "group": group_json(&g),
        "sub": g.sub_name(h),
        "target": match cosets { Some(k) => json!({"cosets": k}), None => json!({"labels": labels}) },
        "size": size,
        "fixed": fixed,
        "orbits": orbit_json,
    });
    Ok(Report::ok(json, format!("{size} points, {fixed} fixed: {text}\n")))
}

/// The embedding D_2 -> G of a reflection subgroup.
fn reflection_embedding(g: &FiniteGroup, name: &str) -> anyhow::Result<GroupHom> {
    let m = g.dihedral_m().ok_or_else(|| usage("norms are only available for dihedral groups"))?;
    let h = sub(g, name)?;
    let els = g.sub_elems(h);
    let refl = els.iter().copied().find(|&x| x >= m).filter(|_| els.len() == 2);
    let Some(r) = refl else {
        return Err(usage(format!("{name} is not a reflection subgroup of order 2")));
    };
    let j = (r - m) as i64;
    Ok(if j == 0 { dihedral_inclusion(1, m) } else { reflection_inclusion(m, j) })
}

/// Unit-preserving isomorphism to the Burnside quotient, checked natural.
fn compare_quotient(x: &Mackey, m: u32) -> (Value, bool) {
    let q = burnside_quotient(m);
    let seed = vec![x.gens.iter().map(|(l, _)| q.unit(*l)).collect()];
    let cert = mackey_iso(x, &q, &seed).and_then(|f| {
        if !f.is_iso(x, &q) {
            return Err(equivar::Error::NoCertificate("not levelwise bijective".into()));
        }
        f.check_natural(x, &q)?;
        Ok(f)
    });
    match cert {
        Ok(f) => (json!({"target": "burnside-quotient", "isomorphic": true, "matrices": morphism_json(&f, x)}), true),
        Err(e) => (json!({"target": "burnside-quotient", "isomorphic": false, "reason": e.to_string()}), false),
    }
}

fn morphism_json(f: &MackeyMorphism, src: &Mackey) -> Value {
    let g = &src.group;
    let mats: serde_json::Map<String, Value> = f.mats.iter().enumerate().map(|(h, m)| (g.sub_name(h), m.to_json())).collect();
    Value::Object(mats)
}

fn with_comparison(x: &Mackey, m: u32, compare: Option<Compare>, schema: &str, extra: Value) -> Report {
    let d = x.lewis();
    let mut json = json!({"schema": schema, "diagram": d.to_json(), "input": extra});
    let mut text = d.render();
    let mut ok = true;
    if compare.is_some() {
        let (c, iso) = compare_quotient(x, m);
        text.push_str(if iso { "certified isomorphic to the Burnside quotient\n" } else { "NOT isomorphic to the Burnside quotient\n" });
        json["comparison"] = c;
        ok = iso;
    }
    Report { json, text, ok }
}

fn norm(group: &str, from: &str, functor: &str, compare: Option<Compare>, opts: &Opts) -> anyhow::Result<Report> {
    let g = parse_group(group, opts)?;
    let emb = reflection_embedding(&g, from)?;
    let r = ring(functor)?;
    let n = norm_mackey(&r.presentation, &emb, opts.budget)?;
    let m = g.dihedral_m().unwrap();
    Ok(with_comparison(&n, m, compare, "equivar.norm/1", json!({"group": group_json(&g), "from": from, "functor": r.name})))
}

fn reciprocity(group: &str, sub_name: &str, latex: bool, verify: bool, pairs: usize, opts: &Opts) -> anyhow::Result<Report> {
    let g = parse_group(group, opts)?;
    let h = sub(&g, sub_name)?;
    let r = Reciprocity::new(&g, h, opts.budget)?;
    let mut json = r.to_json();
    let mut text = r.render(latex);
    text.push('\n');
    let mut ok = true;
    if verify {
        let rep = verify_reciprocity(&g, h, pairs, opts.seed, opts.budget)?;
        ok = rep.ok();
        json["verification"] = json!({
            "burnside_pairs": rep.burnside_pairs,
            "direct_pairs": rep.direct_pairs,
            "ring_checks": rep.ring_checks,
            "seed": opts.seed,
            "passed": ok,
            "failure": rep.failure,
        });
        match &rep.failure {
            None => text.push_str(&format!(
                "verified: {} Burnside pairs ({} by direct coinduction), {} ring checks\n",
                rep.burnside_pairs, rep.direct_pairs, rep.ring_checks
            )),
            Some(f) => text.push_str(&format!("FAILED: {f}\n")),
        }
    }
    Ok(Report { json, text, ok })
}

fn hr0(ring_name: &str, m: u32, compare: Option<Compare>, opts: &Opts) -> anyhow::Result<Report> {
    let m = odd_m(m)?;
    let r = ring(ring_name)?;
    let x = HrComplex::with_degree_limit(&r, m, 1, opts.budget, opts.max_degree)?.hr0()?;
    Ok(with_comparison(&x, m, compare, "equivar.hr0/1", json!({"ring": r.name, "m": m})))
}

fn hr_homology(ring_name: &str, m: u32, degree: usize, opts: &Opts) -> anyhow::Result<Report> {
    let m = odd_m(m)?;
    let r = ring(ring_name)?;
    let d = HrComplex::with_degree_limit(&r, m, degree + 1, opts.budget, opts.max_degree)?.homology(degree)?;
    let json = json!({"schema": "equivar.hr/1", "ring": r.name, "m": m, "degree": degree, "diagram": d.to_json()});
    Ok(Report::ok(json, d.render()))
}

fn witt(ring_name: &str, p: u32, levels: usize, ops: &[String], coinvariants: bool, ghost: bool, opts: &Opts) -> anyhow::Result<Report> {
    let r = ring(ring_name)?;
    for o in ops {
        if !matches!(o.as_str(), "R" | "F" | "V") {
            return Err(usage(format!("unknown operator '{o}'; expected R, F or V")));
        }
    }
    let t = WittTower::new(&r, p, levels, opts.budget)?;
    let d2 = &t.w[0].group;
    let names: Vec<String> = (0..d2.num_subgroups()).map(|l| d2.sub_name(l)).collect();
    let mut text = String::new();
    let mut level_json = vec![];
    for (j, w) in t.w.iter().enumerate() {
        let vals: serde_json::Map<String, Value> = names.iter().enumerate().map(|(l, n)| (n.clone(), witt::group_json(w.value(l)))).collect();
        text.push_str(&format!("W_{}: {}\n", j + 1, names.iter().enumerate().map(|(l, n)| format!("{n}: {}", w.value(l).describe())).collect::<Vec<_>>().join(", ")));
        level_json.push(json!({"k": j + 1, "values": vals}));
    }
    let mut maps = serde_json::Map::new();
    for o in ops {
        let list = match o.as_str() {
            "R" => &t.r,
            "F" => &t.f,
            _ => &t.v,
        };
        let entries: Vec<Value> = (1..t.levels())
            .map(|j| {
                let (src, dst) = if o == "V" { (j, j + 1) } else { (j + 1, j) };
                let mats: serde_json::Map<String, Value> = names.iter().zip(&list[j].mats).map(|(n, m)| (n.clone(), m.to_json())).collect();
                json!({"from": src, "to": dst, "matrices": mats})
            })
            .collect();
        text.push_str(&format!("{o}: {} maps\n", entries.len()));
        maps.insert(o.clone(), Value::Array(entries));
    }
    let mut json = json!({"schema": "equivar.witt/1", "ring": r.name, "p": p, "levels": level_json, "maps": maps});
    let mut ok = true;
    if coinvariants {
        let c: Vec<Value> = (1..t.levels())
            .map(|j| {
                let groups = t.coinvariants(j);
                text.push_str(&format!("coker(R - F: W_{} -> W_{}): {}\n", j + 1, j, names.iter().zip(&groups).map(|(n, a)| format!("{n}: {}", a.describe())).collect::<Vec<_>>().join(", ")));
                let vals: serde_json::Map<String, Value> = names.iter().zip(&groups).map(|(n, a)| (n.clone(), witt::group_json(a))).collect();
                json!({"from": j + 1, "to": j, "values": vals})
            })
            .collect();
        json["coinvariants"] = Value::Array(c);
    }
    if ghost {
        let checks = GhostOracle::new(&t)?.check(&t);
        ok = checks.iter().all(|(_, b)| *b);
        for (n, b) in &checks {
            text.push_str(&format!("{} {n}\n", if *b { "PASS" } else { "FAIL" }));
        }
        json["ghost"] = checks.iter().map(|(n, b)| json!({"check": n, "passed": b})).collect();
    }
    Ok(Report { json, text, ok })
}

fn check(name: SuiteName, only: &[String], pairs: usize, opts: &Opts) -> anyhow::Result<Report> {
    let cfg = SuiteConfig { pairs, seed: opts.seed, budget: opts.budget.max(SuiteConfig::default().budget), jobs: opts.jobs };
    let checks: Vec<Check> = match name {
        SuiteName::PaperSuite => suite::full_suite(&cfg),
        SuiteName::Criteria => suite::criteria(&cfg),
        SuiteName::Regressions => suite::regressions(&cfg),
    };
    let checks: Vec<Check> = checks.into_iter().filter(|c| only.is_empty() || only.contains(&c.id)).collect();
    if checks.is_empty() {
        return Err(usage(format!("no checks match {only:?}")));
    }
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let mut text: String = checks.iter().map(|c| c.line() + "\n").collect();
    text.push_str(&format!("{} passed, {} failed\n", checks.len() - failed.len(), failed.len()));
    for c in &failed {
        text.push_str(&format!("counterexample {}: {}\n", c.id, c.detail));
    }
    let json = json!({
        "schema": "equivar.check/1",
        "suite": name.to_possible_value().map(|v| v.get_name().to_string()),
        "seed": cfg.seed,
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "passed": failed.is_empty(),
    });
    Ok(Report { json, text, ok: failed.is_empty() })
}

fn run(cli: Cli) -> anyhow::Result<(Report, Format)> {
    let o = &cli.opts;
    let (report, default) = match &cli.cmd {
        Cmd::Marks { group } => (marks(group, o)?, Format::Json),
        Cmd::Burnside { op } => (burnside(op, o)?, Format::Json),
        Cmd::Coinduce { group, sub, labels, cosets } => (coinduce(group, sub, labels, cosets.as_deref(), o)?, Format::Json),
        Cmd::Norm { group, from, functor, compare } => (norm(group, from, functor, *compare, o)?, Format::Json),
        Cmd::Reciprocity { group, sub, latex, json, verify, pairs } => {
            let f = if *json { Format::Json } else { Format::Text };
            (reciprocity(group, sub, *latex, *verify, *pairs, o)?, f)
        }
        Cmd::Hr0 { ring, m, compare } => (hr0(ring, *m, *compare, o)?, Format::Json),
        Cmd::Hr { op: HrOp::Homology { ring, m, degree } } => (hr_homology(ring, *m, *degree, o)?, Format::Json),
        Cmd::Witt { ring, p, levels, ops, coinvariants, ghost } => (witt(ring, *p, *levels, ops, *coinvariants, *ghost, o)?, Format::Json),
        Cmd::Check { suite, only, pairs } => (check(*suite, only, *pairs, o)?, Format::Text),
    };
    Ok((report, o.format.unwrap_or(default)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if cli.opts.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    match run(cli).context("equivar") {
        Ok((r, f)) => {
            let out = match f {
                Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable") + "\n",
                Format::Text => r.text,
            };
            // A closed pipe is not an error here.
            let _ = std::io::stdout().write_all(out.as_bytes());
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = if e.chain().any(|c| c.is::<Usage>()) { 2 } else { 1 };
            eprintln!("error: {:#}", e.root_cause());
            ExitCode::from(code)
        }
    }
}
