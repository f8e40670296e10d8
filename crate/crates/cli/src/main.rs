//! `chromatic`: command-line driver for the chromatic-category computations.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use chromatic_core::chromcat::{
    build_category, hom_chain_report, quillen_category, witness_scan, ChromCategory, Level,
};
use chromatic_core::colim::{colim_points, component_count, filtration_tower};
use chromatic_core::elemab::SubgroupFamily;
use chromatic_core::fgl::{a4_demo, run_pipeline, verify_kn_injectivity, PipelineOptions};
use chromatic_core::fp::{is_prime, FpMatrix};
use chromatic_core::group::FiniteGroup;
use chromatic_core::invariants::{
    invariant_basis, orbit_sum, subring_membership, LinearAction, DEFAULT_DEGREE_BOUND,
};
use chromatic_core::library::{self, GroupDescription};
use chromatic_core::poly::{default_names, PolyFp};
use chromatic_core::skeleton::skeleton;
use chromatic_core::subring::{build_cr, resolve_generator_file, SubringPresentation};
use chromatic_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "chromatic",
    version,
    about = "Chromatic categories of elementary abelian subgroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    /// Extra directory of group files, searched before the bundled library.
    #[arg(long, global = true)]
    library_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct GroupArgs {
    /// Bundled group name or path to a group file.
    #[arg(long, short = 'g')]
    group: String,
    /// Prime.
    #[arg(short = 'p', default_value_t = 2)]
    p: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Order, conjugacy classes and p-ranks of a group.
    GroupInfo {
        #[arg(long, short = 'g')]
        group: String,
    },
    /// Elementary abelian p-subgroups.
    Elemab(GroupArgs),
    /// Skeleton of A^(n) (or A with `-n inf`).
    Category {
        #[command(flatten)]
        g: GroupArgs,
        /// Level: a non-negative integer or `inf`.
        #[arg(short = 'n', default_value = "inf")]
        n: Level,
    },
    /// Stabilization rank and strictness of the chain of levels.
    Stab(GroupArgs),
    /// F_q-points of the colimit at one level, or the whole tower.
    Colim {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(short = 'q')]
        q: u64,
        #[arg(short = 'n', default_value = "inf")]
        n: Level,
        /// Every level from the p-rank down to 1, with connecting maps.
        #[arg(long)]
        tower: bool,
    },
    /// Restriction category of a subring given by generators.
    Cr {
        #[arg(long, short = 'g')]
        group: String,
        /// Bundled generator set (`a4_full`, `a4_chern`) or a generator file.
        #[arg(long)]
        generators: String,
    },
    /// Invariants, orbit sums and subring membership for a linear action.
    Invariants {
        /// Action matrices as JSON, e.g. `[[[0,1],[1,1]]]`; defaults to the Weyl action of `--group`.
        #[arg(long)]
        matrices: Option<String>,
        /// Group whose elementary abelian Sylow 2-subgroup supplies the action.
        #[arg(long, short = 'g')]
        group: Option<String>,
        #[arg(short = 'p', default_value_t = 2)]
        p: u32,
        /// Degree of the invariant forms to list.
        #[arg(long, short = 'd')]
        degree: Option<u32>,
        /// Polynomial whose orbit sum to print.
        #[arg(long)]
        orbit_sum: Option<String>,
        /// Polynomial to test for membership in the subring generated by `--in`.
        #[arg(long)]
        member: Option<String>,
        /// Comma-separated generators for `--member`.
        #[arg(long = "in", value_delimiter = ',')]
        in_generators: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
    },
    /// Groups of the library with A^(n) ≠ A^(n+1).
    Witness {
        #[arg(short = 'p', default_value_t = 2)]
        p: u32,
        #[arg(short = 'n', default_value_t = 1)]
        n: u32,
        /// Groups above this order are skipped.
        #[arg(long, default_value_t = 2048)]
        cap: usize,
    },
    /// Injectivity of the Hurewicz map for BZ/p in the height-n model.
    Kn {
        #[arg(short = 'p', default_value_t = 2)]
        p: u32,
        #[arg(short = 'n', default_value_t = 2)]
        n: u32,
    },
    /// The A_4 computation end to end.
    A4Demo {
        /// Height of the formal group law; anything but 2 only reports the pipeline.
        #[arg(long, default_value_t = 2)]
        height: u32,
        /// Push forward the single term w^2 z instead of its Weyl orbit.
        #[arg(long)]
        no_weyl: bool,
        #[arg(long, default_value_t = 8)]
        degree: u32,
    },
}

struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            failed: false,
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn describe(cli: &Cli, spec: &str) -> Result<GroupDescription> {
    if let Some(dir) = &cli.library_dir {
        let candidate = dir.join(format!("{spec}.json"));
        if candidate.exists() {
            return GroupDescription::from_file(&candidate);
        }
    }
    library::resolve(spec)
}

fn load_group(cli: &Cli, spec: &str) -> Result<FiniteGroup> {
    let desc = describe(cli, spec)?;
    let g = desc.build()?;
    g.validate()?;
    Ok(g)
}

fn family(cli: &Cli, spec: &str, p: u32) -> Result<Arc<SubgroupFamily>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Arc::new(SubgroupFamily::new(
        Arc::new(load_group(cli, spec)?),
        p,
    )?))
}

fn category_at(fam: &Arc<SubgroupFamily>, n: Level) -> ChromCategory {
    match n {
        Level::Infinity => quillen_category(fam),
        _ => build_category(fam, n),
    }
}

fn prime_factors(mut n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u32);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

fn cmd_group_info(cli: &Cli, spec: &str) -> Result<Output> {
    let g = load_group(cli, spec)?;
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    for x in g.elements() {
        *orders.entry(g.element_order(x)).or_default() += 1;
    }
    let mut p_ranks = BTreeMap::new();
    for p in prime_factors(g.order()) {
        p_ranks.insert(p, chromatic_core::elemab::p_rank(&g, p));
    }
    let value = json!({
        "name": g.name(),
        "order": g.order(),
        "conjugacy_classes": g.class_count(),
        "element_orders": orders,
        "p_ranks": p_ranks,
    });
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&value),
        _ => {
            let orders: Vec<String> = orders.iter().map(|(o, c)| format!("{c}×{o}")).collect();
            let ranks: Vec<String> = p_ranks.iter().map(|(p, r)| format!("{p}:{r}")).collect();
            format!(
                "{}: order {}, {} conjugacy classes\nelement orders: {}\np-ranks: {}\n",
                g.name(),
                g.order(),
                g.class_count(),
                orders.join(" "),
                ranks.join(" ")
            )
        }
    }))
}

fn cmd_elemab(cli: &Cli, args: &GroupArgs) -> Result<Output> {
    let fam = family(cli, &args.group, args.p)?;
    let g = &fam.group;
    let rows: Vec<Value> = fam
        .subgroups
        .iter()
        .map(|s| {
            json!({
                "id": s.id,
                "rank": s.rank(),
                "basis": s.basis.iter().map(|&b| g.label(b)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(
            &json!({"group": g.name(), "p": fam.p, "p_rank": fam.p_rank(), "subgroups": rows}),
        ),
        _ => {
            let mut s = format!(
                "{} at p = {}: {} elementary abelian subgroups, p-rank {}\n",
                g.name(),
                fam.p,
                fam.len(),
                fam.p_rank()
            );
            for sub in &fam.subgroups {
                let basis: Vec<&str> = sub.basis.iter().map(|&b| g.label(b)).collect();
                s.push_str(&format!(
                    "  V{}: rank {}, basis [{}]\n",
                    sub.id,
                    sub.rank(),
                    basis.join(", ")
                ));
            }
            s
        }
    }))
}

fn cmd_category(cli: &Cli, args: &GroupArgs, n: Level) -> Result<Output> {
    let fam = family(cli, &args.group, args.p)?;
    let cat = category_at(&fam, n);
    let report = skeleton(&cat);
    Ok(Output::ok(match cli.format {
        Format::Dot => report.to_dot(),
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            v["morphisms"] = json!(cat.morphism_count());
            v["components"] = json!(component_count(&cat));
            pretty(&v)
        }
        Format::Text => format!(
            "{}{} morphisms in total, {} component(s)\n",
            report.to_text(),
            cat.morphism_count(),
            component_count(&cat)
        ),
    }))
}

fn cmd_stab(cli: &Cli, args: &GroupArgs) -> Result<Output> {
    let fam = family(cli, &args.group, args.p)?;
    let report = hom_chain_report(&fam);
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&serde_json::to_value(&report)?),
        _ => {
            let mut s = format!(
                "{} at p = {}: p-rank {}, stabilization rank {}\n",
                report.group, report.p, report.p_rank, report.stabilization_rank
            );
            for l in &report.levels {
                s.push_str(&format!(
                    "  A^({}) {} A^({}): {} vs {} morphisms\n",
                    l.n,
                    if l.strict { "⊋" } else { "=" },
                    l.n + 1,
                    l.morphisms,
                    l.morphisms_next
                ));
            }
            s
        }
    }))
}

fn cmd_colim(cli: &Cli, args: &GroupArgs, q: u64, n: Level, tower: bool) -> Result<Output> {
    let fam = family(cli, &args.group, args.p)?;
    if tower {
        let t = filtration_tower(&fam, q)?;
        return Ok(Output::ok(match cli.format {
            Format::Json => pretty(&t.to_json()),
            _ => {
                let mut s = format!(
                    "{} at p = {}, F_{}-points by level\n",
                    fam.group.name(),
                    fam.p,
                    q
                );
                for l in &t.levels {
                    s.push_str(&format!("  n = {}: {} points\n", l.n, l.result.size()));
                }
                s.push_str(&format!(
                    "  sizes {:?}, connecting maps surjective\n",
                    t.sizes()
                ));
                s
            }
        }));
    }
    let cat = category_at(&fam, n);
    let result = colim_points(&cat, q)?;
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&json!({
            "q": q,
            "level": n,
            "size": result.size(),
            "total_points": result.total_points(),
            "classes": result.classes(),
        })),
        _ => {
            let mut s = format!(
                "{} at p = {}, {}: {} F_{}-points ({} before gluing)\n",
                fam.group.name(),
                fam.p,
                cat.kind_label(),
                result.size(),
                q,
                result.total_points()
            );
            for c in result.classes() {
                s.push_str(&format!(
                    "  V{} {} ({} members)\n",
                    c.object, c.point, c.members
                ));
            }
            s
        }
    }))
}

fn cmd_cr(cli: &Cli, group: &str, generators: &str) -> Result<Output> {
    let fam = family(cli, group, 2)?;
    let file = resolve_generator_file(generators)?;
    let pres = SubringPresentation::from_generator_file(fam.clone(), &file)?;
    let cat = build_cr(&pres);
    let mut matches = Vec::new();
    for n in 0..=fam.p_rank() as u32 {
        if cat.same_homs(&build_category(&fam, Level::Finite(n))) {
            matches.push(format!("A^({n})"));
        }
    }
    if cat.same_homs(&quillen_category(&fam)) {
        matches.push("A".to_string());
    }
    let all = build_category(&fam, Level::Finite(0));
    let rejected: Vec<Value> = all
        .difference(&cat)
        .iter()
        .map(|f| {
            json!({
                "source": f.source,
                "target": f.target,
                "matrix": f.matrix,
                "generator": pres.distinguishing_generator(f).map(|x| x.to_string()),
            })
        })
        .collect();
    let gens: Vec<String> = pres.generators.iter().map(|g| g.to_string()).collect();
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&json!({
            "group": fam.group.name(),
            "generators": gens,
            "weyl_order": pres.weyl.order(),
            "morphisms": cat.morphism_count(),
            "equals": matches,
            "rejected": rejected,
        })),
        Format::Dot => skeleton(&cat).to_dot(),
        Format::Text => {
            format!(
            "{}: C_R for ⟨{}⟩ has {} morphisms; equals {}\n{} injective homomorphisms rejected\n",
            fam.group.name(),
            gens.join(", "),
            cat.morphism_count(),
            if matches.is_empty() { "no level".to_string() } else { matches.join(", ") },
            rejected.len()
        )
        }
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_invariants(
    cli: &Cli,
    matrices: Option<&str>,
    group: Option<&str>,
    p: u32,
    degree: Option<u32>,
    orbit: Option<&str>,
    member: Option<&str>,
    in_generators: &[String],
    degree_bound: u32,
) -> Result<Output> {
    let action = match (matrices, group) {
        (Some(text), _) => {
            let raw: Vec<Vec<Vec<u32>>> = serde_json::from_str(text)?;
            let nvars = raw.first().map_or(0, Vec::len);
            let mats = raw
                .iter()
                .map(|rows| FpMatrix::from_rows(p, rows))
                .collect();
            LinearAction::new(p, nvars, mats)?
        }
        (None, Some(g)) => SubringPresentation::new(family(cli, g, 2)?, Vec::new())?.weyl,
        (None, None) => return Err(Error::Unsupported("give --matrices or --group".into())),
    };
    let names = default_names(action.nvars());
    let parse = |s: &str| PolyFp::parse(s, &names, action.prime());
    let mut report = serde_json::Map::new();
    let mut text = format!(
        "action of order {} on {} variables over F_{}\n",
        action.order(),
        action.nvars(),
        action.prime()
    );
    if let Some(d) = degree {
        let basis: Vec<String> = invariant_basis(&action, d)?
            .iter()
            .map(|f| f.to_string())
            .collect();
        text.push_str(&format!(
            "invariants of degree {d}: [{}]\n",
            basis.join(", ")
        ));
        report.insert("degree".into(), json!(d));
        report.insert("basis".into(), json!(basis));
    }
    if let Some(f) = orbit {
        let s = orbit_sum(&parse(f)?, &action)?.to_string();
        text.push_str(&format!("orbit sum of {f}: {s}\n"));
        report.insert("orbit_sum".into(), json!(s));
    }
    if let Some(f) = member {
        let gens = in_generators
            .iter()
            .map(|g| parse(g))
            .collect::<Result<Vec<_>>>()?;
        let is_member = subring_membership(&parse(f)?, &gens, degree_bound)?;
        text.push_str(&format!(
            "{f} {} the subring generated by [{}]\n",
            if is_member {
                "lies in"
            } else {
                "does not lie in"
            },
            in_generators.join(", ")
        ));
        report.insert("member".into(), json!(is_member));
    }
    report.insert("order".into(), json!(action.order()));
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&Value::Object(report)),
        _ => text,
    }))
}

fn cmd_witness(cli: &Cli, p: u32, n: u32, cap: usize) -> Result<Output> {
    let lib = match &cli.library_dir {
        Some(dir) => library::load_dir(Path::new(dir))?,
        None => library::builtin_library(),
    };
    let report = witness_scan(&lib, p, n, cap)?;
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&serde_json::to_value(&report)?),
        _ => {
            let mut s = format!(
                "A^({n}) ≠ A^({}) at p = {p}: {}\nexamined {} groups\n",
                n + 1,
                if report.witnesses.is_empty() {
                    "no group found".to_string()
                } else {
                    report.witnesses.join(", ")
                },
                report.examined.len()
            );
            for (name, why) in &report.skipped {
                s.push_str(&format!("skipped {name}: {why}\n"));
            }
            s
        }
    }))
}

fn cmd_kn(cli: &Cli, p: u32, n: u32) -> Result<Output> {
    let report = verify_kn_injectivity(p, n)?;
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&serde_json::to_value(&report)?),
        _ => {
            let mut s = format!(
                "Hurewicz map for BZ/{p} at height {n}: injective on the tested elements\n"
            );
            for w in &report.witnesses {
                s.push_str(&format!("  {} on β_{} ↦ {}\n", w.element, w.beta, w.image));
            }
            s
        }
    }))
}

fn cmd_a4_demo(cli: &Cli, height: u32, no_weyl: bool, degree: u32) -> Result<Output> {
    let options = PipelineOptions {
        height,
        degree,
        weyl: !no_weyl,
    };
    let report = if height == 2 && !no_weyl && degree == 8 {
        match a4_demo() {
            Ok(r) => r,
            Err(Error::Assertion(msg)) => {
                let mut r = run_pipeline(&options)?;
                r.passed = false;
                let text = match cli.format {
                    Format::Json => pretty(&serde_json::to_value(&r)?),
                    _ => format!("{}{msg}\n", r.to_text()),
                };
                return Ok(Output { text, failed: true });
            }
            Err(e) => return Err(e),
        }
    } else {
        run_pipeline(&options)?
    };
    Ok(Output {
        text: match cli.format {
            Format::Json => pretty(&serde_json::to_value(&report)?),
            _ => report.to_text(),
        },
        failed: !report.passed,
    })
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::GroupInfo { group } => cmd_group_info(cli, group),
        Command::Elemab(args) => cmd_elemab(cli, args),
        Command::Category { g, n } => cmd_category(cli, g, *n),
        Command::Stab(args) => cmd_stab(cli, args),
        Command::Colim { g, q, n, tower } => cmd_colim(cli, g, *q, *n, *tower),
        Command::Cr { group, generators } => cmd_cr(cli, group, generators),
        Command::Invariants {
            matrices,
            group,
            p,
            degree,
            orbit_sum,
            member,
            in_generators,
            degree_bound,
        } => cmd_invariants(
            cli,
            matrices.as_deref(),
            group.as_deref(),
            *p,
            *degree,
            orbit_sum.as_deref(),
            member.as_deref(),
            in_generators,
            *degree_bound,
        ),
        Command::Witness { p, n, cap } => cmd_witness(cli, *p, *n, *cap),
        Command::Kn { p, n } => cmd_kn(cli, *p, *n),
        Command::A4Demo {
            height,
            no_weyl,
            degree,
        } => cmd_a4_demo(cli, *height, *no_weyl, *degree),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &out.text).map_err(Error::from),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::Assertion(msg)) => {
            eprintln!("assertion failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
