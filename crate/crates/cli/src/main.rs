use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use redgroups_core::affine::{self, AffineDocument};
use redgroups_core::finab::{orbit_partition, subgroups, FinAbHom};
use redgroups_core::reductive::{
    self, enumerate_rank, isomorphic, lie_algebra_invariant, torus_split, variety_determines_group,
};
use redgroups_core::semisimple::{extended_out_generators, quotient_name};
use redgroups_core::varieties::find_twin_pairs;
use redgroups_core::{
    AffineDatum, EnumerationConfig, Error, GluingDatum, SCSemisimple, SimpleType,
    DEFAULT_ENUMERATION_BOUND,
};

#[derive(Parser, Debug)]
#[command(
    name = "redgroups",
    version,
    about = "Connected reductive groups as central gluing data"
)]
struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Bound on finite group orders during enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    bound: u64,
    /// Characteristic for the gluing filter; 0 disables it.
    #[arg(long, global = true, default_value_t = 0)]
    p: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Center of a simply connected semisimple group, e.g. `D4` or `A1xA2`.
    Center {
        #[arg(value_parser = parse_semisimple)]
        group: SCSemisimple,
    },
    /// Central quotients up to outer automorphisms.
    Quotients {
        #[arg(value_parser = parse_semisimple)]
        group: SCSemisimple,
    },
    /// Decide isomorphism of two data.
    Iso { first: String, second: String },
    /// Numerical invariants of a datum.
    Invariants { datum: String },
    /// Structural criteria of a datum with optional `unipotent_dim`.
    Classify { datum: String },
    /// All reductive groups of the given rank.
    Enumerate { rank: usize },
    /// Non-isomorphic quotients of a power with isomorphic varieties.
    Twins {
        #[arg(value_parser = parse_simple)]
        base: SimpleType,
        n: usize,
    },
    /// Variety splitting `G = D × Z` from a torus complement.
    Split { datum: String },
}

fn parse_semisimple(s: &str) -> Result<SCSemisimple, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_simple(s: &str) -> Result<SimpleType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_resource_bound() { 4 } else { 3 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

/// A datum given inline as JSON or as a path to a JSON file.
fn read_datum(arg: &str) -> Result<AffineDatum, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::parse(format!("{arg}: {e}")))?
    };
    let doc: AffineDocument =
        serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{arg}: {e}")))?;
    Ok(AffineDatum::new(
        GluingDatum::from_document(&doc.datum)?,
        doc.unipotent_dim,
    ))
}

fn read_reductive(arg: &str) -> Result<GluingDatum, Failure> {
    let a = read_datum(arg)?;
    if a.u != 0 {
        return Err(Error::InvalidDatum(format!("{arg} is not reductive")).into());
    }
    Ok(a.reductive_part)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.push(
        widths
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .join("  "),
    );
    for row in rows {
        out.push(line(row.iter().map(String::as_str).collect()));
    }
    out.join("\n") + "\n"
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn center(cli: &Cli, s: &SCSemisimple) -> Outcome {
    let a = s.center_of().group;
    if cli.json {
        return Ok(pretty(&json!({
            "group": s.to_string(),
            "invariant_factors": a.invariant_factors(),
        })));
    }
    Ok(format!("{a}\n"))
}

fn quotients(cli: &Cli, s: &SCSemisimple) -> Outcome {
    let a = s.center_of().group;
    let subs = subgroups(&a, cli.bound)?;
    let maps: Vec<FinAbHom> = extended_out_generators(s)
        .into_iter()
        .map(|g| g.map)
        .collect();
    let mut orbits = orbit_partition(&subs, &maps)?;
    for o in &mut orbits {
        o.sort();
    }
    orbits.sort_by(|x, y| (x[0].order(), &x[0]).cmp(&(y[0].order(), &y[0])));
    let entries: Vec<(String, u128, Vec<Vec<u64>>, usize)> = orbits
        .iter()
        .map(|o| {
            (
                quotient_name(s, &o[0]),
                o[0].order(),
                o[0].generators(),
                o.len(),
            )
        })
        .collect();
    if cli.json {
        let list: Vec<Value> = entries
            .iter()
            .map(|(name, order, gens, size)| {
                json!({"name": name, "order": order, "generators": gens, "orbit_size": size})
            })
            .collect();
        return Ok(pretty(&json!({"group": s.to_string(), "quotients": list})));
    }
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(name, order, gens, size)| {
            vec![
                name.clone(),
                order.to_string(),
                format!("{gens:?}"),
                size.to_string(),
            ]
        })
        .collect();
    Ok(table(&["quotient", "|C|", "generators", "orbit"], &rows))
}

fn iso(cli: &Cli, first: &str, second: &str) -> Outcome {
    let d1 = read_reductive(first)?;
    let d2 = read_reductive(second)?;
    let same_lie = lie_algebra_invariant(&d1) == lie_algebra_invariant(&d2);
    let witness = isomorphic(&d1, &d2)?;
    if cli.json {
        return Ok(pretty(&json!({
            "isomorphic": witness.is_some(),
            "lie_algebras_equal": same_lie,
            "witness": witness,
        })));
    }
    Ok(match witness {
        Some(w) if w.is_empty() => "ISOMORPHIC (identical gluing data)\n".to_string(),
        Some(w) => format!("ISOMORPHIC (witness: {})\n", w.join(" then ")),
        None if same_lie => "NOT ISOMORPHIC (gluing orbits differ)\n".to_string(),
        None => "NOT ISOMORPHIC (Lie algebras differ)\n".to_string(),
    })
}

fn invariants(cli: &Cli, arg: &str) -> Outcome {
    let a = read_datum(arg)?;
    let r = affine::invariants(&a);
    let d = &a.reductive_part;
    let (determined, reason) = variety_determines_group(d);
    if cli.json {
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["name"] = json!(d.name());
        v["unipotent_dim"] = json!(a.u);
        v["variety_determines_group"] = json!(determined);
        v["reason"] = json!(reason.to_string());
        return Ok(pretty(&v));
    }
    let torsion: Vec<String> = r.pi1_torsion.iter().map(|d| format!("Z/{d}")).collect();
    let mut pi1: Vec<String> = Vec::new();
    if r.pi1_free_rank > 0 {
        pi1.push(if r.pi1_free_rank == 1 {
            "Z".into()
        } else {
            format!("Z^{}", r.pi1_free_rank)
        });
    }
    pi1.extend(torsion);
    let pi1 = if pi1.is_empty() {
        "trivial".to_string()
    } else {
        pi1.join(" + ")
    };
    let rows = vec![
        vec!["group".into(), d.name()],
        vec!["unipotent_dim".into(), a.u.to_string()],
        vec!["dim".into(), r.dim.to_string()],
        vec!["rank".into(), r.rank.to_string()],
        vec!["units".into(), r.units.to_string()],
        vec!["mh".into(), r.mh.to_string()],
        vec!["dim_radical".into(), r.dim_radical.to_string()],
        vec![
            "dim_unipotent_radical".into(),
            r.dim_unipotent_radical.to_string(),
        ],
        vec!["pi1".into(), pi1],
        vec![
            "variety_determines_group".into(),
            format!("{determined} ({reason})"),
        ],
    ];
    Ok(table(&["invariant", "value"], &rows))
}

fn classify(cli: &Cli, arg: &str) -> Outcome {
    let a = read_datum(arg)?;
    let c = affine::classify(&a)?;
    let signature = affine::solvable_variety_signature(&a).ok();
    let report = affine::factorization_report(&a.reductive_part);
    if cli.json {
        return Ok(pretty(&json!({
            "name": a.reductive_part.name(),
            "unipotent_dim": a.u,
            "flags": c,
            "solvable_signature": signature,
            "factorization": report,
        })));
    }
    let flag = |b: bool| if b { "yes" } else { "no" }.to_string();
    let mut rows = vec![
        vec!["reductive".into(), flag(c.reductive)],
        vec!["semisimple".into(), flag(c.semisimple)],
        vec!["solvable".into(), flag(c.solvable)],
        vec!["unipotent".into(), flag(c.unipotent)],
        vec!["torus".into(), flag(c.torus)],
    ];
    if let Some((t, r)) = signature {
        rows.push(vec!["variety".into(), format!("A*^{t} x A^{r}")]);
    }
    if let Some((dd, dz)) = report.factor_dims {
        rows.push(vec!["factor dims".into(), format!("{dd} + {dz}")]);
    }
    if let Some(o) = &report.obstructions {
        let mut names = Vec::new();
        if o.no_units {
            names.push("units");
        }
        if o.no_curve_factor {
            names.push("curve");
        }
        if o.no_surface_factor {
            names.push("surface");
        }
        if o.no_contractible_factor {
            names.push("contractible");
        }
        rows.push(vec!["excluded factors".into(), names.join(", ")]);
    }
    Ok(format!(
        "{}\n{}",
        a.reductive_part.name(),
        table(&["criterion", "value"], &rows)
    ))
}

fn enumerate(cli: &Cli, rank: usize) -> Outcome {
    let config = EnumerationConfig {
        bound: cli.bound,
        p: cli.p,
        ..EnumerationConfig::default()
    };
    let list = enumerate_rank(rank, &config)?;
    if cli.json {
        let docs: Vec<Value> = list
            .iter()
            .map(|d| serde_json::to_value(d.to_document()).expect("serializable"))
            .collect();
        return Ok(pretty(&Value::Array(docs)));
    }
    let rows: Vec<Vec<String>> = list
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let r = reductive::invariants(d);
            vec![
                (i + 1).to_string(),
                d.name(),
                d.torus_rank().to_string(),
                d.semisimple_part().to_string(),
                d.gluing().order().to_string(),
                r.dim.to_string(),
            ]
        })
        .collect();
    Ok(format!(
        "{}{} groups of rank {rank}\n",
        table(&["#", "name", "n", "S", "|F|", "dim"], &rows),
        list.len()
    ))
}

fn twins(cli: &Cli, base: SimpleType, n: usize) -> Outcome {
    let pairs = find_twin_pairs(base, n, cli.bound)?;
    if cli.json {
        let docs: Vec<Value> = pairs
            .iter()
            .map(|c| serde_json::to_value(c.document()).expect("serializable"))
            .collect();
        return Ok(pretty(&Value::Array(docs)));
    }
    let mut out = String::new();
    for c in &pairs {
        let doc = c.document();
        out += &format!("{} / {}\n", doc.group1, doc.group2);
        out += &format!("  C1 = {:?}\n  C2 = {:?}\n", doc.c1, doc.c2);
        out += &format!("  witness {}\n", c.matrix);
        out += &format!(
            "  Out-orbit of C1 exhausted ({} subgroups)\n",
            doc.out_orbit_size
        );
    }
    out += &format!("{} pair(s) for {base}^{n}\n", pairs.len());
    Ok(out)
}

fn split(cli: &Cli, arg: &str) -> Outcome {
    let d = read_reductive(arg)?;
    let s = torus_split(&d);
    let n = d.torus_rank();
    let complement: Vec<String> = s.complement.iter().map(|v| s.format(v, n)).collect();
    let report = affine::factorization_report(&d);
    if cli.json {
        return Ok(pretty(&json!({
            "name": d.name(),
            "factor_dims": report.factor_dims,
            "complement": complement,
        })));
    }
    let mut out = format!("{}\n", d.name());
    match report.factor_dims {
        Some((dd, dz)) => out += &format!("variety splits as D x Z with dims {dd} + {dz}\n"),
        None => out += "no torus factor\n",
    }
    for c in complement {
        out += &format!("  cocharacter {c}\n");
    }
    Ok(out)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Center { group } => center(cli, group),
        Command::Quotients { group } => quotients(cli, group),
        Command::Iso { first, second } => iso(cli, first, second),
        Command::Invariants { datum } => invariants(cli, datum),
        Command::Classify { datum } => classify(cli, datum),
        Command::Enumerate { rank } => enumerate(cli, *rank),
        Command::Twins { base, n } => twins(cli, *base, *n),
        Command::Split { datum } => split(cli, datum),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
