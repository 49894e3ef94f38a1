//! Batch front door over the chamber-system toolkit: word and element
//! reduction, chamber balls, tree-wall reports, separation checks,
//! retraction audits, and covering-tree certificates.
//!
//! Every JSON report embeds the tool version, the SHA-256 of the input
//! file, the window sizes, and the seed, so desk-scale experiments are
//! reproducible: a repeated run over the same inputs is byte-identical.
//! The exit code is 0 only when every verification embedded in the
//! command passes, 1 when one fails, and 2 on usage or input errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rabuild_core::building::{Building, Chamber};
use rabuild_core::coxeter::{Gen, PerpClass};
use rabuild_core::lattice::{LatticeModel, RaySpec};
use rabuild_core::presentation::PresentationFile;
use rabuild_core::treewall::{TreeWall, WallClass};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "rabuild",
    version,
    about = "Exact combinatorics of graph-product chamber systems: reductions, balls, tree-walls, separations, retraction audits, covering-tree certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format; `dot` applies to `ball` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed recorded in every report (reserved for seeded sweeps).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Hard cap on radii, windows and demo levels, to bound memory.
    #[arg(long, global = true, default_value_t = 8)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a word (space-separated generator names) or an element
    /// (`gen:k` syllables joined by `.`) to its normal form.
    Reduce {
        /// Presentation file: generators, commuting pairs, local orders.
        #[arg(long)]
        presentation: PathBuf,
        /// The word or element to reduce.
        word: Option<String>,
        /// File with one word or element per line; reduces each line.
        #[arg(long, conflicts_with = "word")]
        batch: Option<PathBuf>,
    },
    /// Enumerate the ball of chambers around a center, with typed edges.
    Ball {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Center chamber in element text form (`e` is the base).
        #[arg(long, default_value = "e")]
        center: String,
    },
    /// Classify the tree-wall of a chamber's panel and count its
    /// epicormic chambers within a window.
    Treewall {
        #[arg(long)]
        presentation: PathBuf,
        /// Panel type (a generator name).
        #[arg(long = "type")]
        wall_type: String,
        /// Defining chamber in element text form.
        #[arg(default_value = "e")]
        chamber: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Check that removing a tree-wall separates a window into q
    /// labeled gallery components.
    Separate {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long = "type")]
        wall_type: String,
        #[arg(default_value = "e")]
        chamber: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Audit retractions onto the default apartment over a window: the
    /// preimage of every wall trace must be the wall, apartment chambers
    /// must be fixed, and Weyl distances from the base preserved.
    RetractAudit {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Search a ray-of-groups covering tree for a certified wall that
    /// disconnects the level-n orbit neighborhood, and verify it.
    LatticeDemo {
        /// Ray spec file: qs, qt, vertex_orders, edge_orders, growth.
        #[arg(long)]
        ray: PathBuf,
        /// Orbit-neighborhood level to disconnect.
        n: usize,
    },
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    input_sha256: &'a str,
    seed: u64,
    params: Value,
    result: Value,
    pass: bool,
}

/// A command's payload before formatting.
struct Report {
    command: &'static str,
    input_sha256: String,
    params: Value,
    result: Value,
    pass: bool,
    text: String,
    dot: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let pass = report.pass;
            match render(&cli, report) {
                Ok(out) => {
                    print!("{out}");
                    if pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn render(cli: &Cli, report: Report) -> Result<String, String> {
    match cli.format {
        Format::Json => {
            let envelope = Envelope {
                tool: "rabuild",
                version: env!("CARGO_PKG_VERSION"),
                command: report.command,
                input_sha256: &report.input_sha256,
                seed: cli.seed,
                params: report.params,
                result: report.result,
                pass: report.pass,
            };
            let mut out = serde_json::to_string_pretty(&envelope)
                .map_err(|e| format!("serialization failed: {e}"))?;
            out.push('\n');
            Ok(out)
        }
        Format::Text => Ok(report.text),
        Format::Dot => report
            .dot
            .ok_or_else(|| "--format dot applies only to the ball command".to_owned()),
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Cmd::Reduce {
            presentation,
            word,
            batch,
        } => cmd_reduce(cli, presentation, word.as_deref(), batch.as_deref()),
        Cmd::Ball {
            presentation,
            radius,
            center,
        } => cmd_ball(cli, presentation, *radius, center),
        Cmd::Treewall {
            presentation,
            wall_type,
            chamber,
            radius,
        } => cmd_treewall(cli, presentation, wall_type, chamber, *radius),
        Cmd::Separate {
            presentation,
            wall_type,
            chamber,
            radius,
        } => cmd_separate(cli, presentation, wall_type, chamber, *radius),
        Cmd::RetractAudit {
            presentation,
            radius,
        } => cmd_retract_audit(cli, presentation, *radius),
        Cmd::LatticeDemo { ray, n } => cmd_lattice_demo(cli, ray, *n),
    }
}

// -------------------------------------------------------------------
// input loading

fn read_input(path: &Path) -> Result<(String, String), String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let sha = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| format!("{} is not valid UTF-8", path.display()))?;
    Ok((text, sha))
}

fn load_building(path: &Path) -> Result<(Building, String), String> {
    let (text, sha) = read_input(path)?;
    let file = PresentationFile::from_json(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let gp = file
        .graph_product()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((Building::new(gp), sha))
}

fn load_ray(path: &Path) -> Result<(RaySpec, String), String> {
    let (text, sha) = read_input(path)?;
    let spec: RaySpec =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((spec, sha))
}

fn parse_chamber(b: &Building, text: &str) -> Result<Chamber, String> {
    let trimmed = text.trim();
    let source = if trimmed == "e" { "" } else { trimmed };
    let el = b
        .product()
        .parse_element(source)
        .map_err(|e| e.to_string())?;
    Ok(b.chamber(el))
}

fn type_by_name(b: &Building, name: &str) -> Result<Gen, String> {
    let sys = b.product().system();
    sys.gen_by_name(name).ok_or_else(|| {
        let names: Vec<&str> = sys.gens().map(|g| sys.name(g)).collect();
        format!("unknown type `{name}`; available: {}", names.join(", "))
    })
}

fn check_cap(cli: &Cli, what: &str, value: usize) -> Result<(), String> {
    if value > cli.cap {
        return Err(format!(
            "{what} {value} exceeds the hard cap {}; raise --cap to override",
            cli.cap
        ));
    }
    Ok(())
}

// -------------------------------------------------------------------
// reduce

fn reduce_one(b: &Building, text: &str) -> Result<(Value, String, bool), String> {
    let gp = b.product();
    let sys = gp.system();
    let trimmed = text.trim();
    if trimmed.contains(':') {
        let el = gp.parse_element(trimmed).map_err(|e| e.to_string())?;
        let rendered = gp.format_element(&el);
        // parsing normalizes, so the text form must parse back to itself
        let idempotent = gp.parse_element(&rendered).map(|again| again == el);
        let ok = matches!(idempotent, Ok(true));
        let item = json!({
            "input": trimmed,
            "kind": "element",
            "normal_form": rendered,
            "syllables": el.len(),
        });
        Ok((item, rendered, ok))
    } else {
        let letters = sys.parse_word(trimmed).map_err(|e| e.to_string())?;
        let nf = sys.reduce(&letters).map_err(|e| e.to_string())?;
        let rendered = if nf.letters().is_empty() {
            String::new()
        } else {
            sys.word_string(nf.letters())
        };
        let ok = match sys.reduce(nf.letters()) {
            Ok(again) => again == nf,
            Err(_) => false,
        };
        let item = json!({
            "input": trimmed,
            "kind": "word",
            "normal_form": rendered,
            "length": nf.len(),
        });
        Ok((item, rendered, ok))
    }
}

fn cmd_reduce(
    _cli: &Cli,
    presentation: &Path,
    word: Option<&str>,
    batch: Option<&Path>,
) -> Result<Report, String> {
    let (b, sha) = load_building(presentation)?;
    match (word, batch) {
        (Some(text), None) => {
            let (item, rendered, ok) = reduce_one(&b, text)?;
            Ok(Report {
                command: "reduce",
                input_sha256: sha,
                params: json!({"batch": false}),
                result: json!({"count": 1, "items": [item]}),
                pass: ok,
                text: format!("{rendered}\n"),
                dot: None,
            })
        }
        (None, Some(path)) => {
            let (content, batch_sha) = read_input(path)?;
            let mut items = Vec::new();
            let mut lines = String::new();
            let mut pass = true;
            for (i, line) in content.lines().enumerate() {
                let (item, rendered, ok) =
                    reduce_one(&b, line).map_err(|e| format!("line {}: {e}", i + 1))?;
                items.push(item);
                lines.push_str(&rendered);
                lines.push('\n');
                pass &= ok;
            }
            Ok(Report {
                command: "reduce",
                input_sha256: sha,
                params: json!({"batch": true, "batch_sha256": batch_sha}),
                result: json!({"count": items.len(), "items": items}),
                pass,
                text: lines,
                dot: None,
            })
        }
        (None, None) => Err("reduce needs a word argument or --batch FILE".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects word together with --batch"),
    }
}

// -------------------------------------------------------------------
// ball

fn cmd_ball(cli: &Cli, presentation: &Path, radius: usize, center: &str) -> Result<Report, String> {
    check_cap(cli, "radius", radius)?;
    let (b, sha) = load_building(presentation)?;
    let center = parse_chamber(&b, center)?;
    let ball = b.ball(&center, radius);

    // verification: breadth-first recount over locally generated
    // neighbors must give the same chamber set, and the output must be
    // sorted and duplicate-free
    let mut seen: BTreeSet<Chamber> = BTreeSet::from([center.clone()]);
    let mut frontier = vec![center.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for c in &frontier {
            for (_, _, nb) in b.neighbors(c) {
                if seen.insert(nb.clone()) {
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    let sorted_unique = ball.windows(2).all(|w| w[0] < w[1]);
    let bfs_recount = seen.len() == ball.len() && ball.iter().all(|c| seen.contains(c));
    let pass = sorted_unique && bfs_recount;

    let center_label = b.chamber_label(&center);
    let mut text = format!("chambers: {}\n", ball.len());
    for c in &ball {
        text.push_str(&b.chamber_label(c));
        text.push('\n');
    }
    let dot = format!(
        "// tool: rabuild {}\n// command: ball\n// input_sha256: {sha}\n// seed: {}\n// radius: {radius}  center: {center_label}\n{}",
        env!("CARGO_PKG_VERSION"),
        cli.seed,
        b.ball_to_dot(&ball),
    );
    Ok(Report {
        command: "ball",
        input_sha256: sha,
        params: json!({"radius": radius, "center": center_label}),
        result: json!({
            "count": ball.len(),
            "graph": b.ball_to_json(&ball),
            "checks": {"sorted_unique": sorted_unique, "bfs_recount": bfs_recount},
        }),
        pass,
        text,
        dot: Some(dot),
    })
}

// -------------------------------------------------------------------
// treewall

fn wall_class_matches_perp(class: WallClass, perp: PerpClass) -> bool {
    matches!(
        (class, perp),
        (WallClass::Vertex, PerpClass::Trivial)
            | (WallClass::Finite, PerpClass::FiniteNontrivial)
            | (WallClass::Infinite, PerpClass::Infinite)
    )
}

fn cmd_treewall(
    cli: &Cli,
    presentation: &Path,
    wall_type: &str,
    chamber: &str,
    radius: usize,
) -> Result<Report, String> {
    check_cap(cli, "radius", radius)?;
    let (b, sha) = load_building(presentation)?;
    let s = type_by_name(&b, wall_type)?;
    let chamber = parse_chamber(&b, chamber)?;
    let sys = b.product().system();
    let gp = b.product();

    let wall = TreeWall::of(&b, &chamber, s);
    let perp_class = sys.classify_perp(s);
    let perp_names: Vec<String> = sys.s_perp(s).iter().map(|&g| sys.name(g).to_owned()).collect();
    let epicormic = wall.epicormic_chambers(&b, radius);
    let count = epicormic.chambers.len();

    let consistent = wall_class_matches_perp(wall.class(), perp_class);
    let count_ok = match wall.class() {
        WallClass::Vertex => {
            radius == 0 || (!epicormic.truncated && count == gp.order_of(s) as usize)
        }
        WallClass::Finite => {
            // the wall is the full finite {s} ∪ s⊥ residue; its diameter
            // is the number of wall types, so a window at least that
            // large must enumerate it exactly
            let diameter = 1 + perp_names.len();
            let full: usize = std::iter::once(s)
                .chain(sys.s_perp(s))
                .map(|g| gp.order_of(g) as usize)
                .product();
            if radius >= diameter {
                !epicormic.truncated && count == full
            } else {
                true
            }
        }
        WallClass::Infinite => epicormic.truncated,
    };
    let pass = consistent && count_ok;

    let classification = serde_json::to_value(wall.class()).expect("plain enum");
    let class_text = classification.as_str().expect("string enum").to_owned();
    let text = format!(
        "type: {wall_type}\nclassification: {class_text}\nepicormic chambers within {radius}: {count}{}\n",
        if epicormic.truncated { " (truncated)" } else { "" },
    );
    Ok(Report {
        command: "treewall",
        input_sha256: sha,
        params: json!({
            "type": wall_type,
            "chamber": b.chamber_label(&chamber),
            "window": radius,
        }),
        result: json!({
            "classification": classification,
            "perp": perp_names,
            "perp_class": serde_json::to_value(perp_class).expect("plain enum"),
            "residue_representative": b.chamber_label(wall.residue_rep()),
            "epicormic_count": count,
            "epicormic_truncated": epicormic.truncated,
            "checks": {"perp_consistent": consistent, "count_in_range": count_ok},
        }),
        pass,
        text,
        dot: None,
    })
}

// -------------------------------------------------------------------
// separate

fn cmd_separate(
    cli: &Cli,
    presentation: &Path,
    wall_type: &str,
    chamber: &str,
    radius: usize,
) -> Result<Report, String> {
    check_cap(cli, "window", radius)?;
    let (b, sha) = load_building(presentation)?;
    let s = type_by_name(&b, wall_type)?;
    let chamber = parse_chamber(&b, chamber)?;
    let wall = TreeWall::of(&b, &chamber, s);
    let report = wall.separation_report(&b, radius);
    let pass = report.pass;
    let text = format!(
        "type: {wall_type}\nlabels: {}/{}\nrefines: {}\npanel_separated: {}\npass: {}\n",
        report.labels_found, report.q, report.refines, report.panel_separated, report.pass,
    );
    Ok(Report {
        command: "separate",
        input_sha256: sha,
        params: json!({
            "type": wall_type,
            "chamber": b.chamber_label(&chamber),
            "window": radius,
        }),
        result: serde_json::to_value(&report).map_err(|e| e.to_string())?,
        pass,
        text,
        dot: None,
    })
}

// -------------------------------------------------------------------
// retract-audit

fn cmd_retract_audit(cli: &Cli, presentation: &Path, radius: usize) -> Result<Report, String> {
    check_cap(cli, "radius", radius)?;
    let (b, sha) = load_building(presentation)?;
    let sys = b.product().system();
    let base = b.base_chamber();
    let apartment = b.default_apartment(base.clone());
    let ball = b.ball(&base, radius);

    // retraction is computed once per chamber and audited three ways
    let retracted: Vec<Chamber> = ball.iter().map(|c| b.retraction(&apartment, c)).collect();

    // (a) preimage of every wall trace equals the wall's epicormic set
    let mut types = Vec::new();
    let mut wall_mismatches = 0usize;
    for s in sys.gens() {
        let wall = TreeWall::of(&b, &base, s);
        let mut epicormic = 0usize;
        let mut mismatched: Vec<String> = Vec::new();
        for (c, rho) in ball.iter().zip(&retracted) {
            let direct = wall.epicormic(&b, c);
            if direct {
                epicormic += 1;
            }
            if direct != wall.epicormic(&b, rho) {
                mismatched.push(b.chamber_label(c));
            }
        }
        wall_mismatches += mismatched.len();
        types.push(json!({
            "type": sys.name(s),
            "epicormic": epicormic,
            "mismatches": mismatched,
        }));
    }

    // (b) chambers already in the apartment are fixed
    let mut apartment_chambers = 0usize;
    let mut fixed_failures = 0usize;
    // (c) the Weyl distance from the base is preserved
    let mut delta_failures = 0usize;
    for (c, rho) in ball.iter().zip(&retracted) {
        if b.apartment_coordinate(&apartment, c).is_some() {
            apartment_chambers += 1;
            if rho != c {
                fixed_failures += 1;
            }
        }
        if b.delta_w(&base, c) != b.delta_w(&base, rho) {
            delta_failures += 1;
        }
    }

    let pass = wall_mismatches == 0 && fixed_failures == 0 && delta_failures == 0;
    let text = format!(
        "chambers: {}\nwall mismatches: {wall_mismatches}\napartment chambers fixed: {}/{apartment_chambers}\ndelta preserved: {}\npass: {pass}\n",
        ball.len(),
        apartment_chambers - fixed_failures,
        delta_failures == 0,
    );
    Ok(Report {
        command: "retract-audit",
        input_sha256: sha,
        params: json!({"radius": radius}),
        result: json!({
            "chambers": ball.len(),
            "types": types,
            "apartment_chambers": apartment_chambers,
            "apartment_fixed_failures": fixed_failures,
            "delta_preserved": delta_failures == 0,
        }),
        pass,
        text,
        dot: None,
    })
}

// -------------------------------------------------------------------
// lattice-demo

fn cmd_lattice_demo(cli: &Cli, ray: &Path, n: usize) -> Result<Report, String> {
    check_cap(cli, "demo level n", n)?;
    let (spec, sha) = load_ray(ray)?;
    let horizon = LatticeModel::recommended_horizon(n);
    let model = LatticeModel::build(&spec, horizon).map_err(|e| e.to_string())?;
    let kind = serde_json::to_value(model.kind()).expect("plain enum");
    let covolume = model.covolume_partial(20).to_string();
    let params = json!({"n": n, "horizon": horizon});

    match model.find_disconnection_certificate(n) {
        Ok(cert) => {
            let verify = model.verify_certificate_detailed(&cert);
            let pass = verify.is_ok();
            let text = match &verify {
                Ok(()) => format!(
                    "certificate: wall at ray vertex {}, valence {}, witnesses split at gates {:?}\nverified: true\n",
                    cert.wall_ray_vertex, cert.wall_valence, cert.witness_gates,
                ),
                Err(e) => format!("certificate rejected: {e}\n"),
            };
            Ok(Report {
                command: "lattice-demo",
                input_sha256: sha,
                params,
                result: json!({
                    "model": kind,
                    "chambers_built": model.num_chambers(),
                    "certificate": serde_json::to_value(&cert).map_err(|e| e.to_string())?,
                    "verified": pass,
                    "verify_error": verify.err(),
                    "covolume_partial_20": covolume,
                }),
                pass,
                text,
                dot: None,
            })
        }
        Err(failure) => {
            let message = failure.to_string();
            Ok(Report {
                command: "lattice-demo",
                input_sha256: sha,
                params,
                result: json!({
                    "model": kind,
                    "chambers_built": model.num_chambers(),
                    "certificate": Value::Null,
                    "failure": message,
                    "covolume_partial_20": covolume,
                }),
                pass: false,
                text: format!("no certificate: {failure}\n"),
                dot: None,
            })
        }
    }
}
