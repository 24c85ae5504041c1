//! exatlas: group facts, (2,3,7) searches, signature arithmetic, and the
//! acceptance checklist, with JSON/Markdown reports and an order-profile
//! cache.
//!
//! Exit codes: 0 success, 1 a checked assertion or requested witness
//! failed, 2 usage or input errors.

mod cache;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use exatlas_core::arith;
use exatlas_core::atlas::{attaining_genera, AtlasRecord};
use exatlas_core::fuchsian::{
    action_genus, divisibility_check, genvec_search, multiplier_ladder,
    normalized_equation_solutions, verify_genvec,
};
use exatlas_core::group::{build_group, GroupHandle, OrderProfile};
use exatlas_core::hurwitz::{hurwitz_search, macbeath_crosscheck, verify_witness};
use exatlas_core::verify::run_all;

use report::{Format, Report};

#[derive(Parser)]
#[command(name = "exatlas", version, about = "Exact exponent bounds for surface group actions")]
struct Cli {
    /// Render the report as JSON
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Render the report as Markdown
    #[arg(long, global = true)]
    md: bool,
    /// Cache directory for order profiles
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Facts about one group
    #[command(subcommand)]
    Group(GroupCmd),
    /// (2,3,7)-generation searches
    #[command(subcommand)]
    Hurwitz(HurwitzCmd),
    /// Signature and multiplier arithmetic
    #[command(subcommand)]
    Fuchsian(FuchsianCmd),
    /// Generating-vector searches
    #[command(subcommand)]
    Genvec(GenvecCmd),
    /// Assembled tables
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// The acceptance checklist
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, exponent, and the element-order histogram
    Info { spec: String },
}

#[derive(Subcommand)]
enum HurwitzCmd {
    /// Search one group for a (2,3,7) generating pair
    Check { spec: String },
    /// Crosscheck the search against the arithmetic criterion over PSL2(F_q)
    Scan(ScanArgs),
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_name = "Q")]
    qmax: u64,
}

#[derive(Subcommand)]
enum FuchsianCmd {
    /// Spherical triangle multipliers down to a threshold
    Ladder(LadderArgs),
    /// Solutions of the normalized extremal signature equation
    Equation(EquationArgs),
}

#[derive(Args)]
struct LadderArgs {
    #[arg(long, value_name = "T")]
    threshold: u64,
}

#[derive(Args)]
struct EquationArgs {
    #[arg(long = "exp", value_name = "E")]
    exponent: u64,
}

#[derive(Subcommand)]
enum GenvecCmd {
    /// Search for a generating vector with the given signature, e.g. (0;2,3,7)
    Search { spec: String, signature: String },
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Genera attaining the 42(g-1) bound
    Genera(GeneraArgs),
}

#[derive(Args)]
struct GeneraArgs {
    #[arg(long, value_name = "P")]
    pmax: u64,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every criterion
    All {
        /// Include the long enumerations
        #[arg(long)]
        deep: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.md {
        Format::Markdown
    } else {
        Format::Text
    };
    match run(cli.command, cli.cache_dir.as_deref(), format) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Ok(passed): the command ran and its assertions held (or not); Err is
/// reserved for unusable input.
fn run(command: Command, cache_dir: Option<&std::path::Path>, format: Format) -> anyhow::Result<bool> {
    match command {
        Command::Group(GroupCmd::Info { spec }) => group_info(&spec, cache_dir, format),
        Command::Hurwitz(HurwitzCmd::Check { spec }) => hurwitz_check(&spec, format),
        Command::Hurwitz(HurwitzCmd::Scan(args)) => hurwitz_scan(args.qmax, format),
        Command::Fuchsian(FuchsianCmd::Ladder(args)) => ladder(args.threshold, format),
        Command::Fuchsian(FuchsianCmd::Equation(args)) => equation(args.exponent, format),
        Command::Genvec(GenvecCmd::Search { spec, signature }) => {
            genvec(&spec, &signature, format)
        }
        Command::Atlas(AtlasCmd::Genera(args)) => genera(args.pmax, format),
        Command::Verify(VerifyCmd::All { deep }) => verify_all(deep, format),
    }
}

fn parse_and_build(text: &str) -> anyhow::Result<(String, GroupHandle)> {
    let spec = parse::parse_group_spec(text).map_err(|e| anyhow!("{e}"))?;
    let canonical = parse::unparse(&spec);
    let g = build_group(&spec).with_context(|| format!("building {canonical}"))?;
    Ok((canonical, g))
}

/// Z-group test straight off a profile: an element of order p^e for every
/// maximal prime power in |G|.
fn profile_is_z_group(profile: &OrderProfile) -> bool {
    arith::factorize(profile.order)
        .into_iter()
        .all(|(p, e)| profile.histogram.contains_key(&p.pow(e)))
}

/// Failed stdout writes (a closed pipe, say) end the output quietly.
fn emit(report: &Report, format: Format, text: &str) {
    use std::io::Write;
    let rendered;
    let out = match format {
        Format::Text => text,
        _ => {
            rendered = format!("{}\n", report.render(format));
            &rendered
        }
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn group_info(
    text: &str,
    cache_dir: Option<&std::path::Path>,
    format: Format,
) -> anyhow::Result<bool> {
    let spec = parse::parse_group_spec(text).map_err(|e| anyhow!("{e}"))?;
    let canonical = parse::unparse(&spec);
    let profile = match cache_dir.and_then(|dir| cache::load(dir, &canonical)) {
        Some(profile) => profile,
        None => {
            let g = build_group(&spec).with_context(|| format!("building {canonical}"))?;
            let profile = g.order_profile();
            if let Some(dir) = cache_dir {
                cache::store(dir, &canonical, &profile)
                    .with_context(|| format!("writing cache under {}", dir.display()))?;
            }
            profile
        }
    };
    let z = profile_is_z_group(&profile);
    let max_order = profile.histogram.keys().next_back().copied().unwrap_or(1);
    let report = Report::new(
        "group info",
        vec![AtlasRecord::new(
            "group-info",
            &[("spec", canonical.clone())],
            serde_json::json!({
                "order": profile.order,
                "exponent": profile.exponent,
                "z_group": z,
                "max_element_order": max_order,
                "order_histogram": profile.histogram,
            }),
            &["build_group", "order_profile", "is_z_group"],
        )],
    );
    let mut text = format!(
        "{canonical}: order {}, exponent {}, z-group {z}\n",
        profile.order, profile.exponent
    );
    let histogram: Vec<String> = profile
        .histogram
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    text.push_str(&format!("element orders (order:count) {}\n", histogram.join(" ")));
    emit(&report, format, &text);
    Ok(true)
}

fn hurwitz_check(text: &str, format: Format) -> anyhow::Result<bool> {
    let (canonical, g) = parse_and_build(text)?;
    let witness = hurwitz_search(&g);
    if let Some(w) = &witness {
        anyhow::ensure!(verify_witness(&g, w), "witness failed re-verification");
    }
    let found = witness.is_some();
    let report = Report::new(
        "hurwitz check",
        vec![AtlasRecord::new(
            "hurwitz-witness",
            &[("spec", canonical.clone())],
            serde_json::json!({
                "order": g.order(),
                "hurwitz": found,
                "witness": witness,
            }),
            &["build_group", "hurwitz_search", "verify_witness"],
        )],
    );
    let text = match &witness {
        Some(w) => format!(
            "{canonical}: order {}, (2,3,7)-generated by sigma = {} and tau = {}\n",
            g.order(),
            w.sigma_repr,
            w.tau_repr
        ),
        None => format!("{canonical}: order {}, no (2,3,7) generating pair\n", g.order()),
    };
    emit(&report, format, &text);
    Ok(found)
}

fn hurwitz_scan(qmax: u64, format: Format) -> anyhow::Result<bool> {
    let scan = macbeath_crosscheck(qmax)?;
    let ok = scan.disagreements.is_empty();
    let hurwitz_qs: Vec<u64> = scan
        .checked
        .iter()
        .filter(|&&(_, h)| h)
        .map(|&(q, _)| q)
        .collect();
    let report = Report::new(
        "hurwitz scan",
        vec![AtlasRecord::new(
            "hurwitz-crosscheck",
            &[("qmax", qmax.to_string())],
            serde_json::json!({
                "checked": scan.checked,
                "generating": hurwitz_qs,
                "disagreements": scan.disagreements,
                "skipped": scan.skipped,
            }),
            &["macbeath_predicate", "hurwitz_search"],
        )],
    );
    let text = format!(
        "q <= {qmax}: {} prime powers, (2,3,7)-generation at q in {:?}, disagreements {:?}\n",
        scan.checked.len(),
        hurwitz_qs,
        scan.disagreements
    );
    emit(&report, format, &text);
    Ok(ok)
}

fn ladder(threshold: u64, format: Format) -> anyhow::Result<bool> {
    let ladder = multiplier_ladder(threshold)?;
    let report = Report::new(
        "fuchsian ladder",
        vec![AtlasRecord::new(
            "multiplier-ladder",
            &[("threshold", threshold.to_string())],
            &ladder,
            &["multiplier_ladder"],
        )],
    );
    let mut text = String::new();
    for row in &ladder.rows {
        let sigs: Vec<String> = row.signatures.iter().map(|s| s.to_string()).collect();
        text.push_str(&format!("{}  <-  {}\n", row.multiplier, sigs.join(", ")));
    }
    emit(&report, format, &text);
    Ok(true)
}

fn equation(exponent: u64, format: Format) -> anyhow::Result<bool> {
    let solutions = normalized_equation_solutions(exponent)?;
    let report = Report::new(
        "fuchsian equation",
        vec![AtlasRecord::new(
            "signature-equation",
            &[("exponent", exponent.to_string())],
            &solutions,
            &["normalized_equation_solutions"],
        )],
    );
    let mut text = format!("exponent {exponent}: {} solutions\n", solutions.len());
    for s in &solutions {
        let flag = if s.infeasible { "  [infeasible]" } else { "" };
        text.push_str(&format!("h = {}, periods {:?}{flag}\n", s.h, s.periods));
    }
    emit(&report, format, &text);
    Ok(true)
}

fn genvec(spec_text: &str, sig_text: &str, format: Format) -> anyhow::Result<bool> {
    let (canonical, g) = parse_and_build(spec_text)?;
    let sig = parse::parse_signature(sig_text).map_err(|e| anyhow!("{e}"))?;
    let genus = action_genus(g.order(), &sig);
    let witness = genus.and_then(|_| genvec_search(&g, &sig));
    let (found, record, divisible) = match witness {
        Some(v) => {
            anyhow::ensure!(verify_genvec(&g, &sig, &v), "vector failed re-verification");
            let rec = exatlas_core::fuchsian::action_record(&g, &sig, Some(v));
            let divisible = divisibility_check(&rec)?;
            (true, Some(rec), Some(divisible))
        }
        None => (false, None, None),
    };
    let report = Report::new(
        "genvec search",
        vec![AtlasRecord::new(
            "generating-vector",
            &[("spec", canonical.clone()), ("signature", sig.to_string())],
            serde_json::json!({
                "order": g.order(),
                "genus": genus,
                "found": found,
                "record": record,
                "divisibility": divisible,
            }),
            &["build_group", "genvec_search", "verify_genvec", "divisibility_check"],
        )],
    );
    let text = match (&genus, found) {
        (None, _) => format!("{canonical} with {sig}: no surface action (genus not an integer >= 2)\n"),
        (Some(genus), true) => {
            format!("{canonical} with {sig}: generating vector found, genus {genus}\n")
        }
        (Some(genus), false) => {
            format!("{canonical} with {sig}: no generating vector (genus would be {genus})\n")
        }
    };
    emit(&report, format, &text);
    Ok(found)
}

fn genera(pmax: u64, format: Format) -> anyhow::Result<bool> {
    let rows = attaining_genera(pmax);
    let report = Report::new(
        "atlas genera",
        vec![AtlasRecord::new(
            "attaining-genera",
            &[("pmax", pmax.to_string())],
            &rows,
            &["attaining_genera"],
        )],
    );
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "p = {:>2}: genus {:>3}, {} surfaces with group {}\n",
            r.p, r.genus, r.surface_count, r.group
        ));
    }
    emit(&report, format, &text);
    Ok(true)
}

fn verify_all(deep: bool, format: Format) -> anyhow::Result<bool> {
    let outcomes = run_all(deep);
    let ok = outcomes.iter().all(|o| o.pass);
    let records: Vec<AtlasRecord> = outcomes
        .iter()
        .map(|o| {
            let provenance: Vec<&str> = o.provenance.iter().map(String::as_str).collect();
            AtlasRecord::new(
                &o.id,
                &[("deep", deep.to_string())],
                serde_json::json!({
                    "description": o.description,
                    "pass": o.pass,
                    "details": o.details,
                }),
                &provenance,
            )
        })
        .collect();
    let report = Report::new("verify all", records);
    let mut text = String::new();
    for o in &outcomes {
        let tag = if o.pass { "[PASS]" } else { "[FAIL]" };
        text.push_str(&format!("{tag} {}: {}\n", o.id, o.description));
        if !o.pass {
            text.push_str(&format!("       {}\n", o.details));
        }
    }
    emit(&report, format, &text);
    Ok(ok)
}
