//! Command-line surface for constructing the groups, computing invariants,
//! verifying the algebra-isomorphism counterexample and emitting the
//! classification tables and graphs.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 usage error.
//! All subcommands respect the MIP_MAX_ORDER environment variable
//! (default 4096) as the order guard for search-based computations.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use modiso_core::bases;
use modiso_core::group::iso::{self, MaxClassKind, Presentation};
use modiso_core::report::tables::{kernel_table, quotient_table, Format, TableDoc, TableRow};
use modiso_core::report::{self, graph};
use modiso_core::{Family, FieldSpec, Group, GroupParams, Mode, Theta};

const DEFAULT_MAX_ORDER: u64 = 4096;

#[derive(Parser)]
#[command(name = "modiso", version, about = "Two-generated finite 2-groups with dihedral central quotient and their modular group algebras", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the document to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Family label D1..D6 (alternative: --theta)
    #[arg(long, conflicts_with = "theta")]
    family: Option<String>,
    /// Raw theta "r,s,t" (alternative: --family)
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    l: u32,
    /// Allow l = 1 (labels may coincide there)
    #[arg(long, default_value_t = false)]
    degenerate: bool,
}

impl ParamArgs {
    fn parse(&self) -> Result<GroupParams, String> {
        let mode = if self.degenerate || self.l == 1 {
            Mode::Degenerate
        } else {
            Mode::Standard
        };
        if let Some(t) = &self.theta {
            let parts: Vec<&str> = t.split(',').collect();
            if parts.len() != 3 {
                return Err(format!("--theta expects r,s,t; got {t:?}"));
            }
            let r: u8 = parts[0].trim().parse().map_err(|e| format!("theta r: {e}"))?;
            let s: u64 = parts[1].trim().parse().map_err(|e| format!("theta s: {e}"))?;
            let tt: u8 = parts[2].trim().parse().map_err(|e| format!("theta t: {e}"))?;
            GroupParams::from_theta_in_mode(Theta { r, s, t: tt }, self.n, self.m, self.l, mode)
                .map_err(|e| e.to_string())
        } else if let Some(f) = &self.family {
            let fam = Family::from_str(f).map_err(|e| e.to_string())?;
            GroupParams::family_in_mode(fam, self.n, self.m, self.l, mode)
                .map_err(|e| e.to_string())
        } else {
            Err("one of --family or --theta is required".into())
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a group; print order, landmark subgroups and class counts
    Group {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Invariant fingerprint of one group
    Invariants {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        field_deg: u8,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Verify the algebra isomorphism F.D1(n,m,l) = F.D2(n,m,l) along with
    /// group non-isomorphism evidence (needs n > m > l >= 2)
    VerifyCounterexample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        field_deg: u8,
    },
    /// Kernel sizes |K(G)| of the 2^m-power map for all six families
    KernelTable {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        field_deg: u8,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Maximal-quotient table of the groups at (n, m, l)
    Quotients {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// DOT graph of groups and their recognized maximal quotients
    QuotientGraph {
        #[arg(long, default_value_t = 128)]
        max_order: u64,
    },
    /// Decide how a pair of families at common (n, m, l) is separated
    ClassifyPair {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        field_deg: u8,
    },
    /// Brute-force isomorphism test between two presented groups
    BruteIso {
        /// "family,n,m,l" (e.g. "6,1,1,2" or "D6,1,1,2"), or d16/sd16/q16
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Executable group-base congruence checks on the crossed base
    BaseLemmas {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        field_deg: u8,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 271828)]
        seed: u64,
    },
}

fn max_order_guard() -> u64 {
    std::env::var("MIP_MAX_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

enum Outcome {
    Ok(String),
    ClaimFailed(String),
    Usage(String),
}

fn json_doc(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Flat key/value projection of a JSON object for md and csv output.
fn flat_doc(title: &str, v: &serde_json::Value, format: Format) -> String {
    fn flatten(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, val) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    flatten(&key, val, out);
                }
            }
            serde_json::Value::Array(items)
                if items.iter().all(|i| !i.is_object() && !i.is_array()) =>
            {
                let joined = items
                    .iter()
                    .map(|i| i.to_string().trim_matches('"').to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push((prefix.to_string(), joined));
            }
            serde_json::Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), item, out);
                }
            }
            other => out.push((
                prefix.to_string(),
                other.to_string().trim_matches('"').to_string(),
            )),
        }
    }
    let mut pairs = Vec::new();
    flatten("", v, &mut pairs);
    let doc = TableDoc {
        title: title.to_string(),
        columns: vec!["value".to_string()],
        rows: pairs
            .into_iter()
            .map(|(k, v)| TableRow {
                label: k,
                cells: vec![v],
            })
            .collect(),
    };
    doc.render(format)
}

fn render_payload(title: &str, payload: &serde_json::Value, format: &str) -> Result<String, String> {
    match Format::from_str(format) {
        Ok(Format::Json) => Ok(json_doc(payload)),
        Ok(f) => Ok(flat_doc(title, payload, f)),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_iso_side(s: &str) -> Result<Presentation, String> {
    let lower = s.trim().to_ascii_lowercase();
    for (prefix, kind) in [
        ("sd", MaxClassKind::Semidihedral),
        ("q", MaxClassKind::Quaternion),
        ("d", MaxClassKind::Dihedral),
    ] {
        if let Some(rest) = lower.strip_prefix(prefix) {
            if let Ok(order) = rest.parse::<u64>() {
                if order.is_power_of_two() && order >= 8 {
                    return Ok(Presentation::MaximalClass {
                        kind,
                        log2_order: order.ilog2(),
                    });
                }
            }
        }
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected \"family,n,m,l\" or a maximal-class name like q16; got {s:?}"
        ));
    }
    let family = Family::from_str(parts[0]).map_err(|e| e.to_string())?;
    let n: u32 = parts[1].trim().parse().map_err(|e| format!("n: {e}"))?;
    let m: u32 = parts[2].trim().parse().map_err(|e| format!("m: {e}"))?;
    let l: u32 = parts[3].trim().parse().map_err(|e| format!("l: {e}"))?;
    Ok(Presentation::Dice { family, n, m, l })
}

fn presentation_group(p: &Presentation) -> Result<Group, String> {
    match *p {
        Presentation::Dice { family, n, m, l } => {
            let mode = if l == 1 { Mode::Degenerate } else { Mode::Standard };
            Group::new(GroupParams::presented(family, n, m, l, mode).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        }
        Presentation::MaximalClass { .. } => {
            Err("maximal-class groups are only supported on the --b side".into())
        }
        Presentation::RawTheta { theta, n, m, l } => {
            let mode = if l == 1 { Mode::Degenerate } else { Mode::Standard };
            Group::new(
                GroupParams::from_theta_in_mode(theta, n, m, l, mode).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let guard = max_order_guard();
    match &cli.cmd {
        Cmd::Group { params, format } => {
            let p = match params.parse() {
                Ok(p) => p,
                Err(e) => return Outcome::Usage(e),
            };
            if p.order() > guard {
                return Outcome::Usage(format!(
                    "order {} exceeds MIP_MAX_ORDER = {guard}",
                    p.order()
                ));
            }
            let g = match Group::new(p) {
                Ok(g) => g,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let landmark = |s: &modiso_core::group::subgroups::SubgroupData| {
                json!({
                    "order": s.order(),
                    "abelian_invariants": s.abelian_invariants(),
                })
            };
            let payload = json!({
                "label": p.label(),
                "order": g.group_order(),
                "element_count": g.group_order(),
                "class_count": g.class_count(),
                "nilpotency_class": g.nilpotency_class(),
                "coclass": g.coclass(),
                "center": landmark(g.center()),
                "derived": landmark(g.derived()),
                "frattini": landmark(g.frattini()),
                "socle": landmark(g.socle()),
            });
            match render_payload(&p.label(), &payload, format) {
                Ok(s) => Outcome::Ok(s),
                Err(e) => Outcome::Usage(e),
            }
        }
        Cmd::Invariants { params, field_deg, format } => {
            let p = match params.parse() {
                Ok(p) => p,
                Err(e) => return Outcome::Usage(e),
            };
            if p.order() > guard {
                return Outcome::Usage(format!(
                    "order {} exceeds MIP_MAX_ORDER = {guard}",
                    p.order()
                ));
            }
            let field = match FieldSpec::new(*field_deg) {
                Ok(f) => f,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            match report::fingerprint_with(p, field, true, guard.min(1024)) {
                Ok(r) => {
                    let payload = serde_json::to_value(&r).expect("serializable");
                    match render_payload(&p.label(), &payload, format) {
                        Ok(s) => Outcome::Ok(s),
                        Err(e) => Outcome::Usage(e),
                    }
                }
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        Cmd::VerifyCounterexample { n, m, l, field_deg } => {
            if !(n > m && m > l && *l >= 2) {
                return Outcome::Usage(format!(
                    "the counterexample needs n > m > l >= 2; got ({n},{m},{l})"
                ));
            }
            if 1u64 << (n + m + l) > guard {
                return Outcome::Usage(format!(
                    "order 2^{} exceeds MIP_MAX_ORDER = {guard}",
                    n + m + l
                ));
            }
            let field = match FieldSpec::new(*field_deg) {
                Ok(f) => f,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let base = match bases::crossed_base(*n, *m, *l, field) {
                Ok(b) => b,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let checks = base.verify_relations();
            let rank = if checks.all() {
                base.hom_rank().ok()
            } else {
                None
            };
            let order = 1u64 << (n + m + l);
            let noniso = {
                let d1 = Group::new(GroupParams::family(Family::D1, *n, *m, *l).unwrap())
                    .expect("valid parameters");
                iso::brute_force_isomorphic(
                    &d1,
                    &Presentation::Dice {
                        family: Family::D2,
                        n: *n,
                        m: *m,
                        l: *l,
                    },
                    guard,
                )
                .ok()
                .map(|same| !same)
            };
            let exponents = {
                let mut out = Vec::new();
                for f in [Family::D1, Family::D2] {
                    let g = Group::new(GroupParams::family(f, *n, *m, *l).unwrap())
                        .expect("valid parameters");
                    let dset: Vec<_> = g.derived().elements(&g).collect();
                    out.push(g.centralizer(&dset).exponent(&g));
                }
                out
            };
            let verified = checks.all()
                && rank == Some(order as usize)
                && noniso.unwrap_or(true)
                && exponents[0] != exponents[1];
            let payload = json!({
                "parameters": {"n": n, "m": m, "l": l},
                "field_degree": field_deg,
                "relations": checks,
                "relations_all_pass": checks.all(),
                "rank": rank,
                "order": order,
                "rank_is_full": rank == Some(order as usize),
                "groups_nonisomorphic": noniso,
                "centralizer_exponents": exponents,
                "verified": verified,
            });
            if verified {
                Outcome::Ok(json_doc(&payload))
            } else {
                Outcome::ClaimFailed(json_doc(&payload))
            }
        }
        Cmd::KernelTable { n, m, l, field_deg, format } => {
            if 1u64 << (n + m + l) > guard {
                return Outcome::Usage(format!(
                    "order 2^{} exceeds MIP_MAX_ORDER = {guard}",
                    n + m + l
                ));
            }
            let doc = match kernel_table(&[(*n, *m, *l)], *field_deg) {
                Ok(d) => d,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            match Format::from_str(format) {
                Ok(f) => Outcome::Ok(doc.render(f)),
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        Cmd::Quotients { n, m, l, format } => {
            if 1u64 << (n + m + l) > guard {
                return Outcome::Usage(format!(
                    "order 2^{} exceeds MIP_MAX_ORDER = {guard}",
                    n + m + l
                ));
            }
            let doc = match quotient_table(*n, *m, *l, guard) {
                Ok(d) => d,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            match Format::from_str(format) {
                Ok(f) => Outcome::Ok(doc.render(f)),
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        Cmd::QuotientGraph { max_order } => {
            if *max_order > guard {
                return Outcome::Usage(format!(
                    "--max-order {max_order} exceeds MIP_MAX_ORDER = {guard}"
                ));
            }
            match graph::quotient_graph(*max_order, guard) {
                Ok(dot) => Outcome::Ok(dot),
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        Cmd::ClassifyPair { a, b, n, m, l, field_deg } => {
            if 1u64 << (n + m + l) > guard {
                return Outcome::Usage(format!(
                    "order 2^{} exceeds MIP_MAX_ORDER = {guard}",
                    n + m + l
                ));
            }
            let field = match FieldSpec::new(*field_deg) {
                Ok(f) => f,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let parse_family = |s: &str| -> Result<GroupParams, String> {
                let fam = Family::from_str(s).map_err(|e| e.to_string())?;
                GroupParams::family(fam, *n, *m, *l).map_err(|e| e.to_string())
            };
            let (pa, pb) = match (parse_family(a), parse_family(b)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Outcome::Usage(e),
            };
            match report::distinguish_pair_with(pa, pb, field, guard) {
                Ok(v) => Outcome::Ok(json_doc(&serde_json::to_value(&v).expect("serializable"))),
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        Cmd::BruteIso { a, b } => {
            let pa = match parse_iso_side(a) {
                Ok(p) => p,
                Err(e) => return Outcome::Usage(e),
            };
            let pb = match parse_iso_side(b) {
                Ok(p) => p,
                Err(e) => return Outcome::Usage(e),
            };
            let ga = match presentation_group(&pa) {
                Ok(g) => g,
                Err(e) => return Outcome::Usage(e),
            };
            match iso::brute_force_isomorphic(&ga, &pb, guard) {
                Ok(iso_found) => {
                    let payload = json!({
                        "a": pa.label(),
                        "b": pb.label(),
                        "isomorphic": iso_found,
                    });
                    Outcome::Ok(json_doc(&payload))
                }
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        Cmd::BaseLemmas { n, m, l, field_deg, trials, seed } => {
            if 1u64 << (n + m + l) > guard {
                return Outcome::Usage(format!(
                    "order 2^{} exceeds MIP_MAX_ORDER = {guard}",
                    n + m + l
                ));
            }
            let field = match FieldSpec::new(*field_deg) {
                Ok(f) => f,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let base = match bases::crossed_base(*n, *m, *l, field) {
                Ok(b) => b,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            match bases::base_lemma_checks(&base, *trials, *seed) {
                Ok(rep) => {
                    let all = rep.all();
                    let payload = serde_json::to_value(&rep).expect("serializable");
                    if all {
                        Outcome::Ok(json_doc(&payload))
                    } else {
                        Outcome::ClaimFailed(json_doc(&payload))
                    }
                }
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Outcome::Ok(s) => (s, ExitCode::SUCCESS),
        Outcome::ClaimFailed(s) => (s, ExitCode::from(1)),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
        }
    }
    code
}
