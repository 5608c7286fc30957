//! `pointless`: construct, verify and count pointless hyperelliptic curves.
//!
//! Exit codes: 0 success, 2 invalid arguments or malformed input, 3 no curve
//! found, 4 a document's claims disagree with recomputation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use pointless::census::{count_pointless, CensusConfig};
use pointless::constructions::{construct_pointless, genus_bound, Construction};
use pointless::curve::{format_element, hasse_weil_min_genus};
use pointless::json::{
    certificate_from_json, curve_from_json, to_pretty, verify_model, CensusReportJson,
    CurveDocument, CurveJson, VerificationJson,
};
use pointless::numtheory::prime_power;
use pointless::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pointless",
    version,
    about = "Pointless hyperelliptic curves over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a smooth genus-g curve over F_q with no rational points.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute smoothness, genus and point counts of a curve document.
    Verify {
        path: PathBuf,
        /// Extension degrees to count points over.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<u32>,
    },
    /// Count pointless smooth equations of genus g over F_q.
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Scan every equation instead of only those with no point at infinity.
        #[arg(long)]
        no_prefilter: bool,
        /// Include the wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Hasse-Weil floor and guaranteed genus for each prime power up to q-max.
    Bounds {
        #[arg(long)]
        q_max: u64,
    },
}

/// A failed command: message for stderr and exit status.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound { .. } => Failure(EXIT_NOT_FOUND, e.to_string()),
            _ => Failure(EXIT_INVALID, e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let result = match cli.command {
        Command::Construct { q, g, format, out } => construct(q, g, format, out),
        Command::Verify { path, k } => verify(&path, &k),
        Command::Census {
            q,
            g,
            jobs,
            no_prefilter,
            timing,
        } => census(q, g, jobs, !no_prefilter, timing),
        Command::Bounds { q_max } => bounds(q_max),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn render_text(c: &Construction) -> pointless::Result<String> {
    let field = c.model.field();
    let cert = &c.certificate;
    let p = &cert.params;
    let mut params = Vec::new();
    if let Some(l) = p.l {
        params.push(format!("l = {l}"));
    }
    if let Some(n) = p.n {
        params.push(format!("n = {n}"));
    }
    let elements = [
        ("a", p.a),
        ("b", p.b),
        ("xi", p.xi),
        ("alpha", p.alpha),
        ("beta", p.beta),
        ("gamma", p.gamma),
        ("c", p.c),
        ("d", p.d),
    ];
    for (name, x) in elements {
        if let Some(x) = x {
            params.push(format!("{name} = {}", format_element(field, x)));
        }
    }
    if let Some(f) = &p.f {
        params.push(format!("f = {f}"));
    }
    if let Some(i) = p.q_index {
        params.push(format!("q_index = {i}"));
    }
    if let Some(i) = p.index {
        params.push(format!("index = {i}"));
    }
    let mut out = format!("curve: {}\n", c.model.describe());
    out += &format!("genus: {}\n", c.model.genus());
    out += &format!(
        "branch: {}{}\n",
        cert.branch,
        if cert.guaranteed {
            ""
        } else {
            " (unguaranteed)"
        }
    );
    if !params.is_empty() {
        out += &format!("params: {}\n", params.join(", "));
    }
    if let Some(s) = cert.s_value {
        out += &format!("s: {}\n", format_element(field, s));
    }
    if let Some(nu) = cert.twist {
        out += &format!("twist: {}\n", format_element(field, nu));
    }
    out += &format!("smooth: {}\n", c.model.is_smooth());
    out += &format!("N1: {}\n", c.model.count_points(1)?);
    Ok(out)
}

fn construct(q: u64, g: u32, format: Format, out: Option<PathBuf>) -> CmdResult {
    let c = match construct_pointless(q, g) {
        Ok(c) => c,
        Err(Error::NotFound {
            hasse_weil_floor,
            genus_bound,
            ..
        }) => {
            return Err(Failure(
                EXIT_NOT_FOUND,
                format!(
                    "no pointless genus-{g} curve found over F_{q} \
                     (hasse_weil_min_genus = {hasse_weil_floor}, genus_bound = {genus_bound})"
                ),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let text = match format {
        Format::Json => to_pretty(&CurveDocument::from_construction(&c)?)?,
        Format::Text => render_text(&c)?,
    };
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| {
            Failure(
                EXIT_INVALID,
                format!("cannot write {}: {e}", path.display()),
            )
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn malformed(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INVALID, format!("malformed document: {msg}"))
}

fn verify(path: &PathBuf, ks: &[u32]) -> CmdResult {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(malformed)?;
    let (curve_json, doc) = if value.get("schema_version").is_some() {
        let doc: CurveDocument = serde_json::from_value(value).map_err(malformed)?;
        (doc.curve.clone(), Some(doc))
    } else {
        let curve: CurveJson = serde_json::from_value(value).map_err(malformed)?;
        (curve, None)
    };
    let model = curve_from_json(&curve_json).map_err(malformed)?;

    let mut ks: Vec<u32> = ks.to_vec();
    if let Some(nk) = doc.as_ref().and_then(|d| d.verification.nk.as_ref()) {
        for key in nk.keys() {
            ks.push(
                key.parse()
                    .map_err(|_| malformed(format!("bad extension degree {key:?}")))?,
            );
        }
    }
    ks.sort_unstable();
    ks.dedup();
    let recomputed = verify_model(&model, &ks)?;
    print!("{}", to_pretty(&recomputed)?);

    let mut mismatches = Vec::new();
    if curve_json.genus != model.genus() {
        mismatches.push(format!(
            "genus claimed {} but the degrees give {}",
            curve_json.genus,
            model.genus()
        ));
    }
    if let Some(doc) = &doc {
        if doc.schema_version != pointless::json::SCHEMA_VERSION {
            return Err(malformed(format!(
                "unsupported schema_version {}",
                doc.schema_version
            )));
        }
        compare_claims(&doc.verification, &recomputed, &mut mismatches);
        let cert = certificate_from_json(model.field(), &doc.certificate).map_err(malformed)?;
        match cert.replay(model.field(), curve_json.genus) {
            Ok(replayed) if replayed == model => {}
            Ok(_) => mismatches.push("certificate replay gives a different curve".into()),
            Err(e) => mismatches.push(format!("certificate replay failed: {e}")),
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure(EXIT_MISMATCH, mismatches.join("; ")))
    }
}

fn compare_claims(claimed: &VerificationJson, actual: &VerificationJson, out: &mut Vec<String>) {
    if claimed.smooth != actual.smooth {
        out.push(format!(
            "smooth claimed {} but is {}",
            claimed.smooth, actual.smooth
        ));
    }
    if claimed.genus != actual.genus {
        out.push(format!(
            "genus claimed {} but is {}",
            claimed.genus, actual.genus
        ));
    }
    if claimed.n1 != actual.n1 {
        out.push(format!("N1 claimed {} but is {}", claimed.n1, actual.n1));
    }
    if let (Some(claimed), Some(actual)) = (&claimed.nk, &actual.nk) {
        for (k, n) in claimed {
            if actual.get(k) != Some(n) {
                out.push(format!("N{k} claimed {n} but is {:?}", actual.get(k)));
            }
        }
    }
}

fn census(q: u64, g: u32, jobs: usize, prefilter: bool, timing: bool) -> CmdResult {
    if jobs == 0 {
        return Err(Failure(EXIT_INVALID, "--jobs must be at least 1".into()));
    }
    let config = CensusConfig {
        prefilter,
        jobs,
        first_only: false,
    };
    let report = count_pointless(q, g, &config)?;
    print!(
        "{}",
        to_pretty(&CensusReportJson::from_report(&report, timing))?
    );
    Ok(())
}

fn bounds(q_max: u64) -> CmdResult {
    if q_max < 2 {
        return Err(Failure(EXIT_INVALID, "--q-max must be at least 2".into()));
    }
    println!("q\thasse_weil_min_genus\tgenus_bound");
    for q in (2..=q_max).filter(|&q| prime_power(q).is_some()) {
        println!("{q}\t{}\t{}", hasse_weil_min_genus(q, 1), genus_bound(q)?);
    }
    Ok(())
}
