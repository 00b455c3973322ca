use std::fmt::Write as _;
use std::io::Read;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use pn_bundles::bundles::DeformSample;
use pn_bundles::{
    bundle_sequences, deform_family, enumerate_admissible, explicit_matrix, hilbert_of_betti, minimize_presentation,
    random_matrix, slope_and_rank_n_semistability, split_bound, BettiLattice, BettiPair, BundleSeq, ExportFormat,
    HilbertFn, PresMatrix, SemistabilityRule,
};

use crate::{
    AdmissibleArgs, CheckArgs, Cli, Command, DeformArgs, EnumerateArgs, Format, HilbertArgs, HilbertSpec, LatticeArgs,
    Mode, PairArgs, PresentArgs,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] pn_bundles::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    /// The report is still the payload; the status says some input failed.
    #[error("not a bundle: {}", sources.join(", "))]
    NotABundle { payload: String, sources: Vec<String> },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
            CliError::NotABundle { .. } => "NotABundle",
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self.code(), "detail": self.to_string() }).to_string()
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Enumerate(args) => enumerate(cli, args),
        Command::Hilbert(args) => hilbert(cli, args),
        Command::Lattice(args) => lattice(cli, args),
        Command::Present(args) => present(cli, args),
        Command::Check(args) => check(cli, args),
        Command::Deform(args) => deform(cli, args),
        Command::Admissible(args) => admissible(cli, args),
    })
}

fn format(cli: &Cli, verb: &str, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<String> = allowed.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
        Err(CliError::Usage(format!(
            "{verb} supports --format {}, not {}",
            names.join("|"),
            format!("{f:?}").to_lowercase()
        )))
    }
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payload serializes");
    s.push('\n');
    s
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn make_pair(args: &PairArgs) -> Result<BettiPair> {
    Ok(BettiPair::new(args.n, args.a.clone(), args.b.clone())?)
}

fn rule(as_printed: bool) -> SemistabilityRule {
    if as_printed {
        SemistabilityRule::AsPrinted
    } else {
        SemistabilityRule::SignCorrected
    }
}

fn enumerate(cli: &Cli, args: &EnumerateArgs) -> Result<String> {
    let fmt = format(cli, "enumerate", &[Format::Json, Format::Csv, Format::Text])?;
    if args.n == 0 || args.rank < 1 {
        return Err(CliError::Usage("need --n >= 1 and --rank >= 1".into()));
    }
    if let Some(c1) = args.c1 {
        let d = args.max_reg.expect("clap enforces --max-reg with --c1");
        let pairs = enumerate_admissible(args.n, args.rank as usize, c1, d);
        return Ok(match fmt {
            Format::Json => to_json(&pairs),
            Format::Csv => lines(pairs.iter().map(|p| format!("{};{}", p.a().to_csv(), p.b().to_csv()))),
            _ => lines(pairs.iter().map(|p| p.to_string())),
        });
    }
    match (args.degree, args.max_reg) {
        (Some(degree), None) => {
            let seqs = bundle_sequences(args.n, args.rank, degree);
            Ok(match fmt {
                Format::Json => to_json(&seqs.iter().map(|s| s.entries()).collect::<Vec<_>>()),
                Format::Csv => lines(seqs.iter().map(|s| csv(s.entries()))),
                _ => lines(seqs.iter().map(BundleSeq::to_caret)),
            })
        }
        (None, Some(d)) => {
            let hs = by_regularity(args.n, args.rank, d);
            Ok(match fmt {
                Format::Json => to_json(&hs),
                Format::Csv => lines(hs.iter().map(|h| format!("{},{}", h.s0(), csv(h.seq().entries())))),
                _ => lines(hs.iter().map(|h| h.to_string())),
            })
        }
        _ => Err(CliError::Usage(
            "enumerate needs exactly one of --degree and --max-reg".into(),
        )),
    }
}

fn csv(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Same result as the library's sequential search, one degree per task.
fn by_regularity(n: u32, r: i64, d: i64) -> Vec<HilbertFn> {
    let degrees: Vec<i64> = (r..=r * (d + 2)).collect();
    degrees
        .par_iter()
        .map(|&degree| {
            bundle_sequences(n, r, degree)
                .into_iter()
                .map(|s| {
                    let s0 = HilbertFn::normalized_anchor(&s);
                    HilbertFn::from_seq(s, s0)
                })
                .filter(|h| h.minimal_betti().regularity() <= d)
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect()
}

fn hilbert_fn(spec: &HilbertSpec) -> Result<HilbertFn> {
    match (&spec.seq, &spec.a, &spec.b) {
        (Some(seq), None, None) => {
            let s = BundleSeq::new(spec.n, seq.0.clone())?;
            let s0 = spec.anchor.unwrap_or_else(|| HilbertFn::normalized_anchor(&s));
            Ok(HilbertFn::from_seq(s, s0))
        }
        (None, a, Some(b)) => {
            let pair = BettiPair::new(spec.n, a.clone().unwrap_or_default(), b.clone())?;
            Ok(hilbert_of_betti(&pair)?)
        }
        _ => Err(CliError::Usage("give either --seq [--anchor] or --a/--b".into())),
    }
}

fn hilbert(cli: &Cli, args: &HilbertArgs) -> Result<String> {
    let fmt = format(cli, "hilbert", &[Format::Json, Format::Csv, Format::Text])?;
    let h = hilbert_fn(&args.spec)?;
    let from = args.from.unwrap_or(h.s0() - 2);
    let to = args.to.unwrap_or(h.s1() + 2);
    if from > to || to - from > 10_000 {
        return Err(CliError::Usage(format!("bad value range {from}..{to}")));
    }
    let values: Vec<(i64, Value)> = (from..=to)
        .map(|t| {
            let v = h.eval(t);
            let v = match u64::try_from(&v) {
                Ok(x) => Value::from(x),
                Err(_) => Value::from(v.to_string()),
            };
            (t, v)
        })
        .collect();
    let (norm, k) = h.normalize();
    let base = h.minimal_betti();
    Ok(match fmt {
        Format::Json => to_json(&json!({
            "hilbert": h,
            "rank": h.rank(),
            "degree": h.degree(),
            "c1": h.c1(),
            "minimal_betti": base,
            "regularity": base.regularity(),
            "normalized": norm,
            "normalizing_twist": k,
            "values": values.iter().map(|(t, v)| json!({"t": t, "h": v})).collect::<Vec<_>>(),
        })),
        Format::Csv => lines(values.iter().map(|(t, v)| format!("{t},{}", plain(v)))),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "hilbert function  {h}");
            let _ = writeln!(s, "rank {}, degree {}, c1 {}", h.rank(), h.degree(), h.c1());
            let _ = writeln!(s, "minimal betti     {base} (regularity {})", base.regularity());
            let _ = writeln!(s, "normalized        {norm} (twist {k})");
            for (t, v) in &values {
                let _ = writeln!(s, "H({t}) = {}", plain(v));
            }
            s
        }
    })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn lattice(cli: &Cli, args: &LatticeArgs) -> Result<String> {
    let fmt = format(cli, "lattice", &[Format::Json, Format::Dot, Format::Text])?;
    let h = hilbert_fn(&args.spec)?;
    let l = BettiLattice::build(&h, args.max_reg)?;
    Ok(match fmt {
        Format::Json => to_json(&l.to_json()),
        Format::Dot => l.export(ExportFormat::Dot),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "hilbert function {h}, regularity <= {}", args.max_reg);
            let _ = writeln!(s, "minimal pair {}, cmax {}", l.base(), l.cmax());
            let _ = writeln!(
                s,
                "grade sizes {:?}, {} cover relations",
                l.rank_sizes(),
                l.hasse().len()
            );
            for c in l.nodes() {
                let p = l.pair(c);
                let _ = writeln!(
                    s,
                    "c={c}  a={}  b={}  q={}  reg={}",
                    p.a(),
                    p.b(),
                    c.len(),
                    p.regularity()
                );
            }
            s
        }
    })
}

fn present(cli: &Cli, args: &PresentArgs) -> Result<String> {
    let fmt = format(cli, "present", &[Format::Json, Format::Text])?;
    let pair = make_pair(&args.pair)?;
    let m = match args.mode {
        Mode::Explicit => explicit_matrix(&pair, cli.prime)?,
        Mode::Random => random_matrix(&pair, cli.prime, cli.seed)?,
    };
    Ok(match fmt {
        Format::Json => to_json(&m.to_json()),
        _ => {
            let j = m.to_json();
            let mut s = String::new();
            let _ = writeln!(s, "{} over F_{}", m.pair(), m.modulus());
            for (row, bi) in j.entries.iter().zip(m.pair().b().iter()) {
                let _ = writeln!(s, "O({:>3}) | {}", -bi, row.join(" | "));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct CheckReport {
    source: String,
    pair: BettiPair,
    is_bundle: bool,
    minimal: Option<BettiPair>,
    slope: Option<String>,
    semistable: Option<bool>,
    split_bound: Option<(u32, usize)>,
}

fn read_source(path: &str) -> Result<String> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn check_one(path: &str, rule: SemistabilityRule) -> Result<CheckReport> {
    let m = PresMatrix::from_json_str(&read_source(path)?)?;
    let (is_bundle, minimal) = match minimize_presentation(&m) {
        Ok((pair, _)) => (true, Some(pair)),
        Err(pn_bundles::Error::NotABundle) => (false, None),
        Err(e) => return Err(e.into()),
    };
    let (slope, semistable) = match &minimal {
        Some(p) => {
            let (mu, verdict) = slope_and_rank_n_semistability(p, rule);
            (Some(mu.to_string()), verdict)
        }
        None => (None, None),
    };
    let split = minimal.as_ref().and_then(|p| split_bound(p).ok());
    Ok(CheckReport {
        source: path.to_string(),
        pair: m.pair().clone(),
        is_bundle,
        minimal,
        slope,
        semistable,
        split_bound: split,
    })
}

fn check(cli: &Cli, args: &CheckArgs) -> Result<String> {
    let fmt = format(cli, "check", &[Format::Json, Format::Text])?;
    if args.files.iter().filter(|f| *f == "-").count() > 1 {
        return Err(CliError::Usage("standard input can be read only once".into()));
    }
    let rule = rule(args.as_printed);
    let reports = args
        .files
        .par_iter()
        .map(|f| check_one(f, rule))
        .collect::<Result<Vec<_>>>()?;
    let payload = match fmt {
        Format::Json => to_json(&reports),
        _ => lines(reports.iter().map(|r| match &r.minimal {
            Some(p) => format!("{}: bundle, minimal pair {p}", r.source),
            None => format!("{}: not a bundle", r.source),
        })),
    };
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.is_bundle)
        .map(|r| r.source.clone())
        .collect();
    if failed.is_empty() {
        Ok(payload)
    } else {
        Err(CliError::NotABundle {
            payload,
            sources: failed,
        })
    }
}

fn deform(cli: &Cli, args: &DeformArgs) -> Result<String> {
    let fmt = format(cli, "deform", &[Format::Json, Format::Text])?;
    let small = BettiPair::new(args.n, args.small.a.clone(), args.small.b.clone())?;
    let big = BettiPair::new(args.n, args.big.a.clone(), args.big.b.clone())?;
    let fam = deform_family(&small, &big, cli.prime, cli.seed)?;
    let at_zero = minimize_presentation(&fam.at(0)).ok().map(|(p, _)| p);
    let samples: Vec<DeformSample> = fam.sample(args.samples, cli.seed.wrapping_add(1));
    let reached = samples.iter().filter(|s| s.pair.as_ref() == Some(&small)).count();
    Ok(match fmt {
        Format::Json => to_json(&json!({
            "small": small,
            "big": big,
            "witness": fam.witness(),
            "at_zero": at_zero,
            "samples": samples,
            "reached_small": reached,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "family from {big} (t = 0) towards {small}, c = {}", fam.witness());
            let show = |p: &Option<BettiPair>| p.as_ref().map_or("not a bundle".to_string(), |p| p.to_string());
            let _ = writeln!(s, "t = 0: {}", show(&at_zero));
            for x in &samples {
                let _ = writeln!(s, "t = {}: {}", x.t, show(&x.pair));
            }
            let _ = writeln!(s, "{reached}/{} samples at the small pair", samples.len());
            s
        }
    })
}

fn admissible(cli: &Cli, args: &AdmissibleArgs) -> Result<String> {
    let fmt = format(cli, "admissible", &[Format::Json, Format::Text])?;
    let pair = make_pair(&args.pair)?;
    let ok = pair.is_admissible();
    if !args.details {
        return Ok(format!("{ok}\n"));
    }
    let (mu, verdict) = slope_and_rank_n_semistability(&pair, rule(args.as_printed));
    let bound = split_bound(&pair).ok();
    let hilbert = ok.then(|| hilbert_of_betti(&pair).ok()).flatten();
    Ok(match fmt {
        Format::Json => to_json(&json!({
            "pair": pair,
            "admissible": ok,
            "l": pair.l(),
            "r": pair.r(),
            "c1": pair.c1(),
            "regularity": pair.regularity(),
            "grading_q": pair.grading_q(),
            "slope": mu.to_string(),
            "semistable": if ok { verdict } else { None },
            "split_bound": bound,
            "hilbert": hilbert,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "{pair}: {}", if ok { "admissible" } else { "not admissible" });
            let _ = writeln!(
                s,
                "l {}, r {}, c1 {}, regularity {}, q {}, slope {mu}",
                pair.l(),
                pair.r(),
                pair.c1(),
                pair.regularity(),
                pair.grading_q()
            );
            if let (true, Some(v)) = (ok, verdict) {
                let _ = writeln!(s, "semistable: {v}");
            }
            if let Some((lo, hi)) = bound {
                let _ = writeln!(s, "rank of the non-split part in [{lo}, {hi}]");
            }
            s
        }
    })
}
