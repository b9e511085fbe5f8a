//! `cbforge`: validate commutator blueprints and run the rank-1 and rank-2
//! constructions on them.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical violation,
//! 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand};

use cbforge::blueprints::{validate_cb1, validate_cb2, validate_weyl, Blueprint};
use cbforge::chambers::{appendix_conjugation_check, braid_check, build_cj, verify_action, verify_building};
use cbforge::coxeter::{Gen, Word};
use cbforge::galleries::DEFAULT_GALLERY_CAP;
use cbforge::groupforge::{summarize, validate_cb3};
use cbforge::identities::verify_catalog;
use cbforge::parabolics::{audit_residues, tau_on_truncation};
use cbforge::report::{Limits, Report};

#[derive(Parser, Debug)]
#[command(name = "cbforge", version, about = "Commutator blueprints over F2 on Coxeter systems")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Blueprint file.
    #[arg(long, global = true, conflicts_with = "builtin")]
    blueprint: Option<PathBuf>,
    /// Built-in blueprint, e.g. rank2:m6lr or allempty:universal3.
    #[arg(long, global = true)]
    builtin: Option<String>,
    /// Ball radius.
    #[arg(long, global = true, default_value_t = 4)]
    radius: usize,
    /// Maximum number of galleries enumerated per element.
    #[arg(long, global = true, default_value_t = DEFAULT_GALLERY_CAP, value_parser = clap::value_parser!(usize))]
    cap_galleries: usize,
    /// Subgroups above 2^N elements are not enumerated.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..=64))]
    cap_group_bits: u32,
    /// Write line-structured records to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// CB1, CB2, CB3 and Weyl-invariance over the ball.
    Validate,
    /// Order, nilpotency class and lower central series of U_w.
    Group {
        /// Dotted 1-based word; defaults to the longest element in rank 2.
        #[arg(long)]
        word: Option<String>,
    },
    /// tau_s on the residues along the wall of alpha_s and on truncations.
    Residue {
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// The rank-2 chamber system for {s, t}: building axioms, action, braid relation.
    Chambers {
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Write chambers and adjacency edges to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// The rewriting identities inside U_{s,t} and, in rank at least 3, the
    /// braid relation on generators of N_{s,t}.
    Appendix {
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Roots crossed by w, or by every element of the ball.
    Roots {
        #[arg(long)]
        word: Option<String>,
    },
}

/// Output of a command: human text and the reports it produced.
#[derive(Default)]
struct Outcome {
    text: String,
    reports: Vec<Report>,
}

impl Outcome {
    fn add(&mut self, rep: Report) {
        let _ = write!(self.text, "{rep}");
        self.reports.push(rep);
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    fn records(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let _ = writeln!(out, "REPORT title=\"{}\" verdict={} checks={} violations={}", r.title, r.verdict(), r.checks, r.violations.len());
            for n in &r.notes {
                let _ = writeln!(out, "NOTE {n}");
            }
            for v in &r.violations {
                let _ = writeln!(out, "{v}");
            }
        }
        out
    }
}

fn load(config: &RunConfig) -> Result<Blueprint, String> {
    match (&config.blueprint, &config.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let name = path.file_stem().map_or("blueprint".into(), |s| s.to_string_lossy().into_owned());
            Blueprint::ingest(name, &text).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, Some(name)) => Blueprint::builtin(name).map_err(|e| e.to_string()),
        _ => Err("give exactly one of --blueprint PATH or --builtin NAME".into()),
    }
}

fn generator(bp: &Blueprint, one_based: usize) -> Result<Gen, String> {
    let rank = bp.system().rank();
    if one_based == 0 || one_based > rank {
        return Err(format!("generator {one_based} out of range for rank {rank}"));
    }
    Ok(one_based - 1)
}

fn word(bp: &Blueprint, text: &str) -> Result<Word, String> {
    let w = Word::parse_dotted(text).map_err(|e| e.to_string())?;
    for &g in w.letters() {
        generator(bp, g + 1)?;
    }
    Ok(w)
}

fn validate(bp: &Blueprint, r: usize, limits: &Limits) -> Result<Outcome, String> {
    let reports = thread::scope(|scope| {
        let cb1 = scope.spawn(|| validate_cb1(bp, r, limits).map_err(|e| e.to_string()));
        let cb2 = scope.spawn(|| validate_cb2(bp, limits).map_err(|e| e.to_string()));
        let cb3 = scope.spawn(|| validate_cb3(bp, r, limits).map_err(|e| e.to_string()));
        let weyl = scope.spawn(|| validate_weyl(bp, r, limits).map_err(|e| e.to_string()));
        [cb1, cb2, cb3, weyl].map(|h| h.join().unwrap_or_else(|_| Err("validator panicked".into())))
    });
    let mut out = Outcome::default();
    for w in bp.warnings() {
        out.line(format!("warning: {w}"));
    }
    for rep in reports {
        out.add(rep?);
    }
    Ok(out)
}

fn group(bp: &Blueprint, w: Option<&str>, limits: &Limits) -> Result<Outcome, String> {
    let sys = bp.system();
    let w = match w {
        Some(text) => word(bp, text)?,
        None if sys.rank() == 2 => sys.longest_element(&[0, 1]).map_err(|e| e.to_string())?,
        None => return Err("--word is required in rank above 2".into()),
    };
    let summary = summarize(bp, &w, limits).map_err(|e| e.to_string())?;
    let mut out = Outcome::default();
    out.line(format!("w={} gallery={}", summary.w, summary.base));
    out.line(format!("order=2^{}={}", summary.order_bits, 1u128 << summary.order_bits));
    match (&summary.series_bits, summary.class()) {
        (Some(series), Some(class)) => {
            let parts: Vec<String> = series.iter().map(|b| format!("2^{b}")).collect();
            out.line(format!("class={class}"));
            out.line(format!("lower central series: {}", parts.join(" > ")));
        }
        _ => out.line(format!("class=unknown (group above 2^{} elements)", limits.group_bits)),
    }
    out.add(summary.cross_check);
    Ok(out)
}

fn residue(bp: &Blueprint, s: Gen, r: usize, limits: &Limits) -> Result<Outcome, String> {
    let sys = bp.system();
    let mut out = Outcome::default();
    let audits = audit_residues(bp, s, r, limits).map_err(|e| e.to_string())?;
    out.line(format!("{} residues on the wall of alpha_{}", audits.len(), s + 1));
    for audit in audits {
        for rep in audit.reports() {
            out.add(rep.clone());
        }
    }
    let mut trunc = Report::new(format!("truncations {} s={} r={r}", bp.name(), s + 1));
    for w in sys.ball(r).map_err(|e| e.to_string())? {
        if sys.is_left_descent(s, &w) {
            continue;
        }
        trunc.absorb(tau_on_truncation(bp, &w, s, r + 1, limits).map_err(|e| e.to_string())?);
    }
    let notes = std::mem::take(&mut trunc.notes);
    let (verified, unrepresentable) = notes.iter().fold((0, 0), |(v, u), n| {
        let nums: Vec<usize> = n.split_whitespace().filter_map(|x| x.parse().ok()).collect();
        (v + nums.first().copied().unwrap_or(0), u + nums.get(1).copied().unwrap_or(0))
    });
    trunc.note(format!("conjugation formula: {verified} verified, {unrepresentable} not representable"));
    out.add(trunc.finish());
    Ok(out)
}

fn chambers(bp: &Blueprint, s: Gen, t: Gen, dump: Option<&PathBuf>, limits: &Limits) -> Result<Outcome, String> {
    let cs = build_cj(bp, s, t, limits).map_err(|e| e.to_string())?;
    let mut out = Outcome::default();
    let building = verify_building(&cs);
    let mut action = Vec::new();
    for x in 0..2 {
        action.push(verify_action(&cs, x).map_err(|e| e.to_string())?);
    }
    let braid = braid_check(&cs).map_err(|e| e.to_string())?;
    let action_ok = action.iter().all(Report::passed);
    out.line(format!(
        "{} chambers, building: {}, action: {}, braid: {}",
        cs.len(),
        building.verdict(),
        if action_ok { "PASS" } else { "FAIL" },
        braid.verdict()
    ));
    out.add(building);
    for rep in action {
        out.add(rep);
    }
    out.add(braid);
    if let Some(path) = dump {
        std::fs::write(path, cs.adjacency_dump()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(out)
}

fn appendix(bp: &Blueprint, s: Gen, t: Gen, r: usize, limits: &Limits) -> Result<Outcome, String> {
    let sys = bp.system();
    let m = sys.matrix().order(s, t).ok_or_else(|| format!("m({}, {}) is infinite", s + 1, t + 1))? as usize;
    let mut out = Outcome::default();
    let (rep, outcomes) = verify_catalog(bp, s, t).map_err(|e| e.to_string())?;
    let held = outcomes.iter().filter(|o| o.holds()).count();
    out.line(format!("{held} of {} identities hold", outcomes.len()));
    out.add(rep);
    if sys.rank() >= 3 {
        out.add(appendix_conjugation_check(bp, s, t, r, r + m, limits).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn roots(bp: &Blueprint, w: Option<&str>, r: usize) -> Result<Outcome, String> {
    let sys = bp.system();
    let words = match w {
        Some(text) => vec![sys.normal_form(&word(bp, text)?)],
        None => sys.ball(r).map_err(|e| e.to_string())?,
    };
    let mut out = Outcome::default();
    for w in words {
        let g = cbforge::galleries::Gallery::new(sys, w.clone()).map_err(|e| e.to_string())?;
        let listed: Vec<String> = g.roots().iter().map(ToString::to_string).collect();
        out.line(format!("{w}: {}", if listed.is_empty() { "-".to_string() } else { listed.join(" ") }));
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let c = &cli.config;
    if c.cap_galleries == 0 {
        return Err("--cap-galleries must be positive".into());
    }
    let bp = load(c)?;
    let limits = Limits { galleries: c.cap_galleries, group_bits: c.cap_group_bits };
    let r = c.radius;
    match &cli.command {
        Command::Validate => validate(&bp, r, &limits),
        Command::Group { word } => group(&bp, word.as_deref(), &limits),
        Command::Residue { s } => residue(&bp, generator(&bp, *s)?, r, &limits),
        Command::Chambers { s, t, dump } => chambers(&bp, generator(&bp, *s)?, generator(&bp, *t)?, dump.as_ref(), &limits),
        Command::Appendix { s, t } => appendix(&bp, generator(&bp, *s)?, generator(&bp, *t)?, r, &limits),
        Command::Roots { word } => roots(&bp, word.as_deref(), r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", out.text);
    if let Some(path) = &cli.config.report {
        if let Err(e) = std::fs::write(path, out.records()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if out.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
