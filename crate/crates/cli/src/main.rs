//! The `semh` command line: validation, homology, completion, Schreier
//! analysis, long sequences, theorem checks, cones, naturality, and
//! counterexample search over structure files.
//!
//! Exit codes: 0 all checks passed; 1 a check failed (witness included in
//! the report); 2 usage or parse/validation error; 3 soundness alarm.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semh_cli::format::{self, Document, Resolved};
use semh_cli::search::{self, SearchTarget};
use semh_core::longseq::{
    check_theorem_2_4, check_theorem_2_5, exactness_report, PositionVerdict, SesAnalysis,
    TheoremVerdict,
};

#[derive(Parser)]
#[command(
    name = "semh",
    about = "Homology of chain complexes of semimodules over semirings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Finite,
    Window,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    #[value(name = "2.4")]
    First,
    #[value(name = "2.5")]
    Second,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate every record of a structure file.
    Validate { file: PathBuf },

    /// Compute homology of each complex at a degree.
    Homology {
        file: PathBuf,
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum, default_value = "finite")]
        backend: BackendArg,
        /// Window bound override for the windowed backend.
        #[arg(long)]
        bound: Option<u64>,
    },

    /// Group/ring/module completion of each semimodule and semiring.
    Complete { file: PathBuf },

    /// Validate Schreier sequences and report their recomputed flags.
    Schreier { file: PathBuf },

    /// Assemble the long homology sequence of each Schreier sequence and
    /// report exactness and normality.
    Longseq {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },

    /// Run a main-theorem checker over each Schreier sequence.
    Theorem {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: TheoremArg,
    },

    /// Build mapping cones for each cone request and check the cone
    /// sequence and corollary.
    Cone { file: PathBuf },

    /// Check naturality of the connecting maps over a ladder of two
    /// Schreier sequences connected by three morphisms.
    Naturality {
        file: PathBuf,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
    },

    /// Search a generated corpus for counterexamples and soundness alarms.
    Search {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SOUNDNESS: u8 = 3;

fn main() -> ExitCode {
    // Die quietly when the downstream pager closes the pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load(file: &PathBuf) -> Result<Document, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    format::parse(&text).map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Validate { file } => {
            let doc = load(&file)?;
            for (name, value) in &doc.entries {
                let kind = match value {
                    Resolved::Semiring(sr) => format!("semiring ({} elements)", sr.size()),
                    Resolved::Semimodule(m) => format!("semimodule ({} elements)", m.size()),
                    Resolved::Windowed(w) => {
                        format!(
                            "windowed free carrier (rank {}, bound {})",
                            w.rank(),
                            w.bound()
                        )
                    }
                    Resolved::Hom(_) => "hom".to_owned(),
                    Resolved::MatrixHom { .. } => "matrix hom".to_owned(),
                    Resolved::Complex(c) => {
                        let (lo, hi) = c.window();
                        format!("complex (degrees {lo}..{hi})")
                    }
                    Resolved::WindowedComplex(w) => {
                        let (lo, hi) = w.window();
                        format!("windowed complex (degrees {lo}..{hi})")
                    }
                    Resolved::Morphism(m) => format!("morphism ({:?})", m.kind()),
                    Resolved::Ses(_) => "schreier short exact sequence".to_owned(),
                    Resolved::ConeRequest(_) => "cone request".to_owned(),
                };
                println!("ok {name}: {kind}");
            }
            Ok(0)
        }

        Command::Homology {
            file,
            degree,
            backend,
            bound,
        } => {
            let doc = load(&file)?;
            let mut seen = false;
            for (name, value) in &doc.entries {
                match (value, backend) {
                    (Resolved::Complex(c), BackendArg::Finite) => {
                        seen = true;
                        let h = c.homology(degree).map_err(|e| e.to_string())?;
                        println!(
                            "H_{degree}({name}): {} elements [{}]",
                            h.module.size(),
                            h.module.elements().join(" ")
                        );
                    }
                    (Resolved::WindowedComplex(w), BackendArg::Window) => {
                        seen = true;
                        let complex = match bound {
                            Some(b) => rebuild_with_bound(w, b)?,
                            None => w.clone(),
                        };
                        match complex.homology(degree) {
                            Ok(h) => println!(
                                "H_{degree}({name}): {} classes among {} cycles within bound {} (conclusive)",
                                h.classes.len(),
                                h.cycles.len(),
                                complex.bound()
                            ),
                            Err(inconclusive) => {
                                println!("H_{degree}({name}): {inconclusive}")
                            }
                        }
                    }
                    _ => {}
                }
            }
            if !seen {
                return Err("no complex of the selected backend in the file".to_owned());
            }
            Ok(0)
        }

        Command::Complete { file } => {
            let doc = load(&file)?;
            let mut sound = true;
            for (name, value) in &doc.entries {
                match value {
                    Resolved::Semimodule(m) => {
                        let result = semh_core::completion::complete(m);
                        let injective = result.canonical.is_injective();
                        let cancellative = m.is_cancellative();
                        println!(
                            "K({name}): {} elements; canonical injective: {injective}; cancellative: {cancellative}",
                            result.completed.size()
                        );
                        if injective != cancellative {
                            sound = false;
                        }
                    }
                    Resolved::Semiring(sr) => {
                        let result = semh_core::completion::complete_semiring(sr);
                        println!("K({name}): ring with {} elements", result.completed.size());
                    }
                    Resolved::Windowed(w) => {
                        let k = w.complete();
                        println!(
                            "K({name}): Z^{} (symbolic, window bound {})",
                            k.rank(),
                            k.bound()
                        );
                    }
                    _ => {}
                }
            }
            if sound {
                Ok(0)
            } else {
                println!("SOUNDNESS: canonical-map injectivity disagrees with cancellativity");
                Ok(EXIT_SOUNDNESS)
            }
        }

        Command::Schreier { file } => {
            let doc = load(&file)?;
            for (name, ses) in doc.sequences() {
                let flags = &ses.flags;
                println!("{name}: valid Schreier short exact sequence");
                println!("  sigma ±-morphism: {}", flags.sigma_is_pm);
                println!("  sub row cancellative: {}", flags.a_cancellative);
                println!("  sub row modules: {}", flags.a_modules);
                println!("  quotient row cancellative: {}", flags.c_cancellative);
                println!("  quotient row modules: {}", flags.c_modules);
                println!(
                    "  d-minus preserves representatives: {}",
                    flags.dminus_preserves_reps
                );
                println!("  connecting hypotheses: {}", flags.connecting_hypotheses());
                let (lo, hi) = ses.window();
                for n in lo..=hi {
                    let level = ses.level_at(n).expect("window level");
                    let fibers = ses.c().module_at(n);
                    let reps: usize = (0..fibers.size())
                        .map(|x| level.representatives(x).len())
                        .sum();
                    println!(
                        "  level {n}: {reps} representatives across {} fibers",
                        fibers.size()
                    );
                }
            }
            Ok(0)
        }

        Command::Longseq { file, format } => {
            let doc = load(&file)?;
            let mut code = 0u8;
            let mut reports = Vec::new();
            for (name, ses) in doc.sequences() {
                let analysis = SesAnalysis::new(ses.clone()).map_err(|e| format!("{name}: {e}"))?;
                let seq = match analysis.assemble() {
                    Ok(seq) => seq,
                    Err(semh_core::longseq::LongSeqError::Soundness(detail)) => {
                        println!("{name}: SOUNDNESS: {detail}");
                        println!("--- serialized instance {name} ---");
                        println!("{}", format::dump_ses(name, ses));
                        return Ok(EXIT_SOUNDNESS);
                    }
                    Err(e) => {
                        println!("{name}: cannot assemble: {e}");
                        code = code.max(EXIT_CHECK_FAILED);
                        continue;
                    }
                };
                let report = exactness_report(&seq);
                reports.push(sequence_report(name, &seq, &report, &analysis));
            }
            match format {
                ReportFormat::Text => {
                    for report in &reports {
                        print_sequence_report(report);
                    }
                }
                ReportFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&reports).expect("reports serialize")
                    );
                }
            }
            Ok(code)
        }

        Command::Theorem { file, which } => {
            let doc = load(&file)?;
            let mut alarms = 0usize;
            let mut unevaluable = false;
            for (name, ses) in doc.sequences() {
                let result = match which {
                    TheoremArg::First => check_theorem_2_4(ses),
                    TheoremArg::Second => check_theorem_2_5(ses),
                };
                let verdict = match result {
                    Ok(verdict) => verdict,
                    Err(semh_core::longseq::LongSeqError::HypothesesNotMet(reasons)) => {
                        println!("{name}: cannot evaluate: {}", reasons.join("; "));
                        unevaluable = true;
                        continue;
                    }
                    Err(e) => return Err(format!("{name}: {e}")),
                };
                print_theorem(name, &verdict);
                if !verdict.soundness_alarms.is_empty() {
                    // Preserve the falsifying instance verbatim.
                    println!("--- serialized instance {name} ---");
                    println!("{}", format::dump_ses(name, ses));
                }
                alarms += verdict.soundness_alarms.len();
            }
            if alarms > 0 {
                Ok(EXIT_SOUNDNESS)
            } else if unevaluable {
                Ok(EXIT_CHECK_FAILED)
            } else {
                Ok(0)
            }
        }

        Command::Cone { file } => {
            let doc = load(&file)?;
            let mut alarms = 0usize;
            for (name, value) in &doc.entries {
                let Resolved::ConeRequest(f) = value else {
                    continue;
                };
                let cone = semh_core::cone::mapping_cone(f).map_err(|e| format!("{name}: {e}"))?;
                let (lo, hi) = cone.cone.window();
                println!("{name}: cone over degrees {lo}..{hi}");
                semh_core::cone::completion_commutes(&cone).map_err(|e| format!("{name}: {e}"))?;
                println!("  completion commutes with the cone: yes");
                if f.target().degreewise_cancellative() {
                    semh_core::cone::cone_sequence(f).map_err(|e| format!("{name}: {e}"))?;
                    println!("  connecting maps equal the induced maps of f: yes");
                }
                let verdict =
                    semh_core::cone::check_corollary_2_7(f).map_err(|e| format!("{name}: {e}"))?;
                match verdict.condition {
                    Some(c) => println!("  corollary condition ({c}) applies"),
                    None => println!("  corollary not applicable"),
                }
                for conclusion in &verdict.conclusions {
                    if !conclusion.holds {
                        println!("  conclusion fails: {}", conclusion.label);
                    }
                }
                alarms += verdict.soundness_alarms.len();
            }
            if alarms > 0 {
                Ok(EXIT_SOUNDNESS)
            } else {
                Ok(0)
            }
        }

        Command::Naturality {
            file,
            left,
            right,
            f,
            g,
            h,
        } => {
            let doc = load(&file)?;
            let sequences: Vec<(&String, &semh_core::schreier::SchreierSES)> =
                doc.sequences().collect();
            let pick_ses = |wanted: &Option<String>, index: usize| -> Result<_, String> {
                match wanted {
                    Some(name) => sequences
                        .iter()
                        .find(|(n, _)| *n == name)
                        .map(|(_, s)| (*s).clone())
                        .ok_or_else(|| format!("no sequence named {name}")),
                    None => sequences
                        .get(index)
                        .map(|(_, s)| (*s).clone())
                        .ok_or_else(|| "need two ses records (or --left/--right)".to_owned()),
                }
            };
            let e = pick_ses(&left, 0)?;
            let e2 = pick_ses(&right, 1)?;
            let pick_morphism = |wanted: &Option<String>,
                                 source: &std::sync::Arc<semh_core::chain::ChainComplex>,
                                 target: &std::sync::Arc<semh_core::chain::ChainComplex>|
             -> Result<semh_core::morphism::ChainMorphism, String> {
                if let Some(name) = wanted {
                    return match doc.get(name) {
                        Some(Resolved::Morphism(m)) => Ok(m.clone()),
                        _ => Err(format!("no morphism named {name}")),
                    };
                }
                let matching: Vec<_> = doc
                    .morphisms()
                    .filter(|(_, m)| m.source() == source && m.target() == target)
                    .collect();
                match matching.len() {
                    1 => Ok(matching[0].1.clone()),
                    0 => Err("no morphism connects the chosen rows".to_owned()),
                    _ => Err("ambiguous ladder; use --f/--g/--h".to_owned()),
                }
            };
            let f = pick_morphism(&f, e.a(), e2.a())?;
            let g = pick_morphism(&g, e.b(), e2.b())?;
            let h = pick_morphism(&h, e.c(), e2.c())?;
            match semh_core::longseq::naturality_check(&e, &e2, &f, &g, &h) {
                Ok(report) => {
                    println!(
                        "ladder commutes; connecting hypotheses on both: {}",
                        report.applicable
                    );
                    let mut failed = false;
                    for square in &report.squares {
                        if !square.holds {
                            println!("square fails: {}", square.label);
                            failed = true;
                        }
                    }
                    if failed {
                        Ok(EXIT_CHECK_FAILED)
                    } else {
                        println!("all homology squares commute");
                        Ok(0)
                    }
                }
                Err(semh_core::longseq::LongSeqError::LadderNotCommuting { degree, witness }) => {
                    println!("ladder does not commute at degree {degree} on {witness}");
                    Ok(EXIT_CHECK_FAILED)
                }
                Err(e) => Err(e.to_string()),
            }
        }

        Command::Search {
            target,
            max_size,
            seed,
            count,
        } => {
            let target =
                SearchTarget::parse(&target).ok_or_else(|| format!("unknown target {target}"))?;
            let outcome =
                search::search(target, max_size, seed, count).map_err(|e| e.to_string())?;
            println!(
                "target {}: {} instances examined, {} findings, {} alarms",
                target.label(),
                outcome.instances_examined,
                outcome.findings.len(),
                outcome.alarms()
            );
            for finding in &outcome.findings {
                println!("{finding}");
            }
            if outcome.alarms() > 0 {
                Ok(EXIT_SOUNDNESS)
            } else {
                Ok(0)
            }
        }
    }
}

fn rebuild_with_bound(
    complex: &semh_core::windowed::WindowedComplex,
    bound: u64,
) -> Result<semh_core::windowed::WindowedComplex, String> {
    let (lo, hi) = complex.window();
    let mut ranks = BTreeMap::new();
    for n in lo..=hi {
        ranks.insert(n, complex.rank_at(n));
    }
    let mut dplus = BTreeMap::new();
    let mut dminus = BTreeMap::new();
    for n in (lo + 1)..=hi {
        dplus.insert(n, complex.dplus_at(n));
        dminus.insert(n, complex.dminus_at(n));
    }
    semh_core::windowed::WindowedComplex::new(bound, ranks, dplus, dminus)
        .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SequenceReportJson {
    sequence: String,
    terms: Vec<TermJson>,
    maps: Vec<MapJson>,
    positions: Vec<PositionJson>,
    normality: Vec<NormalityJson>,
}

#[derive(Serialize)]
struct TermJson {
    label: String,
    size: usize,
    elements: Vec<String>,
    /// Cycle members per homology class, for checking classes by hand.
    classes: Vec<Vec<String>>,
    /// Replayable congruence certificates: for related cycles `x, y`, the
    /// pair `(u, v)` with `x + d⁺u + d⁻v = y + d⁺v + d⁻u`.
    rho_witnesses: Vec<RhoWitnessJson>,
}

#[derive(Serialize)]
struct RhoWitnessJson {
    x: String,
    y: String,
    u: String,
    v: String,
}

#[derive(Serialize)]
struct ChaseStepJson {
    class: String,
    cycle: String,
    representative: String,
    solution: Option<String>,
}

#[derive(Serialize)]
struct MapJson {
    label: String,
    provenance: String,
    map: BTreeMap<String, String>,
    /// For connecting maps: the representative choices and decompositions.
    #[serde(skip_serializing_if = "Option::is_none")]
    chase: Option<Vec<ChaseStepJson>>,
}

#[derive(Serialize)]
struct PositionJson {
    label: String,
    verdict: String,
    witness: Option<String>,
}

#[derive(Serialize)]
struct NormalityJson {
    label: String,
    normal: bool,
    witness: Option<(String, String)>,
}

fn sequence_report(
    name: &str,
    seq: &semh_core::longseq::LongSequence,
    report: &semh_core::longseq::ExactnessReport,
    analysis: &SesAnalysis,
) -> SequenceReportJson {
    let presentation_of = |degree: i64, row: semh_core::longseq::Row| match row {
        semh_core::longseq::Row::A => analysis.h_a.get(&degree),
        semh_core::longseq::Row::B => analysis.h_b.get(&degree),
        semh_core::longseq::Row::C => analysis.h_c.get(&degree),
    };
    SequenceReportJson {
        sequence: name.to_owned(),
        terms: seq
            .terms
            .iter()
            .map(|t| {
                let row_complex = match t.row {
                    semh_core::longseq::Row::A => analysis.ses.a(),
                    semh_core::longseq::Row::B => analysis.ses.b(),
                    semh_core::longseq::Row::C => analysis.ses.c(),
                };
                let up_carrier = row_complex.module_at(t.degree + 1);
                let (classes, rho_witnesses) = match presentation_of(t.degree, t.row) {
                    Some(h) => {
                        let carrier = h.cycles.parent();
                        let classes = (0..h.module.size())
                            .map(|cl| {
                                h.class_members(cl)
                                    .into_iter()
                                    .map(|x| carrier.name_of(x).to_owned())
                                    .collect()
                            })
                            .collect();
                        let witnesses = h
                            .witness_pairs()
                            .filter(|(&(x, y), _)| x < y)
                            .map(|(&(x, y), &(u, v))| RhoWitnessJson {
                                x: carrier.name_of(x).to_owned(),
                                y: carrier.name_of(y).to_owned(),
                                u: up_carrier.name_of(u).to_owned(),
                                v: up_carrier.name_of(v).to_owned(),
                            })
                            .collect();
                        (classes, witnesses)
                    }
                    None => (Vec::new(), Vec::new()),
                };
                TermJson {
                    label: t.label.clone(),
                    size: t.module.size(),
                    elements: t.module.elements().to_vec(),
                    classes,
                    rho_witnesses,
                }
            })
            .collect(),
        maps: seq
            .maps
            .iter()
            .map(|m| {
                let chase = match &m.provenance {
                    semh_core::longseq::MapProvenance::Connecting(_) => {
                        let degree = m
                            .label
                            .trim_start_matches("d_")
                            .trim_end_matches("(E)")
                            .parse()
                            .unwrap_or(0);
                        Some(
                            analysis
                                .connecting_trace(degree)
                                .into_iter()
                                .map(|s| ChaseStepJson {
                                    class: s.class,
                                    cycle: s.cycle,
                                    representative: s.representative,
                                    solution: s.solution,
                                })
                                .collect(),
                        )
                    }
                    _ => None,
                };
                MapJson {
                    label: m.label.clone(),
                    provenance: m.provenance.label(),
                    map: m
                        .hom
                        .map()
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| {
                            (
                                m.hom.source().name_of(i).to_owned(),
                                m.hom.target().name_of(v).to_owned(),
                            )
                        })
                        .collect(),
                    chase,
                }
            })
            .collect(),
        positions: report
            .positions
            .iter()
            .map(|p| {
                let (verdict, witness) = match &p.verdict {
                    PositionVerdict::Exact => ("exact".to_owned(), None),
                    PositionVerdict::Inexact { witness } => {
                        ("inexact".to_owned(), Some(witness.clone()))
                    }
                    PositionVerdict::Skipped { reason } => {
                        ("skipped".to_owned(), Some(reason.clone()))
                    }
                };
                PositionJson {
                    label: p.label.clone(),
                    verdict,
                    witness,
                }
            })
            .collect(),
        normality: report
            .normality
            .iter()
            .map(|n| NormalityJson {
                label: n.label.clone(),
                normal: n.normal,
                witness: n.witness.clone(),
            })
            .collect(),
    }
}

fn print_sequence_report(report: &SequenceReportJson) {
    println!("sequence {}:", report.sequence);
    let spine: Vec<String> = report
        .terms
        .iter()
        .map(|t| format!("{}[{}]", t.label, t.size))
        .collect();
    println!("  {}", spine.join(" -> "));
    for map in &report.maps {
        println!("  map {} via {}", map.label, map.provenance);
    }
    for position in &report.positions {
        match &position.witness {
            None => println!("  {}: {}", position.label, position.verdict),
            Some(w) => println!("  {}: {} (witness {})", position.label, position.verdict, w),
        }
    }
    for normality in &report.normality {
        if !normality.normal {
            let (a, b) = normality.witness.clone().unwrap_or_default();
            println!("  {} not normal (witness {a}, {b})", normality.label);
        }
    }
}

fn print_theorem(name: &str, verdict: &TheoremVerdict) {
    println!(
        "{name}: theorem {} {}",
        verdict.theorem,
        if verdict.applicable {
            "applicable"
        } else {
            "not applicable"
        }
    );
    for failure in &verdict.hypothesis_failures {
        println!("  hypothesis fails: {failure}");
    }
    let failing: Vec<&semh_core::longseq::Conclusion> =
        verdict.conclusions.iter().filter(|c| !c.holds).collect();
    if failing.is_empty() {
        println!("  all {} conclusions hold", verdict.conclusions.len());
    } else {
        for conclusion in failing {
            println!(
                "  conclusion fails: {} ({})",
                conclusion.label, conclusion.detail
            );
        }
    }
    for side in &verdict.side_conditions {
        println!("  side condition {}: {}", side.label, side.holds);
    }
    for alarm in &verdict.soundness_alarms {
        println!("  SOUNDNESS: {alarm}");
    }
}
