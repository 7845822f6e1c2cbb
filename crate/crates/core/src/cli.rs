//! Command-line front end. `run` does all the work and returns the exit
//! code together with the text to print, so it can be tested in-process.

use crate::cosheaf::{check_cosheaf_sets, Pi0Functor};
use crate::costack::{check_sh, check_st, check_vankampen, induced_map_to_terminal, ShStReport};
use crate::diagrams::{deform, delta_comparison, diagram_colim, diagram_lim, diagram_tc, filtered_colim, TwoLimit};
use crate::equivalence::{equivalence_fingerprint, AnyGroupoid, Battery, Verdict, BATTERY_NAMES};
use crate::error::Error;
use crate::group::FiniteGroup;
use crate::groupoid::{validate_data, ConcreteGroupoid};
use crate::io::{
    nat_iso_record, read_json, schema_of, ComplexFile, CoverFile, DiagramFile, FunctorRecord, GroupoidFile, LoadedDiagram,
    PresentationFile, SquareFile, COMPLEX_SCHEMA, COVER_SCHEMA, DIAGRAM_SCHEMA, GROUPOID_SCHEMA, PRESENTATION_SCHEMA, REPORT_SCHEMA,
    SQUARE_SCHEMA,
};
use crate::presentation::PresentedGroupoid;
use crate::space::{build_nerve, is_good_cover, Complex2, CoverNerve, GoodReading, Subcomplex};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const DEFAULT_CLI_BUDGET: usize = 1_000_000;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Strict,
    Componentwise,
}

impl From<ReadingArg> for GoodReading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::Strict => GoodReading::Strict,
            ReadingArg::Componentwise => GoodReading::Componentwise,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "costack", version, about = "Groupoid (co)limits, Van Kampen and costack checks on 2-complexes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Work budget: coset-table cells and enumeration caps.
    #[arg(long, global = true, env = "COSTACK_BUDGET", default_value_t = DEFAULT_CLI_BUDGET, value_parser = parse_budget)]
    pub budget: usize,
    /// Comma-separated functor-count targets among z2, z3, s3, two.
    #[arg(long, global = true, value_delimiter = ',')]
    pub battery: Option<Vec<String>>,
    #[arg(long, global = true, value_enum, default_value = "componentwise")]
    pub good_reading: ReadingArg,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

fn parse_budget(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Check any input file against its schema.
    Validate { file: PathBuf },
    /// Connected components of a complex.
    Pi0 { complex: PathBuf },
    /// Edge-path groupoid of a complex.
    Pi1 { complex: PathBuf },
    /// Nerve of a cover, with the good-cover verdict.
    Nerve {
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Strict limit of a contravariant concrete diagram.
    Lim { diagram: PathBuf },
    /// 2-limit of a contravariant concrete diagram.
    Tl { diagram: PathBuf },
    /// Colimit of a covariant diagram.
    Colim { diagram: PathBuf },
    /// 2-colimit of a covariant diagram.
    Tc { diagram: PathBuf },
    /// Whether the comparison from the 2-colimit to the colimit is an equivalence.
    Delta { diagram: PathBuf },
    /// Deform a square that commutes up to isomorphism.
    Deform { square: PathBuf },
    /// Colimit of a covariant concrete diagram over a filtered poset.
    FilteredColim { diagram: PathBuf },
    /// Cosheaf condition for connected components.
    CheckCosheaf {
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Sheaf condition for functors into a finite groupoid (default Z/2).
    CheckSh {
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Stack condition for functors into a finite groupoid (default Z/2).
    CheckSt {
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Pushout and 2-pushout verdicts for a two-member cover.
    Vankampen {
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Functor from the 2-colimit of a diagram over the nerve to the edge-path 2-colimit.
    TerminalMap {
        diagram: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Equivalence invariants of a groupoid, presentation or complex.
    Fingerprint { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Pi0 { .. } => "pi0",
            Command::Pi1 { .. } => "pi1",
            Command::Nerve { .. } => "nerve",
            Command::Lim { .. } => "lim",
            Command::Tl { .. } => "tl",
            Command::Colim { .. } => "colim",
            Command::Tc { .. } => "tc",
            Command::Delta { .. } => "delta",
            Command::Deform { .. } => "deform",
            Command::FilteredColim { .. } => "filtered-colim",
            Command::CheckCosheaf { .. } => "check-cosheaf",
            Command::CheckSh { .. } => "check-sh",
            Command::CheckSt { .. } => "check-st",
            Command::Vankampen { .. } => "vankampen",
            Command::TerminalMap { .. } => "terminal-map",
            Command::Fingerprint { .. } => "fingerprint",
        }
    }
}

/// Exit code and the text for stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

struct Report {
    code: i32,
    text: Vec<String>,
    data: Value,
}

impl Report {
    fn new(code: i32) -> Self {
        Self {
            code,
            text: Vec::new(),
            data: json!({}),
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.text.push(s.into());
        self
    }

    fn field(mut self, key: &str, v: impl serde::Serialize) -> Self {
        self.data[key] = serde_json::to_value(v).expect("serializable");
        self
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_PASS,
        Verdict::No => EXIT_FAIL,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_UNKNOWN,
        Error::NotFiltered(..) | Error::NotInjectiveOnObjects | Error::NotGood(_) | Error::NotCosheaf => EXIT_FAIL,
        _ => EXIT_PARSE,
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let name = config.command.name();
    let report = dispatch(config).unwrap_or_else(|e| {
        Report::new(error_code(&e))
            .line(format!("error: {e}"))
            .field("error", e.to_string())
    });
    let output = if config.json {
        let mut data = report.data;
        let mut doc = serde_json::Map::new();
        doc.insert("schema".into(), json!(REPORT_SCHEMA));
        doc.insert("command".into(), json!(name));
        doc.insert("exit_code".into(), json!(report.code));
        if let Value::Object(fields) = data.take() {
            doc.extend(fields);
        }
        serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable") + "\n"
    } else {
        let mut s = format!("{REPORT_SCHEMA} {name}\n");
        for l in &report.text {
            s.push_str(l);
            s.push('\n');
        }
        s
    };
    Outcome {
        code: report.code,
        output,
    }
}

fn load_complex(path: &Path) -> crate::Result<Arc<Complex2>> {
    Ok(Arc::new(read_json::<ComplexFile>(path)?.build()?))
}

fn load_cover(complex: &Path, cover: &Path) -> crate::Result<CoverNerve> {
    let c = load_complex(complex)?;
    let members = read_json::<CoverFile>(cover)?.build(&c)?;
    build_nerve(&members)
}

fn load_diagram(path: &Path) -> crate::Result<LoadedDiagram> {
    read_json::<DiagramFile>(path)?.build(path.parent())
}

fn load_target(path: &Option<PathBuf>) -> crate::Result<Arc<ConcreteGroupoid>> {
    match path {
        Some(p) => Ok(Arc::new(read_json::<GroupoidFile>(p)?.build()?)),
        None => Ok(Arc::new(ConcreteGroupoid::from_group(&FiniteGroup::cyclic(2)))),
    }
}

fn battery(config: &RunConfig) -> crate::Result<Battery> {
    match &config.battery {
        None => Ok(Battery::default()),
        Some(names) => Battery::from_names(names)
            .ok_or_else(|| Error::Parse(format!("battery names must be among {}", BATTERY_NAMES.join(", ")))),
    }
}

/// Invariants plus battery counts, as text and JSON.
fn fingerprint<'a>(report: Report, g: impl Into<AnyGroupoid<'a>> + Copy, config: &RunConfig) -> crate::Result<Report> {
    let fp = equivalence_fingerprint(g, config.budget);
    let b = battery(config)?;
    let counts = b.counts(g, config.budget);
    let names: Vec<&str> = b.targets.iter().map(|(n, _)| n.as_str()).collect();
    let rendered = match &counts {
        Some(c) => names.iter().zip(c).map(|(n, k)| format!("{n}={k}")).collect::<Vec<_>>().join(" "),
        None => "out of reach".into(),
    };
    Ok(report
        .line(format!("fingerprint: {fp}"))
        .line(format!("battery: {rendered}"))
        .field("fingerprint", &fp)
        .field("battery", json!({"targets": names, "counts": counts})))
}

fn presentation_report(p: &PresentedGroupoid, config: &RunConfig) -> crate::Result<Report> {
    let r = Report::new(EXIT_PASS)
        .line(format!("{} vertices, {} edges, {} relations", p.num_vertices(), p.num_edges(), p.relations.len()))
        .field("presentation", PresentationFile::from_presented(p));
    fingerprint(r, p, config)
}

fn groupoid_report(g: &ConcreteGroupoid, config: &RunConfig) -> crate::Result<Report> {
    let r = Report::new(EXIT_PASS)
        .line(format!("{} objects, {} morphisms", g.num_objects(), g.num_morphisms()))
        .field("groupoid", GroupoidFile::from_groupoid(g));
    fingerprint(r, g, config)
}

fn sh_st_report(r: ShStReport) -> Report {
    let mut out = Report::new(verdict_code(r.verdict)).line(format!("{} on {}: {}", r.condition, r.cover, r.verdict));
    if let Some(w) = &r.witness {
        out = out.line(format!("witness: {w}"));
    }
    out.field("report", &r)
}

fn dispatch(config: &RunConfig) -> crate::Result<Report> {
    let budget = config.budget;
    match &config.command {
        Command::Validate { file } => validate(file),
        Command::Pi0 { complex } => {
            let c = load_complex(complex)?;
            let p = Subcomplex::full(c).pi0();
            Ok(Report::new(EXIT_PASS)
                .line(format!("{} component(s): {}", p.len(), p.components.join(" ")))
                .field("components", &p.components))
        }
        Command::Pi1 { complex } => presentation_report(&Subcomplex::full(load_complex(complex)?).pi1(), config),
        Command::Nerve { complex, cover } => {
            let nerve = load_cover(complex, cover)?;
            let good = is_good_cover(&nerve, config.good_reading.into());
            let mut r = Report::new(EXIT_PASS);
            let mut elements = Vec::new();
            for (k, name) in nerve.diagram.poset.elements().iter().enumerate() {
                let piece = &nerve.pieces[k];
                r = r.line(format!("{name}: {}", piece.element_names().join(" ")));
                elements.push(json!({"name": name, "members": nerve.index_sets[k], "elements": piece.element_names()}));
            }
            Ok(r.line(format!("good ({:?}): {good}", config.good_reading).to_lowercase())
                .field("elements", elements)
                .field("good", good)
                .field("diagram", DiagramFile::from_presented(&nerve.diagram)))
        }
        Command::Lim { diagram } => {
            let d = load_diagram(diagram)?;
            groupoid_report(&diagram_lim(d.concrete()?)?, config)
        }
        Command::Tl { diagram } => {
            let d = load_diagram(diagram)?;
            let tl = TwoLimit::new(d.concrete()?, budget)?;
            let g = tl.materialize(budget)?;
            groupoid_report(&g, config)
        }
        Command::Colim { diagram } => {
            let d = load_diagram(diagram)?.presented()?;
            presentation_report(&diagram_colim(&d)?.groupoid, config)
        }
        Command::Tc { diagram } => {
            let d = load_diagram(diagram)?.presented()?;
            let tc = diagram_tc(&d)?;
            let (base, nat, coc) = tc.relation_counts;
            let r = presentation_report(&tc.groupoid, config)?;
            Ok(r.line(format!("relations: {base} from values, {nat} naturality, {coc} cocycle"))
                .field("relation_counts", json!({"values": base, "naturality": nat, "cocycle": coc})))
        }
        Command::Delta { diagram } => {
            let d = load_diagram(diagram)?.presented()?;
            let res = delta_comparison(&d, budget)?;
            let (ft, fc) = (equivalence_fingerprint(&*res.tc.groupoid, budget), equivalence_fingerprint(&*res.colim.groupoid, budget));
            Ok(Report::new(verdict_code(res.verdict))
                .line(format!("2-colimit: {ft}"))
                .line(format!("colimit: {fc}"))
                .line(format!("equivalence: {}", res.verdict))
                .field("verdict", res.verdict)
                .field("tc", &ft)
                .field("colim", &fc)
                .field("functor", FunctorRecord::from_presented(&res.functor)))
        }
        Command::Deform { square } => {
            let s = read_json::<SquareFile>(square)?.build(square.parent())?;
            let out = deform(&s.i1, &s.i2, &s.j1, &s.j2, &s.lambda)?;
            let identities = out.kappa.is_identity();
            Ok(Report::new(EXIT_PASS)
                .line(format!("kappa is the identity: {identities}"))
                .line(format!(
                    "kappa: {}",
                    nat_iso_record(&out.kappa).iter().map(|(x, m)| format!("{x}->{m}")).collect::<Vec<_>>().join(" ")
                ))
                .field("j1_prime", FunctorRecord::from_concrete(&out.j1_prime))
                .field("kappa", nat_iso_record(&out.kappa))
                .field("kappa_is_identity", identities))
        }
        Command::FilteredColim { diagram } => {
            let d = load_diagram(diagram)?;
            groupoid_report(&filtered_colim(d.concrete()?)?, config)
        }
        Command::CheckCosheaf { complex, cover } => {
            let nerve = load_cover(complex, cover)?;
            let r = check_cosheaf_sets(&Pi0Functor, &nerve.total, &nerve.cover)?;
            let mut out = Report::new(if r.pass { EXIT_PASS } else { EXIT_FAIL }).line(format!(
                "coequalizer {} against value {}: {}",
                r.coequalizer_size,
                r.value_size,
                if r.pass { "pass" } else { "fail" }
            ));
            if let Some(w) = &r.witness {
                out = out.line(format!("witness: {w}"));
            }
            Ok(out.field("report", &r))
        }
        Command::CheckSh { complex, cover, target } => {
            Ok(sh_st_report(check_sh(&load_cover(complex, cover)?, &load_target(target)?, budget)?))
        }
        Command::CheckSt { complex, cover, target } => {
            Ok(sh_st_report(check_st(&load_cover(complex, cover)?, &load_target(target)?, budget)?))
        }
        Command::Vankampen { complex, cover } => {
            let c = load_complex(complex)?;
            let members = read_json::<CoverFile>(cover)?.build(&c)?;
            let [u, v] = members.as_slice() else {
                return Err(Error::NotCovering("exactly two members are required".into()));
            };
            let r = check_vankampen(&Subcomplex::full(c.clone()), u, v, &battery(config)?, budget)?;
            let code = match (r.pushout, r.two_pushout) {
                (Verdict::Yes, Verdict::Yes) => EXIT_PASS,
                (Verdict::No, _) | (_, Verdict::No) => EXIT_FAIL,
                _ => EXIT_UNKNOWN,
            };
            let cert = |b: bool| if b { "certified" } else { "by invariants" };
            Ok(Report::new(code)
                .line(format!("whole: {}", r.whole))
                .line(format!("pushout: {} ({})", r.pushout, cert(r.pushout_certified)))
                .line(format!("2-pushout: {} ({})", r.two_pushout, cert(r.two_pushout_certified)))
                .field("report", &r))
        }
        Command::TerminalMap { diagram, complex, cover } => {
            let q = load_diagram(diagram)?.presented()?;
            let nerve = load_cover(complex, cover)?;
            let m = induced_map_to_terminal(&q, &nerve, config.good_reading.into(), budget)?;
            Ok(Report::new(verdict_code(m.relations))
                .line(format!("relations respected: {}", m.relations))
                .field("relations", m.relations)
                .field("functor", FunctorRecord::from_presented(&m.functor)))
        }
        Command::Fingerprint { file } => {
            let v: Value = read_json(file)?;
            match detect(&v) {
                Some(GROUPOID_SCHEMA) => groupoid_report(&parse_value::<GroupoidFile>(v)?.build()?, config),
                Some(PRESENTATION_SCHEMA) => presentation_report(&parse_value::<PresentationFile>(v)?.build()?, config),
                Some(COMPLEX_SCHEMA) => {
                    let c = Arc::new(parse_value::<ComplexFile>(v)?.build()?);
                    presentation_report(&Subcomplex::full(c).pi1(), config)
                }
                _ => Err(Error::Parse("expected a groupoid, presentation or complex".into())),
            }
        }
    }
}

fn parse_value<T: serde::de::DeserializeOwned>(v: Value) -> crate::Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

/// The schema of a document, from its tag or else from its keys.
fn detect(v: &Value) -> Option<&'static str> {
    const ALL: [&str; 6] = [GROUPOID_SCHEMA, PRESENTATION_SCHEMA, COMPLEX_SCHEMA, COVER_SCHEMA, DIAGRAM_SCHEMA, SQUARE_SCHEMA];
    if let Some(s) = schema_of(v) {
        return ALL.iter().copied().find(|&k| k == s);
    }
    let has = |k: &str| v.get(k).is_some();
    if has("table") {
        Some(GROUPOID_SCHEMA)
    } else if has("cells") {
        Some(COMPLEX_SCHEMA)
    } else if has("members") {
        Some(COVER_SCHEMA)
    } else if has("kind") {
        Some(DIAGRAM_SCHEMA)
    } else if has("i1") {
        Some(SQUARE_SCHEMA)
    } else if has("vertices") {
        Some(PRESENTATION_SCHEMA)
    } else {
        None
    }
}

fn validate(file: &Path) -> crate::Result<Report> {
    let v: Value = read_json(file)?;
    let kind = detect(&v).ok_or_else(|| Error::Parse("unrecognised document".into()))?;
    let checked = match kind {
        GROUPOID_SCHEMA => {
            let data = parse_value::<GroupoidFile>(v)?.data()?;
            let report = validate_data(&data);
            if !report.is_valid() {
                let mut r = Report::new(EXIT_FAIL).line(format!("{kind}: invalid"));
                for violation in &report.violations {
                    r = r.line(format!("  {violation}"));
                }
                let list: Vec<String> = report.violations.iter().map(|x| x.to_string()).collect();
                return Ok(r.field("kind", kind).field("valid", false).field("violations", list));
            }
            Ok(())
        }
        PRESENTATION_SCHEMA => parse_value::<PresentationFile>(v)?.build().map(|_| ()),
        COMPLEX_SCHEMA => parse_value::<ComplexFile>(v)?.build().map(|_| ()),
        COVER_SCHEMA => parse_value::<CoverFile>(v).map(|_| ()),
        DIAGRAM_SCHEMA => parse_value::<DiagramFile>(v)?.build(file.parent()).map(|_| ()),
        SQUARE_SCHEMA => parse_value::<SquareFile>(v)?.build(file.parent()).map(|_| ()),
        _ => unreachable!("detect returns known schemas"),
    };
    Ok(match checked {
        Ok(()) => Report::new(EXIT_PASS)
            .line(format!("{kind}: valid"))
            .field("kind", kind)
            .field("valid", true),
        Err(e @ Error::Parse(_)) => return Err(e),
        Err(e) => Report::new(EXIT_FAIL)
            .line(format!("{kind}: invalid"))
            .line(format!("  {e}"))
            .field("kind", kind)
            .field("valid", false)
            .field("violations", vec![e.to_string()]),
    })
}
