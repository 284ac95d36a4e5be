//! Loaded state and the commands that act on it. Every command writes its
//! normal output to the given writer so that one-shot and REPL runs produce
//! the same bytes.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use modeus_core::corpus::{load_corpus, ONE_TO_ONE_PROPERTY};
use modeus_core::kb::build_kb;
use modeus_core::ofs::{parse_str, Mode, Ontology};
use modeus_core::reasoner::{
    explain, export_facts, materialize, CheckConfig, Closure, LintOptions, LiteralMatching, Report,
};
use modeus_core::render::Renderer;
use modeus_core::sparql::{evaluate, parse_query};
use modeus_core::{Iri, KnowledgeBase};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CLASH: i32 = 3;
pub const EXIT_NOT_ENTAILED: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub broken_pipe: bool,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into(), broken_pipe: false }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        let broken_pipe = e.kind() == std::io::ErrorKind::BrokenPipe;
        CliError { broken_pipe, ..CliError::input(e.to_string()) }
    }
}

pub type CmdResult = Result<i32, CliError>;

#[derive(Clone, Debug, Default)]
pub struct Config {
    pub lax: bool,
    pub no_una: bool,
    pub strict_literals: bool,
    pub no_reasoning: bool,
    pub full_iris: bool,
    pub lint_one_to_one: bool,
    /// Write command output here instead of the standard output.
    pub out: Option<PathBuf>,
}

impl Config {
    fn matching(&self) -> LiteralMatching {
        if self.strict_literals {
            LiteralMatching::Strict
        } else {
            LiteralMatching::Plain
        }
    }

    fn check(&self) -> CheckConfig {
        CheckConfig { una: !self.no_una, literals: self.matching() }
    }
}

struct Source {
    name: String,
    ontology: Ontology,
}

pub struct Session {
    pub config: Config,
    sources: Vec<Source>,
    /// The bundled corpus stands in until the first explicit load.
    bundled: bool,
    kb: Option<KnowledgeBase>,
    closure: Option<Closure>,
}

/// Reads and parses one file, reporting problems as `path:line:col`.
fn read_ontology(path: &Path, mode: Mode, warn: &mut dyn Write) -> Result<Ontology, CliError> {
    let name = path.display();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(CliError::input(format!("{name}: file not found")))
        }
        Err(e) => return Err(CliError::input(format!("{name}: {e}"))),
    };
    let parsed = parse_str(&text, mode).map_err(|e| CliError::input(format!("{name}:{e}")))?;
    for w in &parsed.warnings {
        let _ = writeln!(warn, "{name}:{w} (skipped)");
    }
    Ok(parsed.ontology)
}

fn renderer(kb: &KnowledgeBase, full_iris: bool) -> Renderer {
    Renderer::new(kb.prefixes.clone(), full_iris)
}

impl Session {
    pub fn new(config: Config) -> Self {
        Session { config, sources: Vec::new(), bundled: true, kb: None, closure: None }
    }

    fn mode(&self) -> Mode {
        if self.config.lax {
            Mode::Lax
        } else {
            Mode::Strict
        }
    }

    /// Adds files to the session. The first explicit load replaces the
    /// bundled corpus; later loads add to what is there.
    pub fn add_files(&mut self, paths: &[PathBuf], warn: &mut dyn Write) -> Result<Vec<usize>, CliError> {
        let mut loaded = Vec::new();
        for p in paths {
            loaded.push(Source { name: p.display().to_string(), ontology: read_ontology(p, self.mode(), warn)? });
        }
        if self.bundled {
            self.sources.clear();
            self.bundled = false;
        }
        let first = self.sources.len();
        self.sources.extend(loaded);
        self.kb = None;
        self.closure = None;
        Ok((first..self.sources.len()).collect())
    }

    fn ensure_sources(&mut self) -> Result<(), CliError> {
        if self.bundled && self.sources.is_empty() {
            let c = load_corpus().map_err(|e| CliError::input(e.to_string()))?;
            self.sources.push(Source { name: "corpus/tbox.ofn".into(), ontology: c.tbox });
            self.sources.push(Source { name: "corpus/abox.ofn".into(), ontology: c.abox });
        }
        Ok(())
    }

    pub fn kb(&mut self) -> Result<&KnowledgeBase, CliError> {
        self.ensure_sources()?;
        if self.kb.is_none() {
            let onts: Vec<Ontology> = self.sources.iter().map(|s| s.ontology.clone()).collect();
            self.kb = Some(build_kb(&onts).map_err(|e| CliError::input(e.to_string()))?);
        }
        Ok(self.kb.as_ref().expect("just built"))
    }

    fn closure(&mut self) -> Result<(&KnowledgeBase, &Closure), CliError> {
        self.kb()?;
        if self.closure.is_none() {
            let kb = self.kb.as_ref().expect("built above");
            self.closure =
                Some(if self.config.no_reasoning { Closure::asserted_only(kb) } else { materialize(kb) });
        }
        Ok((self.kb.as_ref().expect("built above"), self.closure.as_ref().expect("built above")))
    }


    /// Sends `text` to `--out` when set, otherwise to `out`.
    fn emit(&self, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
        match &self.config.out {
            Some(p) => write_file(p, text),
            None => Ok(out.write_all(text.as_bytes())?),
        }
    }

    pub fn load(&mut self, paths: &[PathBuf], out: &mut dyn Write, warn: &mut dyn Write) -> CmdResult {
        let shown = if paths.is_empty() {
            self.ensure_sources()?;
            (0..self.sources.len()).collect()
        } else {
            self.add_files(paths, warn)?
        };
        let counts = self.kb()?.counts();
        let mut text = String::new();
        for i in shown {
            let s = &self.sources[i];
            text.push_str(&format!("{}: {} axioms\n", s.name, s.ontology.axioms.len()));
        }
        text.push_str(&format!(
            "total: {} axioms, {} classes, {} object properties, {} data properties, {} individuals\n",
            counts.axioms, counts.classes, counts.object_properties, counts.data_properties, counts.individuals
        ));
        out.write_all(text.as_bytes())?;
        Ok(EXIT_OK)
    }

    pub fn validate(&mut self, out: &mut dyn Write) -> CmdResult {
        let report = self.report()?;
        let clashes = !report.clashes.is_empty();
        self.emit(out, &report.to_json())?;
        Ok(if clashes { EXIT_CLASH } else { EXIT_OK })
    }

    fn report(&mut self) -> Result<Report, CliError> {
        let check = self.config.check();
        let one_to_one = self.config.lint_one_to_one;
        let full = self.config.full_iris;
        let (kb, closure) = self.closure()?;
        let options = LintOptions {
            one_to_one: if one_to_one { kb.id(&Iri::new(ONE_TO_ONE_PROPERTY)).into_iter().collect() } else { Vec::new() },
        };
        let r = renderer(kb, full);
        Ok(Report::build(kb, closure, check, &options, &r))
    }

    /// `query` names a file when one exists at that path; anything else
    /// containing a `{` is taken as query text.
    pub fn query(&mut self, query: &str, json: bool, out: &mut dyn Write) -> CmdResult {
        let (text, label) = match std::fs::read_to_string(query) {
            Ok(t) => (t, query),
            Err(_) if query.contains('{') => (query.to_string(), "query"),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(CliError::input(format!("{query}: file not found")))
            }
            Err(e) => return Err(CliError::input(format!("{query}: {e}"))),
        };
        let q = parse_query(&text).map_err(|e| CliError::input(format!("{label}:{e}")))?;
        let matching = self.config.matching();
        let full = self.config.full_iris;
        let (kb, closure) = self.closure()?;
        let rows = evaluate(&q, kb, closure, matching);
        let r = renderer(kb, full);
        let text = if json { rows.to_json(&r) } else { rows.to_tsv(&r) };
        self.emit(out, &text)?;
        Ok(EXIT_OK)
    }

    pub fn explain(&mut self, fact: &str, out: &mut dyn Write) -> CmdResult {
        let full = self.config.full_iris;
        let (kb, closure) = self.closure()?;
        let parsed = kb.parse_fact(fact).map_err(|e| CliError::input(format!("fact:{e}")))?;
        let tree = parsed.and_then(|f| explain(closure, &f).ok());
        let (text, code) = match tree {
            Some(t) => (t.render(kb, &renderer(kb, full)), EXIT_OK),
            None => ("not entailed\n".to_string(), EXIT_NOT_ENTAILED),
        };
        self.emit(out, &text)?;
        Ok(code)
    }

    /// Writes the closure facts and/or the validation report. A path of `-`
    /// means the standard output.
    pub fn export(&mut self, facts: Option<&Path>, report: Option<&Path>, out: &mut dyn Write) -> CmdResult {
        if facts.is_none() && report.is_none() {
            return Err(CliError::input("export needs --facts FILE or --report FILE"));
        }
        if let Some(p) = facts {
            let (kb, closure) = self.closure()?;
            let text = export_facts(kb, closure);
            write_target(p, &text, out)?;
        }
        if let Some(p) = report {
            let text = self.report()?.to_json();
            write_target(p, &text, out)?;
        }
        Ok(EXIT_OK)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_target(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    if path == Path::new("-") {
        Ok(out.write_all(text.as_bytes())?)
    } else {
        write_file(path, text)
    }
}
