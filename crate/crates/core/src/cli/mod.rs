//! The `ggb` command line: parse a problem file, run one command, print the
//! result as text or as a versioned JSON document.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when the iteration cap is
//! hit or the oracle does not return `Verified`.

pub mod parse;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::{
    BuchbergerResult, BuchbergerRun, Engine, EngineError, EngineOptions, GeneratingSet,
    GroebnerBasis, Membership, QuotientModule, DEFAULT_CAP,
};
use crate::graded::{Degree, ModuleVector};
use crate::oracle::{Oracle, Verdict, DEFAULT_MAX_SLACK, DEFAULT_TRUNCATION};
use crate::poly::{PolyRing, Polynomial};

pub use parse::{parse_element, parse_problem, FileOptions, Grading, ParseError, ProblemFile};
pub use report::SCHEMA;

use report::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "ggb",
    version,
    about = "Groebner bases of inhomogeneous submodules over graded rings"
)]
pub struct Args {
    /// Maximum number of Buchberger rounds [default: 64]
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Truncation degree for `verify` [default: 8]
    #[arg(long, global = true)]
    pub truncate: Option<i32>,
    /// Largest slack for `verify` [default: 4]
    #[arg(long, global = true)]
    pub slack: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Gröbner basis with its certificate
    Gb { file: PathBuf },
    /// Gröbner basis of the relations among the basis elements
    Syz { file: PathBuf },
    /// Decide membership of TARGET in the span of the generators
    Member { file: PathBuf, target: String },
    /// Initial terms of the Gröbner basis
    Ini { file: PathBuf },
    /// Generators and relations of the span
    Present { file: PathBuf },
    /// Check a basis against the truncated span by linear algebra
    Verify { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Syz { .. } => "syz",
            Command::Member { .. } => "member",
            Command::Ini { .. } => "ini",
            Command::Present { .. } => "present",
            Command::Verify { .. } => "verify",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Gb { file }
            | Command::Syz { file }
            | Command::Member { file, .. }
            | Command::Ini { file }
            | Command::Present { file }
            | Command::Verify { file } => file,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;

/// A failed command: message for standard error plus exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::CapExceeded(report) => Failure {
                code: EXIT_INCOMPLETE,
                message: format!("iteration cap of {} rounds exceeded", report.cap),
            },
            EngineError::InvariantViolation(m) => Failure::input(format!("internal error: {m}")),
            other => Failure::input(other.to_string()),
        }
    }
}

/// Runs one invocation, writing the result to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = read_input(args.command.file()).and_then(|text| execute(args, &text));
    match result {
        Ok((doc, code)) => {
            let rendered = match args.format {
                Format::Text => doc.to_text(),
                Format::Json => doc.to_json(),
            };
            if out.write_all(rendered.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

/// Runs the command on the text of a problem file.
fn execute(args: &Args, text: &str) -> Result<(Document, i32), Failure> {
    let problem = parse_problem(text).map_err(|e| Failure::input(e.to_string()))?;
    let session = Session::new(args, &problem)?;
    session.dispatch(&args.command)
}

struct Session<'p> {
    problem: &'p ProblemFile,
    ring: &'p PolyRing,
    options: EngineOptions,
    truncate: i32,
    slack: u32,
    gens: Vec<ModuleVector<Polynomial>>,
    relations: Vec<ModuleVector<Polynomial>>,
}

impl<'p> Session<'p> {
    fn new(args: &Args, problem: &'p ProblemFile) -> Result<Self, Failure> {
        let file = &problem.options;
        let options = EngineOptions {
            cap: args.cap.or(file.cap).unwrap_or(DEFAULT_CAP),
            ..EngineOptions::default()
        };
        let ring = &problem.ring;
        let vectors = |list: &[Vec<Polynomial>]| -> Result<Vec<ModuleVector<Polynomial>>, Failure> {
            list.iter()
                .map(|e| {
                    ring.module_vector(&problem.module, e)
                        .map_err(|e| Failure::input(e.to_string()))
                })
                .collect()
        };
        Ok(Session {
            problem,
            ring,
            options,
            truncate: args
                .truncate
                .or(file.truncate)
                .unwrap_or(DEFAULT_TRUNCATION),
            slack: args.slack.or(file.slack).unwrap_or(DEFAULT_MAX_SLACK),
            gens: vectors(&problem.gens)?,
            relations: vectors(&problem.relations)?,
        })
    }

    fn engine(&self) -> Engine<'p, PolyRing> {
        Engine::with_options(self.ring, self.options)
    }

    fn family(
        &self,
        elements: Vec<ModuleVector<Polynomial>>,
    ) -> Result<GeneratingSet<Polynomial>, Failure> {
        Ok(self
            .engine()
            .generating_set(self.problem.module.clone(), elements)?)
    }

    fn doc(&self, command: &'static str) -> Document {
        Document::new(command, self.ring, &self.problem.module)
    }

    fn is_quotient(&self) -> bool {
        !self.relations.is_empty()
    }

    /// Runs Buchberger on the generators, or on their inverse image when the
    /// problem is posed in a quotient. Fills in basis, certificate and report.
    /// `Err` carries the finished document for a run that hit the cap.
    fn groebner(&self, doc: &mut Document) -> Result<Result<Solved, (Document, i32)>, Failure> {
        let engine = self.engine();
        let (run, quotient) = if self.is_quotient() {
            let rel_family = self.family(self.relations.clone())?;
            let rel_run = engine.buchberger(&rel_family)?;
            let relations = rel_run.into_basis()?;
            let quotient = QuotientModule::new(relations)?;
            let mut elements = self.gens.clone();
            elements.extend(quotient.relations().elements().iter().cloned());
            let family = self.family(elements)?;
            (engine.buchberger(&family)?, Some(quotient))
        } else {
            let family = self.family(self.gens.clone())?;
            (engine.buchberger(&family)?, None)
        };
        let BuchbergerRun { result, report } = run;
        doc.set_report(&report);
        let basis = match result {
            BuchbergerResult::Completed(b) => b,
            BuchbergerResult::Partial(partial) => {
                let mut partial_doc = doc.clone();
                partial_doc.set_basis(partial.elements());
                return Ok(Err((partial_doc, EXIT_INCOMPLETE)));
            }
        };
        doc.set_certificate(&basis);
        let projected = match &quotient {
            Some(q) => {
                let mut out = Vec::new();
                for g in basis.elements() {
                    let image = engine.project(q, g)?;
                    if !image.is_zero() {
                        out.push(image);
                    }
                }
                doc.set_quotient(q.relations().elements(), basis.elements());
                out
            }
            None => basis.elements().to_vec(),
        };
        doc.set_basis(&projected);
        Ok(Ok(Solved { basis, projected }))
    }

    fn dispatch(&self, command: &Command) -> Result<(Document, i32), Failure> {
        let mut doc = self.doc(command.name());
        if let Command::Verify { .. } = command {
            return self.verify(doc);
        }
        if self.is_quotient() && matches!(command, Command::Syz { .. } | Command::Present { .. }) {
            return Err(Failure::input(format!(
                "`{}` is not available for problems with relations",
                command.name()
            )));
        }
        let target = match command {
            Command::Member { target, .. } => Some(self.parse_target(target)?),
            _ => None,
        };
        let solved = match self.groebner(&mut doc)? {
            Ok(s) => s,
            Err(partial) => return Ok(partial),
        };
        let engine = self.engine();
        match command {
            Command::Gb { .. } => {}
            Command::Syz { .. } => {
                let relations = engine.kernel_groebner(&solved.basis)?;
                doc.set_relations(&relations);
            }
            Command::Present { .. } => {
                let pres = engine.presentation(&self.family(self.gens.clone())?)?;
                doc.set_report(&pres.report);
                doc.set_basis(pres.generators.elements());
                doc.set_certificate(&pres.generators);
                doc.set_relations(&pres.relations);
            }
            Command::Ini { .. } => {
                let initial: Vec<ModuleVector<Polynomial>> = solved
                    .projected
                    .iter()
                    .map(|g| {
                        let t = g.initial_term().expect("basis elements are nonzero");
                        ModuleVector::homogeneous(t.degree, t.payload)
                    })
                    .collect();
                doc.set_initial_terms(&initial);
            }
            Command::Member { target: text, .. } => {
                let y = target.expect("parsed above");
                let verdict = engine.membership(&y, &solved.basis)?;
                match &verdict {
                    Membership::Member(expr) if !self.is_quotient() => {
                        doc.set_membership(text, true, Some(&expr.coefficients), &expr.remainder)
                    }
                    Membership::Member(expr) => {
                        doc.set_membership(text, true, None, &expr.remainder)
                    }
                    Membership::NotMember(r) => doc.set_membership(text, false, None, r),
                }
            }
            Command::Verify { .. } => unreachable!("handled above"),
        }
        Ok((doc, EXIT_OK))
    }

    fn parse_target(&self, text: &str) -> Result<ModuleVector<Polynomial>, Failure> {
        let entries =
            parse_element(self.ring, text).map_err(|e| Failure::input(format!("target: {e}")))?;
        if entries.len() != self.problem.module.rank() {
            return Err(Failure::input(format!(
                "target has {} entries, module has rank {}",
                entries.len(),
                self.problem.module.rank()
            )));
        }
        self.ring
            .module_vector(&self.problem.module, &entries)
            .map_err(|e| Failure::input(e.to_string()))
    }

    fn verify(&self, mut doc: Document) -> Result<(Document, i32), Failure> {
        let mut original = self.gens.clone();
        original.extend(self.relations.iter().cloned());
        let candidate = match &self.problem.candidate {
            Some(list) => {
                let mut c = Vec::new();
                for e in list {
                    c.push(
                        self.ring
                            .module_vector(&self.problem.module, e)
                            .map_err(|e| Failure::input(e.to_string()))?,
                    );
                }
                c.extend(self.relations.iter().cloned());
                doc.set_basis(&c);
                c
            }
            None => match self.groebner(&mut doc)? {
                Ok(solved) => solved.basis.elements().to_vec(),
                Err(partial) => return Ok(partial),
            },
        };
        let oracle = Oracle::new(self.ring, &self.problem.module);
        let d = Degree::new(self.truncate);
        let verdict = oracle.verify_gb_truncated(&original, &candidate, d, self.slack);
        let code = match verdict {
            Verdict::Verified => EXIT_OK,
            _ => EXIT_INCOMPLETE,
        };
        doc.set_verdict(&verdict, self.truncate, self.slack);
        Ok((doc, code))
    }
}

struct Solved {
    basis: GroebnerBasis<Polynomial>,
    projected: Vec<ModuleVector<Polynomial>>,
}
