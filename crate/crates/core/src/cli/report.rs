use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{GroebnerBasis, Outcome, TerminationReport};
use crate::graded::{ModuleVector, RingElement, ShiftedFreeModule};
use crate::oracle::Verdict;
use crate::poly::{PolyRing, Polynomial};

pub const SCHEMA: &str = "graded-groebner/1";

/// A rendered element: a polynomial for rank one, otherwise one polynomial
/// per basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Element {
    Scalar(String),
    Vector(Vec<String>),
}

impl Element {
    fn text(&self) -> String {
        match self {
            Element::Scalar(s) => s.clone(),
            Element::Vector(v) => format!("[{}]", v.join(", ")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingDoc {
    pub variables: Vec<String>,
    pub grading: &'static str,
    pub shifts: Vec<i32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeDoc {
    pub degree: i32,
    pub row: Vec<String>,
    pub probe: Element,
    pub coefficients: Vec<String>,
    pub remainder: Element,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDoc {
    pub probes: Vec<ProbeDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub rounds: usize,
    pub cap: usize,
    pub outcome: &'static str,
    pub growth: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientDoc {
    pub relations: Vec<Element>,
    pub lifted: Vec<Element>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationsDoc {
    pub shifts: Vec<i32>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipDoc {
    pub target: String,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    pub remainder: Element,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub status: &'static str,
    pub truncate: i32,
    pub max_slack: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Everything a command reports, in output order.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: RingDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientDoc>,
    pub basis: Vec<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_terms: Option<Vec<Element>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDoc>,
    #[serde(skip)]
    context: (PolyRing, ShiftedFreeModule),
}

impl Document {
    pub fn new(command: &'static str, ring: &PolyRing, module: &ShiftedFreeModule) -> Self {
        Document {
            schema: SCHEMA,
            command,
            ring: RingDoc {
                variables: ring.names().to_vec(),
                grading: "total",
                shifts: module.shifts().iter().map(|d| d.value()).collect(),
            },
            quotient: None,
            basis: Vec::new(),
            certificate: None,
            report: None,
            relations: None,
            initial_terms: None,
            membership: None,
            verdict: None,
            context: (ring.clone(), module.clone()),
        }
    }

    fn poly(&self, p: &Polynomial) -> String {
        p.fmt_with(self.context.0.names())
    }

    fn ring_element(&self, a: &RingElement<Polynomial>) -> String {
        self.poly(&self.context.0.flatten(a))
    }

    fn element(&self, v: &ModuleVector<Polynomial>) -> Element {
        let (ring, module) = &self.context;
        let entries: Vec<String> = ring
            .module_entries(module, v)
            .iter()
            .map(|p| self.poly(p))
            .collect();
        if module.rank() == 1 {
            Element::Scalar(entries.into_iter().next().expect("rank one"))
        } else {
            Element::Vector(entries)
        }
    }

    fn elements(&self, vs: &[ModuleVector<Polynomial>]) -> Vec<Element> {
        vs.iter().map(|v| self.element(v)).collect()
    }

    pub fn set_basis(&mut self, basis: &[ModuleVector<Polynomial>]) {
        self.basis = self.elements(basis);
    }

    pub fn set_report(&mut self, report: &TerminationReport) {
        self.report = Some(ReportDoc {
            rounds: report.rounds_used,
            cap: report.cap,
            outcome: match report.outcome {
                Outcome::Completed => "Completed",
                Outcome::CapExceeded => "CapExceeded",
            },
            growth: report.basis_growth.clone(),
        });
    }

    pub fn set_certificate(&mut self, basis: &GroebnerBasis<Polynomial>) {
        let probes = basis
            .certificate()
            .iter()
            .map(|p| {
                let reduction = p
                    .reduction
                    .as_ref()
                    .expect("certified probes carry reductions");
                ProbeDoc {
                    degree: p.row.degree.value(),
                    row: p.row.entries.iter().map(|c| self.poly(c)).collect(),
                    probe: self.element(&p.probe),
                    coefficients: reduction
                        .coefficients
                        .iter()
                        .map(|a| self.ring_element(a))
                        .collect(),
                    remainder: self.element(&reduction.remainder),
                }
            })
            .collect();
        self.certificate = Some(CertificateDoc { probes });
    }

    pub fn set_quotient(
        &mut self,
        relations: &[ModuleVector<Polynomial>],
        lifted: &[ModuleVector<Polynomial>],
    ) {
        self.quotient = Some(QuotientDoc {
            relations: self.elements(relations),
            lifted: self.elements(lifted),
        });
    }

    pub fn set_relations(&mut self, relations: &GroebnerBasis<Polynomial>) {
        let free = relations.module();
        let rows = relations
            .elements()
            .iter()
            .map(|r| {
                free.entries_of(r)
                    .iter()
                    .map(|e| self.ring_element(e))
                    .collect()
            })
            .collect();
        self.relations = Some(RelationsDoc {
            shifts: free.shifts().iter().map(|d| d.value()).collect(),
            rows,
        });
    }

    pub fn set_initial_terms(&mut self, initial: &[ModuleVector<Polynomial>]) {
        self.initial_terms = Some(self.elements(initial));
    }

    pub fn set_membership(
        &mut self,
        target: &str,
        member: bool,
        coefficients: Option<&Vec<RingElement<Polynomial>>>,
        remainder: &ModuleVector<Polynomial>,
    ) {
        self.membership = Some(MembershipDoc {
            target: target.trim().to_string(),
            member,
            coefficients: coefficients.map(|cs| cs.iter().map(|a| self.ring_element(a)).collect()),
            remainder: self.element(remainder),
        });
    }

    pub fn set_verdict(&mut self, verdict: &Verdict, truncate: i32, max_slack: u32) {
        let mut doc = VerdictDoc {
            status: "Verified",
            truncate,
            max_slack,
            degree: None,
            slack: None,
            reason: None,
        };
        match verdict {
            Verdict::Verified => {}
            Verdict::Refuted { degree, slack } => {
                doc.status = "Refuted";
                doc.degree = Some(degree.value());
                doc.slack = Some(*slack);
            }
            Verdict::Inconclusive { reason } => {
                doc.status = "Inconclusive";
                doc.reason = Some(reason.clone());
            }
        }
        self.verdict = Some(doc);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let ring = &self.ring;
        let _ = writeln!(
            s,
            "ring: QQ[{}], grading {}, shifts ({})",
            ring.variables.join(", "),
            ring.grading,
            join(&ring.shifts)
        );
        if let Some(q) = &self.quotient {
            let _ = writeln!(s, "relations ({}):", q.relations.len());
            list(&mut s, "k", &q.relations);
            let _ = writeln!(s, "lifted basis ({}):", q.lifted.len());
            list(&mut s, "h", &q.lifted);
        }
        let title = if self.command == "verify" && self.certificate.is_none() {
            "candidate"
        } else if self.quotient.is_some() {
            "projected basis"
        } else {
            "basis"
        };
        let _ = writeln!(s, "{title} ({}):", self.basis.len());
        list(&mut s, "g", &self.basis);
        if let Some(c) = &self.certificate {
            let noun = if c.probes.len() == 1 {
                "probe"
            } else {
                "probes"
            };
            let _ = writeln!(s, "certificate ({} {noun}):", c.probes.len());
            for (j, p) in c.probes.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  z{} = [{}] in degree {}",
                    j + 1,
                    p.row.join(", "),
                    p.degree
                );
                let _ = writeln!(s, "     probe {}", p.probe.text());
                let _ = writeln!(s, "     coefficients [{}]", p.coefficients.join(", "));
                let _ = writeln!(s, "     remainder {}", p.remainder.text());
            }
        }
        if let Some(r) = &self.relations {
            let _ = writeln!(
                s,
                "relations ({}) in shifts ({}):",
                r.rows.len(),
                join(&r.shifts)
            );
            for (j, row) in r.rows.iter().enumerate() {
                let _ = writeln!(s, "  r{} = [{}]", j + 1, row.join(", "));
            }
        }
        if let Some(ini) = &self.initial_terms {
            let _ = writeln!(s, "initial terms ({}):", ini.len());
            for (i, e) in ini.iter().enumerate() {
                let _ = writeln!(s, "  ini(g{}) = {}", i + 1, e.text());
            }
        }
        if let Some(m) = &self.membership {
            if m.member {
                let _ = writeln!(s, "{}: member", m.target);
                if let Some(cs) = &m.coefficients {
                    let _ = writeln!(s, "  coefficients [{}]", cs.join(", "));
                }
            } else {
                let _ = writeln!(s, "{}: NOT a member", m.target);
                let _ = writeln!(s, "  remainder {}", m.remainder.text());
            }
        }
        if let Some(r) = &self.report {
            let _ = writeln!(
                s,
                "report: {} after {} rounds (cap {}), growth {}",
                r.outcome,
                r.rounds,
                r.cap,
                r.growth
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(" -> ")
            );
        }
        if let Some(v) = &self.verdict {
            let detail = match (v.degree, v.slack, &v.reason) {
                (Some(d), Some(k), _) => format!(" in degree {d} with slack {k}"),
                (_, _, Some(reason)) => format!(": {reason}"),
                _ => String::new(),
            };
            let _ = writeln!(
                s,
                "verify (truncate {}, slack <= {}): {}{detail}",
                v.truncate, v.max_slack, v.status
            );
        }
        s
    }
}

fn join(xs: &[i32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn list(s: &mut String, label: &str, items: &[Element]) {
    for (i, e) in items.iter().enumerate() {
        let _ = writeln!(s, "  {label}{} = {}", i + 1, e.text());
    }
}
