//! Rendering of results in both output formats. Text mode favors
//! stable `key=value` lines; records mode emits one JSON object per
//! line carrying the same data.
//!
//! Everything writes through an [`io::Write`] so the caller can treat
//! a consumer that stops reading (a closed pipe) as a clean end.

use std::io::{self, Write};

use semikit::classify::ClassificationReport;
use semikit::decompose::{ComponentCancellativityAudit, SemilatticeDecomposition};
use semikit::verify::AuditResult;
use semikit::{CayleyTable, Element};
use serde_json::{json, Value};

use crate::args::Format;

pub fn table_rows(t: &CayleyTable) -> Vec<Vec<usize>> {
    (0..t.order()).map(|i| t.row(i).to_vec()).collect()
}

pub fn table_json(t: &CayleyTable) -> Value {
    let mut obj = json!({ "order": t.order(), "rows": table_rows(t) });
    if !t.has_default_names() {
        let names: Vec<String> = (0..t.order())
            .map(|i| t.name(Element(i)).to_string())
            .collect();
        obj["names"] = json!(names);
    }
    obj
}

pub fn write_table(out: &mut dyn Write, t: &CayleyTable, format: Format) -> io::Result<()> {
    match format {
        Format::Text => write!(out, "{}", t.to_sg()),
        Format::Records => writeln!(out, "{}", table_json(t)),
    }
}

fn opt_element(e: Option<Element>) -> Value {
    match e {
        Some(e) => json!(e.0),
        None => Value::Null,
    }
}

pub fn write_classification(
    out: &mut dyn Write,
    r: &ClassificationReport,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "order={}", r.order)?;
            writeln!(out, "commutative={}", r.commutative)?;
            writeln!(out, "cancellative={}", r.cancellative)?;
            writeln!(out, "separative={}", r.separative)?;
            writeln!(out, "regular={}", r.regular)?;
            writeln!(out, "inverse={}", r.inverse)?;
            writeln!(out, "completely_regular={}", r.completely_regular)?;
            writeln!(out, "clifford={}", r.clifford)?;
            writeln!(out, "group={}", r.group)?;
            writeln!(out, "has_identity={}", r.has_identity)?;
            match r.identity {
                Some(e) => writeln!(out, "identity={}", e.0)?,
                None => writeln!(out, "identity=none")?,
            }
            writeln!(out, "idempotent_count={}", r.idempotent_count)
        }
        Format::Records => writeln!(
            out,
            "{}",
            json!({
                "order": r.order,
                "commutative": r.commutative,
                "cancellative": r.cancellative,
                "separative": r.separative,
                "regular": r.regular,
                "inverse": r.inverse,
                "completely_regular": r.completely_regular,
                "clifford": r.clifford,
                "group": r.group,
                "has_identity": r.has_identity,
                "identity": opt_element(r.identity),
                "idempotent_count": r.idempotent_count,
            })
        ),
    }
}

pub fn write_decomposition(
    out: &mut dyn Write,
    d: &SemilatticeDecomposition,
    audit: &ComponentCancellativityAudit,
    format: Format,
) -> io::Result<()> {
    let cancellative: Vec<bool> = d
        .components
        .iter()
        .map(|c| {
            semikit::classify::check_basic(&c.table)
                .expect("components of a decomposition are associative")
                .cancellative
        })
        .collect();
    match format {
        Format::Text => {
            writeln!(out, "classes={}", d.components.len())?;
            let classes: Vec<String> = (0..d.partition.size())
                .map(|x| d.partition.class_of(Element(x)).to_string())
                .collect();
            writeln!(out, "partition={}", classes.join(" "))?;
            writeln!(out, "separative={}", audit.separative)?;
            writeln!(
                out,
                "components_cancellative={}",
                audit.components_cancellative
            )?;
            for (c, cancel) in d.components.iter().zip(&cancellative) {
                let members: Vec<String> = c.elements.iter().map(|e| e.0.to_string()).collect();
                writeln!(
                    out,
                    "class {}: order={} elements={} cancellative={}",
                    c.class_id,
                    c.table.order(),
                    members.join(" "),
                    cancel
                )?;
            }
            writeln!(out, "quotient:")?;
            write!(out, "{}", d.quotient.to_sg())
        }
        Format::Records => {
            let components: Vec<Value> = d
                .components
                .iter()
                .zip(&cancellative)
                .map(|(c, cancel)| {
                    json!({
                        "class": c.class_id,
                        "elements": c.elements.iter().map(|e| e.0).collect::<Vec<_>>(),
                        "cancellative": cancel,
                        "table": table_json(&c.table),
                    })
                })
                .collect();
            let partition: Vec<usize> = (0..d.partition.size())
                .map(|x| d.partition.class_of(Element(x)))
                .collect();
            writeln!(
                out,
                "{}",
                json!({
                    "classes": d.components.len(),
                    "partition": partition,
                    "separative": audit.separative,
                    "components_cancellative": audit.components_cancellative,
                    "components": components,
                    "quotient": table_json(&d.quotient),
                })
            )
        }
    }
}

pub fn write_audit(out: &mut dyn Write, r: &AuditResult, format: Format) -> io::Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "claim={}", r.claim)?;
            writeln!(out, "universe={}", r.universe)?;
            writeln!(out, "models_checked={}", r.models_checked)?;
            writeln!(out, "hypothesis_matches={}", r.hypothesis_matches)?;
            for note in &r.notes {
                writeln!(out, "note={note}")?;
            }
            writeln!(out, "violations={}", r.violations.len())?;
            for v in &r.violations {
                writeln!(out, "violation={}", v.detail)?;
                let witness: Vec<String> = v.witness.iter().map(|e| e.0.to_string()).collect();
                writeln!(out, "witness={}", witness.join(" "))?;
                if let Some(t) = &v.table {
                    writeln!(out, "table:")?;
                    write!(out, "{}", t.to_sg())?;
                }
            }
            writeln!(out, "verdict={}", r.verdict.as_str())
        }
        Format::Records => {
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "detail": v.detail,
                        "witness": v.witness.iter().map(|e| e.0).collect::<Vec<_>>(),
                        "table": v.table.as_ref().map(table_json),
                    })
                })
                .collect();
            writeln!(
                out,
                "{}",
                json!({
                    "claim": r.claim,
                    "universe": r.universe,
                    "models_checked": r.models_checked,
                    "hypothesis_matches": r.hypothesis_matches,
                    "notes": r.notes,
                    "violations": violations,
                    "verdict": r.verdict.as_str(),
                })
            )
        }
    }
}
