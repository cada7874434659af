use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use semikit::classify::{classify, ClassificationReport};
use semikit::construct::{
    brandt_b2, count_semigroups, cyclic_group, enumerate_semigroups, fold_tables, heisenberg_mod,
    left_zero, monogenic, right_zero, symmetric_group,
};
use semikit::decompose::{audit_component_cancellativity, decompose_semilattice};
use semikit::proofcheck::{check_proof, emit_prover9, parse_script, Theory};
use semikit::verify::{
    audit_counterexample, audit_theorem, AuditParams, CounterexampleId, TheoremClaim, Verdict,
};
use semikit::CayleyTable;
use serde_json::json;

use crate::args::{Cli, Command, Format};
use crate::render;

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

pub fn run(cli: Cli) -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, cli.format, cli.jobs, &mut out) {
        Ok(code) => code,
        // A consumer that stopped reading is a clean end, not a fault.
        Err(e) if is_broken_pipe(e.as_ref()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn is_broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => 0,
        Verdict::Violated => 1,
        Verdict::HypothesisNeverSatisfied => 3,
    }
}

fn read_table(path: &Path) -> CliResult<CayleyTable> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(CayleyTable::parse_sg(&text)?)
}

fn dispatch(cmd: Command, format: Format, jobs: usize, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Construct { name, params, out: dest } => {
            construct(&name, &params, dest, format, out)
        }
        Command::Classify { file } => {
            let report = classify(&read_table(&file)?)?;
            render::write_classification(out, &report, format)?;
            Ok(0)
        }
        Command::Decompose { file, out_dir } => decompose(&file, out_dir, format, out),
        Command::Enumerate {
            order,
            count_only,
            iso,
            filter,
        } => enumerate(order, count_only, iso, &filter, format, jobs, out),
        Command::Verify {
            claim,
            max_order,
            p,
            q,
            k,
            exponent_bound,
        } => {
            let claim = TheoremClaim::from_str(&claim)?;
            let params = AuditParams {
                p,
                q,
                k,
                exponent_bound,
                jobs,
            };
            let result = audit_theorem(claim, max_order, &params)?;
            render::write_audit(out, &result, format)?;
            Ok(verdict_code(result.verdict))
        }
        Command::AuditExample { id } => {
            let id = CounterexampleId::from_str(&id)?;
            let result = audit_counterexample(id)?;
            render::write_audit(out, &result, format)?;
            Ok(verdict_code(result.verdict))
        }
        Command::Replay { file } => replay(&file, format, out),
        Command::EmitProver9 { p, q, theory, out: dest } => {
            let text = emit_prover9(p, q, Theory::from_str(&theory)?)?;
            match dest {
                Some(path) => {
                    fs::write(&path, &text)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    eprintln!("wrote {}", path.display());
                }
                None => match format {
                    Format::Text => write!(out, "{text}")?,
                    Format::Records => writeln!(
                        out,
                        "{}",
                        json!({ "p": p, "q": q, "theory": theory, "input": text })
                    )?,
                },
            }
            Ok(0)
        }
    }
}

fn construct(
    name: &str,
    params: &[String],
    dest: Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let want = |n: usize| -> CliResult<()> {
        if params.len() != n {
            return Err(format!(
                "`{name}` takes {n} parameter(s), got {}",
                params.len()
            )
            .into());
        }
        Ok(())
    };
    let int = |i: usize| -> CliResult<usize> {
        params[i]
            .parse()
            .map_err(|_| format!("invalid integer {:?}", params[i]).into())
    };
    let table = match name {
        "cyclic" => {
            want(1)?;
            cyclic_group(int(0)?)?
        }
        "monogenic" => {
            want(2)?;
            monogenic(int(0)?, int(1)?)?
        }
        "left-zero" => {
            want(1)?;
            left_zero(int(0)?)?
        }
        "right-zero" => {
            want(1)?;
            right_zero(int(0)?)?
        }
        "brandt-b2" => {
            want(0)?;
            brandt_b2()
        }
        "heisenberg" => {
            want(1)?;
            heisenberg_mod(int(0)?)?
        }
        "symmetric" => {
            want(1)?;
            symmetric_group(int(0)?)?
        }
        "opposite" => {
            want(1)?;
            read_table(Path::new(&params[0]))?.opposite()
        }
        "product" => {
            want(2)?;
            read_table(Path::new(&params[0]))?.direct_product(&read_table(Path::new(&params[1]))?)?
        }
        other => {
            return Err(format!(
                "unknown family {other:?}; expected one of cyclic, monogenic, left-zero, \
                 right-zero, brandt-b2, heisenberg, symmetric, opposite, product"
            )
            .into())
        }
    };
    match dest {
        Some(path) => {
            fs::write(&path, table.to_sg())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            eprintln!("wrote {} (order {})", path.display(), table.order());
        }
        None => render::write_table(out, &table, format)?,
    }
    Ok(0)
}

fn decompose(
    file: &Path,
    out_dir: Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let table = read_table(file)?;
    let d = decompose_semilattice(&table)?;
    let audit = audit_component_cancellativity(&table)?;
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(&dir)
                .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            let base = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "table".into());
            for (name, doc) in d.sg_documents(&base) {
                let path = dir.join(name);
                fs::write(&path, doc)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
        }
        None => render::write_decomposition(out, &d, &audit, format)?,
    }
    Ok(0)
}

/// A `--filter` predicate, possibly negated with a leading `!`.
struct Filter {
    field: fn(&ClassificationReport) -> bool,
    want: bool,
}

fn parse_filter(raw: &str) -> CliResult<Filter> {
    let (name, want) = match raw.strip_prefix('!') {
        Some(rest) => (rest, false),
        None => (raw, true),
    };
    let field: fn(&ClassificationReport) -> bool = match name {
        "commutative" => |r| r.commutative,
        "cancellative" => |r| r.cancellative,
        "separative" => |r| r.separative,
        "has-identity" => |r| r.has_identity,
        "band" => |r| r.idempotent_count == r.order,
        "regular" => |r| r.regular,
        "inverse" => |r| r.inverse,
        "completely-regular" => |r| r.completely_regular,
        "clifford" => |r| r.clifford,
        "group" => |r| r.group,
        other => {
            return Err(format!(
                "unknown predicate {other:?}; expected one of commutative, cancellative, \
                 separative, has-identity, band, regular, inverse, completely-regular, \
                 clifford, group"
            )
            .into())
        }
    };
    Ok(Filter { field, want })
}

fn passes(t: &CayleyTable, filters: &[Filter]) -> bool {
    if filters.is_empty() {
        return true;
    }
    let report = classify(t).expect("enumerated tables are associative");
    filters.iter().all(|f| (f.field)(&report) == f.want)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    order: usize,
    count_only: bool,
    iso: bool,
    filter: &[String],
    format: Format,
    jobs: usize,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let filters: Vec<Filter> = filter.iter().map(|f| parse_filter(f)).collect::<CliResult<_>>()?;
    if count_only {
        let count = if iso {
            enumerate_semigroups(order)?
                .up_to_iso()
                .filter(|t| passes(t, &filters))
                .count() as u64
        } else if filters.is_empty() {
            count_semigroups(order, jobs)?
        } else {
            fold_tables(
                order,
                jobs,
                || 0u64,
                |acc, t| {
                    if passes(&t, &filters) {
                        *acc += 1;
                    }
                },
                |a, b| a + b,
            )?
        };
        match format {
            Format::Text => writeln!(out, "{count}")?,
            Format::Records => writeln!(out, "{}", json!({ "order": order, "count": count }))?,
        }
        return Ok(0);
    }

    let base = enumerate_semigroups(order)?;
    let tables: Box<dyn Iterator<Item = CayleyTable>> = if iso {
        Box::new(base.up_to_iso())
    } else {
        Box::new(base)
    };
    let mut first = true;
    for t in tables.filter(|t| passes(t, &filters)) {
        match format {
            Format::Text => {
                let sep = if first { "" } else { "\n" };
                write!(out, "{sep}{}", t.to_sg())?;
            }
            Format::Records => writeln!(out, "{}", render::table_json(&t))?,
        }
        first = false;
    }
    Ok(0)
}

fn replay(file: &Path, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let text = fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let script = parse_script(&text)?;
    let report = check_proof(&script)?;
    let verified = report.claims.iter().filter(|c| c.verified).count();
    match format {
        Format::Text => {
            for c in &report.claims {
                match &c.failure {
                    None => writeln!(out, "claim {}: verified ({} steps)", c.name, c.steps.len())?,
                    Some(failure) => writeln!(out, "claim {}: FAILED: {failure}", c.name)?,
                }
            }
            writeln!(
                out,
                "script: {verified} of {} claims verified",
                report.claims.len()
            )?;
        }
        Format::Records => {
            for c in &report.claims {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "claim": c.name,
                        "goal": c.goal.to_string(),
                        "verified": c.verified,
                        "steps": c.steps.len(),
                        "failure": c.failure,
                    })
                )?;
            }
            writeln!(
                out,
                "{}",
                json!({
                    "claims": report.claims.len(),
                    "verified": verified,
                    "script_verified": report.verified,
                })
            )?;
        }
    }
    Ok(if report.verified { 0 } else { 1 })
}
