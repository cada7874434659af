use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::verify::bezout;

/// Background theory for an emitted first-order problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    /// Associativity, a two-sided identity `e`, and two-sided inverses.
    Group,
    /// Associativity plus left and right cancellation implications.
    Cancellative,
}

impl Theory {
    pub fn as_str(self) -> &'static str {
        match self {
            Theory::Group => "group",
            Theory::Cancellative => "cancellative",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theory> {
        match s {
            "group" => Ok(Theory::Group),
            "cancellative" => Ok(Theory::Cancellative),
            other => Err(Error::input(format!(
                "unknown theory {other:?}; expected group or cancellative"
            ))),
        }
    }
}

/// Renders `v^k` as a right-nested product: `v`, `v * v`,
/// `v * (v * v)`, `v * (v * (v * v))`, ...
fn power(v: &str, k: u32) -> String {
    match k {
        1 => v.to_string(),
        2 => format!("{v} * {v}"),
        _ => format!("{v} * ({})", power(v, k - 1)),
    }
}

fn power_hypothesis(k: u32) -> String {
    let px = power("x", k);
    let py = power("y", k);
    format!("({px}) * ({py}) = ({py}) * ({px}).")
}

/// Emits a Prover9 input asking whether commuting p-th and q-th powers
/// force commutativity over the chosen theory.
pub fn emit_prover9(p: u32, q: u32, theory: Theory) -> Result<String> {
    if p < 2 || q < 2 {
        return Err(Error::input(format!(
            "exponents must be at least 2, got {p} and {q}"
        )));
    }
    bezout(p, q)?;

    let mut lines = vec!["formulas(assumptions).".to_string()];
    lines.push("(x * y) * z = x * (y * z).".to_string());
    match theory {
        Theory::Group => {
            lines.push("e * x = x. x * e = x.".to_string());
            lines.push("x' * x = e. x * x' = e.".to_string());
        }
        Theory::Cancellative => {
            lines.push("x * y = x * z -> y = z.".to_string());
            lines.push("y * x = z * x -> y = z.".to_string());
        }
    }
    lines.push(String::new());
    lines.push(power_hypothesis(p));
    lines.push(String::new());
    lines.push(power_hypothesis(q));
    lines.push("end_of_list.".to_string());
    lines.push(String::new());
    lines.push("formulas(goals).".to_string());
    lines.push("x * y = y * x.".to_string());
    lines.push("end_of_list.".to_string());
    let mut out = lines.join("\n");
    out.push('\n');
    Ok(out)
}
