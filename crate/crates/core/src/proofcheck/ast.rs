use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// One factor of a product. Associativity is structural: products are
/// flat sequences, so only genuinely nested things (unary map images,
/// inverse marks) introduce subtrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Universally quantified placeholder.
    Var(String),
    /// Fixed but unspecified element.
    Const(String),
    /// Image of a word under the unary map `g`.
    G(Word),
    /// Inverse mark: `x'`, `(x * y)'`.
    Inv(Word),
}

/// A nonempty product of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    atoms: Vec<Atom>,
}

impl Word {
    pub fn new(atoms: Vec<Atom>) -> Result<Word> {
        if atoms.is_empty() {
            return Err(Error::input("a word needs at least one atom"));
        }
        Ok(Word { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    // No is_empty: words are nonempty by construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.atoms.len()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(name) | Atom::Const(name) => f.write_str(name),
            Atom::G(w) => write!(f, "g({w})"),
            Atom::Inv(w) => {
                if w.len() == 1 {
                    write!(f, "{}'", w.atoms()[0])
                } else {
                    write!(f, "({w})'")
                }
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A named identity between two words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    L2R,
    R2L,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::L2R => "L2R",
            Direction::R2L => "R2L",
        }
    }

    pub fn flipped(self) -> Direction {
        match self {
            Direction::L2R => Direction::R2L,
            Direction::R2L => Direction::L2R,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

/// One directed rule application at an explicit position. `descent`
/// walks into nested atom arguments; `offset` indexes into the word
/// finally reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub direction: Direction,
    pub rule: String,
    pub side: Side,
    pub descent: Vec<usize>,
    pub offset: usize,
    pub subst: Vec<(String, Word)>,
}

impl RewriteStep {
    pub fn path_string(&self) -> String {
        let mut s = self.side.as_str().to_string();
        for d in &self.descent {
            s.push_str(&format!(".{d}"));
        }
        s.push_str(&format!(".{}", self.offset));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Rewrite(RewriteStep),
    CancelLeft(usize),
    CancelRight(usize),
    Refl,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Rewrite(r) => {
                write!(f, "rw {} {} at {}", r.direction.as_str(), r.rule, r.path_string())?;
                if !r.subst.is_empty() {
                    f.write_str(" sub {")?;
                    for (i, (v, w)) in r.subst.iter().enumerate() {
                        if i > 0 {
                            f.write_str("; ")?;
                        }
                        write!(f, "{v} = {w}")?;
                    }
                    f.write_str("}")?;
                }
                Ok(())
            }
            Step::CancelLeft(k) => write!(f, "cancel-left {k}"),
            Step::CancelRight(k) => write!(f, "cancel-right {k}"),
            Step::Refl => f.write_str("refl"),
        }
    }
}

/// A goal with its replay recipe. Replay starts from `start` (or the
/// goal's left side when absent) on both sides of the working equation
/// and must end literally at the goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub goal: Equation,
    pub start: Option<Word>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Equational steps only.
    Plain,
    /// Also admits left/right cancellation steps.
    Cancellative,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Cancellative => "cancellative",
        }
    }
}

/// A parsed proof script: a theory mode, a variable alphabet, named
/// hypotheses, and claims proven in order (each may use the ones
/// before it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub mode: Mode,
    pub variables: BTreeSet<String>,
    pub hypotheses: Vec<Equation>,
    pub claims: Vec<Claim>,
}
