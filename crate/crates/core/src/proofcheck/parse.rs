use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::proofcheck::ast::{
    Atom, Claim, Direction, Equation, Mode, ProofScript, RewriteStep, Side, Step, Word,
};

/// Identifiers treated as variables unless a script says otherwise.
pub const DEFAULT_VARIABLES: [&str; 6] = ["u", "v", "w", "x", "y", "z"];

pub(crate) fn default_variable_set() -> BTreeSet<String> {
    DEFAULT_VARIABLES.iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Star,
    LPar,
    RPar,
    Prime,
    Equals,
    LBrace,
    RBrace,
    Semi,
    Dot,
    Colon,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Star => "'*'".into(),
            Tok::LPar => "'('".into(),
            Tok::RPar => "')'".into(),
            Tok::Prime => "'''".into(),
            Tok::Equals => "'='".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Semi => "';'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Colon => "':'".into(),
        }
    }
}

/// Tokenizes one line; `#` starts a comment running to the end.
fn lex_line(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LPar, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RPar, col));
                i += 1;
            }
            '\'' => {
                toks.push((Tok::Prime, col));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Equals, col));
                i += 1;
            }
            '{' => {
                toks.push((Tok::LBrace, col));
                i += 1;
            }
            '}' => {
                toks.push((Tok::RBrace, col));
                i += 1;
            }
            ';' => {
                toks.push((Tok::Semi, col));
                i += 1;
            }
            '.' => {
                toks.push((Tok::Dot, col));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let n: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::parse(line, col, "number out of range"))?;
                toks.push((Tok::Num(n), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(Error::parse(line, col, format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    line_len: usize,
    vars: &'a BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.line_len + 1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {}, found {}", want.describe(), t.describe()))),
            None => Err(self.err(format!("expected {} at end of line", want.describe()))),
        }
    }

    fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.err(format!("expected an identifier, found {}", t.describe()))),
            None => Err(self.err("expected an identifier at end of line")),
        }
    }

    fn expect_num(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            Some(t) => Err(self.err(format!("expected a number, found {}", t.describe()))),
            None => Err(self.err("expected a number at end of line")),
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected trailing {}", t.describe()))),
        }
    }

    /// word := factor ('*' factor)*
    fn word(&mut self) -> Result<Word> {
        let mut atoms = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            atoms.extend(self.factor()?);
        }
        Word::new(atoms)
    }

    /// factor := (ident | 'g' '(' word ')' | '(' word ')') prime*
    ///
    /// A parenthesized group without primes just flattens into the
    /// surrounding product.
    fn factor(&mut self) -> Result<Vec<Atom>> {
        let base: Vec<Atom> = match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                if name == "g" && self.peek() == Some(&Tok::LPar) {
                    self.pos += 1;
                    let inner = self.word()?;
                    self.expect(&Tok::RPar)?;
                    vec![Atom::G(inner)]
                } else if self.vars.contains(&name) {
                    vec![Atom::Var(name)]
                } else {
                    vec![Atom::Const(name)]
                }
            }
            Some(Tok::LPar) => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(&Tok::RPar)?;
                inner.atoms().to_vec()
            }
            Some(t) => return Err(self.err(format!("expected a factor, found {}", t.describe()))),
            None => return Err(self.err("expected a factor at end of line")),
        };
        let mut primes = 0usize;
        while self.peek() == Some(&Tok::Prime) {
            self.pos += 1;
            primes += 1;
        }
        if primes == 0 {
            return Ok(base);
        }
        let mut atom = Atom::Inv(Word::new(base)?);
        for _ in 1..primes {
            atom = Atom::Inv(Word::new(vec![atom])?);
        }
        Ok(vec![atom])
    }

    /// equation := word '=' word
    fn equation(&mut self, name: String) -> Result<Equation> {
        let lhs = self.word()?;
        self.expect(&Tok::Equals)?;
        let rhs = self.word()?;
        Ok(Equation { name, lhs, rhs })
    }
}

fn parser<'a>(
    toks: &'a [(Tok, usize)],
    line: usize,
    line_len: usize,
    vars: &'a BTreeSet<String>,
) -> Parser<'a> {
    Parser {
        toks,
        pos: 0,
        line,
        line_len,
        vars,
    }
}

/// Parses a single word against an explicit variable alphabet.
pub fn parse_word(text: &str, variables: &BTreeSet<String>) -> Result<Word> {
    let toks = lex_line(text, 1)?;
    let mut p = parser(&toks, 1, text.len(), variables);
    let w = p.word()?;
    p.expect_end()?;
    Ok(w)
}

/// Parses `lhs = rhs` with the default variable alphabet; the result is
/// anonymous.
pub fn parse_equation(text: &str) -> Result<Equation> {
    let vars = default_variable_set();
    let toks = lex_line(text, 1)?;
    let mut p = parser(&toks, 1, text.len(), &vars);
    let eq = p.equation(String::new())?;
    p.expect_end()?;
    Ok(eq)
}

struct OpenClaim {
    goal: Equation,
    start: Option<Word>,
    steps: Vec<Step>,
    line: usize,
}

/// Parses a full `.prf` document.
///
/// Line oriented: `mode`, `vars`, `hyp name: eq` before the first
/// claim; then per claim `claim name: eq`, an optional leading
/// `start word`, step lines (`rw`, `cancel-left`, `cancel-right`,
/// `refl`), and a closing `qed`. `#` comments and blank lines are
/// ignored.
pub fn parse_script(text: &str) -> Result<ProofScript> {
    let mut mode = Mode::Plain;
    let mut mode_seen = false;
    let mut variables = default_variable_set();
    let mut hypotheses: Vec<Equation> = Vec::new();
    let mut claims: Vec<Claim> = Vec::new();
    let mut open: Option<OpenClaim> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = lex_line(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = parser(&toks, line_no, raw.len(), &variables);
        let head = p.expect_ident()?;
        match head.as_str() {
            "mode" => {
                if open.is_some() || !claims.is_empty() || !hypotheses.is_empty() {
                    return Err(p.err("mode must come before hypotheses and claims"));
                }
                if mode_seen {
                    return Err(p.err("mode declared twice"));
                }
                mode = match p.expect_ident()?.as_str() {
                    "plain" => Mode::Plain,
                    "cancellative" => Mode::Cancellative,
                    other => {
                        return Err(p.err(format!(
                            "unknown mode {other:?}; expected plain or cancellative"
                        )))
                    }
                };
                mode_seen = true;
                p.expect_end()?;
            }
            "vars" => {
                if open.is_some() || !claims.is_empty() || !hypotheses.is_empty() {
                    return Err(p.err("vars must come before hypotheses and claims"));
                }
                let mut fresh = Vec::new();
                while p.peek().is_some() {
                    let v = p.expect_ident()?;
                    if v == "g" {
                        return Err(p.err("g is reserved for the unary map"));
                    }
                    fresh.push(v);
                }
                if fresh.is_empty() {
                    return Err(p.err("vars needs at least one identifier"));
                }
                variables.extend(fresh);
            }
            "hyp" => {
                if open.is_some() || !claims.is_empty() {
                    return Err(p.err("hypotheses must come before the first claim"));
                }
                let name = p.expect_ident()?;
                p.expect(&Tok::Colon)?;
                let eq = p.equation(name)?;
                p.expect_end()?;
                hypotheses.push(eq);
            }
            "claim" => {
                if let Some(c) = &open {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("claim {} (line {}) is missing qed", c.goal.name, c.line),
                    ));
                }
                let name = p.expect_ident()?;
                p.expect(&Tok::Colon)?;
                let goal = p.equation(name)?;
                p.expect_end()?;
                open = Some(OpenClaim {
                    goal,
                    start: None,
                    steps: Vec::new(),
                    line: line_no,
                });
            }
            "start" => {
                let c = open
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, 1, "start outside a claim"))?;
                if c.start.is_some() || !c.steps.is_empty() {
                    return Err(p.err("start must be the first line of a claim"));
                }
                let w = p.word()?;
                p.expect_end()?;
                c.start = Some(w);
            }
            "rw" => {
                let direction = match p.expect_ident()?.as_str() {
                    "L2R" => Direction::L2R,
                    "R2L" => Direction::R2L,
                    other => {
                        return Err(p.err(format!("unknown direction {other:?}; expected L2R or R2L")))
                    }
                };
                let rule = p.expect_ident()?;
                let at = p.expect_ident()?;
                if at != "at" {
                    return Err(p.err(format!("expected 'at', found {at:?}")));
                }
                let side = match p.expect_ident()?.as_str() {
                    "lhs" => Side::Lhs,
                    "rhs" => Side::Rhs,
                    other => {
                        return Err(p.err(format!("unknown side {other:?}; expected lhs or rhs")))
                    }
                };
                let mut path = Vec::new();
                while p.peek() == Some(&Tok::Dot) {
                    p.bump();
                    path.push(p.expect_num()?);
                }
                let Some((&offset, descent)) = path.split_last() else {
                    return Err(p.err("path needs at least an offset, like rhs.0"));
                };
                let mut subst = Vec::new();
                if p.peek().is_some() {
                    let kw = p.expect_ident()?;
                    if kw != "sub" {
                        return Err(p.err(format!("expected 'sub', found {kw:?}")));
                    }
                    p.expect(&Tok::LBrace)?;
                    loop {
                        let v = p.expect_ident()?;
                        p.expect(&Tok::Equals)?;
                        let w = p.word()?;
                        if subst.iter().any(|(seen, _)| *seen == v) {
                            return Err(p.err(format!("variable {v} bound twice")));
                        }
                        subst.push((v, w));
                        match p.bump() {
                            Some(Tok::Semi) => {
                                if p.peek() == Some(&Tok::RBrace) {
                                    p.bump();
                                    break;
                                }
                            }
                            Some(Tok::RBrace) => break,
                            _ => return Err(p.err("expected ';' or '}' in substitution")),
                        }
                    }
                }
                p.expect_end()?;
                let c = open
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, 1, "rw outside a claim"))?;
                c.steps.push(Step::Rewrite(RewriteStep {
                    direction,
                    rule,
                    side,
                    descent: descent.to_vec(),
                    offset,
                    subst,
                }));
            }
            "cancel-left" | "cancel-right" => {
                let count_col = p.col();
                let k = p.expect_num()?;
                p.expect_end()?;
                if k == 0 {
                    return Err(Error::parse(
                        line_no,
                        count_col,
                        "cancel count must be at least 1",
                    ));
                }
                let c = open
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, 1, format!("{head} outside a claim")))?;
                c.steps.push(if head == "cancel-left" {
                    Step::CancelLeft(k)
                } else {
                    Step::CancelRight(k)
                });
            }
            "refl" => {
                p.expect_end()?;
                let c = open
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, 1, "refl outside a claim"))?;
                c.steps.push(Step::Refl);
            }
            "qed" => {
                p.expect_end()?;
                let c = open
                    .take()
                    .ok_or_else(|| Error::parse(line_no, 1, "qed outside a claim"))?;
                claims.push(Claim {
                    goal: c.goal,
                    start: c.start,
                    steps: c.steps,
                });
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("unknown directive {other:?}"),
                ));
            }
        }
    }
    if let Some(c) = open {
        return Err(Error::parse(
            c.line,
            1,
            format!("claim {} is missing qed", c.goal.name),
        ));
    }
    Ok(ProofScript {
        mode,
        variables,
        hypotheses,
        claims,
    })
}
