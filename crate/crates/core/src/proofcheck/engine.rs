use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::proofcheck::ast::{
    Atom, Claim, Direction, Equation, Mode, ProofScript, RewriteStep, Side, Step, Word,
};

/// Applies a simultaneous substitution to a word. Bound variables are
/// spliced in as flat subwords; everything else is copied, recursing
/// through g(...) arguments and inverse bodies.
pub fn substitute(word: &Word, subst: &[(String, Word)]) -> Word {
    let mut atoms = Vec::with_capacity(word.len());
    for atom in word.atoms() {
        match atom {
            Atom::Var(name) => match subst.iter().find(|(v, _)| v == name) {
                Some((_, w)) => atoms.extend_from_slice(w.atoms()),
                None => atoms.push(atom.clone()),
            },
            Atom::Const(_) => atoms.push(atom.clone()),
            Atom::G(inner) => atoms.push(Atom::G(substitute(inner, subst))),
            Atom::Inv(inner) => atoms.push(Atom::Inv(substitute(inner, subst))),
        }
    }
    Word::new(atoms).expect("substitution keeps words nonempty")
}

fn splice(word: &Word, offset: usize, pattern: &Word, replacement: &Word) -> Result<Word> {
    let atoms = word.atoms();
    let plen = pattern.len();
    if offset + plen > atoms.len() {
        return Err(Error::contract(format!(
            "pattern {pattern} does not fit at offset {offset} of {word}"
        )));
    }
    let window = &atoms[offset..offset + plen];
    if window != pattern.atoms() {
        let found = Word::new(window.to_vec()).expect("window is nonempty");
        return Err(Error::contract(format!(
            "expected {pattern} at offset {offset} of {word}, found {found}"
        )));
    }
    let mut out = Vec::with_capacity(atoms.len() - plen + replacement.len());
    out.extend_from_slice(&atoms[..offset]);
    out.extend_from_slice(replacement.atoms());
    out.extend_from_slice(&atoms[offset + plen..]);
    Word::new(out)
}

fn rewrite_at(
    word: &Word,
    descent: &[usize],
    offset: usize,
    pattern: &Word,
    replacement: &Word,
) -> Result<Word> {
    let Some((&index, rest)) = descent.split_first() else {
        return splice(word, offset, pattern, replacement);
    };
    let atoms = word.atoms();
    let Some(atom) = atoms.get(index) else {
        return Err(Error::contract(format!(
            "descent position {index} is out of range in {word}"
        )));
    };
    let rebuilt = match atom {
        Atom::G(inner) => Atom::G(rewrite_at(inner, rest, offset, pattern, replacement)?),
        Atom::Inv(inner) => Atom::Inv(rewrite_at(inner, rest, offset, pattern, replacement)?),
        flat => {
            return Err(Error::contract(format!(
                "descent position {index} of {word} holds {flat}, which has no inner word"
            )))
        }
    };
    let mut out = atoms.to_vec();
    out[index] = rebuilt;
    Word::new(out)
}

/// Rewrites `target` with one instance of `rule`.
///
/// The substitution is applied to both sides of the rule first; the
/// chosen source side must then match `target` literally at the given
/// descent path and offset, and is replaced by the other side.
pub fn apply_rewrite(
    target: &Word,
    rule: &Equation,
    direction: Direction,
    descent: &[usize],
    offset: usize,
    subst: &[(String, Word)],
) -> Result<Word> {
    let (from, to) = match direction {
        Direction::L2R => (&rule.lhs, &rule.rhs),
        Direction::R2L => (&rule.rhs, &rule.lhs),
    };
    let pattern = substitute(from, subst);
    let replacement = substitute(to, subst);
    rewrite_at(target, descent, offset, &pattern, &replacement)
}

/// Strips a common prefix of length `k` from both sides.
pub fn apply_cancel_left(lhs: &Word, rhs: &Word, k: usize) -> Result<(Word, Word)> {
    if k == 0 {
        return Err(Error::input("cancel count must be at least 1"));
    }
    if lhs.len() <= k || rhs.len() <= k {
        return Err(Error::contract(format!(
            "cancel-left {k} needs more than {k} atoms on each side of {lhs} = {rhs}"
        )));
    }
    if lhs.atoms()[..k] != rhs.atoms()[..k] {
        return Err(Error::contract(format!(
            "cancel-left {k}: the first {k} atoms of {lhs} and {rhs} differ"
        )));
    }
    Ok((
        Word::new(lhs.atoms()[k..].to_vec())?,
        Word::new(rhs.atoms()[k..].to_vec())?,
    ))
}

/// Strips a common suffix of length `k` from both sides.
pub fn apply_cancel_right(lhs: &Word, rhs: &Word, k: usize) -> Result<(Word, Word)> {
    if k == 0 {
        return Err(Error::input("cancel count must be at least 1"));
    }
    if lhs.len() <= k || rhs.len() <= k {
        return Err(Error::contract(format!(
            "cancel-right {k} needs more than {k} atoms on each side of {lhs} = {rhs}"
        )));
    }
    if lhs.atoms()[lhs.len() - k..] != rhs.atoms()[rhs.len() - k..] {
        return Err(Error::contract(format!(
            "cancel-right {k}: the last {k} atoms of {lhs} and {rhs} differ"
        )));
    }
    Ok((
        Word::new(lhs.atoms()[..lhs.len() - k].to_vec())?,
        Word::new(rhs.atoms()[..rhs.len() - k].to_vec())?,
    ))
}

/// One replayed step: what it did, the state around it, and the error
/// if it refused to apply.
#[derive(Debug, Clone)]
pub struct StepTrace {
    pub description: String,
    pub before: (String, String),
    pub after: Option<(String, String)>,
    pub error: Option<String>,
}

/// Replay outcome for a single claim.
#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub name: String,
    pub goal: String,
    pub verified: bool,
    pub steps: Vec<StepTrace>,
    pub failure: Option<String>,
}

/// Replay outcome for a whole script.
#[derive(Debug, Clone)]
pub struct ProofReport {
    pub mode: Mode,
    pub claims: Vec<ClaimOutcome>,
    /// True when every claim replayed to its stated goal.
    pub verified: bool,
}

fn validate(script: &ProofScript) -> Result<()> {
    let mut names = BTreeSet::new();
    for eq in script
        .hypotheses
        .iter()
        .chain(script.claims.iter().map(|c| &c.goal))
    {
        if !names.insert(eq.name.as_str()) {
            return Err(Error::input(format!(
                "rule name {} is declared twice",
                eq.name
            )));
        }
    }

    let hyp_names: BTreeSet<&str> = script.hypotheses.iter().map(|h| h.name.as_str()).collect();
    let mut visible = hyp_names.clone();
    let mut referenced: BTreeSet<&str> = BTreeSet::new();
    for claim in &script.claims {
        for step in &claim.steps {
            match step {
                Step::Rewrite(rw) => {
                    if !visible.contains(rw.rule.as_str()) {
                        return Err(Error::input(format!(
                            "claim {} uses rule {}, which is not a hypothesis or an earlier claim",
                            claim.goal.name, rw.rule
                        )));
                    }
                    referenced.insert(rw.rule.as_str());
                    for (var, _) in &rw.subst {
                        if !script.variables.contains(var) {
                            return Err(Error::input(format!(
                                "claim {} substitutes for {}, which is not a declared variable",
                                claim.goal.name, var
                            )));
                        }
                    }
                }
                Step::CancelLeft(_) | Step::CancelRight(_) => {
                    if script.mode == Mode::Plain {
                        return Err(Error::input(format!(
                            "claim {} cancels, but the script is not in cancellative mode",
                            claim.goal.name
                        )));
                    }
                }
                Step::Refl => {}
            }
        }
        visible.insert(claim.goal.name.as_str());
    }

    for hyp in &script.hypotheses {
        if !referenced.contains(hyp.name.as_str()) {
            return Err(Error::input(format!(
                "hypothesis {} is never used by any step",
                hyp.name
            )));
        }
    }
    Ok(())
}

fn replay_step(
    state: &mut (Word, Word),
    step: &Step,
    rules: &BTreeMap<String, Equation>,
) -> Result<()> {
    match step {
        Step::Rewrite(RewriteStep {
            direction,
            rule,
            side,
            descent,
            offset,
            subst,
        }) => {
            // Validation guarantees the name is a hypothesis or an
            // earlier claim, so a miss means that claim failed to replay.
            let rule = rules.get(rule).ok_or_else(|| {
                Error::contract(format!("rule {rule} did not verify and cannot be used"))
            })?;
            let target = match side {
                Side::Lhs => &state.0,
                Side::Rhs => &state.1,
            };
            let next = apply_rewrite(target, rule, *direction, descent, *offset, subst)?;
            match side {
                Side::Lhs => state.0 = next,
                Side::Rhs => state.1 = next,
            }
        }
        Step::CancelLeft(k) => {
            let (l, r) = apply_cancel_left(&state.0, &state.1, *k)?;
            *state = (l, r);
        }
        Step::CancelRight(k) => {
            let (l, r) = apply_cancel_right(&state.0, &state.1, *k)?;
            *state = (l, r);
        }
        Step::Refl => {
            if state.0 != state.1 {
                return Err(Error::contract(format!(
                    "refl: sides differ, {} vs {}",
                    state.0, state.1
                )));
            }
        }
    }
    Ok(())
}

fn replay_claim(claim: &Claim, rules: &BTreeMap<String, Equation>) -> ClaimOutcome {
    let seed = claim.start.as_ref().unwrap_or(&claim.goal.lhs).clone();
    let mut state = (seed.clone(), seed);
    let mut steps = Vec::with_capacity(claim.steps.len());
    let mut failure = None;

    for (index, step) in claim.steps.iter().enumerate() {
        let before = (state.0.to_string(), state.1.to_string());
        match replay_step(&mut state, step, rules) {
            Ok(()) => steps.push(StepTrace {
                description: step.to_string(),
                before,
                after: Some((state.0.to_string(), state.1.to_string())),
                error: None,
            }),
            Err(e) => {
                steps.push(StepTrace {
                    description: step.to_string(),
                    before,
                    after: None,
                    error: Some(e.to_string()),
                });
                failure = Some(format!("step {}: {e}", index + 1));
                break;
            }
        }
    }

    if failure.is_none() && (state.0 != claim.goal.lhs || state.1 != claim.goal.rhs) {
        failure = Some(format!(
            "replay ends at {} = {}, which is not the goal {}",
            state.0, state.1, claim.goal
        ));
    }

    ClaimOutcome {
        name: claim.goal.name.clone(),
        goal: claim.goal.to_string(),
        verified: failure.is_none(),
        steps,
        failure,
    }
}

/// Validates a script and replays every claim.
///
/// Validation rejects duplicate rule names, references to unknown or
/// later rules, substitutions for undeclared variables, cancellation
/// outside cancellative mode, and hypotheses no step ever uses.
///
/// Replay of a claim starts from `start = start` when a start word is
/// given and from `lhs = lhs` otherwise, so the initial state is an
/// equation that trivially holds. Each step replaces equals by equals
/// (or cancels, which is sound in the cancellative setting), and the
/// claim is verified only if the final state is literally its goal.
/// Verified claims become rules for the claims after them; a failed
/// claim does not.
pub fn check_proof(script: &ProofScript) -> Result<ProofReport> {
    validate(script)?;
    let mut rules: BTreeMap<String, Equation> = script
        .hypotheses
        .iter()
        .map(|h| (h.name.clone(), h.clone()))
        .collect();
    let mut claims = Vec::with_capacity(script.claims.len());
    for claim in &script.claims {
        let outcome = replay_claim(claim, &rules);
        if outcome.verified {
            rules.insert(claim.goal.name.clone(), claim.goal.clone());
        }
        claims.push(outcome);
    }
    let verified = claims.iter().all(|c| c.verified);
    Ok(ProofReport {
        mode: script.mode,
        claims,
        verified,
    })
}
