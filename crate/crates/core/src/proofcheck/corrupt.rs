use std::collections::BTreeMap;

use crate::proofcheck::ast::{Atom, Equation, ProofScript, Step, Word};
use crate::proofcheck::engine::substitute;

fn occurs(word: &Word, name: &str) -> bool {
    word.atoms().iter().any(|atom| match atom {
        Atom::Var(v) => v == name,
        Atom::Const(_) => false,
        Atom::G(inner) | Atom::Inv(inner) => occurs(inner, name),
    })
}

fn first_var(word: &Word) -> Option<String> {
    for atom in word.atoms() {
        match atom {
            Atom::Var(v) => return Some(v.clone()),
            Atom::Const(_) => {}
            Atom::G(inner) | Atom::Inv(inner) => {
                if let Some(v) = first_var(inner) {
                    return Some(v);
                }
            }
        }
    }
    None
}

fn with_step(script: &ProofScript, claim: usize, step: usize, replacement: Step) -> ProofScript {
    let mut out = script.clone();
    out.claims[claim].steps[step] = replacement;
    out
}

/// Deterministic single-step corruptions of a script.
///
/// Every rewrite step yields a flipped direction, a flipped side, a
/// bumped offset, and a doctored substitution; every cancellation
/// yields a bumped count. Corruptions that provably change nothing are
/// skipped: flipping the direction or side of a rewrite whose
/// instantiated pattern equals its replacement leaves replay behavior
/// identical, so such a variant could never be rejected.
pub fn corrupted_variants(script: &ProofScript) -> Vec<(String, ProofScript)> {
    let mut rules: BTreeMap<&str, &Equation> = script
        .hypotheses
        .iter()
        .map(|h| (h.name.as_str(), h))
        .collect();
    let mut out = Vec::new();

    for (ci, claim) in script.claims.iter().enumerate() {
        let claim_name = &claim.goal.name;
        for (si, step) in claim.steps.iter().enumerate() {
            let label = |kind: &str| format!("{claim_name}.step{}.{kind}", si + 1);
            match step {
                Step::Rewrite(rw) => {
                    let rule = rules.get(rw.rule.as_str()).copied();
                    let symmetric = rule.is_some_and(|r| {
                        substitute(&r.lhs, &rw.subst) == substitute(&r.rhs, &rw.subst)
                    });

                    if !symmetric {
                        let mut flipped = rw.clone();
                        flipped.direction = flipped.direction.flipped();
                        out.push((
                            label("flip_direction"),
                            with_step(script, ci, si, Step::Rewrite(flipped)),
                        ));

                        let mut sided = rw.clone();
                        sided.side = sided.side.flipped();
                        out.push((
                            label("flip_side"),
                            with_step(script, ci, si, Step::Rewrite(sided)),
                        ));
                    }

                    let mut bumped = rw.clone();
                    bumped.offset += 1;
                    out.push((
                        label("offset_bump"),
                        with_step(script, ci, si, Step::Rewrite(bumped)),
                    ));

                    let doctored = rule.and_then(|r| {
                        let relevant = rw.subst.iter().position(|(v, _)| {
                            occurs(&r.lhs, v) || occurs(&r.rhs, v)
                        });
                        match relevant {
                            Some(i) => {
                                let mut subst = rw.subst.clone();
                                let mut atoms = subst[i].1.atoms().to_vec();
                                atoms.extend_from_slice(subst[i].1.atoms());
                                subst[i].1 = Word::new(atoms).expect("doubled word is nonempty");
                                Some(subst)
                            }
                            None => {
                                let v = first_var(&r.lhs)?;
                                let doubled =
                                    Word::new(vec![Atom::Var(v.clone()), Atom::Var(v.clone())])
                                        .expect("two atoms");
                                let mut subst = rw.subst.clone();
                                subst.push((v, doubled));
                                Some(subst)
                            }
                        }
                    });
                    if let Some(subst) = doctored {
                        let mut doctored_step = rw.clone();
                        doctored_step.subst = subst;
                        out.push((
                            label("subst_double"),
                            with_step(script, ci, si, Step::Rewrite(doctored_step)),
                        ));
                    }
                }
                Step::CancelLeft(k) => {
                    out.push((
                        label("cancel_bump"),
                        with_step(script, ci, si, Step::CancelLeft(k + 1)),
                    ));
                }
                Step::CancelRight(k) => {
                    out.push((
                        label("cancel_bump"),
                        with_step(script, ci, si, Step::CancelRight(k + 1)),
                    ));
                }
                Step::Refl => {}
            }
        }
        rules.insert(claim_name.as_str(), &claim.goal);
    }
    out
}
