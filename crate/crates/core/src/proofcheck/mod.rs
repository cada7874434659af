//! Replayable equational proofs over semigroup words.
//!
//! Proofs are scripts of explicit rewrite and cancellation steps on
//! words modulo associativity: a word is a flat sequence of atoms
//! (variables, constants, `g(...)` applications, postfix-primed
//! inverses), so the associative law is structural and never stated.
//! The checker does no search; every step names its rule, direction,
//! position, and substitution, and either applies or fails with a
//! diagnostic.
//!
//! Script format (`.prf`, line oriented, `#` comments):
//!
//! ```text
//! mode cancellative            # or plain (default); gates cancel steps
//! vars s t                     # extends the default alphabet u v w x y z
//! hyp cube: x * x * x = x      # named hypotheses, before any claim
//!
//! claim left_unit: x * x * y = y
//! start x * x * x * y          # optional; defaults to the goal's lhs
//! rw L2R cube at rhs.0         # rewrite at side.descent...offset
//! cancel-left 1                # strip a shared prefix (cancellative only)
//! qed
//! ```
//!
//! Replay keeps a pair of words that starts as the trivially true
//! equation `start = start` (or `lhs = lhs`), so every intermediate
//! state is a consequence of the hypotheses; a claim is accepted only
//! when the pair is literally its goal. Accepted claims become rules
//! for later claims.
//!
//! The module also ships the bundled scripts, a first-order problem
//! emitter for the commuting-powers question, a model-theoretic
//! soundness audit of accepted scripts, and a deterministic corruption
//! generator used to exercise rejection paths.

mod ast;
mod corrupt;
mod emit;
mod engine;
mod parse;
mod soundness;

pub use ast::{Atom, Claim, Direction, Equation, Mode, ProofScript, RewriteStep, Side, Step, Word};
pub use corrupt::corrupted_variants;
pub use emit::{emit_prover9, Theory};
pub use engine::{
    apply_cancel_left, apply_cancel_right, apply_rewrite, check_proof, substitute, ClaimOutcome,
    ProofReport, StepTrace,
};
pub use parse::{parse_equation, parse_script, parse_word, DEFAULT_VARIABLES};
pub use soundness::{audit_script_soundness, SoundnessReport};

use crate::error::Result;

/// Proof scripts shipped with the crate, as (name, source) pairs.
pub const BUNDLED_SOURCES: [(&str, &str); 7] = [
    ("prop11", include_str!("../../proofs/prop11.prf")),
    ("lemma21", include_str!("../../proofs/lemma21.prf")),
    (
        "main2_part1_i123",
        include_str!("../../proofs/main2_part1_i123.prf"),
    ),
    (
        "main2_part1_i234",
        include_str!("../../proofs/main2_part1_i234.prf"),
    ),
    ("lemma31_k2", include_str!("../../proofs/lemma31_k2.prf")),
    ("lemma31_k3", include_str!("../../proofs/lemma31_k3.prf")),
    ("lemma41", include_str!("../../proofs/lemma41.prf")),
];

/// Parses every bundled script.
pub fn bundled_scripts() -> Result<Vec<(String, ProofScript)>> {
    BUNDLED_SOURCES
        .iter()
        .map(|(name, source)| Ok((name.to_string(), parse_script(source)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn bundled_scripts_parse_and_verify() {
        let scripts = bundled_scripts().unwrap();
        assert_eq!(scripts.len(), 7);
        for (name, script) in &scripts {
            let report = check_proof(script).unwrap_or_else(|e| panic!("{name}: {e}"));
            for claim in &report.claims {
                assert!(
                    claim.verified,
                    "{name}.{}: {}",
                    claim.name,
                    claim.failure.as_deref().unwrap_or("unknown failure")
                );
                for step in &claim.steps {
                    assert!(step.error.is_none(), "{name}.{}: {step:?}", claim.name);
                }
            }
            assert!(report.verified);
        }
    }

    #[test]
    fn bundled_claim_sets_match() {
        let scripts = bundled_scripts().unwrap();
        let names: Vec<Vec<&str>> = scripts
            .iter()
            .map(|(_, s)| s.claims.iter().map(|c| c.goal.name.as_str()).collect())
            .collect();
        assert_eq!(names[0], ["left_unit", "right_unit", "squares_equal"]);
        assert_eq!(
            names[1],
            ["nested_commute", "four_factor_swap", "g_central", "commutative"]
        );
        assert_eq!(names[2], ["shift1", "shift2", "commutative"]);
        assert_eq!(names[3], ["shift2", "shift3", "commutative"]);
        assert_eq!(names[4], ["tmp1", "tmp2", "tmp3a", "tmp3b", "inv_commutes"]);
        assert_eq!(names[5], names[4]);
        assert_eq!(names[6], ["swap_square", "engel", "cube_central"]);
    }

    #[test]
    fn rendered_equations_reparse_identically() {
        for (name, script) in bundled_scripts().unwrap() {
            for eq in script
                .hypotheses
                .iter()
                .chain(script.claims.iter().map(|c| &c.goal))
            {
                for word in [&eq.lhs, &eq.rhs] {
                    let rendered = word.to_string();
                    let reparsed = parse_word(&rendered, &script.variables)
                        .unwrap_or_else(|e| panic!("{name}: {rendered}: {e}"));
                    assert_eq!(&reparsed, word, "{name}: {rendered}");
                }
            }
        }
    }

    #[test]
    fn every_corruption_is_rejected() {
        let mut total = 0usize;
        for (name, script) in bundled_scripts().unwrap() {
            for (label, variant) in corrupted_variants(&script) {
                total += 1;
                match check_proof(&variant) {
                    Err(_) => {}
                    Ok(report) => assert!(
                        !report.verified,
                        "{name}: corruption {label} still verifies"
                    ),
                }
            }
        }
        assert!(total >= 100, "only {total} corruption variants generated");
    }

    #[test]
    fn soundness_audit_is_clean_on_small_orders() {
        for (name, script) in bundled_scripts().unwrap() {
            let report = audit_script_soundness(&script, 3).unwrap();
            assert!(
                report.discrepancies.is_empty(),
                "{name}: {:?}",
                report.discrepancies
            );
            assert!(report.tables_checked > 0, "{name}");
            assert!(report.hypothesis_models > 0, "{name}: hypotheses never hold");
            assert_eq!(
                report.claims_audited.len(),
                script.claims.len(),
                "{name}: some claim did not verify"
            );
        }
    }

    #[test]
    fn soundness_audit_restricts_cancellative_scripts() {
        let script = parse_script(
            "mode cancellative\nhyp sq: x * x = x\nclaim triv: x * x * x = x\nrw L2R sq at rhs.0\nqed\n",
        )
        .unwrap();
        let report = audit_script_soundness(&script, 3).unwrap();
        // Idempotent cancellative tables are trivial groups, so only the
        // order-1 table can satisfy the hypothesis.
        assert!(report.discrepancies.is_empty());
        assert_eq!(report.hypothesis_models, 1);
        // Labeled groups of orders 1..=3: 1 + 2 + 3.
        assert_eq!(report.tables_checked, 6);
    }

    #[test]
    fn soundness_audit_rejects_zero_order() {
        let script = parse_script("claim t: x = x\nqed\n").unwrap();
        assert!(matches!(
            audit_script_soundness(&script, 0),
            Err(Error::Input(_))
        ));
    }
}
