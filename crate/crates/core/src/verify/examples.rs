use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{
    check_basic, check_cube_conditions, check_regularity, power_endomorphism, powers_commute,
};
use crate::construct::{brandt_b2, left_zero, tri_mul, tri_power, TriElement};
use crate::error::{Error, Result};
use crate::table::{CayleyTable, Element};
use crate::verify::{AuditResult, Verdict, Violation};

/// The bundled boundary cases. Each pins down why some hypothesis in a
/// commutativity claim cannot be dropped or weakened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterexampleId {
    /// Brandt semigroup: inverse, idempotent commuting powers, yet
    /// noncommutative; it escapes the coprime-powers claim only by
    /// failing complete regularity.
    Ex22,
    /// Brandt semigroup again: every pair through the zero satisfies
    /// all power instances, so a per-pair reading of the inverse claim
    /// would be false.
    Ex32,
    /// Left zero semigroup: all power maps are endomorphisms and the
    /// table is completely regular, yet noncommutative; inverse cannot
    /// be relaxed to regular.
    Ex33,
    /// Positive triangular matrices: cancellative and noncommutative;
    /// the cube-endomorphism hypothesis itself fails.
    Ex42,
    /// Left zero semigroup: both cube conditions hold, yet
    /// noncommutative; separativity cannot be dropped.
    Ex43,
}

impl CounterexampleId {
    pub const ALL: [CounterexampleId; 5] = [
        CounterexampleId::Ex22,
        CounterexampleId::Ex32,
        CounterexampleId::Ex33,
        CounterexampleId::Ex42,
        CounterexampleId::Ex43,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CounterexampleId::Ex22 => "ex22",
            CounterexampleId::Ex32 => "ex32",
            CounterexampleId::Ex33 => "ex33",
            CounterexampleId::Ex42 => "ex42",
            CounterexampleId::Ex43 => "ex43",
        }
    }
}

impl fmt::Display for CounterexampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CounterexampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CounterexampleId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown example {s:?}; expected one of {}",
                    CounterexampleId::ALL.map(CounterexampleId::as_str).join(", ")
                ))
            })
    }
}

/// Exponent ceiling for "all powers" style assertions on the fixed
/// examples; every element's index and period here divide values <= 6.
pub const EXAMPLE_EXPONENT_BOUND: u32 = 6;

/// Triples sampled when spot-checking cancellativity of the infinite
/// triangular semigroup.
pub const TRI_SAMPLE_TRIPLES: usize = 10_000;
const TRI_SAMPLE_SEED: u64 = 0x5eed_0042;
const TRI_SAMPLE_ENTRY_MAX: u64 = 1_000_000;

struct Checks {
    violations: Vec<Violation>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn confirm(
        &mut self,
        table: Option<&CayleyTable>,
        ok: bool,
        witness: Vec<Element>,
        detail: impl Into<String>,
    ) {
        if !ok {
            self.violations.push(Violation {
                table: table.cloned(),
                witness,
                detail: detail.into(),
            });
        }
    }

    fn into_result(self, claim: &str, universe: &str, hypothesis_matches: u64) -> AuditResult {
        AuditResult {
            claim: claim.to_string(),
            universe: universe.to_string(),
            models_checked: 1,
            hypothesis_matches,
            violations: self.violations,
            notes: self.notes,
            verdict: Verdict::Holds,
        }
        .conclude()
    }
}

fn audit_ex22() -> Result<AuditResult> {
    let b2 = brandt_b2();
    let mut c = Checks::new();
    let reg = check_regularity(&b2)?;
    let basic = check_basic(&b2)?;

    c.confirm(Some(&b2), reg.inverse, vec![], "not an inverse semigroup");
    for p in 2..=EXAMPLE_EXPONENT_BOUND {
        for x in b2.elements() {
            let xp = b2.power(x, p)?;
            c.confirm(
                Some(&b2),
                b2.at(xp.0, xp.0) == xp.0,
                vec![x],
                format!("power {p} of {} is not idempotent", b2.name(x)),
            );
        }
        if let Some((x, y)) = powers_commute(&b2, p)? {
            c.confirm(
                Some(&b2),
                false,
                vec![x, y],
                format!("powers at exponent {p} do not commute"),
            );
        }
    }
    c.confirm(Some(&b2), !basic.commutative, vec![], "unexpectedly commutative");
    c.confirm(
        Some(&b2),
        !reg.completely_regular,
        vec![],
        "unexpectedly completely regular",
    );
    c.notes.push(format!(
        "power assertions checked for exponents 2..={EXAMPLE_EXPONENT_BOUND}"
    ));
    c.notes.push(
        "exponent 1 is excluded deliberately: a and b are not idempotent, \
         so idempotence of powers genuinely starts at exponent 2"
            .to_string(),
    );
    Ok(c.into_result("ex22", "Brandt semigroup of order 5", 1))
}

fn audit_ex32() -> Result<AuditResult> {
    let b2 = brandt_b2();
    let mut c = Checks::new();
    let zero = Element(0);

    let absorbs = b2
        .elements()
        .all(|x| b2.at(zero.0, x.0) == zero.0 && b2.at(x.0, zero.0) == zero.0);
    c.confirm(Some(&b2), absorbs, vec![zero], "element 0 is not a zero");
    let reg = check_regularity(&b2)?;
    c.confirm(Some(&b2), reg.inverse, vec![], "not an inverse semigroup");
    c.confirm(Some(&b2), !reg.clifford, vec![], "unexpectedly a Clifford semigroup");

    // Every pair through the zero satisfies every bounded power
    // instance, in both orders.
    for y in b2.elements() {
        for k in 1..=EXAMPLE_EXPONENT_BOUND {
            let lhs = b2.power(b2.multiply(zero, y)?, k)?;
            let rhs = b2.multiply(b2.power(zero, k)?, b2.power(y, k)?)?;
            c.confirm(
                Some(&b2),
                lhs == rhs,
                vec![zero, y],
                format!("pair (0, {}) fails the power instance at {k}", b2.name(y)),
            );
            let lhs = b2.power(b2.multiply(y, zero)?, k)?;
            let rhs = b2.multiply(b2.power(y, k)?, b2.power(zero, k)?)?;
            c.confirm(
                Some(&b2),
                lhs == rhs,
                vec![y, zero],
                format!("pair ({}, 0) fails the power instance at {k}", b2.name(y)),
            );
        }
    }
    c.notes.push(format!(
        "power instances checked for exponents 1..={EXAMPLE_EXPONENT_BOUND}"
    ));
    Ok(c.into_result("ex32", "Brandt semigroup of order 5", 1))
}

fn audit_ex33() -> Result<AuditResult> {
    let lz = left_zero(2)?;
    let mut c = Checks::new();
    for k in 2..=EXAMPLE_EXPONENT_BOUND {
        if let Some((x, y)) = power_endomorphism(&lz, k)? {
            c.confirm(
                Some(&lz),
                false,
                vec![x, y],
                format!("power map at exponent {k} is not an endomorphism"),
            );
        }
    }
    let reg = check_regularity(&lz)?;
    c.confirm(
        Some(&lz),
        reg.completely_regular,
        vec![],
        "not completely regular",
    );
    c.confirm(Some(&lz), !reg.inverse, vec![], "unexpectedly an inverse semigroup");
    c.confirm(
        Some(&lz),
        !check_basic(&lz)?.commutative,
        vec![],
        "unexpectedly commutative",
    );
    c.notes.push(format!(
        "endomorphism assertions checked for exponents 2..={EXAMPLE_EXPONENT_BOUND}"
    ));
    Ok(c.into_result("ex33", "left zero semigroup of order 2", 1))
}

fn audit_ex42() -> Result<AuditResult> {
    let mut c = Checks::new();
    let x = TriElement::from_u64(1, 1)?;
    let y = TriElement::from_u64(1, 2)?;

    let xy = tri_mul(&x, &y);
    let yx = tri_mul(&y, &x);
    c.confirm(
        None,
        xy != yx,
        vec![],
        format!("unexpectedly commutative at x = {x}, y = {y}"),
    );
    c.notes
        .push(format!("noncommutative: x * y = {xy} and y * x = {yx} at x = {x}, y = {y}"));

    // No idempotents and no fourth roots of themselves among small
    // entries: b*b = b forces b = 1, and then a + a*1 = a is impossible.
    for a in 1..=64u64 {
        for b in 1..=64u64 {
            let t = TriElement::from_u64(a, b)?;
            c.confirm(
                None,
                tri_mul(&t, &t) != t,
                vec![],
                format!("unexpected idempotent {t}"),
            );
            c.confirm(
                None,
                tri_power(&t, 4)? != t,
                vec![],
                format!("unexpected solution of fourth power rewinding to {t}"),
            );
        }
    }
    c.notes
        .push("idempotent and fourth-power scans cover entries 1..=64".to_string());

    // Deterministic cancellativity sample.
    let mut rng = ChaCha8Rng::seed_from_u64(TRI_SAMPLE_SEED);
    let draw = |rng: &mut ChaCha8Rng| -> Result<TriElement> {
        TriElement::from_u64(
            rng.random_range(1..=TRI_SAMPLE_ENTRY_MAX),
            rng.random_range(1..=TRI_SAMPLE_ENTRY_MAX),
        )
    };
    for _ in 0..TRI_SAMPLE_TRIPLES {
        let a = draw(&mut rng)?;
        let b = draw(&mut rng)?;
        let d = draw(&mut rng)?;
        if b == d {
            continue;
        }
        c.confirm(
            None,
            tri_mul(&a, &b) != tri_mul(&a, &d),
            vec![],
            format!("left cancellation fails: {a} * {b} = {a} * {d}"),
        );
        c.confirm(
            None,
            tri_mul(&b, &a) != tri_mul(&d, &a),
            vec![],
            format!("right cancellation fails: {b} * {a} = {d} * {a}"),
        );
    }
    c.notes.push(format!(
        "cancellativity sampled on {TRI_SAMPLE_TRIPLES} triples with entries \
         1..={TRI_SAMPLE_ENTRY_MAX}, ChaCha8 seed {TRI_SAMPLE_SEED:#x}"
    ));

    // The cube-endomorphism hypothesis itself fails here, so the claim
    // it was meant to bound is never exercised on this model.
    let lhs = tri_power(&xy, 3)?;
    let rhs = tri_mul(&tri_power(&x, 3)?, &tri_power(&y, 3)?);
    c.confirm(
        None,
        lhs != rhs,
        vec![],
        "cube identity unexpectedly holds at the designated witness".to_string(),
    );
    c.notes.push(format!(
        "cube hypothesis fails: (x * y)^3 = {lhs} but x^3 * y^3 = {rhs} at x = {x}, y = {y}"
    ));

    Ok(c.into_result(
        "ex42",
        "matrices [[1, a], [0, b]] with positive integer entries",
        0,
    ))
}

fn audit_ex43() -> Result<AuditResult> {
    let lz = left_zero(2)?;
    let mut c = Checks::new();
    let cube = check_cube_conditions(&lz)?;
    c.confirm(Some(&lz), cube.cube_injective, vec![], "cubing is not injective");
    c.confirm(
        Some(&lz),
        cube.four_to_two,
        vec![],
        "a fourth root of itself fails to be idempotent",
    );
    c.confirm(
        Some(&lz),
        power_endomorphism(&lz, 3)?.is_none(),
        vec![],
        "cubing is not an endomorphism",
    );
    let basic = check_basic(&lz)?;
    c.confirm(Some(&lz), !basic.commutative, vec![], "unexpectedly commutative");
    c.confirm(Some(&lz), !basic.separative, vec![], "unexpectedly separative");
    c.confirm(
        Some(&lz),
        !check_regularity(&lz)?.inverse,
        vec![],
        "unexpectedly an inverse semigroup",
    );
    Ok(c.into_result("ex43", "left zero semigroup of order 2", 1))
}

/// Re-verifies every property a bundled boundary case asserts, on the
/// concrete object.
pub fn audit_counterexample(example: CounterexampleId) -> Result<AuditResult> {
    match example {
        CounterexampleId::Ex22 => audit_ex22(),
        CounterexampleId::Ex32 => audit_ex32(),
        CounterexampleId::Ex33 => audit_ex33(),
        CounterexampleId::Ex42 => audit_ex42(),
        CounterexampleId::Ex43 => audit_ex43(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_names_round_trip() {
        for e in CounterexampleId::ALL {
            assert_eq!(e.as_str().parse::<CounterexampleId>().unwrap(), e);
        }
        assert!("ex99".parse::<CounterexampleId>().is_err());
    }

    #[test]
    fn table_examples_confirm_all_assertions() {
        for e in [
            CounterexampleId::Ex22,
            CounterexampleId::Ex32,
            CounterexampleId::Ex33,
            CounterexampleId::Ex43,
        ] {
            let r = audit_counterexample(e).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{e}: {:?}", r.violations);
            assert_eq!(r.models_checked, 1);
        }
    }

    #[test]
    fn ex22_notes_flag_the_exponent_floor() {
        let r = audit_counterexample(CounterexampleId::Ex22).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("exponent 1 is excluded")));
    }

    #[test]
    fn ex42_reports_the_failed_hypothesis_with_its_witness() {
        let r = audit_counterexample(CounterexampleId::Ex42).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisNeverSatisfied);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        let note = r
            .notes
            .iter()
            .find(|n| n.contains("cube hypothesis fails"))
            .unwrap();
        assert!(note.contains("(21, 8)"), "{note}");
        assert!(note.contains("(31, 8)"), "{note}");
        assert!(note.contains("(1, 1)") && note.contains("(1, 2)"), "{note}");
    }

    #[test]
    fn ex42_audit_is_deterministic() {
        let a = audit_counterexample(CounterexampleId::Ex42).unwrap();
        let b = audit_counterexample(CounterexampleId::Ex42).unwrap();
        assert_eq!(a, b);
    }
}
