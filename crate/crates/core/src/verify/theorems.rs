use std::fmt;
use std::str::FromStr;

use crate::classify::{
    check_basic, check_cube_conditions, check_regularity, consecutive_powers, power_endomorphism,
    powers_commute, ConsecutiveMode,
};
use crate::construct::{cyclic_group, fold_tables, strong_semilattice_of_groups, symmetric_group};
use crate::decompose::decompose_semilattice;
use crate::error::{Error, Result};
use crate::table::{CayleyTable, Element};
use crate::verify::{AuditResult, Violation};

/// The commutativity claims the audit knows how to exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremClaim {
    /// Separative or completely regular, commuting p-th and q-th powers
    /// for coprime (p, q) implies commutative.
    Main1,
    /// Separative with a per-pair run of three consecutive exponent
    /// instances implies commutative.
    Main2Part1,
    /// Inverse with one global run of three consecutive exponent
    /// instances implies commutative.
    Main2Part2,
    /// Cubing is an endomorphism, separative, cubing injective implies
    /// commutative.
    Main3Part1,
    /// Cubing is an endomorphism, inverse, x^4 = x forces x^2 = x
    /// implies commutative.
    Main3Part2,
    /// Inverse with k-th power endomorphism (k >= 2) implies Clifford.
    Lemma31,
    /// Cancellative with cube endomorphism implies every cube is
    /// central.
    Lemma41,
    /// Cancellative with x^3 = x implies a commutative group where
    /// every square is the identity.
    Prop11,
    /// Separative with x^3 = x implies commutative with every
    /// semilattice component a group of exponent <= 2.
    Cor13,
}

impl TheoremClaim {
    pub const ALL: [TheoremClaim; 9] = [
        TheoremClaim::Main1,
        TheoremClaim::Main2Part1,
        TheoremClaim::Main2Part2,
        TheoremClaim::Main3Part1,
        TheoremClaim::Main3Part2,
        TheoremClaim::Lemma31,
        TheoremClaim::Lemma41,
        TheoremClaim::Prop11,
        TheoremClaim::Cor13,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremClaim::Main1 => "main1",
            TheoremClaim::Main2Part1 => "main2_part1",
            TheoremClaim::Main2Part2 => "main2_part2",
            TheoremClaim::Main3Part1 => "main3_part1",
            TheoremClaim::Main3Part2 => "main3_part2",
            TheoremClaim::Lemma31 => "lemma31",
            TheoremClaim::Lemma41 => "lemma41",
            TheoremClaim::Prop11 => "prop11",
            TheoremClaim::Cor13 => "cor13",
        }
    }
}

impl fmt::Display for TheoremClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremClaim::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown claim {s:?}; expected one of {}",
                    TheoremClaim::ALL.map(TheoremClaim::as_str).join(", ")
                ))
            })
    }
}

/// Claim parameters. `p`/`q` feed the coprime-powers claim, `k` the
/// power-endomorphism lemma, `exponent_bound` the consecutive-exponent
/// searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditParams {
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub k: Option<u32>,
    pub exponent_bound: u32,
    pub jobs: usize,
}

impl Default for AuditParams {
    fn default() -> Self {
        AuditParams {
            p: None,
            q: None,
            k: None,
            exponent_bound: 8,
            jobs: 1,
        }
    }
}

impl AuditParams {
    fn require_pq(&self) -> Result<(u32, u32)> {
        match (self.p, self.q) {
            (Some(p), Some(q)) => {
                super::bezout(p, q)?;
                Ok((p, q))
            }
            _ => Err(Error::input("this claim needs both --p and --q")),
        }
    }

    fn require_k(&self) -> Result<u32> {
        match self.k {
            Some(k) if k >= 2 => Ok(k),
            Some(k) => Err(Error::input(format!("k must be at least 2, got {k}"))),
            None => Err(Error::input("this claim needs --k")),
        }
    }
}

/// Does the claim's hypothesis hold on this table?
pub fn claim_hypothesis(claim: TheoremClaim, s: &CayleyTable, params: &AuditParams) -> Result<bool> {
    Ok(match claim {
        TheoremClaim::Main1 => {
            let (p, q) = params.require_pq()?;
            (check_basic(s)?.separative || check_regularity(s)?.completely_regular)
                && powers_commute(s, p)?.is_none()
                && powers_commute(s, q)?.is_none()
        }
        TheoremClaim::Main2Part1 => {
            check_basic(s)?.separative
                && consecutive_powers(s, params.exponent_bound, ConsecutiveMode::PerPair)?.holds
        }
        TheoremClaim::Main2Part2 => {
            check_regularity(s)?.inverse
                && consecutive_powers(s, params.exponent_bound, ConsecutiveMode::Global)?.holds
        }
        TheoremClaim::Main3Part1 => {
            check_basic(s)?.separative
                && power_endomorphism(s, 3)?.is_none()
                && check_cube_conditions(s)?.cube_injective
        }
        TheoremClaim::Main3Part2 => {
            check_regularity(s)?.inverse
                && power_endomorphism(s, 3)?.is_none()
                && check_cube_conditions(s)?.four_to_two
        }
        TheoremClaim::Lemma31 => {
            let k = params.require_k()?;
            check_regularity(s)?.inverse && power_endomorphism(s, k)?.is_none()
        }
        TheoremClaim::Lemma41 => {
            check_basic(s)?.cancellative && power_endomorphism(s, 3)?.is_none()
        }
        TheoremClaim::Prop11 => {
            check_basic(s)?.cancellative && check_cube_conditions(s)?.x_cubed_equals_x
        }
        TheoremClaim::Cor13 => {
            check_basic(s)?.separative && check_cube_conditions(s)?.x_cubed_equals_x
        }
    })
}

fn commutativity_violation(s: &CayleyTable) -> Result<Option<Violation>> {
    Ok(powers_commute(s, 1)?.map(|(x, y)| Violation {
        table: Some(s.clone()),
        witness: vec![x, y],
        detail: format!("{} * {} != {} * {}", s.name(x), s.name(y), s.name(y), s.name(x)),
    }))
}

/// First way the claim's conclusion fails on this table, if any.
pub fn claim_conclusion_violation(
    claim: TheoremClaim,
    s: &CayleyTable,
) -> Result<Option<Violation>> {
    let n = s.order();
    match claim {
        TheoremClaim::Main1
        | TheoremClaim::Main2Part1
        | TheoremClaim::Main2Part2
        | TheoremClaim::Main3Part1
        | TheoremClaim::Main3Part2 => commutativity_violation(s),
        TheoremClaim::Lemma31 => {
            if check_regularity(s)?.clifford {
                return Ok(None);
            }
            // Inverse holds by hypothesis, so the failure is an element
            // lying in no subgroup.
            let stray = (0..n)
                .map(Element)
                .find(|&x| {
                    !(0..n).any(|y| s.at(s.at(x.0, y), x.0) == x.0 && s.at(x.0, y) == s.at(y, x.0))
                })
                .expect("a non-Clifford inverse table has a stray element");
            Ok(Some(Violation {
                table: Some(s.clone()),
                witness: vec![stray],
                detail: format!("{} lies in no subgroup", s.name(stray)),
            }))
        }
        TheoremClaim::Lemma41 => {
            for x in 0..n {
                let cube = s.power(Element(x), 3)?.0;
                for y in 0..n {
                    if s.at(cube, y) != s.at(y, cube) {
                        return Ok(Some(Violation {
                            table: Some(s.clone()),
                            witness: vec![Element(x), Element(y)],
                            detail: format!(
                                "cube of {} does not commute with {}",
                                s.name(Element(x)),
                                s.name(Element(y))
                            ),
                        }));
                    }
                }
            }
            Ok(None)
        }
        TheoremClaim::Prop11 => {
            if let Some(v) = commutativity_violation(s)? {
                return Ok(Some(v));
            }
            let Some(e) = check_basic(s)?.identity else {
                return Ok(Some(Violation {
                    table: Some(s.clone()),
                    witness: vec![],
                    detail: "no identity element".into(),
                }));
            };
            for x in 0..n {
                if s.at(x, x) != e.0 {
                    return Ok(Some(Violation {
                        table: Some(s.clone()),
                        witness: vec![Element(x)],
                        detail: format!("{} squared is not the identity", s.name(Element(x))),
                    }));
                }
            }
            Ok(None)
        }
        TheoremClaim::Cor13 => {
            if let Some(v) = commutativity_violation(s)? {
                return Ok(Some(v));
            }
            let d = decompose_semilattice(s)?;
            for c in &d.components {
                if !check_regularity(&c.table)?.group {
                    return Ok(Some(Violation {
                        table: Some(s.clone()),
                        witness: c.elements.clone(),
                        detail: format!("component {} is not a group", c.class_id),
                    }));
                }
                let e = check_basic(&c.table)?.identity.expect("groups have an identity");
                for x in 0..c.table.order() {
                    if c.table.at(x, x) != e.0 {
                        return Ok(Some(Violation {
                            table: Some(s.clone()),
                            witness: vec![c.elements[x]],
                            detail: format!(
                                "component {}: square of {} is not its identity",
                                c.class_id,
                                s.name(c.elements[x])
                            ),
                        }));
                    }
                }
            }
            Ok(None)
        }
    }
}

struct SweepAcc {
    checked: u64,
    matched: u64,
    violations: Vec<Violation>,
    error: Option<Error>,
}

fn sweep_step(acc: &mut SweepAcc, s: CayleyTable, claim: TheoremClaim, params: &AuditParams) {
    if acc.error.is_some() {
        return;
    }
    let mut step = || -> Result<()> {
        acc.checked += 1;
        if claim_hypothesis(claim, &s, params)? {
            acc.matched += 1;
            if let Some(v) = claim_conclusion_violation(claim, &s)? {
                acc.violations.push(v);
            }
        }
        Ok(())
    };
    if let Err(e) = step() {
        acc.error = Some(e);
    }
}

/// Total order cap for the constructed Clifford chains swept alongside
/// the enumerated universe for the inverse-semigroup cube claim.
pub const CLIFFORD_CATALOG_MAX_ORDER: usize = 8;

fn base_groups() -> Result<Vec<CayleyTable>> {
    let z2 = cyclic_group(2)?;
    let z4 = cyclic_group(4)?;
    let klein = z2.direct_product(&z2)?;
    let mut groups: Vec<CayleyTable> = (1..=CLIFFORD_CATALOG_MAX_ORDER)
        .map(cyclic_group)
        .collect::<Result<_>>()?;
    groups.push(klein.clone());
    groups.push(klein.direct_product(&z2)?);
    groups.push(z4.direct_product(&z2)?);
    groups.push(symmetric_group(3)?);
    Ok(groups)
}

fn group_homs(hi: &CayleyTable, lo: &CayleyTable) -> Vec<Vec<usize>> {
    let (n, m) = (hi.order(), lo.order());
    let mut h = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let is_hom =
            (0..n).all(|x| (0..n).all(|y| h[hi.at(x, y)] == lo.at(h[x], h[y])));
        if is_hom {
            out.push(h.clone());
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if h[pos] + 1 < m {
                h[pos] += 1;
                break;
            }
            h[pos] = 0;
        }
    }
}

/// Every chain of at most two groups from a fixed catalog (cyclic up to
/// order 8, the three noncyclic abelian groups up to order 8, and the
/// symmetric group on 3 letters), glued along every connecting
/// homomorphism, with total order at most `max_total`.
pub fn clifford_chain_catalog(max_total: usize) -> Result<Vec<CayleyTable>> {
    let groups = base_groups()?;
    let mut out = Vec::new();
    for g in &groups {
        if g.order() <= max_total {
            out.push(strong_semilattice_of_groups(std::slice::from_ref(g), &[])?);
        }
    }
    for lo in &groups {
        for hi in &groups {
            if lo.order() + hi.order() > max_total {
                continue;
            }
            for h in group_homs(hi, lo) {
                out.push(strong_semilattice_of_groups(
                    &[lo.clone(), hi.clone()],
                    &[h],
                )?);
            }
        }
    }
    Ok(out)
}

/// Sweeps every labeled associative table of order `1..=max_order`
/// (plus, for the inverse-cube claim, the constructed Clifford chains)
/// and confronts the claim's hypothesis with its conclusion.
pub fn audit_theorem(
    claim: TheoremClaim,
    max_order: usize,
    params: &AuditParams,
) -> Result<AuditResult> {
    if max_order == 0 || max_order > 5 {
        return Err(Error::input(format!(
            "audit universe supported for max_order 1..=5, got {max_order}"
        )));
    }
    // Surface parameter problems before the sweep starts.
    match claim {
        TheoremClaim::Main1 => {
            params.require_pq()?;
        }
        TheoremClaim::Lemma31 => {
            params.require_k()?;
        }
        _ => {}
    }

    let mut acc = SweepAcc {
        checked: 0,
        matched: 0,
        violations: Vec::new(),
        error: None,
    };
    for n in 1..=max_order {
        let part = fold_tables(
            n,
            params.jobs,
            || SweepAcc {
                checked: 0,
                matched: 0,
                violations: Vec::new(),
                error: None,
            },
            |acc, s| sweep_step(acc, s, claim, params),
            |mut a, mut b| {
                a.checked += b.checked;
                a.matched += b.matched;
                a.violations.append(&mut b.violations);
                a.error = a.error.take().or(b.error);
                a
            },
        )?;
        acc.checked += part.checked;
        acc.matched += part.matched;
        acc.violations.extend(part.violations);
        acc.error = acc.error.take().or(part.error);
    }

    let mut universe = format!("all associative tables of orders 1..={max_order}");
    if claim == TheoremClaim::Main3Part2 {
        for s in clifford_chain_catalog(CLIFFORD_CATALOG_MAX_ORDER)? {
            sweep_step(&mut acc, s, claim, params);
        }
        universe.push_str(&format!(
            " plus constructed Clifford chains of order <= {CLIFFORD_CATALOG_MAX_ORDER}"
        ));
    }
    if let Some(e) = acc.error {
        return Err(e);
    }

    Ok(AuditResult {
        claim: claim.as_str().to_string(),
        universe,
        models_checked: acc.checked,
        hypothesis_matches: acc.matched,
        violations: acc.violations,
        notes: Vec::new(),
        verdict: super::Verdict::Holds,
    }
    .conclude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::construct::{brandt_b2, enumerate_semigroups, heisenberg_mod, left_zero};
    use crate::verify::Verdict;

    fn params_pq(p: u32, q: u32) -> AuditParams {
        AuditParams {
            p: Some(p),
            q: Some(q),
            ..AuditParams::default()
        }
    }

    #[test]
    fn claim_names_round_trip() {
        for c in TheoremClaim::ALL {
            assert_eq!(c.as_str().parse::<TheoremClaim>().unwrap(), c);
        }
        assert!(matches!(
            "main4".parse::<TheoremClaim>(),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn main1_audit_holds_at_order_3() {
        let r = audit_theorem(TheoremClaim::Main1, 3, &params_pq(2, 3)).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.models_checked, 1 + 8 + 113);
        assert!(r.hypothesis_matches > 0);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn main1_audit_requires_coprime_parameters() {
        assert!(matches!(
            audit_theorem(TheoremClaim::Main1, 2, &params_pq(2, 4)),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            audit_theorem(TheoremClaim::Main1, 2, &AuditParams::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn dropping_the_class_restriction_breaks_main1() {
        // The audit itself keeps the hypothesis honest; this pins that
        // the conclusion checker really catches noncommutativity when
        // handed a model outside the hypothesis class.
        let b2 = brandt_b2();
        assert!(!claim_hypothesis(TheoremClaim::Main1, &b2, &params_pq(2, 3)).unwrap());
        let v = claim_conclusion_violation(TheoremClaim::Main1, &b2)
            .unwrap()
            .unwrap();
        assert_eq!(v.witness.len(), 2);
    }

    #[test]
    fn main2_hypotheses_nest_on_small_tables() {
        let params = AuditParams::default();
        for n in 1..=3 {
            for s in enumerate_semigroups(n).unwrap() {
                if claim_hypothesis(TheoremClaim::Main2Part2, &s, &params).unwrap() {
                    assert!(claim_hypothesis(TheoremClaim::Main2Part1, &s, &params).unwrap());
                }
            }
        }
    }

    #[test]
    fn main2_audits_hold_at_order_3() {
        let params = AuditParams::default();
        for claim in [TheoremClaim::Main2Part1, TheoremClaim::Main2Part2] {
            let r = audit_theorem(claim, 3, &params).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{claim}");
            assert!(r.violations.is_empty());
        }
    }

    #[test]
    fn main3_audits_hold_at_order_3() {
        let params = AuditParams::default();
        for claim in [TheoremClaim::Main3Part1, TheoremClaim::Main3Part2] {
            let r = audit_theorem(claim, 3, &params).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{claim}");
            assert!(r.violations.is_empty());
        }
    }

    #[test]
    fn main3_part2_universe_includes_constructed_chains() {
        let r = audit_theorem(TheoremClaim::Main3Part2, 1, &AuditParams::default()).unwrap();
        let chains = clifford_chain_catalog(CLIFFORD_CATALOG_MAX_ORDER).unwrap().len() as u64;
        assert_eq!(r.models_checked, 1 + chains);
        assert!(r.universe.contains("Clifford chains"));
    }

    #[test]
    fn lemma31_audit_holds_for_k_2_and_3() {
        for k in [2, 3] {
            let params = AuditParams {
                k: Some(k),
                ..AuditParams::default()
            };
            let r = audit_theorem(TheoremClaim::Lemma31, 3, &params).unwrap();
            assert_eq!(r.verdict, Verdict::Holds);
        }
        assert!(matches!(
            audit_theorem(TheoremClaim::Lemma31, 2, &AuditParams::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn lemma31_conclusion_flags_non_clifford_inverse_tables() {
        let b2 = brandt_b2();
        let v = claim_conclusion_violation(TheoremClaim::Lemma31, &b2)
            .unwrap()
            .unwrap();
        assert_eq!(v.witness.len(), 1);
        assert!(v.detail.contains("no subgroup"));
    }

    #[test]
    fn lemma41_audit_holds_and_covers_heisenberg() {
        let r = audit_theorem(TheoremClaim::Lemma41, 3, &AuditParams::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);

        // A nonabelian model where cubes land in the center: the
        // hypothesis holds and so must the conclusion.
        let h = heisenberg_mod(3).unwrap();
        assert!(claim_hypothesis(TheoremClaim::Lemma41, &h, &AuditParams::default()).unwrap());
        assert!(claim_conclusion_violation(TheoremClaim::Lemma41, &h)
            .unwrap()
            .is_none());
        assert!(!classify(&h).unwrap().commutative);
    }

    #[test]
    fn prop11_and_cor13_audits_hold_at_order_3() {
        for claim in [TheoremClaim::Prop11, TheoremClaim::Cor13] {
            let r = audit_theorem(claim, 3, &AuditParams::default()).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{claim}");
            assert!(r.hypothesis_matches > 0);
        }
    }

    #[test]
    fn prop11_conclusion_rejects_identity_free_tables() {
        let lz = left_zero(2).unwrap();
        let v = claim_conclusion_violation(TheoremClaim::Prop11, &lz)
            .unwrap()
            .unwrap();
        // Commutativity already fails, which is reported first.
        assert_eq!(v.witness.len(), 2);
    }

    #[test]
    fn parallel_audit_matches_sequential() {
        let seq = audit_theorem(TheoremClaim::Main1, 4, &params_pq(2, 3)).unwrap();
        let par = audit_theorem(
            TheoremClaim::Main1,
            4,
            &AuditParams {
                jobs: 4,
                ..params_pq(2, 3)
            },
        )
        .unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.models_checked, 1 + 8 + 113 + 3492);
    }

    #[test]
    fn catalog_members_are_clifford() {
        let chains = clifford_chain_catalog(6).unwrap();
        assert!(!chains.is_empty());
        for s in &chains {
            assert!(check_regularity(s).unwrap().clifford);
        }
    }

    #[test]
    fn audit_rejects_out_of_range_orders() {
        for max_order in [0, 6] {
            assert!(matches!(
                audit_theorem(TheoremClaim::Prop11, max_order, &AuditParams::default()),
                Err(Error::Input(_))
            ));
        }
    }
}
