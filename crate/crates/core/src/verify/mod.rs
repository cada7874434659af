//! Audits that confront the commutativity theorems with concrete models:
//! exhaustively enumerated small tables, constructed families, and the
//! infinite positive triangular matrix semigroup.

mod examples;
mod theorems;

pub use examples::{audit_counterexample, CounterexampleId};
pub use theorems::{
    audit_theorem, clifford_chain_catalog, AuditParams, TheoremClaim, CLIFFORD_CATALOG_MAX_ORDER,
};

use crate::classify::powers_commute;
use crate::error::{Error, Result};
use crate::table::{CayleyTable, Element};

/// Outcome of an audit run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Hypothesis held somewhere and the conclusion held everywhere.
    Holds,
    /// At least one model satisfies the hypothesis but not the conclusion.
    Violated,
    /// No audited model satisfies the hypothesis; the claim was never
    /// exercised.
    HypothesisNeverSatisfied,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::HypothesisNeverSatisfied => "hypothesis_never_satisfied",
        }
    }
}

/// One model on which a conclusion failed. `table` is absent when the
/// model is not a finite table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub table: Option<CayleyTable>,
    pub witness: Vec<Element>,
    pub detail: String,
}

/// Full audit record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditResult {
    pub claim: String,
    pub universe: String,
    pub models_checked: u64,
    /// Models on which the hypothesis held.
    pub hypothesis_matches: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl AuditResult {
    fn conclude(mut self) -> Self {
        self.verdict = if !self.violations.is_empty() {
            Verdict::Violated
        } else if self.hypothesis_matches == 0 {
            Verdict::HypothesisNeverSatisfied
        } else {
            Verdict::Holds
        };
        self
    }
}

/// Coefficients `r, s` with `p*r + q*s = 1` and `s < 0` of smallest
/// possible magnitude, so `q*s < 0` splits the identity into a positive
/// and a negative power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub p: u32,
    pub q: u32,
    pub r: i64,
    pub s: i64,
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    (old_r, old_x, old_y)
}

/// Extended Euclid, then shift `(r, s) -> (r + q*t, s - p*t)` onto the
/// unique representative with `-p <= s <= -1`.
pub fn bezout(p: u32, q: u32) -> Result<BezoutCertificate> {
    if p == 0 || q == 0 {
        return Err(Error::input("exponents must be positive"));
    }
    let (g, _, s0) = extended_gcd(p as i64, q as i64);
    if g != 1 {
        return Err(Error::input(format!("{p} and {q} are not coprime (gcd {g})")));
    }
    let m = s0.rem_euclid(p as i64);
    let s = if m == 0 { -(p as i64) } else { m - p as i64 };
    let r = (1 - q as i64 * s) / p as i64;
    debug_assert_eq!(p as i64 * r + q as i64 * s, 1);
    Ok(BezoutCertificate { p, q, r, s })
}

/// The three commutation axioms for a unary map `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GAxioms {
    /// (a) `x * g(x) = g(x) * x` for every `x`.
    pub element_commutes_with_image: bool,
    /// (b) `g(x) * g(y) = g(y) * g(x)` for every pair.
    pub images_commute: bool,
    /// (c) `(x * g(x)) * (y * g(y)) = (y * g(y)) * (x * g(x))` for every pair.
    pub paired_products_commute: bool,
}

impl GAxioms {
    pub fn all(self) -> bool {
        self.element_commutes_with_image && self.images_commute && self.paired_products_commute
    }
}

/// Evaluates the three axioms for `g` given as an image vector
/// (`g[i]` is the image of element `i`).
pub fn check_g_axioms(s: &CayleyTable, g: &[Element]) -> Result<GAxioms> {
    s.require_associative()?;
    let n = s.order();
    if g.len() != n || g.iter().any(|e| e.0 >= n) {
        return Err(Error::input(format!(
            "map must assign one element of 0..{n} to each element"
        )));
    }
    let a = (0..n).all(|x| s.at(x, g[x].0) == s.at(g[x].0, x));
    let b = (0..n).all(|x| (0..n).all(|y| s.at(g[x].0, g[y].0) == s.at(g[y].0, g[x].0)));
    let paired: Vec<usize> = (0..n).map(|x| s.at(x, g[x].0)).collect();
    let c = (0..n).all(|x| (0..n).all(|y| s.at(paired[x], paired[y]) == s.at(paired[y], paired[x])));
    Ok(GAxioms {
        element_commutes_with_image: a,
        images_commute: b,
        paired_products_commute: c,
    })
}

/// A `g` map realized as a power map, together with the arithmetic that
/// produced the exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerGMap {
    pub certificate: BezoutCertificate,
    /// `g(x) = x^exponent` with `exponent = -q*s`.
    pub exponent: u32,
    pub map: Vec<Element>,
}

/// Builds `g(x) = x^(-q*s)` from a Bezout certificate for coprime
/// `(p, q)` and verifies all three axioms.
///
/// Fails with a precondition error (carrying the witness pair) when the
/// table does not have commuting `p`-th or `q`-th powers; fails with an
/// invariant failure if the axioms do not come out true, which the
/// arithmetic rules out.
pub fn instantiate_g_from_powers(s: &CayleyTable, p: u32, q: u32) -> Result<PowerGMap> {
    let certificate = bezout(p, q)?;
    for exp in [p, q] {
        if let Some((x, y)) = powers_commute(s, exp)? {
            return Err(Error::precondition(format!(
                "{exp}-th powers do not commute: witness ({}, {})",
                s.name(x),
                s.name(y)
            )));
        }
    }
    let exponent = (-(certificate.q as i64) * certificate.s) as u32;
    let map: Vec<Element> = s
        .elements()
        .map(|x| s.power(x, exponent))
        .collect::<Result<_>>()?;
    let axioms = check_g_axioms(s, &map)?;
    if !axioms.all() {
        return Err(Error::invariant(format!(
            "power map x^{exponent} violates a commutation axiom: {axioms:?}"
        )));
    }
    Ok(PowerGMap {
        certificate,
        exponent,
        map,
    })
}

/// Order cap for the exhaustive map search (`n^n` candidates).
pub const MAX_G_SEARCH_ORDER: usize = 6;

/// Exhaustively searches all `n^n` unary maps for one satisfying all
/// three axioms; returns the first in lexicographic order, or `None`.
pub fn find_g_map(s: &CayleyTable) -> Result<Option<Vec<Element>>> {
    s.require_associative()?;
    let n = s.order();
    if n > MAX_G_SEARCH_ORDER {
        return Err(Error::resource(format!(
            "map search supported for orders 1..={MAX_G_SEARCH_ORDER}, got {n}"
        )));
    }
    let mut g = vec![Element(0); n];
    loop {
        if check_g_axioms(s, &g)?.all() {
            return Ok(Some(g));
        }
        // Advance the image vector like an odometer.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if g[pos].0 + 1 < n {
                g[pos].0 += 1;
                break;
            }
            g[pos].0 = 0;
        }
    }
}
