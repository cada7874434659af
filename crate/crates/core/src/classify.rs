//! Structural predicates on finite semigroups.
//!
//! Every function here requires an associative table and fails with a
//! contract violation otherwise. Predicates that quantify over pairs
//! report the lexicographically smallest failing pair (by element index)
//! as a witness, so sweeps over enumerated tables produce stable output.

use crate::error::{Error, Result};
use crate::table::{CayleyTable, Element};

/// A pair of elements exhibiting the failure of a universally quantified
/// identity. Always the lexicographically smallest such pair.
pub type WitnessPair = (Element, Element);

/// Commutativity, cancellativity, separativity, and identity data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProperties {
    pub commutative: bool,
    pub cancellative: bool,
    pub separative: bool,
    pub has_identity: bool,
    pub identity: Option<Element>,
    pub idempotent_count: usize,
}

/// Regularity-family predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityProperties {
    pub regular: bool,
    pub inverse: bool,
    pub completely_regular: bool,
    pub clifford: bool,
    pub group: bool,
}

/// Combined report for one table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub order: usize,
    pub commutative: bool,
    pub cancellative: bool,
    pub separative: bool,
    pub regular: bool,
    pub inverse: bool,
    pub completely_regular: bool,
    pub clifford: bool,
    pub group: bool,
    pub has_identity: bool,
    pub identity: Option<Element>,
    pub idempotent_count: usize,
}

fn row_and_column_permutations(s: &CayleyTable) -> bool {
    let n = s.order();
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.fill(false);
        for j in 0..n {
            let v = s.at(i, j);
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.fill(false);
        for j in 0..n {
            let v = s.at(j, i);
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    true
}

fn find_identity(s: &CayleyTable) -> Option<Element> {
    let n = s.order();
    (0..n)
        .find(|&e| (0..n).all(|x| s.at(e, x) == x && s.at(x, e) == x))
        .map(Element)
}

/// Commutativity, cancellativity (rows and columns are permutations),
/// separativity (both quasi-identities checked literally), identity
/// element, and idempotent count.
pub fn check_basic(s: &CayleyTable) -> Result<BasicProperties> {
    s.require_associative()?;
    let n = s.order();

    let commutative = (0..n).all(|x| (x + 1..n).all(|y| s.at(x, y) == s.at(y, x)));
    let cancellative = row_and_column_permutations(s);

    // (xy = xx and yx = yy) => x = y, and (xy = yy and yx = xx) => x = y.
    let mut separative = true;
    'sep: for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (xy, yx, xx, yy) = (s.at(x, y), s.at(y, x), s.at(x, x), s.at(y, y));
            if (xy == xx && yx == yy) || (xy == yy && yx == xx) {
                separative = false;
                break 'sep;
            }
        }
    }

    let identity = find_identity(s);
    Ok(BasicProperties {
        commutative,
        cancellative,
        separative,
        has_identity: identity.is_some(),
        identity,
        idempotent_count: s.idempotents().len(),
    })
}

/// All inverses of `a`: elements `b` with `aba = a` and `bab = b`,
/// ascending.
pub fn inverses_of(s: &CayleyTable, a: Element) -> Result<Vec<Element>> {
    s.require_associative()?;
    if a.0 >= s.order() {
        return Err(Error::input(format!(
            "element index {} out of range for order {}",
            a.0,
            s.order()
        )));
    }
    let n = s.order();
    Ok((0..n)
        .filter(|&b| {
            s.at(s.at(a.0, b), a.0) == a.0 && s.at(s.at(b, a.0), b) == b
        })
        .map(Element)
        .collect())
}

/// Regular, inverse, completely regular, Clifford, and group predicates.
///
/// The inverse predicate is computed two ways, by unique inverses and by
/// regularity plus commuting idempotents, and the two must agree; they
/// coincide on finite semigroups, so a mismatch is an invariant failure.
pub fn check_regularity(s: &CayleyTable) -> Result<RegularityProperties> {
    s.require_associative()?;
    let n = s.order();

    let inverse_sets: Vec<Vec<Element>> = (0..n)
        .map(|a| inverses_of(s, Element(a)))
        .collect::<Result<_>>()?;

    let regular = (0..n).any(|a| (0..n).any(|b| s.at(s.at(a, b), a) == a))
        && (0..n).all(|a| (0..n).any(|b| s.at(s.at(a, b), a) == a));
    debug_assert_eq!(regular, inverse_sets.iter().all(|inv| !inv.is_empty()));

    let inverse_by_uniqueness = inverse_sets.iter().all(|inv| inv.len() == 1);
    let idempotents = s.idempotents();
    let idempotents_commute = idempotents
        .iter()
        .all(|&e| idempotents.iter().all(|&f| s.at(e.0, f.0) == s.at(f.0, e.0)));
    let inverse_by_structure = regular && idempotents_commute;
    if inverse_by_uniqueness != inverse_by_structure {
        return Err(Error::invariant(format!(
            "inverse-semigroup criteria disagree: unique-inverses={inverse_by_uniqueness}, \
             regular-with-commuting-idempotents={inverse_by_structure}"
        )));
    }

    let completely_regular = (0..n).all(|a| {
        inverse_sets[a]
            .iter()
            .any(|&b| s.at(a, b.0) == s.at(b.0, a))
    });

    let group = match find_identity(s) {
        Some(e) => (0..n).all(|a| {
            (0..n).any(|b| s.at(a, b) == e.0 && s.at(b, a) == e.0)
        }),
        None => false,
    };

    Ok(RegularityProperties {
        regular,
        inverse: inverse_by_uniqueness,
        completely_regular,
        clifford: inverse_by_uniqueness && completely_regular,
        group,
    })
}

/// Runs both predicate families and checks the implication lattice:
/// group implies cancellative implies separative, and Clifford holds
/// exactly for inverse and completely regular tables.
pub fn classify(s: &CayleyTable) -> Result<ClassificationReport> {
    let basic = check_basic(s)?;
    let reg = check_regularity(s)?;

    if reg.group && !basic.cancellative {
        return Err(Error::invariant("group table is not cancellative"));
    }
    if basic.cancellative && !basic.separative {
        return Err(Error::invariant("cancellative table is not separative"));
    }
    if reg.clifford != (reg.inverse && reg.completely_regular) {
        return Err(Error::invariant("clifford flag contradicts its definition"));
    }

    Ok(ClassificationReport {
        order: s.order(),
        commutative: basic.commutative,
        cancellative: basic.cancellative,
        separative: basic.separative,
        regular: reg.regular,
        inverse: reg.inverse,
        completely_regular: reg.completely_regular,
        clifford: reg.clifford,
        group: reg.group,
        has_identity: basic.has_identity,
        identity: basic.identity,
        idempotent_count: basic.idempotent_count,
    })
}

/// Do `p`-th powers commute: `x^p y^p = y^p x^p` for all pairs?
/// `None` means the identity holds; otherwise the smallest failing pair.
/// At `p = 1` this is plain commutativity.
pub fn powers_commute(s: &CayleyTable, p: u32) -> Result<Option<WitnessPair>> {
    s.require_associative()?;
    if p == 0 {
        return Err(Error::input("power exponent must be at least 1"));
    }
    let n = s.order();
    let pow: Vec<usize> = (0..n)
        .map(|x| s.power(Element(x), p).map(|e| e.0))
        .collect::<Result<_>>()?;
    for x in 0..n {
        for y in 0..n {
            if s.at(pow[x], pow[y]) != s.at(pow[y], pow[x]) {
                return Ok(Some((Element(x), Element(y))));
            }
        }
    }
    Ok(None)
}

/// Is the `k`-th power map an endomorphism: `(xy)^k = x^k y^k` for all
/// pairs? `None` means yes; otherwise the smallest failing pair.
pub fn power_endomorphism(s: &CayleyTable, k: u32) -> Result<Option<WitnessPair>> {
    s.require_associative()?;
    if k < 2 {
        return Err(Error::input("endomorphism exponent must be at least 2"));
    }
    let n = s.order();
    let pow: Vec<usize> = (0..n)
        .map(|x| s.power(Element(x), k).map(|e| e.0))
        .collect::<Result<_>>()?;
    for x in 0..n {
        for y in 0..n {
            let xy = s.at(x, y);
            if s.power(Element(xy), k)?.0 != s.at(pow[x], pow[y]) {
                return Ok(Some((Element(x), Element(y))));
            }
        }
    }
    Ok(None)
}

/// The three cube-related conditions used by the third main audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeConditions {
    /// The map `x -> x^3` is injective.
    pub cube_injective: bool,
    /// `x^4 = x` implies `x^2 = x` for every element.
    pub four_to_two: bool,
    /// `x^3 = x` for every element.
    pub x_cubed_equals_x: bool,
}

/// Evaluates [`CubeConditions`] and cross-checks that cube injectivity
/// forces the four-to-two condition (a small theorem; a failure here is
/// an invariant failure, not a property of the input).
pub fn check_cube_conditions(s: &CayleyTable) -> Result<CubeConditions> {
    s.require_associative()?;
    let n = s.order();
    let cube: Vec<usize> = (0..n).map(|x| s.power(Element(x), 3).unwrap().0).collect();

    let mut hit = vec![false; n];
    let mut cube_injective = true;
    for &c in &cube {
        if hit[c] {
            cube_injective = false;
            break;
        }
        hit[c] = true;
    }

    let four_to_two = (0..n).all(|x| s.power(Element(x), 4).unwrap().0 != x || s.at(x, x) == x);
    let x_cubed_equals_x = (0..n).all(|x| cube[x] == x);

    if cube_injective && !four_to_two {
        return Err(Error::invariant(
            "cube map is injective yet x^4 = x does not force x^2 = x",
        ));
    }
    Ok(CubeConditions {
        cube_injective,
        four_to_two,
        x_cubed_equals_x,
    })
}

/// Quantifier mode for [`consecutive_powers`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsecutiveMode {
    /// One triple of consecutive exponents must work for every pair.
    Global,
    /// Each pair may use its own triple.
    PerPair,
}

/// Satisfying triple starts for one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStarts {
    pub x: Element,
    pub y: Element,
    /// Every `i` with `(xy)^e = x^e y^e` at `e = i, i+1, i+2 <= bound`.
    pub starts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsecutiveDetail {
    Global { starts: Vec<u32> },
    PerPair { pairs: Vec<PairStarts> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsecutiveReport {
    pub bound: u32,
    pub holds: bool,
    pub detail: ConsecutiveDetail,
}

/// Searches for three consecutive exponents `i, i+1, i+2 <= bound` at
/// which the power map is an endomorphism instance-wise.
///
/// Exponent 0 denotes the empty product, so instances at exponents 0 and
/// 1 hold vacuously; the first triple with real content starts at 0 and
/// is constrained only at exponent 2.
pub fn consecutive_powers(
    s: &CayleyTable,
    bound: u32,
    mode: ConsecutiveMode,
) -> Result<ConsecutiveReport> {
    s.require_associative()?;
    if bound < 3 {
        return Err(Error::input("exponent bound must be at least 3"));
    }
    let n = s.order();

    // instance[e][x * n + y] for e in 2..=bound; e <= 1 is vacuous.
    let pair_instance = |e: u32, x: usize, y: usize| -> bool {
        if e <= 1 {
            return true;
        }
        let xy = s.at(x, y);
        s.power(Element(xy), e).unwrap()
            == s.multiply(s.power(Element(x), e).unwrap(), s.power(Element(y), e).unwrap())
                .unwrap()
    };

    match mode {
        ConsecutiveMode::Global => {
            let global_instance: Vec<bool> = (0..=bound)
                .map(|e| (0..n).all(|x| (0..n).all(|y| pair_instance(e, x, y))))
                .collect();
            let starts: Vec<u32> = (0..=bound - 2)
                .filter(|&i| (i..=i + 2).all(|e| global_instance[e as usize]))
                .collect();
            Ok(ConsecutiveReport {
                bound,
                holds: !starts.is_empty(),
                detail: ConsecutiveDetail::Global { starts },
            })
        }
        ConsecutiveMode::PerPair => {
            let mut pairs = Vec::with_capacity(n * n);
            let mut holds = true;
            for x in 0..n {
                for y in 0..n {
                    let starts: Vec<u32> = (0..=bound - 2)
                        .filter(|&i| (i..=i + 2).all(|e| pair_instance(e, x, y)))
                        .collect();
                    holds &= !starts.is_empty();
                    pairs.push(PairStarts {
                        x: Element(x),
                        y: Element(y),
                        starts,
                    });
                }
            }
            Ok(ConsecutiveReport {
                bound,
                holds,
                detail: ConsecutiveDetail::PerPair { pairs },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        brandt_b2, cyclic_group, enumerate_semigroups, heisenberg_mod, left_zero, monogenic,
    };

    #[test]
    fn brandt_b2_classification() {
        let b2 = brandt_b2();
        let r = classify(&b2).unwrap();
        assert!(!r.commutative);
        assert!(!r.cancellative);
        assert!(!r.separative);
        assert!(r.regular);
        assert!(r.inverse);
        assert!(!r.completely_regular);
        assert!(!r.clifford);
        assert!(!r.group);
        assert!(!r.has_identity);
        assert_eq!(r.idempotent_count, 3);
    }

    #[test]
    fn cyclic_group_classification() {
        let z4 = cyclic_group(4).unwrap();
        let r = classify(&z4).unwrap();
        assert!(r.commutative && r.cancellative && r.separative);
        assert!(r.regular && r.inverse && r.completely_regular && r.clifford && r.group);
        assert_eq!(r.identity, Some(Element(0)));
        assert_eq!(r.idempotent_count, 1);
    }

    #[test]
    fn left_zero_classification_and_inverses() {
        let lz = left_zero(2).unwrap();
        let r = classify(&lz).unwrap();
        assert!(!r.commutative && !r.cancellative && !r.separative);
        assert!(r.regular && r.completely_regular);
        assert!(!r.inverse && !r.clifford && !r.group);
        assert_eq!(r.idempotent_count, 2);
        // Every element inverts every other one in a left-zero band.
        assert_eq!(
            inverses_of(&lz, Element(0)).unwrap(),
            vec![Element(0), Element(1)]
        );
    }

    #[test]
    fn classify_rejects_magmas() {
        let magma = CayleyTable::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(matches!(check_basic(&magma), Err(Error::Contract(_))));
        assert!(matches!(powers_commute(&magma, 2), Err(Error::Contract(_))));
    }

    #[test]
    fn cancellative_matches_quasi_identity_oracle() {
        // Independent definition: xy = xz forces y = z, yx = zx forces y = z.
        for s in enumerate_semigroups(3).unwrap() {
            let n = s.order();
            let mut oracle = true;
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if y != z && (s.at(x, y) == s.at(x, z) || s.at(y, x) == s.at(z, x)) {
                            oracle = false;
                        }
                    }
                }
            }
            assert_eq!(check_basic(&s).unwrap().cancellative, oracle);
        }
    }

    #[test]
    fn implication_lattice_on_all_order_3_semigroups() {
        for n in 1..=3 {
            for s in enumerate_semigroups(n).unwrap() {
                let r = classify(&s).unwrap();
                assert!(!r.group || r.cancellative);
                assert!(!r.cancellative || r.separative);
                assert!(!r.inverse || r.regular);
                assert!(!r.completely_regular || r.regular);
                assert!(!r.clifford || (r.inverse && r.completely_regular));
                assert!(!r.group || r.clifford);
            }
        }
    }

    #[test]
    fn powers_commute_examples() {
        let b2 = brandt_b2();
        for p in 2..=6 {
            assert_eq!(powers_commute(&b2, p).unwrap(), None);
        }
        // p = 1 is commutativity itself; smallest failing pair is (e, f)
        // since e * f = 0 while f * e = 0 ... scan finds the first real one.
        let w = powers_commute(&b2, 1).unwrap().expect("b2 is noncommutative");
        let mut expected = None;
        'scan: for x in 0..5 {
            for y in 0..5 {
                if b2.at(x, y) != b2.at(y, x) {
                    expected = Some((Element(x), Element(y)));
                    break 'scan;
                }
            }
        }
        assert_eq!(Some(w), expected);
    }

    #[test]
    fn heisenberg_cube_powers_commute_but_squares_do_not() {
        let h = heisenberg_mod(3).unwrap();
        assert_eq!(powers_commute(&h, 3).unwrap(), None);
        let w = powers_commute(&h, 2).unwrap().expect("squares do not commute");
        // Re-derive the smallest witness by brute force.
        let sq: Vec<usize> = (0..27).map(|x| h.at(x, x)).collect();
        let mut expected = None;
        'scan: for x in 0..27 {
            for y in 0..27 {
                if h.at(sq[x], sq[y]) != h.at(sq[y], sq[x]) {
                    expected = Some((Element(x), Element(y)));
                    break 'scan;
                }
            }
        }
        assert_eq!(Some(w), expected);
    }

    #[test]
    fn power_endomorphism_trivial_on_commutative_tables() {
        for s in enumerate_semigroups(3).unwrap() {
            if check_basic(&s).unwrap().commutative {
                for k in 2..=8 {
                    assert_eq!(power_endomorphism(&s, k).unwrap(), None);
                }
            }
        }
    }

    #[test]
    fn cube_conditions_on_small_groups() {
        let z2 = cyclic_group(2).unwrap();
        let c = check_cube_conditions(&z2).unwrap();
        assert!(c.cube_injective && c.four_to_two && c.x_cubed_equals_x);

        let z3 = cyclic_group(3).unwrap();
        let c = check_cube_conditions(&z3).unwrap();
        assert!(!c.cube_injective && !c.four_to_two && !c.x_cubed_equals_x);

        let z4 = cyclic_group(4).unwrap();
        let c = check_cube_conditions(&z4).unwrap();
        assert!(c.cube_injective && c.four_to_two && !c.x_cubed_equals_x);
    }

    #[test]
    fn consecutive_powers_in_brandt_b2() {
        let b2 = brandt_b2();
        let report = consecutive_powers(&b2, 6, ConsecutiveMode::PerPair).unwrap();
        assert!(!report.holds);
        let ConsecutiveDetail::PerPair { pairs } = &report.detail else {
            panic!("per-pair detail expected");
        };
        let all_starts: Vec<u32> = (0..=4).collect();
        for p in pairs {
            // Pairs containing the zero element satisfy every instance.
            if p.x == Element(0) || p.y == Element(0) {
                assert_eq!(p.starts, all_starts, "pair ({}, {})", p.x, p.y);
            }
        }
        // (a, b) has no valid triple: (ab)^k = e while a^k b^k = 0 for k >= 2.
        let ab = pairs.iter().find(|p| p.x == Element(3) && p.y == Element(4));
        assert!(ab.unwrap().starts.is_empty());

        let global = consecutive_powers(&b2, 6, ConsecutiveMode::Global).unwrap();
        assert!(!global.holds);
    }

    #[test]
    fn consecutive_powers_on_commutative_monoid() {
        let m = monogenic(2, 1).unwrap();
        let report = consecutive_powers(&m, 8, ConsecutiveMode::Global).unwrap();
        assert!(report.holds);
        let ConsecutiveDetail::Global { starts } = &report.detail else {
            panic!("global detail expected");
        };
        assert_eq!(*starts, (0..=6).collect::<Vec<u32>>());
    }

    #[test]
    fn consecutive_powers_validates_bound() {
        let z2 = cyclic_group(2).unwrap();
        assert!(matches!(
            consecutive_powers(&z2, 2, ConsecutiveMode::Global),
            Err(Error::Input(_))
        ));
    }
}
