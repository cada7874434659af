//! Constructors for the semigroup families the audits quantify over,
//! plus exhaustive enumeration of small tables.

mod enumerate;
mod tri;

pub use enumerate::{
    canonical_form, count_semigroups, enumerate_semigroups, fold_tables, SemigroupEnumerator,
};
pub use tri::{tri_mul, tri_power, TriElement};

use crate::classify::check_regularity;
use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// The five-element combinatorial Brandt semigroup: the 2x2 matrix units
/// `e = E11, f = E22, a = E12, b = E21` together with the zero matrix.
pub fn brandt_b2() -> CayleyTable {
    // ab = e, ba = f, ea = a, af = a, fb = b, be = b, ee = e, ff = f,
    // everything else 0.
    CayleyTable::from_rows(&[
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 0, 3, 0],
        vec![0, 0, 2, 0, 4],
        vec![0, 0, 3, 0, 1],
        vec![0, 4, 0, 2, 0],
    ])
    .and_then(|t| t.with_names(vec!["0", "e", "f", "a", "b"]))
    .expect("fixed table is well-formed")
}

/// Left-zero band: `x * y = x`.
pub fn left_zero(n: usize) -> Result<CayleyTable> {
    CayleyTable::from_fn(n, |i, _| i)
}

/// Right-zero band: `x * y = y`.
pub fn right_zero(n: usize) -> Result<CayleyTable> {
    CayleyTable::from_fn(n, |_, j| j)
}

/// Cyclic group of order `n`, elements named by residue.
pub fn cyclic_group(n: usize) -> Result<CayleyTable> {
    CayleyTable::from_fn(n, |i, j| (i + j) % n)?
        .with_names((0..n).map(|i| i.to_string()).collect::<Vec<_>>())
}

/// Monogenic semigroup with index `m` and period `r`: the powers
/// `x, x^2, ..., x^(m+r-1)` subject to `x^(m+r) = x^m`. Element `i`
/// is `x^(i+1)`.
pub fn monogenic(index: usize, period: usize) -> Result<CayleyTable> {
    if index == 0 || period == 0 {
        return Err(Error::input("monogenic index and period must be at least 1"));
    }
    let order = index + period - 1;
    let reduce = |e: usize| {
        if e <= order {
            e
        } else {
            index + (e - index) % period
        }
    };
    CayleyTable::from_fn(order, |i, j| reduce(i + j + 2) - 1)?
        .with_names((1..=order).map(|e| format!("x{e}")).collect::<Vec<_>>())
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Group of upper unitriangular 3x3 matrices over the field with `p`
/// elements, for prime `p`. Order `p^3`; nonabelian with every cube
/// central; for `p = 3` every cube is the identity.
pub fn heisenberg_mod(p: usize) -> Result<CayleyTable> {
    if !is_prime(p) {
        return Err(Error::input(format!("modulus {p} is not prime")));
    }
    // Element (a, b, c) is the matrix [[1, a, c], [0, 1, b], [0, 0, 1]],
    // encoded as (a * p + b) * p + c.
    let unpack = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let table = CayleyTable::from_fn(p * p * p, |x, y| {
        let (a1, b1, c1) = unpack(x);
        let (a2, b2, c2) = unpack(y);
        ((a1 + a2) % p * p + (b1 + b2) % p) * p + (c1 + c2 + a1 * b2) % p
    })?;
    let names: Vec<String> = (0..p * p * p)
        .map(|x| {
            let (a, b, c) = unpack(x);
            format!("a{a}b{b}c{c}")
        })
        .collect();
    table.with_names(names)
}

/// Symmetric group on `n <= 5` letters; permutations indexed in
/// lexicographic order of their one-line notation, product `p * q`
/// applying `q` first.
pub fn symmetric_group(n: usize) -> Result<CayleyTable> {
    use itertools::Itertools;
    if n == 0 || n > 5 {
        return Err(Error::input("symmetric group supported for 1 <= n <= 5"));
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let table = CayleyTable::from_fn(perms.len(), |i, j| {
        let composed: Vec<usize> = (0..n).map(|x| perms[i][perms[j][x]]).collect();
        index_of(&composed)
    })?;
    let names: Vec<String> = perms
        .iter()
        .map(|p| format!("p{}", p.iter().map(usize::to_string).collect::<String>()))
        .collect();
    table.with_names(names)
}

/// Strong semilattice of groups over a finite chain.
///
/// `groups[0]` sits at the bottom; `homs[i]` maps `groups[i + 1]` onto
/// `groups[i]` one level down and must be a group homomorphism. The
/// product of `x` in level `i` and `y` in level `j` pushes both through
/// the composed homomorphisms into level `min(i, j)`.
pub fn strong_semilattice_of_groups(
    groups: &[CayleyTable],
    homs: &[Vec<usize>],
) -> Result<CayleyTable> {
    if groups.is_empty() {
        return Err(Error::input("need at least one group"));
    }
    if homs.len() + 1 != groups.len() {
        return Err(Error::input(format!(
            "{} groups need {} connecting maps, got {}",
            groups.len(),
            groups.len() - 1,
            homs.len()
        )));
    }
    for (lvl, g) in groups.iter().enumerate() {
        if !check_regularity(g)?.group {
            return Err(Error::input(format!("table at level {lvl} is not a group")));
        }
    }
    for (i, h) in homs.iter().enumerate() {
        let (hi, lo) = (&groups[i + 1], &groups[i]);
        if h.len() != hi.order() || h.iter().any(|&v| v >= lo.order()) {
            return Err(Error::input(format!(
                "map from level {} to level {} has the wrong shape",
                i + 1,
                i
            )));
        }
        for x in 0..hi.order() {
            for y in 0..hi.order() {
                if h[hi.at(x, y)] != lo.at(h[x], h[y]) {
                    return Err(Error::input(format!(
                        "map from level {} to level {} is not a homomorphism at ({x}, {y})",
                        i + 1,
                        i
                    )));
                }
            }
        }
    }

    let offsets: Vec<usize> = groups
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.order();
            Some(o)
        })
        .collect();
    let total: usize = groups.iter().map(CayleyTable::order).sum();
    let level_of = |x: usize| offsets.iter().rposition(|&o| o <= x).unwrap();
    // Push a local element down from `from` to `to` along the chain.
    let push = |mut v: usize, from: usize, to: usize| {
        for lvl in (to..from).rev() {
            v = homs[lvl][v];
        }
        v
    };

    let table = CayleyTable::from_fn(total, |x, y| {
        let (i, j) = (level_of(x), level_of(y));
        let m = i.min(j);
        let a = push(x - offsets[i], i, m);
        let b = push(y - offsets[j], j, m);
        offsets[m] + groups[m].at(a, b)
    })?;
    let names: Vec<String> = (0..total)
        .map(|x| {
            let lvl = level_of(x);
            format!("{}@{lvl}", groups[lvl].name(crate::table::Element(x - offsets[lvl])))
        })
        .collect();
    let table = table.with_names(names)?;

    if !table.is_associative() {
        return Err(Error::invariant("semilattice of groups is not associative"));
    }
    if !check_regularity(&table)?.clifford {
        return Err(Error::invariant("semilattice of groups is not Clifford"));
    }
    Ok(table)
}
