//! Finite magmas as explicit Cayley tables.
//!
//! A [`CayleyTable`] stores an order-`n` binary operation as a row-major
//! `n * n` vector of element indices plus optional element names. Nothing
//! about the type forces associativity: enumeration and diagnostics need
//! non-associative tables too. Operations that only make sense on a
//! semigroup call [`CayleyTable::require_associative`] and fail with
//! [`Error::Contract`] on a magma.
//!
//! Tables are immutable after construction and safe to share across
//! threads; the only interior state is a one-shot cache of the
//! associativity check.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Hard cap on the order of any table this crate will materialize.
pub const MAX_ORDER: usize = 1024;

/// Index of an element within a fixed [`CayleyTable`].
///
/// The index is only meaningful relative to the table it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite binary operation given by its full multiplication table.
#[derive(Debug)]
pub struct CayleyTable {
    order: usize,
    /// Row-major: `entries[i * order + j]` is the index of `i * j`.
    entries: Vec<usize>,
    names: Vec<String>,
    assoc: OnceLock<bool>,
}

impl Clone for CayleyTable {
    fn clone(&self) -> Self {
        CayleyTable {
            order: self.order,
            entries: self.entries.clone(),
            names: self.names.clone(),
            assoc: self.assoc.clone(),
        }
    }
}

/// Equality is structural: order, entries, and names. The cached
/// associativity flag is ignored.
impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.entries == other.entries && self.names == other.names
    }
}

impl Eq for CayleyTable {}

fn default_names(order: usize) -> Vec<String> {
    (0..order).map(|i| format!("e{i}")).collect()
}

fn validate_names(order: usize, names: &[String]) -> Result<()> {
    if names.len() != order {
        return Err(Error::input(format!(
            "expected {order} names, got {}",
            names.len()
        )));
    }
    for name in names {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::input(format!("invalid element name {name:?}")));
        }
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::input(format!("duplicate element name {a:?}")));
        }
    }
    Ok(())
}

impl CayleyTable {
    /// Builds a table from a flat row-major entry vector.
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::input("table order must be at least 1"));
        }
        if order > MAX_ORDER {
            return Err(Error::resource(format!(
                "order {order} exceeds the maximum {MAX_ORDER}"
            )));
        }
        if entries.len() != order * order {
            return Err(Error::input(format!(
                "order {order} table needs {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= order) {
            return Err(Error::input(format!(
                "entry {bad} is out of range for order {order}"
            )));
        }
        Ok(CayleyTable {
            order,
            entries,
            names: default_names(order),
            assoc: OnceLock::new(),
        })
    }

    /// Builds a table from nested rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        for row in rows {
            if row.len() != order {
                return Err(Error::input(format!(
                    "row of length {} in an order-{order} table",
                    row.len()
                )));
            }
        }
        CayleyTable::new(order, rows.concat())
    }

    /// Builds a table by evaluating `f` on every index pair.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        CayleyTable::new(order, entries)
    }

    /// Replaces the default `e0..` names.
    pub fn with_names<S: Into<String>>(mut self, names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        validate_names(self.order, &names)?;
        self.names = names;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn has_default_names(&self) -> bool {
        self.names == default_names(self.order)
    }

    /// Name of element `x`. Panics if the index is out of range.
    pub fn name(&self, x: Element) -> &str {
        &self.names[x.0]
    }

    /// Raw table lookup. Panics if an index is out of range; use
    /// [`CayleyTable::multiply`] for checked access.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The product `x * y`.
    pub fn multiply(&self, x: Element, y: Element) -> Result<Element> {
        if x.0 >= self.order || y.0 >= self.order {
            return Err(Error::input(format!(
                "element index out of range for order {}: ({}, {})",
                self.order, x.0, y.0
            )));
        }
        Ok(Element(self.at(x.0, y.0)))
    }

    /// `x^k` for `k >= 1`, folded left to right.
    pub fn power(&self, x: Element, k: u32) -> Result<Element> {
        if k == 0 {
            return Err(Error::input("power exponent must be at least 1"));
        }
        if x.0 >= self.order {
            return Err(Error::input(format!(
                "element index {} out of range for order {}",
                x.0, self.order
            )));
        }
        let mut acc = x.0;
        for _ in 1..k {
            acc = self.at(acc, x.0);
        }
        Ok(Element(acc))
    }

    /// First triple `(x, y, z)` with `(x*y)*z != x*(y*z)` in lexicographic
    /// order, or `None` when the table is associative.
    pub fn associativity_witness(&self) -> Option<(Element, Element, Element)> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.at(x, y);
                for z in 0..n {
                    if self.at(xy, z) != self.at(x, self.at(y, z)) {
                        return Some((Element(x), Element(y), Element(z)));
                    }
                }
            }
        }
        None
    }

    /// Full triple scan, cached after the first call.
    pub fn is_associative(&self) -> bool {
        *self
            .assoc
            .get_or_init(|| self.associativity_witness().is_none())
    }

    /// Errors with [`Error::Contract`] unless the table is associative.
    pub fn require_associative(&self) -> Result<()> {
        if self.is_associative() {
            Ok(())
        } else {
            let (x, y, z) = self.associativity_witness().expect("witness exists");
            Err(Error::contract(format!(
                "table is not associative: ({x} * {y}) * {z} != {x} * ({y} * {z})"
            )))
        }
    }

    /// Marks a table as associative without scanning. Only callable inside
    /// the crate, by constructors that guarantee associativity by build.
    pub(crate) fn assume_associative(self) -> Self {
        let _ = self.assoc.set(true);
        self
    }

    /// Light's associativity test: scan only triples whose middle factor is
    /// a generator. Agrees with the full scan; cheaper when a small
    /// generating set exists.
    pub fn light_associative(&self) -> bool {
        let n = self.order;
        for &g in &self.generating_set() {
            for x in 0..n {
                let xg = self.at(x, g);
                for y in 0..n {
                    if self.at(xg, y) != self.at(x, self.at(g, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Greedy generating set: walk elements in index order and keep those
    /// not already generated by the kept ones.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut generated = vec![false; n];
        for x in 0..n {
            if generated[x] {
                continue;
            }
            gens.push(x);
            // Close the generated set under the operation.
            generated[x] = true;
            let mut queue: Vec<usize> = (0..n).filter(|&v| generated[v]).collect();
            while let Some(a) = queue.pop() {
                for b in 0..n {
                    if generated[b] {
                        for p in [self.at(a, b), self.at(b, a)] {
                            if !generated[p] {
                                generated[p] = true;
                                queue.push(p);
                            }
                        }
                    }
                }
            }
        }
        gens
    }

    /// All `x` with `x * x = x`, in ascending index order.
    pub fn idempotents(&self) -> Vec<Element> {
        (0..self.order)
            .filter(|&x| self.at(x, x) == x)
            .map(Element)
            .collect()
    }

    /// Componentwise product on index pairs `(i, j) -> i * other.order + j`.
    pub fn direct_product(&self, other: &CayleyTable) -> Result<CayleyTable> {
        let n = self.order;
        let m = other.order;
        if n.saturating_mul(m) > MAX_ORDER {
            return Err(Error::resource(format!(
                "product order {} exceeds the maximum {MAX_ORDER}",
                n * m
            )));
        }
        let mut product = CayleyTable::from_fn(n * m, |p, q| {
            let (a, b) = (p / m, p % m);
            let (c, d) = (q / m, q % m);
            self.at(a, c) * m + other.at(b, d)
        })?;
        let names: Vec<String> = (0..n * m)
            .map(|p| format!("{}.{}", self.names[p / m], other.names[p % m]))
            .collect();
        if validate_names(n * m, &names).is_ok() {
            product.names = names;
        }
        Ok(product)
    }

    /// The table with all products reversed: `x *' y = y * x`.
    pub fn opposite(&self) -> CayleyTable {
        let mut flipped = CayleyTable::from_fn(self.order, |i, j| self.at(j, i))
            .expect("valid table stays valid under transpose");
        flipped.names = self.names.clone();
        flipped
    }

    /// Serializes to the `.sg` text format. The output is canonical: no
    /// comments, single spaces, a `names` line only for non-default names,
    /// and a trailing newline.
    pub fn to_sg(&self) -> String {
        let mut out = format!("n {}\n", self.order);
        if !self.has_default_names() {
            out.push_str("names ");
            out.push_str(&self.names.join(" "));
            out.push('\n');
        }
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(usize::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `.sg` text format: optional `#` comment lines, an
    /// `n <order>` line, an optional `names <label>...` line, then `n` rows
    /// of `n` space-separated element indices.
    pub fn parse_sg(text: &str) -> Result<CayleyTable> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty table file"))?;
        let order: usize = match header.strip_prefix("n ") {
            Some(v) => v.trim().parse().map_err(|_| {
                Error::parse(line_no, 3, format!("invalid order {:?}", v.trim()))
            })?,
            None => return Err(Error::parse(line_no, 1, "expected `n <order>`")),
        };
        if order == 0 || order > MAX_ORDER {
            return Err(Error::parse(line_no, 3, format!("order {order} out of range")));
        }

        let mut names: Option<Vec<String>> = None;
        let mut rows: Vec<usize> = Vec::with_capacity(order * order);
        let mut rows_seen = 0usize;
        for (line_no, line) in lines {
            if let Some(rest) = line.strip_prefix("names ") {
                if names.is_some() || rows_seen > 0 {
                    return Err(Error::parse(line_no, 1, "misplaced names line"));
                }
                names = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            if rows_seen == order {
                return Err(Error::parse(line_no, 1, "trailing content after table rows"));
            }
            let mut row = Vec::with_capacity(order);
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| {
                    Error::parse(line_no, 1, format!("invalid table entry {tok:?}"))
                })?;
                if v >= order {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("entry {v} out of range for order {order}"),
                    ));
                }
                row.push(v);
            }
            if row.len() != order {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("expected {order} entries in row, got {}", row.len()),
                ));
            }
            rows.extend(row);
            rows_seen += 1;
        }
        if rows_seen != order {
            return Err(Error::parse(
                0,
                0,
                format!("expected {order} rows, got {rows_seen}"),
            ));
        }

        let table = CayleyTable::new(order, rows)?;
        match names {
            Some(names) => table
                .with_names(names)
                .map_err(|e| Error::parse(0, 0, e.to_string())),
            None => Ok(table),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z3() -> CayleyTable {
        CayleyTable::from_fn(3, |i, j| (i + j) % 3).unwrap()
    }

    /// Order-2 magma with 0*0 = 1 and every other product 0.
    fn near_null() -> CayleyTable {
        CayleyTable::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap()
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(matches!(
            CayleyTable::new(2, vec![0, 1, 2, 0]),
            Err(Error::Input(_))
        ));
        assert!(matches!(CayleyTable::new(0, vec![]), Err(Error::Input(_))));
    }

    #[test]
    fn multiply_checks_indices() {
        let t = z3();
        assert_eq!(t.multiply(Element(1), Element(2)).unwrap(), Element(0));
        assert!(matches!(
            t.multiply(Element(3), Element(0)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn near_null_magma_fails_associativity_at_001() {
        let t = near_null();
        assert!(!t.is_associative());
        // Independent brute-force search for the first failing triple.
        let mut expected = None;
        'scan: for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    if t.at(t.at(x, y), z) != t.at(x, t.at(y, z)) {
                        expected = Some((Element(x), Element(y), Element(z)));
                        break 'scan;
                    }
                }
            }
        }
        assert_eq!(expected, Some((Element(0), Element(0), Element(1))));
        assert_eq!(t.associativity_witness(), expected);
        assert!(matches!(t.require_associative(), Err(Error::Contract(_))));
    }

    #[test]
    fn power_is_left_fold_and_additive() {
        let t = z3();
        assert!(matches!(t.power(Element(1), 0), Err(Error::Input(_))));
        assert_eq!(t.power(Element(2), 4).unwrap(), Element(2));
        for x in t.elements() {
            for j in 1..=4u32 {
                for k in 1..=4u32 {
                    let lhs = t.power(x, j + k).unwrap();
                    let rhs = t
                        .multiply(t.power(x, j).unwrap(), t.power(x, k).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn light_test_agrees_with_full_scan_on_all_order_3_tables() {
        // 3^9 tables; every one exercises both associativity paths.
        let n = 3usize;
        let cells = n * n;
        let total = n.pow(cells as u32);
        let mut assoc_count = 0u32;
        for code in 0..total {
            let mut c = code;
            let mut entries = Vec::with_capacity(cells);
            for _ in 0..cells {
                entries.push(c % n);
                c /= n;
            }
            let t = CayleyTable::new(n, entries).unwrap();
            let full = t.associativity_witness().is_none();
            assert_eq!(t.light_associative(), full);
            assoc_count += full as u32;
        }
        assert_eq!(assoc_count, 113);
    }

    #[test]
    fn idempotents_ascending() {
        let band = CayleyTable::from_fn(3, |i, _| i).unwrap();
        assert_eq!(
            band.idempotents(),
            vec![Element(0), Element(1), Element(2)]
        );
        assert_eq!(z3().idempotents(), vec![Element(0)]);
    }

    #[test]
    fn direct_product_multiplies_componentwise() {
        let z2 = CayleyTable::from_fn(2, |i, j| (i + j) % 2).unwrap();
        let p = z2.direct_product(&z2).unwrap();
        assert_eq!(p.order(), 4);
        // (1,0) * (1,1) = (0,1)
        assert_eq!(p.multiply(Element(2), Element(3)).unwrap(), Element(1));
        assert!(p.is_associative());
        assert_eq!(p.name(Element(2)), "e1.e0");
    }

    #[test]
    fn sg_round_trip_is_bit_exact() {
        let t = z3().with_names(vec!["0", "1", "2"]).unwrap();
        let text = t.to_sg();
        assert_eq!(text, "n 3\nnames 0 1 2\n0 1 2\n1 2 0\n2 0 1\n");
        let back = CayleyTable::parse_sg(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_sg(), text);
    }

    #[test]
    fn sg_parse_accepts_comments_and_rejects_malformed_input() {
        let ok = "# a comment\nn 2\n\n0 1\n1 0\n";
        assert_eq!(CayleyTable::parse_sg(ok).unwrap().order(), 2);

        for bad in [
            "",
            "n 2\n0 1\n",
            "n 2\n0 1\n1 2\n",
            "n 2\n0 1 0\n1 0\n",
            "n 2\nnames a a\n0 1\n1 0\n",
            "n 2\n0 1\nnames a b\n1 0\n",
            "n two\n0 1\n1 0\n",
            "n 2\n0 1\n1 0\n0 0\n",
        ] {
            assert!(
                matches!(CayleyTable::parse_sg(bad), Err(Error::Parse { .. })),
                "accepted malformed input {bad:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn opposite_is_an_involution(order in 1usize..6, seed in any::<u64>()) {
            let mut state = seed;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            let t = CayleyTable::from_fn(order, |_, _| next() % order).unwrap();
            prop_assert_eq!(t.opposite().opposite(), t.clone());
            // Fixed point of `opposite` means a symmetric table.
            let symmetric = (0..order).all(|i| (0..order).all(|j| t.at(i, j) == t.at(j, i)));
            prop_assert_eq!(t.opposite() == t, symmetric);
        }

        #[test]
        fn sg_round_trip_random_tables(order in 1usize..6, seed in any::<u64>()) {
            let mut state = seed;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            let t = CayleyTable::from_fn(order, |_, _| next() % order).unwrap();
            prop_assert_eq!(CayleyTable::parse_sg(&t.to_sg()).unwrap(), t);
        }
    }
}
