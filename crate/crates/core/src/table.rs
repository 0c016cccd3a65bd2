//! Carriers, operation tables and the order they induce.
//!
//! Elements are dense indices `0..n`. Display names only affect output.

use crate::error::{Error, Result};
use crate::report::Report;

/// A square binary operation table over `0..n`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            cells.extend(row);
        }
        let t = Table { n, cells };
        t.check_range(n)?;
        Ok(t)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y));
            }
        }
        Table { n, cells }
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<usize>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Table { n, cells }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n.max(1)).take(self.n)
    }

    /// The table obtained by relabelling every element `x` as `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Table {
        let mut cells = vec![0; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                cells[perm[x] * self.n + perm[y]] = perm[self.get(x, y)];
            }
        }
        Table { n: self.n, cells }
    }

    pub(crate) fn check_range(&self, bound: usize) -> Result<()> {
        for (k, &v) in self.cells.iter().enumerate() {
            if v >= bound {
                return Err(Error::input(format!(
                    "entry ({}, {}) = {v} is not an element index below {bound}",
                    k / self.n.max(1),
                    k % self.n.max(1)
                )));
            }
        }
        Ok(())
    }
}

/// A finite (possibly pointed, possibly involutive) semiring or residuated
/// join-semilattice given by its operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    name: String,
    join: Table,
    mult: Table,
    one: usize,
    zero: Option<usize>,
    lneg: Option<Vec<usize>>,
    rneg: Option<Vec<usize>>,
    display: Option<Vec<String>>,
}

fn check_unary(what: &str, table: &[usize], n: usize) -> Result<()> {
    if table.len() != n {
        return Err(Error::input(format!(
            "{what} has {} entries, expected {n}",
            table.len()
        )));
    }
    if let Some((i, v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(Error::input(format!("{what}[{i}] = {v} is out of range")));
    }
    Ok(())
}

impl AlgebraTable {
    pub fn new(
        name: impl Into<String>,
        join: Vec<Vec<usize>>,
        mult: Vec<Vec<usize>>,
        one: usize,
    ) -> Result<Self> {
        let join = Table::from_rows(join)?;
        let mult = Table::from_rows(mult)?;
        Self::from_tables(name, join, mult, one)
    }

    pub fn from_tables(
        name: impl Into<String>,
        join: Table,
        mult: Table,
        one: usize,
    ) -> Result<Self> {
        let n = join.size();
        if n == 0 {
            return Err(Error::input("carrier must be nonempty"));
        }
        if mult.size() != n {
            return Err(Error::input(format!(
                "mult is {}x{}, join is {n}x{n}",
                mult.size(),
                mult.size()
            )));
        }
        join.check_range(n)?;
        mult.check_range(n)?;
        if one >= n {
            return Err(Error::input(format!("one = {one} is out of range")));
        }
        Ok(AlgebraTable {
            name: name.into(),
            join,
            mult,
            one,
            zero: None,
            lneg: None,
            rneg: None,
            display: None,
        })
    }

    pub fn with_zero(mut self, zero: usize) -> Result<Self> {
        if zero >= self.size() {
            return Err(Error::input(format!("zero = {zero} is out of range")));
        }
        self.zero = Some(zero);
        Ok(self)
    }

    pub fn with_negations(mut self, lneg: Vec<usize>, rneg: Vec<usize>) -> Result<Self> {
        check_unary("lneg", &lneg, self.size())?;
        check_unary("rneg", &rneg, self.size())?;
        self.lneg = Some(lneg);
        self.rneg = Some(rneg);
        Ok(self)
    }

    pub fn with_lneg(mut self, lneg: Vec<usize>) -> Result<Self> {
        check_unary("lneg", &lneg, self.size())?;
        self.lneg = Some(lneg);
        Ok(self)
    }

    pub fn with_rneg(mut self, rneg: Vec<usize>) -> Result<Self> {
        check_unary("rneg", &rneg, self.size())?;
        self.rneg = Some(rneg);
        Ok(self)
    }

    pub fn with_display(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size() {
            return Err(Error::input(format!(
                "{} element names for {} elements",
                names.len(),
                self.size()
            )));
        }
        self.display = Some(names);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn without_negations(mut self) -> Self {
        self.lneg = None;
        self.rneg = None;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join.get(x, y)
    }

    #[inline]
    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult.get(x, y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join.get(x, y) == y
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    pub fn mult_table(&self) -> &Table {
        &self.mult
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn lneg(&self) -> Option<&[usize]> {
        self.lneg.as_deref()
    }

    pub fn rneg(&self) -> Option<&[usize]> {
        self.rneg.as_deref()
    }

    pub fn display(&self) -> Option<&[String]> {
        self.display.as_deref()
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.display {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// `x^k`, with `x^0 = 1`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mult(acc, x))
    }

    pub fn zero_or_err(&self) -> Result<usize> {
        self.zero
            .ok_or_else(|| Error::unsupported(format!("{} declares no zero", self.name)))
    }

    pub fn negations_or_err(&self) -> Result<(&[usize], &[usize])> {
        match (self.lneg(), self.rneg()) {
            (Some(l), Some(r)) => Ok((l, r)),
            _ => Err(Error::unsupported(format!(
                "{} does not declare both lneg and rneg",
                self.name
            ))),
        }
    }

    /// Whether two algebras have literally identical tables and constants
    /// (names and display labels are ignored).
    pub fn same_tables(&self, other: &AlgebraTable) -> bool {
        self.join == other.join
            && self.mult == other.mult
            && self.one == other.one
            && self.zero == other.zero
            && self.lneg == other.lneg
            && self.rneg == other.rneg
    }

    /// The isomorphic copy in which element `x` is renamed `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> AlgebraTable {
        let n = self.size();
        let relabel = |t: &Vec<usize>| {
            let mut out = vec![0; n];
            for x in 0..n {
                out[perm[x]] = perm[t[x]];
            }
            out
        };
        let display = self.display.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for x in 0..n {
                out[perm[x]] = names[x].clone();
            }
            out
        });
        AlgebraTable {
            name: self.name.clone(),
            join: self.join.permuted(perm),
            mult: self.mult.permuted(perm),
            one: perm[self.one],
            zero: self.zero.map(|z| perm[z]),
            lneg: self.lneg.as_ref().map(relabel),
            rneg: self.rneg.as_ref().map(relabel),
            display,
        }
    }

    pub fn least_element(&self) -> Option<usize> {
        (0..self.size()).find(|&b| (0..self.size()).all(|x| self.leq(b, x)))
    }

    pub fn greatest_element(&self) -> Option<usize> {
        (0..self.size()).find(|&t| (0..self.size()).all(|x| self.leq(x, t)))
    }

    pub fn is_commutative_mult(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| self.mult(x, y) == self.mult(y, x)))
    }
}

/// Checks the 0-free semiring laws: `join` is a semilattice operation, `mult`
/// is a monoid with unit `one`, and `mult` distributes over `join` on both
/// sides.
pub fn validate(a: &AlgebraTable) -> Report {
    const NAME: &str = "validate";
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if a.join(x, y) != a.join(y, x) {
                return Report::fail(NAME, vec![x, y], "join is not commutative");
            }
        }
    }
    for x in 0..n {
        if a.join(x, x) != x {
            return Report::fail(NAME, vec![x], "join is not idempotent");
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a.join(a.join(x, y), z) != a.join(x, a.join(y, z)) {
                    return Report::fail(NAME, vec![x, y, z], "join is not associative");
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a.mult(a.mult(x, y), z) != a.mult(x, a.mult(y, z)) {
                    return Report::fail(NAME, vec![x, y, z], "mult is not associative");
                }
            }
        }
    }
    for x in 0..n {
        if a.mult(a.one(), x) != x || a.mult(x, a.one()) != x {
            return Report::fail(NAME, vec![x], "one is not a two-sided unit");
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a.mult(x, a.join(y, z)) != a.join(a.mult(x, y), a.mult(x, z)) {
                    return Report::fail(
                        NAME,
                        vec![x, y, z],
                        "mult does not distribute over join on the left",
                    );
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if a.mult(a.join(x, y), z) != a.join(a.mult(x, z), a.mult(y, z)) {
                    return Report::fail(
                        NAME,
                        vec![x, y, z],
                        "mult does not distribute over join on the right",
                    );
                }
            }
        }
    }
    Report::pass(NAME)
}

/// A finite partial order as a boolean relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    pub fn from_fn(n: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(leq(x, y));
            }
        }
        Poset { n, leq: cells }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq(b, x)))
    }

    pub fn check(&self) -> Report {
        const NAME: &str = "partial_order";
        let n = self.n;
        for x in 0..n {
            if !self.leq(x, x) {
                return Report::fail(NAME, vec![x], "not reflexive");
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Report::fail(NAME, vec![x, y], "not antisymmetric");
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return Report::fail(NAME, vec![x, y, z], "not transitive");
                    }
                }
            }
        }
        Report::pass(NAME)
    }
}

/// `x <= y` iff `join(x, y) = y`.
pub fn order_from_join(a: &AlgebraTable) -> Poset {
    Poset::from_fn(a.size(), |x, y| a.leq(x, y))
}

/// Greatest lower bound of `x` and `y`, computed as the join of all common
/// lower bounds. Needs a least element so that the join is never empty.
pub fn derived_meet(a: &AlgebraTable, x: usize, y: usize) -> Result<usize> {
    let bottom = a
        .least_element()
        .ok_or_else(|| Error::unsupported(format!("{} has no least element", a.name())))?;
    Ok(meet_with_bottom(a.join_table(), bottom, x, y))
}

fn meet_with_bottom(join: &Table, bottom: usize, x: usize, y: usize) -> usize {
    let leq = |p: usize, q: usize| join.get(p, q) == q;
    (0..join.size())
        .filter(|&z| leq(z, x) && leq(z, y))
        .fold(bottom, |acc, z| join.get(acc, z))
}

/// Elements that are neither the least element nor the join of two strictly
/// smaller elements.
pub fn join_irreducibles(p: &Poset, join: &Table) -> Vec<usize> {
    let least = p.least();
    (0..p.size())
        .filter(|&x| Some(x) != least)
        .filter(|&x| {
            let below: Vec<usize> = (0..p.size()).filter(|&y| p.lt(y, x)).collect();
            !below
                .iter()
                .any(|&u| below.iter().any(|&v| join.get(u, v) == x))
        })
        .collect()
}

/// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples, meets derived from the
/// join order.
pub fn is_lattice_distributive(a: &AlgebraTable) -> Result<Report> {
    let s = Semilattice::of_algebra(a)?;
    Ok(s.distributivity().renamed("is_lattice_distributive"))
}

/// A finite join-semilattice with a least element. Such a semilattice is a
/// complete lattice, so meets and a top element are always available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semilattice {
    join: Table,
    meet: Table,
    bottom: usize,
    top: usize,
}

impl Semilattice {
    pub fn new(join: Table) -> Result<Self> {
        let n = join.size();
        let leq = |p: usize, q: usize| join.get(p, q) == q;
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq(b, x)))
            .ok_or_else(|| Error::unsupported("join-semilattice has no least element"))?;
        let top = (0..n).fold(bottom, |acc, x| join.get(acc, x));
        let meet = Table::from_fn(n, |x, y| meet_with_bottom(&join, bottom, x, y));
        Ok(Semilattice {
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn of_algebra(a: &AlgebraTable) -> Result<Self> {
        Self::new(a.join_table().clone())
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join.get(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet.get(x, y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join.get(x, y) == y
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    pub fn poset(&self) -> Poset {
        Poset::from_fn(self.size(), |x, y| self.leq(x, y))
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        join_irreducibles(&self.poset(), &self.join)
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn distributivity(&self) -> Report {
        const NAME: &str = "distributive";
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Report::fail(
                            NAME,
                            vec![x, y, z],
                            "x ∧ (y ∨ z) differs from (x ∧ y) ∨ (x ∧ z)",
                        );
                    }
                }
            }
        }
        Report::pass(NAME)
    }
}
