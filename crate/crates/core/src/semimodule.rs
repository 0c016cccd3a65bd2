//! Finite semimodules over finite additively idempotent semirings, and the
//! standard ways of building them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::table::{AlgebraTable, Semilattice, Table};

/// A join-semilattice with zero together with a left action of `over`.
/// Row `a`, column `x` of the action table holds `a·x`.
#[derive(Clone, Debug)]
pub struct SemimoduleTable {
    name: String,
    over: Arc<AlgebraTable>,
    join: Table,
    zero: usize,
    action: Vec<usize>,
    display: Option<Vec<String>>,
}

impl PartialEq for SemimoduleTable {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.same_over(other)
            && self.join == other.join
            && self.zero == other.zero
            && self.action == other.action
    }
}

impl SemimoduleTable {
    pub fn new(
        name: impl Into<String>,
        over: Arc<AlgebraTable>,
        join: Vec<Vec<usize>>,
        zero: usize,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let join = Table::from_rows(join)?;
        let m = join.size();
        if m == 0 {
            return Err(Error::input("semimodule carrier must be nonempty"));
        }
        if zero >= m {
            return Err(Error::input(format!("zero = {zero} is out of range")));
        }
        if action.len() != over.size() {
            return Err(Error::input(format!(
                "action has {} rows, the algebra has {} elements",
                action.len(),
                over.size()
            )));
        }
        let mut flat = Vec::with_capacity(over.size() * m);
        for (a, row) in action.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::input(format!(
                    "action row {a} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v >= m) {
                return Err(Error::input(format!(
                    "action row {a} holds out-of-range {v}"
                )));
            }
            flat.extend(row);
        }
        Ok(SemimoduleTable {
            name: name.into(),
            over,
            join,
            zero,
            action: flat,
            display: None,
        })
    }

    pub(crate) fn from_parts(
        name: String,
        over: Arc<AlgebraTable>,
        join: Table,
        zero: usize,
        action: Vec<usize>,
        display: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(action.len(), over.size() * join.size());
        SemimoduleTable {
            name,
            over,
            join,
            zero,
            action,
            display,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
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

    pub fn display(&self) -> Option<&[String]> {
        self.display.as_deref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn over(&self) -> &Arc<AlgebraTable> {
        &self.over
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join.get(x, y)
    }

    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a * self.size() + x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    pub fn action_cells(&self) -> &[usize] {
        &self.action
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.display {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn semilattice(&self) -> Result<Semilattice> {
        Semilattice::new(self.join.clone())
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// Whether both semimodules are over literally the same semiring.
    pub fn same_over(&self, other: &SemimoduleTable) -> bool {
        Arc::ptr_eq(&self.over, &other.over) || self.over.same_tables(&other.over)
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }
}

/// Checks that `(M, ∨, 0)` is a commutative idempotent monoid and that the
/// action satisfies `(ab)·x = a·(b·x)`, `a·(x ∨ y) = a·x ∨ a·y`,
/// `(a ∨ b)·x = a·x ∨ b·x`, `0·x = 0 = a·0` and `1·x = x`.
pub fn validate_semimodule(m: &SemimoduleTable) -> Result<Report> {
    const NAME: &str = "validate_semimodule";
    let a = m.over();
    let zero_a = a.zero_or_err()?;
    let n = m.size();
    let k = a.size();
    for x in 0..n {
        if m.join(x, x) != x {
            return Ok(Report::fail(NAME, vec![x], "join is not idempotent"));
        }
        if m.join(x, m.zero()) != x {
            return Ok(Report::fail(NAME, vec![x], "x ∨ 0 ≠ x"));
        }
        for y in 0..n {
            if m.join(x, y) != m.join(y, x) {
                return Ok(Report::fail(NAME, vec![x, y], "join is not commutative"));
            }
            for z in 0..n {
                if m.join(m.join(x, y), z) != m.join(x, m.join(y, z)) {
                    return Ok(Report::fail(NAME, vec![x, y, z], "join is not associative"));
                }
            }
        }
    }
    for s in 0..k {
        for t in 0..k {
            for x in 0..n {
                if m.act(a.mult(s, t), x) != m.act(s, m.act(t, x)) {
                    return Ok(Report::fail(NAME, vec![s, t, x], "(ab)·x ≠ a·(b·x)"));
                }
            }
        }
    }
    for s in 0..k {
        for x in 0..n {
            for y in 0..n {
                if m.act(s, m.join(x, y)) != m.join(m.act(s, x), m.act(s, y)) {
                    return Ok(Report::fail(NAME, vec![s, x, y], "a·(x ∨ y) ≠ a·x ∨ a·y"));
                }
            }
        }
    }
    for s in 0..k {
        for t in 0..k {
            for x in 0..n {
                if m.act(a.join(s, t), x) != m.join(m.act(s, x), m.act(t, x)) {
                    return Ok(Report::fail(NAME, vec![s, t, x], "(a ∨ b)·x ≠ a·x ∨ b·x"));
                }
            }
        }
    }
    for x in 0..n {
        if m.act(zero_a, x) != m.zero() {
            return Ok(Report::fail(NAME, vec![zero_a, x], "0·x ≠ 0"));
        }
    }
    for s in 0..k {
        if m.act(s, m.zero()) != m.zero() {
            return Ok(Report::fail(NAME, vec![s, m.zero()], "a·0 ≠ 0"));
        }
    }
    for x in 0..n {
        if m.act(a.one(), x) != x {
            return Ok(Report::fail(NAME, vec![a.one(), x], "1·x ≠ x"));
        }
    }
    Ok(Report::pass(NAME))
}

/// The semiring acting on itself by left multiplication.
pub fn regular(a: &AlgebraTable) -> Result<SemimoduleTable> {
    let zero = a.zero_or_err()?;
    let over = Arc::new(a.clone());
    Ok(SemimoduleTable::from_parts(
        a.name().to_string(),
        over,
        a.join_table().clone(),
        zero,
        a.mult_table().cells().to_vec(),
        a.display().map(<[String]>::to_vec),
    ))
}

/// Mixed-radix digits of `index`, most significant coordinate first.
pub fn decode_tuple(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        out[i] = index % radices[i];
        index /= radices[i];
    }
    out
}

pub fn encode_tuple(tuple: &[usize], radices: &[usize]) -> usize {
    tuple
        .iter()
        .zip(radices)
        .fold(0, |acc, (&t, &r)| acc * r + t)
}

/// Direct product of semimodules over a common semiring, with
/// componentwise join and action.
pub fn product(ms: &[SemimoduleTable]) -> Result<SemimoduleTable> {
    let first = ms
        .first()
        .ok_or_else(|| Error::input("product needs at least one factor"))?;
    if let Some(m) = ms.iter().find(|m| !m.same_over(first)) {
        return Err(Error::input(format!(
            "{} and {} are over different semirings",
            first.name(),
            m.name()
        )));
    }
    let radices: Vec<usize> = ms.iter().map(SemimoduleTable::size).collect();
    let size: usize = radices.iter().product();
    let tuples: Vec<Vec<usize>> = (0..size).map(|i| decode_tuple(i, &radices)).collect();
    let join = Table::from_fn(size, |x, y| {
        let t: Vec<usize> = (0..ms.len())
            .map(|i| ms[i].join(tuples[x][i], tuples[y][i]))
            .collect();
        encode_tuple(&t, &radices)
    });
    let zero = encode_tuple(&ms.iter().map(|m| m.zero()).collect::<Vec<_>>(), &radices);
    let k = first.over().size();
    let mut action = Vec::with_capacity(k * size);
    for s in 0..k {
        for tuple in &tuples {
            let t: Vec<usize> = (0..ms.len()).map(|i| ms[i].act(s, tuple[i])).collect();
            action.push(encode_tuple(&t, &radices));
        }
    }
    let display = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().zip(ms).map(|(&x, m)| m.element_name(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let name = ms
        .iter()
        .map(|m| m.name().to_string())
        .collect::<Vec<_>>()
        .join("x");
    Ok(SemimoduleTable::from_parts(
        name,
        first.over().clone(),
        join,
        zero,
        action,
        Some(display),
    ))
}

/// `A^k` with componentwise operations; the free semimodule on `k`
/// generators.
pub fn free(a: &AlgebraTable, k: usize) -> Result<SemimoduleTable> {
    if k == 0 {
        return Err(Error::input("free semimodule needs at least one generator"));
    }
    let reg = regular(a)?;
    let factors = vec![reg; k];
    Ok(product(&factors)?.with_name(format!("{}^{k}", a.name())))
}

/// Direct product of semirings with componentwise operations and constants.
pub fn product_semiring(algebras: &[AlgebraTable]) -> Result<AlgebraTable> {
    if algebras.is_empty() {
        return Err(Error::input("product needs at least one factor"));
    }
    let radices: Vec<usize> = algebras.iter().map(AlgebraTable::size).collect();
    let size: usize = radices.iter().product();
    let tuples: Vec<Vec<usize>> = (0..size).map(|i| decode_tuple(i, &radices)).collect();
    let componentwise = |f: &dyn Fn(&AlgebraTable, usize, usize) -> usize| {
        Table::from_fn(size, |x, y| {
            let t: Vec<usize> = algebras
                .iter()
                .enumerate()
                .map(|(i, a)| f(a, tuples[x][i], tuples[y][i]))
                .collect();
            encode_tuple(&t, &radices)
        })
    };
    let join = componentwise(&|a, x, y| a.join(x, y));
    let mult = componentwise(&|a, x, y| a.mult(x, y));
    let one = encode_tuple(
        &algebras.iter().map(|a| a.one()).collect::<Vec<_>>(),
        &radices,
    );
    let name = algebras
        .iter()
        .map(|a| a.name().to_string())
        .collect::<Vec<_>>()
        .join("x");
    let mut out = AlgebraTable::from_tables(name, join, mult, one)?;
    if let Some(zs) = algebras
        .iter()
        .map(|a| a.zero())
        .collect::<Option<Vec<_>>>()
    {
        out = out.with_zero(encode_tuple(&zs, &radices))?;
    }
    let unary = |pick: &dyn Fn(&AlgebraTable) -> Option<&[usize]>| -> Option<Vec<usize>> {
        let tables: Vec<&[usize]> = algebras.iter().map(pick).collect::<Option<_>>()?;
        Some(
            tuples
                .iter()
                .map(|t| {
                    let img: Vec<usize> =
                        t.iter().enumerate().map(|(i, &x)| tables[i][x]).collect();
                    encode_tuple(&img, &radices)
                })
                .collect(),
        )
    };
    if let Some(l) = unary(&|a| a.lneg()) {
        out = out.with_lneg(l)?;
    }
    if let Some(r) = unary(&|a| a.rneg()) {
        out = out.with_rneg(r)?;
    }
    let display = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t
                .iter()
                .zip(algebras)
                .map(|(&x, a)| a.element_name(x))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    out.with_display(display)
}

/// Least subset containing `gens` and `0` that is closed under join and the
/// action, as a sorted index list.
pub fn subsemimodule_generated(m: &SemimoduleTable, gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; m.size()];
    let mut members = Vec::new();
    let mut queue = vec![m.zero()];
    queue.extend_from_slice(gens);
    while let Some(x) = queue.pop() {
        if inside[x] {
            continue;
        }
        inside[x] = true;
        members.push(x);
        for &y in &members {
            let j = m.join(x, y);
            if !inside[j] {
                queue.push(j);
            }
        }
        for s in 0..m.over().size() {
            let ax = m.act(s, x);
            if !inside[ax] {
                queue.push(ax);
            }
        }
    }
    members.sort_unstable();
    members
}

/// The subsemimodule on `members` (which must be closed), relabelled
/// `0..members.len()` in the given order.
pub fn restrict(
    m: &SemimoduleTable,
    members: &[usize],
    name: impl Into<String>,
) -> Result<SemimoduleTable> {
    let mut pos = vec![usize::MAX; m.size()];
    for (i, &x) in members.iter().enumerate() {
        pos[x] = i;
    }
    let lookup = |x: usize| -> Result<usize> {
        match pos[x] {
            usize::MAX => Err(Error::input(format!(
                "subset of {} is not closed: reaches {}",
                m.name(),
                m.element_name(x)
            ))),
            i => Ok(i),
        }
    };
    let size = members.len();
    let mut join = Vec::with_capacity(size * size);
    for &x in members {
        for &y in members {
            join.push(lookup(m.join(x, y))?);
        }
    }
    let mut action = Vec::with_capacity(m.over().size() * size);
    for s in 0..m.over().size() {
        for &x in members {
            action.push(lookup(m.act(s, x))?);
        }
    }
    let display = members.iter().map(|&x| m.element_name(x)).collect();
    Ok(SemimoduleTable::from_parts(
        name.into(),
        m.over().clone(),
        Table::from_cells(size, join),
        lookup(m.zero())?,
        action,
        Some(display),
    ))
}

/// `Au = {x·u | x ∈ A}` as a subsemimodule of the regular semimodule.
pub fn cyclic(a: &AlgebraTable, u: usize) -> Result<SemimoduleTable> {
    if u >= a.size() {
        return Err(Error::input(format!("generator {u} is out of range")));
    }
    let reg = regular(a)?;
    let members: BTreeSet<usize> = (0..a.size()).map(|x| a.mult(x, u)).collect();
    let members: Vec<usize> = members.into_iter().collect();
    restrict(
        &reg,
        &members,
        format!("{}·{}", a.name(), a.element_name(u)),
    )
}

/// Every subsemimodule of `m`, each as a sorted index list, in order of
/// discovery (size first, then lexicographic).
pub fn all_subsemimodules(m: &SemimoduleTable) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![subsemimodule_generated(m, &[])];
    seen.insert(frontier[0].clone());
    while let Some(sub) = frontier.pop() {
        for x in 0..m.size() {
            if sub.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = sub.clone();
            gens.push(x);
            let next = subsemimodule_generated(m, &gens);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    out
}

/// Greedily shrinks `candidates` to a set that still generates `m`.
pub fn minimize_generators(m: &SemimoduleTable, candidates: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = candidates.to_vec();
    let mut i = 0;
    while i < gens.len() {
        let mut rest = gens.clone();
        let g = rest.remove(i);
        if subsemimodule_generated(m, &rest).binary_search(&g).is_ok() {
            gens = rest;
        } else {
            i += 1;
        }
    }
    gens
}

/// Join-irreducibles of `m`, shrunk to a generating set for the action.
pub fn generating_set(m: &SemimoduleTable) -> Vec<usize> {
    let ji = match m.semilattice() {
        Ok(s) => s.join_irreducibles(),
        Err(_) => (0..m.size()).collect(),
    };
    minimize_generators(m, &ji)
}
