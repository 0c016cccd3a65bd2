//! Exhaustive generation of small algebras, one per isomorphism class.
//!
//! Generation runs in three stages. Lattices come first, built from
//! naturally labelled posets on the inner elements (so index order is a
//! linear extension, with bottom `0` and top `n−1`). Each lattice then gets
//! its constants: the unit, and for the involutive classes a negation pair
//! `− = σ`, `∼ = σ⁻¹` for a dual automorphism `σ`. Last, multiplication
//! tables are filled cell by cell in index order, propagating two-sided
//! distributivity and associativity on every fully assigned instance. Every
//! complete table is re-checked against the class predicate before it is
//! accepted, so the pruning rules never decide membership on their own.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{
    is_idempotent_semiring, is_involutive_semiring, is_one_bounded, is_one_bounded_involutive,
    residuals,
};
use crate::canon::{canonical_key, CanonicalKey};
use crate::checks::{is_algebra_check, run_algebra_check_in};
use crate::error::{Error, Result};
use crate::format::{emit, parse};
use crate::report::{all_of, Report};
use crate::table::{is_lattice_distributive, AlgebraTable, Semilattice, Table};
use crate::theorems::Scope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraClass {
    /// Idempotent semirings with `0` the bottom and absorbing.
    IdempotentSemiring,
    /// Idempotent semirings whose unit is the top.
    OneBoundedIdempotent,
    /// 0-free involutive semirings, with `0 = −1` declared.
    InvolutiveSemiring,
    OneBoundedInvolutive,
    /// Residuated lattices with unit the top and `0` the bottom.
    PointedResiduated,
}

impl AlgebraClass {
    pub const ALL: [AlgebraClass; 5] = [
        AlgebraClass::IdempotentSemiring,
        AlgebraClass::OneBoundedIdempotent,
        AlgebraClass::InvolutiveSemiring,
        AlgebraClass::OneBoundedInvolutive,
        AlgebraClass::PointedResiduated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraClass::IdempotentSemiring => "idempotent-semiring",
            AlgebraClass::OneBoundedIdempotent => "1-bounded-idempotent",
            AlgebraClass::InvolutiveSemiring => "involutive-semiring",
            AlgebraClass::OneBoundedInvolutive => "1-bounded-involutive",
            AlgebraClass::PointedResiduated => "pointed-residuated",
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            AlgebraClass::IdempotentSemiring => "IS",
            AlgebraClass::OneBoundedIdempotent => "BIS",
            AlgebraClass::InvolutiveSemiring => "INV",
            AlgebraClass::OneBoundedInvolutive => "BINV",
            AlgebraClass::PointedResiduated => "PR",
        }
    }

    fn one_bounded(self) -> bool {
        !matches!(
            self,
            AlgebraClass::IdempotentSemiring | AlgebraClass::InvolutiveSemiring
        )
    }

    fn involutive(self) -> bool {
        matches!(
            self,
            AlgebraClass::InvolutiveSemiring | AlgebraClass::OneBoundedInvolutive
        )
    }

    /// Membership test applied to every generated table.
    pub fn predicate(self, a: &AlgebraTable) -> Result<Report> {
        let name = self.name();
        Ok(match self {
            AlgebraClass::IdempotentSemiring => is_idempotent_semiring(a)?.renamed(name),
            AlgebraClass::OneBoundedIdempotent => {
                all_of(name, [is_idempotent_semiring(a)?, is_one_bounded(a)])
            }
            AlgebraClass::InvolutiveSemiring => is_involutive_semiring(a)?.renamed(name),
            AlgebraClass::OneBoundedInvolutive => is_one_bounded_involutive(a)?.renamed(name),
            AlgebraClass::PointedResiduated => {
                let base = all_of(name, [is_idempotent_semiring(a)?, is_one_bounded(a)]);
                if !base.passed() {
                    base
                } else {
                    match residuals(a) {
                        Ok(_) => Report::pass(name),
                        Err(Error::Check(r)) => r.renamed(name),
                        Err(e) => return Err(e),
                    }
                }
            }
        })
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgebraClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let known = AlgebraClass::ALL.map(AlgebraClass::name).join(", ");
                Error::input(format!("unknown class `{s}` (known: {known})"))
            })
    }
}

/// A finite lattice on `0..n`, bottom `0`, top `n−1`, index order a linear
/// extension.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub order: Semilattice,
    pub distributive: bool,
    /// Order-reversing bijections, in lexicographic order.
    pub dual_automorphisms: Vec<Vec<usize>>,
}

fn lattice_from_leq(n: usize, leq: &[bool]) -> Option<Table> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let ubs: Vec<usize> = (0..n).filter(|&u| le(x, u) && le(y, u)).collect();
            let least = ubs
                .iter()
                .copied()
                .find(|&u| ubs.iter().all(|&v| le(u, v)))?;
            cells.push(least);
        }
    }
    Some(Table::from_cells(n, cells))
}

fn lattice_key(join: &Table) -> Vec<u8> {
    let n = join.size();
    if n <= 2 {
        return join.cells().iter().map(|&c| c as u8).collect();
    }
    let inner: Vec<usize> = (1..n - 1).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut pos = vec![0usize; n];
    pos[n - 1] = n - 1;
    for perm in inner.iter().copied().permutations(n - 2) {
        for (i, &old) in perm.iter().enumerate() {
            pos[old] = i + 1;
        }
        // order[new] = old
        let mut order = vec![0usize; n];
        for old in 0..n {
            order[pos[old]] = old;
        }
        let enc: Vec<u8> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| pos[join.get(order[x], order[y])] as u8)
            .collect();
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    best.unwrap_or_default()
}

fn dual_automorphisms(s: &Semilattice) -> Vec<Vec<usize>> {
    let n = s.size();
    if n == 1 {
        return vec![vec![0]];
    }
    let inner: Vec<usize> = (1..n - 1).collect();
    let mut out = Vec::new();
    for perm in inner.iter().copied().permutations(inner.len()) {
        let mut sigma = vec![0usize; n];
        sigma[0] = n - 1;
        sigma[n - 1] = 0;
        for (i, &img) in perm.iter().enumerate() {
            sigma[i + 1] = img;
        }
        let reverses = (0..n).all(|x| (0..n).all(|y| s.leq(x, y) == s.leq(sigma[y], sigma[x])));
        if reverses {
            out.push(sigma);
        }
    }
    out
}

fn build_lattices(n: usize) -> Vec<Lattice> {
    assert!(n >= 1);
    let mut tables = Vec::new();
    if n == 1 {
        tables.push(Table::from_cells(1, vec![0]));
    } else {
        let m = n - 2;
        let pairs: Vec<(usize, usize)> = (1..=m).tuple_combinations().collect();
        let mut seen = HashSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let mut leq = vec![false; n * n];
            for x in 0..n {
                leq[x * n + x] = true;
                leq[x] = true;
                leq[x * n + n - 1] = true;
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    leq[i * n + j] = true;
                }
            }
            let transitive = (0..n).all(|x| {
                (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
            });
            if !transitive {
                continue;
            }
            let Some(join) = lattice_from_leq(n, &leq) else {
                continue;
            };
            if seen.insert(lattice_key(&join)) {
                tables.push(join);
            }
        }
    }
    tables
        .into_iter()
        .map(|join| {
            let order = Semilattice::new(join).expect("generated lattices have a bottom");
            Lattice {
                distributive: order.distributivity().passed(),
                dual_automorphisms: dual_automorphisms(&order),
                order,
            }
        })
        .collect()
}

/// All lattices of size `n` up to isomorphism, in a fixed order.
pub fn lattices(n: usize) -> Arc<Vec<Lattice>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Lattice>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(l) = cache.lock().expect("lattice cache").get(&n) {
        return l.clone();
    }
    let built = Arc::new(build_lattices(n));
    cache
        .lock()
        .expect("lattice cache")
        .insert(n, built.clone());
    built
}

/// One unit of search work: a lattice with its constants fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Task {
    pub size: usize,
    pub lattice: usize,
    pub unit: usize,
    pub sigma: Option<usize>,
}

impl Task {
    pub fn id(&self) -> String {
        match self.sigma {
            Some(s) => format!("{}:{}:{}:{}", self.size, self.lattice, self.unit, s),
            None => format!("{}:{}:{}", self.size, self.lattice, self.unit),
        }
    }
}

pub fn tasks(class: AlgebraClass, n: usize, lats: &[Lattice]) -> Vec<Task> {
    let mut out = Vec::new();
    for (li, lat) in lats.iter().enumerate() {
        let units: Vec<usize> = if class.one_bounded() || n == 1 {
            vec![n - 1]
        } else if class.involutive() {
            (0..n).collect()
        } else {
            // a unit at the absorbing bottom collapses the carrier
            (1..n).collect()
        };
        for unit in units {
            if class.involutive() {
                for s in 0..lat.dual_automorphisms.len() {
                    out.push(Task {
                        size: n,
                        lattice: li,
                        unit,
                        sigma: Some(s),
                    });
                }
            } else {
                out.push(Task {
                    size: n,
                    lattice: li,
                    unit,
                    sigma: None,
                });
            }
        }
    }
    out
}

const UNSET: usize = usize::MAX;

/// Backtracking over multiplication tables on a fixed lattice.
struct MultSearch<'a> {
    n: usize,
    lat: &'a Semilattice,
    m: Vec<usize>,
    free: Vec<usize>,
    domains: Vec<Vec<usize>>,
    /// `join_pairs[w]` lists `y < z` with `y ∨ z = w`.
    join_pairs: Vec<Vec<(usize, usize)>>,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl<'a> MultSearch<'a> {
    fn new(
        class: AlgebraClass,
        lat: &'a Semilattice,
        unit: usize,
        sigma: Option<&[usize]>,
    ) -> Option<Self> {
        let n = lat.size();
        let bottom = lat.bottom();
        let zero = sigma.map_or(bottom, |s| s[unit]);
        let mut domains = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut d: Vec<usize> = if x == unit {
                    vec![y]
                } else if y == unit {
                    vec![x]
                } else if !class.involutive() && (x == bottom || y == bottom) {
                    vec![bottom]
                } else {
                    (0..n).collect()
                };
                if !class.involutive() && (x == bottom || y == bottom) {
                    d.retain(|&v| v == bottom);
                }
                if class.one_bounded() {
                    let cap = lat.meet(x, y);
                    d.retain(|&v| lat.leq(v, cap));
                }
                if let Some(s) = sigma {
                    // x·y ≤ 0 ⟺ x ≤ −y
                    let below = lat.leq(x, s[y]);
                    d.retain(|&v| lat.leq(v, zero) == below);
                }
                if d.is_empty() {
                    return None;
                }
                domains.push(d);
            }
        }
        let mut m = vec![UNSET; n * n];
        let mut free = Vec::new();
        for c in 0..n * n {
            if domains[c].len() == 1 {
                m[c] = domains[c][0];
            } else {
                free.push(c);
            }
        }
        let mut join_pairs = vec![Vec::new(); n];
        for y in 0..n {
            for z in y + 1..n {
                join_pairs[lat.join(y, z)].push((y, z));
            }
        }
        let s = MultSearch {
            n,
            lat,
            m,
            free,
            domains,
            join_pairs,
            deadline: None,
            nodes: 0,
            aborted: false,
        };
        let fixed_ok = (0..n * n).all(|c| s.m[c] == UNSET || s.consistent(c / n, c % n));
        fixed_ok.then_some(s)
    }

    #[inline]
    fn g(&self, x: usize, y: usize) -> usize {
        self.m[x * self.n + y]
    }

    /// Every distributivity and associativity instance through cell `(p, q)`
    /// whose cells are all assigned holds.
    fn consistent(&self, p: usize, q: usize) -> bool {
        let n = self.n;
        let j = |a: usize, b: usize| self.lat.join(a, b);
        let v = self.g(p, q);
        for z in 0..n {
            let mz = self.g(p, z);
            if mz != UNSET {
                let mw = self.g(p, j(q, z));
                if mw != UNSET && mw != j(v, mz) {
                    return false;
                }
            }
            let mz = self.g(z, q);
            if mz != UNSET {
                let mw = self.g(j(p, z), q);
                if mw != UNSET && mw != j(v, mz) {
                    return false;
                }
            }
        }
        for &(y, z) in &self.join_pairs[q] {
            let (a, b) = (self.g(p, y), self.g(p, z));
            if a != UNSET && b != UNSET && v != j(a, b) {
                return false;
            }
        }
        for &(y, z) in &self.join_pairs[p] {
            let (a, b) = (self.g(y, q), self.g(z, q));
            if a != UNSET && b != UNSET && v != j(a, b) {
                return false;
            }
        }
        for t in 0..n {
            // (pq)t = p(qt)
            let qt = self.g(q, t);
            if qt != UNSET {
                let (l, r) = (self.g(v, t), self.g(p, qt));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
            // (tp)q = t(pq)
            let tp = self.g(t, p);
            if tp != UNSET {
                let (l, r) = (self.g(tp, q), self.g(t, v));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.g(x, y);
                // (xy)q = x(yq) with xy = p
                if xy == p {
                    let yq = self.g(y, q);
                    if yq != UNSET {
                        let r = self.g(x, yq);
                        if r != UNSET && r != v {
                            return false;
                        }
                    }
                }
                // (py)z = p(yz) with yz = q, reading (x, y) as (y, z)
                if xy == q {
                    let py = self.g(p, x);
                    if py != UNSET {
                        let l = self.g(py, y);
                        if l != UNSET && l != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize])) {
        self.dfs(0, visit);
    }

    fn dfs(&mut self, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                    return;
                }
            }
        }
        if k == self.free.len() {
            visit(&self.m);
            return;
        }
        let c = self.free[k];
        let (p, q) = (c / self.n, c % self.n);
        for i in 0..self.domains[c].len() {
            self.m[c] = self.domains[c][i];
            if self.consistent(p, q) {
                self.dfs(k + 1, visit);
            }
        }
        self.m[c] = UNSET;
    }
}

fn assemble(
    class: AlgebraClass,
    lat: &Semilattice,
    unit: usize,
    sigma: Option<&[usize]>,
    mult: &[usize],
) -> Result<AlgebraTable> {
    let n = lat.size();
    let a = AlgebraTable::from_tables(
        class.prefix(),
        lat.join_table().clone(),
        Table::from_cells(n, mult.to_vec()),
        unit,
    )?;
    match sigma {
        Some(s) => {
            let mut inv = vec![0; n];
            for (x, &y) in s.iter().enumerate() {
                inv[y] = x;
            }
            a.with_zero(s[unit])?.with_negations(inv, s.to_vec())
        }
        None => a.with_zero(lat.bottom()),
    }
}

/// Result of searching one task.
pub struct TaskResult {
    pub found: Vec<(CanonicalKey, AlgebraTable)>,
    /// Complete tables that failed the class predicate.
    pub rejected: usize,
    pub complete: bool,
}

pub fn run_task(class: AlgebraClass, task: Task, deadline: Option<Instant>) -> Result<TaskResult> {
    run_task_filtered(class, task, deadline, &|_| true)
}

fn run_task_filtered(
    class: AlgebraClass,
    task: Task,
    deadline: Option<Instant>,
    keep: &(dyn Fn(&AlgebraTable) -> bool + Sync),
) -> Result<TaskResult> {
    let lats = lattices(task.size);
    let lat = &lats[task.lattice];
    let sigma = task.sigma.map(|s| lat.dual_automorphisms[s].as_slice());
    let mut found: BTreeMap<CanonicalKey, AlgebraTable> = BTreeMap::new();
    let mut rejected = 0;
    let mut err = None;
    let Some(mut search) = MultSearch::new(class, &lat.order, task.unit, sigma) else {
        return Ok(TaskResult {
            found: Vec::new(),
            rejected,
            complete: true,
        });
    };
    search.deadline = deadline;
    search.run(&mut |mult| {
        if err.is_some() {
            return;
        }
        let a = match assemble(class, &lat.order, task.unit, sigma, mult) {
            Ok(a) => a,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        match class.predicate(&a) {
            Ok(r) if r.passed() => {
                if keep(&a) {
                    found.entry(canonical_key(&a)).or_insert(a);
                }
            }
            Ok(_) => rejected += 1,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(TaskResult {
        found: found.into_iter().collect(),
        rejected,
        complete: !search.aborted,
    })
}

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(k) => match rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn merge_sorted(class: AlgebraClass, n: usize, results: Vec<TaskResult>) -> Vec<AlgebraTable> {
    let mut all: BTreeMap<CanonicalKey, AlgebraTable> = BTreeMap::new();
    for r in results {
        for (k, a) in r.found {
            all.entry(k).or_insert(a);
        }
    }
    all.into_values()
        .enumerate()
        .map(|(i, a)| a.with_name(format!("{}{n}_{}", class.prefix(), i + 1)))
        .collect()
}

fn enumerate_size_uncached(class: AlgebraClass, n: usize) -> Result<Vec<AlgebraTable>> {
    let lats = lattices(n);
    let ts = tasks(class, n, &lats);
    let results = ts
        .par_iter()
        .map(|&t| run_task(class, t, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_sorted(class, n, results))
}

/// Every algebra of `class` with exactly `n` elements, one per isomorphism
/// class, sorted by canonical key and named `PREFIXn_i`.
pub fn enumerate_size(class: AlgebraClass, n: usize) -> Result<Arc<Vec<AlgebraTable>>> {
    type Cache = Mutex<HashMap<(AlgebraClass, usize), Arc<Vec<AlgebraTable>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("enumeration cache").get(&(class, n)) {
        return Ok(v.clone());
    }
    let v = Arc::new(enumerate_size_uncached(class, n)?);
    cache
        .lock()
        .expect("enumeration cache")
        .insert((class, n), v.clone());
    Ok(v)
}

/// A named predicate an algebra must satisfy (`expected = true`) or fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    pub check: String,
    pub expected: bool,
}

impl FromStr for Filter {
    type Err = Error;

    /// `name`, `name=true`, `name=false` or `!name`.
    fn from_str(s: &str) -> Result<Self> {
        let (check, expected) = if let Some(rest) = s.strip_prefix('!') {
            (rest, false)
        } else if let Some((c, v)) = s.split_once('=') {
            let v = match v {
                "true" | "pass" => true,
                "false" | "fail" => false,
                _ => return Err(Error::input(format!("bad filter value in `{s}`"))),
            };
            (c, v)
        } else {
            (s, true)
        };
        if !is_algebra_check(check) {
            return Err(Error::input(format!("unknown check `{check}` in filter")));
        }
        Ok(Filter {
            check: check.to_string(),
            expected,
        })
    }
}

impl Filter {
    /// A check that errors (an unmet precondition) counts as failing.
    pub fn accepts(&self, a: &AlgebraTable) -> Result<bool> {
        let holds = match run_algebra_check_in(&self.check, a, Scope::default()) {
            Ok(r) => r.passed(),
            Err(Error::Check(_)) | Err(Error::Unsupported(_)) => false,
            Err(e) => return Err(e),
        };
        Ok(holds == self.expected)
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub max_size: usize,
    pub class: AlgebraClass,
    pub filters: Vec<Filter>,
    pub limit: Option<usize>,
}

impl SearchSpec {
    pub fn new(class: AlgebraClass, max_size: usize) -> Self {
        SearchSpec {
            max_size,
            class,
            filters: Vec::new(),
            limit: None,
        }
    }

    pub fn with_filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

/// Algebras of the requested class with `1 ≤ size ≤ max_size`, sorted by
/// size and then canonical key, after filters and the optional limit.
pub fn enumerate_algebras(spec: &SearchSpec) -> Result<Vec<AlgebraTable>> {
    if spec.max_size == 0 {
        return Err(Error::input("max_size must be at least 1"));
    }
    let mut out = Vec::new();
    for n in 1..=spec.max_size {
        let all = enumerate_size(spec.class, n)?;
        let keep = all
            .par_iter()
            .map(|a| -> Result<bool> {
                for f in &spec.filters {
                    if !f.accepts(a)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<Vec<bool>>>()?;
        for (a, k) in all.iter().zip(keep) {
            if k {
                out.push(a.clone());
                if spec.limit.is_some_and(|l| out.len() >= l) {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Number of algebras of each size `1..=max_size`.
pub fn counts(class: AlgebraClass, max_size: usize) -> Result<Vec<usize>> {
    (1..=max_size)
        .map(|n| Ok(enumerate_size(class, n)?.len()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTally {
    pub check: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryOutcome {
    pub report: Report,
    pub instances: usize,
    pub checks: Vec<CheckTally>,
}

/// Runs every named check on every algebra of `spec`. Unmet preconditions
/// count as failures. The first failure in (instance, check) order is
/// reported.
pub fn theorem_battery(
    spec: &SearchSpec,
    battery: &[String],
    scope: Scope,
) -> Result<BatteryOutcome> {
    const NAME: &str = "theorem_battery";
    for c in battery {
        if !is_algebra_check(c) {
            return Err(Error::input(format!("unknown check `{c}`")));
        }
    }
    let algebras = enumerate_algebras(spec)?;
    let rows = algebras
        .par_iter()
        .map(|a| {
            battery
                .iter()
                .map(|c| match run_algebra_check_in(c, a, scope) {
                    Ok(r) => Ok(r),
                    Err(Error::Check(r)) => Ok(Report::fail(
                        c.as_str(),
                        r.witness.clone().unwrap_or_default(),
                        r.to_string(),
                    )),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<Report>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut checks: Vec<CheckTally> = battery
        .iter()
        .map(|c| CheckTally {
            check: c.clone(),
            passed: 0,
            failed: 0,
        })
        .collect();
    let mut first = None;
    for (a, row) in algebras.iter().zip(&rows) {
        for (tally, r) in checks.iter_mut().zip(row) {
            if r.passed() {
                tally.passed += 1;
            } else {
                tally.failed += 1;
                if first.is_none() {
                    first = Some((a.name().to_string(), r.clone()));
                }
            }
        }
    }
    let scope_note = format!(
        "{} instances of {} up to size {}",
        algebras.len(),
        spec.class,
        spec.max_size
    );
    let report = match first {
        None => Report::pass(NAME).with_detail(scope_note),
        Some((name, r)) => Report::fail(
            NAME,
            r.witness.clone().unwrap_or_default(),
            format!("{name}: {} ({scope_note})", r),
        ),
    };
    Ok(BatteryOutcome {
        report,
        instances: algebras.len(),
        checks,
    })
}

/// Options for the resumable search.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub budget: Option<Duration>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    search: String,
    completed: Vec<String>,
    /// Emitted text of every witness found so far.
    found: Vec<String>,
}

const CHECKPOINT_VERSION: u32 = 1;
const NONDIST_SEARCH: &str = "smallest-nondistributive/1-bounded-involutive";

impl Checkpoint {
    fn load(path: &Path) -> Result<Checkpoint> {
        if !path.exists() {
            return Ok(Checkpoint {
                version: CHECKPOINT_VERSION,
                search: NONDIST_SEARCH.to_string(),
                ..Default::default()
            });
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        let cp: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        if cp.version != CHECKPOINT_VERSION || cp.search != NONDIST_SEARCH {
            return Err(Error::input(format!(
                "{}: incompatible checkpoint",
                path.display()
            )));
        }
        Ok(cp)
    }

    fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::input(e.to_string()))?;
        std::fs::write(&tmp, text).map_err(|e| Error::input(format!("{}: {e}", tmp.display())))?;
        std::fs::rename(&tmp, path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug)]
pub struct NondistOutcome {
    /// Passes when the search finished; the verdict of the claim is in
    /// `size` and `witness`.
    pub report: Report,
    pub size: Option<usize>,
    pub witness: Option<AlgebraTable>,
    /// Isomorphism classes of non-distributive algebras at `size`.
    pub count: usize,
    pub complete: bool,
    pub tasks_done: usize,
    pub tasks_total: usize,
}

/// Least size `≤ max_size` of a non-distributive 1-bounded involutive
/// semiring. Only non-distributive lattices are searched, since every
/// algebra on a distributive lattice is distributive. With a checkpoint
/// path, completed tasks and witnesses persist after every task, and a later
/// call resumes from them.
pub fn smallest_nondistributive(max_size: usize, opts: &SearchOptions) -> Result<NondistOutcome> {
    const NAME: &str = "smallest_nondistributive";
    let class = AlgebraClass::OneBoundedInvolutive;
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let state = Mutex::new(match &opts.checkpoint {
        Some(p) => Checkpoint::load(p)?,
        None => Checkpoint {
            version: CHECKPOINT_VERSION,
            search: NONDIST_SEARCH.to_string(),
            ..Default::default()
        },
    });
    let mut done_total = 0;
    let mut total = 0;
    for n in 1..=max_size {
        let lats = lattices(n);
        let ts: Vec<Task> = tasks(class, n, &lats)
            .into_iter()
            .filter(|t| !lats[t.lattice].distributive)
            .collect();
        total += ts.len();
        let completed: HashSet<String> = state
            .lock()
            .expect("checkpoint")
            .completed
            .iter()
            .cloned()
            .collect();
        let pending: Vec<Task> = ts
            .iter()
            .copied()
            .filter(|t| !completed.contains(&t.id()))
            .collect();
        done_total += ts.len() - pending.len();
        let finished = with_threads(opts.threads, || {
            pending
                .par_iter()
                .map(|&t| -> Result<bool> {
                    if deadline.is_some_and(|d| Instant::now() >= d) {
                        return Ok(false);
                    }
                    let keep =
                        |a: &AlgebraTable| is_lattice_distributive(a).is_ok_and(|r| !r.passed());
                    let r = run_task_filtered(class, t, deadline, &keep)?;
                    if !r.complete {
                        return Ok(false);
                    }
                    let mut cp = state.lock().expect("checkpoint");
                    cp.completed.push(t.id());
                    cp.found.extend(r.found.iter().map(|(_, a)| emit(a)));
                    if let Some(p) = &opts.checkpoint {
                        cp.save(p)?;
                    }
                    Ok(true)
                })
                .collect::<Result<Vec<bool>>>()
        })?;
        let newly = finished.iter().filter(|&&f| f).count();
        done_total += newly;
        if newly < pending.len() {
            // count the remaining sizes' tasks for an honest total
            for m in n + 1..=max_size {
                let l = lattices(m);
                total += tasks(class, m, &l)
                    .iter()
                    .filter(|t| !l[t.lattice].distributive)
                    .count();
            }
            return Ok(NondistOutcome {
                report: Report::fail(
                    NAME,
                    vec![n],
                    format!("budget exhausted at size {n} after {done_total} of {total} tasks"),
                ),
                size: None,
                witness: None,
                count: 0,
                complete: false,
                tasks_done: done_total,
                tasks_total: total,
            });
        }
        let cp = state.lock().expect("checkpoint");
        let mut at_n: BTreeMap<CanonicalKey, AlgebraTable> = BTreeMap::new();
        for text in &cp.found {
            let doc = parse(text)?;
            for a in doc.algebras {
                if a.size() == n {
                    at_n.entry(canonical_key(&a)).or_insert(a);
                }
            }
        }
        if let Some((_, first)) = at_n.iter().next() {
            let witness = first.clone().with_name(format!("ND{n}_1"));
            return Ok(NondistOutcome {
                report: Report::pass(NAME).with_detail(format!(
                    "smallest size {n}, {} isomorphism classes",
                    at_n.len()
                )),
                size: Some(n),
                witness: Some(witness),
                count: at_n.len(),
                complete: true,
                tasks_done: done_total,
                tasks_total: total,
            });
        }
    }
    Ok(NondistOutcome {
        report: Report::pass(NAME).with_detail(format!("none up to size {max_size}")),
        size: None,
        witness: None,
        count: 0,
        complete: true,
        tasks_done: done_total,
        tasks_total: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::is_involutive_rl;
    use crate::corpus;
    use crate::table::validate;

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn lattices_are_naturally_labelled() {
        for n in 1..=6 {
            for l in lattices(n).iter() {
                for x in 0..n {
                    for y in 0..n {
                        if l.order.leq(x, y) {
                            assert!(x <= y);
                        }
                    }
                }
                assert_eq!(l.order.bottom(), 0);
                assert_eq!(l.order.top(), n - 1);
            }
        }
    }

    fn keys(v: &[AlgebraTable]) -> HashSet<CanonicalKey> {
        v.iter().map(canonical_key).collect()
    }

    /// Every labelled join table on `0..n` with a bottom element.
    fn brute_joins(n: usize) -> Vec<Table> {
        let cells = n * n;
        let mut out = Vec::new();
        for code in 0..n.pow(cells as u32) {
            let mut c = code;
            let t: Vec<usize> = (0..cells)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect();
            let t = Table::from_cells(n, t);
            let ok = (0..n).all(|x| t.get(x, x) == x)
                && (0..n).all(|x| (0..n).all(|y| t.get(x, y) == t.get(y, x)))
                && (0..n).all(|x| {
                    (0..n).all(|y| (0..n).all(|z| t.get(t.get(x, y), z) == t.get(x, t.get(y, z))))
                });
            if ok && Semilattice::new(t.clone()).is_ok() {
                out.push(t);
            }
        }
        out
    }

    /// Definitional oracle: all tables, all units, all negation pairs.
    fn brute_class(class: AlgebraClass, n: usize) -> HashSet<CanonicalKey> {
        let mut found = HashSet::new();
        let unaries: Vec<Vec<usize>> = (0..n).map(|_| 0..n).multi_cartesian_product().collect();
        let unaries = if n == 1 { vec![vec![0]] } else { unaries };
        for join in brute_joins(n) {
            let s = Semilattice::new(join.clone()).unwrap();
            for code in 0..n.pow((n * n) as u32) {
                let mut c = code;
                let mult: Vec<usize> = (0..n * n)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect();
                for unit in 0..n {
                    let Ok(a) = AlgebraTable::from_tables(
                        "X",
                        join.clone(),
                        Table::from_cells(n, mult.clone()),
                        unit,
                    ) else {
                        continue;
                    };
                    if !validate(&a).passed() {
                        continue;
                    }
                    if class.involutive() {
                        for l in &unaries {
                            for r in &unaries {
                                let b = a
                                    .clone()
                                    .with_zero(r[unit])
                                    .unwrap()
                                    .with_negations(l.clone(), r.clone())
                                    .unwrap();
                                if class.predicate(&b).unwrap().passed() {
                                    found.insert(canonical_key(&b));
                                }
                            }
                        }
                    } else {
                        let b = a.clone().with_zero(s.bottom()).unwrap();
                        if class.predicate(&b).unwrap().passed() {
                            found.insert(canonical_key(&b));
                        }
                    }
                }
            }
        }
        found
    }

    #[test]
    fn generator_matches_definitional_oracle() {
        for class in AlgebraClass::ALL {
            for n in 1..=3 {
                let gen = enumerate_size(class, n).unwrap();
                assert_eq!(keys(&gen), brute_class(class, n), "{class} size {n}");
                assert_eq!(
                    keys(&gen).len(),
                    gen.len(),
                    "duplicate keys for {class} size {n}"
                );
            }
        }
    }

    #[test]
    fn generated_algebras_satisfy_their_class() {
        for class in AlgebraClass::ALL {
            for n in 1..=4 {
                let lats = lattices(n);
                for t in tasks(class, n, &lats) {
                    let r = run_task(class, t, None).unwrap();
                    assert_eq!(r.rejected, 0, "{class} task {}", t.id());
                }
            }
        }
    }

    #[test]
    fn small_involutive_examples() {
        let two = enumerate_size(AlgebraClass::OneBoundedInvolutive, 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(canonical_key(&two[0]), canonical_key(&corpus::b2()));
        let upto3 =
            enumerate_algebras(&SearchSpec::new(AlgebraClass::OneBoundedInvolutive, 3)).unwrap();
        assert!(upto3
            .iter()
            .any(|a| canonical_key(a) == canonical_key(&corpus::l3())));
        for a in &upto3 {
            let s = Semilattice::of_algebra(a).unwrap();
            for x in 0..a.size() {
                for y in 0..a.size() {
                    assert!(s.leq(x, y) || s.leq(y, x), "{} is not a chain", a.name());
                }
            }
        }
    }

    #[test]
    fn filters_select_a3() {
        let spec = SearchSpec::new(AlgebraClass::IdempotentSemiring, 3)
            .with_filter("is_self_injective=false".parse().unwrap());
        let out = enumerate_algebras(&spec).unwrap();
        let a3 = canonical_key(&corpus::a3());
        assert!(out.iter().any(|a| canonical_key(a) == a3));
        assert!("nosuch".parse::<Filter>().is_err());
        assert!(!"!is_commutative".parse::<Filter>().unwrap().expected);
    }

    #[test]
    fn limit_truncates() {
        let spec = SearchSpec::new(AlgebraClass::IdempotentSemiring, 4).with_limit(3);
        assert_eq!(enumerate_algebras(&spec).unwrap().len(), 3);
    }

    #[test]
    fn counts_are_monotone_and_stable() {
        let a = counts(AlgebraClass::OneBoundedIdempotent, 4).unwrap();
        let b = with_threads(Some(2), || {
            enumerate_size_uncached(AlgebraClass::OneBoundedIdempotent, 4).unwrap()
        });
        assert_eq!(a[3], b.len());
        let again = enumerate_size(AlgebraClass::OneBoundedIdempotent, 4).unwrap();
        assert_eq!(
            again.iter().map(emit).collect::<Vec<_>>(),
            b.iter().map(emit).collect::<Vec<_>>()
        );
    }

    #[test]
    fn battery_examples() {
        let spec = SearchSpec::new(AlgebraClass::InvolutiveSemiring, 4);
        let out =
            theorem_battery(&spec, &["roundtrip_check".to_string()], Scope::default()).unwrap();
        assert!(out.report.passed(), "{}", out.report);
        let empty = theorem_battery(&spec, &[], Scope::default()).unwrap();
        assert!(empty.report.passed());
        assert!(theorem_battery(&spec, &["nosuch".to_string()], Scope::default()).is_err());
    }

    #[test]
    fn no_small_nondistributive() {
        let out = smallest_nondistributive(2, &SearchOptions::default()).unwrap();
        assert!(out.complete && out.size.is_none());
    }

    #[test]
    fn involutive_rl_agrees_on_generated() {
        for a in
            enumerate_algebras(&SearchSpec::new(AlgebraClass::OneBoundedInvolutive, 4)).unwrap()
        {
            assert!(is_involutive_rl(&a).unwrap().passed(), "{}", a.name());
        }
    }
}
