//! Homomorphism search between finite semilattices and semimodules.
//!
//! A homomorphism is fixed by the images of a generating sequence of its
//! domain. The search assigns those images one at a time; after every
//! assignment it closes the partial map under joins (and the action, for
//! linear maps), rejecting the branch as soon as an element is reached two
//! ways with different images. Fixing the image of the first generator
//! through a constraint restarts the search at any prefix, which is how the
//! work is partitioned.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semimodule::{generating_set, SemimoduleTable};
use crate::table::{Semilattice, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomKind {
    /// Preserves joins and zero.
    Semilattice,
    /// Additionally commutes with the semiring action.
    Linear,
}

impl std::str::FromStr for HomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semilattice" => Ok(HomKind::Semilattice),
            "linear" | "a-hom" | "module" => Ok(HomKind::Linear),
            other => Err(Error::input(format!("unknown hom kind `{other}`"))),
        }
    }
}

/// A total map between two finite structures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomMap {
    pub dom: String,
    pub cod: String,
    pub kind: HomKind,
    pub map: Vec<usize>,
    /// Zero of the codomain, used for kernels.
    pub cod_zero: usize,
}

impl HomMap {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }
}

/// Join table, zero and optional action of one side of a search.
#[derive(Clone, Copy)]
struct Side<'a> {
    join: &'a Table,
    zero: usize,
    action: Option<&'a [usize]>,
}

impl<'a> Side<'a> {
    fn of_module(m: &'a SemimoduleTable, linear: bool) -> Self {
        Side {
            join: m.join_table(),
            zero: m.zero(),
            action: linear.then(|| m.action_cells()),
        }
    }

    fn of_semilattice(s: &'a Semilattice) -> Self {
        Side {
            join: s.join_table(),
            zero: s.bottom(),
            action: None,
        }
    }

    fn size(&self) -> usize {
        self.join.size()
    }

    fn act(&self, s: usize, x: usize) -> usize {
        self.action.expect("linear side")[s * self.size() + x]
    }
}

/// Backtracking enumeration of homomorphisms extending a partial map.
pub struct HomSearch<'a> {
    dom: Side<'a>,
    cod: Side<'a>,
    scalars: usize,
    gens: Vec<usize>,
    constraints: Vec<(usize, usize)>,
}

impl<'a> HomSearch<'a> {
    /// Homomorphisms between two semimodules over the same semiring.
    pub fn modules(
        dom: &'a SemimoduleTable,
        cod: &'a SemimoduleTable,
        kind: HomKind,
    ) -> Result<Self> {
        let linear = kind == HomKind::Linear;
        if linear && !dom.same_over(cod) {
            return Err(Error::input(format!(
                "{} and {} are over different semirings",
                dom.name(),
                cod.name()
            )));
        }
        let gens = if linear {
            generating_set(dom)
        } else {
            dom.semilattice()?.join_irreducibles()
        };
        Ok(HomSearch {
            dom: Side::of_module(dom, linear),
            cod: Side::of_module(cod, linear),
            scalars: if linear { dom.over().size() } else { 0 },
            gens,
            constraints: Vec::new(),
        })
    }

    /// Join- and zero-preserving maps between two semilattices.
    pub fn semilattices(dom: &'a Semilattice, cod: &'a Semilattice) -> Self {
        HomSearch {
            dom: Side::of_semilattice(dom),
            cod: Side::of_semilattice(cod),
            scalars: 0,
            gens: dom.join_irreducibles(),
            constraints: Vec::new(),
        }
    }

    /// Requires `x ↦ y`.
    pub fn constrain(mut self, x: usize, y: usize) -> Self {
        self.constraints.push((x, y));
        self
    }

    pub fn constrain_all(mut self, pairs: &[(usize, usize)]) -> Self {
        self.constraints.extend_from_slice(pairs);
        self
    }

    /// The generating sequence of the domain the search branches on.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Calls `visit` on every homomorphism in a fixed order until it breaks.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
        let n = self.dom.size();
        if self
            .constraints
            .iter()
            .any(|&(x, y)| x >= n || y >= self.cod.size())
        {
            return;
        }
        let mut img = vec![None; n];
        let mut seeds = vec![(self.dom.zero, self.cod.zero)];
        seeds.extend_from_slice(&self.constraints);
        if !self.assign_all(&mut img, &seeds) {
            return;
        }
        let _ = self.descend(0, img, &mut visit);
    }

    pub fn collect(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.for_each(|m| {
            out = Some(m.to_vec());
            ControlFlow::Break(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut k = 0;
        self.for_each(|_| {
            k += 1;
            ControlFlow::Continue(())
        });
        k
    }

    fn descend(
        &self,
        level: usize,
        img: Vec<Option<usize>>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(&g) = self.gens.get(level) else {
            let map: Option<Vec<usize>> = img.into_iter().collect();
            // generators always reach the whole domain; anything else is a bug
            let map = map.expect("generating sequence does not generate the domain");
            if self.is_hom(&map) {
                return visit(&map);
            }
            return ControlFlow::Continue(());
        };
        if img[g].is_some() {
            return self.descend(level + 1, img, visit);
        }
        for v in 0..self.cod.size() {
            let mut next = img.clone();
            if self.assign_all(&mut next, &[(g, v)]) {
                self.descend(level + 1, next, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Adds the pairs to the partial map and closes it; false on conflict.
    fn assign_all(&self, img: &mut [Option<usize>], pairs: &[(usize, usize)]) -> bool {
        let mut queue = Vec::new();
        for &(x, v) in pairs {
            if !set(img, &mut queue, x, v) {
                return false;
            }
        }
        while let Some(e) = queue.pop() {
            let ve = img[e].expect("queued elements are assigned");
            for f in 0..img.len() {
                if let Some(vf) = img[f] {
                    let j = self.dom.join.get(e, f);
                    let vj = self.cod.join.get(ve, vf);
                    if !set(img, &mut queue, j, vj) {
                        return false;
                    }
                }
            }
            for s in 0..self.scalars {
                if !set(img, &mut queue, self.dom.act(s, e), self.cod.act(s, ve)) {
                    return false;
                }
            }
        }
        true
    }

    fn is_hom(&self, map: &[usize]) -> bool {
        let n = self.dom.size();
        if map[self.dom.zero] != self.cod.zero {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                if map[self.dom.join.get(x, y)] != self.cod.join.get(map[x], map[y]) {
                    return false;
                }
            }
            for s in 0..self.scalars {
                if map[self.dom.act(s, x)] != self.cod.act(s, map[x]) {
                    return false;
                }
            }
        }
        true
    }
}

fn set(img: &mut [Option<usize>], queue: &mut Vec<usize>, x: usize, v: usize) -> bool {
    match img[x] {
        Some(w) => w == v,
        None => {
            img[x] = Some(v);
            queue.push(x);
            true
        }
    }
}

/// All homomorphisms `dom → cod` of the given kind that extend
/// `constraints`, in search order.
pub fn enumerate_homs(
    dom: &SemimoduleTable,
    cod: &SemimoduleTable,
    kind: HomKind,
    constraints: &[(usize, usize)],
) -> Result<Vec<HomMap>> {
    let search = HomSearch::modules(dom, cod, kind)?.constrain_all(constraints);
    Ok(search
        .collect()
        .into_iter()
        .map(|map| HomMap {
            dom: dom.name().to_string(),
            cod: cod.name().to_string(),
            kind,
            map,
            cod_zero: cod.zero(),
        })
        .collect())
}

/// Whether `map` is a homomorphism of the given kind.
pub fn is_hom(dom: &SemimoduleTable, cod: &SemimoduleTable, kind: HomKind, map: &[usize]) -> bool {
    if map.len() != dom.size() || map.iter().any(|&v| v >= cod.size()) {
        return false;
    }
    if map[dom.zero()] != cod.zero() {
        return false;
    }
    for x in 0..dom.size() {
        for y in 0..dom.size() {
            if map[dom.join(x, y)] != cod.join(map[x], map[y]) {
                return false;
            }
        }
    }
    if kind == HomKind::Linear {
        if !dom.same_over(cod) {
            return false;
        }
        for s in 0..dom.over().size() {
            for x in 0..dom.size() {
                if map[dom.act(s, x)] != cod.act(s, map[x]) {
                    return false;
                }
            }
        }
    }
    true
}

/// An A-isomorphism `dom → cod`, found by searching bijective homs and
/// checking that the inverse is a hom too.
pub fn find_isomorphism(
    dom: &SemimoduleTable,
    cod: &SemimoduleTable,
) -> Result<Option<Vec<usize>>> {
    if dom.size() != cod.size() {
        return Ok(None);
    }
    let search = HomSearch::modules(dom, cod, HomKind::Linear)?;
    let mut found = None;
    search.for_each(|map| {
        let mut inverse = vec![usize::MAX; cod.size()];
        for (x, &y) in map.iter().enumerate() {
            if inverse[y] != usize::MAX {
                return ControlFlow::Continue(());
            }
            inverse[y] = x;
        }
        if is_hom(cod, dom, HomKind::Linear, &inverse) {
            found = Some(map.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semimodule::regular;
    use itertools::Itertools;

    /// Independent oracle: every total map, filtered by the hom laws.
    fn brute_force(dom: &SemimoduleTable, cod: &SemimoduleTable, kind: HomKind) -> Vec<Vec<usize>> {
        (0..dom.size())
            .map(|_| 0..cod.size())
            .multi_cartesian_product()
            .filter(|m| is_hom(dom, cod, kind, m))
            .collect()
    }

    #[test]
    fn endomorphisms_of_regular_a3() {
        let reg = regular(&corpus::a3()).unwrap();
        let homs = enumerate_homs(&reg, &reg, HomKind::Linear, &[]).unwrap();
        assert_eq!(homs.len(), 3);
        assert!(homs.iter().any(|h| h.map == vec![0, 1, 2]));
        let mut got: Vec<Vec<usize>> = homs.into_iter().map(|h| h.map).collect();
        got.sort();
        let mut want = brute_force(&reg, &reg, HomKind::Linear);
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn constrained_endomorphism() {
        let reg = regular(&corpus::a3()).unwrap();
        let homs = enumerate_homs(&reg, &reg, HomKind::Linear, &[(2, 0)]).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map, vec![0, 0, 0]);
    }

    #[test]
    fn search_matches_brute_force() {
        let mods: Vec<SemimoduleTable> = [corpus::b2(), corpus::a3(), corpus::c4(), corpus::l3()]
            .iter()
            .map(|a| regular(a).unwrap())
            .collect();
        for m in &mods {
            for kind in [HomKind::Semilattice, HomKind::Linear] {
                let mut got = HomSearch::modules(m, m, kind).unwrap().collect();
                got.sort();
                let mut want = brute_force(m, m, kind);
                want.sort();
                assert_eq!(got, want, "{} {:?}", m.name(), kind);
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let c4 = corpus::c4();
        let ca = crate::semimodule::cyclic(&c4, 1).unwrap();
        let cb = crate::semimodule::cyclic(&c4, 2).unwrap();
        assert!(find_isomorphism(&ca, &cb).unwrap().is_none());
        assert!(find_isomorphism(&cb, &cb).unwrap().is_some());
    }
}
