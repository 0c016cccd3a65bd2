//! Ideals of join-semilattices, the semimodule `Id(A)`, Boolean-valued
//! homomorphisms and their kernels, and the map `a ↦ ↓−a`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::axioms::{is_involutive_semiring, residuals};
use crate::error::{Error, Result};
use crate::homs::{HomKind, HomMap, HomSearch};
use crate::report::Report;
use crate::semimodule::{validate_semimodule, SemimoduleTable};
use crate::table::{AlgebraTable, Semilattice, Table};

/// A subset of a finite join-semilattice that contains the least element, is
/// closed under joins and is downward closed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealSet {
    members: FixedBitSet,
}

impl IdealSet {
    pub fn from_members(size: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(size);
        for x in members {
            bits.insert(x);
        }
        IdealSet { members: bits }
    }

    /// `↓x`.
    pub fn principal(s: &Semilattice, x: usize) -> Self {
        Self::from_members(s.size(), (0..s.size()).filter(|&y| s.leq(y, x)))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn intersection(&self, other: &IdealSet) -> IdealSet {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        IdealSet { members: m }
    }

    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_ideal_of(&self, s: &Semilattice) -> bool {
        is_ideal(s, &self.members)
    }

    /// Largest member. Every ideal of a finite semilattice is principal.
    pub fn generator(&self, s: &Semilattice) -> usize {
        s.join_all(self.iter())
    }
}

fn is_ideal(s: &Semilattice, set: &FixedBitSet) -> bool {
    if !set.contains(s.bottom()) {
        return false;
    }
    for x in set.ones() {
        for y in set.ones() {
            if !set.contains(s.join(x, y)) {
                return false;
            }
        }
        if (0..s.size()).any(|y| s.leq(y, x) && !set.contains(y)) {
            return false;
        }
    }
    true
}

/// Smallest ideal containing `set`: all finite joins of elements below
/// members.
pub fn ideal_generated(s: &Semilattice, set: impl IntoIterator<Item = usize>) -> IdealSet {
    let top = s.join_all(set);
    IdealSet::principal(s, top)
}

/// All ideals, listed as `↓x` in order of `x`. In a finite join-semilattice
/// with least element an ideal is closed under the join of all its members,
/// which is its largest element, so every ideal is principal.
pub fn ideals(s: &Semilattice) -> Vec<IdealSet> {
    (0..s.size()).map(|x| IdealSet::principal(s, x)).collect()
}

/// `Id(A)` as an `A`-semimodule: element `i` is the ideal `↓i`, the join is
/// intersection (the order is reverse inclusion), the zero is the whole
/// carrier and `a·I = {x | xa ∈ I}`.
pub fn id_semimodule(a: &AlgebraTable) -> Result<SemimoduleTable> {
    a.zero_or_err()?;
    let s = Semilattice::of_algebra(a)?;
    let all = ideals(&s);
    let n = a.size();
    let index_of = |set: &IdealSet| -> Result<usize> {
        let g = set.generator(&s);
        if all[g] == *set {
            Ok(g)
        } else {
            Err(Error::Check(Box::new(Report::fail(
                "id_semimodule",
                set.iter().collect(),
                "subset is not an ideal",
            ))))
        }
    };
    let mut join = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            join.push(index_of(&all[i].intersection(&all[j]))?);
        }
    }
    let zero = index_of(&IdealSet::from_members(n, 0..n))?;
    let mut action = Vec::with_capacity(n * n);
    for b in 0..n {
        for ideal in &all {
            let scaled =
                IdealSet::from_members(n, (0..n).filter(|&x| ideal.contains(a.mult(x, b))));
            action.push(index_of(&scaled)?);
        }
    }
    let display = (0..n).map(|x| format!("↓{}", a.element_name(x))).collect();
    Ok(SemimoduleTable::from_parts(
        format!("Id({})", a.name()),
        Arc::new(a.clone()),
        Table::from_cells(n, join),
        zero,
        action,
        Some(display),
    ))
}

/// The two-element semilattice `0 < 1`.
pub fn boolean_semilattice() -> Semilattice {
    Semilattice::new(Table::from_fn(2, |x, y| x | y)).expect("B is a semilattice")
}

/// Every join- and zero-preserving map from `s` into the two-element
/// Boolean semilattice.
pub fn boolean_homs(s: &Semilattice) -> Vec<HomMap> {
    let b = boolean_semilattice();
    HomSearch::semilattices(s, &b)
        .collect()
        .into_iter()
        .map(|map| HomMap {
            dom: "A".into(),
            cod: "B".into(),
            kind: HomKind::Semilattice,
            map,
            cod_zero: 0,
        })
        .collect()
}

/// `{x | f(x) = 0}`.
pub fn ker(f: &HomMap) -> IdealSet {
    IdealSet::from_members(
        f.map.len(),
        f.map
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == f.cod_zero)
            .map(|(x, _)| x),
    )
}

/// `Hom_B(A, B)` as an `A`-semimodule with pointwise join and
/// `(a·f)(t) = f(ta)`, together with the list of maps indexing its carrier.
pub fn hom_b_semimodule(a: &AlgebraTable) -> Result<(SemimoduleTable, Vec<HomMap>)> {
    let s = Semilattice::of_algebra(a)?;
    let homs = boolean_homs(&s);
    let n = a.size();
    let index = |map: &[usize]| -> Result<usize> {
        homs.iter().position(|h| h.map == map).ok_or_else(|| {
            Error::Check(Box::new(Report::fail(
                "hom_b_semimodule",
                map.to_vec(),
                "Hom_B(A, B) is not closed under the operations",
            )))
        })
    };
    let k = homs.len();
    let mut join = Vec::with_capacity(k * k);
    for f in &homs {
        for g in &homs {
            let m: Vec<usize> = (0..n).map(|t| f.map[t] | g.map[t]).collect();
            join.push(index(&m)?);
        }
    }
    let zero = index(&vec![0; n])?;
    let mut action = Vec::with_capacity(n * k);
    for b in 0..n {
        for f in &homs {
            let m: Vec<usize> = (0..n).map(|t| f.map[a.mult(t, b)]).collect();
            action.push(index(&m)?);
        }
    }
    let module = SemimoduleTable::from_parts(
        format!("Hom_B({})", a.name()),
        Arc::new(a.clone()),
        Table::from_cells(k, join),
        zero,
        action,
        None,
    );
    Ok((module, homs))
}

/// Checks that `Ker` is an isomorphism of `A`-semimodules from `Hom_B(A, B)`
/// onto `Id(A)`.
pub fn hom_id_iso_check(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "hom_id_iso_check";
    let (hom_b, homs) = hom_b_semimodule(a)?;
    let valid = validate_semimodule(&hom_b)?;
    if !valid.passed() {
        return Ok(valid.renamed(NAME));
    }
    let id = id_semimodule(a)?;
    let s = Semilattice::of_algebra(a)?;
    let all = ideals(&s);
    let mut map = Vec::with_capacity(homs.len());
    for (i, f) in homs.iter().enumerate() {
        let k = ker(f);
        match all.iter().position(|j| *j == k) {
            Some(p) => map.push(p),
            None => return Ok(Report::fail(NAME, vec![i], "kernel is not an ideal")),
        }
    }
    if homs.len() != all.len() || !is_bijection(&map, all.len()) {
        return Ok(Report::fail(NAME, map, "Ker is not a bijection onto Id(A)"));
    }
    if map[hom_b.zero()] != id.zero() {
        return Ok(Report::fail(NAME, vec![hom_b.zero()], "Ker(0) ≠ A"));
    }
    for f in 0..homs.len() {
        for g in 0..homs.len() {
            if map[hom_b.join(f, g)] != id.join(map[f], map[g]) {
                return Ok(Report::fail(
                    NAME,
                    vec![f, g],
                    "Ker(f ∨ g) ≠ Ker(f) ∩ Ker(g)",
                ));
            }
        }
    }
    for b in 0..a.size() {
        for f in 0..homs.len() {
            if map[hom_b.act(b, f)] != id.act(b, map[f]) {
                return Ok(Report::fail(NAME, vec![b, f], "Ker(a·f) ≠ a·Ker(f)"));
            }
        }
    }
    Ok(Report::pass(NAME))
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    let mut hit = vec![false; size];
    for &v in map {
        if v >= size || hit[v] {
            return false;
        }
        hit[v] = true;
    }
    map.len() == size
}

/// Both sides of the executable biconditional behind [`phi_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiOutcome {
    pub report: Report,
    /// `Φ(a) = ↓−a` is an isomorphism `A → Id(A)` of `A`-semimodules.
    pub phi_is_iso: bool,
    /// `A` with `∼x = x\0`, `−x = 0/x` is an involutive semiring.
    pub involutive: bool,
}

/// For a finite 1-bounded pointed residuated join-semilattice with `0` the
/// bottom, compares "`Φ(a) = ↓−a` is an `A`-isomorphism onto `Id(A)`" with
/// "`A` is an involutive semiring"; passes iff the verdicts agree.
pub fn phi_check(a: &AlgebraTable) -> Result<PhiOutcome> {
    const NAME: &str = "phi_check";
    let zero = a.zero_or_err()?;
    let s = Semilattice::of_algebra(a)?;
    if zero != s.bottom() || a.one() != s.top() {
        return Err(Error::unsupported(format!(
            "{} is not 1-bounded with zero at the bottom",
            a.name()
        )));
    }
    let res = residuals(a)?;
    let n = a.size();
    let minus: Vec<usize> = (0..n).map(|x| res.minus(x, zero)).collect();
    let tilde: Vec<usize> = (0..n).map(|x| res.tilde(x, zero)).collect();

    let id = id_semimodule(a)?;
    let all = ideals(&s);
    let phi: Vec<usize> = (0..n)
        .map(|x| {
            let down = IdealSet::principal(&s, minus[x]);
            all.iter()
                .position(|j| *j == down)
                .expect("principal ideals are listed")
        })
        .collect();
    let phi_is_iso = is_bijection(&phi, id.size())
        && phi[zero] == id.zero()
        && (0..n).all(|x| (0..n).all(|y| phi[a.join(x, y)] == id.join(phi[x], phi[y])))
        && (0..n).all(|b| (0..n).all(|x| phi[a.mult(b, x)] == id.act(b, phi[x])));

    let with_negs = a.clone().with_negations(tilde, minus)?;
    let involutive = is_involutive_semiring(&with_negs)?.passed();

    let report = if phi_is_iso == involutive {
        Report::pass(NAME).with_detail(format!("phi iso = {phi_is_iso}, involutive = {involutive}"))
    } else {
        Report::fail(
            NAME,
            vec![],
            format!("phi iso = {phi_is_iso} but involutive = {involutive}"),
        )
    };
    Ok(PhiOutcome {
        report,
        phi_is_iso,
        involutive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homs::find_isomorphism;
    use crate::semimodule::regular;

    /// Oracle: every subset of the carrier filtered by the ideal conditions.
    fn brute_ideals(s: &Semilattice) -> Vec<IdealSet> {
        let n = s.size();
        let mut out: Vec<IdealSet> = (0u32..(1 << n))
            .map(|mask| IdealSet::from_members(n, (0..n).filter(|&x| mask >> x & 1 == 1)))
            .filter(|set| set.is_ideal_of(s))
            .collect();
        out.sort();
        out
    }

    fn sorted(mut v: Vec<IdealSet>) -> Vec<IdealSet> {
        v.sort();
        v
    }

    #[test]
    fn ideal_counts() {
        let a3 = Semilattice::of_algebra(&corpus::a3()).unwrap();
        let got = ideals(&a3);
        assert_eq!(got.len(), 3);
        assert_eq!(got[0].iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(got[1].iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(got[2].len(), 3);
        assert_eq!(
            ideals(&Semilattice::of_algebra(&corpus::c4()).unwrap()).len(),
            4
        );
        let bb = Semilattice::of_algebra(&corpus::b2_squared()).unwrap();
        assert_eq!(ideals(&bb).len(), 4);
    }

    #[test]
    fn principal_listing_matches_subset_search() {
        for a in [
            corpus::b2(),
            corpus::a3(),
            corpus::c4(),
            corpus::l3(),
            corpus::b2_squared(),
            corpus::m3(),
        ] {
            let s = Semilattice::of_algebra(&a).unwrap();
            assert_eq!(sorted(ideals(&s)), brute_ideals(&s), "{}", a.name());
        }
    }

    #[test]
    fn downsets_of_the_square_are_not_all_ideals() {
        // five downsets of 2×2, but {0, p, q} is not join-closed
        let s = Semilattice::of_algebra(&corpus::b2_squared()).unwrap();
        let n = s.size();
        let downsets = (0u32..(1 << n))
            .filter(|mask| {
                (0..n).all(|x| {
                    mask >> x & 1 == 0 || (0..n).all(|y| !s.leq(y, x) || mask >> y & 1 == 1)
                })
            })
            .filter(|mask| mask & 1 << s.bottom() != 0)
            .count();
        assert_eq!(downsets, 5);
        assert_eq!(brute_ideals(&s).len(), 4);
    }

    #[test]
    fn id_semimodules() {
        let a3 = corpus::a3();
        let id = id_semimodule(&a3).unwrap();
        assert_eq!(id.size(), 3);
        assert!(validate_semimodule(&id).unwrap().passed());
        assert_eq!(id.zero(), 2);
        assert_eq!(id.act(1, 0), 0);

        let b2 = corpus::b2();
        let idb = id_semimodule(&b2).unwrap();
        assert!(find_isomorphism(&regular(&b2).unwrap(), &idb)
            .unwrap()
            .is_some());

        let c4 = corpus::c4();
        let idc = id_semimodule(&c4).unwrap();
        assert!(validate_semimodule(&idc).unwrap().passed());
        assert!(find_isomorphism(&regular(&c4).unwrap(), &idc)
            .unwrap()
            .is_some());
    }

    #[test]
    fn boolean_homs_and_kernels() {
        let a3 = Semilattice::of_algebra(&corpus::a3()).unwrap();
        let homs = boolean_homs(&a3);
        assert_eq!(homs.len(), 3);
        assert!(homs.iter().any(|h| h.map.iter().all(|&v| v == 0)));
        let mut kernels: Vec<IdealSet> = homs.iter().map(ker).collect();
        kernels.sort();
        assert_eq!(kernels, sorted(ideals(&a3)));

        let b2 = Semilattice::of_algebra(&corpus::b2()).unwrap();
        assert_eq!(boolean_homs(&b2).len(), 2);
        let identity = HomMap {
            dom: "B".into(),
            cod: "B".into(),
            kind: HomKind::Semilattice,
            map: vec![0, 1],
            cod_zero: 0,
        };
        assert_eq!(ker(&identity).iter().collect::<Vec<_>>(), vec![0]);
        let constant = HomMap {
            map: vec![0, 0],
            ..identity
        };
        assert_eq!(ker(&constant).len(), 2);
    }

    #[test]
    fn hom_id_isomorphisms() {
        for a in [corpus::a3(), corpus::c4(), corpus::b2()] {
            assert!(hom_id_iso_check(&a).unwrap().passed(), "{}", a.name());
        }
    }

    #[test]
    fn phi_biconditional() {
        let c4 = phi_check(&corpus::c4()).unwrap();
        assert!(c4.report.passed() && c4.phi_is_iso && c4.involutive);
        let a3 = phi_check(&corpus::a3()).unwrap();
        assert!(a3.report.passed() && !a3.phi_is_iso && !a3.involutive);
        let b2 = phi_check(&corpus::b2()).unwrap();
        assert!(b2.report.passed() && b2.phi_is_iso && b2.involutive);
    }
}
