//! Injectivity, projectivity and related semimodule properties.
//!
//! Both retract searches have the same shape. The outer object is a finite
//! power `F^k` of a small semimodule `F`, and a finite power is also a
//! coproduct, so maps into and out of it split into coordinate maps:
//! `s = (s_1, …, s_k)` with `s_i: M → F` and `r(t) = ⋁ r_i(t_i)` with
//! `r_i: F → M`. One side is fixed by the construction, and the other is
//! chosen coordinate by coordinate among homomorphisms whose contribution
//! stays below the target on every generator. Those admissible maps are
//! closed under pointwise join, so each coordinate has a greatest admissible
//! choice, and a retraction exists iff the greatest choices reach the
//! target on every generator.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homs::{enumerate_homs, is_hom, HomKind, HomMap};
use crate::ideals::{id_semimodule, ideal_generated, ideals, IdealSet};
use crate::report::Report;
use crate::semimodule::{generating_set, regular, validate_semimodule, SemimoduleTable};
use crate::table::{AlgebraTable, Semilattice};

/// `M` as a retract of `factor^k`: `⋁_i retract_i(section_i(x)) = x`.
#[derive(Clone, Debug, Serialize)]
pub struct Retraction {
    #[serde(skip)]
    pub factor: SemimoduleTable,
    pub section: Vec<HomMap>,
    pub retract: Vec<HomMap>,
}

impl Retraction {
    pub fn exponent(&self) -> usize {
        self.section.len()
    }

    /// `r(s(x))`.
    pub fn round_trip(&self, m: &SemimoduleTable, x: usize) -> usize {
        m.join_all(
            self.section
                .iter()
                .zip(&self.retract)
                .map(|(s, r)| r.apply(s.apply(x))),
        )
    }

    /// Re-checks the certificate from scratch: every coordinate map is an
    /// `A`-homomorphism and `r ∘ s` is the identity on `m`.
    pub fn verify(&self, m: &SemimoduleTable) -> Report {
        const NAME: &str = "retraction";
        for (i, s) in self.section.iter().enumerate() {
            if !is_hom(m, &self.factor, HomKind::Linear, &s.map) {
                return Report::fail(NAME, vec![i], "section coordinate is not an A-hom");
            }
        }
        for (i, r) in self.retract.iter().enumerate() {
            if !is_hom(&self.factor, m, HomKind::Linear, &r.map) {
                return Report::fail(NAME, vec![i], "retract coordinate is not an A-hom");
            }
        }
        match (0..m.size()).find(|&x| self.round_trip(m, x) != x) {
            Some(x) => Report::fail(NAME, vec![x], "r ∘ s is not the identity"),
            None => Report::pass(NAME),
        }
    }
}

/// Verdict of a decision procedure plus its certificate, when one exists.
#[derive(Clone, Debug)]
pub struct Decision {
    pub holds: bool,
    pub report: Report,
    pub retraction: Option<Retraction>,
}

fn hom_map(dom: &SemimoduleTable, cod: &SemimoduleTable, map: Vec<usize>) -> HomMap {
    HomMap {
        dom: dom.name().to_string(),
        cod: cod.name().to_string(),
        kind: HomKind::Linear,
        map,
        cod_zero: cod.zero(),
    }
}

/// Pointwise join of homomorphisms into `cod`, starting from the zero map.
fn join_maps<'a>(
    cod: &SemimoduleTable,
    size: usize,
    maps: impl Iterator<Item = &'a HomMap>,
) -> Vec<usize> {
    let mut acc = vec![cod.zero(); size];
    for h in maps {
        for (a, &v) in acc.iter_mut().zip(&h.map) {
            *a = cod.join(*a, v);
        }
    }
    acc
}

/// Projectivity via the canonical surjection `π: A^k → M`, `π(t) = ⋁ t_i·g_i`
/// over a generating set `g`. `M` is projective iff `π` splits.
pub fn is_projective(m: &SemimoduleTable) -> Result<Decision> {
    is_projective_with_generators(m, &generating_set(m))
}

pub fn is_projective_with_generators(m: &SemimoduleTable, gens: &[usize]) -> Result<Decision> {
    const NAME: &str = "is_projective";
    require_semimodule(m)?;
    let a = m.over().clone();
    let reg = regular(&a)?;
    let dual = enumerate_homs(m, &reg, HomKind::Linear, &[])?;

    let mut section = Vec::with_capacity(gens.len());
    let mut retract = Vec::with_capacity(gens.len());
    for &gi in gens {
        // s_i is admissible when s_i(g_j)·g_i ≤ g_j for every generator g_j
        let admissible = dual
            .iter()
            .filter(|s| gens.iter().all(|&gj| m.leq(m.act(s.map[gj], gi), gj)));
        let best = join_maps(&reg, m.size(), admissible);
        section.push(hom_map(m, &reg, best));
        let proj: Vec<usize> = (0..a.size()).map(|t| m.act(t, gi)).collect();
        retract.push(hom_map(&reg, m, proj));
    }
    let retraction = Retraction {
        factor: reg,
        section,
        retract,
    };
    let missed = gens
        .iter()
        .copied()
        .find(|&g| retraction.round_trip(m, g) != g);
    decided(NAME, m, missed, retraction, gens.len())
}

/// Decisions assume a semimodule over an idempotent semiring whose zero is an
/// absorbing bottom; anything else is refused rather than misjudged.
fn require_semimodule(m: &SemimoduleTable) -> Result<()> {
    let r = validate_semimodule(m)?;
    if r.passed() {
        Ok(())
    } else {
        Err(r
            .renamed(format!("precondition validate_semimodule({})", m.name()))
            .into())
    }
}

/// The embedding `ε: M → Id(A)^{Id(M)}`, `ε(x)_I = {c ∈ A | c·x ∈ I}`, one
/// coordinate per ideal `I = ↓y` of `M`.
pub fn injective_embedding(m: &SemimoduleTable) -> Result<(SemimoduleTable, Vec<HomMap>)> {
    require_semimodule(m)?;
    let a = m.over().clone();
    let id = id_semimodule(&a)?;
    let sa = Semilattice::of_algebra(&a)?;
    let sm = m.semilattice()?;
    let a_ideals = ideals(&sa);
    let mut coords = Vec::with_capacity(m.size());
    for ideal in ideals(&sm) {
        let mut map = Vec::with_capacity(m.size());
        for x in 0..m.size() {
            let pre = IdealSet::from_members(
                a.size(),
                (0..a.size()).filter(|&c| ideal.contains(m.act(c, x))),
            );
            let idx = a_ideals.iter().position(|j| *j == pre).ok_or_else(|| {
                Error::Check(Box::new(Report::fail(
                    "injective_embedding",
                    vec![x],
                    "ε(x)_I is not an ideal of A",
                )))
            })?;
            map.push(idx);
        }
        coords.push(hom_map(m, &id, map));
    }
    Ok((id, coords))
}

/// Checks the embedding is an injective `A`-homomorphism, coordinate by
/// coordinate.
pub fn check_embedding(m: &SemimoduleTable, id: &SemimoduleTable, coords: &[HomMap]) -> Report {
    const NAME: &str = "injective_embedding";
    for (i, c) in coords.iter().enumerate() {
        if !is_hom(m, id, HomKind::Linear, &c.map) {
            return Report::fail(NAME, vec![i], "coordinate is not an A-hom");
        }
    }
    for x in 0..m.size() {
        for y in 0..x {
            if coords.iter().all(|c| c.map[x] == c.map[y]) {
                return Report::fail(NAME, vec![y, x], "ε does not separate the pair");
            }
        }
    }
    Report::pass(NAME)
}

/// Injectivity via the embedding `ε: M → Id(A)^{Id(M)}`. A retract of a
/// power of `Id(A)` is injective, and when `M` is injective the identity
/// extends along `ε`, so `M` is injective iff `ε` has a retraction.
pub fn is_injective(m: &SemimoduleTable) -> Result<Decision> {
    const NAME: &str = "is_injective";
    let (id, section) = injective_embedding(m)?;
    let emb = check_embedding(m, &id, &section);
    if !emb.passed() {
        return Err(emb.into());
    }
    let back = enumerate_homs(&id, m, HomKind::Linear, &[])?;
    let gens = generating_set(m);
    let retract: Vec<HomMap> = section
        .iter()
        .map(|eps| {
            // r is admissible when r(ε(g)_I) ≤ g for every generator g
            let admissible = back
                .iter()
                .filter(|r| gens.iter().all(|&g| m.leq(r.map[eps.map[g]], g)));
            hom_map(&id, m, join_maps(m, id.size(), admissible))
        })
        .collect();
    let retraction = Retraction {
        factor: id,
        section,
        retract,
    };
    let missed = gens
        .iter()
        .copied()
        .find(|&g| retraction.round_trip(m, g) != g);
    decided(NAME, m, missed, retraction, m.size())
}

fn decided(
    name: &str,
    m: &SemimoduleTable,
    missed: Option<usize>,
    retraction: Retraction,
    exponent: usize,
) -> Result<Decision> {
    match missed {
        Some(g) => Ok(Decision {
            holds: false,
            report: Report::fail(
                name,
                vec![g],
                format!(
                    "no retraction onto {} from a power of degree {exponent}",
                    m.name()
                ),
            ),
            retraction: None,
        }),
        None => {
            let check = retraction.verify(m);
            if !check.passed() {
                return Err(check.into());
            }
            Ok(Decision {
                holds: true,
                report: Report::pass(name),
                retraction: Some(retraction),
            })
        }
    }
}

/// The regular semimodule is injective.
pub fn is_self_injective(a: &AlgebraTable) -> Result<Decision> {
    let mut d = is_injective(&regular(a)?)?;
    d.report = d.report.renamed("is_self_injective");
    Ok(d)
}

/// `m ∨ ⋀S = ⋀{m ∨ s | s ∈ S}` for every element `m` and subset `S`, with
/// `⋀∅` the top. Carriers above 20 elements are checked on pairs, which is
/// equivalent for finite lattices because every finite meet is an iterated
/// binary meet.
pub fn is_mid_complete(s: &Semilattice) -> Report {
    const NAME: &str = "is_mid_complete";
    let n = s.size();
    if n > 20 {
        for m in 0..n {
            for x in 0..n {
                for y in 0..n {
                    if s.join(m, s.meet(x, y)) != s.meet(s.join(m, x), s.join(m, y)) {
                        return Report::fail(
                            NAME,
                            vec![m, x, y],
                            "m ∨ (x ∧ y) ≠ (m ∨ x) ∧ (m ∨ y)",
                        );
                    }
                }
            }
        }
        return Report::pass(NAME);
    }
    let full = 1usize << n;
    let mut meet_of = vec![s.top(); full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        meet_of[mask] = s.meet(meet_of[mask & (mask - 1)], low);
    }
    let mut dist = vec![s.top(); full];
    for m in 0..n {
        for mask in 1..full {
            let low = mask.trailing_zeros() as usize;
            dist[mask] = s.meet(dist[mask & (mask - 1)], s.join(m, low));
        }
        for mask in 0..full {
            if s.join(m, meet_of[mask]) != dist[mask] {
                let mut witness = vec![m];
                witness.extend((0..n).filter(|&i| mask >> i & 1 == 1));
                return Report::fail(NAME, witness, "m ∨ ⋀S ≠ ⋀(m ∨ S)");
            }
        }
    }
    Report::pass(NAME)
}

/// `a ≤ b₀ ∨ b₁` implies `a = a₀ ∨ a₁` for some `a₀ ≤ b₀`, `a₁ ≤ b₁`.
pub fn is_join_distributive(s: &Semilattice) -> Report {
    const NAME: &str = "is_join_distributive";
    let n = s.size();
    for a in 0..n {
        for b0 in 0..n {
            for b1 in 0..n {
                if !s.leq(a, s.join(b0, b1)) {
                    continue;
                }
                let split = (0..n)
                    .filter(|&a0| s.leq(a0, b0))
                    .any(|a0| (0..n).any(|a1| s.leq(a1, b1) && s.join(a0, a1) == a));
                if !split {
                    return Report::fail(NAME, vec![a, b0, b1], "a ≤ b₀ ∨ b₁ does not split");
                }
            }
        }
    }
    Report::pass(NAME)
}

/// Every nonzero scalar moves some element off zero.
pub fn is_faithful(m: &SemimoduleTable) -> Result<Report> {
    const NAME: &str = "is_faithful";
    let a = m.over();
    let zero = a.zero_or_err()?;
    for s in (0..a.size()).filter(|&s| s != zero) {
        if (0..m.size()).all(|x| m.act(s, x) == m.zero()) {
            return Ok(Report::fail(NAME, vec![s], "a ≠ 0 acts as zero"));
        }
    }
    Ok(Report::pass(NAME))
}

/// Equal actions of `a` and `b` force equal actions of `−a, −b` and of
/// `∼a, ∼b`.
pub fn is_strong(m: &SemimoduleTable) -> Result<Report> {
    const NAME: &str = "is_strong";
    let a = m.over();
    let (lneg, rneg) = a.negations_or_err()?;
    let same = |s: usize, t: usize| (0..m.size()).all(|x| m.act(s, x) == m.act(t, x));
    for s in 0..a.size() {
        for t in 0..a.size() {
            if same(s, t) && !(same(rneg[s], rneg[t]) && same(lneg[s], lneg[t])) {
                return Ok(Report::fail(
                    NAME,
                    vec![s, t],
                    "a, b act alike but their negations differ",
                ));
            }
        }
    }
    Ok(Report::pass(NAME))
}

/// Ideals under reverse inclusion: for every family the intersection is an
/// ideal and the join; when the semilattice is join-distributive, the meet
/// of a family is the set of finite joins of members and
/// `J ∩ ⋀ J_i = ⋀ (J ∩ J_i)`. The empty family is included, with `⋀∅ = {0}`.
pub fn ideal_lattice_check(s: &Semilattice) -> Report {
    const NAME: &str = "ideal_lattice";
    let all = ideals(s);
    let k = all.len();
    if k > 20 {
        return Report::fail(NAME, vec![k], "too many ideals for family enumeration");
    }
    let jd = is_join_distributive(s).passed();
    let n = s.size();
    let everything = IdealSet::from_members(n, 0..n);
    for mask in 0usize..(1 << k) {
        let family: Vec<&IdealSet> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &all[i])
            .collect();
        let inter = family
            .iter()
            .fold(everything.clone(), |acc, j| acc.intersection(j));
        if !inter.is_ideal_of(s) {
            return Report::fail(
                NAME,
                family_witness(mask, k),
                "intersection is not an ideal",
            );
        }
        // the join under reverse inclusion is the largest ideal inside every member
        let lub = all
            .iter()
            .filter(|c| family.iter().all(|j| c.is_subset(j)))
            .max_by_key(|c| c.len())
            .expect("{0} lies in every ideal");
        if *lub != inter
            || all
                .iter()
                .any(|c| family.iter().all(|j| c.is_subset(j)) && !c.is_subset(lub))
        {
            return Report::fail(NAME, family_witness(mask, k), "⋁ J_i ≠ ⋂ J_i");
        }
        if !jd {
            continue;
        }
        let union: Vec<usize> = family.iter().flat_map(|j| j.iter()).collect();
        let meet = ideal_generated(s, union.iter().copied());
        if !family.is_empty() && finite_joins(s, &union) != meet {
            return Report::fail(
                NAME,
                family_witness(mask, k),
                "finite joins of members are not downward closed",
            );
        }
        for j in &all {
            let lhs = j.intersection(&meet);
            let rhs = ideal_generated(
                s,
                family
                    .iter()
                    .flat_map(|ji| j.intersection(ji).iter().collect::<Vec<_>>()),
            );
            if lhs != rhs {
                let mut w = family_witness(mask, k);
                w.insert(0, j.generator(s));
                return Report::fail(NAME, w, "J ∩ ⋀ J_i ≠ ⋀ (J ∩ J_i)");
            }
        }
    }
    Report::pass(NAME)
}

fn family_witness(mask: usize, k: usize) -> Vec<usize> {
    (0..k).filter(|i| mask >> i & 1 == 1).collect()
}

fn finite_joins(s: &Semilattice, seeds: &[usize]) -> IdealSet {
    let mut set: Vec<bool> = vec![false; s.size()];
    let mut members: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = seeds.to_vec();
    while let Some(x) = queue.pop() {
        if set[x] {
            continue;
        }
        set[x] = true;
        members.push(x);
        for &y in &members {
            let j = s.join(x, y);
            if !set[j] {
                queue.push(j);
            }
        }
    }
    IdealSet::from_members(s.size(), members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semimodule::{cyclic, restrict};

    #[test]
    fn a3_is_projective_but_not_injective() {
        let reg = regular(&corpus::a3()).unwrap();
        let p = is_projective(&reg).unwrap();
        assert!(p.holds);
        assert!(p.retraction.unwrap().verify(&reg).passed());
        let i = is_injective(&reg).unwrap();
        assert!(!i.holds);
        assert!(i.retraction.is_none());
    }

    #[test]
    fn c4_cyclic_semimodules() {
        let c4 = corpus::c4();
        let cb = cyclic(&c4, 2).unwrap();
        assert!(is_projective(&cb).unwrap().holds);
        assert!(is_injective(&cb).unwrap().holds);
        let ca = cyclic(&c4, 1).unwrap();
        assert!(!is_projective(&ca).unwrap().holds);
        assert!(!is_injective(&ca).unwrap().holds);
        assert!(is_injective(&regular(&c4).unwrap()).unwrap().holds);
    }

    #[test]
    fn trivial_semimodule_is_injective() {
        let reg = regular(&corpus::l3()).unwrap();
        let zero = restrict(&reg, &[0], "0").unwrap();
        assert!(is_injective(&zero).unwrap().holds);
        assert!(is_projective(&zero).unwrap().holds);
    }

    #[test]
    fn self_injectivity() {
        assert!(is_self_injective(&corpus::c4()).unwrap().holds);
        assert!(!is_self_injective(&corpus::a3()).unwrap().holds);
        assert!(is_self_injective(&corpus::b2()).unwrap().holds);
    }

    #[test]
    fn embedding_is_well_formed() {
        for a in [corpus::a3(), corpus::c4(), corpus::l3()] {
            let reg = regular(&a).unwrap();
            let (id, coords) = injective_embedding(&reg).unwrap();
            assert!(check_embedding(&reg, &id, &coords).passed());
        }
    }

    #[test]
    fn mid_completeness() {
        let id = id_semimodule(&corpus::a3()).unwrap();
        assert!(is_mid_complete(&id.semilattice().unwrap()).passed());
        let m3 = Semilattice::of_algebra(&corpus::m3()).unwrap();
        assert!(!is_mid_complete(&m3).passed());
        let c4 = regular(&corpus::c4()).unwrap();
        assert!(is_mid_complete(&c4.semilattice().unwrap()).passed());
    }

    #[test]
    fn join_distributivity() {
        assert!(is_join_distributive(&Semilattice::of_algebra(&corpus::c4()).unwrap()).passed());
        assert!(
            is_join_distributive(&Semilattice::of_algebra(&corpus::b2_squared()).unwrap()).passed()
        );
        assert!(!is_join_distributive(&Semilattice::of_algebra(&corpus::m3()).unwrap()).passed());
    }

    #[test]
    fn faithful_and_strong() {
        let l3 = corpus::l3();
        let reg = regular(&l3).unwrap();
        assert!(is_faithful(&reg).unwrap().passed());
        assert!(is_strong(&reg).unwrap().passed());
        let zero = restrict(&reg, &[0], "0").unwrap();
        assert!(!is_faithful(&zero).unwrap().passed());
        assert!(is_strong(&zero).unwrap().passed());
        let ca = cyclic(&corpus::c4(), 1).unwrap();
        assert_eq!(is_faithful(&ca).unwrap().witness, Some(vec![1]));
    }

    #[test]
    fn ideal_lattices_of_corpus() {
        for a in [
            corpus::b2(),
            corpus::a3(),
            corpus::c4(),
            corpus::l3(),
            corpus::b2_squared(),
            corpus::m3(),
        ] {
            let s = Semilattice::of_algebra(&a).unwrap();
            assert!(ideal_lattice_check(&s).passed(), "{}", a.name());
        }
    }
}
