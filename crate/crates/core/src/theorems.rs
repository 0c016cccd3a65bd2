//! Executable biconditionals over injectivity, projectivity and the
//! multiplicative structure. Each check evaluates both sides on every
//! semimodule in its scope and fails on the first disagreement.

use crate::axioms::{
    is_boolean_algebra, is_idempotent_semiring, is_n_potent, is_n_vn_regular,
    is_nilpotent_semiring, is_one_bounded, is_one_bounded_involutive,
};
use crate::decide::{
    is_faithful, is_injective, is_mid_complete, is_projective, is_self_injective, is_strong,
};
use crate::error::Result;
use crate::homs::find_isomorphism;
use crate::report::{all_of, Report};
use crate::semimodule::{
    all_subsemimodules, cyclic, free, product_semiring, restrict, SemimoduleTable,
};
use crate::table::AlgebraTable;

/// Which semimodules a quantified check ranges over: every subsemimodule of
/// `A^k` for `1 ≤ k ≤ max_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scope {
    pub max_rank: usize,
}

impl Default for Scope {
    fn default() -> Self {
        Scope { max_rank: 2 }
    }
}

impl Scope {
    pub fn describe(&self) -> String {
        format!("subsemimodules of A^k, k ≤ {}", self.max_rank)
    }
}

/// A subsemimodule in scope with its position: rank `k` and members in `A^k`.
pub struct Scoped {
    pub rank: usize,
    pub members: Vec<usize>,
    pub module: SemimoduleTable,
}

impl Scoped {
    fn witness(&self) -> Vec<usize> {
        let mut w = vec![self.rank];
        w.extend(&self.members);
        w
    }
}

/// Every subsemimodule of `A^k` for `k` in scope, including repeats across
/// ranks.
pub fn scoped_semimodules(a: &AlgebraTable, scope: Scope) -> Result<Vec<Scoped>> {
    let mut out = Vec::new();
    for k in 1..=scope.max_rank {
        let f = free(a, k)?;
        for members in all_subsemimodules(&f) {
            let name = format!(
                "{}[{}]",
                f.name(),
                members
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let module = restrict(&f, &members, name)?;
            out.push(Scoped {
                rank: k,
                members,
                module,
            });
        }
    }
    Ok(out)
}

fn precondition(report: Report) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        let check = format!("precondition {}", report.check);
        Err(report.renamed(check).into())
    }
}

/// Injective and projective agree on every semimodule in scope. Requires a
/// 1-bounded involutive semiring.
pub fn injective_iff_projective_check(a: &AlgebraTable, scope: Scope) -> Result<Report> {
    precondition(is_one_bounded_involutive(a)?)?;
    compare_injective_projective(a, scope)
}

/// [`injective_iff_projective_check`] without the precondition.
pub fn compare_injective_projective(a: &AlgebraTable, scope: Scope) -> Result<Report> {
    const NAME: &str = "injective_iff_projective_check";
    for s in scoped_semimodules(a, scope)? {
        let inj = is_injective(&s.module)?.holds;
        let proj = is_projective(&s.module)?.holds;
        if inj != proj {
            return Ok(Report::fail(
                NAME,
                s.witness(),
                format!(
                    "{}: injective = {inj}, projective = {proj} ({})",
                    s.module.name(),
                    scope.describe()
                ),
            ));
        }
    }
    Ok(Report::pass(NAME).with_detail(scope.describe()))
}

/// The three conditions on each cyclic semimodule `Ax`, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trichotomy {
    pub generator: usize,
    pub iso_to_idempotent: bool,
    pub projective: bool,
    pub injective: bool,
}

pub fn cyclic_conditions(a: &AlgebraTable) -> Result<Vec<Trichotomy>> {
    let idempotents: Vec<usize> = (0..a.size()).filter(|&u| a.mult(u, u) == u).collect();
    let idem_cyclics = idempotents
        .iter()
        .map(|&u| cyclic(a, u))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(a.size());
    for x in 0..a.size() {
        let m = cyclic(a, x)?;
        let mut iso = false;
        for c in &idem_cyclics {
            if find_isomorphism(&m, c)?.is_some() {
                iso = true;
                break;
            }
        }
        out.push(Trichotomy {
            generator: x,
            iso_to_idempotent: iso,
            projective: is_projective(&m)?.holds,
            injective: is_injective(&m)?.holds,
        });
    }
    Ok(out)
}

/// For every `x`: `Ax ≅ Au` for an idempotent `u` ⟺ `Ax` projective ⟺ `Ax`
/// injective. Requires a 1-bounded involutive semiring.
pub fn cyclic_trichotomy_check(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "cyclic_trichotomy_check";
    precondition(is_one_bounded_involutive(a)?)?;
    for t in cyclic_conditions(a)? {
        if t.iso_to_idempotent != t.projective || t.projective != t.injective {
            return Ok(Report::fail(
                NAME,
                vec![t.generator],
                format!(
                    "iso to idempotent cyclic = {}, projective = {}, injective = {}",
                    t.iso_to_idempotent, t.projective, t.injective
                ),
            ));
        }
    }
    Ok(Report::pass(NAME))
}

/// Strong and faithful agree on every semimodule in scope with at least two
/// elements. Requires a nilpotent 1-bounded involutive semiring.
pub fn strong_iff_faithful_check(a: &AlgebraTable, scope: Scope) -> Result<Report> {
    const NAME: &str = "strong_iff_faithful_check";
    precondition(is_one_bounded_involutive(a)?)?;
    precondition(is_nilpotent_semiring(a)?)?;
    for s in scoped_semimodules(a, scope)? {
        if s.module.size() < 2 {
            continue;
        }
        let strong = is_strong(&s.module)?.passed();
        let faithful = is_faithful(&s.module)?.passed();
        if strong != faithful {
            return Ok(Report::fail(
                NAME,
                s.witness(),
                format!(
                    "{}: strong = {strong}, faithful = {faithful} ({})",
                    s.module.name(),
                    scope.describe()
                ),
            ));
        }
    }
    Ok(Report::pass(NAME).with_detail(scope.describe()))
}

/// The three conditions of the principal-ideal equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrincipalIdeal {
    pub principal_injective: bool,
    pub self_injective_regular: bool,
    pub boolean: bool,
}

pub fn principal_ideal_conditions(a: &AlgebraTable) -> Result<PrincipalIdeal> {
    let mut principal_injective = true;
    for x in 0..a.size() {
        if !is_injective(&cyclic(a, x)?)?.holds {
            principal_injective = false;
            break;
        }
    }
    let self_injective_regular = is_self_injective(a)?.holds && is_n_vn_regular(a, 1).passed();
    let boolean = is_boolean_algebra(a)?.passed();
    Ok(PrincipalIdeal {
        principal_injective,
        self_injective_regular,
        boolean,
    })
}

/// Every `Ax` injective ⟺ self-injective and von Neumann regular ⟺
/// Boolean algebra. Requires a 1-bounded involutive semiring.
pub fn principal_ideal_equivalence_check(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "principal_ideal_equivalence_check";
    precondition(is_one_bounded_involutive(a)?)?;
    let c = principal_ideal_conditions(a)?;
    if c.principal_injective == c.self_injective_regular && c.self_injective_regular == c.boolean {
        Ok(Report::pass(NAME).with_detail(format!("all {}", c.boolean)))
    } else {
        Ok(Report::fail(
            NAME,
            vec![],
            format!(
                "every Ax injective = {}, self-injective vN regular = {}, Boolean = {}",
                c.principal_injective, c.self_injective_regular, c.boolean
            ),
        ))
    }
}

/// Every `A·xⁿ` injective ⟺ self-injective and `n`-potent. Requires a
/// 1-bounded idempotent semiring; involutivity is not assumed.
pub fn npotent_selfinjective_check(a: &AlgebraTable, n: usize) -> Result<Report> {
    let name = format!("npotent_selfinjective_check:{n}");
    precondition(all_of(
        "one_bounded_idempotent_semiring",
        [is_idempotent_semiring(a)?, is_one_bounded(a)],
    ))?;
    let mut powers: Vec<usize> = (0..a.size()).map(|x| a.power(x, n)).collect();
    powers.sort_unstable();
    powers.dedup();
    let mut lhs = true;
    let mut first_bad = None;
    for &p in &powers {
        if !is_injective(&cyclic(a, p)?)?.holds {
            lhs = false;
            first_bad = Some(p);
            break;
        }
    }
    let rhs = is_self_injective(a)?.holds && is_n_potent(a, n).passed();
    if lhs == rhs {
        Ok(Report::pass(name).with_detail(format!("both {lhs}")))
    } else {
        Ok(Report::fail(
            name,
            first_bad.into_iter().collect(),
            format!("every A·xⁿ injective = {lhs}, self-injective and n-potent = {rhs}"),
        ))
    }
}

/// A product is self-injective iff every factor is.
pub fn product_selfinjective_check(factors: &[AlgebraTable]) -> Result<Report> {
    const NAME: &str = "product_selfinjective_check";
    let product = product_semiring(factors)?;
    let whole = is_self_injective(&product)?.holds;
    let mut each = true;
    let mut first_bad = None;
    for (i, f) in factors.iter().enumerate() {
        if !is_self_injective(f)?.holds {
            each = false;
            first_bad = Some(i);
            break;
        }
    }
    if whole == each {
        Ok(Report::pass(NAME).with_detail(format!("{} self-injective = {whole}", product.name())))
    } else {
        Ok(Report::fail(
            NAME,
            first_bad.into_iter().collect(),
            format!("product self-injective = {whole}, all factors = {each}"),
        ))
    }
}

/// Every semimodule certified injective is MID-complete, and every retract
/// certificate from a MID-complete outer object has a MID-complete inner one.
pub fn injective_mid_check(m: &SemimoduleTable) -> Result<Report> {
    const NAME: &str = "injective_mid_check";
    let d = is_injective(m)?;
    let Some(r) = d.retraction else {
        return Ok(Report::pass(NAME).with_detail("not injective"));
    };
    let inner = is_mid_complete(&m.semilattice()?);
    let outer = is_mid_complete(&r.factor.semilattice()?);
    // A finite power of F is MID-complete iff F is.
    if outer.passed() && !inner.passed() {
        return Ok(Report::fail(
            NAME,
            inner.witness.unwrap_or_default(),
            "retract of a MID-complete object is not MID-complete",
        ));
    }
    if !inner.passed() {
        return Ok(Report::fail(
            NAME,
            inner.witness.unwrap_or_default(),
            "injective but not MID-complete",
        ));
    }
    Ok(Report::pass(NAME))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semimodule::regular;

    #[test]
    fn injective_projective_agree_on_involutive_corpus() {
        for a in [corpus::b2(), corpus::c4(), corpus::l3()] {
            let r = injective_iff_projective_check(&a, Scope { max_rank: 1 }).unwrap();
            assert!(r.passed(), "{}: {r}", a.name());
        }
    }

    #[test]
    fn a3_is_refused_and_forced_run_disagrees() {
        let a3 = corpus::a3();
        assert!(injective_iff_projective_check(&a3, Scope::default()).is_err());
        let r = compare_injective_projective(&a3, Scope { max_rank: 1 }).unwrap();
        assert!(!r.passed());
        // rank 1, members = the whole of A3
        assert_eq!(r.witness, Some(vec![1, 0, 1, 2]));
    }

    #[test]
    fn c4_trichotomy() {
        let c4 = corpus::c4();
        let conds = cyclic_conditions(&c4).unwrap();
        assert!(conds[2].iso_to_idempotent && conds[2].projective && conds[2].injective);
        assert!(!conds[1].iso_to_idempotent && !conds[1].projective && !conds[1].injective);
        assert!(cyclic_trichotomy_check(&c4).unwrap().passed());
        assert!(cyclic_trichotomy_check(&corpus::l3()).unwrap().passed());
    }

    #[test]
    fn strong_faithful() {
        assert!(strong_iff_faithful_check(&corpus::l3(), Scope::default())
            .unwrap()
            .passed());
        assert!(strong_iff_faithful_check(&corpus::b2(), Scope::default())
            .unwrap()
            .passed());
        assert!(strong_iff_faithful_check(&corpus::c4(), Scope::default()).is_err());
    }

    #[test]
    fn principal_ideals() {
        let b2 = principal_ideal_conditions(&corpus::b2()).unwrap();
        assert!(b2.principal_injective && b2.self_injective_regular && b2.boolean);
        let c4 = principal_ideal_conditions(&corpus::c4()).unwrap();
        assert!(!c4.principal_injective && !c4.self_injective_regular && !c4.boolean);
        let bb = principal_ideal_conditions(&corpus::b2_squared()).unwrap();
        assert!(bb.principal_injective && bb.self_injective_regular && bb.boolean);
    }

    #[test]
    fn npotent() {
        let c4 = corpus::c4();
        let r2 = npotent_selfinjective_check(&c4, 2).unwrap();
        assert!(r2.passed());
        assert_eq!(r2.detail.as_deref(), Some("both true"));
        let r1 = npotent_selfinjective_check(&c4, 1).unwrap();
        assert_eq!(r1.detail.as_deref(), Some("both false"));
        let b2 = npotent_selfinjective_check(&corpus::b2(), 1).unwrap();
        assert_eq!(b2.detail.as_deref(), Some("both true"));
    }

    #[test]
    fn products() {
        let bc = product_selfinjective_check(&[corpus::b2(), corpus::c4()]).unwrap();
        assert!(bc.passed());
        assert!(bc.detail.unwrap().ends_with("true"));
        let ab = product_selfinjective_check(&[corpus::a3(), corpus::b2()]).unwrap();
        assert!(ab.passed());
        assert!(ab.detail.unwrap().ends_with("false"));
        assert!(product_selfinjective_check(&[corpus::l3()])
            .unwrap()
            .passed());
    }

    #[test]
    fn injective_semimodules_are_mid_complete() {
        for m in [
            regular(&corpus::c4()).unwrap(),
            cyclic(&corpus::c4(), 2).unwrap(),
        ] {
            assert!(injective_mid_check(&m).unwrap().passed());
        }
    }
}
