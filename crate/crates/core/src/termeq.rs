//! Translations between involutive residuated lattices and involutive
//! semirings, and the unit-interval subalgebra test.

use serde::Serialize;

use crate::axioms::{is_involutive_rl, is_involutive_semiring, residuals};
use crate::error::{Error, Result};
use crate::report::{all_of, Report};
use crate::table::{derived_meet, AlgebraTable, Table};

/// An involutive semiring together with its derived lattice meet and
/// residual tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveRl {
    /// Carries the original tables, the negations and `zero = −1`.
    pub algebra: AlgebraTable,
    pub meet: Table,
    /// `lres(x, z) = x\z`.
    pub lres: Table,
    /// `rres(z, y) = z/y`.
    pub rres: Table,
}

fn require(report: Report) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(report.into())
    }
}

/// Fills `∼x = x\0` and `−x = 0/x` from the residuals at the declared zero.
pub fn irl_to_invsr(a: &AlgebraTable) -> Result<AlgebraTable> {
    require(is_involutive_rl(a)?)?;
    let zero = a.zero_or_err()?;
    let res = residuals(a)?;
    let n = a.size();
    let lneg = (0..n).map(|x| res.tilde(x, zero)).collect();
    let rneg = (0..n).map(|x| res.minus(x, zero)).collect();
    let out = a.clone().with_negations(lneg, rneg)?;
    require(is_involutive_semiring(&out)?)?;
    Ok(out)
}

/// Attaches `x ∧ y = ∼(−x ∨ −y)`, `x\z = ∼(−z·x)`, `z/y = −(y·∼z)` and
/// `0 = −1`.
pub fn invsr_to_irl(a: &AlgebraTable) -> Result<InvolutiveRl> {
    require(is_involutive_semiring(a)?)?;
    let (lneg, rneg) = a.negations_or_err()?;
    let n = a.size();
    let zero = rneg[a.one()];
    let meet = Table::from_fn(n, |x, y| lneg[a.join(rneg[x], rneg[y])]);
    let lres = Table::from_fn(n, |x, z| lneg[a.mult(rneg[z], x)]);
    let rres = Table::from_fn(n, |z, y| rneg[a.mult(y, lneg[z])]);
    let algebra = a.clone().with_zero(zero)?;
    let out = InvolutiveRl {
        algebra,
        meet,
        lres,
        rres,
    };
    require(residuation_law(&out))?;
    require(absorption_laws(&out))?;
    Ok(out)
}

/// `xy ≤ z ⟺ y ≤ x\z ⟺ x ≤ z/y` for the attached residuals.
pub fn residuation_law(r: &InvolutiveRl) -> Report {
    const NAME: &str = "residuation";
    let a = &r.algebra;
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let le = a.leq(a.mult(x, y), z);
                if le != a.leq(y, r.lres.get(x, z)) || le != a.leq(x, r.rres.get(z, y)) {
                    return Report::fail(NAME, vec![x, y, z], "xy ≤ z ⟺ y ≤ x\\z ⟺ x ≤ z/y fails");
                }
            }
        }
    }
    Report::pass(NAME)
}

/// `x ∧ (x ∨ y) = x = x ∨ (x ∧ y)` for the attached meet.
pub fn absorption_laws(r: &InvolutiveRl) -> Report {
    const NAME: &str = "absorption";
    let a = &r.algebra;
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if r.meet.get(x, a.join(x, y)) != x {
                return Report::fail(NAME, vec![x, y], "x ∧ (x ∨ y) ≠ x");
            }
            if a.join(x, r.meet.get(x, y)) != x {
                return Report::fail(NAME, vec![x, y], "x ∨ (x ∧ y) ≠ x");
            }
        }
    }
    Report::pass(NAME)
}

/// Both compositions of the translations reproduce the original tables
/// literally. Directions whose precondition fails are skipped; at least one
/// must apply.
pub fn roundtrip_check(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "roundtrip_check";
    let mut parts = Vec::new();
    let forward = a.lneg().is_some() && a.rneg().is_some() && is_involutive_semiring(a)?.passed();
    if forward {
        let irl = invsr_to_irl(a)?;
        let res = residuals(&irl.algebra)?;
        let back = irl_to_invsr(&irl.algebra.clone().without_negations())?;
        parts.push(if back != irl.algebra {
            Report::fail(NAME, vec![], "negations recomputed from residuals differ")
        } else if res.lres != irl.lres || res.rres != irl.rres {
            Report::fail(
                NAME,
                vec![],
                "term-defined residuals differ from computed residuals",
            )
        } else {
            Report::pass(NAME)
        });
    }
    let backward = a.zero().is_some() && is_involutive_rl(a)?.passed();
    if backward {
        let sr = irl_to_invsr(a)?;
        let irl = invsr_to_irl(&sr)?;
        let res = residuals(a)?;
        let tables_back = irl.algebra.clone().without_negations();
        let original = a.clone().without_negations();
        parts.push(
            if !tables_back.same_tables(&original) || tables_back.zero() != original.zero() {
                Report::fail(NAME, vec![], "semiring tables not reproduced")
            } else if irl.lres != res.lres || irl.rres != res.rres {
                Report::fail(NAME, vec![], "residuals not reproduced")
            } else {
                Report::pass(NAME)
            },
        );
    }
    if parts.is_empty() {
        return Err(Error::Check(Box::new(Report::fail(
            NAME,
            vec![],
            "neither an involutive semiring nor an involutive residuated lattice",
        ))));
    }
    Ok(all_of(NAME, parts))
}

/// Identities of the translation, quantified over all elements: mutual
/// inverse negations, order reversal, `−x = −∼−x`, absorption, residuation,
/// agreement of `∼(−x ∨ −y)` with the lattice meet, and the Galois connection
/// `x ≤ 0/y ⟺ xy ≤ 0 ⟺ y ≤ x\0`.
pub fn identity_battery(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "identity_battery";
    let irl = invsr_to_irl(a)?;
    let (lneg, rneg) = a.negations_or_err()?;
    let alg = &irl.algebra;
    let zero = alg.zero_or_err()?;
    let n = a.size();
    let mut parts = vec![residuation_law(&irl), absorption_laws(&irl)];
    let elementwise = (|| {
        for x in 0..n {
            if lneg[rneg[x]] != x || rneg[lneg[x]] != x {
                return Report::fail(NAME, vec![x], "∼−x = x = −∼x fails");
            }
            if rneg[lneg[rneg[x]]] != rneg[x] {
                return Report::fail(NAME, vec![x], "−∼−x ≠ −x");
            }
        }
        for x in 0..n {
            for y in 0..n {
                if alg.leq(x, y) && !(alg.leq(rneg[y], rneg[x]) && alg.leq(lneg[y], lneg[x])) {
                    return Report::fail(NAME, vec![x, y], "negation does not reverse order");
                }
                match derived_meet(alg, x, y) {
                    Ok(m) if m != irl.meet.get(x, y) => {
                        return Report::fail(NAME, vec![x, y], "∼(−x ∨ −y) is not the meet");
                    }
                    _ => {}
                }
                let prod = alg.leq(alg.mult(x, y), zero);
                if prod != alg.leq(x, irl.rres.get(zero, y))
                    || prod != alg.leq(y, irl.lres.get(x, zero))
                {
                    return Report::fail(NAME, vec![x, y], "x ≤ 0/y ⟺ xy ≤ 0 ⟺ y ≤ x\\0 fails");
                }
            }
        }
        Report::pass(NAME)
    })();
    parts.push(elementwise);
    Ok(all_of(NAME, parts))
}

/// Galois connection of the residual negations at the declared zero, which
/// holds in every pointed residuated join-semilattice: `x ≤ 0/y ⟺ xy ≤ 0 ⟺
/// y ≤ x\0` and `−∼−x = −x`.
pub fn galois_check(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "galois_check";
    let zero = a.zero_or_err()?;
    let res = residuals(a)?;
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            let prod = a.leq(a.mult(x, y), zero);
            if prod != a.leq(x, res.minus(y, zero)) || prod != a.leq(y, res.tilde(x, zero)) {
                return Ok(Report::fail(
                    NAME,
                    vec![x, y],
                    "x ≤ 0/y ⟺ xy ≤ 0 ⟺ y ≤ x\\0 fails",
                ));
            }
        }
        let m = res.minus(x, zero);
        if res.minus(res.tilde(m, zero), zero) != m {
            return Ok(Report::fail(NAME, vec![x], "−∼−x ≠ −x"));
        }
    }
    Ok(Report::pass(NAME))
}

/// The interval `[0, 1]` with `0 = −1`, tested directly for closure.
#[derive(Clone, Debug, Serialize)]
pub struct Interval {
    pub members: Vec<usize>,
    /// `[0, 1]` contains both constants and is closed under `∨`, `·`, `∼`, `−`.
    pub closed: bool,
    /// `0·0 = 0`.
    pub zero_idempotent: bool,
    /// First closure violation, when not closed.
    pub witness: Option<Vec<usize>>,
    /// Passes iff `closed` agrees with `zero_idempotent`.
    pub report: Report,
}

pub fn unit_interval(a: &AlgebraTable) -> Result<Interval> {
    const NAME: &str = "unit_interval";
    require(is_involutive_semiring(a)?)?;
    let (lneg, rneg) = a.negations_or_err()?;
    let one = a.one();
    let zero = rneg[one];
    let members: Vec<usize> = (0..a.size())
        .filter(|&x| a.leq(zero, x) && a.leq(x, one))
        .collect();
    let inside = |x: usize| a.leq(zero, x) && a.leq(x, one);
    let witness = if members.is_empty() {
        Some(vec![zero, one])
    } else {
        let mut w = None;
        'search: for &x in &members {
            if !inside(lneg[x]) || !inside(rneg[x]) {
                w = Some(vec![x]);
                break;
            }
            for &y in &members {
                if !inside(a.join(x, y)) || !inside(a.mult(x, y)) {
                    w = Some(vec![x, y]);
                    break 'search;
                }
            }
        }
        w
    };
    let closed = witness.is_none();
    let zero_idempotent = a.mult(zero, zero) == zero;
    let report = if closed == zero_idempotent {
        Report::pass(NAME)
    } else {
        Report::fail(
            NAME,
            witness.clone().unwrap_or_default(),
            format!("closed = {closed} but 0·0 = 0 is {zero_idempotent}"),
        )
    };
    let report = if members.is_empty() {
        report.with_detail("empty interval: 0 ≰ 1")
    } else {
        report
    };
    Ok(Interval {
        members,
        closed,
        zero_idempotent,
        witness,
        report,
    })
}
