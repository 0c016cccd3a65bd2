//! Name-addressed checks. Parameterised checks take the parameter after a
//! colon, as in `is_n_potent:2`.

use crate::axioms::*;
use crate::decide::{
    ideal_lattice_check, is_faithful, is_injective, is_join_distributive, is_mid_complete,
    is_projective, is_self_injective, is_strong,
};
use crate::error::{Error, Result};
use crate::ideals::{hom_id_iso_check, phi_check};
use crate::report::Report;
use crate::semimodule::{validate_semimodule, SemimoduleTable};
use crate::table::{is_lattice_distributive, validate, AlgebraTable, Semilattice};
use crate::termeq::{galois_check, identity_battery, roundtrip_check, unit_interval};
use crate::theorems::{
    cyclic_trichotomy_check, injective_iff_projective_check, injective_mid_check,
    npotent_selfinjective_check, principal_ideal_equivalence_check, strong_iff_faithful_check,
    Scope,
};

/// Checks on an algebra. Parameterised names accept `:n`.
pub const ALGEBRA_CHECKS: &[&str] = &[
    "validate",
    "is_idempotent_semiring",
    "is_one_bounded",
    "is_commutative",
    "is_involutive_semiring",
    "is_one_bounded_involutive",
    "is_involutive_rl",
    "is_mv_semiring",
    "is_n_potent:n",
    "is_n_vn_regular:n",
    "vn_regular_iff_potent:n",
    "is_nilpotent_semiring",
    "is_mult_idempotent",
    "is_boolean_algebra",
    "idempotent_iff_boolean",
    "is_lattice_distributive",
    "is_join_distributive",
    "is_self_injective",
    "roundtrip_check",
    "identity_battery",
    "galois_check",
    "unit_interval",
    "hom_id_iso_check",
    "phi_check",
    "ideal_lattice",
    "injective_iff_projective_check",
    "cyclic_trichotomy_check",
    "strong_iff_faithful_check",
    "principal_ideal_equivalence_check",
    "npotent_selfinjective_check:n",
];

pub const SEMIMODULE_CHECKS: &[&str] = &[
    "validate_semimodule",
    "is_injective",
    "is_projective",
    "is_faithful",
    "is_strong",
    "is_mid_complete",
    "is_join_distributive",
    "injective_mid_check",
];

fn split(name: &str) -> Result<(&str, Option<usize>)> {
    match name.split_once(':') {
        None => Ok((name, None)),
        Some((base, p)) => {
            let n = p
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::input(format!("bad parameter in check `{name}`")))?;
            Ok((base, Some(n)))
        }
    }
}

fn param(name: &str, p: Option<usize>) -> Result<usize> {
    p.ok_or_else(|| {
        Error::input(format!(
            "check `{name}` needs a parameter, as in `{name}:2`"
        ))
    })
}

pub fn is_algebra_check(name: &str) -> bool {
    split(name).is_ok_and(|(base, _)| {
        ALGEBRA_CHECKS
            .iter()
            .any(|c| c.split(':').next() == Some(base))
    })
}

pub fn is_semimodule_check(name: &str) -> bool {
    SEMIMODULE_CHECKS.contains(&name)
}

/// Runs a named check on an algebra, using the default scope for quantified
/// theorem checks.
pub fn run_algebra_check(name: &str, a: &AlgebraTable) -> Result<Report> {
    run_algebra_check_in(name, a, Scope::default())
}

pub fn run_algebra_check_in(name: &str, a: &AlgebraTable, scope: Scope) -> Result<Report> {
    let (base, p) = split(name)?;
    let report = match base {
        "validate" => validate(a),
        "is_idempotent_semiring" => is_idempotent_semiring(a)?,
        "is_one_bounded" => is_one_bounded(a),
        "is_commutative" => is_commutative(a),
        "is_involutive_semiring" => is_involutive_semiring(a)?,
        "is_one_bounded_involutive" => is_one_bounded_involutive(a)?,
        "is_involutive_rl" => is_involutive_rl(a)?,
        "is_mv_semiring" => is_mv_semiring(a)?,
        "is_n_potent" => is_n_potent(a, param(base, p)?),
        "is_n_vn_regular" => is_n_vn_regular(a, param(base, p)?),
        "vn_regular_iff_potent" => {
            let n = param(base, p)?;
            let lhs = is_n_vn_regular(a, n).passed();
            let rhs = is_n_potent(a, n).passed();
            if lhs == rhs {
                Report::pass(name)
            } else {
                Report::fail(
                    name,
                    vec![],
                    format!("{n}-vN-regular = {lhs}, {n}-potent = {rhs}"),
                )
            }
        }
        "is_nilpotent_semiring" => is_nilpotent_semiring(a)?,
        "is_mult_idempotent" => is_mult_idempotent(a),
        "is_boolean_algebra" => is_boolean_algebra(a)?,
        "idempotent_iff_boolean" => {
            let lhs = is_mult_idempotent(a).passed();
            let rhs = is_boolean_algebra(a)?.passed();
            if lhs == rhs {
                Report::pass(name)
            } else {
                Report::fail(
                    name,
                    vec![],
                    format!("mult-idempotent = {lhs}, Boolean = {rhs}"),
                )
            }
        }
        "is_lattice_distributive" => is_lattice_distributive(a)?,
        "is_join_distributive" => is_join_distributive(&Semilattice::of_algebra(a)?),
        "is_self_injective" => is_self_injective(a)?.report,
        "roundtrip_check" => roundtrip_check(a)?,
        "identity_battery" => identity_battery(a)?,
        "galois_check" => galois_check(a)?,
        "unit_interval" => unit_interval(a)?.report,
        "hom_id_iso_check" => hom_id_iso_check(a)?,
        "phi_check" => phi_check(a)?.report,
        "ideal_lattice" => ideal_lattice_check(&Semilattice::of_algebra(a)?),
        "injective_iff_projective_check" => injective_iff_projective_check(a, scope)?,
        "cyclic_trichotomy_check" => cyclic_trichotomy_check(a)?,
        "strong_iff_faithful_check" => strong_iff_faithful_check(a, scope)?,
        "principal_ideal_equivalence_check" => principal_ideal_equivalence_check(a)?,
        "npotent_selfinjective_check" => npotent_selfinjective_check(a, param(base, p)?)?,
        _ => return Err(Error::input(format!("unknown algebra check `{name}`"))),
    };
    Ok(report)
}

pub fn run_semimodule_check(name: &str, m: &SemimoduleTable) -> Result<Report> {
    let report = match name {
        "validate_semimodule" => validate_semimodule(m)?,
        "is_injective" => is_injective(m)?.report,
        "is_projective" => is_projective(m)?.report,
        "is_faithful" => is_faithful(m)?,
        "is_strong" => is_strong(m)?,
        "is_mid_complete" => is_mid_complete(&m.semilattice()?),
        "is_join_distributive" => is_join_distributive(&m.semilattice()?),
        "injective_mid_check" => injective_mid_check(m)?,
        _ => return Err(Error::input(format!("unknown semimodule check `{name}`"))),
    };
    Ok(report)
}
