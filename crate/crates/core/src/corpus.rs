//! Built-in algebras and semimodules with their expected verdicts.

use std::sync::Arc;

use serde::Serialize;

use crate::checks::{run_algebra_check, run_semimodule_check};
use crate::error::Result;
use crate::ideals::id_semimodule;
use crate::report::{Report, Verdict};
use crate::semimodule::{cyclic, product_semiring, regular, SemimoduleTable};
use crate::table::AlgebraTable;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn max_chain(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect()
}

/// The two-element Boolean semifield `{0, 1}` with `∨ = or`, `· = and` and
/// `∼ = − = ¬`.
pub fn b2() -> AlgebraTable {
    AlgebraTable::new("B2", max_chain(2), vec![vec![0, 0], vec![0, 1]], 1)
        .and_then(|a| a.with_zero(0))
        .and_then(|a| a.with_negations(vec![1, 0], vec![1, 0]))
        .and_then(|a| a.with_display(names(&["0", "1"])))
        .expect("B2 tables are well formed")
}

fn a3_tables() -> AlgebraTable {
    let mult = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
    AlgebraTable::new("A3", max_chain(3), mult, 2)
        .and_then(|a| a.with_display(names(&["0", "a", "1"])))
        .expect("A3 tables are well formed")
}

/// The chain `0 < a < 1` with `a·a = a`.
pub fn a3() -> AlgebraTable {
    a3_tables().with_zero(0).expect("A3 zero is in range")
}

/// [`a3`] with no declared zero.
pub fn a3_without_zero() -> AlgebraTable {
    a3_tables()
}

/// The chain `0 < a < b < 1` with `a·a = a·b = 0`, `b·b = b`, and
/// `−0 = 1`, `−a = b`.
pub fn c4() -> AlgebraTable {
    let mult = vec![
        vec![0, 0, 0, 0],
        vec![0, 0, 0, 1],
        vec![0, 0, 2, 2],
        vec![0, 1, 2, 3],
    ];
    AlgebraTable::new("C4", max_chain(4), mult, 3)
        .and_then(|a| a.with_zero(0))
        .and_then(|a| a.with_negations(vec![3, 2, 1, 0], vec![3, 2, 1, 0]))
        .and_then(|a| a.with_display(names(&["0", "a", "b", "1"])))
        .expect("C4 tables are well formed")
}

/// The three-element Łukasiewicz chain `0 < h < 1` with `h·h = 0`.
pub fn l3() -> AlgebraTable {
    let mult = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]];
    AlgebraTable::new("L3", max_chain(3), mult, 2)
        .and_then(|a| a.with_zero(0))
        .and_then(|a| a.with_negations(vec![2, 1, 0], vec![2, 1, 0]))
        .and_then(|a| a.with_display(names(&["0", "h", "1"])))
        .expect("L3 tables are well formed")
}

/// `B2 × B2`, the four-element Boolean algebra.
pub fn b2_squared() -> AlgebraTable {
    product_semiring(&[b2(), b2()])
        .expect("B2 x B2 is well formed")
        .with_name("B2xB2")
}

/// The diamond `0 < p, q, r < 1` with `· = ∧`. Not a semiring, since the
/// meet does not distribute over the join.
pub fn m3() -> AlgebraTable {
    let join = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 1, 4, 4, 4],
        vec![2, 4, 2, 4, 4],
        vec![3, 4, 4, 3, 4],
        vec![4, 4, 4, 4, 4],
    ];
    let mult = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 1],
        vec![0, 0, 2, 0, 2],
        vec![0, 0, 0, 3, 3],
        vec![0, 1, 2, 3, 4],
    ];
    AlgebraTable::new("M3", join, mult, 4)
        .and_then(|a| a.with_zero(0))
        .and_then(|a| a.with_display(names(&["0", "p", "q", "r", "1"])))
        .expect("M3 tables are well formed")
}

/// The chain `a < b < 1` where `a` and `b` form a left-zero band.
pub fn left_zero_band() -> AlgebraTable {
    let mult = vec![vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 2]];
    AlgebraTable::new("LZ3", max_chain(3), mult, 2)
        .and_then(|a| a.with_display(names(&["a", "b", "1"])))
        .expect("LZ3 tables are well formed")
}

/// Looks up an algebra constructor by name, ignoring ASCII case.
pub fn algebra_by_name(name: &str) -> Option<AlgebraTable> {
    let a = match name.to_ascii_uppercase().as_str() {
        "B2" => b2(),
        "A3" => a3(),
        "C4" => c4(),
        "L3" => l3(),
        "B2XB2" | "B2^2" => b2_squared(),
        "M3" => m3(),
        "LZ3" => left_zero_band(),
        _ => return None,
    };
    Some(a)
}

/// Where an expected verdict comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated for this instance in the literature.
    Literature,
    /// Established by exhaustive computation on the instance.
    Computed,
    /// Immediate from the definitions.
    Immediate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    pub check: String,
    pub expected: Verdict,
    pub source: Source,
}

#[derive(Clone, Debug)]
pub enum Subject {
    Algebra(AlgebraTable),
    Semimodule(SemimoduleTable),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub subject: Subject,
    pub expected: Vec<Expectation>,
}

/// Outcome of one expectation.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub entry: String,
    pub check: String,
    pub expected: Verdict,
    pub actual: Option<Verdict>,
    pub source: Source,
    pub error: Option<String>,
}

impl Outcome {
    pub fn matches(&self) -> bool {
        self.actual == Some(self.expected)
    }
}

impl CorpusEntry {
    fn new(name: impl Into<String>, subject: Subject, expected: &[(&str, bool, Source)]) -> Self {
        CorpusEntry {
            name: name.into(),
            subject,
            expected: expected
                .iter()
                .map(|&(check, ok, source)| Expectation {
                    check: check.to_string(),
                    expected: Verdict::from_bool(ok),
                    source,
                })
                .collect(),
        }
    }

    pub fn run_check(&self, check: &str) -> Result<Report> {
        match &self.subject {
            Subject::Algebra(a) => run_algebra_check(check, a),
            Subject::Semimodule(m) => run_semimodule_check(check, m),
        }
    }

    pub fn evaluate(&self) -> Vec<Outcome> {
        self.expected
            .iter()
            .map(|e| {
                let (actual, error) = match self.run_check(&e.check) {
                    Ok(r) => (Some(r.verdict), None),
                    Err(err) => (None, Some(err.to_string())),
                };
                Outcome {
                    entry: self.name.clone(),
                    check: e.check.clone(),
                    expected: e.expected,
                    actual,
                    source: e.source,
                    error,
                }
            })
            .collect()
    }
}

fn module(m: Result<SemimoduleTable>) -> Subject {
    Subject::Semimodule(m.expect("corpus semimodules are well formed"))
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    use Source::*;
    let a3 = a3();
    let c4 = c4();
    let l3 = l3();
    vec![
        CorpusEntry::new(
            "B2",
            Subject::Algebra(b2()),
            &[
                ("validate", true, Immediate),
                ("is_idempotent_semiring", true, Immediate),
                ("is_one_bounded", true, Immediate),
                ("is_commutative", true, Immediate),
                ("is_involutive_semiring", true, Immediate),
                ("is_one_bounded_involutive", true, Immediate),
                ("is_involutive_rl", true, Immediate),
                ("is_mv_semiring", true, Immediate),
                ("is_n_potent:1", true, Immediate),
                ("is_n_vn_regular:1", true, Immediate),
                ("is_nilpotent_semiring", true, Immediate),
                ("is_mult_idempotent", true, Immediate),
                ("is_boolean_algebra", true, Immediate),
                ("is_lattice_distributive", true, Immediate),
                ("is_self_injective", true, Computed),
                ("roundtrip_check", true, Immediate),
                ("identity_battery", true, Computed),
                ("unit_interval", true, Immediate),
                ("hom_id_iso_check", true, Computed),
                ("phi_check", true, Computed),
                ("ideal_lattice", true, Computed),
                ("injective_iff_projective_check", true, Immediate),
                ("cyclic_trichotomy_check", true, Computed),
                ("strong_iff_faithful_check", true, Immediate),
                ("principal_ideal_equivalence_check", true, Immediate),
                ("npotent_selfinjective_check:1", true, Immediate),
            ],
        ),
        CorpusEntry::new(
            "A3",
            Subject::Algebra(a3.clone()),
            &[
                ("validate", true, Literature),
                ("is_idempotent_semiring", true, Literature),
                ("is_one_bounded", true, Immediate),
                ("is_commutative", true, Immediate),
                ("is_involutive_rl", false, Computed),
                ("is_n_potent:1", true, Immediate),
                ("is_n_vn_regular:1", true, Computed),
                ("is_nilpotent_semiring", false, Computed),
                ("is_mult_idempotent", true, Immediate),
                ("is_boolean_algebra", false, Immediate),
                ("is_lattice_distributive", true, Immediate),
                ("is_self_injective", false, Literature),
                ("hom_id_iso_check", true, Computed),
                ("phi_check", true, Computed),
                ("ideal_lattice", true, Computed),
                ("npotent_selfinjective_check:1", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "C4",
            Subject::Algebra(c4.clone()),
            &[
                ("validate", true, Literature),
                ("is_idempotent_semiring", true, Literature),
                ("is_one_bounded", true, Literature),
                ("is_commutative", true, Literature),
                ("is_involutive_semiring", true, Computed),
                ("is_one_bounded_involutive", true, Literature),
                ("is_involutive_rl", true, Computed),
                ("is_mv_semiring", false, Computed),
                ("is_n_potent:2", true, Literature),
                ("is_n_potent:1", false, Literature),
                ("is_n_vn_regular:2", true, Computed),
                ("is_n_vn_regular:1", false, Computed),
                ("is_nilpotent_semiring", false, Computed),
                ("is_mult_idempotent", false, Literature),
                ("is_boolean_algebra", false, Computed),
                ("is_lattice_distributive", true, Immediate),
                ("is_self_injective", true, Literature),
                ("roundtrip_check", true, Computed),
                ("identity_battery", true, Computed),
                ("unit_interval", true, Computed),
                ("hom_id_iso_check", true, Computed),
                ("phi_check", true, Computed),
                ("ideal_lattice", true, Computed),
                ("injective_iff_projective_check", true, Computed),
                ("cyclic_trichotomy_check", true, Literature),
                ("principal_ideal_equivalence_check", true, Computed),
                ("npotent_selfinjective_check:2", true, Literature),
                ("npotent_selfinjective_check:1", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "L3",
            Subject::Algebra(l3.clone()),
            &[
                ("validate", true, Immediate),
                ("is_one_bounded", true, Immediate),
                ("is_commutative", true, Immediate),
                ("is_involutive_semiring", true, Computed),
                ("is_one_bounded_involutive", true, Computed),
                ("is_involutive_rl", true, Computed),
                ("is_mv_semiring", true, Computed),
                ("is_nilpotent_semiring", true, Computed),
                ("is_mult_idempotent", false, Immediate),
                ("is_boolean_algebra", false, Immediate),
                ("is_self_injective", true, Computed),
                ("roundtrip_check", true, Computed),
                ("identity_battery", true, Computed),
                ("unit_interval", true, Computed),
                ("hom_id_iso_check", true, Computed),
                ("phi_check", true, Computed),
                ("ideal_lattice", true, Computed),
                ("injective_iff_projective_check", true, Computed),
                ("cyclic_trichotomy_check", true, Computed),
                ("strong_iff_faithful_check", true, Computed),
                ("principal_ideal_equivalence_check", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "B2xB2",
            Subject::Algebra(b2_squared()),
            &[
                ("validate", true, Immediate),
                ("is_one_bounded_involutive", true, Computed),
                ("is_mult_idempotent", true, Immediate),
                ("is_boolean_algebra", true, Computed),
                ("is_self_injective", true, Computed),
                ("hom_id_iso_check", true, Computed),
                ("ideal_lattice", true, Computed),
                ("injective_iff_projective_check", true, Computed),
                ("principal_ideal_equivalence_check", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "A3:regular",
            module(regular(&a3)),
            &[
                ("validate_semimodule", true, Immediate),
                ("is_projective", true, Literature),
                ("is_injective", false, Literature),
                ("is_mid_complete", true, Immediate),
            ],
        ),
        CorpusEntry::new(
            "A3:Id",
            module(id_semimodule(&a3)),
            &[
                ("validate_semimodule", true, Computed),
                ("is_injective", true, Literature),
                ("is_mid_complete", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "C4:regular",
            module(regular(&c4)),
            &[
                ("is_injective", true, Literature),
                ("is_projective", true, Literature),
                ("is_mid_complete", true, Computed),
                ("is_faithful", true, Immediate),
            ],
        ),
        CorpusEntry::new(
            "C4:cyclic:b",
            module(cyclic(&c4, 2)),
            &[
                ("is_injective", true, Literature),
                ("is_projective", true, Literature),
                ("is_mid_complete", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "C4:cyclic:a",
            module(cyclic(&c4, 1)),
            &[
                ("is_injective", false, Computed),
                ("is_projective", false, Computed),
                ("is_faithful", false, Computed),
            ],
        ),
        CorpusEntry::new(
            "L3:regular",
            module(regular(&l3)),
            &[
                ("is_faithful", true, Immediate),
                ("is_strong", true, Computed),
                ("is_injective", true, Computed),
            ],
        ),
        CorpusEntry::new(
            "L3:zero",
            module(crate::semimodule::restrict(
                &regular(&l3).expect("regular L3"),
                &[0],
                "0",
            )),
            &[
                ("is_faithful", false, Immediate),
                ("is_strong", true, Immediate),
                ("is_injective", true, Immediate),
            ],
        ),
    ]
}

/// Resolves a corpus entry or algebra constructor by name.
pub fn lookup(name: &str) -> Option<Subject> {
    if let Some(a) = algebra_by_name(name) {
        return Some(Subject::Algebra(a));
    }
    builtin_corpus()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .map(|e| e.subject)
}

/// The shared algebra of a corpus semimodule, or the algebra itself.
pub fn subject_algebra(s: &Subject) -> Arc<AlgebraTable> {
    match s {
        Subject::Algebra(a) => Arc::new(a.clone()),
        Subject::Semimodule(m) => m.over().clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_expectation_reproduces() {
        for entry in builtin_corpus() {
            for o in entry.evaluate() {
                assert!(o.matches(), "{} {}: {:?}", o.entry, o.check, o);
            }
        }
    }

    #[test]
    fn required_entries_present() {
        let corpus = builtin_corpus();
        let find = |name: &str, check: &str| {
            corpus
                .iter()
                .find(|e| e.name == name)
                .and_then(|e| e.expected.iter().find(|x| x.check == check))
                .map(|x| x.expected)
        };
        assert_eq!(find("C4", "is_n_potent:2"), Some(Verdict::Pass));
        assert_eq!(find("A3", "is_self_injective"), Some(Verdict::Fail));
        assert_eq!(find("L3", "is_mv_semiring"), Some(Verdict::Pass));
        for name in ["B2", "A3", "C4", "L3", "B2xB2"] {
            assert!(corpus.iter().any(|e| e.name == name));
        }
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert!(matches!(lookup("c4"), Some(Subject::Algebra(_))));
        assert!(matches!(lookup("a3:regular"), Some(Subject::Semimodule(_))));
        assert!(lookup("nosuch").is_none());
    }
}
