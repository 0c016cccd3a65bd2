//! Class membership predicates. Each returns a [`Report`] whose witness is
//! the first violating tuple in index order.

use crate::error::{Error, Result};
use crate::report::{all_of, Report};
use crate::table::{validate, AlgebraTable, Semilattice, Table};

/// Semiring laws plus `x ∨ 0 = x`, `x0 = 0 = 0x` and `1 ∨ 1 = 1`.
pub fn is_idempotent_semiring(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_idempotent_semiring";
    let zero = a.zero_or_err()?;
    let base = validate(a);
    if !base.passed() {
        return Ok(base.renamed(NAME));
    }
    if a.join(a.one(), a.one()) != a.one() {
        return Ok(Report::fail(NAME, vec![a.one()], "1 ∨ 1 ≠ 1"));
    }
    for x in 0..a.size() {
        if a.join(x, zero) != x {
            return Ok(Report::fail(NAME, vec![x], "x ∨ 0 ≠ x"));
        }
        if a.mult(x, zero) != zero || a.mult(zero, x) != zero {
            return Ok(Report::fail(
                NAME,
                vec![x],
                "0 is not multiplicatively absorbing",
            ));
        }
    }
    Ok(Report::pass(NAME))
}

pub fn is_one_bounded(a: &AlgebraTable) -> Report {
    const NAME: &str = "is_one_bounded";
    match (0..a.size()).find(|&x| a.join(x, a.one()) != a.one()) {
        Some(x) => Report::fail(NAME, vec![x], "x ∨ 1 ≠ 1"),
        None => Report::pass(NAME),
    }
}

pub fn is_commutative(a: &AlgebraTable) -> Report {
    const NAME: &str = "is_commutative";
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if a.mult(x, y) != a.mult(y, x) {
                return Report::fail(NAME, vec![x, y], "xy ≠ yx");
            }
        }
    }
    Report::pass(NAME)
}

/// Left and right residual tables: `lres(x, z) = x\z`, `rres(z, y) = z/y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residuals {
    pub lres: Table,
    pub rres: Table,
}

impl Residuals {
    /// `∼x = x\0`.
    pub fn tilde(&self, x: usize, zero: usize) -> usize {
        self.lres.get(x, zero)
    }

    /// `−x = 0/x`.
    pub fn minus(&self, x: usize, zero: usize) -> usize {
        self.rres.get(zero, x)
    }
}

/// Computes `x\z = ⋁{y | xy ≤ z}` and `z/y = ⋁{x | xy ≤ z}` and verifies
/// `xy ≤ z ⟺ x ≤ z/y ⟺ y ≤ x\z` for every triple.
///
/// Fails with [`Error::Check`] when the algebra is not residuated.
pub fn residuals(a: &AlgebraTable) -> Result<Residuals> {
    const NAME: &str = "residuals";
    let s = Semilattice::of_algebra(a)?;
    let n = a.size();
    let lres = Table::from_fn(n, |x, z| {
        s.join_all((0..n).filter(|&y| a.leq(a.mult(x, y), z)))
    });
    let rres = Table::from_fn(n, |z, y| {
        s.join_all((0..n).filter(|&x| a.leq(a.mult(x, y), z)))
    });
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let prod = a.leq(a.mult(x, y), z);
                if prod != a.leq(x, rres.get(z, y)) || prod != a.leq(y, lres.get(x, z)) {
                    return Err(Report::fail(
                        NAME,
                        vec![x, y, z],
                        "xy ≤ z ⟺ x ≤ z/y ⟺ y ≤ x\\z fails",
                    )
                    .into());
                }
            }
        }
    }
    Ok(Residuals { lres, rres })
}

/// `x ≤ y ⟺ x·∼y ≤ −1 ⟺ −y·x ≤ −1` over a 0-free idempotent semiring.
pub fn is_involutive_semiring(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_involutive_semiring";
    let (lneg, rneg) = a.negations_or_err()?;
    let base = validate(a);
    if !base.passed() {
        return Ok(base.renamed(NAME));
    }
    let bound = rneg[a.one()];
    if let Some(z) = a.zero() {
        if z != bound {
            return Ok(Report::fail(
                NAME,
                vec![z, bound],
                "declared zero differs from −1",
            ));
        }
    }
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            let le = a.leq(x, y);
            if le != a.leq(a.mult(x, lneg[y]), bound) {
                return Ok(Report::fail(NAME, vec![x, y], "x ≤ y ⟺ x·∼y ≤ −1 fails"));
            }
            if le != a.leq(a.mult(rneg[y], x), bound) {
                return Ok(Report::fail(NAME, vec![x, y], "x ≤ y ⟺ −y·x ≤ −1 fails"));
            }
        }
    }
    Ok(Report::pass(NAME))
}

/// `x ≤ y ⟺ x·∼y = 0 ⟺ −y·x = 0` with `0 = −1` the bottom element.
pub fn is_one_bounded_involutive(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_one_bounded_involutive";
    let (lneg, rneg) = a.negations_or_err()?;
    let zero = a.zero_or_err()?;
    let semiring = is_idempotent_semiring(a)?;
    if !semiring.passed() {
        return Ok(semiring.renamed(NAME));
    }
    if rneg[a.one()] != zero {
        return Ok(Report::fail(
            NAME,
            vec![zero, rneg[a.one()]],
            "declared zero differs from −1",
        ));
    }
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            let le = a.leq(x, y);
            if le != (a.mult(x, lneg[y]) == zero) {
                return Ok(Report::fail(NAME, vec![x, y], "x ≤ y ⟺ x·∼y = 0 fails"));
            }
            if le != (a.mult(rneg[y], x) == zero) {
                return Ok(Report::fail(NAME, vec![x, y], "x ≤ y ⟺ −y·x = 0 fails"));
            }
        }
    }
    Ok(Report::pass(NAME))
}

/// `∼−x = x = −∼x` with `∼x = x\0` and `−x = 0/x` taken from the residuals.
pub fn is_involutive_rl(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_involutive_rl";
    let zero = a.zero_or_err()?;
    let res = match residuals(a) {
        Ok(r) => r,
        Err(Error::Check(r)) => return Ok(r.renamed(NAME)),
        Err(e) => return Err(e),
    };
    for x in 0..a.size() {
        let minus = res.minus(x, zero);
        let tilde = res.tilde(x, zero);
        if res.tilde(minus, zero) != x {
            return Ok(Report::fail(NAME, vec![x], "∼−x ≠ x"));
        }
        if res.minus(tilde, zero) != x {
            return Ok(Report::fail(NAME, vec![x], "−∼x ≠ x"));
        }
    }
    Ok(Report::pass(NAME))
}

/// Commutative idempotent semiring with `x ≤ y ⟺ x·−y = 0` and
/// `x ∨ y = −(−x·−(−x·y))`.
pub fn is_mv_semiring(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_mv_semiring";
    let Some(neg) = a.rneg() else {
        return Err(Error::unsupported(format!("{} declares no rneg", a.name())));
    };
    let zero = a.zero_or_err()?;
    let pre = all_of(NAME, [is_idempotent_semiring(a)?, is_commutative(a)]);
    if !pre.passed() {
        return Ok(pre);
    }
    let n = a.size();
    for x in 0..n {
        for (y, &ny) in neg.iter().enumerate() {
            if a.leq(x, y) != (a.mult(x, ny) == zero) {
                return Ok(Report::fail(NAME, vec![x, y], "x ≤ y ⟺ x·−y = 0 fails"));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let inner = a.mult(neg[x], y);
            let rhs = neg[a.mult(neg[x], neg[inner])];
            if a.join(x, y) != rhs {
                return Ok(Report::fail(NAME, vec![x, y], "x ∨ y ≠ −(−x·−(−x·y))"));
            }
        }
    }
    Ok(Report::pass(NAME))
}

/// `xⁿ = xⁿ⁺¹` for every `x`.
pub fn is_n_potent(a: &AlgebraTable, n: usize) -> Report {
    let name = format!("is_{n}_potent");
    match (0..a.size()).find(|&x| a.power(x, n) != a.power(x, n + 1)) {
        Some(x) => Report::fail(name, vec![x], "xⁿ ≠ xⁿ⁺¹"),
        None => Report::pass(name),
    }
}

/// Every `x` admits some `b` with `xⁿ = xⁿ·b·xⁿ`.
pub fn is_n_vn_regular(a: &AlgebraTable, n: usize) -> Report {
    let name = format!("is_{n}_vn_regular");
    for x in 0..a.size() {
        let p = a.power(x, n);
        if !(0..a.size()).any(|b| a.mult(a.mult(p, b), p) == p) {
            return Report::fail(name, vec![x], "no b with xⁿ = xⁿ·b·xⁿ");
        }
    }
    Report::pass(name)
}

/// Every `x ≠ 1` has a power equal to 0. Powers in a finite monoid repeat
/// within `|A|` steps, so exponents up to the carrier size suffice.
pub fn is_nilpotent_semiring(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_nilpotent_semiring";
    let zero = a.zero_or_err()?;
    for x in (0..a.size()).filter(|&x| x != a.one()) {
        let mut p = x;
        let mut found = p == zero;
        for _ in 1..a.size() {
            if found {
                break;
            }
            p = a.mult(p, x);
            found = p == zero;
        }
        if !found {
            return Ok(Report::fail(NAME, vec![x], "no power of x vanishes"));
        }
    }
    Ok(Report::pass(NAME))
}

pub fn is_mult_idempotent(a: &AlgebraTable) -> Report {
    const NAME: &str = "is_mult_idempotent";
    match (0..a.size()).find(|&x| a.mult(x, x) != x) {
        Some(x) => Report::fail(NAME, vec![x], "xx ≠ x"),
        None => Report::pass(NAME),
    }
}

/// Distributive, bounded and complemented lattice whose multiplication is the
/// meet and whose zero is the bottom.
pub fn is_boolean_algebra(a: &AlgebraTable) -> Result<Report> {
    const NAME: &str = "is_boolean_algebra";
    let zero = a.zero_or_err()?;
    let s = match Semilattice::of_algebra(a) {
        Ok(s) => s,
        Err(Error::Unsupported(_)) => {
            return Ok(Report::fail(NAME, vec![], "no least element"));
        }
        Err(e) => return Err(e),
    };
    let base = validate(a);
    if !base.passed() {
        return Ok(base.renamed(NAME));
    }
    if zero != s.bottom() {
        return Ok(Report::fail(
            NAME,
            vec![zero],
            "zero is not the bottom element",
        ));
    }
    let dist = s.distributivity();
    if !dist.passed() {
        return Ok(dist.renamed(NAME));
    }
    let n = a.size();
    for x in 0..n {
        let complemented = (0..n).any(|y| s.join(x, y) == s.top() && s.meet(x, y) == s.bottom());
        if !complemented {
            return Ok(Report::fail(NAME, vec![x], "x has no complement"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.mult(x, y) != s.meet(x, y) {
                return Ok(Report::fail(NAME, vec![x, y], "xy ≠ x ∧ y"));
            }
        }
    }
    Ok(Report::pass(NAME))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn chain_with_middle_unit() -> AlgebraTable {
        // 0 < 1 < 2 with the unit in the middle and 2·2 = 2
        let join = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
        let mult = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
        AlgebraTable::new("mid", join, mult, 1)
            .unwrap()
            .with_zero(0)
            .unwrap()
    }

    #[test]
    fn idempotent_semirings() {
        assert!(is_idempotent_semiring(&corpus::b2()).unwrap().passed());
        assert!(is_idempotent_semiring(&corpus::a3()).unwrap().passed());
        let a = AlgebraTable::new(
            "x",
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 1]],
            1,
        )
        .unwrap()
        .with_zero(0)
        .unwrap();
        assert!(!is_idempotent_semiring(&a).unwrap().passed());
        let no_zero = corpus::a3_without_zero();
        assert!(matches!(
            is_idempotent_semiring(&no_zero),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn one_bounded() {
        assert!(is_one_bounded(&corpus::b2()).passed());
        assert!(is_one_bounded(&corpus::c4()).passed());
        let mid = chain_with_middle_unit();
        assert!(validate(&mid).passed());
        let r = is_one_bounded(&mid);
        assert_eq!(r.witness, Some(vec![2]));
    }

    #[test]
    fn commutativity() {
        assert!(is_commutative(&corpus::b2()).passed());
        assert!(is_commutative(&corpus::c4()).passed());
        let r = is_commutative(&corpus::left_zero_band());
        assert!(!r.passed());
    }

    #[test]
    fn residual_tables() {
        let b2 = corpus::b2();
        let res = residuals(&b2).unwrap();
        for x in 0..2 {
            for z in 0..2 {
                let implication = if x == 0 { 1 } else { z };
                assert_eq!(res.lres.get(x, z), implication);
            }
        }
        let l3 = corpus::l3();
        assert_eq!(residuals(&l3).unwrap().lres.get(1, 0), 1);
        let a3 = corpus::a3();
        assert_eq!(residuals(&a3).unwrap().lres.get(1, 0), 0);
    }

    #[test]
    fn non_residuated_table_is_rejected() {
        // 0 is not absorbing, so the empty join is not preserved
        let join = vec![vec![0, 1], vec![1, 1]];
        let mult = vec![vec![1, 0], vec![0, 1]];
        let a = AlgebraTable::new("flip", join, mult, 1).unwrap();
        assert!(matches!(residuals(&a), Err(Error::Check(_))));
    }

    #[test]
    fn involutive_semirings() {
        assert!(is_involutive_semiring(&corpus::l3()).unwrap().passed());
        assert!(is_involutive_semiring(&corpus::c4()).unwrap().passed());
        assert!(is_one_bounded_involutive(&corpus::l3()).unwrap().passed());
        assert!(is_one_bounded_involutive(&corpus::c4()).unwrap().passed());
        let b2_id = corpus::b2().with_negations(vec![0, 1], vec![0, 1]).unwrap();
        assert!(!is_one_bounded_involutive(&b2_id).unwrap().passed());
        assert!(matches!(
            is_involutive_semiring(&corpus::a3()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn a3_admits_no_involution() {
        let a3 = corpus::a3();
        let unaries: Vec<Vec<usize>> = (0..27).map(|k| vec![k % 3, (k / 3) % 3, k / 9]).collect();
        for l in &unaries {
            for r in &unaries {
                let cand = a3.clone().with_negations(l.clone(), r.clone()).unwrap();
                assert!(!is_involutive_semiring(&cand).unwrap().passed());
            }
        }
    }

    #[test]
    fn involutive_residuated_lattices() {
        assert!(is_involutive_rl(&corpus::l3()).unwrap().passed());
        assert!(is_involutive_rl(&corpus::b2()).unwrap().passed());
        let r = is_involutive_rl(&corpus::a3()).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn mv_semirings() {
        assert!(is_mv_semiring(&corpus::l3()).unwrap().passed());
        assert!(is_mv_semiring(&corpus::b2()).unwrap().passed());
        let r = is_mv_semiring(&corpus::c4()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witness, Some(vec![1, 2]));
    }

    #[test]
    fn potency_and_regularity() {
        let c4 = corpus::c4();
        assert!(is_n_potent(&c4, 2).passed());
        assert_eq!(is_n_potent(&c4, 1).witness, Some(vec![1]));
        assert!(is_n_potent(&corpus::b2(), 1).passed());
        assert!(is_n_vn_regular(&c4, 2).passed());
        assert!(!is_n_vn_regular(&c4, 1).passed());
        assert!(is_n_vn_regular(&corpus::b2(), 1).passed());
        assert!(is_n_vn_regular(&corpus::a3(), 1).passed());
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent_semiring(&corpus::l3()).unwrap().passed());
        assert_eq!(
            is_nilpotent_semiring(&corpus::a3()).unwrap().witness,
            Some(vec![1])
        );
        assert!(is_nilpotent_semiring(&corpus::b2()).unwrap().passed());
        assert!(!is_nilpotent_semiring(&corpus::c4()).unwrap().passed());
    }

    #[test]
    fn boolean_algebras() {
        assert!(is_mult_idempotent(&corpus::b2()).passed());
        assert_eq!(is_mult_idempotent(&corpus::c4()).witness, Some(vec![1]));
        assert!(is_mult_idempotent(&corpus::b2_squared()).passed());
        assert!(is_boolean_algebra(&corpus::b2()).unwrap().passed());
        assert!(is_boolean_algebra(&corpus::b2_squared()).unwrap().passed());
        assert!(!is_boolean_algebra(&corpus::c4()).unwrap().passed());
    }
}
