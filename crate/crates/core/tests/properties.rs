//! Property tests over enumerated instances and random relabellings.

use std::sync::OnceLock;

use proptest::prelude::*;

use invsr::axioms::is_idempotent_semiring;
use invsr::decide::{is_injective, is_projective};
use invsr::enumerate::{enumerate_algebras, lattices, AlgebraClass, SearchSpec};
use invsr::format::{emit, emit_semimodule, parse, parse_algebra_text};
use invsr::semimodule::{all_subsemimodules, free, regular, restrict};
use invsr::{canonical_key, AlgebraTable};

/// A mixed pool: every class up to size 4, with negations where declared.
fn pool() -> &'static [AlgebraTable] {
    static POOL: OnceLock<Vec<AlgebraTable>> = OnceLock::new();
    POOL.get_or_init(|| {
        AlgebraClass::ALL
            .into_iter()
            .flat_map(|c| enumerate_algebras(&SearchSpec::new(c, 4)).unwrap())
            .collect()
    })
}

fn relabelled() -> impl Strategy<Value = (AlgebraTable, AlgebraTable)> {
    (0..pool().len())
        .prop_flat_map(|i| {
            let a = pool()[i].clone();
            let perm = Just((0..a.size()).collect::<Vec<usize>>()).prop_shuffle();
            (Just(a), perm)
        })
        .prop_map(|(a, perm)| {
            let b = a.permuted(&perm);
            (a, b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_key_ignores_relabelling((a, b) in relabelled()) {
        prop_assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn emit_parse_roundtrip((_a, b) in relabelled()) {
        let back = parse_algebra_text(&emit(&b)).unwrap();
        prop_assert!(back.same_tables(&b));
        prop_assert_eq!(back.name(), b.name());
    }

    #[test]
    fn derived_meet_is_greatest_lower_bound(n in 1usize..=6, pick in 0usize..64, x in 0usize..6, y in 0usize..6) {
        let ls = lattices(n);
        let l = &ls[pick % ls.len()].order;
        let (x, y) = (x % n, y % n);
        let m = l.meet(x, y);
        prop_assert!(l.leq(m, x) && l.leq(m, y));
        for z in 0..n {
            if l.leq(z, x) && l.leq(z, y) {
                prop_assert!(l.leq(z, m));
            }
        }
    }

    #[test]
    fn join_irreducibles_generate(n in 1usize..=7, pick in 0usize..64) {
        let ls = lattices(n);
        let l = &ls[pick % ls.len()].order;
        let ji = l.join_irreducibles();
        for x in 0..n {
            let below = ji.iter().copied().filter(|&j| l.leq(j, x));
            prop_assert_eq!(l.join_all(below), x);
        }
    }

    #[test]
    fn certificates_verify(i in 0usize..1000, pick in 0usize..10_000, rank in 1usize..=2) {
        let a = &pool()[i % pool().len()];
        // semimodules need an absorbing zero
        prop_assume!(is_idempotent_semiring(a).unwrap().passed());
        let outer = if rank == 1 { regular(a).unwrap() } else { free(a, 2).unwrap() };
        let subs = all_subsemimodules(&outer);
        let m = restrict(&outer, &subs[pick % subs.len()], "S").unwrap();
        for d in [is_injective(&m).unwrap(), is_projective(&m).unwrap()] {
            prop_assert_eq!(d.holds, d.retraction.is_some());
            if let Some(r) = &d.retraction {
                prop_assert!(r.verify(&m).passed());
            }
        }
        let text = format!("{}\n{}", emit(a), emit_semimodule(&m));
        let doc = parse(&text).unwrap();
        prop_assert_eq!(doc.semimodules[0].action_cells(), m.action_cells());
    }
}
