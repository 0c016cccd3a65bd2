//! Canonical forms for isomorphism rejection.
//!
//! Elements are first sorted into cells by a signature that any
//! constant-preserving isomorphism respects (constant flags, order profile,
//! behaviour of squares and negations). The key is the signature sequence
//! followed by the lexicographically least table encoding over all
//! relabellings that keep the cell order, so two algebras get equal keys
//! exactly when some constant-fixing permutation maps one onto the other.

use itertools::Itertools;

use crate::table::AlgebraTable;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

type Signature = [u8; 8];

fn signature(a: &AlgebraTable, x: usize) -> Signature {
    let n = a.size();
    let below = (0..n).filter(|&y| a.leq(y, x)).count() as u8;
    let above = (0..n).filter(|&y| a.leq(x, y)).count() as u8;
    let sq = a.mult(x, x);
    let fixed_neg = |t: Option<&[usize]>| match t {
        None => 0,
        Some(t) if t[x] == x => 2,
        Some(_) => 1,
    };
    [
        u8::from(x == a.one()),
        u8::from(Some(x) == a.zero()),
        below,
        above,
        u8::from(sq == x),
        u8::from(Some(sq) == a.zero()),
        fixed_neg(a.lneg()),
        fixed_neg(a.rneg()),
    ]
}

fn encode(a: &AlgebraTable, order: &[usize], pos: &[usize], out: &mut Vec<u8>) {
    // `order[new] = old`, `pos[old] = new`
    out.clear();
    for &x in order {
        for &y in order {
            out.push(pos[a.join(x, y)] as u8);
        }
    }
    for &x in order {
        for &y in order {
            out.push(pos[a.mult(x, y)] as u8);
        }
    }
    for t in [a.lneg(), a.rneg()].into_iter().flatten() {
        for &x in order {
            out.push(pos[t[x]] as u8);
        }
    }
}

/// Canonical key of `a`. Equal keys hold exactly for isomorphic algebras.
pub fn canonical_key(a: &AlgebraTable) -> CanonicalKey {
    let n = a.size();
    assert!(n <= u8::MAX as usize, "carrier too large for canonical key");
    let sigs: Vec<Signature> = (0..n).map(|x| signature(a, x)).collect();
    let mut elems: Vec<usize> = (0..n).collect();
    elems.sort_by_key(|&x| sigs[x]);
    let cells: Vec<Vec<usize>> = elems
        .iter()
        .copied()
        .chunk_by(|&x| sigs[x])
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();

    let mut header = vec![
        n as u8,
        u8::from(a.zero().is_some()),
        u8::from(a.lneg().is_some()),
        u8::from(a.rneg().is_some()),
    ];
    for &x in &elems {
        header.extend_from_slice(&sigs[x]);
    }

    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::with_capacity(2 * n * n + 2 * n);
    let mut pos = vec![0usize; n];
    let per_cell = cells
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>());
    for choice in per_cell.multi_cartesian_product() {
        let order: Vec<usize> = choice.into_iter().flatten().collect();
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        encode(a, &order, &pos, &mut buf);
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    // multi_cartesian_product of zero iterators yields nothing
    let body = best.unwrap_or_default();
    header.extend(body);
    CanonicalKey(header)
}
