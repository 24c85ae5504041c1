//! Built-in group catalog: the fixed spec list sweeps and reports range
//! over.  Entries may exceed the enumeration cap; sweeps filter by
//! predicted order before building.

use crate::arith;
use crate::fq::MatrixKind;
use crate::group::GroupSpec;

pub fn builtin_catalog() -> Vec<GroupSpec> {
    let mut out = Vec::new();

    for n in 1..=100u64 {
        out.push(GroupSpec::Cyclic(n));
    }
    for n in [105, 128, 210, 256, 512, 1000, 1024, 1155, 2000] {
        out.push(GroupSpec::Cyclic(n));
    }

    for n in 2..=50u64 {
        out.push(GroupSpec::Dihedral(n));
    }

    abelian_chains(128, &mut out);

    // One metacyclic group per odd modulus: k = 2 acting with its full
    // multiplicative order.
    for m in (3..=99u64).step_by(2) {
        let n = arith::ord_mod(2, m);
        out.push(GroupSpec::Semidirect { m, n, k: 2 });
    }

    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
        out.push(GroupSpec::Matrix {
            kind: MatrixKind::Psl2,
            q,
        });
    }
    for q in [2, 3, 4, 5, 7, 8, 9, 11] {
        out.push(GroupSpec::Matrix {
            kind: MatrixKind::Sl2,
            q,
        });
    }
    for q in [2, 3, 4, 5] {
        out.push(GroupSpec::Matrix {
            kind: MatrixKind::Gl2,
            q,
        });
    }

    out.push(GroupSpec::Product(vec![
        GroupSpec::Cyclic(3),
        GroupSpec::Dihedral(4),
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Dihedral(3),
        GroupSpec::Cyclic(4),
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Dihedral(5),
        GroupSpec::Dihedral(3),
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Cyclic(2),
        GroupSpec::Matrix {
            kind: MatrixKind::Psl2,
            q: 7,
        },
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Matrix {
            kind: MatrixKind::Sl2,
            q: 3,
        },
        GroupSpec::Cyclic(5),
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Cyclic(7),
        GroupSpec::Semidirect { m: 3, n: 2, k: 2 },
    ]));

    out
}

fn abelian_chains(bound: u64, out: &mut Vec<GroupSpec>) {
    out.extend(invariant_chains(bound).into_iter().map(GroupSpec::Abelian));
}

/// Invariant-factor chains d_1 | d_2 | ... with at least two factors, each
/// at least 2, and product at most `bound`.
pub fn invariant_chains(bound: u64) -> Vec<Vec<u64>> {
    fn rec(chain: &mut Vec<u64>, product: u64, bound: u64, out: &mut Vec<Vec<u64>>) {
        if chain.len() >= 2 {
            out.push(chain.clone());
        }
        let last = *chain.last().unwrap();
        let mut next = last;
        while product * next <= bound {
            chain.push(next);
            rec(chain, product * next, bound, out);
            chain.pop();
            next += last;
        }
    }
    let mut out = Vec::new();
    for d1 in 2..=bound {
        if d1 * d1 > bound {
            break;
        }
        let mut chain = vec![d1];
        rec(&mut chain, d1, bound, &mut out);
    }
    out
}
