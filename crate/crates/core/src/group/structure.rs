//! Commutator-based structure predicates and the metacyclic normal form
//! of groups whose Sylow subgroups are all cyclic.
//!
//! Derived and lower central series are computed as explicit element sets
//! inside the ambient group (subgroup spans and normal closures over
//! canonical indices), never as quotients.

use serde::Serialize;

use super::{is_z_group, GroupHandle};
use crate::arith;
use crate::error::{Error, Result};

/// Subgroup spanned by `gens`: membership bitset plus members ascending.
pub(super) fn span(g: &GroupHandle, gens: &[u32]) -> (Vec<u32>, Vec<bool>) {
    let mut inset = vec![false; g.order() as usize];
    inset[GroupHandle::IDENTITY as usize] = true;
    let mut queue = vec![GroupHandle::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !inset[y as usize] {
                inset[y as usize] = true;
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    (queue, inset)
}

/// Smallest subgroup containing `seed` that is normal in the whole group:
/// alternate spanning with conjugation of the working generator list by
/// the ambient generators until nothing new appears.
fn normal_closure(g: &GroupHandle, seed: &[u32]) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    for &s in seed {
        if s != GroupHandle::IDENTITY && !gens.contains(&s) {
            gens.push(s);
        }
    }
    loop {
        let (members, inset) = span(g, &gens);
        let mut grew = false;
        for gi in 0..gens.len() {
            for &a in g.generators() {
                let c = g.conjugate(a, gens[gi]);
                if !inset[c as usize] {
                    gens.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return members;
        }
    }
}

fn commutator(g: &GroupHandle, a: u32, b: u32) -> u32 {
    // [a, b] = (ab)(ba)^-1
    g.mul(g.mul(a, b), g.inv(g.mul(b, a)))
}

/// Commutator subgroup as an element set. Generator-pair commutators,
/// normally closed; the closure makes up for only using generator pairs.
fn derived_subgroup(g: &GroupHandle) -> Vec<u32> {
    let gens = g.generators();
    let mut seed = Vec::new();
    for &a in gens {
        for &b in gens {
            seed.push(commutator(g, a, b));
        }
    }
    normal_closure(g, &seed)
}

/// [H, H] for a full member list of H: all pairwise commutators already
/// generate it exactly, so a plain span suffices.
fn derived_of_members(g: &GroupHandle, members: &[u32]) -> Vec<u32> {
    let mut seed = Vec::new();
    for &a in members {
        for &b in members {
            let c = commutator(g, a, b);
            if c != GroupHandle::IDENTITY && !seed.contains(&c) {
                seed.push(c);
            }
        }
    }
    span(g, &seed).0
}

/// [G, H] for a normal H given by members: seeded by commutators of
/// ambient generators against all of H, then normally closed.
fn bracket_with_group(g: &GroupHandle, members: &[u32]) -> Vec<u32> {
    let mut seed = Vec::new();
    for &a in g.generators() {
        for &x in members {
            seed.push(commutator(g, a, x));
        }
    }
    normal_closure(g, &seed)
}

/// Commutator subgroup is everything.
pub fn is_perfect(g: &GroupHandle) -> bool {
    derived_subgroup(g).len() as u64 == g.order()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StructureReport {
    pub group: String,
    pub order: u64,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_perfect: bool,
    pub center_order: u64,
    pub commutator_order: u64,
    pub abelianization_order: u64,
    pub involution_count: u64,
    /// Subgroup orders along G >= G' >= G'' >= ..., until 1 or a stall.
    pub derived_series: Vec<u64>,
    /// Subgroup orders along G >= [G,G] >= [G,[G,G]] >= ..., same stop rule.
    pub lower_central_series: Vec<u64>,
}

pub fn structure_predicates(g: &GroupHandle) -> StructureReport {
    let order = g.order();
    let cap = 2 + order.ilog2() as usize;

    let mut derived_series = vec![order];
    let mut members = derived_subgroup(g);
    let is_perfect = members.len() as u64 == order;
    let commutator_order = members.len() as u64;
    while derived_series.len() < cap {
        let len = members.len() as u64;
        derived_series.push(len);
        if len == 1 || len == *derived_series.iter().rev().nth(1).unwrap() {
            break;
        }
        members = derived_of_members(g, &members);
    }
    let is_solvable = *derived_series.last().unwrap() == 1;

    let mut lower_central_series = vec![order];
    let mut members = derived_subgroup(g);
    while lower_central_series.len() < cap {
        let len = members.len() as u64;
        lower_central_series.push(len);
        if len == 1 || len == *lower_central_series.iter().rev().nth(1).unwrap() {
            break;
        }
        members = bracket_with_group(g, &members);
    }
    let is_nilpotent = *lower_central_series.last().unwrap() == 1;

    // commuting with every generator is commuting with everything
    let center_order = (0..order as u32)
        .filter(|&x| g.generators().iter().all(|&a| g.mul(x, a) == g.mul(a, x)))
        .count() as u64;

    let involution_count = g.orders().iter().filter(|&&o| o == 2).count() as u64;

    StructureReport {
        group: g.label().to_string(),
        order,
        is_abelian: commutator_order == 1,
        is_nilpotent,
        is_solvable,
        is_perfect,
        center_order,
        commutator_order,
        abelianization_order: order / commutator_order,
        involution_count,
        derived_series,
        lower_central_series,
    }
}

// =====================================================================
// Metacyclic normal form
// =====================================================================

/// G as C_m x| C_n: x generates a normal cyclic subgroup of odd order m,
/// y a complement of coprime order n, and y x y^-1 = x^k.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ZassenhausForm {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    /// Canonical indices of the witness generators.
    pub x: u32,
    pub y: u32,
}

/// Searches odd m descending, witness elements ascending. `Ok(None)`
/// means the search exhausted, which for a genuine Z-group would refute
/// the classification the callers rely on; tests treat it as failure.
pub fn zassenhaus_decompose(g: &GroupHandle) -> Result<Option<ZassenhausForm>> {
    if !is_z_group(g) {
        return Err(Error::NotZGroup);
    }
    let total = g.order();
    for m in arith::divisors(total).into_iter().rev() {
        if m % 2 == 0 || arith::gcd(m, total / m) != 1 {
            continue;
        }
        let n = total / m;
        let Some(&y) = g.elements_of_order(n).first() else {
            continue;
        };
        'candidates: for x in g.elements_of_order(m) {
            let mut pows = Vec::with_capacity(m as usize);
            let mut acc = GroupHandle::IDENTITY;
            for _ in 0..m {
                pows.push(acc);
                acc = g.mul(acc, x);
            }
            for &a in g.generators() {
                if !pows.contains(&g.conjugate(a, x)) {
                    continue 'candidates;
                }
            }
            let conj = g.conjugate(y, x);
            let k = pows
                .iter()
                .position(|&p| p == conj)
                .expect("normality puts y x y^-1 inside <x>") as u64;
            return Ok(Some(ZassenhausForm { m, n, k, x, y }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::MatrixKind;
    use crate::group::{build_group, GroupSpec};

    fn build(spec: GroupSpec) -> GroupHandle {
        build_group(&spec).unwrap()
    }

    fn psl2(q: u64) -> GroupHandle {
        build(GroupSpec::Matrix {
            kind: MatrixKind::Psl2,
            q,
        })
    }

    #[test]
    fn abelian_and_dihedral_reports() {
        let c6 = structure_predicates(&build(GroupSpec::Cyclic(6)));
        assert!(c6.is_abelian && c6.is_nilpotent && c6.is_solvable);
        assert_eq!(
            (c6.center_order, c6.commutator_order, c6.abelianization_order),
            (6, 1, 6)
        );

        let s3 = structure_predicates(&build(GroupSpec::Dihedral(3)));
        assert!(!s3.is_abelian && !s3.is_nilpotent && s3.is_solvable);
        assert_eq!(s3.center_order, 1);
        assert_eq!(s3.derived_series, [6, 3, 1]);
        assert_eq!(s3.lower_central_series, [6, 3, 3]);
        assert_eq!(s3.involution_count, 3);

        let d4 = structure_predicates(&build(GroupSpec::Dihedral(4)));
        assert!(!d4.is_abelian && d4.is_nilpotent && d4.is_solvable);
        assert_eq!(d4.center_order, 2);
        assert_eq!(d4.derived_series, [8, 2, 1]);
        assert_eq!(d4.lower_central_series, [8, 2, 1]);
    }

    #[test]
    fn linear_group_reports() {
        let p7 = structure_predicates(&psl2(7));
        assert!(p7.is_perfect && !p7.is_solvable && !p7.is_nilpotent);
        assert_eq!(p7.commutator_order, 168);
        assert_eq!(p7.abelianization_order, 1);
        assert_eq!(p7.center_order, 1);
        assert_eq!(p7.involution_count, 21);

        let sl27 = structure_predicates(&build(GroupSpec::Matrix {
            kind: MatrixKind::Sl2,
            q: 7,
        }));
        assert_eq!(sl27.involution_count, 1);
        assert_eq!(sl27.center_order, 2);
        assert!(sl27.is_perfect);

        // SL2(F3) is solvable with center {I, -I}
        let sl23 = structure_predicates(&build(GroupSpec::Matrix {
            kind: MatrixKind::Sl2,
            q: 3,
        }));
        assert!(sl23.is_solvable && !sl23.is_nilpotent && !sl23.is_perfect);
        assert_eq!(sl23.center_order, 2);
        assert_eq!(sl23.involution_count, 1);
        assert_eq!(sl23.derived_series, [24, 8, 2, 1]);
    }

    #[test]
    fn flag_consistency_over_sample() {
        let specs = [
            GroupSpec::Cyclic(1),
            GroupSpec::Cyclic(16),
            GroupSpec::Abelian(vec![6, 2]),
            GroupSpec::Dihedral(6),
            GroupSpec::Semidirect { m: 7, n: 3, k: 2 },
            GroupSpec::Semidirect { m: 11, n: 10, k: 2 },
            GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(3)]),
            GroupSpec::Matrix {
                kind: MatrixKind::Gl2,
                q: 3,
            },
            GroupSpec::Matrix {
                kind: MatrixKind::Psl2,
                q: 5,
            },
        ];
        for spec in specs {
            let g = build(spec);
            let r = structure_predicates(&g);
            if r.is_abelian {
                assert!(r.is_nilpotent, "{}", r.group);
            }
            if r.is_nilpotent {
                assert!(r.is_solvable, "{}", r.group);
            }
            assert_eq!(r.is_perfect, r.commutator_order == r.order, "{}", r.group);
            assert_eq!(
                r.commutator_order * r.abelianization_order,
                r.order,
                "{}",
                r.group
            );
            assert_eq!(r.is_abelian, r.center_order == r.order, "{}", r.group);
            assert!(r.is_solvable != r.is_perfect || r.order == 1, "{}", r.group);
        }
    }

    #[test]
    fn zassenhaus_frozen_forms() {
        let s3 = build(GroupSpec::Dihedral(3));
        let f = zassenhaus_decompose(&s3).unwrap().unwrap();
        assert_eq!((f.m, f.n, f.k), (3, 2, 2));

        let c12 = build(GroupSpec::Cyclic(12));
        let f = zassenhaus_decompose(&c12).unwrap().unwrap();
        assert_eq!((f.m, f.n, f.k), (3, 4, 1));

        let frob21 = build(GroupSpec::Semidirect { m: 7, n: 3, k: 2 });
        let f = zassenhaus_decompose(&frob21).unwrap().unwrap();
        assert_eq!((f.m, f.n, f.k), (7, 3, 2));
    }

    #[test]
    fn zassenhaus_rejects_non_z_groups() {
        for spec in [
            GroupSpec::Dihedral(4),
            GroupSpec::Abelian(vec![2, 2]),
            GroupSpec::Matrix {
                kind: MatrixKind::Psl2,
                q: 7,
            },
        ] {
            assert_eq!(zassenhaus_decompose(&build(spec)), Err(Error::NotZGroup));
        }
    }

    #[test]
    fn zassenhaus_across_z_groups() {
        let specs = [
            GroupSpec::Cyclic(1),
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(8),
            GroupSpec::Cyclic(15),
            GroupSpec::Cyclic(255),
            GroupSpec::Dihedral(3),
            GroupSpec::Dihedral(5),
            GroupSpec::Semidirect { m: 7, n: 3, k: 2 },
            GroupSpec::Semidirect { m: 11, n: 10, k: 2 },
            GroupSpec::Semidirect { m: 5, n: 4, k: 2 },
        ];
        for spec in specs {
            let g = build(spec.clone());
            let f = zassenhaus_decompose(&g)
                .unwrap()
                .unwrap_or_else(|| panic!("{spec}: decomposition must exist"));
            assert_eq!(f.m % 2, 1, "{spec}: m must be odd");
            assert_eq!(f.m * f.n, g.order(), "{spec}");
            assert_eq!(arith::gcd(f.m, f.n), 1, "{spec}");
            assert_eq!(g.element_order(f.x), f.m, "{spec}");
            assert_eq!(g.element_order(f.y), f.n, "{spec}");

            // the witness relations pin the abstract type, so rebuilding
            // from (m, n, k) must reproduce the order histogram
            if f.m > 1 {
                let rebuilt = build(GroupSpec::Semidirect {
                    m: f.m,
                    n: f.n,
                    k: f.k,
                });
                assert_eq!(
                    rebuilt.order_profile().histogram,
                    g.order_profile().histogram,
                    "{spec}"
                );
            }
        }
    }
}
