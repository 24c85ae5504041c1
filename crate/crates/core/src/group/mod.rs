//! Finite groups as explicit element tables.
//!
//! A `GroupSpec` names a group; `build_group` enumerates it breadth-first
//! from its spec-ordered generators and hands back a `GroupHandle` whose
//! canonical element indices are the BFS discovery order (index 0 is the
//! identity). Everything downstream (order profiles, Sylow subgroups,
//! generation searches, reported witnesses) speaks in these indices, so a
//! fixed spec always reproduces the same numbers.
//!
//! Multiplication uses a dense index table for groups up to
//! `MUL_TABLE_MAX` elements and backend coordinate arithmetic plus a
//! code -> index map above that; the table is built lazily on first use.

mod backend;
mod structure;
mod sylow;

pub use structure::{
    is_perfect, structure_predicates, zassenhaus_decompose, StructureReport, ZassenhausForm,
};
pub use sylow::{has_cyclic_index2_sylow2, sylow_subgroup};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::fq::MatrixKind;
use backend::Backend;

/// Hard ceiling on enumerated group size unless a caller raises it.
pub const DEFAULT_ORDER_CAP: u64 = 2_000_000;

/// Largest group that gets a dense index-level multiplication table.
pub const MUL_TABLE_MAX: u64 = 4096;

// =====================================================================
// Specs
// =====================================================================

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupSpec {
    /// C_n.
    Cyclic(u64),
    /// Direct product of cyclic factors, in the given order.
    Abelian(Vec<u64>),
    /// D_n of order 2n.
    Dihedral(u64),
    /// C_m x| C_n, the generator of C_n acting by x -> x^k.
    Semidirect { m: u64, n: u64, k: u64 },
    /// Direct product of arbitrary specs.
    Product(Vec<GroupSpec>),
    /// GL2 / SL2 / PSL2 over F_q.
    Matrix { kind: MatrixKind, q: u64 },
}

impl GroupSpec {
    /// Validates parameters and returns the closed-form order.
    pub fn validated_order(&self) -> Result<u128> {
        match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::ZeroOrderParameter);
                }
                Ok(*n as u128)
            }
            GroupSpec::Abelian(fs) => {
                if fs.is_empty() {
                    return Err(Error::EmptySpec);
                }
                if fs.contains(&0) {
                    return Err(Error::ZeroOrderParameter);
                }
                Ok(fs.iter().map(|&f| f as u128).product())
            }
            GroupSpec::Dihedral(n) => {
                if *n == 0 {
                    return Err(Error::ZeroOrderParameter);
                }
                Ok(2 * *n as u128)
            }
            GroupSpec::Semidirect { m, n, k } => {
                if *m == 0 || *n == 0 {
                    return Err(Error::ZeroOrderParameter);
                }
                let ok = arith::gcd(k % m, *m) == 1 && arith::pow_mod(*k, *n, *m) == 1 % m;
                if !ok {
                    return Err(Error::InvalidSemidirectAction {
                        m: *m,
                        n: *n,
                        k: *k,
                    });
                }
                Ok(*m as u128 * *n as u128)
            }
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::EmptySpec);
                }
                parts.iter().map(|p| p.validated_order()).product()
            }
            GroupSpec::Matrix { kind, q } => {
                arith::prime_power(*q).ok_or(Error::NotPrimePower(*q))?;
                Ok(kind.order(*q))
            }
        }
    }
}

/// Canonical text form; the CLI grammar parses exactly this shape back.
/// All-cyclic products render identically to the abelian spec with the
/// same factors, and the parser always reads that text as abelian.
impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Abelian(fs) => {
                let parts: Vec<String> = fs.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Semidirect { m, n, k } => write!(f, "C{m}:C{n}({k})"),
            GroupSpec::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Matrix { kind, q } => write!(f, "{}({q})", kind.name()),
        }
    }
}

// =====================================================================
// Handles
// =====================================================================

pub struct GroupHandle {
    label: String,
    spec: Option<GroupSpec>,
    backend: Arc<Backend>,
    /// Canonical index -> code, BFS discovery order; elements[0] is the identity.
    elements: Vec<u64>,
    index: HashMap<u64, u32>,
    generators: Vec<u32>,
    orders: OnceLock<Vec<u64>>,
    mul_table: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHandle({}, order {})", self.label, self.order())
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<GroupHandle> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: u64) -> Result<GroupHandle> {
    let predicted = spec.validated_order()?;
    if predicted > cap as u128 {
        return Err(Error::OrderCapExceeded {
            spec: spec.clone(),
            predicted: u64::try_from(predicted).unwrap_or(u64::MAX),
            cap,
        });
    }
    let backend = Arc::new(Backend::from_spec(spec)?);
    let gen_codes = backend.generators();
    let handle = GroupHandle::enumerate(spec.to_string(), Some(spec.clone()), backend, &gen_codes);
    assert_eq!(
        handle.order() as u128,
        predicted,
        "{spec}: enumeration disagrees with the closed-form order"
    );
    Ok(handle)
}

impl GroupHandle {
    fn enumerate(
        label: String,
        spec: Option<GroupSpec>,
        backend: Arc<Backend>,
        gen_codes: &[u64],
    ) -> GroupHandle {
        let id = backend.identity();
        let mut elements = vec![id];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0usize;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for &g in gen_codes {
                let y = backend.mul(x, g);
                if !index.contains_key(&y) {
                    index.insert(y, elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        let generators = gen_codes.iter().map(|g| index[g]).collect();
        GroupHandle {
            label,
            spec,
            backend,
            elements,
            index,
            generators,
            orders: OnceLock::new(),
            mul_table: OnceLock::new(),
        }
    }

    /// Subgroup generated by the given elements, re-enumerated breadth-first
    /// so the result is a first-class handle with its own canonical indices.
    pub fn subgroup(&self, gens: &[u32], label: String) -> GroupHandle {
        let gen_codes: Vec<u64> = gens.iter().map(|&i| self.elements[i as usize]).collect();
        GroupHandle::enumerate(label, None, Arc::clone(&self.backend), &gen_codes)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// The identity always enumerates first.
    pub const IDENTITY: u32 = 0;

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn code(&self, i: u32) -> u64 {
        self.elements[i as usize]
    }

    pub fn index_of_code(&self, code: u64) -> Option<u32> {
        self.index.get(&code).copied()
    }

    fn table(&self) -> Option<&[u32]> {
        self.mul_table
            .get_or_init(|| {
                let n = self.elements.len();
                if self.order() > MUL_TABLE_MAX {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let c = self.backend.mul(self.elements[i], self.elements[j]);
                        t.push(self.index[&c]);
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match self.table() {
            Some(t) => t[i as usize * self.elements.len() + j as usize],
            None => {
                let c = self
                    .backend
                    .mul(self.elements[i as usize], self.elements[j as usize]);
                self.index[&c]
            }
        }
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.index[&self.backend.inv(self.elements[i as usize])]
    }

    /// g x g^-1.
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, i: u32, e: u64) -> u32 {
        self.index[&self.pow_code(self.elements[i as usize], e)]
    }

    fn pow_code(&self, code: u64, mut e: u64) -> u64 {
        let mut base = code;
        let mut acc = self.backend.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.backend.mul(acc, base);
            }
            base = self.backend.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Per-element orders, canonical index order. Small orders fall out of
    /// a direct power walk; past WALK_LIMIT the walk switches to divisors
    /// of |G| ascending, taking the first power landing on the identity.
    pub fn orders(&self) -> &[u64] {
        const WALK_LIMIT: u64 = 64;
        self.orders.get_or_init(|| {
            let divs = arith::divisors(self.order());
            let id = self.backend.identity();
            self.elements
                .iter()
                .map(|&c| {
                    let mut acc = c;
                    for t in 1..=WALK_LIMIT.min(self.order()) {
                        if acc == id {
                            return t;
                        }
                        acc = self.backend.mul(acc, c);
                    }
                    *divs
                        .iter()
                        .find(|&&d| d > WALK_LIMIT && self.pow_code(c, d) == id)
                        .expect("element order divides the group order")
                })
                .collect()
        })
    }

    pub fn element_order(&self, i: u32) -> u64 {
        self.orders()[i as usize]
    }

    pub fn max_element_order(&self) -> u64 {
        *self.orders().iter().max().expect("group is nonempty")
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.orders().iter().fold(1, |acc, &o| arith::lcm(acc, o))
    }

    pub fn order_profile(&self) -> OrderProfile {
        let orders = self.orders();
        let mut histogram = std::collections::BTreeMap::new();
        for &o in orders {
            *histogram.entry(o).or_insert(0u64) += 1;
        }
        OrderProfile {
            group: self.label.clone(),
            order: self.order(),
            exponent: self.exponent(),
            orders: orders.to_vec(),
            histogram,
        }
    }

    /// Indices of elements of exact order m, ascending.
    pub fn elements_of_order(&self, m: u64) -> Vec<u32> {
        self.orders()
            .iter()
            .enumerate()
            .filter(|&(_, &o)| o == m)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Whether the given elements generate the whole group.
    pub fn generates(&self, gens: &[u32]) -> bool {
        self.subgroup_size_bounded(gens, self.order()) == self.order()
    }

    /// Size of the generated subgroup, stopping early once it exceeds
    /// `bound` (returns bound + 1 in that case; cannot happen when bound
    /// is the group order).
    pub fn subgroup_size_bounded(&self, gens: &[u32], bound: u64) -> u64 {
        let mut seen = vec![false; self.elements.len()];
        seen[0] = true;
        let mut frontier = vec![Self::IDENTITY];
        let mut count = 1u64;
        let mut head = 0usize;
        while head < frontier.len() {
            let x = frontier[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    if count > bound {
                        return count;
                    }
                    frontier.push(y);
                }
            }
        }
        count
    }

    /// One representative per conjugacy class among elements of exact order
    /// m; each representative is the least index in its class, listed
    /// ascending.
    pub fn class_reps_of_order(&self, m: u64) -> Vec<u32> {
        let members = self.elements_of_order(m);
        let mut claimed = vec![false; self.elements.len()];
        let mut reps = Vec::new();
        for &x in &members {
            if claimed[x as usize] {
                continue;
            }
            reps.push(x);
            for g in 0..self.elements.len() as u32 {
                claimed[self.conjugate(g, x) as usize] = true;
            }
        }
        reps
    }

    pub fn format_element(&self, i: u32) -> String {
        self.backend.format(self.elements[i as usize])
    }

    #[cfg(test)]
    pub(crate) fn codes(&self) -> &[u64] {
        &self.elements
    }
}

// =====================================================================
// Order profiles
// =====================================================================

/// The order data of one group: per-element orders in canonical index
/// order, the exponent, and the order histogram. This is the one payload
/// the CLI persists in its cache.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrderProfile {
    pub group: String,
    pub order: u64,
    pub exponent: u64,
    pub orders: Vec<u64>,
    pub histogram: std::collections::BTreeMap<u64, u64>,
}

pub fn order_profile(g: &GroupHandle) -> OrderProfile {
    g.order_profile()
}

/// Every Sylow subgroup cyclic, read off the order profile: for each prime
/// power p^e maximal in |G| there must be an element of order p^e.
pub fn is_z_group(g: &GroupHandle) -> bool {
    let orders = g.orders();
    arith::factorize(g.order())
        .into_iter()
        .all(|(p, e)| orders.contains(&p.pow(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64) -> GroupSpec {
        GroupSpec::Cyclic(n)
    }

    #[test]
    fn builds_match_closed_forms() {
        for (spec, order) in [
            (c(1), 1),
            (c(15), 15),
            (GroupSpec::Abelian(vec![6, 2]), 12),
            (GroupSpec::Dihedral(1), 2),
            (GroupSpec::Dihedral(4), 8),
            (GroupSpec::Semidirect { m: 7, n: 3, k: 2 }, 21),
            (GroupSpec::Semidirect { m: 11, n: 10, k: 2 }, 110),
            (GroupSpec::Product(vec![c(3), GroupSpec::Dihedral(4)]), 24),
            (
                GroupSpec::Matrix {
                    kind: MatrixKind::Gl2,
                    q: 3,
                },
                48,
            ),
            (
                GroupSpec::Matrix {
                    kind: MatrixKind::Psl2,
                    q: 7,
                },
                168,
            ),
        ] {
            let g = build_group(&spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            // identity sits at index 0 and behaves like one
            for i in 0..g.order().min(50) as u32 {
                assert_eq!(g.mul(GroupHandle::IDENTITY, i), i);
                assert_eq!(g.mul(i, GroupHandle::IDENTITY), i);
                assert_eq!(g.mul(i, g.inv(i)), GroupHandle::IDENTITY);
            }
        }
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(matches!(build_group(&c(0)), Err(Error::ZeroOrderParameter)));
        let bad = GroupSpec::Semidirect { m: 7, n: 3, k: 3 }; // 3^3 = 27 = 6 (mod 7)
        assert!(matches!(
            build_group(&bad),
            Err(Error::InvalidSemidirectAction { m: 7, n: 3, k: 3 })
        ));
        let big = GroupSpec::Matrix {
            kind: MatrixKind::Psl2,
            q: 163,
        };
        assert!(matches!(big.validated_order(), Ok(n) if n > 2_000_000));
        assert!(matches!(
            build_group(&big),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            build_group(&GroupSpec::Matrix {
                kind: MatrixKind::Psl2,
                q: 12
            }),
            Err(Error::NotPrimePower(12))
        ));
    }

    #[test]
    fn products_with_matrix_parts_enumerate() {
        // The matrix identity has a nonzero code, so the product identity
        // is a nonzero mixed-radix combination.
        let spec = GroupSpec::Product(vec![
            c(2),
            GroupSpec::Matrix {
                kind: MatrixKind::Psl2,
                q: 7,
            },
        ]);
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 336);
        assert_eq!(g.exponent(), 84);
        for i in (0..336).step_by(17) {
            assert_eq!(g.mul(GroupHandle::IDENTITY, i), i);
            assert_eq!(g.mul(i, g.inv(i)), GroupHandle::IDENTITY);
        }
    }

    #[test]
    fn enumeration_is_reproducible() {
        let spec = GroupSpec::Matrix {
            kind: MatrixKind::Psl2,
            q: 7,
        };
        let a = build_group(&spec).unwrap();
        let b = build_group(&spec).unwrap();
        assert_eq!(a.codes(), b.codes());
        assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn associativity_spot_checks() {
        for spec in [
            GroupSpec::Dihedral(6),
            GroupSpec::Semidirect { m: 11, n: 10, k: 2 },
            GroupSpec::Product(vec![GroupSpec::Dihedral(3), c(4)]),
        ] {
            let g = build_group(&spec).unwrap();
            let n = g.order() as u32;
            for i in (0..n).step_by(3) {
                for j in (0..n).step_by(5) {
                    for k in (0..n).step_by(7) {
                        assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)));
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_indices_are_values() {
        // BFS from the generator 1 discovers 0,1,2,... in value order
        let g = build_group(&c(10)).unwrap();
        for i in 0..10u32 {
            assert_eq!(g.code(i), i as u64);
        }
        assert_eq!(g.element_order(5), 2);
        assert_eq!(g.element_order(2), 5);
        assert_eq!(g.element_order(3), 10);
    }

    #[test]
    fn order_profiles_small() {
        let g = build_group(&GroupSpec::Abelian(vec![6, 2])).unwrap();
        let p = g.order_profile();
        assert_eq!(p.order, 12);
        assert_eq!(p.exponent, 6);
        let hist: Vec<(u64, u64)> = p.histogram.into_iter().collect();
        assert_eq!(hist, [(1, 1), (2, 3), (3, 2), (6, 6)]);

        let d4 = build_group(&GroupSpec::Dihedral(4)).unwrap();
        assert_eq!(d4.exponent(), 4);
        assert_eq!(d4.elements_of_order(2).len(), 5);
    }

    #[test]
    fn profile_internal_consistency() {
        for spec in [
            c(60),
            GroupSpec::Dihedral(15),
            GroupSpec::Semidirect { m: 11, n: 10, k: 2 },
            GroupSpec::Matrix {
                kind: MatrixKind::Sl2,
                q: 5,
            },
        ] {
            let g = build_group(&spec).unwrap();
            let p = g.order_profile();
            assert_eq!(p.histogram.values().sum::<u64>(), p.order);
            assert_eq!(p.histogram[&1], 1);
            for &o in p.histogram.keys() {
                assert_eq!(p.order % o, 0, "order {o} must divide |G|");
                assert_eq!(p.exponent % o, 0, "order {o} must divide the exponent");
            }
            assert_eq!(p.order % p.exponent, 0);
        }
    }

    #[test]
    fn z_group_examples() {
        assert!(is_z_group(&build_group(&c(15)).unwrap()));
        assert!(is_z_group(&build_group(&GroupSpec::Dihedral(3)).unwrap())); // S3
        assert!(!is_z_group(&build_group(&GroupSpec::Dihedral(4)).unwrap()));
        assert!(!is_z_group(
            &build_group(&GroupSpec::Abelian(vec![2, 2])).unwrap()
        ));
    }

    #[test]
    fn conjugacy_reps() {
        // S3: the three reflections form one class
        let s3 = build_group(&GroupSpec::Dihedral(3)).unwrap();
        assert_eq!(s3.class_reps_of_order(2).len(), 1);
        assert_eq!(s3.class_reps_of_order(3).len(), 1);
        // abelian: every element is its own class
        let a = build_group(&GroupSpec::Abelian(vec![2, 2])).unwrap();
        assert_eq!(a.class_reps_of_order(2).len(), 3);
    }

    #[test]
    fn generates_and_subgroups() {
        let g = build_group(&GroupSpec::Dihedral(6)).unwrap();
        let r = g.generators()[0];
        let f = g.generators()[1];
        assert!(g.generates(&[r, f]));
        assert!(!g.generates(&[r]));
        let rot = g.subgroup(&[r], "rot(D6)".into());
        assert_eq!(rot.order(), 6);
        assert_eq!(rot.exponent(), 6);
    }
}
