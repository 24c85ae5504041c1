//! Generating-vector search: witnesses showing a group acts with a given
//! branching datum, and the smallest genus such a witness exists for.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::fuchsian::{action_genus, Signature};
use crate::group::GroupHandle;

/// Images of the surface generators: h hyperbolic pairs (a_j, b_j) and r
/// branch images x_i with prod [a_j,b_j] * prod x_i equal to the identity,
/// ord(x_i) = m_i exactly, and the images generating the whole group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratingVector {
    pub hyperbolic: Vec<(u32, u32)>,
    pub elliptic: Vec<u32>,
}

/// Lexicographically least witness over the tuple
/// (a_1, b_1, ..., a_h, b_h, x_1, ..., x_{r-1}); the last branch image is
/// determined by the product relation.  At h = 0 the first branch image
/// ranges over conjugacy-class representatives only: conjugating a whole
/// vector preserves validity, and the least witness's first entry is the
/// least index in its class, so the restriction keeps the search exact.
pub fn genvec_search(g: &GroupHandle, sig: &Signature) -> Option<GeneratingVector> {
    let order = g.order();
    let h = sig.orbit_genus() as usize;
    let periods = sig.periods();
    let r = periods.len();
    for &m in periods {
        if g.elements_of_order(m).is_empty() {
            return None;
        }
    }

    let free_elliptic: Vec<Vec<u32>> = periods
        .iter()
        .take(r.saturating_sub(1))
        .enumerate()
        .map(|(i, &m)| {
            if i == 0 && h == 0 {
                g.class_reps_of_order(m)
            } else {
                g.elements_of_order(m)
            }
        })
        .collect();

    // Per remaining free slot, the largest factor it can multiply a
    // subgroup's size by.  Valid for abelian groups only, where
    // |<S, x>| <= |<S>| * ord(x).
    let abelian = {
        let gens = g.generators();
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| g.mul(a, b) == g.mul(b, a))
        })
    };
    let mut growth = Vec::new();
    for _ in 0..2 * h {
        growth.push(g.exponent());
    }
    for i in 0..free_elliptic.len() {
        growth.push(periods[i]);
    }
    let mut growth_suffix = vec![1u64; growth.len() + 1];
    for i in (0..growth.len()).rev() {
        growth_suffix[i] = growth_suffix[i + 1].saturating_mul(growth[i]);
    }

    let mut search = Search {
        g,
        order,
        h,
        periods,
        free_elliptic,
        abelian,
        growth_suffix,
        chosen: Vec::new(),
    };
    search.rec(0, GroupHandle::IDENTITY, None)
}

struct Search<'a> {
    g: &'a GroupHandle,
    order: u64,
    h: usize,
    periods: &'a [u64],
    free_elliptic: Vec<Vec<u32>>,
    abelian: bool,
    growth_suffix: Vec<u64>,
    chosen: Vec<u32>,
}

impl Search<'_> {
    /// acc is the relation prefix over completed pairs and chosen branch
    /// images; pending holds an a_j awaiting its b_j.
    fn rec(&mut self, slot: usize, acc: u32, pending: Option<u32>) -> Option<GeneratingVector> {
        let free_total = 2 * self.h + self.free_elliptic.len();
        if slot == free_total {
            return self.finish(acc);
        }
        if self.abelian && slot > 0 {
            let span = self.g.subgroup_size_bounded(&self.chosen, self.order);
            if span.saturating_mul(self.growth_suffix[slot]) < self.order {
                return None;
            }
        }
        if slot < 2 * self.h {
            for v in 0..self.order as u32 {
                self.chosen.push(v);
                let hit = match pending {
                    None => self.rec(slot + 1, acc, Some(v)),
                    Some(a) => {
                        let comm = self.g.mul(
                            self.g.mul(a, v),
                            self.g.mul(self.g.inv(a), self.g.inv(v)),
                        );
                        self.rec(slot + 1, self.g.mul(acc, comm), None)
                    }
                };
                if hit.is_some() {
                    return hit;
                }
                self.chosen.pop();
            }
        } else {
            let idx = slot - 2 * self.h;
            for i in 0..self.free_elliptic[idx].len() {
                let v = self.free_elliptic[idx][i];
                self.chosen.push(v);
                let hit = self.rec(slot + 1, self.g.mul(acc, v), None);
                if hit.is_some() {
                    return hit;
                }
                self.chosen.pop();
            }
        }
        None
    }

    fn finish(&mut self, acc: u32) -> Option<GeneratingVector> {
        let r = self.periods.len();
        let last = if r > 0 {
            let x = self.g.inv(acc);
            if self.g.element_order(x) != self.periods[r - 1] {
                return None;
            }
            Some(x)
        } else {
            if acc != GroupHandle::IDENTITY {
                return None;
            }
            None
        };
        // The solved image is a word in the chosen ones, so spanning is
        // decided by the free slots alone.
        if self.g.subgroup_size_bounded(&self.chosen, self.order) != self.order {
            return None;
        }
        let hyperbolic = self.chosen[..2 * self.h]
            .chunks(2)
            .map(|p| (p[0], p[1]))
            .collect();
        let mut elliptic: Vec<u32> = self.chosen[2 * self.h..].to_vec();
        if let Some(x) = last {
            elliptic.push(x);
        }
        Some(GeneratingVector {
            hyperbolic,
            elliptic,
        })
    }
}

/// Independent re-check of a claimed witness: shape, exact orders, the
/// product relation, and generation.
pub fn verify_genvec(g: &GroupHandle, sig: &Signature, v: &GeneratingVector) -> bool {
    if v.hyperbolic.len() != sig.orbit_genus() as usize
        || v.elliptic.len() != sig.periods().len()
    {
        return false;
    }
    for (&x, &m) in v.elliptic.iter().zip(sig.periods()) {
        if g.element_order(x) != m {
            return false;
        }
    }
    let mut acc = GroupHandle::IDENTITY;
    for &(a, b) in &v.hyperbolic {
        let comm = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
        acc = g.mul(acc, comm);
    }
    for &x in &v.elliptic {
        acc = g.mul(acc, x);
    }
    if acc != GroupHandle::IDENTITY {
        return false;
    }
    let mut gens: Vec<u32> = Vec::new();
    for &(a, b) in &v.hyperbolic {
        gens.push(a);
        gens.push(b);
    }
    gens.extend_from_slice(&v.elliptic);
    g.generates(&gens)
}

/// Data with the exact covering genus: measure equal to 2(genus-1)/|G|,
/// periods drawn from the element orders present and capped at 4*genus+2,
/// listed with h ascending then periods lexicographic.
fn admissible_signatures(g: &GroupHandle, genus: u64) -> Vec<Signature> {
    let mu_target = Rational64::new(2 * (genus as i64 - 1), g.order() as i64);
    let cap = 4 * genus + 2;
    let pool: Vec<u64> = {
        let mut orders: Vec<u64> = g.orders().iter().copied().filter(|&m| m >= 2 && m <= cap).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    };
    let mut out = Vec::new();
    let mut h = 0i64;
    loop {
        let base = Rational64::from_integer(2 * h - 2);
        if base > mu_target {
            break;
        }
        let mut stack = Vec::new();
        signature_dfs(&pool, 0, mu_target - base, &mut stack, &mut |periods| {
            out.push(Signature::new(h as u64, periods.to_vec()).expect("periods >= 2"));
        });
        h += 1;
    }
    out
}

fn signature_dfs(
    pool: &[u64],
    start: usize,
    rem: Rational64,
    stack: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if rem.is_zero() {
        emit(stack);
        return;
    }
    for (i, &m) in pool.iter().enumerate().skip(start) {
        let t = Rational64::one() - Rational64::new(1, m as i64);
        if t > rem {
            break;
        }
        stack.push(m);
        signature_dfs(pool, i, rem - t, stack, emit);
        stack.pop();
    }
}

/// First datum (and witness) the group acts with at exactly this genus.
pub fn action_at_genus(g: &GroupHandle, genus: u64) -> Option<(Signature, GeneratingVector)> {
    for sig in admissible_signatures(g, genus) {
        debug_assert_eq!(action_genus(g.order(), &sig), Some(genus));
        if let Some(v) = genvec_search(g, &sig) {
            return Some((sig, v));
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum MinGenus {
    AtGenus {
        genus: u64,
        signature: Signature,
        witness: GeneratingVector,
    },
    GreaterThan(u64),
}

/// Least genus >= 2 the group acts at, scanning up to g_max inclusive.
pub fn min_genus(g: &GroupHandle, g_max: u64) -> MinGenus {
    for genus in 2..=g_max {
        if let Some((signature, witness)) = action_at_genus(g, genus) {
            return MinGenus::AtGenus {
                genus,
                signature,
                witness,
            };
        }
    }
    MinGenus::GreaterThan(g_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::{action_record, divisibility_check};
    use crate::group::{build_group, GroupSpec};

    fn sig(h: u64, periods: &[u64]) -> Signature {
        Signature::new(h, periods.to_vec()).unwrap()
    }

    #[test]
    fn klein_four_vector_is_lex_least() {
        let g = build_group(&GroupSpec::Abelian(vec![2, 2])).unwrap();
        let s = sig(0, &[2, 2, 2, 2, 2]);
        let v = genvec_search(&g, &s).unwrap();
        assert!(v.hyperbolic.is_empty());
        assert_eq!(v.elliptic, vec![1, 1, 1, 2, 3]);
        assert!(verify_genvec(&g, &s, &v));

        // another valid witness exists but is lexicographically larger
        let alt = GeneratingVector {
            hyperbolic: vec![],
            elliptic: vec![1, 2, 3, 3, 3],
        };
        assert!(verify_genvec(&g, &s, &alt));
        assert!(alt.elliptic > v.elliptic);
    }

    #[test]
    fn cyclic_ten_vector() {
        let g = build_group(&GroupSpec::Cyclic(10)).unwrap();
        let s = sig(0, &[2, 5, 10]);
        let v = genvec_search(&g, &s).unwrap();
        assert_eq!(v.elliptic, vec![5, 2, 3]);
        assert!(verify_genvec(&g, &s, &v));
        let rec = action_record(&g, &s, Some(v));
        assert_eq!(rec.genus, 2);
        assert_eq!(rec.exponent, 10);
        assert_eq!(divisibility_check(&rec), Ok(true));
    }

    #[test]
    fn simple_168_acts_at_genus_three() {
        let g = build_group(&GroupSpec::Matrix {
            kind: crate::fq::MatrixKind::Psl2,
            q: 7,
        })
        .unwrap();
        let s = sig(0, &[2, 3, 7]);
        let v = genvec_search(&g, &s).unwrap();
        assert!(verify_genvec(&g, &s, &v));
        let rec = action_record(&g, &s, Some(v));
        assert_eq!(rec.genus, 3);
        assert_eq!(divisibility_check(&rec), Ok(true));
    }

    #[test]
    fn verification_rejects_corrupted_vectors() {
        let g = build_group(&GroupSpec::Cyclic(10)).unwrap();
        let s = sig(0, &[2, 5, 10]);
        let mut v = genvec_search(&g, &s).unwrap();
        v.elliptic[1] = 6;
        assert!(!verify_genvec(&g, &s, &v));

        let short = GeneratingVector {
            hyperbolic: vec![],
            elliptic: vec![5, 2],
        };
        assert!(!verify_genvec(&g, &s, &short));
    }

    #[test]
    fn rank_two_2group_needs_genus_three() {
        let g = build_group(&GroupSpec::Abelian(vec![2, 4])).unwrap();
        assert_eq!(genvec_search(&g, &sig(0, &[4, 4, 4])), None);
        assert_eq!(genvec_search(&g, &sig(0, &[2, 2, 2, 4])), None);
        match min_genus(&g, 5) {
            MinGenus::AtGenus {
                genus,
                signature,
                witness,
            } => {
                assert_eq!(genus, 3);
                assert_eq!(signature, sig(0, &[2, 2, 4, 4]));
                assert!(verify_genvec(&g, &signature, &witness));
            }
            other => panic!("expected an action at genus 3, got {other:?}"),
        }
    }

    #[test]
    fn elementary_abelian_rank_five_exceeds_genus_nine() {
        let g = build_group(&GroupSpec::Abelian(vec![2, 2, 2, 2, 2])).unwrap();
        assert_eq!(genvec_search(&g, &sig(0, &[2, 2, 2, 2, 2])), None);
        assert_eq!(genvec_search(&g, &sig(1, &[2])), None);
        assert_eq!(min_genus(&g, 9), MinGenus::GreaterThan(9));
    }

    #[test]
    fn order_two_group_acts_unbranched_and_branched() {
        let g = build_group(&GroupSpec::Cyclic(2)).unwrap();
        match min_genus(&g, 5) {
            MinGenus::AtGenus {
                genus,
                signature,
                witness,
            } => {
                assert_eq!(genus, 2);
                assert_eq!(signature, sig(0, &[2, 2, 2, 2, 2, 2]));
                assert_eq!(witness.elliptic, vec![1; 6]);
            }
            other => panic!("expected a genus-2 action, got {other:?}"),
        }
        // free action on genus 3 over orbit genus 2
        let free = genvec_search(&g, &sig(2, &[])).unwrap();
        assert!(verify_genvec(&g, &sig(2, &[]), &free));
        assert_eq!(free.hyperbolic.len(), 2);
    }

    #[test]
    fn positive_orbit_genus_uses_commutators() {
        let g = build_group(&GroupSpec::Dihedral(3)).unwrap();
        // x_1 must equal an inverse commutator, never an involution
        assert_eq!(genvec_search(&g, &sig(1, &[2])), None);
        let s = sig(1, &[3]);
        let v = genvec_search(&g, &s).unwrap();
        assert!(verify_genvec(&g, &s, &v));
        assert_eq!(v.hyperbolic.len(), 1);
        assert_eq!(v.elliptic.len(), 1);
    }

    #[test]
    fn wiman_family_small() {
        for g in 2..=6u64 {
            let group = build_group(&GroupSpec::Cyclic(4 * g + 2)).unwrap();
            let s = sig(0, &[2, 2 * g + 1, 4 * g + 2]);
            let v = genvec_search(&group, &s).unwrap();
            assert!(verify_genvec(&group, &s, &v));
            assert_eq!(group.exponent(), 4 * g + 2);
            let rec = action_record(&group, &s, Some(v));
            assert_eq!(rec.genus, g);
            assert_eq!(divisibility_check(&rec), Ok(true));
        }
    }

    #[test]
    fn admissible_data_hit_their_genus() {
        let g = build_group(&GroupSpec::Dihedral(6)).unwrap();
        for genus in 2..=4 {
            for s in admissible_signatures(&g, genus) {
                assert_eq!(action_genus(g.order(), &s), Some(genus));
                for &m in s.periods() {
                    assert!(!g.elements_of_order(m).is_empty() || genvec_search(&g, &s).is_none());
                }
            }
        }
    }
}
