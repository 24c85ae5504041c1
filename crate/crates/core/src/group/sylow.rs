//! Sylow subgroups by normalizer extension.
//!
//! Starting from a p-element of maximal order, the current p-subgroup S
//! is repeatedly enlarged by the lowest-index p-element outside S that
//! normalizes it. Such an element always exists while |S| is short of
//! the full Sylow order (the normalizer of a proper p-subgroup inside a
//! Sylow overgroup is strictly larger), and adjoining it keeps S a
//! p-group, so the loop terminates at exactly p^v.

use super::structure::span;
use super::GroupHandle;
use crate::arith;
use crate::error::{Error, Result};

fn p_power_order(o: u64, p: u64) -> bool {
    o == p.pow(arith::valuation(o, p))
}

pub fn sylow_subgroup(g: &GroupHandle, p: u64) -> Result<GroupHandle> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let v = arith::valuation(g.order(), p);
    if v == 0 {
        return Err(Error::PrimeDoesNotDivide {
            p,
            order: g.order(),
        });
    }
    let target = p.pow(v);
    let orders = g.orders();

    let mut seed = GroupHandle::IDENTITY;
    let mut best = 1u64;
    for (i, &o) in orders.iter().enumerate() {
        if o > best && p_power_order(o, p) {
            best = o;
            seed = i as u32;
        }
    }

    let mut gens = vec![seed];
    loop {
        let (members, inset) = span(g, &gens);
        if members.len() as u64 == target {
            return Ok(g.subgroup(&gens, format!("Syl_{}({})", p, g.label())));
        }
        let next = (0..g.order() as u32)
            .find(|&t| {
                !inset[t as usize]
                    && p_power_order(orders[t as usize], p)
                    && gens.iter().all(|&s| inset[g.conjugate(t, s) as usize])
            })
            .expect("a proper p-subgroup has p-elements in its normalizer");
        gens.push(next);
    }
}

/// Whether the Sylow 2-subgroup contains a cyclic subgroup of index 2,
/// i.e. an element of half the Sylow order.
pub fn has_cyclic_index2_sylow2(g: &GroupHandle) -> Result<bool> {
    if g.order() % 2 == 1 {
        return Err(Error::OddOrder(g.order()));
    }
    let s = sylow_subgroup(g, 2)?;
    let half = s.order() / 2;
    Ok(s.orders().contains(&half))
}
