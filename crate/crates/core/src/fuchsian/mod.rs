//! Branching-datum arithmetic for surface actions: ramification measure,
//! genus, multiplier enumeration, and the extremal signature equation.

mod genvec;

pub use genvec::{
    action_at_genus, genvec_search, min_genus, verify_genvec, GeneratingVector, MinGenus,
};

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupHandle;

/// Branching datum (h; m_1, ..., m_r): orbit genus h and branch periods
/// kept sorted ascending, each at least 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    h: u64,
    periods: Vec<u64>,
}

impl Signature {
    pub fn new(h: u64, mut periods: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = periods.iter().find(|&&m| m < 2) {
            return Err(Error::BadPeriod(bad));
        }
        periods.sort_unstable();
        Ok(Self { h, periods })
    }

    pub fn orbit_genus(&self) -> u64 {
        self.h
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    /// 2h - 2 + sum_i (1 - 1/m_i), exact.
    pub fn measure(&self) -> Rational64 {
        let mut mu = Rational64::from_integer(2 * self.h as i64 - 2);
        for &m in &self.periods {
            mu += Rational64::one() - Rational64::new(1, m as i64);
        }
        mu
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.h)?;
        for (i, m) in self.periods.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Genus of the covering surface for a group of the given order acting
/// with this datum: 1 + order * measure / 2, exact.
pub fn genus_from_action(order: u64, sig: &Signature) -> Rational64 {
    Rational64::one() + Rational64::from_integer(order as i64) * sig.measure() / 2
}

/// The per-period ramification contributions (order/m)(m - 1), exact even
/// when m does not divide order.
pub fn branch_terms(order: u64, sig: &Signature) -> Vec<Rational64> {
    sig.periods
        .iter()
        .map(|&m| Rational64::new(order as i64, m as i64) * (m as i64 - 1))
        .collect()
}

/// Genus recomputed from the expanded count: 2g - 2 equals
/// order * (2h - 2) plus the sum of the branch terms.
pub fn genus_via_branch_terms(order: u64, sig: &Signature) -> Rational64 {
    let base = Rational64::from_integer(order as i64) * (2 * sig.h as i64 - 2);
    let total: Rational64 = branch_terms(order, sig).into_iter().sum();
    (base + total) / 2 + 1
}

/// Integer genus of an actual action, requiring g >= 2.
pub fn action_genus(order: u64, sig: &Signature) -> Option<u64> {
    let g = genus_from_action(order, sig);
    if !g.is_integer() {
        return None;
    }
    let g = *g.numer();
    (g >= 2).then_some(g as u64)
}

/// Smallest threshold the multiplier enumeration accepts.  Below it the
/// (2,3,m) tail alone contributes infinitely many values: 2/measure of
/// (0;2,3,m) is 12m/(m-6), which stays above 12 for every m.
pub const LADDER_MIN_THRESHOLD: u64 = 13;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LadderRow {
    pub multiplier: Rational64,
    pub signatures: Vec<Signature>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Ladder {
    pub threshold: u64,
    pub rows: Vec<LadderRow>,
}

/// All values 2/measure at least `threshold`, descending, each with every
/// datum attaining it.  Data with h >= 1 or with four or more periods have
/// measure at least 1/6, hence multiplier at most 12; only genus-zero
/// three-period data can appear once the threshold is 13 or more.
pub fn multiplier_ladder(threshold: u64) -> Result<Ladder> {
    if threshold < LADDER_MIN_THRESHOLD {
        return Err(Error::LadderThresholdTooSmall(threshold));
    }
    let bound = Rational64::new(2, threshold as i64);
    let one = Rational64::one();
    let mut rows: BTreeMap<Rational64, Vec<Signature>> = BTreeMap::new();

    let mut m1 = 2i64;
    while one - Rational64::new(3, m1) <= bound {
        let mut m2 = m1;
        while one - Rational64::new(1, m1) - Rational64::new(2, m2) <= bound {
            let tail = one - Rational64::new(1, m1) - Rational64::new(1, m2);
            if tail > Rational64::zero() {
                // Positive tails are at least 1/6 > bound, so the m3 range
                // below is finite.
                let lo = ((one / tail).floor().to_integer() + 1).max(m2);
                let hi = (one / (tail - bound)).floor().to_integer();
                for m3 in lo..=hi {
                    let mu = tail - Rational64::new(1, m3);
                    debug_assert!(mu > Rational64::zero() && mu <= bound);
                    let sig = Signature::new(0, vec![m1 as u64, m2 as u64, m3 as u64])?;
                    rows.entry(Rational64::from_integer(2) / mu)
                        .or_default()
                        .push(sig);
                }
            }
            m2 += 1;
        }
        m1 += 1;
    }

    let rows = rows
        .into_iter()
        .rev()
        .map(|(multiplier, signatures)| LadderRow {
            multiplier,
            signatures,
        })
        .collect();
    Ok(Ladder { threshold, rows })
}

/// Exponent parameters the extremal signature equation is posed for.
pub const EQUATION_EXPONENTS: [u64; 9] = [24, 20, 18, 12, 10, 8, 6, 4, 2];

/// A solution of 1 = e(2h - 2) + sum (e/s_i)(s_i - 1) with every period
/// dividing e.  `infeasible` marks solutions no group attains; they are
/// kept so the caller sees they were excluded by a group-level test, not
/// dropped by the arithmetic.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EquationSolution {
    pub h: u64,
    pub periods: Vec<u64>,
    pub infeasible: bool,
}

pub fn normalized_equation_solutions(e: u64) -> Result<Vec<EquationSolution>> {
    if !EQUATION_EXPONENTS.contains(&e) {
        return Err(Error::ExponentNotInTable(e));
    }
    let divs: Vec<u64> = crate::arith::divisors(e).into_iter().filter(|&s| s >= 2).collect();
    let mut out = Vec::new();
    let mut h = 0i64;
    loop {
        // Remaining weight for the period terms; each term e - e/s is >= e/2.
        let target = 1 - e as i64 * (2 * h - 2);
        if target < 0 {
            break;
        }
        let mut stack = Vec::new();
        period_sum_dfs(&divs, e, 0, target, &mut stack, &mut |periods| {
            out.push(EquationSolution {
                h: h as u64,
                periods: periods.to_vec(),
                infeasible: h > 0,
            });
        });
        h += 1;
    }
    out.sort_by(|a, b| (a.h, &a.periods).cmp(&(b.h, &b.periods)));
    Ok(out)
}

fn period_sum_dfs(
    divs: &[u64],
    e: u64,
    start: usize,
    target: i64,
    stack: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if target == 0 {
        if !stack.is_empty() {
            emit(stack);
        }
        return;
    }
    for (i, &s) in divs.iter().enumerate().skip(start) {
        let term = (e - e / s) as i64;
        if term > target {
            break;
        }
        stack.push(s);
        period_sum_dfs(divs, e, i, target - term, stack, emit);
        stack.pop();
    }
}

/// An attained action: the group, its datum, and the induced genus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ActionRecord {
    pub group: String,
    pub order: u64,
    pub exponent: u64,
    pub genus: u64,
    pub signature: Signature,
    pub witness: Option<GeneratingVector>,
}

pub fn action_record(
    g: &GroupHandle,
    sig: &Signature,
    witness: Option<GeneratingVector>,
) -> ActionRecord {
    let genus = action_genus(g.order(), sig).expect("datum does not induce a surface action");
    ActionRecord {
        group: g.label().to_string(),
        order: g.order(),
        exponent: g.exponent(),
        genus,
        signature: sig.clone(),
        witness,
    }
}

/// Order/exponent divides 2(genus - 1) for every attained action.
pub fn divisibility_check(rec: &ActionRecord) -> Result<bool> {
    if rec.exponent == 0 || rec.order % rec.exponent != 0 {
        return Err(Error::ExponentOrderMismatch {
            exponent: rec.exponent,
            order: rec.order,
        });
    }
    let quotient = rec.order / rec.exponent;
    Ok((2 * (rec.genus - 1)) % quotient == 0)
}
