//! Finite fields F_q, q = p^n, with element codes 0..q.
//!
//! An element code is the base-p digit string of its coefficient tuple,
//! low degree first: code(sum c_i th^i) = sum c_i p^i, where th is the
//! class of x modulo the field's irreducible modulus. Code 0 is the zero
//! element, code 1 the one, code p is th itself. The canonical ordering
//! on field elements used everywhere (modulus scan, matrix
//! canonicalization) is plain ascending code.
//!
//! Multiplication runs through log/antilog tables over a fixed primitive
//! element; addition is digit arithmetic (tabulated for small q). The
//! explicit polynomial arithmetic the tables are built from stays
//! available for cross-checks.

mod mat;

pub use mat::{
    build_gl2, build_psl2, build_sl2, generators, psl2_exponent, psl_canonical, Mat2, MatrixKind,
    PslElement, MAT_IDENTITY,
};

use crate::error::{Error, Result};
use crate::arith;

/// Largest field the table construction will accept.
pub const FIELD_LIMIT: u64 = 4096;

const ADD_TABLE_LIMIT: u64 = 512;

pub struct FieldCtx {
    p: u64,
    n: u32,
    q: u64,
    /// Monic modulus, coefficients low to high, length n+1.
    modulus: Vec<u64>,
    primitive: u64,
    log: Vec<u32>,
    antilog: Vec<u32>,
    add_table: Option<Vec<u16>>,
    neg_table: Vec<u16>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

/// Constructs F_{p^n} over the lexicographically smallest monic irreducible
/// modulus of degree n (candidates scanned in ascending code order of their
/// non-leading coefficient tuple).
pub fn make_field(p: u64, n: u32) -> Result<FieldCtx> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(n >= 1, "field degree must be >= 1");
    let q = p.checked_pow(n).filter(|&q| q <= FIELD_LIMIT).ok_or({
        Error::FieldTooLarge {
            q: p.saturating_pow(n),
            limit: FIELD_LIMIT,
        }
    })?;

    let modulus = smallest_irreducible(p, n);
    let mut field = FieldCtx {
        p,
        n,
        q,
        modulus,
        primitive: 0,
        log: vec![0; q as usize],
        antilog: Vec::new(),
        add_table: None,
        neg_table: Vec::new(),
    };
    field.primitive = field.find_primitive();
    field.build_log_tables();
    field.neg_table = (0..q).map(|a| field.neg_slow(a) as u16).collect();
    if q <= ADD_TABLE_LIMIT {
        let mut t = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                t.push(field.add_slow(a, b) as u16);
            }
        }
        field.add_table = Some(t);
    }
    // inverse spot check, cheap enough to run unconditionally at this size
    if q <= ADD_TABLE_LIMIT {
        for a in 1..q {
            assert_eq!(field.mul(a, field.inv(a)), 1, "a * a^-1 != 1 at a = {a}");
        }
    }
    Ok(field)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// q = p^n.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Monic modulus coefficients, low to high, length degree + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Fixed generator of the multiplicative group (least code with full order).
    pub fn primitive(&self) -> u64 {
        self.primitive
    }

    /// Coefficient tuple of an element, low to high, length = degree.
    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        debug_assert!(a < self.q);
        let mut a = a;
        (0..self.n)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.q);
        self.neg_table[a as usize] as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        self.antilog[(self.log[a as usize] + self.log[b as usize]) as usize] as u64
    }

    /// Multiplicative inverse; a must be nonzero.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let e = (self.q - 1) as u32 - self.log[a as usize];
        self.antilog[e as usize] as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = self.q - 1;
        let idx = (self.log[a as usize] as u64 * (e % m)) % m;
        self.antilog[idx as usize] as u64
    }

    /// Multiplicative order; a must be nonzero.
    pub fn element_order(&self, a: u64) -> u64 {
        assert!(a != 0);
        let m = self.q - 1;
        m / arith::gcd(self.log[a as usize] as u64, m)
    }

    // ----- explicit digit / polynomial arithmetic (table construction and
    // ----- cross-checks) -----

    pub fn add_slow(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.n {
            out += (a % self.p + b % self.p) % self.p * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn neg_slow(&self, a: u64) -> u64 {
        if self.n == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let mut a = a;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.n {
            out += (self.p - a % self.p) % self.p * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus, high degree down
        for deg in (n..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &mc) in self.modulus.iter().take(n).enumerate() {
                let idx = deg - n + k;
                prod[idx] = (prod[idx] + c * (self.p - mc) % self.p) % self.p;
            }
        }
        prod.iter()
            .take(n)
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c)
    }

    fn find_primitive(&self) -> u64 {
        if self.q == 2 {
            return 1;
        }
        'outer: for g in 2..self.q {
            let mut x = g;
            let mut k = 1u64;
            while x != 1 {
                x = self.mul_slow(x, g);
                k += 1;
                if k > self.q {
                    continue 'outer; // zero divisor can't happen; defensive
                }
            }
            if k == self.q - 1 {
                return g;
            }
        }
        unreachable!("F_q* is cyclic, a generator exists");
    }

    fn build_log_tables(&mut self) {
        let m = (self.q - 1) as usize;
        self.antilog = vec![0; 2 * m.max(1)];
        let mut x = 1u64;
        for i in 0..m {
            self.antilog[i] = x as u32;
            self.antilog[i + m] = x as u32;
            self.log[x as usize] = i as u32;
            x = self.mul_slow(x, self.primitive);
        }
        assert_eq!(x, 1, "primitive element order mismatch");
    }
}

/// Lexicographically smallest monic irreducible of degree n over F_p,
/// scanning the non-leading coefficient tuple in ascending code order.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let mut low = vec![0u64; n as usize];
    let bound = p.pow(n);
    for code in 0..bound {
        let mut c = code;
        for digit in low.iter_mut() {
            *digit = c % p;
            c /= p;
        }
        let mut f = low.clone();
        f.push(1);
        if poly_is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

/// f monic of degree >= 1, coefficients low to high. Reducible iff it has a
/// monic factor of degree 1..=deg/2, found by trial division.
fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let bound = p.pow(d as u32);
        for code in 0..bound {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem_is_zero(p, f, &g) {
                return false;
            }
        }
    }
    true
}

/// Whether monic g divides f over F_p.
fn poly_rem_is_zero(p: u64, f: &[u64], g: &[u64]) -> bool {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (k, &gc) in g.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + lead * (p - gc) % p) % p;
            }
        }
        debug_assert_eq!(*r.last().unwrap(), 0);
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}
