//! 2x2 matrices over F_q and the groups GL2, SL2, PSL2.
//!
//! A matrix [[a,b],[c,d]] packs into the code ((a*q + b)*q + c)*q + d, so
//! code order is lexicographic order on (a,b,c,d) under the field's element
//! ordering. PSL2 works with the coset {M, -M}; the canonical representative
//! is the member with the smaller code, which makes canonicalization
//! idempotent and representative-independent.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fq::FieldCtx;
use crate::group::{build_group, GroupHandle, GroupSpec};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum MatrixKind {
    Gl2,
    Sl2,
    Psl2,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Gl2 => "GL2",
            MatrixKind::Sl2 => "SL2",
            MatrixKind::Psl2 => "PSL2",
        }
    }

    /// Closed-form group order: |GL2| = (q^2-1)(q^2-q), |SL2| = q^3-q,
    /// |PSL2| = (q^3-q)/gcd(2, q-1).
    pub fn order(self, q: u64) -> u128 {
        let q = q as u128;
        match self {
            MatrixKind::Gl2 => (q * q - 1) * (q * q - q),
            MatrixKind::Sl2 => q * q * q - q,
            MatrixKind::Psl2 => (q * q * q - q) / if q % 2 == 0 { 1 } else { 2 },
        }
    }
}

/// Row-major [[a,b],[c,d]] with entries as field codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

pub const MAT_IDENTITY: Mat2 = Mat2 {
    a: 1,
    b: 0,
    c: 0,
    d: 1,
};

impl Mat2 {
    pub fn mul(f: &FieldCtx, x: Mat2, y: Mat2) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            b: f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            c: f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
            d: f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)),
        }
    }

    pub fn det(f: &FieldCtx, x: Mat2) -> u64 {
        f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c))
    }

    /// Inverse via adjugate; the matrix must be invertible.
    pub fn inverse(f: &FieldCtx, x: Mat2) -> Mat2 {
        let idet = f.inv(Self::det(f, x));
        Mat2 {
            a: f.mul(idet, x.d),
            b: f.mul(idet, f.neg(x.b)),
            c: f.mul(idet, f.neg(x.c)),
            d: f.mul(idet, x.a),
        }
    }

    pub fn neg(f: &FieldCtx, x: Mat2) -> Mat2 {
        Mat2 {
            a: f.neg(x.a),
            b: f.neg(x.b),
            c: f.neg(x.c),
            d: f.neg(x.d),
        }
    }

    #[inline]
    pub fn code(self, q: u64) -> u64 {
        ((self.a * q + self.b) * q + self.c) * q + self.d
    }

    #[inline]
    pub fn from_code(code: u64, q: u64) -> Mat2 {
        let d = code % q;
        let c = code / q % q;
        let b = code / (q * q) % q;
        let a = code / (q * q * q);
        Mat2 { a, b, c, d }
    }
}

/// The smaller of {M, -M} in code order. For characteristic 2 this is M
/// itself; applying it twice is the identity on representatives.
pub fn psl_canonical(f: &FieldCtx, m: Mat2) -> Mat2 {
    let q = f.order();
    let n = Mat2::neg(f, m);
    if n.code(q) < m.code(q) {
        n
    } else {
        m
    }
}

/// Canonical coset representative of +-M in PSL2(F_q).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PslElement(Mat2);

impl PslElement {
    pub fn new(f: &FieldCtx, m: Mat2) -> PslElement {
        PslElement(psl_canonical(f, m))
    }

    pub fn rep(self) -> Mat2 {
        self.0
    }
}

/// Generating set in spec order. SL2 is generated by the upper and lower
/// elementary matrices over an F_p-basis 1, th, .., th^(n-1); GL2 adds one
/// diagonal of determinant equal to the primitive element; PSL2 takes the
/// canonical images of the SL2 set.
pub fn generators(f: &FieldCtx, kind: MatrixKind) -> Vec<Mat2> {
    let mut gens = Vec::new();
    for i in 0..f.degree() {
        let t = f.p().pow(i); // code of th^i
        gens.push(Mat2 {
            a: 1,
            b: t,
            c: 0,
            d: 1,
        });
        gens.push(Mat2 {
            a: 1,
            b: 0,
            c: t,
            d: 1,
        });
    }
    match kind {
        MatrixKind::Sl2 => gens,
        MatrixKind::Gl2 => {
            gens.push(Mat2 {
                a: f.primitive(),
                b: 0,
                c: 0,
                d: 1,
            });
            gens
        }
        MatrixKind::Psl2 => gens.into_iter().map(|m| psl_canonical(f, m)).collect(),
    }
}

pub fn build_gl2(q: u64) -> Result<GroupHandle> {
    build_group(&GroupSpec::Matrix {
        kind: MatrixKind::Gl2,
        q,
    })
}

pub fn build_sl2(q: u64) -> Result<GroupHandle> {
    build_group(&GroupSpec::Matrix {
        kind: MatrixKind::Sl2,
        q,
    })
}

pub fn build_psl2(q: u64) -> Result<GroupHandle> {
    build_group(&GroupSpec::Matrix {
        kind: MatrixKind::Psl2,
        q,
    })
}

/// exp(PSL2(F_q)) by full enumeration.
pub fn psl2_exponent(q: u64) -> Result<u64> {
    Ok(build_psl2(q)?.order_profile().exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::make_field;

    #[test]
    fn closed_form_orders() {
        assert_eq!(MatrixKind::Gl2.order(3), 48);
        assert_eq!(MatrixKind::Gl2.order(5), 480);
        assert_eq!(MatrixKind::Sl2.order(7), 336);
        assert_eq!(MatrixKind::Psl2.order(7), 168);
        assert_eq!(MatrixKind::Psl2.order(8), 504);
        assert_eq!(MatrixKind::Psl2.order(9), 360);
        assert_eq!(MatrixKind::Psl2.order(13), 1092);
        assert_eq!(MatrixKind::Psl2.order(27), 9828);
        assert_eq!(MatrixKind::Psl2.order(125), 976_500);
    }

    #[test]
    fn inverse_against_identity() {
        let f = make_field(7, 1).unwrap();
        let q = f.order();
        for code in 0..q * q * q * q {
            let m = Mat2::from_code(code, q);
            if Mat2::det(&f, m) == 0 {
                continue;
            }
            let mi = Mat2::inverse(&f, m);
            assert_eq!(Mat2::mul(&f, m, mi), MAT_IDENTITY);
            assert_eq!(Mat2::mul(&f, mi, m), MAT_IDENTITY);
        }
    }

    #[test]
    fn code_roundtrip() {
        let q = 9;
        for code in 0..q * q * q * q {
            assert_eq!(Mat2::from_code(code, q).code(q), code);
        }
    }

    #[test]
    fn canonicalization_idempotent_and_sign_blind() {
        for qp in [(3u64, 1u32), (5, 1), (7, 1), (3, 2), (2, 3)] {
            let f = make_field(qp.0, qp.1).unwrap();
            let q = f.order();
            for code in 0..q * q * q * q {
                let m = Mat2::from_code(code, q);
                if Mat2::det(&f, m) != 1 {
                    continue;
                }
                let r = psl_canonical(&f, m);
                assert_eq!(psl_canonical(&f, r), r);
                assert_eq!(psl_canonical(&f, Mat2::neg(&f, m)), r);
            }
        }
    }

    #[test]
    fn generator_determinants() {
        for qp in [(7u64, 1u32), (3, 3), (2, 3)] {
            let f = make_field(qp.0, qp.1).unwrap();
            for m in generators(&f, MatrixKind::Sl2) {
                assert_eq!(Mat2::det(&f, m), 1);
            }
            let gl = generators(&f, MatrixKind::Gl2);
            assert_eq!(Mat2::det(&f, *gl.last().unwrap()), f.primitive());
        }
    }
}
