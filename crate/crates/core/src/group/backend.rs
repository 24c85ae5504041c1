//! Coordinate arithmetic behind a group handle.
//!
//! Every element of a group is named by a u64 code, injective per backend:
//!
//!   cyclic      a in 0..n
//!   abelian     mixed-radix digits over the factor list, first factor least
//!               significant
//!   dihedral    flip * n + rotation (order 2n)
//!   semidirect  a + m * b for (a, b) in C_m x C_n acting by x -> x^k
//!   product     mixed radix over the parts' code bounds, first part least
//!               significant
//!   matrix      the Mat2 packing over F_q, PSL2 codes always canonical
//!
//! Codes are dense for the elementary backends and sparse for matrix ones;
//! nothing below depends on density. The handle layer assigns canonical
//! indices by BFS and keeps the code <-> index maps.

use crate::error::{Error, Result};
use crate::fq::{self, FieldCtx, Mat2, MatrixKind, MAT_IDENTITY};
use crate::group::GroupSpec;

pub(crate) enum Backend {
    Cyclic {
        n: u64,
    },
    Abelian {
        factors: Vec<u64>,
    },
    Dihedral {
        n: u64,
    },
    Semidirect {
        m: u64,
        n: u64,
        /// k_pow[b] = k^b mod m, length n.
        k_pow: Vec<u64>,
    },
    Product {
        parts: Vec<Backend>,
        /// Cached code_bound of each part; mixed-radix digit sizes.
        bounds: Vec<u64>,
    },
    Matrix {
        field: FieldCtx,
        kind: MatrixKind,
    },
}

impl Backend {
    pub fn from_spec(spec: &GroupSpec) -> Result<Backend> {
        match spec {
            GroupSpec::Cyclic(n) => Ok(Backend::Cyclic { n: *n }),
            GroupSpec::Abelian(fs) => Ok(Backend::Abelian {
                factors: fs.clone(),
            }),
            GroupSpec::Dihedral(n) => Ok(Backend::Dihedral { n: *n }),
            GroupSpec::Semidirect { m, n, k } => {
                let mut k_pow = Vec::with_capacity(*n as usize);
                let mut x = 1 % *m;
                for _ in 0..*n {
                    k_pow.push(x);
                    x = x * (k % m) % m;
                }
                Ok(Backend::Semidirect {
                    m: *m,
                    n: *n,
                    k_pow,
                })
            }
            GroupSpec::Product(parts) => {
                let parts: Vec<Backend> = parts
                    .iter()
                    .map(Backend::from_spec)
                    .collect::<Result<_>>()?;
                let bounds = parts.iter().map(Backend::code_bound).collect();
                Ok(Backend::Product { parts, bounds })
            }
            GroupSpec::Matrix { kind, q } => {
                let (p, n) = crate::arith::prime_power(*q).ok_or(Error::NotPrimePower(*q))?;
                Ok(Backend::Matrix {
                    field: fq::make_field(p, n)?,
                    kind: *kind,
                })
            }
        }
    }

    /// Strict upper bound on codes this backend emits.
    pub fn code_bound(&self) -> u64 {
        match self {
            Backend::Cyclic { n } => *n,
            Backend::Abelian { factors } => factors.iter().product(),
            Backend::Dihedral { n } => 2 * n,
            Backend::Semidirect { m, n, .. } => m * n,
            Backend::Product { bounds, .. } => bounds
                .iter()
                .copied()
                .try_fold(1u64, u64::checked_mul)
                .expect("product code space exceeds u64; unreachable under the order cap"),
            Backend::Matrix { field, .. } => {
                let q = field.order();
                q * q * q * q
            }
        }
    }

    pub fn identity(&self) -> u64 {
        match self {
            Backend::Matrix { field, .. } => MAT_IDENTITY.code(field.order()),
            Backend::Product { parts, bounds } => {
                let mut out = 0u64;
                let mut scale = 1u64;
                for (p, &bound) in parts.iter().zip(bounds) {
                    out += p.identity() * scale;
                    scale *= bound;
                }
                out
            }
            _ => 0,
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        match self {
            Backend::Cyclic { n } => (x + y) % n,
            Backend::Abelian { factors } => {
                let (mut x, mut y) = (x, y);
                let mut out = 0u64;
                let mut scale = 1u64;
                for &f in factors {
                    out += (x % f + y % f) % f * scale;
                    x /= f;
                    y /= f;
                    scale *= f;
                }
                out
            }
            Backend::Dihedral { n } => {
                let (r1, f1) = (x % n, x / n);
                let (r2, f2) = (y % n, y / n);
                let r = if f1 == 0 { (r1 + r2) % n } else { (r1 + n - r2) % n };
                (f1 ^ f2) * n + r
            }
            Backend::Semidirect { m, n, k_pow } => {
                let (a1, b1) = (x % m, x / m);
                let (a2, b2) = (y % m, y / m);
                let a = (a1 + k_pow[b1 as usize] * a2) % m;
                let b = (b1 + b2) % n;
                a + m * b
            }
            Backend::Product { parts, bounds } => {
                let (mut x, mut y) = (x, y);
                let mut out = 0u64;
                let mut scale = 1u64;
                for (p, &bound) in parts.iter().zip(bounds) {
                    out += p.mul(x % bound, y % bound) * scale;
                    x /= bound;
                    y /= bound;
                    scale *= bound;
                }
                out
            }
            Backend::Matrix { field, kind } => {
                let q = field.order();
                let m = Mat2::mul(field, Mat2::from_code(x, q), Mat2::from_code(y, q));
                let m = match kind {
                    MatrixKind::Psl2 => fq::psl_canonical(field, m),
                    _ => m,
                };
                m.code(q)
            }
        }
    }

    pub fn inv(&self, x: u64) -> u64 {
        match self {
            Backend::Cyclic { n } => (n - x % n) % n,
            Backend::Abelian { factors } => {
                let mut x = x;
                let mut out = 0u64;
                let mut scale = 1u64;
                for &f in factors {
                    out += (f - x % f) % f * scale;
                    x /= f;
                    scale *= f;
                }
                out
            }
            Backend::Dihedral { n } => {
                let (r, fl) = (x % n, x / n);
                if fl == 0 {
                    (n - r) % n
                } else {
                    x
                }
            }
            Backend::Semidirect { m, n, k_pow } => {
                let (a, b) = (x % m, x / m);
                let b_inv = (n - b) % n;
                let a_inv = (m - k_pow[b_inv as usize] * a % m) % m;
                a_inv + m * b_inv
            }
            Backend::Product { parts, bounds } => {
                let mut x = x;
                let mut out = 0u64;
                let mut scale = 1u64;
                for (p, &bound) in parts.iter().zip(bounds) {
                    out += p.inv(x % bound) * scale;
                    x /= bound;
                    scale *= bound;
                }
                out
            }
            Backend::Matrix { field, kind } => {
                let q = field.order();
                let m = Mat2::inverse(field, Mat2::from_code(x, q));
                let m = match kind {
                    MatrixKind::Psl2 => fq::psl_canonical(field, m),
                    _ => m,
                };
                m.code(q)
            }
        }
    }

    /// Generator codes in spec order; the BFS enumeration order (hence every
    /// canonical index in the artifact) is derived from this list.
    pub fn generators(&self) -> Vec<u64> {
        match self {
            Backend::Cyclic { n } => {
                if *n > 1 {
                    vec![1]
                } else {
                    vec![]
                }
            }
            Backend::Abelian { factors } => {
                let mut out = Vec::new();
                let mut scale = 1u64;
                for &f in factors {
                    if f > 1 {
                        out.push(scale);
                    }
                    scale *= f;
                }
                out
            }
            Backend::Dihedral { n } => {
                let mut out = Vec::new();
                if *n > 1 {
                    out.push(1); // rotation
                }
                out.push(*n); // flip
                out
            }
            Backend::Semidirect { m, n, .. } => {
                let mut out = Vec::new();
                if *m > 1 {
                    out.push(1);
                }
                if *n > 1 {
                    out.push(*m);
                }
                out
            }
            Backend::Product { parts, bounds } => {
                // Inactive coordinates carry their identity digit, which is
                // nonzero for matrix parts.
                let id = self.identity();
                let mut out = Vec::new();
                let mut scale = 1u64;
                for (p, &bound) in parts.iter().zip(bounds) {
                    let base = id - p.identity() * scale;
                    out.extend(p.generators().into_iter().map(|g| base + g * scale));
                    scale *= bound;
                }
                out
            }
            Backend::Matrix { field, kind } => {
                let q = field.order();
                fq::generators(field, *kind)
                    .into_iter()
                    .map(|m| m.code(q))
                    .collect()
            }
        }
    }

    pub fn format(&self, x: u64) -> String {
        match self {
            Backend::Cyclic { .. } => format!("{x}"),
            Backend::Abelian { factors } => {
                let mut x = x;
                let digits: Vec<String> = factors
                    .iter()
                    .map(|&f| {
                        let d = x % f;
                        x /= f;
                        d.to_string()
                    })
                    .collect();
                format!("({})", digits.join(","))
            }
            Backend::Dihedral { n } => {
                let (r, fl) = (x % n, x / n);
                if fl == 0 {
                    format!("r{r}")
                } else {
                    format!("fr{r}")
                }
            }
            Backend::Semidirect { m, .. } => format!("({},{})", x % m, x / m),
            Backend::Product { parts, bounds } => {
                let mut x = x;
                let coords: Vec<String> = parts
                    .iter()
                    .zip(bounds)
                    .map(|(p, &bound)| {
                        let c = p.format(x % bound);
                        x /= bound;
                        c
                    })
                    .collect();
                format!("({})", coords.join(", "))
            }
            Backend::Matrix { field, .. } => {
                let m = Mat2::from_code(x, field.order());
                format!("[[{},{}],[{},{}]]", m.a, m.b, m.c, m.d)
            }
        }
    }
}
