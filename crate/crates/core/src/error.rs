use crate::group::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group order parameter must be >= 1")]
    ZeroOrderParameter,

    #[error("spec needs at least one factor")]
    EmptySpec,

    #[error("invalid semidirect action C{m}:C{n}({k}): need gcd(k, m) = 1 and k^n = 1 (mod m)")]
    InvalidSemidirectAction { m: u64, n: u64, k: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field F_{q} is too large to construct (limit {limit})")]
    FieldTooLarge { q: u64, limit: u64 },

    #[error("predicted order {predicted} of {spec} exceeds the enumeration cap {cap}")]
    OrderCapExceeded {
        spec: GroupSpec,
        predicted: u64,
        cap: u64,
    },

    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u64 },

    #[error("group has odd order {0}; no Sylow 2-subgroup to test")]
    OddOrder(u64),

    #[error("group is not a Z-group; Zassenhaus decomposition undefined")]
    NotZGroup,

    #[error("exponent {exponent} does not divide the group order {order}; profile is corrupt")]
    ExponentOrderMismatch { exponent: u64, order: u64 },

    #[error("multiplier ladder needs threshold >= 13 (got {0}); below that the signature set is infinite")]
    LadderThresholdTooSmall(u64),

    #[error("exponent {0} is not in the attainment table {{24, 20, 18, 12, 10, 8, 6, 4, 2}}")]
    ExponentNotInTable(u64),

    #[error("signature periods must all be >= 2 (got {0})")]
    BadPeriod(u64),

    #[error("abelian extremal scan needs g_max >= 9 to cover every candidate family (got {0})")]
    GenusRangeTooSmall(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
