//! Numerical criteria deciding when the WLP or SLP must fail.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{validate_parameters, GridShape};

/// `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `F_t(m, n) = C(h + t - 2, t) - C(m, t) C(n, t)`: dimension of `A_t` minus
/// the number of degree-`t` relations, once the Artinian reduction has socle in
/// degree `t - 1`.
pub fn f_value(shape: GridShape) -> BigInt {
    f_formula(shape.t(), shape.m(), shape.n())
}

/// [`f_value`] for parameters beyond the vertex limit of [`GridShape`].
pub fn f_value_of(t: usize, m: usize, n: usize) -> Result<BigInt> {
    validate_parameters(t, m, n)?;
    Ok(f_formula(t, m, n))
}

fn f_formula(t: usize, m: usize, n: usize) -> BigInt {
    let h = (m - t + 1) * (n - t + 1);
    binomial(h + t - 2, t) - binomial(m, t) * binomial(n, t)
}

pub(crate) fn bigint_string<S: Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureCertificate {
    #[serde(serialize_with = "bigint_string")]
    pub f_value: BigInt,
    /// `F >= 0`: multiplication by a linear form `A_{t-1} -> A_t` cannot be
    /// injective when the socle floor `β_{h, h+t-1} >= 1` holds.
    pub certifies_wlp_failure: bool,
}

/// WLP-failure certificate for `t < min(m, n)`.
pub fn failure_certificate(shape: GridShape) -> Result<FailureCertificate> {
    failure_certificate_of(shape.t(), shape.m(), shape.n())
}

/// [`failure_certificate`] for parameters beyond the vertex limit of [`GridShape`].
pub fn failure_certificate_of(t: usize, m: usize, n: usize) -> Result<FailureCertificate> {
    validate_parameters(t, m, n)?;
    if t == m.min(n) {
        return Err(Error::param(
            "t = min(m, n) lies outside the range of the failure certificate",
        ));
    }
    let f = f_formula(t, m, n);
    Ok(FailureCertificate {
        certifies_wlp_failure: !f.is_negative(),
        f_value: f,
    })
}

/// Which known statement covers a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `t = min(m, n)`: the initial ideal is generated by a power of the
    /// maximal ideal after reduction, so the SLP holds.
    TEqualsMinSlp,
    /// `t = 2`, `mn >= 16`: the WLP fails.
    T2Fails,
    /// `t = 3`, `mn >= 24`: the WLP fails.
    T3Fails,
    /// `t >= 4`, `mn >= (t + 1)(t + 2)`: the WLP fails.
    TGe4Fails,
    OutsideTheorem,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::TEqualsMinSlp => "t_equals_min_SLP",
            Case::T2Fails => "t2_fails",
            Case::T3Fails => "t3_fails",
            Case::TGe4Fails => "t_ge4_fails",
            Case::OutsideTheorem => "outside_theorem",
        }
    }
}

pub fn classify(shape: GridShape) -> Case {
    case_of(shape.t(), shape.m(), shape.n())
}

/// [`classify`] for parameters beyond the vertex limit of [`GridShape`].
pub fn classify_of(t: usize, m: usize, n: usize) -> Result<Case> {
    validate_parameters(t, m, n)?;
    Ok(case_of(t, m, n))
}

fn case_of(t: usize, m: usize, n: usize) -> Case {
    let mn = m * n;
    if t == m.min(n) {
        Case::TEqualsMinSlp
    } else if t == 2 && mn >= 16 {
        Case::T2Fails
    } else if t == 3 && mn >= 24 {
        Case::T3Fails
    } else if t >= 4 && mn >= (t + 1) * (t + 2) {
        Case::TGe4Fails
    } else {
        Case::OutsideTheorem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(t: usize, m: usize, n: usize) -> GridShape {
        GridShape::new(t, m, n).unwrap()
    }

    #[test]
    fn closed_forms_on_near_square_grids() {
        for t in 2..=8 {
            let f = f_value(shape(t, t + 1, t + 1));
            assert_eq!(f, BigInt::from(-((t * (t + 1) / 2) as i64)));
            let f = f_value(shape(t, t + 1, t + 2));
            let expect = ((t + 1) * (t + 2) * t) as i64 * (t as i64 - 5) / 24;
            assert_eq!(f, BigInt::from(expect));
        }
        assert_eq!(f_value(shape(2, 3, 6)), BigInt::from(0));
    }

    #[test]
    fn certificate_rejects_maximal_minors() {
        assert!(failure_certificate(shape(3, 3, 5)).is_err());
        assert!(
            failure_certificate(shape(2, 4, 4))
                .unwrap()
                .certifies_wlp_failure
        );
        assert!(
            !failure_certificate(shape(2, 3, 4))
                .unwrap()
                .certifies_wlp_failure
        );
    }

    #[test]
    fn classification() {
        assert_eq!(classify(shape(2, 2, 5)), Case::TEqualsMinSlp);
        assert_eq!(classify(shape(2, 4, 4)), Case::T2Fails);
        assert_eq!(classify(shape(2, 3, 5)), Case::OutsideTheorem);
        assert_eq!(classify(shape(3, 4, 6)), Case::T3Fails);
        assert_eq!(classify(shape(3, 4, 5)), Case::OutsideTheorem);
        assert_eq!(classify(shape(4, 5, 6)), Case::TGe4Fails);
        assert_eq!(classify(shape(4, 5, 5)), Case::OutsideTheorem);
    }
}
