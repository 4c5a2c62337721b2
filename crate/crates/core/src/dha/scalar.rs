use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `a + b v` of `Q(v)`, `v = sqrt(q)`, for a fixed prime `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt {
    a: BigRational,
    b: BigRational,
    q: u32,
}

impl QSqrt {
    pub fn new(a: BigRational, b: BigRational, q: u32) -> Self {
        QSqrt { a, b, q }
    }

    pub fn zero(q: u32) -> Self {
        QSqrt {
            a: BigRational::zero(),
            b: BigRational::zero(),
            q,
        }
    }

    pub fn one(q: u32) -> Self {
        Self::rational(BigRational::one(), q)
    }

    pub fn rational(a: BigRational, q: u32) -> Self {
        QSqrt {
            a,
            b: BigRational::zero(),
            q,
        }
    }

    pub fn v(q: u32) -> Self {
        QSqrt {
            a: BigRational::zero(),
            b: BigRational::one(),
            q,
        }
    }

    /// `c * v^e` for any integer `e`.
    pub fn monomial(c: BigRational, e: i64, q: u32) -> Self {
        let (k, r) = e.div_mod_floor(&2);
        let c = c * crate::hall::q_pow(q, k);
        if r == 0 {
            Self::rational(c, q)
        } else {
            QSqrt {
                a: BigRational::zero(),
                b: c,
                q,
            }
        }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn q_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.q))
    }

    fn same_q(&self, other: &QSqrt) {
        assert_eq!(self.q, other.q, "scalars over different square roots");
    }

    pub fn inv(&self) -> Result<QSqrt> {
        // (a + bv)^{-1} = (a - bv) / (a^2 - q b^2); the norm vanishes only at zero since q is
        // not a rational square
        let norm = &self.a * &self.a - self.q_rat() * &self.b * &self.b;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QSqrt {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            q: self.q,
        })
    }

    pub fn scale(&self, c: &BigRational) -> QSqrt {
        QSqrt {
            a: &self.a * c,
            b: &self.b * c,
            q: self.q,
        }
    }

    /// Parses the `a + b*v` form produced by `Display`.
    pub fn parse(s: &str, q: u32) -> Result<QSqrt> {
        let bad = || Error::Parse(format!("bad scalar {s:?}"));
        let (a, b) = s.split_once(" + ").ok_or_else(bad)?;
        let b = b.strip_suffix("*v").ok_or_else(bad)?;
        let a: BigRational = a.trim().parse().map_err(|_| bad())?;
        let b: BigRational = b.trim().parse().map_err(|_| bad())?;
        Ok(QSqrt { a, b, q })
    }
}

/// Exponent `n` with `r = q^n`, or `NotAPureQPower`.
pub fn q_exponent(r: &BigRational, q: u32) -> Result<i64> {
    if !r.is_positive() {
        return Err(Error::NotAPureQPower(r.to_string()));
    }
    let qb = BigInt::from(q);
    let strip = |mut x: BigInt| -> (BigInt, i64) {
        let mut n = 0;
        while !x.is_zero() && (&x % &qb).is_zero() {
            x /= &qb;
            n += 1;
        }
        (x, n)
    };
    let (num, en) = strip(r.numer().clone());
    let (den, ed) = strip(r.denom().clone());
    if !num.is_one() || !den.is_one() {
        return Err(Error::NotAPureQPower(r.to_string()));
    }
    Ok(en - ed)
}

/// `sqrt(q^n) = v^n`; anything that is not a power of `q` is rejected.
pub fn sqrt_qpower(r: &BigRational, q: u32) -> Result<QSqrt> {
    let n = q_exponent(r, q)?;
    Ok(QSqrt::monomial(BigRational::one(), n, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Inv,
    SqrtQPower,
}

/// Table-driven access to the scalar operations. `Inv` and `SqrtQPower` ignore `y`; the
/// square root accepts only rational inputs.
pub fn scalar_ops(x: &QSqrt, y: &QSqrt, op: ScalarOp) -> Result<QSqrt> {
    match op {
        ScalarOp::Add => Ok(x + y),
        ScalarOp::Mul => Ok(x * y),
        ScalarOp::Inv => x.inv(),
        ScalarOp::SqrtQPower => {
            if !x.is_rational() {
                return Err(Error::NotAPureQPower(x.to_string()));
            }
            sqrt_qpower(&x.a, x.q)
        }
    }
}

impl Add for &QSqrt {
    type Output = QSqrt;
    fn add(self, o: &QSqrt) -> QSqrt {
        self.same_q(o);
        QSqrt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            q: self.q,
        }
    }
}

impl Sub for &QSqrt {
    type Output = QSqrt;
    fn sub(self, o: &QSqrt) -> QSqrt {
        self.same_q(o);
        QSqrt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            q: self.q,
        }
    }
}

impl Mul for &QSqrt {
    type Output = QSqrt;
    fn mul(self, o: &QSqrt) -> QSqrt {
        self.same_q(o);
        QSqrt {
            a: &self.a * &o.a + self.q_rat() * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            q: self.q,
        }
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt {
            a: -&self.a,
            b: -&self.b,
            q: self.q,
        }
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*v", self.a, self.b)
    }
}

impl fmt::Debug for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scalar_examples() {
        let one = QSqrt::one(2);
        let v = QSqrt::v(2);
        assert_eq!(&(&one + &v) * &(&one - &v), QSqrt::rational(r(-1, 1), 2));
        assert_eq!(sqrt_qpower(&r(4, 1), 2).unwrap(), QSqrt::rational(r(2, 1), 2));
        assert_eq!(sqrt_qpower(&r(8, 1), 2).unwrap(), QSqrt::new(r(0, 1), r(2, 1), 2));
        assert_eq!(sqrt_qpower(&r(1, 2), 2).unwrap(), QSqrt::new(r(0, 1), r(1, 2), 2));
        assert!(matches!(sqrt_qpower(&r(3, 1), 2), Err(Error::NotAPureQPower(_))));
        assert!(matches!(sqrt_qpower(&r(-4, 1), 2), Err(Error::NotAPureQPower(_))));
        assert_eq!(QSqrt::zero(3).inv(), Err(Error::DivisionByZero));
        assert_eq!(QSqrt::new(r(0, 1), r(3, 2), 2).to_string(), "0 + 3/2*v");
        assert_eq!(QSqrt::parse("0 + 3/2*v", 2).unwrap(), QSqrt::new(r(0, 1), r(3, 2), 2));
        assert_eq!(
            scalar_ops(&QSqrt::rational(r(9, 1), 3), &QSqrt::zero(3), ScalarOp::SqrtQPower).unwrap(),
            QSqrt::rational(r(3, 1), 3)
        );
    }

    #[test]
    fn monomials() {
        for q in [2u32, 3, 5] {
            let v = QSqrt::v(q);
            let mut acc = QSqrt::one(q);
            for e in 0..7 {
                assert_eq!(QSqrt::monomial(BigRational::one(), e, q), acc);
                assert_eq!(QSqrt::monomial(BigRational::one(), -e, q), acc.inv().unwrap());
                acc = &acc * &v;
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar(q: u32) -> impl Strategy<Value = QSqrt> {
            (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(move |(a, b, c, d)| QSqrt::new(r(a, b), r(c, d), q))
        }

        proptest! {
            #[test]
            fn ring_laws(x in scalar(2), y in scalar(2), z in scalar(2)) {
                prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&x * &y, &y * &x);
            }

            #[test]
            fn inverse(x in scalar(3)) {
                prop_assume!(!x.is_zero());
                prop_assert_eq!(&x * &x.inv().unwrap(), QSqrt::one(3));
            }

            #[test]
            fn display_roundtrip(x in scalar(5)) {
                prop_assert_eq!(QSqrt::parse(&x.to_string(), 5).unwrap(), x);
            }
        }
    }
}
