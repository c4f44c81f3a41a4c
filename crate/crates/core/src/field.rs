//! Exact scalar fields used by the homotopy oracle.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact field. Everything in the oracle is generic over this.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Characteristic, 0 for the rationals.
    fn characteristic() -> u64;
}

/// The prime field with `P` elements. `P` must be a prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + P - o.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in Fp")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn characteristic() -> u64 {
        P
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u64 {
        0
    }
}

/// Primes the command line can dispatch to; the field is a compile-time parameter.
pub const SUPPORTED_PRIMES: &[u64] = &[101, 32003, 65521, 1_000_003, 2_147_483_647];

pub const DEFAULT_PRIME: u64 = 32003;

/// A field-generic computation, run over 𝔽_p for a p chosen at run time.
pub trait PrimeVisitor {
    type Output;
    fn visit<F: Field>(self) -> Self::Output;
}

/// `None` if p is not in [`SUPPORTED_PRIMES`].
pub fn with_prime<V: PrimeVisitor>(p: u64, v: V) -> Option<V::Output> {
    Some(match p {
        101 => v.visit::<Fp<101>>(),
        32003 => v.visit::<Fp<32003>>(),
        65521 => v.visit::<Fp<65521>>(),
        1_000_003 => v.visit::<Fp<1_000_003>>(),
        2_147_483_647 => v.visit::<Fp<2_147_483_647>>(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn dispatch_covers_the_table() {
        struct Char;
        impl PrimeVisitor for Char {
            type Output = u64;
            fn visit<F: Field>(self) -> u64 {
                F::characteristic()
            }
        }
        for &p in SUPPORTED_PRIMES {
            assert_eq!(with_prime(p, Char), Some(p));
        }
        assert_eq!(with_prime(7, Char), None);
    }

    #[test]
    fn fp_arithmetic() {
        let a = F7::from_i64(3);
        let b = F7::from_i64(-2);
        assert_eq!(a + b, F7::from_i64(1));
        assert_eq!(a * b, F7::from_i64(1));
        assert_eq!(a - b, F7::from_i64(5));
        assert_eq!(-a, F7::from_i64(4));
        for v in 1..7 {
            let x = F7::from_i64(v);
            assert_eq!(x * x.inv().unwrap(), F7::one());
        }
        assert!(F7::zero().inv().is_none());
    }

    #[test]
    fn large_prime_no_overflow() {
        type Big = Fp<2_147_483_647>;
        let x = Big::from_i64(-1);
        assert_eq!(x * x, Big::one());
        assert_eq!(x.inv().unwrap(), x);
    }

    #[test]
    fn rationals() {
        let h = BigRational::from_i64(1) / BigRational::from_i64(2);
        assert_eq!(h.inv().unwrap(), BigRational::from_i64(2));
    }
}
