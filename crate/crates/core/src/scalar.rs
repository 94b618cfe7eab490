//! Exact scalars over the three supported division rings: the rationals, a
//! prime field `F_p`, and the rational quaternions.
//!
//! Fractions are always stored in lowest terms with positive denominator, so
//! equality is structural. Prime-field residues are canonical in `[0, p)`.
//! Quaternion multiplication is the only noncommutative case.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Which division ring the scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Rationals,
    /// `F_p`; the modulus is verified prime at construction time.
    PrimeField(u64),
    RationalQuaternions,
}

impl RingDescriptor {
    /// Builds a prime-field descriptor, rejecting composite moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingDescriptor::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, RingDescriptor::RationalQuaternions)
    }

    /// The field over which the center is coordinatized: the descriptor itself
    /// for commutative rings, the rationals for quaternions.
    pub fn base(&self) -> RingDescriptor {
        match self {
            RingDescriptor::RationalQuaternions => RingDescriptor::Rationals,
            d => *d,
        }
    }

    /// Dimension of the ring over its center: 1, except 4 for quaternions.
    pub fn center_dim(&self) -> usize {
        match self {
            RingDescriptor::RationalQuaternions => 4,
            _ => 1,
        }
    }

    /// A finite set spanning the ring over its center: `{1}` for commutative
    /// descriptors, `{1, i, j, k}` for the rational quaternions.
    pub fn central_generating_set(&self) -> Vec<Scalar> {
        match self {
            RingDescriptor::RationalQuaternions => vec![
                Scalar::quaternion_units(1, 0, 0, 0),
                Scalar::quaternion_units(0, 1, 0, 0),
                Scalar::quaternion_units(0, 0, 1, 0),
                Scalar::quaternion_units(0, 0, 0, 1),
            ],
            d => vec![Scalar::one(*d)],
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rationals => write!(f, "rationals"),
            RingDescriptor::PrimeField(p) => write!(f, "prime_field {}", p),
            RingDescriptor::RationalQuaternions => write!(f, "rational_quaternions"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |s| s <= n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `w + xi + yj + zk` stored as four integer numerators over one positive
/// common denominator, fully reduced. Compared to four independent fractions
/// this turns the Hamilton product into plain integer multiplications with a
/// single normalization at the end, which is an order of magnitude faster and
/// keeps equality structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quat {
    nums: [BigInt; 4],
    den: BigInt,
}

impl Quat {
    /// Restores the invariants: positive denominator, no common factor.
    fn reduced(nums: [BigInt; 4], den: BigInt) -> Quat {
        debug_assert!(!den.is_zero());
        let mut q = Quat { nums, den };
        if q.den.is_negative() {
            q.den = -q.den;
            q.nums = q.nums.map(|n| -n);
        }
        if !q.den.is_one() {
            let mut g = q.den.clone();
            for n in &q.nums {
                g = g.gcd(n);
                if g.is_one() {
                    return q;
                }
            }
            for n in &mut q.nums {
                *n = &*n / &g;
            }
            q.den /= g;
        }
        q
    }

    fn from_integers(c: [i64; 4]) -> Quat {
        Quat {
            nums: c.map(BigInt::from),
            den: BigInt::one(),
        }
    }

    /// Reduced rationals share no prime with their denominator, so putting
    /// them over the least common denominator is already in lowest terms.
    fn from_rationals(c: [BigRational; 4]) -> Quat {
        let den = c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums = c.map(|x| x.numer() * (&den / x.denom()));
        Quat { nums, den }
    }

    /// The `[w, x, y, z]` component as a reduced fraction.
    pub fn component(&self, i: usize) -> BigRational {
        BigRational::new(self.nums[i].clone(), self.den.clone())
    }

    /// The real component; this is the commutator-invariant part of a
    /// quaternion, which is why trace comparisons go through it.
    pub fn real(&self) -> BigRational {
        self.component(0)
    }

    pub fn is_central(&self) -> bool {
        self.nums[1].is_zero() && self.nums[2].is_zero() && self.nums[3].is_zero()
    }

    fn is_zero(&self) -> bool {
        self.nums.iter().all(|n| n.is_zero())
    }

    fn is_one(&self) -> bool {
        self.den.is_one()
            && self.nums[0].is_one()
            && self.nums[1].is_zero()
            && self.nums[2].is_zero()
            && self.nums[3].is_zero()
    }

    fn add(&self, other: &Quat) -> Quat {
        if self.den == other.den {
            let nums = [
                &self.nums[0] + &other.nums[0],
                &self.nums[1] + &other.nums[1],
                &self.nums[2] + &other.nums[2],
                &self.nums[3] + &other.nums[3],
            ];
            if self.den.is_one() {
                return Quat {
                    nums,
                    den: BigInt::one(),
                };
            }
            return Quat::reduced(nums, self.den.clone());
        }
        let nums = [
            &self.nums[0] * &other.den + &other.nums[0] * &self.den,
            &self.nums[1] * &other.den + &other.nums[1] * &self.den,
            &self.nums[2] * &other.den + &other.nums[2] * &self.den,
            &self.nums[3] * &other.den + &other.nums[3] * &self.den,
        ];
        Quat::reduced(nums, &self.den * &other.den)
    }

    fn neg(&self) -> Quat {
        Quat {
            nums: [
                -&self.nums[0],
                -&self.nums[1],
                -&self.nums[2],
                -&self.nums[3],
            ],
            den: self.den.clone(),
        }
    }

    fn mul(&self, other: &Quat) -> Quat {
        let (w1, x1, y1, z1) = (&self.nums[0], &self.nums[1], &self.nums[2], &self.nums[3]);
        let (w2, x2, y2, z2) = (
            &other.nums[0],
            &other.nums[1],
            &other.nums[2],
            &other.nums[3],
        );
        let nums = [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ];
        if self.den.is_one() && other.den.is_one() {
            return Quat {
                nums,
                den: BigInt::one(),
            };
        }
        Quat::reduced(nums, &self.den * &other.den)
    }

    /// `(N/d)^-1 = conj(N) d / |N|^2`.
    fn inverse(&self) -> Quat {
        let norm: BigInt = self.nums.iter().map(|n| n * n).sum();
        let nums = [
            &self.nums[0] * &self.den,
            -&self.nums[1] * &self.den,
            -&self.nums[2] * &self.den,
            -&self.nums[3] * &self.den,
        ];
        Quat::reduced(nums, norm)
    }
}

/// An exact element of one of the three division rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { modulus: u64, value: u64 },
    Quaternion(Box<Quat>),
}

impl Scalar {
    pub fn descriptor(&self) -> RingDescriptor {
        match self {
            Scalar::Rational(_) => RingDescriptor::Rationals,
            Scalar::Residue { modulus, .. } => RingDescriptor::PrimeField(*modulus),
            Scalar::Quaternion(_) => RingDescriptor::RationalQuaternions,
        }
    }

    pub fn zero(d: RingDescriptor) -> Scalar {
        Scalar::from_integer(d, 0)
    }

    pub fn one(d: RingDescriptor) -> Scalar {
        Scalar::from_integer(d, 1)
    }

    pub fn from_integer(d: RingDescriptor, v: i64) -> Scalar {
        match d {
            RingDescriptor::Rationals => Scalar::Rational(BigRational::from(BigInt::from(v))),
            RingDescriptor::PrimeField(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Residue { modulus: p, value: r }
            }
            RingDescriptor::RationalQuaternions => {
                Scalar::Quaternion(Box::new(Quat::from_integers([v, 0, 0, 0])))
            }
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }

    pub fn quaternion(c: [BigRational; 4]) -> Scalar {
        Scalar::Quaternion(Box::new(Quat::from_rationals(c)))
    }

    /// Quaternion with integer components, handy for fixtures.
    pub fn quaternion_units(w: i64, x: i64, y: i64, z: i64) -> Scalar {
        Scalar::Quaternion(Box::new(Quat::from_integers([w, x, y, z])))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Quaternion(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Quaternion(c) => c.is_one(),
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.descriptor(),
            other.descriptor(),
            "scalar arithmetic across descriptors"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { modulus, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    modulus: *modulus,
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                }
            }
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => {
                Scalar::Quaternion(Box::new(a.add(b)))
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { modulus, value } => Scalar::Residue {
                modulus: *modulus,
                value: if *value == 0 { 0 } else { modulus - value },
            },
            Scalar::Quaternion(c) => Scalar::Quaternion(Box::new(c.neg())),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// Product in the stated order; noncommutative for quaternions.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        if self.is_zero() || other.is_one() {
            return self.clone();
        }
        if other.is_zero() || self.is_one() {
            return other.clone();
        }
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { modulus, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    modulus: *modulus,
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                }
            }
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => {
                Scalar::Quaternion(Box::new(a.mul(b)))
            }
            _ => unreachable!(),
        }
    }

    /// Two-sided inverse; quaternions go through conjugate over norm.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { modulus, value } => Scalar::Residue {
                modulus: *modulus,
                value: pow_mod(*value, *modulus - 2, *modulus),
            },
            Scalar::Quaternion(c) => Scalar::Quaternion(Box::new(c.inverse())),
        })
    }

    /// Coordinates of the scalar over its center, relative to the central
    /// generating set (so length 1, or 4 for quaternions). The coordinates
    /// live in the base descriptor.
    pub fn center_coords(&self) -> Vec<Scalar> {
        match self {
            Scalar::Quaternion(c) => (0..4).map(|i| Scalar::Rational(c.component(i))).collect(),
            s => vec![s.clone()],
        }
    }

    /// Inverse of [`center_coords`]: rebuilds a scalar of descriptor `d` from
    /// central coordinates.
    pub fn from_center_coords(d: RingDescriptor, coords: &[Scalar]) -> Scalar {
        match d {
            RingDescriptor::RationalQuaternions => {
                assert_eq!(coords.len(), 4);
                let comp = |s: &Scalar| match s {
                    Scalar::Rational(r) => r.clone(),
                    _ => panic!("quaternion coordinates must be rational"),
                };
                Scalar::quaternion([
                    comp(&coords[0]),
                    comp(&coords[1]),
                    comp(&coords[2]),
                    comp(&coords[3]),
                ])
            }
            _ => {
                assert_eq!(coords.len(), 1);
                coords[0].clone()
            }
        }
    }

    /// True when the scalar lies in the center of its ring.
    pub fn is_central(&self) -> bool {
        match self {
            Scalar::Quaternion(c) => c.is_central(),
            _ => true,
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else if r.denom().is_negative() {
        // BigRational keeps denominators positive; kept for safety.
        write!(f, "{}/{}", -r.numer(), -r.denom())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => fmt_rational(r, f),
            Scalar::Residue { value, .. } => write!(f, "{}", value),
            Scalar::Quaternion(c) => {
                write!(f, "(")?;
                for i in 0..4 {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    fmt_rational(&c.component(i), f)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_descriptor_rejects_composites() {
        assert!(RingDescriptor::prime_field(7).is_ok());
        assert!(matches!(
            RingDescriptor::prime_field(6),
            Err(Error::NotPrime(6))
        ));
        assert!(RingDescriptor::prime_field(1).is_err());
        assert!(RingDescriptor::prime_field(0).is_err());
    }

    #[test]
    fn inverse_of_one_is_one() {
        for d in [
            RingDescriptor::Rationals,
            RingDescriptor::prime_field(5).unwrap(),
            RingDescriptor::RationalQuaternions,
        ] {
            let one = Scalar::one(d);
            assert_eq!(one.inverse().unwrap(), one);
        }
    }

    #[test]
    fn rational_inverse_is_reciprocal() {
        // 3/4 -> 4/3
        let x = Scalar::Rational(BigRational::new(BigInt::from(3), BigInt::from(4)));
        let y = x.inverse().unwrap();
        assert_eq!(
            y,
            Scalar::Rational(BigRational::new(BigInt::from(4), BigInt::from(3)))
        );
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn quaternion_inverse_via_conjugate_over_norm() {
        // (1 + i)^{-1} = (1 - i)/2
        let x = Scalar::quaternion_units(1, 1, 0, 0);
        let y = x.inverse().unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            y,
            Scalar::quaternion([half.clone(), -half, BigRational::zero(), BigRational::zero()])
        );
        assert!(x.mul(&y).is_one());
        assert!(y.mul(&x).is_one());
    }

    #[test]
    fn inverting_zero_fails() {
        for d in [
            RingDescriptor::Rationals,
            RingDescriptor::prime_field(2).unwrap(),
            RingDescriptor::RationalQuaternions,
        ] {
            assert!(matches!(
                Scalar::zero(d).inverse(),
                Err(Error::ZeroInversion)
            ));
        }
    }

    #[test]
    fn quaternion_table() {
        let i = Scalar::quaternion_units(0, 1, 0, 0);
        let j = Scalar::quaternion_units(0, 0, 1, 0);
        let k = Scalar::quaternion_units(0, 0, 0, 1);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(i.mul(&i), Scalar::one(RingDescriptor::RationalQuaternions).neg());
    }

    #[test]
    fn central_generating_sets() {
        assert_eq!(
            RingDescriptor::Rationals.central_generating_set(),
            vec![Scalar::one(RingDescriptor::Rationals)]
        );
        let p2 = RingDescriptor::prime_field(2).unwrap();
        assert_eq!(p2.central_generating_set(), vec![Scalar::one(p2)]);
        let q = RingDescriptor::RationalQuaternions.central_generating_set();
        assert_eq!(q.len(), 4);
        assert!(q[0].is_one());
        assert!(q.iter().skip(1).all(|g| !g.is_central()));
    }

    #[test]
    fn center_coords_round_trip() {
        let d = RingDescriptor::RationalQuaternions;
        let x = Scalar::quaternion_units(2, -1, 0, 3);
        let c = x.center_coords();
        assert_eq!(c.len(), 4);
        assert_eq!(Scalar::from_center_coords(d, &c), x);
    }

    #[test]
    fn residues_are_canonical() {
        let d = RingDescriptor::prime_field(7).unwrap();
        assert_eq!(Scalar::from_integer(d, -1), Scalar::from_integer(d, 6));
        let x = Scalar::from_integer(d, 3);
        assert_eq!(x.mul(&x.inverse().unwrap()), Scalar::one(d));
    }

    // 10^4 randomized associativity/distributivity triples per descriptor.
    #[test]
    fn scalar_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let descriptors = [
            RingDescriptor::Rationals,
            RingDescriptor::prime_field(5).unwrap(),
            RingDescriptor::RationalQuaternions,
        ];
        for d in descriptors {
            for _ in 0..10_000 {
                let rnd = |rng: &mut rand_chacha::ChaCha8Rng| match d {
                    RingDescriptor::PrimeField(p) => {
                        Scalar::from_integer(d, rng.gen_range(0..p) as i64)
                    }
                    RingDescriptor::Rationals => Scalar::from_integer(d, rng.gen_range(-3..=3)),
                    RingDescriptor::RationalQuaternions => Scalar::quaternion_units(
                        rng.gen_range(-1..=1),
                        rng.gen_range(-1..=1),
                        rng.gen_range(-1..=1),
                        rng.gen_range(-1..=1),
                    ),
                };
                let (x, y, z) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
                assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
                assert_eq!(y.add(&z).mul(&x), y.mul(&x).add(&z.mul(&x)));
                if !x.is_zero() {
                    let xi = x.inverse().unwrap();
                    assert!(x.mul(&xi).is_one());
                    assert!(xi.mul(&x).is_one());
                }
            }
        }
    }
}
