//! Scalar helpers for exact rationals and big integers.
//!
//! Every vector and matrix entry in the crate is a [`Rat`]. On the wire a
//! rational is the string `"p/q"` (or `"p"` when the denominator is one).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn from_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn int_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| ri(x)).collect()
}

pub fn lcm_denominators(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

/// Clears denominators and divides by the content. Direction (sign) is kept,
/// so this is the canonical primitive generator of the ray through `v`.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let l = lcm_denominators(v);
    let ints: Vec<Int> = v.iter().map(|x| (x * from_int(&l)).to_integer()).collect();
    primitive_int(ints)
}

pub fn primitive_int(mut v: Vec<Int>) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

pub fn floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| s * x).collect()
}

pub fn abs_int(x: &Int) -> Int {
    x.abs()
}
