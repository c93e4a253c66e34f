//! Gaussian rationals `Q(i)`.
//!
//! Wire format: `"a"`, `"b*i"`, `"a+b*i"` or `"a-b*i"` with `a`, `b` exact
//! rationals (`"p/q"`); a bare `"i"` means `1*i`.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rat::{format_rat, parse_rat};
use crate::linalg::{Matrix, QMat, Rat};

pub type GRat = Complex<Rat>;
pub type CMat = Matrix<GRat>;

pub fn g(re: Rat, im: Rat) -> GRat {
    Complex::new(re, im)
}

pub fn real(r: Rat) -> GRat {
    Complex::new(r, Rat::zero())
}

pub fn i_unit() -> GRat {
    Complex::new(Rat::zero(), Rat::one())
}

pub fn is_gaussian_integer(z: &GRat) -> bool {
    z.re.is_integer() && z.im.is_integer()
}

pub fn conj_vec(v: &[GRat]) -> Vec<GRat> {
    v.iter().map(Complex::conj).collect()
}

pub fn complexify(m: &QMat) -> CMat {
    m.map(|x| real(x.clone()))
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i32) -> GRat {
    match k.rem_euclid(4) {
        0 => real(Rat::one()),
        1 => i_unit(),
        2 => real(-Rat::one()),
        _ => -i_unit(),
    }
}

pub fn parse_grat(s: &str) -> Result<GRat> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a Gaussian rational: {s:?}"));
    let Some(body) = t.strip_suffix('i') else {
        return Ok(real(parse_rat(&t)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = im.strip_suffix('*').unwrap_or(im);
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let re = parse_rat(re).map_err(|_| bad())?;
    let im = parse_rat(im).map_err(|_| bad())?;
    Ok(g(re, im))
}

pub fn format_grat(z: &GRat) -> String {
    if z.im.is_zero() {
        return format_rat(&z.re);
    }
    let im = format!("{}*i", format_rat(&z.im.abs()));
    if z.re.is_zero() {
        if z.im.is_negative() {
            format!("-{im}")
        } else {
            im
        }
    } else {
        let sign = if z.im.is_negative() { '-' } else { '+' };
        format!("{}{sign}{im}", format_rat(&z.re))
    }
}
