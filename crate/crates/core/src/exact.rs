//! Exact Gaussian-rational scalars.
//!
//! Everything that must hold "exactly" (Grassmann arithmetic, the flat Moyal
//! product, BCH coefficients for rational structure constants) runs over
//! `Complex<Ratio<i128>>`. Overflow panics in debug builds rather than
//! silently wrapping.

use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i128>;
pub type CRational = Complex<Rational>;

/// `re + im·i` with integer parts.
pub fn cq(re: i128, im: i128) -> CRational {
    Complex::new(Rational::from_integer(re), Rational::from_integer(im))
}

/// The real rational `num/den`.
pub fn frac(num: i128, den: i128) -> CRational {
    Complex::new(Rational::new(num, den), Rational::zero())
}

pub fn i_unit() -> CRational {
    cq(0, 1)
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> CRational {
    match k.rem_euclid(4) {
        0 => cq(1, 0),
        1 => cq(0, 1),
        2 => cq(-1, 0),
        _ => cq(0, -1),
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn to_c64(x: &CRational) -> Complex64 {
    Complex64::new(rational_to_f64(&x.re), rational_to_f64(&x.im))
}

/// Recovers the exact rational behind `x` when it has a denominator below
/// `max_den` and round-trips bit-for-bit; `None` for irrationals like √3.
pub fn rationalize(x: f64, max_den: i128) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    if x == x.trunc() && x.abs() < 1e15 {
        return Some(Rational::from_integer(x as i128));
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den {
            break;
        }
        if h2 as f64 / k2 as f64 == x {
            return Some(Rational::new(h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac_part = y - y.floor();
        if frac_part == 0.0 {
            break;
        }
        y = 1.0 / frac_part;
    }
    None
}

pub fn rationalize_complex(z: Complex64, max_den: i128) -> Option<CRational> {
    Some(Complex::new(rationalize(z.re, max_den)?, rationalize(z.im, max_den)?))
}

fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Canonical text form: `3/2`, `-i`, `1/2-3/4*i`; re-parseable by the
/// polynomial grammar.
pub fn format_cq(z: &CRational) -> String {
    let re_zero = z.re.is_zero();
    let im_zero = z.im.is_zero();
    let im_part = |with_sign: bool| {
        let mag = z.im.abs();
        let sign = if z.im.is_negative() {
            "-"
        } else if with_sign {
            "+"
        } else {
            ""
        };
        if mag.is_one() {
            format!("{sign}i")
        } else {
            format!("{sign}{}*i", fmt_rational(&mag))
        }
    };
    match (re_zero, im_zero) {
        (true, true) => "0".into(),
        (false, true) => fmt_rational(&z.re),
        (true, false) => im_part(false),
        (false, false) => format!("{}{}", fmt_rational(&z.re), im_part(true)),
    }
}
