//! Complex fixed-point numbers on `BigInt` with a 512-bit fraction.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Signed, ToPrimitive, Zero};

pub const FRAC_BITS: u32 = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct Fixed(pub BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Fixed(v.into() << FRAC_BITS)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        let (mantissa, exponent, sign) = v.integer_decode();
        let m = BigInt::from(mantissa) * i64::from(sign);
        let shift = i64::from(exponent) + i64::from(FRAC_BITS);
        Fixed(if shift >= 0 { m << shift as u32 } else { m >> (-shift) as u32 })
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.0.bits() as i64;
        let drop = (bits - 64).max(0);
        let top = (&self.0 >> drop as u32).to_f64().unwrap_or(0.0);
        top * 2f64.powi((drop - i64::from(FRAC_BITS)) as i32)
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0) >> FRAC_BITS)
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 << FRAC_BITS) / &o.0)
    }

    pub fn abs(&self) -> Fixed {
        Fixed(self.0.abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl CFixed {
    pub fn zero() -> Self {
        CFixed {
            re: Fixed::zero(),
            im: Fixed::zero(),
        }
    }

    pub fn one() -> Self {
        CFixed {
            re: Fixed::from_int(1),
            im: Fixed::zero(),
        }
    }

    pub fn from_c64(z: Complex64) -> Self {
        CFixed {
            re: Fixed::from_f64(z.re),
            im: Fixed::from_f64(z.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &CFixed) -> CFixed {
        CFixed {
            re: Fixed(&self.re.0 + &o.re.0),
            im: Fixed(&self.im.0 + &o.im.0),
        }
    }

    pub fn mul(&self, o: &CFixed) -> CFixed {
        CFixed {
            re: Fixed(&self.re.mul(&o.re).0 - &self.im.mul(&o.im).0),
            im: Fixed(&self.re.mul(&o.im).0 + &self.im.mul(&o.re).0),
        }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> CFixed {
        let k = k.into();
        CFixed {
            re: Fixed(&self.re.0 * &k),
            im: Fixed(&self.im.0 * &k),
        }
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> CFixed {
        let k = k.into();
        CFixed {
            re: Fixed(&self.re.0 / &k),
            im: Fixed(&self.im.0 / &k),
        }
    }

    pub fn div(&self, o: &CFixed) -> CFixed {
        let den = Fixed(&o.re.mul(&o.re).0 + &o.im.mul(&o.im).0);
        let conj = CFixed {
            re: o.re.clone(),
            im: Fixed(-&o.im.0),
        };
        let num = self.mul(&conj);
        CFixed {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }

    /// `max(|re|, |im|)` as `f64`, enough for tail estimates.
    pub fn magnitude(&self) -> f64 {
        self.re.abs().to_f64().max(self.im.abs().to_f64())
    }
}
