//! Error function.
//!
//! Backed by the fdlibm rational approximations in `libm`, accurate to a few
//! ulp over the whole real line.

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
