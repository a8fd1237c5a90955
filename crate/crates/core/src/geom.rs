//! Planar vectors represented as complex numbers.
//!
//! A point or momentum in the plane is a `Complex64`: multiplication by `i`
//! is the quarter-turn rotation and conjugation flips the second component.
//! The inner and outer products of two planar vectors are the real and
//! imaginary parts of `a.conj() * b`.

pub use num_complex::Complex64 as Planar;

/// Inner product `a · b`.
#[inline]
pub fn dot(a: Planar, b: Planar) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Outer product `a ∧ b` (the planar cross product).
#[inline]
pub fn wedge(a: Planar, b: Planar) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Quarter-turn rotation `i·a`.
#[inline]
pub fn rot90(a: Planar) -> Planar {
    Planar::new(-a.im, a.re)
}

/// Unit rotation `exp(iθ)`.
#[inline]
pub fn rotor(theta: f64) -> Planar {
    Planar::new(theta.cos(), theta.sin())
}

#[inline]
pub fn planar(x: f64, y: f64) -> Planar {
    Planar::new(x, y)
}
