//! Fixed-size complex 2x2 matrices.

use std::ops::Mul;

use num_complex::Complex;

use crate::scalar::Real;

/// Complex 2x2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Real> Mat2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let (o, z) = (
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        );
        Mat2::new(o, z, z, o)
    }

    pub fn trace(&self) -> Complex<T> {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        Mat2::new(
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        )
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Integer power by repeated squaring.
    pub fn powu(&self, mut t: u64) -> Self {
        let mut acc = Mat2::identity();
        let mut base = *self;
        while t > 0 {
            if t & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            t >>= 1;
        }
        acc
    }

    /// Both roots of the characteristic polynomial `λ² − tr·λ + det`.
    pub fn eigenvalues(&self) -> (Complex<T>, Complex<T>) {
        let two = T::lit(2.0);
        let tr = self.trace();
        let disc = (tr * tr - self.det() * T::lit(4.0)).sqrt();
        ((tr + disc) / two, (tr - disc) / two)
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eigenvalues_are_roots() {
        let m = Mat2::new(c(0.3, 0.1), c(-0.2, 0.5), c(1.1, 0.0), c(-0.4, 0.7));
        let (a, b) = m.eigenvalues();
        for l in [a, b] {
            let shifted = m.sub(&Mat2::identity().scale(l));
            assert!(shifted.det().norm() < 1e-14);
        }
        assert!((a + b - m.trace()).norm() < 1e-14);
    }

    #[test]
    fn powu_matches_repeated_product() {
        let m = Mat2::new(c(0.5, 0.2), c(0.1, -0.3), c(0.0, 0.4), c(0.6, 0.0));
        let mut acc = Mat2::identity();
        for _ in 0..13 {
            acc = acc * m;
        }
        assert!(m.powu(13).sub(&acc).max_abs() < 1e-15);
        assert_eq!(m.powu(0), Mat2::identity());
    }
}
