//! Printed reference values the verification suite checks against.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::polynomial::IntPoly;

/// Printed coefficients of `D(Γ(Z_32), x)` from the factored prime-power
/// formula, ascending from `x^0`.
pub const PRIME_POWER_32_COEFFS: [i64; 19] = [
    0, 2, 33, 256, 1240, 4200, 10556, 20384, 30888, 37180, 35750, 27456, 16744, 8008, 2940, 800,
    153, 18, 1,
];

/// Printed coefficients of `D(Γ(Z_15), x)`.
pub const PQ_15_COEFFS: [i64; 16] = [
    0, 8, 84, 429, 1346, 2997, 5004, 6435, 6435, 5005, 3003, 1365, 455, 105, 15, 1,
];

/// Printed zeros of the degree-18 polynomial [`PRIME_POWER_32_COEFFS`].
/// Entries with a nonzero imaginary part stand for a conjugate pair.
pub const PRIME_POWER_32_ZEROS: [(f64, f64); 10] = [
    (0.0, 0.0),
    (-0.495409, 0.0),
    (-4.46004, 2.50073),
    (-1.16758, 2.27659),
    (-0.606709, 1.2419),
    (-0.523464, 0.773364),
    (-0.50421, 0.514706),
    (-0.498372, 0.342698),
    (-0.496332, 0.211938),
    (-0.495595, 0.10164),
];

/// The 21-value zero list printed after the `n = 15` example; its length
/// matches degree 21, not 15.
pub const PQ_LIST_ZEROS: [(f64, f64); 11] = [
    (0.0, 0.0),
    (-2.30127, 0.242051),
    (-2.11029, 0.681178),
    (-1.77132, 1.00249),
    (-1.34121, 1.16435),
    (-0.941712, 0.680334),
    (-0.877278, 1.1393),
    (-0.491186, 0.911887),
    (-0.365031, 0.729321),
    (-0.218239, 0.15275),
    (-0.0824722, 0.489912),
];

/// Coefficient specimens for the shape classifiers:
/// `(coefficients, unimodal, log_concave, oscillations)`.
pub const SHAPE_SPECIMENS: [(&[i64], bool, bool, Option<usize>); 3] = [
    (&[3, 8, 11, 13, 15, 17, 19, 13, 1], true, true, None),
    (&[1, 3, 4, 5, 2, 1], true, false, None),
    (&[1, 7, 2020, 1990, 2024, 2000], false, false, Some(2)),
];

pub fn prime_power_32() -> IntPoly {
    IntPoly::from_i64s(&PRIME_POWER_32_COEFFS)
}

pub fn pq_15() -> IntPoly {
    IntPoly::from_i64s(&PQ_15_COEFFS)
}

/// Expands `±` entries into both conjugates.
pub fn expand_conjugates(list: &[(f64, f64)]) -> Vec<Complex64> {
    let mut out = Vec::new();
    for &(re, im) in list {
        out.push(Complex64::new(re, im));
        if im != 0.0 {
            out.push(Complex64::new(re, -im));
        }
    }
    out
}
