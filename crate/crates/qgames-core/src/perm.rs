//! Permutation matrices for transpositions and the signed det-+1
//! representation of S₃ used for classical qutrit strategies.

use crate::linalg::{Complex64, ComplexMatrix};

/// Errors from permutation-matrix construction.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum PermError {
    #[error("transposition indices must satisfy 1 ≤ i ≠ j ≤ {n}, got ({i}, {j})")]
    InvalidIndices { n: usize, i: usize, j: usize },
}

/// A transposition i ↔ j acting on dimension n (1-based indices, i < j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transposition {
    n: usize,
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self, PermError> {
        if i == j || i < 1 || j < 1 || i > n || j > n {
            return Err(PermError::InvalidIndices { n, i, j });
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Ok(Self { n, i, j })
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(self.n);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (a, b) = (self.i - 1, self.j - 1);
        m.set(a, a, zero);
        m.set(b, b, zero);
        m.set(a, b, one);
        m.set(b, a, one);
        m
    }
}

/// Unsigned N×N permutation matrix swapping basis vectors i and j (1-based).
pub fn plain_transposition(n: usize, i: usize, j: usize) -> Result<ComplexMatrix, PermError> {
    Ok(Transposition::new(n, i, j)?.matrix())
}

/// Labels for the six elements of S₃ in the signed det-+1 representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Su3Label {
    /// Identity, (123).
    Id,
    /// Signed swap 1↔2, (213).
    S12,
    /// Signed swap 1↔3, (321).
    S13,
    /// Signed swap 2↔3, (132).
    S23,
    /// Cyclic (312).
    S312,
    /// Cyclic (231).
    S231,
}

impl Su3Label {
    pub const ALL: [Su3Label; 6] = [
        Su3Label::Id,
        Su3Label::S12,
        Su3Label::S13,
        Su3Label::S23,
        Su3Label::S312,
        Su3Label::S231,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Su3Label::Id => "1",
            Su3Label::S12 => "S12",
            Su3Label::S13 => "S13",
            Su3Label::S23 => "S23",
            Su3Label::S312 => "S312",
            Su3Label::S231 => "S231",
        }
    }
}

/// One element of the signed SU(3) representation of S₃.
#[derive(Debug, Clone, PartialEq)]
pub struct SU3Classical {
    pub label: Su3Label,
    pub matrix: ComplexMatrix,
}

/// The signed unit-determinant 3×3 matrix for the given S₃ element.
///
/// Transpositions carry a global −1 so that every element has determinant +1;
/// the cyclic elements are plain permutation matrices.
pub fn su3_classical(label: Su3Label) -> SU3Classical {
    #[rustfmt::skip]
    let reals: [f64; 9] = match label {
        Su3Label::Id => [
            1.0, 0.0, 0.0,
            0.0, 1.0, 0.0,
            0.0, 0.0, 1.0,
        ],
        Su3Label::S12 => [
            0.0, -1.0, 0.0,
            -1.0, 0.0, 0.0,
            0.0, 0.0, -1.0,
        ],
        Su3Label::S13 => [
            0.0, 0.0, -1.0,
            0.0, -1.0, 0.0,
            -1.0, 0.0, 0.0,
        ],
        Su3Label::S23 => [
            -1.0, 0.0, 0.0,
            0.0, 0.0, -1.0,
            0.0, -1.0, 0.0,
        ],
        Su3Label::S312 => [
            0.0, 0.0, 1.0,
            1.0, 0.0, 0.0,
            0.0, 1.0, 0.0,
        ],
        Su3Label::S231 => [
            0.0, 1.0, 0.0,
            0.0, 0.0, 1.0,
            1.0, 0.0, 0.0,
        ],
    };
    SU3Classical {
        label,
        matrix: ComplexMatrix::from_real(3, 3, &reals),
    }
}

/// One verified multiplication relation of the signed S₃ representation.
#[derive(Debug, Clone)]
pub struct GroupRelation {
    pub name: &'static str,
    pub residual: f64,
}

/// Check the defining relations of the signed S₃ representation.
///
/// All residuals are exactly zero: the matrices have integer entries, so the
/// products are exact in floating point.
pub fn verify_group_table() -> Vec<GroupRelation> {
    let id = su3_classical(Su3Label::Id).matrix;
    let s12 = su3_classical(Su3Label::S12).matrix;
    let s13 = su3_classical(Su3Label::S13).matrix;
    let s23 = su3_classical(Su3Label::S23).matrix;
    let s312 = su3_classical(Su3Label::S312).matrix;
    let s231 = su3_classical(Su3Label::S231).matrix;

    vec![
        GroupRelation {
            name: "1*S12 = S12",
            residual: id.matmul(&s12).max_abs_diff(&s12),
        },
        GroupRelation {
            name: "S12^2 = 1",
            residual: s12.matmul(&s12).max_abs_diff(&id),
        },
        GroupRelation {
            name: "S13^2 = 1",
            residual: s13.matmul(&s13).max_abs_diff(&id),
        },
        GroupRelation {
            name: "S13*S12*S13 = S23",
            residual: s13.matmul(&s12).matmul(&s13).max_abs_diff(&s23),
        },
        GroupRelation {
            name: "S13*S12 = S312",
            residual: s13.matmul(&s12).max_abs_diff(&s312),
        },
        GroupRelation {
            name: "S12*S13 = S231",
            residual: s12.matmul(&s13).max_abs_diff(&s231),
        },
    ]
}

/// Determinant of a 3×3 complex matrix (cofactor expansion).
pub fn det3(m: &ComplexMatrix) -> Complex64 {
    assert_eq!((m.rows(), m.cols()), (3, 3));
    m.get(0, 0) * (m.get(1, 1) * m.get(2, 2) - m.get(1, 2) * m.get(2, 1))
        - m.get(0, 1) * (m.get(1, 0) * m.get(2, 2) - m.get(1, 2) * m.get(2, 0))
        + m.get(0, 2) * (m.get(1, 0) * m.get(2, 1) - m.get(1, 1) * m.get(2, 0))
}
