use std::fmt;

use serde::{Deserialize, Serialize};

use super::linalg::IntMatrix;
use crate::error::{GeometryError, Result};

/// Index of one of the three structures, `1..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Alpha(u8);

impl Alpha {
    pub const ONE: Alpha = Alpha(1);
    pub const TWO: Alpha = Alpha(2);
    pub const THREE: Alpha = Alpha(3);
    pub const ALL: [Alpha; 3] = [Alpha::ONE, Alpha::TWO, Alpha::THREE];

    /// Cyclic (even) permutations `(β, γ, θ)` of `(1, 2, 3)`.
    pub const EVEN_PERMUTATIONS: [(Alpha, Alpha, Alpha); 3] = [
        (Alpha::ONE, Alpha::TWO, Alpha::THREE),
        (Alpha::TWO, Alpha::THREE, Alpha::ONE),
        (Alpha::THREE, Alpha::ONE, Alpha::TWO),
    ];

    pub fn new(a: u8) -> Result<Self> {
        if (1..=3).contains(&a) {
            Ok(Alpha(a))
        } else {
            Err(GeometryError::AlphaOutOfRange(a))
        }
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    /// 0-based position.
    #[inline]
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    /// The two other indices `(β, γ)` such that `(self, β, γ)` is cyclic.
    pub fn complement(self) -> (Alpha, Alpha) {
        let (_, b, c) = Alpha::EVEN_PERMUTATIONS[self.index()];
        (b, c)
    }
}

impl TryFrom<u8> for Alpha {
    type Error = GeometryError;
    fn try_from(a: u8) -> Result<Self> {
        Alpha::new(a)
    }
}

impl From<Alpha> for u8 {
    fn from(a: Alpha) -> u8 {
        a.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The three ambient complex structures `I_1, I_2, I_3` on `R^{4(n+1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStructureTriple {
    mats: [IntMatrix; 3],
}

impl ComplexStructureTriple {
    pub fn from_matrices(mats: [IntMatrix; 3]) -> Result<Self> {
        let dim = mats[0].dim();
        for m in &mats[1..] {
            if m.dim() != dim {
                return Err(GeometryError::Dimension {
                    expected: dim,
                    found: m.dim(),
                });
            }
        }
        Ok(ComplexStructureTriple { mats })
    }

    #[inline]
    pub fn get(&self, alpha: Alpha) -> &IntMatrix {
        &self.mats[alpha.index()]
    }

    pub fn dim(&self) -> usize {
        self.mats[0].dim()
    }

    /// Same triple with `I_alpha` replaced by `-I_alpha`. Used for failure
    /// injection; the result violates the product relations.
    pub fn with_flipped(&self, alpha: Alpha) -> Self {
        let mut mats = self.mats.clone();
        mats[alpha.index()] = -&mats[alpha.index()];
        ComplexStructureTriple { mats }
    }

    /// Every triple invariant as `(name, holds)`, evaluated exactly.
    pub fn invariants(&self) -> Vec<(String, bool)> {
        let id = IntMatrix::identity(self.dim());
        let mut out = Vec::new();
        for a in Alpha::ALL {
            let m = self.get(a);
            let t = m.transpose();
            out.push((format!("I{a} orthogonal"), &t * m == id));
            out.push((format!("I{a} skew"), t == -m));
            out.push((format!("I{a}^2 = -Id"), (&(m * m) + &id).is_zero()));
        }
        for (b, c, t) in Alpha::EVEN_PERMUTATIONS {
            out.push((
                format!("I{b} I{c} = I{t}"),
                &(self.get(b) * self.get(c)) == self.get(t),
            ));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.invariants().iter().all(|(_, ok)| *ok)
    }
}

/// 4x4 matrices of right multiplication by the conjugate units `-i, -j, -k`
/// on `H = R^4` with coordinates `(a, b, c, d) ↦ a + bi + cj + dk`.
///
/// Right multiplication commutes with the left action of `H`. Because
/// `q ↦ q u` reverses products, the conjugate units are used so that
/// `I_1 I_2 = I_3` holds with the natural ordering.
fn unit_blocks() -> [IntMatrix; 3] {
    [
        IntMatrix::from_rows([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
        IntMatrix::from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]),
        IntMatrix::from_rows([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]),
    ]
}

/// Block-diagonal quaternionic structures on `R^{4(n+1)} = H^{n+1}`.
pub fn quaternion_structures(n: usize) -> ComplexStructureTriple {
    let blocks = unit_blocks();
    ComplexStructureTriple {
        mats: blocks.map(|b| IntMatrix::block_diagonal(&b, n + 1)),
    }
}
