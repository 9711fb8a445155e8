use serde::{Deserialize, Serialize};

use super::jet::{self, Jet, MAX_GENERATORS};
use crate::error::{GeometryError, Result};

/// How directional derivatives are evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DiffScheme {
    /// Forward mode over nilpotent jets; exact up to rounding.
    #[default]
    ExactForward,
    /// Symmetric difference quotient with the given step.
    CentralDifference { step: f64 },
}

impl DiffScheme {
    pub fn central(step: f64) -> Result<Self> {
        let scheme = DiffScheme::CentralDifference { step };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DiffScheme::ExactForward => Ok(()),
            DiffScheme::CentralDifference { step } if step > 0.0 && step.is_finite() => Ok(()),
            DiffScheme::CentralDifference { step } => Err(GeometryError::InvalidConfig(format!(
                "central-difference step must be positive and finite, got {step}"
            ))),
        }
    }
}

/// `D_v f(x)`: derivative of `f` at `x` along `v`.
///
/// `f` may itself call this function (nesting); each exact-forward level
/// consumes one jet generator. `f` must not capture jet values from an
/// enclosing evaluation, only plain data.
pub fn directional_derivative<F>(f: F, x: &[Jet], v: &[Jet], scheme: DiffScheme) -> Result<Vec<Jet>>
where
    F: Fn(&[Jet]) -> Result<Vec<Jet>>,
{
    if x.len() != v.len() {
        return Err(GeometryError::Dimension {
            expected: x.len(),
            found: v.len(),
        });
    }
    let out: Vec<Jet> = match scheme {
        DiffScheme::ExactForward => {
            let gen = jet::vec::max_generators(x).max(jet::vec::max_generators(v));
            if gen >= MAX_GENERATORS {
                return Err(GeometryError::NestingTooDeep {
                    max: MAX_GENERATORS,
                });
            }
            let seeded: Vec<Jet> = x
                .iter()
                .zip(v)
                .map(|(xi, vi)| Jet::seeded(*xi, *vi, gen))
                .collect();
            f(&seeded)?.iter().map(|y| y.tangent_part(gen)).collect()
        }
        DiffScheme::CentralDifference { step } => {
            scheme.validate()?;
            let h = Jet::constant(step);
            let fwd: Vec<Jet> = x.iter().zip(v).map(|(a, b)| *a + h * *b).collect();
            let bwd: Vec<Jet> = x.iter().zip(v).map(|(a, b)| *a - h * *b).collect();
            let (fp, fm) = (f(&fwd)?, f(&bwd)?);
            if fp.len() != fm.len() {
                return Err(GeometryError::Dimension {
                    expected: fp.len(),
                    found: fm.len(),
                });
            }
            fp.iter()
                .zip(&fm)
                .map(|(a, b)| (*a - *b) * (0.5 / step))
                .collect()
        }
    };
    if !jet::vec::all_finite(&out) {
        return Err(GeometryError::NonFinite {
            context: format!(
                "directional derivative ({scheme:?}) at a point of dimension {}",
                x.len()
            ),
        });
    }
    Ok(out)
}

/// Plain-`f64` convenience wrapper around [`directional_derivative`].
pub fn directional_derivative_f64<F>(
    f: F,
    x: &[f64],
    v: &[f64],
    scheme: DiffScheme,
) -> Result<Vec<f64>>
where
    F: Fn(&[Jet]) -> Result<Vec<Jet>>,
{
    let out = directional_derivative(f, &jet::vec::constant(x), &jet::vec::constant(v), scheme)?;
    Ok(jet::vec::values(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::jet::vec as jv;

    fn basis(dim: usize, i: usize) -> Vec<f64> {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        e
    }

    fn cubic(y: &[Jet]) -> Result<Vec<Jet>> {
        let r = jv::dot(y, y);
        Ok(jv::scale(r, y))
    }

    #[test]
    fn linear_map_derivative_is_the_map() {
        let a = [[1.0, 2.0, 0.0], [0.0, -1.0, 3.0], [4.0, 0.0, 1.0]];
        let f = |y: &[Jet]| -> Result<Vec<Jet>> {
            Ok(a.iter()
                .map(|row| row.iter().zip(y).map(|(c, yi)| *c * *yi).sum())
                .collect())
        };
        let v = [0.5, -2.0, 1.0];
        let d =
            directional_derivative_f64(f, &[0.3, 0.1, 7.0], &v, DiffScheme::ExactForward).unwrap();
        for (row, di) in a.iter().zip(&d) {
            let expect: f64 = row.iter().zip(&v).map(|(c, vi)| c * vi).sum();
            assert_eq!(*di, expect);
        }
    }

    #[test]
    fn cubic_derivative_at_e1_along_e2() {
        let (x, v) = (basis(4, 0), basis(4, 1));
        let exact = directional_derivative_f64(cubic, &x, &v, DiffScheme::ExactForward).unwrap();
        assert_eq!(exact, basis(4, 1));
        let fd =
            directional_derivative_f64(cubic, &x, &v, DiffScheme::central(1e-5).unwrap()).unwrap();
        let err = exact
            .iter()
            .zip(&fd)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "fd disagreement {err}");
    }

    #[test]
    fn nested_second_derivative_of_squared_projection() {
        // f(y) = <y,c>^2 e1; D_v D_v f = 2 <v,c>^2 e1
        let c = [0.3, -1.2, 0.7, 2.0];
        let f = |y: &[Jet]| -> Result<Vec<Jet>> {
            let s = jv::dot(y, &jv::constant(&c));
            let mut out = jv::zeros(4);
            out[0] = s * s;
            Ok(out)
        };
        let x = jv::constant(&[0.1, 0.2, -0.4, 0.9]);
        let v = jv::constant(&[1.0, 0.5, -0.25, 0.0]);
        let vc: f64 = [1.0, 0.5, -0.25, 0.0]
            .iter()
            .zip(&c)
            .map(|(a, b)| a * b)
            .sum();
        let first = |y: &[Jet]| directional_derivative(f, y, &v, DiffScheme::ExactForward);
        let second = directional_derivative(first, &x, &v, DiffScheme::ExactForward).unwrap();
        assert!((second[0].value() - 2.0 * vc * vc).abs() < 1e-14);
        assert!(second[1..].iter().all(|s| s.value() == 0.0));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let err = directional_derivative_f64(cubic, &[1.0, 0.0], &[1.0], DiffScheme::ExactForward)
            .unwrap_err();
        assert_eq!(
            err,
            GeometryError::Dimension {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn non_finite_output_is_reported() {
        let f = |y: &[Jet]| -> Result<Vec<Jet>> { Ok(vec![y[0].recip()]) };
        let err =
            directional_derivative_f64(f, &[0.0], &[1.0], DiffScheme::ExactForward).unwrap_err();
        assert!(matches!(err, GeometryError::NonFinite { .. }));
    }

    #[test]
    fn nonpositive_step_rejected() {
        assert!(DiffScheme::central(0.0).is_err());
        assert!(DiffScheme::central(-1e-3).is_err());
        assert!(DiffScheme::central(f64::NAN).is_err());
    }

    #[test]
    fn nesting_limit_enforced() {
        fn nest(depth: usize, y: &[Jet]) -> Result<Vec<Jet>> {
            if depth == 0 {
                return Ok(y.to_vec());
            }
            let v = jv::constant(&[1.0]);
            directional_derivative(
                |z: &[Jet]| nest(depth - 1, z),
                y,
                &v,
                DiffScheme::ExactForward,
            )
        }
        assert!(nest(MAX_GENERATORS, &jv::constant(&[1.0])).is_ok());
        assert!(matches!(
            nest(MAX_GENERATORS + 1, &jv::constant(&[1.0])),
            Err(GeometryError::NestingTooDeep { .. })
        ));
    }
}
