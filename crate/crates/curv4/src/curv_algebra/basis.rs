use std::array::from_fn;

use super::types::SymBilinear4;
use super::CurvError;
use crate::scalar::Scalar;

/// Antisymmetric component matrix of a two-form.
pub type Bivector<S> = [[S; 4]; 4];

/// The six basis bivectors of the two-form bundle, in the fixed order
/// `(w1+, w2+, w3+, w1-, w2-, w3-)`:
///
/// ```text
/// w1± = e1^e2 ± e3^e4,   w2± = e1^e3 ± e4^e2,   w3± = e1^e4 ± e2^e3
/// ```
///
/// Each bivector has length `sqrt(2)` in the inner product
/// `<a,b> = (1/2) a_ij b_ij`; the plus triple spans the `+1` eigenspace of
/// the Hodge star and the minus triple the `-1` eigenspace. Flipping the
/// orientation negates the fourth frame vector, which swaps the roles of
/// the two triples.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda2Basis<S> {
    vectors: [Bivector<S>; 6],
    orientation: i8,
}

/// Wedge `e^p ^ e^q` as an antisymmetric component matrix
/// (the generalized Kronecker delta `delta^{pq}_{ij}`).
fn wedge<S: Scalar>(p: usize, q: usize) -> Bivector<S> {
    let mut m: Bivector<S> = from_fn(|_| from_fn(|_| S::zero()));
    m[p][q] = S::one();
    m[q][p] = -S::one();
    m
}

fn add_scaled<S: Scalar>(a: &Bivector<S>, b: &Bivector<S>, sign: i8) -> Bivector<S> {
    from_fn(|i| {
        from_fn(|j| {
            let s = if sign >= 0 {
                b[i][j].clone()
            } else {
                -b[i][j].clone()
            };
            a[i][j].clone() + s
        })
    })
}

impl<S: Scalar> Lambda2Basis<S> {
    /// The standard basis for the given orientation (`+1` or `-1`).
    pub fn standard(orientation: i8) -> Self {
        assert!(orientation == 1 || orientation == -1);
        let pairs: [((usize, usize), (usize, usize)); 3] =
            [((0, 1), (2, 3)), ((0, 2), (3, 1)), ((0, 3), (1, 2))];
        let mut vectors: Vec<Bivector<S>> = Vec::with_capacity(6);
        for sign in [orientation, -orientation] {
            for &((p, q), (r, s)) in &pairs {
                vectors.push(add_scaled(&wedge(p, q), &wedge(r, s), sign));
            }
        }
        let vectors: [Bivector<S>; 6] = vectors.try_into().expect("six bivectors");
        Lambda2Basis {
            vectors,
            orientation,
        }
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn bivector(&self, a: usize) -> &Bivector<S> {
        &self.vectors[a]
    }

    /// Inner product of two-forms, `<a,b> = (1/2) a_ij b_ij`.
    pub fn inner(a: &Bivector<S>, b: &Bivector<S>) -> S {
        let mut acc = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                acc = acc + a[i][j].clone() * b[i][j].clone();
            }
        }
        acc * S::ratio(1, 2)
    }

    /// Largest deviation of the Gram matrix from `2*Id`.
    pub fn gram_residual(&self) -> S {
        let mut worst = S::zero();
        for a in 0..6 {
            for b in 0..6 {
                let g = Self::inner(&self.vectors[a], &self.vectors[b]);
                let expect = if a == b { S::from_int(2) } else { S::zero() };
                worst = worst.max_val((g - expect).abs());
            }
        }
        worst
    }

    pub fn validate(&self) -> Result<(), CurvError> {
        let residual = self.gram_residual();
        if residual > S::tol_abs() {
            return Err(CurvError::BasisNotOrthogonal {
                residual: residual.to_f64(),
            });
        }
        Ok(())
    }
}

/// Hodge star on two-forms of an oriented orthonormal frame,
/// `(*w)_ij = (1/2) eps_ijkl w_kl`.
pub fn hodge_star<S: Scalar>(omega: &Bivector<S>) -> Bivector<S> {
    from_fn(|i| {
        from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..4 {
                for l in 0..4 {
                    let e = levi_civita(i, j, k, l);
                    if e != 0 {
                        let term = omega[k][l].clone();
                        acc = acc + if e > 0 { term } else { -term };
                    }
                }
            }
            acc * S::ratio(1, 2)
        })
    })
}

fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> i8 {
    let idx = [i, j, k, l];
    let mut seen = [false; 4];
    for &v in &idx {
        if v >= 4 || seen[v] {
            return 0;
        }
        seen[v] = true;
    }
    let mut sign = 1i8;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if idx[a] > idx[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Returns the six basis bivectors for the given orientation.
///
/// The metric is expected in orthonormal-frame components (identity); a
/// non-identity metric is rejected since the eigenspace splitting is only
/// written in that frame.
pub fn hodge_projectors<S: Scalar>(
    metric: &SymBilinear4<S>,
    orientation: i8,
) -> Result<Lambda2Basis<S>, CurvError> {
    metric.validate()?;
    let mut dev = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { S::one() } else { S::zero() };
            dev = dev.max_val((metric.get(i, j).clone() - expect).abs());
        }
    }
    if dev > S::tol_abs() {
        return Err(CurvError::BasisNotOrthogonal {
            residual: dev.to_f64(),
        });
    }
    Ok(Lambda2Basis::standard(orientation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curv_algebra::types::BilinearRole;
    use crate::scalar::Exact;

    #[test]
    fn first_basis_vector_is_generalized_kronecker() {
        let basis = Lambda2Basis::<f64>::standard(1);
        let w1 = basis.bivector(0);
        assert_eq!(w1[0][1], 1.0);
        assert_eq!(w1[1][0], -1.0);
        assert_eq!(w1[2][3], 1.0);
        assert_eq!(w1[3][2], -1.0);
        assert_eq!(w1[0][2], 0.0);
    }

    #[test]
    fn basis_lengths_and_orthogonality() {
        let basis = Lambda2Basis::<Exact>::standard(1);
        assert!(basis.gram_residual().is_zero());
        basis.validate().unwrap();
    }

    #[test]
    fn star_eigenspaces() {
        let basis = Lambda2Basis::<f64>::standard(1);
        for a in 0..6 {
            let starred = hodge_star(basis.bivector(a));
            let sign = if a < 3 { 1.0 } else { -1.0 };
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(starred[i][j], sign * basis.bivector(a)[i][j]);
                }
            }
        }
    }

    #[test]
    fn star_squared_is_identity() {
        let basis = Lambda2Basis::<Exact>::standard(1);
        for a in 0..6 {
            let twice = hodge_star(&hodge_star(basis.bivector(a)));
            assert_eq!(&twice, basis.bivector(a));
        }
    }

    #[test]
    fn orientation_flip_swaps_triples() {
        let plus = Lambda2Basis::<f64>::standard(1);
        let minus = Lambda2Basis::<f64>::standard(-1);
        for a in 0..3 {
            assert_eq!(plus.bivector(a), minus.bivector(a + 3));
            assert_eq!(plus.bivector(a + 3), minus.bivector(a));
        }
    }

    #[test]
    fn projectors_reject_non_orthonormal_metric() {
        let g = SymBilinear4::<f64>::diag(BilinearRole::Metric, [2.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            hodge_projectors(&g, 1),
            Err(CurvError::BasisNotOrthogonal { .. })
        ));
        let id = SymBilinear4::<f64>::identity(BilinearRole::Metric);
        assert!(hodge_projectors(&id, 1).is_ok());
    }
}
