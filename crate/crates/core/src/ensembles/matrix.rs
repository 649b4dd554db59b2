use nalgebra::DMatrix;
use num_complex::Complex64;

use super::FieldIndex;

/// One random matrix. Quaternion matrices are held as their `2N x 2N`
/// complex embedding, built from blocks `[[z, w], [-conj(w), conj(z)]]`.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSample {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
    Quaternion(DMatrix<Complex64>),
}

/// Quaternion `x1 + i x2 + j x3 + k x4` as a 2x2 complex block.
pub(crate) fn quaternion_block(x: &[f64]) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(x[0], x[1]);
    let w = Complex64::new(x[2], x[3]);
    [[z, w], [-w.conj(), z.conj()]]
}

fn log_abs_det_lu<T>(m: DMatrix<T>) -> f64
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    let lu = m.lu();
    lu.u().diagonal().iter().map(|d| d.clone().modulus().ln()).sum()
}

impl MatrixSample {
    /// Assemble from `n` rows of `beta * n` real components each.
    pub fn from_rows(field: FieldIndex, rows: &[Vec<f64>]) -> MatrixSample {
        let n = rows.len();
        let beta = field.components();
        debug_assert!(rows.iter().all(|r| r.len() == beta * n));
        match field {
            FieldIndex::Real => MatrixSample::Real(DMatrix::from_fn(n, n, |i, j| rows[i][j])),
            FieldIndex::Complex => {
                MatrixSample::Complex(DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][2 * j], rows[i][2 * j + 1])))
            }
            FieldIndex::Quaternion => {
                let mut m = DMatrix::zeros(2 * n, 2 * n);
                for (i, row) in rows.iter().enumerate() {
                    for j in 0..n {
                        let b = quaternion_block(&row[4 * j..4 * j + 4]);
                        for (r, brow) in b.iter().enumerate() {
                            for (c, v) in brow.iter().enumerate() {
                                m[(2 * i + r, 2 * j + c)] = *v;
                            }
                        }
                    }
                }
                MatrixSample::Quaternion(m)
            }
        }
    }

    pub fn field(&self) -> FieldIndex {
        match self {
            MatrixSample::Real(_) => FieldIndex::Real,
            MatrixSample::Complex(_) => FieldIndex::Complex,
            MatrixSample::Quaternion(_) => FieldIndex::Quaternion,
        }
    }

    /// Matrix dimension over its own field.
    pub fn n(&self) -> usize {
        match self {
            MatrixSample::Real(m) => m.nrows(),
            MatrixSample::Complex(m) => m.nrows(),
            MatrixSample::Quaternion(m) => m.nrows() / 2,
        }
    }

    /// Complex matrix acting on the same space: the matrix itself for the
    /// real and complex fields, the `2N x 2N` embedding for quaternions.
    pub fn embedding(&self) -> DMatrix<Complex64> {
        match self {
            MatrixSample::Real(m) => m.map(|x| Complex64::new(x, 0.0)),
            MatrixSample::Complex(m) | MatrixSample::Quaternion(m) => m.clone(),
        }
    }

    /// `ln |det X|`; for quaternions half the embedding value, so that
    /// `|det X|^2` is the determinant of the embedding.
    pub fn log_abs_det(&self) -> f64 {
        match self {
            MatrixSample::Real(m) => log_abs_det_lu(m.clone()),
            MatrixSample::Complex(m) => log_abs_det_lu(m.clone()),
            MatrixSample::Quaternion(m) => 0.5 * log_abs_det_lu(m.clone()),
        }
    }

    /// Squared modulus of entry `(i, j)` over the field.
    pub fn entry_norm_sq(&self, i: usize, j: usize) -> f64 {
        match self {
            MatrixSample::Real(m) => m[(i, j)] * m[(i, j)],
            MatrixSample::Complex(m) => m[(i, j)].norm_sqr(),
            MatrixSample::Quaternion(m) => m[(2 * i, 2 * j)].norm_sqr() + m[(2 * i, 2 * j + 1)].norm_sqr(),
        }
    }

    /// True when every quaternion block has the `z, w, -conj(w), conj(z)` shape
    /// exactly; trivially true for the other fields.
    pub fn has_quaternion_structure(&self) -> bool {
        let MatrixSample::Quaternion(m) = self else { return true };
        let n = m.nrows() / 2;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let z = m[(2 * i, 2 * j)];
                let w = m[(2 * i, 2 * j + 1)];
                m[(2 * i + 1, 2 * j)] == -w.conj() && m[(2 * i + 1, 2 * j + 1)] == z.conj()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_and_complex_log_det() {
        let m = MatrixSample::from_rows(FieldIndex::Real, &[vec![2.0, 1.0], vec![1.0, 3.0]]);
        assert!((m.log_abs_det() - 5.0f64.ln()).abs() < 1e-14);
        // [[1+i, 0], [0, 2]] -> |det| = 2 sqrt 2
        let c = MatrixSample::from_rows(FieldIndex::Complex, &[vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 2.0, 0.0]]);
        assert!((c.log_abs_det() - (2.0 * 2f64.sqrt()).ln()).abs() < 1e-14);
    }

    #[test]
    fn quaternion_scalar_determinant_is_squared_norm() {
        // A 1x1 quaternion q has embedding determinant |q|^2, so |det q| = |q|.
        let q = [0.3, -1.2, 0.7, 2.0];
        let m = MatrixSample::from_rows(FieldIndex::Quaternion, &[q.to_vec()]);
        let norm_sq: f64 = q.iter().map(|x| x * x).sum();
        assert!((m.log_abs_det() - 0.5 * norm_sq.ln()).abs() < 1e-14);
        assert!(m.has_quaternion_structure());
        assert!((m.entry_norm_sq(0, 0) - norm_sq).abs() < 1e-15);
        assert_eq!(m.n(), 1);
    }
}
