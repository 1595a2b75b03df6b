use crate::normal_form::{hnf, hnf_reduce, pivots};
use crate::{Int, Matrix};

/// Integer solution set of `A·x = b`: `x0 + span_Z(kernel)`.
///
/// The kernel basis is in Hermite normal form and the particular solution is
/// reduced modulo it, which keeps entries small in practice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<T> {
    pub particular: Vec<T>,
    /// Lattice basis of `{x : A·x = 0}`.
    pub kernel: Vec<Vec<T>>,
}

/// Solves `A·x = b` over the integers. `None` when no integer solution exists.
pub fn solve<T: Int>(a: &Matrix<T>, b: &[T]) -> Option<Solution<T>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let n = a.cols();
    // U·Aᵀ = H, so A·Uᵀ = Hᵀ and x = Uᵀ·y turns the system into Hᵀ·y = b.
    let (h, u) = hnf(&a.transpose());
    let piv = pivots(&h);
    let r = piv.len();
    let mut y = vec![T::zero(); n];
    for (i, &p) in piv.iter().enumerate() {
        let mut rhs = b[p].clone();
        for (k, yk) in y.iter().enumerate().take(i) {
            rhs = rhs - yk.clone() * h[(k, p)].clone();
        }
        let (q, rem) = rhs.div_rem(&h[(i, p)]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    let check = h.transpose().mul_vec(&y);
    if check != b {
        return None;
    }
    let particular = u.transpose().mul_vec(&y);
    let raw: Vec<Vec<T>> = (r..n).map(|i| u.row(i).to_vec()).collect();
    if raw.is_empty() {
        return Some(Solution { particular, kernel: raw });
    }
    let (kh, _) = hnf(&Matrix::from_rows_with_cols(raw, n).expect("rows have n entries"));
    let particular = hnf_reduce(&kh, &particular);
    let kernel = (0..kh.rows())
        .map(|i| kh.row(i).to_vec())
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    Some(Solution { particular, kernel })
}
