use crate::{Int, Matrix};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `H = U·A`. Nonzero rows of `H`
/// come first, their pivots (leading entries) are positive and strictly move
/// right, and entries above each pivot lie in `[0, pivot)`.
pub fn hnf<T: Int>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = Matrix::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on the column: bring the smallest nonzero entry to row r and
        // reduce the rows below by it until they vanish.
        while let Some(p) = (r..m)
            .filter(|&i| !h[(i, c)].is_zero())
            .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()))
        {
            if p != r {
                h.swap_rows(r, p);
                u.swap_rows(r, p);
            }
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&h[(i, c)], &h[(r, c)]);
                let nq = -q;
                h.add_row(i, r, &nq);
                u.add_row(i, r, &nq);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for k in 0..r {
            let q = h[(k, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                let nq = -q;
                h.add_row(k, r, &nq);
                u.add_row(k, r, &nq);
            }
        }
        r += 1;
    }
    (h, u)
}

/// `a / b` rounded to the nearest integer.
fn nearest_quotient<T: Int>(a: &T, b: &T) -> T {
    let two = T::one() + T::one();
    let (q, r) = a.div_mod_floor(b);
    if (r.clone() * two).abs() > b.abs() {
        q + T::one()
    } else {
        q
    }
}

/// Pivot columns of the nonzero rows of a matrix in Hermite normal form.
pub fn pivots<T: Int>(h: &Matrix<T>) -> Vec<usize> {
    (0..h.rows())
        .filter_map(|i| h.row(i).iter().position(|x| !x.is_zero()))
        .collect()
}

/// Reduces `v` modulo the row lattice of `h` (which must be in Hermite normal
/// form): every pivot coordinate of the result lies in `[0, pivot)`.
pub fn hnf_reduce<T: Int>(h: &Matrix<T>, v: &[T]) -> Vec<T> {
    assert_eq!(h.cols(), v.len(), "dimension mismatch");
    let mut out = v.to_vec();
    for (i, p) in pivots(h).into_iter().enumerate() {
        let q = out[p].div_floor(&h[(i, p)]);
        if q.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(h.row(i)) {
            *o = o.clone() - q.clone() * x.clone();
        }
    }
    out
}

/// Smith normal form.
///
/// Returns `(S, U, V)` with `U`, `V` unimodular and `S = U·A·V` diagonal,
/// diagonal entries nonnegative and each dividing the next.
pub fn snf<T: Int>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_nonzero(&s, t) {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = s[(i, t)].clone() / s[(t, t)].clone();
                if !q.is_zero() {
                    let nq = -q;
                    s.add_row(i, t, &nq);
                    u.add_row(i, t, &nq);
                }
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = s[(t, j)].clone() / s[(t, t)].clone();
                if !q.is_zero() {
                    let nq = -q;
                    s.add_col(j, t, &nq);
                    v.add_col(j, t, &nq);
                }
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let d = s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&d)));
            match bad {
                Some(i) => {
                    let one = T::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Position of a nonzero entry of least absolute value in the trailing block.
fn min_nonzero<T: Int>(s: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
