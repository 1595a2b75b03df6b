//! Triangular polynomial self-maps of the coordinate space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{CoordinateScheme, InvariantVector};
use crate::table::ActionTable;
use crate::word::Term;
use crate::{Error, Poly};

/// `image[J]` is the post-action value of coordinate `J` as a polynomial in
/// the pre-action coordinates. Equality is symbolic.
#[derive(Clone, PartialEq, Eq)]
pub struct ActionMap {
    scheme: &'static CoordinateScheme,
    image: Vec<Poly>,
}

impl std::fmt::Debug for ActionMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ActionMap(n={}) {{", self.scheme.n())?;
        for v in 0..self.scheme.len() {
            let d = self.delta(v as u16);
            if !d.is_zero() {
                writeln!(f, "  {} += {}", self.scheme.name(v as u16), self.scheme.show(&d))?;
            }
        }
        write!(f, "}}")
    }
}

fn check_scheme(a: &CoordinateScheme, b: &CoordinateScheme) -> Result<(), Error> {
    if a != b {
        return Err(Error::SchemeMismatch(a.n(), b.n()));
    }
    Ok(())
}

impl ActionMap {
    pub fn identity(scheme: &'static CoordinateScheme) -> Self {
        ActionMap {
            scheme,
            image: (0..scheme.len()).map(|v| Poly::var(v as u16)).collect(),
        }
    }

    /// `image[J] = J + deltas[J]`; rejects non-triangular increments.
    pub fn from_deltas(scheme: &'static CoordinateScheme, deltas: &[Poly]) -> Result<Self, Error> {
        if deltas.len() != scheme.len() {
            return Err(Error::Length {
                expected: scheme.len(),
                found: deltas.len(),
            });
        }
        let m = ActionMap {
            scheme,
            image: deltas
                .iter()
                .enumerate()
                .map(|(v, d)| &Poly::var(v as u16) + d)
                .collect(),
        };
        match m.triangularity_violation() {
            Some(v) => Err(Error::NotTriangular(scheme.name(v))),
            None => Ok(m),
        }
    }

    pub fn from_table(table: &ActionTable, label: &Term) -> Result<Self, Error> {
        let e = table
            .get(label)
            .ok_or_else(|| Error::UnknownAction(format!("{label} in {}", table.name())))?;
        Self::from_deltas(table.scheme(), &e.deltas)
    }

    pub fn scheme(&self) -> &'static CoordinateScheme {
        self.scheme
    }

    pub fn image(&self, v: u16) -> &Poly {
        &self.image[v as usize]
    }

    /// `image[v] - v`.
    pub fn delta(&self, v: u16) -> Poly {
        &self.image[v as usize] - &Poly::var(v)
    }

    pub fn deltas(&self) -> Vec<Poly> {
        (0..self.image.len()).map(|v| self.delta(v as u16)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(v, p)| *p == Poly::var(v as u16))
    }

    fn triangularity_violation(&self) -> Option<u16> {
        (0..self.image.len() as u16).find(|&v| {
            let d = self.scheme.degree(v);
            let delta = self.delta(v);
            (d == 1 && !delta.is_zero())
                || delta.vars().into_iter().any(|w| self.scheme.degree(w) >= d)
        })
    }

    /// Each coordinate moves by a polynomial in strictly lower-degree
    /// coordinates, and linking numbers are fixed.
    pub fn is_triangular(&self) -> bool {
        self.triangularity_violation().is_none()
    }

    /// Every increment monomial has total coordinate degree at most the degree
    /// of the coordinate it moves. Preserved by composition and inversion.
    pub fn is_filtered(&self) -> bool {
        (0..self.image.len() as u16).all(|v| {
            let d = self.scheme.degree(v);
            self.delta(v).terms().all(|(m, _)| {
                m.vars().iter().map(|&w| self.scheme.degree(w)).sum::<usize>() <= d
            })
        })
    }

    pub fn apply(&self, v: &InvariantVector) -> Result<InvariantVector, Error> {
        check_scheme(self.scheme, v.scheme())?;
        InvariantVector::from_values(self.scheme, self.apply_values(v.values()))
    }

    /// Applies to a dense value vector in scheme order.
    pub fn apply_values(&self, vals: &[BigInt]) -> Vec<BigInt> {
        let lin = self.scheme.degree_range(1).end;
        let mut out = Vec::with_capacity(vals.len());
        out.extend_from_slice(&vals[..lin]);
        for p in &self.image[lin..] {
            out.push(p.eval_dense(vals).expect("point covers the scheme"));
        }
        out
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &ActionMap) -> Result<ActionMap, Error> {
        check_scheme(self.scheme, other.scheme)?;
        let lin = self.scheme.degree_range(1).end;
        let image = self
            .image
            .iter()
            .enumerate()
            .map(|(v, p)| {
                if v < lin {
                    p.clone()
                } else {
                    p.substitute(|w| other.image.get(w as usize))
                        .expect("images cover the scheme")
                }
            })
            .collect();
        Ok(ActionMap {
            scheme: self.scheme,
            image,
        })
    }

    /// Exact inverse by back-substitution in increasing degree.
    pub fn invert(&self) -> ActionMap {
        let n = self.image.len();
        let mut inv: Vec<Poly> = Vec::with_capacity(n);
        for v in 0..n as u16 {
            let delta = self.delta(v);
            let lowered = delta
                .substitute(|w| inv.get(w as usize))
                .expect("triangular map: increments use earlier coordinates");
            inv.push(&Poly::var(v) - &lowered);
        }
        ActionMap {
            scheme: self.scheme,
            image: inv,
        }
    }

    /// `self^k`; negative powers go through [`ActionMap::invert`].
    pub fn power(&self, k: i64) -> ActionMap {
        let mut base = if k < 0 { self.invert() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ActionMap::identity(self.scheme);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same scheme");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("same scheme");
            }
        }
        acc
    }

    /// `[a, b] = a ∘ b ∘ a⁻¹ ∘ b⁻¹`.
    pub fn commutator(a: &ActionMap, b: &ActionMap) -> Result<ActionMap, Error> {
        check_scheme(a.scheme, b.scheme)?;
        let tail = a.invert().compose(&b.invert())?;
        a.compose(&b.compose(&tail)?)
    }

    /// Applies `self^k` numerically. `inverse` must be `self.invert()`.
    pub fn apply_power(&self, inverse: &ActionMap, vals: &[BigInt], k: &BigInt) -> Vec<BigInt> {
        let (m, e) = if k.is_negative() { (inverse, -k) } else { (self, k.clone()) };
        power_by_interpolation(|x| m.apply_values(x), &e, vals, self.scheme)
    }
}

/// Computes `f^k(start)` for `k ≥ 0`, where `f` is a filtered triangular map
/// of `scheme`.
///
/// If `f` moves nothing below degree `e0` at `start`, then it never does along
/// the orbit, and a degree-`e` coordinate of `f^k(start)` is a polynomial in
/// `k` of degree at most `e - e0 + 1`. Large `k` use Newton forward
/// differences: `f^k = Σ_i C(k, i) Δ^i`.
pub fn power_by_interpolation<F>(
    mut f: F,
    k: &BigInt,
    start: &[BigInt],
    scheme: &CoordinateScheme,
) -> Vec<BigInt>
where
    F: FnMut(&[BigInt]) -> Vec<BigInt>,
{
    debug_assert!(!k.is_negative());
    if k.is_zero() {
        return start.to_vec();
    }
    let first = f(start);
    let Some(moved) = first.iter().zip(start).position(|(a, b)| a != b) else {
        return first;
    };
    let e0 = scheme.degree(moved as u16);
    let degree = scheme.max_degree() + 1 - e0;
    if let Some(small) = k.to_usize().filter(|&s| s <= degree + 1) {
        let mut cur = first;
        for _ in 1..small {
            cur = f(&cur);
        }
        return cur;
    }
    let mut samples = vec![start.to_vec(), first];
    for i in 1..degree {
        let next = f(&samples[i]);
        samples.push(next);
    }
    let dim = start.len();
    let mut out = vec![BigInt::zero(); dim];
    let mut binom = BigInt::one();
    let mut diffs = samples;
    for i in 0..=degree {
        for c in 0..dim {
            out[c] += &binom * &diffs[0][c];
        }
        // C(k, i+1) = C(k, i) * (k - i) / (i + 1)
        binom = (binom * (k - BigInt::from(i))).div_floor(&BigInt::from(i + 1));
        diffs = diffs
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect())
            .collect();
    }
    out
}

/// Applies `m^k` with `k` the value of `p` at `v`. `p` may mention only
/// coordinates of degree 1 and 2.
pub fn state_power(m: &ActionMap, p: &Poly, v: &InvariantVector) -> Result<InvariantVector, Error> {
    check_scheme(m.scheme, v.scheme())?;
    if let Some(w) = p.vars().into_iter().find(|&w| m.scheme.degree(w) > 2) {
        return Err(Error::ExponentDegree(m.scheme.name(w)));
    }
    let k = p.eval_dense(v.values()).expect("point covers the scheme");
    let inv = m.invert();
    InvariantVector::from_values(m.scheme, m.apply_power(&inv, v.values(), &k))
}
