use std::cmp::Ordering;

/// Variable index. Lower indices rank higher in the monomial order.
pub type Var = u16;

/// A monomial stored as the sorted multiset of its variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![v])
    }

    pub fn from_vars(mut vars: Vec<Var>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Variables with multiplicity, ascending by index.
    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    /// `(var, exponent)` pairs, ascending by index.
    pub fn powers(&self) -> Vec<(Var, u32)> {
        let mut out: Vec<(Var, u32)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((w, e)) if *w == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Graded lexicographic order: total degree first, then exponent vectors
/// compared lexicographically with variable 0 most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
