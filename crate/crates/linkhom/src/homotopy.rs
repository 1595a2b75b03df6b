//! Deciding whether two invariant vectors lie in one orbit.
//!
//! The coordinates are resolved one degree at a time. At degree `d` every
//! candidate generator already fixes all coordinates below `d`, so it acts on
//! the degree-`d` block by a translation that depends only on the lower
//! coordinates. Matching that block is then the integer system `A·a = b`,
//! and the kernel of `A` yields the words carried on to the next degree.

use std::collections::{BTreeSet, HashSet, VecDeque};

use intlattice::{hnf, hnf_reduce, solve, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::model::{GeneratorId, InvariantVector};
use crate::word::{Factor, Term, Word};
use crate::Error;

/// The simplified generators that generate the group, in their frozen order:
/// eight for four strands, fifteen for five.
pub fn x_generators(n: usize) -> Result<Vec<GeneratorId>, Error> {
    let pairs: &[(u8, u8)] = match n {
        4 => &[(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)],
        5 => &[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 1),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (3, 4),
            (4, 1),
            (4, 2),
            (4, 3),
            (5, 1),
            (5, 2),
            (5, 3),
        ],
        _ => return Err(Error::UnsupportedN(n)),
    };
    Ok(pairs.iter().map(|&(i, j)| GeneratorId::simplified(i, j)).collect())
}

/// The designated family whose degree-`d` translations join the kernel words
/// at stage `d`.
pub fn stage_family(alg: &Algebra, d: usize) -> Result<Vec<Term>, Error> {
    let n = alg.n();
    let labels = |name: &str| -> Result<Vec<Term>, Error> {
        let t = alg
            .table(name)
            .ok_or_else(|| Error::UnknownTable(name.to_string()))?;
        Ok(t.labels().cloned().collect())
    };
    match (n, d) {
        (_, 2) => Ok(x_generators(n)?.into_iter().map(Term::Gen).collect()),
        (4, 3) => labels("four_commutators"),
        (5, 3) => labels("five_modified_commutators"),
        (5, 4) => labels("five_three_commutators"),
        _ => Ok(Vec::new()),
    }
}

/// Degree-`d` translation of each term at `vals`, as matrix columns.
pub fn increment_matrix(
    alg: &Algebra,
    gens: &[Term],
    vals: &[BigInt],
    d: usize,
) -> Result<IntMatrix, Error> {
    let range = alg.scheme().degree_range(d);
    let mut cols = Vec::with_capacity(gens.len());
    for g in gens {
        let moved = alg.apply_factor_values(&Factor::new(g.clone(), 1), vals)?;
        cols.push(range.clone().map(|c| &moved[c] - &vals[c]).collect());
    }
    Ok(IntMatrix::from_cols(cols, range.len()).expect("uniform column length"))
}

fn combination(gens: &[Term], coeffs: &[BigInt]) -> Word {
    let mut w = Word::new();
    for (g, a) in gens.iter().zip(coeffs) {
        w.push(g.clone(), a.clone());
    }
    w
}

fn kernel_terms(gens: &[Term], kernel: &[Vec<BigInt>]) -> Vec<Term> {
    kernel
        .iter()
        .map(|k| {
            let support: Vec<usize> = (0..k.len()).filter(|&i| !k[i].is_zero()).collect();
            match support.as_slice() {
                [i] if k[*i].abs().is_one() && !k[*i].is_negative() => gens[*i].clone(),
                _ => Term::Group(combination(gens, k)),
            }
        })
        .collect()
}

/// Outcome of [`decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    /// Present iff equivalent: applying it to the source yields the target.
    pub witness: Option<Word>,
    /// Present iff not equivalent: the degree whose system has no solution.
    pub failed_stage: Option<usize>,
}

impl Verdict {
    fn fail(stage: usize) -> Self {
        Verdict {
            equivalent: false,
            witness: None,
            failed_stage: Some(stage),
        }
    }
}

struct Engine<'a> {
    alg: &'a Algebra,
    cur: Vec<BigInt>,
    carried: Vec<Term>,
    witness: Word,
}

impl<'a> Engine<'a> {
    fn new(alg: &'a Algebra, start: &[BigInt]) -> Self {
        Engine {
            alg,
            cur: start.to_vec(),
            carried: Vec::new(),
            witness: Word::new(),
        }
    }

    /// Generators and their translation matrix at degree `d`.
    fn system(&self, d: usize, family: Vec<Term>) -> Result<(Vec<Term>, IntMatrix), Error> {
        let mut gens = self.carried.clone();
        gens.extend(family);
        let a = increment_matrix(self.alg, &gens, &self.cur, d)?;
        Ok((gens, a))
    }

    /// Moves the degree-`d` block to `goal`. `false` if unreachable.
    fn reach(&mut self, d: usize, gens: &[Term], a: &IntMatrix, goal: &[BigInt]) -> Result<bool, Error> {
        let range = self.alg.scheme().degree_range(d);
        let b: Vec<BigInt> = range.clone().zip(goal).map(|(c, g)| g - &self.cur[c]).collect();
        let Some(sol) = solve(a, &b) else {
            return Ok(false);
        };
        let step = combination(gens, &sol.particular);
        self.cur = self.alg.apply_word_values(&step, &self.cur)?;
        debug_assert_eq!(&self.cur[range], goal);
        self.witness = step.then_after(std::mem::take(&mut self.witness));
        self.carried = kernel_terms(gens, &sol.kernel);
        Ok(true)
    }
}

/// Searches for a word taking `source` to `target` through the stages
/// `first..=max_degree`, with `family(d)` joining the carried kernel words at
/// degree `d`. The two vectors must agree below degree `first`.
///
/// `Ok(Err(d))` reports the first degree whose system has no solution.
pub fn connect<F>(
    alg: &Algebra,
    source: &[BigInt],
    target: &[BigInt],
    first: usize,
    mut family: F,
) -> Result<Result<Word, usize>, Error>
where
    F: FnMut(usize) -> Result<Vec<Term>, Error>,
{
    let scheme = alg.scheme();
    let mut eng = Engine::new(alg, source);
    for d in first..=scheme.max_degree() {
        let (gens, a) = eng.system(d, family(d)?)?;
        if !eng.reach(d, &gens, &a, &target[scheme.degree_range(d)])? {
            return Ok(Err(d));
        }
    }
    debug_assert_eq!(eng.cur.as_slice(), target);
    Ok(Ok(eng.witness))
}

/// Decides whether `target` is in the orbit of `source`, with a witness word.
pub fn decide(source: &InvariantVector, target: &InvariantVector) -> Result<Verdict, Error> {
    let scheme = source.scheme();
    if scheme != target.scheme() {
        return Err(Error::SchemeMismatch(scheme.n(), target.scheme().n()));
    }
    if source.degree_view(1) != target.degree_view(1) {
        return Ok(Verdict::fail(1));
    }
    let alg = Algebra::get(scheme.n())?;
    Ok(
        match connect(alg, source.values(), target.values(), 2, |d| stage_family(alg, d))? {
            Ok(w) => Verdict {
                equivalent: true,
                witness: Some(w),
                failed_stage: None,
            },
            Err(d) => Verdict::fail(d),
        },
    )
}

/// Canonical orbit representative, with a word taking `v` to it.
///
/// Each degree block is reduced modulo the lattice of that stage's
/// translations, pivot entries into `[0, pivot)`.
pub fn normal_form_with_word(v: &InvariantVector) -> Result<(InvariantVector, Word), Error> {
    let scheme = v.scheme();
    let alg = Algebra::get(scheme.n())?;
    let mut eng = Engine::new(alg, v.values());
    for d in 2..=scheme.max_degree() {
        let (gens, a) = eng.system(d, stage_family(alg, d)?)?;
        let (h, _) = hnf(&a.transpose());
        let goal = hnf_reduce(&h, &eng.cur[scheme.degree_range(d)]);
        let ok = eng.reach(d, &gens, &a, &goal)?;
        debug_assert!(ok, "residue lies in the translation lattice");
    }
    Ok((InvariantVector::from_values(scheme, eng.cur)?, eng.witness))
}

pub fn normal_form(v: &InvariantVector) -> Result<InvariantVector, Error> {
    normal_form_with_word(v).map(|(nf, _)| nf)
}

/// Result of [`orbit_bfs`].
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Sorted.
    pub members: Vec<InvariantVector>,
    /// The node cap was hit; `members` is incomplete.
    pub truncated: bool,
}

impl Orbit {
    pub fn contains(&self, v: &InvariantVector) -> bool {
        self.members.binary_search(v).is_ok()
    }
}

/// Breadth-first closure of `{start}` under the simplified generators and
/// their inverses, discarding states with a coordinate beyond `coord_bound`.
pub fn orbit_bfs(start: &InvariantVector, coord_bound: u64, node_cap: usize) -> Result<Orbit, Error> {
    let scheme = start.scheme();
    let alg = Algebra::get(scheme.n())?;
    let mut maps = Vec::new();
    for g in x_generators(scheme.n())? {
        let r = alg.resolve(&Term::Gen(g))?;
        maps.push(r.map.clone());
        maps.push(r.inverse.clone());
    }
    let bound = BigInt::from(coord_bound);
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.values().to_vec());
    queue.push_back(start.values().to_vec());
    let mut truncated = false;
    'search: while let Some(v) = queue.pop_front() {
        for m in &maps {
            let w = m.apply_values(&v);
            if w.iter().any(|x| x.abs() > bound) || seen.contains(&w) {
                continue;
            }
            if seen.len() >= node_cap {
                truncated = true;
                break 'search;
            }
            seen.insert(w.clone());
            queue.push_back(w);
        }
    }
    let members: BTreeSet<InvariantVector> = seen
        .into_iter()
        .map(|v| InvariantVector::from_values(scheme, v))
        .collect::<Result<_, _>>()?;
    Ok(Orbit {
        members: members.into_iter().collect(),
        truncated,
    })
}
