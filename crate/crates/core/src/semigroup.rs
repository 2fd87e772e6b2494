//! Numerical semigroups: normalization, membership, Apéry sets, Kunz
//! coordinates, factorizations, and the classical Betti-element route to a
//! minimal presentation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{Factorization, Trade};

/// A numerical semigroup given by its minimal generating set.
///
/// The Apéry set with respect to the multiplicity is computed once at
/// construction and kept alongside the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `apery[i]` is the least element congruent to `i` mod the multiplicity.
    apery: Vec<u64>,
    frobenius: i64,
}

/// Least element of each nonzero residue class: `(a_1, ..., a_{m-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AperyTuple {
    m: usize,
    values: Vec<u64>,
}

/// Kunz coordinates `x_i = (a_i - i) / m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunzTuple {
    m: usize,
    values: Vec<u64>,
}

/// A Betti element together with the connected components of its
/// factorization graph (components ordered by their lex-largest member,
/// descending; members sorted descending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiElement {
    pub element: u64,
    pub components: Vec<Vec<Factorization>>,
}

/// Single-source shortest paths on `Z_m` with an arc `j -> j + g` of weight `g`
/// for every generator `g`.
fn apery_by_shortest_paths(m: u64, gens: &[u64]) -> Result<Vec<u64>> {
    let m_us = usize::try_from(m).map_err(|_| Error::Overflow("indexing residues"))?;
    let mut dist: Vec<Option<u64>> = vec![None; m_us];
    dist[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, j))) = heap.pop() {
        if dist[j] != Some(d) {
            continue;
        }
        for &g in gens {
            if g % m == 0 {
                continue;
            }
            let nd = d.checked_add(g).ok_or(Error::Overflow("computing Apéry set"))?;
            let t = ((j as u64 + g) % m) as usize;
            if dist[t].is_none_or(|old| nd < old) {
                dist[t] = Some(nd);
                heap.push(Reverse((nd, t)));
            }
        }
    }
    dist.into_iter()
        .map(|d| d.ok_or(Error::NotNumerical { gcd: 0 }))
        .collect()
}

impl NumericalSemigroup {
    /// Minimal generating set of the semigroup generated by `gens`.
    pub fn new(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() || gens.contains(&0) {
            return Err(Error::EmptyGenerators);
        }
        let gcd = gens.iter().fold(0u64, |g, &x| g.gcd(&x));
        if gcd != 1 {
            return Err(Error::NotNumerical { gcd });
        }
        let m = *gens.iter().min().expect("non-empty");
        let apery = apery_by_shortest_paths(m, gens)?;
        Ok(Self::from_apery_set(apery))
    }

    /// Builds the semigroup from a complete Apéry set (index = residue).
    /// The caller guarantees the set is a genuine Apéry set.
    fn from_apery_set(apery: Vec<u64>) -> Self {
        let m = apery.len();
        let mut generators = vec![m as u64];
        // a_r is a minimal generator unless it splits as a_i + a_{r-i} inside Ap.
        for r in 1..m {
            let splits = (1..m)
                .filter(|&i| i != r)
                .any(|i| apery[i] + apery[(r + m - i) % m] == apery[r]);
            if !splits {
                generators.push(apery[r]);
            }
        }
        generators.sort_unstable();
        let frobenius = *apery.iter().max().expect("m >= 1") as i64 - m as i64;
        Self {
            generators,
            apery,
            frobenius,
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Apéry set indexed by residue, `apery_set()[0] == 0`.
    pub fn apery_set(&self) -> &[u64] {
        &self.apery
    }

    pub fn max_generator(&self) -> u64 {
        *self.generators.last().expect("non-empty")
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let m = self.multiplicity();
        let n = n as u64;
        n >= self.apery[(n % m) as usize]
    }

    pub fn apery(&self) -> AperyTuple {
        AperyTuple {
            m: self.apery.len(),
            values: self.apery[1..].to_vec(),
        }
    }

    pub fn kunz_tuple(&self) -> KunzTuple {
        self.apery().to_kunz()
    }

    /// All factorizations of `n`, exponents ordered like the generators
    /// (multiplicity first), sorted lexicographically ascending.
    pub fn factorizations(&self, n: u64) -> Result<Vec<Factorization>> {
        if !self.contains(n as i64) {
            return Err(Error::NotAnElement { n });
        }
        let k = self.generators.len();
        let mut out = Vec::new();
        let mut current = vec![0u32; k];
        self.factor_rec(k - 1, n, &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    fn factor_rec(&self, idx: usize, rem: u64, current: &mut Vec<u32>, out: &mut Vec<Factorization>) {
        let g = self.generators[idx];
        if idx == 0 {
            if rem.is_multiple_of(g) {
                current[0] = (rem / g) as u32;
                out.push(Factorization(current.clone()));
                current[0] = 0;
            }
            return;
        }
        for e in (0..=rem / g).rev() {
            let rest = rem - e * g;
            // Anything left must still be an element of the semigroup.
            if !self.contains(rest as i64) {
                continue;
            }
            current[idx] = e as u32;
            self.factor_rec(idx - 1, rest, current, out);
        }
        current[idx] = 0;
    }

    /// Upper bound on Betti elements: every Betti element `b` has `b - n_i` in
    /// the Apéry set for some generator `n_i`.
    pub fn betti_search_bound(&self) -> u64 {
        self.apery.iter().max().copied().unwrap_or(0) + self.max_generator()
    }

    /// Elements whose factorization graph (edges between factorizations with
    /// overlapping support) is disconnected.
    pub fn betti_elements_classic(&self) -> Vec<BettiElement> {
        let mut out = Vec::new();
        for b in 1..=self.betti_search_bound() {
            if !self.contains(b as i64) {
                continue;
            }
            let facts = self.factorizations(b).expect("b is an element");
            let components = support_components(facts);
            if components.len() > 1 {
                out.push(BettiElement {
                    element: b,
                    components,
                });
            }
        }
        out
    }

    /// Minimal presentation from the Betti elements: at each Betti element the
    /// representative of every later component is traded against that of the
    /// first. Representatives are lex-largest members.
    pub fn minimal_presentation_classic(&self) -> Vec<Trade> {
        let mut trades = Vec::new();
        for betti in self.betti_elements_classic() {
            let first = &betti.components[0][0];
            for comp in &betti.components[1..] {
                trades.push(Trade {
                    at: betti.element,
                    left: first.clone(),
                    right: comp[0].clone(),
                });
            }
        }
        trades
    }
}

/// Connected components of the graph on `facts` joining factorizations with
/// overlapping support.
fn support_components(mut facts: Vec<Factorization>) -> Vec<Vec<Factorization>> {
    facts.sort_by(|a, b| b.cmp(a));
    let n = facts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..i {
            if facts[i].shares_support(&facts[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                // Root at the smaller index so roots are lex-largest members.
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<Vec<Factorization>> = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    for (i, z) in facts.iter().enumerate() {
        let r = find(&mut parent, i);
        let c = *slot[r].get_or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[c].push(z.clone());
    }
    comps
}

fn check_cone(m: usize, a: &[u64]) -> Result<()> {
    // a is indexed by residue with a[0] = 0.
    for i in 1..m {
        for j in i..m {
            let s = (i + j) % m;
            if s != 0 && a[i] + a[j] < a[s] {
                return Err(Error::NotInPolyhedron(format!(
                    "a_{i} + a_{j} = {} < a_{s} = {}",
                    a[i] + a[j],
                    a[s]
                )));
            }
        }
    }
    Ok(())
}

impl AperyTuple {
    /// Validates residues and group-cone membership.
    pub fn new(m: usize, values: Vec<u64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        if values.len() != m - 1 {
            return Err(Error::DimensionMismatch {
                expected: m - 1,
                found: values.len(),
            });
        }
        for (idx, &a) in values.iter().enumerate() {
            let i = idx + 1;
            if a % m as u64 != i as u64 {
                return Err(Error::NotInPolyhedron(format!("a_{i} = {a} is not congruent to {i} mod {m}")));
            }
        }
        let full: Vec<u64> = std::iter::once(0).chain(values.iter().copied()).collect();
        check_cone(m, &full)?;
        Ok(Self { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(a_1, ..., a_{m-1})`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `a_i` for any residue, with `a_0 = 0`.
    pub fn get(&self, residue: usize) -> u64 {
        let r = residue % self.m;
        if r == 0 {
            0
        } else {
            self.values[r - 1]
        }
    }

    pub fn to_kunz(&self) -> KunzTuple {
        let m = self.m as u64;
        KunzTuple {
            m: self.m,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(idx, &a)| (a - (idx as u64 + 1)) / m)
                .collect(),
        }
    }

    /// The semigroup `<m, a_1, ..., a_{m-1}>`.
    pub fn to_semigroup(&self) -> Result<NumericalSemigroup> {
        self.to_kunz().to_semigroup()
    }
}

impl KunzTuple {
    /// Validates the Kunz polyhedron inequalities
    /// `x_i + x_j >= x_{i+j}` and `x_i + x_j + 1 >= x_{i+j-m}`.
    pub fn new(m: usize, values: Vec<u64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        if values.len() != m - 1 {
            return Err(Error::DimensionMismatch {
                expected: m - 1,
                found: values.len(),
            });
        }
        let x = |i: usize| values[i - 1];
        for i in 1..m {
            for j in i..m {
                if i + j < m && x(i) + x(j) < x(i + j) {
                    return Err(Error::NotInPolyhedron(format!("x_{i} + x_{j} < x_{}", i + j)));
                }
                if i + j > m && x(i) + x(j) + 1 < x(i + j - m) {
                    return Err(Error::NotInPolyhedron(format!(
                        "x_{i} + x_{j} + 1 < x_{}",
                        i + j - m
                    )));
                }
            }
        }
        Ok(Self { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `x_i` for `1 <= i < m`.
    pub fn get(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    /// True iff every coordinate is at least 1, i.e. the semigroup has
    /// multiplicity exactly `m`.
    pub fn has_full_multiplicity(&self) -> bool {
        self.values.iter().all(|&x| x >= 1)
    }

    pub fn to_apery(&self) -> AperyTuple {
        let m = self.m as u64;
        AperyTuple {
            m: self.m,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(idx, &x)| m * x + idx as u64 + 1)
                .collect(),
        }
    }

    /// The semigroup with this Kunz tuple. A tuple with a zero coordinate
    /// describes a semigroup of smaller multiplicity and is reported as
    /// [`Error::MultiplicityBelow`].
    pub fn to_semigroup(&self) -> Result<NumericalSemigroup> {
        let a = self.to_apery();
        let gens: Vec<u64> = std::iter::once(self.m as u64)
            .chain(a.values.iter().copied())
            .collect();
        let s = NumericalSemigroup::new(&gens)?;
        if s.multiplicity() != self.m as u64 {
            return Err(Error::MultiplicityBelow {
                m: self.m,
                actual: s.multiplicity(),
            });
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn f(v: &[u32]) -> Factorization {
        Factorization(v.to_vec())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(sg(&[6, 7, 8, 9, 13]).generators(), &[6, 7, 8, 9]);
        assert_eq!(sg(&[4, 9, 14, 15]).generators(), &[4, 9, 14, 15]);
        assert_eq!(NumericalSemigroup::new(&[2, 4]), Err(Error::NotNumerical { gcd: 2 }));
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyGenerators));
        assert_eq!(sg(&[15, 9, 4, 14, 9]).generators(), &[4, 9, 14, 15]);
        assert_eq!(sg(&[1, 5]).generators(), &[1]);
        assert_eq!(sg(&[1]).frobenius(), -1);
    }

    #[test]
    fn membership_examples() {
        let s = sg(&[6, 9, 20]);
        assert!(s.contains(0));
        assert!(s.contains(49));
        assert!(!s.contains(43));
        assert!(!s.contains(-6));
        assert_eq!(s.frobenius(), 43);
    }

    #[test]
    fn apery_examples() {
        assert_eq!(sg(&[6, 7, 8, 9]).apery_set(), &[0, 7, 8, 9, 16, 17]);
        assert_eq!(sg(&[4, 9, 14, 15]).apery_set(), &[0, 9, 14, 15]);
        // Residue 5 is reached by 26 + 33 = 59.
        assert_eq!(sg(&[6, 19, 26, 33]).apery_set(), &[0, 19, 26, 33, 52, 59]);
    }

    #[test]
    fn kunz_round_trip() {
        let s = sg(&[6, 7, 8, 9]);
        let x = s.kunz_tuple();
        assert_eq!(x.values(), &[1, 1, 1, 2, 2]);
        let back = KunzTuple::new(6, vec![1, 1, 1, 2, 2]).unwrap().to_semigroup().unwrap();
        assert_eq!(back, s);
        assert_eq!(x.to_apery(), s.apery());
    }

    #[test]
    fn all_zero_kunz_tuple_is_in_polyhedron_but_has_small_multiplicity() {
        let x = KunzTuple::new(5, vec![0; 4]).unwrap();
        assert!(!x.has_full_multiplicity());
        assert_eq!(x.to_semigroup(), Err(Error::MultiplicityBelow { m: 5, actual: 1 }));
    }

    #[test]
    fn kunz_tuple_outside_polyhedron() {
        // x_1 + x_1 = 2 < x_2 = 5
        assert!(matches!(KunzTuple::new(4, vec![1, 5, 1]), Err(Error::NotInPolyhedron(_))));
        assert!(matches!(AperyTuple::new(4, vec![5, 7, 7]), Err(Error::NotInPolyhedron(_))));
    }

    #[test]
    fn factorization_examples() {
        let s = sg(&[4, 9, 14, 15]);
        assert_eq!(s.factorizations(24).unwrap(), vec![f(&[0, 1, 0, 1]), f(&[6, 0, 0, 0])]);
        assert_eq!(
            s.factorizations(28).unwrap(),
            vec![f(&[0, 0, 2, 0]), f(&[1, 1, 0, 1]), f(&[7, 0, 0, 0])]
        );
        assert_eq!(s.factorizations(0).unwrap(), vec![f(&[0, 0, 0, 0])]);
        assert_eq!(s.factorizations(11), Err(Error::NotAnElement { n: 11 }));
    }

    #[test]
    fn betti_examples() {
        let elems = |g: &[u64]| -> Vec<u64> {
            sg(g).betti_elements_classic().iter().map(|b| b.element).collect()
        };
        assert_eq!(elems(&[6, 7, 8, 9]), vec![14, 15, 16, 18]);
        assert_eq!(elems(&[9, 20, 30, 35]), vec![60, 65, 70, 75, 80, 90]);
        assert_eq!(elems(&[2, 3]), vec![6]);
    }

    #[test]
    fn classic_presentation_examples() {
        let rho = sg(&[6, 7, 8, 9]).minimal_presentation_classic();
        assert_eq!(rho.len(), 4);
        assert!(rho
            .iter()
            .any(|t| t.at == 16 && t.left == f(&[0, 1, 0, 1]) && t.right == f(&[0, 0, 2, 0])));
        assert_eq!(
            sg(&[2, 3]).minimal_presentation_classic(),
            vec![Trade {
                at: 6,
                left: f(&[3, 0]),
                right: f(&[0, 2])
            }]
        );
        assert_eq!(sg(&[4, 5, 6, 7]).minimal_presentation_classic().len(), 6);
        for t in sg(&[9, 20, 30, 35]).minimal_presentation_classic() {
            assert!(!t.left.shares_support(&t.right));
            assert!(t.left.0[0] >= t.right.0[0]);
        }
    }
}
