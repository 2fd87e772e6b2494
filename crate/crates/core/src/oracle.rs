//! Brute-force reference computations. The reference functions reuse none of
//! the presentation or factorization algorithms and consult posets only
//! through `leq` and `nil_add`; [`run_checks`] pits them against the main path.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::exactmath::rank;
use crate::facetools::{on_face, Face, Position};
use crate::factorization::{Factorization, Trade};
use crate::kunzposet::{KunzPoset, NilElem};
use crate::presentation;
use crate::semigroup::NumericalSemigroup;

/// Membership table of the semigroup generated by `gens` on `0..=limit`.
fn sieve(gens: &[u64], limit: u64) -> Vec<bool> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for n in 1..=limit as usize {
        member[n] = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
    }
    member
}

/// Apéry set with respect to the smallest generator, by sieving until every
/// residue class has been hit.
pub fn apery_brute(gens: &[u64]) -> Vec<u64> {
    let m = *gens.iter().min().expect("nonempty");
    let mut limit = gens.iter().max().copied().unwrap_or(m) * m;
    loop {
        let member = sieve(gens, limit);
        let mut ap = vec![None; m as usize];
        for (n, &inside) in member.iter().enumerate() {
            let r = n % m as usize;
            if inside && ap[r].is_none() {
                ap[r] = Some(n as u64);
            }
        }
        if ap.iter().all(Option::is_some) {
            return ap.into_iter().map(Option::unwrap).collect();
        }
        limit *= 2;
    }
}

/// All factorizations of `n` over `gens` by exhaustive recursion.
fn factor(gens: &[u64], n: u64, member: &[bool]) -> Vec<Vec<u32>> {
    fn go(gens: &[u64], idx: usize, n: u64, member: &[bool], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == gens.len() {
            if n.is_multiple_of(gens[idx]) {
                cur.push((n / gens[idx]) as u32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let mut c = 0u64;
        while c * gens[idx] <= n {
            let rest = n - c * gens[idx];
            if member[rest as usize] {
                cur.push(c as u32);
                go(gens, idx + 1, rest, member, cur, out);
                cur.pop();
            }
            c += 1;
        }
    }
    let mut out = Vec::new();
    go(gens, 0, n, member, &mut Vec::new(), &mut out);
    out
}

/// Whether `trades` connect the factorization graph of every element up to
/// `max(Ap) + 2 max(gen)`, a finite proxy for generating the kernel
/// congruence.
pub fn check_presentation(s: &NumericalSemigroup, trades: &[Trade]) -> bool {
    let gens = s.generators();
    let k = gens.len();
    let weight = |z: &Factorization| -> u64 { z.as_slice().iter().zip(gens).map(|(&e, &g)| u64::from(e) * g).sum() };
    for t in trades {
        if t.left.len() != k || t.right.len() != k || t.left == t.right || weight(&t.left) != weight(&t.right) {
            return false;
        }
    }
    let max_gen = *gens.iter().max().expect("nonempty");
    let bound = apery_brute(gens).into_iter().max().unwrap_or(0) + 2 * max_gen;
    let member = sieve(gens, bound);

    for b in 0..=bound {
        if !member[b as usize] {
            continue;
        }
        let facts = factor(gens, b, &member);
        if facts.len() < 2 {
            continue;
        }
        let index: HashMap<&Vec<u32>, usize> = facts.iter().enumerate().map(|(i, z)| (z, i)).collect();
        let mut parent: Vec<usize> = (0..facts.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, z) in facts.iter().enumerate() {
            for t in trades {
                for (from, to) in [(&t.left, &t.right), (&t.right, &t.left)] {
                    if z.iter().zip(from.as_slice()).all(|(a, b)| a >= b) {
                        let moved: Vec<u32> = z
                            .iter()
                            .zip(from.as_slice().iter().zip(to.as_slice()))
                            .map(|(&a, (&f, &t))| a - f + t)
                            .collect();
                        let j = index[&moved];
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri] = rj;
                    }
                }
            }
        }
        let root = find(&mut parent, 0);
        if (1..facts.len()).any(|i| find(&mut parent, i) != root) {
            return false;
        }
    }
    true
}

/// `(m - 1) - rank(H_F)`.
pub fn dimension_by_rank(face: &Face) -> usize {
    face.m() - 1 - rank(face.equalities())
}

/// Evaluates `z` by adding atoms one at a time, consulting only `leq`.
fn evaluate_brute(p: &KunzPoset, z: &[u32]) -> Option<usize> {
    let m = p.m();
    let mut acc = 0usize;
    for (&atom, &e) in p.atoms().iter().zip(z) {
        for _ in 0..e {
            let next = (acc + atom) % m;
            if !(p.leq(acc, next) && p.leq(atom, next)) {
                return None;
            }
            acc = next;
        }
    }
    Some(p.class(acc))
}

/// Every `z` with `Σ z_i <= m - 1` evaluating to `q`, lexicographically
/// descending.
pub fn factorizations_brute(p: &KunzPoset, q: usize) -> Vec<Factorization> {
    let k = p.k();
    let cap = p.m() as u32 - 1;
    let target = p.class(q % p.m());
    let mut out = Vec::new();
    let mut z = vec![0u32; k];
    loop {
        if evaluate_brute(p, &z) == Some(target) {
            out.push(Factorization(z.clone()));
        }
        // Next vector with coordinate sum at most cap.
        let mut pos = 0;
        loop {
            if pos == k {
                out.sort_by(|a, b| b.cmp(a));
                return out;
            }
            z[pos] += 1;
            if z.iter().sum::<u32>() <= cap {
                break;
            }
            z[pos] = 0;
            pos += 1;
        }
    }
}

/// Exhaustive checks of the nilsemigroup axioms for `⊕` on a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilsemigroupReport {
    pub associative: bool,
    pub commutative: bool,
    pub partly_cancellative: bool,
    pub divisibility_matches_order: bool,
}

impl NilsemigroupReport {
    pub fn all_pass(&self) -> bool {
        self.associative && self.commutative && self.partly_cancellative && self.divisibility_matches_order
    }
}

pub fn check_nilsemigroup(p: &KunzPoset) -> NilsemigroupReport {
    let mut elems: Vec<NilElem> = p.ground().iter().map(|&g| NilElem::Class(g)).collect();
    elems.push(NilElem::Infinity);
    let add = |a: NilElem, b: NilElem| p.nil_add(a, b);

    let mut report = NilsemigroupReport {
        associative: true,
        commutative: true,
        partly_cancellative: true,
        divisibility_matches_order: true,
    };
    for &a in &elems {
        for &b in &elems {
            if add(a, b) != add(b, a) {
                report.commutative = false;
            }
            for &c in &elems {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    report.associative = false;
                }
                let ab = add(a, b);
                if !ab.is_infinity() && ab == add(a, c) && b != c {
                    report.partly_cancellative = false;
                }
            }
        }
    }
    for &a in p.ground() {
        for &b in p.ground() {
            let divides = p
                .ground()
                .iter()
                .any(|&c| add(NilElem::Class(a), NilElem::Class(c)) == NilElem::Class(b));
            if divides != p.leq(a, b) {
                report.divisibility_matches_order = false;
            }
        }
    }
    report
}

/// One named pass/fail result of [`run_checks`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
}

/// Compares every main-path computation on `s` with its reference
/// counterpart.
pub fn run_checks(s: &NumericalSemigroup) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let mut push = |name, passed| lines.push(CheckLine { name, passed });

    push("apery", apery_brute(s.generators()) == s.apery_set());

    let p = KunzPoset::from_apery(&s.apery());
    let face = Face::of_semigroup(s);
    push("face_poset", face.poset().as_ref() == Ok(&p));
    push(
        "apery_on_face",
        on_face(&face, s.apery().values()).ok() == Some(Position::Interior),
    );
    push(
        "poset_factorizations",
        p.ground()
            .iter()
            .all(|&q| p.factorizations(q).ok() == Some(factorizations_brute(&p, q).as_slice())),
    );
    push("nilsemigroup", check_nilsemigroup(&p).all_pass());
    push(
        "dimension",
        presentation::dimension(&p) == dimension_by_rank(&face),
    );

    let classic = s.minimal_presentation_classic();
    let rho = presentation::m_centric_presentation(s);
    push("classic_presentation_valid", check_presentation(s, &classic));
    push("m_centric_presentation_valid", check_presentation(s, &rho));
    push("cardinality", classic.len() == rho.len() && rho.len() == presentation::presentation_cardinality(&p));
    let minimal = (0..rho.len()).all(|i| {
        let mut fewer = rho.clone();
        fewer.remove(i);
        !check_presentation(s, &fewer)
    });
    push("m_centric_presentation_minimal", minimal);

    let parametric = presentation::parametric_presentation(&p)
        .and_then(|t| presentation::evaluate_parametric(&p, &t, &s.kunz_tuple()));
    push(
        "parametric_presentation_valid",
        parametric.is_ok_and(|t| t.len() == rho.len() && check_presentation(s, &t)),
    );

    let betti: BTreeSet<u64> = classic.iter().map(|t| t.at).collect();
    let classic_betti: BTreeSet<u64> = s.betti_elements_classic().iter().map(|b| b.element).collect();
    push("betti_elements", betti == classic_betti);
    lines
}
