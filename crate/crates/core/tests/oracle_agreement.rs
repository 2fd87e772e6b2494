use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kunzkit::oracle::{check_nilsemigroup, run_checks};
use kunzkit::{KunzPoset, NumericalSemigroup};

fn random_semigroups(seed: u64, count: usize, max_m: u64) -> Vec<NumericalSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(2..=max_m);
        let mut gens = vec![m];
        gens.extend((0..rng.gen_range(1..=5)).map(|_| rng.gen_range(m + 1..=4 * m)));
        if let Ok(s) = NumericalSemigroup::new(&gens) {
            out.push(s);
        }
    }
    out
}

#[test]
fn main_path_agrees_with_oracle_on_random_semigroups() {
    for s in random_semigroups(7, 200, 9) {
        for line in run_checks(&s) {
            assert!(line.passed, "{:?}: {}", s.generators(), line.name);
        }
    }
}

#[test]
fn nilsemigroup_axioms_up_to_m_12() {
    for s in random_semigroups(11, 30, 12) {
        let report = check_nilsemigroup(&KunzPoset::from_apery(&s.apery()));
        assert!(report.all_pass(), "{:?}: {report:?}", s.generators());
    }
}

#[test]
fn golden_semigroups_pass_every_check() {
    for g in [
        &[6u64, 7, 8, 9][..],
        &[6, 19, 26, 33],
        &[9, 20, 30, 35],
        &[4, 5, 6, 7],
        &[4, 9, 14, 15],
        &[8, 9, 11, 12, 15],
        &[11, 60, 72, 84, 96, 108],
        &[2, 3],
    ] {
        let s = NumericalSemigroup::new(g).unwrap();
        for line in run_checks(&s) {
            assert!(line.passed, "{g:?}: {}", line.name);
        }
    }
}
