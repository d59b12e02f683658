//! Orbits of formal logarithms under index permutations and, optionally, set
//! complementation.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::ratio::FormalLog;
use crate::subset::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Permutations,
    PermutationsAndComplement,
}

/// Rays of one orbit found in an input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least image, comparing entries in display order.
    pub representative: FormalLog,
    /// Positions of the input vectors in this orbit, ascending.
    pub members: Vec<usize>,
    /// Size of the full orbit under the group.
    pub orbit_size: usize,
}

/// Distinct images of `v` under the group, in no particular order.
pub fn orbit_of(v: &FormalLog, sym: Symmetry) -> Vec<FormalLog> {
    let mut seen: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    let mut out = Vec::new();
    let complemented = v.apply_complement();
    let seeds: Vec<&FormalLog> = match sym {
        Symmetry::Permutations => vec![v],
        Symmetry::PermutationsAndComplement => vec![v, &complemented],
    };
    for sigma in Permutation::all(v.ground_size()) {
        for seed in &seeds {
            let img = seed.apply_permutation(&sigma);
            if seen.insert(img.entries().to_vec()) {
                out.push(img);
            }
        }
    }
    out
}

/// The lexicographically least element of the orbit of `v`.
pub fn canonical_form(v: &FormalLog, sym: Symmetry) -> FormalLog {
    orbit_of(v, sym)
        .into_iter()
        .min_by_key(FormalLog::ordered_entries)
        .expect("orbit contains v")
}

/// Groups the inputs by orbit. Orbits are listed by their representatives in
/// increasing lexicographic order.
pub fn orbit_decompose(vectors: &[FormalLog], sym: Symmetry) -> Vec<Orbit> {
    let mut orbits: Vec<Orbit> = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        let images = orbit_of(v, sym);
        let rep = images
            .iter()
            .min_by_key(|x| x.ordered_entries())
            .expect("orbit contains v")
            .clone();
        match orbits.iter_mut().find(|o| o.representative == rep) {
            Some(o) => o.members.push(k),
            None => orbits.push(Orbit {
                representative: rep,
                members: vec![k],
                orbit_size: images.len(),
            }),
        }
    }
    orbits.sort_by_cached_key(|o| o.representative.ordered_entries());
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::parse_ratio;

    fn log_of(text: &str, n: usize) -> FormalLog {
        parse_ratio(text, Some(n)).unwrap().formal_log()
    }

    #[test]
    fn r1_has_six_permutations() {
        let r1 = log_of("{1,2,4}{1,3,4}{2,3}{1}{4} / {1,2}{1,3}{1,4}{2,4}{3,4}", 4);
        assert_eq!(orbit_of(&r1, Symmetry::Permutations).len(), 6);
    }

    #[test]
    fn hadamard_orbits() {
        let h = log_of("{1,2}{} / {1}{2}", 3);
        assert_eq!(orbit_of(&h, Symmetry::Permutations).len(), 3);
        assert_eq!(orbit_of(&h, Symmetry::PermutationsAndComplement).len(), 6);
        let c = canonical_form(&h, Symmetry::PermutationsAndComplement);
        assert_eq!(canonical_form(&c, Symmetry::PermutationsAndComplement), c);
    }

    #[test]
    fn decompose_groups_members() {
        let a = log_of("{1,2}{} / {1}{2}", 3);
        let b = log_of("{1,3}{} / {1}{3}", 3);
        let c = log_of("{1,2,3}{1} / {1,2}{1,3}", 3);
        let orbits = orbit_decompose(&[a, c, b], Symmetry::Permutations);
        assert_eq!(orbits.len(), 2);
        let sizes: Vec<usize> = orbits.iter().map(|o| o.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 3);
        assert!(orbits.iter().any(|o| o.members == vec![0, 2]));
    }
}
