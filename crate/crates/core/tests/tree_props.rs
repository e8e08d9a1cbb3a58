//! Property tests for the tree layer: canonical keys are relabeling
//! invariants, the matching DP agrees with exhaustive search, and the fringe
//! bookkeeping identities hold.

mod common;

use proptest::prelude::*;
use tree_spectra::gen::{enum_shapes, EnumLimits, Family};
use tree_spectra::spectral::multiplicity_zero_fast;
use tree_spectra::tree::{
    canonical_key, leaves_quasipendants, matching_number, IsoMode, RootedTree,
};

/// Random parent array of a rooted tree with parent[i] < i.
fn increasing_parents(n: usize) -> impl Strategy<Value = Vec<Option<usize>>> {
    let choices: Vec<BoxedStrategy<Option<usize>>> = (0..n)
        .map(|i| {
            if i == 0 {
                Just(None).boxed()
            } else {
                (0..i).prop_map(Some).boxed()
            }
        })
        .collect();
    choices
}

/// Applies a relabeling permutation to a parent array (root may move).
fn relabel(parents: &[Option<usize>], perm: &[usize]) -> Vec<Option<usize>> {
    let mut out = vec![None; parents.len()];
    for (v, p) in parents.iter().enumerate() {
        out[perm[v]] = p.map(|p| perm[p]);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_key_relabel_invariant(
        parents in (1usize..12).prop_flat_map(increasing_parents),
        seed in any::<u64>(),
    ) {
        let n = parents.len();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates from the seed
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let a = RootedTree::from_parents(&parents).unwrap();
        let b = RootedTree::from_parents(&relabel(&parents, &perm)).unwrap();
        prop_assert_eq!(
            canonical_key(&a, IsoMode::Unordered),
            canonical_key(&b, IsoMode::Unordered)
        );
    }

    #[test]
    fn matching_agrees_with_bruteforce(
        parents in (1usize..11).prop_flat_map(increasing_parents),
    ) {
        let t = RootedTree::from_parents(&parents).unwrap();
        prop_assert_eq!(matching_number(&t), common::brute_matching(&t));
    }

    #[test]
    fn fringe_sizes_equal_depths_plus_one(
        parents in (1usize..40).prop_flat_map(increasing_parents),
    ) {
        let t = RootedTree::from_parents(&parents).unwrap();
        let sizes: u64 = t.subtree_sizes().iter().map(|&s| s as u64).sum();
        let depths: u64 = t.depths().iter().map(|&d| d as u64 + 1).sum();
        prop_assert_eq!(sizes, depths);
    }
}

#[test]
fn ordered_key_invariant_under_plane_relabeling() {
    use tree_spectra::gen::gen_binary;
    use tree_spectra::rng::RngSeed;
    let seed = RngSeed::new(77);
    for i in 0..100u64 {
        let n = 1 + (i as usize * 3) % 24;
        let t = gen_binary(n, &seed.substream(i)).unwrap();
        // relabel by depth-first discovery order, preserving left/right slots
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            order.push(v);
            let [l, r] = t.slots(v as usize).unwrap();
            for c in [r, l].into_iter().flatten() {
                stack.push(c);
            }
        }
        let mut remap = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            remap[old as usize] = new as u32;
        }
        let mut slots = vec![[None, None]; n];
        for v in 0..n {
            let [l, r] = t.slots(v).unwrap();
            slots[remap[v] as usize] = [l.map(|c| remap[c as usize]), r.map(|c| remap[c as usize])];
        }
        let relabeled = RootedTree::from_binary_slots(slots).unwrap();
        assert_eq!(
            canonical_key(&t, IsoMode::Ordered),
            canonical_key(&relabeled, IsoMode::Ordered),
            "instance {i}"
        );
    }
}

#[test]
fn nullity_lower_bound_leaves_minus_quasipendants() {
    // multiplicity of 0 >= l - q over every unordered shape with <= 12 vertices
    let limits = EnumLimits { recursive_max: 12, binary_max: 12 };
    for n in 1..=12 {
        for atom in enum_shapes(Family::Recursive, n, &limits).unwrap() {
            let t = &atom.representative;
            let (l, q) = leaves_quasipendants(t);
            let n0 = multiplicity_zero_fast(t);
            assert!(
                n0 + q >= l,
                "N0 = {n0} < l - q = {} on {t:?}",
                l as i64 - q as i64
            );
        }
    }
}

#[test]
fn matching_exhaustive_small_shapes() {
    let limits = EnumLimits::default();
    for n in 1..=10 {
        for atom in enum_shapes(Family::Recursive, n, &limits).unwrap() {
            assert_eq!(
                matching_number(&atom.representative),
                common::brute_matching(&atom.representative)
            );
        }
    }
}

#[test]
fn recursive_labelled_count_formula() {
    // (n!/prod s_v)/|Aut| equals the brute-force count of labelled recursive
    // trees of each shape, and is a positive integer
    use num_bigint::BigUint;
    use std::collections::HashMap;
    use tree_spectra::tree::automorphism_count;

    for n in 1..=8usize {
        let mut counts: HashMap<_, u64> = HashMap::new();
        for parents in common::all_recursive_parents(n) {
            let t = RootedTree::from_parents(&parents).unwrap();
            *counts.entry(canonical_key(&t, IsoMode::Unordered)).or_default() += 1;
        }
        let limits = EnumLimits::default();
        for atom in enum_shapes(Family::Recursive, n, &limits).unwrap() {
            let t = &atom.representative;
            let mut factorial = BigUint::from(1u32);
            for k in 2..=n {
                factorial *= BigUint::from(k);
            }
            let mut size_prod = BigUint::from(1u32);
            for s in t.subtree_sizes() {
                size_prod *= BigUint::from(s);
            }
            let aut = automorphism_count(t);
            let num = factorial;
            let den = size_prod * aut;
            assert!((&num % &den) == BigUint::from(0u32), "count is not integral");
            let labelled = &num / &den;
            assert_eq!(
                labelled,
                BigUint::from(counts[&atom.shape]),
                "n = {n}, shape {}",
                atom.shape
            );
        }
    }
}
