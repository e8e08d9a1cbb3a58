//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive and independent of the library's algorithms.
#![allow(dead_code)] // each test binary uses a different subset

use tree_spectra::tree::RootedTree;

/// All (n−1)! labelled recursive trees as parent arrays (vertex i attaches to
/// some j < i).
pub fn all_recursive_parents(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![vec![None]];
    for i in 1..n {
        let mut next = Vec::with_capacity(out.len() * i);
        for prefix in &out {
            for p in 0..i {
                let mut arr = prefix.clone();
                arr.push(Some(p));
                next.push(arr);
            }
        }
        out = next;
    }
    out
}

/// All n! binary increasing trees, grown over every free-slot choice.
pub fn all_binary_trees(n: usize) -> Vec<RootedTree> {
    #[derive(Clone)]
    struct State {
        slots_taken: Vec<[Option<u32>; 2]>,
        free: Vec<(u32, u8)>,
    }
    let mut states = vec![State {
        slots_taken: vec![[None, None]; n],
        free: vec![(0, 0), (0, 1)],
    }];
    for k in 1..n as u32 {
        let mut next = Vec::with_capacity(states.len() * (k as usize + 1));
        for st in &states {
            for idx in 0..st.free.len() {
                let mut s = st.clone();
                let (v, side) = s.free.swap_remove(idx);
                s.slots_taken[v as usize][side as usize] = Some(k);
                s.free.push((k, 0));
                s.free.push((k, 1));
                next.push(s);
            }
        }
        states = next;
    }
    states
        .into_iter()
        .map(|s| RootedTree::from_binary_slots(s.slots_taken).unwrap())
        .collect()
}

/// Maximum matching by exhaustive search over all edge subsets.
pub fn brute_matching(t: &RootedTree) -> usize {
    let edges: Vec<(usize, usize)> = (0..t.len())
        .filter_map(|v| t.parent(v).map(|p| (v, p)))
        .collect();
    let m = edges.len();
    assert!(m <= 20, "brute matching is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let mut used = 0u64;
        let mut ok = true;
        let mut size = 0;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let bits = (1u64 << a) | (1u64 << b);
                if used & bits != 0 {
                    ok = false;
                    break;
                }
                used |= bits;
                size += 1;
            }
        }
        if ok && size > best {
            best = size;
        }
    }
    best
}

/// Adjacency nullity through the exhaustive matching: n − 2·max matching.
pub fn brute_nullity(t: &RootedTree) -> usize {
    t.len() - 2 * brute_matching(t)
}
