//! Random growth processes for recursive and binary increasing trees, and
//! exhaustive enumeration of rooted shapes with exact probabilities.
//!
//! A recursive tree grows by attaching each new vertex to a uniformly random
//! earlier vertex; all (n−1)! labelled outcomes are equally likely. A binary
//! increasing tree grows by filling a uniformly random free child slot (a
//! tree of size k has k+1 free slots), giving n! equally likely outcomes.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::rng::RngSeed;
use crate::tree::{canonical_key, IsoMode, RootedTree, ShapeKey};

/// The two increasing-tree families in scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Recursive,
    BinaryIncreasing,
}

impl Family {
    /// Isomorphism mode matching the family's probabilistic symmetry:
    /// recursive trees are unordered, binary increasing trees are plane.
    pub fn iso_mode(&self) -> IsoMode {
        match self {
            Family::Recursive => IsoMode::Unordered,
            Family::BinaryIncreasing => IsoMode::Ordered,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Recursive => "rec",
            Family::BinaryIncreasing => "bin",
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rec" | "recursive" => Ok(Family::Recursive),
            "bin" | "binary" => Ok(Family::BinaryIncreasing),
            other => Err(format!("unknown family {other:?} (expected rec or bin)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("tree size must be at least 1")]
    EmptySize,
    #[error("enumeration of {family} shapes at n = {n} exceeds the configured maximum {max}")]
    EnumerationTooLarge { family: &'static str, n: usize, max: usize },
}

/// One rooted shape with its exact probability under a family's model.
#[derive(Debug, Clone)]
pub struct ShapeAtom {
    pub shape: ShapeKey,
    pub representative: RootedTree,
    pub prob: BigRational,
}

/// Resource guard for shape enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumLimits {
    pub recursive_max: usize,
    pub binary_max: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { recursive_max: 18, binary_max: 22 }
    }
}

impl EnumLimits {
    pub fn check(&self, family: Family, n: usize) -> Result<(), GenError> {
        let max = match family {
            Family::Recursive => self.recursive_max,
            Family::BinaryIncreasing => self.binary_max,
        };
        if n == 0 {
            return Err(GenError::EmptySize);
        }
        if n > max {
            return Err(GenError::EnumerationTooLarge { family: family.as_str(), n, max });
        }
        Ok(())
    }
}

/// Random recursive tree: vertex i attaches to a uniform vertex in 0..i.
pub fn gen_recursive(n: usize, seed: &RngSeed) -> Result<RootedTree, GenError> {
    if n == 0 {
        return Err(GenError::EmptySize);
    }
    let mut rng = seed.rng();
    let mut parents = Vec::with_capacity(n);
    parents.push(None);
    for i in 1..n {
        parents.push(Some(rng.gen_range(0..i)));
    }
    Ok(RootedTree::from_parents(&parents).expect("growth process output is valid"))
}

/// Random binary increasing tree: each step fills a uniformly random free
/// left/right slot.
pub fn gen_binary(n: usize, seed: &RngSeed) -> Result<RootedTree, GenError> {
    if n == 0 {
        return Err(GenError::EmptySize);
    }
    let mut rng = seed.rng();
    let mut slots: Vec<[Option<u32>; 2]> = vec![[None, None]; n];
    let mut free: Vec<(u32, u8)> = vec![(0, 0), (0, 1)];
    for k in 1..n as u32 {
        let idx = rng.gen_range(0..free.len());
        let (v, side) = free.swap_remove(idx);
        slots[v as usize][side as usize] = Some(k);
        free.push((k, 0));
        free.push((k, 1));
    }
    Ok(RootedTree::from_slots(slots))
}

pub fn generate(family: Family, n: usize, seed: &RngSeed) -> Result<RootedTree, GenError> {
    match family {
        Family::Recursive => gen_recursive(n, seed),
        Family::BinaryIncreasing => gen_binary(n, seed),
    }
}

/// Every rooted shape of the family at size `n` with its exact probability.
///
/// Recursive shapes are unordered with P = n / (∏ s_v · |Aut|); binary shapes
/// are plane with P = 1 / ∏ s_v, where s_v ranges over fringe-subtree sizes.
/// Probabilities over a full enumeration sum to exactly 1.
pub fn enum_shapes(family: Family, n: usize, limits: &EnumLimits) -> Result<Vec<ShapeAtom>, GenError> {
    limits.check(family, n)?;
    Ok(match family {
        Family::Recursive => {
            let levels = unordered_levels(n);
            levels[n]
                .iter()
                .map(|s| {
                    let denom = &s.size_prod * &s.aut;
                    ShapeAtom {
                        shape: canonical_key(&s.tree, IsoMode::Unordered),
                        representative: s.tree.clone(),
                        prob: big_ratio(BigUint::from(n), denom),
                    }
                })
                .collect()
        }
        Family::BinaryIncreasing => {
            let levels = plane_binary_levels(n);
            levels[n]
                .iter()
                .map(|s| ShapeAtom {
                    shape: canonical_key(&s.tree, IsoMode::Ordered),
                    representative: s.tree.clone(),
                    prob: big_ratio(BigUint::one(), s.size_prod.clone()),
                })
                .collect()
        }
    })
}

fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

// ---------------------------------------------------------------------------
// Unordered rooted shapes (recursive family)
// ---------------------------------------------------------------------------

struct UnorderedShape {
    tree: RootedTree,
    size_prod: BigUint,
    aut: BigUint,
}

/// All unordered rooted shapes of sizes 1..=n, smallest sizes first.
fn unordered_levels(n: usize) -> Vec<Vec<UnorderedShape>> {
    let mut levels: Vec<Vec<UnorderedShape>> = vec![Vec::new()];
    for m in 1..=n {
        let mut shapes = Vec::new();
        if m == 1 {
            shapes.push(UnorderedShape {
                tree: RootedTree::singleton(),
                size_prod: BigUint::one(),
                aut: BigUint::one(),
            });
        } else {
            // children as a non-increasing multiset of (size, index) pairs
            let mut picks: Vec<(usize, usize)> = Vec::new();
            multiset_children(&levels, m - 1, m - 1, usize::MAX, &mut picks, &mut shapes);
        }
        levels.push(shapes);
    }
    levels
}

/// Recursively choose child shapes with total size `remaining`, each pick
/// lexicographically no larger than (max_size, max_idx).
fn multiset_children(
    levels: &[Vec<UnorderedShape>],
    remaining: usize,
    max_size: usize,
    max_idx: usize,
    picks: &mut Vec<(usize, usize)>,
    out: &mut Vec<UnorderedShape>,
) {
    if remaining == 0 {
        out.push(compose_unordered(levels, picks));
        return;
    }
    let top = remaining.min(max_size);
    for size in (1..=top).rev() {
        let idx_cap = if size == max_size { max_idx } else { usize::MAX };
        let count = levels[size].len();
        for idx in 0..count.min(idx_cap.saturating_add(1)).min(count) {
            picks.push((size, idx));
            multiset_children(levels, remaining - size, size, idx, picks, out);
            picks.pop();
        }
    }
}

fn compose_unordered(levels: &[Vec<UnorderedShape>], picks: &[(usize, usize)]) -> UnorderedShape {
    let n: usize = 1 + picks.iter().map(|&(s, _)| s).sum::<usize>();
    let mut parents: Vec<Option<usize>> = vec![None];
    let mut size_prod = BigUint::from(n);
    let mut aut = BigUint::one();
    let mut run = 0usize;
    for (i, &(size, idx)) in picks.iter().enumerate() {
        let child = &levels[size][idx];
        let offset = parents.len();
        for v in 0..child.tree.len() {
            parents.push(match child.tree.parent(v) {
                Some(p) => Some(offset + p),
                None => Some(0),
            });
        }
        size_prod *= &child.size_prod;
        aut *= &child.aut;
        // multiplicity factorials over runs of identical picks
        if i > 0 && picks[i - 1] == (size, idx) {
            run += 1;
            aut *= BigUint::from(run + 1);
        } else {
            run = 0;
        }
    }
    UnorderedShape {
        tree: RootedTree::from_parents(&parents).expect("composed shape is valid"),
        size_prod,
        aut,
    }
}

// ---------------------------------------------------------------------------
// Plane binary shapes (binary increasing family)
// ---------------------------------------------------------------------------

struct PlaneBinaryShape {
    tree: RootedTree,
    size_prod: BigUint,
}

fn plane_binary_levels(n: usize) -> Vec<Vec<PlaneBinaryShape>> {
    let mut levels: Vec<Vec<PlaneBinaryShape>> = vec![Vec::new()];
    for m in 1..=n {
        let mut shapes = Vec::new();
        for left_size in 0..m {
            let right_size = m - 1 - left_size;
            let left_count = if left_size == 0 { 1 } else { levels[left_size].len() };
            let right_count = if right_size == 0 { 1 } else { levels[right_size].len() };
            for li in 0..left_count {
                for ri in 0..right_count {
                    let left = (left_size > 0).then(|| &levels[left_size][li]);
                    let right = (right_size > 0).then(|| &levels[right_size][ri]);
                    shapes.push(compose_binary(m, left, right));
                }
            }
        }
        levels.push(shapes);
    }
    levels
}

fn compose_binary(
    n: usize,
    left: Option<&PlaneBinaryShape>,
    right: Option<&PlaneBinaryShape>,
) -> PlaneBinaryShape {
    let mut slots: Vec<[Option<u32>; 2]> = vec![[None, None]; n];
    let mut size_prod = BigUint::from(n);
    let mut offset = 1u32;
    for (side, sub) in [(0, left), (1, right)] {
        if let Some(sub) = sub {
            slots[0][side] = Some(offset);
            for v in 0..sub.tree.len() {
                let [l, r] = sub.tree.slots(v).expect("binary shapes carry slots");
                slots[(offset + v as u32) as usize] =
                    [l.map(|c| c + offset), r.map(|c| c + offset)];
            }
            offset += sub.tree.len() as u32;
            size_prod *= &sub.size_prod;
        }
    }
    PlaneBinaryShape { tree: RootedTree::from_slots(slots), size_prod }
}

// ---------------------------------------------------------------------------
// Aggregated shape distributions for exact expectations
// ---------------------------------------------------------------------------

/// A representative tree with the total probability of its equivalence class.
///
/// For statistics that do not depend on plane order (all spectral quantities),
/// the binary family is aggregated over unordered shapes, with each class
/// weighted by its number of plane embeddings. This keeps exact expectations
/// tractable at sizes where the plane enumeration (Catalan growth) is not.
#[derive(Debug, Clone)]
pub(crate) struct WeightedShape {
    pub tree: RootedTree,
    pub prob: BigRational,
}

pub(crate) fn shape_distribution(family: Family, n: usize) -> Vec<WeightedShape> {
    match family {
        Family::Recursive => {
            let levels = unordered_levels(n);
            levels[n]
                .iter()
                .map(|s| WeightedShape {
                    tree: s.tree.clone(),
                    prob: big_ratio(BigUint::from(n), &s.size_prod * &s.aut),
                })
                .collect()
        }
        Family::BinaryIncreasing => {
            let levels = binary_unordered_levels(n);
            levels[n]
                .iter()
                .map(|s| WeightedShape {
                    tree: s.tree.clone(),
                    prob: big_ratio(s.embeddings.clone(), s.size_prod.clone()),
                })
                .collect()
        }
    }
}

struct BinaryUnorderedShape {
    tree: RootedTree,
    size_prod: BigUint,
    /// Number of plane binary shapes reducing to this unordered shape.
    embeddings: BigUint,
}

fn binary_unordered_levels(n: usize) -> Vec<Vec<BinaryUnorderedShape>> {
    let mut levels: Vec<Vec<BinaryUnorderedShape>> = vec![Vec::new()];
    for m in 1..=n {
        let mut shapes = Vec::new();
        if m == 1 {
            shapes.push(BinaryUnorderedShape {
                tree: RootedTree::singleton(),
                size_prod: BigUint::one(),
                embeddings: BigUint::one(),
            });
        } else {
            // one child: 2 plane embeddings per child embedding
            for c in &levels[m - 1] {
                shapes.push(compose_binary_unordered(
                    m,
                    &[c],
                    &c.size_prod,
                    BigUint::from(2u32) * &c.embeddings,
                ));
            }
            // two children, as an unordered multiset {a, b} with a <= b
            for a in 1..=(m - 1) / 2 {
                let b = m - 1 - a;
                for (i, ca) in levels[a].iter().enumerate() {
                    let j_start = if a == b { i } else { 0 };
                    for cb in &levels[b][j_start..] {
                        let same = a == b && std::ptr::eq(ca, cb);
                        let emb = if same {
                            &ca.embeddings * &cb.embeddings
                        } else {
                            BigUint::from(2u32) * &ca.embeddings * &cb.embeddings
                        };
                        shapes.push(compose_binary_unordered(
                            m,
                            &[ca, cb],
                            &(&ca.size_prod * &cb.size_prod),
                            emb,
                        ));
                    }
                }
            }
        }
        levels.push(shapes);
    }
    levels
}

fn compose_binary_unordered(
    n: usize,
    children: &[&BinaryUnorderedShape],
    child_prod: &BigUint,
    embeddings: BigUint,
) -> BinaryUnorderedShape {
    let mut parents: Vec<Option<usize>> = vec![None];
    for child in children {
        let offset = parents.len();
        for v in 0..child.tree.len() {
            parents.push(match child.tree.parent(v) {
                Some(p) => Some(offset + p),
                None => Some(0),
            });
        }
    }
    BinaryUnorderedShape {
        tree: RootedTree::from_parents(&parents).expect("composed shape is valid"),
        size_prod: BigUint::from(n) * child_prod,
        embeddings,
    }
}

/// Exact probability that a size-|p| tree of the family is isomorphic to the
/// pattern (plane isomorphism for the binary family). `None` if the pattern
/// cannot occur (binary pattern with out-degree above 2).
pub(crate) fn shape_probability(family: Family, tree: &RootedTree) -> Option<BigRational> {
    let n = tree.len();
    let sizes = tree.subtree_sizes();
    let mut prod = BigUint::one();
    for s in &sizes {
        prod *= BigUint::from(*s);
    }
    match family {
        Family::Recursive => {
            let aut = crate::tree::automorphism_count(tree);
            Some(big_ratio(BigUint::from(n), prod * aut))
        }
        Family::BinaryIncreasing => {
            if (0..n).any(|v| tree.children(v).len() > 2) {
                return None;
            }
            Some(big_ratio(BigUint::one(), prod))
        }
    }
}
