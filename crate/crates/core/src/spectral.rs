//! Exact eigenvalue multiplicities of tree matrices.
//!
//! The workhorse is a bottom-up symmetric congruence diagonalization of
//! M − αI over Q(α): each vertex keeps one diagonal value; a zero child is
//! neutralized against its parent with the sentinel pair (−1/2, 2) and the
//! parent is severed from the rest of the tree. The multiplicity of α is the
//! number of zero diagonal values at the end. An independent oracle comes
//! from the characteristic polynomial, computed by the classical
//! two-polynomial branch recursion in exact integer arithmetic.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{nf_inverse, EigenvalueSpec, FieldElement, SpectralError};
use crate::poly::IntPoly;
use crate::tree::{matching_number, RootedTree};

/// Which matrix of the tree is diagonalized. The modified Laplacian adds 1 to
/// the root's diagonal entry, which makes deleting the root block-diagonal in
/// the branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    ModifiedLaplacian,
}

impl MatrixKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adj",
            MatrixKind::Laplacian => "lap",
            MatrixKind::ModifiedLaplacian => "modlap",
        }
    }
}

impl FromStr for MatrixKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "adj" | "adjacency" => Ok(MatrixKind::Adjacency),
            "lap" | "laplacian" => Ok(MatrixKind::Laplacian),
            "modlap" | "modified-laplacian" => Ok(MatrixKind::ModifiedLaplacian),
            other => Err(format!("unknown matrix kind {other:?} (expected adj, lap or modlap)")),
        }
    }
}

/// Multiplicity of α as an eigenvalue of the chosen matrix of `t`.
pub fn multiplicity(
    t: &RootedTree,
    kind: MatrixKind,
    spec: &EigenvalueSpec,
) -> Result<usize, SpectralError> {
    Ok(diagonalize(t, kind, spec)?.0)
}

/// Runs the congruence diagonalization once and returns
/// (multiplicity in the tree, multiplicity in the forest of root branches).
///
/// The forest count reads the diagonal just before the root is processed.
/// This is exact for the adjacency matrix and the modified Laplacian, whose
/// root-deleted matrices are block-diagonal in the branch matrices of the
/// same kind; call sites needing the plain Laplacian of branches must
/// extract the branches instead.
fn diagonalize(
    t: &RootedTree,
    kind: MatrixKind,
    spec: &EigenvalueSpec,
) -> Result<(usize, usize), SpectralError> {
    match spec {
        EigenvalueSpec::Rational(a) => diag_rational(t, kind, a),
        EigenvalueSpec::Extension { .. } => diag_extension(t, kind, spec),
    }
}

fn diag_entry_offset(t: &RootedTree, kind: MatrixKind, v: usize) -> i64 {
    match kind {
        MatrixKind::Adjacency => 0,
        MatrixKind::Laplacian => t.degree(v) as i64,
        MatrixKind::ModifiedLaplacian => {
            t.degree(v) as i64 + i64::from(v == t.root())
        }
    }
}

fn diag_rational(
    t: &RootedTree,
    kind: MatrixKind,
    alpha: &BigRational,
) -> Result<(usize, usize), SpectralError> {
    let n = t.len();
    let root = t.root();
    let mut d: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut severed = vec![false; n];
    let mut zeros = 0usize;
    let mut forest_zeros = 0usize;
    for v in t.post_order() {
        let v = v as usize;
        if v == root {
            forest_zeros = zeros;
        }
        let zero_child = t
            .children(v)
            .iter()
            .map(|&c| c as usize)
            .find(|&c| !severed[c] && d[c].is_zero());
        if let Some(c) = zero_child {
            d[c] = BigRational::from(BigInt::from(2));
            d[v] = BigRational::new(BigInt::from(-1), BigInt::from(2));
            severed[v] = true;
            zeros -= 1; // the consumed child is no longer zero
        } else {
            let mut val = BigRational::from(BigInt::from(diag_entry_offset(t, kind, v))) - alpha;
            for &c in t.children(v) {
                let c = c as usize;
                if !severed[c] {
                    val -= BigRational::one() / &d[c];
                }
            }
            if val.is_zero() {
                zeros += 1;
            }
            d[v] = val;
        }
    }
    Ok((zeros, forest_zeros))
}

fn diag_extension(
    t: &RootedTree,
    kind: MatrixKind,
    spec: &EigenvalueSpec,
) -> Result<(usize, usize), SpectralError> {
    let n = t.len();
    let root = t.root();
    let alpha = FieldElement::generator(spec);
    let mut d: Vec<FieldElement> = vec![FieldElement::zero(spec); n];
    let mut severed = vec![false; n];
    let mut zeros = 0usize;
    let mut forest_zeros = 0usize;
    for v in t.post_order() {
        let v = v as usize;
        if v == root {
            forest_zeros = zeros;
        }
        let zero_child = t
            .children(v)
            .iter()
            .map(|&c| c as usize)
            .find(|&c| !severed[c] && d[c].is_zero());
        if let Some(c) = zero_child {
            d[c] = FieldElement::from_integer(2, spec);
            d[v] = FieldElement::from_coeffs(
                vec![BigRational::new(BigInt::from(-1), BigInt::from(2))],
                spec,
            );
            severed[v] = true;
            zeros -= 1;
        } else {
            let mut val =
                FieldElement::from_integer(diag_entry_offset(t, kind, v), spec).sub(&alpha);
            for &c in t.children(v) {
                let c = c as usize;
                if !severed[c] {
                    val = val.sub(&nf_inverse(&d[c], spec)?);
                }
            }
            if val.is_zero() {
                zeros += 1;
            }
            d[v] = val;
        }
    }
    Ok((zeros, forest_zeros))
}

/// Multiplicity of the eigenvalue 0 of the adjacency matrix, in linear time
/// via the matching number: N₀ = n − 2m(T).
pub fn multiplicity_zero_fast(t: &RootedTree) -> usize {
    t.len() - 2 * matching_number(t)
}

/// Sign type of the zero toll: +1 when every root branch has sign −1
/// (vacuously for a single vertex), −1 when some branch has sign +1.
pub fn sign_type_zero(t: &RootedTree) -> i8 {
    let mut sign = vec![0i8; t.len()];
    for v in t.post_order() {
        let v = v as usize;
        sign[v] = if t.children(v).iter().all(|&c| sign[c as usize] == -1) { 1 } else { -1 };
    }
    sign[t.root()]
}

/// Characteristic polynomial det(zI − M) by the bottom-up two-polynomial
/// recursion over the branches, in exact integer arithmetic.
pub fn char_poly(t: &RootedTree, kind: MatrixKind) -> IntPoly {
    let n = t.len();
    // a(v) = z − diagonal entry
    let a = |v: usize| -> IntPoly {
        IntPoly::new(vec![BigInt::from(-diag_entry_offset(t, kind, v)), BigInt::one()])
    };
    // p[v] = char poly of the fringe subtree at v (with the global diagonal),
    // q[v] = product of children's p = char poly of that subtree minus v
    let mut p: Vec<IntPoly> = vec![IntPoly::zero(); n];
    let mut q: Vec<IntPoly> = vec![IntPoly::zero(); n];
    for v in t.post_order() {
        let v = v as usize;
        let ch = t.children(v);
        let child_p: Vec<&IntPoly> = ch.iter().map(|&c| &p[c as usize]).collect();
        // prefix/suffix products so each "product without child i" is reused
        let k = child_p.len();
        let mut prefix = Vec::with_capacity(k + 1);
        prefix.push(IntPoly::constant(1));
        for cp in &child_p {
            let last = prefix.last().unwrap().mul(cp);
            prefix.push(last);
        }
        let mut suffix = vec![IntPoly::constant(1); k + 1];
        for i in (0..k).rev() {
            suffix[i] = child_p[i].mul(&suffix[i + 1]);
        }
        let mut pv = a(v).mul(&prefix[k]);
        for (i, &c) in ch.iter().enumerate() {
            let without = prefix[i].mul(&suffix[i + 1]);
            pv = pv.sub(&q[c as usize].mul(&without));
        }
        q[v] = prefix[k].clone();
        p[v] = pv;
    }
    p[t.root()].clone()
}

/// The additive toll: multiplicity of α in `t` minus the sum over root
/// branches.
///
/// For the adjacency matrix and the modified Laplacian the value is in
/// {−1, 0, +1} by interlacing and one diagonalization pass suffices; the
/// plain Laplacian does not decompose into branches and the difference is
/// computed literally (and may leave that range).
pub fn toll(t: &RootedTree, kind: MatrixKind, spec: &EigenvalueSpec) -> Result<i64, SpectralError> {
    match kind {
        MatrixKind::Adjacency | MatrixKind::ModifiedLaplacian => {
            let (tree, forest) = diagonalize(t, kind, spec)?;
            Ok(tree as i64 - forest as i64)
        }
        MatrixKind::Laplacian => {
            let full = multiplicity(t, kind, spec)? as i64;
            let mut branch_sum = 0i64;
            for b in t.branches() {
                branch_sum += multiplicity(&b, kind, spec)? as i64;
            }
            Ok(full - branch_sum)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::factor_multiplicity;

    fn tree(parents: &[Option<usize>]) -> RootedTree {
        RootedTree::from_parents(parents).unwrap()
    }

    fn path(n: usize) -> RootedTree {
        let parents: Vec<Option<usize>> =
            (0..n).map(|v| if v == 0 { None } else { Some(v - 1) }).collect();
        tree(&parents)
    }

    fn star(leaves: usize) -> RootedTree {
        let mut parents = vec![None];
        parents.extend(std::iter::repeat_n(Some(0), leaves));
        tree(&parents)
    }

    fn sqrt2() -> EigenvalueSpec {
        EigenvalueSpec::from_minpoly(IntPoly::from_i64(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&RootedTree::singleton(), MatrixKind::Adjacency),
            IntPoly::x()
        );
        assert_eq!(
            char_poly(&path(2), MatrixKind::Adjacency),
            IntPoly::from_i64(&[-1, 0, 1])
        );
        assert_eq!(
            char_poly(&path(3), MatrixKind::Adjacency),
            IntPoly::from_i64(&[0, -2, 0, 1])
        );
    }

    #[test]
    fn char_poly_degree_is_vertex_count() {
        for t in [RootedTree::singleton(), path(6), star(4)] {
            for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::ModifiedLaplacian] {
                assert_eq!(char_poly(&t, kind).degree(), Some(t.len()));
                assert!(char_poly(&t, kind).is_monic());
            }
        }
    }

    #[test]
    fn char_poly_laplacian_star() {
        // Laplacian of the 3-star has eigenvalues 0, 1, 1, 4
        let cp = char_poly(&star(3), MatrixKind::Laplacian);
        let expected = IntPoly::from_i64(&[0, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[-4, 1]));
        assert_eq!(cp, expected);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&path(3), MatrixKind::Adjacency, &sqrt2()).unwrap(), 1);
        assert_eq!(
            multiplicity(&star(3), MatrixKind::Adjacency, &EigenvalueSpec::integer(0)).unwrap(),
            2
        );
        assert_eq!(
            multiplicity(&path(2), MatrixKind::Adjacency, &EigenvalueSpec::integer(1)).unwrap(),
            1
        );
    }

    #[test]
    fn multiplicity_zero_fast_examples() {
        assert_eq!(multiplicity_zero_fast(&RootedTree::singleton()), 1);
        assert_eq!(multiplicity_zero_fast(&path(4)), 0);
        assert_eq!(multiplicity_zero_fast(&star(3)), 2);
    }

    #[test]
    fn sign_type_examples() {
        assert_eq!(sign_type_zero(&RootedTree::singleton()), 1);
        assert_eq!(sign_type_zero(&path(2)), -1);
        assert_eq!(sign_type_zero(&star(2)), -1);
    }

    #[test]
    fn toll_examples() {
        let zero = EigenvalueSpec::integer(0);
        let one = EigenvalueSpec::integer(1);
        assert_eq!(toll(&RootedTree::singleton(), MatrixKind::Adjacency, &zero).unwrap(), 1);
        assert_eq!(toll(&path(2), MatrixKind::Adjacency, &zero).unwrap(), -1);
        assert_eq!(toll(&path(2), MatrixKind::Adjacency, &one).unwrap(), 1);
    }

    #[test]
    fn diag_matches_char_poly_oracle_on_small_trees() {
        let specs = [
            EigenvalueSpec::integer(0),
            EigenvalueSpec::integer(1),
            EigenvalueSpec::integer(-1),
            sqrt2(),
            EigenvalueSpec::from_minpoly(IntPoly::from_i64(&[-1, -1, 1])).unwrap(),
        ];
        let trees = [
            RootedTree::singleton(),
            path(2),
            path(5),
            star(4),
            tree(&[None, Some(0), Some(0), Some(1), Some(1), Some(4), Some(2)]),
        ];
        for t in &trees {
            for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::ModifiedLaplacian] {
                let cp = char_poly(t, kind);
                for spec in &specs {
                    let m = spec.minpoly_int().unwrap();
                    let want = factor_multiplicity(&cp, &m);
                    let got = multiplicity(t, kind, spec).unwrap();
                    assert_eq!(got, want, "tree {t:?} kind {kind:?} spec {spec}");
                }
            }
        }
    }

    #[test]
    fn laplacian_toll_on_star_is_minus_two() {
        // root-deleted Laplacian is not block-diagonal in branch Laplacians,
        // so the literal difference can leave {-1,0,1}
        let zero = EigenvalueSpec::integer(0);
        assert_eq!(toll(&star(3), MatrixKind::Laplacian, &zero).unwrap(), -2);
    }

    #[test]
    fn non_integer_rational_has_multiplicity_zero() {
        let half = EigenvalueSpec::rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        for t in [path(4), star(3)] {
            assert_eq!(multiplicity(&t, MatrixKind::Adjacency, &half).unwrap(), 0);
        }
    }
}
