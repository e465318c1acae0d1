//! Shared fixtures for integration tests: non-abelian groups given by
//! multiplication tables, and randomized valid weights.

use std::collections::BTreeSet;

use beurling::{make_length_weight, Context, Element, GroupSpec, Weight, WeightForm};
use rand::Rng;

/// The symmetric group on three letters, as a multiplication table over the
/// six permutations in lexicographic one-line order, composed as
/// `(p . q)(x) = p(q(x))`.
pub fn s3_spec() -> GroupSpec {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).expect("closed");
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index_of(&[p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    GroupSpec::from_cayley_table(table).expect("S3 is a group")
}

/// The dihedral group of order 8 as a multiplication table. Elements are
/// `r^a s^b` with `a < 4`, `b < 2`, indexed as `2a + b`, where `s r = r^-1 s`.
pub fn d4_spec() -> GroupSpec {
    let compose = |x: usize, y: usize| -> usize {
        let (a, b) = (x / 2, x % 2);
        let (c, d) = (y / 2, y % 2);
        let rot = if b == 0 { (a + c) % 4 } else { (a + 4 - c) % 4 };
        2 * rot + (b + d) % 2
    };
    let table = (0..8).map(|x| (0..8).map(|y| compose(x, y)).collect()).collect();
    GroupSpec::from_cayley_table(table).expect("D4 is a group")
}

/// A random valid weight: either trivial or a word-length weight with a
/// random form and a random symmetric generating set. Word-length weights
/// are submultiplicative and symmetric by construction.
pub fn random_weight(group: &GroupSpec, rng: &mut impl Rng) -> Weight {
    if group.order() == 1 || rng.gen_bool(0.2) {
        return Weight::trivial(group);
    }
    let form = if rng.gen_bool(0.5) {
        WeightForm::Exponential {
            base: 1.0 + rng.gen::<f64>() * 1.5,
        }
    } else {
        WeightForm::Polynomial {
            exponent: rng.gen::<f64>() * 2.0,
        }
    };
    let identity = group.identity();
    let non_identity: Vec<Element> = group.elements().filter(|&e| e != identity).collect();
    let mut chosen: BTreeSet<usize> = non_identity
        .iter()
        .filter(|_| rng.gen_bool(0.6))
        .map(|e| e.0)
        .collect();
    if chosen.is_empty() {
        chosen.insert(non_identity[rng.gen_range(0..non_identity.len())].0);
    }
    let mut symmetric = BTreeSet::new();
    for &i in &chosen {
        symmetric.insert(i);
        symmetric.insert(group.inverse(Element(i)).expect("element in range").0);
    }
    let gens: Vec<Element> = symmetric.into_iter().map(Element).collect();
    make_length_weight(group, &gens, form)
        // The chosen subset may fail to generate the group; every group is
        // generated by all of its non-identity elements.
        .unwrap_or_else(|_| {
            make_length_weight(group, &non_identity, form).expect("full set generates")
        })
}

/// A context over `group` with a random valid weight.
pub fn random_context(group: &GroupSpec, rng: &mut impl Rng) -> Context {
    let weight = random_weight(group, rng);
    Context::new(group.clone(), weight).expect("weight built for this group")
}

/// Abelian test groups of order at most 64, mixing single-axis and
/// multi-axis cyclic products.
pub fn abelian_pool() -> Vec<GroupSpec> {
    let shapes: Vec<Vec<usize>> = vec![
        vec![2],
        vec![3],
        vec![4],
        vec![5],
        vec![6],
        vec![8],
        vec![12],
        vec![16],
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![2, 2, 2],
        vec![4, 4],
        vec![2, 4, 8],
        vec![48],
        vec![64],
        vec![2, 32],
    ];
    shapes
        .into_iter()
        .map(|m| GroupSpec::cyclic_product(m).expect("valid moduli"))
        .collect()
}
