//! Shared fixtures for unit tests.

/// S3 as a Cayley table, built from an independent permutation oracle:
/// element `i` is the i-th permutation of `[0,1,2]` in lexicographic order,
/// composed as `(p.q)(x) = p(q(x))`.
pub(crate) fn s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index_of([p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect()
}
