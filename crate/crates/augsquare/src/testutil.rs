//! Shared fixtures for unit tests.

use crate::designs::Contraction;

/// The worked 3 x 5 contraction (rows A, B, C) used across test modules.
pub(crate) fn example_contraction() -> Contraction {
    Contraction::new(
        5,
        3,
        vec![
            vec![2, 4, 5, 1, 3],
            vec![5, 3, 2, 4, 1],
            vec![1, 2, 3, 5, 4],
        ],
    )
    .unwrap()
}

/// Check placements of the worked example as (row, column, check) triples,
/// 0-based positions, 1-based check labels.
pub(crate) fn example_check_grid() -> Vec<(usize, usize, usize)> {
    vec![
        (0, 0, 3),
        (0, 3, 1),
        (0, 4, 2),
        (1, 0, 1),
        (1, 1, 3),
        (1, 2, 2),
        (2, 1, 2),
        (2, 2, 3),
        (2, 4, 1),
        (3, 1, 1),
        (3, 3, 2),
        (3, 4, 3),
        (4, 0, 2),
        (4, 2, 1),
        (4, 3, 3),
    ]
}
