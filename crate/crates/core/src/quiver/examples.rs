//! Named quivers used throughout the documentation and tests.

use super::IceQuiver;

fn from_one_based(n: usize, arrows: &[(usize, usize)]) -> IceQuiver {
    let arrows: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (s - 1, t - 1)).collect();
    IceQuiver::from_arrows(n, &arrows).expect("valid example")
}

/// The oriented triangle `2 -> 1 -> 3 -> 2`.
pub fn cyclic_triangle() -> IceQuiver {
    from_one_based(3, &[(2, 1), (1, 3), (3, 2)])
}

/// A six-vertex quiver which becomes an orientation of `D6` after mutating
/// at 5, 3, 1, 6 (1-based).
pub fn six_vertex_d6() -> IceQuiver {
    from_one_based(
        6,
        &[(2, 1), (1, 3), (3, 2), (4, 2), (2, 5), (5, 3), (3, 6), (5, 4), (6, 5)],
    )
}

/// A ten-vertex quiver with 18 arrows whose mutation class has 5739
/// members up to isomorphism.
pub fn ten_vertex_triangular() -> IceQuiver {
    from_one_based(
        10,
        &[
            (2, 1),
            (1, 3),
            (3, 2),
            (4, 2),
            (2, 5),
            (5, 3),
            (3, 6),
            (5, 4),
            (7, 4),
            (4, 8),
            (6, 5),
            (8, 5),
            (5, 9),
            (9, 6),
            (6, 10),
            (8, 7),
            (9, 8),
            (10, 9),
        ],
    )
}

/// A strip of `n - 2` oriented triangles: arrows `i -> i+1` and `i+2 -> i`.
pub fn triangle_strip(n: usize) -> IceQuiver {
    assert!(n >= 1);
    let mut arrows: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    arrows.extend((0..n.saturating_sub(2)).map(|i| (i + 2, i)));
    IceQuiver::from_arrows(n, &arrows).expect("valid example")
}

/// `1 -> 2 -> ... -> n`.
pub fn linear_a(n: usize) -> IceQuiver {
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    IceQuiver::from_arrows(n, &arrows).expect("valid example")
}

/// Two vertices joined by a double arrow.
pub fn kronecker() -> IceQuiver {
    IceQuiver::from_arrows(2, &[(0, 1), (0, 1)]).expect("valid example")
}

/// The valued quiver of type `G2` with `b_12 = 3`, `b_21 = -1`.
pub fn g2() -> IceQuiver {
    IceQuiver::new(2, vec![vec![0, 3], vec![-1, 0]], None).expect("valid example")
}
