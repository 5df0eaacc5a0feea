//! Reference values. Algebra elements are `(num, den, forest)`
//! triples; decomposition and adjoint rows omit • factors, which are padded
//! back to the tree's degree before comparison.

pub type Terms = &'static [(i64, i64, &'static str)];

pub const LEAF: &str = "()";
pub const CHAIN2: &str = "(())";
pub const CHERRY: &str = "(()())";
pub const CHAIN3: &str = "((()))";
pub const STAR4: &str = "(()()())";
pub const FORK4: &str = "(()(()))";
pub const BROOM4: &str = "((()()))";
pub const CHAIN4: &str = "(((())))";

/// `Δ(cherry)` as `(num, den, left, right)`.
pub const CHERRY_COPRODUCT: &[(i64, i64, &str, &str)] = &[
    (1, 1, CHERRY, "1"),
    (1, 1, "1", CHERRY),
    (2, 1, LEAF, CHAIN2),
    (1, 1, "()()", LEAF),
];

pub const CHERRY_REDUCED_COPRODUCT: &[(i64, i64, &str, &str)] = &[(2, 1, LEAF, CHAIN2), (1, 1, "()()", LEAF)];

pub const ANTIPODES: &[(&str, Terms)] = &[
    (LEAF, &[(-1, 1, LEAF)]),
    (CHAIN2, &[(-1, 1, CHAIN2), (1, 1, "()()")]),
    (CHERRY, &[(-1, 1, CHERRY), (2, 1, "()(())"), (-1, 1, "()()()")]),
];

pub struct DecompositionRow {
    pub tree: &'static str,
    pub sqrt: Terms,
    pub minus: Terms,
    pub plus: Terms,
}

pub const DECOMPOSITION: &[DecompositionRow] = &[
    DecompositionRow {
        tree: LEAF,
        sqrt: &[(1, 2, LEAF)],
        minus: &[(1, 1, LEAF)],
        plus: &[],
    },
    DecompositionRow {
        tree: CHAIN2,
        sqrt: &[(1, 2, CHAIN2), (-1, 8, LEAF)],
        minus: &[(1, 2, LEAF)],
        plus: &[(1, 1, CHAIN2), (-1, 2, LEAF)],
    },
    DecompositionRow {
        tree: CHERRY,
        sqrt: &[(1, 2, CHERRY), (-1, 4, CHAIN2)],
        minus: &[(1, 1, CHERRY)],
        plus: &[],
    },
    DecompositionRow {
        tree: CHAIN3,
        sqrt: &[(1, 2, CHAIN3), (-1, 4, CHAIN2), (1, 16, LEAF)],
        minus: &[(1, 1, CHAIN3), (-1, 1, CHAIN2), (1, 2, LEAF)],
        plus: &[],
    },
    DecompositionRow {
        tree: STAR4,
        sqrt: &[(1, 2, STAR4), (-3, 8, CHERRY), (1, 64, LEAF)],
        minus: &[(3, 2, CHERRY), (-1, 4, LEAF)],
        plus: &[(1, 1, STAR4), (-3, 2, CHERRY), (1, 4, LEAF)],
    },
    DecompositionRow {
        tree: FORK4,
        sqrt: &[
            (1, 2, FORK4),
            (-1, 8, "(())(())"),
            (-1, 8, CHAIN3),
            (-1, 8, CHERRY),
            (1, 16, CHAIN2),
            (1, 128, LEAF),
        ],
        minus: &[(1, 2, CHAIN3), (1, 2, CHERRY), (-1, 2, CHAIN2), (1, 8, LEAF)],
        plus: &[(1, 1, FORK4), (-1, 2, CHAIN3), (-1, 2, CHERRY), (1, 8, LEAF)],
    },
    DecompositionRow {
        tree: BROOM4,
        sqrt: &[
            (1, 2, BROOM4),
            (-1, 4, CHAIN3),
            (-1, 8, CHERRY),
            (1, 8, CHAIN2),
            (-1, 64, LEAF),
        ],
        minus: &[(1, 1, CHAIN3), (1, 2, CHERRY), (-1, 1, CHAIN2), (1, 4, LEAF)],
        plus: &[
            (1, 1, BROOM4),
            (-1, 1, CHAIN3),
            (-1, 2, CHERRY),
            (1, 1, CHAIN2),
            (-1, 4, LEAF),
        ],
    },
    DecompositionRow {
        tree: CHAIN4,
        sqrt: &[
            (1, 2, CHAIN4),
            (-1, 8, "(())(())"),
            (-1, 4, CHAIN3),
            (3, 16, CHAIN2),
            (-5, 128, LEAF),
        ],
        minus: &[(1, 1, CHAIN3), (-1, 1, CHAIN2), (3, 8, LEAF)],
        plus: &[(1, 1, CHAIN4), (-1, 1, CHAIN3), (1, 2, CHAIN2), (-1, 8, LEAF)],
    },
];

pub struct AdjointRow {
    pub tree: &'static str,
    pub inv_factorial: (i64, i64),
    pub psi: (i64, i64),
    /// `(−1)^{|τ|} Sτ`.
    pub signed_antipode: Terms,
}

/// Implicit midpoint rule.
pub const MIDPOINT_ADJOINT: &[AdjointRow] = &[
    AdjointRow {
        tree: LEAF,
        inv_factorial: (1, 1),
        psi: (1, 1),
        signed_antipode: &[(1, 1, LEAF)],
    },
    AdjointRow {
        tree: CHAIN2,
        inv_factorial: (1, 2),
        psi: (1, 2),
        signed_antipode: &[(1, 1, LEAF), (-1, 1, CHAIN2)],
    },
    AdjointRow {
        tree: CHERRY,
        inv_factorial: (1, 3),
        psi: (1, 4),
        signed_antipode: &[(1, 1, LEAF), (-2, 1, CHAIN2), (1, 1, CHERRY)],
    },
    AdjointRow {
        tree: CHAIN3,
        inv_factorial: (1, 6),
        psi: (1, 4),
        signed_antipode: &[(1, 1, LEAF), (-2, 1, CHAIN2), (1, 1, CHAIN3)],
    },
    AdjointRow {
        tree: STAR4,
        inv_factorial: (1, 4),
        psi: (1, 8),
        signed_antipode: &[(1, 1, LEAF), (-3, 1, CHAIN2), (3, 1, CHERRY), (-1, 1, STAR4)],
    },
    AdjointRow {
        tree: FORK4,
        inv_factorial: (1, 8),
        psi: (1, 8),
        signed_antipode: &[
            (1, 1, LEAF),
            (-3, 1, CHAIN2),
            (1, 1, CHERRY),
            (1, 1, "(())(())"),
            (1, 1, CHAIN3),
            (-1, 1, FORK4),
        ],
    },
    AdjointRow {
        tree: BROOM4,
        inv_factorial: (1, 12),
        psi: (1, 8),
        signed_antipode: &[
            (1, 1, LEAF),
            (-3, 1, CHAIN2),
            (1, 1, CHERRY),
            (2, 1, CHAIN3),
            (-1, 1, BROOM4),
        ],
    },
    AdjointRow {
        tree: CHAIN4,
        inv_factorial: (1, 24),
        psi: (1, 8),
        signed_antipode: &[
            (1, 1, LEAF),
            (-3, 1, CHAIN2),
            (1, 1, "(())(())"),
            (2, 1, CHAIN3),
            (-1, 1, CHAIN4),
        ],
    },
];

/// The Gauss-2 example tree and its adjoint value.
pub const GAUSS2_TREE: &str = "(()(()()()))";
pub const GAUSS2_VALUE: (i64, i64) = (7, 144);
pub const GAUSS2_SUBTREE_VALUES: &[(&str, (i64, i64))] = &[("((()()()))", (1, 18)), ("(()(()()))", (5, 72))];
pub const GAUSS2_ANTIPODE: Terms = &[
    (1, 1, LEAF),
    (-5, 1, CHAIN2),
    (3, 1, CHAIN3),
    (4, 1, CHERRY),
    (3, 1, "(())(())"),
    (-3, 1, BROOM4),
    (-1, 1, STAR4),
    (-3, 1, FORK4),
    (-3, 1, "(())(()())"),
    (1, 1, "((()()()))"),
    (1, 1, "(())(()()())"),
    (3, 1, "(()(()()))"),
    (-1, 1, "(()(()()()))"),
];

/// Cumulative nonzero `τ̃` and `τ⁺` counts for `p = 1..=9`.
pub const TILDE_COUNTS: [usize; 9] = [0, 1, 2, 6, 14, 34, 81, 196, 481];
pub const PLUS_COUNTS: [usize; 9] = [0, 1, 1, 5, 5, 25, 25, 140, 140];

/// `(i, [w(SC,1), w(EC,1), w(SC,2), w(EC,2), w(SC,3), w(EC,3)])`. The
/// blank entries at `i = 2` are conditions that reduce to constants.
pub const REDUCED_WEIGHTS: [(usize, [usize; 6]); 4] = [
    (2, [2, 2, 0, 0, 0, 0]),
    (4, [46, 38, 34, 34, 16, 16]),
    (6, [807, 665, 641, 549, 503, 387]),
    (8, [13332, 12711, 10866, 10207, 8708, 6917]),
];

/// Printed explicit tableaux: `(x, strictly lower rows, b)` in the scalar grammar.
pub struct PrintedTableau {
    pub family: &'static str,
    pub x: &'static str,
    pub lower: &'static [&'static [&'static str]],
    pub b: &'static [&'static str],
}

pub const PRINTED_EES: &[PrintedTableau] = &[
    PrintedTableau {
        family: "2,5",
        x: "1/4",
        lower: &[&["1/2"], &["0", "1"]],
        b: &["1/4", "1/2", "1/4"],
    },
    PrintedTableau {
        family: "2,5",
        x: "1/10",
        lower: &[&["1/3"], &["-5/48", "15/16"]],
        b: &["1/10", "1/2", "2/5"],
    },
    PrintedTableau {
        family: "2,7",
        x: "(2-r2)/4",
        lower: &[&["(2-r2)/2"], &["0", "r2/2"], &["(2-r2)/2", "0", "r2/2"]],
        b: &["(2-r2)/4", "r2/4", "r2/4", "(2-r2)/4"],
    },
    PrintedTableau {
        family: "2,7",
        x: "(5-3*r2)/14",
        lower: &[
            &["(2-r2)/3"],
            &["(-4+r2)/24", "(4+r2)/8"],
            &["(-176+145*r2)/168", "3*(8-5*r2)/56", "3*(3-r2)/7"],
        ],
        b: &["(5-3*r2)/14", "(3+r2)/14", "3*(-1+2*r2)/14", "(9-4*r2)/14"],
    },
];

/// Inverse-square problem, `h = 0.1`, `t ∈ [0, 10]`: `(scheme, final error,
/// reversal error)`.
pub const INVERSE_SQUARE: &[(&str, f64, f64)] = &[
    ("midpoint", 1.0063e-1, 1.6939e-13),
    ("ees25-quarter", 4.9232e-2, 3.2143e-5),
    ("ees25", 3.0921e-2, 7.8639e-7),
    ("ees27-simple", 2.3967e-2, 2.1530e-10),
    ("ees27", 1.5041e-2, 4.9545e-10),
];

/// Galactic problem over `t ≤ 10⁶` at `h = 1/40`: `(scheme, section points,
/// Hamiltonian MAE)`.
pub const GALACTIC: &[(&str, u64, f64)] = &[
    ("heun2", 9455, 1.37e-3),
    ("heun3", 47766, 4.90e-4),
    ("rk4", 47004, 1.08e-7),
    ("ralston4", 46991, 1.18e-7),
    ("nystrom5", 47132, 1.66e-8),
    ("ees27", 47103, 8.96e-12),
];

/// Section points of the high-accuracy reference over the same horizon.
pub const GALACTIC_EXACT_POINTS: u64 = 47101;
