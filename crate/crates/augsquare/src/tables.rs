//! Published reference values for contraction efficiency, used only for
//! delta reporting — the CLI always recomputes its own values.

/// One row of the cyclic-versus-computer-generated comparison: the best
/// cyclic `E_con` and the value attained by a commercial search package.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclicComparisonRow {
    pub v: usize,
    pub k: usize,
    pub cyclic_e: f64,
    pub search_e: f64,
}

/// Reference `E_con` values for `k = 3` and `k = 4` contractions.
pub const CYCLIC_COMPARISON: &[CyclicComparisonRow] = &[
    CyclicComparisonRow { v: 10, k: 3, cyclic_e: 0.6998, search_e: 0.705895 },
    CyclicComparisonRow { v: 11, k: 3, cyclic_e: 0.6762, search_e: 0.690163 },
    CyclicComparisonRow { v: 12, k: 3, cyclic_e: 0.6726, search_e: 0.680062 },
    CyclicComparisonRow { v: 13, k: 3, cyclic_e: 0.6667, search_e: 0.669481 },
    CyclicComparisonRow { v: 14, k: 3, cyclic_e: 0.6527, search_e: 0.663024 },
    CyclicComparisonRow { v: 15, k: 3, cyclic_e: 0.6409, search_e: 0.660377 },
    CyclicComparisonRow { v: 16, k: 3, cyclic_e: 0.6321, search_e: 0.647969 },
    CyclicComparisonRow { v: 17, k: 3, cyclic_e: 0.6222, search_e: 0.643898 },
    CyclicComparisonRow { v: 18, k: 3, cyclic_e: 0.6116, search_e: 0.637262 },
    CyclicComparisonRow { v: 19, k: 3, cyclic_e: 0.6111, search_e: 0.631561 },
    CyclicComparisonRow { v: 20, k: 3, cyclic_e: 0.6011, search_e: 0.627431 },
    CyclicComparisonRow { v: 14, k: 4, cyclic_e: 0.8029, search_e: 0.802941 },
    CyclicComparisonRow { v: 15, k: 4, cyclic_e: 0.7955, search_e: 0.795455 },
    CyclicComparisonRow { v: 16, k: 4, cyclic_e: 0.7872, search_e: 0.789474 },
    CyclicComparisonRow { v: 17, k: 4, cyclic_e: 0.7803, search_e: 0.782335 },
    CyclicComparisonRow { v: 18, k: 4, cyclic_e: 0.7762, search_e: 0.777101 },
    CyclicComparisonRow { v: 19, k: 4, cyclic_e: 0.7725, search_e: 0.7725 },
    CyclicComparisonRow { v: 20, k: 4, cyclic_e: 0.7686, search_e: 0.768571 },
    CyclicComparisonRow { v: 21, k: 4, cyclic_e: 0.7624, search_e: 0.765069 },
    CyclicComparisonRow { v: 22, k: 4, cyclic_e: 0.7599, search_e: 0.761053 },
    CyclicComparisonRow { v: 23, k: 4, cyclic_e: 0.7552, search_e: 0.758038 },
    CyclicComparisonRow { v: 24, k: 4, cyclic_e: 0.7533, search_e: 0.754688 },
    CyclicComparisonRow { v: 25, k: 4, cyclic_e: 0.7490, search_e: 0.751914 },
    CyclicComparisonRow { v: 26, k: 4, cyclic_e: 0.7454, search_e: 0.749165 },
];

/// One row of the non-cyclic comparison: a published block-design A-value
/// and the `E_con` it converts to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AValueRow {
    pub v: usize,
    pub k: usize,
    pub a_abd: f64,
    pub e_con: f64,
}

/// Published `A_abd` values for non-cyclic contractions with their
/// `E_con = 2 / (k A_abd)` conversions at four decimals.
pub const A_VALUE_CONVERSIONS: &[AValueRow] = &[
    AValueRow { v: 9, k: 3, a_abd: 0.9167, e_con: 0.7273 },
    AValueRow { v: 10, k: 3, a_abd: 0.9500, e_con: 0.7018 },
    AValueRow { v: 12, k: 3, a_abd: 0.9803, e_con: 0.6801 },
    AValueRow { v: 16, k: 4, a_abd: 0.6333, e_con: 0.7895 },
    AValueRow { v: 25, k: 5, a_abd: 0.4833, e_con: 0.8276 },
];
