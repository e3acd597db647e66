//! Wreath-product description of centralizers in symmetric groups.
//!
//! For `g` of cycle type `c_1^{m_1} … c_r^{m_r}`, `C_{S_n}(g) ≅ ∏ C_{c_i} ≀ S_{m_i}`.
//! The points moved by the `m` cycles of length `c` are relabeled as pairs
//! `(x, y) ∈ {0..m} × Z/c` with `g(x, y) = (x, y + 1)`; cycle `x` is the one
//! with the `x`-th smallest least point, and `y = 0` is that least point.

use serde::Serialize;

use super::permutation::Permutation;

/// One wreath factor `C_c ≀ S_m`.
#[derive(Clone, Debug, Serialize)]
pub struct WreathFactor {
    pub cycle_length: usize,
    pub multiplicity: usize,
    /// `relabel[x][y]` is the point labeled `(x, y)`.
    pub relabel: Vec<Vec<usize>>,
    /// `a_x`: rotates cycle `x`, fixes everything else. Empty for `c = 1`.
    pub rotations: Vec<Permutation>,
    /// Lifts of the adjacent transpositions `(x x+1)` of `S_m`: `(x, y) ↔ (x+1, y)`.
    pub block_permutations: Vec<Permutation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerStructure {
    pub degree: usize,
    pub factors: Vec<WreathFactor>,
}

impl CentralizerStructure {
    pub fn generators(&self) -> Vec<Permutation> {
        self.factors
            .iter()
            .flat_map(|f| f.rotations.iter().chain(&f.block_permutations).cloned())
            .collect()
    }

    /// ∏ c^m · m!
    pub fn order(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, f| {
            acc * (f.cycle_length as u128).pow(f.multiplicity as u32)
                * super::permutation::factorial(f.multiplicity as u64)
        })
    }
}

pub fn centralizer_structure(g: &Permutation) -> CentralizerStructure {
    let n = g.degree();
    let cycles = g.cycles();
    let mut lengths: Vec<usize> = cycles.iter().map(Vec::len).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths.dedup();

    let factors = lengths
        .into_iter()
        .map(|c| {
            let relabel: Vec<Vec<usize>> = cycles.iter().filter(|cy| cy.len() == c).cloned().collect();
            let m = relabel.len();
            let rotations = if c > 1 {
                relabel
                    .iter()
                    .map(|cy| Permutation::from_cycles(n, std::slice::from_ref(cy)).unwrap())
                    .collect()
            } else {
                Vec::new()
            };
            let block_permutations = (0..m.saturating_sub(1))
                .map(|x| {
                    let swaps: Vec<Vec<usize>> =
                        (0..c).map(|y| vec![relabel[x][y], relabel[x + 1][y]]).collect();
                    Permutation::from_cycles(n, &swaps).unwrap()
                })
                .collect();
            WreathFactor {
                cycle_length: c,
                multiplicity: m,
                relabel,
                rotations,
                block_permutations,
            }
        })
        .collect();
    CentralizerStructure { degree: n, factors }
}
