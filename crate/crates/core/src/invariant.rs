//! State-sum evaluation of a biquandle bracket and the bracket matrix Φ.
//!
//! For a coloring `f` the bracket value is
//!
//! ```text
//! β(f) = w^(n₋ - n₊) Σ_states ( Π_crossings coeff ) δ^k
//! ```
//!
//! where `k` counts the components of the smoothed diagram. Each crossing
//! contributes `A[x][y]` when smoothed in the oriented way and `B[x][y]`
//! otherwise, inverted at negative crossings, with `(x, y)` the pair from
//! [`crate::coloring::crossing_pair`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bracket::BiquandleBracket;
use crate::coloring::{self, crossing_pair, ColoringMatrix};
use crate::diagram::{CrossingView, KnotoidCode, Sign};
use crate::ring::RingElem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("not a valid coloring of the diagram")]
    InvalidColoring,
    #[error("bracket has {bracket} elements but the coloring uses {found}")]
    SizeMismatch { bracket: usize, found: usize },
}

/// Evaluation switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    /// Count the tail-to-head arc as a component, like a closed loop.
    pub open_arc_delta: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            open_arc_delta: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    Oriented,
    Disoriented,
}

/// One smoothing per crossing, indexed by `id - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmoothingState {
    pub choice: Vec<Smoothing>,
}

impl SmoothingState {
    /// State number `index` of `c`: crossing 1 is the most significant bit,
    /// and a 0 bit is oriented.
    pub fn from_index(index: u64, c: usize) -> Self {
        let choice = (0..c)
            .map(|i| {
                if index >> (c - 1 - i) & 1 == 0 {
                    Smoothing::Oriented
                } else {
                    Smoothing::Disoriented
                }
            })
            .collect();
        SmoothingState { choice }
    }

    pub fn all(c: usize) -> impl Iterator<Item = SmoothingState> {
        (0..1u64 << c).map(move |i| SmoothingState::from_index(i, c))
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        self.sets -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

fn smooth(uf: &mut UnionFind, v: &CrossingView, s: Smoothing) {
    // semiarc k runs from node 2k to node 2k + 1
    let end = |k: usize| 2 * k + 1;
    let start = |k: usize| 2 * k;
    let (ui, oi, uo, oo) = (
        end(v.under_in),
        end(v.over_in),
        start(v.under_out),
        start(v.over_out),
    );
    match s {
        Smoothing::Oriented => {
            uf.union(ui, oo);
            uf.union(oi, uo);
        }
        Smoothing::Disoriented => {
            uf.union(ui, oi);
            uf.union(uo, oo);
        }
    }
}

/// `(closed, open)` component counts after smoothing every crossing.
pub fn state_components(code: &KnotoidCode, state: &SmoothingState) -> (usize, usize) {
    let views = code.crossings();
    components_of(code.semiarc_count(), &views, &state.choice)
}

fn components_of(semiarcs: usize, views: &[CrossingView], choice: &[Smoothing]) -> (usize, usize) {
    let mut uf = UnionFind::new(2 * semiarcs);
    for k in 0..semiarcs {
        uf.union(2 * k, 2 * k + 1);
    }
    for (v, &s) in views.iter().zip(choice) {
        smooth(&mut uf, v, s);
    }
    (uf.sets - 1, 1)
}

/// Per-diagram data shared by every coloring: crossing views and the δ
/// exponent of each state.
pub struct StateSum {
    views: Vec<CrossingView>,
    semiarcs: usize,
    exponents: Vec<u8>,
    writhe_gap: i64,
}

impl StateSum {
    pub fn new(code: &KnotoidCode, config: EvalConfig) -> Self {
        let views = code.crossings();
        let c = views.len();
        let semiarcs = code.semiarc_count();
        let open = usize::from(config.open_arc_delta);
        let exponents = SmoothingState::all(c)
            .map(|s| {
                let (closed, _) = components_of(semiarcs, &views, &s.choice);
                (closed + open) as u8
            })
            .collect();
        StateSum {
            views,
            semiarcs,
            exponents,
            writhe_gap: code.negative_count() as i64 - code.positive_count() as i64,
        }
    }

    fn check(&self, bracket: &BiquandleBracket, colors: &[usize]) -> Result<(), InvariantError> {
        if let Some(&bad) = colors.iter().find(|&&c| c >= bracket.size()) {
            return Err(InvariantError::SizeMismatch {
                bracket: bracket.size(),
                found: bad + 1,
            });
        }
        let bq = bracket.biquandle();
        if colors.len() != self.semiarcs
            || !self
                .views
                .iter()
                .all(|v| coloring::check_crossing(bq, v, colors))
        {
            return Err(InvariantError::InvalidColoring);
        }
        Ok(())
    }

    /// `(oriented, disoriented)` coefficient at each crossing.
    fn coefficients(
        &self,
        bracket: &BiquandleBracket,
        colors: &[usize],
    ) -> Vec<(RingElem, RingElem)> {
        self.views
            .iter()
            .map(|v| {
                let (xi, yi) = crossing_pair(v);
                let (x, y) = (colors[xi], colors[yi]);
                match v.sign {
                    Sign::Positive => (bracket.a(x, y), bracket.b(x, y)),
                    Sign::Negative => (bracket.a_inv(x, y), bracket.b_inv(x, y)),
                }
            })
            .collect()
    }

    /// Each state's term `w^(n₋ - n₊) Π coeff δ^k`, in state order.
    pub fn contributions(
        &self,
        bracket: &BiquandleBracket,
        colors: &[usize],
    ) -> Result<Vec<RingElem>, InvariantError> {
        self.check(bracket, colors)?;
        let coeffs = self.coefficients(bracket, colors);
        let c = coeffs.len();
        let w = bracket.w().pow(self.writhe_gap).expect("w is a unit");
        let delta = bracket.delta();
        let powers: Vec<RingElem> = (0..=c + 1).map(|k| delta.pow(k as i64).unwrap()).collect();
        Ok(self
            .exponents
            .iter()
            .enumerate()
            .map(|(index, &k)| {
                let mut term = w * powers[k as usize];
                for (i, &(a, b)) in coeffs.iter().enumerate() {
                    term = term * if index >> (c - 1 - i) & 1 == 0 { a } else { b };
                }
                term
            })
            .collect())
    }

    pub fn beta_value(
        &self,
        bracket: &BiquandleBracket,
        colors: &[usize],
    ) -> Result<RingElem, InvariantError> {
        self.check(bracket, colors)?;
        let coeffs = self.coefficients(bracket, colors);
        let m = bracket.modulus();
        let delta = bracket.delta();
        let powers: Vec<RingElem> = (0..=coeffs.len() + 1)
            .map(|k| delta.pow(k as i64).unwrap())
            .collect();
        // depth-first over the state tree so each prefix product is shared
        let mut sum = m.zero();
        let mut stack = vec![(0usize, 0usize, m.one())];
        while let Some((depth, index, prod)) = stack.pop() {
            if depth == coeffs.len() {
                sum = sum + prod * powers[self.exponents[index] as usize];
                continue;
            }
            let (a, b) = coeffs[depth];
            stack.push((depth + 1, index << 1 | 1, prod * b));
            stack.push((depth + 1, index << 1, prod * a));
        }
        Ok(sum * bracket.w().pow(self.writhe_gap).expect("w is a unit"))
    }
}

pub fn beta_value(
    bracket: &BiquandleBracket,
    code: &KnotoidCode,
    colors: &[usize],
    config: EvalConfig,
) -> Result<RingElem, InvariantError> {
    StateSum::new(code, config).beta_value(bracket, colors)
}

/// A finite formal sum `Σ m_r u^r` with exponents in Z_m.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum {
    terms: BTreeMap<u32, u64>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut s = Self::new();
        for (e, m) in terms {
            s.add(e, m);
        }
        s
    }

    pub fn add(&mut self, exponent: u32, multiplicity: u64) {
        if multiplicity > 0 {
            *self.terms.entry(exponent).or_insert(0) += multiplicity;
        }
    }

    pub fn merge(&mut self, other: &FormalSum) {
        for (&e, &m) in &other.terms {
            self.add(e, m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `u = 1`.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `(exponent, multiplicity)` pairs, exponents ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().map(|(&e, &m)| (e, m))
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, m)| {
                let coeff = if m == 1 { String::new() } else { m.to_string() };
                match e {
                    0 => m.to_string(),
                    1 => format!("{coeff}u"),
                    _ => format!("{coeff}u^{e}"),
                }
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

/// The n×n matrix Φ of formal sums indexed by (tail color, head color).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketMatrix {
    entries: Vec<Vec<FormalSum>>,
}

impl BracketMatrix {
    pub fn zero(n: usize) -> Self {
        BracketMatrix {
            entries: vec![vec![FormalSum::new(); n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, j: usize, k: usize) -> &FormalSum {
        &self.entries[j][k]
    }

    pub fn rows(&self) -> &[Vec<FormalSum>] {
        &self.entries
    }

    pub fn add(&mut self, j: usize, k: usize, exponent: u32) {
        self.entries[j][k].add(exponent, 1);
    }

    /// Single-line JSON: entry `[j][k]` is a list of `[exponent, multiplicity]`.
    pub fn to_json_line(&self) -> String {
        let nested: Vec<Vec<Vec<[u64; 2]>>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.terms().map(|(e, m)| [u64::from(e), m]).collect())
                    .collect()
            })
            .collect();
        serde_json::to_string(&nested).expect("plain integer arrays serialize")
    }
}

/// Bracketed rows, columns padded to a common width.
impl fmt::Display for BracketMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(FormalSum::to_string).collect())
            .collect();
        let n = self.n();
        let widths: Vec<usize> = (0..n)
            .map(|k| cells.iter().map(|r| r[k].len()).max().unwrap_or(1))
            .collect();
        for row in &cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            writeln!(f, "[{}]", padded.join("  ").trim_end())?;
        }
        Ok(())
    }
}

pub fn bracket_matrix_with(
    bracket: &BiquandleBracket,
    code: &KnotoidCode,
    config: EvalConfig,
) -> BracketMatrix {
    let sum = StateSum::new(code, config);
    let mut phi = BracketMatrix::zero(bracket.size());
    coloring::for_each_coloring(bracket.biquandle(), code, |c| {
        let beta = sum
            .beta_value(bracket, c)
            .expect("enumerated colorings are valid");
        phi.add(c[0], c[c.len() - 1], beta.value());
    });
    phi
}

pub fn bracket_matrix(bracket: &BiquandleBracket, code: &KnotoidCode) -> BracketMatrix {
    bracket_matrix_with(bracket, code, EvalConfig::default())
}

/// Sets `u = 1` in every entry.
pub fn specialize_counting(phi: &BracketMatrix) -> ColoringMatrix {
    ColoringMatrix::from_rows(
        phi.entries
            .iter()
            .map(|r| r.iter().map(FormalSum::total).collect())
            .collect(),
    )
}

/// Sum of all entries.
pub fn bracket_polynomial(phi: &BracketMatrix) -> FormalSum {
    let mut out = FormalSum::new();
    for s in phi.entries.iter().flatten() {
        out.merge(s);
    }
    out
}
