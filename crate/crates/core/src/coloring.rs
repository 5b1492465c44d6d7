//! Biquandle colorings of knotoid codes and the coloring matrix.
//!
//! At every crossing the biquandle acts on a "sideways" pair: one under
//! semiarc and one over semiarc on the same side of the crossing.
//!
//! ```text
//! positive: x = under_in,  y = over_out   under_out = x ▷̲ y   over_in  = y ▷̄ x
//! negative: x = under_out, y = over_in    under_in  = x ▷̲ y   over_out = y ▷̄ x
//! ```
//!
//! The pair `(x, y)` also indexes the bracket coefficients of the crossing
//! (see [`crossing_pair`]).

use std::fmt;
use std::ops::Mul;

use crate::biquandle::FiniteBiquandle;
use crate::diagram::{CrossingView, KnotoidCode, Sign};

/// Semiarc colors indexed `0..=2c`, 0-based elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn tail(&self) -> usize {
        self.colors[0]
    }

    pub fn head(&self) -> usize {
        *self
            .colors
            .last()
            .expect("a coloring has at least one semiarc")
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.colors.iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "[{}]", items.join(" "))
    }
}

/// The pair `(x, y)` acted on at a crossing, as semiarc indices.
pub fn crossing_pair(view: &CrossingView) -> (usize, usize) {
    match view.sign {
        Sign::Positive => (view.under_in, view.over_out),
        Sign::Negative => (view.under_out, view.over_in),
    }
}

/// Whether `colors` satisfies the coloring rule at one crossing.
pub fn check_crossing(bq: &FiniteBiquandle, view: &CrossingView, colors: &[usize]) -> bool {
    let (xi, yi) = crossing_pair(view);
    let (x, y) = (colors[xi], colors[yi]);
    let (u, o) = match view.sign {
        Sign::Positive => (view.under_out, view.over_in),
        Sign::Negative => (view.under_in, view.over_out),
    };
    colors[u] == bq.under(x, y) && colors[o] == bq.over(y, x)
}

pub fn is_coloring(bq: &FiniteBiquandle, code: &KnotoidCode, colors: &[usize]) -> bool {
    colors.len() == code.semiarc_count()
        && colors.iter().all(|&c| c < bq.size())
        && code
            .crossings()
            .iter()
            .all(|v| check_crossing(bq, v, colors))
}

/// Outgoing `(under_out, over_out)` colors determined by the incoming ones.
fn outputs(bq: &FiniteBiquandle, sign: Sign, under_in: usize, over_in: usize) -> (usize, usize) {
    match sign {
        Sign::Positive => {
            let y = bq.alpha_inv(under_in, over_in);
            (bq.under(under_in, y), y)
        }
        Sign::Negative => {
            let x = bq.beta_inv(over_in, under_in);
            (x, bq.over(over_in, x))
        }
    }
}

struct Walk<'a> {
    bq: &'a FiniteBiquandle,
    passages: Vec<(usize, Sign, bool)>,
    // crossing -> (expected incoming color on the co-strand, its outgoing color)
    pending: Vec<Option<(usize, usize)>>,
    colors: Vec<usize>,
}

impl Walk<'_> {
    fn run<F: FnMut(&[usize])>(&mut self, i: usize, visit: &mut F) {
        if i == self.passages.len() {
            visit(&self.colors);
            return;
        }
        let (crossing, sign, is_under) = self.passages[i];
        let here = self.colors[i];
        if let Some((expected, out)) = self.pending[crossing] {
            if here != expected {
                return;
            }
            self.pending[crossing] = None;
            self.colors[i + 1] = out;
            self.run(i + 1, visit);
            self.pending[crossing] = Some((expected, out));
            return;
        }
        for other in 0..self.bq.size() {
            let (ui, oi) = if is_under {
                (here, other)
            } else {
                (other, here)
            };
            let (uo, oo) = outputs(self.bq, sign, ui, oi);
            let (mine, theirs) = if is_under { (uo, oo) } else { (oo, uo) };
            self.pending[crossing] = Some((other, theirs));
            self.colors[i + 1] = mine;
            self.run(i + 1, visit);
        }
        self.pending[crossing] = None;
    }
}

/// Calls `visit` on every coloring, ordered by tail color then by the
/// co-strand colors chosen at first passages.
pub fn for_each_coloring<F: FnMut(&[usize])>(
    bq: &FiniteBiquandle,
    code: &KnotoidCode,
    mut visit: F,
) {
    let passages = code
        .passages()
        .iter()
        .map(|p| {
            (
                p.crossing as usize - 1,
                p.sign,
                p.role == crate::diagram::Role::Under,
            )
        })
        .collect();
    let mut walk = Walk {
        bq,
        passages,
        pending: vec![None; code.crossing_count()],
        colors: vec![0; code.semiarc_count()],
    };
    for tail in 0..bq.size() {
        walk.colors[0] = tail;
        walk.run(0, &mut visit);
    }
}

pub fn enumerate_colorings(bq: &FiniteBiquandle, code: &KnotoidCode) -> Vec<Coloring> {
    let mut out = Vec::new();
    for_each_coloring(bq, code, |c| out.push(Coloring { colors: c.to_vec() }));
    out
}

/// Counts of colorings by (tail color, head color).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoringMatrix {
    entries: Vec<Vec<u64>>,
}

impl ColoringMatrix {
    pub fn zero(n: usize) -> Self {
        ColoringMatrix {
            entries: vec![vec![0; n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn from_rows(entries: Vec<Vec<u64>>) -> Self {
        assert!(
            entries.iter().all(|r| r.len() == entries.len()),
            "matrix must be square"
        );
        ColoringMatrix { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, j: usize, k: usize) -> u64 {
        self.entries[j][k]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub(crate) fn add_to(&mut self, j: usize, k: usize, count: u64) {
        self.entries[j][k] += count;
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }

    /// Single-line form `[[a,b,c],[d,e,f],[g,h,i]]`.
    pub fn to_line(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl Mul for &ColoringMatrix {
    type Output = ColoringMatrix;

    fn mul(self, rhs: &ColoringMatrix) -> ColoringMatrix {
        assert_eq!(self.n(), rhs.n(), "matrix sizes differ");
        let n = self.n();
        let mut out = ColoringMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

/// One bracketed row per line, columns right-aligned.
impl fmt::Display for ColoringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn coloring_matrix(bq: &FiniteBiquandle, code: &KnotoidCode) -> ColoringMatrix {
    let mut m = ColoringMatrix::zero(bq.size());
    for_each_coloring(bq, code, |c| m.add_to(c[0], c[c.len() - 1], 1));
    m
}

pub fn counting_invariant(bq: &FiniteBiquandle, code: &KnotoidCode) -> u64 {
    coloring_matrix(bq, code).total()
}
