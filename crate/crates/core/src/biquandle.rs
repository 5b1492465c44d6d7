//! Finite biquandles given by operation tables.
//!
//! Elements are 0-based `usize` indices internally. Every text format and
//! every rendered witness is 1-based, so tables can be compared directly
//! with hand-written ones.

use std::fmt;

use thiserror::Error;

use crate::ring::{Modulus, RingError};
use crate::text::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiquandleError {
    #[error("biquandle must have at least one element")]
    Empty,
    #[error("{table} table has {found} rows, expected {expected}")]
    RowCount {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table row {row} has {found} entries, expected {expected}")]
    RowLength {
        table: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table} table entry ({row},{col}) = {value} is outside 1..={n}")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("tables fail the biquandle axioms:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Raw operation tables, 0-based: `under[x][y]` is `x ▷̲ y`, `over[x][y]` is `x ▷̄ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tables {
    pub under: Vec<Vec<usize>>,
    pub over: Vec<Vec<usize>>,
}

impl Tables {
    pub fn n(&self) -> usize {
        self.under.len()
    }

    /// Builds tables from 1-based entries as printed in the literature.
    pub fn from_one_based(under: &[Vec<usize>], over: &[Vec<usize>]) -> Self {
        let shift = |t: &[Vec<usize>]| {
            t.iter()
                .map(|row| row.iter().map(|v| v.wrapping_sub(1)).collect())
                .collect()
        };
        Tables {
            under: shift(under),
            over: shift(over),
        }
    }

    fn check_shape(&self) -> Result<(), BiquandleError> {
        let n = self.n();
        if n == 0 {
            return Err(BiquandleError::Empty);
        }
        for (name, table) in [("under", &self.under), ("over", &self.over)] {
            if table.len() != n {
                return Err(BiquandleError::RowCount {
                    table: name,
                    expected: n,
                    found: table.len(),
                });
            }
            for (r, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(BiquandleError::RowLength {
                        table: name,
                        row: r + 1,
                        expected: n,
                        found: row.len(),
                    });
                }
                for (c, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(BiquandleError::OutOfRange {
                            table: name,
                            row: r + 1,
                            col: c + 1,
                            value: v.wrapping_add(1),
                            n,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `x ▷̲ x = x ▷̄ x`.
    Diagonal,
    /// `α_y(x) = x ▷̄ y` is a bijection for every `y`.
    AlphaBijective,
    /// `β_y(x) = x ▷̲ y` is a bijection for every `y`.
    BetaBijective,
    /// `S(x, y) = (y ▷̄ x, x ▷̲ y)` is a bijection.
    SBijective,
    Exchange1,
    Exchange2,
    Exchange3,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Diagonal,
        Axiom::AlphaBijective,
        Axiom::BetaBijective,
        Axiom::SBijective,
        Axiom::Exchange1,
        Axiom::Exchange2,
        Axiom::Exchange3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Diagonal => "diagonal",
            Axiom::AlphaBijective => "alpha-bijective",
            Axiom::BetaBijective => "beta-bijective",
            Axiom::SBijective => "S-bijective",
            Axiom::Exchange1 => "exchange-1",
            Axiom::Exchange2 => "exchange-2",
            Axiom::Exchange3 => "exchange-3",
        }
    }
}

/// A counterexample to one axiom; all indices 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `x ▷̲ x != x ▷̄ x`.
    Element {
        x: usize,
    },
    /// Two distinct inputs with the same image under the map indexed by `y`.
    Collision {
        y: usize,
        x1: usize,
        x2: usize,
    },
    /// Two distinct pairs with the same image under `S`.
    PairCollision {
        p: (usize, usize),
        q: (usize, usize),
    },
    Triple {
        x: usize,
        y: usize,
        z: usize,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::Element { x } => write!(f, "x={}", x + 1),
            Witness::Collision { y, x1, x2 } => {
                write!(
                    f,
                    "y={} maps x={} and x={} to the same element",
                    y + 1,
                    x1 + 1,
                    x2 + 1
                )
            }
            Witness::PairCollision { p, q } => {
                write!(f, "S({},{}) = S({},{})", p.0 + 1, p.1 + 1, q.0 + 1, q.1 + 1)
            }
            Witness::Triple { x, y, z } => write!(f, "(x,y,z)=({},{},{})", x + 1, y + 1, z + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witnesses: Vec<Witness>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn first_failure(&self) -> Option<(Axiom, &Witness)> {
        self.checks
            .iter()
            .find_map(|c| c.witnesses.first().map(|w| (c.axiom, w)))
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            if check.passed() {
                writeln!(f, "{}: pass", check.axiom.name())?;
            } else {
                write!(f, "{}: FAIL", check.axiom.name())?;
                for w in &check.witnesses {
                    write!(f, " [{w}]")?;
                }
                writeln!(f)?;
            }
        }
        write!(
            f,
            "result: {}",
            if self.passed() { "valid" } else { "invalid" }
        )
    }
}

/// How many witnesses to collect per failed axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verbosity {
    #[default]
    FirstWitness,
    AllWitnesses,
}

/// Checks every biquandle axiom over all elements, pairs and triples.
pub fn validate(tables: &Tables) -> Result<ValidationReport, BiquandleError> {
    validate_with(tables, Verbosity::FirstWitness)
}

pub fn validate_with(
    tables: &Tables,
    verbosity: Verbosity,
) -> Result<ValidationReport, BiquandleError> {
    tables.check_shape()?;
    let n = tables.n();
    let u = &tables.under;
    let o = &tables.over;
    let limit = match verbosity {
        Verbosity::FirstWitness => 1,
        Verbosity::AllWitnesses => usize::MAX,
    };
    let push = |ws: &mut Vec<Witness>, w: Witness| {
        if ws.len() < limit {
            ws.push(w);
        }
    };

    let mut diagonal = Vec::new();
    for x in 0..n {
        if u[x][x] != o[x][x] {
            push(&mut diagonal, Witness::Element { x });
        }
    }

    let column_collisions = |table: &Vec<Vec<usize>>| {
        let mut ws = Vec::new();
        for y in 0..n {
            let mut seen: Vec<Option<usize>> = vec![None; n];
            for (x, row) in table.iter().enumerate() {
                let img = row[y];
                match seen[img] {
                    Some(x1) => push(&mut ws, Witness::Collision { y, x1, x2: x }),
                    None => seen[img] = Some(x),
                }
            }
        }
        ws
    };
    let alpha = column_collisions(o);
    let beta = column_collisions(u);

    let mut s_bij = Vec::new();
    let mut seen: Vec<Option<(usize, usize)>> = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (o[y][x], u[x][y]);
            match seen[a * n + b] {
                Some(p) => push(&mut s_bij, Witness::PairCollision { p, q: (x, y) }),
                None => seen[a * n + b] = Some((x, y)),
            }
        }
    }

    let mut ex = [Vec::new(), Vec::new(), Vec::new()];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = Witness::Triple { x, y, z };
                if u[u[x][y]][u[z][y]] != u[u[x][z]][o[y][z]] {
                    push(&mut ex[0], t.clone());
                }
                if u[o[x][y]][o[z][y]] != o[u[x][z]][u[y][z]] {
                    push(&mut ex[1], t.clone());
                }
                if o[o[x][y]][o[z][y]] != o[o[x][z]][u[y][z]] {
                    push(&mut ex[2], t);
                }
            }
        }
    }
    let [e1, e2, e3] = ex;

    let checks = [diagonal, alpha, beta, s_bij, e1, e2, e3]
        .into_iter()
        .zip(Axiom::ALL)
        .map(|(witnesses, axiom)| AxiomCheck { axiom, witnesses })
        .collect();
    Ok(ValidationReport { checks })
}

/// A validated finite biquandle with cached inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBiquandle {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
    // alpha_inv[y*n + v] = x with x ▷̄ y = v
    alpha_inv: Vec<usize>,
    // beta_inv[y*n + v] = x with x ▷̲ y = v
    beta_inv: Vec<usize>,
    s_inv: Vec<(usize, usize)>,
}

impl FiniteBiquandle {
    /// Validates the tables and builds the structure.
    pub fn new(tables: &Tables) -> Result<Self, BiquandleError> {
        let report = validate(tables)?;
        if !report.passed() {
            return Err(BiquandleError::Invalid(report));
        }
        let n = tables.n();
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().copied().collect::<Vec<_>>();
        let under = flat(&tables.under);
        let over = flat(&tables.over);
        let mut alpha_inv = vec![0; n * n];
        let mut beta_inv = vec![0; n * n];
        let mut s_inv = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                alpha_inv[y * n + over[x * n + y]] = x;
                beta_inv[y * n + under[x * n + y]] = x;
                let (a, b) = (over[y * n + x], under[x * n + y]);
                s_inv[a * n + b] = (x, y);
            }
        }
        Ok(FiniteBiquandle {
            n,
            under,
            over,
            alpha_inv,
            beta_inv,
            s_inv,
        })
    }

    /// The trivial biquandle `x ▷̲ y = x ▷̄ y = x` on `n` elements.
    pub fn trivial(n: usize) -> Result<Self, BiquandleError> {
        let table: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
        Self::new(&Tables {
            under: table.clone(),
            over: table,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x ▷̲ y`
    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y]
    }

    /// `x ▷̄ y`
    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over[x * self.n + y]
    }

    /// The unique `x` with `x ▷̄ y = v`.
    #[inline]
    pub fn alpha_inv(&self, y: usize, v: usize) -> usize {
        self.alpha_inv[y * self.n + v]
    }

    /// The unique `x` with `x ▷̲ y = v`.
    #[inline]
    pub fn beta_inv(&self, y: usize, v: usize) -> usize {
        self.beta_inv[y * self.n + v]
    }

    pub fn s_map(&self, x: usize, y: usize) -> (usize, usize) {
        (self.over(y, x), self.under(x, y))
    }

    pub fn s_inv(&self, a: usize, b: usize) -> (usize, usize) {
        self.s_inv[a * self.n + b]
    }

    pub fn tables(&self) -> Tables {
        let n = self.n;
        let nest = |flat: &[usize]| flat.chunks(n).map(<[usize]>::to_vec).collect();
        Tables {
            under: nest(&self.under),
            over: nest(&self.over),
        }
    }

    pub fn to_text(&self) -> String {
        emit(&self.tables())
    }
}

/// The Alexander biquandle on Z_m: `x ▷̲ y = t x + (s - t) y`, `x ▷̄ y = s x`.
///
/// Residue `r` is element `r` (1-based) except that residue 0 is element `m`,
/// so the element labels run `1..=m`.
pub fn alexander(m: u64, t: i64, s: i64) -> Result<FiniteBiquandle, BiquandleError> {
    let modulus = Modulus::new(m)?;
    let t = modulus.elem(t);
    let s = modulus.elem(s);
    for unit in [t, s] {
        if !unit.is_unit() {
            return Err(RingError::NotAUnit {
                value: unit.value(),
                modulus: modulus.get(),
            }
            .into());
        }
    }
    let n = m as usize;
    // element index i (0-based) holds residue (i + 1) mod m
    let to_index = |r: u32| (r as usize + n - 1) % n;
    let residue = |i: usize| modulus.elem(i as i64 + 1);
    let mut under = vec![vec![0; n]; n];
    let mut over = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (rx, ry) = (residue(x), residue(y));
            under[x][y] = to_index((t * rx + (s - t) * ry).value());
            over[x][y] = to_index((s * rx).value());
        }
    }
    FiniteBiquandle::new(&Tables { under, over })
}

/// Renders tables in the `biquandle n=<n>` text format.
pub fn emit(tables: &Tables) -> String {
    let mut out = format!("biquandle n={}\n", tables.n());
    let row = |r: &Vec<usize>| {
        r.iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for r in &tables.under {
        out.push_str(&row(r));
        out.push('\n');
    }
    out.push_str("over\n");
    for r in &tables.over {
        out.push_str(&row(r));
        out.push('\n');
    }
    out
}

/// Parses the biquandle text format into raw tables (axioms are not checked).
pub fn parse_tables(input: &str) -> Result<Tables, ParseError> {
    let lines = text::lines(input);
    let mut it = lines.iter();
    let header = it
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty input, expected `biquandle n=<n>`"))?;
    if header.tokens[0].text != "biquandle" {
        return Err(header.tokens[0].error("expected `biquandle`"));
    }
    let n_token = header.tokens.get(1).ok_or_else(|| {
        ParseError::new(header.number, header.tokens[0].column, "missing `n=<n>`")
    })?;
    let n = text::keyed_uint(n_token, "n")? as usize;
    if n == 0 {
        return Err(n_token.error("biquandle must have at least one element"));
    }
    if let Some(extra) = header.tokens.get(2) {
        return Err(extra.error("unexpected token after header"));
    }
    let read_table = |it: &mut std::slice::Iter<'_, text::Line<'_>>,
                      label: &str|
     -> Result<Vec<Vec<usize>>, ParseError> {
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let line = it.next().ok_or_else(|| {
                ParseError::new(
                    lines.last().map_or(1, |l| l.number) + 1,
                    1,
                    format!("{label} table: expected {n} rows, found {r}"),
                )
            })?;
            if line.tokens.len() != n {
                let col = line
                    .tokens
                    .get(n)
                    .map_or_else(|| line.tokens.last().map_or(1, |t| t.column), |t| t.column);
                return Err(ParseError::new(
                    line.number,
                    col,
                    format!(
                        "{label} table row {}: expected {n} entries, found {}",
                        r + 1,
                        line.tokens.len()
                    ),
                ));
            }
            let mut row = Vec::with_capacity(n);
            for tok in &line.tokens {
                let v = text::uint(tok)? as usize;
                if v == 0 || v > n {
                    return Err(tok.error(format!("entry {v} outside 1..={n}")));
                }
                row.push(v - 1);
            }
            rows.push(row);
        }
        Ok(rows)
    };
    let under = read_table(&mut it, "under")?;
    let sep = it.next().ok_or_else(|| {
        ParseError::new(
            lines.last().map_or(1, |l| l.number) + 1,
            1,
            "missing `over` line",
        )
    })?;
    if sep.tokens.len() != 1 || sep.tokens[0].text != "over" {
        return Err(sep.tokens[0].error("expected `over`"));
    }
    let over = read_table(&mut it, "over")?;
    if let Some(extra) = it.next() {
        return Err(extra.tokens[0].error("unexpected content after over table"));
    }
    Ok(Tables { under, over })
}

/// Parses and validates a biquandle file.
pub fn parse(input: &str) -> Result<FiniteBiquandle, BiquandleError> {
    FiniteBiquandle::new(&parse_tables(input)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_element() -> Tables {
        Tables::from_one_based(
            &[vec![2, 1, 3], vec![1, 3, 2], vec![3, 2, 1]],
            &[vec![2, 2, 2], vec![3, 3, 3], vec![1, 1, 1]],
        )
    }

    #[test]
    fn three_element_example_is_valid() {
        let report = validate(&three_element()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn corrupted_diagonal_is_reported() {
        let mut t = three_element();
        t.under[0][0] = 0;
        let report = validate(&t).unwrap();
        assert!(!report.passed());
        let diag = report.check(Axiom::Diagonal).unwrap();
        assert_eq!(diag.witnesses, vec![Witness::Element { x: 0 }]);
    }

    #[test]
    fn trivial_tables_are_valid() {
        for n in 1..6 {
            let b = FiniteBiquandle::trivial(n).unwrap();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(b.s_map(x, y), (y, x));
                    assert_eq!(b.s_inv(x, y), (y, x));
                }
            }
        }
    }

    #[test]
    fn alexander_matches_printed_tables() {
        let b = alexander(5, 3, 2).unwrap();
        let expected = Tables::from_one_based(
            &[
                vec![2, 1, 5, 4, 3],
                vec![5, 4, 3, 2, 1],
                vec![3, 2, 1, 5, 4],
                vec![1, 5, 4, 3, 2],
                vec![4, 3, 2, 1, 5],
            ],
            &[vec![2; 5], vec![4; 5], vec![1; 5], vec![3; 5], vec![5; 5]],
        );
        assert_eq!(b.tables(), expected);
    }

    #[test]
    fn alexander_small_cases() {
        let b = alexander(2, 1, 1).unwrap();
        assert_eq!(b.tables(), FiniteBiquandle::trivial(2).unwrap().tables());
        assert!(alexander(3, 2, 1).is_ok());
        assert!(matches!(alexander(6, 2, 1), Err(BiquandleError::Ring(_))));
        assert!(matches!(alexander(6, 1, 3), Err(BiquandleError::Ring(_))));
    }

    #[test]
    fn alexander_exhaustive_small_moduli() {
        for m in 2..=8u64 {
            let units = Modulus::new(m).unwrap().units();
            for t in &units {
                for s in &units {
                    let b = alexander(m, t.value() as i64, s.value() as i64);
                    assert!(b.is_ok(), "m={m} t={t} s={s}");
                }
            }
        }
    }

    #[test]
    fn s_map_and_inverse() {
        let b = FiniteBiquandle::new(&three_element()).unwrap();
        assert_eq!(b.s_map(0, 0), (1, 1));
        for x in 0..3 {
            for y in 0..3 {
                let (a, c) = b.s_map(x, y);
                assert_eq!(b.s_inv(a, c), (x, y));
                assert_eq!(b.over(b.alpha_inv(y, a), y), a);
                assert_eq!(b.under(b.beta_inv(y, a), y), a);
            }
        }
    }

    #[test]
    fn shape_errors() {
        let mut t = three_element();
        t.under[1].pop();
        assert!(matches!(
            validate(&t),
            Err(BiquandleError::RowLength { row: 2, .. })
        ));
        let mut t = three_element();
        t.over[2][1] = 3;
        assert!(matches!(
            validate(&t),
            Err(BiquandleError::OutOfRange {
                table: "over",
                row: 3,
                col: 2,
                value: 4,
                ..
            })
        ));
        let t = Tables {
            under: vec![],
            over: vec![],
        };
        assert_eq!(validate(&t), Err(BiquandleError::Empty));
    }

    #[test]
    fn all_witnesses_mode() {
        // Constant tables break bijectivity in every column.
        let t = Tables {
            under: vec![vec![0, 0], vec![0, 0]],
            over: vec![vec![0, 0], vec![0, 0]],
        };
        let first = validate(&t).unwrap();
        let all = validate_with(&t, Verbosity::AllWitnesses).unwrap();
        assert_eq!(
            first.check(Axiom::AlphaBijective).unwrap().witnesses.len(),
            1
        );
        assert_eq!(all.check(Axiom::AlphaBijective).unwrap().witnesses.len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let t = three_element();
        let text = emit(&t);
        assert_eq!(parse_tables(&text).unwrap(), t);
        let with_comments = format!(
            "# the example\n{}\n# end\n",
            text.replace("over", "over # sep")
        );
        assert_eq!(parse_tables(&with_comments).unwrap(), t);
    }

    #[test]
    fn parse_diagnostics() {
        let err = parse_tables("biquandle n=2\n1 2\n1 3\nover\n1 1\n2 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        let err = parse_tables("biquandle n=2\n1 2\n1\nover\n1 1\n2 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_tables("biquandle n=2\n1 2\n2 1\n1 1\n2 2\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("over"));
        let err = parse_tables("quandle n=2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = parse_tables("biquandle n=x").unwrap_err();
        assert_eq!((err.line, err.column), (1, 11));
        assert!(parse_tables("").is_err());
    }
}
