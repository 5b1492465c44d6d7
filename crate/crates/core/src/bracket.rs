//! Biquandle brackets over Z_m.
//!
//! A bracket assigns units `A[x][y]`, `B[x][y]` to ordered pairs of biquandle
//! elements. Two derived constants must be well defined,
//!
//! ```text
//! w = -A[x][x]^2 B[x][x]^-1                  (same for every x)
//! δ = -A[x][y] B[x][y]^-1 - A[x][y]^-1 B[x][y]  (same for every x, y)
//! ```
//!
//! and five cubic relations must hold for every triple (see [`equation_sides`]).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::biquandle::FiniteBiquandle;
use crate::ring::{Modulus, RingElem, RingError};
use crate::text::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("coefficient matrices are {found}x{found}, biquandle has {expected} elements")]
    Dimension { expected: usize, found: usize },
    #[error("{matrix}[{x},{y}] = {value} is not a unit modulo {modulus}")]
    NotAUnit {
        matrix: char,
        x: usize,
        y: usize,
        value: u32,
        modulus: u32,
    },
    #[error("w is not well defined: x={} gives {}, x={} gives {}", .first.0 + 1, .first.1, .second.0 + 1, .second.1)]
    InconsistentW {
        first: (usize, RingElem),
        second: (usize, RingElem),
    },
    #[error(
        "delta is not well defined: ({},{}) gives {}, ({},{}) gives {}",
        .first.0 + 1, .first.1 + 1, .first.2, .second.0 + 1, .second.1 + 1, .second.2
    )]
    InconsistentDelta {
        first: (usize, usize, RingElem),
        second: (usize, usize, RingElem),
    },
    #[error("bracket fails its axioms:\n{0}")]
    Invalid(BracketReport),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Raw coefficient matrices, 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients {
    pub modulus: Modulus,
    pub a: Vec<Vec<RingElem>>,
    pub b: Vec<Vec<RingElem>>,
}

impl Coefficients {
    pub fn from_ints(modulus: Modulus, a: &[Vec<i64>], b: &[Vec<i64>]) -> Self {
        let lift = |t: &[Vec<i64>]| {
            t.iter()
                .map(|row| row.iter().map(|&v| modulus.elem(v)).collect())
                .collect()
        };
        Coefficients {
            modulus,
            a: lift(a),
            b: lift(b),
        }
    }

    /// Builds coefficients from block rows: row `x` is `A[x][..]` followed by `B[x][..]`.
    pub fn from_block_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let a: Vec<Vec<i64>> = rows.iter().map(|r| r[..n].to_vec()).collect();
        let b: Vec<Vec<i64>> = rows.iter().map(|r| r[n..].to_vec()).collect();
        Self::from_ints(modulus, &a, &b)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    fn check_units(&self, expected: usize) -> Result<(), BracketError> {
        let sizes_ok = self.a.len() == expected
            && self.b.len() == expected
            && self.a.iter().chain(&self.b).all(|r| r.len() == expected);
        if !sizes_ok {
            return Err(BracketError::Dimension {
                expected,
                found: self.a.len(),
            });
        }
        for (name, m) in [('A', &self.a), ('B', &self.b)] {
            for (x, row) in m.iter().enumerate() {
                for (y, &v) in row.iter().enumerate() {
                    if v.modulus() != self.modulus {
                        return Err(RingError::ModulusMismatch(
                            self.modulus.get(),
                            v.modulus().get(),
                        )
                        .into());
                    }
                    if !v.is_unit() {
                        return Err(BracketError::NotAUnit {
                            matrix: name,
                            x,
                            y,
                            value: v.value(),
                            modulus: self.modulus.get(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn w_term(a: RingElem, b: RingElem) -> RingElem {
    -(a * a * b.inv().expect("unit"))
}

fn delta_term(a: RingElem, b: RingElem) -> RingElem {
    -(a * b.inv().expect("unit")) - a.inv().expect("unit") * b
}

/// The common value of `-A[x][x]^2 B[x][x]^-1`.
pub fn compute_w(coeffs: &Coefficients) -> Result<RingElem, BracketError> {
    coeffs.check_units(coeffs.n())?;
    let mut first: Option<(usize, RingElem)> = None;
    for x in 0..coeffs.n() {
        let value = w_term(coeffs.a[x][x], coeffs.b[x][x]);
        match first {
            None => first = Some((x, value)),
            Some(f) if f.1 != value => {
                return Err(BracketError::InconsistentW {
                    first: f,
                    second: (x, value),
                })
            }
            Some(_) => {}
        }
    }
    first.map(|f| f.1).ok_or(BracketError::Dimension {
        expected: 1,
        found: 0,
    })
}

/// The common value of `-A[x][y] B[x][y]^-1 - A[x][y]^-1 B[x][y]`.
pub fn compute_delta(coeffs: &Coefficients) -> Result<RingElem, BracketError> {
    coeffs.check_units(coeffs.n())?;
    let mut first: Option<(usize, usize, RingElem)> = None;
    for x in 0..coeffs.n() {
        for y in 0..coeffs.n() {
            let value = delta_term(coeffs.a[x][y], coeffs.b[x][y]);
            match first {
                None => first = Some((x, y, value)),
                Some(f) if f.2 != value => {
                    return Err(BracketError::InconsistentDelta {
                        first: f,
                        second: (x, y, value),
                    })
                }
                Some(_) => {}
            }
        }
    }
    first.map(|f| f.2).ok_or(BracketError::Dimension {
        expected: 1,
        found: 0,
    })
}

/// Index pairs appearing in the five relations for the triple `(x, y, z)`.
///
/// Left-hand pairs are `(x,y)`, `(y,z)`, `(x ▷̲ y, z ▷̄ y)`; right-hand pairs are
/// `(x,z)`, `(y ▷̄ x, z ▷̄ x)`, `(x ▷̲ z, y ▷̲ z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriplePairs {
    pub left: [(usize, usize); 3],
    pub right: [(usize, usize); 3],
}

pub fn triple_pairs(bq: &FiniteBiquandle, x: usize, y: usize, z: usize) -> TriplePairs {
    TriplePairs {
        left: [(x, y), (y, z), (bq.under(x, y), bq.over(z, y))],
        right: [
            (x, z),
            (bq.over(y, x), bq.over(z, x)),
            (bq.under(x, z), bq.under(y, z)),
        ],
    }
}

/// Both sides of the five relations for one triple.
pub fn equation_sides<FA, FB>(
    pairs: &TriplePairs,
    a: FA,
    b: FB,
    delta: RingElem,
) -> [(RingElem, RingElem); 5]
where
    FA: Fn(usize, usize) -> RingElem,
    FB: Fn(usize, usize) -> RingElem,
{
    let [p1, p2, p3] = pairs.left;
    let [q1, q2, q3] = pairs.right;
    let (a1, a2, a3) = (a(p1.0, p1.1), a(p2.0, p2.1), a(p3.0, p3.1));
    let (b1, b2, b3) = (b(p1.0, p1.1), b(p2.0, p2.1), b(p3.0, p3.1));
    let (c1, c2, c3) = (a(q1.0, q1.1), a(q2.0, q2.1), a(q3.0, q3.1));
    let (d1, d2, d3) = (b(q1.0, q1.1), b(q2.0, q2.1), b(q3.0, q3.1));
    [
        (a1 * a2 * a3, c1 * c2 * c3),
        (a1 * b2 * b3, d1 * d2 * c3),
        (b1 * a2 * b3, d1 * c2 * d3),
        (
            a1 * a2 * b3,
            c1 * d2 * c3 + c1 * c2 * d3 + delta * c1 * d2 * d3 + d1 * d2 * d3,
        ),
        (
            b1 * a2 * a3 + a1 * b2 * a3 + delta * b1 * b2 * a3 + b1 * b2 * b3,
            d1 * c2 * c3,
        ),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BracketAxiom {
    W,
    Delta,
    Equation(u8),
}

impl fmt::Display for BracketAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketAxiom::W => write!(f, "w-consistency"),
            BracketAxiom::Delta => write!(f, "delta-consistency"),
            BracketAxiom::Equation(k) => write!(f, "equation-{k}"),
        }
    }
}

/// The first failure for an axiom; indices 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketWitness {
    Element(usize),
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

impl fmt::Display for BracketWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BracketWitness::Element(x) => write!(f, "x={}", x + 1),
            BracketWitness::Pair(x, y) => write!(f, "(x,y)=({},{})", x + 1, y + 1),
            BracketWitness::Triple(x, y, z) => write!(f, "(x,y,z)=({},{},{})", x + 1, y + 1, z + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub axiom: BracketAxiom,
    pub witness: Option<BracketWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketReport {
    pub checks: Vec<BracketCheck>,
    /// `w` and `δ` as computed from the first diagonal entry.
    pub w: RingElem,
    pub delta: RingElem,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<(BracketAxiom, &BracketWitness)> {
        self.checks
            .iter()
            .find_map(|c| c.witness.as_ref().map(|w| (c.axiom, w)))
    }
}

impl fmt::Display for BracketReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{}: pass", c.axiom)?,
                Some(w) => writeln!(f, "{}: FAIL [{w}]", c.axiom)?,
            }
        }
        write!(
            f,
            "result: {}",
            if self.passed() { "valid" } else { "invalid" }
        )
    }
}

/// Checks units, both consistency conditions and the five relations over all triples.
pub fn validate(
    bq: &FiniteBiquandle,
    coeffs: &Coefficients,
) -> Result<BracketReport, BracketError> {
    let n = bq.size();
    coeffs.check_units(n)?;
    let (a, b) = (&coeffs.a, &coeffs.b);
    let w0 = w_term(a[0][0], b[0][0]);
    let d0 = delta_term(a[0][0], b[0][0]);

    let w_witness = (0..n)
        .find(|&x| w_term(a[x][x], b[x][x]) != w0)
        .map(BracketWitness::Element);
    let delta_witness = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| delta_term(a[x][y], b[x][y]) != d0)
        .map(|(x, y)| BracketWitness::Pair(x, y));

    let mut eq_witness: [Option<BracketWitness>; 5] = Default::default();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let pairs = triple_pairs(bq, x, y, z);
                let sides = equation_sides(&pairs, |i, j| a[i][j], |i, j| b[i][j], d0);
                for (k, (lhs, rhs)) in sides.iter().enumerate() {
                    if lhs != rhs && eq_witness[k].is_none() {
                        eq_witness[k] = Some(BracketWitness::Triple(x, y, z));
                    }
                }
            }
        }
    }

    let mut checks = vec![
        BracketCheck {
            axiom: BracketAxiom::W,
            witness: w_witness,
        },
        BracketCheck {
            axiom: BracketAxiom::Delta,
            witness: delta_witness,
        },
    ];
    for (k, witness) in eq_witness.into_iter().enumerate() {
        checks.push(BracketCheck {
            axiom: BracketAxiom::Equation(k as u8 + 1),
            witness,
        });
    }
    Ok(BracketReport {
        checks,
        w: w0,
        delta: d0,
    })
}

/// A validated biquandle bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiquandleBracket {
    biquandle: Arc<FiniteBiquandle>,
    modulus: Modulus,
    a: Vec<RingElem>,
    b: Vec<RingElem>,
    a_inv: Vec<RingElem>,
    b_inv: Vec<RingElem>,
    delta: RingElem,
    w: RingElem,
}

impl BiquandleBracket {
    pub fn new(
        biquandle: Arc<FiniteBiquandle>,
        coeffs: &Coefficients,
    ) -> Result<Self, BracketError> {
        let report = validate(&biquandle, coeffs)?;
        if !report.passed() {
            return Err(BracketError::Invalid(report));
        }
        let flat = |m: &Vec<Vec<RingElem>>| m.iter().flatten().copied().collect::<Vec<_>>();
        let a = flat(&coeffs.a);
        let b = flat(&coeffs.b);
        let inv = |v: &[RingElem]| v.iter().map(|e| e.inv().expect("unit")).collect::<Vec<_>>();
        Ok(BiquandleBracket {
            a_inv: inv(&a),
            b_inv: inv(&b),
            a,
            b,
            modulus: coeffs.modulus,
            delta: report.delta,
            w: report.w,
            biquandle,
        })
    }

    pub fn biquandle(&self) -> &Arc<FiniteBiquandle> {
        &self.biquandle
    }

    pub fn size(&self) -> usize {
        self.biquandle.size()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn delta(&self) -> RingElem {
        self.delta
    }

    pub fn w(&self) -> RingElem {
        self.w
    }

    #[inline]
    pub fn a(&self, x: usize, y: usize) -> RingElem {
        self.a[x * self.size() + y]
    }

    #[inline]
    pub fn b(&self, x: usize, y: usize) -> RingElem {
        self.b[x * self.size() + y]
    }

    #[inline]
    pub fn a_inv(&self, x: usize, y: usize) -> RingElem {
        self.a_inv[x * self.size() + y]
    }

    #[inline]
    pub fn b_inv(&self, x: usize, y: usize) -> RingElem {
        self.b_inv[x * self.size() + y]
    }

    pub fn coefficients(&self) -> Coefficients {
        let n = self.size();
        let nest = |v: &[RingElem]| v.chunks(n).map(<[RingElem]>::to_vec).collect();
        Coefficients {
            modulus: self.modulus,
            a: nest(&self.a),
            b: nest(&self.b),
        }
    }

    pub fn to_text(&self) -> String {
        emit(&self.coefficients())
    }
}

/// Renders the `bracket n=<n> mod=<m>` block format.
pub fn emit(coeffs: &Coefficients) -> String {
    let mut out = format!("bracket n={} mod={}\n", coeffs.n(), coeffs.modulus);
    for (ra, rb) in coeffs.a.iter().zip(&coeffs.b) {
        let row: Vec<String> = ra.iter().chain(rb).map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the block format into raw coefficients (axioms are not checked).
pub fn parse_coefficients(input: &str) -> Result<Coefficients, ParseError> {
    let lines = text::lines(input);
    let header = lines
        .first()
        .ok_or_else(|| ParseError::new(1, 1, "empty input, expected `bracket n=<n> mod=<m>`"))?;
    if header.tokens[0].text != "bracket" {
        return Err(header.tokens[0].error("expected `bracket`"));
    }
    let field = |i: usize, key: &str| {
        header
            .tokens
            .get(i)
            .ok_or_else(|| {
                ParseError::new(
                    header.number,
                    header.tokens[0].column,
                    format!("missing `{key}=`"),
                )
            })
            .and_then(|t| text::keyed_uint(t, key))
    };
    let n = field(1, "n")? as usize;
    let m = field(2, "mod")?;
    if let Some(extra) = header.tokens.get(3) {
        return Err(extra.error("unexpected token after header"));
    }
    if n == 0 {
        return Err(header.tokens[1].error("n must be at least 1"));
    }
    let modulus = Modulus::new(m).map_err(|e| header.tokens[2].error(e.to_string()))?;
    let body = &lines[1..];
    if body.len() != n {
        let (line, col) = body
            .get(n)
            .map_or((lines.last().map_or(1, |l| l.number) + 1, 1), |l| {
                (l.number, 1)
            });
        return Err(ParseError::new(
            line,
            col,
            format!("expected {n} coefficient rows, found {}", body.len()),
        ));
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for line in body {
        if line.tokens.len() != 2 * n {
            let col = line
                .tokens
                .get(2 * n)
                .map_or(line.tokens.last().map_or(1, |t| t.column), |t| t.column);
            return Err(ParseError::new(
                line.number,
                col,
                format!(
                    "expected {} entries (A row then B row), found {}",
                    2 * n,
                    line.tokens.len()
                ),
            ));
        }
        let mut row = Vec::with_capacity(2 * n);
        for tok in &line.tokens {
            let v = text::uint(tok)?;
            if v >= m {
                return Err(tok.error(format!("coefficient {v} is not reduced modulo {m}")));
            }
            row.push(modulus.elem(v as i64));
        }
        b.push(row.split_off(n));
        a.push(row);
    }
    Ok(Coefficients { modulus, a, b })
}

/// Parses and validates a bracket file against `biquandle`.
pub fn parse(
    input: &str,
    biquandle: Arc<FiniteBiquandle>,
) -> Result<BiquandleBracket, BracketError> {
    let coeffs = parse_coefficients(input)?;
    BiquandleBracket::new(biquandle, &coeffs)
}

/// A single axiom instance used to prune the search.
#[derive(Debug, Clone, Copy)]
enum Constraint {
    W(usize),
    Delta(usize, usize),
    Triple(usize, usize, usize),
}

/// Finds up to `limit` brackets on `bq` over Z_m by backtracking.
///
/// Entries are assigned pairwise in row-major order, `A[x][y]` then
/// `B[x][y]`, each ranging over the units of Z_m in ascending order. Every
/// axiom instance is checked as soon as all entries it mentions are assigned,
/// so results come out in lexicographic order of that entry sequence.
pub fn search(
    bq: &Arc<FiniteBiquandle>,
    m: Modulus,
    limit: Option<usize>,
) -> Vec<BiquandleBracket> {
    let n = bq.size();
    let nn = n * n;
    let a_idx = |x: usize, y: usize| 2 * (x * n + y);
    let b_idx = |x: usize, y: usize| 2 * (x * n + y) + 1;

    // Constraints are attached to the last entry they read.
    let mut attached: Vec<Vec<Constraint>> = vec![Vec::new(); 2 * nn];
    let base = [a_idx(0, 0), b_idx(0, 0)];
    for x in 1..n {
        let last = *[base[0], base[1], a_idx(x, x), b_idx(x, x)]
            .iter()
            .max()
            .unwrap();
        attached[last].push(Constraint::W(x));
    }
    for x in 0..n {
        for y in 0..n {
            if (x, y) != (0, 0) {
                let last = *[base[0], base[1], a_idx(x, y), b_idx(x, y)]
                    .iter()
                    .max()
                    .unwrap();
                attached[last].push(Constraint::Delta(x, y));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let p = triple_pairs(bq, x, y, z);
                let mut last = base[1];
                for &(i, j) in p.left.iter().chain(&p.right) {
                    last = last.max(b_idx(i, j));
                }
                attached[last].push(Constraint::Triple(x, y, z));
            }
        }
    }

    let units = m.units();
    let mut values = vec![m.one(); 2 * nn];
    let mut results = Vec::new();
    let limit = limit.unwrap_or(usize::MAX);
    if limit == 0 {
        return results;
    }

    fn holds(c: Constraint, bq: &FiniteBiquandle, values: &[RingElem], n: usize) -> bool {
        let a = |x: usize, y: usize| values[2 * (x * n + y)];
        let b = |x: usize, y: usize| values[2 * (x * n + y) + 1];
        let d0 = delta_term(a(0, 0), b(0, 0));
        match c {
            Constraint::W(x) => w_term(a(x, x), b(x, x)) == w_term(a(0, 0), b(0, 0)),
            Constraint::Delta(x, y) => delta_term(a(x, y), b(x, y)) == d0,
            Constraint::Triple(x, y, z) => {
                let p = triple_pairs(bq, x, y, z);
                equation_sides(&p, a, b, d0).iter().all(|(l, r)| l == r)
            }
        }
    }

    struct Ctx<'a> {
        bq: &'a FiniteBiquandle,
        bq_arc: &'a Arc<FiniteBiquandle>,
        n: usize,
        m: Modulus,
        units: &'a [RingElem],
        attached: &'a [Vec<Constraint>],
        limit: usize,
    }

    fn rec(ctx: &Ctx<'_>, pos: usize, values: &mut Vec<RingElem>, out: &mut Vec<BiquandleBracket>) {
        let nn = ctx.n * ctx.n;
        if pos == 2 * nn {
            let n = ctx.n;
            let rows = |off: usize| -> Vec<Vec<RingElem>> {
                (0..n)
                    .map(|x| (0..n).map(|y| values[2 * (x * n + y) + off]).collect())
                    .collect()
            };
            let coeffs = Coefficients {
                modulus: ctx.m,
                a: rows(0),
                b: rows(1),
            };
            let bracket = BiquandleBracket::new(Arc::clone(ctx.bq_arc), &coeffs)
                .expect("search only emits brackets satisfying every axiom");
            out.push(bracket);
            return;
        }
        for &u in ctx.units {
            values[pos] = u;
            if ctx.attached[pos]
                .iter()
                .all(|&c| holds(c, ctx.bq, values, ctx.n))
            {
                rec(ctx, pos + 1, values, out);
                if out.len() >= ctx.limit {
                    return;
                }
            }
        }
    }

    let ctx = Ctx {
        bq,
        bq_arc: bq,
        n,
        m,
        units: &units,
        attached: &attached,
        limit,
    };
    rec(&ctx, 0, &mut values, &mut results);
    results
}
