//! Brute-force reference implementations written independently of the
//! library internals.

use std::collections::BTreeSet;

use knotoid_bracket::biquandle::FiniteBiquandle;
use knotoid_bracket::bracket::{self, BiquandleBracket, Coefficients};
use knotoid_bracket::diagram::{KnotoidCode, Role, Sign};
use knotoid_bracket::invariant::BracketMatrix;
use knotoid_bracket::ring::{Modulus, RingElem};

use super::all_assignments;

// `<` is the under action, `>` the over action, `d` is δ.
const EQUATIONS: &str = "
A(x,y) A(y,z) A(x<y,z>y) = A(x,z) A(y>x,z>x) A(x<z,y<z)
A(x,y) B(y,z) B(x<y,z>y) = B(x,z) B(y>x,z>x) A(x<z,y<z)
B(x,y) A(y,z) B(x<y,z>y) = B(x,z) A(y>x,z>x) B(x<z,y<z)
A(x,y) A(y,z) B(x<y,z>y) = A(x,z) B(y>x,z>x) A(x<z,y<z) + A(x,z) A(y>x,z>x) B(x<z,y<z) + d A(x,z) B(y>x,z>x) B(x<z,y<z) + B(x,z) B(y>x,z>x) B(x<z,y<z)
B(x,y) A(y,z) A(x<y,z>y) + A(x,y) B(y,z) A(x<y,z>y) + d B(x,y) B(y,z) A(x<y,z>y) + B(x,y) B(y,z) B(x<y,z>y) = B(x,z) A(y>x,z>x) A(x<z,y<z)
";

struct Env<'a> {
    bq: &'a FiniteBiquandle,
    c: &'a Coefficients,
    delta: RingElem,
    vars: [usize; 3],
}

impl Env<'_> {
    fn element(&self, e: &str) -> usize {
        let var = |ch: u8| self.vars[(ch - b'x') as usize];
        let b = e.as_bytes();
        match b.len() {
            1 => var(b[0]),
            3 if b[1] == b'<' => self.bq.under(var(b[0]), var(b[2])),
            3 if b[1] == b'>' => self.bq.over(var(b[0]), var(b[2])),
            _ => panic!("bad element expression {e}"),
        }
    }

    fn factor(&self, f: &str) -> RingElem {
        if f == "d" {
            return self.delta;
        }
        let inner = &f[2..f.len() - 1];
        let (l, r) = inner.split_once(',').unwrap();
        let (x, y) = (self.element(l), self.element(r));
        match &f[..1] {
            "A" => self.c.a[x][y],
            "B" => self.c.b[x][y],
            _ => panic!("bad factor {f}"),
        }
    }

    fn side(&self, s: &str) -> RingElem {
        s.split('+')
            .map(|term| {
                term.split_whitespace()
                    .map(|f| self.factor(f))
                    .fold(self.c.modulus.one(), |a, b| a * b)
            })
            .fold(self.c.modulus.zero(), |a, b| a + b)
    }
}

pub fn oracle_valid(bq: &FiniteBiquandle, c: &Coefficients) -> bool {
    let n = bq.size();
    let m = c.modulus;
    if c.a.iter().chain(&c.b).flatten().any(|v| !v.is_unit()) {
        return false;
    }
    let inv = |v: RingElem| v.inv().unwrap();
    let ws: BTreeSet<u32> = (0..n)
        .map(|x| (m.zero() - c.a[x][x] * c.a[x][x] * inv(c.b[x][x])).value())
        .collect();
    let deltas: BTreeSet<u32> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| (m.zero() - c.a[x][y] * inv(c.b[x][y]) - inv(c.a[x][y]) * c.b[x][y]).value())
        .collect();
    if ws.len() != 1 || deltas.len() != 1 {
        return false;
    }
    let delta = m.elem(*deltas.iter().next().unwrap() as i64);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let env = Env {
                    bq,
                    c,
                    delta,
                    vars: [x, y, z],
                };
                for line in EQUATIONS.lines().filter(|l| !l.trim().is_empty()) {
                    let (l, r) = line.split_once('=').unwrap();
                    if env.side(l) != env.side(r) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn naive_search(bq: &FiniteBiquandle, m: Modulus) -> BTreeSet<String> {
    let n = bq.size();
    let units = m.units();
    let cells = 2 * n * n;
    let mut out = BTreeSet::new();
    for idx in all_assignments(units.len(), cells) {
        let vals: Vec<RingElem> = idx.iter().map(|&i| units[i]).collect();
        let rows = |off: usize| -> Vec<Vec<RingElem>> {
            (0..n)
                .map(|x| vals[off + x * n..off + (x + 1) * n].to_vec())
                .collect()
        };
        let c = Coefficients {
            modulus: m,
            a: rows(0),
            b: rows(n * n),
        };
        if oracle_valid(bq, &c) {
            out.insert(bracket::emit(&c));
        }
    }
    out
}

/// The coloring rule written out per sign, independent of the library's
/// crossing views.
pub fn oracle_is_coloring(bq: &FiniteBiquandle, code: &KnotoidCode, f: &[usize]) -> bool {
    let p = code.passages();
    (1..=code.crossing_count() as u32).all(|id| {
        let under = p
            .iter()
            .position(|q| q.crossing == id && q.role == Role::Under)
            .unwrap();
        let over = p
            .iter()
            .position(|q| q.crossing == id && q.role == Role::Over)
            .unwrap();
        let (ui, uo, oi, oo) = (f[under], f[under + 1], f[over], f[over + 1]);
        match p[under].sign {
            Sign::Positive => uo == bq.under(ui, oo) && oi == bq.over(oo, ui),
            Sign::Negative => ui == bq.under(uo, oi) && oo == bq.over(oi, uo),
        }
    })
}

pub fn oracle_colorings(bq: &FiniteBiquandle, code: &KnotoidCode) -> Vec<Vec<usize>> {
    all_assignments(bq.size(), code.semiarc_count())
        .filter(|f| oracle_is_coloring(bq, code, f))
        .collect()
}

/// Counts components of the smoothing by walking the curve, a different
/// method from the library's union-find.
pub fn walk_components(code: &KnotoidCode, oriented: &[bool]) -> usize {
    let len = code.semiarc_count();
    let p = code.passages();
    // nodes: 2k = start of semiarc k, 2k+1 = end of semiarc k
    let mut link = vec![usize::MAX; 2 * len];
    for id in 1..=code.crossing_count() as u32 {
        let u = p
            .iter()
            .position(|q| q.crossing == id && q.role == Role::Under)
            .unwrap();
        let o = p
            .iter()
            .position(|q| q.crossing == id && q.role == Role::Over)
            .unwrap();
        let (ui, uo, oi, oo) = (2 * u + 1, 2 * (u + 1), 2 * o + 1, 2 * (o + 1));
        let pairs = if oriented[id as usize - 1] {
            [(ui, oo), (oi, uo)]
        } else {
            [(ui, oi), (uo, oo)]
        };
        for (a, b) in pairs {
            link[a] = b;
            link[b] = a;
        }
    }
    let mut seen = vec![false; 2 * len];
    let mut count = 0;
    for start in 0..2 * len {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            stack.push(v ^ 1);
            if link[v] != usize::MAX {
                stack.push(link[v]);
            }
        }
    }
    count
}

pub fn monolithic(br: &BiquandleBracket, code: &KnotoidCode) -> BracketMatrix {
    let bq = br.biquandle();
    let m = br.modulus();
    let c = code.crossing_count();
    let p = code.passages();
    let gap = code.negative_count() as i64 - code.positive_count() as i64;
    let mut phi = BracketMatrix::zero(bq.size());
    for f in oracle_colorings(bq, code) {
        let mut total = m.zero();
        for state in 0..1u32 << c {
            let oriented: Vec<bool> = (0..c).map(|i| state >> (c - 1 - i) & 1 == 0).collect();
            let mut term = br
                .delta()
                .pow(walk_components(code, &oriented) as i64)
                .unwrap();
            for id in 1..=c as u32 {
                let u = p
                    .iter()
                    .position(|q| q.crossing == id && q.role == Role::Under)
                    .unwrap();
                let o = p
                    .iter()
                    .position(|q| q.crossing == id && q.role == Role::Over)
                    .unwrap();
                let positive = p[u].sign == Sign::Positive;
                let (x, y) = if positive {
                    (f[u], f[o + 1])
                } else {
                    (f[u + 1], f[o])
                };
                let coeff = if oriented[id as usize - 1] {
                    br.a(x, y)
                } else {
                    br.b(x, y)
                };
                term = term
                    * if positive {
                        coeff
                    } else {
                        coeff.inv().unwrap()
                    };
            }
            total = total + term;
        }
        let beta = total * br.w().pow(gap).unwrap();
        phi.add(f[0], f[f.len() - 1], beta.value());
    }
    phi
}
