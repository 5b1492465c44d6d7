//! Knotoid diagrams as signed Gauss codes.
//!
//! A code lists the crossing passages met while walking the strand from tail
//! to head. Passage `i` (0-based) separates semiarc `i` from semiarc `i + 1`,
//! so a code with `c` crossings has semiarcs `0..=2c`; semiarc 0 starts at the
//! tail and semiarc `2c` ends at the head.
//!
//! Codes are purely combinatorial. Planarity is never checked, so every
//! well-formed code is accepted and the invariants are defined for all of them.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::text::{self, ParseError, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {id}: both passages are {role}")]
    DuplicateRole { id: u32, role: Role },
    #[error("crossing {id}: passages have different signs")]
    SignMismatch { id: u32 },
    #[error("crossing {id}: missing passage")]
    MissingPassage { id: u32 },
    #[error("crossing {id} is outside 1..={c}")]
    IdOutOfRange { id: u32, c: u32 },
    #[error("insertion point {at} is outside 0..={max}")]
    IndexOutOfRange { at: usize, max: usize },
    #[error("duplicate knotoid name `{0}`")]
    DuplicateName(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Over => "over",
            Role::Under => "under",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    /// 1-based crossing id.
    pub crossing: u32,
    pub role: Role,
    pub sign: Sign,
}

impl Passage {
    pub fn new(crossing: u32, role: Role, sign: Sign) -> Self {
        Passage {
            crossing,
            role,
            sign,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.role.letter(),
            self.crossing,
            self.sign.symbol()
        )
    }
}

/// The four semiarcs meeting at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingView {
    pub id: u32,
    pub sign: Sign,
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
}

/// A single-strand knotoid diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotoidCode {
    name: String,
    passages: Vec<Passage>,
}

impl KnotoidCode {
    /// Checks that every id in `1..=c` occurs exactly twice, once over and
    /// once under, with matching signs.
    pub fn new(name: impl Into<String>, passages: Vec<Passage>) -> Result<Self, DiagramError> {
        let code = KnotoidCode {
            name: name.into(),
            passages,
        };
        code.check()?;
        Ok(code)
    }

    pub fn unknotoid() -> Self {
        KnotoidCode {
            name: "unknotoid".into(),
            passages: Vec::new(),
        }
    }

    fn check(&self) -> Result<(), DiagramError> {
        if self.passages.len() % 2 == 1 {
            let c = self.passages.len() / 2 + 1;
            let missing = (1..=c as u32)
                .find(|id| self.passages.iter().filter(|p| p.crossing == *id).count() != 2)
                .unwrap_or(c as u32);
            return Err(DiagramError::MissingPassage { id: missing });
        }
        let c = self.crossing_count() as u32;
        let mut seen: Vec<Option<Passage>> = vec![None; c as usize];
        for p in &self.passages {
            if p.crossing == 0 || p.crossing > c {
                return Err(DiagramError::IdOutOfRange { id: p.crossing, c });
            }
            let slot = &mut seen[p.crossing as usize - 1];
            match slot {
                None => *slot = Some(*p),
                Some(first) => {
                    if first.role == p.role {
                        return Err(DiagramError::DuplicateRole {
                            id: p.crossing,
                            role: p.role,
                        });
                    }
                    if first.sign != p.sign {
                        return Err(DiagramError::SignMismatch { id: p.crossing });
                    }
                }
            }
        }
        if let Some(id) =
            (1..=c).find(|&id| self.passages.iter().filter(|p| p.crossing == id).count() != 2)
        {
            return Err(DiagramError::MissingPassage { id });
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn crossing_count(&self) -> usize {
        self.passages.len() / 2
    }

    pub fn semiarc_count(&self) -> usize {
        self.passages.len() + 1
    }

    pub fn positive_count(&self) -> usize {
        self.passages
            .iter()
            .filter(|p| p.role == Role::Over && p.sign == Sign::Positive)
            .count()
    }

    pub fn negative_count(&self) -> usize {
        self.crossing_count() - self.positive_count()
    }

    /// One view per crossing, indexed by `id - 1`.
    pub fn crossings(&self) -> Vec<CrossingView> {
        let mut views: Vec<CrossingView> = (1..=self.crossing_count() as u32)
            .map(|id| CrossingView {
                id,
                sign: Sign::Positive,
                under_in: 0,
                under_out: 0,
                over_in: 0,
                over_out: 0,
            })
            .collect();
        for (i, p) in self.passages.iter().enumerate() {
            let v = &mut views[p.crossing as usize - 1];
            v.sign = p.sign;
            match p.role {
                Role::Under => {
                    v.under_in = i;
                    v.under_out = i + 1;
                }
                Role::Over => {
                    v.over_in = i;
                    v.over_out = i + 1;
                }
            }
        }
        views
    }

    /// The strand written as `O1+ U2- ...`.
    pub fn sequence(&self) -> String {
        self.passages
            .iter()
            .map(Passage::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Renames crossings in order of first appearance.
    pub fn normalized(&self) -> KnotoidCode {
        let mut map = vec![0u32; self.crossing_count() + 1];
        let mut next = 1;
        let passages = self
            .passages
            .iter()
            .map(|p| {
                let slot = &mut map[p.crossing as usize];
                if *slot == 0 {
                    *slot = next;
                    next += 1;
                }
                Passage {
                    crossing: *slot,
                    ..*p
                }
            })
            .collect();
        KnotoidCode {
            name: self.name.clone(),
            passages,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "knotoid {} crossings {}\n{}\n",
            self.name,
            self.crossing_count(),
            self.sequence()
        )
    }
}

impl fmt::Display for KnotoidCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.sequence())
    }
}

/// Joins the head of `first` to the tail of `second`.
pub fn connected_sum(first: &KnotoidCode, second: &KnotoidCode) -> KnotoidCode {
    let shift = first.crossing_count() as u32;
    let mut passages = first.passages.clone();
    passages.extend(second.passages.iter().map(|p| Passage {
        crossing: p.crossing + shift,
        ..*p
    }));
    KnotoidCode {
        name: format!("{}#{}", first.name, second.name),
        passages,
    }
}

/// Swaps over and under at every crossing and negates every sign.
pub fn mirror(code: &KnotoidCode) -> KnotoidCode {
    KnotoidCode {
        name: code.name.clone(),
        passages: code
            .passages
            .iter()
            .map(|p| Passage {
                crossing: p.crossing,
                role: p.role.flip(),
                sign: p.sign.flip(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KinkOrder {
    /// Under passage first.
    UnderOver,
    OverUnder,
}

/// Inserts a Reidemeister I kink into semiarc `at`.
pub fn r1_insert(
    code: &KnotoidCode,
    at: usize,
    sign: Sign,
    order: KinkOrder,
) -> Result<KnotoidCode, DiagramError> {
    let max = code.passages.len();
    if at > max {
        return Err(DiagramError::IndexOutOfRange { at, max });
    }
    let id = code.crossing_count() as u32 + 1;
    let (r1, r2) = match order {
        KinkOrder::UnderOver => (Role::Under, Role::Over),
        KinkOrder::OverUnder => (Role::Over, Role::Under),
    };
    let mut passages = code.passages.clone();
    passages.splice(
        at..at,
        [Passage::new(id, r1, sign), Passage::new(id, r2, sign)],
    );
    Ok(KnotoidCode {
        name: code.name.clone(),
        passages,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R2Variant {
    /// Both strands traverse the bigon in the same direction.
    Parallel,
    Antiparallel,
}

/// Inserts a Reidemeister II bigon between semiarcs `at_a` and `at_b`.
///
/// Two new crossings `j` (sign `sign`) and `k` (opposite sign) are added. At
/// point `a` the strand passes `j` then `k` in one role (over when
/// `over_first`); at point `b` it passes them in the other role, in the same
/// order for [`R2Variant::Parallel`] and reversed for [`R2Variant::Antiparallel`].
/// When `at_a == at_b` the four passages are consecutive, `a` pair first.
pub fn r2_insert(
    code: &KnotoidCode,
    at_a: usize,
    at_b: usize,
    variant: R2Variant,
    over_first: bool,
    sign: Sign,
) -> Result<KnotoidCode, DiagramError> {
    let max = code.passages.len();
    for at in [at_a, at_b] {
        if at > max {
            return Err(DiagramError::IndexOutOfRange { at, max });
        }
    }
    let c = code.crossing_count() as u32;
    let (j, k) = (c + 1, c + 2);
    let role_a = if over_first { Role::Over } else { Role::Under };
    let role_b = role_a.flip();
    let pair_a = [
        Passage::new(j, role_a, sign),
        Passage::new(k, role_a, sign.flip()),
    ];
    let pair_b = match variant {
        R2Variant::Parallel => [
            Passage::new(j, role_b, sign),
            Passage::new(k, role_b, sign.flip()),
        ],
        R2Variant::Antiparallel => [
            Passage::new(k, role_b, sign.flip()),
            Passage::new(j, role_b, sign),
        ],
    };
    let mut passages = code.passages.clone();
    // insert the later point first so the earlier index stays valid
    if at_a <= at_b {
        passages.splice(at_b..at_b, pair_b);
        passages.splice(at_a..at_a, pair_a);
    } else {
        passages.splice(at_a..at_a, pair_a);
        passages.splice(at_b..at_b, pair_b);
    }
    Ok(KnotoidCode {
        name: code.name.clone(),
        passages,
    })
}

fn parse_passage(tok: &Token<'_>) -> Result<Passage, ParseError> {
    let t = tok.text;
    let bad = || {
        tok.error(format!(
            "malformed passage `{t}`, expected e.g. `O1+` or `U2-`"
        ))
    };
    let mut chars = t.chars();
    let role = match chars.next() {
        Some('O') | Some('o') => Role::Over,
        Some('U') | Some('u') => Role::Under,
        _ => return Err(bad()),
    };
    let rest = &t[1..];
    let sign = match rest.chars().last() {
        Some('+') => Sign::Positive,
        Some('-') => Sign::Negative,
        _ => return Err(bad()),
    };
    let digits = &rest[..rest.len() - 1];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let crossing: u32 = digits.parse().map_err(|_| bad())?;
    Ok(Passage {
        crossing,
        role,
        sign,
    })
}

/// Parses a table: any number of `knotoid <name> crossings <c>` records, each
/// followed by one line holding its `2c` passages (omitted when `c = 0`).
pub fn parse_table(input: &str) -> Result<Vec<KnotoidCode>, DiagramError> {
    let lines = text::lines(input);
    let mut out: Vec<KnotoidCode> = Vec::new();
    let mut names = HashSet::new();
    let mut i = 0;
    while i < lines.len() {
        let header = &lines[i];
        let toks = &header.tokens;
        if toks[0].text != "knotoid" {
            return Err(toks[0]
                .error("expected `knotoid <name> crossings <c>`")
                .into());
        }
        if toks.len() != 4 || toks[2].text != "crossings" {
            let col = toks
                .get(2)
                .map_or(toks[toks.len() - 1].column, |t| t.column);
            return Err(ParseError::new(
                header.number,
                col,
                "expected `knotoid <name> crossings <c>`",
            )
            .into());
        }
        let name = toks[1].text.to_string();
        let c = text::uint(&toks[3])? as usize;
        i += 1;
        let mut passages = Vec::with_capacity(2 * c);
        if c > 0 {
            let line = lines.get(i).ok_or_else(|| {
                ParseError::new(
                    header.number + 1,
                    1,
                    format!("knotoid `{name}`: missing passage line"),
                )
            })?;
            if line.tokens.len() != 2 * c {
                let col = line
                    .tokens
                    .get(2 * c)
                    .map_or(line.tokens.last().map_or(1, |t| t.column), |t| t.column);
                return Err(ParseError::new(
                    line.number,
                    col,
                    format!(
                        "knotoid `{name}`: expected {} passages, found {}",
                        2 * c,
                        line.tokens.len()
                    ),
                )
                .into());
            }
            for tok in &line.tokens {
                passages.push(parse_passage(tok)?);
            }
            i += 1;
        }
        let code = KnotoidCode::new(name.clone(), passages).map_err(|e| {
            let line = if c > 0 {
                lines[i - 1].number
            } else {
                header.number
            };
            DiagramError::Parse(ParseError::new(line, 1, format!("knotoid `{name}`: {e}")))
        })?;
        if !names.insert(name.clone()) {
            return Err(DiagramError::DuplicateName(name));
        }
        out.push(code);
    }
    Ok(out)
}

/// Parses a file holding exactly one knotoid record.
pub fn parse(input: &str) -> Result<KnotoidCode, DiagramError> {
    let mut table = parse_table(input)?;
    match table.len() {
        1 => Ok(table.remove(0)),
        found => {
            Err(ParseError::new(1, 1, format!("expected one knotoid record, found {found}")).into())
        }
    }
}

pub fn emit(code: &KnotoidCode) -> String {
    code.to_text()
}

pub fn emit_table(codes: &[KnotoidCode]) -> String {
    codes.iter().map(KnotoidCode::to_text).collect()
}
