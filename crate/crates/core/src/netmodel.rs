//! Reaction networks: complexes as exponent vectors, directed reactions, the text formats.
//!
//! Two input formats are supported. The chemical format (`.crn`) has one reaction per line:
//!
//! ```text
//! species: X, Y          # optional, fixes the species order
//! 2X <-> Y | k=1,0.5     # forward and reverse rate
//! X -> 0 | k in (0.5,2)
//! ```
//!
//! The generalized format (`.gcrn`) lists power-law sources and their reaction vectors:
//!
//! ```text
//! source: (-1, 1.5) vector: (2, -2.23606797749979)
//! ```

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Chemical,
    Generalized,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Chemical => "chemical",
            Mode::Generalized => "generalized",
        }
    }
}

/// Exponent vector of a complex, one entry per species.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complex(pub Vec<Rational>);

impl Complex {
    pub fn zero(dim: usize) -> Self {
        Complex(vec![Rational::zero(); dim])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Complex(entries.iter().map(|&v| exact::int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(exact::to_f64).collect()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer() && !q.is_negative())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(exact::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reaction {
    pub source: Complex,
    pub target: Complex,
}

impl Reaction {
    pub fn new(source: Complex, target: Complex) -> Self {
        Reaction { source, target }
    }

    pub fn vector(&self) -> Vec<Rational> {
        exact::sub(&self.target.0, &self.source.0)
    }

    pub fn reversed(&self) -> Self {
        Reaction::new(self.target.clone(), self.source.clone())
    }
}

/// Rate metadata attached to a reaction line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateMeta {
    Fixed(f64),
    Range(f64, f64),
}

impl RateMeta {
    /// A representative constant: the fixed value, or the geometric mean of a range.
    pub fn nominal(&self) -> f64 {
        match *self {
            RateMeta::Fixed(k) => k,
            RateMeta::Range(lo, hi) => (lo * hi).sqrt(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum NetError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid network: {0}")]
    Validation(String),
    #[error("expected {expected} species, found {found}")]
    Dimension { expected: usize, found: usize },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> NetError {
    NetError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct ReactionNetwork {
    species: Vec<String>,
    reactions: Vec<Reaction>,
    rates: Vec<Option<RateMeta>>,
    mode: Mode,
}

impl ReactionNetwork {
    /// Builds and validates a network without rate metadata.
    pub fn new(species: Vec<String>, reactions: Vec<Reaction>, mode: Mode) -> Result<Self, NetError> {
        let rates = vec![None; reactions.len()];
        Self::with_rates(species, reactions, rates, mode)
    }

    pub fn with_rates(
        species: Vec<String>,
        reactions: Vec<Reaction>,
        rates: Vec<Option<RateMeta>>,
        mode: Mode,
    ) -> Result<Self, NetError> {
        assert_eq!(reactions.len(), rates.len(), "one rate slot per reaction");
        let net = ReactionNetwork {
            species,
            reactions,
            rates,
            mode,
        };
        net.validate()?;
        Ok(net)
    }

    /// Convenience constructor for chemical networks given as integer exponent pairs.
    pub fn from_int_pairs(species: &[&str], pairs: &[(Vec<i64>, Vec<i64>)]) -> Result<Self, NetError> {
        let reactions = pairs
            .iter()
            .map(|(s, t)| Reaction::new(Complex::from_ints(s), Complex::from_ints(t)))
            .collect();
        Self::new(
            species.iter().map(|s| s.to_string()).collect(),
            reactions,
            Mode::Chemical,
        )
    }

    fn validate(&self) -> Result<(), NetError> {
        let dim = self.species.len();
        if dim == 0 {
            return Err(NetError::Validation("no species".into()));
        }
        if self.reactions.is_empty() {
            return Err(NetError::Validation("no reactions".into()));
        }
        let mut names = HashSet::new();
        for name in &self.species {
            if !names.insert(name.as_str()) {
                return Err(NetError::Validation(format!("species {name} declared twice")));
            }
        }
        let mut seen = HashSet::new();
        for r in &self.reactions {
            for c in [&r.source, &r.target] {
                if c.dim() != dim {
                    return Err(NetError::Dimension {
                        expected: dim,
                        found: c.dim(),
                    });
                }
                if self.mode == Mode::Chemical && !c.is_nonnegative_integral() {
                    return Err(NetError::Validation(format!(
                        "complex {c} has a negative or fractional coefficient"
                    )));
                }
            }
            if r.source == r.target {
                return Err(NetError::Validation(format!(
                    "self-loop {} -> {}",
                    self.complex_label(&r.source),
                    self.complex_label(&r.target)
                )));
            }
            if !seen.insert(r) {
                return Err(NetError::Validation(format!(
                    "duplicate reaction {}",
                    self.reaction_label(r)
                )));
            }
        }
        // every complex is in some reaction by construction; check species coverage
        for (i, name) in self.species.iter().enumerate() {
            let used = self
                .reactions
                .iter()
                .any(|r| !r.source.0[i].is_zero() || !r.target.0[i].is_zero());
            if !used {
                return Err(NetError::Validation(format!(
                    "species {name} does not appear in any complex"
                )));
            }
        }
        Ok(())
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn dim(&self) -> usize {
        self.species.len()
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn rates(&self) -> &[Option<RateMeta>] {
        &self.rates
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Rate constants from the metadata, defaulting to 1.
    pub fn nominal_rates(&self) -> Vec<f64> {
        self.rates.iter().map(|r| r.map_or(1.0, |m| m.nominal())).collect()
    }

    /// Distinct complexes in order of first appearance (source before target).
    pub fn complexes(&self) -> Vec<Complex> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in &self.reactions {
            for c in [&r.source, &r.target] {
                if seen.insert(c.clone()) {
                    out.push(c.clone());
                }
            }
        }
        out
    }

    /// The distinct source complexes, sorted lexicographically.
    pub fn source_complexes(&self) -> Vec<Complex> {
        let set: BTreeSet<Complex> = self.reactions.iter().map(|r| r.source.clone()).collect();
        set.into_iter().collect()
    }

    /// The network with every reaction reversed; rate metadata follows its reaction.
    pub fn reversed(&self) -> Self {
        ReactionNetwork {
            species: self.species.clone(),
            reactions: self.reactions.iter().map(Reaction::reversed).collect(),
            rates: self.rates.clone(),
            mode: self.mode,
        }
    }

    /// Same network with species `a` and `b` exchanged in every complex.
    pub fn swap_species(&self, a: usize, b: usize) -> Self {
        let swap = |c: &Complex| {
            let mut v = c.0.clone();
            v.swap(a, b);
            Complex(v)
        };
        let mut species = self.species.clone();
        species.swap(a, b);
        ReactionNetwork {
            species,
            reactions: self
                .reactions
                .iter()
                .map(|r| Reaction::new(swap(&r.source), swap(&r.target)))
                .collect(),
            rates: self.rates.clone(),
            mode: self.mode,
        }
    }

    /// Largest stoichiometric coefficient over all complexes.
    pub fn max_coefficient(&self) -> Rational {
        self.complexes()
            .iter()
            .flat_map(|c| c.0.iter().cloned())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn complex_label(&self, c: &Complex) -> String {
        match self.mode {
            Mode::Chemical => chemical_label(&self.species, c),
            Mode::Generalized => c.to_string(),
        }
    }

    pub fn reaction_label(&self, r: &Reaction) -> String {
        format!("{} -> {}", self.complex_label(&r.source), self.complex_label(&r.target))
    }

    /// True when both networks have the same species, mode and reaction/rate pairs.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.species != other.species || self.mode != other.mode {
            return false;
        }
        if self.reactions.len() != other.reactions.len() {
            return false;
        }
        let lookup: HashMap<&Reaction, Option<RateMeta>> =
            other.reactions.iter().zip(other.rates.iter().copied()).collect();
        self.reactions
            .iter()
            .zip(&self.rates)
            .all(|(r, k)| lookup.get(r) == Some(k))
    }
}

fn chemical_label(species: &[String], c: &Complex) -> String {
    let terms: Vec<String> =
        c.0.iter()
            .zip(species)
            .filter(|(q, _)| !q.is_zero())
            .map(|(q, name)| {
                if q == &exact::int(1) {
                    name.clone()
                } else {
                    format!("{}{}", exact::format_rational(q), name)
                }
            })
            .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Parses network text in the given mode.
pub fn parse_network(text: &str, mode: Mode) -> Result<ReactionNetwork, NetError> {
    match mode {
        Mode::Chemical => parse_chemical(text),
        Mode::Generalized => parse_generalized(text),
    }
}

/// Picks the mode from a file name: `.gcrn` is generalized, anything else chemical.
pub fn mode_for_path(path: &str) -> Mode {
    if path.ends_with(".gcrn") {
        Mode::Generalized
    } else {
        Mode::Chemical
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

/// Strips comments and blank lines, keeping 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let text = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if text.trim().is_empty() {
            None
        } else {
            Some(Line { number: i + 1, text })
        }
    })
}

fn column_of(line: &str, part: &str) -> usize {
    // `part` is always a subslice of `line`
    (part.as_ptr() as usize - line.as_ptr() as usize) + 1
}

fn parse_species_directive(line: &Line<'_>) -> Result<Option<Vec<String>>, NetError> {
    let trimmed = line.text.trim_start();
    let Some(rest) = trimmed.strip_prefix("species:") else {
        return Ok(None);
    };
    let mut names = Vec::new();
    for part in rest.split(',') {
        let name = part.trim();
        if !is_identifier(name) {
            return Err(syntax(
                line.number,
                column_of(line.text, part),
                format!("bad species name '{name}'"),
            ));
        }
        names.push(name.to_string());
    }
    Ok(Some(names))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the optional `| k=...` suffix. Returns (forward, reverse).
fn parse_rate(line: &Line<'_>, part: &str) -> Result<(RateMeta, RateMeta), NetError> {
    let col = column_of(line.text, part);
    let body = part.trim();
    let bad = |msg: &str| syntax(line.number, col, msg.to_string());
    let Some(rest) = body.strip_prefix('k') else {
        return Err(bad("rate metadata must start with 'k'"));
    };
    let rest = rest.trim_start();
    let positive = |s: &str| -> Result<f64, NetError> {
        let v: f64 = s.trim().parse().map_err(|_| bad("bad rate value"))?;
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(bad("rate values must be positive"))
        }
    };
    if let Some(values) = rest.strip_prefix('=') {
        let mut it = values.split(',');
        let fwd = positive(it.next().unwrap_or(""))?;
        let rev = it.next().map(positive).transpose()?;
        if it.next().is_some() {
            return Err(bad("at most two rate values"));
        }
        Ok((RateMeta::Fixed(fwd), RateMeta::Fixed(rev.unwrap_or(fwd))))
    } else if let Some(range) = rest.strip_prefix("in") {
        let range = range.trim();
        let inner = range
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected (LO,HI)"))?;
        let (lo, hi) = inner.split_once(',').ok_or_else(|| bad("expected (LO,HI)"))?;
        let (lo, hi) = (positive(lo)?, positive(hi)?);
        if lo >= hi {
            return Err(bad("empty rate range"));
        }
        let meta = RateMeta::Range(lo, hi);
        Ok((meta, meta))
    } else {
        Err(bad("expected 'k=' or 'k in'"))
    }
}

type Terms = Vec<(String, Rational)>;

fn parse_complex_terms(line: &Line<'_>, part: &str) -> Result<Terms, NetError> {
    let trimmed = part.trim();
    if trimmed.is_empty() {
        return Err(syntax(line.number, column_of(line.text, part), "missing complex"));
    }
    if trimmed == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    for term in part.split('+') {
        let col = column_of(line.text, term.trim_start());
        let t = term.trim();
        let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        let (digits, name) = t.split_at(split);
        let name = name.trim();
        if !is_identifier(name) {
            return Err(syntax(line.number, col, format!("bad term '{t}'")));
        }
        let coef = if digits.is_empty() {
            exact::int(1)
        } else {
            let v: i64 = digits
                .parse()
                .map_err(|_| syntax(line.number, col, "coefficient too large"))?;
            if v == 0 {
                return Err(syntax(line.number, col, "zero coefficient"));
            }
            exact::int(v)
        };
        terms.push((name.to_string(), coef));
    }
    Ok(terms)
}

fn parse_chemical(text: &str) -> Result<ReactionNetwork, NetError> {
    let mut species: Vec<String> = Vec::new();
    let mut raw: Vec<(Terms, Terms, Option<RateMeta>)> = Vec::new();
    for line in content_lines(text) {
        if let Some(names) = parse_species_directive(&line)? {
            for n in names {
                if !species.contains(&n) {
                    species.push(n);
                }
            }
            continue;
        }
        let (body, rate_part) = match line.text.find('|') {
            Some(pos) => (&line.text[..pos], Some(&line.text[pos + 1..])),
            None => (line.text, None),
        };
        let (lhs, rhs, reversible) = if let Some(pos) = body.find("<->") {
            (&body[..pos], &body[pos + 3..], true)
        } else if let Some(pos) = body.find("->") {
            (&body[..pos], &body[pos + 2..], false)
        } else {
            return Err(syntax(line.number, 1, "expected '->' or '<->'"));
        };
        if rhs.contains("->") {
            return Err(syntax(line.number, column_of(line.text, rhs), "more than one arrow"));
        }
        let src = parse_complex_terms(&line, lhs)?;
        let dst = parse_complex_terms(&line, rhs)?;
        for (name, _) in src.iter().chain(&dst) {
            if !species.contains(name) {
                species.push(name.clone());
            }
        }
        let (fwd, rev) = match rate_part {
            Some(p) => {
                let (f, r) = parse_rate(&line, p)?;
                (Some(f), Some(r))
            }
            None => (None, None),
        };
        raw.push((src.clone(), dst.clone(), fwd));
        if reversible {
            raw.push((dst, src, rev));
        }
    }
    let index: HashMap<&str, usize> = species.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let build = |terms: &Terms| {
        let mut v = vec![Rational::zero(); species.len()];
        for (name, coef) in terms {
            v[index[name.as_str()]] += coef;
        }
        Complex(v)
    };
    let mut reactions = Vec::with_capacity(raw.len());
    let mut rates = Vec::with_capacity(raw.len());
    for (s, t, k) in &raw {
        reactions.push(Reaction::new(build(s), build(t)));
        rates.push(*k);
    }
    ReactionNetwork::with_rates(species, reactions, rates, Mode::Chemical)
}

fn parse_tuple(line: &Line<'_>, part: &str) -> Result<Vec<Rational>, NetError> {
    let col = column_of(line.text, part);
    let inner = part
        .trim()
        .strip_prefix('(')
        .and_then(|p| p.strip_suffix(')'))
        .ok_or_else(|| syntax(line.number, col, "expected a parenthesized tuple"))?;
    inner
        .split(',')
        .map(|entry| {
            exact::parse_rational(entry).ok_or_else(|| {
                syntax(
                    line.number,
                    column_of(line.text, entry.trim_start()),
                    format!("bad number '{}'", entry.trim()),
                )
            })
        })
        .collect()
}

fn parse_generalized(text: &str) -> Result<ReactionNetwork, NetError> {
    let mut species: Option<Vec<String>> = None;
    let mut reactions = Vec::new();
    let mut rates = Vec::new();
    let mut dim: Option<usize> = None;
    for line in content_lines(text) {
        if let Some(names) = parse_species_directive(&line)? {
            species = Some(names);
            continue;
        }
        let (body, rate_part) = match line.text.find('|') {
            Some(pos) => (&line.text[..pos], Some(&line.text[pos + 1..])),
            None => (line.text, None),
        };
        let trimmed = body.trim_start();
        let Some(rest) = trimmed.strip_prefix("source:") else {
            return Err(syntax(line.number, column_of(line.text, trimmed), "expected 'source:'"));
        };
        let Some(pos) = rest.find("vector:") else {
            return Err(syntax(line.number, column_of(line.text, rest), "expected 'vector:'"));
        };
        let source = parse_tuple(&line, &rest[..pos])?;
        let vector = parse_tuple(&line, &rest[pos + 7..])?;
        if source.len() != vector.len() {
            return Err(syntax(
                line.number,
                column_of(line.text, &rest[pos..]),
                "source and vector differ in length",
            ));
        }
        match dim {
            None => dim = Some(source.len()),
            Some(d) if d != source.len() => {
                return Err(syntax(
                    line.number,
                    column_of(line.text, rest),
                    format!("expected {d} entries"),
                ));
            }
            _ => {}
        }
        if exact::is_zero_vec(&vector) {
            return Err(NetError::Validation(format!(
                "line {}: zero reaction vector (self-loop)",
                line.number
            )));
        }
        let target: Vec<Rational> = source.iter().zip(&vector).map(|(a, b)| a + b).collect();
        reactions.push(Reaction::new(Complex(source), Complex(target)));
        rates.push(match rate_part {
            Some(p) => Some(parse_rate(&line, p)?.0),
            None => None,
        });
    }
    let dim = dim.ok_or_else(|| NetError::Validation("no reactions".into()))?;
    let species = match species {
        Some(names) if names.len() == dim => names,
        Some(names) => {
            return Err(NetError::Dimension {
                expected: names.len(),
                found: dim,
            })
        }
        None => default_species(dim),
    };
    ReactionNetwork::with_rates(species, reactions, rates, Mode::Generalized)
}

fn default_species(dim: usize) -> Vec<String> {
    match dim {
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=dim).map(|i| format!("x{i}")).collect(),
    }
}

fn format_rate_value(v: f64) -> String {
    format!("{v}")
}

fn format_rate_suffix(fwd: Option<RateMeta>, rev: Option<Option<RateMeta>>) -> Option<String> {
    match (fwd, rev) {
        (None, None) | (None, Some(None)) => Some(String::new()),
        (Some(RateMeta::Fixed(f)), None) => Some(format!(" | k={}", format_rate_value(f))),
        (Some(RateMeta::Range(lo, hi)), None) => {
            Some(format!(" | k in ({},{})", format_rate_value(lo), format_rate_value(hi)))
        }
        (Some(RateMeta::Fixed(f)), Some(Some(RateMeta::Fixed(r)))) => Some(if f == r {
            format!(" | k={}", format_rate_value(f))
        } else {
            format!(" | k={},{}", format_rate_value(f), format_rate_value(r))
        }),
        (Some(a @ RateMeta::Range(..)), Some(Some(b))) if a == b => format_rate_suffix(Some(a), None),
        _ => None,
    }
}

/// Serializes a network in the format matching its mode.
pub fn format_network(net: &ReactionNetwork) -> String {
    match net.mode {
        Mode::Chemical => format_chemical(net),
        Mode::Generalized => format_generalized(net),
    }
}

fn format_chemical(net: &ReactionNetwork) -> String {
    let mut out = format!("species: {}\n", net.species.join(", "));
    let position: HashMap<&Reaction, usize> = net.reactions.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut done = vec![false; net.reactions.len()];
    for (i, r) in net.reactions.iter().enumerate() {
        if done[i] {
            continue;
        }
        done[i] = true;
        let lhs = net.complex_label(&r.source);
        let rhs = net.complex_label(&r.target);
        let reverse = position.get(&r.reversed()).copied().filter(|&j| !done[j]);
        if let Some(j) = reverse {
            if let Some(suffix) = format_rate_suffix(net.rates[i], Some(net.rates[j])) {
                done[j] = true;
                out.push_str(&format!("{lhs} <-> {rhs}{suffix}\n"));
                continue;
            }
        }
        let suffix = format_rate_suffix(net.rates[i], None).unwrap_or_default();
        out.push_str(&format!("{lhs} -> {rhs}{suffix}\n"));
    }
    out
}

fn format_generalized(net: &ReactionNetwork) -> String {
    let mut out = format!("species: {}\n", net.species.join(", "));
    for (r, k) in net.reactions.iter().zip(&net.rates) {
        let vector: Vec<String> = r.vector().iter().map(exact::format_rational).collect();
        let suffix = format_rate_suffix(*k, None).unwrap_or_default();
        out.push_str(&format!(
            "source: {} vector: ({}){}\n",
            r.source,
            vector.join(", "),
            suffix
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chem(text: &str) -> ReactionNetwork {
        parse_network(text, Mode::Chemical).unwrap()
    }

    #[test]
    fn two_species_network_parses() {
        let net = chem("2X <-> Y\nX <-> Y\nX <-> 2X + Y");
        assert_eq!(net.species(), ["X", "Y"]);
        assert_eq!(net.reactions().len(), 6);
        assert_eq!(net.complexes().len(), 4);
        let sources = net.source_complexes();
        let expected: Vec<Complex> = [[0, 1], [1, 0], [2, 0], [2, 1]]
            .iter()
            .map(|p| Complex::from_ints(p))
            .collect();
        assert_eq!(sources, expected);
    }

    #[test]
    fn lotka_volterra_parses() {
        let net = chem("A -> 2A\nA + B -> 2B\nB -> 0");
        assert_eq!(net.reactions().len(), 3);
        assert_eq!(net.complexes().len(), 6);
        let expected: Vec<Complex> = [[0, 1], [1, 0], [1, 1]].iter().map(|p| Complex::from_ints(p)).collect();
        assert_eq!(net.source_complexes(), expected);
    }

    #[test]
    fn single_source() {
        let net = chem("A -> B");
        assert_eq!(net.source_complexes(), vec![Complex::from_ints(&[1, 0])]);
    }

    #[test]
    fn self_loop_is_rejected() {
        let err = parse_network("A -> A", Mode::Chemical).unwrap_err();
        assert!(
            matches!(err, NetError::Validation(ref m) if m.contains("self-loop")),
            "{err}"
        );
    }

    #[test]
    fn duplicate_and_unused_species_are_rejected() {
        let dup = parse_network("A -> B\nA -> B", Mode::Chemical).unwrap_err();
        assert!(dup.to_string().contains("duplicate"));
        let unused = parse_network("species: A, B, C\nA -> B", Mode::Chemical).unwrap_err();
        assert!(unused.to_string().contains("species C"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_network("A -> B\nA + 2 -> B", Mode::Chemical).unwrap_err();
        assert_eq!(
            err,
            NetError::Syntax {
                line: 2,
                column: 5,
                message: "bad term '2'".into()
            }
        );
        let err = parse_network("A = B", Mode::Chemical).unwrap_err();
        assert!(matches!(err, NetError::Syntax { line: 1, .. }));
        let err = parse_network("A -> B | k=-1", Mode::Chemical).unwrap_err();
        assert!(matches!(err, NetError::Syntax { line: 1, column: 9, .. }), "{err:?}");
    }

    #[test]
    fn coefficients_and_spacing() {
        let net = chem("2 X + X -> Y # comment\n\n# only comment\nY -> 0");
        assert_eq!(net.reactions()[0].source, Complex::from_ints(&[3, 0]));
        assert_eq!(net.reactions()[1].target, Complex::zero(2));
    }

    #[test]
    fn rates_attach_to_directions() {
        let net = chem("X <-> Y | k=2,0.5\nX -> 0 | k in (0.5,2)\n0 -> Y | k=3");
        assert_eq!(net.rates()[0], Some(RateMeta::Fixed(2.0)));
        assert_eq!(net.rates()[1], Some(RateMeta::Fixed(0.5)));
        assert_eq!(net.rates()[2], Some(RateMeta::Range(0.5, 2.0)));
        assert_eq!(net.nominal_rates()[2], 1.0);
        assert_eq!(net.nominal_rates()[3], 3.0);
    }

    #[test]
    fn generalized_parse() {
        let text = "source: (-1, 1.5) vector: (2, -2.23606797749979)\nsource: (0, 0.8) vector: (-1, 0)\nsource: (0,-2) vector: (0,1)";
        let net = parse_network(text, Mode::Generalized).unwrap();
        assert_eq!(net.species(), ["x", "y"]);
        assert_eq!(net.reactions()[1].source.0[1], exact::ratio(4, 5));
        assert_eq!(net.reactions()[2].target, Complex(vec![exact::int(0), exact::int(-1)]));
        let err = parse_network("source: (1, 2) vector: (0, 0)", Mode::Generalized).unwrap_err();
        assert!(err.to_string().contains("self-loop"));
        let err = parse_network("source: (1, x) vector: (0, 1)", Mode::Generalized).unwrap_err();
        assert!(
            matches!(
                err,
                NetError::Syntax {
                    line: 1,
                    column: 13,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn chemical_mode_rejects_negative_exponents() {
        let r = Reaction::new(Complex::from_ints(&[-1, 0]), Complex::from_ints(&[0, 1]));
        let err = ReactionNetwork::new(vec!["A".into(), "B".into()], vec![r], Mode::Chemical).unwrap_err();
        assert!(matches!(err, NetError::Validation(_)));
    }

    #[test]
    fn round_trips() {
        for (text, mode) in [
            ("A -> 2A\nA + B -> 2B\nB -> 0", Mode::Chemical),
            ("2X <-> Y\nX <-> Y\nX <-> 2X + Y", Mode::Chemical),
            ("X <-> Y | k=2,0.5\nX -> 0 | k in (0.5,2)\n0 -> X | k=3", Mode::Chemical),
            ("source: (-1, 1.5) vector: (2, -2.23606797749979)\nsource: (0, 0.8) vector: (-1, 0)\nsource: (0, -2) vector: (0, 1)", Mode::Generalized),
        ] {
            let net = parse_network(text, mode).unwrap();
            let printed = format_network(&net);
            let again = parse_network(&printed, mode).unwrap();
            assert!(net.equivalent(&again), "{printed}");
        }
        let wr = chem("2X <-> Y\nX <-> Y\nX <-> 2X + Y");
        assert_eq!(format_network(&wr).lines().filter(|l| l.contains("<->")).count(), 3);
    }
}
