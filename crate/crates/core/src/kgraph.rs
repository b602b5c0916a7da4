//! Single-vertex higher-rank graph monoids presented by commutation tables.
//!
//! A spec fixes a rank `k`, alphabet sizes `n_1, …, n_k`, and for each pair
//! of colors `i < j` a bijection pairing `x^i_s x^j_t` with `x^j_{t'} x^i_{s'}`.
//! Words normalize to color-sorted form by confluent rewriting. For the
//! standard product (the Euclidean-division tables `s + t·n_i = t' + s'·n_j`)
//! every word of degree `p` also carries an integer code in `[0, n^p)`, and
//! the code is invariant under rewriting — that equivalence is the workhorse
//! oracle for the rest of the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KGraphError {
    #[error("rank must be at least 1")]
    EmptyRank,
    #[error("alphabet size for color {0} must be at least 1")]
    EmptyAlphabet(usize),
    #[error("commutation table for pair ({i},{j}) is not a bijection: {collisions:?} collide")]
    NotBijective {
        i: usize,
        j: usize,
        collisions: Vec<((u64, u64), (u64, u64))>,
    },
    #[error("commutation table for pair ({0},{1}) has the wrong shape")]
    BadTableShape(usize, usize),
    #[error("missing commutation table for pair ({0},{1})")]
    MissingTable(usize, usize),
    #[error("letter x{0}:{1} is out of range")]
    LetterOutOfRange(usize, u64),
    #[error("color index {0} is out of range")]
    ColorOutOfRange(usize),
    #[error("integer coding requires the standard-product tables")]
    UnsupportedFlavor,
    #[error("operands come from different specs")]
    SpecMismatch,
    #[error("degree is out of range for this operation")]
    DegreeOutOfRange,
    #[error("code {0} is out of range for degree {1:?}")]
    CodeOutOfRange(BigUint, Vec<u32>),
    #[error("cannot parse word: {0}")]
    ParseError(String),
}

/// Multidegree in `N^k`: one coordinate per color.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(pub Vec<u32>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    pub fn unit(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        Degree(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        debug_assert_eq!(self.rank(), other.rank());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Degree) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// All degrees `d` with `d ≤ self` componentwise, in lexicographic order.
    pub fn degrees_below(&self) -> Vec<Degree> {
        let mut out = vec![Degree::zero(self.rank())];
        for (i, &cap) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
            for d in &out {
                for c in 0..=cap {
                    let mut v = d.0.clone();
                    v[i] = c;
                    next.push(Degree(v));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A single edge: color index (0-based) and letter in `[n_i]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub color: usize,
    pub symbol: u64,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.color + 1, self.symbol)
    }
}

/// Commutation tables for all color pairs `i < j`.
///
/// `tables[(i,j)][s][t] = (t', s')` encodes `x^i_s x^j_t = x^j_{t'} x^i_{s'}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaTables {
    tables: BTreeMap<(usize, usize), Vec<Vec<(u64, u64)>>>,
    inverses: BTreeMap<(usize, usize), Vec<Vec<(u64, u64)>>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ThetaFlavor {
    /// Tables given by Euclidean division: `s + t·n_i = t' + s'·n_j`.
    StandardProduct,
    ExplicitTables(ThetaTables),
}

/// Spec of a single-vertex `k`-graph monoid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KGraphSpec {
    n: Vec<u64>,
    flavor: ThetaFlavor,
    /// True when every table agrees with the Euclidean-division formula, so
    /// the integer coding applies even to explicitly tabulated specs.
    standard_coding: bool,
}

impl KGraphSpec {
    /// The standard product of odometer alphabets.
    pub fn standard(n: Vec<u64>) -> Result<Arc<Self>, KGraphError> {
        Self::check_alphabets(&n)?;
        Ok(Arc::new(KGraphSpec {
            n,
            flavor: ThetaFlavor::StandardProduct,
            standard_coding: true,
        }))
    }

    /// A spec with explicit commutation tables.
    ///
    /// Bijectivity of every table is checked here; the cubic condition is
    /// not (run [`cubic_check`] for that).
    pub fn with_tables(
        n: Vec<u64>,
        raw: BTreeMap<(usize, usize), Vec<Vec<(u64, u64)>>>,
    ) -> Result<Arc<Self>, KGraphError> {
        Self::check_alphabets(&n)?;
        let k = n.len();
        let mut tables = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let table = raw
                    .get(&(i, j))
                    .ok_or(KGraphError::MissingTable(i, j))?
                    .clone();
                let (ni, nj) = (n[i] as usize, n[j] as usize);
                if table.len() != ni || table.iter().any(|row| row.len() != nj) {
                    return Err(KGraphError::BadTableShape(i, j));
                }
                let mut seen: BTreeMap<(u64, u64), (u64, u64)> = BTreeMap::new();
                let mut collisions = Vec::new();
                let mut inv = vec![vec![(0u64, 0u64); ni]; nj];
                for (s, row) in table.iter().enumerate() {
                    for (t, &(tp, sp)) in row.iter().enumerate() {
                        if tp >= n[j] || sp >= n[i] {
                            return Err(KGraphError::BadTableShape(i, j));
                        }
                        if let Some(&prev) = seen.get(&(tp, sp)) {
                            collisions.push((prev, (s as u64, t as u64)));
                        } else {
                            seen.insert((tp, sp), (s as u64, t as u64));
                            inv[tp as usize][sp as usize] = (s as u64, t as u64);
                        }
                    }
                }
                if !collisions.is_empty() {
                    return Err(KGraphError::NotBijective { i, j, collisions });
                }
                tables.insert((i, j), table);
                inverses.insert((i, j), inv);
            }
        }
        let theta = ThetaTables { tables, inverses };
        let standard_coding = Self::tables_match_standard(&n, &theta);
        Ok(Arc::new(KGraphSpec {
            n,
            flavor: ThetaFlavor::ExplicitTables(theta),
            standard_coding,
        }))
    }

    fn check_alphabets(n: &[u64]) -> Result<(), KGraphError> {
        if n.is_empty() {
            return Err(KGraphError::EmptyRank);
        }
        for (i, &ni) in n.iter().enumerate() {
            if ni == 0 {
                return Err(KGraphError::EmptyAlphabet(i));
            }
        }
        Ok(())
    }

    fn tables_match_standard(n: &[u64], theta: &ThetaTables) -> bool {
        theta.tables.iter().all(|(&(i, j), table)| {
            table.iter().enumerate().all(|(s, row)| {
                row.iter().enumerate().all(|(t, &(tp, sp))| {
                    let c = s as u64 + t as u64 * n[i];
                    tp == c % n[j] && sp == c / n[j]
                })
            })
        })
    }

    pub fn rank(&self) -> usize {
        self.n.len()
    }

    pub fn alphabet_sizes(&self) -> &[u64] {
        &self.n
    }

    pub fn alphabet(&self, color: usize) -> u64 {
        self.n[color]
    }

    pub fn flavor(&self) -> &ThetaFlavor {
        &self.flavor
    }

    /// Whether the degree-indexed integer coding applies.
    pub fn has_standard_coding(&self) -> bool {
        self.standard_coding
    }

    pub fn require_standard_coding(&self) -> Result<(), KGraphError> {
        if self.standard_coding {
            Ok(())
        } else {
            Err(KGraphError::UnsupportedFlavor)
        }
    }

    /// `θ_{ij}(s, t) = (t', s')` for `i < j`: rewrites `x^i_s x^j_t` to
    /// `x^j_{t'} x^i_{s'}`.
    pub fn theta(&self, i: usize, j: usize, s: u64, t: u64) -> (u64, u64) {
        debug_assert!(i < j);
        match &self.flavor {
            ThetaFlavor::StandardProduct => {
                let c = s + t * self.n[i];
                (c % self.n[j], c / self.n[j])
            }
            ThetaFlavor::ExplicitTables(theta) => {
                theta.tables[&(i, j)][s as usize][t as usize]
            }
        }
    }

    /// `θ_{ij}^{-1}(t', s') = (s, t)`: rewrites `x^j_{t'} x^i_{s'}` back to
    /// `x^i_s x^j_t`.
    pub fn theta_inv(&self, i: usize, j: usize, tp: u64, sp: u64) -> (u64, u64) {
        debug_assert!(i < j);
        match &self.flavor {
            ThetaFlavor::StandardProduct => {
                let c = tp + sp * self.n[j];
                (c % self.n[i], c / self.n[i])
            }
            ThetaFlavor::ExplicitTables(theta) => {
                theta.inverses[&(i, j)][tp as usize][sp as usize]
            }
        }
    }

    /// `n^p = ∏ n_i^{p_i}` as an exact big integer.
    pub fn npow(&self, degree: &Degree) -> BigUint {
        debug_assert_eq!(degree.rank(), self.rank());
        let mut out = BigUint::one();
        for (i, &p) in degree.0.iter().enumerate() {
            if p > 0 {
                out *= BigUint::from(self.n[i]).pow(p);
            }
        }
        out
    }

    /// All words of a fixed degree, in code order for coding specs and in
    /// lexicographic letter order otherwise.
    pub fn words_of_degree(self: &Arc<Self>, degree: &Degree) -> Vec<Word> {
        let mut words = vec![Vec::new()];
        for (color, &count) in degree.0.iter().enumerate() {
            for _ in 0..count {
                let mut next = Vec::with_capacity(words.len() * self.n[color] as usize);
                for w in &words {
                    for symbol in 0..self.n[color] {
                        let mut w2 = w.clone();
                        w2.push(Letter { color, symbol });
                        next.push(w2);
                    }
                }
                words = next;
            }
        }
        words
            .into_iter()
            .map(|letters| Word {
                spec: Arc::clone(self),
                letters,
                normal: true,
            })
            .collect()
    }
}

/// Report of the table validation run by [`validate_theta`].
#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub pairs_checked: usize,
    pub all_bijective: bool,
    pub matches_standard_formula: bool,
}

/// Re-verifies that every commutation table is a bijection and reports
/// whether the tables agree with the Euclidean-division formula.
///
/// Construction already rejects non-bijective tables, so on a live spec this
/// is a consistency report rather than a gate.
pub fn validate_theta(spec: &KGraphSpec) -> ThetaReport {
    let k = spec.rank();
    let mut pairs = 0;
    let mut bijective = true;
    for i in 0..k {
        for j in (i + 1)..k {
            pairs += 1;
            let mut seen = std::collections::BTreeSet::new();
            for s in 0..spec.alphabet(i) {
                for t in 0..spec.alphabet(j) {
                    bijective &= seen.insert(spec.theta(i, j, s, t));
                }
            }
            bijective &=
                seen.len() as u64 == spec.alphabet(i) * spec.alphabet(j);
        }
    }
    ThetaReport {
        pairs_checked: pairs,
        all_bijective: bijective,
        matches_standard_formula: spec.has_standard_coding(),
    }
}

/// Witness of a cubic-condition failure: the two routes from
/// `x^i_s x^j_t x^l_u` to reversed color order disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicWitness {
    pub colors: (usize, usize, usize),
    pub letters: (u64, u64, u64),
    pub route_ij_first: [Letter; 3],
    pub route_jl_first: [Letter; 3],
}

/// Checks the coherence condition making the pairwise tables define a
/// `k`-graph for `k ≥ 3` (vacuous for `k ≤ 2`).
///
/// For every triple of colors `i < j < l` and every letter triple, the word
/// `x^i_s x^j_t x^l_u` is rewritten to the reversed color order along the two
/// extremal routes; the routes must agree letterwise.
pub fn cubic_check(spec: &KGraphSpec) -> Result<(), CubicWitness> {
    let k = spec.rank();
    for i in 0..k {
        for j in (i + 1)..k {
            for l in (j + 1)..k {
                for s in 0..spec.alphabet(i) {
                    for t in 0..spec.alphabet(j) {
                        for u in 0..spec.alphabet(l) {
                            // Route A: swap (i,j) first.
                            let (t1, s1) = spec.theta(i, j, s, t);
                            let (u1, s2) = spec.theta(i, l, s1, u);
                            let (u2, t2) = spec.theta(j, l, t1, u1);
                            let a = [
                                Letter { color: l, symbol: u2 },
                                Letter { color: j, symbol: t2 },
                                Letter { color: i, symbol: s2 },
                            ];
                            // Route B: swap (j,l) first.
                            let (v1, w1) = spec.theta(j, l, t, u);
                            let (v2, x1) = spec.theta(i, l, s, v1);
                            let (y1, x2) = spec.theta(i, j, x1, w1);
                            let b = [
                                Letter { color: l, symbol: v2 },
                                Letter { color: j, symbol: y1 },
                                Letter { color: i, symbol: x2 },
                            ];
                            if a != b {
                                return Err(CubicWitness {
                                    colors: (i, j, l),
                                    letters: (s, t, u),
                                    route_ij_first: a,
                                    route_jl_first: b,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A word in the monoid, stored as a letter sequence over a shared spec.
///
/// Two words are equal iff their normal forms agree letterwise; for coding
/// specs this is the same as having equal degree and code.
#[derive(Clone)]
pub struct Word {
    spec: Arc<KGraphSpec>,
    letters: Vec<Letter>,
    normal: bool,
}

impl Word {
    pub fn empty(spec: Arc<KGraphSpec>) -> Self {
        Word {
            spec,
            letters: Vec::new(),
            normal: true,
        }
    }

    pub fn letter(spec: Arc<KGraphSpec>, color: usize, symbol: u64) -> Result<Self, KGraphError> {
        Word::new(spec, vec![Letter { color, symbol }])
    }

    pub fn new(spec: Arc<KGraphSpec>, letters: Vec<Letter>) -> Result<Self, KGraphError> {
        for &Letter { color, symbol } in &letters {
            if color >= spec.rank() {
                return Err(KGraphError::ColorOutOfRange(color));
            }
            if symbol >= spec.alphabet(color) {
                return Err(KGraphError::LetterOutOfRange(color, symbol));
            }
        }
        let normal = letters.windows(2).all(|w| w[0].color <= w[1].color);
        Ok(Word {
            spec,
            letters,
            normal,
        })
    }

    /// Parses the compact syntax `"x1:0 x2:1"` (1-based color, 0-based letter).
    pub fn parse(spec: &Arc<KGraphSpec>, input: &str) -> Result<Self, KGraphError> {
        let mut letters = Vec::new();
        for token in input.split_whitespace() {
            let rest = token
                .strip_prefix('x')
                .ok_or_else(|| KGraphError::ParseError(format!("bad letter `{token}`")))?;
            let (color, symbol) = rest
                .split_once(':')
                .ok_or_else(|| KGraphError::ParseError(format!("bad letter `{token}`")))?;
            let color: usize = color
                .parse()
                .map_err(|_| KGraphError::ParseError(format!("bad color in `{token}`")))?;
            if color == 0 {
                return Err(KGraphError::ParseError(format!(
                    "colors are 1-based in `{token}`"
                )));
            }
            let symbol: u64 = symbol
                .parse()
                .map_err(|_| KGraphError::ParseError(format!("bad symbol in `{token}`")))?;
            letters.push(Letter {
                color: color - 1,
                symbol,
            });
        }
        Word::new(Arc::clone(spec), letters)
    }

    pub fn spec(&self) -> &Arc<KGraphSpec> {
        &self.spec
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn degree(&self) -> Degree {
        let mut d = vec![0u32; self.spec.rank()];
        for l in &self.letters {
            d[l.color] += 1;
        }
        Degree(d)
    }

    /// The unique color-sorted form, obtained by bubbling inverted adjacent
    /// pairs through the inverse commutation tables. Terminates because each
    /// swap strictly decreases the inversion count; the result is independent
    /// of swap order whenever the cubic condition holds.
    pub fn normal_form(&self) -> Word {
        if self.normal {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        loop {
            let mut swapped = false;
            for m in 0..letters.len().saturating_sub(1) {
                let (a, b) = (letters[m], letters[m + 1]);
                if a.color > b.color {
                    let (s, t) = self.spec.theta_inv(b.color, a.color, a.symbol, b.symbol);
                    letters[m] = Letter {
                        color: b.color,
                        symbol: s,
                    };
                    letters[m + 1] = Letter {
                        color: a.color,
                        symbol: t,
                    };
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        Word {
            spec: Arc::clone(&self.spec),
            letters,
            normal: true,
        }
    }

    /// Degree and integer code in `[0, n^degree)`.
    ///
    /// Defined for coding specs only: a single letter codes to its symbol and
    /// `code(μν) = code(μ) + n^{d(μ)}·code(ν)`, which is invariant under the
    /// defining rewrites.
    pub fn encode(&self) -> Result<(Degree, BigUint), KGraphError> {
        self.spec.require_standard_coding()?;
        let mut code = BigUint::zero();
        for l in self.letters.iter().rev() {
            code = code * self.spec.alphabet(l.color) + l.symbol;
        }
        Ok((self.degree(), code))
    }

    /// Inverse of [`Word::encode`] on normal forms.
    pub fn decode(
        spec: &Arc<KGraphSpec>,
        degree: &Degree,
        code: &BigUint,
    ) -> Result<Word, KGraphError> {
        spec.require_standard_coding()?;
        if degree.rank() != spec.rank() {
            return Err(KGraphError::DegreeOutOfRange);
        }
        if *code >= spec.npow(degree) {
            return Err(KGraphError::CodeOutOfRange(code.clone(), degree.0.clone()));
        }
        let mut rest = code.clone();
        let mut letters = Vec::with_capacity(degree.total() as usize);
        for (color, &count) in degree.0.iter().enumerate() {
            let radix = BigUint::from(spec.alphabet(color));
            for _ in 0..count {
                let (q, r) = rest.div_rem(&radix);
                letters.push(Letter {
                    color,
                    symbol: r.to_u64().expect("letter fits u64"),
                });
                rest = q;
            }
        }
        Ok(Word {
            spec: Arc::clone(spec),
            letters,
            normal: true,
        })
    }

    /// Normal form of the concatenation.
    pub fn multiply(&self, other: &Word) -> Result<Word, KGraphError> {
        if self.spec != other.spec {
            return Err(KGraphError::SpecMismatch);
        }
        if self.spec.has_standard_coding() {
            // code(result) = code(self) + n^{d(self)} · code(other)
            let (d1, c1) = self.encode()?;
            let (d2, c2) = other.encode()?;
            let code = c1 + self.spec.npow(&d1) * c2;
            return Word::decode(&self.spec, &d1.add(&d2), &code);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            spec: Arc::clone(&self.spec),
            letters,
            normal: false,
        }
        .normal_form())
    }

    /// Splits `w = αβ` with `d(α) = front`; unique by the factorization
    /// property. Works by pulling the required letters to the front through
    /// forward rewrites, so it applies to explicit tables as well.
    pub fn factorize(&self, front: &Degree) -> Result<(Word, Word), KGraphError> {
        if front.rank() != self.spec.rank() || !front.le(&self.degree()) {
            return Err(KGraphError::DegreeOutOfRange);
        }
        let mut rest = self.normal_form().letters;
        let mut alpha = Vec::with_capacity(front.total() as usize);
        let mut remaining = front.clone();
        while let Some(color) = remaining.0.iter().position(|&c| c > 0) {
            let pos = rest
                .iter()
                .position(|l| l.color == color)
                .expect("front ≤ degree");
            // Bubble the letter to the front; every pair passed has a
            // strictly smaller color, so the forward table applies.
            for m in (0..pos).rev() {
                let (small, big) = (rest[m], rest[m + 1]);
                let (tp, sp) =
                    self.spec
                        .theta(small.color, big.color, small.symbol, big.symbol);
                rest[m] = Letter {
                    color: big.color,
                    symbol: tp,
                };
                rest[m + 1] = Letter {
                    color: small.color,
                    symbol: sp,
                };
            }
            alpha.push(rest.remove(0));
            remaining.0[color] -= 1;
        }
        let alpha = Word {
            spec: Arc::clone(&self.spec),
            letters: alpha,
            normal: true,
        };
        let beta = Word {
            spec: Arc::clone(&self.spec),
            letters: rest,
            normal: true,
        };
        Ok((alpha, beta))
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        if self.spec != other.spec {
            return false;
        }
        match (self.normal, other.normal) {
            (true, true) => self.letters == other.letters,
            _ => self.normal_form().letters == other.normal_form().letters,
        }
    }
}

impl Eq for Word {}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Normal form computed along a caller-supplied schedule: at each step the
/// `pick`-th inverted adjacent pair (in left-to-right order) is resolved.
/// Used to exercise confluence; agrees with [`Word::normal_form`] whenever
/// the cubic condition holds.
pub fn normal_form_with_schedule<F>(word: &Word, mut pick: F) -> Word
where
    F: FnMut(usize) -> usize,
{
    let spec = Arc::clone(&word.spec);
    let mut letters = word.letters.clone();
    loop {
        let inversions: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&m| letters[m].color > letters[m + 1].color)
            .collect();
        if inversions.is_empty() {
            break;
        }
        let m = inversions[pick(inversions.len()) % inversions.len()];
        let (a, b) = (letters[m], letters[m + 1]);
        let (s, t) = spec.theta_inv(b.color, a.color, a.symbol, b.symbol);
        letters[m] = Letter {
            color: b.color,
            symbol: s,
        };
        letters[m + 1] = Letter {
            color: a.color,
            symbol: t,
        };
    }
    Word {
        spec,
        letters,
        normal: true,
    }
}

/// Reads a spec from its JSON document form:
/// `{"n":[2,3],"theta":"standard"}` for the standard product, or explicit
/// tables keyed by 1-based color pairs with `"t',s'"` entries indexed
/// `[s][t]`: `{"n":[2,2],"theta":{"(1,2)":[["0,0","1,0"],["0,1","1,1"]]}}`.
pub fn spec_from_json(text: &str) -> Result<Arc<KGraphSpec>, KGraphError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| KGraphError::ParseError(format!("invalid JSON: {e}")))?;
    let n: Vec<u64> = value
        .get("n")
        .and_then(|v| v.as_array())
        .ok_or_else(|| KGraphError::ParseError("missing \"n\" array".into()))?
        .iter()
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| KGraphError::ParseError("sizes must be positive integers".into()))
        })
        .collect::<Result<_, _>>()?;
    match value.get("theta") {
        None | Some(serde_json::Value::String(_)) => {
            if let Some(serde_json::Value::String(s)) = value.get("theta") {
                if s != "standard" {
                    return Err(KGraphError::ParseError(format!(
                        "unknown theta flavor `{s}`"
                    )));
                }
            }
            KGraphSpec::standard(n)
        }
        Some(serde_json::Value::Object(tables)) => {
            let mut raw = BTreeMap::new();
            for (key, table) in tables {
                let pair = key
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .split_once(',')
                    .ok_or_else(|| {
                        KGraphError::ParseError(format!("bad table key `{key}`"))
                    })?;
                let i: usize = pair.0.trim().parse().map_err(|_| {
                    KGraphError::ParseError(format!("bad table key `{key}`"))
                })?;
                let j: usize = pair.1.trim().parse().map_err(|_| {
                    KGraphError::ParseError(format!("bad table key `{key}`"))
                })?;
                if i == 0 || j == 0 || i >= j {
                    return Err(KGraphError::ParseError(format!(
                        "table keys are 1-based pairs (i,j) with i<j, got `{key}`"
                    )));
                }
                let rows = table
                    .as_array()
                    .ok_or_else(|| KGraphError::ParseError("tables must be arrays".into()))?;
                let mut parsed = Vec::with_capacity(rows.len());
                for row in rows {
                    let cells = row
                        .as_array()
                        .ok_or_else(|| KGraphError::ParseError("table rows must be arrays".into()))?;
                    let mut out_row = Vec::with_capacity(cells.len());
                    for cell in cells {
                        let text = cell.as_str().ok_or_else(|| {
                            KGraphError::ParseError("table entries are \"t',s'\" strings".into())
                        })?;
                        let (tp, sp) = text.split_once(',').ok_or_else(|| {
                            KGraphError::ParseError(format!("bad table entry `{text}`"))
                        })?;
                        let tp: u64 = tp.trim().parse().map_err(|_| {
                            KGraphError::ParseError(format!("bad table entry `{text}`"))
                        })?;
                        let sp: u64 = sp.trim().parse().map_err(|_| {
                            KGraphError::ParseError(format!("bad table entry `{text}`"))
                        })?;
                        out_row.push((tp, sp));
                    }
                    parsed.push(out_row);
                }
                raw.insert((i - 1, j - 1), parsed);
            }
            KGraphSpec::with_tables(n, raw)
        }
        Some(other) => Err(KGraphError::ParseError(format!(
            "theta must be \"standard\" or a table object, got {other}"
        ))),
    }
}

/// The identical-alphabet flip tables: `x^i_s x^j_t = x^j_s x^i_t` for all
/// pairs. Satisfies the cubic condition for every rank.
pub fn flip_tables(n: u64, rank: usize) -> Result<Arc<KGraphSpec>, KGraphError> {
    let mut raw = BTreeMap::new();
    for i in 0..rank {
        for j in (i + 1)..rank {
            let table: Vec<Vec<(u64, u64)>> = (0..n)
                .map(|s| (0..n).map(|t| (s, t)).collect())
                .collect();
            raw.insert((i, j), table);
        }
    }
    KGraphSpec::with_tables(vec![n; rank], raw)
}
