//! Exact operator semantics on the integer basis of `ℓ²(Z)`.
//!
//! Every generator acts on basis indices by an affine map restricted to a
//! residue class: the bilateral shift `f` sends `m ↦ m+1`, the isometry
//! `g_{i,s}` sends `m ↦ s + n_i·m`, and adjoints invert on the image class.
//! That class of partial maps is closed under composition, adjoints and
//! sums, so a formal word in the generators has a computable canonical form
//! — a finite list of scalar-weighted affine maps per residue class at a
//! common modulus — and operator-word equality is decidable and exact.

mod relations;
mod scalar;

pub use relations::{
    kernel_witness, verify_properties, verify_qn_homomorphism, verify_universal_relations,
    KernelWitness,
};
pub use scalar::ExactScalar;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{crt_pair, factorize_u64, lcm_biguint, solve_linear_congruence};
use crate::kgraph::{KGraphError, KGraphSpec};

/// Classes at a common modulus above this bound are refused; everything in
/// the verification suites stays far below it.
pub const MODULUS_CAP: u64 = 1 << 21;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OperError {
    #[error(transparent)]
    KGraph(#[from] KGraphError),
    #[error("generator {0} is not valid for this spec/model")]
    InvalidGenerator(String),
    #[error("common modulus {0} exceeds the supported bound")]
    ModulusTooLarge(BigUint),
    #[error("cannot parse operator term: {0}")]
    ParseError(String),
    #[error("certificate is invalid: {0}")]
    InvalidCertificate(String),
}

/// Formal generators. `F`/`G` present the boundary quotient of the product
/// of odometers; `U`/`S` present the Cuntz algebra of the `ax+b`-monoid over
/// the natural numbers, where `u^t s_n` matches `g` on indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    F,
    FStar,
    G(usize, u64),
    GStar(usize, u64),
    U,
    UStar,
    S(u64),
    SStar(u64),
}

impl Generator {
    pub fn adjoint(&self) -> Generator {
        match *self {
            Generator::F => Generator::FStar,
            Generator::FStar => Generator::F,
            Generator::G(i, s) => Generator::GStar(i, s),
            Generator::GStar(i, s) => Generator::G(i, s),
            Generator::U => Generator::UStar,
            Generator::UStar => Generator::U,
            Generator::S(n) => Generator::SStar(n),
            Generator::SStar(n) => Generator::S(n),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::F => write!(f, "f"),
            Generator::FStar => write!(f, "f*"),
            Generator::G(i, s) => write!(f, "g({},{})", i + 1, s),
            Generator::GStar(i, s) => write!(f, "g({},{})*", i + 1, s),
            Generator::U => write!(f, "u"),
            Generator::UStar => write!(f, "u*"),
            Generator::S(n) => write!(f, "s({n})"),
            Generator::SStar(n) => write!(f, "s({n})*"),
        }
    }
}

/// Which presentation a term is written in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    /// Generators `f`, `g(i,s)` only.
    QFZ,
    /// Additionally admits `u` and `s(n)` for arbitrary positive `n`.
    QN,
}

/// A formal finite sum of scalar-weighted generator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpTerm {
    terms: Vec<(ExactScalar, Vec<Generator>)>,
}

impl OpTerm {
    pub fn zero() -> Self {
        OpTerm { terms: Vec::new() }
    }

    pub fn one() -> Self {
        OpTerm {
            terms: vec![(ExactScalar::one(), Vec::new())],
        }
    }

    pub fn generator(g: Generator) -> Self {
        OpTerm {
            terms: vec![(ExactScalar::one(), vec![g])],
        }
    }

    pub fn word(gens: Vec<Generator>) -> Self {
        OpTerm {
            terms: vec![(ExactScalar::one(), gens)],
        }
    }

    pub fn scaled_word(scalar: ExactScalar, gens: Vec<Generator>) -> Self {
        OpTerm {
            terms: vec![(scalar, gens)],
        }
    }

    /// `f^l`, with negative powers through the adjoint.
    pub fn f_power(l: i64) -> Vec<Generator> {
        let gen = if l >= 0 { Generator::F } else { Generator::FStar };
        vec![gen; l.unsigned_abs() as usize]
    }

    /// `u^l`, with negative powers through the adjoint.
    pub fn u_power(l: i64) -> Vec<Generator> {
        let gen = if l >= 0 { Generator::U } else { Generator::UStar };
        vec![gen; l.unsigned_abs() as usize]
    }

    pub fn terms(&self) -> &[(ExactScalar, Vec<Generator>)] {
        &self.terms
    }

    pub fn add(&self, other: &OpTerm) -> OpTerm {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OpTerm { terms }
    }

    pub fn mul(&self, other: &OpTerm) -> OpTerm {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (s1, w1) in &self.terms {
            for (s2, w2) in &other.terms {
                let mut word = w1.clone();
                word.extend_from_slice(w2);
                terms.push((s1.mul(s2), word));
            }
        }
        OpTerm { terms }
    }

    pub fn scale(&self, scalar: &ExactScalar) -> OpTerm {
        OpTerm {
            terms: self
                .terms
                .iter()
                .map(|(s, w)| (scalar.mul(s), w.clone()))
                .collect(),
        }
    }

    /// Formal adjoint: reverse each word and star each letter (weights are
    /// real, so they are fixed).
    pub fn adjoint(&self) -> OpTerm {
        OpTerm {
            terms: self
                .terms
                .iter()
                .map(|(s, w)| {
                    (
                        s.clone(),
                        w.iter().rev().map(Generator::adjoint).collect(),
                    )
                })
                .collect(),
        }
    }

    /// Parses a product of generators: `"f* g(1,0) g(1,0)*"` with
    /// whitespace-separated letters and 1-based color indices.
    pub fn parse(input: &str) -> Result<OpTerm, OperError> {
        let mut gens = Vec::new();
        for token in input.split_whitespace() {
            gens.push(parse_generator(token)?);
        }
        Ok(OpTerm::word(gens))
    }
}

fn parse_generator(token: &str) -> Result<Generator, OperError> {
    let (body, star) = match token.strip_suffix('*') {
        Some(body) => (body, true),
        None => (token, false),
    };
    let plain = match body {
        "f" => Some(Generator::F),
        "u" => Some(Generator::U),
        _ => None,
    };
    if let Some(g) = plain {
        return Ok(if star { g.adjoint() } else { g });
    }
    let bad = || OperError::ParseError(format!("bad generator `{token}`"));
    if let Some(args) = body.strip_prefix("g(").and_then(|r| r.strip_suffix(')')) {
        let (i, s) = args.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let s: u64 = s.trim().parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        let g = Generator::G(i - 1, s);
        return Ok(if star { g.adjoint() } else { g });
    }
    if let Some(arg) = body.strip_prefix("s(").and_then(|r| r.strip_suffix(')')) {
        let n: u64 = arg.trim().parse().map_err(|_| bad())?;
        let g = Generator::S(n);
        return Ok(if star { g.adjoint() } else { g });
    }
    Err(bad())
}

impl fmt::Display for OpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(s, w)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                if s.is_one() {
                    word
                } else {
                    format!("({s})·{word}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// `m ↦ (a·m + b)/c`, with `gcd(a, b, c) = 1` and `a, c ≥ 1`. On any residue
/// class where such a map is integer-valued this triple is unique, which is
/// what makes the canonical form canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AffineMap {
    a: BigUint,
    b: BigInt,
    c: BigUint,
}

impl AffineMap {
    fn identity() -> Self {
        AffineMap {
            a: BigUint::one(),
            b: BigInt::zero(),
            c: BigUint::one(),
        }
    }

    fn new(a: BigUint, b: BigInt, c: BigUint) -> Self {
        debug_assert!(!a.is_zero() && !c.is_zero());
        let g = a.gcd(&c).gcd(b.magnitude());
        if g.is_one() {
            AffineMap { a, b, c }
        } else {
            let gi = BigInt::from(g.clone());
            AffineMap {
                a: a / &g,
                b: b / gi,
                c: c / &g,
            }
        }
    }

    pub fn apply(&self, m: &BigInt) -> Option<BigInt> {
        let num = BigInt::from(self.a.clone()) * m + &self.b;
        let den = BigInt::from(self.c.clone());
        let (q, r) = num.div_rem(&den);
        r.is_zero().then_some(q)
    }

    pub fn describe(&self) -> String {
        let mut num = if self.a.is_one() {
            "m".to_string()
        } else {
            format!("{}m", self.a)
        };
        if self.b.is_positive() {
            num = format!("{num}+{}", self.b);
        } else if self.b.is_negative() {
            num = format!("{num}{}", self.b);
        }
        if self.c.is_one() {
            format!("m -> {num}")
        } else {
            format!("m -> ({num})/{}", self.c)
        }
    }
}

/// One scalar-weighted affine map on one residue class.
#[derive(Clone, Debug)]
struct Piece {
    dom_mod: BigUint,
    dom_res: BigUint,
    map: AffineMap,
    weight: ExactScalar,
}

impl Piece {
    fn identity(weight: ExactScalar) -> Self {
        Piece {
            dom_mod: BigUint::one(),
            dom_res: BigUint::zero(),
            map: AffineMap::identity(),
            weight,
        }
    }
}

/// Composition `second ∘ first` of partial maps; `None` when the domain is
/// empty.
fn compose(second: &Piece, first: &Piece) -> Option<Piece> {
    let a1 = BigInt::from(first.map.a.clone());
    let b1 = first.map.b.clone();
    let c1 = BigInt::from(first.map.c.clone());
    // (a1 m + b1)/c1 ≡ second.res (mod second.mod)
    let modulus = &c1 * BigInt::from(second.dom_mod.clone());
    let rhs = &c1 * BigInt::from(second.dom_res.clone()) - &b1;
    let (m0, step) = solve_linear_congruence(&a1, &rhs, &modulus)?;
    let (res, dom_mod) = crt_pair(
        &m0,
        &step,
        &BigInt::from(first.dom_res.clone()),
        &BigInt::from(first.dom_mod.clone()),
    )?;
    let a2 = BigInt::from(second.map.a.clone());
    let map = AffineMap::new(
        (&a2 * &a1).to_biguint().expect("positive slope"),
        &a2 * &b1 + &second.map.b * &c1,
        (&c1 * BigInt::from(second.map.c.clone()))
            .to_biguint()
            .expect("positive denominator"),
    );
    Some(Piece {
        dom_mod: dom_mod.to_biguint().expect("positive modulus"),
        dom_res: res.to_biguint().expect("canonical residue"),
        map,
        weight: second.weight.mul(&first.weight),
    })
}

/// Canonical form of an operator: per residue class at a common modulus, a
/// sorted duplicate-free list of weighted affine maps. The modulus is
/// reduced to the smallest one on which the class data is constant, so the
/// form is a fixed point of re-expression at any multiple modulus.
#[derive(Clone, Debug)]
pub struct CanonicalOp {
    modulus: u64,
    classes: Vec<Vec<(AffineMap, ExactScalar)>>,
}

impl CanonicalOp {
    fn from_pieces(pieces: Vec<Piece>) -> Result<CanonicalOp, OperError> {
        let mut modulus = BigUint::one();
        for piece in &pieces {
            modulus = lcm_biguint(&modulus, &piece.dom_mod);
        }
        if modulus > BigUint::from(MODULUS_CAP) {
            return Err(OperError::ModulusTooLarge(modulus));
        }
        let l = modulus.to_u64().expect("below cap") as usize;
        let mut classes: Vec<Vec<(AffineMap, ExactScalar)>> = vec![Vec::new(); l];
        for piece in pieces {
            let m = piece.dom_mod.to_u64().expect("divides modulus") as usize;
            let mut r = piece.dom_res.to_u64().expect("residue below modulus") as usize;
            while r < l {
                classes[r].push((piece.map.clone(), piece.weight.clone()));
                r += m;
            }
        }
        for class in &mut classes {
            merge_class(class);
        }
        Ok(CanonicalOp {
            modulus: l as u64,
            classes,
        }
        .coarsen())
    }

    /// Zero operator.
    pub fn zero() -> CanonicalOp {
        CanonicalOp {
            modulus: 1,
            classes: vec![Vec::new()],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn class(&self, residue: u64) -> impl Iterator<Item = (&AffineMap, &ExactScalar)> {
        self.classes[residue as usize].iter().map(|(m, w)| (m, w))
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(Vec::is_empty)
    }

    /// Re-expresses the operator at a multiple of its modulus.
    pub fn refine(&self, modulus: u64) -> CanonicalOp {
        assert_eq!(modulus % self.modulus, 0, "refinement must be a multiple");
        let classes = (0..modulus as usize)
            .map(|r| self.classes[r % self.modulus as usize].clone())
            .collect();
        CanonicalOp { modulus, classes }
    }

    /// Collapses the modulus to the smallest divisor on which the class
    /// lists are constant. Falls back to the current modulus if it cannot
    /// be factored at desk scale.
    fn coarsen(self) -> CanonicalOp {
        let Ok(factors) = factorize_u64(self.modulus) else {
            return self;
        };
        let mut op = self;
        for (&p, _) in factors.iter() {
            loop {
                if op.modulus % p != 0 {
                    break;
                }
                let d = op.modulus / p;
                let du = d as usize;
                let constant = (0..op.modulus as usize)
                    .all(|r| op.classes[r] == op.classes[r % du]);
                if !constant {
                    break;
                }
                op = CanonicalOp {
                    modulus: d,
                    classes: op.classes[..du].to_vec(),
                };
            }
        }
        op
    }

    /// Exact equality as operators: compare at the least common refinement.
    pub fn equal(&self, other: &CanonicalOp) -> Result<bool, OperError> {
        let l = self.modulus.lcm(&other.modulus);
        if l > MODULUS_CAP * 4 {
            return Err(OperError::ModulusTooLarge(BigUint::from(l)));
        }
        Ok(self.refine(l).classes == other.refine(l).classes)
    }

    /// Image of the basis vector `δ_m` as a sorted weighted index list.
    pub fn apply(&self, m: &BigInt) -> Vec<(ExactScalar, BigInt)> {
        let r = m
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits") as usize;
        let mut out: Vec<(ExactScalar, BigInt)> = Vec::new();
        for (map, weight) in &self.classes[r] {
            let image = map.apply(m).expect("domain guarantees divisibility");
            match out.binary_search_by(|(_, idx)| idx.cmp(&image)) {
                Ok(pos) => {
                    let merged = out[pos].0.add(weight);
                    if merged.is_zero() {
                        out.remove(pos);
                    } else {
                        out[pos].0 = merged;
                    }
                }
                Err(pos) => out.insert(pos, (weight.clone(), image)),
            }
        }
        out
    }

    /// Human-readable one-line rendering, class by class.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (r, class) in self.classes.iter().enumerate() {
            for (map, weight) in class {
                let scope = if self.modulus == 1 {
                    "all m".to_string()
                } else {
                    format!("m ≡ {r} (mod {})", self.modulus)
                };
                let w = if weight.is_one() {
                    String::new()
                } else {
                    format!("{weight} · ")
                };
                parts.push(format!("[{scope}] {w}{}", map.describe()));
            }
        }
        parts.join("; ")
    }
}

fn merge_class(class: &mut Vec<(AffineMap, ExactScalar)>) {
    class.sort_by(|x, y| x.0.cmp(&y.0));
    let mut merged: Vec<(AffineMap, ExactScalar)> = Vec::with_capacity(class.len());
    for (map, weight) in class.drain(..) {
        match merged.last_mut() {
            Some((last_map, last_weight)) if *last_map == map => {
                *last_weight = last_weight.add(&weight);
            }
            _ => merged.push((map, weight)),
        }
    }
    merged.retain(|(_, w)| !w.is_zero());
    *class = merged;
}

impl PartialEq for CanonicalOp {
    fn eq(&self, other: &Self) -> bool {
        self.equal(other).expect("moduli at desk scale")
    }
}

impl Eq for CanonicalOp {}

/// Interpretation context: the spec fixing alphabet sizes, plus optional
/// overrides replacing a generator's primitive map (used to probe how the
/// relation suites react to a broken model).
#[derive(Clone, Debug)]
pub struct L2Model {
    spec: Arc<KGraphSpec>,
    overrides: Vec<(Generator, Piece)>,
}

impl L2Model {
    pub fn new(spec: Arc<KGraphSpec>) -> Self {
        L2Model {
            spec,
            overrides: Vec::new(),
        }
    }

    pub fn spec(&self) -> &Arc<KGraphSpec> {
        &self.spec
    }

    /// Replaces a generator's action by `m ↦ (a·m + b)/c` on
    /// `m ≡ res (mod md)`.
    pub fn override_generator(mut self, gen: Generator, a: u64, b: i64, c: u64, md: u64, res: u64) -> Self {
        self.overrides.push((
            gen,
            Piece {
                dom_mod: BigUint::from(md),
                dom_res: BigUint::from(res),
                map: AffineMap::new(BigUint::from(a), BigInt::from(b), BigUint::from(c)),
                weight: ExactScalar::one(),
            },
        ));
        self
    }

    fn primitive(&self, gen: Generator, model: Model) -> Result<Piece, OperError> {
        if let Some((_, piece)) = self.overrides.iter().find(|(g, _)| *g == gen) {
            return Ok(piece.clone());
        }
        if model == Model::QFZ {
            if matches!(
                gen,
                Generator::U | Generator::UStar | Generator::S(_) | Generator::SStar(_)
            ) {
                return Err(OperError::InvalidGenerator(gen.to_string()));
            }
        }
        let one = || BigUint::one();
        let piece = match gen {
            Generator::F | Generator::U => Piece {
                dom_mod: one(),
                dom_res: BigUint::zero(),
                map: AffineMap::new(one(), BigInt::one(), one()),
                weight: ExactScalar::one(),
            },
            Generator::FStar | Generator::UStar => Piece {
                dom_mod: one(),
                dom_res: BigUint::zero(),
                map: AffineMap::new(one(), -BigInt::one(), one()),
                weight: ExactScalar::one(),
            },
            Generator::G(i, s) => {
                let n = self.check_letter(i, s)?;
                Piece {
                    dom_mod: one(),
                    dom_res: BigUint::zero(),
                    map: AffineMap::new(BigUint::from(n), BigInt::from(s), one()),
                    weight: ExactScalar::one(),
                }
            }
            Generator::GStar(i, s) => {
                let n = self.check_letter(i, s)?;
                Piece {
                    dom_mod: BigUint::from(n),
                    dom_res: BigUint::from(s),
                    map: AffineMap::new(one(), -BigInt::from(s), BigUint::from(n)),
                    weight: ExactScalar::one(),
                }
            }
            Generator::S(n) => {
                if n == 0 {
                    return Err(OperError::InvalidGenerator(gen.to_string()));
                }
                Piece {
                    dom_mod: one(),
                    dom_res: BigUint::zero(),
                    map: AffineMap::new(BigUint::from(n), BigInt::zero(), one()),
                    weight: ExactScalar::one(),
                }
            }
            Generator::SStar(n) => {
                if n == 0 {
                    return Err(OperError::InvalidGenerator(gen.to_string()));
                }
                Piece {
                    dom_mod: BigUint::from(n),
                    dom_res: BigUint::zero(),
                    map: AffineMap::new(one(), BigInt::zero(), BigUint::from(n)),
                    weight: ExactScalar::one(),
                }
            }
        };
        Ok(piece)
    }

    fn check_letter(&self, color: usize, symbol: u64) -> Result<u64, OperError> {
        if color >= self.spec.rank() {
            return Err(OperError::KGraph(KGraphError::ColorOutOfRange(color)));
        }
        let n = self.spec.alphabet(color);
        if symbol >= n {
            return Err(OperError::KGraph(KGraphError::LetterOutOfRange(
                color, symbol,
            )));
        }
        Ok(n)
    }

    /// Canonical form of a formal term: each generator word composes to at
    /// most one affine piece (empty composition kills the word), and the
    /// pieces are summed and canonicalized at the common modulus.
    pub fn semantics(&self, term: &OpTerm, model: Model) -> Result<CanonicalOp, OperError> {
        let mut pieces = Vec::new();
        for (scalar, word) in &term.terms {
            if scalar.is_zero() {
                continue;
            }
            let mut acc = Piece::identity(scalar.clone());
            let mut alive = true;
            for gen in word.iter().rev() {
                let prim = self.primitive(*gen, model)?;
                match compose(&prim, &acc) {
                    Some(next) => acc = next,
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                pieces.push(acc);
            }
        }
        CanonicalOp::from_pieces(pieces)
    }

    /// Decidable operator equality: canonical forms compared exactly.
    pub fn op_equal(&self, a: &OpTerm, b: &OpTerm, model: Model) -> Result<bool, OperError> {
        self.semantics(a, model)?.equal(&self.semantics(b, model)?)
    }

    /// Direct evaluation of a term on the basis vector `δ_m`, one generator
    /// at a time. This path never touches the congruence composition
    /// machinery, so it serves as an independent window oracle for
    /// [`L2Model::op_equal`].
    pub fn eval(
        &self,
        term: &OpTerm,
        m: &BigInt,
        model: Model,
    ) -> Result<Vec<(ExactScalar, BigInt)>, OperError> {
        let mut out: Vec<(ExactScalar, BigInt)> = Vec::new();
        for (scalar, word) in &term.terms {
            if scalar.is_zero() {
                continue;
            }
            let mut idx = m.clone();
            let mut alive = true;
            for gen in word.iter().rev() {
                let prim = self.primitive(*gen, model)?;
                let residue = idx.mod_floor(&BigInt::from(prim.dom_mod.clone()));
                if residue != BigInt::from(prim.dom_res.clone()) {
                    alive = false;
                    break;
                }
                match prim.map.apply(&idx) {
                    Some(next) => idx = next,
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if !alive {
                continue;
            }
            match out.binary_search_by(|(_, i)| i.cmp(&idx)) {
                Ok(pos) => {
                    let merged = out[pos].0.add(scalar);
                    if merged.is_zero() {
                        out.remove(pos);
                    } else {
                        out[pos].0 = merged;
                    }
                }
                Err(pos) => out.insert(pos, (scalar.clone(), idx)),
            }
        }
        Ok(out)
    }

    /// First residue class where two terms disagree, as a printable witness.
    pub fn first_difference(
        &self,
        a: &OpTerm,
        b: &OpTerm,
        model: Model,
    ) -> Result<Option<String>, OperError> {
        let ca = self.semantics(a, model)?;
        let cb = self.semantics(b, model)?;
        let l = ca.modulus.lcm(&cb.modulus);
        let ra = ca.refine(l);
        let rb = cb.refine(l);
        for r in 0..l as usize {
            if ra.classes[r] != rb.classes[r] {
                let show = |class: &Vec<(AffineMap, ExactScalar)>| {
                    if class.is_empty() {
                        "0".to_string()
                    } else {
                        class
                            .iter()
                            .map(|(m, w)| format!("{} · {}", w, m.describe()))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    }
                };
                return Ok(Some(format!(
                    "on m ≡ {r} (mod {l}): left = {}, right = {}",
                    show(&ra.classes[r]),
                    show(&rb.classes[r])
                )));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: &[u64]) -> L2Model {
        L2Model::new(KGraphSpec::standard(n.to_vec()).unwrap())
    }

    fn eval_indices(model: &L2Model, term: &OpTerm, m: i64) -> Vec<(ExactScalar, BigInt)> {
        model.eval(term, &BigInt::from(m), Model::QFZ).unwrap()
    }

    #[test]
    fn generator_semantics_examples() {
        let m = model(&[2, 3]);
        // g(1,0): total doubling
        let g = m
            .semantics(&OpTerm::generator(Generator::G(0, 0)), Model::QFZ)
            .unwrap();
        assert_eq!(g.modulus(), 1);
        assert_eq!(
            g.apply(&BigInt::from(3)),
            vec![(ExactScalar::one(), BigInt::from(6))]
        );

        // isometry: g* g = 1
        let gsg = OpTerm::word(vec![Generator::GStar(0, 0), Generator::G(0, 0)]);
        assert!(m.op_equal(&gsg, &OpTerm::one(), Model::QFZ).unwrap());

        // range projection: g g* is the indicator of the even class
        let ggs = OpTerm::word(vec![Generator::G(0, 0), Generator::GStar(0, 0)]);
        let c = m.semantics(&ggs, Model::QFZ).unwrap();
        assert_eq!(c.modulus(), 2);
        assert_eq!(c.apply(&BigInt::from(4)), vec![(ExactScalar::one(), BigInt::from(4))]);
        assert!(c.apply(&BigInt::from(3)).is_empty());
    }

    #[test]
    fn eval_examples() {
        let m = model(&[2, 3]);
        assert_eq!(
            eval_indices(&m, &OpTerm::generator(Generator::F), 0),
            vec![(ExactScalar::one(), BigInt::from(1))]
        );
        assert!(eval_indices(&m, &OpTerm::generator(Generator::GStar(0, 0)), 3).is_empty());
        assert_eq!(
            eval_indices(&m, &OpTerm::generator(Generator::G(0, 0)), 3),
            vec![(ExactScalar::one(), BigInt::from(6))]
        );
    }

    #[test]
    fn shift_relation_and_inequality() {
        let m = model(&[2, 3]);
        // f·g(1,1) = g(1,0)·f for n_1 = 2
        let left = OpTerm::word(vec![Generator::F, Generator::G(0, 1)]);
        let right = OpTerm::word(vec![Generator::G(0, 0), Generator::F]);
        assert!(m.op_equal(&left, &right, Model::QFZ).unwrap());
        // f ≠ f*
        assert!(!m
            .op_equal(
                &OpTerm::generator(Generator::F),
                &OpTerm::generator(Generator::FStar),
                Model::QFZ
            )
            .unwrap());
    }

    #[test]
    fn composite_words_collapse() {
        // g(1,0)² = g(2,0) over sizes (2,4): both quadruple the index
        let m = model(&[2, 4]);
        let left = OpTerm::word(vec![Generator::G(0, 0), Generator::G(0, 0)]);
        let right = OpTerm::generator(Generator::G(1, 0));
        assert!(m.op_equal(&left, &right, Model::QFZ).unwrap());
    }

    #[test]
    fn defect_free_sum_is_identity() {
        let m = model(&[2, 3]);
        for i in 0..2 {
            let mut sum = OpTerm::zero();
            let n = m.spec().alphabet(i);
            for s in 0..n {
                sum = sum.add(&OpTerm::word(vec![
                    Generator::G(i, s),
                    Generator::GStar(i, s),
                ]));
            }
            assert!(m.op_equal(&sum, &OpTerm::one(), Model::QFZ).unwrap());
        }
    }

    #[test]
    fn canonical_form_is_refinement_fixed_point() {
        let m = model(&[2, 3]);
        let term = OpTerm::word(vec![Generator::G(0, 1), Generator::GStar(0, 1)])
            .add(&OpTerm::scaled_word(
                ExactScalar::sqrt_integer(2),
                vec![Generator::F, Generator::F],
            ));
        let canon = m.semantics(&term, Model::QFZ).unwrap();
        for factor in [2u64, 3, 6, 12] {
            let refined = canon.refine(canon.modulus() * factor);
            let back = CanonicalOp {
                modulus: refined.modulus,
                classes: refined.classes.clone(),
            }
            .coarsen();
            assert_eq!(back.modulus(), canon.modulus());
            assert!(back.equal(&canon).unwrap());
        }
    }

    #[test]
    fn semantics_is_multiplicative_smoke() {
        let m = model(&[2, 3]);
        let a = OpTerm::word(vec![Generator::F, Generator::G(0, 1)]);
        let b = OpTerm::word(vec![Generator::GStar(0, 0), Generator::F]);
        let ab = a.mul(&b);
        // window check against generator-by-generator evaluation
        for mm in -30i64..=30 {
            let direct = m.eval(&ab, &BigInt::from(mm), Model::QFZ).unwrap();
            let canonical = m
                .semantics(&ab, Model::QFZ)
                .unwrap()
                .apply(&BigInt::from(mm));
            let canonical: Vec<(ExactScalar, BigInt)> =
                canonical.into_iter().map(|(w, i)| (w, i)).collect();
            assert_eq!(direct, canonical, "at m={mm}");
        }
    }

    #[test]
    fn adjoint_flips_maps() {
        let m = model(&[2, 3]);
        let g = OpTerm::generator(Generator::G(1, 2));
        let gs = g.adjoint();
        // ⟨g δ_a, δ_b⟩ = ⟨δ_a, g* δ_b⟩ over a window
        for a in -10i64..=10 {
            let ga = m.eval(&g, &BigInt::from(a), Model::QFZ).unwrap();
            for b in -20i64..=20 {
                let gsb = m.eval(&gs, &BigInt::from(b), Model::QFZ).unwrap();
                let lhs = ga
                    .iter()
                    .filter(|(_, idx)| *idx == BigInt::from(b))
                    .count();
                let rhs = gsb
                    .iter()
                    .filter(|(_, idx)| *idx == BigInt::from(a))
                    .count();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn qn_model_generators() {
        let m = model(&[2, 3]);
        // u^1 s(2): m ↦ 2m + 1, matching g(1,1)
        let us = OpTerm::word(vec![Generator::U, Generator::S(2)]);
        let g11 = OpTerm::generator(Generator::G(0, 1));
        let a = m.semantics(&us, Model::QN).unwrap();
        let b = m.semantics(&g11, Model::QN).unwrap();
        assert!(a.equal(&b).unwrap());
        // s(n) is rejected in the restricted model
        assert!(m.semantics(&us, Model::QFZ).is_err());
        // s(1) is the identity
        assert!(m
            .op_equal(&OpTerm::generator(Generator::S(1)), &OpTerm::one(), Model::QN)
            .unwrap());
    }

    #[test]
    fn parse_roundtrip() {
        let t = OpTerm::parse("f* g(1,0) g(1,0)* s(6) u*").unwrap();
        assert_eq!(t.to_string(), "f* g(1,0) g(1,0)* s(6) u*");
        assert!(OpTerm::parse("h(1,0)").is_err());
        assert!(OpTerm::parse("g(0,0)").is_err());
    }

    #[test]
    fn zero_and_cancellation() {
        let m = model(&[2, 3]);
        // g*_{1,0} g_{1,1} = 0 (disjoint ranges)
        let dead = OpTerm::word(vec![Generator::GStar(0, 0), Generator::G(0, 1)]);
        let c = m.semantics(&dead, Model::QFZ).unwrap();
        assert!(c.is_zero());
        // t − t = 0 with an irrational weight
        let t = OpTerm::scaled_word(ExactScalar::sqrt_integer(2), vec![Generator::F]);
        let diff = t.add(&t.scale(&ExactScalar::from_integer(-1)));
        assert!(m.semantics(&diff, Model::QFZ).unwrap().is_zero());
    }
}
