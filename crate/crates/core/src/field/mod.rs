//! Symbolic anyon field algebra.
//!
//! A field symbol `f(c, A)` carries a charge, an observable word and a
//! localization. Products are [`FieldWord`]s with an exact phase coefficient;
//! exchanges are driven by relative winding numbers of the localizations.

use std::fmt;

use thiserror::Error;

use crate::cone::{relative_winding, ConePath, GeometryError};
use crate::phase::CyclotomicPhase;
use crate::sector::AnyonModel;

pub mod graded;
pub mod lattice;
pub mod state;

pub use graded::{
    cpt_conjugate, cpt_conjugate_graded, cpt_conjugate_with_gauge, graded_compose, graded_form,
    twist_conjugate, twist_conjugate_with_winding, twisted_locality, GradedOperator, PhasePoly,
    TwistedLocality,
};
pub use lattice::{lattice_oracle, MonomialMatrix, OracleCheck, OracleReport};
pub use state::{apply_reduced, tomita_s, vacuum_swap, Overlap, StateVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("position {0} has no right neighbour")]
    Position(usize),
    #[error("a delocalized symbol cannot be exchanged")]
    Delocalized,
    #[error("target order is not a permutation of the factors")]
    InvalidOrder,
    #[error("localization is not contained in the standard wedge path")]
    OutsideStandardWedge,
    #[error("guard violated: {0}")]
    Guard(String),
    #[error("lattice oracle dimension {dim} exceeds the limit")]
    DimensionOverflow { dim: u128 },
    #[error("lattice oracle needs a Z_N model, got {0}")]
    UnsupportedModel(String),
    #[error("winding {0} between ordered sites is not supported by the lattice oracle")]
    UnsupportedWinding(i64),
}

/// One factor of an observable word: `γ^twist(α_j^reflected(id^star))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub id: String,
    pub star: bool,
    pub twist: i64,
    pub reflected: bool,
}

impl Atom {
    pub fn new(id: impl Into<String>) -> Self {
        Atom { id: id.into(), star: false, twist: 0, reflected: false }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = self.id.clone();
        if self.star {
            s.push('*');
        }
        if self.reflected {
            s = format!("αj({s})");
        }
        if self.twist != 0 {
            s = format!("γ^{}({s})", self.twist);
        }
        f.write_str(&s)
    }
}

/// Formal product of observable atoms; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ObservableWord {
    atoms: Vec<Atom>,
}

impl ObservableWord {
    pub fn unit() -> Self {
        ObservableWord::default()
    }

    pub fn atom(id: impl Into<String>) -> Self {
        ObservableWord { atoms: vec![Atom::new(id)] }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        ObservableWord { atoms }
    }

    /// Parses whitespace separated names, each optionally followed by `*`.
    /// `1` and the empty string denote the unit.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut atoms = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, star) = match tok.strip_suffix('*') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(format!("invalid observable name {tok:?}"));
            }
            atoms.push(Atom { star, ..Atom::new(name) });
        }
        Ok(ObservableWord { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn concat(&self, other: &ObservableWord) -> ObservableWord {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        ObservableWord { atoms }
    }

    /// `γᵏ` applied atom by atom.
    pub fn twisted(&self, k: i64) -> ObservableWord {
        let atoms = self.atoms.iter().map(|a| Atom { twist: a.twist + k, ..a.clone() }).collect();
        ObservableWord { atoms }
    }

    /// `A*`: reversed order, every atom starred.
    pub fn star(&self) -> ObservableWord {
        let atoms = self.atoms.iter().rev().map(|a| Atom { star: !a.star, ..a.clone() }).collect();
        ObservableWord { atoms }
    }

    /// `α_j(A)`, using `α_j γᵏ = γ⁻ᵏ α_j`.
    pub fn reflected(&self) -> ObservableWord {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom { twist: -a.twist, reflected: !a.reflected, ..a.clone() })
            .collect();
        ObservableWord { atoms }
    }
}

impl fmt::Display for ObservableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join("·"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathLabel {
    pub name: String,
    pub reflected: bool,
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflected {
            write!(f, "j·{}", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Localization {
    Path { label: PathLabel, path: ConePath },
    /// Product of symbols localized along different paths.
    Delocalized,
}

impl Localization {
    pub fn path(name: impl Into<String>, path: ConePath) -> Self {
        Localization::Path { label: PathLabel { name: name.into(), reflected: false }, path }
    }

    pub fn cone_path(&self) -> Option<&ConePath> {
        match self {
            Localization::Path { path, .. } => Some(path),
            Localization::Delocalized => None,
        }
    }

    fn same_as(&self, other: &Localization) -> bool {
        match (self, other) {
            (Localization::Path { label: l1, path: p1 }, Localization::Path { label: l2, path: p2 }) => {
                l1 == l2 && p1.approx_eq(p2, 1e-12)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Localization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Localization::Path { label, .. } => write!(f, "{label}"),
            Localization::Delocalized => f.write_str("delocalized"),
        }
    }
}

/// `f(c, A)` localized along `loc`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSymbol {
    pub charge: i64,
    pub obs: ObservableWord,
    pub loc: Localization,
}

impl FieldSymbol {
    pub fn new(charge: i64, obs: ObservableWord, loc: Localization) -> Self {
        FieldSymbol { charge, obs, loc }
    }

    /// `f(c,A)* = f(-c, γ^{-c}(A*))`, same localization.
    pub fn adjoint(&self) -> FieldSymbol {
        FieldSymbol {
            charge: -self.charge,
            obs: self.obs.star().twisted(-self.charge),
            loc: self.loc.clone(),
        }
    }

    /// Same charge, observable and label; paths equal up to `1e-12`.
    pub fn same_as(&self, other: &FieldSymbol) -> bool {
        self.charge == other.charge
            && self.obs == other.obs
            && match (&self.loc, &other.loc) {
                (Localization::Delocalized, Localization::Delocalized) => true,
                (a, b) => a.same_as(b),
            }
    }
}

impl fmt::Display for FieldSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({}, {})@{}", self.charge, self.obs, self.loc)
    }
}

pub fn adjoint(sym: &FieldSymbol) -> FieldSymbol {
    sym.adjoint()
}

/// `coeff · F_n ⋯ F_1`, the leftmost factor applied last.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldWord {
    pub coeff: CyclotomicPhase,
    pub factors: Vec<FieldSymbol>,
}

impl FieldWord {
    pub fn unit() -> Self {
        FieldWord { coeff: CyclotomicPhase::ONE, factors: Vec::new() }
    }

    pub fn new(factors: Vec<FieldSymbol>) -> Self {
        FieldWord { coeff: CyclotomicPhase::ONE, factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn same_as(&self, other: &FieldWord) -> bool {
        self.coeff == other.coeff
            && self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| a.same_as(b))
    }
}

impl fmt::Display for FieldWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff)?;
        for s in &self.factors {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

pub fn multiply(w1: &FieldWord, w2: &FieldWord) -> FieldWord {
    let mut factors = w1.factors.clone();
    factors.extend(w2.factors.iter().cloned());
    FieldWord { coeff: w1.coeff * w2.coeff, factors }
}

/// `f(c1,A1)·f(c2,A2) = f(c1+c2, γ^{c2}(A1)·A2)`.
pub fn fuse(s1: &FieldSymbol, s2: &FieldSymbol) -> FieldSymbol {
    let loc = if s1.loc.same_as(&s2.loc) { s1.loc.clone() } else { Localization::Delocalized };
    FieldSymbol {
        charge: s1.charge + s2.charge,
        obs: s1.obs.twisted(s2.charge).concat(&s2.obs),
        loc,
    }
}

/// Merges the factors at `i` and `i + 1`.
pub fn fuse_adjacent(w: &FieldWord, i: usize) -> Result<FieldWord, FieldError> {
    if i + 1 >= w.factors.len() {
        return Err(FieldError::Position(i));
    }
    let mut factors = w.factors[..i].to_vec();
    factors.push(fuse(&w.factors[i], &w.factors[i + 1]));
    factors.extend(w.factors[i + 2..].iter().cloned());
    Ok(FieldWord { coeff: w.coeff, factors })
}

/// Fuses the whole word into one symbol; `None` for the empty word.
pub fn fuse_all(w: &FieldWord) -> Option<FieldSymbol> {
    let mut it = w.factors.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, s| fuse(&acc, s)))
}

fn path_of(sym: &FieldSymbol) -> Result<&ConePath, FieldError> {
    sym.loc.cone_path().ok_or(FieldError::Delocalized)
}

/// Exchange phase picked up when `left · right` is rewritten as `right · left`.
pub fn exchange_phase(
    left: &FieldSymbol,
    right: &FieldSymbol,
    model: &AnyonModel,
) -> Result<CyclotomicPhase, FieldError> {
    let n = relative_winding(path_of(left)?, path_of(right)?)?;
    Ok(model.r_phase(right.charge, left.charge, n))
}

/// Swaps the factors at `i` (playing `F₂`) and `i + 1` (`F₁`).
pub fn exchange(w: &FieldWord, i: usize, model: &AnyonModel) -> Result<FieldWord, FieldError> {
    if i + 1 >= w.factors.len() {
        return Err(FieldError::Position(i));
    }
    let phase = exchange_phase(&w.factors[i], &w.factors[i + 1], model)?;
    let mut factors = w.factors.clone();
    factors.swap(i, i + 1);
    Ok(FieldWord { coeff: w.coeff * phase, factors })
}

fn check_order(order: &[usize], len: usize) -> Result<(), FieldError> {
    let mut seen = vec![false; len];
    if order.len() != len {
        return Err(FieldError::InvalidOrder);
    }
    for &k in order {
        if k >= len || std::mem::replace(&mut seen[k], true) {
            return Err(FieldError::InvalidOrder);
        }
    }
    Ok(())
}

/// Reorders the factors so that position `k` holds original factor
/// `order[k]`, using adjacent exchanges.
pub fn normal_form(w: &FieldWord, order: &[usize], model: &AnyonModel) -> Result<FieldWord, FieldError> {
    check_order(order, w.len())?;
    let mut rank = vec![0usize; w.len()];
    for (pos, &k) in order.iter().enumerate() {
        rank[k] = pos;
    }
    let mut current: Vec<usize> = (0..w.len()).map(|k| rank[k]).collect();
    let mut word = w.clone();
    loop {
        let Some(i) = (0..current.len().saturating_sub(1)).find(|&i| current[i] > current[i + 1]) else {
            return Ok(word);
        };
        word = exchange(&word, i, model)?;
        current.swap(i, i + 1);
    }
}

/// Factor indices sorted by the lower end of their lifted arcs, so that
/// every later factor winds `0` around every earlier one.
pub fn angular_order(w: &FieldWord) -> Result<Vec<usize>, FieldError> {
    let mut keyed = Vec::with_capacity(w.len());
    for (k, s) in w.factors.iter().enumerate() {
        keyed.push((path_of(s)?.arc().alpha_minus, k));
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, k)| k).collect())
}

/// Coefficients reached by every reduced sequence of adjacent exchanges that
/// takes `w` to the target order. Intended for short words.
pub fn route_coefficients(
    w: &FieldWord,
    order: &[usize],
    model: &AnyonModel,
) -> Result<Vec<CyclotomicPhase>, FieldError> {
    check_order(order, w.len())?;
    let mut rank = vec![0usize; w.len()];
    for (pos, &k) in order.iter().enumerate() {
        rank[k] = pos;
    }
    let start: Vec<usize> = (0..w.len()).map(|k| rank[k]).collect();
    let mut out = Vec::new();
    routes(w.clone(), start, model, &mut out)?;
    Ok(out)
}

fn routes(
    w: FieldWord,
    ranks: Vec<usize>,
    model: &AnyonModel,
    out: &mut Vec<CyclotomicPhase>,
) -> Result<(), FieldError> {
    let descents: Vec<usize> = (0..ranks.len().saturating_sub(1)).filter(|&i| ranks[i] > ranks[i + 1]).collect();
    if descents.is_empty() {
        out.push(w.coeff);
        return Ok(());
    }
    for i in descents {
        let mut r = ranks.clone();
        r.swap(i, i + 1);
        routes(exchange(&w, i, model)?, r, model, out)?;
    }
    Ok(())
}
