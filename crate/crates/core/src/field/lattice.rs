//! Finite clock/shift representation of short field words.
//!
//! Site operators `a_j = U_1⋯U_{j-1} V_j` on `(C^N)^{⊗L}` satisfy
//! `a_k a_j = ω a_j a_k` for `j < k`. Sites are assigned in increasing
//! angular order, so the later factor always winds `0` around the earlier
//! one. Observables are represented by the identity.

use num_complex::Complex64;

use super::{adjoint, exchange, graded::twist_conjugate_with_winding, normal_form, FieldError, FieldSymbol, FieldWord};
use crate::cone::relative_winding;
use crate::sector::{AnyonModel, ChargeGroup};

pub const MAX_N: u32 = 5;
pub const MAX_SITES: usize = 6;
pub const ORACLE_TOL: f64 = 1e-12;

/// `M e_i = phase[i] e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phase: Vec<Complex64>,
}

impl MonomialMatrix {
    pub fn identity(dim: usize) -> Self {
        MonomialMatrix { perm: (0..dim).collect(), phase: vec![Complex64::new(1.0, 0.0); dim] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self · other`.
    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let phase = other.perm.iter().zip(&other.phase).map(|(&j, p)| self.phase[j] * p).collect();
        MonomialMatrix { perm, phase }
    }

    pub fn scale(&self, s: Complex64) -> MonomialMatrix {
        MonomialMatrix { perm: self.perm.clone(), phase: self.phase.iter().map(|p| p * s).collect() }
    }

    pub fn adjoint(&self) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phase = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            phase[self.perm[i]] = self.phase[i].conj();
        }
        MonomialMatrix { perm, phase }
    }

    pub fn pow(&self, e: u32) -> MonomialMatrix {
        (0..e).fold(MonomialMatrix::identity(self.dim()), |acc, _| acc.mul(self))
    }

    /// Largest entrywise difference; infinite if the supports differ.
    pub fn distance(&self, other: &MonomialMatrix) -> f64 {
        self.perm
            .iter()
            .zip(&other.perm)
            .zip(self.phase.iter().zip(&other.phase))
            .map(|((a, b), (p, q))| if a == b { (p - q).norm() } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.dim();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            m[self.perm[i]][i] = self.phase[i];
        }
        m
    }
}

/// Clock/shift operators on `L` sites of dimension `N`.
struct Lattice {
    n: usize,
    sites: usize,
    omega: Complex64,
}

impl Lattice {
    fn dim(&self) -> usize {
        self.n.pow(self.sites as u32)
    }

    fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.n.pow(site as u32)) % self.n
    }

    fn site_op(&self, site: usize) -> MonomialMatrix {
        let dim = self.dim();
        let stride = self.n.pow(site as u32);
        let mut perm = Vec::with_capacity(dim);
        let mut phase = Vec::with_capacity(dim);
        for i in 0..dim {
            let k = self.digit(i, site);
            perm.push(i - k * stride + ((k + 1) % self.n) * stride);
            let clock: usize = (0..site).map(|s| self.digit(i, s)).sum();
            phase.push(self.omega.powi(clock as i32));
        }
        MonomialMatrix { perm, phase }
    }

    fn total_charge(&self, index: usize) -> i64 {
        (0..self.sites).map(|s| self.digit(index, s) as i64).sum()
    }

    fn diagonal(&self, f: impl Fn(i64) -> Complex64) -> MonomialMatrix {
        let dim = self.dim();
        MonomialMatrix { perm: (0..dim).collect(), phase: (0..dim).map(|i| f(self.total_charge(i))).collect() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: String,
    pub residual: f64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.residual <= ORACLE_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub dimension: usize,
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(OracleCheck::passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Builds the clock/shift representation of `word` and compares matrix
/// products against the symbolic exchange, normal form, adjoint and twist
/// rules.
pub fn lattice_oracle(model: &AnyonModel, word: &FieldWord) -> Result<OracleReport, FieldError> {
    let n = match model.group {
        ChargeGroup::ZN(n) if (1..=MAX_N).contains(&n) => n as usize,
        ChargeGroup::ZN(n) => return Err(FieldError::DimensionOverflow { dim: (n as u128).pow(word.len() as u32) }),
        ChargeGroup::Z => return Err(FieldError::UnsupportedModel(model.group.to_string())),
    };
    if word.len() > MAX_SITES {
        return Err(FieldError::DimensionOverflow { dim: (n as u128).pow(word.len() as u32) });
    }
    let order = super::angular_order(word)?;
    for (a, &j) in order.iter().enumerate() {
        for &k in &order[a + 1..] {
            let w = relative_winding(
                word.factors[k].loc.cone_path().ok_or(FieldError::Delocalized)?,
                word.factors[j].loc.cone_path().ok_or(FieldError::Delocalized)?,
            )?;
            if w != 0 {
                return Err(FieldError::UnsupportedWinding(w));
            }
        }
    }
    let mut site_of = vec![0; word.len()];
    for (pos, &k) in order.iter().enumerate() {
        site_of[k] = pos;
    }
    let lattice = Lattice { n, sites: word.len().max(1), omega: model.omega.to_complex() };
    let sites: Vec<MonomialMatrix> = (0..lattice.sites).map(|s| lattice.site_op(s)).collect();
    let sym_matrix = |s: &FieldSymbol, site: usize| sites[site].pow(s.charge.rem_euclid(n as i64) as u32);
    let tagged: Vec<(usize, &FieldSymbol)> = word.factors.iter().enumerate().collect();
    let matrix_of = |factors: &[(usize, FieldSymbol)], coeff: Complex64| -> MonomialMatrix {
        factors
            .iter()
            .fold(MonomialMatrix::identity(lattice.dim()), |acc, (k, f)| acc.mul(&sym_matrix(f, site_of[*k])))
            .scale(coeff)
    };
    let indexed = |w: &FieldWord, perm: &[usize]| -> Vec<(usize, FieldSymbol)> {
        perm.iter().copied().zip(w.factors.iter().cloned()).collect()
    };
    let identity_perm: Vec<usize> = (0..word.len()).collect();
    let original = matrix_of(&indexed(word, &identity_perm), word.coeff.to_complex());
    let mut checks = Vec::new();

    for i in 0..word.len().saturating_sub(1) {
        let x = exchange(word, i, model)?;
        let mut perm = identity_perm.clone();
        perm.swap(i, i + 1);
        let m = matrix_of(&indexed(&x, &perm), x.coeff.to_complex());
        checks.push(OracleCheck { name: format!("exchange at {i}"), residual: original.distance(&m) });
    }
    for (a, (j, fj)) in tagged.iter().enumerate() {
        for (k, fk) in &tagged[a + 1..] {
            let pair = FieldWord::new(vec![(*fj).clone(), (*fk).clone()]);
            let x = exchange(&pair, 0, model)?;
            let lhs = sym_matrix(fj, site_of[*j]).mul(&sym_matrix(fk, site_of[*k]));
            let rhs = sym_matrix(fk, site_of[*k]).mul(&sym_matrix(fj, site_of[*j])).scale(x.coeff.to_complex());
            checks.push(OracleCheck { name: format!("pair ({j}, {k})"), residual: lhs.distance(&rhs) });
        }
    }
    let reversed: Vec<usize> = (0..word.len()).rev().collect();
    for (label, target) in [("angular", order.clone()), ("reversed", reversed)] {
        let nf = normal_form(word, &target, model)?;
        let m = matrix_of(&indexed(&nf, &target), nf.coeff.to_complex());
        checks.push(OracleCheck { name: format!("normal form ({label})"), residual: original.distance(&m) });
    }
    for (k, f) in &tagged {
        let m = sym_matrix(f, site_of[*k]);
        let adj = sym_matrix(&adjoint(f), site_of[*k]);
        checks.push(OracleCheck { name: format!("adjoint of factor {k}"), residual: adj.distance(&m.adjoint()) });
    }
    for w in [-1i64, 0] {
        let z = lattice.diagonal(|q| model.twist_phase(q, w).to_complex());
        for (k, f) in &tagged {
            let m = sym_matrix(f, site_of[*k]);
            let conj = z.mul(&m).mul(&z.adjoint());
            let g = twist_conjugate_with_winding(f, w, model);
            let expected = m.mul(&lattice.diagonal(|q| g.phase_at(q).to_complex()));
            checks.push(OracleCheck {
                name: format!("twist n={w} on factor {k}"),
                residual: conj.distance(&expected),
            });
        }
    }
    Ok(OracleReport { dimension: lattice.dim(), checks })
}

#[cfg(test)]
mod tests {
    use super::super::tests::sym;
    use super::*;
    use num_rational::Rational64;

    fn zn(n: u32) -> AnyonModel {
        AnyonModel::from_spin(ChargeGroup::ZN(n), Rational64::new(1, n as i64))
    }

    #[test]
    fn jordan_wigner_anticommutation() {
        let l = Lattice { n: 2, sites: 3, omega: Complex64::new(-1.0, 0.0) };
        let a: Vec<_> = (0..3).map(|s| l.site_op(s)).collect();
        for j in 0..3 {
            for k in 0..3 {
                if j != k {
                    let anti = a[j].mul(&a[k]).scale(Complex64::new(-1.0, 0.0));
                    assert!(anti.distance(&a[k].mul(&a[j])) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn clock_relation_for_three_states() {
        let m = zn(3);
        let l = Lattice { n: 3, sites: 2, omega: m.omega.to_complex() };
        let (a1, a2) = (l.site_op(0), l.site_op(1));
        let lhs = a2.mul(&a1);
        let rhs = a1.mul(&a2).scale(m.r_phase(1, 1, 0).to_complex());
        assert!(lhs.distance(&rhs) < 1e-12);
        assert!(a1.pow(3).distance(&MonomialMatrix::identity(9)) < 1e-12);
        let dense = a1.to_dense();
        assert_eq!(dense.len(), 9);
    }

    #[test]
    fn oracle_agrees_with_symbolic_rules() {
        let m = zn(3);
        let w = FieldWord::new(vec![
            sym(1, "A", "C1", 0.0),
            sym(2, "B", "C3", 2.0),
            sym(-1, "C", "C2", 1.0),
        ]);
        let report = lattice_oracle(&m, &w).unwrap();
        assert_eq!(report.dimension, 27);
        assert!(report.passed(), "{report:?}");
        let f = lattice_oracle(&AnyonModel::fermion(), &w).unwrap();
        assert!(f.passed());
    }

    #[test]
    fn oracle_limits() {
        let w = FieldWord::new((0..7).map(|k| sym(1, "A", &format!("C{k}"), k as f64 * 0.8)).collect());
        assert!(matches!(lattice_oracle(&zn(2), &w), Err(FieldError::DimensionOverflow { .. })));
        let short = FieldWord::new(vec![sym(1, "A", "C", 0.0)]);
        assert!(matches!(lattice_oracle(&zn(7), &short), Err(FieldError::DimensionOverflow { .. })));
        let free = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(1, 3));
        assert!(matches!(lattice_oracle(&free, &short), Err(FieldError::UnsupportedModel(_))));
        // More than a full turn apart.
        let wide = FieldWord::new(vec![sym(1, "A", "C1", 0.0), sym(1, "B", "C2", 7.0)]);
        assert!(matches!(lattice_oracle(&zn(2), &wide), Err(FieldError::UnsupportedWinding(_))));
    }
}
