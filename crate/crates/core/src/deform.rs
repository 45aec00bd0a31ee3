//! Versal deformations.
//!
//! Starting from `d + Σ t_i δ_i` with `δ_i` a basis of odd `H²(d)`, each
//! order `n` solves the degree-`n` part of `½[d^n, d^n]` against `D`
//! monomial by monomial. The solvable part is removed by a correction
//! term; what remains lies on fixed complement cochains `γ_j` and
//! accumulates into the relations `R_j`, so that throughout
//!
//! `½[d^n, d^n] = Σ_j R_j γ_j` up to degree `n`.
//!
//! When this identity holds without truncation the state is exact and no
//! further order changes anything.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coder::{Coderivation, Term};
use crate::cohomology::{cohomology_basis_sector, cohomology_dims, CoboundarySolver};
use crate::error::{Error, Result};
use crate::group::{find_witness, SearchOptions, Verdict, Witness};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::Polynomial;
use crate::scalar::Rational;
use crate::space::{Parity, Word};

/// Default truncation for [`extend_to_stable`].
pub const DEFAULT_MAX_ORDER: usize = 4;

/// The coefficient of one complement cochain in `½[d^n, d^n]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    pub word: Word,
    pub target: usize,
    pub coeff: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationState {
    pub base: Coderivation<Rational>,
    pub parameters: Vec<String>,
    /// `δ_i`, paired with `t_i`.
    pub basis: Vec<Coderivation<Rational>>,
    pub current: Coderivation<Polynomial>,
    /// Highest parameter degree that has been processed.
    pub order: usize,
    /// `½[current, current] = Σ R_j γ_j` holds exactly.
    pub exact: bool,
    /// Last order that changed `current`; 1 if none did.
    #[serde(default = "one")]
    pub last_correction: usize,
    pub obstructions: Vec<Obstruction>,
}

fn one() -> usize {
    1
}

fn half() -> Rational {
    Rational::new(1, 2).expect("nonzero")
}

fn vars_of(s: &DeformationState) -> Arc<[String]> {
    s.parameters.clone().into()
}

/// `d + Σ t_i δ_i` with the canonical odd `H²` basis.
pub fn infinitesimal_deformation(d: &Coderivation<Rational>) -> Result<DeformationState> {
    let basis = cohomology_basis_sector(d, 2, Parity::Odd)?;
    build_state(d, basis)
}

/// As [`infinitesimal_deformation`] with caller-chosen representatives,
/// which must be odd 2-cocycles whose classes form a basis of odd `H²`.
pub fn infinitesimal_deformation_with_basis(
    d: &Coderivation<Rational>,
    basis: Vec<Coderivation<Rational>>,
) -> Result<DeformationState> {
    let solver = CoboundarySolver::new(d)?;
    let h = cohomology_dims(d, 2)?.h[2].odd;
    if basis.len() != h {
        return Err(Error::BadBasis(format!(
            "expected {h} classes, got {}",
            basis.len()
        )));
    }
    let mut index: BTreeMap<Term, usize> = BTreeMap::new();
    let mut residues = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        if b.space() != d.space() {
            return Err(Error::SpaceMismatch);
        }
        if !b.is_arity(2) || b.parity()? != Some(Parity::Odd) {
            return Err(Error::BadBasis(format!(
                "element {} is not an odd 2-cochain",
                k + 1
            )));
        }
        if !d.bracket(b)?.is_zero() {
            return Err(Error::BadBasis(format!(
                "element {} is not a cocycle",
                k + 1
            )));
        }
        let r = solver.solve(b)?.residue;
        for (t, _) in r.terms() {
            let n = index.len();
            index.entry(t.clone()).or_insert(n);
        }
        residues.push(r);
    }
    let mut ech = Echelon::new(index.len());
    for (k, r) in residues.iter().enumerate() {
        let v: SparseVec = r.terms().map(|(t, c)| (index[t], c.clone())).collect();
        if !ech.insert(&v) {
            return Err(Error::BadBasis(format!(
                "element {} is dependent modulo coboundaries",
                k + 1
            )));
        }
    }
    build_state(d, basis)
}

fn build_state(
    d: &Coderivation<Rational>,
    basis: Vec<Coderivation<Rational>>,
) -> Result<DeformationState> {
    let m = basis.len();
    let vars = Polynomial::standard_vars(m);
    let mut current = d.to_poly().with_vars(&vars)?;
    for (i, b) in basis.iter().enumerate() {
        let t = Polynomial::var(&vars, i);
        current = current.add(&b.map_coeffs(|c| t.scale(c)))?;
    }
    let mut s = DeformationState {
        base: d.clone(),
        parameters: vars.to_vec(),
        basis,
        current,
        order: 1,
        exact: false,
        last_correction: 1,
        obstructions: Vec::new(),
    };
    s.exact = reduced_defect(&s)?.is_zero();
    Ok(s)
}

fn obstruction_sum(s: &DeformationState) -> Coderivation<Polynomial> {
    let mut out = Coderivation::zero(*s.base.space());
    for o in &s.obstructions {
        out.add_term_unchecked(Term::new(o.word.clone(), o.target), o.coeff.clone());
    }
    out
}

/// `½[current, current] - Σ R_j γ_j`, untruncated.
pub fn reduced_defect(s: &DeformationState) -> Result<Coderivation<Polynomial>> {
    let full = s.current.bracket(&s.current)?.scale(&half());
    full.sub(&obstruction_sum(s))
}

/// `D(φ) + ½[φ,φ]` for `current = base + φ`, kept up to degree
/// `order + 1`. Zero iff `current` is a codifferential to that degree.
pub fn mc_defect(s: &DeformationState) -> Result<Coderivation<Polynomial>> {
    let full = s.current.bracket(&s.current)?.scale(&half());
    Ok(full.truncate(s.order as u32 + 1))
}

/// Processes orders `order+1 ..= k`; stops early once the state is exact.
pub fn extend_to_order(s: &DeformationState, k: usize) -> Result<DeformationState> {
    let solver = CoboundarySolver::new(&s.base)?;
    let mut s = s.clone();
    let vars = vars_of(&s);
    while s.order < k && !s.exact {
        let n = s.order as u32 + 1;
        let defect = reduced_defect(&s)?;
        let slice = defect
            .map_coeffs(|p| p.homogeneous_part(n))
            .with_vars(&vars)?;
        let sol = solver.solve_poly(&slice)?;
        if !sol.preimage.is_zero() {
            s.current = s.current.sub(&sol.preimage.with_vars(&vars)?)?;
            s.last_correction = n as usize;
        }
        let mut obs: BTreeMap<Term, Polynomial> = s
            .obstructions
            .drain(..)
            .map(|o| (Term::new(o.word, o.target), o.coeff))
            .collect();
        for (t, c) in sol.residue.terms() {
            let entry = obs.entry(t.clone()).or_insert_with(Polynomial::zero);
            *entry = entry.add(c);
        }
        s.obstructions = obs
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| Obstruction {
                word: t.word.clone(),
                target: t.target(),
                coeff: c,
            })
            .collect();
        s.order = n as usize;
        s.exact = reduced_defect(&s)?.is_zero();
    }
    if s.exact {
        s.order = s.order.max(k);
    }
    Ok(s)
}

/// Extends until exact, or to `max_order`.
pub fn extend_to_stable(s: &DeformationState, max_order: usize) -> Result<DeformationState> {
    extend_to_order(s, max_order)
}

/// `Σ a_i t_i = 0` for each row `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearComponent {
    pub equations: Vec<Vec<Rational>>,
}

impl LinearComponent {
    /// `t_i = 0` for `i` in `zero` (0-based).
    pub fn coordinate(nvars: usize, zero: &[usize]) -> Self {
        LinearComponent {
            equations: zero
                .iter()
                .map(|&i| {
                    (0..nvars)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Images of `t_1..t_m` under a parameterization `s ↦ t` of the
    /// subspace, over fresh variables `s1, s2, …`.
    pub fn parameterization(&self, nvars: usize) -> Vec<Polynomial> {
        let kernel = self.null_space(nvars);
        let names: Arc<[String]> = (1..=kernel.len()).map(|i| format!("s{i}")).collect();
        (0..nvars)
            .map(|i| {
                let mut p = Polynomial::zero();
                for (j, k) in kernel.iter().enumerate() {
                    if let Some(x) = k.get(&i) {
                        p = p.add(&Polynomial::var(&names, j).scale(x));
                    }
                }
                p
            })
            .collect()
    }

    pub fn dimension(&self, nvars: usize) -> usize {
        self.null_space(nvars).len()
    }

    fn null_space(&self, nvars: usize) -> Vec<SparseVec> {
        // dependencies among the columns of the equation matrix
        let mut ech = Echelon::new(self.equations.len());
        for i in 0..nvars {
            let col: SparseVec = self
                .equations
                .iter()
                .enumerate()
                .filter(|(_, row)| !row[i].is_zero())
                .map(|(r, row)| (r, row[i].clone()))
                .collect();
            ech.insert(&col);
        }
        ech.kernel().to_vec()
    }

    pub fn display(&self, params: &[String]) -> String {
        if self.equations.is_empty() {
            return "all parameters free".into();
        }
        let eqs: Vec<String> = self
            .equations
            .iter()
            .map(|row| {
                let vars: Arc<[String]> = params.to_vec().into();
                let mut p = Polynomial::zero();
                for (i, x) in row.iter().enumerate() {
                    p = p.add(&Polynomial::var(&vars, i).scale(x));
                }
                format!("{p} = 0")
            })
            .collect();
        eqs.join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationIdeal {
    pub parameters: Vec<String>,
    pub generators: Vec<Polynomial>,
    /// Maximal linear subspaces found on which every generator vanishes.
    pub components: Vec<LinearComponent>,
}

impl RelationIdeal {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Every generator restricted to `c` is identically zero.
    pub fn vanishes_on(&self, c: &LinearComponent) -> bool {
        let images = c.parameterization(self.parameters.len());
        self.generators
            .iter()
            .all(|g| g.substitute(&images).is_zero())
    }

    /// Whether `values` is a zero of every generator.
    pub fn is_zero_at(&self, values: &[Rational]) -> bool {
        self.generators
            .iter()
            .all(|g| g.evaluate_at(values).is_zero())
    }
}

/// Distinct relation generators, normalized, with the coordinate
/// subspaces of their zero set.
pub fn obstruction_relations(s: &DeformationState) -> RelationIdeal {
    let mut ideal = relation_generators(s);
    ideal.components = linear_components(&ideal);
    ideal
}

/// As [`obstruction_relations`] without the component search.
pub fn relation_generators(s: &DeformationState) -> RelationIdeal {
    let mut generators: Vec<Polynomial> = Vec::new();
    for o in &s.obstructions {
        let g = o.coeff.normalized();
        if !g.is_zero() && !generators.contains(&g) {
            generators.push(g);
        }
    }
    generators.sort_by(|a, b| {
        let key = |p: &Polynomial| (p.total_degree(), p.num_terms(), p.to_string());
        key(a).cmp(&key(b))
    });
    RelationIdeal {
        parameters: s.parameters.clone(),
        generators,
        components: Vec::new(),
    }
}

/// Linear forms `t_i` and `t_i - c t_j` (`i < j`); `c = ±1` always,
/// `c = ±2, ±1/2` for up to three parameters.
fn candidate_forms(m: usize) -> Vec<Vec<Rational>> {
    let unit = |i: usize| -> Vec<Rational> {
        (0..m)
            .map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let mut out: Vec<Vec<Rational>> = (0..m).map(unit).collect();
    let all = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
    let cs: Vec<Rational> = all[..if m <= 3 { 6 } else { 2 }]
        .iter()
        .map(|&(n, d)| Rational::new(n, d).unwrap())
        .collect();
    for i in 0..m {
        for j in i + 1..m {
            for c in &cs {
                let mut f = unit(i);
                f[j] = -c;
                out.push(f);
            }
        }
    }
    out
}

fn contained_in(a: &[Polynomial], b: &LinearComponent) -> bool {
    // every equation of b vanishes on the parameterization a
    b.equations.iter().all(|row| {
        let mut acc = Polynomial::zero();
        for (x, img) in row.iter().zip(a) {
            acc = acc.add(&img.scale(x));
        }
        acc.is_zero()
    })
}

fn dense(v: &SparseVec, m: usize) -> Vec<Rational> {
    (0..m)
        .map(|i| v.get(&i).cloned().unwrap_or_else(Rational::zero))
        .collect()
}

fn sparse(row: &[Rational]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Maximal linear subspaces through the origin, cut out by coordinate
/// hyperplanes and hyperplanes `t_i = c t_j`, on which every generator
/// vanishes. Subspaces are grown one hyperplane at a time from those not
/// yet in the zero set, keyed by reduced echelon form.
fn linear_components(ideal: &RelationIdeal) -> Vec<LinearComponent> {
    let m = ideal.parameters.len();
    let vanishes = |images: &[Polynomial]| {
        // one integer point first; substitution only if it is a zero
        let primes = [2i64, 3, 5, 7, 11, 13, 17, 19];
        let point: Vec<Rational> = images
            .iter()
            .map(|p| {
                let vals: Vec<Rational> = (0..p.nvars())
                    .map(|j| Rational::from(primes[j % 8] + j as i64))
                    .collect();
                p.evaluate_at(&vals)
            })
            .collect();
        ideal
            .generators
            .iter()
            .all(|g| g.evaluate_at(&point).is_zero())
            && ideal
                .generators
                .iter()
                .all(|g| g.substitute(images).is_zero())
    };
    let whole = LinearComponent {
        equations: Vec::new(),
    };
    if vanishes(&whole.parameterization(m)) {
        return vec![whole];
    }
    let forms = candidate_forms(m);
    let mut kept: Vec<LinearComponent> = Vec::new();
    let mut frontier: Vec<Vec<SparseVec>> = vec![Vec::new()];
    for k in 1..=m {
        let mut seen: std::collections::BTreeSet<Vec<Vec<Rational>>> = Default::default();
        let mut next = Vec::new();
        for eqs in &frontier {
            for f in &forms {
                let mut ech = Echelon::new(m);
                for e in eqs {
                    ech.insert(e);
                }
                if !ech.insert(&sparse(f)) {
                    continue;
                }
                let rows = ech.reduced_basis();
                let key: Vec<Vec<Rational>> = rows.iter().map(|r| dense(r, m)).collect();
                if !seen.insert(key.clone()) {
                    continue;
                }
                let comp = LinearComponent { equations: key };
                let images = comp.parameterization(m);
                if kept.iter().any(|c| contained_in(&images, c)) {
                    continue;
                }
                if vanishes(&images) {
                    kept.push(comp);
                } else {
                    next.push(rows);
                }
            }
        }
        debug_assert!(k <= m);
        frontier = next;
    }
    kept
}

#[derive(Clone, Debug)]
pub enum JumpVerdict {
    /// `g*(d_t) = target`.
    Jump(Witness),
    NotJump(String),
    /// Neither a witness nor a separating invariant was found.
    Inconclusive(String),
}

impl JumpVerdict {
    pub fn is_jump(&self) -> bool {
        matches!(self, JumpVerdict::Jump(_))
    }
}

/// Specializes the deformation at `assignment` and searches for an
/// equivalence with `target`.
pub fn verify_jump(
    s: &DeformationState,
    assignment: &[Rational],
    target: &Coderivation<Rational>,
    opts: &SearchOptions,
) -> Result<JumpVerdict> {
    if assignment.len() != s.parameters.len() {
        return Err(Error::Shape {
            expected_rows: s.parameters.len(),
            expected_cols: 1,
        });
    }
    let ideal = relation_generators(s);
    if !ideal.is_zero_at(assignment) {
        return Ok(JumpVerdict::NotJump(
            "the assignment violates a relation".into(),
        ));
    }
    let specialized = s.current.evaluate_params(assignment);
    if !specialized.bracket(&specialized)?.is_zero() {
        return Ok(JumpVerdict::Inconclusive(format!(
            "the specialization is not a codifferential (state truncated at order {})",
            s.order
        )));
    }
    Ok(match find_witness(&specialized, target, opts)? {
        Verdict::Equivalent(w) => JumpVerdict::Jump(w),
        Verdict::NotEquivalent(why) => JumpVerdict::NotJump(why),
        Verdict::Inconclusive => {
            JumpVerdict::Inconclusive("no witness in the searched family".into())
        }
    })
}

impl DeformationState {
    pub fn num_parameters(&self) -> usize {
        self.parameters.len()
    }

    pub fn vars(&self) -> Arc<[String]> {
        vars_of(self)
    }

    /// `current` restricted to the component, in its own parameters.
    pub fn restrict(&self, c: &LinearComponent) -> Coderivation<Polynomial> {
        let images = c.parameterization(self.parameters.len());
        self.current.map_coeffs(|p| {
            if p.nvars() == 0 {
                p.clone()
            } else {
                p.substitute(&images)
            }
        })
    }

    pub fn is_rigid(&self) -> bool {
        self.parameters.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coder::parse_rational_coderivation;
    use crate::space::GradedSpace;

    const S: GradedSpace = GradedSpace::standard();

    fn c(text: &str) -> Coderivation<Rational> {
        parse_rational_coderivation(S, text).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn entry(label: &str) -> Coderivation<Rational> {
        catalog::get_label(label).unwrap().formula
    }

    fn poly(text: &str, vars: &Arc<[String]>) -> Polynomial {
        let d = crate::coder::parse_coderivation(S, &format!("({text})*psi(1,1;3)"), Some(vars))
            .unwrap();
        d.coeff(&Word::from([1, 1]), 3).unwrap().clone()
    }

    #[test]
    fn rigid_and_flat_cases() {
        let s = infinitesimal_deformation(&entry("d_1")).unwrap();
        assert!(s.is_rigid() && s.exact);

        let d11 = entry("d_11");
        let s = infinitesimal_deformation(&d11).unwrap();
        assert_eq!(s.num_parameters(), 1);
        assert!(solve_class_equal(&d11, &s.basis[0], &c("psi(2,2;3)")));
        assert!(mc_defect(&s).unwrap().is_zero());
        let s4 = extend_to_order(&s, 4).unwrap();
        assert_eq!(s4.current, s.current);
        assert!(obstruction_relations(&s4).is_trivial());
    }

    fn solve_class_equal(
        d: &Coderivation<Rational>,
        a: &Coderivation<Rational>,
        b: &Coderivation<Rational>,
    ) -> bool {
        let solver = CoboundarySolver::new(d).unwrap();
        let r = solver.solve(&a.sub(b).unwrap()).unwrap();
        r.is_exact()
            || a.scale(&q(-1))
                .sub(b)
                .map(|x| solver.solve(&x).unwrap().is_exact())
                .unwrap()
    }

    #[test]
    fn d14_infinitesimal_is_versal() {
        let d = entry("d_14");
        let classic = vec![c("psi(2,1;3)"), c("psi(2,2;3)"), c("psi(1,1;3)")];
        let s = infinitesimal_deformation_with_basis(&d, classic).unwrap();
        let s2 = extend_to_order(&s, 2).unwrap();
        assert!(s2.exact);
        assert_eq!(s2.current, s.current);
        assert!(obstruction_relations(&s2).is_trivial());
        let canon = infinitesimal_deformation(&d).unwrap();
        assert_eq!(canon.num_parameters(), 3);
    }

    #[test]
    fn bad_bases_rejected() {
        let d = entry("d_14");
        let dup = vec![c("psi(2,1;3)"), c("psi(2,1;3)"), c("psi(1,1;3)")];
        assert!(matches!(
            infinitesimal_deformation_with_basis(&d, dup),
            Err(Error::BadBasis(_))
        ));
        assert!(matches!(
            infinitesimal_deformation_with_basis(&d, vec![c("psi(2,1;3)")]),
            Err(Error::BadBasis(_))
        ));
    }

    #[test]
    fn d15_generic_relation() {
        let d = catalog::family_formula("d_15", &q(2), &q(1)).unwrap();
        let s =
            extend_to_order(&infinitesimal_deformation(&d).unwrap(), DEFAULT_MAX_ORDER).unwrap();
        let ideal = obstruction_relations(&s);
        assert_eq!(ideal.generators.len(), 1, "{:?}", ideal.generators);
        let vars = s.vars();
        let expected = poly("t1^2*(3 + t2)*(1 - t2)", &vars);
        assert!(
            ideal.generators[0].is_associate(&expected),
            "{}",
            ideal.generators[0]
        );
        assert_eq!(ideal.components, vec![LinearComponent::coordinate(2, &[0])]);
    }

    #[test]
    fn d13_generic_point_two_planes() {
        let d = entry("d_13(0:0)");
        let classic = vec![
            c("psi(3,2;1) - psi(2,3;1)"),
            c("psi(3,2;2) - psi(2,3;2) + psi(3,3;3)"),
            c("psi(2,1;3)"),
            c("psi(1,1;3)"),
        ];
        let s = infinitesimal_deformation_with_basis(&d, classic).unwrap();
        assert!(!mc_defect(&s).unwrap().is_zero());
        let s3 = extend_to_order(&s, 3).unwrap();
        let s = extend_to_order(&s, 8).unwrap();
        assert!(s.exact);
        assert_eq!(s.last_correction, 3);
        assert_eq!(s.current, s3.current);
        assert_eq!(
            obstruction_relations(&s3).components,
            obstruction_relations(&s).components
        );
        let ideal = obstruction_relations(&s);
        assert_eq!(
            ideal.components,
            vec![
                LinearComponent::coordinate(4, &[0, 1]),
                LinearComponent::coordinate(4, &[2, 3])
            ]
        );

        let on_second = [q(0), q(0), q(1), q(0)];
        let v = verify_jump(
            &s,
            &on_second,
            &entry("d_13(1:0)"),
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(v.is_jump(), "{v:?}");
        let off = [q(1), q(0), q(1), q(0)];
        assert!(matches!(
            verify_jump(&s, &off, &entry("d_13(1:0)"), &SearchOptions::default()).unwrap(),
            JumpVerdict::NotJump(_)
        ));
    }

    #[test]
    fn d11_jumps_to_d1() {
        let s =
            infinitesimal_deformation_with_basis(&entry("d_11"), vec![c("psi(2,2;3)")]).unwrap();
        let d1 = entry("d_1");
        let v = verify_jump(&s, &[q(-1)], &d1, &SearchOptions::default()).unwrap();
        assert!(v.is_jump(), "{v:?}");
        assert!(matches!(
            verify_jump(&s, &[q(1)], &d1, &SearchOptions::default()).unwrap(),
            JumpVerdict::Inconclusive(_)
        ));
        let v = verify_jump(&s, &[q(0)], &entry("d_11"), &SearchOptions::default()).unwrap();
        assert!(v.is_jump());
    }

    #[test]
    fn state_json_round_trip() {
        let s = infinitesimal_deformation(&entry("d_14")).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        let back: DeformationState = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn parameterization_of_component() {
        let comp = LinearComponent {
            equations: vec![vec![q(1), q(1), q(0)]],
        };
        let images = comp.parameterization(3);
        let vars = Polynomial::standard_vars(3);
        let rel = poly("t1 + t2", &vars);
        assert!(rel.substitute(&images).is_zero());
        assert!(!poly("t3", &vars).substitute(&images).is_zero());
    }
}
