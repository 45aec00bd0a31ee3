//! Extensions `0 → M → V → W → 0` with `M` an ideal.
//!
//! A codifferential on `V = M ⊕ W` splits as `d = δ + μ + λ + ψ`: `δ` lives
//! on `W`, `μ` on `M`, `λ` takes mixed inputs into `M` and `ψ` takes
//! `W`-inputs into `M`. The structure equations are
//!
//! * `[δ,λ] + ½[λ,λ] + [μ,ψ] = 0`
//! * `[μ,λ] = 0`
//! * `[δ+λ,ψ] = 0`

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::coder::{Coderivation, Term};
use crate::error::{Error, Result};
use crate::group::{exp_beta, find_witness, BetaShift, SearchOptions, Verdict, Witness};
use crate::scalar::Rational;
use crate::space::{GradedSpace, Parity, Word};

/// Where the inputs and output of a term may live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// Everything in `W`.
    Quotient,
    /// Everything in `M`.
    Ideal,
    /// Output in `M`, inputs from both `M` and `W`.
    Mixed,
    /// Output in `M`, inputs from `W` only.
    Cocycle,
}

impl Sector {
    fn name(self) -> &'static str {
        match self {
            Sector::Quotient => "delta (W only)",
            Sector::Ideal => "mu (M only)",
            Sector::Mixed => "lambda (mixed inputs into M)",
            Sector::Cocycle => "psi (W inputs into M)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionDatum {
    #[serde(rename = "M")]
    pub m: Vec<usize>,
    #[serde(rename = "W")]
    pub w: Vec<usize>,
    pub delta: Coderivation<Rational>,
    pub mu: Coderivation<Rational>,
    pub lambda: Coderivation<Rational>,
    pub psi: Coderivation<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Coderivation<Rational>>,
}

impl ExtensionDatum {
    /// Builds and validates a datum with `τ` absent.
    pub fn new(
        m: Vec<usize>,
        w: Vec<usize>,
        delta: Coderivation<Rational>,
        mu: Coderivation<Rational>,
        lambda: Coderivation<Rational>,
        psi: Coderivation<Rational>,
    ) -> Result<Self> {
        let e = ExtensionDatum {
            m,
            w,
            delta,
            mu,
            lambda,
            psi,
            tau: None,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn space(&self) -> GradedSpace {
        *self.delta.space()
    }

    fn in_m(&self, i: usize) -> bool {
        self.m.contains(&i)
    }

    fn term_in(&self, t: &Term, sector: Sector) -> bool {
        let m_inputs = t.word.iter().filter(|&i| self.in_m(i)).count();
        let target_m = self.in_m(t.target());
        match sector {
            Sector::Quotient => m_inputs == 0 && !target_m,
            Sector::Ideal => m_inputs == t.arity() && target_m,
            Sector::Mixed => target_m && m_inputs > 0 && m_inputs < t.arity(),
            Sector::Cocycle => target_m && m_inputs == 0,
        }
    }

    fn check_sector(&self, c: &Coderivation<Rational>, sector: Sector) -> Result<()> {
        if let Some((t, _)) = c.terms().find(|(t, _)| !self.term_in(t, sector)) {
            let mut one = Coderivation::zero(*c.space());
            one.add_term_unchecked(t.clone(), Rational::one());
            return Err(Error::Sector {
                term: one.to_string(),
                sector: sector.name().into(),
            });
        }
        Ok(())
    }

    /// The split must partition the basis, and each component must lie in
    /// its sector.
    pub fn validate(&self) -> Result<()> {
        let space = self.space();
        let mut all: Vec<usize> = self.m.iter().chain(&self.w).copied().collect();
        for &i in &all {
            space.check_index(i)?;
        }
        all.sort_unstable();
        if all != (1..=space.dim()).collect::<Vec<_>>() {
            return Err(Error::Sector {
                term: format!("M={:?} W={:?}", self.m, self.w),
                sector: "a partition of the basis".into(),
            });
        }
        for c in [&self.mu, &self.lambda, &self.psi]
            .into_iter()
            .chain(&self.tau)
        {
            if c.space() != &space {
                return Err(Error::SpaceMismatch);
            }
        }
        self.check_sector(&self.delta, Sector::Quotient)?;
        self.check_sector(&self.mu, Sector::Ideal)?;
        self.check_sector(&self.lambda, Sector::Mixed)?;
        self.check_sector(&self.psi, Sector::Cocycle)?;
        if let Some(t) = &self.tau {
            self.check_sector(t, Sector::Cocycle)?;
        }
        Ok(())
    }

    /// `ψ + τ`.
    pub fn effective_psi(&self) -> Result<Coderivation<Rational>> {
        match &self.tau {
            None => Ok(self.psi.clone()),
            Some(t) => self.psi.add(t),
        }
    }

    /// `d = δ + μ + λ + ψ (+ τ)`.
    pub fn assemble(&self) -> Result<Coderivation<Rational>> {
        self.delta
            .add(&self.mu)?
            .add(&self.lambda)?
            .add(&self.effective_psi()?)
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub maurer_cartan: Coderivation<Rational>,
    pub compatibility: Coderivation<Rational>,
    pub cocycle: Coderivation<Rational>,
    /// `[δ,δ] = 0` and `[μ,μ] = 0`.
    pub base_codifferentials: bool,
    /// `[d,d] = 0` for the assembled `d`.
    pub assembled_codifferential: bool,
}

impl ExtensionReport {
    pub fn maurer_cartan_holds(&self) -> bool {
        self.maurer_cartan.is_zero()
    }

    pub fn compatibility_holds(&self) -> bool {
        self.compatibility.is_zero()
    }

    pub fn cocycle_holds(&self) -> bool {
        self.cocycle.is_zero()
    }

    pub fn all_hold(&self) -> bool {
        self.maurer_cartan_holds() && self.compatibility_holds() && self.cocycle_holds()
    }
}

pub fn check_extension(e: &ExtensionDatum) -> Result<ExtensionReport> {
    e.validate()?;
    let (delta, mu, lambda) = (&e.delta, &e.mu, &e.lambda);
    let psi = e.effective_psi()?;
    for c in [delta, mu, lambda, &psi] {
        if let Some(Parity::Even) = c.parity()? {
            return Err(Error::NotOdd(Parity::Even));
        }
    }
    let half = Rational::new(1, 2)?;
    let maurer_cartan = delta
        .bracket(lambda)?
        .add(&lambda.bracket(lambda)?.scale(&half))?
        .add(&mu.bracket(&psi)?)?;
    let compatibility = mu.bracket(lambda)?;
    let cocycle = delta.add(lambda)?.bracket(&psi)?;
    let base_codifferentials = delta.bracket(delta)?.is_zero() && mu.bracket(mu)?.is_zero();
    let d = e.assemble()?;
    Ok(ExtensionReport {
        maurer_cartan,
        compatibility,
        cocycle,
        base_codifferentials,
        assembled_codifferential: d.bracket(&d)?.is_zero(),
    })
}

/// `λ' = λ + [μ,β]`, `ψ' = ψ + [δ + λ + ½[μ,β], β]`.
pub fn restricted_equivalence(e: &ExtensionDatum, b: &BetaShift) -> Result<ExtensionDatum> {
    e.validate()?;
    let beta = b.coderivation();
    if let Some((t, _)) = beta.terms().find(|(t, _)| !e.term_in(t, Sector::Cocycle)) {
        let mut one = Coderivation::zero(e.space());
        one.add_term_unchecked(t.clone(), Rational::one());
        return Err(Error::Sector {
            term: one.to_string(),
            sector: "beta (W into M)".into(),
        });
    }
    let mu_beta = e.mu.bracket(beta)?;
    let lambda = e.lambda.add(&mu_beta)?;
    let half = Rational::new(1, 2)?;
    let inner = e.delta.add(&e.lambda)?.add(&mu_beta.scale(&half))?;
    let psi = e.psi.add(&inner.bracket(beta)?)?;
    let out = ExtensionDatum {
        lambda,
        psi,
        ..e.clone()
    };
    out.validate()?;
    Ok(out)
}

/// Cross-check of [`restricted_equivalence`] against the `exp(β)` action.
pub fn restricted_equivalence_agrees(e: &ExtensionDatum, b: &BetaShift) -> Result<bool> {
    let moved = restricted_equivalence(e, b)?.assemble()?;
    Ok(exp_beta(b, &e.assemble()?)? == moved)
}

/// Left and right multiplication matrices of `λ`, one pair per `W`-vector.
///
/// `λ = Σ_k Σ_{i,j} L_k[i][j] φ^{w(k) m(j)}_{m(i)} + R_k[i][j] φ^{m(j) w(k)}_{m(i)}`.
/// For odd `w(k)` the maps are even on `M`, for even `w(k)` they are odd.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LRMatrices {
    #[serde(rename = "M")]
    pub m: Vec<usize>,
    #[serde(rename = "W")]
    pub w: Vec<usize>,
    pub left: Vec<Vec<Vec<Rational>>>,
    pub right: Vec<Vec<Vec<Rational>>>,
}

impl LRMatrices {
    pub fn new(
        space: &GradedSpace,
        m: Vec<usize>,
        w: Vec<usize>,
        left: Vec<Vec<Vec<Rational>>>,
        right: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let n = m.len();
        if left.len() != w.len() || right.len() != w.len() {
            return Err(Error::Shape {
                expected_rows: w.len(),
                expected_cols: n,
            });
        }
        for (k, &wk) in w.iter().enumerate() {
            let flip = space.parity(wk)? == Parity::Even;
            for mat in [&left[k], &right[k]] {
                if mat.len() != n || mat.iter().any(|r| r.len() != n) {
                    return Err(Error::Shape {
                        expected_rows: n,
                        expected_cols: n,
                    });
                }
                for (i, row) in mat.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        let same = space.parity(m[i])? == space.parity(m[j])?;
                        if !x.is_zero() && same == flip {
                            return Err(Error::ParityMixing {
                                row: i + 1,
                                col: j + 1,
                            });
                        }
                    }
                }
            }
        }
        Ok(LRMatrices { m, w, left, right })
    }

    pub fn lambda(&self, space: GradedSpace) -> Coderivation<Rational> {
        let mut out = Coderivation::zero(space);
        for (k, &wk) in self.w.iter().enumerate() {
            for (i, &mi) in self.m.iter().enumerate() {
                for (j, &mj) in self.m.iter().enumerate() {
                    let l = &self.left[k][i][j];
                    if !l.is_zero() {
                        out.add_term_unchecked(
                            Term::new(Word::from([wk as u8, mj as u8]), mi),
                            l.clone(),
                        );
                    }
                    let r = &self.right[k][i][j];
                    if !r.is_zero() {
                        out.add_term_unchecked(
                            Term::new(Word::from([mj as u8, wk as u8]), mi),
                            r.clone(),
                        );
                    }
                }
            }
        }
        out
    }

    fn diagonal_of(mat: &[Vec<Rational>]) -> Vec<Rational> {
        (0..mat.len()).map(|i| mat[i][i].clone()).collect()
    }
}

fn diag(entries: &[i64]) -> Vec<Vec<Rational>> {
    let n = entries.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::from(entries[i])
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Rational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        s += &(&a[i][k] * &bk[j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// One extension of the simple `0|1` algebra `δ = ψ³³₃` by the trivial
/// algebra on `M = ⟨v1, v2⟩`.
#[derive(Clone, Debug)]
pub struct Simple01Solution {
    pub lr: LRMatrices,
    pub codifferential: Coderivation<Rational>,
    /// Catalog label and witness `g` with `g*d = catalog formula`.
    pub matched: Option<(String, Witness)>,
}

impl Simple01Solution {
    pub fn l(&self) -> &[Vec<Rational>] {
        &self.lr.left[0]
    }

    pub fn r(&self) -> &[Vec<Rational>] {
        &self.lr.right[0]
    }

    /// `L² = L`, `R² = -R`, `LR = RL`.
    pub fn satisfies_relations(&self) -> bool {
        let (l, r) = (self.l(), self.r());
        let neg_r: Vec<Vec<Rational>> = r
            .iter()
            .map(|row| row.iter().map(|x| -x).collect())
            .collect();
        mat_mul(l, l) == l && mat_mul(r, r) == neg_r && mat_mul(l, r) == mat_mul(r, l)
    }
}

pub const SIMPLE01_TARGETS: [&str; 10] = [
    "d_2", "d_3", "d_4", "d_5", "d_6", "d_7", "d_8", "d_9", "d_10", "d_11",
];

/// Diagonal `(L, R)` with `L² = L`, `R² = -R`, one per orbit of the swap
/// `v1 ↔ v2`, each assembled into `δ + λ` and matched against
/// [`SIMPLE01_TARGETS`].
pub fn enumerate_simple01_solutions(seed: u64) -> Result<Vec<Simple01Solution>> {
    let space = GradedSpace::standard();
    let delta = crate::coder::parse_rational_coderivation(space, "psi(3,3;3)")?;
    let zero = Coderivation::zero(space);
    let key = |l: [i64; 2], r: [i64; 2]| (l[0], l[1], -r[0], -r[1]);
    let mut pairs: Vec<([i64; 2], [i64; 2])> = Vec::new();
    for l in [[1, 1], [0, 0], [1, 0], [0, 1]] {
        for r in [[-1, -1], [-1, 0], [0, -1], [0, 0]] {
            let swapped = ([l[1], l[0]], [r[1], r[0]]);
            if key(l, r) >= key(swapped.0, swapped.1) && !pairs.contains(&(l, r)) {
                pairs.push((l, r));
            }
        }
    }
    let targets: Vec<(String, Coderivation<Rational>)> = SIMPLE01_TARGETS
        .iter()
        .map(|t| catalog::get(t, None).map(|e| (t.to_string(), e.formula)))
        .collect::<Result<_>>()?;
    let opts = SearchOptions {
        seed,
        ..SearchOptions::default()
    };
    pairs
        .into_par_iter()
        .map(|(l, r)| {
            let lr = LRMatrices::new(&space, vec![1, 2], vec![3], vec![diag(&l)], vec![diag(&r)])?;
            let lambda = lr.lambda(space);
            let datum = ExtensionDatum::new(
                vec![1, 2],
                vec![3],
                delta.clone(),
                zero.clone(),
                lambda,
                zero.clone(),
            )?;
            if !check_extension(&datum)?.all_hold() {
                return Ok(None);
            }
            let d = datum.assemble()?;
            let mut matched = None;
            for (label, target) in &targets {
                if let Verdict::Equivalent(w) = find_witness(&d, target, &opts)? {
                    matched = Some((label.clone(), w));
                    break;
                }
            }
            Ok(Some(Simple01Solution {
                lr,
                codifferential: d,
                matched,
            }))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// `(diag L, diag R)` for display.
pub fn simple01_diagonals(s: &Simple01Solution) -> (Vec<Rational>, Vec<Rational>) {
    (
        LRMatrices::diagonal_of(s.l()),
        LRMatrices::diagonal_of(s.r()),
    )
}
