//! Hochschild cohomology of an arity-2 codifferential `d`.
//!
//! `D = [d, -]` maps `C^n_p` to `C^{n+1}_{p+1}`; `C^0 ≅ W` and `C^{-1} = 0`.
//! Dimensions come from exact ranks of the per-sector matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coder::{basis_terms, is_codifferential, Coderivation, Term};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Rational;
use crate::space::{GradedSpace, Parity};

/// Ordered basis of one parity sector of `C^n`.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub arity: usize,
    pub parity: Parity,
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
}

impl SectorBasis {
    pub fn new(space: &GradedSpace, arity: usize, parity: Parity) -> Self {
        let terms = basis_terms(space, arity, parity);
        let index = terms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        SectorBasis {
            arity,
            parity,
            terms,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of `c`; fails if a term lies outside the sector.
    pub fn coords(&self, c: &Coderivation<Rational>) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (t, v) in c.terms() {
            let Some(i) = self.position(t) else {
                if t.arity() != self.arity {
                    return Err(Error::ArityMismatch {
                        expected: self.arity,
                        found: t.arity(),
                    });
                }
                return Err(Error::ParityMismatch {
                    expected: self.parity,
                    found: self.parity.flip(),
                });
            };
            out.insert(i, v.clone());
        }
        Ok(out)
    }

    pub fn element(&self, space: GradedSpace, v: &SparseVec) -> Coderivation<Rational> {
        let mut c = Coderivation::zero(space);
        for (i, x) in v {
            c.add_term_unchecked(self.terms[*i].clone(), x.clone());
        }
        c
    }
}

/// Matrix of `D` from `C^n_p` to `C^{n+1}_{p+1}`.
#[derive(Clone, Debug)]
pub struct CoboundaryMatrix {
    pub degree: usize,
    pub parity: Parity,
    pub source: Arc<SectorBasis>,
    pub target: Arc<SectorBasis>,
    pub matrix: SparseMatrix,
}

fn check_base(d: &Coderivation<Rational>, trust: bool) -> Result<()> {
    if !d.is_arity(2) {
        let found = d
            .terms()
            .map(|(t, _)| t.arity())
            .find(|&a| a != 2)
            .unwrap_or(0);
        return Err(Error::ArityMismatch { expected: 2, found });
    }
    if !trust {
        let chk = is_codifferential(d)?;
        if !chk.holds {
            return Err(Error::NotCodifferential(chk.defect.num_terms()));
        }
    } else if let Some(Parity::Even) = d.parity()? {
        return Err(Error::NotOdd(Parity::Even));
    }
    Ok(())
}

/// The matrix of `D` on the given sector of `C^n`. `d` must be an odd
/// arity-2 codifferential.
pub fn coboundary_matrix(
    d: &Coderivation<Rational>,
    n: usize,
    parity: Parity,
) -> Result<CoboundaryMatrix> {
    check_base(d, false)?;
    Ok(build_matrix(d, n, parity))
}

/// As [`coboundary_matrix`] but skips the `[d,d] = 0` check.
pub fn coboundary_matrix_trusted(
    d: &Coderivation<Rational>,
    n: usize,
    parity: Parity,
) -> Result<CoboundaryMatrix> {
    check_base(d, true)?;
    Ok(build_matrix(d, n, parity))
}

fn build_matrix(d: &Coderivation<Rational>, n: usize, parity: Parity) -> CoboundaryMatrix {
    let space = *d.space();
    let source = Arc::new(SectorBasis::new(&space, n, parity));
    let target = Arc::new(SectorBasis::new(&space, n + 1, parity.flip()));
    let cols: Vec<SparseVec> = source
        .terms()
        .par_iter()
        .map(|t| {
            let mut f = Coderivation::zero(space);
            f.add_term_unchecked(t.clone(), Rational::one());
            let img = d.bracket(&f).expect("homogeneous inputs");
            target
                .coords(&img)
                .expect("image lies in the target sector")
        })
        .collect();
    CoboundaryMatrix {
        degree: n,
        parity,
        matrix: SparseMatrix::from_columns(target.len(), cols),
        source,
        target,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityPair {
    pub even: usize,
    pub odd: usize,
}

impl ParityPair {
    pub fn new(even: usize, odd: usize) -> Self {
        ParityPair { even, odd }
    }

    pub fn get(&self, p: Parity) -> usize {
        match p {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    fn set(&mut self, p: Parity, v: usize) {
        match p {
            Parity::Even => self.even = v,
            Parity::Odd => self.odd = v,
        }
    }
}

impl std::fmt::Display for ParityPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

impl std::str::FromStr for ParityPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected `even|odd`, got `{s}`"),
        };
        let (e, o) = s.split_once('|').ok_or_else(bad)?;
        Ok(ParityPair {
            even: e.trim().parse().map_err(|_| bad())?,
            odd: o.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Cocycle, coboundary and cohomology dimensions for degrees `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub h: Vec<ParityPair>,
    pub z: Vec<ParityPair>,
    pub b: Vec<ParityPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Coderivation<Rational>>>>,
}

impl CohomologyReport {
    pub fn max_degree(&self) -> usize {
        self.h.len().saturating_sub(1)
    }
}

/// Exact `h^n = z^n - b^n` for `0 ≤ n ≤ n_max`.
pub fn cohomology_dims(d: &Coderivation<Rational>, n_max: usize) -> Result<CohomologyReport> {
    check_base(d, false)?;
    let space = *d.space();
    // rank[n][p] = rank of D on C^n_p
    let jobs: Vec<(usize, Parity)> = (0..=n_max)
        .flat_map(|n| [(n, Parity::Even), (n, Parity::Odd)])
        .collect();
    let ranks: Vec<usize> = jobs
        .par_iter()
        .map(|&(n, p)| build_matrix(d, n, p).matrix.rank())
        .collect();
    let rank = |n: usize, p: Parity| ranks[2 * n + p.bit() as usize];
    let mut report = CohomologyReport {
        h: Vec::new(),
        z: Vec::new(),
        b: Vec::new(),
        basis: None,
    };
    for n in 0..=n_max {
        let (ce, co) = space.cochain_dims(n);
        let mut z = ParityPair::default();
        let mut b = ParityPair::default();
        let mut h = ParityPair::default();
        for p in [Parity::Even, Parity::Odd] {
            let dim = if p == Parity::Even { ce } else { co };
            let zp = dim - rank(n, p);
            let bp = if n == 0 { 0 } else { rank(n - 1, p.flip()) };
            z.set(p, zp);
            b.set(p, bp);
            h.set(p, zp - bp);
        }
        report.z.push(z);
        report.b.push(b);
        report.h.push(h);
    }
    Ok(report)
}

/// As [`cohomology_dims`], also filling in class representatives.
pub fn cohomology_with_basis(d: &Coderivation<Rational>, n_max: usize) -> Result<CohomologyReport> {
    let mut r = cohomology_dims(d, n_max)?;
    let mut all = Vec::new();
    for n in 0..=n_max {
        all.push(cohomology_basis(d, n)?);
    }
    r.basis = Some(all);
    Ok(r)
}

/// Representatives of a basis of `H^n`, even classes first.
///
/// Cocycles are reduced modulo coboundaries onto the coordinates left free
/// by the coboundary pivots, and the reduced vectors are put in reduced
/// echelon form. The result depends only on `d` and the basis order.
pub fn cohomology_basis(
    d: &Coderivation<Rational>,
    n: usize,
) -> Result<Vec<Coderivation<Rational>>> {
    check_base(d, false)?;
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        out.extend(sector_basis(d, n, p));
    }
    Ok(out)
}

/// Odd or even part of [`cohomology_basis`].
pub fn cohomology_basis_sector(
    d: &Coderivation<Rational>,
    n: usize,
    parity: Parity,
) -> Result<Vec<Coderivation<Rational>>> {
    check_base(d, false)?;
    Ok(sector_basis(d, n, parity))
}

fn sector_basis(d: &Coderivation<Rational>, n: usize, p: Parity) -> Vec<Coderivation<Rational>> {
    let space = *d.space();
    let here = build_matrix(d, n, p);
    let mut cycles = Echelon::new(here.target.len());
    for c in &here.matrix.cols {
        cycles.insert(c);
    }
    let mut bounds = Echelon::new(here.source.len());
    if n > 0 {
        for c in &build_matrix(d, n - 1, p.flip()).matrix.cols {
            bounds.insert(c);
        }
    }
    let reduced: Vec<SparseVec> = cycles
        .kernel()
        .iter()
        .map(|z| bounds.reduce(z).residue)
        .collect();
    rref(&reduced, here.source.len())
        .iter()
        .map(|v| here.source.element(space, v))
        .collect()
}

/// Reduced row echelon basis of the span of `vecs`.
pub(crate) fn rref(vecs: &[SparseVec], dim: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(dim);
    for v in vecs {
        e.insert(v);
    }
    e.reduced_basis()
}

/// Preimage and obstruction part of a target under `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoboundarySolution<S: crate::scalar::Coeff> {
    pub preimage: Coderivation<S>,
    pub residue: Coderivation<S>,
}

impl<S: crate::scalar::Coeff> CoboundarySolution<S> {
    pub fn is_exact(&self) -> bool {
        self.residue.is_zero()
    }
}

/// Solves `D(f) = target` for a target in a single sector of `C^{n+1}`.
/// When the target is not a coboundary the returned residue is its
/// component in the canonical complement of the image.
pub fn solve_coboundary(
    d: &Coderivation<Rational>,
    target: &Coderivation<Rational>,
) -> Result<CoboundarySolution<Rational>> {
    CoboundarySolver::new(d)?.solve(target)
}

struct SectorSolver {
    source: Arc<SectorBasis>,
    target: Arc<SectorBasis>,
    echelon: Echelon,
}

/// Caches the elimination of each sector of `D` for repeated solves.
pub struct CoboundarySolver {
    d: Coderivation<Rational>,
    cache: Mutex<BTreeMap<(usize, Parity), Arc<SectorSolver>>>,
}

impl CoboundarySolver {
    pub fn new(d: &Coderivation<Rational>) -> Result<Self> {
        check_base(d, false)?;
        Ok(CoboundarySolver {
            d: d.clone(),
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn base(&self) -> &Coderivation<Rational> {
        &self.d
    }

    fn sector(&self, n: usize, p: Parity) -> Arc<SectorSolver> {
        if let Some(s) = self.cache.lock().unwrap().get(&(n, p)) {
            return s.clone();
        }
        let m = build_matrix(&self.d, n, p);
        let mut echelon = Echelon::new(m.target.len());
        for c in &m.matrix.cols {
            echelon.insert(c);
        }
        let s = Arc::new(SectorSolver {
            source: m.source,
            target: m.target,
            echelon,
        });
        self.cache.lock().unwrap().insert((n, p), s.clone());
        s
    }

    /// Free coordinates of the image of `D` on `C^n_p` inside
    /// `C^{n+1}_{p+1}`, as basis cochains.
    pub fn complement(&self, n: usize, p: Parity) -> Vec<Term> {
        let s = self.sector(n, p);
        s.echelon
            .free_coordinates()
            .into_iter()
            .map(|i| s.target.terms()[i].clone())
            .collect()
    }

    pub fn solve(&self, target: &Coderivation<Rational>) -> Result<CoboundarySolution<Rational>> {
        let space = *self.d.space();
        if target.is_zero() {
            return Ok(CoboundarySolution {
                preimage: Coderivation::zero(space),
                residue: Coderivation::zero(space),
            });
        }
        if target.space() != &space {
            return Err(Error::SpaceMismatch);
        }
        let arity = target.max_arity().unwrap_or(0);
        if !target.is_arity(arity) {
            let found = target.terms().map(|(t, _)| t.arity()).min().unwrap_or(0);
            return Err(Error::ArityMismatch {
                expected: arity,
                found,
            });
        }
        let p = target.parity()?.expect("nonzero target");
        if arity == 0 {
            return Ok(CoboundarySolution {
                preimage: Coderivation::zero(space),
                residue: target.clone(),
            });
        }
        let s = self.sector(arity - 1, p.flip());
        let coords = s.target.coords(target)?;
        let red = s.echelon.reduce(&coords);
        Ok(CoboundarySolution {
            preimage: s.source.element(space, &red.combination),
            residue: s.target.element(space, &red.residue),
        })
    }

    /// Solves monomial by monomial in the parameters.
    pub fn solve_poly(
        &self,
        target: &Coderivation<Polynomial>,
    ) -> Result<CoboundarySolution<Polynomial>> {
        let space = *self.d.space();
        let vars = target
            .terms()
            .map(|(_, c)| c.vars().clone())
            .find(|v| !v.is_empty());
        let mut slices: BTreeMap<Monomial, Coderivation<Rational>> = BTreeMap::new();
        for (t, c) in target.terms() {
            for (m, r) in c.terms() {
                slices
                    .entry(m.clone())
                    .or_insert_with(|| Coderivation::zero(space))
                    .add_term_unchecked(t.clone(), r.clone());
            }
        }
        let mut preimage = Coderivation::zero(space);
        let mut residue = Coderivation::zero(space);
        for (m, slice) in slices {
            let sol = self.solve(&slice)?;
            let mono = |r: &Rational| -> Polynomial {
                match &vars {
                    Some(v) => Polynomial::from_terms(v, [(m.exps().to_vec(), r.clone())])
                        .expect("exponent length matches"),
                    None => Polynomial::constant(r.clone()),
                }
            };
            preimage = preimage.add(&sol.preimage.map_coeffs(mono))?;
            residue = residue.add(&sol.residue.map_coeffs(mono))?;
        }
        Ok(CoboundarySolution { preimage, residue })
    }
}
