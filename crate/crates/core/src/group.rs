//! Linear automorphisms of the graded space and their action on
//! coderivations.
//!
//! A matrix `g` has columns `g(v_j) = Σ_i g[i][j] v_i`. The pullback is
//! `(g*d)(w_1,…,w_n) = g⁻¹ d(g w_1, …, g w_n)`, so `(gh)* = h* ∘ g*`.
//! Parity-preserving `g` are even, so no Koszul signs appear.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coder::{Coderivation, Term};
use crate::cohomology::cohomology_dims;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational};
use crate::space::{GradedSpace, Parity, Word};

/// An invertible parity-preserving matrix on the basis of `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearAutomorphism {
    space: GradedSpace,
    matrix: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

fn identity_matrix(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
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
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Rational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !bk[j].is_zero() {
                            s += &(&a[i][k] * &bk[j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` if singular.
fn mat_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut inv = identity_matrix(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let f = m[col][col].recip().ok()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &f;
            inv[col][j] = &inv[col][j] * &f;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                for j in 0..n {
                    let a = &m[col][j] * &c;
                    m[r][j] -= &a;
                    let b = &inv[col][j] * &c;
                    inv[r][j] -= &b;
                }
            }
        }
    }
    Some(inv)
}

impl LinearAutomorphism {
    /// Validates shape, parity blocks and invertibility.
    pub fn new(space: GradedSpace, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = space.dim();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Shape {
                expected_rows: n,
                expected_cols: n,
            });
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() && space.parity_unchecked(i + 1) != space.parity_unchecked(j + 1) {
                    return Err(Error::ParityMixing {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        let inverse = mat_inverse(&matrix).ok_or(Error::Singular)?;
        Ok(LinearAutomorphism {
            space,
            matrix,
            inverse,
        })
    }

    pub fn identity(space: GradedSpace) -> Self {
        let m = identity_matrix(space.dim());
        LinearAutomorphism {
            space,
            inverse: m.clone(),
            matrix: m,
        }
    }

    pub fn diagonal(space: GradedSpace, entries: &[Rational]) -> Result<Self> {
        let n = space.dim();
        if entries.len() != n {
            return Err(Error::Shape {
                expected_rows: n,
                expected_cols: n,
            });
        }
        let mut m = identity_matrix(n);
        for (i, e) in entries.iter().enumerate() {
            m[i][i] = e.clone();
        }
        LinearAutomorphism::new(space, m)
    }

    /// `v_j ↦ v_{perm[j-1]}` (1-based images).
    pub fn permutation(space: GradedSpace, perm: &[usize]) -> Result<Self> {
        let n = space.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Shape {
                expected_rows: n,
                expected_cols: n,
            });
        }
        for (j, &i) in perm.iter().enumerate() {
            space.check_index(i)?;
            if seen[i - 1] {
                return Err(Error::Singular);
            }
            seen[i - 1] = true;
            m[i - 1][j] = Rational::one();
        }
        LinearAutomorphism::new(space, m)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearAutomorphism {
        LinearAutomorphism {
            space: self.space,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &LinearAutomorphism) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(LinearAutomorphism {
            space: self.space,
            matrix: mat_mul(&self.matrix, &other.matrix),
            inverse: mat_mul(&other.inverse, &self.inverse),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_matrix(self.space.dim())
    }

    /// A random parity-preserving invertible matrix with small entries.
    pub fn random(space: GradedSpace, rng: &mut impl Rng) -> Self {
        loop {
            let n = space.dim();
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if space.parity_unchecked(i + 1) != space.parity_unchecked(j + 1) {
                                Rational::zero()
                            } else {
                                let num: i64 = rng.gen_range(-3..=3);
                                let den: i64 = rng.gen_range(1..=2);
                                Rational::new(num, den).unwrap()
                            }
                        })
                        .collect()
                })
                .collect();
            if let Ok(g) = LinearAutomorphism::new(space, m) {
                return g;
            }
        }
    }
}

impl fmt::Display for LinearAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `g*d` for any parity-preserving automorphism `g`.
pub fn pullback<S: Coeff>(g: &LinearAutomorphism, d: &Coderivation<S>) -> Result<Coderivation<S>> {
    if g.space != *d.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = g.space.dim();
    // columns j with g[k][j] != 0, per row k
    let row_support: Vec<Vec<(usize, &Rational)>> = (0..n)
        .map(|k| {
            g.matrix[k]
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();
    let mut out = Coderivation::zero(g.space);
    for (t, c) in d.terms() {
        // expand each input letter
        let mut partial: Vec<(Vec<u8>, Rational)> = vec![(Vec::new(), Rational::one())];
        for k in t.word.iter() {
            let mut next = Vec::new();
            for (w, x) in &partial {
                for (j, gkj) in &row_support[k - 1] {
                    let mut w2 = w.clone();
                    w2.push(*j as u8 + 1);
                    next.push((w2, x * gkj));
                }
            }
            partial = next;
        }
        let l = t.target() - 1;
        for i in 0..n {
            let gi = &g.inverse[i][l];
            if gi.is_zero() {
                continue;
            }
            for (w, x) in &partial {
                let factor = x * gi;
                out.add_term_unchecked(Term::new(Word::new(w.clone()), i + 1), c.scale(&factor));
            }
        }
    }
    Ok(out)
}

/// Opposite structure: the coefficient of `φ^{I}_i` becomes the Koszul
/// sign of reversing `I` times the coefficient of `φ^{rev I}_i`. For
/// arity 2 the sign is `(-1)^{|v_j||v_k|}`.
pub fn opposite<S: Coeff>(d: &Coderivation<S>) -> Coderivation<S> {
    let space = *d.space();
    let mut out = Coderivation::zero(space);
    for (t, c) in d.terms() {
        let odd = t
            .word
            .iter()
            .filter(|&i| space.parity_unchecked(i) == Parity::Odd)
            .count();
        let negative = (odd * odd.saturating_sub(1) / 2) % 2 == 1;
        let c = if negative { c.neg_ref() } else { c.clone() };
        out.add_term_unchecked(Term::new(t.word.reversed(), t.target()), c);
    }
    out
}

/// An arity-1 even coderivation `β` mapping `W`-vectors into `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaShift {
    beta: Coderivation<Rational>,
}

impl BetaShift {
    /// `β` must be even, of arity 1, and nilpotent as a linear map.
    pub fn new(beta: Coderivation<Rational>) -> Result<Self> {
        if !beta.is_arity(1) {
            let found = beta
                .terms()
                .map(|(t, _)| t.arity())
                .find(|&a| a != 1)
                .unwrap_or(0);
            return Err(Error::ArityMismatch { expected: 1, found });
        }
        if let Some(Parity::Odd) = beta.parity()? {
            return Err(Error::NotEven(Parity::Odd));
        }
        let b = BetaShift { beta };
        let n = b.beta.space().dim();
        let m = b.matrix();
        let mut power = m.clone();
        for _ in 0..n {
            power = mat_mul(&power, &m);
        }
        if power.iter().flatten().any(|x| !x.is_zero()) {
            return Err(Error::NotNilpotent);
        }
        Ok(b)
    }

    /// The single term `coeff * φ^{from}_{to}`.
    pub fn single(space: GradedSpace, from: usize, to: usize, coeff: Rational) -> Result<Self> {
        let mut c = Coderivation::zero(space);
        c.add_term(Word::from([from as u8]), to, coeff)?;
        BetaShift::new(c)
    }

    pub fn zero(space: GradedSpace) -> Self {
        BetaShift {
            beta: Coderivation::zero(space),
        }
    }

    pub fn coderivation(&self) -> &Coderivation<Rational> {
        &self.beta
    }

    /// `B[i][j]` = coefficient of `φ^{j}_i`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.beta.space().dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (t, c) in self.beta.terms() {
            m[t.target() - 1][t.word.get(0) - 1] = c.clone();
        }
        m
    }

    /// The automorphism `exp(β) = Σ β^k / k!` (a finite sum).
    pub fn exp(&self) -> LinearAutomorphism {
        let space = *self.beta.space();
        let b = self.matrix();
        let mut total = identity_matrix(space.dim());
        let mut term = identity_matrix(space.dim());
        for k in 1..=space.dim() {
            term = mat_mul(&term, &b);
            let inv_k = Rational::new(1, k as i64).unwrap();
            for (tr, row) in total.iter_mut().zip(&term) {
                for (t, x) in tr.iter_mut().zip(row) {
                    *t += &(x * &inv_k);
                }
            }
        }
        LinearAutomorphism::new(space, total).expect("unipotent")
    }
}

/// `d ↦ d + [d,β] + ½[[d,β],β] + …`, the action of `exp(β)`.
pub fn exp_beta(b: &BetaShift, d: &Coderivation<Rational>) -> Result<Coderivation<Rational>> {
    if b.beta.space() != d.space() {
        return Err(Error::SpaceMismatch);
    }
    let (even, odd) = d.split_parity();
    let mut out = Coderivation::zero(*d.space());
    for part in [even, odd] {
        let mut term = part;
        let mut k = 0i64;
        let bound = (term.max_arity().unwrap_or(0) + 2) * d.space().dim() + 2;
        while !term.is_zero() {
            out = out.add(&term)?;
            k += 1;
            if k as usize > bound {
                return Err(Error::NotNilpotent);
            }
            term = term.bracket(&b.beta)?.scale(&Rational::new(1, k).unwrap());
        }
    }
    Ok(out)
}

/// A single `β` term as carried in witness JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaTerm {
    pub from: usize,
    pub to: usize,
    pub coeff: Rational,
}

/// An equivalence witness: the automorphism `matrix · exp(β)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub matrix: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaTerm>,
}

impl Witness {
    pub fn from_automorphism(g: &LinearAutomorphism) -> Self {
        Witness {
            matrix: g.matrix.clone(),
            beta: None,
        }
    }

    pub fn automorphism(&self, space: GradedSpace) -> Result<LinearAutomorphism> {
        let g = LinearAutomorphism::new(space, self.matrix.clone())?;
        match &self.beta {
            None => Ok(g),
            Some(b) => {
                let shift = BetaShift::single(space, b.from, b.to, b.coeff.clone())?;
                g.compose(&shift.exp())
            }
        }
    }
}

/// Result of [`verify_equivalence`]; `difference = g*d - d2`.
#[derive(Clone, Debug)]
pub struct EquivalenceCheck {
    pub holds: bool,
    pub difference: Coderivation<Rational>,
}

pub fn verify_equivalence(
    d: &Coderivation<Rational>,
    d2: &Coderivation<Rational>,
    g: &Witness,
) -> Result<EquivalenceCheck> {
    let a = g.automorphism(*d.space())?;
    let difference = pullback(&a, d)?.sub(d2)?;
    Ok(EquivalenceCheck {
        holds: difference.is_zero(),
        difference,
    })
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Equivalent(Witness),
    NotEquivalent(String),
    /// No witness inside the searched family and no separating invariant.
    Inconclusive,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Equivalent(w) => Some(w),
            _ => None,
        }
    }
}

/// Options for [`find_witness`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    /// Extra random shear coefficients drawn from the seed.
    pub random_coefficients: usize,
    /// Degree bound for the cohomology invariant; `None` skips it.
    pub invariant_degree: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            random_coefficients: 8,
            invariant_degree: Some(2),
        }
    }
}

/// Searches for `g` with `g*d = target` among block permutations times at
/// most one elementary shear inside a parity block, times a diagonal
/// matrix solved exactly. Candidates are tried in a fixed order; the
/// first success is returned.
pub fn find_witness(
    d: &Coderivation<Rational>,
    target: &Coderivation<Rational>,
    opts: &SearchOptions,
) -> Result<Verdict> {
    let space = *d.space();
    if target.space() != &space {
        return Err(Error::SpaceMismatch);
    }
    if d == target {
        return Ok(Verdict::Equivalent(Witness::from_automorphism(
            &LinearAutomorphism::identity(space),
        )));
    }
    if d.is_zero() != target.is_zero() {
        return Ok(Verdict::NotEquivalent("exactly one side is zero".into()));
    }
    if let Some(n) = opts.invariant_degree {
        if let (Ok(a), Ok(b)) = (cohomology_dims(d, n), cohomology_dims(target, n)) {
            if a.h != b.h {
                let k = (0..=n).find(|&k| a.h[k] != b.h[k]).unwrap();
                return Ok(Verdict::NotEquivalent(format!(
                    "h^{k} differs: {} vs {}",
                    a.h[k], b.h[k]
                )));
            }
        }
    }
    let coeffs = shear_coefficients(d, target, opts);
    let candidates = candidate_shapes(space, &coeffs);
    let found = candidates.par_iter().find_map_first(|p| {
        let moved = pullback(p, d).ok()?;
        let diag = solve_diagonal(&moved, target)?;
        let g = p.compose(&diag).ok()?;
        (pullback(&g, d).ok()? == *target).then(|| Witness::from_automorphism(&g))
    });
    Ok(match found {
        Some(w) => Verdict::Equivalent(w),
        None => Verdict::Inconclusive,
    })
}

fn shear_coefficients(
    d: &Coderivation<Rational>,
    target: &Coderivation<Rational>,
    opts: &SearchOptions,
) -> Vec<Rational> {
    let mut set: Vec<Rational> = Vec::new();
    let mut push = |r: Rational| {
        if !r.is_zero() && !set.contains(&r) {
            set.push(r);
        }
    };
    for (n, den) in [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (3, 2)] {
        push(Rational::new(n, den).unwrap());
        push(Rational::new(-n, den).unwrap());
    }
    let mut values: Vec<Rational> = d
        .terms()
        .chain(target.terms())
        .map(|(_, c)| c.clone())
        .collect();
    values.sort();
    values.dedup();
    for a in &values {
        for b in &values {
            if let Ok(r) = a.checked_div(b) {
                push(r.clone());
                push(-r);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_coefficients {
        let n: i64 = rng.gen_range(-6..=6);
        let den: i64 = rng.gen_range(1..=4);
        push(Rational::new(n, den).unwrap());
    }
    set
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Block permutations, each optionally followed by one shear
/// `v_j ↦ v_j + c v_i` inside a parity block.
fn candidate_shapes(space: GradedSpace, coeffs: &[Rational]) -> Vec<LinearAutomorphism> {
    let e = space.even_dim();
    let n = space.dim();
    let evens: Vec<usize> = (1..=e).collect();
    let odds: Vec<usize> = (e + 1..=n).collect();
    let mut shears: Vec<Option<(usize, usize, Rational)>> = vec![None];
    for block in [&evens, &odds] {
        for &i in block.iter() {
            for &j in block.iter() {
                if i != j {
                    for c in coeffs {
                        shears.push(Some((i, j, c.clone())));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for pe in permutations(&evens) {
        for po in permutations(&odds) {
            let perm: Vec<usize> = pe.iter().chain(po.iter()).copied().collect();
            let p = LinearAutomorphism::permutation(space, &perm).expect("valid permutation");
            for s in &shears {
                match s {
                    None => out.push(p.clone()),
                    Some((i, j, c)) => {
                        let mut m = identity_matrix(n);
                        m[i - 1][j - 1] = c.clone();
                        let sh = LinearAutomorphism::new(space, m).expect("unipotent");
                        out.push(p.compose(&sh).expect("same space"));
                    }
                }
            }
        }
    }
    out
}

/// Finds `x` with `diag(x)* a = b`, i.e. `Π x_{I} / x_i = b_t / a_t` for
/// every term, by integer elimination on the exponent matrix.
fn solve_diagonal(
    a: &Coderivation<Rational>,
    b: &Coderivation<Rational>,
) -> Option<LinearAutomorphism> {
    let space = *a.space();
    let n = space.dim();
    let keys_a: Vec<&Term> = a.terms().map(|(t, _)| t).collect();
    let keys_b: Vec<&Term> = b.terms().map(|(t, _)| t).collect();
    if keys_a != keys_b {
        return None;
    }
    let mut rows: Vec<(Vec<i64>, Rational)> = a
        .terms()
        .map(|(t, c)| {
            let mut e = vec![0i64; n];
            for k in t.word.iter() {
                e[k - 1] += 1;
            }
            e[t.target() - 1] -= 1;
            (e, b.get(t).unwrap().checked_div(c).unwrap())
        })
        .collect();
    // Integer row reduction; row ops act multiplicatively on the ratios.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r0 = 0;
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (r0..rows.len()).filter(|&r| rows[r].0[col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&r| rows[r].0[col].abs()).unwrap();
            rows.swap(r0, best);
            let mut done = true;
            for r in r0 + 1..rows.len() {
                let q = rows[r].0[col] / rows[r0].0[col];
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(r);
                    let piv = &head[r0];
                    let row = &mut tail[0];
                    for k in 0..n {
                        row.0[k] -= q * piv.0[k];
                    }
                    row.1 = &row.1 * &piv.1.pow(-(q as i32)).ok()?;
                }
                if rows[r].0[col] != 0 {
                    done = false;
                }
            }
            if done {
                pivots.push((r0, col));
                r0 += 1;
                break;
            }
        }
        if r0 == rows.len() {
            break;
        }
    }
    for row in &rows[r0..] {
        if !row.1.is_one() {
            return None;
        }
    }
    // Back substitution, branching over root signs and free values ±1.
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    for mask in 0..(1u32 << free.len()) {
        let mut x: Vec<Option<Rational>> = vec![None; n];
        for (bit, &c) in free.iter().enumerate() {
            x[c] = Some(if mask >> bit & 1 == 1 {
                -Rational::one()
            } else {
                Rational::one()
            });
        }
        if let Some(sol) = back_substitute(&rows, &pivots, x) {
            if let Ok(g) = LinearAutomorphism::diagonal(space, &sol) {
                return Some(g);
            }
        }
    }
    None
}

fn back_substitute(
    rows: &[(Vec<i64>, Rational)],
    pivots: &[(usize, usize)],
    x: Vec<Option<Rational>>,
) -> Option<Vec<Rational>> {
    let Some(&(r, c)) = pivots.last() else {
        return x.into_iter().collect();
    };
    let (exps, ratio) = &rows[r];
    let mut rhs = ratio.clone();
    for (k, &e) in exps.iter().enumerate() {
        if k != c && e != 0 {
            rhs = &rhs * &x[k].as_ref()?.pow(-(e as i32)).ok()?;
        }
    }
    let a = exps[c];
    let base = if a < 0 { rhs.recip().ok()? } else { rhs };
    let root = base.nth_root(a.unsigned_abs() as u32)?;
    let mut options = vec![root.clone()];
    if a % 2 == 0 && !root.is_zero() {
        options.push(-root);
    }
    for v in options {
        let mut next = x.clone();
        next[c] = Some(v);
        if let Some(sol) = back_substitute(rows, &pivots[..pivots.len() - 1], next) {
            return Some(sol);
        }
    }
    None
}

/// Convenience: a label-to-label check in one call.
pub fn equivalent(
    d: &Coderivation<Rational>,
    target: &Coderivation<Rational>,
    seed: u64,
) -> Result<Verdict> {
    find_witness(
        d,
        target,
        &SearchOptions {
            seed,
            ..SearchOptions::default()
        },
    )
}

/// Terms grouped by target index, for diagnostics.
pub fn terms_by_target(d: &Coderivation<Rational>) -> BTreeMap<usize, Vec<(Word, Rational)>> {
    let mut out: BTreeMap<usize, Vec<(Word, Rational)>> = BTreeMap::new();
    for (t, c) in d.terms() {
        out.entry(t.target())
            .or_default()
            .push((t.word.clone(), c.clone()));
    }
    out
}
