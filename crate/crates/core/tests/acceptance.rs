//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use codiff_core::catalog::{self, CellStatus};
use codiff_core::extension::SIMPLE01_TARGETS;
use codiff_core::linalg::{SparseMatrix, SparseVec};
use codiff_core::{
    basis_terms, coboundary, cohomology_dims, enumerate_simple01_solutions, extend_to_order,
    infinitesimal_deformation, infinitesimal_deformation_with_basis, is_codifferential, mc_defect,
    obstruction_relations, parse_coderivation, parse_rational_coderivation, pullback,
    verify_equivalence, Coderivation, GradedSpace, LinearAutomorphism, LinearComponent, Parity,
    ParityPair, Polynomial, Rational, TensorSum, Term, Word,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const S: GradedSpace = GradedSpace::standard();

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

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
    let d = parse_coderivation(S, &format!("({text})*psi(1,1;3)"), Some(vars)).unwrap();
    d.coeff(&Word::from([1, 1]), 3).unwrap().clone()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every single-term coderivation of arity `0..=max`, both parities.
fn basis_cochains(max: usize) -> Vec<Coderivation<Rational>> {
    let mut out = Vec::new();
    for n in 0..=max {
        for p in [Parity::Even, Parity::Odd] {
            for Term { word, target, .. } in basis_terms(&S, n, p) {
                out.push(Coderivation::basis(S, word, usize::from(target)).unwrap());
            }
        }
    }
    out
}

fn parity(f: &Coderivation<Rational>) -> Parity {
    f.parity().unwrap().unwrap()
}

fn table() -> Outcome {
    let start = Instant::now();
    let r = catalog::reproduce_table().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for row in &r.rows {
        for (n, st) in row.status.iter().enumerate() {
            if *st != CellStatus::Match {
                println!(
                    "    {} H{n}: computed {}, table {} ({st:?})",
                    row.label, row.computed[n], row.expected[n]
                );
            }
        }
    }
    ensure(r.mismatches == 0, || {
        format!("{} undocumented mismatches", r.mismatches)
    })?;
    ensure(r.matches >= 95, || {
        format!("only {} cells match", r.matches)
    })?;
    ensure(elapsed.as_secs() < 300, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} of {} cells match, {} documented, {:.1?}",
        r.matches,
        r.cells(),
        r.documented,
        elapsed
    ))
}

fn codifferentials() -> Outcome {
    let rows = catalog::table_rows();
    for e in &rows {
        let chk = is_codifferential(&e.formula).map_err(|x| x.to_string())?;
        ensure(chk.holds, || format!("{}: [d,d] = {}", e.label, chk.defect))?;
    }
    Ok(format!("{} catalog formulas", rows.len()))
}

fn d_squared() -> Outcome {
    let fs = basis_cochains(3);
    let rows = catalog::table_rows();
    for e in &rows {
        for f in &fs {
            let dd = coboundary(&e.formula, &coboundary(&e.formula, f).unwrap()).unwrap();
            ensure(dd.is_zero(), || format!("{}: D²({f}) = {dd}", e.label))?;
        }
    }
    Ok(format!(
        "{} entries x {} basis cochains",
        rows.len(),
        fs.len()
    ))
}

fn lie_axioms() -> Outcome {
    let fs = basis_cochains(2);
    let mut checked = 0usize;
    for f in &fs {
        for g in &fs {
            let sign = if parity(f) == Parity::Odd && parity(g) == Parity::Odd {
                q(1)
            } else {
                q(-1)
            };
            let lhs = f.bracket(g).unwrap();
            let rhs = g.bracket(f).unwrap().scale(&sign);
            ensure(lhs == rhs, || format!("antisymmetry fails for {f}, {g}"))?;
        }
    }
    let brackets: Vec<Vec<Coderivation<Rational>>> = fs
        .iter()
        .map(|f| fs.iter().map(|g| f.bracket(g).unwrap()).collect())
        .collect();
    let odd = |x: &Coderivation<Rational>| parity(x) == Parity::Odd;
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in fs.iter().enumerate() {
            for (k, h) in fs.iter().enumerate() {
                let sgn = |a: &Coderivation<Rational>, b: &Coderivation<Rational>| {
                    if odd(a) && odd(b) {
                        q(-1)
                    } else {
                        q(1)
                    }
                };
                let a = f.bracket(&brackets[j][k]).unwrap().scale(&sgn(f, h));
                let b = g.bracket(&brackets[k][i]).unwrap().scale(&sgn(g, f));
                let c = h.bracket(&brackets[i][j]).unwrap().scale(&sgn(h, g));
                let sum = a.add(&b).unwrap().add(&c).unwrap();
                ensure(sum.is_zero(), || format!("Jacobi fails for {f}, {g}, {h}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{} antisymmetry pairs, {checked} Jacobi triples",
        fs.len() * fs.len()
    ))
}

/// Cohomology dimensions through degree 4 and the ranks of `v ↦ d(v ⊗ -)`
/// and `v ↦ d(- ⊗ v)`; all are invariant under pullback.
fn invariants(d: &Coderivation<Rational>) -> (Vec<ParityPair>, usize, usize) {
    let rank = |left: bool| {
        let cols: Vec<SparseVec> = (1..=3u8)
            .map(|i| {
                let mut col = SparseVec::new();
                for j in 1..=3u8 {
                    for k in 1..=3usize {
                        let w = if left { [i, j] } else { [j, i] };
                        if let Some(x) = d.coeff(&Word::from(w), k) {
                            col.insert(3 * (j as usize - 1) + k - 1, x.clone());
                        }
                    }
                }
                col
            })
            .collect();
        SparseMatrix::from_columns(9, cols).rank()
    };
    (cohomology_dims(d, 4).unwrap().h, rank(true), rank(false))
}

fn simple01() -> Outcome {
    let sols = enumerate_simple01_solutions(0).map_err(|e| e.to_string())?;
    ensure(sols.len() == 10, || format!("{} solutions", sols.len()))?;
    let mut hit = BTreeSet::new();
    for s in &sols {
        ensure(s.satisfies_relations(), || "L, R relations fail".into())?;
        ensure(is_codifferential(&s.codifferential).unwrap().holds, || {
            format!("{} is not a codifferential", s.codifferential)
        })?;
        let (label, w) = s
            .matched
            .as_ref()
            .ok_or_else(|| format!("{} unmatched", s.codifferential))?;
        let chk = verify_equivalence(&s.codifferential, &entry(label), w).unwrap();
        ensure(chk.holds, || format!("witness for {label} fails"))?;
        // the targets are pairwise separated by invariants, so the match is unique
        let inv = invariants(&s.codifferential);
        let same: Vec<_> = SIMPLE01_TARGETS
            .iter()
            .filter(|t| invariants(&entry(t)) == inv)
            .collect();
        ensure(same.len() == 1, || {
            format!("{} shares invariants with {same:?}", s.codifferential)
        })?;
        hit.insert(label.clone());
    }
    let targets: BTreeSet<String> = SIMPLE01_TARGETS.iter().map(|s| s.to_string()).collect();
    ensure(hit == targets, || format!("matched {hit:?}"))?;
    Ok("10 solutions, bijective onto d_2..d_11".into())
}

fn flatness() -> Outcome {
    let s = infinitesimal_deformation_with_basis(&entry("d_11"), vec![c("psi(2,2;3)")])
        .map_err(|e| e.to_string())?;
    let s = extend_to_order(&s, 4).unwrap();
    ensure(mc_defect(&s).unwrap().is_zero(), || "d_11 defect".into())?;
    ensure(s.current.bracket(&s.current).unwrap().is_zero(), || {
        "d_11: [d_inf, d_inf] != 0".into()
    })?;
    let s12 = infinitesimal_deformation(&entry("d_12")).unwrap();
    ensure(s12.num_parameters() == 1, || "d_12 parameter count".into())?;
    let s12 = extend_to_order(&s12, 4).unwrap();
    ensure(mc_defect(&s12).unwrap().is_zero(), || "d_12 defect".into())?;
    ensure(s12.current.bracket(&s12.current).unwrap().is_zero(), || {
        "d_12: [d_inf, d_inf] != 0".into()
    })?;
    Ok(format!("d_11: {}; d_12: {}", s.current, s12.current))
}

fn d13_planes() -> Outcome {
    let classic = vec![
        c("psi(3,2;1) - psi(2,3;1)"),
        c("psi(3,2;2) - psi(2,3;2) + psi(3,3;3)"),
        c("psi(2,1;3)"),
        c("psi(1,1;3)"),
    ];
    let s = infinitesimal_deformation_with_basis(&entry("d_13(0:0)"), classic).unwrap();
    let s = extend_to_order(&s, 3).unwrap();
    let ideal = obstruction_relations(&s);
    let p12 = LinearComponent::coordinate(4, &[0, 1]);
    let p34 = LinearComponent::coordinate(4, &[2, 3]);
    for p in [&p12, &p34] {
        ensure(ideal.vanishes_on(p), || {
            format!("relations do not vanish on {}", p.display(&s.parameters))
        })?;
    }
    ensure(ideal.components == vec![p12.clone(), p34.clone()], || {
        format!("components {:?}", ideal.components)
    })?;
    // non-containment: each plane has points off the other plane and
    // points off both planes are not zeros
    let on12 = [q(0), q(0), q(1), q(2)];
    let on34 = [q(1), q(2), q(0), q(0)];
    ensure(ideal.is_zero_at(&on12) && ideal.is_zero_at(&on34), || {
        "plane points are not zeros".into()
    })?;
    let mut off = 0;
    let grid = [-2i64, -1, 0, 1, 2];
    for a in grid {
        for b in grid {
            for x in grid {
                for y in grid {
                    let pt = [q(a), q(b), q(x), q(y)];
                    let on_union = (a == 0 && b == 0) || (x == 0 && y == 0);
                    ensure(ideal.is_zero_at(&pt) == on_union, || {
                        format!("zero set disagrees at ({a},{b},{x},{y})")
                    })?;
                    off += usize::from(!on_union);
                }
            }
        }
    }
    Ok(format!(
        "{} generators; union of two planes; {off} off-plane grid points are non-zeros",
        ideal.generators.len()
    ))
}

fn d14() -> Outcome {
    let s = infinitesimal_deformation(&entry("d_14")).unwrap();
    ensure(s.num_parameters() == 3, || {
        format!("{} parameters", s.num_parameters())
    })?;
    let s3 = extend_to_order(&s, 3).unwrap();
    let ideal = obstruction_relations(&s3);
    ensure(ideal.is_trivial(), || {
        format!("relations {:?}", ideal.generators)
    })?;
    ensure(s3.current == s.current, || {
        "infinitesimal deformation was corrected".into()
    })?;
    Ok("3 parameters, no relations".into())
}

fn d15_generic() -> Outcome {
    let mut found = Vec::new();
    for (p, qq) in [(2, 1), (3, 1)] {
        let d = catalog::family_formula("d_15", &q(p), &q(qq)).unwrap();
        let s = extend_to_order(&infinitesimal_deformation(&d).unwrap(), 4).unwrap();
        let ideal = obstruction_relations(&s);
        ensure(ideal.generators.len() == 1, || {
            format!("({p}:{qq}): generators {:?}", ideal.generators)
        })?;
        let vars = s.vars();
        let expected = poly(&format!("t1^2*({} + t2)*({} - t2)", p + qq, p - qq), &vars);
        ensure(ideal.generators[0].is_associate(&expected), || {
            format!("({p}:{qq}): generator {}", ideal.generators[0])
        })?;
        found.push(format!("({p}:{qq}) {}", ideal.generators[0]));
    }
    Ok(found.join("; "))
}

fn basis_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gs: Vec<LinearAutomorphism> = (0..20)
        .map(|_| LinearAutomorphism::random(S, &mut rng))
        .collect();
    let labels = ["d_1", "d_11", "d_13(1:0)", "d_15(1:1)"];
    for l in labels {
        let d = entry(l);
        let h = cohomology_dims(&d, 3).unwrap().h;
        for g in &gs {
            let pd = pullback(g, &d).unwrap();
            ensure(cohomology_dims(&pd, 3).unwrap().h == h, || {
                format!("{l}: dims change under {:?}", g.matrix())
            })?;
        }
    }
    Ok(format!("{} maps x {} entries", gs.len(), labels.len()))
}

fn words(max: usize) -> Vec<Word> {
    (0..=max).flat_map(|n| S.enumerate_words(n)).collect()
}

fn apply(f: &Coderivation<Rational>, x: &TensorSum<Rational>) -> TensorSum<Rational> {
    f.evaluate_sum(x).unwrap()
}

fn combine(
    a: &TensorSum<Rational>,
    b: &TensorSum<Rational>,
    sign: &Rational,
) -> TensorSum<Rational> {
    let mut out = a.clone();
    for (w, x) in b {
        let e = out.entry(w.clone()).or_insert_with(|| q(0));
        *e = &*e + &(sign * x);
    }
    out.retain(|_, x| *x != q(0));
    out
}

fn oracle() -> Outcome {
    let fs = basis_cochains(2);
    let ws = words(4);
    let mut checks = 0usize;
    for f in &fs {
        for g in &fs {
            let br = f.bracket(g).unwrap();
            let co = f.compose(g).unwrap();
            let sign = if parity(f) == Parity::Odd && parity(g) == Parity::Odd {
                q(1)
            } else {
                q(-1)
            };
            for w in &ws {
                let single: TensorSum<Rational> = [(w.clone(), q(1))].into_iter().collect();
                let fg = apply(f, &apply(g, &single));
                let gf = apply(g, &apply(f, &single));
                let expect = combine(&fg, &gf, &sign);
                let got = br.evaluate(w).unwrap();
                ensure(got == expect, || format!("[{f},{g}] on {w:?}"))?;
                let proj: TensorSum<Rational> =
                    fg.into_iter().filter(|(u, _)| u.len() == 1).collect();
                let got: TensorSum<Rational> = co
                    .evaluate(w)
                    .unwrap()
                    .into_iter()
                    .filter(|(u, _)| u.len() == 1)
                    .collect();
                ensure(got == proj, || format!("{f} o {g} on {w:?}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs x {} words = {checks} checks",
        fs.len() * fs.len(),
        ws.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("table reproduction", table),
        ("codifferential suite", codifferentials),
        ("D^2 = 0 on arity <= 3", d_squared),
        ("graded Lie axioms", lie_axioms),
        ("simple 0|1 enumeration", simple01),
        ("deformation flatness d_11, d_12", flatness),
        ("d_13(0:0) relation planes", d13_planes),
        ("d_14 obstructions", d14),
        ("d_15 generic relation", d15_generic),
        ("basis invariance", basis_invariance),
        ("oracle equivalence", oracle),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.1?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
