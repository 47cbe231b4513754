//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use homcat::acyclic::{build_p, verify_prism, InvarianceContext};
use homcat::chain::{check_retract_obstruction, homology, solve_boundary, ChainComplex, Coefficients, Solve};
use homcat::complexes::{build_recipe, CwRecipe};
use homcat::convexity::{check_acyclic, cone_chain_homotopy, first_vertex_cone, product_cone, verify_cone, ConeFamily};
use homcat::cosimplicial::{check_axiom_join, finset_standard, sset_hollow, sset_standard, AxiomStatus, Cosimplicial};
use homcat::fincat::{product, Category, FinSet, SSetCategory, TableCategory};
use homcat::homotopy::{concat_homotopy, constant_homotopy, homotopy_category, homotopy_classes};
use homcat::nerve::{nerve, yoneda_check};
use homcat::report::check_all_axioms;
use homcat::simplex::{verify_simplicial_identities, verify_simplicial_identities_with, Generator};
use homcat::simplicial::TruncSimplicialSet;
use homcat::Error;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: homcat::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture is readable")
}

fn recipe(name: &str) -> Result<Arc<TruncSimplicialSet>, String> {
    let r = lib(CwRecipe::from_json(&read_fixture(name)))?;
    Ok(lib(build_recipe(&r))?.result().clone())
}

/// Named simplicial sets of the corpus at level `l`.
fn corpus(l: usize) -> Result<Vec<(String, Arc<TruncSimplicialSet>)>, String> {
    let mut out = vec![("point".to_string(), Arc::new(TruncSimplicialSet::point(l)))];
    for m in 0..=3 {
        out.push((format!("Δ[{m}]"), Arc::new(TruncSimplicialSet::standard(m, l))));
    }
    for m in [2, 3] {
        out.push((format!("∂Δ[{m}]"), Arc::new(TruncSimplicialSet::boundary(m, l))));
    }
    if l == 3 {
        out.push(("torus".to_string(), recipe("torus.json")?));
        out.push(("klein".to_string(), recipe("klein.json")?));
    }
    Ok(out)
}

// ---- independent oracles ---------------------------------------------------

/// `∂_n` for `n = 1..=L` as dense `i64` matrices, straight from the face tables.
fn oracle_boundaries(x: &TruncSimplicialSet) -> Vec<Vec<Vec<i64>>> {
    let mut out = vec![Vec::new()];
    for n in 1..=x.level() {
        let mut d = vec![vec![0i64; x.count(n)]; x.count(n - 1)];
        for s in 0..x.count(n) {
            for i in 0..=n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                d[x.face(n, i, s as u32) as usize][s] += sign;
            }
        }
        out.push(d);
    }
    out
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] / &pivot;
                for k in col..cols {
                    let v = &factor * &a[rank][k];
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][col]);
        for k in 0..cols {
            a[rank][k] = a[rank][k] * s % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Unreduced betti numbers in degrees `0..L` from ranks over a field.
fn oracle_bettis(x: &TruncSimplicialSet, rank: impl Fn(&[Vec<i64>]) -> usize) -> Vec<usize> {
    let d = oracle_boundaries(x);
    let ranks: Vec<usize> = (0..=x.level()).map(|n| if n == 0 { 0 } else { rank(&d[n]) }).collect();
    (0..x.level()).map(|n| x.count(n) - ranks[n] - ranks[n + 1]).collect()
}

fn with_column(m: &[Vec<i64>], v: &[i64]) -> Vec<Vec<i64>> {
    m.iter().zip(v).map(|(r, x)| r.iter().copied().chain([*x]).collect()).collect()
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("small coefficient")).collect()
}

fn bettis_of(x: &TruncSimplicialSet, reduced: bool) -> Result<Vec<usize>, String> {
    let c = lib(ChainComplex::from_sset(x, Coefficients::Integers, reduced))?;
    (0..x.level()).map(|n| lib(homology(&c, n)).map(|h| h.betti)).collect()
}

// ---- criteria ---------------------------------------------------------------

fn c1() -> Outcome {
    let r = verify_simplicial_identities(4);
    ensure!(r.passed, "identities fail: {:?}", r.counterexample);
    let mut gens = Vec::new();
    for n in 1..=4 {
        for i in 0..=n {
            gens.push(Generator::Face { n, i });
        }
    }
    for n in 1..=3 {
        for i in 0..=n {
            gens.push(Generator::Degeneracy { n, i });
        }
    }
    let flip = |g: Generator| match g {
        Generator::Face { n, i } => Generator::Face { n, i: (i + 1) % (n + 1) },
        Generator::Degeneracy { n, i } => Generator::Degeneracy { n, i: (i + 1) % (n + 1) },
    };
    for &target in &gens {
        let m = verify_simplicial_identities_with(4, |g| Ok(if g == target { flip(g) } else { g }.map()));
        ensure!(!m.passed, "mutating {target:?} goes unnoticed");
    }
    Ok(format!("{} identity instances hold; all {} single-generator mutations are caught", r.checked, gens.len()))
}

fn c2() -> Outcome {
    let mut complexes = 0;
    let mut check = |name: &str, x: &TruncSimplicialSet| -> Result<(), String> {
        let d = oracle_boundaries(x);
        for n in 2..=x.level() {
            ensure!(mul(&d[n - 1], &d[n]).iter().flatten().all(|&v| v == 0), "{name}: oracle ∂∂ ≠ 0 in degree {n}");
        }
        let plain = lib(ChainComplex::from_sset(x, Coefficients::Integers, false))?;
        for n in 1..=x.level() {
            let m = plain.boundary(n);
            let same = (0..m.rows()).all(|i| (0..m.cols()).all(|j| *m.get(i, j) == BigInt::from(d[n][i][j])));
            ensure!(same, "{name}: boundary matrix {n} differs from the oracle");
        }
        for reduced in [false, true] {
            let mut built = vec![lib(ChainComplex::from_sset(x, Coefficients::Integers, reduced))?];
            if x.has_degeneracies() {
                built.push(lib(ChainComplex::normalized(x, Coefficients::Integers, reduced))?);
            }
            for c in built {
                for n in 1..=x.level() {
                    ensure!(
                        lib(c.boundary(n - 1).mul(c.boundary(n)))?.is_zero(),
                        "{name}: ∂∂ ≠ 0 in degree {n} (reduced = {reduced})"
                    );
                }
                complexes += 1;
            }
        }
        Ok(())
    };
    for (name, x) in corpus(3)? {
        check(&name, &x)?;
    }
    let c = FinSet::new(4);
    let f = finset_standard(3);
    for k in 0..=4 {
        let nv = lib(nerve(&c, &f, &k))?;
        check(&format!("FinSet nerve of {k}"), &nv.sset)?;
    }
    Ok(format!("{complexes} complexes, oracle boundaries agree"))
}

fn c3() -> Outcome {
    let zero = |x: &TruncSimplicialSet| bettis_of(x, true).map(|b| b.iter().all(|&v| v == 0));
    let c = FinSet::new(4);
    let f = finset_standard(3);
    let pt = lib(nerve(&c, &f, f.cell(0)))?;
    ensure!(zero(&pt.sset)?, "reduced homology of the FinSet point does not vanish");
    let s = SSetCategory::new(3);
    let g = lib(sset_standard(&s, 3))?;
    let spt = lib(nerve(&s, &g, g.cell(0)))?;
    ensure!(zero(&spt.sset)?, "reduced homology of the simplicial point does not vanish");
    for x in [&pt.sset, &spt.sset] {
        let c = lib(ChainComplex::from_sset(x, Coefficients::Integers, true))?;
        for n in 0..3 {
            let h = lib(homology(&c, n))?;
            ensure!(h.torsion.is_empty() && h.valid, "degree {n} has torsion or is invalid");
        }
    }
    Ok("H̃_n(Nerve F(0)) = 0 for n ≤ 2 in FinSet and TruncSSet".into())
}

fn c4() -> Outcome {
    let circle = TruncSimplicialSet::boundary(2, 2);
    let cases: Vec<(&str, Arc<TruncSimplicialSet>, Vec<usize>)> = vec![
        ("∂Δ[2]", Arc::new(circle), vec![1, 1]),
        ("∂Δ[3]", Arc::new(TruncSimplicialSet::boundary(3, 3)), vec![1, 0, 1]),
        ("torus", recipe("torus.json")?, vec![1, 2, 1]),
    ];
    for (name, x, expected) in &cases {
        let snf = bettis_of(x, false)?;
        let oracle = oracle_bettis(x, rank_q);
        ensure!(snf == *expected, "{name}: betti {snf:?}, expected {expected:?}");
        ensure!(oracle == *expected, "{name}: rational-rank oracle gives {oracle:?}");
        let c = lib(ChainComplex::from_sset(x, Coefficients::Integers, false))?;
        for n in 0..x.level() {
            ensure!(lib(homology(&c, n))?.torsion.is_empty(), "{name}: unexpected torsion in degree {n}");
        }
    }

    let k = recipe("klein.json")?;
    let c = lib(ChainComplex::from_sset(&k, Coefficients::Integers, false))?;
    let h1 = lib(homology(&c, 1))?;
    ensure!(h1.betti == 1, "Klein: betti_1 = {}", h1.betti);
    ensure!(h1.torsion == vec![BigInt::from(2)], "Klein: torsion {:?}", h1.torsion);
    let q = oracle_bettis(&k, rank_q);
    ensure!(q[1] == 1, "Klein: rational-rank oracle betti_1 = {}", q[1]);
    // one 2-primary summand in H_1 (H_0 is free), no 3, 5, 7-torsion
    let f2 = oracle_bettis(&k, |m| rank_p(m, 2));
    ensure!(f2[1] == q[1] + 1, "Klein: dim H_1(F_2) = {}, betti_1 = {}", f2[1], q[1]);
    for p in [3, 5, 7] {
        let fp = oracle_bettis(&k, |m| rank_p(m, p));
        ensure!(fp == q, "Klein: F_{p} betti {fp:?} differs from rational {q:?}");
    }
    // the torsion generator z has order exactly 2 and is not divisible by 2
    let d = oracle_boundaries(&k);
    let z = small(&h1.generators[0]);
    ensure!(mul(&d[1], &z.iter().map(|&v| vec![v]).collect::<Vec<_>>()).iter().flatten().all(|&v| v == 0), "Klein: z is not a cycle");
    ensure!(rank_p(&with_column(&d[2], &z), 2) > rank_p(&d[2], 2), "Klein: z is a boundary mod 2");
    let two_z: Vec<i64> = z.iter().map(|v| 2 * v).collect();
    ensure!(rank_q(&with_column(&d[2], &two_z)) == rank_q(&d[2]), "Klein: 2z is not a rational boundary");
    let rhs: Vec<BigInt> = two_z.iter().map(|&v| BigInt::from(v)).collect();
    match lib(solve_boundary(c.boundary(2), &rhs))? {
        Solve::Solution(w) => {
            let w = small(&w);
            let dw = mul(&d[2], &w.iter().map(|&v| vec![v]).collect::<Vec<_>>());
            ensure!(dw.iter().map(|r| r[0]).collect::<Vec<_>>() == two_z, "Klein: ∂w ≠ 2z");
        }
        Solve::Unsolvable(why) => return Err(format!("Klein: 2z is not an integral boundary: {why}")),
    }
    Ok("∂Δ[2] (1,1); ∂Δ[3] (1,0,1); torus (1,2,1); Klein H_1 = ℤ ⊕ ℤ/2; rational and F_p oracles agree".into())
}

fn c5() -> Outcome {
    let c = SSetCategory::new(3);
    let f = lib(sset_standard(&c, 3))?;
    let mut names = Vec::new();
    for (name, x) in corpus(3)? {
        let nv = lib(nerve(&c, &f, &x))?;
        let r = lib(yoneda_check(&nv, &x))?;
        ensure!(r.passed && r.levels == 4, "{name}: {:?}", r.witness);
        names.push(name);
    }
    Ok(format!("Nerve(X)_n ≅ X_n for n ≤ 3 on {}", names.join(", ")))
}

/// `∂K + K∂ = Id` on augmented chains, computed simplex by simplex.
fn oracle_cone_identity(x: &TruncSimplicialSet, cone: &ConeFamily) -> bool {
    let apex = match cone.apex {
        Some(a) => a,
        None => return x.count(0) == 0,
    };
    for n in 0..x.level() {
        for s in 0..x.count(n) as u32 {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            let k = cone.maps[n][s as usize];
            for i in 0..=n + 1 {
                *acc.entry(x.face(n + 1, i, k)).or_default() += if i % 2 == 0 { 1 } else { -1 };
            }
            if n == 0 {
                *acc.entry(apex).or_default() += 1;
            } else {
                for i in 0..=n {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *acc.entry(cone.maps[n - 1][x.face(n, i, s) as usize]).or_default() += sign;
                }
            }
            acc.retain(|_, v| *v != 0);
            if acc.len() != 1 || acc.get(&s) != Some(&1) {
                return false;
            }
        }
    }
    true
}

fn c6() -> Outcome {
    let c = SSetCategory::new(3);
    let f = lib(sset_standard(&c, 3))?;
    for m in 0..=3 {
        let nv = lib(nerve(&c, &f, &c.standard(m)))?;
        let cone = lib(first_vertex_cone(&nv.sset))?;
        ensure!(lib(verify_cone(&nv.sset, &cone))?.passed, "Δ[{m}]: first-vertex cone fails");
        let ch = lib(cone_chain_homotopy(&nv.sset, &cone))?;
        ensure!(ch.passed && ch.holds.len() == 3, "Δ[{m}]: ∂K + K∂ = Id fails: {:?}", ch.holds);
        ensure!(oracle_cone_identity(&nv.sset, &cone), "Δ[{m}]: oracle ∂K + K∂ ≠ Id");
        let a = lib(check_acyclic(&nv.sset, Some(&cone)))?;
        ensure!(a.acyclic && a.cone_witness == Some(true), "Δ[{m}] is not certified acyclic");
        ensure!(bettis_of(&nv.sset, true)? == vec![0, 0, 0], "Δ[{m}]: reduced homology is nonzero");
    }
    for (a, b) in [(1, 1), (2, 1)] {
        let (xa, xb) = (c.standard(a), c.standard(b));
        let p = lib(product(&c, &xa, &xb))?;
        let (na, nb, np) = (lib(nerve(&c, &f, &xa))?, lib(nerve(&c, &f, &xb))?, lib(nerve(&c, &f, &p.apex))?);
        let (ca, cb) = (lib(first_vertex_cone(&na.sset))?, lib(first_vertex_cone(&nb.sset))?);
        let pc = lib(product_cone(&c, &p, (&na, &ca), (&nb, &cb), &np))?;
        ensure!(lib(verify_cone(&np.sset, &pc))?.passed, "Δ[{a}]×Δ[{b}]: product cone fails");
        ensure!(oracle_cone_identity(&np.sset, &pc), "Δ[{a}]×Δ[{b}]: oracle ∂K + K∂ ≠ Id");
        let ac = lib(check_acyclic(&np.sset, Some(&pc)))?;
        ensure!(ac.acyclic && ac.cone_witness == Some(true), "Δ[{a}]×Δ[{b}] is not certified acyclic");
    }
    Ok("first-vertex cones on Δ[0..3], ∂K + K∂ = Id in degrees 0..2, product cones on Δ[1]×Δ[1] and Δ[2]×Δ[1]".into())
}

fn c7() -> Outcome {
    let c = SSetCategory::new(3);
    let f = lib(sset_standard(&c, 3))?;
    let p = lib(build_p(&c, &f, 2))?;
    ensure!(p.q_cycle == vec![None, Some(true), Some(true)], "∂Q_n(Id) = 0 fails: {:?}", p.q_cycle);
    let mut generators = 0;
    for (name, x) in [("Δ[1]", c.standard(1)), ("Δ[2]", c.standard(2)), ("∂Δ[2]", c.boundary(2))] {
        let r = lib(verify_prism(&c, &f, &p, &x, 2))?;
        ensure!(r.degrees.len() == 3, "{name}: {} degrees checked", r.degrees.len());
        for d in &r.degrees {
            ensure!(d.cross, "{name}: cross identity fails in degree {}", d.degree);
            ensure!(d.natural, "{name}: naturality fails in degree {}: {:?}", d.degree, d.witness);
            generators += d.generators;
        }
    }
    let hollow = lib(sset_hollow(&c, 3, 2))?;
    match build_p(&c, &hollow, 2) {
        Err(Error::Unsolvable { degree, .. }) => {
            Ok(format!("β_0..β_2 built, {generators} generators checked; hollow F(2) unsolvable in degree {degree}"))
        }
        Err(e) => Err(format!("hollow F(2): expected an unsolvable degree, got {e}")),
        Ok(_) => Err("hollow F(2): build succeeded".into()),
    }
}

fn invariance_over<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    pairs: &[(C::Obj, C::Obj)],
) -> Result<(usize, usize, Vec<String>), String> {
    let p = lib(build_p(c, f, f.level() - 1))?;
    let (mut total, mut nontrivial, mut seen) = (0, 0, Vec::new());
    for (x, y) in pairs {
        let cl = lib(homotopy_classes(c, f, x, y))?;
        if cl.raw.is_empty() {
            continue;
        }
        let ctx = lib(InvarianceContext::new(c, f, &p, x, y))?;
        for &(i, j) in &cl.raw {
            let h = cl.witness(i, j).ok_or("raw pair without a witness")?;
            let r = lib(ctx.check(c, f, &h))?;
            ensure!(
                r.passed && r.factorizations,
                "{} ⇒ {} via {}: {:?}",
                r.f,
                r.g,
                r.h,
                r.degrees.iter().find(|d| !(d.boundary_identity && d.equal_induced_maps))
            );
            total += 1;
            if i != j {
                nontrivial += 1;
                seen.push(format!("{}→{}", c.obj_label(x), c.obj_label(y)));
            }
        }
    }
    Ok((total, nontrivial, seen))
}

fn c8() -> Outcome {
    let s = SSetCategory::new(3);
    let g = lib(sset_standard(&s, 3))?;
    let objs = s.objects();
    let pairs: Vec<_> = objs.iter().flat_map(|x| objs.iter().map(move |y| (x.clone(), y.clone()))).collect();
    let (st, sn, seen) = invariance_over(&s, &g, &pairs)?;
    let edge = format!("{}→{}", s.obj_label(&s.standard(0)), s.obj_label(&s.standard(1)));
    ensure!(seen.contains(&edge), "no nontrivial homotopy Δ[0] ⇉ Δ[1] found");

    let c = FinSet::new(4);
    let f = finset_standard(3);
    let pairs: Vec<(usize, usize)> = (0..=2).flat_map(|x| (0..=2).map(move |y| (x, y))).collect();
    let (ft, fnt, _) = invariance_over(&c, &f, &pairs)?;
    ensure!(fnt > 0, "no nontrivial FinSet homotopy");
    Ok(format!(
        "TruncSSet: {st} homotopic pairs ({sn} with f ≠ g); FinSet: {ft} pairs ({fnt} with f ≠ g); equal induced maps in degrees 0..2"
    ))
}

fn c9() -> Outcome {
    let mut reflexive = 0;
    let s = SSetCategory::new(3);
    let g = lib(sset_standard(&s, 3))?;
    for x in s.objects() {
        for y in s.objects() {
            for m in lib(s.hom(&x, &y))? {
                let h = lib(constant_homotopy(&s, &g, &m))?;
                ensure!(h.f == m && h.g == m, "constant homotopy on {} has the wrong ends", s.mor_label(&m));
                reflexive += 1;
            }
        }
    }
    let c = FinSet::new(4);
    let f = finset_standard(3);
    for x in 0..=3 {
        for y in 0..=3 {
            for m in lib(c.hom(&x, &y))? {
                let h = lib(constant_homotopy(&c, &f, &m))?;
                ensure!(h.f == m && h.g == m, "constant homotopy on {} has the wrong ends", c.mor_label(&m));
                reflexive += 1;
            }
            let cl = lib(homotopy_classes(&c, &f, &x, &y))?;
            ensure!(cl.raw_symmetric(), "FinSet raw relation on hom({x}, {y}) is not symmetric");
        }
    }
    let a4 = lib(check_axiom_join(&c, &f))?;
    ensure!(a4.status == AxiomStatus::Fail, "FinSet Axiom 4 status {:?}", a4.status);
    ensure!(a4.witness["colimit"]["apex"] == "3", "FinSet pushout witness {}", a4.witness["colimit"]);
    let cl = lib(homotopy_classes(&c, &f, &1, &2))?;
    let (i, j) = *cl.raw.iter().find(|(i, j)| i != j).ok_or("no nontrivial homotopy 1 → 2")?;
    let (h1, h2) = (cl.witness(i, j).unwrap(), cl.witness(j, j).unwrap());
    ensure!(
        matches!(concat_homotopy(&c, &f, &h1, &h2), Err(Error::Axiom4Unavailable)),
        "FinSet concatenation did not report axiom-4-unavailable"
    );

    let t = lib(TableCategory::from_json(&read_fixture("engineered_table.json")))?;
    let tf = lib(Cosimplicial::from_json(&t, &read_fixture("engineered_cosimplicial.json")))?;
    for a in &lib(check_all_axioms(&t, &tf))?[..4] {
        ensure!(a.passed(), "engineered fixture: {} fails: {}", a.axiom, a.detail);
    }
    for x in t.objects() {
        for y in t.objects() {
            let cl = lib(homotopy_classes(&t, &tf, &x, &y))?;
            ensure!(cl.raw_equals_closure, "engineered hom({}, {}): raw ≠ closure", t.obj_label(&x), t.obj_label(&y));
        }
    }
    let hc = lib(homotopy_category(&t, &tf))?;
    ensure!(hc.checked > 0, "homotopy category compared no representatives");
    Ok(format!(
        "{reflexive} reflexivity witnesses; FinSet raw relation symmetric; pushout apex 3; concat unavailable; engineered: raw = closure, {} representative pairs",
        hc.checked
    ))
}

fn c10() -> Outcome {
    let c = SSetCategory::new(3);
    let (circle, disk) = (c.boundary(2), c.standard(2));
    let inclusions: Vec<_> = lib(c.hom(&circle, &disk))?.into_iter().filter(|m| m.is_injective()).collect();
    ensure!(inclusions.len() == 1, "{} injective maps ∂Δ[2] → Δ[2]", inclusions.len());
    let retractions = lib(c.hom(&disk, &circle))?;
    ensure!(!retractions.is_empty(), "hom(Δ[2], ∂Δ[2]) is empty");
    for g in &retractions {
        let r = lib(check_retract_obstruction(&inclusions[0], g, 1, false))?;
        ensure!(r.obstructed && !r.violation, "g = {} is not obstructed: {r:?}", c.mor_label(g));
    }
    Ok(format!("all {} maps Δ[2] → ∂Δ[2] obstructed at H_1", retractions.len()))
}

fn c11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_homcat");
    let klein = fixture("klein.json");
    let runs: Vec<Vec<String>> = vec![
        vec!["--instance".into(), "sset".into(), "--level".into(), "3".into(), "pipeline".into()],
        vec!["--instance".into(), "finset".into(), "--level".into(), "2".into(), "check-axioms".into()],
        vec!["homology".into(), klein.display().to_string()],
    ];
    for args in &runs {
        let a = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let b = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure!(a.status.code() == b.status.code(), "{args:?}: exit codes differ");
        ensure!(!a.stdout.is_empty(), "{args:?}: empty report");
        ensure!(a.stdout == b.stdout, "{args:?}: reports differ");
    }
    Ok(format!("{} configurations, byte-identical reports", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("simplicial identities and mutation harness", c1),
        ("∂∂ = 0 on the corpus", c2),
        ("dimension axiom", c3),
        ("classical homology values", c4),
        ("Yoneda", c5),
        ("convexity chain", c6),
        ("acyclic models", c7),
        ("homotopy invariance", c8),
        ("homotopy relation structure", c9),
        ("retract obstruction", c10),
        ("determinism", c11),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {title}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
