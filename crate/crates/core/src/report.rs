//! Structured JSON reports: the axiom suite and the end-to-end pipeline for
//! homotopy invariance of homology.

use serde_json::{json, Value};

use crate::acyclic::{build_p, verify_prism, InvarianceContext};
use crate::budget::Budget;
use crate::chain::{chain_map, homology, induced_homology_map, reduce_rows, ChainComplex, Coefficients};
use crate::convexity::check_axiom_convex;
use crate::cosimplicial::{check_axiom_1_2, check_axiom_join, check_axiom_swap, verify_functoriality, AxiomResult};
use crate::cosimplicial::{find_join, find_swap, Cosimplicial};
use crate::error::{Error, Result};
use crate::fincat::Category;
use crate::homotopy::{constant_homotopy, homotopy_classes, lambda_maps, reverse_homotopy};
use crate::nerve::{nerve, nerve_map};

pub const AXIOMS_FORMAT: &str = "homcat.axioms/1";
pub const PIPELINE_FORMAT: &str = "homcat.pipeline/1";

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// A1–A5 in order.
pub fn check_all_axioms<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<Vec<AxiomResult>> {
    let (a1, a2) = check_axiom_1_2(c, f)?;
    Ok(vec![a1, a2, check_axiom_swap(c, f)?, check_axiom_join(c, f)?, check_axiom_convex(c, f)?])
}

pub fn axioms_report<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<(Value, bool)> {
    let functor = verify_functoriality(c, f)?;
    let axioms = check_all_axioms(c, f)?;
    let passed = functor.passed && axioms.iter().all(AxiomResult::passed);
    let report = json!({
        "format": AXIOMS_FORMAT,
        "instance": c.name(),
        "level": f.level(),
        "cells": f.cells().iter().map(|x| c.obj_label(x)).collect::<Vec<_>>(),
        "functoriality": functor,
        "axioms": axioms,
        "passed": passed,
    });
    Ok((report, passed))
}

/// Runs the three claims over the scan set: homology is defined (i), the
/// homotopy relation and its structure (ii), and homotopy invariance through
/// convexity and the prism operator (iii).
pub fn theorem1_pipeline<C: Category>(c: &C, f: &Cosimplicial<C>) -> Result<(Value, bool)> {
    let objects = c.objects();
    let l = f.level();
    let axioms = check_all_axioms(c, f)?;
    let ax = |k: usize| axioms[k].passed();

    // claim i
    let mut homologies = Vec::new();
    let mut boundary_ok = true;
    for x in &objects {
        let nv = nerve(c, f, x)?;
        let cx = ChainComplex::from_sset(&nv.sset, Coefficients::Integers, false);
        boundary_ok &= cx.is_ok();
        let cx = cx?;
        let groups: Vec<Value> = (0..l).map(|n| homology(&cx, n).map(|h| h.report())).collect::<Result<_>>()?;
        homologies.push(json!({ "object": c.obj_label(x), "homology": groups }));
    }
    let point = nerve(c, f, f.cell(0))?;
    let reduced = ChainComplex::from_sset(&point.sset, Coefficients::Integers, true)?;
    let p1 = (0..l).map(|n| homology(&reduced, n).map(|h| h.is_zero())).collect::<Result<Vec<_>>>()?.iter().all(|&b| b);
    let claim_i = json!({
        "status": status(boundary_ok),
        "boundary_squared_zero": boundary_ok,
        "objects": homologies,
    });

    // claim ii
    let mut reflexive = true;
    let mut symmetric = true;
    let mut transitive = true;
    let mut reversed = 0usize;
    let mut pairs = Vec::new();
    let relation_ready = ax(0) && ax(1);
    if relation_ready {
        for x in &objects {
            for y in &objects {
                let cl = homotopy_classes(c, f, x, y)?;
                for m in &cl.morphisms {
                    reflexive &= constant_homotopy(c, f, m).is_ok();
                }
                symmetric &= cl.raw_symmetric();
                transitive &= cl.raw_equals_closure;
                if ax(2) {
                    for &(i, j) in &cl.raw {
                        let h = cl.witness(i, j).ok_or_else(|| {
                            Error::Internal("raw pair without a witness".into())
                        })?;
                        reverse_homotopy(c, f, &h)?;
                        reversed += 1;
                    }
                }
                pairs.push(json!({
                    "source": c.obj_label(x),
                    "target": c.obj_label(y),
                    "morphisms": cl.morphisms.len(),
                    "classes": cl.sizes(),
                    "raw_equals_closure": cl.raw_equals_closure,
                }));
            }
        }
    }
    let claim_ii_status = if !relation_ready {
        "not-checkable"
    } else if reflexive && symmetric && transitive {
        "pass"
    } else {
        "partial"
    };
    let claim_ii = json!({
        "status": claim_ii_status,
        "axioms": { "A1": ax(0), "A2": ax(1), "A3": ax(2), "A4": ax(3) },
        "reflexive": reflexive,
        "symmetric": symmetric,
        "transitive": transitive,
        "reversed_witnesses": reversed,
        "swap_available": find_swap(c, f)?.is_some(),
        "join_available": find_join(c, f)?.is_some(),
        "hom_sets": pairs,
    });

    // claim iii
    let mut claim_iii = json!({ "status": "not-checkable" });
    let mut props = json!({ "P1": status(p1) });
    let mut iii_ok = false;
    if relation_ready && l >= 1 {
        let n_max = l - 1;
        match build_p(c, f, n_max) {
            Ok(p) => {
                let mut prisms = Vec::new();
                let mut p5 = true;
                let mut p4 = true;
                for x in &objects {
                    let r = verify_prism(c, f, &p, x, n_max)?;
                    p5 &= r.passed;
                    prisms.push(r);
                    p4 &= lambdas_agree_on_homology(c, f, x)?;
                }
                let mut invariance = Vec::new();
                let mut p3 = true;
                let budget = Budget::new(c.bound());
                for x in &objects {
                    for y in &objects {
                        let cl = homotopy_classes(c, f, x, y)?;
                        if cl.raw.iter().all(|(i, j)| i == j) {
                            continue;
                        }
                        let ctx = InvarianceContext::new(c, f, &p, x, y)?;
                        for &(i, j) in &cl.raw {
                            if i == j {
                                continue;
                            }
                            budget.tick(ctx.cost())?;
                            let h = cl.witness(i, j)
                                .ok_or_else(|| Error::Internal("raw pair without a witness".into()))?;
                            let r = ctx.check(c, f, &h)?;
                            p3 &= r.passed;
                            invariance.push(r);
                        }
                    }
                }
                let p2 = p.q_cycle.iter().flatten().all(|&b| b);
                iii_ok = ax(4) && p5 && p4 && p3;
                claim_iii = json!({
                    "status": status(iii_ok),
                    "A5": ax(4),
                    "prism": p.to_json(c),
                    "prism_checks": prisms,
                    "invariance": invariance,
                });
                props = json!({ "P1": status(p1), "P2": status(p2), "P3": status(p3), "P4": status(p4), "P5": status(p5) });
            }
            Err(e @ (Error::Unsolvable { .. } | Error::AxiomPrecondition(_))) => {
                claim_iii = json!({ "status": "fail", "A5": ax(4), "error": e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    let passed = boundary_ok && p1 && claim_ii_status == "pass" && iii_ok;
    let report = json!({
        "format": PIPELINE_FORMAT,
        "instance": c.name(),
        "level": l,
        "axioms": axioms,
        "claims": { "i": claim_i, "ii": claim_ii, "iii": claim_iii },
        "properties": props,
        "passed": passed,
    });
    Ok((report, passed))
}

/// `H(λ_0) = H(λ_1)` on `X` in every computable degree.
pub fn lambdas_agree_on_homology<C: Category>(c: &C, f: &Cosimplicial<C>, x: &C::Obj) -> Result<bool> {
    let lam = lambda_maps(c, f, x)?;
    let nx = nerve(c, f, x)?;
    let np = nerve(c, f, &lam.product.apex)?;
    let cx = ChainComplex::from_sset(&nx.sset, Coefficients::Integers, false)?;
    let cp = ChainComplex::from_sset(&np.sset, Coefficients::Integers, false)?;
    let m0 = chain_map(&nerve_map(c, &nx, &np, &lam.l0)?);
    let m1 = chain_map(&nerve_map(c, &nx, &np, &lam.l1)?);
    for n in 0..f.level() {
        let (hx, hp) = (homology(&cx, n)?, homology(&cp, n)?);
        let a = reduce_rows(&induced_homology_map(&m0, &cp, &hx, &hp)?, &hp);
        let b = reduce_rows(&induced_homology_map(&m1, &cp, &hx, &hp)?, &hp);
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::{finset_standard, sset_standard};
    use crate::fincat::{FinSet, SSetCategory};

    #[test]
    fn finset_axioms() {
        let c = FinSet::new(3);
        let (r, passed) = axioms_report(&c, &finset_standard(2)).unwrap();
        assert!(!passed);
        let st: Vec<&str> = r["axioms"].as_array().unwrap().iter().map(|a| a["status"].as_str().unwrap()).collect();
        assert_eq!(st, ["pass", "pass", "pass", "fail", "pass"]);
    }

    #[test]
    fn sset_pipeline() {
        let c = SSetCategory::new(2);
        let (r, passed) = theorem1_pipeline(&c, &sset_standard(&c, 2).unwrap()).unwrap();
        assert!(!passed);
        assert_eq!(r["claims"]["i"]["status"], "pass");
        assert_eq!(r["claims"]["ii"]["status"], "partial");
        assert_eq!(r["claims"]["iii"]["status"], "pass");
        assert_eq!(r["properties"]["P3"], "pass");
    }
}
