use std::sync::Arc;

use rayon::prelude::*;

use super::{CatalogEntry, CheckResult, Counterexample, Harness, SubResult};
use crate::constructions::{
    direct_product, ideal_generated, pattern_subring, quotient_by_ideal, dt_coordinate_map, trivial_extension,
    zmod, Pattern,
};
use crate::decompositions::{ElemPredicate, Flag, Verdict};
use crate::dsl::{self, RingExpr};
use crate::error::BuildError;
use crate::ring::Elem;
use crate::structure::{is_nil_subset, mod_j, semisimple_fingerprint, structural_predicates, Analysis};
use crate::subset::Subset;

pub(super) struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    pub run: fn(&Harness) -> Vec<SubResult>,
}

type Sub = Result<SubResult, SubResult>;

fn settle(f: impl FnOnce() -> Sub) -> SubResult {
    f().unwrap_or_else(|s| s)
}

fn ring(h: &Harness, text: &str) -> Result<Arc<Analysis>, SubResult> {
    h.analysis(text).map_err(|e| build_failure(text, e))
}

fn build_failure(text: &str, e: BuildError) -> SubResult {
    match e {
        BuildError::Guard { .. } => SubResult::skipped(text, e.to_string()),
        other => SubResult::fail(text, format!("build error: {other}"), None),
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// The element refuting `flag` on `an`, or a ring-level pointer when the
/// flag holds.
fn flag_cex(an: &Analysis, text: &str, flag: Flag) -> Counterexample {
    match an.verdict(flag) {
        Verdict::Fails(a) => Counterexample::element(an, text, a, Some(flag)),
        Verdict::Holds => Counterexample::ring(text, Some(flag)),
    }
}

fn expect_flag(h: &Harness, text: &str, flag: Flag, want: bool) -> SubResult {
    settle(|| {
        let an = ring(h, text)?;
        let got = an.flag(flag);
        Ok(SubResult::check(
            text,
            got == want,
            format!("{flag} = {} (expected {})", yn(got), yn(want)),
            || Some(flag_cex(&an, text, flag)),
        ))
    })
}

/// `flag(lhs) = flag(rhs)`; on mismatch the refuting element of the side
/// where the flag fails.
fn same_flag(h: &Harness, flag: Flag, lhs: &str, rhs: &str) -> SubResult {
    settle(|| {
        let a = ring(h, lhs)?;
        let b = ring(h, rhs)?;
        let (x, y) = (a.flag(flag), b.flag(flag));
        Ok(SubResult::check(
            format!("{lhs} ~ {rhs}"),
            x == y,
            format!("{flag}: {} / {}", yn(x), yn(y)),
            || Some(if x { flag_cex(&b, rhs, flag) } else { flag_cex(&a, lhs, flag) }),
        ))
    })
}

fn over_catalog(h: &Harness, f: impl Fn(&str, &Analysis) -> SubResult + Sync) -> Vec<SubResult> {
    h.catalog()
        .par_iter()
        .map(|e| settle(|| Ok(f(&e.expr, &*ring(h, &e.expr)?))))
        .collect()
}

fn int(an: &Analysis, n: i64) -> Elem {
    an.ring().from_int(n)
}

pub(super) fn catalog_check(h: &Harness, entry: &CatalogEntry) -> CheckResult {
    let subs = entry
        .expected
        .iter()
        .map(|&(flag, want)| expect_flag(h, &entry.expr, flag, want))
        .collect();
    CheckResult::from_subs(&entry.id, &entry.source, subs)
}

fn l_2_2(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let r = an.ring();
        let bad = (0..r.card() as u32).into_par_iter().map(Elem).find_first(|&a| {
            ElemPredicate::WeaklyNilClean.test(an, a).is_some()
                && ElemPredicate::WeaklyClean.test(an, r.neg(a)).is_none()
        });
        SubResult::check(text, bad.is_none(), "weakly nil-clean a ⇒ −a weakly clean", || {
            bad.map(|a| Counterexample::element(an, text, a, None))
        })
    })
}

fn c_2_3(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let (g, w) = (an.flag(Flag::Gwnc), an.flag(Flag::WeaklyClean));
        SubResult::check(text, !g || w, format!("GWNC = {}, weaklyClean = {}", yn(g), yn(w)), || {
            Some(flag_cex(an, text, Flag::WeaklyClean))
        })
    })
}

fn l_2_4(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let r = an.ring();
        let g = an.flag(Flag::Gwnc);
        let nil = is_nil_subset(r, an.jacobson());
        SubResult::check(text, !g || nil, format!("GWNC = {}, J nil = {}", yn(g), yn(nil)), || {
            let a = an.jacobson().iter().find(|&x| !r.is_nilpotent(x))?;
            Some(Counterexample::element(an, text, a, None))
        })
    })
}

fn l_2_6(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let r = an.ring();
        let two_unit = an.is_unit(int(an, 2));
        let involutive = an.units().iter().all(|u| r.mul(u, u) == r.one());
        if !(an.flag(Flag::Gwnc) && two_unit && involutive) {
            return SubResult::pass(text, "hypothesis not met");
        }
        let comm = an.center().count() == r.card();
        SubResult::check(text, comm, "GWNC, 2 ∈ U, u² = 1 ⇒ commutative", || {
            let a = r.elements().find(|&x| !an.is_central(x))?;
            Some(Counterexample::element(an, text, a, None))
        })
    })
}

fn p_2_8(h: &Harness) -> Vec<SubResult> {
    let mut out = Vec::new();
    for text in ["T(2,Z(4))", "TE(Z(6))", "PQ(Z(3),[0,0,1])"] {
        let an = match ring(h, text) {
            Ok(an) => an,
            Err(s) => {
                out.push(s);
                continue;
            }
        };
        let r = an.ring();
        let mut ideals: Vec<(String, Vec<Elem>, Subset)> = Vec::new();
        for q in an.nilpotents().iter().filter(|&q| q != r.zero()) {
            let i = ideal_generated(r, &[q]);
            if !ideals.iter().any(|(_, _, j)| *j == i) {
                ideals.push((format!("<{}>", q.0), vec![q], i));
            }
        }
        let j = an.jacobson().clone();
        if j.count() > 1 && !ideals.iter().any(|(_, _, i)| *i == j) {
            ideals.push(("J".into(), j.to_vec(), j));
        }
        for (name, gens, ideal) in ideals {
            let subject = format!("{text} / {name}");
            if !is_nil_subset(r, &ideal) {
                out.push(SubResult::pass(subject, "ideal is not nil; outside the hypothesis"));
                continue;
            }
            let sub = match quotient_by_ideal(r, &ideal) {
                Err(e) => SubResult::fail(&subject, format!("quotient failed: {e}"), None),
                Ok(q) => {
                    let qa = Analysis::new(q.ring);
                    let (x, y) = (an.flag(Flag::Gwnc), qa.flag(Flag::Gwnc));
                    let gens: Vec<String> = gens.iter().map(|g| g.0.to_string()).collect();
                    SubResult::check(&subject, x == y, format!("GWNC: {} / {}", yn(x), yn(y)), || {
                        Some(match (x, qa.verdict(Flag::Gwnc)) {
                            (true, Verdict::Fails(a)) => Counterexample {
                                ring: subject.clone(),
                                element: Some(a.0),
                                display: Some(qa.ring().show(a)),
                                flag: Some(Flag::Gwnc),
                                reproduce: format!(
                                    "ringlab element '{text}' --ideal {} {}",
                                    gens.join(","),
                                    a.0
                                ),
                            },
                            _ => flag_cex(&an, text, Flag::Gwnc),
                        })
                    })
                }
            };
            out.push(sub);
        }
    }
    out
}

fn c_2_11(h: &Harness) -> Vec<SubResult> {
    (2..=9)
        .flat_map(|n| {
            let base = format!("Z({n})");
            [
                format!("TE({base})"),
                format!("PQ({base},[0,0,1])"),
                format!("PQ({base},[0,0,0,1])"),
            ]
            .map(|t| same_flag(h, Flag::Gwnc, &t, &base))
        })
        .collect()
}

/// The coordinate map `TE(TE(R)) → DT(R)` is a bijective ring homomorphism.
fn dt_homomorphism(h: &Harness, n: u64) -> SubResult {
    let subject = format!("TE(TE(Z({n}))) -> PAT(DT,Z({n}))");
    let built = zmod(n).and_then(|z| {
        let te = trivial_extension(&trivial_extension(&z, h.limits())?, h.limits())?;
        let dt = pattern_subring(&Pattern::double_trivial(), &z, h.limits())?;
        Ok((te, dt))
    });
    let (te, dt) = match built {
        Ok(x) => x,
        Err(e) => return build_failure(&subject, e),
    };
    let phi = dt_coordinate_map(n as usize);
    let image = Subset::from_elems(dt.card(), te.elements().map(&phi));
    if te.card() != dt.card() || image.count() != dt.card() {
        return SubResult::fail(subject, "map is not a bijection", None);
    }
    if phi(te.one()) != dt.one() {
        return SubResult::fail(subject, "identity not preserved", None);
    }
    let bad = (0..te.card() as u32).into_par_iter().map(Elem).find_first(|&a| {
        te.elements().any(|b| {
            phi(te.add(a, b)) != dt.add(phi(a), phi(b)) || phi(te.mul(a, b)) != dt.mul(phi(a), phi(b))
        })
    });
    let gwnc_equal = Analysis::new(te.clone()).flag(Flag::Gwnc) == Analysis::new(dt).flag(Flag::Gwnc);
    SubResult::check(
        subject,
        bad.is_none() && gwnc_equal,
        format!("exhaustive on {} pairs; GWNC equal = {}", te.card() * te.card(), yn(gwnc_equal)),
        || {
            bad.map(|a| Counterexample {
                ring: format!("TE(TE(Z({n})))"),
                element: Some(a.0),
                display: Some(te.show(a)),
                flag: None,
                reproduce: format!("ringlab element 'TE(TE(Z({n})))' {}", a.0),
            })
        },
    )
}

fn c_2_13(h: &Harness) -> Vec<SubResult> {
    [2, 3, 5, 6]
        .into_iter()
        .flat_map(|n| {
            [
                same_flag(h, Flag::Gwnc, &format!("TE(TE(Z({n})))"), &format!("Z({n})")),
                dt_homomorphism(h, n),
            ]
        })
        .collect()
}

fn pattern_family(h: &Harness, pats: &[&str], bases: &[&str]) -> Vec<SubResult> {
    pats.iter()
        .flat_map(|p| bases.iter().map(move |b| (p, b)))
        .map(|(p, b)| same_flag(h, Flag::Gwnc, &format!("PAT({p},{b})"), b))
        .collect()
}

fn c_2_16(h: &Harness) -> Vec<SubResult> {
    pattern_family(h, &["S(2)", "S(3)"], &["Z(2)", "Z(3)", "Z(6)"])
}

fn c_2_17(h: &Harness) -> Vec<SubResult> {
    pattern_family(h, &["S(2,2)", "Tb(2,2)", "U(3)"], &["Z(2)", "Z(3)"])
}

fn p_2_18(h: &Harness) -> Vec<SubResult> {
    ["Z(4)", "Z(9)", "GF(2,2)", "Z(5)"]
        .iter()
        .map(|text| {
            settle(|| {
                let an = ring(h, text)?;
                if an.idempotents().count() != 2 {
                    return Ok(SubResult::fail(*text, "has non-trivial idempotents", None));
                }
                let local = an.units().complement().is_subset(an.jacobson());
                let g = an.flag(Flag::Gwnc);
                Ok(SubResult::check(*text, g == local, format!("GWNC = {}, local = {}", yn(g), yn(local)), || {
                    Some(flag_cex(&an, text, Flag::Gwnc))
                }))
            })
        })
        .collect()
}

fn p_2_19(h: &Harness) -> Vec<SubResult> {
    let cat = h.catalog();
    let pairs: Vec<(usize, usize)> = (0..cat.len()).flat_map(|i| (i..cat.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&cat[i].expr, &cat[j].expr);
            let text = format!("({a} x {b})");
            settle(|| {
                let (ra, rb) = (ring(h, a)?, ring(h, b)?);
                let card = ra.ring().card() as u128 * rb.ring().card() as u128;
                if card > h.limits().max_card as u128 {
                    return Err(SubResult::skipped(
                        &text,
                        format!("card {card} exceeds guard {}", h.limits().max_card),
                    ));
                }
                let (wa, wb) = (ra.flag(Flag::WeaklyNilClean), rb.flag(Flag::WeaklyNilClean));
                if wa && wb {
                    // the conclusion holds, so the implication does too
                    return Ok(SubResult::pass(&text, "both factors weakly nil-clean"));
                }
                // one-off ring: operation tables would cost more than they save
                let prod = direct_product(ra.ring(), rb.ring(), &h.limits().with_memo_threshold(0))
                    .map(Analysis::new)
                    .map_err(|e| build_failure(&text, e))?;
                let g = prod.flag(Flag::Gwnc);
                Ok(SubResult::check(
                    &text,
                    !g,
                    format!("GWNC = {}, factors weakly nil-clean = {} / {}", yn(g), yn(wa), yn(wb)),
                    || Some(if wa { flag_cex(&rb, b, Flag::WeaklyNilClean) } else { flag_cex(&ra, a, Flag::WeaklyNilClean) }),
                ))
            })
        })
        .collect()
}

fn p_2_21(h: &Harness) -> Vec<SubResult> {
    let base = ["Z(2)", "Z(3)", "Z(4)"];
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            for k in j..3 {
                let fs = [base[i], base[j], base[k]];
                let text = format!("(({} x {}) x {})", fs[0], fs[1], fs[2]);
                out.push(settle(|| {
                    let factors = fs.iter().map(|f| ring(h, f)).collect::<Result<Vec<_>, _>>()?;
                    let all_wnc = factors.iter().all(|f| f.flag(Flag::WeaklyNilClean));
                    let not_nc = factors.iter().filter(|f| !f.flag(Flag::NilClean)).count();
                    let rhs = all_wnc && not_nc <= 1;
                    let prod = ring(h, &text)?;
                    let g = prod.flag(Flag::Gwnc);
                    Ok(SubResult::check(
                        &text,
                        g == rhs,
                        format!("GWNC = {}, factor criterion = {}", yn(g), yn(rhs)),
                        || Some(flag_cex(&prod, &text, Flag::Gwnc)),
                    ))
                }));
            }
        }
    }
    out.push(expect_flag(h, "((Z(2) x Z(3)) x Z(3))", Flag::Gwnc, false));
    out.push(expect_flag(h, "((Z(2) x Z(2)) x Z(3))", Flag::Gwnc, true));
    out
}

fn p_2_25(h: &Harness) -> Vec<SubResult> {
    vec![
        expect_flag(h, "T(3,Z(2))", Flag::Gwnc, true),
        expect_flag(h, "T(3,Z(4))", Flag::Gwnc, true),
        expect_flag(h, "T(3,Z(3))", Flag::Gwnc, false),
    ]
}

fn l_2_27(h: &Harness) -> Vec<SubResult> {
    ["Z(4)", "Z(8)", "T(2,Z(2))", "TE(Z(4))"]
        .iter()
        .map(|text| {
            settle(|| {
                let an = ring(h, text)?;
                if !an.jacobson().contains(int(&an, 2)) {
                    return Ok(SubResult::fail(*text, "2 ∉ J(R)", None));
                }
                let (g, n) = (an.flag(Flag::Gwnc), an.flag(Flag::Gnc));
                Ok(SubResult::check(*text, g == n, format!("GWNC = {}, GNC = {}", yn(g), yn(n)), || {
                    Some(flag_cex(&an, text, if g { Flag::Gnc } else { Flag::Gwnc }))
                }))
            })
        })
        .collect()
}

fn l_2_28(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let lhs = an.flag(Flag::StronglyWeaklyNilClean);
        let rhs = an.flag(Flag::Wuu) && an.flag(Flag::Gwnc);
        SubResult::check(text, lhs == rhs, format!("SWNC = {}, WUU ∧ GWNC = {}", yn(lhs), yn(rhs)), || {
            Some(flag_cex(an, text, Flag::StronglyWeaklyNilClean))
        })
    })
}

fn l_2_29(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let lhs = an.flag(Flag::StronglyNilClean);
        let rhs = an.flag(Flag::Gwnc) && an.flag(Flag::Uu);
        SubResult::check(text, lhs == rhs, format!("SNC = {}, GWNC ∧ UU = {}", yn(lhs), yn(rhs)), || {
            Some(flag_cex(an, text, Flag::StronglyNilClean))
        })
    })
}

fn c_2_30(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        if !an.flag(Flag::Uu) {
            return SubResult::pass(text, "not UU; outside the hypothesis");
        }
        let s = structural_predicates(an);
        let values = [
            ("stronglyClean", an.flag(Flag::StronglyClean)),
            ("stronglyNilClean", an.flag(Flag::StronglyNilClean)),
            ("GSNC", an.flag(Flag::Gsnc)),
            ("stronglyPiRegular", s.strongly_pi_regular),
            ("GNC", an.flag(Flag::Gnc)),
            ("GWNC", an.flag(Flag::Gwnc)),
            ("semipotent", s.semipotent),
            ("weaklyClean", an.flag(Flag::WeaklyClean)),
            ("weaklyExchange", s.weakly_exchange),
        ];
        let note: Vec<String> = values.iter().map(|(n, v)| format!("{n}={}", yn(*v))).collect();
        SubResult::check(text, values.iter().all(|v| v.1 == values[0].1), note.join(" "), || {
            Some(Counterexample::ring(text, None))
        })
    })
}

fn l_2_33(h: &Harness) -> Vec<SubResult> {
    vec![
        expect_flag(h, "M(2,GF(2,1))", Flag::Gwnc, true),
        expect_flag(h, "M(2,GF(3,1))", Flag::Gwnc, true),
        expect_flag(h, "M(2,GF(2,2))", Flag::Gwnc, false),
        expect_flag(h, "M(2,GF(5,1))", Flag::Gwnc, false),
        expect_flag(h, "M(3,Z(2))", Flag::Gwnc, true),
        expect_flag(h, "M(3,Z(3))", Flag::Gwnc, false),
    ]
}

fn t_2_35(h: &Harness) -> Vec<SubResult> {
    ["Z(2)", "Z(3)", "Z(4)"]
        .iter()
        .map(|b| {
            let text = format!("M(3,{b})");
            settle(|| {
                let an = ring(h, &text)?;
                let (g, n) = (an.flag(Flag::Gwnc), an.flag(Flag::NilClean));
                Ok(SubResult::check(&text, g == n, format!("GWNC = {}, nilClean = {}", yn(g), yn(n)), || {
                    Some(flag_cex(&an, &text, Flag::NilClean))
                }))
            })
        })
        .collect()
}

fn t_2_36(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        let r = an.ring();
        let local = an.units().complement().is_subset(an.jacobson());
        let j_nil = is_nil_subset(r, an.jacobson());
        let fp = match semisimple_fingerprint(an) {
            Ok(fp) => fp,
            Err(e) => return SubResult::fail(text, format!("fingerprint failed: {e}"), None),
        };
        let m23 = fp.blocks == [(2, 3)];
        let z3z3 = fp.blocks == [(1, 3), (1, 3)];
        let wnc = an.flag(Flag::WeaklyNilClean);
        let rhs = (local && j_nil) || m23 || z3z3 || wnc;
        let g = an.flag(Flag::Gwnc);
        SubResult::check(
            text,
            g == rhs,
            format!(
                "GWNC = {}; local∧J nil = {}, R/J = {fp}, WNC = {}",
                yn(g),
                yn(local && j_nil),
                yn(wnc)
            ),
            || Some(flag_cex(an, text, Flag::Gwnc)),
        )
    })
}

fn boolean(an: &Analysis) -> bool {
    an.idempotents().count() == an.ring().card()
}

fn p_2_41(h: &Harness) -> Vec<SubResult> {
    ["Z(2)", "Z(4)"]
        .iter()
        .map(|b| {
            let text = format!("M(3,{b})");
            settle(|| {
                let base = ring(h, b)?;
                let rj = if base.jacobson().count() == 1 {
                    boolean(&base)
                } else {
                    let q = mod_j(&base).map_err(|e| SubResult::fail(*b, e.to_string(), None))?;
                    boolean(&Analysis::new(q.ring))
                };
                let an = ring(h, &text)?;
                let g = an.flag(Flag::Gwnc);
                Ok(SubResult::check(&text, g == rj, format!("GWNC = {}, R/J Boolean = {}", yn(g), yn(rj)), || {
                    Some(flag_cex(&an, &text, Flag::Gwnc))
                }))
            })
        })
        .collect()
}

fn c_2_46(h: &Harness) -> Vec<SubResult> {
    ["Z(2)", "Z(6)", "GF(2,2)", "Z(3)"]
        .iter()
        .map(|b| {
            let text = format!("M(3,{b})");
            settle(|| {
                let base = ring(h, b)?;
                if base.nilpotents().count() != 1 {
                    return Ok(SubResult::fail(*b, "base ring is not reduced", None));
                }
                let bool_r = boolean(&base);
                let an = ring(h, &text)?;
                let g = an.flag(Flag::Gwnc);
                Ok(SubResult::check(&text, g == bool_r, format!("GWNC = {}, R Boolean = {}", yn(g), yn(bool_r)), || {
                    Some(flag_cex(&an, &text, Flag::Gwnc))
                }))
            })
        })
        .collect()
}

fn c_2_51(h: &Harness) -> Vec<SubResult> {
    let mut out = Vec::new();
    for b in ["Z(4)", "Z(8)"] {
        let base = match ring(h, b) {
            Ok(an) => an,
            Err(s) => {
                out.push(s);
                continue;
            }
        };
        let twists = base.nilpotents().intersection(base.center());
        for s in twists.iter() {
            let text = format!("FM(2,{},{b})", s.0);
            out.push(settle(|| {
                let an = ring(h, &text)?;
                let g = an.flag(Flag::Gwnc);
                let (wnc, nc) = (base.flag(Flag::WeaklyNilClean), base.flag(Flag::NilClean));
                Ok(SubResult::check(
                    &text,
                    (!g || wnc) && (!nc || g),
                    format!("GWNC = {}, R weakly nil-clean = {}, R nil-clean = {}", yn(g), yn(wnc), yn(nc)),
                    || Some(flag_cex(&an, &text, Flag::Gwnc)),
                ))
            }));
        }
    }
    out
}

const GROUP_RINGS: &[&str] = &[
    "GR(Z(2),C(2))",
    "GR(Z(2),C(3))",
    "GR(Z(3),C(3))",
    "GR(Z(4),C(2))",
    "GR(Z(2),C(4))",
    "GR(Z(2),C(2) x C(2))",
    "GR(Z(9),C(3))",
    "GR(Z(3),C(2))",
    "GR(Z(5),C(2))",
    "GR(Z(6),C(2))",
    "GR(Z(2),C(6))",
    "GR(Z(4),C(3))",
    "GR(Z(2),C(2) x C(3))",
];

/// Base ring text and group of a group-ring expression.
fn split_group_ring(h: &Harness, text: &str) -> Result<(String, crate::constructions::FiniteGroup), SubResult> {
    match dsl::parse(text) {
        Ok(RingExpr::GroupRing(base, g)) => {
            let group = dsl::build_group(&g, h.limits()).map_err(|e| build_failure(text, e))?;
            Ok((dsl::canonical(&base), group))
        }
        _ => Err(SubResult::fail(text, "not a group ring", None)),
    }
}

fn l_3_1(h: &Harness) -> Vec<SubResult> {
    GROUP_RINGS
        .iter()
        .map(|text| {
            settle(|| {
                let (base, _) = split_group_ring(h, text)?;
                let (rg, r) = (ring(h, text)?, ring(h, &base)?);
                let (x, y) = (rg.flag(Flag::Gwnc), r.flag(Flag::Gwnc));
                Ok(SubResult::check(*text, !x || y, format!("GWNC(RG) = {}, GWNC(R) = {}", yn(x), yn(y)), || {
                    Some(flag_cex(&r, &base, Flag::Gwnc))
                }))
            })
        })
        .collect()
}

fn l_3_2(h: &Harness) -> Vec<SubResult> {
    [
        ("GR(Z(2),C(2))", 2),
        ("GR(Z(4),C(2))", 2),
        ("GR(Z(2),C(4))", 2),
        ("GR(Z(2),C(2) x C(2))", 2),
        ("GR(Z(9),C(3))", 3),
    ]
    .iter()
    .map(|&(text, p)| {
        settle(|| {
            let (base, g) = split_group_ring(h, text)?;
            let r = ring(h, &base)?;
            if !(g.is_p_group(p) && r.is_nilpotent(int(&r, p as i64))) {
                return Ok(SubResult::fail(text, format!("hypothesis fails for p = {p}"), None));
            }
            Ok(expect_flag(h, text, Flag::Gwnc, true))
        })
    })
    .collect()
}

fn l_3_3(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        if !an.flag(Flag::Gwnc) {
            return SubResult::pass(text, "not GWNC; outside the hypothesis");
        }
        let ok = an.is_unit(int(an, 2)) || an.is_nilpotent(int(an, 2)) || an.is_nilpotent(int(an, 6));
        SubResult::check(text, ok, "2 ∈ U or 2 ∈ Nil or 6 ∈ Nil", || Some(Counterexample::ring(text, Some(Flag::Gwnc))))
    })
}

fn l_3_4(h: &Harness) -> Vec<SubResult> {
    over_catalog(h, |text, an| {
        if an.is_unit(int(an, 2)) {
            return SubResult::pass(text, "2 ∈ U; outside the hypothesis");
        }
        if !an.flag(Flag::Gwnc) {
            return SubResult::pass(text, "not GWNC; outside the hypothesis");
        }
        let (gnc, wnc) = (an.flag(Flag::Gnc), an.flag(Flag::WeaklyNilClean));
        SubResult::check(text, gnc || wnc, format!("GNC = {}, WNC = {}", yn(gnc), yn(wnc)), || {
            Some(flag_cex(an, text, Flag::Gnc))
        })
    })
}

fn t_3_6(h: &Harness) -> Vec<SubResult> {
    let mut out: Vec<SubResult> = GROUP_RINGS
        .iter()
        .map(|text| {
            settle(|| {
                let (base, g) = split_group_ring(h, text)?;
                let r = ring(h, &base)?;
                let rg = ring(h, text)?;
                let gw = rg.flag(Flag::Gwnc);
                if r.is_unit(int(&r, 2)) {
                    return Ok(SubResult::pass(
                        *text,
                        format!("2 ∈ U({base}); outside the hypothesis (GWNC = {})", yn(gw)),
                    ));
                }
                if g.is_trivial() || !g.is_abelian() {
                    return Ok(SubResult::pass(*text, "group trivial or non-abelian; outside the hypothesis"));
                }
                let rhs = g.is_p_group(2) && r.is_nilpotent(int(&r, 2));
                Ok(SubResult::check(
                    *text,
                    !gw || rhs,
                    format!("GWNC = {}, 2-group ∧ 2 ∈ Nil = {}", yn(gw), yn(rhs)),
                    || Some(Counterexample::ring(text, Some(Flag::Gwnc))),
                ))
            })
        })
        .collect();
    out.push(expect_flag(h, "GR(Z(2),C(3))", Flag::Gwnc, false));
    out
}

pub(super) const CHECKS: &[Check] = &[
    Check { id: "L-2.2", claim: "a weakly nil-clean ⇒ −a weakly clean", run: l_2_2 },
    Check { id: "C-2.3", claim: "GWNC ⇒ weakly clean", run: c_2_3 },
    Check { id: "L-2.4", claim: "GWNC ⇒ J(R) nil", run: l_2_4 },
    Check { id: "L-2.6", claim: "GWNC with 2 ∈ U and all units involutions ⇒ commutative", run: l_2_6 },
    Check { id: "P-2.8", claim: "GWNC(R) ⇔ GWNC(R/I) for nil ideals I", run: p_2_8 },
    Check { id: "C-2.11", claim: "GWNC(T(R,R)) ⇔ GWNC(R) ⇔ GWNC(R[x]/<x^n>)", run: c_2_11 },
    Check { id: "C-2.13", claim: "GWNC(DT(R,R)) ⇔ GWNC(R); coordinate map is an isomorphism", run: c_2_13 },
    Check { id: "C-2.16-i", claim: "GWNC(S_n(R)) ⇔ GWNC(R)", run: c_2_16 },
    Check { id: "C-2.17", claim: "GWNC of S_{n,m}(R), T_{n,m}(R), U_n(R) ⇔ GWNC(R)", run: c_2_17 },
    Check { id: "P-2.18", claim: "trivial idempotents: GWNC ⇔ local with J nil", run: p_2_18 },
    Check { id: "P-2.19", claim: "GWNC(R × S) ⇒ R and S weakly nil-clean", run: p_2_19 },
    Check { id: "P-2.21", claim: "GWNC(∏ R_i) ⇔ all weakly nil-clean, at most one not nil-clean", run: p_2_21 },
    Check { id: "P-2.25", claim: "T_n(R) GWNC for n ≥ 3 ⇔ R nil-clean", run: p_2_25 },
    Check { id: "L-2.27", claim: "2 ∈ J(R) ⇒ (GWNC ⇔ GNC)", run: l_2_27 },
    Check { id: "L-2.28", claim: "strongly weakly nil-clean ⇔ WUU ∧ GWNC", run: l_2_28 },
    Check { id: "L-2.29", claim: "strongly nil-clean ⇔ GWNC ∧ UU", run: l_2_29 },
    Check { id: "C-2.30", claim: "UU rings: nine clean-type properties coincide", run: c_2_30 },
    Check { id: "L-2.33", claim: "M_2(D) GWNC ⇔ D ∈ {Z2, Z3}; M_3(Z2) GWNC, M_3(Z3) not", run: l_2_33 },
    Check { id: "T-2.35", claim: "GWNC(M_n(R)) ⇔ nil-clean(M_n(R)) for n ≥ 3", run: t_2_35 },
    Check { id: "T-2.36", claim: "finite R: GWNC ⇔ local∧J nil ∨ R/J ≅ M_2(Z3) ∨ R/J ≅ Z3×Z3 ∨ weakly nil-clean", run: t_2_36 },
    Check { id: "P-2.41", claim: "GWNC(M_3(R)) ⇔ R/J Boolean and J nil (R commutative)", run: p_2_41 },
    Check { id: "C-2.46", claim: "R reduced: GWNC(M_3(R)) ⇔ R Boolean", run: c_2_46 },
    Check { id: "C-2.51", claim: "K_s(R), s central nilpotent: GWNC ⇒ R weakly nil-clean; R nil-clean ⇒ GWNC", run: c_2_51 },
    Check { id: "L-3.1", claim: "GWNC(RG) ⇒ GWNC(R)", run: l_3_1 },
    Check { id: "L-3.2", claim: "p ∈ Nil(R), G a p-group ⇒ RG GWNC", run: l_3_2 },
    Check { id: "L-3.3", claim: "GWNC ⇒ 2 ∈ U or 2 ∈ Nil or 6 ∈ Nil", run: l_3_3 },
    Check { id: "L-3.4", claim: "GWNC with 2 ∉ U ⇒ GNC or weakly nil-clean", run: l_3_4 },
    Check { id: "T-3.6", claim: "2 ∉ U(R), G abelian non-trivial: GWNC(RG) ⇒ G a 2-group and 2 ∈ Nil(R)", run: t_3_6 },
];
