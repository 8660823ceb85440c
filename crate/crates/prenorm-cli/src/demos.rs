//! The named demonstration scenarios: each builds a small finite instance,
//! runs the relevant operations, and compares every observation against the
//! frozen expected value.

use std::collections::BTreeSet;

use prenorm::backends::groupoid::GrpdBackend;
use prenorm::backends::monoid::cyclic_table;
use prenorm::backends::ordgrp::OrdGrpBackend;
use prenorm::backends::pointed::{
    ordered_counterexample_family, pset_obj, MonoidBackend, PSetBackend,
};
use prenorm::backends::relations::{preorder_factorisation_counterexample, RelBackend};
use prenorm::backends::workspace_for;
use prenorm::casestudies::{
    ideal_cokernel, ideal_factorise, ideal_kernel, ideal_normal_epis, mon_counterexample_check,
    IdealFactorisation, DEFAULT_WORD_BOUND,
};
use prenorm::core::{is_iso, is_mono, Backend, Mor};
use prenorm::engine::{
    factorise, has_trivial_kernel, is_normal_epi, is_regular_epi, noether_third, run_law, Law,
    RunMode,
};
use prenorm::{BackendTag, RelKind};

use crate::report::{Check, DemoReport};

/// A registered demo: stable name, one-line summary, runner.
pub struct Demo {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn() -> anyhow::Result<DemoReport>,
}

impl Demo {
    pub fn run(&self) -> anyhow::Result<DemoReport> {
        (self.run)()
    }
}

/// Every demo, in presentation order. Names are stable identifiers.
pub fn registry() -> &'static [Demo] {
    &[
        Demo {
            name: "cmon-sum-analog",
            summary: "a surjection of commutative monoids with trivial kernel that is not a normal epi",
            run: cmon_sum_analog,
        },
        Demo {
            name: "preordcmon-not-regular",
            summary: "a regular epi of preordered monoids whose pullback is a mono and not regular",
            run: preordcmon_not_regular,
        },
        Demo {
            name: "pset-stability-failure",
            summary: "normal epis of pointed sets are not stable under pullback",
            run: pset_stability_failure,
        },
        Demo {
            name: "preord-rel-factorisation-failure",
            summary: "a preorder relation whose canonical factorisation leaves a non-trivial kernel",
            run: preord_rel_factorisation_failure,
        },
        Demo {
            name: "mon-bounded-word",
            summary: "bounded-word evidence that a restricted monoid quotient is not a normal epi",
            run: mon_bounded_word,
        },
        Demo {
            name: "divisibility-ideal",
            summary: "kernels and factorisation in the multiplicative category with ideal of multiples of 10",
            run: divisibility_ideal,
        },
        Demo {
            name: "noether-cmon",
            summary: "the third isomorphism theorem on nested submonoids of a cyclic monoid",
            run: noether_cmon,
        },
        Demo {
            name: "grpd-normal-epi",
            summary: "collapsing groupoid objects is a normal epi only when an arrow aligns them",
            run: grpd_normal_epi,
        },
        Demo {
            name: "ordgrp-cokernel",
            summary: "an ordered-group cokernel whose quotient cone collapses to a trivial object",
            run: ordgrp_cokernel,
        },
    ]
}

/// Find a demo by name.
pub fn find(name: &str) -> Option<&'static Demo> {
    registry().iter().find(|d| d.name == name)
}

fn show_opt(v: Option<bool>) -> String {
    match v {
        Some(t) => t.to_string(),
        None => "undecided".to_string(),
    }
}

fn cmon_sum_analog() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "cmon-sum-analog",
        "the join map of a two-element semilattice is epi with trivial kernel but not normal",
    );
    let b = MonoidBackend::for_tag(BackendTag::CMon)?;
    let t2 = b.unordered_obj(2, vec![0, 1, 1, 1]);
    let prod = b.product(&t2, &t2)?;
    let join = Mor::new(prod.obj.clone(), t2.clone(), vec![0, 1, 1, 1]);
    b.validate_morphism(&join)?;

    rep.push(Check::new("join map is surjective", true, join.is_surjective()));
    rep.push(Check::new(
        "join map has a trivial kernel",
        true,
        has_trivial_kernel(&b, &join)?,
    ));
    rep.push(Check::new(
        "join map is a normal epi",
        false,
        is_normal_epi(&b, &join)?,
    ));
    let fac = factorise(&b, &join)?;
    rep.push(Check::new(
        "normal-epi factor of the factorisation is an iso",
        true,
        is_iso(&b, &fac.e),
    ));
    rep.push(Check::new(
        "trivial-kernel factor carries the whole map",
        true,
        fac.m_has_trivial_kernel && fac.m.map == join.map,
    ));
    rep.note(
        "sum-style maps identify (0,1) with (1,1) without any kernel element witnessing it, \
         so the kernel sees nothing and the factorisation leaves the map untouched",
    );
    Ok(rep)
}

fn preordcmon_not_regular() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "preordcmon-not-regular",
        "pulling a regular epi of preordered monoids back along a mono yields a non-regular mono",
    );
    let b = MonoidBackend::for_tag(BackendTag::PreordCMon)?;
    let (a, mid, chain2, disc2) = ordered_counterexample_family(BackendTag::PreordCMon);
    // p collapses the two incomparable middle elements of the split chain.
    let p = Mor::new(a.clone(), mid.clone(), vec![0, 1, 1, 2]);
    // i embeds the two-element chain as the endpoints.
    let i = Mor::new(chain2.clone(), mid.clone(), vec![0, 2]);
    b.validate_morphism(&p)?;
    b.validate_morphism(&i)?;

    rep.push(Check::new(
        "p is a regular epi",
        "true",
        show_opt(is_regular_epi(&b, &p)?),
    ));
    rep.push(Check::new(
        "p is a normal epi",
        false,
        is_normal_epi(&b, &p)?,
    ));
    let pb = b.pullback(&p, &i)?;
    rep.push(Check::new(
        "pullback object is the discrete pair",
        true,
        *pb.obj == *disc2,
    ));
    let p_prime = pb.to_right.clone();
    rep.push(Check::new("p' is a mono", true, is_mono(&p_prime)));
    rep.push(Check::new(
        "p' is a regular epi",
        "false",
        show_opt(is_regular_epi(&b, &p_prime)?),
    ));
    rep.note(
        "the split chain {0, 1, 1', 2} maps onto the chain {0, 1, 2} by merging the middle \
         pair; restricting to the endpoints {0, 2} forgets the merge and leaves a discrete pair",
    );
    Ok(rep)
}

fn pset_stability_failure() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "pset-stability-failure",
        "the pullback of the collapse 2 → 1 of pointed sets along itself is not a normal epi",
    );
    let b = PSetBackend;
    let two = pset_obj(2, 0);
    let one = pset_obj(1, 0);
    let p = Mor::new(two.clone(), one.clone(), vec![0, 0]);
    b.validate_morphism(&p)?;
    rep.push(Check::new("2 → 1 is a normal epi", true, is_normal_epi(&b, &p)?));
    let pb = b.pullback(&p, &p)?;
    rep.push(Check::new("pullback object is 2 × 2", 4usize, pb.obj.size));
    rep.push(Check::new(
        "pulled-back map 2×2 → 2 is surjective",
        true,
        pb.to_right.is_surjective(),
    ));
    rep.push(Check::new(
        "pulled-back map 2×2 → 2 is a normal epi",
        false,
        is_normal_epi(&b, &pb.to_right)?,
    ));

    let ws = workspace_for(&BackendTag::PSet)?;
    let stab = run_law(&ws, Law::Stability, RunMode::Exhaustive)?;
    rep.push(Check::new(
        "catalog-wide pullback stability",
        "Fail",
        format!("{:?}", stab.verdict),
    ));
    let stab_mono = run_law(&ws, Law::StabilityMono, RunMode::Exhaustive)?;
    rep.push(Check::new(
        "catalog-wide stability along normal monos",
        "Pass",
        format!("{:?}", stab_mono.verdict),
    ));
    rep.note(format!(
        "general stability fails with {} recorded witnesses, while every pullback along a \
         normal mono stays normal ({} cases)",
        stab.witnesses.len() as u64 + stab.witnesses_dropped,
        stab_mono.cases
    ));
    rep.note(
        "the basepoint fibre of 2×2 → 2 is 2×{0}, larger than the basepoint alone, so the \
         projection cannot be the cokernel of its kernel",
    );
    Ok(rep)
}

fn preord_rel_factorisation_failure() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "preord-rel-factorisation-failure",
        "the canonical factorisation of a preorder relation leaves a non-trivial kernel behind",
    );
    let b = RelBackend::new(RelKind::Preorder);
    let (x, _y, f) = preorder_factorisation_counterexample();
    rep.push(Check::new("domain carrier size", 4usize, x.size));
    let fac = factorise(&b, &f)?;
    rep.push(Check::new(
        "intermediate object of the factorisation has 3 elements",
        3usize,
        fac.e.cod.size,
    ));
    rep.push(Check::new(
        "second factor has a trivial kernel",
        false,
        fac.m_has_trivial_kernel,
    ));
    rep.push(Check::new(
        "witness pair in the kernel of the second factor",
        "(0, 2)",
        fac.witness
            .map(|(s, t)| format!("({s}, {t})"))
            .unwrap_or_else(|| "none".into()),
    ));
    rep.note(
        "elements are numbered from 0; the kernel of the second factor still relates the \
         first and third elements, so no normal-epi/trivial-kernel factorisation exists",
    );
    Ok(rep)
}

fn mon_bounded_word() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "mon-bounded-word",
        "xzx and yzy are identified by the restricted projection but not by the bounded congruence",
    );
    let law = mon_counterexample_check(DEFAULT_WORD_BOUND)?;
    rep.push(Check::new(
        "bounded counterexample verdict",
        "Pass",
        format!("{:?}", law.verdict),
    ));
    rep.push(Check::new("violating witnesses", 0usize, law.witnesses.len()));
    rep.note(format!("word-length bound {DEFAULT_WORD_BOUND}"));
    rep.law_report = Some(law);
    Ok(rep)
}

fn divisibility_ideal() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "divisibility-ideal",
        "kernels, normal epis, and the missing factorisation of 25 over the ideal of multiples of 10",
    );
    rep.push(Check::new("kernel of 25", 2u64, ideal_kernel(25)?));
    rep.push(Check::new("kernel of 3", 10u64, ideal_kernel(3)?));
    let epis = ideal_normal_epis()?;
    rep.push(Check::new(
        "normal epis",
        "{1, 2, 5, 10}",
        format!("{epis:?}"),
    ));
    match ideal_factorise(25)? {
        IdealFactorisation::Obstructed {
            forced_q,
            forced_m,
            kernel_of_m,
        } => {
            rep.push(Check::new("forced normal-epi factor of 25", 5u64, forced_q));
            rep.push(Check::new("forced second factor", 5u64, forced_m));
            rep.push(Check::new(
                "kernel of the second factor (not in the ideal)",
                2u64,
                kernel_of_m,
            ));
        }
        IdealFactorisation::Found { q, m } => {
            rep.push(Check::new(
                "factorisation of 25",
                "obstructed",
                format!("found {q} * {m}"),
            ));
        }
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let closed_form =
        (1..=1000u64).all(|n| ideal_kernel(n).is_ok_and(|k| k == 10 / gcd(n, 10)));
    rep.push(Check::new(
        "kernel(n) = 10 / gcd(n, 10) for every n up to 1000",
        true,
        closed_form,
    ));
    let self_dual =
        (1..=1000u64).all(|n| ideal_kernel(n).ok() == ideal_cokernel(n).ok());
    rep.push(Check::new(
        "kernel and cokernel agree pointwise up to 1000",
        true,
        self_dual,
    ));
    rep.note(
        "the factorisation of 25 is forced: the first factor must be the cokernel of the \
         kernel, which is 5, leaving 25 = 5 * 5 — and kernel(5) = 2 is not a multiple of 10",
    );
    rep.note(
        "every value is found by brute-force search; in particular kernel(25) = 2, not 5 — a \
         tempting closed form that transposes the two divisibility tests gets this wrong",
    );
    Ok(rep)
}

fn noether_cmon() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "noether-cmon",
        "(A/N)/(M/N) is isomorphic to A/M for nested normal submonoids of the cyclic monoid Z8",
    );
    let b = MonoidBackend::for_tag(BackendTag::CMon)?;
    let z8 = b.unordered_obj(8, cyclic_table(8));
    let z4 = b.unordered_obj(4, cyclic_table(4));
    let z2 = b.unordered_obj(2, cyclic_table(2));
    // M = even residues, N = multiples of four.
    let m = Mor::new(z4, z8.clone(), vec![0, 2, 4, 6]);
    let n = Mor::new(z2, z8, vec![0, 4]);
    b.validate_morphism(&m)?;
    b.validate_morphism(&n)?;
    let noether = noether_third(&b, &m, &n)?;
    rep.push(Check::new(
        "third-isomorphism statement holds",
        true,
        noether.holds(),
    ));
    rep.push(Check::new("A/N has 4 elements", 4usize, noether.q.cod.size));
    rep.push(Check::new("M/N has 2 elements", 2usize, noether.r.cod.size));
    rep.push(Check::new("A/M has 2 elements", 2usize, noether.p.cod.size));
    rep.push(Check::new(
        "comparison (A/N)/(M/N) → A/M",
        "[0, 1]",
        format!("{:?}", noether.iso.map),
    ));
    rep.note("A = Z8, M = {0,2,4,6}, N = {0,4}; all three quotients are computed as cokernels");
    Ok(rep)
}

fn grpd_normal_epi() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "grpd-normal-epi",
        "collapsing two groupoid objects is a normal epi exactly when an arrow aligns them",
    );
    let b = GrpdBackend;
    let disc2 = b.discrete(2);
    let interval = b.codiscrete(2);
    let pt = b.discrete(1);
    let collapse_disc = Mor::new(disc2, pt.clone(), vec![0, 0]);
    let collapse_interval = Mor::new(interval, pt, vec![0, 0, 0, 0]);
    b.validate_morphism(&collapse_disc)?;
    b.validate_morphism(&collapse_interval)?;

    rep.push(Check::new(
        "collapsing two isolated objects is surjective",
        true,
        collapse_disc.is_surjective(),
    ));
    rep.push(Check::new(
        "collapsing two isolated objects is a normal epi",
        false,
        is_normal_epi(&b, &collapse_disc)?,
    ));
    rep.push(Check::new(
        "backend characterisation agrees on the isolated collapse",
        "false",
        show_opt(b.normal_epi_char(&collapse_disc)),
    ));
    rep.push(Check::new(
        "collapsing two connected objects is a normal epi",
        true,
        is_normal_epi(&b, &collapse_interval)?,
    ));
    rep.push(Check::new(
        "backend characterisation agrees on the connected collapse",
        "true",
        show_opt(b.normal_epi_char(&collapse_interval)),
    ));
    rep.note(
        "with no arrow between the two objects nothing witnesses their identification, so \
         the collapse is a quotient of objects but not the cokernel of any kernel",
    );
    Ok(rep)
}

fn ordgrp_cokernel() -> anyhow::Result<DemoReport> {
    let mut rep = DemoReport::new(
        "ordgrp-cokernel",
        "a cokernel of ordered groups whose quotient cone swallows the whole group",
    );
    let b = OrdGrpBackend;
    let full2: BTreeSet<usize> = [0, 1].into_iter().collect();
    let half4: BTreeSet<usize> = [0, 2].into_iter().collect();
    let dom = b.obj(2, cyclic_table(2), full2);
    let mid = b.obj(4, cyclic_table(4), half4);
    let f = Mor::new(dom, mid, vec![0, 2]);
    b.validate_morphism(&f)?;
    let ck = b.cokernel(&f)?;
    rep.push(Check::new("quotient carrier size", 2usize, ck.q.cod.size));
    rep.push(Check::new(
        "projection map",
        "[0, 1, 0, 1]",
        format!("{:?}", ck.q.map),
    ));
    rep.push(Check::new(
        "quotient object is trivial",
        true,
        b.is_trivial(&ck.q.cod),
    ));
    rep.note(
        "the fully ordered two-element group embeds onto the positive cone {0, 2} of the \
         four-element group; the cokernel collapses that cone into the unit class, and the \
         image of a cone must stay a cone, so the quotient's cone is everything — a trivial \
         object",
    );
    Ok(rep)
}
