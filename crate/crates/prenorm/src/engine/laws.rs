//! Law runners: each law quantifies a categorical statement over a bounded
//! workspace catalog, producing a deterministic [`LawReport`].

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{
    compose, factor_through_epi, factor_through_mono, is_epi, is_iso, is_mono, is_trivial_map,
    subreflectivity_report, Mor, Result, Square, Workspace,
};
use crate::engine::ops::{
    self, catalog_exact_sequences, classify, compare_to_pullback, factorise, product_mor,
};
use crate::engine::report::{Law, LawReport, RunMode, SuiteReport, Verdict, Witness, MAX_WITNESSES};

/// Per-law caps on the number of assertions examined. The case spaces are
/// quadratic to quartic in the catalog, so the heavier laws trim them at a
/// deterministic bound and record how much was dropped.
const CAP_COMPOSABLE_PAIRS: u64 = 2_000_000;
const CAP_STABILITY: u64 = 250_000;
const CAP_KERNEL_STABILITY: u64 = 100_000;
const CAP_TKER_CHAR: u64 = 1_000_000;
const CAP_TRIVIAL_CLASS: u64 = 1_000_000;
const CAP_PB_PUSHOUT: u64 = 500_000;
const CAP_CANCELLATION: u64 = 20_000;
const CAP_BARR_KOCK: u64 = 20_000;
const CAP_EXACT_SEQ: u64 = 400;
const CAP_PRODUCT_EXACTNESS: u64 = 2_000;
const CAP_PULLBACK_EXACTNESS: u64 = 150;
const CAP_NOETHER: u64 = 20_000;
/// In sampled mode, one case in this many is admitted, up to the cap.
const SAMPLE_STRIDE: u32 = 4;

/// Mutable state threaded through one law run: case counting, gating,
/// sampling, and witness collection.
struct Rec {
    mode: RunMode,
    rng: Option<ChaCha8Rng>,
    cap: u64,
    cases: u64,
    gated: u64,
    capped: u64,
    witnesses: Vec<Witness>,
    witnesses_dropped: u64,
    notes: Vec<String>,
    unsupported: bool,
}

impl Rec {
    fn new(mode: RunMode, cap: u64) -> Self {
        let rng = match mode {
            RunMode::Exhaustive => None,
            RunMode::Sampled { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Rec {
            mode,
            rng,
            cap,
            cases: 0,
            gated: 0,
            capped: 0,
            witnesses: Vec::new(),
            witnesses_dropped: 0,
            notes: Vec::new(),
            unsupported: false,
        }
    }

    /// Whether the next case should be examined; counts it if so.
    fn admit(&mut self) -> bool {
        if self.cases >= self.cap {
            self.capped += 1;
            return false;
        }
        if let Some(rng) = self.rng.as_mut() {
            if rng.random_range(0..SAMPLE_STRIDE) != 0 {
                self.capped += 1;
                return false;
            }
        }
        self.cases += 1;
        true
    }

    /// Like [`Rec::admit`] but for `n` homogeneous cases verified at once.
    fn admit_block(&mut self, n: u64) -> bool {
        if self.cases >= self.cap {
            self.capped += n;
            return false;
        }
        if let Some(rng) = self.rng.as_mut() {
            if rng.random_range(0..SAMPLE_STRIDE) != 0 {
                self.capped += n;
                return false;
            }
        }
        self.cases += n;
        true
    }

    fn gate(&mut self) {
        self.gated += 1;
    }

    fn fail(&mut self, context: String, detail: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { context, detail });
        } else {
            self.witnesses_dropped += 1;
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(mut self, law: Law) -> LawReport {
        let verdict = if !self.witnesses.is_empty() || self.witnesses_dropped > 0 {
            Verdict::Fail
        } else if self.unsupported {
            Verdict::Unsupported
        } else {
            Verdict::Pass
        };
        if self.capped > 0 {
            self.notes
                .push(format!("case cap reached; {} cases not examined", self.capped));
        }
        LawReport {
            law: law.id().to_string(),
            verdict,
            cases: self.cases,
            gated: self.gated,
            capped: self.capped,
            mode: self.mode,
            witnesses: self.witnesses,
            witnesses_dropped: self.witnesses_dropped,
            notes: self.notes,
        }
    }
}

/// Human-readable label for catalog morphism `i`.
fn label(ws: &Workspace, i: usize) -> String {
    let f = &ws.catalog.morphisms[i];
    format!(
        "m{}: o{}→o{} {:?}",
        i,
        ws.catalog.dom_index(i),
        ws.catalog.cod_index(i),
        f.map
    )
}

/// Label for a non-catalog morphism.
fn loose(f: &Mor) -> String {
    format!("[{}→{}] {:?}", f.dom.size, f.cod.size, f.map)
}

/// Run a single law over the workspace catalog.
pub fn run_law(ws: &Workspace, law: Law, mode: RunMode) -> Result<LawReport> {
    match law {
        Law::TrivialClass => trivial_class(ws, mode),
        Law::FsAxioms => fs_axioms(ws, mode),
        Law::Stability => stability(ws, mode, false),
        Law::StabilityMono => stability(ws, mode, true),
        Law::KernelStability => kernel_stability(ws, mode),
        Law::TkerChar => tker_char(ws, mode),
        Law::CrossValidation => cross_validation(ws, mode),
        Law::PbPushout => pb_pushout(ws, mode),
        Law::Cancellation => cancellation(ws, mode),
        Law::BarrKock => barr_kock(ws, mode),
        Law::ExactSeq => exact_seq(ws, mode),
        Law::ProductExactness => product_exactness(ws, mode),
        Law::PullbackExactness => pullback_exactness(ws, mode),
        Law::Noether => noether(ws, mode),
    }
}

/// Run a list of laws and aggregate the reports.
pub fn run_suite(ws: &Workspace, laws: &[Law], mode: RunMode) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(ws.backend.tag(), mode);
    report.catalog_objects = ws.catalog.objects.len();
    report.catalog_morphisms = ws.catalog.morphisms.len();
    report.notes = ws.catalog.notes.clone();
    for &law in laws {
        report.laws.push(run_law(ws, law, mode)?);
    }
    Ok(report)
}

/// Trivial-class structure: counit shape, closure under retracts, trivial
/// cancellation past trivial kernels, factorisation of maps out of trivial
/// objects through counits, and subreflectivity.
fn trivial_class(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_TRIVIAL_CLASS);

    let trivial_objs: Vec<usize> = (0..ws.catalog.objects.len())
        .filter(|&i| b.is_trivial(&ws.catalog.objects[i]))
        .collect();

    for (xi, x) in ws.catalog.objects.iter().enumerate() {
        if !rec.admit() {
            break;
        }
        let c = b.coreflection(x);
        if !is_mono(&c.counit) {
            rec.fail(format!("o{xi}"), "coreflection counit is not mono".into());
        }
        if !b.is_trivial(c.obj()) {
            rec.fail(format!("o{xi}"), "coreflection object is not trivial".into());
        }
        if b.is_trivial(x) && !is_iso(b, &c.counit) {
            rec.fail(
                format!("o{xi}"),
                "counit of a trivial object is not an iso".into(),
            );
        }
    }

    // Retract closure: a retract of a trivial object is trivial.
    'retract: for &ti in &trivial_objs {
        for xi in 0..ws.catalog.objects.len() {
            for &si in ws.catalog.hom(xi, ti) {
                for &ri in ws.catalog.hom(ti, xi) {
                    if !rec.admit() {
                        break 'retract;
                    }
                    let s = &ws.catalog.morphisms[si];
                    let r = &ws.catalog.morphisms[ri];
                    let sr = compose(s, r)?;
                    let is_id = sr.map.iter().enumerate().all(|(i, &v)| i == v);
                    if is_id && !b.is_trivial(&ws.catalog.objects[xi]) {
                        rec.fail(
                            format!("{} ; {}", label(ws, si), label(ws, ri)),
                            "retract of a trivial object is not trivial".into(),
                        );
                    }
                }
            }
        }
    }

    // Maps from trivial objects factor through the counit of their codomain.
    'universal: for &zi in &trivial_objs {
        for ti in 0..ws.catalog.objects.len() {
            let counit = b.coreflection(&ws.catalog.objects[ti]).counit;
            for &fi in ws.catalog.hom(zi, ti) {
                if !rec.admit() {
                    break 'universal;
                }
                let f = &ws.catalog.morphisms[fi];
                if factor_through_mono(b, f, &counit).is_none() {
                    rec.fail(
                        label(ws, fi),
                        "map out of a trivial object does not factor through the counit".into(),
                    );
                }
            }
        }
    }

    // Trivial cancellation: g;f trivial and f with trivial kernel force g
    // trivial.
    'cancel: for (fi, f) in ws.catalog.morphisms.iter().enumerate() {
        if !traits[fi].trivial_kernel {
            continue;
        }
        let di = ws.catalog.dom_index(fi);
        for gi in ws.catalog.morphisms_into(di) {
            if !rec.admit() {
                break 'cancel;
            }
            let g = &ws.catalog.morphisms[gi];
            let gf = compose(g, f)?;
            if is_trivial_map(b, &gf) && !is_trivial_map(b, g) {
                rec.fail(
                    format!("{} then {}", label(ws, gi), label(ws, fi)),
                    "trivial composite past a trivial-kernel map with g not trivial".into(),
                );
            }
        }
    }

    match subreflectivity_report(ws) {
        Ok(report) => {
            let checked: usize = report
                .reflections
                .iter()
                .map(|r| r.factorisations_checked)
                .sum();
            let epis = report.reflections.iter().filter(|r| r.unit_is_epi).count();
            rec.note(format!(
                "reflections exist for {} objects ({} outside the subreflective domain); \
                 {} of the units are epi; {} factorisations through units verified",
                report.reflections.len(),
                report.outside_domain,
                epis,
                checked
            ));
        }
        Err(e) => rec.fail("subreflectivity".into(), e.to_string()),
    }

    Ok(rec.finish(Law::TrivialClass))
}

/// Lookup table from (dom, cod, table) to catalog morphism index, so that
/// composites of catalog morphisms resolve to their trait rows in O(1).
fn morphism_index(ws: &Workspace) -> HashMap<(usize, usize, Vec<usize>), usize> {
    let mut idx = HashMap::with_capacity(ws.catalog.morphisms.len());
    for (i, f) in ws.catalog.morphisms.iter().enumerate() {
        idx.insert(
            (ws.catalog.dom_index(i), ws.catalog.cod_index(i), f.map.clone()),
            i,
        );
    }
    idx
}

/// Factorisation-system axioms over the catalog.
fn fs_axioms(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_COMPOSABLE_PAIRS);

    // Factorisation existence: e is a cokernel (normal epi by construction,
    // re-checked), m must have a trivial kernel.
    for (fi, f) in ws.catalog.morphisms.iter().enumerate() {
        if !rec.admit() {
            break;
        }
        let fac = factorise(b, f)?;
        if !ops::is_normal_epi(b, &fac.e)? {
            rec.fail(
                label(ws, fi),
                "cokernel half of the canonical factorisation is not a normal epi".into(),
            );
        }
        if !fac.m_has_trivial_kernel {
            rec.fail(
                label(ws, fi),
                format!(
                    "no (normal epi, trivial kernel) factorisation: the induced comparison has a non-trivial kernel{}",
                    fac.witness
                        .map(|(a, c)| format!(", witness pair ({a}, {c})"))
                        .unwrap_or_default()
                ),
            );
        }
        // Isos sit in both classes; both classes together force an iso.
        let t = traits[fi];
        if t.iso && !(t.normal_epi && t.trivial_kernel) {
            rec.fail(label(ws, fi), "iso missing from one of the two classes".into());
        }
        if t.normal_epi && t.trivial_kernel && !t.iso {
            rec.fail(
                label(ws, fi),
                "map in both classes is not an iso".into(),
            );
        }
    }

    // Composition closure and the two cancellation properties, on composable
    // catalog pairs; composites are located in the catalog so every check is
    // a table lookup.
    let index = morphism_index(ws);
    let nobj = ws.catalog.objects.len();
    let mut missing_composites = 0u64;
    'pairs: for ai in 0..nobj {
        for bi in 0..nobj {
            for &fi in ws.catalog.hom(ai, bi) {
                for ci in 0..nobj {
                    for &gi in ws.catalog.hom(bi, ci) {
                        if !rec.admit() {
                            break 'pairs;
                        }
                        let f = &ws.catalog.morphisms[fi];
                        let g = &ws.catalog.morphisms[gi];
                        let comp = compose(f, g)?;
                        let Some(&hi) = index.get(&(ai, ci, comp.map)) else {
                            missing_composites += 1;
                            continue;
                        };
                        let (tf, tg, th) = (traits[fi], traits[gi], traits[hi]);
                        if tf.normal_epi && tg.normal_epi && !th.normal_epi {
                            rec.fail(
                                format!("{} then {}", label(ws, fi), label(ws, gi)),
                                "composite of normal epis is not a normal epi".into(),
                            );
                        }
                        if tf.trivial_kernel && tg.trivial_kernel && !th.trivial_kernel {
                            rec.fail(
                                format!("{} then {}", label(ws, fi), label(ws, gi)),
                                "composite of trivial-kernel maps lacks a trivial kernel".into(),
                            );
                        }
                        if th.normal_epi && tf.normal_epi && !tg.normal_epi {
                            rec.fail(
                                format!("{} then {}", label(ws, fi), label(ws, gi)),
                                "normal epis do not right-cancel".into(),
                            );
                        }
                        if th.trivial_kernel && tg.trivial_kernel && !tf.trivial_kernel {
                            rec.fail(
                                format!("{} then {}", label(ws, fi), label(ws, gi)),
                                "trivial-kernel maps do not left-cancel".into(),
                            );
                        }
                    }
                }
            }
        }
    }
    if missing_composites > 0 {
        rec.note(format!(
            "{missing_composites} composites fell outside the enumerated catalog and were skipped"
        ));
    }

    orthogonality(ws, &mut rec)?;

    Ok(rec.finish(Law::FsAxioms))
}

/// Orthogonality of normal epis against trivial-kernel maps. For a surjective
/// `e` any diagonal is determined on representatives, so commuting squares
/// over a fixed top map either all lift at once or pinpoint a violation.
fn orthogonality(ws: &Workspace, rec: &mut Rec) -> Result<()> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let nobj = ws.catalog.objects.len();

    // Trivial-kernel maps out of each object.
    let mut tker_from: Vec<Vec<usize>> = vec![Vec::new(); nobj];
    for (i, t) in traits.iter().enumerate() {
        if t.trivial_kernel {
            tker_from[ws.catalog.dom_index(i)].push(i);
        }
    }

    'outer: for (ei, e) in ws.catalog.morphisms.iter().enumerate() {
        if !traits[ei].normal_epi {
            continue;
        }
        if !e.is_surjective() {
            rec.fail(label(ws, ei), "normal epi is not surjective".into());
            continue;
        }
        let ai = ws.catalog.dom_index(ei);
        // Pairs of elements identified by e, one per non-representative.
        let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
        let mut fibre_pairs: Vec<(usize, usize)> = Vec::new();
        for x in 0..e.dom.size {
            match rep.get(&e.apply(x)) {
                Some(&r) => fibre_pairs.push((r, x)),
                None => {
                    rep.insert(e.apply(x), x);
                }
            }
        }
        for xi in 0..nobj {
            for &ti in ws.catalog.hom(ai, xi) {
                let top = &ws.catalog.morphisms[ti];
                let fibre_constant = fibre_pairs
                    .iter()
                    .all(|&(p, q)| top.apply(p) == top.apply(q));
                if fibre_constant {
                    match factor_through_epi(b, top, e) {
                        Some(_) => {
                            // The unique candidate diagonal is a morphism, so
                            // every trivial-kernel map out of the top-right
                            // corner yields a lifted square.
                            if !rec.admit_block(tker_from[xi].len() as u64) {
                                break 'outer;
                            }
                        }
                        None => {
                            // The candidate diagonal is not a morphism, so a
                            // square exists for any m whose bottom map is
                            // well-defined, and none of them lift.
                            for &mi in &tker_from[xi] {
                                if !rec.admit() {
                                    break 'outer;
                                }
                                let m = &ws.catalog.morphisms[mi];
                                let tm = compose(top, m)?;
                                if factor_through_epi(b, &tm, e).is_some() {
                                    rec.fail(
                                        format!(
                                            "e = {}, m = {}, top = {}",
                                            label(ws, ei),
                                            label(ws, mi),
                                            label(ws, ti)
                                        ),
                                        "commuting square admits no diagonal lift".into(),
                                    );
                                }
                            }
                        }
                    }
                } else {
                    // No lift can exist (it would be determined on fibres);
                    // the law fails exactly when some square still commutes.
                    for &mi in &tker_from[xi] {
                        if !rec.admit() {
                            break 'outer;
                        }
                        let m = &ws.catalog.morphisms[mi];
                        let collapses = fibre_pairs
                            .iter()
                            .all(|&(p, q)| m.apply(top.apply(p)) == m.apply(top.apply(q)));
                        if !collapses {
                            continue;
                        }
                        let tm = compose(top, m)?;
                        if factor_through_epi(b, &tm, e).is_some() {
                            rec.fail(
                                format!(
                                    "e = {}, m = {}, top = {}",
                                    label(ws, ei),
                                    label(ws, mi),
                                    label(ws, ti)
                                ),
                                "commuting square admits no diagonal lift (top map not fibre-constant)"
                                    .into(),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Pullback stability of normal epis, along all maps or only normal monos.
fn stability(ws: &Workspace, mode: RunMode, along_normal_monos: bool) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_STABILITY);

    'outer: for (ei, e) in ws.catalog.morphisms.iter().enumerate() {
        if !traits[ei].normal_epi {
            continue;
        }
        let bi = ws.catalog.cod_index(ei);
        for xi in ws.catalog.morphisms_into(bi) {
            if along_normal_monos && !traits[xi].normal_mono {
                continue;
            }
            if !rec.admit() {
                break 'outer;
            }
            let x = &ws.catalog.morphisms[xi];
            let pb = b.pullback(e, x)?;
            let pulled = pb.to_right;
            let ok = match b.normal_epi_char(&pulled) {
                Some(v) => {
                    debug_assert_eq!(v, ops::is_normal_epi(b, &pulled)?);
                    v
                }
                None => ops::is_normal_epi(b, &pulled)?,
            };
            if !ok {
                rec.fail(
                    format!("e = {}, along = {}", label(ws, ei), label(ws, xi)),
                    format!("pullback {} is not a normal epi", loose(&pulled)),
                );
            }
        }
    }
    let law = if along_normal_monos {
        Law::StabilityMono
    } else {
        Law::Stability
    };
    Ok(rec.finish(law))
}

/// Kernels are stable under pullback: pulling the kernel of `f` back along
/// `x` presents the kernel of `x;f`.
fn kernel_stability(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let mut rec = Rec::new(mode, CAP_KERNEL_STABILITY);

    'outer: for (fi, f) in ws.catalog.morphisms.iter().enumerate() {
        let k = ops::kernel(b, f)?;
        let ai = ws.catalog.dom_index(fi);
        for xi in ws.catalog.morphisms_into(ai) {
            if !rec.admit() {
                break 'outer;
            }
            let x = &ws.catalog.morphisms[xi];
            let pulled = b.pullback(&k, x)?.to_right;
            let composite = compose(x, f)?;
            let direct = ops::kernel(b, &composite)?;
            if !ops::same_subobject(b, &pulled, &direct) {
                rec.fail(
                    format!("f = {}, x = {}", label(ws, fi), label(ws, xi)),
                    "pulled-back kernel differs from the kernel of the composite".into(),
                );
            }
        }
    }
    Ok(rec.finish(Law::KernelStability))
}

/// Trivial-kernel characterisation: `f` has a trivial kernel iff every `g`
/// with `g;f` trivial is itself trivial. Both directions are exercised — the
/// kernel inclusion witnesses the converse for non-trivial kernels.
fn tker_char(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_TKER_CHAR);

    'outer: for (fi, f) in ws.catalog.morphisms.iter().enumerate() {
        if traits[fi].trivial_kernel {
            let ai = ws.catalog.dom_index(fi);
            for gi in ws.catalog.morphisms_into(ai) {
                if !rec.admit() {
                    break 'outer;
                }
                let g = &ws.catalog.morphisms[gi];
                let gf = compose(g, f)?;
                if is_trivial_map(b, &gf) && !is_trivial_map(b, g) {
                    rec.fail(
                        format!("f = {}, g = {}", label(ws, fi), label(ws, gi)),
                        "trivial-kernel map does not cancel a trivial composite".into(),
                    );
                }
            }
        } else {
            if !rec.admit() {
                break 'outer;
            }
            let k = ops::kernel(b, f)?;
            let kf = compose(&k, f)?;
            if !is_trivial_map(b, &kf) {
                rec.fail(label(ws, fi), "kernel composite is not trivial".into());
            }
            if is_trivial_map(b, &k) {
                rec.fail(
                    label(ws, fi),
                    "kernel of a non-trivial-kernel map is a trivial map".into(),
                );
            }
        }
    }
    Ok(rec.finish(Law::TkerChar))
}

/// The generic engine against the backend's own predicates: normal-epi
/// characterisation and direct kernel formula, over every catalog morphism.
fn cross_validation(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, u64::MAX);

    let mut char_checked = 0u64;
    let mut kernel_checked = 0u64;
    for (fi, f) in ws.catalog.morphisms.iter().enumerate() {
        if !rec.admit() {
            break;
        }
        if let Some(c) = b.normal_epi_char(f) {
            char_checked += 1;
            if c != traits[fi].normal_epi {
                rec.fail(
                    label(ws, fi),
                    format!(
                        "characterisation predicate says {}, canonical factorisation says {}",
                        c, traits[fi].normal_epi
                    ),
                );
            }
        }
        if let Some(direct) = b.kernel_direct(f) {
            kernel_checked += 1;
            let k = ops::kernel(b, f)?;
            if !ops::same_subobject(b, &direct, &k) {
                rec.fail(
                    label(ws, fi),
                    "direct kernel formula disagrees with the pullback kernel".into(),
                );
            }
        }
    }
    if char_checked == 0 && kernel_checked == 0 {
        rec.unsupported = true;
        rec.note("backend supplies neither a normal-epi characterisation nor a direct kernel formula".into());
    } else {
        rec.note(format!(
            "{char_checked} characterisation comparisons, {kernel_checked} kernel-formula comparisons"
        ));
        if char_checked == 0 {
            rec.note("no normal-epi characterisation for this backend; kernels only".into());
        }
    }
    Ok(rec.finish(Law::CrossValidation))
}

/// Pullback squares with a certified-regular base and a normal-epi side are
/// pushouts, verified against every catalog cocone.
fn pb_pushout(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_PB_PUSHOUT);
    let nobj = ws.catalog.objects.len();

    'outer: for (pi, p) in ws.catalog.morphisms.iter().enumerate() {
        // p : C → D, certified regular epi.
        if traits[pi].regular_epi != Some(true) {
            continue;
        }
        let di = ws.catalog.cod_index(pi);
        for fi in ws.catalog.morphisms_into(di) {
            let f = &ws.catalog.morphisms[fi];
            let pb = b.pullback(f, p)?;
            let q = &pb.to_left; // P → B
            let g = &pb.to_right; // P → C
            if !ops::is_normal_epi(b, g)? || !is_epi(ws, q) {
                rec.gate();
                continue;
            }
            // Pushout of the span (q, g) with corner D: cocones (u, v) with
            // q;u = g;v need a unique w with f;w = u and p;w = v. Since q is
            // surjective, u is determined by v.
            for ti in 0..nobj {
                for &vi in ws.catalog.hom(ws.catalog.dom_index(pi), ti) {
                    if !rec.admit() {
                        break 'outer;
                    }
                    let v = &ws.catalog.morphisms[vi];
                    let gv = compose(g, v)?;
                    let Some(u) = factor_through_epi(b, &gv, q) else {
                        continue; // no cocone extends this v
                    };
                    match factor_through_epi(b, v, p) {
                        Some(w) => {
                            if compose(f, &w)?.map != u.map {
                                rec.fail(
                                    format!(
                                        "f = {}, p = {}, cocone v = {}",
                                        label(ws, fi),
                                        label(ws, pi),
                                        label(ws, vi)
                                    ),
                                    "mediating map exists but does not commute with f".into(),
                                );
                            }
                        }
                        None => rec.fail(
                            format!(
                                "f = {}, p = {}, cocone v = {}",
                                label(ws, fi),
                                label(ws, pi),
                                label(ws, vi)
                            ),
                            "cocone admits no mediating map out of the pullback square".into(),
                        ),
                    }
                }
            }
        }
    }
    Ok(rec.finish(Law::PbPushout))
}

/// Pullback cancellation: with the left square a computed pullback, the
/// outer rectangle a verified pullback, and the bottom-left map a normal and
/// regular epi, the right square must be a pullback.
fn cancellation(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_CANCELLATION);

    'outer: for (fi, f1) in ws.catalog.morphisms.iter().enumerate() {
        // f′ : A′ → B′, the bottom-left map.
        if !(traits[fi].normal_epi && traits[fi].regular_epi == Some(true)) {
            continue;
        }
        let bi = ws.catalog.cod_index(fi);
        for &gi in ws
            .catalog
            .morphisms_from(bi)
            .collect::<Vec<_>>()
            .iter()
        {
            let g1 = &ws.catalog.morphisms[gi]; // g′ : B′ → C′
            let ci = ws.catalog.cod_index(gi);
            for cc in ws.catalog.morphisms_into(ci) {
                let c = &ws.catalog.morphisms[cc]; // c : C → C′
                for bb in ws.catalog.morphisms_into(bi) {
                    let bv = &ws.catalog.morphisms[bb]; // b : R → B′
                    let ri = ws.catalog.dom_index(bb);
                    let want = compose(bv, g1)?;
                    for &ti in ws.catalog.hom(ri, ws.catalog.dom_index(cc)) {
                        let gt = &ws.catalog.morphisms[ti]; // g_top : R → C
                        if compose(gt, c)?.map != want.map {
                            continue;
                        }
                        if !rec.admit() {
                            break 'outer;
                        }
                        // Left square: the computed pullback of f′ along b.
                        let pbl = b.pullback(f1, bv)?;
                        let la = pbl.to_left; // L → A′
                        let ft = pbl.to_right; // L → R
                        let outer = Square {
                            top: compose(&ft, gt)?,
                            left: la,
                            right: c.clone(),
                            bottom: compose(f1, g1)?,
                        };
                        if !compare_to_pullback(b, &outer)? {
                            rec.gate();
                            continue;
                        }
                        let right = Square {
                            top: gt.clone(),
                            left: bv.clone(),
                            right: c.clone(),
                            bottom: g1.clone(),
                        };
                        if !compare_to_pullback(b, &right)? {
                            rec.fail(
                                format!(
                                    "f′ = {}, g′ = {}, c = {}, b = {}, top = {}",
                                    label(ws, fi),
                                    label(ws, gi),
                                    label(ws, cc),
                                    label(ws, bb),
                                    label(ws, ti)
                                ),
                                "outer and left squares are pullbacks but the right square is not"
                                    .into(),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(rec.finish(Law::Cancellation))
}

/// Descent-style comparison: for a normal, certified-regular epi `f` and a
/// commuting square over `g`, if the kernel-pair square is a pullback then
/// the square itself is one.
fn barr_kock(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_BARR_KOCK);

    'outer: for (fi, f) in ws.catalog.morphisms.iter().enumerate() {
        if !(traits[fi].normal_epi && traits[fi].regular_epi == Some(true)) {
            continue;
        }
        let xi = ws.catalog.dom_index(fi);
        let rf = b.pullback(f, f)?;
        for xm in ws.catalog.morphisms_from(xi).collect::<Vec<_>>() {
            let x = &ws.catalog.morphisms[xm]; // x : X → A
            let ai = ws.catalog.cod_index(xm);
            for gm in ws.catalog.morphisms_from(ai).collect::<Vec<_>>() {
                let g = &ws.catalog.morphisms[gm]; // g : A → B
                let xg = compose(x, g)?;
                let Some(y) = factor_through_epi(b, &xg, f) else {
                    continue; // no commuting square over (f, g) through x
                };
                if !rec.admit() {
                    break 'outer;
                }
                let sg = b.pullback(g, g)?;
                let mut pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                for s in 0..sg.obj.size {
                    pos.insert((sg.to_left.apply(s), sg.to_right.apply(s)), s);
                }
                let mut rho_map = Vec::with_capacity(rf.obj.size);
                let mut total = true;
                for t in 0..rf.obj.size {
                    let pair = (
                        x.apply(rf.to_left.apply(t)),
                        x.apply(rf.to_right.apply(t)),
                    );
                    match pos.get(&pair) {
                        Some(&s) => rho_map.push(s),
                        None => {
                            total = false;
                            break;
                        }
                    }
                }
                if !total {
                    rec.fail(
                        format!("f = {}, x = {}, g = {}", label(ws, fi), label(ws, xm), label(ws, gm)),
                        "kernel-pair comparison map is not even defined".into(),
                    );
                    continue;
                }
                let rho = Mor::new(rf.obj.clone(), sg.obj.clone(), rho_map);
                if b.validate_morphism(&rho).is_err() {
                    rec.gate();
                    continue;
                }
                let left0 = Square {
                    top: rf.to_left.clone(),
                    left: rho.clone(),
                    right: x.clone(),
                    bottom: sg.to_left.clone(),
                };
                let left1 = Square {
                    top: rf.to_right.clone(),
                    left: rho.clone(),
                    right: x.clone(),
                    bottom: sg.to_right.clone(),
                };
                if !(compare_to_pullback(b, &left0)? || compare_to_pullback(b, &left1)?) {
                    rec.gate();
                    continue;
                }
                let right = Square {
                    top: f.clone(),
                    left: x.clone(),
                    right: y.clone(),
                    bottom: g.clone(),
                };
                if !compare_to_pullback(b, &right)? {
                    rec.fail(
                        format!("f = {}, x = {}, g = {}", label(ws, fi), label(ws, xm), label(ws, gm)),
                        "kernel-pair square is a pullback but the underlying square is not".into(),
                    );
                }
            }
        }
    }
    Ok(rec.finish(Law::BarrKock))
}

/// Exact sequences and their trivial factorisation square: the canonical
/// corner is simultaneously a pullback, a pushout, a coreflection, and a
/// reflection, and over perturbed corners the three conditions agree.
fn exact_seq(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let mut rec = Rec::new(mode, CAP_EXACT_SEQ);
    let sequences = catalog_exact_sequences(ws)?;
    rec.note(format!(
        "{} exact sequences generated from catalog normal monos",
        sequences.len()
    ));

    'outer: for seq in &sequences {
        if !rec.admit() {
            break;
        }
        let f = &seq.f;
        let g = &seq.g;
        if !ops::check_exact_sequence(b, f, g)? {
            rec.fail(
                format!("f = {}, g = {}", loose(f), loose(g)),
                "sequence built from a normal mono and its cokernel fails exactness".into(),
            );
            continue;
        }
        let fg = compose(f, g)?;
        // Canonical corner: the coreflection counit of C and the induced ν.
        let counit = b.coreflection(&g.cod).counit;
        let Some(nu) = factor_through_mono(b, &fg, &counit) else {
            rec.fail(
                format!("f = {}, g = {}", loose(f), loose(g)),
                "trivial composite does not factor through the counit".into(),
            );
            continue;
        };
        let canonical = corner_conditions(ws, f, g, &nu, &counit)?;
        if !(canonical.pullback && canonical.pushout && canonical.coreflection && canonical.reflection)
        {
            rec.fail(
                format!("f = {}, g = {}", loose(f), loose(g)),
                format!(
                    "canonical corner fails: pullback={}, pushout={}, coreflection={}, reflection={}",
                    canonical.pullback, canonical.pushout, canonical.coreflection, canonical.reflection
                ),
            );
        }
        // Perturbed corners: every factorisation of f;g through a trivial
        // catalog object must satisfy all three conditions or none.
        for (zi, z) in ws.catalog.objects.iter().enumerate() {
            if !b.is_trivial(z) {
                continue;
            }
            let Some(nus) = b.enumerate_homs(&f.dom, z, crate::backends::HOM_BUDGET) else {
                continue;
            };
            let Some(zetas) = b.enumerate_homs(z, &g.cod, crate::backends::HOM_BUDGET) else {
                continue;
            };
            for zeta in &zetas {
                for nu2 in &nus {
                    if compose(nu2, zeta)?.map != fg.map {
                        continue;
                    }
                    if !rec.admit() {
                        break 'outer;
                    }
                    let cond = corner_conditions(ws, f, g, nu2, zeta)?;
                    let square_ok = cond.pullback && cond.pushout;
                    if square_ok != cond.coreflection || cond.coreflection != cond.reflection {
                        rec.fail(
                            format!(
                                "f = {}, g = {}, corner o{} via ν = {:?}, ζ = {:?}",
                                loose(f),
                                loose(g),
                                zi,
                                nu2.map,
                                zeta.map
                            ),
                            format!(
                                "corner conditions disagree: pullback∧pushout={}, coreflection={}, reflection={}",
                                square_ok, cond.coreflection, cond.reflection
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(rec.finish(Law::ExactSeq))
}

struct CornerConditions {
    pullback: bool,
    pushout: bool,
    coreflection: bool,
    reflection: bool,
}

/// Evaluate the three equivalent corner conditions for a factorisation
/// `ν : A → Z`, `ζ : Z → C` of the composite of an exact sequence.
fn corner_conditions(
    ws: &Workspace,
    f: &Mor,
    g: &Mor,
    nu: &Mor,
    zeta: &Mor,
) -> Result<CornerConditions> {
    let b = ws.backend.as_ref();
    let sq = Square {
        top: f.clone(),
        left: nu.clone(),
        right: g.clone(),
        bottom: zeta.clone(),
    };
    let pullback = compare_to_pullback(b, &sq)?;

    // Bounded pushout of the span (f, ν) with corner C: for every catalog
    // object T and cocone (u : B → T, v : Z → T) with f;u = ν;v there must be
    // exactly one w : C → T with g;w = u and ζ;w = v. As g is surjective, w
    // is determined by u.
    let mut pushout = true;
    'push: for t in ws.catalog.objects.iter() {
        let Some(us) = b.enumerate_homs(&g.dom, t, crate::backends::HOM_BUDGET) else {
            continue;
        };
        let Some(vs) = b.enumerate_homs(&nu.cod, t, crate::backends::HOM_BUDGET) else {
            continue;
        };
        for u in &us {
            let fu = compose(f, u)?;
            for v in &vs {
                if compose(nu, v)?.map != fu.map {
                    continue;
                }
                match factor_through_epi(b, u, g) {
                    Some(w) => {
                        if compose(zeta, &w)?.map != v.map {
                            pushout = false;
                            break 'push;
                        }
                    }
                    None => {
                        pushout = false;
                        break 'push;
                    }
                }
            }
        }
    }

    // (Z, ζ) is a coreflection of C iff its comparison to the canonical
    // counit is an iso.
    let counit = b.coreflection(&g.cod).counit;
    let coreflection = match factor_through_mono(b, zeta, &counit) {
        Some(h) => is_iso(b, &h),
        None => false,
    };

    // (Z, ν) is a reflection of A iff the comparison from the canonical unit
    // is an iso.
    let unit = crate::core::reflection(b, &f.dom)?;
    let reflection = match factor_through_epi(b, nu, &unit) {
        Some(t) => is_iso(b, &t),
        None => false,
    };

    Ok(CornerConditions {
        pullback,
        pushout,
        coreflection,
        reflection,
    })
}

/// Binary products: of normal epis (stay normal epis) and of exact sequences
/// (stay exact).
fn product_exactness(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_PRODUCT_EXACTNESS);

    // Products of normal epis, smallest first so caps trim the heavy tail.
    let mut epis: Vec<usize> = (0..ws.catalog.morphisms.len())
        .filter(|&i| traits[i].normal_epi)
        .collect();
    epis.sort_by_key(|&i| ws.catalog.morphisms[i].dom.size);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &i in &epis {
        for &j in &epis {
            pairs.push((i, j));
        }
    }
    pairs.sort_by_key(|&(i, j)| {
        (
            ws.catalog.morphisms[i].dom.size * ws.catalog.morphisms[j].dom.size,
            i,
            j,
        )
    });
    for (i, j) in pairs {
        if !rec.admit() {
            break;
        }
        let prod = product_mor(b, &ws.catalog.morphisms[i], &ws.catalog.morphisms[j])?;
        if !ops::is_normal_epi(b, &prod)? {
            rec.fail(
                format!("{} × {}", label(ws, i), label(ws, j)),
                "product of two normal epis is not a normal epi".into(),
            );
        }
    }

    // Products of exact sequences.
    let sequences = catalog_exact_sequences(ws)?;
    let mut seq_pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..sequences.len() {
        for j in 0..sequences.len() {
            seq_pairs.push((i, j));
        }
    }
    seq_pairs.sort_by_key(|&(i, j)| {
        (
            sequences[i].f.cod.size * sequences[j].f.cod.size,
            i,
            j,
        )
    });
    rec.note(format!(
        "{} sequence pairs considered for products",
        seq_pairs.len()
    ));
    for (i, j) in seq_pairs {
        if !rec.admit() {
            break;
        }
        let fx = product_mor(b, &sequences[i].f, &sequences[j].f)?;
        let gx = product_mor(b, &sequences[i].g, &sequences[j].g)?;
        if !ops::check_exact_sequence(b, &fx, &gx)? {
            rec.fail(
                format!("sequences #{i} × #{j}"),
                "product of two exact sequences is not exact".into(),
            );
        }
    }

    Ok(rec.finish(Law::ProductExactness))
}

/// Pulling an exact sequence back along `c` gives an exact sequence iff `c`
/// has a trivial kernel; both directions are counted.
fn pullback_exactness(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let mut rec = Rec::new(mode, CAP_PULLBACK_EXACTNESS);
    let sequences = catalog_exact_sequences(ws)?;

    let mut tker_exact = 0u64;
    let mut nontker_nonexact = 0u64;
    'outer: for seq in &sequences {
        let f = &seq.f;
        let g = &seq.g;
        for cobj in ws.catalog.objects.iter() {
            let Some(cs) = b.enumerate_homs(cobj, &g.cod, crate::backends::HOM_BUDGET) else {
                continue;
            };
            for c in &cs {
                if !rec.admit() {
                    break 'outer;
                }
                let pbg = b.pullback(g, c)?;
                let bmap = &pbg.to_left; // B′ → B
                let g2 = &pbg.to_right; // B′ → C′
                let pbf = b.pullback(f, bmap)?;
                let f2 = &pbf.to_right; // A′ → B′
                let exact = ops::check_exact_sequence(b, f2, g2)?;
                let tker = ops::has_trivial_kernel(b, c)?;
                if exact != tker {
                    rec.fail(
                        format!("f = {}, g = {}, c = {}", loose(f), loose(g), loose(c)),
                        format!("pulled-back sequence exact = {exact}, trivial kernel of c = {tker}"),
                    );
                } else if tker {
                    tker_exact += 1;
                } else {
                    nontker_nonexact += 1;
                }
            }
        }
    }
    rec.note(format!(
        "{tker_exact} trivial-kernel pullbacks stayed exact; {nontker_nonexact} non-trivial-kernel pullbacks correctly lost exactness"
    ));
    if nontker_nonexact == 0 {
        rec.note("no catalog map with a non-trivial kernel targets a sequence codomain; only one direction exercised".into());
    }
    Ok(rec.finish(Law::PullbackExactness))
}

/// Third isomorphism theorem over every nested pair of distinct catalog
/// normal subobjects.
fn noether(ws: &Workspace, mode: RunMode) -> Result<LawReport> {
    let b = ws.backend.as_ref();
    let traits = classify(ws)?;
    let mut rec = Rec::new(mode, CAP_NOETHER);

    // Distinct normal subobjects per object, deduplicated by image.
    let nobj = ws.catalog.objects.len();
    let mut subs: Vec<Vec<usize>> = vec![Vec::new(); nobj];
    let mut seen: std::collections::BTreeSet<(usize, Vec<usize>)> = std::collections::BTreeSet::new();
    for (i, t) in traits.iter().enumerate() {
        if !t.normal_mono {
            continue;
        }
        let mut image = ws.catalog.morphisms[i].map.clone();
        image.sort_unstable();
        let ci = ws.catalog.cod_index(i);
        if seen.insert((ci, image)) {
            subs[ci].push(i);
        }
    }

    'outer: for ai in 0..nobj {
        for &mi in &subs[ai] {
            for &ni in &subs[ai] {
                let m = &ws.catalog.morphisms[mi];
                let n = &ws.catalog.morphisms[ni];
                // n must factor through m; skip non-nested pairs.
                if factor_through_mono(b, n, m).is_none() {
                    rec.gate();
                    continue;
                }
                if !rec.admit() {
                    break 'outer;
                }
                // In anchored backends the intermediate mono M/N-side cokernel
                // may not exist; those pairs are outside the theorem's scope.
                let rep = match ops::noether_third(b, m, n) {
                    Ok(rep) => rep,
                    Err(crate::core::Error::Unsupported(_)) => {
                        rec.gate();
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                if !rep.holds() {
                    rec.fail(
                        format!("M = {}, N = {}", label(ws, mi), label(ws, ni)),
                        format!(
                            "φ normal mono = {}, φ = ker ψ: {}, comparison iso: {}",
                            rep.phi_is_normal_mono, rep.phi_is_kernel_of_psi, rep.iso_is_iso
                        ),
                    );
                }
            }
        }
    }
    Ok(rec.finish(Law::Noether))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::BackendTag;

    #[test]
    fn pset_suite_axioms_pass_stability_fails() {
        let ws = crate::backends::workspace_for(&BackendTag::PSet).unwrap();
        let fs = run_law(&ws, Law::FsAxioms, RunMode::Exhaustive).unwrap();
        assert_eq!(fs.verdict, Verdict::Pass, "{:?}", fs.witnesses);
        let st = run_law(&ws, Law::Stability, RunMode::Exhaustive).unwrap();
        assert_eq!(st.verdict, Verdict::Fail);
        assert!(!st.witnesses.is_empty());
        let sm = run_law(&ws, Law::StabilityMono, RunMode::Exhaustive).unwrap();
        assert_eq!(sm.verdict, Verdict::Pass, "{:?}", sm.witnesses);
    }

    #[test]
    fn pset_trivial_class_and_tker_char_pass() {
        let ws = crate::backends::workspace_for(&BackendTag::PSet).unwrap();
        for law in [Law::TrivialClass, Law::TkerChar, Law::KernelStability] {
            let rep = run_law(&ws, law, RunMode::Exhaustive).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "{law}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let ws = crate::backends::workspace_for(&BackendTag::PSet).unwrap();
        let mode = RunMode::Sampled { seed: 11 };
        let a = run_law(&ws, Law::Stability, mode).unwrap();
        let b = run_law(&ws, Law::Stability, mode).unwrap();
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.witnesses, b.witnesses);
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn suite_report_shape() {
        let ws = crate::backends::workspace_for(&BackendTag::PSet).unwrap();
        let rep = run_suite(
            &ws,
            &[Law::TrivialClass, Law::CrossValidation],
            RunMode::Exhaustive,
        )
        .unwrap();
        assert_eq!(rep.schema_version, crate::engine::report::SCHEMA_VERSION);
        assert_eq!(rep.laws.len(), 2);
        assert_eq!(rep.catalog_objects, ws.catalog.objects.len());
        assert!(rep.law(Law::CrossValidation).is_some());
    }
}
