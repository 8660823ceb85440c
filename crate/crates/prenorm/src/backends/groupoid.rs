//! Finite groupoids in single-sorted form: the carrier is the arrow set,
//! objects appear as their identity arrows, and functors are arrow maps.
//! The trivial class is the discrete groupoids (identity arrows only), with
//! the identity-arrow subgroupoid as coreflection.
//!
//! Quotients are computed from the arrow congruence produced by
//! `groupoid_congruence`; composition in the quotient is located through
//! directly composable representatives or through connectors (members of
//! identity classes). When no connector exists the finite quotient does not
//! present the coequalizer — the true colimit has infinitely many arrows —
//! and the operation reports `Unsupported`.

use std::sync::Arc;

use crate::backends::monoid::group_inverses;
use crate::backends::HOM_BUDGET;
use crate::closure::{groupoid_congruence, Congruence, CongruenceKind, GroupoidView};
use crate::core::{
    Backend, BackendTag, Catalog, CokernelData, Coreflection, Error, Mor, Obj, ProductData,
    QuotientData, Result, Structure,
};

fn view(o: &Obj) -> Result<GroupoidView<'_>> {
    match &o.structure {
        Structure::Groupoid {
            src,
            tgt,
            inv,
            comp,
        } => Ok(GroupoidView {
            n: o.size,
            src,
            tgt,
            inv,
            comp,
        }),
        _ => Err(Error::InvalidObject(
            "expected a groupoid-structured object".into(),
        )),
    }
}

pub struct GrpdBackend;

impl GrpdBackend {
    fn obj(
        &self,
        src: Vec<usize>,
        tgt: Vec<usize>,
        inv: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> Arc<Obj> {
        let n = src.len();
        Arc::new(Obj {
            backend: BackendTag::Grpd,
            size: n,
            structure: Structure::Groupoid {
                src,
                tgt,
                inv,
                comp,
            },
        })
    }

    /// n isolated objects: identity arrows only.
    pub fn discrete(&self, n: usize) -> Arc<Obj> {
        let comp = (0..n)
            .flat_map(|i| (0..n).map(move |j| if i == j { Some(i) } else { None }))
            .collect();
        self.obj((0..n).collect(), (0..n).collect(), (0..n).collect(), comp)
    }

    /// n objects with exactly one arrow in each direction between any two.
    pub fn codiscrete(&self, n: usize) -> Arc<Obj> {
        let arrows = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut src = vec![0; arrows];
        let mut tgt = vec![0; arrows];
        let mut inv = vec![0; arrows];
        let mut comp = vec![None; arrows * arrows];
        for i in 0..n {
            for j in 0..n {
                src[idx(i, j)] = idx(i, i);
                tgt[idx(i, j)] = idx(j, j);
                inv[idx(i, j)] = idx(j, i);
                for l in 0..n {
                    comp[idx(i, j) * arrows + idx(j, l)] = Some(idx(i, l));
                }
            }
        }
        self.obj(src, tgt, inv, comp)
    }

    /// One object whose arrows form the given group table (unit 0).
    pub fn group_groupoid(&self, n: usize, table: &[usize]) -> Arc<Obj> {
        let inv = group_inverses(n, 0, table).expect("table must be a group");
        let comp = (0..n)
            .flat_map(|a| (0..n).map(move |b| Some(table[a * n + b])))
            .collect();
        self.obj(vec![0; n], vec![0; n], inv, comp)
    }
}

impl Backend for GrpdBackend {
    fn tag(&self) -> BackendTag {
        BackendTag::Grpd
    }

    fn validate_object(&self, x: &Obj) -> Result<()> {
        if x.backend != BackendTag::Grpd {
            return Err(Error::InvalidObject(format!(
                "object tagged {} in backend fin-grpd",
                x.backend
            )));
        }
        let g = view(x)?;
        let n = g.n;
        if g.src.len() != n || g.tgt.len() != n || g.inv.len() != n || g.comp.len() != n * n {
            return Err(Error::InvalidObject("groupoid table sizes disagree".into()));
        }
        if g.src.iter().chain(g.tgt).chain(g.inv).any(|&v| v >= n) {
            return Err(Error::InvalidObject("arrow index outside carrier".into()));
        }
        for a in 0..n {
            if (g.src[a] == a) != (g.tgt[a] == a) {
                return Err(Error::InvalidObject(format!(
                    "arrow {a} is self-sourced xor self-targeted"
                )));
            }
            if !g.is_identity(g.src[a]) || !g.is_identity(g.tgt[a]) {
                return Err(Error::InvalidObject(format!(
                    "endpoints of arrow {a} are not identity arrows"
                )));
            }
            if g.compose(g.src[a], a) != Some(a) || g.compose(a, g.tgt[a]) != Some(a) {
                return Err(Error::InvalidObject(format!(
                    "identity law fails at arrow {a}"
                )));
            }
            if g.inv[g.inv[a]] != a
                || g.src[g.inv[a]] != g.tgt[a]
                || g.tgt[g.inv[a]] != g.src[a]
                || g.compose(a, g.inv[a]) != Some(g.src[a])
                || g.compose(g.inv[a], a) != Some(g.tgt[a])
            {
                return Err(Error::InvalidObject(format!(
                    "inverse laws fail at arrow {a}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                match g.compose(a, b) {
                    Some(c) => {
                        if g.tgt[a] != g.src[b] {
                            return Err(Error::InvalidObject(format!(
                                "composite defined for non-composable ({a}, {b})"
                            )));
                        }
                        if g.src[c] != g.src[a] || g.tgt[c] != g.tgt[b] {
                            return Err(Error::InvalidObject(format!(
                                "composite endpoints wrong at ({a}, {b})"
                            )));
                        }
                    }
                    None => {
                        if g.tgt[a] == g.src[b] {
                            return Err(Error::InvalidObject(format!(
                                "missing composite for composable ({a}, {b})"
                            )));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if g.tgt[a] != g.src[b] {
                    continue;
                }
                for c in 0..n {
                    if g.tgt[b] != g.src[c] {
                        continue;
                    }
                    let left = g.compose(a, b).and_then(|ab| g.compose(ab, c));
                    let right = g.compose(b, c).and_then(|bc| g.compose(a, bc));
                    if left != right {
                        return Err(Error::InvalidObject(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_morphism(&self, f: &Mor) -> Result<()> {
        self.validate_object(&f.dom)?;
        self.validate_object(&f.cod)?;
        if f.map.len() != f.dom.size {
            return Err(Error::InvalidMorphism("map length != domain size".into()));
        }
        if f.map.iter().any(|&v| v >= f.cod.size) {
            return Err(Error::InvalidMorphism("map value outside codomain".into()));
        }
        let d = view(&f.dom)?;
        let c = view(&f.cod)?;
        for a in 0..d.n {
            if f.map[d.src[a]] != c.src[f.map[a]] || f.map[d.tgt[a]] != c.tgt[f.map[a]] {
                return Err(Error::InvalidMorphism(format!(
                    "endpoints not preserved at arrow {a}"
                )));
            }
        }
        for a in 0..d.n {
            for b in 0..d.n {
                if let Some(ab) = d.compose(a, b) {
                    if c.compose(f.map[a], f.map[b]) != Some(f.map[ab]) {
                        return Err(Error::InvalidMorphism(format!(
                            "composition not preserved at ({a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn is_trivial(&self, x: &Obj) -> bool {
        match view(x) {
            Ok(g) => (0..g.n).all(|a| g.is_identity(a)),
            Err(_) => false,
        }
    }

    fn coreflection(&self, b: &Arc<Obj>) -> Coreflection {
        let g = view(b).expect("groupoid object");
        let identities = g.identities();
        let counit = self
            .substructure(b, &identities)
            .expect("identity arrows form a subgroupoid");
        Coreflection { counit }
    }

    fn trivial_map_char(&self, f: &Mor) -> Option<bool> {
        let c = view(&f.cod).ok()?;
        Some(f.map.iter().all(|&v| c.is_identity(v)))
    }

    fn product(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> Result<ProductData> {
        let ga = view(a)?;
        let gb = view(b)?;
        let (na, nb) = (ga.n, gb.n);
        let n = na * nb;
        let idx = |p: usize, q: usize| p * nb + q;
        let mut src = vec![0; n];
        let mut tgt = vec![0; n];
        let mut inv = vec![0; n];
        let mut comp = vec![None; n * n];
        for p in 0..na {
            for q in 0..nb {
                src[idx(p, q)] = idx(ga.src[p], gb.src[q]);
                tgt[idx(p, q)] = idx(ga.tgt[p], gb.tgt[q]);
                inv[idx(p, q)] = idx(ga.inv[p], gb.inv[q]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                if let (Some(ca), Some(cb)) = (ga.compose(xa, ya), gb.compose(xb, yb)) {
                    comp[x * n + y] = Some(idx(ca, cb));
                }
            }
        }
        let obj = self.obj(src, tgt, inv, comp);
        let left = Mor::new(obj.clone(), a.clone(), (0..n).map(|x| x / nb).collect());
        let right = Mor::new(obj.clone(), b.clone(), (0..n).map(|x| x % nb).collect());
        Ok(ProductData { obj, left, right })
    }

    fn substructure(&self, x: &Arc<Obj>, subset: &[usize]) -> Result<Mor> {
        let g = view(x)?;
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if subset.iter().any(|&v| v >= g.n) {
            return Err(Error::InvalidInput("subset element outside carrier".into()));
        }
        let pos = |v: usize| {
            subset
                .binary_search(&v)
                .map_err(|_| Error::InvalidInput(format!("subset not closed: arrow {v} missing")))
        };
        let k = subset.len();
        let mut src = vec![0; k];
        let mut tgt = vec![0; k];
        let mut inv = vec![0; k];
        let mut comp = vec![None; k * k];
        for (i, &a) in subset.iter().enumerate() {
            src[i] = pos(g.src[a])?;
            tgt[i] = pos(g.tgt[a])?;
            inv[i] = pos(g.inv[a])?;
        }
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                if let Some(c) = g.compose(a, b) {
                    comp[i * k + j] = Some(pos(c)?);
                }
            }
        }
        let obj = self.obj(src, tgt, inv, comp);
        Ok(Mor::new(obj, x.clone(), subset))
    }

    fn congruence_kind(&self) -> CongruenceKind {
        CongruenceKind::Groupoid
    }

    fn smallest_congruence(&self, x: &Obj, seed: &[(usize, usize)]) -> Congruence {
        let g = view(x).expect("groupoid object");
        groupoid_congruence(g, seed)
    }

    fn quotient(&self, x: &Arc<Obj>, c: &Congruence) -> Result<QuotientData> {
        if c.carrier_size != x.size {
            return Err(Error::Mismatch("congruence carrier size".into()));
        }
        let g = view(x)?;
        let part = c.partition();
        let qn = part.len();
        let class_of = &part.class_of;
        // Arrow endpoints must be well-defined on classes.
        let mut src = vec![usize::MAX; qn];
        let mut tgt = vec![usize::MAX; qn];
        let mut inv = vec![usize::MAX; qn];
        for (cls, members) in part.members.iter().enumerate() {
            for &a in members {
                for (slot, value) in [
                    (&mut src[cls], class_of[g.src[a]]),
                    (&mut tgt[cls], class_of[g.tgt[a]]),
                    (&mut inv[cls], class_of[g.inv[a]]),
                ] {
                    if *slot == usize::MAX {
                        *slot = value;
                    } else if *slot != value {
                        return Err(Error::Unsupported(
                            "arrow congruence does not define a finite quotient groupoid".into(),
                        ));
                    }
                }
            }
        }
        // Identity classes are the candidate connectors.
        let is_identity_class: Vec<bool> = part
            .members
            .iter()
            .map(|members| members.iter().any(|&a| g.is_identity(a)))
            .collect();
        let mut comp = vec![None; qn * qn];
        for a_cls in 0..qn {
            for b_cls in 0..qn {
                if tgt[a_cls] != src[b_cls] {
                    continue;
                }
                let mut value: Option<usize> = None;
                // Directly composable representatives first, then composites
                // threaded through a connector in an identity class.
                for &a in &part.members[a_cls] {
                    for &b in &part.members[b_cls] {
                        let candidates: Vec<usize> = if g.tgt[a] == g.src[b] {
                            g.compose(a, b).into_iter().collect()
                        } else {
                            (0..g.n)
                                .filter(|&k| {
                                    is_identity_class[class_of[k]]
                                        && g.src[k] == g.tgt[a]
                                        && g.tgt[k] == g.src[b]
                                })
                                .filter_map(|k| {
                                    g.compose(a, k).and_then(|ak| g.compose(ak, b))
                                })
                                .collect()
                        };
                        for cand in candidates {
                            let cls = class_of[cand];
                            match value {
                                None => value = Some(cls),
                                Some(v) if v != cls => {
                                    return Err(Error::CongruenceInvalid {
                                        reason: "quotient composition is not well-defined".into(),
                                        a,
                                        b,
                                        c: cand,
                                    })
                                }
                                _ => {}
                            }
                        }
                    }
                }
                match value {
                    Some(v) => comp[a_cls * qn + b_cls] = Some(v),
                    None => {
                        return Err(Error::Unsupported(
                            "no connector realises a required quotient composite; the \
                             coequalizer is not a finite groupoid quotient"
                                .into(),
                        ))
                    }
                }
            }
        }
        let obj = self.obj(src, tgt, inv, comp);
        self.validate_object(&obj)?;
        let projection = Mor::new(x.clone(), obj.clone(), class_of.clone());
        Ok(QuotientData {
            obj,
            projection,
            class_of: class_of.clone(),
        })
    }

    fn cokernel(&self, f: &Mor) -> Result<CokernelData> {
        self.validate_morphism(f)?;
        let c = view(&f.cod)?;
        let seeds: Vec<(usize, usize)> = f.map.iter().map(|&v| (v, c.src[v])).collect();
        let congruence = groupoid_congruence(c, &seeds);
        let data = self.quotient(&f.cod, &congruence)?;
        Ok(CokernelData {
            q: data.projection,
            congruence,
        })
    }

    fn kernel_direct(&self, f: &Mor) -> Option<Mor> {
        let c = view(&f.cod).ok()?;
        let subset: Vec<usize> = (0..f.dom.size)
            .filter(|&a| c.is_identity(f.map[a]))
            .collect();
        self.substructure(&f.dom, &subset).ok()
    }

    fn normal_epi_char(&self, f: &Mor) -> Option<bool> {
        let d = view(&f.dom).ok()?;
        let c = view(&f.cod).ok()?;
        if !f.is_surjective() {
            return Some(false);
        }
        // For every pair of arrows with the same image there must be
        // kernel-class arrows u, u' aligning them: g · u = u' · g'.
        for g0 in 0..d.n {
            for g1 in 0..d.n {
                if f.map[g0] != f.map[g1] {
                    continue;
                }
                let aligned = (0..d.n).any(|u| {
                    if d.src[u] != d.tgt[g0] || d.tgt[u] != d.tgt[g1] || !c.is_identity(f.map[u]) {
                        return false;
                    }
                    (0..d.n).any(|u2| {
                        d.src[u2] == d.src[g0]
                            && d.tgt[u2] == d.src[g1]
                            && c.is_identity(f.map[u2])
                            && d.compose(g0, u) == d.compose(u2, g1)
                    })
                });
                if !aligned {
                    return Some(false);
                }
            }
        }
        Some(true)
    }

    fn enumerate_homs(&self, x: &Arc<Obj>, y: &Arc<Obj>, budget: usize) -> Option<Vec<Mor>> {
        let d = view(x).ok()?;
        let c = view(y).ok()?;
        if d.n == 0 {
            return Some(vec![Mor::new(x.clone(), y.clone(), Vec::new())]);
        }
        if c.n == 0 {
            return Some(Vec::new());
        }
        // Assign identity arrows first so endpoints are always pinned before
        // the arrows that use them.
        let mut order: Vec<usize> = (0..d.n).filter(|&a| d.is_identity(a)).collect();
        order.extend((0..d.n).filter(|&a| !d.is_identity(a)));
        let rank: Vec<usize> = {
            let mut r = vec![0; d.n];
            for (i, &a) in order.iter().enumerate() {
                r[a] = i;
            }
            r
        };
        let mut map = vec![usize::MAX; d.n];
        let mut nodes = 0usize;
        fn consistent(
            d: &GroupoidView<'_>,
            c: &GroupoidView<'_>,
            map: &[usize],
            rank: &[usize],
            a: usize,
        ) -> bool {
            let v = map[a];
            if rank[d.src[a]] <= rank[a] && map[d.src[a]] != c.src[v] {
                return false;
            }
            if rank[d.tgt[a]] <= rank[a] && map[d.tgt[a]] != c.tgt[v] {
                return false;
            }
            if rank[d.inv[a]] <= rank[a] && c.inv[v] != map[d.inv[a]] {
                return false;
            }
            for b in 0..d.n {
                if rank[b] > rank[a] {
                    continue;
                }
                for (p, q) in [(a, b), (b, a)] {
                    if let Some(r) = d.compose(p, q) {
                        if rank[r] <= rank[a] {
                            if c.compose(map[p], map[q]) != Some(map[r]) {
                                return false;
                            }
                        } else if c.compose(map[p], map[q]).is_none() {
                            return false;
                        }
                    }
                }
            }
            true
        }
        fn search(
            d: &GroupoidView<'_>,
            c: &GroupoidView<'_>,
            order: &[usize],
            rank: &[usize],
            depth: usize,
            map: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            nodes: &mut usize,
            budget: usize,
        ) -> bool {
            if depth == order.len() {
                out.push(map.clone());
                return true;
            }
            let a = order[depth];
            for v in 0..c.n {
                *nodes += 1;
                if *nodes > budget {
                    return false;
                }
                map[a] = v;
                if consistent(d, c, map, rank, a)
                    && !search(d, c, order, rank, depth + 1, map, out, nodes, budget)
                {
                    return false;
                }
            }
            map[a] = usize::MAX;
            true
        }
        let mut raw = Vec::new();
        if !search(
            &d, &c, &order, &rank, 0, &mut map, &mut raw, &mut nodes, budget,
        ) {
            return None;
        }
        Some(
            raw.into_iter()
                .map(|m| Mor::new(x.clone(), y.clone(), m))
                .collect(),
        )
    }

    fn catalog(&self) -> Catalog {
        let z2 = crate::backends::monoid::cyclic_table(2);
        let z3 = crate::backends::monoid::cyclic_table(3);
        let g2 = self.group_groupoid(2, &z2);
        let g3 = self.group_groupoid(3, &z3);
        let interval = self.codiscrete(2);
        let mut objects = vec![
            self.discrete(0),
            self.discrete(1),
            self.discrete(2),
            self.discrete(3),
            g2.clone(),
            g3.clone(),
            interval.clone(),
            self.codiscrete(3),
        ];
        for (a, b) in [(&g2, &g2), (&g2, &g3), (&interval, &g2)] {
            objects.push(self.product(a, b).expect("products of valid groupoids").obj);
        }
        Catalog::build(self, objects, HOM_BUDGET).expect("catalog assembly is deterministic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::monoid::cyclic_table;

    #[test]
    fn constructors_validate() {
        let b = GrpdBackend;
        for o in [
            b.discrete(0),
            b.discrete(3),
            b.codiscrete(2),
            b.codiscrete(3),
            b.group_groupoid(2, &cyclic_table(2)),
            b.group_groupoid(3, &cyclic_table(3)),
        ] {
            b.validate_object(&o).unwrap();
        }
        let p = b
            .product(&b.codiscrete(2), &b.group_groupoid(2, &cyclic_table(2)))
            .unwrap();
        b.validate_object(&p.obj).unwrap();
        b.validate_morphism(&p.left).unwrap();
        b.validate_morphism(&p.right).unwrap();
    }

    #[test]
    fn coreflection_keeps_identities() {
        let b = GrpdBackend;
        let i = b.codiscrete(2);
        let c = b.coreflection(&i);
        assert_eq!(c.obj().size, 2);
        assert!(b.is_trivial(c.obj()));
        b.validate_morphism(&c.counit).unwrap();
    }

    #[test]
    fn collapsing_the_interval_endpoints_is_unsupported() {
        // Coequalizing the two endpoint inclusions of the interval would
        // produce a free loop — an infinite groupoid — so the finite
        // quotient must refuse.
        let b = GrpdBackend;
        let i = b.codiscrete(2);
        // Arrow indices: 0 = id_x, 3 = id_y, 1 = x->y, 2 = y->x.
        let c = b.smallest_congruence(&i, &[(0, 3)]);
        let q = b.quotient(&i, &c);
        assert!(matches!(q, Err(Error::Unsupported(_))));
    }

    #[test]
    fn cokernel_of_full_interval_inclusion_is_a_point() {
        let b = GrpdBackend;
        let i = b.codiscrete(2);
        let id = Mor::new(i.clone(), i.clone(), (0..4).collect());
        let ck = b.cokernel(&id).unwrap();
        assert_eq!(ck.q.cod.size, 1);
    }

    #[test]
    fn cokernel_of_group_kernel_matches_fibres() {
        // Addition (a, b) -> a + b on Z2 x Z2 has kernel the diagonal; the
        // cokernel of the kernel inclusion recovers the addition's fibres.
        let b = GrpdBackend;
        let g2 = b.group_groupoid(2, &cyclic_table(2));
        let p = b.product(&g2, &g2).unwrap();
        let add = Mor::new(p.obj.clone(), g2.clone(), vec![0, 1, 1, 0]);
        b.validate_morphism(&add).unwrap();
        let k = b.kernel_direct(&add).unwrap();
        assert_eq!(k.map, vec![0, 3]);
        let ck = b.cokernel(&k).unwrap();
        assert_eq!(ck.q.cod.size, 2);
        assert_eq!(ck.q.map, add.map);
    }

    #[test]
    fn normal_epi_char_distinguishes_object_collapse() {
        let b = GrpdBackend;
        let disc2 = b.discrete(2);
        let pt = b.discrete(1);
        let i = b.codiscrete(2);
        // Collapsing two isolated objects: strictly surjective but no
        // aligning arrow exists between the objects.
        let collapse_disc = Mor::new(disc2.clone(), pt.clone(), vec![0, 0]);
        assert_eq!(b.normal_epi_char(&collapse_disc), Some(false));
        // Collapsing the interval: the cross arrow aligns the identities.
        let collapse_i = Mor::new(i.clone(), pt.clone(), vec![0, 0, 0, 0]);
        assert_eq!(b.normal_epi_char(&collapse_i), Some(true));
        // Non-surjective functors are never normal epis.
        let point_in = Mor::new(pt.clone(), i.clone(), vec![0]);
        assert_eq!(b.normal_epi_char(&point_in), Some(false));
    }

    #[test]
    fn hom_enumeration_counts() {
        let b = GrpdBackend;
        let g2 = b.group_groupoid(2, &cyclic_table(2));
        let g3 = b.group_groupoid(3, &cyclic_table(3));
        let i = b.codiscrete(2);
        let pt = b.discrete(1);
        // Group homs Z2 -> Z3: only trivial; Z3 -> Z3: three of them.
        assert_eq!(b.enumerate_homs(&g2, &g3, 10_000).unwrap().len(), 1);
        assert_eq!(b.enumerate_homs(&g3, &g3, 10_000).unwrap().len(), 3);
        // Functors I -> G2: pick images of the two cross arrows u, u⁻¹
        // freely as long as they are inverse: 2 choices.
        assert_eq!(b.enumerate_homs(&i, &g2, 10_000).unwrap().len(), 2);
        // Functors G2 -> I: the loop must land on an identity: 2 objects.
        assert_eq!(b.enumerate_homs(&g2, &i, 10_000).unwrap().len(), 2);
        // Everything collapses to the point.
        assert_eq!(b.enumerate_homs(&i, &pt, 10_000).unwrap().len(), 1);
    }

    #[test]
    fn catalog_builds_with_budget() {
        let cat = GrpdBackend.catalog();
        assert_eq!(cat.objects.len(), 11);
        assert!(cat.notes.is_empty(), "hom budget exceeded: {:?}", cat.notes);
    }
}
