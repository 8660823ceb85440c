//! Finite sets carrying a reflexive, preordered, or equivalence relation,
//! with relation-preserving maps. The trivial class is the discrete objects
//! (relation = diagonal), which is mono-coreflective: the counit forgets all
//! off-diagonal pairs.
//!
//! The catalog is exhaustive: every labeled relation of the backend's kind on
//! carriers of size 0 through 3.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::backends::HOM_BUDGET;
use crate::closure::{preorder_closure, smallest_equivalence, Congruence, CongruenceKind};
use crate::core::{
    Backend, BackendTag, Catalog, CokernelData, Coreflection, Error, Mor, Obj, ProductData,
    QuotientData, RelKind, Result, Structure,
};

type PairSet = BTreeSet<(usize, usize)>;

fn relation_parts(o: &Obj) -> Result<(RelKind, &PairSet)> {
    match &o.structure {
        Structure::Relation { kind, pairs } => Ok((*kind, pairs)),
        _ => Err(Error::InvalidObject(
            "expected a relation-structured object".into(),
        )),
    }
}

fn is_symmetric(pairs: &PairSet) -> bool {
    pairs.iter().all(|&(a, b)| pairs.contains(&(b, a)))
}

fn is_transitive(pairs: &PairSet) -> bool {
    pairs
        .iter()
        .all(|&(a, b)| pairs.iter().all(|&(c, d)| c != b || pairs.contains(&(a, d))))
}

/// Close a pair set (assumed to contain whatever seeds matter) into the
/// smallest relation of the given kind on `0..n` containing it.
fn kind_closure(kind: RelKind, n: usize, seed: &PairSet) -> PairSet {
    let seed_vec: Vec<(usize, usize)> = seed.iter().copied().collect();
    match kind {
        RelKind::Reflexive => {
            let mut pairs = seed.clone();
            pairs.extend((0..n).map(|i| (i, i)));
            pairs
        }
        RelKind::Preorder => preorder_closure(n, &seed_vec).pairs,
        RelKind::Equivalence => smallest_equivalence(n, &seed_vec).pairs,
    }
}

pub struct RelBackend {
    kind: RelKind,
}

impl RelBackend {
    pub fn new(kind: RelKind) -> Self {
        RelBackend { kind }
    }

    fn obj(&self, n: usize, pairs: PairSet) -> Arc<Obj> {
        Arc::new(Obj {
            backend: BackendTag::Rel(self.kind),
            size: n,
            structure: Structure::Relation {
                kind: self.kind,
                pairs,
            },
        })
    }
}

impl Backend for RelBackend {
    fn tag(&self) -> BackendTag {
        BackendTag::Rel(self.kind)
    }

    fn validate_object(&self, x: &Obj) -> Result<()> {
        if x.backend != self.tag() {
            return Err(Error::InvalidObject(format!(
                "object tagged {} in backend {}",
                x.backend,
                self.tag()
            )));
        }
        let (kind, pairs) = relation_parts(x)?;
        if kind != self.kind {
            return Err(Error::InvalidObject(
                "relation kind disagrees with the backend".into(),
            ));
        }
        let n = x.size;
        if pairs.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidObject("relation pair outside carrier".into()));
        }
        if !(0..n).all(|i| pairs.contains(&(i, i))) {
            return Err(Error::InvalidObject("relation is not reflexive".into()));
        }
        match self.kind {
            RelKind::Reflexive => {}
            RelKind::Preorder => {
                if !is_transitive(pairs) {
                    return Err(Error::InvalidObject("relation is not transitive".into()));
                }
            }
            RelKind::Equivalence => {
                if !is_symmetric(pairs) {
                    return Err(Error::InvalidObject("relation is not symmetric".into()));
                }
                if !is_transitive(pairs) {
                    return Err(Error::InvalidObject("relation is not transitive".into()));
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
        let (_, dp) = relation_parts(&f.dom)?;
        let (_, cp) = relation_parts(&f.cod)?;
        for &(a, b) in dp {
            if !cp.contains(&(f.map[a], f.map[b])) {
                return Err(Error::InvalidMorphism(format!(
                    "relation not preserved at ({a}, {b})"
                )));
            }
        }
        Ok(())
    }

    fn is_trivial(&self, x: &Obj) -> bool {
        match relation_parts(x) {
            Ok((_, pairs)) => pairs.iter().all(|&(a, b)| a == b),
            Err(_) => false,
        }
    }

    fn coreflection(&self, b: &Arc<Obj>) -> Coreflection {
        let discrete = self.obj(b.size, (0..b.size).map(|i| (i, i)).collect());
        Coreflection {
            counit: Mor::new(discrete, b.clone(), (0..b.size).collect()),
        }
    }

    fn trivial_map_char(&self, f: &Mor) -> Option<bool> {
        // A map factors through a discrete object exactly when it collapses
        // every related pair of its domain.
        let (_, dp) = relation_parts(&f.dom).ok()?;
        Some(dp.iter().all(|&(a, b)| f.map[a] == f.map[b]))
    }

    fn product(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> Result<ProductData> {
        let (_, pa) = relation_parts(a)?;
        let (_, pb) = relation_parts(b)?;
        let (na, nb) = (a.size, b.size);
        let mut pairs = PairSet::new();
        for &(p, q) in pa {
            for &(r, s) in pb {
                pairs.insert((p * nb + r, q * nb + s));
            }
        }
        let obj = self.obj(na * nb, pairs);
        let left = Mor::new(obj.clone(), a.clone(), (0..na * nb).map(|x| x / nb).collect());
        let right = Mor::new(obj.clone(), b.clone(), (0..na * nb).map(|x| x % nb).collect());
        Ok(ProductData { obj, left, right })
    }

    fn substructure(&self, x: &Arc<Obj>, subset: &[usize]) -> Result<Mor> {
        let (_, pairs) = relation_parts(x)?;
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if subset.iter().any(|&v| v >= x.size) {
            return Err(Error::InvalidInput("subset element outside carrier".into()));
        }
        let pos = |v: usize| subset.binary_search(&v).ok();
        let sub_pairs: PairSet = pairs
            .iter()
            .filter_map(|&(a, b)| Some((pos(a)?, pos(b)?)))
            .collect();
        let obj = self.obj(subset.len(), sub_pairs);
        Ok(Mor::new(obj, x.clone(), subset))
    }

    fn congruence_kind(&self) -> CongruenceKind {
        CongruenceKind::Equivalence
    }

    fn smallest_congruence(&self, x: &Obj, seed: &[(usize, usize)]) -> Congruence {
        smallest_equivalence(x.size, seed)
    }

    fn quotient(&self, x: &Arc<Obj>, c: &Congruence) -> Result<QuotientData> {
        if c.carrier_size != x.size {
            return Err(Error::Mismatch("congruence carrier size".into()));
        }
        let (_, pairs) = relation_parts(x)?;
        let part = c.partition();
        let qn = part.len();
        let image: PairSet = pairs
            .iter()
            .map(|&(a, b)| (part.class_of[a], part.class_of[b]))
            .collect();
        let qpairs = kind_closure(self.kind, qn, &image);
        let obj = self.obj(qn, qpairs);
        let projection = Mor::new(x.clone(), obj.clone(), part.class_of.clone());
        Ok(QuotientData {
            obj,
            projection,
            class_of: part.class_of,
        })
    }

    fn cokernel(&self, f: &Mor) -> Result<CokernelData> {
        self.validate_morphism(f)?;
        let (_, dp) = relation_parts(&f.dom)?;
        let seeds: Vec<(usize, usize)> = dp.iter().map(|&(a, b)| (f.map[a], f.map[b])).collect();
        let congruence = smallest_equivalence(f.cod.size, &seeds);
        let data = self.quotient(&f.cod, &congruence)?;
        Ok(CokernelData {
            q: data.projection,
            congruence,
        })
    }

    fn kernel_direct(&self, f: &Mor) -> Option<Mor> {
        let (_, dp) = relation_parts(&f.dom).ok()?;
        let pairs: PairSet = dp
            .iter()
            .filter(|&&(a, b)| f.map[a] == f.map[b])
            .copied()
            .collect();
        let obj = self.obj(f.dom.size, pairs);
        Some(Mor::new(obj, f.dom.clone(), (0..f.dom.size).collect()))
    }

    fn epis_are_surjections(&self) -> bool {
        true
    }

    fn normal_epi_char(&self, f: &Mor) -> Option<bool> {
        // f is the cokernel of its own kernel exactly when it is surjective,
        // its fibres are generated by related identified pairs, and the
        // codomain relation is the closure of the image relation.
        let (_, dp) = relation_parts(&f.dom).ok()?;
        let (_, cp) = relation_parts(&f.cod).ok()?;
        if !f.is_surjective() {
            return Some(false);
        }
        let related_identified: Vec<(usize, usize)> = dp
            .iter()
            .filter(|&&(a, b)| f.map[a] == f.map[b])
            .copied()
            .collect();
        let generated = smallest_equivalence(f.dom.size, &related_identified);
        let fibres_generated = (0..f.dom.size).all(|a| {
            (0..f.dom.size).all(|b| f.map[a] != f.map[b] || generated.relates(a, b))
        });
        let image: PairSet = dp.iter().map(|&(a, b)| (f.map[a], f.map[b])).collect();
        let codomain_matches = kind_closure(self.kind, f.cod.size, &image) == *cp;
        Some(fibres_generated && codomain_matches)
    }

    fn enumerate_homs(&self, x: &Arc<Obj>, y: &Arc<Obj>, budget: usize) -> Option<Vec<Mor>> {
        let (_, dp) = relation_parts(x).ok()?;
        let (_, cp) = relation_parts(y).ok()?;
        if x.size == 0 {
            return Some(vec![Mor::new(x.clone(), y.clone(), Vec::new())]);
        }
        let candidates = (y.size as u128).checked_pow(x.size as u32)?;
        if candidates > budget as u128 {
            return None;
        }
        let mut out = Vec::new();
        let mut map = vec![0usize; x.size];
        if y.size == 0 {
            return Some(out);
        }
        loop {
            if dp
                .iter()
                .all(|&(a, b)| cp.contains(&(map[a], map[b])))
            {
                out.push(Mor::new(x.clone(), y.clone(), map.clone()));
            }
            let mut pos = map.len();
            loop {
                if pos == 0 {
                    return Some(out);
                }
                pos -= 1;
                map[pos] += 1;
                if map[pos] < y.size {
                    break;
                }
                map[pos] = 0;
            }
        }
    }

    fn catalog(&self) -> Catalog {
        let mut objects = Vec::new();
        for n in 0..=3usize {
            let cells: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j)
                .collect();
            for mask in 0..(1u64 << cells.len()) {
                let mut pairs: PairSet = (0..n).map(|i| (i, i)).collect();
                for (bit, &cell) in cells.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        pairs.insert(cell);
                    }
                }
                let ok = match self.kind {
                    RelKind::Reflexive => true,
                    RelKind::Preorder => is_transitive(&pairs),
                    RelKind::Equivalence => is_symmetric(&pairs) && is_transitive(&pairs),
                };
                if ok {
                    objects.push(self.obj(n, pairs));
                }
            }
        }
        Catalog::build(self, objects, HOM_BUDGET).expect("catalog assembly is deterministic")
    }
}

/// The four-element preorder whose canonical factorisation escapes the
/// trivial-kernel class, together with the two-element codiscrete target and
/// the collapsing map between them. Exposed for demos and direct checks; it
/// sits outside the exhaustive size-3 catalog.
pub fn preorder_factorisation_counterexample() -> (Arc<Obj>, Arc<Obj>, Mor) {
    let b = RelBackend::new(RelKind::Preorder);
    let x = b.obj(
        4,
        [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (2, 1), (2, 3)]
            .into_iter()
            .collect(),
    );
    let y = b.obj(2, [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().collect());
    let f = Mor::new(x.clone(), y.clone(), vec![0, 1, 1, 0]);
    (x, y, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts_are_exhaustive() {
        assert_eq!(RelBackend::new(RelKind::Reflexive).catalog().objects.len(), 70);
        assert_eq!(RelBackend::new(RelKind::Preorder).catalog().objects.len(), 35);
        assert_eq!(
            RelBackend::new(RelKind::Equivalence).catalog().objects.len(),
            9
        );
    }

    #[test]
    fn coreflection_discretizes() {
        let b = RelBackend::new(RelKind::Preorder);
        let x = b.obj(2, [(0, 0), (1, 1), (0, 1)].into_iter().collect());
        let c = b.coreflection(&x);
        assert!(b.is_trivial(c.obj()));
        assert!(c.counit.is_injective());
        b.validate_morphism(&c.counit).unwrap();
    }

    #[test]
    fn trivial_map_char_collapses_related_pairs() {
        let b = RelBackend::new(RelKind::Preorder);
        let x = b.obj(2, [(0, 0), (1, 1), (0, 1)].into_iter().collect());
        let d2 = b.obj(2, [(0, 0), (1, 1)].into_iter().collect());
        let collapse = Mor::new(x.clone(), d2.clone(), vec![0, 0]);
        let embed = Mor::new(d2.clone(), x.clone(), vec![0, 1]);
        assert_eq!(b.trivial_map_char(&collapse), Some(true));
        assert_eq!(b.trivial_map_char(&embed), Some(true));
        let id = Mor::new(x.clone(), x.clone(), vec![0, 1]);
        assert_eq!(b.trivial_map_char(&id), Some(false));
    }

    #[test]
    fn quotient_closes_by_kind() {
        // Collapsing the middle of a three-chain leaves a two-chain; the
        // image relation is already transitive. Collapsing the ends of the
        // chain 0 <= 1, 1 <= 2 forces closure to add nothing new for
        // preorders but must re-close for equivalences.
        let b = RelBackend::new(RelKind::Preorder);
        let chain = b.obj(
            3,
            [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]
                .into_iter()
                .collect(),
        );
        let c = b.smallest_congruence(&chain, &[(0, 2)]);
        let q = b.quotient(&chain, &c).unwrap();
        // Classes {0,2} and {1}: 0 <= 1 and 1 <= 0 both appear in the image,
        // so the quotient preorder is codiscrete.
        assert_eq!(q.obj.size, 2);
        let (_, qp) = relation_parts(&q.obj).unwrap();
        assert_eq!(qp.len(), 4);
    }

    #[test]
    fn cokernel_collapses_the_image_relation() {
        let b = RelBackend::new(RelKind::Equivalence);
        let paired = b.obj(2, [(0, 0), (1, 1), (0, 1), (1, 0)].into_iter().collect());
        let three = b.obj(
            3,
            [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)].into_iter().collect(),
        );
        let f = Mor::new(paired.clone(), three.clone(), vec![0, 1]);
        let ck = b.cokernel(&f).unwrap();
        assert_eq!(ck.q.cod.size, 2);
        assert_eq!(ck.q.map, vec![0, 0, 1]);
    }

    #[test]
    fn kernel_direct_restricts_to_identified_pairs() {
        let (x, _, f) = preorder_factorisation_counterexample();
        let b = RelBackend::new(RelKind::Preorder);
        let k = b.kernel_direct(&f).unwrap();
        b.validate_morphism(&k).unwrap();
        assert_eq!(k.dom.size, x.size);
        let (_, kp) = relation_parts(&k.dom).unwrap();
        let expected: PairSet = [(0, 0), (1, 1), (2, 2), (3, 3), (2, 1)].into_iter().collect();
        assert_eq!(*kp, expected);
    }

    #[test]
    fn normal_epi_char_spot_checks() {
        let b = RelBackend::new(RelKind::Preorder);
        let chain = b.obj(2, [(0, 0), (1, 1), (0, 1)].into_iter().collect());
        let point = b.obj(1, [(0, 0)].into_iter().collect());
        let collapse = Mor::new(chain.clone(), point, vec![0, 0]);
        // Collapsing a related pair is a cokernel (of the kernel inclusion).
        assert_eq!(b.normal_epi_char(&collapse), Some(true));
        // The counterexample map is epi but not normal: the fibre {0, 3}
        // is not generated by related identified pairs.
        let (_, _, f) = preorder_factorisation_counterexample();
        assert_eq!(b.normal_epi_char(&f), Some(false));
        // A bijective map onto a coarser relation is epi + mono, not normal
        // epi, because the codomain relation is not the image closure.
        let disc = b.obj(2, [(0, 0), (1, 1)].into_iter().collect());
        let relax = Mor::new(disc, chain, vec![0, 1]);
        assert_eq!(b.normal_epi_char(&relax), Some(false));
    }

    #[test]
    fn hom_enumeration_counts() {
        let b = RelBackend::new(RelKind::Preorder);
        let chain = b.obj(2, [(0, 0), (1, 1), (0, 1)].into_iter().collect());
        let disc = b.obj(2, [(0, 0), (1, 1)].into_iter().collect());
        // disc -> chain: all four maps preserve the diagonal.
        assert_eq!(b.enumerate_homs(&disc, &chain, 100).unwrap().len(), 4);
        // chain -> disc: only the two constants collapse 0 <= 1.
        assert_eq!(b.enumerate_homs(&chain, &disc, 100).unwrap().len(), 2);
        // Empty domain: exactly one (empty) map.
        let empty = b.obj(0, PairSet::new());
        assert_eq!(b.enumerate_homs(&empty, &chain, 100).unwrap().len(), 1);
        assert_eq!(b.enumerate_homs(&chain, &empty, 100).unwrap().len(), 0);
    }
}
