//! Finite groups carrying a positive cone: a submonoid closed under
//! conjugation (in the finite case therefore a normal subgroup). Morphisms
//! are group homomorphisms mapping cone into cone. The trivial class is the
//! objects with cone `{e}` — of any carrier size — and the coreflection
//! strips the cone off: `(G, {e}) → (G, M)` on the identity carrier map.
//!
//! A map is trivial exactly when it kills the domain cone, so kernels adjust
//! the cone while keeping the carrier, and cokernels quotient the codomain
//! by the normal closure of the image cone.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::backends::monoid::{
    cyclic_table, group_inverses, monoid_homs, normal_closure, symmetric_table,
    validate_monoid_table,
};
use crate::backends::{product_closure_once, HOM_BUDGET};
use crate::closure::{smallest_monoid_congruence, Congruence, CongruenceKind};
use crate::core::{
    Backend, BackendTag, Catalog, CokernelData, Coreflection, Error, Mor, Obj, ProductData,
    QuotientData, Result, Structure,
};

type ConeSet = BTreeSet<usize>;

fn group_parts(o: &Obj) -> Result<(usize, usize, &[usize], &ConeSet)> {
    match &o.structure {
        Structure::OrderedGroup { unit, table, cone } => {
            Ok((o.size, *unit, table.as_slice(), cone))
        }
        _ => Err(Error::InvalidObject(
            "expected an ordered-group object".into(),
        )),
    }
}

pub struct OrdGrpBackend;

impl OrdGrpBackend {
    pub fn obj(&self, n: usize, table: Vec<usize>, cone: ConeSet) -> Arc<Obj> {
        Arc::new(Obj {
            backend: BackendTag::OrdGrp,
            size: n,
            structure: Structure::OrderedGroup {
                unit: 0,
                table,
                cone,
            },
        })
    }

    /// All valid cones on the given group table: subsets containing the
    /// unit, closed under the operation and under conjugation.
    fn cones(&self, n: usize, table: &[usize]) -> Vec<ConeSet> {
        let inv = group_inverses(n, 0, table).expect("table must be a group");
        let mut out = Vec::new();
        for mask in 0..(1u64 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let in_mask = |v: usize| mask & (1 << v) != 0;
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| in_mask(table[a * n + b])));
            let conj_closed = members.iter().all(|&m| {
                (0..n).all(|g| in_mask(table[table[g * n + m] * n + inv[g]]))
            });
            if closed && conj_closed {
                out.push(members.into_iter().collect());
            }
        }
        out
    }
}

impl Backend for OrdGrpBackend {
    fn tag(&self) -> BackendTag {
        BackendTag::OrdGrp
    }

    fn validate_object(&self, x: &Obj) -> Result<()> {
        if x.backend != BackendTag::OrdGrp {
            return Err(Error::InvalidObject(format!(
                "object tagged {} in backend fin-ordgrp",
                x.backend
            )));
        }
        let (n, unit, table, cone) = group_parts(x)?;
        validate_monoid_table(n, unit, table)?;
        if unit != 0 {
            return Err(Error::InvalidObject("unit must be element 0".into()));
        }
        let Some(inv) = group_inverses(n, unit, table) else {
            return Err(Error::InvalidObject("operation is not a group".into()));
        };
        if cone.iter().any(|&m| m >= n) {
            return Err(Error::InvalidObject("cone element outside carrier".into()));
        }
        if !cone.contains(&unit) {
            return Err(Error::InvalidObject("cone must contain the unit".into()));
        }
        for &a in cone {
            for &b in cone {
                if !cone.contains(&table[a * n + b]) {
                    return Err(Error::InvalidObject(format!(
                        "cone not closed under the operation at ({a}, {b})"
                    )));
                }
            }
            for g in 0..n {
                if !cone.contains(&table[table[g * n + a] * n + inv[g]]) {
                    return Err(Error::InvalidObject(format!(
                        "cone not closed under conjugation at ({g}, {a})"
                    )));
                }
            }
        }
        // A finite submonoid of a group contains inverses automatically.
        debug_assert!(cone.iter().all(|&m| cone.contains(&inv[m])));
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
        let (dn, du, dt, dcone) = group_parts(&f.dom)?;
        let (cn, cu, ct, ccone) = group_parts(&f.cod)?;
        if f.map[du] != cu {
            return Err(Error::InvalidMorphism("unit not preserved".into()));
        }
        for a in 0..dn {
            for b in 0..dn {
                if f.map[dt[a * dn + b]] != ct[f.map[a] * cn + f.map[b]] {
                    return Err(Error::InvalidMorphism(format!(
                        "operation not preserved at ({a}, {b})"
                    )));
                }
            }
        }
        for &m in dcone {
            if !ccone.contains(&f.map[m]) {
                return Err(Error::InvalidMorphism(format!(
                    "cone not preserved at {m}"
                )));
            }
        }
        Ok(())
    }

    fn is_trivial(&self, x: &Obj) -> bool {
        match group_parts(x) {
            Ok((_, unit, _, cone)) => cone.len() == 1 && cone.contains(&unit),
            Err(_) => false,
        }
    }

    fn coreflection(&self, b: &Arc<Obj>) -> Coreflection {
        let (n, unit, table, _) = group_parts(b).expect("ordered-group object");
        let stripped = self.obj(n, table.to_vec(), [unit].into_iter().collect());
        Coreflection {
            counit: Mor::new(stripped, b.clone(), (0..n).collect()),
        }
    }

    fn trivial_map_char(&self, f: &Mor) -> Option<bool> {
        let (_, _, _, dcone) = group_parts(&f.dom).ok()?;
        let (_, cu, _, _) = group_parts(&f.cod).ok()?;
        Some(dcone.iter().all(|&m| f.map[m] == cu))
    }

    fn product(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> Result<ProductData> {
        let (na, _, ta, ca) = group_parts(a)?;
        let (nb, _, tb, cb) = group_parts(b)?;
        let n = na * nb;
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = ta[xa * na + ya] * nb + tb[xb * nb + yb];
            }
        }
        let cone: ConeSet = ca
            .iter()
            .flat_map(|&p| cb.iter().map(move |&q| p * nb + q))
            .collect();
        let obj = self.obj(n, table, cone);
        let left = Mor::new(obj.clone(), a.clone(), (0..n).map(|x| x / nb).collect());
        let right = Mor::new(obj.clone(), b.clone(), (0..n).map(|x| x % nb).collect());
        Ok(ProductData { obj, left, right })
    }

    fn substructure(&self, x: &Arc<Obj>, subset: &[usize]) -> Result<Mor> {
        let (n, unit, table, cone) = group_parts(x)?;
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if subset.iter().any(|&v| v >= n) {
            return Err(Error::InvalidInput("subset element outside carrier".into()));
        }
        if subset.first() != Some(&unit) {
            return Err(Error::InvalidInput("subset must contain the unit".into()));
        }
        let pos = |v: usize| subset.binary_search(&v);
        let k = subset.len();
        let mut sub_table = vec![0usize; k * k];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                match pos(table[a * n + b]) {
                    Ok(p) => sub_table[i * k + j] = p,
                    Err(_) => {
                        return Err(Error::InvalidInput(format!(
                            "subset not closed: {a} · {b} escapes"
                        )))
                    }
                }
            }
        }
        let sub_cone: ConeSet = subset
            .iter()
            .enumerate()
            .filter(|(_, v)| cone.contains(v))
            .map(|(i, _)| i)
            .collect();
        let obj = self.obj(k, sub_table, sub_cone);
        Ok(Mor::new(obj, x.clone(), subset))
    }

    fn congruence_kind(&self) -> CongruenceKind {
        CongruenceKind::Monoid
    }

    fn smallest_congruence(&self, x: &Obj, seed: &[(usize, usize)]) -> Congruence {
        let (n, _, table, _) = group_parts(x).expect("ordered-group object");
        smallest_monoid_congruence(n, table, seed)
    }

    fn quotient(&self, x: &Arc<Obj>, c: &Congruence) -> Result<QuotientData> {
        if c.carrier_size != x.size {
            return Err(Error::Mismatch("congruence carrier size".into()));
        }
        let (n, unit, table, cone) = group_parts(x)?;
        let part = c.partition();
        let qn = part.len();
        let mut qtable = vec![0usize; qn * qn];
        for i in 0..qn {
            for j in 0..qn {
                qtable[i * qn + j] =
                    part.class_of[table[part.members[i][0] * n + part.members[j][0]]];
            }
        }
        for a in 0..n {
            for b in 0..n {
                if part.class_of[table[a * n + b]]
                    != qtable[part.class_of[a] * qn + part.class_of[b]]
                {
                    return Err(Error::CongruenceInvalid {
                        reason: "quotient operation is not well-defined".into(),
                        a,
                        b,
                        c: table[a * n + b],
                    });
                }
            }
        }
        let unit_class = part.class_of[unit];
        let relabel: Vec<usize> = (0..qn)
            .map(|c| {
                if c == unit_class {
                    0
                } else if c < unit_class {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        let mut table2 = vec![0usize; qn * qn];
        for i in 0..qn {
            for j in 0..qn {
                table2[relabel[i] * qn + relabel[j]] = relabel[qtable[i * qn + j]];
            }
        }
        let class_of: Vec<usize> = part.class_of.iter().map(|&c| relabel[c]).collect();
        let qcone: ConeSet = cone.iter().map(|&m| class_of[m]).collect();
        let obj = self.obj(qn, table2, qcone);
        let projection = Mor::new(x.clone(), obj.clone(), class_of.clone());
        Ok(QuotientData {
            obj,
            projection,
            class_of,
        })
    }

    fn cokernel(&self, f: &Mor) -> Result<CokernelData> {
        self.validate_morphism(f)?;
        let (_, _, _, dcone) = group_parts(&f.dom)?;
        let (cn, cu, ct, _) = group_parts(&f.cod)?;
        let image_cone: Vec<usize> = dcone.iter().map(|&m| f.map[m]).collect();
        let killed = normal_closure(cn, ct, cu, &image_cone);
        let seeds: Vec<(usize, usize)> = killed.iter().map(|&k| (k, cu)).collect();
        let congruence = smallest_monoid_congruence(cn, ct, &seeds);
        let data = self.quotient(&f.cod, &congruence)?;
        Ok(CokernelData {
            q: data.projection,
            congruence,
        })
    }

    fn kernel_direct(&self, f: &Mor) -> Option<Mor> {
        let (dn, _, dt, dcone) = group_parts(&f.dom).ok()?;
        let (_, cu, _, _) = group_parts(&f.cod).ok()?;
        let kcone: ConeSet = dcone
            .iter()
            .filter(|&&m| f.map[m] == cu)
            .copied()
            .collect();
        let obj = self.obj(dn, dt.to_vec(), kcone);
        Some(Mor::new(obj, f.dom.clone(), (0..dn).collect()))
    }

    fn epis_are_surjections(&self) -> bool {
        true
    }

    fn normal_epi_char(&self, f: &Mor) -> Option<bool> {
        let (_, _, _, dcone) = group_parts(&f.dom).ok()?;
        let (_, cu, _, ccone) = group_parts(&f.cod).ok()?;
        if !f.is_surjective() {
            return Some(false);
        }
        let image_cone: ConeSet = dcone.iter().map(|&m| f.map[m]).collect();
        let kernel_in_cone = f
            .map
            .iter()
            .enumerate()
            .all(|(a, &v)| v != cu || dcone.contains(&a));
        Some(image_cone == *ccone && kernel_in_cone)
    }

    fn enumerate_homs(&self, x: &Arc<Obj>, y: &Arc<Obj>, budget: usize) -> Option<Vec<Mor>> {
        let (dn, du, dt, dcone) = group_parts(x).ok()?;
        let (cn, cu, ct, ccone) = group_parts(y).ok()?;
        let maps = monoid_homs((dn, du, dt), (cn, cu, ct), budget)?;
        Some(
            maps.into_iter()
                .filter(|map| dcone.iter().all(|&m| ccone.contains(&map[m])))
                .map(|map| Mor::new(x.clone(), y.clone(), map))
                .collect(),
        )
    }

    fn catalog(&self) -> Catalog {
        let mut seeds = Vec::new();
        let v4: Vec<usize> = (0..4)
            .flat_map(|x: usize| (0..4).map(move |y: usize| ((x / 2) ^ (y / 2)) * 2 + ((x % 2) ^ (y % 2))))
            .collect();
        let tables: Vec<(usize, Vec<usize>)> = vec![
            (1, cyclic_table(1)),
            (2, cyclic_table(2)),
            (3, cyclic_table(3)),
            (4, cyclic_table(4)),
            (4, v4),
            (6, symmetric_table(3)),
        ];
        for (n, table) in tables {
            for cone in self.cones(n, &table) {
                seeds.push(self.obj(n, table.clone(), cone));
            }
        }
        let objects = product_closure_once(self, &seeds, 8, |_, _| true);
        Catalog::build(self, objects, HOM_BUDGET).expect("catalog assembly is deterministic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_full() -> Arc<Obj> {
        OrdGrpBackend.obj(4, cyclic_table(4), (0..4).collect())
    }

    fn z2(cone_full: bool) -> Arc<Obj> {
        let cone: ConeSet = if cone_full {
            [0, 1].into_iter().collect()
        } else {
            [0].into_iter().collect()
        };
        OrdGrpBackend.obj(2, cyclic_table(2), cone)
    }

    #[test]
    fn cone_enumeration_matches_normal_subgroups() {
        let b = OrdGrpBackend;
        assert_eq!(b.cones(4, &cyclic_table(4)).len(), 3);
        assert_eq!(b.cones(6, &symmetric_table(3)).len(), 3);
        let v4: Vec<usize> = (0..4)
            .flat_map(|x: usize| {
                (0..4).map(move |y: usize| ((x / 2) ^ (y / 2)) * 2 + ((x % 2) ^ (y % 2)))
            })
            .collect();
        assert_eq!(b.cones(4, &v4).len(), 5);
    }

    #[test]
    fn validation_rejects_non_conjugation_closed_cones() {
        let b = OrdGrpBackend;
        // In S3, the submonoid generated by one transposition is {id, t},
        // which is a subgroup but not normal.
        let bad = b.obj(6, symmetric_table(3), [0, 2].into_iter().collect());
        assert!(b.validate_object(&bad).is_err());
        let good = b.obj(6, symmetric_table(3), [0, 3, 4].into_iter().collect());
        b.validate_object(&good).unwrap();
    }

    #[test]
    fn trivial_objects_and_coreflection() {
        let b = OrdGrpBackend;
        let full = z4_full();
        assert!(!b.is_trivial(&full));
        let c = b.coreflection(&full);
        assert!(b.is_trivial(c.obj()));
        assert_eq!(c.obj().size, 4, "coreflection keeps the carrier");
        b.validate_morphism(&c.counit).unwrap();
    }

    #[test]
    fn kernel_keeps_carrier_and_shrinks_cone() {
        let b = OrdGrpBackend;
        let q = Mor::new(z4_full(), z2(true), vec![0, 1, 0, 1]);
        b.validate_morphism(&q).unwrap();
        let k = b.kernel_direct(&q).unwrap();
        assert_eq!(k.dom.size, 4);
        let (_, _, _, kcone) = group_parts(&k.dom).unwrap();
        assert_eq!(kcone.iter().copied().collect::<Vec<_>>(), vec![0, 2]);
        b.validate_morphism(&k).unwrap();
    }

    #[test]
    fn cokernel_kills_the_image_cone() {
        let b = OrdGrpBackend;
        // Embed (Z2, full) into (Z4, cone {0, 2}) by doubling; the cokernel
        // quotients by {0, 2} and its cone collapses to the unit.
        let dom = z2(true);
        let mid = b.obj(4, cyclic_table(4), [0, 2].into_iter().collect());
        let f = Mor::new(dom, mid.clone(), vec![0, 2]);
        b.validate_morphism(&f).unwrap();
        let ck = b.cokernel(&f).unwrap();
        assert_eq!(ck.q.cod.size, 2);
        assert_eq!(ck.q.map, vec![0, 1, 0, 1]);
        assert!(b.is_trivial(&ck.q.cod));
    }

    #[test]
    fn normal_epi_char_spot_checks() {
        let b = OrdGrpBackend;
        let q_full = Mor::new(z4_full(), z2(true), vec![0, 1, 0, 1]);
        assert_eq!(b.normal_epi_char(&q_full), Some(true));
        // Same carrier map between trivially coned objects: the kernel
        // {0, 2} escapes the cone {0}.
        let q_triv = Mor::new(
            b.obj(4, cyclic_table(4), [0].into_iter().collect()),
            z2(false),
            vec![0, 1, 0, 1],
        );
        assert_eq!(b.normal_epi_char(&q_triv), Some(false));
        // Surjective with matching cones but cone-escaping kernel.
        let half_cone = b.obj(4, cyclic_table(4), [0, 2].into_iter().collect());
        let q_half = Mor::new(half_cone, z2(false), vec![0, 1, 0, 1]);
        b.validate_morphism(&q_half).unwrap();
        assert_eq!(b.normal_epi_char(&q_half), Some(true));
    }

    #[test]
    fn hom_enumeration_respects_cones() {
        let b = OrdGrpBackend;
        assert_eq!(b.enumerate_homs(&z2(false), &z2(true), 100).unwrap().len(), 2);
        assert_eq!(b.enumerate_homs(&z2(true), &z2(false), 100).unwrap().len(), 1);
    }

    #[test]
    fn catalog_size_frozen() {
        let cat = OrdGrpBackend.catalog();
        assert_eq!(cat.objects.len(), 36);
        assert!(cat.notes.is_empty(), "hom budget exceeded: {:?}", cat.notes);
    }
}
